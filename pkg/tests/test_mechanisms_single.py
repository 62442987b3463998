from fractions import Fraction as F

import pytest

from pathauction import (
    TieError,
    averaged_single,
    first_price_single,
    vickrey_single,
)

THREE = {"p": F(3), "q": F(5), "r": F(7)}


def test_first_price_forward():
    res = first_price_single(THREE, "forward")
    assert res.winner == "r"
    assert res.payments == {"p": F(0), "q": F(0), "r": F(7)}
    assert res.total == 7
    assert res.mechanism_utility == 7


def test_first_price_reverse():
    res = first_price_single(THREE, "reverse")
    assert res.winner == "p"
    assert res.payments["p"] == 3
    assert res.mechanism_utility == -3


def test_first_price_truthful_winner_earns_nothing():
    res = first_price_single(THREE, "forward")
    assert res.utilities["r"] == 0


def test_vickrey_forward():
    res = vickrey_single(THREE, "forward")
    assert res.winner == "r"
    assert res.payments["r"] == 5
    assert res.utilities["r"] == 2  # participation: winning never hurts


def test_vickrey_reverse_two_bids():
    res = vickrey_single({"e": F(1), "f": F(5)}, "reverse")
    assert res.winner == "e"
    assert res.payments["e"] == 5
    assert res.utilities["e"] == 4
    assert res.mechanism_utility == -5


def test_tie_at_winning_bid_raises():
    with pytest.raises(TieError):
        first_price_single({"p": F(5), "q": F(5), "r": F(3)}, "forward")
    with pytest.raises(TieError):
        vickrey_single({"p": F(2), "q": F(2)}, "reverse")


def test_loser_ties_are_fine():
    res = vickrey_single({"p": F(5), "q": F(5), "r": F(7)}, "forward")
    assert res.winner == "r"
    assert res.payments["r"] == 5


def test_averaged_blend():
    bids = {"p": F(4), "q": F(10)}
    assert averaged_single(bids, F(1, 2)).payments["q"] == 7
    assert averaged_single(bids, F(0)).payments["q"] == 4
    assert averaged_single(bids, F(1)).payments["q"] == 10


def test_averaged_lambda_domain():
    with pytest.raises(ValueError):
        averaged_single({"p": F(4), "q": F(10)}, F(3, 2))


def test_explicit_types_drive_utility():
    res = vickrey_single({"p": F(3), "q": F(6)}, "forward", types={"p": F(3), "q": F(9)})
    assert res.utilities["q"] == 9 - 3


def test_needs_two_participants():
    with pytest.raises(ValueError):
        first_price_single({"p": F(3)}, "forward")
