import itertools
from typing import List, Optional, Tuple, Union

import pytest

from cable_cone.coefficients import (
    RUMonomial,
    RVMonomial,
    UVMonomial,
    XPoly,
    embed_uv_to_x,
    is_legal_exponent,
    ru_divide,
    rv_divide,
    x_mul,
)


def test_uv_monomial() -> None:
    assert UVMonomial(1, 0) * UVMonomial(2, 3) == UVMonomial(3, 3)
    assert UVMonomial().is_one
    assert UVMonomial(1, 1).is_mixed
    assert not UVMonomial(0, 4).is_mixed
    assert UVMonomial(2, 1).swapped() == UVMonomial(1, 2)

    assert str(UVMonomial()) == "1"
    assert str(UVMonomial(2, 1)) == "U^2V"

    with pytest.raises(ValueError):
        UVMonomial(-1, 0)


def test_legal_exponents() -> None:
    assert is_legal_exponent(0, 0)
    assert is_legal_exponent(3, 0)

    # W_{B,i} with negative i is still in the subring
    assert is_legal_exponent(-3, 1)

    assert not is_legal_exponent(-1, 0)
    assert not is_legal_exponent(5, -1)

    with pytest.raises(ValueError):
        RUMonomial(-1, 0)


def test_subring_monomials() -> None:
    assert RUMonomial(1, 0) * RUMonomial(-1, 1) == RUMonomial(0, 1)
    assert RUMonomial(3, 2).grading == (-6, -4)
    assert RVMonomial(3, 2).grading == (-4, -6)

    # Same exponents, different subrings
    assert RUMonomial(1, 0) != RVMonomial(1, 0)

    with pytest.raises(TypeError):
        RUMonomial(1, 0) * RVMonomial(1, 0)  # type: ignore[operator]

    assert str(RUMonomial(1, 2)) == "U_BW_B^2"
    assert str(RVMonomial(2, 0)) == "V_T^2"


def test_divisibility() -> None:
    # Divisibility follows (j, i) order
    assert ru_divide(RUMonomial(0, 1), RUMonomial(1, 0)) == RUMonomial(-1, 1)
    assert ru_divide(RUMonomial(1, 0), RUMonomial(0, 1)) is None
    assert rv_divide(RVMonomial(4, 2), RVMonomial(4, 2)) == RVMonomial()
    assert rv_divide(RVMonomial(3, 2), RVMonomial(4, 2)) is None

    assert RUMonomial(1, 0).divides(RUMonomial(5, 0))
    assert RUMonomial(5, 0).divides(RUMonomial(0, 1))
    assert not RUMonomial(0, 1).divides(RUMonomial(5, 0))

    assert RUMonomial(1, 0).sort_key < RUMonomial(0, 1).sort_key


def test_x_arithmetic() -> None:
    u_b = XPoly.from_terms([RUMonomial(1, 0)])
    v_t = XPoly.from_terms([RVMonomial(1, 0)])

    # Mixed products vanish
    assert (u_b * v_t).is_zero

    # Characteristic 2
    assert (u_b + u_b).is_zero
    assert XPoly.from_terms([1, 1]).is_zero

    one_plus_u = XPoly.one() + u_b
    square = x_mul(one_plus_u, one_plus_u)
    assert square == XPoly.from_terms([1, RUMonomial(2, 0)])
    assert square.num_terms == 2

    assert str(XPoly.zero()) == "0"

    with pytest.raises(ValueError):
        XPoly(ru_terms=frozenset([RUMonomial()]))


def test_embedding() -> None:
    assert embed_uv_to_x(UVMonomial()) == XPoly.one()

    image = embed_uv_to_x(UVMonomial(3, 2))
    assert image.ru_terms == frozenset([RUMonomial(3, 2)])
    assert image.rv_terms == frozenset([RVMonomial(2, 3)])

    # U * V = 0 in F2[U,V]/(UV), but U^a V^b survives in X
    assert not embed_uv_to_x(UVMonomial(1, 1)).is_zero

    # Multiplicative on monomials
    for a, b, c, d in itertools.product(range(9), repeat=4):
        left, right = UVMonomial(a, b), UVMonomial(c, d)
        assert embed_uv_to_x(left) * embed_uv_to_x(right) == embed_uv_to_x(
            left * right
        ), (left, right)


# Generators of X: "U_B", "V_T", ("W_B", i) for W_{B,i}, ("W_T", i) for W_{T,i}
_Token = Union[str, Tuple[str, int]]


def _is_bottom(token: _Token) -> bool:
    return (token == "U_B") or (isinstance(token, tuple) and token[0] == "W_B")


def _rewrite(word: List[_Token]) -> Optional[Union[RUMonomial, RVMonomial]]:
    """Normal form of a nonempty product of generators, or None for zero.

    Uses only W_{B,i} = U_B W_{B,i-1}, W_{T,i} = V_T W_{T,i-1} and U_B V_T = 0.
    """
    word = list(word)
    while any(_is_bottom(t) for t in word) and not all(_is_bottom(t) for t in word):
        if ("U_B" in word) and ("V_T" in word):
            return None

        # Split a W off the side missing its tower variable
        name, tower = ("W_B", "U_B") if "U_B" not in word else ("W_T", "V_T")
        k, (_, i) = next(
            (k, t) for k, t in enumerate(word) if isinstance(t, tuple) and t[0] == name
        )
        word[k : k + 1] = [tower, (name, i - 1)]

    tower = "U_B" if _is_bottom(word[0]) else "V_T"
    w_indices = [t[1] for t in word if isinstance(t, tuple)]
    power = word.count(tower) + sum(w_indices)
    mono_type = RUMonomial if tower == "U_B" else RVMonomial
    return mono_type(power, len(w_indices))


def test_mixed_products_rewrite_to_zero() -> None:
    assert _rewrite(["U_B", ("W_T", 0)]) is None
    assert (
        XPoly.from_terms([RUMonomial(1, 0)]) * XPoly.from_terms([RVMonomial(0, 1)])
    ).is_zero

    for i, j, k, l in itertools.product(range(3), repeat=4):
        if (i, j) == (0, 0) or (k, l) == (0, 0):
            continue

        word: List[_Token] = ["U_B"] * i + [("W_B", 0)] * j
        word += ["V_T"] * k + [("W_T", 0)] * l
        assert _rewrite(word) is None, word

        product = x_mul(
            XPoly.from_terms([RUMonomial(i, j)]),
            XPoly.from_terms([RVMonomial(k, l)]),
        )
        assert product.is_zero, (i, j, k, l)


def test_pure_products_rewrite() -> None:
    # W_{B,i} W_{B,i'} = U_B^(i + i') W_{B,0}^2, negative i included
    for i, i_other in itertools.product(range(-2, 3), repeat=2):
        word: List[_Token] = [("W_B", i), ("W_B", i_other), "U_B"]
        expected = RUMonomial(1 + i + i_other, 2)
        assert _rewrite(word) == expected

        product = x_mul(
            XPoly.from_terms([RUMonomial(i, 1)]),
            XPoly.from_terms([RUMonomial(i_other + 1, 1)]),
        )
        assert product == XPoly.from_terms([expected])

    assert _rewrite([("W_T", 3), "V_T"]) == RVMonomial(4, 1)
