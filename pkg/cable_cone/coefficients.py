"""Exact coefficient arithmetic over F2.

Monomials of F2[U,V] are stored as exponent pairs. The ring X is stored in
a normal form using only the generators U_B, W_{B,0}, V_T and W_{T,0}, with
W_{B,i} = U_B^i W_{B,0} and W_{T,i} = V_T^i W_{T,0}. Every product of a
nonconstant R_U monomial with a nonconstant R_V monomial is zero.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Set, Tuple, TypeVar, Union


@dataclass(frozen=True, order=True)
class UVMonomial:
    """Monomial U^a V^b with nonnegative exponents."""

    u_exp: int = 0
    """Power of U."""

    v_exp: int = 0
    """Power of V."""

    def __post_init__(self) -> None:
        if (self.u_exp < 0) or (self.v_exp < 0):
            raise ValueError(f"Negative exponent in U^{self.u_exp} V^{self.v_exp}")

    def __mul__(self, other: "UVMonomial") -> "UVMonomial":
        return UVMonomial(self.u_exp + other.u_exp, self.v_exp + other.v_exp)

    @property
    def is_one(self) -> bool:
        return (self.u_exp == 0) and (self.v_exp == 0)

    @property
    def is_mixed(self) -> bool:
        """True if both U and V appear (zero in F2[U,V]/(UV))."""
        return (self.u_exp > 0) and (self.v_exp > 0)

    def swapped(self) -> "UVMonomial":
        return UVMonomial(self.v_exp, self.u_exp)

    def __str__(self) -> str:
        if self.is_one:
            return "1"

        parts = []
        for var, exp in (("U", self.u_exp), ("V", self.v_exp)):
            if exp == 1:
                parts.append(var)
            elif exp > 1:
                parts.append(f"{var}^{exp}")

        return "".join(parts)


_M = TypeVar("_M", bound="_SubringMonomial")


@dataclass(frozen=True)
class _SubringMonomial:
    """x^i W^j in one of the subrings R_U, R_V of X."""

    i: int = 0
    """Power of the tower variable (U_B or V_T)."""

    j: int = 0
    """Power of the W_0 variable (W_{B,0} or W_{T,0})."""

    def __post_init__(self) -> None:
        if not is_legal_exponent(self.i, self.j):
            raise ValueError(f"Illegal exponent pair ({self.i}, {self.j})")

    def __mul__(self: _M, other: _M) -> _M:
        if type(self) is not type(other):
            raise TypeError("Mixed products are not monomials")

        return type(self)(self.i + other.i, self.j + other.j)

    @property
    def is_one(self) -> bool:
        return (self.i == 0) and (self.j == 0)

    @property
    def sort_key(self) -> Tuple[int, int]:
        """Key for the divisibility order (a divides b iff key(a) <= key(b))."""
        return (self.j, self.i)

    def divides(self: _M, other: _M) -> bool:
        return _divide(other, self) is not None

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.i, self.j)


class RUMonomial(_SubringMonomial):
    """U_B^i W_{B,0}^j."""

    @property
    def grading(self) -> Tuple[int, int]:
        return (-2 * self.i, -2 * self.j)

    def __str__(self) -> str:
        return _format_subring("U_B", "W_B", self)


class RVMonomial(_SubringMonomial):
    """V_T^i W_{T,0}^j."""

    @property
    def grading(self) -> Tuple[int, int]:
        return (-2 * self.j, -2 * self.i)

    def __str__(self) -> str:
        return _format_subring("V_T", "W_T", self)


SubringMonomial = Union[RUMonomial, RVMonomial]


def is_legal_exponent(i: int, j: int) -> bool:
    """(i, j) is legal unless j < 0, or j = 0 and i < 0."""
    return (j > 0) or ((j == 0) and (i >= 0))


def _divide(num: _M, den: _M) -> Optional[_M]:
    if type(num) is not type(den):
        return None

    i, j = num.i - den.i, num.j - den.j
    if not is_legal_exponent(i, j):
        return None

    return type(num)(i, j)


def ru_divide(num: RUMonomial, den: RUMonomial) -> Optional[RUMonomial]:
    """Return q with q * den = num, or None if q is not in R_U."""
    return _divide(num, den)


def rv_divide(num: RVMonomial, den: RVMonomial) -> Optional[RVMonomial]:
    """Return q with q * den = num, or None if q is not in R_V."""
    return _divide(num, den)


def _format_subring(tower: str, w_name: str, mono: _SubringMonomial) -> str:
    if mono.is_one:
        return "1"

    parts = []
    if mono.i != 0:
        parts.append(tower if mono.i == 1 else f"{tower}^{mono.i}")

    if mono.j != 0:
        parts.append(w_name if mono.j == 1 else f"{w_name}^{mono.j}")

    return "".join(parts)


# -----------------------------------------------------------------------------


def _toggle(terms: Set, mono) -> None:
    if mono in terms:
        terms.remove(mono)
    else:
        terms.add(mono)


@dataclass(frozen=True)
class XPoly:
    """Element of X in normal form.

    The monomial 1 is only represented by the constant bit.
    """

    constant: bool = False
    ru_terms: FrozenSet[RUMonomial] = field(default_factory=frozenset)
    rv_terms: FrozenSet[RVMonomial] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for term in self.ru_terms:
            if (not isinstance(term, RUMonomial)) or term.is_one:
                raise ValueError(f"Not a nonconstant R_U monomial: {term!r}")

        for term in self.rv_terms:
            if (not isinstance(term, RVMonomial)) or term.is_one:
                raise ValueError(f"Not a nonconstant R_V monomial: {term!r}")

    @staticmethod
    def zero() -> "XPoly":
        return XPoly()

    @staticmethod
    def one() -> "XPoly":
        return XPoly(constant=True)

    @staticmethod
    def from_terms(terms: Iterable[Union[SubringMonomial, int]]) -> "XPoly":
        """Sum terms over F2. The integer 1 (or a unit monomial) is the constant."""
        constant = False
        ru_terms: Set[RUMonomial] = set()
        rv_terms: Set[RVMonomial] = set()
        for term in terms:
            if isinstance(term, int):
                if term % 2:
                    constant = not constant
            elif term.is_one:
                constant = not constant
            elif isinstance(term, RUMonomial):
                _toggle(ru_terms, term)
            else:
                _toggle(rv_terms, term)

        return XPoly(constant, frozenset(ru_terms), frozenset(rv_terms))

    @property
    def is_zero(self) -> bool:
        return (not self.constant) and (not self.ru_terms) and (not self.rv_terms)

    @property
    def num_terms(self) -> int:
        return int(self.constant) + len(self.ru_terms) + len(self.rv_terms)

    def __add__(self, other: "XPoly") -> "XPoly":
        return XPoly(
            self.constant != other.constant,
            self.ru_terms ^ other.ru_terms,
            self.rv_terms ^ other.rv_terms,
        )

    def __mul__(self, other: "XPoly") -> "XPoly":
        return x_mul(self, other)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"

        parts = ["1"] if self.constant else []
        parts.extend(str(t) for t in sorted(self.ru_terms, key=lambda t: t.sort_key))
        parts.extend(str(t) for t in sorted(self.rv_terms, key=lambda t: t.sort_key))
        return " + ".join(parts)


def x_mul(a: XPoly, b: XPoly) -> XPoly:
    """Product in X."""
    ru_terms: Set[RUMonomial] = set()
    rv_terms: Set[RVMonomial] = set()

    if a.constant:
        ru_terms ^= b.ru_terms
        rv_terms ^= b.rv_terms

    if b.constant:
        ru_terms ^= a.ru_terms
        rv_terms ^= a.rv_terms

    for ru_a in a.ru_terms:
        for ru_b in b.ru_terms:
            _toggle(ru_terms, ru_a * ru_b)

    for rv_a in a.rv_terms:
        for rv_b in b.rv_terms:
            _toggle(rv_terms, rv_a * rv_b)

    # R_U * R_V vanishes
    return XPoly(a.constant and b.constant, frozenset(ru_terms), frozenset(rv_terms))


def embed_uv_to_x(mono: UVMonomial) -> XPoly:
    """Image of U^a V^b under U -> U_B + W_{T,0}, V -> V_T + W_{B,0}."""
    if mono.is_one:
        return XPoly.one()

    return XPoly(
        ru_terms=frozenset([RUMonomial(mono.u_exp, mono.v_exp)]),
        rv_terms=frozenset([RVMonomial(mono.v_exp, mono.u_exp)]),
    )
