"""Doubly-filtered mapping cone for the (n,1)-cable of the meridian.

Each tower is a copy of CFK^infinity(K) stored by its i = 0 slice: the cone
generator (tower, index, x) stands for [x, 0, A(x)], and U^c times it has
filtrations lowered by c and grading lowered by 2c.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import WindowError
from .knot_complex import KnotComplex, flip_map, genus

_LOGGER = logging.getLogger(__name__)


class Tower(str, Enum):
    A = "A"
    B = "B"


class SurgeryKind(str, Enum):
    INTEGER_PLUS_ONE = "integer_plus_one"
    ONE_OVER_P = "one_over_p"


@dataclass(frozen=True)
class SurgerySpec:
    """+1 or 1/p surgery."""

    kind: SurgeryKind = SurgeryKind.INTEGER_PLUS_ONE
    p: int = 1

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"p must be positive: {self.p}")

        if (self.kind == SurgeryKind.INTEGER_PLUS_ONE) and (self.p != 1):
            raise ValueError("+1 surgery has p = 1")

    @staticmethod
    def parse(text: str) -> "SurgerySpec":
        """Parse "1" or "1/p"."""
        text = text.strip()
        if text in ("1", "+1"):
            return SurgerySpec()

        numerator, sep, denominator = text.partition("/")
        if (not sep) or (numerator.strip() != "1"):
            raise ValueError(f"Unsupported surgery coefficient: {text}")

        try:
            p = int(denominator)
        except ValueError as err:
            raise ValueError(f"Unsupported surgery coefficient: {text}") from err

        return SurgerySpec(SurgeryKind.ONE_OVER_P, p)

    def __str__(self) -> str:
        if self.kind == SurgeryKind.INTEGER_PLUS_ONE:
            return "1"

        return f"1/{self.p}"


@dataclass(frozen=True)
class FilteredGen:
    """Generator [x, 0, A(x)] of one tower of the cone."""

    id: str
    tower: Tower
    index: int
    """Tower index (s for +1 surgery, l for 1/p surgery)."""

    base: str
    """Name of the knot complex generator."""

    filt_i: int
    filt_j: Fraction
    gr: Fraction


@dataclass(frozen=True)
class ConeMeta:
    n: int
    surgery: SurgerySpec
    window: Tuple[int, int]
    genus: int


@dataclass(frozen=True)
class FilteredComplex:
    """Complex over F2[U, U^-1] with two filtrations and a Maslov grading."""

    gens: Tuple[FilteredGen, ...]
    diff: Dict[str, Dict[str, int]]
    """source -> target -> U-power of the arrow."""

    meta: ConeMeta

    @cached_property
    def by_id(self) -> Dict[str, FilteredGen]:
        return {gen.id: gen for gen in self.gens}

    @property
    def ids(self) -> List[str]:
        return [gen.id for gen in self.gens]

    def gen(self, gen_id: str) -> FilteredGen:
        return self.by_id[gen_id]

    def arrows(self) -> Iterator[Tuple[str, str, int]]:
        """Yield (source, target, U-power) in generator order."""
        for gen in self.gens:
            for target, power in self.diff.get(gen.id, {}).items():
                yield (gen.id, target, power)

    def drop(self, source: str, target: str, power: int) -> Tuple[int, Fraction]:
        """Filtration drop (delta I, delta J) of an arrow source -> U^power target."""
        gen_x, gen_y = self.by_id[source], self.by_id[target]
        return (
            gen_x.filt_i - gen_y.filt_i + power,
            gen_x.filt_j - gen_y.filt_j + power,
        )

    def __len__(self) -> int:
        return len(self.gens)


def validate_filtered(complex_: FilteredComplex) -> List[str]:
    """Check d^2 = 0, filtration monotonicity, and the grading drop."""
    diagnostics: List[str] = []
    for source, target, power in complex_.arrows():
        if target not in complex_.by_id:
            diagnostics.append(f"{source} -> {target}: unknown target")
            continue

        drop_i, drop_j = complex_.drop(source, target, power)
        if (drop_i < 0) or (drop_j < 0):
            diagnostics.append(
                f"{source} -> U^{power} {target}: raises a filtration "
                f"({drop_i}, {drop_j})"
            )

        gr_drop = complex_.gen(source).gr - (complex_.gen(target).gr - 2 * power)
        if gr_drop != 1:
            diagnostics.append(
                f"{source} -> U^{power} {target}: drops grading by {gr_drop}"
            )

    for gen in complex_.gens:
        square: Dict[Tuple[str, int], int] = {}
        for middle, power_1 in complex_.diff.get(gen.id, {}).items():
            for target, power_2 in complex_.diff.get(middle, {}).items():
                key = (target, power_1 + power_2)
                square[key] = square.get(key, 0) + 1

        for (target, power), count in square.items():
            if (count % 2) == 1:
                diagnostics.append(f"d^2({gen.id}) contains U^{power} {target}")

    return diagnostics


# -----------------------------------------------------------------------------


def rational_shift(p: int, l: int) -> Tuple[int, Fraction, int]:
    """Return (r, s_l, q) for tower index l of 1/p surgery.

    r = floor((2l + p) / 2p) and q is the lens space summand with
    2(l - q) = (2r - 1)p for p even, (2r - 1)p + 1 for p odd.
    """
    if p < 1:
        raise ValueError(f"p must be positive: {p}")

    r = (2 * l + p) // (2 * p)
    if (p % 2) == 0:
        s_l = Fraction(2 * l + 1, 2 * p)
        q = l - ((2 * r - 1) * p) // 2
    else:
        s_l = Fraction(l, p)
        q = l - ((2 * r - 1) * p + 1) // 2

    assert 0 <= q < p, (p, l, q)
    return (r, s_l, q)


@dataclass(frozen=True)
class ConeParameters:
    """Filtration and grading formulas of the towers for one surgery."""

    n: int
    surgery: SurgerySpec

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Cable parameter n must be positive: {self.n}")

    @property
    def p(self) -> int:
        return self.surgery.p

    def r(self, l: int) -> int:
        return rational_shift(self.p, l)[0]

    @property
    def j_offset(self) -> Fraction:
        n, p = self.n, self.p
        if (p % 2) == 0:
            return Fraction(n * (n * p - 2), 2)

        return Fraction(n * (n * p - 1), 2)

    def j_shift(self, l: int) -> Fraction:
        """Constant added to the second filtration on towers with index l."""
        return self.n * l - self.j_offset

    def a_filtration(self, l: int, i: int, j: int) -> Tuple[int, Fraction]:
        r = self.r(l)
        return (max(i, j - r), max(i - self.n, j - r) + self.j_shift(l))

    def b_filtration(self, l: int, i: int) -> Tuple[int, Fraction]:
        return (i, i - self.n + self.j_shift(l))

    def lens_shift(self, q: int) -> Fraction:
        p = self.p
        return Fraction(p - (2 * q - p) ** 2, 4 * p)

    def a_grading_shift(self, l: int) -> Fraction:
        _r, s_l, q = rational_shift(self.p, l)
        p = self.p
        return (
            self.lens_shift(q)
            + Fraction((2 * p * s_l - 1) ** 2, 4 * p)
            - Fraction(1, 4)
        )

    def b_grading_shift(self, l: int) -> Fraction:
        return self.a_grading_shift(l) - 1


def default_window(
    complex_: KnotComplex, n: int, surgery: SurgerySpec
) -> Tuple[int, int]:
    g = genus(complex_)
    low, high = -g + 1, g + n - 1
    if surgery.kind == SurgeryKind.ONE_OVER_P:
        p = surgery.p
        low, high = p * low - p, p * high + p

    return (low, max(high, low))


def _check_window(
    complex_: KnotComplex,
    n: int,
    surgery: SurgerySpec,
    window: Tuple[int, int],
) -> None:
    low, high = window
    if low > high:
        raise WindowError(f"Empty window: {window}")

    min_low, min_high = default_window(complex_, n, surgery)
    if (low > min_low) or (high < min_high):
        raise WindowError(
            f"Window {window} does not contain [{min_low}, {min_high}] "
            f"for genus {genus(complex_)}, n={n}, surgery {surgery}"
        )


def gen_id(tower: Tower, index: int, base: str) -> str:
    return f"{tower.value}{index}.{base}"


def _build_cone(
    complex_: KnotComplex,
    n: int,
    surgery: SurgerySpec,
    window: Tuple[int, int],
    sigma: Optional[Dict[str, str]] = None,
) -> FilteredComplex:
    params = ConeParameters(n, surgery)
    low, high = window
    if low > high:
        raise WindowError(f"Empty window: {window}")

    if sigma is None:
        sigma = flip_map(complex_) if high > low else {}

    alexanders = {gen.name: gen.alexander for gen in complex_.gens}
    gens: List[FilteredGen] = []
    diff: Dict[str, Dict[str, int]] = {}

    for l in range(low, high + 1):
        gr_shift = params.a_grading_shift(l)
        for gen in complex_.gens:
            filt_i, filt_j = params.a_filtration(l, 0, gen.alexander)
            gens.append(
                FilteredGen(
                    gen_id(Tower.A, l, gen.name),
                    Tower.A,
                    l,
                    gen.name,
                    filt_i,
                    filt_j,
                    gen.gr_u + gr_shift,
                )
            )

    for l in range(low + 1, high + 1):
        gr_shift = params.b_grading_shift(l)
        filt_i, filt_j = params.b_filtration(l, 0)
        for gen in complex_.gens:
            gens.append(
                FilteredGen(
                    gen_id(Tower.B, l, gen.name),
                    Tower.B,
                    l,
                    gen.name,
                    filt_i,
                    filt_j,
                    gen.gr_u + gr_shift,
                )
            )

    def add_arrow(source: str, target: str, power: int) -> None:
        targets = diff.setdefault(source, {})
        if target in targets:
            assert targets[target] == power, (source, target)
            del targets[target]
        else:
            targets[target] = power

    for l in range(low, high + 1):
        towers = [Tower.A] if l == low else [Tower.A, Tower.B]
        for tower in towers:
            for source, mono, target in complex_.arrows():
                add_arrow(
                    gen_id(tower, l, source), gen_id(tower, l, target), mono.u_exp
                )

    for l in range(low, high + 1):
        r = params.r(l)
        for gen in complex_.gens:
            source = gen_id(Tower.A, l, gen.name)
            if l > low:
                # v: identity into B_l
                add_arrow(source, gen_id(Tower.B, l, gen.name), 0)

            if l < high:
                # h: reflection precomposed with U^r into B_{l+1}
                add_arrow(
                    source,
                    gen_id(Tower.B, l + 1, sigma[gen.name]),
                    r - alexanders[gen.name],
                )

    ordered_diff = {gen.id: diff.get(gen.id, {}) for gen in gens}
    _LOGGER.debug(
        "Built cone with %s generator(s) on window [%s, %s] (n=%s, surgery %s)",
        len(gens),
        low,
        high,
        n,
        surgery,
    )

    return FilteredComplex(
        tuple(gens),
        ordered_diff,
        ConeMeta(n, surgery, (low, high), genus(complex_)),
    )


def build_cone_plus_one(
    complex_: KnotComplex,
    n: int,
    a: Optional[int] = None,
    b: Optional[int] = None,
) -> FilteredComplex:
    """Mapping cone for +1 surgery on the towers a <= s <= b."""
    surgery = SurgerySpec()
    default_a, default_b = default_window(complex_, n, surgery)
    window = (default_a if a is None else a, default_b if b is None else b)
    _check_window(complex_, n, surgery, window)

    return _build_cone(complex_, n, surgery, window)


def build_cone_one_over_p(
    complex_: KnotComplex,
    n: int,
    p: int,
    l_lo: Optional[int] = None,
    l_hi: Optional[int] = None,
) -> FilteredComplex:
    """Mapping cone for 1/p surgery on the towers l_lo <= l <= l_hi."""
    surgery = SurgerySpec(SurgeryKind.ONE_OVER_P, p)
    default_lo, default_hi = default_window(complex_, n, surgery)
    window = (
        default_lo if l_lo is None else l_lo,
        default_hi if l_hi is None else l_hi,
    )
    _check_window(complex_, n, surgery, window)

    return _build_cone(complex_, n, surgery, window)


def build_cone(
    complex_: KnotComplex,
    n: int,
    surgery: SurgerySpec,
    window: Optional[Tuple[int, int]] = None,
    padding: int = 0,
) -> FilteredComplex:
    """Build the cone for either surgery kind, optionally padding the window."""
    if window is None:
        low, high = default_window(complex_, n, surgery)
        window = (low - padding, high + padding)

    if surgery.kind == SurgeryKind.INTEGER_PLUS_ONE:
        return build_cone_plus_one(complex_, n, *window)

    return build_cone_one_over_p(complex_, n, surgery.p, *window)


def truncated_cone(complex_: KnotComplex, n: int, l: int) -> FilteredComplex:
    """+1 cone on the towers -l + n <= s <= l, without the window check."""
    return _build_cone(complex_, n, SurgerySpec(), (-l + n, l))


def middle_tower(complex_: FilteredComplex) -> FilteredComplex:
    """A tower A_{ceil(n/2)} with its internal arrows (requires n >= 2g)."""
    n, g = complex_.meta.n, complex_.meta.genus
    if n < 2 * g:
        raise WindowError(f"Middle tower needs n >= 2g (n={n}, g={g})")

    index = (n + 1) // 2
    low, high = complex_.meta.window
    if not low <= index <= high:
        raise WindowError(f"Tower {index} is outside the window {(low, high)}")

    gens = tuple(
        gen for gen in complex_.gens if (gen.tower == Tower.A) and (gen.index == index)
    )
    ids = {gen.id for gen in gens}
    diff = {
        gen.id: {
            target: power
            for target, power in complex_.diff.get(gen.id, {}).items()
            if target in ids
        }
        for gen in gens
    }

    return FilteredComplex(gens, diff, complex_.meta)
