"""Standard complexes, phi invariants, and local equivalence.

Standardization works side by side. Over F2[U,V]/(UV) the U side holds the
arrows U^a and the V side the arrows V^b. Over X every arrow U^a V^b splits
into U_B^a W_{B,0}^b on the U side and V_T^b W_{T,0}^a on the V side. Each
pass puts one side into Smith form (a matching) by basis changes that only
touch that side, except for unit changes, which touch both. Passes alternate
until both sides are matchings.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from galois import GF2

from . import gf2
from .coefficients import (
    RUMonomial,
    RVMonomial,
    SubringMonomial,
    UVMonomial,
    embed_uv_to_x,
    is_legal_exponent,
    ru_divide,
    rv_divide,
)
from .errors import (
    NonIntegralDropError,
    PhiMismatchError,
    SearchLimitExceeded,
    StandardizationIncomplete,
    UnexpectedHomologyError,
)
from .knot_complex import KnotComplex, KnotGen
from .mapping_cone import FilteredComplex

_LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_PASSES = 64
DEFAULT_SEARCH_CEILING = 20000


class Side(str, Enum):
    U = "U"
    V = "V"

    @property
    def other(self) -> "Side":
        return Side.V if self == Side.U else Side.U


@dataclass(frozen=True)
class StandardComplexZ:
    """Standard complex over F2[U,V]/(UV) as a signed integer sequence."""

    seq: Tuple[int, ...] = ()
    start_grading: Tuple[int, int] = field(default=(0, 0), compare=False)
    """Bigrading of the first generator x_0."""

    def __post_init__(self) -> None:
        if len(self.seq) % 2:
            raise ValueError(f"Standard sequence has odd length: {self.seq}")

        if any(b == 0 for b in self.seq):
            raise ValueError(f"Standard sequence has a zero entry: {self.seq}")

    def reversed_negated(self) -> "StandardComplexZ":
        return StandardComplexZ(tuple(-b for b in reversed(self.seq)))

    @property
    def is_symmetric(self) -> bool:
        return self.seq == self.reversed_negated().seq


@dataclass(frozen=True)
class XEdge:
    sign: int
    side: Side
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"Sign must be +1 or -1: {self.sign}")

        if not is_legal_exponent(self.i, self.j):
            raise ValueError(f"Illegal exponent pair ({self.i}, {self.j})")

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.i, self.j)

    @property
    def monomial(self) -> SubringMonomial:
        if self.side == Side.U:
            return RUMonomial(self.i, self.j)

        return RVMonomial(self.i, self.j)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}({self.i},{self.j})"


@dataclass(frozen=True)
class StandardComplexX:
    """Standard complex over X: alternating R_U and R_V edges."""

    edges: Tuple[XEdge, ...] = ()
    start_grading: Tuple[int, int] = field(default=(0, 0), compare=False)

    def __post_init__(self) -> None:
        if len(self.edges) % 2:
            raise ValueError("Standard complex has an odd number of edges")

        for position, edge in enumerate(self.edges):
            expected = Side.U if (position % 2) == 0 else Side.V
            if edge.side != expected:
                raise ValueError(f"Edge {position + 1} should be on side {expected}")

    @staticmethod
    def from_pairs(
        pairs: Iterable[Tuple[int, Tuple[int, int]]],
        start_grading: Tuple[int, int] = (0, 0),
    ) -> "StandardComplexX":
        """Create from (sign, (i, j)) pairs in path order."""
        edges = []
        for position, (sign, (i, j)) in enumerate(pairs):
            side = Side.U if (position % 2) == 0 else Side.V
            edges.append(XEdge(sign, side, i, j))

        return StandardComplexX(tuple(edges), start_grading)

    def pairs(self) -> List[Tuple[int, Tuple[int, int]]]:
        return [(edge.sign, edge.pair) for edge in self.edges]

    def reversed_negated(self) -> "StandardComplexX":
        return StandardComplexX.from_pairs(
            (-sign, pair) for sign, pair in reversed(self.pairs())
        )

    @property
    def is_symmetric(self) -> bool:
        return self == self.reversed_negated()

    def __str__(self) -> str:
        return "(" + ",".join(str(edge) for edge in self.edges) + ")"


PhiKey = Union[int, Tuple[int, int]]


@dataclass
class PhiTable:
    """Finitely supported table of phi values (zeros are not stored)."""

    values: Dict[PhiKey, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = {key: value for key, value in self.values.items() if value != 0}

    def __getitem__(self, key: PhiKey) -> int:
        return self.values.get(key, 0)

    def __add__(self, other: "PhiTable") -> "PhiTable":
        values = dict(self.values)
        for key, value in other.values.items():
            values[key] = values.get(key, 0) + value

        return PhiTable(values)

    def __len__(self) -> int:
        return len(self.values)


# -----------------------------------------------------------------------------


def to_uv_presentation(complex_: FilteredComplex) -> KnotComplex:
    """Rewrite every arrow U^c as U^(delta I) V^(delta J)."""
    gens: List[KnotGen] = []
    for gen in complex_.gens:
        gr_u = gen.gr - 2 * gen.filt_i
        gr_v = gen.gr - 2 * gen.filt_j
        if (Fraction(gr_u).denominator != 1) or (Fraction(gr_v).denominator != 1):
            raise NonIntegralDropError(
                f"{gen.id} has non-integral bigrading ({gr_u}, {gr_v})"
            )

        gens.append(KnotGen(gen.id, int(gr_u), int(gr_v)))

    arrows: List[Tuple[str, UVMonomial, str]] = []
    for source, target, power in complex_.arrows():
        drop_i, drop_j = complex_.drop(source, target, power)
        if Fraction(drop_j).denominator != 1:
            raise NonIntegralDropError(
                f"{source} -> U^{power} {target} has non-integral drop {drop_j}"
            )

        arrows.append((source, UVMonomial(int(drop_i), int(drop_j)), target))

    return KnotComplex.build(gens, arrows)


def cancel_unit_arrows(complex_: KnotComplex) -> KnotComplex:
    """Gaussian elimination of arrows with coefficient 1."""
    out: Dict[str, Dict[str, UVMonomial]] = {name: {} for name in complex_.names}
    into: Dict[str, Dict[str, UVMonomial]] = {name: {} for name in complex_.names}

    def toggle(source: str, target: str, mono: UVMonomial) -> None:
        if target in out[source]:
            del out[source][target]
            del into[target][source]
        else:
            out[source][target] = mono
            into[target][source] = mono

    for source, mono, target in complex_.arrows():
        toggle(source, target, mono)

    for source in complex_.names:
        if source not in out:
            continue

        target = next(
            (name for name, mono in out[source].items() if mono.is_one), None
        )
        if target is None:
            continue

        others = [(name, mono) for name, mono in out[source].items() if name != target]
        for other_source, rho in list(into[target].items()):
            if other_source == source:
                continue

            for other_target, mono in others:
                toggle(other_source, other_target, rho * mono)

        for gen_id in (source, target):
            for name in out.pop(gen_id):
                del into[name][gen_id]

            for name in into.pop(gen_id):
                del out[name][gen_id]

    return KnotComplex.build(
        (gen for gen in complex_.gens if gen.name in out),
        (
            (source, mono, target)
            for source, targets in out.items()
            for target, mono in targets.items()
        ),
    )


# -----------------------------------------------------------------------------


def _times(
    left: SubringMonomial, right: SubringMonomial
) -> Optional[SubringMonomial]:
    """Product in X, or None if it vanishes."""
    if left.is_one:
        return right

    if right.is_one:
        return left

    if type(left) is not type(right):
        return None

    return left * right


def _divide(num: SubringMonomial, den: SubringMonomial) -> Optional[SubringMonomial]:
    if isinstance(num, RUMonomial) and isinstance(den, RUMonomial):
        return ru_divide(num, den)

    if isinstance(num, RVMonomial) and isinstance(den, RVMonomial):
        return rv_divide(num, den)

    return None


_Edges = Dict[str, Dict[str, SubringMonomial]]


class _Standardizer:
    """Working copy of a complex whose arrows live on the U and V sides."""

    def __init__(
        self,
        gens: Sequence[KnotGen],
        edges: Iterable[Tuple[Side, str, SubringMonomial, str]],
    ) -> None:
        self.gens = list(gens)
        self.order = [gen.name for gen in self.gens]
        self.position = {name: k for k, name in enumerate(self.order)}
        self.out: Dict[Side, _Edges] = {
            side: {name: {} for name in self.order} for side in Side
        }
        self.into: Dict[Side, _Edges] = {
            side: {name: {} for name in self.order} for side in Side
        }
        self.num_changes = 0
        self.start: Optional[str] = None

        for side, source, mono, target in edges:
            self.toggle(side, source, target, mono)

    def toggle(
        self, side: Side, source: str, target: str, mono: SubringMonomial
    ) -> None:
        targets = self.out[side][source]
        if target in targets:
            assert targets[target] == mono, (source, target, targets[target], mono)
            del targets[target]
            del self.into[side][target][source]
        else:
            targets[target] = mono
            self.into[side][target][source] = mono

    def add_multiple(self, gen: str, other: str, factor: SubringMonomial) -> None:
        """Change basis: gen <- gen + factor * other."""
        self.num_changes += 1

        # d(gen) picks up factor * d(other)
        for side in Side:
            for target, mono in list(self.out[side][other].items()):
                product = _times(factor, mono)
                if product is not None:
                    self.toggle(side, gen, target, product)

        # Anything hitting gen now also hits other
        for side in Side:
            for source, mono in list(self.into[side][gen].items()):
                product = _times(mono, factor)
                if product is not None:
                    self.toggle(side, source, other, product)

    def _pivot(
        self, side: Side, paired: set
    ) -> Optional[Tuple[str, str, SubringMonomial]]:
        best: Optional[Tuple[Tuple[int, int], int, int]] = None
        best_edge: Optional[Tuple[str, str, SubringMonomial]] = None
        for source in self.order:
            if source in paired:
                continue

            for target, mono in self.out[side][source].items():
                if target in paired:
                    continue

                key = (mono.sort_key, self.position[source], self.position[target])
                if (best is None) or (key < best):
                    best = key
                    best_edge = (source, target, mono)

        return best_edge

    def smith_pass(self, side: Side) -> None:
        """Reduce one side to a matching."""
        paired: set = set()
        while True:
            pivot = self._pivot(side, paired)
            if pivot is None:
                break

            source, target, mono = pivot
            for other_target, other_mono in list(self.out[side][source].items()):
                if other_target == target:
                    continue

                factor = _divide(other_mono, mono)
                assert factor is not None, (other_mono, mono)
                self.add_multiple(target, other_target, factor)

            for other_source, other_mono in list(self.into[side][target].items()):
                if other_source == source:
                    continue

                factor = _divide(other_mono, mono)
                assert factor is not None, (other_mono, mono)
                self.add_multiple(other_source, source, factor)

            paired.update((source, target))

    def is_matching(self, side: Side) -> bool:
        return all(
            len(self.out[side][name]) + len(self.into[side][name]) <= 1
            for name in self.order
        )

    def edge_at(
        self, side: Side, name: str
    ) -> Optional[Tuple[str, SubringMonomial, int]]:
        """(neighbor, monomial, sign) of the side edge at name, if any.

        The sign is +1 if the arrow points from the neighbor to name.
        """
        for target, mono in self.out[side][name].items():
            return (target, mono, -1)

        for source, mono in self.into[side][name].items():
            return (source, mono, 1)

        return None

    def partial_state(self) -> Dict[str, List[str]]:
        return {
            side.value: [
                f"{source} -> {mono} {target}"
                for source in self.order
                for target, mono in self.out[side][source].items()
            ]
            for side in Side
        }

    def run(self, max_passes: int) -> List[Tuple[int, SubringMonomial]]:
        """Standardize and return the (sign, monomial) path from x_0."""
        for pass_idx in range(max_passes):
            self.smith_pass(Side.U)
            self.smith_pass(Side.V)
            _LOGGER.debug(
                "Standardization pass %s: %s basis change(s)",
                pass_idx + 1,
                self.num_changes,
            )

            if self.is_matching(Side.U) and self.is_matching(Side.V):
                break
        else:
            raise StandardizationIncomplete(
                f"Sides are not matchings after {max_passes} pass(es)",
                self.partial_state(),
            )

        return self.walk()

    def walk(self) -> List[Tuple[int, SubringMonomial]]:
        starts = [name for name in self.order if self.edge_at(Side.V, name) is None]
        ends = [name for name in self.order if self.edge_at(Side.U, name) is None]
        if (len(starts) != 1) or (len(ends) != 1):
            raise StandardizationIncomplete(
                f"Expected one generator without a V edge and one without a U edge, "
                f"got {starts} and {ends}",
                self.partial_state(),
            )

        path: List[Tuple[int, SubringMonomial]] = []
        current, side = starts[0], Side.U
        self.start = current
        visited = {current}
        while True:
            edge = self.edge_at(side, current)
            if edge is None:
                break

            neighbor, mono, sign = edge
            if neighbor in visited:
                raise StandardizationIncomplete(
                    f"Path from {starts[0]} closes up at {neighbor}",
                    self.partial_state(),
                )

            path.append((sign, mono))
            visited.add(neighbor)
            current, side = neighbor, side.other

        if current != ends[0]:
            raise StandardizationIncomplete(
                f"Path from {starts[0]} ends at {current}, not {ends[0]}",
                self.partial_state(),
            )

        return path

    def start_grading(self) -> Tuple[int, int]:
        assert self.start is not None
        gen = self.gens[self.position[self.start]]
        return (gen.gr_u, gen.gr_v)


def standardize_z(
    complex_: KnotComplex, max_passes: int = DEFAULT_MAX_PASSES
) -> StandardComplexZ:
    """Standard complex over F2[U,V]/(UV) locally equivalent to complex_."""
    complex_ = cancel_unit_arrows(complex_)
    edges: List[Tuple[Side, str, SubringMonomial, str]] = []
    for source, mono, target in complex_.arrows():
        if mono.is_mixed:
            continue

        if mono.u_exp > 0:
            edges.append((Side.U, source, RUMonomial(mono.u_exp, 0), target))
        else:
            edges.append((Side.V, source, RVMonomial(mono.v_exp, 0), target))

    standardizer = _Standardizer(complex_.gens, edges)
    path = standardizer.run(max_passes)

    return StandardComplexZ(
        tuple(sign * mono.i for sign, mono in path), standardizer.start_grading()
    )


@dataclass(frozen=True)
class XComplex:
    """Complex over X with monomial arrows (source, monomial, target)."""

    gens: Tuple[KnotGen, ...]
    arrows: Tuple[Tuple[str, SubringMonomial, str], ...] = ()


def x_presentation(complex_: KnotComplex) -> XComplex:
    """Embed a complex over F2[U,V] into X."""
    arrows: List[Tuple[str, SubringMonomial, str]] = []
    for source, mono, target in complex_.arrows():
        image = embed_uv_to_x(mono)
        for term in sorted(image.ru_terms, key=lambda t: t.sort_key):
            arrows.append((source, term, target))

        for term in sorted(image.rv_terms, key=lambda t: t.sort_key):
            arrows.append((source, term, target))

    return XComplex(complex_.gens, tuple(arrows))


def standardize_x(
    complex_: Union[KnotComplex, XComplex], max_passes: int = DEFAULT_MAX_PASSES
) -> StandardComplexX:
    """Standard complex over X locally equivalent to complex_."""
    if isinstance(complex_, KnotComplex):
        complex_ = x_presentation(cancel_unit_arrows(complex_))

    edges = [
        (
            Side.U if isinstance(mono, RUMonomial) else Side.V,
            source,
            mono,
            target,
        )
        for source, mono, target in complex_.arrows
    ]

    standardizer = _Standardizer(complex_.gens, edges)
    path = standardizer.run(max_passes)
    edges_out = []
    for position, (sign, mono) in enumerate(path):
        side = Side.U if (position % 2) == 0 else Side.V
        edges_out.append(XEdge(sign, side, mono.i, mono.j))

    return StandardComplexX(tuple(edges_out), standardizer.start_grading())


def phi_from_standard(
    standard: Union[StandardComplexZ, StandardComplexX], side: Side = Side.U
) -> PhiTable:
    """phi_i (odd positions) or phi_{i,j} (R_U edges; R_V edges with side=V).

    Over X the R_U table is checked against the R_V table.
    """
    values: Dict[PhiKey, int] = {}
    if isinstance(standard, StandardComplexZ):
        start = 0 if side == Side.U else 1
        sign_flip = 1 if side == Side.U else -1
        for b in standard.seq[start::2]:
            key = abs(b)
            values[key] = values.get(key, 0) + sign_flip * (1 if b > 0 else -1)

        return PhiTable(values)

    for edge in standard.edges:
        if edge.side == side:
            sign = edge.sign if side == Side.U else -edge.sign
            values[edge.pair] = values.get(edge.pair, 0) + sign

    table = PhiTable(values)
    if side == Side.U:
        other = phi_from_standard(standard, Side.V)
        if other != table:
            raise PhiMismatchError(
                f"R_U edges give {table.values}, R_V edges give {other.values}"
            )

    return table


# -----------------------------------------------------------------------------


def _step_grading(
    grading: Tuple[int, int], mono_grading: Tuple[int, int], sign: int
) -> Tuple[int, int]:
    """Grading of x_k from x_(k-1) across one edge."""
    if sign > 0:
        # x_k -> mono x_(k-1)
        return (grading[0] + 1 + mono_grading[0], grading[1] + 1 + mono_grading[1])

    # x_(k-1) -> mono x_k
    return (grading[0] - 1 - mono_grading[0], grading[1] - 1 - mono_grading[1])


def standard_complex_z(
    seq: Union[StandardComplexZ, Sequence[int]],
    start_grading: Optional[Tuple[int, int]] = None,
) -> KnotComplex:
    """Realize a standard sequence as a complex on x_0, ..., x_2l."""
    if not isinstance(seq, StandardComplexZ):
        seq = StandardComplexZ(tuple(seq))

    grading = seq.start_grading if start_grading is None else start_grading
    gens = [KnotGen("x0", *grading)]
    arrows: List[Tuple[str, UVMonomial, str]] = []
    for k, b in enumerate(seq.seq, start=1):
        length = abs(b)
        if (k % 2) == 1:
            mono = UVMonomial(length, 0)
        else:
            mono = UVMonomial(0, length)

        sign = 1 if b > 0 else -1
        grading = _step_grading(grading, (-2 * mono.u_exp, -2 * mono.v_exp), sign)
        gens.append(KnotGen(f"x{k}", *grading))
        if sign > 0:
            arrows.append((f"x{k}", mono, f"x{k - 1}"))
        else:
            arrows.append((f"x{k - 1}", mono, f"x{k}"))

    return KnotComplex.build(gens, arrows)


def standard_complex_x(
    standard: StandardComplexX,
    start_grading: Optional[Tuple[int, int]] = None,
) -> XComplex:
    """Realize a standard complex over X on x_0, ..., x_2l."""
    grading = standard.start_grading if start_grading is None else start_grading
    gens = [KnotGen("x0", *grading)]
    arrows: List[Tuple[str, SubringMonomial, str]] = []
    for k, edge in enumerate(standard.edges, start=1):
        mono = edge.monomial
        grading = _step_grading(grading, mono.grading, edge.sign)
        gens.append(KnotGen(f"x{k}", *grading))
        if edge.sign > 0:
            arrows.append((f"x{k}", mono, f"x{k - 1}"))
        else:
            arrows.append((f"x{k - 1}", mono, f"x{k}"))

    return XComplex(tuple(gens), tuple(arrows))


# -----------------------------------------------------------------------------


@dataclass
class _LocalizedClass:
    """Homology generator of the U- or V-localized complex."""

    coset: int
    index: Dict[str, int]
    cycle: GF2
    """Cycle representing the generator (vector over the slice)."""

    functional: GF2
    """Vanishes on boundaries and is 1 on the cycle."""


def _localized_class(complex_: KnotComplex, side: Side) -> _LocalizedClass:
    def grading(gen: KnotGen) -> int:
        return gen.gr_u if side == Side.U else gen.gr_v

    slices: Dict[int, List[str]] = {0: [], 1: []}
    for gen in complex_.gens:
        slices[grading(gen) % 2].append(gen.name)

    arrows = [
        (source, target)
        for source, mono, target in complex_.arrows()
        if (mono.v_exp if side == Side.U else mono.u_exp) == 0
    ]

    def matrix(sources: List[str], targets: List[str]) -> GF2:
        rows = {name: k for k, name in enumerate(targets)}
        cols = {name: k for k, name in enumerate(sources)}
        return gf2.incidence_matrix(
            rows,
            cols,
            ((t, s) for s, t in arrows if (s in cols) and (t in rows)),
        )

    ranks = {}
    for coset in (0, 1):
        here, there = slices[coset], slices[1 - coset]
        ranks[coset] = (
            len(here) - gf2.rank(matrix(here, there)) - gf2.rank(matrix(there, here))
        )

    if sum(ranks.values()) != 1:
        raise UnexpectedHomologyError(
            f"{side.value}-localized homology has rank {sum(ranks.values())}"
        )

    coset = 0 if ranks[0] == 1 else 1
    here, there = slices[coset], slices[1 - coset]
    boundaries = matrix(there, here)
    kernel = gf2.null_space(matrix(here, there))

    cycle: Optional[GF2] = None
    for row in kernel:
        candidate = GF2(row.view(np.ndarray).reshape(-1, 1))
        if gf2.column_rank_increases(boundaries, candidate):
            cycle = GF2(row.view(np.ndarray).copy())
            break

    assert cycle is not None
    constraints = np.zeros((boundaries.shape[1] + 1, len(here)), dtype=np.uint8)
    constraints[: boundaries.shape[1], :] = boundaries.view(np.ndarray).T
    constraints[-1, :] = cycle.view(np.ndarray)
    rhs = np.zeros(boundaries.shape[1] + 1, dtype=np.uint8)
    rhs[-1] = 1

    functional = gf2.solve(GF2(constraints), GF2(rhs))
    assert functional is not None

    return _LocalizedClass(
        coset, {name: k for k, name in enumerate(here)}, cycle, functional
    )


def local_map_exists(
    source: KnotComplex,
    target: KnotComplex,
    exponent_bound: int = 6,
    ceiling: int = DEFAULT_SEARCH_CEILING,
) -> bool:
    """True if a local map source -> target exists over F2[U,V]/(UV).

    A local map is a grading-preserving chain map that is an isomorphism on
    U-localized and V-localized homology.
    """
    unknowns: List[Tuple[str, str, UVMonomial]] = []
    for gen_x in source.gens:
        for gen_y in target.gens:
            diff_u, diff_v = gen_y.gr_u - gen_x.gr_u, gen_y.gr_v - gen_x.gr_v
            if (diff_u % 2) or (diff_v % 2):
                continue

            u_exp, v_exp = diff_u // 2, diff_v // 2
            if (u_exp < 0) or (v_exp < 0) or ((u_exp > 0) and (v_exp > 0)):
                continue

            if max(u_exp, v_exp) > exponent_bound:
                continue

            unknowns.append((gen_x.name, gen_y.name, UVMonomial(u_exp, v_exp)))

    if len(unknowns) > ceiling:
        raise SearchLimitExceeded(
            f"{len(unknowns)} unknown(s) is above the ceiling of {ceiling}"
        )

    by_source: Dict[str, List[Tuple[int, str, UVMonomial]]] = {}
    for k, (name_x, name_y, mono) in enumerate(unknowns):
        by_source.setdefault(name_x, []).append((k, name_y, mono))

    # Chain map equations: d f(x) + f(d x) = 0, one row per (x, w)
    rows: Dict[Tuple[str, str], Dict[int, int]] = {}

    def add(row_key: Tuple[str, str], k: int) -> None:
        row = rows.setdefault(row_key, {})
        row[k] = row.get(k, 0) ^ 1

    for k, (name_x, name_y, mono) in enumerate(unknowns):
        for mono_y, name_w in target.diff[name_y]:
            if not (mono * mono_y).is_mixed:
                add((name_x, name_w), k)

    for name_x, mono_x, name_z in source.arrows():
        if mono_x.is_mixed:
            continue

        for k, name_w, mono in by_source.get(name_z, []):
            if not (mono_x * mono).is_mixed:
                add((name_x, name_w), k)

    equations = [
        [k for k, bit in row.items() if bit]
        for row in rows.values()
        if any(row.values())
    ]
    rhs = [0] * len(equations)

    for side in Side:
        class_x = _localized_class(source, side)
        class_y = _localized_class(target, side)
        if class_x.coset != class_y.coset:
            return False

        row = []
        for k, (name_x, name_y, mono) in enumerate(unknowns):
            if (mono.v_exp if side == Side.U else mono.u_exp) != 0:
                continue

            if (name_x not in class_x.index) or (name_y not in class_y.index):
                continue

            if int(class_x.cycle[class_x.index[name_x]]) and int(
                class_y.functional[class_y.index[name_y]]
            ):
                row.append(k)

        equations.append(row)
        rhs.append(1)

    matrix = np.zeros((len(equations), len(unknowns)), dtype=np.uint8)
    for row_idx, row in enumerate(equations):
        for k in row:
            matrix[row_idx, k] ^= 1

    solution = gf2.solve(GF2(matrix), GF2(np.array(rhs, dtype=np.uint8)))
    _LOGGER.debug(
        "Local map search: %s unknown(s), %s equation(s), found=%s",
        len(unknowns),
        len(equations),
        solution is not None,
    )

    return solution is not None


def verify_local_equiv(
    complex_1: KnotComplex,
    complex_2: KnotComplex,
    exponent_bound: int = 6,
    ceiling: int = DEFAULT_SEARCH_CEILING,
) -> bool:
    """True if local maps exist in both directions."""
    return local_map_exists(
        complex_1, complex_2, exponent_bound, ceiling
    ) and local_map_exists(complex_2, complex_1, exponent_bound, ceiling)
