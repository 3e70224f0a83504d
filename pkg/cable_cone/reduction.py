"""Filtered cancellation, Laurent homology, and d-invariants."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from galois import GF2

from . import gf2
from .errors import UnexpectedHomologyError
from .knot_complex import KnotComplex
from .mapping_cone import FilteredComplex

_LOGGER = logging.getLogger(__name__)

_Arrows = Dict[str, Dict[str, int]]


@dataclass(frozen=True)
class Cancellation:
    """Cancelled arrow source -> U^power target."""

    source: str
    target: str
    power: int


@dataclass(frozen=True)
class ReducedComplex(FilteredComplex):
    """Filtered complex whose arrows all strictly drop a filtration."""

    cancelled: Tuple[Cancellation, ...] = ()


def _toggle(out: _Arrows, into: _Arrows, source: str, target: str, power: int) -> None:
    targets = out[source]
    if target in targets:
        assert targets[target] == power, (source, target, targets[target], power)
        del targets[target]
        del into[target][source]
    else:
        targets[target] = power
        into[target][source] = power


def _remove(out: _Arrows, into: _Arrows, gen_id: str) -> None:
    for target in out.pop(gen_id):
        del into[target][gen_id]

    for source in into.pop(gen_id):
        del out[source][gen_id]


def _cancel(
    complex_: FilteredComplex,
    order: Sequence[str],
    can_cancel: Callable[[str, str, int], bool],
) -> ReducedComplex:
    position = {gen_id: k for k, gen_id in enumerate(order)}
    ids = complex_.ids
    out: _Arrows = {gen_id: dict(complex_.diff.get(gen_id, {})) for gen_id in ids}
    into: _Arrows = {gen_id: {} for gen_id in ids}
    for source, targets in out.items():
        for target, power in targets.items():
            into[target][source] = power

    cancelled: List[Cancellation] = []
    for source in order:
        if source not in out:
            continue

        eligible = [
            target
            for target, power in out[source].items()
            if can_cancel(source, target, power)
        ]
        if not eligible:
            continue

        target = min(eligible, key=position.__getitem__)
        power = out[source][target]
        other_targets = [
            (other, other_power)
            for other, other_power in out[source].items()
            if other != target
        ]

        # Zig-zag: z -> U^e target picks up U^(e - power) d(source)
        for other_source, other_power in list(into[target].items()):
            if other_source == source:
                continue

            for other_target, target_power in other_targets:
                _toggle(
                    out,
                    into,
                    other_source,
                    other_target,
                    other_power - power + target_power,
                )

        _remove(out, into, source)
        _remove(out, into, target)
        cancelled.append(Cancellation(source, target, power))

    gens = tuple(gen for gen in complex_.gens if gen.id in out)
    gen_position = {gen.id: k for k, gen in enumerate(gens)}
    diff = {
        gen.id: dict(
            sorted(out[gen.id].items(), key=lambda item: gen_position[item[0]])
        )
        for gen in gens
    }

    _LOGGER.debug(
        "Reduced %s generator(s) to %s (%s cancellation(s))",
        len(complex_.gens),
        len(gens),
        len(cancelled),
    )

    return ReducedComplex(gens, diff, complex_.meta, tuple(cancelled))


def reduce(
    complex_: FilteredComplex, order: Optional[Sequence[str]] = None
) -> ReducedComplex:
    """Cancel arrows with zero filtration drop until none are left.

    Sources are visited in order (default: generator order). Each source
    cancels against its first target (in the same order) whose arrow has
    drop (0, 0).
    """
    if order is None:
        order = complex_.ids
    elif sorted(order) != sorted(complex_.ids):
        raise ValueError("Order must be a permutation of the generators")

    def zero_drop(source: str, target: str, power: int) -> bool:
        return complex_.drop(source, target, power) == (0, 0)

    return _cancel(complex_, order, zero_drop)


def reduce_towers(complex_: FilteredComplex) -> ReducedComplex:
    """Cancel (0, 0) arrows inside each tower, leaving the maps v and h alone.

    The result is usually not reduced. Its A_s and B_s survivors are the
    reduced towers the maps v and h are read from.
    """
    by_id = complex_.by_id

    def same_tower(source: str, target: str, power: int) -> bool:
        gen_x, gen_y = by_id[source], by_id[target]
        return (
            (gen_x.tower == gen_y.tower)
            and (gen_x.index == gen_y.index)
            and (complex_.drop(source, target, power) == (0, 0))
        )

    return _cancel(complex_, complex_.ids, same_tower)


def is_reduced(complex_: FilteredComplex) -> bool:
    return all(
        complex_.drop(source, target, power) != (0, 0)
        for source, target, power in complex_.arrows()
    )


# -----------------------------------------------------------------------------


@dataclass
class _LaurentData:
    """Generators with gradings, first filtration, and arrows over F2[U, U^-1]."""

    ids: List[str]
    gr: Dict[str, Fraction]
    filt_i: Dict[str, int]
    arrows: _Arrows

    @staticmethod
    def from_filtered(complex_: FilteredComplex) -> "_LaurentData":
        return _LaurentData(
            ids=complex_.ids,
            gr={gen.id: gen.gr for gen in complex_.gens},
            filt_i={gen.id: gen.filt_i for gen in complex_.gens},
            arrows={gen_id: complex_.diff.get(gen_id, {}) for gen_id in complex_.ids},
        )

    @staticmethod
    def from_knot(complex_: KnotComplex, s: int) -> "_LaurentData":
        """CFK^infinity(K) with the filtration max(i, j - s)."""
        arrows: _Arrows = {name: {} for name in complex_.names}
        for source, mono, target in complex_.arrows():
            targets = arrows[source]
            if target in targets:
                del targets[target]
            else:
                targets[target] = mono.u_exp

        return _LaurentData(
            ids=complex_.names,
            gr={gen.name: Fraction(gen.gr_u) for gen in complex_.gens},
            filt_i={gen.name: max(0, gen.alexander - s) for gen in complex_.gens},
            arrows=arrows,
        )

    def cosets(self) -> Dict[Fraction, List[str]]:
        by_coset: Dict[Fraction, List[str]] = {}
        for gen_id in self.ids:
            by_coset.setdefault(Fraction(self.gr[gen_id]) % 2, []).append(gen_id)

        return by_coset

    def slice_matrix(self, sources: List[str], targets: List[str]) -> GF2:
        """Matrix of the differential from the span of sources to targets."""
        row_index = {gen_id: k for k, gen_id in enumerate(targets)}
        col_index = {gen_id: k for k, gen_id in enumerate(sources)}
        entries = [
            (target, source)
            for source in sources
            for target in self.arrows.get(source, {})
            if target in row_index
        ]
        return gf2.incidence_matrix(row_index, col_index, entries)

    def homology_ranks(self) -> Dict[Fraction, int]:
        by_coset = self.cosets()
        ranks: Dict[Fraction, int] = {}
        for coset, gen_ids in by_coset.items():
            other = by_coset.get((coset + 1) % 2, [])
            rank_out = gf2.rank(self.slice_matrix(gen_ids, other))
            rank_in = gf2.rank(self.slice_matrix(other, gen_ids))
            ranks[coset] = len(gen_ids) - rank_out - rank_in

        return ranks

    def tower_bottom(self) -> Fraction:
        """Grading of the lowest tower element with first filtration >= 0."""
        ranks = self.homology_ranks()
        total = sum(ranks.values())
        if total != 1:
            raise UnexpectedHomologyError(
                f"Expected homology of rank 1 over F2[U, U^-1], got {total}"
            )

        coset = next(c for c, rank in ranks.items() if rank == 1)
        by_coset = self.cosets()
        gen_ids = by_coset[coset]
        other = by_coset.get((coset + 1) % 2, [])

        # Level of U^c x, where gr(x) - 2c = coset
        levels = {
            gen_id: self.filt_i[gen_id] - int((self.gr[gen_id] - coset) / 2)
            for gen_id in gen_ids
        }
        boundaries = self.slice_matrix(other, gen_ids)
        d_out = self.slice_matrix(gen_ids, other)

        for level in sorted(set(levels.values())):
            cols = [k for k, gen_id in enumerate(gen_ids) if levels[gen_id] <= level]
            kernel = gf2.null_space(d_out[:, cols])
            if kernel.shape[0] == 0:
                continue

            cycles = GF2.Zeros((len(gen_ids), kernel.shape[0]))
            cycles[cols, :] = kernel.T
            if gf2.column_rank_increases(boundaries, cycles):
                return coset - 2 * level

        raise UnexpectedHomologyError("No cycle generates the homology")


def homology_laurent(complex_: FilteredComplex) -> Dict[Fraction, int]:
    """Nonzero homology ranks over F2[U, U^-1] for each grading coset mod 2."""
    ranks = _LaurentData.from_filtered(complex_).homology_ranks()
    return {coset: rank for coset, rank in ranks.items() if rank}


def d_invariant(complex_: FilteredComplex) -> Fraction:
    """Grading of the bottom of the U-nontorsion tower in the plus flavor."""
    return _LaurentData.from_filtered(complex_).tower_bottom()


def hat_rank(complex_: FilteredComplex) -> int:
    """Rank of the homology of the I = 0 associated graded complex."""
    index = {gen_id: k for k, gen_id in enumerate(complex_.ids)}
    entries = [
        (target, source)
        for source, target, power in complex_.arrows()
        if complex_.drop(source, target, power)[0] == 0
    ]
    matrix = gf2.incidence_matrix(index, index, entries)
    return len(index) - 2 * gf2.rank(matrix)


def v_invariant(complex_: KnotComplex, s: int = 0) -> int:
    """V_s of a knot from its complex alone."""
    bottom = _LaurentData.from_knot(complex_, s).tower_bottom()
    value = -bottom / 2
    assert value.denominator == 1, value
    return int(value)


def oracle_d_invariant(complex_: KnotComplex, p: int = 1) -> Fraction:
    """d-invariant of 1/p surgery on a knot (p >= 1), computed without the cone."""
    if p < 1:
        raise ValueError(f"p must be positive: {p}")

    return Fraction(-2 * v_invariant(complex_, 0))
