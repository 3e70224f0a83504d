"""Knot Floer complexes over F2[U,V]."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .coefficients import UVMonomial
from .errors import FlipMapError

_LOGGER = logging.getLogger(__name__)

Arrow = Tuple[UVMonomial, str]
"""Differential term (U^a V^b, target generator)."""


@dataclass(frozen=True)
class KnotGen:
    """Generator of a knot complex."""

    name: str
    """Unique name of the generator."""

    gr_u: int
    """Grading with U of degree -2."""

    gr_v: int
    """Grading with V of degree -2."""

    def __post_init__(self) -> None:
        if (self.gr_u - self.gr_v) % 2:
            raise ValueError(
                f"Gradings of {self.name} have different parity: "
                f"({self.gr_u}, {self.gr_v})"
            )

    @property
    def alexander(self) -> int:
        return (self.gr_u - self.gr_v) // 2

    @property
    def grading(self) -> Tuple[int, int]:
        return (self.gr_u, self.gr_v)


@dataclass(frozen=True)
class KnotComplex:
    """Finitely generated bigraded complex over F2[U,V].

    Generator order is part of the data. Everything downstream iterates in
    that order.
    """

    gens: Tuple[KnotGen, ...]
    diff: Dict[str, Tuple[Arrow, ...]] = field(default_factory=dict)
    """Differential of each generator as an F2 sum of arrows."""

    @staticmethod
    def build(
        gens: Iterable[KnotGen],
        arrows: Iterable[Tuple[str, UVMonomial, str]] = (),
    ) -> "KnotComplex":
        """Create a complex from (source, monomial, target) arrows.

        Repeated arrows cancel in pairs.
        """
        gens = tuple(gens)
        names = [gen.name for gen in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate generator names: {names}")

        terms: Dict[str, Dict[Arrow, int]] = {name: {} for name in names}
        for source, mono, target in arrows:
            if source not in terms:
                raise ValueError(f"Unknown source generator: {source}")

            if target not in terms:
                raise ValueError(f"Unknown target generator: {target}")

            source_terms = terms[source]
            key = (mono, target)
            source_terms[key] = source_terms.get(key, 0) + 1

        diff: Dict[str, Tuple[Arrow, ...]] = {}
        for name in names:
            diff[name] = tuple(
                key for key, count in terms[name].items() if (count % 2) == 1
            )

        return KnotComplex(gens, diff)

    def __post_init__(self) -> None:
        for name in self.names:
            if name not in self.diff:
                self.diff[name] = ()

    @property
    def names(self) -> List[str]:
        return [gen.name for gen in self.gens]

    def gen(self, name: str) -> KnotGen:
        for gen in self.gens:
            if gen.name == name:
                return gen

        raise KeyError(name)

    def arrows(self) -> Iterator[Tuple[str, UVMonomial, str]]:
        """Yield (source, monomial, target) in generator order."""
        for gen in self.gens:
            for mono, target in self.diff.get(gen.name, ()):
                yield (gen.name, mono, target)

    @property
    def num_arrows(self) -> int:
        return sum(len(terms) for terms in self.diff.values())

    def __len__(self) -> int:
        return len(self.gens)


def genus(complex_: KnotComplex) -> int:
    """Maximum |A| over generators."""
    return max((abs(gen.alexander) for gen in complex_.gens), default=0)


def alexander(gen: KnotGen) -> int:
    return gen.alexander


# -----------------------------------------------------------------------------


def staircase_t2(q: int) -> KnotComplex:
    """Staircase complex of the torus knot T(2, q)."""
    if (q < 1) or ((q % 2) == 0):
        raise ValueError(f"q must be a positive odd integer: {q}")

    g = (q - 1) // 2
    gens: List[KnotGen] = []

    for i in range(1, g + 1):
        gens.append(KnotGen(f"a{i}", 2 * i - 2 * g - 1, 1 - 2 * i))

    for i in range(1, g + 2):
        gens.append(KnotGen(f"b{i}", 2 * (i - g - 1), 2 - 2 * i))

    arrows = []
    for i in range(1, g + 1):
        arrows.append((f"a{i}", UVMonomial(1, 0), f"b{i + 1}"))
        arrows.append((f"a{i}", UVMonomial(0, 1), f"b{i}"))

    return KnotComplex.build(gens, arrows)


def unknot() -> KnotComplex:
    return staircase_t2(1)


def reflect(complex_: KnotComplex) -> KnotComplex:
    """Swap both gradings and the U/V exponents of every arrow."""
    return KnotComplex.build(
        (KnotGen(gen.name, gen.gr_v, gen.gr_u) for gen in complex_.gens),
        (
            (source, mono.swapped(), target)
            for source, mono, target in complex_.arrows()
        ),
    )


def dual(complex_: KnotComplex) -> KnotComplex:
    """Mirror complex: arrows reversed, gradings negated."""
    return KnotComplex.build(
        (KnotGen(gen.name, -gen.gr_u, -gen.gr_v) for gen in complex_.gens),
        ((target, mono, source) for source, mono, target in complex_.arrows()),
    )


def shift_gradings(complex_: KnotComplex, shift_u: int, shift_v: int) -> KnotComplex:
    if (shift_u - shift_v) % 2:
        raise ValueError(f"Shift changes the Alexander parity: ({shift_u}, {shift_v})")

    return KnotComplex(
        tuple(
            KnotGen(gen.name, gen.gr_u + shift_u, gen.gr_v + shift_v)
            for gen in complex_.gens
        ),
        dict(complex_.diff),
    )


def tensor_name(name_1: str, name_2: str) -> str:
    return f"{name_1}*{name_2}"


def tensor(complex_1: KnotComplex, complex_2: KnotComplex) -> KnotComplex:
    """Tensor product over F2[U,V] with the Leibniz differential."""
    gens: List[KnotGen] = []
    arrows: List[Tuple[str, UVMonomial, str]] = []

    for gen_1 in complex_1.gens:
        for gen_2 in complex_2.gens:
            name = tensor_name(gen_1.name, gen_2.name)
            gens.append(
                KnotGen(name, gen_1.gr_u + gen_2.gr_u, gen_1.gr_v + gen_2.gr_v)
            )

            for mono, target in complex_1.diff[gen_1.name]:
                arrows.append((name, mono, tensor_name(target, gen_2.name)))

            for mono, target in complex_2.diff[gen_2.name]:
                arrows.append((name, mono, tensor_name(gen_1.name, target)))

    return KnotComplex.build(gens, arrows)


def validate(complex_: KnotComplex, mod_uv: bool = False) -> List[str]:
    """Return a list of violations (empty if the complex is valid).

    With mod_uv, d^2 is checked over F2[U, V]/(UV).
    """
    diagnostics: List[str] = []
    by_name = {gen.name: gen for gen in complex_.gens}

    for source, mono, target in complex_.arrows():
        if target not in by_name:
            diagnostics.append(f"{source} -> {target}: unknown target")
            continue

        gen_x, gen_y = by_name[source], by_name[target]
        expected_u = gen_x.gr_u - 1 + (2 * mono.u_exp)
        expected_v = gen_x.gr_v - 1 + (2 * mono.v_exp)
        if (gen_y.gr_u != expected_u) or (gen_y.gr_v != expected_v):
            diagnostics.append(
                f"{source} -> {mono} {target}: expected gradings "
                f"({expected_u}, {expected_v}), got ({gen_y.gr_u}, {gen_y.gr_v})"
            )

    for gen in complex_.gens:
        square: Counter = Counter()
        for mono_1, middle in complex_.diff[gen.name]:
            for mono_2, target in complex_.diff.get(middle, ()):
                square[(mono_1 * mono_2, target)] += 1

        for (mono, target), count in square.items():
            if mod_uv and mono.is_mixed:
                continue

            if (count % 2) == 1:
                diagnostics.append(f"d^2({gen.name}) contains {mono} {target}")

    return diagnostics


# -----------------------------------------------------------------------------

_ArrowTable = Dict[Tuple[str, str], FrozenSet[UVMonomial]]


def _arrow_table(complex_: KnotComplex, swap: bool = False) -> _ArrowTable:
    table: Dict[Tuple[str, str], set] = {}
    for source, mono, target in complex_.arrows():
        table.setdefault((source, target), set()).add(
            mono.swapped() if swap else mono
        )

    return {key: frozenset(monos) for key, monos in table.items()}


def find_isomorphism(
    complex_1: KnotComplex,
    complex_2: KnotComplex,
    swap: bool = False,
    allow_shift: bool = True,
) -> Optional[Dict[str, str]]:
    """Find a generator bijection carrying complex_1 onto complex_2.

    Gradings must agree up to one global shift (if allow_shift). With swap,
    gr_u/gr_v and the U/V exponents of complex_1 are exchanged first.
    Returns None if no bijection exists.
    """
    if (len(complex_1) != len(complex_2)) or (
        complex_1.num_arrows != complex_2.num_arrows
    ):
        return None

    if not complex_1.gens:
        return {}

    def grading_1(gen: KnotGen) -> Tuple[int, int]:
        return (gen.gr_v, gen.gr_u) if swap else (gen.gr_u, gen.gr_v)

    table_1 = _arrow_table(complex_1, swap=swap)
    table_2 = _arrow_table(complex_2)
    gens_1 = list(complex_1.gens)
    gens_2 = list(complex_2.gens)

    def consistent(name_1: str, name_2: str, mapping: Dict[str, str]) -> bool:
        for other_1, other_2 in mapping.items():
            for pair_1, pair_2 in (
                ((name_1, other_1), (name_2, other_2)),
                ((other_1, name_1), (other_2, name_2)),
            ):
                if table_1.get(pair_1, frozenset()) != table_2.get(
                    pair_2, frozenset()
                ):
                    return False

        return True

    def search(
        index: int,
        shift: Tuple[int, int],
        mapping: Dict[str, str],
        used: set,
    ) -> Optional[Dict[str, str]]:
        if index == len(gens_1):
            return dict(mapping)

        gen_1 = gens_1[index]
        gr_1 = grading_1(gen_1)
        for gen_2 in gens_2:
            if gen_2.name in used:
                continue

            if (gen_2.gr_u - gr_1[0], gen_2.gr_v - gr_1[1]) != shift:
                continue

            if not consistent(gen_1.name, gen_2.name, mapping):
                continue

            mapping[gen_1.name] = gen_2.name
            used.add(gen_2.name)
            result = search(index + 1, shift, mapping, used)
            if result is not None:
                return result

            del mapping[gen_1.name]
            used.remove(gen_2.name)

        return None

    first_gr = grading_1(gens_1[0])
    if allow_shift:
        shifts = []
        for gen_2 in gens_2:
            shift = (gen_2.gr_u - first_gr[0], gen_2.gr_v - first_gr[1])
            if shift not in shifts:
                shifts.append(shift)
    else:
        shifts = [(0, 0)]

    for shift in shifts:
        result = search(0, shift, {}, set())
        if result is not None:
            return result

    return None


def flip_map(complex_: KnotComplex) -> Dict[str, str]:
    """Generator-level isomorphism from complex_ onto its reflection.

    sigma(x) has the swapped gradings of x and every arrow U^a V^b from x to y
    becomes an arrow U^b V^a from sigma(x) to sigma(y).
    """
    mapping = find_isomorphism(complex_, complex_, swap=True, allow_shift=False)
    if mapping is None:
        raise FlipMapError("Complex has no generator-level reflection symmetry")

    _LOGGER.debug("Flip map: %s", mapping)
    return mapping
