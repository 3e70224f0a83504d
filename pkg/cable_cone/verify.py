"""Verification suites (paper, properties, oracles)."""

import asyncio
import itertools
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

import yaml

from .cfk_format import parse_cfk
from .errors import CableConeError
from .knot_complex import find_isomorphism, shift_gradings, tensor
from .local_equiv import (
    Side,
    StandardComplexX,
    phi_from_standard,
    standard_complex_z,
    standardize_x,
    to_uv_presentation,
    verify_local_equiv,
)
from .mapping_cone import (
    ConeParameters,
    FilteredComplex,
    SurgerySpec,
    Tower,
    build_cone,
    middle_tower,
    validate_filtered,
)
from .pipeline import STATUS_OK, PipelineResult, knot_from_spec, run_pipeline
from .reduction import (
    homology_laurent,
    is_reduced,
    oracle_d_invariant,
    reduce,
    reduce_towers,
)
from .settings import AppSettings

_LOGGER = logging.getLogger(__name__)
_DIR = Path(__file__).parent
_SUITES_DIR = _DIR / "suites"

SUITES = ("paper", "properties", "oracles")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


CheckFunction = Callable[[Dict[str, Any], AppSettings], Tuple[bool, str]]


@lru_cache(maxsize=None)
def _pipeline(
    knot: str, n: int, surgery: str, padding: int, max_passes: int
) -> PipelineResult:
    settings = AppSettings(window_padding=padding, max_standardize_passes=max_passes)
    return run_pipeline(
        knot_from_spec(knot), n, SurgerySpec.parse(surgery), settings=settings
    )


def _check_pipeline(
    check: Dict[str, Any], settings: AppSettings, padding: int = 0
) -> PipelineResult:
    return _pipeline(
        check["knot"],
        int(check.get("cable_n", 1)),
        str(check.get("surgery", "1")),
        padding,
        settings.max_standardize_passes,
    )


def _require_z(result: PipelineResult) -> Optional[str]:
    if result.standard_z_status != STATUS_OK:
        return (
            f"standard sequence: {result.standard_z_status}"
            f" (hat rank {result.hat_rank})"
        )

    return None


def _require_x(result: PipelineResult) -> Optional[str]:
    if result.standard_x is None:
        return f"standardization over X: {result.status}"

    return None


# -----------------------------------------------------------------------------


def check_standard_sequence(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    result = _check_pipeline(check, settings)
    problem = _require_z(result)
    if problem:
        return (False, problem)

    assert result.standard_z is not None
    actual = list(result.standard_z.seq)
    expected = list(check["expect"])
    return (actual == expected, f"got {actual}, expected {expected}")


def check_standard_sequence_x(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    result = _check_pipeline(check, settings)
    problem = _require_x(result)
    if problem:
        return (False, problem)

    assert result.standard_x is not None
    expected = StandardComplexX.from_pairs(
        (sign, (i, j)) for sign, i, j in check["expect"]
    )
    return (
        result.standard_x == expected,
        f"got {result.standard_x}, expected {expected}",
    )


def _phi_x_key(key: str) -> Tuple[int, int]:
    i, j = key.split(",")
    return (int(i), int(j))


def check_phi_x(check: Dict[str, Any], settings: AppSettings) -> Tuple[bool, str]:
    """Expected entries, plus phi_{i,j} = 0 for i above a bound in one row."""
    result = _check_pipeline(check, settings)
    problem = _require_x(result)
    if problem:
        return (False, problem)

    phi_x = result.phi_x
    for key, value in check.get("expect", {}).items():
        if phi_x[_phi_x_key(key)] != value:
            return (False, f"phi_{key} = {phi_x[_phi_x_key(key)]}, expected {value}")

    zero_row = check.get("zero_above")
    if zero_row:
        row, bound = int(zero_row["j"]), int(zero_row["i"])
        for (i, j), value in phi_x.values.items():  # type: ignore[misc]
            if (j == row) and (i > bound) and (value != 0):
                return (False, f"phi_{i},{j} = {value}, expected 0")

    return (True, "")


def check_phi(check: Dict[str, Any], settings: AppSettings) -> Tuple[bool, str]:
    result = _check_pipeline(check, settings)
    problem = _require_z(result)
    if problem:
        return (False, problem)

    for key, value in check.get("expect", {}).items():
        if result.phi[int(key)] != value:
            return (False, f"phi_{key} = {result.phi[int(key)]}, expected {value}")

    return (True, "")


def check_local_equiv_to(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """Reduced cone is locally equivalent to the complex in the check."""
    result = _check_pipeline(check, settings)
    problem = _require_x(result)
    if problem:
        return (False, problem)

    expected = parse_cfk(check["cfk"])
    expected_x = standardize_x(expected, settings.max_standardize_passes)
    assert result.standard_x is not None
    if expected_x != result.standard_x:
        return (False, f"standard forms differ: {expected_x} != {result.standard_x}")

    # Align gradings through the start generators of the standard forms
    (u_1, v_1), (u_2, v_2) = (
        result.standard_x.start_grading,
        expected_x.start_grading,
    )
    expected = shift_gradings(expected, u_1 - u_2, v_1 - v_2)
    equivalent = verify_local_equiv(
        result.presentation,
        expected,
        int(check.get("exponent_bound", settings.exponent_bound)),
        settings.search_ceiling,
    )
    return (equivalent, "" if equivalent else "no local maps found")


def _delta_closed_forms(
    s: int, g: int, n: int
) -> Tuple[Tuple[int, Fraction], Tuple[int, Fraction]]:
    """(delta to beta_s, delta to beta_{s+1})."""
    if s >= g:
        return ((0, Fraction(n + g - s)), (s, Fraction(g)))

    if (s % 2) == 0:
        return (
            ((-s + g + 1) // 2, Fraction(n + (-s + g - 1) // 2)),
            ((s + g + 1) // 2, Fraction((s + g - 1) // 2)),
        )

    return (
        ((-s + g) // 2, Fraction(n + (-s + g) // 2)),
        ((s + g) // 2, Fraction((s + g) // 2)),
    )


def _survivors(complex_: FilteredComplex, tower: Tower, index: int) -> List[str]:
    return [
        gen.id for gen in complex_.gens if (gen.tower == tower) and (gen.index == index)
    ]


def check_tower_drops(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """Filtration drops from x_s to beta_s and beta_{s+1} against closed forms.

    Towers are reduced one at a time. beta_s is the one generator left in B_s
    and x_s is the generator of A_s mapping to both neighbors with the
    smallest drop.
    """
    result = _check_pipeline(check, settings)
    towers = reduce_towers(result.cone)
    g, n = towers.meta.genus, towers.meta.n
    low, high = towers.meta.window
    for s in range(max(0, low + 1), high):
        betas = []
        for index in (s, s + 1):
            survivors = _survivors(towers, Tower.B, index)
            if len(survivors) != 1:
                return (False, f"B{index} reduces to {len(survivors)} generators")

            betas.append(survivors[0])

        beta_s, beta_next = betas
        candidates = [
            (
                towers.drop(x_s, beta_s, towers.diff[x_s][beta_s]),
                towers.drop(x_s, beta_next, towers.diff[x_s][beta_next]),
                x_s,
            )
            for x_s in _survivors(towers, Tower.A, s)
            if {beta_s, beta_next} <= towers.diff[x_s].keys()
        ]
        if not candidates:
            return (False, f"s={s}: no generator of A{s} maps to both B towers")

        actual_s, actual_next, x_s = min(candidates)
        expected = _delta_closed_forms(s, g, n)
        if (actual_s, actual_next) != expected:
            return (
                False,
                f"s={s}: {x_s} drops {(actual_s, actual_next)}, not {expected}",
            )

    return (True, "")


def check_d_invariant(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """Cone d-invariant against the knot-only oracle (and a pin, if given)."""
    result = _check_pipeline(check, settings)
    surgery = SurgerySpec.parse(str(check.get("surgery", "1")))
    oracle = oracle_d_invariant(result.knot, surgery.p)
    if result.d_invariant != oracle:
        return (False, f"cone d = {result.d_invariant}, oracle d = {oracle}")

    if "expect" in check:
        pinned = Fraction(str(check["expect"]))
        if result.d_invariant != pinned:
            return (False, f"d = {result.d_invariant}, pinned {pinned}")

    return (True, "")


def _level_counts(params: ConeParameters, l: int, radius: int) -> List[int]:
    """Number of second-filtration values at each first-filtration level."""
    r = params.r(l)
    levels: Dict[int, set] = {}
    for i in range(-radius, radius + 1):
        for j in range(r - radius, r + radius + 1):
            filt_i, filt_j = params.a_filtration(l, i, j)
            levels.setdefault(filt_i, set()).add(filt_j)

    counts = []
    for level in range(-1, 2):
        values = sorted(levels[level])
        consecutive = all(b - a == 1 for a, b in zip(values, values[1:]))
        counts.append(len(values) if consecutive else -1)

    return counts


def check_cone_properties(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    knot = knot_from_spec(check["knot"])
    n = int(check["cable_n"])
    surgery = SurgerySpec.parse(str(check["surgery"]))
    cone = build_cone(knot, n, surgery)

    diagnostics = validate_filtered(cone)
    if diagnostics:
        return (False, diagnostics[0])

    reduced = reduce(cone)
    if not is_reduced(reduced):
        return (False, "reduced complex has a (0, 0) arrow")

    again = reduce(reduced)
    if (again.gens != reduced.gens) or (again.diff != reduced.diff):
        return (False, "reduce is not idempotent")

    if homology_laurent(cone) != homology_laurent(reduced):
        return (False, "reduce changed the Laurent homology")

    params = ConeParameters(n, surgery)
    for l in range(cone.meta.window[0], cone.meta.window[1] + 1):
        counts = _level_counts(params, l, n + 4)
        if counts != [n + 1] * len(counts):
            return (False, f"tower {l}: level counts {counts}")

    return (True, "")


def check_truncation_independence(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    result = _check_pipeline(check, settings)
    padded = _check_pipeline(check, settings, padding=int(check.get("padding", 3)))
    problem = _require_x(result) or _require_x(padded)
    if problem:
        return (False, problem)

    for name, value, padded_value in (
        ("d", result.d_invariant, padded.d_invariant),
        ("hat rank", result.hat_rank, padded.hat_rank),
        ("z status", result.standard_z_status, padded.standard_z_status),
        ("standard sequence", result.standard_z, padded.standard_z),
        ("phi", result.phi, padded.phi),
        ("standard complex over X", result.standard_x, padded.standard_x),
        ("phi_x", result.phi_x, padded.phi_x),
    ):
        if value != padded_value:
            return (False, f"{name}: {value} != {padded_value}")

    return (True, "")


def check_symmetry(check: Dict[str, Any], settings: AppSettings) -> Tuple[bool, str]:
    """Standard form equals its reverse with signs negated.

    Over F2[U,V]/(UV) when the surgery is an L-space, over X otherwise.
    """
    result = _check_pipeline(check, settings)
    if result.z_applicable:
        problem = _require_z(result)
        if problem:
            return (False, problem)

        assert result.standard_z is not None
        return (
            result.standard_z.is_symmetric,
            f"{list(result.standard_z.seq)} is not symmetric",
        )

    problem = _require_x(result)
    if problem:
        return (False, problem)

    assert result.standard_x is not None
    return (result.standard_x.is_symmetric, f"{result.standard_x} is not symmetric")


def check_local_equiv(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """Reduced cone vs its realized standard complex (small L-space cones only)."""
    result = _check_pipeline(check, settings)
    if not result.z_applicable:
        return (True, f"skipped (not an L-space, hat rank {result.hat_rank})")

    max_gens = int(check.get("max_generators", 10))
    if len(result.reduced) > max_gens:
        return (True, f"skipped ({len(result.reduced)} generators)")

    problem = _require_z(result)
    if problem:
        return (False, problem)

    assert result.standard_z is not None
    equivalent = verify_local_equiv(
        result.presentation,
        standard_complex_z(result.standard_z),
        settings.exponent_bound,
        settings.search_ceiling,
    )
    return (equivalent, "" if equivalent else "no local maps found")


def check_additivity(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """phi_x of a tensor product is the sum of the phi_x tables."""
    left = _check_pipeline(check["left"], settings)
    right = _check_pipeline(check["right"], settings)
    for result in (left, right):
        problem = _require_x(result)
        if problem:
            return (False, problem)

    product = standardize_x(
        tensor(left.presentation, right.presentation),
        settings.max_standardize_passes,
    )
    actual = phi_from_standard(product, Side.U)
    expected = left.phi_x + right.phi_x
    return (actual == expected, f"got {actual.values}, expected {expected.values}")


def check_stabilization(
    check: Dict[str, Any], settings: AppSettings
) -> Tuple[bool, str]:
    """Middle tower is the input complex up to a grading shift."""
    result = _check_pipeline(check, settings)
    presentation = to_uv_presentation(middle_tower(result.cone))
    mapping = find_isomorphism(presentation, result.knot)
    return (mapping is not None, "" if mapping else "middle tower is not the input")


_CHECKS: Dict[str, CheckFunction] = {
    "standard_sequence": check_standard_sequence,
    "standard_sequence_x": check_standard_sequence_x,
    "phi": check_phi,
    "phi_x": check_phi_x,
    "local_equiv_to": check_local_equiv_to,
    "tower_drops": check_tower_drops,
    "d_invariant": check_d_invariant,
    "cone_properties": check_cone_properties,
    "truncation_independence": check_truncation_independence,
    "symmetry": check_symmetry,
    "local_equiv": check_local_equiv,
    "additivity": check_additivity,
    "stabilization": check_stabilization,
}


# -----------------------------------------------------------------------------


def load_suite(suite: str) -> List[Dict[str, Any]]:
    """Load checks from a suite file, expanding corpus sweeps."""
    suite_path = Path(suite)
    if not suite_path.is_file():
        if suite not in SUITES:
            raise ValueError(f"Unknown suite: {suite}")

        suite_path = _SUITES_DIR / f"{suite}.yaml"

    with open(suite_path, "r", encoding="utf-8") as suite_file:
        suite_dict = yaml.safe_load(suite_file) or {}

    checks: List[Dict[str, Any]] = list(suite_dict.get("checks", []))
    corpus = suite_dict.get("corpus")
    if corpus:
        for knot, n, surgery in itertools.product(
            corpus["knots"], corpus["cable_n"], corpus["surgeries"]
        ):
            for kind in corpus["kinds"]:
                checks.append(
                    {
                        "name": f"{kind}[{knot} n={n} {surgery}]",
                        "kind": kind,
                        "knot": knot,
                        "cable_n": n,
                        "surgery": str(surgery),
                    }
                )

    for check in checks:
        if check.get("kind") not in _CHECKS:
            raise ValueError(f"Unknown check kind in {suite}: {check.get('kind')}")

    return checks


def run_check(check: Dict[str, Any], settings: AppSettings) -> CheckResult:
    name = check.get("name", check["kind"])
    try:
        passed, detail = _CHECKS[check["kind"]](check, settings)
    except CableConeError as err:
        return CheckResult(name, False, f"{err.__class__.__name__}: {err}")

    _LOGGER.debug("%s: %s", name, "pass" if passed else detail)
    if passed and not detail.startswith("skipped"):
        detail = ""

    return CheckResult(name, passed, detail)


async def run_suite(suite: str, settings: AppSettings) -> List[CheckResult]:
    """Run all checks of a suite, at most settings.jobs at a time."""
    checks = load_suite(suite)
    semaphore = asyncio.Semaphore(max(1, settings.jobs))

    async def run_one(check: Dict[str, Any]) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(run_check, check, settings)

    return list(await asyncio.gather(*(run_one(check) for check in checks)))


def run_verify(
    suite: str, settings: Optional[AppSettings] = None, out: TextIO = sys.stdout
) -> int:
    """Run a suite, print one line per check, and return the exit code."""
    if settings is None:
        settings = AppSettings()

    results = asyncio.run(run_suite(suite, settings))
    num_failed = 0
    for result in results:
        if result.passed and result.detail:
            print("PASS", result.name, f"({result.detail})", file=out)
        elif result.passed:
            print("PASS", result.name, file=out)
        else:
            num_failed += 1
            print("FAIL", result.name, result.detail, file=out)

    print(f"{len(results) - num_failed}/{len(results)} passed", file=out)
    return 1 if num_failed else 0
