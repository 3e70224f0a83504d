import itertools
import random
from fractions import Fraction

import pytest

from cable_cone.knot_complex import staircase_t2, unknot
from cable_cone.local_equiv import standardize_z, to_uv_presentation
from cable_cone.mapping_cone import (
    SurgeryKind,
    SurgerySpec,
    build_cone,
    build_cone_one_over_p,
    build_cone_plus_one,
)
from cable_cone.reduction import (
    Cancellation,
    d_invariant,
    hat_rank,
    homology_laurent,
    is_reduced,
    oracle_d_invariant,
    reduce,
    reduce_towers,
    v_invariant,
)

TREFOIL = staircase_t2(3)


def test_reduce_trefoil() -> None:
    cone = build_cone_plus_one(TREFOIL, 1)
    assert not is_reduced(cone)

    reduced = reduce(cone)
    assert is_reduced(reduced)
    assert reduced.ids == ["A0.b1", "A1.b2", "B1.b2"]
    assert list(reduced.arrows()) == [("A0.b1", "B1.b2", 1), ("A1.b2", "B1.b2", 0)]
    assert reduced.drop("A0.b1", "B1.b2", 1) == (1, 0)
    assert reduced.drop("A1.b2", "B1.b2", 0) == (0, 1)
    assert reduced.cancelled == (
        Cancellation("A0.a1", "A0.b2", 1),
        Cancellation("A1.a1", "A1.b1", 0),
        Cancellation("B1.a1", "B1.b1", 0),
    )

    assert len(reduce(build_cone_plus_one(TREFOIL, 2))) == 7


def test_reduce_properties() -> None:
    for knot, n in ((TREFOIL, 2), (staircase_t2(5), 3)):
        cone = build_cone_plus_one(knot, n)
        reduced = reduce(cone)

        # Idempotent
        again = reduce(reduced)
        assert again.gens == reduced.gens
        assert again.diff == reduced.diff
        assert again.cancelled == ()

        assert homology_laurent(cone) == homology_laurent(reduced)
        assert sum(homology_laurent(reduced).values()) == 1

    with pytest.raises(ValueError):
        reduce(build_cone_plus_one(TREFOIL, 1), order=["A0.a1"])


def test_every_cancellation_order() -> None:
    cone = build_cone_plus_one(TREFOIL, 1)
    assert len(cone) == 9

    outcomes = {}
    for order in itertools.permutations(cone.ids):
        reduced = reduce(cone, order)
        key = (tuple(reduced.ids), tuple(reduced.arrows()))
        outcomes.setdefault(key, reduced)

    for reduced in outcomes.values():
        assert is_reduced(reduced)
        assert len(reduced) == 3
        assert d_invariant(reduced) == -2
        assert standardize_z(to_uv_presentation(reduced)).seq == (-1, 1)


def test_cancellation_order() -> None:
    cone = build_cone_plus_one(TREFOIL, 2)
    expected = standardize_z(to_uv_presentation(reduce(cone)))
    expected_d = d_invariant(reduce(cone))

    rng = random.Random(1234)
    for _ in range(50):
        order = list(cone.ids)
        rng.shuffle(order)
        reduced = reduce(cone, order)
        assert is_reduced(reduced)
        assert len(reduced) == 7
        assert d_invariant(reduced) == expected_d
        assert standardize_z(to_uv_presentation(reduced)) == expected


def test_d_invariant() -> None:
    # +1 surgery on the unknot is S^3
    assert d_invariant(reduce(build_cone_plus_one(unknot(), 1))) == 0

    reduced = reduce(build_cone_plus_one(TREFOIL, 1))
    assert d_invariant(reduced) == -2
    assert hat_rank(reduced) == 1

    reduced = reduce(build_cone_one_over_p(TREFOIL, 1, 2))
    assert d_invariant(reduced) == -2

    for q in (5, 7):
        knot = staircase_t2(q)
        for surgery in (SurgerySpec(), SurgerySpec(SurgeryKind.ONE_OVER_P, 2)):
            cone = build_cone(knot, 1, surgery)
            assert d_invariant(reduce(cone)) == oracle_d_invariant(knot, surgery.p)


def test_v_invariant() -> None:
    assert v_invariant(unknot()) == 0
    assert v_invariant(TREFOIL) == 1
    assert v_invariant(TREFOIL, 1) == 0
    assert v_invariant(staircase_t2(5)) == 1
    assert v_invariant(staircase_t2(7)) == 2

    assert oracle_d_invariant(TREFOIL, 3) == Fraction(-2)

    with pytest.raises(ValueError):
        oracle_d_invariant(TREFOIL, 0)


def test_reduce_towers() -> None:
    towers = reduce_towers(build_cone_plus_one(TREFOIL, 1))
    assert towers.ids == ["A0.b1", "A1.b2", "B1.b2"]

    towers = reduce_towers(build_cone_plus_one(staircase_t2(7), 3))
    assert all(
        cancellation.source.split(".")[0] == cancellation.target.split(".")[0]
        for cancellation in towers.cancelled
    )
    assert [gen.id for gen in towers.gens if gen.id.startswith("A0.")] == [
        "A0.a1",
        "A0.b1",
        "A0.b2",
    ]
    assert towers.diff["A0.b2"] == {"B0.b4": 2, "B1.b4": 2}

    low, high = towers.meta.window
    for index in range(low + 1, high + 1):
        prefix = f"B{index}."
        assert sum(1 for gen_id in towers.ids if gen_id.startswith(prefix)) == 1
