from fractions import Fraction

import pytest

from cable_cone.errors import WindowError
from cable_cone.knot_complex import staircase_t2, unknot
from cable_cone.mapping_cone import (
    ConeParameters,
    SurgeryKind,
    SurgerySpec,
    Tower,
    build_cone,
    build_cone_one_over_p,
    build_cone_plus_one,
    default_window,
    gen_id,
    middle_tower,
    rational_shift,
    truncated_cone,
    validate_filtered,
)

TREFOIL = staircase_t2(3)


def test_surgery_spec() -> None:
    assert SurgerySpec.parse("1") == SurgerySpec()
    assert SurgerySpec.parse("+1") == SurgerySpec()
    assert SurgerySpec.parse("1/3") == SurgerySpec(SurgeryKind.ONE_OVER_P, 3)
    assert str(SurgerySpec.parse(" 1/2 ")) == "1/2"
    assert str(SurgerySpec()) == "1"

    for text in ("2", "1/0", "2/3", "1/x"):
        with pytest.raises(ValueError):
            SurgerySpec.parse(text)


def test_rational_shift() -> None:
    # p = 1 is +1 surgery
    for l in range(-3, 4):
        assert rational_shift(1, l) == (l, Fraction(l), 0)

    assert rational_shift(2, 0) == (0, Fraction(1, 4), 1)
    assert rational_shift(2, 1) == (1, Fraction(3, 4), 0)
    assert rational_shift(3, 0) == (0, Fraction(0), 1)
    assert rational_shift(3, 1) == (0, Fraction(1, 3), 2)
    assert rational_shift(3, 2) == (1, Fraction(2, 3), 0)


def test_cone_parameters() -> None:
    params = ConeParameters(2, SurgerySpec())
    assert params.j_offset == 1
    assert params.a_filtration(1, 0, 1) == (0, 1)
    assert params.b_filtration(1, 0) == (0, -1)
    assert params.a_grading_shift(2) == 2
    assert params.b_grading_shift(2) == 1

    # 1/2 surgery gradings stay integral on a trefoil-sized window
    params = ConeParameters(1, SurgerySpec(SurgeryKind.ONE_OVER_P, 2))
    assert [params.a_grading_shift(l) for l in range(-2, 3)] == [2, 0, 0, 0, 2]

    with pytest.raises(ValueError):
        ConeParameters(0, SurgerySpec())


def test_plus_one_cone() -> None:
    assert default_window(TREFOIL, 1, SurgerySpec()) == (0, 1)
    assert default_window(TREFOIL, 2, SurgerySpec()) == (0, 2)
    assert default_window(unknot(), 1, SurgerySpec()) == (1, 1)

    cone = build_cone_plus_one(TREFOIL, 1)
    assert len(cone) == 9
    assert cone.meta.window == (0, 1)
    assert validate_filtered(cone) == []

    # v: identity into B_1
    assert cone.diff[gen_id(Tower.A, 1, "a1")][gen_id(Tower.B, 1, "a1")] == 0

    # h: reflection into B_{l+1} with power r - A
    assert cone.diff[gen_id(Tower.A, 0, "b2")][gen_id(Tower.B, 1, "b1")] == -1

    cone = build_cone_plus_one(TREFOIL, 2)
    assert len(cone) == 15
    assert validate_filtered(cone) == []

    assert gen_id(Tower.A, -1, "a1") == "A-1.a1"


def test_windows() -> None:
    with pytest.raises(WindowError):
        build_cone_plus_one(TREFOIL, 2, a=1)

    with pytest.raises(WindowError):
        build_cone_plus_one(TREFOIL, 2, b=1)

    padded = build_cone(TREFOIL, 2, SurgerySpec(), padding=2)
    assert padded.meta.window == (-2, 4)
    assert validate_filtered(padded) == []

    assert truncated_cone(TREFOIL, 2, 3).meta.window == (-1, 3)


def test_one_over_p_cone() -> None:
    surgery = SurgerySpec(SurgeryKind.ONE_OVER_P, 2)
    assert default_window(TREFOIL, 1, surgery) == (-2, 4)

    cone = build_cone_one_over_p(TREFOIL, 1, 2)
    assert len(cone) == (7 + 6) * 3
    assert validate_filtered(cone) == []

    # p = 1 agrees with +1 surgery
    plus_one = build_cone_plus_one(TREFOIL, 2, -1, 3)
    one_over_one = build_cone_one_over_p(TREFOIL, 2, 1)
    assert one_over_one.gens == plus_one.gens
    assert one_over_one.diff == plus_one.diff

    for p in (2, 3):
        cone = build_cone(staircase_t2(5), 2, SurgerySpec(SurgeryKind.ONE_OVER_P, p))
        assert validate_filtered(cone) == []


def test_middle_tower() -> None:
    cone = build_cone_plus_one(TREFOIL, 2)
    tower = middle_tower(cone)
    assert tower.ids == ["A1.a1", "A1.b1", "A1.b2"]
    assert all(gen.filt_i == 0 for gen in tower.gens)

    with pytest.raises(WindowError):
        middle_tower(build_cone_plus_one(TREFOIL, 1))
