import pytest

from cable_cone.cfk_format import parse_cfk
from cable_cone.coefficients import RUMonomial, UVMonomial
from cable_cone.errors import PhiMismatchError, StandardizationIncomplete
from cable_cone.knot_complex import (
    KnotComplex,
    KnotGen,
    staircase_t2,
    tensor,
    unknot,
    validate,
)
from cable_cone.local_equiv import (
    PhiTable,
    Side,
    StandardComplexX,
    StandardComplexZ,
    XEdge,
    cancel_unit_arrows,
    local_map_exists,
    phi_from_standard,
    standard_complex_x,
    standard_complex_z,
    standardize_x,
    standardize_z,
    to_uv_presentation,
    verify_local_equiv,
)
from cable_cone.mapping_cone import build_cone_plus_one
from cable_cone.reduction import reduce

TREFOIL = staircase_t2(3)

# Local model for +1 surgery on T(2,11), n=2
MODEL_CFK = """
gen w1 0 2
gen w2 2 0
gen x1 -5 -1
gen y1 -1 -5
gen x2 -3 -5
gen y2 -5 -3
gen z -4 -4
arrow x1 w1 3 2
arrow x2 w1 2 4
arrow x2 w2 3 3
arrow y1 w2 2 3
arrow y2 w1 3 3
arrow y2 w2 4 2
arrow z x2 1 0
arrow z y2 0 1
"""

MODEL_STANDARD = StandardComplexX.from_pairs(
    [
        (-1, (3, 2)),
        (1, (4, 2)),
        (1, (1, 0)),
        (-1, (1, 0)),
        (-1, (4, 2)),
        (1, (3, 2)),
    ]
)


def _reduced_presentation(n: int) -> KnotComplex:
    return to_uv_presentation(reduce(build_cone_plus_one(TREFOIL, n)))


def test_standard_complex_types() -> None:
    with pytest.raises(ValueError):
        StandardComplexZ((1, -1, 2))

    with pytest.raises(ValueError):
        StandardComplexZ((1, 0))

    assert StandardComplexZ((-1, 2, 1, -1, -2, 1)).is_symmetric
    assert not StandardComplexZ((1, 2)).is_symmetric
    assert StandardComplexZ((1, 2)).reversed_negated() == StandardComplexZ((-2, -1))

    with pytest.raises(ValueError):
        XEdge(1, Side.U, -1, 0)

    with pytest.raises(ValueError):
        XEdge(0, Side.U, 1, 0)

    # R_U and R_V edges alternate
    with pytest.raises(ValueError):
        StandardComplexX((XEdge(1, Side.V, 1, 0), XEdge(-1, Side.U, 1, 0)))

    assert str(MODEL_STANDARD) == "(-(3,2),(4,2),(1,0),-(1,0),-(4,2),(3,2))"
    assert MODEL_STANDARD.edges[0].monomial == RUMonomial(3, 2)

    assert MODEL_STANDARD.is_symmetric
    assert MODEL_STANDARD.reversed_negated() == MODEL_STANDARD
    lopsided = StandardComplexX.from_pairs([(1, (1, 0)), (1, (2, 0))])
    assert not lopsided.is_symmetric


def test_phi_table() -> None:
    table = PhiTable({1: 0, 2: -1})
    assert table.values == {2: -1}
    assert table[1] == 0
    assert len(table) == 1
    assert (table + PhiTable({2: 1, 3: 1})) == PhiTable({3: 1})


def test_to_uv_presentation() -> None:
    presentation = _reduced_presentation(1)
    assert validate(presentation) == []
    assert list(presentation.arrows()) == [
        ("A0.b1", UVMonomial(1, 0), "B1.b2"),
        ("A1.b2", UVMonomial(0, 1), "B1.b2"),
    ]


def test_cancel_unit_arrows() -> None:
    gens = [KnotGen("x", 1, 1), KnotGen("y", 0, 0), KnotGen("w", 0, 2)]
    complex_ = KnotComplex.build(
        gens, [("x", UVMonomial(), "y"), ("x", UVMonomial(0, 1), "w")]
    )
    cancelled = cancel_unit_arrows(complex_)
    assert cancelled.names == ["w"]
    assert cancelled.num_arrows == 0


TREFOIL_SEQUENCES = [
    (1, (-1, 1)),
    (2, (-1, 2, 1, -1, -2, 1)),
    (3, (-1, 3, 1, -1, -2, 2, 1, -1, -3, 1)),
    (4, (-1, 4, 1, -1, -2, 3, 1, -1, -3, 2, 1, -1, -4, 1)),
    (5, (-1, 5, 1, -1, -2, 4, 1, -1, -3, 3, 1, -1, -4, 2, 1, -1, -5, 1)),
]


@pytest.mark.parametrize("n,seq", TREFOIL_SEQUENCES)
def test_trefoil_sequence(n: int, seq: tuple) -> None:
    standard = standardize_z(_reduced_presentation(n))
    assert standard.seq == seq
    assert standard.is_symmetric


def test_trefoil_phi() -> None:
    standard = standardize_z(_reduced_presentation(2))
    assert phi_from_standard(standard) == PhiTable({2: -1})
    assert phi_from_standard(standard)[1] == 0

    # Counting V edges gives the same table
    assert phi_from_standard(standard, Side.V) == PhiTable({2: -1})

    # The knot itself
    assert standardize_z(TREFOIL).seq == (1, -1)
    assert standardize_z(unknot()).seq == ()


def test_standard_realization() -> None:
    for seq in ((-1, 1), (-1, 2, 1, -1, -2, 1), (2, -3)):
        realized = standard_complex_z(seq)
        assert len(realized) == len(seq) + 1
        assert validate(realized, mod_uv=True) == []
        assert standardize_z(realized).seq == seq

    # x3 -> U x2 -> U V^2 x1 only vanishes once UV = 0
    realized = standard_complex_z((-1, 2, 1, -1, -2, 1))
    assert "d^2(x3) contains UV^2 x1" in validate(realized)

    realized_x = standard_complex_x(MODEL_STANDARD)
    assert len(realized_x.gens) == 7
    assert standardize_x(realized_x) == MODEL_STANDARD


def test_model_standard_form() -> None:
    model = parse_cfk(MODEL_CFK)
    standard = standardize_x(model)
    assert standard == MODEL_STANDARD
    assert standard.start_grading == (-5, -1)

    phi_x = phi_from_standard(standard)
    assert phi_x == PhiTable({(3, 2): -1, (4, 2): -1, (1, 0): 1})
    assert phi_from_standard(standard, Side.V) == phi_x


def test_phi_mismatch() -> None:
    # R_U gives {(1,0): 1}, R_V gives {(2,0): -1}
    lopsided = StandardComplexX.from_pairs([(1, (1, 0)), (1, (2, 0))])
    with pytest.raises(PhiMismatchError):
        phi_from_standard(lopsided)

    assert phi_from_standard(lopsided, Side.V) == PhiTable({(2, 0): -1})


def test_trefoil_x() -> None:
    standard = standardize_x(TREFOIL)
    assert standard.pairs() == [(1, (1, 0)), (-1, (1, 0))]
    assert phi_from_standard(standard) == PhiTable({(1, 0): 1})

    # Tensor products add
    assert phi_from_standard(standardize_x(tensor(TREFOIL, unknot()))) == PhiTable(
        {(1, 0): 1}
    )
    assert phi_from_standard(standardize_x(tensor(TREFOIL, TREFOIL))) == PhiTable(
        {(1, 0): 2}
    )


def test_standardization_limit() -> None:
    with pytest.raises(StandardizationIncomplete) as err:
        standardize_z(_reduced_presentation(1), max_passes=0)

    assert set(err.value.partial) == {"U", "V"}


def test_local_equivalence() -> None:
    # Trefoil is not locally trivial, but maps to the unknot
    assert local_map_exists(TREFOIL, unknot())
    assert not local_map_exists(unknot(), TREFOIL)
    assert not verify_local_equiv(TREFOIL, unknot())

    assert verify_local_equiv(TREFOIL, TREFOIL)

    for n in (1, 2):
        presentation = _reduced_presentation(n)
        standard = standardize_z(presentation)
        assert verify_local_equiv(presentation, standard_complex_z(standard))
