import pytest

from cable_cone.cfk_format import format_cfk, load_cfk, parse_cfk
from cable_cone.coefficients import UVMonomial
from cable_cone.errors import CfkParseError, ComplexValidationError
from cable_cone.knot_complex import find_isomorphism, staircase_t2

TREFOIL_CFK = """# Trefoil
gen a1 -1 -1
gen b1 -2 0
gen b2 0 -2

arrow a1 b2 1 0  # U
arrow a1 b1 0 1
"""


def test_parse() -> None:
    complex_ = parse_cfk(TREFOIL_CFK)
    assert complex_ == staircase_t2(3)

    # Unicode minus signs
    complex_ = parse_cfk(TREFOIL_CFK.replace("-", "−"))
    assert complex_.gen("a1").grading == (-1, -1)

    # Shifted gradings, other names
    shifted = parse_cfk(
        "gen a 0 0\ngen b 1 −1\ngen c −1 1\narrow a b 1 0\narrow a c 0 1"
    )
    assert find_isomorphism(shifted, staircase_t2(3)) == {
        "a": "a1",
        "b": "b2",
        "c": "b1",
    }

    assert len(parse_cfk("")) == 0
    assert len(parse_cfk("# nothing here\n\n")) == 0


def test_format(tmp_path) -> None:
    trefoil = staircase_t2(3)
    text = format_cfk(trefoil)
    assert text.splitlines()[0] == "gen a1 -1 -1"
    assert "arrow a1 b2 1 0" in text

    cfk_path = tmp_path / "trefoil.cfk"
    cfk_path.write_text(text, encoding="utf-8")
    assert load_cfk(cfk_path) == trefoil


def test_parse_errors() -> None:
    bad_texts = [
        "gen a1 -1",
        "gen a1 -1 x",
        "gen a1 0 1",
        "gen a1 0 0\ngen a1 2 2",
        "gen a1 0 0\narrow a1 b1 0 0",
        "gen a1 0 0\ngen b1 -1 -1\narrow a1 b1 -1 0",
        "generator a1 0 0",
    ]
    for text in bad_texts:
        with pytest.raises(CfkParseError):
            parse_cfk(text)

    with pytest.raises(CfkParseError) as err:
        parse_cfk("gen a1 0 0\n\nbogus")

    assert err.value.line_number == 3
    assert str(err.value).startswith("line 3:")


def test_validation() -> None:
    text = "gen x 1 1\ngen y 0 0\narrow x y 1 0\n"
    with pytest.raises(ComplexValidationError) as err:
        parse_cfk(text)

    assert len(err.value.diagnostics) == 1

    # Checks can be skipped
    complex_ = parse_cfk(text, check=False)
    assert list(complex_.arrows()) == [("x", UVMonomial(1, 0), "y")]
