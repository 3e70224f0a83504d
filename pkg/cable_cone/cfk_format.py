"""Plain text format for knot complexes.

    # comment
    gen <name> <gr_u> <gr_v>
    arrow <from> <to> <u_exp> <v_exp>
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Tuple, Union

from .coefficients import UVMonomial
from .errors import CfkParseError, ComplexValidationError
from .knot_complex import KnotComplex, KnotGen, validate

_LOGGER = logging.getLogger(__name__)

_INT = re.compile(r"^[+-]?\d+$")
_NAME = re.compile(r"^[^\s#]+$")
_MINUS_SIGNS = str.maketrans({"−": "-", "–": "-"})


def _parse_int(text: str, what: str, line_number: int) -> int:
    text = text.translate(_MINUS_SIGNS)
    if not _INT.match(text):
        raise CfkParseError(f"{what} is not an integer: {text!r}", line_number)

    return int(text)


def parse_cfk(text: str, check: bool = True) -> KnotComplex:
    """Parse a knot complex, raising CfkParseError or ComplexValidationError."""
    gens: List[KnotGen] = []
    gen_names: Dict[str, int] = {}
    arrows: List[Tuple[str, UVMonomial, str]] = []

    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", maxsplit=1)[0].strip()
        if not line:
            continue

        parts = line.split()
        keyword = parts[0]
        if keyword == "gen":
            if len(parts) != 4:
                raise CfkParseError(
                    "Expected: gen <name> <gr_u> <gr_v>", line_number
                )

            name = parts[1]
            if not _NAME.match(name):
                raise CfkParseError(f"Invalid generator name: {name!r}", line_number)

            if name in gen_names:
                raise CfkParseError(
                    f"Duplicate generator {name!r} (first on line {gen_names[name]})",
                    line_number,
                )

            gr_u = _parse_int(parts[2], "gr_u", line_number)
            gr_v = _parse_int(parts[3], "gr_v", line_number)
            try:
                gens.append(KnotGen(name, gr_u, gr_v))
            except ValueError as err:
                raise CfkParseError(str(err), line_number) from err

            gen_names[name] = line_number
        elif keyword == "arrow":
            if len(parts) != 5:
                raise CfkParseError(
                    "Expected: arrow <from> <to> <u_exp> <v_exp>", line_number
                )

            source, target = parts[1], parts[2]
            for name in (source, target):
                if name not in gen_names:
                    raise CfkParseError(f"Unknown generator: {name!r}", line_number)

            u_exp = _parse_int(parts[3], "u_exp", line_number)
            v_exp = _parse_int(parts[4], "v_exp", line_number)
            if (u_exp < 0) or (v_exp < 0):
                raise CfkParseError("Exponents must be nonnegative", line_number)

            arrows.append((source, UVMonomial(u_exp, v_exp), target))
        else:
            raise CfkParseError(f"Unknown keyword: {keyword!r}", line_number)

    complex_ = KnotComplex.build(gens, arrows)
    _LOGGER.debug(
        "Parsed complex with %s generator(s) and %s arrow(s)",
        len(complex_),
        complex_.num_arrows,
    )

    if check:
        diagnostics = validate(complex_)
        if diagnostics:
            raise ComplexValidationError(diagnostics)

    return complex_


def load_cfk(path: Union[str, Path], check: bool = True) -> KnotComplex:
    with open(path, "r", encoding="utf-8") as cfk_file:
        return parse_cfk(cfk_file.read(), check=check)


def format_cfk(complex_: KnotComplex) -> str:
    """Write a complex in the text format (ASCII minus signs only)."""
    lines: List[str] = []
    for gen in complex_.gens:
        lines.append(f"gen {gen.name} {gen.gr_u} {gen.gr_v}")

    for source, mono, target in complex_.arrows():
        lines.append(f"arrow {source} {target} {mono.u_exp} {mono.v_exp}")

    return "\n".join(lines) + "\n"
