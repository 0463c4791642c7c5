"""Literal transcription of the degree-8 multiplicity tables.

The case table lists, for each regime A..H, up to ten module slots in a
fixed positional order; the companion formula table gives each slot's
multiplicity as an integer linear expression in the ceiling constants
(a, abar, ..., zbar), the unit e0, the first break b1, and the derived
constant m = (b2 - b1) / 2.

Both tables are transcribed once, verbatim, as data.  Four printed
entries fail the rank and character accounting identities that every
column must satisfy; ADOPTED_FORMULAS records the corrected readings
actually used by the engine, and docs/table-readings.md records the
evidence.  The verification command re-derives the verdict for every
entry against a brute-force window oracle.
"""

from __future__ import annotations

import re

SYMBOLS = ("a", "abar", "b", "bbar", "c", "cbar", "d", "dbar",
           "w", "wbar", "y", "ybar", "zbar", "m", "e0", "b1")

def parse_linear(expr: str) -> dict[str, int]:
    """Parse 'abar - d - 2*e0' into {'abar': 1, 'd': -1, 'e0': -2}.

    Bare integers are allowed and collected under the key '1'.
    """
    out: dict[str, int] = {}
    for tok in expr.replace("-", "+-").split("+"):
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:].strip()
        if "*" in tok:
            k_str, sym = (part.strip() for part in tok.split("*", 1))
            coeff = int(k_str)
        elif re.fullmatch(r"\d+", tok):
            out["1"] = out.get("1", 0) + sign * int(tok)
            continue
        else:
            coeff, sym = 1, tok
        if sym not in SYMBOLS:
            raise ValueError(f"unknown symbol {sym!r} in {expr!r}")
        out[sym] = out.get(sym, 0) + sign * coeff
    return out


def evaluate(expr: str, env: dict[str, int]) -> int:
    total = 0
    for sym, coeff in parse_linear(expr).items():
        total += coeff if sym == "1" else coeff * env[sym]
    return total


# Module slots per case, positional rows 1..10.  None marks a slot the
# case does not use.  Row order matches the formula table below.
MODULE_TABLE: dict[str, list[str | None]] = {
    #        r1     r2     r3     r4    r5     r6    r7    r8    r9    r10
    "A": ["H",   None,  None,  "H2",  "M",   "M1", "L",  "L3", "I",  "I2"],
    "B": ["H",   None,  None,  "H2",  "H12", "M1", "L",  "L3", "I",  "I2"],
    "C": ["H",   "H1L", None,  "H1",  "H12", "G4", "L",  "L3", "I",  "I2"],
    "D": ["H",   "H1L", "H1G", "H1",  "H12", "G4", "L",  "L3", "L2", "I2"],
    "E": ["I1",  "H1L", None,  "H1",  "G",   "G4", "G3", "L3", "I",  "I2"],
    "F": ["I1",  "H1L", "H1G", "H1",  "G",   "G4", "G3", "L3", "L2", "I2"],
    "G": ["I1",  None,  None,  "H1",  "G",   "G4", "G3", "G2", "L2", "L1"],
    "H": ["I1",  None,  None,  "H1",  "G",   "G4", "G3", "G2", "G1", "L1"],
}

# Multiplicity formulas exactly as printed, same layout as MODULE_TABLE.
PRINTED_FORMULAS: dict[str, list[str | None]] = {
    "A": ["dbar - b", None, None, "d + e0 - dbar", "abar - d - 2*e0",
          "a + e0 - abar", "cbar - a", "c + e0 - cbar", "bbar - c - e0",
          "b - bbar + e0"],
    "B": ["dbar - b", None, None, "abar - dbar - e0", "d + 2*e0 - abar",
          "a - d - e0", "cbar - a", "c + e0 - cbar", "bbar - c - e0",
          "b - bbar + e0"],
    "C": ["abar - b - e0", "w + e0 - abar", None, "dbar - w", "a - dbar",
          "d + e0 - a", "cbar - d - e0", "zbar + b1 - cbar",
          "bbar - c - e0", "b - bbar + e0"],
    "D": ["abar - b - e0", "ybar + m - abar", "d - ybar + e0",
          "dbar - d - m", "a - dbar", "wbar - m - a", "cbar - d - e0",
          "zbar + b1 - cbar", "c + e0 - bbar", "b - c"],
    "E": ["b + e0 - abar", "w - b", None, "a - w", "dbar - a",
          "cbar - dbar", "d + e0 - cbar", "y - d", "bbar - c - e0",
          "abar - bbar"],
    "F": ["b + e0 - abar", "ybar + m - e0 - b", "cbar - ybar",
          "a + e0 - cbar - m", "dbar - a", "ybar - dbar", "d + e0 - cbar",
          "y + e0 - d", "c + e0 - bbar", "abar - c - e0"],
    "G": ["b - c", None, None, "a - b", "dbar - a", "cbar - dbar",
          "bbar - cbar", "d + e0 - bbar", "d + e0 - bbar", "c + e0 - abar"],
    "H": ["b - c", None, None, "a - b", "dbar - a", "cbar - dbar",
          "bbar - cbar", "abar - bbar", "d + e0 - abar", "c - d"],
}

# Printed multiplicity of the rank-4 irreducible (the f factor is applied
# at assembly time, not here).
PRINTED_R3: dict[str, str] = {
    "A": "abar + bbar + cbar + dbar - a - b - c - d - 3*e0",
    "B": "abar + bbar + cbar + dbar - a - b - c - d - 3*e0",
    "C": "abar + bbar + cbar + dbar - a - b - d - 2*e0 - zbar - b1",
    "D": "abar + bbar + cbar + dbar - a - b - e0 + m - wbar - zbar - b1",
    "E": "bbar + dbar - a - y - e0",
    "F": "bbar + dbar + cbar - a - y - ybar - e0",
    "G": "dbar - a",
    "H": "dbar - a",
}

# Corrected readings for the printed entries that fail the accounting
# identities, keyed by (case, row).  Everything not listed here is used
# exactly as printed.
ADOPTED_FORMULAS: dict[tuple[str, int], str] = {
    # D row 6 (G4): printed entry goes negative and breaks the rank sum.
    ("D", 6): "ybar - a",
    # F row 8 (L3): printed entry overcounts by e0 against the rank sum.
    ("F", 8): "y - d",
    # G row 9 (L2): printed entry duplicates row 8; the window count is
    # the independent expression below.
    ("G", 9): "abar - d - e0",
}

ADOPTED_R3: dict[str, str] = {
    # D: the printed form needs wbar + zbar + b1 = abar + bbar, which is
    # not an identity; the window accounting gives this form.
    "D": "cbar + dbar - a - b + m - e0",
}

# On the boundary b2 = 3*b1 (where m = b1) the pairing in case F
# degenerates: no twelve-rank H1L summands form and the H1G partners come
# from the fourth window at offset e0 - b1.  Case D degenerates to the
# adopted generic column on that line; case F does not, and needs the
# specialized readings below.  Cases C and E cannot reach the line.
F_LINE_FORMULAS: dict[int, str] = {
    2: "0",
    3: "cbar + m - e0 - b",
    6: "b + e0 - dbar - m",
    8: "bbar - d - e0",
}
F_LINE_R3 = "cbar + dbar + m - a - b - e0"


def formula_for(case: str, row: int, reading: str = "adopted",
                on_line: bool = False) -> str | None:
    """Row multiplicity formula, 1-based row in 1..10.

    on_line marks profiles with b2 = 3*b1; it only changes case F under
    the adopted reading.
    """
    printed = PRINTED_FORMULAS[case][row - 1]
    if printed is None:
        return None
    if reading == "printed":
        return printed
    if on_line and case == "F" and row in F_LINE_FORMULAS:
        return F_LINE_FORMULAS[row]
    return ADOPTED_FORMULAS.get((case, row), printed)


def r3_formula_for(case: str, reading: str = "adopted",
                   on_line: bool = False) -> str:
    if reading == "printed":
        return PRINTED_R3[case]
    if on_line and case == "F":
        return F_LINE_R3
    return ADOPTED_R3.get(case, PRINTED_R3[case])


def _check_tables() -> None:
    from . import modules

    for case in MODULE_TABLE:
        mods = MODULE_TABLE[case]
        forms = PRINTED_FORMULAS[case]
        assert len(mods) == len(forms) == 10
        for mod, form in zip(mods, forms):
            assert (mod is None) == (form is None)
            if mod is not None:
                assert mod in modules.MODULES or mod in modules.ALIASES
            if form is not None:
                parse_linear(form)
        parse_linear(PRINTED_R3[case])
    for (case, row), form in ADOPTED_FORMULAS.items():
        assert MODULE_TABLE[case][row - 1] is not None
        parse_linear(form)
    for case in ADOPTED_R3:
        parse_linear(ADOPTED_R3[case])
    for row, form in F_LINE_FORMULAS.items():
        assert MODULE_TABLE["F"][row - 1] is not None
        parse_linear(form)
    parse_linear(F_LINE_R3)


_check_tables()
