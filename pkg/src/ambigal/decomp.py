"""Closed-form Galois-module decompositions of the ambiguous ideals.

For a valid profile with s breaks and an integer ideal index i, the ideal
of index i decomposes as a direct sum of the indecomposables in
modules.MODULES; the multiplicities are differences of ceilings of
shifted copies of i.  Degrees 2 and 4 have short explicit formulas;
degree 8 is table-driven (tables.py) after classifying the profile into
one of the regimes A..H.

The index i may be any integer.  The formulas are 8*e0-periodic in i;
no reduction is performed here, the periodicity is a verified invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import modules, tables
from .intmath import ceil_div
from .ramification import (EVEN, CaseLabel, RamificationProfile,
                           all_profiles, classify_case, validate_profile)


class NegativeMultiplicity(Exception):
    """A table formula evaluated below zero; carries the offending slot."""

    def __init__(self, case: str, slot: str, formula: str, value: int,
                 profile: RamificationProfile, i: int):
        self.case = case
        self.slot = slot
        self.formula = formula
        self.value = value
        self.profile = profile
        self.i = i
        super().__init__(
            f"case {case} slot {slot}: {formula} = {value} < 0 "
            f"at e0={profile.e0} breaks={profile.breaks} i={i}")


@dataclass(frozen=True)
class CeilingConstants:
    """The fourteen ceilings the degree-8 formula table is written in.

    Plain letters are ceilings of (i - shift)/8, barred letters of
    (i + b3 - shift)/8, for shifts built from 2*b2, 4*b2 and multiples of
    b1; m is the half-gap (b2 - b1)/2.
    """

    a: int
    abar: int
    b: int
    bbar: int
    c: int
    cbar: int
    d: int
    dbar: int
    w: int
    wbar: int
    y: int
    ybar: int
    zbar: int
    m: int

    def env(self, p: RamificationProfile) -> dict[str, int]:
        out = dict(self.__dict__)
        out["e0"] = p.e0
        out["b1"] = p.breaks[0]
        return out


def constants(i: int, p: RamificationProfile) -> CeilingConstants:
    b1, b2, b3 = p.breaks

    def cc(shift: int, barred: bool) -> int:
        return ceil_div(i + (b3 if barred else 0) - shift, 8)

    return CeilingConstants(
        a=cc(2 * b2, False), abar=cc(2 * b2, True),
        b=cc(2 * b2 + 4 * b1, False), bbar=cc(2 * b2 + 4 * b1, True),
        c=cc(4 * b2, False), cbar=cc(4 * b2, True),
        d=cc(4 * b2 + 4 * b1, False), dbar=cc(4 * b2 + 4 * b1, True),
        w=cc(2 * b2 + 2 * b1, False), wbar=cc(2 * b2 + 2 * b1, True),
        y=cc(4 * b2 + 2 * b1, False), ybar=cc(4 * b2 + 2 * b1, True),
        zbar=cc(4 * b2 + 6 * b1, True),
        m=(b2 - b1) // 2,
    )


@dataclass(frozen=True)
class Decomposition:
    profile: RamificationProfile
    i: int
    case: str | None
    mults: dict[str, int]

    def normalized(self) -> dict[str, int]:
        return modules.expand_aliases(self.mults)

    def rank(self) -> int:
        return modules.multiset_rank(self.mults)

    def char(self) -> tuple[int, int, int, int]:
        return modules.multiset_char(self.mults)


def _require_valid(p: RamificationProfile) -> None:
    v = validate_profile(p)
    if not v.ok:
        raise ValueError(f"invalid profile: {v.violations}")


def m1(i: int, p: RamificationProfile) -> Decomposition:
    """Degree-2 decomposition: q copies each of the trivial and sign
    lattices, e0 - q copies of the non-split rank-2 extension."""
    _require_valid(p)
    if p.s != 1 or p.parity != "ODD":
        raise ValueError("m1 needs one odd break")
    b1 = p.breaks[0]
    q = ceil_div(i + b1, 2) - ceil_div(i, 2)
    mults = {name: k for name, k in
             (("R0", q), ("R1", q), ("GR2", p.e0 - q)) if k != 0}
    return Decomposition(p, i, None, mults)


def m2(i: int, p: RamificationProfile) -> Decomposition:
    """Degree-4 decomposition; the branch swaps one rank-4 summand."""
    _require_valid(p)
    if p.s != 2 or p.parity != "ODD":
        raise ValueError("m2 needs two odd breaks")
    e0, (b1, b2) = p.e0, p.breaks
    qa = ceil_div(i + b2, 4) - ceil_div(i + 2 * b1, 4)
    if b2 + 2 * b1 > 4 * e0:
        qb = e0 + ceil_div(i, 4) - ceil_div(i + b2, 4)
        qc = ceil_div(i + b2 + 2 * b1, 4) - e0 - ceil_div(i, 4)
        qd = e0 + ceil_div(i + 2 * b1, 4) - ceil_div(i + b2 + 2 * b1, 4)
        raw = (("I", qa), ("H", qb), ("G", qc), ("L", qd))
    else:
        qb = ceil_div(i + b2 + 2 * b1, 4) - ceil_div(i + b2, 4)
        qc = e0 + ceil_div(i, 4) - ceil_div(i + b2 + 2 * b1, 4)
        qd = ceil_div(i + 2 * b1, 4) - ceil_div(i, 4)
        raw = (("I", qa), ("H", qb), ("M", qc), ("L", qd))
    for name, k in raw:
        if k < 0:
            raise NegativeMultiplicity("degree4", name, "closed form", k, p, i)
    mults = {name: k for name, k in raw if k != 0}
    return Decomposition(p, i, None, mults)


def m3(i: int, p: RamificationProfile) -> Decomposition:
    """Degree-8 decomposition from the window slot model.

    The engine counts window slots and pairs directly (schedule.py);
    the printed formula table evaluates those same counts through
    interior inequalities and is checked against this engine by the
    verification suite.
    """
    from . import schedule

    label = classify_case(p)
    case = label.value
    if case not in tables.MODULE_TABLE:
        raise ValueError(f"no formula table for case {case}")
    mults = schedule.slot_multiset(case, i, p)
    for name, val in mults.items():
        if val < 0:
            raise NegativeMultiplicity(case, name, "window slot model",
                                       val, p, i)
    return Decomposition(p, i, case, mults)


def m3_table(i: int, p: RamificationProfile,
             reading: str = "adopted") -> Decomposition:
    """Degree-8 decomposition by evaluating the linear formula table.

    Valid on the interior of each regime; near some regime boundaries
    the printed linear forms fail (see docs/table-readings.md), so this
    path exists for cross-checking, not as the engine.
    """
    label = classify_case(p)
    case = label.value
    on_line = p.breaks[1] == 3 * p.breaks[0]
    env = constants(i, p).env(p)
    mults: dict[str, int] = {}
    for row in range(1, 11):
        mod = tables.MODULE_TABLE[case][row - 1]
        if mod is None:
            continue
        form = tables.formula_for(case, row, reading, on_line)
        val = tables.evaluate(form, env)
        if val < 0:
            raise NegativeMultiplicity(case, f"row {row} ({mod})", form,
                                       val, p, i)
        if val:
            mults[mod] = mults.get(mod, 0) + val
    form = tables.r3_formula_for(case, reading, on_line)
    r3 = tables.evaluate(form, env)
    if r3 < 0:
        raise NegativeMultiplicity(case, "R3", form, r3, p, i)
    if r3:
        mults["R3"] = mults.get("R3", 0) + r3
    return Decomposition(p, i, case, mults)


def decompose_even(p: RamificationProfile) -> Decomposition:
    """The maximal even-break configuration; independent of the index."""
    _require_valid(p)
    if p.parity != EVEN:
        raise ValueError("decompose_even needs the even configuration")
    e0 = p.e0
    return Decomposition(p, 0, "EVEN_MAX",
                         {"GR2": e0, "R2": e0, "R3": e0})


def decompose(i: int, p: RamificationProfile) -> Decomposition:
    """Dispatch on the number of breaks; even profiles are constant."""
    _require_valid(p)
    if p.parity == EVEN:
        return decompose_even(p)
    if p.s == 0:
        return Decomposition(p, i, None, {"R0": p.e0})
    if p.s == 1:
        return m1(i, p)
    if p.s == 2:
        return m2(i, p)
    return m3(i, p)


@dataclass(frozen=True)
class InducedDecomposition:
    """A decomposition of the inner wild block plus the induction data
    that lifts it to the full extension: tensoring with the group ring
    over the subgroup multiplies the rank by outer_factor, the residue
    extension by f_exp."""

    inner: Decomposition
    n: int
    s: int
    f_exp: int
    outer_factor: int

    def total_rank(self) -> int:
        return self.inner.rank() * self.outer_factor * self.f_exp


def assemble_theorem(i: int, p: RamificationProfile) -> InducedDecomposition:
    _require_valid(p)
    inner = decompose(i, p)
    # The even block already lives at the full degree; odd blocks sit at
    # degree 2**s and are induced up.
    outer = 1 if p.parity == EVEN else 2 ** (p.n - p.s)
    out = InducedDecomposition(inner, p.n, p.s, p.f_exp, outer)
    assert out.total_rank() == 2 ** p.n * p.e0 * p.f_exp
    return out


def realizable_set(n: int, e0_max: int) -> set[str]:
    """Support of every normalized decomposition with s=n, e0 <= e0_max,
    over a full period of indices."""
    if n == 0:
        return {"R0"}
    seen: set[str] = set()
    for p in all_profiles(n, e0_max):
        for i in range(8 * p.e0):
            seen.update(decompose(i, p).normalized())
    return seen
