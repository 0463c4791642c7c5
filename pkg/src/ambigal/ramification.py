"""Ramification profiles of cyclic 2-adic extensions of degree up to 8.

A profile records the degree exponent n of the extension, the absolute
ramification index e0 of the base field, the number s of distinct
ramification breaks (the wildly ramified part has order 2**s), the break
numbers themselves, and a residue-degree exponent f_exp.

The break numbers of a totally wildly ramified cyclic extension of degree
8 are constrained to a narrow lattice of congruence conditions; this
module validates membership, enumerates all admissible break tuples for a
given e0, and classifies valid triples into the eight inequality regimes
A..H that drive the decomposition tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ODD = "ODD"
EVEN = "EVEN"

CASE_NAMES = ("A", "B", "C", "D", "E", "F", "G", "H")
EVEN_MAX = "EVEN_MAX"


class BoundaryHit(Exception):
    """A case comparison landed exactly on a boundary.

    The admissibility congruences force every classifying comparison to be
    strict (each compares an odd number with an even one), so this firing
    means the input was not validated.
    """


@dataclass(frozen=True)
class RamificationProfile:
    n: int
    e0: int
    s: int
    breaks: tuple[int, ...]
    f_exp: int = 1

    @property
    def parity(self) -> str:
        # Parity of the first break decides which arm of the theory
        # applies; with no breaks the odd (generic) arm is used.
        if self.s == 0:
            return ODD
        return ODD if self.breaks[0] % 2 == 1 else EVEN

    @property
    def b1(self) -> int:
        return self.breaks[0]

    @property
    def b2(self) -> int:
        return self.breaks[1]

    @property
    def b3(self) -> int:
        return self.breaks[2]

    @property
    def stable(self) -> bool:
        return self.s >= 1 and self.breaks[0] >= self.e0


def make_profile(e0: int, breaks: tuple[int, ...], *, n: int | None = None,
                 f_exp: int = 1) -> RamificationProfile:
    """Convenience constructor; n defaults to the number of breaks."""
    breaks = tuple(breaks)
    s = len(breaks)
    return RamificationProfile(n=s if n is None else n, e0=e0, s=s,
                               breaks=breaks, f_exp=f_exp)


@dataclass
class ValidationResult:
    ok: bool
    violations: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class CaseLabel:
    value: str
    stable: bool


def _validate_odd_breaks(e0: int, breaks: tuple[int, ...], errs: list[str]) -> None:
    s = len(breaks)
    b1 = breaks[0]
    if b1 % 2 == 0:
        errs.append(f"b1={b1} must be odd")
        return
    if not (1 <= b1 <= 2 * e0 - 1):
        errs.append(f"b1={b1} outside [1, {2 * e0 - 1}]")
    if s < 2:
        return
    b2 = breaks[1]
    if b1 >= e0:
        if b2 != b1 + 2 * e0:
            errs.append(f"b1={b1} >= e0 forces b2={b1 + 2 * e0}, got {b2}")
    else:
        lo, hi = 3 * b1, 4 * e0 - b1
        if b2 % 2 == 0:
            errs.append(f"b2={b2} must be odd")
        elif not (lo <= b2 <= hi):
            errs.append(f"b2={b2} outside [{lo}, {hi}]")
        elif b2 not in (lo, hi) and b2 % 4 != b1 % 4:
            errs.append(f"b2={b2} must be {lo}, {hi}, or congruent to b1 mod 4")
    if s < 3:
        return
    b3 = breaks[2]
    if b1 + b2 >= 2 * e0:
        if b3 != b2 + 4 * e0:
            errs.append(f"b1+b2 >= 2*e0 forces b3={b2 + 4 * e0}, got {b3}")
    else:
        lo, hi = 3 * b2 + 2 * b1, 8 * e0 - b2 - 2 * b1
        if b3 % 2 == 0:
            errs.append(f"b3={b3} must be odd")
        elif not (lo <= b3 <= hi):
            errs.append(f"b3={b3} outside [{lo}, {hi}]")
        elif b3 not in (lo, hi) and b3 % 8 != (2 * b1 - b2) % 8:
            errs.append(
                f"b3={b3} must be {lo}, {hi}, or congruent to 2*b1-b2 mod 8")


def validate_profile(p: RamificationProfile) -> ValidationResult:
    errs: list[str] = []
    if p.n not in (0, 1, 2, 3):
        errs.append(f"n={p.n} outside 0..3")
    if p.e0 < 1:
        errs.append(f"e0={p.e0} must be >= 1")
    if p.f_exp < 1:
        errs.append(f"f_exp={p.f_exp} must be >= 1")
    if p.n in (0, 1, 2, 3) and not (0 <= p.s <= p.n):
        errs.append(f"s={p.s} outside 0..n={p.n}")
    if len(p.breaks) != p.s:
        errs.append(f"breaks has {len(p.breaks)} entries, s={p.s}")
    if errs:
        return ValidationResult(False, errs)
    if any(b <= 0 for b in p.breaks):
        errs.append("breaks must be positive")
    if any(x >= y for x, y in zip(p.breaks, p.breaks[1:])):
        errs.append("breaks must be strictly increasing")
    if errs:
        return ValidationResult(False, errs)
    if p.s == 0:
        return ValidationResult(True, [])
    if p.parity == EVEN:
        # The only supported even-break configuration is the maximal one:
        # degree 8, two breaks 2*e0 < 4*e0 (middle jump of order 4).
        if (p.n, p.s) == (3, 2) and p.breaks == (2 * p.e0, 4 * p.e0):
            return ValidationResult(True, [])
        errs.append("UNSUPPORTED_EVEN: even breaks are supported only as "
                    "(n=3, s=2, breaks=(2*e0, 4*e0))")
        return ValidationResult(False, errs)
    _validate_odd_breaks(p.e0, p.breaks, errs)
    return ValidationResult(len(errs) == 0, errs)


def enumerate_breaks(e0: int, s: int) -> list[tuple[int, ...]]:
    """All admissible odd-parity break tuples for this e0, lexicographic."""
    if s not in (1, 2, 3):
        raise ValueError("s must be 1, 2, or 3")
    singles = [(b1,) for b1 in range(1, 2 * e0, 2)]
    if s == 1:
        return singles
    pairs: list[tuple[int, ...]] = []
    for (b1,) in singles:
        if b1 >= e0:
            pairs.append((b1, b1 + 2 * e0))
            continue
        lo, hi = 3 * b1, 4 * e0 - b1
        seen = {lo, hi}
        seen.update(b2 for b2 in range(lo + 1, hi) if b2 % 4 == b1 % 4)
        pairs.extend((b1, b2) for b2 in sorted(seen))
    if s == 2:
        return pairs
    triples: list[tuple[int, ...]] = []
    for b1, b2 in pairs:
        if b1 + b2 >= 2 * e0:
            triples.append((b1, b2, b2 + 4 * e0))
            continue
        lo, hi = 3 * b2 + 2 * b1, 8 * e0 - b2 - 2 * b1
        seen = {lo, hi}
        seen.update(b3 for b3 in range(lo + 1, hi)
                    if b3 % 8 == (2 * b1 - b2) % 8)
        triples.extend((b1, b2, b3) for b3 in sorted(seen))
    return triples


def _strict(lhs: int, rhs: int) -> bool:
    # Every classifying comparison is parity-split; equality means the
    # profile escaped validation.
    if lhs == rhs:
        raise BoundaryHit(f"comparison {lhs} vs {rhs} hit a boundary")
    return lhs > rhs


def classify_case(p: RamificationProfile) -> CaseLabel:
    """Assign a valid profile its decomposition regime.

    Odd three-break profiles land in A..H; the supported even profile is
    its own regime.  Stability (b1 >= e0) always lands in A.
    """
    v = validate_profile(p)
    if not v.ok:
        raise ValueError(f"invalid profile: {v.violations}")
    if p.parity == EVEN:
        return CaseLabel(EVEN_MAX, False)
    if p.s != 3:
        raise ValueError("classification needs three breaks")
    e0, (b1, b2, b3) = p.e0, p.breaks
    if _strict(3 * b2, 12 * e0 - 4 * b1):
        value = "A"
    elif _strict(b2, 4 * e0 - 2 * b1):
        value = "B"
    elif _strict(b2, 4 * e0 - 4 * b1) and _strict(3 * b2, 4 * e0 + 4 * b1):
        value = "C"
    elif b2 > 4 * e0 - 4 * b1:
        value = "D"
    elif _strict(b3, 8 * e0 + 4 * b1 - 2 * b2):
        value = "E"
    elif _strict(b3, 8 * e0 - 2 * b2):
        value = "F"
    elif _strict(b3, 8 * e0 - 4 * b1 - 2 * b2):
        value = "G"
    else:
        value = "H"
    label = CaseLabel(value, p.stable)
    assert not (label.stable and value != "A")
    return label


def all_profiles(n: int, e0_max: int, f_exp: int = 1):
    """Yield every valid odd profile with s=n and e0 <= e0_max."""
    if n == 0:
        for e0 in range(1, e0_max + 1):
            yield RamificationProfile(0, e0, 0, (), f_exp)
        return
    for e0 in range(1, e0_max + 1):
        for breaks in enumerate_breaks(e0, n):
            yield RamificationProfile(n, e0, n, breaks, f_exp)
