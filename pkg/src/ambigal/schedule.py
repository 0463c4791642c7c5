"""Valuation schedules behind the degree-8 decomposition.

The proof machinery filters a rank-8*e0 lattice by valuation.  Basis
elements come in four families per scaling level; each family member is
indexed by an integer m and has valuation offset + 8*m, with barred
variants shifted down by b3 and doublings up by 8*e0.  For each regime
A..H there are eight cyclic views of the eight families; view r owns the
window of m-indices whose first element enters at valuation >= i while
its last element stays below i + 8*e0.  The eight windows tile an
m-interval of total length e0, one module per slot, with paired slots in
regimes C..F merging into rank-12 hybrids.

This module holds the family data, the view schedules, the closed-form
windows with a brute-force companion, the pairing counts, and the
slot-model multiset the decomposition engine consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import modules, tables
from .intmath import ceil_div, floor_div
from .ramification import RamificationProfile

ALPHA = "ALPHA"   # alpha: the filtered generator family
S2A = "S2A"       # (sigma^2 + 1) alpha
SS2A = "SS2A"     # (sigma + 1)(sigma^2 + 1) alpha
RHO = "RHO"       # rho: (sigma + 1) alpha plus its lower-order tail

FAMILY_ORDER = (ALPHA, S2A, SS2A, RHO)


class OrderViolation(Exception):
    """A schedule chain failed to increase strictly; names the arrow."""


@dataclass(frozen=True)
class Element:
    """One basis element family: 2**k times a plain or barred member."""

    family: str
    barred: bool = False
    k: int = 0

    def label(self) -> str:
        prefix = {-1: "h", 0: "", 1: "2", 2: "4"}[self.k]
        return f"{prefix}{_FAMILY_LETTER[self.family]}{'~' if self.barred else ''}"


_FAMILY_LETTER = {ALPHA: "A", S2A: "S", SS2A: "T", RHO: "R"}
_LETTER_FAMILY = {v: k for k, v in _FAMILY_LETTER.items()}


def parse_element(token: str) -> Element:
    k = 0
    if token[0] in "24h":
        k = {"2": 1, "4": 2, "h": -1}[token[0]]
        token = token[1:]
    barred = token.endswith("~")
    if barred:
        token = token[:-1]
    return Element(_LETTER_FAMILY[token], barred, k)


def base_offset(family: str, p: RamificationProfile, generic: bool = False) -> int:
    """Valuation of the plain, unscaled family member at m = 0.

    The rho family drops by 6*b1 - 2*b2 when b2 = 4*e0 - b1; the window
    machinery deliberately uses the generic value, which keeps the same
    residue mod 8 and the same printed tables.
    """
    b1, b2 = p.breaks[0], p.breaks[1]
    if family == ALPHA:
        return 2 * b2
    if family == S2A:
        return 4 * b2
    if family == SS2A:
        return 4 * b2 + 4 * b1
    if family == RHO:
        if not generic and b2 == 4 * p.e0 - b1:
            return 2 * (2 * b2 - b1)
        return 2 * b2 + 4 * b1
    raise ValueError(f"unknown family {family!r}")


def family_valuation(el: Element, m: int, p: RamificationProfile,
                     generic: bool = False) -> int:
    v = base_offset(el.family, p, generic) + 8 * m + 8 * p.e0 * el.k
    if el.barred:
        v -= p.breaks[2]
    return v


def _rows(spec: str) -> list[list[Element]]:
    return [[parse_element(tok) for tok in line.split()]
            for line in spec.strip().splitlines()]


# The eight views per regime, one line per view, eight elements each.
# View r >= 2 is view r-1 shifted by one valuation slot; the element
# entering the view is listed first, the one leaving is dropped.
CASE_ROWS: dict[str, list[list[Element]]] = {
    "A": _rows("""
        R 2R~ S 2S~ 2A 4A~ T 2T~
        T~ R 2R~ S 2S~ 2A 4A~ T
        hT T~ R 2R~ S 2S~ 2A 4A~
        2A~ hT T~ R 2R~ S 2S~ 2A
        A 2A~ hT T~ R 2R~ S 2S~
        S~ A 2A~ hT T~ R 2R~ S
        hS S~ A 2A~ hT T~ R 2R~
        R~ hS S~ A 2A~ hT T~ R
    """),
    "B": _rows("""
        R 2R~ S 2S~ 2A T 4A~ 2T~
        T~ R 2R~ S 2S~ 2A T 4A~
        2A~ T~ R 2R~ S 2S~ 2A T
        hT 2A~ T~ R 2R~ S 2S~ 2A
        A hT 2A~ T~ R 2R~ S 2S~
        S~ A hT 2A~ T~ R 2R~ S
        hS S~ A hT 2A~ T~ R 2R~
        R~ hS S~ A hT 2A~ T~ R
    """),
    "C": _rows("""
        R 2R~ S 2S~ T 2A 2T~ 4A~
        2A~ R 2R~ S 2S~ T 2A 2T~
        T~ 2A~ R 2R~ S 2S~ T 2A
        A T~ 2A~ R 2R~ S 2S~ T
        hT A T~ 2A~ R 2R~ S 2S~
        S~ hT A T~ 2A~ R 2R~ S
        hS S~ hT A T~ 2A~ R 2R~
        R~ hS S~ hT A T~ 2A~ R
    """),
    "D": _rows("""
        R S 2R~ 2S~ T 2A 2T~ 4A~
        2A~ R S 2R~ 2S~ T 2A 2T~
        T~ 2A~ R S 2R~ 2S~ T 2A
        A T~ 2A~ R S 2R~ 2S~ T
        hT A T~ 2A~ R S 2R~ 2S~
        S~ hT A T~ 2A~ R S 2R~
        R~ S~ hT A T~ 2A~ R S
        hS R~ S~ hT A T~ 2A~ R
    """),
    "E": _rows("""
        2A~ 2R~ S T 2S~ 2T~ 2A 2R
        R 2A~ 2R~ S T 2S~ 2T~ 2A
        A R 2A~ 2R~ S T 2S~ 2T~
        T~ A R 2A~ 2R~ S T 2S~
        S~ T~ A R 2A~ 2R~ S T
        hT S~ T~ A R 2A~ 2R~ S
        hS hT S~ T~ A R 2A~ 2R~
        R~ hS hT S~ T~ A R 2A~
    """),
    "F": _rows("""
        2A~ S 2R~ T 2S~ 2T~ 2A 2R
        R 2A~ S 2R~ T 2S~ 2T~ 2A
        A R 2A~ S 2R~ T 2S~ 2T~
        T~ A R 2A~ S 2R~ T 2S~
        S~ T~ A R 2A~ S 2R~ T
        hT S~ T~ A R 2A~ S 2R~
        R~ hT S~ T~ A R 2A~ S
        hS R~ hT S~ T~ A R 2A~
    """),
    "G": _rows("""
        S 2A~ T 2R~ 2S~ 2T~ 2A 2R
        R S 2A~ T 2R~ 2S~ 2T~ 2A
        A R S 2A~ T 2R~ 2S~ 2T~
        T~ A R S 2A~ T 2R~ 2S~
        S~ T~ A R S 2A~ T 2R~
        R~ S~ T~ A R S 2A~ T
        hT R~ S~ T~ A R S 2A~
        A~ hT R~ S~ T~ A R S
    """),
    "H": _rows("""
        S T 2A~ 2R~ 2S~ 2T~ 2A 2R
        R S T 2A~ 2R~ 2S~ 2T~ 2A
        A R S T 2A~ 2R~ 2S~ 2T~
        T~ A R S T 2A~ 2R~ 2S~
        S~ T~ A R S T 2A~ 2R~
        R~ S~ T~ A R S T 2A~
        A~ R~ S~ T~ A R S T
        hT A~ R~ S~ T~ A R S
    """),
}

# The valuation chain per regime: nine consecutive elements starting at
# rho and closing one octave up at 2*rho, with the inequality label that
# justifies each of the eight strict steps.  For E and F the labels
# differ between the forced and free third-break sub-regions.
CASE_CHAIN: dict[str, tuple[list[str], list[str]]] = {
    "A": ("R 2R~ S 2S~ 2A 4A~ T 2T~ 2R".split(),
          ["1", "2", "1", "1", "1", "6", "1", "4"]),
    "B": ("R 2R~ S 2S~ 2A T 4A~ 2T~ 2R".split(),
          ["1", "2", "1", "4", "5", "6'", "5", "4"]),
    "C": ("R 2R~ S 2S~ T 2A 2T~ 4A~ 2R".split(),
          ["1", "2", "1", "7", "5'", "7", "5'", "7"]),
    "D": ("R S 2R~ 2S~ T 2A 2T~ 4A~ 2R".split(),
          ["9", "2'", "9", "7", "5'", "7", "5'", "7"]),
    "E": ("R 2A~ 2R~ S T 2S~ 2T~ 2A 2R".split(),
          ["7'/11", "8/8", "2/13", "8/8", "7'/11", "8/8", "7'/14", "8/8"]),
    "F": ("R 2A~ S 2R~ T 2S~ 2T~ 2A 2R".split(),
          ["7'/11", "10/12", "2'/13'", "10/12", "7'/11", "8/8",
           "7'/14", "8/8"]),
    "G": ("R S 2A~ T 2R~ 2S~ 2T~ 2A 2R".split(),
          ["9", "12'", "15", "12'", "9", "8", "14", "8"]),
    "H": ("R S T 2A~ 2R~ 2S~ 2T~ 2A 2R".split(),
          ["9", "8", "15'", "8", "9", "8", "14", "8"]),
}


def case_ordering(case: str, p: RamificationProfile) -> list[tuple[str, int]]:
    """Evaluate the chain with true valuations; raise on any non-strict
    step, naming the arrow and its justifying inequality."""
    toks, labels = CASE_CHAIN[case]
    vals = [(t, family_valuation(parse_element(t), 0, p)) for t in toks]
    for idx in range(8):
        (t1, v1), (t2, v2) = vals[idx], vals[idx + 1]
        if not v1 < v2:
            raise OrderViolation(
                f"case {case} arrow {idx + 1} (inequality {labels[idx]}): "
                f"{t1}={v1} not below {t2}={v2} at e0={p.e0} "
                f"breaks={p.breaks}")
    return vals


def residue_cover(p: RamificationProfile) -> dict[str, list[int]]:
    """Residues mod 8 of the four plain and four barred base offsets.

    For a valid odd triple the plain residues are the evens and the
    barred residues the odds, so together they cover 0..7.
    """
    plain = [base_offset(f, p) % 8 for f in FAMILY_ORDER]
    barred = [(base_offset(f, p) - p.breaks[2]) % 8 for f in FAMILY_ORDER]
    cover = {"plain": plain, "barred": barred}
    assert sorted(plain + barred) == list(range(8)), cover
    return cover


def row_window(case: str, row: int, i: int, p: RamificationProfile
               ) -> tuple[int, int]:
    """Inclusive window [m_lo, m_hi] of view `row` (1-based); empty when
    m_lo > m_hi.  Uses generic offsets throughout."""
    view = CASE_ROWS[case][row - 1]
    first, last = view[0], view[-1]
    off_first = (base_offset(first.family, p, generic=True)
                 + 8 * p.e0 * first.k - (p.breaks[2] if first.barred else 0))
    off_last = (base_offset(last.family, p, generic=True)
                + 8 * p.e0 * last.k - (p.breaks[2] if last.barred else 0))
    m_lo = ceil_div(i - off_first, 8)
    m_hi = ceil_div(i + 8 * p.e0 - off_last, 8) - 1
    return m_lo, m_hi


def row_count(case: str, row: int, i: int, p: RamificationProfile) -> int:
    m_lo, m_hi = row_window(case, row, i, p)
    return max(0, m_hi - m_lo + 1)


def brute_force_row_count(case: str, row: int, i: int,
                          p: RamificationProfile) -> int:
    """Count window members by direct valuation checks over a padded
    range; the companion closed form must agree."""
    view = CASE_ROWS[case][row - 1]
    first, last = view[0], view[-1]
    offsets = [family_valuation(el, 0, p, generic=True)
               for vrow in CASE_ROWS[case] for el in vrow]
    lo = floor_div(i - max(offsets), 8) - 2
    hi = ceil_div(i + 8 * p.e0 - min(offsets), 8) + 2
    count = 0
    for m in range(lo, hi + 1):
        enters = family_valuation(first, m, p, generic=True) >= i
        stays = family_valuation(last, m, p, generic=True) <= i + 8 * p.e0 - 1
        if enters and stays:
            count += 1
    return count


def _overlap(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return max(a[0], b[0]), min(a[1], b[1])


def _size(w: tuple[int, int]) -> int:
    return max(0, w[1] - w[0] + 1)


def _shift(w: tuple[int, int], s: int) -> tuple[int, int]:
    return w[0] + s, w[1] + s


def pair_counts(case: str, i: int, p: RamificationProfile
                ) -> tuple[int, int]:
    """Numbers of rank-12 pairs formed across windows.

    In regimes C..F the second window's elements carry a lower-order
    tail indexed e0 - t further along, t = (b2 - b1)/4.  A tail landing
    in window 6 merges the two slots into H1L plus a rank-4 summand; a
    tail in window 7 defers to the index e0 - 2t further along, merging
    with window 4 into H1G plus a rank-4 summand (D and F only); any
    later landing is absorbed by an available half-element and the slot
    stays plain.  On the boundary b2 = 3*b1 (D and F only) the tail sits
    at e0 - b1 directly and only the H1G merge happens.
    """
    if case not in ("C", "D", "E", "F"):
        return 0, 0
    b1, b2 = p.breaks[0], p.breaks[1]
    has_q = case in ("D", "F")
    w2 = row_window(case, 2, i, p)
    w4 = row_window(case, 4, i, p)
    w6 = row_window(case, 6, i, p)
    w7 = row_window(case, 7, i, p)
    if b2 == 3 * b1:
        assert has_q, "C and E cannot reach b2 = 3*b1"
        q = _size(_overlap(w2, _shift(w4, -(p.e0 - b1))))
        return 0, q
    t, rem = divmod(b2 - b1, 4)
    assert rem == 0, "interior second breaks are congruent to b1 mod 4"
    s1 = p.e0 - t
    s2 = p.e0 - 2 * t
    pairs = _size(_overlap(w2, _shift(w6, -s1)))
    if not has_q:
        return pairs, 0
    q_window = _overlap(_overlap(w2, _shift(w7, -s1)), _shift(w4, -s2))
    return pairs, _size(q_window)


def brute_force_pair_counts(case: str, i: int, p: RamificationProfile
                            ) -> tuple[int, int]:
    """Elementwise companion to pair_counts: walk the second window's
    members one by one and test where each tail index lands.  Exercises
    the interval arithmetic of the closed form, including the triple
    intersection behind the deferred merge."""
    if case not in ("C", "D", "E", "F"):
        return 0, 0
    b1, b2 = p.breaks[0], p.breaks[1]
    has_q = case in ("D", "F")

    def members(row: int) -> set[int]:
        lo, hi = row_window(case, row, i, p)
        return set(range(lo, hi + 1))

    w2, w4, w6, w7 = members(2), members(4), members(6), members(7)
    if b2 == 3 * b1:
        q = sum(1 for m in w2 if m + (p.e0 - b1) in w4)
        return 0, q
    t = (b2 - b1) // 4
    s1, s2 = p.e0 - t, p.e0 - 2 * t
    pairs = sum(1 for m in w2 if m + s1 in w6)
    if not has_q:
        return pairs, 0
    q = sum(1 for m in w2 if m + s1 in w7 and m + s2 in w4)
    return pairs, q


# Positional rows 1,4,5,6,7,8,9,10 of the case table are the eight
# window slots in order; rows 2 and 3 are the pair rows.
SLOT_TO_ROW = (1, 4, 5, 6, 7, 8, 9, 10)


def slot_modules(case: str) -> list[str]:
    return [tables.MODULE_TABLE[case][row - 1] for row in SLOT_TO_ROW]


def slot_multiset(case: str, i: int, p: RamificationProfile
                  ) -> dict[str, int]:
    """Assemble the decomposition multiset from windows and pairs.

    Each slot contributes its module; slots whose module misses the
    degree-4 rational character contribute a rank-4 summand alongside,
    and rank-12 slots absorb one; each pair contributes one more.
    """
    counts = [row_count(case, view, i, p) for view in range(1, 9)]
    pairs, q = pair_counts(case, i, p)
    mods = slot_modules(case)
    adjusted = list(counts)
    if pairs or q:
        adjusted[1] -= pairs + q
        adjusted[5] -= pairs
        adjusted[3] -= q
    out: dict[str, int] = {}
    for mod, cnt in zip(mods, adjusted):
        if cnt:
            out[mod] = out.get(mod, 0) + cnt
    if pairs:
        out["H1L"] = out.get("H1L", 0) + pairs
    if q:
        out["H1G"] = out.get("H1G", 0) + q
    r3 = pairs + q
    for mod, cnt in zip(mods, counts):
        r3 += cnt * (1 - modules.module_char(mod)[3])
    if r3:
        out["R3"] = out.get("R3", 0) + r3
    return out


def _check_schedules() -> None:
    for case, rows in CASE_ROWS.items():
        assert len(rows) == 8
        for row in rows:
            assert len(row) == 8
        # consecutive views share seven elements
        for r in range(1, 8):
            assert rows[r][1:] == rows[r - 1][:-1], (case, r + 1)
        toks, labels = CASE_CHAIN[case]
        assert len(toks) == 9 and len(labels) == 8
        assert toks[0] == "R" and toks[-1] == "2R"
        row1 = [t.label() for t in rows[0]]
        if case in "ABCD":
            assert row1 == toks[:-1], case
        else:
            assert row1[:-1] == toks[1:-1] and row1[-1] == "2R", case
    for case in CASE_ROWS:
        mods = slot_modules(case)
        assert all(m is not None for m in mods), case


_check_schedules()
