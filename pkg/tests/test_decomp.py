import pytest

from ambigal import tables
from ambigal.decomp import (InducedDecomposition, NegativeMultiplicity,
                            assemble_theorem, constants, decompose,
                            decompose_even, m1, m2, m3, m3_table,
                            realizable_set)
from ambigal.ramification import all_profiles, make_profile


def test_constants_pinned():
    c = constants(0, make_profile(1, (1, 3, 7)))
    assert (c.a, c.abar, c.b, c.bbar) == (0, 1, -1, 0)
    assert (c.c, c.cbar, c.d, c.dbar) == (-1, 0, -2, -1)
    assert c.m == 1


def test_constants_exact_negative_division():
    c = constants(1, make_profile(1, (1, 3, 7)))
    assert c.dbar == -1          # ceil(-8/8), exercises negative ceilings


def test_constants_shift_by_period():
    p = make_profile(3, (1, 5, 17))
    base = constants(2, p)
    shifted = constants(2 + 8 * p.e0, p)
    for name in ("a", "abar", "b", "bbar", "c", "cbar", "d", "dbar",
                 "w", "wbar", "y", "ybar", "zbar"):
        assert getattr(shifted, name) == getattr(base, name) + p.e0
    assert shifted.m == base.m


def test_m1_pinned():
    assert m1(0, make_profile(1, (1,))).mults == {"R0": 1, "R1": 1}
    assert m1(0, make_profile(2, (3,))).mults == {"R0": 2, "R1": 2}
    assert m1(2, make_profile(1, (1,))).mults == {"R0": 1, "R1": 1}
    assert m1(1, make_profile(2, (1,))).mults == {"GR2": 2}
    assert m1(0, make_profile(2, (1,))).mults == {"R0": 1, "R1": 1,
                                                  "GR2": 1}


def test_m2_pinned():
    assert m2(0, make_profile(1, (1, 3))).mults == {"G": 1}
    assert m2(0, make_profile(2, (1, 5))).mults == {"I": 1, "L": 1}


def test_m2_branch_never_ties():
    for p in all_profiles(2, 10):
        assert p.breaks[1] + 2 * p.breaks[0] != 4 * p.e0


def test_m3_pinned_worked_instances():
    p = make_profile(1, (1, 3, 7))
    d0 = m3(0, p)
    assert d0.case == "A"
    assert d0.mults == {"M": 1, "R3": 1}
    assert d0.normalized() == {"R0": 1, "R1": 1, "R2": 1, "R3": 1}
    assert d0.rank() == 8
    d1 = m3(1, p)
    assert d1.mults == {"H2": 1}


def test_low_degree_accounting():
    for n in (1, 2):
        for p in all_profiles(n, 16):
            for i in range(2 ** n * p.e0):
                d = decompose(i, p)
                assert d.rank() == 2 ** n * p.e0


def test_degree8_nonnegative_up_to_e0_16():
    # NegativeMultiplicity must stay unreachable on validated input
    for p in all_profiles(3, 16):
        for i in range(8 * p.e0):
            d = decompose(i, p)
            assert d.rank() == 8 * p.e0, (p, i)


def test_periodicity_pinned():
    p = make_profile(2, (1, 3, 11))
    for i in (-5, 0, 7):
        assert m3(i, p).mults == m3(i + 16, p).mults


def test_decompose_even():
    for e0 in range(1, 9):
        p = make_profile(e0, (2 * e0, 4 * e0), n=3)
        d = decompose_even(p)
        assert d.mults == {"GR2": e0, "R2": e0, "R3": e0}
        assert d.rank() == 8 * e0
        assert d.char() == (e0,) * 4
    with pytest.raises(ValueError):
        decompose_even(make_profile(1, (1, 3, 7)))


def test_assemble_theorem():
    inner = assemble_theorem(0, make_profile(1, (1, 3, 7)))
    assert isinstance(inner, InducedDecomposition)
    assert inner.outer_factor == 1 and inner.total_rank() == 8

    lifted = assemble_theorem(0, make_profile(1, (1,), n=3, f_exp=2))
    assert lifted.inner.mults == {"R0": 1, "R1": 1}
    assert lifted.outer_factor == 4
    assert lifted.total_rank() == 16

    trivial = assemble_theorem(0, make_profile(1, (1,)))
    assert trivial.outer_factor == 1 and trivial.total_rank() == 2


def test_realizable_sets_low_degree():
    assert realizable_set(0, 4) == {"R0"}
    assert realizable_set(1, 4) == {"R0", "R1", "GR2"}
    assert realizable_set(2, 4) == {"R0", "R1", "R2", "GR2",
                                    "G", "H", "L"}


def test_table_path_matches_engine_on_clean_case():
    # the duplicated printed row makes the printed reading fail here,
    # while the corrected reading reproduces the engine exactly
    p = make_profile(3, (1, 3, 15))
    diverged = False
    for i in range(24):
        engine = m3(i, p).mults
        assert m3_table(i, p, "adopted").mults == engine
        try:
            diverged |= m3_table(i, p, "printed").mults != engine
        except NegativeMultiplicity:
            diverged = True
    assert diverged


def test_table_readings_api():
    assert (tables.formula_for("G", 8, "printed")
            == tables.formula_for("G", 9, "printed"))
    assert (tables.formula_for("G", 8, "adopted")
            != tables.formula_for("G", 9, "adopted"))
    assert tables.formula_for("A", 2) is None
    assert tables.formula_for("F", 2, "adopted", on_line=True) == "0"
    assert (tables.r3_formula_for("D", "printed")
            != tables.r3_formula_for("D", "adopted"))


def test_decompose_dispatch():
    assert decompose(0, make_profile(2, ())).mults == {"R0": 2}
    assert decompose(0, make_profile(1, (1,))).mults == {"R0": 1, "R1": 1}
    assert decompose(0, make_profile(1, (1, 3))).mults == {"G": 1}
    assert decompose(3, make_profile(4, (8, 16), n=3)).mults == {
        "GR2": 4, "R2": 4, "R3": 4}
    with pytest.raises(ValueError):
        decompose(0, make_profile(1, (2,)))
