from ambigal import modules


def test_exactly_23_indecomposables():
    assert len(modules.MODULES) == 23


def test_rank_char_consistency():
    for info in modules.MODULES.values():
        m0, m1, m2, m3 = info.char
        assert info.rank == m0 + m1 + 2 * m2 + 4 * m3


def test_rank_census():
    ranks = sorted(modules.module_rank(n) for n in modules.MODULES)
    assert ranks == [1, 1, 2, 2, 4, 4, 4, 4] + [8] * 12 + [12] * 3
    assert sum(ranks) == 154


def test_alias_expansion():
    assert modules.expand_aliases({"I": 2}) == {"GR2": 2, "R2": 2}
    assert modules.expand_aliases({"M": 1, "R3": 1}) == {
        "R0": 1, "R1": 1, "R2": 1, "R3": 1}
    assert modules.expand_aliases({}) == {}
    assert modules.expand_aliases({"I": 0}) == {}


def test_alias_rank_and_char_preserved():
    for alias, parts in modules.ALIASES.items():
        assert modules.multiset_rank(parts) == modules.module_rank(alias)
        assert modules.multiset_char(parts) == modules.module_char(alias)


def test_multiset_accounting():
    mults = {"G1": 2, "H1L": 1, "R0": 3}
    assert modules.multiset_rank(mults) == 2 * 8 + 12 + 3
    assert modules.multiset_char(mults) == (2 + 2 + 3, 2 + 2, 2 + 2, 2 + 1)


def test_is_alias():
    assert modules.is_alias("I") and modules.is_alias("M")
    assert not modules.is_alias("R0") and not modules.is_alias("H1L")
