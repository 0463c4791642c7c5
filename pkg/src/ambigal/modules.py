"""Registry of the indecomposable integral representations of a cyclic
2-group of order 8 that occur in this package, plus the two degree-4
aliases used by the lower-level decompositions.

Each entry records the lattice rank and the character vector
(m0, m1, m2, m3): multiplicities of the rational irreducibles of degree
1, 1, 2, 4 in the rationalized module.  rank = m0 + m1 + 2*m2 + 4*m3
holds for every entry and is asserted at import.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ModuleInfo:
    name: str
    rank: int
    char: tuple[int, int, int, int]
    # level: largest j with 2^j dividing the order of the acting group
    # needed to write down the module (0..3).
    level: int


# The 23 indecomposables.  Names are ASCII identifiers; see README for the
# mapping to the usual calligraphic symbols.
MODULES: dict[str, ModuleInfo] = {
    # rank 1, 1, 2, 4: the four irreducible lattices
    "R0": ModuleInfo("R0", 1, (1, 0, 0, 0), 0),
    "R1": ModuleInfo("R1", 1, (0, 1, 0, 0), 1),
    "R2": ModuleInfo("R2", 2, (0, 0, 1, 0), 2),
    "R3": ModuleInfo("R3", 4, (0, 0, 0, 1), 3),
    # rank 2 non-split extension at level 1
    "GR2": ModuleInfo("GR2", 2, (1, 1, 0, 0), 1),
    # rank 4 modules at level 2
    "G": ModuleInfo("G", 4, (1, 1, 1, 0), 2),
    "H": ModuleInfo("H", 4, (1, 1, 1, 0), 2),
    "L": ModuleInfo("L", 4, (1, 1, 1, 0), 2),
    # rank 8 modules at level 3
    "G1": ModuleInfo("G1", 8, (1, 1, 1, 1), 3),
    "G2": ModuleInfo("G2", 8, (1, 1, 1, 1), 3),
    "G3": ModuleInfo("G3", 8, (1, 1, 1, 1), 3),
    "G4": ModuleInfo("G4", 8, (1, 1, 1, 1), 3),
    "H1": ModuleInfo("H1", 8, (1, 1, 1, 1), 3),
    "H2": ModuleInfo("H2", 8, (1, 1, 1, 1), 3),
    "I1": ModuleInfo("I1", 8, (1, 1, 1, 1), 3),
    "I2": ModuleInfo("I2", 8, (1, 1, 1, 1), 3),
    "L1": ModuleInfo("L1", 8, (1, 1, 1, 1), 3),
    "L2": ModuleInfo("L2", 8, (1, 1, 1, 1), 3),
    "L3": ModuleInfo("L3", 8, (1, 1, 1, 1), 3),
    "M1": ModuleInfo("M1", 8, (1, 1, 1, 1), 3),
    # rank 12 modules
    "H12": ModuleInfo("H12", 12, (1, 1, 1, 2), 3),
    "H1G": ModuleInfo("H1G", 12, (2, 2, 2, 1), 3),
    "H1L": ModuleInfo("H1L", 12, (2, 2, 2, 1), 3),
}

# Decomposable aliases produced by the degree-4 tables.  They are recorded
# separately so raw table output can be reported verbatim and expanded on
# demand.
ALIASES: dict[str, dict[str, int]] = {
    "I": {"R2": 1, "GR2": 1},
    "M": {"R2": 1, "R1": 1, "R0": 1},
}

ALIAS_INFO: dict[str, ModuleInfo] = {
    "I": ModuleInfo("I", 4, (1, 1, 1, 0), 2),
    "M": ModuleInfo("M", 4, (1, 1, 1, 0), 2),
}


def module_rank(name: str) -> int:
    if name in MODULES:
        return MODULES[name].rank
    return ALIAS_INFO[name].rank


def module_char(name: str) -> tuple[int, int, int, int]:
    if name in MODULES:
        return MODULES[name].char
    return ALIAS_INFO[name].char


def is_alias(name: str) -> bool:
    return name in ALIASES


def expand_aliases(mults: dict[str, int]) -> dict[str, int]:
    """Rewrite a multiset over MODULES + ALIASES as one over MODULES only."""
    out: dict[str, int] = {}
    for name, k in mults.items():
        if k == 0:
            continue
        if name in ALIASES:
            for part, j in ALIASES[name].items():
                out[part] = out.get(part, 0) + j * k
        elif name in MODULES:
            out[name] = out.get(name, 0) + k
        else:
            raise KeyError(f"unknown module name {name!r}")
    return {k: v for k, v in sorted(out.items())}


def multiset_rank(mults: dict[str, int]) -> int:
    return sum(module_rank(n) * k for n, k in mults.items())


def multiset_char(mults: dict[str, int]) -> tuple[int, int, int, int]:
    acc = [0, 0, 0, 0]
    for n, k in mults.items():
        ch = module_char(n)
        for j in range(4):
            acc[j] += ch[j] * k
    return tuple(acc)


def _check_registry() -> None:
    for info in list(MODULES.values()) + list(ALIAS_INFO.values()):
        m0, m1, m2, m3 = info.char
        assert info.rank == m0 + m1 + 2 * m2 + 4 * m3, info.name
    for alias, parts in ALIASES.items():
        assert multiset_rank(parts) == ALIAS_INFO[alias].rank
        assert multiset_char(parts) == ALIAS_INFO[alias].char
    assert len(MODULES) == 23


_check_registry()
