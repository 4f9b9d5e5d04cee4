"""Desk-scale group catalog with known invariants and Sigma-oracles.

Each entry carries a presentation, the known value of the first L2-Betti
number, and an oracle for BNS-set membership of rational characters.  The
oracles are independent mathematics (free groups, free-abelian groups, the
Meier-VanWyk criterion for RAAGs, and the classical answer for BS(1,2)), used
to cross-check certifier output, never derived from it.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, evaluate
from .errors import ValidationError
from .presentation import GroupPresentation, parse_presentation

_PARSE_CACHE: dict[str, GroupPresentation] = {}


def _bs12_source() -> str:
    return (
        importlib.resources.files("fibcert").joinpath("data/bs12.pres").read_text("utf-8")
    )


@dataclass(frozen=True)
class CatalogEntry:
    """Test fixture: presentation text plus externally known invariants."""

    name: str
    source_text: str
    known_betti1: Fraction
    sigma_oracle: str  # "free" | "free-abelian" | "raag" | "bs12"
    provenance: str
    equivalence_expected: bool = True

    def presentation(self) -> GroupPresentation:
        cached = _PARSE_CACHE.get(self.name)
        if cached is None:
            cached = parse_presentation(self.source_text)
            _PARSE_CACHE[self.name] = cached
        return cached


def _entries() -> dict[str, CatalogEntry]:
    return {
        "Z": CatalogEntry(
            name="Z",
            source_text="raag { t; }",
            known_betti1=Fraction(0),
            sigma_oracle="free-abelian",
            provenance="infinite cyclic group; fibres over itself",
        ),
        "Z2": CatalogEntry(
            name="Z2",
            source_text="raag { a, b; a-b }",
            known_betti1=Fraction(0),
            sigma_oracle="free-abelian",
            provenance="rank-2 free abelian; every primitive character fibres with kernel Z",
        ),
        "Z3": CatalogEntry(
            name="Z3",
            source_text="raag { x, y, z; x-y, x-z, y-z }",
            known_betti1=Fraction(0),
            sigma_oracle="free-abelian",
            provenance="rank-3 free abelian",
        ),
        "F2": CatalogEntry(
            name="F2",
            source_text="raag { a, b; }",
            known_betti1=Fraction(1),
            sigma_oracle="free",
            provenance="free of rank 2; BNS set empty, no finitely generated kernels",
        ),
        "F2xZ": CatalogEntry(
            name="F2xZ",
            source_text="raag { a, z, b; a-z, b-z }",
            known_betti1=Fraction(0),
            sigma_oracle="raag",
            provenance="RAAG on the path a-z-b; central Z factor kills the L2-Betti number",
        ),
        "BS12": CatalogEntry(
            name="BS12",
            source_text=_bs12_source(),
            known_betti1=Fraction(0),
            sigma_oracle="bs12",
            provenance=(
                "solvable Baumslag-Solitar group: amenable, so the L2-Betti number "
                "vanishes, yet no character fibres (kernel Z[1/2] is not finitely "
                "generated); the classical BNS set is one open half-line"
            ),
            equivalence_expected=False,
        ),
    }


ENTRY_NAMES = ("Z", "Z2", "Z3", "F2", "F2xZ", "BS12")


def entries() -> dict[str, CatalogEntry]:
    return _entries()


def get_entry(name: str) -> CatalogEntry:
    table = _entries()
    if name not in table:
        raise ValidationError(f"unknown catalog entry {name!r}; known: {', '.join(ENTRY_NAMES)}")
    return table[name]


def _generator_values(group: GroupPresentation, phi: Character):
    return [evaluate(phi, group.generator(j)) for j in range(group.n_gens)]


def sigma_free(group: GroupPresentation, phi: Character) -> bool:
    """BNS set of a nonabelian free group is empty."""
    if group.n_gens < 2:
        raise ValidationError("free oracle expects rank >= 2")
    return False


def sigma_free_abelian(group: GroupPresentation, phi: Character) -> bool:
    """Every nonzero character of a free-abelian group lies in the BNS set."""
    return not phi.is_zero()


def sigma_raag(group: GroupPresentation, phi: Character) -> bool:
    """Meier-VanWyk: the living subgraph must be connected and dominating."""
    from .engines import RaagEngine

    engine = group.engine
    if not isinstance(engine, RaagEngine):
        raise ValidationError("raag oracle needs a commutation-graph presentation")
    values = _generator_values(group, phi)
    living = [j for j in range(group.n_gens) if not values[j].is_zero()]
    if not living:
        return False
    adj = {j: set() for j in range(group.n_gens)}
    for i, j in engine.edges:
        adj[i].add(j)
        adj[j].add(i)
    living_set = set(living)
    # connected on the induced living subgraph
    seen = {living[0]}
    queue = [living[0]]
    while queue:
        v = queue.pop()
        for w in adj[v] & living_set:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if seen != living_set:
        return False
    # dominating: every dead vertex has a living neighbour
    for v in range(group.n_gens):
        if v in living_set:
            continue
        if not (adj[v] & living_set):
            return False
    return True


def sigma_bs12(group: GroupPresentation, phi: Character) -> bool:
    """BS(1,2): the BNS set is the half-line of characters negative on t."""
    t_index = group.generators.index("t")
    value = evaluate(phi, group.generator(t_index))
    return value.sign() < 0


_ORACLES = {
    "free": sigma_free,
    "free-abelian": sigma_free_abelian,
    "raag": sigma_raag,
    "bs12": sigma_bs12,
}


def sigma_membership(entry: CatalogEntry, group: GroupPresentation, phi: Character) -> bool | None:
    """Oracle answer for phi, or None where the oracle is undefined."""
    if phi.is_zero():
        return None
    if not phi.is_rational():
        # the shipped oracles are stated for rational rays only
        if entry.sigma_oracle not in ("free", "free-abelian", "raag"):
            return None
    oracle = _ORACLES.get(entry.sigma_oracle)
    if oracle is None:
        raise ValidationError(f"no Sigma-oracle registered under {entry.sigma_oracle!r}")
    return oracle(group, phi)
