"""Sikorav certificates, two-sided fibred checks, scans, and the consistency harness.

A character is Certified when the Fox differential, restricted to the Novikov
cycle basis, diagonalizes to a full identity block with verified transforms.
RefutedByRank is reserved for the cutoff-independent count obstruction
(fewer relators than cycles).  Everything else is InconclusiveAtCutoff: the
certifier is a semi-decision procedure and never asserts non-fibring from
truncated data alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .chains import ChainComplex, CycleBasis, cycle_basis, pick_pivot_generator
from .characters import Character, CompatibleOrder, evaluate, normalize_primitive
from .errors import EngineError, InconclusiveAtCutoff, ValidationError
from .novikov import (
    Cutoff,
    NovikovElement,
    NovikovMatrix,
    eliminate,
    novikov_one,
)
from .presentation import GroupPresentation
from .serialize import (
    character_to_json,
    digest,
    matrix_to_json,
    novikov_to_json,
    value_to_json,
    word_to_json,
)
from .valuefield import PLUS_INFINITY, FieldElement

DEFAULT_CUTOFF_FACTOR = 8
DEFAULT_RETRIES = 2


class Status(enum.Enum):
    CERTIFIED = "Certified"
    REFUTED_BY_RANK = "RefutedByRank"
    INCONCLUSIVE = "InconclusiveAtCutoff"


class Verdict(enum.Enum):
    FIBRED = "Fibred"
    NOT_FIBRED_BY_RANK = "NotFibredByRank"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    """Finite witness that the cycle space is hit by d2 modulo the cutoff."""

    character: Character
    cutoff: FieldElement
    pivot_index: int
    pivot_word: tuple[int, ...]
    rank: int
    shape: tuple[int, int]
    lhs: NovikovMatrix | None
    lhs_inv: NovikovMatrix | None
    rhs: NovikovMatrix | None
    rhs_inv: NovikovMatrix | None
    margin: Cutoff
    cycle_digest: str

    def to_json(self) -> dict:
        return {
            "character": character_to_json(self.character),
            "cutoff": value_to_json(self.cutoff),
            "pivot_index": self.pivot_index,
            "pivot_word": word_to_json(self.pivot_word),
            "rank": self.rank,
            "shape": list(self.shape),
            "lhs": matrix_to_json(self.lhs) if self.lhs is not None else None,
            "lhs_inv": matrix_to_json(self.lhs_inv) if self.lhs_inv is not None else None,
            "rhs": matrix_to_json(self.rhs) if self.rhs is not None else None,
            "rhs_inv": matrix_to_json(self.rhs_inv) if self.rhs_inv is not None else None,
            "margin": value_to_json(self.margin),
            "cycle_digest": self.cycle_digest,
        }

    def digest(self) -> str:
        return digest(self.to_json())


@dataclass(frozen=True)
class CertifyOutcome:
    status: Status
    certificate: Certificate | None
    cutoff: FieldElement
    detail: str = ""

    @property
    def margin(self) -> Cutoff | None:
        return self.certificate.margin if self.certificate is not None else None


def default_cutoff(group: GroupPresentation, phi: Character) -> FieldElement:
    """8 x the largest |phi| over generators with nonzero value."""
    best: FieldElement | None = None
    for j in range(group.n_gens):
        v = abs(evaluate(phi, group.generator(j)))
        if v.sign() > 0 and (best is None or v > best):
            best = v
    if best is None:
        raise ValidationError("character vanishes on every generator")
    return best.scale(DEFAULT_CUTOFF_FACTOR)


def _cycle_digest(basis: CycleBasis) -> str:
    payload = {
        "pivot": basis.pivot_index,
        "pivot_word": word_to_json(basis.pivot_word),
        "corrections": {
            str(t): novikov_to_json(c) for t, c in sorted(basis.corrections.items())
        },
    }
    return digest(payload)


def _reduced_matrix(
    cc: ChainComplex, order: CompatibleOrder, pivot_index: int, cutoff: FieldElement
) -> NovikovMatrix:
    group = cc.group
    rows = []
    for i in range(cc.n_relators):
        rows.append(
            [
                NovikovElement(group, order, cc.d2[i][j], cutoff)
                for j in range(cc.n_generators)
                if j != pivot_index
            ]
        )
    return NovikovMatrix(rows)


def _check_residuals(
    cc: ChainComplex, order: CompatibleOrder, basis: CycleBasis, cutoff: FieldElement
) -> None:
    """The pivot coordinate of each d2 row must vanish in cycle coordinates.

    Internal sanity check: d2 rows are cycles, so expressing them in the basis
    e_t' leaves no e_pivot component modulo the cutoff.
    """
    group = cc.group
    s = basis.pivot_index
    for i in range(cc.n_relators):
        residual = NovikovElement(group, order, cc.d2[i][s], cutoff)
        for t, corr in basis.corrections.items():
            residual = residual - NovikovElement(group, order, cc.d2[i][t], cutoff) * corr
        if not residual.is_zero_mod():
            raise EngineError(
                "cycle-coordinate residual does not vanish; chain data inconsistent"
            )


def sikorav_certify(cc: ChainComplex, phi: Character, cutoff: FieldElement | None = None) -> CertifyOutcome:
    """Certify phi by diagonalizing d2 on the Novikov cycle basis.

    Certified: full identity block of size (generators - 1).
    RefutedByRank: fewer relators than cycles (valid at every cutoff).
    InconclusiveAtCutoff: elimination stalled or rank fell short.
    """
    group = cc.group
    if phi.is_zero():
        raise ValidationError("zero character cannot be certified")
    if cutoff is None:
        cutoff = default_cutoff(group, phi)
    if not (cutoff.sign() > 0):
        raise ValidationError("cutoff must be strictly positive")
    n = cc.n_generators
    m = cc.n_relators
    need = n - 1
    pivot_index, pivot_word = pick_pivot_generator(group, phi)
    if m < need:
        return CertifyOutcome(
            status=Status.REFUTED_BY_RANK,
            certificate=None,
            cutoff=cutoff,
            detail=f"{m} relators cannot hit a rank-{need} cycle space at any cutoff",
        )
    order = CompatibleOrder(phi)
    if need == 0:
        cert = Certificate(
            character=phi,
            cutoff=cutoff,
            pivot_index=pivot_index,
            pivot_word=pivot_word,
            rank=0,
            shape=(m, 0),
            lhs=None,
            lhs_inv=None,
            rhs=None,
            rhs_inv=None,
            margin=PLUS_INFINITY,
            cycle_digest=digest({"pivot": pivot_index, "corrections": {}}),
        )
        return CertifyOutcome(Status.CERTIFIED, cert, cutoff, "trivial cycle space")
    basis = cycle_basis(cc, phi, cutoff)
    _check_residuals(cc, order, basis, cutoff)
    matrix = _reduced_matrix(cc, order, basis.pivot_index, cutoff)
    try:
        res = eliminate(matrix)
    except InconclusiveAtCutoff as exc:
        return CertifyOutcome(Status.INCONCLUSIVE, None, cutoff, str(exc))
    if res.rank < need:
        return CertifyOutcome(
            Status.INCONCLUSIVE,
            None,
            cutoff,
            f"elimination reached rank {res.rank} < {need}; remaining block vanishes "
            "modulo the cutoff, which refutes nothing",
        )
    pivot_value = abs(evaluate(phi, group.element(basis.pivot_word)))
    margin = res.margin if res.margin < pivot_value else pivot_value
    cert = Certificate(
        character=phi,
        cutoff=cutoff,
        pivot_index=basis.pivot_index,
        pivot_word=basis.pivot_word,
        rank=res.rank,
        shape=matrix.shape,
        lhs=res.lhs,
        lhs_inv=res.lhs_inv,
        rhs=res.rhs,
        rhs_inv=res.rhs_inv,
        margin=margin,
        cycle_digest=_cycle_digest(basis),
    )
    return CertifyOutcome(Status.CERTIFIED, cert, cutoff, "")


def verify_certificate(cc: ChainComplex, cert: Certificate) -> bool:
    """Re-verify a certificate by independent truncated multiplication.

    Rebuilds the reduced Fox matrix from the chain complex and checks the
    stored transforms against it; no elimination state is reused.
    """
    group = cc.group
    n = cc.n_generators
    need = n - 1
    if cert.rank != need:
        return False
    if not (cert.margin is PLUS_INFINITY or cert.margin.sign() > 0):
        return False
    pivot_index, pivot_word = pick_pivot_generator(group, cert.character)
    if pivot_index != cert.pivot_index or pivot_word != cert.pivot_word:
        return False
    if need == 0:
        return True
    if any(x is None for x in (cert.lhs, cert.lhs_inv, cert.rhs, cert.rhs_inv)):
        return False
    order = CompatibleOrder(cert.character)
    basis = cycle_basis(cc, cert.character, cert.cutoff)
    if _cycle_digest(basis) != cert.cycle_digest:
        return False
    matrix = _reduced_matrix(cc, order, pivot_index, cert.cutoff)
    if matrix.shape != cert.shape:
        return False
    reduced = cert.lhs * matrix * cert.rhs
    if not reduced.is_diagonal_block_mod(cert.rank):
        return False
    for a, b in ((cert.lhs, cert.lhs_inv), (cert.rhs, cert.rhs_inv)):
        prod = a * b
        if not prod.is_identity_mod():
            return False
        prod = b * a
        if not prod.is_identity_mod():
            return False
    return True


@dataclass(frozen=True)
class FibringVerdict:
    character: Character
    plus: CertifyOutcome
    minus: CertifyOutcome
    verdict: Verdict
    cutoff: FieldElement
    normalized: bool

    @property
    def margin(self) -> Cutoff | None:
        margins = [
            o.margin for o in (self.plus, self.minus) if o.margin is not None
        ]
        if not margins:
            return None
        m = margins[0]
        for x in margins[1:]:
            if x < m:
                m = x
        return m

    def certificate_digest(self) -> str:
        return digest(
            [
                self.plus.certificate.digest() if self.plus.certificate else None,
                self.minus.certificate.digest() if self.minus.certificate else None,
            ]
        )

    def to_json(self) -> dict:
        margin = self.margin
        return {
            "character": character_to_json(self.character),
            "plus": self.plus.status.value,
            "minus": self.minus.status.value,
            "verdict": self.verdict.value,
            "cutoff": value_to_json(self.cutoff),
            "margin": value_to_json(margin) if margin is not None else None,
            "certificate_digest": self.certificate_digest(),
        }


def _certify_with_retries(
    cc: ChainComplex, phi: Character, cutoff: FieldElement, retries: int
) -> CertifyOutcome:
    outcome = sikorav_certify(cc, phi, cutoff)
    for _ in range(retries):
        if outcome.status is not Status.INCONCLUSIVE:
            break
        cutoff = cutoff.scale(2)
        outcome = sikorav_certify(cc, phi, cutoff)
    return outcome


def fibred_check(
    cc: ChainComplex,
    phi: Character,
    cutoff: FieldElement | None = None,
    retries: int = DEFAULT_RETRIES,
) -> FibringVerdict:
    """Run sikorav_certify at +phi and -phi and combine.

    Fibred iff both directions are Certified; NotFibredByRank when either
    direction carries the exact rank obstruction; Inconclusive otherwise.
    """
    if not phi.is_rational():
        raise ValidationError("fibred_check requires a rational character")
    if phi.is_zero():
        raise ValidationError("zero character cannot fibre")
    primitive, changed = normalize_primitive(phi)
    if cutoff is None:
        cutoff = default_cutoff(cc.group, primitive)
    plus = _certify_with_retries(cc, primitive, cutoff, retries)
    minus = _certify_with_retries(cc, primitive.negate(), cutoff, retries)
    if plus.status is Status.CERTIFIED and minus.status is Status.CERTIFIED:
        verdict = Verdict.FIBRED
    elif Status.REFUTED_BY_RANK in (plus.status, minus.status):
        verdict = Verdict.NOT_FIBRED_BY_RANK
    else:
        verdict = Verdict.INCONCLUSIVE
    return FibringVerdict(
        character=primitive,
        plus=plus,
        minus=minus,
        verdict=verdict,
        cutoff=cutoff,
        normalized=changed,
    )


def character_scan(
    cc: ChainComplex,
    samples: list[Character],
    cutoff: FieldElement | None = None,
    retries: int = DEFAULT_RETRIES,
) -> dict:
    """Deterministic per-character verdicts with a certified-ray summary.

    Per-sample failures are captured in the report; the scan never aborts.
    """
    results = []
    certified_rays = []
    counts = {v.value: 0 for v in Verdict}
    for idx, phi in enumerate(samples):
        try:
            verdict = fibred_check(cc, phi, cutoff, retries)
        except (ValidationError, EngineError) as exc:
            results.append({"index": idx, "character": character_to_json(phi), "error": str(exc)})
            continue
        entry = verdict.to_json()
        entry["index"] = idx
        results.append(entry)
        counts[verdict.verdict.value] += 1
        if verdict.verdict is Verdict.FIBRED:
            certified_rays.append(idx)
    return {
        "samples": results,
        "summary": {"counts": counts, "certified_rays": certified_rays},
    }


def _require_free_abelian(group: GroupPresentation) -> None:
    from .engines import RaagEngine

    engine = group.engine
    if not isinstance(engine, RaagEngine):
        raise ValidationError("betti1_abelian requires a free-abelian presentation")
    n = group.n_gens
    want = {(i, j) for i in range(n) for j in range(i + 1, n)}
    if set(engine.edges) != want:
        raise ValidationError("betti1_abelian requires a complete commutation graph")


def betti1_abelian(group: GroupPresentation) -> Fraction:
    """beta_1^(2) of a free-abelian group: n - rank(d2) - rank(d1).

    Ranks are over the fraction field of Laurent polynomials, computed exactly.
    """
    import sympy
    from sympy.polys.matrices import DomainMatrix

    _require_free_abelian(group)
    from .chains import build_complex

    cc = build_complex(group)
    n = group.n_gens
    syms = sympy.symbols([f"x{i}" for i in range(n)])
    field = sympy.QQ.frac_field(*syms)

    def to_field(elem):
        expr = sympy.Integer(0)
        for w, c in elem.terms.items():
            vec = group.alpha(w)
            mono = sympy.Rational(c)
            for i, e in enumerate(vec):
                mono = mono * syms[i] ** int(e)
            expr = expr + mono
        return field.from_sympy(expr)

    def field_rank(rows):
        if not rows or not rows[0]:
            return 0
        dm = DomainMatrix([[to_field(e) for e in row] for row in rows], (len(rows), len(rows[0])), field)
        return dm.rank()

    rank_d2 = field_rank([list(row) for row in cc.d2])
    rank_d1 = field_rank([[e] for e in cc.d1])
    return Fraction(n - rank_d2 - rank_d1)


def ray_samples(rank: int, budget: int) -> list[Character]:
    """First `budget` primitive integer rays ordered by max-norm then lex."""
    from math import gcd

    from .characters import character_from_values

    out: list[Character] = []
    seen: set[tuple[int, ...]] = set()
    radius = 1
    while len(out) < budget and radius <= budget + 2:
        box: list[tuple[int, ...]] = []

        def fill(prefix: tuple[int, ...]) -> None:
            if len(prefix) == rank:
                if any(prefix) and max(abs(x) for x in prefix) == radius:
                    box.append(prefix)
                return
            for v in range(-radius, radius + 1):
                fill(prefix + (v,))

        fill(())
        for vec in sorted(box):
            g = 0
            for x in vec:
                g = gcd(g, abs(x))
            if g != 1 or vec in seen:
                continue
            seen.add(vec)
            out.append(character_from_values([Fraction(x) for x in vec]))
            if len(out) == budget:
                break
        radius += 1
    return out


def consistency_harness(
    entry,
    budget: int = 16,
    cutoff: FieldElement | None = None,
    tower=None,
) -> dict:
    """Desk-scale check of the fibring <=> vanishing-beta1 equivalence.

    For equivalence entries: knownBetti1 = 0 must be witnessed by some Fibred
    sample (on the group or a supplied finite-index kernel) and knownBetti1 != 0
    must see none.  For the non-equivalence entry the expectation is no Fibred
    verdict with at least one one-sided certificate.  Certifier statuses are
    always checked against the entry's Sigma-oracle.
    """
    from .catalog import sigma_membership
    from .chains import build_complex

    group = entry.presentation()
    cc = build_complex(group)
    rank = group.abelianization().rank
    samples = ray_samples(rank, budget)
    scan = character_scan(cc, samples, cutoff)
    found_fibred = bool(scan["summary"]["certified_rays"])
    some_certified = False
    oracle_ok = True
    disagreements = []
    for item in scan["samples"]:
        if "error" in item:
            oracle_ok = False
            disagreements.append({"index": item["index"], "error": item["error"]})
            continue
        idx = item["index"]
        phi = samples[idx]
        for side, label in ((phi, "plus"), (phi.negate(), "minus")):
            status = item[label]
            if status == Status.CERTIFIED.value:
                some_certified = True
            member = sigma_membership(entry, group, side)
            if member is None:
                continue
            if status == Status.CERTIFIED.value and not member:
                oracle_ok = False
                disagreements.append({"index": idx, "side": label, "why": "certified outside Sigma"})
            if status == Status.REFUTED_BY_RANK.value and member:
                oracle_ok = False
                disagreements.append({"index": idx, "side": label, "why": "refuted inside Sigma"})

    betti_computed = None
    if entry.sigma_oracle == "free-abelian":
        betti_computed = betti1_abelian(group)
        if betti_computed != entry.known_betti1:
            oracle_ok = False
            disagreements.append({"why": "betti1_abelian disagrees with the catalog constant"})

    tower_reports = []
    if tower:
        for quot in tower:
            tower_reports.append(_scan_kernel(group, quot, budget, cutoff))
        found_fibred = found_fibred or any(t["found_fibred"] for t in tower_reports)

    if entry.equivalence_expected:
        if entry.known_betti1 == 0:
            passed = found_fibred and oracle_ok
        else:
            passed = (not found_fibred) and oracle_ok
    else:
        passed = (not found_fibred) and some_certified and oracle_ok

    report = {
        "entry": entry.name,
        "known_betti1": str(entry.known_betti1),
        "equivalence_expected": entry.equivalence_expected,
        "budget": budget,
        "scan": scan,
        "found_fibred": found_fibred,
        "some_certified": some_certified,
        "oracle_agreement": oracle_ok,
        "disagreements": disagreements,
        "pass": passed,
    }
    if betti_computed is not None:
        report["betti1_abelian"] = str(betti_computed)
    if tower_reports:
        report["tower"] = tower_reports
    return report


def _scan_kernel(group: GroupPresentation, quot, budget: int, cutoff) -> dict:
    """Scan characters of a finite-index kernel given by an explicit quotient."""
    from .chains import build_complex
    from .engines import RaagEngine
    from .quotients import SubgroupPresentation

    sub = SubgroupPresentation(group, quot)
    pres = sub.presentation
    if pres.relators:
        raise EngineError(
            "kernel scan supports free kernels only; this kernel has relators"
        )
    free = GroupPresentation(
        pres.generators, (), engine=RaagEngine(len(pres.generators), ()),
        source=f"free kernel of index {quot.order} in: {group.source}",
    )
    cc = build_complex(free)
    rank = free.abelianization().rank
    scan = character_scan(cc, ray_samples(rank, budget), cutoff)
    return {
        "index": quot.order,
        "kernel_rank": rank,
        "scan": scan,
        "found_fibred": bool(scan["summary"]["certified_rays"]),
    }
