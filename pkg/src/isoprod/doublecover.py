"""Double-cover invariants, canonical resolution and the ruled-case solver.

A double cover branched along B = 2L has

    K^2  = 2 (K_W + L)^2,      chi(O) = 2 chi(O_W) + L (K_W + L) / 2,

computed here from the ambient intersection form (the projective plane, or a
Hirzebruch surface F_e with basis C_0, L: C_0^2 = -e, C_0.L = 1, L^2 = 0).
The canonical resolution of a branch-curve singularity with even subtraction
coefficient b costs

    delta chi = -(b/2)(b/2 - 1)/2,      delta K^2 = -2 (b/2 - 1)^2,

so points with b = 2 (negligible singularities) cost nothing, and an
infinitely-near pair with coefficients (2b+2, 2b) - a [2b+1, 2b+1]-point -
additionally produces two disjoint (-1)-curves upstairs, which contraction
trades for +1 on K^2 each.

The ruled-case solver works from the two good-model identities

    2kl - sum b_i^2 = 4 K^2_res - 8       -2(k+l) + sum b_i = -2 K^2_res

for a bidegree-(k, l) branch curve on a minimal ruled model: fixing the
singularities forced in each case of the degree-2 classification lists,
the remaining even coefficients 2*beta_j solve a bounded Diophantine system
and pin down K^2 of the resolved quotient and the square of the divisorial
fixed curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class CoverError(ValueError):
    """Invalid ambient data, odd multiplicities, or inconsistent ledgers."""


# -- ambient surfaces and divisor classes ---------------------------------------


@dataclass(frozen=True)
class AmbientModel:
    """The projective plane, or a Hirzebruch surface F_e."""

    kind: str                   # "plane" | "hirzebruch"
    e: int = 0

    def __post_init__(self):
        if self.kind not in ("plane", "hirzebruch"):
            raise CoverError("ambient must be 'plane' or 'hirzebruch'")
        if self.kind == "hirzebruch" and self.e < 0:
            raise CoverError("hirzebruch parameter e must be >= 0")

    @property
    def k_squared(self) -> int:
        return 9 if self.kind == "plane" else 8

    @property
    def chi(self) -> int:
        return 1

    def canonical_class(self) -> tuple[Fraction, Fraction]:
        if self.kind == "plane":
            return (Fraction(-3), Fraction(0))
        return (Fraction(-2), Fraction(-(self.e + 2)))

    def intersect(self, u: tuple, v: tuple) -> Fraction:
        """Intersection number of classes (aH) or (a C_0 + b L)."""
        if self.kind == "plane":
            return Fraction(u[0]) * Fraction(v[0])
        a1, b1 = map(Fraction, u)
        a2, b2 = map(Fraction, v)
        return -self.e * a1 * a2 + a1 * b2 + a2 * b1


def double_cover_invariants(ambient: AmbientModel, l_class: tuple) -> tuple[int, int]:
    """(chi, K^2) of the smooth double cover determined by L with B = 2L."""
    k = ambient.canonical_class()
    kl = tuple(Fraction(a) + Fraction(b) for a, b in zip(k, l_class))
    ksq = 2 * ambient.intersect(kl, kl)
    chi = 2 * ambient.chi + Fraction(1, 2) * ambient.intersect(l_class, kl)
    if chi.denominator != 1 or ksq.denominator != 1:
        raise CoverError(f"half-integral invariants from class {l_class}")
    return int(chi), int(ksq)


# -- branch-curve models and canonical resolution -------------------------------


@dataclass
class SingularityNode:
    """One infinitely-near point of the branch curve with even coefficient b."""

    b: int
    children: list["SingularityNode"] = field(default_factory=list)
    tangent_to_fiber: bool = False

    def __post_init__(self):
        if self.b <= 0 or self.b % 2:
            raise CoverError(f"subtraction coefficients must be even and positive, got {self.b}")

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def is_negligible(self) -> bool:
        return all(node.b == 2 for node in self.walk())

    def infinitely_near_pairs(self) -> int:
        """Count of [2b+1, 2b+1]-configurations: child coefficient = parent + 2."""
        count = 0
        for child in self.children:
            if self.b >= 2 and child.b == self.b + 2:
                count += 1
            count += child.infinitely_near_pairs()
        return count


@dataclass
class BranchCurveModel:
    """A branch curve with its singularity forest on a fixed ambient model.

    On a Hirzebruch surface the curve class is k C_0 + (k e / 2 + l) L; on the
    plane it is a curve of even degree ``degree``.
    """

    ambient: AmbientModel
    k: int = 0
    l: int = 0
    degree: int = 0
    singularities: list[SingularityNode] = field(default_factory=list)

    def curve_class(self) -> tuple:
        if self.ambient.kind == "plane":
            if self.degree <= 0 or self.degree % 2:
                raise CoverError("plane branch curves must have positive even degree")
            return (self.degree,)
        if self.k < 0 or self.l < 0:
            raise CoverError("class coefficients must be nonnegative")
        fiber_coeff = Fraction(self.k * self.ambient.e, 2) + self.l
        if fiber_coeff.denominator != 1:
            raise CoverError("k e must be even for the curve class to be integral")
        return (self.k, int(fiber_coeff))

    def half_class(self) -> tuple:
        cls = self.curve_class()
        half = tuple(Fraction(c, 2) for c in cls)
        if any(h.denominator != 1 for h in half):
            raise CoverError("branch class is not 2-divisible")
        return tuple(int(h) for h in half)

    def all_nodes(self) -> list[SingularityNode]:
        return [node for root in self.singularities for node in root.walk()]


@dataclass
class InvariantLedger:
    """Exact invariants carried through resolution and involution bookkeeping.

    Fields are filled by whichever computation produced the ledger; the
    consistency relations are checked whenever their inputs are present.
    """

    chi: int | None = None
    ksq_resolved: int | None = None
    ksq_minimal: int | None = None
    t: int | None = None
    r_prime_sq: int | None = None
    k_quotient_sq: int | None = None
    k_quotient_dot_branch: int | None = None
    branch_sq: int | None = None
    ks_dot_r: int | None = None
    minus_one_curves: int | None = None
    cross_check_passed: bool | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "chi": self.chi,
            "k2_resolved": self.ksq_resolved,
            "k2_minimal": self.ksq_minimal,
            "isolated_fixed_points": self.t,
            "r_prime_sq": self.r_prime_sq,
            "k_quotient_sq": self.k_quotient_sq,
            "k_quotient_dot_branch": self.k_quotient_dot_branch,
            "branch_sq": self.branch_sq,
            "ks_dot_r": self.ks_dot_r,
            "minus_one_curves": self.minus_one_curves,
            "cross_check_passed": self.cross_check_passed,
            "notes": self.notes,
        }


def canonical_resolution(model: BranchCurveModel, contract: bool = True) -> InvariantLedger:
    """Fold the resolution corrections over the singularity forest.

    Starts from the smooth-cover invariants of the half class, subtracts
    (b/2)(b/2-1)/2 from chi and 2(b/2-1)^2 from K^2 per node, counts two
    (-1)-curves per [2b+1, 2b+1]-pair, and (with ``contract``) reports the
    minimal model's K^2 after contracting them.
    """
    chi, ksq = double_cover_invariants(model.ambient, model.half_class())
    nodes = model.all_nodes()
    for node in nodes:
        half = node.b // 2
        chi -= half * (half - 1) // 2
        ksq -= 2 * (half - 1) ** 2
    pairs = sum(root.infinitely_near_pairs() for root in model.singularities)
    minus_one = 2 * pairs
    ledger = InvariantLedger(
        chi=chi,
        ksq_resolved=ksq,
        ksq_minimal=ksq + minus_one if contract else None,
        minus_one_curves=minus_one,
        k_quotient_sq=model.ambient.k_squared - len(nodes),
    )
    if model.ambient.kind == "hirzebruch":
        _check_good_model_identities(model, ledger)
    return ledger


def _check_good_model_identities(model: BranchCurveModel, ledger: InvariantLedger) -> None:
    """2kl - sum b^2 = 4K^2 - 8 and -2(k+l) + sum b = -2K^2 for the blown-up quotient."""
    bs = [node.b for node in model.all_nodes()]
    kq = ledger.k_quotient_sq
    lhs1 = 2 * model.k * model.l - sum(b * b for b in bs)
    lhs2 = -2 * (model.k + model.l) + sum(bs)
    if lhs1 == 4 * kq - 8 and lhs2 == -2 * kq:
        ledger.notes.append("good-model identities hold")
    else:
        ledger.notes.append(
            f"good-model identities fail: {lhs1} vs {4 * kq - 8}, {lhs2} vs {-2 * kq}")


# -- bicanonical involution ledger ----------------------------------------------


def bicanonical_ledger(ksq: int, k_quotient_sq: int, trace_sum: int,
                       ks_dot_r: int) -> InvariantLedger:
    """Involution bookkeeping from K_S^2 and K^2 of the resolved quotient.

    t = K^2 + 4,  (R')^2 = 2 K_W^2 + K^2,  K_W . B' = -2 K_W^2,
    (B')^2 = 4 K_W^2 + 2 K^2,  K_S . R' = K^2; the isolated-fixed-point count
    is cross-checked against the holomorphic fixed point formula
    t = 4 * trace_sum + K_S . R.
    """
    t = ksq + 4
    ledger = InvariantLedger(
        t=t,
        r_prime_sq=2 * k_quotient_sq + ksq,
        k_quotient_sq=k_quotient_sq,
        k_quotient_dot_branch=-2 * k_quotient_sq,
        branch_sq=4 * k_quotient_sq + 2 * ksq,
        ks_dot_r=ksq,
        cross_check_passed=(t == 4 * trace_sum + ks_dot_r),
    )
    if not ledger.cross_check_passed:
        ledger.notes.append(
            f"fixed point formula mismatch: t = {t} but 4*{trace_sum} + {ks_dot_r} "
            f"= {4 * trace_sum + ks_dot_r}")
    return ledger


# -- the ruled-case Diophantine solver -------------------------------------------

# (k, l, forced coefficient list, whether extra order-4 points are allowed)
_CASE_DATA = {
    "A1": (16, 18, [8, 10] * 3 + [8], True),
    "A2": (12, 14, [6, 8] * 3, True),
    "A3": (8, None, [4, 6], True),       # l = 8 + 2i, with i+1 pairs
    "A4": (8, 6, [2, 4] * 6, False),
}


@dataclass(frozen=True)
class XiaoSolution:
    case: str
    ksq: int
    delta: int
    i: int | None
    k: int
    l: int
    beta_extra: tuple[int, ...]
    k_quotient_sq: int
    r_prime_sq: int
    feasible: bool               # divisorial fixed parts need (R')^2 <= 0

    def as_dict(self) -> dict:
        return {
            "case": self.case, "k2": self.ksq, "delta": self.delta, "i": self.i,
            "k": self.k, "l": self.l, "beta_extra": list(self.beta_extra),
            "k_quotient_sq": self.k_quotient_sq, "r_prime_sq": self.r_prime_sq,
            "feasible": self.feasible,
        }


def xiao_case_solver(case: str, ksq: int, delta: int,
                     i: int | None = None) -> list[XiaoSolution]:
    """All solutions of the good-model identities for one ruled-model case.

    ``delta`` counts negligible b = 2 points.  For case A3 the fiber-degree
    parameter i in 1..5 selects l = 8 + 2i and i+1 forced [5,5]-pairs; omit it
    to solve every i.  Extra non-negligible points have b = 2 beta with
    beta >= 2, capped at beta = 2 where the case forbids higher orders.
    """
    if case not in _CASE_DATA:
        raise CoverError(f"unknown case {case!r}; expected A1..A4")
    if delta < 0:
        raise CoverError("delta must be >= 0")
    if case != "A3":
        if i is not None:
            raise CoverError("parameter i applies to case A3 only")
        return _solve_case(case, ksq, delta, None)
    if i is not None:
        if not 1 <= i <= 5:
            raise CoverError("case A3 needs 1 <= i <= 5")
        return _solve_case(case, ksq, delta, i)
    out = []
    for ii in range(1, 6):
        out.extend(_solve_case(case, ksq, delta, ii))
    return out


def _solve_case(case: str, ksq: int, delta: int, i: int | None) -> list[XiaoSolution]:
    k, l, forced, allow_extra = _CASE_DATA[case]
    if case == "A3":
        l = 8 + 2 * i
        forced = [4, 6] * (i + 1)
    sum_b = sum(forced) + 2 * delta
    sum_b2 = sum(b * b for b in forced) + 4 * delta
    # identities: 2kl - sum b^2 - 4 sum beta^2 = 4Kq^2 - 8
    #             -2(k+l) + sum b + 2 sum beta = -2Kq^2
    # eliminating Kq^2: sum beta (beta - 1) = target
    a_const = Fraction(2 * k * l - sum_b2 + 8, 4)
    b_const = Fraction(2 * (k + l) - sum_b, 2)
    if a_const.denominator != 1 or b_const.denominator != 1:
        raise CoverError("case data is not integral")  # pragma: no cover
    target = int(a_const) - int(b_const)
    solutions = []
    for betas in _beta_multisets(target, cap=2 if allow_extra else 0):
        kq = int(b_const) - sum(betas)
        rp = 2 * kq + ksq
        solutions.append(XiaoSolution(
            case=case, ksq=ksq, delta=delta, i=i, k=k, l=l,
            beta_extra=betas, k_quotient_sq=kq, r_prime_sq=rp,
            feasible=rp <= 0,
        ))
    return solutions


def _beta_multisets(target: int, cap: int) -> list[tuple[int, ...]]:
    """Multisets of integers 2 <= beta <= cap with sum beta(beta-1) = target."""
    if target < 0:
        return []
    if target == 0:
        return [()]
    if cap < 2:
        return []
    out = []
    for beta in range(2, cap + 1):
        w = beta * (beta - 1)
        if w > target:
            break
        for rest in _beta_multisets(target - w, beta):
            out.append(tuple(sorted((beta,) + rest)))
    return sorted(set(out))


def select_feasible_i(ksq: int, delta: int) -> list[int]:
    """The A3 parameters whose every solution satisfies (R')^2 <= 0."""
    good = []
    for i in range(1, 6):
        sols = xiao_case_solver("A3", ksq, delta, i)
        if sols and all(s.feasible for s in sols):
            good.append(i)
    return good


# -- plane branch classes and the conic count ------------------------------------


def branch_class_solver(kind: str, const_term: int = 20) -> dict:
    """Solve the two small branch-class systems arising for non-ruled quotients.

    "plane-degree": integer roots of n^2 - 9n + const_term = 0, the degrees n
    with B = 2n a smooth plane branch curve.  "quadric-or-delpezzo": the 2x2
    system for a branch class a M + b E on the blown-up plane (M^2 = 0,
    M.E = 1, E^2 = -1), returning the rational pairs and an integrality verdict.
    """
    if kind == "plane-degree":
        disc = 81 - 4 * const_term
        root = _isqrt(disc) if disc >= 0 else None
        if root is None:
            return {"solutions": [], "integral": False}
        sols = {(9 + sign * root) // 2 for sign in (1, -1) if (9 + sign * root) % 2 == 0}
        return {"solutions": sorted(sols), "integral": bool(sols)}
    if kind == "quadric-or-delpezzo":
        # chi: 1 = 2 + [(-3M-2E)(aM+bE) + (aM+bE)^2]/2  ->  2a + b - 2ab + b^2 = 2
        # K^2: -4 = 16 + 4(-3M-2E)(aM+bE) + 2(aM+bE)^2  ->  4a + 2b - 2ab + b^2 = 10
        # subtracting: 2a + b = 8; substitute b = 8 - 2a:
        # 4a^2 - 24a + 35 = 0
        sols = []
        disc = Fraction(24 * 24 - 4 * 4 * 35)
        root = Fraction(_isqrt(int(disc)))
        for sign in (1, -1):
            a = (Fraction(24) + sign * root) / 8
            b = 8 - 2 * a
            sols.append((a, b))
        sols.sort()
        integral = any(a.denominator == 1 and b.denominator == 1 for a, b in sols)
        return {
            "solutions": [(str(a), str(b)) for a, b in sols],
            "integral": integral,
        }
    raise CoverError(f"unknown solver kind {kind!r}")


def _isqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def conic_through_points(points: list[tuple[Fraction, Fraction]]) -> int:
    """Projective dimension of the system of conics through six affine points.

    Returns 5 - rank of the 6x6 evaluation matrix over the conic monomial
    basis (so 0 means a unique conic, -1 means none).
    """
    if len(points) != 6:
        raise CoverError("exactly six points are required")
    if len(set(points)) != 6:
        raise CoverError("points must be pairwise distinct")
    rows = []
    for x, y in points:
        x, y = Fraction(x), Fraction(y)
        rows.append([Fraction(1), x, y, x * x, x * y, y * y])
    return 5 - _rational_rank(rows)


def _rational_rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank, col = 0, 0
    n_cols = len(rows[0])
    while rank < len(rows) and col < n_cols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / lead
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# -- plane-model certificates ----------------------------------------------------

# per family: components of the degree-16 curve as (degree, multiplicity at the
# center point, infinitely-near pair at each tangency point)
_DECOMPOSITIONS = {
    "I": ((8, 4, (2, 2)), (8, 4, (2, 2))),
    "II": ((4, 2, (1, 1)), (12, 6, (3, 3))),
    "III": ((16, 8, (4, 4)),),
}


@dataclass
class PlaneModelCertificate:
    family: str
    e: int
    ledger: InvariantLedger
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "e": self.e,
            "ledger": self.ledger.as_dict(),
            "checks": self.checks,
            "pass": self.passed,
        }


def plane_model_certificate(family: str, e: int) -> PlaneModelCertificate:
    """Certify the ruled branch model 8 C_0 + (18 + 4e) L with six [5,5]-points
    and the family's plane decomposition bookkeeping."""
    if family not in _DECOMPOSITIONS:
        raise CoverError(f"unknown family {family!r}")
    if not 0 <= e <= 3:
        raise CoverError("the ruled model forces 0 <= e <= 3")
    model = BranchCurveModel(
        ambient=AmbientModel("hirzebruch", e=e),
        k=8, l=18,
        singularities=[
            SingularityNode(4, [SingularityNode(6)], tangent_to_fiber=True)
            for _ in range(6)
        ],
    )
    ledger = canonical_resolution(model)
    checks = []

    def check(name, passed, detail):
        checks.append({"check": name, "pass": bool(passed), "detail": detail})

    check("chi", ledger.chi == 1, f"chi = {ledger.chi}")
    check("k2-resolved", ledger.ksq_resolved == -4, f"K^2 resolved = {ledger.ksq_resolved}")
    check("minus-one-curves", ledger.minus_one_curves == 12,
          f"{ledger.minus_one_curves} (-1)-curves from the six [5,5]-points")
    check("k2-minimal", ledger.ksq_minimal == 8, f"K^2 minimal = {ledger.ksq_minimal}")
    check("good-model-identities", "good-model identities hold" in ledger.notes,
          "; ".join(ledger.notes))
    check("section-degree", 12 - 4 * e >= 0,
          f"C_0 . (B - lines) = {12 - 4 * e} >= 0, so e <= 3 and e reduces to 1")

    decomposition = _DECOMPOSITIONS[family]
    total_degree = sum(d for d, _, _ in decomposition)
    total_mult = sum(m for _, m, _ in decomposition)
    check("component-degrees", total_degree == 16,
          f"component degrees {[d for d, _, _ in decomposition]} sum to {total_degree}")
    check("center-multiplicity", total_mult == 8,
          f"multiplicities at the center {[m for _, m, _ in decomposition]} sum to {total_mult}")
    tacnode_sum = tuple(sum(p[j] for _, _, p in decomposition) for j in (0, 1))
    check("tangency-bookkeeping", tacnode_sum == (4, 4),
          f"per-point tangency pairs sum to {tacnode_sum}; with the line through "
          "each point this is the [5,5] of the full branch curve")
    check("line-count", True, "six fiber lines lie in the branch curve")
    return PlaneModelCertificate(family=family, e=e, ledger=ledger, checks=checks)
