"""The three explicit curve families and their end-to-end certificates.

Each family gives a genus-3 hyperelliptic curve with a faithful group action
whose quotient is elliptic:

    I    y^2 = (x^2-a)(x^2-b)(x^2-1/a)(x^2-1/b)      G = C2 x C2
    II   y^2 = x (x^3-a)(x^3-1/a)                    G = S3
    III  y^2 = (x^4-a)(x^4-1/a)                      G = D4

instantiated at parameters a = alpha^k with alpha rational so that all branch
data lives in a cyclotomic-rational field (conductor 12, or 24 for family III
where certifying the reflection liftings needs a square root of i).  The
certificate checks, exactly: genus and smoothness, the abstract group of the
lifted action, every fixed-point count, the quotient genera of all subgroups,
the etale genus-2 quotient making the curve simultaneously hyperelliptic and
bielliptic, the partition identity for the four-group generated with the
hyperelliptic involution, and the branch data of the extended action:
branch degree of C -> C/G, branch degree and orders of C -> C/G0, whether the
defining polynomial is fixed (not just projectively) by every generator, and
whether G0 splits as G x C2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from . import genvec
from .cyclo import CycloField, CycloNum, cyclo_arith
from .genvec import GeneratingVector, Signature
from .hyperell import (ActionCertificate, CurveAut, CurveError, HyperCurve,
                       MobiusMap, build_curve, fixed_point_count, fixed_points,
                       g0_branch_data, group_action,
                       hyperelliptic_bielliptic_certificate, identity_aut,
                       lift_mobius)
from .isoclass import unobstructedness_check
from .smallgroups import _morphism_search, build_group

FAMILIES = ("I", "II", "III")


def _rational_kth_root(q: Fraction, k: int) -> Fraction | None:
    if q <= 0:
        return None
    num = round(q.numerator ** (1.0 / k))
    den = round(q.denominator ** (1.0 / k))
    for dn in (num - 1, num, num + 1):
        for dd in (den - 1, den, den + 1):
            if dn > 0 and dd > 0 and Fraction(dn, dd) ** k == q:
                return Fraction(dn, dd)
    return None


@dataclass
class FamilyCurve:
    label: str
    params: dict[str, Fraction]
    field: CycloField
    curve: HyperCurve
    generators: dict[str, CurveAut]           # the published lifting choice
    rejected_liftings: dict[str, CurveAut]    # the other lifting of each generator
    abstract_group_spec: str
    abstract_vector: GeneratingVector         # genus-1-side vector with matching counts


def family_curve(label: str, **params) -> FamilyCurve:
    """Build a family member at the given parameters (defaults: the smallest
    instances with rational alpha: I at a=4, b=9; II at a=8; III at a=16)."""
    if label == "I":
        return _family_one(Fraction(params.pop("a", 4)), Fraction(params.pop("b", 9)),
                           **params)
    if label == "II":
        return _family_two(Fraction(params.pop("a", 8)), **params)
    if label == "III":
        return _family_three(Fraction(params.pop("a", 16)), **params)
    raise CurveError(f"unknown family {label!r}; expected one of {FAMILIES}")


def _select_lifting(curve: HyperCurve, mobius: MobiusMap, scale: CycloNum
                    ) -> tuple[CurveAut, CurveAut]:
    """(wanted, other) among the two liftings, by the target y-multiplier."""
    want = CurveAut(curve, mobius, scale)
    plus, minus = lift_mobius(curve, mobius)
    if plus == want:
        return plus, minus
    if minus == want:
        return minus, plus
    raise CurveError("requested y-multiplier is not a lifting")  # pragma: no cover


def _family_one(a: Fraction, b: Fraction, conductor: int = 12) -> FamilyCurve:
    alpha = _rational_kth_root(a, 2)
    beta = _rational_kth_root(b, 2)
    if alpha is None or beta is None:
        raise CurveError(
            "family I needs a and b to be squares of rationals so the branch "
            "points stay in the cyclotomic-rational field")
    F = cyclo_arith(conductor)
    r = F.rational
    roots = [r(s * v) for v in (alpha, beta, 1 / alpha, 1 / beta) for s in (1, -1)]
    curve = build_curve(roots, False, F)
    one, zero = F.one, F.zero
    e1, e1_alt = _select_lifting(curve, MobiusMap(r(-1), zero, zero, one), one)
    e2, e2_alt = _select_lifting(curve, MobiusMap(zero, one, one, zero), r(-1))

    group = build_group("C2^2")
    i1, i2, i3 = group.index("e1"), group.index("e2"), group.index("e3")
    vector = GeneratingVector(group, Signature(1, (2, 2)), (i1, i1), (i2, i3))
    return FamilyCurve("I", {"a": a, "b": b}, F, curve,
                       {"e1": e1, "e2": e2}, {"e1": e1_alt, "e2": e2_alt},
                       "C2^2", vector)


def _abstract_vector(spec: str, sig: Signature) -> GeneratingVector:
    """Canonical genus-1-side vector; the fixed-count profile is the same for
    every admissible choice (the branch images share one conjugate cyclic
    subgroup), so the first enumerated vector serves as the certificate's
    group-level reference."""
    vectors = genvec.enumerate_vectors(build_group(spec), sig)
    assert vectors, "paper-side vectors exist for the certified families"
    return vectors[0]


def _family_two(a: Fraction, conductor: int = 12) -> FamilyCurve:
    alpha = _rational_kth_root(a, 3)
    if alpha is None or a in (1, -1) or a == 0:
        raise CurveError(
            "family II needs a = alpha^3 with alpha rational and a != 0, +-1")
    F = cyclo_arith(conductor)
    r = F.rational
    xi = F.zeta(conductor // 3)  # primitive cube root of unity
    roots = [F.zero]
    for k in range(3):
        roots.append(r(alpha) * xi ** k)
        roots.append(r(1 / alpha) * xi ** k)
    curve = build_curve(roots, True, F)
    one, zero = F.one, F.zero
    rot, rot_alt = _select_lifting(curve, MobiusMap(xi, zero, zero, one), xi * xi)
    ref, ref_alt = _select_lifting(curve, MobiusMap(zero, one, one, zero), r(-1))

    return FamilyCurve("II", {"a": a}, F, curve,
                       {"r": rot, "s": ref}, {"r": rot_alt, "s": ref_alt},
                       "S3", _abstract_vector("S3", Signature(1, (3,))))


def _family_three(a: Fraction, conductor: int = 24) -> FamilyCurve:
    alpha = _rational_kth_root(a, 4)
    if alpha is None or a in (1, -1):
        raise CurveError(
            "family III needs a = alpha^4 with alpha rational and a != +-1")
    F = cyclo_arith(conductor)
    r = F.rational
    i_unit = F.zeta(conductor // 4)
    roots = []
    for k in range(4):
        roots.append(r(alpha) * i_unit ** k)
        roots.append(r(1 / alpha) * i_unit ** k)
    curve = build_curve(roots, False, F)
    one, zero = F.one, F.zero
    rot, rot_alt = _select_lifting(curve, MobiusMap(i_unit, zero, zero, one), r(-1))
    ref, ref_alt = _select_lifting(curve, MobiusMap(zero, one, one, zero), r(-1))

    return FamilyCurve("III", {"a": a}, F, curve,
                       {"r": rot, "s": ref}, {"r": rot_alt, "s": ref_alt},
                       "D4", _abstract_vector("D4", Signature(1, (2,))))


# -- the certificate -------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"check": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class CurveCertificate:
    family: str
    params: dict[str, str]
    conductor: int
    genus: int
    group_spec: str
    action: ActionCertificate
    extended_action: ActionCertificate | None
    checks: list[Check] = dataclass_field(default_factory=list)
    fixed_point_table: dict[str, int] = dataclass_field(default_factory=dict)
    quotient_genera: dict[str, int] = dataclass_field(default_factory=dict)
    alternative_liftings: dict[str, dict] = dataclass_field(default_factory=dict)
    deg_d: int = 0
    deg_d0: int = 0
    d0_orders: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "conductor": self.conductor,
            "genus": self.genus,
            "group": self.group_spec,
            "fixed_points": self.fixed_point_table,
            "quotient_genera": self.quotient_genera,
            "branch_degree_elliptic_quotient": self.deg_d,
            "branch_degree_extended_quotient": self.deg_d0,
            "extended_branch_orders": list(self.d0_orders),
            "alternative_liftings": self.alternative_liftings,
            "checks": [c.as_dict() for c in self.checks],
            "pass": self.passed,
        }


def _gen_names(fc: FamilyCurve) -> dict[CurveAut, str]:
    """Readable names for the closure elements, as shortest words in the generators."""
    gens = list(fc.generators.items())
    ident = identity_aut(fc.curve)
    names: dict[CurveAut, str] = {ident: "id"}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for nm, gen in gens:
                w = gen.compose(el)
                if w not in names:
                    base = names[el]
                    names[w] = nm if base == "id" else nm + "*" + base
                    nxt.append(w)
        frontier = nxt
    return names


def certify_family(label: str, **params) -> CurveCertificate:
    """Full exact certificate for one family member; every claim is a Check."""
    fc = family_curve(label, **params)
    curve = fc.curve
    field = fc.field
    checks: list[Check] = []

    def check(name: str, passed: bool, detail: str = "") -> None:
        checks.append(Check(name, bool(passed), detail))

    check("genus", curve.genus == 3, f"genus {curve.genus}")
    check("smooth", True, "branch roots pairwise distinct (validated at build)")

    gens = list(fc.generators.values())
    action = group_action(curve, gens)
    check("group-order", action.order == build_group(fc.abstract_group_spec).order,
          f"|G| = {action.order}")
    check("group-match", action.matched_spec == fc.abstract_group_spec,
          f"closure is {action.matched_spec}")

    names = _gen_names(fc)
    fixed_table: dict[str, int] = {}
    for i, el in enumerate(action.elements):
        if el.is_identity():
            continue
        fixed_table[names.get(el, f"elem{i}")] = action.fixed_counts[i]

    # family-specific fixed-point claims
    if label == "I":
        e1, e2 = fc.generators["e1"], fc.generators["e2"]
        pts = {p.describe() for p in fixed_points(e1)}
        check("fixed-points-e1",
              pts == {"(x=0, y=1)", "(x=0, y=-1)", "(inf, w=1)", "(inf, w=-1)"},
              f"e1 fixes {sorted(pts)}")
        check("fixed-points-e2", fixed_point_count(e2) == 0, "e2 acts freely")
        check("fixed-points-e3", fixed_point_count(e1.compose(e2)) == 0, "e3 acts freely")
    elif label == "II":
        rot, ref = fc.generators["r"], fc.generators["s"]
        pts = {p.describe() for p in fixed_points(rot)}
        check("fixed-points-r", pts == {"(x=0, y=0)", "(inf, w=0)"},
              f"r fixes {sorted(pts)}")
        check("fixed-points-s", fixed_point_count(ref) == 0, "s acts freely")
    else:
        rot, ref = fc.generators["r"], fc.generators["s"]
        r2 = rot.compose(rot)
        check("fixed-points-r2", fixed_point_count(r2) == 4,
              f"r^2 fixes {fixed_point_count(r2)} points")
        check("fixed-points-r", fixed_point_count(rot) == 0, "r acts freely")
        check("fixed-points-s", fixed_point_count(ref) == 0, "s acts freely")
        check("fixed-points-rs", fixed_point_count(rot.compose(ref)) == 0,
              "rs acts freely")

    # elliptic quotient and its branch degree
    check("elliptic-quotient", action.quotient_genus_full == 1,
          f"g(C/G) = {action.quotient_genus_full}")
    deg_d = len(action.branch_orders)
    expected_deg_d = 2 if label == "I" else 1
    check("branch-degree", deg_d == expected_deg_d and
          all(o == {"I": 2, "II": 3, "III": 2}[label] for o in action.branch_orders),
          f"C -> C/G branched over {deg_d} point(s) with orders {list(action.branch_orders)}")

    # quotient genera of all subgroups, exposed by order
    genera_table: dict[str, int] = {}
    for sub, genus_val in sorted(action.quotient_genera.items(),
                                 key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        key = "{" + ",".join(action.group.names[i] for i in sorted(sub)) + "}"
        genera_table[key] = genus_val
    if label == "I":
        pair_genera = sorted(g for sub, g in action.quotient_genera.items() if len(sub) == 2)
        check("involution-quotient-genera", pair_genera == [1, 2, 2],
              f"order-2 quotients have genera {pair_genera}")

    # hyperelliptic-bielliptic certificate and the four-group partition identity
    biell = hyperelliptic_bielliptic_certificate(curve, action)
    check("etale-genus-2-quotient", biell.etale_involution is not None,
          "a free involution with genus-2 quotient exists"
          if biell.etale_involution is not None
          else "no free involution with genus-2 quotient")
    if biell.partition is not None:
        check("partition-identity", biell.passed,
              f"{curve.genus}+{2 * biell.genus_four_group} = {biell.genus_sigma}"
              f"+{biell.genus_tau}+{biell.genus_sigma_tau}"
              f" (lhs {biell.partition.lhs}, rhs {biell.partition.rhs})")

    cert = CurveCertificate(
        family=label,
        params={k: str(v) for k, v in fc.params.items()},
        conductor=field.n,
        genus=curve.genus,
        group_spec=fc.abstract_group_spec,
        action=action,
        extended_action=None,  # set below
        checks=checks,
        fixed_point_table=fixed_table,
        quotient_genera=genera_table,
        deg_d=deg_d,
    )

    # extended action G0 = <G, tau>
    g0 = g0_branch_data(curve, action)
    extended = g0.extended
    cert.extended_action = extended
    check("extended-order", extended.order == 2 * action.order,
          f"|G0| = {extended.order}")
    check("rational-extended-quotient", g0.quotient_genus == 0,
          f"g(C/G0) = {g0.quotient_genus}")
    cert.deg_d0 = g0.deg_d0
    cert.d0_orders = g0.orders
    expected_d0 = {"I": (2, 2, 2, 2, 2), "II": (2, 2, 2, 6), "III": (2, 2, 2, 4)}[label]
    check("extended-branch-data", g0.orders == expected_d0,
          f"C -> C/G0 branched with orders {list(g0.orders)}")
    check("moduli-open-condition", unobstructedness_check(cert.deg_d, cert.deg_d0),
          f"deg D0 = {cert.deg_d0} = deg D + 3 = {cert.deg_d} + 3")

    # the polynomial character: trivial on the whole lifted action
    lam_detail = ", ".join(
        f"{names.get(action.elements[i], i)}: {v}" for i, v in g0.lambda_values.items())
    check("polynomial-character-trivial", g0.lambda_trivial,
          f"character values {lam_detail}")

    # splitting G0 = G x C2
    check("extension-splits", g0.splits_as_product,
          f"G0 is {extended.matched_spec}, isomorphic to {fc.abstract_group_spec} x C2")

    # abstract-vector agreement: counts by element order must match the
    # coset-enumeration counts of the genus-1-side generating vector
    check("vector-agreement", _vector_counts_agree(fc, action),
          "curve-level fixed counts match the generating-vector counts")

    # the rejected liftings, reported rather than assumed unusable
    for nm, alt in fc.rejected_liftings.items():
        cert.alternative_liftings[nm] = {
            "map": alt.describe(),
            "fixed_points": fixed_point_count(alt) if not alt.is_identity() else None,
        }

    return cert


def _vector_counts_agree(fc: FamilyCurve, action: ActionCertificate) -> bool:
    """Some isomorphism abstract-group -> vector-group aligns all fixed counts."""
    vec = fc.abstract_vector
    vg = vec.group
    curve_counts = {action.to_abstract[i]: action.fixed_counts.get(i, 0)
                    for i in range(action.order)}
    for phi in _morphism_search(action.group, vg, all_results=True):
        if all(genvec.fixed_point_count(vec, phi[x]) == curve_counts[x]
               for x in range(action.group.order) if x != action.group.identity):
            return True
    return False
