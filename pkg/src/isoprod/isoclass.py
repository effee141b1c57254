"""Free diagonal actions on a product of curves and the classification driver.

A pair of generating vectors over one group G (one for each factor curve)
assembles into a quotient surface S = (C x F)/G.  The action is free exactly
when the two stabilizer sets are disjoint; in that case S is a minimal
surface of general type with

    chi(O_S) = (g(C)-1)(g(F)-1) / |G|,   K^2 = 8 chi,   c2 = 12 chi - K^2,
    q = g(C/G) + g(F/G),                 p_g = q + chi - 1,

and the two induced fibrations have one multiple fiber per branch point,
with multiplicity the branch order and reduced fiber the quotient of the
opposite curve by the cyclic group of the branch image.

The driver enumerates all (group, vector pair) candidates matching target
invariants, starting from the multiple-fiber equation

    c2 = (2 g(F) - 2) sum_i (1 - 1/n_i)

which bounds g(F) and pins |G| = 2 (g(F)-1) in the chi = 1 setting with a
genus-3 pencil.  Rejected groups are logged with machine-readable reasons.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import genvec
from .genvec import GeneratingVector, Signature
from .hurwitzmoves import hurwitz_orbits
from .smallgroups import (DEFAULT_ORDER_CAP, Group, build_group, catalog_complete,
                          groups_of_order)

# exclusion reason codes
NO_ADMISSIBLE_VECTOR = "NO_ADMISSIBLE_VECTOR"
NON_GENERATING = "NON_GENERATING"
NEVER_FREE = "NEVER_FREE"


class ClassifyError(ValueError):
    """Raised for inconsistent targets or invalid assembly input."""


@dataclass(frozen=True)
class MultipleFiberSolution:
    """A genus g_f and multiplicity multiset solving c2 = (2g_f-2) sum(1 - 1/n_i)."""

    g_f: int
    orders: tuple[int, ...]

    def check(self, c2: int) -> bool:
        total = sum(Fraction(n - 1, n) for n in self.orders)
        return Fraction(c2) == (2 * self.g_f - 2) * total


def multiple_fiber_solutions(c2: int, g_min: int,
                             g_max_hint: int | None = None) -> list[MultipleFiberSolution]:
    """All (g_f, (n_1 <= ... <= n_k)) with c2 = (2 g_f - 2) sum_i (1 - 1/n_i).

    Each term is >= 1/2, which bounds g_f <= c2 + 1 and, for fixed g_f, the
    number of terms; the n_i are then enumerated like Egyptian fractions.
    """
    if c2 <= 0:
        raise ClassifyError("c2 must be positive")
    g_top = c2 + 1 if g_max_hint is None else min(g_max_hint, c2 + 1)
    out = []
    for g_f in range(max(g_min, 2), g_top + 1):
        target = Fraction(c2, 2 * g_f - 2)
        # k terms in (target, 2*target]: sum it up as sum(1/n_i) = k - target
        for k in range(max(1, int(target) + (0 if target.denominator > 1 else 1)),
                       int(2 * target) + 1):
            if not (target < k <= 2 * target):
                continue
            for orders in _unit_fraction_multisets(k - target, k, 2):
                out.append(MultipleFiberSolution(g_f, orders))
    out.sort(key=lambda s: (s.g_f, s.orders))
    return out


def _unit_fraction_multisets(total: Fraction, k: int, n_min: int):
    """Ascending multisets (n_1 <= ... <= n_k), n_i >= n_min, sum(1/n_i) = total."""
    if k == 0:
        if total == 0:
            yield ()
        return
    if total <= 0:
        return
    # remaining k terms, each <= 1/n: need k/n >= total  ->  n <= k/total
    n = max(n_min, int(1 / total) + (0 if (1 / total).denominator > 1 else 0))
    if Fraction(1, n) > total:
        n += 1
    while k * Fraction(1, n) >= total:
        for rest in _unit_fraction_multisets(total - Fraction(1, n), k - 1, n):
            yield (n,) + rest
        n += 1


@dataclass(frozen=True)
class ProductSurface:
    """A quotient (C x F)/G presented by its two generating vectors."""

    group: Group
    vec_c: GeneratingVector
    vec_f: GeneratingVector
    g_c: int
    g_f: int
    free: bool


@dataclass(frozen=True)
class InvariantSet:
    chi: int
    ksq: int
    c2: int
    pg: int
    q: int
    multiple_fibers_alpha: tuple[tuple[int, int], ...]  # (multiplicity, reduced genus)
    multiple_fibers_beta: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "chi": self.chi, "k2": self.ksq, "c2": self.c2,
            "pg": self.pg, "q": self.q,
            "alpha_multiple_fibers": [list(t) for t in self.multiple_fibers_alpha],
            "beta_multiple_fibers": [list(t) for t in self.multiple_fibers_beta],
        }


def assemble(vec_c: GeneratingVector, vec_f: GeneratingVector) -> ProductSurface:
    """Pair two vectors over one group; the free flag records stabilizer disjointness."""
    if vec_c.group != vec_f.group:
        raise ClassifyError("vectors live over different groups")
    free = not genvec.stabilizer_set(vec_c).intersects(genvec.stabilizer_set(vec_f))
    return ProductSurface(
        group=vec_c.group,
        vec_c=vec_c,
        vec_f=vec_f,
        g_c=genvec.rh_genus(vec_c.group.order, vec_c.signature),
        g_f=genvec.rh_genus(vec_f.group.order, vec_f.signature),
        free=free,
    )


def surface_invariants(ps: ProductSurface) -> InvariantSet:
    """Numerical invariants of the free quotient, plus both multiple-fiber lists."""
    if not ps.free:
        raise ClassifyError("invariants require a free action")
    n = ps.group.order
    chi_num = (ps.g_c - 1) * (ps.g_f - 1)
    if chi_num % n:
        raise ClassifyError("chi of the product is not divisible by the group order")
    chi = chi_num // n
    ksq = 8 * chi
    c2 = 12 * chi - ksq
    q = ps.vec_c.signature.base_genus + ps.vec_f.signature.base_genus
    pg = q + chi - 1

    def fibers(vec_here, vec_other):
        out = []
        for gi in vec_here.branch:
            mult = vec_here.group.element_order(gi)
            reduced = genvec.quotient_genus(vec_other, vec_here.group.cyclic_subgroup(gi))
            out.append((mult, reduced))
        return tuple(sorted(out))

    return InvariantSet(
        chi=chi, ksq=ksq, c2=c2, pg=pg, q=q,
        multiple_fibers_alpha=fibers(ps.vec_c, ps.vec_f),
        multiple_fibers_beta=fibers(ps.vec_f, ps.vec_c),
    )


def moduli_dimension(sig_c: Signature, sig_f: Signature) -> int:
    """(3g'_C - 3 + r_C) + (3g'_F - 3 + r_F), the dimension of the family."""
    return (3 * sig_c.base_genus - 3 + sig_c.r) + (3 * sig_f.base_genus - 3 + sig_f.r)


def unobstructedness_check(deg_d: int, deg_d0: int) -> bool:
    """Degree condition under which the family is open in moduli: deg D0 = deg D + 3."""
    if deg_d < 0 or deg_d0 < 0:
        raise ClassifyError("degrees must be nonnegative")
    return deg_d0 == deg_d + 3


@dataclass
class FamilyReport:
    family: str
    group_spec: str
    sig_c: Signature
    sig_f: Signature
    g_c: int
    g_f: int
    invariants: InvariantSet
    c_side_vector_count: int
    c_side_aut_classes: int
    f_side_vector_count: int
    f_side_orbit_count: int
    dimension: int
    example_pair: ProductSurface
    exclusion_log: list[tuple[str, str, str]] = field(default_factory=list)
    orbit_discrepancy: bool = False
    c_side_equivalence: str = (
        "automorphisms only; genus-1 braid-type moves are not defined here, "
        "so irreducibility of the genus-1 side rests on its explicit equation family")

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "group": self.group_spec,
            "c_signature": str(self.sig_c),
            "f_signature": str(self.sig_f),
            "g_c": self.g_c,
            "g_f": self.g_f,
            "invariants": self.invariants.as_dict(),
            "c_side_vector_count": self.c_side_vector_count,
            "c_side_aut_classes": self.c_side_aut_classes,
            "c_side_equivalence": self.c_side_equivalence,
            "f_side_vector_count": self.f_side_vector_count,
            "f_side_orbit_count": self.f_side_orbit_count,
            "orbit_discrepancy": self.orbit_discrepancy,
            "dimension": self.dimension,
            "example_pair": {
                "c_vector": self.example_pair.vec_c.names(),
                "f_vector": self.example_pair.vec_f.names(),
            },
            "exclusion_log": [list(e) for e in self.exclusion_log],
        }


@dataclass
class ClassificationResult:
    families: list[FamilyReport]
    exclusion_log: list[tuple[str, str, str]]
    experimental: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(f.orbit_discrepancy for f in self.families)

    def as_dict(self) -> dict:
        return {
            "families": [f.as_dict() for f in self.families],
            "exclusion_log": [list(e) for e in self.exclusion_log],
            "experimental": self.experimental,
            "notes": self.notes,
            "pass": self.passed,
        }


def _aut_classes(vectors: list[GeneratingVector]) -> int:
    """Number of Aut(G)-orbits on a vector list (genus-1 sides use this only)."""
    if not vectors:
        return 0
    auts = vectors[0].group.automorphisms()
    seen, classes = set(), 0
    for v in sorted(vectors, key=GeneratingVector.key):
        if v.key() in seen:
            continue
        classes += 1
        for a in auts:
            branch = tuple(a(x) for x in v.branch)
            handles = tuple(a(x) for x in v.handles)
            seen.add((branch, handles))
    return classes


def _try_enumerate(group: Group, sig: Signature, exclude=frozenset()):
    """Vectors plus the reason code when there are none."""
    vectors = genvec.enumerate_vectors(group, sig, exclude=exclude)
    if vectors:
        return vectors, None
    relaxed = _relation_satisfiable(group, sig, exclude)
    return [], (NON_GENERATING if relaxed else NO_ADMISSIBLE_VECTOR)


def _relation_satisfiable(group: Group, sig: Signature, exclude) -> bool:
    """Whether order and long-relation constraints alone admit a tuple."""
    candidates = [
        [x for x in group.elements()
         if group.element_order(x) == m and x not in exclude]
        for m in sig.orders
    ]
    if any(not c for c in candidates):
        return False
    handle_space = itertools.product(group.elements(), repeat=2 * sig.base_genus)
    for handles in handle_space:
        tail = group.identity
        for a, b in zip(handles[0::2], handles[1::2]):
            tail = group.mul(tail, group.commutator(a, b))
        # need product of branch images == tail^-1
        target = group.inv(tail)
        if _product_reachable(group, candidates, target):
            return True
    return False


def _product_reachable(group: Group, candidates, target: int) -> bool:
    reachable = {group.identity}
    for cands in candidates:
        reachable = {group.mul(p, x) for p in reachable for x in cands}
    return target in reachable


def classify(pg: int, q: int, ksq: int, bicanonical_deg2: bool = False,
             group_cap: int = DEFAULT_ORDER_CAP, workers: int = 1,
             orbit_cap: int = 10 ** 6) -> ClassificationResult:
    """Enumerate quotient families with the target invariants.

    With ``bicanonical_deg2`` the search is the exact degree-2-bicanonical
    setting: genus-3 pencil (so |G| = 2(g_f - 1), g_f >= 3), F-side signature
    (0; 2,2,2,2,2,2), C-side base genus 1 with the multiple-fiber orders.
    Without it the driver is a general quotient enumerator over the built-in
    catalog and the result is flagged experimental.
    """
    chi = pg - q + 1
    if chi < 1:
        raise ClassifyError("targets require chi >= 1")
    if ksq != 8 * chi:
        raise ClassifyError(
            f"targets are inconsistent: K^2 must equal 8*chi = {8 * chi}, got {ksq}")
    c2 = 12 * chi - ksq

    if bicanonical_deg2:
        if (pg, q) != (1, 1):
            raise ClassifyError("the degree-2-bicanonical driver is specific to pg = q = 1")
        return _classify_bicanonical(c2, group_cap, workers, orbit_cap)
    return _classify_general(chi, q, c2, group_cap, workers, orbit_cap)


def _classify_bicanonical(c2: int, group_cap: int, workers: int,
                          orbit_cap: int) -> ClassificationResult:
    solutions = multiple_fiber_solutions(c2, g_min=3)
    exclusions: list[tuple[str, str, str]] = []
    notes: list[str] = []
    sig_f = Signature(0, (2,) * 6)

    def examine(args):
        sol, group = args
        sig_c = Signature(1, sol.orders)
        local_excl = []
        c_vectors, reason = _try_enumerate(group, sig_c)
        if reason:
            local_excl.append((group.spec, reason, "no genus-1-side vector"))
            return None, local_excl
        f_vectors, reason = _try_enumerate(group, sig_f)
        if reason:
            local_excl.append((group.spec, reason, "no genus-0-side vector"))
            return None, local_excl
        # freeness constraint taken from the first freely pairable genus-1-side
        # vector; the constrained set is everything pairable with it
        pair = _first_free_pair(c_vectors, f_vectors)
        if pair is None:
            local_excl.append((group.spec, NEVER_FREE,
                               "every vector pair shares a stabilizer"))
            return None, local_excl
        vc = pair[0]
        banned = genvec.stabilizer_set(vc)
        constrained = [v for v in f_vectors
                       if not genvec.stabilizer_set(v).intersects(banned)]
        ps = assemble(vc, constrained[0])
        inv = surface_invariants(ps)
        orbit = hurwitz_orbits(constrained, use_aut=True, workers=workers,
                               orbit_cap=orbit_cap)
        report = FamilyReport(
            family="",
            group_spec=group.spec,
            sig_c=sig_c,
            sig_f=sig_f,
            g_c=ps.g_c,
            g_f=ps.g_f,
            invariants=inv,
            c_side_vector_count=len(c_vectors),
            c_side_aut_classes=_aut_classes(c_vectors),
            f_side_vector_count=len(constrained),
            f_side_orbit_count=orbit.orbit_count,
            dimension=moduli_dimension(sig_c, sig_f),
            example_pair=ps,
            orbit_discrepancy=orbit.orbit_count != 1,
        )
        return report, local_excl

    jobs = []
    for sol in solutions:
        order = 2 * (sol.g_f - 1)
        if order > group_cap:
            notes.append(f"group order {order} above cap {group_cap}; tier skipped")
            continue
        groups = groups_of_order(order, cap=group_cap)
        if not catalog_complete(order):
            notes.append(f"catalog incomplete for order {order}; results partial")
        jobs.extend((sol, g) for g in groups)

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(examine, jobs))
    else:
        results = [examine(j) for j in jobs]

    families = []
    for (sol, group), (report, local_excl) in zip(jobs, results):
        exclusions.extend(local_excl)
        if report is not None:
            families.append(report)
    # canonical order: the report does not depend on catalog enumeration order
    exclusions.sort(key=lambda e: (_order_of_spec(e[0]), e[0], e[1]))
    families.sort(key=lambda f: (f.g_f, f.group_spec))
    roman = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"]
    for i, fam in enumerate(families):
        fam.family = roman[i] if i < len(roman) else f"F{i + 1}"
        # per-family log: the rejected alternatives from the same order tier
        fam.exclusion_log = [
            e for e in exclusions if _order_of_spec(e[0]) == 2 * (fam.g_f - 1)
        ]
    return ClassificationResult(families, exclusions, experimental=False, notes=notes)


_SPEC_ORDER_CACHE: dict[str, int] = {}


def _order_of_spec(spec: str) -> int:
    if spec not in _SPEC_ORDER_CACHE:
        _SPEC_ORDER_CACHE[spec] = build_group(spec, cap=4096).order
    return _SPEC_ORDER_CACHE[spec]


def _classify_general(chi: int, q: int, c2: int, group_cap: int, workers: int,
                      orbit_cap: int, search_budget: int = 2 * 10 ** 6
                      ) -> ClassificationResult:
    """Catalog-wide quotient enumerator (experimental; see module docstring)."""
    if q != 1:
        raise ClassifyError("the general enumerator currently handles q = 1 only")
    exclusions: list[tuple[str, str, str]] = []
    notes = ["experimental: general enumerator over the built-in catalog"]
    families: list[FamilyReport] = []
    max_catalog = min(group_cap, 16)
    for order in range(2, max_catalog + 1):
        groups = groups_of_order(order, cap=group_cap)
        if groups and not catalog_complete(order):
            notes.append(f"catalog incomplete for order {order}; results partial")
        for group in groups:
            found = _general_for_group(group, chi, c2, exclusions, notes,
                                       workers, orbit_cap, search_budget)
            families.extend(found)
    exclusions.sort(key=lambda e: (_order_of_spec(e[0]), e[0], e[2]))
    families.sort(key=lambda f: (f.g_f, f.group_spec, str(f.sig_c), str(f.sig_f)))
    for i, fam in enumerate(families):
        fam.family = f"F{i + 1}"
    return ClassificationResult(families, exclusions, experimental=True, notes=notes)


def _general_for_group(group: Group, chi: int, c2: int, exclusions, notes,
                       workers: int, orbit_cap: int, budget: int) -> list[FamilyReport]:
    n = group.order
    out = []
    target = n * chi  # (g_c - 1)(g_f - 1)
    divisors = [d for d in range(1, target + 1) if target % d == 0]
    element_orders = sorted({group.element_order(x) for x in group.elements() if x})
    for d_c in divisors:
        d_f = target // d_c
        g_c, g_f = d_c + 1, d_f + 1
        sigs_c = _signatures_for(element_orders, n, base=1, genus=g_c)
        sigs_f = _signatures_for(element_orders, n, base=0, genus=g_f)
        for sig_c in sigs_c:
            for sig_f in sigs_f:
                if _search_size(group, sig_c) + _search_size(group, sig_f) > budget:
                    notes.append(
                        f"{group.spec} {sig_c}|{sig_f}: candidate space above budget; skipped")
                    continue
                vc, reason = _try_enumerate(group, sig_c)
                if reason:
                    exclusions.append((group.spec, reason, f"signature {sig_c}"))
                    continue
                vf, reason = _try_enumerate(group, sig_f)
                if reason:
                    exclusions.append((group.spec, reason, f"signature {sig_f}"))
                    continue
                pair = _first_free_pair(vc, vf)
                if pair is None:
                    exclusions.append((group.spec, NEVER_FREE,
                                       f"signatures {sig_c}|{sig_f}"))
                    continue
                ps = assemble(*pair)
                inv = surface_invariants(ps)
                banned = genvec.stabilizer_set(pair[0]).elements
                constrained = [v for v in vf
                               if not genvec.stabilizer_set(v).intersects(
                                   genvec.StabilizerSet(banned))]
                orbit = hurwitz_orbits(constrained, use_aut=True, workers=workers,
                                       orbit_cap=orbit_cap)
                out.append(FamilyReport(
                    family="",
                    group_spec=group.spec,
                    sig_c=sig_c,
                    sig_f=sig_f,
                    g_c=ps.g_c,
                    g_f=ps.g_f,
                    invariants=inv,
                    c_side_vector_count=len(vc),
                    c_side_aut_classes=_aut_classes(vc),
                    f_side_vector_count=len(constrained),
                    f_side_orbit_count=orbit.orbit_count,
                    dimension=moduli_dimension(sig_c, sig_f),
                    example_pair=ps,
                    orbit_discrepancy=False,
                ))
    return out


def _signatures_for(element_orders, n: int, base: int, genus: int) -> list[Signature]:
    """Signatures over the given base whose Riemann-Hurwitz genus is ``genus``."""
    need = Fraction(2 * genus - 2 - n * (2 * base - 2), n)
    out = []
    if need == 0:
        out.append(Signature(base, ()))
    if need <= 0:
        return out
    usable = [m for m in element_orders if m >= 2]
    for k in range(1, int(2 * need) + 1):
        for orders in _order_multisets(need, k, usable, 0):
            out.append(Signature(base, orders))
    return out


def _order_multisets(total: Fraction, k: int, usable, start: int):
    if k == 0:
        if total == 0:
            yield ()
        return
    for i in range(start, len(usable)):
        m = usable[i]
        term = Fraction(m - 1, m)
        if term > total:
            continue
        if k * Fraction(1, 2) > total:  # each remaining term >= 1/2
            if total > k * Fraction(usable[-1] - 1, usable[-1]):
                continue
        for rest in _order_multisets(total - term, k - 1, usable, i):
            yield (m,) + rest


def _search_size(group: Group, sig: Signature) -> int:
    size = 1
    for m in sig.orders[:-1] if sig.base_genus == 0 and sig.r else sig.orders:
        size *= sum(1 for x in group.elements() if group.element_order(x) == m)
        if size > 10 ** 9:
            return size
    size *= group.order ** (2 * sig.base_genus)
    return size


def _first_free_pair(vc_list, vf_list):
    # freeness depends only on the stabilizer sets, so dedupe by them; keeping
    # insertion order makes this return exactly the first free pair
    by_c: dict[frozenset, GeneratingVector] = {}
    for v in vc_list:
        by_c.setdefault(genvec.stabilizer_set(v).elements, v)
    by_f: dict[frozenset, GeneratingVector] = {}
    for v in vf_list:
        by_f.setdefault(genvec.stabilizer_set(v).elements, v)
    for sc, vc in by_c.items():
        for sf, vf in by_f.items():
            if not (sc & sf):
                return vc, vf
    return None
