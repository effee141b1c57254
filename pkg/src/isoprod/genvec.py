"""Branch signatures, generating vectors, and branched-cover genus arithmetic.

A Galois cover of a curve of genus g' branched in r points with orders
m_1 <= ... <= m_r is encoded by its signature (g'; m_1,...,m_r) together with
an admissible tuple of images: branch images g_i of exact order m_i and 2g'
handle images a_1,b_1,... satisfying the long relation

    g_1 g_2 ... g_r [a_1,b_1] ... [a_g',b_g'] = 1

and generating the group.  Everything downstream of these tuples is exact
combinatorics: Riemann-Hurwitz genera, stabilizer sets, fixed-point counts
through coset enumeration, genera of intermediate quotients, and the Accola
identity for groups with a partition.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import InitVar, dataclass

from .smallgroups import Group


class VectorError(ValueError):
    """Raised for inadmissible vectors or inconsistent branch data."""


@dataclass(frozen=True)
class Signature:
    """Base genus together with ascending branch orders."""

    base_genus: int
    orders: tuple[int, ...]

    def __post_init__(self):
        if self.base_genus < 0:
            raise VectorError("base genus must be nonnegative")
        if any(m < 2 for m in self.orders):
            raise VectorError("branch orders must be >= 2")
        if list(self.orders) != sorted(self.orders):
            object.__setattr__(self, "orders", tuple(sorted(self.orders)))

    @property
    def r(self) -> int:
        return len(self.orders)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse "g':m1,m2,..." (e.g. "0:2,2,2,2,2,2" or "1:3"; "1:" is unbranched)."""
        head, _, tail = text.partition(":")
        try:
            base = int(head)
            orders = tuple(int(t) for t in tail.split(",") if t.strip())
        except ValueError as exc:
            raise VectorError(f"cannot parse signature {text!r}") from exc
        return cls(base, orders)

    def __str__(self) -> str:
        return f"{self.base_genus}:" + ",".join(str(m) for m in self.orders)


@dataclass(frozen=True)
class GeneratingVector:
    """An admissible epimorphism, stored by its branch and handle images.

    Construction validates the three admissibility invariants; the enumerator
    passes ``check=False`` for tuples whose invariants it has already proved
    incrementally (the property suite re-validates its output).
    """

    group: Group
    signature: Signature
    branch: tuple[int, ...]
    handles: tuple[int, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool = True):
        if check:
            self.validate()

    def validate(self) -> None:
        g = self.group
        sig = self.signature
        if len(self.branch) != sig.r:
            raise VectorError("branch image count does not match signature")
        if len(self.handles) != 2 * sig.base_genus:
            raise VectorError("handle image count does not match base genus")
        for x, m in zip(self.branch, sig.orders):
            if g.element_order(x) != m:
                raise VectorError(
                    f"branch image {g.names[x]} has order {g.element_order(x)}, expected {m}")
        if self.long_relation() != g.identity:
            raise VectorError("long relation fails")
        if g.closure(self.branch + self.handles) != frozenset(g.elements()):
            raise VectorError("images do not generate the group")

    def long_relation(self) -> int:
        g = self.group
        acc = g.prod(self.branch)
        for a, b in zip(self.handles[0::2], self.handles[1::2]):
            acc = g.mul(acc, g.commutator(a, b))
        return acc

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Deterministic sort/dedup key; group and signature are fixed by context."""
        return (self.branch, self.handles)

    def names(self) -> dict:
        g = self.group
        return {
            "group": g.spec,
            "signature": str(self.signature),
            "branch": [g.names[x] for x in self.branch],
            "handles": [g.names[x] for x in self.handles],
        }

    def __lt__(self, other: "GeneratingVector") -> bool:
        return self.key() < other.key()


@dataclass(frozen=True)
class StabilizerSet:
    """Non-identity elements with fixed points: conjugates of the <g_i>."""

    elements: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def intersects(self, other: "StabilizerSet") -> bool:
        return bool(self.elements & other.elements)


def rh_genus(group_order: int, sig: Signature) -> int:
    """Genus of the total space of a G-cover with the given branch data.

    2g - 2 = |G| (2g' - 2) + sum_i (|G|/m_i)(m_i - 1)
    """
    if group_order < 1:
        raise VectorError("group order must be >= 1")
    for m in sig.orders:
        if group_order % m:
            raise VectorError(f"branch order {m} does not divide group order {group_order}")
    rhs = group_order * (2 * sig.base_genus - 2)
    rhs += sum((group_order // m) * (m - 1) for m in sig.orders)
    if rhs % 2:
        raise VectorError(f"non-integral genus from branch data {sig}")
    genus = (rhs + 2) // 2
    if genus < 0:
        raise VectorError(f"negative genus from branch data {sig}")
    return genus


def enumerate_vectors(group: Group, sig: Signature, branch_filter=None,
                      exclude: frozenset[int] | set[int] = frozenset(),
                      ) -> list[GeneratingVector]:
    """All admissible vectors, duplicate-free and canonically ordered.

    ``exclude`` bans element indices as branch images (a freeness constraint);
    ``branch_filter`` is an optional predicate on the complete branch tuple.
    An empty result is meaningful: no cover with this data exists.
    """
    candidates = [
        [x for x in group.elements()
         if group.element_order(x) == m and x not in exclude]
        for m in sig.orders
    ]
    if any(not c for c in candidates) and sig.r:
        return []
    full = frozenset(group.elements())
    trivial = frozenset({group.identity})
    out = []
    handle_space = list(itertools.product(group.elements(), repeat=2 * sig.base_genus))

    def finish(branch: tuple[int, ...], gen: frozenset[int]) -> None:
        if branch_filter is not None and not branch_filter(branch):
            return
        if sig.base_genus == 0:
            if gen == full:
                out.append(GeneratingVector(group, sig, branch, (), check=False))
            return
        prod = group.prod(branch)
        for handles in handle_space:
            acc = prod
            g2 = gen
            for a, b in zip(handles[0::2], handles[1::2]):
                acc = group.mul(acc, group.commutator(a, b))
                g2 = group.joined(group.joined(g2, a), b)
            if acc == group.identity and g2 == full:
                out.append(GeneratingVector(group, sig, branch, handles, check=False))

    if sig.base_genus == 0 and sig.r >= 1:
        # derive the last branch image from the product relation
        last_ok = set(candidates[-1])

        def rec(i: int, prefix: list[int], prod: int, gen: frozenset[int]):
            if i == sig.r - 1:
                last = group.inv(prod)
                if last in last_ok:
                    finish(tuple(prefix) + (last,), group.joined(gen, last))
                return
            for x in candidates[i]:
                prefix.append(x)
                rec(i + 1, prefix, group.mul(prod, x), group.joined(gen, x))
                prefix.pop()

        rec(0, [], group.identity, trivial)
    else:
        for branch in itertools.product(*candidates):
            gen = trivial
            for x in branch:
                gen = group.joined(gen, x)
            finish(branch, gen)
    out.sort(key=GeneratingVector.key)
    return out


_STAB_CACHE: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _conjugate_cyclic_union(g: Group, x: int) -> frozenset[int]:
    """All conjugates of <x> minus the identity; depends on x only, so cached."""
    per_group = _STAB_CACHE.get(g)
    if per_group is None:
        per_group = _STAB_CACHE[g] = {}
    got = per_group.get(x)
    if got is None:
        elems: set[int] = set()
        cyc = g.cyclic_subgroup(x)
        for y in g.elements():
            elems.update(g.conj(h, y) for h in cyc)
        elems.discard(g.identity)
        got = per_group[x] = frozenset(elems)
    return got


def stabilizer_set(v: GeneratingVector) -> StabilizerSet:
    """Union over branch images of all conjugates of <g_i>, minus the identity."""
    elems: frozenset[int] = frozenset()
    for gi in set(v.branch):
        elems |= _conjugate_cyclic_union(v.group, gi)
    return StabilizerSet(elems)


def fixed_point_count(v: GeneratingVector, h: int) -> int:
    """Number of fixed points of h on the covering curve.

    Over branch point i the fiber is the coset space G/<g_i>; the point x<g_i>
    is fixed by h exactly when h lies in x<g_i>x^-1.
    """
    g = v.group
    if h == g.identity:
        raise VectorError("identity fixes the whole curve; pass a nontrivial element")
    count = 0
    for gi in v.branch:
        cyc = g.cyclic_subgroup(gi)
        for x in g.cosets(cyc):
            if g.mul(g.inv(x), g.mul(h, x)) in cyc:
                count += 1
    return count


def quotient_genus(v: GeneratingVector, subgroup: frozenset[int] | set[int]) -> int:
    """Genus of X/H for the cover X defined by v and a subgroup H of its group.

    Riemann-Hurwitz applied to X -> X/H: the nontrivial H-stabilizers are the
    intersections of H with the conjugates of the <g_i>, one per coset point.
    """
    g = v.group
    sub = frozenset(subgroup) | {g.identity}
    if g.closure(sub) != sub:
        raise VectorError("subset is not a subgroup")
    total = rh_genus(g.order, v.signature)
    ram = 0
    for gi in v.branch:
        cyc = g.cyclic_subgroup(gi)
        for x in g.cosets(cyc):
            stab = {g.conj(h, x) for h in cyc}
            ram += len(sub & stab) - 1
    rhs = 2 * total - 2 - ram
    if rhs % len(sub):
        raise VectorError("Riemann-Hurwitz gave a non-integral quotient genus")
    twice = rhs // len(sub) + 2
    if twice % 2:
        raise VectorError("Riemann-Hurwitz gave a non-integral quotient genus")
    return twice // 2


@dataclass(frozen=True)
class AccolaReport:
    lhs: int
    rhs: int
    passed: bool


def accola_check(total_genus: int, parts: list[tuple[int, int]],
                 n0: int, g0: int) -> AccolaReport:
    """The partition identity (s-1) g + n0 g0 = sum_i n_i g_i.

    ``parts`` lists (subgroup order, quotient genus) for a partition of a
    group of order n0 acting on a curve of genus ``total_genus``.
    """
    s = len(parts)
    if s < 3:
        raise VectorError("a partition needs at least 3 parts")
    lhs = (s - 1) * total_genus + n0 * g0
    rhs = sum(n * g for n, g in parts)
    return AccolaReport(lhs, rhs, lhs == rhs)


def accola_elementary2(total_genus: int, g0: int, quotient_genera: list[int],
                       n: int) -> AccolaReport:
    """Specialization for (Z_2)^n partitioned into its 2^n - 1 involutions."""
    if len(quotient_genera) != (1 << n) - 1:
        raise VectorError(f"expected {(1 << n) - 1} order-2 quotient genera")
    parts = [(2, g) for g in quotient_genera]
    return accola_check(total_genus, parts, 1 << n, g0)


def accola_dihedral(total_genus: int, g0: int, n: int, g_r: int,
                    g1: int, g2: int | None = None) -> AccolaReport:
    """Specialization for D_n partitioned into <r> and the n reflections.

    For n odd all reflections are conjugate (g + 2 g0 = g_r + 2 g1); for n even
    they fall in two classes (g + 2 g0 = g_r + g1 + g2).
    """
    if n % 2 == 1:
        if g2 is not None:
            raise VectorError("odd dihedral partition has a single reflection genus")
        parts = [(n, g_r)] + [(2, g1)] * n
    else:
        if g2 is None:
            raise VectorError("even dihedral partition needs two reflection genera")
        parts = [(n, g_r)] + [(2, g1)] * (n // 2) + [(2, g2)] * (n // 2)
    return accola_check(total_genus, parts, 2 * n, g0)


def total_ramification(group_order: int, sig: Signature) -> int:
    """sum_i (|G|/m_i)(m_i - 1), the branch-point contribution in Riemann-Hurwitz."""
    return sum((group_order // m) * (m - 1) for m in sig.orders)
