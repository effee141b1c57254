"""Exact arithmetic for small finite groups given by dense multiplication tables.

Groups are stored as an order x order table of element indices.  Element 0 is
always the identity; the remaining elements are sorted by (order, name) so that
every construction of the same group yields the same labelling and all reports
downstream are deterministic.  Construction validates the table completely
(identity row/column, Latin square, associativity), so code consuming a Group
may assume it really is one.

Built-in constructors cover the groups needed here: cyclic, dihedral,
symmetric (n <= 5), the quaternion group, elementary abelian 2-groups and
direct products, plus explicit tables loaded from JSON.  This is not a
general computational group theory package; everything works by table
scans and closure enumeration, which is exactly right for orders <= 64.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path

DEFAULT_ORDER_CAP = 64


class GroupError(ValueError):
    """Raised for malformed group specs or invalid multiplication tables."""


@dataclass(frozen=True)
class GroupSpec:
    """Parsed form of a group spec string such as ``D4``, ``C2^3`` or ``C2xS3``."""

    kind: str                       # cyclic | dihedral | symmetric | quaternion8 |
                                    # elementary2 | product | table
    n: int = 0
    parts: tuple["GroupSpec", ...] = ()
    path: str = ""

    def describe(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        if self.kind == "symmetric":
            return f"S{self.n}"
        if self.kind == "quaternion8":
            return "Q8"
        if self.kind == "elementary2":
            return f"C2^{self.n}"
        if self.kind == "product":
            return "x".join(p.describe() for p in self.parts)
        return f"table:{self.path}"


@dataclass(frozen=True)
class Automorphism:
    """A group automorphism stored as a permutation of element indices."""

    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Automorphism") -> "Automorphism":
        # (self . other)(x) = self(other(x))
        return Automorphism(tuple(self.images[y] for y in other.images))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images):
            inv[y] = i
        return Automorphism(tuple(inv))


class Group:
    """A finite group as a validated multiplication table.

    Immutable by convention; all derived data (orders, inverses, classes) is
    cached on first use.  Elements are indices 0..order-1 with display names.
    """

    def __init__(self, table: list[list[int]], names: list[str], spec: str,
                 cap: int = DEFAULT_ORDER_CAP, _canonical: bool = False):
        order = len(table)
        if order == 0:
            raise GroupError("empty multiplication table")
        if order > cap:
            raise GroupError(f"group order {order} exceeds cap {cap}")
        if len(names) != order or len(set(names)) != order:
            raise GroupError("element names must be distinct and match the order")
        _validate_table(table)
        if not _canonical:
            table, names = _canonical_relabel(table, names)
        self.order = order
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in table)
        self.names: tuple[str, ...] = tuple(names)
        self.identity = 0
        self.spec = spec
        self._index = {name: i for i, name in enumerate(self.names)}
        self._inv = _inverse_table(self.table)
        self._orders = tuple(_order_of(self.table, x) for x in range(order))
        self._classes: tuple[tuple[int, ...], ...] | None = None
        self._subgroups: tuple[frozenset[int], ...] | None = None
        self._automorphisms: tuple[Automorphism, ...] | None = None
        self._join_cache: dict = {}
        self._hash = hash((self.table, self.names))

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, x: int) -> int:
        """x a x^-1"""
        return self.table[self.table[x][a]][self._inv[x]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        t = self.table
        return t[t[t[a][b]][self._inv[a]]][self._inv[b]]

    def prod(self, elems) -> int:
        acc = self.identity
        for x in elems:
            acc = self.table[acc][x]
        return acc

    def element_order(self, x: int) -> int:
        return self._orders[x]

    def elements(self) -> range:
        return range(self.order)

    def name(self, x: int) -> str:
        return self.names[x]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(f"no element named {name!r} in {self.spec}") from None

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    # -- structure ----------------------------------------------------------

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the elements into conjugacy classes, sorted by minimum."""
        if self._classes is None:
            seen = [False] * self.order
            classes = []
            for a in range(self.order):
                if seen[a]:
                    continue
                cls = sorted({self.conj(a, x) for x in range(self.order)})
                for y in cls:
                    seen[y] = True
                classes.append(tuple(cls))
            self._classes = tuple(sorted(classes, key=lambda c: c[0]))
        return self._classes

    def centralizer(self, x: int) -> frozenset[int]:
        t = self.table
        return frozenset(y for y in range(self.order) if t[y][x] == t[x][y])

    def closure(self, subset) -> frozenset[int]:
        elems = set(subset) | {self.identity}
        frontier = list(elems)
        while frontier:
            new = []
            for a in frontier:
                for b in list(elems):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in elems:
                            elems.add(c)
                            new.append(c)
            frontier = new
        return frozenset(elems)

    def joined(self, subgroup: frozenset[int], x: int) -> frozenset[int]:
        """Memoized subgroup join <subgroup, x>; fast path for enumeration."""
        if x in subgroup:
            return subgroup
        key = (subgroup, x)
        cached = self._join_cache.get(key)
        if cached is None:
            cached = self.closure(subgroup | {x})
            self._join_cache[key] = cached
        return cached

    def cyclic_subgroup(self, x: int) -> frozenset[int]:
        out = {self.identity}
        y = x
        while y != self.identity:
            out.add(y)
            y = self.table[y][x]
        return frozenset(out)

    def subgroups(self) -> tuple[frozenset[int], ...]:
        """All subgroups, found by closing cyclic subgroups under joins."""
        if self._subgroups is None:
            found = {frozenset({self.identity})}
            frontier = {self.cyclic_subgroup(x) for x in range(self.order)}
            found |= frontier
            while frontier:
                nxt = set()
                for h in frontier:
                    for x in range(1, self.order):
                        if x in h:
                            continue
                        k = self.closure(h | {x})
                        if k not in found:
                            found.add(k)
                            nxt.add(k)
                frontier = nxt
            self._subgroups = tuple(sorted(found, key=lambda h: (len(h), sorted(h))))
        return self._subgroups

    def cosets(self, subgroup: frozenset[int]) -> list[int]:
        """Deterministic left-coset representatives of ``subgroup``."""
        reps, covered = [], set()
        for x in range(self.order):
            if x not in covered:
                reps.append(x)
                covered.update(self.table[x][h] for h in subgroup)
        return reps

    def generating_set(self) -> tuple[int, ...]:
        """Small generating set chosen greedily in canonical element order."""
        gens: list[int] = []
        closed = frozenset({self.identity})
        while len(closed) < self.order:
            x = next(i for i in range(self.order) if i not in closed)
            gens.append(x)
            closed = self.closure(gens)
        return tuple(gens)

    def automorphisms(self) -> tuple[Automorphism, ...]:
        """All automorphisms, by backtracking over images of a generating set."""
        if self._automorphisms is None:
            self._automorphisms = tuple(
                Automorphism(images)
                for images in _morphism_search(self, self, all_results=True)
            )
        return self._automorphisms

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and self.table == other.table and self.names == other.names

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Group({self.spec}, order={self.order})"


# -- table validation and canonical form -------------------------------------


def _validate_table(table: list[list[int]]) -> None:
    n = len(table)
    idx = set(range(n))
    for row in table:
        if len(row) != n or set(row) != idx:
            raise GroupError("table is not a Latin square")
    for j in range(n):
        if {table[i][j] for i in range(n)} != idx:
            raise GroupError("table is not a Latin square")
    identity = _find_identity(table)
    if identity is None:
        raise GroupError("table has no identity element")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupError("table is not associative")


def _find_identity(table: list[list[int]]) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def _order_of(table, x: int) -> int:
    e = _find_identity_fast(table)
    k, y = 1, x
    while y != e:
        y = table[y][x]
        k += 1
    return k


def _find_identity_fast(table) -> int:
    # valid tables only: identity is the unique e with table[e][0] == 0
    for e in range(len(table)):
        if table[e][0] == 0 and table[0][e] == 0:
            if all(table[e][x] == x for x in range(len(table))):
                return e
    raise GroupError("table has no identity element")


def _inverse_table(table) -> tuple[int, ...]:
    e = _find_identity_fast(table)
    n = len(table)
    inv = [0] * n
    for a in range(n):
        inv[a] = next(b for b in range(n) if table[a][b] == e)
    return tuple(inv)


def _canonical_relabel(table, names):
    """Reorder elements: identity first, then by (element order, name)."""
    e = _find_identity(table)
    n = len(table)
    orders = [_order_of_with_identity(table, x, e) for x in range(n)]
    rest = sorted((x for x in range(n) if x != e), key=lambda x: (orders[x], names[x]))
    old_of_new = [e] + rest
    new_of_old = [0] * n
    for new, old in enumerate(old_of_new):
        new_of_old[old] = new
    new_table = [[new_of_old[table[old_of_new[a]][old_of_new[b]]] for b in range(n)]
                 for a in range(n)]
    new_names = [names[old] for old in old_of_new]
    return new_table, new_names


def _order_of_with_identity(table, x: int, e: int) -> int:
    k, y = 1, x
    while y != e:
        y = table[y][x]
        k += 1
    return k


# -- constructors -------------------------------------------------------------


def _cyclic(n: int) -> tuple[list[list[int]], list[str]]:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["id"] + [f"r{k}" if k > 1 else "r" for k in range(1, n)]
    return table, names


def _dihedral(n: int) -> tuple[list[list[int]], list[str]]:
    # elements (k, s) = r^k s^eps, eps in {0,1}; (k,e)(k',e') = (k + (-1)^e k', e+e')
    if n < 1:
        raise GroupError("dihedral parameter must be >= 1")
    elems = [(k, e) for e in (0, 1) for k in range(n)]
    pos = {el: i for i, el in enumerate(elems)}

    def mul(a, b):
        k, e = a
        kp, ep = b
        return ((k + (kp if e == 0 else -kp)) % n, (e + ep) % 2)

    table = [[pos[mul(a, b)] for b in elems] for a in elems]

    def nm(el):
        k, e = el
        rot = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        if e == 0:
            return rot or "id"
        return rot + "s"

    return table, [nm(el) for el in elems]


def _symmetric(n: int) -> tuple[list[list[int]], list[str]]:
    if n < 1 or n > 5:
        raise GroupError("symmetric group supported only for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}

    def mul(p, q):
        # composition: (p.q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(n))

    table = [[pos[mul(p, q)] for q in perms] for p in perms]
    return table, [_cycle_name(p) for p in perms]


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        cycles.append("(" + "".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) if cycles else "id"


def _quaternion8() -> tuple[list[list[int]], list[str]]:
    # indices: units 1,-1,i,-i,j,-j,k,-k encoded as (axis, sign)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {"1": (0, 1), "-1": (0, -1), "i": (1, 1), "-i": (1, -1),
            "j": (2, 1), "-j": (2, -1), "k": (3, 1), "-k": (3, -1)}
    back = {v: k for k, v in unit.items()}
    mul_axis = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (2, 0): (2, 1), (3, 0): (3, 1),
        (1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1),
        (1, 2): (3, 1), (2, 1): (3, -1),
        (2, 3): (1, 1), (3, 2): (1, -1),
        (3, 1): (2, 1), (1, 3): (2, -1),
    }

    def mul(a, b):
        (ax, sa), (bx, sb) = unit[a], unit[b]
        cx, sc = mul_axis[(ax, bx)]
        return back[(cx, sa * sb * sc)]

    pos = {nm: i for i, nm in enumerate(names)}
    table = [[pos[mul(a, b)] for b in names] for a in names]
    return table, names


def _elementary2(k: int) -> tuple[list[list[int]], list[str]]:
    n = 1 << k
    table = [[a ^ b for b in range(n)] for a in range(n)]

    def nm(a):
        if a == 0:
            return "id"
        if k == 2:
            return {1: "e1", 2: "e2", 3: "e3"}[a]
        return "".join(f"e{i + 1}" for i in range(k) if a >> i & 1)

    return table, [nm(a) for a in range(n)]


def _direct_product(g1: Group, g2: Group) -> tuple[list[list[int]], list[str]]:
    n1, n2 = g1.order, g2.order
    n = n1 * n2

    def mul(a, b):
        a1, a2 = divmod(a, n2)
        b1, b2 = divmod(b, n2)
        return g1.table[a1][b1] * n2 + g2.table[a2][b2]

    table = [[mul(a, b) for b in range(n)] for a in range(n)]
    names = [f"({g1.names[a // n2]},{g2.names[a % n2]})" for a in range(n)]
    return table, names


def parse_group_spec(text: str) -> GroupSpec:
    text = text.strip()
    if text.startswith("table:"):
        return GroupSpec("table", path=text[len("table:"):])
    factors = text.split("x")
    if len(factors) > 1:
        return GroupSpec("product", parts=tuple(parse_group_spec(f) for f in factors))
    m = re.fullmatch(r"C2\^(\d+)", text)
    if m:
        return GroupSpec("elementary2", n=int(m.group(1)))
    m = re.fullmatch(r"([CDS])(\d+)", text)
    if m:
        kind = {"C": "cyclic", "D": "dihedral", "S": "symmetric"}[m.group(1)]
        return GroupSpec(kind, n=int(m.group(2)))
    if text == "Q8":
        return GroupSpec("quaternion8")
    raise GroupError(f"cannot parse group spec {text!r}")


def build_group(spec: GroupSpec | str, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Construct and validate the group named by ``spec``."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    label = spec.describe()
    if spec.kind == "cyclic":
        if spec.n < 1:
            raise GroupError("cyclic parameter must be >= 1")
        table, names = _cyclic(spec.n)
    elif spec.kind == "dihedral":
        table, names = _dihedral(spec.n)
    elif spec.kind == "symmetric":
        table, names = _symmetric(spec.n)
    elif spec.kind == "quaternion8":
        table, names = _quaternion8()
    elif spec.kind == "elementary2":
        if spec.n < 1:
            raise GroupError("elementary abelian parameter must be >= 1")
        table, names = _elementary2(spec.n)
    elif spec.kind == "product":
        groups = [build_group(p, cap=cap) for p in spec.parts]
        acc = groups[0]
        for g in groups[1:]:
            table, names = _direct_product(acc, g)
            acc = Group(table, names, label, cap=cap)
        return Group(list(list(r) for r in acc.table), list(acc.names), label, cap=cap)
    elif spec.kind == "table":
        return load_table_group(spec.path, cap=cap)
    else:  # pragma: no cover
        raise GroupError(f"unknown spec kind {spec.kind}")
    return Group(table, names, label, cap=cap)


def direct_product(g1: Group, g2: Group, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """The direct product as a table group (names are component pairs)."""
    table, names = _direct_product(g1, g2)
    return Group(table, names, f"{g1.spec}x{g2.spec}", cap=cap)


def load_table_group(path: str | Path, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Load a group from a JSON file {"order": n, "table": [[...]], "names": [...]}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupError(f"cannot read table file {path}: {exc}") from exc
    table = data.get("table")
    if not isinstance(table, list) or data.get("order") != len(table):
        raise GroupError(f"table file {path}: order field does not match table")
    names = data.get("names") or [f"g{i}" for i in range(len(table))]
    return Group(table, [str(n) for n in names], f"table:{path}", cap=cap)


# -- isomorphism testing -------------------------------------------------------


def _morphism_search(src: Group, dst: Group, all_results: bool):
    """Bijective homomorphisms src -> dst via images of a greedy generating set.

    Yields image permutations (tuples of length src.order).  With
    ``all_results`` false, stops after the first witness.
    """
    if src.order != dst.order:
        return
    gens = src.generating_set()
    if not gens:  # trivial group
        yield (0,)
        return
    gen_orders = [src.element_order(g) for g in gens]
    candidates = [
        [y for y in range(dst.order) if dst.element_order(y) == m]
        for m in gen_orders
    ]

    def build_partial(images: list[int]) -> list[int] | None:
        # spread the definition over the closure of the mapped generators
        phi = [-1] * src.order
        phi[src.identity] = dst.identity
        frontier = [src.identity]
        used = list(zip(gens[: len(images)], images))
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in used:
                    y = src.table[x][g]
                    fy = dst.table[phi[x]][img]
                    if phi[y] == -1:
                        phi[y] = fy
                        nxt.append(y)
                    elif phi[y] != fy:
                        return None
            frontier = nxt
        return phi

    def rec(i: int, images: list[int]):
        if i == len(gens):
            phi = build_partial(images)
            if phi is None or -1 in phi or len(set(phi)) != src.order:
                return
            if _is_homomorphism(src, dst, phi):
                yield tuple(phi)
            return
        for y in candidates[i]:
            images.append(y)
            if build_partial(images) is not None:
                yield from rec(i + 1, images)
            images.pop()

    yield from rec(0, [])


def _is_homomorphism(src: Group, dst: Group, phi) -> bool:
    return all(
        phi[src.table[a][b]] == dst.table[phi[a]][phi[b]]
        for a in range(src.order)
        for b in range(src.order)
    )


def find_isomorphism(g1: Group, g2: Group) -> tuple[int, ...] | None:
    """An isomorphism g1 -> g2 as an image tuple, or None."""
    if g1.order != g2.order:
        return None
    if sorted(g1._orders) != sorted(g2._orders):
        return None
    if sorted(map(len, g1.conjugacy_classes())) != sorted(map(len, g2.conjugacy_classes())):
        return None
    for phi in _morphism_search(g1, g2, all_results=False):
        return phi
    return None


def are_isomorphic(g1: Group, g2: Group) -> bool:
    return find_isomorphism(g1, g2) is not None


# -- built-in catalog ----------------------------------------------------------

# Spec strings for every isomorphism class we can express, by order.  Orders
# 12 and 16 are incomplete (A4, the dicyclic groups and some order-16 classes
# have no spec string); catalog_complete reports which orders are exhaustive.
_CATALOG: dict[int, tuple[str, ...]] = {
    1: ("C1",),
    2: ("C2",),
    3: ("C3",),
    4: ("C4", "C2^2"),
    5: ("C5",),
    6: ("C6", "S3"),
    7: ("C7",),
    8: ("C8", "C4xC2", "C2^3", "D4", "Q8"),
    9: ("C9", "C3xC3"),
    10: ("C10", "D5"),
    11: ("C11",),
    12: ("C12", "C6xC2", "D6"),
    13: ("C13",),
    14: ("C14", "D7"),
    15: ("C15",),
    16: ("C16", "C8xC2", "C4xC4", "C4xC2^2", "C2^4", "D8", "C2xD4", "C2xQ8"),
}

_INCOMPLETE_ORDERS = frozenset({12, 16})


def catalog_specs(max_order: int = 16) -> list[str]:
    return [s for n in sorted(_CATALOG) if n <= max_order for s in _CATALOG[n]]


def groups_of_order(n: int, cap: int = DEFAULT_ORDER_CAP) -> list[Group]:
    return [build_group(s, cap=cap) for s in _CATALOG.get(n, ())]


def catalog_complete(n: int) -> bool:
    """Whether the catalog provably lists every isomorphism class of order n."""
    return n in _CATALOG and n not in _INCOMPLETE_ORDERS
