"""Hyperelliptic curves y^2 = p(x) with exactly lifted automorphisms.

A curve of genus g is glued from two affine charts

    A: y^2 = p(x)        B: w^2 = k(t),  k(t) = t^(2g+2) p(1/t)

along (x, y) ~ (1/x, y / x^(g+1)); p is monic without multiple roots, of
degree 2g+2, or 2g+1 when infinity is a branch point.  A Moebius map f
preserving the branch set lifts to exactly two curve automorphisms

    (x, y)  ->  ( f(x), +- sqrt(lambda) y / (cx+d)^(g+1) ),

where (p o f)(x) (cx+d)^(2g+2) = lambda p(x).  Automorphisms are stored as a
projectively normalized matrix plus the constant in the y-coordinate, which
composes by matrix product; fixed points, stabilizers and quotient genera of
the generated group are then exact field computations.  Fixed points over a
P^1-fixed value with p-value v != 0 are decided without taking sqrt(v): the
fiber maps to itself with multiplier +-1, and is pointwise fixed exactly for
multiplier +1.  Coordinates are materialized only when sqrt(v) exists in the
field; counts and quotient data never need it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import genvec
from .cyclo import CycloError, CycloField, CycloNum
from .smallgroups import (Group, build_group, catalog_specs, direct_product,
                          find_isomorphism)


class CurveError(ValueError):
    """Invalid curve data, non-invariant branch sets, or unrepresentable points."""


class _Infinity:
    """Tag for the point 1/0 of the projective line."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()


# -- small polynomial helpers over a cyclotomic field -------------------------


def _cpoly_mul(field: CycloField, a: list[CycloNum], b: list[CycloNum]) -> list[CycloNum]:
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _cpoly_from_roots(field: CycloField, roots) -> list[CycloNum]:
    out = [field.one]
    for r in roots:
        out = _cpoly_mul(field, out, [-r, field.one])
    return out


@dataclass(frozen=True)
class MobiusMap:
    """x -> (a x + b)/(c x + d) with nonzero determinant, acting on P^1."""

    a: CycloNum
    b: CycloNum
    c: CycloNum
    d: CycloNum

    def __post_init__(self):
        if self.det().is_zero():
            raise CurveError("Moebius map needs a nonzero determinant")

    def det(self) -> CycloNum:
        return self.a * self.d - self.b * self.c

    def apply(self, x):
        if x is INF:
            return INF if self.c.is_zero() else self.a / self.c
        den = self.c * x + self.d
        if den.is_zero():
            return INF
        return (self.a * x + self.b) / den

    def matmul(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjugate(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def entries(self) -> tuple[CycloNum, CycloNum, CycloNum, CycloNum]:
        return (self.a, self.b, self.c, self.d)

    def is_identity_proj(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d


class HyperCurve:
    """Validated hyperelliptic curve data over Q(zeta_n)."""

    def __init__(self, field: CycloField, roots, infinity_is_branch: bool):
        roots = tuple(roots)
        if len(set(roots)) != len(roots):
            raise CurveError("branch polynomial has multiple roots")
        total = len(roots) + (1 if infinity_is_branch else 0)
        if total % 2 or total < 6:
            raise CurveError(
                f"need an even number of branch points >= 6 counting infinity, got {total}")
        self.field = field
        self.roots = tuple(sorted(roots, key=CycloNum.sort_key))
        self.infinity_is_branch = infinity_is_branch
        self.genus = total // 2 - 1
        self.branch_set = frozenset(self.roots) | ({INF} if infinity_is_branch else set())

    def p_eval(self, x: CycloNum) -> CycloNum:
        out = self.field.one
        for r in self.roots:
            out = out * (x - r)
        return out

    def k_eval(self, t: CycloNum) -> CycloNum:
        out = self.field.one
        for r in self.roots:
            out = out * (self.field.one - r * t)
        for _ in range(2 * self.genus + 2 - len(self.roots)):
            out = out * t
        return out

    def fiber_value(self, x) -> CycloNum:
        """Value of the defining polynomial over the P^1 point x (k(0) over infinity)."""
        if x is INF:
            return self.field.zero if self.infinity_is_branch else self.field.one
        return self.p_eval(x)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HyperCurve) and other.field == self.field
                and other.roots == self.roots
                and other.infinity_is_branch == self.infinity_is_branch)

    def __hash__(self) -> int:
        return hash((self.field.n, self.roots, self.infinity_is_branch))

    def __repr__(self) -> str:  # pragma: no cover
        inf = " + inf" if self.infinity_is_branch else ""
        return f"HyperCurve(genus={self.genus}, roots={list(self.roots)}{inf})"


def build_curve(roots, infinity_is_branch: bool, field: CycloField) -> HyperCurve:
    """Validated curve from exact branch data; genus is derived from the count."""
    return HyperCurve(field, roots, infinity_is_branch)


@dataclass(frozen=True)
class CurvePoint:
    """A point in chart A (x, y) or chart B (t, w), satisfying its equation exactly."""

    curve: HyperCurve
    chart: str
    u: CycloNum
    v: CycloNum

    def __post_init__(self):
        if self.chart == "A":
            if self.v * self.v != self.curve.p_eval(self.u):
                raise CurveError("chart-A point does not satisfy y^2 = p(x)")
        elif self.chart == "B":
            if self.v * self.v != self.curve.k_eval(self.u):
                raise CurveError("chart-B point does not satisfy w^2 = k(t)")
        else:
            raise CurveError("chart must be A or B")

    def canonical(self) -> "CurvePoint":
        """Chart A whenever x is finite; chart B only over infinity (t = 0)."""
        if self.chart == "B" and not self.u.is_zero():
            g = self.curve.genus
            x = self.u.inverse()
            y = self.v * x ** (g + 1)
            return CurvePoint(self.curve, "A", x, y)
        return self

    def x_value(self):
        """The underlying P^1 value (INF for chart-B points with t = 0)."""
        c = self.canonical()
        return INF if c.chart == "B" else c.u

    def describe(self) -> str:
        c = self.canonical()
        if c.chart == "A":
            return f"(x={c.u}, y={c.v})"
        return f"(inf, w={c.v})"

    def __repr__(self) -> str:  # pragma: no cover
        return f"CurvePoint{self.describe()}"


class CurveAut:
    """An automorphism (x, y) -> (f(x), scale * y / (cx+d)^(g+1)).

    The matrix is normalized projectively (first nonzero entry = 1) with the
    scale adjusted to keep the map unchanged, so equal maps compare equal.
    """

    __slots__ = ("curve", "mobius", "scale")

    def __init__(self, curve: HyperCurve, mobius: MobiusMap, scale: CycloNum,
                 _checked: bool = False):
        g = curve.genus
        mu = next(e for e in mobius.entries() if not e.is_zero())
        if mu != curve.field.one:
            inv = mu.inverse()
            mobius = MobiusMap(*(e * inv for e in mobius.entries()))
            scale = scale * inv ** (g + 1)
        self.curve = curve
        self.mobius = mobius
        self.scale = scale
        if not _checked:
            self._validate()

    def _validate(self) -> None:
        if not _branch_set_invariant(self.curve, self.mobius):
            raise CurveError("Moebius map does not preserve the branch set")
        lam = _lambda_raw(self.curve, self.mobius)
        if self.scale * self.scale != lam:
            raise CurveError("y-multiplier does not square to the branch-polynomial factor")

    def key(self) -> tuple:
        return tuple(e.coeffs for e in self.mobius.entries()) + (self.scale.coeffs,)

    def __eq__(self, other) -> bool:
        return isinstance(other, CurveAut) and other.curve == self.curve \
            and other.key() == self.key()

    def __hash__(self) -> int:
        return hash((self.curve, self.key()))

    def is_identity(self) -> bool:
        return self.mobius.is_identity_proj() and self.scale == self.curve.field.one

    def compose(self, other: "CurveAut") -> "CurveAut":
        """self after other; matrices multiply, scales multiply."""
        return CurveAut(self.curve, self.mobius.matmul(other.mobius),
                        self.scale * other.scale, _checked=True)

    def inverse(self) -> "CurveAut":
        g = self.curve.genus
        det = self.mobius.det()
        return CurveAut(self.curve, self.mobius.adjugate(),
                        det ** (g + 1) / self.scale, _checked=True)

    def order(self) -> int:
        k, acc = 1, self
        while not acc.is_identity():
            acc = acc.compose(self)
            k += 1
            if k > 4 * (2 * self.curve.genus + 2) ** 2:
                raise CurveError("automorphism order runaway")  # pragma: no cover
        return k

    # -- action on points ----------------------------------------------------

    def act(self, point: CurvePoint) -> CurvePoint:
        a, b, c, d = self.mobius.entries()
        g = self.curve.genus
        p = point.canonical()
        if p.chart == "A":
            den = c * p.u + d
            if not den.is_zero():
                out = CurvePoint(self.curve, "A", (a * p.u + b) / den,
                                 self.scale * p.v / den ** (g + 1))
            else:
                num = a * p.u + b
                out = CurvePoint(self.curve, "B", den / num,
                                 self.scale * p.v / num ** (g + 1))
        else:
            den = c + d * p.u
            if not den.is_zero():
                out = CurvePoint(self.curve, "A", (a + b * p.u) / den,
                                 self.scale * p.v / den ** (g + 1))
            else:
                num = a + b * p.u
                out = CurvePoint(self.curve, "B", den / num,
                                 self.scale * p.v / num ** (g + 1))
        return out.canonical()

    def multiplier_at(self, x) -> CycloNum:
        """The factor on y over the P^1 point x (requires f(x) finite-or-infinity fixed)."""
        a, _, c, d = self.mobius.a, self.mobius.b, self.mobius.c, self.mobius.d
        g = self.curve.genus
        if x is INF:
            return self.scale / a ** (g + 1)
        return self.scale / (c * x + d) ** (g + 1)

    def describe(self) -> dict:
        return {
            "matrix": [str(e) for e in self.mobius.entries()],
            "y_scale": str(self.scale),
        }

    def __repr__(self) -> str:  # pragma: no cover
        a, b, c, d = (str(e) for e in self.mobius.entries())
        return f"CurveAut([{a},{b};{c},{d}], scale={self.scale})"


def identity_aut(curve: HyperCurve) -> CurveAut:
    one, zero = curve.field.one, curve.field.zero
    return CurveAut(curve, MobiusMap(one, zero, zero, one), one, _checked=True)


def hyperelliptic_involution(curve: HyperCurve) -> CurveAut:
    one, zero = curve.field.one, curve.field.zero
    return CurveAut(curve, MobiusMap(one, zero, zero, one),
                    curve.field.rational(-1), _checked=True)


def _branch_set_invariant(curve: HyperCurve, f: MobiusMap) -> bool:
    image = {f.apply(x) if x is not INF else f.apply(INF) for x in curve.branch_set}
    return image == set(curve.branch_set)


def _lambda_raw(curve: HyperCurve, f: MobiusMap) -> CycloNum:
    """lambda with (p o f)(x) (cx+d)^(2g+2) = lambda p(x); raises if not proportional."""
    field = curve.field
    a, b, c, d = f.entries()
    q = [field.one]
    for alpha in curve.roots:
        q = _cpoly_mul(field, q, [b - d * alpha, a - c * alpha])
    for _ in range(2 * curve.genus + 2 - len(curve.roots)):
        q = _cpoly_mul(field, q, [d, c])
    p = _cpoly_from_roots(field, curve.roots)
    width = max(len(p), len(q))
    p = p + [field.zero] * (width - len(p))
    q = q + [field.zero] * (width - len(q))
    lam = None
    for pc, qc in zip(p, q):
        if not pc.is_zero():
            lam = qc / pc
            break
    if lam is None or any(qc != lam * pc for pc, qc in zip(p, q)):
        raise CurveError("branch polynomial is not projectively invariant")
    return lam


def lift_mobius(curve: HyperCurve, f: MobiusMap) -> tuple[CurveAut, CurveAut]:
    """The two liftings of a branch-set-preserving Moebius map; they differ by
    the hyperelliptic involution."""
    if not _branch_set_invariant(curve, f):
        raise CurveError("Moebius map does not preserve the branch set")
    lam = _lambda_raw(curve, f)
    try:
        root = curve.field.sqrt(lam)
    except CycloError as exc:
        raise CurveError(f"sqrt(lambda) is not available in Q(zeta_{curve.field.n})") from exc
    plus = CurveAut(curve, f, root, _checked=True)
    return plus, CurveAut(curve, f, -root, _checked=True)


# -- fixed points --------------------------------------------------------------


@dataclass(frozen=True)
class FixedFiber:
    """Fixed locus of one automorphism over one P^1-fixed value.

    ``count`` is 1 over a branch value, otherwise 2 when the y-multiplier is
    +1 and 0 when it is -1.  ``points`` holds exact coordinates when they are
    rational over the field; a fixed fiber whose y needs a square root outside
    the field keeps count 2 with representable = False.
    """

    value: object               # CycloNum or INF
    count: int
    points: tuple[CurvePoint, ...]
    representable: bool


def _mobius_fixed_values(curve: HyperCurve, f: MobiusMap) -> list:
    """All fixed points of f on P^1, exactly; raises when they live outside the field."""
    field = curve.field
    a, b, c, d = f.entries()
    if f.is_identity_proj():
        raise CurveError("identity Moebius map fixes the whole line")
    values = []
    if c.is_zero():
        values.append(INF)
        if a != d:
            values.append(b / (d - a))
    else:
        disc = (d - a) * (d - a) + 4 * c * b
        try:
            root = field.sqrt(disc)
        except CycloError as exc:
            raise CurveError(
                "fixed values of the Moebius map are not rational over "
                f"Q(zeta_{field.n}); use a larger conductor") from exc
        half = (a - d)
        two_c = c + c
        values.append((half + root) / two_c)
        if not root.is_zero():
            values.append((half - root) / two_c)
    return values


def fixed_fibers(aut: CurveAut) -> list[FixedFiber]:
    """Fixed-point data of a nontrivial automorphism, fiber by fiber."""
    curve = aut.curve
    field = curve.field
    if aut.is_identity():
        raise CurveError("the identity fixes the whole curve")
    if aut.mobius.is_identity_proj():
        # scale is -1: the hyperelliptic involution side; fixed = branch points
        fibers = [FixedFiber(r, 1, (CurvePoint(curve, "A", r, field.zero),), True)
                  for r in curve.roots]
        if curve.infinity_is_branch:
            fibers.append(FixedFiber(INF, 1,
                                     (CurvePoint(curve, "B", field.zero, field.zero),), True))
        return fibers
    out = []
    for val in _mobius_fixed_values(curve, aut.mobius):
        v = curve.fiber_value(val)
        if v.is_zero():
            pt = (CurvePoint(curve, "B", field.zero, field.zero) if val is INF
                  else CurvePoint(curve, "A", val, field.zero))
            out.append(FixedFiber(val, 1, (pt,), True))
            continue
        m = aut.multiplier_at(val)
        if m == field.one:
            try:
                y = field.sqrt(v)
                pts = ((CurvePoint(curve, "B", field.zero, y) if val is INF
                        else CurvePoint(curve, "A", val, y)),
                       (CurvePoint(curve, "B", field.zero, -y) if val is INF
                        else CurvePoint(curve, "A", val, -y)))
                out.append(FixedFiber(val, 2, pts, True))
            except CycloError:
                out.append(FixedFiber(val, 2, (), False))
        elif m == -field.one:
            continue
        else:  # pragma: no cover - ruled out by scale^2 = lambda
            raise CurveError("fiber multiplier is not +-1")
    return sorted(out, key=lambda fb: (fb.value is INF, ()
                  if fb.value is INF else fb.value.sort_key()))


def fixed_point_count(aut: CurveAut) -> int:
    return sum(fb.count for fb in fixed_fibers(aut))


def fixed_points(aut: CurveAut) -> list[CurvePoint]:
    """All fixed points with exact coordinates; raises if any fixed point is
    not rational over the curve's field (counts remain available via
    fixed_fibers)."""
    pts: list[CurvePoint] = []
    for fb in fixed_fibers(aut):
        if not fb.representable:
            raise CurveError(
                "a fixed point exists whose y-coordinate needs a square root "
                "outside the field")
        pts.extend(fb.points)
    return pts


# -- finite group actions -------------------------------------------------------


@dataclass
class ActionCertificate:
    """Closure of a set of curve automorphisms with exact quotient data."""

    curve: HyperCurve
    elements: tuple[CurveAut, ...]
    group: Group                      # abstract copy; element i <-> elements[i]
    to_abstract: tuple[int, ...]
    matched_spec: str | None
    fixed_counts: dict[int, int]      # by element position, identity omitted
    branch_orders: tuple[int, ...]    # of C -> C/<everything>, sorted
    quotient_genus_full: int
    quotient_genera: dict[frozenset[int], int]  # by abstract-group subgroup

    @property
    def order(self) -> int:
        return len(self.elements)

    def fixed_count_of(self, aut: CurveAut) -> int:
        return self.fixed_counts.get(self.elements.index(aut), 0)

    def deg_branch_divisor(self) -> int:
        return len(self.branch_orders)


def close_under_composition(gens: list[CurveAut], cap: int = 64) -> list[CurveAut]:
    if not gens:
        raise CurveError("need at least one generator")
    curve = gens[0].curve
    elems = {identity_aut(curve)}
    frontier = list(elems)
    pool = list(gens)
    for g in pool:
        if g not in elems:
            elems.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                for c in (a.compose(b), b.compose(a)):
                    if c not in elems:
                        if len(elems) >= cap:
                            raise CurveError(f"closure exceeds the cap {cap}")
                        elems.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted(elems, key=CurveAut.key)


def _special_fibers(curve: HyperCurve, elements: list[CurveAut]):
    """P^1 values fixed by some nontrivial element, with fiber sizes."""
    values = {}
    for el in elements:
        if el.is_identity():
            continue
        if el.mobius.is_identity_proj():
            vals = list(curve.branch_set)
        else:
            vals = _mobius_fixed_values(curve, el.mobius)
        for val in vals:
            key = ("inf",) if val is INF else val.coeffs
            values.setdefault(key, val)
    out = []
    for _, val in sorted(values.items(), key=lambda kv: (kv[0] == ("inf",), kv[0])):
        size = 1 if curve.fiber_value(val).is_zero() else 2
        out.append((val, size))
    return out


def _point_stab_size(curve, elements, subset, val) -> int:
    """Order of the stabilizer in ``subset`` of each curve point over val."""
    branch = curve.fiber_value(val).is_zero()
    count = 0
    for i in subset:
        el = elements[i]
        fixed_on_line = (val is INF and el.mobius.c.is_zero()) or \
            (val is not INF and el.mobius.apply(val) == val)
        if not fixed_on_line:
            continue
        if branch or el.multiplier_at(val) == curve.field.one:
            count += 1
    return count


def _value_key(val):
    return ("inf",) if val is INF else val.coeffs


def quotient_genus_action(curve: HyperCurve, elements: list[CurveAut],
                          subset: frozenset[int]) -> int:
    """Genus of C/H for a subgroup H given by positions into ``elements``."""
    fibers = _special_fibers(curve, elements)
    ram = 0
    for val, size in fibers:
        s = _point_stab_size(curve, elements, subset, val)
        ram += size * (s - 1)
    h = len(subset)
    rhs = 2 * curve.genus - 2 - ram
    if rhs % h:
        raise CurveError("Riemann-Hurwitz gave a non-integral quotient genus")
    twice = rhs // h + 2
    if twice % 2:
        raise CurveError("Riemann-Hurwitz gave a non-integral quotient genus")
    return twice // 2


def branch_data_action(curve: HyperCurve, elements: list[CurveAut],
                       subset: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    """(quotient genus, branch orders of C -> C/H), both exact."""
    fibers = _special_fibers(curve, elements)
    genus = quotient_genus_action(curve, elements, subset)
    # orbit the special values under H and count branch points per orbit
    remaining = {_value_key(val): (val, size) for val, size in fibers}
    orders = []
    h = len(subset)
    while remaining:
        _, (val, size) = next(iter(sorted(remaining.items(),
                                          key=lambda kv: (kv[0] == ("inf",), kv[0]))))
        orbit = {_value_key(val): val}
        frontier = [val]
        while frontier:
            nxt = []
            for x in frontier:
                for i in subset:
                    y = elements[i].mobius.apply(x)
                    key = _value_key(y)
                    if key not in orbit:
                        orbit[key] = y
                        nxt.append(y)
            frontier = nxt
        for key in orbit:
            remaining.pop(key, None)
        s = _point_stab_size(curve, elements, subset, val)
        if s > 1:
            points_over = len(orbit) * size
            n_orbits, rem = divmod(points_over * s, h)
            if rem:
                raise CurveError("orbit bookkeeping failed")  # pragma: no cover
            orders.extend([s] * n_orbits)
    return genus, tuple(sorted(orders))


def group_action(curve: HyperCurve, gens: list[CurveAut], cap: int = 64,
                 match_catalog: bool = True) -> ActionCertificate:
    """Close the generators, abstract the group, and certify the action."""
    elements = close_under_composition(gens, cap=cap)
    n = len(elements)
    pos = {el: i for i, el in enumerate(elements)}
    table = [[pos[elements[i].compose(elements[j])] for j in range(n)] for i in range(n)]
    names = [f"a{i:02d}" for i in range(n)]
    group = Group([row[:] for row in table], names, spec=f"curve-action[{n}]")
    to_abstract = tuple(group.index(f"a{i:02d}") for i in range(n))

    matched = None
    if match_catalog:
        for spec in catalog_specs(max_order=64 if n > 16 else 16):
            try:
                cand = build_group(spec)
            except Exception:       # pragma: no cover
                continue
            if cand.order == n and find_isomorphism(group, cand) is not None:
                matched = spec
                break

    fixed_counts = {}
    for i, el in enumerate(elements):
        if not el.is_identity():
            fixed_counts[i] = sum(fb.count for fb in fixed_fibers(el))

    full = frozenset(range(n))
    genus_full, orders = branch_data_action(curve, elements, full)

    genera: dict[frozenset[int], int] = {}
    for sub in group.subgroups():
        positions = frozenset(i for i in range(n) if to_abstract[i] in sub)
        genera[sub] = quotient_genus_action(curve, elements, positions)

    return ActionCertificate(
        curve=curve,
        elements=tuple(elements),
        group=group,
        to_abstract=to_abstract,
        matched_spec=matched,
        fixed_counts=fixed_counts,
        branch_orders=orders,
        quotient_genus_full=genus_full,
        quotient_genera=genera,
    )


# -- curve-level certificates ----------------------------------------------------


@dataclass
class BiellipticCertificate:
    """Witness that a genus-3 curve with the given action is simultaneously
    hyperelliptic and bielliptic: a freely acting involution with genus-2
    quotient, quotient genera {0, 1} for the hyperelliptic involution and its
    composite, and the four-group partition identity on the nose."""

    etale_involution: CurveAut | None
    genus_sigma: int | None
    genus_tau: int | None
    genus_sigma_tau: int | None
    genus_four_group: int | None
    partition: genvec.AccolaReport | None
    passed: bool

    def as_dict(self) -> dict:
        return {
            "etale_involution": (self.etale_involution.describe()
                                 if self.etale_involution else None),
            "genus_sigma": self.genus_sigma,
            "genus_tau": self.genus_tau,
            "genus_sigma_tau": self.genus_sigma_tau,
            "genus_four_group": self.genus_four_group,
            "partition_lhs": self.partition.lhs if self.partition else None,
            "partition_rhs": self.partition.rhs if self.partition else None,
            "pass": self.passed,
        }


def hyperelliptic_bielliptic_certificate(curve: HyperCurve,
                                         action: ActionCertificate
                                         ) -> BiellipticCertificate:
    """Certify the genus-3 equivalence: double cover of a genus-2 curve
    <-> hyperelliptic and bielliptic, on this instance."""
    if curve.genus != 3:
        raise CurveError("the bielliptic certificate applies to genus 3 only")
    sigma = None
    for i, el in enumerate(action.elements):
        if el.is_identity() or el.order() != 2 or action.fixed_counts.get(i, 0):
            continue
        pair = next(s for s in action.quotient_genera
                    if len(s) == 2 and action.to_abstract[i] in s)
        if action.quotient_genera[pair] == 2:
            sigma = el
            break
    if sigma is None:
        return BiellipticCertificate(None, None, None, None, None, None, False)
    tau = hyperelliptic_involution(curve)
    four = close_under_composition([sigma, tau])
    ident = next(i for i, e in enumerate(four) if e.is_identity())

    def pair_genus(el):
        return quotient_genus_action(curve, four, frozenset({ident, four.index(el)}))

    g_sigma = pair_genus(sigma)
    g_tau = pair_genus(tau)
    g_st = pair_genus(sigma.compose(tau))
    g_four = quotient_genus_action(curve, four, frozenset(range(len(four))))
    report = genvec.accola_check(curve.genus,
                                 [(2, g_sigma), (2, g_tau), (2, g_st)], 4, g_four)
    passed = (len(four) == 4 and g_sigma == 2 and {g_tau, g_st} == {0, 1}
              and report.passed)
    return BiellipticCertificate(sigma, g_sigma, g_tau, g_st, g_four, report, passed)


@dataclass
class ExtendedActionData:
    """The action extended by the hyperelliptic involution: branch data of the
    rational quotient, the branch-polynomial character, and the splitting."""

    extended: ActionCertificate
    deg_d0: int
    orders: tuple[int, ...]
    quotient_genus: int
    lambda_values: dict[int, CycloNum]   # by position in the original action
    lambda_trivial: bool
    splits_as_product: bool

    def as_dict(self) -> dict:
        return {
            "order": self.extended.order,
            "matched": self.extended.matched_spec,
            "deg_d0": self.deg_d0,
            "orders": list(self.orders),
            "quotient_genus": self.quotient_genus,
            "lambda_trivial": self.lambda_trivial,
            "splits_as_product": self.splits_as_product,
        }


def g0_branch_data(curve: HyperCurve, action: ActionCertificate,
                   cap: int = 64) -> ExtendedActionData:
    """Close the action with the hyperelliptic involution and certify the
    branch data of C -> C/G0 together with the character and splitting tests.

    Requires odd genus: only then is the branch-polynomial character defined
    on the projectivized group (the degree 2g+2 is divisible by 4), which is
    the hypothesis under which triviality forces G0 = G x Z2.
    """
    if curve.genus % 2 == 0:
        raise CurveError("the splitting analysis needs odd genus")
    tau = hyperelliptic_involution(curve)
    extended = group_action(curve, list(action.elements) + [tau], cap=cap)
    genus0 = extended.quotient_genus_full

    g = curve.genus
    lam_values: dict[int, CycloNum] = {}
    for i, el in enumerate(action.elements):
        lam = _lambda_raw(curve, el.mobius)
        lam_values[i] = lam / el.mobius.det() ** (g + 1)
    lam_trivial = all(v == curve.field.one for v in lam_values.values())

    product = direct_product(action.group, build_group("C2"))
    splits = find_isomorphism(extended.group, product) is not None

    return ExtendedActionData(
        extended=extended,
        deg_d0=len(extended.branch_orders),
        orders=extended.branch_orders,
        quotient_genus=genus0,
        lambda_values=lam_values,
        lambda_trivial=lam_trivial,
        splits_as_product=splits,
    )
