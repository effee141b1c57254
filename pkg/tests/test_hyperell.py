"""Curves, charts, liftings and exact fixed-point data."""

from fractions import Fraction

import pytest

from isoprod.cyclo import cyclo_arith
from isoprod.hyperell import (INF, CurveAut, CurveError, CurvePoint, MobiusMap,
                              build_curve, close_under_composition, fixed_fibers,
                              fixed_point_count, fixed_points, g0_branch_data,
                              group_action, hyperelliptic_bielliptic_certificate,
                              hyperelliptic_involution, identity_aut, lift_mobius,
                              quotient_genus_action)

F12 = cyclo_arith(12)
R = F12.rational


def curve_one():
    roots = [R(s * v) for v in (2, 3, Fraction(1, 2), Fraction(1, 3)) for s in (1, -1)]
    return build_curve(roots, False, F12)


def curve_two():
    # y^2 = x (x^3 - 8)(x^3 - 1/8): roots 0 and the cube roots of 8 and 1/8
    xi = F12.zeta(4)
    roots = [F12.zero]
    for k in range(3):
        roots.append(R(2) * xi ** k)
        roots.append(R(Fraction(1, 2)) * xi ** k)
    return build_curve(roots, True, F12)


def mob(a, b, c, d):
    return MobiusMap(R(a), R(b), R(c), R(d))


def test_build_curve_validation():
    c = curve_one()
    assert c.genus == 3
    assert not c.infinity_is_branch
    with pytest.raises(CurveError):  # repeated roots
        build_curve([R(v) for v in (1, 2, 3, 4, 5, 5)], False, F12)
    with pytest.raises(CurveError):  # odd branch count
        build_curve([R(v) for v in (1, 2, 3, 4, 5)], False, F12)
    with pytest.raises(CurveError):  # too few branch points
        build_curve([R(v) for v in (1, 2, 3, 4)], False, F12)


def test_curve_with_infinity_branch():
    c = curve_two()
    assert c.genus == 3
    assert INF in c.branch_set
    assert c.fiber_value(INF).is_zero()


def test_point_chart_validation():
    c = curve_one()
    CurvePoint(c, "A", R(0), R(1))      # p(0) = 1
    CurvePoint(c, "B", F12.zero, R(1))  # k(0) = 1
    with pytest.raises(CurveError):
        CurvePoint(c, "A", R(0), R(2))
    with pytest.raises(CurveError):
        CurvePoint(c, "C", R(0), R(1))


def test_chart_gluing():
    c = curve_one()
    p_a = CurvePoint(c, "A", R(2), F12.zero)
    t = R(Fraction(1, 2))
    p_b = CurvePoint(c, "B", t, F12.zero)
    assert p_b.canonical() == p_a
    # a non-branch point glues with w = y / x^(g+1)
    y2 = c.p_eval(R(1))
    y = F12.sqrt(y2)
    pa = CurvePoint(c, "A", R(1), y)
    pb = CurvePoint(c, "B", R(1), y)  # t = 1/x = 1, w = y/1
    assert pb.canonical() == pa


def test_mobius_projective_action():
    f = mob(0, 1, 1, 0)  # 1/x
    assert f.apply(INF) == F12.zero
    assert f.apply(F12.zero) is INF
    assert f.apply(R(2)) == R(Fraction(1, 2))
    g = mob(-1, 0, 0, 1)
    assert g.apply(INF) is INF
    with pytest.raises(CurveError):
        mob(1, 2, 2, 4)  # zero determinant


def test_lift_mobius_pair():
    c = curve_one()
    plus, minus = lift_mobius(c, mob(-1, 0, 0, 1))
    tau = hyperelliptic_involution(c)
    # the two liftings differ exactly by the hyperelliptic involution
    assert minus == tau.compose(plus)
    assert plus.compose(plus).is_identity()
    with pytest.raises(CurveError):
        lift_mobius(c, mob(1, 1, 0, 1))  # x+1 does not preserve the roots


def test_lift_with_nontrivial_lambda():
    xi = F12.zeta(4)
    c = curve_two()
    f = MobiusMap(xi, F12.zero, F12.zero, F12.one)
    plus, minus = lift_mobius(c, f)
    # the published lifting (x, y) -> (xi x, xi^2 y) is one of the pair
    want = CurveAut(c, f, xi * xi)
    assert want in (plus, minus)
    other = minus if want == plus else plus
    assert other == hyperelliptic_involution(c).compose(want)
    assert want.order() == 3
    assert other.order() == 6
    # its fixed points are the two branch points over 0 and infinity
    assert {p.describe() for p in fixed_points(want)} == \
        {"(x=0, y=0)", "(inf, w=0)"}


def test_fixed_points_explicit():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    pts = fixed_points(e1)
    assert {p.describe() for p in pts} == \
        {"(x=0, y=1)", "(x=0, y=-1)", "(inf, w=1)", "(inf, w=-1)"}
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    assert fixed_points(e2) == []
    assert fixed_point_count(e2) == 0
    tau = hyperelliptic_involution(c)
    assert fixed_point_count(tau) == 8
    assert all(p.v.is_zero() for p in fixed_points(tau))
    with pytest.raises(CurveError):
        fixed_points(identity_aut(c))


def test_fixed_fiber_rational_coordinates_when_square():
    # on y^2 = (x^2-4)(x^2-9)(x^2-1/4)(x^2-1/9) the value p(+-1) = 16 is a
    # square, so the fibers fixed by (x,y) -> (1/x, y/x^4) realize exactly
    c = curve_one()
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    tau = hyperelliptic_involution(c)
    e2tau = tau.compose(e2)
    pts = fixed_points(e2tau)
    assert len(pts) == 4
    assert {p.describe() for p in pts} == \
        {"(x=1, y=4)", "(x=1, y=-4)", "(x=-1, y=4)", "(x=-1, y=-4)"}


def test_fixed_fiber_without_rational_coordinates():
    # on the curve with the order-3 symmetry, p(+-1) = -49/8 is not a square
    # in the field: counts certify via the +-1 multiplier, points stay abstract
    c = curve_two()
    s = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    tau = hyperelliptic_involution(c)
    stau = tau.compose(s)
    fibers = fixed_fibers(stau)
    assert sum(fb.count for fb in fibers) == 4
    assert all(not fb.representable for fb in fibers if fb.count == 2)
    with pytest.raises(CurveError):
        fixed_points(stau)
    # the freely acting lifting has no fixed points at all
    assert fixed_point_count(s) == 0


def test_chart_b_scan_agrees_with_chart_a():
    # fixed points found in chart A reappear in chart B through the gluing
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    pts = fixed_points(e1)
    for p in pts:
        q = p.canonical()
        if q.chart == "A" and not q.u.is_zero():
            g = c.genus
            t = q.u.inverse()
            w = q.v * t ** (g + 1)
            assert CurvePoint(c, "B", t, w).canonical() == q
        assert e1.act(q) == q


def test_composition_and_inverse():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    e3 = e1.compose(e2)
    assert e3.compose(e3).is_identity()
    assert e1.compose(e1.inverse()).is_identity()
    assert e2.inverse() == e2
    # scaling the matrix does not change the automorphism
    e1_scaled = CurveAut(c, mob(-5, 0, 0, 5), R(5 ** 4))
    assert e1_scaled == e1


def test_action_on_points_roundtrip():
    c = curve_one()
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    y = F12.sqrt(c.p_eval(R(2)) * R(Fraction(1, 2)) ** 0)
    # use the branch point (2, 0) and the infinity points
    p = CurvePoint(c, "A", R(2), F12.zero)
    q = e2.act(p)
    assert q == CurvePoint(c, "A", R(Fraction(1, 2)), F12.zero)
    assert e2.act(q) == p
    inf_pt = CurvePoint(c, "B", F12.zero, R(1))
    img = e2.act(inf_pt)
    assert img.chart == "A" and img.u.is_zero()
    assert e2.act(img) == inf_pt


def test_group_action_certificate_four_group():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    cert = group_action(c, [e1, e2])
    assert cert.order == 4
    assert cert.matched_spec == "C2^2"
    assert cert.quotient_genus_full == 1
    assert cert.branch_orders == (2, 2)
    genera = sorted(g for sub, g in cert.quotient_genera.items() if len(sub) == 2)
    assert genera == [1, 2, 2]
    assert sorted(cert.fixed_counts.values()) == [0, 0, 4]


def test_group_action_with_involution_is_rational():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    tau = hyperelliptic_involution(c)
    cert = group_action(c, [e1, e2, tau])
    assert cert.order == 8
    assert cert.matched_spec == "C2^3"
    assert cert.quotient_genus_full == 0
    assert cert.branch_orders == (2, 2, 2, 2, 2)
    # tau alone gives the hyperelliptic quotient
    solo = group_action(c, [tau])
    assert solo.order == 2 and solo.quotient_genus_full == 0


def test_riemann_hurwitz_bookkeeping():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    elements = close_under_composition([e1, e2])
    full = frozenset(range(len(elements)))
    g0 = quotient_genus_action(c, elements, full)
    total_ram = sum(fixed_point_count(el) for el in elements if not el.is_identity())
    assert 2 * c.genus - 2 == len(elements) * (2 * g0 - 2) + total_ram


def test_bielliptic_certificate_direct():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    action = group_action(c, [e1, e2])
    biell = hyperelliptic_bielliptic_certificate(c, action)
    assert biell.passed
    assert biell.genus_sigma == 2
    assert {biell.genus_tau, biell.genus_sigma_tau} == {0, 1}
    assert biell.partition.lhs == biell.partition.rhs == 6
    # the etale involution itself acts freely
    assert fixed_point_count(biell.etale_involution) == 0


def test_bielliptic_certificate_rejects_wrong_genus():
    # genus-2 curve: the certificate is specific to genus 3
    roots = [R(v) for v in (0, 1, 2, 3, 4, 5)]
    c2 = build_curve(roots, False, F12)
    tau = hyperelliptic_involution(c2)
    action = group_action(c2, [tau])
    with pytest.raises(CurveError):
        hyperelliptic_bielliptic_certificate(c2, action)


def test_g0_branch_data_direct():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    action = group_action(c, [e1, e2])
    data = g0_branch_data(c, action)
    assert data.extended.order == 8
    assert data.quotient_genus == 0
    assert data.deg_d0 == 5
    assert data.orders == (2, 2, 2, 2, 2)
    assert data.lambda_trivial
    assert data.splits_as_product


def test_g0_branch_data_needs_odd_genus():
    roots = [R(v) for v in (0, 1, 2, 3, 4, 5)]
    c2 = build_curve(roots, False, F12)
    tau = hyperelliptic_involution(c2)
    action = group_action(c2, [tau])
    with pytest.raises(CurveError):
        g0_branch_data(c2, action)


def test_closure_cap():
    c = curve_one()
    e1 = CurveAut(c, mob(-1, 0, 0, 1), F12.one)
    e2 = CurveAut(c, mob(0, 1, 1, 0), R(-1))
    with pytest.raises(CurveError):
        close_under_composition([e1, e2], cap=3)


def test_invalid_scale_rejected():
    c = curve_one()
    with pytest.raises(CurveError):
        CurveAut(c, mob(-1, 0, 0, 1), R(2))  # 2^2 is not the polynomial factor
