"""Double-cover numerics: invariants, resolution folds, the case solver and
the plane-model bookkeeping."""

import random
from fractions import Fraction

import pytest

from isoprod.doublecover import (AmbientModel, BranchCurveModel, CoverError,
                                 SingularityNode, bicanonical_ledger,
                                 branch_class_solver, canonical_resolution,
                                 conic_through_points, double_cover_invariants,
                                 plane_model_certificate, select_feasible_i,
                                 xiao_case_solver)


def six_pair_model(e=1):
    return BranchCurveModel(
        ambient=AmbientModel("hirzebruch", e=e), k=8, l=18,
        singularities=[SingularityNode(4, [SingularityNode(6)],
                                       tangent_to_fiber=True) for _ in range(6)])


def test_double_cover_invariants_plane():
    plane = AmbientModel("plane")
    assert double_cover_invariants(plane, (5,)) == (7, 8)   # p_g = 6, q = 0
    assert double_cover_invariants(plane, (4,)) == (4, 2)   # p_g = 3, q = 0
    with pytest.raises(CoverError):
        double_cover_invariants(plane, (Fraction(7, 2),))


def test_double_cover_invariants_hirzebruch():
    f1 = AmbientModel("hirzebruch", e=1)
    assert double_cover_invariants(f1, (4, 11)) == (25, 56)
    f0 = AmbientModel("hirzebruch", e=0)
    # bidegree (2,3) branch on the quadric: half class (1, 1.5) is invalid
    with pytest.raises(CoverError):
        BranchCurveModel(f0, k=2, l=3).half_class()


def test_headline_resolution():
    ledger = canonical_resolution(six_pair_model())
    assert ledger.chi == 1
    assert ledger.ksq_resolved == -4
    assert ledger.minus_one_curves == 12
    assert ledger.ksq_minimal == 8
    assert ledger.k_quotient_sq == -4
    assert "good-model identities hold" in ledger.notes


def test_smooth_branch_resolution_is_identity_fold():
    plane = AmbientModel("plane")
    model = BranchCurveModel(plane, degree=10)
    ledger = canonical_resolution(model)
    assert (ledger.chi, ledger.ksq_resolved) == double_cover_invariants(plane, (5,))
    assert ledger.minus_one_curves == 0


def test_negligible_nodes_cost_nothing():
    base = canonical_resolution(BranchCurveModel(AmbientModel("plane"), degree=10))
    rng = random.Random(2)
    for _ in range(20):
        # random negligible forests of depth <= 3
        def tree(depth):
            kids = [tree(depth - 1) for _ in range(rng.randint(0, 2))] if depth else []
            return SingularityNode(2, kids)
        model = BranchCurveModel(AmbientModel("plane"), degree=10,
                                 singularities=[tree(2) for _ in range(rng.randint(1, 3))])
        assert all(root.is_negligible() for root in model.singularities)
        ledger = canonical_resolution(model)
        assert (ledger.chi, ledger.ksq_resolved) == (base.chi, base.ksq_resolved)
        assert ledger.minus_one_curves == 0


def test_resolution_order_invariance():
    nodes = [SingularityNode(4, [SingularityNode(6)]), SingularityNode(2),
             SingularityNode(6), SingularityNode(4)]
    model_a = BranchCurveModel(AmbientModel("hirzebruch", e=1), k=8, l=18,
                               singularities=nodes)
    model_b = BranchCurveModel(AmbientModel("hirzebruch", e=1), k=8, l=18,
                               singularities=list(reversed(nodes)))
    la, lb = canonical_resolution(model_a), canonical_resolution(model_b)
    assert (la.chi, la.ksq_resolved, la.minus_one_curves) == \
        (lb.chi, lb.ksq_resolved, lb.minus_one_curves)


def test_singularity_validation():
    with pytest.raises(CoverError):
        SingularityNode(3)
    with pytest.raises(CoverError):
        SingularityNode(0)
    node = SingularityNode(4, [SingularityNode(6)])
    assert node.infinitely_near_pairs() == 1
    assert not node.is_negligible()
    assert SingularityNode(2, [SingularityNode(2)]).is_negligible()


def test_good_model_identities_both_directions():
    # the computed quotient K^2 satisfies both identities on the 6-pair model
    for e in range(0, 4):
        model = six_pair_model(e)
        bs = [n.b for n in model.all_nodes()]
        kq = canonical_resolution(model).k_quotient_sq
        assert 2 * model.k * model.l - sum(b * b for b in bs) == 4 * kq - 8
        assert -2 * (model.k + model.l) + sum(bs) == -2 * kq


def test_bicanonical_ledger():
    led = bicanonical_ledger(8, -4, 1, 8)
    assert led.t == 12
    assert led.r_prime_sq == 0
    assert led.ks_dot_r == 8
    assert led.k_quotient_dot_branch == 8
    assert led.branch_sq == 0
    assert led.cross_check_passed
    bad = bicanonical_ledger(8, -4, 1, 7)
    assert not bad.cross_check_passed
    a4ish = bicanonical_ledger(3, -4, 0, 0)
    assert a4ish.r_prime_sq == -5


def test_bicanonical_arithmetic_genus_identity():
    # p_a(B') = 1 + (B'^2 + K_W.B')/2 must equal K_W^2 + K_S^2 + 1
    for ksq in (3, 4, 8):
        for kq in (-6, -4, -1, 0):
            led = bicanonical_ledger(ksq, kq, 0, ksq)
            pa = 1 + (led.branch_sq + led.k_quotient_dot_branch) // 2
            assert pa == kq + ksq + 1


def test_xiao_cases():
    (a1,) = xiao_case_solver("A1", 8, 0)
    assert a1.beta_extra == (2, 2) and a1.k_quotient_sq == -1 and a1.r_prime_sq == 6
    (a2,) = xiao_case_solver("A2", 8, 0)
    assert a2.beta_extra == (2, 2, 2) and a2.r_prime_sq == 6
    (a4,) = xiao_case_solver("A4", 3, 0)
    assert a4.beta_extra == () and a4.k_quotient_sq == -4 and a4.r_prime_sq == -5
    for delta in (0, 1, 3):
        (s,) = xiao_case_solver("A1", 8, delta)
        assert s.r_prime_sq == 8 - 2 * delta - 2
        (s,) = xiao_case_solver("A4", 3, delta)
        assert s.r_prime_sq == 3 - 2 * delta - 8
        for i in range(1, 6):
            (s,) = xiao_case_solver("A3", 8, delta, i)
            assert s.r_prime_sq == 8 - 2 * delta - 2 * i + 2
            assert s.beta_extra == (2,) * (5 - i)
            assert s.l == 8 + 2 * i


def test_xiao_feasibility_filter():
    assert select_feasible_i(8, 0) == [5]
    sols = xiao_case_solver("A3", 8, 0)
    assert [s.i for s in sols if s.feasible] == [5]
    assert all(s.r_prime_sq == 10 - 2 * s.i for s in sols)


def test_xiao_errors():
    with pytest.raises(CoverError):
        xiao_case_solver("A5", 8, 0)
    with pytest.raises(CoverError):
        xiao_case_solver("A1", 8, -1)
    with pytest.raises(CoverError):
        xiao_case_solver("A1", 8, 0, i=2)
    with pytest.raises(CoverError):
        xiao_case_solver("A3", 8, 0, i=6)


def test_branch_class_solver():
    assert branch_class_solver("plane-degree") == {"solutions": [4, 5], "integral": True}
    assert branch_class_solver("plane-degree", 18) == {"solutions": [3, 6], "integral": True}
    dp = branch_class_solver("quadric-or-delpezzo")
    assert dp["solutions"] == [("5/2", "3"), ("7/2", "1")]
    assert not dp["integral"]
    with pytest.raises(CoverError):
        branch_class_solver("nonsense")


def test_conic_through_points():
    on_conic = [(Fraction(t), Fraction(t * t)) for t in range(6)]
    assert conic_through_points(on_conic) == 0
    generic = [(Fraction(1), Fraction(2)), (Fraction(3), Fraction(5)),
               (Fraction(-1), Fraction(7)), (Fraction(2), Fraction(11)),
               (Fraction(4), Fraction(3)), (Fraction(0), Fraction(1))]
    assert conic_through_points(generic) == -1
    with pytest.raises(CoverError):
        conic_through_points(on_conic[:5] + [on_conic[0]])
    with pytest.raises(CoverError):
        conic_through_points(on_conic[:5])


def test_plane_model_certificates():
    for family in ("I", "II", "III"):
        for e in range(0, 4):
            cert = plane_model_certificate(family, e)
            assert cert.passed, (family, e, cert.checks)
    with pytest.raises(CoverError):
        plane_model_certificate("I", 4)
    with pytest.raises(CoverError):
        plane_model_certificate("V", 1)


def test_plane_model_decomposition_details():
    names = {c["check"]: c for c in plane_model_certificate("I", 1).checks}
    assert "8, 8" in names["component-degrees"]["detail"].replace("[", "").replace("]", "")
    names3 = {c["check"]: c for c in plane_model_certificate("III", 1).checks}
    assert names3["component-degrees"]["detail"].count("16") == 2
