"""Generating vectors, genus arithmetic and fixed-point counts, with a
brute-force all-tuples oracle for the enumeration."""

import itertools

import pytest

from isoprod.genvec import (GeneratingVector, Signature, VectorError, accola_check,
                            accola_dihedral, accola_elementary2, enumerate_vectors,
                            fixed_point_count, quotient_genus, rh_genus,
                            stabilizer_set, total_ramification)
from isoprod.smallgroups import build_group

SIG6 = Signature.parse("0:2,2,2,2,2,2")


def enumerate_bruteforce(group, sig, exclude=frozenset()):
    """Oracle: every branch tuple over the order-matched elements, every handle
    tuple over G^(2g'), filtered by the long relation and generation."""
    candidates = [
        [x for x in group.elements()
         if group.element_order(x) == m and x not in exclude]
        for m in sig.orders
    ]
    out = []
    for branch in itertools.product(*candidates):
        for handles in itertools.product(group.elements(), repeat=2 * sig.base_genus):
            acc = group.prod(branch)
            for a, b in zip(handles[0::2], handles[1::2]):
                acc = group.mul(acc, group.commutator(a, b))
            if acc != group.identity:
                continue
            if group.closure(branch + handles) != frozenset(group.elements()):
                continue
            out.append((branch, handles))
    return sorted(out)


def test_signature_parsing():
    sig = Signature.parse("1:3")
    assert sig.base_genus == 1 and sig.orders == (3,)
    assert Signature.parse("1:") == Signature(1, ())
    assert str(Signature(0, (2, 2, 3))) == "0:2,2,3"
    assert Signature(0, (3, 2, 2)).orders == (2, 2, 3)
    with pytest.raises(VectorError):
        Signature(0, (1, 2))
    with pytest.raises(VectorError):
        Signature.parse("x:2")


def test_rh_genus_values():
    assert rh_genus(4, SIG6) == 3
    assert rh_genus(8, Signature.parse("1:2")) == 3
    assert rh_genus(1, Signature.parse("0:")) == 0
    assert rh_genus(6, Signature.parse("1:3")) == 3
    assert rh_genus(3, Signature.parse("0:3,3,3,3")) == 2
    with pytest.raises(VectorError):
        rh_genus(4, Signature.parse("0:3"))  # 3 does not divide 4
    with pytest.raises(VectorError):
        rh_genus(2, Signature.parse("0:2"))  # odd total ramification


def test_constrained_enumeration_count():
    v4 = build_group("C2^2")
    vecs = enumerate_vectors(v4, SIG6, exclude={v4.index("e1")})
    assert len(vecs) == 30
    # oracle agreement including the exclusion filter
    oracle = enumerate_bruteforce(v4, SIG6, exclude={v4.index("e1")})
    assert [(v.branch, v.handles) for v in vecs] == oracle


def test_enumeration_empty_cases():
    c4 = build_group("C4")
    assert enumerate_vectors(c4, SIG6, exclude={c4.index("r2")}) == []
    c6 = build_group("C6")
    assert enumerate_vectors(c6, Signature.parse("1:3")) == []


@pytest.mark.parametrize("spec,sig", [
    ("C2^2", "0:2,2,2,2,2,2"),
    ("C2^2", "0:2,2,2,2"),
    ("S3", "0:2,2,3,3"),
    ("S3", "0:2,2,2,2,2,2"),
    ("D4", "0:2,2,2,2,2,2"),
    ("D4", "0:2,2,4,4"),
    ("Q8", "0:4,4,4"),
    ("C8", "0:2,8,8"),
    ("C2^3", "0:2,2,2,2"),
    ("S3", "1:3"),
    ("D4", "1:2"),
    ("C2^2", "1:2,2"),
])
def test_enumeration_matches_bruteforce(spec, sig):
    group = build_group(spec)
    signature = Signature.parse(sig)
    vecs = enumerate_vectors(group, signature)
    assert [(v.branch, v.handles) for v in vecs] == enumerate_bruteforce(group, signature)


def test_vector_validation():
    v4 = build_group("C2^2")
    e1, e2, e3 = (v4.index(n) for n in ("e1", "e2", "e3"))
    v = GeneratingVector(v4, SIG6, (e2,) * 4 + (e3,) * 2, ())
    v.validate()
    with pytest.raises(VectorError):  # long relation fails
        GeneratingVector(v4, SIG6, (e2,) * 5 + (e3,), ())
    with pytest.raises(VectorError):  # does not generate
        GeneratingVector(v4, SIG6, (e2,) * 6, ())
    with pytest.raises(VectorError):  # wrong order
        GeneratingVector(v4, Signature.parse("0:2,2,4,4"), (e1, e1, e2, e2), ())


def test_stabilizer_sets():
    v4 = build_group("C2^2")
    e1, e2, e3 = (v4.index(n) for n in ("e1", "e2", "e3"))
    vc = GeneratingVector(v4, Signature.parse("1:2,2"), (e1, e1), (e2, e3))
    assert stabilizer_set(vc).elements == {e1}

    # the order-3 branch image of a genus-1 cover has the full rotation
    # subgroup as stabilizer set
    s3g = build_group("S3")
    r3 = s3g.index("(123)")
    vc2 = GeneratingVector(s3g, Signature.parse("1:3"), (r3,), (r3, s3g.index("(12)")))
    assert stabilizer_set(vc2).elements == {r3, s3g.index("(132)")}

    # central order-2 branch image: its own singleton (conjugation-closed)
    d4 = build_group("D4")
    s, r = d4.index("s"), d4.index("r")
    vc3 = GeneratingVector(d4, Signature.parse("1:2"), (d4.index("r2"),), (s, r))
    assert stabilizer_set(vc3).elements == {d4.index("r2")}

    s3 = build_group("S3")
    t = [s3.index(n) for n in ("(12)", "(12)", "(13)", "(13)", "(23)", "(23)")]
    vf = GeneratingVector(s3, SIG6, tuple(t), ())
    assert stabilizer_set(vf).elements == {s3.index("(12)"), s3.index("(13)"),
                                           s3.index("(23)")}
    # unbranched cover: free action
    c2 = build_group("C2")
    free = GeneratingVector(c2, Signature.parse("1:"), (), (1, 1))
    assert stabilizer_set(free).elements == frozenset()


def test_fixed_point_counts_reflection_vector():
    d4 = build_group("D4")
    s, rs, r = d4.index("s"), d4.index("rs"), d4.index("r")
    v = GeneratingVector(d4, SIG6, (s, s, s, s, rs, rs), ())
    assert fixed_point_count(v, s) == 8
    assert fixed_point_count(v, rs) == 4
    assert fixed_point_count(v, r) == 0
    assert fixed_point_count(v, d4.index("r2s")) == 8
    assert fixed_point_count(v, d4.index("r3s")) == 4
    with pytest.raises(VectorError):
        fixed_point_count(v, d4.identity)


def test_total_fixed_points_match_ramification():
    cases = [
        ("D4", SIG6, None),
        ("S3", SIG6, None),
        ("C2^2", SIG6, None),
        ("S3", Signature.parse("1:3"), None),
    ]
    for spec, sig, _ in cases:
        group = build_group(spec)
        for v in enumerate_vectors(group, sig)[:25]:
            total = sum(fixed_point_count(v, h) for h in group.elements()
                        if h != group.identity)
            assert total == total_ramification(group.order, sig)


def test_stabilizer_set_equals_positive_fixed_counts():
    d4 = build_group("D4")
    for v in enumerate_vectors(d4, SIG6)[:40]:
        expected = {h for h in d4.elements()
                    if h != d4.identity and fixed_point_count(v, h) > 0}
        assert stabilizer_set(v).elements == expected


def test_quotient_genus_families():
    v4 = build_group("C2^2")
    e1, e2, e3 = (v4.index(n) for n in ("e1", "e2", "e3"))
    vf = GeneratingVector(v4, SIG6, (e2,) * 4 + (e3,) * 2, ())
    assert quotient_genus(vf, v4.cyclic_subgroup(e1)) == 2
    assert quotient_genus(vf, v4.cyclic_subgroup(e2)) == 0
    assert quotient_genus(vf, v4.cyclic_subgroup(e3)) == 1

    vc = GeneratingVector(v4, Signature.parse("1:2,2"), (e1, e1), (e2, e3))
    assert quotient_genus(vc, v4.cyclic_subgroup(e2)) == 2
    assert quotient_genus(vc, v4.cyclic_subgroup(e3)) == 2
    assert quotient_genus(vc, v4.cyclic_subgroup(e1)) == 1

    # endpoints: trivial subgroup gives the curve, the full group the base
    assert quotient_genus(vf, {v4.identity}) == rh_genus(4, SIG6)
    assert quotient_genus(vf, set(v4.elements())) == 0
    assert quotient_genus(vc, set(v4.elements())) == 1


def test_quotient_genus_dihedral_sides():
    s3 = build_group("S3")
    t = [s3.index(n) for n in ("(12)", "(12)", "(13)", "(13)", "(23)", "(23)")]
    vf = GeneratingVector(s3, SIG6, tuple(t), ())
    assert quotient_genus(vf, s3.cyclic_subgroup(s3.index("(123)"))) == 2
    assert quotient_genus(vf, s3.cyclic_subgroup(s3.index("(12)"))) == 1

    d4 = build_group("D4")
    s, rs = d4.index("s"), d4.index("rs")
    vf3 = GeneratingVector(d4, SIG6, (s, s, s, s, rs, rs), ())
    assert quotient_genus(vf3, d4.cyclic_subgroup(d4.index("r"))) == 2
    assert quotient_genus(vf3, d4.cyclic_subgroup(s)) == 1
    assert quotient_genus(vf3, d4.cyclic_subgroup(rs)) == 2
    with pytest.raises(VectorError):
        quotient_genus(vf3, {d4.identity, s, rs})  # not a subgroup


def test_accola_reports():
    rep = accola_check(3, [(2, 2), (2, 0), (2, 1)], 4, 0)
    assert (rep.lhs, rep.rhs, rep.passed) == (6, 6, True)
    assert accola_dihedral(4, 0, 3, 2, 1).passed
    assert accola_dihedral(5, 0, 4, 2, 1, 2).passed
    assert accola_elementary2(3, 0, [2, 0, 1], 2).passed
    assert not accola_check(4, [(2, 2), (2, 0), (2, 1)], 4, 0).passed
    with pytest.raises(VectorError):
        accola_check(3, [(2, 2), (2, 1)], 4, 0)  # fewer than 3 parts
    with pytest.raises(VectorError):
        accola_dihedral(5, 0, 4, 2, 1)  # even dihedral needs both genera
    with pytest.raises(VectorError):
        accola_dihedral(4, 0, 3, 2, 1, 2)  # odd dihedral takes one genus


def test_revalidation_of_enumerated_vectors():
    for spec, sig in (("S3", SIG6), ("D4", Signature.parse("1:2"))):
        group = build_group(spec)
        for v in enumerate_vectors(group, sig)[:50]:
            v.validate()
