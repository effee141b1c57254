"""End-to-end certificates for the three explicit curve families."""

from fractions import Fraction

import pytest

from isoprod import genvec
from isoprod.families import CurveCertificate, certify_family, family_curve
from isoprod.hyperell import CurveError, fixed_point_count


def checks_by_name(cert: CurveCertificate) -> dict[str, bool]:
    return {c.name: c.passed for c in cert.checks}


@pytest.fixture(scope="module")
def certs():
    return {label: certify_family(label) for label in ("I", "II", "III")}


def test_all_certificates_pass(certs):
    for label, cert in certs.items():
        failing = [c.name for c in cert.checks if not c.passed]
        assert cert.passed, f"family {label} fails {failing}"


def test_genus_and_groups(certs):
    assert all(c.genus == 3 for c in certs.values())
    assert certs["I"].action.matched_spec == "C2^2"
    assert certs["II"].action.matched_spec == "S3"
    assert certs["III"].action.matched_spec == "D4"
    assert certs["I"].conductor == 12
    assert certs["II"].conductor == 12
    assert certs["III"].conductor == 24


def test_fixed_point_tables(certs):
    assert sorted(certs["I"].fixed_point_table.values()) == [0, 0, 4]
    assert sorted(certs["II"].fixed_point_table.values()) == [0, 0, 0, 2, 2]
    assert sorted(certs["III"].fixed_point_table.values()) == [0, 0, 0, 0, 0, 0, 4]


def test_quotient_genus_triple_family_one(certs):
    action = certs["I"].action
    genera = sorted(g for sub, g in action.quotient_genera.items() if len(sub) == 2)
    assert genera == [1, 2, 2]


def test_branch_degrees(certs):
    assert (certs["I"].deg_d, certs["I"].deg_d0) == (2, 5)
    assert (certs["II"].deg_d, certs["II"].deg_d0) == (1, 4)
    assert (certs["III"].deg_d, certs["III"].deg_d0) == (1, 4)
    assert certs["I"].d0_orders == (2, 2, 2, 2, 2)
    assert certs["II"].d0_orders == (2, 2, 2, 6)
    assert certs["III"].d0_orders == (2, 2, 2, 4)


def test_extended_group_splits(certs):
    assert certs["I"].extended_action.matched_spec == "C2^3"
    assert certs["II"].extended_action.matched_spec == "D6"
    assert certs["III"].extended_action.matched_spec == "C2xD4"
    for cert in certs.values():
        assert checks_by_name(cert)["extension-splits"]
        assert checks_by_name(cert)["polynomial-character-trivial"]
        assert checks_by_name(cert)["partition-identity"]
        assert checks_by_name(cert)["etale-genus-2-quotient"]
        assert checks_by_name(cert)["moduli-open-condition"]


def test_rejected_liftings_reported(certs):
    # the discarded lifting of each generator is reported with its fixed count;
    # for family I the alternative to the published vertical involution is free
    alt = certs["I"].alternative_liftings
    assert set(alt) == {"e1", "e2"}
    assert alt["e1"]["fixed_points"] == 0
    assert alt["e2"]["fixed_points"] == 4


def test_family_parameters_other_instances():
    cert = certify_family("I", a=25, b=Fraction(1, 4))
    assert cert.passed
    cert2 = certify_family("II", a=27)
    assert cert2.passed
    cert3 = certify_family("III", a=Fraction(1, 16))
    assert cert3.passed


def test_family_parameter_validation():
    with pytest.raises(CurveError):
        family_curve("I", a=2, b=9)      # 2 is not a rational square
    with pytest.raises(CurveError):
        family_curve("II", a=4)          # 4 is not a rational cube
    with pytest.raises(CurveError):
        family_curve("III", a=8)         # 8 is not a rational fourth power
    with pytest.raises(CurveError):
        family_curve("II", a=1)          # excluded parameter
    with pytest.raises(CurveError):
        family_curve("I", a=4, b=4)      # repeated roots
    with pytest.raises(CurveError):
        family_curve("IV")


def test_curve_level_counts_match_vector_counts(certs):
    # every curve automorphism count appears with the right multiplicity in
    # the coset-enumeration counts of the matching generating vector
    for label, cert in certs.items():
        fc = family_curve(label)
        vec = fc.abstract_vector
        vg = vec.group
        vec_counts = sorted(
            genvec.fixed_point_count(vec, x)
            for x in vg.elements() if x != vg.identity)
        curve_counts = sorted(cert.action.fixed_counts.values())
        assert vec_counts == curve_counts


def test_total_ramification_on_curves(certs):
    # sum of fixed points over nontrivial elements equals the Riemann-Hurwitz
    # ramification of C -> C/G: 2g-2 = |G|(2g0-2) + ram
    for cert in certs.values():
        action = cert.action
        ram = sum(action.fixed_counts.values())
        assert 2 * 3 - 2 == action.order * (2 * action.quotient_genus_full - 2) + ram
