import pytest

import tclab


def test_zdcl_surface():
    r = tclab.zdcl("surface:2")
    assert r["zdcl"] == 4
    assert len(r["witness"]) == 4


def test_tc_report_wedge():
    r = tclab.tc_report("wedge:2")
    assert r["tc_lower"] == 3
    assert r["paper_value"] == 3


def test_cohomology_of_s3():
    r = tclab.cohomology("s3", "trivial-Z", 2)
    assert r["cohomology"]["invariant_factors"] == [2]


def test_canonical_class_is_essential():
    r = tclab.obstructions("c2", "aug-ideal", 1)
    assert r["verdict"] == "essential"
    assert r["certificate_verified"]


def test_canonical_identities():
    assert tclab.canonical("c3")["ok"]


def test_verify_suite():
    r = tclab.verify("symplectic")
    assert r["passed"]
    assert "couple-integrity" in tclab.suite_names()


def test_errors_are_raised():
    with pytest.raises(tclab.TclabError):
        tclab.zdcl("klein")
