from hbhomology.braid import parse_braid
from hbhomology.suites import crossing_count, euler_check, markov_check, relation_checks, report_passed, sample_instances


def test_sampling_is_deterministic():
    a = sample_instances(5, 6, max_crossings=5)
    b = sample_instances(5, 6, max_crossings=5)
    assert a == b
    accepted, rejected = a
    assert len(accepted) == 6
    assert all(beta.genus <= 2 and beta.strands <= 2 for beta, _, _ in accepted + rejected)
    assert all(beta.genus + beta.strands > 1 for beta, _, _ in accepted)


def test_crossing_count():
    assert crossing_count(parse_braid("t1", 1, 1)) == 2
    assert crossing_count(parse_braid("t2 s1", 2, 2)) == 3
    assert crossing_count(parse_braid("t1", 2, 1)) == 4


def test_markov_check_report():
    r = markov_check(parse_braid("t1 s1", 1, 2), parse_braid("s1^-1", 1, 2), -1)
    assert report_passed(r) and r["nonzero"]


def test_euler_check_report():
    r = euler_check(parse_braid("t1^-1", 1, 1))
    assert r["chains_vs_hecke"] and report_passed(r)


def test_relation_checks_genus_one():
    assert all(r["equal"] for r in relation_checks(1, 2))


def test_report_passed_reads_known_keys():
    assert not report_passed({"equal": False, "other": True})
    assert report_passed({"conjugation": True, "stabilization_ok": True, "seconds": 0})
