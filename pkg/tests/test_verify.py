import pytest

from equisym.verify import SUITES, Expectation, SuiteResult, cross_check, load_fixtures, run_suite


def test_expectation_relations():
    assert Expectation("a", 3, 3, "stated").passed
    assert not Expectation("a", 3, 4, "stated").passed
    assert Expectation("a", 3, 2, "stated", "<=").passed
    assert not Expectation("a", 3, None, "stated", ">=").passed


def test_suite_result_fails_on_any_mismatch():
    res = SuiteResult("x", [])
    res.expect("ok", 1, 1)
    assert res.passed
    res.expect("bad", 1, 2)
    assert not res.passed
    assert res.lines()[0].startswith("suite x: FAIL")
    assert res.to_json()["expectations"][1]["passed"] is False


def test_fixtures_carry_provenance():
    fx = load_fixtures()
    assert len(fx) >= 20
    for entry in fx.values():
        assert entry["provenance"] == "derived"
        assert entry["orbit_count"] == len(entry["sizes"]) == len(entry["representatives"])
        assert sum(entry["sizes"]) == entry["total_vectors"]


@pytest.mark.parametrize("name", ["f_family", "v_family", "u1_family", "u2_family"])
def test_family_suites_pass(name):
    res = run_suite(name)
    assert res.passed, "\n".join(e.line() for e in res.failures())
    assert any(e.provenance == "derived" for e in res.expectations)
    assert any(e.provenance == "stated" for e in res.expectations)


def test_bound_suites_pass():
    assert run_suite("bounds3", range(2, 12)).passed
    res = run_suite("bounds4")
    assert res.passed, "\n".join(e.line() for e in res.failures())


def test_decompositions_suite_small_case():
    checked, problems = cross_check("D:4", __import__("equisym").parse_signature("1;2^4"))
    assert checked == 4992 and problems == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert set(SUITES) == {
        "f_family", "v_family", "u1_family", "u2_family", "bounds3", "bounds4", "decompositions",
    }
