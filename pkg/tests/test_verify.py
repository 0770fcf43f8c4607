import json

import pytest

from skewcat.closure import ClosureBounds
from skewcat.linmap import ResourceError
from skewcat.partitions import CUP, IDENTITY, PRIMARY
from skewcat.symmetric import (
    EXPANSIONS, GENERATING_PARTITIONS, H3, corrupted_star_oracle, nontrivial_generators,
    star_oracle,
)
from skewcat.verify import (
    SUITES, Report, n2_oracle, run_suite, section_five_suite, suite_easiness, suite_functor,
    suite_skew_word_correspondence, suite_tensor_category,
)
from skewcat.words import SearchOracle, partition_of_word, reduce


def by_description(report):
    return {c.description: c for c in report.cases}


def test_report_status_rules():
    r = Report("x")
    r.add("a", True)
    assert r.status == "pass"
    r.add("b", None)
    assert r.status == "unknown"
    r.add("c", False, {"why": 1})
    assert r.status == "fail" and [c.description for c in r.failures()] == ["c"]
    assert json.loads(r.dumps())["cases"][2]["witness"] == {"why": 1}
    assert "[fail] c" in r.to_text()


def test_functor_small_separates_stated_and_exact_factor():
    rep = suite_functor(1, 2)
    states = {c.description.split(" equals ")[-1] if "equals" in c.description
              else c.description: c.status for c in rep.cases}
    assert rep.status == "fail"
    assert states["prod_{c=a}^{b-1}(n-c) times the sum over M"] == "fail"
    assert states["the sum over M with per-element loop counts"] == "pass"
    failing = [c.description for c in rep.failures()]
    assert len(failing) == 1 and "prod_" in failing[0]


def test_functor_guards():
    with pytest.raises(ResourceError):
        suite_functor(5, 4)
    with pytest.raises(ResourceError):
        suite_functor(2, 7)
    with pytest.raises(ValueError):
        suite_functor(0, 2)


def test_skew_word_on_symmetric_example_passes():
    rep = suite_skew_word_correspondence(GENERATING_PARTITIONS, star_oracle(4),
                                         ClosureBounds(8))
    assert rep.passed, rep.to_text()


def test_skew_word_negative_control_fails_with_h3():
    rep = suite_skew_word_correspondence(GENERATING_PARTITIONS, corrupted_star_oracle(4),
                                         ClosureBounds(8))
    assert rep.status == "fail"
    sound = by_description(rep)["word of every closure element is in N"]
    assert sound.status == "fail"
    assert sound.witness["failures"] > 0
    # a rotation of h3: its word is (a2 a1)^3, which a1 -> id sends to (2,5)
    assert partition_of_word(sound.witness["first"]["word"]) == H3


def test_skew_word_trivial_subgroup():
    rep = suite_skew_word_correspondence((), SearchOracle((), 3), ClosureBounds(6))
    assert rep.status in ("pass", "unknown")
    assert not rep.failures()


def test_easiness_verdicts():
    ns = suite_easiness(nontrivial_generators(4), star_oracle(4))
    assert ns.passed and ns.cases[0].description.endswith(": NotIn")
    n2 = n2_oracle(3)
    assert suite_easiness(n2.generators, n2, brute_force=False).cases[0].description.endswith(
        ": In")
    trivial = suite_easiness([reduce((1, 1))], SearchOracle((), 3))
    assert trivial.passed and trivial.cases[0].description.endswith(": In")


def test_section_five_suite_passes():
    rep = section_five_suite()
    assert rep.passed, rep.to_text()
    assert len(EXPANSIONS) == 3
    with pytest.raises(ValueError):
        section_five_suite(2)


def test_tensor_category_suite():
    assert suite_tensor_category((), None, 2, 4).passed
    rep = suite_tensor_category(GENERATING_PARTITIONS, star_oracle(4), 3, 4, ClosureBounds(8))
    assert rep.passed, rep.to_text()
    broken = suite_tensor_category([PRIMARY, IDENTITY, CUP], None, 2, 6, saturate=False)
    assert broken.status == "fail"
    assert broken.failures()[0].witness["violations"] > 0


def test_run_suite_names_and_determinism():
    assert set(SUITES) >= {"functor", "skew-word", "easiness", "section5", "tensor-category"}
    with pytest.raises(KeyError):
        run_suite("nope")
    a = run_suite("section5", threads=1).dumps()
    b = run_suite("example-s", threads=8).dumps()
    assert a == b
