"""Triviality decision procedure: verdicts, witnesses, commutator splitting."""

import json

import pytest

from anaburnside.analyzer import (
    VERDICT_BURNSIDE,
    VERDICT_FT,
    VERDICT_TRIVIAL_FACTORS,
    VERDICT_UNKNOWN,
    VERDICT_WITNESS,
    analyze,
    analyze_disjoint_commutator,
    classify,
    factor_exponent,
)
from anaburnside.config import Config
from anaburnside.words import parse_word


def test_factor_exponent():
    assert factor_exponent(30) == ((2, 1), (3, 1), (5, 1))
    assert factor_exponent(12) == ((2, 2), (3, 1))
    assert factor_exponent(8) == ((2, 3),)
    assert factor_exponent(1) == ()


def test_odd_exponents_trivial_by_feit_thompson():
    for n in (3, 5, 7, 9, 15, 105):
        r = classify(parse_word("x^%d" % n), d=2)
        assert r.verdict == VERDICT_FT, n
        assert r.exponent == n


def test_two_prime_exponents_trivial_by_burnside():
    r = classify(parse_word("x^12"), d=2)
    assert r.verdict == VERDICT_BURNSIDE
    assert r.burnside == (2, 3, 1)
    r = classify(parse_word("x^8"), d=2)
    assert r.verdict == VERDICT_BURNSIDE
    assert r.burnside == (3, None, 0)
    r = classify(parse_word("x^24"), d=2)
    assert r.burnside == (3, 3, 1)


def test_witness_verdicts():
    r = classify(parse_word("x^30"), d=2)
    assert r.verdict == VERDICT_WITNESS
    assert [w.name for w in r.witnesses] == ["Alt(5)", "PSL(2,4)", "PSL(2,5)"]
    assert all(w.exponent == 30 for w in r.witnesses)
    assert all(w.assignments_checked > 0 for w in r.witnesses)

    r = classify(parse_word("x^60"), d=2)
    assert r.verdict == VERDICT_WITNESS
    assert "Alt(6)" in [w.name for w in r.witnesses]
    r = classify(parse_word("x^84"), d=2)
    assert "PSL(2,7)" in [w.name for w in r.witnesses]


def test_exponent_with_three_primes_but_no_witness():
    # 2*3*7 = 42 is even with three primes, yet no pool group has exponent
    # dividing 42, so the procedure reports Unknown rather than guessing.
    r = classify(parse_word("x^42"), d=2)
    assert r.verdict == VERDICT_UNKNOWN
    assert r.witnesses == ()


def test_derived_word_is_unknown():
    r = classify(parse_word("[x,y]"), d=2)
    assert r.verdict == VERDICT_UNKNOWN
    assert r.case == "derived"
    assert r.exponent is None


def test_mixed_word_uses_gcd_exponent():
    # x^4 y^6 has signed sums 4 and 6; the quotient obeys x^gcd = x^2.
    r = classify(parse_word("x^4 y^6"), d=2)
    assert r.exponent == 2
    assert r.verdict == VERDICT_BURNSIDE


def test_classify_includes_bound():
    r = classify(parse_word("x^30"), d=2)
    assert r.bound is not None
    assert r.bound.main_bound.height == 63


def test_rank_one_note():
    r = classify(parse_word("x^8"), d=1)
    assert any("rank 1" in n for n in r.notes)


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify(parse_word("x x^-1"), d=2)
    with pytest.raises(ValueError):
        classify(parse_word("x^2"), d=0)


def test_disjoint_commutator_isomorphism():
    r = analyze(parse_word("[x^30,y]"), d=2)
    assert r.case == "disjoint_commutator"
    assert r.verdict == VERDICT_WITNESS
    assert "isomorphic" in r.conclusion
    assert [w.name for w in r.witnesses] == ["Alt(5)", "PSL(2,4)", "PSL(2,5)"]
    assert len(r.sub_reports) == 2


def test_disjoint_commutator_both_trivial():
    r = analyze(parse_word("[x^9,y^4]"), d=2)
    assert r.verdict == VERDICT_TRIVIAL_FACTORS
    assert "both factor varieties are trivial" in r.conclusion
    sub_verdicts = [s.verdict for s in r.sub_reports]
    assert sub_verdicts == [VERDICT_FT, VERDICT_BURNSIDE]


def test_disjoint_commutator_unknown_embeds():
    r = analyze(parse_word("[[x,y],[z,w]]"), d=2)
    assert r.verdict == VERDICT_UNKNOWN
    assert "subdirect" in r.conclusion
    assert all(s.case == "derived" for s in r.sub_reports)


def test_abelian_law_collapses():
    r = analyze(parse_word("[x,y]"), d=2)
    assert r.case == "disjoint_commutator"
    assert r.verdict == VERDICT_FT
    assert "bare variable" in r.conclusion


def test_analyze_routes_plain_words_to_classify():
    r = analyze(parse_word("x^12"), d=2)
    assert r.case == "periodic"
    assert r.verdict == VERDICT_BURNSIDE


def test_analyze_disjoint_commutator_requires_split():
    with pytest.raises(ValueError):
        analyze_disjoint_commutator(parse_word("x^6"), d=2)
    with pytest.raises(ValueError):
        analyze_disjoint_commutator(parse_word("[x,y] x"), d=2)


def test_report_json_deterministic():
    a = analyze(parse_word("[x^30,y]"), d=2).to_dict()
    b = analyze(parse_word("[x^30,y]"), d=2).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["verdict"] == VERDICT_WITNESS
    # [x^30,y] has word length 62, so the closed form sits at 2*62 + 3.
    assert a["bound"]["main_bound_height"] == 127


def test_config_threads_through():
    cfg = Config(c=4.0)
    r = classify(parse_word("x^30"), d=2, config=cfg)
    assert r.bound.to_dict()["config"]["c"] == 4.0
