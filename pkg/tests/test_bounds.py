"""Bound stages: alternating, Lie grid, semisimple, recursion, main bound."""

import math

import mpmath
import pytest

from anaburnside.bounds import (
    AnabelianBounds,
    BoundParams,
    alt_product_bound,
    anabelian_bound,
    anabelian_bound_series,
    anabelian_intermediate_bound,
    lie_product_bound,
    main_theorem_bound,
    schreier_generator_bound,
    semisimple_bound,
    sporadic_factor,
)
from anaburnside.config import Config
from anaburnside.towers import (
    TowerNumber,
    close_t,
    cmp_t,
    from_real,
    get_precision,
    ln_t,
    mul_t,
    render_tower,
    set_precision,
    to_real,
    tower,
)
from anaburnside.words import parse_word

# (d, length) pairs whose alternating bound still fits in floating range.
FEASIBLE_POINTS = [(1, 2), (2, 2), (3, 2), (4, 2), (5, 2), (1, 3), (2, 3),
                   (1, 4), (2, 4), (1, 5), (1, 6)]


def oracle_alt_value(d, length):
    """exp(l^2 ln l * exp(d l ln l)) at 200 digits, as an mpmath float."""
    with mpmath.workdps(200):
        l = mpmath.mpf(length)
        return mpmath.exp(l ** 2 * mpmath.ln(l) * mpmath.exp(d * l * mpmath.ln(l)))


def test_params_validation():
    with pytest.raises(ValueError):
        BoundParams(d=0, length=4)
    with pytest.raises(ValueError):
        BoundParams(d=1, length=1)
    with pytest.raises(ValueError):
        BoundParams(d=1, length=4, k=0)


def test_params_x():
    p = BoundParams(d=2, length=30)
    assert math.isclose(p.x, 2.0 * 2 * 30 * math.log(30))
    assert BoundParams(d=1, length=2).x >= 2


def test_alt_bound_smallest_point_is_exact():
    b = alt_product_bound(BoundParams(d=1, length=2))
    # exp(4 ln2 * exp(2 ln2)) = 2^16.
    assert abs(to_real(b) - 65536) < 1e-40


def test_alt_bound_against_high_precision_oracle():
    for d, length in FEASIBLE_POINTS:
        b = alt_product_bound(BoundParams(d=d, length=length))
        got = to_real(b)
        want = oracle_alt_value(d, length)
        with mpmath.workdps(200):
            rel = abs(mpmath.mpf(got) - want) / want
        assert rel < 1e-9, (d, length, rel)


def test_lie_grid_smallest_point():
    p = BoundParams(d=1, length=2)
    lie = lie_product_bound(p)
    # Only family A admits (k=1, q=2); the term is exp(8 ln 8) = 8^8.
    assert abs(to_real(lie.grids["A"]) - mpmath.mpf(8) ** 8) < 1e-30
    assert cmp_t(lie.grid_total, lie.grids["A"]) == 0
    for family, value in lie.grids.items():
        if family != "A":
            assert cmp_t(value, tower(0, 1)) == 0


def test_lie_closed_form_value():
    p = BoundParams(d=1, length=2)
    lie = lie_product_bound(p)
    # exp(c3 (ln 2)^3 exp(exp(c4 (ln 2)^2))) with unit constants.
    with mpmath.workdps(60):
        ln2 = mpmath.ln(2)
        want = mpmath.exp(ln2 ** 3 * mpmath.exp(mpmath.exp(ln2 ** 2)))
    assert math.isclose(float(to_real(lie.closed)), float(want), rel_tol=1e-12)


def test_lie_grid_under_closed_for_length_at_least_four():
    for d in (1, 2, 3):
        for length in (4, 8, 16):
            lie = lie_product_bound(BoundParams(d=d, length=length))
            assert cmp_t(lie.grid_total, lie.closed) <= 0, (d, length)


def test_sporadic_factor():
    # The default placeholder e^100, raised to d=3, is e^300.
    s = sporadic_factor(BoundParams(d=3, length=4))
    assert math.isclose(float(to_real(ln_t(s))), 300.0, rel_tol=1e-12)


def test_semisimple_product_exact_at_smallest_point():
    p = BoundParams(d=1, length=2)
    ss = semisimple_bound(p)
    with mpmath.workdps(60):
        want = mpmath.ln(mpmath.mpf(65536)) + 8 * mpmath.ln(8) + 100
    got = to_real(ln_t(ss.product))
    assert math.isclose(float(got), float(want), rel_tol=1e-12)


def test_semisimple_normalized_matches_k1_recursion():
    for d in (1, 2, 3):
        for length in (2, 8, 30):
            p = BoundParams(d=d, length=length)
            ss = semisimple_bound(p)
            ab = anabelian_bound(BoundParams(d=d, length=length, k=1))
            assert cmp_t(ss.normalized, ab.recursive) == 0


def test_recursion_chain_inequalities():
    for d in (1, 3, 5):
        for length in (2, 16, 64):
            for k in (1, 2, 5, 20):
                p = BoundParams(d=d, length=length, k=k)
                ab = anabelian_bound(p)
                mid = anabelian_intermediate_bound(p)
                assert cmp_t(ab.recursive, mid) <= 0, (d, length, k)
                assert cmp_t(mid, ab.closed) <= 0, (d, length, k)


def test_closed_height_bookkeeping():
    for d in (1, 2, 5):
        for length in (2, 30):
            for k in (1, 3, 10):
                p = BoundParams(d=d, length=length, k=k)
                ab = anabelian_bound(p)
                base = from_real(2 * p.x)
                assert ab.closed.height == 2 * k + base.height


def test_series_matches_single_shots():
    p = BoundParams(d=2, length=8)
    series = anabelian_bound_series(p, 12)
    assert len(series) == 12
    for k in (1, 4, 12):
        one = anabelian_bound(BoundParams(d=2, length=8, k=k))
        assert cmp_t(series[k - 1].recursive, one.recursive) == 0
        assert cmp_t(series[k - 1].closed, one.closed) == 0
    with pytest.raises(ValueError):
        anabelian_bound_series(p, 0)


def test_schreier_bound():
    idx = from_real(65536)
    assert abs(to_real(schreier_generator_bound(2, idx)) - 65537) < 1e-40
    assert abs(to_real(schreier_generator_bound(2, idx, simplified=True))
               - 131072) < 1e-40
    assert to_real(schreier_generator_bound(1, idx)) == 1
    assert abs(to_real(schreier_generator_bound(3, from_real(10))) - 21) < 1e-40


def test_main_theorem_bound_height():
    report = main_theorem_bound(parse_word("x^30"), d=2)
    x = 2.0 * 2 * 30 * math.log(30)
    assert report.main_bound.height == 60 + from_real(2 * x).height
    assert report.main_bound.height == 63
    assert cmp_t(report.main_bound, report.anabelian_closed) == 0
    assert cmp_t(report.anabelian_recursive, report.anabelian_closed) <= 0


def test_main_theorem_bound_deterministic():
    a = main_theorem_bound(parse_word("x^30"), d=2)
    b = main_theorem_bound(parse_word("x^30"), d=2)
    assert render_tower(a.main_bound) == render_tower(b.main_bound)
    assert a.to_dict() == b.to_dict()


def test_main_theorem_lambda_override():
    base = main_theorem_bound(parse_word("x^30"), d=2)
    capped = main_theorem_bound(parse_word("x^30"), d=2, lambda_override=1)
    assert base.lambda_used == 30
    assert capped.lambda_used == 1
    assert cmp_t(capped.main_bound, base.main_bound) < 0


def test_main_theorem_rejects_empty_word():
    with pytest.raises(ValueError):
        main_theorem_bound(parse_word("x x^-1"), d=2)


def test_main_theorem_short_word_note():
    report = main_theorem_bound(parse_word("x"), d=1)
    assert report.params.length == 2
    assert any("length" in n for n in report.notes)


def test_report_to_dict_round_trip():
    report = main_theorem_bound(parse_word("[x,y]"), d=2)
    data = report.to_dict()
    assert data["main_bound"] == render_tower(report.main_bound)
    assert data["main_bound_height"] == report.main_bound.height
    assert data["config"]["c"] == 2.0


def test_oracle_precision_rerun():
    # The working precision can be raised; results agree with the default run.
    p = BoundParams(d=1, length=2)
    base = alt_product_bound(p)
    old = get_precision()
    set_precision(200)
    try:
        high = alt_product_bound(p)
    finally:
        set_precision(old)
    assert close_t(base, high, tol=1e-40)
