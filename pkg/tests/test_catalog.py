"""Catalog tables, order bounds, law-length bounds, candidate enumeration."""

import json
import math
import os

import pytest
from mpmath import mp

from anaburnside.catalog import (
    FAMILY_ORDER,
    AltId,
    AValue,
    LieId,
    SporadicId,
    a_value,
    b_value,
    candidates_for_law_length,
    candidates_json,
    catalog_table_json,
    catalog_table_rows,
    exact_order,
    is_prime_power,
    law_length_lower_bound,
    order_upper_bound,
    psl2,
)
from anaburnside.towers import cmp_t, from_real, to_real

SNAPSHOT = os.path.join(os.path.dirname(__file__), "data", "catalog_snapshot.json")


def test_a_value_table():
    assert a_value("A", 3) == AValue(2, 2)
    assert a_value("A", 1) == AValue(1, 1)
    assert a_value("2A", 4) == AValue(2, 2)
    assert a_value("B", 4) == AValue(4, 4)
    assert a_value("B", 5) == AValue(4, 5)
    assert a_value("C", 7) == AValue(7, 7)
    assert a_value("D", 5) == AValue(3, 4)
    assert a_value("2D", 6) == AValue(6, 6)
    assert a_value("2D", 7) == AValue(6, 6)
    fixed = {"E6": 4, "2E6": 4, "E7": 7, "E8": 7, "F4": 4, "G2": 1,
             "3D4": 3, "2B2": 1, "2F4": 2, "2G2": 1}
    for family, a in fixed.items():
        assert a_value(family) == AValue(a, a)


def test_b_value_table():
    assert b_value("A", 2) == 8
    assert b_value("2A", 2) == 8
    assert b_value("B", 3) == 21
    assert b_value("C", 3) == 21
    assert b_value("D", 4) == 28
    assert b_value("2D", 4) == 28
    fixed = {"E6": 78, "2E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14,
             "3D4": 28, "2B2": 5, "2F4": 26, "2G2": 7}
    for family, b in fixed.items():
        assert b_value(family) == b


def test_rank_constraints():
    with pytest.raises(ValueError):
        a_value("2A", 1)
    with pytest.raises(ValueError):
        a_value("C", 2)
    with pytest.raises(ValueError):
        b_value("D", 3)
    with pytest.raises(ValueError):
        a_value("E8", 7)
    with pytest.raises(ValueError):
        LieId("2B2", 2, 4)       # even power of 2
    with pytest.raises(ValueError):
        LieId("2F4", 4, 2)       # Tits boundary case excluded
    with pytest.raises(ValueError):
        LieId("2G2", 2, 9)       # even power of 3
    with pytest.raises(ValueError):
        LieId("A", 1, 6)         # not a prime power
    with pytest.raises(ValueError):
        AltId(4)
    with pytest.raises(ValueError):
        SporadicId(27)


def test_order_upper_bound():
    assert order_upper_bound(AltId(5)) == from_real(60)
    assert order_upper_bound(psl2(5)) == from_real(125)
    assert order_upper_bound(LieId("G2", 2, 3)) == from_real(3 ** 14)
    with mp.workdps(60):
        assert order_upper_bound(SporadicId(1)) == from_real(mp.exp(100))
        assert order_upper_bound(SporadicId(1), "E_1(10)") == from_real(mp.exp(10))


def test_exact_order():
    assert exact_order(AltId(6)) == 360
    assert exact_order(psl2(7)) == 168
    assert exact_order(psl2(4)) == 60
    assert exact_order(psl2(8)) == 504
    assert exact_order(LieId("E8", 8, 2)) is None
    assert exact_order(AltId(21)) is None


def test_exact_order_below_upper_bound():
    for q in range(2, 1001):
        if not is_prime_power(q):
            continue
        gid = psl2(q)
        assert cmp_t(from_real(exact_order(gid)), order_upper_bound(gid)) <= 0


def test_law_length_lower_bound():
    assert law_length_lower_bound(psl2(7)) == 7
    assert law_length_lower_bound(LieId("2B2", 2, 8)) == 2
    assert law_length_lower_bound(AltId(7)) == 7
    assert law_length_lower_bound(SporadicId(5)) == 1
    assert law_length_lower_bound(LieId("B", 5, 2), c_lower=1.0) == 16
    assert law_length_lower_bound(psl2(7), c_lower=0.5) == 3


def test_candidates_small_lengths():
    with pytest.raises(ValueError):
        candidates_for_law_length(0)
    c1 = candidates_for_law_length(1)
    assert [str(g) for g in c1 if not isinstance(g, SporadicId)] == ["2B2(2)"]
    assert sum(isinstance(g, SporadicId) for g in c1) == 26
    c4 = candidates_for_law_length(4)
    names = [str(g) for g in c4]
    assert "A_1(4)" in names and "A_1(5)" not in names
    assert not any(isinstance(g, AltId) for g in c4)


def test_candidates_length_30():
    c30 = candidates_for_law_length(30)
    alts = [g.m for g in c30 if isinstance(g, AltId)]
    assert alts == list(range(5, 31))
    qs = [g.q for g in c30 if isinstance(g, LieId) and (g.family, g.k) == ("A", 1)]
    assert qs == [q for q in range(2, 31) if is_prime_power(q)]


def test_candidates_psl2_iff():
    for length in [2, 3, 5, 8, 13, 21, 34]:
        have = {g.q for g in candidates_for_law_length(length)
                if isinstance(g, LieId) and (g.family, g.k) == ("A", 1)}
        want = {q for q in range(2, 2 * length + 4) if is_prime_power(q) and q <= length}
        assert have == want


def test_candidates_monotone():
    prev = set()
    for length in range(1, 16):
        cur = {str(g) for g in candidates_for_law_length(length)}
        assert prev <= cur
        prev = cur


def test_candidates_deterministic_order():
    a = [str(g) for g in candidates_for_law_length(12)]
    b = [str(g) for g in candidates_for_law_length(12)]
    assert a == b
    kinds = [type(g).__name__ for g in candidates_for_law_length(12)]
    first_lie = kinds.index("LieId")
    first_spor = kinds.index("SporadicId")
    assert all(k == "AltId" for k in kinds[:first_lie])
    assert all(k == "SporadicId" for k in kinds[first_spor:])
    lie = [g for g in candidates_for_law_length(12) if isinstance(g, LieId)]
    fam_seq = [g.family for g in lie]
    order = [f for f in FAMILY_ORDER if f in fam_seq]
    grouped = []
    for f in fam_seq:
        if not grouped or grouped[-1] != f:
            grouped.append(f)
    assert grouped == order
    for f in order:
        pairs = [(g.k, g.q) for g in lie if g.family == f]
        assert pairs == sorted(pairs)


def test_table_rows_shape():
    rows = catalog_table_rows()
    assert len(rows) == 60
    per_family = {}
    for r in rows:
        per_family.setdefault(r["family"], []).append(r["k"])
    assert per_family["A"] == list(range(1, 11))
    assert per_family["2A"] == list(range(2, 11))
    assert per_family["C"] == list(range(3, 11))
    assert per_family["D"] == list(range(4, 11))
    assert per_family["E8"] == [8]
    for r in rows:
        a = a_value(r["family"], r["k"])
        assert (r["a_low"], r["a_high"]) == (a.low, a.high)
        assert r["b"] == b_value(r["family"], r["k"])


def test_catalog_json_byte_stable():
    with open(SNAPSHOT, "rb") as fh:
        frozen = fh.read()
    assert catalog_table_json().encode() == frozen
    assert catalog_table_json() == catalog_table_json()


def test_candidates_json_schema():
    rows = json.loads(candidates_json(6))
    assert rows
    for row in rows:
        assert set(row) == {"family", "k", "q", "a_low", "a_high", "b", "bound"}
    alt_rows = [r for r in rows if r["family"] == "Alt"]
    assert [r["k"] for r in alt_rows] == [5, 6]
    assert all(r["bound"] == r["k"] for r in alt_rows)


def test_alt_order_uses_factorial():
    assert order_upper_bound(AltId(7)) == from_real(math.factorial(7) // 2)
    big = order_upper_bound(AltId(2000))
    with mp.workdps(60):
        assert cmp_t(big, from_real(mp.mpf(2000) ** 2000)) < 0
        assert cmp_t(from_real(mp.mpf(1000) ** 1000), big) < 0
