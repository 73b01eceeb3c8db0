"""Finite simple group catalog: CFSG families, exponent tables, candidate enumeration.

Encodes the sixteen Lie-type families with their a(X) and b(X) exponents,
alternating and sporadic groups, order bounds, and the law-length lower
bounds (Bradford-Thom type) used to enumerate which simple groups can
satisfy a law of a given length.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from mpmath import mp

from .towers import TowerNumber, parse_tower, tower

# Family order follows the classification list: classical, then exceptional.
FAMILY_ORDER = (
    "A", "2A", "B", "C", "D", "2D",
    "E6", "2E6", "E7", "E8", "F4", "G2", "3D4", "2B2", "2F4", "2G2",
)

# rank constraints: classical families carry a minimal rank (below it the
# symbol names a smaller family or a non-simple group); exceptional families
# have one fixed rank.
_MIN_RANK = {"A": 1, "2A": 2, "B": 2, "C": 3, "D": 4, "2D": 4}
_FIXED_RANK = {
    "E6": 6, "2E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2,
    "3D4": 4, "2B2": 2, "2F4": 4, "2G2": 2,
}

# q constraints: Suzuki and Ree families live over odd powers of 2 resp. 3;
# the Tits group 2F4(2) is excluded here and treated as a sporadic-style
# placeholder, so 2F4 starts at q = 8.
_Q_KIND = {tag: "all" for tag in FAMILY_ORDER}
_Q_KIND.update({"2B2": "odd2", "2F4": "odd2_min8", "2G2": "odd3"})

SPORADIC_NAMES = (
    "M11", "M12", "M22", "M23", "M24",
    "J1", "J2", "J3", "J4",
    "Co1", "Co2", "Co3",
    "Fi22", "Fi23", "Fi24'",
    "HS", "McL", "He", "Ru", "Suz", "ON", "HN", "Ly", "Th",
    "B", "M",
)

DEFAULT_SPORADIC_MAX = "E_1(100)"


@dataclass(frozen=True)
class AltId:
    m: int

    def __post_init__(self):
        if self.m < 5:
            raise ValueError("alternating groups are simple only for degree >= 5")

    def __str__(self):
        return "Alt(%d)" % self.m


@dataclass(frozen=True)
class LieId:
    family: str
    k: int
    q: int

    def __post_init__(self):
        _check_rank(self.family, self.k)
        if not _q_admissible(self.family, self.q):
            raise ValueError("q=%d not admissible for family %s" % (self.q, self.family))

    def __str__(self):
        if self.family in _FIXED_RANK:
            return "%s(%d)" % (self.family, self.q)
        return "%s_%d(%d)" % (self.family, self.k, self.q)


@dataclass(frozen=True)
class SporadicId:
    index: int

    def __post_init__(self):
        if not (1 <= self.index <= 26):
            raise ValueError("sporadic index must lie in 1..26")

    @property
    def name(self):
        return SPORADIC_NAMES[self.index - 1]

    def __str__(self):
        return "Sporadic(%s)" % self.name


def psl2(q: int) -> LieId:
    """PSL(2,q) as the rank-1 A-family entry."""
    return LieId("A", 1, q)


def _check_rank(family: str, k: int) -> None:
    if family in _MIN_RANK:
        if k < _MIN_RANK[family]:
            raise ValueError(
                "family %s needs rank >= %d, got %d" % (family, _MIN_RANK[family], k)
            )
    elif family in _FIXED_RANK:
        if k != _FIXED_RANK[family]:
            raise ValueError(
                "family %s has fixed rank %d, got %d" % (family, _FIXED_RANK[family], k)
            )
    else:
        raise ValueError("unknown family %r" % family)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return True  # q itself is prime


def _q_admissible(family: str, q: int) -> bool:
    kind = _Q_KIND[family]
    if kind == "all":
        return is_prime_power(q)
    if kind in ("odd2", "odd2_min8"):
        if kind == "odd2_min8" and q < 8:
            return False
        e = q.bit_length() - 1
        return q == 1 << e and e % 2 == 1
    if kind == "odd3":
        e = 0
        while q % 3 == 0:
            q //= 3
            e += 1
        return q == 1 and e % 2 == 1
    raise AssertionError(kind)


def family_ranks(family: str, max_rank: int) -> list:
    """Valid ranks for the family, ascending, up to max_rank inclusive."""
    if family in _FIXED_RANK:
        k = _FIXED_RANK[family]
        return [k] if k <= max_rank else []
    if family not in _MIN_RANK:
        raise ValueError("unknown family %r" % family)
    return list(range(_MIN_RANK[family], max_rank + 1))


def admissible_q_values(family: str, limit: int) -> list:
    """Admissible field sizes q for the family, ascending, up to limit."""
    if family not in _Q_KIND:
        raise ValueError("unknown family %r" % family)
    return list(_admissible_q_values(family, limit))


def _admissible_q_values(family: str, limit: int):
    """Admissible q for the family, ascending, up to limit inclusive."""
    kind = _Q_KIND[family]
    if kind == "all":
        return [q for q in range(2, limit + 1) if is_prime_power(q)]
    if kind in ("odd2", "odd2_min8"):
        start = 3 if kind == "odd2_min8" else 1
        out = []
        e = start
        while (1 << e) <= limit:
            out.append(1 << e)
            e += 2
        return out
    out = []
    q = 3
    while q <= limit:
        out.append(q)
        q *= 9
    return out


@dataclass(frozen=True)
class AValue:
    low: int
    high: int

    def __post_init__(self):
        if not (1 <= self.low <= self.high):
            raise ValueError("a-value interval must satisfy 1 <= low <= high")


_FIXED_A = {
    "E6": 4, "2E6": 4, "E7": 7, "E8": 7, "F4": 4, "G2": 1,
    "3D4": 3, "2B2": 1, "2F4": 2, "2G2": 1,
}
_FIXED_B = {
    "E6": 78, "2E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14,
    "3D4": 28, "2B2": 5, "2F4": 26, "2G2": 7,
}


def a_value(family: str, k: int | None = None) -> AValue:
    """Law-length exponent a(X); B and D entries are two-valued intervals."""
    if family in _FIXED_A:
        if k is not None:
            _check_rank(family, k)
        return AValue(_FIXED_A[family], _FIXED_A[family])
    if k is None:
        raise ValueError("family %s needs a rank" % family)
    _check_rank(family, k)
    if family in ("A", "2A"):
        v = (k + 1) // 2
        return AValue(v, v)
    if family == "B":
        u, v = 2 * (k // 2), k
        return AValue(min(u, v), max(u, v))
    if family == "C":
        return AValue(k, k)
    if family == "D":
        return AValue(k - 2, k - 1)
    if family == "2D":
        v = 2 * (k // 2)
        return AValue(v, v)
    raise ValueError("unknown family %r" % family)


def b_value(family: str, k: int | None = None) -> int:
    """Order exponent b(X): |X_k(q)| <= q^b (constant 1 adopted)."""
    if family in _FIXED_B:
        if k is not None:
            _check_rank(family, k)
        return _FIXED_B[family]
    if k is None:
        raise ValueError("family %s needs a rank" % family)
    _check_rank(family, k)
    if family in ("A", "2A"):
        return k * k + 2 * k
    if family in ("B", "C"):
        return 2 * k * k + k
    if family in ("D", "2D"):
        return 2 * k * k - k
    raise ValueError("unknown family %r" % family)


def order_upper_bound(gid, sporadic_max: str = DEFAULT_SPORADIC_MAX) -> TowerNumber:
    """q^b for Lie type, m!/2 for alternating, one configured cap for sporadics."""
    if isinstance(gid, AltId):
        with mp.workdps(60):
            return tower(0, mp.factorial(gid.m) / 2)
    if isinstance(gid, LieId):
        b = b_value(gid.family, gid.k)
        with mp.workdps(60):
            return tower(0, mp.mpf(gid.q) ** b)
    if isinstance(gid, SporadicId):
        return parse_tower(sporadic_max)
    raise TypeError("not a simple group id: %r" % (gid,))


def exact_order(gid):
    """Exact order where safely derivable: Alt(m <= 20) and PSL(2,q); else None."""
    if isinstance(gid, AltId) and gid.m <= 20:
        return math.factorial(gid.m) // 2
    if isinstance(gid, LieId) and (gid.family, gid.k) == ("A", 1):
        q = gid.q
        return q * (q * q - 1) // math.gcd(2, q - 1)
    return None


def law_length_lower_bound(gid, c_lower: float = 1.0) -> int:
    """Shortest-law length lower bound, floor of the configured constant times
    q^a (Lie), sqrt(q) (Suzuki), or m (alternating); 1 for sporadics."""
    with mp.workdps(60):
        c = mp.mpf(c_lower)
        if isinstance(gid, AltId):
            return int(mp.floor(c * gid.m))
        if isinstance(gid, LieId):
            if gid.family == "2B2":
                return int(mp.floor(c * mp.sqrt(gid.q)))
            a = a_value(gid.family, gid.k).low
            return int(mp.floor(c * mp.mpf(gid.q) ** a))
        if isinstance(gid, SporadicId):
            return 1
    raise TypeError("not a simple group id: %r" % (gid,))


def _max_rank_for_length(family: str, length: int, c_lower: float) -> int:
    """Largest rank whose cheapest admissible q still meets the length filter."""
    q_min = _admissible_q_values(family, 16)[0]
    k = _MIN_RANK[family]
    last = k - 1
    # a(X).low is nondecreasing in k for every classical family, so stop at
    # the first rank that fails; cap the scan defensively.
    while k <= 2 * max(length, 2).bit_length() + 8:
        if law_length_lower_bound(LieId(family, k, q_min), c_lower) > length:
            break
        last = k
        k += 1
    return last


def candidates_for_law_length(length: int, c_lower: float = 1.0, d: int = 1) -> list:
    """Simple groups not excluded by the law-length lower bounds.

    Alternating groups up to length/c_lower, Lie entries whose lower bound is
    at most the length, and all 26 sporadic placeholders, in deterministic
    order: Alt ascending, families in table order with (k, q) lexicographic,
    sporadics last.
    """
    if length < 1:
        raise ValueError("law length must be positive")
    if d < 1:
        raise ValueError("d must be positive")
    out = []
    m = 5
    while law_length_lower_bound(AltId(m), c_lower) <= length:
        out.append(AltId(m))
        m += 1
    for family in FAMILY_ORDER:
        if family in _FIXED_RANK:
            ranks = [_FIXED_RANK[family]]
        else:
            ranks = range(_MIN_RANK[family], _max_rank_for_length(family, length, c_lower) + 1)
        for k in ranks:
            # q <= (length/c_lower)^2 covers even the sqrt(q) Suzuki filter
            q_cap = max(4, int(math.ceil((length / c_lower) ** 2)) + 1)
            for q in _admissible_q_values(family, q_cap):
                gid = LieId(family, k, q)
                if law_length_lower_bound(gid, c_lower) <= length:
                    out.append(gid)
    out.extend(SporadicId(i) for i in range(1, 27))
    return out


def _id_row(gid, c_lower: float) -> dict:
    row = {"family": None, "k": None, "q": None, "a_low": None, "a_high": None, "b": None}
    if isinstance(gid, AltId):
        row.update(family="Alt", k=gid.m)
    elif isinstance(gid, LieId):
        a = a_value(gid.family, gid.k)
        row.update(
            family=gid.family, k=gid.k, q=gid.q,
            a_low=a.low, a_high=a.high, b=b_value(gid.family, gid.k),
        )
    else:
        row.update(family="Sporadic", k=gid.index)
    row["bound"] = law_length_lower_bound(gid, c_lower)
    return row


def catalog_table_rows(max_rank: int = 10) -> list:
    """One row per family and applicable rank: the two tables, merged."""
    rows = []
    for family in FAMILY_ORDER:
        if family in _FIXED_RANK:
            ranks = [_FIXED_RANK[family]]
        else:
            ranks = range(_MIN_RANK[family], max_rank + 1)
        for k in ranks:
            a = a_value(family, k)
            rows.append({
                "family": family, "k": k, "q": None,
                "a_low": a.low, "a_high": a.high,
                "b": b_value(family, k), "bound": None,
            })
    return rows


def catalog_table_json(max_rank: int = 10) -> str:
    return json.dumps(catalog_table_rows(max_rank), sort_keys=True, separators=(",", ":"))


def candidates_json(length: int, c_lower: float = 1.0, d: int = 1) -> str:
    rows = [_id_row(g, c_lower) for g in candidates_for_law_length(length, c_lower, d)]
    return json.dumps(rows, sort_keys=True, separators=(",", ":"))
