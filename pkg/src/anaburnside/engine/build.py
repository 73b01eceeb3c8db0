"""Constructors for the supported group descriptors."""

import json
import math
import re

from ..errors import CapExceeded
from .indexed import TableGroup
from .perm import Permutation, PermGroup

ALT_SYM_CAP = 16
PSL_Q_CAP = 32

# Monic irreducible polynomials, coefficients listed from the constant term up.
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (1, 1, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
}


class GaloisField:
    """Arithmetic tables for GF(q), elements encoded as 0..q-1 base-p digits."""

    def __init__(self, q):
        p, e = _prime_power_split(q)
        self.q, self.p, self.e = q, p, e
        if e > 1 and q not in _IRREDUCIBLE:
            raise ValueError("no modulus table for q=%d" % q)
        self._mul = [[self._poly_mul(a, b) for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def add(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def _poly_mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        mod = _IRREDUCIBLE[self.q]
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, m in enumerate(mod[:-1]):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * m) % self.p
        return self._encode(prod[: self.e])

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]


def _prime_power_split(q):
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError("%d is not a prime power" % q)
            return p, e
    raise ValueError("%d is not a prime power" % q)


def cyclic(n):
    """Cyclic group of order n, as permutations for n <= 64, else as a table."""
    if n < 1:
        raise ValueError("order must be at least 1")
    if n <= 64:
        if n == 1:
            return PermGroup(1, [])
        return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)])])
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return TableGroup(table)


def symmetric(m):
    if not 1 <= m <= ALT_SYM_CAP:
        raise CapExceeded("symmetric degree %d outside 1..%d" % (m, ALT_SYM_CAP))
    if m == 1:
        return PermGroup(1, [])
    gens = [Permutation.from_cycles(m, [(0, 1)])]
    if m > 2:
        gens.append(Permutation.from_cycles(m, [tuple(range(m))]))
    return PermGroup(m, gens)


def alternating(m):
    if not 1 <= m <= ALT_SYM_CAP:
        raise CapExceeded("alternating degree %d outside 1..%d" % (m, ALT_SYM_CAP))
    if m <= 2:
        return PermGroup(max(m, 1), [])
    gens = [Permutation.from_cycles(m, [(0, 1, 2)])]
    if m > 3:
        cyc = tuple(range(m)) if m % 2 == 1 else tuple(range(1, m))
        gens.append(Permutation.from_cycles(m, [cyc]))
    return PermGroup(m, gens)


def dihedral(n):
    """Symmetries of the n-gon, order 2n, for n >= 3."""
    if n < 3:
        raise ValueError("dihedral requires n >= 3")
    if n > 64:
        raise CapExceeded("dihedral degree %d exceeds 64" % n)
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, ref])


def psl2_group(q):
    """PSL(2,q) acting on the q+1 points of the projective line.

    Point i < q is the field element i, point q is the point at infinity.
    Generated by all upper and lower transvections; the order is asserted
    against q(q^2-1)/gcd(2,q-1).
    """
    if q > PSL_Q_CAP:
        raise CapExceeded("psl2 parameter %d exceeds %d" % (q, PSL_Q_CAP))
    field = GaloisField(q)
    inf = q

    def moebius(a, b, c, d):
        imgs = []
        for z in range(q + 1):
            if z == inf:
                imgs.append(inf if c == 0 else field.mul(a, field.inv(c)))
                continue
            den = field.add(field.mul(c, z), d)
            num = field.add(field.mul(a, z), b)
            imgs.append(inf if den == 0 else field.mul(num, field.inv(den)))
        return Permutation(imgs)

    gens = []
    for c in range(1, q):
        gens.append(moebius(1, c, 0, 1))
        gens.append(moebius(1, 0, c, 1))
    group = PermGroup(q + 1, gens)
    expected = q * (q * q - 1) // math.gcd(2, q - 1)
    if group.order() != expected:
        raise RuntimeError("psl2(%d) order %d != %d" % (q, group.order(), expected))
    return group


def direct_product(groups):
    """Direct product of permutation groups, acting on the disjoint union."""
    if not groups:
        raise ValueError("empty product")
    if not all(isinstance(g, PermGroup) for g in groups):
        raise ValueError("direct_product expects permutation groups")
    degree = sum(g.degree for g in groups)
    if degree > 64:
        raise CapExceeded("product degree %d exceeds 64" % degree)
    gens = []
    offset = 0
    for g in groups:
        for p in g.generators:
            imgs = list(range(degree))
            for i, im in enumerate(p.images):
                imgs[offset + i] = offset + im
            gens.append(Permutation(imgs))
        offset += g.degree
    return PermGroup(degree, gens)


def wreath(inner, outer):
    """Imprimitive wreath product: outer.degree blocks of inner's domain.

    Requires a transitive outer group; the order is asserted against
    |inner|^blocks * |outer|.
    """
    if not outer.is_transitive():
        raise ValueError("wreath requires a transitive outer group")
    d, b = inner.degree, outer.degree
    degree = d * b
    if degree > 64:
        raise CapExceeded("wreath degree %d exceeds 64" % degree)
    gens = []
    for p in inner.generators:
        imgs = list(range(degree))
        for i, im in enumerate(p.images):
            imgs[i] = im
        gens.append(Permutation(imgs))
    for h in outer.generators:
        imgs = [h(j) * d + i for j in range(b) for i in range(d)]
        gens.append(Permutation(imgs))
    group = PermGroup(degree, gens)
    expected = inner.order() ** b * outer.order()
    if group.order() != expected:
        raise RuntimeError("wreath order %d != %d" % (group.order(), expected))
    return group


def from_file(path):
    """Load a group from JSON: permutation generators or a full table.

    Permutation format: {"degree": d, "generators": [[images, 1-based]]}.
    Table format: {"order": n, "table": [[element indexes, 0-based]]}.
    """
    with open(path) as fh:
        data = json.load(fh)
    if "generators" in data:
        degree = data["degree"]
        gens = []
        for images in data["generators"]:
            if sorted(images) != list(range(1, degree + 1)):
                raise ValueError("generator is not a bijection of 1..%d" % degree)
            gens.append(Permutation([p - 1 for p in images]))
        return PermGroup(degree, gens)
    if "table" in data:
        return TableGroup(data["table"])
    raise ValueError("unrecognized group file: need 'generators' or 'table'")


_DESC_RE = re.compile(r"^\s*([a-z_0-9]+)\s*\((.*)\)\s*$", re.DOTALL)


def _split_args(text):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        current.append(ch)
    tail = "".join(current).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def make_group(descriptor):
    """Build a group from a descriptor string.

    Supported: alternating(m), symmetric(m), cyclic(n), dihedral(n), psl2(q),
    direct_product(d1,d2,...), wreath(inner,outer), from_file(path).
    """
    m = _DESC_RE.match(descriptor)
    if not m:
        raise ValueError("bad group descriptor: %r" % descriptor)
    name, argtext = m.group(1), m.group(2)
    if name == "from_file":
        return from_file(argtext.strip())
    args = _split_args(argtext)
    if name in ("alternating", "symmetric", "cyclic", "dihedral", "psl2"):
        if len(args) != 1:
            raise ValueError("%s takes one integer argument" % name)
        value = int(args[0])
        builder = {"alternating": alternating, "symmetric": symmetric,
                   "cyclic": cyclic, "dihedral": dihedral, "psl2": psl2_group}[name]
        return builder(value)
    if name == "direct_product":
        if not args or args == [""]:
            raise ValueError("direct_product needs at least one factor")
        return direct_product([make_group(a) for a in args])
    if name == "wreath":
        if len(args) != 2:
            raise ValueError("wreath takes two descriptors")
        return wreath(make_group(args[0]), make_group(args[1]))
    raise ValueError("unknown group kind: %r" % name)
