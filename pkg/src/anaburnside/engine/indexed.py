"""Element-indexed group substrates.

These give every element an index 0..n-1 with constant-time multiplication,
the representation used for exhaustive normal-structure work. A dense n x n
table is only materialized for small orders; larger groups keep a compact
per-element representation with the same interface.
"""

import random

import numpy as np

from ..errors import CapExceeded
from .perm import Permutation, PermGroup

CAYLEY_CAP = 100_000
FULL_ASSOC_CAP = 512
DENSE_CAP = 2048
_SPOT_CHECKS = 2000


class IndexedGroup:
    """Common interface: elements are integers 0..n-1."""

    n = 0
    identity_index = 0
    generator_indices = ()

    def mul(self, i, j):
        raise NotImplementedError

    def inv(self, i):
        raise NotImplementedError

    # Handle protocol shared with PermGroup, used by word evaluation.
    def identity(self):
        return self.identity_index

    def contains(self, x):
        return isinstance(x, (int, np.integer)) and 0 <= x < self.n

    def order(self):
        return self.n

    def elements(self):
        return range(self.n)

    def order_of(self, i):
        k = 1
        x = i
        while x != self.identity_index:
            x = self.mul(x, i)
            k += 1
            if k > self.n:
                raise RuntimeError("order computation exceeded group order")
        return k

    def conjugate(self, i, g):
        return self.mul(self.mul(self.inv(g), i), g)

    def label(self, i):
        return str(i)

    def _find_generators(self):
        """Greedy generating set by ascending element index."""
        gens = []
        reached = {self.identity_index}
        while len(reached) < self.n:
            gens.append(min(i for i in range(self.n) if i not in reached))
            reached = {self.identity_index}
            frontier = [self.identity_index]
            while frontier:
                new = []
                for x in frontier:
                    for g in gens:
                        y = self.mul(x, g)
                        if y not in reached:
                            reached.add(y)
                            new.append(y)
                frontier = new
        return tuple(gens)


class TableGroup(IndexedGroup):
    """Explicit multiplication table, validated at construction."""

    def __init__(self, table, rng_seed=20260816):
        n = len(table)
        if n < 1:
            raise ValueError("empty table")
        if n > CAYLEY_CAP:
            raise CapExceeded("order %d exceeds cap %d" % (n, CAYLEY_CAP))
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
            raise ValueError("table must be n x n with entries in 0..n-1")
        full = list(range(n))
        for i in range(n):
            if sorted(arr[i]) != full or sorted(arr[:, i]) != full:
                raise ValueError("row/column %d is not a permutation" % i)
        self.n = n
        self.table = arr.astype(np.int32)
        ident = [i for i in range(n) if all(arr[i][j] == j for j in range(n))]
        if len(ident) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity_index = ident[0]
        self._inv = np.empty(n, dtype=np.int32)
        for i in range(n):
            hits = np.nonzero(arr[i] == self.identity_index)[0]
            if len(hits) != 1 or arr[hits[0]][i] != self.identity_index:
                raise ValueError("element %d has no two-sided inverse" % i)
            self._inv[i] = hits[0]
        self._check_associativity(rng_seed)
        self.generator_indices = self._find_generators()

    def _check_associativity(self, rng_seed):
        t = self.table
        if self.n <= FULL_ASSOC_CAP:
            for a in range(self.n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise ValueError("table not associative at row %d" % a)
            return
        rng = random.Random(rng_seed)
        for _ in range(_SPOT_CHECKS):
            a, b, c = (rng.randrange(self.n) for _ in range(3))
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise ValueError("table not associative at (%d,%d,%d)" % (a, b, c))

    def mul(self, i, j):
        return int(self.table[i, j])

    def inv(self, i):
        return int(self._inv[i])


class PermIndexedGroup(IndexedGroup):
    """All elements of a permutation group, indexed in lexicographic order."""

    def __init__(self, group, cap=CAYLEY_CAP):
        n = group.order()
        if n > cap:
            raise CapExceeded("order %d exceeds cap %d" % (n, cap))
        elems = sorted(p.images for p in group.elements(cap=cap))
        self.n = n
        self.degree = group.degree
        dtype = np.int8 if group.degree <= 127 else np.int16
        self.rows = np.array(elems, dtype=dtype)
        self._index = {bytes(self.rows[i].tobytes()): i for i in range(n)}
        self.identity_index = self.index_of(Permutation.identity(group.degree))
        self._inv_cache = np.full(n, -1, dtype=np.int64)
        self.source = group
        self.generator_indices = tuple(self.index_of(g) for g in group.generators)

    def index_of(self, perm):
        key = np.asarray(perm.images, dtype=self.rows.dtype).tobytes()
        return self._index[key]

    def index_of_row(self, row):
        return self._index[row.tobytes()]

    def perm_of(self, i):
        return Permutation(int(p) for p in self.rows[i])

    def mul(self, i, j):
        row = self.rows[j][self.rows[i]]
        return self._index[row.tobytes()]

    def inv(self, i):
        c = self._inv_cache[i]
        if c >= 0:
            return int(c)
        row = np.argsort(self.rows[i]).astype(self.rows.dtype)
        r = self._index[row.tobytes()]
        self._inv_cache[i] = r
        return r

    def order_of(self, i):
        return self.perm_of(i).order()

    def label(self, i):
        return repr(self.perm_of(i))


class SubgroupView(IndexedGroup):
    """A subgroup presented with its own local element indexes."""

    def __init__(self, parent, global_indices, generator_globals=()):
        self.parent = parent
        self.globals = tuple(sorted(global_indices))
        self.n = len(self.globals)
        self._local = {g: i for i, g in enumerate(self.globals)}
        self.identity_index = self._local[parent.identity_index]
        gens = [self._local[g] for g in generator_globals if g != parent.identity_index]
        self.generator_indices = tuple(gens) or self._find_generators()

    def to_local(self, g):
        return self._local[g]

    def mul(self, i, j):
        return self._local[self.parent.mul(self.globals[i], self.globals[j])]

    def inv(self, i):
        return self._local[self.parent.inv(self.globals[i])]

    def order_of(self, i):
        return self.parent.order_of(self.globals[i])

    def label(self, i):
        return self.parent.label(self.globals[i])


class QuotientGroup(IndexedGroup):
    """Quotient by a normal subgroup, elements labeled by coset of min index."""

    def __init__(self, parent, normal_indices):
        normal = sorted(set(normal_indices))
        if parent.identity_index not in normal:
            raise ValueError("normal subgroup must contain the identity")
        if parent.order() % len(normal):
            raise ValueError("subgroup size does not divide the group order")
        self.parent = parent
        labels = np.full(parent.n, -1, dtype=np.int64)
        reps = []
        for i in range(parent.n):
            if labels[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            for s in normal:
                labels[parent.mul(s, i)] = cid
        self.labels = labels
        self.reps = reps
        self.n = len(reps)
        if self.n * len(normal) != parent.n:
            raise ValueError("cosets do not partition the group")
        ident_cid = int(labels[parent.identity_index])
        if any(int(labels[s]) != ident_cid for s in normal):
            raise ValueError("indices are not closed under multiplication")
        # Conjugation-invariance under a generating set implies normality.
        normal_set = frozenset(normal)
        for g in parent.generator_indices:
            ginv = parent.inv(g)
            for s in normal:
                if parent.mul(parent.mul(g, s), ginv) not in normal_set:
                    raise ValueError("subgroup is not normal")
        self.identity_index = int(labels[parent.identity_index])
        self.generator_indices = tuple(sorted(
            {int(labels[g]) for g in parent.generator_indices}
            - {self.identity_index})) or self._find_generators()

    def mul(self, i, j):
        return int(self.labels[self.parent.mul(self.reps[i], self.reps[j])])

    def inv(self, i):
        return int(self.labels[self.parent.inv(self.reps[i])])

    def coset_of(self, parent_index):
        return int(self.labels[parent_index])

    def preimage(self, coset_ids):
        wanted = set(coset_ids)
        return frozenset(i for i in range(self.parent.n) if int(self.labels[i]) in wanted)

    def label(self, i):
        return "[%s]" % self.parent.label(self.reps[i])


class PairGroup(IndexedGroup):
    """Semidirect product N x| H; action(h, n) applies the H-part on the left.

    Multiplication: (n1, h1)(n2, h2) = (n1 * action(h1, n2), h1 * h2).
    Element index is h * N.n + n. A trivial action gives the direct product.
    """

    def __init__(self, left, right, action=None, rng_seed=20260816):
        if left.n * right.n > CAYLEY_CAP:
            raise CapExceeded("product order %d exceeds cap" % (left.n * right.n))
        self.left, self.right = left, right
        self.action = action or (lambda h, x: x)
        self.n = left.n * right.n
        self.identity_index = right.identity_index * left.n + left.identity_index
        gens = [right.identity_index * left.n + g for g in left.generator_indices]
        gens += [h * left.n + left.identity_index for h in right.generator_indices]
        self.generator_indices = tuple(gens)
        if action is not None:
            self._spot_check_action(rng_seed)

    def _spot_check_action(self, rng_seed):
        rng = random.Random(rng_seed)
        act, left, right = self.action, self.left, self.right
        for _ in range(200):
            h = rng.randrange(right.n)
            a, b = rng.randrange(left.n), rng.randrange(left.n)
            if act(h, left.mul(a, b)) != left.mul(act(h, a), act(h, b)):
                raise ValueError("action is not by homomorphisms")
            if act(h, left.identity_index) != left.identity_index:
                raise ValueError("action does not fix the identity")
        for _ in range(200):
            h1, h2 = rng.randrange(right.n), rng.randrange(right.n)
            a = rng.randrange(left.n)
            if act(right.mul(h1, h2), a) != act(h1, act(h2, a)):
                raise ValueError("action is not a left H-action")

    def split(self, i):
        return i % self.left.n, i // self.left.n

    def join(self, npart, hpart):
        return hpart * self.left.n + npart

    def mul(self, i, j):
        n1, h1 = self.split(i)
        n2, h2 = self.split(j)
        return self.join(self.left.mul(n1, self.action(h1, n2)),
                         self.right.mul(h1, h2))

    def inv(self, i):
        n1, h1 = self.split(i)
        hinv = self.right.inv(h1)
        return self.join(self.action(hinv, self.left.inv(n1)), hinv)

    def label(self, i):
        n1, h1 = self.split(i)
        return "(%s, %s)" % (self.left.label(n1), self.right.label(h1))


def as_indexed(group, cap=CAYLEY_CAP):
    """Present a group handle with integer element indexes."""
    if isinstance(group, IndexedGroup):
        return group
    if isinstance(group, PermGroup):
        return PermIndexedGroup(group, cap=cap)
    raise TypeError("cannot index %r" % type(group).__name__)


def densify(group, cap=DENSE_CAP):
    """Materialize a TableGroup; only for small orders."""
    g = as_indexed(group)
    if isinstance(g, TableGroup):
        return g
    if g.n > cap:
        raise CapExceeded("order %d too large for a dense table" % g.n)
    table = [[g.mul(i, j) for j in range(g.n)] for i in range(g.n)]
    return TableGroup(table)
