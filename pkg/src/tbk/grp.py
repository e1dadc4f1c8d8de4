"""Finite group engine on dense element indices with Cayley tables.

Elements are 0..n-1 with the identity fixed at index 0; every downstream
table (cocycles, representations) indexes by these. Element order is BFS
from the generators with lexicographic tie-breaks, so identical inputs
reproduce identical indexings across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import (
    NonCentralSubgroupError,
    NotAbelianError,
    NotAGroupError,
    OrderBoundExceededError,
)

# Exhaustive group-axiom checks run up to this order; larger groups get a
# deterministic sample (constructions via `closure` are sound regardless).
EXHAUSTIVE_CHECK_ORDER = 256
DEFAULT_ORDER_CAP = 10_000


class FiniteGroup:
    """Immutable finite group given by its multiplication table."""

    __slots__ = ("order", "_mul", "_inv", "generators", "labels", "_cache")

    def __init__(self, mul: np.ndarray, generators: Sequence[int],
                 labels: Sequence[str] | None = None, _validated: bool = False):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise NotAGroupError(f"table must be square, got {mul.shape}")
        self.order = n
        self._mul = mul
        self._inv = _inverse_table(mul)
        self.generators = tuple(int(g) for g in generators)
        self.labels = tuple(labels) if labels is not None else None
        self._cache: dict = {}
        if not _validated:
            _validate_group(self)

    # table access ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def mul_table(self) -> np.ndarray:
        view = self._mul.view()
        view.flags.writeable = False
        return view

    def inv_table(self) -> np.ndarray:
        view = self._inv.view()
        view.flags.writeable = False
        return view

    def conj(self, t: int, g: int) -> int:
        """t g t^-1."""
        return int(self._mul[self._mul[t, g], self._inv[t]])

    def commutator(self, g: int, h: int) -> int:
        """g h g^-1 h^-1."""
        gh = self._mul[g, h]
        hg = self._mul[h, g]
        return int(self._mul[gh, self._inv[hg]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(g), -k)
        out, base = 0, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order_of(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def exponent(self) -> int:
        if "exponent" not in self._cache:
            e = 1
            for g in range(self.order):
                e = lcm(e, self.order_of(g))
            self._cache["exponent"] = e
        return self._cache["exponent"]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._mul, self._mul.T))

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return f"g{g}"

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, generators={list(self.generators)})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup recorded as a sorted index set inside its parent."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    witness_generators: tuple[int, ...]

    def __post_init__(self):
        if 0 not in self.elements:
            raise NotAGroupError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return g in self.element_set()

    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """Re-indexed FiniteGroup plus the parent-index -> local-index map."""
        els = self.elements
        pos = {g: i for i, g in enumerate(els)}
        sub = self.parent._mul[np.ix_(els, els)]
        if not np.isin(sub, np.array(els)).all():
            raise NotAGroupError("subgroup element set is not closed")
        remap = np.zeros(self.parent.order, dtype=np.int32)
        for g, i in pos.items():
            remap[g] = i
        table = remap[sub]
        gens = [pos[g] for g in self.witness_generators if g != 0]
        labels = None
        if self.parent.labels is not None:
            labels = [self.parent.labels[g] for g in els]
        grp = FiniteGroup(table, gens or _greedy_generators_from_table(table),
                          labels, _validated=True)
        return grp, pos


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant-factor decomposition d1 >= d2 >= ... (each dividing the previous).

    For concrete subgroups, ``basis`` holds parent element indices whose
    orders are the factors and ``dlog`` maps every subgroup element to its
    exponent vector. Abstract results (e.g. cohomology groups) carry
    positions into an accompanying list instead, with ``dlog=None``.
    """

    invariant_factors: tuple[int, ...]
    basis: tuple[int, ...]
    dlog: dict[int, tuple[int, ...]] | None = None

    @property
    def group_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_bicyclic(self) -> bool:
        return len(self.invariant_factors) <= 2

    def is_trivial(self) -> bool:
        return not self.invariant_factors


@dataclass(frozen=True)
class CentralExtension:
    """1 -> kernel -> total -> quotient -> 1 with a chosen section."""

    total: FiniteGroup
    kernel: Subgroup
    quotient: FiniteGroup
    projection: np.ndarray  # total index -> quotient index
    section: np.ndarray     # quotient index -> total index, section[0] == 0


@dataclass(frozen=True)
class Character:
    """Homomorphism from an abelian (sub)group into Z_modulus exponents."""

    modulus: int
    table: dict[int, int]  # element index (in the domain's indexing) -> exponent

    def __post_init__(self):
        if self.table.get(0, 0) != 0:
            raise NotAGroupError("character must send the identity to 0")

    def value(self, g: int) -> int:
        return self.table[g] % self.modulus


# ---------------------------------------------------------------------------
# construction and validation


def _inverse_table(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    inv = np.argmax(mul == 0, axis=1).astype(np.int32)
    if (mul[np.arange(n), inv] != 0).any():
        raise NotAGroupError("some element has no right inverse")
    return inv


def _validate_group(g: FiniteGroup, sample: int = 200_000) -> None:
    mul = g._mul
    n = g.order
    if ((mul < 0) | (mul >= n)).any():
        raise NotAGroupError("table entry out of range")
    if (mul[0] != np.arange(n)).any() or (mul[:, 0] != np.arange(n)).any():
        raise NotAGroupError("index 0 is not a two-sided identity")
    # each row/column is a permutation (cancellation)
    if (np.sort(mul, axis=1) != np.arange(n)).any():
        raise NotAGroupError("some row is not a permutation")
    if (np.sort(mul, axis=0) != np.arange(n)[:, None]).any():
        raise NotAGroupError("some column is not a permutation")
    inv = g._inv
    if (mul[inv, np.arange(n)] != 0).any():
        raise NotAGroupError("inverses are not two-sided")
    if n <= EXHAUSTIVE_CHECK_ORDER:
        for a in range(n):
            left = mul[mul[a], :]
            right = mul[a][mul]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAGroupError(
                    f"associativity fails at ({a}, {b}, {c})",
                    witness=(a, int(b), int(c)))
    else:
        rng = np.random.default_rng(0)
        trips = rng.integers(0, n, size=(sample, 3))
        a, b, c = trips[:, 0], trips[:, 1], trips[:, 2]
        if (mul[mul[a, b], c] != mul[a, mul[b, c]]).any():
            bad = np.nonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])[0][0]
            raise NotAGroupError(
                "associativity fails",
                witness=(int(a[bad]), int(b[bad]), int(c[bad])))
    # generators generate
    gen_set = _closure_in_table(g._mul, list(g.generators) or [0])
    if len(gen_set) != n:
        raise NotAGroupError("declared generators do not generate the group")


def _closure_in_table(mul: np.ndarray, seed: Sequence[int]) -> list[int]:
    seen = {0}
    seen.update(int(s) for s in seed)
    frontier = sorted(seen)
    gens = sorted({int(s) for s in seed} - {0}) or [0]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = int(mul[x, s])
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def _greedy_generators_from_table(mul: np.ndarray) -> list[int]:
    n = mul.shape[0]
    gens: list[int] = []
    have = {0}
    while len(have) < n:
        g = min(set(range(n)) - have)
        gens.append(g)
        have = set(_closure_in_table(mul, gens))
    return gens


def build_from_cayley(table, labels: Sequence[str] | None = None,
                      generators: Sequence[int] | None = None) -> FiniteGroup:
    """Validate a raw multiplication table and relocate the identity to 0."""
    mul = np.asarray(table, dtype=np.int64)
    n = mul.shape[0]
    if mul.ndim != 2 or mul.shape != (n, n):
        raise NotAGroupError(f"table must be square, got {mul.shape}")
    if ((mul < 0) | (mul >= n)).any():
        raise NotAGroupError("table entry out of range")
    ident = [e for e in range(n)
             if (mul[e] == np.arange(n)).all() and (mul[:, e] == np.arange(n)).all()]
    if len(ident) != 1:
        raise NotAGroupError(f"expected exactly one identity, found {len(ident)}")
    e = ident[0]
    if e != 0:
        # move e to the front, keep everything else in order
        order = [e] + [i for i in range(n) if i != e]
        pos = np.empty(n, dtype=np.int64)
        for new, old in enumerate(order):
            pos[old] = new
        mul = pos[mul[np.ix_(order, order)]]
        if labels is not None:
            labels = [labels[i] for i in order]
        if generators is not None:
            generators = [int(pos[g]) for g in generators]
    gens = list(generators) if generators is not None else \
        _greedy_generators_from_table(np.asarray(mul, dtype=np.int32))
    return FiniteGroup(mul, gens, labels)


def closure(seed: Sequence, multiply: Callable, canonical_key: Callable,
            bound: int = DEFAULT_ORDER_CAP) -> tuple[FiniteGroup, list]:
    """Close a finite set of abstract elements under an associative product.

    Breadth-first search by word length with lexicographic ``canonical_key``
    tie-breaks inside each level, so the element order is deterministic.
    Returns the group (identity relocated to index 0) and the elements in
    the group's index order.

    The multiplication table is completed without extra oracle calls: every
    BFS element is x*s with s a seed letter, so column h = y*s satisfies
    mul[g][h] = mul[mul[g][y]][s] once the seed columns are known.
    """
    if not seed:
        raise NotAGroupError("closure needs at least one seed element")
    keyed = sorted({canonical_key(x): x for x in seed}.items())
    elements = [x for _, x in keyed]
    index = {k: i for i, (k, _) in enumerate(keyed)}
    seeds = list(range(len(elements)))
    parent: dict[int, tuple[int, int]] = {}
    prod_of_seed: dict[tuple[int, int], int] = {}

    level = list(seeds)
    while level:
        pending: dict = {}  # key -> (object, first parent)
        prods: list[tuple[tuple[int, int], object]] = []
        for x in level:
            for s in seeds:
                p = multiply(elements[x], elements[s])
                k = canonical_key(p)
                if k not in index and k not in pending:
                    pending[k] = (p, (x, s))
                prods.append(((x, s), k))
        for k in sorted(pending):
            p, par = pending[k]
            i = len(elements)
            if i >= bound:
                raise OrderBoundExceededError(f"closure exceeded bound {bound}")
            index[k] = i
            elements.append(p)
            parent[i] = par
        for pair, k in prods:
            prod_of_seed[pair] = index[k]
        level = [index[k] for k in sorted(pending)]

    n = len(elements)
    mul = np.full((n, n), -1, dtype=np.int32)
    for s in seeds:
        mul[:, s] = [prod_of_seed[(x, s)] for x in range(n)]
    # every non-seed h was first seen as y*s with y of smaller index, so
    # column h follows from column y by one gather: g(ys) = (gy)s
    for h in range(n):
        if mul[0, h] >= 0:
            continue
        y, s = parent[h]
        mul[:, h] = mul[mul[:, y], s]

    # locate the identity: its column is the identity permutation
    ident = [h for h in range(n) if (mul[:, h] == np.arange(n)).all()]
    if len(ident) != 1:
        raise NotAGroupError("closure did not produce a unique identity")
    e = ident[0]
    order = [e] + [i for i in range(n) if i != e]
    pos = np.empty(n, dtype=np.int64)
    for new, old in enumerate(order):
        pos[old] = new
    mul = pos[mul[np.ix_(order, order)]].astype(np.int32)
    elements = [elements[i] for i in order]
    gens = sorted({int(pos[s]) for s in seeds} - {0}) or [0]
    return FiniteGroup(mul, gens), elements


# ---------------------------------------------------------------------------
# standard computations


def conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    """Classes sorted by smallest member; the representative is class[0]."""
    if "classes" in g._cache:
        return g._cache["classes"]
    n = g.order
    mul, inv = g._mul, g._inv
    seen = np.zeros(n, dtype=bool)
    classes = []
    t = np.arange(n)
    for x in range(n):
        if seen[x]:
            continue
        orbit = np.unique(mul[mul[t, x], inv[t]])
        seen[orbit] = True
        classes.append(orbit)
    g._cache["classes"] = classes
    return classes


def class_representatives(g: FiniteGroup) -> list[int]:
    return [int(c[0]) for c in conjugacy_classes(g)]


def centralizer(g: FiniteGroup, x: int) -> Subgroup:
    members = np.nonzero(g._mul[:, x] == g._mul[x, :])[0]
    els = tuple(int(m) for m in members)
    return Subgroup(g, els, _greedy_subgroup_generators(g, els))


def center(g: FiniteGroup) -> Subgroup:
    members = np.nonzero((g._mul == g._mul.T).all(axis=1))[0]
    els = tuple(int(m) for m in members)
    return Subgroup(g, els, _greedy_subgroup_generators(g, els))


def _greedy_subgroup_generators(g: FiniteGroup, elements: tuple[int, ...]) -> tuple[int, ...]:
    have = {0}
    gens: list[int] = []
    for x in elements:
        if x in have:
            continue
        gens.append(x)
        have = set(_closure_in_table(g._mul, gens))
        if len(have) == len(elements):
            break
    return tuple(gens)


def subgroup_generated(g: FiniteGroup, seed: Sequence[int]) -> Subgroup:
    els = tuple(_closure_in_table(g._mul, list(seed)))
    return Subgroup(g, els, tuple(sorted({int(s) for s in seed} - {0})))


def commuting_pairs(g: FiniteGroup) -> Iterator[tuple[int, int]]:
    """All pairs (a, b) with a <= b and ab = ba, in lexicographic order."""
    mul = g._mul
    for a in range(g.order):
        row = mul[a, a:]
        col = mul[a:, a]
        for off in np.nonzero(row == col)[0]:
            yield (a, a + int(off))


def abelian_structure(h: Subgroup | FiniteGroup) -> AbelianStructure:
    """Invariant factors, basis and discrete logs of an abelian (sub)group."""
    if isinstance(h, FiniteGroup):
        h = Subgroup(h, tuple(range(h.order)), h.generators)
    g = h.parent
    els = list(h.elements)
    eset = h.element_set()
    for a in els:
        for b in els:
            ab = g.mul(a, b)
            if ab != g.mul(b, a):
                raise NotAbelianError(f"elements {a}, {b} do not commute",
                                      witness=(a, b))
            if ab not in eset:
                raise NotAGroupError("element set is not closed under products")

    basis: list[int] = []
    remaining = set(els)

    def cyclic_of(x: int) -> set[int]:
        out, y = {0}, x
        while y != 0:
            out.add(y)
            y = g.mul(y, x)
        return out

    while len(remaining) > 1:
        cand = max(remaining - {0}, key=lambda x: (g.order_of(x), -x))
        basis.append(cand)
        cyc = cyclic_of(cand)
        comp = {0}
        for x in sorted(remaining):
            trial = set(_closure_in_table(g._mul, sorted((comp | {x}) - {0})))
            if trial & cyc == {0}:
                comp = trial
        if len(comp) * len(cyc) != len(remaining):
            raise NotAGroupError("abelian basis extraction failed")
        remaining = comp

    factors = tuple(g.order_of(b) for b in basis)
    # enumerate exponent vectors to make discrete logs
    dlog: dict[int, tuple[int, ...]] = {}
    exps = [0] * len(basis)
    total = 1
    for d in factors:
        total *= d
    for _ in range(total):
        x = 0
        for b, e in zip(basis, exps):
            x = g.mul(x, g.power(b, e))
        dlog[x] = tuple(exps)
        for i in range(len(exps) - 1, -1, -1):
            exps[i] += 1
            if exps[i] < factors[i]:
                break
            exps[i] = 0
    if len(dlog) != len(els):
        raise NotAGroupError("discrete log enumeration does not cover the subgroup")
    return AbelianStructure(factors, tuple(basis), dlog)


def quotient_by_normal(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, np.ndarray, np.ndarray]:
    """Quotient by a normal subgroup: (quotient, projection, min-member section)."""
    nels = np.array(n.elements, dtype=np.int64)
    for x in n.elements:
        for t in range(g.order):
            if g.conj(t, x) not in n.element_set():
                raise NonCentralSubgroupError(
                    f"subgroup is not normal: conj({t}, {x}) escapes",
                    witness=(t, x))
    rep = g._mul[:, nels].min(axis=1)
    reps = np.unique(rep)
    qindex = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([qindex[int(rep[x])] for x in range(g.order)], dtype=np.int32)
    q = len(reps)
    qmul = np.empty((q, q), dtype=np.int32)
    for i, r in enumerate(reps):
        qmul[i] = proj[g._mul[int(r), reps]]
    gens = sorted({int(proj[s]) for s in g.generators} - {0}) or [0]
    labels = None
    if g.labels is not None:
        labels = [g.labels[int(r)] + "N" for r in reps]
    quot = FiniteGroup(qmul, gens, labels)
    section = reps.astype(np.int32)
    return quot, proj, section


def quotient_by_central(g: FiniteGroup, n: Subgroup) -> CentralExtension:
    """Central quotient packaged with projection and section data."""
    zs = center(g).element_set()
    for x in n.elements:
        if x not in zs:
            raise NonCentralSubgroupError(f"element {x} is not central",
                                          witness=x)
    quot, proj, section = quotient_by_normal(g, n)
    return CentralExtension(g, n, quot, proj, section)


# ---------------------------------------------------------------------------
# stock constructions (mostly for tests and the CLI)


def cyclic(n: int) -> FiniteGroup:
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(t, [1] if n > 1 else [0],
                       labels=[f"r{k}" for k in range(n)], _validated=True)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    na, nb = a.order, b.order
    idx = lambda x, y: x * nb + y
    n = na * nb
    t = np.empty((n, n), dtype=np.int32)
    for x1 in range(na):
        for y1 in range(nb):
            row = a._mul[x1][:, None] * nb + b._mul[y1][None, :]
            t[idx(x1, y1)] = row.reshape(-1)
    gens = [idx(s, 0) for s in a.generators if s] + [idx(0, s) for s in b.generators if s]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [f"({a.labels[x]},{b.labels[y]})" for x in range(na) for y in range(nb)]
    return FiniteGroup(t, gens or [0], labels, _validated=True)
