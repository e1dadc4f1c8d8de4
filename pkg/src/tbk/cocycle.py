"""2-cocycle calculus with root-of-unity values.

Cocycles carry additive exponent tables: the table entry t at (g, h) means
the scalar zeta_modulus^t. All the calculus (coboundaries, restriction,
inflation, the twisted product) happens on exponents, which keeps every
computation exact integer arithmetic.

Two distinct coboundary senses are exposed. "mod-m" asks for a witness
cochain with values in the same Z_m; "torus" asks for triviality with
circle-group coefficients, decided after lifting to Z_{m*e} with e the
group exponent (any circle-valued witness can be normalized into that
finite subgroup, so the lift loses nothing).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import grp as _grp
from . import zmlin
from .cyclo import CycloNumber
from .errors import (
    ActionInvalidError,
    DefectOutsideKernelError,
    IllDefinedFormError,
    InfeasibleError,
    ModulusMismatchError,
    NonCommutingPairError,
    NotACocycleError,
    NotAGroupError,
    NotAHomomorphismError,
    NotBicyclicError,
    NotNormalizedError,
)
from .grp import AbelianStructure, CentralExtension, Character, FiniteGroup, Subgroup
from .zmlin import HowellBasis, ZmMatrix, howell_form

H2_DEFAULT_CAP = 32


def _dtype_for(modulus: int):
    if modulus <= 127:
        return np.int8
    if modulus <= 32_767:
        return np.int16
    return np.int64


class Cocycle2:
    """Normalized 2-cocycle exponent table on a finite group."""

    __slots__ = ("group", "modulus", "table", "_verified")

    def __init__(self, group: FiniteGroup, modulus: int, table,
                 _verified: bool = False):
        if modulus < 1:
            raise ModulusMismatchError("modulus must be positive")
        n = group.order
        t = np.asarray(table, dtype=np.int64) % modulus
        if t.shape != (n, n):
            raise NotNormalizedError(f"table shape {t.shape} != ({n}, {n})")
        if t[0].any() or t[:, 0].any():
            raise NotNormalizedError("table is not normalized: c(1,g) = c(g,1) = 0")
        self.group = group
        self.modulus = modulus
        self.table = t.astype(_dtype_for(modulus))
        self._verified = _verified

    @classmethod
    def zero(cls, group: FiniteGroup, modulus: int) -> "Cocycle2":
        return cls(group, modulus,
                   np.zeros((group.order, group.order), dtype=np.int64),
                   _verified=True)

    def value(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def beta(self, g: int, h: int) -> int:
        """c(g,h) - c(h,g); meaningful on commuting pairs."""
        return int(self.table[g, h] - self.table[h, g]) % self.modulus

    def lift(self, modulus: int) -> "Cocycle2":
        if modulus % self.modulus:
            raise ModulusMismatchError(
                f"cannot lift modulus {self.modulus} to {modulus}")
        f = modulus // self.modulus
        return Cocycle2(self.group, modulus,
                        self.table.astype(np.int64) * f, self._verified)

    def _check_compatible(self, other: "Cocycle2"):
        if self.group is not other.group:
            raise ModulusMismatchError("cocycles live on different groups")
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        self._check_compatible(other)
        t = (self.table.astype(np.int64) + other.table) % self.modulus
        return Cocycle2(self.group, self.modulus, t,
                        self._verified and other._verified)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return self + (-other)

    def __neg__(self) -> "Cocycle2":
        t = (-self.table.astype(np.int64)) % self.modulus
        return Cocycle2(self.group, self.modulus, t, self._verified)

    def scale(self, k: int) -> "Cocycle2":
        t = (self.table.astype(np.int64) * k) % self.modulus
        return Cocycle2(self.group, self.modulus, t, self._verified)

    def __eq__(self, other):
        if not isinstance(other, Cocycle2):
            return NotImplemented
        return (self.group is other.group and self.modulus == other.modulus
                and np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"Cocycle2(order={self.group.order}, modulus={self.modulus})"


class Cochain1:
    """Normalized 1-cochain: one exponent per group element, zero at 1."""

    __slots__ = ("group", "modulus", "table")

    def __init__(self, group: FiniteGroup, modulus: int, table):
        t = np.asarray(table, dtype=np.int64) % modulus
        if t.shape != (group.order,):
            raise NotNormalizedError(f"cochain shape {t.shape} != ({group.order},)")
        if t[0]:
            raise NotNormalizedError("cochain is not normalized at the identity")
        self.group = group
        self.modulus = modulus
        self.table = t

    def value(self, g: int) -> int:
        return int(self.table[g])


def is_cocycle(c: Cocycle2) -> tuple[bool, tuple[int, int, int] | None]:
    """Exhaustive check of the cocycle identity; returns first failing triple.

    Runs in the narrowest integer dtype the modulus allows: at order ~2000
    the n^3 identity sweep is memory-bound, and 1-byte entries keep it at
    tens of seconds instead of minutes.
    """
    n = c.group.order
    m = c.modulus
    mul = c.group.mul_table()
    if 4 * (m - 1) <= 127:
        t = c.table.astype(np.int8)
    elif 4 * (m - 1) <= 32_767:
        t = c.table.astype(np.int16)
    else:
        t = c.table.astype(np.int64)
    for g in range(n):
        diff = (t[g][:, None] + t[mul[g]] - t - t[g][mul]) % m
        if diff.any():
            h, k = map(int, np.argwhere(diff)[0])
            return False, (g, h, k)
    return True, None


def ensure_cocycle(c: Cocycle2) -> None:
    if c._verified:
        return
    ok, witness = is_cocycle(c)
    if not ok:
        raise NotACocycleError(f"cocycle identity fails at {witness}",
                               witness=witness)
    c._verified = True


def coboundary_of(lam: Cochain1) -> Cocycle2:
    """d(lambda)(g,h) = lambda(g) + lambda(h) - lambda(gh)."""
    g = lam.group
    t = lam.table
    tab = (t[:, None] + t[None, :] - t[g.mul_table()]) % lam.modulus
    return Cocycle2(g, lam.modulus, tab, _verified=True)


# ---------------------------------------------------------------------------
# coboundary decision procedure


def _bfs_words(g: FiniteGroup) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Generator-count vectors and BFS parents for every element.

    counts[x] says how many times each generator occurs in the BFS word for
    x; parents[x] = (y, j) with x = y * gen_j (identity has no parent).
    """
    if "bfs_words" in g._cache:
        return g._cache["bfs_words"]
    gens = list(g.generators)
    k = len(gens)
    n = g.order
    counts = np.zeros((n, k), dtype=np.int64)
    parents: list[tuple[int, int]] = [(-1, -1)] * n
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = [0]
    while queue:
        nxt = []
        for x in queue:
            for j, s in enumerate(gens):
                y = g.mul(x, s)
                if not seen[y]:
                    seen[y] = True
                    counts[y] = counts[x]
                    counts[y, j] += 1
                    parents[y] = (x, j)
                    nxt.append(y)
        queue = nxt
    if not seen.all():
        raise NotAGroupError("generators do not generate the group")
    g._cache["bfs_words"] = (counts, parents)
    return counts, parents


def is_coboundary(c: Cocycle2, sense: str = "torus") -> Cochain1 | None:
    """Definitive coboundary test; returns a witness cochain or None.

    The witness lambda satisfies d(lambda) = c (after the torus lift for the
    torus sense). Along a BFS spanning tree every lambda value is an affine
    function of the generator values, so the |G|^2 coboundary constraints
    collapse to a small linear system over Z_M in one unknown per generator;
    the system is solved exactly by Howell reduction and infeasibility of
    that system is a proof that no witness exists.
    """
    ensure_cocycle(c)
    if sense not in ("torus", "mod-m"):
        raise ValueError(f"unknown sense {sense!r}")
    g = c.group
    if sense == "torus":
        m_target = c.modulus * g.exponent()
        lifted = c.lift(m_target)
    else:
        m_target = c.modulus
        lifted = c
    table = lifted.table.astype(np.int64)
    n = g.order
    counts, parents = _bfs_words(g)
    k = counts.shape[1]
    gens = list(g.generators)
    # offsets: lambda(x) = off[x] + counts[x] . lambda_gens
    off = np.zeros(n, dtype=np.int64)
    order_by_word = sorted(range(n), key=lambda x: int(counts[x].sum()))
    for x in order_by_word:
        y, j = parents[x]
        if y < 0:
            continue
        off[x] = (off[y] - table[y, gens[j]]) % m_target

    mul = g.mul_table().astype(np.int64)
    rows = []
    for a in range(n):
        prod = mul[a]
        coef = (counts[a][None, :] + counts - counts[prod]) % m_target
        rhs = (table[a] - off[a] - off + off[prod]) % m_target
        block = np.concatenate([coef, rhs[:, None]], axis=1)
        rows.append(np.unique(block, axis=0))
    system = np.unique(np.vstack(rows), axis=0)
    aug_a, aug_b = system[:, :k], system[:, k]
    sol = zmlin.solve(aug_a, aug_b, m_target)
    if sol is None:
        return None
    lam_gens = sol[0]
    lam = (off + counts @ lam_gens) % m_target
    witness = Cochain1(g, m_target, lam)
    assert np.array_equal(coboundary_of(witness).table.astype(np.int64),
                          table % m_target)
    return witness


# ---------------------------------------------------------------------------
# restriction / inflation / constructions


def restrict(c: Cocycle2, h: Subgroup) -> Cocycle2:
    """Restriction re-indexed by the subgroup's element order."""
    if h.parent is not c.group:
        raise ValueError("subgroup belongs to a different group")
    sub, _pos = h.as_group()
    els = list(h.elements)
    tab = c.table[np.ix_(els, els)]
    return Cocycle2(sub, c.modulus, tab, _verified=c._verified)


def inflate(c: Cocycle2, extension: CentralExtension | None = None, *,
            group: FiniteGroup | None = None,
            projection=None) -> Cocycle2:
    """Pull back along a quotient map: table[g][h] = c[pi(g)][pi(h)]."""
    if extension is not None:
        group = extension.total
        projection = extension.projection
        target_q = extension.quotient
    else:
        target_q = c.group
    if group is None or projection is None:
        raise ValueError("need an extension or an explicit (group, projection)")
    proj = np.asarray(projection, dtype=np.int64)
    if proj.shape != (group.order,):
        raise NotAHomomorphismError("projection has the wrong length")
    if target_q is not c.group:
        raise ModulusMismatchError("cocycle does not live on the quotient")
    if proj[0] != 0:
        raise NotAHomomorphismError("projection does not send 1 to 1")
    qmul = c.group.mul_table().astype(np.int64)
    gmul = group.mul_table().astype(np.int64)
    lhs = proj[gmul]
    rhs = qmul[np.ix_(proj, proj)]
    if not np.array_equal(lhs, rhs):
        a, b = map(int, np.argwhere(lhs != rhs)[0])
        raise NotAHomomorphismError(
            f"projection is not a homomorphism at ({a}, {b})", witness=(a, b))
    ensure_cocycle(c)
    tab = c.table[np.ix_(proj, proj)]
    return Cocycle2(group, c.modulus, tab, _verified=True)


def _validate_character(domain_pairs, mul, psi: Character) -> None:
    for a in domain_pairs:
        for b in domain_pairs:
            ab = int(mul[a, b])
            if (psi.table[a] + psi.table[b] - psi.table[ab]) % psi.modulus:
                raise NotAGroupError(
                    f"character is not a homomorphism at ({a}, {b})",
                    witness=(a, b))


def from_central_extension(extension: CentralExtension, psi: Character) -> Cocycle2:
    """alpha(q1, q2) = psi(section(q1) section(q2) section(q1 q2)^{-1})."""
    total, quot = extension.total, extension.quotient
    kern = extension.kernel.elements
    missing = [x for x in kern if x not in psi.table]
    if missing:
        raise NotAGroupError(f"character undefined on kernel elements {missing}")
    _validate_character(kern, total.mul_table(), psi)
    sec = np.asarray(extension.section, dtype=np.int64)
    tmul = total.mul_table().astype(np.int64)
    tinv = total.inv_table().astype(np.int64)
    qmul = quot.mul_table().astype(np.int64)
    prod = tmul[sec[:, None], sec[None, :]]
    defect = tmul[prod, tinv[sec[qmul]]]
    kern_set = frozenset(kern)
    flat = {int(x) for x in np.unique(defect)}
    outside = sorted(flat - kern_set)
    if outside:
        raise DefectOutsideKernelError(
            f"section defect {outside[0]} lies outside the kernel",
            witness=outside[0])
    lut = np.zeros(total.order, dtype=np.int64)
    for x in kern:
        lut[x] = psi.table[x] % psi.modulus
    tab = lut[defect]
    out = Cocycle2(quot, psi.modulus, tab)
    ensure_cocycle(out)
    return out


@dataclass(frozen=True)
class BilinearForm:
    """Pairing on an abelian group via its invariant-factor coordinates."""

    group: FiniteGroup
    structure: AbelianStructure
    modulus: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.structure.invariant_factors)
        mat = np.asarray(self.matrix, dtype=np.int64)
        if mat.shape != (r, r):
            raise IllDefinedFormError(f"matrix must be {r}x{r}")
        if self.structure.dlog is None or len(self.structure.dlog) != self.group.order:
            raise IllDefinedFormError("structure does not cover the group")
        for i, di in enumerate(self.structure.invariant_factors):
            for j, dj in enumerate(self.structure.invariant_factors):
                b = int(mat[i, j])
                if (b * di) % self.modulus or (b * dj) % self.modulus:
                    raise IllDefinedFormError(
                        f"entry B[{i}][{j}] = {b} is not killed by the factor orders",
                        witness=(i, j))
        object.__setattr__(self, "matrix",
                           tuple(tuple(int(x) % self.modulus for x in row)
                                 for row in mat))

    def value(self, x: int, y: int) -> int:
        dx = self.structure.dlog[x]
        dy = self.structure.dlog[y]
        mat = self.matrix
        acc = 0
        for i, a in enumerate(dx):
            if a:
                row = mat[i]
                for j, b in enumerate(dy):
                    acc += a * row[j] * b
        return acc % self.modulus


def from_bilinear_form(form: BilinearForm) -> Cocycle2:
    """Bilinear pairings are always cocycles on abelian groups."""
    n = form.group.order
    d = np.array([form.structure.dlog[g] for g in range(n)], dtype=np.int64)
    mat = np.asarray(form.matrix, dtype=np.int64)
    tab = (d @ mat @ d.T) % form.modulus
    return Cocycle2(form.group, form.modulus, tab, _verified=True)


def antisym(c: Cocycle2, g: int, h: int) -> int:
    """beta(g, h) = c(g,h) - c(h,g), defined on commuting pairs."""
    grp_ = c.group
    if grp_.mul(g, h) != grp_.mul(h, g):
        raise NonCommutingPairError(f"elements {g}, {h} do not commute",
                                    witness=(g, h))
    return c.beta(g, h)


def symmetric_on(c: Cocycle2, a: Subgroup) -> bool:
    els = list(a.elements)
    sub = c.table[np.ix_(els, els)]
    return bool((((sub - sub.T) % c.modulus) == 0).all())


def bicyclic_triviality(c: Cocycle2, a: Subgroup) -> bool:
    """Circle-coefficient triviality of the restriction to a bicyclic group.

    Symmetry of the restricted table is equivalent to torus-sense coboundary
    status on a group with at most two invariant factors, so no solver runs.
    """
    structure = _grp.abelian_structure(a)
    if not structure.is_bicyclic():
        raise NotBicyclicError(
            f"subgroup has {len(structure.invariant_factors)} invariant factors")
    return symmetric_on(c, a)


def schur_bicyclic(d1: int, d2: int) -> tuple[AbelianStructure, list[Cocycle2]]:
    """Cohomology of Z_d1 x Z_d2 with circle coefficients: cyclic of order gcd."""
    if d1 < 1 or d2 < 1:
        raise ValueError("factors must be positive")
    g = gcd(d1, d2)
    if g == 1:
        return AbelianStructure((), ()), []
    group = _grp.direct_product(_grp.cyclic(d1), _grp.cyclic(d2))
    structure = _grp.abelian_structure(group)
    # pairing of the two coordinate characters, taken mod gcd
    r = len(structure.invariant_factors)
    mat = np.zeros((r, r), dtype=np.int64)
    mat[0, 1] = 1
    form = BilinearForm(group, structure, g, tuple(map(tuple, mat)))
    return AbelianStructure((g,), (0,)), [from_bilinear_form(form)]


# ---------------------------------------------------------------------------
# brute-force H^2 for small groups


def _character_generators(g: FiniteGroup, modulus: int) -> list[np.ndarray]:
    """Generators of Hom(G, Z_modulus), as value vectors over G."""
    commutators = sorted({g.commutator(a, b)
                          for a in range(g.order) for b in range(g.order)})
    derived = _grp.subgroup_generated(g, commutators)
    quot, proj, _sec = _grp.quotient_by_normal(g, derived)
    structure = _grp.abelian_structure(quot)
    out = []
    for i, d in enumerate(structure.invariant_factors):
        step = modulus // gcd(d, modulus)
        if step == modulus:
            continue
        vals = np.array([(structure.dlog[int(proj[x])][i] * step) % modulus
                         for x in range(g.order)], dtype=np.int64)
        out.append(vals)
    return out


def _bockstein(chi: np.ndarray, mul: np.ndarray, modulus: int) -> np.ndarray:
    """delta(chi)(g,h) = (chi(g) + chi(h) - chi(gh)) / modulus via integer lifts."""
    lift = chi % modulus
    carry = lift[:, None] + lift[None, :] - lift[mul]
    assert (carry % modulus == 0).all()
    return (carry // modulus) % modulus


def _edge_parametrization(g: FiniteGroup) -> np.ndarray:
    """Express every table entry through the generator-column unknowns.

    A normalized 2-cocycle satisfies c(g, hs) = c(g, h) + c(gh, s) - c(h, s),
    so the whole table is an integer-linear function of the edge unknowns
    e[x, j] = c(x, gen_j); identities whose third argument is a generator
    imply the rest by induction on word length. Returns V with V[g, h] the
    coefficient vector of c(g, h) in the n*k edge unknowns, built along a
    BFS tree of the second argument.
    """
    n = g.order
    k = len(g.generators)
    mul = g.mul_table().astype(np.int64)
    counts, parents = _bfs_words(g)
    v = np.zeros((n, n, n * k), dtype=np.int64)
    rows = np.arange(n)
    for w in sorted(range(n), key=lambda x: int(counts[x].sum())):
        h, j = parents[w]
        if h < 0:
            continue  # the identity column stays zero
        v[:, w, :] = v[:, h, :]
        v[rows, w, mul[:, h] * k + j] += 1
        v[:, w, h * k + j] -= 1
    return v


def h2_small(g: FiniteGroup, cap: int = H2_DEFAULT_CAP
             ) -> tuple[AbelianStructure, list[Cocycle2]]:
    """Schur multiplier of a small group by brute force over Z_|G|.

    Solves the degree-2 cocycle identity as a linear system over Z_m with
    m = |G| (the multiplier's exponent divides |G|, so mu_m sees every
    class), then quotients by coboundaries together with the Bockstein
    classes of Z_m-characters: the latter are exactly the classes that die
    with circle coefficients, so the result is H^2(G, C^*). The system is
    pre-reduced to the edge unknowns c(x, gen_j) along a BFS tree. Returns
    the invariant factors (largest first) and one representative per factor.
    """
    n = g.order
    if n > cap:
        raise InfeasibleError(f"group order {n} exceeds cap {cap}")
    m = n
    if n == 1 or m == 1:
        return AbelianStructure((), ()), []
    gens = list(g.generators)
    k = len(gens)
    width = n * k
    mul = g.mul_table().astype(np.int64)
    v = _edge_parametrization(g)
    rows = np.arange(n)

    blocks = []
    for h in range(n):
        for j, s in enumerate(gens):
            w = int(mul[h, s])
            block = v[:, h, :] - v[:, w, :]
            block[rows, mul[:, h] * k + j] += 1
            block[:, h * k + j] -= 1
            blocks.append(block % m)
    pins = np.zeros((k, width), dtype=np.int64)
    for j in range(k):
        pins[j, j] = 1  # normalization: c(1, gen_j) = 0
    system = np.unique(np.vstack(blocks + [pins]), axis=0)
    h_eq = howell_form(system, m)

    kernel_gens = zmlin.left_kernel(h_eq.T, m) if len(h_eq) else \
        np.eye(width, dtype=np.int64)
    k_rows = howell_form(kernel_gens, m)
    r = len(k_rows)
    if r == 0:
        return AbelianStructure((), ()), []

    k_basis = HowellBasis(m, width)
    for row in k_rows:
        k_basis.insert(row)

    def edge_coords(tab: np.ndarray) -> np.ndarray:
        out = np.empty(width, dtype=np.int64)
        for j, s in enumerate(gens):
            out[rows * k + j] = tab[:, s]
        return out % m

    # subgroup to kill: coboundaries and Bockstein classes
    killers: list[np.ndarray] = []
    for x in range(1, n):
        lam = np.zeros(n, dtype=np.int64)
        lam[x] = 1
        killers.append(edge_coords((lam[:, None] + lam[None, :] - lam[mul]) % m))
    for chi in _character_generators(g, m):
        killers.append(edge_coords(_bockstein(chi, mul, m)))

    expresser = zmlin.SpanSolver(k_rows, m)
    coeff_rows = []
    for b in killers:
        assert not k_basis.reduce(b).any(), "killer class is not a cocycle"
        t = expresser.coefficients(b)
        assert t is not None
        coeff_rows.append(t)

    relations = zmlin.left_kernel(k_rows, m)
    pres = np.vstack([relations, np.array(coeff_rows, dtype=np.int64)]) \
        if coeff_rows else relations
    if len(pres) == 0:
        pres = np.zeros((1, r), dtype=np.int64)
    diag, vinv = zmlin.smith_form(pres, m, track_vinv=True)

    factors = []
    reps = []
    for i, d in enumerate(diag):
        if d <= 1:
            continue
        sol = (vinv[i] @ k_rows) % m
        tab = np.einsum("ghx,x->gh", v, sol) % m
        rep = Cocycle2(g, m, tab)
        ensure_cocycle(rep)
        factors.append(int(d))
        reps.append(rep)
    pairs = sorted(zip(factors, reps), key=lambda p: -p[0])
    factors = tuple(d for d, _ in pairs)
    reps = [rep for _, rep in pairs]
    return AbelianStructure(factors, tuple(range(len(reps)))), reps


# ---------------------------------------------------------------------------
# twisted group algebra over a finite G-set


@dataclass(frozen=True)
class GroupAction:
    """Left action of a finite group on the point set {0, ..., points-1}."""

    group: FiniteGroup
    points: int
    perm: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        p = self.perm
        if len(p) != g.order or any(len(row) != self.points for row in p):
            raise ActionInvalidError("permutation table has the wrong shape")
        if tuple(p[0]) != tuple(range(self.points)):
            raise ActionInvalidError("identity must act trivially")
        arr = np.asarray(p, dtype=np.int64)
        if ((arr < 0) | (arr >= self.points)).any():
            raise ActionInvalidError("permutation entry out of range")
        if (np.sort(arr, axis=1) != np.arange(self.points)).any():
            raise ActionInvalidError("some row is not a permutation")
        mul = g.mul_table()
        for a in range(g.order):
            if not np.array_equal(arr[mul[a]], arr[a][arr]):
                b = int(np.argwhere((arr[mul[a]] != arr[a][arr]).any(axis=1))[0])
                raise ActionInvalidError(
                    f"not an action at ({a}, {b})", witness=(a, b))

    @classmethod
    def trivial(cls, group: FiniteGroup, points: int = 1) -> "GroupAction":
        return cls(group, points,
                   tuple(tuple(range(points)) for _ in range(group.order)))

    @classmethod
    def from_point_maps(cls, group: FiniteGroup, maps) -> "GroupAction":
        return cls(group, len(maps[0]), tuple(tuple(r) for r in maps))

    def moved(self, g: int, s: int) -> int:
        return self.perm[g][s]


@dataclass(frozen=True)
class TwistedAlgebraElement:
    """Formal sum of (coefficient function on the G-set) * (group element)."""

    action: GroupAction
    modulus: int
    terms: tuple[tuple[int, tuple[CycloNumber, ...]], ...]

    @classmethod
    def make(cls, action: GroupAction, modulus: int,
             terms: dict[int, tuple]) -> "TwistedAlgebraElement":
        clean = []
        for g in sorted(terms):
            coeff = tuple(
                x if isinstance(x, CycloNumber) else CycloNumber.rational(x)
                for x in terms[g])
            if len(coeff) != action.points:
                raise ActionInvalidError("coefficient function has wrong arity")
            if any(not x.is_zero() for x in coeff):
                clean.append((g, coeff))
        return cls(action, modulus, tuple(clean))

    @classmethod
    def monomial(cls, action: GroupAction, modulus: int, g: int,
                 value=1) -> "TwistedAlgebraElement":
        coeff = tuple(CycloNumber.rational(value) for _ in range(action.points))
        return cls.make(action, modulus, {g: coeff})

    def coefficient(self, g: int) -> tuple[CycloNumber, ...]:
        for h, c in self.terms:
            if h == g:
                return c
        return tuple(CycloNumber.rational(0) for _ in range(self.action.points))

    def __eq__(self, other):
        if not isinstance(other, TwistedAlgebraElement):
            return NotImplemented
        mine = {g: c for g, c in self.terms}
        theirs = {g: c for g, c in other.terms}
        if set(mine) != set(theirs):
            return False
        return all(all(a == b for a, b in zip(mine[g], theirs[g])) for g in mine)


def twisted_product(u: TwistedAlgebraElement, v: TwistedAlgebraElement,
                    c: Cocycle2, action: GroupAction | None = None
                    ) -> TwistedAlgebraElement:
    """(r1 g1) (r2 g2) = zeta^c(g1,g2) (r1 * (g1 r2)) (g1 g2)."""
    action = action or u.action
    if u.action is not action or v.action is not action:
        raise ActionInvalidError("elements live over different actions")
    g = c.group
    if action.group is not g:
        raise ActionInvalidError("action group does not match the cocycle")
    m = c.modulus
    inv = g.inv_table()
    acc: dict[int, list[CycloNumber]] = {}
    for g1, r1 in u.terms:
        pre = action.perm[int(inv[g1])]
        for g2, r2 in v.terms:
            scalar = CycloNumber.zeta(m, c.value(g1, g2)) if m > 1 \
                else CycloNumber.rational(1)
            moved = tuple(r2[pre[s]] for s in range(action.points))
            target = g.mul(g1, g2)
            slot = acc.setdefault(
                target, [CycloNumber.rational(0)] * action.points)
            for s in range(action.points):
                if not r1[s].is_zero() and not moved[s].is_zero():
                    slot[s] = slot[s] + scalar * r1[s] * moved[s]
    return TwistedAlgebraElement.make(action, m, {g_: tuple(v_) for g_, v_ in acc.items()})


def twisted_assoc_check(c: Cocycle2, action: GroupAction,
                        trials: int = 4096, seed: int = 0
                        ) -> tuple[bool, tuple[int, int, int] | None]:
    """Associativity audit of the twisted product.

    Monomials with constant coefficient 1 turn (uv)w = u(vw) into an exact
    exponent comparison, so those triples are checked en masse (all of them
    when |G|^3 <= trials, a seeded sample otherwise); a few random dense
    elements then exercise the full product including the action.
    """
    g = c.group
    n = g.order
    m = c.modulus
    mul = g.mul_table().astype(np.int64)
    t = c.table.astype(np.int64)
    if n ** 3 <= trials:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = np.random.default_rng(seed)
        triples = (tuple(map(int, row))
                   for row in rng.integers(0, n, size=(trials, 3)))
    for a, b, k in triples:
        lhs = t[a, b] + t[mul[a, b], k]
        rhs = t[b, k] + t[a, mul[b, k]]
        if (lhs - rhs) % m:
            return False, (a, b, k)
    # algebra-level smoke on full elements
    rng = np.random.default_rng(seed + 1)
    for _ in range(3):
        els = []
        for _ in range(3):
            terms = {}
            for g_ in map(int, rng.integers(0, n, size=2)):
                terms[g_] = tuple(int(x) for x in rng.integers(-2, 3,
                                                               size=action.points))
            els.append(TwistedAlgebraElement.make(action, m, terms))
        u, v, w = els
        left = twisted_product(twisted_product(u, v, c), w, c)
        right = twisted_product(u, twisted_product(v, w, c), c)
        if left != right:
            return False, None
    return True, None


# ---------------------------------------------------------------------------
# Z_m solver surface (implemented in zmlin, re-exported here)


def howell_solve(a: ZmMatrix, rhs) -> tuple[np.ndarray, np.ndarray] | None:
    """Particular solution and null-space generators of A x = rhs, or None."""
    return zmlin.zm_solve(a, rhs)


def howell_canonical(a: ZmMatrix) -> ZmMatrix:
    """Canonical Howell normal form of the row span."""
    return a.howell()
