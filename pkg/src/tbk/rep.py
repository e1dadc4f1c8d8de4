"""Matrix representations over cyclotomic fields and linear action models.

A representation is stored as one exact matrix per group element, produced
by closing a generator set; fixed-point subspaces, eigenspaces, stabilizers
and the arrangement Z (the locus removed to form U = V minus Z) are all
computed from those matrices with no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from . import grp as _grp
from .cyclo import CycloMatrix, CycloNumber, RootOfUnity, Subspace, kernel
from .errors import (
    DimensionMismatchError,
    NonInvertibleGeneratorError,
    SingularMatrixError,
    ZeroVectorError,
)
from .grp import FiniteGroup, Subgroup


@dataclass(frozen=True)
class MatrixRep:
    """Faithful matrix model of a finite group: one matrix per element index."""

    group: FiniteGroup
    degree: int
    order: int  # cyclotomic order of the matrix entries
    matrices: tuple[CycloMatrix, ...]

    def matrix(self, g: int) -> CycloMatrix:
        return self.matrices[g]

    def fixed_space(self, g: int) -> Subspace:
        cache = self.group._cache.setdefault("fixed_spaces", {})
        if g not in cache:
            m = self.matrices[g]
            cache[g] = kernel(m - CycloMatrix.identity(self.degree, m.order))
        return cache[g]


@dataclass(frozen=True)
class LinearActionModel:
    """Representation plus a stable arrangement of proper subspaces."""

    rep: MatrixRep
    arrangement: tuple[Subspace, ...]
    codim_threshold: int | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.rep.group


@dataclass(frozen=True)
class FixedLocusRecord:
    representative: int
    class_size: int
    codim: int
    subspace: Subspace
    meets_open_set: bool


@dataclass(frozen=True)
class FixedLocusSurvey:
    records: tuple[FixedLocusRecord, ...]
    spaces_by_codim: dict[int, tuple[Subspace, ...]]

    def record_for(self, g: int) -> FixedLocusRecord:
        for r in self.records:
            if r.representative == g:
                return r
        raise KeyError(f"{g} is not a class representative")


def matrix_closure(generators, order: int | None = None,
                   bound: int = _grp.DEFAULT_ORDER_CAP
                   ) -> tuple[FiniteGroup, MatrixRep]:
    """Close invertible generator matrices into a finite matrix group."""
    mats = []
    for raw in generators:
        m = raw if isinstance(raw, CycloMatrix) else CycloMatrix(raw, order)
        if m.rows != m.cols:
            raise DimensionMismatchError("generators must be square")
        mats.append(m)
    if not mats:
        raise NonInvertibleGeneratorError("need at least one generator")
    degree = mats[0].rows
    if any(m.rows != degree for m in mats):
        raise DimensionMismatchError("generators have mixed sizes")
    n = order or 1
    for m in mats:
        n = lcm(n, m.order)
    mats = [m.embed(n) for m in mats]
    for i, m in enumerate(mats):
        try:
            m.inverse()
        except SingularMatrixError as exc:
            raise NonInvertibleGeneratorError(
                f"generator {i} is singular") from exc
    group, elements = _grp.closure(
        mats, lambda a, b: a * b, lambda m: m.key(), bound=bound)
    rep = MatrixRep(group, degree, n, tuple(elements))
    _spot_check_homomorphism(rep)
    return group, rep


def _spot_check_homomorphism(rep: MatrixRep) -> None:
    g = rep.group
    n = g.order
    if n <= _grp.EXHAUSTIVE_CHECK_ORDER:
        pairs = ((a, b) for a in range(n) for b in range(n))
    else:
        rng = np.random.default_rng(1)
        pairs = (tuple(map(int, r)) for r in rng.integers(0, n, size=(512, 2)))
    for a, b in pairs:
        if rep.matrices[a] * rep.matrices[b] != rep.matrices[g.mul(a, b)]:
            raise DimensionMismatchError(
                f"representation fails multiplicativity at ({a}, {b})")
    if not rep.matrices[0].is_identity():
        raise DimensionMismatchError("identity element is not the identity matrix")


def fixed_space(rep: MatrixRep, g: int) -> Subspace:
    return rep.fixed_space(g)


@dataclass(frozen=True)
class SpectrumLine:
    element: int
    scalar: bool
    eigenvalues: tuple[tuple[RootOfUnity, int], ...]  # (eigenvalue, dimension)


def eigen_survey(rep: MatrixRep, h: Subgroup) -> list[SpectrumLine]:
    """Distinct eigenvalues with eigenspace dimensions, per non-scalar element."""
    from .cyclo import eigenspace

    g = rep.group
    out = []
    for x in h.elements:
        m = rep.matrices[x]
        if m.is_scalar():
            k = g.order_of(x)
            val = m.entries[0][0]
            target = lcm(k, val.order)
            ev = next(RootOfUnity(k, j) for j in range(k)
                      if RootOfUnity(k, j).to_cyclo(target) == val)
            out.append(SpectrumLine(x, True, ((ev, rep.degree),)))
            continue
        k = g.order_of(x)
        found = []
        total = 0
        for j in range(k):
            ev = RootOfUnity(k, j)
            dim = eigenspace(m, ev).dim
            if dim:
                found.append((ev, dim))
                total += dim
        assert total == rep.degree, "finite-order matrix must be diagonalizable"
        out.append(SpectrumLine(x, False, tuple(found)))
    return out


def pointwise_stabilizer(group: FiniteGroup, rep: MatrixRep,
                         w: Subspace) -> Subgroup:
    """Elements fixing the subspace vector-by-vector."""
    members = []
    for g in range(group.order):
        m = rep.matrices[g]
        if all(_vec_eq(m.matvec(v), v) for v in w.basis):
            members.append(g)
    els = tuple(sorted(members))
    return Subgroup(group, els, _grp._greedy_subgroup_generators(group, els))


def _vec_eq(a, b) -> bool:
    return all(x == y for x, y in zip(a, b))


def line_stabilizer(group: FiniteGroup, rep: MatrixRep, vec) -> Subgroup:
    """Elements mapping the line spanned by vec to itself."""
    v = [x if isinstance(x, CycloNumber) else CycloNumber.rational(x)
         for x in vec]
    if all(x.is_zero() for x in v):
        raise ZeroVectorError("line stabilizer of the zero vector")
    lead = next(i for i, x in enumerate(v) if not x.is_zero())
    members = []
    for g in range(group.order):
        w = rep.matrices[g].matvec(v)
        ratio = w[lead] / v[lead]
        if _vec_eq(w, [ratio * x for x in v]):
            members.append(g)
    els = tuple(sorted(members))
    return Subgroup(group, els, _grp._greedy_subgroup_generators(group, els))


def contained(w1: Subspace, w2: Subspace) -> bool:
    return w2.contains(w1)


def meets_complement(w: Subspace, arrangement) -> bool:
    """True iff w is not contained in any single member of the arrangement.

    Over an infinite field a subspace lies in a finite union of subspaces
    iff it lies in one of them, so this decides whether w meets the open
    complement of the union.
    """
    return not any(z.contains(w) for z in arrangement)


def build_model(rep: MatrixRep, threshold: int) -> LinearActionModel:
    """Arrangement of all fixed spaces with codimension >= threshold."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    degree = rep.degree
    seen = {}
    for g in range(1, rep.group.order):
        w = rep.fixed_space(g)
        if degree - w.dim >= threshold:
            seen.setdefault(w.key(), w)
    arrangement = tuple(sorted(seen.values(),
                               key=lambda s: (degree - s.dim, s.key())))
    _assert_stable(rep, arrangement)
    return LinearActionModel(rep, arrangement, threshold)


def _assert_stable(rep: MatrixRep, arrangement) -> None:
    keys = {z.key() for z in arrangement}
    for s in rep.group.generators:
        m = rep.matrices[s]
        for z in arrangement:
            if z.apply(m).key() not in keys:
                raise DimensionMismatchError(
                    "arrangement is not stable under the group")


def fixed_locus_survey(model: LinearActionModel) -> FixedLocusSurvey:
    """Per-class fixed space, codimension and openness flags."""
    rep = model.rep
    g = rep.group
    degree = rep.degree
    records = []
    by_codim: dict[int, dict] = {}
    for cls in _grp.conjugacy_classes(g):
        x = int(cls[0])
        w = rep.fixed_space(x)
        codim = degree - w.dim
        flag = meets_complement(w, model.arrangement)
        records.append(FixedLocusRecord(x, len(cls), codim, w, flag))
        if x != 0:
            by_codim.setdefault(codim, {})[w.key()] = w
    # conjugates share codimension and flag: spot-check on a few conjugators
    for rec in records[:8]:
        for t in list(g.generators)[:3]:
            y = g.conj(t, rec.representative)
            wy = rep.fixed_space(y)
            assert degree - wy.dim == rec.codim
            assert meets_complement(wy, model.arrangement) == rec.meets_open_set
    spaces = {c: tuple(sorted(d.values(), key=lambda s: s.key()))
              for c, d in sorted(by_codim.items())}
    return FixedLocusSurvey(tuple(records), spaces)
