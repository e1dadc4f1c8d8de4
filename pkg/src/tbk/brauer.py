"""Obstruction subgroups and twisted orbifold bookkeeping.

Membership in B0 (classes restricting trivially to every abelian subgroup)
and in the open-set variant B(U) is decided through the antisymmetrization
beta(g, h) = c(g,h) - c(h,g) on commuting pairs. Scans run over conjugacy
class representatives: beta on commuting pairs and emptiness of the fixed
open set are both conjugation-invariant, so nothing is lost and the large
example stays at class scale. A second, independent algorithm goes through
bicyclic subgroups acting cyclically, and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cocycle as _cx
from . import grp as _grp
from . import rep as _rep
from . import zmlin
from .cyclo import CycloMatrix, CycloNumber, Subspace, kernel
from .errors import (
    InternalDisagreementError,
    ModulusMismatchError,
    NonIntegralDimensionError,
)
from .grp import Subgroup
from .rep import LinearActionModel


@dataclass(frozen=True)
class LCharacter:
    """h -> beta(g, h): a homomorphism from the centralizer of g into Z_m."""

    base: int
    centralizer: Subgroup
    modulus: int
    table: dict[int, int]

    def value(self, h: int) -> int:
        return self.table[h]

    def is_trivial(self) -> bool:
        return not any(self.table.values())


def L_character(c: _cx.Cocycle2, g: int) -> LCharacter:
    _cx.ensure_cocycle(c)
    grp_ = c.group
    z = _grp.centralizer(grp_, g)
    m = c.modulus
    tab = {int(h): c.beta(g, int(h)) for h in z.elements}
    # homomorphism audit: additivity against generators spans all of Z_g
    for s in z.witness_generators:
        for h in z.elements:
            sh = grp_.mul(s, h)
            assert (tab[s] + tab[h] - tab[sh]) % m == 0, \
                "beta(g, -) is not a character on the centralizer"
    assert tab[g] == 0
    return LCharacter(g, z, m, tab)


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness_pair: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.member


def in_B0(c: _cx.Cocycle2) -> MembershipVerdict:
    """beta must vanish on every commuting pair (scanned over class reps)."""
    _cx.ensure_cocycle(c)
    g = c.group
    m = c.modulus
    t = c.table.astype(np.int64)
    for rep_ in _grp.class_representatives(g):
        z = _grp.centralizer(g, rep_)
        els = np.array(z.elements, dtype=np.int64)
        beta = (t[rep_, els] - t[els, rep_]) % m
        bad = np.nonzero(beta)[0]
        if len(bad):
            return MembershipVerdict(False, (rep_, int(els[bad[0]])))
    return MembershipVerdict(True, None)


def _open_flags(model: LinearActionModel) -> dict[int, bool]:
    g = model.group
    cache = g._cache.setdefault("open_flags", {})
    key = tuple(z.key() for z in model.arrangement)
    if key not in cache:
        survey = _rep.fixed_locus_survey(model)
        cache[key] = {r.representative: r.meets_open_set for r in survey.records}
    return cache[key]


def in_BG(c: _cx.Cocycle2, model: LinearActionModel) -> MembershipVerdict:
    """beta must vanish on commuting pairs whose first leg keeps a fixed point."""
    _cx.ensure_cocycle(c)
    g = c.group
    if model.group is not g:
        raise ModulusMismatchError("model group does not match the cocycle")
    m = c.modulus
    t = c.table.astype(np.int64)
    flags = _open_flags(model)
    for rep_, flag in flags.items():
        if not flag:
            continue
        z = _grp.centralizer(g, rep_)
        els = np.array(z.elements, dtype=np.int64)
        beta = (t[rep_, els] - t[els, rep_]) % m
        bad = np.nonzero(beta)[0]
        if len(bad):
            return MembershipVerdict(False, (rep_, int(els[bad[0]])))
    return MembershipVerdict(True, None)


@dataclass(frozen=True)
class BicyclicWitness:
    subgroup: Subgroup            # the bicyclic A
    kernel: Subgroup              # K <= A with A/K cyclic
    fixed_space_codim: int        # codim of V^K
    pair: tuple[int, int]         # generators of A with asymmetric values


@dataclass(frozen=True)
class BicyclicVerdict:
    member: bool
    witness: BicyclicWitness | None

    def __bool__(self) -> bool:
        return self.member


def _pointwise_fixed_space(rep, members) -> Subspace:
    """V^K for a set of elements: joint kernel of the shifted matrices."""
    eye = CycloMatrix.identity(rep.degree, rep.order)
    rows = []
    for s in members:
        shifted = rep.matrices[s] - eye
        rows.extend(list(r) for r in shifted.entries)
    if not rows:
        rows = [list(r) for r in (rep.matrices[0] - eye).entries]
    return kernel(CycloMatrix(rows))


def _cyclic_quotient_exists_with_open_fixed_space(
        a: Subgroup, model: LinearActionModel) -> tuple[bool, Subgroup | None, int]:
    """Search K <= A with A/K cyclic and V^K meeting the open set."""
    g = a.parent
    rep = model.rep
    els = list(a.elements)
    seen: set[frozenset] = set()
    candidates: list[Subgroup] = []
    for x in els:
        for y in els:
            sub = _grp.subgroup_generated(g, [x, y])
            key = frozenset(sub.elements)
            if key not in seen:
                seen.add(key)
                candidates.append(sub)
    a_set = set(els)
    for k_sub in sorted(candidates, key=lambda s: (s.order, s.elements)):
        if not any(set(_grp.subgroup_generated(
                g, list(k_sub.witness_generators) + [x]).elements) == a_set
                for x in els):
            continue  # A/K is not cyclic
        w = _pointwise_fixed_space(rep, k_sub.witness_generators)
        if _rep.meets_complement(w, model.arrangement):
            return True, k_sub, rep.degree - w.dim
    return False, None, -1


def in_BG_bicyclic(c: _cx.Cocycle2, model: LinearActionModel) -> BicyclicVerdict:
    """Independent membership algorithm via bicyclic subgroups acting cyclically.

    Enumerates A = <g, h> over commuting pairs with g a class representative
    (every bicyclic subgroup is conjugate to one of these, and all the
    conditions are conjugation-covariant). Whenever some K <= A has cyclic
    quotient and V^K meets the open set, the restriction of c to A must be
    symmetric.
    """
    _cx.ensure_cocycle(c)
    g = c.group
    if model.group is not g:
        raise ModulusMismatchError("model group does not match the cocycle")
    seen: set[frozenset] = set()
    for rep_ in _grp.class_representatives(g):
        z = _grp.centralizer(g, rep_)
        for h in z.elements:
            a_sub = _grp.subgroup_generated(g, [rep_, int(h)])
            key = frozenset(a_sub.elements)
            if key in seen:
                continue
            seen.add(key)
            ok, k_sub, codim = _cyclic_quotient_exists_with_open_fixed_space(
                a_sub, model)
            if not ok:
                continue
            if not _cx.symmetric_on(c, a_sub):
                tab = c.table
                els = list(a_sub.elements)
                pair = next((x, y) for x in els for y in els
                            if tab[x, y] != tab[y, x])
                return BicyclicVerdict(
                    False, BicyclicWitness(a_sub, k_sub, codim, pair))
    return BicyclicVerdict(True, None)


def bg_cross_check(c: _cx.Cocycle2, model: LinearActionModel
                   ) -> MembershipVerdict:
    """Run both membership algorithms and fail loudly if they disagree."""
    direct = in_BG(c, model)
    indirect = in_BG_bicyclic(c, model)
    if direct.member != indirect.member:
        raise InternalDisagreementError(
            f"pair scan says {direct.member}, bicyclic scan says "
            f"{indirect.member}")
    return direct


# ---------------------------------------------------------------------------
# span analysis of a class catalog


@dataclass(frozen=True)
class SpanReport:
    modulus: int
    basis_size: int
    active_pairs: int
    kernel_generators: tuple[tuple[int, ...], ...]
    generator_trivial: tuple[bool, ...]
    invariant_factors: tuple[int, ...]
    nontrivial_example: tuple[int, ...] | None


def _beta_row(c: _cx.Cocycle2, pairs: np.ndarray) -> np.ndarray:
    t = c.table.astype(np.int64)
    a, b = pairs[:, 0], pairs[:, 1]
    return (t[a, b] - t[b, a]) % c.modulus


def span_analysis(basis: list[_cx.Cocycle2],
                  model: LinearActionModel | None = None) -> SpanReport:
    """Locate the obstruction subgroup inside the span of a class catalog.

    Builds the beta matrix of the catalog over the active commuting pairs
    (all pairs for B0, open-set-filtered pairs when a model is supplied),
    takes its kernel sublattice = span intersect B0 (or B(U)), classifies
    representatives through the torus-sense coboundary solver and reports
    the invariant factors of the kernel modulo the trivial classes.
    """
    if not basis:
        return SpanReport(0, 0, 0, (), (), (), None)
    g = basis[0].group
    m = basis[0].modulus
    for c in basis:
        if c.group is not g or c.modulus != m:
            raise ModulusMismatchError("catalog entries are not compatible")
        _cx.ensure_cocycle(c)
    if model is not None and model.group is not g:
        raise ModulusMismatchError("model group does not match the catalog")

    flags = _open_flags(model) if model is not None else None
    pair_list: list[tuple[int, int]] = []
    for rep_ in _grp.class_representatives(g):
        if flags is not None and not flags[rep_]:
            continue
        z = _grp.centralizer(g, rep_)
        pair_list.extend((rep_, int(h)) for h in z.elements)
    pairs = np.array(pair_list, dtype=np.int64).reshape(-1, 2)

    mat = np.array([_beta_row(c, pairs) for c in basis], dtype=np.int64)
    kernel_rows = zmlin.left_kernel(mat, m)

    def combo(vec) -> _cx.Cocycle2:
        out = _cx.Cocycle2.zero(g, m)
        for t, c in zip(vec, basis):
            if t % m:
                out = out + c.scale(int(t) % m)
        return out

    def trivial(vec) -> bool:
        return _cx.is_coboundary(combo(vec), sense="torus") is not None

    gen_rows = [tuple(int(x) for x in row) for row in kernel_rows]
    verdicts = [trivial(row) for row in kernel_rows]

    # enumerate the (small) kernel sublattice and grow the trivial subgroup
    k = len(basis)
    elements: set[tuple[int, ...]] = {tuple([0] * k)}
    frontier = list(elements)
    while frontier:
        nxt = []
        for v in frontier:
            for row in gen_rows:
                w = tuple((a + b) % m for a, b in zip(v, row))
                if w not in elements:
                    elements.add(w)
                    nxt.append(w)
        frontier = nxt

    trivial_set: set[tuple[int, ...]] = {tuple([0] * k)}
    for row, verdict in zip(gen_rows, verdicts):
        if verdict:
            trivial_set.add(row)
    trivial_set = _close_subgroup(trivial_set, m)
    changed = True
    verdict_cache: dict[tuple[int, ...], bool] = {v: True for v in trivial_set}
    while changed:
        changed = False
        cosets = _cosets(elements, trivial_set, m)
        for rep_vec in cosets:
            if rep_vec in trivial_set or not any(rep_vec):
                continue
            if rep_vec not in verdict_cache:
                verdict_cache[rep_vec] = trivial(rep_vec)
            if verdict_cache[rep_vec]:
                trivial_set.add(rep_vec)
                trivial_set = _close_subgroup(trivial_set, m)
                changed = True
                break

    factors, example = _quotient_invariants(elements, trivial_set, m)
    return SpanReport(m, k, len(pairs), tuple(gen_rows), tuple(verdicts),
                      factors, example)


def _close_subgroup(gens: set, m: int) -> set:
    out = set(gens)
    frontier = list(out)
    while frontier:
        nxt = []
        for v in frontier:
            for w in list(gens):
                u = tuple((a + b) % m for a, b in zip(v, w))
                if u not in out:
                    out.add(u)
                    nxt.append(u)
        frontier = nxt
    return out


def _cosets(elements: set, sub: set, m: int) -> list:
    reps = {}
    for v in sorted(elements):
        key = min(tuple((a - b) % m for a, b in zip(v, w)) for w in sub)
        reps.setdefault(key, v)
    return [reps[k] for k in sorted(reps)]


def _quotient_invariants(elements: set, sub: set, m: int
                         ) -> tuple[tuple[int, ...], tuple[int, ...] | None]:
    """Invariant factors of elements/sub, with a generator of a top factor."""
    k = len(next(iter(elements)))
    zero = tuple([0] * k)

    def coset(v):
        return min(tuple((a - b) % m for a, b in zip(v, w)) for w in sub)

    quotient = {coset(v) for v in elements}
    if quotient == {zero}:
        return (), None

    def q_add(u, v):
        return coset(tuple((a + b) % m for a, b in zip(u, v)))

    def q_order(v):
        o, w = 1, v
        while w != zero:
            w = q_add(w, v)
            o += 1
        return o

    factors = []
    example = None
    remaining = set(quotient)
    while len(remaining) > 1:
        cand = max(sorted(remaining - {zero}), key=q_order)
        o = q_order(cand)
        factors.append(o)
        if example is None:
            example = cand
        cyc = set()
        w = zero
        for _ in range(o):
            cyc.add(w)
            w = q_add(w, cand)
        comp = {zero}
        for v in sorted(remaining):
            trial = _close_quotient(comp | {v}, q_add)
            if trial & cyc == {zero}:
                comp = trial
        if len(comp) * o != len(remaining):
            raise InternalDisagreementError("quotient basis extraction failed")
        remaining = comp
    return tuple(factors), example


def _close_quotient(gens: set, add) -> set:
    out = set(gens)
    frontier = list(out)
    while frontier:
        nxt = []
        for v in frontier:
            for w in list(gens):
                u = add(v, w)
                if u not in out:
                    out.add(u)
                    nxt.append(u)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# twisted orbifold dimensions


@dataclass(frozen=True)
class OrbifoldRow:
    representative: int
    class_size: int
    open_nonempty: bool
    l_trivial: bool
    contribution: int
    untwisted_contribution: int


@dataclass(frozen=True)
class OrbifoldReport:
    rows: tuple[OrbifoldRow, ...]
    twisted_total: int
    untwisted_total: int

    def termwise_equal(self) -> bool:
        return all(r.contribution == r.untwisted_contribution for r in self.rows)


def _invariant_dimension(z: Subgroup, chi: dict[int, CycloNumber],
                         beta: dict[int, int], m: int) -> int:
    """dim of the invariants: average of chi(h) * zeta^beta(h) over Z_g."""
    total = CycloNumber.rational(0)
    for h in z.elements:
        term = chi[h] * CycloNumber.zeta(m, beta[h]) if m > 1 else chi[h]
        total = total + term
    value = total * Fraction(1, z.order)
    if not value.is_rational():
        raise NonIntegralDimensionError(f"non-rational dimension {value!r}")
    q = value.as_rational()
    if q.denominator != 1 or q < 0:
        raise NonIntegralDimensionError(f"dimension {q} is not a nonneg integer")
    return int(q)


def orbifold_dims(model: LinearActionModel, c: _cx.Cocycle2,
                  homology_input: dict[int, dict[int, CycloNumber]] | None = None
                  ) -> OrbifoldReport:
    """Per-class contributions dim (H(U^g) tensor L_g)^{Z_g} and totals.

    In the default scalar mode each nonempty class carries a 1-dimensional
    trivial module, so the contribution is 1 exactly when the L-character is
    trivial; explicit character tables (traces of the centralizer action on
    H(U^g)) may be supplied per class representative instead.
    """
    _cx.ensure_cocycle(c)
    g = c.group
    if model.group is not g:
        raise ModulusMismatchError("model group does not match the cocycle")
    m = c.modulus
    flags = _open_flags(model)
    classes = _grp.conjugacy_classes(g)
    rows = []
    twisted = untwisted = 0
    for cls in classes:
        rep_ = int(cls[0])
        z = _grp.centralizer(g, rep_)
        beta = {int(h): c.beta(rep_, int(h)) for h in z.elements}
        lchar_trivial = not any(beta.values())
        if not flags[rep_]:
            rows.append(OrbifoldRow(rep_, len(cls), False, lchar_trivial, 0, 0))
            continue
        if homology_input is not None and rep_ in homology_input:
            chi = {int(h): v if isinstance(v, CycloNumber)
                   else CycloNumber.rational(v)
                   for h, v in homology_input[rep_].items()}
            missing = [h for h in z.elements if h not in chi]
            if missing:
                raise NonIntegralDimensionError(
                    f"character table missing centralizer elements {missing}")
            contribution = _invariant_dimension(z, chi, beta, m)
            untw = _invariant_dimension(z, chi, {h: 0 for h in beta}, m)
        else:
            contribution = 1 if lchar_trivial else 0
            untw = 1
        rows.append(OrbifoldRow(rep_, len(cls), True, lchar_trivial,
                                contribution, untw))
        twisted += contribution
        untwisted += untw
    return OrbifoldReport(tuple(rows), twisted, untwisted)


@dataclass(frozen=True)
class Cor53Verdict:
    in_obstruction_group: bool
    all_nonempty_classes_trivial: bool
    termwise_equal: bool
    twisted_total: int
    untwisted_total: int
    failing_class: int | None


def verify_cor53(model: LinearActionModel, c: _cx.Cocycle2) -> Cor53Verdict:
    """Termwise comparison of twisted and untwisted dimensions.

    For members of the obstruction group every class with a nonempty fixed
    open set must carry a trivial L-character, making the twisted and
    untwisted orbifold dimensions agree term by term; for non-members the
    witness class is reported.
    """
    member = in_BG(c, model)
    report = orbifold_dims(model, c)
    failing = None
    for row in report.rows:
        if row.open_nonempty and not row.l_trivial:
            failing = row.representative
            break
    all_trivial = failing is None
    if member.member:
        assert all_trivial, "member of the obstruction group with live character"
        assert report.termwise_equal()
    else:
        assert not all_trivial, "non-member must exhibit a witness class"
    return Cor53Verdict(member.member, all_trivial, report.termwise_equal(),
                        report.twisted_total, report.untwisted_total, failing)
