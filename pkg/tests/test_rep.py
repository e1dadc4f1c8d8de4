from __future__ import annotations

import pytest

from tbk import example as ex
from tbk import grp
from tbk import rep as rp
from tbk.cyclo import CycloMatrix, CycloNumber, Subspace
from tbk.errors import (
    NonInvertibleGeneratorError,
    OrderBoundExceededError,
    ZeroVectorError,
)


def test_matrix_closure_sigma_x():
    g, rep = rp.matrix_closure([CycloMatrix([[0, 1], [1, 0]])])
    assert g.order == 2
    assert rep.matrices[0].is_identity()


def test_matrix_closure_literal_pauli_pair():
    p, q, n = ex.clock_and_shift(2, "literal")
    g, rep = rp.matrix_closure([p, q], order=n)
    assert g.order == 8
    minus = CycloMatrix.scalar(2, -1)
    ip = next(i for i in range(8) if rep.matrices[i] == p)
    iq = next(i for i in range(8) if rep.matrices[i] == q)
    assert rep.matrices[g.mul(ip, ip)] == minus
    assert rep.matrices[g.mul(iq, iq)] == minus


def test_matrix_closure_rejects_singular():
    with pytest.raises(NonInvertibleGeneratorError):
        rp.matrix_closure([CycloMatrix([[1, 0], [0, 0]])])


def test_matrix_closure_bound():
    p, q, _ = ex.clock_and_shift(3)
    with pytest.raises(OrderBoundExceededError):
        rp.matrix_closure([p, q], bound=10)


def test_odd_p_commutator_is_primitive_scalar():
    p, q, _ = ex.clock_and_shift(3)
    comm = p * q * p.inverse() * q.inverse()
    assert comm.is_scalar()
    val = comm.entries[0][0]
    assert not val.is_one()
    assert (val * val * val).is_one()


def test_fixed_space_identity_is_everything():
    g, rep = rp.matrix_closure([CycloMatrix([[0, 1], [1, 0]])])
    assert rep.fixed_space(0).dim == 2


def test_fixed_spaces_of_central_elements_p2(bundle_p2):
    bundle = bundle_p2
    rep = bundle.rep
    a, b, c = bundle.central
    assert rep.degree - rep.fixed_space(a).dim == 4
    # V^b and V^c have codimension p = 2 and are the two coordinate blocks
    vb = rep.fixed_space(b)
    vc = rep.fixed_space(c)
    assert {rep.degree - vb.dim, rep.degree - vc.dim} == {2}

    def coords(idxs):
        return Subspace.from_vectors(
            8, [[1 if j == i else 0 for j in range(8)] for i in idxs])

    tensor_plus_first = coords([0, 1, 2, 3, 4, 5])
    tensor_plus_second = coords([0, 1, 2, 3, 6, 7])
    assert (vb == tensor_plus_first and vc == tensor_plus_second) or \
        (vb == tensor_plus_second and vc == tensor_plus_first)


def test_eigen_survey_p2_heisenberg_like():
    p, q, n = ex.clock_and_shift(2, "literal")
    g, rep = rp.matrix_closure([p, q], order=n)
    whole = grp.subgroup_generated(g, list(g.generators))
    lines = rp.eigen_survey(rep, whole)
    for line in lines:
        if line.scalar:
            assert line.eigenvalues[0][1] == rep.degree
        else:
            assert len(line.eigenvalues) == 2
            assert all(dim == 1 for _, dim in line.eigenvalues)


def test_pointwise_and_line_stabilizers():
    p = 3
    pm, qm, n = ex.clock_and_shift(p)
    g, rep = rp.matrix_closure([pm, qm], order=n)
    assert g.order == 27
    # eigenvector of the diagonal generator: a coordinate line
    iq = next(i for i in range(27) if rep.matrices[i] == qm)
    vec = [CycloNumber.rational(1 if i == 0 else 0, n) for i in range(p)]
    stab = rp.pointwise_stabilizer(g, rep, Subspace.from_vectors(p, [vec], n))
    st = grp.abelian_structure(stab)
    assert st.invariant_factors == (3,)
    assert iq in stab.elements
    # the whole space is stabilized pointwise only by the identity
    whole = Subspace.full(p, n)
    assert rp.pointwise_stabilizer(g, rep, whole).elements == (0,)
    # zero subspace is stabilized by everything
    assert rp.pointwise_stabilizer(g, rep, Subspace.zero(p, n)).order == 27
    # line stabilizer also picks up the scalars: <Q, eps*I> has order 9
    line_stab = rp.line_stabilizer(g, rep, vec)
    assert set(stab.elements) <= set(line_stab.elements)
    assert line_stab.order == 9
    with pytest.raises(ZeroVectorError):
        rp.line_stabilizer(g, rep, [0, 0, 0])


def test_contained_and_meets_complement():
    e1 = Subspace.from_vectors(2, [[1, 0]])
    e2 = Subspace.from_vectors(2, [[0, 1]])
    diag = Subspace.from_vectors(2, [[1, 1]])
    assert rp.contained(e1, e1)
    assert rp.meets_complement(diag, [e1, e2])
    assert not rp.meets_complement(e1, [e1, e2])


def test_build_model_extremes():
    g, rep = rp.matrix_closure([CycloMatrix([[0, 1], [1, 0]])])
    empty = rp.build_model(rep, 3)
    assert empty.arrangement == ()
    everything = rp.build_model(rep, 1)
    assert len(everything.arrangement) == 1  # the reflection's fixed line


def test_fixed_locus_survey_trivial_group():
    g, rep = rp.matrix_closure([CycloMatrix.identity(2)])
    assert g.order == 1
    model = rp.build_model(rep, 1)
    survey = rp.fixed_locus_survey(model)
    assert len(survey.records) == 1
    assert survey.records[0].meets_open_set


def test_codim_is_conjugation_invariant(bundle_p2):
    g, rep, bundle = bundle_p2.group, bundle_p2.rep, bundle_p2
    for x in (bundle.x[0], bundle.central[0]):
        base = rep.degree - rep.fixed_space(x).dim
        for t in list(g.generators):
            y = g.conj(t, x)
            assert rep.degree - rep.fixed_space(y).dim == base
        inv_codim = rep.degree - rep.fixed_space(g.inv(x)).dim
        assert inv_codim == base
