from __future__ import annotations

import itertools

import numpy as np
import pytest

from tbk import grp
from tbk.errors import (
    NonCentralSubgroupError,
    NotAbelianError,
    NotAGroupError,
    OrderBoundExceededError,
)


def s3_group() -> grp.FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms
    ]
    return grp.build_from_cayley(table)


def quaternion_table() -> list[list[int]]:
    # elements 1, -1, i, -i, j, -j, k, -k encoded as (axis, sign)
    names = [(0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)]
    index = {v: i for i, v in enumerate(names)}

    def mul(a, b):
        (ax, sa), (bx, sb) = a, b
        s = sa * sb
        if ax == 0:
            return (bx, s)
        if bx == 0:
            return (ax, s)
        if ax == bx:
            return (0, -s)
        # i*j=k, j*k=i, k*i=j and anticommutation
        table = {(1, 2): (3, 1), (2, 3): (1, 1), (3, 1): (2, 1),
                 (2, 1): (3, -1), (3, 2): (1, -1), (1, 3): (2, -1)}
        cx, cs = table[(ax, bx)]
        return (cx, s * cs)

    return [[index[mul(a, b)] for b in names] for a in names]


def q8_group() -> grp.FiniteGroup:
    return grp.build_from_cayley(
        quaternion_table(),
        labels=["1", "-1", "i", "-i", "j", "-j", "k", "-k"],
    )


def test_build_cyclic_table():
    g = grp.build_from_cayley([[(a + b) % 4 for b in range(4)] for a in range(4)])
    assert g.order == 4
    assert g.is_abelian()
    assert len(g.generators) == 1


def test_build_s3():
    g = s3_group()
    assert g.order == 6
    assert not g.is_abelian()
    # full brute-force associativity on all 216 triples
    for a in range(6):
        for b in range(6):
            for c in range(6):
                assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_corrupted_table_rejected():
    table = [[(a + b) % 5 for b in range(5)] for a in range(5)]
    table[3][4] = 1  # break it
    with pytest.raises(NotAGroupError):
        grp.build_from_cayley(table)


def test_identity_relocation():
    # shift the identity away from index 0 and expect relocation
    base = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    perm = [2, 0, 1]  # old -> position
    inv = [perm.index(i) for i in range(3)]
    tab = [[perm[base[inv[i]][inv[j]]] for j in range(3)] for i in range(3)]
    g = grp.build_from_cayley(tab)
    assert g.mul(0, 1) == 1 and g.mul(1, 0) == 1


def test_closure_trivial_and_involutions():
    one = (1,)
    g, els = grp.closure([one], lambda a, b: a, lambda x: x)
    assert g.order == 1

    # two anticommuting 2x2 involutions generate a group of order 8
    import tbk.cyclo as cyclo

    P = cyclo.CycloMatrix([[0, 1], [1, 0]])
    Q = cyclo.CycloMatrix([[1, 0], [0, -1]])
    g, els = grp.closure([P, Q], lambda a, b: a * b, lambda m: m.key())
    assert g.order == 8
    assert els[0].is_identity()


def test_closure_bound():
    import tbk.cyclo as cyclo

    P = cyclo.CycloMatrix([[0, 1], [1, 0]])
    Q = cyclo.CycloMatrix([[1, 0], [0, -1]])
    with pytest.raises(OrderBoundExceededError):
        grp.closure([P, Q], lambda a, b: a * b, lambda m: m.key(), bound=5)


def test_closure_is_deterministic():
    import tbk.cyclo as cyclo

    P = cyclo.CycloMatrix([[0, 1], [1, 0]])
    Q = cyclo.CycloMatrix([[1, 0], [0, -1]])
    g1, els1 = grp.closure([P, Q], lambda a, b: a * b, lambda m: m.key())
    g2, els2 = grp.closure([Q, P], lambda a, b: a * b, lambda m: m.key())
    assert np.array_equal(g1.mul_table(), g2.mul_table())
    assert [m.key() for m in els1] == [m.key() for m in els2]


def test_conjugacy_classes():
    z4 = grp.cyclic(4)
    assert [len(c) for c in grp.conjugacy_classes(z4)] == [1, 1, 1, 1]

    s3 = s3_group()
    assert sorted(len(c) for c in grp.conjugacy_classes(s3)) == [1, 2, 3]

    q8 = q8_group()
    classes = grp.conjugacy_classes(q8)
    assert len(classes) == 5
    # classes partition the group and sizes divide the order
    all_els = sorted(int(x) for c in classes for x in c)
    assert all_els == list(range(8))
    assert all(8 % len(c) == 0 for c in classes)


def test_centralizer_and_class_equation():
    for g in (s3_group(), q8_group()):
        for cls in grp.conjugacy_classes(g):
            z = grp.centralizer(g, int(cls[0]))
            assert z.order * len(cls) == g.order
    s3 = s3_group()
    transposition = next(
        x for x in range(6) if s3.order_of(x) == 2
    )
    assert grp.centralizer(s3, transposition).order == 2


def test_center_and_generated():
    q8 = q8_group()
    assert grp.center(q8).elements == (0, 1)  # {1, -1}
    s3 = s3_group()
    three_cycle = next(x for x in range(6) if s3.order_of(x) == 3)
    assert grp.subgroup_generated(s3, [three_cycle]).order == 3
    assert grp.centralizer(q8, 2).order == 4  # <i>


def test_commuting_pairs_klein():
    v4 = grp.direct_product(grp.cyclic(2), grp.cyclic(2))
    pairs = list(grp.commuting_pairs(v4))
    assert len(pairs) == 10
    assert pairs == sorted(pairs)


def test_abelian_structure():
    z6 = grp.cyclic(6)
    s = grp.abelian_structure(z6)
    assert s.invariant_factors == (6,)

    z2z4 = grp.direct_product(grp.cyclic(2), grp.cyclic(4))
    s = grp.abelian_structure(z2z4)
    assert s.invariant_factors == (4, 2)

    # dlog is additive
    g = z2z4
    for a in range(8):
        for b in range(8):
            ab = g.mul(a, b)
            expect = tuple(
                (x + y) % d
                for x, y, d in zip(s.dlog[a], s.dlog[b], s.invariant_factors)
            )
            assert s.dlog[ab] == expect


def test_abelian_structure_klein_in_d4():
    # dihedral group of order 8 as permutation matrices of the square
    import tbk.cyclo as cyclo

    rot = cyclo.CycloMatrix([[0, -1], [1, 0]])
    ref = cyclo.CycloMatrix([[1, 0], [0, -1]])
    d4, _ = grp.closure([rot, ref], lambda a, b: a * b, lambda m: m.key())
    assert d4.order == 8
    # find a Klein four subgroup
    invs = [x for x in range(8) if d4.order_of(x) <= 2]
    klein = None
    for a, b in itertools.combinations([x for x in invs if x], 2):
        h = grp.subgroup_generated(d4, [a, b])
        if h.order == 4:
            klein = h
            break
    assert klein is not None
    s = grp.abelian_structure(klein)
    assert s.invariant_factors == (2, 2)


def test_abelian_structure_rejects_nonabelian():
    with pytest.raises(NotAbelianError):
        grp.abelian_structure(s3_group())


def test_quotients():
    z4 = grp.cyclic(4)
    ext = grp.quotient_by_central(z4, grp.subgroup_generated(z4, [2]))
    assert ext.quotient.order == 2

    q8 = q8_group()
    ext = grp.quotient_by_central(q8, grp.center(q8))
    assert ext.quotient.order == 4
    assert grp.abelian_structure(ext.quotient).invariant_factors == (2, 2)
    # projection(section(q)) == q and fibers have kernel size
    for q in range(ext.quotient.order):
        assert ext.projection[ext.section[q]] == q
    sizes = np.bincount(ext.projection)
    assert (sizes == ext.kernel.order).all()
    assert ext.section[0] == 0


def test_quotient_requires_central():
    s3 = s3_group()
    three = next(x for x in range(6) if s3.order_of(x) == 3)
    h = grp.subgroup_generated(s3, [three])
    with pytest.raises(NonCentralSubgroupError):
        grp.quotient_by_central(s3, h)


def test_subgroup_as_group_roundtrip():
    q8 = q8_group()
    h = grp.centralizer(q8, 2)
    sub, pos = h.as_group()
    assert sub.order == 4
    for a in h.elements:
        for b in h.elements:
            assert sub.mul(pos[a], pos[b]) == pos[q8.mul(a, b)]


def test_exponent():
    assert grp.cyclic(6).exponent() == 6
    assert q8_group().exponent() == 4
    v4 = grp.direct_product(grp.cyclic(2), grp.cyclic(2))
    assert v4.exponent() == 2


def test_abelian_structure_round_trip():
    # the dlog map is an isomorphism onto the product of cyclic factors
    for g in (grp.cyclic(12),
              grp.direct_product(grp.cyclic(2), grp.cyclic(4)),
              grp.direct_product(grp.cyclic(6), grp.cyclic(4))):
        s = grp.abelian_structure(g)
        product = grp.cyclic(s.invariant_factors[0])
        for d in s.invariant_factors[1:]:
            product = grp.direct_product(product, grp.cyclic(d))
        # index of an exponent vector inside the reconstructed product
        def pack(vec):
            idx = 0
            for e, d in zip(vec, s.invariant_factors):
                idx = idx * d + e
            return idx
        for a in range(g.order):
            for b in range(g.order):
                left = pack(s.dlog[g.mul(a, b)])
                right = product.mul(pack(s.dlog[a]), pack(s.dlog[b]))
                assert left == right
