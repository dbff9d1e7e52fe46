"""The category of submodule pairs: canonical objects, Hom groups,
layers, the socle of interval objects, and the control ideal."""

import itertools

import pytest

from submodcat.chain_ring import zmod
from submodcat.errors import DecompositionFailed, ParentMismatch
from submodcat.lambda_modules import (PartitionModule, hom_group,
                                      identity_morphism, quotient_invariants,
                                      submodule_from_rows, zero_submodule)
from submodcat.subpair_category import (PairMorphism, SubPair, canonical_I,
                                        canonical_inclusion, canonical_J,
                                        direct_sum, hom_into_socle, hom_pairs,
                                        hom_subgroup_from_morphisms,
                                        hom_through_I, i_socle,
                                        identity_pair_morphism, layers,
                                        make_pair, pair_iso_witness,
                                        pair_power, simple_pairs,
                                        zero_pair_morphism)


# -- canonical objects ------------------------------------------------------

def test_canonical_partitions(long_ring):
    J = canonical_J(long_ring)
    I = canonical_I(long_ring)
    assert J.M0.parts == (7, 4, 2)
    assert I.M0.parts == (6, 4, 2)
    assert J.M1.as_module().module.parts == (4, 3)
    assert I.M1.as_module().module.parts == (3, 2)
    assert J.M1.size() == long_ring.q ** 7
    assert I.M1.size() == long_ring.q ** 5


def test_canonical_submodule_at_p2():
    # fully pinned at p = 2: |J1| = 2^7
    J = canonical_J(zmod(2, 7))
    assert J.M1.size() == 128


def test_small_bound_is_shifted_large_bound(long_ring):
    J = canonical_J(long_ring)
    I = canonical_I(long_ring)
    inc = canonical_inclusion(long_ring)
    assert inc.source is I and inc.target is J
    # the embedded copy of I1 is exactly t J1 inside J0
    img = inc.f0.restrict_submodule(I.M1)
    assert img == J.M1.t_image(1)
    # and the inclusion is injective
    assert inc.f0.kernel().size() == 1


def test_inclusion_cokernel(long_ring):
    J = canonical_J(long_ring)
    I = canonical_I(long_ring)
    inc = canonical_inclusion(long_ring)
    img0 = inc.f0.image()
    assert quotient_invariants(J.M0, img0).module.parts == (1,)
    # submodule components: J1 / (image of I1) has shape (1, 1)
    sh = J.M1.as_module()
    img1 = inc.f0.restrict_submodule(I.M1)
    inner = submodule_from_rows(sh.module,
                                [sh.coords(g).coords for g in img1.gens()])
    assert quotient_invariants(sh.module, inner).module.parts == (1, 1)
    # the induced map between the cokernels vanishes: J1 lands inside
    # the embedded copy of I0
    for row in J.M1.rows:
        assert img0.contains(row)


def test_canonical_objects_need_length_seven():
    with pytest.raises(ValueError):
        canonical_J(zmod(2, 6))
    with pytest.raises(ValueError):
        canonical_I(zmod(3, 5))


def test_canonical_objects_at_higher_length():
    J = canonical_J(zmod(2, 9))
    assert J.M0.parts == (7, 4, 2)
    assert J.M1.as_module().module.parts == (4, 3)


# -- layers -----------------------------------------------------------------

def test_layer_values_on_the_large_bound(long_ring):
    ring = long_ring
    J = canonical_J(ring)
    lay = layers(J)
    t6 = ring.tpow(6)
    z = ring.zero
    assert lay.L(1).rows == ((t6, z, z),)
    # L6 is the embedded copy of I0
    assert lay.L(6).rows == ((ring.t, z, z), (z, ring.one, z),
                             (z, z, ring.one))


def test_layer_chain_and_shift(long_ring):
    ring = long_ring
    for pair in (canonical_J(ring), canonical_I(ring),
                 pair_power(canonical_J(ring), 2)[0]):
        lay = pair.layers()
        for i in range(1, 7):
            if i > 1:
                assert lay.L(i).contains_submodule(lay.L(i - 1))
                assert lay.L(i - 1).contains_submodule(
                    lay.L(i).t_image(1))
        with pytest.raises(ValueError):
            lay.L(0)


# -- Hom groups -------------------------------------------------------------

def test_simple_pairs_and_their_homs(long_ring):
    S1, S2 = simple_pairs(long_ring)
    assert S1.M0.parts == (1,) and S1.M1.size() == 1
    assert S2.M0.parts == (1,) and S2.M1.size() == long_ring.q
    assert hom_pairs(S1, S2).order() == long_ring.q
    assert hom_pairs(S2, S1).order() == 1
    assert hom_pairs(S1, S1).order() == long_ring.q
    assert hom_pairs(S2, S2).order() == long_ring.q


def test_identity_is_a_pair_morphism(long_ring):
    for pair in (canonical_I(long_ring), canonical_J(long_ring)):
        H = hom_pairs(pair, pair)
        assert H.contains(identity_pair_morphism(pair))
        assert H.contains(zero_pair_morphism(pair, pair))


def test_canonical_hom_orders(long_ring):
    q = long_ring.q
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    assert hom_pairs(I, I).order() == q ** 26
    assert hom_pairs(J, J).order() == q ** 25
    assert hom_pairs(I, J).order() == q ** 26
    assert hom_pairs(J, I).order() == q ** 24
    assert hom_through_I(J, J).order() == q ** 24


def test_hom_additivity(long_ring):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    S = direct_sum(I, J)
    assert hom_pairs(S, I).order() == \
        hom_pairs(I, I).order() * hom_pairs(J, I).order()
    assert hom_pairs(I, S).order() == \
        hom_pairs(I, I).order() * hom_pairs(I, J).order()


def test_hom_pairs_matches_exhaustive_enumeration(rng):
    # every ambient matrix is tried literally on small pairs
    ring = zmod(2, 2)
    for _ in range(10):
        M0 = PartitionModule(ring, (2, 1))
        N0 = PartitionModule(ring, (2, 1))
        M1 = submodule_from_rows(M0, [M0.random_element(rng).coords])
        N1 = submodule_from_rows(N0, [N0.random_element(rng).coords])
        M, N = SubPair(M0, M1), SubPair(N0, N1)
        H = hom_pairs(M, N)
        amb = hom_group(M0, N0)
        count = 0
        for coeffs in itertools.product(
                *[ring.elements_mod_tpow(e) for e in amb.orders]):
            f = amb.element(coeffs)
            ok = all(N1.contains(f.apply(g)) for g in M1.gens())
            if ok:
                count += 1
                assert H.contains(f)
        assert H.order() == count


def test_pair_hom_generators_span(long_ring, rng):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    H = hom_pairs(I, J)
    for g, e in zip(H.gens, H.orders):
        killed = g.scale(long_ring.tpow(e))
        assert killed.is_zero()
    f = H.random_element(rng)
    assert H.contains(f)
    cs = H.coords(f)
    again = H.element(cs)
    assert again.f0.rows == f.f0.rows


def test_pair_morphism_must_preserve_submodule(long_ring):
    J = canonical_J(long_ring)
    # the identity of J0 does not carry J1 into t J1
    shrunk = SubPair(J.M0, J.M1.t_image(1))
    with pytest.raises(ParentMismatch):
        PairMorphism(J, shrunk, identity_morphism(J.M0))


def test_pair_morphism_algebra(long_ring, rng):
    J = canonical_J(long_ring)
    H = hom_pairs(J, J)
    f, g = H.random_element(rng), H.random_element(rng)
    e = J.M0.random_element(rng)
    assert f.compose(g).apply(e) == f.apply(g.apply(e))
    assert f.add(g).apply(e) == f.apply(e) + g.apply(e)
    c = long_ring.random_element(rng)
    assert f.scale(c).apply(e) == f.apply(e).scale(c)
    ident = identity_pair_morphism(J)
    assert ident.is_invertible()
    assert ident.inverse().f0 == ident.f0


# -- powers and sums --------------------------------------------------------

def test_pair_power_partitions(long_ring):
    I = canonical_I(long_ring)
    P, maps = pair_power(I, 2)
    assert P.M0.parts == (6, 6, 4, 4, 2, 2)
    assert len(maps) == 2
    assert P.M1.size() == I.M1.size() ** 2
    Z, _ = pair_power(I, 0)
    assert Z.M0.parts == ()
    assert direct_sum(I, Z).M0.parts == I.M0.parts


def test_make_pair(long_ring):
    t = long_ring.t
    M = make_pair(long_ring, (3, 1), [(t, long_ring.one)])
    assert M.M0.parts == (3, 1)
    assert M.M1.contains((t, long_ring.one))


# -- the I-socle ------------------------------------------------------------

def test_i_socle_of_the_bounds(long_ring):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    for pair, r in ((I, 1), (J, 1)):
        soc = i_socle(pair)
        assert soc.r == r
        # round trip through the certified power of I
        back = soc.from_power.compose(soc.to_power)
        ident = identity_pair_morphism(soc.pair)
        assert back.f0.rows == ident.f0.rows
        fwd = soc.to_power.compose(soc.from_power)
        assert fwd.f0.rows == \
            identity_pair_morphism(soc.to_power.target).f0.rows


def test_i_socle_of_a_power(long_ring):
    P, _ = pair_power(canonical_J(long_ring), 2)
    soc = i_socle(P)
    assert soc.r == 2


def test_i_socle_rejects_outside_pairs(long_ring):
    S1, _ = simple_pairs(long_ring)
    with pytest.raises(DecompositionFailed):
        i_socle(S1)


def test_homs_from_I_land_in_the_socle(long_ring):
    I = canonical_I(long_ring)
    for target in (canonical_J(long_ring), canonical_I(long_ring)):
        soc = i_socle(target)
        for g in hom_pairs(I, target).gens:
            assert soc.lands_in_socle(g)
            # factor and recompose
            inner = soc.factor_into(g)
            again = soc.include().compose(inner)
            assert again.f0.rows == g.f0.rows


# -- the control ideal ------------------------------------------------------

def test_homs_from_I_all_factor(long_ring):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    for N in (I, J):
        H = hom_pairs(I, N)
        T = hom_through_I(I, N)
        assert T.same_subgroup(H)


def test_control_ideal_inside_hom(long_ring, rng):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    for M, N in ((J, J), (J, I), (I, J)):
        H = hom_pairs(M, N)
        T = hom_through_I(M, N)
        assert all(H.contains(g) for g in T.gens)
        assert T.order() <= H.order()


def test_control_ideal_is_two_sided(long_ring, rng):
    J = canonical_J(long_ring)
    T = hom_through_I(J, J)
    E = hom_pairs(J, J)
    for _ in range(4):
        f = E.random_element(rng)
        for g in T.gens:
            assert T.contains(f.compose(g))
            assert T.contains(g.compose(f))


def test_control_ideal_equals_socle_route(long_ring):
    I = canonical_I(long_ring)
    J = canonical_J(long_ring)
    for M, N in itertools.product((I, J), repeat=2):
        thru = hom_through_I(M, N)
        socle = hom_into_socle(M, N)
        assert thru.same_subgroup(socle)


def test_hom_subgroup_from_morphisms(long_ring):
    J = canonical_J(long_ring)
    H = hom_pairs(J, J)
    sub = hom_subgroup_from_morphisms(J, J, [H.gens[0]])
    assert sub.order() <= H.order()
    assert sub.contains(H.gens[0])
    zero = hom_subgroup_from_morphisms(J, J, [])
    assert zero.order() == 1


# -- isomorphism search -----------------------------------------------------

def test_iso_witness_identical_pairs(long_ring):
    J = canonical_J(long_ring)
    res = pair_iso_witness(J, J)
    assert res.found and res.conclusive
    comp = res.inverse.compose(res.witness)
    assert comp.f0.rows == identity_pair_morphism(J).f0.rows


def test_iso_witness_distinguishes_the_bounds(long_ring):
    res = pair_iso_witness(canonical_I(long_ring), canonical_J(long_ring))
    assert not res.found and res.conclusive


def test_iso_witness_separates_submodule_sizes(long_ring):
    J = canonical_J(long_ring)
    stripped = SubPair(J.M0, zero_submodule(J.M0))
    res = pair_iso_witness(J, stripped)
    assert not res.found and res.conclusive


def test_iso_witness_finds_twisted_copy(long_ring):
    # push J1 through an ambient automorphism: an isomorphic pair with
    # different submodule rows
    ring = long_ring
    J = canonical_J(ring)
    amb = hom_group(J.M0, J.M0)
    twist = amb.element(tuple(
        ring.one if i == j else (ring.t if (i, j) == (1, 0) else ring.zero)
        for (i, j) in amb.index))
    rows = twist.restrict_submodule(J.M1).rows
    N = SubPair(J.M0, submodule_from_rows(J.M0, rows))
    res = pair_iso_witness(J, N, budget=4000)
    assert res.found
    assert res.witness.is_invertible()


def test_iso_witness_zero_pairs(long_ring):
    Z, _ = pair_power(canonical_I(long_ring), 0)
    res = pair_iso_witness(Z, Z)
    assert res.found and res.conclusive
