"""Representations of the three-vertex quiver over the residue field."""

import pytest

from submodcat.delta_quiver import (DeltaMorphism, DeltaRep, delta_hom,
                                    direct_sum, hom_through_simple_projective,
                                    identity_delta, iso_witness, rep_from_json,
                                    rep_to_triple, simple_rep,
                                    simple_summand_profile, triple_to_rep,
                                    zero_delta, zero_rep)
from submodcat.errors import ConstraintViolated, ParentMismatch, \
    SummandObstruction
from submodcat.fields import field, identity_matrix, iter_subspaces, matmul

F2 = field(2)
F3 = field(3)
F4 = field(4)


def full_rep(F):
    """The representation of the full triple at rank one."""
    return triple_to_rep(F, 1, ((1,),), ((1, 0), (0, 1)))


# -- construction -----------------------------------------------------------

def test_simple_reps():
    for F in (F2, F3, F4):
        assert simple_rep(F, 1).dims == (1, 0, 0)
        assert simple_rep(F, 2).dims == (0, 1, 0)
        assert simple_rep(F, 3).dims == (0, 0, 1)
        assert zero_rep(F).dims == (0, 0, 0)
    with pytest.raises(ValueError):
        simple_rep(F2, 4)


def test_rep_shape_validation():
    with pytest.raises(ValueError):
        DeltaRep(F2, (1, 1, 0), ((1, 1),), (), ())
    with pytest.raises(ValueError):
        DeltaRep(F2, (2, 0, 1), ((),), ((1,), (0,)), ((1,),))
    DeltaRep(F2, (2, 0, 1), ((), ()), ((1,), (0,)), ((0,), (1,)))


def test_full_triple_rep_matrices():
    for F in (F2, F3):
        e = full_rep(F)
        assert e.dims == (1, 1, 2)
        assert e.alpha == ((1,),)
        assert e.beta == ((1, 0),)
        assert e.gamma == ((0, 1),)


def test_direct_sum_blocks():
    a = full_rep(F2)
    b = simple_rep(F2, 1)
    s = direct_sum(a, b)
    assert s.dims == (2, 1, 2)
    assert s.alpha == ((1,), (0,))
    assert s.beta == ((1, 0), (0, 0))
    with pytest.raises(ParentMismatch):
        direct_sum(full_rep(F2), full_rep(F3))


def test_rep_json_roundtrip():
    for rep in (full_rep(F3), simple_rep(F3, 2), zero_rep(F3)):
        obj = rep.to_json()
        assert rep_from_json(F3, obj) == rep
    with pytest.raises(ValueError):
        rep_from_json(F3, {"dims": [1, 0]})


# -- morphisms --------------------------------------------------------------

def test_morphism_intertwining_enforced():
    e = full_rep(F2)
    s1 = simple_rep(F2, 1)
    # vertex-1 component alone cannot map the full triple onto the
    # simple: the submodule leg obstructs it
    with pytest.raises(ConstraintViolated):
        DeltaMorphism(e, s1, ((1,),), (), ())
    DeltaMorphism(s1, e, ((1,),), ((),), ((), ()))


def test_identity_and_zero_morphisms():
    e = full_rep(F3)
    ident = identity_delta(e)
    z = zero_delta(e, e)
    assert not ident.is_zero()
    assert z.is_zero()
    assert ident.compose(ident).g1 == ident.g1
    assert ident.is_invertible()
    assert z.add(ident).g1 == ident.g1


def test_morphism_algebra():
    e = full_rep(F3)
    basis = delta_hom(e, e)
    f = basis[0]
    g = f.scale(2)
    # 2f + f = 3f vanishes in characteristic three
    assert g.add(f).is_zero()
    comp = g.compose(f)
    assert comp.g1 == matmul(F3, g.g1, f.g1)
    inv = identity_delta(e).inverse()
    assert inv.g1 == identity_matrix(1)


# -- hom spaces -------------------------------------------------------------

def test_hom_dims_between_simples():
    for F in (F2, F3):
        s = [None] + [simple_rep(F, v) for v in (1, 2, 3)]
        for i in (1, 2, 3):
            assert len(delta_hom(s[i], s[i])) == 1
            for j in (1, 2, 3):
                if i != j:
                    assert len(delta_hom(s[i], s[j])) == 0


def test_hom_dims_with_full_rep():
    e = full_rep(F2)
    assert len(delta_hom(e, e)) == 1
    # mapping the sink simple into e lands in the vertex-1 space
    assert len(delta_hom(simple_rep(F2, 1), e)) == 1
    # but e cannot map onto the sink simple: the source legs obstruct
    assert len(delta_hom(e, simple_rep(F2, 1))) == 0


def test_hom_members_intertwine():
    reps = [full_rep(F3), simple_rep(F3, 1),
            triple_to_rep(F3, 2, ((1, 0),), ((1, 0, 0, 1),))]
    for a in reps:
        for b in reps:
            for f in delta_hom(a, b):
                # constructing with checks on validates the equations
                DeltaMorphism(a, b, f.g1, f.g2, f.g3)


def test_hom_additivity():
    a, b = full_rep(F2), simple_rep(F2, 1)
    c = triple_to_rep(F2, 1, (), ((1, 0),))
    s = direct_sum(a, b)
    assert len(delta_hom(s, c)) == \
        len(delta_hom(a, c)) + len(delta_hom(b, c))
    assert len(delta_hom(c, s)) == \
        len(delta_hom(c, a)) + len(delta_hom(c, b))


def test_hom_through_simple_projective_dimension():
    e = full_rep(F2)
    s1 = simple_rep(F2, 1)
    both = direct_sum(e, s1)
    # maps factoring through sums of the sink simple form a subspace of
    # dimension s1(source) * d1(target)
    sub = hom_through_simple_projective(both, both)
    prof = simple_summand_profile(both)
    assert len(sub) == prof.s1 * both.dims[0]
    for f in sub:
        DeltaMorphism(both, both, f.g1, f.g2, f.g3)


# -- summand profiles -------------------------------------------------------

def test_profiles_of_simples():
    p1 = simple_summand_profile(simple_rep(F2, 1))
    assert p1.as_tuple() == (1, 0, 0)
    assert p1.is_socle_projective and not p1.is_mod_e
    p2 = simple_summand_profile(simple_rep(F2, 2))
    assert p2.as_tuple() == (0, 1, 0)
    assert not p2.is_socle_projective
    p3 = simple_summand_profile(simple_rep(F2, 3))
    assert p3.as_tuple() == (0, 0, 1)


def test_profile_of_full_rep():
    prof = simple_summand_profile(full_rep(F3))
    assert prof.as_tuple() == (0, 0, 0)
    assert prof.is_mod_e


def test_profile_counts_add_over_sums():
    a = direct_sum(simple_rep(F2, 1), full_rep(F2))
    b = direct_sum(a, simple_rep(F2, 2))
    assert simple_summand_profile(b).as_tuple() == (1, 1, 0)


# -- triples ----------------------------------------------------------------

def test_triple_roundtrip_exhaustive_rank_one():
    for F in (F2, F3):
        for v in iter_subspaces(F, 1):
            for u in iter_subspaces(F, 2):
                rep = triple_to_rep(F, 1, v, u)
                m, vb, ub = rep_to_triple(rep)
                assert (m, vb, ub) == (1, v, u)


def test_triple_roundtrip_random(rng):
    for _ in range(25):
        m = rng.choice([1, 2, 3])
        F = rng.choice([F2, F3])
        vr = [tuple(rng.randrange(F.q) for _ in range(m))
              for _ in range(rng.randrange(m + 1))]
        ur = [tuple(rng.randrange(F.q) for _ in range(2 * m))
              for _ in range(rng.randrange(2 * m + 1))]
        rep = triple_to_rep(F, m, vr, ur)
        m2, vb, ub = rep_to_triple(rep)
        assert m2 == m
        rep2 = triple_to_rep(F, m2, vb, ub)
        assert rep2 == rep


def test_triple_extraction_obstruction():
    with pytest.raises(SummandObstruction) as exc:
        rep_to_triple(simple_rep(F2, 2))
    assert exc.value.simple == 2 and exc.value.dim == 1
    with pytest.raises(SummandObstruction):
        rep_to_triple(direct_sum(full_rep(F2), simple_rep(F2, 3)))


def test_triple_row_length_validation():
    with pytest.raises(ValueError):
        triple_to_rep(F2, 2, ((1,),), ())
    with pytest.raises(ValueError):
        triple_to_rep(F2, 1, (), ((1,),))


# -- isomorphism search -----------------------------------------------------

def test_iso_witness_reflexive():
    e = full_rep(F3)
    res = iso_witness(e, e)
    assert res.found and res.conclusive
    assert res.witness.is_invertible()
    comp = res.inverse.compose(res.witness)
    assert comp.g1 == identity_matrix(1)


def test_iso_witness_separates_sources():
    res = iso_witness(simple_rep(F2, 2), simple_rep(F2, 3))
    assert not res.found and res.conclusive


def test_iso_witness_base_change():
    # the same subspace configuration written in a different basis
    a = triple_to_rep(F3, 2, ((1, 0),), ((1, 0, 0, 1), (0, 1, 1, 0)))
    g = ((1, 1), (0, 1))
    # conjugate the vertex-1 space by g: alpha, beta, gamma all twist
    b = DeltaRep(F3, a.dims, matmul(F3, g, a.alpha),
                 matmul(F3, g, a.beta), matmul(F3, g, a.gamma))
    res = iso_witness(a, b)
    assert res.found
    assert res.witness.is_invertible()


def test_iso_witness_zero_reps():
    res = iso_witness(zero_rep(F2), zero_rep(F2))
    assert res.found and res.conclusive
