"""Pairs (M₁ ⊆ M₀) of Λ-modules and their category.

A morphism of pairs is a morphism of the ambient modules that carries
the distinguished submodule into the distinguished submodule.  Hom
groups are computed inside the closed-form ambient group Hom(M₀, N₀):
coefficient tuples live in the lattice ⊕ Λ/t^{e_s} (one coordinate per
ambient generator), the submodule condition is a linear constraint
there, and the solution subgroup is kept in Howell canonical form, so
subgroups can be compared syntactically.

This module also houses the canonical pair I ⊆ J of the length-seven
interval, the layer filtration L₁ ⊆ … ⊆ L₆ of an ambient module, the
I-socle (M₁ ∩ L₃M ⊆ L₆M) with its identification as a power of I, and
the ideal of morphisms factoring through direct sums of copies of I.
"""

import functools
import random

from .errors import (DecompositionFailed, NoSolution, ParentMismatch)
from .fields import rank as field_rank
from .howell import (SpanSolver, howell_canonical, mat_mul_rows, reduce_row,
                     row_is_zero, span_data, span_decomposition)
from .lambda_modules import (AmbientHom, ModElement, ModMorphism,
                             PartitionModule, Submodule, full_submodule,
                             hom_group, identity_morphism, merge_partitions,
                             quotient_invariants, s_socle,
                             submodule_from_generators, submodule_from_rows,
                             zero_morphism, zero_submodule)


class SubPair:
    """An object (M₁ ⊆ M₀): an ambient PartitionModule with a marked
    Submodule."""

    def __init__(self, m0, m1):
        if m1.parent != m0:
            raise ParentMismatch("submodule does not live in the ambient module")
        self.M0 = m0
        self.M1 = m1
        self._layers = None

    @property
    def ring(self):
        return self.M0.ring

    def layers(self):
        if self._layers is None:
            self._layers = LayerFiltration(self.M0)
        return self._layers

    def __eq__(self, other):
        return (isinstance(other, SubPair) and self.M0 == other.M0
                and self.M1 == other.M1)

    def __hash__(self):
        return hash((self.M0, self.M1))

    def __repr__(self):
        return f"SubPair(M0={self.M0.parts}, |M1 gens|={len(self.M1.rows)})"


def make_pair(ring, parts, m1_rows):
    m0 = PartitionModule(ring, parts)
    return SubPair(m0, submodule_from_rows(m0, m1_rows))


def direct_sum(a, b):
    """Componentwise direct sum; partitions merge descending."""
    if a.ring != b.ring:
        raise ParentMismatch("direct sum over different rings")
    merged, (ma, mb) = merge_partitions([a.M0.parts, b.M0.parts])
    ring = a.ring
    m0 = PartitionModule(ring, merged)
    z = ring.zero
    rows = []
    for r in a.M1.rows:
        row = [z] * len(merged)
        for i, e in enumerate(r):
            row[ma[i]] = e
        rows.append(tuple(row))
    for r in b.M1.rows:
        row = [z] * len(merged)
        for i, e in enumerate(r):
            row[mb[i]] = e
        rows.append(tuple(row))
    return SubPair(m0, submodule_from_rows(m0, rows))


def pair_power(a, r):
    """A^r; the merged partition keeps copy-major order inside each
    part size, so copy i of generator g sits at a predictable index."""
    ring = a.ring
    merged, maps = merge_partitions([a.M0.parts] * r)
    m0 = PartitionModule(ring, merged)
    z = ring.zero
    rows = []
    for c in range(r):
        for row0 in a.M1.rows:
            row = [z] * len(merged)
            for i, e in enumerate(row0):
                row[maps[c][i]] = e
            rows.append(tuple(row))
    return SubPair(m0, submodule_from_rows(m0, rows)), maps


def simple_pairs(ring):
    """The two pairs with t·M₀ = 0: (0 ⊆ k) and (k ⊆ k)."""
    k1 = PartitionModule(ring, (1,))
    s1 = SubPair(k1, zero_submodule(k1))
    s2 = SubPair(k1, full_submodule(k1))
    return s1, s2


class PairMorphism:
    """A map of pairs: an ambient morphism with f(M₁) ⊆ N₁."""

    def __init__(self, source, target, f0, check=True):
        self.source = source
        self.target = target
        self.f0 = f0
        if f0.source != source.M0 or f0.target != target.M0:
            raise ParentMismatch("ambient morphism has the wrong shape")
        if check:
            img = f0.restrict_submodule(source.M1)
            if not target.M1.contains_submodule(img):
                raise ParentMismatch("morphism does not preserve the submodule")

    def apply(self, elt):
        return self.f0.apply(elt)

    def __call__(self, elt):
        return self.f0.apply(elt)

    def compose(self, first):
        if first.target != self.source:
            raise ParentMismatch("composition shape mismatch")
        return PairMorphism(first.source, self.target,
                            self.f0.compose(first.f0), check=False)

    def add(self, other):
        return PairMorphism(self.source, self.target, self.f0.add(other.f0),
                            check=False)

    def scale(self, c):
        return PairMorphism(self.source, self.target, self.f0.scale(c),
                            check=False)

    def is_zero(self):
        return self.f0.is_zero()

    def residue_matrix(self):
        """The matrix of f₀ over the residue field (entries f_{ij} mod t)."""
        ring = self.source.ring
        return [tuple(ring.residue(e) for e in row)
                for row in self.f0.matrix_entries()]

    def is_invertible(self):
        """Over the local ring Λ, f₀ is invertible iff its residue
        matrix is; an invertible pair morphism between pairs with
        |M₁| = |N₁| is an isomorphism of pairs."""
        if self.source.M0.parts != self.target.M0.parts:
            return False
        mat = self.residue_matrix()
        F = self.source.ring.field
        return field_rank(F, mat) == self.source.M0.ngens

    def inverse(self):
        rows = []
        for i in range(self.target.M0.ngens):
            e = self.target.M0.gen(i)
            rows.append(self.f0.solve_element(e).coords)
        g0 = ModMorphism(self.target.M0, self.source.M0, image_rows=rows,
                         check=False)
        return PairMorphism(self.target, self.source, g0)

    def __eq__(self, other):
        return (isinstance(other, PairMorphism) and self.f0 == other.f0
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.f0)

    def __repr__(self):
        return f"PairMorphism({self.source!r} -> {self.target!r})"


def identity_pair_morphism(pair):
    return PairMorphism(pair, pair, identity_morphism(pair.M0), check=False)


def zero_pair_morphism(source, target):
    return PairMorphism(source, target,
                        zero_morphism(source.M0, target.M0), check=False)


# ---------------------------------------------------------------------------
# Hom groups of pairs as canonical sublattices of the ambient Hom

class PairHom:
    """A subgroup of Hom((M₁⊆M₀),(N₁⊆N₀)) presented on the coefficient
    lattice of the ambient Hom group.

    The Howell rows are the canonical generating set inside
    ⊕_s Λ/t^{e_s}; the decomposition provides independent generators
    with their t-power orders, so the structure ⊕ Λ/t^{d_l} is explicit.
    """

    def __init__(self, source, target, coeff_rows):
        self.source = source
        self.target = target
        self.ambient = hom_group(source.M0, target.M0)
        ring = source.ring
        self.lattice_mods = tuple(self.ambient.orders)
        rows = [tuple(r) for r in coeff_rows]
        if len(rows) > 2 * max(1, len(self.lattice_mods)):
            # generating sets from products can be hugely redundant and the
            # witness-tracking pass scales with the row count, so compress
            # to the canonical rows first (same span, at most one per column)
            rows = list(howell_canonical(ring, rows, self.lattice_mods))
        self.dec = span_decomposition(ring, rows, self.lattice_mods)
        self.lattice_rows = tuple(self.dec.solver.h)
        self.orders = tuple(self.dec.orders)
        self.gens = [PairMorphism(source, target, self.ambient.element(row),
                                  check=False)
                     for row in self.dec.gens]

    def order(self):
        return self.dec.size

    def coeffs_of(self, f):
        return self.ambient.coeffs_of(f.f0 if isinstance(f, PairMorphism)
                                      else f)

    def contains(self, f):
        return self.dec.contains(self.coeffs_of(f))

    def coords(self, f):
        return self.dec.coords(self.coeffs_of(f))

    def element(self, coeffs):
        return PairMorphism(self.source, self.target,
                            self.ambient.element(self.dec.element(coeffs)),
                            check=False)

    def elements(self, limit=None):
        """Iterate the whole subgroup (coefficient products over the
        independent generators); guard big groups with limit."""
        ring = self.source.ring
        if limit is not None and self.order() > limit:
            raise MemoryError(f"subgroup of order {self.order()} > {limit}")
        pools = [list(ring.elements_mod_tpow(e)) for e in self.orders]
        def rec(idx, coeffs):
            if idx == len(pools):
                yield self.element(tuple(coeffs))
                return
            for c in pools[idx]:
                coeffs.append(c)
                yield from rec(idx + 1, coeffs)
                coeffs.pop()
        yield from rec(0, [])

    def same_subgroup(self, other):
        return (self.lattice_mods == other.lattice_mods
                and self.lattice_rows == other.lattice_rows)

    def random_element(self, rng):
        ring = self.source.ring
        coeffs = tuple(ring.random_element(rng, e) for e in self.orders)
        return self.element(coeffs)

    def __repr__(self):
        return f"PairHom(orders={self.orders})"


def _constraint_columns(target, sub):
    """Quotient data for N₀/sub used to express 'lands in sub' as a
    linear condition."""
    return quotient_invariants(target.M0, sub)


def _image_constraint_rows(ambient, elements, qd):
    """One lattice row per ambient generator: the concatenated quotient
    coordinates of gen_s applied to each element of `elements`."""
    ring = ambient.source.ring
    qparts = qd.module.parts
    proj_rows = qd.proj.rows       # image rows of the projection
    rows = []
    for (i, j), delta_gen in zip(ambient.index, ambient.gens):
        # gen_s sends x_j to t^δ y_i; on an element u it gives u_j t^δ y_i
        delta = ring.valuation(delta_gen.rows[j][i])
        row = []
        for u in elements:
            c = ring.times_tpow(u[j], delta)
            if ring.is_zero(c):
                row.extend([ring.zero] * len(qparts))
            else:
                row.extend(ring.reduce_tpow(ring.mul(c, e), a)
                           for e, a in zip(proj_rows[i], qparts))
        rows.append(tuple(row))
    mods = tuple(qparts) * len(elements)
    return rows, mods


def _kernel_subgroup(source, target, constraint_blocks):
    """Solve the homogeneous constraints over the coefficient lattice.

    constraint_blocks is a list of (rows, mods) blocks sharing the row
    index (one row per ambient generator); returns the PairHom of all
    coefficient tuples annihilating every block.
    """
    ring = source.ring
    ambient = hom_group(source.M0, target.M0)
    ngen = len(ambient.index)
    rows = [()] * ngen
    mods = ()
    for brows, bmods in constraint_blocks:
        rows = [r + tuple(br) for r, br in zip(rows, brows)]
        mods = mods + tuple(bmods)
    if not mods or ngen == 0:
        # no constraints: the full ambient group
        ident = [tuple(ring.one if a == b else ring.zero
                       for b in range(ngen)) for a in range(ngen)]
        return PairHom(source, target, ident)
    _, _, ker, _ = span_data(ring, rows, mods)
    return PairHom(source, target, ker)


def hom_pairs(source, target):
    """Hom of pairs: the subgroup of the ambient Hom cut out by
    f(M₁) ⊆ N₁."""
    if source.ring != target.ring:
        raise ParentMismatch("hom over different rings")
    ambient = hom_group(source.M0, target.M0)
    m1rows = list(source.M1.rows)
    blocks = []
    if m1rows:
        qd = _constraint_columns(target, target.M1)
        if qd.module.ngens:
            rows, mods = _image_constraint_rows(ambient, m1rows, qd)
            blocks.append((rows, mods))
    return _kernel_subgroup(source, target, blocks)


def hom_subgroup_from_morphisms(source, target, morphisms):
    ambient = hom_group(source.M0, target.M0)
    rows = [ambient.coeffs_of(f.f0 if isinstance(f, PairMorphism) else f)
            for f in morphisms]
    return PairHom(source, target, rows)


# ---------------------------------------------------------------------------
# the canonical interval pair I ⊆ J (any ring of length >= 7)

def _require_long(ring):
    if ring.n < 7:
        raise ValueError("the canonical pair needs ring length n >= 7")


@functools.lru_cache(maxsize=None)
def canonical_J(ring):
    """J = (J₁ ⊆ J₀): J₀ = (7,4,2) on generators x, y, z and
    J₁ = ⟨t³x − ty, ty − z⟩."""
    _require_long(ring)
    j0 = PartitionModule(ring, (7, 4, 2))
    x, y, z = j0.gens()
    g1 = x.times_tpow(3) - y.times_tpow(1)
    g2 = y.times_tpow(1) - z
    return SubPair(j0, submodule_from_generators(j0, [g1, g2]))


@functools.lru_cache(maxsize=None)
def canonical_I(ring):
    """I = (I₁ ⊆ I₀): I₀ = (6,4,2) on x' = tx, y' = y, z' = z and
    I₁ = tJ₁ = ⟨t³x' − t²y', t²y' − tz'⟩."""
    _require_long(ring)
    i0 = PartitionModule(ring, (6, 4, 2))
    xp, yp, zp = i0.gens()
    h1 = xp.times_tpow(3) - yp.times_tpow(2)
    h2 = yp.times_tpow(2) - zp.times_tpow(1)
    return SubPair(i0, submodule_from_generators(i0, [h1, h2]))


@functools.lru_cache(maxsize=None)
def canonical_inclusion(ring):
    """The inclusion I → J sending x' ↦ tx, y' ↦ y, z' ↦ z."""
    I, J = canonical_I(ring), canonical_J(ring)
    t, z0, o = ring.t, ring.zero, ring.one
    rows = [(t, z0, z0), (z0, o, z0), (z0, z0, o)]
    f0 = ModMorphism(I.M0, J.M0, image_rows=rows)
    return PairMorphism(I, J, f0)


# ---------------------------------------------------------------------------
# layer filtration

class LayerFiltration:
    """L₁ = t⁴M₀ ∩ t⁻¹0, L₂ = t³M₀ ∩ t⁻²0, L_i = t^{-(i-2)}L₂ for
    i ≥ 3; an ascending chain of submodules of M₀, depending on M₀
    only."""

    def __init__(self, m0):
        self.m0 = m0
        full = full_submodule(m0)
        self._cache = {
            1: full.t_image(4).intersect(s_socle(m0, 1)),
            2: full.t_image(3).intersect(s_socle(m0, 2)),
        }

    def L(self, i):
        if i < 1:
            raise ValueError("layers are indexed from 1")
        if i not in self._cache:
            self._cache[i] = self._cache[2].t_preimage(i - 2)
        return self._cache[i]


def layers(pair):
    return pair.layers()


# ---------------------------------------------------------------------------
# the I-socle and the control ideal

class ISocle:
    """The subobject (M₁ ∩ L₃M ⊆ L₆M) of a pair, presented abstractly,
    with a certified identification as I^r."""

    def __init__(self, pair, socle_pair, r, to_power, from_power, shape,
                 sub_m0, sub_m1):
        self.parent = pair
        self.pair = socle_pair
        self.r = r
        self.to_power = to_power        # socle_pair -> I^r
        self.from_power = from_power    # I^r -> socle_pair
        self.shape = shape              # decomposition of L6M in M0
        self.sub_m0 = sub_m0            # L6M as a submodule of M0
        self.sub_m1 = sub_m1            # M1 ∩ L3M

    def include(self):
        """The inclusion (socle pair) → parent pair."""
        return PairMorphism(self.pair, self.parent, self.shape.embed,
                            check=False)

    def factor_into(self, f):
        """For f: X → parent with image inside the socle, the unique
        f': X → socle pair with include ∘ f' = f."""
        rows = []
        for i in range(f.source.M0.ngens):
            img = f.f0.apply(f.source.M0.gen(i))
            rows.append(self.shape.coords(img).coords)
        g0 = ModMorphism(f.source.M0, self.pair.M0, image_rows=rows,
                         check=False)
        return PairMorphism(f.source, self.pair, g0, check=False)

    def lands_in_socle(self, f):
        """Does f: X → parent map M₀ into L₆ and M₁ into M₁ ∩ L₃?"""
        for r in f.f0.rows:
            if not self.sub_m0.contains(r):
                return False
        for u in f.source.M1.rows:
            img = f.f0.apply(f.source.M0.element(u))
            if not self.sub_m1.contains(img.coords):
                return False
        return True


def i_socle(pair, seed=0, budget=2000):
    """Compute (M₁ ∩ L₃M ⊆ L₆M) and certify it as a power of I.

    Raises DecompositionFailed when the subobject is not isomorphic to
    a power of I (the pair then lies outside the interval)."""
    ring = pair.ring
    lay = pair.layers()
    L6 = lay.L(6)
    soc1 = pair.M1.intersect(lay.L(3))
    shape = L6.as_module()
    parts = shape.module.parts
    if len(parts) % 3 != 0:
        raise DecompositionFailed(f"L6 shape {parts} is not a power of (6,4,2)")
    r = len(parts) // 3
    if parts != (6,) * r + (4,) * r + (2,) * r:
        raise DecompositionFailed(f"L6 shape {parts} is not a power of (6,4,2)")
    sub_rows = [shape.coords(g).coords for g in soc1.gens()]
    socle_pair = SubPair(shape.module,
                         submodule_from_rows(shape.module, sub_rows))
    power, _ = pair_power(canonical_I(ring), r)
    iso = pair_iso_witness(socle_pair, power, seed=seed, budget=budget)
    if not iso.found:
        raise DecompositionFailed(
            f"no isomorphism with I^{r} found"
            + (" (conclusive)" if iso.conclusive else ""))
    return ISocle(pair, socle_pair, r, iso.witness, iso.inverse, shape,
                  L6, soc1)


def hom_through_I(source, target):
    """The subgroup of morphisms factoring through a direct sum of
    copies of I: generated by the composites of the Hom-group
    generators through a single copy (additivity gives the rest)."""
    ring = source.ring
    I = canonical_I(ring)
    to_i = hom_pairs(source, I)
    from_i = hom_pairs(I, target)
    prods = []
    for h in to_i.gens:
        for g in from_i.gens:
            prods.append(g.compose(h))
    return hom_subgroup_from_morphisms(source, target, prods)


def hom_into_socle(source, target):
    """The subgroup {f : f(M₀) ⊆ L₆N and f(M₁) ⊆ N₁ ∩ L₃N} of
    hom_pairs(source, target).

    For targets whose I-socle is a power of I this equals the ideal of
    maps factoring through copies of I: such maps land in the socle
    because every morphism from I does, and a map into the socle
    factors through it, hence through I^r."""
    ring = source.ring
    ambient = hom_group(source.M0, target.M0)
    lay = target.layers()
    L6 = lay.L(6)
    soc1 = target.M1.intersect(lay.L(3))
    blocks = []
    # all of M0 must land in L6
    qd6 = _constraint_columns(target, L6)
    if qd6.module.ngens:
        gens0 = [g.coords for g in source.M0.gens()]
        blocks.append(_image_constraint_rows(ambient, gens0, qd6))
    # M1 must land in M1 ∩ L3
    qd3 = _constraint_columns(target, soc1)
    if qd3.module.ngens and source.M1.rows:
        blocks.append(_image_constraint_rows(ambient, list(source.M1.rows),
                                             qd3))
    # the pair condition f(M1) ⊆ N1 is implied: M1 ∩ L3 ⊆ N1
    return _kernel_subgroup(source, target, blocks)


# ---------------------------------------------------------------------------
# isomorphism witnesses for pairs

class IsoResult:
    __slots__ = ("found", "conclusive", "witness", "inverse", "reason")

    def __init__(self, found, conclusive, witness=None, inverse=None,
                 reason=""):
        self.found = found
        self.conclusive = conclusive
        self.witness = witness
        self.inverse = inverse
        self.reason = reason

    def __bool__(self):
        return self.found

    def __repr__(self):
        state = "found" if self.found else "not found"
        return f"IsoResult({state}, conclusive={self.conclusive}, {self.reason})"


def pair_iso_witness(a, b, seed=0, budget=4000, exhaustive_limit=4096):
    """Search for an isomorphism of pairs a → b.

    Invariant screens first; then either exhaustive enumeration of the
    Hom group (conclusive either way) or seeded random sampling
    (a miss is then inconclusive).  A morphism whose residue matrix is
    invertible is an isomorphism of pairs whenever |M₁| = |N₁|.
    """
    if a.M0.parts != b.M0.parts:
        return IsoResult(False, True, reason="ambient partitions differ")
    if a.M1.size() != b.M1.size():
        return IsoResult(False, True, reason="submodule orders differ")
    if a.M1.as_module().module.parts != b.M1.as_module().module.parts:
        return IsoResult(False, True, reason="submodule shapes differ")
    if a.M0.ngens == 0:
        w = zero_pair_morphism(a, b)
        return IsoResult(True, True, w, zero_pair_morphism(b, a),
                         reason="zero objects")
    H = hom_pairs(a, b)
    if H.order() <= exhaustive_limit:
        for f in H.elements():
            if f.is_invertible():
                return IsoResult(True, True, f, f.inverse(),
                                 reason="exhaustive search")
        return IsoResult(False, True, reason="exhaustive search empty")
    rng = random.Random(seed)
    for _ in range(budget):
        f = H.random_element(rng)
        if f.is_invertible():
            return IsoResult(True, True, f, f.inverse(),
                             reason="random search")
    return IsoResult(False, False, reason=f"no witness in {budget} samples")
