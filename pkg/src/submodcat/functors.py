"""The passage between pairs and quiver representations, and back.

A framed object is a pair that sits between the two canonical bounds:
it stores a rank m, subspaces V of k^m and U of k^{2m} over the residue
field, and an embedding of its ambient module onto the realized
submodule of the m-th power of the big bound.  `phi_object` builds the
framed pair belonging to a subspace triple; `f_object` goes the other
way, reading the representation off the layer subquotients

    vertex 1 = L1(M),   vertex 2 = M0/L6(M),   vertex 3 = M1/(M1 n L3(M))

with the arrow from vertex 2 given by multiplication by t^6, the first
arrow from vertex 3 by t^3, and the second by the connecting map
`gamma_prime`.  Composing the two constructions is the identity on
triples, on the nose; this is exercised heavily by the test suite.

`g_embed` realizes a pair of d x d matrices (X, Y) as a representation
with dimension vector (2d, d, 2d), and `end_quotient` computes the
residue-field algebra End(M)/End(M)_I, where the ideal consists of the
morphisms factoring through sums of copies of the small bound.  The
`commutant_oracle` gives an independent check: the endomorphisms of
(V; X, Y) as a module over the free algebra on two letters are exactly
the matrices commuting with both X and Y.
"""

import functools

from . import fields
from .delta_quiver import DeltaMorphism, DeltaRep, delta_hom, rep_to_triple
from .errors import (ConstraintViolated, DecompositionFailed,
                     InternalInconsistency, NoSolution, NotInInterval,
                     NotKAlgebra, PreconditionViolated, SummandObstruction)
from .howell import SpanSolver, mat_mul_rows, smith_diagonal
from .lambda_modules import (ModElement, ModMorphism, quotient_invariants,
                             s_socle, submodule_from_generators,
                             submodule_from_rows)
from .subpair_category import (SubPair, PairMorphism, canonical_I,
                               canonical_inclusion, canonical_J, hom_pairs,
                               hom_subgroup_from_morphisms, hom_through_I,
                               i_socle, identity_pair_morphism,
                               pair_iso_witness, pair_power)


@functools.lru_cache(maxsize=None)
def _frame_power(ring, m):
    """J^m together with the index maps of its copies: maps[c][l] is
    the position of letter l (x, y, z) of copy c inside the merged
    partition."""
    pair, maps = pair_power(canonical_J(ring), m)
    return pair, tuple(tuple(row) for row in maps)


class _FrameLetters:
    """The distinguished elements of J^m used by every frame: the
    copies of the three generators, and the two submodule generators

        g1 = t^3 x - t y      and      h2 = z - t y

    per copy.  The sign of the second one is chosen so that t^3 and the
    connecting map carry the submodule basis to the same basis of the
    socle layer; with the opposite sign the two would differ by -1,
    which matters away from characteristic two.
    """

    def __init__(self, ring, m):
        pair, maps = _frame_power(ring, m)
        self.pair = pair
        self.maps = maps
        self.m0 = pair.M0
        self.xs = [self.m0.gen(maps[c][0]) for c in range(m)]
        self.ys = [self.m0.gen(maps[c][1]) for c in range(m)]
        self.zs = [self.m0.gen(maps[c][2]) for c in range(m)]
        self.g1s = [self.xs[c].times_tpow(3) - self.ys[c].times_tpow(1)
                    for c in range(m)]
        self.h2s = [self.zs[c] - self.ys[c].times_tpow(1) for c in range(m)]

    def lift_v(self, row):
        """Sum of x-copies with entrywise lifted coefficients."""
        ring = self.m0.ring
        acc = self.m0.zero()
        for i, c in enumerate(row):
            if c:
                acc = acc + self.xs[i].scale(ring.lift(c))
        return acc

    def lift_u(self, row):
        """Sum of submodule generators with lifted coefficients; the
        first half of the row rides on g1, the second on h2."""
        ring = self.m0.ring
        m = len(self.xs)
        acc = self.m0.zero()
        for i in range(m):
            if row[i]:
                acc = acc + self.g1s[i].scale(ring.lift(row[i]))
            if row[m + i]:
                acc = acc + self.h2s[i].scale(ring.lift(row[m + i]))
        return acc


class _GammaSolvers:
    """Cached decomposition data for the connecting map on the fourth
    layer.  Both steps write an element as a sum across two fixed
    submodules and keep the second component; the solver makes the
    choice canonical."""

    def __init__(self, pair):
        m0 = pair.M0
        ring = m0.ring
        lay = pair.layers()
        self.pair = pair
        self.ring = ring
        self.m0 = m0
        self.L4 = lay.L(4)
        first1 = lay.L(5).t_image(2)
        second1 = s_socle(m0, 1)
        self.first1 = list(first1.rows)
        self.solver1 = SpanSolver(ring, self.first1 + list(second1.rows),
                                  m0.parts)
        first2 = pair.M1.intersect(lay.L(3))
        second2 = lay.L(6).t_image(3)
        self.first2 = list(first2.rows)
        self.solver2 = SpanSolver(ring, self.first2 + list(second2.rows),
                                  m0.parts)

    def _second_component(self, elt, first_rows, solver, stage):
        try:
            y = solver.solve(elt.coords)
        except NoSolution:
            raise InternalInconsistency(
                "connecting map, %s: the two submodules do not cover the "
                "element; the pair does not lie between the canonical bounds"
                % stage)
        if not first_rows:
            return elt
        u = mat_mul_rows(self.ring, [tuple(y[:len(first_rows)])],
                         first_rows, self.m0.parts)[0]
        return elt - ModElement(self.m0, u)

    def value(self, c):
        c1 = self._second_component(c.times_tpow(1), self.first1,
                                    self.solver1, "first step")
        c2 = self._second_component(c1, self.first2, self.solver2,
                                    "second step")
        return c2.times_tpow(2)


def gamma_prime(M, c):
    """The connecting map on the fourth layer of a pair.

    Writes t*c as a sum across t^2 L5(M) and the socle and keeps the
    socle part c'; writes c' as a sum across M1 n L3(M) and t^3 L6(M)
    and keeps the second part c''; returns t^2 c''.  The result does
    not depend on the choices made (each choice set is a coset), which
    the tests confirm by enumerating alternatives.  Its kernel is
    L3(M) + t L5(M), and it maps onto L1(M).
    """
    pair = M.pair if isinstance(M, FramedObject) else M
    if isinstance(M, FramedObject):
        data = M.gamma_solvers()
    else:
        data = _GammaSolvers(pair)
    if not isinstance(c, ModElement):
        c = pair.M0.element(c)
    if c.parent != pair.M0:
        raise PreconditionViolated("element from a different module")
    if not data.L4.contains(c):
        raise PreconditionViolated("element outside the fourth layer")
    return data.value(c)


# ---------------------------------------------------------------------------
# framed objects

class FramedObject:
    """A pair between the canonical bounds, together with its frame.

    The frame consists of the rank m, row bases v_rows of V in k^m and
    u_rows of U in k^{2m}, and the embedding of the pair's ambient
    module onto the realized submodule of J^m.  The frame fixes ordered
    bases of the three layer subquotients, which is what makes the
    representation matrices reproducible.
    """

    __slots__ = ("pair", "m", "v_rows", "u_rows", "embed", "letters",
                 "_w", "_wsolver", "_b2", "_v2inv", "_qd2", "_b3",
                 "_v3inv", "_qd3", "_m1shape", "_gamma", "_rep")

    def __init__(self, pair, m, v_rows, u_rows, embed):
        ring = pair.ring
        q = ring.q
        m = int(m)
        v_rows = tuple(tuple(int(x) for x in r) for r in v_rows)
        u_rows = tuple(tuple(int(x) for x in r) for r in u_rows)
        for r in v_rows:
            if len(r) != m or any(not 0 <= x < q for x in r):
                raise ValueError("v row not a vector over k^%d" % m)
        for r in u_rows:
            if len(r) != 2 * m or any(not 0 <= x < q for x in r):
                raise ValueError("u row not a vector over k^%d" % (2 * m))
        self.letters = _FrameLetters(ring, m)
        if embed.source != pair.M0 or embed.target != self.letters.m0:
            raise ValueError("embedding does not match the frame ambient")
        self.pair = pair
        self.m = m
        self.v_rows = v_rows
        self.u_rows = u_rows
        self.embed = embed
        self._w = None
        self._wsolver = None
        self._b2 = None
        self._v2inv = None
        self._qd2 = None
        self._b3 = None
        self._v3inv = None
        self._qd3 = None
        self._m1shape = None
        self._gamma = None
        self._rep = None

    @property
    def ring(self):
        return self.pair.ring

    def gamma_solvers(self):
        if self._gamma is None:
            self._gamma = _GammaSolvers(self.pair)
        return self._gamma

    def _pull(self, elt, what):
        try:
            return self.embed.solve_element(elt)
        except NoSolution:
            raise InternalInconsistency(
                "frame does not realize %s inside the pair" % what)

    def w_basis(self):
        """Preimages of the socle generators t^6 x_c, a basis of L1."""
        if self._w is None:
            self._w = tuple(self._pull(x.times_tpow(6), "the socle frame")
                            for x in self.letters.xs)
            rows = [w.coords for w in self._w]
            solver = SpanSolver(self.ring, rows, self.pair.M0.parts)
            for krow in solver.kernel:
                if any(self.ring.valuation(e) < 1 for e in krow):
                    raise InternalInconsistency("socle frame is degenerate")
            self._wsolver = solver
        return self._w

    def w_coords(self, elt):
        """Residue coordinates of an element of L1 in the frame basis."""
        self.w_basis()
        try:
            y = self._wsolver.solve(elt.coords)
        except NoSolution:
            raise InternalInconsistency(
                "element outside the socle frame span")
        return tuple(self.ring.residue(c) for c in y)

    def vertex2_reps(self):
        """Preimages of the lifted V rows; their classes modulo L6 are
        the chosen basis of the middle subquotient."""
        if self._b2 is None:
            self._b2 = tuple(self._pull(self.letters.lift_v(r), "a V row")
                             for r in self.v_rows)
        return self._b2

    def _vertex2_data(self):
        if self._v2inv is None:
            qd = quotient_invariants(self.pair.M0, self.pair.layers().L(6))
            if qd.module.parts != (1,) * len(self.v_rows):
                raise InternalInconsistency(
                    "middle subquotient has shape %r, expected %d simple "
                    "summands" % (qd.module.parts, len(self.v_rows)))
            ring = self.ring
            F = ring.field
            mat = [tuple(ring.residue(e) for e in qd.proj.apply(b).coords)
                   for b in self.vertex2_reps()]
            inv = fields.mat_inv(F, fields.transpose(mat, len(self.v_rows)))
            if len(self.v_rows) and inv is None:
                raise InternalInconsistency("V frame classes are dependent")
            self._qd2 = qd
            self._v2inv = inv if inv is not None else ()
        return self._qd2, self._v2inv

    def vertex2_coords(self, elt):
        qd, inv = self._vertex2_data()
        p = tuple(self.ring.residue(e) for e in qd.proj.apply(elt).coords)
        return fields.mat_vec(self.ring.field, inv, p)

    def m1_shape(self):
        if self._m1shape is None:
            self._m1shape = self.pair.M1.as_module()
        return self._m1shape

    def vertex3_reps(self):
        """Preimages of the lifted U rows, elements of the submodule."""
        if self._b3 is None:
            reps = tuple(self._pull(self.letters.lift_u(r), "a U row")
                         for r in self.u_rows)
            for b in reps:
                if not self.pair.M1.contains(b):
                    raise InternalInconsistency(
                        "a U row lands outside the submodule")
            self._b3 = reps
        return self._b3

    def _vertex3_data(self):
        if self._v3inv is None:
            sh = self.m1_shape()
            inner = sh.embed.preimage(self.pair.layers().L(3))
            qd = quotient_invariants(sh.module, inner)
            if qd.module.parts != (1,) * len(self.u_rows):
                raise InternalInconsistency(
                    "submodule subquotient has shape %r, expected %d simple "
                    "summands" % (qd.module.parts, len(self.u_rows)))
            ring = self.ring
            F = ring.field
            mat = [tuple(ring.residue(e)
                         for e in qd.proj.apply(sh.coords(b)).coords)
                   for b in self.vertex3_reps()]
            inv = fields.mat_inv(F, fields.transpose(mat, len(self.u_rows)))
            if len(self.u_rows) and inv is None:
                raise InternalInconsistency("U frame classes are dependent")
            self._qd3 = qd
            self._v3inv = inv if inv is not None else ()
        return self._qd3, self._v3inv

    def vertex3_coords(self, elt):
        qd, inv = self._vertex3_data()
        sh = self.m1_shape()
        p = tuple(self.ring.residue(e)
                  for e in qd.proj.apply(sh.coords(elt)).coords)
        return fields.mat_vec(self.ring.field, inv, p)

    def __repr__(self):
        return "FramedObject(m=%d, dim V=%d, dim U=%d)" % (
            self.m, len(self.v_rows), len(self.u_rows))


def framed_J(ring):
    """The big bound with its tautological frame."""
    J = canonical_J(ring)
    pair, _ = _frame_power(ring, 1)
    ident = ModMorphism(J.M0, pair.M0,
                        image_rows=[g.coords for g in pair.M0.gens()],
                        check=False)
    return FramedObject(J, 1, ((1,),), ((1, 0), (0, 1)), ident)


def framed_I(ring):
    """The small bound, framed by the canonical inclusion."""
    I = canonical_I(ring)
    incl = canonical_inclusion(ring)
    pair, _ = _frame_power(ring, 1)
    f0 = ModMorphism(I.M0, pair.M0, image_rows=incl.f0.rows, check=False)
    return FramedObject(I, 1, (), (), f0)


# ---------------------------------------------------------------------------
# the realization of a triple as a framed pair

def phi_object(ring, m, v_rows, u_rows):
    """The framed pair realizing a subspace triple (k^m, V, U).

    The ambient is the span, inside J^m, of the small bound's m-th
    power together with lifts of the V rows; the submodule adds lifts
    of the U rows to the small bound's submodule part.  The result is
    re-presented on its canonical partition, with the embedding stored
    in the frame.  Row bases are brought to reduced echelon form first,
    so equal subspaces give identical framed objects.
    """
    F = ring.field
    m = int(m)
    v = fields.row_space(F, [tuple(r) for r in v_rows])
    u = fields.row_space(F, [tuple(r) for r in u_rows])
    for r in v:
        if len(r) != m:
            raise ValueError("V rows must have length %d" % m)
    for r in u:
        if len(r) != 2 * m:
            raise ValueError("U rows must have length %d" % (2 * m))
    letters = _FrameLetters(ring, m)
    i0_gens = []
    i1_gens = []
    for c in range(m):
        i0_gens.extend([letters.xs[c].times_tpow(1), letters.ys[c],
                        letters.zs[c]])
        i1_gens.extend([letters.g1s[c].times_tpow(1),
                        letters.h2s[c].times_tpow(1)])
    s0 = submodule_from_generators(
        letters.m0, i0_gens + [letters.lift_v(r) for r in v])
    s1 = submodule_from_generators(
        letters.m0, i1_gens + [letters.lift_u(r) for r in u])
    if not s0.contains_submodule(s1):
        raise InternalInconsistency("realized submodule escapes the ambient")
    shape = s0.as_module()
    m1_rows = [shape.coords(r).coords for r in s1.rows]
    pair = SubPair(shape.module,
                   submodule_from_rows(shape.module, m1_rows))
    return FramedObject(pair, m, v, u, shape.embed)


def phi_morphism(source, target, g_rows):
    """The pair morphism lifting a field map of frames.

    g_rows is the matrix of g: k^m -> k^{m'} acting on columns (one row
    per target coordinate).  g must carry V into V' and its diagonal
    double must carry U into U'; otherwise ConstraintViolated.  The
    lift replaces each entry by its canonical representative in the
    ring, acts letterwise on J^m, and restricts.
    """
    ring = source.ring
    F = ring.field
    m, mp = source.m, target.m
    g_rows = tuple(tuple(int(x) for x in r) for r in g_rows)
    if len(g_rows) != mp or any(len(r) != m for r in g_rows):
        raise ValueError("frame matrix must be %d x %d" % (mp, m))
    tv = fields.row_space(F, target.v_rows)
    for r in source.v_rows:
        img = fields.mat_vec(F, g_rows, r)
        if not fields.in_row_space(F, tv, img):
            raise ConstraintViolated("the map does not carry V into V'")
    tu = fields.row_space(F, target.u_rows)
    for r in source.u_rows:
        img = (fields.mat_vec(F, g_rows, r[:m])
               + fields.mat_vec(F, g_rows, r[m:]))
        if not fields.in_row_space(F, tu, img):
            raise ConstraintViolated("the map does not carry U into U'")
    src_letters, tgt_letters = source.letters, target.letters
    nsrc = src_letters.m0.ngens
    ntgt = tgt_letters.m0.ngens
    z = ring.zero
    rows = [None] * nsrc
    for c in range(m):
        for letter in range(3):
            acc = [z] * ntgt
            for cp in range(mp):
                coeff = ring.lift(g_rows[cp][c])
                if not ring.is_zero(coeff):
                    pos = tgt_letters.maps[cp][letter]
                    acc[pos] = ring.add(acc[pos], coeff)
            rows[src_letters.maps[c][letter]] = tuple(acc)
    g_tilde = ModMorphism(src_letters.m0, tgt_letters.m0, image_rows=rows)
    f_rows = []
    for i in range(source.pair.M0.ngens):
        img = g_tilde.apply(source.embed.apply(source.pair.M0.gen(i)))
        try:
            f_rows.append(target.embed.solve_element(img).coords)
        except NoSolution:
            raise InternalInconsistency(
                "lifted map escapes the target realization")
    f0 = ModMorphism(source.pair.M0, target.pair.M0, image_rows=f_rows,
                     check=False)
    return PairMorphism(source.pair, target.pair, f0)


# ---------------------------------------------------------------------------
# the representation of a framed pair

def f_object(M):
    """The representation of a framed pair on its layer subquotients.

    Vertex 1 is L1(M) in the frame's socle basis, vertex 2 the quotient
    of the ambient by the sixth layer in the basis of V-row classes,
    vertex 3 the quotient of the submodule by its third-layer part in
    the basis of U-row classes.  The arrows are multiplication by t^6,
    by t^3, and the connecting map.
    """
    if M._rep is not None:
        return M._rep
    field = M.ring.field
    d1, d2, d3 = M.m, len(M.v_rows), len(M.u_rows)
    M._vertex2_data()
    M._vertex3_data()
    acols = [M.w_coords(b.times_tpow(6)) for b in M.vertex2_reps()]
    bcols = [M.w_coords(b.times_tpow(3)) for b in M.vertex3_reps()]
    gdata = M.gamma_solvers()
    gcols = [M.w_coords(gdata.value(b)) for b in M.vertex3_reps()]
    alpha = tuple(tuple(col[i] for col in acols) for i in range(d1))
    beta = tuple(tuple(col[i] for col in bcols) for i in range(d1))
    gamma = tuple(tuple(col[i] for col in gcols) for i in range(d1))
    M._rep = DeltaRep(field, (d1, d2, d3), alpha, beta, gamma)
    return M._rep


def f_morphism(f, source, target):
    """The morphism of representations induced on the subquotients.

    f must be a pair morphism from the pair of `source` to the pair of
    `target`; the three matrices are read off in the frame bases.  The
    commuting squares are re-checked on construction, so a failure here
    would expose an inconsistency rather than propagate one.
    """
    if f.source != source.pair or f.target != target.pair:
        raise ValueError("morphism endpoints do not match the frames")
    g1cols = [target.w_coords(f.f0.apply(w)) for w in source.w_basis()]
    g2cols = [target.vertex2_coords(f.f0.apply(b))
              for b in source.vertex2_reps()]
    g3cols = [target.vertex3_coords(f.f0.apply(b))
              for b in source.vertex3_reps()]
    t1, t2, t3 = target.m, len(target.v_rows), len(target.u_rows)
    g1 = tuple(tuple(col[i] for col in g1cols) for i in range(t1))
    g2 = tuple(tuple(col[i] for col in g2cols) for i in range(t2))
    g3 = tuple(tuple(col[i] for col in g3cols) for i in range(t3))
    return DeltaMorphism(f_object(source), f_object(target), g1, g2, g3)


def induced_hom_matrix(source, target):
    """The action of the subquotient construction on a whole Hom group.

    Returns (H, basis, rows): H is the Hom group of the two pairs,
    basis the morphism basis between the two representations, and
    rows[s] the coordinates of the image of the s-th generator of H in
    that basis.  The construction kills t H because the vertex spaces
    are annihilated by t, so these residue rows determine the induced
    map completely.
    """
    H = hom_pairs(source.pair, target.pair)
    ra, rb = f_object(source), f_object(target)
    basis = delta_hom(ra, rb)
    F = source.ring.field

    def flat(g):
        return tuple(x for mat in (g.g1, g.g2, g.g3) for row in mat
                     for x in row)

    bmat = fields.transpose([flat(b) for b in basis],
                            ncols=len(flat(basis[0])) if basis else 0)
    rows = []
    for g in H.gens:
        vec = flat(f_morphism(g, source, target))
        if not basis:
            if any(vec):
                raise InternalInconsistency(
                    "nonzero image in a zero morphism space")
            rows.append(())
            continue
        coords = fields.solve_field(F, bmat, vec)
        if coords is None:
            raise InternalInconsistency(
                "image outside the morphism space of the representations")
        rows.append(coords)
    return H, basis, rows


def f_kernel_subgroup(source, target):
    """The subgroup of pair morphisms whose induced representation
    morphism vanishes: generated by t times the Hom generators and the
    lifts of the residue nullspace of the induced matrix."""
    ring = source.ring
    F = ring.field
    H, basis, rows = induced_hom_matrix(source, target)
    gens = [g.scale(ring.t) for g in H.gens]
    eq_rows = fields.transpose(rows, ncols=len(basis)) if basis else ()
    null = fields.nullspace(F, list(eq_rows), len(H.gens))
    for lam in null:
        acc = None
        for c, g in zip(lam, H.gens):
            if not c:
                continue
            term = g.scale(ring.lift(c))
            acc = term if acc is None else acc.add(term)
        if acc is not None:
            gens.append(acc)
    return hom_subgroup_from_morphisms(source.pair, target.pair, gens)


# ---------------------------------------------------------------------------
# interval membership for bare pairs

def _intrinsic_rep(pair):
    """The representation of a bare pair on canonical bases, used to
    extract a candidate triple when no frame is given."""
    ring = pair.ring
    field = ring.field
    lay = pair.layers()
    L1, L3, L4, L6 = lay.L(1), lay.L(3), lay.L(4), lay.L(6)
    m0 = pair.M0
    if not L4.contains_submodule(pair.M1):
        raise NotInInterval("fourth-layer",
                            "the submodule is not inside L4")
    w = [ModElement(m0, r) for r in L1.rows]
    wsolver = SpanSolver(ring, [e.coords for e in w], m0.parts)
    qd2 = quotient_invariants(m0, L6)
    if any(p != 1 for p in qd2.module.parts):
        raise NotInInterval("sixth-layer",
                            "M0/L6 has shape %r" % (qd2.module.parts,))
    b2 = [ModElement(m0, r) for r in qd2.lift_rows]
    sh = pair.M1.as_module()
    inner = sh.embed.preimage(L3)
    qd3 = quotient_invariants(sh.module, inner)
    if any(p != 1 for p in qd3.module.parts):
        raise NotInInterval("third-layer",
                            "M1/(M1 n L3) has shape %r" % (qd3.module.parts,))
    b3 = [sh.embed.apply(ModElement(sh.module, r)) for r in qd3.lift_rows]
    gdata = _GammaSolvers(pair)

    def wc(elt):
        try:
            y = wsolver.solve(elt.coords)
        except NoSolution:
            raise NotInInterval("socle-layer",
                                "an arrow image escapes L1")
        return tuple(ring.residue(c) for c in y)

    try:
        acols = [wc(b.times_tpow(6)) for b in b2]
        bcols = [wc(b.times_tpow(3)) for b in b3]
        gcols = [wc(gdata.value(b)) for b in b3]
    except InternalInconsistency as e:
        raise NotInInterval("connecting-map", str(e))
    d1, d2, d3 = len(w), len(b2), len(b3)
    alpha = tuple(tuple(col[i] for col in acols) for i in range(d1))
    beta = tuple(tuple(col[i] for col in bcols) for i in range(d1))
    gamma = tuple(tuple(col[i] for col in gcols) for i in range(d1))
    return DeltaRep(field, (d1, d2, d3), alpha, beta, gamma)


def check_interval(pair, m, seed=0, budget=4000):
    """Verify that a bare pair lies between the canonical bounds with
    rank m, and return it framed.

    The certificate is an isomorphism with the realization of the
    intrinsically extracted triple; the frame embedding is the
    composite of that isomorphism with the realization's own frame.
    Raises NotInInterval with the failing stage.  A failed random
    search on a large pair is reported as stage "iso-search" and is a
    search failure, not a proof of exclusion.
    """
    ring = pair.ring
    m = int(m)
    if m == 0:
        if pair.M0.ngens:
            raise NotInInterval("rank", "nonzero pair with rank 0")
        frame0, _ = _frame_power(ring, 0)
        embed = ModMorphism(pair.M0, frame0.M0, image_rows=[], check=False)
        return FramedObject(pair, 0, (), (), embed)
    try:
        soc = i_socle(pair, seed=seed, budget=budget)
    except DecompositionFailed as e:
        raise NotInInterval("i-socle", str(e))
    if soc.r != m:
        raise NotInInterval("rank",
                            "socle rank %d, expected %d" % (soc.r, m))
    rep = _intrinsic_rep(pair)
    if rep.dims[0] != m:
        raise NotInInterval("socle-layer",
                            "L1 has rank %d, expected %d"
                            % (rep.dims[0], m))
    try:
        _, v, u = rep_to_triple(rep)
    except SummandObstruction as e:
        raise NotInInterval("triple-extraction", str(e))
    cand = phi_object(ring, m, v, u)
    iso = pair_iso_witness(pair, cand.pair, seed=seed, budget=budget)
    if not iso.found:
        stage = "iso-search" if not iso.conclusive else "not-isomorphic"
        raise NotInInterval(stage, iso.reason)
    embed = cand.embed.compose(iso.witness.f0)
    return FramedObject(pair, m, v, u, embed)


# ---------------------------------------------------------------------------
# the two-matrix embedding

class TwoMatrixModule:
    """A pair of square matrices (X, Y) acting on k^d."""

    __slots__ = ("field", "dim", "X", "Y")

    def __init__(self, field, dim, X, Y):
        d = int(dim)
        X = tuple(tuple(int(x) for x in r) for r in X)
        Y = tuple(tuple(int(x) for x in r) for r in Y)
        for mat, name in ((X, "X"), (Y, "Y")):
            if len(mat) != d or any(len(r) != d for r in mat):
                raise ValueError("%s must be %d x %d" % (name, d, d))
            for r in mat:
                if any(not 0 <= x < field.q for x in r):
                    raise ValueError("%s entry out of field range" % name)
        self.field = field
        self.dim = d
        self.X = X
        self.Y = Y

    def __eq__(self, other):
        return (isinstance(other, TwoMatrixModule)
                and self.field == other.field and self.dim == other.dim
                and self.X == other.X and self.Y == other.Y)

    def __hash__(self):
        return hash((self.dim, self.X, self.Y))

    def __repr__(self):
        return "TwoMatrixModule(d=%d over F%d)" % (self.dim, self.field.q)

    def to_json(self):
        return {"dim": self.dim, "X": [list(r) for r in self.X],
                "Y": [list(r) for r in self.Y]}


def two_matrix_from_json(field, obj):
    return TwoMatrixModule(field, obj["dim"], obj["X"], obj["Y"])


def g_embed(V):
    """The representation of a two-matrix module: dimension vector
    (2d, d, 2d), the first arrow the inclusion of the first summand,
    the second the identity, the third the block matrix with X in the
    upper right, the identity in the lower left and Y in the lower
    right."""
    F = V.field
    d = V.dim
    alpha = tuple(tuple(1 if i == j else 0 for j in range(d))
                  for i in range(d)) + fields.zero_matrix(d, d)
    beta = fields.identity_matrix(2 * d)
    gamma = (tuple((0,) * d + V.X[i] for i in range(d))
             + tuple(tuple(1 if i == j else 0 for j in range(d)) + V.Y[i]
                     for i in range(d)))
    return DeltaRep(F, (2 * d, d, 2 * d), alpha, beta, gamma)


def g_triple(V):
    """The triple form of the embedding: W = k^d + k^d, V the first
    summand, and U spanned by (v1, 0, 0, v1) and (0, v2, X v2, Y v2).
    Both bases are already reduced."""
    d = V.dim

    def e(i, n):
        return tuple(1 if j == i else 0 for j in range(n))

    v_rows = tuple(e(i, 2 * d) for i in range(d))
    u_rows = tuple(e(i, d) + (0,) * d + (0,) * d + e(i, d)
                   for i in range(d))
    u_rows += tuple(
        (0,) * d + e(j, d)
        + tuple(V.X[i][j] for i in range(d))
        + tuple(V.Y[i][j] for i in range(d))
        for j in range(d))
    return 2 * d, v_rows, u_rows


def g_framed(ring, V):
    """The framed pair realizing a two-matrix module."""
    m, v_rows, u_rows = g_triple(V)
    return phi_object(ring, m, v_rows, u_rows)


def commutant_oracle(V, W):
    """Basis of the intertwiners between two two-matrix modules: the
    matrices f with f X = X' f and f Y = Y' f, by field linear
    algebra.  This is an independent route to the morphisms that the
    embedding produces."""
    if V.field != W.field:
        raise ValueError("intertwiners over different fields")
    F = V.field
    d, dp = V.dim, W.dim
    nunk = dp * d
    eqs = []
    for src, tgt in ((V.X, W.X), (V.Y, W.Y)):
        for i in range(dp):
            for j in range(d):
                row = [0] * nunk
                for l in range(d):
                    if src[l][j]:
                        row[i * d + l] = F.add(row[i * d + l], src[l][j])
                for mjdx in range(dp):
                    if tgt[i][mjdx]:
                        row[mjdx * d + j] = F.sub(row[mjdx * d + j],
                                                  tgt[i][mjdx])
                eqs.append(tuple(row))
    sols = fields.nullspace(F, eqs, nunk)
    return tuple(tuple(tuple(v[i * d:(i + 1) * d]) for i in range(dp))
                 for v in sols)


# ---------------------------------------------------------------------------
# algebras by structure constants

class KAlgebra:
    """A finite dimensional unital associative algebra over a finite
    field, given by structure constants on a basis.  Dimension zero,
    the algebra in which 1 = 0, is allowed.  Associativity and the
    unit axioms are verified at construction."""

    __slots__ = ("field", "dim", "labels", "structure", "unit")

    def __init__(self, field, structure, unit, labels=None, check=True):
        structure = tuple(tuple(tuple(int(x) for x in cell) for cell in row)
                          for row in structure)
        d = len(structure)
        unit = tuple(int(x) for x in unit)
        if any(len(row) != d for row in structure) or \
                any(len(cell) != d for row in structure for cell in row):
            raise ValueError("structure constants must be d x d x d")
        if len(unit) != d:
            raise ValueError("unit must have d coordinates")
        if labels is None:
            labels = tuple("e%d" % i for i in range(d))
        self.field = field
        self.dim = d
        self.labels = tuple(labels)
        self.structure = structure
        self.unit = unit
        if check:
            self._validate()

    def multiply(self, a, b):
        F = self.field
        out = [0] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = F.mul(ai, bj)
                for l, s in enumerate(self.structure[i][j]):
                    if s:
                        out[l] = F.add(out[l], F.mul(c, s))
        return tuple(out)

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def _validate(self):
        d = self.dim
        for i in range(d):
            ei = self.basis_vector(i)
            if self.multiply(self.unit, ei) != ei or \
                    self.multiply(ei, self.unit) != ei:
                raise ValueError("unit axiom fails on basis element %d" % i)
            for j in range(d):
                ej = self.basis_vector(j)
                left = self.multiply(ei, ej)
                for l in range(d):
                    el = self.basis_vector(l)
                    if self.multiply(left, el) != \
                            self.multiply(ei, self.multiply(ej, el)):
                        raise ValueError(
                            "associativity fails at (%d, %d, %d)" % (i, j, l))

    def is_commutative(self):
        return all(self.structure[i][j] == self.structure[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def to_json(self):
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "structure": [[list(cell) for cell in row]
                          for row in self.structure],
            "unit": list(self.unit),
        }

    def __repr__(self):
        return "KAlgebra(dim=%d over F%d)" % (self.dim, self.field.q)


def commutant_algebra(V):
    """The endomorphism algebra of a two-matrix module, with structure
    constants on the oracle basis."""
    F = V.field
    basis = commutant_oracle(V, V)
    d = len(basis)
    if d == 0:
        return KAlgebra(F, (), (), check=True)
    n = V.dim

    def flat(mat):
        return tuple(x for row in mat for x in row)

    bmat = fields.transpose([flat(b) for b in basis], ncols=n * n)

    def coords(mat):
        c = fields.solve_field(F, bmat, flat(mat))
        if c is None:
            raise InternalInconsistency("product escapes the commutant")
        return c

    structure = tuple(
        tuple(coords(fields.matmul(F, a, b)) for b in basis) for a in basis)
    unit = coords(fields.identity_matrix(n))
    return KAlgebra(F, structure, unit)


# ---------------------------------------------------------------------------
# the endomorphism quotient

class EndQuotientData:
    """End(M), the ideal of maps through the small bound, and the
    quotient algebra with a chosen basis of coset representatives."""

    __slots__ = ("end", "ideal", "algebra", "basis", "_proj_rows", "_framed")

    def __init__(self, framed, end, ideal, algebra, basis, proj_rows):
        self._framed = framed
        self.end = end
        self.ideal = ideal
        self.algebra = algebra
        self.basis = basis
        self._proj_rows = proj_rows

    def coords(self, f):
        """Quotient coordinates of an endomorphism of the pair."""
        ring = self.end.source.ring
        if not self.algebra.dim:
            return ()
        cf = self.end.coords(f)
        row = mat_mul_rows(ring, [tuple(cf)], list(self._proj_rows),
                           (1,) * self.algebra.dim)[0]
        return tuple(ring.residue(e) for e in row)


def end_quotient_data(M):
    """Compute End(M)/End(M)_I with its certificates.

    The ideal's coordinates inside End(M) are divided out by a
    diagonalization; every invariant factor of the quotient must be a
    single power of t, or NotKAlgebra is raised, since a quotient with
    a t-divisible part carries no residue-field structure.  The chosen
    coset representatives, their structure constants under composition,
    and the class of the identity make up the algebra.
    """
    pair = M.pair
    ring = pair.ring
    F = ring.field
    end = hom_pairs(pair, pair)
    ideal = hom_through_I(pair, pair)
    ngen = len(end.orders)
    rels = []
    for i, o in enumerate(end.orders):
        row = [ring.zero] * ngen
        row[i] = ring.tpow(o)
        rels.append(tuple(row))
    for g in ideal.gens:
        try:
            rels.append(tuple(end.coords(g)))
        except NoSolution:
            raise InternalInconsistency(
                "ideal element outside the endomorphism group")
    exps, proj_rows, lift_rows = smith_diagonal(ring, rels, ngen)
    if any(e > 1 for e in exps):
        raise NotKAlgebra(
            "quotient has invariant factors %r; t does not annihilate it"
            % (exps,))
    dim = len(exps)
    basis = [end.element(tuple(r)) for r in lift_rows]
    qmods = (1,) * dim

    def coords(f):
        if not dim:
            return ()
        cf = end.coords(f)
        row = mat_mul_rows(ring, [tuple(cf)], list(proj_rows), qmods)[0]
        return tuple(ring.residue(e) for e in row)

    structure = tuple(
        tuple(coords(a.compose(b)) for b in basis) for a in basis)
    unit = coords(identity_pair_morphism(pair))
    algebra = KAlgebra(F, structure, unit)
    return EndQuotientData(M, end, ideal, algebra, basis, proj_rows)


def end_quotient(M):
    """The endomorphism algebra of a framed pair modulo the maps that
    factor through sums of copies of the small bound."""
    return end_quotient_data(M).algebra
