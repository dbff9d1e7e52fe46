"""Representations of the three vertex quiver with sink 1 and sources 2, 3.

The quiver has three arrows, all ending at vertex 1: alpha starts at
vertex 2, beta and gamma both start at vertex 3.  A representation is a
triple of finite dimensional spaces over a finite field together with a
matrix for each arrow.  Everything here is plain linear algebra over the
field layer; no chain ring arithmetic enters.

Matrices act on column vectors, so the matrix of a map V -> W has
dim W rows and dim V columns.  A matrix with zero rows is stored as the
empty tuple, one with zero columns as a tuple of empty tuples; the
helpers in `fields` treat both correctly.

A representation with injective alpha and jointly injective (beta,
gamma) is the same thing as a triple (W, V, U) with V a subspace of W
and U a subspace of W + W; `triple_to_rep` and `rep_to_triple` convert
between the two presentations.
"""

import itertools
import random

from . import fields
from .errors import ConstraintViolated, ParentMismatch, SummandObstruction


def _as_matrix(rows, nrows, ncols, what):
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError("%s must be %d x %d" % (what, nrows, ncols))
    return rows


def _prod(F, A, B, nrows, ninner, ncols):
    # like fields.matmul, but with the shape passed in, so products with
    # an empty inner dimension still come out with the right number of
    # columns
    out = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            s = 0
            for k in range(ninner):
                a = A[i][k]
                if a and B[k][j]:
                    s = F.add(s, F.mul(a, B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


class DeltaRep:
    """A representation: dims = (d1, d2, d3) and the three arrow matrices.

    alpha is d1 x d2 (the arrow from vertex 2), beta and gamma are
    d1 x d3 (the two arrows from vertex 3).  Entries are field elements
    in integer encoding.
    """

    __slots__ = ("field", "dims", "alpha", "beta", "gamma")

    def __init__(self, field, dims, alpha, beta, gamma):
        d1, d2, d3 = (int(d) for d in dims)
        if min(d1, d2, d3) < 0:
            raise ValueError("negative dimension")
        self.field = field
        self.dims = (d1, d2, d3)
        self.alpha = _as_matrix(alpha, d1, d2, "alpha")
        self.beta = _as_matrix(beta, d1, d3, "beta")
        self.gamma = _as_matrix(gamma, d1, d3, "gamma")

    def __eq__(self, other):
        return (isinstance(other, DeltaRep)
                and self.field == other.field
                and self.dims == other.dims
                and self.alpha == other.alpha
                and self.beta == other.beta
                and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.dims, self.alpha, self.beta, self.gamma))

    def __repr__(self):
        return "DeltaRep(dims=%r over F%d)" % (self.dims, self.field.q)

    def total_dim(self):
        return sum(self.dims)

    def to_json(self):
        return {
            "dims": list(self.dims),
            "alpha": [list(r) for r in self.alpha],
            "beta": [list(r) for r in self.beta],
            "gamma": [list(r) for r in self.gamma],
        }


def rep_from_json(field, obj):
    dims = obj["dims"]
    if len(dims) != 3:
        raise ValueError("dims must have three entries")
    for key in ("alpha", "beta", "gamma"):
        for row in obj[key]:
            for x in row:
                if not isinstance(x, int) or not 0 <= x < field.q:
                    raise ValueError("matrix entry %r out of field range" % (x,))
    return DeltaRep(field, dims, obj["alpha"], obj["beta"], obj["gamma"])


def zero_rep(field):
    return DeltaRep(field, (0, 0, 0), (), (), ())


def simple_rep(field, vertex):
    """The one dimensional representation concentrated at one vertex."""
    if vertex == 1:
        return DeltaRep(field, (1, 0, 0), ((),), ((),), ((),))
    if vertex == 2:
        return DeltaRep(field, (0, 1, 0), (), (), ())
    if vertex == 3:
        return DeltaRep(field, (0, 0, 1), (), (), ())
    raise ValueError("vertex must be 1, 2 or 3")


def direct_sum(a, b):
    if a.field != b.field:
        raise ParentMismatch("direct sum over different fields")

    def block(ma, mb, rows_a, rows_b, cols_a, cols_b):
        out = []
        for r in range(rows_a):
            out.append(tuple(ma[r]) + (0,) * cols_b)
        for r in range(rows_b):
            out.append((0,) * cols_a + tuple(mb[r]))
        return tuple(out)

    a1, a2, a3 = a.dims
    b1, b2, b3 = b.dims
    return DeltaRep(
        a.field, (a1 + b1, a2 + b2, a3 + b3),
        block(a.alpha, b.alpha, a1, b1, a2, b2),
        block(a.beta, b.beta, a1, b1, a3, b3),
        block(a.gamma, b.gamma, a1, b1, a3, b3))


class DeltaMorphism:
    """A morphism of representations: matrices g1, g2, g3, one per vertex.

    gi maps the source space at vertex i to the target space, and the
    three squares commute: g1*alpha = alpha'*g2, g1*beta = beta'*g3,
    g1*gamma = gamma'*g3.
    """

    __slots__ = ("source", "target", "g1", "g2", "g3")

    def __init__(self, source, target, g1, g2, g3, check=True):
        if source.field != target.field:
            raise ParentMismatch("morphism between different fields")
        self.source = source
        self.target = target
        s1, s2, s3 = source.dims
        t1, t2, t3 = target.dims
        self.g1 = _as_matrix(g1, t1, s1, "g1")
        self.g2 = _as_matrix(g2, t2, s2, "g2")
        self.g3 = _as_matrix(g3, t3, s3, "g3")
        if check:
            F = source.field
            if _prod(F, self.g1, source.alpha, t1, s1, s2) != \
                    _prod(F, target.alpha, self.g2, t1, t2, s2):
                raise ConstraintViolated("square for alpha does not commute")
            if _prod(F, self.g1, source.beta, t1, s1, s3) != \
                    _prod(F, target.beta, self.g3, t1, t3, s3):
                raise ConstraintViolated("square for beta does not commute")
            if _prod(F, self.g1, source.gamma, t1, s1, s3) != \
                    _prod(F, target.gamma, self.g3, t1, t3, s3):
                raise ConstraintViolated("square for gamma does not commute")

    def matrices(self):
        return (self.g1, self.g2, self.g3)

    def apply(self, vertex, vec):
        g = (self.g1, self.g2, self.g3)[vertex - 1]
        return fields.mat_vec(self.source.field, g, vec)

    def compose(self, first):
        """self after first."""
        if first.target is not self.source and first.target != self.source:
            raise ParentMismatch("composition target/source mismatch")
        F = self.source.field
        f1, f2, f3 = first.source.dims
        m1, m2, m3 = self.source.dims
        t1, t2, t3 = self.target.dims
        return DeltaMorphism(
            first.source, self.target,
            _prod(F, self.g1, first.g1, t1, m1, f1),
            _prod(F, self.g2, first.g2, t2, m2, f2),
            _prod(F, self.g3, first.g3, t3, m3, f3),
            check=False)

    def add(self, other):
        if self.source != other.source or self.target != other.target:
            raise ParentMismatch("sum of morphisms with different ends")
        F = self.source.field
        return DeltaMorphism(
            self.source, self.target,
            tuple(tuple(F.add(x, y) for x, y in zip(r, s))
                  for r, s in zip(self.g1, other.g1)),
            tuple(tuple(F.add(x, y) for x, y in zip(r, s))
                  for r, s in zip(self.g2, other.g2)),
            tuple(tuple(F.add(x, y) for x, y in zip(r, s))
                  for r, s in zip(self.g3, other.g3)),
            check=False)

    def scale(self, c):
        F = self.source.field
        return DeltaMorphism(
            self.source, self.target,
            tuple(tuple(F.mul(c, x) for x in r) for r in self.g1),
            tuple(tuple(F.mul(c, x) for x in r) for r in self.g2),
            tuple(tuple(F.mul(c, x) for x in r) for r in self.g3),
            check=False)

    def is_zero(self):
        return all(not any(r) for g in (self.g1, self.g2, self.g3) for r in g)

    def is_invertible(self):
        F = self.source.field
        return (self.source.dims == self.target.dims
                and fields.is_invertible(F, self.g1)
                and fields.is_invertible(F, self.g2)
                and fields.is_invertible(F, self.g3))

    def inverse(self):
        F = self.source.field
        inv = [fields.mat_inv(F, g) for g in (self.g1, self.g2, self.g3)]
        if any(g is None for g in inv):
            raise ValueError("morphism is not invertible")
        # the inverse matrices satisfy the commuting squares automatically
        return DeltaMorphism(self.target, self.source, *inv, check=False)

    def __eq__(self, other):
        return (isinstance(other, DeltaMorphism)
                and self.source == other.source
                and self.target == other.target
                and self.g1 == other.g1
                and self.g2 == other.g2
                and self.g3 == other.g3)

    def __hash__(self):
        return hash((self.g1, self.g2, self.g3))


def identity_delta(rep):
    return DeltaMorphism(rep, rep,
                         fields.identity_matrix(rep.dims[0]),
                         fields.identity_matrix(rep.dims[1]),
                         fields.identity_matrix(rep.dims[2]),
                         check=False)


def zero_delta(source, target):
    return DeltaMorphism(source, target,
                         fields.zero_matrix(target.dims[0], source.dims[0]),
                         fields.zero_matrix(target.dims[1], source.dims[1]),
                         fields.zero_matrix(target.dims[2], source.dims[2]),
                         check=False)


def _unpack_morphism(source, target, vec):
    s1, s2, s3 = source.dims
    t1, t2, t3 = target.dims
    n1, n2 = t1 * s1, t2 * s2
    g1 = tuple(tuple(vec[i * s1:(i + 1) * s1]) for i in range(t1))
    g2 = tuple(tuple(vec[n1 + i * s2:n1 + (i + 1) * s2]) for i in range(t2))
    off = n1 + n2
    g3 = tuple(tuple(vec[off + i * s3:off + (i + 1) * s3]) for i in range(t3))
    return DeltaMorphism(source, target, g1, g2, g3, check=False)


def delta_hom(source, target):
    """A basis of the space of morphisms source -> target.

    Unknowns are the entries of g1, g2, g3 in that order, row major; the
    commuting squares give one linear equation per entry of each product
    matrix.  Returns a tuple of DeltaMorphism.
    """
    if source.field != target.field:
        raise ParentMismatch("hom between different fields")
    F = source.field
    s1, s2, s3 = source.dims
    t1, t2, t3 = target.dims
    n1, n2, n3 = t1 * s1, t2 * s2, t3 * s3
    nunk = n1 + n2 + n3

    def g1_index(i, l):
        return i * s1 + l

    def g2_index(i, l):
        return n1 + i * s2 + l

    def g3_index(i, l):
        return n1 + n2 + i * s3 + l

    eqs = []
    # g1*alpha = alpha'*g2, entry (i, j) with i < t1, j < s2
    for i in range(t1):
        for j in range(s2):
            row = [0] * nunk
            for l in range(s1):
                a = source.alpha[l][j]
                if a:
                    row[g1_index(i, l)] = F.add(row[g1_index(i, l)], a)
            for m in range(t2):
                a = target.alpha[i][m]
                if a:
                    row[g2_index(m, j)] = F.sub(row[g2_index(m, j)], a)
            eqs.append(tuple(row))
    # g1*beta = beta'*g3 and g1*gamma = gamma'*g3
    for src_mat, tgt_mat in ((source.beta, target.beta),
                             (source.gamma, target.gamma)):
        for i in range(t1):
            for j in range(s3):
                row = [0] * nunk
                for l in range(s1):
                    a = src_mat[l][j]
                    if a:
                        row[g1_index(i, l)] = F.add(row[g1_index(i, l)], a)
                for m in range(t3):
                    a = tgt_mat[i][m]
                    if a:
                        row[g3_index(m, j)] = F.sub(row[g3_index(m, j)], a)
                eqs.append(tuple(row))

    basis = fields.nullspace(F, eqs, nunk)
    return tuple(_unpack_morphism(source, target, v) for v in basis)


def hom_through_simple_projective(source, target):
    """Basis of the morphisms that factor through a sum of copies of the
    simple at the sink.

    Such a morphism is zero at vertices 2 and 3, and its g1 kills the
    sum of the images of all three arrows of the source.  Conversely any
    g1 with that kernel condition factors through coker at the sink,
    which is a sum of simples.
    """
    if source.field != target.field:
        raise ParentMismatch("hom between different fields")
    F = source.field
    s1 = source.dims[0]
    t1 = target.dims[0]
    # columns of alpha, beta, gamma as rows, each of length s1
    image_rows = (fields.transpose(source.alpha, ncols=s1)
                  + fields.transpose(source.beta, ncols=s1)
                  + fields.transpose(source.gamma, ncols=s1))
    # a row kappa of g1 must pair to zero with every image row, so the
    # image rows themselves are the equations on kappa
    left_kernel = fields.nullspace(F, list(image_rows), s1) if s1 else ()
    out = []
    for kappa in left_kernel:
        for i in range(t1):
            g1 = tuple(kappa if r == i else (0,) * s1 for r in range(t1))
            out.append(DeltaMorphism(
                source, target, g1,
                fields.zero_matrix(target.dims[1], source.dims[1]),
                fields.zero_matrix(target.dims[2], source.dims[2]),
                check=False))
    return tuple(out)


class SummandProfile:
    """Multiplicities (s1, s2, s3) of the three simples as direct summands."""

    __slots__ = ("s1", "s2", "s3")

    def __init__(self, s1, s2, s3):
        self.s1 = s1
        self.s2 = s2
        self.s3 = s3

    @property
    def is_socle_projective(self):
        return self.s2 == 0 and self.s3 == 0

    @property
    def is_mod_e(self):
        return self.s1 == 0 and self.s2 == 0 and self.s3 == 0

    def as_tuple(self):
        return (self.s1, self.s2, self.s3)

    def __eq__(self, other):
        return (isinstance(other, SummandProfile)
                and self.as_tuple() == other.as_tuple())

    def __repr__(self):
        return "SummandProfile(s1=%d, s2=%d, s3=%d)" % self.as_tuple()


def simple_summand_profile(rep):
    """Simple direct summand multiplicities, read off from the arrow maps.

    The simple at vertex 2 splits off along ker alpha, the one at vertex
    3 along the joint kernel of beta and gamma, and the simple at the
    sink along any complement of im alpha + im beta + im gamma.
    """
    F = rep.field
    d1, d2, d3 = rep.dims
    s2 = d2 - fields.rank(F, rep.alpha) if d2 else 0
    stacked = rep.beta + rep.gamma
    s3 = d3 - fields.rank(F, stacked) if d3 else 0
    image_rows = (fields.transpose(rep.alpha, ncols=d1)
                  + fields.transpose(rep.beta, ncols=d1)
                  + fields.transpose(rep.gamma, ncols=d1))
    s1 = d1 - fields.rank(F, image_rows)
    return SummandProfile(s1, s2, s3)


def triple_to_rep(field, m, v_rows, u_rows):
    """The representation of a subspace triple (W, V in W, U in W + W).

    W is the space of column vectors of length m; v_rows and u_rows are
    row bases of V and U (they are brought to reduced echelon form, so
    the matrices produced are canonical).  The arrow from vertex 2 is
    the inclusion of V, and the two arrows from vertex 3 are the two
    coordinate projections of W + W restricted to U.
    """
    m = int(m)
    for r in v_rows:
        if len(r) != m:
            raise ValueError("v row has length %d, expected %d" % (len(r), m))
    for r in u_rows:
        if len(r) != 2 * m:
            raise ValueError("u row has length %d, expected %d"
                             % (len(r), 2 * m))
    v = fields.row_space(field, v_rows)
    u = fields.row_space(field, u_rows)
    alpha = fields.transpose(v, ncols=m)
    beta = tuple(tuple(r[i] for r in u) for i in range(m))
    gamma = tuple(tuple(r[m + i] for r in u) for i in range(m))
    return DeltaRep(field, (m, len(v), len(u)), alpha, beta, gamma)


def rep_to_triple(rep):
    """Partial inverse of triple_to_rep.

    Succeeds exactly when neither source vertex contributes a simple
    direct summand, in other words when alpha is injective and beta,
    gamma are jointly injective.  Returns (m, v_rows, u_rows) with both
    bases in reduced echelon form.
    """
    profile = simple_summand_profile(rep)
    if profile.s2:
        raise SummandObstruction(2, profile.s2)
    if profile.s3:
        raise SummandObstruction(3, profile.s3)
    F = rep.field
    m = rep.dims[0]
    v_rows = fields.row_space(F, fields.transpose(rep.alpha, ncols=m))
    paired = tuple(
        tuple(rep.beta[i][j] for i in range(m))
        + tuple(rep.gamma[i][j] for i in range(m))
        for j in range(rep.dims[2]))
    u_rows = fields.row_space(F, paired)
    return (m, v_rows, u_rows)


class IsoResult:
    """Outcome of an isomorphism search; truthy exactly when found."""

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
        return "IsoResult(found=%r, conclusive=%r, reason=%r)" % (
            self.found, self.conclusive, self.reason)


def iso_witness(a, b, seed=0, budget=4000, exhaustive_limit=6561):
    """Search for an invertible morphism a -> b.

    Different dimension vectors rule an isomorphism out at once.  When
    the coefficient space over the hom basis is small the search is
    exhaustive and a miss is conclusive; otherwise random coefficient
    vectors are tried with a deterministic seed and a miss only means
    none was found.
    """
    if a.field != b.field:
        raise ParentMismatch("iso witness between different fields")
    if a.dims != b.dims:
        return IsoResult(False, True, reason="dimension vectors differ")
    if a.total_dim() == 0:
        w = zero_delta(a, b)
        return IsoResult(True, True, witness=w, inverse=zero_delta(b, a))
    basis = delta_hom(a, b)
    if not basis:
        return IsoResult(False, True, reason="hom space is zero")
    F = a.field
    q = F.q
    h = len(basis)

    def assemble(coeffs):
        cur = None
        for c, g in zip(coeffs, basis):
            if not c:
                continue
            term = g if c == 1 else g.scale(c)
            cur = term if cur is None else cur.add(term)
        return cur

    def certify(w):
        return IsoResult(True, True, witness=w, inverse=w.inverse())

    if q ** h <= exhaustive_limit:
        for coeffs in itertools.product(range(q), repeat=h):
            w = assemble(coeffs)
            if w is not None and w.is_invertible():
                return certify(w)
        return IsoResult(False, True,
                         reason="no invertible element in the hom space")
    rng = random.Random(seed)
    for _ in range(budget):
        w = assemble(tuple(rng.randrange(q) for _ in range(h)))
        if w is not None and w.is_invertible():
            return certify(w)
    return IsoResult(False, False, reason="random search budget exhausted")
