"""Row-span normal forms and exact linear solving over a chain ring.

The central object is the span of a set of rows inside ⊕_j Λ/t^{m_j}
(one modulus exponent m_j per column).  The Howell form is the canonical
generating set of such a span: pivots are powers of t, entries above a
pivot t^v are reduced mod t^v, and every span element with leading zeros
is generated by the later rows.  That last property (which Hermite-style
elimination does not give over rings with zero divisors) is obtained by
feeding the annihilator multiple t^{m_j - v} * row back into the
worklist whenever a pivot of valuation v is placed in column j.

Everything else is derived from the augmented form [A | I]:

  * witness rows  W  with  W * A = H        (row operations record)
  * kernel rows   K  with  K * A = 0        (complete, by the Howell
                                             property on the identity
                                             columns)
  * solving x * A = b by greedy reduction against H
  * canonical coset representatives modulo the span

Two interchangeable backends: a generic one working through the ring
interface, and a numpy int64 one for Z/p^n with p^n < 2^31.  They follow
the identical pivot strategy and are cross-checked in the tests.
"""

import numpy as np

from .chain_ring import INF
from .errors import NoSolution


# ---------------------------------------------------------------------------
# small row/matrix helpers (rows are tuples of ring elements)

def reduce_row(ring, row, mods):
    return tuple(ring.reduce_tpow(e, m) for e, m in zip(row, mods))


def row_is_zero(ring, row):
    return all(ring.is_zero(e) for e in row)


def row_add(ring, a, b, mods=None):
    if mods is None:
        return tuple(ring.add(x, y) for x, y in zip(a, b))
    return tuple(ring.reduce_tpow(ring.add(x, y), m)
                 for x, y, m in zip(a, b, mods))


def row_sub(ring, a, b, mods=None):
    return row_add(ring, a, tuple(ring.neg(y) for y in b), mods)


def row_scale(ring, c, a, mods=None):
    if mods is None:
        return tuple(ring.mul(c, x) for x in a)
    return tuple(ring.reduce_tpow(ring.mul(c, x), m)
                 for x, m in zip(a, mods))


def vec_dot(ring, a, b):
    s = ring.zero
    for x, y in zip(a, b):
        if not (ring.is_zero(x) or ring.is_zero(y)):
            s = ring.add(s, ring.mul(x, y))
    return s


def mat_mul_rows(ring, a_rows, b_rows, mods=None):
    """Product where both factors are given as lists of rows: (A*B)_ic."""
    if not b_rows:
        return [() for _ in a_rows]
    ncols = len(b_rows[0])
    out = []
    for arow in a_rows:
        acc = [ring.zero] * ncols
        for j, c in enumerate(arow):
            if not ring.is_zero(c):
                brow = b_rows[j]
                for k in range(ncols):
                    if not ring.is_zero(brow[k]):
                        acc[k] = ring.add(acc[k], ring.mul(c, brow[k]))
        if mods is not None:
            acc = [ring.reduce_tpow(e, m) for e, m in zip(acc, mods)]
        out.append(tuple(acc))
    return out


def identity_rows(ring, m):
    z, o = ring.zero, ring.one
    return [tuple(o if i == j else z for j in range(m)) for i in range(m)]


def transpose_rows(rows, ncols=None):
    if not rows:
        return [() for _ in range(ncols)] if ncols else []
    return [tuple(r[j] for r in rows) for j in range(len(rows[0]))]


class RingMatrix:
    """Immutable matrix with a per-column modulus exponent.

    Column j holds elements of Λ/t^{mod_exps[j]}; entries are kept
    reduced.  Equality is entrywise on the reduced representatives.
    """

    __slots__ = ("ring", "mod_exps", "rows")

    def __init__(self, ring, rows, mod_exps=None, ncols=None):
        self.ring = ring
        rows = [tuple(r) for r in rows]
        if mod_exps is None:
            if ncols is None:
                if not rows:
                    raise ValueError("cannot infer column count of an empty matrix")
                ncols = len(rows[0])
            mod_exps = (ring.n,) * ncols
        self.mod_exps = tuple(mod_exps)
        for r in rows:
            if len(r) != len(self.mod_exps):
                raise ValueError("row length does not match column count")
        self.rows = tuple(reduce_row(ring, r, self.mod_exps) for r in rows)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.mod_exps)

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and self.ring == other.ring
                and self.mod_exps == other.mod_exps and self.rows == other.rows)

    def __hash__(self):
        return hash((self.mod_exps, self.rows))

    def __repr__(self):
        return f"RingMatrix({self.nrows}x{self.ncols}, mods={self.mod_exps})"


# ---------------------------------------------------------------------------
# the core elimination, generic backend

def _core_py(ring, rows, mods):
    ncols = len(mods)
    work = []
    for r in rows:
        rr = [ring.reduce_tpow(e, m) for e, m in zip(r, mods)]
        if any(not ring.is_zero(e) for e in rr):
            work.append(rr)
    out, piv = [], []
    for j in range(ncols):
        best, bestv = -1, None
        for i, r in enumerate(work):
            v = ring.valuation(r[j])
            if v is not INF and (bestv is None or v < bestv):
                best, bestv = i, v
        if best < 0:
            continue
        prow = work.pop(best)
        u = ring.unit_inverse(ring.unit_part(prow[j]))
        prow = [ring.reduce_tpow(ring.mul(u, e), m)
                for e, m in zip(prow, mods)]
        for r in work:
            if not ring.is_zero(r[j]):
                q = ring.shift_down(r[j], bestv)
                for c in range(j, ncols):
                    if not ring.is_zero(prow[c]):
                        r[c] = ring.reduce_tpow(
                            ring.sub(r[c], ring.mul(q, prow[c])), mods[c])
        ann_e = mods[j] - bestv
        ann = [ring.reduce_tpow(ring.times_tpow(e, ann_e), m)
               for e, m in zip(prow, mods)]
        work = [r for r in work if any(not ring.is_zero(e) for e in r)]
        if any(not ring.is_zero(e) for e in ann):
            work.append(ann)
        out.append(prow)
        piv.append((j, bestv))
    # back-reduction: entries above a pivot t^v are cut down mod t^v;
    # pivot columns are swept left to right, since a pivot row's tail can
    # push unreduced values into later columns of the rows above it
    for idx in range(len(out)):
        j, v = piv[idx]
        prow = out[idx]
        for k in range(idx):
            q = ring.carry_quotient(out[k][j], v)
            if not ring.is_zero(q):
                row = out[k]
                for c in range(j, ncols):
                    if not ring.is_zero(prow[c]):
                        row[c] = ring.reduce_tpow(
                            ring.sub(row[c], ring.mul(q, prow[c])), mods[c])
    return [tuple(r) for r in out], piv


# ---------------------------------------------------------------------------
# numpy backend for Z/p^n, p^n < 2^31 (all products stay inside int64)

def _core_np(ring, rows, mods):
    p, ncols = ring.p, len(mods)
    modarr = np.array([p ** e for e in mods], dtype=np.int64)
    if rows:
        A = np.array([list(r) for r in rows], dtype=np.int64) % modarr
        A = A[np.any(A != 0, axis=1)]
    else:
        A = np.zeros((0, ncols), dtype=np.int64)
    out, piv = [], []
    for j in range(ncols):
        if not A.shape[0]:
            continue
        col = A[:, j]
        act = col != 0
        if not act.any():
            continue
        c = np.where(act, col, 1)
        v = np.zeros(A.shape[0], dtype=np.int64)
        while True:
            m2 = act & (c % p == 0)
            if not m2.any():
                break
            c = np.where(m2, c // p, c)
            v = np.where(m2, v + 1, v)
        vals = np.where(act, v, np.int64(1) << 40)
        bestv = int(vals.min())
        best = int(np.argmax(vals == bestv))
        prow = A[best].copy()
        A = np.delete(A, best, axis=0)
        pe = p ** bestv
        uinv = pow(int(prow[j]) // pe, -1, ring.pn)
        prow = (prow * uinv) % modarr
        if A.shape[0]:
            mask = A[:, j] != 0
            if mask.any():
                q = A[mask, j] // pe
                A[mask] = (A[mask] - q[:, None] * prow[None, :]) % modarr
            A = A[np.any(A != 0, axis=1)]
        ann = (prow * (p ** (mods[j] - bestv))) % modarr
        if (ann != 0).any():
            A = np.vstack([A, ann[None, :]]) if A.shape[0] else ann[None, :]
        out.append(prow)
        piv.append((j, bestv))
    R = np.array(out, dtype=np.int64) if out else np.zeros((0, ncols), dtype=np.int64)
    for idx in range(len(piv)):
        j, v = piv[idx]
        if idx:
            q = R[:idx, j] // (p ** v)
            mask = q != 0
            if mask.any():
                sub = R[:idx]
                sub[mask] = (sub[mask] - q[mask][:, None] * R[idx][None, :]) % modarr
    return [tuple(int(x) for x in row) for row in R], piv


def _use_np(ring):
    return ring.kind == "zmod" and ring.pn < 2 ** 31


def howell_core(ring, rows, mods, backend=None):
    """Howell form of the rows; returns (rows, pivots) with pivots a list
    of (column, valuation) aligned with the rows."""
    if backend == "py" or (backend is None and not _use_np(ring)):
        return _core_py(ring, rows, mods)
    return _core_np(ring, rows, mods)


def howell_canonical(ring, rows, mods, backend=None):
    h, _ = howell_core(ring, rows, mods, backend)
    return tuple(h)


# ---------------------------------------------------------------------------
# augmented form: witness, kernel, solving

def span_data(ring, rows, mods, backend=None):
    """Run the elimination on [A | I].

    Returns (h, w, k, piv): Howell rows of A, witness rows with
    w[i] * A = h[i], complete kernel rows, and the pivot list for h.
    """
    nr, nc = len(rows), len(mods)
    augmods = tuple(mods) + (ring.n,) * nr
    z, o = ring.zero, ring.one
    aug = []
    for i, r in enumerate(rows):
        aug.append(tuple(r) + tuple(o if i == j else z for j in range(nr)))
    full, piv = howell_core(ring, aug, augmods, backend)
    h, w, k, hpiv = [], [], [], []
    for row, (j, v) in zip(full, piv):
        if j < nc:
            h.append(row[:nc])
            w.append(row[nc:])
            hpiv.append((j, v))
        else:
            k.append(row[nc:])
    return h, w, k, hpiv


class SpanSolver:
    """Precomputed augmented Howell data for one generating set.

    Supports membership, solving x * A = b, canonical coset reduction,
    and exposes the kernel of x -> x * A.
    """

    def __init__(self, ring, rows, mods, backend=None):
        self.ring = ring
        self.mods = tuple(mods)
        self.gen_rows = [tuple(r) for r in rows]
        self.nrows = len(rows)
        self.h, self.w, self.kernel, self.piv = span_data(
            ring, self.gen_rows, self.mods, backend)

    def reduce_with_witness(self, b):
        """(residue, x) with b = residue + x * A and residue canonical."""
        ring = self.ring
        mods = self.mods
        r = [ring.reduce_tpow(e, m) for e, m in zip(b, mods)]
        x = [ring.zero] * self.nrows
        nc = len(mods)
        for (j, v), hrow, wrow in zip(self.piv, self.h, self.w):
            q = ring.carry_quotient(r[j], v)
            if not ring.is_zero(q):
                for c in range(j, nc):
                    if not ring.is_zero(hrow[c]):
                        r[c] = ring.reduce_tpow(
                            ring.sub(r[c], ring.mul(q, hrow[c])), mods[c])
                for i in range(self.nrows):
                    if not ring.is_zero(wrow[i]):
                        x[i] = ring.add(x[i], ring.mul(q, wrow[i]))
        return tuple(r), tuple(x)

    def reduce(self, b):
        return self.reduce_with_witness(b)[0]

    def contains(self, b):
        r, _ = self.reduce_with_witness(b)
        return row_is_zero(self.ring, r)

    def solve(self, b):
        """x with x * A = b (A the original generator rows), else NoSolution."""
        r, x = self.reduce_with_witness(b)
        if not row_is_zero(self.ring, r):
            raise NoSolution(f"vector not in the span (residue {r})")
        return x


def howell_form(a):
    """Howell form of a RingMatrix; returns (H, U) with U * A = H."""
    ring = a.ring
    h, w, _, _ = span_data(ring, list(a.rows), a.mod_exps)
    H = RingMatrix(ring, h, a.mod_exps, ncols=a.ncols)
    U = RingMatrix(ring, w, ncols=a.nrows) if a.nrows else RingMatrix(
        ring, [], (), ncols=0)
    return H, U


def solve_linear(ring, rows, b, moduli=None, nunknowns=None):
    """Solve the column-convention system A x ≡ b.

    rows are the equations; coordinate i is taken mod t^{moduli[i]}
    (default t^n).  Returns (x, kernel generators); the full solution
    set is x + span(kernel).  Raises NoSolution when b is outside the
    column span.
    """
    if moduli is None:
        moduli = (ring.n,) * len(rows)
    if nunknowns is None:
        if not rows:
            raise ValueError("need nunknowns when the system has no equations")
        nunknowns = len(rows[0])
    at = transpose_rows(rows, ncols=nunknowns) if rows else \
        [()] * nunknowns
    if rows:
        solver = SpanSolver(ring, at, moduli)
        x = solver.solve(tuple(b))
        return x, [tuple(r) for r in solver.kernel]
    # no equations: everything solves, kernel is the full space
    return (ring.zero,) * nunknowns, identity_rows(ring, nunknowns)


# ---------------------------------------------------------------------------
# diagonalization and abstract decompositions

def smith_diagonal(ring, rel_rows, ncols):
    """Diagonalize a relation matrix inside Λ^{ncols} by row and column
    operations; the quotient Λ^{ncols}/span(relations) is ⊕_l Λ/t^{e_l}.

    Pivot choice: the entry of minimal valuation in the unprocessed
    block (maximal gap to the ambient t^n), ties by lowest row then
    lowest column.  Returns (exps, proj_rows, lift_rows):

      exps       exponents e_l > 0, descending
      proj_rows  row j = coordinates of ambient e_j in the quotient
                 (entry l reduced mod t^{e_l})
      lift_rows  row l = a representative of quotient generator l
                 in Λ^{ncols}; proj(lift) = identity
    """
    n = ring.n
    R = [[ring.reduce_tpow(e, n) for e in r] for r in rel_rows]
    nr = len(R)
    Q = [list(r) for r in identity_rows(ring, ncols)]
    Qi = [list(r) for r in identity_rows(ring, ncols)]
    pivot_vals = []
    k = 0
    while k < min(nr, ncols):
        bv, bi, bc = None, -1, -1
        for i in range(k, nr):
            row = R[i]
            for c in range(k, ncols):
                v = ring.valuation(row[c])
                if v is not INF and (bv is None or v < bv):
                    bv, bi, bc = v, i, c
        if bv is None:
            break
        if bi != k:
            R[k], R[bi] = R[bi], R[k]
        if bc != k:
            for row in R:
                row[k], row[bc] = row[bc], row[k]
            for row in Q:
                row[k], row[bc] = row[bc], row[k]
            Qi[k], Qi[bc] = Qi[bc], Qi[k]
        u = ring.unit_inverse(ring.unit_part(R[k][k]))
        R[k] = [ring.mul(u, e) for e in R[k]]
        for i in range(k + 1, nr):
            if not ring.is_zero(R[i][k]):
                q = ring.shift_down(R[i][k], bv)
                R[i] = [ring.sub(a, ring.mul(q, b)) for a, b in zip(R[i], R[k])]
        for c in range(k + 1, ncols):
            if not ring.is_zero(R[k][c]):
                q = ring.shift_down(R[k][c], bv)
                R[k][c] = ring.zero
                for j in range(ncols):
                    if not ring.is_zero(Q[j][k]):
                        Q[j][c] = ring.sub(Q[j][c], ring.mul(q, Q[j][k]))
                Qi[k] = [ring.add(a, ring.mul(q, b))
                         for a, b in zip(Qi[k], Qi[c])]
        pivot_vals.append(bv)
        k += 1
    exps_all = pivot_vals + [n] * (ncols - k)
    order = sorted(range(ncols), key=lambda l: (-exps_all[l], l))
    keep = [l for l in order if exps_all[l] > 0]
    exps = [exps_all[l] for l in keep]
    proj = [tuple(ring.reduce_tpow(Q[j][l], exps_all[l]) for l in keep)
            for j in range(ncols)]
    lift = [tuple(Qi[l]) for l in keep]
    return exps, proj, lift


class SpanDecomposition:
    """A span U ⊆ ⊕ Λ/t^{m_j} as an abstract module ⊕ Λ/t^{s_l}.

    Carries independent generators (rows in the ambient module) of the
    stated t-power orders, plus a coordinate map that is inverse to
    taking combinations.
    """

    def __init__(self, ring, rows, mods, backend=None):
        self.ring = ring
        self.mods = tuple(mods)
        self.solver = SpanSolver(ring, rows, mods, backend)
        h = self.solver.h
        if not h:
            self.orders = []
            self.gens = []
            self._proj = []
            self._hsolver = None
            return
        _, _, syz, _ = span_data(ring, h, self.mods, backend)
        exps, proj, lift = smith_diagonal(ring, syz, len(h))
        self.orders = exps
        self.gens = [reduce_row(ring, vec, self.mods)
                     for vec in mat_mul_rows(ring, lift, h, self.mods)]
        self._proj = proj
        self._hsolver = SpanSolver(ring, h, self.mods, backend)

    @property
    def size(self):
        return self.ring.q ** sum(self.orders)

    def contains(self, vec):
        return self.solver.contains(vec)

    def coords(self, vec):
        """Coordinates of a span element on the independent generators,
        entry l reduced mod t^{orders[l]}."""
        if self._hsolver is None:
            if not row_is_zero(self.ring, vec):
                raise NoSolution("vector not in the zero span")
            return ()
        x = self._hsolver.solve(tuple(vec))
        ring = self.ring
        out = []
        for l, s in enumerate(self.orders):
            acc = ring.zero
            for j, xj in enumerate(x):
                if not ring.is_zero(xj):
                    acc = ring.add(acc, ring.mul(xj, self._proj[j][l]))
            out.append(ring.reduce_tpow(acc, s))
        return tuple(out)

    def element(self, coeffs):
        ring = self.ring
        acc = (ring.zero,) * len(self.mods)
        for c, g in zip(coeffs, self.gens):
            if not ring.is_zero(c):
                acc = row_add(ring, acc, row_scale(ring, c, g), self.mods)
        return acc


def span_decomposition(ring, rows, mods, backend=None):
    return SpanDecomposition(ring, rows, mods, backend)


# ---------------------------------------------------------------------------
# brute-force span enumeration, used as an oracle in the tests and by
# the CLI oracle mode

def span_elements(ring, rows, mods, limit=1 << 21):
    """The full span as a set of tuples, by additive closure over the
    field-scalar t-power multiples of the generators."""
    mods = tuple(mods)
    gens = set()
    for r in rows:
        for a in range(ring.n):
            shifted = tuple(ring.times_tpow(e, a) for e in r)
            for lam in ring.field.elements():
                if lam == 0:
                    continue
                g = reduce_row(
                    ring, tuple(ring.scale_residue(lam, e) for e in shifted),
                    mods)
                if any(not ring.is_zero(e) for e in g):
                    gens.add(g)
    zero = tuple(ring.zero for _ in mods)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                e = row_add(ring, s, g, mods)
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
                    if len(seen) > limit:
                        raise MemoryError("span enumeration exceeded limit")
        frontier = nxt
    return seen
