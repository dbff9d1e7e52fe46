"""Small finite fields and dense linear algebra over them.

Fields are F_q with q prime, or q in {4, 8, 9} via a fixed irreducible
polynomial (table driven).  Elements are plain ints 0..q-1; for prime powers
the int encodes the coefficient vector in base p, lowest degree first.

Matrices are tuples of row tuples.  A matrix A of shape (r, c) represents the
map sending a column vector x of length c to A*x; rows of a "row basis" are
vectors of the row space.  Everything here is meant for small dimensions.
"""

from itertools import product

# monic irreducible polynomials, coefficients lowest degree first
_IRREDUCIBLE = {
    4: (1, 1, 1),        # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),     # x^3 + x + 1 over F_2
    9: (1, 0, 1),        # x^2 + 1 over F_3
}

_FIELD_CACHE = {}


def _factor_prime_power(q):
    for p in (2, 3, 5, 7):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m == 1:
                return p, e
            return None
    # q itself prime?
    if q > 1 and all(q % d for d in range(2, int(q ** 0.5) + 1)):
        return q, 1
    return None


class Field:
    """The finite field with q elements, q a prime power with q <= 9 allowed
    for non-prime q.  Prime q of any size uses modular arithmetic."""

    def __init__(self, q):
        fac = _factor_prime_power(q)
        if fac is None:
            raise ValueError(f"{q} is not a prime power")
        p, e = fac
        if e > 1 and q not in _IRREDUCIBLE:
            raise ValueError(f"non-prime field order {q} not supported (need q <= 9)")
        self.q = q
        self.p = p
        self.deg = e
        if e > 1:
            self._build_tables()

    def _coeffs(self, a):
        p = self.p
        return [(a // p ** i) % p for i in range(self.deg)]

    def _from_coeffs(self, cs):
        p = self.p
        return sum(c * p ** i for i, c in enumerate(cs))

    def _build_tables(self):
        p, e, q = self.p, self.deg, self.q
        mod = _IRREDUCIBLE[q]
        self._add = [[0] * q for _ in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        self._neg = [0] * q
        for a in range(q):
            ca = self._coeffs(a)
            self._neg[a] = self._from_coeffs([(-x) % p for x in ca])
            for b in range(q):
                cb = self._coeffs(b)
                self._add[a][b] = self._from_coeffs(
                    [(x + y) % p for x, y in zip(ca, cb)])
                # polynomial product reduced mod the irreducible
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(ca):
                    for j, y in enumerate(cb):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for k in range(len(prod) - 1, e - 1, -1):
                    c = prod[k]
                    if c:
                        prod[k] = 0
                        for i in range(e):
                            prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
                self._mul[a][b] = self._from_coeffs(prod[:e])
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def add(self, a, b):
        if self.deg == 1:
            return (a + b) % self.q
        return self._add[a][b]

    def neg(self, a):
        if self.deg == 1:
            return (-a) % self.q
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.deg == 1:
            return (a * b) % self.q
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.deg == 1:
            return pow(a, -1, self.q)
        return self._inv[a]

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(("Field", self.q))

    def __repr__(self):
        return f"Field({self.q})"


def field(q):
    """Cached field constructor."""
    f = _FIELD_CACHE.get(q)
    if f is None:
        f = _FIELD_CACHE[q] = Field(q)
    return f


# ---------------------------------------------------------------------------
# dense linear algebra


def mat_shape(rows):
    return (len(rows), len(rows[0]) if rows else 0)


def matmul(F, A, B):
    """Matrix product A*B over F."""
    if A and B:
        assert len(A[0]) == len(B), "shape mismatch"
    cols = len(B[0]) if B else 0
    out = []
    for arow in A:
        row = []
        for j in range(cols):
            s = 0
            for k, a in enumerate(arow):
                if a:
                    s = F.add(s, F.mul(a, B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F, A, v):
    out = []
    for arow in A:
        s = 0
        for a, x in zip(arow, v):
            if a and x:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return tuple(out)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(r, c):
    return tuple((0,) * c for _ in range(r))


def transpose(rows, ncols=None):
    if not rows:
        return tuple(() for _ in range(ncols)) if ncols else ()
    return tuple(tuple(r[i] for r in rows) for i in range(len(rows[0])))


def rref(F, rows):
    """Reduced row echelon form.  Returns (rows without zero rows, pivot cols)."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    rank = 0
    for j in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][j]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = F.inv(work[rank][j])
        work[rank] = [F.mul(inv, x) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][j]:
                c = work[i][j]
                work[i] = [F.sub(x, F.mul(c, y))
                           for x, y in zip(work[i], work[rank])]
        pivots.append(j)
        rank += 1
    return tuple(tuple(r) for r in work[:rank]), tuple(pivots)


def rank(F, rows):
    return len(rref(F, rows)[0])


def row_space(F, rows):
    """Canonical (RREF) row basis; identifies a subspace uniquely."""
    return rref(F, rows)[0]


def in_row_space(F, basis, vec, pivots=None):
    """Membership against an RREF basis."""
    v = list(vec)
    if pivots is None:
        pivots = [next(i for i, x in enumerate(row) if x) for row in basis]
    for row, j in zip(basis, pivots):
        c = v[j]
        if c:
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
    return not any(v)


def row_space_coords(F, basis, vec, pivots=None):
    """Coordinates of vec in an RREF basis, or None if outside."""
    v = list(vec)
    if pivots is None:
        pivots = [next(i for i, x in enumerate(row) if x) for row in basis]
    coords = []
    for row, j in zip(basis, pivots):
        c = v[j]
        coords.append(c)
        if c:
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
    if any(v):
        return None
    return tuple(coords)


def nullspace(F, eq_rows, nunknowns):
    """Basis of {x : A.x = 0} for A given as equation rows of length nunknowns."""
    basis, pivots = rref(F, eq_rows) if eq_rows else ((), ())
    free = [j for j in range(nunknowns) if j not in pivots]
    out = []
    for j in free:
        v = [0] * nunknowns
        v[j] = 1
        for row, pj in zip(basis, pivots):
            v[pj] = F.neg(row[j])
        out.append(tuple(v))
    return tuple(out)


def solve_field(F, A, b):
    """One solution x of A.x = b (column convention), or None."""
    aug = [tuple(row) + (bi,) for row, bi in zip(A, b)]
    basis, pivots = rref(F, aug)
    n = len(A[0]) if A else 0
    x = [0] * n
    for row, j in zip(basis, pivots):
        if j == n:
            return None
        x[j] = row[n]
    return tuple(x)


def mat_inv(F, A):
    n = len(A)
    aug = [tuple(A[i]) + tuple(1 if j == i else 0 for j in range(n))
           for i in range(n)]
    basis, pivots = rref(F, aug)
    if list(pivots) != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in basis)


def is_invertible(F, A):
    r, c = mat_shape(A)
    return r == c and rank(F, A) == r


def iter_subspaces(F, n, max_count=None):
    """Yield all subspaces of F^n as canonical RREF row tuples, ordered by
    dimension, then pivot columns, then free entries.  Each subspace appears
    exactly once.  `max_count` truncates the stream deterministically."""
    from itertools import combinations
    count = 0
    for r in range(n + 1):
        for pivots in combinations(range(n), r):
            free_positions = []
            for i, pj in enumerate(pivots):
                for j in range(pj + 1, n):
                    if j not in pivots:
                        free_positions.append((i, j))
            for values in product(F.elements(), repeat=len(free_positions)):
                rows = [[0] * n for _ in range(r)]
                for i, pj in enumerate(pivots):
                    rows[i][pj] = 1
                for (i, j), v in zip(free_positions, values):
                    rows[i][j] = v
                yield tuple(tuple(row) for row in rows)
                count += 1
                if max_count is not None and count >= max_count:
                    return
