"""Commutative local uniserial coefficient rings.

Two families, one interface:

  * ``zmod``      Z/p^n, radical generator t = p, elements canonical ints
                  in [0, p^n)
  * ``truncpoly`` F_q[T]/T^n, radical generator t = T, elements tuples of n
                  field elements, lowest degree first

Every nonzero element is unit * t^v for a unique valuation v in [0, n); the
valuation of 0 is +infinity.  Elements are plain hashable values (int or
tuple); all arithmetic goes through the ring object.
"""

import math

from .errors import ParentMismatch
from .fields import field as make_field

INF = math.inf


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ChainRing:
    """A chain ring Z/p^n or F_q[T]/T^n of length n."""

    def __init__(self, kind, base, n):
        if n < 1:
            raise ValueError("length n must be >= 1")
        self.kind = kind
        self.n = n
        if kind == "zmod":
            if not _is_prime(base):
                raise ValueError(f"p = {base} is not prime")
            self.p = base
            self.pn = base ** n
            self.field = make_field(base)
            self._powers = [base ** i for i in range(n + 1)]
        elif kind == "truncpoly":
            self.field = make_field(base)  # validates prime power
            if base > 9:
                raise ValueError("truncated polynomial rings need q <= 9")
            self.p = self.field.p
            self.q_base = base
        else:
            raise ValueError(f"unknown ring kind {kind!r}")

    # residue field size
    @property
    def q(self):
        return self.field.q

    @property
    def zero(self):
        if self.kind == "zmod":
            return 0
        return (0,) * self.n

    @property
    def one(self):
        if self.kind == "zmod":
            return 1
        return (1,) + (0,) * (self.n - 1)

    @property
    def t(self):
        return self.tpow(1)

    def tpow(self, s):
        """t^s, the zero element once s >= n."""
        if s >= self.n:
            return self.zero
        if self.kind == "zmod":
            return self._powers[s]
        return (0,) * s + (1,) + (0,) * (self.n - 1 - s)

    def is_zero(self, a):
        if self.kind == "zmod":
            return a == 0
        return not any(a)

    def add(self, a, b):
        if self.kind == "zmod":
            return (a + b) % self.pn
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == "zmod":
            return (-a) % self.pn
        F = self.field
        return tuple(F.neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "zmod":
            return (a * b) % self.pn
        F = self.field
        n = self.n
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    y = b[j]
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def valuation(self, a):
        """Largest v with t^v dividing a; +inf for a = 0."""
        if self.kind == "zmod":
            if a == 0:
                return INF
            v = 0
            p = self.p
            while a % p == 0:
                a //= p
                v += 1
            return v
        for i, c in enumerate(a):
            if c:
                return i
        return INF

    def unit_part(self, a):
        """The unit u with a = u * t^val(a); undefined for 0."""
        v = self.valuation(a)
        if v is INF:
            raise ZeroDivisionError("zero has no unit part")
        return self.shift_down(a, v)

    def shift_down(self, a, s):
        """Exact division by t^s; requires val(a) >= s."""
        if s == 0:
            return a
        if self.kind == "zmod":
            return a // self._powers[s]
        return a[s:] + (0,) * s

    def times_tpow(self, a, s):
        if s == 0:
            return a
        if self.kind == "zmod":
            return (a * self._powers[s]) % self.pn if s < self.n else 0
        if s >= self.n:
            return self.zero
        return (0,) * s + a[: self.n - s]

    def reduce_tpow(self, a, e):
        """Canonical representative of a modulo t^e (e <= n)."""
        if e >= self.n:
            return a
        if self.kind == "zmod":
            return a % self._powers[e]
        return a[:e] + (0,) * (self.n - e)

    def unit_inverse(self, a):
        """Inverse of a unit."""
        if self.kind == "zmod":
            return pow(a, -1, self.pn)
        F = self.field
        n = self.n
        inv0 = F.inv(a[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                if a[i] and out[k - i]:
                    s = F.add(s, F.mul(a[i], out[k - i]))
            out[k] = F.neg(F.mul(inv0, s))
        return tuple(out)

    def divide(self, a, b):
        """Some c with c*b = a; requires val(a) >= val(b), b != 0."""
        vb = self.valuation(b)
        if vb is INF:
            raise ZeroDivisionError("division by zero")
        va = self.valuation(a)
        if va is INF:
            return self.zero
        if va < vb:
            raise ValueError("valuation too small for exact division")
        return self.mul(self.shift_down(a, vb), self.unit_inverse(self.unit_part(b)))

    def carry_quotient(self, a, e):
        """The c with a = (a mod t^e) + c * t^e, canonically."""
        rem = self.reduce_tpow(a, e)
        return self.shift_down(self.sub(a, rem), e)

    def residue(self, a):
        """Image in the residue field k = Lambda/t, as a field int."""
        if self.kind == "zmod":
            return a % self.p
        return a[0]

    def lift(self, c):
        """Canonical lift of a residue field element: least residue for zmod,
        constant polynomial for truncpoly."""
        if self.kind == "zmod":
            return c % self.pn
        return (c,) + (0,) * (self.n - 1)

    def scale_residue(self, c, a):
        """lift(c) * a, the k-action used on t-annihilated quotients."""
        return self.mul(self.lift(c), a)

    def elements_mod_tpow(self, e):
        """All canonical representatives modulo t^e (q^e of them)."""
        e = min(e, self.n)
        if self.kind == "zmod":
            return range(self._powers[e])
        from itertools import product
        tail = (0,) * (self.n - e)
        return (tuple(cs) + tail
                for cs in product(self.field.elements(), repeat=e))

    def elements(self):
        return self.elements_mod_tpow(self.n)

    def size(self):
        return self.q ** self.n

    def random_element(self, rng, max_exp=None):
        e = self.n if max_exp is None else min(max_exp, self.n)
        if self.kind == "zmod":
            return rng.randrange(self._powers[e])
        cs = [rng.randrange(self.q) for _ in range(e)]
        return tuple(cs) + (0,) * (self.n - e)

    # -- serialization -----------------------------------------------------

    def descriptor(self):
        if self.kind == "zmod":
            return {"kind": "zmod", "p": self.p, "n": self.n}
        return {"kind": "truncpoly", "q": self.q, "n": self.n}

    def element_to_json(self, a):
        if self.kind == "zmod":
            return a
        out = list(a)
        while out and out[-1] == 0:
            out.pop()
        return out

    def element_from_json(self, obj):
        if self.kind == "zmod":
            if not isinstance(obj, int):
                raise ValueError(f"expected integer element, got {obj!r}")
            return obj % self.pn
        if isinstance(obj, int):
            # allow a bare field constant
            obj = [obj]
        if not isinstance(obj, (list, tuple)) or len(obj) > self.n:
            raise ValueError(f"bad coefficient array {obj!r}")
        cs = [int(c) % self.q for c in obj]
        return tuple(cs) + (0,) * (self.n - len(cs))

    def __eq__(self, other):
        return (isinstance(other, ChainRing)
                and other.descriptor() == self.descriptor())

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))

    def __repr__(self):
        if self.kind == "zmod":
            return f"ChainRing(Z/{self.p}^{self.n})"
        return f"ChainRing(F{self.q}[T]/T^{self.n})"


def zmod(p, n):
    return ChainRing("zmod", p, n)


def truncpoly(q, n):
    return ChainRing("truncpoly", q, n)


def ring_from_descriptor(desc):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError("ring descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    if kind == "zmod":
        return zmod(int(desc["p"]), int(desc["n"]))
    if kind == "truncpoly":
        return truncpoly(int(desc["q"]), int(desc["n"]))
    raise ValueError(f"unknown ring kind {kind!r}")


def valuation(ring, a):
    """Module level convenience mirroring ring.valuation."""
    return ring.valuation(a)


def same_ring(a, b):
    if a != b:
        raise ParentMismatch(f"ring mismatch: {a!r} vs {b!r}")
    return a
