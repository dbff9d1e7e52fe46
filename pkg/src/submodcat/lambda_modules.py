"""Finite Λ-modules given by partitions, and their calculus.

A partition (λ₁ ≥ … ≥ λ_m) with parts in [1, n] stands for the module
⊕ᵢ Λ/t^{λᵢ} with generators x₁, …, x_m and relations t^{λᵢ}xᵢ = 0.
Elements are coordinate rows (coordinate i reduced mod t^{λᵢ});
submodules are kept in Howell canonical form, so equality of submodules
is equality of matrices.  Morphisms are stored by their generator
images, which makes application a row-times-matrix product.
"""

from .errors import ConstraintViolated, NoSolution, ParentMismatch
from .howell import (SpanSolver, howell_core, identity_rows, mat_mul_rows,
                     reduce_row, row_add, row_is_zero, row_scale,
                     smith_diagonal, span_data, span_decomposition)


class PartitionModule:
    """The module ⊕ᵢ Λ/t^{λᵢ} for a descending partition λ."""

    def __init__(self, ring, parts):
        parts = tuple(int(a) for a in parts)
        if any(a < 1 or a > ring.n for a in parts):
            raise ValueError(f"partition parts must lie in [1, {ring.n}]")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition must be descending")
        self.ring = ring
        self.parts = parts
        self.ngens = len(parts)

    def zero(self):
        return ModElement(self, (self.ring.zero,) * self.ngens)

    def element(self, coords):
        return ModElement(self, coords)

    def gen(self, i):
        z, o = self.ring.zero, self.ring.one
        return ModElement(self, tuple(o if j == i else z
                                      for j in range(self.ngens)))

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def size(self):
        return self.ring.q ** sum(self.parts)

    def random_element(self, rng):
        return ModElement(self, tuple(self.ring.random_element(rng, a)
                                      for a in self.parts))

    def element_from_json(self, obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != self.ngens:
            raise ValueError(f"element needs {self.ngens} coordinates")
        return ModElement(self, tuple(self.ring.element_from_json(c)
                                      for c in obj))

    def __eq__(self, other):
        return (isinstance(other, PartitionModule)
                and self.ring == other.ring and self.parts == other.parts)

    def __hash__(self):
        return hash((self.ring, self.parts))

    def __repr__(self):
        return f"PartitionModule({self.parts})"


def _same_parent(a, b):
    if a.parent != b.parent:
        raise ParentMismatch(f"{a.parent!r} vs {b.parent!r}")


class ModElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        self.parent = parent
        ring = parent.ring
        if len(coords) != parent.ngens:
            raise ValueError("coordinate count does not match the partition")
        self.coords = reduce_row(ring, tuple(coords), parent.parts)

    def __add__(self, other):
        _same_parent(self, other)
        return ModElement(self.parent,
                          row_add(self.parent.ring, self.coords, other.coords,
                                  self.parent.parts))

    def __neg__(self):
        ring = self.parent.ring
        return ModElement(self.parent, tuple(ring.neg(c) for c in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ModElement(self.parent,
                          row_scale(self.parent.ring, c, self.coords,
                                    self.parent.parts))

    def times_tpow(self, s):
        ring = self.parent.ring
        return ModElement(self.parent,
                          reduce_row(ring,
                                     tuple(ring.times_tpow(c, s)
                                           for c in self.coords),
                                     self.parent.parts))

    def is_zero(self):
        return row_is_zero(self.parent.ring, self.coords)

    def __eq__(self, other):
        return (isinstance(other, ModElement) and self.parent == other.parent
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"ModElement{self.coords}"


class Submodule:
    """A submodule in Howell canonical form; syntactic equality."""

    def __init__(self, parent, canonical_rows, pivots, solver=None):
        self.parent = parent
        self.rows = tuple(tuple(r) for r in canonical_rows)
        self.pivots = tuple(pivots)
        self._solver = solver
        self._decomp = None

    @property
    def solver(self):
        if self._solver is None:
            self._solver = SpanSolver(self.parent.ring, list(self.rows),
                                      self.parent.parts)
        return self._solver

    def ngens(self):
        return len(self.rows)

    def gens(self):
        return [ModElement(self.parent, r) for r in self.rows]

    def size(self):
        q = self.parent.ring.q
        parts = self.parent.parts
        return q ** sum(parts[j] - v for j, v in self.pivots)

    def contains(self, elt):
        if isinstance(elt, ModElement):
            _same_parent(elt, _as_probe(self))
            elt = elt.coords
        return self.solver.contains(elt)

    def contains_submodule(self, other):
        return all(self.solver.contains(r) for r in other.rows)

    def reduce_coset(self, elt):
        """Canonical representative of elt + self."""
        coords = elt.coords if isinstance(elt, ModElement) else tuple(elt)
        return ModElement(self.parent, self.solver.reduce(coords))

    def sum(self, other):
        _check_siblings(self, other)
        return submodule_from_rows(self.parent, self.rows + other.rows)

    def intersect(self, other):
        _check_siblings(self, other)
        if not self.rows or not other.rows:
            return zero_submodule(self.parent)
        ring = self.parent.ring
        stacked = list(self.rows) + list(other.rows)
        _, _, ker, _ = span_data(ring, stacked, self.parent.parts)
        nu = len(self.rows)
        rows = [mat_mul_rows(ring, [k[:nu]], list(self.rows),
                             self.parent.parts)[0] for k in ker]
        return submodule_from_rows(self.parent, rows)

    def t_image(self, s):
        ring = self.parent.ring
        rows = [tuple(ring.times_tpow(e, s) for e in r) for r in self.rows]
        return submodule_from_rows(self.parent, rows)

    def t_preimage(self, s):
        """{m in the parent : t^s m in self}."""
        ring = self.parent.ring
        parent = self.parent
        m = parent.ngens
        shifted = [tuple(ring.times_tpow(e, s) for e in r)
                   for r in identity_rows(ring, m)]
        stacked = shifted + [tuple(ring.neg(e) for e in r) for r in self.rows]
        _, _, ker, _ = span_data(ring, stacked, parent.parts)
        return submodule_from_rows(parent, [k[:m] for k in ker])

    def as_module(self):
        """The abstract shape of this submodule: a decomposition with a
        PartitionModule, an embedding into the parent, and coordinates."""
        if self._decomp is None:
            self._decomp = SubmoduleShape(self)
        return self._decomp

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.parent == other.parent
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.parent.parts, self.rows))

    def __le__(self, other):
        return other.contains_submodule(self)

    def __repr__(self):
        return f"Submodule({len(self.rows)} gens of {self.parent.parts})"


def _as_probe(sub):
    class _P:  # tiny adapter so _same_parent works on (element, submodule)
        parent = sub.parent
    return _P


def _check_siblings(a, b):
    if a.parent != b.parent:
        raise ParentMismatch(f"{a.parent!r} vs {b.parent!r}")


def submodule_from_rows(parent, rows):
    rows = [tuple(r) for r in rows]
    if any(len(r) != parent.ngens for r in rows):
        raise ValueError("row width does not match the partition")
    h, w, _, piv = span_data(parent.ring, rows, parent.parts)
    return Submodule(parent, h, piv)


def submodule_from_generators(parent, gens):
    rows = []
    for g in gens:
        if isinstance(g, ModElement):
            if g.parent != parent:
                raise ParentMismatch("generator from a different module")
            rows.append(g.coords)
        else:
            rows.append(reduce_row(parent.ring, tuple(g), parent.parts))
    return submodule_from_rows(parent, rows)


def zero_submodule(parent):
    return submodule_from_rows(parent, [])


def full_submodule(parent):
    return submodule_from_rows(parent, identity_rows(parent.ring,
                                                     parent.ngens))


def s_socle(parent, s):
    """t^{-s}0 = {m : t^s m = 0}; generated by t^{max(0, λᵢ-s)}xᵢ."""
    ring = parent.ring
    rows = []
    for i, a in enumerate(parent.parts):
        e = max(0, a - s)
        row = [ring.zero] * parent.ngens
        row[i] = ring.tpow(e)
        rows.append(tuple(row))
    return submodule_from_rows(parent, rows)


class SubmoduleShape:
    """Decomposition data of a submodule U: an abstract module A with
    A ≅ U, the embedding A → parent, and coordinates on A."""

    def __init__(self, sub):
        parent = sub.parent
        dec = span_decomposition(parent.ring, list(sub.rows), parent.parts)
        self.decomposition = dec
        self.module = PartitionModule(parent.ring, dec.orders)
        self.embed = ModMorphism(self.module, parent, image_rows=dec.gens)

    def coords(self, elt):
        c = elt.coords if isinstance(elt, ModElement) else tuple(elt)
        return ModElement(self.module, self.decomposition.coords(c))


class ModMorphism:
    """A Λ-map f: M → N, stored as the list of images f(xⱼ).

    The classical matrix (f_{ij}), i over target generators, j over
    source generators, is the transpose of the stored rows; it must
    satisfy valuation(f_{ij}) ≥ max(0, bᵢ − aⱼ) to be well defined,
    which is checked at construction.
    """

    def __init__(self, source, target, image_rows=None, matrix=None,
                 check=True):
        if source.ring != target.ring:
            raise ParentMismatch("source and target over different rings")
        self.source = source
        self.target = target
        ring = source.ring
        if image_rows is None:
            if matrix is None:
                raise ValueError("need image_rows or matrix")
            image_rows = [tuple(matrix[i][j] for i in range(target.ngens))
                          for j in range(source.ngens)]
        if len(image_rows) != source.ngens:
            raise ValueError("one image row per source generator required")
        self.rows = tuple(reduce_row(ring, tuple(r), target.parts)
                          for r in image_rows)
        if check:
            for j, row in enumerate(self.rows):
                a = source.parts[j]
                for i, e in enumerate(row):
                    need = target.parts[i] - a
                    if need > 0 and ring.valuation(e) < need:
                        raise ConstraintViolated(
                            f"entry ({i},{j}) has valuation "
                            f"{ring.valuation(e)} < {need}; "
                            "t^a x = 0 would not map to 0")

    def matrix_entries(self):
        """(f_{ij}) with i over target, j over source generators."""
        return [tuple(self.rows[j][i] for j in range(self.source.ngens))
                for i in range(self.target.ngens)]

    def apply(self, elt):
        if elt.parent != self.source:
            raise ParentMismatch("element not in the source module")
        ring = self.source.ring
        out = mat_mul_rows(ring, [elt.coords], list(self.rows),
                           self.target.parts)[0] if self.rows else \
            (ring.zero,) * self.target.ngens
        return ModElement(self.target, out)

    def __call__(self, elt):
        return self.apply(elt)

    def compose(self, first):
        """self ∘ first."""
        if first.target != self.source:
            raise ParentMismatch("composition shape mismatch")
        ring = self.source.ring
        rows = mat_mul_rows(ring, list(first.rows), list(self.rows),
                            self.target.parts)
        return ModMorphism(first.source, self.target, image_rows=rows,
                           check=False)

    def add(self, other):
        if self.source != other.source or self.target != other.target:
            raise ParentMismatch("sum shape mismatch")
        ring = self.source.ring
        rows = [row_add(ring, a, b, self.target.parts)
                for a, b in zip(self.rows, other.rows)]
        return ModMorphism(self.source, self.target, image_rows=rows,
                           check=False)

    def scale(self, c):
        ring = self.source.ring
        rows = [row_scale(ring, c, r, self.target.parts) for r in self.rows]
        return ModMorphism(self.source, self.target, image_rows=rows,
                           check=False)

    def neg(self):
        return self.scale(self.source.ring.neg(self.source.ring.one))

    def is_zero(self):
        ring = self.source.ring
        return all(row_is_zero(ring, r) for r in self.rows)

    def kernel(self):
        ring = self.source.ring
        if not self.rows:
            return zero_submodule(self.source)
        _, _, ker, _ = span_data(ring, list(self.rows), self.target.parts)
        return submodule_from_rows(self.source, ker)

    def image(self):
        return submodule_from_rows(self.target, list(self.rows))

    def preimage(self, sub):
        """{m : f(m) ∈ sub} for a submodule of the target."""
        if sub.parent != self.target:
            raise ParentMismatch("submodule not in the target module")
        ring = self.source.ring
        m = self.source.ngens
        stacked = list(self.rows) + [tuple(ring.neg(e) for e in r)
                                     for r in sub.rows]
        _, _, ker, _ = span_data(ring, stacked, self.target.parts)
        return submodule_from_rows(self.source, [k[:m] for k in ker])

    def restrict_submodule(self, sub):
        """The image f(U) of a submodule of the source."""
        rows = [self.apply(g).coords for g in sub.gens()]
        return submodule_from_rows(self.target, rows)

    def solve_element(self, elt):
        """Some x with f(x) = elt, or NoSolution."""
        if elt.parent != self.target:
            raise ParentMismatch("element not in the target module")
        if not self.rows:
            if row_is_zero(self.source.ring, elt.coords):
                return self.source.zero()
            raise NoSolution("zero map misses a nonzero element")
        solver = SpanSolver(self.source.ring, list(self.rows),
                            self.target.parts)
        return ModElement(self.source, solver.solve(elt.coords))

    def __eq__(self, other):
        return (isinstance(other, ModMorphism) and self.source == other.source
                and self.target == other.target and self.rows == other.rows)

    def __hash__(self):
        return hash((self.source.parts, self.target.parts, self.rows))

    def __repr__(self):
        return f"ModMorphism({self.source.parts} -> {self.target.parts})"


def identity_morphism(module):
    return ModMorphism(module, module,
                       image_rows=identity_rows(module.ring, module.ngens),
                       check=False)


def zero_morphism(source, target):
    z = source.ring.zero
    rows = [(z,) * target.ngens for _ in range(source.ngens)]
    return ModMorphism(source, target, image_rows=rows, check=False)


class AmbientHom:
    """Hom(M, N) in closed form: generator (i,j) sends xⱼ to
    t^{max(0, bᵢ-aⱼ)}·yᵢ and has order t^{min(aⱼ, bᵢ)}."""

    def __init__(self, source, target):
        if source.ring != target.ring:
            raise ParentMismatch("hom over different rings")
        self.source = source
        self.target = target
        ring = source.ring
        self.index = []        # (i, j) per generator
        self.orders = []       # exponent of the t-power order
        self.gens = []
        for j, a in enumerate(source.parts):
            for i, b in enumerate(target.parts):
                self.index.append((i, j))
                self.orders.append(min(a, b))
                rows = [[ring.zero] * target.ngens
                        for _ in range(source.ngens)]
                rows[j][i] = ring.tpow(max(0, b - a))
                self.gens.append(ModMorphism(source, target,
                                             image_rows=rows, check=False))

    def order(self):
        return self.source.ring.q ** sum(self.orders)

    def element(self, coeffs):
        """The morphism Σ c_{s}·gen_s."""
        ring = self.source.ring
        rows = [[ring.zero] * self.target.ngens
                for _ in range(self.source.ngens)]
        for c, (i, j), g in zip(coeffs, self.index, self.gens):
            if not ring.is_zero(c):
                rows[j][i] = ring.add(rows[j][i], ring.mul(c, g.rows[j][i]))
        return ModMorphism(self.source, self.target, image_rows=rows,
                           check=False)

    def coeffs_of(self, f):
        """Coefficients of a morphism on the generators, entry s reduced
        mod t^{orders[s]}; exact because the generators are a basis."""
        ring = self.source.ring
        out = []
        for (i, j), e in zip(self.index, self.orders):
            entry = f.rows[j][i]
            delta = max(0, self.target.parts[i] - self.source.parts[j])
            c = ring.shift_down(entry, delta) if not ring.is_zero(entry) \
                else ring.zero
            out.append(ring.reduce_tpow(c, e))
        return tuple(out)


def hom_group(source, target):
    return AmbientHom(source, target)


class QuotientData:
    """M/U with its partition, the projection, and a lift of the new
    generators; proj ∘ lift = identity on the quotient."""

    def __init__(self, module, proj, lift_rows):
        self.module = module
        self.proj = proj
        self.lift_rows = lift_rows

    def lift(self, q_elt):
        ring = self.module.ring
        amb = self.proj.source
        out = mat_mul_rows(ring, [q_elt.coords], list(self.lift_rows),
                           amb.parts)[0] if self.lift_rows else \
            (ring.zero,) * amb.ngens
        return ModElement(amb, out)


def quotient_invariants(parent, sub):
    """Invariant factors of parent/sub via diagonalization.

    Returns QuotientData; the partition lists the exponents of the
    nonzero cyclic summands, descending.
    """
    if sub.parent != parent:
        raise ParentMismatch("submodule of a different module")
    ring = parent.ring
    m = parent.ngens
    rels = []
    for i, a in enumerate(parent.parts):
        row = [ring.zero] * m
        row[i] = ring.tpow(a)
        rels.append(tuple(row))
    rels.extend(sub.rows)
    exps, proj_rows, lift_rows = smith_diagonal(ring, rels, m)
    qmod = PartitionModule(ring, exps)
    proj = ModMorphism(parent, qmod, image_rows=proj_rows)
    lifts = [reduce_row(ring, r, parent.parts) for r in lift_rows]
    return QuotientData(qmod, proj, lifts)


def merge_partitions(parts_list):
    """Stable descending merge of several partitions.

    Returns (merged, index_maps): index_maps[s][i] is the position of
    part i of summand s inside the merged partition.
    """
    tagged = []
    for s, parts in enumerate(parts_list):
        for i, a in enumerate(parts):
            tagged.append((-a, s, i))
    tagged.sort()
    merged = tuple(-a for a, _, _ in tagged)
    maps = [[None] * len(parts) for parts in parts_list]
    for pos, (_, s, i) in enumerate(tagged):
        maps[s][i] = pos
    return merged, maps
