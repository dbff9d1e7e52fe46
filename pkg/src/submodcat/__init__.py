"""Exact computational algebra for submodule pairs over chain rings.

The toolkit works with pairs (M1 inside M0) of finite modules over a
commutative local uniserial ring Z/p^n or F_q[T]/T^n.  It provides
canonical normal forms for the linear algebra (Howell forms, span
solvers, diagonalization), the category of pairs with its layer
filtration, a three-vertex quiver whose representations classify the
pairs between two canonical bounds, the passage functors in both
directions, an embedding of two-matrix problems, and certified
endomorphism algebra quotients.  Everything is exact; nothing floats.
"""

from .chain_ring import ChainRing, ring_from_descriptor, truncpoly, zmod
from .delta_quiver import (DeltaMorphism, DeltaRep, delta_hom, direct_sum,
                           hom_through_simple_projective, iso_witness,
                           rep_from_json, rep_to_triple, simple_rep,
                           simple_summand_profile, triple_to_rep, zero_rep)
from .errors import (ConstraintViolated, DecompositionFailed,
                     InternalInconsistency, NoSolution, NotInInterval,
                     NotKAlgebra, ParentMismatch, PreconditionViolated,
                     SummandObstruction)
from .functors import (FramedObject, KAlgebra, TwoMatrixModule,
                       check_interval, commutant_algebra, commutant_oracle,
                       end_quotient, end_quotient_data, f_kernel_subgroup,
                       f_morphism, f_object, framed_I, framed_J, g_embed,
                       g_framed, g_triple, gamma_prime, induced_hom_matrix,
                       phi_morphism, phi_object, two_matrix_from_json)
from .howell import (SpanSolver, howell_canonical, smith_diagonal,
                     solve_linear, span_decomposition)
from .lambda_modules import (ModElement, ModMorphism, PartitionModule,
                             Submodule, merge_partitions, quotient_invariants,
                             s_socle, submodule_from_generators,
                             submodule_from_rows, zero_submodule)
from .subpair_category import direct_sum as pair_direct_sum
from .subpair_category import (PairMorphism, SubPair, canonical_I,
                               canonical_inclusion, canonical_J, hom_pairs,
                               hom_through_I, i_socle,
                               identity_pair_morphism, pair_power,
                               pair_iso_witness, simple_pairs)

__version__ = "0.1.0"

__all__ = [
    "ChainRing", "zmod", "truncpoly", "ring_from_descriptor",
    "ConstraintViolated", "DecompositionFailed", "InternalInconsistency",
    "NoSolution", "NotInInterval", "NotKAlgebra", "ParentMismatch",
    "PreconditionViolated", "SummandObstruction",
    "SpanSolver", "howell_canonical", "smith_diagonal", "solve_linear",
    "span_decomposition",
    "ModElement", "ModMorphism", "PartitionModule", "Submodule",
    "merge_partitions", "quotient_invariants", "s_socle",
    "submodule_from_generators", "submodule_from_rows", "zero_submodule",
    "PairMorphism", "SubPair", "canonical_I", "canonical_J",
    "canonical_inclusion", "pair_direct_sum", "hom_pairs", "hom_through_I",
    "i_socle", "identity_pair_morphism", "pair_power", "pair_iso_witness",
    "simple_pairs",
    "DeltaMorphism", "DeltaRep", "delta_hom", "direct_sum",
    "hom_through_simple_projective", "iso_witness", "rep_from_json",
    "rep_to_triple", "simple_rep", "simple_summand_profile", "triple_to_rep",
    "zero_rep",
    "FramedObject", "KAlgebra", "TwoMatrixModule", "check_interval",
    "commutant_algebra", "commutant_oracle", "end_quotient",
    "end_quotient_data", "f_kernel_subgroup", "f_morphism", "f_object",
    "framed_I", "framed_J", "g_embed", "g_framed", "g_triple", "gamma_prime",
    "induced_hom_matrix", "phi_morphism", "phi_object",
    "two_matrix_from_json",
]
