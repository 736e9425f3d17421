"""lalg: a workbench for finite L-algebras.

Validate operation tables, compute ideal lattices and prime spectra, build
products, ordered sums and poset algebras, enumerate all small L-algebras,
and machine-check the structural laws of the theory on every instance.
"""

from .core import (
    MAX_CARRIER,
    FiniteLAlgebra,
    OrderRelation,
    StructureFlags,
    axiom_violations,
    derive_order,
    meet,
    partial_product,
    structure_flags,
    subalgebra,
    validate,
)
from .errors import (
    AxiomViolation,
    BijectionFailure,
    CongruenceFailure,
    DistributivityFailure,
    FalsificationError,
    JoinWitnessMismatch,
    LAlgebraError,
    MalformedTable,
    MaximalAvoiderNotPrime,
    NonUniqueAttachment,
    NonUniqueProduct,
    NotTransitive,
    ParseError,
    PrimeDefinitionMismatch,
    PrimeNotQuasiPrime,
    QuotientNotWellDefined,
    ResiduationNotGreatest,
    SizeTooLarge,
    SpatialityFailure,
    Violation,
)
from .ideals import (
    Congruence,
    Ideal,
    IdealLattice,
    congruence_of,
    enumerate_ideals,
    generate_ideal,
    ideal_of_congruence,
    is_ideal,
    join_via_closure,
    join_via_witness,
    principal_ideal,
    quotient,
    residuation,
)
from . import constructions, formats, laws, spectrum  # noqa: E402  (submodule access)

__version__ = "0.1.0"
