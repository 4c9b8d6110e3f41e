//! Exact-arithmetic tools for complex cobordism: s_ω characteristic
//! numbers, the rational obstruction to splitting off trivial bundle
//! summands, generator construction, and rank bookkeeping for the
//! associated spectra. All computation is over ℤ and ℚ via big integers;
//! nothing here rounds.

pub mod chern_geometry;
pub mod cobordism_algebra;
pub mod obstruction;
pub mod parser;
pub mod partitions;
pub mod spectra_ranks;
pub mod symmetric_functions;

mod linalg;

pub use chern_geometry::{
    chern_number, s_number, total_chern_class, ChernEvaluator, GeometryError, ManifoldModel,
};
pub use cobordism_algebra::{
    construct_section_generator, construct_section_generator_with_limit, integral_generator_check,
    is_rational_generator, prime_power, s_coordinates, s_matrix, s_matrix_with_limit,
    s_number_of_class, verify_stong, AlgebraError, CobordismClass, GeneratorVerdict,
    RequiredSValue, SMatrix, SectionGenerator,
};
pub use obstruction::{
    admits_sections_rationally, gamma_rational, gamma_rational_from_chern, kernel_basis,
    long_partitions, ObstructionError, ObstructionReport,
};
pub use parser::{elaborate, parse, parse_class, ClassExpr, ClassTerm, ExprError};
pub use partitions::{count_constrained, count_partitions, enumerate, Partition, PartitionError};
pub use spectra_ranks::{
    rank_mtu, rank_mtu_bar, rank_mtu_rel, rank_table, splitting_check, stabilization_check,
    RankError, RankTable, SpectrumTag, SplittingReport,
};
pub use symmetric_functions::{
    elementary_in_monomial, s_polynomial, s_polynomials_of_degree, truncate_classes,
    ChernPolynomial, MonomialSymVector, SymmetricFunctionError,
};

/// Default ceiling on the degree accepted by the table-building entry
/// points. Partition counts grow quickly; this keeps accidental huge
/// requests from pinning a core. Callers with patience can override it.
pub const DEFAULT_MAX_DEGREE: u32 = 10;
