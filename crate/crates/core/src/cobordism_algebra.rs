//! The rational complex cobordism ring through its s-numbers.
//!
//! Ω^U_* ⊗ ℚ is a polynomial ring with one generator in every even degree,
//! and in degree 2d the products of projective spaces CP^λ (λ ⊢ d) form a
//! rational basis. The certificate is the s-matrix: rows s_ω, columns
//! CP^λ, both in canonical partition order. It is lower triangular with
//! diagonal ∏(λ_i + 1), hence nonsingular — so s-coordinates pin a class
//! down completely, and solving against the matrix manufactures classes
//! with prescribed s-numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chern_geometry::{GeometryError, ManifoldModel};
use crate::linalg;
use crate::partitions::{enumerate, Partition};
use crate::symmetric_functions::{bigint_json, SymmetricFunctionError};
use crate::DEFAULT_MAX_DEGREE;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("degree {degree} exceeds the limit {limit}; raise the limit explicitly to proceed")]
    DegreeLimit { degree: u32, limit: u32 },
    #[error("expected a term of dimension {expected}, found {found}")]
    MixedDegrees { expected: u32, found: u32 },
    #[error("s-matrix for degree {degree} is singular")]
    SingularMatrix { degree: u32 },
    #[error("class has non-integer coefficients; the integrality test needs an integral class")]
    NonIntegralClass,
    #[error(transparent)]
    Symmetric(#[from] SymmetricFunctionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A formal ℚ-linear combination of CP-products of one common dimension.
/// Terms are kept in canonical order with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobordismClass {
    degree: u32,
    terms: BTreeMap<ManifoldModel, BigRational>,
}

impl CobordismClass {
    pub fn zero(degree: u32) -> Self {
        CobordismClass {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A single model with coefficient 1.
    pub fn from_model(model: ManifoldModel) -> Self {
        let degree = model.dimension();
        CobordismClass::from_terms(degree, [(model, BigRational::one())]).unwrap()
    }

    /// Merges duplicate models and drops zero coefficients. Every model
    /// must have dimension `degree`.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ManifoldModel, BigRational)>,
    {
        if degree == 0 {
            return Err(AlgebraError::DegreeZero);
        }
        let mut map: BTreeMap<ManifoldModel, BigRational> = BTreeMap::new();
        for (model, coeff) in terms {
            if model.dimension() != degree {
                return Err(AlgebraError::MixedDegrees {
                    expected: degree,
                    found: model.dimension(),
                });
            }
            let entry = map.entry(model).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(CobordismClass {
            degree,
            terms: map,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical model order (CP^d first).
    pub fn terms(&self) -> impl Iterator<Item = (&ManifoldModel, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, model: &ManifoldModel) -> BigRational {
        self.terms
            .get(model)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &CobordismClass) -> Result<CobordismClass, AlgebraError> {
        if self.degree != other.degree {
            return Err(AlgebraError::MixedDegrees {
                expected: self.degree,
                found: other.degree,
            });
        }
        CobordismClass::from_terms(
            self.degree,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn scale(&self, factor: &BigRational) -> CobordismClass {
        let mut scaled = self.clone();
        scaled.terms = scaled
            .terms
            .into_iter()
            .map(|(m, c)| (m, c * factor))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        scaled
    }

    /// Coefficients aligned with `enumerate(degree)`: entry i is the
    /// coefficient of CP^{λ_i}.
    pub fn coefficient_vector(&self) -> Vec<BigRational> {
        enumerate(self.degree)
            .iter()
            .map(|lambda| self.coefficient(&ManifoldModel::from_partition(lambda).unwrap()))
            .collect()
    }

    /// JSON form: `{"CP2": "4", "CP1^2": "-3"}` in canonical model order,
    /// coefficients as exact rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (model, coeff) in &self.terms {
            map.insert(
                model.canonical_name(),
                serde_json::Value::from(coeff.to_string()),
            );
        }
        serde_json::Value::Object(map)
    }
}

/// Text form, e.g. `4*CP2 - 3*CP1^2`; parses back to the same class.
impl fmt::Display for CobordismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (model, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{model}")?;
        }
        Ok(())
    }
}

/// The degree-d s-matrix: entry (ω, λ) = s_ω[CP^λ], rows and columns in
/// canonical partition order.
#[derive(Debug)]
pub struct SMatrix {
    degree: u32,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    entries: Vec<Vec<BigInt>>,
    det: BigInt,
}

impl SMatrix {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Row/column labels in canonical order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn entry(&self, omega: &Partition, lambda: &Partition) -> Option<&BigInt> {
        let r = *self.index.get(omega)?;
        let c = *self.index.get(lambda)?;
        Some(&self.entries[r][c])
    }

    pub fn row(&self, omega: &Partition) -> Option<&[BigInt]> {
        self.index.get(omega).map(|&r| self.entries[r].as_slice())
    }

    pub fn index_of(&self, part: &Partition) -> Option<usize> {
        self.index.get(part).copied()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("degree".into(), self.degree.into());
        map.insert(
            "partitions".into(),
            self.partitions
                .iter()
                .map(|p| serde_json::Value::from(p.to_string()))
                .collect::<Vec<_>>()
                .into(),
        );
        map.insert(
            "rows".into(),
            self.entries
                .iter()
                .map(|row| serde_json::Value::from(row.iter().map(bigint_json).collect::<Vec<_>>()))
                .collect::<Vec<_>>()
                .into(),
        );
        map.insert("det".into(), bigint_json(&self.det));
        serde_json::Value::Object(map)
    }
}

static SMATRICES: LazyLock<Mutex<HashMap<u32, Arc<SMatrix>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The shared degree-d s-matrix, under the default degree ceiling.
pub fn s_matrix(d: u32) -> Result<Arc<SMatrix>, AlgebraError> {
    s_matrix_with_limit(d, DEFAULT_MAX_DEGREE)
}

/// Same, with an explicit ceiling for callers who accept the cost. The
/// guard prices construction, not lookup: a table someone already built
/// is served from the cache without consulting the limit.
pub fn s_matrix_with_limit(d: u32, limit: u32) -> Result<Arc<SMatrix>, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::DegreeZero);
    }
    if let Some(m) = SMATRICES.lock().unwrap().get(&d) {
        return Ok(Arc::clone(m));
    }
    if d > limit {
        return Err(AlgebraError::DegreeLimit { degree: d, limit });
    }
    let built = Arc::new(build_s_matrix(d)?);
    let mut cache = SMATRICES.lock().unwrap();
    Ok(Arc::clone(cache.entry(d).or_insert(built)))
}

fn build_s_matrix(d: u32) -> Result<SMatrix, AlgebraError> {
    let partitions = enumerate(d);
    let index: HashMap<Partition, usize> = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    // one evaluator per column model, reused across all rows
    let evaluators: Vec<_> = partitions
        .iter()
        .map(|lambda| {
            ManifoldModel::from_partition(lambda)
                .map(|m| m.evaluator())
                .map_err(AlgebraError::from)
        })
        .collect::<Result<_, _>>()?;
    let mut entries = Vec::with_capacity(partitions.len());
    for omega in &partitions {
        let mut row = Vec::with_capacity(partitions.len());
        for ev in &evaluators {
            row.push(ev.s_number(omega)?);
        }
        entries.push(row);
    }
    let det = linalg::det_bareiss(&entries);
    Ok(SMatrix {
        degree: d,
        partitions,
        index,
        entries,
        det,
    })
}

/// Returns det(s-matrix(d)); a nonzero value certifies that the CP^λ span
/// Ω^U_{2d} ⊗ ℚ.
pub fn verify_stong(d: u32) -> Result<BigInt, AlgebraError> {
    Ok(s_matrix(d)?.det().clone())
}

/// All s-numbers of a class, in canonical partition order. Rational
/// because classes are; on an integral class every value is an integer.
pub fn s_coordinates(class: &CobordismClass) -> Result<Vec<(Partition, BigRational)>, AlgebraError> {
    let matrix = s_matrix(class.degree())?;
    let coeffs = class.coefficient_vector();
    Ok(matrix
        .partitions()
        .iter()
        .enumerate()
        .map(|(r, omega)| {
            let value = matrix.entries[r]
                .iter()
                .zip(&coeffs)
                .map(|(s, c)| BigRational::from(s.clone()) * c)
                .sum();
            (omega.clone(), value)
        })
        .collect())
}

/// The single s-number s_ω(X).
pub fn s_number_of_class(
    class: &CobordismClass,
    omega: &Partition,
) -> Result<BigRational, AlgebraError> {
    let matrix = s_matrix(class.degree())?;
    let row = matrix
        .row(omega)
        .ok_or_else(|| AlgebraError::MixedDegrees {
            expected: class.degree(),
            found: omega.weight(),
        })?;
    let coeffs = class.coefficient_vector();
    Ok(row
        .iter()
        .zip(&coeffs)
        .map(|(s, c)| BigRational::from(s.clone()) * c)
        .sum())
}

/// X generates Ω^U_* ⊗ ℚ in its degree exactly when s_(d)(X) ≠ 0.
pub fn is_rational_generator(class: &CobordismClass) -> Result<bool, AlgebraError> {
    let top = s_number_of_class(class, &Partition::single(class.degree()))?;
    Ok(!top.is_zero())
}

/// Writes n = p^q with p prime, if possible (q ≥ 1). The decomposition is
/// unique when it exists.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    let mut m = n;
    let mut q = 0u32;
    // find the smallest prime factor; n is a prime power iff it divides out fully
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            p = f;
            break;
        }
        f += 1;
    }
    if f * f > m {
        return Some((n, 1)); // n itself is prime
    }
    while m % p == 0 {
        m /= p;
        q += 1;
    }
    if m == 1 {
        Some((p, q))
    } else {
        None
    }
}

/// What |s_(d)| must be for an integral class to generate Ω^U_* (not just
/// rationally) in degree d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RequiredSValue {
    /// d+1 is not a prime power: |s_(d)| must be 1.
    Unit,
    /// d+1 = p^q: |s_(d)| must be p.
    Prime { p: u64, q: u32 },
}

impl RequiredSValue {
    pub fn magnitude(&self) -> BigInt {
        match self {
            RequiredSValue::Unit => BigInt::one(),
            RequiredSValue::Prime { p, .. } => BigInt::from(*p),
        }
    }
}

/// Outcome of the integrality test on one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorVerdict {
    pub degree: u32,
    /// s_(d)(X), an integer since the class is integral.
    pub s_value: BigInt,
    pub required: RequiredSValue,
    /// |s_(d)(X)| hits the required magnitude: X can serve as the degree-d
    /// polynomial generator of Ω^U_*.
    pub integral_generator: bool,
    /// s_(d)(X) ≠ 0: X generates after tensoring with ℚ.
    pub rational_generator: bool,
}

/// Milnor's criterion for an integral class: X generates Ω^U_* in degree d
/// iff |s_(d)(X)| is p when d+1 = p^q and 1 otherwise.
pub fn integral_generator_check(class: &CobordismClass) -> Result<GeneratorVerdict, AlgebraError> {
    if !class.is_integral() {
        return Err(AlgebraError::NonIntegralClass);
    }
    let d = class.degree();
    let s = s_number_of_class(class, &Partition::single(d))?;
    debug_assert!(s.denom().is_one());
    let s_value = s.numer().clone();
    let required = match prime_power(d as u64 + 1) {
        Some((p, q)) => RequiredSValue::Prime { p, q },
        None => RequiredSValue::Unit,
    };
    Ok(GeneratorVerdict {
        degree: d,
        s_value: s_value.clone(),
        integral_generator: s_value.abs() == required.magnitude(),
        rational_generator: !s_value.is_zero(),
        required,
    })
}

/// An integral class whose only nonzero s-number is s_(d) = `multiple`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionGenerator {
    pub class: CobordismClass,
    /// The minimal positive integer c with s_(d) = c achievable this way:
    /// the LCM of the denominators of the rational solution.
    pub multiple: BigInt,
}

/// Builds the canonical degree-d class with s_ω = 0 for every ω ≠ (d):
/// solve S·v = e_(d) against the s-matrix, then clear denominators.
/// All its stably-long s-numbers vanish, so it admits as many rational
/// sections as degree allows while still generating rationally.
pub fn construct_section_generator(d: u32) -> Result<SectionGenerator, AlgebraError> {
    construct_section_generator_with_limit(d, DEFAULT_MAX_DEGREE)
}

pub fn construct_section_generator_with_limit(
    d: u32,
    limit: u32,
) -> Result<SectionGenerator, AlgebraError> {
    let matrix = s_matrix_with_limit(d, limit)?;
    let n = matrix.size();
    let mut rhs = vec![BigInt::zero(); n];
    let top = matrix
        .index_of(&Partition::single(d))
        .expect("(d) is always enumerated");
    rhs[top] = BigInt::one();
    let solution = linalg::solve_bareiss(matrix.rows(), &rhs)
        .ok_or(AlgebraError::SingularMatrix { degree: d })?;
    let multiple = linalg::denominator_lcm(&solution);
    let scale = BigRational::from(multiple.clone());
    let terms = matrix
        .partitions()
        .iter()
        .zip(&solution)
        .map(|(lambda, v)| {
            (
                ManifoldModel::from_partition(lambda).unwrap(),
                v * &scale,
            )
        });
    let class = CobordismClass::from_terms(d, terms)?;
    Ok(SectionGenerator { class, multiple })
}
