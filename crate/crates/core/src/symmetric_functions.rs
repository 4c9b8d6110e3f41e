//! The s_ω polynomials: each monomial symmetric function m_ω, written as an
//! integer polynomial in the elementary symmetric polynomials σ_1,...,σ_d,
//! which evaluate to the Chern classes c_1,...,c_d of a tangent bundle.
//!
//! The transition is computed per degree: expand every e_λ (λ ⊢ d) in the
//! monomial basis over exactly d variables, then invert the resulting
//! p(d) × p(d) integer matrix. That matrix is unimodular, so every s_ω has
//! integer coefficients; a denominator surviving the inversion signals a
//! bug and is reported as an error rather than truncated.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg;
use crate::partitions::{enumerate, Partition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetricFunctionError {
    #[error("the empty partition has no s-polynomial")]
    EmptyPartition,
    #[error("transition matrix for degree {degree} is not invertible over the integers")]
    NonUnimodularTransition { degree: u32 },
}

/// A homogeneous integer polynomial in the Chern-class symbols c_1,...,c_d.
///
/// Each key partition λ stands for the monomial c_{λ_1}·c_{λ_2}·…, which
/// has degree Σλ_i = weight(λ). Every stored key has weight equal to the
/// polynomial's degree and a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPolynomial {
    degree: u32,
    terms: BTreeMap<Partition, BigInt>,
}

impl ChernPolynomial {
    /// The zero polynomial of the given degree.
    pub fn zero(degree: u32) -> Self {
        ChernPolynomial {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from raw terms, merging duplicate keys and
    /// dropping zero coefficients. Panics if a key's weight differs from
    /// `degree`; homogeneity is structural, not a runtime input error.
    pub fn from_terms<I>(degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut map: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (key, coeff) in terms {
            assert_eq!(
                key.weight(),
                degree,
                "term {key} is not homogeneous of degree {degree}"
            );
            let entry = map.entry(key).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        ChernPolynomial {
            degree,
            terms: map,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &Partition) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by the single class c_j, shifting every key partition.
    pub fn mul_class(&self, j: u32) -> ChernPolynomial {
        assert!(j >= 1, "Chern classes are indexed from 1");
        let terms = self.terms.iter().map(|(key, coeff)| {
            let mut parts = key.parts().to_vec();
            parts.push(j);
            (Partition::from_unsorted(parts).unwrap(), coeff.clone())
        });
        ChernPolynomial::from_terms(self.degree + j, terms)
    }

    pub fn add(&self, other: &ChernPolynomial) -> ChernPolynomial {
        assert_eq!(self.degree, other.degree, "cannot add mixed degrees");
        ChernPolynomial::from_terms(
            self.degree,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn scale(&self, factor: &BigInt) -> ChernPolynomial {
        ChernPolynomial::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor)),
        )
    }

    /// JSON form: a map keyed by partition strings in canonical order,
    /// e.g. `{"[2]": -2, "[1,1]": 1}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (key, coeff) in &self.terms {
            map.insert(key.to_string(), bigint_json(coeff));
        }
        serde_json::Value::Object(map)
    }
}

pub(crate) fn bigint_json(value: &BigInt) -> serde_json::Value {
    match i64::try_from(value.clone()) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(value.to_string()),
    }
}

/// Text form, e.g. `c1^2 - 2*c2`. Within a term the classes appear in
/// ascending index; terms run from the most-1s monomial down to c_d,
/// matching the classical way these polynomials are written.
impl fmt::Display for ChernPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, coeff)) in self.terms.iter().rev().enumerate() {
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
            let mut first = true;
            for (part, mult) in key.multiplicities().into_iter().rev() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "c{part}")?;
                if mult > 1 {
                    write!(f, "^{mult}")?;
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of a symmetric function in the monomial basis {m_μ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSymVector {
    degree: u32,
    coords: BTreeMap<Partition, BigInt>,
}

impl MonomialSymVector {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coords.iter()
    }

    pub fn coefficient(&self, key: &Partition) -> BigInt {
        self.coords.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Expansion of e_λ = e_{λ_1}·e_{λ_2}·… in the monomial basis, computed by
/// iterated monomial-basis products over weight(λ) variables. With that
/// many variables the coefficients are stable: adding variables does not
/// change them. All coefficients are nonnegative integers.
pub fn elementary_in_monomial(lambda: &Partition) -> MonomialSymVector {
    let nvars = lambda.weight() as usize;
    let mut coords: BTreeMap<Partition, BigInt> = BTreeMap::new();
    coords.insert(Partition::empty(), BigInt::one());
    let mut weight = 0u32;
    for &part in lambda.parts() {
        coords = multiply_by_elementary(&coords, weight, part, nvars);
        weight += part;
    }
    MonomialSymVector {
        degree: weight,
        coords,
    }
}

/// One monomial-basis product step: multiplies a weight-`weight` symmetric
/// function by e_k over `nvars` variables. The coefficient of m_ν in
/// m_μ·e_k counts the 0/1 exponent vectors ε with |ε| = k such that
/// ν̄ − ε is a rearrangement of μ, where ν̄ is ν padded to `nvars` slots.
fn multiply_by_elementary(
    coords: &BTreeMap<Partition, BigInt>,
    weight: u32,
    k: u32,
    nvars: usize,
) -> BTreeMap<Partition, BigInt> {
    let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
    if k as usize > nvars {
        return out; // e_k vanishes with fewer than k variables
    }
    for nu in enumerate(weight + k) {
        if nu.length() > nvars {
            continue;
        }
        let mut padded = nu.parts().to_vec();
        padded.resize(nvars, 0);
        let mut total = BigInt::zero();
        for subset in (0..nvars).combinations(k as usize) {
            if subset.iter().any(|&i| padded[i] == 0) {
                continue;
            }
            let mut reduced: Vec<u32> = padded.clone();
            for &i in &subset {
                reduced[i] -= 1;
            }
            reduced.retain(|&x| x > 0);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            let mu = Partition::new(reduced).unwrap();
            if let Some(c) = coords.get(&mu) {
                total += c;
            }
        }
        if !total.is_zero() {
            out.insert(nu, total);
        }
    }
    out
}

struct DegreeTable {
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    s_polys: Vec<ChernPolynomial>,
}

static TABLES: LazyLock<Mutex<HashMap<u32, Arc<DegreeTable>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn degree_table(d: u32) -> Result<Arc<DegreeTable>, SymmetricFunctionError> {
    if let Some(table) = TABLES.lock().unwrap().get(&d) {
        return Ok(Arc::clone(table));
    }
    // computed outside the lock; racing callers get identical results
    let table = Arc::new(build_degree_table(d)?);
    let mut cache = TABLES.lock().unwrap();
    Ok(Arc::clone(cache.entry(d).or_insert(table)))
}

fn build_degree_table(d: u32) -> Result<DegreeTable, SymmetricFunctionError> {
    let parts = enumerate(d);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let elementary_m: Vec<MonomialSymVector> =
        parts.iter().map(elementary_in_monomial).collect();
    // E[row λ][col μ]: coefficient of m_μ in e_λ
    let matrix: Vec<Vec<BigInt>> = elementary_m
        .iter()
        .map(|vec| parts.iter().map(|mu| vec.coefficient(mu)).collect())
        .collect();
    let inverse =
        linalg::invert(&matrix).ok_or(SymmetricFunctionError::NonUnimodularTransition {
            degree: d,
        })?;
    let mut s_polys = Vec::with_capacity(parts.len());
    for row in &inverse {
        let mut terms = Vec::new();
        for (col, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if !coeff.denom().is_one() {
                return Err(SymmetricFunctionError::NonUnimodularTransition { degree: d });
            }
            terms.push((parts[col].clone(), coeff.numer().clone()));
        }
        s_polys.push(ChernPolynomial::from_terms(d, terms));
    }
    Ok(DegreeTable {
        partitions: parts,
        index,
        s_polys,
    })
}

/// The polynomial s_ω with s_ω(σ_1,...,σ_d) = m_ω as symmetric functions:
/// substituting the Chern classes for the σ_i turns it into the
/// characteristic class whose evaluation is the s_ω number.
pub fn s_polynomial(omega: &Partition) -> Result<ChernPolynomial, SymmetricFunctionError> {
    if omega.is_empty() {
        return Err(SymmetricFunctionError::EmptyPartition);
    }
    let table = degree_table(omega.weight())?;
    let idx = table.index[omega];
    Ok(table.s_polys[idx].clone())
}

/// All s_ω for ω ⊢ d in canonical order, from the shared per-degree table.
pub fn s_polynomials_of_degree(
    d: u32,
) -> Result<Vec<(Partition, ChernPolynomial)>, SymmetricFunctionError> {
    if d == 0 {
        return Err(SymmetricFunctionError::EmptyPartition);
    }
    let table = degree_table(d)?;
    Ok(table
        .partitions
        .iter()
        .cloned()
        .zip(table.s_polys.iter().cloned())
        .collect())
}

/// Deletes every term containing a factor c_k with k ≥ `cutoff`. This is
/// the polynomial shadow of a bundle splitting off trivial summands: once
/// the classes above the cutoff vanish, so do these terms.
pub fn truncate_classes(poly: &ChernPolynomial, cutoff: u32) -> ChernPolynomial {
    ChernPolynomial {
        degree: poly.degree,
        terms: poly
            .terms
            .iter()
            .filter(|(key, _)| key.max_part() < cutoff)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect(),
    }
}
