//! Chern calculus on products of complex projective spaces.
//!
//! H*(CP^{n_1} × … × CP^{n_k}; ℤ) = ℤ[x_1,...,x_k]/(x_i^{n_i+1}) with the
//! tangent bundle's total Chern class ∏(1+x_i)^{n_i+1}. Everything a
//! characteristic number needs — products, grading, evaluation against the
//! fundamental class — happens in that truncated ring, with dense integer
//! coefficient vectors indexed mixed-radix by exponent tuples.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partitions::Partition;
use crate::symmetric_functions::{s_polynomial, ChernPolynomial, SymmetricFunctionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a product needs at least one projective factor")]
    EmptyProduct,
    #[error("CP^0 factors are not allowed; use n ≥ 1")]
    PointFactor,
    #[error("class of degree {found} cannot be evaluated on a manifold of complex dimension {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error(transparent)]
    Symmetric(#[from] SymmetricFunctionError),
}

/// A product CP^{n_1} × … × CP^{n_k}. Factors are kept in descending
/// order, so a model is canonically a partition of its complex dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldModel {
    factors: Vec<u32>,
}

impl ManifoldModel {
    /// Builds a product from factor dimensions in any order.
    pub fn new(factors: Vec<u32>) -> Result<Self, GeometryError> {
        if factors.is_empty() {
            return Err(GeometryError::EmptyProduct);
        }
        if factors.iter().any(|&n| n == 0) {
            return Err(GeometryError::PointFactor);
        }
        let mut factors = factors;
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ManifoldModel { factors })
    }

    /// The single space CP^n.
    pub fn projective(n: u32) -> Self {
        ManifoldModel::new(vec![n]).expect("n ≥ 1")
    }

    /// The product CP^{λ_1} × … × CP^{λ_l} indexed by a partition.
    pub fn from_partition(lambda: &Partition) -> Result<Self, GeometryError> {
        ManifoldModel::new(lambda.parts().to_vec())
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// Complex dimension Σ n_i.
    pub fn dimension(&self) -> u32 {
        self.factors.iter().sum()
    }

    /// The factor dimensions as a partition of the dimension.
    pub fn partition(&self) -> Partition {
        Partition::new(self.factors.clone()).unwrap()
    }

    /// χ(CP^{n_1} × … × CP^{n_k}) = ∏(n_i + 1).
    pub fn euler_characteristic(&self) -> BigInt {
        self.factors
            .iter()
            .map(|&n| BigInt::from(n + 1))
            .product()
    }

    /// Canonical name: descending factors, repeats collapsed with `^`,
    /// e.g. `CP2*CP1^2`. Round-trips through the expression parser.
    pub fn canonical_name(&self) -> String {
        self.to_string()
    }

    /// Prepares the ring data for repeated evaluations on this model.
    pub fn evaluator(&self) -> ChernEvaluator {
        ChernEvaluator::new(self)
    }
}

/// Same order as the partitions they index: dimension first, then
/// reverse-lexicographic on factors, so CP^d sorts before any product.
impl Ord for ManifoldModel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dimension()
            .cmp(&other.dimension())
            .then_with(|| other.factors.cmp(&self.factors))
    }
}

impl PartialOrd for ManifoldModel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let n = self.factors[i];
            let mut run = 0;
            while i < self.factors.len() && self.factors[i] == n {
                run += 1;
                i += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "CP{n}")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
        }
        Ok(())
    }
}

/// The truncated polynomial ring ℤ[x_1,...,x_k]/(x_i^{caps_i + 1}),
/// elements stored as dense coefficient vectors.
struct Ring {
    caps: Vec<u32>,
    strides: Vec<usize>,
    exps: Vec<Vec<u32>>,
}

type Elem = Vec<BigInt>;

impl Ring {
    fn new(caps: Vec<u32>) -> Ring {
        let mut strides = vec![0usize; caps.len()];
        let mut size = 1usize;
        for i in (0..caps.len()).rev() {
            strides[i] = size;
            size *= caps[i] as usize + 1;
        }
        let mut exps = Vec::with_capacity(size);
        for idx in 0..size {
            let e: Vec<u32> = (0..caps.len())
                .map(|i| ((idx / strides[i]) % (caps[i] as usize + 1)) as u32)
                .collect();
            exps.push(e);
        }
        Ring { caps, strides, exps }
    }

    fn size(&self) -> usize {
        self.exps.len()
    }

    fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.size()]
    }

    fn one(&self) -> Elem {
        let mut e = self.zero();
        e[0] = BigInt::one();
        e
    }

    fn index_of(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.zero();
        for (ia, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            'b: for (ib, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mut idx = 0usize;
                for i in 0..self.caps.len() {
                    let e = self.exps[ia][i] + self.exps[ib][i];
                    if e > self.caps[i] {
                        continue 'b; // x_i^{n_i+1} = 0
                    }
                    idx += e as usize * self.strides[i];
                }
                out[idx] += ca * cb;
            }
        }
        out
    }

    fn total_degree(&self, idx: usize) -> u32 {
        self.exps[idx].iter().sum()
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Ring data for one model: the graded pieces c_0, c_1, ..., c_dim of the
/// total Chern class, ready for monomial products and top-degree reads.
/// Monomial products c_{λ_1}···c_{λ_l} are cached per suffix, so sweeping
/// all s_ω of one degree costs one ring product per distinct monomial.
pub struct ChernEvaluator {
    ring: Ring,
    classes: Vec<Elem>,
    top: usize,
    dimension: u32,
    products: Mutex<HashMap<Partition, Arc<Elem>>>,
}

impl ChernEvaluator {
    fn new(model: &ManifoldModel) -> ChernEvaluator {
        let ring = Ring::new(model.factors.clone());
        let mut total = ring.one();
        for (i, &n) in model.factors.iter().enumerate() {
            // (1 + x_i)^{n+1}, already truncated at x_i^n
            let mut factor = ring.zero();
            for e in 0..=n {
                let mut exps = vec![0u32; model.factors.len()];
                exps[i] = e;
                factor[ring.index_of(&exps)] = binomial(n + 1, e);
            }
            total = ring.mul(&total, &factor);
        }
        let dimension = model.dimension();
        let mut classes = vec![ring.zero(); dimension as usize + 1];
        for (idx, coeff) in total.iter().enumerate() {
            if !coeff.is_zero() {
                classes[ring.total_degree(idx) as usize][idx] = coeff.clone();
            }
        }
        let top = ring.index_of(&model.factors.iter().map(|&n| n).collect::<Vec<_>>());
        ChernEvaluator {
            ring,
            classes,
            top,
            dimension,
            products: Mutex::new(HashMap::new()),
        }
    }

    /// c_{λ_1}···c_{λ_l} with every suffix product memoized.
    fn monomial_product(&self, key: &Partition) -> Arc<Elem> {
        if let Some(hit) = self.products.lock().unwrap().get(key) {
            return Arc::clone(hit);
        }
        let parts = key.parts();
        let value = match parts.len() {
            0 => self.ring.one(),
            1 => self.classes[parts[0] as usize].clone(),
            _ => {
                let tail = Partition::new(parts[1..].to_vec()).unwrap();
                let rest = self.monomial_product(&tail);
                self.ring.mul(&self.classes[parts[0] as usize], &rest)
            }
        };
        Arc::clone(
            self.products
                .lock()
                .unwrap()
                .entry(key.clone())
                .or_insert_with(|| Arc::new(value)),
        )
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Evaluates a top-degree polynomial in the c_j against the
    /// fundamental class.
    pub fn evaluate(&self, poly: &ChernPolynomial) -> Result<BigInt, GeometryError> {
        if poly.degree() != self.dimension {
            return Err(GeometryError::DegreeMismatch {
                expected: self.dimension,
                found: poly.degree(),
            });
        }
        let mut acc = BigInt::zero();
        for (key, coeff) in poly.terms() {
            let prod = self.monomial_product(key);
            acc += coeff * &prod[self.top];
        }
        Ok(acc)
    }

    /// The Chern number c_λ[M] = (c_{λ_1}···c_{λ_l})[M].
    pub fn chern_number(&self, lambda: &Partition) -> Result<BigInt, GeometryError> {
        self.evaluate(&ChernPolynomial::from_terms(
            lambda.weight(),
            [(lambda.clone(), BigInt::one())],
        ))
    }

    /// The characteristic number s_ω[M].
    pub fn s_number(&self, omega: &Partition) -> Result<BigInt, GeometryError> {
        let poly = s_polynomial(omega)?;
        self.evaluate(&poly)
    }
}

/// The graded pieces of c(M) = ∏(1+x_i)^{n_i+1}: entry j lists the degree-j
/// monomials as (exponent tuple, coefficient) pairs in exponent order.
pub fn total_chern_class(model: &ManifoldModel) -> Vec<Vec<(Vec<u32>, BigInt)>> {
    let ev = model.evaluator();
    ev.classes
        .iter()
        .map(|class| {
            class
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (ev.ring.exps[idx].clone(), c.clone()))
                .collect()
        })
        .collect()
}

/// One-shot c_λ[M]; build a [`ChernEvaluator`] instead when evaluating
/// many classes on the same model.
pub fn chern_number(model: &ManifoldModel, lambda: &Partition) -> Result<BigInt, GeometryError> {
    model.evaluator().chern_number(lambda)
}

/// One-shot s_ω[M].
pub fn s_number(model: &ManifoldModel, omega: &Partition) -> Result<BigInt, GeometryError> {
    model.evaluator().s_number(omega)
}
