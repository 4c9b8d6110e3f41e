//! The rational obstruction to r linearly independent sections.
//!
//! A degree-d class comes from a manifold whose stable tangent bundle
//! splits off r trivial complex line summands only if every s_ω with
//! l(ω) > d − r vanishes on it: those s_ω are exactly the characteristic
//! numbers killed by such a splitting, and rationally they are the whole
//! story. The test is therefore a finite list of exact zero checks, and
//! its kernel is a computable subspace of Ω^U_{2d} ⊗ ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cobordism_algebra::{s_matrix, AlgebraError, CobordismClass};
use crate::linalg;
use crate::partitions::{enumerate, Partition};
use crate::symmetric_functions::{s_polynomial, SymmetricFunctionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("cannot ask for {sections} sections in degree {degree}; r ≤ d is required")]
    TooManySections { degree: u32, sections: u32 },
    #[error("no Chern number supplied for {lambda}")]
    MissingChernNumber { lambda: Partition },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricFunctionError),
}

/// The evaluated obstruction: one s-number per partition longer than
/// d − r, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub degree: u32,
    pub sections: u32,
    pub entries: Vec<(Partition, BigRational)>,
    /// True when every entry is zero: the class passes the rational test.
    pub vanishes: bool,
    /// The first partition (canonical order) with a nonzero s-number.
    pub witness: Option<Partition>,
}

impl ObstructionReport {
    fn from_entries(
        degree: u32,
        sections: u32,
        entries: Vec<(Partition, BigRational)>,
    ) -> ObstructionReport {
        let witness = entries
            .iter()
            .find(|(_, v)| !v.is_zero())
            .map(|(p, _)| p.clone());
        ObstructionReport {
            degree,
            sections,
            vanishes: witness.is_none(),
            witness,
            entries,
        }
    }

    /// `{"d":3,"r":1,"entries":[{"omega":"[1,1,1]","value":"0"}],
    ///   "vanishes":true,"witness":null}`
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(omega, value)| {
                let mut entry = serde_json::Map::new();
                entry.insert("omega".into(), omega.to_string().into());
                entry.insert("value".into(), value.to_string().into());
                serde_json::Value::Object(entry)
            })
            .collect();
        let mut map = serde_json::Map::new();
        map.insert("d".into(), self.degree.into());
        map.insert("r".into(), self.sections.into());
        map.insert("entries".into(), entries.into());
        map.insert("vanishes".into(), self.vanishes.into());
        map.insert(
            "witness".into(),
            match &self.witness {
                Some(p) => p.to_string().into(),
                None => serde_json::Value::Null,
            },
        );
        serde_json::Value::Object(map)
    }
}

/// Partitions of d longer than d − r, in canonical order: the index set of
/// the obstruction.
pub fn long_partitions(d: u32, r: u32) -> Vec<Partition> {
    enumerate(d)
        .into_iter()
        .filter(|p| p.length() as u32 > d - r)
        .collect()
}

/// Evaluates the obstruction to r sections on a class of CP-products.
pub fn gamma_rational(
    class: &CobordismClass,
    sections: u32,
) -> Result<ObstructionReport, ObstructionError> {
    let d = class.degree();
    if sections > d {
        return Err(ObstructionError::TooManySections {
            degree: d,
            sections,
        });
    }
    let matrix = s_matrix(d)?;
    let coeffs = class.coefficient_vector();
    let entries = long_partitions(d, sections)
        .into_iter()
        .map(|omega| {
            let row = matrix.row(&omega).expect("long partitions are indexed");
            let value = row
                .iter()
                .zip(&coeffs)
                .map(|(s, c)| BigRational::from(s.clone()) * c)
                .sum();
            (omega, value)
        })
        .collect();
    Ok(ObstructionReport::from_entries(d, sections, entries))
}

/// Same test for a class specified only by its Chern numbers: the map
/// must cover every λ ⊢ d. Each s_ω is the s-polynomial contracted with
/// the supplied numbers, so no manifold presentation is needed.
pub fn gamma_rational_from_chern<F>(
    d: u32,
    sections: u32,
    chern_numbers: F,
) -> Result<ObstructionReport, ObstructionError>
where
    F: Fn(&Partition) -> Option<BigRational>,
{
    if sections > d {
        return Err(ObstructionError::TooManySections {
            degree: d,
            sections,
        });
    }
    let mut entries = Vec::new();
    for omega in long_partitions(d, sections) {
        let poly = s_polynomial(&omega)?;
        let mut value = BigRational::zero();
        for (lambda, coeff) in poly.terms() {
            let number =
                chern_numbers(lambda).ok_or_else(|| ObstructionError::MissingChernNumber {
                    lambda: lambda.clone(),
                })?;
            value += BigRational::from(coeff.clone()) * number;
        }
        entries.push((omega, value));
    }
    Ok(ObstructionReport::from_entries(d, sections, entries))
}

/// True when the class passes the rational r-section test.
pub fn admits_sections_rationally(
    class: &CobordismClass,
    sections: u32,
) -> Result<bool, ObstructionError> {
    Ok(gamma_rational(class, sections)?.vanishes)
}

/// An integral basis of the kernel of the obstruction on Ω^U_{2d} ⊗ ℚ:
/// primitive integer classes spanning {X : s_ω(X) = 0 for all l(ω) > d−r}.
/// The long rows sit inside a nonsingular matrix, so the kernel dimension
/// is the number of partitions of d with at most d − r parts.
pub fn kernel_basis(d: u32, sections: u32) -> Result<Vec<CobordismClass>, ObstructionError> {
    if d == 0 {
        return Err(ObstructionError::Algebra(AlgebraError::DegreeZero));
    }
    if sections > d {
        return Err(ObstructionError::TooManySections {
            degree: d,
            sections,
        });
    }
    let matrix = s_matrix(d)?;
    let long: Vec<Vec<BigInt>> = long_partitions(d, sections)
        .iter()
        .map(|omega| matrix.row(omega).unwrap().to_vec())
        .collect();
    let vectors = linalg::nullspace_primitive(&long, matrix.size());
    let models = matrix.partitions();
    vectors
        .into_iter()
        .map(|v| {
            let terms = models.iter().zip(v).map(|(lambda, coeff)| {
                (
                    crate::chern_geometry::ManifoldModel::from_partition(lambda).unwrap(),
                    BigRational::from(coeff),
                )
            });
            CobordismClass::from_terms(d, terms).map_err(ObstructionError::from)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_geometry::{chern_number, ManifoldModel};
    use crate::cobordism_algebra::construct_section_generator;
    use crate::partitions::count_constrained;
    use num_traits::One;
    use std::collections::HashMap;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn cp(n: u32) -> CobordismClass {
        CobordismClass::from_model(ManifoldModel::projective(n))
    }

    #[test]
    fn long_partition_selection() {
        assert_eq!(long_partitions(3, 1), vec![p(&[1, 1, 1])]);
        assert_eq!(long_partitions(3, 2), vec![p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(
            long_partitions(3, 3),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert!(long_partitions(3, 0).is_empty());
    }

    #[test]
    fn projective_plane_is_obstructed() {
        let report = gamma_rational(&cp(2), 1).unwrap();
        assert_eq!(report.entries, vec![(p(&[1, 1]), rat(3))]);
        assert!(!report.vanishes);
        assert_eq!(report.witness, Some(p(&[1, 1])));
        assert!(!admits_sections_rationally(&cp(2), 1).unwrap());
    }

    #[test]
    fn section_generators_pass_below_top() {
        for d in 2..=6u32 {
            let x = construct_section_generator(d).unwrap().class;
            for r in 0..d {
                let report = gamma_rational(&x, r).unwrap();
                assert!(report.vanishes, "d={d}, r={r}");
            }
            // r = d demands every s-number vanish, including s_(d) = c ≠ 0
            let full = gamma_rational(&x, d).unwrap();
            assert!(!full.vanishes, "d={d}");
            assert_eq!(full.witness, Some(Partition::single(d)));
        }
    }

    #[test]
    fn vanishing_is_monotone_in_r() {
        // passing the r-section test implies passing it for fewer sections
        for d in 1..=5u32 {
            for lambda in enumerate(d) {
                let class =
                    CobordismClass::from_model(ManifoldModel::from_partition(&lambda).unwrap());
                let admitted: Vec<bool> = (0..=d)
                    .map(|r| admits_sections_rationally(&class, r).unwrap())
                    .collect();
                assert!(admitted[0], "λ={lambda}: r = 0 is vacuous");
                for r in 1..admitted.len() {
                    if admitted[r] {
                        assert!(admitted[r - 1], "λ={lambda}, r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn too_many_sections_is_an_error() {
        assert_eq!(
            gamma_rational(&cp(2), 3).unwrap_err(),
            ObstructionError::TooManySections {
                degree: 2,
                sections: 3
            }
        );
        assert_eq!(
            kernel_basis(2, 5).unwrap_err(),
            ObstructionError::TooManySections {
                degree: 2,
                sections: 5
            }
        );
    }

    #[test]
    fn chern_number_route_agrees() {
        for d in 1..=5u32 {
            for lambda in enumerate(d) {
                let model = ManifoldModel::from_partition(&lambda).unwrap();
                let numbers: HashMap<Partition, BigRational> = enumerate(d)
                    .into_iter()
                    .map(|mu| {
                        let value = chern_number(&model, &mu).unwrap();
                        (mu, BigRational::from(value))
                    })
                    .collect();
                let class = CobordismClass::from_model(model);
                for r in 0..=d {
                    let direct = gamma_rational(&class, r).unwrap();
                    let via_chern =
                        gamma_rational_from_chern(d, r, |k| numbers.get(k).cloned()).unwrap();
                    assert_eq!(direct, via_chern, "λ={lambda}, r={r}");
                }
            }
        }
    }

    #[test]
    fn missing_chern_number_is_reported() {
        let err = gamma_rational_from_chern(3, 2, |k| {
            (k != &p(&[3])).then(BigRational::one)
        })
        .unwrap_err();
        assert_eq!(
            err,
            ObstructionError::MissingChernNumber { lambda: p(&[3]) }
        );
    }

    #[test]
    fn kernel_dimensions_and_membership() {
        for d in 1..=6u32 {
            for r in 0..=d {
                let basis = kernel_basis(d, r).unwrap();
                let expected = count_constrained(d, Some(d - r), None);
                assert_eq!(basis.len() as u64, expected, "d={d}, r={r}");
                for class in &basis {
                    assert!(class.is_integral());
                    assert!(
                        admits_sections_rationally(class, r).unwrap(),
                        "d={d}, r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_at_full_sections_is_zero() {
        // r = d forces every s-number to vanish, and the s-matrix is
        // nonsingular, so only the zero class passes
        for d in 1..=5u32 {
            assert!(kernel_basis(d, d).unwrap().is_empty(), "d={d}");
        }
    }

    #[test]
    fn report_json_shape() {
        let x = construct_section_generator(3).unwrap().class;
        let report = gamma_rational(&x, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&report.to_json()).unwrap(),
            r#"{"d":3,"r":1,"entries":[{"omega":"[1,1,1]","value":"0"}],"vanishes":true,"witness":null}"#
        );
        let bad = gamma_rational(&cp(2), 1).unwrap();
        assert_eq!(
            serde_json::to_string(&bad.to_json()).unwrap(),
            r#"{"d":2,"r":1,"entries":[{"omega":"[1,1]","value":"3"}],"vanishes":false,"witness":"[1,1]"}"#
        );
    }
}
