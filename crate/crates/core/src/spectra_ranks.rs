//! Rank bookkeeping for the section Thom spectra.
//!
//! Rationally, everything in sight is a free graded module whose ranks
//! are partition counts: MTU(d) has the ranks of ℤ[c_1,...,c_d], the
//! relative spectrum MTU(d,r) the ranks of the ideal generated by
//! c_{d−r+1},...,c_d, and the colimit M̄TU(d) counts partitions forced to
//! use a part above d. Degrees are indexed by q with the geometric
//! grading 2q; odd topological degrees carry rank zero throughout.

use std::fmt;

use thiserror::Error;

use crate::obstruction::{kernel_basis, long_partitions, ObstructionError};
use crate::partitions::{count_constrained, count_partitions};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("r = {sections} exceeds d = {degree}")]
    SectionsExceedDegree { degree: u32, sections: u32 },
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
}

/// Rank of H^{2q}(MTU(d); ℚ): partitions of q with parts ≤ d.
pub fn rank_mtu(d: u32, q: u32) -> u64 {
    count_constrained(q, Some(d), None)
}

/// Rank of H^{2q}(MTU(d,r); ℚ): partitions of q with parts ≤ d and at
/// least one part ≥ d−r+1.
pub fn rank_mtu_rel(d: u32, r: u32, q: u32) -> Result<u64, RankError> {
    if r > d {
        return Err(RankError::SectionsExceedDegree {
            degree: d,
            sections: r,
        });
    }
    Ok(count_constrained(q, Some(d), Some(d - r + 1)))
}

/// Rank of H^{2q}(M̄TU(d); ℚ): partitions of q with a part ≥ d+1 — the
/// stable value of rank_mtu_rel(d+k, k, q) once k is large.
pub fn rank_mtu_bar(d: u32, q: u32) -> u64 {
    count_constrained(q, None, Some(d + 1))
}

/// Which spectrum a rank table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumTag {
    Mtu { d: u32 },
    MtuRel { d: u32, r: u32 },
    MtuBar { d: u32 },
}

impl fmt::Display for SpectrumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumTag::Mtu { d } => write!(f, "MTU({d})"),
            SpectrumTag::MtuRel { d, r } => write!(f, "MTU({d},{r})"),
            SpectrumTag::MtuBar { d } => write!(f, "MTUbar({d})"),
        }
    }
}

/// Ranks of one spectrum through degree 2·q_max. Only even degrees are
/// listed; odd ones are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub tag: SpectrumTag,
    /// (topological degree 2q, rank) for q = 0..=q_max.
    pub ranks: Vec<(u32, u64)>,
}

pub fn rank_table(tag: SpectrumTag, q_max: u32) -> Result<RankTable, RankError> {
    let mut ranks = Vec::with_capacity(q_max as usize + 1);
    for q in 0..=q_max {
        let rank = match tag {
            SpectrumTag::Mtu { d } => rank_mtu(d, q),
            SpectrumTag::MtuRel { d, r } => rank_mtu_rel(d, r, q)?,
            SpectrumTag::MtuBar { d } => rank_mtu_bar(d, q),
        };
        ranks.push((2 * q, rank));
    }
    Ok(RankTable { tag, ranks })
}

impl RankTable {
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("spectrum".into(), self.tag.to_string().into());
        map.insert(
            "ranks".into(),
            self.ranks
                .iter()
                .map(|&(deg, rank)| serde_json::json!({"degree": deg, "rank": rank}))
                .collect::<Vec<_>>()
                .into(),
        );
        serde_json::Value::Object(map)
    }
}

/// The degree-2d splitting audit: i + j must exhaust p(d), with i the
/// kernel dimension of the obstruction and j the number of partitions it
/// watches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    pub degree: u32,
    pub sections: u32,
    /// rank of H^{2d}(MTU(d−r); ℚ) — partitions of d with parts ≤ d−r.
    pub i: u64,
    /// rank of H^{2d}(M̄TU(d−r); ℚ) — partitions of d with a part > d−r.
    pub j: u64,
    /// p(d), the rank of Ω^U_{2d} ⊗ ℚ.
    pub p: u64,
    pub consistent: bool,
}

impl SplittingReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.degree,
            "r": self.sections,
            "i": self.i,
            "j": self.j,
            "p": self.p,
            "consistent": self.consistent,
        })
    }
}

/// Checks the rank splitting in degree 2d: i = rank_mtu(d−r, d),
/// j = rank_mtu_bar(d−r, d), p = p(d). Consistency demands i + j = p,
/// that j agree with the count of partitions longer than d−r (conjugation),
/// and that i match the dimension of the computed obstruction kernel.
pub fn splitting_check(d: u32, r: u32) -> Result<SplittingReport, RankError> {
    if r > d {
        return Err(RankError::SectionsExceedDegree {
            degree: d,
            sections: r,
        });
    }
    let i = rank_mtu(d - r, d);
    let j = rank_mtu_bar(d - r, d);
    let p = count_partitions(d);
    let long = long_partitions(d, r).len() as u64;
    let kernel_dim = kernel_basis(d, r)?.len() as u64;
    Ok(SplittingReport {
        degree: d,
        sections: r,
        i,
        j,
        p,
        consistent: i + j == p && j == long && i == kernel_dim,
    })
}

/// Rank-level shadow of the stabilization isomorphism: true iff
/// rank_mtu_rel(d, r, q) = rank_mtu_rel(d+k, r+k, q) for all q ≤ q_max.
/// The underlying isomorphism only covers q ≤ d; asking beyond that
/// simply reports whether the ranks still happen to agree.
pub fn stabilization_check(d: u32, r: u32, k: u32, q_max: u32) -> Result<bool, RankError> {
    if r > d {
        return Err(RankError::SectionsExceedDegree {
            degree: d,
            sections: r,
        });
    }
    for q in 0..=q_max {
        if rank_mtu_rel(d, r, q)? != rank_mtu_rel(d + k, r + k, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mtu_ranks() {
        for d in 0..=6 {
            assert_eq!(rank_mtu(d, 0), 1, "Thom class, d={d}");
        }
        assert_eq!(rank_mtu(2, 3), 2); // (2,1), (1,1,1)
        assert_eq!(rank_mtu(0, 5), 0);
        for q in 0..=8u32 {
            for d in q..=10 {
                assert_eq!(rank_mtu(d, q), count_partitions(q), "slack constraint");
            }
        }
    }

    #[test]
    fn relative_ranks() {
        assert_eq!(rank_mtu_rel(3, 1, 3).unwrap(), 1); // only (3)
        for d in 1..=8u32 {
            for r in 0..=d {
                for q in 0..=(d.saturating_sub(r)) {
                    assert_eq!(rank_mtu_rel(d, r, q).unwrap(), 0, "d={d} r={r} q={q}");
                }
            }
        }
        assert_eq!(
            rank_mtu_rel(2, 3, 1).unwrap_err(),
            RankError::SectionsExceedDegree {
                degree: 2,
                sections: 3
            }
        );
    }

    #[test]
    fn connectivity_bound_is_sharp() {
        // first nonzero rank of MTU(d,r) sits at q = d−r+1
        for d in 1..=8u32 {
            for r in 1..=d {
                let first = (0..=d + 2)
                    .find(|&q| rank_mtu_rel(d, r, q).unwrap() > 0)
                    .unwrap();
                assert_eq!(first, d - r + 1, "d={d}, r={r}");
            }
        }
    }

    #[test]
    fn bar_ranks() {
        assert_eq!(rank_mtu_bar(2, 3), 1); // only (3)
        for q in 1..=10 {
            assert_eq!(rank_mtu_bar(0, q), count_partitions(q));
        }
        for d in 0..=8u32 {
            for q in 0..=d {
                assert_eq!(rank_mtu_bar(d, q), 0, "d={d} q={q}");
            }
            assert_eq!(rank_mtu_bar(d, d + 1), 1, "exactly ({})", d + 1);
        }
    }

    #[test]
    fn exactness_shadow() {
        // MTU(d−r) ↪ MTU(d) ↠ MTU(d,r) at the level of ranks
        for d in 1..=10u32 {
            for r in 0..=d {
                for q in 0..=10 {
                    assert_eq!(
                        rank_mtu_rel(d, r, q).unwrap(),
                        rank_mtu(d, q) - rank_mtu(d - r, q),
                        "d={d} r={r} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn splitting_reports() {
        let report = splitting_check(3, 1).unwrap();
        assert_eq!((report.i, report.j, report.p), (2, 1, 3));
        assert!(report.consistent);

        for d in 1..=6u32 {
            for r in 0..=d {
                let rep = splitting_check(d, r).unwrap();
                assert!(rep.consistent, "d={d} r={r}");
                assert_eq!(rep.i + rep.j, count_partitions(d));
            }
        }
    }

    #[test]
    fn j_three_ways() {
        for d in 1..=8u32 {
            for r in 0..=d {
                let via_bar = rank_mtu_bar(d - r, d);
                let via_length = long_partitions(d, r).len() as u64;
                let via_complement = count_partitions(d) - rank_mtu(d - r, d);
                assert_eq!(via_bar, via_length, "d={d} r={r}");
                assert_eq!(via_bar, via_complement, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn stabilization() {
        for d in 1..=6u32 {
            for r in 0..=d {
                for k in 0..=3 {
                    assert!(
                        stabilization_check(d, r, k, d).unwrap(),
                        "d={d} r={r} k={k}"
                    );
                }
            }
        }
        // beyond the guaranteed range the ranks genuinely drift apart
        assert!(!stabilization_check(1, 1, 1, 2).unwrap());
    }

    #[test]
    fn tables_and_json() {
        let table = rank_table(SpectrumTag::MtuRel { d: 3, r: 1 }, 4).unwrap();
        assert_eq!(table.tag.to_string(), "MTU(3,1)");
        assert_eq!(
            table.ranks,
            vec![(0, 0), (2, 0), (4, 0), (6, 1), (8, 1)]
        );
        let json = table.to_json();
        assert_eq!(json["spectrum"], serde_json::json!("MTU(3,1)"));
        assert_eq!(json["ranks"][3], serde_json::json!({"degree": 6, "rank": 1}));

        assert_eq!(SpectrumTag::Mtu { d: 2 }.to_string(), "MTU(2)");
        assert_eq!(SpectrumTag::MtuBar { d: 2 }.to_string(), "MTUbar(2)");

        let splitting = splitting_check(3, 1).unwrap().to_json();
        assert_eq!(
            serde_json::to_string(&splitting).unwrap(),
            r#"{"d":3,"r":1,"i":2,"j":1,"p":3,"consistent":true}"#
        );
    }
}
