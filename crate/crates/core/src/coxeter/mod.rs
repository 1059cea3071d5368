//! Coxeter systems and exact group arithmetic.

mod group;
mod parabolic;
pub mod ring;

pub use group::{CoxeterGroup, Element, RootVector, Side, DEFAULT_CAP};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use ring::CoeffRing;

/// One Coxeter-matrix entry: `Some(m)` or `None` for infinity.
pub type Entry = Option<u32>;

/// Coxeter matrix, generator labels and a diagram involution (`star`).
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    labels: Vec<String>,
    matrix: Vec<Vec<Entry>>,
    star: Vec<usize>,
    ring: CoeffRing,
}

impl CoxeterSystem {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Entry>>, star: Vec<usize>) -> Result<Self> {
        let n = matrix.len();
        let bad = |msg: String| Err(Error::InvalidSystem(msg));
        if n == 0 {
            return bad("rank must be positive".into());
        }
        if n > 64 {
            return bad("rank above 64 is not supported".into());
        }
        if labels.len() != n {
            return bad(format!("{} labels for rank {n}", labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains('.') {
                return bad(format!("label {i} ({l:?}) must be nonempty and contain no '.'"));
            }
            if labels[..i].contains(l) {
                return bad(format!("duplicate label {l:?}"));
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            if row[i] != Some(1) {
                return bad(format!("diagonal entry m[{i}][{i}] must be 1"));
            }
            for j in 0..n {
                if matrix[j].len() == n && row[j] != matrix[j][i] {
                    return bad(format!("matrix not symmetric at ({i},{j})"));
                }
                if i != j && matches!(row[j], Some(m) if m < 2) {
                    return bad(format!("off-diagonal entry m[{i}][{j}] must be >= 2 or inf"));
                }
            }
        }
        if star.len() != n || star.iter().any(|&s| s >= n) {
            return bad("star must be a permutation of the generator indices".into());
        }
        for s in 0..n {
            if star[star[s]] != s {
                return bad(format!("star is not an involution at generator {s}"));
            }
            for t in 0..n {
                if matrix[star[s]][star[t]] != matrix[s][t] {
                    return bad(format!(
                        "star does not preserve the matrix: m({s},{t}) != m({},{})",
                        star[s], star[t]
                    ));
                }
            }
        }
        let ring = CoeffRing::for_entries(matrix.iter().flatten().filter_map(|&m| m));
        Ok(CoxeterSystem { labels, matrix, star, ring })
    }

    /// Labels `0, 1, ..., n-1`.
    pub fn with_default_labels(matrix: Vec<Vec<Entry>>, star: Vec<usize>) -> Result<Self> {
        let labels = (0..matrix.len()).map(|i| i.to_string()).collect();
        CoxeterSystem::new(labels, matrix, star)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn m(&self, s: usize, t: usize) -> Entry {
        self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<Entry>] {
        &self.matrix
    }

    pub fn star(&self) -> &[usize] {
        &self.star
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Same matrix and labels, different star.
    pub fn with_star(&self, star: Vec<usize>) -> Result<Self> {
        CoxeterSystem::new(self.labels.clone(), self.matrix.clone(), star)
    }

    /// Relabels generators so that new index `i` is old index `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.rank();
        let mut inv = vec![0; n];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let matrix = order
            .iter()
            .map(|&a| order.iter().map(|&b| self.matrix[a][b]).collect())
            .collect();
        let star = order.iter().map(|&o| inv[self.star[o]]).collect();
        CoxeterSystem::new(labels, matrix, star)
    }

    /// Builds the group for this system with the default element cap.
    pub fn group(&self) -> std::sync::Arc<CoxeterGroup> {
        std::sync::Arc::new(CoxeterGroup::new(self.clone()).expect("ring constants are in range"))
    }

    pub fn from_descriptor(d: &SystemDescriptor) -> Result<Self> {
        let n = d.matrix.len();
        let labels = d.labels.clone().unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let matrix = d
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.to_entry()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let star = d.star.clone().unwrap_or_else(|| (0..n).collect());
        CoxeterSystem::new(labels, matrix, star)
    }

    pub fn to_descriptor(&self) -> SystemDescriptor {
        SystemDescriptor {
            labels: Some(self.labels.clone()),
            matrix: self
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| match e {
                            Some(m) => MatrixEntry::Int(*m),
                            None => MatrixEntry::Str("inf".into()),
                        })
                        .collect()
                })
                .collect(),
            star: Some(self.star.clone()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: SystemDescriptor = serde_json::from_str(text)?;
        CoxeterSystem::from_descriptor(&d)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        CoxeterSystem::from_json(&std::fs::read_to_string(path)?)
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} on [{}]", self.rank(), self.labels.join(","))
    }
}

/// On-disk form: `{"labels": [...], "matrix": [[...]], "star": [...]}` with `"inf"` allowed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub matrix: Vec<Vec<MatrixEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Int(u32),
    Str(String),
}

impl MatrixEntry {
    fn to_entry(&self) -> Result<Entry> {
        match self {
            MatrixEntry::Int(m) => Ok(Some(*m)),
            MatrixEntry::Str(s) if s == "inf" || s == "∞" => Ok(None),
            MatrixEntry::Str(s) => s
                .parse::<u32>()
                .map(Some)
                .map_err(|_| Error::InvalidSystem(format!("matrix entry {s:?} is not an integer or \"inf\""))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(star: Vec<usize>) -> Result<CoxeterSystem> {
        CoxeterSystem::new(vec!["s".into(), "t".into()], vec![vec![Some(1), Some(3)], vec![Some(3), Some(1)]], star)
    }

    #[test]
    fn rejects_malformed() {
        let asym = CoxeterSystem::with_default_labels(vec![vec![Some(1), Some(3)], vec![Some(4), Some(1)]], vec![0, 1]);
        assert!(matches!(asym, Err(Error::InvalidSystem(m)) if m.contains("symmetric")));
        let diag = CoxeterSystem::with_default_labels(vec![vec![Some(2), Some(3)], vec![Some(3), Some(1)]], vec![0, 1]);
        assert!(matches!(diag, Err(Error::InvalidSystem(m)) if m.contains("diagonal")));
        let b3 = vec![
            vec![Some(1), Some(4), Some(2)],
            vec![Some(4), Some(1), Some(3)],
            vec![Some(2), Some(3), Some(1)],
        ];
        let bad_star = CoxeterSystem::with_default_labels(b3, vec![2, 1, 0]);
        assert!(matches!(bad_star, Err(Error::InvalidSystem(m)) if m.contains("preserve")));
    }

    #[test]
    fn accepts_swap_on_a2() {
        assert!(a2(vec![1, 0]).is_ok());
        assert_eq!(a2(vec![0, 1]).unwrap().ring().degree(), 1);
    }

    #[test]
    fn descriptor_with_infinity() {
        let sys = CoxeterSystem::from_json(r#"{"labels":["0","1"],"matrix":[[1,"inf"],["inf",1]],"star":[0,1]}"#).unwrap();
        assert_eq!(sys.m(0, 1), None);
        let back = serde_json::to_string(&sys.to_descriptor()).unwrap();
        assert!(back.contains("\"inf\""));
    }
}
