use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{fmt_scalar, Scalar};

/// Finite-dimensional Lie algebra given by structure constants
/// `[x_i, x_j] = sum_k c[i][j][k] x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiePresentation {
    names: Vec<String>,
    c: Vec<Vec<Vec<Scalar>>>,
}

impl LiePresentation {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let m = names.len();
        if m == 0 || m > 64 {
            return Err(Error::Presentation(format!("need 1..=64 generators, got {m}")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Presentation(format!("duplicate generator `{n}`")));
            }
        }
        if c.len() != m || c.iter().any(|r| r.len() != m || r.iter().any(|v| v.len() != m)) {
            return Err(Error::Presentation("structure constant array has wrong shape".into()));
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::Presentation(format!(
                            "antisymmetry fails for [{}, {}]",
                            names[i], names[j]
                        )));
                    }
                }
            }
        }
        let p = LiePresentation { names, c };
        // sum_l c^l_{ij} c^r_{lk} + cyclic = 0
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for r in 0..m {
                        let mut acc = Scalar::zero();
                        for l in 0..m {
                            acc += &p.c[i][j][l] * &p.c[l][k][r];
                            acc += &p.c[j][k][l] * &p.c[l][i][r];
                            acc += &p.c[k][i][l] * &p.c[l][j][r];
                        }
                        if !acc.is_zero() {
                            return Err(Error::Presentation(format!(
                                "Jacobi identity fails for ({}, {}, {})",
                                p.names[i], p.names[j], p.names[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    /// Builds from a list of brackets `[a, b] = sum c x_k`; the opposite
    /// brackets are filled in by antisymmetry.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Self> {
        let m = names.len();
        let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
        let mut seen = vec![vec![false; m]; m];
        for (a, b, terms) in brackets {
            let (a, b) = (*a, *b);
            if a >= m || b >= m || terms.iter().any(|t| t.0 >= m) {
                return Err(Error::Presentation("generator index out of range".into()));
            }
            if a == b && terms.iter().any(|t| !t.1.is_zero()) {
                return Err(Error::Presentation(format!("[{0}, {0}] must vanish", names[a])));
            }
            let mut row = vec![Scalar::zero(); m];
            for (k, v) in terms {
                row[*k] += v.clone();
            }
            for (k, v) in row.into_iter().enumerate() {
                if seen[a][b] && c[a][b][k] != v {
                    return Err(Error::Presentation(format!(
                        "conflicting brackets for [{}, {}]",
                        names[a], names[b]
                    )));
                }
                if seen[b][a] && c[b][a][k] != -v.clone() {
                    return Err(Error::Presentation(format!(
                        "antisymmetry fails for [{}, {}]",
                        names[a], names[b]
                    )));
                }
                c[a][b][k] = v.clone();
                c[b][a][k] = -v;
            }
            seen[a][b] = true;
        }
        Self::new(names, c)
    }

    pub fn abelian(names: Vec<String>) -> Result<Self> {
        let m = names.len();
        Self::new(names, vec![vec![vec![Scalar::zero(); m]; m]; m])
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[i][j][k]
    }

    /// Nonzero terms of `[x_i, x_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        self.c[i][j]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|v| v.is_zero())
    }

    pub fn describe_bracket(&self, i: usize, j: usize) -> String {
        let terms: Vec<String> = self
            .bracket(i, j)
            .into_iter()
            .map(|(k, v)| format!("{} {}", fmt_scalar(&v), self.names[k]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
