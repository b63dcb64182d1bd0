//! Structure-constant representation of an omega-Lie algebra and the
//! machinery that checks its two defining identities.
//!
//! An omega-Lie algebra is a vector space with an antisymmetric bracket and a
//! skew form `ω` such that
//!
//! ```text
//! [[x,y],z] + [[y,z],x] + [[z,x],y] = ω(x,y) z + ω(y,z) x + ω(z,x) y
//! ```
//!
//! for all `x, y, z`. In dimension three and above the bracket determines `ω`
//! uniquely, so `ω` is optional on input and is recovered when missing.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{unit_vector, zero_vector, Matrix};
use crate::scalar::Scalar;

/// Smallest dimension accepted; below this `ω` is not bracket-determined.
pub const MIN_DIM: usize = 3;

#[derive(Clone, PartialEq, Eq)]
pub struct OmegaAlgebra {
    dim: usize,
    /// `tensor[(i*n + j)*n + k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    tensor: Vec<Scalar>,
    omega: Option<Matrix>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntisymmetryViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `c[i][j][k] + c[j][i][k]`, which should vanish.
    pub sum: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaSkewViolation {
    pub i: usize,
    pub j: usize,
    /// `ω_ij + ω_ji`, which should vanish.
    pub sum: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaMismatch {
    pub i: usize,
    pub j: usize,
    pub supplied: Scalar,
    pub recovered: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiResidual {
    pub triple: [usize; 3],
    pub labels: [String; 3],
    pub residual: Vec<Scalar>,
}

/// Every violation found by [`OmegaAlgebra::axiom_check`]. Lists are sorted
/// lexicographically by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub antisymmetry_violations: Vec<AntisymmetryViolation>,
    pub omega_skew_violations: Vec<OmegaSkewViolation>,
    /// Entries where a supplied `ω` disagrees with the one the bracket forces.
    pub omega_mismatches: Vec<OmegaMismatch>,
    pub jacobi_residuals: Vec<JacobiResidual>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty()
            && self.omega_skew_violations.is_empty()
            && self.omega_mismatches.is_empty()
            && self.jacobi_residuals.is_empty()
    }

    pub fn residual_for(&self, triple: [usize; 3]) -> Option<&JacobiResidual> {
        self.jacobi_residuals.iter().find(|r| r.triple == triple)
    }
}

/// Incremental construction of a structure-constant table. Brackets are
/// entered once per unordered pair; the antisymmetric partner is implied.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    dim: usize,
    tensor: Vec<Scalar>,
    omega: Matrix,
    labels: Vec<String>,
}

impl AlgebraBuilder {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Self {
        let dim = labels.len();
        AlgebraBuilder {
            dim,
            tensor: vec![Scalar::zero(); dim * dim * dim],
            omega: Matrix::zeros(dim, dim),
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `value * e_k` to `[e_i, e_j]` (and subtracts it from `[e_j, e_i]`).
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, value: &Scalar) -> &mut Self {
        let n = self.dim;
        self.tensor[(i * n + j) * n + k] += value;
        self.tensor[(j * n + i) * n + k] -= value;
        self
    }

    /// Adds the vector `value` to `[e_i, e_j]`.
    pub fn add_vector(&mut self, i: usize, j: usize, value: &[Scalar]) -> &mut Self {
        for (k, v) in value.iter().enumerate() {
            if !v.is_zero() {
                self.add_term(i, j, k, v);
            }
        }
        self
    }

    /// Adds `value` to `ω(e_i, e_j)` (and subtracts it from `ω(e_j, e_i)`).
    pub fn add_omega(&mut self, i: usize, j: usize, value: &Scalar) -> &mut Self {
        self.omega[(i, j)] += value;
        self.omega[(j, i)] -= value;
        self
    }

    pub fn build(&self) -> Result<OmegaAlgebra> {
        OmegaAlgebra::new(self.labels.clone(), self.tensor.clone(), Some(self.omega.clone()))
    }

    /// Builds without a form; `ω` will be recovered from the bracket on demand.
    pub fn build_without_omega(&self) -> Result<OmegaAlgebra> {
        OmegaAlgebra::new(self.labels.clone(), self.tensor.clone(), None)
    }
}

impl OmegaAlgebra {
    /// Wraps raw data. Only shapes, label uniqueness and the minimum dimension
    /// are checked here; the axioms are checked by [`Self::axiom_check`].
    pub fn new(labels: Vec<String>, tensor: Vec<Scalar>, omega: Option<Matrix>) -> Result<Self> {
        let dim = labels.len();
        if dim < MIN_DIM {
            return Err(Error::DimensionTooSmall(dim, MIN_DIM));
        }
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: tensor.len(),
            });
        }
        if let Some(w) = &omega {
            if w.rows() != dim || w.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if w.rows() != dim { w.rows() } else { w.cols() },
                });
            }
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(OmegaAlgebra {
            dim,
            tensor,
            omega,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a coefficient slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.tensor[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// The supplied form, if any.
    pub fn omega(&self) -> Option<&Matrix> {
        self.omega.as_ref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        let rebuilt = OmegaAlgebra::new(labels, self.tensor, self.omega)?;
        self = rebuilt;
        Ok(self)
    }

    /// Replaces the stored form with the recovered one.
    pub fn with_recovered_omega(self) -> Result<Self> {
        let w = self.recover_omega()?;
        Ok(OmegaAlgebra {
            omega: Some(w),
            ..self
        })
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the bracket: `Σ u_i v_j [e_i, e_j]`.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let coeff = ui * vj;
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&coeff * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[[u,v],w] + [[v,w],u] + [[w,u],v]`.
    pub fn jacobiator(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>> {
        let a = self.bracket(&self.bracket(u, v)?, w)?;
        let b = self.bracket(&self.bracket(v, w)?, u)?;
        let c = self.bracket(&self.bracket(w, u)?, v)?;
        Ok(a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect())
    }

    fn basis_jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.dim;
        self.jacobiator(&unit_vector(n, i), &unit_vector(n, j), &unit_vector(n, k))
            .expect("basis vectors have the right length")
    }

    /// The matrix of `ad u = [u, ·]`; column `j` is `[u, e_j]`.
    pub fn ad_matrix(&self, u: &[Scalar]) -> Result<Matrix> {
        self.check_len(u)?;
        let n = self.dim;
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.bracket(u, &unit_vector(n, j)))
            .collect::<Result<_>>()?;
        Matrix::from_columns(n, &columns)
    }

    /// Solves for the unique skew `ω` compatible with the bracket.
    ///
    /// Unknowns are `ω_ij` for `i < j`. Each basis triple `i < j < k` gives
    /// one equation per output coordinate:
    /// `J(e_i,e_j,e_k) = ω_ij e_k + ω_jk e_i − ω_ik e_j`.
    pub fn recover_omega(&self) -> Result<Matrix> {
        let n = self.dim;
        if n < MIN_DIM {
            return Err(Error::DimensionTooSmall(n, MIN_DIM));
        }
        let pair_index = |a: usize, b: usize| -> usize {
            debug_assert!(a < b);
            a * n - a * (a + 1) / 2 + (b - a - 1)
        };
        let unknowns = n * (n - 1) / 2;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = self.basis_jacobiator(i, j, k);
                    for (m, value) in jac.into_iter().enumerate() {
                        let mut row = zero_vector(unknowns);
                        if m == k {
                            row[pair_index(i, j)] = Scalar::one();
                        } else if m == i {
                            row[pair_index(j, k)] = Scalar::one();
                        } else if m == j {
                            row[pair_index(i, k)] = -Scalar::one();
                        }
                        rows.push(row);
                        rhs.push(value);
                    }
                }
            }
        }
        let system = Matrix::from_rows(unknowns, rows)?;
        let (solution, kernel) = system.solve(&rhs)?.ok_or(Error::NotOmegaLie)?;
        debug_assert!(kernel.is_empty(), "omega is unique for n >= 3");
        let mut w = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = &solution[pair_index(i, j)];
                w[(i, j)] = v.clone();
                w[(j, i)] = -v;
            }
        }
        Ok(w)
    }

    /// The supplied `ω` or, when absent, the recovered one.
    pub fn effective_omega(&self) -> Result<Matrix> {
        match &self.omega {
            Some(w) => Ok(w.clone()),
            None => self.recover_omega(),
        }
    }

    /// A deterministic stand-in for `ω` used only to phrase residuals when no
    /// compatible form exists: `ω_ij` is read off the triple with the smallest
    /// third index.
    fn candidate_omega(&self) -> Matrix {
        let n = self.dim;
        let mut w = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let k = (0..n).find(|&k| k != i && k != j).expect("n >= 3");
                let v = self.basis_jacobiator(i, j, k)[k].clone();
                w[(i, j)] = v.clone();
                w[(j, i)] = -v;
            }
        }
        w
    }

    /// Checks both axioms exactly and lists every violation.
    pub fn axiom_check(&self) -> AxiomReport {
        let n = self.dim;
        let mut report = AxiomReport::default();

        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let sum = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    if !sum.is_zero() {
                        report.antisymmetry_violations.push(AntisymmetryViolation { i, j, k, sum });
                    }
                }
            }
        }

        let recovered = self.recover_omega();
        let omega = match (&self.omega, &recovered) {
            (Some(w), rec) => {
                for i in 0..n {
                    for j in i..n {
                        let sum = &w[(i, j)] + &w[(j, i)];
                        if !sum.is_zero() {
                            report.omega_skew_violations.push(OmegaSkewViolation { i, j, sum });
                        }
                    }
                }
                if let Ok(r) = rec {
                    for i in 0..n {
                        for j in i + 1..n {
                            if w[(i, j)] != r[(i, j)] {
                                report.omega_mismatches.push(OmegaMismatch {
                                    i,
                                    j,
                                    supplied: w[(i, j)].clone(),
                                    recovered: r[(i, j)].clone(),
                                });
                            }
                        }
                    }
                }
                w.clone()
            }
            (None, Ok(r)) => r.clone(),
            (None, Err(_)) => self.candidate_omega(),
        };

        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut residual = self.basis_jacobiator(i, j, k);
                    residual[k] -= &omega[(i, j)];
                    residual[i] -= &omega[(j, k)];
                    residual[j] -= &omega[(k, i)];
                    if residual.iter().any(|r| !r.is_zero()) {
                        report.jacobi_residuals.push(JacobiResidual {
                            triple: [i, j, k],
                            labels: [self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()],
                            residual,
                        });
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.axiom_check().is_valid()
    }

    /// Errors with [`Error::InvalidAlgebra`] unless the axioms hold.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.axiom_check();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(Box::new(report)))
        }
    }

    /// Re-expresses the algebra in the basis formed by the columns of `p`:
    /// `[u,v]' = p⁻¹ [p u, p v]` and `ω'(u,v) = ω(p u, p v)`.
    pub fn change_of_basis(&self, p: &Matrix) -> Result<OmegaAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if p.rows() != n { p.rows() } else { p.cols() },
            });
        }
        let p_inv = p.invert()?;
        let columns: Vec<Vec<Scalar>> = (0..n).map(|j| p.column(j)).collect();
        let mut tensor = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let image = p_inv.mul_vec(&self.bracket(&columns[i], &columns[j])?)?;
                for (k, v) in image.into_iter().enumerate() {
                    tensor[(i * n + j) * n + k] = v;
                }
            }
        }
        let omega = match &self.omega {
            Some(w) => Some(p.transpose().mul(w)?.mul(p)?),
            None => None,
        };
        OmegaAlgebra::new(self.labels.clone(), tensor, omega)
    }

    /// Equal structure constants and equal (effective) forms, ignoring labels.
    pub fn same_structure(&self, other: &OmegaAlgebra) -> bool {
        if self.dim != other.dim || self.tensor != other.tensor {
            return false;
        }
        match (self.effective_omega(), other.effective_omega()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl std::fmt::Debug for OmegaAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<String> = self
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| format!("{c}*{}", self.labels[k]))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(format!("[{},{}]={}", self.labels[i], self.labels[j], terms.join("+")));
                }
            }
        }
        f.debug_struct("OmegaAlgebra")
            .field("labels", &self.labels)
            .field("brackets", &brackets)
            .field("omega", &self.omega)
            .finish()
    }
}
