//! The nontrivial omega-Lie algebras of dimensions 3 and 4.
//!
//! Tables are stored as data: each nonzero bracket and form entry is an
//! affine function `constant + coeff·α` of the family parameter. Basis order
//! is `(x, y, z)` in dimension 3 and `(x, y, z, e)` in dimension 4.
//!
//! Three dimension-4 tables differ from the commonly quoted forms because the
//! quoted forms violate the omega-Jacobi identity:
//! `L_1_1` uses `[e,y] = −e` (it is the α = 0 member of `E_1_alpha`),
//! `F_1_alpha` uses `ω(x,y) = 1`, and `Bt` has no `[e,y]` term.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{AlgebraBuilder, OmegaAlgebra};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const E: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogLabel {
    L1,
    L2,
    AAlpha,
    B,
    CAlpha,
    L11,
    L12,
    L13,
    L14,
    L15,
    L16,
    L17,
    L18,
    L21,
    L22,
    L23,
    L24,
    E1Alpha,
    F1Alpha,
    G1Alpha,
    H1Alpha,
    AtAlpha,
    Bt,
    CtAlpha,
}

/// `[left, right] += (constant + alpha·α) · out`
struct Term {
    left: usize,
    right: usize,
    out: usize,
    constant: i64,
    alpha: i64,
}

/// `ω(left, right) = constant + alpha·α`
struct FormTerm {
    left: usize,
    right: usize,
    constant: i64,
    alpha: i64,
}

const fn t(left: usize, right: usize, out: usize, constant: i64) -> Term {
    Term {
        left,
        right,
        out,
        constant,
        alpha: 0,
    }
}

const fn ta(left: usize, right: usize, out: usize, constant: i64, alpha: i64) -> Term {
    Term {
        left,
        right,
        out,
        constant,
        alpha,
    }
}

const fn w(left: usize, right: usize, constant: i64) -> FormTerm {
    FormTerm {
        left,
        right,
        constant,
        alpha: 0,
    }
}

const fn wa(left: usize, right: usize, constant: i64, alpha: i64) -> FormTerm {
    FormTerm {
        left,
        right,
        constant,
        alpha,
    }
}

// Shared core of the L_1_* and L_2_* series.
const L1_CORE: [Term; 2] = [t(X, Y, Y, 1), t(Y, Z, Z, 1)];
const L2_CORE: [Term; 2] = [t(X, Z, Y, 1), t(Y, Z, Z, 1)];

impl CatalogLabel {
    pub const ALL: [CatalogLabel; 24] = [
        CatalogLabel::L1,
        CatalogLabel::L2,
        CatalogLabel::AAlpha,
        CatalogLabel::B,
        CatalogLabel::CAlpha,
        CatalogLabel::L11,
        CatalogLabel::L12,
        CatalogLabel::L13,
        CatalogLabel::L14,
        CatalogLabel::L15,
        CatalogLabel::L16,
        CatalogLabel::L17,
        CatalogLabel::L18,
        CatalogLabel::L21,
        CatalogLabel::L22,
        CatalogLabel::L23,
        CatalogLabel::L24,
        CatalogLabel::E1Alpha,
        CatalogLabel::F1Alpha,
        CatalogLabel::G1Alpha,
        CatalogLabel::H1Alpha,
        CatalogLabel::AtAlpha,
        CatalogLabel::Bt,
        CatalogLabel::CtAlpha,
    ];

    pub fn as_str(self) -> &'static str {
        use CatalogLabel::*;
        match self {
            L1 => "L1",
            L2 => "L2",
            AAlpha => "A_alpha",
            B => "B",
            CAlpha => "C_alpha",
            L11 => "L_1_1",
            L12 => "L_1_2",
            L13 => "L_1_3",
            L14 => "L_1_4",
            L15 => "L_1_5",
            L16 => "L_1_6",
            L17 => "L_1_7",
            L18 => "L_1_8",
            L21 => "L_2_1",
            L22 => "L_2_2",
            L23 => "L_2_3",
            L24 => "L_2_4",
            E1Alpha => "E_1_alpha",
            F1Alpha => "F_1_alpha",
            G1Alpha => "G_1_alpha",
            H1Alpha => "H_1_alpha",
            AtAlpha => "At_alpha",
            Bt => "Bt",
            CtAlpha => "Ct_alpha",
        }
    }

    pub fn dim(self) -> usize {
        use CatalogLabel::*;
        match self {
            L1 | L2 | AAlpha | B | CAlpha => 3,
            _ => 4,
        }
    }

    pub fn has_alpha(self) -> bool {
        use CatalogLabel::*;
        matches!(self, AAlpha | CAlpha | E1Alpha | F1Alpha | G1Alpha | H1Alpha | AtAlpha | CtAlpha)
    }

    /// Parameter values the family excludes.
    pub fn excluded_alphas(self) -> Vec<Scalar> {
        use CatalogLabel::*;
        match self {
            CAlpha | CtAlpha => vec![Scalar::zero(), Scalar::from(-1)],
            E1Alpha | F1Alpha => vec![Scalar::zero(), Scalar::one()],
            _ => Vec::new(),
        }
    }

    pub fn alpha_allowed(self, alpha: &Scalar) -> bool {
        !self.excluded_alphas().contains(alpha)
    }

    fn table(self) -> (Vec<Term>, Vec<FormTerm>) {
        use CatalogLabel::*;
        let core = |series: &[Term; 2], extra: Vec<Term>| -> Vec<Term> {
            let mut v: Vec<Term> = series.iter().map(|s| t(s.left, s.right, s.out, s.constant)).collect();
            v.extend(extra);
            v
        };
        match self {
            L1 => (vec![t(Y, Z, Z, 1), t(X, Y, Y, 1)], vec![w(X, Y, 1)]),
            L2 => (vec![t(X, Z, Y, 1), t(Y, Z, Z, 1)], vec![w(X, Z, 1)]),
            AAlpha => (
                vec![t(X, Y, X, 1), t(X, Z, X, 1), t(X, Z, Y, 1), t(Y, Z, Z, 1), ta(Y, Z, X, 0, 1)],
                vec![w(Y, Z, -1)],
            ),
            B => (
                vec![t(X, Y, Y, 1), t(X, Z, Y, 1), t(X, Z, Z, 1), t(Y, Z, X, 1)],
                vec![w(Y, Z, 2)],
            ),
            CAlpha => (
                vec![t(X, Y, Y, 1), ta(X, Z, Z, 0, 1), t(Y, Z, X, 1)],
                vec![wa(Y, Z, 1, 1)],
            ),
            L11 => (core(&L1_CORE, vec![t(E, Y, E, -1)]), vec![w(X, Y, 1)]),
            L12 => (core(&L1_CORE, vec![t(E, X, Z, 1), t(E, Y, E, -1)]), vec![w(X, Y, 1)]),
            L13 => (
                core(&L1_CORE, vec![t(E, X, Y, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1), w(E, X, 1)],
            ),
            L14 => (
                core(&L1_CORE, vec![t(E, X, Y, 1), t(E, X, Z, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1), w(E, X, 1)],
            ),
            L15 => (core(&L1_CORE, vec![t(E, X, E, 1), t(E, Y, E, -1)]), vec![w(X, Y, 1)]),
            L16 => (
                core(&L1_CORE, vec![t(E, X, E, 1), t(E, X, Y, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1), w(E, X, 1)],
            ),
            L17 => (
                core(&L1_CORE, vec![t(E, X, E, 1), t(E, Y, Z, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1)],
            ),
            L18 => (
                core(&L1_CORE, vec![t(E, X, E, 1), t(E, X, Y, 1), t(E, Y, Z, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1), w(E, X, 1)],
            ),
            L21 => (core(&L2_CORE, vec![t(E, Y, E, -1)]), vec![w(X, Z, 1)]),
            L22 => (core(&L2_CORE, vec![t(E, Y, E, -1), t(E, X, Z, 1)]), vec![w(X, Z, 1)]),
            L23 => (core(&L2_CORE, vec![t(E, Y, E, -1), t(E, X, E, 1)]), vec![w(X, Z, 1)]),
            L24 => (
                core(&L2_CORE, vec![t(E, Y, E, -1), t(E, X, E, 1), t(E, X, Z, 1)]),
                vec![w(X, Z, 1)],
            ),
            E1Alpha => (
                core(&L1_CORE, vec![ta(E, X, E, 0, 1), t(E, Y, E, -1)]),
                vec![w(X, Y, 1)],
            ),
            F1Alpha => (
                core(&L1_CORE, vec![t(E, Y, E, -1), ta(E, X, E, 0, 1), t(E, X, Y, 1)]),
                vec![w(X, Y, 1), w(E, X, 1)],
            ),
            G1Alpha => (
                vec![
                    t(E, X, E, 1),
                    ta(E, X, Y, 0, 1),
                    t(E, Y, E, -1),
                    t(E, Y, X, 1),
                    t(Y, Z, Z, 1),
                    t(X, Y, Y, 1),
                ],
                vec![wa(E, X, 0, 1), w(X, Y, 1)],
            ),
            H1Alpha => (
                vec![
                    t(E, X, E, 1),
                    ta(E, X, Y, 0, 1),
                    t(E, Y, E, -1),
                    t(E, Y, X, 1),
                    t(E, Y, Z, 1),
                    t(Y, Z, Z, 1),
                    t(X, Y, Y, 1),
                ],
                vec![wa(E, X, 0, 1), w(X, Y, 1)],
            ),
            AtAlpha => (
                vec![
                    t(X, Y, X, 1),
                    t(X, Z, X, 1),
                    t(X, Z, Y, 1),
                    t(Y, Z, Z, 1),
                    ta(Y, Z, X, 0, 1),
                    t(E, Z, E, 1),
                ],
                vec![w(Y, Z, -1)],
            ),
            Bt => (
                vec![t(X, Y, Y, 1), t(X, Z, Y, 1), t(X, Z, Z, 1), t(Y, Z, X, 1), t(E, X, E, -2)],
                vec![w(Y, Z, 2)],
            ),
            CtAlpha => (
                vec![t(X, Y, Y, 1), ta(X, Z, Z, 0, 1), t(Y, Z, X, 1), ta(E, X, E, -1, -1)],
                vec![wa(Y, Z, 1, 1)],
            ),
        }
    }

    pub fn basis_labels(self) -> Vec<String> {
        let all = ["x", "y", "z", "e"];
        all[..self.dim()].iter().map(|s| s.to_string()).collect()
    }

    /// The table as an affine function of α, with no exclusion checks.
    pub fn parametric(self) -> ParametricTable {
        let n = self.dim();
        let (terms, forms) = self.table();
        let mut constant = AlgebraBuilder::new(&self.basis_labels());
        let mut slope = AlgebraBuilder::new(&self.basis_labels());
        for term in &terms {
            constant.add_term(term.left, term.right, term.out, &Scalar::from(term.constant));
            slope.add_term(term.left, term.right, term.out, &Scalar::from(term.alpha));
        }
        for f in &forms {
            constant.add_omega(f.left, f.right, &Scalar::from(f.constant));
            slope.add_omega(f.left, f.right, &Scalar::from(f.alpha));
        }
        let constant = constant.build().expect("catalog tables are well formed");
        let slope = slope.build().expect("catalog tables are well formed");
        ParametricTable {
            label: self,
            dim: n,
            tensor: [constant.tensor().to_vec(), slope.tensor().to_vec()],
            omega: [
                constant.omega().expect("built with omega").clone(),
                slope.omega().expect("built with omega").clone(),
            ],
        }
    }

    /// Textual parameter exclusions for descriptors.
    pub fn constraints(self) -> &'static str {
        use CatalogLabel::*;
        match self {
            CAlpha | CtAlpha => "alpha not in {0, -1}",
            E1Alpha | F1Alpha => "alpha not in {0, 1}",
            AAlpha | G1Alpha | H1Alpha | AtAlpha => "alpha arbitrary",
            _ => "none",
        }
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogLabel::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl Serialize for CatalogLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Structure constants and form of a family as `constant + α·slope`.
#[derive(Clone, Debug)]
pub struct ParametricTable {
    pub label: CatalogLabel,
    pub dim: usize,
    /// `[constant, slope]`, each indexed like [`OmegaAlgebra::tensor`].
    pub tensor: [Vec<Scalar>; 2],
    pub omega: [Matrix; 2],
}

impl ParametricTable {
    pub fn evaluate(&self, alpha: &Scalar) -> OmegaAlgebra {
        let tensor = self.tensor[0]
            .iter()
            .zip(&self.tensor[1])
            .map(|(c, s)| c + &(s * alpha))
            .collect();
        let omega = self.omega[0].add(&self.omega[1].scale(alpha)).expect("same shape");
        OmegaAlgebra::new(self.label.basis_labels(), tensor, Some(omega)).expect("well formed")
    }
}

/// Descriptor returned by [`catalog_list`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub label: CatalogLabel,
    pub dim: usize,
    pub has_alpha: bool,
    pub excluded_alpha: Vec<Scalar>,
    pub constraints: &'static str,
}

impl From<CatalogLabel> for CatalogEntry {
    fn from(label: CatalogLabel) -> Self {
        CatalogEntry {
            label,
            dim: label.dim(),
            has_alpha: label.has_alpha(),
            excluded_alpha: label.excluded_alphas(),
            constraints: label.constraints(),
        }
    }
}

/// All catalog descriptors, optionally restricted to one dimension, in table
/// order.
pub fn catalog_list(dim: Option<usize>) -> Vec<CatalogEntry> {
    CatalogLabel::ALL
        .iter()
        .filter(|l| dim.is_none_or(|d| l.dim() == d))
        .map(|&l| CatalogEntry::from(l))
        .collect()
}

/// Builds a catalog algebra. α-families need `alpha`; the others reject it.
pub fn construct(label: CatalogLabel, alpha: Option<&Scalar>) -> Result<OmegaAlgebra> {
    let value = match (label.has_alpha(), alpha) {
        (true, Some(a)) => {
            if !label.alpha_allowed(a) {
                return Err(Error::ParameterExcluded {
                    label: label.to_string(),
                    alpha: a.to_string(),
                });
            }
            a.clone()
        }
        (true, None) => {
            return Err(Error::MissingParameter {
                label: label.to_string(),
                name: "alpha",
            })
        }
        (false, Some(_)) => {
            return Err(Error::UnexpectedParameter {
                label: label.to_string(),
                name: "alpha",
            })
        }
        (false, None) => Scalar::zero(),
    };
    Ok(label.parametric().evaluate(&value))
}

/// Parameter values used when sampling α-families.
pub fn alpha_samples() -> Vec<Scalar> {
    ["-3", "-2", "2", "3", "1/2", "i"]
        .iter()
        .map(|s| s.parse().expect("literal scalar"))
        .collect()
}

/// `alpha_samples()` minus the exclusions of `label`; `[0]` stands in for
/// families without a parameter.
pub fn sample_alphas_for(label: CatalogLabel) -> Vec<Option<Scalar>> {
    if !label.has_alpha() {
        return vec![None];
    }
    alpha_samples()
        .into_iter()
        .filter(|a| label.alpha_allowed(a))
        .map(Some)
        .collect()
}
