//! Generators for the six classes of nontrivial omega-Lie algebras of
//! dimension at least 5.
//!
//! The subspace `H` (or `ℂh₀ ⊕ H₁`) occupies the leading coordinates and the
//! named vectors follow in the order `x, v` or `x, y, a`. Maps on `H` are
//! square matrices whose column `j` is the image of the `j`-th basis vector
//! of `H`. Every constructor runs the axiom check on its output and returns
//! [`Error::ConstraintViolated`] with the residual report when it fails.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraBuilder, OmegaAlgebra};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyLabel {
    NP1,
    P1,
    NP2,
    NP3,
    P2,
    NP4,
}

impl FamilyLabel {
    pub const ALL: [FamilyLabel; 6] = [
        FamilyLabel::NP1,
        FamilyLabel::P1,
        FamilyLabel::NP2,
        FamilyLabel::NP3,
        FamilyLabel::P2,
        FamilyLabel::NP4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyLabel::NP1 => "NP1",
            FamilyLabel::P1 => "P1",
            FamilyLabel::NP2 => "NP2",
            FamilyLabel::NP3 => "NP3",
            FamilyLabel::P2 => "P2",
            FamilyLabel::NP4 => "NP4",
        }
    }

    /// Whether members are perfect (`[L,L] = L`).
    pub fn is_perfect(self) -> bool {
        matches!(self, FamilyLabel::P1 | FamilyLabel::P2)
    }

    /// Number of coordinates outside `H` (resp. `H₁`).
    fn extra_dims(self) -> usize {
        match self {
            FamilyLabel::NP1 => 2,
            _ => 3,
        }
    }

    /// Smallest admissible `dim H` (resp. `dim H₁`).
    pub fn min_dim_h(self, allow_dim4: bool) -> usize {
        let target = if allow_dim4 { 4 } else { 5 };
        target - self.extra_dims()
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyLabel::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Np1Params {
    pub dim_h: usize,
    /// Matrix of `ad v` on `H`; upper triangular.
    pub b: Matrix,
    /// `ad x` on `H` is `I + a_prime`; strictly upper triangular.
    pub a_prime: Matrix,
    pub h1: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P1Params {
    pub dim_h1: usize,
    pub a: Scalar,
    /// Coordinates in `ℂh₀ ⊕ H₁` (length `dim_h1 + 1`, `h₀` first).
    pub h1: Vec<Scalar>,
    /// Coordinates in `H₁` (length `dim_h1`).
    pub h2: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Np2Params {
    pub dim_h: usize,
    pub f: Matrix,
    pub g: Matrix,
    pub h1: Vec<Scalar>,
    pub h2: Vec<Scalar>,
    pub h3: Vec<Scalar>,
    pub b2: Scalar,
    pub d1: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Np3Params {
    pub dim_h: usize,
    pub f: Matrix,
    pub h1: Vec<Scalar>,
    pub h2: Vec<Scalar>,
    pub h3: Vec<Scalar>,
    pub b2: Scalar,
    pub d2: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P2Params {
    pub dim_h: usize,
    pub h1: Vec<Scalar>,
    pub h2: Vec<Scalar>,
    pub h3: Vec<Scalar>,
    pub b1: Scalar,
    pub b2: Scalar,
    pub c1: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Np4Params {
    pub dim_h: usize,
    /// The covector `λ` on `H`.
    pub lambda: Vec<Scalar>,
    pub f: Matrix,
    pub h3: Vec<Scalar>,
    pub h4: Vec<Scalar>,
    pub c2: Scalar,
    pub d1: Scalar,
}

/// Parameters of any family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum FamilyParams {
    NP1(Np1Params),
    P1(P1Params),
    NP2(Np2Params),
    NP3(Np3Params),
    P2(P2Params),
    NP4(Np4Params),
}

impl FamilyParams {
    pub fn label(&self) -> FamilyLabel {
        match self {
            FamilyParams::NP1(_) => FamilyLabel::NP1,
            FamilyParams::P1(_) => FamilyLabel::P1,
            FamilyParams::NP2(_) => FamilyLabel::NP2,
            FamilyParams::NP3(_) => FamilyLabel::NP3,
            FamilyParams::P2(_) => FamilyLabel::P2,
            FamilyParams::NP4(_) => FamilyLabel::NP4,
        }
    }

    pub fn construct(&self, allow_dim4: bool) -> Result<OmegaAlgebra> {
        match self {
            FamilyParams::NP1(p) => construct_np1(p, allow_dim4),
            FamilyParams::P1(p) => construct_p1(p, allow_dim4),
            FamilyParams::NP2(p) => construct_np2(p, allow_dim4),
            FamilyParams::NP3(p) => construct_np3(p, allow_dim4),
            FamilyParams::P2(p) => construct_p2(p, allow_dim4),
            FamilyParams::NP4(p) => construct_np4(p, allow_dim4),
        }
    }
}

fn check_dim(label: FamilyLabel, dim_h: usize, allow_dim4: bool) -> Result<()> {
    let min = label.min_dim_h(allow_dim4);
    if dim_h < min {
        return Err(Error::DimensionTooSmall(
            dim_h + label.extra_dims(),
            min + label.extra_dims(),
        ));
    }
    Ok(())
}

fn check_vector(v: &[Scalar], len: usize) -> Result<()> {
    if v.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    Ok(())
}

fn check_map(m: &Matrix, len: usize) -> Result<()> {
    if m.rows() != len || m.cols() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: if m.rows() != len { m.rows() } else { m.cols() },
        });
    }
    Ok(())
}

fn h_labels(m: usize, first: usize) -> Vec<String> {
    (first..first + m).map(|i| format!("h{i}")).collect()
}

/// Pads `h` (coordinates on the leading `h.len()` axes) to length `n`.
fn embed(h: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut v = h.to_vec();
    v.resize(n, Scalar::zero());
    v
}

/// Adds `[e_i, h_j] = Σ_r m[r][j] h_r` for every `j < m.cols()`.
fn add_map(b: &mut AlgebraBuilder, i: usize, m: &Matrix) {
    for j in 0..m.cols() {
        for r in 0..m.rows() {
            if !m[(r, j)].is_zero() {
                b.add_term(i, j, r, &m[(r, j)]);
            }
        }
    }
}

fn finish(b: &AlgebraBuilder) -> Result<OmegaAlgebra> {
    let alg = b.build()?;
    let report = alg.axiom_check();
    if report.is_valid() {
        Ok(alg)
    } else {
        Err(Error::ConstraintViolated(Box::new(report)))
    }
}

/// Linear map `A′ ↦ A′B − BA′ − A′` on strictly upper-triangular `m×m`
/// matrices, as a matrix in the basis `E_{ij}`, `i < j`, row-major.
fn sylvester_operator(b: &Matrix) -> (Matrix, Vec<(usize, usize)>) {
    let m = b.rows();
    let positions: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut columns = Vec::with_capacity(positions.len());
    for &(i, j) in &positions {
        let mut e = Matrix::zeros(m, m);
        e[(i, j)] = Scalar::one();
        let image = e.mul(b).expect("square").sub(&b.mul(&e).expect("square")).expect("same shape").sub(&e).expect("same shape");
        columns.push(image.entries().to_vec());
    }
    let op = if columns.is_empty() {
        Matrix::zeros(m * m, 0)
    } else {
        Matrix::from_columns(m * m, &columns).expect("consistent lengths")
    };
    (op, positions)
}

/// Basis of `{A′ strictly upper triangular : A′B − BA′ = A′}`.
pub fn np1_solve_aprime(b: &Matrix) -> Result<Vec<Matrix>> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if !b.is_upper_triangular() {
        return Err(Error::NotUpperTriangular("B"));
    }
    let m = b.rows();
    let (op, positions) = sylvester_operator(b);
    if positions.is_empty() {
        return Ok(Vec::new());
    }
    Ok(op
        .kernel()
        .into_iter()
        .map(|coeffs| {
            let mut a = Matrix::zeros(m, m);
            for (c, &(i, j)) in coeffs.into_iter().zip(&positions) {
                a[(i, j)] = c;
            }
            a
        })
        .collect())
}

pub fn construct_np1(p: &Np1Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h;
    check_dim(FamilyLabel::NP1, m, allow_dim4)?;
    check_map(&p.b, m)?;
    check_map(&p.a_prime, m)?;
    check_vector(&p.h1, m)?;
    if !p.b.is_upper_triangular() {
        return Err(Error::NotUpperTriangular("B"));
    }
    if !p.a_prime.is_strictly_upper_triangular() {
        return Err(Error::NotUpperTriangular("A'"));
    }
    let (x, v) = (m, m + 1);
    let mut labels = h_labels(m, 1);
    labels.extend(["x".to_string(), "v".to_string()]);
    let mut b = AlgebraBuilder::new(&labels);
    let a = Matrix::identity(m).add(&p.a_prime)?;
    add_map(&mut b, x, &a);
    add_map(&mut b, v, &p.b);
    b.add_vector(x, v, &embed(&p.h1, m + 2));
    b.add_term(x, v, x, &Scalar::one());
    b.add_omega(x, v, &Scalar::one());
    finish(&b)
}

pub fn construct_p1(p: &P1Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h1;
    check_dim(FamilyLabel::P1, m, allow_dim4)?;
    check_vector(&p.h1, m + 1)?;
    check_vector(&p.h2, m)?;
    if p.a.is_zero() {
        return Err(Error::ZeroParameter("a"));
    }
    let n = m + 3;
    let (h0, x, v) = (0, m + 1, m + 2);
    let inv_a = p.a.inv()?;
    let mut labels = vec!["h0".to_string()];
    labels.extend(h_labels(m, 1));
    labels.extend(["x".to_string(), "v".to_string()]);
    let mut b = AlgebraBuilder::new(&labels);
    b.add_term(x, h0, h0, &-&p.a);
    for h in 1..=m {
        b.add_term(v, h, h, &inv_a);
    }
    let mut h2 = vec![Scalar::zero()];
    h2.extend(p.h2.iter().cloned());
    b.add_vector(v, h0, &embed(&h2, n));
    b.add_term(v, h0, h0, &inv_a);
    b.add_term(v, h0, x, &Scalar::one());
    b.add_vector(x, v, &embed(&p.h1, n));
    b.add_term(x, v, v, &p.a);
    b.add_omega(x, v, &Scalar::one());
    finish(&b)
}

fn xya_labels(m: usize) -> Vec<String> {
    let mut labels = h_labels(m, 1);
    labels.extend(["x".to_string(), "y".to_string(), "a".to_string()]);
    labels
}

/// `[a,h] = h` and `ω(x,y) = 1`, shared by the four `x, y, a` families.
fn xya_base(m: usize) -> AlgebraBuilder {
    let (x, y, a) = (m, m + 1, m + 2);
    let mut b = AlgebraBuilder::new(&xya_labels(m));
    for h in 0..m {
        b.add_term(a, h, h, &Scalar::one());
    }
    b.add_omega(x, y, &Scalar::one());
    b
}

/// Valid exactly when `f = b₂·g` and `(g + d₁)(h₁ − b₂h₂) = 0`; other
/// choices are rejected with their residual report.
pub fn construct_np2(p: &Np2Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h;
    check_dim(FamilyLabel::NP2, m, allow_dim4)?;
    check_map(&p.f, m)?;
    check_map(&p.g, m)?;
    for h in [&p.h1, &p.h2, &p.h3] {
        check_vector(h, m)?;
    }
    let n = m + 3;
    let (x, y, a) = (m, m + 1, m + 2);
    let mut b = xya_base(m);
    add_map(&mut b, x, &p.f);
    add_map(&mut b, y, &p.g);
    b.add_vector(y, a, &embed(&p.h2, n));
    b.add_vector(x, y, &embed(&p.h3, n));
    b.add_term(x, y, x, &p.d1);
    b.add_term(x, y, y, &-(&p.b2 * &p.d1));
    b.add_term(x, y, a, &Scalar::one());
    b.add_vector(x, a, &embed(&p.h1, n));
    b.add_term(x, a, x, &Scalar::from(-1));
    b.add_term(x, a, y, &p.b2);
    finish(&b)
}

pub fn construct_np3(p: &Np3Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h;
    check_dim(FamilyLabel::NP3, m, allow_dim4)?;
    check_map(&p.f, m)?;
    for h in [&p.h1, &p.h2, &p.h3] {
        check_vector(h, m)?;
    }
    let n = m + 3;
    let (x, y, a) = (m, m + 1, m + 2);
    let mut b = xya_base(m);
    add_map(&mut b, x, &p.f);
    b.add_vector(y, a, &embed(&p.h2, n));
    b.add_term(y, a, y, &Scalar::from(-1));
    b.add_vector(x, a, &embed(&p.h1, n));
    b.add_term(x, a, y, &p.b2);
    b.add_vector(x, y, &embed(&p.h3, n));
    b.add_term(x, y, y, &p.d2);
    b.add_term(x, y, a, &Scalar::one());
    finish(&b)
}

pub fn construct_p2(p: &P2Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h;
    check_dim(FamilyLabel::P2, m, allow_dim4)?;
    for h in [&p.h1, &p.h2, &p.h3] {
        check_vector(h, m)?;
    }
    if p.b1.is_zero() {
        return Err(Error::ZeroParameter("b1"));
    }
    if p.c1.is_zero() {
        return Err(Error::ZeroParameter("c1"));
    }
    let n = m + 3;
    let (x, y, a) = (m, m + 1, m + 2);
    let mut b = xya_base(m);
    b.add_vector(x, y, &embed(&p.h3, n));
    b.add_term(x, y, a, &Scalar::one());
    b.add_vector(x, a, &embed(&p.h1, n));
    b.add_term(x, a, x, &p.b1);
    b.add_term(x, a, y, &p.b2);
    b.add_vector(y, a, &embed(&p.h2, n));
    b.add_term(y, a, y, &p.c1);
    finish(&b)
}

pub fn construct_np4(p: &Np4Params, allow_dim4: bool) -> Result<OmegaAlgebra> {
    let m = p.dim_h;
    check_dim(FamilyLabel::NP4, m, allow_dim4)?;
    check_map(&p.f, m)?;
    for h in [&p.lambda, &p.h3, &p.h4] {
        check_vector(h, m)?;
    }
    if p.lambda.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroParameter("lambda"));
    }
    let n = m + 3;
    let (x, y, a) = (m, m + 1, m + 2);
    let mut b = xya_base(m);
    add_map(&mut b, x, &p.f);
    for (h, l) in p.lambda.iter().enumerate() {
        b.add_term(x, h, y, l);
    }
    b.add_term(y, a, y, &Scalar::from(-1));
    b.add_vector(x, a, &embed(&p.h4, n));
    b.add_term(x, a, y, &p.c2);
    b.add_vector(x, y, &embed(&p.h3, n));
    b.add_term(x, y, y, &p.d1);
    b.add_term(x, y, a, &Scalar::one());
    finish(&b)
}

// Random instances. Entries come from a small grid so that exact arithmetic
// stays cheap.

fn small<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    const GRID: [(i64, i64, i64); 9] = [
        (0, 0, 1),
        (0, 0, 1),
        (1, 0, 1),
        (-1, 0, 1),
        (2, 0, 1),
        (1, 0, 2),
        (0, 1, 1),
        (0, -1, 1),
        (1, 1, 1),
    ];
    let &(re, im, den) = GRID.choose(rng).expect("nonempty grid");
    Scalar::complex(re, im).checked_div(&Scalar::from(den)).expect("nonzero")
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let s = small(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| small(rng)).collect()
}

fn map<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Matrix {
    let rows = (0..m).map(|_| vector(rng, m)).collect();
    Matrix::from_rows(m, rows).expect("square")
}

fn random_combination<R: Rng + ?Sized>(rng: &mut R, basis: &[Matrix], m: usize) -> Matrix {
    basis.iter().fold(Matrix::zeros(m, m), |acc, e| {
        acc.add(&e.scale(&small(rng))).expect("same shape")
    })
}

fn dim_h<R: Rng + ?Sized>(rng: &mut R, label: FamilyLabel) -> usize {
    let min = label.min_dim_h(false);
    rng.gen_range(min..=min + 1)
}

/// A random valid member of the family.
pub fn sample<R: Rng + ?Sized>(label: FamilyLabel, rng: &mut R) -> FamilyParams {
    let m = dim_h(rng, label);
    match label {
        FamilyLabel::NP1 => {
            // integer diagonal steps of 1 leave room for nonzero A′
            let mut b = Matrix::zeros(m, m);
            for i in 0..m {
                b[(i, i)] = Scalar::from(rng.gen_range(0..3));
                for j in i + 1..m {
                    if rng.gen_bool(0.3) {
                        b[(i, j)] = small(rng);
                    }
                }
            }
            let basis = np1_solve_aprime(&b).expect("upper triangular");
            let a_prime = random_combination(rng, &basis, m);
            FamilyParams::NP1(Np1Params {
                dim_h: m,
                b,
                a_prime,
                h1: vector(rng, m),
            })
        }
        FamilyLabel::P1 => {
            let h1 = vector(rng, m + 1);
            FamilyParams::P1(P1Params {
                dim_h1: m,
                a: nonzero(rng),
                h1,
                h2: vector(rng, m),
            })
        }
        FamilyLabel::NP2 => {
            let g = map(rng, m);
            let b2 = small(rng);
            let h2 = vector(rng, m);
            let h1 = h2.iter().map(|c| c * &b2).collect();
            FamilyParams::NP2(Np2Params {
                dim_h: m,
                f: g.scale(&b2),
                g,
                h1,
                h2,
                h3: vector(rng, m),
                b2,
                d1: small(rng),
            })
        }
        FamilyLabel::NP3 => {
            let d2 = small(rng);
            let mut f = map(rng, m);
            // make h2 = e_1 an eigenvector with eigenvalue d2
            for r in 0..m {
                f[(r, 0)] = Scalar::zero();
            }
            f[(0, 0)] = d2.clone();
            FamilyParams::NP3(Np3Params {
                dim_h: m,
                f,
                h1: vector(rng, m),
                h2: crate::matrix::unit_vector(m, 0),
                h3: vector(rng, m),
                b2: small(rng),
                d2,
            })
        }
        FamilyLabel::P2 => {
            let b1 = loop {
                let b1 = nonzero(rng);
                if b1 != Scalar::from(-1) {
                    break b1;
                }
            };
            let c1 = -(Scalar::one() + &b1);
            FamilyParams::P2(P2Params {
                dim_h: m,
                h1: vector(rng, m),
                h2: vector(rng, m),
                h3: vector(rng, m),
                b1,
                b2: small(rng),
                c1,
            })
        }
        FamilyLabel::NP4 => {
            let mut lambda = vector(rng, m);
            if lambda.iter().all(Scalar::is_zero) {
                lambda[0] = Scalar::one();
            }
            FamilyParams::NP4(Np4Params {
                dim_h: m,
                lambda,
                f: map(rng, m),
                h3: vector(rng, m),
                h4: vector(rng, m),
                c2: small(rng),
                d1: small(rng),
            })
        }
    }
}
