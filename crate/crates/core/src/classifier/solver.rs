//! Exact search for points on a variety cut out by linear and quadratic
//! equations over Q(i).
//!
//! The unknowns are kept as an affine parametrization `z = z0 + K t`. Each
//! round eliminates the quadratic monomials of the current equations
//! (treating every monomial as a separate unknown) and feeds any resulting
//! linear equation back into the parametrization. When nothing linear is
//! left the search either solves a univariate quadratic exactly or fixes one
//! parameter to a grid value and recurses.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::{dot, unit_vector, Matrix};
use crate::scalar::Scalar;

/// `tᵀ S t + l·t + c` with `S` symmetric.
#[derive(Clone, Debug)]
pub(crate) struct Quadratic {
    pub s: Vec<Vec<Scalar>>,
    pub l: Vec<Scalar>,
    pub c: Scalar,
}

impl Quadratic {
    pub fn zero(k: usize) -> Self {
        Quadratic {
            s: vec![vec![Scalar::zero(); k]; k],
            l: vec![Scalar::zero(); k],
            c: Scalar::zero(),
        }
    }

    /// Adds `coef · z_a z_b`.
    pub fn add_product(&mut self, a: usize, b: usize, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        if a == b {
            self.s[a][a] += coef;
        } else {
            let half = coef * &Scalar::ratio(1, 2);
            self.s[a][b] += &half;
            self.s[b][a] += &half;
        }
    }

    pub fn add_linear(&mut self, a: usize, coef: &Scalar) {
        self.l[a] += coef;
    }

    fn vars(&self) -> usize {
        self.l.len()
    }

    /// Substitutes `t = t0 + K u`; `k` has one column per new unknown.
    fn substitute(&self, t0: &[Scalar], k: &Matrix) -> Quadratic {
        let n = self.vars();
        let m = k.cols();
        // S t0
        let st0: Vec<Scalar> = (0..n).map(|a| dot(&self.s[a], t0)).collect();
        let c = &(&self.c + &dot(&self.l, t0)) + &dot(t0, &st0);
        // l' = Kᵀ (l + 2 S t0)
        let shifted: Vec<Scalar> = (0..n)
            .map(|a| &self.l[a] + &(&st0[a] * &Scalar::from(2)))
            .collect();
        let l = (0..m)
            .map(|j| (0..n).map(|a| &k[(a, j)] * &shifted[a]).sum())
            .collect();
        // S' = Kᵀ S K
        let mut sk = vec![vec![Scalar::zero(); m]; n];
        for a in 0..n {
            for b in 0..n {
                if self.s[a][b].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if !k[(b, j)].is_zero() {
                        sk[a][j] += &(&self.s[a][b] * &k[(b, j)]);
                    }
                }
            }
        }
        let mut s = vec![vec![Scalar::zero(); m]; m];
        for a in 0..n {
            for i in 0..m {
                if k[(a, i)].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if !sk[a][j].is_zero() {
                        s[i][j] += &(&k[(a, i)] * &sk[a][j]);
                    }
                }
            }
        }
        Quadratic { s, l, c }
    }
}

fn monomials(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect()
}

/// Rows of the Macaulay-style matrix: quadratic monomials, then linear
/// terms, then the constant.
fn to_row(q: &Quadratic, mons: &[(usize, usize)]) -> Vec<Scalar> {
    let mut row: Vec<Scalar> = mons
        .iter()
        .map(|&(a, b)| {
            if a == b {
                q.s[a][a].clone()
            } else {
                &q.s[a][b] * &Scalar::from(2)
            }
        })
        .collect();
    row.extend(q.l.iter().cloned());
    row.push(q.c.clone());
    row
}

fn from_row(row: &[Scalar], mons: &[(usize, usize)], k: usize) -> Quadratic {
    let mut q = Quadratic::zero(k);
    for (c, &(a, b)) in row.iter().zip(mons) {
        q.add_product(a, b, c);
    }
    q.l = row[mons.len()..mons.len() + k].to_vec();
    q.c = row[mons.len() + k].clone();
    q
}

#[derive(Clone)]
struct State {
    z0: Vec<Scalar>,
    /// `N × k`
    basis: Matrix,
    polys: Vec<Quadratic>,
}

enum Reduced {
    Dead,
    Live(State),
}

impl State {
    fn k(&self) -> usize {
        self.basis.cols()
    }

    /// Restricts to `{t : rows·t = rhs}`.
    fn restrict(&self, rows: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Reduced {
        let k = self.k();
        let m = Matrix::from_rows(k, rows).expect("rows have k entries");
        let Some((t0, kernel)) = m.solve(&rhs).expect("matching lengths") else {
            return Reduced::Dead;
        };
        let kmat = if kernel.is_empty() {
            Matrix::zeros(k, 0)
        } else {
            Matrix::from_columns(k, &kernel).expect("consistent")
        };
        let shift = self.basis.mul_vec(&t0).expect("shapes");
        let z0 = self.z0.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let basis = self.basis.mul(&kmat).expect("shapes");
        let basis = if basis.cols() == 0 {
            Matrix::zeros(self.z0.len(), 0)
        } else {
            basis
        };
        let polys = self.polys.iter().map(|p| p.substitute(&t0, &kmat)).collect();
        Reduced::Live(State { z0, basis, polys })
    }

    /// Repeats monomial elimination until no linear equation remains.
    fn reduce(mut self) -> Reduced {
        loop {
            let k = self.k();
            if self.polys.is_empty() {
                return Reduced::Live(self);
            }
            let mons = monomials(k);
            let width = mons.len() + k + 1;
            let rows: Vec<Vec<Scalar>> = self.polys.iter().map(|q| to_row(q, &mons)).collect();
            let rref = Matrix::from_rows(width, rows).expect("uniform rows").rref();
            let mut lin_rows = Vec::new();
            let mut lin_rhs = Vec::new();
            let mut quads = Vec::new();
            for (r, &pivot) in rref.pivots.iter().enumerate() {
                let row = rref.matrix.row(r);
                if pivot == width - 1 {
                    return Reduced::Dead;
                }
                if pivot >= mons.len() {
                    lin_rows.push(row[mons.len()..mons.len() + k].to_vec());
                    lin_rhs.push(-&row[width - 1]);
                } else {
                    quads.push(from_row(row, &mons, k));
                }
            }
            self.polys = quads;
            if lin_rows.is_empty() {
                return Reduced::Live(self);
            }
            match self.restrict(lin_rows, lin_rhs) {
                Reduced::Dead => return Reduced::Dead,
                Reduced::Live(next) => self = next,
            }
        }
    }

    fn point(&self) -> Vec<Scalar> {
        self.z0.clone()
    }

    /// A row that only involves one unknown, as `(index, a, b, c)` for
    /// `a t² + b t + c`.
    fn univariate(&self) -> Option<(usize, Scalar, Scalar, Scalar)> {
        let k = self.k();
        'rows: for q in &self.polys {
            let mut var = None;
            for a in 0..k {
                let used = !q.l[a].is_zero() || q.s[a].iter().any(|x| !x.is_zero());
                if used {
                    if var.is_some() {
                        continue 'rows;
                    }
                    var = Some(a);
                }
            }
            if let Some(a) = var {
                return Some((a, q.s[a][a].clone(), q.l[a].clone(), q.c.clone()));
            }
        }
        None
    }

    /// The unknown other than `avoid` that occurs in the most quadratic
    /// monomials.
    fn busiest(&self, avoid: Option<usize>) -> usize {
        let k = self.k();
        let mut counts = vec![0usize; k];
        for q in &self.polys {
            for a in 0..k {
                for b in a..k {
                    if !q.s[a][b].is_zero() {
                        counts[a] += 1;
                        counts[b] += 1;
                    }
                }
            }
        }
        (0..k)
            .filter(|&a| Some(a) != avoid)
            .max_by_key(|&a| (counts[a], std::cmp::Reverse(a)))
            .unwrap_or(0)
    }

    /// Changes parameters to `t = M u` for an invertible `M`.
    fn reparametrize(&self, m: &Matrix) -> State {
        let zero = vec![Scalar::zero(); self.k()];
        State {
            z0: self.z0.clone(),
            basis: self.basis.mul(m).expect("shapes"),
            polys: self.polys.iter().map(|p| p.substitute(&zero, m)).collect(),
        }
    }

    /// A parameter change after which some equation is linear in the last
    /// parameter, so fixing the others solves it without square roots.
    fn isotropic_frame(&self) -> Option<Matrix> {
        let k = self.k();
        if k < 2 {
            return None;
        }
        for q in &self.polys {
            let Some(d) = isotropic_direction(q) else {
                continue;
            };
            let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(k);
            let mut span = Matrix::from_rows(k, vec![d.clone()]).expect("length k");
            for a in 0..k {
                let e = unit_vector(k, a);
                let mut rows = span.row_vectors();
                rows.push(e.clone());
                let grown = Matrix::from_rows(k, rows).expect("length k");
                if grown.rank() > span.rank() {
                    span = grown;
                    columns.push(e);
                }
            }
            columns.push(d);
            return Some(Matrix::from_columns(k, &columns).expect("length k"));
        }
        None
    }

    fn fix(&self, var: usize, value: &Scalar) -> Reduced {
        let mut row = vec![Scalar::zero(); self.k()];
        row[var] = Scalar::one();
        self.restrict(vec![row], vec![value.clone()])
    }
}

/// A direction `d` along which `q` is linear but not constant, found
/// among zero diagonal entries and pairs of a congruence diagonalization.
fn isotropic_direction(q: &Quadratic) -> Option<Vec<Scalar>> {
    let k = q.vars();
    let useful = |d: &[Scalar]| {
        let sd: Vec<Scalar> = (0..k).map(|a| dot(&q.s[a], d)).collect();
        dot(d, &sd).is_zero() && (sd.iter().any(|x| !x.is_zero()) || !dot(&q.l, d).is_zero())
    };
    for a in 0..k {
        let e = unit_vector(k, a);
        if useful(&e) {
            return Some(e);
        }
    }
    // congruence diagonalization: columns of `v` are S-orthogonal
    let mut v: Vec<Vec<Scalar>> = (0..k).map(|a| unit_vector(k, a)).collect();
    let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        (0..k).map(|a| &x[a] * &dot(&q.s[a], y)).sum()
    };
    let mut diag = Vec::with_capacity(k);
    for i in 0..k {
        if form(&v[i], &v[i]).is_zero() {
            // make the pivot anisotropic if possible
            if let Some(j) = (i + 1..k).find(|&j| !form(&v[i], &v[j]).is_zero()) {
                let sum: Vec<Scalar> = v[i].iter().zip(&v[j]).map(|(a, b)| a + b).collect();
                if form(&sum, &sum).is_zero() {
                    let diff: Vec<Scalar> = v[i].iter().zip(&v[j]).map(|(a, b)| a - b).collect();
                    v[i] = diff;
                } else {
                    v[i] = sum;
                }
            }
        }
        let dii = form(&v[i], &v[i]);
        if !dii.is_zero() {
            for j in i + 1..k {
                let c = form(&v[i], &v[j]).checked_div(&dii).expect("nonzero");
                if !c.is_zero() {
                    let vi = v[i].clone();
                    for (x, y) in v[j].iter_mut().zip(&vi) {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        diag.push(dii);
    }
    for i in 0..k {
        if useful(&v[i]) {
            return Some(v[i].clone());
        }
        for j in i + 1..k {
            if diag[i].is_zero() || diag[j].is_zero() {
                continue;
            }
            let ratio = (-&diag[i]).checked_div(&diag[j]).expect("nonzero");
            if let Some(r) = ratio.sqrt() {
                let d: Vec<Scalar> = v[i].iter().zip(&v[j]).map(|(a, b)| a + &(&r * b)).collect();
                if useful(&d) {
                    return Some(d);
                }
            }
        }
    }
    None
}

/// Roots of `a t² + b t + c` in Q(i) with `a ≠ 0`, if the discriminant has a
/// square root there.
fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Vec<Scalar>> {
    let disc = &(b * b) - &(&Scalar::from(4) * &(a * c));
    let r = disc.sqrt()?;
    let two_a = a * &Scalar::from(2);
    let plus = (&-b + &r).checked_div(&two_a).ok()?;
    if r.is_zero() {
        return Some(vec![plus]);
    }
    let minus = (&-b - &r).checked_div(&two_a).ok()?;
    Some(vec![plus, minus])
}

pub(crate) struct Search<'a, R: Rng> {
    pub rng: &'a mut R,
    pub budget: usize,
    pub trials: usize,
    pub grid: Vec<Scalar>,
}

impl<R: Rng> Search<'_, R> {
    /// Looks for a point of `{z : lin·z = rhs, q(z) = 0 for q in quads}`
    /// accepted by `accept`.
    pub fn run(
        &mut self,
        nvars: usize,
        lin: Vec<Vec<Scalar>>,
        rhs: Vec<Scalar>,
        quads: Vec<Quadratic>,
        accept: &mut dyn FnMut(&[Scalar]) -> bool,
    ) -> Option<Vec<Scalar>> {
        let start = State {
            z0: vec![Scalar::zero(); nvars],
            basis: Matrix::identity(nvars),
            polys: quads,
        };
        let state = if lin.is_empty() {
            start
        } else {
            match start.restrict(lin, rhs) {
                Reduced::Dead => return None,
                Reduced::Live(s) => s,
            }
        };
        self.explore(state, accept)
    }

    fn explore(&mut self, state: State, accept: &mut dyn FnMut(&[Scalar]) -> bool) -> Option<Vec<Scalar>> {
        if self.trials >= self.budget {
            return None;
        }
        let state = match state.reduce() {
            Reduced::Dead => {
                self.trials += 1;
                return None;
            }
            Reduced::Live(s) => s,
        };
        if state.k() == 0 {
            self.trials += 1;
            let z = state.point();
            return accept(&z).then_some(z);
        }
        if let Some((var, a, b, c)) = state.univariate() {
            // a ≠ 0: purely linear rows were eliminated by `reduce`
            let Some(roots) = quadratic_roots(&a, &b, &c) else {
                self.trials += 1;
                return None;
            };
            for r in roots {
                if let Reduced::Live(next) = state.fix(var, &r) {
                    if let Some(z) = self.explore(next, accept) {
                        return Some(z);
                    }
                } else {
                    self.trials += 1;
                }
                if self.trials >= self.budget {
                    return None;
                }
            }
            return None;
        }
        let (state, avoid) = match state.isotropic_frame() {
            Some(m) => {
                let k = state.k();
                (state.reparametrize(&m), Some(k - 1))
            }
            None => (state, None),
        };
        let var = state.busiest(avoid);
        let mut values = self.grid.clone();
        values.shuffle(self.rng);
        for v in values {
            if let Reduced::Live(next) = state.fix(var, &v) {
                if let Some(z) = self.explore(next, accept) {
                    return Some(z);
                }
            } else {
                self.trials += 1;
            }
            if self.trials >= self.budget {
                return None;
            }
        }
        None
    }
}
