//! Canonical subspaces of an algebra: products, derived and lower central
//! series, center, the radical of `ω`.

use crate::algebra::OmegaAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{unit_vector, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

impl OmegaAlgebra {
    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient(),
            });
        }
        Ok(())
    }

    /// `[S, T] = span{[s, t]}`.
    pub fn product(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        self.check_subspace(t)?;
        let mut images = Vec::with_capacity(s.dim() * t.dim());
        for a in s.vectors() {
            for b in t.vectors() {
                images.push(self.bracket(&a, &b)?);
            }
        }
        Subspace::span(self.dim(), &images)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// `D¹ = [L,L]`.
    pub fn derived_algebra(&self) -> Subspace {
        let l = self.whole();
        self.product(&l, &l).expect("same ambient")
    }

    /// `D¹, D², …` with `D^{k+1} = [D^k, D^k]`, ending at the first term that
    /// repeats (the repeat is not listed twice).
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.derived_algebra()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.product(last, last).expect("same ambient");
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `L¹ = L, L², …` with `L^{k+1} = [L, L^k]`, ending at the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let l = self.whole();
        let mut series = vec![l.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.product(&l, last).expect("same ambient");
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `{u ∈ S : [u, T] = 0}`.
    pub fn centralizer(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        self.check_subspace(t)?;
        if s.is_zero() {
            return Ok(s.clone());
        }
        let n = self.dim();
        // unknown coefficients c with u = Σ c_r s_r; rows: coordinates of [u, t_q]
        let s_vecs = s.vectors();
        let t_vecs = t.vectors();
        let mut rows = Vec::new();
        let brackets: Vec<Vec<Vec<Scalar>>> = s_vecs
            .iter()
            .map(|a| t_vecs.iter().map(|b| self.bracket(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for q in 0..t_vecs.len() {
            for k in 0..n {
                rows.push((0..s_vecs.len()).map(|r| brackets[r][q][k].clone()).collect());
            }
        }
        if rows.is_empty() {
            return Ok(s.clone());
        }
        let system = Matrix::from_rows(s_vecs.len(), rows)?;
        let vectors: Vec<Vec<Scalar>> = system.kernel().iter().map(|c| s.combine(c)).collect();
        Subspace::span(n, &vectors)
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> Subspace {
        let l = self.whole();
        self.centralizer(&l, &l).expect("same ambient")
    }

    /// `rad ω = {v : ω(v, ·) = 0}`.
    pub fn radical_omega(&self) -> Result<Subspace> {
        let w = self.effective_omega()?;
        Subspace::span(self.dim(), &w.kernel())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        s.contains_subspace(&self.product(s, s)?)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        s.contains_subspace(&self.product(&self.whole(), s)?)
    }

    /// `tr(ad e_i)` for every basis vector.
    pub fn ad_traces(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|k| self.structure_constant(i, k, k).clone()).sum())
            .collect()
    }

    /// The symmetric form `κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn trace_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n)
            .map(|i| self.ad_matrix(&unit_vector(n, i)).expect("basis vector"))
            .collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).expect("square").trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }
}
