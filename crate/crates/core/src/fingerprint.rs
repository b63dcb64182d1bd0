use serde::Serialize;

use crate::algebra::OmegaAlgebra;
use crate::error::Result;
use crate::subspace::Subspace;

/// Basis-independent invariants. Two isomorphic algebras have equal
/// fingerprints; the converse does not hold in general.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub n: usize,
    /// `dim D¹, dim D², …` until the series stabilizes.
    pub derived_dims: Vec<usize>,
    /// `dim L¹ (= n), dim L², …` until the series stabilizes.
    pub lcs_dims: Vec<usize>,
    pub omega_rank: usize,
    pub rad_dim: usize,
    pub center_dim: usize,
    pub rad_is_subalgebra: bool,
    pub rad_is_ideal: bool,
    pub dim_bracket_l_rad: usize,
    pub dim_derived_cap_rad: usize,
    pub is_lie: bool,
    pub is_perfect: bool,
}

impl OmegaAlgebra {
    /// Computes the fingerprint; fails with `InvalidAlgebra` on input that
    /// does not satisfy the axioms.
    pub fn fingerprint(&self) -> Result<Fingerprint> {
        self.ensure_valid()?;
        let n = self.dim();
        let omega = self.effective_omega()?;
        let omega_rank = omega.rank();
        let rad = self.radical_omega()?;
        let derived = self.derived_series();
        let d1 = derived[0].clone();
        let l = self.whole();
        Ok(Fingerprint {
            n,
            derived_dims: derived.iter().map(Subspace::dim).collect(),
            lcs_dims: self.lower_central_series().iter().map(Subspace::dim).collect(),
            omega_rank,
            rad_dim: rad.dim(),
            center_dim: self.center().dim(),
            rad_is_subalgebra: self.is_subalgebra(&rad)?,
            rad_is_ideal: self.is_ideal(&rad)?,
            dim_bracket_l_rad: self.product(&l, &rad)?.dim(),
            dim_derived_cap_rad: d1.intersection(&rad)?.dim(),
            is_lie: omega.is_zero(),
            is_perfect: d1.is_full(),
        })
    }
}
