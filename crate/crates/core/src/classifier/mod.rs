//! Recognition of catalog algebras given in an arbitrary basis.
//!
//! Classification is two-tier. Fingerprints filter the catalog down to the
//! labels whose invariants agree with the input at some sampled parameter;
//! then an exact witness search looks for a change of basis onto each
//! candidate. A candidate without a witness is reported as a fingerprint
//! match only: failing to find a witness proves nothing.
//!
//! Isomorphisms are invertible linear maps preserving the bracket. For
//! `n ≥ 3` the form is determined by the bracket, so they preserve `ω` as
//! well.

mod pencil;
mod solver;

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::OmegaAlgebra;
use crate::catalog::CatalogLabel;
use crate::error::{Error, Result};
use crate::fingerprint::Fingerprint;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use pencil::AlphaConstraint;
use solver::{Quadratic, Search};

pub const DEFAULT_SEED: u64 = 0x006f_6d65_6761;
pub const DEFAULT_BUDGET: usize = 10_000;

/// Parameter values at which α-families are fingerprinted.
pub fn classification_alphas() -> Vec<Scalar> {
    ["-3", "-2", "-1", "-1/2", "0", "1/2", "1", "2", "3", "i", "-i", "1+i"]
        .iter()
        .map(|s| s.parse().expect("literal scalar"))
        .collect()
}

/// Sample points used for `label`: `[None]` for fixed entries.
fn sample_points(label: CatalogLabel) -> Vec<Option<Scalar>> {
    if !label.has_alpha() {
        return vec![None];
    }
    classification_alphas()
        .into_iter()
        .filter(|a| label.alpha_allowed(a))
        .map(Some)
        .collect()
}

type FingerprintTable = Vec<(CatalogLabel, Vec<(Option<Scalar>, Fingerprint)>)>;

fn catalog_fingerprints() -> &'static FingerprintTable {
    static TABLE: OnceLock<FingerprintTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        CatalogLabel::ALL
            .iter()
            .map(|&label| {
                let prints = sample_points(label)
                    .into_iter()
                    .map(|a| {
                        let alg = crate::catalog::construct(label, a.as_ref()).expect("sample allowed");
                        let fp = alg.fingerprint().expect("catalog entries are valid");
                        (a, fp)
                    })
                    .collect();
                (label, prints)
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintCandidate {
    pub label: CatalogLabel,
    /// Sampled parameter values whose fingerprint equals the input's; empty
    /// for entries without a parameter.
    pub matching_alphas: Vec<Scalar>,
}

fn check_input(alg: &OmegaAlgebra) -> Result<Fingerprint> {
    if !matches!(alg.dim(), 3 | 4) {
        return Err(Error::UnsupportedDimension(alg.dim()));
    }
    alg.ensure_valid()?;
    if alg.effective_omega()?.is_zero() {
        return Err(Error::TrivialAlgebra);
    }
    alg.fingerprint()
}

/// Catalog labels whose fingerprint at some sampled parameter equals that
/// of `alg`, in catalog order.
pub fn fingerprint_match(alg: &OmegaAlgebra) -> Result<Vec<FingerprintCandidate>> {
    let fp = check_input(alg)?;
    Ok(catalog_fingerprints()
        .iter()
        .filter(|(label, _)| label.dim() == alg.dim())
        .filter_map(|(label, prints)| {
            let hits: Vec<&Option<Scalar>> = prints.iter().filter(|(_, f)| *f == fp).map(|(a, _)| a).collect();
            if hits.is_empty() {
                return None;
            }
            Some(FingerprintCandidate {
                label: *label,
                matching_alphas: hits.into_iter().flatten().cloned().collect(),
            })
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search leaves (complete assignments or dead ends).
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

/// A verified isomorphism: `alg.change_of_basis(matrix)` has exactly the
/// structure constants and form of `construct(label, alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub matrix: Matrix,
    pub alpha: Option<Scalar>,
}

/// Subspaces every isomorphism must respect, in a fixed order.
fn canonical_subspaces(alg: &OmegaAlgebra) -> Vec<Subspace> {
    let l = alg.whole();
    let rad = alg.radical_omega().expect("valid algebra");
    let d1 = alg.derived_algebra();
    let center = alg.center();
    let mut out = Vec::new();
    out.push(rad.clone());
    out.extend(alg.derived_series());
    out.extend(alg.lower_central_series().into_iter().skip(1));
    out.push(center.clone());
    out.push(alg.product(&l, &rad).expect("same ambient"));
    out.push(alg.product(&rad, &rad).expect("same ambient"));
    out.push(d1.intersection(&rad).expect("same ambient"));
    out.push(alg.centralizer(&l, &d1).expect("same ambient"));
    out.push(alg.centralizer(&l, &rad).expect("same ambient"));
    out.push(alg.product(&l, &center).expect("same ambient"));
    out.push(rad.sum(&d1).expect("same ambient"));
    out
}

/// Generic parameter values for α-independent anchoring.
fn generic_alphas() -> [Scalar; 2] {
    ["7/3+2/5*i", "-5/11+3/2*i"].map(|s| s.parse().expect("literal scalar"))
}

/// Equations on `z = (vec P, α)` saying that the columns of `P` form a basis
/// of `alg` in which the structure is `target(α)`. `P_{ai}` sits at index
/// `a·n + i` and `α` (if unknown) at `n²`.
fn build_system(
    alg: &OmegaAlgebra,
    table: &crate::catalog::ParametricTable,
    alpha: Option<&Scalar>,
    anchors: &[(Subspace, Subspace)],
) -> (usize, Vec<Vec<Scalar>>, Vec<Scalar>, Vec<Quadratic>) {
    let n = alg.dim();
    let free_alpha = alpha.is_none() && table.label.has_alpha();
    let nvars = n * n + usize::from(free_alpha);
    let p = |a: usize, i: usize| a * n + i;
    let al = n * n;
    let fixed = alpha.cloned().unwrap_or_else(Scalar::zero);
    // target pieces as constant + α·slope, with a known α folded in
    let tc = |i: usize, j: usize, k: usize, which: usize| -> Scalar {
        let idx = (i * n + j) * n + k;
        if free_alpha {
            table.tensor[which][idx].clone()
        } else if which == 0 {
            &table.tensor[0][idx] + &(&fixed * &table.tensor[1][idx])
        } else {
            Scalar::zero()
        }
    };
    let wc = |i: usize, j: usize, which: usize| -> Scalar {
        if free_alpha {
            table.omega[which][(i, j)].clone()
        } else if which == 0 {
            &table.omega[0][(i, j)] + &(&fixed * &table.omega[1][(i, j)])
        } else {
            Scalar::zero()
        }
    };

    let mut lin = Vec::new();
    let mut rhs = Vec::new();
    // anchors: P maps each target subspace into the matching input subspace
    for (target_sub, alg_sub) in anchors {
        let ann = alg_sub.annihilator();
        for u in target_sub.vectors() {
            for phi in &ann {
                let mut row = vec![Scalar::zero(); nvars];
                for (a, pa) in phi.iter().enumerate() {
                    for (i, ui) in u.iter().enumerate() {
                        if !pa.is_zero() && !ui.is_zero() {
                            row[p(a, i)] += &(pa * ui);
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    lin.push(row);
                    rhs.push(Scalar::zero());
                }
            }
        }
    }
    // traces: tr ad(p_i) = tr ad_T(e_i)
    let traces = alg.ad_traces();
    let target_at = |a: &Scalar| table.evaluate(a);
    let t0 = target_at(&Scalar::zero());
    let t1 = target_at(&Scalar::one());
    let tm = target_at(&Scalar::from(-1));
    let (tr0, tr1) = (t0.ad_traces(), t1.ad_traces());
    for i in 0..n {
        let mut row = vec![Scalar::zero(); nvars];
        for a in 0..n {
            row[p(a, i)] = traces[a].clone();
        }
        let slope = &tr1[i] - &tr0[i];
        if free_alpha {
            row[al] = -slope;
            rhs.push(tr0[i].clone());
        } else {
            rhs.push(&tr0[i] + &(&fixed * &slope));
        }
        lin.push(row);
    }

    let mut quads = Vec::new();
    // brackets: [p_i, p_j] − Σ_m T^m_ij p_m = 0, one equation per coordinate
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut q = Quadratic::zero(nvars);
                for a in 0..n {
                    for b in 0..n {
                        let c = alg.structure_constant(a, b, k);
                        if !c.is_zero() {
                            q.add_product(p(a, i), p(b, j), c);
                        }
                    }
                }
                for m in 0..n {
                    q.add_linear(p(k, m), &-tc(i, j, m, 0));
                    if free_alpha {
                        q.add_product(al, p(k, m), &-tc(i, j, m, 1));
                    }
                }
                quads.push(q);
            }
        }
    }
    // form: Pᵀ ω P = ω_T
    let w = alg.effective_omega().expect("valid algebra");
    for i in 0..n {
        for j in i + 1..n {
            let mut q = Quadratic::zero(nvars);
            for a in 0..n {
                for b in 0..n {
                    if !w[(a, b)].is_zero() {
                        q.add_product(p(a, i), p(b, j), &w[(a, b)]);
                    }
                }
            }
            q.c = -wc(i, j, 0);
            if free_alpha {
                q.add_linear(al, &-wc(i, j, 1));
            }
            quads.push(q);
        }
    }
    // trace form: κ(p_i, p_j) = κ_T(e_i, e_j), quadratic in α
    let kappa = alg.trace_form();
    let (k0, k1, km) = (t0.trace_form(), t1.trace_form(), tm.trace_form());
    let half = Scalar::ratio(1, 2);
    for i in 0..n {
        for j in i..n {
            let mut q = Quadratic::zero(nvars);
            for a in 0..n {
                for b in 0..n {
                    if !kappa[(a, b)].is_zero() {
                        q.add_product(p(a, i), p(b, j), &kappa[(a, b)]);
                    }
                }
            }
            let c0 = k0[(i, j)].clone();
            let c1 = &(&k1[(i, j)] - &km[(i, j)]) * &half;
            let c2 = &(&(&k1[(i, j)] + &km[(i, j)]) * &half) - &c0;
            if free_alpha {
                q.c = -c0;
                q.add_linear(al, &-c1);
                q.add_product(al, al, &-c2);
            } else {
                q.c = -(&(&c0 + &(&fixed * &c1)) + &(&(&fixed * &fixed) * &c2));
            }
            quads.push(q);
        }
    }
    (nvars, lin, rhs, quads)
}

fn search_once(
    alg: &OmegaAlgebra,
    label: CatalogLabel,
    alpha: Option<&Scalar>,
    rng: &mut ChaCha8Rng,
    budget: &mut usize,
) -> Option<Witness> {
    let n = alg.dim();
    let table = label.parametric();
    let free_alpha = alpha.is_none() && label.has_alpha();
    let alg_subs = canonical_subspaces(alg);
    let target_subs: Vec<Option<Subspace>> = if free_alpha {
        let [g1, g2] = generic_alphas();
        let a = canonical_subspaces(&table.evaluate(&g1));
        let b = canonical_subspaces(&table.evaluate(&g2));
        a.into_iter().zip(b).map(|(x, y)| (x == y).then_some(x)).collect()
    } else {
        let at = alpha.cloned().unwrap_or_else(Scalar::zero);
        canonical_subspaces(&table.evaluate(&at)).into_iter().map(Some).collect()
    };
    let mut anchors = Vec::new();
    for (t, a) in target_subs.into_iter().zip(alg_subs) {
        if let Some(t) = t {
            if t.dim() != a.dim() {
                return None;
            }
            anchors.push((t, a));
        }
    }
    let (nvars, lin, rhs, quads) = build_system(alg, &table, alpha, &anchors);
    let mut found = None;
    let mut accept = |z: &[Scalar]| -> bool {
        let a = if free_alpha {
            Some(z[n * n].clone())
        } else {
            alpha.cloned()
        };
        if let Some(a) = &a {
            if !label.alpha_allowed(a) {
                return false;
            }
        }
        let Ok(p) = Matrix::from_rows(n, (0..n).map(|r| z[r * n..(r + 1) * n].to_vec()).collect()) else {
            return false;
        };
        let target = table.evaluate(a.as_ref().unwrap_or(&Scalar::zero()));
        match alg.change_of_basis(&p) {
            Ok(moved) if moved.same_structure(&target) => {
                found = Some(Witness { matrix: p, alpha: a });
                true
            }
            _ => false,
        }
    };
    let mut search = Search {
        rng,
        budget: *budget,
        trials: 0,
        grid: Scalar::search_grid(),
    };
    let hit = search.run(nvars, lin, rhs, quads, &mut accept);
    *budget -= search.trials.min(*budget);
    hit?;
    found
}

/// Best-effort search for a witness that `alg` is isomorphic to the catalog
/// entry `label`. With `alpha = None` an α-family's parameter is solved for
/// along with the matrix. `None` is inconclusive.
pub fn iso_witness_search(
    alg: &OmegaAlgebra,
    label: CatalogLabel,
    alpha: Option<&Scalar>,
    config: &SearchConfig,
) -> Result<Option<Witness>> {
    alg.ensure_valid()?;
    if alg.dim() != label.dim() {
        return Ok(None);
    }
    if let Some(a) = alpha {
        if !label.has_alpha() {
            return Err(Error::UnexpectedParameter {
                label: label.to_string(),
                name: "alpha",
            });
        }
        if !label.alpha_allowed(a) {
            return Err(Error::ParameterExcluded {
                label: label.to_string(),
                alpha: a.to_string(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    // one budget for every attempt below
    let mut budget = config.budget;
    let table = label.parametric();
    let input_pencil = pencil::values(alg);
    if alpha.is_some() || !label.has_alpha() {
        let target = table.evaluate(alpha.unwrap_or(&Scalar::zero()));
        if !pencil::proportional(&input_pencil, &pencil::values(&target)) {
            return Ok(None);
        }
        return Ok(search_once(alg, label, alpha, &mut rng, &mut budget));
    }
    match pencil::alpha_constraint(&input_pencil, &table, &label.excluded_alphas()) {
        AlphaConstraint::Impossible => return Ok(None),
        AlphaConstraint::Finite(roots) => {
            for a in roots.iter().filter(|a| label.alpha_allowed(a)) {
                if let Some(w) = search_once(alg, label, Some(a), &mut rng, &mut budget) {
                    return Ok(Some(w));
                }
            }
            return Ok(None);
        }
        AlphaConstraint::Any => {}
    }
    // Unknown α: generic anchoring first, then each sampled α whose
    // fingerprint matches (special parameter values change the invariants).
    let fp = alg.fingerprint()?;
    let generic = table.evaluate(&generic_alphas()[0]).fingerprint()?;
    if fp == generic {
        if let Some(w) = search_once(alg, label, None, &mut rng, &mut budget) {
            return Ok(Some(w));
        }
    }
    for a in sample_points(label).into_iter().flatten() {
        let at = table.evaluate(&a);
        if budget > 0 && at.fingerprint()? == fp {
            if let Some(w) = search_once(alg, label, Some(&a), &mut rng, &mut budget) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CandidateStatus {
    WitnessFound,
    FingerprintMatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub label: CatalogLabel,
    /// The parameter recovered with a witness.
    pub alpha: Option<Scalar>,
    pub status: CandidateStatus,
    pub matching_alphas: Vec<Scalar>,
    pub witness: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub candidates: Vec<Candidate>,
    /// The first witness found in catalog order, for `witness_label`.
    pub witness: Option<Matrix>,
    pub witness_label: Option<CatalogLabel>,
}

/// Fingerprint filtering, then a witness search for every candidate in
/// catalog order.
pub fn classify(alg: &OmegaAlgebra, config: &SearchConfig) -> Result<ClassificationResult> {
    let matches = fingerprint_match(alg)?;
    let mut result = ClassificationResult {
        candidates: Vec::new(),
        witness: None,
        witness_label: None,
    };
    for m in matches {
        let found = iso_witness_search(alg, m.label, None, config)?;
        let (status, alpha, witness) = match found {
            Some(w) => {
                if result.witness.is_none() {
                    result.witness = Some(w.matrix.clone());
                    result.witness_label = Some(m.label);
                }
                (CandidateStatus::WitnessFound, w.alpha, Some(w.matrix))
            }
            None => (CandidateStatus::FingerprintMatch, None, None),
        };
        result.candidates.push(Candidate {
            label: m.label,
            alpha,
            status,
            matching_alphas: m.matching_alphas,
            witness,
        });
    }
    Ok(result)
}

/// Fingerprint collisions among the catalog entries of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityTable {
    pub dim: usize,
    pub sampled_alphas: Vec<Scalar>,
    /// Per label: number of distinct fingerprints across its samples.
    pub distinct_fingerprints: Vec<(CatalogLabel, usize)>,
    /// Pairs of distinct labels sharing a fingerprint at some samples.
    pub ambiguous_pairs: Vec<AmbiguousPair>,
    pub separable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguousPair {
    pub left: CatalogLabel,
    pub right: CatalogLabel,
    /// `(α of left, α of right)` sample pairs with equal fingerprints.
    pub colliding_samples: Vec<(Option<Scalar>, Option<Scalar>)>,
}

pub fn separability_table(dim: usize) -> SeparabilityTable {
    let entries: Vec<_> = catalog_fingerprints().iter().filter(|(l, _)| l.dim() == dim).collect();
    let distinct_fingerprints = entries
        .iter()
        .map(|(l, prints)| {
            let set: std::collections::HashSet<&Fingerprint> = prints.iter().map(|(_, f)| f).collect();
            (*l, set.len())
        })
        .collect();
    let mut ambiguous_pairs = Vec::new();
    for (x, (lx, px)) in entries.iter().enumerate() {
        for (ly, py) in entries.iter().skip(x + 1) {
            let colliding_samples: Vec<_> = px
                .iter()
                .flat_map(|(ax, fx)| {
                    py.iter()
                        .filter(move |(_, fy)| fx == fy)
                        .map(move |(ay, _)| (ax.clone(), ay.clone()))
                })
                .collect();
            if !colliding_samples.is_empty() {
                ambiguous_pairs.push(AmbiguousPair {
                    left: *lx,
                    right: *ly,
                    colliding_samples,
                });
            }
        }
    }
    SeparabilityTable {
        dim,
        sampled_alphas: classification_alphas(),
        distinct_fingerprints,
        separable: ambiguous_pairs.is_empty(),
        ambiguous_pairs,
    }
}

/// A random invertible matrix with entries in `{0, ±1, ±i, ±1/2}`.
pub fn random_invertible<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    use rand::seq::SliceRandom;
    let grid = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::from(-1),
        Scalar::i(),
        -Scalar::i(),
        Scalar::ratio(1, 2),
        Scalar::ratio(-1, 2),
    ];
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| grid.choose(rng).expect("nonempty").clone()).collect())
            .collect();
        let m = Matrix::from_rows(n, rows).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}
