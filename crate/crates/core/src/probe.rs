//! Certificate checks for the structure trichotomy of nontrivial omega-Lie
//! algebras: either `dim L = 3`, or `L` has a Lie subalgebra of codimension
//! 1, or `ker ω` is an almost abelian Lie algebra of codimension 2 whose
//! abelian part acts nilpotently on `L`.
//!
//! A subspace of dimension at most 2 has no independent triple, so the
//! Jacobiator condition on it is vacuous and closure alone decides whether
//! it is a Lie subalgebra.
//!
//! Codimension-1 subalgebras occur in four shapes (a 3-dimensional
//! nontrivial omega-Lie algebra, a Lie algebra with a central element, and
//! two solvable shapes); the probe only certifies existence and does not
//! report which shape occurs.

use serde::Serialize;

use crate::algebra::OmegaAlgebra;
use crate::catalog::CatalogLabel;
use crate::error::{Error, Result};
use crate::matrix::{unit_vector, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TrichotomyCase {
    Dim3,
    Codim1LieSubalgebra,
    KerOmegaAlmostAbelian,
    Unresolved,
}

/// Outcome of every check the probe ran; `None` marks a check that was not
/// reached.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProbeDetails {
    pub hint_supplied: bool,
    pub hint_codim1: Option<bool>,
    pub hint_is_lie_subalgebra: Option<bool>,
    pub rad_dim: Option<usize>,
    pub rad_codim2: Option<bool>,
    pub rad_closed: Option<bool>,
    pub rad_is_lie: Option<bool>,
    pub rad_almost_abelian: Option<bool>,
    /// An abelian codimension-1 ideal of `ker ω` made of ad-nilpotent elements.
    pub abelian_part: Option<Subspace>,
    pub abelian_part_nilpotent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub case: TrichotomyCase,
    pub certificate: Option<Subspace>,
    pub details: ProbeDetails,
}

/// Coordinates of `[s_i, s_j]` in the echelon basis of `s`, for a closed `s`.
fn restricted_table(alg: &OmegaAlgebra, s: &Subspace) -> Result<Option<Vec<Vec<Vec<Scalar>>>>> {
    let vs = s.vectors();
    let m = vs.len();
    let mut table = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let b = alg.bracket(&vs[i], &vs[j])?;
            match s.coordinates(&b)? {
                Some(c) => table[i][j] = c,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(table))
}

fn check_ambient(alg: &OmegaAlgebra, s: &Subspace) -> Result<()> {
    if s.ambient() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: s.ambient(),
        });
    }
    Ok(())
}

/// True iff `s` is closed under the bracket and the Jacobiator vanishes on
/// it, so that the restriction is a Lie algebra.
pub fn verify_lie_subalgebra(alg: &OmegaAlgebra, s: &Subspace) -> Result<bool> {
    check_ambient(alg, s)?;
    if !alg.is_subalgebra(s)? {
        return Ok(false);
    }
    let vs = s.vectors();
    let m = vs.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if alg.jacobiator(&vs[i], &vs[j], &vs[k])?.iter().any(|c| !c.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An abelian ideal of codimension 1 in `s`, chosen inside `within` when
/// that is possible. `s` must be closed.
fn abelian_hyperplane_ideal(
    alg: &OmegaAlgebra,
    s: &Subspace,
    within: Option<&Subspace>,
) -> Result<Option<Subspace>> {
    let table = restricted_table(alg, s)?.ok_or(Error::NotClosed)?;
    let m = s.dim();
    if m == 0 {
        return Ok(None);
    }
    // work in the coordinates of s
    let to_local = |t: &Subspace| -> Result<Subspace> {
        let coords: Vec<Vec<Scalar>> = t
            .vectors()
            .iter()
            .map(|v| s.coordinates(v).map(|c| c.expect("inside s")))
            .collect::<Result<_>>()?;
        Subspace::span(m, &coords)
    };
    let to_ambient = |t: &Subspace| -> Result<Subspace> {
        let vs: Vec<Vec<Scalar>> = t.vectors().iter().map(|c| s.combine(c)).collect();
        Subspace::span(alg.dim(), &vs)
    };
    let target = match within {
        Some(w) => Some(to_local(&w.intersection(s)?)?),
        None => None,
    };
    if let Some(t) = &target {
        if t.dim() + 1 < m {
            return Ok(None);
        }
    }
    let bracket = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); m];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (o, t) in out.iter_mut().zip(&table[i][j]) {
                    *o += &(&c * t);
                }
            }
        }
        out
    };
    let is_abelian = |t: &Subspace| {
        let vs = t.vectors();
        vs.iter().all(|a| vs.iter().all(|b| bracket(a, b).iter().all(Scalar::is_zero)))
    };
    let derived = {
        let mut vs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                vs.push(table[i][j].clone());
            }
        }
        Subspace::span(m, &vs)?
    };
    // A hyperplane ideal inside `target` must be `target` itself when the
    // latter is a hyperplane.
    let pick = |candidate: Subspace| -> Result<Option<Subspace>> { Ok(Some(to_ambient(&candidate)?)) };
    if derived.is_zero() {
        return match &target {
            Some(t) if t.dim() + 1 == m => pick(t.clone()),
            _ => pick(Subspace::coordinate(m, &(0..m - 1).collect::<Vec<_>>())),
        };
    }
    if derived.is_full() {
        return Ok(None);
    }
    // the centralizer of D inside s
    let dvecs = derived.vectors();
    let mut rows = Vec::new();
    for d in &dvecs {
        for k in 0..m {
            rows.push((0..m).map(|i| bracket(&unit_vector(m, i), d)[k].clone()).collect());
        }
    }
    let centralizer = Subspace::span(m, &Matrix::from_rows(m, rows)?.kernel())?;
    if centralizer.dim() + 1 < m {
        return Ok(None);
    }
    if centralizer.dim() + 1 == m {
        let ok = is_abelian(&centralizer)
            && centralizer.contains_subspace(&derived)?
            && target.as_ref().is_none_or(|t| t.contains_subspace(&centralizer).unwrap_or(false));
        return if ok { pick(centralizer) } else { Ok(None) };
    }
    // D is central: every coordinate form of the bracket must have rank 2
    // and a common nonzero functional must lie in all their row spaces.
    let mut common = Subspace::full(m);
    for l in 0..m {
        let beta = Matrix::from_rows(
            m,
            (0..m).map(|i| (0..m).map(|j| table[i][j][l].clone()).collect()).collect(),
        )?;
        match beta.rank() {
            0 => continue,
            2 => common = common.intersection(&Subspace::span(m, &beta.row_vectors())?)?,
            _ => return Ok(None),
        }
    }
    if let Some(t) = &target {
        if t.dim() + 1 == m {
            let phi = t.annihilator();
            let phi = Subspace::span(m, &phi)?;
            return if common.contains_subspace(&phi)? { pick(t.clone()) } else { Ok(None) };
        }
    }
    if common.is_zero() {
        return Ok(None);
    }
    let chi = common.vectors().remove(0);
    let hyperplane = Subspace::span(m, &Matrix::from_rows(m, vec![chi])?.kernel())?;
    pick(hyperplane)
}

/// True iff the closed subspace `s` contains an abelian ideal of `s` of
/// codimension 1 (within `s`).
pub fn is_almost_abelian(alg: &OmegaAlgebra, s: &Subspace) -> Result<bool> {
    check_ambient(alg, s)?;
    if !alg.is_subalgebra(s)? {
        return Err(Error::NotClosed);
    }
    if s.is_zero() {
        return Ok(true);
    }
    Ok(abelian_hyperplane_ideal(alg, s, None)?.is_some())
}

/// True iff `ad h` is nilpotent on `L` for every basis vector `h` of `s`.
pub fn acts_nilpotently(alg: &OmegaAlgebra, s: &Subspace) -> Result<bool> {
    check_ambient(alg, s)?;
    let n = alg.dim() as u32;
    for h in s.vectors() {
        if !alg.ad_matrix(&h)?.pow(n)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elements `u` of `s` with `ad u` nilpotent, for `s` acting on `L` through a
/// solvable family of operators: `{u : tr(ad u · X) = 0}` for `X` in the unital
/// associative algebra generated by `ad s`.
fn nilpotent_part(alg: &OmegaAlgebra, s: &Subspace) -> Result<Subspace> {
    let n = alg.dim();
    let basis = s.vectors();
    let ads: Vec<Matrix> = basis.iter().map(|v| alg.ad_matrix(v)).collect::<Result<_>>()?;
    // spanning set of the associative algebra, grown by right multiplication
    let mut span_rows: Vec<Vec<Scalar>> = vec![Matrix::identity(n).entries().to_vec()];
    let mut algebra = vec![Matrix::identity(n)];
    let mut frontier = algebra.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for a in &ads {
                let y = x.mul(a)?;
                let mut rows = span_rows.clone();
                rows.push(y.entries().to_vec());
                let rank = Matrix::from_rows(n * n, rows.clone())?.rank();
                if rank > span_rows.len() {
                    span_rows = rows;
                    algebra.push(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let rows: Vec<Vec<Scalar>> = algebra
        .iter()
        .map(|x| ads.iter().map(|a| a.mul(x).expect("square").trace()).collect())
        .collect();
    let kernel = Matrix::from_rows(basis.len(), rows)?.kernel();
    let vectors: Vec<Vec<Scalar>> = kernel.iter().map(|c| s.combine(c)).collect();
    Subspace::span(n, &vectors)
}

/// Classifies `alg` by the trichotomy, using `hint` as the candidate
/// codimension-1 Lie subalgebra. A verified hint takes priority over the
/// `ker ω` case.
pub fn trichotomy_probe(alg: &OmegaAlgebra, hint: Option<&Subspace>) -> Result<TrichotomyReport> {
    alg.ensure_valid()?;
    if alg.effective_omega()?.is_zero() {
        return Err(Error::TrivialAlgebra);
    }
    let mut details = ProbeDetails {
        hint_supplied: hint.is_some(),
        ..ProbeDetails::default()
    };
    let report = |case, certificate, details| TrichotomyReport {
        case,
        certificate,
        details,
    };
    if alg.dim() == 3 {
        return Ok(report(TrichotomyCase::Dim3, None, details));
    }
    if let Some(h) = hint {
        check_ambient(alg, h)?;
        let codim1 = h.codim() == 1;
        details.hint_codim1 = Some(codim1);
        if codim1 {
            let lie = verify_lie_subalgebra(alg, h)?;
            details.hint_is_lie_subalgebra = Some(lie);
            if lie {
                return Ok(report(TrichotomyCase::Codim1LieSubalgebra, Some(h.clone()), details));
            }
        }
    }
    let rad = alg.radical_omega()?;
    details.rad_dim = Some(rad.dim());
    let codim2 = rad.codim() == 2;
    details.rad_codim2 = Some(codim2);
    if !codim2 {
        return Ok(report(TrichotomyCase::Unresolved, None, details));
    }
    let closed = alg.is_subalgebra(&rad)?;
    details.rad_closed = Some(closed);
    if !closed {
        return Ok(report(TrichotomyCase::Unresolved, None, details));
    }
    let lie = verify_lie_subalgebra(alg, &rad)?;
    details.rad_is_lie = Some(lie);
    let almost = is_almost_abelian(alg, &rad)?;
    details.rad_almost_abelian = Some(almost);
    if !lie || !almost {
        return Ok(report(TrichotomyCase::Unresolved, None, details));
    }
    let nilpotent = nilpotent_part(alg, &rad)?;
    let part = abelian_hyperplane_ideal(alg, &rad, Some(&nilpotent))?;
    let nil = match &part {
        Some(p) => acts_nilpotently(alg, p)?,
        None => false,
    };
    details.abelian_part = part;
    details.abelian_part_nilpotent = Some(nil);
    let case = if nil {
        TrichotomyCase::KerOmegaAlmostAbelian
    } else {
        TrichotomyCase::Unresolved
    };
    Ok(report(case, None, details))
}

/// The shipped codimension-1 hint for a dimension-4 catalog entry, as
/// stored in `data/hints`.
pub fn catalog_hint_file(label: CatalogLabel) -> Option<Subspace> {
    let text = crate::hints::hint_text(label)?;
    Some(crate::io::parse_subspace(text.as_bytes(), true).expect("shipped hints are well formed"))
}

/// A codimension-1 hint for the catalog entry at parameter `alpha`.
/// `G_1_alpha` and `H_1_alpha` need `√(1 − 4/α)` in Q(i); for other α they
/// have no hint.
pub fn catalog_hint(label: CatalogLabel, alpha: Option<&Scalar>) -> Option<Subspace> {
    match label {
        CatalogLabel::G1Alpha | CatalogLabel::H1Alpha => crate::hints::moving_hint(alpha?),
        _ => catalog_hint_file(label),
    }
}
