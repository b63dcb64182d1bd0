//! The pencil `t ↦ det(ω + tκ)` with `κ(u,v) = tr(ad u ad v)`.
//!
//! Both forms transform as `PᵀXP`, so the pencil picks up the factor
//! `det(P)²` under a change of basis: its values at `t = 0, …, n` are an
//! invariant up to a nonzero common scale. For an α-family the values are
//! polynomials in α of degree at most `2n`, which constrains the parameter.

use crate::algebra::OmegaAlgebra;
use crate::catalog::ParametricTable;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Values of the pencil at `t = 0, …, n`.
pub(crate) fn values(alg: &OmegaAlgebra) -> Vec<Scalar> {
    let w = alg.effective_omega().expect("valid algebra");
    let k = alg.trace_form();
    (0..=alg.dim())
        .map(|t| {
            let m = w.add(&k.scale(&Scalar::from(t as i64))).expect("same shape");
            m.det().expect("square")
        })
        .collect()
}

/// `u = λv` for some `λ ≠ 0`.
pub(crate) fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    let uz = u.iter().all(Scalar::is_zero);
    let vz = v.iter().all(Scalar::is_zero);
    if uz || vz {
        return uz == vz;
    }
    (0..u.len()).all(|j| (j + 1..u.len()).all(|k| &u[j] * &v[k] == &u[k] * &v[j]))
}

/// Coefficients, constant term first, without trailing zeros.
type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

/// The polynomial of degree `< xs.len()` through the given points.
fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Poly {
    let n = xs.len();
    let rows = xs.iter().map(|x| (0..n as u32).map(|e| x.pow(e)).collect()).collect();
    let vandermonde = Matrix::from_rows(n, rows).expect("square");
    let (coeffs, _) = vandermonde.solve(ys).expect("lengths").expect("distinct nodes");
    trim(coeffs)
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") * &lead;
        for (i, c) in b.iter().enumerate() {
            let v = &f * c;
            r[shift + i] -= &v;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: Poly, b: Poly) -> Poly {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// What the pencil says about α for an input matching `table`.
pub(crate) enum AlphaConstraint {
    /// No information (the condition holds identically).
    Any,
    /// No admissible α in Q(i).
    Impossible,
    /// α is among these values.
    Finite(Vec<Scalar>),
}

/// Divides out every factor `α − e`.
fn deflate(mut p: Poly, e: &Scalar) -> Poly {
    let factor = vec![-e, Scalar::one()];
    while p.len() > 1 && rem(&p, &factor).is_empty() {
        // synthetic division by (α − e)
        let mut q = vec![Scalar::zero(); p.len() - 1];
        let mut carry = Scalar::zero();
        for i in (1..p.len()).rev() {
            carry = &p[i] + &(&carry * e);
            q[i - 1] = carry.clone();
        }
        p = q;
    }
    p
}

/// Grid values, their negatives and reciprocals.
fn small_values() -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for x in Scalar::search_grid().into_iter().chain([Scalar::from(3), Scalar::ratio(1, 3)]) {
        let mut cands = vec![-&x, x.clone()];
        if let Ok(r) = x.inv() {
            cands.push(-&r);
            cands.push(r);
        }
        for c in cands {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// `excluded` lists parameter values that cannot be solutions.
pub(crate) fn alpha_constraint(input: &[Scalar], table: &ParametricTable, excluded: &[Scalar]) -> AlphaConstraint {
    let n = table.dim;
    let nodes: Vec<Scalar> = (0..=2 * n as i64).map(Scalar::from).collect();
    let samples: Vec<Vec<Scalar>> = nodes.iter().map(|a| values(&table.evaluate(a))).collect();
    // p_t(α) for each t
    let polys: Vec<Poly> = (0..=n)
        .map(|t| interpolate(&nodes, &samples.iter().map(|v| v[t].clone()).collect::<Vec<_>>()))
        .collect();
    let mut conditions: Vec<Poly> = Vec::new();
    if input.iter().all(Scalar::is_zero) {
        conditions.extend(polys.iter().cloned());
    } else {
        for j in 0..=n {
            for k in j + 1..=n {
                // u_j p_k − u_k p_j
                let len = polys[j].len().max(polys[k].len());
                let c: Poly = (0..len)
                    .map(|e| {
                        let pk = polys[k].get(e).cloned().unwrap_or_else(Scalar::zero);
                        let pj = polys[j].get(e).cloned().unwrap_or_else(Scalar::zero);
                        &(&input[j] * &pk) - &(&input[k] * &pj)
                    })
                    .collect();
                conditions.push(trim(c));
            }
        }
    }
    let mut g = conditions.into_iter().filter(|c| !c.is_empty()).fold(Vec::new(), gcd);
    for e in excluded {
        g = deflate(g, e);
    }
    // peel off small roots so that a quadratic remains where possible
    let mut roots = Vec::new();
    for e in small_values() {
        if g.len() > 1 && rem(&g, &vec![-&e, Scalar::one()]).is_empty() {
            g = deflate(g, &e);
            roots.push(e);
        }
    }
    roots.extend(match g.len() {
        0 => return AlphaConstraint::Any,
        1 => Vec::new(),
        2 => vec![(-&g[0]).checked_div(&g[1]).expect("nonzero lead")],
        3 => {
            let (a, b, c) = (&g[2], &g[1], &g[0]);
            let disc = &(b * b) - &(&Scalar::from(4) * &(a * c));
            match disc.sqrt() {
                Some(r) => {
                    let two_a = a * &Scalar::from(2);
                    let mut roots = vec![(&-b + &r).checked_div(&two_a).expect("nonzero")];
                    if !r.is_zero() {
                        roots.push((&-b - &r).checked_div(&two_a).expect("nonzero"));
                    }
                    roots
                }
                None => Vec::new(),
            }
        }
        _ => return AlphaConstraint::Any,
    });
    // the common roots may still make the target pencil vanish
    let roots: Vec<Scalar> = roots
        .into_iter()
        .filter(|a| proportional(input, &values(&table.evaluate(a))))
        .collect();
    if roots.is_empty() {
        AlphaConstraint::Impossible
    } else {
        AlphaConstraint::Finite(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct, CatalogLabel};

    #[test]
    fn pencil_separates_perfect_three_dimensional_entries() {
        let a = values(&construct(CatalogLabel::AAlpha, Some(&Scalar::from(2))).unwrap());
        let b = values(&construct(CatalogLabel::B, None).unwrap());
        assert!(!proportional(&a, &b));
        let c = CatalogLabel::CAlpha.parametric();
        let excluded = CatalogLabel::CAlpha.excluded_alphas();
        // C_1 shares the pencil of B but not its bracket: only α = 1 survives
        match alpha_constraint(&b, &c, &excluded) {
            AlphaConstraint::Finite(roots) => assert_eq!(roots, vec![Scalar::one()]),
            _ => panic!("expected α = 1"),
        }
        let c3 = values(&construct(CatalogLabel::CAlpha, Some(&Scalar::from(3))).unwrap());
        match alpha_constraint(&c3, &c, &excluded) {
            AlphaConstraint::Finite(roots) => assert!(roots.contains(&Scalar::from(3))),
            _ => panic!("expected finitely many α"),
        }
        assert!(matches!(alpha_constraint(&a, &CatalogLabel::AAlpha.parametric(), &[]), AlphaConstraint::Any));
    }

    #[test]
    fn gcd_of_polynomials() {
        let s = |x: i64| Scalar::from(x);
        // (α−1)(α−2) and (α−1)(α+3)
        let g = gcd(vec![s(2), s(-3), s(1)], vec![s(-3), s(2), s(1)]);
        assert_eq!(g.len(), 2);
        assert_eq!((-&g[0]).checked_div(&g[1]).unwrap(), s(1));
        // α²(α−1) loses both factors at 0
        assert_eq!(deflate(vec![s(0), s(0), s(-1), s(1)], &s(0)), vec![s(-1), s(1)]);
    }
}
