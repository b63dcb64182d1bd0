//! Codimension-1 Lie subalgebras of the dimension-4 catalog entries.
//!
//! For `G_1_alpha` and `H_1_alpha` the subalgebra moves with α: it is
//! `span{x + p·e, y + e/α, z}` with `p² + p + 1/α = 0`, so it exists over
//! Q(i) only when `1 − 4/α` has a square root there. The shipped files for
//! those two entries are the instances at α = 2.

use crate::catalog::CatalogLabel;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub(crate) fn hint_text(label: CatalogLabel) -> Option<&'static str> {
    use CatalogLabel::*;
    Some(match label {
        L11 => include_str!("../data/hints/L_1_1.json"),
        L12 => include_str!("../data/hints/L_1_2.json"),
        L13 => include_str!("../data/hints/L_1_3.json"),
        L14 => include_str!("../data/hints/L_1_4.json"),
        L15 => include_str!("../data/hints/L_1_5.json"),
        L16 => include_str!("../data/hints/L_1_6.json"),
        L17 => include_str!("../data/hints/L_1_7.json"),
        L18 => include_str!("../data/hints/L_1_8.json"),
        L21 => include_str!("../data/hints/L_2_1.json"),
        L22 => include_str!("../data/hints/L_2_2.json"),
        L23 => include_str!("../data/hints/L_2_3.json"),
        L24 => include_str!("../data/hints/L_2_4.json"),
        E1Alpha => include_str!("../data/hints/E_1_alpha.json"),
        F1Alpha => include_str!("../data/hints/F_1_alpha.json"),
        G1Alpha => include_str!("../data/hints/G_1_alpha.json"),
        H1Alpha => include_str!("../data/hints/H_1_alpha.json"),
        AtAlpha => include_str!("../data/hints/At_alpha.json"),
        Bt => include_str!("../data/hints/Bt.json"),
        CtAlpha => include_str!("../data/hints/Ct_alpha.json"),
        L1 | L2 | AAlpha | B | CAlpha => return None,
    })
}

/// The α-dependent subalgebra of `G_1_alpha` / `H_1_alpha`, when it is
/// defined over Q(i).
pub(crate) fn moving_hint(alpha: &Scalar) -> Option<Subspace> {
    let q = alpha.inv().ok()?;
    // p = (−1 + √(1 − 4/α)) / 2
    let disc = Scalar::one() - &(Scalar::from(4) * &q);
    let p = (disc.sqrt()? - Scalar::one()) * Scalar::ratio(1, 2);
    let z = Scalar::zero;
    let o = Scalar::one;
    Subspace::span(4, &[vec![o(), z(), z(), p], vec![z(), o(), z(), q], vec![z(), z(), o(), z()]]).ok()
}
