use omega_lie::catalog::{self, CatalogLabel};
use omega_lie::classifier::random_invertible;
use omega_lie::families::{self, FamilyLabel};
use omega_lie::{io, Matrix, OmegaAlgebra, Scalar, Subspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, -6i64..=6, 1i64..=4, 1i64..=3).prop_map(|(re, im, dr, di)| {
        &Scalar::ratio(re, dr) + &(&Scalar::ratio(im, di) * &Scalar::i())
    })
}

fn small() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::zero()),
        Just(Scalar::one()),
        Just(Scalar::from(-1)),
        Just(Scalar::i()),
        Just(Scalar::ratio(1, 2)),
        Just(Scalar::from(2)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(small(), cols), rows)
        .prop_map(move |r| Matrix::from_rows(cols, r).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), n)
}

fn label() -> impl Strategy<Value = CatalogLabel> {
    prop::sample::select(CatalogLabel::ALL.to_vec())
}

fn entry(label: CatalogLabel) -> OmegaAlgebra {
    let alpha = label.has_alpha().then(|| Scalar::from(3));
    catalog::construct(label, alpha.as_ref()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn sqrt_squares_back(a in scalar()) {
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn rref_is_idempotent_and_kernel_is_annihilated(m in matrix(3, 5)) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(r.rank + m.kernel().len(), 5);
        for v in m.kernel() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), n in 2usize..5) {
        let p = random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let q = p.invert().unwrap();
        prop_assert_eq!(p.mul(&q).unwrap(), Matrix::identity(n));
        prop_assert_eq!(q.mul(&p).unwrap(), Matrix::identity(n));
    }

    #[test]
    fn subspace_sum_and_intersection_dims(a in matrix(2, 4), b in matrix(2, 4)) {
        let s = Subspace::span(4, &a.row_vectors()).unwrap();
        let t = Subspace::span(4, &b.row_vectors()).unwrap();
        let sum = s.sum(&t).unwrap();
        let cap = s.intersection(&t).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), s.dim() + t.dim());
        prop_assert!(sum.contains_subspace(&s).unwrap() && s.contains_subspace(&cap).unwrap());
    }

    #[test]
    fn jacobiator_is_alternating(l in label(), u in vector(4), v in vector(4), w in vector(4)) {
        let alg = entry(l);
        let n = alg.dim();
        let (u, v, w) = (&u[..n], &v[..n], &w[..n]);
        let j = alg.jacobiator(u, v, w).unwrap();
        let swapped = alg.jacobiator(v, u, w).unwrap();
        let rotated = alg.jacobiator(v, w, u).unwrap();
        prop_assert_eq!(&j, &rotated);
        prop_assert!(j.iter().zip(&swapped).all(|(a, b)| (a + b).is_zero()));
    }

    #[test]
    fn omega_axiom_holds_off_the_basis(l in label(), u in vector(4), v in vector(4), w in vector(4)) {
        // J(u,v,w) = ω(u,v)w + ω(v,w)u + ω(w,u)v for arbitrary vectors
        let alg = entry(l);
        let n = alg.dim();
        let (u, v, w) = (&u[..n], &v[..n], &w[..n]);
        let om = alg.effective_omega().unwrap();
        let form = |x: &[Scalar], y: &[Scalar]| -> Scalar {
            (0..n).map(|a| (0..n).map(|b| &(&x[a] * &om[(a, b)]) * &y[b]).sum::<Scalar>()).sum()
        };
        let (uv, vw, wu) = (form(u, v), form(v, w), form(w, u));
        let expected: Vec<Scalar> = (0..n)
            .map(|k| &(&(&uv * &w[k]) + &(&vw * &u[k])) + &(&wu * &v[k]))
            .collect();
        prop_assert_eq!(alg.jacobiator(u, v, w).unwrap(), expected);
    }

    #[test]
    fn bracket_is_bilinear(l in label(), a in scalar(), u in vector(4), v in vector(4), w in vector(4)) {
        let alg = entry(l);
        let n = alg.dim();
        let (u, v, w) = (&u[..n], &v[..n], &w[..n]);
        let combo: Vec<Scalar> = u.iter().zip(v).map(|(x, y)| &(&a * x) + y).collect();
        let left = alg.bracket(&combo, w).unwrap();
        let uw = alg.bracket(u, w).unwrap();
        let vw = alg.bracket(v, w).unwrap();
        let right: Vec<Scalar> = uw.iter().zip(&vw).map(|(x, y)| &(&a * x) + y).collect();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn basis_change_preserves_validity_and_fingerprint(l in label(), seed in any::<u64>()) {
        let alg = entry(l);
        let p = random_invertible(alg.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let moved = alg.change_of_basis(&p).unwrap();
        prop_assert!(moved.axiom_check().is_valid());
        prop_assert_eq!(moved.fingerprint().unwrap(), alg.fingerprint().unwrap());
        let back = moved.change_of_basis(&p.invert().unwrap()).unwrap();
        prop_assert!(back.same_structure(&alg));
    }

    #[test]
    fn omega_rank_is_even(l in label(), seed in any::<u64>()) {
        let alg = entry(l);
        let p = random_invertible(alg.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        let fp = alg.change_of_basis(&p).unwrap().fingerprint().unwrap();
        prop_assert_eq!(fp.omega_rank % 2, 0);
        prop_assert_eq!(fp.rad_dim, fp.n - fp.omega_rank);
        prop_assert!(fp.derived_dims.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn family_samples_are_valid(seed in any::<u64>(), idx in 0usize..6) {
        let family = FamilyLabel::ALL[idx];
        let params = families::sample(family, &mut ChaCha8Rng::seed_from_u64(seed));
        let alg = params.construct(false).unwrap();
        prop_assert!(alg.axiom_check().is_valid());
        prop_assert!(!alg.recover_omega().unwrap().is_zero());
        prop_assert_eq!(alg.fingerprint().unwrap().is_perfect, family.is_perfect());
    }

    #[test]
    fn algebra_files_round_trip(seed in any::<u64>(), idx in 0usize..6) {
        let family = FamilyLabel::ALL[idx];
        let params = families::sample(family, &mut ChaCha8Rng::seed_from_u64(seed));
        let alg = params.construct(false).unwrap();
        let text = io::emit_algebra(&alg);
        prop_assert_eq!(io::parse_algebra(text.as_bytes()).unwrap(), alg.clone());
        let ptext = io::to_pretty(&io::params_value(&params));
        let back = io::parse_params(ptext.as_bytes(), family, true).unwrap().value;
        prop_assert_eq!(back, params);
    }

    #[test]
    fn np1_solver_matches_entrywise_oracle(m in 1usize..=4, entries in prop::collection::vec(small(), 16)) {
        let mut b = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                b[(i, j)] = entries[i * 4 + j].clone();
            }
        }
        let solved = families::np1_solve_aprime(&b).unwrap();
        let oracle = np1_oracle(&b);
        let as_space = |ms: &[Matrix]| {
            let rows: Vec<Vec<Scalar>> = ms.iter().map(|a| a.entries().to_vec()).collect();
            Subspace::span(m * m, &rows).unwrap()
        };
        prop_assert_eq!(solved.len(), oracle.len());
        prop_assert_eq!(as_space(&solved), as_space(&oracle));
        for a in &solved {
            let lhs = a.mul(&b).unwrap().sub(&b.mul(a).unwrap()).unwrap();
            prop_assert_eq!(&lhs, a);
        }
    }
}

/// Kernel of `A′ ↦ A′B − BA′ − A′` on strictly upper-triangular matrices,
/// written out entry by entry.
fn np1_oracle(b: &Matrix) -> Vec<Matrix> {
    let m = b.rows();
    let unknowns: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    // equation (r, c): Σ_k a_rk b_kc − Σ_k b_rk a_kc − a_rc = 0
    let mut rows = Vec::new();
    for r in 0..m {
        for c in 0..m {
            let row = unknowns
                .iter()
                .map(|&(i, j)| {
                    let mut coef = Scalar::zero();
                    if i == r {
                        coef += &b[(j, c)];
                    }
                    if j == c {
                        coef -= &b[(r, i)];
                    }
                    if (i, j) == (r, c) {
                        coef -= &Scalar::one();
                    }
                    coef
                })
                .collect();
            rows.push(row);
        }
    }
    Matrix::from_rows(unknowns.len(), rows)
        .unwrap()
        .kernel()
        .into_iter()
        .map(|k| {
            let mut a = Matrix::zeros(m, m);
            for (v, &(i, j)) in k.into_iter().zip(&unknowns) {
                a[(i, j)] = v;
            }
            a
        })
        .collect()
}
