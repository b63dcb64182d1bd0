//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use omega_lie::catalog::{self, CatalogLabel};
use omega_lie::classifier::{self, random_invertible, CandidateStatus, SearchConfig};
use omega_lie::families::{self, FamilyLabel, Np1Params, Np3Params, P2Params};
use omega_lie::matrix::{unit_vector, zero_vector};
use omega_lie::probe::{self, TrichotomyCase};
use omega_lie::{Error, Matrix, OmegaAlgebra, Scalar, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every catalog entry at every sampled parameter.
fn catalog_instances() -> Vec<(CatalogLabel, Option<Scalar>, OmegaAlgebra)> {
    CatalogLabel::ALL
        .iter()
        .flat_map(|&label| {
            catalog::sample_alphas_for(label).into_iter().map(move |a| {
                let alg = catalog::construct(label, a.as_ref()).expect("sampled parameters are allowed");
                (label, a, alg)
            })
        })
        .collect()
}

fn family_instances(per_family: usize, seed: u64) -> Vec<(FamilyLabel, OmegaAlgebra)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FamilyLabel::ALL
        .iter()
        .flat_map(|&family| (0..per_family).map(move |_| family))
        .map(|family| {
            let params = families::sample(family, &mut rng);
            (family, params.construct(false).expect("samples are valid"))
        })
        .collect()
}

fn name(label: CatalogLabel, alpha: &Option<Scalar>) -> String {
    match alpha {
        Some(a) => format!("{label}(α={a})"),
        None => label.to_string(),
    }
}

fn catalog_validity() -> Outcome {
    let start = Instant::now();
    let instances = catalog_instances();
    for (label, alpha, alg) in &instances {
        let report = alg.axiom_check();
        ensure(report.is_valid(), || format!("{} fails: {report:?}", name(*label, alpha)))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances, zero residuals, {elapsed:.0?}", instances.len()))
}

fn omega_recovery() -> Outcome {
    let instances = catalog_instances();
    for (label, alpha, alg) in &instances {
        let table = label.parametric();
        let a = alpha.clone().unwrap_or_else(Scalar::zero);
        let tabulated = table.omega[0].add(&table.omega[1].scale(&a)).expect("same shape");
        let recovered = alg.recover_omega().map_err(|e| format!("{}: {e}", name(*label, alpha)))?;
        ensure(recovered == tabulated, || format!("{} recovered {recovered:?}", name(*label, alpha)))?;
        if matches!(label, CatalogLabel::CAlpha | CatalogLabel::CtAlpha) {
            let (y, z) = (1, 2);
            let expected = &Scalar::one() + &a;
            ensure(recovered[(y, z)] == expected, || format!("{}: ω(y,z) ≠ 1+α", name(*label, alpha)))?;
        }
    }
    Ok(format!("{} instances match their tables", instances.len()))
}

fn nontriviality() -> Outcome {
    let catalog = catalog_instances();
    for (label, alpha, alg) in &catalog {
        let omega = alg.recover_omega().map_err(|e| e.to_string())?;
        ensure(!omega.is_zero(), || format!("{} has ω = 0", name(*label, alpha)))?;
    }
    let fams = family_instances(10, 3);
    for (family, alg) in &fams {
        let omega = alg.recover_omega().map_err(|e| e.to_string())?;
        ensure(!omega.is_zero(), || format!("{family} instance has ω = 0"))?;
    }
    Ok(format!("{} catalog and {} family instances", catalog.len(), fams.len()))
}

/// Kernel of `A′ ↦ A′B − BA′ − A′` over strictly upper-triangular `A′`,
/// built from matrix products of the elementary basis.
fn brute_force_kernel(b: &Matrix) -> Subspace {
    let m = b.rows();
    let basis: Vec<Matrix> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut e = Matrix::zeros(m, m);
            e[(i, j)] = Scalar::one();
            e
        })
        .collect();
    if basis.is_empty() {
        return Subspace::zero(m * m);
    }
    let images: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|e| {
            let img = e.mul(b).and_then(|eb| eb.sub(&b.mul(e)?)).and_then(|c| c.sub(e));
            img.expect("square").entries().to_vec()
        })
        .collect();
    let op = Matrix::from_columns(m * m, &images).expect("uniform");
    let kernel: Vec<Vec<Scalar>> = op
        .kernel()
        .into_iter()
        .map(|coeffs| {
            let mut sum = Matrix::zeros(m, m);
            for (c, e) in coeffs.iter().zip(&basis) {
                sum = sum.add(&e.scale(c)).expect("same shape");
            }
            sum.entries().to_vec()
        })
        .collect();
    Subspace::span(m * m, &kernel).expect("uniform")
}

fn as_subspace(m: usize, ms: &[Matrix]) -> Subspace {
    let rows: Vec<Vec<Scalar>> = ms.iter().map(|a| a.entries().to_vec()).collect();
    if rows.is_empty() {
        return Subspace::zero(m * m);
    }
    Subspace::span(m * m, &rows).expect("uniform")
}

fn sylvester_oracle() -> Outcome {
    let start = Instant::now();
    let b = Matrix::diagonal(&[Scalar::zero(), Scalar::one(), Scalar::from(2)]);
    let solved = families::np1_solve_aprime(&b).map_err(|e| e.to_string())?;
    let mut e12 = Matrix::zeros(3, 3);
    e12[(0, 1)] = Scalar::one();
    let mut e23 = Matrix::zeros(3, 3);
    e23[(1, 2)] = Scalar::one();
    ensure(solved.len() == 2, || format!("diag(0,1,2): dimension {}", solved.len()))?;
    ensure(as_subspace(3, &solved) == as_subspace(3, &[e12, e23]), || "diag(0,1,2): not span{E12, E23}".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = Scalar::search_grid();
    for trial in 0..50 {
        let m = 1 + trial % 4;
        let mut b = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                b[(i, j)] = grid[rand::Rng::gen_range(&mut rng, 0..grid.len())].clone();
            }
        }
        let solved = families::np1_solve_aprime(&b).map_err(|e| e.to_string())?;
        ensure(as_subspace(m, &solved) == brute_force_kernel(&b), || format!("kernel mismatch for B = {b:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("diag(0,1,2) and 50 random B agree, {elapsed:.0?}"))
}

fn expect_residual(result: omega_lie::Result<OmegaAlgebra>, triple: [usize; 3], what: &str) -> Result<(), String> {
    match result {
        Err(Error::ConstraintViolated(report)) => {
            ensure(report.residual_for(triple).is_some(), || format!("{what}: no residual at {triple:?}"))
        }
        other => Err(format!("{what}: expected a violation, got {other:?}")),
    }
}

fn negative_tests() -> Outcome {
    let z = |n| zero_vector(n);
    // h1, h2, x, y, a
    let p2 = P2Params {
        dim_h: 2,
        h1: z(2),
        h2: z(2),
        h3: z(2),
        b1: Scalar::one(),
        b2: Scalar::zero(),
        c1: Scalar::from(-1),
    };
    expect_residual(families::construct_p2(&p2, false), [2, 3, 4], "P2 with b1+c1+1 ≠ 0")?;
    let np3 = Np3Params {
        dim_h: 2,
        f: Matrix::diagonal(&[Scalar::from(5), Scalar::zero()]),
        h1: z(2),
        h2: unit_vector(2, 0),
        h3: z(2),
        b2: Scalar::zero(),
        d2: Scalar::zero(),
    };
    expect_residual(families::construct_np3(&np3, false), [2, 3, 4], "NP3 with f(h2) ≠ d2 h2")?;
    // h1, h2, h3, x, v; E13 is outside the kernel for B = diag(0,1,2)
    let mut e13 = Matrix::zeros(3, 3);
    e13[(0, 2)] = Scalar::one();
    let np1 = Np1Params {
        dim_h: 3,
        b: Matrix::diagonal(&[Scalar::zero(), Scalar::one(), Scalar::from(2)]),
        a_prime: e13,
        h1: z(3),
    };
    expect_residual(families::construct_np1(&np1, false), [2, 3, 4], "NP1 with A' outside the kernel")?;
    Ok("P2, NP3 and NP1 violations report residuals at (x,y,a) and (h3,x,v)".into())
}

fn perfectness_split() -> Outcome {
    let fams = family_instances(10, 5);
    for (family, alg) in &fams {
        let perfect = alg.fingerprint().map_err(|e| e.to_string())?.is_perfect;
        ensure(perfect == family.is_perfect(), || format!("{family} instance has is_perfect = {perfect}"))?;
    }
    Ok("P1, P2 perfect and NP1 to NP4 not, 10 instances each".into())
}

fn fingerprint_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for &label in CatalogLabel::ALL.iter() {
        let alpha = label.has_alpha().then(|| Scalar::from(3));
        let alg = catalog::construct(label, alpha.as_ref()).map_err(|e| e.to_string())?;
        let fp = alg.fingerprint().map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let p = random_invertible(alg.dim(), &mut rng);
            let moved = alg.change_of_basis(&p).map_err(|e| e.to_string())?;
            let moved_fp = moved.fingerprint().map_err(|e| e.to_string())?;
            ensure(moved_fp == fp, || format!("{label}: fingerprint changed under {p:?}"))?;
        }
    }
    Ok("24 entries, 100 basis changes each".into())
}

fn classification_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let config = SearchConfig::default();
    let mut runs = 0;
    let mut witnessed = 0;
    for &label in CatalogLabel::ALL.iter().filter(|l| l.dim() == 3) {
        let alphas = catalog::sample_alphas_for(label);
        for trial in 0..50 {
            let alpha = &alphas[trial % alphas.len()];
            let alg = catalog::construct(label, alpha.as_ref()).map_err(|e| e.to_string())?;
            let scrambled = alg.change_of_basis(&random_invertible(3, &mut rng)).map_err(|e| e.to_string())?;
            let result = classifier::classify(&scrambled, &config).map_err(|e| e.to_string())?;
            runs += 1;
            ensure(result.candidates.iter().any(|c| c.label == label), || {
                format!("{} scrambled: candidates {:?}", name(label, alpha), result.candidates)
            })?;
            for c in &result.candidates {
                if c.status != CandidateStatus::WitnessFound {
                    continue;
                }
                let w = c.witness.as_ref().ok_or("WitnessFound without a matrix")?;
                let target = catalog::construct(c.label, c.alpha.as_ref()).map_err(|e| e.to_string())?;
                let moved = scrambled.change_of_basis(w).map_err(|e| e.to_string())?;
                ensure(moved.same_structure(&target), || format!("witness for {} does not verify", c.label))?;
                witnessed += 1;
            }
        }
    }
    let table = classifier::separability_table(4);
    let text = serde_json::to_string_pretty(&table).map_err(|e| e.to_string())? + "\n";
    let committed = include_str!("../data/separability_dim4.json");
    ensure(text == committed, || "dim-4 separability artifact is stale".into())?;
    Ok(format!(
        "{runs} scrambles contain their label, {witnessed} witnesses re-verified; dim-4 table committed with {} ambiguous pairs",
        table.ambiguous_pairs.len()
    ))
}

fn trichotomy_coverage() -> Outcome {
    let catalog = catalog_instances();
    for (label, alpha, alg) in &catalog {
        let hint = probe::catalog_hint(*label, alpha.as_ref());
        let report = probe::trichotomy_probe(alg, hint.as_ref()).map_err(|e| e.to_string())?;
        ensure(report.case != TrichotomyCase::Unresolved, || format!("{} unresolved", name(*label, alpha)))?;
    }
    let fams = family_instances(10, 29);
    for (family, alg) in &fams {
        let report = probe::trichotomy_probe(alg, None).map_err(|e| e.to_string())?;
        ensure(report.case != TrichotomyCase::Unresolved, || format!("{family} instance unresolved"))?;
    }
    Ok(format!("{} catalog and {} family instances resolved", catalog.len(), fams.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("catalog validity", catalog_validity),
        ("omega recovery", omega_recovery),
        ("nontriviality", nontriviality),
        ("NP1 Sylvester oracle", sylvester_oracle),
        ("constraint-breaking negatives", negative_tests),
        ("perfectness split", perfectness_split),
        ("fingerprint invariance", fingerprint_invariance),
        ("classification soundness", classification_soundness),
        ("trichotomy coverage", trichotomy_coverage),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
