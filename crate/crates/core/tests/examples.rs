use omega_lie::catalog::{self, CatalogLabel};
use omega_lie::classifier::{self, SearchConfig};
use omega_lie::families::{self, P2Params};
use omega_lie::matrix::{unit_vector, zero_vector};
use omega_lie::probe::{self, TrichotomyCase};
use omega_lie::{io, AlgebraBuilder, Matrix, OmegaAlgebra, Scalar, Subspace};

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn m(rows: &[&[&str]]) -> Matrix {
    let cols = rows[0].len();
    Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect()).unwrap()
}

fn entry(label: CatalogLabel, alpha: Option<&str>) -> OmegaAlgebra {
    catalog::construct(label, alpha.map(s).as_ref()).unwrap()
}

fn e(n: usize, i: usize) -> Vec<Scalar> {
    unit_vector(n, i)
}

fn span(n: usize, axes: &[usize]) -> Subspace {
    Subspace::coordinate(n, axes)
}

#[test]
fn scalar_arithmetic() {
    assert_eq!(&s("1/2+i") * &s("1/2-i"), s("5/4"));
    assert_eq!(s("i").inv().unwrap(), s("-i"));
    assert_eq!(&s("2/3") + &s("1/6"), s("5/6"));
    assert_eq!(s("4/6").to_string(), "2/3");
}

#[test]
fn matrix_rank_kernel_inverse() {
    assert_eq!(Matrix::identity(3).rank(), 3);
    assert_eq!(Matrix::zeros(2, 4).rank(), 0);
    assert_eq!(m(&[&["1", "i"], &["i", "-1"]]).rank(), 1);
    assert!(Matrix::identity(3).kernel().is_empty());
    assert_eq!(Matrix::zeros(3, 3).kernel().len(), 3);
    let k = m(&[&["1", "1"]]).kernel();
    assert_eq!(Subspace::span(2, &k).unwrap(), Subspace::span(2, &[vec![s("1"), s("-1")]]).unwrap());
    assert_eq!(Matrix::identity(2).invert().unwrap(), Matrix::identity(2));
    assert_eq!(m(&[&["2", "0"], &["0", "i"]]).invert().unwrap(), m(&[&["1/2", "0"], &["0", "-i"]]));
    assert_eq!(m(&[&["1", "1"], &["0", "1"]]).invert().unwrap(), m(&[&["1", "-1"], &["0", "1"]]));
}

#[test]
fn brackets_and_jacobiators() {
    let l1 = entry(CatalogLabel::L1, None);
    let (x, y, z) = (e(3, 0), e(3, 1), e(3, 2));
    assert_eq!(l1.bracket(&y, &z).unwrap(), z);
    let u = vec![s("1"), s("i"), s("-2/3")];
    assert!(l1.bracket(&u, &u).unwrap().iter().all(Scalar::is_zero));
    let c2 = entry(CatalogLabel::CAlpha, Some("2"));
    assert_eq!(c2.bracket(&x, &z).unwrap(), vec![s("0"), s("0"), s("2")]);
    assert_eq!(l1.jacobiator(&x, &y, &z).unwrap(), z);
    let a0 = entry(CatalogLabel::AAlpha, Some("0"));
    assert_eq!(a0.jacobiator(&x, &y, &z).unwrap(), vec![s("-1"), s("0"), s("0")]);

    let mut sl2 = AlgebraBuilder::new(&["h", "e", "f"]);
    sl2.add_term(0, 1, 1, &s("2")).add_term(0, 2, 2, &s("-2")).add_term(1, 2, 0, &s("1"));
    let sl2 = sl2.build().unwrap();
    assert!(sl2.jacobiator(&x, &y, &z).unwrap().iter().all(Scalar::is_zero));
    assert!(sl2.recover_omega().unwrap().is_zero());
    let fp = sl2.fingerprint().unwrap();
    assert!(fp.is_lie);
    assert_eq!(fp.omega_rank, 0);
}

#[test]
fn omega_recovery_examples() {
    let mut l2 = AlgebraBuilder::new(&["x", "y", "z"]);
    l2.add_term(0, 2, 1, &s("1")).add_term(1, 2, 2, &s("1"));
    let omega = l2.build_without_omega().unwrap().recover_omega().unwrap();
    assert_eq!(omega, m(&[&["0", "0", "1"], &["0", "0", "0"], &["-1", "0", "0"]]));
    let abelian = AlgebraBuilder::new(&["x", "y", "z"]).build().unwrap();
    assert!(abelian.recover_omega().unwrap().is_zero());
    assert!(abelian.axiom_check().is_valid());
    assert_eq!(entry(CatalogLabel::CAlpha, Some("3")).recover_omega().unwrap()[(1, 2)], s("4"));
}

#[test]
fn basis_change_examples() {
    let l1 = entry(CatalogLabel::L1, None);
    assert_eq!(l1.change_of_basis(&Matrix::identity(3)).unwrap(), l1);
    let scaled = l1.change_of_basis(&m(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "5"]])).unwrap();
    assert!(scaled.axiom_check().is_valid());
}

#[test]
fn canonical_subspaces() {
    let l1 = entry(CatalogLabel::L1, None);
    assert_eq!(l1.derived_algebra(), span(3, &[1, 2]));
    let rad = l1.radical_omega().unwrap();
    assert_eq!(rad, span(3, &[2]));
    assert!(l1.is_ideal(&rad).unwrap());
    let l2 = entry(CatalogLabel::L2, None);
    let rad2 = l2.radical_omega().unwrap();
    assert_eq!(rad2, span(3, &[1]));
    assert!(!l2.is_ideal(&rad2).unwrap());
    let abelian = AlgebraBuilder::new(&["x", "y", "z"]).build().unwrap();
    assert!(abelian.center().is_full());

    let f1 = l1.fingerprint().unwrap();
    let f2 = l2.fingerprint().unwrap();
    assert!(f1.rad_is_ideal && !f2.rad_is_ideal);
    assert!(entry(CatalogLabel::CAlpha, Some("2")).fingerprint().unwrap().is_perfect);
}

#[test]
fn catalog_examples() {
    let b = entry(CatalogLabel::B, None);
    let (x, y, z) = (e(3, 0), e(3, 1), e(3, 2));
    assert_eq!(b.bracket(&x, &y).unwrap(), y);
    assert_eq!(b.bracket(&x, &z).unwrap(), vec![s("0"), s("1"), s("1")]);
    assert_eq!(b.bracket(&y, &z).unwrap(), x);
    assert_eq!(b.effective_omega().unwrap()[(1, 2)], s("2"));

    let g = entry(CatalogLabel::G1Alpha, Some("0"));
    let w = g.effective_omega().unwrap();
    assert_eq!(w[(3, 0)], s("0"));
    assert_eq!(w[(0, 1)], s("1"));
    let g3 = entry(CatalogLabel::G1Alpha, Some("3"));
    assert_eq!(g3.effective_omega().unwrap()[(3, 0)], s("3"));

    let err = catalog::construct(CatalogLabel::CAlpha, Some(&s("-1"))).unwrap_err();
    assert_eq!(err.kind(), "ParameterExcluded");
    assert_eq!(catalog::catalog_list(Some(3)).len(), 5);
    assert_eq!(catalog::catalog_list(Some(4)).len(), 19);
    assert_eq!(catalog::catalog_list(None).len(), 24);
}

#[test]
fn subalgebra_checks() {
    // span{x,y,z} in L_1_1 closes under the bracket, but ω(x,y) = 1 leaves a
    // Jacobiator on (x,y,z), so it is not a Lie subalgebra.
    let l11 = entry(CatalogLabel::L11, None);
    let xyz = span(4, &[0, 1, 2]);
    assert!(l11.is_subalgebra(&xyz).unwrap());
    assert!(!probe::verify_lie_subalgebra(&l11, &xyz).unwrap());
    assert!(probe::verify_lie_subalgebra(&l11, &span(4, &[0, 2, 3])).unwrap());
    assert!(probe::verify_lie_subalgebra(&l11, &Subspace::zero(4)).unwrap());
    // two vectors never see a Jacobiator, the whole algebra does
    let l1 = entry(CatalogLabel::L1, None);
    assert!(probe::verify_lie_subalgebra(&l1, &span(3, &[0, 1])).unwrap());
    assert!(!probe::verify_lie_subalgebra(&l1, &Subspace::full(3)).unwrap());
}

fn p2_instance() -> OmegaAlgebra {
    let p = P2Params {
        dim_h: 2,
        h1: zero_vector(2),
        h2: zero_vector(2),
        h3: zero_vector(2),
        b1: s("1"),
        b2: s("0"),
        c1: s("-2"),
    };
    families::construct_p2(&p, false).unwrap()
}

#[test]
fn almost_abelian_and_nilpotent_action() {
    // h1, h2, x, y, a
    let p2 = p2_instance();
    let ker = p2.radical_omega().unwrap();
    assert_eq!(ker, span(5, &[0, 1, 4]));
    assert!(probe::is_almost_abelian(&p2, &ker).unwrap());
    assert!(!probe::acts_nilpotently(&p2, &span(5, &[4])).unwrap());
    assert!(probe::acts_nilpotently(&p2, &Subspace::zero(5)).unwrap());
    let abelian = AlgebraBuilder::new(&["x", "y", "z"]).build().unwrap();
    assert!(probe::is_almost_abelian(&abelian, &Subspace::full(3)).unwrap());
    let c2 = entry(CatalogLabel::CAlpha, Some("2"));
    assert!(!probe::is_almost_abelian(&c2, &Subspace::full(3)).unwrap());
}

#[test]
fn trichotomy_examples() {
    for label in CatalogLabel::ALL.into_iter().filter(|l| l.dim() == 3) {
        let alpha = label.has_alpha().then_some("2");
        let report = probe::trichotomy_probe(&entry(label, alpha), None).unwrap();
        assert_eq!(report.case, TrichotomyCase::Dim3);
    }
    // span{x,y,z} in Ct_alpha is closed but not Lie; the probe falls back
    // to the ker ω route, while span{x,y,e} certifies codimension one.
    let ct = entry(CatalogLabel::CtAlpha, Some("2"));
    let report = probe::trichotomy_probe(&ct, Some(&span(4, &[0, 1, 2]))).unwrap();
    assert_eq!(report.details.hint_is_lie_subalgebra, Some(false));
    assert_eq!(report.case, TrichotomyCase::KerOmegaAlmostAbelian);
    let report = probe::trichotomy_probe(&ct, Some(&span(4, &[0, 1, 3]))).unwrap();
    assert_eq!(report.case, TrichotomyCase::Codim1LieSubalgebra);

    let report = probe::trichotomy_probe(&p2_instance(), None).unwrap();
    assert_eq!(report.case, TrichotomyCase::KerOmegaAlmostAbelian);
}

#[test]
fn classifier_examples() {
    let config = SearchConfig::default();
    let l2 = entry(CatalogLabel::L2, None);
    let p0 = m(&[&["1", "2", "0"], &["i", "0", "1"], &["0", "1", "-1/2"]]);
    let scrambled = l2.change_of_basis(&p0).unwrap();
    let w = classifier::iso_witness_search(&scrambled, CatalogLabel::L2, None, &config).unwrap().unwrap();
    assert!(scrambled.change_of_basis(&w.matrix).unwrap().same_structure(&l2));

    let w = classifier::iso_witness_search(&l2, CatalogLabel::L2, None, &config).unwrap().unwrap();
    assert!(l2.change_of_basis(&w.matrix).unwrap().same_structure(&l2));

    let l1 = entry(CatalogLabel::L1, None);
    assert!(classifier::iso_witness_search(&l1, CatalogLabel::L2, None, &config).unwrap().is_none());
    let labels: Vec<_> = classifier::fingerprint_match(&l1).unwrap().into_iter().map(|c| c.label).collect();
    assert!(labels.contains(&CatalogLabel::L1) && !labels.contains(&CatalogLabel::L2));

    let c2 = entry(CatalogLabel::CAlpha, Some("2")).change_of_basis(&p0).unwrap();
    let labels: Vec<_> = classifier::fingerprint_match(&c2).unwrap().into_iter().map(|c| c.label).collect();
    assert!(labels.contains(&CatalogLabel::CAlpha));

    let mut broken = AlgebraBuilder::new(&["x", "y", "z"]);
    broken.add_term(0, 1, 1, &s("1")).add_omega(0, 1, &s("5"));
    let broken = broken.build().unwrap();
    assert_eq!(classifier::classify(&broken, &config).unwrap_err().kind(), "InvalidAlgebra");

    let dim5 = families::sample(families::FamilyLabel::P2, &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1))
        .construct(false)
        .unwrap();
    assert_eq!(classifier::classify(&dim5, &config).unwrap_err().kind(), "UnsupportedDimension");
}

#[test]
fn file_format_examples() {
    let text = io::emit_algebra(&entry(CatalogLabel::L1, None));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["format"], "omega-lie/1");
    let brackets = value["brackets"].as_array().unwrap();
    assert!(brackets.contains(&serde_json::json!({"left": "x", "right": "y", "value": {"y": "1"}})));
    assert!(brackets.contains(&serde_json::json!({"left": "y", "right": "z", "value": {"z": "1"}})));
    assert_eq!(brackets.len(), 2);
    assert_eq!(value["omega"], serde_json::json!([{"left": "x", "right": "y", "value": "1"}]));

    let skew = r#"{"format":"omega-lie/1","dim":3,"basis":["x","y","z"],
        "brackets":[{"left":"x","right":"y","value":{"y":"1"}},{"left":"y","right":"z","value":{"z":"1"}}],
        "omega":[{"left":"x","right":"y","value":"1"},{"left":"y","right":"x","value":"1"}]}"#;
    let err = io::parse_algebra(skew.as_bytes()).unwrap_err();
    assert_eq!(err.kind(), "SchemaError");
    assert_eq!(err.path(), Some("$.omega[1]"));
}
