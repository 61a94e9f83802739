mod support;

use hopfolog::field::Matrix;
use hopfolog::grmod::{
    decompose, hom_basis, is_isomorphic, slash_homology, Decomposition, Degree, GradedModule, HalfLaurent, HopfFamily,
    ViolationKind,
};
use proptest::prelude::*;
use support::{assemble, brute_hom, expected, random_module, string_decomposition};

fn trunc(p: u32) -> HopfFamily {
    HopfFamily::truncated(p, 1, false).unwrap()
}

fn v(fam: &HopfFamily, i: usize, j: i64) -> GradedModule {
    GradedModule::indecomposable(fam, i, Degree::new(j)).unwrap()
}

fn single(fam: &HopfFamily, i: usize, j: i64) -> Decomposition {
    expected(fam, &[(i, Degree::new(j))])
}

fn families() -> Vec<HopfFamily> {
    vec![
        trunc(2),
        trunc(3),
        trunc(5),
        HopfFamily::truncated(2, 2, false).unwrap(),
        HopfFamily::truncated(3, 1, true).unwrap(),
        HopfFamily::taft(3, false).unwrap(),
        HopfFamily::taft(4, true).unwrap(),
        HopfFamily::group_ring_z2(),
    ]
}

#[test]
fn indecomposable_examples() {
    let h = v(&trunc(3), 2, 0);
    assert_eq!(h.dim(), 3);
    assert!(decompose(&h).is_projective());
    let unit = v(&trunc(5), 0, 0);
    assert_eq!(unit.dim(), 1);
    assert!(unit.x().is_zero());
    let taft = HopfFamily::taft(4, false).unwrap();
    let p = v(&taft, 3, 1);
    assert_eq!(p.dim(), 4);
    assert_eq!(p.degrees(), &[1, 2, 3, 4].map(Degree::new));
    assert!(decompose(&p).is_projective());
    assert!(GradedModule::indecomposable(&taft, 4, Degree::ZERO).is_err());
}

#[test]
fn validation_examples() {
    let fam = trunc(3);
    assert!(v(&fam, 1, 0).validate().is_empty());
    let f = fam.field().clone();
    let flat = Matrix::from_i64_rows(&f, &[vec![0, 0], vec![1, 0]]);
    let err = GradedModule::new(&fam, vec![Degree::ZERO, Degree::ZERO], flat);
    assert!(err.is_err());
    let cyc = HopfFamily::truncated(2, 1, true).unwrap();
    let f2 = cyc.field().clone();
    let swap = Matrix::from_i64_rows(&f2, &[vec![0, 1], vec![1, 0]]);
    let bad = GradedModule::new(&cyc, vec![Degree::ZERO, Degree::new(1)], swap);
    let msg = bad.unwrap_err().to_string();
    assert!(msg.to_lowercase().contains("nilpot"), "{msg}");
}

#[test]
fn nilpotency_violation_is_classified() {
    let cyc = HopfFamily::truncated(2, 1, true).unwrap();
    let f = cyc.field().clone();
    let swap = Matrix::from_i64_rows(&f, &[vec![0, 1], vec![1, 0]]);
    let viol = hopfolog::grmod::module::validate_parts(&cyc, &[Degree::ZERO, Degree::new(1)], &swap);
    assert!(viol.iter().any(|x| x.kind == ViolationKind::Nilpotency));
    assert!(!viol.iter().any(|x| x.kind == ViolationKind::Homogeneity));
}

#[test]
fn direct_sum_examples() {
    let fam = trunc(3);
    let m = v(&fam, 1, 2);
    assert_eq!(m.direct_sum(&GradedModule::zero(&fam)).unwrap(), m);
    let two = v(&fam, 0, 0).direct_sum(&v(&fam, 0, 0)).unwrap();
    assert_eq!(decompose(&two).multiplicity(0, Degree::ZERO), 2);
    assert_eq!(m.direct_sum(&two).unwrap().dim(), 4);
    assert!(m.direct_sum(&v(&trunc(5), 0, 0)).is_err());
}

#[test]
fn shift_examples() {
    let fam = trunc(5);
    let m = v(&fam, 2, 0);
    assert_eq!(m.shift(Degree::ZERO).unwrap(), m);
    assert_eq!(m.shift(Degree::new(3)).unwrap(), v(&fam, 2, 3));
    let bal = m.shift(Degree::from_halves(-2)).unwrap();
    assert_eq!(bal.poincare_polynomial().to_string(), "q^-1 + 1 + q");
}

#[test]
fn tensor_examples() {
    let fam = trunc(3);
    let m = assemble(&fam, &[(1, Degree::new(1)), (0, Degree::new(-2))]);
    assert!(is_isomorphic(&v(&fam, 0, 0).tensor(&m).unwrap(), &m).unwrap());
    let sq = v(&fam, 1, 0).tensor(&v(&fam, 1, 0)).unwrap();
    let want = expected(&fam, &[(2, Degree::ZERO), (0, Degree::new(1))]);
    assert_eq!(decompose(&sq), want);
    assert_eq!(string_decomposition(&sq), want);
    assert!(is_isomorphic(&sq, &v(&fam, 2, 0).direct_sum(&v(&fam, 0, 1)).unwrap()).unwrap());
    let free = v(&fam, 2, 0).tensor(&m).unwrap();
    let d = decompose(&free);
    assert!(d.is_projective());
    assert_eq!(d.summand_count(), m.dim());
}

#[test]
fn char_two_square_has_two_strings_of_length_two() {
    let fam = HopfFamily::truncated(2, 2, false).unwrap();
    let sq = v(&fam, 1, 0).tensor(&v(&fam, 1, 0)).unwrap();
    let oracle = string_decomposition(&sq);
    assert_eq!(decompose(&sq), oracle);
    assert_eq!(oracle.summand_count(), 2);
    assert!(oracle.iter().all(|(i, _, _)| i == 1));
}

#[test]
fn dual_examples() {
    let fam = trunc(5);
    assert!(is_isomorphic(&v(&fam, 0, 0).dual().unwrap(), &v(&fam, 0, 0)).unwrap());
    for i in 0..5 {
        let d = v(&fam, i, 0).dual().unwrap();
        assert_eq!(string_decomposition(&d), single(&fam, i, -(i as i64)));
        assert_eq!(decompose(&d), single(&fam, i, -(i as i64)));
        assert_eq!(d.dim(), i + 1);
    }
}

#[test]
fn decompose_examples() {
    let fam = trunc(7);
    for i in 0..7 {
        assert_eq!(decompose(&v(&fam, i, 3)), single(&fam, i, 3));
    }
}

#[test]
fn hom_examples() {
    let fam = trunc(5);
    assert_eq!(hom_basis(&v(&fam, 0, 0), &v(&fam, 0, 0)).unwrap().len(), 1);
    assert_eq!(hom_basis(&v(&fam, 0, 0), &v(&fam, 0, 1)).unwrap().len(), 0);
    for i in 0..=4 {
        for j in 0..=4 {
            let (a, b) = (v(&fam, i, 0), v(&fam, j, 0));
            assert_eq!(
                hom_basis(&a, &b).unwrap().len(),
                brute_hom(&a, &b).len(),
                "Hom(V_{i}, V_{j})"
            );
        }
    }
}

#[test]
fn slash_homology_examples() {
    for fam in families() {
        let n = fam.order();
        let free = v(&fam, n - 1, 0);
        for a in 1..n {
            assert!(slash_homology(&free, a).unwrap().values().all(|&k| k == 0));
        }
        let unit = slash_homology(&v(&fam, 0, 0), 1).unwrap();
        assert_eq!(
            unit.iter().filter(|(_, &k)| k > 0).collect::<Vec<_>>(),
            vec![(&Degree::ZERO, &1)]
        );
        assert!(slash_homology(&free, 0).is_err());
        assert!(slash_homology(&free, n).is_err());
    }
}

#[test]
fn is_isomorphic_examples() {
    let fam = trunc(3);
    let m = v(&fam, 1, 0);
    assert!(is_isomorphic(&m, &m).unwrap());
    assert!(!is_isomorphic(&v(&fam, 0, 1), &v(&fam, 0, 2)).unwrap());
    assert!(is_isomorphic(&m, &v(&trunc(5), 1, 0)).is_err());
}

#[test]
fn poincare_examples() {
    let fam = trunc(3);
    assert_eq!(v(&fam, 0, 0).poincare_polynomial(), HalfLaurent::one());
    assert_eq!(v(&fam, 1, 0).poincare_polynomial().to_string(), "1 + q");
}

#[test]
fn slash_homology_detects_projectives_exhaustively() {
    for fam in families() {
        let n = fam.order();
        for i in 0..n {
            let m = v(&fam, i, 0);
            let vanish = (1..n).all(|a| slash_homology(&m, a).unwrap().values().all(|&k| k == 0));
            assert_eq!(vanish, i == n - 1, "{fam} V_{i}");
        }
    }
}

fn any_family() -> impl Strategy<Value = HopfFamily> {
    prop::sample::select(families())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decomposition_matches_string_oracle(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, parts) = random_module(&mut rng, &fam, 4);
        let d = decompose(&m);
        prop_assert_eq!(&d, &expected(&fam, &parts));
        prop_assert_eq!(&d, &string_decomposition(&m));
        prop_assert_eq!(d.dim(), m.dim());
        prop_assert!(is_isomorphic(&d.reassemble(&fam).unwrap(), &m).unwrap());
    }

    #[test]
    fn krull_schmidt(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 3);
        let (n, _) = random_module(&mut rng, &fam, 3);
        prop_assert_eq!(decompose(&m.direct_sum(&n).unwrap()), decompose(&m).union(&decompose(&n)));
    }

    #[test]
    fn tensor_dimension_commutativity_and_poincare(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 2);
        let (n, _) = random_module(&mut rng, &fam, 2);
        let mn = m.tensor(&n).unwrap();
        let d = decompose(&mn);
        prop_assert_eq!(d.iter().map(|(i, _, k)| k * (i + 1)).sum::<usize>(), m.dim() * n.dim());
        prop_assert_eq!(&d, &decompose(&n.tensor(&m).unwrap()));
        prop_assert!(mn.validate().is_empty());
        let product = m.poincare_polynomial().mul(&n.poincare_polynomial()).map_exponents(|e| fam.normalize(e));
        prop_assert_eq!(mn.poincare_polynomial(), product);
    }

    #[test]
    fn dual_is_an_involution(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 3);
        let dd = m.dual().unwrap().dual().unwrap();
        prop_assert!(is_isomorphic(&dd, &m).unwrap());
    }

    #[test]
    fn slash_vanishing_iff_projective(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, parts) = random_module(&mut rng, &fam, 4);
        let n = fam.order();
        let vanish = (1..n).all(|a| slash_homology(&m, a).unwrap().values().all(|&k| k == 0));
        prop_assert_eq!(vanish, parts.iter().all(|&(i, _)| i == n - 1));
    }

    #[test]
    fn hom_dimension_matches_brute_force(fam in any_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 2);
        let (n, _) = random_module(&mut rng, &fam, 2);
        let basis = hom_basis(&m, &n).unwrap();
        prop_assert_eq!(basis.len(), brute_hom(&m, &n).len());
        for h in &basis {
            prop_assert!(h.validate().is_empty());
        }
    }
}
