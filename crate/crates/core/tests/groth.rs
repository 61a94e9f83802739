mod support;

use hopfolog::grmod::{Degree, GradedModule, HalfLaurent, HopfFamily};
use hopfolog::groth::{
    balanced_indecomposable, base_case_holds, class_of, fusion_set, fusion_table, hm_split_deviation, rn_mul,
    split_class, split_class_of, verlinde_oracle, RnElem, VerlindeElem,
};
use hopfolog::stable::shift_t;
use proptest::prelude::*;
use support::{random_module, string_decomposition};

fn trunc(p: u32) -> HopfFamily {
    HopfFamily::truncated(p, 1, false).unwrap()
}

fn rn(n: usize, terms: &[(i64, i64)]) -> RnElem {
    RnElem::from_terms(n, terms.iter().copied()).unwrap()
}

#[test]
fn rn_products() {
    let a = rn(5, &[(0, 1), (1, 1)]);
    assert_eq!(rn_mul(&a, &RnElem::one(5).unwrap()).unwrap(), a);
    let b = rn(3, &[(0, 1), (1, 1)]);
    assert_eq!(rn_mul(&b, &b).unwrap(), rn(3, &[(1, 1)]));
    for n in 2..10 {
        let all: Vec<(i64, i64)> = (0..n as i64).map(|k| (k, 1)).collect();
        assert!(rn(n, &all).is_zero(), "1 + q + ... + q^{} in R_{n}", n - 1);
    }
    assert!(rn_mul(&rn(3, &[(0, 1)]), &rn(4, &[(0, 1)])).is_err());
}

#[test]
fn module_classes() {
    let fam = trunc(3);
    assert!(class_of(&GradedModule::indecomposable(&fam, 2, Degree::ZERO).unwrap())
        .unwrap()
        .is_zero());
    let v1 = GradedModule::indecomposable(&fam, 1, Degree::ZERO).unwrap();
    assert_eq!(class_of(&v1).unwrap().to_string(), "1 + q");
    let v12 = GradedModule::indecomposable(&fam, 1, Degree::new(2)).unwrap();
    assert_eq!(class_of(&v12).unwrap().to_string(), "-q");
    assert!(class_of(&balanced_indecomposable(&fam, 1).unwrap()).is_err());
}

#[test]
fn split_classes() {
    let fam = trunc(3);
    for i in 0..2 {
        let m = balanced_indecomposable(&fam, i).unwrap();
        assert_eq!(split_class(&m), VerlindeElem::from_support(3, &[i]));
    }
    let v1 = balanced_indecomposable(&fam, 1).unwrap();
    assert_eq!(
        split_class(&v1.tensor(&v1).unwrap()),
        VerlindeElem::from_support(3, &[0])
    );
    assert!(split_class(&GradedModule::indecomposable(&fam, 2, Degree::ZERO).unwrap()).is_zero());
    let shifted = GradedModule::indecomposable(&fam, 1, Degree::ZERO).unwrap();
    let mut want = VerlindeElem::zero(3);
    want.add_term(1, &HalfLaurent::monomial(Degree::from_halves(1), 1));
    assert_eq!(split_class(&shifted), want);
}

#[test]
fn fusion_set_examples() {
    assert_eq!(fusion_set(2, 3, 5).unwrap(), vec![1]);
    assert_eq!(fusion_set(0, 0, 7).unwrap(), vec![0]);
    assert_eq!(fusion_set(1, 1, 3).unwrap(), vec![0]);
    assert!(fusion_set(4, 0, 5).is_err());
}

#[test]
fn verlinde_examples() {
    assert_eq!(verlinde_oracle(1, 1, 1).unwrap(), vec![0]);
    assert_eq!(verlinde_oracle(2, 3, 3).unwrap(), vec![1]);
    for j in 0..=6 {
        assert_eq!(verlinde_oracle(0, j, 6).unwrap(), vec![j]);
    }
    assert!(verlinde_oracle(4, 0, 3).is_err());
}

#[test]
fn fusion_set_equals_verlinde_oracle() {
    for n in 2..=16 {
        for i in 0..=n - 2 {
            for j in 0..=n - 2 {
                assert_eq!(
                    fusion_set(i, j, n).unwrap(),
                    verlinde_oracle(i, j, n - 2).unwrap(),
                    "{i}x{j} n={n}"
                );
            }
        }
    }
}

#[test]
fn fusion_table_examples() {
    let t = fusion_table(&trunc(3)).unwrap();
    assert!(t.mismatches().is_empty());
    assert_eq!(t.cell(1, 1).computed, VerlindeElem::from_support(3, &[0]));
    let taft = fusion_table(&HopfFamily::taft(4, false).unwrap()).unwrap();
    assert_eq!(taft.cell(1, 2).computed, VerlindeElem::from_support(4, &[1]));
    assert!(taft.mismatches().is_empty());
    assert!(fusion_table(&HopfFamily::truncated(2, 2, false).unwrap()).is_err());
}

#[test]
fn fusion_cells_agree_with_string_oracle() {
    for fam in [trunc(5), HopfFamily::taft_balanced(3, false).unwrap()] {
        let t = fusion_table(&fam).unwrap();
        let n = fam.order();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let a = balanced_indecomposable(&t.family, i).unwrap();
                let b = balanced_indecomposable(&t.family, j).unwrap();
                let oracle = split_class_of(&string_decomposition(&a.tensor(&b).unwrap()), &t.family);
                assert_eq!(t.cell(i, j).computed, oracle, "{fam} {i}x{j}");
            }
        }
    }
}

#[test]
fn base_case_in_module_category() {
    for p in [5u32, 7] {
        for j in 1..=(p as usize - 3) {
            assert!(base_case_holds(&trunc(p), j).unwrap());
        }
    }
    assert!(base_case_holds(&HopfFamily::taft(5, false).unwrap(), 2).unwrap());
    assert!(base_case_holds(&trunc(3), 1).is_err());
}

#[test]
fn hm_deviation_examples() {
    let dev = hm_split_deviation(2, 2).unwrap();
    assert!(dev.iter().any(|c| (c.i, c.j) == (1, 1)));
    let fam = HopfFamily::truncated(2, 2, false).unwrap();
    let v1 = balanced_indecomposable(&fam, 1).unwrap();
    let oracle = split_class_of(&string_decomposition(&v1.tensor(&v1).unwrap()), &fam);
    let cell = dev.iter().find(|c| (c.i, c.j) == (1, 1)).unwrap();
    assert_eq!(cell.computed, oracle);
    assert_eq!(cell.predicted, VerlindeElem::from_support(4, &[0, 2]));
    assert!(hm_split_deviation(1, 2).is_err());
    assert!(hm_split_deviation(5, 1).unwrap().is_empty());
}

#[test]
fn classes_surject_from_indecomposables() {
    // the classes of V_0{k}, k = 0..n-2, form the standard basis of R_n
    for n in [2u32, 3, 5, 7] {
        let fam = trunc(n);
        for k in 0..n as i64 - 1 {
            let c = class_of(&GradedModule::indecomposable(&fam, 0, Degree::new(k)).unwrap()).unwrap();
            let mut want = vec![0; n as usize - 1];
            want[k as usize] = 1;
            assert_eq!(c.coeffs(), want.as_slice());
        }
    }
}

fn class_family() -> impl Strategy<Value = HopfFamily> {
    prop::sample::select(vec![
        trunc(2),
        trunc(3),
        trunc(5),
        HopfFamily::taft(3, false).unwrap(),
        HopfFamily::taft(4, false).unwrap(),
        HopfFamily::taft(5, false).unwrap(),
        HopfFamily::taft(6, false).unwrap(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_is_a_ring_homomorphism(fam in class_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 2);
        let (n, _) = random_module(&mut rng, &fam, 2);
        let lhs = class_of(&m.tensor(&n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rn_mul(&class_of(&m).unwrap(), &class_of(&n).unwrap()).unwrap());
    }

    #[test]
    fn grading_shift_multiplies_by_q(fam in class_family(), seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let (m, _) = random_module(&mut rng, &fam, 3);
        let up = m.shift(Degree::new(1)).unwrap();
        prop_assert_eq!(class_of(&up).unwrap(), class_of(&m).unwrap().shift(1));
        prop_assert_eq!(class_of(&shift_t(&m).unwrap()).unwrap(), class_of(&m).unwrap().neg());
    }

    #[test]
    fn rn_ring_axioms(n in 2usize..12, a in prop::collection::vec(-5i64..=5, 6),
                      b in prop::collection::vec(-5i64..=5, 6), c in prop::collection::vec(-5i64..=5, 6)) {
        let mk = |v: &[i64]| RnElem::from_terms(n, v.iter().enumerate().map(|(k, &x)| (k as i64, x))).unwrap();
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(rn_mul(&x, &y).unwrap(), rn_mul(&y, &x).unwrap());
        prop_assert_eq!(rn_mul(&rn_mul(&x, &y).unwrap(), &z).unwrap(), rn_mul(&x, &rn_mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(rn_mul(&x, &y.add(&z).unwrap()).unwrap(),
                        rn_mul(&x, &y).unwrap().add(&rn_mul(&x, &z).unwrap()).unwrap());
        prop_assert_eq!(x.coeffs().len(), n - 1);
    }
}
