mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sperkit_core::decide::Limits;
use sperkit_core::exactnum::RealAlg;
use sperkit_core::formula::parse_open;
use sperkit_core::poly::{Sign, UPoly};
use sperkit_core::sections::{
    extend_by_zero, sec_add, sec_inv, sec_mul, sec_neg, sec_sqrt, section_from_poly, SectionDesc,
};
use sperkit_core::sper::CellSet;

fn lim() -> Limits {
    Limits::default()
}

fn nonempty_cellset(rng: &mut impl Rng) -> CellSet {
    loop {
        let k = random_cellset(rng);
        if !k.is_empty() {
            return k;
        }
    }
}

fn small_poly(rng: &mut impl Rng, max_deg: usize) -> UPoly {
    let deg = rng.gen_range(0..=max_deg);
    UPoly::from_ints(&(0..=deg).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>())
}

fn pick(rng: &mut impl Rng, k: &CellSet) -> RealAlg {
    let pool = k.member_samples();
    pool[rng.gen_range(0..pool.len())].clone()
}

fn abs_on(k: CellSet) -> SectionDesc {
    let mut s = SectionDesc::new(k, parse_open("x >= 0 /\\ T = x \\/ x < 0 /\\ T = -x").unwrap()).unwrap();
    assert!(s.validate(&lim()).unwrap());
    s
}

/// A polynomial section or `|x|` on `k`.
fn random_section(rng: &mut impl Rng, k: &CellSet) -> (SectionDesc, Box<dyn Fn(&RealAlg) -> RealAlg>) {
    if rng.gen_bool(0.25) {
        let f = |a: &RealAlg| if a.sign() == Sign::Neg { a.neg() } else { a.clone() };
        return (abs_on(k.clone()), Box::new(f));
    }
    let p = small_poly(rng, 2);
    let q = p.clone();
    let f = move |a: &RealAlg| {
        q.coeffs().iter().rev().fold(RealAlg::zero(), |acc, c| acc.mul(a).add(&RealAlg::from_rat(c.clone())))
    };
    (section_from_poly(&p, k.clone()), Box::new(f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_operations_at_points(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = nonempty_cellset(&mut rng);
        let (s1, f1) = random_section(&mut rng, &k);
        let (s2, f2) = random_section(&mut rng, &k);
        let sum = sec_add(&s1, &s2).unwrap().prepare(&lim()).unwrap();
        let prod = sec_mul(&s1, &s2).unwrap().prepare(&lim()).unwrap();
        let neg = sec_neg(&s1).unwrap();
        for _ in 0..3 {
            let a = pick(&mut rng, &k);
            let (v1, v2) = (f1(&a), f2(&a));
            prop_assert_eq!(s1.eval_at_closed(&a, &lim()).unwrap(), v1.clone());
            prop_assert_eq!(sum.eval_at_closed(&a, &lim()).unwrap(), v1.add(&v2));
            prop_assert_eq!(prod.eval_at_closed(&a, &lim()).unwrap(), v1.mul(&v2));
            prop_assert_eq!(neg.eval_at_closed(&a, &lim()).unwrap(), v1.neg());
        }
    }

    #[test]
    fn square_roots_of_squares(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = nonempty_cellset(&mut rng);
        let p = small_poly(&mut rng, 1);
        let sq = section_from_poly(&(&p * &p), k.clone());
        let r = sec_sqrt(&sq, &lim()).unwrap();
        for _ in 0..3 {
            let a = pick(&mut rng, &k);
            let v = r.eval_at_closed(&a, &lim()).unwrap();
            prop_assert!(v.sign() != Sign::Neg);
            prop_assert_eq!(v.mul(&v), sq.eval_at_closed(&a, &lim()).unwrap());
        }
    }

    #[test]
    fn inverses_of_positive_sections(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = nonempty_cellset(&mut rng);
        let p = small_poly(&mut rng, 1);
        let c = UPoly::from_ints(&[rng.gen_range(1..=5)]);
        let s = section_from_poly(&(&(&p * &p) + &c), k.clone());
        let inv = sec_inv(&s, &lim()).unwrap();
        let one = sec_mul(&s, &inv).unwrap().prepare(&lim()).unwrap();
        for _ in 0..3 {
            let a = pick(&mut rng, &k);
            prop_assert_eq!(one.eval_at_closed(&a, &lim()).unwrap(), RealAlg::one());
        }
    }

    #[test]
    fn extension_by_zero_values(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let big = nonempty_cellset(&mut rng);
        let l = big.intersect(&random_cellset(&mut rng));
        let p = small_poly(&mut rng, 2);
        let s = section_from_poly(&p, l.clone());
        let e = extend_by_zero(&s, &big).unwrap();
        for _ in 0..4 {
            let a = pick(&mut rng, &big);
            let want = if l.contains_closed(&a) { s.eval_at_closed(&a, &lim()).unwrap() } else { RealAlg::zero() };
            prop_assert_eq!(e.eval_at_closed(&a, &lim()).unwrap(), want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn derived_sections_revalidate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = nonempty_cellset(&mut rng);
        let (s1, _) = random_section(&mut rng, &k);
        let (s2, _) = random_section(&mut rng, &k);
        let pos = section_from_poly(&UPoly::from_ints(&[1, 0, 1]), k.clone());
        let outputs = [
            sec_add(&s1, &s2).unwrap(),
            sec_mul(&s1, &s2).unwrap(),
            sec_inv(&pos, &lim()).unwrap(),
            sec_sqrt(&pos, &lim()).unwrap(),
        ];
        for s in outputs {
            let phi = s.phi().to_string();
            prop_assert!(s.unvalidated().validate(&lim()).unwrap(), "{}", phi);
        }
    }
}

#[test]
fn compatibility_is_preserved_by_ring_operations() {
    let full = CellSet::full();
    let ramp = extend_by_zero(&section_from_poly(&UPoly::x(), CellSet::basic_open(&[UPoly::x()])), &full).unwrap();
    let corpus = [
        abs_on(full.clone()),
        section_from_poly(&UPoly::from_ints(&[-1, 0, 2]), full.clone()),
        ramp,
    ];
    for a in &corpus {
        assert!(a.is_compatible(&lim()).unwrap(), "{}", a.phi());
        for b in &corpus {
            for s in [sec_add(a, b).unwrap(), sec_mul(a, b).unwrap()] {
                assert!(s.is_compatible(&lim()).unwrap(), "{}", s.phi());
            }
        }
    }
}

#[test]
fn step_sections_are_not_compatible() {
    let full = CellSet::full();
    let pos = CellSet::basic_open(&[UPoly::x()]);
    let step = extend_by_zero(&section_from_poly(&UPoly::one(), pos), &full).unwrap();
    assert!(!step.is_compatible(&lim()).unwrap());
    // Jump at an irrational point.
    let beyond = CellSet::sign_condition(&UPoly::from_ints(&[-2, 0, 1]), sperkit_core::poly::SignSet::POS)
        .intersect(&CellSet::basic_open(&[UPoly::x()]));
    let jump = extend_by_zero(&section_from_poly(&UPoly::one(), beyond), &full).unwrap();
    assert!(!jump.is_compatible(&lim()).unwrap());
    let id = section_from_poly(&UPoly::x(), full.clone());
    let sum = sec_add(&id, &step).unwrap();
    assert!(!sum.is_compatible(&lim()).unwrap());
}

/// The compatibility test agrees with deciding the one-sided continuity
/// sentences directly at every candidate point. The sentences are only
/// decided where that takes well under a second; a jump away from zero or
/// a quadratic piece already takes minutes.
#[test]
fn compatibility_agrees_with_continuity_sentences() {
    let full = CellSet::full();
    let pos = CellSet::basic_open(&[UPoly::x()]);
    let nonzero = CellSet::basic_open(&[UPoly::x()]).union(&CellSet::basic_open(&[UPoly::from_ints(&[0, -1])]));
    let sec = |text: &str| {
        let mut s = SectionDesc::new(full.clone(), parse_open(text).unwrap()).unwrap();
        assert!(s.validate(&lim()).unwrap(), "{text}");
        s
    };
    let reciprocal = sec_inv(&section_from_poly(&UPoly::x(), nonzero), &lim()).unwrap();
    let cases = [
        (abs_on(full.clone()), true, true),
        (sec("x > 0 /\\ T = 1 \\/ x <= 0 /\\ T = 0"), false, true),
        (extend_by_zero(&section_from_poly(&UPoly::x(), pos.clone()), &full).unwrap(), true, true),
        (extend_by_zero(&reciprocal, &full).unwrap(), false, true),
        (sec("x = 0 /\\ T = 1 \\/ x != 0 /\\ T = 0"), false, true),
        (sec("x > 1 /\\ T = 3*x - 2 \\/ x <= 1 /\\ T = x"), true, true),
        (sec("x >= 1 /\\ T = 3*x - 2 \\/ x < 1 /\\ T = x + 1"), false, false),
        (sec("x > 0 /\\ T = x^2 \\/ x <= 0 /\\ T = -x"), true, false),
        (sec("x > 1 /\\ T = x^2 \\/ x <= 1 /\\ T = 2*x - 1"), true, false),
        (sec("x > 1 /\\ T = x^2 \\/ x <= 1 /\\ T = 2*x"), false, false),
    ];
    for (s, want, decide_sentences) in cases {
        let p = s.prepare(&lim()).unwrap();
        assert_eq!(p.is_compatible(&lim()).unwrap(), want, "{}", s.phi());
        if !decide_sentences {
            continue;
        }
        let mut by_sentence = true;
        for b in p.candidate_breakpoints() {
            if s.domain().contains_closed(&b) {
                for right in [false, true] {
                    by_sentence &= p.continuous_by_sentence(&b, right, &lim()).unwrap();
                }
            }
        }
        assert_eq!(by_sentence, want, "sentence on {}", s.phi());
    }
}
