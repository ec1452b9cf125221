use num_traits::Zero;
use proptest::prelude::*;
use sperkit_core::exactnum::{isolate_roots, sign_at, RealAlg};
use sperkit_core::poly::{Sign, Sturm, UPoly};
use sperkit_core::Rat;

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

/// Rationals and roots of small quadratics.
fn real() -> impl Strategy<Value = RealAlg> {
    let root = (prop::collection::vec(-6i64..=6, 2..=2), 1i64..=3, any::<prop::sample::Index>())
        .prop_filter_map("no real root", |(mut cs, lead, idx)| {
            cs.push(lead);
            let roots = isolate_roots(&UPoly::from_ints(&cs)).ok()?;
            (!roots.is_empty()).then(|| roots[idx.index(roots.len())].clone())
        });
    prop_oneof![rational().prop_map(RealAlg::from_rat), root]
}

fn poly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-6i64..=6, 1..=5).prop_map(|cs| UPoly::from_ints(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws(a in real(), b in real(), c in real()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&b).add(&b), a.clone());
        prop_assert_eq!(a.add(&a.neg()), RealAlg::zero());
    }

    #[test]
    fn division_inverts_multiplication(a in real(), b in real()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        prop_assert_eq!(b.mul(&b.inv().unwrap()), RealAlg::one());
    }

    #[test]
    fn order_is_compatible(a in real(), b in real(), c in real()) {
        prop_assert_eq!(a.cmp(&b), a.sub(&b).sign().cmp(&Sign::Zero));
        if a <= b {
            prop_assert!(a.add(&c) <= b.add(&c));
        }
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        if a.sign() != Sign::Neg && b.sign() != Sign::Neg {
            prop_assert!(a.mul(&b).sign() != Sign::Neg);
        }
        prop_assert!(a.mul(&a).sign() != Sign::Neg);
    }

    #[test]
    fn rational_between_separates(a in real(), b in real()) {
        prop_assume!(a < b);
        let r = RealAlg::from_rat(a.rational_between(&b));
        prop_assert!(a < r && r < b);
    }

    #[test]
    fn square_roots(a in real()) {
        let sq = a.mul(&a);
        let r = sq.sqrt().unwrap();
        prop_assert!(r.sign() != Sign::Neg);
        prop_assert_eq!(r.mul(&r), sq);
        prop_assert_eq!(r, if a.sign() == Sign::Neg { a.neg() } else { a.clone() });
        if a.sign() == Sign::Neg {
            prop_assert!(a.sqrt().is_err());
        }
    }

    #[test]
    fn powers_multiply(a in real(), e in 0u32..4) {
        let mut acc = RealAlg::one();
        for _ in 0..e {
            acc = acc.mul(&a);
        }
        prop_assert_eq!(a.pow(e), acc);
    }

    #[test]
    fn isolated_roots_are_roots(p in poly()) {
        prop_assume!(!p.is_constant());
        let roots = isolate_roots(&p).unwrap();
        prop_assert_eq!(roots.len(), Sturm::new(&p.square_free()).count_all());
        for w in roots.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for r in &roots {
            prop_assert_eq!(sign_at(&p, r), Sign::Zero);
            prop_assert!(r.lower() <= r.upper());
        }
    }

    #[test]
    fn odd_degree_has_a_root(cs in prop::collection::vec(-9i64..=9, 1..=5)) {
        let mut cs = cs;
        if cs.len() % 2 == 0 {
            cs.pop();
        }
        cs.push(1);
        prop_assert!(!isolate_roots(&UPoly::from_ints(&cs)).unwrap().is_empty());
    }

    #[test]
    fn sign_matches_nearby_rationals(p in poly(), a in real()) {
        // Away from roots of p the sign is locally constant, so a fine
        // enough rational approximation has the same sign.
        let s = sign_at(&p, &a);
        if let Some(r) = a.as_rational() {
            prop_assert_eq!(s, p.sign_at(r));
        } else if s != Sign::Zero {
            let fine = a.refined_to(&Rat::new(1.into(), 1_000_000.into()));
            let mid = (fine.lower() + fine.upper()) / Rat::from_integer(2.into());
            prop_assert_eq!(s, p.sign_at(&mid));
        } else {
            prop_assert!(p.is_zero() || p.gcd(&a.defining_poly()).degree().unwrap_or(0) > 0);
        }
    }
}

#[test]
fn square_root_of_two_squared() {
    let r = RealAlg::sqrt_int(2);
    assert_eq!(r.mul(&r), RealAlg::from_int(2));
    assert!(Rat::zero() < r.lower());
}
