use std::collections::BTreeMap;

use proptest::prelude::*;
use sperkit_core::exactnum::RealAlg;
use sperkit_core::formula::{parse, parse_open, to_poly_atoms, Formula, Rel, Term};
use sperkit_core::Rat;

const VARS: [&str; 3] = ["x", "y", "z"];

fn rational() -> impl Strategy<Value = Rat> {
    (-9i64..=9, prop_oneof![Just(1i64), 1i64..=5]).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        rational().prop_map(Term::Const),
        prop::sample::select(&VARS[..]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            inner.clone().prop_map(Term::neg),
            (inner, 1u32..=3).prop_map(|(a, e)| Term::pow(a, e)),
        ]
    })
}

fn rel() -> impl Strategy<Value = Rel> {
    prop::sample::select(&[Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge][..])
}

fn qf_formula() -> impl Strategy<Value = Formula> {
    let atom = (term(), rel(), term()).prop_map(|(a, r, b)| Formula::atom(a, r, b));
    let leaf = prop_oneof![8 => atom, 1 => Just(Formula::True), 1 => Just(Formula::False)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    qf_formula().prop_recursive(2, 16, 2, |inner| {
        prop_oneof![
            (prop::sample::select(&VARS[..]), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (prop::sample::select(&VARS[..]), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            inner.prop_map(Formula::not),
        ]
    })
}

fn env(vals: [Rat; 3]) -> BTreeMap<String, RealAlg> {
    VARS.iter().zip(vals).map(|(v, r)| (v.to_string(), RealAlg::from_rat(r))).collect()
}

fn rat_env(vals: &[Rat; 3]) -> impl Fn(&str) -> Option<Rat> + '_ {
    move |v| VARS.iter().position(|w| *w == v).map(|i| vals[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity(phi in formula()) {
        let phi = phi.rectify();
        let text = phi.to_string();
        let back = parse_open(&text).unwrap();
        prop_assert_eq!(&back, &phi, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn declared_variables_are_enforced(phi in qf_formula()) {
        let names: Vec<String> = phi.free_vars().into_iter().collect();
        prop_assert!(parse(&phi.to_string(), &names).is_ok());
        if let Some(first) = names.first() {
            let fewer: Vec<String> = names.iter().filter(|v| *v != first).cloned().collect();
            prop_assert!(parse(&phi.to_string(), &fewer).is_err());
        }
    }

    #[test]
    fn normal_forms_preserve_truth(phi in qf_formula(), a in rational(), b in rational(), c in rational()) {
        let e = env([a, b, c]);
        let want = phi.eval_qf(&e).unwrap();
        prop_assert_eq!(phi.nnf().eval_qf(&e).unwrap(), want);
        prop_assert_eq!(to_poly_atoms(&phi).to_formula().eval_qf(&e).unwrap(), want);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        phi in qf_formula(),
        t in term(),
        a in rational(),
        b in rational(),
        c in rational(),
    ) {
        let vals = [a, b, c];
        let tv = t.eval_rat(&rat_env(&vals)).unwrap();
        let mut shifted = vals.clone();
        shifted[0] = tv;
        let lhs = phi.substitute("x", &t).eval_qf(&env(vals)).unwrap();
        let rhs = phi.eval_qf(&env(shifted)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_conversion_preserves_values(t in term(), a in rational(), b in rational(), c in rational()) {
        let order: Vec<String> = VARS.iter().map(|v| v.to_string()).collect();
        let vals = [a, b, c];
        let p = t.to_mpoly(&order).unwrap();
        prop_assert_eq!(p.eval(&vals), t.eval_rat(&rat_env(&vals)).unwrap());
        let back = Term::from_mpoly(&p, &order);
        prop_assert_eq!(back.to_mpoly(&order).unwrap(), p);
    }

    #[test]
    fn rectified_formulas_bind_each_name_once(phi in formula()) {
        let r = phi.rectify();
        prop_assert_eq!(r.free_vars(), phi.free_vars());
        fn binders(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Not(a) => binders(a, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    binders(a, out);
                    binders(b, out);
                }
                Formula::Exists(v, b) | Formula::Forall(v, b) => {
                    out.push(v.clone());
                    binders(b, out);
                }
                _ => {}
            }
        }
        let mut bs = Vec::new();
        binders(&r, &mut bs);
        let free = r.free_vars();
        for (i, v) in bs.iter().enumerate() {
            prop_assert!(!free.contains(v));
            prop_assert!(!bs[i + 1..].contains(v));
        }
    }
}

#[test]
fn interval_sentence_parses() {
    let phi = parse_open("exists t. 0 <= t /\\ t <= 1").unwrap();
    assert!(phi.free_vars().is_empty());
    let neg = parse_open("~(x > 0)").unwrap().nnf();
    assert_eq!(neg.to_string(), "x <= 0");
    assert!(parse_open("1/2 * x^2 - 3 > 0").is_ok());
}
