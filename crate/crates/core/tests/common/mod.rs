//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use sperkit_core::exactnum::RealAlg;
use sperkit_core::formula::{Formula, Rel, Term};
use sperkit_core::poly::UPoly;
use sperkit_core::sper::CellSet;
use sperkit_core::Rat;

pub const RELS: [Rel; 6] = [Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge];

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// A polynomial in `vars` of total degree at most `max_deg` with integer
/// coefficients in [-5, 5].
pub fn random_poly(rng: &mut impl Rng, vars: &[&str], max_deg: u32) -> Term {
    let nterms = rng.gen_range(1..=4);
    let mut acc: Option<Term> = None;
    for _ in 0..nterms {
        let c = rng.gen_range(-5i64..=5);
        let mut mono = Term::int(c);
        let mut budget = rng.gen_range(0..=max_deg);
        for v in vars {
            if budget == 0 {
                break;
            }
            let e = rng.gen_range(0..=budget);
            budget -= e;
            if e == 1 {
                mono = Term::mul(mono, Term::var(v));
            } else if e > 1 {
                mono = Term::mul(mono, Term::pow(Term::var(v), e));
            }
        }
        acc = Some(match acc {
            None => mono,
            Some(a) => Term::add(a, mono),
        });
    }
    acc.unwrap()
}

pub fn random_atom(rng: &mut impl Rng, vars: &[&str], max_deg: u32) -> Formula {
    let rel = RELS[rng.gen_range(0..6)];
    Formula::atom(random_poly(rng, vars, max_deg), rel, Term::int(0))
}

/// A boolean combination of one to four atoms.
pub fn random_qf(rng: &mut impl Rng, vars: &[&str], max_deg: u32, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return random_atom(rng, vars, max_deg);
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_qf(rng, vars, max_deg, depth - 1)),
        1 | 2 => Formula::and(random_qf(rng, vars, max_deg, depth - 1), random_qf(rng, vars, max_deg, depth - 1)),
        _ => Formula::or(random_qf(rng, vars, max_deg, depth - 1), random_qf(rng, vars, max_deg, depth - 1)),
    }
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

pub fn assignment(pairs: &[(&str, Rat)]) -> BTreeMap<String, RealAlg> {
    pairs.iter().map(|(v, r)| (v.to_string(), RealAlg::from_rat(r.clone()))).collect()
}

/// A random real algebraic number: a small rational or a root of a random
/// quadratic.
pub fn random_real(rng: &mut impl Rng) -> RealAlg {
    if rng.gen_bool(0.5) {
        return RealAlg::from_rat(random_rat(rng));
    }
    loop {
        let p = UPoly::from_ints(&[rng.gen_range(-9..=9), rng.gen_range(-4..=4), rng.gen_range(1..=3)]);
        let roots = sperkit_core::exactnum::isolate_roots(&p).unwrap();
        if !roots.is_empty() {
            return roots[rng.gen_range(0..roots.len())].clone();
        }
    }
}

/// A random canonical set built from up to five breakpoints.
pub fn random_cellset(rng: &mut impl Rng) -> CellSet {
    let k = rng.gen_range(0..=5);
    let mut pts: Vec<RealAlg> = (0..k).map(|_| random_real(rng)).collect();
    pts.sort();
    pts.dedup();
    let mem = (0..2 * pts.len() + 1).map(|_| rng.gen_bool(0.5)).collect();
    CellSet::new(pts, mem).unwrap()
}
