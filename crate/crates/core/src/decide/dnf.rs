//! Disjunctions of sign conditions and their simplification.

use alloc::vec::Vec;

use crate::formula::{Formula, Rel, Term};
use crate::mpoly::MPoly;
use crate::poly::SignSet;

/// `poly` has a sign in the set.
pub type Lit = (MPoly, SignSet);

/// A conjunction of literals, sorted by polynomial with no repeats.
pub type Conj = Vec<Lit>;

fn normalize(mut c: Conj) -> Option<Conj> {
    c.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Conj = Vec::with_capacity(c.len());
    for (p, s) in c {
        match out.last_mut() {
            Some((q, t)) if *q == p => *t = t.intersect(s),
            _ => out.push((p, s)),
        }
    }
    out.retain(|(_, s)| *s != SignSet::ALL);
    if out.iter().any(|(_, s)| s.is_empty()) {
        return None;
    }
    Some(out)
}

/// Every model of `b` is a model of `a`.
fn implies(b: &Conj, a: &Conj) -> bool {
    a.iter().all(|(p, s)| b.iter().any(|(q, t)| q == p && t.is_subset(*s)))
}

/// Two conjunctions over the same polynomials that differ in one literal
/// merge into one with the union of the sign sets there.
fn merge_pair(a: &Conj, b: &Conj) -> Option<Conj> {
    if a.len() != b.len() {
        return None;
    }
    let mut diff = None;
    for (i, ((p, s), (q, t))) in a.iter().zip(b).enumerate() {
        if p != q {
            return None;
        }
        if s != t {
            if diff.is_some() {
                return None;
            }
            diff = Some(i);
        }
    }
    let i = diff?;
    let mut out = a.clone();
    out[i].1 = a[i].1.union(b[i].1);
    normalize(out)
}

/// Removes unsatisfiable and subsumed conjunctions and merges neighbours
/// until nothing changes. The result is sorted.
pub fn simplify(paths: Vec<Conj>) -> Vec<Conj> {
    let mut cs: Vec<Conj> = paths.into_iter().filter_map(normalize).collect();
    cs.sort();
    cs.dedup();
    loop {
        let mut changed = false;
        'outer: for i in 0..cs.len() {
            for j in 0..cs.len() {
                if i == j {
                    continue;
                }
                if implies(&cs[j], &cs[i]) {
                    cs.remove(j);
                    changed = true;
                    break 'outer;
                }
                if let Some(m) = merge_pair(&cs[i], &cs[j]) {
                    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                    cs.remove(hi);
                    cs[lo] = m;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    cs.sort();
    cs
}

pub fn lit_formula(p: &MPoly, s: SignSet, order: &[alloc::string::String]) -> Formula {
    let p = p.primitive_positive();
    let zero = Term::int(0);
    let t = Term::from_mpoly(&p, order);
    let rel = match s {
        SignSet::POS => Rel::Gt,
        SignSet::NEG => Rel::Lt,
        SignSet::ZERO => Rel::Eq,
        SignSet::NONZERO => Rel::Ne,
        SignSet::NONNEG => Rel::Ge,
        SignSet::NONPOS => Rel::Le,
        SignSet::ALL => return Formula::True,
        _ => return Formula::False,
    };
    Formula::atom(t, rel, zero)
}

pub fn to_formula(cs: &[Conj], order: &[alloc::string::String]) -> Formula {
    Formula::or_all(
        cs.iter()
            .map(|c| Formula::and_all(c.iter().map(|(p, s)| lit_formula(p, *s, order)))),
    )
}
