//! Decision and quantifier elimination for real closed fields.
//!
//! Quantifiers are removed innermost first. A block whose body mentions
//! only the bound variable is decided by scanning a sign table; every other
//! block goes through the Cohen-Hörmander engine in [`ch`], whose output is
//! a simplified disjunction of sign conditions on the remaining variables.

mod ch;
mod dnf;
mod signtable;

use dnf::Conj;

pub use signtable::{sign_table, CellKind, SignCell, SignTable};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::exactnum::RealAlg;
use crate::formula::{to_poly_atoms_with, Formula, PForm, Rel, Term};
use crate::mpoly::MPoly;
use crate::poly::UPoly;

/// Bounds checked before any work is done (degree, atoms) or during
/// elimination (nesting depth of sign-matrix computations).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_atoms: usize,
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 8,
            max_atoms: 64,
            max_depth: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("formula has free variables: {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
}

/// Rejects formulas over the degree or atom limits.
pub fn check_limits(phi: &Formula, limits: &Limits) -> Result<(), DecideError> {
    let atoms = phi.atoms();
    if atoms.len() > limits.max_atoms {
        return Err(DecideError::ResourceLimit(format!(
            "{} atoms, limit {}",
            atoms.len(),
            limits.max_atoms
        )));
    }
    let order: Vec<String> = phi.all_names().into_iter().collect();
    for a in atoms {
        let d = a.difference(&order).map_or(0, |p| p.total_degree());
        if d > limits.max_degree {
            return Err(DecideError::ResourceLimit(format!(
                "atom `{a}` has degree {d}, limit {}",
                limits.max_degree
            )));
        }
    }
    Ok(())
}

/// An equivalent quantifier-free formula.
pub fn qe(phi: &Formula, limits: &Limits) -> Result<Formula, DecideError> {
    check_limits(phi, limits)?;
    qe_unchecked(phi, limits)
}

fn qe_unchecked(phi: &Formula, limits: &Limits) -> Result<Formula, DecideError> {
    qe_nnf(&phi.rectify().nnf(), limits)
}

/// A quantifier-free formula equivalent to `exists var. phi` (or to `phi`
/// when `var` is not free in it).
pub fn eliminate(phi: &Formula, var: &str, limits: &Limits) -> Result<Formula, DecideError> {
    if phi.free_vars().contains(var) {
        qe(&Formula::exists(var, phi.clone()).rectify(), limits)
    } else {
        qe(phi, limits)
    }
}

pub fn decide_sentence(phi: &Formula, limits: &Limits) -> Result<bool, DecideError> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    if !free.is_empty() {
        return Err(DecideError::NotClosed(free));
    }
    check_limits(phi, limits)?;
    decide_closed(phi, limits)
}

fn decide_closed(phi: &Formula, limits: &Limits) -> Result<bool, DecideError> {
    let r = qe_unchecked(phi, limits)?;
    Ok(r.eval_qf(&BTreeMap::new()).expect("closed and quantifier-free"))
}

/// Truth of `phi` when its free variables take the given values.
pub fn decide_with_params(
    phi: &Formula,
    assignment: &BTreeMap<String, RealAlg>,
    limits: &Limits,
) -> Result<bool, DecideError> {
    let free = phi.free_vars();
    if let Some(v) = free.iter().find(|v| !assignment.contains_key(*v)) {
        return Err(DecideError::MissingAssignment(v.clone()));
    }
    // Evaluation alone does no elimination, so the limits do not apply.
    if phi.is_quantifier_free() {
        return Ok(phi.eval_qf(assignment).expect("every free variable is assigned"));
    }
    check_limits(phi, limits)?;
    let mut closed = phi.clone();
    for v in &free {
        let a = &assignment[v];
        closed = match a.as_rational() {
            Some(r) => closed.substitute(v, &Term::Const(r.clone())),
            None => Formula::exists(v, Formula::and(pin(v, a), closed)).rectify(),
        };
    }
    decide_closed(&closed, limits)
}

/// `v` equals the algebraic number `a`.
fn pin(v: &str, a: &RealAlg) -> Formula {
    let (lo, hi) = a.interval();
    let order = [String::from(v)];
    let p = Term::from_mpoly(&MPoly::from_upoly(0, &a.defining_poly()), &order);
    Formula::and_all([
        Formula::atom(p, Rel::Eq, Term::int(0)),
        Formula::atom(Term::var(v), Rel::Gt, Term::Const(lo)),
        Formula::atom(Term::var(v), Rel::Lt, Term::Const(hi)),
    ])
}

fn mk_and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, x) | (x, Formula::True) => x,
        (a, b) => Formula::and(a, b),
    }
}

fn mk_or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, x) | (x, Formula::False) => x,
        (a, b) => Formula::or(a, b),
    }
}

fn flatten_or(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn flatten_and(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn qe_nnf(f: &Formula, limits: &Limits) -> Result<Formula, DecideError> {
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => {
            if f.free_vars().is_empty() {
                let holds = f.eval_qf(&BTreeMap::new()).expect("closed atom");
                if holds {
                    Formula::True
                } else {
                    Formula::False
                }
            } else {
                Formula::Atom(a.clone())
            }
        }
        Formula::Not(_) => unreachable!("input is in negation normal form"),
        Formula::And(a, b) => mk_and(qe_nnf(a, limits)?, qe_nnf(b, limits)?),
        Formula::Or(a, b) => mk_or(qe_nnf(a, limits)?, qe_nnf(b, limits)?),
        Formula::Exists(v, b) => {
            let body = qe_nnf(b, limits)?;
            let mut disjuncts = Vec::new();
            flatten_or(&body, &mut disjuncts);
            let mut out = Formula::False;
            for d in disjuncts {
                let mut parts = Vec::new();
                flatten_and(&d, &mut parts);
                let (inner, outer): (Vec<_>, Vec<_>) = parts.into_iter().partition(|c| c.free_vars().contains(v));
                let r = if inner.is_empty() {
                    Formula::True
                } else {
                    eliminate_one(v, &Formula::and_all(inner), false, limits)?
                };
                out = mk_or(out, outer.into_iter().fold(r, |acc, c| mk_and(c, acc)));
                if out == Formula::True {
                    break;
                }
            }
            out
        }
        Formula::Forall(v, b) => {
            let body = qe_nnf(b, limits)?;
            let mut conjuncts = Vec::new();
            flatten_and(&body, &mut conjuncts);
            let mut out = Formula::True;
            for c in conjuncts {
                let mut parts = Vec::new();
                flatten_or(&c, &mut parts);
                let (inner, outer): (Vec<_>, Vec<_>) = parts.into_iter().partition(|d| d.free_vars().contains(v));
                let r = if inner.is_empty() {
                    Formula::False
                } else {
                    eliminate_one(v, &Formula::or_all(inner), true, limits)?
                };
                out = mk_and(out, outer.into_iter().fold(r, |acc, d| mk_or(d, acc)));
                if out == Formula::False {
                    break;
                }
            }
            out
        }
    })
}

/// Removes one quantifier from a quantifier-free body in negation normal
/// form.
fn eliminate_one(v: &str, body: &Formula, universal: bool, limits: &Limits) -> Result<Formula, DecideError> {
    let params: Vec<String> = body.free_vars().into_iter().filter(|w| w != v).collect();
    let mut order = Vec::with_capacity(params.len() + 1);
    order.push(String::from(v));
    order.extend(params.iter().cloned());
    let pf = to_poly_atoms_with(body, &order).expect("order covers the free variables");
    if params.is_empty() {
        return Ok(if decide_univariate(&pf, universal) {
            Formula::True
        } else {
            Formula::False
        });
    }
    let nparams = params.len();
    let memo: RefCell<BTreeMap<Conj, bool>> = RefCell::new(BTreeMap::new());
    let feasible = |c: &Conj| -> bool {
        if let Some(&b) = memo.borrow().get(c) {
            return b;
        }
        let b = satisfiable(c, &order, nparams, limits);
        memo.borrow_mut().insert(c.clone(), b);
        b
    };
    let paths = ch::Engine::run(&pf, universal, nparams, limits.max_depth, Some(&feasible))
        .map_err(|_| DecideError::ResourceLimit(format!("recursion depth limit {}", limits.max_depth)))?;
    let cs = prune(dnf::simplify(paths), &feasible);
    Ok(dnf::to_formula(&cs, &order))
}

/// Drops conjunctions with no solution and literals implied by the rest of
/// their conjunction. With one parameter this is exact; with more, each
/// question is a closed sentence for the decision procedure, and a question
/// it cannot settle within the limits leaves the conjunction alone.
fn prune(cs: Vec<Conj>, satisfiable: &dyn Fn(&Conj) -> bool) -> Vec<Conj> {
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        if c.is_empty() {
            return vec![c];
        }
        if !satisfiable(&c) {
            continue;
        }
        let mut c = c;
        let mut i = 0;
        while i < c.len() {
            let mut rest = c.clone();
            let (p, s) = rest.remove(i);
            rest.push((p, s.complement()));
            rest.sort_by(|a, b| a.0.cmp(&b.0));
            if !satisfiable(&rest) {
                c.remove(i);
            } else {
                i += 1;
            }
        }
        if c.is_empty() {
            return vec![c];
        }
        out.push(c);
    }
    dnf::simplify(out)
}

fn satisfiable(c: &Conj, order: &[String], nparams: usize, limits: &Limits) -> bool {
    if c.iter().any(|(_, s)| s.is_empty()) {
        return false;
    }
    if nparams == 1 {
        let ups: Vec<UPoly> = c.iter().map(|(p, _)| p.to_upoly(1).expect("one parameter")).collect();
        let table = sign_table(&ups);
        return table
            .cells
            .iter()
            .any(|cell| cell.signs.iter().zip(c).all(|(sg, (_, s))| s.contains(*sg)));
    }
    let body = dnf::to_formula(core::slice::from_ref(c), order);
    let closed = order[1..].iter().fold(body, |acc, v| Formula::exists(v, acc));
    match qe_unchecked(&closed.rectify(), limits) {
        Ok(r) => r.eval_qf(&BTreeMap::new()).unwrap_or(true),
        Err(_) => true,
    }
}

/// Decides `exists x. body` or `forall x. body` for a body in `x` alone by
/// scanning a sign table.
fn decide_univariate(body: &PForm, universal: bool) -> bool {
    let pols = ch::distinct_polys(body);
    let ups: Vec<UPoly> = pols.iter().map(|p| p.to_upoly(0).expect("univariate")).collect();
    let table = sign_table(&ups);
    let sat = |c: &SignCell| ch::eval_body(body, &pols, &|i| c.signs[i]);
    if universal {
        table.cells.iter().all(sat)
    } else {
        table.cells.iter().any(sat)
    }
}
