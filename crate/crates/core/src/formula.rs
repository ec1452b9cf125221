//! First-order formulas over ordered fields: terms, atoms, boolean and
//! quantifier structure, text syntax, and the polynomial-atom normal form.
//!
//! Text syntax:
//!
//! ```text
//! formula := ('exists' | 'forall') IDENT '.' formula | disj
//! disj    := conj ('\/' conj)*
//! conj    := neg ('/\' neg)*
//! neg     := '~' neg | '(' formula ')' | atom | 'true' | 'false'
//!          | ('exists' | 'forall') IDENT '.' formula
//! atom    := sum REL sum            REL in  =  !=  <  <=  >  >=
//! sum     := prod (('+' | '-') prod)*
//! prod    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := INT ('/' INT)? | IDENT | '(' sum ')'
//! ```

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{sign_at, RealAlg};
use crate::mpoly::MPoly;
use crate::poly::{fmt_rat, Sign, UPoly};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Rat),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Pow(Box<Term>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub lhs: Term,
    pub rel: Rel,
    pub rhs: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
}

impl Term {
    pub fn int(n: i64) -> Term {
        Term::Const(Rat::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(Term::Neg(Box::new(b))))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn pow(a: Term, e: u32) -> Term {
        Term::Pow(Box::new(a), e)
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Term::Neg(a) | Term::Pow(a, _) => a.vars(out),
        }
    }

    pub fn mentions(&self, v: &str) -> bool {
        match self {
            Term::Const(_) => false,
            Term::Var(w) => w == v,
            Term::Add(a, b) | Term::Mul(a, b) => a.mentions(v) || b.mentions(v),
            Term::Neg(a) | Term::Pow(a, _) => a.mentions(v),
        }
    }

    pub fn substitute(&self, v: &str, t: &Term) -> Term {
        match self {
            Term::Var(w) if w == v => t.clone(),
            Term::Const(_) | Term::Var(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.substitute(v, t), b.substitute(v, t)),
            Term::Mul(a, b) => Term::mul(a.substitute(v, t), b.substitute(v, t)),
            Term::Neg(a) => Term::neg(a.substitute(v, t)),
            Term::Pow(a, e) => Term::pow(a.substitute(v, t), *e),
        }
    }

    /// Expands into a polynomial over `order`; `None` if a variable is
    /// missing from it.
    pub fn to_mpoly(&self, order: &[String]) -> Option<MPoly> {
        Some(match self {
            Term::Const(c) => MPoly::Const(c.clone()),
            Term::Var(v) => MPoly::var(order.iter().position(|w| w == v)?),
            Term::Add(a, b) => a.to_mpoly(order)?.add(&b.to_mpoly(order)?),
            Term::Mul(a, b) => a.to_mpoly(order)?.mul(&b.to_mpoly(order)?),
            Term::Neg(a) => a.to_mpoly(order)?.neg(),
            Term::Pow(a, e) => a.to_mpoly(order)?.pow(*e),
        })
    }

    /// The polynomial in one variable `v` (constants allowed).
    pub fn to_upoly(&self, v: &str) -> Option<UPoly> {
        self.to_mpoly(&[v.to_owned()])?.to_upoly(0)
    }

    /// Renders a polynomial as a sum of monomials.
    pub fn from_mpoly(p: &MPoly, order: &[String]) -> Term {
        let terms = p.terms(order.len());
        let mut acc: Option<Term> = None;
        for (c, exps) in terms {
            let mut mono: Option<Term> = None;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let f = if e == 1 {
                    Term::Var(order[i].clone())
                } else {
                    Term::pow(Term::Var(order[i].clone()), e)
                };
                mono = Some(match mono {
                    None => f,
                    Some(m) => Term::mul(m, f),
                });
            }
            let mag = c.abs();
            let body = match mono {
                None => Term::Const(mag.clone()),
                Some(m) if mag.is_one() => m,
                Some(m) => Term::mul(Term::Const(mag.clone()), m),
            };
            acc = Some(match acc {
                None if c.is_negative() => match body {
                    Term::Const(k) => Term::Const(-k),
                    Term::Mul(k, rest) if matches!(*k, Term::Const(_)) => {
                        let Term::Const(k) = *k else { unreachable!() };
                        Term::Mul(Box::new(Term::Const(-k)), rest)
                    }
                    other => Term::neg(other),
                },
                None => body,
                Some(a) if c.is_negative() => Term::sub(a, body),
                Some(a) => Term::add(a, body),
            });
        }
        acc.unwrap_or_else(|| Term::int(0))
    }

    /// Evaluates with rational values.
    pub fn eval_rat(&self, env: &dyn Fn(&str) -> Option<Rat>) -> Option<Rat> {
        Some(match self {
            Term::Const(c) => c.clone(),
            Term::Var(v) => env(v)?,
            Term::Add(a, b) => a.eval_rat(env)? + b.eval_rat(env)?,
            Term::Mul(a, b) => a.eval_rat(env)? * b.eval_rat(env)?,
            Term::Neg(a) => -a.eval_rat(env)?,
            Term::Pow(a, e) => num_traits::pow::pow(a.eval_rat(env)?, *e as usize),
        })
    }

    fn level(&self) -> u8 {
        match self {
            Term::Add(..) => 0,
            Term::Mul(..) => 1,
            Term::Neg(_) => 2,
            Term::Const(c) if c.is_negative() => 2,
            Term::Const(c) if !c.is_integer() => 3,
            Term::Pow(..) => 3,
            Term::Const(_) | Term::Var(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Const(c) => f.write_str(&fmt_rat(c)),
            Term::Var(v) => f.write_str(v),
            Term::Add(a, b) => {
                a.write_at(f, 0)?;
                match &**b {
                    Term::Neg(inner) => {
                        f.write_str(" - ")?;
                        inner.write_at(f, 1)
                    }
                    _ => {
                        f.write_str(" + ")?;
                        b.write_at(f, 1)
                    }
                }
            }
            Term::Mul(a, b) => {
                a.write_at(f, 1)?;
                f.write_str("*")?;
                b.write_at(f, 2)
            }
            Term::Neg(a) => {
                f.write_str("-")?;
                if matches!(**a, Term::Const(_)) {
                    f.write_str("(")?;
                    a.write_at(f, 0)?;
                    f.write_str(")")
                } else {
                    a.write_at(f, 2)
                }
            }
            Term::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Rel> {
        Some(match s {
            "=" => Rel::Eq,
            "!=" => Rel::Ne,
            "<" => Rel::Lt,
            "<=" => Rel::Le,
            ">" => Rel::Gt,
            ">=" => Rel::Ge,
            _ => return None,
        })
    }

    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Gt => Rel::Le,
            Rel::Ge => Rel::Lt,
        }
    }

    /// Whether `s rel 0` holds.
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Rel::Eq => s == Sign::Zero,
            Rel::Ne => s != Sign::Zero,
            Rel::Lt => s == Sign::Neg,
            Rel::Le => s != Sign::Pos,
            Rel::Gt => s == Sign::Pos,
            Rel::Ge => s != Sign::Neg,
        }
    }
}

impl Atom {
    pub fn new(lhs: Term, rel: Rel, rhs: Term) -> Atom {
        Atom { lhs, rel, rhs }
    }

    /// `lhs - rhs` as a polynomial over `order`.
    pub fn difference(&self, order: &[String]) -> Option<MPoly> {
        Some(self.lhs.to_mpoly(order)?.sub(&self.rhs.to_mpoly(order)?))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

impl Formula {
    pub fn atom(lhs: Term, rel: Rel, rhs: Term) -> Formula {
        Formula::Atom(Atom::new(lhs, rel, rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_owned(), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_owned(), Box::new(body))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                let mut vs = BTreeSet::new();
                a.lhs.vars(&mut vs);
                a.rhs.vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every identifier appearing anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                a.lhs.vars(out);
                a.rhs.vars(out);
            }
            Formula::Not(a) => a.collect_names(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                out.insert(v.clone());
                body.collect_names(out);
            }
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => out.push(a),
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Renames bound variables so that binders are pairwise distinct and
    /// distinct from the free variables. A clashing binder `v` becomes `vN`
    /// for the least `N >= 1` not already in use.
    pub fn rectify(&self) -> Formula {
        let mut used = self.all_names();
        let mut taken: BTreeSet<String> = self.free_vars();
        self.rectify_in(&mut used, &mut taken, &BTreeMap::new())
    }

    fn rectify_in(
        &self,
        used: &mut BTreeSet<String>,
        taken: &mut BTreeSet<String>,
        ren: &BTreeMap<String, String>,
    ) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => {
                let mut a = a.clone();
                for (from, to) in ren {
                    a.lhs = a.lhs.substitute(from, &Term::Var(to.clone()));
                    a.rhs = a.rhs.substitute(from, &Term::Var(to.clone()));
                }
                Formula::Atom(a)
            }
            Formula::Not(a) => Formula::not(a.rectify_in(used, taken, ren)),
            Formula::And(a, b) => {
                let a = a.rectify_in(used, taken, ren);
                Formula::and(a, b.rectify_in(used, taken, ren))
            }
            Formula::Or(a, b) => {
                let a = a.rectify_in(used, taken, ren);
                Formula::or(a, b.rectify_in(used, taken, ren))
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let name = if taken.contains(v) {
                    let fresh = fresh_name(v, used);
                    used.insert(fresh.clone());
                    fresh
                } else {
                    v.clone()
                };
                taken.insert(name.clone());
                let mut inner = ren.clone();
                if &name == v {
                    inner.remove(v);
                } else {
                    inner.insert(v.clone(), name.clone());
                }
                let body = body.rectify_in(used, taken, &inner);
                if matches!(self, Formula::Exists(..)) {
                    Formula::Exists(name, Box::new(body))
                } else {
                    Formula::Forall(name, Box::new(body))
                }
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free variable `v`.
    /// The result is rectified.
    pub fn substitute(&self, v: &str, t: &Term) -> Formula {
        let mut tvars = BTreeSet::new();
        t.vars(&mut tvars);
        let mut used = self.all_names();
        used.extend(tvars.iter().cloned());
        self.subst_in(v, t, &tvars, &mut used).rectify()
    }

    fn subst_in(&self, v: &str, t: &Term, tvars: &BTreeSet<String>, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::atom(a.lhs.substitute(v, t), a.rel, a.rhs.substitute(v, t)),
            Formula::Not(a) => Formula::not(a.subst_in(v, t, tvars, used)),
            Formula::And(a, b) => {
                let a = a.subst_in(v, t, tvars, used);
                Formula::and(a, b.subst_in(v, t, tvars, used))
            }
            Formula::Or(a, b) => {
                let a = a.subst_in(v, t, tvars, used);
                Formula::or(a, b.subst_in(v, t, tvars, used))
            }
            Formula::Exists(w, body) | Formula::Forall(w, body) => {
                let is_ex = matches!(self, Formula::Exists(..));
                let wrap = |name: String, b: Formula| {
                    if is_ex {
                        Formula::Exists(name, Box::new(b))
                    } else {
                        Formula::Forall(name, Box::new(b))
                    }
                };
                if w == v || !body.free_vars().contains(v) {
                    return self.clone();
                }
                if tvars.contains(w) {
                    let fresh = fresh_name(w, used);
                    used.insert(fresh.clone());
                    let renamed = body.subst_in(w, &Term::Var(fresh.clone()), &BTreeSet::new(), used);
                    wrap(fresh, renamed.subst_in(v, t, tvars, used))
                } else {
                    wrap(w.clone(), body.subst_in(v, t, tvars, used))
                }
            }
        }
    }

    /// Negation normal form over the original relations.
    pub fn nnf(&self) -> Formula {
        self.nnf_with(false)
    }

    fn nnf_with(&self, neg: bool) -> Formula {
        match (self, neg) {
            (Formula::True, false) | (Formula::False, true) => Formula::True,
            (Formula::True, true) | (Formula::False, false) => Formula::False,
            (Formula::Atom(a), false) => Formula::Atom(a.clone()),
            (Formula::Atom(a), true) => Formula::atom(a.lhs.clone(), a.rel.negate(), a.rhs.clone()),
            (Formula::Not(a), _) => a.nnf_with(!neg),
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                Formula::and(a.nnf_with(neg), b.nnf_with(neg))
            }
            (Formula::Or(a, b), false) | (Formula::And(a, b), true) => {
                Formula::or(a.nnf_with(neg), b.nnf_with(neg))
            }
            (Formula::Exists(v, b), false) | (Formula::Forall(v, b), true) => {
                Formula::Exists(v.clone(), Box::new(b.nnf_with(neg)))
            }
            (Formula::Forall(v, b), false) | (Formula::Exists(v, b), true) => {
                Formula::Forall(v.clone(), Box::new(b.nnf_with(neg)))
            }
        }
    }

    /// Truth of a quantifier-free formula under an assignment of real
    /// algebraic numbers. `None` if a quantifier or an unassigned variable
    /// is met.
    pub fn eval_qf(&self, env: &BTreeMap<String, RealAlg>) -> Option<bool> {
        Some(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => a.rel.holds(atom_sign(a, env)?),
            Formula::Not(a) => !a.eval_qf(env)?,
            Formula::And(a, b) => a.eval_qf(env)? && b.eval_qf(env)?,
            Formula::Or(a, b) => a.eval_qf(env)? || b.eval_qf(env)?,
            Formula::Exists(..) | Formula::Forall(..) => return None,
        })
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_at(f, 3)
            }
            Formula::And(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" /\\ ")?;
                b.write_at(f, 3)
            }
            Formula::Or(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" \\/ ")?;
                b.write_at(f, 2)
            }
            Formula::Exists(v, b) => {
                write!(f, "exists {v}. ")?;
                b.write_at(f, 0)
            }
            Formula::Forall(v, b) => {
                write!(f, "forall {v}. ")?;
                b.write_at(f, 0)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    let mut n = 1usize;
    loop {
        let cand = format!("{base}{n}");
        if !used.contains(&cand) {
            return cand;
        }
        n += 1;
    }
}

/// Sign of `lhs - rhs` under the assignment. Rational values are
/// substituted exactly; if one algebraic variable remains its sign is read
/// off by root isolation, otherwise algebraic arithmetic is used.
fn atom_sign(a: &Atom, env: &BTreeMap<String, RealAlg>) -> Option<Sign> {
    let mut vs = BTreeSet::new();
    a.lhs.vars(&mut vs);
    a.rhs.vars(&mut vs);
    let order: Vec<String> = vs.into_iter().collect();
    let mut p = a.difference(&order)?;
    let mut irrational = Vec::new();
    for (i, v) in order.iter().enumerate() {
        let val = env.get(v)?;
        match val.as_rational() {
            Some(r) => p = p.eval_var(i, r),
            None => irrational.push(i),
        }
    }
    if let Some(c) = p.as_const() {
        return Some(Sign::of(c));
    }
    if irrational.len() == 1 {
        let i = irrational[0];
        return Some(sign_at(&p.to_upoly(i)?, &env[&order[i]]));
    }
    Some(eval_mpoly_alg(&p, &order, env).sign())
}

fn eval_mpoly_alg(p: &MPoly, order: &[String], env: &BTreeMap<String, RealAlg>) -> RealAlg {
    match p {
        MPoly::Const(c) => RealAlg::from_rat(c.clone()),
        MPoly::Rec(v, cs) => {
            let x = &env[&order[*v]];
            let mut acc = RealAlg::zero();
            for c in cs.iter().rev() {
                acc = acc.mul(x).add(&eval_mpoly_alg(c, order, env));
            }
            acc
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomial-atom normal form

/// Relations kept after normalization: every atom reads `p rel 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PRel {
    Eq,
    Ne,
    Gt,
    Ge,
}

impl PRel {
    pub fn holds(self, s: Sign) -> bool {
        match self {
            PRel::Eq => s == Sign::Zero,
            PRel::Ne => s != Sign::Zero,
            PRel::Gt => s == Sign::Pos,
            PRel::Ge => s != Sign::Neg,
        }
    }

    pub fn to_rel(self) -> Rel {
        match self {
            PRel::Eq => Rel::Eq,
            PRel::Ne => Rel::Ne,
            PRel::Gt => Rel::Gt,
            PRel::Ge => Rel::Ge,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyAtom {
    pub poly: MPoly,
    pub rel: PRel,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PForm {
    True,
    False,
    Atom(PolyAtom),
    And(Box<PForm>, Box<PForm>),
    Or(Box<PForm>, Box<PForm>),
    Exists(usize, Box<PForm>),
    Forall(usize, Box<PForm>),
}

/// A formula in negation normal form whose atoms are polynomial sign
/// conditions over the variable order `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAtomForm {
    pub vars: Vec<String>,
    pub body: PForm,
}

/// Free variables in sorted order, then bound variables in binder order.
pub fn default_order(phi: &Formula) -> Vec<String> {
    let mut order: Vec<String> = phi.free_vars().into_iter().collect();
    fn binders(f: &Formula, out: &mut Vec<String>) {
        match f {
            Formula::True | Formula::False | Formula::Atom(_) => {}
            Formula::Not(a) => binders(a, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                binders(a, out);
                binders(b, out);
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
                binders(b, out);
            }
        }
    }
    binders(phi, &mut order);
    order
}

pub fn to_poly_atoms(phi: &Formula) -> PolyAtomForm {
    let vars = default_order(phi);
    let body = to_poly_atoms_with(phi, &vars).expect("default order covers every variable");
    PolyAtomForm { vars, body }
}

/// Normal form over a caller-supplied order; `None` if a variable is
/// missing from `order`.
pub fn to_poly_atoms_with(phi: &Formula, order: &[String]) -> Option<PForm> {
    pform(&phi.nnf(), order)
}

fn pform(phi: &Formula, order: &[String]) -> Option<PForm> {
    let idx = |v: &String| order.iter().position(|w| w == v);
    Some(match phi {
        Formula::True => PForm::True,
        Formula::False => PForm::False,
        Formula::Atom(a) => {
            let p = a.difference(order)?;
            let (poly, rel) = match a.rel {
                Rel::Eq => (p, PRel::Eq),
                Rel::Ne => (p, PRel::Ne),
                Rel::Gt => (p, PRel::Gt),
                Rel::Ge => (p, PRel::Ge),
                Rel::Lt => (p.neg(), PRel::Gt),
                Rel::Le => (p.neg(), PRel::Ge),
            };
            PForm::Atom(PolyAtom { poly, rel })
        }
        Formula::Not(_) => unreachable!("input is in negation normal form"),
        Formula::And(a, b) => PForm::And(Box::new(pform(a, order)?), Box::new(pform(b, order)?)),
        Formula::Or(a, b) => PForm::Or(Box::new(pform(a, order)?), Box::new(pform(b, order)?)),
        Formula::Exists(v, b) => PForm::Exists(idx(v)?, Box::new(pform(b, order)?)),
        Formula::Forall(v, b) => PForm::Forall(idx(v)?, Box::new(pform(b, order)?)),
    })
}

impl PForm {
    pub fn atoms(&self) -> Vec<&PolyAtom> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a PolyAtom>) {
        match self {
            PForm::True | PForm::False => {}
            PForm::Atom(a) => out.push(a),
            PForm::And(a, b) | PForm::Or(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            PForm::Exists(_, a) | PForm::Forall(_, a) => a.collect(out),
        }
    }

    pub fn to_formula(&self, order: &[String]) -> Formula {
        match self {
            PForm::True => Formula::True,
            PForm::False => Formula::False,
            PForm::Atom(a) => Formula::atom(Term::from_mpoly(&a.poly, order), a.rel.to_rel(), Term::int(0)),
            PForm::And(a, b) => Formula::and(a.to_formula(order), b.to_formula(order)),
            PForm::Or(a, b) => Formula::or(a.to_formula(order), b.to_formula(order)),
            PForm::Exists(v, b) => Formula::Exists(order[*v].clone(), Box::new(b.to_formula(order))),
            PForm::Forall(v, b) => Formula::Forall(order[*v].clone(), Box::new(b.to_formula(order))),
        }
    }
}

impl PolyAtomForm {
    pub fn to_formula(&self) -> Formula {
        self.body.to_formula(&self.vars)
    }
}

impl fmt::Display for PolyAtomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

// ---------------------------------------------------------------------------
// Text syntax

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rat),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Dot,
    And,
    Or,
    Tilde,
    Rel(Rel),
    Exists,
    Forall,
    True,
    False,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Num(r) => format!("number `{}`", fmt_rat(r)),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Dot => "`.`".into(),
        Tok::And => "`/\\`".into(),
        Tok::Or => "`\\/`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Rel(r) => format!("`{}`", r.symbol()),
        Tok::Exists => "`exists`".into(),
        Tok::Forall => "`forall`".into(),
        Tok::True => "`true`".into(),
        Tok::False => "`false`".into(),
        Tok::Eof => "end of input".into(),
    }
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

fn lex(text: &str) -> Result<Lexed, FormulaError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |at: usize, msg: String| {
        let (line, column) = line_col(text, at);
        FormulaError::Parse {
            line,
            column,
            message: msg,
        }
    };
    let skip_ws = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[start..i].parse().expect("digits");
            let j = skip_ws(i);
            if j < bytes.len() && bytes[j] == b'/' && bytes.get(j + 1) != Some(&b'\\') {
                let k0 = skip_ws(j + 1);
                let mut k = k0;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if k == k0 {
                    return Err(err(k0, "expected a denominator after `/`".into()));
                }
                let den: BigInt = text[k0..k].parse().expect("digits");
                if den.is_zero() {
                    return Err(err(k0, "zero denominator".into()));
                }
                i = k;
                Tok::Num(Rat::new(num, den))
            } else {
                Tok::Num(Rat::from_integer(num))
            }
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            match &text[start..i] {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                "true" => Tok::True,
                "false" => Tok::False,
                s => Tok::Ident(s.to_owned()),
            }
        } else if two("/\\") {
            i += 2;
            Tok::And
        } else if two("\\/") {
            i += 2;
            Tok::Or
        } else if two("!=") {
            i += 2;
            Tok::Rel(Rel::Ne)
        } else if two("<=") {
            i += 2;
            Tok::Rel(Rel::Le)
        } else if two(">=") {
            i += 2;
            Tok::Rel(Rel::Ge)
        } else {
            i += 1;
            match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'.' => Tok::Dot,
                b'~' => Tok::Tilde,
                b'=' => Tok::Rel(Rel::Eq),
                b'<' => Tok::Rel(Rel::Lt),
                b'>' => Tok::Rel(Rel::Gt),
                _ => {
                    let ch = text[start..].chars().next().unwrap();
                    return Err(err(start, format!("unexpected character `{ch}`")));
                }
            }
        };
        toks.push((tok, start));
    }
    toks.push((Tok::Eof, text.len()));
    Ok(Lexed { toks })
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    /// `None` accepts any identifier.
    declared: Option<&'a [String]>,
    scope: Vec<String>,
}

type PResult<T> = Result<T, FormulaError>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> FormulaError {
        let (line, column) = line_col(self.text, self.offset());
        FormulaError::Parse { line, column, message }
    }

    fn unexpected(&self, wanted: &str) -> FormulaError {
        self.error(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Exists | Tok::Forall => {
                let is_ex = *self.peek() == Tok::Exists;
                self.bump();
                let v = match self.bump() {
                    Tok::Ident(v) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("a variable name"));
                    }
                };
                self.expect(Tok::Dot, "`.`")?;
                self.scope.push(v.clone());
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if is_ex { Formula::Exists(v, body) } else { Formula::Forall(v, body) })
            }
            _ => self.disj(),
        }
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut f = self.neg()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.neg()?);
        }
        Ok(f)
    }

    fn neg(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::Exists | Tok::Forall => self.formula(),
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                let save = self.pos;
                match self.atom() {
                    Ok(a) => Ok(a),
                    Err(atom_err @ FormulaError::UnknownVariable { .. }) => Err(atom_err),
                    Err(atom_err) => {
                        let atom_reach = self.pos;
                        self.pos = save;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(f)
                        });
                        match inner {
                            Ok(f) => Ok(f),
                            Err(e) if self.pos >= atom_reach => Err(e),
                            Err(_) => Err(atom_err),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.sum()?;
        let rel = match self.peek() {
            Tok::Rel(r) => *r,
            _ => return Err(self.unexpected("a relation")),
        };
        self.bump();
        let rhs = self.sum()?;
        Ok(Formula::atom(lhs, rel, rhs))
    }

    fn sum(&mut self) -> PResult<Term> {
        let mut t = self.prod()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    t = Term::add(t, self.prod()?);
                }
                Tok::Minus => {
                    self.bump();
                    t = Term::sub(t, self.prod()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::mul(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> PResult<Term> {
        if *self.peek() != Tok::Minus {
            return self.power();
        }
        self.bump();
        if let (Tok::Num(c), false) = (self.peek().clone(), *self.peek_at(1) == Tok::Caret) {
            self.bump();
            return Ok(Term::Const(-c));
        }
        Ok(Term::neg(self.unary()?))
    }

    fn power(&mut self) -> PResult<Term> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek() {
            Tok::Num(n) if n.is_integer() && n.is_positive() => n.to_integer().to_u32(),
            _ => None,
        };
        match e {
            Some(e) => {
                self.bump();
                Ok(Term::pow(base, e))
            }
            None => Err(self.unexpected("a positive integer exponent")),
        }
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(c) => {
                self.bump();
                Ok(Term::Const(c))
            }
            Tok::Ident(v) => {
                let known = self.scope.contains(&v) || self.declared.is_none_or(|d| d.contains(&v));
                if !known {
                    let (line, column) = line_col(self.text, self.offset());
                    return Err(FormulaError::UnknownVariable { name: v, line, column });
                }
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

fn parser<'a>(text: &'a str, declared: Option<&'a [String]>) -> PResult<Parser<'a>> {
    Ok(Parser {
        text,
        toks: lex(text)?.toks,
        pos: 0,
        declared,
        scope: Vec::new(),
    })
}

/// Parses a formula whose free variables must come from `variables`. The
/// result is rectified.
pub fn parse(text: &str, variables: &[String]) -> Result<Formula, FormulaError> {
    let mut p = parser(text, Some(variables))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f.rectify())
}

/// Parses a formula treating every unbound identifier as a free variable.
pub fn parse_open(text: &str) -> Result<Formula, FormulaError> {
    let mut p = parser(text, None)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f.rectify())
}

/// Parses a term; any identifier is accepted.
pub fn parse_term(text: &str) -> Result<Term, FormulaError> {
    let mut p = parser(text, None)?;
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses a polynomial in at most one variable.
pub fn parse_upoly(text: &str) -> Result<UPoly, FormulaError> {
    let t = parse_term(text)?;
    let mut vs = BTreeSet::new();
    t.vars(&mut vs);
    if vs.len() > 1 {
        let names: Vec<String> = vs.into_iter().collect();
        return Err(FormulaError::Parse {
            line: 1,
            column: 1,
            message: format!("expected a polynomial in one variable, found {}", names.join(", ")),
        });
    }
    let v = vs.into_iter().next().unwrap_or_else(|| "x".to_string());
    Ok(t.to_upoly(&v).expect("single variable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn parses_quantified_atom() {
        let f = parse("exists t. t - 1/2 > 0", &[]).unwrap();
        let expected = Formula::exists(
            "t",
            Formula::atom(Term::sub(Term::var("t"), Term::Const(r(1, 2))), Rel::Gt, Term::int(0)),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_sum_of_square() {
        let f = parse("x^2 + 1 > 0", &vars(&["x"])).unwrap();
        let expected = Formula::atom(
            Term::add(Term::pow(Term::var("x"), 2), Term::int(1)),
            Rel::Gt,
            Term::int(0),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_projection_body() {
        let f = parse("exists y. y^2 = x /\\ y != 0", &vars(&["x"])).unwrap();
        let Formula::Exists(v, body) = &f else { panic!() };
        assert_eq!(v, "y");
        assert_eq!(
            **body,
            Formula::and(
                Formula::atom(Term::pow(Term::var("y"), 2), Rel::Eq, Term::var("x")),
                Formula::atom(Term::var("y"), Rel::Ne, Term::int(0)),
            )
        );
    }

    #[test]
    fn parses_interval_and_rational_coefficients() {
        parse("exists t. 0 <= t /\\ t <= 1", &[]).unwrap();
        let f = parse("1/2 * x^2 - 3 > 0", &vars(&["x"])).unwrap();
        let pf = to_poly_atoms(&f);
        let PForm::Atom(a) = &pf.body else { panic!() };
        assert_eq!(a.poly.to_upoly(0).unwrap(), UPoly::from_coeffs(vec![r(-3, 1), r(0, 1), r(1, 2)]));
    }

    #[test]
    fn parenthesized_atoms_and_formulas() {
        let a = parse("(x + 1)*2 > 0", &vars(&["x"])).unwrap();
        assert!(matches!(a, Formula::Atom(_)));
        let b = parse("(x > 0 /\\ x < 1) \\/ x = 5", &vars(&["x"])).unwrap();
        assert!(matches!(b, Formula::Or(..)));
    }

    #[test]
    fn reports_errors_with_position() {
        match parse("x >", &vars(&["x"])) {
            Err(FormulaError::Parse { line: 1, column: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("x > 0 /\\\n  z < 1", &vars(&["x"])) {
            Err(FormulaError::UnknownVariable { name, line: 2, column: 3 }) => assert_eq!(name, "z"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x ^ 0 > 1", &vars(&["x"])), Err(FormulaError::Parse { .. })));
        assert!(matches!(parse("x # 1", &vars(&["x"])), Err(FormulaError::Parse { .. })));
    }

    #[test]
    fn negation_normalizes_to_non_strict() {
        let a = to_poly_atoms(&parse("~(x > 0)", &vars(&["x"])).unwrap());
        let b = to_poly_atoms(&parse("x <= 0", &vars(&["x"])).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn de_morgan_on_poly_atoms() {
        let f = parse("~(a > 0 /\\ b = 0)", &vars(&["a", "b"])).unwrap();
        let pf = to_poly_atoms(&f);
        let PForm::Or(l, r) = &pf.body else { panic!() };
        let a = MPoly::var(0);
        let b = MPoly::var(1);
        assert_eq!(**l, PForm::Atom(PolyAtom { poly: a.neg(), rel: PRel::Ge }));
        assert_eq!(**r, PForm::Atom(PolyAtom { poly: b, rel: PRel::Ne }));
    }

    #[test]
    fn strict_less_flips_sides() {
        let pf = to_poly_atoms(&parse("x < y", &vars(&["x", "y"])).unwrap());
        assert_eq!(pf.to_string(), "-x + y > 0");
        let pf = to_poly_atoms(&parse("(x - 1)*(x + 1) >= 0", &vars(&["x"])).unwrap());
        assert_eq!(pf.to_string(), "x^2 - 1 >= 0");
    }

    #[test]
    fn substitution_avoids_capture() {
        let f = parse("x > 0", &vars(&["x"])).unwrap();
        assert_eq!(f.substitute("x", &Term::int(3)).to_string(), "3 > 0");
        let g = parse("exists x. x > y", &vars(&["y"])).unwrap();
        let h = g.substitute("y", &Term::var("x"));
        assert_eq!(h.to_string(), "exists x1. x1 > x");
        let k = parse("T - a = 0", &vars(&["T", "a"])).unwrap();
        let k = k.substitute("a", &Term::pow(Term::var("t"), 2));
        assert_eq!(k.to_string(), "T - t^2 = 0");
    }

    #[test]
    fn free_variables() {
        let f = parse("exists y. y^2 = x", &vars(&["x"])).unwrap();
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vars(&["x"]));
        assert!(parse("forall x. x^2 + 1 > 0", &[]).unwrap().free_vars().is_empty());
        let g = parse("x > 0 \\/ y > 0", &vars(&["x", "y"])).unwrap();
        assert_eq!(g.free_vars().into_iter().collect::<Vec<_>>(), vars(&["x", "y"]));
    }

    #[test]
    fn rectify_separates_binders() {
        let f = parse("(exists x. x > 0) /\\ x < 1 /\\ exists x. x = 2", &vars(&["x"])).unwrap();
        assert_eq!(f.to_string(), "(exists x1. x1 > 0) /\\ x < 1 /\\ (exists x2. x2 = 2)");
    }

    #[test]
    fn printer_round_trips_tricky_terms() {
        let cases = [
            "-3*x > 0",
            "-x^2 + -3 = 0",
            "-(3) < x",
            "x - -3 >= 1/2",
            "(-3)^2 > x*(y*z)",
            "(1/2)^3 != (x^2)^2",
            "-3^2 < x - (y - z)",
            "~~(x = 1) \\/ ~(y > 0 /\\ true)",
            "false \\/ (x > 0 \\/ y > 0)",
        ];
        for c in cases {
            let f = parse_open(c).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_open(&printed).unwrap(), f, "{c} -> {printed}");
        }
    }

    #[test]
    fn evaluates_with_algebraic_values() {
        let f = parse("x^2 - 2 = 0 /\\ x*y > 1", &vars(&["x", "y"])).unwrap();
        let mut env = BTreeMap::new();
        env.insert("x".to_string(), RealAlg::sqrt_int(2));
        env.insert("y".to_string(), RealAlg::sqrt_int(2));
        assert_eq!(f.eval_qf(&env), Some(true));
        env.insert("y".to_string(), RealAlg::from_rat(r(1, 2)));
        assert_eq!(f.eval_qf(&env), Some(false));
        env.remove("y");
        assert_eq!(f.eval_qf(&env), None);
    }

    #[test]
    fn upoly_text() {
        assert_eq!(parse_upoly("x^2 - 2").unwrap(), UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(parse_upoly("t*(t-1)").unwrap(), UPoly::from_ints(&[0, -1, 1]));
        assert_eq!(parse_upoly("7").unwrap(), UPoly::from_ints(&[7]));
        assert!(parse_upoly("x*y").is_err());
    }
}
