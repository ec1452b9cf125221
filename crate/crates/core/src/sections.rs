//! Sections over constructible subsets of the real line.
//!
//! A section assigns to each closed point of its domain a single real
//! algebraic value. It is stored as a formula in the point variable `x` and
//! the value variable `T` which, at every point of the domain, has exactly
//! one solution `T`. Arithmetic builds new formulas from old ones; values
//! and all certificates come out of the decision procedure.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::One;

use crate::decide::{decide_with_params, qe, DecideError, Limits};
use crate::exactnum::{isolate_roots, RealAlg};
use crate::formula::{Formula, Rel, Term};
use crate::mpoly::MPoly;
use crate::poly::{resultant_bivariate, resultant_in_y, Sign, UPoly};
use crate::Rat;
use crate::sper::{from_formula, merge_points, CellSet, SperPoint1};

/// Name of the point variable in section formulas.
pub const POINT_VAR: &str = "x";
/// Name of the value variable in section formulas.
pub const VALUE_VAR: &str = "T";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SectionError {
    #[error("sections have different domains")]
    DomainMismatch,
    #[error("section has not been validated")]
    InvalidSection,
    #[error("section vanishes somewhere on its domain")]
    VanishingSection,
    #[error("section is negative somewhere on its domain")]
    NegativeSection,
    #[error("domain is not contained in the target domain")]
    DomainNotContained,
    #[error("point is not in the domain")]
    PointNotInDomain,
    #[error("section formula mentions variables other than x and T: {}", .0.join(", "))]
    UnexpectedVariables(Vec<String>),
    #[error("section formula has {0} values at the point")]
    NotSingleValued(usize),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDesc {
    domain: CellSet,
    phi: Formula,
    validated: bool,
}

fn x() -> Term {
    Term::var(POINT_VAR)
}

fn t() -> Term {
    Term::var(VALUE_VAR)
}

fn eq0(a: Term) -> Formula {
    Formula::atom(a, Rel::Eq, Term::int(0))
}

fn upoly_term(p: &UPoly) -> Term {
    Term::from_mpoly(&MPoly::from_upoly(0, p), &[POINT_VAR.to_string()])
}

fn with_value(phi: &Formula, v: &str) -> Formula {
    phi.substitute(VALUE_VAR, &Term::var(v))
}

impl SectionDesc {
    /// An unvalidated section. Fails when `phi` has free variables other
    /// than `x` and `T`.
    pub fn new(domain: CellSet, phi: Formula) -> Result<Self, SectionError> {
        let extra: Vec<String> = phi
            .free_vars()
            .into_iter()
            .filter(|v| v != POINT_VAR && v != VALUE_VAR)
            .collect();
        if !extra.is_empty() {
            return Err(SectionError::UnexpectedVariables(extra));
        }
        Ok(SectionDesc {
            domain,
            phi: phi.rectify(),
            validated: false,
        })
    }

    pub fn domain(&self) -> &CellSet {
        &self.domain
    }

    pub fn phi(&self) -> &Formula {
        &self.phi
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Drops the validation flag, e.g. to re-certify a derived section.
    pub fn unvalidated(mut self) -> Self {
        self.validated = false;
        self
    }

    /// Marks the section validated without checking, for a descriptor
    /// certified earlier and read back from storage.
    pub fn assume_validated(mut self) -> Self {
        self.validated = true;
        self
    }

    fn require_validated(&self) -> Result<(), SectionError> {
        if self.validated {
            Ok(())
        } else {
            Err(SectionError::InvalidSection)
        }
    }

    /// Points of `x` where some `T` satisfies `phi` together with `extra`.
    fn where_some_value(&self, extra: Formula, limits: &Limits) -> Result<CellSet, SectionError> {
        let ex = Formula::exists(VALUE_VAR, Formula::and(self.phi.clone(), extra)).rectify();
        Ok(from_formula(&ex, POINT_VAR, limits)?)
    }

    /// Decides whether `phi` has exactly one solution `T` at every point of
    /// the domain, and records the answer.
    pub fn validate(&mut self, limits: &Limits) -> Result<bool, SectionError> {
        let ok = self.domain.is_empty() || {
            let qf = quantifier_free(&self.phi, limits)?;
            let unique = Formula::forall(
                "S",
                Formula::implies(with_value(&qf, "S"), eq0(Term::sub(Term::var("S"), t()))),
            );
            let ex = Formula::exists(VALUE_VAR, Formula::and(qf, unique)).rectify();
            let good = from_formula(&ex, POINT_VAR, limits)?;
            self.domain.is_subset(&good)
        };
        self.validated = ok;
        Ok(ok)
    }

    /// The same formula on `domain ∩ k`.
    pub fn restrict(&self, k: &CellSet) -> SectionDesc {
        SectionDesc {
            domain: self.domain.intersect(k),
            phi: self.phi.clone(),
            validated: self.validated,
        }
    }

    /// The quantifier-free form used for evaluation and compatibility.
    pub fn prepare(&self, limits: &Limits) -> Result<PreparedSection, SectionError> {
        self.require_validated()?;
        let qf = quantifier_free(&self.phi, limits)?;
        Ok(PreparedSection {
            domain: self.domain.clone(),
            phi: self.phi.clone(),
            qf,
        })
    }

    pub fn eval_at_closed(&self, a: &RealAlg, limits: &Limits) -> Result<RealAlg, SectionError> {
        self.prepare(limits)?.eval_at_closed(a, limits)
    }

    pub fn is_compatible(&self, limits: &Limits) -> Result<bool, SectionError> {
        self.prepare(limits)?.is_compatible(limits)
    }
}

/// Replaces every atom not mentioning `T` by its truth value at `x = r`.
fn localize(f: &Formula, r: &Rat) -> Formula {
    match f {
        Formula::Atom(a) if !a.lhs.mentions(VALUE_VAR) && !a.rhs.mentions(VALUE_VAR) => {
            let env = |v: &str| (v == POINT_VAR).then(|| r.clone());
            let (l, h) = (a.lhs.eval_rat(&env), a.rhs.eval_rat(&env));
            match (l, h) {
                (Some(l), Some(h)) if a.rel.holds(Sign::of(&(&l - &h))) => Formula::True,
                (Some(_), Some(_)) => Formula::False,
                _ => f.clone(),
            }
        }
        Formula::Not(a) => Formula::not(localize(a, r)),
        Formula::And(a, b) => Formula::and(localize(a, r), localize(b, r)),
        Formula::Or(a, b) => Formula::or(localize(a, r), localize(b, r)),
        _ => f.clone(),
    }
}

/// Real roots in `T` of the polynomials over `[x, T]` at `x = a`, found by
/// eliminating `x` against the defining polynomial of `a`. The flag is
/// false when some polynomial vanishes identically at a conjugate of `a`,
/// in which case the list may miss values.
fn values_over(a: &RealAlg, polys: &[MPoly]) -> (Vec<RealAlg>, bool) {
    let def = a.defining_poly();
    let mut complete = true;
    let mut cands = Vec::new();
    for q in polys {
        let cs: Vec<UPoly> = q
            .coeffs_in(0)
            .iter()
            .map(|c| c.to_upoly(1).expect("only T remains"))
            .collect();
        let r = resultant_in_y(&def, &cs);
        if r.is_zero() {
            complete = false;
        } else if !r.is_constant() {
            cands.push(isolate_roots(&r).expect("nonconstant"));
        }
    }
    (merge_points(cands), complete)
}

fn quantifier_free(phi: &Formula, limits: &Limits) -> Result<Formula, SectionError> {
    if phi.is_quantifier_free() {
        Ok(phi.clone())
    } else {
        Ok(qe(phi, limits)?)
    }
}

/// The section `T = p(x)` on `k`.
pub fn section_from_poly(p: &UPoly, k: CellSet) -> SectionDesc {
    SectionDesc {
        domain: k,
        phi: eq0(Term::sub(t(), upoly_term(p))),
        validated: true,
    }
}

fn binary(
    a: &SectionDesc,
    b: &SectionDesc,
    op: fn(Term, Term) -> Term,
) -> Result<SectionDesc, SectionError> {
    a.require_validated()?;
    b.require_validated()?;
    if a.domain != b.domain {
        return Err(SectionError::DomainMismatch);
    }
    let body = Formula::and_all([
        eq0(Term::sub(t(), op(Term::var("X"), Term::var("Y")))),
        with_value(&a.phi, "X"),
        with_value(&b.phi, "Y"),
    ]);
    Ok(SectionDesc {
        domain: a.domain.clone(),
        phi: Formula::exists("X", Formula::exists("Y", body)).rectify(),
        validated: true,
    })
}

pub fn sec_add(a: &SectionDesc, b: &SectionDesc) -> Result<SectionDesc, SectionError> {
    binary(a, b, Term::add)
}

pub fn sec_mul(a: &SectionDesc, b: &SectionDesc) -> Result<SectionDesc, SectionError> {
    binary(a, b, Term::mul)
}

pub fn sec_neg(a: &SectionDesc) -> Result<SectionDesc, SectionError> {
    a.require_validated()?;
    Ok(SectionDesc {
        domain: a.domain.clone(),
        phi: a.phi.substitute(VALUE_VAR, &Term::neg(t())),
        validated: true,
    })
}

/// `1 / a`, after certifying that `a` has no zero on its domain.
pub fn sec_inv(a: &SectionDesc, limits: &Limits) -> Result<SectionDesc, SectionError> {
    a.require_validated()?;
    let zeros = a.where_some_value(eq0(t()), limits)?;
    if !a.domain.intersect(&zeros).is_empty() {
        return Err(SectionError::VanishingSection);
    }
    let body = Formula::and(
        eq0(Term::sub(Term::mul(t(), Term::var("X")), Term::int(1))),
        with_value(&a.phi, "X"),
    );
    Ok(SectionDesc {
        domain: a.domain.clone(),
        phi: Formula::exists("X", body).rectify(),
        validated: true,
    })
}

/// The nonnegative square root of `a`, after certifying `a >= 0` on its
/// domain.
pub fn sec_sqrt(a: &SectionDesc, limits: &Limits) -> Result<SectionDesc, SectionError> {
    a.require_validated()?;
    let negative = a.where_some_value(Formula::atom(t(), Rel::Lt, Term::int(0)), limits)?;
    if !a.domain.intersect(&negative).is_empty() {
        return Err(SectionError::NegativeSection);
    }
    let phi = Formula::and(
        Formula::atom(t(), Rel::Ge, Term::int(0)),
        a.phi.substitute(VALUE_VAR, &Term::pow(t(), 2)),
    );
    Ok(SectionDesc {
        domain: a.domain.clone(),
        phi: phi.rectify(),
        validated: true,
    })
}

/// `a` on its domain and zero on the rest of `k`.
pub fn extend_by_zero(a: &SectionDesc, k: &CellSet) -> Result<SectionDesc, SectionError> {
    a.require_validated()?;
    if !a.domain.is_subset(k) {
        return Err(SectionError::DomainNotContained);
    }
    let chi = a.domain.to_formula(POINT_VAR);
    let phi = Formula::or(
        Formula::and(Formula::not(chi.clone()), eq0(t())),
        Formula::and(chi, a.phi.clone()),
    );
    Ok(SectionDesc {
        domain: k.clone(),
        phi: phi.rectify(),
        validated: true,
    })
}

/// A validated section together with a quantifier-free equivalent of its
/// formula, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct PreparedSection {
    domain: CellSet,
    phi: Formula,
    qf: Formula,
}


impl PreparedSection {
    pub fn qf(&self) -> &Formula {
        &self.qf
    }

    /// Atom polynomials of the quantifier-free form over the two-variable
    /// `order`.
    fn atom_polys(&self, order: &[&str; 2]) -> Vec<MPoly> {
        let order = order.map(String::from);
        let mut out: Vec<MPoly> = self
            .qf
            .atoms()
            .into_iter()
            .filter_map(|a| a.difference(&order))
            .filter(|p| p.as_const().is_none())
            .map(|p| p.primitive_positive())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn holds(&self, a: &RealAlg, v: &RealAlg) -> bool {
        let mut env = BTreeMap::new();
        env.insert(POINT_VAR.to_string(), a.clone());
        env.insert(VALUE_VAR.to_string(), v.clone());
        self.qf.eval_qf(&env).expect("only x and T are free")
    }

    /// The value at the closed point `a`. Candidates are the roots in `T`
    /// of the atom polynomials at `x = a`, found by eliminating `x` against
    /// the defining polynomial of `a`; exactly one may satisfy the formula.
    pub fn eval_at_closed(&self, a: &RealAlg, _limits: &Limits) -> Result<RealAlg, SectionError> {
        if !self.domain.contains_closed(a) {
            return Err(SectionError::PointNotInDomain);
        }
        let polys = self.atom_polys(&[POINT_VAR, VALUE_VAR]);
        let (cands, _) = values_over(a, &polys);
        let mut found: Vec<RealAlg> =
            cands.into_iter().filter(|v| self.holds(a, v)).collect();
        if found.len() != 1 {
            return Err(SectionError::NotSingleValued(found.len()));
        }
        Ok(found.pop().unwrap())
    }

    /// Points where the section might fail to be continuous: breakpoints of
    /// the domain and real roots of the projection of the atom polynomials
    /// with respect to `T`.
    pub fn candidate_breakpoints(&self) -> Vec<RealAlg> {
        let polys = self.atom_polys(&[VALUE_VAR, POINT_VAR]);
        let mut proj: Vec<UPoly> = Vec::new();
        let coeffs = |q: &MPoly| -> Vec<UPoly> {
            q.coeffs_in(0).iter().map(|c| c.to_upoly(1).expect("only x remains")).collect()
        };
        let tcoeffs: Vec<Vec<UPoly>> = polys.iter().map(coeffs).collect();
        for (q, cs) in polys.iter().zip(&tcoeffs) {
            if q.degree_in(0) == 0 || cs.len() == 1 {
                proj.push(cs[0].clone());
                continue;
            }
            proj.push(cs.last().unwrap().clone());
            let dq = coeffs(&q.derivative(0));
            let disc = resultant_bivariate(cs, &dq);
            if disc.is_zero() {
                proj.extend(cs.iter().cloned());
            } else {
                proj.push(disc);
            }
        }
        for i in 0..tcoeffs.len() {
            for j in i + 1..tcoeffs.len() {
                if tcoeffs[i].len() > 1 && tcoeffs[j].len() > 1 {
                    proj.push(resultant_bivariate(&tcoeffs[i], &tcoeffs[j]));
                }
            }
        }
        let mut roots = alloc::vec![self.domain.breakpoints().to_vec()];
        for p in proj {
            if !p.is_constant() {
                roots.push(isolate_roots(&p).expect("nonconstant"));
            }
        }
        merge_points(roots)
    }

    /// One-sided continuity with a finite limit at every candidate point
    /// where the closed point and an adjacent side both lie in the domain.
    pub fn is_compatible(&self, limits: &Limits) -> Result<bool, SectionError> {
        let cands = self.candidate_breakpoints();
        for (i, b) in cands.iter().enumerate() {
            if !self.domain.contains_closed(b) {
                continue;
            }
            let v = self.eval_at_closed(b, limits)?;
            for right in [false, true] {
                let side = if right { SperPoint1::RightCut(b.clone()) } else { SperPoint1::LeftCut(b.clone()) };
                if !self.domain.contains(&side) {
                    continue;
                }
                // A rational strictly between b and the neighbouring candidate.
                let r = if right {
                    match cands.get(i + 1) {
                        Some(c) => b.rational_between(c),
                        None => b.upper().floor() + Rat::one(),
                    }
                } else {
                    match i.checked_sub(1) {
                        Some(j) => cands[j].rational_between(b),
                        None => b.lower().ceil() - Rat::one(),
                    }
                };
                if !self.continuous_at(b, &v, &r, limits)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The one-sided continuity sentence at `b`, with `b` and the value `v`
    /// left free as `B` and `V`: for every `eps > 0` there is `delta > 0`
    /// such that at every point of the domain strictly between `b` and
    /// `b ± delta` the value lies within `eps` of `v`.
    pub fn continuity_sentence(&self, right: bool) -> Formula {
        let (bv, vv, e, d) = ("B", "V", "eps", "delta");
        let near = if right {
            Formula::and(
                Formula::atom(x(), Rel::Gt, Term::var(bv)),
                Formula::atom(x(), Rel::Lt, Term::add(Term::var(bv), Term::var(d))),
            )
        } else {
            Formula::and(
                Formula::atom(x(), Rel::Lt, Term::var(bv)),
                Formula::atom(x(), Rel::Gt, Term::sub(Term::var(bv), Term::var(d))),
            )
        };
        let close = Formula::atom(
            Term::pow(Term::sub(t(), Term::var(vv)), 2),
            Rel::Lt,
            Term::pow(Term::var(e), 2),
        );
        let inner = Formula::forall(
            POINT_VAR,
            Formula::implies(
                Formula::and(near, self.domain.to_formula(POINT_VAR)),
                Formula::exists(VALUE_VAR, Formula::and(self.qf.clone(), close)),
            ),
        );
        Formula::forall(
            e,
            Formula::implies(
                Formula::atom(Term::var(e), Rel::Gt, Term::int(0)),
                Formula::exists(d, Formula::and(Formula::atom(Term::var(d), Rel::Gt, Term::int(0)), inner)),
            ),
        )
        .rectify()
    }

    /// Decides [`continuity_sentence`](Self::continuity_sentence) at the
    /// closed point `b` of the domain.
    pub fn continuous_by_sentence(&self, b: &RealAlg, right: bool, limits: &Limits) -> Result<bool, SectionError> {
        let v = self.eval_at_closed(b, limits)?;
        let mut env = BTreeMap::new();
        env.insert("B".to_string(), b.clone());
        env.insert("V".to_string(), v);
        Ok(decide_with_params(&self.continuity_sentence(right), &env, limits)?)
    }

    /// Between `b` and `r` the section is continuous, so it has a limit on
    /// that side in the extended reals. No candidate point lies strictly
    /// between them, so there the domain condition holds throughout and
    /// every atom free of `T` keeps the truth value it has at `r`; the tests
    /// below use the formula simplified accordingly.
    ///
    /// A finite limit is a root at `x = b` of an atom polynomial in `T`. When
    /// those roots are all known, `v` is separated from the others by
    /// rationals `lo < v < hi` and the limit is `v` exactly when the values
    /// near `b` lie in `(lo, hi)`, a question about a set of `x` alone.
    fn continuous_at(&self, b: &RealAlg, v: &RealAlg, r: &Rat, limits: &Limits) -> Result<bool, SectionError> {
        let local = localize(&self.qf, r);
        let right = RealAlg::from_rat(r.clone()) > *b;
        let order = [POINT_VAR.to_string(), VALUE_VAR.to_string()];
        let mut polys: Vec<MPoly> = local
            .atoms()
            .into_iter()
            .filter_map(|a| a.difference(&order))
            .filter(|p| p.degree_in(1) > 0)
            .collect();
        polys.sort();
        polys.dedup();
        let (roots, complete) = values_over(b, &polys);
        if !complete {
            return self.closure_meets(b, v, r, &local, limits);
        }
        let Some(i) = roots.iter().position(|w| w == v) else {
            return Ok(false);
        };
        let lo = match i.checked_sub(1) {
            Some(j) => roots[j].rational_between(v),
            None => v.lower().floor() - Rat::one(),
        };
        let hi = match roots.get(i + 1) {
            Some(w) => v.rational_between(w),
            None => v.upper().ceil() + Rat::one(),
        };
        let band = Formula::exists(
            VALUE_VAR,
            Formula::and_all([
                local,
                Formula::atom(t(), Rel::Gt, Term::Const(lo)),
                Formula::atom(t(), Rel::Lt, Term::Const(hi)),
            ]),
        );
        let near = from_formula(&band, POINT_VAR, limits)?;
        let side = if right { SperPoint1::RightCut(b.clone()) } else { SperPoint1::LeftCut(b.clone()) };
        Ok(near.contains(&side))
    }

    /// The limit is `v` exactly when `(b, v)` lies in the closure of the
    /// graph between `b` and `r`: every box of size `eps` around it meets
    /// the graph there.
    fn closure_meets(
        &self,
        b: &RealAlg,
        v: &RealAlg,
        r: &Rat,
        local: &Formula,
        limits: &Limits,
    ) -> Result<bool, SectionError> {
        let (bv, vv, e) = ("B", "V", "eps");
        let right = RealAlg::from_rat(r.clone()) > *b;
        let rt = Term::Const(r.clone());
        // |x - B| < eps and |T - V| < eps, written without squares.
        let within = |a: Term, c: Term| {
            Formula::and(
                Formula::atom(Term::sub(a.clone(), c.clone()), Rel::Lt, Term::var(e)),
                Formula::atom(Term::sub(c, a), Rel::Lt, Term::var(e)),
            )
        };
        let side = if right {
            Formula::and(Formula::atom(x(), Rel::Gt, Term::var(bv)), Formula::atom(x(), Rel::Lt, rt))
        } else {
            Formula::and(Formula::atom(x(), Rel::Lt, Term::var(bv)), Formula::atom(x(), Rel::Gt, rt))
        };
        let meets = Formula::exists(
            POINT_VAR,
            Formula::and_all([
                side,
                within(x(), Term::var(bv)),
                Formula::exists(VALUE_VAR, Formula::and(local.clone(), within(t(), Term::var(vv)))),
            ]),
        );
        let sentence = Formula::forall(
            e,
            Formula::implies(Formula::atom(Term::var(e), Rel::Gt, Term::int(0)), meets),
        )
        .rectify();
        let mut env = BTreeMap::new();
        env.insert(bv.to_string(), b.clone());
        env.insert(vv.to_string(), v.clone());
        Ok(decide_with_params(&sentence, &env, limits)?)
    }

    pub fn phi(&self) -> &Formula {
        &self.phi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;
    use crate::Rat;

    fn lim() -> Limits {
        Limits::default()
    }

    fn sec(domain: CellSet, text: &str) -> SectionDesc {
        SectionDesc::new(domain, parse_open(text).unwrap()).unwrap()
    }

    fn int(n: i64) -> RealAlg {
        RealAlg::from_int(n)
    }

    fn half_line(closed: bool) -> CellSet {
        let open = CellSet::open_interval(Some(RealAlg::zero()), None);
        if closed {
            open.union(&CellSet::point(RealAlg::zero()))
        } else {
            open
        }
    }

    fn abs() -> SectionDesc {
        sec(CellSet::full(), "x >= 0 /\\ T = x \\/ x < 0 /\\ T = -x")
    }

    #[test]
    fn absolute_value_validates_and_evaluates() {
        let mut s = abs();
        assert!(s.validate(&lim()).unwrap());
        assert_eq!(s.eval_at_closed(&int(-3), &lim()).unwrap(), int(3));
        let r2 = RealAlg::sqrt_int(2);
        assert_eq!(s.eval_at_closed(&r2.neg(), &lim()).unwrap(), r2);
        assert!(s.is_compatible(&lim()).unwrap());
    }

    #[test]
    fn two_square_roots_are_not_a_section() {
        let mut s = sec(half_line(false), "T^2 = x");
        assert!(!s.validate(&lim()).unwrap());
        assert_eq!(s.eval_at_closed(&int(4), &lim()), Err(SectionError::InvalidSection));
        let mut s = sec(half_line(true), "T^2 = x /\\ T >= 0");
        assert!(s.validate(&lim()).unwrap());
        assert_eq!(s.eval_at_closed(&int(2), &lim()).unwrap(), RealAlg::sqrt_int(2));
    }

    #[test]
    fn polynomial_sections() {
        let id = section_from_poly(&UPoly::x(), CellSet::full());
        let r2 = RealAlg::sqrt_int(2);
        assert_eq!(id.eval_at_closed(&r2, &lim()).unwrap(), r2);
        let one = section_from_poly(&UPoly::one(), CellSet::full());
        let s = sec_add(&id, &one).unwrap();
        assert_eq!(s.eval_at_closed(&r2, &lim()).unwrap(), r2.add(&RealAlg::one()));
        let z = sec_add(&id, &sec_neg(&id).unwrap()).unwrap();
        assert_eq!(z.eval_at_closed(&int(7), &lim()).unwrap(), RealAlg::zero());
        assert!(s.clone().unvalidated().validate(&lim()).unwrap());
        assert!(s.is_compatible(&lim()).unwrap());
        let empty = section_from_poly(&UPoly::zero(), CellSet::empty());
        assert!(empty.clone().unvalidated().validate(&lim()).unwrap());
    }

    #[test]
    fn abs_plus_identity() {
        let mut a = abs();
        a.validate(&lim()).unwrap();
        let id = section_from_poly(&UPoly::x(), CellSet::full());
        let s = sec_add(&a, &id).unwrap();
        assert_eq!(s.eval_at_closed(&int(-3), &lim()).unwrap(), int(0));
        assert_eq!(s.eval_at_closed(&int(5), &lim()).unwrap(), int(10));
    }

    #[test]
    fn mismatched_or_unvalidated_inputs() {
        let a = section_from_poly(&UPoly::x(), CellSet::full());
        let b = section_from_poly(&UPoly::x(), half_line(false));
        assert_eq!(sec_add(&a, &b), Err(SectionError::DomainMismatch));
        assert_eq!(sec_mul(&a, &abs()), Err(SectionError::InvalidSection));
        assert!(matches!(
            SectionDesc::new(CellSet::full(), parse_open("T = y").unwrap()),
            Err(SectionError::UnexpectedVariables(_))
        ));
    }

    #[test]
    fn inverse() {
        let d = CellSet::basic_open(&[UPoly::x()]);
        let t = section_from_poly(&UPoly::x(), d);
        let inv = sec_inv(&t, &lim()).unwrap();
        let half = RealAlg::from_rat(Rat::new(1.into(), 2.into()));
        assert_eq!(inv.eval_at_closed(&int(2), &lim()).unwrap(), half);
        assert!(inv.clone().unvalidated().validate(&lim()).unwrap());
        let two = section_from_poly(&UPoly::from_ints(&[2]), CellSet::full());
        let inv2 = sec_inv(&two, &lim()).unwrap();
        assert_eq!(inv2.eval_at_closed(&int(-9), &lim()).unwrap(), half);
        let whole = section_from_poly(&UPoly::x(), CellSet::full());
        assert_eq!(sec_inv(&whole, &lim()), Err(SectionError::VanishingSection));
    }

    #[test]
    fn square_root() {
        let t = section_from_poly(&UPoly::x(), half_line(true));
        let r = sec_sqrt(&t, &lim()).unwrap();
        assert_eq!(r.eval_at_closed(&int(4), &lim()).unwrap(), int(2));
        assert_eq!(r.eval_at_closed(&int(0), &lim()).unwrap(), int(0));
        let two = section_from_poly(&UPoly::from_ints(&[2]), CellSet::full());
        let r2 = sec_sqrt(&two, &lim()).unwrap();
        assert_eq!(r2.eval_at_closed(&int(1), &lim()).unwrap(), RealAlg::sqrt_int(2));
        let whole = section_from_poly(&UPoly::x(), CellSet::full());
        assert_eq!(sec_sqrt(&whole, &lim()), Err(SectionError::NegativeSection));
    }

    #[test]
    fn ramp_and_step() {
        let pos = half_line(false);
        let ramp = extend_by_zero(&section_from_poly(&UPoly::x(), pos.clone()), &CellSet::full()).unwrap();
        assert_eq!(ramp.eval_at_closed(&int(-2), &lim()).unwrap(), int(0));
        assert_eq!(ramp.eval_at_closed(&int(3), &lim()).unwrap(), int(3));
        assert!(ramp.clone().unvalidated().validate(&lim()).unwrap());
        assert!(ramp.is_compatible(&lim()).unwrap());
        let step = extend_by_zero(&section_from_poly(&UPoly::one(), pos.clone()), &CellSet::full()).unwrap();
        assert!(step.clone().unvalidated().validate(&lim()).unwrap());
        assert!(!step.is_compatible(&lim()).unwrap());
        let big = section_from_poly(&UPoly::x(), CellSet::full());
        assert_eq!(extend_by_zero(&big, &pos), Err(SectionError::DomainNotContained));
    }

    #[test]
    fn heaviside_formula_is_incompatible() {
        let mut h = sec(CellSet::full(), "x > 0 /\\ T = 1 \\/ x <= 0 /\\ T = 0");
        assert!(h.validate(&lim()).unwrap());
        assert!(!h.is_compatible(&lim()).unwrap());
    }

    #[test]
    fn restriction() {
        let mut a = abs();
        a.validate(&lim()).unwrap();
        let r = a.restrict(&half_line(false));
        assert_eq!(r.eval_at_closed(&int(1), &lim()).unwrap(), int(1));
        assert_eq!(r.eval_at_closed(&int(-1), &lim()), Err(SectionError::PointNotInDomain));
        assert!(a.restrict(&CellSet::empty()).domain().is_empty());
        assert_eq!(a.restrict(&CellSet::full()), a);
    }
}
