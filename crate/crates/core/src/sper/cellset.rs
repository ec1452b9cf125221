//! Constructible subsets of the real spectrum of `Q[x]` as canonical cell
//! decompositions of the line.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::exactnum::{isolate_roots, RealAlg};
use crate::formula::{Formula, Rel, Term};
use crate::poly::{fmt_rat, Sign, SignSet, UPoly};
use crate::Rat;

use super::SperPoint1;

/// Breakpoints `b_1 < ... < b_k` and memberships for the cells
/// `(-inf, b_1), {b_1}, (b_1, b_2), ..., {b_k}, (b_k, +inf)`.
///
/// Always canonical: no breakpoint has the same membership as both of
/// its neighbouring open cells. Two canonical sets are equal exactly when
/// they contain the same points.
#[derive(Clone, PartialEq, Eq)]
pub struct CellSet {
    breakpoints: Vec<RealAlg>,
    membership: Vec<bool>,
}

/// Where a point of the line sits relative to a list of breakpoints.
enum Slot {
    /// Index of an open cell.
    Open(usize),
    /// Index of a breakpoint.
    At(usize),
}

fn locate(bps: &[RealAlg], a: &RealAlg) -> Slot {
    match bps.binary_search_by(|b| b.cmp_exact(a)) {
        Ok(i) => Slot::At(i),
        Err(i) => Slot::Open(i),
    }
}

/// One rational sample inside each open cell.
pub fn cell_samples(bps: &[RealAlg]) -> Vec<Rat> {
    let one = Rat::from_integer(1.into());
    if bps.is_empty() {
        return vec![Rat::from_integer(0.into())];
    }
    let mut out = Vec::with_capacity(bps.len() + 1);
    out.push(bps[0].lower().floor() - &one);
    for w in bps.windows(2) {
        out.push(w[0].rational_between(&w[1]));
    }
    out.push(bps[bps.len() - 1].upper().ceil() + &one);
    out
}

/// Sorted union of two strictly increasing lists, with flags telling which
/// input each element came from.
fn merge(a: &[RealAlg], b: &[RealAlg]) -> Vec<(RealAlg, bool, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.push((a[i].clone(), true, false));
            i += 1;
        } else if i == a.len() {
            out.push((b[j].clone(), false, true));
            j += 1;
        } else {
            match a[i].cmp_exact(&b[j]) {
                Ordering::Less => {
                    out.push((a[i].clone(), true, false));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].clone(), false, true));
                    j += 1;
                }
                Ordering::Equal => {
                    // Keep the representation with the simpler polynomial.
                    let pick = if a[i].defining_poly().degree() <= b[j].defining_poly().degree() {
                        &a[i]
                    } else {
                        &b[j]
                    };
                    out.push((pick.clone(), true, true));
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

/// Sorted, deduplicated union of several lists of reals.
pub fn merge_points(lists: impl IntoIterator<Item = Vec<RealAlg>>) -> Vec<RealAlg> {
    let mut acc: Vec<RealAlg> = Vec::new();
    for l in lists {
        acc = merge(&acc, &l).into_iter().map(|(r, _, _)| r).collect();
    }
    acc
}

impl CellSet {
    pub fn empty() -> CellSet {
        CellSet {
            breakpoints: Vec::new(),
            membership: vec![false],
        }
    }

    pub fn full() -> CellSet {
        CellSet {
            breakpoints: Vec::new(),
            membership: vec![true],
        }
    }

    /// Builds and canonicalizes. Returns `None` unless the breakpoints are
    /// strictly increasing and there are `2k + 1` memberships.
    pub fn new(breakpoints: Vec<RealAlg>, membership: Vec<bool>) -> Option<CellSet> {
        if membership.len() != 2 * breakpoints.len() + 1 {
            return None;
        }
        if breakpoints.windows(2).any(|w| w[0].cmp_exact(&w[1]) != Ordering::Less) {
            return None;
        }
        Some(Self::canonical(breakpoints, membership))
    }

    fn canonical(breakpoints: Vec<RealAlg>, membership: Vec<bool>) -> CellSet {
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut mem = Vec::with_capacity(membership.len());
        mem.push(membership[0]);
        for (i, b) in breakpoints.into_iter().enumerate() {
            let (left, here, right) = (membership[2 * i], membership[2 * i + 1], membership[2 * i + 2]);
            if left == here && here == right {
                continue;
            }
            bps.push(b);
            mem.push(here);
            mem.push(right);
        }
        CellSet {
            breakpoints: bps,
            membership: mem,
        }
    }

    pub fn breakpoints(&self) -> &[RealAlg] {
        &self.breakpoints
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty() && !self.membership[0]
    }

    pub fn is_full(&self) -> bool {
        self.breakpoints.is_empty() && self.membership[0]
    }

    /// The single open interval `(a, b)`, with `None` for an infinite end.
    pub fn open_interval(a: Option<RealAlg>, b: Option<RealAlg>) -> CellSet {
        match (a, b) {
            (None, None) => CellSet::full(),
            (Some(a), None) => Self::canonical(vec![a], vec![false, false, true]),
            (None, Some(b)) => Self::canonical(vec![b], vec![true, false, false]),
            (Some(a), Some(b)) => match a.cmp_exact(&b) {
                Ordering::Less => Self::canonical(vec![a, b], vec![false, false, true, false, false]),
                _ => CellSet::empty(),
            },
        }
    }

    pub fn point(a: RealAlg) -> CellSet {
        Self::canonical(vec![a], vec![false, true, false])
    }

    /// `{x : sign(p(x)) in allowed}`.
    pub fn sign_condition(p: &UPoly, allowed: SignSet) -> CellSet {
        if p.is_zero() {
            return if allowed.contains(Sign::Zero) { CellSet::full() } else { CellSet::empty() };
        }
        let roots = isolate_roots(p).expect("nonzero polynomial");
        let samples = cell_samples(&roots);
        let mut mem = Vec::with_capacity(2 * roots.len() + 1);
        for (i, s) in samples.iter().enumerate() {
            mem.push(allowed.contains(p.sign_at(s)));
            if i < roots.len() {
                mem.push(allowed.contains(Sign::Zero));
            }
        }
        Self::canonical(roots, mem)
    }

    /// The basic open set where every polynomial is strictly positive.
    pub fn basic_open(polys: &[UPoly]) -> CellSet {
        polys
            .iter()
            .map(|p| CellSet::sign_condition(p, SignSet::POS))
            .fold(CellSet::full(), |acc, s| acc.intersect(&s))
    }

    /// `P(p)`, where `p` is nonnegative. This is the complement of `D(-p)`.
    pub fn nonnegative(p: &UPoly) -> CellSet {
        CellSet::sign_condition(p, SignSet::NONNEG)
    }

    /// Applies a pointwise boolean operation.
    pub fn combine(&self, other: &CellSet, f: impl Fn(bool, bool) -> bool) -> CellSet {
        let merged = merge(&self.breakpoints, &other.breakpoints);
        let (a, b) = (&self.membership, &other.membership);
        let (mut ia, mut ib) = (0, 0);
        let mut mem = Vec::with_capacity(2 * merged.len() + 1);
        let mut bps = Vec::with_capacity(merged.len());
        for (r, in_a, in_b) in merged {
            mem.push(f(a[2 * ia], b[2 * ib]));
            let pa = if in_a { a[2 * ia + 1] } else { a[2 * ia] };
            let pb = if in_b { b[2 * ib + 1] } else { b[2 * ib] };
            mem.push(f(pa, pb));
            ia += in_a as usize;
            ib += in_b as usize;
            bps.push(r);
        }
        mem.push(f(a[2 * ia], b[2 * ib]));
        Self::canonical(bps, mem)
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> CellSet {
        CellSet {
            breakpoints: self.breakpoints.clone(),
            membership: self.membership.iter().map(|m| !m).collect(),
        }
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Adds every breakpoint that borders a member open cell.
    pub fn closure(&self) -> CellSet {
        let mut mem = self.membership.clone();
        for i in 0..self.breakpoints.len() {
            if mem[2 * i] || mem[2 * i + 2] {
                mem[2 * i + 1] = true;
            }
        }
        Self::canonical(self.breakpoints.clone(), mem)
    }

    pub fn contains_closed(&self, a: &RealAlg) -> bool {
        match locate(&self.breakpoints, a) {
            Slot::At(i) => self.membership[2 * i + 1],
            Slot::Open(i) => self.membership[2 * i],
        }
    }

    pub fn contains(&self, pt: &SperPoint1) -> bool {
        match pt {
            SperPoint1::Closed(a) => self.contains_closed(a),
            SperPoint1::LeftCut(a) => match locate(&self.breakpoints, a) {
                Slot::At(i) | Slot::Open(i) => self.membership[2 * i],
            },
            SperPoint1::RightCut(a) => match locate(&self.breakpoints, a) {
                Slot::At(i) => self.membership[2 * i + 2],
                Slot::Open(i) => self.membership[2 * i],
            },
            SperPoint1::MinusInf => self.membership[0],
            SperPoint1::PlusInf => self.membership[self.membership.len() - 1],
        }
    }

    /// A rational sample from each member open cell and every member
    /// breakpoint, in increasing order.
    pub fn member_samples(&self) -> Vec<RealAlg> {
        let samples = cell_samples(&self.breakpoints);
        let mut out = Vec::new();
        for (i, s) in samples.into_iter().enumerate() {
            if self.membership[2 * i] {
                out.push(RealAlg::from_rat(s));
            }
            if i < self.breakpoints.len() && self.membership[2 * i + 1] {
                out.push(self.breakpoints[i].clone());
            }
        }
        out
    }

    /// A quantifier-free formula in `var` that holds exactly on this set.
    pub fn to_formula(&self, var: &str) -> Formula {
        let k = self.breakpoints.len();
        let mut runs = Vec::new();
        let mut i = 0;
        let n = self.membership.len();
        while i < n {
            if !self.membership[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i + 1 < n && self.membership[i + 1] {
                i += 1;
            }
            runs.push((start, i));
            i += 1;
        }
        let x = Term::var(var);
        let bound = |cell: usize, lower: bool| -> Option<Formula> {
            // Open cell 2j, point 2j+1.
            if cell.is_multiple_of(2) {
                let j = cell / 2;
                if lower {
                    (j > 0).then(|| compare(&x, &self.breakpoints[j - 1], Rel::Gt))
                } else {
                    (j < k).then(|| compare(&x, &self.breakpoints[j], Rel::Lt))
                }
            } else {
                let b = &self.breakpoints[cell / 2];
                Some(compare(&x, b, if lower { Rel::Ge } else { Rel::Le }))
            }
        };
        let parts = runs.into_iter().map(|(s, e)| {
            if s == e && s % 2 == 1 {
                return equals(&x, &self.breakpoints[s / 2]);
            }
            Formula::and_all(bound(s, true).into_iter().chain(bound(e, false)))
        });
        Formula::or_all(parts)
    }
}

/// `x - c` as a term, with `x` alone when `c = 0`.
fn minus_const(x: &Term, c: &Rat) -> Term {
    if c.is_zero() {
        x.clone()
    } else if c.is_negative() {
        Term::add(x.clone(), Term::Const(-c))
    } else {
        Term::sub(x.clone(), Term::Const(c.clone()))
    }
}

fn poly_at(p: &UPoly, x: &Term) -> Term {
    let order = [match x {
        Term::Var(v) => v.clone(),
        _ => unreachable!("cell formulas are built over a variable"),
    }];
    Term::from_mpoly(&crate::mpoly::MPoly::from_upoly(0, p), &order)
}

fn equals(x: &Term, b: &RealAlg) -> Formula {
    match b.as_rational() {
        Some(c) => Formula::atom(minus_const(x, c), Rel::Eq, Term::int(0)),
        None => {
            let (lo, hi) = b.interval();
            Formula::and_all([
                Formula::atom(poly_at(&b.defining_poly(), x), Rel::Eq, Term::int(0)),
                Formula::atom(minus_const(x, &lo), Rel::Gt, Term::int(0)),
                Formula::atom(minus_const(x, &hi), Rel::Lt, Term::int(0)),
            ])
        }
    }
}

/// `x rel b` for an algebraic `b`, using its isolating interval: on
/// `(lo, hi)` the defining polynomial has the sign of `p(hi)` exactly to
/// the right of `b` and the sign of `p(lo)` to its left.
fn compare(x: &Term, b: &RealAlg, rel: Rel) -> Formula {
    if let Some(c) = b.as_rational() {
        return Formula::atom(minus_const(x, c), rel, Term::int(0));
    }
    let p = b.defining_poly();
    let (lo, hi) = b.interval();
    let zero = Term::int(0);
    let signed = |s: Sign| {
        let t = poly_at(&p, x);
        if s == Sign::Neg {
            Term::neg(t)
        } else {
            t
        }
    };
    match rel {
        Rel::Gt | Rel::Ge => {
            let strict = if rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
            Formula::and(
                Formula::atom(minus_const(x, &lo), Rel::Gt, zero.clone()),
                Formula::or(
                    Formula::atom(minus_const(x, &hi), Rel::Ge, zero.clone()),
                    Formula::atom(signed(p.sign_at(&hi)), strict, zero),
                ),
            )
        }
        Rel::Lt | Rel::Le => {
            let strict = if rel == Rel::Lt { Rel::Gt } else { Rel::Ge };
            Formula::and(
                Formula::atom(minus_const(x, &hi), Rel::Lt, zero.clone()),
                Formula::or(
                    Formula::atom(minus_const(x, &lo), Rel::Le, zero.clone()),
                    Formula::atom(signed(p.sign_at(&lo)), strict, zero),
                ),
            )
        }
        Rel::Eq | Rel::Ne => unreachable!("bounds are inequalities"),
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |b: &RealAlg| match b.as_rational() {
            Some(r) => fmt_rat(r),
            None => alloc::format!("{b}"),
        };
        let mut parts = Vec::new();
        let k = self.breakpoints.len();
        for (i, &m) in self.membership.iter().enumerate() {
            if !m {
                continue;
            }
            let j = i / 2;
            parts.push(if i % 2 == 1 {
                alloc::format!("{{{}}}", name(&self.breakpoints[j]))
            } else {
                let lo = if j == 0 { "-inf".into() } else { name(&self.breakpoints[j - 1]) };
                let hi = if j == k { "+inf".into() } else { name(&self.breakpoints[j]) };
                alloc::format!("({lo}, {hi})")
            });
        }
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&parts.join(" u "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn r(n: i64) -> RealAlg {
        RealAlg::from_int(n)
    }

    fn open(a: i64, b: i64) -> CellSet {
        CellSet::open_interval(Some(r(a)), Some(r(b)))
    }

    #[test]
    fn union_removes_breakpoint() {
        let s = open(0, 1).union(&CellSet::point(r(1))).union(&open(1, 2));
        assert_eq!(s, open(0, 2));
        assert_eq!(s.breakpoints().len(), 2);
    }

    #[test]
    fn opposite_half_lines_are_disjoint() {
        let t = UPoly::x();
        let a = CellSet::basic_open(core::slice::from_ref(&t));
        let b = CellSet::basic_open(&[-&t]);
        assert!(a.intersect(&b).is_empty());
        assert_eq!(a.membership(), &[false, false, true]);
    }

    #[test]
    fn basic_open_of_product_of_conditions() {
        let t = UPoly::x();
        let s = CellSet::basic_open(&[t.clone(), &UPoly::one() - &t]);
        assert_eq!(s, open(0, 1));
        assert!(CellSet::basic_open(&[UPoly::zero()]).is_empty());
        assert!(CellSet::basic_open(&[UPoly::from_ints(&[3])]).is_full());
    }

    #[test]
    fn closure_of_interval() {
        let c = open(0, 1).closure();
        assert_eq!(c.membership(), &[false, true, true, true, false]);
        let half = CellSet::open_interval(Some(r(0)), None).closure();
        assert_eq!(half.membership(), &[false, true, true]);
        let pt = CellSet::point(RealAlg::sqrt_int(2));
        assert_eq!(pt.closure(), pt);
    }

    #[test]
    fn cuts_read_adjacent_cells() {
        let s = open(0, 1);
        assert!(s.contains(&SperPoint1::RightCut(r(0))));
        assert!(!s.contains(&SperPoint1::LeftCut(r(0))));
        assert!(!s.contains(&SperPoint1::Closed(r(0))));
        assert!(s.contains(&SperPoint1::LeftCut(r(1))));
        assert!(s.contains(&SperPoint1::RightCut(RealAlg::from_rat(Rat::new(1.into(), 2.into())))));
        assert!(CellSet::full().contains(&SperPoint1::MinusInf));
    }

    #[test]
    fn formula_of_algebraic_interval() {
        // (-sqrt 2, sqrt 2) u {3}
        let s2 = RealAlg::sqrt_int(2);
        let s = CellSet::open_interval(Some(s2.neg()), Some(s2)).union(&CellSet::point(r(3)));
        let phi = s.to_formula("x");
        for k in -40..=40 {
            let q = Rat::new(k.into(), 10.into());
            let mut env = BTreeMap::new();
            env.insert("x".into(), RealAlg::from_rat(q.clone()));
            assert_eq!(phi.eval_qf(&env), Some(s.contains_closed(&RealAlg::from_rat(q))), "{k}");
        }
        for b in s.breakpoints() {
            let mut env = BTreeMap::new();
            env.insert("x".into(), b.clone());
            assert_eq!(phi.eval_qf(&env), Some(s.contains_closed(b)));
        }
    }
}
