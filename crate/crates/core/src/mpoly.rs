//! Multivariate polynomials in recursive dense form.
//!
//! Variables are indices into an externally declared order; index 0 is the
//! outermost (main) variable. A `Rec(v, cs)` is `sum cs[k] * x_v^k` where
//! every coefficient only mentions variables with index `> v`, `cs` has at
//! least two entries, and the last one is nonzero. This makes structural
//! equality coincide with polynomial equality.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::poly::{Sign, UPoly};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MPoly {
    Const(Rat),
    Rec(usize, Vec<MPoly>),
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::Const(Rat::zero())
    }

    pub fn one() -> Self {
        MPoly::Const(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::Const(c)
    }

    pub fn var(v: usize) -> Self {
        MPoly::Rec(v, vec![MPoly::zero(), MPoly::one()])
    }

    /// Builds `sum cs[k] * x_v^k`, trimming and collapsing as needed.
    pub fn from_coeffs(v: usize, mut cs: Vec<MPoly>) -> Self {
        while cs.last().is_some_and(MPoly::is_zero) {
            cs.pop();
        }
        match cs.len() {
            0 => MPoly::zero(),
            1 => cs.pop().unwrap(),
            _ => MPoly::Rec(v, cs),
        }
    }

    pub fn from_upoly(v: usize, p: &UPoly) -> Self {
        Self::from_coeffs(v, p.coeffs().iter().cloned().map(MPoly::Const).collect())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_zero())
    }

    pub fn as_const(&self) -> Option<&Rat> {
        match self {
            MPoly::Const(c) => Some(c),
            MPoly::Rec(..) => None,
        }
    }

    /// Lowest variable index present.
    pub fn top_var(&self) -> Option<usize> {
        match self {
            MPoly::Const(_) => None,
            MPoly::Rec(v, _) => Some(*v),
        }
    }

    pub fn mentions(&self, v: usize) -> bool {
        match self {
            MPoly::Const(_) => false,
            MPoly::Rec(w, cs) => *w == v || (*w < v && cs.iter().any(|c| c.mentions(v))),
        }
    }

    pub fn vars(&self, out: &mut Vec<usize>) {
        if let MPoly::Rec(v, cs) = self {
            if !out.contains(v) {
                out.push(*v);
            }
            for c in cs {
                c.vars(out);
            }
        }
    }

    /// Degree in variable `v`.
    pub fn degree_in(&self, v: usize) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Rec(w, cs) if *w == v => cs.len() - 1,
            MPoly::Rec(w, cs) if *w < v => cs.iter().map(|c| c.degree_in(v)).max().unwrap_or(0),
            MPoly::Rec(..) => 0,
        }
    }

    pub fn total_degree(&self) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Rec(_, cs) => cs.iter().enumerate().map(|(k, c)| k + c.total_degree()).max().unwrap_or(0),
        }
    }

    /// Coefficients with respect to `v`, assuming `v` is the top variable
    /// or absent.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        match self {
            MPoly::Rec(w, cs) if *w == v => cs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Leading coefficient in `v` (the polynomial itself when `v` is absent).
    pub fn head(&self, v: usize) -> MPoly {
        match self {
            MPoly::Rec(w, cs) if *w == v => cs.last().unwrap().clone(),
            _ => self.clone(),
        }
    }

    /// Drops the leading term in `v`.
    pub fn behead(&self, v: usize) -> MPoly {
        match self {
            MPoly::Rec(w, cs) if *w == v => MPoly::from_coeffs(v, cs[..cs.len() - 1].to_vec()),
            _ => MPoly::zero(),
        }
    }

    pub fn derivative(&self, v: usize) -> MPoly {
        match self {
            MPoly::Rec(w, cs) if *w == v => MPoly::from_coeffs(
                v,
                cs.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c.scale(&Rat::from_integer(k.into())))
                    .collect(),
            ),
            MPoly::Rec(w, cs) if *w < v => {
                MPoly::from_coeffs(*w, cs.iter().map(|c| c.derivative(v)).collect())
            }
            _ => MPoly::zero(),
        }
    }

    pub fn neg(&self) -> MPoly {
        match self {
            MPoly::Const(c) => MPoly::Const(-c),
            MPoly::Rec(v, cs) => MPoly::Rec(*v, cs.iter().map(MPoly::neg).collect()),
        }
    }

    pub fn scale(&self, k: &Rat) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        match self {
            MPoly::Const(c) => MPoly::Const(c * k),
            MPoly::Rec(v, cs) => MPoly::Rec(*v, cs.iter().map(|c| c.scale(k)).collect()),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        match (self, other) {
            (MPoly::Const(a), MPoly::Const(b)) => MPoly::Const(a + b),
            (MPoly::Rec(v, cs), MPoly::Const(_)) => {
                let mut cs = cs.clone();
                cs[0] = cs[0].add(other);
                MPoly::Rec(*v, cs)
            }
            (MPoly::Const(_), MPoly::Rec(..)) => other.add(self),
            (MPoly::Rec(v, cs), MPoly::Rec(w, ds)) => {
                if v < w {
                    let mut cs = cs.clone();
                    cs[0] = cs[0].add(other);
                    MPoly::Rec(*v, cs)
                } else if w < v {
                    other.add(self)
                } else {
                    let n = cs.len().max(ds.len());
                    let out = (0..n)
                        .map(|k| match (cs.get(k), ds.get(k)) {
                            (Some(a), Some(b)) => a.add(b),
                            (Some(a), None) => a.clone(),
                            (None, Some(b)) => b.clone(),
                            (None, None) => unreachable!(),
                        })
                        .collect();
                    MPoly::from_coeffs(*v, out)
                }
            }
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        match (self, other) {
            (MPoly::Const(a), MPoly::Const(b)) => MPoly::Const(a * b),
            (MPoly::Const(a), _) => other.scale(a),
            (_, MPoly::Const(b)) => self.scale(b),
            (MPoly::Rec(v, cs), MPoly::Rec(w, ds)) => {
                if v < w {
                    MPoly::from_coeffs(*v, cs.iter().map(|c| c.mul(other)).collect())
                } else if w < v {
                    other.mul(self)
                } else {
                    let mut out = vec![MPoly::zero(); cs.len() + ds.len() - 1];
                    for (i, a) in cs.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (j, b) in ds.iter().enumerate() {
                            out[i + j] = out[i + j].add(&a.mul(b));
                        }
                    }
                    MPoly::from_coeffs(*v, out)
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `x_v^k` where `v` is at or above the top variable.
    pub fn shift(&self, v: usize, k: usize) -> MPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![MPoly::zero(); k];
        cs.extend(self.coeffs_in(v));
        MPoly::from_coeffs(v, cs)
    }

    /// Pseudo-division in `v`: returns `(k, r)` with `head(d)^k * self = q*d + r`
    /// and `deg_v r < deg_v d`.
    pub fn pseudo_rem(&self, d: &MPoly, v: usize) -> (u32, MPoly) {
        let a = d.head(v);
        let n = d.degree_in(v);
        let mut s = self.clone();
        let mut k = 0;
        loop {
            if s.is_zero() {
                return (k, s);
            }
            let m = s.degree_in(v);
            if m < n {
                return (k, s);
            }
            let b = s.head(v);
            let dd = d.shift(v, m - n);
            if a == b {
                s = s.sub(&dd);
            } else {
                s = a.mul(&s).sub(&b.mul(&dd));
                k += 1;
            }
        }
    }

    /// Substitutes a rational for variable `v`.
    pub fn eval_var(&self, v: usize, val: &Rat) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Rec(w, cs) if *w == v => {
                let mut acc = MPoly::zero();
                for c in cs.iter().rev() {
                    acc = acc.scale(val).add(c);
                }
                acc
            }
            MPoly::Rec(w, cs) if *w < v => {
                MPoly::from_coeffs(*w, cs.iter().map(|c| c.eval_var(v, val)).collect())
            }
            MPoly::Rec(..) => self.clone(),
        }
    }

    /// Full evaluation; `vals[i]` is the value of variable `i`.
    pub fn eval(&self, vals: &[Rat]) -> Rat {
        match self {
            MPoly::Const(c) => c.clone(),
            MPoly::Rec(v, cs) => {
                let x = &vals[*v];
                let mut acc = Rat::zero();
                for c in cs.iter().rev() {
                    acc = acc * x + c.eval(vals);
                }
                acc
            }
        }
    }

    /// The univariate polynomial in `v`, if no other variable occurs.
    pub fn to_upoly(&self, v: usize) -> Option<UPoly> {
        match self {
            MPoly::Const(c) => Some(UPoly::constant(c.clone())),
            MPoly::Rec(w, cs) if *w == v => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    out.push(c.as_const()?.clone());
                }
                Some(UPoly::from_coeffs(out))
            }
            MPoly::Rec(..) => None,
        }
    }

    /// Renames variable indices through `map` (which must be order
    /// preserving on the variables present).
    pub fn remap(&self, map: &impl Fn(usize) -> usize) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Rec(v, cs) => MPoly::Rec(map(*v), cs.iter().map(|c| c.remap(map)).collect()),
        }
    }

    /// The trailing constant of the leading chain, i.e. the coefficient of the
    /// lexicographically largest monomial.
    pub fn leading_numeric(&self) -> Rat {
        match self {
            MPoly::Const(c) => c.clone(),
            MPoly::Rec(_, cs) => cs.last().unwrap().leading_numeric(),
        }
    }

    /// Scales so the leading numeric coefficient is 1. Returns the scaled
    /// polynomial and whether the scale factor was negative.
    pub fn monic(&self) -> (MPoly, bool) {
        let lc = self.leading_numeric();
        if lc.is_zero() {
            return (self.clone(), false);
        }
        (self.scale(&lc.recip()), lc.is_negative())
    }

    /// Sign when the polynomial is a numeric constant.
    pub fn const_sign(&self) -> Option<Sign> {
        self.as_const().map(Sign::of)
    }

    /// Terms as `(coefficient, exponents)` with exponents indexed by variable,
    /// in decreasing lexicographic order.
    pub fn terms(&self, nvars: usize) -> Vec<(Rat, Vec<u32>)> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        self.collect_terms(&mut exps, &mut out);
        out
    }

    fn collect_terms(&self, exps: &mut Vec<u32>, out: &mut Vec<(Rat, Vec<u32>)>) {
        match self {
            MPoly::Const(c) => {
                if !c.is_zero() {
                    out.push((c.clone(), exps.clone()));
                }
            }
            MPoly::Rec(v, cs) => {
                for (k, c) in cs.iter().enumerate().rev() {
                    exps[*v] = k as u32;
                    c.collect_terms(exps, out);
                }
                exps[*v] = 0;
            }
        }
    }

    /// Content-free version with positive-sign scaling (integer coefficients
    /// of gcd 1, sign preserved).
    pub fn primitive_positive(&self) -> MPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let terms = self.terms(self.max_var_plus_one());
        if terms.is_empty() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut g = BigInt::zero();
        for (c, _) in &terms {
            den = den.lcm(c.denom());
        }
        for (c, _) in &terms {
            g = g.gcd(&(c * Rat::from_integer(den.clone())).to_integer());
        }
        self.scale(&Rat::new(den, g.abs()))
    }

    fn max_var_plus_one(&self) -> usize {
        let mut vs = Vec::new();
        self.vars(&mut vs);
        vs.into_iter().max().map_or(0, |m| m + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> MPoly {
        MPoly::Const(Rat::from_integer(n.into()))
    }

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn canonical_forms_agree() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        // (x + y)^2 == x^2 + 2xy + y^2
        let lhs = x.add(&y).pow(2);
        let rhs = x.mul(&x).add(&x.mul(&y).scale(&r(2))).add(&y.mul(&y));
        assert_eq!(lhs, rhs);
        // (x - y)(x + y) - x^2 + y^2 == 0
        assert!(x.sub(&y).mul(&x.add(&y)).sub(&x.pow(2)).add(&y.pow(2)).is_zero());
    }

    #[test]
    fn pseudo_remainder_identity() {
        let x = MPoly::var(0);
        let a = MPoly::var(1);
        // s = x^3 + a, d = a x - 1
        let s = x.pow(3).add(&a);
        let d = a.mul(&x).sub(&c(1));
        let (k, rem) = s.pseudo_rem(&d, 0);
        assert_eq!(rem.degree_in(0), 0);
        // At the root x = 1/a of d the identity reduces to a^k s = rem.
        for av in [r(3), r(5), r(-2)] {
            let root = [av.recip(), av.clone()];
            assert_eq!(
                num_traits::pow::pow(av.clone(), k as usize) * s.eval(&root),
                rem.eval(&root)
            );
        }
    }

    #[test]
    fn derivative_and_heads() {
        let x = MPoly::var(0);
        let a = MPoly::var(1);
        let p = a.mul(&x.pow(2)).add(&x).add(&c(3));
        assert_eq!(p.head(0), a);
        assert_eq!(p.behead(0), x.add(&c(3)));
        assert_eq!(p.derivative(0), a.mul(&x).scale(&r(2)).add(&c(1)));
        assert_eq!(p.degree_in(0), 2);
        assert_eq!(p.total_degree(), 3);
    }

    #[test]
    fn eval_and_substitution() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let p = x.mul(&y).add(&y.pow(2));
        assert_eq!(p.eval(&[r(2), r(3)]), r(15));
        let q = p.eval_var(1, &r(3));
        assert_eq!(q.to_upoly(0).unwrap(), UPoly::from_ints(&[9, 3]));
    }

    #[test]
    fn monic_reports_sign() {
        let p = MPoly::var(0).scale(&r(-3)).add(&c(6));
        let (m, neg) = p.monic();
        assert!(neg);
        assert_eq!(m, MPoly::var(0).add(&c(-2)));
    }
}
