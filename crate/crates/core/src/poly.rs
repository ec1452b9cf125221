//! Dense univariate polynomials over the rationals.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Sign of a nonzero-or-zero quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn of_int(i: &BigInt) -> Sign {
        if i.is_zero() {
            Sign::Zero
        } else if i.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

/// A set of signs, used for sign conditions such as `p >= 0` ({0, +}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSet(u8);

impl SignSet {
    pub const EMPTY: SignSet = SignSet(0);
    pub const NEG: SignSet = SignSet(1);
    pub const ZERO: SignSet = SignSet(2);
    pub const POS: SignSet = SignSet(4);
    pub const NONZERO: SignSet = SignSet(5);
    pub const NONNEG: SignSet = SignSet(6);
    pub const NONPOS: SignSet = SignSet(3);
    pub const ALL: SignSet = SignSet(7);

    pub fn single(s: Sign) -> SignSet {
        match s {
            Sign::Neg => SignSet::NEG,
            Sign::Zero => SignSet::ZERO,
            Sign::Pos => SignSet::POS,
        }
    }

    pub fn contains(self, s: Sign) -> bool {
        self.0 & SignSet::single(s).0 != 0
    }

    pub fn union(self, o: SignSet) -> SignSet {
        SignSet(self.0 | o.0)
    }

    pub fn intersect(self, o: SignSet) -> SignSet {
        SignSet(self.0 & o.0)
    }

    pub fn is_subset(self, o: SignSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self) -> SignSet {
        SignSet(!self.0 & 7)
    }

    /// The set of signs of `-p` when `p` has signs in `self`.
    pub fn flip(self) -> SignSet {
        SignSet((self.0 & 2) | ((self.0 & 1) << 2) | ((self.0 & 4) >> 2))
    }

    /// The single sign, if the set has exactly one element.
    pub fn as_sign(self) -> Option<Sign> {
        match self.0 {
            1 => Some(Sign::Neg),
            2 => Some(Sign::Zero),
            4 => Some(Sign::Pos),
            _ => None,
        }
    }
}

/// A polynomial `c0 + c1 x + ... + cn x^n`. The coefficient vector never
/// ends in a zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        UPoly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// The linear polynomial `x - c`.
    pub fn linear_root(c: &Rat) -> Self {
        UPoly { coeffs: vec![-c.clone(), Rat::one()] }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn sign_at(&self, at: &Rat) -> Sign {
        Sign::of(&self.eval(at))
    }

    /// Sign as `x -> +inf`.
    pub fn sign_at_pos_inf(&self) -> Sign {
        Sign::of(&self.lc())
    }

    /// Sign as `x -> -inf`.
    pub fn sign_at_neg_inf(&self) -> Sign {
        match self.degree() {
            None => Sign::Zero,
            Some(d) if d % 2 == 0 => Sign::of(&self.lc()),
            Some(_) => Sign::of(&self.lc()).flip(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let dl = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Divides by `|lc|`, which preserves signs everywhere.
    pub fn sign_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().abs().recip())
    }

    /// Integer coefficients with content 1 and a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if self.lc().is_negative() {
            g = -g;
        }
        Self::from_coeffs(ints.into_iter().map(|i| Rat::from_integer(i / &g)).collect())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, with the same roots and no repeated factors.
    pub fn square_free(&self) -> UPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).primitive()
    }

    pub fn is_square_free(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// `self(-x)`
    pub fn negate_var(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^n self(1/x)` for `n = deg self`.
    pub fn reverse(&self) -> UPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UPoly::from_coeffs(c)
    }

    /// Strips factors of `x`.
    pub fn without_zero_roots(&self) -> UPoly {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        UPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let q = c.abs() / &lc;
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    /// Canonical Sturm sequence `p, p', -rem(p, p'), ...`, each term scaled
    /// by a positive constant.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.sign_normalized()];
        if self.is_constant() {
            return seq;
        }
        seq.push(self.derivative().sign_normalized());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-r).sign_normalized());
        }
        seq
    }

    /// Resultant over the field of rationals, with the Sylvester sign
    /// convention `res(a, b) = lc(a)^deg(b) * prod b(alpha)` over the roots
    /// of `a`.
    pub fn resultant(&self, other: &UPoly) -> Rat {
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = Rat::one();
        loop {
            let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
                return Rat::zero();
            };
            if n == 0 {
                return acc * pow_rat(&b.lc(), m);
            }
            if m == 0 {
                return acc * pow_rat(&a.lc(), n);
            }
            let r = a.rem(&b);
            let Some(k) = r.degree() else {
                return Rat::zero();
            };
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= pow_rat(&b.lc(), m - k);
            a = b;
            b = r;
        }
    }

    /// Resultant where `other` is read with formal degree `formal_deg`,
    /// which may exceed its actual degree.
    pub fn resultant_formal(&self, other: &UPoly, formal_deg: usize) -> Rat {
        let actual = other.degree().unwrap_or(0);
        if other.is_zero() {
            return Rat::zero();
        }
        let m = self.degree().unwrap_or(0);
        if m == 0 {
            return pow_rat(&self.lc(), formal_deg);
        }
        pow_rat(&self.lc(), formal_deg - actual) * self.resultant(other)
    }

    pub fn display_with(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            first = false;
            let unit = mag.is_one();
            if k == 0 || !unit {
                out.push_str(&fmt_rat(&mag));
                if k > 0 {
                    out.push('*');
                }
            }
            if k >= 1 {
                out.push_str(var);
            }
            if k >= 2 {
                out.push('^');
                out.push_str(&alloc::format!("{k}"));
            }
        }
        out
    }
}

pub(crate) fn pow_rat(r: &Rat, e: usize) -> Rat {
    num_traits::pow::pow(r.clone(), e)
}

/// `"5/6"`, `"-3"`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign variations in a sequence of signs, zeros dropped.
pub(crate) fn variations(signs: impl IntoIterator<Item = Sign>) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// A Sturm sequence kept around for repeated root counts.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UPoly>,
}

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        Sturm { seq: p.sturm_sequence() }
    }

    pub fn poly(&self) -> &UPoly {
        &self.seq[0]
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct roots in `[lo, hi]`; both endpoints must be non-roots.
    pub fn count_between(&self, lo: &Rat, hi: &Rat) -> usize {
        debug_assert!(lo <= hi);
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_all(&self) -> usize {
        let lo = variations(self.seq.iter().map(UPoly::sign_at_neg_inf));
        let hi = variations(self.seq.iter().map(UPoly::sign_at_pos_inf));
        lo.saturating_sub(hi)
    }
}

/// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(Rat, Rat)]) -> UPoly {
    let n = points.len();
    let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UPoly::linear_root(&points[i].0)) + &UPoly::constant(dd[i].clone());
    }
    acc
}

/// `Res_y(p(y), q(z, y))` as a polynomial in `z`. `q` is given by its
/// coefficients in `y` (lowest first), each a polynomial in `z`; `p` must
/// have rational coefficients. Computed by evaluation at integer nodes.
pub fn resultant_in_y(p: &UPoly, q: &[UPoly]) -> UPoly {
    let m = p.degree().unwrap_or(0);
    let formal = q.len().saturating_sub(1);
    let zdeg = q.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let nodes = m * zdeg + 1;
    let points: Vec<(Rat, Rat)> = (0..nodes)
        .map(|k| {
            let z = Rat::from_integer((k as i64).into());
            let qz = UPoly::from_coeffs(q.iter().map(|c| c.eval(&z)).collect());
            let r = p.resultant_formal(&qz, formal);
            (z, r)
        })
        .collect();
    interpolate(&points)
}

/// Determinant of the Sylvester matrix of two coefficient vectors (lowest
/// first), read with formal degrees `a.len() - 1` and `b.len() - 1`.
pub fn sylvester_resultant(a: &[Rat], b: &[Rat]) -> Rat {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Rat::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Rat::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    let mut det = Rat::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        let pv = rows[col][col].clone();
        det *= &pv;
        for r in col + 1..size {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pv;
            for c in col..size {
                let d = &f * &rows[col][c];
                rows[r][c] -= d;
            }
        }
    }
    det
}

/// `Res_t(a(t, x), b(t, x))` as a polynomial in `x`, where `a` and `b` are
/// given by their coefficients in `t` (lowest first, leading one nonzero).
pub fn resultant_bivariate(a: &[UPoly], b: &[UPoly]) -> UPoly {
    let (m, n) = (a.len().saturating_sub(1), b.len().saturating_sub(1));
    let deg = |cs: &[UPoly]| cs.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let nodes = deg(a) * n + deg(b) * m + 1;
    let points: Vec<(Rat, Rat)> = (0..nodes)
        .map(|k| {
            let x = Rat::from_integer((k as i64).into());
            let ak: Vec<Rat> = a.iter().map(|c| c.eval(&x)).collect();
            let bk: Vec<Rat> = b.iter().map(|c| c.eval(&x)).collect();
            (x, sylvester_resultant(&ak, &bk))
        })
        .collect();
    interpolate(&points)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[1, -3, 0, 2, 5]);
        let b = UPoly::from_ints(&[-1, 0, 2]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &rem, a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2)
        let p = &UPoly::from_ints(&[-1, 1]).pow(2) * &UPoly::from_ints(&[2, 1]);
        assert_eq!(p.square_free(), UPoly::from_ints(&[-2, 1, 1]));
        assert!(!p.is_square_free());
        assert!(p.square_free().is_square_free());
        let g = p.gcd(&UPoly::from_ints(&[-1, 1]));
        assert_eq!(g, UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2-2, x-1) = lc^1 * (sqrt2 - 1)(-sqrt2 - 1) = 1 - 2 = -1
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[-1, 1]);
        assert_eq!(a.resultant(&b), r(-1, 1));
        // res(b, a) = (-1)^(1*2) res(a, b)
        assert_eq!(b.resultant(&a), r(-1, 1));
        // common root => 0
        let c = UPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(b.resultant(&c), Rat::zero());
    }

    #[test]
    fn resultant_against_sylvester_determinant() {
        let a = UPoly::from_ints(&[3, -1, 0, 2]);
        let b = UPoly::from_ints(&[-5, 4, 1]);
        assert_eq!(a.resultant(&b), sylvester_det(&a, &b));
        assert_eq!(b.resultant(&a), sylvester_det(&b, &a));
    }

    fn sylvester_det(a: &UPoly, b: &UPoly) -> Rat {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![Rat::zero(); size]; size];
        for i in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        // Gaussian elimination over Q.
        let mut det = Rat::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= mat[col][col].clone();
            for row in col + 1..size {
                let f = &mat[row][col] / &mat[col][col];
                for k in col..size {
                    let v = &f * &mat[col][k];
                    mat[row][k] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn sturm_counts_roots() {
        // x^3 - x has roots -1, 0, 1
        let s = Sturm::new(&UPoly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(s.count_all(), 3);
        assert_eq!(s.count_between(&r(-1, 2), &r(3, 2)), 2);
        let none = Sturm::new(&UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(none.count_all(), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::from_ints(&[7, -2, 0, 3]);
        let pts: Vec<_> = (0..4).map(|k| (r(k, 1), p.eval(&r(k, 1)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn sum_resultant_for_sqrt2_plus_sqrt3() {
        // Res_y(y^2 - 2, (z - y)^2 - 3) = z^4 - 10 z^2 + 1
        let p = UPoly::from_ints(&[-2, 0, 1]);
        // (z-y)^2 - 3 = y^2 - 2z y + (z^2 - 3)
        let q = vec![UPoly::from_ints(&[-3, 0, 1]), UPoly::from_ints(&[0, -2]), UPoly::one()];
        assert_eq!(resultant_in_y(&p, &q), UPoly::from_ints(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn display_compact() {
        assert_eq!(UPoly::from_ints(&[-2, 0, 1]).to_string(), "x^2-2");
        assert_eq!(UPoly::from_coeffs(vec![r(1, 2), r(-3, 1)]).to_string(), "-3*x+1/2");
        assert_eq!(UPoly::zero().to_string(), "0");
    }

    #[test]
    fn sylvester_matches_euclidean_resultant() {
        let a = UPoly::from_ints(&[3, -1, 0, 2]);
        let b = UPoly::from_ints(&[-5, 4, 1]);
        assert_eq!(sylvester_resultant(a.coeffs(), b.coeffs()), a.resultant(&b));
        assert_eq!(sylvester_resultant(b.coeffs(), a.coeffs()), b.resultant(&a));
    }

    #[test]
    fn bivariate_resultant_eliminates_t() {
        // t^2 - x and t - 1 share a root exactly when x = 1.
        let a = [UPoly::from_ints(&[0, -1]), UPoly::zero(), UPoly::one()];
        let b = [UPoly::from_ints(&[-1]), UPoly::one()];
        assert_eq!(resultant_bivariate(&a, &b), UPoly::from_ints(&[1, -1]));
    }
}
