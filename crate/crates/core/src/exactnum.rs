//! Exact arithmetic in the field of real algebraic numbers.
//!
//! A [`RealAlg`] is either an explicit rational or a root of a square-free
//! integer polynomial isolated by a rational interval `[lo, hi]` whose
//! endpoints are not roots. Values never change after construction;
//! refinement produces new values.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{resultant_in_y, Sign, Sturm, UPoly};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("invalid root description: {0}")]
    InvalidRoot(&'static str),
}

/// An isolated irrational (or not yet recognized rational) root.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    poly: UPoly,
    lo: Rat,
    hi: Rat,
}

impl IsolatedRoot {
    pub fn defining(&self) -> &UPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }
}

#[derive(Clone)]
pub enum RealAlg {
    Rational(Rat),
    Root(IsolatedRoot),
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn half(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rat(2)
}

enum Bisected {
    Exact(Rat),
    Narrower(IsolatedRoot),
}

impl IsolatedRoot {
    fn bisect(&self) -> Bisected {
        let mid = half(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&mid);
        if sm == Sign::Zero {
            return Bisected::Exact(mid);
        }
        let slo = self.poly.sign_at(&self.lo);
        let (lo, hi) = if slo != sm { (self.lo.clone(), mid) } else { (mid, self.hi.clone()) };
        Bisected::Narrower(IsolatedRoot { poly: self.poly.clone(), lo, hi })
    }

    fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

impl RealAlg {
    pub fn from_rat(r: Rat) -> Self {
        RealAlg::Rational(r)
    }

    pub fn from_int(n: i64) -> Self {
        RealAlg::Rational(rat(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Builds and validates a root description. The polynomial is replaced by
    /// its square-free primitive part; a root at a dyadic midpoint or a
    /// rational root is returned on the fast path.
    pub fn from_root(poly: &UPoly, lo: Rat, hi: Rat) -> Result<Self, NumError> {
        if poly.is_zero() {
            return Err(NumError::ZeroPolynomial);
        }
        if lo > hi {
            return Err(NumError::InvalidRoot("lower endpoint exceeds upper"));
        }
        let p = poly.square_free();
        if lo == hi {
            return if p.sign_at(&lo) == Sign::Zero {
                Ok(RealAlg::Rational(lo))
            } else {
                Err(NumError::InvalidRoot("degenerate interval is not a root"))
            };
        }
        if p.sign_at(&lo) == Sign::Zero || p.sign_at(&hi) == Sign::Zero {
            return Err(NumError::InvalidRoot("interval endpoint is a root"));
        }
        if Sturm::new(&p).count_between(&lo, &hi) != 1 {
            return Err(NumError::InvalidRoot("interval does not isolate exactly one root"));
        }
        Ok(Self::normalized(IsolatedRoot { poly: p, lo, hi }))
    }

    /// `sqrt(n)` for a nonnegative integer.
    pub fn sqrt_int(n: i64) -> Self {
        RealAlg::from_int(n).sqrt().expect("nonnegative radicand")
    }

    /// Recognizes rational roots: by the rational root theorem any rational
    /// root is `k / lc` for the primitive polynomial, so an interval narrower
    /// than `1 / lc` holds at most one candidate.
    fn normalized(root: IsolatedRoot) -> Self {
        if root.poly.degree() == Some(1) {
            let c = root.poly.coeffs();
            return RealAlg::Rational(-&c[0] / &c[1]);
        }
        let lc = root.poly.lc().abs();
        let spacing = lc.recip();
        let mut cur = root;
        while cur.width() >= spacing {
            match cur.bisect() {
                Bisected::Exact(r) => return RealAlg::Rational(r),
                Bisected::Narrower(next) => cur = next,
            }
        }
        let k = (&cur.lo * &lc).ceil();
        let cand = k / &lc;
        if cand <= cur.hi && cur.poly.sign_at(&cand) == Sign::Zero {
            return RealAlg::Rational(cand);
        }
        RealAlg::Root(cur)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlg::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            RealAlg::Rational(r) => Some(r),
            RealAlg::Root(_) => None,
        }
    }

    /// A square-free polynomial vanishing at this number.
    pub fn defining_poly(&self) -> UPoly {
        match self {
            RealAlg::Rational(r) => UPoly::linear_root(r).primitive(),
            RealAlg::Root(root) => root.poly.clone(),
        }
    }

    /// The isolating interval; degenerate for rationals.
    pub fn interval(&self) -> (Rat, Rat) {
        match self {
            RealAlg::Rational(r) => (r.clone(), r.clone()),
            RealAlg::Root(root) => (root.lo.clone(), root.hi.clone()),
        }
    }

    /// A copy whose isolating interval is at most `width` wide.
    pub fn refined_to(&self, width: &Rat) -> Self {
        match self {
            RealAlg::Rational(_) => self.clone(),
            RealAlg::Root(root) => {
                let mut cur = root.clone();
                while &cur.width() > width {
                    match cur.bisect() {
                        Bisected::Exact(r) => return RealAlg::Rational(r),
                        Bisected::Narrower(next) => cur = next,
                    }
                }
                RealAlg::Root(cur)
            }
        }
    }

    /// Halves the isolating interval once.
    pub fn refine(&self) -> Self {
        match self {
            RealAlg::Rational(_) => self.clone(),
            RealAlg::Root(root) => match root.bisect() {
                Bisected::Exact(r) => RealAlg::Rational(r),
                Bisected::Narrower(next) => RealAlg::Root(next),
            },
        }
    }

    /// Rational lower bound (strict for irrationals).
    pub fn lower(&self) -> Rat {
        self.interval().0
    }

    pub fn upper(&self) -> Rat {
        self.interval().1
    }

    pub fn sign(&self) -> Sign {
        sign_at(&UPoly::x(), self)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RealAlg::Rational(r) if r.is_zero())
    }

    pub fn neg(&self) -> Self {
        match self {
            RealAlg::Rational(r) => RealAlg::Rational(-r),
            RealAlg::Root(root) => RealAlg::Root(IsolatedRoot {
                poly: root.poly.negate_var().primitive(),
                lo: -&root.hi,
                hi: -&root.lo,
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (RealAlg::Rational(a), RealAlg::Rational(b)) => RealAlg::Rational(a + b),
            (RealAlg::Rational(c), RealAlg::Root(r)) | (RealAlg::Root(r), RealAlg::Rational(c)) => {
                // p(x - c)
                let shifted = r.poly.compose(&UPoly::linear_root(c));
                Self::normalized(IsolatedRoot {
                    poly: shifted.primitive(),
                    lo: &r.lo + c,
                    hi: &r.hi + c,
                })
            }
            (RealAlg::Root(a), RealAlg::Root(b)) => {
                // Res_y(p(y), q(z - y)); expand q(z - y) in powers of y.
                let q_shift = expand_shifted(&b.poly, &rat(-1));
                let res = resultant_in_y(&a.poly, &q_shift);
                let mut ia = a.clone();
                let mut ib = b.clone();
                select_root(&res, || {
                    let out = (&ia.lo + &ib.lo, &ia.hi + &ib.hi);
                    ia = bisect_or_keep(&ia);
                    ib = bisect_or_keep(&ib);
                    out
                })
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RealAlg::zero();
        }
        match (self, other) {
            (RealAlg::Rational(a), RealAlg::Rational(b)) => RealAlg::Rational(a * b),
            (RealAlg::Rational(c), RealAlg::Root(r)) | (RealAlg::Root(r), RealAlg::Rational(c)) => {
                // p(x / c)
                let scaled = r.poly.compose(&UPoly::monomial(c.recip(), 1));
                let (lo, hi) = if c.is_positive() { (&r.lo * c, &r.hi * c) } else { (&r.hi * c, &r.lo * c) };
                Self::normalized(IsolatedRoot { poly: scaled.primitive(), lo, hi })
            }
            (RealAlg::Root(a), RealAlg::Root(b)) => {
                let pa = a.poly.without_zero_roots();
                let pb = b.poly.without_zero_roots();
                // y^n q(z / y) = sum q_i z^i y^(n-i)
                let n = pb.degree().unwrap_or(0);
                let q: Vec<UPoly> =
                    (0..=n).map(|j| UPoly::monomial(pb.coeff(n - j), n - j)).collect();
                let res = resultant_in_y(&pa, &q);
                let mut ia = a.clone();
                let mut ib = b.clone();
                select_root(&res, || {
                    let cands = [&ia.lo * &ib.lo, &ia.lo * &ib.hi, &ia.hi * &ib.lo, &ia.hi * &ib.hi];
                    let lo = cands.iter().min().cloned().unwrap();
                    let hi = cands.iter().max().cloned().unwrap();
                    ia = bisect_or_keep(&ia);
                    ib = bisect_or_keep(&ib);
                    (lo, hi)
                })
            }
        }
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        match self {
            RealAlg::Rational(r) => {
                if r.is_zero() {
                    Err(NumError::DivisionByZero)
                } else {
                    Ok(RealAlg::Rational(r.recip()))
                }
            }
            RealAlg::Root(root) => {
                // An irrational is nonzero; narrow until 0 is outside.
                let mut cur = root.clone();
                while !cur.lo.is_positive() && !cur.hi.is_negative() {
                    match cur.bisect() {
                        Bisected::Exact(r) => return RealAlg::Rational(r).inv(),
                        Bisected::Narrower(next) => cur = next,
                    }
                }
                let rev = cur.poly.without_zero_roots().reverse();
                Ok(Self::normalized(IsolatedRoot {
                    poly: rev.square_free(),
                    lo: cur.hi.recip(),
                    hi: cur.lo.recip(),
                }))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self.mul(&other.inv()?))
    }

    /// The nonnegative square root.
    pub fn sqrt(&self) -> Result<Self, NumError> {
        match self.sign() {
            Sign::Neg => return Err(NumError::NegativeRadicand),
            Sign::Zero => return Ok(RealAlg::zero()),
            Sign::Pos => {}
        }
        if let RealAlg::Rational(r) = self {
            if let Some(s) = rat_sqrt_exact(r) {
                return Ok(RealAlg::Rational(s));
            }
        }
        let base = self.defining_poly();
        // p(y^2)
        let sq = base.compose(&UPoly::monomial(Rat::one(), 2)).square_free();
        let mut cur = self.clone();
        // Push the interval into the positive half-line first.
        while !cur.lower().is_positive() {
            cur = cur.refine();
        }
        let mut k = 4u32;
        Ok(select_root(&sq, || {
            let (lo, hi) = cur.interval();
            let out = (sqrt_lower(&lo, k), sqrt_upper(&hi, k));
            cur = cur.refine();
            k += 2;
            out
        }))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RealAlg::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RealAlg::Rational(a), RealAlg::Rational(b)) => a.cmp(b),
            (RealAlg::Root(r), RealAlg::Rational(c)) => cmp_root_rat(r, c),
            (RealAlg::Rational(c), RealAlg::Root(r)) => cmp_root_rat(r, c).reverse(),
            (RealAlg::Root(a), RealAlg::Root(b)) => {
                let lo = (&a.lo).max(&b.lo);
                let hi = (&a.hi).min(&b.hi);
                if lo < hi {
                    let g = a.poly.gcd(&b.poly);
                    if !g.is_constant() && Sturm::new(&g).count_between(lo, hi) > 0 {
                        return Ordering::Equal;
                    }
                }
                let (mut a, mut b) = (a.clone(), b.clone());
                loop {
                    if a.hi < b.lo {
                        return Ordering::Less;
                    }
                    if b.hi < a.lo {
                        return Ordering::Greater;
                    }
                    match (a.bisect(), b.bisect()) {
                        (Bisected::Exact(x), _) => {
                            return RealAlg::Rational(x).cmp_exact(&RealAlg::Root(b));
                        }
                        (_, Bisected::Exact(y)) => {
                            return RealAlg::Root(a).cmp_exact(&RealAlg::Rational(y));
                        }
                        (Bisected::Narrower(na), Bisected::Narrower(nb)) => {
                            a = na;
                            b = nb;
                        }
                    }
                }
            }
        }
    }

    /// A rational strictly between `self < other`, preferring an integer.
    pub fn rational_between(&self, other: &Self) -> Rat {
        debug_assert_eq!(self.cmp_exact(other), Ordering::Less);
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let lo = a.upper();
            let hi = b.lower();
            if lo < hi {
                let f = lo.floor() + Rat::one();
                return if f < hi { f } else { half(&lo, &hi) };
            }
            a = a.refine();
            b = b.refine();
        }
    }
}

// Stored roots are irrational, so bisection never lands on them.
fn bisect_or_keep(r: &IsolatedRoot) -> IsolatedRoot {
    match r.bisect() {
        Bisected::Exact(_) => r.clone(),
        Bisected::Narrower(n) => n,
    }
}

/// Expands `q(z + s*y)` in powers of `y`; each coefficient is a
/// polynomial in `z`.
fn expand_shifted(q: &UPoly, s: &Rat) -> Vec<UPoly> {
    let n = q.degree().unwrap_or(0);
    let mut out = alloc::vec![UPoly::zero(); n + 1];
    for (k, qk) in q.coeffs().iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
            // C(k, j) z^(k-j) (s y)^j
            let c = qk * Rat::from_integer(binom.clone()) * crate::poly::pow_rat(s, j);
            *slot = &*slot + &UPoly::monomial(c, k - j);
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    out
}

/// Picks the unique root of `res` inside the intervals produced by
/// `next`, which must shrink toward the target and contain it strictly.
fn select_root(res: &UPoly, mut next: impl FnMut() -> (Rat, Rat)) -> RealAlg {
    let p = res.square_free();
    let sturm = Sturm::new(&p);
    loop {
        let (lo, hi) = next();
        if lo == hi {
            return RealAlg::Rational(lo);
        }
        if p.sign_at(&lo) == Sign::Zero || p.sign_at(&hi) == Sign::Zero {
            continue;
        }
        if sturm.count_between(&lo, &hi) == 1 {
            return RealAlg::normalized(IsolatedRoot { poly: p, lo, hi });
        }
    }
}

fn cmp_root_rat(r: &IsolatedRoot, c: &Rat) -> Ordering {
    if c < &r.lo {
        return Ordering::Greater;
    }
    if c > &r.hi {
        return Ordering::Less;
    }
    if r.poly.sign_at(c) == Sign::Zero {
        return Ordering::Equal;
    }
    // The root is on the side of c where the sign changes.
    let slo = r.poly.sign_at(&r.lo);
    if r.poly.sign_at(c) != slo {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rat::new(sn, sd))
}

/// Rational `<= sqrt(q)` within `2^-k`.
fn sqrt_lower(q: &Rat, k: u32) -> Rat {
    let scale = BigInt::one() << (2 * k as usize);
    let n = (q * Rat::from_integer(scale)).floor().to_integer();
    let s = if n.is_negative() { BigInt::zero() } else { n.sqrt() };
    Rat::new(s, BigInt::one() << k as usize)
}

/// Rational `>= sqrt(q)` within `2^-k`.
fn sqrt_upper(q: &Rat, k: u32) -> Rat {
    let scale = BigInt::one() << (2 * k as usize);
    let n = (q * Rat::from_integer(scale)).ceil().to_integer();
    let mut s = n.sqrt();
    if &s * &s < n {
        s += 1;
    }
    Rat::new(s, BigInt::one() << k as usize)
}

/// All distinct real roots of `p`, increasing, with pairwise disjoint
/// isolating intervals. Repeated factors are dropped.
pub fn isolate_roots(p: &UPoly) -> Result<Vec<RealAlg>, NumError> {
    if p.is_zero() {
        return Err(NumError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.square_free();
    let sturm = Sturm::new(&sf);
    let bound = sf.cauchy_bound();
    let mut out = Vec::new();
    isolate_in(&sf, &sturm, -bound.clone(), bound, &mut out);
    Ok(out)
}

/// Roots in `(lo, hi)`; endpoints are non-roots.
fn isolate_in(p: &UPoly, sturm: &Sturm, lo: Rat, hi: Rat, out: &mut Vec<RealAlg>) {
    let n = sturm.count_between(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealAlg::normalized(IsolatedRoot { poly: p.clone(), lo, hi }));
        return;
    }
    let mid = half(&lo, &hi);
    if p.sign_at(&mid) != Sign::Zero {
        isolate_in(p, sturm, lo, mid.clone(), out);
        isolate_in(p, sturm, mid, hi, out);
        return;
    }
    // A rational root at the midpoint: fence it off with non-root dyadic
    // neighbours that exclude every other root.
    let mut delta = (&hi - &lo) / rat(4);
    loop {
        let l = &mid - &delta;
        let h = &mid + &delta;
        if p.sign_at(&l) != Sign::Zero
            && p.sign_at(&h) != Sign::Zero
            && sturm.count_between(&l, &h) == 1
        {
            isolate_in(p, sturm, lo, l, out);
            out.push(RealAlg::Rational(mid));
            isolate_in(p, sturm, h, hi, out);
            return;
        }
        delta /= rat(2);
    }
}

/// The sign of `p` at `a`.
pub fn sign_at(p: &UPoly, a: &RealAlg) -> Sign {
    match a {
        RealAlg::Rational(r) => p.sign_at(r),
        RealAlg::Root(root) => {
            if p.is_zero() {
                return Sign::Zero;
            }
            if p.is_constant() {
                return Sign::of(&p.lc());
            }
            let g = p.gcd(&root.poly);
            if !g.is_constant() && Sturm::new(&g).count_between(&root.lo, &root.hi) > 0 {
                return Sign::Zero;
            }
            let q = p.square_free();
            let sturm = Sturm::new(&q);
            let mut cur = root.clone();
            loop {
                let slo = q.sign_at(&cur.lo);
                let shi = q.sign_at(&cur.hi);
                if slo != Sign::Zero && shi != Sign::Zero && sturm.count_between(&cur.lo, &cur.hi) == 0 {
                    // p and its square-free part share roots but not signs.
                    return p.sign_at(&cur.lo);
                }
                match cur.bisect() {
                    Bisected::Exact(r) => return p.sign_at(&r),
                    Bisected::Narrower(n) => cur = n,
                }
            }
        }
    }
}

impl PartialEq for RealAlg {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for RealAlg {}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<Rat> for RealAlg {
    fn from(r: Rat) -> Self {
        RealAlg::Rational(r)
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlg::Rational(r) => f.write_str(&crate::poly::fmt_rat(r)),
            RealAlg::Root(root) => write!(
                f,
                "root({} in [{}, {}])",
                root.poly,
                crate::poly::fmt_rat(&root.lo),
                crate::poly::fmt_rat(&root.hi)
            ),
        }
    }
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
