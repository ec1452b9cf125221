//! Points and constructible sets of the real spectrum of `Q[x]`.
//!
//! Every point is the cone `{p : p(pt) >= 0}` of an ordering of `Q[x]`.
//! The representable ones are evaluation at a real algebraic number, the
//! two infinitesimal cuts on either side of one, and the two infinite
//! cuts. Constructible sets are unions of cells of a sign-invariant
//! decomposition, so cuts never need to be stored: a cut belongs to a set
//! exactly when the adjacent open cell does.

mod cellset;

pub use cellset::{cell_samples, merge_points, CellSet};

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::decide::{qe, DecideError, Limits};
use crate::exactnum::{isolate_roots, sign_at, RealAlg};
use crate::formula::Formula;
use crate::poly::{Sign, UPoly};

#[derive(Clone, PartialEq, Eq)]
pub enum SperPoint1 {
    Closed(RealAlg),
    /// Infinitesimally to the left of the number.
    LeftCut(RealAlg),
    /// Infinitesimally to the right of the number.
    RightCut(RealAlg),
    MinusInf,
    PlusInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportIdeal {
    Zero,
    /// Generated by a square-free polynomial vanishing at the point. It is
    /// not factored, so it may be reducible.
    Principal(UPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeOrder {
    Le,
    Ge,
    Eq,
    Incomparable,
}

pub fn supp(pt: &SperPoint1) -> SupportIdeal {
    match pt {
        SperPoint1::Closed(a) => SupportIdeal::Principal(a.defining_poly()),
        _ => SupportIdeal::Zero,
    }
}

/// The sign of `p` at a point. At a cut beside `a` it is the sign of the
/// first derivative of `p` not vanishing at `a`, flipped for odd order on
/// the left; at the infinite cuts it is read from the leading term.
pub fn sign_at_point(p: &UPoly, pt: &SperPoint1) -> Sign {
    match pt {
        SperPoint1::Closed(a) => sign_at(p, a),
        SperPoint1::MinusInf => p.sign_at_neg_inf(),
        SperPoint1::PlusInf => p.sign_at_pos_inf(),
        SperPoint1::LeftCut(a) | SperPoint1::RightCut(a) => {
            if p.is_zero() {
                return Sign::Zero;
            }
            let mut d = p.clone();
            let mut k = 0usize;
            loop {
                let s = sign_at(&d, a);
                if s != Sign::Zero {
                    let left = matches!(pt, SperPoint1::LeftCut(_));
                    return if left && k % 2 == 1 { s.flip() } else { s };
                }
                d = d.derivative();
                k += 1;
            }
        }
    }
}

/// Membership of `p` in the cone of the point, i.e. `p(pt) >= 0`.
pub fn cone_contains(pt: &SperPoint1, p: &UPoly) -> bool {
    sign_at_point(p, pt) != Sign::Neg
}

/// Checks the cone axioms on a finite sample: `0` is in the cone, sums and
/// products of members are members, an element lying in the cone together
/// with its negative has sign zero, and each element or its negative is a
/// member.
pub fn cone_axioms_spotcheck(pt: &SperPoint1, sample: &[UPoly]) -> bool {
    if !cone_contains(pt, &UPoly::zero()) {
        return false;
    }
    let members: Vec<&UPoly> = sample.iter().filter(|p| cone_contains(pt, p)).collect();
    for p in &members {
        for q in &members {
            if !cone_contains(pt, &(*p + *q)) || !cone_contains(pt, &(*p * *q)) {
                return false;
            }
        }
    }
    sample.iter().all(|p| {
        let pos = cone_contains(pt, p);
        let neg = cone_contains(pt, &-p);
        (pos || neg) && (!(pos && neg) || sign_at_point(p, pt) == Sign::Zero)
    })
}

/// Compares in the coefficientwise cone: `p <= q` when every coefficient of
/// `q - p` is nonnegative.
pub fn coefficient_cone_compare(p: &UPoly, q: &UPoly) -> ConeOrder {
    let nonneg = |d: &UPoly| d.coeffs().iter().all(|c| !c.is_negative());
    match (nonneg(&(q - p)), nonneg(&(p - q))) {
        (true, true) => ConeOrder::Eq,
        (true, false) => ConeOrder::Le,
        (false, true) => ConeOrder::Ge,
        (false, false) => ConeOrder::Incomparable,
    }
}

/// Whether `b` lies in the closure of `a`: cuts specialize to their base
/// point, and every point to itself.
pub fn specializes(a: &SperPoint1, b: &SperPoint1) -> bool {
    if a == b {
        return true;
    }
    match (a, b) {
        (SperPoint1::LeftCut(r) | SperPoint1::RightCut(r), SperPoint1::Closed(s)) => r == s,
        _ => false,
    }
}

/// The constructible set defined by a formula in the single free variable
/// `var`. Other quantified variables are eliminated first.
pub fn from_formula(phi: &Formula, var: &str, limits: &Limits) -> Result<CellSet, DecideError> {
    let extra: Vec<_> = phi.free_vars().into_iter().filter(|v| v != var).collect();
    if !extra.is_empty() {
        return Err(DecideError::NotClosed(extra));
    }
    let psi = if phi.is_quantifier_free() { phi.clone() } else { qe(phi, limits)? };
    Ok(from_qf(&psi, var))
}

/// As [`from_formula`] for a formula already free of quantifiers.
pub fn from_qf(psi: &Formula, var: &str) -> CellSet {
    let order = [var.to_string()];
    let mut roots = Vec::new();
    for a in psi.atoms() {
        let p = a
            .difference(&order)
            .and_then(|m| m.to_upoly(0))
            .expect("formula mentions only the given variable");
        if !p.is_constant() {
            roots.push(isolate_roots(&p).expect("nonconstant"));
        }
    }
    let bps = merge_points(roots);
    let samples = cell_samples(&bps);
    let holds = |v: RealAlg| {
        let mut env = alloc::collections::BTreeMap::new();
        env.insert(var.to_string(), v);
        psi.eval_qf(&env).expect("quantifier-free in one variable")
    };
    let mut mem = Vec::with_capacity(2 * bps.len() + 1);
    for (i, s) in samples.into_iter().enumerate() {
        mem.push(holds(RealAlg::from_rat(s)));
        if i < bps.len() {
            mem.push(holds(bps[i].clone()));
        }
    }
    CellSet::new(bps, mem).expect("sorted breakpoints")
}

/// Image of `{(x, y) : phi}` under projection to `x`.
pub fn project(phi: &Formula, x: &str, y: &str, limits: &Limits) -> Result<CellSet, DecideError> {
    let mut ex = Formula::exists(y, phi.clone());
    if !phi.free_vars().contains(y) {
        ex = phi.clone();
    }
    from_formula(&ex.rectify(), x, limits)
}

/// Preimage of the basic open set `D(r_1, ..., r_n)` of `Q[u]` under the
/// map induced by `u -> g(x)`.
pub fn pullback_basic_open(image_polys: &[UPoly], g: &UPoly) -> CellSet {
    let pulled: Vec<UPoly> = image_polys.iter().map(|r| r.compose(g)).collect();
    CellSet::basic_open(&pulled)
}

impl fmt::Display for SperPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SperPoint1::Closed(a) => write!(f, "closed({a})"),
            SperPoint1::LeftCut(a) => write!(f, "left({a})"),
            SperPoint1::RightCut(a) => write!(f, "right({a})"),
            SperPoint1::MinusInf => f.write_str("-inf"),
            SperPoint1::PlusInf => f.write_str("+inf"),
        }
    }
}

impl fmt::Debug for SperPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
