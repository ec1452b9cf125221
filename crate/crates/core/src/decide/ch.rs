//! Cohen-Hörmander elimination of one variable.
//!
//! The engine computes sign matrices of families of polynomials in the
//! eliminated variable `x_0` while case-splitting on the signs of
//! coefficients, which are polynomials in the parameters `x_1, x_2, ...`.
//! It is written in continuation-passing style: each step receives the
//! sign assumptions made so far and a continuation expecting the sign
//! matrix of the original family. Leaves report the assumptions under
//! which the quantified formula holds, giving a disjunctive normal form.
//!
//! With a single parameter the assumptions are tracked exactly as a set of
//! the parameter line, so infeasible branches are cut and implied
//! conditions are left out of the output. With more parameters the caller
//! may supply a feasibility test on sign assumptions that serves the same
//! purpose.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::formula::{PForm, PolyAtom};
use crate::mpoly::MPoly;
use crate::poly::{Sign, SignSet};
use crate::sper::CellSet;

use super::dnf::Conj;

pub(super) enum Abort {
    /// The current sign assumptions cannot all hold.
    Inconsistent,
    /// The recursion depth limit was reached.
    Limit,
}

type Row = Vec<SignSet>;
type Matrix = Vec<Row>;
type Paths = Vec<Conj>;
type R = Result<Paths, Abort>;
type Cont<'c> = &'c dyn Fn(&Ctx, Matrix) -> R;
type Branch<'c> = &'c dyn Fn(&Ctx) -> R;

#[derive(Clone)]
pub(super) struct Ctx {
    /// Known signs of monic-normalized parameter polynomials.
    sgns: Vec<(MPoly, SignSet)>,
    /// Conditions to report at a leaf.
    path: Conj,
    /// Parameter values still possible, when there is one parameter.
    region: Option<CellSet>,
    depth: usize,
}

pub(super) struct Engine<'a> {
    body: &'a PForm,
    pols: Vec<MPoly>,
    universal: bool,
    max_depth: usize,
    parts: RefCell<BTreeMap<MPoly, [CellSet; 3]>>,
    feasible: Option<Feasible<'a>>,
}

/// Whether a conjunction of parameter sign conditions has a solution.
pub(super) type Feasible<'a> = &'a dyn Fn(&Conj) -> bool;

pub(super) fn distinct_polys(body: &PForm) -> Vec<MPoly> {
    let mut pols: Vec<MPoly> = Vec::new();
    for a in body.atoms() {
        if !pols.contains(&a.poly) {
            pols.push(a.poly.clone());
        }
    }
    pols
}

/// Truth of a quantifier-free body given the sign of each polynomial.
pub(super) fn eval_body(body: &PForm, pols: &[MPoly], sign: &dyn Fn(usize) -> Sign) -> bool {
    match body {
        PForm::True => true,
        PForm::False => false,
        PForm::Atom(PolyAtom { poly, rel }) => {
            let i = pols.iter().position(|p| p == poly).expect("atom polynomial is listed");
            rel.holds(sign(i))
        }
        PForm::And(a, b) => eval_body(a, pols, sign) && eval_body(b, pols, sign),
        PForm::Or(a, b) => eval_body(a, pols, sign) || eval_body(b, pols, sign),
        PForm::Exists(..) | PForm::Forall(..) => unreachable!("body is quantifier-free"),
    }
}

fn sorted(mut c: Conj) -> Conj {
    c.sort_by(|a, b| a.0.cmp(&b.0));
    c
}

fn condense(rows: Matrix) -> Matrix {
    let mut out = Vec::with_capacity(rows.len());
    out.push(rows[0].clone());
    let mut j = 1;
    while j + 1 < rows.len() {
        if rows[j].contains(&SignSet::ZERO) {
            out.push(rows[j].clone());
            out.push(rows[j + 1].clone());
        }
        j += 2;
    }
    out
}

impl<'a> Engine<'a> {
    /// Eliminates `x_0` from `exists x_0. body` (or `forall x_0. body`),
    /// returning the conjunctions of parameter conditions under which it
    /// holds.
    pub(super) fn run(
        body: &'a PForm,
        universal: bool,
        nparams: usize,
        max_depth: usize,
        feasible: Option<Feasible<'a>>,
    ) -> Result<Paths, Abort> {
        let engine = Engine {
            body,
            pols: distinct_polys(body),
            universal,
            max_depth,
            parts: RefCell::new(BTreeMap::new()),
            feasible: if nparams == 1 { None } else { feasible },
        };
        let ctx = Ctx {
            sgns: Vec::new(),
            path: Vec::new(),
            region: (nparams == 1).then(CellSet::full),
            depth: 0,
        };
        let leaf = |c: &Ctx, m: Matrix| -> R {
            let sat = |row: &Row| {
                eval_body(engine.body, &engine.pols, &|i| row[i].as_sign().expect("definite sign"))
            };
            let holds = if engine.universal { m.iter().all(sat) } else { m.iter().any(sat) };
            Ok(if holds { vec![c.path.clone()] } else { Vec::new() })
        };
        let pols = engine.pols.clone();
        match engine.casesplit(&ctx, Vec::new(), &pols, &leaf) {
            Err(Abort::Inconsistent) => Ok(Vec::new()),
            r => r,
        }
    }

    fn findsign(&self, ctx: &Ctx, p: &MPoly) -> Option<SignSet> {
        if let Some(c) = p.as_const() {
            return Some(SignSet::single(Sign::of(c)));
        }
        let (m, neg) = p.monic();
        ctx.sgns
            .iter()
            .find(|(q, _)| *q == m)
            .map(|(_, s)| if neg { s.flip() } else { *s })
    }

    fn sign_cells(&self, m: &MPoly, s: SignSet) -> CellSet {
        let mut memo = self.parts.borrow_mut();
        let parts = memo.entry(m.clone()).or_insert_with(|| {
            let u = m.to_upoly(1).expect("coefficients involve only the parameter");
            [
                CellSet::sign_condition(&u, SignSet::NEG),
                CellSet::sign_condition(&u, SignSet::ZERO),
                CellSet::sign_condition(&u, SignSet::POS),
            ]
        });
        let mut out = CellSet::empty();
        for (k, sign) in [Sign::Neg, Sign::Zero, Sign::Pos].into_iter().enumerate() {
            if s.contains(sign) {
                out = out.union(&parts[k]);
            }
        }
        out
    }

    /// Adds the assumption that `p` has a sign in `s`; `None` if that is
    /// impossible.
    fn assume(&self, ctx: &Ctx, p: &MPoly, s: SignSet) -> Option<Ctx> {
        if let Some(c) = p.as_const() {
            return SignSet::single(Sign::of(c)).is_subset(s).then(|| ctx.clone());
        }
        let (m, neg) = p.monic();
        let s = if neg { s.flip() } else { s };
        let mut c = ctx.clone();
        let before = match c.sgns.iter_mut().find(|(q, _)| *q == m) {
            Some(e) => {
                let t = e.1;
                e.1 = t.intersect(s);
                if e.1.is_empty() {
                    return None;
                }
                t
            }
            None => {
                c.sgns.push((m.clone(), s));
                SignSet::ALL
            }
        };
        let record = match (&ctx.region, self.feasible) {
            (Some(region), _) => {
                let narrowed = region.intersect(&self.sign_cells(&m, s));
                if narrowed.is_empty() {
                    return None;
                }
                let changed = narrowed != *region;
                c.region = Some(narrowed);
                changed
            }
            (None, Some(feasible)) => {
                let after = before.intersect(s);
                if after == before {
                    false
                } else {
                    if !feasible(&sorted(c.sgns.clone())) {
                        return None;
                    }
                    let mut other = ctx.sgns.clone();
                    let rest = before.intersect(after.complement());
                    match other.iter_mut().find(|(q, _)| *q == m) {
                        Some(e) => e.1 = rest,
                        None => other.push((m.clone(), rest)),
                    }
                    feasible(&sorted(other))
                }
            }
            (None, None) => true,
        };
        if record {
            match c.path.iter_mut().find(|(q, _)| *q == m) {
                Some(e) => e.1 = e.1.intersect(s),
                None => c.path.push((m, s)),
            }
        }
        Some(c)
    }

    fn split_zero(&self, ctx: &Ctx, p: &MPoly, zero: Branch, nonzero: Branch) -> R {
        match self.findsign(ctx, p) {
            Some(SignSet::ZERO) => zero(ctx),
            Some(_) => nonzero(ctx),
            None => {
                let mut out = Vec::new();
                if let Some(c) = self.assume(ctx, p, SignSet::ZERO) {
                    out.extend(zero(&c)?);
                }
                if let Some(c) = self.assume(ctx, p, SignSet::NONZERO) {
                    out.extend(nonzero(&c)?);
                }
                Ok(out)
            }
        }
    }

    fn split_sign(&self, ctx: &Ctx, p: &MPoly, cont: Branch) -> R {
        match self.findsign(ctx, p) {
            Some(SignSet::NONZERO) => {
                let mut out = Vec::new();
                for s in [SignSet::POS, SignSet::NEG] {
                    if let Some(c) = self.assume(ctx, p, s) {
                        out.extend(cont(&c)?);
                    }
                }
                Ok(out)
            }
            _ => cont(ctx),
        }
    }

    fn split_trichotomy(&self, ctx: &Ctx, p: &MPoly, zero: Branch, nonzero: Branch) -> R {
        self.split_zero(ctx, p, zero, &|c: &Ctx| self.split_sign(c, p, nonzero))
    }

    /// Settles the leading coefficient of each polynomial in turn, then
    /// computes the sign matrix of those with a nonzero one.
    fn casesplit(&self, ctx: &Ctx, dun: Vec<MPoly>, pols: &[MPoly], cont: Cont) -> R {
        let Some((p, ops)) = pols.split_first() else {
            return self.matrix(ctx, &dun, cont);
        };
        let h = p.head(0);
        if p.degree_in(0) == 0 {
            let k = |c: &Ctx| self.delconst(c, &dun, p, ops, cont);
            return self.split_trichotomy(ctx, &h, &k, &k);
        }
        let zero = |c: &Ctx| {
            let mut rest = Vec::with_capacity(pols.len());
            rest.push(p.behead(0));
            rest.extend_from_slice(ops);
            self.casesplit(c, dun.clone(), &rest, cont)
        };
        let nonzero = |c: &Ctx| {
            let mut d = dun.clone();
            d.push(p.clone());
            self.casesplit(c, d, ops, cont)
        };
        self.split_trichotomy(ctx, &h, &zero, &nonzero)
    }

    /// A polynomial free of `x_0` with known sign: drop it from the family
    /// and reinsert its constant sign column afterwards.
    fn delconst(&self, ctx: &Ctx, dun: &[MPoly], p: &MPoly, ops: &[MPoly], cont: Cont) -> R {
        let at = dun.len();
        let k = |c: &Ctx, m: Matrix| {
            let s = self.findsign(c, p).expect("sign settled by the split");
            let m = m
                .into_iter()
                .map(|mut r| {
                    r.insert(at, s);
                    r
                })
                .collect();
            cont(c, m)
        };
        self.casesplit(ctx, dun.to_vec(), ops, &k)
    }

    /// Sign matrix of a family whose leading coefficients are all nonzero.
    /// The highest-degree member `p` is replaced by its derivative and the
    /// remainders of `p` by every member; the matrix of that family
    /// determines the signs of `p`.
    fn matrix(&self, ctx: &Ctx, pols: &[MPoly], cont: Cont) -> R {
        if pols.is_empty() {
            return match cont(ctx, vec![Vec::new()]) {
                Err(Abort::Inconsistent) => Ok(Vec::new()),
                r => r,
            };
        }
        if ctx.depth >= self.max_depth {
            return Err(Abort::Limit);
        }
        let mut deeper = ctx.clone();
        deeper.depth += 1;
        let mut i = 0;
        for (j, q) in pols.iter().enumerate() {
            if q.degree_in(0) > pols[i].degree_in(0) {
                i = j;
            }
        }
        let p = &pols[i];
        let mut qs = Vec::with_capacity(pols.len());
        qs.push(p.derivative(0));
        qs.extend_from_slice(&pols[..i]);
        qs.extend_from_slice(&pols[i + 1..]);
        let gs: Vec<MPoly> = qs.iter().map(|q| self.pdivide_pos(ctx, p, q)).collect();
        let l = qs.len();
        let reorder = |c: &Ctx, m: Matrix| {
            let m = m
                .into_iter()
                .map(|row| {
                    let mut t = row[1..].to_vec();
                    t.insert(i, row[0]);
                    t
                })
                .collect();
            cont(c, m)
        };
        let ded = |c: &Ctx, m: Matrix| self.dedmatrix(c, m, l, &reorder);
        qs.extend(gs);
        self.casesplit(&deeper, Vec::new(), &qs, &ded)
    }

    /// Remainder of `p` by `q`, scaled so that it has the sign of `p` at
    /// every root of `q`.
    fn pdivide_pos(&self, ctx: &Ctx, p: &MPoly, q: &MPoly) -> MPoly {
        let a = q.head(0);
        let (k, r) = p.pseudo_rem(q, 0);
        let even = k % 2 == 0;
        match self.findsign(ctx, &a) {
            Some(SignSet::POS) => r,
            Some(SignSet::NEG) => {
                if even {
                    r
                } else {
                    r.neg()
                }
            }
            Some(SignSet::NONZERO) => {
                if even {
                    r
                } else {
                    a.mul(&r)
                }
            }
            _ => unreachable!("leading coefficients in a matrix call are nonzero"),
        }
    }

    /// Turns the matrix of `[p', q_1.., r_0, r_1..]` into the matrix of
    /// `[p, q_1..]`.
    fn dedmatrix(&self, ctx: &Ctx, mat: Matrix, l: usize, cont: Cont) -> R {
        // At a root of some q_j, p has the sign of its remainder by q_j.
        let rows: Matrix = mat
            .iter()
            .map(|row| {
                let (q, g) = row.split_at(l);
                let ps = q.iter().position(|s| *s == SignSet::ZERO).map_or(SignSet::NONZERO, |j| g[j]);
                let mut out = Vec::with_capacity(l + 1);
                out.push(ps);
                out.extend_from_slice(q);
                out
            })
            .collect();
        let rows = condense(rows);
        // Signs of p at the two infinities follow from p'.
        let first = &rows[0];
        let last = &rows[rows.len() - 1];
        let mut minf = first.clone();
        minf[0] = first[1].flip();
        let mut pinf = last.clone();
        pinf[0] = last[1];
        let mut seq = Vec::with_capacity(rows.len() + 2);
        seq.push(minf);
        seq.extend(rows);
        seq.push(pinf);
        // Between consecutive roots of p' and the q_j, p is monotone.
        let mut out: Matrix = Vec::with_capacity(seq.len());
        for j in 1..seq.len() - 1 {
            if j % 2 == 0 {
                out.push(seq[j].clone());
                continue;
            }
            let (lt, rt) = (seq[j - 1][0], seq[j + 1][0]);
            let mut int = seq[j].clone();
            if lt == SignSet::ZERO && rt == SignSet::ZERO {
                return Err(Abort::Inconsistent);
            }
            if lt == SignSet::ZERO || lt == rt {
                int[0] = rt;
                out.push(int);
            } else if rt == SignSet::ZERO {
                int[0] = lt;
                out.push(int);
            } else {
                let mut a = int.clone();
                a[0] = lt;
                let mut z = int.clone();
                z[0] = SignSet::ZERO;
                int[0] = rt;
                out.push(a);
                out.push(z);
                out.push(int);
            }
        }
        let out: Matrix = out
            .into_iter()
            .map(|mut r| {
                r.remove(1);
                r
            })
            .collect();
        cont(ctx, condense(out))
    }
}
