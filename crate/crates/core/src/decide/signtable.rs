//! Sign-invariant decompositions of the line for families of univariate
//! polynomials.

use alloc::vec::Vec;

use crate::exactnum::{isolate_roots, sign_at, RealAlg};
use crate::poly::{Sign, UPoly};
use crate::sper::{cell_samples, merge_points};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellKind {
    Point(RealAlg),
    /// An open interval with a rational sample inside it. `None` bounds
    /// are infinite.
    Open {
        lower: Option<RealAlg>,
        upper: Option<RealAlg>,
        sample: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCell {
    pub kind: CellKind,
    /// Sign of each polynomial of the table on this cell.
    pub signs: Vec<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTable {
    pub polys: Vec<UPoly>,
    /// Alternating open intervals and points, starting and ending with an
    /// unbounded interval.
    pub cells: Vec<SignCell>,
}

impl SignTable {
    pub fn points(&self) -> impl Iterator<Item = &RealAlg> {
        self.cells.iter().filter_map(|c| match &c.kind {
            CellKind::Point(a) => Some(a),
            CellKind::Open { .. } => None,
        })
    }
}

pub fn sign_table(polys: &[UPoly]) -> SignTable {
    let roots = polys
        .iter()
        .filter(|p| !p.is_constant())
        .map(|p| isolate_roots(p).expect("nonconstant"));
    let points = merge_points(roots);
    let samples = cell_samples(&points);
    let mut cells = Vec::with_capacity(2 * points.len() + 1);
    for (i, s) in samples.into_iter().enumerate() {
        let signs = polys.iter().map(|p| p.sign_at(&s)).collect();
        cells.push(SignCell {
            kind: CellKind::Open {
                lower: i.checked_sub(1).map(|j| points[j].clone()),
                upper: points.get(i).cloned(),
                sample: s,
            },
            signs,
        });
        if let Some(a) = points.get(i) {
            cells.push(SignCell {
                kind: CellKind::Point(a.clone()),
                signs: polys.iter().map(|p| sign_at(p, a)).collect(),
            });
        }
    }
    SignTable {
        polys: polys.to_vec(),
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_linear() {
        let t = sign_table(&[UPoly::x()]);
        let signs: Vec<_> = t.cells.iter().map(|c| c.signs.clone()).collect();
        assert_eq!(signs, vec![vec![Sign::Neg], vec![Sign::Zero], vec![Sign::Pos]]);
    }

    #[test]
    fn shared_and_distinct_roots() {
        let t = sign_table(&[UPoly::from_ints(&[-2, 0, 1]), UPoly::x()]);
        assert_eq!(t.cells.len(), 7);
        let pts: Vec<_> = t.points().cloned().collect();
        assert_eq!(pts, vec![RealAlg::sqrt_int(2).neg(), RealAlg::zero(), RealAlg::sqrt_int(2)]);
        use Sign::*;
        let expected = [
            [Pos, Neg],
            [Zero, Neg],
            [Neg, Neg],
            [Neg, Zero],
            [Neg, Pos],
            [Zero, Pos],
            [Pos, Pos],
        ];
        for (c, e) in t.cells.iter().zip(expected) {
            assert_eq!(c.signs, e.to_vec());
        }
    }

    #[test]
    fn empty_family() {
        let t = sign_table(&[]);
        assert_eq!(t.cells.len(), 1);
        assert!(t.cells[0].signs.is_empty());
    }

    #[test]
    fn zero_polynomial_has_sign_zero() {
        let t = sign_table(&[UPoly::zero(), UPoly::from_ints(&[-1, 1])]);
        assert!(t.cells.iter().all(|c| c.signs[0] == Sign::Zero));
        assert_eq!(t.cells.len(), 3);
    }
}
