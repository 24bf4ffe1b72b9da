//! The determinant side: assembles the matrix of series-coefficient
//! entries for a flagged partition and expands it exactly in the
//! truncated ring.
//!
//! The entry at row i, column j is the binomial beta-sum of coefficients
//! `G^{[f_i, f_i + lam_i - i]}` (see [`crate::series::jt_entry`]); the
//! determinant of the r x r matrix equals the tableau-side polynomial.
//! Expansion is by minors with memoization over column subsets, which
//! needs no division and O(r 2^r) polynomial products.
//!
//! Truncation policy: the result is a polynomial of xb-degree at most
//! twice the largest possible entry count of a tableau of the shape, and
//! three closed-form capacity bounds on that count are available a priori
//! (boxes weighted by flags; row ranges; column heights).  Entries are
//! computed with the smallest of the three, which keeps the heavy
//! instances tractable while remaining provably exact; [`degree_bound`]
//! reports the simple box-capacity bound.

use std::collections::HashMap;

use crate::poly::{truncate, Polynomial, TruncationOrder};
use crate::series::{jt_entry_with, series_product};
use crate::tableaux::FlaggedPartition;
use crate::{kernel, Error, Result};

/// The a-priori truncation order `2 * sum_i lam_i * f_i`: a tableau has at
/// most `sum lam_i f_i` entries (each box holds at most `f_i` values) and
/// each entry contributes xb-degree at most 2.
pub fn degree_bound(fp: &FlaggedPartition) -> TruncationOrder {
    let d: u32 = fp
        .lambda()
        .iter()
        .zip(fp.flag())
        .map(|(&l, &f)| l * f)
        .sum();
    TruncationOrder::new(2 * d)
}

/// The sharpest of three provable capacity bounds on the entry count:
///
/// * every box holds at most `f_i` values (`sum lam_i f_i`);
/// * along row i the cell maxima weakly increase within `1..=f_i`, so the
///   row holds at most `lam_i + f_i - 1` values;
/// * down column j the entries are distinct values bounded by the flag of
///   its lowest row, so the column holds at most `f_{h_j}` values.
pub(crate) fn refined_degree_bound(fp: &FlaggedPartition) -> TruncationOrder {
    let lambda = fp.lambda();
    let flag = fp.flag();
    let boxes: u32 = lambda.iter().zip(flag).map(|(&l, &f)| l * f).sum();
    let rows: u32 = lambda.iter().zip(flag).map(|(&l, &f)| l + f - 1).sum();
    let cols: u32 = (1..=lambda.first().copied().unwrap_or(0))
        .map(|j| {
            let height = lambda.iter().take_while(|&&l| l >= j).count();
            flag[height - 1]
        })
        .sum();
    TruncationOrder::new(2 * boxes.min(rows).min(cols))
}

/// A square matrix of polynomials sharing one truncation order.
#[derive(Debug, Clone)]
pub struct PolyMatrix {
    entries: Vec<Vec<Polynomial>>,
    trunc: TruncationOrder,
}

impl PolyMatrix {
    /// Wraps the rows, truncating every entry at `trunc`.
    pub fn new(entries: Vec<Vec<Polynomial>>, trunc: TruncationOrder) -> Result<Self> {
        let r = entries.len();
        if entries.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument(
                "matrix rows must all have the same length as the column count".into(),
            ));
        }
        let entries = entries
            .into_iter()
            .map(|row| row.iter().map(|e| truncate(e, trunc)).collect())
            .collect();
        Ok(PolyMatrix { entries, trunc })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `row`, `col`, 1-based.
    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row - 1][col - 1]
    }

    pub fn trunc(&self) -> TruncationOrder {
        self.trunc
    }
}

/// Exact determinant in the truncated ring by minor expansion, memoized
/// over column subsets.  The empty matrix has determinant 1.
pub fn determinant(m: &PolyMatrix) -> Polynomial {
    let r = m.size();
    if r == 0 {
        return Polynomial::one();
    }
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    minor_det(m, (1u32 << r) - 1, &mut memo)
}

/// Determinant of the last `popcount(mask)` rows on the columns in `mask`.
fn minor_det(m: &PolyMatrix, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if mask == 0 {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let r = m.size();
    let row = r - mask.count_ones() as usize + 1;
    let mut det = Polynomial::zero();
    let mut sign_flip = false;
    for col in 1..=r {
        let bit = 1u32 << (col - 1);
        if mask & bit == 0 {
            continue;
        }
        let entry = m.entry(row, col);
        if !entry.is_zero() {
            let sub = minor_det(m, mask & !bit, memo);
            let prod = entry.mul_truncated(&sub, m.trunc());
            if sign_flip {
                det = &det - &prod;
            } else {
                det = &det + &prod;
            }
        }
        sign_flip = !sign_flip;
    }
    memo.insert(mask, det.clone());
    det
}

/// Assembles the entry matrix for the shape at the given truncation and
/// expands it.  One windowed series is built per row and shared across
/// that row's entries.
fn determinant_generic(fp: &FlaggedPartition, trunc: TruncationOrder) -> Result<Polynomial> {
    let r = fp.rows();
    let mut rows = Vec::with_capacity(r);
    for i in 1..=r {
        let lam_i = fp.lambda()[i - 1];
        let f_i = fp.flag()[i - 1];
        let q = (i64::from(f_i) + i64::from(lam_i) - i as i64).max(0) as u32;
        let series = series_product(f_i, q, i64::from(trunc.bound), trunc)?;
        let mut row = Vec::with_capacity(r);
        for j in 1..=r {
            row.push(jt_entry_with(&series, lam_i, f_i, i as u32, j as u32, trunc)?);
        }
        rows.push(row);
    }
    Ok(determinant(&PolyMatrix::new(rows, trunc)?))
}

/// The determinant-side polynomial for a flagged partition: exact, with
/// the empty shape giving 1 and a zero flag start giving 0.
pub fn grothendieck_determinant(fp: &FlaggedPartition) -> Result<Polynomial> {
    grothendieck_determinant_margin(fp, 0)
}

/// Same, with `margin` added to the truncation order; the result must not
/// depend on the margin (the polynomial's degree is below every admissible
/// bound), which makes nonzero margins a stability audit.
pub fn grothendieck_determinant_margin(fp: &FlaggedPartition, margin: u32) -> Result<Polynomial> {
    if fp.is_empty() {
        return Ok(Polynomial::one());
    }
    if fp.is_zero_case() {
        return Ok(Polynomial::zero());
    }
    let trunc = TruncationOrder::new(refined_degree_bound(fp).bound + margin);
    if let Some(packed) = kernel::determinant_packed(fp, trunc)? {
        return Ok(packed);
    }
    determinant_generic(fp, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{divided_difference, linear_factor, star_shift, substitute, Assignment};
    use crate::series::gf_coefficient;
    use crate::tableaux::grothendieck_tableau;

    fn fp(lambda: &[u32], flag: &[u32]) -> FlaggedPartition {
        FlaggedPartition::new(lambda.to_vec(), flag.to_vec()).unwrap()
    }

    #[test]
    fn degree_bound_examples() {
        assert_eq!(degree_bound(&fp(&[1], &[1])).bound, 2);
        assert_eq!(degree_bound(&fp(&[3, 1], &[2, 4])).bound, 20);
        assert!(refined_degree_bound(&fp(&[3, 1], &[2, 4])).bound <= 20);
        // refined column bound: heights (2,1,1), flags of lowest rows (4,2,2)
        assert_eq!(refined_degree_bound(&fp(&[3, 1], &[2, 4])).bound, 16);
    }

    #[test]
    fn determinant_base_cases() {
        let t = TruncationOrder::new(6);
        let p = linear_factor(1, 1).unwrap();
        let one = Polynomial::one();
        let zero = Polynomial::zero();
        let m1 = PolyMatrix::new(vec![vec![p.clone()]], t).unwrap();
        assert_eq!(determinant(&m1), p);

        let a = Polynomial::var_x(1);
        let b = Polynomial::var_x(2);
        let c = Polynomial::var_b(1);
        let d = Polynomial::var_b(2);
        let m2 = PolyMatrix::new(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]], t)
            .unwrap();
        assert_eq!(determinant(&m2), &(&a * &d) - &(&b * &c));

        let id3 = PolyMatrix::new(
            vec![
                vec![one.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
            t,
        )
        .unwrap();
        assert_eq!(determinant(&id3), one);
        assert!(PolyMatrix::new(vec![vec![one.clone()], vec![one]], t).is_err());
    }

    #[test]
    fn smallest_shapes() {
        assert_eq!(
            grothendieck_determinant(&fp(&[1], &[1])).unwrap(),
            linear_factor(1, 1).unwrap()
        );
        assert!(grothendieck_determinant(&fp(&[2], &[0]))
            .unwrap()
            .is_zero());
        assert_eq!(
            grothendieck_determinant(&FlaggedPartition::empty()).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn matches_the_tableau_side_on_small_shapes() {
        for (lam, flag) in [
            (vec![1u32], vec![2u32]),
            (vec![3], vec![2]),
            (vec![2, 1], vec![1, 2]),
            (vec![1, 1], vec![1, 2]),
            (vec![2, 1], vec![2, 3]),
            (vec![2, 2], vec![2, 2]),
        ] {
            let shape = fp(&lam, &flag);
            assert_eq!(
                grothendieck_determinant(&shape).unwrap(),
                grothendieck_tableau(&shape).unwrap(),
                "shape {shape}"
            );
        }
    }

    #[test]
    fn packed_and_generic_expansions_agree() {
        for (lam, flag) in [
            (vec![2u32, 1], vec![1u32, 3]),
            (vec![2, 2], vec![2, 3]),
            (vec![3, 1], vec![2, 4]),
            (vec![2, 1, 1], vec![1, 2, 3]),
            (vec![2, 2, 1], vec![2, 2, 4]),
        ] {
            let shape = fp(&lam, &flag);
            let trunc = refined_degree_bound(&shape);
            let packed = crate::kernel::determinant_packed(&shape, trunc)
                .unwrap()
                .expect("shape fits the packed limits");
            assert_eq!(packed, determinant_generic(&shape, trunc).unwrap(), "shape {shape}");
        }
    }

    #[test]
    fn all_ones_flag_with_three_rows_vanishes() {
        let shape = fp(&[1, 1, 1], &[1, 1, 1]);
        assert!(grothendieck_determinant(&shape).unwrap().is_zero());
        assert!(grothendieck_tableau(&shape).unwrap().is_zero());
    }

    #[test]
    fn margin_does_not_change_the_result() {
        for (lam, flag) in [(vec![2u32, 1], vec![1u32, 2]), (vec![2, 2], vec![2, 3])] {
            let shape = fp(&lam, &flag);
            let base = grothendieck_determinant(&shape).unwrap();
            let padded = grothendieck_determinant_margin(&shape, 3).unwrap();
            assert_eq!(base, padded, "shape {shape}");
        }
    }

    #[test]
    fn beta_zero_collapses_to_the_classical_determinant() {
        // with beta = 0 only the s = 0 binomial term survives in each
        // entry, so the determinant degenerates to the classical flagged
        // form det(h_{lam_i - i + j})
        let shape = fp(&[2, 1], &[2, 3]);
        let trunc = refined_degree_bound(&shape);
        let beta0 = Assignment::default().set_beta(0);
        let full = substitute(&grothendieck_determinant(&shape).unwrap(), &beta0);
        let r = shape.rows();
        let mut rows = Vec::new();
        for i in 1..=r as i64 {
            let lam_i = shape.lambda()[i as usize - 1];
            let f_i = shape.flag()[i as usize - 1];
            let q = (i64::from(f_i) + i64::from(lam_i) - i).max(0) as u32;
            let mut row = Vec::new();
            for j in 1..=r as i64 {
                let m = i64::from(lam_i) - i + j;
                let h = gf_coefficient(f_i, q, m, trunc).unwrap();
                row.push(substitute(&h, &beta0));
            }
            rows.push(row);
        }
        let classical = determinant(&PolyMatrix::new(rows, trunc).unwrap());
        assert_eq!(full, classical);
    }

    #[test]
    fn first_row_peels_off_when_the_flag_starts_at_one() {
        // A first flag of 1 forces every first-row entry to be {1}, so the
        // polynomial factors: the product over the first row's boxes times
        // the remaining shape's polynomial with every x-index shifted up
        // and every remaining flag lowered by one.
        for (lam, flag) in [
            (vec![2u32, 1], vec![1u32, 2]),
            (vec![3, 1], vec![1, 3]),
            (vec![2, 2], vec![1, 1]),
            (vec![2, 2, 1], vec![1, 2, 3]),
            (vec![3], vec![1]),
        ] {
            let shape = fp(&lam, &flag);
            let whole = grothendieck_determinant(&shape).unwrap();
            let first_row = (1..=lam[0]).fold(Polynomial::one(), |acc, j| {
                &acc * &linear_factor(1, j).unwrap()
            });
            let rest_shape = FlaggedPartition::new(
                lam[1..].to_vec(),
                flag[1..].iter().map(|f| f - 1).collect(),
            )
            .unwrap();
            let rest = grothendieck_determinant(&rest_shape).unwrap();
            assert_eq!(whole, &first_row * &star_shift(&rest), "shape {shape}");
        }
    }

    #[test]
    fn operator_trades_a_box_for_a_flag_step() {
        // When the first row is strictly longer than the second and its
        // flag strictly lower, the divided difference at the first flag
        // moves the shape one step: the first row loses a box and its flag
        // rises by one.  Single-row shapes qualify unconditionally.
        for (lam, flag) in [
            (vec![2u32, 1], vec![1u32, 2]),
            (vec![3, 1], vec![2, 3]),
            (vec![2], vec![1]),
            (vec![1], vec![3]),
            (vec![3, 2, 1], vec![1, 2, 3]),
        ] {
            let shape = fp(&lam, &flag);
            let whole = grothendieck_determinant(&shape).unwrap();
            let moved = divided_difference(&whole, flag[0]).unwrap();
            let mut lam2 = lam.clone();
            lam2[0] -= 1;
            let mut flag2 = flag.clone();
            flag2[0] += 1;
            if lam2[0] == 0 {
                lam2.clear();
                flag2.clear();
            }
            let target = fp(&lam2, &flag2);
            assert_eq!(
                moved,
                grothendieck_determinant(&target).unwrap(),
                "shape {shape} -> {target}"
            );
        }
    }
}
