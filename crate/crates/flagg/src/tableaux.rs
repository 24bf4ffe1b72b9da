//! Flagged partitions and flagged set-valued tableaux.
//!
//! A tableau assigns a nonempty set of positive integers to every box of a
//! Young diagram so that rows weakly increase and columns strictly increase
//! (comparing a cell's maximum against its neighbor's minimum), with row i
//! values bounded by the flag entry f_i.  Summing `beta^(|T| - |shape|)`
//! times the weight of every tableau gives the defining formula for the
//! polynomial G; this module provides that sum, a streaming enumerator,
//! and the single-valued (classical) degeneration used as an independent
//! cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{linear_factor, Monomial, Polynomial};
use crate::{Error, Result};

/// A weakly decreasing positive shape together with a weakly increasing
/// flag of the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlaggedPartition {
    lambda: Vec<u32>,
    flag: Vec<u32>,
}

impl FlaggedPartition {
    /// Validates and wraps a shape/flag pair, naming the violated condition
    /// on failure.  `flag[0] == 0` is accepted and marks the zero
    /// polynomial case.
    pub fn new(lambda: Vec<u32>, flag: Vec<u32>) -> Result<Self> {
        if lambda.len() != flag.len() {
            return Err(Error::InvalidArgument(format!(
                "shape has {} rows but flag has {} entries",
                lambda.len(),
                flag.len()
            )));
        }
        if lambda.iter().any(|&l| l == 0) {
            return Err(Error::InvalidArgument(
                "shape parts must be positive".into(),
            ));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "shape must be weakly decreasing".into(),
            ));
        }
        if flag.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(
                "flag must be weakly increasing".into(),
            ));
        }
        Ok(FlaggedPartition { lambda, flag })
    }

    /// The empty shape (its polynomial is 1).
    pub fn empty() -> Self {
        FlaggedPartition {
            lambda: Vec::new(),
            flag: Vec::new(),
        }
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn flag(&self) -> &[u32] {
        &self.flag
    }

    pub fn rows(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Total number of boxes.
    pub fn size(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// True when the flag starts at zero, which makes the polynomial zero.
    pub fn is_zero_case(&self) -> bool {
        !self.is_empty() && self.flag[0] == 0
    }
}

impl fmt::Display for FlaggedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({})/({})", join(&self.lambda), join(&self.flag))
    }
}

/// A flagged set-valued tableau; cell sets are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedTableau {
    shape: FlaggedPartition,
    cells: Vec<Vec<Vec<u32>>>,
}

impl SetValuedTableau {
    pub fn shape(&self) -> &FlaggedPartition {
        &self.shape
    }

    /// The sorted entries of the box at `row`, `col` (1-based).
    pub fn cell(&self, row: usize, col: usize) -> &[u32] {
        &self.cells[row - 1][col - 1]
    }

    pub fn rows(&self) -> &[Vec<Vec<u32>>] {
        &self.cells
    }

    /// Total number of entries over all boxes.
    pub fn entry_count(&self) -> u32 {
        self.cells
            .iter()
            .flatten()
            .map(|s| s.len() as u32)
            .sum()
    }
}

impl fmt::Display for SetValuedTableau {
    /// One row per diagram row, cells as brace-enclosed comma lists, rows
    /// separated by ` / `, e.g. `{1} {1} {1,2} / {2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        let inner = cell
                            .iter()
                            .map(u32::to_string)
                            .collect::<Vec<_>>()
                            .join(",");
                        format!("{{{inner}}}")
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Replaces a subset of `{..=hi}` by its lexicographic successor (comparing
/// sorted tuples); returns false when the input was the last one.
fn next_subset(s: &mut Vec<u32>, hi: u32) -> bool {
    let &last = s.last().expect("subsets are never empty");
    if last < hi {
        s.push(last + 1);
        true
    } else {
        s.pop();
        match s.last_mut() {
            Some(l) => {
                *l += 1;
                true
            }
            None => false,
        }
    }
}

/// Streaming depth-first enumeration of all flagged set-valued tableaux of
/// a shape, in row-major box order with cell sets visited in lexicographic
/// order.  The full set is never materialized.
pub struct TableauIter {
    shape: FlaggedPartition,
    /// (row, col) per box, 0-based, row-major.
    boxes: Vec<(usize, usize)>,
    /// Index of box (i, j) in `boxes`.
    offsets: Vec<usize>,
    /// One chosen subset per filled box.
    stack: Vec<Vec<u32>>,
    started: bool,
    done: bool,
}

impl TableauIter {
    fn new(shape: FlaggedPartition) -> Self {
        let mut boxes = Vec::new();
        let mut offsets = Vec::with_capacity(shape.rows());
        for (i, &l) in shape.lambda().iter().enumerate() {
            offsets.push(boxes.len());
            for j in 0..l as usize {
                boxes.push((i, j));
            }
        }
        TableauIter {
            shape,
            boxes,
            offsets,
            stack: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Smallest value allowed in box `k` given the boxes already filled.
    fn lower_bound(&self, k: usize) -> u32 {
        let (i, j) = self.boxes[k];
        let mut lo = 1;
        if j > 0 {
            let left = &self.stack[self.offsets[i] + j - 1];
            lo = lo.max(*left.last().unwrap());
        }
        if i > 0 && (j as u32) < self.shape.lambda()[i - 1] {
            let above = &self.stack[self.offsets[i - 1] + j];
            lo = lo.max(*above.last().unwrap() + 1);
        }
        lo
    }

    /// Completes the stack to a full filling, first advancing the deepest
    /// frame when `advance_top` is set; returns false when exhausted.
    fn advance(&mut self, mut advance_top: bool) -> bool {
        loop {
            if advance_top {
                loop {
                    if self.stack.is_empty() {
                        return false;
                    }
                    let (i, _) = self.boxes[self.stack.len() - 1];
                    let hi = self.shape.flag()[i];
                    if next_subset(self.stack.last_mut().unwrap(), hi) {
                        break;
                    }
                    self.stack.pop();
                }
                advance_top = false;
            }
            if self.stack.len() == self.boxes.len() {
                return true;
            }
            let k = self.stack.len();
            let lo = self.lower_bound(k);
            let (i, _) = self.boxes[k];
            if lo <= self.shape.flag()[i] {
                self.stack.push(vec![lo]);
            } else {
                advance_top = true;
            }
        }
    }

    fn current(&self) -> SetValuedTableau {
        let mut cells: Vec<Vec<Vec<u32>>> = self
            .shape
            .lambda()
            .iter()
            .map(|&l| Vec::with_capacity(l as usize))
            .collect();
        for (k, subset) in self.stack.iter().enumerate() {
            let (i, _) = self.boxes[k];
            cells[i].push(subset.clone());
        }
        SetValuedTableau {
            shape: self.shape.clone(),
            cells,
        }
    }
}

impl Iterator for TableauIter {
    type Item = SetValuedTableau;

    fn next(&mut self) -> Option<SetValuedTableau> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.shape.is_zero_case() {
                self.done = true;
                return None;
            }
            if self.boxes.is_empty() {
                self.done = true;
                return Some(self.current());
            }
            if !self.advance(false) {
                self.done = true;
                return None;
            }
            return Some(self.current());
        }
        if !self.advance(true) {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}

/// Streams every tableau of the shape exactly once, deterministically.
pub fn enumerate_tableaux(fp: &FlaggedPartition) -> TableauIter {
    TableauIter::new(fp.clone())
}

/// The weight `prod_e (x_val(e) (+) b_{val(e) - row(e) + col(e)})`; the
/// `beta^(|T| - |shape|)` factor is not included here.
pub fn tableau_weight(t: &SetValuedTableau) -> Result<Polynomial> {
    let mut w = Polynomial::one();
    for (i, row) in t.rows().iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for &v in cell {
                // column strictness forces v > i (0-based), so this cannot
                // underflow and the b-index is always positive
                let b_index = v + j as u32 - i as u32;
                w = &w * &linear_factor(v, b_index)?;
            }
        }
    }
    Ok(w)
}

/// The tableau-side polynomial: the sum of `beta^(|T| - |shape|)` times the
/// weight over all tableaux of the shape.  The empty shape gives 1 and a
/// zero flag start gives 0.
pub fn grothendieck_tableau(fp: &FlaggedPartition) -> Result<Polynomial> {
    if fp.is_zero_case() {
        return Ok(Polynomial::zero());
    }
    let size = fp.size();
    let mut total = Polynomial::zero();
    for t in enumerate_tableaux(fp) {
        let excess = t.entry_count() - size;
        let w = tableau_weight(&t)?;
        total += &w.mul_term(&Monomial::from_parts(excess, [], []), &BigInt::one());
    }
    Ok(total)
}

/// The largest total entry count over all tableaux of the shape; 0 when
/// nothing is enumerated (empty shape or zero flag).
pub fn max_entry_count(fp: &FlaggedPartition) -> u32 {
    enumerate_tableaux(fp)
        .map(|t| t.entry_count())
        .max()
        .unwrap_or(0)
}

/// Independent classical degeneration: enumerates single-valued flagged
/// tableaux (semistandard, row entries bounded by the flag) directly and
/// sums plain x-monomials.  This deliberately shares no code with the
/// set-valued enumerator so it can serve as an oracle for the beta = 0,
/// b = 0 specialization.
pub fn flagged_schur(fp: &FlaggedPartition) -> Polynomial {
    if fp.is_zero_case() {
        return Polynomial::zero();
    }
    if fp.is_empty() {
        return Polynomial::one();
    }
    let lambda = fp.lambda();
    let flag = fp.flag();
    let mut boxes = Vec::new();
    let mut offsets = Vec::with_capacity(lambda.len());
    for (i, &l) in lambda.iter().enumerate() {
        offsets.push(boxes.len());
        for j in 0..l as usize {
            boxes.push((i, j));
        }
    }
    let mut total = Polynomial::zero();
    let mut fill: Vec<u32> = Vec::with_capacity(boxes.len());
    let mut bump = false;
    // Iterative DFS; raising an already-valid value keeps every lower
    // bound satisfied, so only the flag cap matters when bumping.
    loop {
        if bump {
            loop {
                match fill.pop() {
                    None => return total,
                    Some(v) => {
                        let (i, _) = boxes[fill.len()];
                        if v < flag[i] {
                            fill.push(v + 1);
                            break;
                        }
                    }
                }
            }
            bump = false;
        }
        if fill.len() == boxes.len() {
            let mut exps: std::collections::BTreeMap<u32, u32> = Default::default();
            for &v in &fill {
                *exps.entry(v).or_insert(0) += 1;
            }
            total.add_term(Monomial::from_parts(0, exps, []), BigInt::one());
            bump = true;
            continue;
        }
        let k = fill.len();
        let (i, j) = boxes[k];
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(fill[k - 1]);
        }
        if i > 0 && (j as u32) < lambda[i - 1] {
            lo = lo.max(fill[offsets[i - 1] + j] + 1);
        }
        if lo <= flag[i] {
            fill.push(lo);
        } else {
            bump = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{star_shift, substitute, Assignment};

    fn fp(lambda: &[u32], flag: &[u32]) -> FlaggedPartition {
        FlaggedPartition::new(lambda.to_vec(), flag.to_vec()).unwrap()
    }

    #[test]
    fn validation_names_the_violated_condition() {
        assert!(FlaggedPartition::new(vec![3, 1], vec![2, 4]).is_ok());
        let err = FlaggedPartition::new(vec![1, 2], vec![1, 1]).unwrap_err();
        assert!(err.to_string().contains("weakly decreasing"));
        let err = FlaggedPartition::new(vec![2, 1], vec![3, 2]).unwrap_err();
        assert!(err.to_string().contains("weakly increasing"));
        let err = FlaggedPartition::new(vec![2], vec![1, 2]).unwrap_err();
        assert!(err.to_string().contains("rows"));
        let err = FlaggedPartition::new(vec![2, 0], vec![1, 1]).unwrap_err();
        assert!(err.to_string().contains("positive"));
        let zero = FlaggedPartition::new(vec![2], vec![0]).unwrap();
        assert!(zero.is_zero_case());
    }

    #[test]
    fn forced_single_tableau() {
        let all: Vec<_> = enumerate_tableaux(&fp(&[1], &[1])).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_string(), "{1}");
        assert_eq!(
            tableau_weight(&all[0]).unwrap(),
            linear_factor(1, 1).unwrap()
        );
    }

    #[test]
    fn single_box_flag_two_in_lex_order() {
        let all: Vec<String> = enumerate_tableaux(&fp(&[1], &[2]))
            .map(|t| t.to_string())
            .collect();
        assert_eq!(all, ["{1}", "{1,2}", "{2}"]);
    }

    #[test]
    fn empty_shape_and_zero_flag() {
        let empty = FlaggedPartition::empty();
        assert_eq!(enumerate_tableaux(&empty).count(), 1);
        assert_eq!(grothendieck_tableau(&empty).unwrap(), Polynomial::one());
        assert_eq!(max_entry_count(&empty), 0);

        let zero = fp(&[2], &[0]);
        assert_eq!(enumerate_tableaux(&zero).count(), 0);
        assert!(grothendieck_tableau(&zero).unwrap().is_zero());
    }

    #[test]
    fn single_box_flag_two_sum() {
        let g = grothendieck_tableau(&fp(&[1], &[2])).unwrap();
        let f11 = linear_factor(1, 1).unwrap();
        let f22 = linear_factor(2, 2).unwrap();
        let expected = &(&f11 + &f22) + &(&Polynomial::beta() * &(&f11 * &f22));
        assert_eq!(g, expected);
    }

    #[test]
    fn example_counts_and_displayed_tableaux() {
        let wide: Vec<_> = enumerate_tableaux(&fp(&[3, 1], &[2, 4])).collect();
        assert_eq!(wide.len(), 41);
        let narrow: Vec<String> = enumerate_tableaux(&fp(&[3, 1], &[2, 3]))
            .map(|t| t.to_string())
            .collect();
        assert_eq!(narrow.len(), 17);

        let shown = [
            "{1} {1} {1,2} / {2,3}",
            "{1,2} {2} {2} / {3,4}",
            "{1} {1,2} {2} / {2,3}",
            "{2} {2} {2} / {4}",
        ];
        let wide_strs: Vec<String> = wide.iter().map(|t| t.to_string()).collect();
        for s in &shown {
            assert!(wide_strs.contains(&s.to_string()), "missing {s}");
        }
        assert!(narrow.contains(&shown[0].to_string()));
        assert!(!narrow.contains(&shown[1].to_string()));
        assert!(narrow.contains(&shown[2].to_string()));
        assert!(!narrow.contains(&shown[3].to_string()));
    }

    #[test]
    fn displayed_first_weight_is_the_six_factor_product() {
        let wide: Vec<_> = enumerate_tableaux(&fp(&[3, 1], &[2, 4])).collect();
        let first = wide
            .iter()
            .find(|t| t.to_string() == "{1} {1} {1,2} / {2,3}")
            .unwrap();
        assert_eq!(first.entry_count(), 6);
        let lf = |i, j| linear_factor(i, j).unwrap();
        let expected = [lf(1, 1), lf(1, 2), lf(1, 3), lf(2, 4), lf(2, 1), lf(3, 2)]
            .iter()
            .fold(Polynomial::one(), |acc, f| &acc * f);
        assert_eq!(tableau_weight(first).unwrap(), expected);
    }

    #[test]
    fn max_entry_count_example() {
        assert_eq!(max_entry_count(&fp(&[2, 2], &[2, 3])), 6);
        assert_eq!(max_entry_count(&fp(&[1], &[1])), 1);
        assert_eq!(max_entry_count(&fp(&[1], &[2])), 2);
    }

    #[test]
    fn beta_zero_b_zero_degenerates_to_flagged_schur() {
        for (lam, flag) in [
            (vec![1u32], vec![2u32]),
            (vec![2, 1], vec![1, 2]),
            (vec![2, 1], vec![2, 3]),
            (vec![3, 1], vec![2, 4]),
        ] {
            let shape = fp(&lam, &flag);
            let g = grothendieck_tableau(&shape).unwrap();
            let specialized = substitute(
                &g,
                &Assignment::default().set_beta(0).set_all_b(0),
            );
            assert_eq!(specialized, flagged_schur(&shape), "shape {shape}");
        }
    }

    #[test]
    fn first_row_peels_off_when_the_flag_starts_at_one() {
        // A first flag of 1 forces every first-row entry to be {1}: the sum
        // factors into the product over the first row's boxes times the
        // remaining shape's sum with x-indices shifted up and the remaining
        // flags lowered by one.
        for (lam, flag) in [
            (vec![2u32, 1], vec![1u32, 2]),
            (vec![3, 1], vec![1, 3]),
            (vec![2, 2], vec![1, 1]),
            (vec![2, 2, 1], vec![1, 2, 3]),
            (vec![2], vec![1]),
        ] {
            let shape = fp(&lam, &flag);
            let whole = grothendieck_tableau(&shape).unwrap();
            let first_row = (1..=lam[0]).fold(Polynomial::one(), |acc, j| {
                &acc * &linear_factor(1, j).unwrap()
            });
            let rest_shape = FlaggedPartition::new(
                lam[1..].to_vec(),
                flag[1..].iter().map(|f| f - 1).collect(),
            )
            .unwrap();
            let rest = grothendieck_tableau(&rest_shape).unwrap();
            assert_eq!(whole, &first_row * &star_shift(&rest), "shape {shape}");
        }
    }

    #[test]
    fn variable_indices_stay_inside_the_flag_bounds() {
        // Row i entries are at most f_i, so x-indices are bounded by the
        // last flag and b-indices by the widest diagonal reach f_i + l_i - i.
        for (lam, flag) in [
            (vec![3u32, 1], vec![2u32, 4]),
            (vec![2, 1], vec![2, 3]),
            (vec![2, 2], vec![2, 3]),
            (vec![1], vec![3]),
        ] {
            let shape = fp(&lam, &flag);
            let g = grothendieck_tableau(&shape).unwrap();
            let x_bound = *flag.last().unwrap();
            let b_bound = lam
                .iter()
                .zip(&flag)
                .enumerate()
                .map(|(k, (l, f))| f + l - (k as u32 + 1))
                .max()
                .unwrap();
            for m in g.terms().keys() {
                assert!(
                    m.x_exps().keys().all(|&i| i <= x_bound),
                    "x past {x_bound} in {shape}"
                );
                assert!(
                    m.b_exps().keys().all(|&j| j <= b_bound),
                    "b past {b_bound} in {shape}"
                );
            }
        }
    }

    #[test]
    fn beta_zero_keeps_only_single_valued_tableaux() {
        // Tableaux with more entries than boxes carry a positive power of
        // beta, so setting beta to 0 leaves exactly the classical
        // (single-valued) flagged tableau sum, with the b-variables intact.
        for (lam, flag) in [(vec![2u32, 1], vec![2u32, 3]), (vec![3, 1], vec![2, 4])] {
            let shape = fp(&lam, &flag);
            let beta0 = Assignment::default().set_beta(0);
            let g = substitute(&grothendieck_tableau(&shape).unwrap(), &beta0);
            let classical = enumerate_tableaux(&shape)
                .filter(|t| t.entry_count() == shape.size())
                .map(|t| substitute(&tableau_weight(&t).unwrap(), &beta0))
                .fold(Polynomial::zero(), |acc, w| &acc + &w);
            assert_eq!(g, classical, "shape {shape}");
        }
    }

    #[test]
    fn homogeneity_of_the_tableau_sum() {
        for (lam, flag) in [(vec![2u32, 1], vec![2u32, 3]), (vec![3, 1], vec![2, 4])] {
            let shape = fp(&lam, &flag);
            let g = grothendieck_tableau(&shape).unwrap();
            assert_eq!(
                g.homogeneous_graded_degree(),
                Some(i64::from(shape.size()))
            );
        }
    }
}
