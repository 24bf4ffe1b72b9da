//! Packed fixed-width arithmetic for heavy determinant instances.
//!
//! Instances fitting the limits below are computed on a dense-convolution
//! representation instead of sparse big-integer maps:
//!
//! * x-exponent vectors pack into four 5-bit digits of a `u32`, indexing a
//!   scratch array of 2^20 accumulators;
//! * b-exponent vectors pack into twelve 5-bit fields of a `u64` and group
//!   the terms;
//! * within a group, terms are bucketed by x-degree, so products can prune
//!   whole bucket pairs by the truncation bound;
//! * every polynomial in this pipeline is graded-homogeneous (beta counts
//!   as -1), so the beta exponent of a term is its xb-degree minus the
//!   grade and is never stored.
//!
//! Degree pruning doubles as overflow protection for the packed keys: two
//! keys are only added when the combined xb-degree stays within the bound
//! (at most 31), so no 5-bit field can carry.  Coefficients ride in `i64`;
//! the magnitudes here are bounded far below that (series coefficients
//! are small multiplicities, binomial weights are at most a few hundred,
//! and a scratch cell accumulates fewer than 2^40 such products), and the
//! workspace builds with integer overflow checks on in every profile, so
//! any violation of that analysis panics rather than corrupting results.

use num_bigint::BigInt;

use crate::poly::{Monomial, Polynomial, TruncationOrder};
use crate::tableaux::FlaggedPartition;
use crate::{Error, Result};

const X_BITS: u32 = 5;
const X_FIELDS: u32 = 4;
const B_FIELDS: u32 = 12;
const FIELD_MASK: u32 = 31;
const MAX_BOUND: u32 = 31;
const SCRATCH_SIZE: usize = 1 << (X_BITS * X_FIELDS);

fn unpack_x(key: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..X_FIELDS).filter_map(move |i| {
        let e = (key >> (X_BITS * i)) & FIELD_MASK;
        (e > 0).then_some((i + 1, e))
    })
}

fn unpack_b(key: u64) -> impl Iterator<Item = (u32, u32)> {
    (0..B_FIELDS).filter_map(move |j| {
        let e = ((key >> (X_BITS * j)) as u32) & FIELD_MASK;
        (e > 0).then_some((j + 1, e))
    })
}

fn xdeg(key: u32) -> u32 {
    unpack_x(key).map(|(_, e)| e).sum()
}

/// Terms sharing one packed b-monomial, bucketed by x-degree; bucket `d`
/// holds key-sorted `(packed x-key, coefficient)` pairs of x-degree `d`.
#[derive(Debug, Clone, Default)]
struct BGroup {
    bkey: u64,
    bdeg: u32,
    buckets: Vec<Vec<(u32, i64)>>,
}

impl BGroup {
    fn is_empty(&self) -> bool {
        self.buckets.iter().all(Vec::is_empty)
    }

    fn trim(&mut self) {
        while self.buckets.last().is_some_and(Vec::is_empty) {
            self.buckets.pop();
        }
    }
}

/// A graded-homogeneous packed polynomial: groups sorted by b-key, term
/// beta exponents implicit (`xdeg + bdeg - grade`).
#[derive(Debug, Clone)]
pub(crate) struct Packed {
    grade: i64,
    groups: Vec<BGroup>,
}

impl Packed {
    fn zero(grade: i64) -> Self {
        Packed {
            grade,
            groups: Vec::new(),
        }
    }

    fn one() -> Self {
        Packed {
            grade: 0,
            groups: vec![BGroup {
                bkey: 0,
                bdeg: 0,
                buckets: vec![vec![(0, 1)]],
            }],
        }
    }

    pub(crate) fn to_polynomial(&self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for g in &self.groups {
            for (d, bucket) in g.buckets.iter().enumerate() {
                let total = d as i64 + i64::from(g.bdeg);
                let beta = total - self.grade;
                if !bucket.is_empty() && beta < 0 {
                    return Err(Error::InternalConsistency(
                        "packed term below its grade (negative beta exponent)".into(),
                    ));
                }
                for &(key, c) in bucket {
                    let m = Monomial::from_parts(beta as u32, unpack_x(key), unpack_b(g.bkey));
                    out.add_term(m, BigInt::from(c));
                }
            }
        }
        Ok(out)
    }
}

/// Merges two key-sorted buckets, summing coefficients and dropping zeros.
fn merge_buckets(a: &[(u32, i64)], b: &[(u32, i64)]) -> Vec<(u32, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].0.cmp(&b[ib].0) {
            std::cmp::Ordering::Less => {
                out.push(a[ia]);
                ia += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[ib]);
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a[ia].1 + b[ib].1;
                if c != 0 {
                    out.push((a[ia].0, c));
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    out.extend_from_slice(&a[ia..]);
    out.extend_from_slice(&b[ib..]);
    out
}

fn merge_group_into(target: &mut BGroup, src: &BGroup) {
    if target.buckets.len() < src.buckets.len() {
        target.buckets.resize_with(src.buckets.len(), Vec::new);
    }
    for (d, bucket) in src.buckets.iter().enumerate() {
        if bucket.is_empty() {
            continue;
        }
        target.buckets[d] = merge_buckets(&target.buckets[d], bucket);
    }
    target.trim();
}

/// Adds `scale * src` into `acc` (same grade).
fn add_scaled(acc: &mut Packed, src: &Packed, scale: i64) {
    debug_assert_eq!(acc.grade, src.grade);
    if scale == 0 {
        return;
    }
    for g in &src.groups {
        let scaled = BGroup {
            bkey: g.bkey,
            bdeg: g.bdeg,
            buckets: g
                .buckets
                .iter()
                .map(|b| b.iter().map(|&(k, c)| (k, c * scale)).collect())
                .collect(),
        };
        match acc.groups.binary_search_by_key(&g.bkey, |gg| gg.bkey) {
            Ok(pos) => {
                merge_group_into(&mut acc.groups[pos], &scaled);
                if acc.groups[pos].is_empty() {
                    acc.groups.remove(pos);
                }
            }
            Err(pos) => {
                if !scaled.is_empty() {
                    acc.groups.insert(pos, scaled);
                }
            }
        }
    }
}

/// The coefficient lists `A_0 ..= A_bound` of the windowed product of `p`
/// geometric x-factors and `q` linear b-factors; `A_n` is
/// graded-homogeneous of degree `n`.  All updates are linear merges of
/// sorted buckets.
fn coefficient_lists(p: u32, q: u32, bound: u32) -> Vec<Packed> {
    let n_max = bound as usize;
    let mut a: Vec<Packed> = (0..=n_max).map(|n| Packed::zero(n as i64)).collect();
    a[0] = Packed::one();

    for i in 1..=p {
        let digit = 1u32 << (X_BITS * (i - 1));
        // multiply every coefficient by (1 + beta x_i)
        for an in a.iter_mut() {
            let shifted = xshift(an, digit, bound);
            merge_packed(an, &shifted);
        }
        // then fold in the geometric series: A_n += x_i * A_{n-1}
        for n in 1..=n_max {
            let (head, tail) = a.split_at_mut(n);
            let mut shifted = xshift(&head[n - 1], digit, bound);
            shifted.grade += 1;
            merge_packed(&mut tail[0], &shifted);
        }
    }
    for j in 1..=q {
        // A_n := A_n (1 + beta b_j) + A_{n-1} b_j, descending so the
        // right-hand sides are pre-step values
        for n in (0..=n_max).rev() {
            let mut step = bshift(&a[n], j, bound);
            merge_packed(&mut a[n], &step);
            if n > 0 {
                step = bshift(&a[n - 1], j, bound);
                step.grade += 1;
                merge_packed(&mut a[n], &step);
            }
        }
    }
    a
}

/// `x_(digit position) * p`, dropping terms past the degree bound; key
/// order inside buckets survives adding a constant digit.
fn xshift(p: &Packed, digit: u32, bound: u32) -> Packed {
    let mut groups = Vec::with_capacity(p.groups.len());
    for g in &p.groups {
        if g.bdeg + 1 > bound {
            continue;
        }
        let cap = (bound - g.bdeg - 1) as usize; // max source x-degree
        let take = g.buckets.len().min(cap + 1);
        if take == 0 {
            continue;
        }
        let mut buckets: Vec<Vec<(u32, i64)>> = Vec::with_capacity(take + 1);
        buckets.push(Vec::new());
        for bucket in &g.buckets[..take] {
            buckets.push(bucket.iter().map(|&(k, c)| (k + digit, c)).collect());
        }
        let mut ng = BGroup {
            bkey: g.bkey,
            bdeg: g.bdeg,
            buckets,
        };
        ng.trim();
        if !ng.is_empty() {
            groups.push(ng);
        }
    }
    Packed {
        grade: p.grade,
        groups,
    }
}

/// `b_j * p`, dropping terms past the degree bound; group order survives
/// adding a constant field to every b-key.
fn bshift(p: &Packed, j: u32, bound: u32) -> Packed {
    let field = 1u64 << (X_BITS * (j - 1));
    let mut groups = Vec::with_capacity(p.groups.len());
    for g in &p.groups {
        if g.bdeg + 1 > bound {
            continue;
        }
        let cap = (bound - g.bdeg - 1) as usize;
        let take = g.buckets.len().min(cap + 1);
        if take == 0 {
            continue;
        }
        let mut ng = BGroup {
            bkey: g.bkey + field,
            bdeg: g.bdeg + 1,
            buckets: g.buckets[..take].to_vec(),
        };
        ng.trim();
        if !ng.is_empty() {
            groups.push(ng);
        }
    }
    Packed {
        grade: p.grade,
        groups,
    }
}

/// Merges `src` into `acc` group-by-group (same grade).
fn merge_packed(acc: &mut Packed, src: &Packed) {
    debug_assert_eq!(acc.grade, src.grade);
    let mut out = Vec::with_capacity(acc.groups.len() + src.groups.len());
    let (mut ia, mut ib) = (0, 0);
    let a = std::mem::take(&mut acc.groups);
    while ia < a.len() && ib < src.groups.len() {
        match a[ia].bkey.cmp(&src.groups[ib].bkey) {
            std::cmp::Ordering::Less => {
                out.push(a[ia].clone());
                ia += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(src.groups[ib].clone());
                ib += 1;
            }
            std::cmp::Ordering::Equal => {
                let mut g = a[ia].clone();
                merge_group_into(&mut g, &src.groups[ib]);
                if !g.is_empty() {
                    out.push(g);
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    out.extend_from_slice(&a[ia..]);
    out.extend_from_slice(&src.groups[ib..]);
    acc.groups = out;
}

/// Generalized binomial on machine integers; every magnitude used here is
/// at most a few hundred.
fn binom_i64(n: i64, s: u32) -> i64 {
    let mut c: i64 = 1;
    for t in 0..i64::from(s) {
        c *= n - t;
        c /= t + 1;
    }
    c
}

/// The determinant entry at (i, j) for a row of shape `lam_i`, assembled
/// from the row's coefficient lists by the collapsed single-sum form
/// `sum_n binom(i - j - 1, n - m) beta^(n-m) A_n` with `m = lam_i - i + j`
/// (the beta power is implicit in the grading).
fn entry_packed(lists: &[Packed], lam_i: u32, i: u32, j: u32) -> Packed {
    let m = i64::from(lam_i) - i64::from(i) + i64::from(j);
    let mut acc = Packed::zero(m);
    for (n, a_n) in lists.iter().enumerate() {
        let n = n as i64;
        if n < m.max(0) {
            continue;
        }
        let c = binom_i64(i64::from(i) - i64::from(j) - 1, (n - m) as u32);
        let mut scaled_grade = a_n.clone();
        scaled_grade.grade = m;
        add_scaled(&mut acc, &scaled_grade, c);
    }
    acc
}

/// Reusable dense accumulator for x-convolutions.
struct Scratch {
    vals: Vec<i64>,
    stamp: Vec<u32>,
    epoch: u32,
    touched: Vec<u32>,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            vals: vec![0; SCRATCH_SIZE],
            stamp: vec![0; SCRATCH_SIZE],
            epoch: 0,
            touched: Vec::new(),
        }
    }

    fn begin(&mut self) {
        self.epoch += 1;
        self.touched.clear();
    }

    #[inline]
    fn add(&mut self, idx: u32, v: i64) {
        let i = idx as usize;
        if self.stamp[i] != self.epoch {
            self.stamp[i] = self.epoch;
            self.vals[i] = 0;
            self.touched.push(idx);
        }
        self.vals[i] += v;
    }
}

/// Computes `sum_k sign_k * a_k * b_k` truncated at `bound`.  All addends
/// must share one combined grade.  Pair contributions are grouped by
/// output b-key and accumulated densely per group.
fn mul_sum(pairs: &[(&Packed, &Packed, i64)], bound: u32, scratch: &mut Scratch) -> Packed {
    let grade = pairs
        .first()
        .map(|(a, b, _)| a.grade + b.grade)
        .unwrap_or(0);
    debug_assert!(pairs.iter().all(|(a, b, _)| a.grade + b.grade == grade));

    // group the group-level pair list by output b-key
    use std::collections::HashMap;
    type GroupPairs<'a> = Vec<(&'a BGroup, &'a BGroup, i64)>;
    let mut by_bkey: HashMap<u64, (u32, GroupPairs)> = HashMap::new();
    for &(a, b, sign) in pairs {
        for ga in &a.groups {
            for gb in &b.groups {
                let bdeg = ga.bdeg + gb.bdeg;
                if bdeg > bound {
                    continue;
                }
                by_bkey
                    .entry(ga.bkey + gb.bkey)
                    .or_insert_with(|| (bdeg, Vec::new()))
                    .1
                    .push((ga, gb, sign));
            }
        }
    }

    let mut groups: Vec<BGroup> = Vec::with_capacity(by_bkey.len());
    for (bkey, (bdeg, list)) in by_bkey {
        let cap = (bound - bdeg) as usize;
        scratch.begin();
        for (ga, gb, sign) in list {
            for (da, ba) in ga.buckets.iter().enumerate() {
                if da > cap || ba.is_empty() {
                    continue;
                }
                let db_max = (cap - da).min(gb.buckets.len().saturating_sub(1));
                for bb in &gb.buckets[..=db_max] {
                    for &(ka, ca) in ba {
                        for &(kb, cb) in bb {
                            scratch.add(ka + kb, sign * ca * cb);
                        }
                    }
                }
            }
        }
        scratch.touched.sort_unstable();
        let mut buckets: Vec<Vec<(u32, i64)>> = Vec::new();
        for &idx in &scratch.touched {
            let c = scratch.vals[idx as usize];
            if c == 0 {
                continue;
            }
            let d = xdeg(idx) as usize;
            if buckets.len() <= d {
                buckets.resize_with(d + 1, Vec::new);
            }
            buckets[d].push((idx, c));
        }
        let mut g = BGroup {
            bkey,
            bdeg,
            buckets,
        };
        g.trim();
        if !g.is_empty() {
            groups.push(g);
        }
    }
    groups.sort_unstable_by_key(|g| g.bkey);
    Packed { grade, groups }
}

/// Attempts the packed determinant; `Ok(None)` means the instance does
/// not fit the kernel limits and the caller should use the generic path.
pub(crate) fn determinant_packed(
    fp: &FlaggedPartition,
    trunc: TruncationOrder,
) -> Result<Option<Polynomial>> {
    let r = fp.rows();
    let bound = trunc.bound;
    if r == 0 || r > 3 || bound > MAX_BOUND {
        return Ok(None);
    }
    if fp.flag().iter().any(|&f| f > X_FIELDS) {
        return Ok(None);
    }
    let q_of = |i: usize| -> i64 {
        (i64::from(fp.flag()[i]) + i64::from(fp.lambda()[i]) - (i as i64 + 1)).max(0)
    };
    if (0..r).any(|i| q_of(i) > i64::from(B_FIELDS)) {
        return Ok(None);
    }

    // one coefficient-list set per distinct (flag, family bound) pair
    let mut entries: Vec<Vec<Packed>> = vec![Vec::new(); r];
    let mut cache: Vec<((u32, u32), Vec<Packed>)> = Vec::new();
    for i in 0..r {
        let key = (fp.flag()[i], q_of(i) as u32);
        let lists = match cache.iter().find(|(k, _)| *k == key) {
            Some((_, l)) => l,
            None => {
                let l = coefficient_lists(key.0, key.1, bound);
                cache.push((key, l));
                &cache.last().unwrap().1
            }
        };
        for j in 1..=r {
            entries[i].push(entry_packed(
                lists,
                fp.lambda()[i],
                i as u32 + 1,
                j as u32,
            ));
        }
    }
    drop(cache);

    let mut scratch = Scratch::new();
    let h = &entries;
    let det = match r {
        1 => h[0][0].clone(),
        2 => mul_sum(
            &[(&h[0][0], &h[1][1], 1), (&h[0][1], &h[1][0], -1)],
            bound,
            &mut scratch,
        ),
        3 => {
            let m0 = mul_sum(
                &[(&h[1][1], &h[2][2], 1), (&h[1][2], &h[2][1], -1)],
                bound,
                &mut scratch,
            );
            let m1 = mul_sum(
                &[(&h[1][0], &h[2][2], 1), (&h[1][2], &h[2][0], -1)],
                bound,
                &mut scratch,
            );
            let m2 = mul_sum(
                &[(&h[1][0], &h[2][1], 1), (&h[1][1], &h[2][0], -1)],
                bound,
                &mut scratch,
            );
            mul_sum(
                &[
                    (&h[0][0], &m0, 1),
                    (&h[0][1], &m1, -1),
                    (&h[0][2], &m2, 1),
                ],
                bound,
                &mut scratch,
            )
        }
        _ => unreachable!(),
    };
    det.to_polynomial().map(Some)
}
