//! Permutations and their flagged shapes: vexillary detection, rank
//! function, diagram, essential set, flagging sets, and two more routes to
//! the polynomials — the divided-difference recursion from the longest
//! element, and the direct word construction for a flagged shape.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::poly::{apply_word, divided_difference, linear_factor, Polynomial};
use crate::tableaux::FlaggedPartition;
use crate::{Error, Result};

/// Largest symmetric group the permutation routines accept; the recursion
/// table grows factorially and larger groups are out of scope.
pub const MAX_N: usize = 6;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    one_line: Vec<u32>,
}

impl Permutation {
    /// Validates one-line notation: the values must be a bijection of
    /// `{1..n}` with `1 <= n <=` [`MAX_N`].
    pub fn new(one_line: Vec<u32>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a permutation needs at least one value".into(),
            ));
        }
        if n > MAX_N {
            return Err(Error::InvalidArgument(format!(
                "permutations of more than {MAX_N} values are not supported"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidArgument(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[v as usize] {
                return Err(Error::InvalidArgument(format!("value {v} repeats")));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((1..=n as u32).collect())
    }

    /// The longest element `n, n-1, ..., 1`.
    pub fn longest(n: usize) -> Result<Self> {
        Permutation::new((1..=n as u32).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.one_line[i as usize - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { one_line: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Inversion count.
    pub fn length(&self) -> u32 {
        let w = &self.one_line;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[j] < w[i] {
                    l += 1;
                }
            }
        }
        l
    }

    /// The code `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Vec<u32> {
        let w = &self.one_line;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count() as u32)
            .collect()
    }

    /// Right multiplication `w s_i`: swaps positions `i`, `i+1` (1-based,
    /// `i < n`).
    pub fn times_adjacent(&self, i: u32) -> Result<Permutation> {
        let i = i as usize;
        if i == 0 || i >= self.n() {
            return Err(Error::InvalidArgument(format!(
                "adjacent transposition index {i} is outside 1..{}",
                self.n()
            )));
        }
        let mut w = self.one_line.clone();
        w.swap(i - 1, i);
        Ok(Permutation { one_line: w })
    }

    /// Smallest `i` with `w(i) < w(i+1)`, i.e. the smallest `i` for which
    /// `w s_i` is longer; `None` exactly for the longest element.
    fn first_ascent(&self) -> Option<u32> {
        self.one_line
            .windows(2)
            .position(|p| p[0] < p[1])
            .map(|i| i as u32 + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .one_line
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        f.write_str(&s)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses one-line notation as comma-separated values, e.g. `2,1,4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad permutation value `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(vals)
    }
}

/// Positions `(a,b,c,d)` witnessing a 2143 pattern (`w(b) < w(a) < w(d) <
/// w(c)`), if any; `None` means the permutation is vexillary.
pub fn pattern_2143(w: &Permutation) -> Option<[u32; 4]> {
    let v = w.one_line();
    let n = v.len();
    for a in 0..n {
        for b in a + 1..n {
            if v[b] >= v[a] {
                continue;
            }
            for c in b + 1..n {
                if v[c] <= v[a] {
                    continue;
                }
                for d in c + 1..n {
                    if v[a] < v[d] && v[d] < v[c] {
                        return Some([a as u32 + 1, b as u32 + 1, c as u32 + 1, d as u32 + 1]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_vexillary(w: &Permutation) -> bool {
    pattern_2143(w).is_none()
}

/// `r_w(p,q) = #{i <= p : w(i) <= q}` for `1 <= p,q <= n`.
pub fn rank_function(w: &Permutation, p: u32, q: u32) -> Result<u32> {
    let n = w.n() as u32;
    if p == 0 || p > n || q == 0 || q > n {
        return Err(Error::InvalidArgument(format!(
            "rank position ({p},{q}) is outside the {n}x{n} grid"
        )));
    }
    Ok(rank_unchecked(w, p, q))
}

fn rank_unchecked(w: &Permutation, p: u32, q: u32) -> u32 {
    (1..=p).filter(|&i| w.apply(i) <= q).count() as u32
}

/// The diagram `D(w) = {(p,q) : w(p) > q and w^{-1}(q) > p}`; its size is
/// the length of `w`.
pub fn diagram(w: &Permutation) -> BTreeSet<(u32, u32)> {
    let n = w.n() as u32;
    let inv = w.inverse();
    let mut d = BTreeSet::new();
    for p in 1..=n {
        for q in 1..=n {
            if w.apply(p) > q && inv.apply(q) > p {
                d.insert((p, q));
            }
        }
    }
    d
}

/// The south-east corners of the diagram: boxes `(p,q)` in `D(w)` with
/// neither `(p+1,q)` nor `(p,q+1)` in `D(w)`.
pub fn essential_set(w: &Permutation) -> BTreeSet<(u32, u32)> {
    let d = diagram(w);
    d.iter()
        .copied()
        .filter(|&(p, q)| !d.contains(&(p + 1, q)) && !d.contains(&(p, q + 1)))
        .collect()
}

/// A chain of grid boxes attached to a vexillary permutation: `p_i` weakly
/// increasing, `q_i` weakly decreasing, `p_i - r_w(p_i,q_i) = i`, and
/// containing the essential set.  It determines the flagged shape via
/// `lambda_i = q_i - p_i + i`, `f_i = p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlaggingSet {
    pairs: Vec<(u32, u32)>,
}

impl FlaggingSet {
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The flagged shape this chain encodes.
    pub fn flagged_partition(&self) -> Result<FlaggedPartition> {
        let lambda = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, &(p, q))| q + k as u32 + 1 - p)
            .collect();
        let flag = self.pairs.iter().map(|&(p, _)| p).collect();
        FlaggedPartition::new(lambda, flag)
    }
}

struct FlaggingSearch {
    r: usize,
    forced: HashMap<usize, (u32, u32)>,
    candidates: HashMap<usize, Vec<(u32, u32)>>,
}

fn flagging_search(w: &Permutation) -> Result<FlaggingSearch> {
    let n = w.n() as u32;
    let r = w.code().iter().filter(|&&c| c > 0).count();
    let mut forced = HashMap::new();
    for &(p, q) in &essential_set(w) {
        let i = (p - rank_unchecked(w, p, q)) as usize;
        if i == 0 || i > r {
            return Err(Error::InternalConsistency(format!(
                "essential box ({p},{q}) has index {i} outside 1..={r}"
            )));
        }
        if forced.insert(i, (p, q)).is_some() {
            return Err(Error::InternalConsistency(format!(
                "two essential boxes share the index {i}"
            )));
        }
    }
    let mut candidates: HashMap<usize, Vec<(u32, u32)>> = HashMap::new();
    for p in 1..=n {
        for q in 1..=n {
            let i = p.wrapping_sub(rank_unchecked(w, p, q)) as usize;
            if (1..=r).contains(&i) {
                candidates.entry(i).or_default().push((p, q));
            }
        }
    }
    for opts in candidates.values_mut() {
        opts.sort_by_key(|&(p, q)| (p, std::cmp::Reverse(q)));
    }
    Ok(FlaggingSearch {
        r,
        forced,
        candidates,
    })
}

/// Extends the partial chain `out` over indices `i..=r`; `all` collects
/// every completion, otherwise the search stops at the first (which is the
/// lexicographically smallest by `(p_i, -q_i)`).
fn flagging_dfs(
    search: &FlaggingSearch,
    out: &mut Vec<(u32, u32)>,
    found: &mut Vec<Vec<(u32, u32)>>,
    all: bool,
) -> bool {
    let i = out.len() + 1;
    if i > search.r {
        found.push(out.clone());
        return !all;
    }
    let forced_opt = search.forced.get(&i).map(|&pq| vec![pq]);
    let opts = forced_opt
        .as_ref()
        .or_else(|| search.candidates.get(&i))
        .map(Vec::as_slice)
        .unwrap_or(&[]);
    for &(p, q) in opts {
        let lam_i = q as i64 - p as i64 + i as i64;
        if lam_i < 1 {
            continue;
        }
        if let Some(&(p0, q0)) = out.last() {
            let lam_prev = q0 as i64 - p0 as i64 + i as i64 - 1;
            if p < p0 || q > q0 || lam_i > lam_prev {
                continue;
            }
        }
        out.push((p, q));
        if flagging_dfs(search, out, found, all) {
            return true;
        }
        out.pop();
    }
    false
}

/// The canonical flagging set of a vexillary, non-identity permutation:
/// essential boxes pinned at their index `p - r_w(p,q)`, gaps completed by
/// the lexicographically smallest admissible `(p_i, -q_i)` chain.
pub fn flagging_set(w: &Permutation) -> Result<FlaggingSet> {
    if let Some(pos) = pattern_2143(w) {
        return Err(Error::Domain(format!(
            "permutation {w} is not vexillary: 2143 pattern at positions {pos:?}"
        )));
    }
    if w.is_identity() {
        return Err(Error::InvalidArgument(
            "the identity permutation has the empty shape and no flagging set".into(),
        ));
    }
    let search = flagging_search(w)?;
    let mut out = Vec::new();
    let mut found = Vec::new();
    if !flagging_dfs(&search, &mut out, &mut found, false) {
        return Err(Error::InternalConsistency(format!(
            "no flagging set completes the essential set of {w}"
        )));
    }
    Ok(FlaggingSet {
        pairs: found.into_iter().next().unwrap(),
    })
}

/// Every valid flagging set of `w`, in lexicographic order; the flagged
/// shapes they induce all carry the same polynomial.
pub fn all_flagging_sets(w: &Permutation) -> Result<Vec<FlaggingSet>> {
    if let Some(pos) = pattern_2143(w) {
        return Err(Error::Domain(format!(
            "permutation {w} is not vexillary: 2143 pattern at positions {pos:?}"
        )));
    }
    if w.is_identity() {
        return Err(Error::InvalidArgument(
            "the identity permutation has the empty shape and no flagging set".into(),
        ));
    }
    let search = flagging_search(w)?;
    let mut out = Vec::new();
    let mut found = Vec::new();
    flagging_dfs(&search, &mut out, &mut found, true);
    if found.is_empty() {
        return Err(Error::InternalConsistency(format!(
            "no flagging set completes the essential set of {w}"
        )));
    }
    Ok(found
        .into_iter()
        .map(|pairs| FlaggingSet { pairs })
        .collect())
}

/// The flagged shape of a vexillary permutation; the identity gives the
/// empty shape.  The shape's parts must agree with the nonzero code
/// entries sorted decreasingly, which is asserted.
pub fn flagged_partition_of(w: &Permutation) -> Result<FlaggedPartition> {
    if let Some(pos) = pattern_2143(w) {
        return Err(Error::Domain(format!(
            "permutation {w} is not vexillary: 2143 pattern at positions {pos:?}"
        )));
    }
    if w.is_identity() {
        return Ok(FlaggedPartition::empty());
    }
    let fp = flagging_set(w)?.flagged_partition()?;
    let mut sorted_code: Vec<u32> = w.code().into_iter().filter(|&c| c > 0).collect();
    sorted_code.sort_unstable_by(|a, b| b.cmp(a));
    if fp.lambda() != sorted_code {
        return Err(Error::InternalConsistency(format!(
            "shape {fp} disagrees with the sorted code of {w}"
        )));
    }
    Ok(fp)
}

/// The polynomial of the longest element: the product of `x_i (+) b_j`
/// over `i + j <= n`.
pub fn grothendieck_longest(n: usize) -> Result<Polynomial> {
    let mut out = Polynomial::one();
    for i in 1..n as u32 {
        for j in 1..=(n as u32 - i) {
            out = &out * &linear_factor(i, j)?;
        }
    }
    Ok(out)
}

type Table = HashMap<Vec<u32>, Polynomial>;

fn permutations_by_length(n: usize) -> Vec<Vec<Permutation>> {
    let max_len = n * (n - 1) / 2;
    let mut levels: Vec<Vec<Permutation>> = vec![Vec::new(); max_len + 1];
    let mut vals: Vec<u32> = (1..=n as u32).collect();
    loop {
        let w = Permutation {
            one_line: vals.clone(),
        };
        levels[w.length() as usize].push(w);
        // next permutation in lexicographic order
        let Some(i) = vals.windows(2).rposition(|p| p[0] < p[1]) else {
            break;
        };
        let j = vals.iter().rposition(|&v| v > vals[i]).unwrap();
        vals.swap(i, j);
        vals[i + 1..].reverse();
    }
    levels
}

/// Builds the full table for `S_n` from the longest element downwards, one
/// length level at a time; each entry is the image of a one-step-longer
/// entry under a divided difference.  Within a level the entries only read
/// longer-length results, so they are computed in parallel when more than
/// one CPU is available.
fn build_table(n: usize) -> Result<Table> {
    let mut table = Table::new();
    let levels = permutations_by_length(n);
    let max_len = levels.len() - 1;
    table.insert(Permutation::longest(n)?.one_line.clone(), grothendieck_longest(n)?);

    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    for l in (0..max_len).rev() {
        let level = &levels[l];
        let step = |w: &Permutation| -> Result<(Vec<u32>, Polynomial)> {
            let i = w
                .first_ascent()
                .ok_or_else(|| Error::InternalConsistency("no ascent below the top".into()))?;
            let longer = w.times_adjacent(i)?;
            let g = table.get(&longer.one_line).ok_or_else(|| {
                Error::InternalConsistency(format!("missing table entry for {longer}"))
            })?;
            Ok((w.one_line.clone(), divided_difference(g, i)?))
        };
        let computed: Vec<(Vec<u32>, Polynomial)> = if workers > 1 && level.len() > 1 {
            let chunk = level.len().div_ceil(workers);
            std::thread::scope(|scope| {
                let handles: Vec<_> = level
                    .chunks(chunk)
                    .map(|part| scope.spawn(|| part.iter().map(step).collect::<Result<Vec<_>>>()))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("table worker panicked"))
                    .collect::<Result<Vec<_>>>()
            })?
            .into_iter()
            .flatten()
            .collect()
        } else {
            level.iter().map(step).collect::<Result<Vec<_>>>()?
        };
        table.extend(computed);
    }
    Ok(table)
}

fn tables() -> &'static Mutex<HashMap<usize, Arc<Table>>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<Table>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn table_for(n: usize) -> Result<Arc<Table>> {
    let mut guard = tables().lock().expect("table cache poisoned");
    if let Some(t) = guard.get(&n) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(build_table(n)?);
    guard.insert(n, Arc::clone(&t));
    Ok(t)
}

/// The polynomial of an arbitrary permutation, from the memoized recursion
/// table of its symmetric group.
pub fn grothendieck_perm(w: &Permutation) -> Result<Polynomial> {
    let table = table_for(w.n())?;
    table
        .get(w.one_line())
        .cloned()
        .ok_or_else(|| Error::InternalConsistency(format!("table misses {w}")))
}

/// The direct word construction for a flagged shape: apply, for rows `i =
/// r` down to `1`, the operator word `s_i ... s_{f_i - 1}` (empty when
/// `f_i - 1 < i`), to the product over rows of `x_i (+) b_1 .. b_(lam_i +
/// f_i - i)`.
///
/// Shapes with `f_i < i` for some `i >= 2` admit no fillings, so their
/// polynomial is zero by definition; the word construction's recursion
/// leaves the space of flagged shapes there (a peeled flag entry would hit
/// zero), so the zero polynomial is returned directly.  A zero first flag
/// is rejected: this route requires `f_1 >= 1`.
pub fn grothendieck_divdiff(fp: &FlaggedPartition) -> Result<Polynomial> {
    if fp.is_empty() {
        return Ok(Polynomial::one());
    }
    if fp.is_zero_case() {
        return Err(Error::Domain(
            "the word construction needs a positive first flag".into(),
        ));
    }
    if fp
        .flag()
        .iter()
        .enumerate()
        .any(|(k, &f)| (f as usize) < k + 1)
    {
        return Ok(Polynomial::zero());
    }
    let r = fp.rows();
    let mut prod = Polynomial::one();
    for i in 1..=r {
        let a_i = fp.lambda()[i - 1] + fp.flag()[i - 1] - i as u32;
        for j in 1..=a_i {
            prod = &prod * &linear_factor(i as u32, j)?;
        }
    }
    let mut word = Vec::new();
    for i in (1..=r as u32).rev() {
        word.extend(i..fp.flag()[i as usize - 1]);
    }
    apply_word(&prod, &word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::grothendieck_tableau;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn validation_and_notation() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![1, 2, 3, 4, 5, 6, 7]).is_err());
        assert_eq!(p("2,1,4,3").to_string(), "2,1,4,3");
        assert!("2,x".parse::<Permutation>().is_err());
        assert_eq!(p("3,1,2").inverse(), p("2,3,1"));
        assert_eq!(p("4,3,2,1").length(), 6);
        assert_eq!(p("2,1,4,3").code(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn vexillary_detection() {
        assert!(!is_vexillary(&p("2,1,4,3")));
        assert_eq!(pattern_2143(&p("2,1,4,3")), Some([1, 2, 3, 4]));
        assert!(is_vexillary(&p("1,2,3,4")));
        assert!(is_vexillary(&p("4,3,2,1")));
        let count = permutations_by_length(4)
            .into_iter()
            .flatten()
            .filter(is_vexillary)
            .count();
        assert_eq!(count, 23);
    }

    #[test]
    fn rank_diagram_essential() {
        let w = p("2,1,4,3");
        assert_eq!(rank_function(&w, 1, 1).unwrap(), 0);
        assert!(rank_function(&w, 0, 1).is_err());
        assert!(rank_function(&w, 1, 5).is_err());
        // identity rank is min(p,q); longest-element rank is max(0, p+q-n)
        let id = Permutation::identity(4).unwrap();
        let w0 = Permutation::longest(4).unwrap();
        for pp in 1..=4 {
            for qq in 1..=4 {
                assert_eq!(rank_function(&id, pp, qq).unwrap(), pp.min(qq));
                assert_eq!(
                    rank_function(&w0, pp, qq).unwrap() as i64,
                    (pp as i64 + qq as i64 - 4).max(0)
                );
            }
        }
        assert!(diagram(&id).is_empty());
        assert_eq!(
            diagram(&p("3,2,1")),
            [(1, 1), (1, 2), (2, 1)].into_iter().collect()
        );
        assert_eq!(
            essential_set(&p("3,2,1")),
            [(1, 2), (2, 1)].into_iter().collect()
        );
        // diagram size is the length, for all of S4 and S5
        for n in [4, 5] {
            for w in permutations_by_length(n).into_iter().flatten() {
                assert_eq!(diagram(&w).len() as u32, w.length());
            }
        }
    }

    #[test]
    fn flagging_sets_and_shapes() {
        let w0 = Permutation::longest(4).unwrap();
        let fs = flagging_set(&w0).unwrap();
        assert_eq!(fs.pairs(), &[(1, 3), (2, 2), (3, 1)]);
        let fp = flagged_partition_of(&w0).unwrap();
        assert_eq!(fp.lambda(), &[3, 2, 1]);
        assert_eq!(fp.flag(), &[1, 2, 3]);

        let fp = flagged_partition_of(&p("2,1,3")).unwrap();
        assert_eq!((fp.lambda(), fp.flag()), (&[1u32][..], &[1u32][..]));

        let fp = flagged_partition_of(&p("1,4,3,2")).unwrap();
        assert_eq!((fp.lambda(), fp.flag()), (&[2u32, 1][..], &[2u32, 3][..]));

        assert!(matches!(
            flagging_set(&p("2,1,4,3")),
            Err(Error::Domain(_))
        ));
        assert!(flagging_set(&Permutation::identity(3).unwrap()).is_err());
        assert!(flagged_partition_of(&Permutation::identity(3).unwrap())
            .unwrap()
            .is_empty());

        // both essential boxes of 1,4,3,2 are index-pinned: a unique set
        assert_eq!(all_flagging_sets(&p("1,4,3,2")).unwrap().len(), 1);

        // every flagging set of a fixed w induces shapes with one polynomial
        let w = p("2,3,1");
        let sets = all_flagging_sets(&w).unwrap();
        assert!(sets.len() > 1);
        let reference = grothendieck_tableau(&flagged_partition_of(&w).unwrap()).unwrap();
        for fs in sets {
            let shape = fs.flagged_partition().unwrap();
            assert_eq!(grothendieck_tableau(&shape).unwrap(), reference);
        }

        // ... and that holds across all of S4's non-identity vexillary w
        for w in permutations_by_length(4).into_iter().flatten() {
            if !is_vexillary(&w) || w.is_identity() {
                continue;
            }
            let reference = grothendieck_tableau(&flagged_partition_of(&w).unwrap()).unwrap();
            for fs in all_flagging_sets(&w).unwrap() {
                let shape = fs.flagged_partition().unwrap();
                assert_eq!(
                    grothendieck_tableau(&shape).unwrap(),
                    reference,
                    "w = {w}, shape {shape}"
                );
            }
        }
    }

    #[test]
    fn recursion_table_small_groups() {
        // longest element of S3: the displayed three-factor product
        let w0 = Permutation::longest(3).unwrap();
        let top = grothendieck_perm(&w0).unwrap();
        let expect = &(&linear_factor(1, 1).unwrap() * &linear_factor(1, 2).unwrap())
            * &linear_factor(2, 1).unwrap();
        assert_eq!(top, expect);
        // identity maps to 1 in S2..S4
        for n in 2..=4 {
            let id = Permutation::identity(n).unwrap();
            assert!(grothendieck_perm(&id).unwrap().is_one());
        }
    }

    #[test]
    fn every_descent_choice_gives_the_same_polynomial() {
        // The recursion picks one ascent per permutation, but any choice of
        // i with length(w s_i) = length(w) + 1 must produce the same
        // polynomial for w.
        for w in permutations_by_length(4).into_iter().flatten() {
            let g = grothendieck_perm(&w).unwrap();
            for i in 1..4u32 {
                let v = w.times_adjacent(i).unwrap();
                if v.length() == w.length() + 1 {
                    let longer = grothendieck_perm(&v).unwrap();
                    assert_eq!(
                        divided_difference(&longer, i).unwrap(),
                        g,
                        "w = {w}, i = {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn permutation_route_matches_tableaux_on_samples() {
        for w in ["2,1,3", "1,4,3,2", "4,3,2,1", "3,1,2", "2,3,1"] {
            let w = p(w);
            let shape = flagged_partition_of(&w).unwrap();
            assert_eq!(
                grothendieck_perm(&w).unwrap(),
                grothendieck_tableau(&shape).unwrap(),
                "w = {w}"
            );
        }
    }

    #[test]
    fn word_construction_examples() {
        // flag 1: no operators, the row product itself
        let fp = FlaggedPartition::new(vec![2], vec![1]).unwrap();
        let expect = &linear_factor(1, 1).unwrap() * &linear_factor(1, 2).unwrap();
        assert_eq!(grothendieck_divdiff(&fp).unwrap(), expect);
        // (1)/(2): one operator, equals the tableau sum
        let fp = FlaggedPartition::new(vec![1], vec![2]).unwrap();
        assert_eq!(
            grothendieck_divdiff(&fp).unwrap(),
            grothendieck_tableau(&fp).unwrap()
        );
        // empty and degenerate shapes
        assert!(grothendieck_divdiff(&FlaggedPartition::empty())
            .unwrap()
            .is_one());
        let degenerate = FlaggedPartition::new(vec![1, 1], vec![1, 1]).unwrap();
        assert!(grothendieck_divdiff(&degenerate).unwrap().is_zero());
        assert!(grothendieck_tableau(&degenerate).unwrap().is_zero());
        let zero_flag = FlaggedPartition::new(vec![2], vec![0]).unwrap();
        assert!(matches!(
            grothendieck_divdiff(&zero_flag),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn word_construction_matches_tableaux_with_nonempty_words() {
        for (lam, flag) in [
            (vec![2u32, 2], vec![2u32, 3]),
            (vec![2, 1], vec![3, 3]),
            (vec![1, 1, 1], vec![2, 3, 4]),
        ] {
            let fp = FlaggedPartition::new(lam, flag).unwrap();
            assert_eq!(
                grothendieck_divdiff(&fp).unwrap(),
                grothendieck_tableau(&fp).unwrap(),
                "shape {fp}"
            );
        }
    }
}
