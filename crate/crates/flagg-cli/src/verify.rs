//! The `verify` command: named suites of exact identities with pass/fail
//! counts and deterministic ordering.

use crate::{CmdResult, Failure, Outcome, Suite, VerifyArgs};
use flagg::determinant::grothendieck_determinant;
use flagg::perm::{
    flagged_partition_of, grothendieck_divdiff, grothendieck_perm, is_vexillary, Permutation,
};
use flagg::poly::{
    divided_difference, substitute, swap_x, Assignment, Monomial, Polynomial,
};
use flagg::tableaux::{flagged_schur, grothendieck_tableau, FlaggedPartition};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const SEED: u64 = 0xF1A6;
const SAMPLES: usize = 20;

struct Counter {
    name: &'static str,
    pass: usize,
    fail: usize,
}

struct SuiteReport {
    counters: Vec<Counter>,
    started: Instant,
    budget: Option<Duration>,
    timed_out: bool,
}

impl SuiteReport {
    fn new(budget: Option<Duration>) -> Self {
        SuiteReport {
            counters: Vec::new(),
            started: Instant::now(),
            budget,
            timed_out: false,
        }
    }

    /// Records one instance; on the first failure of a counter the
    /// counterexample is printed immediately.
    fn record(&mut self, name: &'static str, ok: bool, instance: impl Fn() -> String) {
        let counter = match self.counters.iter_mut().find(|c| c.name == name) {
            Some(c) => c,
            None => {
                self.counters.push(Counter { name, pass: 0, fail: 0 });
                self.counters.last_mut().unwrap()
            }
        };
        if ok {
            counter.pass += 1;
        } else {
            if counter.fail == 0 {
                println!("  counterexample ({name}): {}", instance());
            }
            counter.fail += 1;
        }
    }

    /// True once the time budget is exhausted; suites stop iterating then.
    fn over_budget(&mut self) -> bool {
        if let Some(limit) = self.budget {
            if self.started.elapsed() > limit {
                self.timed_out = true;
                return true;
            }
        }
        false
    }

    fn finish(self) -> CmdResult {
        let mut all_pass = !self.timed_out;
        for c in &self.counters {
            let total = c.pass + c.fail;
            println!("  {}: {}/{} pass", c.name, c.pass, total);
            if c.fail > 0 {
                all_pass = false;
            }
        }
        if self.timed_out {
            println!("  time budget exceeded after {:.2?}", self.started.elapsed());
        }
        if all_pass {
            println!("result: PASS");
            Ok(Outcome::Success)
        } else {
            println!("result: FAIL");
            Ok(Outcome::Mismatch)
        }
    }
}

/// Every flagged partition with at most `max_rows` rows, parts at most
/// `max_part` and flags at most `max_flag`, the empty shape included.
fn grid(max_rows: u32, max_part: u32, max_flag: u32) -> Vec<FlaggedPartition> {
    let mut shapes = vec![FlaggedPartition::empty()];
    let mut lambdas: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = (1..=max_part).map(|p| vec![p]).collect();
    while let Some(cur) = stack.pop() {
        lambdas.push(cur.clone());
        if (cur.len() as u32) < max_rows {
            let hi = *cur.last().unwrap();
            for next in 1..=hi {
                let mut ext = cur.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
    }
    lambdas.sort();
    for lam in &lambdas {
        let r = lam.len();
        let mut flags: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..r {
            let mut grown = Vec::new();
            for f in &flags {
                let lo = f.last().copied().unwrap_or(1);
                for v in lo..=max_flag {
                    let mut ext = f.clone();
                    ext.push(v);
                    grown.push(ext);
                }
            }
            flags = grown;
        }
        for f in flags {
            shapes.push(FlaggedPartition::new(lam.clone(), f).unwrap());
        }
    }
    shapes
}

/// Random sparse polynomial in x_1..x_4, b_1, b_2, at most six terms of
/// xb-degree at most 4 (same distribution as the library's test battery).
fn random_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::zero();
    let terms = rng.gen_range(1..=6);
    for _ in 0..terms {
        let beta_exp = rng.gen_range(0..=2);
        let mut degree_left = 4u32;
        let mut xs = Vec::new();
        let mut bs = Vec::new();
        for i in 1..=4u32 {
            let e = rng.gen_range(0..=degree_left.min(2));
            degree_left -= e;
            if e > 0 {
                xs.push((i, e));
            }
        }
        for j in 1..=2u32 {
            let e = rng.gen_range(0..=degree_left.min(2));
            degree_left -= e;
            if e > 0 {
                bs.push((j, e));
            }
        }
        let coef = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        p.add_term(Monomial::from_parts(beta_exp, xs, bs), BigInt::from(coef));
    }
    p
}

fn beta_times(p: &Polynomial) -> Polynomial {
    &Polynomial::beta() * p
}

fn neg(p: &Polynomial) -> Polynomial {
    &Polynomial::constant(-1) * p
}

fn operators(report: &mut SuiteReport) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for sample in 0..SAMPLES {
        if report.over_budget() {
            break;
        }
        let f = random_poly(&mut rng);
        let g = random_poly(&mut rng);
        let i = rng.gen_range(1..=3u32);
        let dd = |p: &Polynomial, k: u32| divided_difference(p, k).unwrap();

        let sf = swap_x(&f, i)?;
        let leibniz = dd(&(&f * &g), i)
            == &(&dd(&f, i) * &g) + &(&(&sf * &dd(&g, i)) + &beta_times(&(&sf * &g)));
        report.record("leibniz rule", leibniz, || format!("sample {sample}, i={i}"));

        let sym = &f + &sf;
        report.record(
            "symmetric kill",
            dd(&sym, i) == neg(&beta_times(&sym)),
            || format!("sample {sample}, i={i}"),
        );
        report.record(
            "symmetric factor",
            dd(&(&sym * &g), i) == &sym * &dd(&g, i),
            || format!("sample {sample}, i={i}"),
        );

        let once = dd(&f, i);
        report.record(
            "idempotency up to -beta",
            dd(&once, i) == neg(&beta_times(&once)),
            || format!("sample {sample}, i={i}"),
        );

        let j = rng.gen_range(1..=2u32);
        report.record(
            "braid relation",
            dd(&dd(&dd(&f, j), j + 1), j) == dd(&dd(&dd(&f, j + 1), j), j + 1),
            || format!("sample {sample}, j={j}"),
        );

        let (a, b) = [(1u32, 3u32), (1, 4), (2, 4)][rng.gen_range(0..3usize)];
        report.record(
            "commutation",
            dd(&dd(&f, a), b) == dd(&dd(&f, b), a),
            || format!("sample {sample}, pair ({a},{b})"),
        );
    }
    Ok(())
}

fn main_suite(report: &mut SuiteReport, shapes: &[FlaggedPartition]) -> Result<(), Failure> {
    for shape in shapes {
        if report.over_budget() {
            break;
        }
        let tab = grothendieck_tableau(shape)?;
        let det = grothendieck_determinant(shape)?;
        report.record("determinant matches tableaux", tab == det, || {
            shape.to_string()
        });
        report.record(
            "graded homogeneity",
            tab.is_zero() || tab.homogeneous_graded_degree() == Some(i64::from(shape.size())),
            || shape.to_string(),
        );
    }
    Ok(())
}

fn divdiff_suite(report: &mut SuiteReport, shapes: &[FlaggedPartition]) -> Result<(), Failure> {
    for shape in shapes {
        if report.over_budget() {
            break;
        }
        let tab = grothendieck_tableau(shape)?;
        let dd = if shape.is_zero_case() {
            Polynomial::zero()
        } else {
            grothendieck_divdiff(shape)?
        };
        report.record("word construction matches tableaux", tab == dd, || {
            shape.to_string()
        });
    }
    Ok(())
}

fn degenerations_suite(report: &mut SuiteReport, shapes: &[FlaggedPartition]) -> Result<(), Failure> {
    let kill = Assignment::default().set_beta(0).set_all_b(0);
    for shape in shapes {
        if report.over_budget() {
            break;
        }
        let reduced = substitute(&grothendieck_tableau(shape)?, &kill);
        report.record(
            "beta=0, b=0 gives the flagged Schur polynomial",
            reduced == flagged_schur(shape),
            || shape.to_string(),
        );
    }
    Ok(())
}

fn all_permutations(n: u32) -> Vec<Permutation> {
    let mut vals: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(vals.clone()).unwrap());
        let Some(i) = vals.windows(2).rposition(|p| p[0] < p[1]) else {
            return out;
        };
        let j = vals.iter().rposition(|&v| v > vals[i]).unwrap();
        vals.swap(i, j);
        vals[i + 1..].reverse();
    }
}

fn vexillary_suite(report: &mut SuiteReport, n: u32) -> Result<(), Failure> {
    if n < 2 || n as usize > flagg::perm::MAX_N {
        return Err(Failure::invalid(format!(
            "--n must be between 2 and {}",
            flagg::perm::MAX_N
        )));
    }
    for w in all_permutations(n).into_iter().filter(is_vexillary) {
        if report.over_budget() {
            break;
        }
        let shape = flagged_partition_of(&w)?;
        report.record(
            "permutation route matches tableaux",
            grothendieck_perm(&w)? == grothendieck_tableau(&shape)?,
            || format!("w = {w}"),
        );
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> CmdResult {
    let mut report = SuiteReport::new(args.time_budget.map(Duration::from_secs));
    match args.suite {
        Suite::Operators => {
            println!("suite operators ({SAMPLES} samples, seed {SEED:#x})");
            operators(&mut report)?;
        }
        Suite::Main | Suite::Divdiff | Suite::Degenerations => {
            let shapes = grid(args.max_rows, args.max_part, args.max_flag);
            let name = match args.suite {
                Suite::Main => "main",
                Suite::Divdiff => "divdiff",
                _ => "degenerations",
            };
            println!("suite {name} ({} shapes)", shapes.len());
            match args.suite {
                Suite::Main => main_suite(&mut report, &shapes)?,
                Suite::Divdiff => divdiff_suite(&mut report, &shapes)?,
                _ => degenerations_suite(&mut report, &shapes)?,
            }
        }
        Suite::Vexillary => {
            println!("suite vexillary (S{})", args.n);
            vexillary_suite(&mut report, args.n)?;
        }
    }
    report.finish()
}
