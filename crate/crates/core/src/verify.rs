//! Verification sweeps: every closed form against its brute-force oracle,
//! every bijection against its inverse, every generating-function identity
//! against the closed form it proves.
//!
//! Cells are visited in increasing order and a sweep stops at its first
//! failing cell, so the reported counterexample is the smallest one.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::compositions::Composition;
use crate::error::Result;
use crate::exact_math::{self, BigCount, Formulas};
use crate::guard::Guards;
use crate::kary_trees::{self, KaryTree, SubsetPair};
use crate::plane_trees::{self, MarkedPlaneTree, PlaneTree};
use crate::series;

/// Which family of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    PlaneCounts,
    KaryCounts,
    SequenceIdentity,
    Fine,
    Lagrange,
    Bijections,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::PlaneCounts,
        Suite::KaryCounts,
        Suite::SequenceIdentity,
        Suite::Fine,
        Suite::Lagrange,
        Suite::Bijections,
    ];
}

/// Ranges for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest edge count for plane-tree sweeps.
    pub max_n: u64,
    /// Largest arity for k-ary sweeps.
    pub max_k: usize,
    /// Largest edge count for k-ary sweeps; cells with `k * n` above the
    /// guard are skipped.
    pub kary_max_n: u64,
    /// Explicit `(k, n)` cells for k-ary sweeps, replacing the rectangle
    /// given by `max_k` and `kary_max_n`.
    pub kary_cells: Option<Vec<(usize, u64)>>,
    /// Largest edge count for the marked-tree bijection sweep.
    pub marked_max_n: u64,
    /// `(max n, max l)` for the Catalan power coefficients.
    pub catalan_power: (usize, u32),
    /// `(max k, max n, max l)` for the k-ary power coefficients.
    pub kary_power: (u32, usize, u32),
    /// Truncation order for the defining-equation residuals.
    pub series_order: usize,
    pub guards: Guards,
    pub formulas: Formulas,
}

impl VerifyConfig {
    pub fn new(max_n: u64, max_k: usize) -> VerifyConfig {
        let n = max_n as usize;
        VerifyConfig {
            max_n,
            max_k,
            kary_max_n: max_n,
            kary_cells: None,
            marked_max_n: max_n,
            catalan_power: (n, max_n.max(1) as u32),
            kary_power: (max_k as u32, n, max_n.max(1) as u32),
            series_order: n,
            guards: Guards::from_env(),
            formulas: Formulas::STANDARD,
        }
    }

    pub fn with_guards(mut self, guards: Guards) -> Self {
        self.guards = guards;
        self
    }

    pub fn with_formulas(mut self, formulas: Formulas) -> Self {
        self.formulas = formulas;
        self
    }

    fn plane_max(&self) -> u64 {
        self.max_n.min(self.guards.plane_edges)
    }

    pub fn with_kary_cells(mut self, cells: Vec<(usize, u64)>) -> Self {
        self.kary_cells = Some(cells);
        self
    }

    /// `(k, n)` cells for k-ary sweeps within the guard.
    fn kary_grid(&self) -> Vec<(usize, u64)> {
        let rectangle = || {
            (1..=self.max_k).flat_map(|k| (1..=self.kary_max_n).map(move |n| (k, n))).collect()
        };
        let cells: Vec<(usize, u64)> = self.kary_cells.clone().unwrap_or_else(rectangle);
        cells.into_iter().filter(|&(k, n)| self.guards.check_kary(k, n).is_ok()).collect()
    }

    fn kary_range(&self) -> String {
        match &self.kary_cells {
            Some(cells) => {
                let listed: Vec<String> = cells.iter().map(|(k, n)| format!("({k},{n})")).collect();
                format!("(k,n) in {{{}}}", listed.join(" "))
            }
            None => format!("1<=k<={}, 1<=n<={}", self.max_k, self.kary_max_n),
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig::new(8, 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub range: String,
    pub cells: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  [{}; {} cells]", self.name, self.range, self.cells)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n      counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// Collects cells for one check until the first failure.
struct Sweep {
    name: String,
    range: String,
    cells: u64,
    failure: Option<String>,
}

impl Sweep {
    fn new(name: &str, range: String) -> Sweep {
        Sweep {
            name: name.to_string(),
            range,
            cells: 0,
            failure: None,
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Records one cell; returns false once the sweep has failed.
    fn cell(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        if self.failed() {
            return false;
        }
        self.cells += 1;
        if !ok {
            self.failure = Some(describe());
        }
        !self.failed()
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, cell: impl fmt::Display, got: &T, want: &T) -> bool {
        self.cell(got == want, || format!("{cell}: got {got}, expected {want}"))
    }

    fn result<T>(&mut self, cell: impl fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cell(false, || format!("{cell}: {e}"));
                None
            }
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            range: self.range,
            cells: self.cells,
            passed: self.failure.is_none(),
            counterexample: self.failure,
        }
    }
}

pub fn verify(suites: &[Suite], config: &VerifyConfig) -> Report {
    let mut checks = Vec::new();
    for suite in suites {
        match suite {
            Suite::PlaneCounts => {
                checks.push(plane_outdegree_counts(config));
                checks.push(plane_degree_counts(config));
                checks.push(plane_sums(config));
            }
            Suite::KaryCounts => {
                checks.push(kary_outdegree_counts(config));
                checks.push(kary_tree_counts(config));
                checks.push(kary_sums(config));
            }
            Suite::SequenceIdentity => checks.push(sequence_identity(config)),
            Suite::Fine => checks.push(fine_relation(config)),
            Suite::Lagrange => {
                checks.push(defining_equations(config));
                checks.push(catalan_powers(config));
                checks.push(kary_powers(config));
                checks.push(kary_printed_power_form(config));
                checks.push(plane_derivative(config));
                checks.push(kary_derivative(config));
            }
            Suite::Bijections => {
                checks.push(delta_round_trip(config));
                checks.push(bar_delta_bijection(config));
                checks.push(completion_round_trip(config));
                checks.push(subset_pair_bijection(config));
            }
        }
    }
    Report { checks }
}

pub fn verify_all(config: &VerifyConfig) -> Report {
    verify(&Suite::ALL, config)
}

pub fn plane_outdegree_counts(config: &VerifyConfig) -> CheckOutcome {
    let max = config.plane_max();
    let mut sweep = Sweep::new(
        "plane trees: outdegree-i vertices = C(2n-i-1, n-1)",
        format!("1<=n<={max}, 0<=i<=n"),
    );
    'outer: for n in 1..=max {
        let Some((outdeg, _)) = sweep.result(format!("n={n}"), plane_trees::histogram_totals(n, &config.guards))
        else {
            break;
        };
        for i in 0..=n {
            let brute = BigCount::from(outdeg.get(&i).copied().unwrap_or(0));
            let formula = config.formulas.count_plane_outdegree(n, i);
            if !sweep.equal(format!("n={n}, i={i}"), &formula, &brute) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn plane_degree_counts(config: &VerifyConfig) -> CheckOutcome {
    let max = config.plane_max();
    let mut sweep = Sweep::new(
        "plane trees: degree-i vertices = 2 C(2n-i-1, n-1)",
        format!("1<=n<={max}, 1<=i<=n+1"),
    );
    'outer: for n in 1..=max {
        let Some((_, deg)) = sweep.result(format!("n={n}"), plane_trees::histogram_totals(n, &config.guards))
        else {
            break;
        };
        for i in 1..=n + 1 {
            let brute = BigCount::from(deg.get(&i).copied().unwrap_or(0));
            let formula = config.formulas.count_plane_degree(n, i);
            if !sweep.equal(format!("n={n}, i={i}"), &formula, &brute) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn plane_sums(config: &VerifyConfig) -> CheckOutcome {
    let max = config.plane_max();
    let mut sweep = Sweep::new(
        "plane trees: row sum (n+1) c_n and edge sum n c_n; c_n = tree count",
        format!("1<=n<={max}"),
    );
    for n in 1..=max {
        let f = &config.formulas;
        let row: BigCount = (0..=n).map(|i| f.count_plane_outdegree(n, i)).sum();
        let edges: BigCount = (0..=n).map(|i| f.count_plane_outdegree(n, i) * i).sum();
        let Some(trees) = sweep.result(format!("n={n}"), plane_trees::enumerate_plane_trees_with_guard(n, &config.guards))
        else {
            break;
        };
        let count = BigCount::from(trees.count());
        let Some(catalan) = sweep.result(format!("n={n}"), f.catalan(n)) else {
            break;
        };
        if !(sweep.equal(format!("catalan n={n}"), &catalan, &count)
            && sweep.equal(format!("row sum n={n}"), &row, &(&count * (n + 1)))
            && sweep.equal(format!("edge sum n={n}"), &edges, &(&count * n)))
        {
            break;
        }
    }
    sweep.finish()
}

pub fn kary_outdegree_counts(config: &VerifyConfig) -> CheckOutcome {
    let grid = config.kary_grid();
    let mut sweep = Sweep::new(
        "k-ary trees: outdegree-i vertices = C(k,i) C(kn, n-i)",
        format!("{}, kn<={}, 0<=i<=min(k,n)", config.kary_range(), config.guards.kary_product),
    );
    'outer: for (k, n) in grid {
        let Some(trees) = sweep.result(format!("k={k}, n={n}"), kary_trees::enumerate_kary_trees_with_guard(k, n, &config.guards))
        else {
            break;
        };
        let mut hist = vec![0u64; k + 1];
        for t in trees {
            for v in t.preorder() {
                hist[v.outdegree()] += 1;
            }
        }
        for i in 0..=(k as u64).min(n) {
            let brute = BigCount::from(hist[i as usize]);
            let formula = config.formulas.count_kary_outdegree(n, k as u64, i);
            if !sweep.equal(format!("k={k}, n={n}, i={i}"), &formula, &brute) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn kary_tree_counts(config: &VerifyConfig) -> CheckOutcome {
    let grid = config.kary_grid();
    let mut sweep = Sweep::new(
        "k-ary trees: [z^n]B_k = enumerated count = C(k(n+1), n)/(n+1)",
        format!("{}, kn<={}", config.kary_range(), config.guards.kary_product),
    );
    for (k, n) in grid {
        let b = series::kary_series(k as u32, n as usize);
        let Some(coeff) = sweep.result(format!("k={k}, n={n}"), b.count(n as usize)) else {
            break;
        };
        let Some(trees) = sweep.result(format!("k={k}, n={n}"), kary_trees::enumerate_kary_trees_with_guard(k, n, &config.guards))
        else {
            break;
        };
        let count = BigCount::from(trees.count());
        let closed = config.formulas.binomial((k as u64 * (n + 1)) as i64, n as i64) / (n + 1);
        if !(sweep.equal(format!("series k={k}, n={n}"), &coeff, &count)
            && sweep.equal(format!("closed form k={k}, n={n}"), &closed, &count))
        {
            break;
        }
    }
    sweep.finish()
}

pub fn kary_sums(config: &VerifyConfig) -> CheckOutcome {
    let mut sweep = Sweep::new(
        "k-ary trees: row sum C(kn+k, n) = (n+1) b_k(n), edge sum n b_k(n)",
        config.kary_range(),
    );
    let cells = config.kary_cells.clone().unwrap_or_else(|| {
        (1..=config.max_k).flat_map(|k| (1..=config.kary_max_n).map(move |n| (k, n))).collect()
    });
    for (k, n) in cells {
        let k = k as u64;
        let b = series::kary_series(k as u32, n as usize);
        let f = &config.formulas;
        let row: BigCount = (0..=k).map(|i| f.count_kary_outdegree(n, k, i)).sum();
        let edges: BigCount = (0..=k).map(|i| f.count_kary_outdegree(n, k, i) * i).sum();
        let trees = b.count(n as usize).expect("series has order n");
        let vandermonde = exact_math::binomial((k * n + k) as i64, n as i64);
        if !(sweep.equal(format!("row sum k={k}, n={n}"), &row, &vandermonde)
            && sweep.equal(format!("row sum k={k}, n={n}"), &row, &(&trees * (n + 1)))
            && sweep.equal(format!("edge sum k={k}, n={n}"), &edges, &(&trees * n)))
        {
            break;
        }
    }
    sweep.finish()
}

pub fn sequence_identity(config: &VerifyConfig) -> CheckOutcome {
    let max = config.max_n.min(exact_math::SEQUENCE_IDENTITY_GUARD);
    let mut sweep = Sweep::new(
        "outdegree sequences: sum r_i/(n+1) multinomial = C(2n-i-1, n-1)",
        format!("1<=n<={max}, 0<=i<=n"),
    );
    'outer: for n in 1..=max {
        for i in 0..=n {
            let cell = format!("n={n}, i={i}");
            let Some((lhs, rhs)) = sweep.result(&cell, config.formulas.verify_outdegree_sequence_identity(n, i))
            else {
                break 'outer;
            };
            if !sweep.equal(&cell, &rhs, &lhs) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn fine_relation(config: &VerifyConfig) -> CheckOutcome {
    let max = config.plane_max();
    let mut sweep = Sweep::new(
        "odd outdegree: brute force = sum of odd i = (2 C(2n-1,n) + F_{n-1})/3; F_n = trees with even root outdegree",
        format!("1<=n<={max}"),
    );
    for n in 0..max {
        let cell = format!("F_{n}");
        let Some(trees) = sweep.result(&cell, plane_trees::enumerate_plane_trees_with_guard(n, &config.guards)) else {
            break;
        };
        let even_root = BigCount::from(trees.filter(|t| t.outdegree() % 2 == 0).count());
        if !sweep.equal(&cell, &config.formulas.fine_number(n), &even_root) {
            break;
        }
    }
    for n in 1..=max {
        if sweep.failed() {
            break;
        }
        let cell = format!("n={n}");
        let Some((outdeg, _)) = sweep.result(&cell, plane_trees::histogram_totals(n, &config.guards)) else {
            break;
        };
        let brute = BigCount::from(outdeg.iter().filter(|(d, _)| *d % 2 == 1).map(|(_, c)| c).sum::<u64>());
        let Some(formula) = sweep.result(&cell, config.formulas.count_odd_outdegree(n)) else {
            break;
        };
        let fine_side = config.formulas.binomial(2 * n as i64 - 1, n as i64) * 2u32
            + config.formulas.fine_number(n - 1);
        if !(sweep.equal(&cell, &formula, &brute) && sweep.equal(&cell, &fine_side, &(&brute * 3u32))) {
            break;
        }
    }
    sweep.finish()
}

pub fn defining_equations(config: &VerifyConfig) -> CheckOutcome {
    let order = config.series_order;
    let max_k = config.kary_power.0.max(config.max_k as u32);
    let mut sweep = Sweep::new(
        "series: C = 1 + zC^2, (1 - zC) C = 1, B_k = (1 + zB_k)^k",
        format!("order {order}, 1<=k<={max_k}"),
    );
    let one = series::TruncatedSeries::one(order);
    let c = series::catalan_series(order);
    let residual = &(&c - &one) - &(&c * &c).shift(1);
    sweep.cell(residual.is_zero(), || "Catalan residual nonzero".into());
    sweep.cell((&(&one - &c.shift(1)) * &c) == one, || "(1 - zC) C != 1".into());
    for n in 0..=order {
        let Some(closed) = sweep.result(format!("c_{n}"), config.formulas.catalan(n as u64)) else {
            break;
        };
        let coeff = c.count(n).expect("in range");
        if !sweep.equal(format!("c_{n}"), &coeff, &closed) {
            break;
        }
    }
    for k in 1..=max_k {
        let b = series::kary_series(k, order);
        let residual = &b - &(&one + &b.shift(1)).pow(k);
        if !sweep.cell(residual.is_zero(), || format!("B_{k} residual nonzero")) {
            break;
        }
    }
    sweep.finish()
}

pub fn catalan_powers(config: &VerifyConfig) -> CheckOutcome {
    let (max_n, max_l) = config.catalan_power;
    let mut sweep = Sweep::new(
        "[z^n] C^l = l/(2n+l) C(2n+l, n)",
        format!("0<=n<={max_n}, 1<=l<={max_l}"),
    );
    let c = series::catalan_series(max_n);
    'outer: for l in 1..=max_l {
        let power = c.pow(l);
        for n in 0..=max_n {
            let cell = format!("n={n}, l={l}");
            let lhs = power.count(n).expect("in range");
            let Some(rhs) = sweep.result(&cell, series::catalan_power_closed_form(n as u64, l as u64)) else {
                break 'outer;
            };
            if !sweep.equal(&cell, &lhs, &rhs) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn kary_powers(config: &VerifyConfig) -> CheckOutcome {
    let (max_k, max_n, max_l) = config.kary_power;
    let mut sweep = Sweep::new(
        "[z^n] B_k^l = l/(n+l) C(k(n+l), n)",
        format!("1<=k<={max_k}, 0<=n<={max_n}, 1<=l<={max_l}"),
    );
    'outer: for k in 1..=max_k {
        let b = series::kary_series(k, max_n);
        for l in 1..=max_l {
            let power = b.pow(l);
            for n in 0..=max_n {
                let cell = format!("k={k}, n={n}, l={l}");
                let lhs = power.count(n).expect("in range");
                let Some(rhs) = sweep.result(&cell, series::kary_power_closed_form(k as u64, n as u64, l as u64))
                else {
                    break 'outer;
                };
                if !sweep.equal(&cell, &lhs, &rhs) {
                    break 'outer;
                }
            }
        }
        // the shape used when extracting the outdegree counts
        for n in 1..=max_n {
            let cell = format!("k={k}, n={n} (all splits)");
            if sweep.result(&cell, series::verify_kary_power_coeff(k, n, 1)).is_none() {
                break 'outer;
            }
            sweep.cell(true, String::new);
        }
    }
    sweep.finish()
}

/// The uncorrected `l/n C(kn, n)` must fail at `(k, n, l) = (2, 2, 1)`.
pub fn kary_printed_power_form(_config: &VerifyConfig) -> CheckOutcome {
    let mut sweep = Sweep::new(
        "[z^n] B_k^l = l/n C(kn, n) is refuted",
        "k=2, n=2, l=1".into(),
    );
    sweep.cell(!series::kary_printed_form_holds(2, 2, 1), || {
        "l/n C(kn, n) unexpectedly matched [z^2] B_2".into()
    });
    sweep.finish()
}

pub fn plane_derivative(config: &VerifyConfig) -> CheckOutcome {
    let order = config.series_order;
    let mut sweep = Sweep::new(
        "sum_m z^(m+i) C^(2m+i) = sum_n C(2n-i-1, n-1) z^n",
        format!("0<=i<={order}, 1<=n<={order}"),
    );
    'outer: for i in 0..=order {
        let s = series::plane_derivative_series(i, order);
        let extended = series::plane_derivative_series_terms(i, order, 1);
        if !sweep.cell(s == extended, || format!("i={i}: an extra term changed the truncation")) {
            break;
        }
        for n in 1..=order {
            let coeff = s.count(n).expect("in range");
            let closed = config.formulas.count_plane_outdegree(n as u64, i as u64);
            if !sweep.equal(format!("i={i}, n={n}"), &coeff, &closed) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn kary_derivative(config: &VerifyConfig) -> CheckOutcome {
    let (max_k, max_n, _) = config.kary_power;
    let max_k = max_k.max(config.max_k as u32);
    let mut sweep = Sweep::new(
        "C(k,i) sum_r (k-1)^r (z^(i+r) B^(i+r) + z^(i+r+1) B^(i+r+1)) = sum_n C(k,i) C(kn,n-i) z^n",
        format!("1<=k<={max_k}, 0<=i<=k, 1<=n<={max_n}"),
    );
    'outer: for k in 1..=max_k {
        for i in 0..=k as usize {
            let s = series::kary_derivative_series(k, i, max_n);
            let extended = series::kary_derivative_series_terms(k, i, max_n, 1);
            if !sweep.cell(s == extended, || format!("k={k}, i={i}: an extra term changed the truncation")) {
                break 'outer;
            }
            for n in 1..=max_n {
                let coeff = s.count(n).expect("in range");
                let closed = config.formulas.count_kary_outdegree(n as u64, k as u64, i as u64);
                if !sweep.equal(format!("k={k}, i={i}, n={n}"), &coeff, &closed) {
                    break 'outer;
                }
            }
        }
    }
    sweep.finish()
}

pub fn delta_round_trip(config: &VerifyConfig) -> CheckOutcome {
    let max = config.plane_max();
    let mut sweep = Sweep::new(
        "plane tree <-> unit composition (preorder outdegrees)",
        format!("0<=n<={max}"),
    );
    'outer: for n in 0..=max {
        let Some(trees) = sweep.result(format!("n={n}"), plane_trees::enumerate_plane_trees_with_guard(n, &config.guards))
        else {
            break;
        };
        for t in trees {
            let word = t.preorder_outdegrees();
            let ok = word.is_unit()
                && word.len() as u64 == n + 1
                && PlaneTree::from_outdegrees(&word).as_ref() == Ok(&t)
                && t.to_string().parse::<PlaneTree>().as_ref() == Ok(&t);
            if !sweep.cell(ok, || format!("tree {t:?} with word {word}")) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

/// All compositions of `total` into `parts` nonnegative parts.
fn compositions(total: u64, parts: usize) -> BTreeSet<Composition> {
    fn go(left: u64, parts: usize, cur: &mut Vec<u64>, out: &mut BTreeSet<Composition>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.insert(Composition::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            go(left - a, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    if parts == 0 {
        if total == 0 {
            out.insert(Composition::empty());
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

pub fn bar_delta_bijection(config: &VerifyConfig) -> CheckOutcome {
    let max = config.marked_max_n.min(config.guards.plane_edges);
    let mut sweep = Sweep::new(
        "marked plane trees with mark outdegree i <-> n-part compositions of n-i",
        format!("1<=n<={max}, every mark"),
    );
    'outer: for n in 1..=max {
        let mut images: Vec<BTreeSet<Composition>> = vec![BTreeSet::new(); n as usize + 1];
        let Some(trees) = sweep.result(format!("n={n}"), plane_trees::enumerate_plane_trees_with_guard(n, &config.guards))
        else {
            break;
        };
        for t in trees {
            for mark in 1..=t.vertex_count() {
                let m = MarkedPlaneTree::new(t.clone(), mark).expect("mark in range");
                let i = m.marked_outdegree();
                let word = m.bar_delta_encode();
                let back = MarkedPlaneTree::bar_delta_decode(&word, i);
                let ok = back.as_ref() == Ok(&m) && images[i as usize].insert(word.clone());
                if !sweep.cell(ok, || format!("{m} -> {word} -> {back:?}")) {
                    break 'outer;
                }
            }
        }
        for (i, image) in images.into_iter().enumerate() {
            let expected = compositions(n - i as u64, n as usize);
            if !sweep.cell(image == expected, || {
                format!("n={n}, i={i}: image has {} words, expected {}", image.len(), expected.len())
            }) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn completion_round_trip(config: &VerifyConfig) -> CheckOutcome {
    let grid = config.kary_grid();
    let mut sweep = Sweep::new(
        "k-ary tree <-> complete k-ary plane tree",
        format!("{}, kn<={}", config.kary_range(), config.guards.kary_product),
    );
    'outer: for (k, n) in grid {
        let Some(trees) = sweep.result(format!("k={k}, n={n}"), kary_trees::enumerate_kary_trees_with_guard(k, n, &config.guards))
        else {
            break;
        };
        for t in trees {
            let (completed, map) = t.complete();
            let back = KaryTree::uncomplete(&completed, k);
            let internal = completed.preorder().filter(|v| v.outdegree() == k).count();
            let ok = back.as_ref().map(|(b, m)| b == &t && m == &map).unwrap_or(false)
                && internal as u64 == n + 1
                && completed.edge_count() as u64 == k as u64 * (n + 1)
                && t.preorder().zip(&map).all(|(v, &label)| {
                    completed.vertex(label).map(PlaneTree::outdegree) == Some(k)
                        && v.outdegree() <= k
                })
                && t.to_string().parse::<KaryTree>().as_ref() == Ok(&t);
            if !sweep.cell(ok, || format!("k={k}: {t}")) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}

pub fn subset_pair_bijection(config: &VerifyConfig) -> CheckOutcome {
    let grid = config.kary_grid();
    let mut sweep = Sweep::new(
        "marked k-ary trees <-> compositions <-> (X, Y) subset pairs",
        format!("{}, kn<={}, 0<=i<=min(k,n)", config.kary_range(), config.guards.kary_product),
    );
    'outer: for (k, n) in grid {
        for i in 0..=(k as u64).min(n) {
            let cell = format!("k={k}, n={n}, i={i}");
            let Some(marked) = sweep.result(&cell, kary_trees::marked_kary_trees(k, n, i, &config.guards)) else {
                break 'outer;
            };
            let mut images = BTreeSet::new();
            for m in marked {
                let alpha = m.to_composition();
                let ok = kary_trees::check_conditions(&alpha, k, n, Some(i)).is_ok()
                    && kary_trees::composition_to_kary_pair(&alpha, k, n, i).as_ref() == Ok(&m);
                if !sweep.cell(ok, || format!("{cell}: {m} -> {alpha}")) {
                    break 'outer;
                }
                let Some(pair) = sweep.result(&cell, SubsetPair::from_composition(&alpha, k, n)) else {
                    break 'outer;
                };
                let back = pair.to_composition();
                let ok = back.as_ref() == Ok(&alpha) && images.insert(pair.clone());
                if !sweep.cell(ok, || format!("{cell}: {alpha} -> {pair} -> {back:?}")) {
                    break 'outer;
                }
            }
            let all: BTreeSet<SubsetPair> = SubsetPair::all(k, n, i).into_iter().collect();
            let expected = config.formulas.count_kary_outdegree(n, k as u64, i);
            let ok = images == all && BigCount::from(all.len()) == expected;
            if !sweep.cell(ok, || {
                format!("{cell}: {} images, {} subset pairs, formula {expected}", images.len(), all.len())
            }) {
                break 'outer;
            }
        }
    }
    sweep.finish()
}
