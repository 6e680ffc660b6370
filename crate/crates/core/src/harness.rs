//! Exhaustive sweeps over all free trees up to a given order.
//!
//! Every tree is solved for each requested k, and the selected checks compare
//! the result with the bounds, the family characterizations and the small
//! structural lemmas. Each tree yields one [`SweepRecord`]; any mismatch is
//! stored as a [`Violation`] on that record.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::bounds::{BoundReport, BoundScalar};
use crate::canon::{canonical_code, code_string};
use crate::enumerate::{enumerate_up_to, MAX_ENUMERATION_ORDER};
use crate::error::HarnessError;
use crate::families::{min_iso_set_f, min_iso_set_tk, recognize_char_orderminusleaves, recognize_f, recognize_tk, strip_twin_leaves};
use crate::graph::Tree;
use crate::solver::{
    is_isolating, iota_bruteforce, iota_tree_dp, iota_tree_dp_rooted, normalize_no_deg2_support, normalize_no_leaves,
    IsolationSolution, UNCAPPED_LIMIT,
};

/// Default order up to which the subset search cross-checks the DP.
pub const DEFAULT_BRUTE_FORCE_MAX: usize = 12;
/// Normalizers are exercised up to this order.
pub const NORMALIZER_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Oracle,
    Bounds,
    Regime,
    FEquality,
    TkEquality,
    Corollaries,
    Lemmas,
    Twin,
    Normalizers,
    CoronaChar,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Oracle,
        Check::Bounds,
        Check::Regime,
        Check::FEquality,
        Check::TkEquality,
        Check::Corollaries,
        Check::Lemmas,
        Check::Twin,
        Check::Normalizers,
        Check::CoronaChar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Bounds => "bounds",
            Check::Regime => "regime",
            Check::FEquality => "F-equality",
            Check::TkEquality => "Tk-equality",
            Check::Corollaries => "corollaries",
            Check::Lemmas => "lemmas",
            Check::Twin => "twin",
            Check::Normalizers => "normalizers",
            Check::CoronaChar => "corona-char",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Check {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownCheck(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_checks(list: &str) -> Result<Vec<Check>, HarnessError> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Check::ALL.to_vec());
    }
    let mut checks = list.split(',').map(|s| s.trim().parse()).collect::<Result<Vec<Check>, _>>()?;
    checks.sort();
    checks.dedup();
    Ok(checks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    pub k_list: Vec<usize>,
    pub checks: Vec<Check>,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Seeds the random DP roots used for the root-independence cross-check.
    pub seed: u64,
    /// Largest order cross-checked by subset search (at most 16).
    pub brute_force_max: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: 8,
            k_list: vec![1, 2, 3],
            checks: Check::ALL.to_vec(),
            jobs: None,
            seed: 0,
            brute_force_max: DEFAULT_BRUTE_FORCE_MAX,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.max_n == 0 || self.max_n > MAX_ENUMERATION_ORDER {
            return bad(format!("max_n must lie in 1..={MAX_ENUMERATION_ORDER}"));
        }
        if self.k_list.is_empty() || self.k_list.contains(&0) {
            return bad("k_list must be nonempty with every k >= 1".into());
        }
        if self.brute_force_max > UNCAPPED_LIMIT {
            return bad(format!("brute_force_max must be at most {UNCAPPED_LIMIT}"));
        }
        if self.jobs == Some(0) {
            return bad("jobs must be positive".into());
        }
        Ok(())
    }

    fn enabled(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KRecord {
    pub k: usize,
    pub iota: usize,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<usize>,
    pub bounds: Value,
    /// Families recognized for this k.
    pub families: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub tree_code: String,
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub diam: usize,
    pub edges: Vec<(usize, usize)>,
    pub per_k: Vec<KRecord>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub trees: usize,
    pub trees_per_order: BTreeMap<usize, usize>,
    pub violations: usize,
    pub violations_per_check: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

impl SweepOutcome {
    pub fn is_clean(&self) -> bool {
        self.summary.violations == 0
    }

    /// One JSON object per line, in record order.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), HarnessError> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Runs the configured checks over every free tree of order `1..=max_n`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome, HarnessError> {
    cfg.validate()?;
    let trees = enumerate_up_to(cfg.max_n)?;
    let work = || -> Vec<SweepRecord> {
        trees
            .par_iter()
            .enumerate()
            .map(|(i, t)| check_tree(t, cfg, cfg.seed.wrapping_add(i as u64)))
            .collect()
    };
    let mut records = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };
    records.sort_by(|a, b| a.tree_code.cmp(&b.tree_code));
    let mut summary = SweepSummary { trees: records.len(), ..Default::default() };
    for r in &records {
        *summary.trees_per_order.entry(r.n).or_default() += 1;
        for v in &r.violations {
            summary.violations += 1;
            *summary.violations_per_check.entry(v.check.to_string()).or_default() += 1;
        }
    }
    Ok(SweepOutcome { records, summary })
}

/// Solves and checks a single tree.
pub fn check_tree(t: &Tree, cfg: &SweepConfig, seed: u64) -> SweepRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, l, s) = (t.order(), t.leaf_count(), t.support_count());
    let mut violations = Vec::new();
    let mut per_k = Vec::new();
    for &k in &cfg.k_list {
        let mut flag = |check: Check, detail: String| {
            if cfg.enabled(check) {
                violations.push(Violation { check, k: Some(k), detail });
            }
        };
        let sol = iota_tree_dp(t, k).expect("k >= 1 was validated");
        let iota = sol.size();
        let mut brute_force = None;
        if cfg.enabled(Check::Oracle) {
            let root = rng.gen_range(0..n);
            let other = iota_tree_dp_rooted(t, k, root).expect("valid root").size();
            if other != iota {
                flag(Check::Oracle, format!("DP rooted at 0 gives {iota}, rooted at {root} gives {other}"));
            }
            if !is_isolating(t.graph(), &sol.set, k) {
                flag(Check::Oracle, format!("DP witness {:?} is not k-isolating", sol.set));
            }
            if n <= cfg.brute_force_max {
                let bf = iota_bruteforce(t.graph(), k, None).expect("order within limit").size();
                brute_force = Some(bf);
                if bf != iota {
                    flag(Check::Oracle, format!("DP gives {iota}, subset search gives {bf}"));
                }
            }
        }
        let report: BoundReport = BoundReport::from_parts(t, k, iota);
        for name in report.violations() {
            flag(Check::Bounds, format!("{name} = {} < iota_k = {iota}", report.value(name).map(|v| v.render()).unwrap_or_default()));
        }
        if report.regime_row_holds() == Some(false) {
            flag(Check::Regime, format!("row {} fails", report.regime));
        }
        let mut families = Vec::new();
        let is_k_star = t.is_star() && n == k + 1;
        if k == 1 {
            let f_cert = recognize_f(t);
            if let Some(cert) = &f_cert {
                families.push("F".to_string());
                let root = cert.a[rng.gen_range(0..cert.a.len())];
                match min_iso_set_f(t, cert, root) {
                    Ok(d) if d.size() == iota && is_isolating(t.graph(), &d.set, 1) => {}
                    Ok(d) => flag(Check::FEquality, format!("constructive set {:?} is not a minimum isolating set", d.set)),
                    Err(e) => flag(Check::FEquality, format!("constructive set failed: {e}")),
                }
            }
            let equal = 4 * iota == n + l;
            let member = f_cert.is_some() || n == 2;
            if equal != member {
                flag(Check::FEquality, format!("iota = (n+l)/4 is {equal} but family membership is {member}"));
            }
            lemma_checks(t, iota, f_cert.is_some(), &mut flag);
            if n >= 3 && s >= 2 {
                let equal = 4 * iota + l == n + 2 * s;
                let member = recognize_f(&strip_twin_leaves(t)).is_some();
                if equal != member {
                    flag(Check::Twin, format!("iota = (n-l+2s)/4 is {equal} but the reduced tree in F is {member}"));
                }
            }
            if (3..=NORMALIZER_MAX_ORDER).contains(&n) {
                normalizer_checks(t, &sol, &mut flag);
            }
        } else {
            let tk_cert = recognize_tk(t, k);
            if let Some(cert) = &tk_cert {
                families.push("Tk".to_string());
                match min_iso_set_tk(t, cert) {
                    Ok(d) if d.size() == iota && is_isolating(t.graph(), &d.set, k) => {}
                    Ok(d) => flag(Check::TkEquality, format!("constructive set {:?} is not a minimum k-isolating set", d.set)),
                    Err(e) => flag(Check::TkEquality, format!("constructive set failed: {e}")),
                }
            }
            let equal = (2 * k + 1) * iota == n + l;
            let member = tk_cert.is_some() || is_k_star;
            if equal != member {
                flag(Check::TkEquality, format!("iota_k = (n+l)/(2k+1) is {equal} but membership is {member}"));
            }
            if n >= 3 && t.max_degree() >= k {
                corollary_checks(t, k, iota, is_k_star, &mut flag);
            }
        }
        if n >= 3 {
            let equal = 2 * iota + l == n;
            let cert = recognize_char_orderminusleaves(t.graph(), k);
            if cert.is_some() {
                families.push("corona-char".to_string());
            }
            // With a two-vertex core (a double star) the corona argument needs
            // r >= 2; there equality holds exactly when some vertex has degree k.
            let expected = if n == l + 2 { t.max_degree() >= k } else { cert.is_some() };
            if equal != expected {
                flag(Check::CoronaChar, format!("iota_k = (n-l)/2 is {equal} but recognition gives {}", cert.is_some()));
            }
        }
        per_k.push(KRecord { k, iota, witness: sol.set, brute_force, bounds: report.to_json(), families });
    }
    SweepRecord {
        tree_code: code_string(&canonical_code(t)),
        n,
        l,
        s,
        diam: t.diameter(),
        edges: t.graph().edges(),
        per_k,
        violations,
    }
}

fn lemma_checks(t: &Tree, iota: usize, in_f: bool, flag: &mut impl FnMut(Check, String)) {
    let (n, l) = (t.order(), t.leaf_count());
    let strict = 4 * iota < n + l;
    let diam = t.diameter();
    if (2..=3).contains(&diam) && !(iota == 1 && strict) {
        flag(Check::Lemmas, format!("diameter {diam} but iota = {iota}, strict = {strict}"));
    }
    if n >= 3 && !t.strong_support_set().is_empty() && !strict {
        flag(Check::Lemmas, "strong support vertex without strict inequality".into());
    }
    for (pattern, present) in [("pendant P4 at a degree-2 vertex", pendant_path_pattern(t, 4)), ("pendant P5 at a support vertex", pendant_path_pattern(t, 5))] {
        if present && (!strict || in_f) {
            flag(Check::Lemmas, format!("{pattern} but strict = {strict}, in F = {in_f}"));
        }
    }
}

/// Whether removing some edge `uv` leaves a component on `v`'s side that is a
/// path of order `len` on which `v` is an inner vertex adjacent to an end
/// (for `len = 4` that is any degree-2 vertex, for `len = 5` a support).
pub fn pendant_path_pattern(t: &Tree, len: usize) -> bool {
    let g = t.graph();
    if t.order() <= len {
        return false;
    }
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let mut comp = vec![v];
            let mut i = 0;
            while i < comp.len() && comp.len() <= len {
                let x = comp[i];
                i += 1;
                for &y in g.neighbors(x) {
                    if !(x == v && y == u) && !comp.contains(&y) {
                        comp.push(y);
                    }
                }
            }
            if comp.len() != len {
                continue;
            }
            let deg_in = |x: usize| g.neighbors(x).iter().filter(|y| comp.contains(y)).count();
            let is_path = comp.iter().all(|&x| deg_in(x) <= 2) && comp.iter().filter(|&&x| deg_in(x) == 1).count() == 2;
            let next_to_end = g.neighbors(v).iter().any(|&y| y != u && comp.contains(&y) && deg_in(y) == 1);
            if is_path && deg_in(v) == 2 && next_to_end {
                return true;
            }
        }
    }
    false
}

fn corollary_checks(t: &Tree, k: usize, iota: usize, is_k_star: bool, flag: &mut impl FnMut(Check, String)) {
    let (n, l) = (t.order(), t.leaf_count());
    if n <= 2 * k + 1 && iota != 1 {
        flag(Check::Corollaries, format!("n = {n} <= 2k+1 with max degree >= k but iota_k = {iota}"));
    }
    if n + l < 2 * k + 1 {
        flag(Check::Corollaries, format!("n + l = {} < 2k+1", n + l));
    }
    if (n + l == 2 * k + 1) != is_k_star {
        flag(Check::Corollaries, "n + l = 2k+1 does not match the k-star".into());
    }
    let equal = (2 * k + 1) * iota == n + l;
    if n <= 2 * k + 3 && equal != is_k_star {
        flag(Check::Corollaries, format!("order {n} <= 2k+3: equality is {equal}, k-star is {is_k_star}"));
    }
    if equal && !is_k_star {
        let diam = t.diameter();
        if diam < 5 {
            flag(Check::Corollaries, format!("equality with diameter {diam} < 5"));
        }
        let path = t.diameter_path(true).expect("n >= 3");
        let d1 = t.degree(path.vertices[1]);
        if d1 != k {
            flag(Check::Corollaries, format!("equality but deg(u1) = {d1} on a heaviest diametral path"));
        }
    }
}

fn normalizer_checks(t: &Tree, sol: &IsolationSolution, flag: &mut impl FnMut(Check, String)) {
    let g = t.graph();
    let step1 = match normalize_no_leaves(g, sol) {
        Ok(s) => s,
        Err(e) => return flag(Check::Normalizers, format!("leaf normalization failed: {e}")),
    };
    if step1.size() != sol.size() || !is_isolating(g, &step1.set, 1) || step1.set.iter().any(|&v| t.is_leaf(v)) {
        return flag(Check::Normalizers, format!("leaf normalization produced {:?}", step1.set));
    }
    if t.order() < 5 {
        return;
    }
    let step2 = match normalize_no_deg2_support(t, &step1) {
        Ok(s) => s,
        Err(e) => return flag(Check::Normalizers, format!("support normalization failed: {e}")),
    };
    let deg2_support = |v: usize| t.degree(v) == 2 && t.neighbors(v).iter().any(|&w| t.is_leaf(w));
    if step2.size() != sol.size()
        || !is_isolating(g, &step2.set, 1)
        || step2.set.iter().any(|&v| t.is_leaf(v) || deg2_support(v))
    {
        flag(Check::Normalizers, format!("support normalization produced {:?}", step2.set));
    }
}
