//! Closed-form upper bounds on ι_k for trees, the order/leaf regime table,
//! and equality detection.
//!
//! Every formula is generic over [`BoundScalar`]. Exact work uses
//! [`Rational`](crate::Rational); `f64` is available for plotting-style
//! output but never for equality decisions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Num;
use serde::Serialize;
use serde_json::{json, Value};

use crate::graph::Tree;
use crate::solver::iota_tree_dp;

/// Scalar type a bound can be evaluated in.
pub trait BoundScalar: Clone + PartialOrd + Num + fmt::Debug {
    /// True when comparisons are exact, so equality flags are meaningful.
    const EXACT: bool;

    fn from_fraction(num: i64, den: i64) -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_fraction(n as i64, 1)
    }

    /// Text form used in reports.
    fn render(&self) -> String;
}

impl BoundScalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_fraction(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl BoundScalar for f64 {
    const EXACT: bool = false;

    fn from_fraction(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

fn frac<S: BoundScalar>(num: usize, den: usize) -> S {
    S::from_fraction(num as i64, den as i64)
}

fn signed<S: BoundScalar>(num: i64, den: usize) -> S {
    S::from_fraction(num, den as i64)
}

/// (n − ℓ)/2
pub fn order_minus_leaves<S: BoundScalar>(n: usize, l: usize) -> S {
    signed(n as i64 - l as i64, 2)
}

/// (n + ℓ)/4
pub fn order_plus_leaves<S: BoundScalar>(n: usize, l: usize) -> S {
    frac(n + l, 4)
}

/// n/(k + 2)
pub fn caro_trees<S: BoundScalar>(n: usize, k: usize) -> S {
    frac(n, k + 2)
}

/// (n + ℓ)/(2k + 1)
pub fn star_bound<S: BoundScalar>(n: usize, l: usize, k: usize) -> S {
    frac(n + l, 2 * k + 1)
}

/// (n − ℓ + 2s)/4
pub fn support_bound<S: BoundScalar>(n: usize, l: usize, s: usize) -> S {
    signed(n as i64 - l as i64 + 2 * s as i64, 4)
}

/// (n − ℓ + s)/3
pub fn boutrig<S: BoundScalar>(n: usize, l: usize, s: usize) -> S {
    signed(n as i64 - l as i64 + s as i64, 3)
}

/// n/3
pub fn caro_third<S: BoundScalar>(n: usize) -> S {
    frac(n, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    OrderMinusLeaves,
    OrderPlusLeaves,
    CaroTrees,
    StarBound,
    SupportBound,
    Boutrig,
    CaroThird,
}

impl BoundName {
    pub const ALL: [BoundName; 7] = [
        BoundName::OrderMinusLeaves,
        BoundName::OrderPlusLeaves,
        BoundName::CaroTrees,
        BoundName::StarBound,
        BoundName::SupportBound,
        BoundName::Boutrig,
        BoundName::CaroThird,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::OrderMinusLeaves => "order_minus_leaves",
            BoundName::OrderPlusLeaves => "order_plus_leaves",
            BoundName::CaroTrees => "caro_trees",
            BoundName::StarBound => "star_bound",
            BoundName::SupportBound => "support_bound",
            BoundName::Boutrig => "boutrig",
            BoundName::CaroThird => "caro_third",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BoundName::OrderMinusLeaves => "(n-l)/2",
            BoundName::OrderPlusLeaves => "(n+l)/4",
            BoundName::CaroTrees => "n/(k+2)",
            BoundName::StarBound => "(n+l)/(2k+1)",
            BoundName::SupportBound => "(n-l+2s)/4",
            BoundName::Boutrig => "(n-l+s)/3",
            BoundName::CaroThird => "n/3",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundEntry<S> {
    /// `informational` marks a value that is a valid bound but known not to be sharp.
    Value { value: S, informational: bool },
    NotApplicable { reason: String },
}

impl<S: BoundScalar> BoundEntry<S> {
    pub fn value(&self) -> Option<&S> {
        match self {
            BoundEntry::Value { value, .. } => Some(value),
            BoundEntry::NotApplicable { .. } => None,
        }
    }

    fn render(&self) -> String {
        match self {
            BoundEntry::Value { value, .. } => value.render(),
            BoundEntry::NotApplicable { reason } => format!("n/a: {reason}"),
        }
    }
}

/// Which row of the order/leaf regime table an instance falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// k = 1, ℓ < n/3
    BelowThird,
    /// k = 1, ℓ = n/3
    AtThird,
    /// k = 1, ℓ > n/3
    AboveThird,
    /// k ≥ 2, ℓ < (k−1)n/(k+2)
    BelowLower,
    /// k ≥ 2, ℓ = (k−1)n/(k+2)
    AtLower,
    /// k ≥ 2, strictly between the two thresholds
    Between,
    /// k ≥ 2, ℓ = kn/(k+2)
    AtUpper,
    /// k ≥ 2, ℓ > kn/(k+2)
    AboveUpper,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::BelowThird => "l < n/3",
            Regime::AtThird => "l = n/3",
            Regime::AboveThird => "l > n/3",
            Regime::BelowLower => "l < (k-1)n/(k+2)",
            Regime::AtLower => "l = (k-1)n/(k+2)",
            Regime::Between => "(k-1)n/(k+2) < l < kn/(k+2)",
            Regime::AtUpper => "l = kn/(k+2)",
            Regime::AboveUpper => "l > kn/(k+2)",
        }
    }

    /// The bound the table assigns to this row.
    pub fn governing_bound(self) -> BoundName {
        match self {
            Regime::BelowThird | Regime::AtThird => BoundName::OrderPlusLeaves,
            Regime::AboveThird | Regime::AtUpper | Regime::AboveUpper => BoundName::OrderMinusLeaves,
            Regime::BelowLower | Regime::AtLower => BoundName::StarBound,
            Regime::Between => BoundName::CaroTrees,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Places `(n, ℓ, k)` in the regime table. Panics when `k == 0`.
pub fn regime_classify(n: usize, l: usize, k: usize) -> Regime {
    assert!(k >= 1, "k must be positive");
    let (n, l, k) = (n as i64, l as i64, k as i64);
    if k == 1 {
        return match (3 * l).cmp(&n) {
            std::cmp::Ordering::Less => Regime::BelowThird,
            std::cmp::Ordering::Equal => Regime::AtThird,
            std::cmp::Ordering::Greater => Regime::AboveThird,
        };
    }
    let scaled = l * (k + 2);
    let lower = (k - 1) * n;
    let upper = k * n;
    if scaled < lower {
        Regime::BelowLower
    } else if scaled == lower {
        Regime::AtLower
    } else if scaled < upper {
        Regime::Between
    } else if scaled == upper {
        Regime::AtUpper
    } else {
        Regime::AboveUpper
    }
}

/// The identities and strict inequalities between bound expressions that the
/// table states for the row of `(n, ℓ, k)`.
pub fn regime_relations_hold<S: BoundScalar>(n: usize, l: usize, k: usize) -> bool {
    let plus4: S = order_plus_leaves(n, l);
    let minus2: S = order_minus_leaves(n, l);
    let third: S = caro_third(n);
    let caro: S = caro_trees(n, k);
    let star: S = star_bound(n, l, k);
    match regime_classify(n, l, k) {
        Regime::BelowThird => plus4 < third,
        Regime::AtThird => plus4 == minus2 && minus2 == third,
        Regime::AboveThird => minus2 < third,
        Regime::BelowLower => star < caro,
        Regime::AtLower => star == caro,
        Regime::Between => true,
        Regime::AtUpper => minus2 == caro,
        Regime::AboveUpper => minus2 < caro,
    }
}

/// All bound values for one tree and one k, with equality flags.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<S = Ratio<i64>> {
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub k: usize,
    pub bounds: BTreeMap<BoundName, BoundEntry<S>>,
    pub regime: Regime,
    pub iota: usize,
    pub equality: BTreeMap<BoundName, bool>,
}

impl<S: BoundScalar> BoundReport<S> {
    /// Evaluates every bound for `t` against a known `iota = ι_k(t)`.
    pub fn from_parts(t: &Tree, k: usize, iota: usize) -> Self {
        let n = t.order();
        let l = t.leaf_count();
        let s = t.support_count();
        let is_star = t.is_star();
        let is_k_star = is_star && n == k + 1;
        let na = |reason: &str| BoundEntry::NotApplicable { reason: reason.to_string() };
        let val = |value: S| BoundEntry::Value { value, informational: false };

        let mut bounds = BTreeMap::new();
        bounds.insert(
            BoundName::OrderMinusLeaves,
            if n < 3 {
                na("requires n >= 3")
            } else if is_star {
                na("leaf-stripped core is K1")
            } else {
                val(order_minus_leaves(n, l))
            },
        );
        bounds.insert(BoundName::OrderPlusLeaves, val(order_plus_leaves(n, l)));
        bounds.insert(
            BoundName::CaroTrees,
            if is_k_star { na("tree is K_{1,k}") } else { val(caro_trees(n, k)) },
        );
        bounds.insert(
            BoundName::StarBound,
            BoundEntry::Value { value: star_bound(n, l, k), informational: k == 1 },
        );
        bounds.insert(
            BoundName::SupportBound,
            if n < 3 {
                na("requires n >= 3")
            } else if s == 1 {
                na("requires s != 1")
            } else {
                val(support_bound(n, l, s))
            },
        );
        bounds.insert(
            BoundName::Boutrig,
            if n < 3 {
                na("requires n >= 3")
            } else if is_star {
                na("leaf-stripped core is K1")
            } else {
                val(boutrig(n, l, s))
            },
        );
        bounds.insert(
            BoundName::CaroThird,
            if n == 2 { na("tree is K2") } else { val(caro_third(n)) },
        );

        let target = S::from_count(iota);
        let equality = bounds
            .iter()
            .filter_map(|(name, e)| e.value().map(|v| (*name, *v == target)))
            .collect();
        BoundReport { n, l, s, k, bounds, regime: regime_classify(n, l, k), iota, equality }
    }

    /// Applicable bounds whose value is below ι_k.
    pub fn violations(&self) -> Vec<BoundName> {
        let target = S::from_count(self.iota);
        self.bounds
            .iter()
            .filter(|(_, e)| e.value().is_some_and(|v| *v < target))
            .map(|(name, _)| *name)
            .collect()
    }

    pub fn value(&self, name: BoundName) -> Option<&S> {
        self.bounds.get(&name).and_then(BoundEntry::value)
    }

    pub fn is_equal(&self, name: BoundName) -> bool {
        self.equality.get(&name).copied().unwrap_or(false)
    }

    /// Checks the regime row: ι_k is at most the governing bound and the row's
    /// relations hold. `None` when the governing bound is not applicable.
    pub fn regime_row_holds(&self) -> Option<bool> {
        let bound = self.value(self.regime.governing_bound())?;
        Some(S::from_count(self.iota) <= *bound && regime_relations_hold::<S>(self.n, self.l, self.k))
    }

    /// Flat JSON object; bound values are rendered as strings.
    pub fn to_json(&self) -> Value {
        let bounds: serde_json::Map<String, Value> = self
            .bounds
            .iter()
            .map(|(name, e)| (name.to_string(), Value::String(e.render())))
            .collect();
        let equality: serde_json::Map<String, Value> =
            self.equality.iter().map(|(name, b)| (name.to_string(), Value::Bool(*b))).collect();
        json!({
            "n": self.n,
            "l": self.l,
            "s": self.s,
            "k": self.k,
            "bounds": bounds,
            "regime": self.regime.label(),
            "iota": self.iota,
            "equality": equality,
        })
    }

    /// Human-readable table.
    pub fn render_table(&self) -> String {
        let mut out = format!(
            "n={} l={} s={} k={} iota_k={}\nregime: {}\n",
            self.n, self.l, self.s, self.k, self.iota, self.regime
        );
        for (name, e) in &self.bounds {
            let flag = match (self.equality.get(name), e) {
                (Some(true), _) => "  equality",
                (_, BoundEntry::Value { informational: true, .. }) => "  (not sharp for k=1)",
                (Some(false), _) => "  strict",
                _ => "",
            };
            out.push_str(&format!("{:<20} {:<14} {}{}\n", name.as_str(), name.formula(), e.render(), flag));
        }
        out
    }
}

/// Exact bound report; ι_k comes from the tree dynamic program.
pub fn evaluate_bounds(t: &Tree, k: usize) -> BoundReport {
    let iota = iota_tree_dp(t, k).expect("k >= 1").size();
    BoundReport::from_parts(t, k, iota)
}

/// (n + ℓ)/4 − ι(T), exact.
pub fn gap_order_plus_leaves(t: &Tree) -> Ratio<i64> {
    let iota = iota_tree_dp(t, 1).expect("k = 1").size();
    order_plus_leaves::<Ratio<i64>>(t.order(), t.leaf_count()) - Ratio::from_integer(iota as i64)
}
