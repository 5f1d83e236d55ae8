//! Closed forms for Ramsey and Gallai-Ramsey numbers of stars and star unions.
//!
//! Guards are reported, never enforced: every function computes its value
//! outside the proven range too.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("star sizes must be at least 1, got ({n}, {m})")]
    NonPositive { n: u64, m: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaKind {
    Exact,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub kind: FormulaKind,
    pub lower: i64,
    pub upper: i64,
    /// Named guard failures, e.g. `"m >= 5"`.
    pub guard_violations: Vec<String>,
    pub notices: Vec<String>,
}

impl FormulaResult {
    fn exact(value: i64) -> Self {
        FormulaResult {
            kind: FormulaKind::Exact,
            lower: value,
            upper: value,
            guard_violations: Vec::new(),
            notices: Vec::new(),
        }
    }

    fn bounds(lower: i64, upper: i64) -> Self {
        FormulaResult {
            kind: FormulaKind::Bounds,
            lower,
            upper,
            guard_violations: Vec::new(),
            notices: Vec::new(),
        }
    }

    fn guard(mut self, name: &str, ok: bool) -> Self {
        if !ok {
            self.guard_violations.push(name.to_string());
        }
        self
    }

    pub fn value(&self) -> Option<i64> {
        (self.kind == FormulaKind::Exact).then_some(self.lower)
    }

    pub fn guards_satisfied(&self) -> bool {
        self.guard_violations.is_empty()
    }
}

fn even(n: i64) -> bool {
    n % 2 == 0
}

/// `R(K(1,n) ∪ K(1,m)) = max{n + 2m, 2n + 1, n + m + 3}`; swaps `m > n`.
pub fn ramsey_union_stars(n: u64, m: u64) -> Result<FormulaResult, FormulaError> {
    if n == 0 || m == 0 {
        return Err(FormulaError::NonPositive { n, m });
    }
    let swapped = m > n;
    let (n, m) = if swapped { (m as i64, n as i64) } else { (n as i64, m as i64) };
    let mut r = FormulaResult::exact((n + 2 * m).max(2 * n + 1).max(n + m + 3));
    if swapped {
        r.notices.push(format!("swapped star sizes to n = {n}, m = {m}"));
    }
    Ok(r)
}

/// `gr_k(K_3 : K(1,m))`: `(5m − 6)/2` for even `m`, `(5m − 3)/2` for odd `m`.
pub fn gr_single_star(k: u64, m: u64) -> FormulaResult {
    let m = m as i64;
    let value = if even(m) { (5 * m - 6) / 2 } else { (5 * m - 3) / 2 };
    FormulaResult::exact(value).guard("m >= 2", m >= 2).guard("k >= 2", k >= 2)
}

/// Small-`m` exact value: `(5n − 6)/2 + k − 3` (even `n`), `(5n − 3)/2 + k − 3` (odd `n`).
pub fn gr_small_m(k: u64, n: u64, m: u64) -> FormulaResult {
    let (k, n, m) = (k as i64, n as i64, m as i64);
    let base = if even(n) { (5 * n - 6) / 2 } else { (5 * n - 3) / 2 };
    FormulaResult::exact(base + k - 3)
        .guard("n >= 22", n >= 22)
        .guard("m >= 5", m >= 5)
        .guard("m <= (n-8)/6", 6 * m <= n - 8)
        .guard("k >= 3", k >= 3)
}

/// Equal stars: `gr_k(K_3 : K(1,n) ∪ K(1,n)) = 3n + k − 1`.
pub fn gr_equal(k: u64, n: u64) -> FormulaResult {
    let (k, n) = (k as i64, n as i64);
    FormulaResult::exact(3 * n + k - 1).guard("k >= 3", k >= 3).guard("n >= 1", n >= 1)
}

/// The bound certified by the general lower-bound construction alone:
/// `2n + m + k − 5` (even `n`), `2n + m + k − 4` (odd `n`).
pub fn general_construction_bound(k: u64, n: u64, m: u64) -> i64 {
    let (k, n, m) = (k as i64, n as i64, m as i64);
    if even(n) {
        2 * n + m + k - 5
    } else {
        2 * n + m + k - 4
    }
}

/// General bounds.
///
/// Even `n`: `max{2n+m+k−5, (5n−6)/2+k−3} ≤ gr_k ≤ 3n+3m+k−3`;
/// odd `n`: `max{2n+m+k−4, (5n−3)/2+k−3} ≤ gr_k ≤ 3n+3m+k−2`.
pub fn gr_general_bounds(k: u64, n: u64, m: u64) -> FormulaResult {
    let (ki, ni, mi) = (k as i64, n as i64, m as i64);
    let (single, upper) = if even(ni) {
        ((5 * ni - 6) / 2 + ki - 3, 3 * ni + 3 * mi + ki - 3)
    } else {
        ((5 * ni - 3) / 2 + ki - 3, 3 * ni + 3 * mi + ki - 2)
    };
    let lower = general_construction_bound(k, n, m).max(single);
    FormulaResult::bounds(lower, upper)
        .guard("n >= 9", ni >= 9)
        .guard("n > m", ni > mi)
        .guard("m >= 2", mi >= 2)
        .guard("m >= (n-2)/6", 6 * mi >= ni - 2)
        .guard("k >= 3", ki >= 3)
}
