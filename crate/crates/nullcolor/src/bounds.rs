//! Grid-point counting bounds: the exact min-product lower bound, its
//! weak closed form t^{(S-n-d)/(t-1)}, the technical product lemma, and
//! the brute-force counting oracle. All fractional-exponent comparisons
//! are done exactly in integer arithmetic by raising both sides to the
//! power t - 1.

use crate::coloring::ListAssignment;
use crate::polys::FactorList;
use num::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("no q-vector satisfies the constraints")]
    Infeasible,
    #[error("requires S >= n + d and t >= 2")]
    PreconditionViolated,
    #[error("all entries must be positive integers")]
    PositiveRequired,
    #[error("maximum entry must be at least 2")]
    DegenerateMax,
    #[error("grid of size {0} exceeds the budget {1}")]
    BudgetExceeded(u128, u128),
}

/// A counting instance: list sizes, degree, and the derived quantities.
#[derive(Debug, Clone)]
pub struct AlonFurediInstance {
    pub sizes: Vec<u64>,
    pub n: usize,
    pub d: u64,
    pub s: u64,
    pub t: u64,
    pub q: Option<Vec<u64>>,
}

impl AlonFurediInstance {
    pub fn new(sizes: &[u64], d: u64) -> AlonFurediInstance {
        assert!(!sizes.is_empty() && sizes.iter().all(|&s| s >= 1));
        AlonFurediInstance {
            sizes: sizes.to_vec(),
            n: sizes.len(),
            d,
            s: sizes.iter().sum(),
            t: *sizes.iter().max().unwrap(),
            q: None,
        }
    }
}

/// Exact minimum of prod q_i over integer vectors with 1 <= q_i <=
/// sizes_i and sum q_i >= S - d, with a minimizing witness.
///
/// The structure of the optimum is known (push mass onto as few
/// coordinates as possible), but this search is deliberately
/// assumption-free: a dynamic program over (index, remaining required
/// sum) minimizing the product.
pub fn af_min_product(sizes: &[u64], d: u64) -> Result<(BigUint, Vec<u64>), BoundsError> {
    if sizes.is_empty() || sizes.iter().any(|&s| s < 1) {
        return Err(BoundsError::PositiveRequired);
    }
    let s: u64 = sizes.iter().sum();
    let need = s.saturating_sub(d);
    let n = sizes.len();
    // best[r] = minimal product achieving remaining required sum r
    // using a suffix of coordinates; walk backward over coordinates
    let rmax = need as usize;
    let inf: Option<(BigUint, Vec<u64>)> = None;
    let mut best: Vec<Option<(BigUint, Vec<u64>)>> = vec![inf; rmax + 1];
    best[0] = Some((BigUint::from(1u32), vec![]));
    for i in (0..n).rev() {
        let mut next: Vec<Option<(BigUint, Vec<u64>)>> = vec![None; rmax + 1];
        for r in 0..=rmax {
            for q in 1..=sizes[i] {
                let rem = r.saturating_sub(q as usize);
                if let Some((prod, tail)) = &best[rem] {
                    let cand = prod * BigUint::from(q);
                    let better = match &next[r] {
                        None => true,
                        Some((p, _)) => cand < *p,
                    };
                    if better {
                        let mut v = vec![q];
                        v.extend_from_slice(tail);
                        next[r] = Some((cand, v));
                    }
                }
            }
        }
        best = next;
    }
    best[rmax].take().ok_or(BoundsError::Infeasible)
}

/// The weak bound t^{(S-n-d)/(t-1)} as an exact (base, numerator,
/// denominator) triple plus a float for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakBound {
    pub t: u64,
    pub num: u64,
    pub den: u64,
}

impl WeakBound {
    pub fn approx(&self) -> f64 {
        (self.t as f64).powf(self.num as f64 / self.den as f64)
    }

    /// Exact comparison value <=> t^{num/den} via den-th powers.
    pub fn le_counted(&self, count: u64) -> bool {
        BigUint::from(self.t).pow(self.num as u32)
            <= BigUint::from(count).pow(self.den as u32)
    }
}

pub fn af_weak_bound(s: u64, n: u64, d: u64, t: u64) -> Result<WeakBound, BoundsError> {
    if t < 2 || s < n + d {
        return Err(BoundsError::PreconditionViolated);
    }
    Ok(WeakBound {
        t,
        num: s - n - d,
        den: t - 1,
    })
}

/// Exact check of prod a_i >= t^{(S-n)/(t-1)} with t = max a_i, via
/// (prod a_i)^{t-1} >= t^{S-n}.
pub fn lemma_product_check(a: &[u64]) -> Result<(bool, BigUint, BigUint), BoundsError> {
    if a.is_empty() || a.iter().any(|&x| x < 1) {
        return Err(BoundsError::PositiveRequired);
    }
    let t = *a.iter().max().unwrap();
    if t < 2 {
        return Err(BoundsError::DegenerateMax);
    }
    let s: u64 = a.iter().sum();
    let n = a.len() as u64;
    let prod: BigUint = a.iter().map(|&x| BigUint::from(x)).product();
    let lhs = prod.pow((t - 1) as u32);
    let rhs = BigUint::from(t).pow((s - n) as u32);
    Ok((lhs >= rhs, lhs, rhs))
}

/// Convexity inequality x >= t^{(x-1)/(t-1)} for integers 1 <= x <= t,
/// checked exactly as x^{t-1} >= t^{x-1}.
pub fn convexity_holds(x: u64, t: u64) -> bool {
    BigUint::from(x).pow((t - 1) as u32) >= BigUint::from(t).pow((x - 1) as u32)
}

/// Exact number of grid points with nonzero evaluation.
pub fn count_nonzero_points(
    f: &FactorList,
    lists: &ListAssignment,
    budget: u128,
) -> Result<u64, BoundsError> {
    assert_eq!(lists.lists.len(), f.nvars);
    let grid = lists.grid_size();
    if grid > budget {
        return Err(BoundsError::BudgetExceeded(grid, budget));
    }
    let field = &f.field;
    let n = f.nvars;
    let mut idx = vec![0usize; n];
    let mut point: Vec<_> = lists.lists.iter().map(|l| l[0].clone()).collect();
    let mut count = 0u64;
    loop {
        if !field.is_zero(&f.evaluate(&point)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            idx[i] += 1;
            if idx[i] < lists.lists[i].len() {
                point[i] = lists.lists[i][idx[i]].clone();
                break;
            }
            idx[i] = 0;
            point[i] = lists.lists[i][0].clone();
            i += 1;
        }
    }
}

/// Full chain report for one instance: brute count, exact min-product
/// bound with witness, and the weak bound, all compared exactly.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub count: u64,
    pub min_product: BigUint,
    pub q: Vec<u64>,
    pub weak: WeakBound,
    pub chain_holds: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "count": self.count,
            "min_product": self.min_product.to_string(),
            "q": self.q,
            "weak_bound": {"t": self.weak.t, "num": self.weak.num, "den": self.weak.den},
            "weak_bound_approx": self.weak.approx(),
            "chain_holds": self.chain_holds,
        })
    }
}

pub fn bound_report(
    f: &FactorList,
    lists: &ListAssignment,
    budget: u128,
) -> Result<BoundReport, BoundsError> {
    let count = count_nonzero_points(f, lists, budget)?;
    let sizes: Vec<u64> = lists.lists.iter().map(|l| l.len() as u64).collect();
    let d = f.factors.len() as u64;
    let (min_product, q) = af_min_product(&sizes, d)?;
    let s: u64 = sizes.iter().sum();
    let n = sizes.len() as u64;
    let t = *sizes.iter().max().unwrap();
    // the weak form needs S >= n + d and t >= 2; outside that regime
    // report the trivial bound 1 (zero exponent)
    let weak = if t >= 2 && s >= n + d {
        af_weak_bound(s, n, d, t)?
    } else {
        WeakBound { t: t.max(2), num: 0, den: t.max(2) - 1 }
    };
    let chain_holds = count > 0
        && BigUint::from(count) >= min_product
        && {
            // min_product^{t-1} >= t^{S-n-d}
            let lhs = min_product.pow(weak.den as u32);
            let rhs = BigUint::from(weak.t).pow(weak.num as u32);
            lhs >= rhs
        };
    Ok(BoundReport {
        count,
        min_product,
        q,
        weak,
        chain_holds,
    })
}
