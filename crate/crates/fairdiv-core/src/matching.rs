//! Exact maximum-weight bipartite assignment.
//!
//! Agents (left vertices) are assigned to distinct goods (right vertices) so
//! that the total weight is maximum. Weights are arbitrary-precision
//! integers: the mechanism weights grow like `n * m * 4^m`, which overflows
//! any fixed-width type long before instances stop being interesting.
//!
//! Among all maximum-weight assignments the solver returns a single
//! canonical one: scanning left vertices in the caller's priority order,
//! each is matched to the smallest right index that some maximum-weight
//! completion still allows. [`brute_force_assignment`] implements the same
//! contract by exhaustive enumeration and serves as the testing oracle.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A complete bipartite assignment problem with `right_count >= left_count`,
/// so a left-perfect matching always exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentProblem {
    weights: Vec<Vec<BigInt>>,
    right: usize,
}

impl AssignmentProblem {
    /// Builds a problem from a rectangular matrix of non-negative weights,
    /// one row per left vertex.
    pub fn new(weights: Vec<Vec<BigInt>>) -> Result<Self> {
        let left = weights.len();
        if left == 0 {
            return Err(Error::input(
                "assignment problem needs at least one left vertex",
            ));
        }
        let right = weights[0].len();
        for row in &weights {
            if row.len() != right {
                return Err(Error::input("weight matrix is not rectangular"));
            }
            for w in row {
                if w < &BigInt::zero() {
                    return Err(Error::input("weights must be non-negative"));
                }
            }
        }
        if right < left {
            return Err(Error::input(format!(
                "need at least as many right vertices as left ({} < {})",
                right, left
            )));
        }
        Ok(AssignmentProblem { weights, right })
    }

    pub fn left_count(&self) -> usize {
        self.weights.len()
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn weight(&self, left: usize, right: usize) -> &BigInt {
        &self.weights[left][right]
    }
}

/// A left-perfect matching: `assignment[l]` is the right vertex matched to
/// left vertex `l`, with no right vertex repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    assignment: Vec<usize>,
}

impl Matching {
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn assigned_to(&self, left: usize) -> usize {
        self.assignment[left]
    }

    pub fn total_weight(&self, prob: &AssignmentProblem) -> BigInt {
        self.assignment
            .iter()
            .enumerate()
            .map(|(l, &r)| prob.weight(l, r).clone())
            .sum()
    }

    /// The matched right vertices in increasing order.
    pub fn matched_rights(&self) -> Vec<usize> {
        let mut rights = self.assignment.clone();
        rights.sort_unstable();
        rights
    }
}

fn validate_priority(left: usize, priority: &[usize]) -> Result<()> {
    if priority.len() != left {
        return Err(Error::input(
            "priority list length does not match left vertex count",
        ));
    }
    let mut seen = alloc::vec![false; left];
    for &l in priority {
        if l >= left || seen[l] {
            return Err(Error::input(
                "priority list is not a permutation of the left vertices",
            ));
        }
        seen[l] = true;
    }
    Ok(())
}

/// Minimum-cost left-perfect assignment for a rectangular matrix with
/// `rows <= cols` and non-negative entries, by the potentials form of the
/// Hungarian method. Returns the total cost.
fn min_cost_total(cost: &[Vec<BigInt>]) -> BigInt {
    let l = cost.len();
    if l == 0 {
        return BigInt::zero();
    }
    let r = cost[0].len();
    debug_assert!(r >= l);
    // 1-based internally; column 0 is the virtual start of each augmenting
    // search. matched_row[j] is the row matched to column j (0 = free).
    let mut pot_row = alloc::vec![BigInt::zero(); l + 1];
    let mut pot_col = alloc::vec![BigInt::zero(); r + 1];
    let mut matched_row = alloc::vec![0usize; r + 1];
    let mut way = alloc::vec![0usize; r + 1];
    for i in 1..=l {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<BigInt>> = alloc::vec![None; r + 1];
        let mut used = alloc::vec![false; r + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta: Option<BigInt> = None;
            let mut j1 = 0usize;
            for j in 1..=r {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &pot_row[i0] - &pot_col[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                if delta.as_ref().is_none_or(|d| minv[j].as_ref().unwrap() < d) {
                    delta = minv[j].clone();
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column exists while rows remain unmatched");
            for j in 0..=r {
                if used[j] {
                    pot_row[matched_row[j]] += &delta;
                    pot_col[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = BigInt::zero();
    for j in 1..=r {
        if matched_row[j] != 0 {
            total += &cost[matched_row[j] - 1][j - 1];
        }
    }
    total
}

/// Maximum total weight of a left-perfect matching of `rows` into `cols`
/// (index subsets of `prob`). Empty `rows` gives zero.
fn optimal_weight(prob: &AssignmentProblem, rows: &[usize], cols: &[usize]) -> BigInt {
    if rows.is_empty() {
        return BigInt::zero();
    }
    debug_assert!(cols.len() >= rows.len());
    // Shift to a minimization with non-negative entries: every left-perfect
    // matching has exactly rows.len() edges, so the shift is a constant.
    let max_w = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| prob.weight(i, j)))
        .max()
        .expect("non-empty")
        .clone();
    let cost: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| &max_w - prob.weight(i, j)).collect())
        .collect();
    let min_cost = min_cost_total(&cost);
    BigInt::from(rows.len()) * max_w - min_cost
}

/// Canonical maximum-weight left-perfect matching.
///
/// `priority` ranks the left vertices. Scanning them in that order, each is
/// fixed to the smallest right index for which some maximum-weight matching
/// extends all assignments fixed so far; feasibility of each candidate is
/// decided by re-optimizing the reduced problem.
pub fn max_weight_assignment(prob: &AssignmentProblem, priority: &[usize]) -> Result<Matching> {
    let left = prob.left_count();
    let right = prob.right_count();
    validate_priority(left, priority)?;
    let all_rows: Vec<usize> = (0..left).collect();
    let all_cols: Vec<usize> = (0..right).collect();
    let target = optimal_weight(prob, &all_rows, &all_cols);

    let mut assignment = alloc::vec![usize::MAX; left];
    let mut used_col = alloc::vec![false; right];
    let mut fixed_weight = BigInt::zero();
    for (rank, &row) in priority.iter().enumerate() {
        let remaining_rows: Vec<usize> = priority[rank + 1..].to_vec();
        let mut chosen = None;
        for col in 0..right {
            if used_col[col] {
                continue;
            }
            let remaining_cols: Vec<usize> =
                (0..right).filter(|&c| !used_col[c] && c != col).collect();
            let rest = optimal_weight(prob, &remaining_rows, &remaining_cols);
            if &fixed_weight + prob.weight(row, col) + rest == target {
                chosen = Some(col);
                break;
            }
        }
        let col = chosen
            .ok_or_else(|| Error::internal("no column completes a maximum-weight matching"))?;
        assignment[row] = col;
        used_col[col] = true;
        fixed_weight += prob.weight(row, col);
    }
    Ok(Matching { assignment })
}

/// Number of injections from `left` vertices into `right`, saturating.
fn injection_count(left: usize, right: usize) -> u64 {
    let mut acc: u64 = 1;
    for k in 0..left as u64 {
        acc = acc.saturating_mul(right as u64 - k);
    }
    acc
}

/// Exhaustive-enumeration oracle with the same contract as
/// [`max_weight_assignment`]. Refuses problems whose injection count
/// exceeds `cap`.
pub fn brute_force_assignment(
    prob: &AssignmentProblem,
    priority: &[usize],
    cap: u64,
) -> Result<Matching> {
    let left = prob.left_count();
    let right = prob.right_count();
    validate_priority(left, priority)?;
    let count = injection_count(left, right);
    if count > cap {
        return Err(Error::resource(format!(
            "{} injections exceed the enumeration cap of {}",
            count, cap
        )));
    }

    // DFS over columns in ascending order for each left vertex in priority
    // order visits injections in exactly the canonical order, so keeping the
    // first strict maximum yields the canonical matching.
    struct Search<'a> {
        prob: &'a AssignmentProblem,
        priority: &'a [usize],
        used: Vec<bool>,
        current: Vec<usize>,
        best: Option<(BigInt, Vec<usize>)>,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize, weight: BigInt) {
            if depth == self.priority.len() {
                if self.best.as_ref().is_none_or(|(bw, _)| weight > *bw) {
                    let mut assignment = alloc::vec![usize::MAX; self.priority.len()];
                    for (d, &row) in self.priority.iter().enumerate() {
                        assignment[row] = self.current[d];
                    }
                    self.best = Some((weight, assignment));
                }
                return;
            }
            let row = self.priority[depth];
            for col in 0..self.prob.right_count() {
                if self.used[col] {
                    continue;
                }
                self.used[col] = true;
                self.current.push(col);
                let w = &weight + self.prob.weight(row, col);
                self.go(depth + 1, w);
                self.current.pop();
                self.used[col] = false;
            }
        }
    }

    let mut search = Search {
        prob,
        priority,
        used: alloc::vec![false; right],
        current: Vec::with_capacity(left),
        best: None,
    };
    search.go(0, BigInt::zero());
    let (_, assignment) = search.best.expect("at least one injection exists");
    Ok(Matching { assignment })
}
