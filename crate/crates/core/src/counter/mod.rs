//! Exact counts of restricted partitions, split by the sign of
//! `#(parts in R) - #(parts in S)`.
//!
//! The main routine is an unbounded-knapsack DP over the parts of `R ∪ S`
//! with state `(amount, #R - #S)`. Parts from `I` never change the
//! difference, so after the `R ∪ S` pass each amount's difference row is
//! collapsed to a `(greater, less, equal)` triple and the `I` parts are
//! folded in one dimension.
//!
//! The DP first runs in `u64`; any overflow restarts it in [`BigUint`].

mod oracle;

pub use oracle::{brute_force_oracle, enumerate_multiplicities, OracleBudget};

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::system::PartSystem;

/// All four counts for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasCount {
    pub n: u64,
    pub total: BigUint,
    pub greater: BigUint,
    pub less: BigUint,
    pub equal: BigUint,
}

impl BiasCount {
    /// `greater / total`, or `None` when there are no partitions of `n`.
    pub fn ratio(&self) -> Option<ExactRational> {
        ExactRational::ratio_of_counts(&self.greater, &self.total)
    }

    pub fn is_consistent(&self) -> bool {
        &self.greater + &self.less + &self.equal == self.total
    }
}

/// `greater / total` at one `n`; `ratio` is `None` when `total = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioEntry {
    pub n: u64,
    pub ratio: Option<ExactRational>,
}

/// Cap on DP work, counted in cell updates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountBudget {
    pub max_cell_updates: u64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            max_cell_updates: 4_000_000_000,
        }
    }
}

impl CountBudget {
    pub fn unlimited() -> Self {
        CountBudget {
            max_cell_updates: u64::MAX,
        }
    }
}

/// Number of multisets over `parts` summing to `n`. `n = 0` gives 1.
pub fn count_restricted(parts: &[u64], n: u64) -> BigUint {
    restricted_table(parts, n).pop().unwrap_or_default()
}

/// `count_restricted(parts, k)` for every `k` in `0..=n_max`.
pub fn restricted_table(parts: &[u64], n_max: u64) -> Vec<BigUint> {
    let parts = distinct_parts(parts);
    match coin_table::<u64>(&parts, n_max) {
        Some(t) => t.into_iter().map(BigUint::from).collect(),
        None => coin_table::<BigUint>(&parts, n_max).expect("BigUint cannot overflow"),
    }
}

/// Bias counts for a single `n`.
pub fn count_bias(sys: &PartSystem, n: u64) -> BiasCount {
    bias_table_with_budget(sys, n, CountBudget::unlimited())
        .expect("unlimited budget")
        .pop()
        .expect("table has n + 1 rows")
}

/// Bias counts for every `n` in `0..=n_max`, indexed by `n`.
pub fn bias_table(sys: &PartSystem, n_max: u64) -> Vec<BiasCount> {
    bias_table_with_budget(sys, n_max, CountBudget::unlimited()).expect("unlimited budget")
}

pub fn bias_table_with_budget(
    sys: &PartSystem,
    n_max: u64,
    budget: CountBudget,
) -> Result<Vec<BiasCount>> {
    let cost = estimated_cost(sys, n_max);
    if cost > budget.max_cell_updates {
        return Err(Error::BudgetExceeded {
            limit: budget.max_cell_updates,
        });
    }
    let triples = match bias_triples::<u64>(sys, n_max) {
        Some(t) => t
            .into_iter()
            .map(|c| c.map(BigUint::from))
            .collect::<Vec<_>>(),
        None => {
            log::debug!("u64 overflow in bias DP for {sys}; retrying with big integers");
            bias_triples::<BigUint>(sys, n_max).expect("BigUint cannot overflow")
        }
    };
    Ok(triples
        .into_iter()
        .enumerate()
        .map(|(n, [greater, less, equal])| BiasCount {
            n: n as u64,
            total: &greater + &less + &equal,
            greater,
            less,
            equal,
        })
        .collect())
}

/// `greater / total` for each requested `n`, in input order.
pub fn ratio_table(sys: &PartSystem, n_values: &[u64]) -> Vec<RatioEntry> {
    let Some(&n_max) = n_values.iter().max() else {
        return Vec::new();
    };
    let table = bias_table(sys, n_max);
    n_values
        .iter()
        .map(|&n| RatioEntry {
            n,
            ratio: table[n as usize].ratio(),
        })
        .collect()
}

/// Upper estimate of the DP's cell updates for `sys` up to `n_max`.
pub fn estimated_cost(sys: &PartSystem, n_max: u64) -> u64 {
    let width = diff_width(sys, n_max) as u64;
    let rs = (sys.r().len() + sys.s().len()) as u64;
    let free = sys.i().len() as u64;
    (n_max + 1)
        .saturating_mul(width)
        .saturating_mul(rs)
        .saturating_add((n_max + 1).saturating_mul(3 * free))
}

fn distinct_parts(parts: &[u64]) -> Vec<u64> {
    assert!(
        parts.iter().all(|&p| p >= 1),
        "parts must be positive integers"
    );
    parts.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

fn diff_width(sys: &PartSystem, n: u64) -> usize {
    let (lo, hi) = diff_bounds(sys, n);
    lo + hi + 1
}

/// Largest possible `#S` and `#R` among partitions of `n`.
fn diff_bounds(sys: &PartSystem, n: u64) -> (usize, usize) {
    let min_r = sys.r()[0];
    let min_s = sys.s()[0];
    ((n / min_s) as usize, (n / min_r) as usize)
}

/// Additive count cell. `add_from` reports overflow by returning `false`.
trait Tally: Clone + Default {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_from(&mut self, other: &Self) -> bool;
}

impl Tally for u64 {
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_from(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Tally for BigUint {
    fn one() -> Self {
        BigUint::from(1u32)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_from(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
}

fn coin_table<T: Tally>(parts: &[u64], n_max: u64) -> Option<Vec<T>> {
    let n = n_max as usize;
    let mut table = vec![T::default(); n + 1];
    table[0] = T::one();
    for &p in parts {
        let p = p as usize;
        for x in p..=n {
            let (lower, upper) = table.split_at_mut(x);
            if !upper[0].add_from(&lower[x - p]) {
                return None;
            }
        }
    }
    Some(table)
}

/// `[greater, less, equal]` per amount `0..=n_max`, or `None` on overflow.
fn bias_triples<T: Tally>(sys: &PartSystem, n_max: u64) -> Option<Vec<[T; 3]>> {
    let n = n_max as usize;
    let min_r = sys.r()[0] as usize;
    let min_s = sys.s()[0] as usize;
    // Row x covers differences -(x / min_s) ..= x / min_r.
    let offset = |x: usize| x / min_s;
    let mut rows: Vec<Vec<T>> = (0..=n)
        .map(|x| vec![T::default(); x / min_s + x / min_r + 1])
        .collect();
    rows[0][0] = T::one();

    let signed_parts = sys
        .r()
        .iter()
        .map(|&p| (p as usize, 1isize))
        .chain(sys.s().iter().map(|&p| (p as usize, -1isize)));
    for (p, delta) in signed_parts {
        for x in p..=n {
            let (lower, upper) = rows.split_at_mut(x);
            let src = &lower[x - p];
            let dst = &mut upper[0];
            let (src_off, dst_off) = (offset(x - p) as isize, offset(x) as isize);
            for (idx, val) in src.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                // Non-zero cells are realised by partitions, so the shifted
                // difference always lies inside row x.
                let diff = idx as isize - src_off + delta;
                let target = (diff + dst_off) as usize;
                if !dst[target].add_from(val) {
                    return None;
                }
            }
        }
    }

    let mut triples: Vec<[T; 3]> = Vec::with_capacity(n + 1);
    for (x, row) in rows.into_iter().enumerate() {
        let zero = offset(x);
        let mut cell: [T; 3] = Default::default();
        for (idx, val) in row.iter().enumerate() {
            let class = match idx.cmp(&zero) {
                std::cmp::Ordering::Greater => 0,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => 2,
            };
            if !cell[class].add_from(val) {
                return None;
            }
        }
        triples.push(cell);
    }

    for &p in sys.i() {
        let p = p as usize;
        for x in p..=n {
            let (lower, upper) = triples.split_at_mut(x);
            for class in 0..3 {
                if !upper[0][class].add_from(&lower[x - p][class]) {
                    return None;
                }
            }
        }
    }
    Some(triples)
}
