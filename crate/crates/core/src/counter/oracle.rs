//! Exhaustive enumeration of multiplicity vectors.
//!
//! Independent of the DP in the parent module: it walks every multiplicity
//! vector in lexicographic order and classifies each complete partition.
//! Exponential; meant for small `n` and few parts.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::system::PartSystem;

use super::BiasCount;

/// Cap on visited search nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    R,
    S,
    Free,
}

struct Walk<'a> {
    parts: &'a [(u64, Side)],
    nodes: u64,
    limit: u64,
    tally: [u64; 3],
}

impl Walk<'_> {
    fn visit(&mut self, idx: usize, remaining: u64, balance: i64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        if idx == self.parts.len() {
            if remaining == 0 {
                let class = match balance {
                    b if b > 0 => 0,
                    b if b < 0 => 1,
                    _ => 2,
                };
                self.tally[class] += 1;
            }
            return Ok(());
        }
        let (part, side) = self.parts[idx];
        let step = match side {
            Side::R => 1,
            Side::S => -1,
            Side::Free => 0,
        };
        for mult in 0..=remaining / part {
            self.visit(idx + 1, remaining - mult * part, balance + step * mult as i64)?;
        }
        Ok(())
    }
}

/// Same contract as [`super::count_bias`], computed by exhaustive search.
pub fn brute_force_oracle(sys: &PartSystem, n: u64, budget: OracleBudget) -> Result<BiasCount> {
    let mut parts: Vec<(u64, Side)> = sys
        .r()
        .iter()
        .map(|&p| (p, Side::R))
        .chain(sys.s().iter().map(|&p| (p, Side::S)))
        .chain(sys.i().iter().map(|&p| (p, Side::Free)))
        .collect();
    parts.sort_by_key(|&(p, _)| p);
    let mut walk = Walk {
        parts: &parts,
        nodes: 0,
        limit: budget.max_nodes,
        tally: [0; 3],
    };
    walk.visit(0, n, 0)?;
    let [greater, less, equal] = walk.tally;
    Ok(BiasCount {
        n,
        total: BigUint::from(greater + less + equal),
        greater: BigUint::from(greater),
        less: BigUint::from(less),
        equal: BigUint::from(equal),
    })
}

/// Every multiplicity vector `m` with `Σ m[i]·parts[i] = n`, lexicographic.
/// `parts` order is kept as given.
pub fn enumerate_multiplicities(
    parts: &[u64],
    n: u64,
    budget: OracleBudget,
) -> Result<Vec<Vec<u64>>> {
    fn go(
        parts: &[u64],
        idx: usize,
        remaining: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        nodes: &mut u64,
        limit: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > limit {
            return Err(Error::BudgetExceeded { limit });
        }
        if idx == parts.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return Ok(());
        }
        for mult in 0..=remaining / parts[idx] {
            current.push(mult);
            go(parts, idx + 1, remaining - mult * parts[idx], current, out, nodes, limit)?;
            current.pop();
        }
        Ok(())
    }
    if parts.contains(&0) {
        return Err(Error::NonPositivePart(0));
    }
    let mut out = Vec::new();
    let mut nodes = 0;
    go(parts, 0, n, &mut Vec::new(), &mut out, &mut nodes, budget.max_nodes)?;
    Ok(out)
}
