//! Integer points of dilates of the partition polytope.
//!
//! In multiplicity coordinates `u = (c_1..c_l, f_1..f_{m-1})` the `t`-dilate
//! holds the points with `u >= 0`, `Σ e_i u_i <= t` and `t - Σ e_i u_i`
//! divisible by `s_m`; these are exactly the partitions of `t` into `R ∪ S`.
//! Scaling the count by `t^{-d}` approaches the polytope volume
//! `1 / (d! ∏r ∏s)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::system::{factorial_q, PartSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartEstimate {
    pub dilation: u64,
    /// `l + m - 1`.
    pub dimension: usize,
    /// Integer points of the dilate.
    pub count: BigUint,
    /// `count / t^d`.
    pub scaled: ExactRational,
    /// `1 / (d! ∏r ∏s)`, the limit of `scaled`.
    pub volume: ExactRational,
}

pub const DEFAULT_EHRHART_NODES: u64 = 200_000_000;

pub fn ehrhart_estimate(sys: &PartSystem, t: u64, max_nodes: u64) -> Result<EhrhartEstimate> {
    if t == 0 {
        return Err(Error::PreconditionViolated("dilation must be at least 1".into()));
    }
    let e = sys.rs_concat();
    let (&last, free) = e.split_last().expect("R and S are nonempty");
    let mut walk = Walk {
        coeffs: free,
        modulus: last,
        nodes: 0,
        limit: max_nodes,
        count: 0,
    };
    walk.visit(0, t)?;
    let dimension = free.len();
    let count = BigUint::from(walk.count);
    let scaled = ExactRational::from_biguint(&count)
        / ExactRational::from_biguint(&BigUint::from(t).pow(dimension as u32));
    let prod: ExactRational = e.iter().map(|&x| ExactRational::from(x as i64)).product();
    let volume = ExactRational::one() / (factorial_q(dimension as u64) * prod);
    Ok(EhrhartEstimate {
        dilation: t,
        dimension,
        count,
        scaled,
        volume,
    })
}

struct Walk<'a> {
    coeffs: &'a [u64],
    modulus: u64,
    nodes: u64,
    limit: u64,
    count: u64,
}

impl Walk<'_> {
    fn visit(&mut self, idx: usize, slack: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        match self.coeffs.get(idx) {
            None => {
                if slack.is_multiple_of(self.modulus) {
                    self.count += 1;
                }
            }
            Some(&c) => {
                for u in 0..=slack / c {
                    self.visit(idx + 1, slack - u * c)?;
                }
            }
        }
        Ok(())
    }
}
