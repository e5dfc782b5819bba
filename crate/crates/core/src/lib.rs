//! Partitions with parts drawn from three disjoint sets `R`, `S` and `I`,
//! split by whether they use more parts from `R` or from `S`.
//!
//! * [`counter`]: exact counts `p_{R>S,I}(n)`, `p_{R<S,I}(n)`, `p_{R=S,I}(n)`
//!   by dynamic programming, plus a brute-force oracle.
//! * [`asymptote`]: the closed-form `n → ∞` limit of the bias ratio.
//! * [`geometry`]: lattice embedding, V-form polytope volumes and Ehrhart
//!   dilation counts.
//! * [`progression`]: part sets in arithmetic progression and the
//!   convergence harness for their limits.
//!
//! ```
//! use partbias::{asymptotic_ratio, count_bias, validate_system, ExactRational};
//!
//! let sys = validate_system(&[1], &[2], &[]).unwrap();
//! assert_eq!(asymptotic_ratio(&sys).unwrap(), ExactRational::new(2, 3));
//! let c = count_bias(&sys, 4);
//! assert_eq!(c.total, 3u32.into());
//! ```

pub mod asymptote;
pub mod counter;
pub mod error;
pub mod geometry;
pub mod progression;
pub mod rational;
pub mod system;

pub use asymptote::{asymptotic_ratio, asymptotic_report, AsymptoticReport};
pub use counter::{
    bias_table, brute_force_oracle, count_bias, count_restricted, ratio_table, BiasCount,
    CountBudget, OracleBudget,
};
pub use error::{Error, Result};
pub use geometry::{bias_volume, vform_volume, VForm};
pub use progression::{build_sets, c_limit_exact, conjecture_table, ProgressionSpec};
pub use rational::ExactRational;
pub use system::{validate_system, PartSystem};
