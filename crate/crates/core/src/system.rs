//! Part-set systems `(R, S, I)` and the small exact helpers shared by the
//! counting, asymptotic and geometric modules.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Three pairwise disjoint sets of positive parts.
///
/// `R` and `S` are the sets whose part counts are compared; `I` holds parts
/// that may appear freely. Each set is stored strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartSystem {
    r: Vec<u64>,
    s: Vec<u64>,
    i: Vec<u64>,
    gcd_all: u64,
}

impl PartSystem {
    /// Ascending `R`.
    pub fn r(&self) -> &[u64] {
        &self.r
    }

    /// Ascending `S`.
    pub fn s(&self) -> &[u64] {
        &self.s
    }

    /// Ascending `I` (possibly empty).
    pub fn i(&self) -> &[u64] {
        &self.i
    }

    /// gcd of every element of `R ∪ S`. `I` does not participate.
    pub fn gcd_all(&self) -> u64 {
        self.gcd_all
    }

    /// Whether the closed-form limit applies, i.e. `gcd(R ∪ S) = 1`.
    pub fn theorem_applicable(&self) -> bool {
        self.gcd_all == 1
    }

    /// Fails with [`Error::GcdHypothesisViolated`] unless `gcd(R ∪ S) = 1`.
    pub fn require_coprime(&self) -> Result<()> {
        if self.theorem_applicable() {
            Ok(())
        } else {
            Err(Error::GcdHypothesisViolated(self.gcd_all))
        }
    }

    /// `R` followed by `S`; the coordinate order used by the lattice code.
    pub fn rs_concat(&self) -> Vec<u64> {
        self.r.iter().chain(&self.s).copied().collect()
    }

    /// Every part of `R ∪ S ∪ I`, ascending.
    pub fn all_parts(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.r.iter().chain(&self.s).chain(&self.i).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn largest_part(&self) -> u64 {
        self.all_parts().last().copied().unwrap_or(0)
    }

    /// The same system with `I` dropped.
    pub fn without_free_parts(&self) -> PartSystem {
        PartSystem {
            i: Vec::new(),
            ..self.clone()
        }
    }
}

impl fmt::Display for PartSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| {
            v.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "R={{{}}} S={{{}}} I={{{}}}",
            join(&self.r),
            join(&self.s),
            join(&self.i)
        )
    }
}

/// Validates raw part sets and returns the canonical system.
///
/// Repeated values inside one set collapse (the inputs are sets). A value in
/// two different sets is an error. `gcd(R ∪ S) > 1` is accepted; check
/// [`PartSystem::theorem_applicable`] before evaluating limits.
pub fn validate_system(r: &[i64], s: &[i64], i: &[i64]) -> Result<PartSystem> {
    fn canon(raw: &[i64]) -> Result<BTreeSet<u64>> {
        raw.iter()
            .map(|&x| {
                if x < 1 {
                    Err(Error::NonPositivePart(x))
                } else {
                    Ok(x as u64)
                }
            })
            .collect()
    }
    let (r, s, i) = (canon(r)?, canon(s)?, canon(i)?);
    if r.is_empty() || s.is_empty() {
        return Err(Error::EmptyRS);
    }
    let clash = r
        .intersection(&s)
        .chain(r.intersection(&i))
        .chain(s.intersection(&i))
        .next();
    if let Some(&x) = clash {
        return Err(Error::DisjointnessViolation(x as i64));
    }
    let gcd_all = r.iter().chain(&s).fold(0u64, |g, &x| g.gcd(&x));
    let sys = PartSystem {
        r: r.into_iter().collect(),
        s: s.into_iter().collect(),
        i: i.into_iter().collect(),
        gcd_all,
    };
    if !sys.theorem_applicable() {
        log::warn!("gcd(R ∪ S) = {gcd_all} for {sys}; limit formulas are unavailable");
    }
    Ok(sys)
}

/// [`validate_system`] for callers that already hold unsigned parts.
pub fn system_from_parts(r: &[u64], s: &[u64], i: &[u64]) -> Result<PartSystem> {
    let widen = |v: &[u64]| -> Result<Vec<i64>> {
        v.iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::InconsistentInput(format!("part {x} too large"))))
            .collect()
    };
    validate_system(&widen(r)?, &widen(s)?, &widen(i)?)
}

/// Leading entries `d_i = gcd(e_{i+1..}) / gcd(e_i..)` for `i = 1..k-1`.
///
/// `d_i` is the smallest positive value the `i`-th coordinate takes on the
/// part of the lattice `{x : x·e = 0}` that vanishes in coordinates `< i`.
pub fn gcd_chain(e: &[u64]) -> Result<Vec<u64>> {
    if e.len() < 2 {
        return Err(Error::PreconditionViolated(
            "gcd_chain needs at least two entries".into(),
        ));
    }
    if let Some(&z) = e.iter().find(|&&x| x == 0) {
        return Err(Error::NonPositivePart(z as i64));
    }
    let suffix = suffix_gcds(e);
    Ok((0..e.len() - 1).map(|i| suffix[i + 1] / suffix[i]).collect())
}

/// `suffix[i] = gcd(e[i..])`.
pub(crate) fn suffix_gcds(e: &[u64]) -> Vec<u64> {
    let mut suffix = vec![0u64; e.len()];
    let mut g = 0u64;
    for (slot, &x) in suffix.iter_mut().zip(e).rev() {
        g = g.gcd(&x);
        *slot = g;
    }
    suffix
}

/// Falling product `(a)_N = a (a-1) ... (a-N+1)`, with `(a)_0 = 1`.
pub fn falling_product(a: &ExactRational, count: u32) -> ExactRational {
    (0..count)
        .map(|k| a - ExactRational::from(k as i64))
        .product()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

pub(crate) fn factorial_q(n: u64) -> ExactRational {
    ExactRational::from_biguint(&factorial(n))
}
