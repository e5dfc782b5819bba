//! Closed-form limit of `p_{R>S,I}(n) / p_{RSI}(n)` and its two leading
//! coefficients.
//!
//! With `d = l + m - 1`,
//!
//! ```text
//! p_{RS}(n)  ~ lead_total   · n^d / d!      lead_total = 1 / (∏r · ∏s)
//! p_{R>S}(n) ~ lead_greater · n^d / d!
//! lead_greater = Σ_i (-1)^(i-1) / (r_i ∏_{j>i}(r_j - r_i) ∏_{t<i}(r_i - r_t) ∏_k (s_k + r_i))
//! ```
//!
//! Everything is exact: the alternating sum cancels badly in floating point.
//! `I` never affects the limit and is ignored.

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::system::{system_from_parts, PartSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub ratio_limit: ExactRational,
    pub lead_total: ExactRational,
    pub lead_greater: ExactRational,
    /// `l + m - 1`.
    pub dimension: usize,
}

pub fn asymptotic_report(sys: &PartSystem) -> Result<AsymptoticReport> {
    let lead_total = leading_coefficient_total(sys)?;
    let lead_greater = leading_coefficient_greater(sys)?;
    Ok(AsymptoticReport {
        ratio_limit: &lead_greater / &lead_total,
        lead_total,
        lead_greater,
        dimension: sys.r().len() + sys.s().len() - 1,
    })
}

/// The limiting share of partitions with more parts in `R` than in `S`.
pub fn asymptotic_ratio(sys: &PartSystem) -> Result<ExactRational> {
    Ok(asymptotic_report(sys)?.ratio_limit)
}

/// `1 / (∏r · ∏s)`.
pub fn leading_coefficient_total(sys: &PartSystem) -> Result<ExactRational> {
    gate(sys)?;
    let prod: ExactRational = sys
        .rs_concat()
        .iter()
        .map(|&x| ExactRational::from(x as i64))
        .product();
    Ok(ExactRational::one() / prod)
}

pub fn leading_coefficient_greater(sys: &PartSystem) -> Result<ExactRational> {
    gate(sys)?;
    greater_sum_raw(&as_signed(sys.r()), &as_signed(sys.s()))
}

fn gate(sys: &PartSystem) -> Result<()> {
    if !sys.i().is_empty() {
        log::debug!("ignoring I = {:?}: free parts do not move the limit", sys.i());
    }
    sys.require_coprime()
}

fn as_signed(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// The alternating sum for `lead_greater`, evaluated in the given order of
/// `r` without sorting or validation beyond nonzero denominators.
pub fn greater_sum_raw(r: &[i64], s: &[i64]) -> Result<ExactRational> {
    let q = |x: i64| ExactRational::from(x);
    let mut sum = ExactRational::zero();
    for (i, &ri) in r.iter().enumerate() {
        let mut denom = q(ri);
        for &rj in &r[i + 1..] {
            denom = denom * q(rj - ri);
        }
        for &rt in &r[..i] {
            denom = denom * q(ri - rt);
        }
        for &sk in s {
            denom = denom * q(sk + ri);
        }
        let term = denom.checked_recip().ok_or_else(|| {
            Error::DegenerateDenominator(format!("term {} of the R sum for r_i = {ri}", i + 1))
        })?;
        if i % 2 == 0 {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
    }
    Ok(sum)
}

/// `∏r · ∏s · greater_sum_raw(r, s)` in the given order of `r`.
pub fn asymptotic_ratio_raw(r: &[i64], s: &[i64]) -> Result<ExactRational> {
    let prod: ExactRational = r.iter().chain(s).map(|&x| ExactRational::from(x)).product();
    Ok(prod * greater_sum_raw(r, s)?)
}

/// `1 - ratio(R,S) - ratio(S,R)`: the limiting share of partitions with as
/// many `R` parts as `S` parts, derived from the two closed forms.
pub fn tie_share(sys: &PartSystem) -> Result<ExactRational> {
    let swapped = system_from_parts(sys.s(), sys.r(), &[])?;
    Ok(ExactRational::one() - asymptotic_ratio(sys)? - asymptotic_ratio(&swapped)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub r: Vec<u64>,
    pub s: Vec<u64>,
    pub ratio: ExactRational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalancedScanReport {
    pub examined: usize,
    /// Systems whose limit is `<= 1/2`.
    pub candidates: Vec<ScanEntry>,
    pub minimum: Option<ScanEntry>,
}

/// Scans equal-size pairs `R = {r_1 < ... < r_k}`, `S = {s_1 < ... < s_k}`
/// with `r_i < s_i`, all parts `<= max_part` and `gcd(R ∪ S) = 1`, and
/// reports any whose limit does not exceed `1/2`. Purely descriptive.
pub fn balanced_bias_scan(size: usize, max_part: u64) -> BalancedScanReport {
    let half = ExactRational::new(1, 2);
    let mut report = BalancedScanReport::default();
    let subsets = k_subsets(size, max_part);
    for r in &subsets {
        for s in &subsets {
            if !r.iter().zip(s).all(|(a, b)| a < b) {
                continue;
            }
            let Ok(sys) = system_from_parts(r, s, &[]) else {
                continue;
            };
            let Ok(ratio) = asymptotic_ratio(&sys) else {
                continue;
            };
            report.examined += 1;
            let entry = ScanEntry {
                r: r.clone(),
                s: s.clone(),
                ratio,
            };
            if entry.ratio <= half {
                report.candidates.push(entry.clone());
            }
            if report.minimum.as_ref().is_none_or(|m| entry.ratio < m.ratio) {
                report.minimum = Some(entry);
            }
        }
    }
    report
}

fn k_subsets(k: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(start: u64, max: u64, k: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=max {
            cur.push(x);
            go(x + 1, max, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(1, max, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::validate_system;
    use proptest::prelude::*;

    fn sys(r: &[i64], s: &[i64]) -> PartSystem {
        validate_system(r, s, &[]).unwrap()
    }

    #[test]
    fn corollary_values() {
        assert_eq!(asymptotic_ratio(&sys(&[1], &[2])).unwrap(), ExactRational::new(2, 3));
        assert_eq!(asymptotic_ratio(&sys(&[1, 2], &[3])).unwrap(), ExactRational::new(9, 10));
        assert_eq!(asymptotic_ratio(&sys(&[1], &[2, 3, 4])).unwrap(), ExactRational::new(2, 5));
    }

    #[test]
    fn leading_coefficients() {
        let running = sys(&[2, 3, 6], &[10, 15]);
        assert_eq!(leading_coefficient_total(&running).unwrap(), ExactRational::new(1, 5400));
        assert_eq!(leading_coefficient_total(&sys(&[1], &[2])).unwrap(), ExactRational::new(1, 2));
        assert_eq!(leading_coefficient_greater(&sys(&[1], &[2])).unwrap(), ExactRational::new(1, 3));
        assert_eq!(leading_coefficient_greater(&sys(&[1, 2], &[3])).unwrap(), ExactRational::new(3, 20));
    }

    #[test]
    fn running_example_greater_coefficient() {
        // Hand evaluation of the three-term sum:
        //   i=1: 1/(2·1·4·12·17)   = 1/1632
        //   i=2: -1/(3·1·3·13·18)  = -1/2106
        //   i=3: 1/(6·4·3·16·21)   = 1/24192
        let expected = ExactRational::new(1, 1632) - ExactRational::new(1, 2106)
            + ExactRational::new(1, 24192);
        let running = sys(&[2, 3, 6], &[10, 15]);
        assert_eq!(leading_coefficient_greater(&running).unwrap(), expected);
        let report = asymptotic_report(&running).unwrap();
        assert_eq!(report.dimension, 4);
        assert_eq!(report.ratio_limit, expected * ExactRational::from(5400));
    }

    #[test]
    fn gcd_gate() {
        assert_eq!(
            asymptotic_ratio(&sys(&[2], &[4])),
            Err(Error::GcdHypothesisViolated(2))
        );
    }

    #[test]
    fn free_parts_are_ignored() {
        let with_i = validate_system(&[1, 2], &[3], &[5, 7]).unwrap();
        assert_eq!(asymptotic_ratio(&with_i).unwrap(), ExactRational::new(9, 10));
    }

    #[test]
    fn raw_sum_rejects_repeated_r() {
        assert!(matches!(
            greater_sum_raw(&[2, 2], &[3]),
            Err(Error::DegenerateDenominator(_))
        ));
    }

    #[test]
    fn tie_share_vanishes_on_examples() {
        for (r, s) in [(&[1][..], &[2][..]), (&[1, 2], &[3]), (&[2, 3, 6], &[10, 15])] {
            assert_eq!(tie_share(&sys(r, s)).unwrap(), ExactRational::zero());
        }
    }

    #[test]
    fn counts_approach_the_limit_along_doubling_grid() {
        // Ratios oscillate with the residue of n, so compare the worst gap
        // over one window of length lcm(R ∪ S ∪ {r + s}) at each grid point.
        use num_integer::Integer;
        let grid = [100u64, 200, 400, 800, 1600];
        for (r, s) in [(&[1][..], &[2][..]), (&[1, 2], &[3]), (&[2, 3], &[5]), (&[1], &[2, 3, 4])] {
            let system = sys(r, s);
            let limit = asymptotic_ratio(&system).unwrap();
            let sums = system.r().iter().flat_map(|&a| system.s().iter().map(move |&b| a + b));
            let period = system.rs_concat().into_iter().chain(sums).fold(1u64, |acc, x| acc.lcm(&x));
            let table = crate::counter::bias_table(&system, grid[4] + period);
            let envelope: Vec<ExactRational> = grid
                .iter()
                .map(|&n| {
                    (n..n + period)
                        .map(|k| (table[k as usize].ratio().unwrap() - &limit).abs())
                        .max()
                        .unwrap()
                })
                .collect();
            assert!(envelope.windows(2).all(|w| w[1] < w[0]), "{system}: {envelope:?}");
        }
    }

    #[test]
    fn balanced_scan_runs() {
        let report = balanced_bias_scan(2, 7);
        assert!(report.examined > 0);
        assert!(report.minimum.is_some());
    }

    proptest! {
        #[test]
        fn corollary_families(k in 2i64..=12) {
            let s: Vec<i64> = (2..=k).collect();
            prop_assert_eq!(asymptotic_ratio(&sys(&[1], &s)).unwrap(), ExactRational::new(2, k + 1));
            if k >= 3 {
                let s: Vec<i64> = (3..=k).collect();
                prop_assert_eq!(
                    asymptotic_ratio(&sys(&[1, 2], &s)).unwrap(),
                    ExactRational::new(6 * k, (k + 1) * (k + 2))
                );
            }
        }

        #[test]
        fn ratio_in_unit_interval_and_complements(
            r in prop::collection::btree_set(1i64..30, 1..4),
            s in prop::collection::btree_set(30i64..60, 1..4),
        ) {
            let r: Vec<i64> = r.into_iter().collect();
            let s: Vec<i64> = s.into_iter().collect();
            let a = sys(&r, &s);
            prop_assume!(a.theorem_applicable());
            let b = sys(&s, &r);
            let x = asymptotic_ratio(&a).unwrap();
            let y = asymptotic_ratio(&b).unwrap();
            prop_assert!(x >= ExactRational::zero() && x <= ExactRational::one());
            prop_assert!(&x + &y <= ExactRational::one());
        }

        #[test]
        fn r_order_does_not_matter(
            r in prop::collection::btree_set(1i64..25, 1..5),
            s in prop::collection::btree_set(25i64..50, 1..4),
            shuffle in any::<u64>(),
        ) {
            let sorted: Vec<i64> = r.into_iter().collect();
            let mut permuted = sorted.clone();
            let len = permuted.len();
            for k in (1..len).rev() {
                permuted.swap(k, (shuffle as usize >> k) % (k + 1));
            }
            let s: Vec<i64> = s.into_iter().collect();
            prop_assert_eq!(
                asymptotic_ratio_raw(&permuted, &s).unwrap(),
                asymptotic_ratio_raw(&sorted, &s).unwrap()
            );
        }
    }
}
