//! Arithmetic-progression part sets
//!
//! ```text
//! R_N = {r, r+m, ..., r+m(N-1)}    S_N = {s, s+m, ..., s+m(N-1)}
//! I_N = {1, ..., max(r,s)+m(N-1)} \ (R_N ∪ S_N)
//! ```
//!
//! and `C_{n,N} = p_{R_N>S_N,I_N}(n) / p_{R_N S_N I_N}(n)`.
//!
//! The `n → ∞` limit of `C_{n,N}` is available four ways: the exact finite
//! alternating sum, the Beta closed form when `s = m`, an adaptive
//! quadrature of the nested Euler-type integral, and a log-Gamma form for
//! very large `N`. The conjecture harness tabulates `C_{n,N}` on a grid next
//! to those limits. It only reports; it never asserts the double-limit
//! interchange.

mod quadrature;

pub use quadrature::{integrate, Tolerance};

use num_bigint::BigUint;
use num_integer::Integer;
use statrs::function::gamma::ln_gamma;

use crate::counter::{bias_table_with_budget, BiasCount, CountBudget};
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::system::{factorial_q, falling_product, system_from_parts, PartSystem};

/// `(r, s, m, N)` with `r ≢ s (mod m)` and `gcd(r, s, m) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProgressionSpec {
    r: u64,
    s: u64,
    m: u64,
    n_sets: u64,
}

impl ProgressionSpec {
    pub fn new(r: u64, s: u64, m: u64, n_sets: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidProgression(msg));
        if r == 0 || s == 0 {
            return bad(format!("r = {r} and s = {s} must be positive"));
        }
        if m < 2 {
            return bad(format!("modulus m = {m} must be at least 2"));
        }
        if n_sets == 0 {
            return bad("N must be at least 1".into());
        }
        if r % m == s % m {
            return bad(format!("r = {r} and s = {s} are congruent mod {m}"));
        }
        let g = r.gcd(&s).gcd(&m);
        if g != 1 {
            return bad(format!("gcd(r, s, m) = {g}"));
        }
        Ok(ProgressionSpec { r, s, m, n_sets })
    }

    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn s(&self) -> u64 {
        self.s
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n_sets(&self) -> u64 {
        self.n_sets
    }

    pub fn with_n_sets(&self, n_sets: u64) -> Result<Self> {
        Self::new(self.r, self.s, self.m, n_sets)
    }

    fn frac(&self, x: u64) -> ExactRational {
        ExactRational::new(x as i64, self.m as i64)
    }
}

/// Materialises `(R_N, S_N, I_N)`.
pub fn build_sets(spec: &ProgressionSpec) -> PartSystem {
    let prog = |start: u64| -> Vec<u64> { (0..spec.n_sets).map(|i| start + spec.m * i).collect() };
    let r = prog(spec.r);
    let s = prog(spec.s);
    let top = spec.r.max(spec.s) + spec.m * (spec.n_sets - 1);
    let i: Vec<u64> = (1..=top)
        .filter(|x| !r.contains(x) && !s.contains(x))
        .collect();
    system_from_parts(&r, &s, &i).expect("progressions with r ≢ s (mod m) are disjoint")
}

/// `lim_n C_{n,N} = C · (r/m + N - 1)_N · (s/m + N - 1)_N` with
/// `C = Σ_{i=1}^N (-1)^(i-1) / ((N-i)! (i-1)! ((s+r)/m + N + i - 2)_N (r/m + i - 1))`.
pub fn c_limit_exact(spec: &ProgressionSpec) -> ExactRational {
    let n = spec.n_sets;
    let a = spec.frac(spec.r);
    let b = spec.frac(spec.s);
    let ab = spec.frac(spec.r + spec.s);
    let one = ExactRational::one();
    let mut sum = ExactRational::zero();
    for i in 1..=n {
        let shift = ExactRational::from((n + i - 2) as i64);
        let denom = factorial_q(n - i)
            * factorial_q(i - 1)
            * falling_product(&(&ab + &shift), n as u32)
            * (&a + ExactRational::from((i - 1) as i64));
        let term = &one / denom;
        sum = if i % 2 == 1 { sum + term } else { sum - term };
    }
    let top = ExactRational::from((n - 1) as i64);
    sum * falling_product(&(&a + &top), n as u32) * falling_product(&(&b + &top), n as u32)
}

fn beta_preconditions(r: u64, m: u64, n_sets: u64) -> Result<()> {
    if m < 2 || r == 0 || n_sets == 0 {
        return Err(Error::InvalidProgression(format!(
            "need r >= 1, m >= 2, N >= 1 (got r = {r}, m = {m}, N = {n_sets})"
        )));
    }
    if r.is_multiple_of(m) || r.gcd(&m) != 1 {
        return Err(Error::InvalidProgression(format!(
            "need gcd(r, m) = 1 and r ≢ 0 (mod m), got r = {r}, m = {m}"
        )));
    }
    Ok(())
}

/// The `s = m` limit through `B(r/m, 2N) = (2N-1)! / ∏_{j<2N} (r/m + j)`:
/// `C = B(r/m, 2N) / (N! (N-1)!)`, times `(r/m + N - 1)_N · N!`.
pub fn c_limit_beta(r: u64, m: u64, n_sets: u64) -> Result<ExactRational> {
    beta_preconditions(r, m, n_sets)?;
    let a = ExactRational::new(r as i64, m as i64);
    let rising: ExactRational = (0..2 * n_sets)
        .map(|j| &a + ExactRational::from(j as i64))
        .product();
    let beta = factorial_q(2 * n_sets - 1) / rising;
    let c = beta / (factorial_q(n_sets) * factorial_q(n_sets - 1));
    let top = ExactRational::from((n_sets - 1) as i64);
    Ok(c * falling_product(&(&a + top), n_sets as u32) * factorial_q(n_sets))
}

/// `Γ(r/m + N) Γ(2N) / (Γ(N) Γ(r/m + 2N))` through log-Gamma.
pub fn gamma_form(r: u64, m: u64, n_sets: u64) -> Result<f64> {
    beta_preconditions(r, m, n_sets)?;
    let a = r as f64 / m as f64;
    let n = n_sets as f64;
    Ok((ln_gamma(a + n) + ln_gamma(2.0 * n) - ln_gamma(n) - ln_gamma(a + 2.0 * n)).exp())
}

/// Largest `N` accepted by [`c_limit_quadrature`].
pub const QUADRATURE_MAX_N: u64 = 12;

/// The limit from the nested integral
/// `∫_0^1 x^{s/m-1}(1-x)^{N-1} ∫_0^x t^{r/m-1}(1-t)^{N-1} dt dx`
/// times `(r/m+N-1)_N (s/m+N-1)_N / ((N-1)!)^2`.
///
/// `t = v^m` and `x = w^m` turn both integrands into polynomials:
/// `∫_0^1 m w^{s-1}(1-w^m)^{N-1} ∫_0^w m v^{r-1}(1-v^m)^{N-1} dv dw`.
pub fn c_limit_quadrature(spec: &ProgressionSpec) -> Result<f64> {
    let n = spec.n_sets;
    if n > QUADRATURE_MAX_N {
        return Err(Error::PreconditionViolated(format!(
            "quadrature supports N <= {QUADRATURE_MAX_N}, got {n}"
        )));
    }
    let m = spec.m as i32;
    let mf = spec.m as f64;
    let pow_n = (n - 1) as i32;
    let tol = Tolerance::default();
    let kernel = |start: u64, y: f64| mf * y.powi(start as i32 - 1) * (1.0 - y.powi(m)).powi(pow_n);
    let inner = |w: f64| integrate(|v| Ok(kernel(spec.r, v)), 0.0, w, tol);
    let outer = integrate(|w| Ok(kernel(spec.s, w) * inner(w)?), 0.0, 1.0, tol)?;

    let top = ExactRational::from((n - 1) as i64);
    let prefactor = falling_product(&(spec.frac(spec.r) + &top), n as u32)
        * falling_product(&(spec.frac(spec.s) + &top), n as u32)
        / factorial_q(n - 1).pow(2);
    Ok(prefactor.to_f64() * outer)
}

/// `2^{-r/m}`, the conjectured `N → ∞` limit when `s = m`.
pub fn s_equals_m_target(r: u64, m: u64) -> f64 {
    (-(r as f64) / m as f64).exp2()
}

/// One `(n, N)` entry of a [`ConvergenceTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct TableCell {
    pub n: u64,
    pub n_sets: u64,
    /// `None` when the cell's DP budget was exceeded.
    pub counts: Option<BiasCount>,
    /// `greater / total`; `None` when `total = 0` or the budget ran out.
    pub ratio: Option<ExactRational>,
    pub budget_exceeded: bool,
    /// `ratio - target`, when both exist.
    pub gap_to_target: Option<f64>,
    /// `ratio - lim_n C_{n,N}`.
    pub gap_to_limit: Option<f64>,
}

/// Per-`N` summary.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub n_sets: u64,
    /// `lim_n C_{n,N}` from [`c_limit_exact`].
    pub limit: ExactRational,
    pub gap_to_target: Option<f64>,
    /// `|C_{n,N} - limit|` is non-increasing along the `n` grid (defined cells only).
    pub cells_monotone_toward_limit: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub r: u64,
    pub s: u64,
    pub m: u64,
    /// Sorted by `(N, n)`.
    pub cells: Vec<TableCell>,
    /// Sorted by `N`.
    pub limits: Vec<LimitRow>,
    /// `2^{-r/m}` when `s = m`; otherwise no target is known.
    pub target: Option<f64>,
    /// Per-`N` limits move monotonically toward `target` along the `N` grid.
    pub limits_monotone_toward_target: Option<bool>,
}

impl ConvergenceTable {
    pub fn any_budget_exceeded(&self) -> bool {
        self.cells.iter().any(|c| c.budget_exceeded)
    }
}

fn non_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] <= w[0])
}

/// Exact `C_{n,N}` on the grid, with the per-`N` limits alongside.
pub fn conjecture_table(
    r: u64,
    s: u64,
    m: u64,
    n_grid: &[u64],
    n_sets_grid: &[u64],
    budget: CountBudget,
) -> Result<ConvergenceTable> {
    if n_grid.is_empty() || n_sets_grid.is_empty() {
        return Err(Error::PreconditionViolated("grids must be nonempty".into()));
    }
    let mut ns = n_grid.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut big_ns = n_sets_grid.to_vec();
    big_ns.sort_unstable();
    big_ns.dedup();
    let target = (s == m).then(|| s_equals_m_target(r, m));
    let n_max = *ns.last().expect("nonempty");

    let mut cells = Vec::new();
    let mut limits = Vec::new();
    for &big_n in &big_ns {
        let spec = ProgressionSpec::new(r, s, m, big_n)?;
        let sys = build_sets(&spec);
        let limit = c_limit_exact(&spec);
        let limit_f = limit.to_f64();
        let table = match bias_table_with_budget(&sys, n_max, budget) {
            Ok(t) => Some(t),
            Err(Error::BudgetExceeded { .. }) => {
                log::warn!("budget exceeded for N = {big_n} up to n = {n_max}; cells left undefined");
                None
            }
            Err(e) => return Err(e),
        };
        let mut gaps = Vec::new();
        for &n in &ns {
            let counts = table.as_ref().map(|t| t[n as usize].clone());
            let ratio = counts.as_ref().and_then(BiasCount::ratio);
            let ratio_f = ratio.as_ref().map(ExactRational::to_f64);
            if let Some(x) = ratio_f {
                gaps.push((x - limit_f).abs());
            }
            cells.push(TableCell {
                n,
                n_sets: big_n,
                budget_exceeded: table.is_none(),
                counts,
                gap_to_target: ratio_f.zip(target).map(|(x, t)| x - t),
                gap_to_limit: ratio_f.map(|x| x - limit_f),
                ratio,
            });
        }
        limits.push(LimitRow {
            n_sets: big_n,
            gap_to_target: target.map(|t| limit_f - t),
            cells_monotone_toward_limit: non_increasing(&gaps),
            limit,
        });
    }
    let limits_monotone_toward_target = target.map(|t| {
        let gaps: Vec<f64> = limits.iter().map(|l| (l.limit.to_f64() - t).abs()).collect();
        non_increasing(&gaps)
    });
    Ok(ConvergenceTable {
        r,
        s,
        m,
        cells,
        limits,
        target,
        limits_monotone_toward_target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionReport {
    pub spec: ProgressionSpec,
    pub n: u64,
    pub greater: BigUint,
    pub less: BigUint,
    /// Smallest `n0 <= n` with `greater > less` at every `k` in `n0..=n`.
    pub onset: Option<u64>,
}

impl DirectionReport {
    pub fn greater_wins(&self) -> bool {
        self.greater > self.less
    }
}

/// Compares `p_{R_N>S_N,I_N}` with `p_{R_N<S_N,I_N}` at every `k <= n`.
pub fn bias_direction_scan(spec: &ProgressionSpec, n: u64) -> Result<DirectionReport> {
    if spec.r >= spec.s {
        return Err(Error::PreconditionViolated(format!(
            "direction scan needs r < s, got r = {}, s = {}",
            spec.r, spec.s
        )));
    }
    let table = bias_table_with_budget(&build_sets(spec), n, CountBudget::default())?;
    let onset = table
        .iter()
        .rev()
        .take_while(|c| c.greater > c.less)
        .last()
        .map(|c| c.n);
    let last = table.into_iter().last().expect("n + 1 rows");
    Ok(DirectionReport {
        spec: *spec,
        n,
        greater: last.greater,
        less: last.less,
        onset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptote::asymptotic_ratio;
    use crate::system::validate_system;

    fn spec(r: u64, s: u64, m: u64, n: u64) -> ProgressionSpec {
        ProgressionSpec::new(r, s, m, n).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(ProgressionSpec::new(1, 3, 2, 1), Err(Error::InvalidProgression(_))));
        assert!(matches!(ProgressionSpec::new(2, 4, 2, 1), Err(Error::InvalidProgression(_))));
        assert!(matches!(ProgressionSpec::new(2, 4, 6, 1), Err(Error::InvalidProgression(_))));
        assert!(matches!(ProgressionSpec::new(1, 2, 1, 1), Err(Error::InvalidProgression(_))));
        assert!(matches!(ProgressionSpec::new(1, 2, 2, 0), Err(Error::InvalidProgression(_))));
        assert!(ProgressionSpec::new(2, 4, 3, 2).is_ok());
    }

    #[test]
    fn sets_from_definition() {
        let sys = build_sets(&spec(1, 2, 2, 3));
        assert_eq!((sys.r(), sys.s(), sys.i()), (&[1, 3, 5][..], &[2, 4, 6][..], &[][..]));
        let sys = build_sets(&spec(2, 3, 4, 2));
        assert_eq!((sys.r(), sys.s(), sys.i()), (&[2, 6][..], &[3, 7][..], &[1, 4, 5][..]));
        let sys = build_sets(&spec(1, 3, 3, 2));
        assert_eq!((sys.r(), sys.s(), sys.i()), (&[1, 4][..], &[3, 6][..], &[2, 5][..]));
    }

    #[test]
    fn single_term_limits() {
        assert_eq!(c_limit_exact(&spec(1, 2, 2, 1)), ExactRational::new(2, 3));
        for (r, m) in [(1, 3), (2, 3), (3, 4), (5, 7)] {
            assert_eq!(c_limit_exact(&spec(r, m, m, 1)), ExactRational::new(m as i64, (r + m) as i64));
        }
    }

    #[test]
    fn beta_values() {
        assert_eq!(c_limit_beta(1, 2, 1).unwrap(), ExactRational::new(2, 3));
        assert_eq!(c_limit_beta(1, 3, 1).unwrap(), ExactRational::new(3, 4));
        assert_eq!(c_limit_beta(2, 3, 1).unwrap(), ExactRational::new(3, 5));
        assert!(c_limit_beta(2, 4, 1).is_err());
        assert!(c_limit_beta(3, 3, 1).is_err());
    }

    #[test]
    fn exact_matches_theorem_on_progressions() {
        let sys = build_sets(&spec(1, 2, 2, 6));
        assert_eq!(c_limit_exact(&spec(1, 2, 2, 6)), asymptotic_ratio(&sys).unwrap());
    }

    #[test]
    fn quadrature_examples() {
        let v = c_limit_quadrature(&spec(1, 2, 2, 1)).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
        for sp in [spec(1, 2, 2, 6), spec(2, 3, 4, 3)] {
            let v = c_limit_quadrature(&sp).unwrap();
            assert!((v - c_limit_exact(&sp).to_f64()).abs() < 1e-8, "{sp:?}");
        }
        assert!(c_limit_quadrature(&spec(1, 2, 2, 13)).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_form(1, 2, 1).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let big = gamma_form(1, 2, 1_000_000).unwrap();
        assert!((big - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-5);
        let big = gamma_form(2, 3, 1_000_000).unwrap();
        assert!((big - 0.629_960_524_947_436_6).abs() < 1e-5);
    }

    #[test]
    fn empty_partition_cell() {
        let t = conjecture_table(1, 2, 2, &[0], &[1], CountBudget::default()).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cells[0].ratio, Some(ExactRational::zero()));
        assert_eq!(t.target, Some(std::f64::consts::FRAC_1_SQRT_2));
    }

    #[test]
    fn table_order_and_budget() {
        let t = conjecture_table(1, 2, 2, &[40, 10, 20], &[3, 1], CountBudget::default()).unwrap();
        let keys: Vec<(u64, u64)> = t.cells.iter().map(|c| (c.n_sets, c.n)).collect();
        assert_eq!(keys, vec![(1, 10), (1, 20), (1, 40), (3, 10), (3, 20), (3, 40)]);
        assert_eq!(t.limits.len(), 2);

        let tight = CountBudget { max_cell_updates: 100 };
        let t = conjecture_table(1, 2, 2, &[40], &[2], tight).unwrap();
        assert!(t.any_budget_exceeded());
        assert_eq!(t.cells[0].ratio, None);
    }

    #[test]
    fn cells_are_counter_ratios() {
        let t = conjecture_table(2, 3, 4, &[25], &[2], CountBudget::default()).unwrap();
        let sys = validate_system(&[2, 6], &[3, 7], &[1, 4, 5]).unwrap();
        let direct = crate::counter::count_bias(&sys, 25);
        assert_eq!(t.cells[0].counts.as_ref(), Some(&direct));
    }

    #[test]
    fn direction_examples() {
        let rep = bias_direction_scan(&spec(1, 2, 2, 2), 100).unwrap();
        assert!(rep.greater_wins());
        let rep = bias_direction_scan(&spec(1, 3, 3, 1), 50).unwrap();
        assert!(rep.greater_wins());
        assert!(matches!(
            bias_direction_scan(&spec(2, 1, 3, 1), 10),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
