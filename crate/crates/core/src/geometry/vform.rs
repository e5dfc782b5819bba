//! Volumes of the `(a, b)`-form regions
//!
//! ```text
//! V_{A,B} = vol { u >= 0 : A·u_A + B·u_B <= 1,  Σ u_A < Σ u_B }
//! ```
//!
//! in dimension `d = |A| + |B|`, and the volume of the region where a
//! partition has more `R` parts than `S` parts.
//!
//! Two routes are provided and tested against each other:
//!
//! * [`vform_volume`] runs the reduction
//!   `V_{A,B} = 1/(d!·b_1·∏(a_i+b_1)·∏_{j>=2}(b_j-b_1)) - V_{(b_1, A+b_1),(b_j-b_1)_{j>=2}}`
//!   down to `V_{·,∅} = 0`, always eliminating the first entry of `B`.
//! * [`vform_closed_form`] sums the resulting alternating series directly.
//!
//! Entries may be negative part-way through a reduction. Only the
//! denominators have to stay nonzero.

use crate::asymptote::greater_sum_raw;
use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::system::{factorial_q, PartSystem};

/// The pair `(A, B)` naming `V_{A,B}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VForm {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl VForm {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Self {
        VForm { a, b }
    }

    pub fn dimension(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// `V_{B,A}`.
    pub fn swapped(&self) -> VForm {
        VForm::new(self.b.clone(), self.a.clone())
    }

    /// The volume-preserving change of variables that removes `b_1`:
    /// `V_{A,B} = V_{(b_j - b_1)_{j>=2}, (b_1, A + b_1)}`.
    pub fn reduce(&self) -> Result<VForm> {
        let (&first, rest) = self
            .b
            .split_first()
            .ok_or_else(|| Error::PreconditionViolated("cannot reduce a form with empty B".into()))?;
        let a = rest.iter().map(|&x| x - first).collect();
        let b = std::iter::once(first)
            .chain(self.a.iter().map(|&x| x + first))
            .collect();
        Ok(VForm::new(a, b))
    }
}

/// `1 / (d! · ∏ coeffs)`: the simplex `u >= 0, coeffs·u <= 1` when every
/// coefficient is positive.
pub fn simplex_volume(coeffs: &[i64]) -> Result<ExactRational> {
    let prod: ExactRational = coeffs.iter().map(|&c| ExactRational::from(c)).product();
    let denom = factorial_q(coeffs.len() as u64) * prod;
    denom
        .checked_recip()
        .ok_or_else(|| Error::DegenerateDenominator(format!("simplex with coefficients {coeffs:?}")))
}

/// `V_{A,B}` by repeated reduction on the first entry of `B`.
pub fn vform_volume(form: &VForm) -> Result<ExactRational> {
    let d_fact = factorial_q(form.dimension() as u64);
    let mut a = form.a.clone();
    let mut b = form.b.clone();
    let mut acc = ExactRational::zero();
    let mut positive = true;
    while let Some((&first, rest)) = b.split_first() {
        let degenerate = || {
            Error::DegenerateDenominator(format!(
                "reducing V_{{{a:?},{b:?}}} on b_1 = {first}"
            ))
        };
        let mut denom = &d_fact * ExactRational::from(first);
        for &x in &a {
            denom = denom * ExactRational::from(x + first);
        }
        for &x in rest {
            denom = denom * ExactRational::from(x - first);
        }
        let term = denom.checked_recip().ok_or_else(degenerate)?;
        acc = if positive { acc + term } else { acc - term };
        positive = !positive;

        let next_a: Vec<i64> = std::iter::once(first).chain(a.iter().map(|&x| x + first)).collect();
        let next_b: Vec<i64> = rest.iter().map(|&x| x - first).collect();
        // The new form is V_{next_a, next_b}, entered with the opposite sign.
        a = next_a;
        b = next_b;
    }
    Ok(acc)
}

/// `V_{A,B} = (1/d!) Σ_j (-1)^(j-1) / (b_j ∏_{i>j}(b_i-b_j) ∏_{t<j}(b_j-b_t) ∏_k (a_k+b_j))`.
pub fn vform_closed_form(form: &VForm) -> Result<ExactRational> {
    let q = ExactRational::from;
    let b = &form.b;
    let mut sum = ExactRational::zero();
    for (j, &bj) in b.iter().enumerate() {
        let mut denom = q(bj);
        for &bi in &b[j + 1..] {
            denom = denom * q(bi - bj);
        }
        for &bt in &b[..j] {
            denom = denom * q(bj - bt);
        }
        for &ak in &form.a {
            denom = denom * q(ak + bj);
        }
        let term = denom.checked_recip().ok_or_else(|| {
            Error::DegenerateDenominator(format!("closed form term {} of {form:?}", j + 1))
        })?;
        sum = if j % 2 == 0 { sum + term } else { sum - term };
    }
    Ok(sum / factorial_q(form.dimension() as u64))
}

/// `(V_{A,B}, V_{B,A}, 1/(d!·∏A·∏B))`; the first two sum to the third.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementCheck {
    pub forward: ExactRational,
    pub backward: ExactRational,
    pub simplex: ExactRational,
}

impl ComplementCheck {
    pub fn holds(&self) -> bool {
        &self.forward + &self.backward == self.simplex
    }
}

pub fn complement_identity_check(a: &[i64], b: &[i64]) -> Result<ComplementCheck> {
    for side in [a, b] {
        if let Some(&x) = side.iter().find(|&&x| x < 1) {
            return Err(Error::NonPositivePart(x));
        }
        let mut sorted = side.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::PreconditionViolated(format!("repeated entry in {side:?}")));
        }
    }
    let form = VForm::new(a.to_vec(), b.to_vec());
    let all: Vec<i64> = a.iter().chain(b).copied().collect();
    Ok(ComplementCheck {
        forward: vform_volume(&form)?,
        backward: vform_volume(&form.swapped())?,
        simplex: simplex_volume(&all)?,
    })
}

/// The pieces of the more-`R`-than-`S` volume, with `d = l + m - 1` and
/// coordinates `u = (c_1..c_l, f_1..f_{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasVolumeParts {
    /// `1 / (d! ∏r ∏_{i<m} s_i)`.
    pub simplex: ExactRational,
    /// `V_{(r),(s_1..s_{m-1})}`.
    pub v1: ExactRational,
    /// `V_{(s_i - s_m)_{i<m},(r_j + s_m)}`.
    pub v2: ExactRational,
    /// `simplex - v1 - v2`.
    pub volume: ExactRational,
}

fn split_largest_s(sys: &PartSystem) -> (Vec<i64>, Vec<i64>, i64) {
    let r: Vec<i64> = sys.r().iter().map(|&x| x as i64).collect();
    let s: Vec<i64> = sys.s().iter().map(|&x| x as i64).collect();
    let (&s_m, head) = s.split_last().expect("S is nonempty");
    (r, head.to_vec(), s_m)
}

/// Decomposition of the bias region computed with [`vform_volume`].
pub fn bias_volume_parts(sys: &PartSystem) -> Result<BiasVolumeParts> {
    let (r, s_head, s_m) = split_largest_s(sys);
    let coords: Vec<i64> = r.iter().chain(&s_head).copied().collect();
    let simplex = simplex_volume(&coords)?;
    let v1 = vform_volume(&VForm::new(r.clone(), s_head.clone()))?;
    let v2 = vform_volume(&VForm::new(
        s_head.iter().map(|&x| x - s_m).collect(),
        r.iter().map(|&x| x + s_m).collect(),
    ))?;
    let volume = &simplex - &v1 - &v2;
    Ok(BiasVolumeParts {
        simplex,
        v1,
        v2,
        volume,
    })
}

/// Volume of `u >= 0, r·u_R + s_head·u_S <= 1, Σ(s_m + r_j)u_j + Σ(s_i - s_m)u_{l+i} > 1`.
/// Dividing by `s_m` gives the coefficient of `n^{l+m-1}` in `p_{R>S}(n)`.
pub fn bias_volume(sys: &PartSystem) -> Result<ExactRational> {
    Ok(bias_volume_parts(sys)?.volume)
}

/// `(s_m / d!) Σ_i (-1)^(i-1) / (r_i ∏(r_j - r_i) ∏(r_i - r_t) ∏_k (s_k + r_i))`.
pub fn bias_volume_closed_form(sys: &PartSystem) -> Result<ExactRational> {
    let (r, mut s, s_m) = split_largest_s(sys);
    s.push(s_m);
    let d = (r.len() + s.len() - 1) as u64;
    Ok(greater_sum_raw(&r, &s)? * ExactRational::from(s_m) / factorial_q(d))
}
