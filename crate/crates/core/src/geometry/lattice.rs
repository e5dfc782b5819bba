//! The lattice `{x ∈ Z^k : x·e = 0}` and the correspondence between
//! partitions of `n` and integer points `κ` with
//! `n·(a, b) + Σ κ_i v_i >= 0`, where `(a, b)` is a Bézout vector for `e`
//! and `v_1..v_{k-1}` are the rows of a triangular basis.

use crate::error::{Error, Result};
use crate::system::{gcd_chain, suffix_gcds, PartSystem};

/// A triangular basis: row `i` vanishes before position `i` and has the
/// gcd-chain entry `d_i > 0` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    e: Vec<u64>,
    rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn e(&self) -> &[u64] {
        &self.e
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<i64> {
        self.rows.iter().enumerate().map(|(i, row)| row[i]).collect()
    }

    /// Adopts caller-supplied rows after checking both basis invariants.
    pub fn from_rows(e: &[u64], rows: Vec<Vec<i64>>) -> Result<Self> {
        let chain = gcd_chain(e)?;
        if rows.len() != e.len() - 1 {
            return Err(Error::InconsistentInput(format!(
                "expected {} rows, got {}",
                e.len() - 1,
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != e.len() {
                return Err(Error::InconsistentInput(format!("row {i} has wrong length")));
            }
            if row[..i].iter().any(|&x| x != 0) || row[i] != chain[i] as i64 {
                return Err(Error::InconsistentInput(format!(
                    "row {i} is not triangular with leading entry {}",
                    chain[i]
                )));
            }
            if dot(row, e) != 0 {
                return Err(Error::InconsistentInput(format!("row {i} is not orthogonal to e")));
            }
        }
        Ok(LatticeBasis { e: e.to_vec(), rows })
    }
}

fn dot(row: &[i64], e: &[u64]) -> i128 {
    row.iter().zip(e).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// `(g, x, y)` with `a·x + b·y = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Integer coefficients `c` with `Σ c_i e_i = gcd(e)`, built by chaining
/// two-term extended gcds and then shrinking each coefficient against the
/// following one.
pub fn bezout_vector(e: &[u64]) -> Result<(Vec<i64>, u64)> {
    if e.is_empty() {
        return Err(Error::PreconditionViolated("empty vector".into()));
    }
    let mut coeffs: Vec<i128> = vec![1];
    let mut g = e[0] as i128;
    for &x in &e[1..] {
        let (ng, u, v) = ext_gcd(g, x as i128);
        for c in coeffs.iter_mut() {
            *c *= u;
        }
        coeffs.push(v);
        g = ng;
    }
    // Adding t·(e_{i+1}/g_i', -e_i/g_i') to a neighbouring pair keeps the sum.
    for i in 0..coeffs.len().saturating_sub(1) {
        let (ei, ej) = (e[i] as i128, e[i + 1] as i128);
        let pair_g = ext_gcd(ei, ej).0;
        let step = ej / pair_g;
        let t = round_div(coeffs[i], step);
        coeffs[i] -= t * step;
        coeffs[i + 1] += t * (ei / pair_g);
    }
    let coeffs = coeffs
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::InconsistentInput("Bézout coefficient overflow".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((coeffs, g as u64))
}

/// Nearest integer to `a / d` for `d > 0`, ties rounding down.
fn round_div(a: i128, d: i128) -> i128 {
    (2 * a + d - 1).div_euclid(2 * d)
}

/// Triangular basis of `{x : x·e = 0}` with diagonal `gcd_chain(e)`.
///
/// Rows are built bottom-up: row `i` takes `d_i` at position `i` and a
/// Bézout combination of `e_{i+1..}` after it, then each later entry is
/// reduced into `(-d_j/2, d_j/2]` using row `j`.
pub fn lattice_basis(e: &[u64]) -> Result<LatticeBasis> {
    let chain = gcd_chain(e)?;
    let suffix = suffix_gcds(e);
    let k = e.len();
    let mut rows: Vec<Vec<i64>> = vec![Vec::new(); k - 1];
    for i in (0..k - 1).rev() {
        let (tail, _) = bezout_vector(&e[i + 1..])?;
        let scale = (e[i] / suffix[i]) as i128;
        let mut row = vec![0i128; k];
        row[i] = chain[i] as i128;
        for (slot, &c) in row[i + 1..].iter_mut().zip(&tail) {
            *slot = -scale * c as i128;
        }
        for j in i + 1..k - 1 {
            let d = chain[j] as i128;
            let q = round_div(row[j], d);
            if q != 0 {
                for (slot, &v) in row.iter_mut().zip(&rows[j]).skip(j) {
                    *slot -= q * v as i128;
                }
            }
        }
        rows[i] = row
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::InconsistentInput("basis entry overflow".into())))
            .collect::<Result<_>>()?;
    }
    let basis = LatticeBasis { e: e.to_vec(), rows };
    debug_assert!(LatticeBasis::from_rows(e, basis.rows.clone()).is_ok());
    Ok(basis)
}

/// A basis together with a Bézout vector, enough to move between partitions
/// and `κ` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    basis: LatticeBasis,
    bezout: Vec<i64>,
}

impl LatticeEmbedding {
    /// Uses `R` then `S` as coordinates. Needs `I = ∅` and `gcd(R ∪ S) = 1`.
    pub fn new(sys: &PartSystem) -> Result<Self> {
        require_no_free_parts(sys)?;
        sys.require_coprime()?;
        let e = sys.rs_concat();
        let (bezout, _) = bezout_vector(&e)?;
        Self::with_parts(lattice_basis(&e)?, bezout)
    }

    /// Checks that `bezout · e = 1`.
    pub fn with_parts(basis: LatticeBasis, bezout: Vec<i64>) -> Result<Self> {
        if bezout.len() != basis.e.len() || dot(&bezout, &basis.e) != 1 {
            return Err(Error::InconsistentInput(
                "Bézout vector must satisfy a·r + b·s = 1".into(),
            ));
        }
        Ok(LatticeEmbedding { basis, bezout })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn bezout(&self) -> &[i64] {
        &self.bezout
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows.len()
    }

    /// The unique `κ` with `n·(a, b) + Σ κ_i v_i = multiplicities`.
    pub fn partition_to_k(&self, n: u64, multiplicities: &[u64]) -> Result<Vec<i128>> {
        let e = &self.basis.e;
        if multiplicities.len() != e.len() {
            return Err(Error::InconsistentInput(format!(
                "expected {} multiplicities, got {}",
                e.len(),
                multiplicities.len()
            )));
        }
        let weight: i128 = multiplicities.iter().zip(e).map(|(&c, &p)| c as i128 * p as i128).sum();
        if weight != n as i128 {
            return Err(Error::InconsistentInput(format!(
                "multiplicities sum to {weight}, not {n}"
            )));
        }
        let mut residual: Vec<i128> = multiplicities
            .iter()
            .zip(&self.bezout)
            .map(|(&c, &a)| c as i128 - n as i128 * a as i128)
            .collect();
        let mut kappa = Vec::with_capacity(self.dimension());
        for (i, row) in self.basis.rows.iter().enumerate() {
            let lead = row[i] as i128;
            if residual[i] % lead != 0 {
                return Err(Error::InconsistentInput(format!(
                    "coordinate {i} is not a multiple of {lead}"
                )));
            }
            let k = residual[i] / lead;
            for (slot, &v) in residual.iter_mut().zip(row) {
                *slot -= k * v as i128;
            }
            kappa.push(k);
        }
        debug_assert!(residual.iter().all(|&x| x == 0));
        Ok(kappa)
    }

    /// `n·(a, b) + Σ κ_i v_i`; a partition exactly when every entry is `>= 0`.
    pub fn k_to_partition(&self, n: u64, kappa: &[i128]) -> Vec<i128> {
        let mut coords: Vec<i128> = self.bezout.iter().map(|&a| n as i128 * a as i128).collect();
        for (row, &k) in self.basis.rows.iter().zip(kappa) {
            for (slot, &v) in coords.iter_mut().zip(row) {
                *slot += k * v as i128;
            }
        }
        coords
    }

    /// Every integer `κ` whose image is nonnegative, found by walking `κ`
    /// one coordinate at a time. Triangularity pins coordinate `i` of the
    /// image to `base + κ_i d_i`, which must lie in `[0, n / e_i]`.
    pub fn enumerate_k_space(&self, n: u64, max_nodes: u64) -> Result<Vec<Vec<i128>>> {
        let k = self.basis.e.len();
        let start: Vec<i128> = self.bezout.iter().map(|&a| n as i128 * a as i128).collect();
        let mut walk = KWalk {
            emb: self,
            n,
            nodes: 0,
            limit: max_nodes,
            kappa: Vec::with_capacity(k - 1),
            out: Vec::new(),
        };
        walk.visit(0, start)?;
        Ok(walk.out)
    }
}

struct KWalk<'a> {
    emb: &'a LatticeEmbedding,
    n: u64,
    nodes: u64,
    limit: u64,
    kappa: Vec<i128>,
    out: Vec<Vec<i128>>,
}

impl KWalk<'_> {
    fn visit(&mut self, i: usize, coords: Vec<i128>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        let rows = &self.emb.basis.rows;
        if i == rows.len() {
            if *coords.last().expect("k >= 2") >= 0 {
                self.out.push(self.kappa.clone());
            }
            return Ok(());
        }
        let row = &rows[i];
        let lead = row[i] as i128;
        let cap = (self.n / self.emb.basis.e[i]) as i128;
        let base = coords[i];
        let lo = (-base).div_euclid(lead) + i128::from((-base).rem_euclid(lead) != 0);
        let hi = (cap - base).div_euclid(lead);
        for k in lo..=hi {
            let next: Vec<i128> = coords
                .iter()
                .zip(row)
                .map(|(&c, &v)| c + k * v as i128)
                .collect();
            self.kappa.push(k);
            let res = self.visit(i + 1, next);
            self.kappa.pop();
            res?;
        }
        Ok(())
    }
}

fn require_no_free_parts(sys: &PartSystem) -> Result<()> {
    if sys.i().is_empty() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(
            "the lattice correspondence needs I = ∅".into(),
        ))
    }
}

/// [`LatticeEmbedding::partition_to_k`] with explicit pieces.
pub fn partition_to_k(
    sys: &PartSystem,
    basis: &LatticeBasis,
    bezout: &[i64],
    n: u64,
    multiplicities: &[u64],
) -> Result<Vec<i128>> {
    require_no_free_parts(sys)?;
    if basis.e() != sys.rs_concat().as_slice() {
        return Err(Error::InconsistentInput("basis does not match R then S".into()));
    }
    LatticeEmbedding::with_parts(basis.clone(), bezout.to_vec())?.partition_to_k(n, multiplicities)
}
