//! Closed-form bounds and a step-by-step verifier for the lower-bound
//! proof chain on partition families.
//!
//! The chain, evaluated literally on a t-by-d matrix of cell sizes
//! `k[i][j]` (cyclic in j):
//!
//! 1. for each consecutive column pair, the set-pair inequality
//!    `sum_i 1/C(k[i][j] + k[i][j+1], k[i][j]) <= 1`, hence the total
//!    over all d cyclic pairs is at most d (this step needs the family
//!    hypothesis; on raw matrices it is reported but may fail);
//! 2. Jensen's inequality for the convex extension `f` of
//!    `m -> 1/C(m, m/2)`: `f(2S/(td)) <= (1/(td)) * sum f(k[i][j] + k[i][j+1])`
//!    where `S` is the total weight;
//! 3. the conclusion `S >= (td/2) * log2 t`, base 2 because the
//!    derivation closes with `C(n, r) <= 2^n`.
//!
//! Binomial reciprocals are summed in exact rational arithmetic while the
//! arguments stay small, falling back to floating point with a 1e-12
//! comparison slack, so the comparison against 1 never fails on rounding.

use crate::qi::{verify_family_property, PartitionFamily};
use crate::{Error, Result};
use num::{BigInt, BigRational, BigUint, FromPrimitive};
use serde::Serialize;

/// Largest binomial argument still summed exactly.
const EXACT_ARG_LIMIT: u64 = 300;
/// Comparison slack for the floating-point fallback.
const FLOAT_SLACK: f64 = 1e-12;

/// Matrix of cell sizes `k[i][j] = |A_i^j|` with the cyclic column
/// convention `k[i][d] = k[i][0]`. Requires `t >= 2` and `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    entries: Vec<Vec<u64>>,
}

impl WeightMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        let t = entries.len();
        if t < 2 {
            return Err(Error::InvalidArgument("weight matrix needs t >= 2".into()));
        }
        let d = entries[0].len();
        if d < 2 {
            return Err(Error::InvalidArgument("weight matrix needs d >= 2".into()));
        }
        if entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument("ragged weight matrix".into()));
        }
        Ok(WeightMatrix { entries })
    }

    pub fn from_family(f: &PartitionFamily) -> Result<Self> {
        WeightMatrix::new(
            f.rows()
                .iter()
                .map(|r| r.classes().iter().map(|c| c.len() as u64).collect())
                .collect(),
        )
    }

    pub fn t(&self) -> usize {
        self.entries.len()
    }

    pub fn d(&self) -> usize {
        self.entries[0].len()
    }

    /// Entry with the cyclic convention in the column index.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j % self.d()]
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }
}

/// One column pair's set-pair sum; `ok` is `sum <= 1` (exact while the
/// arguments allow it).
#[derive(Clone, Debug, Serialize)]
pub struct PairSum {
    pub col_a: usize,
    pub col_b: usize,
    pub sum: f64,
    pub ok: bool,
}

/// Literal evaluation of every inequality in the lower-bound chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub t: usize,
    pub d: usize,
    /// Cyclic consecutive column pairs (0,1), (1,2), .., (d-1,0).
    pub pair_sums: Vec<PairSum>,
    pub bollobas_total: f64,
    /// Total of the pair sums is at most d.
    pub bollobas_total_ok: bool,
    pub jensen_lhs: f64,
    pub jensen_rhs: f64,
    pub jensen_ok: bool,
    pub total_weight: u64,
    /// `(t*d/2) * log2 t`.
    pub final_lower_bound: f64,
    pub final_ok: bool,
    pub all_ok: bool,
}

/// Sum and verdict of `sum_i 1/C(k[i][j] + k[i][j2], k[i][j]) <= 1` for
/// two columns of a family satisfying the family property (checked; the
/// set-pair theorem's hypotheses come from that property). Column
/// indices are 0-based.
pub fn bollobas_check(f: &PartitionFamily, j: usize, j2: usize) -> Result<(f64, bool)> {
    let d = f.d();
    if j >= d || j2 >= d || j == j2 {
        return Err(Error::InvalidArgument(format!(
            "need two distinct columns below d={d}, got {j} and {j2}"
        )));
    }
    if !verify_family_property(f).valid {
        return Err(Error::InvalidArgument(
            "family property fails; the set-pair hypotheses do not hold".into(),
        ));
    }
    let pairs: Vec<(u64, u64)> = f
        .rows()
        .iter()
        .map(|r| {
            (
                r.classes()[j].len() as u64,
                r.classes()[j2].len() as u64,
            )
        })
        .collect();
    let (sum, ok, _) = reciprocal_binomial_sum(&pairs);
    Ok((sum, ok))
}

/// Sums `1/C(a+b, a)`; returns the float value, the `<= 1` verdict and
/// the exact rational when all arguments were within the exact range.
fn reciprocal_binomial_sum(pairs: &[(u64, u64)]) -> (f64, bool, Option<BigRational>) {
    let mut float_sum = 0.0;
    for &(a, b) in pairs {
        float_sum += inv_binomial_f64(a + b, a);
    }
    if pairs.iter().all(|&(a, b)| a + b <= EXACT_ARG_LIMIT) {
        let mut exact = BigRational::from_integer(BigInt::from(0));
        for &(a, b) in pairs {
            let binom = BigInt::from(binomial_big(a + b, a));
            exact += BigRational::new(BigInt::from(1), binom);
        }
        let ok = exact <= BigRational::from_integer(BigInt::from(1));
        (float_sum, ok, Some(exact))
    } else {
        (float_sum, float_sum <= 1.0 + FLOAT_SLACK, None)
    }
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut result = BigUint::from_u64(1).unwrap();
    for i in 1..=k {
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// `1/C(n, k)` as a product of ratios; stays in range for any n and
/// underflows gracefully to zero.
fn inv_binomial_f64(n: u64, k: u64) -> f64 {
    let k = k.min(n.saturating_sub(k));
    let mut r = 1.0;
    for i in 1..=k {
        r *= i as f64 / (n - k + i) as f64;
    }
    r
}

/// Reciprocal central binomial `1/C(m, m/2)` for even `m`.
fn inv_central_binomial(m: u64) -> f64 {
    if m <= 120 {
        // exact in u128, then one rounding
        let mut c: u128 = 1;
        let k = m / 2;
        for i in 1..=k {
            c = c * (k + i) as u128 / i as u128;
        }
        1.0 / c as f64
    } else {
        inv_binomial_f64(m, m / 2)
    }
}

/// The convex extension of `m -> 1/C(m, m/2)`: exact on even integers,
/// linear in between, with `f(0) = 1`.
pub fn f_interp(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "f is defined for x >= 0, got {x}"
        )));
    }
    if x > 10_000.0 {
        // below the smallest subnormal long before this point
        return Ok(0.0);
    }
    let lower = 2 * (x / 2.0).floor() as u64;
    let f0 = inv_central_binomial(lower);
    if x == lower as f64 {
        return Ok(f0);
    }
    let f1 = inv_central_binomial(lower + 2);
    Ok(f0 + (x - lower as f64) / 2.0 * (f1 - f0))
}

/// Evaluates the whole chain on a weight matrix. When the matrix comes
/// from a valid family all three verdicts must hold; on a raw matrix the
/// set-pair step has no hypothesis behind it and only the Jensen and
/// final verdicts are meaningful.
pub fn jensen_chain_check(k: &WeightMatrix) -> ChainReport {
    let t = k.t();
    let d = k.d();
    let mut pair_sums = Vec::with_capacity(d);
    let mut total_float = 0.0;
    let mut total_exact = Some(BigRational::from_integer(BigInt::from(0)));
    for j in 0..d {
        let pairs: Vec<(u64, u64)> = (0..t).map(|i| (k.get(i, j), k.get(i, j + 1))).collect();
        let (sum, ok, exact) = reciprocal_binomial_sum(&pairs);
        total_float += sum;
        total_exact = match (total_exact, exact) {
            (Some(acc), Some(e)) => Some(acc + e),
            _ => None,
        };
        pair_sums.push(PairSum {
            col_a: j,
            col_b: (j + 1) % d,
            sum,
            ok,
        });
    }
    let bollobas_total_ok = match &total_exact {
        Some(exact) => *exact <= BigRational::from_integer(BigInt::from(d as u64)),
        None => total_float <= d as f64 + FLOAT_SLACK,
    };

    let total_weight = k.total();
    let td = (t * d) as f64;
    let jensen_lhs = f_interp(2.0 * total_weight as f64 / td).expect("argument is nonnegative");
    let mut jensen_rhs = 0.0;
    for j in 0..d {
        for i in 0..t {
            jensen_rhs +=
                f_interp((k.get(i, j) + k.get(i, j + 1)) as f64).expect("argument is nonnegative");
        }
    }
    jensen_rhs /= td;
    let jensen_ok = jensen_lhs <= jensen_rhs + FLOAT_SLACK * jensen_rhs.max(1.0);

    let final_lower_bound = td / 2.0 * (t as f64).log2();
    let final_ok =
        total_weight as f64 >= final_lower_bound - FLOAT_SLACK * final_lower_bound.max(1.0);

    let all_ok = pair_sums.iter().all(|p| p.ok) && bollobas_total_ok && jensen_ok && final_ok;
    ChainReport {
        t,
        d,
        pair_sums,
        bollobas_total: total_float,
        bollobas_total_ok,
        jensen_lhs,
        jensen_rhs,
        jensen_ok,
        total_weight,
        final_lower_bound,
        final_ok,
        all_ok,
    }
}

/// `(d/2) * t * log2 t`, the proven lower bound on the weight of any
/// family with the family property (and so on `scc(K_t(d))`).
pub fn lower_bound_scc_multipartite(t: usize, d: usize) -> Result<f64> {
    if t < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "bound needs t, d >= 2, got t={t}, d={d}"
        )));
    }
    Ok(d as f64 / 2.0 * t as f64 * (t as f64).log2())
}

/// Same shape with a natural logarithm, reported alongside the base-2
/// value in experiment output.
pub fn lower_bound_scc_multipartite_ln(t: usize, d: usize) -> Result<f64> {
    if t < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "bound needs t, d >= 2, got t={t}, d={d}"
        )));
    }
    Ok(d as f64 / 2.0 * t as f64 * (t as f64).ln())
}

/// `(e^2 + 1) * n * d * ceil(ln((n-1)/(d-1)))`, the probabilistic upper
/// bound on `scc` for graphs whose complement has maximum degree `d - 1`.
pub fn djo_upper_bound(n: usize, d: usize) -> Result<f64> {
    if d < 2 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "bound needs n > d >= 2, got n={n}, d={d}"
        )));
    }
    let e2p1 = std::f64::consts::E.powi(2) + 1.0;
    let log_term = (((n - 1) as f64) / ((d - 1) as f64)).ln().ceil();
    Ok(e2p1 * (n * d) as f64 * log_term)
}

/// `floor(n^2/4)`: every n-vertex graph has a representation with this
/// many labels, tight on the balanced complete bipartite graph.
pub fn egp_bound(n: usize) -> usize {
    n * n / 4
}

/// `floor(n^2/2)`: every n-vertex graph has a cover of this weight,
/// tight exactly on the balanced complete bipartite graph.
pub fn katona_tarjan_bound(n: usize) -> usize {
    n * n / 2
}
