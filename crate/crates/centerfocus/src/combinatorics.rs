//! Combinatorial machinery behind the focal-value closed forms: the
//! generating-series coefficients, the λ-recurrence with its closed form, and
//! the harmonic-expansion μ-recurrences for lines of `P̄₁^{2k} P₁`.
//!
//! Both the recurrences and the closed forms are implemented, so the tests
//! machine-check the identities instead of trusting them. Everything here is
//! exact integer/rational arithmetic; no floating point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::trig_algebra::{rat, rat_int, Rational, TrigPoly};

/// Domain errors for the combinatorial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    /// The generating-series identity is only claimed for k ≤ n−1.
    #[error("k = {k} out of range; the identity requires 0 ≤ k ≤ n−1 = {max}")]
    KOutOfRange { k: u32, max: u32 },
    /// λ indices must satisfy 0 ≤ j ≤ k.
    #[error("invalid index pair (k, j) = ({k}, {j}); need 0 ≤ j ≤ k")]
    InvalidIndexPair { k: u32, j: u32 },
    /// The λ table parameter m is a positive integer.
    #[error("m must be ≥ 1, got {0}")]
    InvalidM(u32),
    /// μ-tables and harmonic lines need a nondegenerate first harmonic.
    #[error("degenerate seed: A₁¹ = B₁¹ = 0")]
    DegenerateSeed,
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

// ---------------------------------------------------------------------------
// Generating series
// ---------------------------------------------------------------------------

/// Coefficient of `y^k` in `(1 + y + … + y^{n−1})^n`, valid for 0 ≤ k ≤ n−1;
/// always equals `C(n+k−1, k)`.
pub fn generating_series_coeff(n: u32, k: u32) -> Result<BigInt, CombinatoricsError> {
    generating_series_coeff_with_tail(n, k, &[])
}

/// Same coefficient with an explicit tail `Σ_i tail[i] · y^{n+i}` appended to
/// the base polynomial before exponentiation. For k ≤ n−1 the tail cannot
/// reach degree k, so the result is tail-independent — that independence is
/// what the property tests exercise.
pub fn generating_series_coeff_with_tail(
    n: u32,
    k: u32,
    tail: &[Rational],
) -> Result<BigInt, CombinatoricsError> {
    if n == 0 || k >= n {
        return Err(CombinatoricsError::KOutOfRange { k, max: n.saturating_sub(1) });
    }
    let deg = k as usize;
    // Scale the base by the lcm of the tail denominators so the truncated
    // power runs over integers (no per-operation gcd normalization).
    let mut scale = BigInt::one();
    for t in tail {
        scale = scale.lcm(t.denom());
    }
    let mut base = vec![BigInt::zero(); deg + 1];
    for (d, slot) in base.iter_mut().enumerate() {
        if (d as u32) < n {
            *slot = scale.clone();
        }
    }
    for (i, t) in tail.iter().enumerate() {
        let idx = n as usize + i;
        if idx <= deg {
            base[idx] += t.numer() * (&scale / t.denom());
        }
    }
    // Truncated binary powering to degree k.
    let mut acc = vec![BigInt::zero(); deg + 1];
    acc[0] = BigInt::one();
    let mut sq = base;
    let mut e = n;
    loop {
        if e & 1 == 1 {
            acc = trunc_mul(&acc, &sq, deg);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = trunc_mul(&sq, &sq, deg);
    }
    let c = Rational::new(acc[deg].clone(), scale.pow(n));
    debug_assert!(c.denom().is_one(), "series coefficient must be an integer");
    Ok(c.to_integer())
}

/// Dense polynomial product truncated at `y^deg`.
fn trunc_mul(a: &[BigInt], b: &[BigInt], deg: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); deg + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(deg + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// λ coefficients
// ---------------------------------------------------------------------------

/// Table of λ_k^j values for the odd-degree parameterization n = 2m+1,
/// filled by the defining recurrence
/// `λ_k^j = (2/(k−j)) Σ_{i=j}^{k−1} λ_i^j`,
/// `λ_k^k = C(2m+k+1, k) − Σ_{j<k} λ_k^j`, seeded with λ₀⁰ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    m: u32,
    k_max: u32,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl LambdaTable {
    /// Fills the table for all 0 ≤ j ≤ k ≤ `k_max`; requires m ≥ 1.
    pub fn compute(m: u32, k_max: u32) -> Result<Self, CombinatoricsError> {
        if m == 0 {
            return Err(CombinatoricsError::InvalidM(m));
        }
        let entries = lambda_entries(2 * u64::from(m) + 1, k_max);
        Ok(LambdaTable { m, k_max, entries })
    }

    /// The odd-case parameter m (n = 2m+1).
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Largest k the table covers.
    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// λ_k^j, when within range.
    pub fn get(&self, k: u32, j: u32) -> Option<&Rational> {
        self.entries.get(&(k, j))
    }
}

/// Fills λ entries for a generic degree parameter `n` (diagonal uses
/// `C(n+k, k)`, which reads `C(2m+k+1, k)` when n = 2m+1, with the
/// even-case adaptation when n = 2m).
fn lambda_entries(n: u64, k_max: u32) -> BTreeMap<(u32, u32), Rational> {
    let mut entries: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    entries.insert((0, 0), Rational::one());
    for k in 1..=k_max {
        let mut row_sum = Rational::zero();
        for j in 0..k {
            let mut s = Rational::zero();
            for i in j..k {
                s += entries.get(&(i, j)).expect("filled in increasing k");
            }
            let v = s * rat(2, i64::from(k - j));
            row_sum += &v;
            entries.insert((k, j), v);
        }
        let diag = Rational::from_integer(binomial(n + u64::from(k), u64::from(k))) - row_sum;
        entries.insert((k, k), diag);
    }
    entries
}

/// λ_k^j by the defining recurrence (odd-degree parameter m ≥ 1).
pub fn lambda_coeff(k: u32, j: u32, m: u32) -> Result<Rational, CombinatoricsError> {
    if j > k {
        return Err(CombinatoricsError::InvalidIndexPair { k, j });
    }
    let table = LambdaTable::compute(m, k)?;
    Ok(table.get(k, j).expect("within computed range").clone())
}

/// Closed form `λ_k^j = (k−j+1)·C(2m+j−1, j)`; equals [`lambda_coeff`] on all
/// valid inputs (that equality is the identity the tests verify).
pub fn lambda_closed(k: u32, j: u32, m: u32) -> Result<Rational, CombinatoricsError> {
    if j > k {
        return Err(CombinatoricsError::InvalidIndexPair { k, j });
    }
    if m == 0 {
        return Err(CombinatoricsError::InvalidM(m));
    }
    let c = binomial(2 * u64::from(m) + u64::from(j) - 1, u64::from(j));
    Ok(Rational::from_integer(c) * rat_int(i64::from(k - j) + 1))
}

/// λ_k^j for an arbitrary degree n ≥ 2 via the same recurrence with the
/// diagonal adapted to `C(n+k, k)`. For n = 2m+1 this is exactly the
/// [`LambdaTable`] value; for n = 2m it is the even-case analogue used by the
/// closed-form series expressions.
pub fn lambda_coeff_for_degree(n: u32, k: u32, j: u32) -> Result<Rational, CombinatoricsError> {
    if j > k {
        return Err(CombinatoricsError::InvalidIndexPair { k, j });
    }
    let entries = lambda_entries(u64::from(n), k);
    Ok(entries.get(&(k, j)).expect("within computed range").clone())
}

/// Closed form for arbitrary degree n ≥ 2: `λ_k^j = (k−j+1)·C(n+j−2, j)`.
pub fn lambda_closed_for_degree(n: u32, k: u32, j: u32) -> Result<Rational, CombinatoricsError> {
    if j > k {
        return Err(CombinatoricsError::InvalidIndexPair { k, j });
    }
    let c = binomial(u64::from(n) + u64::from(j) - 2, u64::from(j));
    Ok(Rational::from_integer(c) * rat_int(i64::from(k - j) + 1))
}

// ---------------------------------------------------------------------------
// μ table and harmonic lines
// ---------------------------------------------------------------------------

/// Table of the ratios μ_{2k+1}^{2j+1} relating harmonic lines of
/// `P̄₁^{2k} P₁` to their diagonal entries (`A_{2k+1}^{2j+1} =
/// μ_{2k+1}^{2j+1} A_{2j+1}^{2j+1}` and likewise for B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    a1: Rational,
    b1: Rational,
    lambda_const: Rational,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl MuTable {
    /// The first-harmonic cosine coefficient A₁¹.
    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    /// The first-harmonic sine coefficient B₁¹.
    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    /// λ = ½(A₁¹² + B₁¹²).
    pub fn lambda_const(&self) -> &Rational {
        &self.lambda_const
    }

    /// μ at `(row, col)` = (2k+1, 2j+1); zero above the diagonal, per the
    /// convention μ_i^j = 0 for j > i.
    pub fn get(&self, row: u32, col: u32) -> Rational {
        if col > row {
            return Rational::zero();
        }
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over stored `((row, col), μ)` entries.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.entries.iter().map(|(rc, v)| (*rc, v))
    }
}

/// Fills μ_{2k+1}^{2j+1} for all rows 2k+1 ≤ 2K+1 by the recurrence
///
/// `μ_{2k+1}^{2j+1} = ((2k−1)/2)·((2/(2j−1))·μ_{2k−1}^{2j−1}
///                    − (λ²/(2(2j+3)))·μ_{2k−1}^{2j+3})`,
///
/// honoring μ_j^j = 1, μ_i^j = 0 for j > i, and the auxiliary convention
/// `μ_{2k−1}^{−1} = −μ_{2k−1}^1·μ₃¹` inside the j = 0 boundary. Row 3 is the
/// seed `μ₃¹ = λ/2` (the recurrence propagates rows 5, 7, …). Rejects the
/// degenerate case A₁¹ = B₁¹ = 0 where λ = 0 empties the recurrence.
pub fn mu_table(big_k: u32, a1: &Rational, b1: &Rational) -> Result<MuTable, CombinatoricsError> {
    if a1.is_zero() && b1.is_zero() {
        return Err(CombinatoricsError::DegenerateSeed);
    }
    let lambda = (a1 * a1 + b1 * b1) * rat(1, 2);
    let lambda_sq = &lambda * &lambda;
    let mu3_1 = &lambda * rat(1, 2);

    let mut entries: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    entries.insert((1, 1), Rational::one());
    if big_k >= 1 {
        entries.insert((3, 1), mu3_1.clone());
        entries.insert((3, 3), Rational::one());
    }
    for k in 2..=i64::from(big_k) {
        let row = (2 * k + 1) as u32;
        let prev_row = (2 * k - 1) as u32;
        let prev_map: BTreeMap<u32, Rational> = entries
            .iter()
            .filter(|((r, _), _)| *r == prev_row)
            .map(|((_, c), v)| (*c, v.clone()))
            .collect();
        let prev = |col: i64| -> Rational {
            if col == -1 {
                // μ_{2k−1}^{−1} = −μ_{2k−1}^1 · μ₃¹
                return -(prev_map.get(&1).cloned().unwrap_or_else(Rational::zero) * &mu3_1);
            }
            if col < 1 || col as u32 > prev_row {
                return Rational::zero();
            }
            prev_map.get(&(col as u32)).cloned().unwrap_or_else(Rational::zero)
        };
        let factor = rat(2 * k - 1, 2);
        for j in 0..k {
            let col = (2 * j + 1) as u32;
            let term1 = prev(2 * j - 1) * rat(2, 1) * rat(1, 2 * j - 1);
            let term2 = prev(2 * j + 3) * &lambda_sq * rat(1, 2 * (2 * j + 3));
            let v = (&term1 - &term2) * &factor;
            if !v.is_zero() {
                entries.insert((row, col), v);
            }
        }
        entries.insert((row, row), Rational::one());
    }
    Ok(MuTable { a1: a1.clone(), b1: b1.clone(), lambda_const: lambda, entries })
}

/// One Fourier line: the expansion
/// `P̄₁^{2k} P₁ = Σ_j (A_{2k+1}^{2j+1} cos(2j+1)θ + B_{2k+1}^{2j+1} sin(2j+1)θ)`
/// holding only odd harmonics up to its order 2k+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierLine {
    order: u32,
    modes: BTreeMap<u32, (Rational, Rational)>,
}

impl FourierLine {
    /// The line's order 2k+1.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `(A, B)` coefficients of harmonic `2j+1` (zeros when absent).
    pub fn mode(&self, harmonic: u32) -> (Rational, Rational) {
        self.modes
            .get(&harmonic)
            .cloned()
            .unwrap_or_else(|| (Rational::zero(), Rational::zero()))
    }

    /// Iterates over stored `(harmonic, A, B)` modes.
    pub fn modes(&self) -> impl Iterator<Item = (u32, &Rational, &Rational)> {
        self.modes.iter().map(|(h, (a, b))| (*h, a, b))
    }

    /// The line as an exact Fourier series (for direct comparisons).
    pub fn to_trig_poly(&self) -> TrigPoly {
        let mut t = TrigPoly::zero();
        for (h, (a, b)) in &self.modes {
            t = &t + &TrigPoly::harmonic_term(*h, a.clone(), b.clone());
        }
        t
    }
}

/// Computes the Fourier line of `P̄₁^{2k} P₁` by the boundary-dispatched
/// recurrences, starting from line 1 = `(A₁¹, B₁¹)` and stepping through the
/// seed products `A₂ = −A₁¹B₁¹`, `B₂ = ½(A₁¹² − B₁¹²)`.
///
/// The result equals the direct expansion
/// `trig_mul(trig_pow(P̄₁, 2k), P₁)` coefficient-for-coefficient, and each
/// mode factors through [`mu_table`] as `A_{2k+1}^{2j+1} =
/// μ_{2k+1}^{2j+1}·A_{2j+1}^{2j+1}` (the identity the tests verify).
pub fn harmonic_expansion(
    k: u32,
    a1: &Rational,
    b1: &Rational,
) -> Result<FourierLine, CombinatoricsError> {
    if a1.is_zero() && b1.is_zero() {
        return Err(CombinatoricsError::DegenerateSeed);
    }
    let a2 = -(a1 * b1);
    let b2 = (a1 * a1 - b1 * b1) * rat(1, 2);

    let mut modes: BTreeMap<u32, (Rational, Rational)> = BTreeMap::new();
    modes.insert(1, (a1.clone(), b1.clone()));
    for kk in 1..=i64::from(k) {
        let prev = modes;
        let pa = |col: i64| -> Rational {
            if col < 1 {
                return Rational::zero();
            }
            prev.get(&(col as u32)).map(|(a, _)| a.clone()).unwrap_or_else(Rational::zero)
        };
        let pb = |col: i64| -> Rational {
            if col < 1 {
                return Rational::zero();
            }
            prev.get(&(col as u32)).map(|(_, b)| b.clone()).unwrap_or_else(Rational::zero)
        };
        let mut next: BTreeMap<u32, (Rational, Rational)> = BTreeMap::new();
        for j in 0..=kk {
            let (va, vb) = if j == 0 {
                // Boundary at the first harmonic.
                let f = rat(2 * kk - 1, 2);
                let a = (&(-(&a2) * pb(1)) + &(&b2 * pa(1))
                    + (&(-(&a2) * pb(3)) + &(&b2 * pa(3))) * rat(1, 3))
                    * &f;
                let b = (&(-(&a2) * pa(1)) - &(&b2 * pb(1))
                    + (&(&a2 * pa(3)) + &(&b2 * pb(3))) * rat(1, 3))
                    * &f;
                (a, b)
            } else if j == kk {
                // Top harmonic 2k+1.
                let a = (&(-(&a2) * pb(2 * kk - 1)) - &(&b2 * pa(2 * kk - 1))) * rat(1, 2);
                let b = (&(&a2 * pa(2 * kk - 1)) - &(&b2 * pb(2 * kk - 1))) * rat(1, 2);
                (a, b)
            } else if j == kk - 1 {
                // Second-from-top harmonic 2k−1 (reachable only for k ≥ 2).
                let f = rat(2 * kk - 1, 2 * (2 * kk - 3));
                let a = (&(-(&a2) * pb(2 * kk - 3)) - &(&b2 * pa(2 * kk - 3))) * &f;
                let b = (&(&a2 * pa(2 * kk - 3)) - &(&b2 * pb(2 * kk - 3))) * &f;
                (a, b)
            } else {
                // Interior harmonics 1 ≤ j ≤ k−2.
                let f = rat(2 * kk - 1, 2);
                let lo = rat(1, 2 * j - 1);
                let hi = rat(1, 2 * j + 3);
                let a = ((&(-(&a2) * pb(2 * j - 1)) - &(&b2 * pa(2 * j - 1))) * &lo
                    + (&(-(&a2) * pb(2 * j + 3)) + &(&b2 * pa(2 * j + 3))) * &hi)
                    * &f;
                let b = ((&(&a2 * pa(2 * j - 1)) - &(&b2 * pb(2 * j - 1))) * &lo
                    + (&(&a2 * pa(2 * j + 3)) + &(&b2 * pb(2 * j + 3))) * &hi)
                    * &f;
                (a, b)
            };
            if !va.is_zero() || !vb.is_zero() {
                next.insert((2 * j + 1) as u32, (va, vb));
            }
        }
        modes = next;
    }
    Ok(FourierLine { order: 2 * k + 1, modes })
}
