//! Exact algebra of trigonometric polynomials and their θ-power extensions.
//!
//! Four closed families cover everything the analysis needs:
//!
//! * [`TrigPoly`] — finite Fourier series `c + Σ_j (a_j cos jθ + b_j sin jθ)`
//!   with exact rational coefficients.
//! * [`PolyTrig`] — finite sums of `θ^m · TrigPoly` terms; closed under
//!   products and antiderivatives, so iterated integration from 0 stays exact.
//! * [`PiPolynomial`] — polynomials in π with rational coefficients; the exact
//!   value of any full-period integral or evaluation at θ = 2π.
//! * [`HomogPoly`] — homogeneous bivariate polynomials `Σ p_ij x^i y^j`,
//!   restricted to the unit circle via [`circle_restriction`].
//!
//! All arithmetic is exact; zero tests are decisions, never tolerance checks.
//! Floating-point conversion ([`TrigPoly::eval_f64`] and friends) exists only
//! for numeric cross-checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; stored in lowest terms with positive
/// denominator (guaranteed by `num-rational`). All symbolic arithmetic in this
/// crate is over this type.
pub type Rational = BigRational;

/// Small-integer rational constructor: `rat(n, d)` = n/d.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `num` (denominator 1) or `num/den`.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"num"` or `"num/den"` (arbitrary precision, optional sign) back
/// into a rational; `None` on malformed input or zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Errors raised by constructors in this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigAlgebraError {
    /// A coefficient was supplied for exponents that do not match the degree.
    #[error("exponent pair ({i},{j}) does not sum to homogeneous degree {degree}")]
    DegreeMismatch { i: u32, j: u32, degree: u32 },
    /// Homogeneous polynomials here always have degree ≥ 1.
    #[error("homogeneous degree must be at least 1")]
    ZeroDegree,
}

// ---------------------------------------------------------------------------
// TrigPoly
// ---------------------------------------------------------------------------

/// Finite Fourier series with exact rational coefficients.
///
/// Stored sparsely: `harmonics` maps j ≥ 1 to `(cos_coeff, sin_coeff)`; an
/// entry with both coefficients zero is never kept, so `==` is semantic
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPoly {
    constant: Rational,
    harmonics: BTreeMap<u32, (Rational, Rational)>,
}

impl TrigPoly {
    /// The zero series.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A constant series.
    pub fn constant(c: Rational) -> Self {
        TrigPoly { constant: c, harmonics: BTreeMap::new() }
    }

    /// `c · cos jθ` (folds to a constant when j = 0).
    pub fn cos(j: u32, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_cos(j, c);
        t
    }

    /// `c · sin jθ` (zero when j = 0).
    pub fn sin(j: u32, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_sin(j, c);
        t
    }

    /// `a cos jθ + b sin jθ`.
    pub fn harmonic_term(j: u32, cos_c: Rational, sin_c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_cos(j, cos_c);
        t.add_sin(j, sin_c);
        t
    }

    /// True iff every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.harmonics.is_empty()
    }

    /// The mean value (coefficient of the constant mode).
    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// `(cos_coeff, sin_coeff)` of harmonic j ≥ 1 (zeros when absent).
    pub fn harmonic(&self, j: u32) -> (Rational, Rational) {
        self.harmonics
            .get(&j)
            .cloned()
            .unwrap_or_else(|| (Rational::zero(), Rational::zero()))
    }

    /// Largest stored harmonic index (0 for a constant).
    pub fn degree(&self) -> u32 {
        self.harmonics.keys().next_back().copied().unwrap_or(0)
    }

    /// Iterates over stored harmonics `(j, cos_coeff, sin_coeff)`, j ≥ 1.
    pub fn harmonics(&self) -> impl Iterator<Item = (u32, &Rational, &Rational)> {
        self.harmonics.iter().map(|(j, (a, b))| (*j, a, b))
    }

    fn add_cos(&mut self, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        if j == 0 {
            self.constant += c;
        } else {
            let entry = self
                .harmonics
                .entry(j)
                .or_insert_with(|| (Rational::zero(), Rational::zero()));
            entry.0 += c;
            if entry.0.is_zero() && entry.1.is_zero() {
                self.harmonics.remove(&j);
            }
        }
    }

    fn add_sin(&mut self, j: u32, c: Rational) {
        if c.is_zero() || j == 0 {
            return;
        }
        let entry = self
            .harmonics
            .entry(j)
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        entry.1 += c;
        if entry.0.is_zero() && entry.1.is_zero() {
            self.harmonics.remove(&j);
        }
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        out.constant = &self.constant * s;
        for (j, (a, b)) in &self.harmonics {
            out.harmonics.insert(*j, (a * s, b * s));
        }
        out
    }

    /// `self^k` by repeated multiplication (`k = 0` gives the constant 1).
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TrigPoly::constant(Rational::one());
        for _ in 0..k {
            acc = trig_mul(&acc, self);
        }
        acc
    }

    /// Evaluates at a floating-point angle (cross-check use only).
    pub fn eval_f64(&self, theta: f64) -> f64 {
        let mut v = self.constant.to_f64().unwrap_or(f64::NAN);
        for (j, (a, b)) in &self.harmonics {
            let jt = *j as f64 * theta;
            v += a.to_f64().unwrap_or(f64::NAN) * jt.cos()
                + b.to_f64().unwrap_or(f64::NAN) * jt.sin();
        }
        v
    }

    /// Fourier coordinates as a dense vector `[const, cos1, sin1, .., cosN, sinN]`
    /// up to harmonic `max_j`; used by exact linear solves over the mode basis.
    pub fn coordinates(&self, max_j: u32) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); (2 * max_j + 1) as usize];
        v[0] = self.constant.clone();
        for (j, (a, b)) in &self.harmonics {
            assert!(*j <= max_j, "harmonic {} exceeds basis bound {}", j, max_j);
            v[(2 * j - 1) as usize] = a.clone();
            v[(2 * j) as usize] = b.clone();
        }
        v
    }
}

/// Product of two Fourier series via the product-to-sum identities; exact,
/// bilinear, commutative. Degree of the result ≤ sum of degrees.
pub fn trig_mul(a: &TrigPoly, b: &TrigPoly) -> TrigPoly {
    let half = rat(1, 2);
    // Treat the constant as the j = 0 mode so one formula covers every pair:
    // (a1 cos jθ + b1 sin jθ)(a2 cos kθ + b2 sin kθ)
    //   = ½(a1a2 − b1b2)cos(j+k)θ + ½(a1b2 + b1a2)sin(j+k)θ
    //   + ½(a1a2 + b1b2)cos(j−k)θ + ½(b1a2 − a1b2)sin(j−k)θ.
    let modes = |t: &TrigPoly| -> Vec<(i64, Rational, Rational)> {
        let mut v = Vec::with_capacity(t.harmonics.len() + 1);
        if !t.constant.is_zero() {
            v.push((0, t.constant.clone(), Rational::zero()));
        }
        for (j, (a, b)) in &t.harmonics {
            v.push((*j as i64, a.clone(), b.clone()));
        }
        v
    };
    let mut out = TrigPoly::zero();
    for (j, a1, b1) in modes(a) {
        for (k, a2, b2) in modes(b) {
            if j == 0 && k == 0 {
                out.constant += &a1 * &a2;
                continue;
            }
            let a1a2 = &a1 * &a2;
            let b1b2 = &b1 * &b2;
            let a1b2 = &a1 * &b2;
            let b1a2 = &b1 * &a2;
            let sum = (j + k) as u32;
            out.add_cos(sum, (&a1a2 - &b1b2) * &half);
            out.add_sin(sum, (&a1b2 + &b1a2) * &half);
            let diff = j - k;
            let cos_d = (&a1a2 + &b1b2) * &half;
            let sin_d = (&b1a2 - &a1b2) * &half;
            if diff >= 0 {
                out.add_cos(diff as u32, cos_d);
                out.add_sin(diff as u32, sin_d);
            } else {
                // cos is even, sin is odd in the harmonic index.
                out.add_cos((-diff) as u32, cos_d);
                out.add_sin((-diff) as u32, -sin_d);
            }
        }
    }
    out
}

impl std::ops::Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        for (j, (a, b)) in &rhs.harmonics {
            out.add_cos(*j, a.clone());
            out.add_sin(*j, b.clone());
        }
        out
    }
}

impl std::ops::Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&rat_int(-1))
    }
}

impl std::ops::Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        trig_mul(self, rhs)
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() {
            parts.push(rational_str(&self.constant));
        }
        for (j, (a, b)) in &self.harmonics {
            if !a.is_zero() {
                parts.push(format!("{}·cos({}θ)", rational_str(a), j));
            }
            if !b.is_zero() {
                parts.push(format!("{}·sin({}θ)", rational_str(b), j));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// PolyTrig
// ---------------------------------------------------------------------------

/// Finite sum of `θ^m ×` Fourier-mode terms; the home of the series
/// coefficients `a_k(θ)` and of every intermediate `∫₀^θ` value.
///
/// A `PolyTrig` whose only θ-power is 0 is exactly a [`TrigPoly`]; the
/// embedding is lossless in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyTrig {
    terms: BTreeMap<u32, TrigPoly>,
}

impl PolyTrig {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::from_trig(TrigPoly::constant(Rational::one()))
    }

    /// Embeds a pure Fourier series (θ-power 0).
    pub fn from_trig(t: TrigPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !t.is_zero() {
            terms.insert(0, t);
        }
        PolyTrig { terms }
    }

    /// `θ^m · t`.
    pub fn term(m: u32, t: TrigPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !t.is_zero() {
            terms.insert(m, t);
        }
        PolyTrig { terms }
    }

    /// True iff every term is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest θ-power present (0 when pure trig or zero).
    pub fn theta_degree(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// The Fourier part attached to θ-power `m` (zero series when absent).
    pub fn trig_at(&self, m: u32) -> TrigPoly {
        self.terms.get(&m).cloned().unwrap_or_else(TrigPoly::zero)
    }

    /// Iterates over `(θ-power, Fourier part)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &TrigPoly)> {
        self.terms.iter().map(|(m, t)| (*m, t))
    }

    /// The pure Fourier series when no positive θ-power is present.
    pub fn pure_trig(&self) -> Option<TrigPoly> {
        if self.theta_degree() == 0 {
            Some(self.trig_at(0))
        } else {
            None
        }
    }

    fn add_term(&mut self, m: u32, t: &TrigPoly) {
        if t.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(TrigPoly::zero);
        *slot = &*slot + t;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, t) in &self.terms {
            out.terms.insert(*m, t.scale(s));
        }
        out
    }

    /// Exact value at θ = 0 (only the θ⁰ cosine modes and constant survive).
    pub fn eval_at_zero(&self) -> Rational {
        match self.terms.get(&0) {
            None => Rational::zero(),
            Some(t) => {
                let mut v = t.constant.clone();
                for (_, (a, _)) in &t.harmonics {
                    v += a;
                }
                v
            }
        }
    }

    /// Evaluates at a floating-point angle (cross-check use only).
    pub fn eval_f64(&self, theta: f64) -> f64 {
        let mut v = 0.0;
        for (m, t) in &self.terms {
            v += theta.powi(*m as i32) * t.eval_f64(theta);
        }
        v
    }
}

impl std::ops::Add for &PolyTrig {
    type Output = PolyTrig;
    fn add(self, rhs: &PolyTrig) -> PolyTrig {
        let mut out = self.clone();
        for (m, t) in &rhs.terms {
            out.add_term(*m, t);
        }
        out
    }
}

impl std::ops::Sub for &PolyTrig {
    type Output = PolyTrig;
    fn sub(self, rhs: &PolyTrig) -> PolyTrig {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &PolyTrig {
    type Output = PolyTrig;
    fn neg(self) -> PolyTrig {
        self.scale(&rat_int(-1))
    }
}

impl std::ops::Mul for &PolyTrig {
    type Output = PolyTrig;
    fn mul(self, rhs: &PolyTrig) -> PolyTrig {
        let mut out = PolyTrig::zero();
        for (m1, t1) in &self.terms {
            for (m2, t2) in &rhs.terms {
                out.add_term(m1 + m2, &trig_mul(t1, t2));
            }
        }
        out
    }
}

impl From<TrigPoly> for PolyTrig {
    fn from(t: TrigPoly) -> Self {
        PolyTrig::from_trig(t)
    }
}

impl fmt::Display for PolyTrig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, t)| match m {
                0 => format!("{}", t),
                1 => format!("θ·({})", t),
                _ => format!("θ^{}·({})", m, t),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `f^k` by repeated multiplication; `f^0 = 1`.
pub fn trig_pow(f: &PolyTrig, k: u32) -> PolyTrig {
    let mut acc = PolyTrig::one();
    for _ in 0..k {
        acc = &acc * f;
    }
    acc
}

/// The primitive `F` with `F(0) = 0` and `F′ = f`, computed termwise.
///
/// `θ^m cos jθ` and `θ^m sin jθ` integrate by parts into finitely many terms;
/// a nonzero mean raises the θ-power by one. This matches the `∫₀^θ`
/// convention used throughout the analysis.
pub fn antiderivative_from_zero(f: &PolyTrig) -> PolyTrig {
    let mut out = PolyTrig::zero();
    for (m, t) in &f.terms {
        // Mean part: ∫ c·θ^m = c/(m+1) · θ^(m+1).
        if !t.constant.is_zero() {
            let c = &t.constant / rat_int(i64::from(*m) + 1);
            out.add_term(m + 1, &TrigPoly::constant(c));
        }
        for (j, (a, b)) in &t.harmonics {
            let cos_part = integrate_theta_pow_mode(*m, *j, true);
            let sin_part = integrate_theta_pow_mode(*m, *j, false);
            out = &out + &cos_part.scale(a);
            out = &out + &sin_part.scale(b);
        }
    }
    // Fix the constant of integration so the primitive vanishes at 0.
    let at_zero = out.eval_at_zero();
    if !at_zero.is_zero() {
        out.add_term(0, &TrigPoly::constant(-at_zero));
    }
    out
}

/// Indefinite integral of `θ^m cos jθ` (`is_cos`) or `θ^m sin jθ`, j ≥ 1,
/// with no constant of integration.
fn integrate_theta_pow_mode(m: u32, j: u32, is_cos: bool) -> PolyTrig {
    let inv_j = rat(1, i64::from(j));
    if is_cos {
        // ∫θ^m cos jθ = θ^m sin jθ / j − (m/j) ∫θ^(m−1) sin jθ.
        let lead = PolyTrig::term(m, TrigPoly::sin(j, inv_j.clone()));
        if m == 0 {
            lead
        } else {
            let rec = integrate_theta_pow_mode(m - 1, j, false);
            &lead - &rec.scale(&(rat_int(i64::from(m)) * &inv_j))
        }
    } else {
        // ∫θ^m sin jθ = −θ^m cos jθ / j + (m/j) ∫θ^(m−1) cos jθ.
        let lead = PolyTrig::term(m, TrigPoly::cos(j, -inv_j.clone()));
        if m == 0 {
            lead
        } else {
            let rec = integrate_theta_pow_mode(m - 1, j, true);
            &lead + &rec.scale(&(rat_int(i64::from(m)) * &inv_j))
        }
    }
}

// ---------------------------------------------------------------------------
// PiPolynomial
// ---------------------------------------------------------------------------

/// Polynomial in π with rational coefficients; the exact value of full-period
/// integrals and of evaluations at θ = 2π. Equality is coefficient-wise, so
/// zero tests on moments and focal values are exact decisions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl PiPolynomial {
    /// The zero value.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A rational constant (π-power 0).
    pub fn from_rational(c: Rational) -> Self {
        Self::term(0, c)
    }

    /// `c · π^power`.
    pub fn term(power: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        PiPolynomial { coeffs }
    }

    /// True iff every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `π^power` (zero when absent).
    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over `(π-power, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (p, c) in &self.coeffs {
            out.coeffs.insert(*p, c * s);
        }
        out
    }

    fn add_coeff(&mut self, power: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    /// Floating-point value (cross-check use only).
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(p, c)| c.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(*p as i32))
            .sum()
    }

    /// Lossless rendering as `(coefficient, π-power)` string pairs.
    pub fn coefficient_pairs(&self) -> Vec<(String, u32)> {
        self.coeffs.iter().map(|(p, c)| (rational_str(c), *p)).collect()
    }
}

impl std::ops::Add for &PiPolynomial {
    type Output = PiPolynomial;
    fn add(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_coeff(*p, c);
        }
        out
    }
}

impl std::ops::Sub for &PiPolynomial {
    type Output = PiPolynomial;
    fn sub(self, rhs: &PiPolynomial) -> PiPolynomial {
        self + &rhs.scale(&rat_int(-1))
    }
}

impl std::ops::Mul for &PiPolynomial {
    type Output = PiPolynomial;
    fn mul(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = PiPolynomial::zero();
        for (p1, c1) in &self.coeffs {
            for (p2, c2) in &rhs.coeffs {
                out.add_coeff(p1 + p2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| match p {
                0 => rational_str(c),
                1 => format!("{}·π", rational_str(c)),
                _ => format!("{}·π^{}", rational_str(c), p),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∫₀^{2π} f dθ` for a pure Fourier series: only the mean survives, giving
/// `2π · constant_term` exactly (degree ≤ 1 in π).
pub fn period_integral(f: &TrigPoly) -> PiPolynomial {
    PiPolynomial::term(1, f.constant_term() * rat_int(2))
}

/// Exact substitution θ = 2π: `cos 2πj = 1`, `sin 2πj = 0`, `θ^m = 2^m π^m`.
pub fn eval_full_period(f: &PolyTrig) -> PiPolynomial {
    let mut out = PiPolynomial::zero();
    for (m, t) in f.terms() {
        let mut value = t.constant_term().clone();
        for (_, a, _) in t.harmonics() {
            value += a;
        }
        let two_pow = Rational::from_integer(BigInt::from(2u8).pow(m));
        out.add_coeff(m, &(value * two_pow));
    }
    out
}

// ---------------------------------------------------------------------------
// HomogPoly
// ---------------------------------------------------------------------------

/// Homogeneous bivariate polynomial `Σ_{i+j=k} p_ij x^i y^j` of degree k ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    degree: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl HomogPoly {
    /// Builds a degree-`degree` polynomial from `((i, j), coefficient)` pairs,
    /// rejecting any exponent pair with `i + j ≠ degree`.
    pub fn new(
        degree: u32,
        coeffs: impl IntoIterator<Item = ((u32, u32), Rational)>,
    ) -> Result<Self, TrigAlgebraError> {
        if degree == 0 {
            return Err(TrigAlgebraError::ZeroDegree);
        }
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if i + j != degree {
                return Err(TrigAlgebraError::DegreeMismatch { i, j, degree });
            }
            if !c.is_zero() {
                let slot = map.entry((i, j)).or_insert_with(Rational::zero);
                *slot += c;
                if slot.is_zero() {
                    map.remove(&(i, j));
                }
            }
        }
        Ok(HomogPoly { degree, coeffs: map })
    }

    /// The zero polynomial of the given degree.
    pub fn zero(degree: u32) -> Self {
        HomogPoly { degree: degree.max(1), coeffs: BTreeMap::new() }
    }

    /// Homogeneous degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `x^i y^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// True iff every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterates over `((i, j), coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(ij, c)| (*ij, c))
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mono = |i: u32, j: u32| -> String {
            let xs = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{}", i),
            };
            let ys = match j {
                0 => String::new(),
                1 => "y".into(),
                _ => format!("y^{}", j),
            };
            match (xs.is_empty(), ys.is_empty()) {
                (true, true) => "1".into(),
                (false, true) => xs,
                (true, false) => ys,
                (false, false) => format!("{}·{}", xs, ys),
            }
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((i, j), c)| format!("{}·{}", rational_str(c), mono(*i, *j)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Restriction of a homogeneous polynomial to the unit circle:
/// `Σ p_ij cos^i θ sin^j θ` expanded into Fourier form.
///
/// Parity is preserved exactly: odd degree produces only odd harmonics, even
/// degree only even harmonics plus the constant.
pub fn circle_restriction(h: &HomogPoly) -> TrigPoly {
    let k = h.degree() as usize;
    let cos1 = TrigPoly::cos(1, Rational::one());
    let sin1 = TrigPoly::sin(1, Rational::one());
    // Power tables up to the degree, so each monomial is one product.
    let mut cos_pows = Vec::with_capacity(k + 1);
    let mut sin_pows = Vec::with_capacity(k + 1);
    cos_pows.push(TrigPoly::constant(Rational::one()));
    sin_pows.push(TrigPoly::constant(Rational::one()));
    for i in 1..=k {
        cos_pows.push(trig_mul(&cos_pows[i - 1], &cos1));
        sin_pows.push(trig_mul(&sin_pows[i - 1], &sin1));
    }
    let mut out = TrigPoly::zero();
    for ((i, j), c) in h.terms() {
        let m = trig_mul(&cos_pows[i as usize], &sin_pows[j as usize]);
        out = &out + &m.scale(c);
    }
    out
}
