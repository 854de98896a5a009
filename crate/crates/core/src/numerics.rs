//! Scalar arithmetic: exact rationals, multiprecision complex numbers, the
//! precision policy used by the numeric checks, and the modified theta
//! function `θ(z;p) = ∏_{n≥0}(1 − pⁿz) ∏_{m≥1}(1 − pᵐ/z)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactScalar = Rational;

/// Smallest mantissa width accepted for [`MpComplex`].
pub const MIN_PRECISION: u32 = 64;

/// Field operations shared by the exact and the multiprecision scalar types,
/// so that evaluators can be written once for both.
///
/// Constants are created "like" an existing value so that multiprecision
/// values carry their precision into the result.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, value: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `None` when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.from_i64_like(0)
    }

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn recip(&self) -> Option<Self> {
        self.one_like().div(self)
    }

    /// Integer power by repeated squaring; `None` for a negative power of zero.
    fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

impl Field for Rational {
    fn from_i64_like(&self, value: i64) -> Self {
        Rational::from(value)
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 {
            None
        } else {
            Some(Rational::from(self / rhs))
        }
    }

    fn neg(&self) -> Self {
        Rational::from(-self)
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }
}

/// Complex number with real and imaginary parts held at a common precision.
#[derive(Clone, PartialEq)]
pub struct MpComplex {
    re: Float,
    im: Float,
}

impl MpComplex {
    pub fn new(precision_bits: u32, re: Float, im: Float) -> Self {
        assert!(
            precision_bits >= MIN_PRECISION,
            "MpComplex needs at least {MIN_PRECISION} bits, got {precision_bits}"
        );
        let mut re = re;
        let mut im = im;
        re.set_prec(precision_bits);
        im.set_prec(precision_bits);
        MpComplex { re, im }
    }

    pub fn zero(precision_bits: u32) -> Self {
        Self::from_i64(precision_bits, 0)
    }

    pub fn from_i64(precision_bits: u32, value: i64) -> Self {
        Self::new(
            precision_bits,
            Float::with_val(precision_bits, value),
            Float::new(precision_bits),
        )
    }

    pub fn from_rational(precision_bits: u32, value: &Rational) -> Self {
        Self::new(
            precision_bits,
            Float::with_val(precision_bits, value),
            Float::new(precision_bits),
        )
    }

    pub fn from_rationals(precision_bits: u32, re: &Rational, im: &Rational) -> Self {
        Self::new(
            precision_bits,
            Float::with_val(precision_bits, re),
            Float::with_val(precision_bits, im),
        )
    }

    pub fn precision(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    /// Rounds (or extends) both parts to `precision_bits`.
    pub fn with_precision(&self, precision_bits: u32) -> Self {
        Self::new(precision_bits, self.re.clone(), self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.precision();
        let re2 = (&self.re * &self.re).complete(p);
        let im2 = (&self.im * &self.im).complete(p);
        re2 + im2
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        MpComplex {
            re: self.re.clone(),
            im: Float::with_val(self.precision(), -&self.im),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.precision();
        let r = self.abs();
        let half_sum = Float::with_val(p, &r + &self.re) / 2u32;
        let half_diff = Float::with_val(p, &r - &self.re) / 2u32;
        let re = half_sum.max(&Float::new(p)).sqrt();
        let mut im = half_diff.max(&Float::new(p)).sqrt();
        if self.im.is_sign_negative() {
            im = -im;
        }
        MpComplex::new(p, re, im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `log2 |z|` as an `f64`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if MpComplex::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        self.abs().log2().to_f64()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MpComplex({})", self)
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 40 significant digits is plenty for digests and diagnostics and
        // keeps the text independent of the working precision.
        let re = self.re.to_string_radix_round(10, Some(40), Round::Nearest);
        if self.im.is_zero() {
            write!(f, "{re}")
        } else {
            let im = self.im.to_string_radix_round(10, Some(40), Round::Nearest);
            write!(f, "({re}, {im})")
        }
    }
}

impl Add for &MpComplex {
    type Output = MpComplex;

    fn add(self, rhs: &MpComplex) -> MpComplex {
        let p = self.precision();
        MpComplex {
            re: (&self.re + &rhs.re).complete(p),
            im: (&self.im + &rhs.im).complete(p),
        }
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;

    fn sub(self, rhs: &MpComplex) -> MpComplex {
        let p = self.precision();
        MpComplex {
            re: (&self.re - &rhs.re).complete(p),
            im: (&self.im - &rhs.im).complete(p),
        }
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;

    fn mul(self, rhs: &MpComplex) -> MpComplex {
        let p = self.precision();
        if self.im.is_zero() && rhs.im.is_zero() {
            return MpComplex {
                re: (&self.re * &rhs.re).complete(p),
                im: Float::new(p),
            };
        }
        let ac = (&self.re * &rhs.re).complete(p);
        let bd = (&self.im * &rhs.im).complete(p);
        let ad = (&self.re * &rhs.im).complete(p);
        let bc = (&self.im * &rhs.re).complete(p);
        MpComplex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Div for &MpComplex {
    type Output = MpComplex;

    /// Division by zero yields non-finite parts; use [`Field::div`] for a
    /// checked quotient.
    fn div(self, rhs: &MpComplex) -> MpComplex {
        let p = self.precision();
        if rhs.im.is_zero() {
            return MpComplex {
                re: (&self.re / &rhs.re).complete(p),
                im: (&self.im / &rhs.re).complete(p),
            };
        }
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        MpComplex {
            re: num.re / &den,
            im: num.im / &den,
        }
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;

    fn neg(self) -> MpComplex {
        let p = self.precision();
        MpComplex {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }
}

impl Field for MpComplex {
    fn from_i64_like(&self, value: i64) -> Self {
        MpComplex::from_i64(self.precision(), value)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if MpComplex::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        MpComplex::is_zero(self)
    }
}

/// Working, guard and agreement widths for the multiprecision checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    working_bits: u32,
    guard_bits: u32,
    agreement_bits: u32,
}

impl PrecisionPolicy {
    pub const DEFAULT_GUARD_BITS: u32 = 32;

    pub fn new(working_bits: u32, guard_bits: u32, agreement_bits: u32) -> Result<Self> {
        if working_bits < MIN_PRECISION {
            return Err(Error::Domain(format!(
                "working precision {working_bits} is below {MIN_PRECISION} bits"
            )));
        }
        if guard_bits == 0 || agreement_bits == 0 {
            return Err(Error::Domain("guard and agreement widths must be positive".into()));
        }
        if agreement_bits + guard_bits > working_bits {
            return Err(Error::Domain(format!(
                "agreement_bits {agreement_bits} exceeds working_bits {working_bits} - guard_bits {guard_bits}"
            )));
        }
        Ok(PrecisionPolicy {
            working_bits,
            guard_bits,
            agreement_bits,
        })
    }

    /// Policy with 32 guard bits and agreement at `working − 64` bits.
    pub fn with_working_bits(working_bits: u32) -> Result<Self> {
        let guard = Self::DEFAULT_GUARD_BITS;
        Self::new(working_bits, guard, working_bits.saturating_sub(2 * guard))
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn agreement_bits(&self) -> u32 {
        self.agreement_bits
    }

    /// Precision used inside series and products before the final rounding.
    pub fn internal_bits(&self) -> u32 {
        self.working_bits + self.guard_bits
    }

    /// Same guard and agreement widths at twice the working precision.
    pub fn doubled(&self) -> Self {
        PrecisionPolicy {
            working_bits: self.working_bits * 2,
            ..*self
        }
    }

    pub fn with_agreement_bits(&self, agreement_bits: u32) -> Result<Self> {
        Self::new(self.working_bits, self.guard_bits, agreement_bits)
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            working_bits: 256,
            guard_bits: Self::DEFAULT_GUARD_BITS,
            agreement_bits: 192,
        }
    }
}

/// Number of factors kept in each of the two theta products: the smallest
/// `N ≥ 1` with `|p|^N · max(|z|, 1/|z|) < 2^-(working + guard)`.
pub fn theta_truncation_index(z: &MpComplex, nome: &MpComplex, policy: &PrecisionPolicy) -> Result<usize> {
    check_theta_domain(z, nome)?;
    let log_p = nome.log2_abs();
    if log_p == f64::NEG_INFINITY {
        return Ok(1);
    }
    let log_z = z.log2_abs().abs();
    let target = -(policy.internal_bits() as f64);
    // |p|^N · M < 2^target  ⇔  N > (target − log M) / log |p|
    let bound = (target - log_z) / log_p;
    let n = bound.floor().max(0.0) as usize + 1;
    Ok(n)
}

fn check_theta_domain(z: &MpComplex, nome: &MpComplex) -> Result<()> {
    if Field::is_zero(z) {
        return Err(Error::Domain("theta argument z must be nonzero".into()));
    }
    if nome.norm_sqr() >= 1 {
        return Err(Error::Domain(format!("theta nome must satisfy |p| < 1, got {nome}")));
    }
    Ok(())
}

/// Modified theta function, truncated per [`theta_truncation_index`] and
/// evaluated with `guard_bits` of extra precision.
pub fn theta_eval(z: &MpComplex, nome: &MpComplex, policy: &PrecisionPolicy) -> Result<MpComplex> {
    let n_terms = theta_truncation_index(z, nome, policy)?;
    let prec = policy.internal_bits();
    let z = z.with_precision(prec);
    let p = nome.with_precision(prec);
    let one = MpComplex::from_i64(prec, 1);
    let z_inv = &one / &z;

    let mut acc = &one - &z;
    let mut pz = z;
    let mut pz_inv = z_inv;
    for _ in 1..n_terms {
        pz = &pz * &p;
        pz_inv = &pz_inv * &p;
        acc = &acc * &(&one - &pz);
        acc = &acc * &(&one - &pz_inv);
    }
    Ok(acc.with_precision(policy.working_bits()))
}

/// Whether two evaluations of the same quantity agree to `agreement_bits`:
/// relative difference when either magnitude is at least 1, absolute
/// difference otherwise.
pub fn agreement_check(value_lo: &MpComplex, value_hi: &MpComplex, policy: &PrecisionPolicy) -> bool {
    let prec = value_lo.precision().max(value_hi.precision());
    let lo = value_lo.with_precision(prec);
    let hi = value_hi.with_precision(prec);
    let diff = (&lo - &hi).abs();
    if diff.is_zero() {
        return true;
    }
    let scale = lo.abs().max(&hi.abs());
    let threshold = Float::with_val(prec, Float::i_exp(1, -(policy.agreement_bits() as i32)));
    if scale < 1 {
        diff <= threshold
    } else {
        diff / scale <= threshold
    }
}

/// `|a − b| / max(|a|, |b|)` as an `f64` (0 when both vanish).
pub fn relative_deviation(a: &MpComplex, b: &MpComplex) -> f64 {
    let prec = a.precision().max(b.precision());
    let a = a.with_precision(prec);
    let b = b.with_precision(prec);
    let diff = (&a - &b).abs();
    if diff.is_zero() {
        return 0.0;
    }
    let scale = a.abs().max(&b.abs());
    (diff / scale).to_f64()
}

/// Parses `a/b`, an integer, or a finite decimal such as `-0.125` exactly.
pub fn parse_exact(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Domain(format!("cannot parse {text:?} as an exact rational"));
    if s.contains('/') {
        return s.parse::<Rational>().map_err(|_| bad());
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mantissa: rug::Integer = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = rug::Integer::from(rug::Integer::u_pow_u(10, frac_part.len() as u32 + 1));
    let value = Rational::from((mantissa, scale));
    Ok(if negative { -value } else { value })
}
