//! The duality summands `U_k` (left) and `V_k` (right).
//!
//! All four families have the same shape: a ratio of Pochhammer symbols for
//! each part, one for each ordered pair within a group, and one for each
//! mixed pair. A [`PochFamily`] supplies the Pochhammer symbol for an
//! argument `q^a t^b · num/den`; the rational family reads the same argument
//! additively as `a + b·α + x_num − y_den`.

use std::fmt;

use rug::Rational;

use crate::combinatorics::{compositions, Composition};
use crate::error::{Error, Result};
use crate::numerics::{relative_deviation, ExactScalar, Field, MpComplex, PrecisionPolicy};
use crate::pochhammer::{poch_elliptic, poch_q, poch_rational, poch_sym, SqrtPoint};

use super::{EllipticPoint, RationalPoint, Side};

/// A variable of one of the two groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    U(usize),
    V(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U(i) => write!(f, "u{}", i + 1),
            Var::V(a) => write!(f, "v{}", a + 1),
        }
    }
}

/// Pochhammer argument `q^{q_pow} t^{t_pow} · num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochArg {
    pub q_pow: i64,
    pub t_pow: i64,
    pub ratio: Option<(Var, Var)>,
}

impl PochArg {
    fn constant(q_pow: i64, t_pow: i64) -> Self {
        PochArg {
            q_pow,
            t_pow,
            ratio: None,
        }
    }

    fn ratio(q_pow: i64, t_pow: i64, num: Var, den: Var) -> Self {
        PochArg {
            q_pow,
            t_pow,
            ratio: Some((num, den)),
        }
    }
}

impl fmt::Display for PochArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t_pow != 0 {
            parts.push(format!("t^{}", self.t_pow));
        }
        if self.q_pow != 0 {
            parts.push(format!("q^{}", self.q_pow));
        }
        if let Some((num, den)) = self.ratio {
            parts.push(format!("{num}/{den}"));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A Pochhammer family evaluated at a fixed point.
pub trait PochFamily {
    type Scalar: Field;

    fn poch(&self, arg: &PochArg, index: i64) -> Result<Self::Scalar>;
    fn one(&self) -> Self::Scalar;
}

struct RationalFamily<'a>(&'a RationalPoint);

impl PochFamily for RationalFamily<'_> {
    type Scalar = ExactScalar;

    fn poch(&self, arg: &PochArg, index: i64) -> Result<ExactScalar> {
        let p = self.0;
        let mut x = Rational::from(arg.q_pow) + Rational::from(arg.t_pow * &p.alpha);
        if let Some((num, den)) = arg.ratio {
            let coord = |v: Var| match v {
                Var::U(i) => &p.x[i],
                Var::V(a) => &p.y[a],
            };
            x += coord(num);
            x -= coord(den);
        }
        poch_rational(&x, index)
    }

    fn one(&self) -> ExactScalar {
        Rational::from(1)
    }
}

/// Multiplicative value of an argument given coordinate lookups.
fn monomial_value<S: Field>(q: &S, t: &S, coord: impl Fn(Var) -> S, arg: &PochArg) -> S {
    let mut z = q
        .powi(arg.q_pow)
        .expect("q is nonzero")
        .mul(&t.powi(arg.t_pow).expect("t is nonzero"));
    if let Some((num, den)) = arg.ratio {
        z = z.mul(&coord(num)).div(&coord(den)).expect("coordinates are nonzero");
    }
    z
}

struct TrigFamily<'a> {
    q: ExactScalar,
    t: ExactScalar,
    point: &'a SqrtPoint,
}

impl PochFamily for TrigFamily<'_> {
    type Scalar = ExactScalar;

    fn poch(&self, arg: &PochArg, index: i64) -> Result<ExactScalar> {
        let coord = |v: Var| match v {
            Var::U(i) => self.point.u(i),
            Var::V(a) => self.point.v(a),
        };
        let z = monomial_value(&self.q, &self.t, coord, arg);
        poch_q(&z, &self.q, index)
    }

    fn one(&self) -> ExactScalar {
        Rational::from(1)
    }
}

struct SymFamily<'a, S>(&'a SqrtPoint<S>);

impl<S: Field> PochFamily for SymFamily<'_, S> {
    type Scalar = S;

    fn poch(&self, arg: &PochArg, index: i64) -> Result<S> {
        let p = self.0;
        let coord = |v: Var| match v {
            Var::U(i) => p.u_sqrts[i].clone(),
            Var::V(a) => p.v_sqrts[a].clone(),
        };
        let z_sqrt = monomial_value(&p.q_sqrt, &p.t_sqrt, coord, arg);
        poch_sym(&z_sqrt, &p.q_sqrt, index)
    }

    fn one(&self) -> S {
        self.0.q_sqrt.one_like()
    }
}

struct EllipticFamily<'a> {
    point: &'a EllipticPoint,
    policy: &'a PrecisionPolicy,
}

impl PochFamily for EllipticFamily<'_> {
    type Scalar = MpComplex;

    fn poch(&self, arg: &PochArg, index: i64) -> Result<MpComplex> {
        let p = self.point;
        let coord = |v: Var| match v {
            Var::U(i) => p.u[i].clone(),
            Var::V(a) => p.v[a].clone(),
        };
        let z = monomial_value(&p.q, &p.t, coord, arg);
        poch_elliptic(&z, &p.nome, &p.q, index, self.policy)
    }

    fn one(&self) -> MpComplex {
        MpComplex::from_i64(self.policy.working_bits(), 1)
    }
}

/// The three products of a summand as `(numerator arg, denominator arg,
/// index)` triples, in display order.
pub fn summand_ratios(side: Side, k: &Composition) -> Vec<(PochArg, PochArg, i64)> {
    let n = k.len();
    let mut out = Vec::with_capacity(n * (2 * n));
    for i in 0..n {
        out.push((PochArg::constant(1, 1), PochArg::constant(1, 0), k.get(i)));
    }
    match side {
        Side::Lhs => {
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    let shift = -k.get(j);
                    out.push((
                        PochArg::ratio(shift, -1, Var::U(i), Var::U(j)),
                        PochArg::ratio(shift, 0, Var::U(i), Var::U(j)),
                        k.get(i),
                    ));
                }
            }
            for a in 0..n {
                for j in 0..n {
                    out.push((
                        PochArg::ratio(0, 1, Var::U(j), Var::V(a)),
                        PochArg::ratio(0, 0, Var::U(j), Var::V(a)),
                        k.get(j),
                    ));
                }
            }
        }
        Side::Rhs => {
            for a in 0..n {
                for b in (0..n).filter(|&b| b != a) {
                    let shift = -k.get(a);
                    out.push((
                        PochArg::ratio(shift, -1, Var::V(a), Var::V(b)),
                        PochArg::ratio(shift, 0, Var::V(a), Var::V(b)),
                        k.get(b),
                    ));
                }
            }
            for a in 0..n {
                for j in 0..n {
                    out.push((
                        PochArg::ratio(0, 1, Var::U(j), Var::V(a)),
                        PochArg::ratio(0, 0, Var::U(j), Var::V(a)),
                        k.get(a),
                    ));
                }
            }
        }
    }
    out
}

/// Generic summand: product of `P(num)_idx / P(den)_idx` over [`summand_ratios`].
pub fn duality_summand<F: PochFamily>(family: &F, side: Side, k: &Composition) -> Result<F::Scalar> {
    let mut acc = family.one();
    for (num, den, index) in summand_ratios(side, k) {
        let top = family.poch(&num, index)?;
        let bottom = family.poch(&den, index)?;
        acc = acc
            .mul(&top)
            .div(&bottom)
            .ok_or_else(|| Error::Pole(format!("k={k}: denominator Pochhammer ({den})_{index} vanishes")))?;
    }
    Ok(acc)
}

/// Sum of [`duality_summand`] over all compositions of `total`.
pub fn duality_side<F: PochFamily>(family: &F, side: Side, n: usize, total: u32) -> Result<F::Scalar> {
    let mut acc = family.one().zero_like();
    for k in compositions(n, total)? {
        acc = acc.add(&duality_summand(family, side, &k)?);
    }
    Ok(acc)
}

fn check_len(k: &Composition, n: usize) -> Result<()> {
    if k.len() != n {
        return Err(Error::Domain(format!("composition {k} does not match n = {n}")));
    }
    Ok(())
}

/// Summand of the rational identity.
pub fn rational_summand(side: Side, k: &Composition, point: &RationalPoint) -> Result<ExactScalar> {
    check_len(k, point.n())?;
    duality_summand(&RationalFamily(point), side, k)
}

/// Summand of the trigonometric identity with ordinary q-Pochhammer symbols,
/// evaluated at the squares of the point's coordinates.
pub fn trig_summand(side: Side, k: &Composition, point: &SqrtPoint) -> Result<ExactScalar> {
    check_len(k, point.n())?;
    let family = TrigFamily {
        q: point.q(),
        t: point.t(),
        point,
    };
    duality_summand(&family, side, k)
}

/// Summand of the trigonometric identity with symmetric q-Pochhammer symbols.
pub fn sym_trig_summand<S: Field>(side: Side, k: &Composition, point: &SqrtPoint<S>) -> Result<S> {
    check_len(k, point.n())?;
    duality_summand(&SymFamily(point), side, k)
}

pub fn sym_trig_side<S: Field>(side: Side, total: u32, point: &SqrtPoint<S>) -> Result<S> {
    duality_side(&SymFamily(point), side, point.n(), total)
}

/// Summand of the elliptic identity.
pub fn elliptic_summand(
    side: Side,
    k: &Composition,
    point: &EllipticPoint,
    policy: &PrecisionPolicy,
) -> Result<MpComplex> {
    check_len(k, point.n())?;
    duality_summand(&EllipticFamily { point, policy }, side, k)
}

pub fn elliptic_side(side: Side, total: u32, point: &EllipticPoint, policy: &PrecisionPolicy) -> Result<MpComplex> {
    duality_side(&EllipticFamily { point, policy }, side, point.n(), total)
}

/// Rewriting every ordinary q-Pochhammer ratio of a summand in symmetric
/// form multiplies it by `t^{−|k|}`; checks that relation exactly.
pub fn trig_rewrite_holds(side: Side, k: &Composition, point: &SqrtPoint) -> Result<bool> {
    let plain = trig_summand(side, k, point)?;
    let symmetric = sym_trig_summand(side, k, point)?;
    let scale = point.t().powi(-i64::from(k.total())).expect("t is nonzero");
    Ok(symmetric == plain.mul(&scale))
}

/// The point `u_i = t^{−1} v_i` (square roots `v_sqrt / t_sqrt`).
pub fn plane_point<S: Field>(point: &SqrtPoint<S>) -> SqrtPoint<S> {
    let u_sqrts = point
        .v_sqrts
        .iter()
        .map(|v| v.div(&point.t_sqrt).expect("t is nonzero"))
        .collect();
    SqrtPoint {
        u_sqrts,
        ..point.clone()
    }
}

/// Point with `u_i = Λ^i`, `v_a = Λ^{2n+1−a}` (one-based), i.e.
/// `u_1 ≪ … ≪ u_n ≪ v_n ≪ … ≪ v_1`.
pub fn asymptotic_point(
    n: usize,
    lambda: &ExactScalar,
    q: &ExactScalar,
    t: &ExactScalar,
    precision_bits: u32,
) -> Result<SqrtPoint<MpComplex>> {
    let root = |r: &Rational| MpComplex::from_rational(precision_bits, r).sqrt();
    let lambda_sqrt = root(lambda);
    let pow = |e: usize| lambda_sqrt.powi(e as i64).expect("Λ is nonzero");
    let u = (1..=n).map(pow).collect();
    let v = (1..=n).map(|a| pow(2 * n + 1 - a)).collect();
    SqrtPoint::new(root(q), root(t), u, v)
}

/// `Σ_{|k|=K} ∏_i [qt;q]_{k_i}/[q;q]_{k_i} · t^{½Σ_i (n+1−2i) k_i} · t^{−nK/2}`,
/// the common limit of both sides in the asymptotic zone.
pub fn asymptotic_limit<S: Field>(n: usize, total: u32, q_sqrt: &S, t_sqrt: &S) -> Result<S> {
    let mut acc = q_sqrt.zero_like();
    let qt_sqrt = q_sqrt.mul(t_sqrt);
    for k in compositions(n, total)? {
        let mut term = q_sqrt.one_like();
        let mut t_exp: i64 = -(n as i64) * i64::from(total);
        for i in 0..n {
            let ki = k.get(i);
            term = term
                .mul(&poch_sym(&qt_sqrt, q_sqrt, ki)?)
                .div(&poch_sym(q_sqrt, q_sqrt, ki)?)
                .ok_or_else(|| Error::Pole(format!("[q;q]_{ki} vanishes")))?;
            t_exp += (n as i64 - 1 - 2 * i as i64) * ki;
        }
        // t^{e/2} is t_sqrt^e.
        acc = acc.add(&term.mul(&t_sqrt.powi(t_exp).expect("t is nonzero")));
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct AsymptoticDeviation {
    pub lhs: f64,
    pub rhs: f64,
}

impl AsymptoticDeviation {
    pub fn max(&self) -> f64 {
        self.lhs.max(self.rhs)
    }
}

/// Relative deviation of each side of the symmetric identity from
/// [`asymptotic_limit`] at the zone point for `Λ`.
pub fn asymptotic_deviation(
    n: usize,
    total: u32,
    q: &ExactScalar,
    t: &ExactScalar,
    lambda: &ExactScalar,
    precision_bits: u32,
) -> Result<AsymptoticDeviation> {
    let point = asymptotic_point(n, lambda, q, t, precision_bits)?;
    let limit = asymptotic_limit(n, total, &point.q_sqrt, &point.t_sqrt)?;
    let lhs = sym_trig_side(Side::Lhs, total, &point)?;
    let rhs = sym_trig_side(Side::Rhs, total, &point)?;
    Ok(AsymptoticDeviation {
        lhs: relative_deviation(&lhs, &limit),
        rhs: relative_deviation(&rhs, &limit),
    })
}

/// Each side of the elliptic identity before and after `u_1 ↦ p u_1` and
/// `v_1 ↦ p v_1`, with the expected multipliers `t^{−K}` and `t^{K}`.
#[derive(Debug, Clone)]
pub struct Quasiperiodicity {
    pub lhs: MpComplex,
    pub rhs: MpComplex,
    pub lhs_u_shifted: MpComplex,
    pub rhs_u_shifted: MpComplex,
    pub lhs_v_shifted: MpComplex,
    pub rhs_v_shifted: MpComplex,
    pub u_multiplier: MpComplex,
    pub v_multiplier: MpComplex,
}

impl Quasiperiodicity {
    /// Pairs `(observed, expected)` for the four transformed sides.
    pub fn comparisons(&self) -> [(MpComplex, MpComplex); 4] {
        [
            (self.lhs_u_shifted.clone(), &self.u_multiplier * &self.lhs),
            (self.rhs_u_shifted.clone(), &self.u_multiplier * &self.rhs),
            (self.lhs_v_shifted.clone(), &self.v_multiplier * &self.lhs),
            (self.rhs_v_shifted.clone(), &self.v_multiplier * &self.rhs),
        ]
    }
}

pub fn quasiperiodicity(total: u32, point: &EllipticPoint, policy: &PrecisionPolicy) -> Result<Quasiperiodicity> {
    let mut u_shift = point.clone();
    u_shift.u[0] = &point.u[0] * &point.nome;
    let mut v_shift = point.clone();
    v_shift.v[0] = &point.v[0] * &point.nome;
    let k = i64::from(total);
    Ok(Quasiperiodicity {
        lhs: elliptic_side(Side::Lhs, total, point, policy)?,
        rhs: elliptic_side(Side::Rhs, total, point, policy)?,
        lhs_u_shifted: elliptic_side(Side::Lhs, total, &u_shift, policy)?,
        rhs_u_shifted: elliptic_side(Side::Rhs, total, &u_shift, policy)?,
        lhs_v_shifted: elliptic_side(Side::Lhs, total, &v_shift, policy)?,
        rhs_v_shifted: elliptic_side(Side::Rhs, total, &v_shift, policy)?,
        u_multiplier: point.t.powi(-k).expect("t is nonzero"),
        v_multiplier: point.t.powi(k).expect("t is nonzero"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{cell_rng, random_rational_point, random_sqrt_point};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    /// Hand expansion of the symmetric summands for n = 2, k = (1, 0): only
    /// index-1 symbols survive, each a single factor `w − 1/w`.
    fn p4_n2_k10_oracle(side: Side, pt: &SqrtPoint) -> Rational {
        let f = |w: Rational| &w - Rational::from(w.recip_ref());
        let (qs, ts) = (&pt.q_sqrt, &pt.t_sqrt);
        let (u1, u2) = (&pt.u_sqrts[0], &pt.u_sqrts[1]);
        let (v1, v2) = (&pt.v_sqrts[0], &pt.v_sqrts[1]);
        let pre = f(Rational::from(qs * ts)) / f(qs.clone());
        match side {
            // [t^{-1} u1/u2]_1 / [u1/u2]_1 · Π_a [t u1/v_a]_1/[u1/v_a]_1
            Side::Lhs => {
                let x = Rational::from(u1 / u2);
                pre * f(Rational::from(&x / ts)) / f(x) * f(Rational::from(ts * u1) / v1) / f(Rational::from(u1 / v1))
                    * f(Rational::from(ts * u1) / v2)
                    / f(Rational::from(u1 / v2))
            }
            // [t^{-1} v2/v1]_1 / [v2/v1]_1 · Π_j [t u_j/v1]_1/[u_j/v1]_1
            Side::Rhs => {
                let y = Rational::from(v2 / v1);
                pre * f(Rational::from(&y / ts)) / f(y) * f(Rational::from(ts * u1) / v1) / f(Rational::from(u1 / v1))
                    * f(Rational::from(ts * u2) / v1)
                    / f(Rational::from(u2 / v1))
            }
        }
    }

    #[test]
    fn p4_summand_matches_hand_expansion() {
        let mut rng = cell_rng(21, 0);
        for _ in 0..5 {
            let pt = random_sqrt_point(&mut rng, 2).unwrap();
            for side in [Side::Lhs, Side::Rhs] {
                assert_eq!(
                    sym_trig_summand(side, &comp(&[1, 0]), &pt).unwrap(),
                    p4_n2_k10_oracle(side, &pt)
                );
            }
        }
    }

    #[test]
    fn single_variable_summands_coincide() {
        let mut rng = cell_rng(22, 0);
        let pt = random_sqrt_point(&mut rng, 1).unwrap();
        let rp = random_rational_point(&mut rng, 1).unwrap();
        for total in 0..5 {
            let k = comp(&[total]);
            assert_eq!(
                sym_trig_summand(Side::Lhs, &k, &pt).unwrap(),
                sym_trig_summand(Side::Rhs, &k, &pt).unwrap()
            );
            assert_eq!(
                trig_summand(Side::Lhs, &k, &pt).unwrap(),
                trig_summand(Side::Rhs, &k, &pt).unwrap()
            );
            assert_eq!(
                rational_summand(Side::Lhs, &k, &rp).unwrap(),
                rational_summand(Side::Rhs, &k, &rp).unwrap()
            );
        }
    }

    /// Direct evaluation of both rational sums, term by term.
    fn rational_side_oracle(side: Side, total: u32, p: &RationalPoint) -> Rational {
        let n = p.n();
        let poch = |x: Rational, m: i64| poch_rational(&x, m).unwrap();
        let one = Rational::from(1);
        let mut sum = Rational::new();
        for k in compositions(n, total).unwrap() {
            let mut term = Rational::from(1);
            for i in 0..n {
                term *= poch(Rational::from(&one + &p.alpha), k.get(i)) / poch(one.clone(), k.get(i));
            }
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let (d, shift, idx) = match side {
                        Side::Lhs => (Rational::from(&p.x[a] - &p.x[b]), k.get(b), k.get(a)),
                        Side::Rhs => (Rational::from(&p.y[a] - &p.y[b]), k.get(a), k.get(b)),
                    };
                    let base = d - shift;
                    term *= poch(Rational::from(&base - &p.alpha), idx) / poch(base, idx);
                }
            }
            for j in 0..n {
                for a in 0..n {
                    let idx = match side {
                        Side::Lhs => k.get(j),
                        Side::Rhs => k.get(a),
                    };
                    let d = Rational::from(&p.x[j] - &p.y[a]);
                    term *= poch(Rational::from(&d + &p.alpha), idx) / poch(d, idx);
                }
            }
            sum += term;
        }
        sum
    }

    #[test]
    fn rational_sides_match_direct_sum() {
        let p = RationalPoint::new(vec![r(0, 1), r(1, 2)], vec![r(5, 1), r(7, 1)], r(1, 3)).unwrap();
        let fam = RationalFamily(&p);
        let lhs = duality_side(&fam, Side::Lhs, 2, 1).unwrap();
        let rhs = duality_side(&fam, Side::Rhs, 2, 1).unwrap();
        assert_eq!(lhs, rational_side_oracle(Side::Lhs, 1, &p));
        assert_eq!(rhs, rational_side_oracle(Side::Rhs, 1, &p));
        assert_eq!(lhs, rhs);

        let mut rng = cell_rng(23, 0);
        let p = random_rational_point(&mut rng, 3).unwrap();
        for total in 0..4 {
            for side in [Side::Lhs, Side::Rhs] {
                assert_eq!(
                    duality_side(&RationalFamily(&p), side, 3, total).unwrap(),
                    rational_side_oracle(side, total, &p)
                );
            }
        }
    }

    #[test]
    fn rewrite_factor_and_involution() {
        let mut rng = cell_rng(24, 0);
        for n in 1..=3 {
            let pt = random_sqrt_point(&mut rng, n).unwrap();
            for total in 0..=3 {
                for k in compositions(n, total).unwrap() {
                    for side in [Side::Lhs, Side::Rhs] {
                        assert!(trig_rewrite_holds(side, &k, &pt).unwrap());
                    }
                    assert_eq!(
                        sym_trig_summand(Side::Rhs, &k, &pt).unwrap(),
                        sym_trig_summand(Side::Lhs, &k, &pt.involution()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn plane_kills_both_sides() {
        let mut rng = cell_rng(25, 0);
        for n in 1..=3 {
            let pt = plane_point(&random_sqrt_point(&mut rng, n).unwrap());
            for total in 1..=3 {
                assert_eq!(sym_trig_side(Side::Lhs, total, &pt).unwrap(), 0);
                assert_eq!(sym_trig_side(Side::Rhs, total, &pt).unwrap(), 0);
            }
        }
    }

    #[test]
    fn pole_is_reported_with_its_factor() {
        // u1 = u2 makes [q^0 u1/u2]_1 = 1 − 1 = 0 in the k = (1, 0) summand.
        let pt = SqrtPoint::new(r(3, 1), r(5, 7), vec![r(2, 1), r(2, 1)], vec![r(9, 1), r(11, 1)]).unwrap();
        match sym_trig_summand(Side::Lhs, &comp(&[1, 0]), &pt) {
            Err(Error::Pole(msg)) => assert!(msg.contains("u1/u2"), "{msg}"),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn asymptotic_deviation_shrinks() {
        let q = r(2, 1);
        let t = r(1, 3);
        let d3 = asymptotic_deviation(2, 2, &q, &t, &r(1000, 1), 256).unwrap();
        let d4 = asymptotic_deviation(2, 2, &q, &t, &r(10_000, 1), 256).unwrap();
        assert!(d4.lhs < d3.lhs && d4.rhs < d3.rhs);
        assert!(d4.max() <= 1e-2);
    }
}
