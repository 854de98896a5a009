//! Summands of the symmetric trigonometric identity as explicit products of
//! linear factors `w − 1/w`, exact residues at simple poles, and the two
//! residue lemmas behind the proof of the identity.
//!
//! A factor is represented by its monomial `w` in the square-root
//! coordinates. Residues are taken in the variable itself (not its root):
//! if `w` carries exponent `e` on `√x` then `dw/dx = e·w/(2x)`, so
//! `d(w − 1/w)/dx = (1 + w⁻²)·e·w/(2x)`.

use std::fmt;

use rug::Rational;

use crate::combinatorics::{compositions, phi_map, pole_set_membership, Composition, PoleSet, PoleShift};
use crate::error::{Error, Result};
use crate::identities::duality::{sym_trig_side, Var};
use crate::identities::{sym_trig_summand, IdentityId, Side};
use crate::numerics::{ExactScalar, Field};
use crate::pochhammer::{poch_sym, SqrtPoint};

/// Exponents on `√q`, `√t`, `√u_i`, `√v_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub q: i64,
    pub t: i64,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

impl Monomial {
    fn one(n: usize) -> Self {
        Monomial {
            q: 0,
            t: 0,
            u: vec![0; n],
            v: vec![0; n],
        }
    }

    pub fn inverse(&self) -> Self {
        Monomial {
            q: -self.q,
            t: -self.t,
            u: self.u.iter().map(|e| -e).collect(),
            v: self.v.iter().map(|e| -e).collect(),
        }
    }

    pub fn exponent(&self, var: Var) -> i64 {
        match var {
            Var::U(i) => self.u[i],
            Var::V(a) => self.v[a],
        }
    }

    pub fn eval<S: Field>(&self, point: &SqrtPoint<S>) -> S {
        let pow = |x: &S, e: i64| x.powi(e).expect("coordinates are nonzero");
        let mut acc = pow(&point.q_sqrt, self.q).mul(&pow(&point.t_sqrt, self.t));
        for (x, &e) in point
            .u_sqrts
            .iter()
            .zip(&self.u)
            .chain(point.v_sqrts.iter().zip(&self.v))
        {
            if e != 0 {
                acc = acc.mul(&pow(x, e));
            }
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: String, e: i64| {
            if e != 0 {
                parts.push(format!("{name}^{e}"));
            }
        };
        push("√q".into(), self.q);
        push("√t".into(), self.t);
        for (i, &e) in self.u.iter().enumerate() {
            push(format!("√u{}", i + 1), e);
        }
        for (a, &e) in self.v.iter().enumerate() {
            push(format!("√v{}", a + 1), e);
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("·"))
    }
}

/// Which variables a factor involves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorFamily {
    Constant,
    SameU,
    SameV,
    Mixed,
}

impl FactorFamily {
    pub const ALL: [FactorFamily; 4] = [
        FactorFamily::Constant,
        FactorFamily::SameU,
        FactorFamily::SameV,
        FactorFamily::Mixed,
    ];
}

/// The factor `w − 1/w`, with the Pochhammer symbol it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFactor {
    pub monomial: Monomial,
    pub origin: String,
}

impl LinearFactor {
    pub fn family(&self) -> FactorFamily {
        let has_u = self.monomial.u.iter().any(|&e| e != 0);
        let has_v = self.monomial.v.iter().any(|&e| e != 0);
        match (has_u, has_v) {
            (false, false) => FactorFamily::Constant,
            (true, false) => FactorFamily::SameU,
            (false, true) => FactorFamily::SameV,
            (true, true) => FactorFamily::Mixed,
        }
    }

    pub fn eval<S: Field>(&self, point: &SqrtPoint<S>) -> S {
        let w = self.monomial.eval(point);
        w.sub(&w.recip().expect("monomials are nonzero"))
    }

    /// Derivative with respect to the variable `var` (not its square root).
    pub fn derivative<S: Field>(&self, var: Var, point: &SqrtPoint<S>) -> S {
        let e = self.monomial.exponent(var);
        let w = self.monomial.eval(point);
        if e == 0 {
            return w.zero_like();
        }
        let x = match var {
            Var::U(i) => point.u(i),
            Var::V(a) => point.v(a),
        };
        let one = w.one_like();
        let w2 = w.mul(&w);
        let dw = w
            .from_i64_like(e)
            .mul(&w)
            .div(&x.from_i64_like(2).mul(&x))
            .expect("x is nonzero");
        one.add(&w2.recip().expect("w is nonzero")).mul(&dw)
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (w = {})", self.origin, self.monomial)
    }
}

/// A summand as `∏ factor^exponent`; numerator factors carry `+1`,
/// denominator factors `−1`, and identical factors are kept separate.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredSummand {
    pub factors: Vec<(LinearFactor, i32)>,
    pub side: Side,
    pub k: Composition,
}

impl FactoredSummand {
    pub fn n(&self) -> usize {
        self.k.len()
    }

    fn product<S: Field>(&self, point: &SqrtPoint<S>, exponent: i32) -> S {
        self.factors
            .iter()
            .filter(|(_, e)| *e == exponent)
            .fold(point.q_sqrt.one_like(), |acc, (f, _)| acc.mul(&f.eval(point)))
    }

    /// Product of the numerator factors (the summand at `t` with the
    /// denominators stripped).
    pub fn numerator<S: Field>(&self, point: &SqrtPoint<S>) -> S {
        self.product(point, 1)
    }

    pub fn denominator<S: Field>(&self, point: &SqrtPoint<S>) -> S {
        self.product(point, -1)
    }

    pub fn eval<S: Field>(&self, point: &SqrtPoint<S>) -> Result<S> {
        self.numerator(point)
            .div(&self.denominator(point))
            .ok_or_else(|| Error::Pole(format!("summand k={} has a vanishing denominator factor", self.k)))
    }

    /// Indices of factors that vanish at the point.
    pub fn vanishing<S: Field>(&self, point: &SqrtPoint<S>) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| self.factors[i].0.eval(point).is_zero())
            .collect()
    }
}

fn sym_factors(out: &mut Vec<(LinearFactor, i32)>, label: &str, base: &Monomial, index: i64, exponent: i32) {
    for l in 0..index {
        let mut monomial = base.clone();
        monomial.q += l;
        out.push((
            LinearFactor {
                monomial,
                origin: format!("{label} factor {l}"),
            },
            exponent,
        ));
    }
}

/// Expands each symmetric Pochhammer symbol of the summand into its linear
/// factors. Under debug assertions the result is checked against the
/// summand evaluator at five seeded random points.
pub fn factorize_summand(identity: IdentityId, side: Side, k: &Composition, n: usize) -> Result<FactoredSummand> {
    if identity != IdentityId::SymTrigP4 {
        return Err(Error::Domain(format!("{identity} has no factored form")));
    }
    if k.len() != n {
        return Err(Error::Domain(format!("composition {k} does not match n = {n}")));
    }
    let mut factors = Vec::new();
    let base = Monomial::one(n);

    for i in 0..n {
        let ki = k.get(i);
        let qt = Monomial {
            q: 1,
            t: 1,
            ..base.clone()
        };
        let q = Monomial { q: 1, ..base.clone() };
        sym_factors(&mut factors, &format!("[qt;q]_{ki}"), &qt, ki, 1);
        sym_factors(&mut factors, &format!("[q;q]_{ki}"), &q, ki, -1);
    }

    // Same-group pairs: for the left side [t⁻¹ q^{−k_j} u_i/u_j]_{k_i}, for
    // the right side [t⁻¹ q^{−k_a} v_a/v_b]_{k_b}.
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (shift, index) = match side {
                Side::Lhs => (k.get(b), k.get(a)),
                Side::Rhs => (k.get(a), k.get(b)),
            };
            let mut m = Monomial {
                q: -shift,
                ..base.clone()
            };
            let name = match side {
                Side::Lhs => {
                    m.u[a] += 1;
                    m.u[b] -= 1;
                    format!("u{}/u{}", a + 1, b + 1)
                }
                Side::Rhs => {
                    m.v[a] += 1;
                    m.v[b] -= 1;
                    format!("v{}/v{}", a + 1, b + 1)
                }
            };
            let with_t = Monomial { t: -1, ..m.clone() };
            sym_factors(
                &mut factors,
                &format!("[t^-1 q^-{shift} {name}]_{index}"),
                &with_t,
                index,
                1,
            );
            sym_factors(&mut factors, &format!("[q^-{shift} {name}]_{index}"), &m, index, -1);
        }
    }

    // Mixed pairs [t u_j/v_a]_{k_j} (left) or [t u_j/v_a]_{k_a} (right).
    for j in 0..n {
        for a in 0..n {
            let index = match side {
                Side::Lhs => k.get(j),
                Side::Rhs => k.get(a),
            };
            let mut m = base.clone();
            m.u[j] += 1;
            m.v[a] -= 1;
            let name = format!("u{}/v{}", j + 1, a + 1);
            let with_t = Monomial { t: 1, ..m.clone() };
            sym_factors(&mut factors, &format!("[t {name}]_{index}"), &with_t, index, 1);
            sym_factors(&mut factors, &format!("[{name}]_{index}"), &m, index, -1);
        }
    }

    let summand = FactoredSummand {
        factors,
        side,
        k: k.clone(),
    };
    #[cfg(debug_assertions)]
    cross_check(&summand)?;
    Ok(summand)
}

#[cfg(debug_assertions)]
fn cross_check(summand: &FactoredSummand) -> Result<()> {
    use crate::sampling::{cell_rng, random_sqrt_point, with_resampling};

    let mut rng = cell_rng(0x5eed, summand.n() as u64);
    for _ in 0..5 {
        let ((factored, direct), _) = with_resampling(&mut rng, |rng| {
            let point = random_sqrt_point(rng, summand.n())?;
            Ok((
                summand.eval(&point)?,
                sym_trig_summand(summand.side, &summand.k, &point)?,
            ))
        })?;
        assert_eq!(
            factored, direct,
            "factored form of k={} disagrees with the summand",
            summand.k
        );
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusKind {
    /// `u_1 = q^p u_2`, residue in `u_1`.
    UU,
    /// `v_2 = q^p v_1`, residue in `v_2`.
    VV,
    /// `v_1 = q^{p−1} u_1`, residue of `(1/v_1)·summand` in `v_1`.
    UV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PoleLocus {
    pub kind: LocusKind,
    pub shift: PoleShift,
}

impl PoleLocus {
    pub fn new(kind: LocusKind, shift: PoleShift) -> Self {
        PoleLocus { kind, shift }
    }

    pub fn variable(&self) -> Var {
        match self.kind {
            LocusKind::UU => Var::U(0),
            LocusKind::VV => Var::V(1),
            LocusKind::UV => Var::V(0),
        }
    }

    /// `(√constrained, q-exponent on √q, √other)`.
    fn relation<'a, S: Field>(&self, point: &'a SqrtPoint<S>) -> (&'a S, i64, &'a S) {
        let p = self.shift.0;
        match self.kind {
            LocusKind::UU => (&point.u_sqrts[0], p, &point.u_sqrts[1]),
            LocusKind::VV => (&point.v_sqrts[1], p, &point.v_sqrts[0]),
            LocusKind::UV => (&point.v_sqrts[0], p - 1, &point.u_sqrts[0]),
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.kind != LocusKind::UV && n < 2 {
            return Err(Error::Domain(format!("{self} needs n ≥ 2")));
        }
        Ok(())
    }

    /// Overwrites the constrained coordinate so that its square root is
    /// `√q^{shift} · √other`.
    pub fn constrain<S: Field>(&self, point: &SqrtPoint<S>) -> Result<SqrtPoint<S>> {
        self.check_n(point.n())?;
        let (_, e, other) = self.relation(point);
        let value = point.q_sqrt.powi(e).expect("q is nonzero").mul(other);
        let mut out = point.clone();
        match self.kind {
            LocusKind::UU => out.u_sqrts[0] = value,
            LocusKind::VV => out.v_sqrts[1] = value,
            LocusKind::UV => out.v_sqrts[0] = value,
        }
        Ok(out)
    }

    /// Whether the locus holds for the variables (either square-root branch).
    pub fn is_satisfied<S: Field>(&self, point: &SqrtPoint<S>) -> bool {
        if self.check_n(point.n()).is_err() {
            return false;
        }
        let (c, e, other) = self.relation(point);
        let target = point.q_sqrt.powi(e).expect("q is nonzero").mul(other);
        c.mul(c).sub(&target.mul(&target)).is_zero()
    }
}

impl fmt::Display for PoleLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.shift.0;
        match self.kind {
            LocusKind::UU => write!(f, "u1 = q^{p} u2"),
            LocusKind::VV => write!(f, "v2 = q^{p} v1"),
            LocusKind::UV => write!(f, "v1 = q^{} u1", p - 1),
        }
    }
}

/// Vanishing factors of a summand at a locus point, split by side of the
/// fraction.
struct Vanishing {
    numerator: Vec<usize>,
    denominator: Vec<usize>,
}

fn classify(summand: &FactoredSummand, point: &SqrtPoint) -> Vanishing {
    let mut out = Vanishing {
        numerator: Vec::new(),
        denominator: Vec::new(),
    };
    for idx in summand.vanishing(point) {
        if summand.factors[idx].1 > 0 {
            out.numerator.push(idx);
        } else {
            out.denominator.push(idx);
        }
    }
    out
}

/// Order of the pole of the summand at the locus (negative for a zero).
pub fn pole_order(summand: &FactoredSummand, point: &SqrtPoint) -> i64 {
    let v = classify(summand, point);
    v.denominator.len() as i64 - v.numerator.len() as i64
}

/// Residue at a simple pole: the product of the non-vanishing factors times
/// the derivatives of vanishing numerator factors, divided by the
/// derivatives of vanishing denominator factors. Zero where the summand is
/// regular; for the `UV` locus the summand is first multiplied by `1/v_1`.
pub fn residue_at(summand: &FactoredSummand, locus: PoleLocus, point: &SqrtPoint) -> Result<ExactScalar> {
    if !locus.is_satisfied(point) {
        return Err(Error::Domain(format!("point does not lie on {locus}")));
    }
    let vanishing = classify(summand, point);
    let order = vanishing.denominator.len() as i64 - vanishing.numerator.len() as i64;
    if order <= 0 {
        return Ok(Rational::new());
    }
    if order >= 2 {
        return Err(Error::NonSimplePole(format!(
            "summand k={} has a pole of order {order} at {locus}",
            summand.k
        )));
    }
    let var = locus.variable();
    let mut acc = Rational::from(1);
    for (idx, (factor, exponent)) in summand.factors.iter().enumerate() {
        let value = if vanishing.numerator.contains(&idx) || vanishing.denominator.contains(&idx) {
            let d = factor.derivative(var, point);
            if d == 0 {
                // Vanishes identically along the locus: not a generic point.
                return Err(Error::Pole(format!(
                    "{factor} vanishes independently of {var} at {locus}"
                )));
            }
            d
        } else {
            factor.eval(point)
        };
        if *exponent > 0 {
            acc *= value;
        } else {
            acc /= value;
        }
    }
    if locus.kind == LocusKind::UV {
        acc /= point.v(0);
    }
    Ok(acc)
}

/// Lemma 1 at `(n, K, p)`, for a generic point that is moved onto
/// `u_1 = q^p u_2` (left summands) and onto `v_2 = q^p v_1` (right
/// summands). For every `k ∈ I_p`:
/// - the numerator products of `k` and `φ_p(k)` agree, and so do their
///   non-vanishing denominator factors;
/// - each has exactly one vanishing factor, and the two are mutually
///   inverse monomials (so the factors are exact negatives);
/// - the two residues cancel.
///
/// Additionally the residues of the whole side sum to zero.
pub fn lemma1_check(n: usize, total: u32, p: PoleShift, point: &SqrtPoint) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain("the pairing of poles needs n ≥ 2".into()));
    }
    let mut holds = true;
    for (side, kind) in [(Side::Lhs, LocusKind::UU), (Side::Rhs, LocusKind::VV)] {
        let locus = PoleLocus::new(kind, p);
        let at = locus.constrain(point)?;
        let mut side_residue = Rational::new();
        for k in compositions(n, total)? {
            let summand = factorize_summand(IdentityId::SymTrigP4, side, &k, n)?;
            side_residue += residue_at(&summand, locus, &at)?;
            if pole_set_membership(&k, p)? != PoleSet::InI {
                continue;
            }
            let image = phi_map(&k, p)?;
            holds &= pole_set_membership(&image, p)? == PoleSet::InII;
            let partner = factorize_summand(IdentityId::SymTrigP4, side, &image, n)?;
            holds &= summand.numerator(&at) == partner.numerator(&at);

            let (va, vb) = (classify(&summand, &at), classify(&partner, &at));
            if va.numerator.len() + va.denominator.len() != 1 || vb.numerator.len() + vb.denominator.len() != 1 {
                return Err(Error::NonSimplePole(format!(
                    "k={k} or φ(k)={image} does not have exactly one vanishing factor at {locus}"
                )));
            }
            let (Some(&ia), Some(&ib)) = (va.denominator.first(), vb.denominator.first()) else {
                return Ok(false);
            };
            holds &= summand.factors[ia].0.monomial == partner.factors[ib].0.monomial.inverse();
            let rest = |s: &FactoredSummand, skip: usize| {
                s.factors
                    .iter()
                    .enumerate()
                    .filter(|&(i, (_, e))| i != skip && *e < 0)
                    .fold(Rational::from(1), |acc, (_, (f, _))| acc * f.eval(&at))
            };
            holds &= rest(&summand, ia) == rest(&partner, ib);
            let sum = residue_at(&summand, locus, &at)? + residue_at(&partner, locus, &at)?;
            holds &= sum == 0;
        }
        holds &= side_residue == 0;
    }
    Ok(holds)
}

fn sym(z_sqrt: &ExactScalar, q_sqrt: &ExactScalar, index: i64) -> Result<ExactScalar> {
    poch_sym(z_sqrt, q_sqrt, index)
}

fn ratio(num: ExactScalar, den: ExactScalar, what: &str) -> Result<ExactScalar> {
    if den == 0 {
        return Err(Error::Pole(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// The u- and v-dependent part of the Lemma 2 prefactor,
/// `∏_{j≥2}[t u_j/v_1]_p/[u_1/u_j]_p · ∏_{b≥2}[t u_1/v_b]_p/[v_b/v_1]_p`.
fn prefactor_products(p: i64, point: &SqrtPoint) -> Result<ExactScalar> {
    let qs = &point.q_sqrt;
    let ts = &point.t_sqrt;
    let (u1, v1) = (&point.u_sqrts[0], &point.v_sqrts[0]);
    let mut acc = Rational::from(1);
    for j in 1..point.n() {
        let uj = &point.u_sqrts[j];
        acc *= ratio(
            sym(&(Rational::from(ts * uj) / v1), qs, p)?,
            sym(&Rational::from(u1 / uj), qs, p)?,
            "[u_1/u_j]_p",
        )?;
        let vb = &point.v_sqrts[j];
        acc *= ratio(
            sym(&(Rational::from(ts * u1) / vb), qs, p)?,
            sym(&Rational::from(vb / v1), qs, p)?,
            "[v_b/v_1]_p",
        )?;
    }
    Ok(acc)
}

fn lemma2_constant(p: i64, first_arg_q_exp: i64, point: &SqrtPoint) -> Result<ExactScalar> {
    let qs = &point.q_sqrt;
    let z = &point.t_sqrt * qs.powi(first_arg_q_exp).expect("q is nonzero");
    let sign = if p % 2 == 0 { 1 } else { -1 };
    ratio(
        sym(&z, qs, 2 * p)? * sign,
        sym(qs, qs, p)? * sym(qs, qs, p - 1)?,
        "[q;q]_p [q;q]_{p−1}",
    )
}

/// The prefactor relating a residue on `v_1 = q^{p−1}u_1` to the summand
/// with `k_1` lowered by `p`:
/// `(−1)^p [t q^{1−p};q]_{2p} / ([q;q]_p [q;q]_{p−1}) · ∏_{j≥2}[t u_j/v_1]_p/[u_1/u_j]_p · ∏_{b≥2}[t u_1/v_b]_p/[v_b/v_1]_p`.
pub fn lemma2_prefactor(p: i64, point: &SqrtPoint) -> Result<ExactScalar> {
    Ok(lemma2_constant(p, 1 - p, point)? * prefactor_products(p, point)?)
}

/// The same prefactor with `[tq;q]_{2p}` in place of `[t q^{1−p};q]_{2p}`.
/// Kept to document that this form does not satisfy the lemma.
pub fn lemma2_prefactor_unshifted(p: i64, point: &SqrtPoint) -> Result<ExactScalar> {
    Ok(lemma2_constant(p, 1, point)? * prefactor_products(p, point)?)
}

/// `u* = (q v_1, u')`, `v* = (q^{−1} u_1, v')`.
pub fn starred_point(point: &SqrtPoint) -> SqrtPoint {
    let mut out = point.clone();
    out.u_sqrts[0] = Rational::from(&point.q_sqrt * &point.v_sqrts[0]);
    out.v_sqrts[0] = Rational::from(&point.u_sqrts[0] / &point.q_sqrt);
    out
}

/// Residue of `(1/v_1)·summand_k` on `v_1 = q^{p−1}u_1`, for a generic point
/// moved onto that locus.
pub fn lemma2_residue(side: Side, k: &Composition, p: PoleShift, point: &SqrtPoint) -> Result<ExactScalar> {
    let locus = PoleLocus::new(LocusKind::UV, p);
    let at = locus.constrain(point)?;
    let summand = factorize_summand(IdentityId::SymTrigP4, side, k, k.len())?;
    residue_at(&summand, locus, &at)
}

fn lowered(k: &Composition, p: PoleShift) -> Result<Composition> {
    let first = i64::from(k.parts()[0]);
    if p.0 < 1 || p.0 > first {
        return Err(Error::Domain(format!("shift p = {p} outside 1..=k_1 for k = {k}")));
    }
    Ok(k.with_first((first - p.0) as u32))
}

/// `prefactor · summand_{k_1−p, k'}(u*, v*)` at the locus point.
pub fn lemma2_target(
    side: Side,
    k: &Composition,
    p: PoleShift,
    point: &SqrtPoint,
    prefactor: fn(i64, &SqrtPoint) -> Result<ExactScalar>,
) -> Result<ExactScalar> {
    let low = lowered(k, p)?;
    let at = PoleLocus::new(LocusKind::UV, p).constrain(point)?;
    Ok(prefactor(p.0, &at)? * sym_trig_summand(side, &low, &starred_point(&at))?)
}

/// Lemma 2 for both sides at a generic point moved onto `v_1 = q^{p−1}u_1`.
pub fn lemma2_check(n: usize, k: &Composition, p: PoleShift, point: &SqrtPoint) -> Result<bool> {
    if k.len() != n || point.n() != n {
        return Err(Error::Domain(format!(
            "composition {k} and point must both have n = {n}"
        )));
    }
    lowered(k, p)?;
    for side in [Side::Rhs, Side::Lhs] {
        if lemma2_residue(side, k, p, point)? != lemma2_target(side, k, p, point, lemma2_prefactor)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue of `(1/v_1)·W_K` on `v_1 = q^{p−1}u_1` against
/// `prefactor · W_{K−p}(u*, v*)`; both must be exactly zero.
pub fn wk_residue_relation(n: usize, total: u32, p: PoleShift, point: &SqrtPoint) -> Result<bool> {
    if p.0 < 1 || p.0 > i64::from(total) {
        return Err(Error::Domain(format!("shift p = {p} outside 1..={total}")));
    }
    if point.n() != n {
        return Err(Error::Domain(format!("point has n = {}, expected {n}", point.n())));
    }
    let mut residue = Rational::new();
    for k in compositions(n, total)? {
        residue += lemma2_residue(Side::Lhs, &k, p, point)?;
        residue -= lemma2_residue(Side::Rhs, &k, p, point)?;
    }
    let at = PoleLocus::new(LocusKind::UV, p).constrain(point)?;
    let star = starred_point(&at);
    let lower = total - p.0 as u32;
    let w_lower = sym_trig_side(Side::Lhs, lower, &star)? - sym_trig_side(Side::Rhs, lower, &star)?;
    let target = lemma2_prefactor(p.0, &at)? * w_lower;
    Ok(residue == 0 && target == 0)
}
