//! Pochhammer symbols: rising factorial `(x)_n`, q-analog `(z;q)_n`, the
//! symmetric q-analog `[z;q]_n` (with negative indices), and the elliptic
//! analog `(z;p,q)_k` built from theta functions.
//!
//! The symmetric family works in square-root coordinates: every factor
//! `q^{m/2} z^{1/2} − q^{−m/2} z^{−1/2}` is `w − 1/w` for the monomial
//! `w = q_sqrt^m · z_sqrt`, so no root is ever extracted.

use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::{theta_eval, ExactScalar, Field, MpComplex, PrecisionPolicy};

/// `w − 1/w`, the building block of the symmetric family. `None` when `w = 0`.
pub fn sym_factor<S: Field>(w: &S) -> Option<S> {
    Some(w.sub(&w.recip()?))
}

/// Rising factorial `x(x+1)···(x+n−1)`.
pub fn poch_rational(x: &ExactScalar, n: i64) -> Result<ExactScalar> {
    if n < 0 {
        return Err(Error::Domain(format!("rational Pochhammer index {n} is negative")));
    }
    let mut acc = Rational::from(1);
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += 1;
    }
    Ok(acc)
}

/// `(1−z)(1−qz)···(1−q^{n−1}z)`.
pub fn poch_q(z: &ExactScalar, q: &ExactScalar, n: i64) -> Result<ExactScalar> {
    if n < 0 {
        return Err(Error::Domain(format!("q-Pochhammer index {n} is negative")));
    }
    let mut acc = Rational::from(1);
    let mut qz = z.clone();
    for _ in 0..n {
        acc *= Rational::from(1 - &qz);
        qz *= q;
    }
    Ok(acc)
}

/// Symmetric q-Pochhammer `[z;q]_n` from the square roots of `z` and `q`.
///
/// For `n ≥ 0` this is `∏_{m=0}^{n−1} (q^{m/2}z^{1/2} − q^{−m/2}z^{−1/2})`;
/// for `n < 0` it is the reciprocal of `∏_{m=1}^{|n|}` of the same factors.
/// A vanishing factor under a negative index is reported as a pole.
pub fn poch_sym<S: Field>(z_sqrt: &S, q_sqrt: &S, n: i64) -> Result<S> {
    if z_sqrt.is_zero() || q_sqrt.is_zero() {
        return Err(Error::Domain("symmetric Pochhammer needs nonzero square roots".into()));
    }
    let factor = |m: i64| -> S {
        let w = q_sqrt.powi(m).expect("q_sqrt is nonzero").mul(z_sqrt);
        sym_factor(&w).expect("w is nonzero")
    };
    if n >= 0 {
        let mut acc = z_sqrt.one_like();
        for m in 0..n {
            acc = acc.mul(&factor(m));
        }
        Ok(acc)
    } else {
        let mut den = z_sqrt.one_like();
        for m in 1..=(-n) {
            let f = factor(m);
            if f.is_zero() {
                return Err(Error::Pole(format!(
                    "[z;q]_{n}: factor m={m} vanishes (z_sqrt={z_sqrt:?})"
                )));
            }
            den = den.mul(&f);
        }
        Ok(den.recip().expect("product of nonzero factors"))
    }
}

/// Elliptic Pochhammer `θ(z;p)θ(qz;p)···θ(q^{k−1}z;p)`.
pub fn poch_elliptic(
    z: &MpComplex,
    nome: &MpComplex,
    q: &MpComplex,
    k: i64,
    policy: &PrecisionPolicy,
) -> Result<MpComplex> {
    if k < 0 {
        return Err(Error::Domain(format!("elliptic Pochhammer index {k} is negative")));
    }
    let prec = policy.working_bits();
    let mut acc = MpComplex::from_i64(prec, 1);
    let mut arg = z.with_precision(prec);
    let q = q.with_precision(prec);
    for _ in 0..k {
        acc = &acc * &theta_eval(&arg, nome, policy)?;
        arg = &arg * &q;
    }
    Ok(acc)
}

/// Evaluation point for the symmetric (and plain) trigonometric identities,
/// given by the square roots of `q`, `t`, `u_1..u_n` and `v_1..v_n`.
#[derive(Clone, PartialEq)]
pub struct SqrtPoint<S = ExactScalar> {
    pub q_sqrt: S,
    pub t_sqrt: S,
    pub u_sqrts: Vec<S>,
    pub v_sqrts: Vec<S>,
}

impl<S: Field> SqrtPoint<S> {
    pub fn new(q_sqrt: S, t_sqrt: S, u_sqrts: Vec<S>, v_sqrts: Vec<S>) -> Result<Self> {
        if u_sqrts.is_empty() || u_sqrts.len() != v_sqrts.len() {
            return Err(Error::Domain(format!(
                "need n ≥ 1 u's and v's of equal count, got {} and {}",
                u_sqrts.len(),
                v_sqrts.len()
            )));
        }
        let all = [&q_sqrt, &t_sqrt].into_iter().chain(&u_sqrts).chain(&v_sqrts);
        if all.into_iter().any(Field::is_zero) {
            return Err(Error::Domain("square-root coordinates must be nonzero".into()));
        }
        Ok(SqrtPoint {
            q_sqrt,
            t_sqrt,
            u_sqrts,
            v_sqrts,
        })
    }

    pub fn n(&self) -> usize {
        self.u_sqrts.len()
    }

    pub fn q(&self) -> S {
        self.q_sqrt.mul(&self.q_sqrt)
    }

    pub fn t(&self) -> S {
        self.t_sqrt.mul(&self.t_sqrt)
    }

    pub fn u(&self, i: usize) -> S {
        self.u_sqrts[i].mul(&self.u_sqrts[i])
    }

    pub fn v(&self, a: usize) -> S {
        self.v_sqrts[a].mul(&self.v_sqrts[a])
    }

    /// `u_i ↦ v_i^{−1}`, `v_i ↦ u_i^{−1}`, carried out on the square roots.
    pub fn involution(&self) -> Self {
        let inv = |s: &S| s.recip().expect("coordinates are nonzero");
        SqrtPoint {
            q_sqrt: self.q_sqrt.clone(),
            t_sqrt: self.t_sqrt.clone(),
            u_sqrts: self.v_sqrts.iter().map(inv).collect(),
            v_sqrts: self.u_sqrts.iter().map(inv).collect(),
        }
    }
}

impl SqrtPoint<ExactScalar> {
    pub fn to_mp(&self, precision_bits: u32) -> SqrtPoint<MpComplex> {
        let conv = |r: &Rational| MpComplex::from_rational(precision_bits, r);
        SqrtPoint {
            q_sqrt: conv(&self.q_sqrt),
            t_sqrt: conv(&self.t_sqrt),
            u_sqrts: self.u_sqrts.iter().map(conv).collect(),
            v_sqrts: self.v_sqrts.iter().map(conv).collect(),
        }
    }
}

impl<S: fmt::Display> fmt::Display for SqrtPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[S]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "sqrt(q)={};sqrt(t)={};sqrt(u)=[{}];sqrt(v)=[{}]",
            self.q_sqrt,
            self.t_sqrt,
            join(&self.u_sqrts),
            join(&self.v_sqrts)
        )
    }
}

impl<S: fmt::Display> fmt::Debug for SqrtPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtPoint({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn rational_examples() {
        assert_eq!(poch_rational(&r(1, 1), 3).unwrap(), 6);
        assert_eq!(poch_rational(&r(17, 5), 0).unwrap(), 1);
        assert_eq!(poch_rational(&r(-2, 1), 4).unwrap(), 0);
        assert!(matches!(poch_rational(&r(1, 1), -1), Err(Error::Domain(_))));
    }

    #[test]
    fn q_examples() {
        let z = r(7, 3);
        let q = r(2, 9);
        assert_eq!(poch_q(&z, &q, 0).unwrap(), 1);
        assert_eq!(poch_q(&z, &q, 1).unwrap(), Rational::from(1 - &z));
        assert_eq!(poch_q(&r(2, 1), &r(3, 1), 2).unwrap(), 5);
        assert!(matches!(poch_q(&z, &q, -2), Err(Error::Domain(_))));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(poch_sym(&r(2, 1), &r(5, 3), 0).unwrap(), 1);
        assert_eq!(poch_sym(&r(2, 1), &r(5, 3), 1).unwrap(), r(3, 2));
        // 1 / (2·2 − (1/2)(1/2))
        assert_eq!(poch_sym(&r(2, 1), &r(2, 1), -1).unwrap(), r(4, 15));
    }

    #[test]
    fn sym_negative_index_pole() {
        // z_sqrt = q_sqrt^{-2}: the m = 2 factor of the reciprocal product vanishes.
        let q_sqrt = r(3, 1);
        let z_sqrt = r(1, 9);
        assert!(matches!(poch_sym(&z_sqrt, &q_sqrt, -3), Err(Error::Pole(_))));
        assert!(poch_sym(&z_sqrt, &q_sqrt, -1).is_ok());
        // Under a positive index the same factor just gives zero.
        assert_eq!(poch_sym(&z_sqrt, &q_sqrt, 3).unwrap(), 0);
        assert!(matches!(poch_sym(&r(0, 1), &q_sqrt, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn elliptic_examples() {
        let prec = 256;
        let policy = PrecisionPolicy::default();
        let c = |n: i64, d: i64| MpComplex::from_rational(prec, &r(n, d));
        let (z, p, q) = (c(1, 2), c(1, 10), c(1, 3));
        assert_eq!(
            poch_elliptic(&z, &p, &q, 0, &policy).unwrap(),
            MpComplex::from_i64(prec, 1)
        );
        assert_eq!(
            poch_elliptic(&z, &p, &q, 1, &policy).unwrap(),
            theta_eval(&z, &p, &policy).unwrap()
        );
        let two = poch_elliptic(&z, &p, &q, 2, &policy).unwrap();
        let oracle = &theta_eval(&c(1, 2), &p, &policy).unwrap() * &theta_eval(&c(1, 6), &p, &policy).unwrap();
        assert!(crate::numerics::relative_deviation(&two, &oracle) < 1e-70);
    }

    #[test]
    fn sqrt_point_validation_and_involution() {
        assert!(SqrtPoint::new(r(2, 1), r(3, 1), vec![], vec![]).is_err());
        assert!(SqrtPoint::new(r(2, 1), r(3, 1), vec![r(1, 1)], vec![r(0, 1)]).is_err());
        let pt = SqrtPoint::new(r(2, 1), r(3, 1), vec![r(5, 1), r(7, 2)], vec![r(1, 3), r(4, 1)]).unwrap();
        assert_eq!(pt.q(), 4);
        let inv = pt.involution();
        assert_eq!(inv.u_sqrts, vec![r(3, 1), r(1, 4)]);
        assert_eq!(inv.v_sqrts, vec![r(1, 5), r(2, 7)]);
        assert_eq!(inv.involution(), pt);
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (1i64..400, 1i64..400, any::<bool>()).prop_map(|(n, d, neg)| {
            if neg {
                -Rational::from((n, d))
            } else {
                Rational::from((n, d))
            }
        })
    }

    /// `[q^p u; q]` in square-root coordinates: `(q^p u)^{1/2} = q_sqrt^p · u_sqrt`.
    fn shifted(u_sqrt: &Rational, q_sqrt: &Rational, p: i64) -> Rational {
        q_sqrt.powi(p).unwrap().mul(u_sqrt)
    }

    /// With negative indices read as `1/∏_{m=1}^{|n|}(q^{m/2}z^{1/2} − …)` the
    /// shift property needs every index to be non-negative: at `m = n = 0`,
    /// `p = −1` the right side is `[q^{-1}u]_1 [u]_{-1} ≠ 1`.
    #[test]
    fn shift_property_needs_non_negative_indices() {
        let (u, q) = (r(7, 3), r(5, 11));
        let rhs = poch_sym(&shifted(&u, &q, -1), &q, 1)
            .unwrap()
            .mul(&poch_sym(&u, &q, -1).unwrap());
        assert_ne!(rhs, 1);
    }

    proptest! {
        #[test]
        fn shift_property(u in nonzero_rational(), q in nonzero_rational(), m in 0i64..5, n in 0i64..5, p in -4i64..5) {
            prop_assume!(q != 1 && q != -1);
            prop_assume!(n - p >= 0 && m + p >= 0);
            let lhs = poch_sym(&shifted(&u, &q, p), &q, m).and_then(|a| Ok(a.mul(&poch_sym(&u, &q, n)?)));
            let rhs = poch_sym(&shifted(&u, &q, p), &q, n - p).and_then(|a| Ok(a.mul(&poch_sym(&u, &q, m + p)?)));
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn reflection_property(u in nonzero_rational(), q in nonzero_rational(), m in 0i64..5, n in 0i64..5, p in -4i64..5) {
            prop_assume!(q != 1 && q != -1);
            prop_assume!(n - p >= 0 && m + p >= 0);
            let u_inv = Field::recip(&u).unwrap();
            let lhs = poch_sym(&shifted(&u, &q, 1), &q, m)
                .and_then(|a| Ok(a.mul(&poch_sym(&shifted(&u_inv, &q, -(m + p)), &q, n)?)));
            let rhs = poch_sym(&shifted(&u, &q, 1), &q, m + p)
                .and_then(|a| Ok(a.mul(&poch_sym(&shifted(&u_inv, &q, -m), &q, n - p)?)));
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                prop_assert_eq!(lhs, rhs.mul(&Rational::from(sign)));
            }
        }

        #[test]
        fn concatenation(z in nonzero_rational(), q in nonzero_rational(), n in 0i64..6, m in 0i64..6) {
            let head = poch_sym(&z, &q, n).unwrap();
            let tail = poch_sym(&shifted(&z, &q, n), &q, m).unwrap();
            prop_assert_eq!(head.mul(&tail), poch_sym(&z, &q, n + m).unwrap());
        }

        #[test]
        fn negative_index_inverts_defining_product(z in nonzero_rational(), q in nonzero_rational(), n in 1i64..6) {
            let mut product = Rational::from(1);
            for m in 1..=n {
                product *= sym_factor(&shifted(&z, &q, m)).unwrap();
            }
            match poch_sym(&z, &q, -n) {
                Ok(value) => prop_assert_eq!(value.mul(&product), Rational::from(1)),
                Err(Error::Pole(_)) => prop_assert_eq!(product, Rational::new()),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
