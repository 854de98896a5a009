//! Evaluators for both sides of every identity, plus the global properties
//! of the difference `W_K = LHS − RHS`.
//!
//! The four duality families (rational, trigonometric, symmetric
//! trigonometric, elliptic) share one summand engine in [`duality`]; the
//! kernel-function identities live in [`kernel`] and the limit relations in
//! [`limits`].

pub mod duality;
pub mod kernel;
pub mod limits;

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use crate::combinatorics::{compositions, Composition};
use crate::error::{Error, Result};
use crate::numerics::{ExactScalar, Field, MpComplex, PrecisionPolicy};
use crate::pochhammer::SqrtPoint;

pub use duality::{
    asymptotic_deviation, asymptotic_limit, asymptotic_point, duality_side, duality_summand, elliptic_summand,
    plane_point, quasiperiodicity, rational_summand, sym_trig_summand, trig_rewrite_holds, trig_summand,
    AsymptoticDeviation, Quasiperiodicity,
};
pub use kernel::{kernel_eval, riemann_check, riemann_sides, KernelParams, KernelPoint, OddFunctionKind};
pub use limits::{h_eval, kernel_difference, limit_relation_check, LimitRelation};

/// Catalog of the identities this crate evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    RationalI2,
    TrigI5,
    SymTrigP4,
    EllipticA6,
    KernelI1,
    RuijMacI6,
    RatLimitA1,
    RatKernelA2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::RationalI2,
        IdentityId::TrigI5,
        IdentityId::SymTrigP4,
        IdentityId::EllipticA6,
        IdentityId::KernelI1,
        IdentityId::RuijMacI6,
        IdentityId::RatLimitA1,
        IdentityId::RatKernelA2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::RationalI2 => "rational_i2",
            IdentityId::TrigI5 => "trig_i5",
            IdentityId::SymTrigP4 => "symtrig_p4",
            IdentityId::EllipticA6 => "elliptic_a6",
            IdentityId::KernelI1 => "kernel_i1",
            IdentityId::RuijMacI6 => "ruijmac_i6",
            IdentityId::RatLimitA1 => "ratlimit_a1",
            IdentityId::RatKernelA2 => "ratkernel_a2",
        }
    }

    /// Whether the identity is summed over compositions (as opposed to subsets).
    pub fn is_composition_sum(self) -> bool {
        matches!(
            self,
            IdentityId::RationalI2
                | IdentityId::TrigI5
                | IdentityId::SymTrigP4
                | IdentityId::EllipticA6
                | IdentityId::RatLimitA1
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown identity {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Point for the rational identity: `x`, `y` and the shift `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoint {
    pub x: Vec<ExactScalar>,
    pub y: Vec<ExactScalar>,
    pub alpha: ExactScalar,
}

impl RationalPoint {
    pub fn new(x: Vec<ExactScalar>, y: Vec<ExactScalar>, alpha: ExactScalar) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::Domain(format!(
                "need n ≥ 1 x's and y's of equal count, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(RationalPoint { x, y, alpha })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={};y={};alpha={}", join(&self.x), join(&self.y), self.alpha)
    }
}

/// Point for the elliptic identity.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticPoint {
    pub q: MpComplex,
    pub t: MpComplex,
    pub u: Vec<MpComplex>,
    pub v: Vec<MpComplex>,
    pub nome: MpComplex,
}

impl EllipticPoint {
    pub fn new(q: MpComplex, t: MpComplex, u: Vec<MpComplex>, v: Vec<MpComplex>, nome: MpComplex) -> Result<Self> {
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::Domain("need n ≥ 1 u's and v's of equal count".into()));
        }
        if [&q, &t].into_iter().chain(&u).chain(&v).any(Field::is_zero) {
            return Err(Error::Domain("elliptic coordinates must be nonzero".into()));
        }
        if nome.norm_sqr() >= 1 {
            return Err(Error::Domain(format!("nome must satisfy |p| < 1, got {nome}")));
        }
        Ok(EllipticPoint { q, t, u, v, nome })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn with_precision(&self, precision_bits: u32) -> Self {
        let conv = |z: &MpComplex| z.with_precision(precision_bits);
        EllipticPoint {
            q: conv(&self.q),
            t: conv(&self.t),
            u: self.u.iter().map(conv).collect(),
            v: self.v.iter().map(conv).collect(),
            nome: conv(&self.nome),
        }
    }
}

impl fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={};t={};u={};v={};p={}",
            self.q,
            self.t,
            join(&self.u),
            join(&self.v),
            self.nome
        )
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Evaluation point for the composition-sum identities.
#[derive(Debug, Clone)]
pub enum Point {
    Rational(RationalPoint),
    Sqrt(SqrtPoint),
    Elliptic(EllipticPoint, PrecisionPolicy),
}

impl Point {
    pub fn n(&self) -> usize {
        match self {
            Point::Rational(p) => p.n(),
            Point::Sqrt(p) => p.n(),
            Point::Elliptic(p, _) => p.n(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Rational(p) => p.fmt(f),
            Point::Sqrt(p) => p.fmt(f),
            Point::Elliptic(p, _) => p.fmt(f),
        }
    }
}

/// Value of a side, summand or difference.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(ExactScalar),
    Numeric(MpComplex),
}

impl Value {
    /// Literal zero for exact values; exact zero bits for numeric ones.
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => *r == 0,
            Value::Numeric(z) => Field::is_zero(z),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Numeric(_) => None,
        }
    }

    pub fn as_numeric(&self) -> Option<&MpComplex> {
        match self {
            Value::Numeric(z) => Some(z),
            Value::Exact(_) => None,
        }
    }

    fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(Rational::from(a - b)),
            (Value::Numeric(a), Value::Numeric(b)) => Value::Numeric(a - b),
            _ => unreachable!("both sides of an identity share a scalar type"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Numeric(z) => write!(f, "{z}"),
        }
    }
}

/// `W_K = LHS − RHS` at a point.
#[derive(Debug, Clone)]
pub struct IdentityDiff {
    pub value: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub identity: IdentityId,
    pub n: usize,
    pub k: u32,
    pub point: String,
}

fn mismatch(identity: IdentityId, point: &Point) -> Error {
    let kind = match point {
        Point::Rational(_) => "rational",
        Point::Sqrt(_) => "square-root",
        Point::Elliptic(..) => "elliptic",
    };
    Error::Domain(format!("{identity} cannot be evaluated at a {kind} point"))
}

/// One summand `U_k` (left) or `V_k` (right) of a composition-sum identity.
pub fn summand_eval(identity: IdentityId, side: Side, k: &Composition, point: &Point) -> Result<Value> {
    if k.len() != point.n() {
        return Err(Error::Domain(format!(
            "composition {k} does not match n = {}",
            point.n()
        )));
    }
    match (identity, point) {
        (IdentityId::RationalI2, Point::Rational(p)) => rational_summand(side, k, p).map(Value::Exact),
        (IdentityId::TrigI5, Point::Sqrt(p)) => trig_summand(side, k, p).map(Value::Exact),
        (IdentityId::SymTrigP4, Point::Sqrt(p)) => sym_trig_summand(side, k, p).map(Value::Exact),
        (IdentityId::EllipticA6, Point::Elliptic(p, policy)) => {
            elliptic_summand(side, k, p, policy).map(Value::Numeric)
        }
        _ => Err(mismatch(identity, point)),
    }
}

/// Sum of the summands over all compositions of `total` into `n` parts.
pub fn side_eval(identity: IdentityId, side: Side, n: usize, total: u32, point: &Point) -> Result<Value> {
    if n != point.n() {
        return Err(Error::Domain(format!(
            "n = {n} does not match the point's n = {}",
            point.n()
        )));
    }
    match (identity, point) {
        (IdentityId::RatLimitA1, Point::Rational(p)) => h_eval(side, n, total, p).map(Value::Exact),
        (IdentityId::RationalI2 | IdentityId::TrigI5 | IdentityId::SymTrigP4 | IdentityId::EllipticA6, _) => {
            let mut terms = Vec::new();
            for k in compositions(n, total)? {
                terms.push(summand_eval(identity, side, &k, point)?);
            }
            Ok(sum_values(terms, point))
        }
        _ => Err(mismatch(identity, point)),
    }
}

fn sum_values(terms: Vec<Value>, point: &Point) -> Value {
    match point {
        Point::Elliptic(_, policy) => {
            let mut acc = MpComplex::zero(policy.working_bits());
            for t in terms {
                acc = &acc + t.as_numeric().expect("elliptic summands are numeric");
            }
            Value::Numeric(acc)
        }
        _ => {
            let mut acc = Rational::new();
            for t in terms {
                acc += t.as_exact().expect("exact summands");
            }
            Value::Exact(acc)
        }
    }
}

/// `W_K`: left side minus right side.
pub fn wk_eval(identity: IdentityId, n: usize, total: u32, point: &Point) -> Result<IdentityDiff> {
    let lhs = side_eval(identity, Side::Lhs, n, total, point)?;
    let rhs = side_eval(identity, Side::Rhs, n, total, point)?;
    Ok(IdentityDiff {
        value: lhs.sub(&rhs),
        lhs,
        rhs,
        identity,
        n,
        k: total,
        point: point.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{cell_rng, random_elliptic_point, random_rational_point, random_sqrt_point};

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("SymTrig-P4".parse::<IdentityId>().unwrap(), IdentityId::SymTrigP4);
        assert!("nope".parse::<IdentityId>().is_err());
    }

    #[test]
    fn zero_total_gives_one_everywhere() {
        let mut rng = cell_rng(3, 0);
        let policy = PrecisionPolicy::default();
        let points = [
            (
                IdentityId::RationalI2,
                Point::Rational(random_rational_point(&mut rng, 2).unwrap()),
            ),
            (IdentityId::TrigI5, Point::Sqrt(random_sqrt_point(&mut rng, 2).unwrap())),
            (
                IdentityId::SymTrigP4,
                Point::Sqrt(random_sqrt_point(&mut rng, 2).unwrap()),
            ),
            (
                IdentityId::RatLimitA1,
                Point::Rational(random_rational_point(&mut rng, 2).unwrap()),
            ),
            (
                IdentityId::EllipticA6,
                Point::Elliptic(
                    random_elliptic_point(&mut rng, 2, &Rational::from((1, 5)), 256).unwrap(),
                    policy,
                ),
            ),
        ];
        for (id, point) in &points {
            for side in [Side::Lhs, Side::Rhs] {
                let v = side_eval(*id, side, 2, 0, point).unwrap();
                match v {
                    Value::Exact(r) => assert_eq!(r, 1, "{id}"),
                    Value::Numeric(z) => assert_eq!(z, MpComplex::from_i64(256, 1)),
                }
            }
            assert!(wk_eval(*id, 2, 0, point).unwrap().value.is_zero());
        }
    }

    #[test]
    fn wrong_point_kind_is_a_domain_error() {
        let mut rng = cell_rng(4, 0);
        let point = Point::Sqrt(random_sqrt_point(&mut rng, 2).unwrap());
        let k = Composition::new(vec![1, 0]).unwrap();
        assert!(matches!(
            summand_eval(IdentityId::RationalI2, Side::Lhs, &k, &point),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            side_eval(IdentityId::KernelI1, Side::Lhs, 2, 1, &point),
            Err(Error::Domain(_))
        ));
        let k3 = Composition::new(vec![1, 0, 0]).unwrap();
        assert!(summand_eval(IdentityId::SymTrigP4, Side::Lhs, &k3, &point).is_err());
    }

    #[test]
    fn elliptic_difference_is_tiny() {
        let mut rng = cell_rng(5, 0);
        let policy = PrecisionPolicy::default();
        let point = random_elliptic_point(&mut rng, 2, &Rational::from((1, 5)), 256).unwrap();
        let diff = wk_eval(IdentityId::EllipticA6, 2, 1, &Point::Elliptic(point, policy)).unwrap();
        let lhs = diff.lhs.as_numeric().unwrap();
        let rhs = diff.rhs.as_numeric().unwrap();
        assert!(crate::numerics::relative_deviation(lhs, rhs) < 2f64.powi(-150));
    }
}
