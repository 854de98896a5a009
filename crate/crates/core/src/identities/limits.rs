//! The degenerate rational identity obtained by rescaling every variable to
//! zero, and its decomposition into rational kernel identities.

use std::collections::hash_map::{Entry, HashMap};

use rug::Rational;

use crate::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::numerics::ExactScalar;

use super::kernel::{kernel_eval, KernelParams, KernelPoint, OddFunctionKind};
use super::{IdentityId, RationalPoint, Side};

fn linear_ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Pole(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// Term for a given support (`mask` bit i set iff `k_i ≠ 0`).
fn support_term(side: Side, mask: u64, p: &RationalPoint) -> Result<Rational> {
    let n = p.n();
    let on = |i: usize| mask & (1 << i) != 0;
    let alpha = &p.alpha;
    let mut term = Rational::from(1);
    match side {
        Side::Lhs => {
            for i in (0..n).filter(|&i| on(i)) {
                for j in (0..n).filter(|&j| !on(j)) {
                    let d = Rational::from(&p.x[i] - &p.x[j]);
                    term *= linear_ratio(Rational::from(&d - alpha), d, "x_i − x_j")?;
                }
            }
            for j in (0..n).filter(|&j| on(j)) {
                for ya in &p.y {
                    let d = Rational::from(&p.x[j] - ya);
                    term *= linear_ratio(Rational::from(&d + alpha), d, "x_j − y_a")?;
                }
            }
        }
        Side::Rhs => {
            for a in (0..n).filter(|&a| !on(a)) {
                for b in (0..n).filter(|&b| on(b)) {
                    let d = Rational::from(&p.y[a] - &p.y[b]);
                    term *= linear_ratio(Rational::from(&d - alpha), d, "y_a − y_b")?;
                }
            }
            for a in (0..n).filter(|&a| on(a)) {
                for xj in &p.x {
                    let d = Rational::from(xj - &p.y[a]);
                    term *= linear_ratio(Rational::from(&d + alpha), d, "x_j − y_a")?;
                }
            }
        }
    }
    Ok(term)
}

/// One side of the degenerate rational identity, summed literally over all
/// compositions of `total`. A term depends on `k` only through its support,
/// so terms are cached per support but every composition is counted.
pub fn h_eval(side: Side, n: usize, total: u32, point: &RationalPoint) -> Result<ExactScalar> {
    if point.n() != n {
        return Err(Error::Domain(format!("point has n = {}, expected {n}", point.n())));
    }
    let mut cache: HashMap<u64, Rational> = HashMap::new();
    let mut sum = Rational::new();
    for k in compositions(n, total)? {
        let mask = k.support_mask();
        if let Entry::Vacant(e) = cache.entry(mask) {
            e.insert(support_term(side, mask, point)?);
        }
        sum += &cache[&mask];
    }
    Ok(sum)
}

/// One side of the `r`-th rational kernel identity at the same point; zero
/// when `r > n` (no subsets).
pub fn kernel_side(side: Side, r: usize, point: &RationalPoint) -> Result<ExactScalar> {
    let n = point.n();
    if r > n {
        return Ok(Rational::new());
    }
    let kp = KernelPoint {
        x: point.x.clone(),
        y: point.y.clone(),
    };
    let params = KernelParams {
        alpha: point.alpha.clone(),
        beta: None,
    };
    kernel_eval(
        IdentityId::RatKernelA2,
        side,
        OddFunctionKind::Linear,
        n,
        r,
        &kp,
        &params,
    )
}

/// Left minus right side of the `r`-th rational kernel identity.
pub fn kernel_difference(r: usize, point: &RationalPoint) -> Result<ExactScalar> {
    Ok(kernel_side(Side::Lhs, r, point)? - kernel_side(Side::Rhs, r, point)?)
}

/// `H_1 = K_1` and `H_2 = K_2 + K_1`, checked both for the differences and
/// side by side.
#[derive(Debug, Clone)]
pub struct LimitRelation {
    pub first_differences: bool,
    pub second_differences: bool,
    pub first_per_side: bool,
    pub second_per_side: bool,
}

impl LimitRelation {
    pub fn holds(&self) -> bool {
        self.first_differences && self.second_differences && self.first_per_side && self.second_per_side
    }
}

pub fn limit_relation_check(n: usize, point: &RationalPoint) -> Result<LimitRelation> {
    let h = |side, total| h_eval(side, n, total, point);
    let k = |side, r| kernel_side(side, r, point);
    let mut first_per_side = true;
    let mut second_per_side = true;
    for side in [Side::Lhs, Side::Rhs] {
        first_per_side &= h(side, 1)? == k(side, 1)?;
        second_per_side &= h(side, 2)? == k(side, 2)? + k(side, 1)?;
    }
    let h_diff = |total| -> Result<Rational> { Ok(h(Side::Lhs, total)? - h(Side::Rhs, total)?) };
    let (k1, k2) = (kernel_difference(1, point)?, kernel_difference(2, point)?);
    Ok(LimitRelation {
        first_differences: h_diff(1)? == k1,
        second_differences: h_diff(2)? == k2 + &k1,
        first_per_side,
        second_per_side,
    })
}
