//! Subset-sum kernel identities and the Riemann relation for the odd
//! function `s`.

use rug::Rational;

use crate::combinatorics::{subsets, IndexSubset};
use crate::error::{Error, Result};
use crate::numerics::{ExactScalar, Field};

use super::{IdentityId, Side};

/// The odd function `s`.
///
/// `TrigExp` works in exponential coordinates: a coordinate `w` stands for
/// `e^{iβx/2}`, so `s(Σ c·x)` is represented by `m − 1/m` with `m = ∏ w^c`.
/// That differs from `sin β(Σ c·x)` by the constant `2i`, which cancels in
/// every ratio and in the Riemann relation (homogeneous of degree four).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OddFunctionKind {
    Linear,
    TrigExp,
}

impl OddFunctionKind {
    pub const ALL: [OddFunctionKind; 2] = [OddFunctionKind::Linear, OddFunctionKind::TrigExp];

    pub fn name(self) -> &'static str {
        match self {
            OddFunctionKind::Linear => "linear",
            OddFunctionKind::TrigExp => "trigexp",
        }
    }

    /// `s` of the signed combination `Σ c·x` of coordinates.
    pub fn eval(self, terms: &[(&ExactScalar, i64)]) -> ExactScalar {
        match self {
            OddFunctionKind::Linear => terms
                .iter()
                .fold(Rational::new(), |acc, (x, c)| acc + Rational::from(*c * *x)),
            OddFunctionKind::TrigExp => {
                let m = terms.iter().fold(Rational::from(1), |acc, (w, c)| {
                    acc * w.powi(*c).expect("exponential coordinates are nonzero")
                });
                let inv = Rational::from(m.recip_ref());
                m - inv
            }
        }
    }
}

/// Coordinates for the kernel identities. `y` is unused by the
/// single-tuple identity.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPoint {
    pub x: Vec<ExactScalar>,
    pub y: Vec<ExactScalar>,
}

/// The shifts: `α` always, `β` only for the single-tuple identity.
/// Under `TrigExp` they are exponential coordinates too.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParams {
    pub alpha: ExactScalar,
    pub beta: Option<ExactScalar>,
}

fn ratio(
    s: OddFunctionKind,
    num: &[(&ExactScalar, i64)],
    den: &[(&ExactScalar, i64)],
    what: &str,
) -> Result<ExactScalar> {
    let d = s.eval(den);
    if d == 0 {
        return Err(Error::Pole(format!("s({what}) vanishes")));
    }
    Ok(s.eval(num) / d)
}

fn two_tuple_term(
    s: OddFunctionKind,
    side: Side,
    members: &IndexSubset,
    point: &KernelPoint,
    alpha: &ExactScalar,
) -> Result<ExactScalar> {
    let n = point.x.len();
    let mut term = Rational::from(1);
    for &i in members.members() {
        match side {
            Side::Lhs => {
                let xi = &point.x[i];
                for j in members.complement() {
                    let xj = &point.x[j];
                    term *= ratio(s, &[(xi, 1), (xj, -1), (alpha, -1)], &[(xi, 1), (xj, -1)], "x_i − x_j")?;
                }
                for ya in &point.y {
                    term *= ratio(s, &[(xi, 1), (ya, -1), (alpha, 1)], &[(xi, 1), (ya, -1)], "x_i − y_a")?;
                }
            }
            Side::Rhs => {
                let ya = &point.y[i];
                for b in members.complement() {
                    let yb = &point.y[b];
                    term *= ratio(s, &[(ya, 1), (yb, -1), (alpha, 1)], &[(ya, 1), (yb, -1)], "y_a − y_b")?;
                }
                for xi in &point.x[..n] {
                    term *= ratio(s, &[(xi, 1), (ya, -1), (alpha, 1)], &[(xi, 1), (ya, -1)], "x_i − y_a")?;
                }
            }
        }
    }
    Ok(term)
}

fn single_tuple_term(
    s: OddFunctionKind,
    side: Side,
    members: &IndexSubset,
    x: &[ExactScalar],
    alpha: &ExactScalar,
    beta: &ExactScalar,
) -> Result<ExactScalar> {
    // The right side is the left side with every argument negated.
    let sign = match side {
        Side::Lhs => 1,
        Side::Rhs => -1,
    };
    let mut term = Rational::from(1);
    for &i in members.members() {
        for j in members.complement() {
            let (xi, xj) = (&x[i], &x[j]);
            let num = s.eval(&[(xi, sign), (xj, -sign), (alpha, -1)])
                * s.eval(&[(xi, sign), (xj, -sign), (alpha, 1), (beta, -1)]);
            let den = s.eval(&[(xi, sign), (xj, -sign)]) * s.eval(&[(xi, sign), (xj, -sign), (beta, -1)]);
            if den == 0 {
                return Err(Error::Pole("s(x_i − x_j) or s(x_i − x_j − β) vanishes".into()));
            }
            term *= num / den;
        }
    }
    Ok(term)
}

/// One side of a kernel identity, summed over `r`-subsets of `[n]`.
pub fn kernel_eval(
    identity: IdentityId,
    side: Side,
    s: OddFunctionKind,
    n: usize,
    r: usize,
    point: &KernelPoint,
    params: &KernelParams,
) -> Result<ExactScalar> {
    if point.x.len() != n {
        return Err(Error::Domain(format!(
            "point has {} x's, expected n = {n}",
            point.x.len()
        )));
    }
    let s = match identity {
        IdentityId::KernelI1 | IdentityId::RuijMacI6 => s,
        IdentityId::RatKernelA2 => OddFunctionKind::Linear,
        other => return Err(Error::Domain(format!("{other} is not a kernel identity"))),
    };
    let mut sum = Rational::new();
    match identity {
        IdentityId::RuijMacI6 => {
            let beta = params
                .beta
                .as_ref()
                .ok_or_else(|| Error::Domain("the single-tuple identity needs β".into()))?;
            for members in subsets(n, r)? {
                sum += single_tuple_term(s, side, &members, &point.x, &params.alpha, beta)?;
            }
        }
        _ => {
            if point.y.len() != n {
                return Err(Error::Domain(format!(
                    "point has {} y's, expected n = {n}",
                    point.y.len()
                )));
            }
            for members in subsets(n, r)? {
                sum += two_tuple_term(s, side, &members, point, &params.alpha)?;
            }
        }
    }
    Ok(sum)
}

/// Both sides of the three-term Riemann relation at `(x, y, u, v)`.
pub fn riemann_sides(
    s: OddFunctionKind,
    x: &ExactScalar,
    y: &ExactScalar,
    u: &ExactScalar,
    v: &ExactScalar,
) -> (ExactScalar, ExactScalar) {
    let sp = |a: &ExactScalar, b: &ExactScalar| s.eval(&[(a, 1), (b, 1)]) * s.eval(&[(a, 1), (b, -1)]);
    let lhs = sp(x, y) * sp(u, v);
    let rhs = sp(x, u) * sp(y, v) - sp(x, v) * sp(y, u);
    (lhs, rhs)
}

/// Whether `s` satisfies the Riemann relation at `(x, y, u, v)`.
pub fn riemann_check(s: OddFunctionKind, x: &ExactScalar, y: &ExactScalar, u: &ExactScalar, v: &ExactScalar) -> bool {
    let (lhs, rhs) = riemann_sides(s, x, y, u, v);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{cell_rng, random_kernel_point, random_scalar};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn riemann_examples() {
        let (a, b, c, d) = (r(1, 1), r(2, 1), r(3, 1), r(4, 1));
        // s linear: 3·(−1)·7·(−1) = 21 = 4·(−2)·6·(−2) − 5·(−3)·5·(−1)
        let sp = |p: &Rational, q: &Rational| Rational::from(p + q) * Rational::from(p - q);
        assert_eq!(sp(&a, &b) * sp(&c, &d), 21);
        assert!(riemann_check(OddFunctionKind::Linear, &a, &b, &c, &d));
        for s in OddFunctionKind::ALL {
            assert!(riemann_check(s, &c, &c, &a, &b));
            assert!(riemann_check(s, &a, &b, &d, &d));
        }
    }

    #[test]
    fn odd_function_is_odd() {
        let mut rng = cell_rng(31, 0);
        for s in OddFunctionKind::ALL {
            for _ in 0..10 {
                let x = random_scalar(&mut rng);
                assert_eq!(s.eval(&[(&x, -1)]), -s.eval(&[(&x, 1)]));
            }
        }
    }

    /// Straight transcription of the two-tuple identity for s(z) = z.
    fn linear_i1_oracle(side: Side, r_: usize, x: &[Rational], y: &[Rational], alpha: &Rational) -> Rational {
        let n = x.len();
        let mut sum = Rational::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != r_ {
                continue;
            }
            let inside = |i: usize| mask & (1 << i) != 0;
            let mut term = Rational::from(1);
            for i in (0..n).filter(|&i| inside(i)) {
                for j in (0..n).filter(|&j| !inside(j)) {
                    term *= match side {
                        Side::Lhs => Rational::from(&x[i] - &x[j]) - alpha.clone(),
                        Side::Rhs => Rational::from(&y[i] - &y[j]) + alpha.clone(),
                    } / match side {
                        Side::Lhs => Rational::from(&x[i] - &x[j]),
                        Side::Rhs => Rational::from(&y[i] - &y[j]),
                    };
                }
                for other in 0..n {
                    let (xi, ya) = match side {
                        Side::Lhs => (&x[i], &y[other]),
                        Side::Rhs => (&x[other], &y[i]),
                    };
                    term *= Rational::from(xi - ya) + alpha.clone();
                    term /= Rational::from(xi - ya);
                }
            }
            sum += term;
        }
        sum
    }

    #[test]
    fn two_tuple_example() {
        let point = KernelPoint {
            x: ints(&[1, 2]),
            y: ints(&[10, 20]),
        };
        let params = KernelParams {
            alpha: r(1, 7),
            beta: None,
        };
        let lhs = kernel_eval(
            IdentityId::KernelI1,
            Side::Lhs,
            OddFunctionKind::Linear,
            2,
            1,
            &point,
            &params,
        )
        .unwrap();
        let rhs = kernel_eval(
            IdentityId::KernelI1,
            Side::Rhs,
            OddFunctionKind::Linear,
            2,
            1,
            &point,
            &params,
        )
        .unwrap();
        assert_eq!(lhs, linear_i1_oracle(Side::Lhs, 1, &point.x, &point.y, &params.alpha));
        assert_eq!(rhs, linear_i1_oracle(Side::Rhs, 1, &point.x, &point.y, &params.alpha));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_identities_hold_at_random_points() {
        let mut rng = cell_rng(32, 0);
        for n in 2..=4 {
            for s in OddFunctionKind::ALL {
                let point = random_kernel_point(&mut rng, n);
                let params = KernelParams {
                    alpha: random_scalar(&mut rng),
                    beta: Some(random_scalar(&mut rng)),
                };
                for r_ in 0..=n {
                    for id in [IdentityId::KernelI1, IdentityId::RuijMacI6, IdentityId::RatKernelA2] {
                        let lhs = kernel_eval(id, Side::Lhs, s, n, r_, &point, &params).unwrap();
                        let rhs = kernel_eval(id, Side::Rhs, s, n, r_, &point, &params).unwrap();
                        assert_eq!(lhs, rhs, "{id} {} n={n} r={r_}", s.name());
                        if r_ == 0 {
                            assert_eq!(lhs, 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_tuple_linear_example() {
        let x = vec![r(3, 11), r(-5, 2), r(8, 3)];
        let point = KernelPoint { x, y: Vec::new() };
        let params = KernelParams {
            alpha: r(2, 5),
            beta: Some(r(3, 7)),
        };
        let lhs = kernel_eval(
            IdentityId::RuijMacI6,
            Side::Lhs,
            OddFunctionKind::Linear,
            3,
            2,
            &point,
            &params,
        )
        .unwrap();
        let rhs = kernel_eval(
            IdentityId::RuijMacI6,
            Side::Rhs,
            OddFunctionKind::Linear,
            3,
            2,
            &point,
            &params,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn errors() {
        let point = KernelPoint {
            x: ints(&[1, 1]),
            y: ints(&[3, 4]),
        };
        let params = KernelParams {
            alpha: r(1, 3),
            beta: None,
        };
        let eval = |id, r_| kernel_eval(id, Side::Lhs, OddFunctionKind::Linear, 2, r_, &point, &params);
        assert!(matches!(eval(IdentityId::KernelI1, 3), Err(Error::Domain(_))));
        assert!(matches!(eval(IdentityId::KernelI1, 1), Err(Error::Pole(_))));
        assert!(matches!(eval(IdentityId::RuijMacI6, 1), Err(Error::Domain(_))));
        assert!(matches!(eval(IdentityId::SymTrigP4, 1), Err(Error::Domain(_))));
    }
}
