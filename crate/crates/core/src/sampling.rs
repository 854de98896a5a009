//! Seeded random points and the resample-on-pole loop.
//!
//! Every cell of a run owns its own ChaCha stream (`seed`, `stream = cell
//! index`), so cells are reproducible independently of execution order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::error::{Error, Result};
use crate::identities::{EllipticPoint, KernelPoint, RationalPoint};
use crate::numerics::{ExactScalar, MpComplex};
use crate::pochhammer::SqrtPoint;

/// Numerators and denominators are drawn uniformly from `1..=MAX_COORD`.
pub const MAX_COORD: u64 = 1_000_000;
pub const MAX_ATTEMPTS: usize = 100;

pub fn cell_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    let num = rng.gen_range(1..=MAX_COORD);
    let den = rng.gen_range(1..=MAX_COORD);
    Rational::from((num, den))
}

fn random_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<ExactScalar> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

pub fn random_sqrt_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<SqrtPoint> {
    let q = random_scalar(rng);
    let t = random_scalar(rng);
    let u = random_vec(rng, n);
    let v = random_vec(rng, n);
    SqrtPoint::new(q, t, u, v)
}

pub fn random_rational_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<RationalPoint> {
    let x = random_vec(rng, n);
    let y = random_vec(rng, n);
    let alpha = random_scalar(rng);
    RationalPoint::new(x, y, alpha)
}

pub fn random_kernel_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> KernelPoint {
    KernelPoint {
        x: random_vec(rng, n),
        y: random_vec(rng, n),
    }
}

/// Real elliptic point with `q`, `t`, `u_i`, `v_a` drawn from `[1/2, 2]` on a
/// grid of spacing `1/1000`.
pub fn random_elliptic_point<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    nome: &ExactScalar,
    precision_bits: u32,
) -> Result<EllipticPoint> {
    let mut draw = || {
        let num: i64 = rng.gen_range(500..=2000);
        Rational::from((num, 1000))
    };
    let q = draw();
    let t = draw();
    let u: Vec<_> = (0..n).map(|_| draw()).collect();
    let v: Vec<_> = (0..n).map(|_| draw()).collect();
    let conv = |r: &Rational| MpComplex::from_rational(precision_bits, r);
    EllipticPoint::new(
        conv(&q),
        conv(&t),
        u.iter().map(conv).collect(),
        v.iter().map(conv).collect(),
        conv(nome),
    )
}

/// Runs `attempt` on fresh draws until it avoids every pole, returning the
/// value and the number of discarded draws.
pub fn with_resampling<R, T, F>(rng: &mut R, mut attempt: F) -> Result<(T, usize)>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<T>,
{
    let mut last = String::new();
    for tries in 0..MAX_ATTEMPTS {
        match attempt(rng) {
            Ok(value) => return Ok((value, tries)),
            Err(e) if e.is_degeneracy() => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleExhausted {
        attempts: MAX_ATTEMPTS,
        last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<_> = (0..4).map(|_| random_scalar(&mut cell_rng(7, 3))).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut r1 = cell_rng(7, 3);
        let mut r2 = cell_rng(7, 4);
        assert_ne!(random_scalar(&mut r1), random_scalar(&mut r2));
    }

    #[test]
    fn resampling_retries_poles_only() {
        let mut rng = cell_rng(1, 0);
        let mut calls = 0;
        let (value, discarded) = with_resampling(&mut rng, |_| {
            calls += 1;
            if calls < 3 {
                Err(Error::Pole("test".into()))
            } else {
                Ok(calls)
            }
        })
        .unwrap();
        assert_eq!((value, discarded), (3, 2));

        let err = with_resampling(&mut rng, |_| -> Result<()> { Err(Error::Pole("always".into())) }).unwrap_err();
        assert!(matches!(
            err,
            Error::ResampleExhausted {
                attempts: MAX_ATTEMPTS,
                ..
            }
        ));

        let err = with_resampling(&mut rng, |_| -> Result<()> { Err(Error::Domain("bad".into())) }).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn scalars_are_in_range() {
        let mut rng = cell_rng(11, 0);
        for _ in 0..100 {
            let x = random_scalar(&mut rng);
            assert!(x > 0);
            assert!(*x.numer() <= MAX_COORD && *x.denom() <= MAX_COORD);
        }
    }
}
