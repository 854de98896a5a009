//! Summation indices: compositions of `K` into `n` parts, `r`-subsets of
//! `{1..n}`, and the pole-pairing sets `I_p`, `II_p` with the swap map
//! `(k₁, k₂, k') ↦ (k₂ − p, k₁ + p, k')`.

use std::fmt;

use crate::error::{Error, Result};

/// An `n`-tuple of non-negative integers with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a composition needs at least one part".into()));
        }
        Ok(Composition { parts })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn get(&self, i: usize) -> i64 {
        i64::from(self.parts[i])
    }

    /// Indices with a nonzero part, as a bit mask.
    pub fn support_mask(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Same composition with the first part replaced.
    pub fn with_first(&self, first: u32) -> Self {
        let mut parts = self.parts.clone();
        parts[0] = first;
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Lazy lexicographically decreasing stream of compositions of `total` into
/// `n` parts: `(K,0,…,0)` first, `(0,…,0,K)` last.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.current.take()?;
        let item = Composition { parts: current.clone() };
        self.current = advance_composition(current);
        Some(item)
    }
}

fn advance_composition(mut parts: Vec<u32>) -> Option<Vec<u32>> {
    let n = parts.len();
    // Rightmost nonzero position before the last slot; move one unit right
    // and gather everything after it into the slot just past it.
    let pivot = (0..n.saturating_sub(1)).rev().find(|&i| parts[i] > 0)?;
    let tail: u32 = parts[pivot + 1..].iter().sum();
    parts[pivot] -= 1;
    for p in &mut parts[pivot + 1..] {
        *p = 0;
    }
    parts[pivot + 1] = tail + 1;
    Some(parts)
}

/// All compositions of `total` into `n` parts, `C(total+n−1, n−1)` of them.
pub fn compositions(n: usize, total: u32) -> Result<Compositions> {
    if n == 0 {
        return Err(Error::Domain("compositions need n ≥ 1 parts".into()));
    }
    let mut first = vec![0; n];
    first[0] = total;
    Ok(Compositions { current: Some(first) })
}

/// A subset of `{0..n-1}` (zero-based) stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    members: Vec<usize>,
    n: usize,
}

impl IndexSubset {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Indices of `{0..n-1}` not in the subset.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.contains(i)).collect()
    }
}

/// Lazy stream of `r`-subsets in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let current = self.current.take()?;
        let r = current.len();
        let item = IndexSubset {
            members: current.clone(),
            n: self.n,
        };
        let mut next = current;
        if let Some(i) = (0..r).rev().find(|&i| next[i] < self.n - r + i) {
            next[i] += 1;
            for j in i + 1..r {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(item)
    }
}

pub fn subsets(n: usize, r: usize) -> Result<Subsets> {
    if n == 0 {
        return Err(Error::Domain("subsets need n ≥ 1".into()));
    }
    if r > n {
        return Err(Error::Domain(format!("subset size {r} exceeds n = {n}")));
    }
    Ok(Subsets {
        n,
        current: Some((0..r).collect()),
    })
}

/// The integer shift `p` of a diagonal pole `u₁ = qᵖ u₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PoleShift(pub i64);

impl fmt::Display for PoleShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleSet {
    /// `k₁ ≥ k₂ + 1 − p` and `k₂ ≥ p`.
    InI,
    /// `k₁ ≥ −p` and `k₂ ≥ k₁ + 1 + p`.
    InII,
    Neither,
}

pub fn pole_set_membership(k: &Composition, p: PoleShift) -> Result<PoleSet> {
    if k.len() < 2 {
        return Err(Error::Domain("pole-set membership needs at least two parts".into()));
    }
    let (k1, k2, p) = (k.get(0), k.get(1), p.0);
    let in_i = k1 >= k2 + 1 - p && k2 >= p;
    let in_ii = k1 >= -p && k2 >= k1 + 1 + p;
    assert!(!(in_i && in_ii), "I_p and II_p overlap at k={k}, p={p}");
    Ok(match (in_i, in_ii) {
        (true, _) => PoleSet::InI,
        (_, true) => PoleSet::InII,
        _ => PoleSet::Neither,
    })
}

/// `(k₁, k₂, k') ↦ (k₂ − p, k₁ + p, k')`, defined on `I_p ∪ II_p`.
pub fn phi_map(k: &Composition, p: PoleShift) -> Result<Composition> {
    if pole_set_membership(k, p)? == PoleSet::Neither {
        return Err(Error::Domain(format!("{k} lies in neither I_{p} nor II_{p}")));
    }
    let first = k.get(1) - p.0;
    let second = k.get(0) + p.0;
    // Membership guarantees both entries are non-negative.
    let mut parts = k.parts.clone();
    parts[0] = u32::try_from(first).expect("membership implies k₂ ≥ p");
    parts[1] = u32::try_from(second).expect("membership implies k₁ ≥ −p");
    Ok(Composition { parts })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    /// Recursive-definition oracle: first part ranges over K..=0.
    fn compositions_oracle(n: usize, total: u32) -> Vec<Vec<u32>> {
        if n == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in (0..=total).rev() {
            for mut rest in compositions_oracle(n - 1, total - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn small_compositions() {
        let got: Vec<_> = compositions(2, 2).unwrap().collect();
        assert_eq!(got, vec![comp(&[2, 0]), comp(&[1, 1]), comp(&[0, 2])]);
        let zero: Vec<_> = compositions(4, 0).unwrap().collect();
        assert_eq!(zero, vec![comp(&[0, 0, 0, 0])]);
        assert_eq!(compositions(3, 4).unwrap().count(), 15);
        assert!(compositions(0, 3).is_err());
    }

    #[test]
    fn compositions_match_recursive_oracle() {
        for n in 1..=4 {
            for total in 0..=6 {
                let got: Vec<Vec<u32>> = compositions(n, total).unwrap().map(|c| c.parts).collect();
                let expected = compositions_oracle(n, total);
                assert_eq!(got, expected, "n={n} K={total}");
                assert_eq!(got.len() as u64, binomial(total as u64 + n as u64 - 1, n as u64 - 1));
            }
        }
    }

    #[test]
    fn subset_streams() {
        let empty: Vec<_> = subsets(3, 0).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].members().is_empty());
        let full: Vec<_> = subsets(3, 3).unwrap().collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].members(), &[0, 1, 2]);
        assert_eq!(subsets(4, 2).unwrap().count(), 6);
        assert!(subsets(3, 4).is_err());
        for n in 1..=6 {
            for r in 0..=n {
                let all: BTreeSet<Vec<usize>> = subsets(n, r).unwrap().map(|s| s.members().to_vec()).collect();
                assert_eq!(all.len() as u64, binomial(n as u64, r as u64));
                assert!(all.iter().all(|s| s.len() == r && s.windows(2).all(|w| w[0] < w[1])));
            }
        }
        let s = subsets(4, 2).unwrap().nth(1).unwrap();
        assert_eq!(s.members(), &[0, 2]);
        assert_eq!(s.complement(), vec![1, 3]);
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            pole_set_membership(&comp(&[2, 1, 0]), PoleShift(1)).unwrap(),
            PoleSet::InI
        );
        assert_eq!(
            pole_set_membership(&comp(&[0, 3, 1]), PoleShift(1)).unwrap(),
            PoleSet::InII
        );
        assert_eq!(
            pole_set_membership(&comp(&[1, 1]), PoleShift(5)).unwrap(),
            PoleSet::Neither
        );
        assert!(pole_set_membership(&comp(&[3]), PoleShift(0)).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_map(&comp(&[2, 1]), PoleShift(1)).unwrap(), comp(&[0, 3]));
        assert_eq!(
            pole_set_membership(&comp(&[0, 3]), PoleShift(1)).unwrap(),
            PoleSet::InII
        );
        let k = comp(&[3, 1]);
        assert_eq!(pole_set_membership(&k, PoleShift(0)).unwrap(), PoleSet::InI);
        let image = phi_map(&k, PoleShift(0)).unwrap();
        assert_eq!(image, comp(&[1, 3]));
        assert_eq!(pole_set_membership(&image, PoleShift(0)).unwrap(), PoleSet::InII);
        assert_eq!(phi_map(&image, PoleShift(0)).unwrap(), k);
        assert!(phi_map(&comp(&[1, 1]), PoleShift(5)).is_err());
    }

    #[test]
    fn phi_is_a_bijection_between_pole_sets() {
        for n in 2..=4 {
            for total in 0..=6 {
                for p in -3..=3 {
                    let p = PoleShift(p);
                    let all: Vec<_> = compositions(n, total).unwrap().collect();
                    let set_i: BTreeSet<_> = all
                        .iter()
                        .filter(|k| pole_set_membership(k, p).unwrap() == PoleSet::InI)
                        .cloned()
                        .collect();
                    let set_ii: BTreeSet<_> = all
                        .iter()
                        .filter(|k| pole_set_membership(k, p).unwrap() == PoleSet::InII)
                        .cloned()
                        .collect();
                    let image: BTreeSet<_> = set_i.iter().map(|k| phi_map(k, p).unwrap()).collect();
                    assert_eq!(image.len(), set_i.len(), "injective");
                    assert_eq!(image, set_ii, "onto II_p for n={n} K={total} p={p}");
                    for k in set_i.iter().chain(&set_ii) {
                        let back = phi_map(&phi_map(k, p).unwrap(), p).unwrap();
                        assert_eq!(&back, k);
                        assert_eq!(phi_map(k, p).unwrap().total(), total);
                    }
                }
            }
        }
    }
}
