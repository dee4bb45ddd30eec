//! Multi-indices `(a_1, ..., a_m)` of non-negative integer exponents.
//!
//! Matrix rows and columns, monomial bases and polynomial terms are all
//! ordered by total degree first and colexicographically within a degree
//! (the last differing coordinate decides), which keeps every output of
//! the library deterministic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Int;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The index with a single 1 in position `var`.
    pub fn unit(dim: usize, var: usize) -> Self {
        let mut e = vec![0; dim];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|a|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a! = a_1! ... a_m!`.
    pub fn factorial(&self) -> Int {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `C(a, k) = prod C(a_i, k_i)`; zero when `k <= a` fails.
    pub fn binomial(&self, k: &MultiIndex) -> Int {
        let mut acc = Int::one();
        for (a, b) in self.0.iter().zip(k.0.iter()) {
            if b > a {
                return Int::zero();
            }
            acc *= binomial(*a, *b);
        }
        acc
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self - other` when `other <= self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if other.leq(self) {
            Some(MultiIndex(
                self.0
                    .iter()
                    .zip(other.0.iter())
                    .map(|(a, b)| a - b)
                    .collect(),
            ))
        } else {
            None
        }
    }

    /// Falling product `self! / (self - sub)!`, i.e. the number of ways of
    /// differentiating `z^self` down by `sub`; zero unless `sub <= self`.
    pub fn falling(&self, sub: &MultiIndex) -> Int {
        match self.checked_sub(sub) {
            Some(rest) => self.factorial() / rest.factorial(),
            None => Int::zero(),
        }
    }
}

pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of monomials of degree `d` in `dim` variables.
pub fn monomial_count(dim: usize, d: u32) -> usize {
    if dim == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let b = binomial(d + dim as u32 - 1, dim as u32 - 1);
    usize::try_from(&b).expect("monomial count fits in usize")
}

/// All multi-indices of total degree `d`, colexicographically ascending.
pub fn indices_of_degree(dim: usize, d: u32) -> Vec<MultiIndex> {
    if dim == 0 {
        return if d == 0 { vec![MultiIndex(vec![])] } else { vec![] };
    }
    if dim == 1 {
        return vec![MultiIndex(vec![d])];
    }
    let mut out = Vec::with_capacity(monomial_count(dim, d));
    for last in 0..=d {
        for prefix in indices_of_degree(dim - 1, d - last) {
            let mut e = prefix.0;
            e.push(last);
            out.push(MultiIndex(e));
        }
    }
    out
}

/// All multi-indices of total degree `<= d`, graded colex ascending.
pub fn indices_up_to(dim: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d).flat_map(|k| indices_of_degree(dim, k)).collect()
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total().cmp(&other.total()) {
            Ordering::Equal => {
                // colex: last differing coordinate decides
                for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                self.0.len().cmp(&other.0.len())
            }
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order_degree_one_and_two() {
        let d1 = indices_of_degree(2, 1);
        assert_eq!(d1, vec![MultiIndex(vec![1, 0]), MultiIndex(vec![0, 1])]);
        let d2 = indices_of_degree(2, 2);
        assert_eq!(
            d2,
            vec![
                MultiIndex(vec![2, 0]),
                MultiIndex(vec![1, 1]),
                MultiIndex(vec![0, 2])
            ]
        );
        let mut sorted = d2.clone();
        sorted.sort();
        assert_eq!(sorted, d2);
    }

    #[test]
    fn counts_match_enumeration() {
        for dim in 1..=4 {
            for d in 0..=5 {
                assert_eq!(indices_of_degree(dim, d).len(), monomial_count(dim, d));
            }
        }
    }

    #[test]
    fn factorial_and_binomial() {
        let a = MultiIndex::new(vec![3, 2]);
        assert_eq!(a.factorial(), BigInt::from(12));
        assert_eq!(a.binomial(&MultiIndex::new(vec![1, 1])), BigInt::from(6));
        assert_eq!(a.binomial(&MultiIndex::new(vec![4, 0])), BigInt::zero());
        assert_eq!(a.falling(&MultiIndex::new(vec![1, 0])), BigInt::from(3));
        assert_eq!(a.falling(&MultiIndex::new(vec![3, 2])), BigInt::from(12));
    }
}
