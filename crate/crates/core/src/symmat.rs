//! Obstructions for the rank stratification of `n × n` symmetric matrices.
//!
//! `e_{i,j}` is the obstruction of the rank-`≤ j` locus at a rank-`i`
//! matrix. It agrees with `e_{y,w}` for `y = β^i α^{n−i}`, `w = β^j α^{n−j}`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RankPair {
    n: usize,
    i: usize,
    j: usize,
}

impl RankPair {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if n == 0 || i > n || j > n {
            return Err(Error::InvalidRankPair { n, i, j });
        }
        Ok(RankPair { n, i, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

/// `C(n, k)` from a row of Pascal's triangle.
pub fn binomial<C: Count>(n: usize, k: usize) -> C {
    if k > n {
        return C::zero();
    }
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(C::one());
        for pair in row.windows(2) {
            next.push(pair[0].add_exact(&pair[1]));
        }
        next.push(C::one());
        row = next;
    }
    row.swap_remove(k)
}

pub fn symmetric_euler_formula(p: RankPair) -> BigUint {
    symmetric_euler_formula_as(p)
}

/// 0 when `i > j` or when `n − i` is even and `n − j` odd; otherwise
/// `C(⌊(n−i)/2⌋, ⌊(j−i)/2⌋)`.
pub fn symmetric_euler_formula_as<C: Count>(p: RankPair) -> C {
    let RankPair { n, i, j } = p;
    if i > j || ((n - i) % 2 == 0 && (n - j) % 2 == 1) {
        return C::zero();
    }
    binomial((n - i) / 2, (j - i) / 2)
}

pub fn symmetric_to_words(p: RankPair) -> Result<(Word, Word)> {
    let RankPair { n, i, j } = p;
    if i > j {
        return Err(Error::InvalidRankPair { n, i, j });
    }
    let y = Word::betas(i).concat(&Word::alphas(n - i));
    let w = Word::betas(j).concat(&Word::alphas(n - j));
    Ok((y, w))
}
