use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::tol::SERIES_TERMS;

/// Highest Bernoulli index kept in the table.
pub const MAX_BERNOULLI: usize = 2 * SERIES_TERMS;

static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();

/// Bernoulli numbers `B_0 ..= B_48` (convention `B_1 = +1/2`), computed once
/// with the Akiyama-Tanigawa recurrence.
pub fn bernoulli_table() -> &'static [BigRational] {
    TABLE.get_or_init(|| akiyama_tanigawa(MAX_BERNOULLI))
}

pub fn bernoulli(n: usize) -> BigRational {
    if n <= MAX_BERNOULLI {
        bernoulli_table()[n].clone()
    } else {
        akiyama_tanigawa(n).pop().expect("non-empty")
    }
}

fn akiyama_tanigawa(max: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(max + 1);
    let mut out = Vec::with_capacity(max + 1);
    for m in 0..=max {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = d * BigInt::from(j);
        }
        out.push(a[0].clone());
    }
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact Taylor coefficients `a_1, a_3, ..., a_{2N-1}` of the canonical
/// function, `a_{2n-1} = B_{2n} / (2n)!`, returned as a dense list
/// `[a_0, a_1, ..., a_{2N-1}]` with zero even entries.
pub fn canonical_series(terms: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); 2 * terms];
    for n in 1..=terms {
        c[2 * n - 1] = bernoulli(2 * n) / factorial(2 * n);
    }
    c
}
