//! Shared exact constants: Bernoulli numbers and harmonic numbers.
//!
//! Bernoulli numbers are kept as exact rationals, so one global cache serves
//! every working precision. The cache is grown under a mutex; reads clone the
//! (cheap, reference-counted) rationals out.

use rug::{Complete, Integer, Rational};
use std::sync::Mutex;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// B_n (B_1 = -1/2 convention). Exact.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{k=0}^{m-1} C(m+1, k) B_k = -(m+1) B_m  for m >= 1
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // C(m+1, 0)
        for (k, b) in cache.iter().enumerate() {
            acc += (b * &binom).complete();
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom *= m + 1 - k;
            binom /= k as u32 + 1;
        }
        acc /= -Rational::from(m + 1);
        cache.push(acc);
    }
    cache[n].clone()
}

/// H_n = 1 + 1/2 + ... + 1/n as an exact rational (H_0 = 0).
pub fn harmonic(n: u32) -> Rational {
    let mut h = Rational::new();
    for k in 1..=n {
        h += Rational::from((1u32, k));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), Rational::from(0));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Rational::from(0));
        assert_eq!(harmonic(4), Rational::from((25, 12)));
    }
}
