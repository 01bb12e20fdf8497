//! Riemann and Hurwitz zeta via Euler-Maclaurin with an explicit, adaptively
//! monitored remainder; reflection covers the far left half-plane.

use crate::error::{Error, Result};
use crate::hpnum::consts::bernoulli;
use crate::hpnum::{cabs, gamma, ipow_c, pi, Cplx, Prec};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// zeta(s) on C \ {1}. Euler-Maclaurin for Re(s) >= -1/2, reflection below.
pub fn riemann_zeta(s: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let pole_tol = Float::with_val(bits, 10).pow(-(p.digits() as i32));
    if cabs(&(s.clone() - 1u32)) < pole_tol {
        return Err(Error::PoleAtOne);
    }

    if s.real().to_f64() >= -0.5 {
        return Ok(hurwitz_em(&s, 1, 1, false, p));
    }

    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = Complex::with_val(bits, &s);
    let one_minus = (1u32 - &s).complete((bits, bits));
    let z1 = hurwitz_em(&one_minus, 1, 1, false, wp);
    let g = gamma(&one_minus, wp)?;
    let pi_w = pi(wp);
    let two_s = (Complex::with_val(bits, &s) * Float::with_val(bits, 2).ln()).exp();
    let pi_sm1 = ((s.clone() - 1u32) * pi_w.clone().ln()).exp();
    let sin_term = (Complex::with_val(bits, &s) * pi_w / 2u32).sin();
    Ok(two_s * pi_sm1 * sin_term * g * z1)
}

/// Hurwitz zeta(s, a) for rational a = num/den in (0, 1], s != 1.
pub fn hurwitz_zeta(s: &Cplx, num: u32, den: u32, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let pole_tol = Float::with_val(bits, 10).pow(-(p.digits() as i32));
    if cabs(&(s.clone() - 1u32)) < pole_tol {
        return Err(Error::PoleAtOne);
    }
    Ok(hurwitz_em(&s, num, den, false, p))
}

/// zeta(s, a) - 1/(s-1): entire in s, safe at and near s = 1.
pub fn hurwitz_zeta_star(s: &Cplx, num: u32, den: u32, p: Prec) -> Cplx {
    hurwitz_em(s, num, den, true, p)
}

/// Euler-Maclaurin core. a = num/den, 0 < a <= 1.
///
///   zeta(s,a) = sum_{k<N} (k+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
///             + sum_{j>=1} B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
///
/// The Bernoulli tail is truncated at its smallest term; if that term is
/// still above target the prefix length N is doubled and the whole thing is
/// retried (terms shrink like ((|s|+2j)/2 pi N)^2 per step).
fn hurwitz_em(s: &Cplx, num: u32, den: u32, subtract_pole: bool, p: Prec) -> Cplx {
    assert!(num > 0 && num <= den, "need 0 < a <= 1");
    let wp = p.raised(8);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);
    let sf = cabs(&s).to_f64();

    let mut n = 12usize
        .max((0.18 * bits as f64) as usize)
        .max((0.55 * s.imag().to_f64().abs()) as usize)
        .max((0.30 * sf) as usize);

    let target = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
    'outer: loop {
        // prefix sum_{k=0}^{N-1} (k + a)^{-s}
        let minus_s = -s.clone();
        let mut prefix = Complex::with_val(bits, 0);
        for k in 0..n {
            let base = Float::with_val(bits, k as u64 * den as u64 + num as u64) / den;
            prefix += crate::hpnum::rpow_c(&base, &minus_s);
        }

        let na = Float::with_val(bits, n as u64 * den as u64 + num as u64) / den;
        let ln_na = na.clone().ln();

        // (N+a)^{1-s}/(s-1), with the 1/(s-1) pole removed on request
        let u = ((1u32 - &s).complete((bits, bits))) * &ln_na;
        let pole_part = if subtract_pole {
            // ((N+a)^{1-s} - 1)/(s-1) = -ln(N+a) (e^u - 1)/u
            let em1_over_u = if cabs(&u).to_f64() < 0.25 {
                let mut acc = Complex::with_val(bits, 1);
                let mut term = Complex::with_val(bits, 1);
                for k in 2..200u32 {
                    term *= &u;
                    term /= Float::with_val(bits, k);
                    acc += &term;
                    if cabs(&term) < target {
                        break;
                    }
                }
                acc
            } else {
                (u.clone().exp() - 1u32) / &u
            };
            -em1_over_u * &ln_na
        } else {
            u.exp() / (s.clone() - 1u32)
        };

        // (N+a)^{-s}/2
        let na_ms = crate::hpnum::rpow_c(&na, &(-s.clone()));
        let half = (&na_ms / 2u32).complete((bits, bits));

        // Bernoulli tail
        let mut tail = Complex::with_val(bits, 0);
        // T_1 = B_2/2! * s * (N+a)^{-s-1}
        let mut t = (Complex::with_val(bits, &s) * &na_ms) / (Float::with_val(bits, 12) * &na);
        let na2 = na.clone().square();
        let mut last = Float::with_val(bits, f64::INFINITY);
        let scale = cabs(&prefix).max(&Float::with_val(bits, 1));
        let mut j = 1usize;
        loop {
            let mag = cabs(&t);
            if mag > last {
                // diverging before target: need a longer prefix
                if mag > (&target * &scale).complete(bits) {
                    n *= 2;
                    continue 'outer;
                }
                break;
            }
            tail += &t;
            if mag < (&target * &scale).complete(bits) {
                break;
            }
            last = mag;
            // T_{j+1} = T_j * (s+2j-1)(s+2j)/(N+a)^2 * B_{2j+2}/(B_{2j}(2j+1)(2j+2))
            let bratio = bernoulli(2 * j + 2) / bernoulli(2 * j);
            let br = Float::with_val(bits, bratio.numer()) / Float::with_val(bits, bratio.denom());
            t *= (&s + (2 * j as u32 - 1)).complete((bits, bits));
            t *= (&s + (2 * j as u32)).complete((bits, bits));
            t /= &na2;
            t *= br;
            t /= Float::with_val(bits, ((2 * j + 1) * (2 * j + 2)) as u64);
            j += 1;
            if j > 4 * bits as usize {
                break;
            }
        }

        return prefix + pole_part + half + tail;
    }
}

/// Direct Dirichlet-series partial sum with integral tail bound, used as an
/// independent oracle in tests (valid for Re(s) > 1 only).
pub fn zeta_series_oracle(s: &Cplx, terms: u64, p: Prec) -> Cplx {
    let bits = p.bits();
    let minus_s = -Complex::with_val(bits, s);
    let mut acc = Complex::with_val(bits, 0);
    for k in 1..=terms {
        acc += ipow_c(k, &minus_s);
    }
    // integral tail estimate: int_terms^inf x^{-s} dx = terms^{1-s}/(s-1)
    let tail = ipow_c(terms, &(minus_s.clone() + 1u32)) / (Complex::with_val(bits, s) - 1u32);
    acc + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::cplx;
    use crate::hpnum::{pow10, rel_diff};

    #[test]
    fn zeta_two_pi_squared_over_six() {
        let p = Prec::new(50);
        let z = riemann_zeta(&cplx(p, 2, 0), p).unwrap();
        let want = pi(p).square() / 6u32;
        let w = cplx(p, want, 0);
        assert!(rel_diff(&z, &w) < pow10(p, -45));
    }

    #[test]
    fn zeta_zero_is_minus_half_by_reflection() {
        // Re(s) = 0 >= -0.5 goes through Euler-Maclaurin continuation;
        // cross-check the reflection path at s = -0.5 against EM at 1.5.
        let p = Prec::new(40);
        let z0 = riemann_zeta(&cplx(p, 0, 0), p).unwrap();
        assert!(rel_diff(&z0, &cplx(p, -0.5, 0)) < pow10(p, -35));

        let zm = riemann_zeta(&cplx(p, -3, 0), p).unwrap();
        // zeta(-3) = 1/120
        let want = cplx(p, 1, 0) / cplx(p, 120, 0);
        assert!(rel_diff(&zm, &want) < pow10(p, -35));
    }

    #[test]
    fn zeta_conjugate_symmetry() {
        let p = Prec::new(40);
        let z = riemann_zeta(&cplx(p, 2, 3), p).unwrap();
        let zc = riemann_zeta(&cplx(p, 2, -3), p).unwrap();
        assert!(rel_diff(&z.conj(), &zc) < pow10(p, -35));
    }

    #[test]
    fn zeta_matches_series_oracle() {
        let p = Prec::new(30);
        let s = cplx(p, 2.5, 1.5);
        let em = riemann_zeta(&s, p).unwrap();
        let oracle = zeta_series_oracle(&s, 200_000, p);
        // oracle tail is only O(terms^{-1.5}) accurate beyond the correction
        assert!(rel_diff(&em, &oracle) < pow10(p, -7));
    }

    #[test]
    fn hurwitz_reduces_to_riemann() {
        let p = Prec::new(40);
        let s = cplx(p, 3, -2);
        let h = hurwitz_zeta(&s, 1, 1, p).unwrap();
        let z = riemann_zeta(&s, p).unwrap();
        assert!(rel_diff(&h, &z) < pow10(p, -35));
    }

    #[test]
    fn hurwitz_identity_half() {
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let p = Prec::new(40);
        let s = cplx(p, 1.7, 0.9);
        let h = hurwitz_zeta(&s, 1, 2, p).unwrap();
        let z = riemann_zeta(&s, p).unwrap();
        let factor = crate::hpnum::cpow(&cplx(p, 2, 0), &s) - 1u32;
        assert!(rel_diff(&h, &(factor * z)) < pow10(p, -34));
    }

    #[test]
    fn doubling_precision_is_self_consistent() {
        // p -> 2p changes the value by less than the advertised 10^(g-p)
        let p = Prec::new(30);
        let p2 = Prec::new(60);
        for (re, im) in [(2.0, 0.0), (0.5, 14.1), (-0.3, 3.0)] {
            let a = riemann_zeta(&cplx(p, re, im), p).unwrap();
            let b = riemann_zeta(&cplx(p2, re, im), p2).unwrap();
            let d = rel_diff(&a, &b);
            assert!(d < pow10(p, 5 - 30), "s = {re}+{im}i: {:.3e}", d.to_f64());
        }
    }

    #[test]
    fn pole_detected_and_star_value() {
        let p = Prec::new(40);
        assert!(matches!(riemann_zeta(&cplx(p, 1, 0), p), Err(Error::PoleAtOne)));
        // zeta(s,1) - 1/(s-1) -> -psi(1) = gamma at s = 1
        let star = hurwitz_zeta_star(&cplx(p, 1, 0), 1, 1, p);
        let gamma_c = cplx(p, crate::hpnum::euler_gamma(p), 0);
        assert!(rel_diff(&star, &gamma_c) < pow10(p, -35));
    }
}
