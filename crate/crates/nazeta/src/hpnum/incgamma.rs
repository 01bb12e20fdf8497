//! Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.
//!
//! Entire in s. Three routes:
//! * Legendre continued fraction (modified Lentz) once x is comfortably
//!   larger than |s|, the workhorse for theta-split zeta tails;
//! * power series through the lower gamma for small x, with a precision
//!   boost covering the Gamma(s) - gamma(s, x) cancellation;
//! * for s at (or within rounding of) a non-positive integer the series
//!   route would hit the Gamma(s) pole, so E_1 plus the downward recurrence
//!   Gamma(s-1, x) = (Gamma(s, x) - x^{s-1} e^{-x}) / (s - 1) is used.

use super::{cabs, euler_gamma, gamma, Cplx, Prec, Real};
use crate::error::Result;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt, x > 0.
pub fn upper_incomplete_gamma(s: &Cplx, x: &Real, p: Prec) -> Result<Cplx> {
    assert!(!x.is_sign_negative() && !x.is_zero(), "need x > 0");
    let s_abs = cabs(s).to_f64();
    let xf = x.to_f64();

    if xf >= (1.5f64).max(1.2 * s_abs + 2.0) {
        return Ok(cf_lentz(s, x, p));
    }

    // series territory; route around the Gamma(s) pole at 0, -1, -2, ...
    let bits = p.bits();
    let int_tol = Float::with_val(64, 2).pow(-((bits / 2) as i32));
    let re_round = s.real().clone().round();
    let n = re_round.to_f64() as i64;
    let dist = {
        let dx = (s.real() - re_round).abs();
        let dy = s.imag().clone().abs();
        Float::max(dx, &dy)
    };
    if n <= 0 && dist <= int_tol {
        return Ok(nonpositive_integer_order((-n) as u32, x, p));
    }
    let near_pole_boost = if n <= 0 && dist < 1 {
        (-dist.to_f64().log10()).ceil().max(0.0) as u32
    } else {
        0
    };
    series_route(s, x, p.raised(near_pole_boost))
}

/// Modified Lentz on the Legendre continued fraction
/// Gamma(s,x) = e^{-x} x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - 2(2-s)/(...))).
fn cf_lentz(s: &Cplx, x: &Real, p: Prec) -> Cplx {
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);
    let x = Float::with_val(bits, x);

    let tiny = Float::with_val(bits, 2).pow(-(bits as i32) * 4);
    let eps = Float::with_val(bits, 2).pow(-(bits as i32) - 4);

    let b0 = -Complex::with_val(bits, &s) + ((&x + 1u32).complete(bits));
    let mut f = b0;
    if f.real().is_zero() && f.imag().is_zero() {
        f = Complex::with_val(bits, (&tiny, &Float::new(bits)));
    }
    let mut c = f.clone();
    let mut d = Complex::with_val(bits, 0);
    for k in 1..=(200 + 40 * bits as usize) {
        let kf = Float::with_val(bits, k as u64);
        let a = (Complex::with_val(bits, &s) - &kf) * &kf; // a_k = k (s - k), sign folded below
        let b = -Complex::with_val(bits, &s) + ((&x + (2 * k + 1) as u64).complete(bits));

        // d = 1/(b + a d); the CF uses subtraction: b - k(k-s) = b + k(s-k)
        d = b.clone() + (&a * &d).complete((bits, bits));
        if d.real().is_zero() && d.imag().is_zero() {
            d = Complex::with_val(bits, (&tiny, &Float::new(bits)));
        }
        d = d.recip();
        c = b + (&a / &c).complete((bits, bits));
        if c.real().is_zero() && c.imag().is_zero() {
            c = Complex::with_val(bits, (&tiny, &Float::new(bits)));
        }
        let delta = (&c * &d).complete((bits, bits));
        f *= &delta;
        let err = cabs(&(delta - 1u32));
        if err < eps {
            break;
        }
    }

    let ln_x = x.clone().ln();
    let pref = ((Complex::with_val(bits, &s) * ln_x) - &x).exp();
    pref / f
}

/// Gamma(s) - x^s e^{-x} sum_k x^k / (s (s+1) ... (s+k)).
fn series_route(s: &Cplx, x: &Real, p: Prec) -> Result<Cplx> {
    // cancellation between Gamma(s) and gamma(s,x) costs about x digits
    let boost = (0.44 * x.to_f64()).ceil() as u32 + 10;
    let wp = p.raised(boost);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);
    let x = Float::with_val(bits, x);

    let mut denom = s.clone();
    let mut term = denom.clone().recip();
    let mut acc = term.clone();
    let eps = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
    for k in 1..=(64 * bits as usize) {
        denom = (&s + k as u64).complete((bits, bits));
        term *= &x;
        term /= denom;
        acc += &term;
        if cabs(&term) < eps.clone() * cabs(&acc).max(&Float::with_val(bits, 1e-300)) {
            break;
        }
    }
    let lower = ((Complex::with_val(bits, &s) * x.clone().ln()) - &x).exp() * acc;
    Ok(gamma(&s, wp)? - lower)
}

/// Gamma(-n, x) for integer n >= 0 via E_1(x) and downward recurrence.
fn nonpositive_integer_order(n: u32, x: &Real, p: Prec) -> Cplx {
    let boost = (0.44 * x.to_f64()).ceil() as u32 + 10 + 2 * n;
    let wp = p.raised(boost);
    let bits = wp.bits();
    let x = Float::with_val(bits, x);

    // E_1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    let mut e1 = -euler_gamma(wp) - x.clone().ln();
    let mut term = Float::with_val(bits, 1);
    let eps = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
    for k in 1u64..=(64 * bits as u64) {
        term *= &x;
        term /= Float::with_val(bits, k);
        let add = &term / Float::with_val(bits, k);
        if k % 2 == 1 {
            e1 += &add;
        } else {
            e1 -= &add;
        }
        if add.abs() < eps {
            break;
        }
    }

    // walk down: Gamma(-(m+1), x) = (Gamma(-m, x) - x^{-m-1} e^{-x}) / (-(m+1))
    let emx = (-x.clone()).exp();
    let mut g = e1; // Gamma(0, x)
    for m in 0..n {
        let xp = x.clone().pow(-(m as i32) - 1);
        g = (g - xp * &emx) / Float::with_val(bits, -((m + 1) as i64));
    }
    Complex::with_val(bits, (g, Float::new(bits)))
}
