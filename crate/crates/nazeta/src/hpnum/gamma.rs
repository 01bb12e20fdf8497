//! Complex Gamma via the Stirling series with argument shift and reflection.
//!
//! ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2
//!             + sum_{k>=1} B_{2k} / (2k (2k-1) z^{2k-1})  + R_q
//!
//! The Bernoulli tail starts diverging once 2k exceeds ~ 2 pi |z|, so the
//! argument is first shifted right until Re(z) is large enough that the
//! series bottoms out below the target accuracy; the shift is undone with an
//! exact product. Re(z) < 1/2 goes through the reflection formula, with the
//! working precision raised by the digits lost when z sits close to a pole.

use super::consts::bernoulli;
use super::{cabs, cplx, near_integer, pi, Cplx, Prec, Real};
use crate::error::{Error, Result};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// ln Gamma(z) for Re(z) > 0, principal branch.
pub fn ln_gamma(z: &Cplx, p: Prec) -> Cplx {
    let wp = p.raised(10);
    let bits = wp.bits();
    let z = Complex::with_val(bits, z);
    debug_assert!(z.real().is_sign_positive());

    // Shift so that the Stirling series can reach 2^-bits: terms bottom out
    // near e^{-2 pi Re(z)} (worst case along the imaginary direction).
    let target = bits as f64 * std::f64::consts::LN_2;
    let shift_to = target / (2.0 * std::f64::consts::PI) * 1.05 + 4.0;
    let re = z.real().to_f64();
    let n = if re < shift_to {
        (shift_to - re).ceil() as u32
    } else {
        0
    };

    // Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1))
    let mut log_prod = Complex::with_val(bits, 0);
    let mut factor = Complex::with_val(bits, 1);
    for k in 0..n {
        factor *= (&z + k).complete((bits, bits));
        // keep the running product from over/underflowing the exponent range
        if k % 64 == 63 {
            log_prod += factor.clone().ln();
            factor = Complex::with_val(bits, 1);
        }
    }
    log_prod += factor.ln();

    let zs = (&z + n).complete((bits, bits));
    let ln_zs = zs.clone().ln();
    let mut acc = (zs.clone() - Float::with_val(bits, 0.5)) * &ln_zs - &zs;
    let two_pi = pi(wp) * 2u32;
    acc += two_pi.ln() / 2u32;

    // Bernoulli tail, adaptively truncated at its smallest term.
    let zs2 = zs.clone().square();
    let mut zpow = zs.clone(); // z^{2k-1}
    let mut last = Float::with_val(bits, f64::INFINITY);
    for k in 1..=(bits as usize) {
        let b = bernoulli(2 * k);
        let denom = Float::with_val(bits, (2 * k * (2 * k - 1)) as u64);
        let term = (Complex::with_val(bits, (Float::with_val(bits, b.numer()), Float::new(bits)))
            / (Float::with_val(bits, b.denom()) * denom))
            / &zpow;
        let mag = cabs(&term);
        if mag > last {
            break; // asymptotic series started to diverge
        }
        acc += &term;
        if mag.to_f64().log2() < -(bits as f64) - 4.0 {
            break;
        }
        last = mag;
        zpow *= &zs2;
    }

    acc - log_prod
}

/// Gamma(z) to relative 10^(g-p). Reflection is used for Re(z) < 1/2.
pub fn gamma(z: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.raised(10).bits();
    let z = Complex::with_val(bits, z);

    if z.real().to_f64() >= 0.5 {
        return Ok(ln_gamma(&z, p).exp());
    }

    // Pole and near-pole bookkeeping on the left half-plane.
    let tol = Float::with_val(bits, 2).pow((-(bits as i32)) / 2);
    if z.imag().clone().abs() < tol {
        if let Some(n) = near_integer(z.real(), &tol) {
            if n <= 0 {
                return Err(Error::PoleAtNonPositiveInteger(format!("{:.6}", z.real().to_f64())));
            }
        }
    }

    // Digits lost in sin(pi z) when z is near a (non-positive) integer.
    let dist = {
        let r = z.real().clone().round();
        let dx = (z.real() - r).abs();
        let dy = z.imag().clone().abs();
        Float::max(dx, &dy)
    };
    let lost = if dist < 1 {
        (-dist.to_f64().log10()).ceil().max(0.0) as u32
    } else {
        0
    };
    let wp = p.raised(lost + 10);
    let bits = wp.bits();
    let z = Complex::with_val(bits, &z);

    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    let pi_w = pi(wp);
    let one_minus = (1u32 - &z).complete((bits, bits));
    let g = ln_gamma(&one_minus, wp).exp();
    let s = (Complex::with_val(bits, &z) * &pi_w).sin();
    let denom = s * g;
    if denom.real().is_zero() && denom.imag().is_zero() {
        return Err(Error::PoleAtNonPositiveInteger(format!("{:.6e}", z.real().to_f64())));
    }
    Ok(Complex::with_val(bits, &pi_w) / denom)
}

/// Gamma(x) for real x, same path as the complex routine.
pub fn gamma_real(x: &Real, p: Prec) -> Result<Real> {
    let z = cplx(p, x.clone(), 0);
    Ok(gamma(&z, p)?.into_real_imag().0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{pow10, rel_diff};

    fn check_rel(a: &Cplx, b: &Cplx, digits: i32) {
        let d = rel_diff(a, b);
        assert!(
            d < pow10(Prec::new(30), -digits),
            "rel diff {:.3e} exceeds 1e-{}",
            d.to_f64(),
            digits
        );
    }

    #[test]
    fn gamma_small_integers() {
        let p = Prec::new(50);
        // Gamma(1) = 1 and Gamma(5) = 24, factorial identity
        let g1 = gamma(&cplx(p, 1, 0), p).unwrap();
        check_rel(&g1, &cplx(p, 1, 0), 45);
        let g5 = gamma(&cplx(p, 5, 0), p).unwrap();
        check_rel(&g5, &cplx(p, 24, 0), 45);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let p = Prec::new(60);
        let g = gamma(&cplx(p, 0.5, 0), p).unwrap();
        let sp = pi(p).sqrt();
        check_rel(&g, &Cplx::with_val(p.bits(), (sp, Float::new(p.bits()))), 55);
    }

    #[test]
    fn gamma_reflection_left_half_plane() {
        let p = Prec::new(40);
        // Gamma(z) Gamma(1-z) sin(pi z) = pi at z = -2.3 + 1.1i
        let z = cplx(p, -2.3, 1.1);
        let a = gamma(&z, p).unwrap();
        let b = gamma(&(1u32 - z.clone()), p).unwrap();
        let s = (z * pi(p)).sin();
        let lhs = a * b * s;
        let rhs = Cplx::with_val(p.bits(), (pi(p), Float::new(p.bits())));
        check_rel(&lhs, &rhs, 35);
    }

    #[test]
    fn gamma_pole_detected() {
        let p = Prec::new(30);
        assert!(matches!(
            gamma(&cplx(p, -3, 0), p),
            Err(Error::PoleAtNonPositiveInteger(_))
        ));
        assert!(matches!(
            gamma(&cplx(p, 0, 0), p),
            Err(Error::PoleAtNonPositiveInteger(_))
        ));
    }

    #[test]
    fn lngamma_agrees_with_mpfr_on_reals() {
        // MPFR's lngamma is an independent implementation; use it as oracle.
        let p = Prec::new(50);
        for x in [0.7, 1.0, 3.25, 11.5, 27.0] {
            let ours = ln_gamma(&cplx(p, x, 0), p);
            let mpfr = Float::with_val(p.bits(), x).ln_gamma();
            let diff = (ours.real() - &mpfr).complete(p.bits()).abs();
            let scale = Float::max(mpfr.abs(), &Float::with_val(p.bits(), 1));
            assert!(diff / scale < pow10(p, -45), "x = {x}");
        }
    }
}
