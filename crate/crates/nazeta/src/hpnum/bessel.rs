//! Modified Bessel function K_nu(x) for real x > 0 and real or complex order.
//!
//! Two regimes, with the crossover documented here once:
//!
//! * small/moderate x, the reflection series
//!   `K_nu = pi/2 (I_{-nu} - I_nu) / sin(pi nu)`,
//!   run with the working precision raised by ~0.87 x digits (the I-series
//!   grows like e^x while K decays like e^{-x}) plus the digits lost when nu
//!   sits near an integer. Exactly-integer order uses the DLMF 10.31.2
//!   logarithmic series instead.
//! * large x, the asymptotic expansion
//!   `K_nu(x) ~ sqrt(pi/2x) e^{-x} sum a_k(nu) x^{-k}`,
//!   used once x >= max(10, |nu|^2/2, 1.16 p + 8), which is where it can
//!   reach 10^-p before its terms turn around; if it stalls we fall back to
//!   the series.

use super::consts::harmonic;
use super::{cabs, euler_gamma, pi, Cplx, Prec, Real};
use crate::error::{Error, Result};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// K_nu(x) for complex order nu and real x > 0.
pub fn bessel_k_complex(nu: &Cplx, x: &Real, p: Prec) -> Result<Cplx> {
    if x.is_sign_negative() || x.is_zero() {
        return Err(Error::NonPositiveArgument(format!("{:.6}", x.to_f64())));
    }

    // K is even in nu; keep Re(nu) >= 0.
    let mut nu = nu.clone();
    if nu.real().is_sign_negative() {
        nu = -nu;
    }

    let xf = x.to_f64();
    let nu_abs = cabs(&nu).to_f64();
    let crossover = 10.0f64.max(nu_abs * nu_abs / 2.0).max(1.16 * p.digits() as f64 + 8.0);
    if xf >= crossover {
        if let Some(v) = k_asymptotic(&nu, x, p) {
            return Ok(v);
        }
    }
    k_series(&nu, x, p)
}

/// K_nu(x) for real order, same error contract.
pub fn bessel_k(nu: &Real, x: &Real, p: Prec) -> Result<Real> {
    let nuc = Complex::with_val(nu.prec().max(p.bits()), (nu.clone(), Float::new(nu.prec())));
    Ok(bessel_k_complex(&nuc, x, p)?.into_real_imag().0)
}

/// sqrt(pi/2x) e^{-x} sum_k a_k(nu)/x^k, or None if the expansion cannot
/// reach the target accuracy before diverging.
fn k_asymptotic(nu: &Cplx, x: &Real, p: Prec) -> Option<Cplx> {
    let wp = p.raised(10);
    let bits = wp.bits();
    let x = Float::with_val(bits, x);
    let nu = Complex::with_val(bits, nu);

    let nu2_4 = Complex::with_val(bits, &nu).square() * 4u32;
    let mut term = Complex::with_val(bits, 1);
    let mut acc = Complex::with_val(bits, 1);
    let target = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
    let mut last = Float::with_val(bits, f64::INFINITY);
    let mut ok = false;
    for k in 1..=(4 * bits as usize) {
        let odd = Float::with_val(bits, (2 * k - 1) as u64).square();
        let num = (&nu2_4 - odd).complete((bits, bits));
        term *= num;
        term /= Float::with_val(bits, 8 * k as u64) * &x;
        let mag = cabs(&term);
        if mag > last {
            break; // asymptotic turnaround before reaching target
        }
        acc += &term;
        if mag < target {
            ok = true;
            break;
        }
        last = mag;
    }
    if !ok {
        return None;
    }
    let pref = (pi(wp) / (Float::with_val(bits, 2) * &x)).sqrt() * (-x).exp();
    Some(acc * pref)
}

fn k_series(nu: &Cplx, x: &Real, p: Prec) -> Result<Cplx> {
    // Cancellation budget: |I_nu| / |K_nu| ~ e^{2x}, plus the blow-up of
    // 1/sin(pi nu) near integer orders.
    let xf = x.to_f64();
    let boost = (0.87 * xf).ceil() as u32 + (0.69 * nu.imag().to_f64().abs()).ceil() as u32 + 15;

    let int_tol = Float::with_val(64, 10).pow(-((p.digits() + 15) as i32));
    let re_round = nu.real().clone().round();
    let dist = {
        let dx = (nu.real() - re_round.clone()).abs();
        let dy = nu.imag().clone().abs();
        Float::max(dx, &dy)
    };
    if dist <= int_tol {
        let n = (re_round.to_f64().abs()) as u32;
        return Ok(k_integer_order(n, x, p.raised(boost)));
    }
    let near = if dist < 1 {
        (-dist.to_f64().log10()).ceil().max(0.0) as u32
    } else {
        0
    };

    let wp = p.raised(boost + near);
    let bits = wp.bits();
    let x = Float::with_val(bits, x);
    let nu = Complex::with_val(bits, nu);

    let i_plus = i_series(&nu, &x, bits, wp)?;
    let i_minus = i_series(&(-nu.clone()), &x, bits, wp)?;
    let s = (Complex::with_val(bits, &nu) * pi(wp)).sin();
    Ok((i_minus - i_plus) * pi(wp) / (Float::with_val(bits, 2) * s))
}

/// Power series for I_nu(x); requires nu not a negative integer.
fn i_series(nu: &Cplx, x: &Real, bits: u32, wp: Prec) -> Result<Cplx> {
    let half_x = (x / 2u32).complete(bits);
    // first term (x/2)^nu / Gamma(nu+1)
    let g = super::gamma::gamma(&(nu + 1u32).complete((bits, bits)), wp)?;
    let mut term = (Complex::with_val(bits, nu) * half_x.clone().ln()).exp() / g;
    let q = half_x.square();
    let mut acc = term.clone();
    let target = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
    let t0 = cabs(&acc).max(&Float::with_val(bits, 1e-300));
    for k in 1..=(64 * bits as usize) {
        term *= &q;
        term /= (Complex::with_val(bits, nu) + k as u64) * Float::with_val(bits, k as u64);
        acc += &term;
        if cabs(&term) < (&target * &t0).complete(bits) {
            break;
        }
    }
    Ok(acc)
}

/// DLMF 10.31.2 for non-negative integer order.
fn k_integer_order(n: u32, x: &Real, wp: Prec) -> Cplx {
    let bits = wp.bits();
    let x = Float::with_val(bits, x);
    let half_x = (&x / 2u32).complete(bits);
    let ln_half_x = half_x.clone().ln();
    let q = half_x.clone().square(); // x^2/4
    let gamma_e = euler_gamma(wp);

    // finite sum: (1/2)(x/2)^{-n} sum_{k<n} ((n-k-1)!/k!) (-x^2/4)^k
    let mut finite = Float::new(bits);
    if n > 0 {
        let mut fact_nk = Float::with_val(bits, 1); // (n-1)!
        for j in 1..n {
            fact_nk *= j;
        }
        let mut term = fact_nk; // (n-k-1)!/k! * (-q)^k at k=0
        let half_x_pow = half_x.clone().pow(-(n as i32));
        for k in 0..n {
            finite += &term;
            if k + 1 < n {
                // advance: divide by (n-k-1), divide by (k+1), multiply by -q
                term /= Float::with_val(bits, (n - k - 1) as u64);
                term /= Float::with_val(bits, (k + 1) as u64);
                term *= &q;
                term = -term;
            }
        }
        finite *= half_x_pow;
        finite /= 2u32;
    }

    // I_n(x)
    let mut i_n = {
        let mut t = half_x.clone().pow(n as i32);
        let mut fact = Float::with_val(bits, 1);
        for j in 1..=n {
            fact *= j;
        }
        t /= fact;
        let mut acc = t.clone();
        let target = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
        for k in 1u64..=(64 * bits as u64) {
            t *= &q;
            t /= Float::with_val(bits, k) * Float::with_val(bits, k + n as u64);
            acc += &t;
            if t.clone().abs() < target.clone() * acc.clone().abs().max(&Float::with_val(bits, 1e-300)) {
                break;
            }
        }
        acc
    };
    let sign_n1 = if n % 2 == 0 { -1i32 } else { 1i32 }; // (-1)^{n+1}
    i_n *= &ln_half_x;
    i_n *= sign_n1;

    // psi series: (-1)^n (1/2)(x/2)^n sum_k (psi(k+1)+psi(n+k+1)) q^k/(k!(n+k)!)
    let mut psi_sum = Float::new(bits);
    {
        let mut coef = half_x.clone().pow(n as i32); // (x/2)^n / (k! (n+k)!) * q^k
        let mut fact = Float::with_val(bits, 1);
        for j in 1..=n {
            fact *= j;
        }
        coef /= fact;
        let mut h_k = Float::new(bits); // H_k
        let mut h_nk = Float::with_val(bits, harmonic(n)); // H_{n+k}
        let target = Float::with_val(bits, 2).pow(-(bits as i32) - 4);
        for k in 0u64..(64 * bits as u64) {
            // psi(k+1) + psi(n+k+1) = -2 gamma + H_k + H_{n+k}
            let psi = (&h_k + &h_nk).complete(bits) - (&gamma_e * 2u32).complete(bits);
            let term = (&coef * &psi).complete(bits);
            psi_sum += &term;
            if term.abs() < target.clone() * psi_sum.clone().abs().max(&Float::with_val(bits, 1e-280)) && k > 2 {
                break;
            }
            coef *= &q;
            coef /= Float::with_val(bits, k + 1);
            coef /= Float::with_val(bits, k + 1 + n as u64);
            h_k += Float::with_val(bits, k + 1).recip();
            h_nk += Float::with_val(bits, k + 1 + n as u64).recip();
        }
        psi_sum /= 2u32;
        if n % 2 == 1 {
            psi_sum = -psi_sum;
        }
    }

    let total = finite + i_n + psi_sum;
    Complex::with_val(bits, (total, Float::new(bits)))
}
