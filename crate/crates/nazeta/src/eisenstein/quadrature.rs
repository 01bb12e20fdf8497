//! Gauss-Legendre quadrature at working precision, the Mellin-formula
//! check, and the 2D integration of the completed Eisenstein series over the
//! truncated fundamental domain D_T = {|z| >= 1, |x| <= 1/2, y <= T}.

use super::FourierEvaluator;
use crate::error::{Error, Result};
use crate::hpnum::{cabs, gamma, rpow_c, Cplx, Prec, Real};
use crate::rank2::rank2_zeta_t;
use rayon::prelude::*;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::Mutex;

static GL_CACHE: Mutex<Option<HashMap<(usize, u32), Vec<(Real, Real)>>>> = Mutex::new(None);

/// Gauss-Legendre nodes and weights on (-1, 1), Newton-refined at working
/// precision from float64 Chebyshev seeds; cached per (order, bits).
pub fn gauss_legendre(n: usize, p: Prec) -> Vec<(Real, Real)> {
    let bits = p.bits();
    {
        let cache = GL_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(n, bits)) {
                return v.clone();
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let eps = Float::with_val(bits, 2).pow(-(bits as i32) + 4);
    for i in 0..n {
        // Chebyshev-style seed
        let seed = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(bits, seed);
        let mut dp = Float::new(bits);
        for _ in 0..200 {
            // Legendre P_n(x) and P'_n(x) by recurrence
            let mut p0 = Float::with_val(bits, 1);
            let mut p1 = x.clone();
            for k in 2..=n {
                let kf = Float::with_val(bits, k as u32);
                let a = Float::with_val(bits, (2 * k - 1) as u32) * &x * &p1;
                let b = Float::with_val(bits, (k - 1) as u32) * &p0;
                let pn = (a - b) / kf;
                p0 = p1;
                p1 = pn;
            }
            // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
            let x2m1 = x.clone().square() - 1u32;
            dp = (Float::with_val(bits, n as u32)
                * ((&x * &p1).complete(bits) - &p0))
                / x2m1;
            let delta = (&p1 / &dp).complete(bits);
            x -= &delta;
            if delta.abs() < eps {
                break;
            }
        }
        // w = 2 / ((1 - x^2) P'_n(x)^2)
        let w = Float::with_val(bits, 2)
            / ((Float::with_val(bits, 1) - x.clone().square()) * dp.square());
        out.push((x, w));
    }
    let mut cache = GL_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((n, bits), out.clone());
    out
}

/// Integral of f over [a, b] by a single n-point Gauss-Legendre rule.
pub fn integrate_gl<F>(f: &F, a: &Real, b: &Real, n: usize, p: Prec) -> Result<Cplx>
where
    F: Fn(&Real) -> Result<Cplx>,
{
    let bits = p.bits();
    let half = ((b - a).complete(bits)) / 2u32;
    let mid = ((a + b).complete(bits)) / 2u32;
    let mut acc = Complex::with_val(bits, 0);
    for (x, w) in gauss_legendre(n, p) {
        let t = (&half * &x).complete(bits) + &mid;
        acc += f(&t)? * w;
    }
    Ok(acc * half)
}

/// Adaptive panel integration: bisect until the n and 2n point rules agree
/// to `tol` (absolute, against the accumulated scale).
pub fn integrate_adaptive<F>(f: &F, a: &Real, b: &Real, n: usize, tol: &Real, p: Prec) -> Result<Cplx>
where
    F: Fn(&Real) -> Result<Cplx> + Sync,
{
    fn rec<F>(
        f: &F,
        a: &Real,
        b: &Real,
        n: usize,
        tol: &Real,
        p: Prec,
        depth: u32,
    ) -> Result<Cplx>
    where
        F: Fn(&Real) -> Result<Cplx> + Sync,
    {
        let coarse = integrate_gl(f, a, b, n, p)?;
        let fine = integrate_gl(f, a, b, 2 * n, p)?;
        let err = cabs(&(fine.clone() - &coarse));
        if err <= *tol || depth >= 30 {
            return Ok(fine);
        }
        let bits = p.bits();
        let mid = ((a + b).complete(bits)) / 2u32;
        let half_tol = (tol / 2u32).complete(bits);
        let left = rec(f, a, &mid, n, &half_tol, p, depth + 1)?;
        let right = rec(f, &mid, b, n, &half_tol, p, depth + 1)?;
        Ok(left + right)
    }
    rec(f, a, b, n, tol, p, 0)
}

/// The Mellin formula int_0^inf e^{-A t^B} t^s dt/t = (1/B) A^{-s/B} Gamma(s/B):
/// returns (adaptive quadrature of the integral, closed form).
pub fn mellin_check(a_coef: &Real, b_exp: &Real, s: &Cplx, p: Prec) -> Result<(Cplx, Cplx)> {
    if !a_coef.is_sign_positive() || !b_exp.is_sign_positive() || s.real().to_f64() <= 0.0 {
        return Err(Error::InvalidInput("need A > 0, B > 0, Re(s) > 0".into()));
    }
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);
    let a_coef = Float::with_val(bits, a_coef);
    let b_exp = Float::with_val(bits, b_exp);

    // closed form
    let s_over_b = (&s / &b_exp).complete((bits, bits));
    let closed = rpow_c(&a_coef, &(-s_over_b.clone())) * gamma(&s_over_b, wp)?
        / &b_exp;

    // substitution t = e^u: integrand exp(-A e^{B u} + s u) on (-inf, inf)
    let digits = p.digits() as f64 + 8.0;
    let sigma = s.real().to_f64();
    let ln10 = std::f64::consts::LN_10;
    let u_hi = ((digits * ln10 + 40.0) / a_coef.to_f64()).ln() / b_exp.to_f64() + 1.0;
    let u_lo = -(digits * ln10 + 10.0) / sigma - 5.0;

    let f = |u: &Real| -> Result<Cplx> {
        let eu = (u * &b_exp).complete(bits).exp();
        let expo = Complex::with_val(bits, &s) * u - eu * &a_coef;
        Ok(expo.exp())
    };
    let tol_val = crate::hpnum::pow10(wp, -(p.digits() as i32) - 6)
        * cabs(&closed).max(&Float::with_val(bits, 1));
    let numeric = integrate_adaptive(
        &f,
        &Float::with_val(bits, u_lo),
        &Float::with_val(bits, u_hi),
        24,
        &tol_val,
        wp,
    )?;
    Ok((numeric, closed))
}

/// Numeric integral of E*(z, s) d mu over D_T against the closed rank-two
/// form xi(2s)/(s-1) T^{s-1} - xi(2s-1)/s T^{-s}; returns (numeric, closed).
///
/// Quadrature: outer Gauss-Legendre in x on [0, 1/2] (integrand even in x),
/// inner y panels geometrically graded from y_low(x) = sqrt(1 - x^2) up to
/// T (the 1/y^2 measure concentrates mass at the bottom).
pub fn integrate_truncated_domain(
    s: &Cplx,
    t_cut: &Real,
    quad_order: usize,
    p: Prec,
) -> Result<(Cplx, Cplx)> {
    if s.real().to_f64() <= 1.0 {
        return Err(Error::AbscissaViolation {
            need: 1.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    if t_cut.to_f64() < 1.0 {
        return Err(Error::InvalidInput("need T >= 1".into()));
    }
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let closed = rank2_zeta_t(&s, t_cut, p)?;

    // shared s-dependent Fourier data; smallest y on the domain is sqrt(3)/2
    let ev = FourierEvaluator::new(&s, 0.86, p)?;

    let xs = gauss_legendre(quad_order, p);
    let half = Float::with_val(bits, 0.5);
    let quarter = (&half / 2u32).complete(bits);

    // outer nodes mapped to [0, 1/2]
    let columns: Vec<(Real, Real)> = xs
        .iter()
        .map(|(x, w)| {
            let xv = (&quarter * x).complete(bits) + &quarter;
            let wv = (&quarter * w).complete(bits);
            (xv, wv)
        })
        .collect();

    let col_results: Result<Vec<Cplx>> = columns
        .par_iter()
        .map(|(xv, wv)| -> Result<Cplx> {
            let y_low = (Float::with_val(bits, 1) - xv.clone().square()).sqrt();
            // geometric y-panels [y_k, y_{k+1}], ratio 1.6
            let mut acc = Complex::with_val(bits, 0);
            let mut lo = y_low.clone();
            let ratio = Float::with_val(bits, 1.6);
            loop {
                let mut hi = (&lo * &ratio).complete(bits);
                if hi > *t_cut {
                    hi = Float::with_val(bits, t_cut);
                }
                let g = |y: &Real| -> Result<Cplx> {
                    let z = Complex::with_val(bits, (xv.clone(), y.clone()));
                    let val = ev.eval(&z)?;
                    Ok(val / y.clone().square())
                };
                acc += integrate_gl(&g, &lo, &hi, quad_order, p)?;
                if hi >= *t_cut {
                    break;
                }
                lo = hi;
            }
            Ok(acc * wv)
        })
        .collect();

    let mut total = Complex::with_val(bits, 0);
    for c in col_results? {
        total += c;
    }
    // even in x: double the [0, 1/2] half
    total *= 2u32;
    Ok((total, closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::cplx;
    use crate::hpnum::{pi, pow10, real, rel_diff};

    #[test]
    fn gl_nodes_integrate_polynomials() {
        let p = Prec::new(35);
        // int_-1^1 x^4 dx = 2/5 with a 6-point rule (exact for degree 11)
        let f = |x: &Real| -> Result<Cplx> { Ok(cplx(p, x.clone().square().square(), 0)) };
        let v = integrate_gl(&f, &real(p, -1), &real(p, 1), 6, p).unwrap();
        let want = cplx(p, real(p, 2) / 5u32, 0);
        assert!(rel_diff(&v, &want) < pow10(p, -28));
    }

    #[test]
    fn mellin_identity_cases() {
        let p = Prec::new(30);
        // (A,B,s) = (1,1,2): both sides Gamma(2) = 1
        let (n1, c1) = mellin_check(&real(p, 1), &real(p, 1), &cplx(p, 2, 0), p).unwrap();
        assert!(rel_diff(&c1, &cplx(p, 1, 0)) < pow10(p, -24));
        assert!(rel_diff(&n1, &c1) < pow10(p, -20), "rel {:.3e}", rel_diff(&n1, &c1).to_f64());
        // (pi, 2, 1): (1/2) pi^{-1/2} Gamma(1/2) = 1/2
        let (n2, c2) = mellin_check(&pi(p), &real(p, 2), &cplx(p, 1, 0), p).unwrap();
        assert!(rel_diff(&c2, &cplx(p, 0.5, 0)) < pow10(p, -24));
        assert!(rel_diff(&n2, &c2) < pow10(p, -20));
        // (2 pi, 2, 3)
        let a = pi(p) * 2u32;
        let (n3, c3) = mellin_check(&a, &real(p, 2), &cplx(p, 3, 0), p).unwrap();
        assert!(rel_diff(&n3, &c3) < pow10(p, -20));
    }

    #[test]
    fn gamma_half_against_quadrature_oracle() {
        // int_0^inf t^{-1/2} e^{-t} dt = Gamma(1/2) = sqrt(pi), computed by
        // the adaptive quadrature rather than the Stirling path
        let p = Prec::new(30);
        let (numeric, _closed) = mellin_check(&real(p, 1), &real(p, 1), &cplx(p, 0.5, 0), p).unwrap();
        let g = crate::hpnum::gamma(&cplx(p, 0.5, 0), p).unwrap();
        assert!(rel_diff(&numeric, &g) < pow10(p, -24));
        let sqrt_pi = cplx(p, pi(p).sqrt(), 0);
        assert!(rel_diff(&numeric, &sqrt_pi) < pow10(p, -24));
    }

    #[test]
    fn truncated_domain_at_s2_t1() {
        let p = Prec::new(25);
        let (numeric, closed) = integrate_truncated_domain(&cplx(p, 2, 0), &real(p, 1), 20, p).unwrap();
        let rel = rel_diff(&numeric, &closed);
        assert!(rel < pow10(p, -3), "rel {:.3e}", rel.to_f64());
    }
}
