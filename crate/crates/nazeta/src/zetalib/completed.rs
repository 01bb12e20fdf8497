//! Archimedean L-factors and completed zetas.
//!
//!   L_R(s) = pi^{-s/2} Gamma(s/2)          (real place)
//!   L_C(s) = 2 (2 pi)^{-s} Gamma(s)        (complex place)
//!   xi(s)       = L_R(s) zeta(s)
//!   Lambda_K(s) = Delta_K^{s/2} L_R(s)^{r1} L_C(s)^{r2} zeta_K(s)
//!
//! The Delta_K^{s/2} power makes Lambda_K(1-s) = Lambda_K(s) exact; the
//! rank-two layer leans on that symmetry everywhere.

use super::field::FieldDescriptor;
use super::forms::IdealClassRep;
use super::lfun::dirichlet_l;
use super::zeta::riemann_zeta;
use crate::error::{Error, Result};
use crate::hpnum::{cabs, gamma, pi, rpow_c, upper_incomplete_gamma, Cplx, Prec};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// L_R(s) = pi^{-s/2} Gamma(s/2).
pub fn l_factor_real(s: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let half_s = (&s / 2u32).complete((bits, bits));
    let g = gamma(&half_s, p)?;
    let pi_pow = rpow_c(&pi(p), &(-half_s));
    Ok(pi_pow * g)
}

/// L_C(s) = 2 (2 pi)^{-s} Gamma(s).
pub fn l_factor_complex(s: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let g = gamma(&s, p)?;
    let two_pi = pi(p) * 2u32;
    let pow = rpow_c(&two_pi, &(-s));
    Ok(pow * g * 2u32)
}

fn check_not_zero_one(s: &Cplx, p: Prec) -> Result<()> {
    let bits = p.bits();
    let tol = Float::with_val(bits, 10).pow(-(p.digits() as i32));
    let d0 = cabs(&Complex::with_val(bits, s));
    let d1 = cabs(&(Complex::with_val(bits, s) - 1u32));
    if d0 < tol || d1 < tol {
        return Err(Error::PoleAtZeroOrOne(format!(
            "{:.3e}+{:.3e}i",
            s.real().to_f64(),
            s.imag().to_f64()
        )));
    }
    Ok(())
}

/// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s); poles at s = 0, 1.
pub fn completed_xi(s: &Cplx, p: Prec) -> Result<Cplx> {
    check_not_zero_one(s, p)?;
    let z = riemann_zeta(s, p)?;
    let lr = l_factor_real(s, p)?;
    Ok(lr * z)
}

/// Independent theta-split route to xi(s) through upper incomplete gammas:
///
///   xi(s) = -1/s - 1/(1-s)
///         + sum_{n>=1} (pi n^2)^{-s/2} Gamma(s/2, pi n^2)
///         + sum_{n>=1} (pi n^2)^{-(1-s)/2} Gamma((1-s)/2, pi n^2)
///
/// Exponentially convergent in n. Used as a cross-check oracle; the direct
/// product above is the production path (it keeps full relative precision
/// at large |Im s| where this representation cancels catastrophically).
pub fn completed_xi_theta_split(s: &Cplx, p: Prec) -> Result<Cplx> {
    check_not_zero_one(s, p)?;
    // the representation's terms are O(1); the result is as small as
    // |Gamma(s/2)| ~ e^{-pi |t| / 4}, so pay for the cancellation up front
    let t_abs = s.imag().to_f64().abs();
    let lost = (0.35 * t_abs).ceil() as u32 + 10;
    let wp = p.raised(lost);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);

    let nmax = (((wp.digits() as f64 + 10.0) * std::f64::consts::LN_10
        / std::f64::consts::PI)
        .sqrt()
        .ceil() as u64)
        + 2;

    let half_s = (&s / 2u32).complete((bits, bits));
    let half_1ms = ((1u32 - &s).complete((bits, bits))) / 2u32;
    let pi_w = pi(wp);

    let mut acc = -Complex::with_val(bits, &s).recip() - (1u32 - &s).complete((bits, bits)).recip();
    for n in 1..=nmax {
        let x = Float::with_val(bits, n * n) * &pi_w;
        let g1 = upper_incomplete_gamma(&half_s, &x, wp)?;
        let g2 = upper_incomplete_gamma(&half_1ms, &x, wp)?;
        acc += rpow_c(&x, &(-half_s.clone())) * g1;
        acc += rpow_c(&x, &(-half_1ms.clone())) * g2;
    }
    Ok(acc)
}

/// zeta_K(s): zeta(s) for Q, zeta(s) L(s, chi_d) for quadratic K.
pub fn dedekind_zeta(s: &Cplx, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    let z = riemann_zeta(s, p)?;
    if field.is_rationals() {
        return Ok(z);
    }
    let l = dirichlet_l(s, field, p)?;
    Ok(z * l)
}

/// Completed Dedekind zeta
/// Lambda_K(s) = Delta_K^{s/2} L_R(s)^{r1} L_C(s)^{r2} zeta_K(s),
/// satisfying Lambda_K(1-s) = Lambda_K(s). Poles at s = 0, 1.
pub fn completed_xi_k(s: &Cplx, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    check_not_zero_one(s, p)?;
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let mut acc = dedekind_zeta(&s, field, p)?;
    for _ in 0..field.r1 {
        acc *= l_factor_real(&s, p)?;
    }
    for _ in 0..field.r2 {
        acc *= l_factor_complex(&s, p)?;
    }
    if field.abs_disc > 1 {
        let delta = crate::hpnum::real(p, field.abs_disc);
        let half_s = (&s / 2u32).complete((bits, bits));
        acc *= rpow_c(&delta, &half_s);
    }
    Ok(acc)
}

/// Partial zeta of an ideal class of an imaginary quadratic field:
///
///   zeta(S; s) = (1/w) sum'_{(m,n)} Q(m,n)^{-s},  Re(s) > 1,
///
/// Q the reduced form attached to the class. Evaluated by the theta-split
/// Epstein decomposition with its Gaussian tail bound.
pub fn partial_class_zeta(s: &Cplx, cls: &IdealClassRep, p: Prec) -> Result<Cplx> {
    if cls.form.disc() >= 0 {
        return Err(Error::NotImaginaryQuadratic(format!("{:?}", cls.form)));
    }
    if s.real().to_f64() <= 1.0 {
        return Err(Error::AbscissaViolation {
            need: 1.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    let bits = p.bits();
    let f = cls.form;
    let gram = vec![
        vec![crate::hpnum::real(p, f.a), crate::hpnum::real(p, f.b) / 2u32],
        vec![crate::hpnum::real(p, f.b) / 2u32, crate::hpnum::real(p, f.c)],
    ];
    let z = crate::epstein::epstein_zeta_gram(&gram, s, p)?;
    Ok(z / Float::with_val(bits, cls.unit_count))
}
