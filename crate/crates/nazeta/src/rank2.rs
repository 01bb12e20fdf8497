//! Rank-two non-abelian zeta functions:
//!
//!   xi_{K,2}(s)   = Lambda_K(2s)/(s-1) - Lambda_K(2s-1)/s
//!   xi_{Q,2}^T(s) = xi(2s)/(s-1) T^{s-1} - xi(2s-1)/s T^{-s}
//!
//! plus their residues at s = 0, 1, the special-value identity, and the
//! Suzuki functions F(z) = -Z(1/2 + 2iz), Z(s) = s(1-s) xi(s).
//!
//! Simple poles sit at s = 0 and s = 1 only; at s = 1/2 the pole of
//! Lambda_K(2s) cancels against the pole of Lambda_K(2s-1), so the point is
//! regular but needs either a precision boost (nearby) or a four-direction
//! limit (at 1/2 exactly), both handled here.

use crate::error::{Error, Result};
use crate::hpnum::{cabs, cplx, gamma, pi, pow10, rpow_c, Cplx, Prec, Real};
use crate::zetalib::{
    completed_xi, completed_xi_k, dedekind_zeta, hurwitz_zeta_star, l_factor_complex,
    l_factor_real, FieldDescriptor,
};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

fn check_not_pole(s: &Cplx, p: Prec) -> Result<()> {
    let bits = p.bits();
    let tol = pow10(p, -(p.digits() as i32));
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

/// xi_{K,2}(s) = Lambda_K(2s)/(s-1) - Lambda_K(2s-1)/s.
pub fn rank2_zeta(s: &Cplx, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    check_not_pole(s, p)?;
    rank2_eval(s, p, &|w, wp| completed_xi_k(w, field, wp))
}

/// xi_{Q,2}^T(s) = xi(2s)/(s-1) T^{s-1} - xi(2s-1)/s T^{-s}; T > 0.
pub fn rank2_zeta_t(s: &Cplx, t_param: &Real, p: Prec) -> Result<Cplx> {
    if !t_param.is_sign_positive() || t_param.is_zero() {
        return Err(Error::InvalidInput("T must be positive".into()));
    }
    check_not_pole(s, p)?;
    let t = t_param.clone();
    rank2_eval_t(s, &t, p)
}

/// Shared two-term evaluation with cancellation management near s = 1/2.
/// `lambda` evaluates the completed zeta Lambda(w).
fn rank2_eval(s: &Cplx, p: Prec, lambda: &dyn Fn(&Cplx, Prec) -> Result<Cplx>) -> Result<Cplx> {
    let bits = p.bits();
    let s0 = Complex::with_val(bits, s);
    let half = Float::with_val(bits, 0.5);
    let dist_half = cabs(&(s0.clone() - &half));

    let snap = pow10(p, -((p.digits() / 2) as i32));
    if dist_half < snap {
        return rank2_at_half(p, lambda);
    }

    // digits lost to the pole-pair cancellation near 1/2
    let lost = if dist_half < 1 {
        (-dist_half.to_f64().log10()).ceil().max(0.0) as u32 + 5
    } else {
        0
    };
    let mut wp = p.raised(lost);

    for _ in 0..3 {
        let bits = wp.bits();
        let s = Complex::with_val(bits, s0.clone());
        let two_s = (&s * 2u32).complete((bits, bits));
        let two_s_m1 = (&two_s - 1u32).complete((bits, bits));
        let t1 = lambda(&two_s, wp)? / (s.clone() - 1u32);
        let t2 = lambda(&two_s_m1, wp)? / &s;
        let f = (&t1 - &t2).complete((bits, bits));
        let scale = cabs(&t1).max(&cabs(&t2));
        let fa = cabs(&f);
        // guarded subtraction: if more than 10 digits cancelled, go again
        let cancelled = if fa.is_zero() {
            f64::INFINITY
        } else {
            (scale.to_f64() / fa.to_f64()).log10()
        };
        if cancelled > 10.0 && wp.digits() < p.digits() + (cancelled as u32) + 10 {
            wp = wp.raised(cancelled as u32 + 10);
            continue;
        }
        return Ok(f);
    }
    Err(Error::CancellationAtHalf(format!(
        "persistent cancellation at s = {:.4}+{:.4}i",
        s0.real().to_f64(),
        s0.imag().to_f64()
    )))
}

/// Value at s = 1/2 by a four-direction limit; also verifies that the two
/// pole residues cancel (they must, by the functional equation) and reports
/// CancellationAtHalf if they do not.
fn rank2_at_half(p: Prec, lambda: &dyn Fn(&Cplx, Prec) -> Result<Cplx>) -> Result<Cplx> {
    let hexp = (p.digits() / 4 + 2) as i32;
    let wp = p.raised(p.digits() / 2 + 10);
    let bits = wp.bits();
    let h = pow10(wp, -hexp);

    let eval = |ds_re: f64, ds_im: f64| -> Result<Cplx> {
        let s = Complex::with_val(
            bits,
            (
                Float::with_val(bits, 0.5) + Float::with_val(bits, ds_re) * &h,
                Float::with_val(bits, ds_im) * &h,
            ),
        );
        let two_s = (&s * 2u32).complete((bits, bits));
        let two_s_m1 = (&two_s - 1u32).complete((bits, bits));
        let t1 = lambda(&two_s, wp)? / (s.clone() - 1u32);
        let t2 = lambda(&two_s_m1, wp)? / &s;
        Ok(t1 - t2)
    };

    let fp = eval(1.0, 0.0)?;
    let fm = eval(-1.0, 0.0)?;
    let fip = eval(0.0, 1.0)?;
    let fim = eval(0.0, -1.0)?;

    // residue of the (would-be) pole at 1/2: (f(1/2+h) - f(1/2-h)) h / 2
    let res = (fp.clone() - &fm) * &h / 2u32;
    let scale = cabs(&fp) * h.clone() + cabs(&fp);
    if cabs(&res) > pow10(p, -(p.digits() as i32) + 10) * (scale + Float::with_val(bits, 1)) {
        return Err(Error::CancellationAtHalf(format!(
            "nonzero residue {:.3e} at s = 1/2",
            cabs(&res).to_f64()
        )));
    }

    // f is even around 1/2 (functional equation), so the average kills the
    // h^2 terms of the two pairs: error O(h^4)
    let avg = (fp + fm + fip + fim) / 4u32;
    Ok(avg)
}

fn rank2_eval_t(s0: &Cplx, t_param: &Real, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let s0 = Complex::with_val(bits, s0);
    let half = Float::with_val(bits, 0.5);
    let dist_half = cabs(&(s0.clone() - &half));
    let t_val = t_param.clone();

    let term = |s: &Cplx, wp: Prec| -> Result<(Cplx, Cplx)> {
        let bits = wp.bits();
        let t = Float::with_val(bits, &t_val);
        let s = Complex::with_val(bits, s);
        let two_s = (&s * 2u32).complete((bits, bits));
        let two_s_m1 = (&two_s - 1u32).complete((bits, bits));
        let ts1 = rpow_c(&t, &(s.clone() - 1u32));
        let ts2 = rpow_c(&t, &(-s.clone()));
        let t1 = completed_xi(&two_s, wp)? * ts1 / (s.clone() - 1u32);
        let t2 = completed_xi(&two_s_m1, wp)? * ts2 / &s;
        Ok((t1, t2))
    };

    let snap = pow10(p, -((p.digits() / 2) as i32));
    if dist_half < snap {
        // four-direction limit, same structure as rank2_at_half
        let hexp = (p.digits() / 4 + 2) as i32;
        let wp = p.raised(p.digits() / 2 + 10);
        let bits = wp.bits();
        let h = pow10(wp, -hexp);
        let eval = |re: f64, im: f64| -> Result<Cplx> {
            let s = Complex::with_val(
                bits,
                (
                    Float::with_val(bits, 0.5) + Float::with_val(bits, re) * &h,
                    Float::with_val(bits, im) * &h,
                ),
            );
            let (t1, t2) = term(&s, wp)?;
            Ok(t1 - t2)
        };
        let fp = eval(1.0, 0.0)?;
        let fm = eval(-1.0, 0.0)?;
        let fip = eval(0.0, 1.0)?;
        let fim = eval(0.0, -1.0)?;
        let res = (fp.clone() - &fm) * &h / 2u32;
        if cabs(&res) > pow10(p, -(p.digits() as i32) + 10) * (cabs(&fp) + Float::with_val(bits, 1)) {
            return Err(Error::CancellationAtHalf(format!(
                "nonzero residue {:.3e} at s = 1/2 (T = {:.4})",
                cabs(&res).to_f64(),
                t_val.to_f64()
            )));
        }
        return Ok((fp + fm + fip + fim) / 4u32);
    }

    let lost = if dist_half < 1 {
        (-dist_half.to_f64().log10()).ceil().max(0.0) as u32 + 5
    } else {
        0
    };
    let mut wp = p.raised(lost);
    for _ in 0..3 {
        let (t1, t2) = term(&s0, wp)?;
        let bits = wp.bits();
        let f = (&t1 - &t2).complete((bits, bits));
        let scale = cabs(&t1).max(&cabs(&t2));
        let fa = cabs(&f);
        let cancelled = if fa.is_zero() {
            f64::INFINITY
        } else {
            (scale.to_f64() / fa.to_f64()).log10()
        };
        if cancelled > 10.0 && wp.digits() < p.digits() + (cancelled as u32) + 10 {
            wp = wp.raised(cancelled as u32 + 10);
            continue;
        }
        return Ok(f);
    }
    Err(Error::CancellationAtHalf("persistent cancellation".into()))
}

/// Diagnostic variant carrying the discriminant powers explicitly: with
/// xi_K(w) = L_R(w)^{r1} L_C(w)^{r2} zeta_K(w) (no discriminant power),
/// returns xi_K(2s)/(s-1) Delta^{s-1} - xi_K(2s-1)/s Delta^{-s}. Differs
/// from the shipped xi_{K,2} by a constant factor depending only on K, and
/// does not satisfy the s <-> 1-s symmetry exactly.
pub fn rank2_zeta_raw_normalization(s: &Cplx, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    check_not_pole(s, p)?;
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let xi_k = |w: &Cplx, wp: Prec| -> Result<Cplx> {
        let mut acc = dedekind_zeta(w, field, wp)?;
        for _ in 0..field.r1 {
            acc *= l_factor_real(w, wp)?;
        }
        for _ in 0..field.r2 {
            acc *= l_factor_complex(w, wp)?;
        }
        Ok(acc)
    };
    let delta = crate::hpnum::real(p, field.abs_disc);
    let two_s = (&s * 2u32).complete((bits, bits));
    let two_s_m1 = (&two_s - 1u32).complete((bits, bits));
    let t1 = xi_k(&two_s, p)? * rpow_c(&delta, &(s.clone() - 1u32)) / (s.clone() - 1u32);
    let t2 = xi_k(&two_s_m1, p)? * rpow_c(&delta, &(-s.clone())) / &s;
    Ok(t1 - t2)
}

/// Residue of xi_{K,2} at s0 in {0, 1} by a small circle contour
/// (radius 10^-2, trapezoidal rule: exponentially accurate on circles).
pub fn residue_contour(s0: u32, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    if s0 > 1 {
        return Err(Error::InvalidInput("residues only at s = 0, 1".into()));
    }
    let wp = p.raised(12);
    let bits = wp.bits();
    let r = Float::with_val(bits, 0.01);
    let n = 64usize;
    let two_pi = pi(wp) * 2u32;
    let mut acc = Complex::with_val(bits, 0);
    for k in 0..n {
        let theta = &two_pi * Float::with_val(bits, k as u32) / (n as u32);
        let dir = Complex::with_val(bits, (theta.clone().cos(), theta.sin()));
        let s = Complex::with_val(bits, s0) + dir.clone() * &r;
        let f = rank2_zeta(&s, field, wp)?;
        acc += f * dir;
    }
    Ok(acc * r / (n as u32))
}

/// Residue at s0 by the limit (s - s0) f(s), Richardson-free: h f(s0 + h)
/// at h = 10^-(p+5) with the working precision raised to match.
pub fn residue_limit(s0: u32, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    if s0 > 1 {
        return Err(Error::InvalidInput("residues only at s = 0, 1".into()));
    }
    let wp = p.raised(p.digits() + 15);
    let bits = wp.bits();
    let h = pow10(wp, -(p.digits() as i32) - 5);
    let s = Complex::with_val(bits, (Float::with_val(bits, s0) + &h, Float::new(bits)));
    let f = rank2_zeta(&s, field, wp)?;
    Ok(f * h)
}

/// Both sides of the special-value identity
/// (n-1) n xi_{Q,2}(n) = n xi(2n) - (n-1) xi(2n-1), n >= 3/2.
pub fn special_value_identity(n: &Real, p: Prec) -> Result<(Cplx, Cplx)> {
    let bits = p.bits();
    let nc = cplx(p, n.clone(), 0);
    let q = FieldDescriptor::rationals();
    let lhs = rank2_zeta(&nc, &q, p)?
        * (nc.clone() - 1u32)
        * &nc;
    let two_n = (&nc * 2u32).complete((bits, bits));
    let two_n_m1 = (&two_n - 1u32).complete((bits, bits));
    let rhs = completed_xi(&two_n, p)? * &nc - completed_xi(&two_n_m1, p)? * (nc.clone() - 1u32);
    Ok((lhs, rhs))
}

/// Z(s) = s(1-s) xi(s), entire. Uses the pole-free rewrite
/// Z(s) = -2 pi^{-s/2} Gamma(s/2 + 1) (1 + (s-1) zeta*(s)) for Re s >= 1/2
/// and the symmetry Z(1-s) = Z(s) otherwise (keeping Gamma away from its
/// poles at s = -2, -4, ... where xi has removable structure).
pub fn suzuki_big_z(s: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let mut s = Complex::with_val(bits, s);
    if s.real().to_f64() < 0.5 {
        s = (1u32 - &s).complete((bits, bits));
    }
    let half_s_plus1 = (&s / 2u32).complete((bits, bits)) + 1u32;
    let g = gamma(&half_s_plus1, p)?;
    let pi_pow = rpow_c(&pi(p), &(-(s.clone() / 2u32)));
    let zs = hurwitz_zeta_star(&s, 1, 1, p);
    let inner = Complex::with_val(bits, 1) + (s.clone() - 1u32) * zs;
    Ok(pi_pow * g * inner * (-2i32))
}

/// F(z) = -Z(1/2 + 2iz); entire, real on the real axis.
pub fn suzuki_f(z: &Cplx, p: Prec) -> Result<Cplx> {
    let bits = p.bits();
    let z = Complex::with_val(bits, z);
    let two_i_z = Complex::with_val(bits, (Float::new(bits), Float::with_val(bits, 2))) * z;
    let s = two_i_z + Float::with_val(bits, 0.5);
    Ok(-suzuki_big_z(&s, p)?)
}

/// Both sides of Suzuki's identity
/// F(z + i/4) - F(z - i/4) = i z (1 + 4 z^2) xi_{Q,2}(1/2 + i z).
pub fn suzuki_identity(z: &Cplx, p: Prec) -> Result<(Cplx, Cplx)> {
    let bits = p.bits();
    let z = Complex::with_val(bits, z);
    let i = Complex::with_val(bits, (Float::new(bits), Float::with_val(bits, 1)));
    let quarter_i = Complex::with_val(bits, (Float::new(bits), Float::with_val(bits, 0.25)));

    let lhs = suzuki_f(&(z.clone() + &quarter_i), p)? - suzuki_f(&(z.clone() - &quarter_i), p)?;

    let s = Complex::with_val(bits, (Float::with_val(bits, 0.5), Float::new(bits)))
        + i.clone() * &z;
    let q = FieldDescriptor::rationals();
    let xi2 = rank2_zeta(&s, &q, p)?;
    let z2 = z.clone().square();
    let factor = i * &z * (Complex::with_val(bits, 1) + z2 * 4u32);
    Ok((lhs, factor * xi2))
}

/// |LHS - RHS| of the Suzuki identity at z.
pub fn suzuki_identity_residual(z: &Cplx, p: Prec) -> Result<Real> {
    let (lhs, rhs) = suzuki_identity(z, p)?;
    Ok(cabs(&(lhs - rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{real, rel_diff};

    #[test]
    fn value_at_two_composes_from_xi() {
        // xi_{Q,2}(2) = xi(4) - xi(3)/2, xi(4) = pi^2/90... via completed_xi
        let p = Prec::new(45);
        let q = FieldDescriptor::rationals();
        let got = rank2_zeta(&cplx(p, 2, 0), &q, p).unwrap();
        let xi4 = completed_xi(&cplx(p, 4, 0), p).unwrap();
        let xi3 = completed_xi(&cplx(p, 3, 0), p).unwrap();
        let want = xi4 - xi3 / 2u32;
        assert!(rel_diff(&got, &want) < pow10(p, -40));
        // sanity against pi^2/90 closed form for xi(4) = L_R(4) zeta(4):
        // pi^{-2} Gamma(2) zeta(4) = pi^{-2} pi^4/90 = pi^2/90
        let pi2_90 = cplx(p, pi(p).square() / 90u32, 0);
        let xi4b = completed_xi(&cplx(p, 4, 0), p).unwrap();
        assert!(rel_diff(&xi4b, &pi2_90) < pow10(p, -40));
    }

    #[test]
    fn functional_equation_at_random_point() {
        let p = Prec::new(40);
        let k = FieldDescriptor::from_label("Qsqrt-5").unwrap();
        let s = cplx(p, 0.3, 4);
        let a = rank2_zeta(&s, &k, p).unwrap();
        let b = rank2_zeta(&(cplx(p, 1, 0) - s), &k, p).unwrap();
        assert!(rel_diff(&a, &b) < pow10(p, -32), "rel {:.3e}", rel_diff(&a, &b).to_f64());
    }

    #[test]
    fn real_on_critical_line() {
        let p = Prec::new(40);
        let q = FieldDescriptor::rationals();
        let v = rank2_zeta(&cplx(p, 0.5, 5), &q, p).unwrap();
        let scale = cabs(&v);
        assert!(v.imag().clone().abs() < pow10(p, -30) * (scale + real(p, 1)));
    }

    #[test]
    fn regular_at_half() {
        let p = Prec::new(40);
        let q = FieldDescriptor::rationals();
        let at_half = rank2_zeta(&cplx(p, 0.5, 0), &q, p).unwrap();
        assert!(at_half.real().is_finite());
        // agree with a nearby direct evaluation
        let nearby = rank2_zeta(&cplx(p, 0.500001, 0), &q, p).unwrap();
        let d = rel_diff(&at_half, &nearby);
        assert!(d < pow10(p, -8), "half {} vs nearby {}", at_half.real().to_f64(), nearby.real().to_f64());
    }

    #[test]
    fn t_one_reduces_to_plain() {
        let p = Prec::new(40);
        let q = FieldDescriptor::rationals();
        let s = cplx(p, 2, 0);
        let a = rank2_zeta_t(&s, &real(p, 1), p).unwrap();
        let b = rank2_zeta(&s, &q, p).unwrap();
        assert!(rel_diff(&a, &b) < pow10(p, -35));
    }

    #[test]
    fn t_symmetry_and_value() {
        let p = Prec::new(40);
        // xi^T(1-s) = xi^T(s) at T = 3, s = 0.2 + 2i
        let s = cplx(p, 0.2, 2);
        let t = real(p, 3);
        let a = rank2_zeta_t(&s, &t, p).unwrap();
        let b = rank2_zeta_t(&(cplx(p, 1, 0) - s), &t, p).unwrap();
        assert!(rel_diff(&a, &b) < pow10(p, -33));
        // xi^{T=2}(2) = 2 xi(4) - xi(3)/8
        let v = rank2_zeta_t(&cplx(p, 2, 0), &real(p, 2), p).unwrap();
        let xi4 = completed_xi(&cplx(p, 4, 0), p).unwrap();
        let xi3 = completed_xi(&cplx(p, 3, 0), p).unwrap();
        let want = xi4 * 2u32 - xi3 / 8u32;
        assert!(rel_diff(&v, &want) < pow10(p, -35));
    }

    #[test]
    fn residues_both_paths() {
        let p = Prec::new(30);
        let q = FieldDescriptor::rationals();
        // Res_{s=1} = xi(2) - 1/2
        let want = {
            let xi2 = completed_xi(&cplx(p, 2, 0), p).unwrap();
            xi2 - cplx(p, 0.5, 0)
        };
        let contour = residue_contour(1, &q, p).unwrap();
        let limit = residue_limit(1, &q, p).unwrap();
        assert!(rel_diff(&contour, &want) < pow10(p, -22));
        assert!(rel_diff(&limit, &want) < pow10(p, -22));
        assert!(rel_diff(&contour, &limit) < pow10(p, -20));
        // Res_0 = -Res_1
        let r0 = residue_contour(0, &q, p).unwrap();
        assert!(rel_diff(&r0, &(-contour)) < pow10(p, -20));
    }

    #[test]
    fn residue_antisymmetry_gaussian_field() {
        // Res_0 = -Res_1 holds for every K (forced by the functional equation)
        let p = Prec::new(25);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        let r1 = residue_contour(1, &k, p).unwrap();
        let r0 = residue_contour(0, &k, p).unwrap();
        assert!(cabs(&(r0 + &r1)) < pow10(p, -18));
        assert!(r1.real().clone().abs() > pow10(p, -5), "residue should be visibly nonzero");
    }

    #[test]
    fn special_values() {
        let p = Prec::new(50);
        for nv in [2.0, 1.5, 2.5] {
            let (lhs, rhs) = special_value_identity(&real(p, nv), p).unwrap();
            assert!(
                rel_diff(&lhs, &rhs) < pow10(p, -42),
                "n = {nv}: {:.3e}",
                rel_diff(&lhs, &rhs).to_f64()
            );
        }
    }

    #[test]
    fn suzuki_f_values() {
        let p = Prec::new(40);
        // F(0) = -Z(1/2) = -(1/4) xi(1/2), xi(1/2) = pi^{-1/4} Gamma(1/4) zeta(1/2)
        let f0 = suzuki_f(&cplx(p, 0, 0), p).unwrap();
        let xi_half = completed_xi(&cplx(p, 0.5, 0), p).unwrap();
        let want = -(xi_half / 4u32);
        assert!(rel_diff(&f0, &want) < pow10(p, -33));
        // real on the real axis
        let fx = suzuki_f(&cplx(p, 1.37, 0), p).unwrap();
        assert!(fx.imag().clone().abs() < pow10(p, -30) * (cabs(&fx) + real(p, 1)));
        // Schwarz reflection
        let a = suzuki_f(&cplx(p, 1, 1), p).unwrap();
        let b = suzuki_f(&cplx(p, 1, -1), p).unwrap();
        assert!(rel_diff(&a.conj(), &b) < pow10(p, -33));
    }

    #[test]
    fn suzuki_identity_points() {
        let p = Prec::new(50);
        for (re, im) in [(1.0, 0.0), (-2.5, 0.3), (0.7, -1.1)] {
            let z = cplx(p, re, im);
            let (lhs, rhs) = suzuki_identity(&z, p).unwrap();
            let scale = cabs(&lhs).max(&cabs(&rhs));
            let resid = cabs(&(lhs - rhs));
            assert!(
                resid < pow10(p, -40) * (scale + real(p, 1)),
                "z = {re}+{im}i resid {:.3e}",
                resid.to_f64()
            );
        }
        // z = 0: both sides vanish
        let (l0, r0) = suzuki_identity(&cplx(p, 0, 0), p).unwrap();
        assert!(cabs(&l0) < pow10(p, -40));
        assert!(cabs(&r0) < pow10(p, -40));
    }

    #[test]
    fn pole_rejection() {
        let p = Prec::new(30);
        let q = FieldDescriptor::rationals();
        assert!(matches!(
            rank2_zeta(&cplx(p, 1, 0), &q, p),
            Err(Error::PoleAtZeroOrOne(_))
        ));
        assert!(matches!(
            rank2_zeta(&cplx(p, 0, 0), &q, p),
            Err(Error::PoleAtZeroOrOne(_))
        ));
    }
}
