//! Epstein/Eisenstein series for SL(2,Z) and their lattice-theoretic
//! counterparts over imaginary quadratic fields.
//!
//! The completed series over Q is
//!
//!   E*(z,s) = pi^{-s} Gamma(s) (1/2) sum'_{(m,n)} y^s / |m z + n|^{2s}
//!           = xi(2s) y^s + xi(2s-1) y^{1-s}
//!           + 4 sqrt(y) sum_{m>=1} m^{s-1/2} sigma_{1-2s}(m)
//!                                  K_{s-1/2}(2 pi m y) cos(2 pi m x),
//!
//! giving two fully independent evaluation routes (incomplete-gamma lattice
//! sum vs Bessel Fourier expansion). The constant terms are produced by the
//! same completed_xi code path as the zeta layer, by construction.

pub mod quadrature;

pub use quadrature::{integrate_truncated_domain, mellin_check};

use crate::error::{Error, Result};
use crate::hpnum::{bessel_k_complex, cabs, cplx, ipow_c, pi, rpow_c, Cplx, Prec, Real};
use crate::lattice::{LatticeK, Tau};
use crate::zetalib::{
    completed_xi, l_factor_complex, l_factor_real, partial_class_zeta, Ideal, IdealClassRep,
};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// Divisor sum sigma_w(m) = sum_{d | m} d^w for complex w.
pub fn divisor_sigma(m: u64, w: &Cplx) -> Cplx {
    let bits = w.prec().0;
    let mut acc = Complex::with_val(bits, 0);
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            acc += ipow_c(d, w);
            let e = m / d;
            if e != d {
                acc += ipow_c(e, w);
            }
        }
        d += 1;
    }
    acc
}

/// Precomputed s-dependent data for evaluating E*(z, s) at many z.
pub struct FourierEvaluator {
    s: Cplx,
    xi_2s: Cplx,
    xi_2s_m1: Cplx,
    /// 4 m^{s-1/2} sigma_{1-2s}(m) for m = 1..=mmax
    coefs: Vec<Cplx>,
    p: Prec,
}

impl FourierEvaluator {
    /// `y_min` is the smallest Im z the evaluator will see; it fixes the
    /// Bessel truncation so the dropped tail stays below 10^-p relative.
    pub fn new(s: &Cplx, y_min: f64, p: Prec) -> Result<Self> {
        assert!(y_min > 0.0);
        let bits = p.bits();
        let s = Complex::with_val(bits, s);
        let two_s = (&s * 2u32).complete((bits, bits));
        let two_s_m1 = (&two_s - 1u32).complete((bits, bits));
        let xi_2s = completed_xi(&two_s, p)?;
        let xi_2s_m1 = completed_xi(&two_s_m1, p)?;

        // K_{nu}(2 pi m y) ~ e^{-2 pi m y}: pick mmax for a 10^-(p+6) tail
        let mmax = (((p.digits() as f64 + 6.0) * std::f64::consts::LN_10)
            / (2.0 * std::f64::consts::PI * y_min))
            .ceil() as u64
            + 2;
        let one_m_2s = (1u32 - &two_s).complete((bits, bits));
        let s_m_half = (&s - 0.5f64).complete((bits, bits));
        let mut coefs = Vec::with_capacity(mmax as usize);
        for m in 1..=mmax {
            let c = divisor_sigma(m, &one_m_2s) * ipow_c(m, &s_m_half) * 4u32;
            coefs.push(c);
        }
        Ok(FourierEvaluator {
            s,
            xi_2s,
            xi_2s_m1,
            coefs,
            p,
        })
    }

    /// E*(z, s) by the Fourier expansion.
    pub fn eval(&self, z: &Cplx) -> Result<Cplx> {
        let p = self.p;
        let bits = p.bits();
        let x = z.real().clone();
        let y = z.imag().clone();
        if !y.is_sign_positive() || y.is_zero() {
            return Err(Error::InvalidInput("need Im z > 0".into()));
        }

        let sc = Complex::with_val(bits, &self.s);
        let ys = rpow_c(&y, &sc);
        let y1s = rpow_c(&y, &((1u32 - &sc).complete((bits, bits))));
        let mut acc = Complex::with_val(bits, &self.xi_2s) * ys;
        acc += Complex::with_val(bits, &self.xi_2s_m1) * y1s;

        let nu = Complex::with_val(bits, &self.s) - 0.5f64;
        let sqrt_y = y.clone().sqrt();
        let two_pi = pi(p) * 2u32;
        let two_pi_y = (&two_pi * &y).complete(bits);
        let two_pi_x = (&two_pi * &x).complete(bits);
        let target = crate::hpnum::pow10(p, -(p.digits() as i32) - 6);
        let scale = cabs(&acc).max(&Float::with_val(bits, 1));
        for (i, c) in self.coefs.iter().enumerate() {
            let m = (i + 1) as u64;
            let arg = &two_pi_y * Float::with_val(bits, m);
            let k = bessel_k_complex(&nu, &arg, p)?;
            let cosx = (&two_pi_x * Float::with_val(bits, m)).cos();
            let term = Complex::with_val(bits, c) * k * &sqrt_y * cosx;
            let mag = cabs(&term);
            acc += term;
            if mag < (&target * &scale).complete(bits) && m > 2 {
                break;
            }
        }
        Ok(acc)
    }
}

/// E*(z, s) by the Fourier route (single-shot convenience wrapper).
pub fn eisenstein_fourier(z: &Cplx, s: &Cplx, p: Prec) -> Result<Cplx> {
    let ev = FourierEvaluator::new(s, z.imag().to_f64(), p)?;
    ev.eval(z)
}

/// The Gram matrix of the volume-one binary form y^{-1} |m z + n|^2.
fn gram_of_point(z: &Cplx, p: Prec) -> Vec<Vec<Real>> {
    let bits = p.bits();
    let x = z.real().clone();
    let y = z.imag().clone();
    let z2 = x.clone().square() + y.clone().square();
    let inv_y = y.recip();
    vec![
        vec![z2 * &inv_y, (&x * &inv_y).complete(bits)],
        vec![(&x * &inv_y).complete(bits), inv_y],
    ]
}

/// E*(z, s) as a completed lattice sum: pi^{-s} Gamma(s) (1/2) sum' Q_z^{-s}.
/// With `cutoff = None` the theta-split decomposition reaches 10^-p; with a
/// cutoff the plain truncated double sum is used (diagnostic oracle).
pub fn epstein_lattice_sum(z: &Cplx, s: &Cplx, cutoff: Option<i64>, p: Prec) -> Result<Cplx> {
    if s.real().to_f64() <= 1.0 {
        return Err(Error::AbscissaViolation {
            need: 1.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    if !z.imag().is_sign_positive() || z.imag().is_zero() {
        return Err(Error::InvalidInput("need Im z > 0".into()));
    }
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let gram = gram_of_point(z, p);
    let zsum = match cutoff {
        None => crate::epstein::epstein_zeta_gram(&gram, &s, p)?,
        Some(n) => crate::epstein::epstein_direct_sum(&gram, &s, n, p)?,
    };
    let two_s = (&s * 2u32).complete((bits, bits));
    let pref = l_factor_real(&two_s, p)?; // pi^{-s} Gamma(s)
    Ok(pref * zsum / 2u32)
}

/// Constant Fourier coefficient of the (uncompleted) Eisenstein series of
/// O_K + a at the cusp eta, as the coefficient A0 of N(ImJ tau)^s:
///
///   A0 = N(a^{-1} b)^{2s} zeta([a^{-1} b], 2s),  b = O_K alpha + a beta.
///
/// Supported for the principal twist a = O_K.
pub fn constant_term_k(
    eta: &crate::lattice::Cusp,
    field: &crate::zetalib::FieldDescriptor,
    twist: &Ideal,
    s: &Cplx,
    p: Prec,
) -> Result<Cplx> {
    if !field.is_imag_quadratic() {
        return Err(Error::NotImaginaryQuadratic(field.label.clone()));
    }
    if s.real().to_f64() <= 1.0 {
        return Err(Error::AbscissaViolation {
            need: 1.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    if *twist != Ideal::ring() {
        return Err(Error::UnsupportedField(
            "constant term over a non-principal twist is not supported".into(),
        ));
    }
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let two_s = (&s * 2u32).complete((bits, bits));

    // b through a throwaway lattice carrying (field, twist)
    let l = LatticeK::imag_quadratic(
        field,
        *twist,
        &cplx(p, 0, 0),
        &crate::hpnum::real(p, 1),
        &crate::hpnum::real(p, 1),
        p,
    )?;
    let b = eta.ideal_b(&l)?;
    let class = IdealClassRep::new(b.class_form(field.d)?)?;
    let zeta_part = partial_class_zeta(&two_s, &class, p)?;
    let nb = crate::hpnum::real(p, b.norm());
    Ok(rpow_c(&nb, &two_s) * zeta_part)
}

/// Completed Epstein zeta of the lattice itself:
///
///   E_{2,a;L}(s) = L_R(2s)^{r1} L_C(2s)^{r2} (N(a) Delta_K)^s
///                  sum_{x in (L \ 0)/U_K} ||x||_L^{-2s}.
pub fn epstein_from_lattice(l: &LatticeK, s: &Cplx, p: Prec) -> Result<Cplx> {
    if s.real().to_f64() <= 1.0 {
        return Err(Error::AbscissaViolation {
            need: 1.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let two_s = (&s * 2u32).complete((bits, bits));
    let gram = l.gram(p);

    let (zsum, unit_count) = match &l.tau {
        Tau::Plane(_) => (crate::epstein::epstein_zeta_gram(&gram, &s, p)?, 2u32),
        Tau::Space { .. } => (
            crate::epstein::epstein_zeta_gram(&gram, &two_s, p)?,
            l.field.unit_count,
        ),
    };

    let mut pref = Complex::with_val(bits, 1);
    for _ in 0..l.field.r1 {
        pref *= l_factor_real(&two_s, p)?;
    }
    for _ in 0..l.field.r2 {
        pref *= l_factor_complex(&two_s, p)?;
    }
    let na_delta = crate::hpnum::real(p, l.twist.norm() as u64 * l.field.abs_disc as u64);
    let scale_pow = rpow_c(&na_delta, &s);
    Ok(pref * scale_pow * zsum / unit_count)
}

/// |lattice route - point route| for the bridge identity
/// E_{2,a;Lambda}(s) = E_{2,a}(tau_Lambda, s); the [T]-scale is folded out
/// through ||x||_{L[T]} = T^{deg K} ||x||_L.
pub fn bridge_check(l: &LatticeK, s: &Cplx, p: Prec) -> Result<Real> {
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let lattice_side = epstein_from_lattice(l, &s, p)?;

    // point side: re-evaluate at tau with the scale stripped, then restore
    // the scale factor scale^{-2 s deg K}
    let deg = l.field.degree();
    let scale_pow = rpow_c(
        &l.scale,
        &((&s * (2 * deg)).complete((bits, bits))),
    );

    let point_side = match &l.tau {
        Tau::Plane(z) => {
            let e = eisenstein_fourier(z, &s, p)?;
            e / scale_pow
        }
        Tau::Space { z, r } => {
            // independent construction: embed the module through the
            // explicit g_tau matrix and take Gram = B^T B
            let gram = gram_via_embedding(l, z, r, p);
            let two_s = (&s * 2u32).complete((bits, bits));
            let zsum = crate::epstein::epstein_zeta_gram(&gram, &two_s, p)?;
            let mut pref = Complex::with_val(bits, 1);
            for _ in 0..l.field.r2 {
                pref *= l_factor_complex(&two_s, p)?;
            }
            let na_delta =
                crate::hpnum::real(p, l.twist.norm() as u64 * l.field.abs_disc as u64);
            pref * rpow_c(&na_delta, &s) * zsum / l.field.unit_count / scale_pow
        }
    };
    Ok(cabs(&(lattice_side - point_side)))
}

/// Gram of the module at tau = z + rj via the explicit coset matrix
/// g_tau = [[z/sqrt r, sqrt r], [1/sqrt r, 0]] acting on row vectors:
/// (x, y) g_tau = ((x z + y)/sqrt r, x sqrt r).
fn gram_via_embedding(l: &LatticeK, z: &Cplx, r: &Real, p: Prec) -> Vec<Vec<Real>> {
    let bits = p.bits();
    let sqrt_r = r.clone().sqrt();
    let w = {
        let sq = Float::with_val(bits, l.field.d.unsigned_abs()).sqrt();
        Complex::with_val(bits, (Float::with_val(bits, l.field.d) / 2u32, sq / 2u32))
    };
    let (a1q, a2q) = l.twist.basis();
    let a1 = Complex::with_val(
        bits,
        (Float::with_val(bits, a1q.u as i64), Float::new(bits)),
    );
    let a2 = Complex::with_val(bits, (Float::with_val(bits, a2q.u as i64), Float::new(bits)))
        + Complex::with_val(bits, &w) * Float::with_val(bits, a2q.v as i64);

    let basis: [(Cplx, Cplx); 4] = [
        (Complex::with_val(bits, 1), Complex::with_val(bits, 0)),
        (Complex::with_val(bits, &w), Complex::with_val(bits, 0)),
        (Complex::with_val(bits, 0), a1),
        (Complex::with_val(bits, 0), a2),
    ];
    // image of each basis vector under g_tau
    let imgs: Vec<(Cplx, Cplx)> = basis
        .iter()
        .map(|(x, y)| {
            let c1 = ((x * z).complete((bits, bits)) + y) / &sqrt_r;
            let c2 = (x * &sqrt_r).complete((bits, bits));
            (c1, c2)
        })
        .collect();
    let s2 = l.scale.clone().square();
    let mut g = vec![vec![Float::new(bits); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (u1, u2) = &imgs[i];
            let (v1, v2) = &imgs[j];
            let h = (u1 * v1.clone().conj()).real().clone() + (u2 * v2.clone().conj()).real();
            g[i][j] = h * &s2;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{pow10, real, rel_diff};
    use crate::zetalib::FieldDescriptor;

    #[test]
    fn divisor_sigma_small() {
        let p = Prec::new(30);
        let w = cplx(p, 1, 0);
        // sigma_1(6) = 12
        let s6 = divisor_sigma(6, &w);
        assert!(rel_diff(&s6, &cplx(p, 12, 0)) < pow10(p, -25));
    }

    #[test]
    fn fourier_matches_lattice_sum() {
        let p = Prec::new(25);
        let z = cplx(p, 0.3, 1.2);
        let s = cplx(p, 2, 0);
        let a = eisenstein_fourier(&z, &s, p).unwrap();
        let b = epstein_lattice_sum(&z, &s, None, p).unwrap();
        assert!(
            rel_diff(&a, &b) < pow10(p, -15),
            "fourier {:?} vs lattice {:?}",
            a.real().to_f64(),
            b.real().to_f64()
        );
    }

    #[test]
    fn periodicity_and_inversion() {
        let p = Prec::new(25);
        let s = cplx(p, 2, 0);
        let z = cplx(p, 0.3, 1.2);
        let a = epstein_lattice_sum(&z, &s, None, p).unwrap();
        let b = epstein_lattice_sum(&(z.clone() + 1u32), &s, None, p).unwrap();
        assert!(rel_diff(&a, &b) < pow10(p, -18));
        let inv = -z.clone().recip();
        let c = epstein_lattice_sum(&inv, &s, None, p).unwrap();
        assert!(rel_diff(&a, &c) < pow10(p, -18));
    }

    #[test]
    fn large_y_dominated_by_constant_terms() {
        let p = Prec::new(30);
        let s = cplx(p, 2, 0);
        let z = cplx(p, 0, 10);
        let e = eisenstein_fourier(&z, &s, p).unwrap();
        let xi4 = completed_xi(&cplx(p, 4, 0), p).unwrap();
        let xi3 = completed_xi(&cplx(p, 3, 0), p).unwrap();
        let want = xi4 * real(p, 100) + xi3 / real(p, 10);
        // Bessel corrections at y = 10 are ~ e^{-2 pi 10} ~ 5e-28
        assert!(rel_diff(&e, &want) < pow10(p, -24));
    }

    #[test]
    fn functional_equation_of_full_series() {
        let p = Prec::new(30);
        let z = cplx(p, 0.23, 1.31);
        let s = cplx(p, 0.3, 2);
        let a = eisenstein_fourier(&z, &s, p).unwrap();
        let b = eisenstein_fourier(&z, &(cplx(p, 1, 0) - s), p).unwrap();
        assert!(rel_diff(&a, &b) < pow10(p, -24), "rel {:.3e}", rel_diff(&a, &b).to_f64());
    }

    #[test]
    fn divisor_symmetry_under_s_reflection() {
        // m^{s-1/2} sigma_{1-2s}(m) invariant under s -> 1-s
        let p = Prec::new(30);
        let s = cplx(p, 1.7, 0.4);
        let s_refl = cplx(p, 1, 0) - s.clone();
        for m in [1u64, 2, 6, 12, 49, 50] {
            let a = divisor_sigma(m, &(1u32 - (s.clone() * 2u32)))
                * ipow_c(m, &(s.clone() - 0.5f64));
            let b = divisor_sigma(m, &(1u32 - (s_refl.clone() * 2u32)))
                * ipow_c(m, &(s_refl.clone() - 0.5f64));
            assert!(rel_diff(&a, &b) < pow10(p, -24), "m = {m}");
        }
    }

    #[test]
    fn bridge_over_q() {
        let p = Prec::new(30);
        for (x, y, sre, tv) in [(0.0, 1.0, 2.0, 1.0), (0.3, 1.2, 2.5, 1.0), (0.0, 2.0, 3.0, 1.0), (0.1, 0.9, 2.0, 1.4)] {
            let l = LatticeK::rational(&cplx(p, x, y), &real(p, tv), p).unwrap();
            let resid = bridge_check(&l, &cplx(p, sre, 0), p).unwrap();
            assert!(resid < pow10(p, -20), "z = {x}+{y}i: {:.3e}", resid.to_f64());
        }
    }

    #[test]
    fn bridge_over_gaussian_field() {
        let p = Prec::new(30);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        for (zr, zi, r, sre) in [(0.0, 0.0, 1.0, 2.0), (0.2, -0.1, 1.3, 2.5)] {
            let l = LatticeK::imag_quadratic(
                &k,
                Ideal::ring(),
                &cplx(p, zr, zi),
                &real(p, r),
                &real(p, 1),
                p,
            )
            .unwrap();
            let resid = bridge_check(&l, &cplx(p, sre, 0), p).unwrap();
            assert!(resid < pow10(p, -20), "resid {:.3e}", resid.to_f64());
        }
    }

    #[test]
    fn unit_quotient_orbit_sum_gaussian() {
        // summing over all vectors and dividing by w equals summing over
        // explicit unit-orbit representatives (d = -4, multiplication by i)
        let p = Prec::new(25);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        let l = LatticeK::imag_quadratic(
            &k,
            Ideal::ring(),
            &cplx(p, 0.2, 0.1),
            &real(p, 1.1),
            &real(p, 1),
            p,
        )
        .unwrap();
        let gram = l.gram(p);
        let bits = p.bits();
        let s = cplx(p, 2, 0);
        let two_s = cplx(p, 4, 0);

        // direct full sum over a box, divided by w = 4
        let eval_q = |v: &[i64; 4]| -> Real {
            let mut q = Float::new(bits);
            for i in 0..4 {
                for j in 0..4 {
                    if v[i] != 0 && v[j] != 0 {
                        q += &gram[i][j] * Float::with_val(bits, v[i] * v[j]);
                    }
                }
            }
            q
        };
        let _ = s;
        let r = 6i64;
        let mut full = Complex::with_val(bits, 0);
        let mut orbit = Complex::with_val(bits, 0);
        // multiplication by i on coordinates (u1, u2): (2u1 - 5u2, u1 - 2u2)
        let mul_i = |c: [i64; 2]| [2 * c[0] - 5 * c[1], c[0] - 2 * c[1]];
        let in_box = |v: &[i64; 4]| v.iter().all(|c| c.abs() <= r);
        let mut seen = std::collections::HashSet::new();
        for u1 in -r..=r {
            for u2 in -r..=r {
                for u3 in -r..=r {
                    for u4 in -r..=r {
                        if (u1, u2, u3, u4) == (0, 0, 0, 0) {
                            continue;
                        }
                        let v = [u1, u2, u3, u4];
                        let mut imgs = Vec::new();
                        let mut cur = v;
                        for _ in 0..4 {
                            imgs.push(cur);
                            let xi = mul_i([cur[0], cur[1]]);
                            let yi = mul_i([cur[2], cur[3]]);
                            cur = [xi[0], xi[1], yi[0], yi[1]];
                        }
                        // restrict both sums to complete in-box orbits so the
                        // identity is exact
                        if !imgs.iter().all(in_box) {
                            continue;
                        }
                        let q = eval_q(&v);
                        let term = rpow_c(&q, &-two_s.clone());
                        full += &term;
                        let rep = *imgs.iter().min().unwrap();
                        if rep == v && seen.insert(v) {
                            orbit += &term;
                        }
                    }
                }
            }
        }
        full /= 4u32;
        let rel = rel_diff(&full, &orbit);
        assert!(rel < pow10(p, -18), "rel {:.3e}", rel.to_f64());
    }

    #[test]
    fn constant_term_gaussian_principal() {
        // K = Q(i), a = b = O_K, s = 2: A0 = zeta([O_K], 4)
        let p = Prec::new(30);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        let a0 = constant_term_k(&crate::lattice::Cusp::infinity(), &k, &Ideal::ring(), &cplx(p, 2, 0), p)
            .unwrap();
        let cls = IdealClassRep::principal(-4).unwrap();
        let want = partial_class_zeta(&cplx(p, 4, 0), &cls, p).unwrap();
        assert!(rel_diff(&a0, &want) < pow10(p, -24));
        assert!(a0.real().is_sign_positive());
        assert!(a0.imag().clone().abs() < pow10(p, -24));
    }
}
