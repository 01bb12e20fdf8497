//! Dirichlet L-functions L(s, chi_d) for quadratic characters, assembled
//! from Hurwitz zetas:
//!
//!   L(s, chi_d) = |d|^{-s} sum_{a=1}^{|d|} chi_d(a) zeta(s, a/|d|).
//!
//! L is entire for d != 1; near s = 1 the Hurwitz pole terms cancel because
//! sum_a chi_d(a) = 0, so each zeta is replaced by zeta(s,a) - 1/(s-1) there.

use super::field::FieldDescriptor;
use super::zeta::{hurwitz_zeta, hurwitz_zeta_star};
use crate::error::{Error, Result};
use crate::hpnum::{cabs, rpow_c, Cplx, Prec};
use rug::Complex;
use rug::Float;

/// L(s, chi_d) for the quadratic field K (entire; requires K != Q).
pub fn dirichlet_l(s: &Cplx, field: &FieldDescriptor, p: Prec) -> Result<Cplx> {
    if field.is_rationals() {
        return Err(Error::FieldIsRationals);
    }
    let wp = p.raised(8);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);
    let m = field.abs_disc as u32;

    let near_pole = cabs(&(s.clone() - 1u32)).to_f64() < 0.25;

    let mut acc = Complex::with_val(bits, 0);
    for a in 1..=m {
        let chi = field.chi(a as i64);
        if chi == 0 {
            continue;
        }
        let z = if near_pole {
            hurwitz_zeta_star(&s, a, m, wp)
        } else {
            hurwitz_zeta(&s, a, m, wp)?
        };
        if chi > 0 {
            acc += z;
        } else {
            acc -= z;
        }
    }
    let md = Float::with_val(bits, m);
    let scale = rpow_c(&md, &-s);
    Ok(scale * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{cplx, pow10, real, rel_diff};

    #[test]
    fn catalan_constant() {
        // L(2, chi_{-4}) = Catalan's constant, oracle: alternating series
        // 1 - 1/9 + 1/25 - ... with tail bound
        let p = Prec::new(40);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        let got = dirichlet_l(&cplx(p, 2, 0), &k, p).unwrap();

        let bits = p.bits();
        let mut oracle = Float::new(bits);
        let terms = 200_000u64;
        for j in (0..terms).rev() {
            let n = 2 * j + 1;
            let t = Float::with_val(bits, n).square().recip();
            if j % 2 == 0 {
                oracle += t;
            } else {
                oracle -= t;
            }
        }
        let d = (got.real().clone() - &oracle).abs();
        // alternating series tail < first omitted term ~ (2 terms)^-2
        assert!(d < real(p, 1e-10), "diff {:.3e}", d.to_f64());
        assert!(got.imag().clone().abs() < pow10(p, -30));
    }

    #[test]
    fn l_entire_at_one_and_fe_value_at_zero() {
        let p = Prec::new(40);
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        // L(1, chi_{-4}) = pi/4
        let at1 = dirichlet_l(&cplx(p, 1, 0), &k, p).unwrap();
        let want = cplx(p, crate::hpnum::pi(p) / 4u32, 0);
        assert!(rel_diff(&at1, &want) < pow10(p, -33));
        // L(0, chi_{-4}) = 1/2
        let at0 = dirichlet_l(&cplx(p, 0, 0), &k, p).unwrap();
        assert!(rel_diff(&at0, &cplx(p, 0.5, 0)) < pow10(p, -33));
    }

    #[test]
    fn conjugate_symmetry() {
        let p = Prec::new(35);
        let k = FieldDescriptor::from_label("Qsqrt-5").unwrap();
        let a = dirichlet_l(&cplx(p, 1.5, 2), &k, p).unwrap();
        let b = dirichlet_l(&cplx(p, 1.5, -2), &k, p).unwrap();
        assert!(rel_diff(&a.conj(), &b) < pow10(p, -30));
    }

    #[test]
    fn rejects_rationals() {
        let p = Prec::new(30);
        let q = FieldDescriptor::rationals();
        assert!(matches!(
            dirichlet_l(&cplx(p, 2, 0), &q, p),
            Err(Error::FieldIsRationals)
        ));
    }
}
