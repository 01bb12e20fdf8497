//! Arbitrary-precision real/complex arithmetic and the special functions the
//! rest of the crate consumes: Gamma, modified Bessel K, upper incomplete
//! gamma.
//!
//! Numbers are MPFR/MPC floats (`rug::Float`, `rug::Complex`). Working
//! precision is a per-call parameter in decimal digits; every routine here
//! carries enough internal guard precision that its result is accurate to
//! relative `10^(GUARD_DIGITS - p)`. Comparisons at a tolerance are always
//! explicit.

pub mod bessel;
pub mod consts;
pub mod gamma;
pub mod incgamma;

pub use bessel::{bessel_k, bessel_k_complex};
pub use gamma::{gamma, ln_gamma};
pub use incgamma::upper_incomplete_gamma;

use rug::{Complex, Float};

pub type Real = Float;
pub type Cplx = Complex;

/// Guard-digit count `g` of the module error contract: results are accurate
/// to relative `10^(g - p)` at working precision `p` digits.
pub const GUARD_DIGITS: u32 = 5;

/// Default working precision (decimal digits).
pub const DEFAULT_DIGITS: u32 = 50;

const LOG2_10: f64 = 3.321928094887362;

/// Working precision, counted in decimal digits.
///
/// Internally all arithmetic runs with extra guard bits on top of the
/// requested digits so that accumulated rounding stays inside the
/// `10^(GUARD_DIGITS - p)` contract.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Prec {
    digits: u32,
}

impl Prec {
    pub fn new(digits: u32) -> Self {
        Prec {
            digits: digits.clamp(10, 100_000),
        }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Mantissa bits carried by intermediates at this precision.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 40
    }

    /// Same precision with `extra` more decimal digits of headroom.
    pub fn raised(self, extra: u32) -> Prec {
        Prec::new(self.digits + extra)
    }

    /// The advertised relative error bound `10^(g - p)`.
    pub fn eps(self) -> Real {
        let e = GUARD_DIGITS as i32 - self.digits as i32;
        Float::with_val(64, 10).pow(e)
    }
}

impl Default for Prec {
    fn default() -> Self {
        Prec::new(DEFAULT_DIGITS)
    }
}

use rug::ops::Pow;

/// Shorthand constructors at a given working precision.
pub fn real<T>(p: Prec, v: T) -> Real
where
    Float: rug::Assign<T>,
{
    Float::with_val(p.bits(), v)
}

pub fn cplx<T, U>(p: Prec, re: T, im: U) -> Cplx
where
    Float: rug::Assign<T> + rug::Assign<U>,
{
    Complex::with_val(p.bits(), (Float::with_val(p.bits(), re), Float::with_val(p.bits(), im)))
}

pub fn cplx_from(p: Prec, z: &Cplx) -> Cplx {
    Complex::with_val(p.bits(), z)
}

pub fn pi(p: Prec) -> Real {
    Float::with_val(p.bits(), rug::float::Constant::Pi)
}

pub fn euler_gamma(p: Prec) -> Real {
    Float::with_val(p.bits(), rug::float::Constant::Euler)
}

/// 10^e as a Real, for tolerance thresholds.
pub fn pow10(p: Prec, e: i32) -> Real {
    Float::with_val(p.bits(), 10).pow(e)
}

/// z^w at the precision of z, principal branch.
pub fn cpow(z: &Cplx, w: &Cplx) -> Cplx {
    z.clone().pow(w)
}

/// x^w for real x > 0 and complex w: exp(w ln x).
pub fn rpow_c(x: &Real, w: &Cplx) -> Cplx {
    let prec = w.prec().0.max(x.prec());
    let lnx = Float::with_val(prec, x).ln();
    (Complex::with_val(prec, w) * lnx).exp()
}

/// n^w for a small positive integer n.
pub fn ipow_c(n: u64, w: &Cplx) -> Cplx {
    let prec = w.prec().0;
    let lnn = Float::with_val(prec, n).ln();
    (Complex::with_val(prec, w) * lnn).exp()
}

/// |z| as a Real.
pub fn cabs(z: &Cplx) -> Real {
    z.clone().abs().into_real_imag().0
}

/// Relative distance |a - b| / max(|a|, |b|, floor).
pub fn rel_diff(a: &Cplx, b: &Cplx) -> Real {
    let prec = a.prec().0.max(b.prec().0);
    let diff = cabs(&(a.clone() - b));
    let mut scale = cabs(a).max(&cabs(b));
    let tiny = Float::with_val(prec, 1e-300);
    if scale < tiny {
        scale = tiny;
    }
    diff / scale
}

/// True if z is within `tol` of a real integer; returns the integer.
pub fn near_integer(x: &Real, tol: &Real) -> Option<i64> {
    let r = x.clone().round();
    let d = (x - r.clone()).abs();
    if d <= *tol {
        Some(r.to_f64() as i64)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_mapping() {
        let p = Prec::new(50);
        assert!(p.bits() >= 166 + 40);
        assert_eq!(p.digits(), 50);
        assert!(p.eps() > 0);
    }

    #[test]
    fn complex_power_matches_real() {
        let p = Prec::new(40);
        let two = cplx(p, 2, 0);
        let w = cplx(p, 3, 0);
        let got = cpow(&two, &w);
        assert!(rel_diff(&got, &cplx(p, 8, 0)) < pow10(p, -35));
    }

    #[test]
    fn near_integer_detection() {
        let p = Prec::new(30);
        let x = real(p, 5) + real(p, 1e-40);
        assert_eq!(near_integer(&x, &pow10(p, -20)), Some(5));
        let y = real(p, 5.4);
        assert_eq!(near_integer(&y, &pow10(p, -20)), None);
    }
}
