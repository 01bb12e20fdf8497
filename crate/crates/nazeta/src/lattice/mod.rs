//! Rank-two metrized lattices over Q and imaginary quadratic fields:
//! theta-sum cohomology h0/h1, Arakelov degree, reduction, shortest vectors,
//! and the two semistability criteria (shortest vector / distance to cusps).

pub mod cusps;
pub mod reduction;

pub use cusps::{enumerate_candidate_cusps, hayashi_check, is_semistable_k, mu_distance, Cusp};
pub use reduction::{is_semistable_q, lambda1, lambda1_gram, reduce_sl2z};

use crate::error::{Error, Result};
use crate::hpnum::{cplx, pi, real, Cplx, Prec, Real};
use crate::zetalib::{FieldDescriptor, Ideal};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// Point in the symmetric space attached to the field: the upper half plane
/// for Q, the upper half space for an imaginary quadratic field.
#[derive(Clone, Debug)]
pub enum Tau {
    /// z = x + iy, y > 0.
    Plane(Cplx),
    /// z + r j with z complex and r > 0.
    Space { z: Cplx, r: Real },
}

/// A metrized rank-two O_K-lattice O_K + a with marked point tau and a
/// global scale ([T]-twist). Volume = scale^{2 deg K} N(a) Delta_K.
#[derive(Clone, Debug)]
pub struct LatticeK {
    pub field: FieldDescriptor,
    /// Integral ideal a in HNF; Ideal::ring() marks the principal twist.
    pub twist: Ideal,
    pub tau: Tau,
    pub scale: Real,
}

impl LatticeK {
    pub fn rational(z: &Cplx, scale: &Real, p: Prec) -> Result<Self> {
        if !z.imag().is_sign_positive() || z.imag().is_zero() {
            return Err(Error::InvalidInput("tau must have positive imaginary part".into()));
        }
        if !scale.is_sign_positive() || scale.is_zero() {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        Ok(LatticeK {
            field: FieldDescriptor::rationals(),
            twist: Ideal::ring(),
            tau: Tau::Plane(Complex::with_val(p.bits(), z)),
            scale: Float::with_val(p.bits(), scale),
        })
    }

    pub fn imag_quadratic(
        field: &FieldDescriptor,
        twist: Ideal,
        z: &Cplx,
        r: &Real,
        scale: &Real,
        p: Prec,
    ) -> Result<Self> {
        if !field.is_imag_quadratic() {
            return Err(Error::NotImaginaryQuadratic(field.label.clone()));
        }
        if !r.is_sign_positive() || r.is_zero() || !scale.is_sign_positive() || scale.is_zero() {
            return Err(Error::InvalidInput("need r > 0 and scale > 0".into()));
        }
        Ok(LatticeK {
            field: field.clone(),
            twist,
            tau: Tau::Space {
                z: Complex::with_val(p.bits(), z),
                r: Float::with_val(p.bits(), r),
            },
            scale: Float::with_val(p.bits(), scale),
        })
    }

    /// Embedding of w = (d + sqrt d)/2 at precision p (d < 0).
    pub(crate) fn omega(&self, p: Prec) -> Cplx {
        let d = self.field.d;
        let bits = p.bits();
        let sq = Float::with_val(bits, d.unsigned_abs()).sqrt();
        Complex::with_val(bits, (Float::with_val(bits, d) / 2u32, sq / 2u32))
    }

    /// Z-basis of the module O_K + a embedded at tau, as complex pairs
    /// (x-part coefficient of tau-action, constant part). Rank 2 over O_K,
    /// rank 2 deg K over Z.
    fn module_basis(&self, p: Prec) -> Vec<(Cplx, Cplx)> {
        let bits = p.bits();
        match &self.tau {
            Tau::Plane(_) => vec![
                (cplx(p, 1, 0), cplx(p, 0, 0)),
                (cplx(p, 0, 0), cplx(p, 1, 0)),
            ],
            Tau::Space { .. } => {
                let w = self.omega(p);
                let a1 = cplx(p, self.twist.a, 0);
                let a2 = {
                    let b = cplx(p, self.twist.b, 0);
                    let c = Float::with_val(bits, self.twist.c);
                    b + Complex::with_val(bits, &w) * c
                };
                vec![
                    (cplx(p, 1, 0), cplx(p, 0, 0)),
                    (w, cplx(p, 0, 0)),
                    (cplx(p, 0, 0), a1),
                    (cplx(p, 0, 0), a2),
                ]
            }
        }
    }

    /// Gram matrix of the real quadratic form giving the hermitian/euclidean
    /// square norm of module vectors at tau (before the per-place squaring
    /// that the product norm applies at complex places):
    ///   Q:   q(m, n) = scale^2 |m z + n|^2 / y
    ///   imq: H(x, y) = scale^2 (|x z + y|^2 + |x|^2 r^2) / r
    pub fn gram(&self, p: Prec) -> Vec<Vec<Real>> {
        let bits = p.bits();
        let s2 = self.scale.clone().square();
        match &self.tau {
            Tau::Plane(z) => {
                let x = z.real().clone();
                let y = z.imag().clone();
                let z2 = x.clone().square() + y.clone().square();
                let f = (&s2 / &y).complete(bits);
                vec![
                    vec![(&z2 * &f).complete(bits), (&x * &f).complete(bits)],
                    vec![(&x * &f).complete(bits), f],
                ]
            }
            Tau::Space { z, r } => {
                let basis = self.module_basis(p);
                let f = (&s2 / r).complete(bits);
                let r2 = r.clone().square();
                let mut g = vec![vec![Float::new(bits); 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        let (xi, yi) = &basis[i];
                        let (xj, yj) = &basis[j];
                        let ai = Complex::with_val(bits, xi) * z + yi;
                        let aj = Complex::with_val(bits, xj) * z + yj;
                        let herm = (ai * aj.conj()).real().clone();
                        let xpart = (Complex::with_val(bits, xi) * xj.clone().conj())
                            .real()
                            .clone()
                            * &r2;
                        g[i][j] = (herm + xpart) * &f;
                    }
                }
                g
            }
        }
    }

    /// Exact lattice volume from the data: scale^{2 deg K} N(a) Delta_K.
    pub fn volume(&self, p: Prec) -> Real {
        let bits = p.bits();
        let deg = self.field.degree();
        let mut v = self.scale.clone().pow(2 * deg as i32);
        v *= Float::with_val(bits, self.twist.norm());
        v *= Float::with_val(bits, self.field.abs_disc);
        v
    }
}

/// Arakelov degree deg(L) = -log Vol(L) + (r/2) log Delta_K, r = 2; exact
/// from the volume data, no theta sums.
pub fn degree(l: &LatticeK, p: Prec) -> Real {
    let bits = p.bits();
    let deg_k = l.field.degree();
    let mut d = -(l.scale.clone().ln() * Float::with_val(bits, 2 * deg_k));
    d -= Float::with_val(bits, l.twist.norm()).ln();
    d
}

/// h0(L) = log sum_{x in L} exp(-pi sum_real |x|^2 - 2 pi sum_complex |x|^2),
/// theta sum truncated with a Gaussian tail below 10^-p.
pub fn h0(l: &LatticeK, p: Prec) -> Result<Real> {
    match &l.tau {
        Tau::Plane(_) => Ok(h0_from_gram(&l.gram(p), 1, p)),
        Tau::Space { .. } => {
            if !l.field.is_imag_quadratic() {
                return Err(Error::UnsupportedField(l.field.label.clone()));
            }
            Ok(h0_from_gram(&l.gram(p), 2, p))
        }
    }
}

/// log(1 + 2 sum_reps exp(-pi_factor pi q(v))), tail bound 10^-p.
fn h0_from_gram(gram: &[Vec<Real>], pi_factor: u32, p: Prec) -> Real {
    let bits = p.bits();
    // pi_factor * pi * q <= (p + 8) ln 10
    let cut = (p.digits() as f64 + 8.0) * std::f64::consts::LN_10
        / (std::f64::consts::PI * pi_factor as f64);
    let bound = real(p, cut);
    let pi_w = pi(p) * pi_factor;
    let mut theta = Float::with_val(bits, 1);
    for v in crate::epstein::enumerate_below(gram, &bound) {
        let mut q = Float::new(bits);
        for i in 0..gram.len() {
            for j in 0..gram.len() {
                if v[i] != 0 && v[j] != 0 {
                    q += &gram[i][j] * Float::with_val(bits, v[i] * v[j]);
                }
            }
        }
        theta += (-(q * &pi_w)).exp() * 2u32;
    }
    theta.ln()
}

/// h1(L) = h0 of the Arakelov dual; Q only (the dualizing lattice of Q is
/// trivial, so the dual Gram is just the inverse).
pub fn h1(l: &LatticeK, p: Prec) -> Result<Real> {
    match &l.tau {
        Tau::Plane(_) => {
            let dual = crate::epstein::mat_inverse(&l.gram(p));
            Ok(h0_from_gram(&dual, 1, p))
        }
        Tau::Space { .. } => Err(Error::UnsupportedField(format!(
            "h1 over {} not supported (dualizing-lattice bookkeeping beyond Q is out of scope)",
            l.field.label
        ))),
    }
}
