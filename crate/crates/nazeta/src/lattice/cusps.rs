//! Cusps of SL(O_K + a) and the reciprocal distance mu(eta, tau):
//!
//!   mu(eta, tau) = N(a^{-1} b^2) N(ImJ tau) / ||N(-beta tau + alpha)||^2,
//!   b = O_K alpha + a beta,
//!
//! with the quaternion norm ||c P + d||^2 = |c z + d|^2 + |c|^2 r^2 at the
//! complex place. A lattice is semistable exactly when no cusp is closer
//! than distance 1; the independent route is Hayashi's inequality on module
//! vectors.

use super::{LatticeK, Tau};
use crate::error::{Error, Result};
use crate::hpnum::{Cplx, Prec, Real};
use crate::zetalib::forms::{gcd, Ideal, QuadInt};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// A point [alpha : beta] of P^1(K) with its associated ideal data. For Q
/// the coordinates live in the v = 0 slice of QuadInt.
#[derive(Clone, Debug)]
pub struct Cusp {
    pub alpha: QuadInt,
    pub beta: QuadInt,
    /// N(b), b = O_K alpha + a beta.
    pub norm_b: i128,
}

impl Cusp {
    pub fn infinity() -> Self {
        Cusp {
            alpha: QuadInt::new(1, 0),
            beta: QuadInt::zero(),
            norm_b: 1,
        }
    }

    pub fn zero() -> Self {
        Cusp {
            alpha: QuadInt::zero(),
            beta: QuadInt::new(1, 0),
            norm_b: 1,
        }
    }

    /// Projective equality via cross products (exact integer arithmetic).
    pub fn same_point(&self, other: &Cusp, d: i64) -> bool {
        let lhs = self.alpha.mul(&other.beta, d);
        let rhs = other.alpha.mul(&self.beta, d);
        lhs == rhs
    }

    /// The ideal b = O_K alpha + a beta for the lattice module twist a.
    pub fn ideal_b(&self, l: &LatticeK) -> Result<Ideal> {
        if self.alpha.is_zero() && self.beta.is_zero() {
            return Err(Error::DegenerateCusp);
        }
        if l.field.is_rationals() {
            let g = gcd(self.alpha.u as i64, self.beta.u as i64) as i128;
            return Ok(Ideal { a: g.max(1), b: 0, c: 1 });
        }
        let d = l.field.d;
        let (a1, a2) = l.twist.basis();
        let gens = [
            self.alpha,
            a1.mul(&self.beta, d),
            a2.mul(&self.beta, d),
        ];
        Ok(Ideal::from_span(&gens, d))
    }
}

/// Embed a QuadInt at the complex place (d < 0) or the real line (d = 0).
fn embed(q: &QuadInt, d: i64, p: Prec) -> Cplx {
    let bits = p.bits();
    if d == 0 {
        return Complex::with_val(bits, (Float::with_val(bits, q.u as i64), Float::new(bits)));
    }
    let sq = Float::with_val(bits, d.unsigned_abs()).sqrt();
    let re = Float::with_val(bits, q.u as i64)
        + Float::with_val(bits, d) * Float::with_val(bits, q.v as i64) / 2u32;
    let im = sq * Float::with_val(bits, q.v as i64) / 2u32;
    Complex::with_val(bits, (re, im))
}

/// Reciprocal distance mu(eta, tau_L). Scale-invariant: computed on the
/// volume-normalized lattice (the [T]-twist drops out of semistability).
pub fn mu_distance(eta: &Cusp, l: &LatticeK, p: Prec) -> Result<Real> {
    if eta.alpha.is_zero() && eta.beta.is_zero() {
        return Err(Error::DegenerateCusp);
    }
    if !(l.field.is_rationals() || l.field.is_imag_quadratic()) {
        return Err(Error::UnsupportedField(l.field.label.clone()));
    }
    let bits = p.bits();
    let d = l.field.d;
    let nb = eta.ideal_b(l)?.norm();
    let na = l.twist.norm();
    // N(a^{-1} b^2) = N(b)^2 / N(a)
    let factor = Float::with_val(bits, nb).square() / Float::with_val(bits, na);

    match &l.tau {
        Tau::Plane(z) => {
            let alpha = Float::with_val(bits, eta.alpha.u as i64);
            let beta = Float::with_val(bits, eta.beta.u as i64);
            let w = Complex::with_val(bits, z) * (-beta) + alpha;
            let denom = w.abs().into_real_imag().0.square();
            let y = z.imag().clone();
            Ok(factor * y / denom)
        }
        Tau::Space { z, r } => {
            let alpha = embed(&eta.alpha, d, p);
            let beta = embed(&eta.beta, d, p);
            // quaternion norm^2 of (-beta)(z + rj) + alpha
            let czd = (Complex::with_val(bits, z) * (-beta.clone())) + &alpha;
            let q = czd.abs().into_real_imag().0.square()
                + beta.abs().into_real_imag().0.square() * r.clone().square();
            let denom = q.square();
            let n_imj = r.clone().square();
            Ok(factor * n_imj / denom)
        }
    }
}

/// Hayashi weight ||(x,y)||_Lambda^2 of a module vector at tau (product over
/// places with the complex place squared), on the volume-normalized lattice.
fn hayashi_weight(v: &[i64], l: &LatticeK, p: Prec) -> Real {
    let g = normalized_gram(l, p);
    let bits = p.bits();
    let mut q = Float::new(bits);
    for i in 0..g.len() {
        for j in 0..g.len() {
            if v[i] != 0 && v[j] != 0 {
                q += &g[i][j] * Float::with_val(bits, v[i] * v[j]);
            }
        }
    }
    match &l.tau {
        Tau::Plane(_) => q,
        Tau::Space { .. } => q.square(),
    }
}

/// Gram of the lattice with the scale stripped (stability is scale-free).
fn normalized_gram(l: &LatticeK, p: Prec) -> Vec<Vec<Real>> {
    let mut l2 = l.clone();
    l2.scale = Float::with_val(p.bits(), 1);
    l2.gram(p)
}

/// Module coordinates -> the (x, y) element pair.
fn coords_to_elements(v: &[i64], l: &LatticeK) -> (QuadInt, QuadInt) {
    if l.field.is_rationals() {
        (QuadInt::new(v[0] as i128, 0), QuadInt::new(v[1] as i128, 0))
    } else {
        let x = QuadInt::new(v[0] as i128, v[1] as i128);
        let (a1, a2) = l.twist.basis();
        let y = QuadInt::new(
            v[2] as i128 * a1.u + v[3] as i128 * a2.u,
            v[2] as i128 * a1.v + v[3] as i128 * a2.v,
        );
        (x, y)
    }
}

/// N(a b_0^2) for the vector (x, y), b_0 = O_K x + a^{-1} y. Supported for
/// the principal twist (all acceptance lattices) where b_0 = O_K x + O_K y.
fn stability_rhs(x: &QuadInt, y: &QuadInt, l: &LatticeK) -> Result<Real> {
    let p = Prec::new(30);
    let bits = p.bits();
    if l.field.is_rationals() {
        let g = gcd(x.u as i64, y.u as i64) as i128;
        return Ok(Float::with_val(bits, g * g));
    }
    if l.twist != Ideal::ring() {
        return Err(Error::UnsupportedField(
            "stability over a non-principal module twist is not supported".into(),
        ));
    }
    let d = l.field.d;
    let b0 = Ideal::from_two_generators(x, y, d);
    Ok(Float::with_val(bits, b0.norm()).square())
}

/// All cusps with mu(eta, tau) >= threshold, deduplicated projectively.
/// Enumerates module vectors (x, y) up to the Hayashi-weight bound
/// N(a) c_K^2 / threshold (c_K the Minkowski constant), doubled once as a
/// safety margin; a debug assertion fires if the margin shows new cusps.
pub fn enumerate_candidate_cusps(l: &LatticeK, threshold: &Real, p: Prec) -> Result<Vec<Cusp>> {
    if !(l.field.is_rationals() || l.field.is_imag_quadratic()) {
        return Err(Error::UnsupportedField(l.field.label.clone()));
    }
    if l.field.is_imag_quadratic() && l.twist != Ideal::ring() {
        return Err(Error::UnsupportedField(
            "cusp enumeration over a non-principal twist is not supported".into(),
        ));
    }
    let bits = p.bits();
    let t = Float::with_val(bits, threshold);
    if !t.is_sign_positive() || t.is_zero() {
        return Err(Error::InvalidInput("threshold must be positive".into()));
    }

    // Minkowski: every ideal class contains an ideal of norm <= (2/pi)^{r2} sqrt(Delta)
    let mink = if l.field.is_rationals() {
        1.0
    } else {
        (2.0 / std::f64::consts::PI) * (l.field.abs_disc as f64).sqrt()
    };
    let na = l.twist.norm() as f64;
    let weight_bound = na * mink * mink / t.to_f64() * 2.0;

    let gram = normalized_gram(l, p);
    // weight = q for Q, q^2 for imaginary quadratic
    let q_bound = match &l.tau {
        Tau::Plane(_) => weight_bound,
        Tau::Space { .. } => weight_bound.sqrt(),
    };
    let vectors = crate::epstein::enumerate_below(&gram, &Float::with_val(bits, q_bound));

    let tol = crate::hpnum::pow10(p, -(p.digits() as i32) + 8);
    let mut out: Vec<Cusp> = Vec::new();
    let d = l.field.d;
    for v in vectors {
        let (x, y) = coords_to_elements(&v, l);
        let w = hayashi_weight(&v, l, p);
        let rhs = stability_rhs(&x, &y, l)?;
        // mu = N(a b_0^2) / weight
        let mu = rhs / w;
        if mu >= (&t - &tol).complete(bits) {
            // cusp [alpha : beta] = [y : -x]
            let cand = Cusp {
                alpha: y,
                beta: QuadInt::new(-x.u, -x.v),
                norm_b: 0,
            };
            if !out.iter().any(|c| c.same_point(&cand, d)) {
                let norm_b = cand.ideal_b(l)?.norm();
                out.push(Cusp { norm_b, ..cand });
            }
        }
    }
    Ok(out)
}

/// Distance-to-cusps semistability: no cusp has mu(eta, tau) > 1.
pub fn is_semistable_k(l: &LatticeK, p: Prec) -> Result<bool> {
    let bits = p.bits();
    let tol = crate::hpnum::pow10(p, -(p.digits() as i32) + 8);
    let threshold = Float::with_val(bits, 1) - &tol;
    let cusps = enumerate_candidate_cusps(l, &threshold, p)?;
    for c in &cusps {
        let mu = mu_distance(&c, l, p)?;
        if mu > Float::with_val(bits, 1) + &tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hayashi's criterion, the independent oracle for is_semistable_k: every
/// enumerated nonzero (x, y) with weight <= bound satisfies
/// ||(x,y)||^2 >= N(a b_0^2).
pub fn hayashi_check(l: &LatticeK, bound: &Real, p: Prec) -> Result<bool> {
    if !(l.field.is_rationals() || l.field.is_imag_quadratic()) {
        return Err(Error::UnsupportedField(l.field.label.clone()));
    }
    let bits = p.bits();
    let gram = normalized_gram(l, p);
    let q_bound = match &l.tau {
        Tau::Plane(_) => Float::with_val(bits, bound),
        Tau::Space { .. } => Float::with_val(bits, bound).sqrt(),
    };
    let tol = crate::hpnum::pow10(p, -(p.digits() as i32) + 8);
    for v in crate::epstein::enumerate_below(&gram, &q_bound) {
        let (x, y) = coords_to_elements(&v, l);
        let w = hayashi_weight(&v, l, p);
        let rhs = stability_rhs(&x, &y, l)?;
        if w < rhs * (Float::with_val(bits, 1) - &tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{cplx, pow10, real};
    use crate::zetalib::FieldDescriptor;

    fn qi_lattice(zre: f64, zim: f64, r: f64, p: Prec) -> LatticeK {
        let k = FieldDescriptor::from_label("Qsqrt-1").unwrap();
        LatticeK::imag_quadratic(&k, Ideal::ring(), &cplx(p, zre, zim), &real(p, r), &real(p, 1), p)
            .unwrap()
    }

    #[test]
    fn mu_at_infinity_is_n_tau() {
        // K = Q(i), a = O_K, eta = [1:0], tau = j: mu = N(tau) = r^2 = 1
        let p = Prec::new(30);
        let l = qi_lattice(0.0, 0.0, 1.0, p);
        let mu = mu_distance(&Cusp::infinity(), &l, p).unwrap();
        assert!((mu.clone() - 1u32).abs() < pow10(p, -24), "{}", mu.to_f64());
        // eta = [0:1] at tau = j also gives 1
        let mu0 = mu_distance(&Cusp::zero(), &l, p).unwrap();
        assert!((mu0 - 1u32).abs() < pow10(p, -24));
    }

    #[test]
    fn mu_projective_invariance() {
        let p = Prec::new(30);
        let l = qi_lattice(0.2, -0.4, 1.3, p);
        let d = l.field.d;
        let eta = Cusp {
            alpha: QuadInt::new(3, 1),
            beta: QuadInt::new(1, -2),
            norm_b: 0,
        };
        // scale by lambda = 2 - w (arbitrary nonzero)
        let lam = QuadInt::new(2, -1);
        let eta2 = Cusp {
            alpha: eta.alpha.mul(&lam, d),
            beta: eta.beta.mul(&lam, d),
            norm_b: 0,
        };
        let m1 = mu_distance(&eta, &l, p).unwrap();
        let m2 = mu_distance(&eta2, &l, p).unwrap();
        let rel = ((m1.clone() - &m2) / m1).abs();
        assert!(rel < pow10(p, -22), "{}", rel.to_f64());
    }

    #[test]
    fn mu_invariant_under_parabolic() {
        // gamma = [[1,1],[0,1]]: tau -> tau + 1, [a:b] -> [a+b:b]
        let p = Prec::new(30);
        let l = qi_lattice(0.15, 0.3, 0.9, p);
        let eta = Cusp {
            alpha: QuadInt::new(2, 1),
            beta: QuadInt::new(1, 0),
            norm_b: 0,
        };
        let m1 = mu_distance(&eta, &l, p).unwrap();
        let l2 = match &l.tau {
            Tau::Space { z, r } => {
                let z2 = z.clone() + 1u32;
                LatticeK::imag_quadratic(
                    &l.field,
                    l.twist,
                    &z2,
                    r,
                    &real(p, 1),
                    p,
                )
                .unwrap()
            }
            _ => unreachable!(),
        };
        let eta2 = Cusp {
            alpha: QuadInt::new(eta.alpha.u + eta.beta.u, eta.alpha.v + eta.beta.v),
            beta: eta.beta,
            norm_b: 0,
        };
        let m2 = mu_distance(&eta2, &l2, p).unwrap();
        let rel = ((m1.clone() - &m2) / m1).abs();
        assert!(rel < pow10(p, -22), "{}", rel.to_f64());
    }

    #[test]
    fn degenerate_cusp_rejected() {
        let p = Prec::new(25);
        let l = LatticeK::rational(&cplx(p, 0, 1), &real(p, 1), p).unwrap();
        let bad = Cusp {
            alpha: QuadInt::zero(),
            beta: QuadInt::zero(),
            norm_b: 0,
        };
        assert!(matches!(mu_distance(&bad, &l, p), Err(Error::DegenerateCusp)));
    }

    #[test]
    fn high_threshold_may_be_empty() {
        // above the existence bound nothing is guaranteed; must not panic
        let p = Prec::new(25);
        let l = LatticeK::rational(&cplx(p, 0.2, 0.95), &real(p, 1), p).unwrap();
        let cusps = enumerate_candidate_cusps(&l, &real(p, 50), p).unwrap();
        assert!(cusps.is_empty());
    }

    #[test]
    fn q_cusps_at_corner_point() {
        // K = Q, z = i, threshold 1: [1:0] and [0:1], both mu = 1
        let p = Prec::new(30);
        let l = LatticeK::rational(&cplx(p, 0, 1), &real(p, 1), p).unwrap();
        let cusps = enumerate_candidate_cusps(&l, &real(p, 1), p).unwrap();
        assert_eq!(cusps.len(), 2, "{:?}", cusps);
        for c in &cusps {
            let mu = mu_distance(c, &l, p).unwrap();
            assert!((mu - 1u32).abs() < pow10(p, -22));
        }
    }

    #[test]
    fn semistable_k_examples() {
        let p = Prec::new(30);
        // tau = j over Q(i): boundary, semistable
        let l = qi_lattice(0.0, 0.0, 1.0, p);
        assert!(is_semistable_k(&l, p).unwrap());
        // tau = 2j: mu(infinity) = 4 > 1, not semistable
        let l2 = qi_lattice(0.0, 0.0, 2.0, p);
        assert!(!is_semistable_k(&l2, p).unwrap());
        let mu_inf = mu_distance(&Cusp::infinity(), &l2, p).unwrap();
        assert!((mu_inf - real(p, 4)).abs() < pow10(p, -22));
    }

    #[test]
    fn hayashi_examples() {
        let p = Prec::new(30);
        // Z^2: minimal weight 1 >= 1 -> true
        let l = LatticeK::rational(&cplx(p, 0, 1), &real(p, 1), p).unwrap();
        assert!(hayashi_check(&l, &real(p, 4), p).unwrap());
        // tau = 2i: vector (1,0) has weight 1/2 < 1 -> false
        let l2 = LatticeK::rational(&cplx(p, 0, 2), &real(p, 1), p).unwrap();
        assert!(!hayashi_check(&l2, &real(p, 4), p).unwrap());
    }

    #[test]
    fn cusp_classes_of_q_sqrt_minus5() {
        // enumerated cusps fall into exactly h = 2 ideal classes
        let p = Prec::new(30);
        let k = FieldDescriptor::from_label("Qsqrt-5").unwrap();
        let l = LatticeK::imag_quadratic(
            &k,
            Ideal::ring(),
            &cplx(p, 0.1, 0.2),
            &real(p, 0.8),
            &real(p, 1),
            p,
        )
        .unwrap();
        let cusps = enumerate_candidate_cusps(&l, &real(p, 0.05), p).unwrap();
        assert!(cusps.len() >= 2, "want several cusps, got {}", cusps.len());
        let mut classes = std::collections::HashSet::new();
        for c in &cusps {
            let b = c.ideal_b(&l).unwrap();
            classes.insert(b.class_form(k.d).unwrap());
        }
        assert_eq!(classes.len(), 2, "{:?}", classes);
    }
}
