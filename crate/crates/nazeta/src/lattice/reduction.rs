//! Classical reduction: SL(2,Z) reduction to the fundamental domain,
//! Lagrange-Gauss shortest vectors, and the rational semistability test
//! (reduced y <= 1, equivalently lambda_1 >= 1 at volume one).

use crate::error::{Error, Result};
use crate::hpnum::{Cplx, Prec, Real};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Word of generators applied by the reduction, e.g. "T^-2 S T".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sl2Word {
    pub letters: Vec<(char, i64)>,
}

impl std::fmt::Display for Sl2Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Result of SL(2,Z) reduction: the representative in the closed fundamental
/// domain, the matrix applied (acting by Moebius maps), and its word in the
/// generators S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
#[derive(Clone, Debug)]
pub struct Sl2Reduction {
    pub z: Cplx,
    pub matrix: [[i64; 2]; 2],
    pub word: Sl2Word,
}

/// Reduce z (Im z > 0) into {|z| >= 1, |Re z| <= 1/2}.
pub fn reduce_sl2z(z: &Cplx, p: Prec) -> Result<Sl2Reduction> {
    if !z.imag().is_sign_positive() || z.imag().is_zero() {
        return Err(Error::InvalidInput("need Im z > 0".into()));
    }
    let bits = p.bits();
    let mut z = Complex::with_val(bits, z);
    let mut m = [[1i64, 0], [0, 1]];
    let mut word = Sl2Word::default();
    // closed-domain tolerance: points within eps of the unit circle stay put
    let eps = Float::with_val(bits, 2).pow(-(bits as i32) + 8);

    for _ in 0..10_000 {
        // translate: n = round(Re z)
        let n = z.real().to_f64().round() as i64;
        if n != 0 {
            z -= Float::with_val(bits, n);
            m = mat_mul([[1, -n], [0, 1]], m);
            word.letters.push(('T', -n));
        }
        let norm = z.clone().abs().into_real_imag().0;
        if norm >= Float::with_val(bits, 1) - &eps {
            // boundary convention: fold Re z = +1/2 and the right arc inward
            return Ok(Sl2Reduction { z, matrix: m, word });
        }
        // invert: z -> -1/z
        z = -z.recip();
        m = mat_mul([[0, -1], [1, 0]], m);
        word.letters.push(('S', 1));
    }
    Err(Error::InvalidInput("SL(2,Z) reduction did not terminate".into()))
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Apply an integer Moebius map to z.
pub fn moebius(m: [[i64; 2]; 2], z: &Cplx, p: Prec) -> Cplx {
    let bits = p.bits();
    let z = Complex::with_val(bits, z);
    let num = z.clone() * m[0][0] + Float::with_val(bits, m[0][1]);
    let den = z * m[1][0] + Float::with_val(bits, m[1][1]);
    num / den
}

/// Shortest nonzero vector length of a rank-2 real Gram matrix, by
/// Lagrange-Gauss reduction; also returns the reduced basis coordinates.
pub fn lambda1_gram(gram: &[Vec<Real>], p: Prec) -> (Real, [i64; 2]) {
    let bits = p.bits();
    let q = |v: &[i64; 2]| -> Real {
        let mut acc = Float::new(bits);
        for i in 0..2 {
            for j in 0..2 {
                acc += &gram[i][j] * Float::with_val(bits, v[i] * v[j]);
            }
        }
        acc
    };
    let inner = |a: &[i64; 2], b: &[i64; 2]| -> Real {
        let mut acc = Float::new(bits);
        for i in 0..2 {
            for j in 0..2 {
                acc += &gram[i][j] * Float::with_val(bits, a[i] * b[j]);
            }
        }
        acc
    };
    let mut b1 = [1i64, 0];
    let mut b2 = [0i64, 1];
    if q(&b1) > q(&b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    for _ in 0..10_000 {
        let mu = (inner(&b1, &b2) / q(&b1)).round().to_f64() as i64;
        if mu != 0 {
            b2 = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
        }
        if q(&b2) < q(&b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            break;
        }
    }
    (q(&b1).sqrt(), b1)
}

/// Shortest-vector length of a rank-two lattice over Q (Lagrange-Gauss on
/// its Gram matrix).
pub fn lambda1(l: &crate::lattice::LatticeK, p: Prec) -> Result<Real> {
    if !l.field.is_rationals() {
        return Err(Error::UnsupportedField(l.field.label.clone()));
    }
    Ok(lambda1_gram(&l.gram(p), p).0)
}

/// Semistability of the volume-one rank-two Z-lattice attached to z:
/// reduce to the fundamental domain and test Im(z_reduced) <= 1.
pub fn is_semistable_q(z: &Cplx, p: Prec) -> Result<bool> {
    let red = reduce_sl2z(z, p)?;
    let one_plus = Float::with_val(p.bits(), 1) + crate::hpnum::pow10(p, -(p.digits() as i32) + 8);
    Ok(red.z.imag() <= &one_plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{cplx, pow10, rel_diff};

    #[test]
    fn pure_translation() {
        let p = Prec::new(30);
        let red = reduce_sl2z(&cplx(p, 5, 1), p).unwrap();
        assert!(rel_diff(&red.z, &cplx(p, 0, 1)) < pow10(p, -25));
        assert_eq!(red.matrix, [[1, -5], [0, 1]]);
        assert_eq!(format!("{}", red.word), "T^-5");
    }

    #[test]
    fn already_reduced_is_identity() {
        let p = Prec::new(30);
        let red = reduce_sl2z(&cplx(p, 0, 1), p).unwrap();
        assert_eq!(red.matrix, [[1, 0], [0, 1]]);
        assert_eq!(format!("{}", red.word), "1");
    }

    #[test]
    fn reduction_lands_in_domain_and_matches_brute_force() {
        let p = Prec::new(30);
        let z = cplx(p, 0.7, 0.8);
        let red = reduce_sl2z(&z, p).unwrap();
        assert!(red.z.clone().abs().into_real_imag().0 >= Float::with_val(p.bits(), 1) - pow10(p, -20));
        assert!(red.z.real().clone().abs() <= Float::with_val(p.bits(), 0.5) + pow10(p, -20));
        // matrix really maps z to the representative
        let via = moebius(red.matrix, &z, p);
        assert!(rel_diff(&via, &red.z) < pow10(p, -22));

        // brute force over words of length <= 10: no group element reaches
        // a strictly larger imaginary part than the reduced representative
        let mut best_y = red.z.imag().clone();
        let mut frontier = vec![[[1i64, 0], [0, 1]]];
        let gens = [[[0i64, -1], [1, 0]], [[1i64, 1], [0, 1]], [[1i64, -1], [0, 1]]];
        for _ in 0..10 {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let nm = mat_mul(*g, *m);
                    let w = moebius(nm, &z, p);
                    if w.imag().clone() > best_y.clone() + pow10(p, -20) {
                        best_y = w.imag().clone();
                    }
                    next.push(nm);
                }
            }
            frontier = next;
            if frontier.len() > 2000 {
                frontier.truncate(2000);
            }
        }
        assert!(best_y <= red.z.imag().clone() + pow10(p, -18));
    }

    #[test]
    fn lambda1_examples() {
        let p = Prec::new(30);
        // Z^2
        let l = crate::lattice::LatticeK::rational(&cplx(p, 0, 1), &crate::hpnum::real(p, 1), p).unwrap();
        let (len, _) = lambda1_gram(&l.gram(p), p);
        assert!((len.clone() - 1u32).abs() < pow10(p, -25));
        // tau = 2i, volume 1: lambda_1 = 1/sqrt 2
        let l2 = crate::lattice::LatticeK::rational(&cplx(p, 0, 2), &crate::hpnum::real(p, 1), p).unwrap();
        let (len2, _) = lambda1_gram(&l2.gram(p), p);
        let want = Float::with_val(p.bits(), 2).sqrt().recip();
        assert!((len2.clone() - &want).abs() < pow10(p, -25), "{}", len2.to_f64());
        // hexagonal tau = exp(i pi/3): lambda_1 = (2/sqrt 3)^{1/2}
        let h = Float::with_val(p.bits(), 3).sqrt() / 2u32;
        let lh = crate::lattice::LatticeK::rational(
            &Cplx::with_val(p.bits(), (Float::with_val(p.bits(), 0.5), h)),
            &crate::hpnum::real(p, 1),
            p,
        )
        .unwrap();
        let (len3, _) = lambda1_gram(&lh.gram(p), p);
        let want3 = (Float::with_val(p.bits(), 2) / Float::with_val(p.bits(), 3).sqrt()).sqrt();
        assert!((len3.clone() - &want3).abs() < pow10(p, -25), "{}", len3.to_f64());
    }

    #[test]
    fn lambda1_matches_enumeration_oracle() {
        let p = Prec::new(25);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x: f64 = rng.random_range(-2.0..2.0);
            let y: f64 = rng.random_range(0.1..3.0);
            let l = crate::lattice::LatticeK::rational(&cplx(p, x, y), &crate::hpnum::real(p, 1), p).unwrap();
            let g = l.gram(p);
            let (len, _) = lambda1_gram(&g, p);
            // enumeration over |m|,|n| <= 10
            let bits = p.bits();
            let mut best = Float::with_val(bits, f64::INFINITY);
            for m in -10i64..=10 {
                for n in -10i64..=10 {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let mut q = Float::new(bits);
                    for i in 0..2 {
                        for j in 0..2 {
                            let v = [m, n];
                            q += &g[i][j] * Float::with_val(bits, v[i] * v[j]);
                        }
                    }
                    if q < best {
                        best = q;
                    }
                }
            }
            let want = best.sqrt();
            assert!((len.clone() - &want).abs() < pow10(p, -18));
        }
    }

    #[test]
    fn semistability_examples() {
        let p = Prec::new(30);
        assert!(is_semistable_q(&cplx(p, 0, 1), p).unwrap()); // boundary
        assert!(!is_semistable_q(&cplx(p, 0, 2), p).unwrap()); // y = 2
        // hexagonal point: y = sqrt(3)/2 <= 1
        let h = Float::with_val(p.bits(), 3).sqrt() / 2u32;
        let z = Cplx::with_val(p.bits(), (Float::with_val(p.bits(), 0.5), h));
        assert!(is_semistable_q(&z, p).unwrap());
    }
}
