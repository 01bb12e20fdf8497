//! Epstein zeta of a positive definite Gram matrix:
//!
//!   Z_A(s) = sum'_{v in Z^n} q(v)^{-s},   q(v) = v^T A v.
//!
//! The workhorse is the theta-split (incomplete-gamma) decomposition
//!
//!   pi^{-s} Gamma(s) Z_A(s) = sum'_v (pi q(v))^{-s} Gamma(s, pi q(v))
//!     + D^{-1/2} sum'_v (pi q*(v))^{s-n/2} Gamma(n/2 - s, pi q*(v))
//!     + D^{-1/2}/(s - n/2) - 1/s,
//!
//! with D = det A and q* the dual form of A^{-1}: both sums converge like
//! Gaussians, so the vector enumeration is tiny even at high precision. A
//! plain truncated sum over max-norm boxes is kept as a low-precision
//! diagnostic oracle.

use crate::error::{Error, Result};
use crate::hpnum::{cabs, gamma, pi, rpow_c, upper_incomplete_gamma, Cplx, Prec, Real};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// Symmetric positive-definite matrix utilities at working precision.
pub fn mat_det(a: &[Vec<Real>]) -> Real {
    let n = a.len();
    let bits = a[0][0].prec();
    let mut m: Vec<Vec<Real>> = a.to_vec();
    let mut det = Float::with_val(bits, 1);
    for i in 0..n {
        // partial pivot
        let mut piv = i;
        for r in (i + 1)..n {
            if m[r][i].clone().abs() > m[piv][i].clone().abs() {
                piv = r;
            }
        }
        if piv != i {
            m.swap(piv, i);
            det = -det;
        }
        det *= &m[i][i];
        let inv = m[i][i].clone().recip();
        for r in (i + 1)..n {
            let f = (&m[r][i] * &inv).complete(bits);
            for c in i..n {
                let sub = (&f * &m[i][c]).complete(bits);
                m[r][c] -= sub;
            }
        }
    }
    det
}

pub fn mat_inverse(a: &[Vec<Real>]) -> Vec<Vec<Real>> {
    let n = a.len();
    let bits = a[0][0].prec();
    let mut m: Vec<Vec<Real>> = a.to_vec();
    let mut inv: Vec<Vec<Real>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Float::with_val(bits, if i == j { 1 } else { 0 }))
                .collect()
        })
        .collect();
    for i in 0..n {
        let mut piv = i;
        for r in (i + 1)..n {
            if m[r][i].clone().abs() > m[piv][i].clone().abs() {
                piv = r;
            }
        }
        m.swap(piv, i);
        inv.swap(piv, i);
        let d = m[i][i].clone().recip();
        for c in 0..n {
            m[i][c] *= &d;
            inv[i][c] *= &d;
        }
        for r in 0..n {
            if r == i {
                continue;
            }
            let f = m[r][i].clone();
            for c in 0..n {
                let s1 = (&f * &m[i][c]).complete(bits);
                m[r][c] -= s1;
                let s2 = (&f * &inv[i][c]).complete(bits);
                inv[r][c] -= s2;
            }
        }
    }
    inv
}

/// LDL^T factors for the enumeration: q(v) = sum_i d_i (v_i + sum_{j>i} u_ij v_j)^2.
fn cholesky_ldl(a: &[Vec<Real>]) -> (Vec<Real>, Vec<Vec<Real>>) {
    let n = a.len();
    let bits = a[0][0].prec();
    let mut d = vec![Float::new(bits); n];
    let mut u = vec![vec![Float::new(bits); n]; n];
    for i in 0..n {
        let mut di = a[i][i].clone();
        for k in 0..i {
            let t = (&d[k] * &u[k][i]).complete(bits);
            di -= t * &u[k][i];
        }
        d[i] = di;
        for j in (i + 1)..n {
            let mut uij = a[i][j].clone();
            for k in 0..i {
                let t = (&d[k] * &u[k][i]).complete(bits);
                uij -= t * &u[k][j];
            }
            u[i][j] = uij / &d[i];
        }
    }
    (d, u)
}

/// All nonzero v in Z^n with q(v) <= bound, one representative per +-v pair
/// (the highest-index nonzero coordinate is positive).
pub fn enumerate_below(a: &[Vec<Real>], bound: &Real) -> Vec<Vec<i64>> {
    let n = a.len();
    let (d, u) = cholesky_ldl(a);
    let df: Vec<f64> = d.iter().map(|x| x.to_f64()).collect();
    let uf: Vec<Vec<f64>> = u.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect();
    let b = bound.to_f64() * (1.0 + 1e-9) + 1e-12;

    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    descend(n - 1, n, b, &mut v, &df, &uf, true, &mut out);
    out
}

fn descend(
    i: usize,
    n: usize,
    remaining: f64,
    v: &mut Vec<i64>,
    df: &[f64],
    uf: &[Vec<f64>],
    leading: bool,
    out: &mut Vec<Vec<i64>>,
) {
    // interval for v_i is centered at -sum_{j>i} u_ij v_j
    let center: f64 = -((i + 1)..n).map(|j| uf[i][j] * v[j] as f64).sum::<f64>();
    let radius = (remaining / df[i]).max(0.0).sqrt();
    let mut lo = (center - radius).floor() as i64 - 1;
    let hi = (center + radius).ceil() as i64 + 1;
    if leading && lo < 0 {
        lo = 0;
    }
    for val in lo..=hi {
        let offset = val as f64 - center;
        let used = df[i] * offset * offset;
        if used > remaining * (1.0 + 1e-9) + 1e-9 {
            continue;
        }
        v[i] = val;
        if i == 0 {
            if v.iter().any(|&x| x != 0) {
                out.push(v.clone());
            }
        } else {
            descend(i - 1, n, remaining - used, v, df, uf, leading && val == 0, out);
        }
    }
    v[i] = 0;
}

fn eval_form(a: &[Vec<Real>], v: &[i64], bits: u32) -> Real {
    let n = a.len();
    let mut q = Float::new(bits);
    for i in 0..n {
        for j in 0..n {
            if v[i] != 0 && v[j] != 0 {
                q += &a[i][j] * Float::with_val(bits, v[i] as i64 * v[j] as i64);
            }
        }
    }
    q
}

/// Z_A(s) by the theta-split decomposition; entire in s except the poles at
/// s = n/2 (and the removable structure at s = 0 handled explicitly).
pub fn epstein_zeta_gram(a: &[Vec<Real>], s: &Cplx, p: Prec) -> Result<Cplx> {
    let n = a.len();
    let wp = p.raised(10);
    let bits = wp.bits();
    let s = Complex::with_val(bits, s);

    let det = mat_det(a);
    if det.is_sign_negative() || det.is_zero() {
        return Err(Error::InvalidInput("gram matrix not positive definite".into()));
    }
    let inv_sqrt_det = det.clone().sqrt().recip();
    let dual = mat_inverse(a);

    let pi_w = pi(wp);
    let half_n = Float::with_val(bits, n as u32) / 2u32;

    // pole guards: s = 0 handled by the final division by Gamma(s) being
    // infinite (Z(0) finite), s = n/2 a genuine pole of Z
    let dist_pole = cabs(&((s.clone()) - &half_n));
    if dist_pole < Float::with_val(bits, 10).pow(-(p.digits() as i32)) {
        return Err(Error::PoleAtZeroOrOne(format!("s = n/2 = {}", n as f64 / 2.0)));
    }

    // enumeration bound: pi q > ln 10 (p + slack) + growth of x^{sigma-1}
    let digits = wp.digits() as f64 + 8.0;
    let sig = s.real().to_f64();
    let grow = (sig - 1.0).abs().max((n as f64 / 2.0 - sig - 1.0).abs()) + n as f64;
    let mut b = digits * std::f64::consts::LN_10 / std::f64::consts::PI;
    for _ in 0..3 {
        b = (digits * std::f64::consts::LN_10 + grow * (1.0 + (std::f64::consts::PI * b).ln().max(0.0)))
            / std::f64::consts::PI;
    }
    let bound = Float::with_val(bits, b);

    let minus_s = -s.clone();
    let s_m_halfn = (s.clone()) - &half_n;

    // primal sum
    let mut prim = Complex::with_val(bits, 0);
    for v in enumerate_below(a, &bound) {
        let q = eval_form(a, &v, bits);
        let x = (&q * &pi_w).complete(bits);
        let g = upper_incomplete_gamma(&s, &x, wp)?;
        prim += rpow_c(&x, &minus_s) * g;
    }

    // dual sum
    let mut dualsum = Complex::with_val(bits, 0);
    let half_n_minus_s = -s_m_halfn.clone();
    for v in enumerate_below(&dual, &bound) {
        let q = eval_form(&dual, &v, bits);
        let x = (&q * &pi_w).complete(bits);
        let g = upper_incomplete_gamma(&half_n_minus_s, &x, wp)?;
        dualsum += rpow_c(&x, &s_m_halfn) * g;
    }

    // both sums counted one representative per +-v pair
    prim *= 2u32;
    dualsum *= 2u32;

    let mut total = prim;
    total += dualsum * &inv_sqrt_det;
    total += Complex::with_val(bits, &inv_sqrt_det) / &s_m_halfn;
    total -= s.clone().recip();

    // Z(s) = pi^s / Gamma(s) * total
    let g = gamma(&s, wp)?;
    let pis = rpow_c(&pi_w, &s);
    Ok(total * pis / g)
}

/// Truncated direct sum over max(|v_i|) <= cutoff plus an integral-style
/// tail estimate; diagnostic oracle, O(cutoff^{2 - 2 Re s}) accurate.
pub fn epstein_direct_sum(a: &[Vec<Real>], s: &Cplx, cutoff: i64, p: Prec) -> Result<Cplx> {
    if s.real().to_f64() <= a.len() as f64 / 2.0 {
        return Err(Error::AbscissaViolation {
            need: a.len() as f64 / 2.0,
            got: format!("{:.4}", s.real().to_f64()),
        });
    }
    let n = a.len();
    assert!(n == 2, "direct oracle implemented for binary forms");
    let bits = p.bits();
    let s = Complex::with_val(bits, s);
    let minus_s = -s.clone();
    let mut acc = Complex::with_val(bits, 0);
    for m in -cutoff..=cutoff {
        for k in -cutoff..=cutoff {
            if m == 0 && k == 0 {
                continue;
            }
            let q = eval_form(a, &[m, k], bits);
            acc += rpow_c(&q, &minus_s);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpnum::{cplx, pow10, real, rel_diff, Prec};

    fn identity_gram(p: Prec) -> Vec<Vec<Real>> {
        vec![
            vec![real(p, 1), real(p, 0)],
            vec![real(p, 0), real(p, 1)],
        ]
    }

    #[test]
    fn z2_lattice_at_s2_is_4_zeta_beta() {
        // sum' (m^2+n^2)^{-2} = 4 zeta(2) beta(2), beta(2) = Catalan
        let p = Prec::new(40);
        let g = identity_gram(p);
        let z = epstein_zeta_gram(&g, &cplx(p, 2, 0), p).unwrap();
        let k = crate::zetalib::FieldDescriptor::from_label("Qsqrt-1").unwrap();
        let zeta2 = crate::zetalib::riemann_zeta(&cplx(p, 2, 0), p).unwrap();
        let beta2 = crate::zetalib::dirichlet_l(&cplx(p, 2, 0), &k, p).unwrap();
        let want = zeta2 * beta2 * 4u32;
        assert!(rel_diff(&z, &want) < pow10(p, -34), "rel {:.3e}", rel_diff(&z, &want).to_f64());
    }

    #[test]
    fn matches_direct_sum_low_precision() {
        let p = Prec::new(20);
        let g = vec![
            vec![real(p, 1.3), real(p, 0.4)],
            vec![real(p, 0.4), real(p, 0.9)],
        ];
        let s = cplx(p, 3, 0.7);
        let smart = epstein_zeta_gram(&g, &s, p).unwrap();
        let direct = epstein_direct_sum(&g, &s, 400, p).unwrap();
        // direct truncation error ~ cutoff^{2-2*3} = 400^-4 ~ 4e-11
        assert!(rel_diff(&smart, &direct) < pow10(p, -8));
    }

    #[test]
    fn doubling_cutoff_shrinks_direct_error() {
        let p = Prec::new(20);
        let g = identity_gram(p);
        let s = cplx(p, 2.5, 0);
        let exact = epstein_zeta_gram(&g, &s, p).unwrap();
        let d1 = epstein_direct_sum(&g, &s, 50, p).unwrap();
        let d2 = epstein_direct_sum(&g, &s, 100, p).unwrap();
        let e1 = rel_diff(&exact, &d1);
        let e2 = rel_diff(&exact, &d2);
        assert!(e2 < e1, "e1 {:.3e} e2 {:.3e}", e1.to_f64(), e2.to_f64());
    }

    #[test]
    fn four_dimensional_z4() {
        // Z^4: sum' (v.v)^{-s} = 8 (1 - 4^{1-s}) zeta(s) zeta(s-1) at s = 3
        // (Jacobi: r4(n) = 8 sigma(n) - 32 sigma(n/4))
        let p = Prec::new(35);
        let g: Vec<Vec<Real>> = (0..4)
            .map(|i| (0..4).map(|j| real(p, if i == j { 1 } else { 0 })).collect())
            .collect();
        let s = cplx(p, 3, 0);
        let z = epstein_zeta_gram(&g, &s, p).unwrap();
        let z3 = crate::zetalib::riemann_zeta(&s, p).unwrap();
        let z2 = crate::zetalib::riemann_zeta(&cplx(p, 2, 0), p).unwrap();
        let four_pow = crate::hpnum::cpow(&cplx(p, 4, 0), &cplx(p, -2, 0));
        let want = (cplx(p, 1, 0) - four_pow) * z3 * z2 * 8u32;
        assert!(rel_diff(&z, &want) < pow10(p, -28), "rel {:.3e}", rel_diff(&z, &want).to_f64());
    }

    #[test]
    fn enumeration_counts_unit_circle() {
        // q(v) <= 1 on Z^2: +-(1,0), +-(0,1) -> 2 representatives
        let p = Prec::new(20);
        let g = identity_gram(p);
        let vs = enumerate_below(&g, &real(p, 1));
        assert_eq!(vs.len(), 2);
        // q(v) <= 2 adds +-(1,1), +-(1,-1)
        let vs2 = enumerate_below(&g, &real(p, 2));
        assert_eq!(vs2.len(), 4);
    }
}
