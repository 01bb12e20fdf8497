//! Number-field descriptors for Q and quadratic fields, and the Kronecker
//! symbol that drives the quadratic character chi_d.

use crate::error::{Error, Result};

/// A number field K of degree <= 2: discriminant data, signature, class
/// number, and the quadratic character chi_d as a Kronecker symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub label: String,
    /// Fundamental discriminant; 0 for Q.
    pub d: i64,
    /// |d| for quadratic fields, 1 for Q.
    pub abs_disc: u64,
    pub r1: u32,
    pub r2: u32,
    pub class_number: u32,
    /// Number of roots of unity w: 6 for d = -3, 4 for d = -4, else 2.
    pub unit_count: u32,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor {
            label: "Q".into(),
            d: 0,
            abs_disc: 1,
            r1: 1,
            r2: 0,
            class_number: 1,
            unit_count: 2,
        }
    }

    /// Quadratic field from a fundamental discriminant. For imaginary
    /// quadratic fields the class number is computed from the reduced-form
    /// count; for real quadratic fields the caller must supply it.
    pub fn quadratic(d: i64, h: Option<u32>) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidInput(format!("{d} is not a fundamental discriminant")));
        }
        if !is_fundamental_discriminant(d) {
            return Err(Error::InvalidInput(format!("{d} is not a fundamental discriminant")));
        }
        let (r1, r2) = if d > 0 { (2, 0) } else { (0, 1) };
        let class_number = match (d < 0, h) {
            (true, Some(h)) => {
                let computed = super::forms::reduced_forms(d)?.len() as u32;
                if computed != h {
                    return Err(Error::InvalidInput(format!(
                        "class number mismatch for d = {d}: given {h}, reduced forms give {computed}"
                    )));
                }
                h
            }
            (true, None) => super::forms::reduced_forms(d)?.len() as u32,
            (false, Some(h)) => h,
            (false, None) => {
                return Err(Error::InvalidInput(
                    "real quadratic fields need a caller-supplied class number".into(),
                ))
            }
        };
        let unit_count = match d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        Ok(FieldDescriptor {
            label: format!("disc:{d}"),
            d,
            abs_disc: d.unsigned_abs(),
            r1,
            r2,
            class_number,
            unit_count,
        })
    }

    /// Parse the CLI field grammar: `Q` | `Qsqrt<k>` | `disc:<d>:h:<n>`.
    pub fn from_label(label: &str) -> Result<Self> {
        if label == "Q" {
            return Ok(Self::rationals());
        }
        if let Some(k) = label.strip_prefix("Qsqrt") {
            let k: i64 = k
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad field spec {label}")))?;
            if k == 0 || k == 1 {
                return Err(Error::InvalidInput(format!("bad field spec {label}")));
            }
            // fundamental discriminant of Q(sqrt k), k squarefree
            let d = if k.rem_euclid(4) == 1 { k } else { 4 * k };
            let h = match d {
                5 => Some(1),
                8 => Some(1),
                12 => Some(1),
                13 => Some(1),
                _ if d > 0 => None,
                _ => None,
            };
            let mut f = Self::quadratic(d, h)?;
            f.label = label.to_string();
            return Ok(f);
        }
        if let Some(rest) = label.strip_prefix("disc:") {
            let parts: Vec<&str> = rest.split(":h:").collect();
            let d: i64 = parts[0]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad field spec {label}")))?;
            let h = if parts.len() == 2 {
                Some(
                    parts[1]
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad field spec {label}")))?,
                )
            } else {
                None
            };
            let mut f = Self::quadratic(d, h)?;
            f.label = label.to_string();
            return Ok(f);
        }
        Err(Error::InvalidInput(format!("bad field spec {label}")))
    }

    /// The five-field table exercised by every full suite.
    pub fn shipped() -> Vec<Self> {
        vec![
            Self::rationals(),
            Self::from_label("Qsqrt-1").unwrap(),
            Self::from_label("Qsqrt-3").unwrap(),
            Self::from_label("Qsqrt-5").unwrap(),
            Self::from_label("Qsqrt5").unwrap(),
        ]
    }

    pub fn degree(&self) -> u32 {
        self.r1 + 2 * self.r2
    }

    pub fn is_rationals(&self) -> bool {
        self.d == 0
    }

    pub fn is_imag_quadratic(&self) -> bool {
        self.d < 0
    }

    /// chi_d(n), the Kronecker symbol (d/n); identically 1 for Q.
    pub fn chi(&self, n: i64) -> i32 {
        if self.is_rationals() {
            1
        } else {
            kronecker(self.d, n)
        }
    }
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    let m = d.rem_euclid(4);
    if m == 1 {
        is_squarefree(d)
    } else if m == 0 {
        let q = d / 4;
        let qm = q.rem_euclid(4);
        (qm == 2 || qm == 3) && is_squarefree(q)
    } else {
        false
    }
}

fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Kronecker symbol (a/n), extended Jacobi symbol over all integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    if a & 1 == 0 && n & 1 == 0 {
        return 0;
    }
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // pull out factors of 2 from n: (a/2) = 0, 1, -1 per a mod 8
    let mut v = 0;
    while n & 1 == 0 {
        v += 1;
        n >>= 1;
    }
    if v & 1 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        let mut v = 0;
        while a & 1 == 0 {
            v += 1;
            a >>= 1;
        }
        if v & 1 == 1 {
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        // quadratic reciprocity for odd positive a, n
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        let r = a;
        a = n.rem_euclid(r);
        n = r;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table() {
        let fields = FieldDescriptor::shipped();
        assert_eq!(fields.len(), 5);
        let qi = &fields[1];
        assert_eq!((qi.d, qi.abs_disc, qi.class_number, qi.unit_count), (-4, 4, 1, 4));
        assert_eq!((qi.r1, qi.r2), (0, 1));
        let q3 = &fields[2];
        assert_eq!((q3.d, q3.unit_count), (-3, 6));
        let q5 = &fields[3];
        assert_eq!((q5.d, q5.class_number), (-20, 2));
        let qr5 = &fields[4];
        assert_eq!((qr5.d, qr5.r1, qr5.r2, qr5.class_number), (5, 2, 0, 1));
        for f in &fields {
            assert_eq!(f.r1 + 2 * f.r2, f.degree());
        }
    }

    #[test]
    fn kronecker_is_completely_multiplicative_and_periodic() {
        // chi_d multiplicative and periodic mod |d| for all |d| <= 200
        for d in -200i64..=200 {
            if !is_fundamental_discriminant(d) {
                continue;
            }
            let m = d.unsigned_abs() as i64;
            for a in 1..=m.min(60) {
                for b in 1..=m.min(60) {
                    assert_eq!(
                        kronecker(d, a * b),
                        kronecker(d, a) * kronecker(d, b),
                        "d={d} a={a} b={b}"
                    );
                }
                assert_eq!(kronecker(d, a), kronecker(d, a + m), "period d={d} a={a}");
            }
        }
    }

    #[test]
    fn kronecker_classical_values() {
        // chi_{-4}: 1, 0, -1, 0 pattern
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        // chi_5 is the Legendre symbol mod 5
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(5, 4), 1);
        assert_eq!(kronecker(5, 5), 0);
    }

    #[test]
    fn class_number_mismatch_rejected() {
        assert!(FieldDescriptor::quadratic(-20, Some(1)).is_err());
        assert!(FieldDescriptor::quadratic(-20, Some(2)).is_ok());
    }

    #[test]
    fn label_grammar() {
        assert!(FieldDescriptor::from_label("Q").unwrap().is_rationals());
        assert_eq!(FieldDescriptor::from_label("Qsqrt-1").unwrap().d, -4);
        assert_eq!(FieldDescriptor::from_label("Qsqrt-3").unwrap().d, -3);
        assert_eq!(FieldDescriptor::from_label("Qsqrt-5").unwrap().d, -20);
        assert_eq!(FieldDescriptor::from_label("Qsqrt5").unwrap().d, 5);
        assert_eq!(FieldDescriptor::from_label("disc:-23").unwrap().class_number, 3);
        assert!(FieldDescriptor::from_label("Qsqrt4").is_err());
        assert!(FieldDescriptor::from_label("nope").is_err());
    }
}
