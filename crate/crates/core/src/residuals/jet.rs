use std::ops::{Add, Mul, Neg, Sub};

/// Truncated Taylor jet: a value and its first `len - 1` derivatives.
///
/// Products follow the Leibniz rule and keep the shorter of the two
/// lengths; constants carry the full length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    c: [f64; Jet::MAX],
    len: usize,
}

impl Jet {
    pub const MAX: usize = 4;

    /// Value with first and second derivatives.
    pub fn second_order(v: f64, d1: f64, d2: f64) -> Self {
        Self {
            c: [v, d1, d2, 0.0],
            len: 3,
        }
    }

    pub fn constant(v: f64) -> Self {
        Self {
            c: [v, 0.0, 0.0, 0.0],
            len: Self::MAX,
        }
    }

    pub fn value(self) -> f64 {
        self.c[0]
    }

    /// Derivative jet, one order shorter.
    pub fn d(self) -> Self {
        debug_assert!(self.len >= 2);
        let mut c = [0.0; Self::MAX];
        c[..Self::MAX - 1].copy_from_slice(&self.c[1..]);
        Self { c, len: self.len - 1 }
    }

    /// `1/self`, or `None` when `|value| < floor`.
    pub fn recip(self, floor: f64) -> Option<Self> {
        let a = self.c;
        if !(a[0].abs() >= floor) {
            return None;
        }
        let r = 1.0 / a[0];
        let r2 = r * r;
        let c = [
            r,
            -a[1] * r2,
            2.0 * a[1] * a[1] * r2 * r - a[2] * r2,
            -6.0 * a[1].powi(3) * r2 * r2 + 6.0 * a[1] * a[2] * r2 * r - a[3] * r2,
        ];
        Some(Self { c, len: self.len })
    }

    pub fn square(self) -> Self {
        self * self
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, o: Jet) -> Jet {
        let mut c = [0.0; Jet::MAX];
        for (k, v) in c.iter_mut().enumerate() {
            *v = self.c[k] + o.c[k];
        }
        Jet {
            c,
            len: self.len.min(o.len),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;

    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, o: Jet) -> Jet {
        let (a, b) = (self.c, o.c);
        let c = [
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * (a[2] * b[1] + a[1] * b[2]) + a[0] * b[3],
        ];
        Jet {
            c,
            len: self.len.min(o.len),
        }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;

    fn mul(self, s: f64) -> Jet {
        let mut c = self.c;
        for v in c.iter_mut() {
            *v *= s;
        }
        Jet { c, len: self.len }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet_of(f: impl Fn(f64) -> [f64; 3], s: f64) -> Jet {
        let [v, d1, d2] = f(s);
        Jet::second_order(v, d1, d2)
    }

    #[test]
    fn leibniz_against_closed_forms() {
        let s = 0.7;
        let sin = jet_of(|s| [s.sin(), s.cos(), -s.sin()], s);
        let exp = jet_of(|s| [s.exp(), s.exp(), s.exp()], s);
        let prod = sin * exp;
        // (e^s sin s)'' = 2 e^s cos s
        assert!((prod.d().d().value() - 2.0 * s.exp() * s.cos()).abs() < 1e-14);
        let inv = exp.recip(1e-12).unwrap();
        assert!((inv.d().d().value() - (-s).exp()).abs() < 1e-14);
        let q = sin * inv;
        // (e^-s sin s)' = e^-s (cos s - sin s)
        assert!((q.d().value() - (-s).exp() * (s.cos() - s.sin())).abs() < 1e-14);
    }

    #[test]
    fn recip_respects_floor() {
        assert!(Jet::constant(1e-13).recip(1e-12).is_none());
        assert!(Jet::constant(f64::NAN).recip(1e-12).is_none());
        assert_eq!(Jet::constant(4.0).recip(1e-12).unwrap().value(), 0.25);
    }

    #[test]
    fn lengths_truncate() {
        let a = Jet::second_order(1.0, 2.0, 3.0);
        assert_eq!((a * Jet::constant(2.0)).len, 3);
        assert_eq!(a.d().len, 2);
        assert_eq!((a.d() + a).len, 2);
        assert_eq!(Jet::constant(1.0).d().d().d().len, 1);
    }
}
