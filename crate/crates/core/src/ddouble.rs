//! Minimal double-double arithmetic for accurate sums of `x·ln x` terms.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    /// Natural log of a finite x ≥ 1, accurate to roughly 1e-30 relative.
    pub fn ln(x: f64) -> Dd {
        debug_assert!(x >= 1.0 && x.is_finite());
        // x = m · 2^e with m in [√½, √2)
        let mut e = x.log2().floor() as i32;
        let mut m = x / 2f64.powi(e);
        if m >= std::f64::consts::SQRT_2 {
            m /= 2.0;
            e += 1;
        }
        // ln m = 2·atanh(s), s = (m−1)/(m+1)
        let (nh, nl) = two_sum(m, -1.0);
        let (dh, dl) = two_sum(m, 1.0);
        let s = Dd { hi: nh, lo: nl }.div(Dd { hi: dh, lo: dl });
        let s2 = s * s;
        let mut term = s;
        let mut sum = s;
        let mut k = 1.0;
        loop {
            term = term * s2;
            k += 2.0;
            let t = term.div(Dd::from_f64(k));
            sum = sum + t;
            if t.hi.abs() <= 1e-34 * sum.hi.abs() {
                break;
            }
        }
        sum * Dd::from_f64(2.0) + LN2 * Dd::from_f64(f64::from(e))
    }

    /// `x · ln x` with the convention 0·ln 0 = 0. `x` must be an integer
    /// below 2^53.
    pub fn xlnx(x: u64) -> Dd {
        if x <= 1 {
            return Dd::ZERO;
        }
        let xf = x as f64;
        Dd::ln(xf) * Dd::from_f64(xf)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}
