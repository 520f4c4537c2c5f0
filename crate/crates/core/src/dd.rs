//! Minimal double-double arithmetic (an unevaluated sum of two f64).
//!
//! Only what the ₂F₂ kernel needs: error-free products via FMA and
//! compensated sums. Roughly 2^-104 relative accuracy.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        let lo = p.lo + self.lo * b;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.add(other.mul_f64(-q1));
        let q2 = r.hi / other.hi;
        let r2 = r.add(other.mul_f64(-q2));
        let q3 = r2.hi / other.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}
