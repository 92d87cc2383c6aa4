use std::fmt;

use crate::error::{Error, Result};

/// Integer matrix of determinant one, compared projectively (M ~ -M).
#[derive(Clone, Copy, Debug, Eq)]
pub struct Moebius {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl PartialEq for Moebius {
    fn eq(&self, o: &Self) -> bool {
        (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
            || (self.a, self.b, self.c, self.d) == (-o.a, -o.b, -o.c, -o.d)
    }
}

fn ovf(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// Generators of Gamma(2).
    pub const A: Moebius = Moebius {
        a: 1,
        b: 2,
        c: 0,
        d: 1,
    };
    pub const B: Moebius = Moebius {
        a: 1,
        b: 0,
        c: 2,
        d: 1,
    };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = a
            .checked_mul(d)
            .and_then(|x| b.checked_mul(c).and_then(|y| x.checked_sub(y)))
            .ok_or_else(|| ovf("computing a determinant"))?;
        if det != 1 {
            return Err(Error::domain(format!("determinant {det} != 1")));
        }
        Ok(Moebius { a, b, c, d })
    }

    pub fn mul(&self, o: &Moebius) -> Result<Moebius> {
        let f = |x: i128, y: i128, u: i128, v: i128| {
            x.checked_mul(y)
                .and_then(|p| u.checked_mul(v).and_then(|q| p.checked_add(q)))
                .ok_or_else(|| ovf("multiplying matrices"))
        };
        Ok(Moebius {
            a: f(self.a, o.a, self.b, o.c)?,
            b: f(self.a, o.b, self.b, o.d)?,
            c: f(self.c, o.a, self.d, o.c)?,
            d: f(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, n: i64) -> Result<Moebius> {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut out = Moebius::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    pub fn conjugate_by(&self, g: &Moebius) -> Result<Moebius> {
        g.mul(self)?.mul(&g.inverse())
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2
    }

    pub fn in_gamma2(&self) -> bool {
        self.b % 2 == 0 && self.c % 2 == 0
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// N = ((t + sqrt(t^2 - 4)) / 2)^2 for |t| > 2.
pub fn norm_from_trace(t: u64) -> f64 {
    let t = t as f64;
    let x = 0.5 * (t + (t * t - 4.0).sqrt());
    x * x
}

/// log N = 2 acosh(t/2).
pub fn log_norm_from_trace(t: u64) -> f64 {
    2.0 * (0.5 * t as f64).acosh()
}

/// Largest trace whose norm does not exceed x (0 if none is hyperbolic).
pub fn max_trace_for_norm(x: f64) -> u64 {
    if !(x > 1.0) {
        return 0;
    }
    let r = x.sqrt();
    let mut t = (r + 1.0 / r).floor() as u64;
    while t > 2 && norm_from_trace(t) > x {
        t -= 1;
    }
    while norm_from_trace(t + 1) <= x {
        t += 1;
    }
    if t <= 2 {
        0
    } else {
        t
    }
}
