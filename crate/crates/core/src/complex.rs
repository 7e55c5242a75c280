//! Multiprecision complex arithmetic over MPFR floats.
//!
//! Only the operations the root finder needs: ring ops, division, modulus,
//! conjugation, and a lossless radix-16 string encoding (binary floats print
//! exactly in hex, so serialized roots reload bit-identically).

use crate::error::{Error, Result};
use rug::float::Special;
use rug::Float;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A complex number with both parts at the same MPFR precision.
#[derive(Debug, Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn zero(prec: u32) -> Self {
        MpComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        MpComplex { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        MpComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn real(value: Float) -> Self {
        let prec = value.prec();
        MpComplex {
            re: value,
            im: Float::with_val(prec, 0),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Copy at a (usually higher) working precision.
    pub fn at_prec(&self, prec: u32) -> Self {
        MpComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        MpComplex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    /// re² + im².
    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut acc = Float::with_val(prec, &self.re * &self.re);
        acc += Float::with_val(prec, &self.im * &self.im);
        acc
    }

    /// |z|.
    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// z/w by the textbook formula; MPFR's huge exponent range makes
    /// intermediate overflow a non-issue.
    pub fn div_ref(&self, rhs: &MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        let denom = rhs.norm_sqr();
        if denom.is_zero() {
            return MpComplex {
                re: Float::with_val(prec, Special::Nan),
                im: Float::with_val(prec, Special::Nan),
            };
        }
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re += Float::with_val(prec, &self.im * &rhs.im);
        re /= &denom;
        let mut im = Float::with_val(prec, &self.im * &rhs.re);
        im -= Float::with_val(prec, &self.re * &rhs.im);
        im /= &denom;
        MpComplex { re, im }
    }

    pub fn mul_ref(&self, rhs: &MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re -= Float::with_val(prec, &self.im * &rhs.im);
        let mut im = Float::with_val(prec, &self.re * &rhs.im);
        im += Float::with_val(prec, &self.im * &rhs.re);
        MpComplex { re, im }
    }

    /// 1/z.
    pub fn recip(&self) -> MpComplex {
        let prec = self.prec();
        let one = MpComplex {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        };
        one.div_ref(self)
    }

    /// Lossless encoding as a pair of radix-16 strings.
    pub fn to_hex(&self) -> (String, String) {
        (float_to_hex(&self.re), float_to_hex(&self.im))
    }

    pub fn from_hex(re: &str, im: &str, prec: u32) -> Result<Self> {
        Ok(MpComplex {
            re: float_from_hex(re, prec)?,
            im: float_from_hex(im, prec)?,
        })
    }
}

/// Exact hex rendering of a binary float.
pub fn float_to_hex(f: &Float) -> String {
    f.to_string_radix(16, None)
}

/// Parse the exact hex rendering back at the given precision.
pub fn float_from_hex(s: &str, prec: u32) -> Result<Float> {
    Float::parse_radix(s, 16)
        .map(|v| Float::with_val(prec, v))
        .map_err(|e| Error::Malformed(format!("float {s:?}: {e}")))
}

impl Add for &MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        MpComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &MpComplex) -> MpComplex {
        let prec = self.prec().max(rhs.prec());
        MpComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &MpComplex) -> MpComplex {
        self.mul_ref(rhs)
    }
}

impl Div for &MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: &MpComplex) -> MpComplex {
        self.div_ref(rhs)
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl AddAssign<&MpComplex> for MpComplex {
    fn add_assign(&mut self, rhs: &MpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&MpComplex> for MpComplex {
    fn sub_assign(&mut self, rhs: &MpComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}
