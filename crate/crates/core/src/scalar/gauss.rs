use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring;

/// An element of the Gaussian rationals `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(v)),
            BigRational::zero(),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// True when the value is a negative real number (used for sign-aware printing).
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    /// Bit-size proxy for pivot selection.
    pub fn size(&self) -> usize {
        let bits = |r: &BigRational| (r.numer().bits() + r.denom().bits()) as usize;
        bits(&self.re) + bits(&self.im)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational::from_rational(&self.re * &o.re);
        }
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: GaussRational) -> GaussRational {
        &self + &o
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: GaussRational) -> GaussRational {
        &self - &o
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: GaussRational) -> GaussRational {
        &self * &o
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

impl ring::Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::zero()
    }
    fn one() -> Self {
        GaussRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        GaussRational::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl ring::Field for GaussRational {
    fn inv_ref(&self) -> Option<Self> {
        self.inv()
    }
    fn weight(&self) -> usize {
        self.size()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRational {
    /// Renders in the expression grammar, e.g. `3/4`, `-i`, `1/2+3*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussRational::new(
            BigRational::new(3.into(), 4.into()),
            BigRational::new((-2).into(), 5.into()),
        );
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussRational::one());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(GaussRational::i().to_string(), "i");
        assert_eq!((-GaussRational::i()).to_string(), "-i");
        let z =
            &GaussRational::from_int(1) + &(&GaussRational::from_ratio(1, 2) * &GaussRational::i());
        assert_eq!(z.to_string(), "1+1/2*i");
    }

    #[test]
    fn pow_negative() {
        let two = GaussRational::from_int(2);
        assert_eq!(two.pow(-3).unwrap(), GaussRational::from_ratio(1, 8));
        assert_eq!(GaussRational::i().pow(4).unwrap(), GaussRational::one());
    }
}
