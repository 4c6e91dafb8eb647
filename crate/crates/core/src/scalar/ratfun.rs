use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRational;
use super::gcd::gcd;
use super::poly::{Monomial, Poly};
use super::var::{Var, MAX_VARS};
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// An exact rational function in `q` and the declared parameters.
///
/// Canonical form: the numerator is a Laurent polynomial; the denominator is
/// an ordinary polynomial divisible by no variable, coprime to the numerator,
/// with leading coefficient 1. Equal values therefore have equal
/// representations and zero-testing is syntactic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// Values for (some of) the indeterminates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Point {
    values: Vec<Option<GaussRational>>,
}

impl Point {
    pub fn new() -> Self {
        Self {
            values: vec![None; MAX_VARS],
        }
    }

    pub fn set(&mut self, v: Var, value: GaussRational) {
        self.values[v.index()] = Some(value);
    }

    pub fn with(mut self, name: &str, value: GaussRational) -> Result<Self> {
        self.set(Var::named(name)?, value);
        Ok(self)
    }

    pub fn get(&self, v: Var) -> Option<&GaussRational> {
        self.values[v.index()].as_ref()
    }

    pub fn values(&self) -> &[Option<GaussRational>] {
        &self.values
    }

    /// `(name, value)` pairs in variable order.
    pub fn named(&self) -> Vec<(String, GaussRational)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|x| (Var::from_index(i).name(), x.clone())))
            .collect()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_gauss(GaussRational::from_int(v))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_gauss(GaussRational::from_ratio(num, den))
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gauss(GaussRational::i())
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn monomial(v: Var, e: i16) -> Self {
        Self::from_poly(Poly::term(Monomial::var(v, e), GaussRational::one()))
    }

    /// Interns `name` and returns it as an indeterminate.
    pub fn param(name: &str) -> Result<Self> {
        Ok(Self::var(Var::named(name)?))
    }

    /// `λ = q − q⁻¹`.
    pub fn lambda() -> Self {
        Self::q().sub_ref(&Self::monomial(Var::Q, -1))
    }

    /// The q-number `(q^k − q^{−k})/(q − q^{−1}) = Σ_{j=0}^{k−1} q^{k−1−2j}`.
    pub fn q_number(k: u32) -> Self {
        let k = k as i16;
        Self::from_poly(Poly::from_terms(
            (0..k).map(|j| (Monomial::var(Var::Q, k - 1 - 2 * j), GaussRational::one())),
        ))
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn ratio(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = den.min_exponents();
        let (mut num, mut den) = if shift.is_one() {
            (num, den)
        } else {
            (num.div_mono(&shift), den.div_mono(&shift))
        };
        if let Some(c) = den.constant_value() {
            let inv = c.inv().ok_or(Error::DivisionByZero)?;
            return Ok(Self {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let nshift = num.min_exponents();
        let npoly = num.div_mono(&nshift);
        let g = gcd(&npoly, &den);
        if !g.is_one() {
            num = npoly.div_exact(&g).expect("gcd divides").mul_mono(&nshift);
            den = den.div_exact(&g).expect("gcd divides");
        }
        let lc = den.lead().expect("nonzero").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the denominator is 1 (the value is a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<GaussRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Bitmask of variables occurring in the value.
    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self {
                num: self.num.add(&o.num),
                den: Poly::one(),
            };
        }
        if self.den == o.den {
            return Self::ratio(self.num.add(&o.num), self.den.clone())
                .expect("nonzero denominator");
        }
        let g = gcd(&self.den, &o.den);
        let a_cof = o.den.div_exact(&g).expect("gcd divides");
        let b_cof = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a_cof).add(&o.num.mul(&b_cof));
        Self::ratio(num, self.den.mul(&a_cof)).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        if let Some(c) = o.constant_value() {
            return Self {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        if let Some(c) = self.constant_value() {
            return Self {
                num: o.num.scale(&c),
                den: o.den.clone(),
            };
        }
        Self::ratio(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::ratio(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = o.constant_value() {
            let inv = c.inv().ok_or(Error::DivisionByZero)?;
            return Ok(Self {
                num: self.num.scale(&inv),
                den: self.den.clone(),
            });
        }
        Self::ratio(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Self {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    /// Exact evaluation; a vanishing denominator is reported as a bad point.
    pub fn evaluate(&self, point: &Point) -> Result<GaussRational> {
        let d = self.den.eval(point.values())?;
        if d.is_zero() {
            return Err(Error::BadPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        let n = self.num.eval(point.values())?;
        Ok(&n * &d.inv().expect("nonzero"))
    }

    /// Substitutes a constant for one indeterminate.
    pub fn specialize(&self, v: Var, value: &GaussRational) -> Result<Self> {
        let den = self.den.substitute(v, value)?;
        if den.is_zero() {
            return Err(Error::BadPoint(format!(
                "denominator {} vanishes at {v} = {value}",
                self.den
            )));
        }
        Self::ratio(self.num.substitute(v, value)?, den)
    }

    /// Replaces `v` by `c·v`.
    pub fn rescale_var(&self, v: Var, c: &GaussRational) -> Result<Self> {
        Self::ratio(self.num.rescale_var(v, c)?, self.den.rescale_var(v, c)?)
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl Field for Scalar {
    fn inv_ref(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn div_ref(&self, o: &Self) -> Option<Self> {
        self.div(o).ok()
    }
    fn weight(&self) -> usize {
        if self.den.is_one() {
            self.num.len()
        } else {
            self.num.len() + 4 * self.den.len()
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<GaussRational> for Scalar {
    fn from(v: GaussRational) -> Self {
        Scalar::from_gauss(v)
    }
}

impl fmt::Display for Scalar {
    /// Output re-parses under the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.len() == 1 {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}
