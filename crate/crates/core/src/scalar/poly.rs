//! Sparse multivariate Laurent polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use super::gauss::GaussRational;
use super::var::{Var, MAX_VARS};
use crate::error::{Error, Result};

/// Exponent vector indexed by [`Var`]; zero entries mean "absent".
///
/// The derived `Ord` is lexicographic with `q` most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial([i16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var, e: i16) -> Self {
        let mut m = Self::default();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> i16 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: i16) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    pub fn div(&self, o: &Self) -> Self {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        r
    }

    /// Elementwise minimum.
    pub fn meet(&self, o: &Self) -> Self {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    /// True when every exponent of `self` is ≤ the matching one of `o`.
    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Bitmask of variables with a nonzero exponent.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, i16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Var::from_index(i), e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.exponents() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Terms are kept strictly descending by monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, GaussRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: GaussRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), GaussRational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRational)>) -> Self {
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_default();
            *e = &*e + &c;
        }
        Self {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, GaussRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// True for zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<GaussRational> {
        match self.terms.as_slice() {
            [] => Some(GaussRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<&(Monomial, GaussRational)> {
        self.terms.first()
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |m, (mono, _)| m | mono.support())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    /// Elementwise minimum of all exponent vectors (the largest monomial factor).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn degree_in(&self, v: Var) -> i16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn div_mono(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.div(m), c.clone()))
                .collect(),
        }
    }

    fn merge(&self, o: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*mb, if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            out.push((*m, if negate_other { -c } else { c.clone() }));
        }
        Self { terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return Self {
                terms: self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return o.mul(self);
        }
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = acc.entry(ma.mul(mb)).or_default();
                *e = &*e + &(ca * cb);
            }
        }
        Self {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    ///
    /// Both operands must be ordinary polynomials (no negative exponents).
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.lead()?;
        if d.terms.len() == 1 {
            let inv = dc.inv()?;
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                out.push((m.div(dm), c * &inv));
            }
            return Some(Self { terms: out });
        }
        let inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.lead().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let t = (rm.div(dm), &rc * &inv);
            rem = rem.sub(&d.mul(&Self::term(t.0, t.1.clone())));
            quot.push(t);
        }
        Some(Self { terms: quot })
    }

    /// Coefficients with respect to `v`: exponent of `v` ↦ polynomial free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i16, Poly> {
        let mut parts: BTreeMap<i16, Vec<(Monomial, GaussRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.exp(v))
                .or_default()
                .push((m.with_exp(v, 0), c.clone()));
        }
        parts
            .into_iter()
            .map(|(e, t)| (e, Poly { terms: t }))
            .collect()
    }

    /// Coefficient of the highest power of `v`, as a polynomial free of `v`.
    pub fn top_coeff_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == d)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a point given per variable; missing variables are an error.
    pub fn eval(&self, point: &[Option<GaussRational>]) -> Result<GaussRational> {
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exponents() {
                let val = point
                    .get(v.index())
                    .and_then(|x| x.as_ref())
                    .ok_or_else(|| Error::BadPoint(format!("no value assigned to {v}")))?;
                let p = val
                    .pow(e as i32)
                    .ok_or_else(|| Error::BadPoint(format!("{v} = 0 under a negative power")))?;
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes a constant for `v`.
    pub fn substitute(&self, v: Var, val: &GaussRational) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let f = if e == 0 {
                c.clone()
            } else {
                let p = val
                    .pow(e as i32)
                    .ok_or_else(|| Error::BadPoint(format!("{v} = 0 under a negative power")))?;
                c * &p
            };
            terms.push((m.with_exp(v, 0), f));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Replaces `v` by `c·v`.
    pub fn rescale_var(&self, v: Var, c: &GaussRational) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, x) in &self.terms {
            let p = c.pow(m.exp(v) as i32).ok_or(Error::DivisionByZero)?;
            terms.push((*m, x * &p));
        }
        Ok(Poly::from_terms(terms))
    }
}

fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &GaussRational,
    m: &Monomial,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative_real();
    let abs = if neg { -c } else { c.clone() };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let complex = !abs.is_real() && !num_traits::Zero::is_zero(abs.re());
    if m.is_one() {
        if complex {
            write!(f, "({abs})")
        } else {
            write!(f, "{abs}")
        }
    } else if abs.is_one() {
        write!(f, "{m}")
    } else if complex {
        write!(f, "({abs})*{m}")
    } else {
        write!(f, "{abs}*{m}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, c, m, k == 0)?;
        }
        Ok(())
    }
}
