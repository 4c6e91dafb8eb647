//! Minimal algebraic traits shared by the exact coefficient types.

use std::fmt::Debug;

/// A (not necessarily commutative) ring with exact equality.
///
/// Multiplication `a.mul_ref(b)` always means `a * b` in that order; the
/// noncommutative polynomial type relies on it.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A commutative field.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv_ref(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv_ref().map(|i| self.mul_ref(&i))
    }

    /// Rough size of the representation, used to prefer cheap pivots.
    fn weight(&self) -> usize {
        1
    }
}

impl Ring for num_rational::BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
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

impl Field for num_rational::BigRational {
    fn inv_ref(&self) -> Option<Self> {
        (!Ring::is_zero(self)).then(|| num_traits::Inv::inv(self))
    }
}
