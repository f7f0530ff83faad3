use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Field-like scalar the linear algebra and root data are generic over.
///
/// Exactness is a property of the instantiation: [`crate::Rational`] gives
/// exact results, `f64` gives rounded ones. Equality tests on `f64` values in
/// this crate are exact comparisons and will not be meaningful after rounding.
pub trait Scalar: Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display {
    /// Lifts a small integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("small integers are representable")
    }
}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn lifts_integers() {
        assert_eq!(Rational::from_int(-3), crate::int(-3));
        assert_eq!(f64::from_int(7), 7.0);
    }
}
