//! Exact rational scalars.
//!
//! All scalar quantities in the crate (objective values, weights, factors)
//! are `BigRational`s: arbitrary precision, always reduced, denominator
//! always positive, canonical zero `0/1`.

use num_bigint::BigInt;

pub use num_rational::BigRational as Rational;

/// `n / d` as an exact rational in canonical form. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    #[test]
    fn canonical_zero_is_zero_over_one() {
        let z = rat(0, -7);
        assert!(z.numer().is_zero());
        assert!(z.denom().is_one());
    }

    proptest! {
        #[test]
        fn construction_is_canonical(n in -1000i64..1000, d in prop_oneof![-1000i64..-1, 1i64..1000]) {
            let r = rat(n, d);
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one() || r.numer().is_zero());
            if r.numer().is_zero() {
                prop_assert!(r.denom().is_one());
            }
        }

        #[test]
        fn arithmetic_stays_canonical(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let r = rat(a, b) + rat(c, d) * rat(a, d) - rat(c, b);
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one() || (r.numer().is_zero() && r.denom().is_one()));
        }
    }
}
