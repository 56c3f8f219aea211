//! Squarefree parts of integers, used for square classes of the rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::modp::is_prime;

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Squarefree part of a positive integer.
///
/// Trial division by every d <= 10^6; the remaining cofactor c has no prime
/// factor below 10^6. If c is a perfect square it is dropped; if c < 10^18 it
/// is a product of at most two large primes and hence squarefree unless a
/// square; a 64-bit prime is kept. Anything else is rejected.
pub fn squarefree_part(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if let Some(v) = n.to_u128() {
        return squarefree_u128(v).map(BigUint::from);
    }
    let mut rest = n.clone();
    let mut kept = BigUint::one();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e % 2 == 1 {
            kept *= &dd;
        }
        d += 1;
    }
    Ok(kept * resolve_cofactor_big(rest, n)?)
}

fn squarefree_u128(mut rest: u128) -> Result<u128> {
    let mut kept = 1u128;
    let mut d = 2u128;
    while d <= TRIAL_LIMIT as u128 && d * d <= rest {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e % 2 == 1 {
            kept *= d;
        }
        d += 1;
    }
    if rest == 1 {
        return Ok(kept);
    }
    let r = rest.sqrt();
    if r * r == rest {
        return Ok(kept);
    }
    let limit = TRIAL_LIMIT as u128;
    if rest < limit * limit * limit || rest.to_u64().is_some_and(is_prime) {
        // fewer than three prime factors above the trial bound, and not a square
        return Ok(kept * rest);
    }
    Err(Error::SquarefreeUnresolved(rest.to_string()))
}

fn resolve_cofactor_big(rest: BigUint, original: &BigUint) -> Result<BigUint> {
    if rest.is_one() {
        return Ok(rest);
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return Ok(BigUint::one());
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if rest < &limit * &limit * &limit {
        return Ok(rest);
    }
    Err(Error::SquarefreeUnresolved(original.to_string()))
}

/// Signed squarefree representative of the class of num/den in Q^x / (Q^x)^2.
pub fn rational_class(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if num.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prod = num.magnitude() * den.magnitude();
    let sf = squarefree_part(&prod)?;
    let sign = if (num.sign() == Sign::Minus) ^ (den.sign() == Sign::Minus) {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Ok(BigInt::from_biguint(sign, sf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_squarefree_parts() {
        let cases = [(1u64, 1u64), (4, 1), (12, 3), (18, 2), (30, 30), (72, 2), (49 * 5, 5)];
        for (n, sf) in cases {
            assert_eq!(squarefree_part(&BigUint::from(n)).unwrap(), BigUint::from(sf));
        }
    }

    #[test]
    fn large_prime_square_cofactor() {
        let p = 1_000_003u128;
        let n = BigUint::from(p * p * 6);
        assert_eq!(squarefree_part(&n).unwrap(), BigUint::from(6u32));
        let q = 1_000_033u128;
        assert_eq!(squarefree_part(&BigUint::from(p * q)).unwrap(), BigUint::from(p * q));
    }

    #[test]
    fn hidden_square_rejected() {
        // p^2 * q with p, q > 10^6 and the product beyond 10^18: cannot be decided
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_000_007u64);
        let n = &p * &p * &q * &q * BigUint::from(1_000_000_009u64);
        assert!(matches!(squarefree_part(&n), Err(Error::SquarefreeUnresolved(_))));
    }

    #[test]
    fn signed_class() {
        let c = rational_class(&BigInt::from(-8), &BigInt::from(3)).unwrap();
        assert_eq!(c, BigInt::from(-6));
        let c = rational_class(&BigInt::from(4), &BigInt::from(9)).unwrap();
        assert_eq!(c, BigInt::from(1));
    }
}
