//! Exact fields: GF(p), GF(p^n) and the rationals.
//!
//! A [`Field`] is an immutable, cheaply clonable context; elements are plain
//! values in canonical form, so structural equality is field equality.

pub mod modp;
pub mod rational;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use modp::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};

pub use modp::find_irreducible;

/// Description of a field, as accepted by [`Field::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    /// GF(p^n); `modulus` is the monic defining polynomial, lowest degree
    /// first. `None` selects [`find_irreducible`]`(p, n)`.
    Extension {
        p: u64,
        n: usize,
        modulus: Option<Vec<u64>>,
    },
    Rationals,
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Fp(u64),
    /// Coefficients of a polynomial of degree < n, lowest first, always length n.
    Ext(Vec<u64>),
    Q(BigRational),
}

/// Image of a nonzero element in k^x / (k^x)^2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Finite { square: bool },
    /// Signed squarefree integer representative.
    Rational(BigInt),
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        match self {
            SquareClass::Finite { square } => *square,
            SquareClass::Rational(r) => r.is_one(),
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        match (self, other) {
            (SquareClass::Finite { square: a }, SquareClass::Finite { square: b }) => {
                SquareClass::Finite { square: a == b }
            }
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                let g = BigInt::from(num_integer::Integer::gcd(a.magnitude(), b.magnitude()));
                SquareClass::Rational((a / &g) * (b / &g))
            }
            _ => panic!("square classes from different fields"),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Finite { square: true } => write!(f, "1"),
            SquareClass::Finite { square: false } => write!(f, "nonsquare"),
            SquareClass::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Prime { p: u64 },
    Ext { p: u64, modulus: Vec<u64> },
    Rationals,
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    spec: FieldSpec,
}

/// Shared handle to an exact field.
#[derive(Debug, Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let kind = match &spec {
            FieldSpec::Prime(p) => {
                check_prime(*p)?;
                Kind::Prime { p: *p }
            }
            FieldSpec::Extension { p, n, modulus } => {
                check_prime(*p)?;
                if *n < 2 {
                    return Err(Error::DegreeMismatch { expected: 2, found: *n });
                }
                let modulus = match modulus {
                    Some(m) => {
                        let m: Vec<u64> = m.clone();
                        if m.len() != n + 1 || m[*n] != 1 {
                            return Err(Error::DegreeMismatch {
                                expected: *n,
                                found: modp::trim(m.clone()).len().saturating_sub(1),
                            });
                        }
                        if m.iter().any(|&c| c >= *p) {
                            return Err(Error::Parse(format!(
                                "modulus coefficient out of range for p={p}"
                            )));
                        }
                        if !modp::is_irreducible(&m, *p) {
                            return Err(Error::ReducibleModulus { p: *p });
                        }
                        m
                    }
                    None => find_irreducible(*p, *n)?,
                };
                Kind::Ext { p: *p, modulus }
            }
            FieldSpec::Rationals => Kind::Rationals,
        };
        Ok(Field(Arc::new(Inner { kind, spec })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldSpec::Prime(p))
    }

    pub fn extension(p: u64, n: usize) -> Result<Field> {
        Field::new(FieldSpec::Extension { p, n, modulus: None })
    }

    pub fn rationals() -> Field {
        Field::new(FieldSpec::Rationals).expect("rationals always construct")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Prime { p } | Kind::Ext { p, .. } => *p,
            Kind::Rationals => 0,
        }
    }

    /// `None` when infinite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match &self.0.kind {
            Kind::Prime { p } => Some(BigUint::from(*p)),
            Kind::Ext { p, modulus } => Some(BigUint::from(*p).pow((modulus.len() - 1) as u32)),
            Kind::Rationals => None,
        }
    }

    /// Extension degree over the prime field (1 for GF(p) and the rationals).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            Kind::Ext { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &self.0.kind {
            Kind::Ext { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &self.0.kind {
            Kind::Prime { p } => Elem::Fp(reduce_i128(v as i128, *p)),
            Kind::Ext { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = reduce_i128(v as i128, *p);
                Elem::Ext(c)
            }
            Kind::Rationals => Elem::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fp(v) => *v == 0,
            Elem::Ext(c) => c.iter().all(|&x| x == 0),
            Elem::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fp(v) => *v == 1,
            Elem::Ext(c) => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
            Elem::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(add_mod(*x, *y, *p)),
            (Kind::Ext { p, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(&u, &v)| add_mod(u, v, *p)).collect())
            }
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            _ => foreign(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(sub_mod(*x, *y, *p)),
            (Kind::Ext { p, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(&u, &v)| sub_mod(u, v, *p)).collect())
            }
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x - y),
            _ => foreign(),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Prime { p }, Elem::Fp(x)) => Elem::Fp(sub_mod(0, *x, *p)),
            (Kind::Ext { p, .. }, Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|&u| sub_mod(0, u, *p)).collect())
            }
            (Kind::Rationals, Elem::Q(x)) => Elem::Q(-x),
            _ => foreign(),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(mul_mod(*x, *y, *p)),
            (Kind::Ext { p, modulus }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(ext_mul(x, y, modulus, *p))
            }
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            _ => foreign(),
        }
    }

    /// a + b·c
    pub fn add_mul(&self, a: &Elem, b: &Elem, c: &Elem) -> Elem {
        match (&self.0.kind, a, b, c) {
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y), Elem::Fp(z)) => {
                Elem::Fp(add_mod(*x, mul_mod(*y, *z, *p), *p))
            }
            (Kind::Rationals, Elem::Q(x), Elem::Q(y), Elem::Q(z)) => {
                if y.is_zero() || z.is_zero() {
                    return a.clone();
                }
                if x.is_zero() {
                    return Elem::Q(y * z);
                }
                // one reduction instead of one per operation
                let yz_den = y.denom() * z.denom();
                let num = x.numer() * &yz_den + y.numer() * z.numer() * x.denom();
                Elem::Q(BigRational::new(num, x.denom() * yz_den))
            }
            _ => self.add(a, &self.mul(b, c)),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.0.kind, a) {
            (Kind::Prime { p }, Elem::Fp(x)) => Elem::Fp(inv_mod(*x, *p)),
            (Kind::Ext { p, modulus }, Elem::Ext(x)) => {
                let inv = modp::poly_invmod(&modp::trim(x.clone()), modulus, *p)
                    .expect("nonzero element of a field is invertible");
                Elem::Ext(pad(inv, modulus.len() - 1))
            }
            (Kind::Rationals, Elem::Q(x)) => Elem::Q(x.recip()),
            _ => foreign(),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^e for a non-negative exponent given in binary.
    pub fn pow(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &Elem, e: u64) -> Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// Square class of a nonzero element.
    pub fn square_class(&self, a: &Elem) -> Result<SquareClass> {
        if self.is_zero(a) {
            return Err(Error::ZeroArgument);
        }
        match (&self.0.kind, a) {
            (Kind::Prime { p: 2 }, _) | (Kind::Ext { p: 2, .. }, _) => {
                Ok(SquareClass::Finite { square: true })
            }
            (Kind::Prime { p }, Elem::Fp(x)) => Ok(SquareClass::Finite {
                square: pow_mod(*x, (p - 1) / 2, *p) == 1,
            }),
            (Kind::Ext { .. }, _) => {
                let q = self.cardinality().expect("finite");
                let e = (q - 1u32) / 2u32;
                Ok(SquareClass::Finite { square: self.is_one(&self.pow(a, &e)) })
            }
            (Kind::Rationals, Elem::Q(x)) => Ok(SquareClass::Rational(rational::rational_class(
                x.numer(),
                x.denom(),
            )?)),
            _ => foreign(),
        }
    }

    pub fn is_square(&self, a: &Elem) -> Result<bool> {
        Ok(self.square_class(a)?.is_trivial())
    }

    /// Class of 1 in k^x / (k^x)^2.
    pub fn trivial_class(&self) -> SquareClass {
        match &self.0.kind {
            Kind::Rationals => SquareClass::Rational(BigInt::one()),
            _ => SquareClass::Finite { square: true },
        }
    }

    /// Re-derives the canonical form of an element; a no-op on valid elements.
    pub fn canonicalize(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Prime { p }, Elem::Fp(x)) => Elem::Fp(x % p),
            (Kind::Ext { p, modulus }, Elem::Ext(x)) => {
                let r = modp::poly_rem(&x.iter().map(|v| v % p).collect::<Vec<_>>(), modulus, *p);
                Elem::Ext(pad(r, modulus.len() - 1))
            }
            (Kind::Rationals, Elem::Q(x)) => {
                Elem::Q(BigRational::new(x.numer().clone(), x.denom().clone()))
            }
            _ => foreign(),
        }
    }

    /// Uniform nonzero element for finite fields; small nonzero fractions
    /// (|numerator| <= 9, denominator <= 9) for the rationals.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            Kind::Prime { p } => Elem::Fp(rng.gen_range(1..*p)),
            Kind::Ext { p, modulus } => loop {
                let c: Vec<u64> = (0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect();
                if c.iter().any(|&v| v != 0) {
                    return Elem::Ext(c);
                }
            },
            Kind::Rationals => {
                let mut num: i64 = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    num = -num;
                }
                let den: i64 = rng.gen_range(1..=9);
                Elem::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Every element of a finite field, in a fixed order (`None` for the rationals
    /// or fields with more than `limit` elements).
    pub fn elements(&self, limit: u64) -> Option<Vec<Elem>> {
        let q = self.cardinality()?.to_u64()?;
        if q > limit {
            return None;
        }
        match &self.0.kind {
            Kind::Prime { p } => Some((0..*p).map(Elem::Fp).collect()),
            Kind::Ext { p, modulus } => {
                let n = modulus.len() - 1;
                Some(
                    (0..q)
                        .map(|mut k| {
                            let mut c = vec![0; n];
                            for ci in c.iter_mut() {
                                *ci = k % p;
                                k /= p;
                            }
                            Elem::Ext(c)
                        })
                        .collect(),
                )
            }
            Kind::Rationals => None,
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid element '{s}' for {self}"));
        match &self.0.kind {
            Kind::Prime { p } => {
                let v: i128 = s.parse().map_err(|_| bad())?;
                Ok(Elem::Fp(reduce_i128(v, *p)))
            }
            Kind::Ext { p, modulus } => {
                let n = modulus.len() - 1;
                if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    let coeffs: Vec<u64> = inner
                        .split(',')
                        .map(|t| t.trim().parse::<i128>().map(|v| reduce_i128(v, *p)))
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad())?;
                    if coeffs.len() != n {
                        return Err(bad());
                    }
                    Ok(Elem::Ext(coeffs))
                } else {
                    let v: i128 = s.parse().map_err(|_| bad())?;
                    let mut c = vec![0; n];
                    c[0] = reduce_i128(v, *p);
                    Ok(Elem::Ext(c))
                }
            }
            Kind::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::Q(BigRational::new(num, den)))
            }
        }
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Fp(v) => v.to_string(),
            Elem::Ext(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            Elem::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// The element of the rationals as a fraction, if this is Q.
    pub fn as_rational<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_negative_rational(&self, a: &Elem) -> bool {
        matches!(a, Elem::Q(q) if q.is_negative())
    }
}

fn foreign() -> ! {
    panic!("element does not belong to this field")
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 63 || !modp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn pad(mut v: Vec<u64>, n: usize) -> Vec<u64> {
    v.resize(n, 0);
    v
}

fn ext_mul(x: &[u64], y: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let pp = p as u128;
    let mut prod = vec![0u128; 2 * n - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a as u128 * b as u128) % pp;
        }
    }
    // x^n = -(m_0 + ... + m_{n-1} x^{n-1}) for the monic modulus
    for k in (n..2 * n - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (t, &m) in modulus[..n].iter().enumerate() {
            let idx = k - n + t;
            prod[idx] = (prod[idx] + pp - (c * m as u128) % pp) % pp;
        }
    }
    prod[..n].iter().map(|&v| v as u64).collect()
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
            FieldSpec::Extension { p, n, modulus: None } => write!(f, "gf({p}^{n})"),
            FieldSpec::Extension { p, n, modulus: Some(m) } => {
                let parts: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                write!(f, "gf({p}^{n};{})", parts.join(","))
            }
            FieldSpec::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// "gf(p)", "gf(p^n)", "gf(p^n;c0,...,1)" or "q".
    fn from_str(s: &str) -> Result<FieldSpec> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("invalid field spec '{s}'"));
        if t == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (size, modulus) = match inner.split_once(';') {
            Some((a, b)) => {
                let m: Vec<u64> = b
                    .split(',')
                    .map(|c| c.trim().parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad())?;
                (a, Some(m))
            }
            None => (inner, None),
        };
        match size.split_once('^') {
            Some((p, n)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let n: usize = n.trim().parse().map_err(|_| bad())?;
                if n == 1 && modulus.is_none() {
                    return Ok(FieldSpec::Prime(p));
                }
                Ok(FieldSpec::Extension { p, n, modulus })
            }
            None => {
                if modulus.is_some() {
                    return Err(bad());
                }
                Ok(FieldSpec::Prime(size.trim().parse().map_err(|_| bad())?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Elem {
        Elem::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn create_fields() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.characteristic(), 7);
        assert_eq!(f.cardinality(), Some(BigUint::from(7u32)));

        let spec = FieldSpec::Extension { p: 7, n: 2, modulus: Some(vec![1, 0, 1]) };
        let f = Field::new(spec).unwrap();
        assert_eq!(f.cardinality(), Some(BigUint::from(49u32)));

        let spec = FieldSpec::Extension { p: 7, n: 2, modulus: Some(vec![5, 0, 1]) };
        assert_eq!(Field::new(spec).unwrap_err(), Error::ReducibleModulus { p: 7 });

        let spec = FieldSpec::Extension { p: 7, n: 3, modulus: Some(vec![1, 0, 1]) };
        assert!(matches!(Field::new(spec), Err(Error::DegreeMismatch { .. })));
        assert_eq!(Field::prime(9).unwrap_err(), Error::NotPrime(9));
        assert!(Field::rationals().cardinality().is_none());
    }

    #[test]
    fn arithmetic_examples() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.mul(&Elem::Fp(3), &Elem::Fp(5)), Elem::Fp(1));
        assert_eq!(f.inv(&Elem::Fp(0)), Err(Error::DivisionByZero));

        let e = Field::extension(7, 2).unwrap();
        assert_eq!(e.modulus().unwrap(), &[1, 0, 1]);
        let x = Elem::Ext(vec![0, 1]);
        assert_eq!(e.mul(&x, &x), Elem::Ext(vec![6, 0]));

        let r = Field::rationals();
        assert_eq!(r.add(&q(1, 3), &q(1, 6)), q(1, 2));
        assert_eq!(r.div(&q(1, 3), &q(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn square_classes() {
        let f = Field::prime(7).unwrap();
        let squares: Vec<u64> = (1..7).filter(|&a| (1..7).any(|b| b * b % 7 == a)).collect();
        assert_eq!(squares, vec![1, 2, 4]);
        for a in 1..7 {
            assert_eq!(f.is_square(&Elem::Fp(a)).unwrap(), squares.contains(&a));
        }
        assert_eq!(f.square_class(&Elem::Fp(0)), Err(Error::ZeroArgument));
        assert!(Field::rationals().is_square(&q(4, 9)).unwrap());
        assert!(!Field::rationals().is_square(&q(-4, 9)).unwrap());
        let f8 = Field::extension(2, 3).unwrap();
        for a in f8.elements(100).unwrap().iter().filter(|a| !f8.is_zero(a)) {
            assert!(f8.is_square(a).unwrap());
        }
    }

    #[test]
    fn extension_squares_match_enumeration() {
        let f = Field::extension(3, 2).unwrap();
        let elems = f.elements(100).unwrap();
        let squares: Vec<Elem> = elems.iter().map(|a| f.mul(a, a)).collect();
        for a in elems.iter().filter(|a| !f.is_zero(a)) {
            assert_eq!(f.is_square(a).unwrap(), squares.contains(a));
        }
    }

    #[test]
    fn class_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fields = [
            Field::prime(7).unwrap(),
            Field::prime(101).unwrap(),
            Field::extension(7, 2).unwrap(),
            Field::extension(5, 3).unwrap(),
            Field::extension(2, 4).unwrap(),
            Field::rationals(),
        ];
        for f in &fields {
            for _ in 0..500 {
                let a = f.random_nonzero(&mut rng);
                let b = f.random_nonzero(&mut rng);
                let ca = f.square_class(&a).unwrap();
                let cb = f.square_class(&b).unwrap();
                assert_eq!(ca.mul(&cb), f.square_class(&f.mul(&a, &b)).unwrap(), "{f}");
                assert!(f.square_class(&f.mul(&a, &a)).unwrap().is_trivial());
                assert_eq!(f.canonicalize(&a), a);
            }
        }
    }

    #[test]
    fn multiplicative_order_divides_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [Field::extension(7, 3).unwrap(), Field::extension(2, 5).unwrap()] {
            let q = f.cardinality().unwrap();
            for _ in 0..50 {
                let a = f.random_nonzero(&mut rng);
                assert!(f.is_one(&f.pow(&a, &(&q - 1u32))));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["gf(7)", "gf(7^2)", "gf(7^2;1,0,1)", "q"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("gf(x)".parse::<FieldSpec>().is_err());
        let e = Field::extension(7, 3).unwrap();
        let a = e.parse_elem("[1,2,3]").unwrap();
        assert_eq!(e.format_elem(&a), "[1,2,3]");
        assert!(e.parse_elem("[1,2]").is_err());
        let r = Field::rationals();
        assert_eq!(r.format_elem(&r.parse_elem("6/-4").unwrap()), "-3/2");
        assert_eq!(Field::prime(5).unwrap().parse_elem("-1").unwrap(), Elem::Fp(4));
    }
}
