//! Exact scalar arithmetic over the Gaussian rationals Q(i).
//!
//! Every scalar is a pair of reduced [`BigRational`]s (real and imaginary
//! part), so equality is decidable and every arithmetic operation is exact.
//! The canonical text form of a real scalar is `p/q` with the sign on the
//! numerator and the fraction fully reduced (`q` omitted when it is 1);
//! non-real scalars render as `re+im*i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A Gaussian rational `re + im*i` with both parts kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// The real rational `p/q`. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar { re: &self.re / &norm, im: -&self.im / &norm })
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -&self.im }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}*i", self.re, self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

// Debug output is the canonical display form; raw numerator/denominator
// pairs add nothing in test failure messages.
impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Serialized form: the canonical rational literal for real values, or a
// {"re", "im"} map of rational literals for Gaussian ones.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.im.is_zero() {
            s.collect_str(self)
        } else {
            use serde::ser::SerializeStruct;
            let mut st = s.serialize_struct("Scalar", 2)?;
            st.serialize_field("re", &self.re.to_string())?;
            st.serialize_field("im", &self.im.to_string())?;
            st.end()
        }
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl<'de> serde::de::Visitor<'de> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational literal \"p/q\" or a {\"re\", \"im\"} map")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(self, mut map: A) -> Result<Scalar, A::Error> {
                use serde::de::Error;
                let mut re: Option<String> = None;
                let mut im: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "re" => re = Some(map.next_value()?),
                        "im" => im = Some(map.next_value()?),
                        other => return Err(A::Error::unknown_field(other, &["re", "im"])),
                    }
                }
                let part = |text: Option<String>| -> Result<Scalar, A::Error> {
                    match text {
                        Some(t) => t.parse().map_err(A::Error::custom),
                        None => Ok(Scalar::zero()),
                    }
                };
                Ok(Scalar::new(part(re)?.re, part(im)?.re))
            }
        }

        d.deserialize_any(ScalarVisitor)
    }
}

/// Error produced when a scalar literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?} (expected `p` or `p/q` with integer p, q and q != 0)")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses the canonical rational form: an optionally signed integer, or
    /// `p/q` with integer numerator and nonzero integer denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseScalarError(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str.parse().map_err(|_| bad())?;
        let den: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar { re: BigRational::new(num, den), im: BigRational::zero() })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}
forward_binop!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}
forward_binop!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv().expect("scalar division by zero")
    }
}
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display_reduces_and_signs_numerator() {
        assert_eq!(Scalar::rational(2, 4).to_string(), "1/2");
        assert_eq!(Scalar::rational(1, -2).to_string(), "-1/2");
        assert_eq!(Scalar::rational(-6, -3).to_string(), "2");
        assert_eq!(Scalar::from_int(0).to_string(), "0");
    }

    #[test]
    fn parse_round_trips_canonical_forms() {
        for text in ["0", "7", "-3", "1/2", "-5/8", "22/7"] {
            let s: Scalar = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        // Non-canonical input parses to the reduced form.
        assert_eq!("4/6".parse::<Scalar>().unwrap(), Scalar::rational(2, 3));
        assert_eq!(" -2/-4 ".parse::<Scalar>().unwrap(), Scalar::rational(1, 2));
    }

    #[test]
    fn parse_rejects_junk() {
        for text in ["", "1/0", "a", "1/2/3", "1.5", "1/ ", "/2"] {
            assert!(text.parse::<Scalar>().is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn complex_arithmetic_is_exact() {
        let z = Scalar::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        // (re + im*i) * conj = |z|^2 (real).
        let norm = &z * z.conj();
        assert!(norm.is_real());
        assert_eq!(norm, Scalar::rational(13, 16));
        // z * z^{-1} = 1 exactly.
        assert_eq!(&z * z.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::zero().inv(), None);
        // i^2 = -1.
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn display_of_complex_values() {
        assert_eq!(Scalar::i().to_string(), "1*i");
        let z = &Scalar::rational(1, 2) - &(&Scalar::i() * &Scalar::rational(3, 4));
        assert_eq!(z.to_string(), "1/2-3/4*i");
        let w = &Scalar::from_int(2) + &Scalar::i();
        assert_eq!(w.to_string(), "2+1*i");
    }
}
