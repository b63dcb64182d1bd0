//! Gaussian rationals: exact complex numbers `a + b*i` with `a, b` in Q.
//!
//! Text form: `p`, `p/q`, `r/s*i`, `p/q+r/s*i`, `p/q-r/s*i`, with optional
//! leading signs. A bare `i` (or `-i`, `+i`) is the imaginary unit.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn complex(re: i64, im: i64) -> Self {
        Scalar::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
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

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Scalar::new(&self.re * k, &self.im * k)
    }

    /// An exact square root in Q(i), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let half_re = (&modulus + &self.re) / &two;
        let x = rational_sqrt(&half_re)?;
        let root = if x.is_zero() {
            // self is a non-positive real
            Scalar::new(BigRational::zero(), rational_sqrt(&(-&self.re))?)
        } else {
            let y = &self.im / (&two * &x);
            Scalar::new(x, y)
        };
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The witness-search grid `{0, ±1, ±i, ±1/2, ±2}`.
    pub fn search_grid() -> Vec<Scalar> {
        vec![
            Scalar::zero(),
            Scalar::from(1),
            Scalar::from(-1),
            Scalar::i(),
            -Scalar::i(),
            Scalar::ratio(1, 2),
            Scalar::ratio(-1, 2),
            Scalar::from(2),
            Scalar::from(-2),
        ]
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::new(BigRational::from_integer(v.into()), BigRational::zero())
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

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

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if (-q).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_rational(&self.re)),
            (true, false) => f.write_str(&imag(&self.im)),
            (false, false) => {
                let im = imag(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational> {
    let err = |reason| Error::ScalarParse {
        input: whole.to_string(),
        reason,
    };
    let digits_ok = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !digits_ok(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(err("malformed rational"));
    }
    let num: BigInt = num.parse().map_err(|_| err("malformed numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("malformed denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let err = |reason| Error::ScalarParse {
            input: s.to_string(),
            reason,
        };
        if s.is_empty() {
            return Err(err("empty string"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from(parse_rational(s, s)?));
        };
        // split between the real and imaginary parts at the last interior sign
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part, s)?
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => {
                let t = t
                    .strip_suffix('*')
                    .ok_or_else(|| err("imaginary coefficient must be written as r/s*i"))?;
                parse_rational(t, s)?
            }
        };
        Ok(Scalar::new(re, im))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn norm_identity() {
        assert_eq!(s("1/2+i") * s("1/2-i"), s("5/4"));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(Scalar::i().inv().unwrap(), s("-i"));
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_addition() {
        assert_eq!(s("2/3") + s("1/6"), s("5/6"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("+i"), Scalar::i());
        assert_eq!(s("3/4*i"), Scalar::new(BigRational::zero(), BigRational::new(3.into(), 4.into())));
        assert_eq!(s("-1/2-3/4*i"), Scalar::ratio(-1, 2) - s("3/4*i"));
        assert_eq!(s("1+i"), Scalar::complex(1, 1));
        assert_eq!(s("+2/4"), Scalar::ratio(1, 2));
        assert_eq!(s("-3"), Scalar::from(-3));
        assert_eq!(s("2-2*i"), Scalar::complex(2, -2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "x", "1/", "/2", "1.5", "2i", "1+", "--1", "i*2", "1/-2"] {
            assert!(bad.parse::<Scalar>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(s("2/4").to_string(), "1/2");
        assert_eq!(s("0*i").to_string(), "0");
        assert_eq!(s("-1*i").to_string(), "-i");
        assert_eq!(s("1/2-1/3*i").to_string(), "1/2-1/3*i");
        assert_eq!(s("5+i").to_string(), "5+i");
        assert_eq!(s("-7/2*i").to_string(), "-7/2*i");
    }

    #[test]
    fn square_roots() {
        assert_eq!(s("-4").sqrt(), Some(s("2*i")));
        assert_eq!(s("2*i").sqrt(), Some(s("1+i")));
        assert_eq!(s("9/4").sqrt(), Some(s("3/2")));
        assert_eq!(s("2").sqrt(), None);
        let z = s("3/2-5/7*i");
        let sq = &z * &z;
        let r = sq.sqrt().unwrap();
        assert!(r == z || r == -z);
    }
}
