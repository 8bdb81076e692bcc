//! The exact scalar field Q(i) of Gaussian rationals.
//!
//! A [`Scalar`] is `re + im*i` with both parts arbitrary-precision rationals
//! in lowest terms with positive denominator, so equality is structural and
//! serialized output is deterministic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parse the RAT grammar `'-'? digits ('/' digits)?` into a rational.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("invalid rational literal {s:?}"));
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (num_s, den_s) = match rest.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (rest, None),
    };
    if num_s.is_empty() || !num_s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = num_s.parse().map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let den: BigInt = match den_s {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Render a rational in the RAT grammar: `n` or `n/d`.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Scalar::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::real(BigRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `num/den`; panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `re + im*i` from small integers.
    pub fn from_parts(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
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

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a nonnegative rational; zero iff the scalar is zero.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Scalar> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
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
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
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

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Lexicographic order on (re, im). This is a canonical sort order for
// deterministic output, not a field order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_to_string(&self.re));
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}i", rat_to_string(&im_abs))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else if self.im.is_negative() {
            write!(f, "{}-{im_part}", rat_to_string(&self.re))
        } else {
            write!(f, "{}+{im_part}", rat_to_string(&self.re))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
