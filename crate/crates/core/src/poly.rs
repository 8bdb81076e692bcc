//! Univariate polynomials over Q(i): arithmetic, gcd, squarefree part, and
//! complete Gaussian-rational root extraction.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result, SplitFailure};
use crate::gaussint::{gauss_divisors, units, GaussInt};
use crate::scalar::Scalar;

/// Coefficients lowest degree first, trailing zeros stripped; the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// Monic product of `t - r` over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = &p * &Poly::new(vec![-r, Scalar::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &Scalar::from_int(k as i64) * c)
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divide by the leading coefficient; errors on the zero polynomial.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lead.inv()?))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![Scalar::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                rem[k + j] = &rem[k + j] - &(&c * &d.coeffs[j]);
            }
            q[k] = c;
        }
        Ok((Poly::new(q), Poly::new(rem)))
    }

    /// Substitute `g` for the indeterminate.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.is_real() && c.re() < &num_rational::BigRational::default();
            let mag = if negative_real { -c } else { c.clone() };
            if first {
                if negative_real {
                    write!(f, "-")?;
                }
            } else if negative_real {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        if mag.is_real() {
                            write!(f, "{mag}")?;
                        } else {
                            write!(f, "({mag})")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let y_monic = y.monic().expect("nonzero");
        let (_, r) = x.divrem(&y_monic).expect("nonzero divisor");
        x = y_monic;
        y = r;
    }
    if x.is_zero() {
        x
    } else {
        x.monic().expect("nonzero")
    }
}

/// `p / gcd(p, p')`, monic: same roots as `p`, each simple.
pub fn poly_squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative());
    if g.is_zero() {
        // p nonzero with p' = 0 cannot happen in characteristic 0 unless p
        // is constant, and then g = p is nonzero; keep a guard anyway.
        return p.monic();
    }
    let (q, r) = p.divrem(&g)?;
    debug_assert!(r.is_zero());
    q.monic()
}

/// Least common multiple of the denominators of all real and imaginary
/// coefficient parts, and the corresponding Z[i] coefficient list.
fn clear_denominators(p: &Poly) -> Vec<GaussInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re().denom());
        lcm = lcm.lcm(c.im().denom());
    }
    p.coeffs()
        .iter()
        .map(|c| {
            let re = c.re().numer() * (&lcm / c.re().denom());
            let im = c.im().numer() * (&lcm / c.im().denom());
            GaussInt { re, im }
        })
        .collect()
}

fn gauss_to_scalar(g: &GaussInt) -> Scalar {
    Scalar::new(
        num_rational::BigRational::from_integer(g.re.clone()),
        num_rational::BigRational::from_integer(g.im.clone()),
    )
}

/// All roots of `p` in Q(i), with multiplicities, sorted canonically.
///
/// If `p` does not split into linear factors over Q(i), the non-split factor
/// is returned as a [`SplitFailure`] value.
pub fn gaussian_roots(p: &Poly) -> Result<Vec<(Scalar, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    let mut found: Vec<(Scalar, usize)> = Vec::new();

    // strip the root at zero first, so constant coefficients below are nonzero
    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut work = Poly::new(p.coeffs()[zero_mult..].to_vec());
    if zero_mult > 0 {
        found.push((Scalar::zero(), zero_mult));
    }

    if work.degree() == Some(0) {
        return Ok(found);
    }

    let sf = poly_squarefree_part(&work)?;
    let zi = clear_denominators(&sf);
    let c0 = zi.first().expect("nonzero").clone();
    let cn = zi.last().expect("nonzero").clone();
    debug_assert!(!c0.is_zero() && !cn.is_zero());

    // candidate roots u/v with u | c0 and v | cn, times a unit
    let mut candidates: BTreeSet<Scalar> = BTreeSet::new();
    for d0 in gauss_divisors(&c0)? {
        let num = gauss_to_scalar(&d0);
        for dn in gauss_divisors(&cn)? {
            let den = gauss_to_scalar(&dn);
            let base = num.div(&den).expect("divisor nonzero");
            for u in units() {
                candidates.insert(&gauss_to_scalar(&u) * &base);
            }
        }
    }

    for cand in candidates {
        if !sf.eval(&cand).is_zero() {
            continue;
        }
        let lin = Poly::new(vec![-&cand, Scalar::one()]);
        let mut mult = 0;
        loop {
            let (q, r) = work.divrem(&lin)?;
            if !r.is_zero() {
                break;
            }
            work = q;
            mult += 1;
        }
        debug_assert!(mult >= 1);
        found.push((cand, mult));
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    let total: usize = found.iter().map(|(_, m)| m).sum();
    if total == deg {
        Ok(found)
    } else {
        Err(Error::Split(SplitFailure::new(work.monic()?)))
    }
}
