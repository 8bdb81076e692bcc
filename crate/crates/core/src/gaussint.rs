//! Gaussian integers Z[i]: exact division, Euclidean gcd, prime
//! factorization, and divisor enumeration.
//!
//! Used by root extraction: a Gaussian-rational root u/v of a polynomial
//! with Z[i] coefficients satisfies u | a_0 and v | a_n, so enumerating
//! divisors of the constant and leading coefficients is a complete
//! candidate search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    pub fn sub(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    /// Exact quotient `self / rhs` if it lies in Z[i].
    pub fn div_exact(&self, rhs: &GaussInt) -> Option<GaussInt> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        let t = self.mul(&rhs.conj());
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussInt::new(qr, qi))
        } else {
            None
        }
    }
}

/// Nearest-integer rounding of `a / b` for `b > 0`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // floor((2a + b) / 2b) rounds half up; exact ties are harmless here.
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// Euclidean division in Z[i]: `a = q*b + r` with `N(r) <= N(b)/2`.
fn divrem_rounded(a: &GaussInt, b: &GaussInt) -> (GaussInt, GaussInt) {
    let n = b.norm();
    let t = a.mul(&b.conj());
    let q = GaussInt::new(div_round(&t.re, &n), div_round(&t.im, &n));
    let r = a.sub(&q.mul(b));
    (q, r)
}

pub(crate) fn gauss_gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = divrem_rounded(&x, &y);
        x = y;
        y = r;
    }
    x
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for n < 3.3e24 (covers anything that survives
/// the trial-division budget at desk scale).
fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let two = BigInt::from(2);
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1: BigInt = n - BigInt::one();
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &MR_BASES {
        let b = BigInt::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Factor a positive integer by trial division, with a bounded budget and a
/// primality check on the surviving cofactor.
fn factor_positive(mut n: BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e2 = 0;
    while n.is_even() {
        n /= 2;
        e2 += 1;
    }
    push(BigInt::from(2), e2);
    let mut d = BigInt::from(3);
    let budget = BigInt::from(1_000_000u64);
    while (&d * &d) <= n && d <= budget {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        push(d.clone(), e);
        d += 2;
    }
    if !n.is_one() {
        if is_prime(&n) {
            push(n, 1);
        } else {
            return Err(Error::Input(format!(
                "coefficient norm has a composite factor {n} beyond the factoring budget"
            )));
        }
    }
    Ok(out)
}

/// Some x with x^2 = -1 (mod p), for prime p = 1 (mod 4).
fn sqrt_minus_one(p: &BigInt) -> BigInt {
    let exp = (p - 1) / 4;
    let p_minus_1 = p - 1;
    let mut a = BigInt::from(2);
    loop {
        let t = a.modpow(&exp, p);
        if t.modpow(&BigInt::from(2), p) == p_minus_1 {
            return t;
        }
        a += 1;
    }
}

/// Gaussian prime factorization of a nonzero z, as (prime, exponent) pairs.
/// Primes are fixed associates; the overall unit is dropped.
pub(crate) fn gauss_factor(z: &GaussInt) -> Result<Vec<(GaussInt, u32)>> {
    assert!(!z.is_zero(), "cannot factor zero");
    let mut rem = z.clone();
    let mut out = Vec::new();
    let divide_out = |rem: &mut GaussInt, pi: &GaussInt| -> u32 {
        let mut e = 0;
        while let Some(q) = rem.div_exact(pi) {
            *rem = q;
            e += 1;
        }
        e
    };
    for (p, _) in factor_positive(z.norm())? {
        if p == BigInt::from(2) {
            let pi = GaussInt::new(1, 1);
            let e = divide_out(&mut rem, &pi);
            if e > 0 {
                out.push((pi, e));
            }
        } else if (&p % 4u32) == BigInt::from(3) {
            let pi = GaussInt::new(p, 0);
            let e = divide_out(&mut rem, &pi);
            if e > 0 {
                out.push((pi, e));
            }
        } else {
            let x = sqrt_minus_one(&p);
            let pi = gauss_gcd(&GaussInt::new(p.clone(), 0), &GaussInt::new(x, 1));
            debug_assert_eq!(pi.norm(), p);
            let e1 = divide_out(&mut rem, &pi);
            if e1 > 0 {
                out.push((pi.clone(), e1));
            }
            let pibar = pi.conj();
            let e2 = divide_out(&mut rem, &pibar);
            if e2 > 0 {
                out.push((pibar, e2));
            }
        }
    }
    debug_assert!(rem.is_unit(), "factorization left non-unit remainder");
    Ok(out)
}

/// All divisors of a nonzero z, one representative per associate class.
pub(crate) fn gauss_divisors(z: &GaussInt) -> Result<Vec<GaussInt>> {
    let mut divs = vec![GaussInt::one()];
    for (pi, e) in gauss_factor(z)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// The four units of Z[i].
pub(crate) fn units() -> [GaussInt; 4] {
    [
        GaussInt::new(1, 0),
        GaussInt::new(-1, 0),
        GaussInt::new(0, 1),
        GaussInt::new(0, -1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = GaussInt::new(5, 0);
        let pi = GaussInt::new(2, 1);
        let q = a.div_exact(&pi).unwrap();
        assert_eq!(q.mul(&pi), a);
        assert!(GaussInt::new(3, 0).div_exact(&pi).is_none());
    }

    #[test]
    fn factor_five_splits() {
        let f = gauss_factor(&GaussInt::new(5, 0)).unwrap();
        assert_eq!(f.len(), 2);
        for (pi, e) in &f {
            assert_eq!(*e, 1);
            assert_eq!(pi.norm(), BigInt::from(5));
        }
    }

    #[test]
    fn factor_recomposes() {
        for (re, im) in [(12, 0), (0, 9), (3, 4), (-7, 24), (1, 1), (30, -42)] {
            let z = GaussInt::new(re, im);
            let mut prod = GaussInt::one();
            for (pi, e) in gauss_factor(&z).unwrap() {
                for _ in 0..e {
                    prod = prod.mul(&pi);
                }
            }
            // z = unit * prod
            let u = z.div_exact(&prod).unwrap();
            assert!(u.is_unit());
        }
    }

    #[test]
    fn divisor_counts() {
        // 2 = -i (1+i)^2: divisor classes 1, (1+i), (1+i)^2
        assert_eq!(gauss_divisors(&GaussInt::new(2, 0)).unwrap().len(), 3);
        // 5 = (2+i)(2-i): classes 1, pi, pibar, 5
        assert_eq!(gauss_divisors(&GaussInt::new(5, 0)).unwrap().len(), 4);
        // 3 inert: classes 1, 3
        assert_eq!(gauss_divisors(&GaussInt::new(3, 0)).unwrap().len(), 2);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(1_000_001))); // 101 * 9901
        assert!(is_prime(&BigInt::from(4_294_967_311u64)));
    }
}
