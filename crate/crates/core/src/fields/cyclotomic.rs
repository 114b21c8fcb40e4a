//! Exact arithmetic in `Q(zeta_N) = Q[x]/Phi_N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::divisors;
use crate::error::{Error, Result};

/// `Phi_N` with integer coefficients, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^N - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = exact_int_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Quotient of `a` by the monic `b`; panics if the division leaves a remainder.
fn exact_int_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![0i64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = r[k + db];
        quot[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

#[cfg(test)]
fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Debug)]
pub struct CyclotomicField {
    n: u64,
    /// Monic `Phi_N`, constant term first.
    phi: Vec<BigRational>,
}

pub type CycElem = Vec<BigRational>;

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

impl CyclotomicField {
    pub fn new(n: u64) -> Self {
        let phi = cyclotomic_polynomial(n).into_iter().map(rat).collect();
        CyclotomicField { n, phi }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> CycElem {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn from_int(&self, c: i64) -> CycElem {
        let mut e = self.zero();
        e[0] = rat(c);
        e
    }

    /// The class of `x`, a primitive `N`-th root of unity.
    pub fn zeta(&self) -> CycElem {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self, a: &CycElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Reduces a polynomial of any degree modulo `Phi_N`.
    pub fn reduce(&self, mut a: Vec<BigRational>) -> CycElem {
        let d = self.degree();
        while a.len() > d {
            let c = a.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = a.len() - d;
            for i in 0..d {
                a[shift + i] -= &c * &self.phi[i];
            }
        }
        a.resize(d, BigRational::zero());
        a
    }

    pub fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &CycElem) -> CycElem {
        a.iter().map(|x| -x).collect()
    }

    pub fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let d = self.degree();
        let mut out = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    pub fn scale(&self, a: &CycElem, c: &BigRational) -> CycElem {
        a.iter().map(|x| x * c).collect()
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self, a: &CycElem) -> Result<CycElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        let mut r0 = trimmed(self.phi.clone());
        let mut r1 = trimmed(a.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Phi_N is irreducible
        let c = r1[0].clone();
        let inv_c = c.recip();
        Ok(self.reduce(s1.iter().map(|x| x * &inv_c).collect()))
    }

    pub fn render(&self, a: &CycElem) -> String {
        let mut terms = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn trimmed(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trimmed(q), trimmed(r))
}
