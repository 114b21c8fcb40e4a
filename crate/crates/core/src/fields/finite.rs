//! Table arithmetic in `F_{q^s}`.
//!
//! An element is stored as the index `c_0 + c_1 q + ... + c_{s-1} q^{s-1}`
//! of its coefficient vector over the modulus.

use crate::arith::prime_factors;
use crate::error::{Error, Result};

/// Largest field order for which log/exp tables are built.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug)]
pub struct FiniteField {
    q: u32,
    s: u32,
    size: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Polynomials over `F_q` as coefficient vectors, low degree first.
pub(crate) mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], q: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let t = (c as u64 * mi as u64 % q as u64) as u32;
                    r[shift + i] = (r[shift + i] + q - t) % q;
                }
            }
            r.pop();
        }
        trim(&mut r);
        r
    }

    pub fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % q as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Monic polynomials of degree `d` over `F_q`, ordered lexicographically
    /// by coefficients from the constant term upward.
    pub fn monic_of_degree(d: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (q as u64).pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut c = vec![0u32; d + 1];
            for i in (0..d).rev() {
                c[i] = (idx % q as u64) as u32;
                idx /= q as u64;
            }
            c[d] = 1;
            c
        })
    }

    pub fn is_irreducible(f: &[u32], q: u32) -> bool {
        let d = f.len() - 1;
        for e in 1..=d / 2 {
            if monic_of_degree(e, q).any(|g| rem(f, &g, q).is_empty()) {
                return false;
            }
        }
        d >= 1
    }
}

impl FiniteField {
    pub fn new(q: u32, s: u32) -> Result<Self> {
        if !crate::arith::is_prime(q as u64) || s == 0 {
            return Err(Error::InvalidParameter(format!(
                "F_{{{q}^{s}}} needs a prime characteristic and positive degree"
            )));
        }
        let size = (q as u64)
            .checked_pow(s)
            .filter(|&n| n <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge((q as u128).pow(s)))? as u32;
        let modulus = if s == 1 {
            vec![0, 1]
        } else {
            poly::monic_of_degree(s as usize, q)
                .find(|f| poly::is_irreducible(f, q))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut field = FiniteField {
            q,
            s,
            size,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let n = (size - 1) as u64;
        let factors = prime_factors(n);
        let generator = (1..size)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| field.slow_pow(g, n / r) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; size as usize];
        let g = field.to_poly(generator);
        let mut x = vec![1u32];
        for i in 0..n {
            let idx = field.encode_poly(&x);
            exp.push(idx);
            log[idx as usize] = i as u32;
            x = poly::rem(&poly::mul(&x, &g, q), &field.modulus, q);
        }
        field.generator = generator;
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn to_poly(&self, mut idx: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.s as usize);
        for _ in 0..self.s {
            c.push(idx % self.q);
            idx /= self.q;
        }
        poly::trim(&mut c);
        c
    }

    fn encode_poly(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = vec![1u32];
        let mut b = self.to_poly(a);
        while e > 0 {
            if e & 1 == 1 {
                r = poly::rem(&poly::mul(&r, &b, self.q), &self.modulus, self.q);
            }
            b = poly::rem(&poly::mul(&b, &b, self.q), &self.modulus, self.q);
            e >>= 1;
        }
        self.encode_poly(&r)
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Index of the class of `x` (the generator of the extension over `F_q`).
    pub fn x(&self) -> u32 {
        if self.s == 1 {
            0
        } else {
            self.q
        }
    }

    #[inline]
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            let t = a + b;
            return if t >= self.q { t - self.q } else { t };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.s {
            let d = (a % self.q + b % self.q) % self.q;
            out += d * place;
            place *= self.q;
            a /= self.q;
            b /= self.q;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.s == 1 {
            return if a == 0 { 0 } else { self.q - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.s {
            let d = (self.q - a % self.q) % self.q;
            out += d * place;
            place *= self.q;
            a /= self.q;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[if e >= n { e - n } else { e } as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.size - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::ZeroInverse),
            };
        }
        let n = (self.size - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[k as usize])
    }

    /// `g^k` for the fixed multiplicative generator `g`.
    pub fn exp_of(&self, k: u64) -> u32 {
        self.exp[(k % (self.size as u64 - 1)) as usize]
    }

    pub fn mult_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a as usize] as u64;
        Some(n / num_integer::gcd(n, l))
    }

    /// Renders an element as a polynomial in `a`, the class of `x`.
    pub fn render(&self, idx: u32) -> String {
        if self.s == 1 {
            return idx.to_string();
        }
        let c = self.to_poly(idx);
        if c.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "a".into(),
                _ => format!("a^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mon,
                _ => format!("{ci}{mon}"),
            });
        }
        terms.join("+")
    }
}
