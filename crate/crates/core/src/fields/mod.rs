//! Exact fields: `F_q`, `F_{q^s}` and cyclotomic fields `Q(zeta_N)`.

mod cyclotomic;
mod finite;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField};
pub use finite::{FiniteField, MAX_ORDER};

use crate::arith::{multiplicative_order, prime_factors};
use crate::error::{Error, Result};

#[derive(Debug)]
enum Kind {
    Finite(FiniteField),
    Cyclotomic(CyclotomicField),
}

/// Shared handle to an exact field.
#[derive(Clone, Debug)]
pub struct Field(Arc<Kind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Kind::Finite(a), Kind::Finite(b)) => {
                a.characteristic() == b.characteristic() && a.degree() == b.degree()
            }
            (Kind::Cyclotomic(a), Kind::Cyclotomic(b)) => a.order() == b.order(),
            _ => false,
        }
    }
}

impl Eq for Field {}

/// Raw element representation; its meaning depends on the owning field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Finite(u32),
    Cyclotomic(Vec<BigRational>),
}

impl Elem {
    fn fin(&self) -> u32 {
        match self {
            Elem::Finite(a) => *a,
            Elem::Cyclotomic(_) => panic!("cyclotomic element used in a finite field"),
        }
    }

    fn cyc(&self) -> &Vec<BigRational> {
        match self {
            Elem::Cyclotomic(a) => a,
            Elem::Finite(_) => panic!("finite-field element used in a cyclotomic field"),
        }
    }
}

fn finite_cache() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// `F_{q^s}`. Handles are cached, so repeated calls share tables.
    pub fn finite(q: u64, s: u32) -> Result<Field> {
        let q32 = u32::try_from(q).map_err(|_| Error::FieldTooLarge(q as u128))?;
        let mut cache = finite_cache().lock().unwrap();
        if let Some(f) = cache.get(&(q32, s)) {
            return Ok(f.clone());
        }
        let f = Field(Arc::new(Kind::Finite(FiniteField::new(q32, s)?)));
        cache.insert((q32, s), f.clone());
        Ok(f)
    }

    pub fn prime(q: u64) -> Result<Field> {
        Self::finite(q, 1)
    }

    pub fn cyclotomic(n: u64) -> Result<Field> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclotomic order must be positive".into()));
        }
        let mut cache = cyclotomic_cache().lock().unwrap();
        if let Some(f) = cache.get(&n) {
            return Ok(f.clone());
        }
        let f = Field(Arc::new(Kind::Cyclotomic(CyclotomicField::new(n))));
        cache.insert(n, f.clone());
        Ok(f)
    }

    pub fn rationals() -> Field {
        Self::cyclotomic(1).expect("Q is always constructible")
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Finite(f) => f.characteristic() as u64,
            Kind::Cyclotomic(_) => 0,
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Kind::Finite(f) => f.degree() as usize,
            Kind::Cyclotomic(c) => c.degree(),
        }
    }

    /// Number of elements, `None` in characteristic zero.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            Kind::Finite(f) => Some(f.size() as u64),
            Kind::Cyclotomic(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteField> {
        match &*self.0 {
            Kind::Finite(f) => Some(f),
            Kind::Cyclotomic(_) => None,
        }
    }

    pub fn as_cyclotomic(&self) -> Option<&CyclotomicField> {
        match &*self.0 {
            Kind::Cyclotomic(c) => Some(c),
            Kind::Finite(_) => None,
        }
    }

    pub fn name(&self) -> String {
        match &*self.0 {
            Kind::Finite(f) if f.degree() == 1 => format!("F_{}", f.characteristic()),
            Kind::Finite(f) => format!("F_{}^{}", f.characteristic(), f.degree()),
            Kind::Cyclotomic(c) if c.order() <= 2 => "Q".into(),
            Kind::Cyclotomic(c) => format!("Q(zeta_{})", c.order()),
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.from_int(c)),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(k.from_int(c)),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Finite(x) => *x == 0,
            Elem::Cyclotomic(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.add(a.fin(), b.fin())),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(k.add(a.cyc(), b.cyc())),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.sub(a.fin(), b.fin())),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(k.sub(a.cyc(), b.cyc())),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.neg(a.fin())),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(k.neg(a.cyc())),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.mul(a.fin(), b.fin())),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(k.mul(a.cyc(), b.cyc())),
        }
    }

    /// `c * a` for an integer `c`.
    pub fn scale(&self, a: &Elem, c: i64) -> Elem {
        match &*self.0 {
            Kind::Finite(f) => Elem::Finite(f.mul(a.fin(), f.from_int(c))),
            Kind::Cyclotomic(k) => Elem::Cyclotomic(
                k.scale(a.cyc(), &BigRational::from_integer(c.into())),
            ),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match &*self.0 {
            Kind::Finite(f) => f.inv(a.fin()).map(Elem::Finite),
            Kind::Cyclotomic(k) => k.inv(a.cyc()).map(Elem::Cyclotomic),
        }
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        if let Kind::Finite(f) = &*self.0 {
            return f.pow(a.fin(), e).map(Elem::Finite);
        }
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut result = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        Ok(result)
    }

    /// Multiplicative order of a nonzero element, if finite.
    pub fn multiplicative_order_of(&self, a: &Elem, bound: u64) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        if let Kind::Finite(f) = &*self.0 {
            return f.mult_order(a.fin());
        }
        let one = self.one();
        let mut x = a.clone();
        for k in 1..=bound {
            if x == one {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }

    /// A primitive `n`-th root of unity.
    ///
    /// Finite fields return `g^((Q-1)/n)` for the least multiplicative
    /// generator `g`; `Q(zeta_N)` returns `x^(N/n)`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Elem> {
        if n == 0 {
            return Err(Error::InvalidParameter("root order must be positive".into()));
        }
        match &*self.0 {
            Kind::Finite(f) => {
                let m = f.size() as u64 - 1;
                if !m.is_multiple_of(n) {
                    return Err(Error::NoRootOfUnity(n));
                }
                Ok(Elem::Finite(f.exp_of(m / n)))
            }
            Kind::Cyclotomic(k) => {
                let big_n = k.order();
                // Q(zeta_N) with N odd also contains -zeta, of order 2N.
                let (base, order) = if big_n % 2 == 1 {
                    (self.neg(&Elem::Cyclotomic(k.zeta())), 2 * big_n)
                } else {
                    (Elem::Cyclotomic(k.zeta()), big_n)
                };
                if big_n % n == 0 {
                    return self.pow(&Elem::Cyclotomic(k.zeta()), (big_n / n) as i64);
                }
                if order % n != 0 {
                    return Err(Error::NoRootOfUnity(n));
                }
                self.pow(&base, (order / n) as i64)
            }
        }
    }

    pub fn element(&self, e: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr: e,
        }
    }

    pub fn render(&self, a: &Elem) -> String {
        match &*self.0 {
            Kind::Finite(f) => f.render(a.fin()),
            Kind::Cyclotomic(k) => k.render(a.cyc()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A field element bundled with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn repr(&self) -> &Elem {
        &self.repr
    }

    pub fn into_repr(self) -> Elem {
        self.repr
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.add(&self.repr, &other.repr)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.sub(&self.repr, &other.repr)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(self.field.mul(&self.repr, &other.repr)))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(&self.repr))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(&self.repr)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.field.element(self.field.pow(&self.repr, e)?))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.repr)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(&self.repr))
    }
}

/// Dense matrix over a single field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl FieldMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_raw(field: &Field, rows: usize, cols: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from owned elements, rejecting entries from another field.
    pub fn from_elements(
        field: &Field,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter("entry count does not match shape".into()));
        }
        let mut raw = Vec::with_capacity(entries.len());
        for e in entries {
            if &e.field != field {
                return Err(Error::FieldMismatch);
            }
            raw.push(e.repr);
        }
        Ok(Self::from_raw(field, rows, cols, raw))
    }

    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_raw(field, rows, cols, entries.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.element(self.entries[i * self.cols + j].clone())
    }

    pub fn raw(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j].clone());
            }
        }
        Self::from_raw(&self.field, self.cols, self.rows, entries)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        match &*self.field.0 {
            Kind::Finite(f) => {
                let mut a: Vec<u32> = self.entries.iter().map(Elem::fin).collect();
                rank_finite(f, &mut a, self.rows, self.cols)
            }
            Kind::Cyclotomic(k) => {
                let mut a: Vec<Vec<BigRational>> =
                    self.entries.iter().map(|e| e.cyc().clone()).collect();
                rank_cyclotomic(k, &mut a, self.rows, self.cols)
            }
        }
    }
}

fn rank_finite(f: &FiniteField, a: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(p * cols + j, rank * cols + j);
        }
        let inv = f.inv(a[rank * cols + c]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let x = a[r * cols + c];
            if x == 0 {
                continue;
            }
            let factor = f.mul(x, inv);
            for j in c..cols {
                let t = f.mul(factor, a[rank * cols + j]);
                a[r * cols + j] = f.sub(a[r * cols + j], t);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_cyclotomic(
    k: &CyclotomicField,
    a: &mut [Vec<BigRational>],
    rows: usize,
    cols: usize,
) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !k.is_zero(&a[r * cols + c])) else {
            continue;
        };
        for j in 0..cols {
            a.swap(p * cols + j, rank * cols + j);
        }
        let inv = k.inv(&a[rank * cols + c]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            if k.is_zero(&a[r * cols + c]) {
                continue;
            }
            let factor = k.mul(&a[r * cols + c], &inv);
            for j in c..cols {
                if k.is_zero(&a[rank * cols + j]) {
                    continue;
                }
                let t = k.mul(&factor, &a[rank * cols + j]);
                a[r * cols + j] = k.sub(&a[r * cols + j], &t);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A field of characteristic `q` (or zero) containing the `n`-th roots of unity.
///
/// `q = 0` gives `Q(zeta_n)`; a prime `q` gives `F_{q^s}` with `s` the order
/// of `q` modulo `n`.
pub fn sufficiently_large_field(n: u64, q: u64) -> Result<Field> {
    if n == 0 {
        return Err(Error::InvalidParameter("quotient order must be positive".into()));
    }
    if q == 0 {
        return Field::cyclotomic(n);
    }
    if !crate::arith::is_prime(q) {
        return Err(Error::InvalidParameter(format!("{q} is not prime")));
    }
    if n.is_multiple_of(q) {
        return Err(Error::CharacteristicDivides { q, order: n });
    }
    let s = multiplicative_order(q, n)?;
    Field::finite(q, s as u32)
}

/// Monic irreducible factors of `1 + x + ... + x^(p-1)` over `F_q`, each of
/// degree `ord_p(q)`, in lexicographic order of coefficients (constant first).
pub fn factor_cyclotomic_mod_q(p: u64, q: u64) -> Result<Vec<Vec<u64>>> {
    if p == q {
        return Err(Error::InvalidParameter("p and q must differ".into()));
    }
    if !crate::arith::is_prime(p) || !crate::arith::is_prime(q) {
        return Err(Error::InvalidParameter("p and q must be prime".into()));
    }
    let s = multiplicative_order(q, p)? as usize;
    let q32 = q as u32;
    let target: Vec<u32> = vec![1; p as usize];
    let want = (p as usize - 1) / s;
    let factors: Vec<Vec<u64>> = finite::poly::monic_of_degree(s, q32)
        .filter(|g| finite::poly::rem(&target, g, q32).is_empty())
        .take(want)
        .map(|g| g.into_iter().map(u64::from).collect())
        .collect();
    debug_assert_eq!(factors.len(), want);
    Ok(factors)
}

/// Checks that `zeta^k`, `k = 0..n`, are pairwise distinct and `zeta^n = 1`.
pub fn is_primitive_root(field: &Field, zeta: &Elem, n: u64) -> bool {
    let one = field.one();
    if field.pow(zeta, n as i64).ok().as_ref() != Some(&one) {
        return false;
    }
    prime_factors(n)
        .into_iter()
        .all(|r| field.pow(zeta, (n / r) as i64).ok().as_ref() != Some(&one))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sufficiently_large_examples() {
        let f4 = sufficiently_large_field(3, 2).unwrap();
        assert_eq!(f4.order(), Some(4));
        assert_eq!(f4.as_finite().unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(sufficiently_large_field(2, 3).unwrap().order(), Some(3));
        let q3 = sufficiently_large_field(3, 0).unwrap();
        assert_eq!(q3.degree(), 2);
        assert!(matches!(
            sufficiently_large_field(4, 2),
            Err(Error::CharacteristicDivides { .. })
        ));
    }

    #[test]
    fn roots_of_unity() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.primitive_root_of_unity(2).unwrap(), Elem::Finite(2));
        let f7 = Field::prime(7).unwrap();
        let z = f7.primitive_root_of_unity(3).unwrap();
        assert!(z == Elem::Finite(2) || z == Elem::Finite(4));
        let q4 = Field::cyclotomic(4).unwrap();
        let i = q4.primitive_root_of_unity(4).unwrap();
        assert_eq!(q4.mul(&i, &i), q4.from_int(-1));
        assert!(matches!(
            f7.primitive_root_of_unity(4),
            Err(Error::NoRootOfUnity(4))
        ));
    }

    #[test]
    fn root_powers_are_distinct() {
        for (field, n) in [
            (Field::finite(2, 4).unwrap(), 5u64),
            (Field::finite(3, 2).unwrap(), 8),
            (Field::cyclotomic(5).unwrap(), 5),
            (Field::cyclotomic(6).unwrap(), 6),
            (Field::cyclotomic(3).unwrap(), 6),
        ] {
            let z = field.primitive_root_of_unity(n).unwrap();
            assert!(is_primitive_root(&field, &z, n));
            let mut seen = Vec::new();
            for k in 0..n {
                let x = field.pow(&z, k as i64).unwrap();
                assert!(!seen.contains(&x));
                seen.push(x);
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.inv(&f7.from_int(2)).unwrap(), f7.from_int(4));
        let q3 = Field::cyclotomic(3).unwrap();
        let z = q3.primitive_root_of_unity(3).unwrap();
        let z2 = q3.mul(&z, &z);
        assert_eq!(q3.add(&z, &z2), q3.from_int(-1));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Field::prime(3).unwrap().element(Elem::Finite(1));
        let b = Field::prime(5).unwrap().element(Elem::Finite(1));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            FieldMatrix::from_elements(&f5, 1, 2, vec![a, b]),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn cyclotomic_factors() {
        assert_eq!(factor_cyclotomic_mod_q(3, 2).unwrap(), vec![vec![1, 1, 1]]);
        // x - 4 = x + 3 and x - 2 = x + 5 over F_7
        assert_eq!(factor_cyclotomic_mod_q(3, 7).unwrap(), vec![vec![3, 1], vec![5, 1]]);
        assert_eq!(factor_cyclotomic_mod_q(5, 2).unwrap(), vec![vec![1, 1, 1, 1, 1]]);
        assert!(factor_cyclotomic_mod_q(3, 3).is_err());
    }

    #[test]
    fn ranks() {
        let f4 = Field::finite(2, 2).unwrap();
        assert_eq!(FieldMatrix::from_ints(&f4, 3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).rank(), 3);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(FieldMatrix::from_ints(&f2, 2, 2, &[1, 1, 1, 1]).rank(), 1);
        // (1 - t2, t1 - 1) at (zeta_3, 1)
        let q3 = Field::cyclotomic(3).unwrap();
        let z = q3.primitive_root_of_unity(3).unwrap();
        let m = FieldMatrix::from_raw(
            &q3,
            1,
            2,
            vec![q3.zero(), q3.sub(&z, &q3.one())],
        );
        assert_eq!(m.rank(), 1);
    }
}
