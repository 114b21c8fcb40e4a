//! Smith normal form over the integers and ranks over exact fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::FieldMatrix;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// # Panics
    /// If `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&e| BigInt::from(e)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if !s.is_zero() {
                let d = s * q;
                self.entries[dst * self.cols + j] -= d;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if !s.is_zero() {
                let d = s * q;
                self.entries[i * self.cols + dst] -= d;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Unimodular matrices with `u * a * v = diag(divisors)`; `v_inv` is the inverse of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithTransform {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next. Ones are kept.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    /// Free rank of `Z^cols / rowspace`.
    pub coker_free_rank: usize,
    pub transform: Option<SmithTransform>,
}

impl SmithForm {
    /// Divisors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form. The matrix presents `Z^cols` modulo its row space.
///
/// Pivots are chosen as the entry of least absolute value and reduced by
/// Euclidean steps.
pub fn smith_normal_form(a: &IntMatrix, want_transform: bool) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut tr = want_transform.then(|| SmithTransform {
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    });
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = least_entry(&d, t, t) else {
            break;
        };
        move_pivot(&mut d, &mut tr, t, pi, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let q = d.get(i, t).div_floor(d.get(t, t));
                    d.sub_row(i, t, &q);
                    if let Some(tr) = tr.as_mut() {
                        tr.u.sub_row(i, t, &q);
                    }
                    dirty |= !d.get(i, t).is_zero();
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let q = d.get(t, j).div_floor(d.get(t, t));
                    d.sub_col(j, t, &q);
                    if let Some(tr) = tr.as_mut() {
                        tr.v.sub_col(j, t, &q);
                        // v_inv <- E^-1 v_inv with E = I - q e_t e_j^T
                        let neg = -&q;
                        tr.v_inv.sub_row(t, j, &neg);
                    }
                    dirty |= !d.get(t, j).is_zero();
                }
            }
            if dirty {
                let (pi, pj) = least_in_cross(&d, t);
                move_pivot(&mut d, &mut tr, t, pi, pj);
                continue;
            }
            // Enforce divisibility against the remaining block.
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    if let Some(tr) = tr.as_mut() {
                        tr.u.sub_row(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if let Some(tr) = tr.as_mut() {
                tr.u.negate_row(t);
            }
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..t).map(|i| d.get(i, i).clone()).collect();
    SmithForm {
        rank: t,
        coker_free_rank: n - t,
        divisors,
        transform: tr,
    }
}

fn least_entry(d: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..d.rows {
        for j in c0..d.cols {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| e.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
                if e.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn least_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut val = d.get(t, t).abs();
    for i in t + 1..d.rows {
        let e = d.get(i, t);
        if !e.is_zero() && e.abs() < val {
            val = e.abs();
            best = (i, t);
        }
    }
    for j in t + 1..d.cols {
        let e = d.get(t, j);
        if !e.is_zero() && e.abs() < val {
            val = e.abs();
            best = (t, j);
        }
    }
    best
}

fn move_pivot(d: &mut IntMatrix, tr: &mut Option<SmithTransform>, t: usize, i: usize, j: usize) {
    d.swap_rows(t, i);
    d.swap_cols(t, j);
    if let Some(tr) = tr.as_mut() {
        tr.u.swap_rows(t, i);
        tr.v.swap_cols(t, j);
        tr.v_inv.swap_rows(t, j);
    }
}

/// Rank of a matrix over its field by exact Gaussian elimination.
pub fn rank_over_field(m: &FieldMatrix) -> usize {
    m.rank()
}

/// `cols - rank`.
pub fn corank_over_field(m: &FieldMatrix) -> usize {
    m.cols() - m.rank()
}

/// Checks that every entry of `m` lies in the field `k`.
pub fn check_field(m: &FieldMatrix, k: &crate::fields::Field) -> Result<()> {
    if m.field() == k {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn divisors(a: &IntMatrix) -> Vec<i64> {
        smith_normal_form(a, false)
            .divisors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_transform(a: &IntMatrix) {
        let s = smith_normal_form(a, true);
        let tr = s.transform.as_ref().unwrap();
        let prod = tr.u.mul(a).mul(&tr.v);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expected = if i == j && i < s.rank {
                    s.divisors[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod.get(i, j), &expected, "U A V mismatch at ({i},{j})");
            }
        }
        assert!(tr.u.determinant().abs().is_one());
        assert!(tr.v.determinant().abs().is_one());
        assert_eq!(tr.v.mul(&tr.v_inv), IntMatrix::identity(a.cols()));
        for w in s.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn diag_two_three() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(divisors(&a), vec![1, 6]);
        check_transform(&a);
    }

    #[test]
    fn row_vector_two_two() {
        let a = IntMatrix::from_i64(1, 2, &[2, 2]);
        let s = smith_normal_form(&a, true);
        assert_eq!(s.divisors, vec![BigInt::from(2)]);
        assert_eq!(s.coker_free_rank, 1);
        check_transform(&a);
    }

    #[test]
    fn empty_rows() {
        let a = IntMatrix::zeros(0, 4);
        let s = smith_normal_form(&a, true);
        assert!(s.divisors.is_empty());
        assert_eq!(s.coker_free_rank, 4);
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(a.determinant(), BigInt::from(6));
    }

    proptest! {
        #[test]
        fn unimodular_transforms(rows in 0usize..5, cols in 0usize..5, seed in prop::collection::vec(-9i64..10, 25)) {
            let a = IntMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            check_transform(&a);
        }

        #[test]
        fn transpose_has_same_divisors(rows in 0usize..5, cols in 0usize..5, seed in prop::collection::vec(-9i64..10, 25)) {
            let a = IntMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            prop_assert_eq!(divisors(&a), divisors(&a.transpose()));
        }
    }
}
