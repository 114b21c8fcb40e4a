//! Fox derivatives, the abelianization map and the Alexander matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::charvar::Character;
use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldMatrix};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::presentations::{Presentation, Word};

/// An element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for FreeRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| match c {
                1 => w.to_string(),
                -1 => format!("-{w}"),
                _ => format!("{c}*{w}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Visits the Fox derivative terms of `w`: for each letter of generator `g`
/// the callback receives `(g, prefix, sign)` where the prefix excludes a
/// positive letter and includes a negative one.
fn fox_terms(w: &Word, mut visit: impl FnMut(usize, &Word, i64)) {
    let mut prefix = Word::identity();
    for (g, s) in w.letters() {
        let letter = Word::from_letters([(g, s)]);
        if s > 0 {
            visit(g, &prefix, 1);
            prefix = prefix.multiply(&letter);
        } else {
            prefix = prefix.multiply(&letter);
            visit(g, &prefix, -1);
        }
    }
}

/// `d w / d x_j`.
pub fn fox_derivative(w: &Word, j: usize) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    fox_terms(w, |g, prefix, sign| {
        if g == j {
            out.add_term(prefix.clone(), sign);
        }
    });
    out
}

/// Exponent-sum matrix: entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
pub fn augmentation_jacobian(p: &Presentation) -> IntMatrix {
    let l = p.num_generators();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(l)).collect();
    IntMatrix::from_rows(l, &rows)
}

/// A fixed isomorphism `H_1(G) -> Z^n + Z_{e_1} + ... + Z_{e_k}`.
///
/// Coordinates list the free part first, then the torsion divisors in
/// increasing (divisibility) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelStructure {
    num_generators: usize,
    free_rank: usize,
    torsion: Vec<u64>,
    /// Row `j` holds the coordinates of generator `j` (torsion entries reduced).
    chi: Vec<Vec<i64>>,
    /// Row `k` writes basis element `k` as an exponent vector on the generators.
    basis: Vec<Vec<i64>>,
}

impl AbelStructure {
    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates, free and torsion.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn chi(&self) -> &[Vec<i64>] {
        &self.chi
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// `b_1` with coefficients in a field of characteristic `q` (`0` for `Q`).
    pub fn b1(&self, q: u64) -> usize {
        if q == 0 {
            return self.free_rank;
        }
        self.free_rank + self.torsion.iter().filter(|&&e| e % q == 0).count()
    }

    /// Coordinates of an exponent vector; torsion residues are reduced.
    pub fn image(&self, exponents: &[i64]) -> Monomial {
        let mut free = vec![0i64; self.free_rank];
        let mut tors = vec![0i64; self.torsion.len()];
        for (j, &e) in exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let row = &self.chi[j];
            for k in 0..self.free_rank {
                free[k] += e * row[k];
            }
            for k in 0..self.torsion.len() {
                tors[k] += e * row[self.free_rank + k];
            }
        }
        Monomial {
            free,
            tors: tors
                .iter()
                .zip(&self.torsion)
                .map(|(&t, &m)| t.rem_euclid(m as i64) as u64)
                .collect(),
        }
    }

    /// True if the exponent vector maps to zero.
    pub fn kills(&self, exponents: &[i64]) -> bool {
        let m = self.image(exponents);
        m.free.iter().all(|&x| x == 0) && m.tors.iter().all(|&x| x == 0)
    }

    /// Human-readable group, e.g. `Z^2 + Z_2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|e| format!("Z_{e}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The same group with the free coordinates replaced by `m * coords`,
    /// for a unimodular `m`. Used to check basis independence.
    pub fn with_free_change(&self, m: &[Vec<i64>], m_inv: &[Vec<i64>]) -> AbelStructure {
        let n = self.free_rank;
        let mut out = self.clone();
        for (j, row) in out.chi.iter_mut().enumerate() {
            for k in 0..n {
                row[k] = (0..n).map(|i| m[k][i] * self.chi[j][i]).sum();
            }
        }
        for k in 0..n {
            out.basis[k] = (0..self.num_generators)
                .map(|g| (0..n).map(|i| m_inv[i][k] * self.basis[i][g]).sum())
                .collect();
        }
        out
    }
}

/// Abelianization through the Smith form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelStructure {
    let l = p.num_generators();
    let snf = smith_normal_form(&augmentation_jacobian(p), true);
    let tr = snf.transform.as_ref().expect("transform requested");
    let mut free_pos: Vec<usize> = (snf.rank..l).collect();
    let mut tors_pos = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in snf.divisors.iter().enumerate() {
        if *d > 1.into() {
            tors_pos.push(i);
            torsion.push(d.to_u64().expect("torsion divisor fits in 64 bits"));
        }
    }
    let positions: Vec<usize> = free_pos.drain(..).chain(tors_pos.iter().copied()).collect();
    let n = l - snf.rank;
    let big = |x: &num_bigint::BigInt| x.to_i64().expect("transform entry fits in 64 bits");
    let chi = (0..l)
        .map(|j| {
            positions
                .iter()
                .enumerate()
                .map(|(k, &pos)| {
                    let v = big(tr.v.get(j, pos));
                    if k < n {
                        v
                    } else {
                        v.rem_euclid(torsion[k - n] as i64)
                    }
                })
                .collect()
        })
        .collect();
    let basis = positions
        .iter()
        .map(|&pos| (0..l).map(|g| big(tr.v_inv.get(pos, g))).collect())
        .collect();
    AbelStructure {
        num_generators: l,
        free_rank: n,
        torsion,
        chi,
        basis,
    }
}

/// A monomial `t^free s^tors` of the Laurent ring over `H_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub free: Vec<i64>,
    pub tors: Vec<u64>,
}

/// A Laurent polynomial over `H_1(G)` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentElement {
    terms: BTreeMap<Monomial, i64>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let fmt_vec = |v: &[i64]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                if !m.free.is_empty() {
                    s.push_str(&format!(" * t^({})", fmt_vec(&m.free)));
                }
                if !m.tors.is_empty() {
                    let t: Vec<i64> = m.tors.iter().map(|&x| x as i64).collect();
                    s.push_str(&format!(" * s^({})", fmt_vec(&t)));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The Fox Jacobian pushed through the abelianization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    abel: AbelStructure,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentElement>,
}

impl AlexanderMatrix {
    pub fn abel(&self) -> &AbelStructure {
        &self.abel
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentElement {
        &self.entries[i * self.cols + j]
    }

    /// Setting every variable to 1 recovers the exponent-sum matrix.
    pub fn augmented(&self) -> IntMatrix {
        IntMatrix::from_i64(
            self.rows,
            self.cols,
            &self.entries.iter().map(|e| e.augmentation()).collect::<Vec<_>>(),
        )
    }

    /// One line per nonzero entry: `(i,j): c * t^(v) * s^(w) + ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.push_str(&format!("({},{}): {}\n", i + 1, j + 1, e.render()));
                }
            }
        }
        out
    }

    /// The matrix with every entry evaluated at the character `t`.
    pub fn evaluate(&self, t: &Character) -> Result<FieldMatrix> {
        if t.free_rank() != self.abel.free_rank || t.torsion_rank() != self.abel.torsion.len() {
            return Err(Error::InvalidParameter(
                "character does not match the abelianization".into(),
            ));
        }
        let field = t.field();
        let entries = match t.root_exponents() {
            Some(root) => self.entries.iter().map(|e| eval_root(field, e, root)).collect(),
            None => self
                .entries
                .iter()
                .map(|e| eval_general(field, e, t))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(FieldMatrix::from_raw(field, self.rows, self.cols, entries))
    }
}

/// Evaluation when every coordinate is a power of one root of unity:
/// coefficients are bucketed by the exponent of `zeta`.
fn eval_root(field: &Field, e: &LaurentElement, root: &crate::charvar::RootExponents) -> Elem {
    let m = root.order as i64;
    let mut buckets = vec![0i64; root.order as usize];
    for (mono, &c) in &e.terms {
        let mut k: i64 = 0;
        for (x, &a) in mono.free.iter().zip(&root.free) {
            k += x.rem_euclid(m) * a as i64;
        }
        for (x, &b) in mono.tors.iter().zip(&root.tors) {
            k += (*x as i64 % m) * b as i64;
        }
        buckets[k.rem_euclid(m) as usize] += c;
    }
    let mut acc = field.zero();
    for (k, &c) in buckets.iter().enumerate() {
        if c != 0 {
            acc = field.add(&acc, &field.scale(&root.powers[k], c));
        }
    }
    acc
}

fn eval_general(field: &Field, e: &LaurentElement, t: &Character) -> Result<Elem> {
    let mut acc = field.zero();
    for (mono, &c) in &e.terms {
        let mut v = field.from_int(c);
        for (x, val) in mono.free.iter().zip(t.free_values()) {
            if *x != 0 {
                v = field.mul(&v, &field.pow(val, *x)?);
            }
        }
        for (x, val) in mono.tors.iter().zip(t.torsion_values()) {
            if *x != 0 {
                v = field.mul(&v, &field.pow(val, *x as i64)?);
            }
        }
        acc = field.add(&acc, &v);
    }
    Ok(acc)
}

/// `A_G`: entry `(i, j)` is the image of `d r_i / d x_j` in the Laurent ring.
pub fn alexander_matrix(p: &Presentation) -> AlexanderMatrix {
    alexander_matrix_with(p, abelianization(p))
}

/// The Alexander matrix with respect to a given abelianization map.
pub fn alexander_matrix_with(p: &Presentation, abel: AbelStructure) -> AlexanderMatrix {
    let l = p.num_generators();
    let m = p.num_relators();
    let mut entries = vec![LaurentElement::zero(); m * l];
    for (i, r) in p.relators().iter().enumerate() {
        let mut prefix = vec![0i64; l];
        for (g, s) in r.letters() {
            if s > 0 {
                entries[i * l + g].add_term(abel.image(&prefix), 1);
                prefix[g] += 1;
            } else {
                prefix[g] -= 1;
                entries[i * l + g].add_term(abel.image(&prefix), -1);
            }
        }
    }
    AlexanderMatrix {
        abel,
        rows: m,
        cols: l,
        entries,
    }
}

/// Right-hand side check of the fundamental identity
/// `sum_j (d r / d x_j)(x_j - 1) = r - 1`.
pub fn fundamental_identity_holds(w: &Word, num_generators: usize) -> bool {
    let mut lhs = FreeRingElement::zero();
    for j in 0..num_generators {
        let d = fox_derivative(w, j);
        let xj = FreeRingElement::from_word(Word::generator(j))
            .sub(&FreeRingElement::from_word(Word::identity()));
        lhs = lhs.add(&d.mul(&xj));
    }
    let rhs = FreeRingElement::from_word(w.clone())
        .sub(&FreeRingElement::from_word(Word::identity()));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{free, nonorientable_surface, product_of_frees};
    use proptest::prelude::*;

    fn x() -> Word {
        Word::generator(0)
    }
    fn y() -> Word {
        Word::generator(1)
    }

    #[test]
    fn derivative_examples() {
        let xy = x().multiply(&y());
        assert_eq!(fox_derivative(&xy, 0), FreeRingElement::from_word(Word::identity()));
        assert_eq!(fox_derivative(&xy, 1), FreeRingElement::from_word(x()));
        let mut minus_xinv = FreeRingElement::zero();
        minus_xinv.add_term(x().inverse(), -1);
        assert_eq!(fox_derivative(&x().inverse(), 0), minus_xinv);
        let c = Word::commutator(&x(), &y());
        let mut expected = FreeRingElement::from_word(Word::identity());
        expected.add_term(x().multiply(&y()).multiply(&x().inverse()), -1);
        assert_eq!(fox_derivative(&c, 0), expected);
        assert_eq!(fox_derivative(&c, 0).augmentation(), 0);
    }

    #[test]
    fn jacobians() {
        let t2: Presentation = "gens: x, y; rels: [x,y]".parse().unwrap();
        assert_eq!(augmentation_jacobian(&t2), IntMatrix::from_i64(1, 2, &[0, 0]));
        let k: Presentation = "gens: x, y; rels: x^2*y^2".parse().unwrap();
        assert_eq!(augmentation_jacobian(&k), IntMatrix::from_i64(1, 2, &[2, 2]));
        assert_eq!(augmentation_jacobian(&free(3).unwrap()).rows(), 0);
    }

    #[test]
    fn abelianizations() {
        let k = abelianization(&nonorientable_surface(2).unwrap());
        assert_eq!((k.free_rank(), k.torsion()), (1, &[2u64][..]));
        let f21 = abelianization(&product_of_frees(&[2, 1]).unwrap());
        assert_eq!((f21.free_rank(), f21.torsion().len()), (3, 0));
        let z4 = abelianization(&"gens: x; rels: x^4".parse().unwrap());
        assert_eq!((z4.free_rank(), z4.torsion()), (0, &[4u64][..]));
        assert_eq!(k.b1(2), 2);
        assert_eq!(k.b1(3), 1);
        assert_eq!(k.b1(0), 1);
    }

    #[test]
    fn chi_kills_relators_and_inverts_basis() {
        for text in [
            "gens: a, b, c; rels: a^2*b^4*c^-6, [a,b]",
            "gens: x1..x4; rels: x1^2*x2^2*x3^2*x4^2",
            "gens: a, b; rels: a^6, b^4, [a,b]",
        ] {
            let p: Presentation = text.parse().unwrap();
            let ab = abelianization(&p);
            for r in p.relators() {
                assert!(ab.kills(&r.exponent_vector(p.num_generators())));
            }
            for (k, w) in ab.basis().iter().enumerate() {
                let img = ab.image(w);
                for i in 0..ab.free_rank() {
                    assert_eq!(img.free[i], (i == k) as i64);
                }
                for i in 0..ab.torsion().len() {
                    assert_eq!(img.tors[i], (ab.free_rank() + i == k) as u64);
                }
            }
        }
    }

    #[test]
    fn torus_alexander_matrix() {
        let a = alexander_matrix(&"gens: x, y; rels: [x,y]".parse().unwrap());
        assert_eq!(a.rows(), 1);
        // entries are +-(1 - t_k) in the chosen basis; augmentation is zero
        for j in 0..2 {
            assert_eq!(a.get(0, j).terms().len(), 2);
            assert_eq!(a.get(0, j).augmentation(), 0);
        }
        assert_eq!(alexander_matrix(&free(3).unwrap()).rows(), 0);
    }

    #[test]
    fn augmented_alexander_is_jacobian() {
        let p = nonorientable_surface(3).unwrap();
        assert_eq!(alexander_matrix(&p).augmented(), augmentation_jacobian(&p));
    }

    #[test]
    fn cancelling_pairs_do_not_matter() {
        let p: Presentation = "gens: a, b; rels: a*b*a^-1*b^-2".parse().unwrap();
        let q = Presentation::new(
            p.generators().to_vec(),
            vec![Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -2)])],
        );
        assert_eq!(alexander_matrix(&p), alexander_matrix(&q));
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, prop_oneof![Just(1i8), Just(-1i8)]), 0..12)
            .prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn fundamental_identity(w in word_strategy()) {
            prop_assert!(fundamental_identity_holds(&w, 3));
        }

        #[test]
        fn augmentation_is_exponent_sum(w in word_strategy(), j in 0usize..3) {
            prop_assert_eq!(fox_derivative(&w, j).augmentation(), w.exponent_vector(3)[j]);
        }
    }
}
