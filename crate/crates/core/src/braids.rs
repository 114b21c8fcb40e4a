//! Braids, their action on free groups, and arrangement-group presentations.
//!
//! Elementary generators are numbered from 1 and act on `F_k = ⟨x1..xk⟩` by
//! `σi: xi ↦ xi·x(i+1)·xi⁻¹, x(i+1) ↦ xi`. The action of a word is the
//! composite of the elementary actions, so `act(uv) = act(u)∘act(v)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::presentations::{
    direct_product_with_z, nonorientable_surface, orientable_surface, product_of_frees,
    Presentation, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter("a braid needs at least one strand".into()));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands || (s != 1 && s != -1) {
                return Err(Error::InvalidParameter(format!(
                    "letter ({i}, {s}) is not a generator of B_{strands}"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn sigma(strands: usize, i: usize) -> Result<Self> {
        BraidWord::new(strands, vec![(i, 1)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> BraidWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Permutation of the strands induced by the braid, `perm[start] = end`
    /// (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            for p in pos.iter_mut() {
                if *p == i - 1 {
                    *p = i;
                } else if *p == i {
                    *p = i - 1;
                }
            }
        }
        pos
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(a, &b)| a == b)
    }

    /// Exponent sum of each `A_{i,j}` in the abelianized pure braid group,
    /// read off from linking numbers: entry `(i, j)` counts how often strands
    /// `i` and `j` cross, with sign, halved.
    pub fn linking_numbers(&self) -> Vec<Vec<i64>> {
        let k = self.strands;
        let mut link = vec![vec![0i64; k]; k];
        let mut at: Vec<usize> = (0..k).collect();
        for &(i, s) in &self.letters {
            let (a, b) = (at[i - 1], at[i]);
            let (lo, hi) = (a.min(b), a.max(b));
            link[lo][hi] += s as i64;
            at.swap(i - 1, i);
        }
        for row in link.iter_mut() {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        link
    }

    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&(i, s)| if s > 0 { format!("s{i}") } else { format!("s{i}^-1") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// How an elementary generator acts on the free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArtinConvention {
    /// `σi: xi ↦ xi·x(i+1)·xi⁻¹, x(i+1) ↦ xi`.
    #[default]
    Standard,
    /// `σi: xi ↦ x(i+1), x(i+1) ↦ x(i+1)⁻¹·xi·x(i+1)`.
    Opposite,
}

/// Whether the strands brought together for a full twist pass over or under
/// the strands between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwistConvention {
    #[default]
    Over,
    Under,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        FreeAutomorphism {
            rank,
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    /// Checks that the abelianization is invertible over Z, a necessary
    /// condition for the images to generate.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        if images.iter().any(|w| w.max_generator().is_some_and(|m| m >= rank)) {
            return Err(Error::InvalidParameter(
                "image uses a generator outside the free group".into(),
            ));
        }
        let f = FreeAutomorphism { rank, images };
        let det = f.abelianization().determinant();
        if det != 1.into() && det != (-1).into() {
            return Err(Error::InvalidParameter(format!(
                "abelianized map has determinant {det}"
            )));
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self∘other`: apply `other` first.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch);
        }
        Ok(FreeAutomorphism {
            rank: self.rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    /// Row `i` is the exponent vector of the image of `x(i+1)`.
    pub fn abelianization(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .images
            .iter()
            .map(|w| w.exponent_vector(self.rank))
            .collect();
        IntMatrix::from_rows(self.rank, &rows)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i))
    }
}

fn elementary(rank: usize, i: usize, sign: i8, conv: ArtinConvention) -> FreeAutomorphism {
    let (a, b) = (i - 1, i);
    let xa = Word::generator(a);
    let xb = Word::generator(b);
    let forward = match conv {
        ArtinConvention::Standard => sign > 0,
        ArtinConvention::Opposite => sign < 0,
    };
    let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
    if forward {
        images[a] = xb.conjugate_by(&xa.inverse());
        images[b] = xa;
    } else {
        images[a] = xb.clone();
        images[b] = xa.conjugate_by(&xb);
    }
    FreeAutomorphism { rank, images }
}

pub fn artin_action(b: &BraidWord) -> FreeAutomorphism {
    artin_action_with(b, ArtinConvention::Standard)
}

pub fn artin_action_with(b: &BraidWord, conv: ArtinConvention) -> FreeAutomorphism {
    let mut acc = FreeAutomorphism::identity(b.strands);
    for &(i, s) in &b.letters {
        let e = elementary(b.strands, i, s, conv);
        acc.images = e.images.iter().map(|w| acc.apply(w)).collect();
    }
    acc
}

/// `A_{i,j} = (σ(j−1)⋯σ(i+1))·σi²·(σ(i+1)⁻¹⋯σ(j−1)⁻¹)`.
pub fn pure_generator(i: usize, j: usize, k: usize) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= k) {
        return Err(Error::InvalidParameter(format!(
            "A_({i},{j}) is not a pure braid generator on {k} strands"
        )));
    }
    let mut letters: Vec<(usize, i8)> = (i + 1..j).rev().map(|m| (m, 1)).collect();
    letters.push((i, 1));
    letters.push((i, 1));
    letters.extend((i + 1..j).map(|m| (m, -1)));
    BraidWord::new(k, letters)
}

pub fn full_twist(indices: &[usize], k: usize) -> Result<BraidWord> {
    full_twist_with(indices, k, TwistConvention::Over)
}

/// Full twist `A_I` on the strands in `indices`. The strands are slid next to
/// the smallest one by a braid `S`, twisted once around each other, and slid
/// back; the result is `S·Δ²·S⁻¹`. For two strands this is `A_{i,j}`.
pub fn full_twist_with(indices: &[usize], k: usize, conv: TwistConvention) -> Result<BraidWord> {
    let set: BTreeSet<usize> = indices.iter().copied().collect();
    if set.len() < 2 || set.len() != indices.len() {
        return Err(Error::InvalidParameter("a full twist needs at least two distinct strands".into()));
    }
    if set.iter().any(|&i| i == 0 || i > k) {
        return Err(Error::InvalidParameter(format!("strand index out of range 1..{k}")));
    }
    let idx: Vec<usize> = set.into_iter().collect();
    let first = idx[0];
    let m = idx.len();
    let sign: i8 = match conv {
        TwistConvention::Over => 1,
        TwistConvention::Under => -1,
    };
    let mut slide = Vec::new();
    for (r, &ir) in idx.iter().enumerate().skip(1) {
        let target = first + r;
        slide.extend((target..ir).rev().map(|l| (l, sign)));
    }
    let slide = BraidWord::new(k, slide)?;
    let mut twist = Vec::with_capacity(m * (m - 1));
    for _ in 0..m {
        twist.extend((first..first + m - 1).map(|l| (l, 1)));
    }
    let twist = BraidWord::new(k, twist)?;
    slide.multiply(&twist)?.multiply(&slide.inverse())
}

/// `a^b = b⁻¹·a·b`.
pub fn conjugate_braid(a: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
    b.inverse().multiply(a)?.multiply(b)
}

fn check_permutation(tau: &[usize]) -> Result<()> {
    let n = tau.len();
    let mut seen = vec![false; n + 1];
    for &t in tau {
        if t == 0 || t > n || seen[t] {
            return Err(Error::InvalidParameter(format!(
                "{tau:?} is not a permutation of 1..{n}"
            )));
        }
        seen[t] = true;
    }
    Ok(())
}

/// Parses a permutation written as a digit string such as `31425`, or as a
/// comma-separated list.
pub fn parse_permutation(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let tau: Vec<usize> = if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("bad permutation `{s}`: {e}")))?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidParameter(format!("bad permutation `{s}`")))?
    };
    check_permutation(&tau)?;
    Ok(tau)
}

/// The braid `ξ = ξ2⋯ξ(n−1)` of the horizontal arrangement with permutation
/// `tau`, with `ξj = ∏_{i<j} A_{i,j}^{e(i,j)}`. The exponent `e(i,j)` is 1
/// when `i` and `j` are inverted by `tau⁻¹`.
pub fn xi_from_permutation(tau: &[usize]) -> Result<BraidWord> {
    check_permutation(tau)?;
    let n = tau.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two planes".into()));
    }
    let mut inv = vec![0; n + 1];
    for (pos, &t) in tau.iter().enumerate() {
        inv[t] = pos + 1;
    }
    let k = n - 1;
    let mut xi = BraidWord::identity(k);
    for j in 2..=k {
        for i in 1..j {
            if inv[i] > inv[j] {
                xi = xi.multiply(&pure_generator(i, j, k)?)?;
            }
        }
    }
    Ok(xi)
}

fn check_ranks(phis: &[FreeAutomorphism]) -> Result<usize> {
    let k = phis
        .first()
        .map(|f| f.rank)
        .ok_or_else(|| Error::InvalidParameter("no automorphisms given".into()))?;
    if phis.iter().any(|f| f.rank != k) {
        return Err(Error::RankMismatch);
    }
    Ok(k)
}

fn numbered(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// `F_k ⋊ F_m` with generators `x1..xk, y1..ym` and relators
/// `yj⁻¹·xi·yj·φj(xi)⁻¹`, i.e. `xi^yj = φj(xi)`, optionally times a
/// central `z`.
pub fn semidirect_presentation(phis: &[FreeAutomorphism], central: bool) -> Result<Presentation> {
    let k = check_ranks(phis)?;
    let m = phis.len();
    let mut generators: Vec<String> = numbered("x", k).collect();
    generators.extend(numbered("y", m));
    let mut relators = Vec::new();
    for (j, phi) in phis.iter().enumerate() {
        let y = Word::generator(k + j);
        for i in 0..k {
            let r = Word::generator(i)
                .conjugate_by(&y)
                .multiply(&phi.images[i].inverse());
            relators.push(r);
        }
    }
    let p = Presentation::new(generators, relators);
    Ok(if central { direct_product_with_z(&p) } else { p })
}

/// `⟨x1..xk | φj(xi) = xi⟩`, optionally times a central `z`.
pub fn decone_presentation(phis: &[FreeAutomorphism], central: bool) -> Result<Presentation> {
    let k = check_ranks(phis)?;
    let mut relators = Vec::new();
    for phi in phis {
        for i in 0..k {
            let r = phi.images[i].multiply(&Word::generator(i).inverse());
            if !r.is_identity() {
                relators.push(r);
            }
        }
    }
    let p = Presentation::new(numbered("x", k).collect(), relators);
    Ok(if central { direct_product_with_z(&p) } else { p })
}

/// Artin's presentation of the pure braid group `P_n` on generators `a_ij`:
/// for `r < s`, `i < j` and `s < j`, conjugating `A_ij` by `A_rs` gives
/// `A_ij` when the pairs are unlinked or nested, and otherwise a conjugate of
/// `A_ij` by a word in `A_rj`, `A_sj`.
pub fn pure_braid_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::InvalidParameter("P_n needs n ≥ 2".into()));
    }
    let mut pairs = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            pairs.push((i, j));
        }
    }
    let names: Vec<String> = pairs.iter().map(|(i, j)| format!("a{i}{j}")).collect();
    let g = |i: usize, j: usize| {
        Word::generator(pairs.iter().position(|&p| p == (i, j)).unwrap())
    };
    let mut relators = Vec::new();
    for &(r, s) in &pairs {
        for &(i, j) in &pairs {
            if !(s < j) {
                continue;
            }
            let a = g(i, j);
            let rhs = if s < i || i < r {
                a.clone()
            } else if s == i {
                a.conjugate_by(&g(r, j).inverse())
            } else if i == r {
                a.conjugate_by(&g(r, j).multiply(&g(s, j)).inverse())
            } else if r < i && i < s {
                let c = Word::commutator(&g(r, j), &g(s, j));
                a.conjugate_by(&c.inverse())
            } else {
                continue;
            };
            let lhs = a.conjugate_by(&g(r, s));
            relators.push(lhs.multiply(&rhs.inverse()));
        }
    }
    Ok(Presentation::new(names, relators))
}

/// `F_(n−1) ⋊_{ξ²} Z` for the horizontal arrangement `A(tau)`.
pub fn horizontal_presentation(tau: &[usize]) -> Result<Presentation> {
    horizontal_presentation_with(tau, ArtinConvention::Standard)
}

pub fn horizontal_presentation_with(tau: &[usize], conv: ArtinConvention) -> Result<Presentation> {
    let xi = xi_from_permutation(tau)?;
    let phi = artin_action_with(&xi.pow(2), conv);
    semidirect_presentation(&[phi], false)
}

fn a(i: usize, j: usize, k: usize) -> BraidWord {
    pure_generator(i, j, k).unwrap()
}

fn twist(indices: &[usize], k: usize, conv: TwistConvention) -> BraidWord {
    full_twist_with(indices, k, conv).unwrap()
}

fn conj(x: &BraidWord, y: &BraidWord) -> BraidWord {
    conjugate_braid(x, y).unwrap()
}

fn mul(x: &BraidWord, y: &BraidWord) -> BraidWord {
    x.multiply(y).unwrap()
}

/// Monodromy braids of the decone of the non-Fano arrangement, on 6 strands:
/// `A_345, A_125^(A_35·A_45), A_14^(A_34), A_136, A_246^(A_34·A_36)`.
pub fn non_fano_monodromy(conv: TwistConvention) -> Vec<BraidWord> {
    let k = 6;
    vec![
        twist(&[3, 4, 5], k, conv),
        conj(&twist(&[1, 2, 5], k, conv), &mul(&a(3, 5, k), &a(4, 5, k))),
        conj(&a(1, 4, k), &a(3, 4, k)),
        twist(&[1, 3, 6], k, conv),
        conj(&twist(&[2, 4, 6], k, conv), &mul(&a(3, 4, k), &a(3, 6, k))),
    ]
}

pub fn non_fano_presentation(conv: TwistConvention) -> Result<Presentation> {
    let phis: Vec<_> = non_fano_monodromy(conv).iter().map(artin_action).collect();
    decone_presentation(&phis, true)
}

/// `α = {A_23, A_13^(A_23)·A_24, A_14^(A_24)}` in `P_4`.
pub fn deleted_b3_monodromy() -> Vec<BraidWord> {
    let k = 4;
    vec![
        a(2, 3, k),
        mul(&conj(&a(1, 3, k), &a(2, 3, k)), &a(2, 4, k)),
        conj(&a(1, 4, k), &a(2, 4, k)),
    ]
}

pub fn deleted_b3_presentation() -> Result<Presentation> {
    let phis: Vec<_> = deleted_b3_monodromy().iter().map(artin_action).collect();
    semidirect_presentation(&phis, true)
}

const BRAID_ARRANGEMENT: &str = include_str!("../presentations/braid_arrangement.txt");
const NON_FANO: &str = include_str!("../presentations/non_fano.txt");
const DELETED_B3: &str = include_str!("../presentations/deleted_B3.txt");

/// Names of the frozen fixtures, with their file contents.
pub fn frozen_fixtures() -> [(&'static str, &'static str); 3] {
    [
        ("braid_arrangement", BRAID_ARRANGEMENT),
        ("non_fano", NON_FANO),
        ("deleted_B3", DELETED_B3),
    ]
}

/// Text written to the frozen fixture files.
pub fn fixture_source(name: &str) -> Result<String> {
    let (p, what) = match name {
        "braid_arrangement" => (pure_braid_presentation(4)?, "pure braid group P4"),
        "non_fano" => (
            non_fano_presentation(TwistConvention::Over)?,
            "non-Fano arrangement, decone presentation times Z",
        ),
        "deleted_B3" => (deleted_b3_presentation()?, "deleted B3 arrangement, (F4 x| F3) x Z"),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(format!("# {what}\n{}\n", p.render()))
}

fn parse_ranks(s: &str) -> Option<Vec<usize>> {
    s.split('x')
        .map(|f| f.trim().strip_prefix('F')?.parse().ok())
        .collect()
}

/// Built-in groups by name.
///
/// * `braid_arrangement`, `non_fano`, `deleted_B3`: frozen arrangement groups
/// * `A(31425)` or `horizontal:31425`: horizontal 2-arrangement groups
/// * `F3`, `F2xF1xF1`: free groups and products of free groups
/// * `Z3`: free abelian group
/// * `S2`: closed orientable surface of genus 2
/// * `N3`: connected sum of 3 projective planes
pub fn fixture(name: &str) -> Result<Presentation> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let name = name.trim();
    if let Some((_, text)) = frozen_fixtures().iter().find(|(n, _)| *n == name) {
        return Ok(text.parse()?);
    }
    let perm = name
        .strip_prefix("horizontal:")
        .or_else(|| name.strip_prefix("A(").and_then(|s| s.strip_suffix(')')));
    if let Some(perm) = perm {
        return horizontal_presentation(&parse_permutation(perm)?);
    }
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = number("Z") {
        return product_of_frees(&vec![1; n]);
    }
    if let Some(g) = number("S") {
        return orientable_surface(g);
    }
    if let Some(n) = number("N") {
        return nonorientable_surface(n);
    }
    if name.starts_with('F') {
        let ranks = parse_ranks(name).ok_or_else(unknown)?;
        return product_of_frees(&ranks);
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &str, gens: usize) -> Word {
        let text = format!(
            "gens: x1..x{gens}; rels: {p}"
        );
        let pres: Presentation = text.parse().unwrap();
        pres.relators()[0].clone()
    }

    #[test]
    fn sigma_one_on_two_strands() {
        let f = artin_action(&BraidWord::sigma(2, 1).unwrap());
        assert_eq!(f.images(), &[w("x1*x2*x1^-1", 2), w("x1", 2)]);
        let f2 = artin_action(&BraidWord::sigma(2, 1).unwrap().pow(2));
        assert_eq!(f2.images(), &[w("x1*x2*x1*x2^-1*x1^-1", 2), w("x1*x2*x1^-1", 2)]);
        assert!(artin_action(&BraidWord::identity(3)).is_identity());
    }

    #[test]
    fn braid_relations_hold() {
        for conv in [ArtinConvention::Standard, ArtinConvention::Opposite] {
            for k in 2..=6 {
                for i in 1..k - 1 {
                    let l = BraidWord::new(k, vec![(i, 1), (i + 1, 1), (i, 1)]).unwrap();
                    let r = BraidWord::new(k, vec![(i + 1, 1), (i, 1), (i + 1, 1)]).unwrap();
                    assert_eq!(artin_action_with(&l, conv), artin_action_with(&r, conv));
                }
                for i in 1..k {
                    for j in i + 2..k {
                        let l = BraidWord::new(k, vec![(i, 1), (j, -1)]).unwrap();
                        let r = BraidWord::new(k, vec![(j, -1), (i, 1)]).unwrap();
                        assert_eq!(artin_action_with(&l, conv), artin_action_with(&r, conv));
                    }
                    let b = BraidWord::new(k, vec![(i, 1), (i, -1)]).unwrap();
                    assert!(artin_action_with(&b, conv).is_identity());
                }
            }
        }
    }

    #[test]
    fn pure_generators() {
        assert_eq!(pure_generator(1, 2, 2).unwrap().letters(), &[(1, 1), (1, 1)]);
        assert_eq!(
            pure_generator(1, 3, 3).unwrap().letters(),
            &[(2, 1), (1, 1), (1, 1), (2, -1)]
        );
        assert!(pure_generator(2, 2, 3).is_err());
        assert!(pure_generator(1, 4, 3).is_err());
        for k in 2..=5 {
            for j in 2..=k {
                for i in 1..j {
                    let b = pure_generator(i, j, k).unwrap();
                    assert!(b.is_pure());
                    let link = b.linking_numbers();
                    for (s, row) in link.iter().enumerate() {
                        for (t, &v) in row.iter().enumerate() {
                            let hit = (s + 1, t + 1) == (i, j);
                            assert_eq!(v, hit as i64);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_twist_is_central_conjugation() {
        let t = full_twist(&[1, 2, 3], 3).unwrap();
        assert_eq!(t, BraidWord::new(3, vec![(1, 1), (2, 1)]).unwrap().pow(3));
        let f = artin_action(&t);
        let prod = w("x1*x2*x3", 3);
        for i in 0..3 {
            let x = Word::generator(i);
            assert_eq!(f.apply(&x), x.conjugate_by(&prod.inverse()));
        }
        for conv in [TwistConvention::Over, TwistConvention::Under] {
            assert_eq!(
                full_twist_with(&[2, 4], 5, conv).unwrap().letters().len(),
                4
            );
        }
        assert_eq!(full_twist(&[1, 3], 4).unwrap(), pure_generator(1, 3, 4).unwrap());
        assert!(full_twist(&[2], 3).is_err());
        assert!(full_twist(&[1, 5], 4).is_err());
    }

    #[test]
    fn pure_braids_fix_boundary_and_homology() {
        let mut samples = Vec::new();
        for k in 2..=5 {
            for j in 2..=k {
                for i in 1..j {
                    samples.push(pure_generator(i, j, k).unwrap());
                }
            }
        }
        for conv in [TwistConvention::Over, TwistConvention::Under] {
            samples.push(full_twist_with(&[1, 3, 5], 6, conv).unwrap());
            samples.push(full_twist_with(&[2, 4, 6], 6, conv).unwrap());
            samples.extend(non_fano_monodromy(conv));
        }
        samples.extend(deleted_b3_monodromy());
        samples.push(xi_from_permutation(&[3, 1, 4, 2, 5]).unwrap().pow(2));
        for b in &samples {
            assert!(b.is_pure());
            let k = b.strands();
            let f = artin_action(b);
            let boundary = Word::from_syllables((0..k).map(|i| (i, 1)));
            assert_eq!(f.apply(&boundary), boundary, "{}", b.render());
            assert_eq!(f.abelianization(), IntMatrix::identity(k));
        }
    }

    #[test]
    fn conjugation_is_functorial() {
        let k = 4;
        let x = pure_generator(1, 2, k).unwrap();
        let y = pure_generator(2, 3, k).unwrap();
        let c = conjugate_braid(&x, &y).unwrap();
        let mut letters = y.inverse().letters().to_vec();
        letters.extend_from_slice(x.letters());
        letters.extend_from_slice(y.letters());
        assert_eq!(c.letters(), &letters[..]);
        let lhs = artin_action(&c);
        let rhs = artin_action(&y.inverse())
            .compose(&artin_action(&x))
            .unwrap()
            .compose(&artin_action(&y))
            .unwrap();
        assert_eq!(lhs, rhs);
        let e = BraidWord::identity(k);
        assert_eq!(conjugate_braid(&x, &e).unwrap(), x);
        assert!(conjugate_braid(&x, &BraidWord::identity(3)).is_err());
    }

    #[test]
    fn xi_examples() {
        assert_eq!(
            xi_from_permutation(&[2, 1, 3, 4]).unwrap(),
            pure_generator(1, 2, 3).unwrap()
        );
        let expected = mul(&mul(&a(1, 3, 4), &a(2, 3, 4)), &a(2, 4, 4));
        assert_eq!(xi_from_permutation(&[3, 1, 4, 2, 5]).unwrap(), expected);
        assert!(xi_from_permutation(&[1, 2, 3, 4, 5]).unwrap().is_empty());
        assert!(xi_from_permutation(&[1, 1, 2]).is_err());
        assert_eq!(parse_permutation("31425").unwrap(), vec![3, 1, 4, 2, 5]);
        assert_eq!(parse_permutation("2,1,3").unwrap(), vec![2, 1, 3]);
        assert!(parse_permutation("3152").is_err());
    }

    #[test]
    fn semidirect_shapes() {
        let p = semidirect_presentation(&[FreeAutomorphism::identity(1)], false).unwrap();
        assert_eq!(p.num_generators(), 2);
        let h = crate::foxcalc::abelianization(&p);
        assert_eq!((h.free_rank(), h.torsion().len()), (2, 0));
        let p = horizontal_presentation(&[2, 1, 3, 4]).unwrap();
        assert_eq!((p.num_generators(), p.num_relators()), (4, 3));
        assert_eq!(crate::foxcalc::abelianization(&p).free_rank(), 4);
        let q = deleted_b3_presentation().unwrap();
        assert_eq!(q.num_generators(), 8);
        assert_eq!(crate::foxcalc::abelianization(&q).free_rank(), 8);
        assert!(semidirect_presentation(
            &[FreeAutomorphism::identity(2), FreeAutomorphism::identity(3)],
            false
        )
        .is_err());
        assert!(FreeAutomorphism::new(vec![w("x1^2", 2), w("x2", 2)]).is_err());
    }

    #[test]
    fn frozen_fixtures_match_builders() {
        for (name, text) in frozen_fixtures() {
            let built = fixture_source(name).unwrap();
            if std::env::var_os("HALLINV_REGENERATE").is_some() {
                let path = format!("{}/presentations/{name}.txt", env!("CARGO_MANIFEST_DIR"));
                std::fs::write(path, &built).unwrap();
                continue;
            }
            assert_eq!(text, built, "fixture {name} is stale");
        }
    }

    #[test]
    fn named_fixtures() {
        assert_eq!(fixture("F3").unwrap().num_generators(), 3);
        assert_eq!(fixture("F2xF1").unwrap().num_relators(), 2);
        assert_eq!(fixture("Z2").unwrap().num_relators(), 1);
        assert_eq!(fixture("S2").unwrap().num_generators(), 4);
        assert_eq!(fixture("N3").unwrap().num_generators(), 3);
        assert_eq!(fixture("A(2134)").unwrap(), fixture("horizontal:2134").unwrap());
        let p4 = fixture("braid_arrangement").unwrap();
        assert_eq!(p4.num_generators(), 6);
        assert_eq!(crate::foxcalc::abelianization(&p4).free_rank(), 6);
        assert_eq!(fixture("non_fano").unwrap().num_generators(), 7);
        assert!(matches!(fixture("K7"), Err(Error::UnknownFixture(_))));
    }
}
