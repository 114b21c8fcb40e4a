//! Characters, depth, torsion points on characteristic varieties and Betti
//! numbers of finite abelian covers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{divisors, prime_factors, totient};
use crate::error::{Error, Result};
use crate::fields::{sufficiently_large_field, Elem, Field};
use crate::foxcalc::{abelianization, alexander_matrix, AbelStructure, AlexanderMatrix};
use crate::presentations::Presentation;

/// Coordinates of a character all of whose values are powers of one root of
/// unity `zeta` of order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootExponents {
    pub order: u64,
    pub free: Vec<u64>,
    pub tors: Vec<u64>,
    /// `zeta^k` for `k = 0..order`.
    pub powers: Arc<Vec<Elem>>,
}

/// A point of `Hom(G, K^*)`, written in the coordinates of an [`AbelStructure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    field: Field,
    free_values: Vec<Elem>,
    torsion_values: Vec<Elem>,
    root: Option<RootExponents>,
}

/// Powers `zeta^0 .. zeta^(n-1)`.
pub fn root_powers(field: &Field, zeta: &Elem, n: u64) -> Arc<Vec<Elem>> {
    let mut out = Vec::with_capacity(n as usize);
    let mut x = field.one();
    for _ in 0..n {
        out.push(x.clone());
        x = field.mul(&x, zeta);
    }
    Arc::new(out)
}

impl Character {
    /// A character from explicit values; torsion values must satisfy `v^e = 1`.
    pub fn new(
        field: &Field,
        free_values: Vec<Elem>,
        torsion_values: Vec<Elem>,
        torsion: &[u64],
    ) -> Result<Character> {
        if torsion_values.len() != torsion.len() {
            return Err(Error::InvalidParameter("wrong number of torsion values".into()));
        }
        for v in free_values.iter().chain(&torsion_values) {
            if field.is_zero(v) {
                return Err(Error::InvalidParameter("character values must be units".into()));
            }
        }
        for (v, &e) in torsion_values.iter().zip(torsion) {
            if !field.is_one(&field.pow(v, e as i64)?) {
                return Err(Error::InvalidParameter(format!(
                    "torsion value is not an {e}-th root of unity"
                )));
            }
        }
        Ok(Character {
            field: field.clone(),
            free_values,
            torsion_values,
            root: None,
        })
    }

    /// The character with coordinates `zeta^free[i]` and `zeta^tors[i]`.
    pub fn from_root_exponents(
        field: &Field,
        powers: Arc<Vec<Elem>>,
        free: Vec<u64>,
        tors: Vec<u64>,
        torsion: &[u64],
    ) -> Result<Character> {
        let order = powers.len() as u64;
        for (&b, &e) in tors.iter().zip(torsion) {
            if (b * e) % order != 0 {
                return Err(Error::InvalidParameter(format!(
                    "torsion coordinate of order {e} cannot take the value zeta^{b}"
                )));
            }
        }
        let free_values = free.iter().map(|&a| powers[(a % order) as usize].clone()).collect();
        let torsion_values = tors.iter().map(|&b| powers[(b % order) as usize].clone()).collect();
        Ok(Character {
            field: field.clone(),
            free_values,
            torsion_values,
            root: Some(RootExponents {
                order,
                free,
                tors,
                powers,
            }),
        })
    }

    /// The character sending generator `g` to `zeta^images[g]`, where `zeta`
    /// generates `powers`. Fails unless the assignment kills every relator.
    pub fn from_generator_exponents(
        abel: &AbelStructure,
        field: &Field,
        powers: Arc<Vec<Elem>>,
        images: &[i64],
    ) -> Result<Character> {
        let n = powers.len() as i64;
        if images.len() != abel.num_generators() {
            return Err(Error::InvalidParameter("one image per generator is required".into()));
        }
        let coords: Vec<u64> = abel
            .basis()
            .iter()
            .map(|w| {
                w.iter()
                    .zip(images)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(n) as u64
            })
            .collect();
        // Well defined iff each generator's image is recovered from the coordinates.
        for (g, row) in abel.chi().iter().enumerate() {
            let back: i64 = row.iter().zip(&coords).map(|(&c, &x)| c * x as i64).sum();
            if (back - images[g]).rem_euclid(n) != 0 {
                return Err(Error::NotHomomorphism(g));
            }
        }
        let (free, tors) = coords.split_at(abel.free_rank());
        Self::from_root_exponents(field, powers, free.to_vec(), tors.to_vec(), abel.torsion())
    }

    pub fn trivial(field: &Field, abel: &AbelStructure) -> Character {
        let powers = Arc::new(vec![field.one()]);
        Self::from_root_exponents(
            field,
            powers,
            vec![0; abel.free_rank()],
            vec![0; abel.torsion().len()],
            abel.torsion(),
        )
        .expect("the trivial character is valid")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn free_values(&self) -> &[Elem] {
        &self.free_values
    }

    pub fn torsion_values(&self) -> &[Elem] {
        &self.torsion_values
    }

    pub fn free_rank(&self) -> usize {
        self.free_values.len()
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion_values.len()
    }

    pub fn root_exponents(&self) -> Option<&RootExponents> {
        self.root.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_values
            .iter()
            .chain(&self.torsion_values)
            .all(|v| self.field.is_one(v))
    }

    /// Least common multiple of the orders of all coordinates.
    ///
    /// Returns `None` if some coordinate has infinite order (only possible in
    /// characteristic zero with values that are not roots of unity).
    pub fn order(&self) -> Option<u64> {
        if let Some(r) = &self.root {
            let g = r
                .free
                .iter()
                .chain(&r.tors)
                .fold(r.order, |acc, &x| acc.gcd(&x));
            return Some(r.order / g);
        }
        let mut l = 1u64;
        for v in self.free_values.iter().chain(&self.torsion_values) {
            l = l.lcm(&self.field.multiplicative_order_of(v, 1 << 16)?);
        }
        Some(l)
    }

    /// `t^j`.
    pub fn power(&self, j: i64) -> Result<Character> {
        if let Some(r) = &self.root {
            let m = r.order as i64;
            let scale = |x: &u64| ((*x as i64 * j).rem_euclid(m)) as u64;
            return Ok(Character {
                field: self.field.clone(),
                free_values: r.free.iter().map(|x| r.powers[scale(x) as usize].clone()).collect(),
                torsion_values: r.tors.iter().map(|x| r.powers[scale(x) as usize].clone()).collect(),
                root: Some(RootExponents {
                    order: r.order,
                    free: r.free.iter().map(scale).collect(),
                    tors: r.tors.iter().map(scale).collect(),
                    powers: r.powers.clone(),
                }),
            });
        }
        let p = |v: &Elem| self.field.pow(v, j);
        Ok(Character {
            field: self.field.clone(),
            free_values: self.free_values.iter().map(p).collect::<Result<_>>()?,
            torsion_values: self.torsion_values.iter().map(p).collect::<Result<_>>()?,
            root: None,
        })
    }

    /// Drops the root-of-unity coordinates, forcing the general evaluation path.
    pub fn without_root_data(&self) -> Character {
        Character {
            root: None,
            ..self.clone()
        }
    }
}

/// `corank(A^t) - 1`. For nontrivial `t` this is the largest `d` with `t` in
/// the `d`-th characteristic variety; at the trivial character it is
/// `b_1` in the field's characteristic minus one.
pub fn depth(a: &AlexanderMatrix, t: &Character) -> Result<i64> {
    let m = a.evaluate(t)?;
    Ok(m.cols() as i64 - m.rank() as i64 - 1)
}

/// Index space of the order-`p` characters: nonzero digit vectors in base `p`
/// over the `n_p` coordinates that admit a `p`-th root of unity.
#[derive(Clone, Debug)]
pub struct OrderPCharacters {
    field: Field,
    powers: Arc<Vec<Elem>>,
    p: u64,
    free_rank: usize,
    torsion: Vec<u64>,
    /// Torsion coordinates divisible by `p`.
    active_tors: Vec<usize>,
}

impl OrderPCharacters {
    pub fn new(abel: &AbelStructure, p: u64, field: &Field, zeta: &Elem) -> Self {
        let active_tors = abel
            .torsion()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e % p == 0)
            .map(|(i, _)| i)
            .collect();
        OrderPCharacters {
            field: field.clone(),
            powers: root_powers(field, zeta, p),
            p,
            free_rank: abel.free_rank(),
            torsion: abel.torsion().to_vec(),
            active_tors,
        }
    }

    /// `n_p`.
    pub fn dim(&self) -> usize {
        self.free_rank + self.active_tors.len()
    }

    /// `p^{n_p} - 1`.
    pub fn count(&self) -> u64 {
        self.p.pow(self.dim() as u32) - 1
    }

    /// Base-`p` digits of `index`, least significant first.
    pub fn digits(&self, mut index: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.dim());
        for _ in 0..self.dim() {
            d.push(index % self.p);
            index /= self.p;
        }
        d
    }

    pub fn index_of(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// The character with index `1..=count()`.
    pub fn character(&self, index: u64) -> Character {
        let d = self.digits(index);
        let free = d[..self.free_rank].to_vec();
        let mut tors = vec![0u64; self.torsion.len()];
        for (k, &i) in self.active_tors.iter().enumerate() {
            tors[i] = d[self.free_rank + k];
        }
        Character::from_root_exponents(&self.field, self.powers.clone(), free, tors, &self.torsion)
            .expect("digits respect torsion orders")
    }

    /// Index of `t^j` for the character with the given index.
    pub fn power_index(&self, index: u64, j: u64) -> u64 {
        let d: Vec<u64> = self.digits(index).iter().map(|x| x * j % self.p).collect();
        self.index_of(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = Character> + '_ {
        (1..=self.count()).map(|i| self.character(i))
    }
}

/// All `p^{n_p} - 1` characters of order exactly `p`.
pub fn enumerate_order_p_characters(
    abel: &AbelStructure,
    p: u64,
    field: &Field,
) -> Result<Vec<Character>> {
    if field.characteristic() == p {
        return Err(Error::CharacteristicDivides {
            q: p,
            order: p,
        });
    }
    let zeta = field.primitive_root_of_unity(p)?;
    Ok(OrderPCharacters::new(abel, p, field, &zeta).iter().collect())
}

/// The distribution `d -> beta_{p,d}` of Betti-number jumps over index-`p`
/// normal subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiDistribution {
    pub p: u64,
    pub q: u64,
    pub n_p: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl BettiDistribution {
    /// `(p^{n_p} - 1)/(p - 1)`, the number of index-`p` normal subgroups.
    pub fn total(&self) -> u64 {
        (self.p.pow(self.n_p as u32) - 1) / (self.p - 1)
    }

    pub fn get(&self, d: usize) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// `(beta_1, ..., beta_D)` up to the largest nonzero `d`.
    pub fn positive_part(&self) -> Vec<u64> {
        let max = self.counts.iter().filter(|(_, &c)| c > 0).map(|(&d, _)| d).max();
        match max {
            Some(m) if m >= 1 => (1..=m).map(|d| self.get(d)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn check_sum(&self) -> Result<()> {
        let s: u64 = self.counts.values().sum();
        if s == self.total() {
            Ok(())
        } else {
            Err(Error::BoundViolation(format!(
                "beta counts sum to {s}, expected {}",
                self.total()
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaOptions {
    /// Use `zeta^j` for the least `j > 1` prime to `p` instead of `zeta`.
    pub alternate_root: bool,
    /// Evaluate every character and assert that Galois conjugates share a depth.
    pub check_galois: bool,
}

impl Default for BetaOptions {
    fn default() -> Self {
        BetaOptions {
            alternate_root: false,
            check_galois: true,
        }
    }
}

/// Depths of all order-`p` characters, indexed as in [`OrderPCharacters`].
pub fn order_p_depths(
    a: &AlexanderMatrix,
    p: u64,
    q: u64,
    opts: BetaOptions,
) -> Result<(OrderPCharacters, Vec<i64>)> {
    if p == q {
        return Err(Error::CharacteristicDivides { q, order: p });
    }
    let field = sufficiently_large_field(p, q)?;
    let mut zeta = field.primitive_root_of_unity(p)?;
    if opts.alternate_root && p > 2 {
        zeta = field.pow(&zeta, 2)?;
    }
    let chars = OrderPCharacters::new(a.abel(), p, &field, &zeta);
    let count = chars.count();
    let wanted: Vec<u64> = if opts.check_galois {
        (1..=count).collect()
    } else {
        (1..=count).filter(|&i| is_orbit_leader(&chars, i)).collect()
    };
    let computed: Vec<(u64, i64)> = wanted
        .par_iter()
        .map(|&i| depth(a, &chars.character(i)).map(|d| (i, d)))
        .collect::<Result<_>>()?;
    let mut depths = vec![-2i64; count as usize + 1];
    for (i, d) in computed {
        depths[i as usize] = d;
    }
    if !opts.check_galois {
        for i in 1..=count {
            if depths[i as usize] == -2 {
                depths[i as usize] = depths[leader(&chars, i) as usize];
            }
        }
    }
    Ok((chars, depths))
}

/// The representative with first nonzero digit equal to one.
fn leader(chars: &OrderPCharacters, index: u64) -> u64 {
    let d = chars.digits(index);
    let first = *d.iter().find(|&&x| x != 0).expect("nontrivial character");
    let inv = (1..chars.p).find(|&j| j * first % chars.p == 1).unwrap();
    chars.power_index(index, inv)
}

fn is_orbit_leader(chars: &OrderPCharacters, index: u64) -> bool {
    leader(chars, index) == index
}

/// `beta_{p,d}^{(q)}(G)` for all `d`.
pub fn beta_distribution(p: &Presentation, prime: u64, q: u64) -> Result<BettiDistribution> {
    beta_distribution_with(&alexander_matrix(p), prime, q, BetaOptions::default())
}

pub fn beta_distribution_with(
    a: &AlexanderMatrix,
    p: u64,
    q: u64,
    opts: BetaOptions,
) -> Result<BettiDistribution> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let (chars, depths) = order_p_depths(a, p, q, opts)?;
    let count = chars.count();
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    for i in 1..=count {
        let d = depths[i as usize];
        if d < 0 {
            return Err(Error::BoundViolation(format!(
                "nontrivial character with negative depth {d}"
            )));
        }
        for j in 2..p {
            let dj = depths[chars.power_index(i, j) as usize];
            if dj != d {
                return Err(Error::InexactDivision(format!(
                    "Galois conjugate characters have depths {d} and {dj} over {}",
                    sufficiently_large_field(p, q)?.name()
                )));
            }
        }
        *tally.entry(d as usize).or_insert(0) += 1;
    }
    let mut counts = BTreeMap::new();
    let mut positive = 0;
    for (&d, &c) in &tally {
        if d >= 1 {
            let b = crate::arith::exact_div_u64(c, p - 1, "orbit count")?;
            counts.insert(d, b);
            positive += b;
        }
    }
    let n_p = chars.dim();
    let total = (p.pow(n_p as u32) - 1) / (p - 1);
    counts.insert(0, total - positive);
    let dist = BettiDistribution {
        p,
        q,
        n_p,
        counts,
    };
    dist.check_sum()?;
    Ok(dist)
}

/// Reads `lam` (images of the generators in `Z_n`) as a character valued in
/// `n`-th roots of unity and checks surjectivity.
fn cyclic_character(
    p: &Presentation,
    abel: &AbelStructure,
    lam: &[i64],
    n: u64,
    q: u64,
) -> Result<(Field, Character)> {
    if lam.len() != p.num_generators() {
        return Err(Error::InvalidParameter("one image per generator is required".into()));
    }
    for (i, r) in p.relators().iter().enumerate() {
        let v: i64 = r
            .exponent_vector(p.num_generators())
            .iter()
            .zip(lam)
            .map(|(a, b)| a * b)
            .sum();
        if v.rem_euclid(n as i64) != 0 {
            return Err(Error::NotHomomorphism(i));
        }
    }
    let g = lam.iter().fold(n, |acc, &x| acc.gcd(&(x.rem_euclid(n as i64) as u64)));
    if g != 1 {
        return Err(Error::NotSurjective);
    }
    let field = sufficiently_large_field(n, q)?;
    let zeta = field.primitive_root_of_unity(n)?;
    let powers = root_powers(&field, &zeta, n);
    let t = Character::from_generator_exponents(abel, &field, powers, lam)?;
    Ok((field, t))
}

/// `b_1^{(q)}` of the kernel of an epimorphism `G -> Z_n` given by generator images.
///
/// Sums, over each divisor `k > 1` of `n`, the depths of the `phi(k)`
/// characters of order `k` obtained as powers of `lam`.
pub fn b1_cover_cyclic(p: &Presentation, lam: &[i64], n: u64, q: u64) -> Result<usize> {
    let a = alexander_matrix(p);
    b1_cover_cyclic_with(p, &a, lam, n, q)
}

pub fn b1_cover_cyclic_with(
    p: &Presentation,
    a: &AlexanderMatrix,
    lam: &[i64],
    n: u64,
    q: u64,
) -> Result<usize> {
    let abel = a.abel();
    let (_, t) = cyclic_character(p, abel, lam, n, q)?;
    let mut total = abel.b1(q) as i64;
    for k in divisors(n).into_iter().filter(|&k| k > 1) {
        let step = (n / k) as i64;
        for j in (1..k).filter(|j| j.gcd(&k) == 1) {
            total += depth(a, &t.power(step * j as i64)?)?;
        }
    }
    usize::try_from(total).map_err(|_| Error::BoundViolation("negative Betti number".into()))
}

/// `b_1^{(q)}` of the kernel of an epimorphism onto `Z_{c_1} + ... + Z_{c_r}`;
/// `lam[g][i]` is the `i`-th component of the image of generator `g`.
pub fn b1_cover_abelian(p: &Presentation, lam: &[Vec<i64>], cs: &[u64], q: u64) -> Result<usize> {
    let a = alexander_matrix(p);
    let abel = a.abel();
    if lam.len() != p.num_generators() || lam.iter().any(|v| v.len() != cs.len()) {
        return Err(Error::InvalidParameter("image shape does not match the target".into()));
    }
    if cs.iter().any(|&c| c < 2) {
        return Err(Error::InvalidParameter("cyclic factors must have order at least 2".into()));
    }
    let exponent = cs.iter().fold(1u64, |acc, &c| acc.lcm(&c));
    let l = p.num_generators();
    for (i, r) in p.relators().iter().enumerate() {
        let ev = r.exponent_vector(l);
        for (k, &c) in cs.iter().enumerate() {
            let v: i64 = (0..l).map(|g| ev[g] * lam[g][k]).sum();
            if v.rem_euclid(c as i64) != 0 {
                return Err(Error::NotHomomorphism(i));
            }
        }
    }
    if !generates(lam, cs) {
        return Err(Error::NotSurjective);
    }
    let field = sufficiently_large_field(exponent, q)?;
    let zeta = field.primitive_root_of_unity(exponent)?;
    let powers = root_powers(&field, &zeta, exponent);
    let order: u64 = cs.iter().product();
    let mut total = abel.b1(q) as i64;
    for idx in 1..order {
        let mut rest = idx;
        let rho: Vec<u64> = cs
            .iter()
            .map(|&c| {
                let r = rest % c;
                rest /= c;
                r
            })
            .collect();
        let images: Vec<i64> = (0..l)
            .map(|g| {
                cs.iter()
                    .zip(&rho)
                    .enumerate()
                    .map(|(k, (&c, &r))| (exponent / c) as i64 * r as i64 * lam[g][k])
                    .sum::<i64>()
            })
            .collect();
        let t = Character::from_generator_exponents(abel, &field, powers.clone(), &images)?;
        total += depth(&a, &t)?;
    }
    usize::try_from(total).map_err(|_| Error::BoundViolation("negative Betti number".into()))
}

/// Whether the generator images span `Z_{c_1} + ... + Z_{c_r}`.
fn generates(lam: &[Vec<i64>], cs: &[u64]) -> bool {
    let order: u64 = cs.iter().product();
    let mut seen = vec![false; order as usize];
    let encode = |v: &[u64]| v.iter().zip(cs).rev().fold(0u64, |acc, (&x, &c)| acc * c + x);
    let start = vec![0u64; cs.len()];
    seen[0] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for g in lam {
            let w: Vec<u64> = v
                .iter()
                .zip(g)
                .zip(cs)
                .map(|((&x, &y), &c)| (x as i64 + y).rem_euclid(c as i64) as u64)
                .collect();
            let code = encode(&w) as usize;
            if !seen[code] {
                seen[code] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Context for validating a computed cover Betti number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub b1_group: usize,
    pub b1_cover: usize,
    pub index: u64,
    pub num_generators: usize,
    /// Largest depth over nontrivial characters of order dividing the index, if known.
    pub max_depth: Option<i64>,
}

/// Lower and upper bounds and the congruence modulo `gcd(p_i - 1)` over the
/// primes `p_i` dividing the index.
pub fn check_bounds_congruence(c: &CoverCheck) -> Result<()> {
    let (g, k) = (c.b1_group as i64, c.b1_cover as i64);
    let idx = c.index as i64;
    let upper = g + (idx - 1) * (c.num_generators as i64 - 1);
    if k < g || k > upper {
        return Err(Error::BoundViolation(format!(
            "b1 of the cover is {k}, outside [{g}, {upper}]"
        )));
    }
    if let Some(d) = c.max_depth {
        let sharp = g + (idx - 1) * d.max(0);
        if k > sharp {
            return Err(Error::BoundViolation(format!(
                "b1 of the cover is {k}, above the depth bound {sharp}"
            )));
        }
    }
    let modulus = prime_factors(c.index)
        .into_iter()
        .fold(0u64, |acc, p| acc.gcd(&(p - 1)));
    if modulus > 1 && (k - g).rem_euclid(modulus as i64) != 0 {
        return Err(Error::BoundViolation(format!(
            "b1 jump {} is not divisible by {modulus}",
            k - g
        )));
    }
    Ok(())
}

/// Maximum depth over nontrivial characters of order dividing `k`, computed
/// over a field of characteristic `q` containing the `k`-th roots of unity.
pub fn max_depth_dividing(a: &AlexanderMatrix, k: u64, q: u64) -> Result<Option<i64>> {
    let abel = a.abel();
    let field = sufficiently_large_field(k, q)?;
    let zeta = field.primitive_root_of_unity(k)?;
    let powers = root_powers(&field, &zeta, k);
    let dims: Vec<u64> = (0..abel.free_rank())
        .map(|_| k)
        .chain(abel.torsion().iter().map(|&e| e.gcd(&k)))
        .collect();
    let total: u64 = dims.iter().product();
    let mut best = None;
    for idx in 1..total {
        let mut rest = idx;
        let mut coords = Vec::with_capacity(dims.len());
        for &d in &dims {
            coords.push((rest % d) * (k / d));
            rest /= d;
        }
        let (free, tors) = coords.split_at(abel.free_rank());
        let t = Character::from_root_exponents(
            &field,
            powers.clone(),
            free.to_vec(),
            tors.to_vec(),
            abel.torsion(),
        )?;
        let d = depth(a, &t)?;
        best = Some(best.map_or(d, |b: i64| b.max(d)));
    }
    Ok(best)
}

/// `phi(k)` multiplicities of the cyclic subgroups of `Z_n`, as `(k, phi(k))`.
pub fn cyclic_multiplicities(n: u64) -> Vec<(u64, u64)> {
    divisors(n)
        .into_iter()
        .filter(|&k| k > 1)
        .map(|k| (k, totient(k)))
        .collect()
}

/// Convenience: abelianization and order-`p` character count `p^{n_p} - 1`.
pub fn order_p_count(p: &Presentation, prime: u64) -> u64 {
    let ab = abelianization(p);
    prime.pow(ab.b1(prime) as u32) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{free, nonorientable_surface, orientable_surface, product_of_frees};

    fn nontrivial_depths(p: &Presentation, prime: u64, q: u64) -> Vec<i64> {
        let a = alexander_matrix(p);
        let (_, depths) = order_p_depths(&a, prime, q, BetaOptions::default()).unwrap();
        depths[1..].to_vec()
    }

    #[test]
    fn free_group_depths() {
        for n in 1..=3 {
            let d = nontrivial_depths(&free(n).unwrap(), 3, 0);
            assert!(d.iter().all(|&x| x == n as i64 - 1));
        }
    }

    #[test]
    fn surface_depths() {
        let d = nontrivial_depths(&orientable_surface(2).unwrap(), 2, 3);
        assert!(d.iter().all(|&x| x == 2));
    }

    #[test]
    fn product_of_frees_depth() {
        let p = product_of_frees(&[2, 2]).unwrap();
        let a = alexander_matrix(&p);
        let field = Field::prime(7).unwrap();
        let zeta = field.primitive_root_of_unity(3).unwrap();
        let powers = root_powers(&field, &zeta, 3);
        // x1, x2 trivial, y1 nontrivial
        let t = Character::from_generator_exponents(a.abel(), &field, powers, &[0, 0, 1, 0]).unwrap();
        assert_eq!(depth(&a, &t).unwrap(), 1);
    }

    #[test]
    fn trivial_character_depth_is_b1_minus_one() {
        let p = nonorientable_surface(3).unwrap();
        let a = alexander_matrix(&p);
        for q in [0u64, 2, 3] {
            let field = if q == 0 { Field::rationals() } else { Field::prime(q).unwrap() };
            let t = Character::trivial(&field, a.abel());
            assert_eq!(depth(&a, &t).unwrap(), a.abel().b1(q) as i64 - 1);
        }
    }

    #[test]
    fn character_counts() {
        let f7 = Field::prime(7).unwrap();
        let f3 = Field::prime(3).unwrap();
        let k2 = abelianization(&nonorientable_surface(2).unwrap());
        assert_eq!(enumerate_order_p_characters(&abelianization(&free(2).unwrap()), 3, &f7).unwrap().len(), 8);
        assert_eq!(enumerate_order_p_characters(&k2, 2, &f3).unwrap().len(), 3);
        assert_eq!(enumerate_order_p_characters(&k2, 3, &f7).unwrap().len(), 2);
        assert!(enumerate_order_p_characters(&k2, 3, &Field::prime(5).unwrap()).is_err());
        for t in enumerate_order_p_characters(&k2, 2, &f3).unwrap() {
            assert_eq!(t.order(), Some(2));
        }
    }

    #[test]
    fn free_and_product_betas() {
        for (p, q) in [(2u64, 0u64), (2, 3), (3, 2), (3, 0), (5, 2)] {
            for n in 1..=3usize {
                let b = beta_distribution(&free(n).unwrap(), p, q).unwrap();
                let total = (p.pow(n as u32) - 1) / (p - 1);
                assert_eq!(b.get(n - 1), total);
            }
            let b = beta_distribution(&product_of_frees(&[2, 2]).unwrap(), p, q).unwrap();
            assert_eq!(b.get(0), (p * p - 1) * (p * p - 1) / (p - 1));
            assert_eq!(b.get(1), 2 * (p * p - 1) / (p - 1));
        }
    }

    #[test]
    fn nonorientable_betas() {
        for n in 2..=4usize {
            for q in [0u64, 3, 5] {
                let b = beta_distribution(&nonorientable_surface(n).unwrap(), 2, q).unwrap();
                assert_eq!(b.get(n - 2), 2u64.pow(n as u32) - 2);
                assert_eq!(b.get(n - 1), 1);
            }
        }
    }

    #[test]
    fn fast_and_general_evaluation_agree() {
        let p = orientable_surface(2).unwrap();
        let a = alexander_matrix(&p);
        for q in [0u64, 2] {
            let field = sufficiently_large_field(3, q).unwrap();
            for t in enumerate_order_p_characters(a.abel(), 3, &field).unwrap() {
                assert_eq!(a.evaluate(&t).unwrap(), a.evaluate(&t.without_root_data()).unwrap());
            }
        }
    }

    #[test]
    fn alternate_root_gives_same_distribution() {
        let p = nonorientable_surface(3).unwrap();
        let a = alexander_matrix(&p);
        for q in [0u64, 2, 7] {
            let base = beta_distribution_with(&a, 3, q, BetaOptions::default()).unwrap();
            let alt = beta_distribution_with(
                &a,
                3,
                q,
                BetaOptions {
                    alternate_root: true,
                    check_galois: false,
                },
            )
            .unwrap();
            assert_eq!(base, alt);
        }
    }

    #[test]
    fn cyclic_covers_of_free_group() {
        let f2 = free(2).unwrap();
        assert_eq!(b1_cover_cyclic(&f2, &[1, 0], 2, 0).unwrap(), 3);
        assert_eq!(b1_cover_cyclic(&f2, &[1, 3], 4, 0).unwrap(), 5);
        assert_eq!(b1_cover_cyclic(&f2, &[2, 0], 4, 0), Err(Error::NotSurjective));
        let k: Presentation = "gens: x; rels: x^2".parse().unwrap();
        assert_eq!(b1_cover_cyclic(&k, &[1], 3, 0), Err(Error::NotHomomorphism(0)));
    }

    #[test]
    fn abelian_covers() {
        let f2 = free(2).unwrap();
        assert_eq!(b1_cover_abelian(&f2, &[vec![1, 0], vec![0, 1]], &[2, 2], 0).unwrap(), 5);
        let z2 = product_of_frees(&[1, 1]).unwrap();
        assert_eq!(b1_cover_abelian(&z2, &[vec![1, 0], vec![0, 1]], &[2, 2], 0).unwrap(), 2);
        assert_eq!(
            b1_cover_abelian(&f2, &[vec![1], vec![1]], &[4], 3).unwrap(),
            b1_cover_cyclic(&f2, &[1, 1], 4, 3).unwrap()
        );
    }

    #[test]
    fn bounds_and_congruences() {
        let ok = CoverCheck {
            b1_group: 2,
            b1_cover: 3,
            index: 2,
            num_generators: 2,
            max_depth: Some(1),
        };
        assert!(check_bounds_congruence(&ok).is_ok());
        let odd_jump = CoverCheck {
            b1_group: 2,
            b1_cover: 3,
            index: 9,
            num_generators: 3,
            max_depth: None,
        };
        assert!(check_bounds_congruence(&odd_jump).is_err());
        let too_big = CoverCheck {
            b1_cover: 4,
            ..ok
        };
        assert!(check_bounds_congruence(&too_big).is_err());
    }

    #[test]
    fn galois_orbits_can_split_over_small_fields() {
        // <x, y | y x y^-1 x^-2> has Alexander polynomial t - 2, which vanishes
        // at exactly one of the two primitive cube roots of unity in F_7.
        let bs: Presentation = "gens: x, y; rels: y*x*y^-1*x^-2".parse().unwrap();
        assert!(matches!(
            beta_distribution(&bs, 3, 7),
            Err(Error::InexactDivision(_))
        ));
        assert_eq!(beta_distribution(&bs, 3, 0).unwrap().get(0), 1);
        // The cover formula sums every conjugate separately and stays exact.
        assert_eq!(b1_cover_cyclic(&bs, &[0, 1], 3, 7).unwrap(), 2);
    }
}
