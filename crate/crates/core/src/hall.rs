//! Hall invariants: counts of normal subgroups with a prescribed quotient.
//!
//! Abelian quotients are handled by partition combinatorics on the
//! abelianization. The split metabelian groups `M_{p,q^s}` are handled
//! through torsion points on characteristic varieties.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, exact_div, factorize, is_prime, multiplicative_order};
use crate::charvar::{beta_distribution, order_p_depths, BetaOptions, BettiDistribution};
use crate::error::{Error, Result};
use crate::fields::factor_cyclotomic_mod_q;
use crate::foxcalc::{alexander_matrix, AbelStructure, AlexanderMatrix};
use crate::oracle::FiniteGroupTable;
use crate::presentations::Presentation;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    /// `sum (i - 1) pi_i`.
    pub fn bracket(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum()
    }

    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&x| x == k).count()
    }

    /// Every part lowered by one.
    pub fn lowered(&self) -> Partition {
        Partition::new(self.parts.iter().map(|&x| x - 1).collect())
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `theta_i(lambda, tau) = sum_j min(lambda_i, tau_j)`.
pub fn theta(lambda: &Partition, tau: &Partition, i: usize) -> Result<u64> {
    if i == 0 || i > lambda.len() {
        return Err(Error::InvalidParameter(format!(
            "index {i} out of range for a partition of length {}",
            lambda.len()
        )));
    }
    Ok(theta_unchecked(lambda, tau, i))
}

fn theta_unchecked(lambda: &Partition, tau: &Partition, i: usize) -> u64 {
    let li = lambda.part(i);
    tau.parts.iter().map(|&t| li.min(t) as u64).sum()
}

pub fn theta_total(lambda: &Partition, tau: &Partition) -> u64 {
    (1..=lambda.len()).map(|i| theta_unchecked(lambda, tau, i)).sum()
}

/// A finite abelian group as a partition per prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroupSpec {
    primary: BTreeMap<u64, Partition>,
}

impl AbelianGroupSpec {
    pub fn new(primary: BTreeMap<u64, Partition>) -> Result<Self> {
        for p in primary.keys() {
            if !is_prime(*p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
        }
        Ok(AbelianGroupSpec {
            primary: primary.into_iter().filter(|(_, l)| !l.is_empty()).collect(),
        })
    }

    /// `Z_{c_1} + ... + Z_{c_r}`.
    pub fn from_cyclic(orders: &[u64]) -> Result<Self> {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &c in orders {
            if c == 0 {
                return Err(Error::InvalidParameter("cyclic factors must be finite".into()));
            }
            for (p, e) in factorize(c) {
                parts.entry(p).or_default().push(e);
            }
        }
        Self::new(parts.into_iter().map(|(p, v)| (p, Partition::new(v))).collect())
    }

    pub fn primary(&self) -> &BTreeMap<u64, Partition> {
        &self.primary
    }

    pub fn partition(&self, p: u64) -> Partition {
        self.primary.get(&p).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> BigInt {
        self.primary
            .iter()
            .map(|(&p, l)| big_pow(p, l.weight()))
            .product()
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let r = self.primary.values().map(|l| l.len()).max().unwrap_or(0);
        let mut out = vec![1u64; r];
        for (&p, l) in &self.primary {
            for (i, &e) in l.parts().iter().enumerate() {
                out[r - 1 - i] *= p.pow(e);
            }
        }
        out
    }

    /// All abelian groups of order `k`, in a fixed order.
    pub fn all_of_order(k: u64) -> Vec<AbelianGroupSpec> {
        let mut out = vec![BTreeMap::new()];
        for (p, e) in factorize(k) {
            let mut next = Vec::new();
            for base in &out {
                for parts in integer_partitions(e) {
                    let mut m: BTreeMap<u64, Partition> = base.clone();
                    m.insert(p, Partition::new(parts));
                    next.push(m);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|m| AbelianGroupSpec { primary: m })
            .collect()
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.invariant_factors().iter().map(|n| format!("Z{n}")).collect();
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Partitions of `n`, largest parts first.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn rational_pow(p: u64, e: i64) -> BigRational {
    let b = BigRational::from_integer(big_pow(p, e.unsigned_abs()));
    if e >= 0 {
        b
    } else {
        b.recip()
    }
}

/// `prod_{i <= m} (1 - t^i)` at `t = 1/p`.
fn varphi(m: usize, p: u64) -> BigRational {
    (1..=m as i64)
        .map(|i| BigRational::one() - rational_pow(p, -i))
        .product()
}

fn to_integer(x: BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::InexactDivision(format!("{what} evaluated to {x}")))
    }
}

fn aut_order_pgroup(p: u64, lambda: &Partition) -> BigRational {
    let mut out = rational_pow(p, (lambda.weight() + 2 * lambda.bracket()) as i64);
    let mut k = 1;
    while (k as usize) <= lambda.parts().first().copied().unwrap_or(0) as usize {
        out *= varphi(lambda.multiplicity(k), p);
        k += 1;
    }
    out
}

/// `|Aut Gamma|` of a finite abelian group.
pub fn aut_order_abelian(spec: &AbelianGroupSpec) -> BigInt {
    let mut out = BigRational::one();
    for (&p, lambda) in spec.primary() {
        out *= aut_order_pgroup(p, lambda);
    }
    let n = to_integer(out, "automorphism group order").expect("automorphism count is integral");
    assert!(n.is_positive(), "automorphism count must be positive");
    n
}

/// Partition of the `p`-primary part of the torsion of `H_1`.
fn torsion_partition(abel: &AbelStructure, p: u64) -> Partition {
    Partition::new(
        abel.torsion()
            .iter()
            .map(|&e| {
                let mut e = e;
                let mut k = 0;
                while e % p == 0 {
                    e /= p;
                    k += 1;
                }
                k
            })
            .collect(),
    )
}

/// `|Epi(Z^n + T_p, Gamma_p)|`.
fn epi_count_pgroup(p: u64, n: u64, lambda: &Partition, tau: &Partition) -> BigInt {
    let lowered = lambda.lowered();
    let head = (lambda.weight() - lambda.len() as u64) * n + theta_total(&lowered, tau);
    let mut out = big_pow(p, head);
    for i in 1..=lambda.len() {
        let e = n + theta_unchecked(lambda, tau, i) - theta_unchecked(&lowered, tau, i);
        let factor = big_pow(p, e) - big_pow(p, i as u64 - 1);
        if factor.is_zero() {
            return BigInt::zero();
        }
        out *= factor;
    }
    assert!(!out.is_negative(), "epimorphism count must be nonnegative");
    out
}

/// `|Epi(G, Gamma)|` for a finite abelian `Gamma`.
pub fn epi_count_abelian(abel: &AbelStructure, gamma: &AbelianGroupSpec) -> BigInt {
    let n = abel.free_rank() as u64;
    gamma
        .primary()
        .iter()
        .map(|(&p, lambda)| epi_count_pgroup(p, n, lambda, &torsion_partition(abel, p)))
        .product()
}

/// `delta_Gamma(G)` for a finite abelian `Gamma`, from `H_1(G)` alone.
pub fn delta_abelian(abel: &AbelStructure, gamma: &AbelianGroupSpec) -> BigInt {
    let epi = epi_count_abelian(abel, gamma);
    exact_div(&epi, &aut_order_abelian(gamma), "abelian Hall invariant")
        .expect("automorphisms act freely on epimorphisms")
}

/// Closed form for torsion-free `H_1 = Z^n`.
pub fn delta_abelian_torsion_free(n: u64, gamma: &AbelianGroupSpec) -> BigInt {
    let mut out = BigRational::one();
    for (&p, lambda) in gamma.primary() {
        let r = lambda.len() as u64;
        if r > n {
            return BigInt::zero();
        }
        let mut term = rational_pow(
            p,
            lambda.weight() as i64 * (n as i64 - 1) - 2 * lambda.bracket() as i64,
        ) * varphi(n as usize, p)
            / varphi((n - r) as usize, p);
        let mut k = 1;
        while k <= lambda.parts()[0] {
            term /= varphi(lambda.multiplicity(k), p);
            k += 1;
        }
        out *= term;
    }
    to_integer(out, "torsion-free abelian Hall invariant").expect("integral")
}

/// Number of ordered `n`-tuples generating a `p`-group of order `p^r` with
/// Frattini quotient of order `p^s`.
pub fn eulerian_pgroup(p: u64, r: u64, s: u64, n: u64) -> Result<BigInt> {
    if s > r || n == 0 {
        return Err(Error::InvalidParameter("need r >= s >= 0 and n >= 1".into()));
    }
    let mut out = big_pow(p, (r - s) * n);
    for i in 0..s {
        out *= big_pow(p, n) - big_pow(p, i);
    }
    Ok(out)
}

/// Moebius function of a subgroup of index `p^d` in a `p`-group.
pub fn mobius_weisner(p: u64, d: u64, contains_frattini: bool) -> BigInt {
    if !contains_frattini {
        return BigInt::zero();
    }
    let v = big_pow(p, d * d.saturating_sub(1) / 2);
    if d.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// One isomorphism class of subgroups in a subgroup lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeClass {
    pub name: &'static str,
    pub order: u64,
    /// Number of subgroups in the class.
    pub count: u64,
    pub mobius: i64,
    pub aut_order: u64,
}

/// Subgroup lattice of `S_3 = M_{2,3}`.
pub fn s3_lattice() -> Vec<LatticeClass> {
    mpq_lattice(2, 3)
}

/// Subgroup lattice of the metacyclic group of order `pq`, `p | q - 1`.
pub fn mpq_lattice(p: u64, q: u64) -> Vec<LatticeClass> {
    vec![
        LatticeClass { name: "M", order: p * q, count: 1, mobius: 1, aut_order: q * (q - 1) },
        LatticeClass { name: "Zq", order: q, count: 1, mobius: -1, aut_order: q - 1 },
        LatticeClass { name: "Zp", order: p, count: q, mobius: -1, aut_order: p - 1 },
        LatticeClass { name: "1", order: 1, count: 1, mobius: q as i64, aut_order: 1 },
    ]
}

/// Subgroup lattice of `A_4`.
pub fn a4_lattice() -> Vec<LatticeClass> {
    vec![
        LatticeClass { name: "A4", order: 12, count: 1, mobius: 1, aut_order: 24 },
        LatticeClass { name: "Z2^2", order: 4, count: 1, mobius: -1, aut_order: 6 },
        LatticeClass { name: "Z3", order: 3, count: 4, mobius: -1, aut_order: 2 },
        LatticeClass { name: "Z2", order: 2, count: 3, mobius: 0, aut_order: 1 },
        LatticeClass { name: "1", order: 1, count: 1, mobius: 4, aut_order: 1 },
    ]
}

/// `sum_H mu(H) sigma_H`: epimorphisms onto the top group from the
/// homomorphism counts `sigma` of each class.
pub fn mobius_fold(lattice: &[LatticeClass], sigma: impl Fn(&LatticeClass) -> BigInt) -> BigInt {
    lattice
        .iter()
        .map(|c| BigInt::from(c.count) * BigInt::from(c.mobius) * sigma(c))
        .sum()
}

/// `sum_H phi_H`: homomorphisms into the top group from epimorphism counts.
pub fn hall_sum(lattice: &[LatticeClass], phi: impl Fn(&LatticeClass) -> BigInt) -> BigInt {
    lattice.iter().map(|c| BigInt::from(c.count) * phi(c)).sum()
}

/// `phi(Gamma, n)` from the lattice.
pub fn eulerian_from_lattice(lattice: &[LatticeClass], n: u64) -> BigInt {
    mobius_fold(lattice, |c| big_pow(c.order, n))
}

/// `M_{p,q^s} = Z_q^s x| Z_p` with its multiplication table.
#[derive(Clone, Debug)]
pub struct Metabelian {
    pub p: u64,
    pub q: u64,
    pub s: u32,
    /// Companion matrix of the seeding factor, acting on column vectors.
    pub sigma: Vec<Vec<u64>>,
    pub table: FiniteGroupTable,
}

impl Metabelian {
    pub fn order(&self) -> u64 {
        self.q.pow(self.s) * self.p
    }

    /// `s q^s (q^s - 1)`.
    pub fn aut_order(&self) -> u64 {
        let qs = self.q.pow(self.s);
        self.s as u64 * qs * (qs - 1)
    }

    /// Element `u b^k`, with `u` in base `q`, first coordinate fastest.
    pub fn element(&self, u: &[u64], k: u64) -> u32 {
        let code = u.iter().rev().fold(0u64, |acc, &x| acc * self.q + x);
        (code * self.p + k) as u32
    }
}

fn mat_vec(m: &[Vec<u64>], v: &[u64], q: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % q)
        .collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % q).collect())
        .collect()
}

fn identity_matrix(n: usize) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect()
}

/// Companion matrix of the monic `f` (constant term first) modulo `q`.
fn companion(f: &[u64], q: u64) -> Vec<Vec<u64>> {
    let s = f.len() - 1;
    let mut m = vec![vec![0u64; s]; s];
    for i in 1..s {
        m[i][i - 1] = 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[s - 1] = (q - f[i] % q) % q;
    }
    m
}

/// Builds `M_{p,q^s}` seeded by the lexicographically smallest irreducible
/// factor of `1 + t + ... + t^{p-1}` over `F_q`.
pub fn construct_mpqs(p: u64, q: u64) -> Result<Metabelian> {
    construct_mpqs_with_factor(p, q, 0)
}

/// As [`construct_mpqs`], seeded by the factor with the given index.
pub fn construct_mpqs_with_factor(p: u64, q: u64, factor: usize) -> Result<Metabelian> {
    if p == q || !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidParameter(format!("need distinct primes, got {p} and {q}")));
    }
    let s = multiplicative_order(q, p)? as u32;
    let factors = factor_cyclotomic_mod_q(p, q)?;
    let f = factors
        .get(factor)
        .ok_or_else(|| Error::InvalidParameter(format!("no irreducible factor with index {factor}")))?;
    let sigma = companion(f, q);
    let n = s as usize;
    let mut powers = vec![identity_matrix(n)];
    for _ in 1..=p {
        powers.push(mat_mul(powers.last().unwrap(), &sigma, q));
    }
    assert_eq!(powers[p as usize], identity_matrix(n), "sigma^p must be the identity");
    assert_ne!(sigma, identity_matrix(n), "sigma must be nontrivial");
    let qs = q.pow(s) as usize;
    let order = qs * p as usize;
    let decode = |x: usize| -> (Vec<u64>, usize) {
        let (mut code, k) = (x / p as usize, x % p as usize);
        let u = (0..n)
            .map(|_| {
                let d = (code % q as usize) as u64;
                code /= q as usize;
                d
            })
            .collect();
        (u, k)
    };
    let encode = |u: &[u64], k: usize| -> usize {
        let code = u.iter().rev().fold(0u64, |acc, &x| acc * q + x);
        code as usize * p as usize + k
    };
    // (u b^k)(v b^l) = (u + sigma^{-k} v) b^{k+l}
    let table = FiniteGroupTable::from_fn(order, |a, b| {
        let (u, k) = decode(a);
        let (v, l) = decode(b);
        let back = (p as usize - k) % p as usize;
        let w = mat_vec(&powers[back], &v, q);
        let sum: Vec<u64> = u.iter().zip(&w).map(|(x, y)| (x + y) % q).collect();
        encode(&sum, (k + l) % p as usize)
    })?;
    Ok(Metabelian {
        p,
        q,
        s,
        sigma,
        table,
    })
}

/// `delta_{M_{p,q^s}}` from a Betti distribution.
pub fn delta_mpqs_from_beta(beta: &BettiDistribution) -> Result<BigInt> {
    let (p, q) = (beta.p, beta.q);
    let s = multiplicative_order(q, p)?;
    let mut sum = BigInt::zero();
    for (&d, &b) in &beta.counts {
        if d >= 1 {
            sum += BigInt::from(b) * (big_pow(q, s * d as u64) - 1);
        }
    }
    let num = sum * (p - 1);
    let den = BigInt::from(s) * (big_pow(q, s) - 1);
    exact_div(&num, &den, "metabelian Hall invariant")
}

/// `delta_{M_{p,q^s}}(G)`.
pub fn delta_mpqs(pres: &Presentation, p: u64, q: u64) -> Result<BigInt> {
    if p == q || q == 0 {
        return Err(Error::InvalidParameter(format!("need distinct primes, got {p} and {q}")));
    }
    delta_mpqs_from_beta(&beta_distribution(pres, p, q)?)
}

/// `(|Hom(G, M_{p,q^s})|, |Epi(G, M_{p,q^s})|)`, summing over every
/// homomorphism to `Z_p` separately.
pub fn hom_epi_count_mpqs(pres: &Presentation, p: u64, q: u64) -> Result<(BigInt, BigInt)> {
    hom_epi_count_mpqs_with(&alexander_matrix(pres), p, q)
}

pub fn hom_epi_count_mpqs_with(a: &AlexanderMatrix, p: u64, q: u64) -> Result<(BigInt, BigInt)> {
    if p == q || q == 0 || !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidParameter(format!("need distinct primes, got {p} and {q}")));
    }
    let s = multiplicative_order(q, p)?;
    let qs = big_pow(q, s);
    let (_, depths) = order_p_depths(
        a,
        p,
        q,
        BetaOptions {
            alternate_root: false,
            check_galois: true,
        },
    )?;
    let mut hom = big_pow(q, s * a.abel().b1(q) as u64);
    let mut epi = BigInt::zero();
    for &d in &depths[1..] {
        let d = d.to_u64().ok_or_else(|| Error::BoundViolation("negative depth".into()))?;
        hom += big_pow(q, s * (d + 1));
        epi += &qs * (big_pow(q, s * d) - 1);
    }
    Ok((hom, epi))
}

/// `(p^n - 1)(q^{s(n-1)} - 1) / (s(q^s - 1))`.
pub fn delta_free_closed(p: u64, q: u64, n: u64) -> Result<BigInt> {
    let s = multiplicative_order(q, p)?;
    let num = (big_pow(p, n) - 1) * (big_pow(q, s * (n - 1)) - 1);
    exact_div(&num, &(BigInt::from(s) * (big_pow(q, s) - 1)), "free group closed form")
}

/// `(3^n - 1)(4^{n-1} - 1) / 6`.
pub fn delta_a4_free(n: u64) -> BigInt {
    (big_pow(3, n) - 1) * (big_pow(4, n - 1) - 1) / 6
}

/// `(p^n - 1)(q^{n-1} - 1) / (q - 1)` for `p | q - 1`.
pub fn delta_metacyclic_free(p: u64, q: u64, n: u64) -> BigInt {
    (big_pow(p, n) - 1) * (big_pow(q, n - 1) - 1) / (q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foxcalc::abelianization;
    use crate::oracle::{aut_order, brute_force_delta, hom_count, isomorphism_count, HomMode, DEFAULT_BUDGET};
    use crate::presentations::{free, nonorientable_surface, orientable_surface, product_of_frees};

    fn ab(orders: &[u64]) -> AbelianGroupSpec {
        AbelianGroupSpec::from_cyclic(orders).unwrap()
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn theta_examples() {
        let l = Partition::new(vec![2, 1]);
        assert_eq!(theta_total(&l, &Partition::default()), 0);
        let one = Partition::new(vec![1]);
        assert_eq!(theta(&l, &one, 1).unwrap(), 1);
        assert_eq!(theta(&l, &one, 2).unwrap(), 1);
        assert!(theta(&l, &one, 3).is_err());
        assert_eq!(theta_total(&Partition::new(vec![3, 1]), &Partition::new(vec![2, 2])), 6);
    }

    #[test]
    fn partition_helpers() {
        let l = Partition::new(vec![1, 3, 0, 3]);
        assert_eq!(l.parts(), &[3, 3, 1]);
        assert_eq!(l.weight(), 7);
        assert_eq!(l.bracket(), 3 + 2);
        assert_eq!(l.multiplicity(3), 2);
        assert_eq!(l.lowered().parts(), &[2, 2]);
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(AbelianGroupSpec::all_of_order(8).len(), 3);
        assert_eq!(AbelianGroupSpec::all_of_order(36).len(), 4);
        assert_eq!(ab(&[6, 4]).invariant_factors(), vec![2, 12]);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(aut_order_abelian(&ab(&[2, 2])), int(6));
        assert_eq!(aut_order_abelian(&ab(&[4])), int(2));
        assert_eq!(aut_order_abelian(&ab(&[2, 4])), int(8));
        for cs in [vec![2usize, 4], vec![8], vec![3, 3], vec![2, 2, 2], vec![6]] {
            let t = FiniteGroupTable::abelian(&cs).unwrap();
            let spec = ab(&cs.iter().map(|&c| c as u64).collect::<Vec<_>>());
            assert_eq!(aut_order_abelian(&spec), int(aut_order(&t) as i64));
        }
    }

    #[test]
    fn abelian_deltas() {
        let f3 = abelianization(&free(3).unwrap());
        assert_eq!(delta_abelian(&f3, &ab(&[2])), int(7));
        let f4 = abelianization(&free(4).unwrap());
        assert_eq!(delta_abelian(&f4, &ab(&[2, 4])), int(420));
        let k2 = abelianization(&nonorientable_surface(2).unwrap());
        assert_eq!(delta_abelian(&k2, &ab(&[3])), int(1));
        assert_eq!(delta_abelian(&k2, &ab(&[2, 2])), int(1));
        assert_eq!(delta_abelian(&k2, &ab(&[2, 2, 2])), int(0));
        assert_eq!(delta_abelian(&k2, &ab(&[4])), int(2));
        assert_eq!(delta_abelian(&f3, &ab(&[2, 2, 2, 2])), int(0));
    }

    #[test]
    fn abelian_deltas_match_enumeration() {
        let groups = [
            free(2).unwrap(),
            nonorientable_surface(3).unwrap(),
            product_of_frees(&[2, 1]).unwrap(),
            "gens: a, b; rels: a^4, b^6, a*b*a^-1*b^-1".parse().unwrap(),
        ];
        for g in &groups {
            let abel = abelianization(g);
            for cs in [vec![2usize], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![8]] {
                let t = FiniteGroupTable::abelian(&cs).unwrap();
                let spec = ab(&cs.iter().map(|&c| c as u64).collect::<Vec<_>>());
                assert_eq!(
                    delta_abelian(&abel, &spec),
                    brute_force_delta(g, &t, DEFAULT_BUDGET).unwrap(),
                    "{g} onto {spec}"
                );
            }
        }
    }

    #[test]
    fn multiplicativity_for_coprime_orders() {
        for g in [free(2).unwrap(), nonorientable_surface(3).unwrap()] {
            let abel = abelianization(&g);
            let product = delta_abelian(&abel, &ab(&[2])) * delta_abelian(&abel, &ab(&[3]));
            assert_eq!(delta_abelian(&abel, &ab(&[6])), product);
            assert_eq!(delta_abelian(&abel, &ab(&[2, 3])), product);
        }
    }

    #[test]
    fn torsion_free_closed_forms() {
        for n in 1..=4u64 {
            let abel = abelianization(&free(n as usize).unwrap());
            for cs in [vec![2u64], vec![4], vec![2, 2], vec![2, 4], vec![8], vec![3, 3], vec![12]] {
                assert_eq!(delta_abelian_torsion_free(n, &ab(&cs)), delta_abelian(&abel, &ab(&cs)));
            }
            let (p, s) = (2u64, 3u64);
            let cyc = (big_pow(p, s * n) - big_pow(p, (s - 1) * n)) / (big_pow(p, s) - big_pow(p, s - 1));
            assert_eq!(delta_abelian(&abel, &ab(&[8])), cyc);
        }
    }

    #[test]
    fn eulerian_and_mobius() {
        assert_eq!(eulerian_pgroup(2, 2, 2, 2).unwrap(), int(6));
        assert_eq!(eulerian_pgroup(2, 2, 1, 1).unwrap(), int(2));
        assert_eq!(eulerian_pgroup(5, 1, 1, 3).unwrap(), int(124));
        assert_eq!(mobius_weisner(2, 0, true), int(1));
        assert_eq!(mobius_weisner(2, 2, true), int(2));
        assert_eq!(mobius_weisner(3, 1, true), int(-1));
        assert_eq!(mobius_weisner(2, 1, false), int(0));
        assert_eq!(eulerian_from_lattice(&s3_lattice(), 2), int(18));
        assert_eq!(eulerian_from_lattice(&a4_lattice(), 2), int(96));
    }

    #[test]
    fn metabelian_tables() {
        let s3 = construct_mpqs(2, 3).unwrap();
        assert_eq!((s3.order(), s3.aut_order()), (6, 6));
        assert_eq!(isomorphism_count(&s3.table, &FiniteGroupTable::symmetric(3).unwrap().0), 6);
        let a4 = construct_mpqs(3, 2).unwrap();
        assert_eq!((a4.order(), a4.aut_order()), (12, 24));
        assert_eq!(isomorphism_count(&a4.table, &FiniteGroupTable::alternating(4).unwrap()), 24);
        let m37 = construct_mpqs(3, 7).unwrap();
        assert_eq!(m37.aut_order(), 42);
        assert_eq!(aut_order(&m37.table), 42);
        assert!(construct_mpqs(3, 3).is_err());
    }

    #[test]
    fn seeding_factor_is_irrelevant() {
        for (p, q) in [(3u64, 7u64), (5, 11), (3, 13)] {
            let a = construct_mpqs_with_factor(p, q, 0).unwrap();
            let b = construct_mpqs_with_factor(p, q, 1).unwrap();
            assert_ne!(a.sigma, b.sigma);
            assert!(isomorphism_count(&a.table, &b.table) > 0);
        }
    }

    #[test]
    fn metabelian_deltas_on_free_groups() {
        let f2 = free(2).unwrap();
        assert_eq!(delta_mpqs(&f2, 2, 3).unwrap(), int(3));
        assert_eq!(delta_mpqs(&f2, 3, 2).unwrap(), int(4));
        assert_eq!(delta_mpqs(&f2, 3, 7).unwrap(), int(8));
        assert_eq!(delta_mpqs(&free(4).unwrap(), 3, 2).unwrap(), int(840));
        for p in [2u64, 3, 5, 7] {
            for q in [2u64, 3, 5, 7] {
                if p == q {
                    continue;
                }
                for n in 1..=4u64 {
                    let fam = free(n as usize).unwrap();
                    assert_eq!(delta_mpqs(&fam, p, q).unwrap(), delta_free_closed(p, q, n).unwrap());
                }
            }
        }
        assert_eq!(delta_free_closed(2, 3, 3).unwrap(), int(28));
        assert_eq!(delta_a4_free(4), int(840));
        assert_eq!(delta_metacyclic_free(3, 7, 2), int(8));
    }

    #[test]
    fn hom_and_epi_counts() {
        let f2 = free(2).unwrap();
        assert_eq!(hom_epi_count_mpqs(&f2, 2, 3).unwrap(), (int(36), int(18)));
        let (hom, _) = hom_epi_count_mpqs(&free(3).unwrap(), 3, 2).unwrap();
        assert_eq!(hom, int(1728));
        let (_, epi) = hom_epi_count_mpqs(&nonorientable_surface(2).unwrap(), 3, 2).unwrap();
        assert_eq!(epi, int(0));
        for g in [orientable_surface(2).unwrap(), nonorientable_surface(3).unwrap(), product_of_frees(&[2, 1]).unwrap()] {
            for (p, q) in [(2u64, 3u64), (3, 2), (3, 7)] {
                let m = construct_mpqs(p, q).unwrap();
                let (hom, epi) = hom_epi_count_mpqs(&g, p, q).unwrap();
                assert_eq!(hom, hom_count(&g, &m.table, HomMode::All, DEFAULT_BUDGET).unwrap());
                assert_eq!(epi, hom_count(&g, &m.table, HomMode::Epi, DEFAULT_BUDGET).unwrap());
                assert_eq!(epi / m.aut_order(), delta_mpqs(&g, p, q).unwrap());
            }
        }
    }
}
