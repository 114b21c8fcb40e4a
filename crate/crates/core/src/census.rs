//! Counting subgroups of low index.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{big_pow, divisors, exact_div, factorial, factorize, is_prime};
use crate::charvar::{beta_distribution_with, BetaOptions};
use crate::error::{Error, Result};
use crate::foxcalc::{abelianization, alexander_matrix, AbelStructure};
use crate::hall::{delta_abelian, delta_mpqs_from_beta, AbelianGroupSpec};
use crate::oracle::{hom_count, FiniteGroupTable, HomMode};
use crate::presentations::Presentation;

/// Where a census number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Recursion,
    Formula,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Recursion => "recursion+oracle",
            Method::Formula => "formula",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub k: u64,
    pub a_k: Option<(BigInt, Method)>,
    pub a_k_normal: Option<(BigInt, Method)>,
    pub alpha_k: Option<(BigInt, Method)>,
    pub c_k: Option<(BigInt, Method)>,
}

/// `a_k` from `h_l = |Hom(G, S_l)|`, `l <= k`.
pub fn a_k_via_hall_recursion(
    k: u64,
    mut hom_counter: impl FnMut(u64) -> Result<BigInt>,
) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidParameter("index must be positive".into()));
    }
    let h: Vec<BigInt> = (0..=k)
        .map(|l| if l == 0 { Ok(BigInt::one()) } else { hom_counter(l) })
        .collect::<Result<_>>()?;
    let mut a: Vec<BigInt> = vec![BigInt::zero()];
    for m in 1..=k {
        let mut v = exact_div(&h[m as usize], &factorial(m - 1), "h_k / (k-1)!")?;
        for l in 1..m {
            let term = &h[(m - l) as usize] * &a[l as usize];
            v -= exact_div(&term, &factorial(m - l), "h_{k-l} a_l / (k-l)!")?;
        }
        a.push(v);
    }
    Ok(a.pop().unwrap())
}

/// `h_l` by brute force over `S_l`.
pub fn symmetric_hom_counter(p: &Presentation, budget: u64) -> impl FnMut(u64) -> Result<BigInt> + '_ {
    move |l| {
        let (t, _) = FiniteGroupTable::symmetric(l as usize)?;
        hom_count(p, &t, HomMode::All, budget)
    }
}

/// `a_k(F_n)`.
pub fn a_k_free(n: u64, k: u64) -> BigInt {
    let mut a = vec![BigInt::zero()];
    for m in 1..=k {
        let mut v = BigInt::from(m) * factorial(m).pow(n as u32 - 1);
        for l in 1..m {
            v -= factorial(m - l).pow(n as u32 - 1) * &a[l as usize];
        }
        a.push(v);
    }
    a.pop().unwrap()
}

/// `a_k(Z^n)`.
pub fn a_k_zn(n: u64, k: u64) -> BigInt {
    if n == 0 {
        return BigInt::from((k == 1) as u32);
    }
    if n == 1 {
        return BigInt::one();
    }
    divisors(k)
        .into_iter()
        .map(|d| a_k_zn(n - 1, d) * big_pow(k / d, n - 1))
        .sum()
}

/// `a_2` and `a_3` from Betti numbers and the `S_3` Hall invariant.
pub fn a2_a3(p: &Presentation) -> Result<(BigInt, BigInt)> {
    let abel = abelianization(p);
    let a2 = big_pow(2, abel.b1(2) as u64) - 1;
    let a = alexander_matrix(p);
    let beta = beta_distribution_with(&a, 2, 3, BetaOptions::default())?;
    let delta_s3 = delta_mpqs_from_beta(&beta)?;
    let a3 = (big_pow(3, abel.b1(3) as u64) - 1) / 2 + 3 * delta_s3;
    Ok((a2, a3))
}

/// `dim (p H_1(G; Z_{p^2})) (x) Z_p`.
fn m_for_prime_square(abel: &AbelStructure, p: u64) -> u64 {
    abel.free_rank() as u64 + abel.torsion().iter().filter(|&&e| e % (p * p) == 0).count() as u64
}

/// `a_k^normal` for `k` prime, a prime square, or a product of two distinct primes.
pub fn a_normal(pres: &Presentation, k: u64) -> Result<BigInt> {
    let abel = abelianization(pres);
    let f = factorize(k);
    match f.as_slice() {
        [(p, 1)] => {
            let n = abel.b1(*p) as u64;
            Ok((big_pow(*p, n) - 1) / (p - 1))
        }
        [(p, 2)] => {
            let p = *p;
            let n = abel.b1(p) as u64;
            let m = m_for_prime_square(&abel, p);
            let first = if n == 0 {
                BigInt::zero()
            } else {
                (big_pow(p, n) - 1) * (big_pow(p, n - 1) - 1) / ((p * p - 1) * (p - 1))
            };
            let second = if n == 0 {
                BigInt::zero()
            } else {
                big_pow(p, n - 1) * (big_pow(p, m) - 1) / (p - 1)
            };
            Ok(first + second)
        }
        [(a, 1), (b, 1)] => {
            let (p, q) = (*a, *b);
            let n = abel.b1(p) as u64;
            let m = abel.b1(q) as u64;
            let mut out = (big_pow(p, n) - 1) * (big_pow(q, m) - 1) / ((p - 1) * (q - 1));
            if (q - 1) % p == 0 {
                let beta = beta_distribution_with(&alexander_matrix(pres), p, q, BetaOptions::default())?;
                let mut sum = BigInt::zero();
                for (&d, &c) in &beta.counts {
                    if d >= 1 {
                        sum += BigInt::from(c) * (big_pow(q, d as u64) - 1);
                    }
                }
                out += exact_div(&(sum * (p - 1)), &BigInt::from(q - 1), "metacyclic term")?;
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(format!(
            "normal subgroups of index {k} need Hall invariants of nonabelian groups not covered here"
        ))),
    }
}

/// Normal subgroups of index `k` with abelian quotient.
pub fn alpha_k(pres: &Presentation, k: u64) -> BigInt {
    alpha_k_from(&abelianization(pres), k)
}

pub fn alpha_k_from(abel: &AbelStructure, k: u64) -> BigInt {
    AbelianGroupSpec::all_of_order(k)
        .iter()
        .map(|g| delta_abelian(abel, g))
        .sum()
}

/// Conjugacy classes of index-`p` subgroups, given `a_p`.
pub fn c_p(pres: &Presentation, p: u64, a_p: &BigInt) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let n = abelianization(pres).b1(p) as u64;
    exact_div(&(big_pow(p, n) + a_p - 1), &BigInt::from(p), "conjugacy class count")
}

/// `a_p(G x Z) = a_p(G) + p^n`.
pub fn a_p_product_with_z(pres: &Presentation, p: u64, a_p: &BigInt) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(a_p + big_pow(p, abelianization(pres).b1(p) as u64))
}

/// All census numbers available for index `k` without brute force beyond
/// the formulas, plus `a_k` via the recursion when `budget` allows.
pub fn census(pres: &Presentation, k: u64, budget: Option<u64>) -> Result<CensusReport> {
    let mut report = CensusReport {
        k,
        a_k: None,
        a_k_normal: None,
        alpha_k: Some((alpha_k(pres, k), Method::Formula)),
        c_k: None,
    };
    match a_normal(pres, k) {
        Ok(v) => report.a_k_normal = Some((v, Method::Formula)),
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    if k == 1 {
        report.a_k = Some((BigInt::one(), Method::ClosedForm));
    } else if k == 2 || k == 3 {
        let (a2, a3) = a2_a3(pres)?;
        report.a_k = Some((if k == 2 { a2 } else { a3 }, Method::Formula));
    } else if let Some(b) = budget {
        let v = a_k_via_hall_recursion(k, symmetric_hom_counter(pres, b))?;
        report.a_k = Some((v, Method::Recursion));
    }
    if is_prime(k) {
        if let Some((a, _)) = &report.a_k {
            report.c_k = Some((c_p(pres, k, a)?, Method::Formula));
        }
    }
    Ok(report)
}

/// `a_p = p c_p - (p - 1) a_p^normal` for prime `p`.
pub fn prime_index_identity(a_p: &BigInt, c_p: &BigInt, normal: &BigInt, p: u64) -> bool {
    *a_p == c_p * p - normal * (p - 1)
}
