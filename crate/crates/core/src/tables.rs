//! Hall invariants for named target groups, and the built-in tables of them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::braids::{fixture, horizontal_presentation, parse_permutation};
use crate::error::{Error, Result};
use crate::foxcalc::abelianization;
use crate::hall::{delta_abelian, delta_mpqs, AbelianGroupSpec};
use crate::presentations::Presentation;

/// A finite group whose Hall invariant has a closed formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Abelian(AbelianGroupSpec),
    /// `M_{p,q^s}`, with `s` the order of `q` mod `p`.
    Metabelian { p: u64, q: u64 },
}

impl Target {
    pub fn delta(&self, pres: &Presentation) -> Result<BigInt> {
        match self {
            Target::Abelian(g) => Ok(delta_abelian(&abelianization(pres), g)),
            Target::Metabelian { p, q } => delta_mpqs(pres, *p, *q),
        }
    }
}

fn bad(s: &str) -> Error {
    Error::InvalidParameter(format!("unknown target group `{s}`"))
}

fn num(s: &str, whole: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| bad(whole))
}

/// Accepted forms: `Z4`, `Z2+Z4`, `Z2^2`, `S3`, `A4`, `D10` (dihedral of
/// order 10), `M3,7` or `mpq:3,7`.
impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "S3" => return Ok(Target::Metabelian { p: 2, q: 3 }),
            "A4" => return Ok(Target::Metabelian { p: 3, q: 2 }),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("mpq:").or_else(|| t.strip_prefix('M')) {
            let (p, q) = rest.split_once(',').ok_or_else(|| bad(s))?;
            return Ok(Target::Metabelian {
                p: num(p, s)?,
                q: num(q, s)?,
            });
        }
        if let Some(n) = t.strip_prefix('D') {
            let n = num(n, s)?;
            if n < 6 || n % 2 == 1 {
                return Err(bad(s));
            }
            return Ok(Target::Metabelian { p: 2, q: n / 2 });
        }
        let mut orders = Vec::new();
        for factor in t.split('+') {
            let f = factor.trim().strip_prefix('Z').ok_or_else(|| bad(s))?;
            let (n, e) = match f.split_once('^') {
                Some((n, e)) => (num(n, s)?, num(e, s)?),
                None => (num(f, s)?, 1),
            };
            orders.extend(std::iter::repeat_n(n, e as usize));
        }
        Ok(Target::Abelian(AbelianGroupSpec::from_cyclic(&orders)?))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Abelian(g) => write!(f, "{g}"),
            Target::Metabelian { p: 2, q: 3 } => f.write_str("S3"),
            Target::Metabelian { p: 3, q: 2 } => f.write_str("A4"),
            Target::Metabelian { p, q } => write!(f, "M{p},{q}"),
        }
    }
}

pub const TABLE1_COLUMNS: [&str; 9] = ["Z2", "Z3", "Z2^2", "Z4", "Z2+Z4", "Z8", "S3", "A4", "M3,7"];

pub const TABLE1_ROWS: [&str; 14] = [
    "F2", "F3", "F4", "F2xF1", "F2xF2", "F3xF1", "F3xF2", "S2", "S3", "S4", "N2", "N3", "N4",
    "N5",
];

pub const TABLE2_COLUMNS: [&str; 3] = ["S3", "A4", "M3,7"];

/// Horizontal arrangements with at most 7 planes, in table order.
pub const TABLE2_ROWS: &[&str] = &[
    "123", "1234", "2134", "12345", "21345", "21435", "31425", "123456", "213456", "321456",
    "215436", "214356", "312546", "341256", "314256", "241536", "1234567", "2134567", "3214567",
    "2143567", "2154367", "2165437", "3216547", "2143657", "3412567", "3125467", "4123657",
    "3126457", "3254167", "3142567", "3142657", "3145267", "3415267", "3154267", "2415367",
    "2415637", "2516347", "3625147", "4136257", "5264137",
];

pub fn table_row(pres: &Presentation, columns: &[&str]) -> Result<Vec<BigInt>> {
    columns
        .iter()
        .map(|c| c.parse::<Target>()?.delta(pres))
        .collect()
}

pub fn table1() -> Result<Vec<(String, Vec<BigInt>)>> {
    TABLE1_ROWS
        .iter()
        .map(|&name| Ok((name.to_string(), table_row(&fixture(name)?, &TABLE1_COLUMNS)?)))
        .collect()
}

pub fn table2_row(tau: &str) -> Result<Vec<BigInt>> {
    table_row(&horizontal_presentation(&parse_permutation(tau)?)?, &TABLE2_COLUMNS)
}

pub fn table2() -> Result<Vec<(String, Vec<BigInt>)>> {
    TABLE2_ROWS
        .iter()
        .map(|&tau| Ok((format!("A({tau})"), table2_row(tau)?)))
        .collect()
}
