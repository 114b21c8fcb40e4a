//! Finitely presented groups: words, the text format and standard families.

mod parse;
mod word;

use std::fmt;
use std::str::FromStr;

pub use parse::parse_presentation;
pub use word::Word;

use crate::error::{Error, ParseError, Result};

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relators are freely reduced but not cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// # Panics
    /// If a relator mentions a generator index outside the generator list.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let n = generators.len();
        for r in &relators {
            if let Some(g) = r.max_generator() {
                assert!(g < n, "relator uses generator {g} but only {n} are declared");
            }
        }
        Presentation { generators, relators }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        format!("gens: {}\nrels: {}\n", self.generators.join(", "), rels.join(", "))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Presentation {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_presentation(s)
    }
}

/// The standard families of example groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Free group of rank `n`.
    Free(usize),
    /// Direct product `F_{n1} × … × F_{nk}` with commuting-generator relators.
    ProductOfFrees(Vec<usize>),
    /// Closed orientable surface of genus `g`.
    OrientableSurface(usize),
    /// Connected sum of `n` projective planes.
    NonorientableSurface(usize),
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn free(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::InvalidParameter("free group rank must be positive".into()));
    }
    Ok(Presentation::new(numbered("x", n), Vec::new()))
}

/// `F_{n1} × … × F_{nk}`: every generator of one factor commutes with every
/// generator of every other factor.
pub fn product_of_frees(ranks: &[usize]) -> Result<Presentation> {
    if ranks.is_empty() || ranks.contains(&0) {
        return Err(Error::InvalidParameter("factor ranks must be positive".into()));
    }
    const PREFIXES: [&str; 6] = ["x", "y", "u", "v", "w", "c"];
    let mut generators = Vec::new();
    let mut blocks = Vec::new();
    for (k, &n) in ranks.iter().enumerate() {
        let start = generators.len();
        let names = match PREFIXES.get(k) {
            Some(p) => numbered(p, n),
            None => numbered(&format!("g{}_", k + 1), n),
        };
        generators.extend(names);
        blocks.push(start..start + n);
    }
    let mut relators = Vec::new();
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            for i in blocks[a].clone() {
                for j in blocks[b].clone() {
                    relators.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
                }
            }
        }
    }
    Ok(Presentation::new(generators, relators))
}

/// `⟨x1..x2g | [x1,x2]⋯[x_{2g−1},x_{2g}]⟩`.
pub fn orientable_surface(genus: usize) -> Result<Presentation> {
    if genus == 0 {
        return Err(Error::InvalidParameter("genus must be positive".into()));
    }
    let mut r = Word::identity();
    for i in 0..genus {
        r = r.multiply(&Word::commutator(
            &Word::generator(2 * i),
            &Word::generator(2 * i + 1),
        ));
    }
    Ok(Presentation::new(numbered("x", 2 * genus), vec![r]))
}

/// `⟨x1..xn | x1²⋯xn²⟩`.
pub fn nonorientable_surface(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::InvalidParameter("genus must be positive".into()));
    }
    let r = Word::from_syllables((0..n).map(|i| (i, 2)));
    Ok(Presentation::new(numbered("x", n), vec![r]))
}

/// `P × Z`: adds a central generator commuting with every generator of `P`.
pub fn direct_product_with_z(p: &Presentation) -> Presentation {
    let mut name = "z".to_string();
    while p.generator_index(&name).is_some() {
        name.push('_');
    }
    let z = p.num_generators();
    let mut generators = p.generators().to_vec();
    generators.push(name);
    let mut relators = p.relators().to_vec();
    for g in 0..z {
        relators.push(Word::commutator(&Word::generator(z), &Word::generator(g)));
    }
    Presentation::new(generators, relators)
}

pub fn standard_group(family: &Family) -> Result<Presentation> {
    match family {
        Family::Free(n) => free(*n),
        Family::ProductOfFrees(ranks) => product_of_frees(ranks),
        Family::OrientableSurface(g) => orientable_surface(*g),
        Family::NonorientableSurface(n) => nonorientable_surface(*n),
    }
}
