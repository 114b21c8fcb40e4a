use std::fmt;

/// A freely reduced word in a free group, stored as syllables `(generator, exponent)`.
///
/// Adjacent syllables always carry distinct generators and no exponent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn generator(index: usize) -> Self {
        Word {
            syllables: vec![(index, 1)],
        }
    }

    pub fn power_of(index: usize, exponent: i64) -> Self {
        Self::from_syllables([(index, exponent)])
    }

    /// Builds a word from arbitrary syllables, freely reducing as it goes.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        let mut word = Word::identity();
        for (g, e) in syllables {
            word.push_syllable(g, e);
        }
        word
    }

    /// Builds a word from letters `(generator, ±1)`.
    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Self {
        Self::from_syllables(letters.into_iter().map(|(g, s)| (g, s as i64)))
    }

    fn push_syllable(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Expands the word into letters `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            let sign = if e > 0 { 1i8 } else { -1i8 };
            std::iter::repeat_n((g, sign), e.unsigned_abs() as usize)
        })
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push_syllable(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.multiply(v).multiply(&u.inverse()).multiply(&v.inverse())
    }

    /// `y⁻¹ x y`.
    pub fn conjugate_by(&self, y: &Word) -> Word {
        y.inverse().multiply(self).multiply(y)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    /// Exponent sum of each generator.
    pub fn exponent_vector(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0; num_generators];
        for &(g, e) in &self.syllables {
            v[g] += e;
        }
        v
    }

    /// Substitutes `images[g]` for every generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.syllables {
            out = out.multiply(&images[g].pow(e));
        }
        out
    }

    /// Renders the word with the given generator names, `1` for the identity.
    pub fn render(&self, names: &[String]) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.max_generator().map_or(0, |m| m + 1);
        let names: Vec<String> = (0..max).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.render(&names))
    }
}
