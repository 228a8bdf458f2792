use std::fmt;

/// Interned generator index into a [`Presentation`](super::Presentation).
pub type GenId = usize;

/// A word in a free group, stored as exponent runs `(generator, exponent)`.
///
/// Every constructor except [`Word::from_raw`] returns the freely reduced
/// form: no zero exponents and no two adjacent runs on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<(GenId, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: GenId) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    pub fn power_of(g: GenId, exp: i64) -> Self {
        Word::from_raw(vec![(g, exp)]).free_reduce()
    }

    pub fn new(letters: impl IntoIterator<Item = (GenId, i64)>) -> Self {
        Word::from_raw(letters.into_iter().collect()).free_reduce()
    }

    /// Keeps the runs exactly as given, without reduction.
    pub fn from_raw(letters: Vec<(GenId, i64)>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[(GenId, i64)] {
        &self.letters
    }

    /// Canonical freely reduced form; idempotent.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<(GenId, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by cancellation across the cyclic seam.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().letters;
        while w.len() >= 2 {
            let (fg, fe) = w[0];
            let (lg, le) = w[w.len() - 1];
            if fg != lg {
                break;
            }
            let merged = fe + le;
            w.pop();
            if merged == 0 {
                w.remove(0);
            } else {
                w[0] = (fg, merged);
                break;
            }
        }
        if w.len() == 1 && w[0].1 == 0 {
            w.clear();
        }
        Word { letters: w }
    }

    pub fn is_identity(&self) -> bool {
        self.free_reduce().letters.is_empty()
    }

    /// Number of exponent runs.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Length as a word in the generators and their inverses.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_raw(letters).free_reduce()
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::from_raw(letters).free_reduce()
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    pub fn exponent_sum(&self, g: GenId) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| l.1).sum()
    }

    pub fn max_generator(&self) -> Option<GenId> {
        self.letters.iter().map(|l| l.0).max()
    }

    pub fn mentions(&self, g: GenId) -> bool {
        self.letters.iter().any(|l| l.0 == g)
    }

    /// Expanded form: one entry per letter, each with exponent ±1.
    pub fn expand(&self) -> Vec<(GenId, i64)> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for &(g, e) in &self.letters {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e.signum()));
            }
        }
        out
    }

    /// Replaces each generator through `f`, which maps it to a word.
    pub fn substitute(&self, f: impl Fn(GenId) -> Word) -> Word {
        let mut letters = Vec::new();
        for &(g, e) in &self.letters {
            letters.extend_from_slice(f(g).pow(e).letters());
        }
        Word::from_raw(letters).free_reduce()
    }

    /// Renders with the supplied generator names: `a^2 b^-1`, or `1` when empty.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(g).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Standalone reduction entry point.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let w = Word::from_raw(vec![(0, 1), (0, -1), (1, 1)]);
        assert_eq!(free_reduce(&w), Word::gen(1));
    }

    #[test]
    fn empty_stays_empty() {
        assert_eq!(free_reduce(&Word::identity()), Word::identity());
    }

    #[test]
    fn reduced_commutator_unchanged() {
        let w = Word::from_raw(vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert_eq!(free_reduce(&w), w);
    }

    #[test]
    fn nested_cancellation_and_merging() {
        let w = Word::from_raw(vec![(0, 2), (1, 1), (2, 0), (1, -1), (0, -1), (3, 1)]);
        assert_eq!(w.free_reduce().letters(), &[(0, 1), (3, 1)]);
    }

    #[test]
    fn commutator_convention() {
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.letters(), &[(0, -1), (1, -1), (0, 1), (1, 1)]);
        let c_inv = Word::commutator(&Word::gen(0).inverse(), &Word::gen(1).inverse());
        assert_eq!(c_inv.letters(), &[(0, 1), (1, 1), (0, -1), (1, -1)]);
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_raw(vec![(0, 1), (1, 2), (0, -1)]);
        assert_eq!(w.cyclic_reduce(), Word::power_of(1, 2));
        let w = Word::from_raw(vec![(0, 2), (1, 1), (0, 1)]);
        assert_eq!(w.cyclic_reduce().letters(), &[(0, 3), (1, 1)]);
    }

    #[test]
    fn powers_and_inverses() {
        let x = Word::new([(0, 1), (1, 1)]);
        assert_eq!(x.pow(2).length(), 4);
        assert!(x.mul(&x.inverse()).is_identity());
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.pow(0), Word::identity());
    }

    #[test]
    fn display() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let w = Word::new([(0, 2), (1, -1)]);
        assert_eq!(w.display_with(&names).to_string(), "a^2 b^-1");
        assert_eq!(Word::identity().display_with(&names).to_string(), "1");
    }
}
