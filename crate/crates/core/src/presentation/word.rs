use std::fmt;

/// One generator or its inverse, stored as a signed 1-based generator index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 or -1.
    pub fn exponent(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// A word in the generators of a presentation. Words are stored as written;
/// reduction happens only when asked for.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(generator: usize, inverse: bool) -> Self {
        Word(vec![Letter::new(generator, inverse)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^n`, with negative `n` meaning a power of the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancellation of inverse letters across
    /// the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let v = &w.0;
        let mut lo = 0;
        let mut hi = v.len();
        while hi - lo >= 2 && v[lo] == v[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(v[lo..hi].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn rotate_left(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        Word(v)
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == generator)
            .map(|l| l.exponent() as i64)
            .sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator() == generator).count()
    }

    pub fn contains(&self, generator: usize) -> bool {
        self.0.iter().any(|l| l.generator() == generator)
    }

    /// Replaces every occurrence of `generator` by `value` (and its inverse by
    /// the inverse of `value`). No reduction is performed.
    pub fn substitute(&self, generator: usize, value: &Word) -> Word {
        let inv = value.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.generator() == generator {
                let w = if l.is_inverse() { &inv } else { value };
                out.extend_from_slice(&w.0);
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, mut f: impl FnMut(usize) -> usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(f(l.generator()), l.is_inverse()))
                .collect(),
        )
    }

    /// Smallest representative of the word up to cyclic rotation and
    /// inversion. Expects a cyclically reduced word.
    pub fn cyclic_canonical(&self) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let inv = self.inverse();
        let mut best = self.clone();
        for k in 0..n {
            for w in [self.rotate_left(k), inv.rotate_left(k)] {
                if w < best {
                    best = w;
                }
            }
        }
        best
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &[i32]) -> Word {
        spec.iter()
            .map(|&x| Letter::new((x.unsigned_abs() - 1) as usize, x < 0))
            .collect()
    }

    #[test]
    fn free_reduction_cancels_adjacent_pairs() {
        assert_eq!(w(&[1, 2, -2, -1, 3]).free_reduce(), w(&[3]));
        assert_eq!(w(&[1, -1]).free_reduce(), Word::empty());
    }

    #[test]
    fn cyclic_reduction_cancels_ends() {
        assert_eq!(w(&[1, 2, 3, -1]).cyclic_reduce(), w(&[2, 3]));
        assert_eq!(w(&[1, 2, -1]).cyclic_reduce(), w(&[2]));
    }

    #[test]
    fn substitute_handles_inverse_occurrences() {
        let word = w(&[1, -3]);
        let value = w(&[1, 2]);
        assert_eq!(word.substitute(2, &value), w(&[1, -2, -1]));
    }

    #[test]
    fn canonical_form_identifies_rotations_and_inverses() {
        let a = w(&[1, 2, -1, -2]);
        let b = a.rotate_left(1);
        let c = a.inverse();
        assert_eq!(a.cyclic_canonical(), b.cyclic_canonical());
        assert_eq!(a.cyclic_canonical(), c.cyclic_canonical());
    }

    #[test]
    fn pow_negative_is_inverse_power() {
        assert_eq!(w(&[1, 2]).pow(-2), w(&[-2, -1, -2, -1]));
        assert!(w(&[1]).pow(0).is_empty());
    }
}
