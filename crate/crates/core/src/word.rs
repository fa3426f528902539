//! Words over the rank-2 free group F(a,b).
//!
//! `Word` is always freely reduced; `CyclicWord` is additionally cyclically
//! reduced and stored in its canonical (least) rotation, so equality of
//! `CyclicWord`s is equality of conjugacy classes of the underlying elements.

use std::fmt;

/// A signed generator letter. The discriminant order `a < a⁻¹ < b < b⁻¹`
/// is load-bearing: it fixes canonical rotations and every lexicographic
/// tie-break downstream.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    AInv = 1,
    B = 2,
    BInv = 3,
}

/// An unsigned generator name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }

    pub fn with_sign(self, positive: bool) -> Letter {
        match (self, positive) {
            (Gen::A, true) => Letter::A,
            (Gen::A, false) => Letter::AInv,
            (Gen::B, true) => Letter::B,
            (Gen::B, false) => Letter::BInv,
        }
    }
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn generator(self) -> Gen {
        match self {
            Letter::A | Letter::AInv => Gen::A,
            Letter::B | Letter::BInv => Gen::B,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::A | Letter::B)
    }

    /// Signed contribution to the exponent sum of its generator.
    pub fn sign(self) -> i64 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("empty word has no root")]
    EmptyWord,
}

/// Exponent sums (images in the abelianisation Z^2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExponentSums {
    pub a: i64,
    pub b: i64,
}

impl ExponentSums {
    /// True exactly when the word lies in the derived subgroup F'.
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// A freely reduced word. The reduction invariant is established by every
/// constructor and preserved by every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Push a letter onto a reduction stack, cancelling against the top.
#[inline]
fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl Word {
    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    /// Freely reduce an arbitrary letter sequence.
    pub fn free_reduce(raw: &[Letter]) -> Word {
        let mut stack = Vec::with_capacity(raw.len());
        for &l in raw {
            push_reduced(&mut stack, l);
        }
        Word { letters: stack }
    }

    pub fn from_letters(raw: Vec<Letter>) -> Word {
        Word::free_reduce(&raw)
    }

    pub fn single(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Word { letters: stack }
    }

    /// `self` raised to an integer power (negative powers invert first).
    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn exponent_sums(&self) -> ExponentSums {
        let mut sums = ExponentSums { a: 0, b: 0 };
        for &l in &self.letters {
            match l.generator() {
                Gen::A => sums.a += l.sign(),
                Gen::B => sums.b += l.sign(),
            }
        }
        sums
    }

    /// Split `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced. The empty word yields two empty parts.
    pub fn cyclic_reduce(&self) -> (Word, CyclicWord) {
        let ls = &self.letters;
        let mut i = 0;
        let mut j = ls.len();
        while j - i >= 2 && ls[i] == ls[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        let prefix = Word {
            letters: ls[..i].to_vec(),
        };
        let core_literal = &ls[i..j];
        let shift = least_rotation_index(core_literal);
        // Rotating the core by `shift` conjugates it by its first `shift`
        // letters, so fold those into the conjugator.
        let conjugator = prefix.concat(&Word {
            letters: core_literal[..shift].to_vec(),
        });
        let mut rotated = Vec::with_capacity(core_literal.len());
        rotated.extend_from_slice(&core_literal[shift..]);
        rotated.extend_from_slice(&core_literal[..shift]);
        (conjugator, CyclicWord { letters: rotated })
    }

    /// Maximal-root decomposition: returns `(root, n)` with `self = root^n`
    /// and `n` as large as possible.
    pub fn max_root(&self) -> Result<(Word, u32), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let (conj, core) = self.cyclic_reduce();
        let p = smallest_period(&core.letters);
        let n = (core.len() / p) as u32;
        let root_core = Word {
            letters: core.letters[..p].to_vec(),
        };
        let root = conj.concat(&root_core).concat(&conj.inverse());
        Ok((root, n))
    }
}

/// Apply the endomorphism `a -> image_a, b -> image_b` and freely reduce.
pub fn apply_endo(w: &Word, image_a: &Word, image_b: &Word) -> Word {
    let mut stack = Vec::with_capacity(w.len() * 2);
    for &l in w.letters() {
        let img = match l.generator() {
            Gen::A => image_a,
            Gen::B => image_b,
        };
        if l.is_positive() {
            for &m in img.letters() {
                push_reduced(&mut stack, m);
            }
        } else {
            for &m in img.letters().iter().rev() {
                push_reduced(&mut stack, m.inverse());
            }
        }
    }
    Word { letters: stack }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// A cyclically reduced cyclic word stored in canonical rotation: the least
/// rotation under the letter order `a < a⁻¹ < b < b⁻¹`. Two conjugate
/// cyclically reduced words compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn empty() -> CyclicWord {
        CyclicWord {
            letters: Vec::new(),
        }
    }

    /// Cyclic class of a word (conjugator discarded).
    pub fn from_word(w: &Word) -> CyclicWord {
        w.cyclic_reduce().1
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The canonical rotation as a linear word.
    pub fn as_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }

    /// Rotation that moves the first `shift` letters to the end. Every
    /// rotation of a cyclically reduced word is freely reduced.
    pub fn rotation(&self, shift: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::empty();
        }
        let s = shift % n;
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&self.letters[s..]);
        out.extend_from_slice(&self.letters[..s]);
        Word { letters: out }
    }

    /// All distinct rotations, starting from the canonical one. A word of
    /// period p has exactly p distinct rotations.
    pub fn rotations(&self) -> Vec<Word> {
        if self.is_empty() {
            return vec![Word::empty()];
        }
        let p = smallest_period(&self.letters);
        (0..p).map(|s| self.rotation(s)).collect()
    }

    pub fn smallest_period(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            smallest_period(&self.letters)
        }
    }

    pub fn exponent_sums(&self) -> ExponentSums {
        self.as_word().exponent_sums()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_word())
    }
}

/// Booth's least-rotation algorithm; returns the starting index of the
/// lexicographically least rotation.
fn least_rotation_index(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest period that divides the length (via the KMP failure function);
/// returns the full length for strings that are not proper repetitions.
fn smallest_period(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut j = fail[i - 1];
        while j > 0 && s[i] != s[j] {
            j = fail[j - 1];
        }
        if s[i] == s[j] {
            j += 1;
        }
        fail[i] = j;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn free_reduction_cancels_inverse_pairs() {
        // a b b^-1 a -> aa
        let raw = vec![Letter::A, Letter::B, Letter::BInv, Letter::A];
        assert_eq!(Word::from_letters(raw), w("aa"));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("AABaab").inverse(), w("BAAbaa"));
        assert_eq!(w("ab").concat(&w("ab").inverse()), Word::empty());
    }

    #[test]
    fn concat_reduces_across_the_seam() {
        assert_eq!(w("ab").concat(&w("BA")), Word::empty());
        assert_eq!(w("aab").concat(&w("Bba")), w("aaba"));
    }

    #[test]
    fn cyclic_reduce_peels_conjugation() {
        let (conj, core) = w("Bab").cyclic_reduce();
        assert_eq!(conj, w("B"));
        assert_eq!(core, CyclicWord::from_word(&w("a")));

        let (conj, core) = w("AabABa").cyclic_reduce();
        assert_eq!(core, CyclicWord::from_word(&w("abAB")));
        // Recomposition holds in the group.
        let recomposed = conj.concat(&core.as_word()).concat(&conj.inverse());
        assert_eq!(recomposed, w("AabABa"));
    }

    #[test]
    fn cyclic_reduce_of_empty_is_empty() {
        let (conj, core) = Word::empty().cyclic_reduce();
        assert!(conj.is_empty());
        assert!(core.is_empty());
    }

    #[test]
    fn canonical_rotation_is_least_under_letter_order() {
        // Rotations of AABaab; least under a < A < b < B is aabAAB.
        let c = CyclicWord::from_word(&w("AABaab"));
        assert_eq!(c.as_word(), w("aabAAB"));
        // All rotations share the class.
        for r in c.rotations() {
            assert_eq!(CyclicWord::from_word(&r), c);
        }
    }

    #[test]
    fn rotations_dedup_by_period() {
        let c = CyclicWord::from_word(&w("aa"));
        assert_eq!(c.rotations(), vec![w("aa")]);

        let c = CyclicWord::from_word(&w("abAB"));
        assert_eq!(c.rotations().len(), 4);
    }

    #[test]
    fn exponent_sums_add_under_concat() {
        let u = w("aabA");
        let v = w("bbAB");
        let uv = u.concat(&v);
        let su = u.exponent_sums();
        let sv = v.exponent_sums();
        let suv = uv.exponent_sums();
        assert_eq!(suv.a, su.a + sv.a);
        assert_eq!(suv.b, su.b + sv.b);
        assert!(w("aabbABAB").exponent_sums().is_zero());
        assert_eq!(w("ab").exponent_sums(), ExponentSums { a: 1, b: 1 });
    }

    #[test]
    fn max_root_finds_maximal_power() {
        let (root, n) = w("aa").max_root().unwrap();
        assert_eq!((root, n), (w("a"), 2));

        let (root, n) = w("AABaab").power(3).max_root().unwrap();
        assert_eq!((root, n), (w("AABaab"), 3));

        let (root, n) = w("abAB").max_root().unwrap();
        assert_eq!((root, n), (w("abAB"), 1));

        // Root of a conjugated power is the conjugated root.
        let conj = w("bA");
        let inner = w("abAB").power(2);
        let word = conj.concat(&inner).concat(&conj.inverse());
        let (root, n) = word.max_root().unwrap();
        assert_eq!(n, 2);
        assert_eq!(root.power(2), word);
    }

    #[test]
    fn max_root_rejects_empty() {
        assert_eq!(Word::empty().max_root(), Err(WordError::EmptyWord));
    }

    #[test]
    fn apply_endo_reduces_images() {
        // a -> ab fixes the commutator: (ab)b(ab)^-1 b^-1 = abAB.
        let img_a = w("ab");
        let img_b = w("b");
        assert_eq!(apply_endo(&w("abAB"), &img_a, &img_b), w("abAB"));
        // aaB -> (ab)(ab)B with the trailing bB cancelling.
        assert_eq!(apply_endo(&w("aaB"), &img_a, &img_b), w("aba"));
        // Conjugation acts trivially on cyclic classes.
        let conj_a = w("Bab");
        let image = apply_endo(&w("abAB"), &conj_a, &img_b);
        assert_eq!(
            CyclicWord::from_word(&image),
            CyclicWord::from_word(&w("abAB"))
        );
    }

    #[test]
    fn booth_agrees_with_naive_least_rotation() {
        let words = ["aabAAB", "abAB", "bbabb", "aaaa", "BABA", "abba", "a"];
        for s in words {
            let ls = w(s);
            let ls = ls.letters();
            if ls.is_empty() {
                continue;
            }
            let naive = (0..ls.len())
                .map(|k| {
                    let mut v = ls[k..].to_vec();
                    v.extend_from_slice(&ls[..k]);
                    v
                })
                .min()
                .unwrap();
            let idx = least_rotation_index(ls);
            let mut got = ls[idx..].to_vec();
            got.extend_from_slice(&ls[..idx]);
            assert_eq!(got, naive, "least rotation of {s}");
        }
    }
}
