//! The subgroup H = ⟨x, y⟩ of F(a,b) with x = a and y = b⁻¹ab.
//!
//! H is free of rank 2, and membership is decided by tracing the folded core
//! graph of H, which has two states: `u` (b-level 0, the base) and `w`
//! (b-level -1). Both carry an a-loop, and a single b-edge runs from `w` up
//! to `u`. A freely reduced word lies in H exactly when its trace is defined
//! and closes at `u`; equivalently, its prefix b-sums stay in {0, -1} and
//! every descent to level -1 returns through the matching b.

use std::fmt;
use std::str::FromStr;

use crate::parse::{parse_with_alphabet, Alphabet, ParseError};
use crate::whitehead::OrbitSet;
use crate::word::{apply_endo, Gen, Letter, Word};

/// States of the core graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum State {
    /// Base vertex, b-level 0.
    U,
    /// b-level -1.
    W,
}

/// Deterministic transition; `None` means the letter cannot be read.
pub fn step(state: State, letter: Letter) -> Option<State> {
    match (state, letter) {
        (State::U, Letter::A) | (State::U, Letter::AInv) => Some(State::U),
        (State::U, Letter::BInv) => Some(State::W),
        (State::U, Letter::B) => None,
        (State::W, Letter::A) | (State::W, Letter::AInv) => Some(State::W),
        (State::W, Letter::B) => Some(State::U),
        (State::W, Letter::BInv) => None,
    }
}

/// Trace `w` from the base; `Some(state)` is the endpoint if every letter
/// could be read.
pub fn trace(word: &Word) -> Option<State> {
    let mut state = State::U;
    for &l in word.letters() {
        state = step(state, l)?;
    }
    Some(state)
}

/// Membership in H, linear in |w|.
pub fn membership(word: &Word) -> bool {
    trace(word) == Some(State::U)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubgroupError {
    #[error("word is not an element of <a, b^-1 a b>")]
    NotInSubgroup,
}

/// A freely reduced word in the free basis {x, y} of H.
///
/// Backed by the same letter type as `Word` (x ≙ a, y ≙ b); the wrapper
/// keeps the two alphabets from mixing and owns the x/y text format.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct XYWord(Word);

impl XYWord {
    pub fn empty() -> XYWord {
        XYWord(Word::empty())
    }

    pub fn from_word(w: Word) -> XYWord {
        XYWord(w)
    }

    pub fn as_inner(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Count of x±1 letters.
    pub fn x_count(&self) -> usize {
        self.0
            .letters()
            .iter()
            .filter(|l| l.generator() == Gen::A)
            .count()
    }

    /// Count of y±1 letters.
    pub fn y_count(&self) -> usize {
        self.0.len() - self.x_count()
    }

    /// Number of maximal y±1 runs.
    pub fn y_syllables(&self) -> usize {
        let mut runs = 0;
        let mut in_run = false;
        for l in self.0.letters() {
            let is_y = l.generator() == Gen::B;
            if is_y && !in_run {
                runs += 1;
            }
            in_run = is_y;
        }
        runs
    }
}

impl fmt::Display for XYWord {
    /// Caret-power form over x, y: e.g. `x^-2 y^2`, `y x^-1`, `` (empty).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = self.0.letters();
        let mut i = 0;
        let mut first = true;
        while i < ls.len() {
            let l = ls[i];
            let mut run = 1;
            while i + run < ls.len() && ls[i + run] == l {
                run += 1;
            }
            i += run;
            let base = match l.generator() {
                Gen::A => 'x',
                Gen::B => 'y',
            };
            let exp = if l.is_positive() {
                run as i64
            } else {
                -(run as i64)
            };
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for XYWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<XYWord, ParseError> {
        Ok(XYWord(parse_with_alphabet(s, Alphabet::XY)?))
    }
}

/// Rewrite a member of H over the basis {x, y}: a±1 read at the base becomes
/// x±1, and each excursion b⁻¹ a^k b becomes y^k.
pub fn rewrite_to_xy(word: &Word) -> Result<XYWord, SubgroupError> {
    let ls = word.letters();
    let mut out: Vec<Letter> = Vec::with_capacity(ls.len());
    let mut i = 0;
    while i < ls.len() {
        match ls[i] {
            Letter::A => {
                out.push(Letter::A);
                i += 1;
            }
            Letter::AInv => {
                out.push(Letter::AInv);
                i += 1;
            }
            Letter::BInv => {
                // Excursion to level -1: a^k then the closing b. In a freely
                // reduced word the run between the two b-letters is a single
                // sign, and it is non-empty.
                i += 1;
                let y = loop {
                    match ls.get(i) {
                        Some(Letter::A) => {
                            out.push(Letter::B);
                            i += 1;
                        }
                        Some(Letter::AInv) => {
                            out.push(Letter::BInv);
                            i += 1;
                        }
                        Some(Letter::B) => {
                            i += 1;
                            break true;
                        }
                        _ => break false,
                    }
                };
                if !y {
                    return Err(SubgroupError::NotInSubgroup);
                }
            }
            Letter::B => return Err(SubgroupError::NotInSubgroup),
        }
    }
    // The emitted sequence is freely reduced because the source was: a
    // cancellation in the image would mirror one in the source.
    Ok(XYWord(Word::from_letters(out)))
}

/// Substitute x -> a, y -> b⁻¹ a b and freely reduce.
pub fn expand_xy(t: &XYWord) -> Word {
    let image_x = Word::single(Letter::A);
    let image_y = Word::from_letters(vec![Letter::BInv, Letter::A, Letter::B]);
    apply_endo(&t.0, &image_x, &image_y)
}

/// Scan an orbit set for a linear representative lying in H.
///
/// Members are visited in canonical set order, and each member's rotations in
/// shift order starting from the canonical rotation; the first rotation that
/// passes membership is returned together with its x/y rewriting.
pub fn find_representative(orbit: &OrbitSet) -> Option<(Word, XYWord)> {
    for member in orbit.members() {
        for shift in 0..member.len().max(1) {
            let rot = member.rotation(shift);
            if membership(&rot) {
                let xy = rewrite_to_xy(&rot).expect("membership implies rewritability");
                return Some((rot, xy));
            }
        }
    }
    None
}
