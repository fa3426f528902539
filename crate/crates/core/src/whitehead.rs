//! Whitehead automorphisms of F(a,b) and orbit minimisation of cyclic words.
//!
//! The generating set has twenty elements: the eight signed permutations of
//! the basis, and twelve multiplier maps that fix one generator m (as a
//! letter) and send the other generator z to zm, m⁻¹z, or m⁻¹zm. Greedy
//! descent over this set reaches the minimal cyclic length in the orbit of
//! Aut F(a,b), and breadth-first closure at that length enumerates every
//! minimal-length cyclic word in the orbit (peak reduction: any non-minimal
//! class admits a strictly length-reducing multiplier, and minimal classes
//! in one orbit are connected through equal-length images).

use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::fmt;

use crate::word::{apply_endo, CyclicWord, Gen, Letter, Word, WordError};

/// How a multiplier automorphism combines the acted generator z with the
/// multiplier letter m.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// z -> zm
    Right,
    /// z -> m⁻¹z
    Left,
    /// z -> m⁻¹zm (inner, so it fixes every cyclic word)
    Conj,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WhiteheadAut {
    /// Signed permutation of the basis; `image_a` and `image_b` must involve
    /// distinct generators.
    Perm { image_a: Letter, image_b: Letter },
    /// Multiplier map: fixes the generator of `m`, acts on `z`.
    /// `m` never involves `z` itself.
    Mult { z: Gen, m: Letter, mode: Mode },
}

impl WhiteheadAut {
    /// Images of (a, b) as words.
    pub fn images(&self) -> (Word, Word) {
        match *self {
            WhiteheadAut::Perm { image_a, image_b } => {
                (Word::single(image_a), Word::single(image_b))
            }
            WhiteheadAut::Mult { z, m, mode } => {
                let zl = z.with_sign(true);
                let img = match mode {
                    Mode::Right => Word::from_letters(vec![zl, m]),
                    Mode::Left => Word::from_letters(vec![m.inverse(), zl]),
                    Mode::Conj => Word::from_letters(vec![m.inverse(), zl, m]),
                };
                match z {
                    Gen::A => (img, Word::single(Letter::B)),
                    Gen::B => (Word::single(Letter::A), img),
                }
            }
        }
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ia, ib) = self.images();
        write!(f, "a->{ia} b->{ib}")
    }
}

/// The full generating set in a fixed order: permutations first, then
/// multiplier maps keyed by (m, mode).
pub fn generating_set() -> Vec<WhiteheadAut> {
    let mut out = Vec::with_capacity(20);
    for image_a in [Letter::A, Letter::AInv, Letter::B, Letter::BInv] {
        let other = image_a.generator().other();
        for positive in [true, false] {
            out.push(WhiteheadAut::Perm {
                image_a,
                image_b: other.with_sign(positive),
            });
        }
    }
    for m in [Letter::A, Letter::AInv, Letter::B, Letter::BInv] {
        let z = m.generator().other();
        for mode in [Mode::Right, Mode::Left, Mode::Conj] {
            out.push(WhiteheadAut::Mult { z, m, mode });
        }
    }
    out
}

/// Image of a cyclic word under an automorphism, as a cyclic word.
pub fn apply(aut: &WhiteheadAut, c: &CyclicWord) -> CyclicWord {
    let (ia, ib) = aut.images();
    CyclicWord::from_word(&apply_endo(&c.as_word(), &ia, &ib))
}

/// Greedy descent to a minimal-length representative of the orbit of `c`.
/// Returns the minimum and the sequence of automorphisms applied, in order.
/// Inputs of length ≤ 1 are already minimal and come back unchanged.
pub fn minimize(c: &CyclicWord) -> (CyclicWord, Vec<WhiteheadAut>) {
    let gens = generating_set();
    let mut current = c.clone();
    let mut witness = Vec::new();
    if current.len() <= 1 {
        return (current, witness);
    }
    'descend: loop {
        for aut in &gens {
            let image = apply(aut, &current);
            if image.len() < current.len() {
                witness.push(*aut);
                current = image;
                continue 'descend;
            }
        }
        return (current, witness);
    }
}

/// Every minimal-length cyclic word in the orbit of one input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitSet {
    members: BTreeSet<CyclicWord>,
    min_length: usize,
}

impl OrbitSet {
    pub fn members(&self) -> &BTreeSet<CyclicWord> {
        &self.members
    }

    pub fn min_length(&self) -> usize {
        self.min_length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &CyclicWord) -> bool {
        self.members.contains(c)
    }

    /// Canonical-rotation strings in set order (lexicographic under the
    /// letter order a < a⁻¹ < b < b⁻¹).
    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(|c| c.to_string()).collect()
    }
}

/// Default cardinality guard: an orbit set larger than this multiple of its
/// minimal length indicates a bug (the true set is linearly bounded).
pub const DEFAULT_ORBIT_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WhiteheadError {
    #[error("orbit set exceeded the cardinality guard: {found} members at minimal length {min_length} (cap {cap} per unit length)")]
    CardinalityBlown {
        found: usize,
        min_length: usize,
        cap: usize,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

pub fn shortest_orbit_set(c: &CyclicWord) -> Result<OrbitSet, WhiteheadError> {
    shortest_orbit_set_capped(c, DEFAULT_ORBIT_CAP)
}

/// BFS closure of the greedy minimum under length-preserving images.
/// `cap` bounds members per unit of minimal length.
pub fn shortest_orbit_set_capped(c: &CyclicWord, cap: usize) -> Result<OrbitSet, WhiteheadError> {
    let gens = generating_set();
    let (min, _) = minimize(c);
    let min_length = min.len();
    let bound = cap.saturating_mul(min_length.max(1));
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    members.insert(min.clone());
    queue.push_back(min);
    while let Some(next) = queue.pop_front() {
        for aut in &gens {
            let image = apply(aut, &next);
            if image.len() == min_length && !members.contains(&image) {
                members.insert(image.clone());
                if members.len() > bound {
                    return Err(WhiteheadError::CardinalityBlown {
                        found: members.len(),
                        min_length,
                        cap,
                    });
                }
                queue.push_back(image);
            }
        }
    }
    Ok(OrbitSet {
        members,
        min_length,
    })
}

/// A word is primitive (part of a free basis) exactly when its cyclic class
/// minimises to a single letter.
pub fn is_primitive(w: &Word) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let (min, _) = minimize(&CyclicWord::from_word(w));
    Ok(min.len() == 1)
}

/// If the cyclic core of `w` is the cyclic word of [a,b]^k, returns k
/// (0 for the empty word, negative for powers of the inverse commutator).
pub fn commutator_power(w: &Word) -> Option<i64> {
    let core = CyclicWord::from_word(w);
    if core.is_empty() {
        return Some(0);
    }
    if !core.len().is_multiple_of(4) {
        return None;
    }
    let k = (core.len() / 4) as i64;
    let commutator = Word::from_letters(vec![Letter::A, Letter::B, Letter::AInv, Letter::BInv]);
    if core == CyclicWord::from_word(&commutator.power(k)) {
        return Some(k);
    }
    if core == CyclicWord::from_word(&commutator.power(-k)) {
        return Some(-k);
    }
    None
}
