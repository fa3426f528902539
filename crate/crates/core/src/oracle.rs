//! Brute-force oracles and corpus generators.
//!
//! Everything here is deliberately independent of the production search in
//! `whitehead`: the automorphism list is hardcoded as plain image pairs and
//! orbits are explored by exhaustive BFS, so a bug in the clever code
//! cannot certify itself. Only the shared word plumbing is reused.

use crate::subgroup::{expand_xy, XYWord};
use crate::word::{apply_endo, CyclicWord, Letter, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

/// The rank-2 Whitehead generating set as raw image pairs (image of a,
/// image of b): 8 signed generator permutations followed by 12 one-sided /
/// conjugating multiplications.
const AUT_IMAGES: [(&str, &str); 20] = [
    ("a", "b"),
    ("a", "B"),
    ("A", "b"),
    ("A", "B"),
    ("b", "a"),
    ("b", "A"),
    ("B", "a"),
    ("B", "A"),
    ("ab", "b"),
    ("aB", "b"),
    ("Ba", "b"),
    ("ba", "b"),
    ("Bab", "b"),
    ("baB", "b"),
    ("a", "ba"),
    ("a", "bA"),
    ("a", "Ab"),
    ("a", "ab"),
    ("a", "Aba"),
    ("a", "abA"),
];

fn aut_image_words() -> &'static Vec<(Word, Word)> {
    static CACHE: OnceLock<Vec<(Word, Word)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        AUT_IMAGES
            .iter()
            .map(|&(ia, ib)| {
                (
                    crate::parse::parse_word(ia).expect("static image"),
                    crate::parse::parse_word(ib).expect("static image"),
                )
            })
            .collect()
    })
}

/// Ceiling on BFS work before the search reports failure instead of
/// silently truncating.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("orbit BFS exhausted its node budget after expanding {nodes_expanded} states")]
    BudgetExhausted { nodes_expanded: usize },
    #[error("could not generate a qualifying word for seed {seed} at length {length}")]
    GenerationFailed { seed: u64, length: usize },
}

/// Exhaustive view of an orbit slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBfsResult {
    /// Every cyclic word reachable from the start without any intermediate
    /// exceeding the length cap.
    pub reachable: BTreeSet<CyclicWord>,
    /// Exact orbit minimum whenever the cap is at least the start length:
    /// a length-non-increasing path to the minimum always exists.
    pub min_length: usize,
    pub nodes_expanded: usize,
    pub frontier_peak: usize,
}

impl OrbitBfsResult {
    /// The members realizing the minimum.
    pub fn minimal_members(&self) -> BTreeSet<CyclicWord> {
        self.reachable
            .iter()
            .filter(|c| c.len() == self.min_length)
            .cloned()
            .collect()
    }
}

pub fn bfs_orbit(start: &CyclicWord, length_cap: usize) -> Result<OrbitBfsResult, OracleError> {
    bfs_orbit_with_budget(start, length_cap, DEFAULT_NODE_BUDGET)
}

pub fn bfs_orbit_with_budget(
    start: &CyclicWord,
    length_cap: usize,
    node_budget: usize,
) -> Result<OrbitBfsResult, OracleError> {
    assert!(
        length_cap >= start.len(),
        "length cap {length_cap} below start length {}",
        start.len()
    );
    let images = aut_image_words();
    let mut reachable = BTreeSet::new();
    let mut queue = VecDeque::new();
    reachable.insert(start.clone());
    queue.push_back(start.clone());
    let mut nodes_expanded = 0usize;
    let mut frontier_peak = 1usize;
    while let Some(next) = queue.pop_front() {
        nodes_expanded += 1;
        if nodes_expanded > node_budget {
            return Err(OracleError::BudgetExhausted { nodes_expanded });
        }
        let next_word = next.as_word();
        for (ia, ib) in images {
            let image = CyclicWord::from_word(&apply_endo(&next_word, ia, ib));
            if image.len() <= length_cap && !reachable.contains(&image) {
                reachable.insert(image.clone());
                queue.push_back(image);
                frontier_peak = frontier_peak.max(queue.len());
            }
        }
    }
    let min_length = reachable.iter().map(CyclicWord::len).min().unwrap();
    Ok(OrbitBfsResult {
        reachable,
        min_length,
        nodes_expanded,
        frontier_peak,
    })
}

/// Every cyclically reduced cyclic word of exactly the given length, each
/// conjugacy class once, in canonical order.
pub fn enumerate_cyclic_words(length: usize) -> Vec<CyclicWord> {
    if length == 0 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    let mut stack: Vec<Letter> = Vec::with_capacity(length);
    enumerate_rec(&mut stack, length, &mut out);
    out.into_iter().collect()
}

fn enumerate_rec(stack: &mut Vec<Letter>, length: usize, out: &mut BTreeSet<CyclicWord>) {
    if stack.len() == length {
        // Freely reduced by construction; keep only cyclically reduced
        // words (ends must not cancel) and dedup by canonical rotation.
        if stack[0] != stack[length - 1].inverse() {
            out.insert(CyclicWord::from_word(&Word::from_letters(stack.clone())));
        }
        return;
    }
    for l in Letter::ALL {
        if let Some(&last) = stack.last() {
            if l == last.inverse() {
                continue;
            }
        }
        stack.push(l);
        enumerate_rec(stack, length, out);
        stack.pop();
    }
}

/// A random reduced word over x = a, y = b⁻¹ab with the given number of
/// alternating syllables (x-run first), exponents in ±{1,2,3}.
pub fn random_xy_word(seed: u64, syllables: usize) -> XYWord {
    assert!(syllables >= 1, "need at least one syllable");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::new();
    for i in 0..syllables {
        let positive = rng.gen::<bool>();
        let magnitude = rng.gen_range(1..=3usize);
        let letter = match (i % 2 == 0, positive) {
            (true, true) => Letter::A,
            (true, false) => Letter::AInv,
            (false, true) => Letter::B,
            (false, false) => Letter::BInv,
        };
        letters.extend(std::iter::repeat_n(letter, magnitude));
    }
    XYWord::from_word(Word::from_letters(letters))
}

/// Expansion of [`random_xy_word`] into F(a, b); a guaranteed member of
/// the subgroup ⟨a, b⁻¹ab⟩, deterministic per seed.
pub fn random_subgroup_word(seed: u64, syllables: usize) -> Word {
    expand_xy(&random_xy_word(seed, syllables))
}

const GENERATION_RETRIES: usize = 100_000;

/// A random freely and cyclically reduced word of the exact given length
/// with both exponent sums zero, by rejection sampling. Deterministic per
/// seed.
pub fn random_derived_word(seed: u64, length: usize) -> Result<Word, OracleError> {
    assert!(
        length >= 4 && length.is_multiple_of(2),
        "zero-sum words need even length >= 4"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_RETRIES {
        let word = random_reduced_word(&mut rng, length);
        let sums = word.exponent_sums();
        let letters = word.letters();
        if sums.is_zero() && letters[0] != letters[length - 1].inverse() {
            return Ok(word);
        }
    }
    Err(OracleError::GenerationFailed { seed, length })
}

fn random_reduced_word(rng: &mut ChaCha8Rng, length: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(length);
    while letters.len() < length {
        let choices: Vec<Letter> = match letters.last() {
            None => Letter::ALL.to_vec(),
            Some(&last) => Letter::ALL
                .into_iter()
                .filter(|&l| l != last.inverse())
                .collect(),
        };
        let pick = choices[rng.gen_range(0..choices.len())];
        letters.push(pick);
    }
    Word::from_letters(letters)
}
