//! Analysis of two-generator one-relator groups ⟨a, b | R⟩: cyclic-word
//! and free-group machinery, Whitehead minimization, membership in the
//! subgroup ⟨a, b⁻¹ab⟩, the relator's lattice polytope, and the decision
//! procedures that classify the group's canonical cyclic splitting and its
//! outer automorphism group. Brute-force oracles certify the clever parts.

pub mod engine;
pub mod oracle;
pub mod parse;
pub mod polytope;
pub mod subgroup;
pub mod svg;
pub mod whitehead;
pub mod word;

pub use engine::{
    analyze, compute, detect, out_class, triage, Applicability, Assumptions, EngineError,
    JsjDecomposition, JsjReport, OutClass, Verdict,
};
pub use parse::{parse_word, ParseError};
pub use polytope::{ft_polytope, LatticePoint, LatticePolytope, PolytopeClass, PolytopeError};
pub use subgroup::{expand_xy, membership, rewrite_to_xy, XYWord};
pub use svg::render_svg;
pub use whitehead::{
    commutator_power, is_primitive, minimize, shortest_orbit_set, WhiteheadError, DEFAULT_ORBIT_CAP,
};
pub use word::{CyclicWord, Word, WordError};
