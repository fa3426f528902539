//! Decision procedures for ⟨a, b | R⟩: applicability triage, splitting
//! detection, computation of the decomposition, and Out(G) classification.
//!
//! The analysis dispatches on the shape of R = Sⁿ (S the maximal root):
//! a primitive root means the group is not one-ended and nothing here
//! applies; a root conjugate to the commutator with n > 1 is the Fuchsian
//! case, where the decomposition is trivial by convention; other proper
//! powers are decided through the Whitehead orbit of the root; exponent-1
//! relators in the derived subgroup are decided through the polytope, but
//! only when the caller asserts the group-theoretic hypotheses
//! (hyperbolicity / residual goodness) that the machinery needs and that
//! no algorithm here can check.

use crate::polytope::{ft_polytope, LatticePolytope, PolytopeClass};
use crate::subgroup::{find_representative, XYWord};
use crate::whitehead::{commutator_power, is_primitive, shortest_orbit_set_capped, WhiteheadError};
use crate::word::{CyclicWord, ExponentSums, Word, WordError};
use serde::Serialize;
use std::time::Instant;

/// Caller-asserted hypotheses. Never inferred, never verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub assume_hyperbolic: bool,
    pub assume_rg: bool,
}

impl Assumptions {
    pub fn any(self) -> bool {
        self.assume_hyperbolic || self.assume_rg
    }
}

/// Which decision procedure, if any, covers the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Applicability {
    /// The root is primitive (or the relator a single letter): the group is
    /// a free product of cyclic groups, and the splitting question does not
    /// arise.
    NotOneEnded,
    /// n > 1 and the root is conjugate to [a,b]^{±1}: the decomposition is
    /// trivial by convention.
    FuchsianCase,
    /// n = 1 and R lies in the derived subgroup, with a hypothesis flag
    /// asserted: decided by the polytope.
    TorsionFree,
    /// n > 1 with a non-primitive, non-commutator root: decided by the
    /// Whitehead orbit of the root.
    WithTorsion,
    /// No proven case covers the input (or the needed hypothesis was not
    /// asserted).
    Unsupported,
}

impl Applicability {
    pub fn label(self) -> &'static str {
        match self {
            Applicability::NotOneEnded => "NotOneEnded",
            Applicability::FuchsianCase => "FuchsianCase",
            Applicability::TorsionFree => "TorsionFree",
            Applicability::WithTorsion => "WithTorsion",
            Applicability::Unsupported => "Unsupported",
        }
    }
}

impl std::fmt::Display for Applicability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Whitehead(#[from] WhiteheadError),
    #[error("no decomposition is defined for this input (applicability: {0})")]
    JsjUndefined(Applicability),
    #[error("the outer automorphism class is not determined for this input (applicability: {0})")]
    OutUndefined(Applicability),
}

/// Triage result: the applicability verdict plus the diagnostics every
/// later stage needs.
#[derive(Clone, Debug)]
pub struct Triage {
    pub applicability: Applicability,
    /// Maximal root S with R = Sⁿ (conjugate-folded, so R = root^exponent
    /// literally).
    pub root: Word,
    pub exponent: u32,
    pub sums: ExponentSums,
    pub warnings: Vec<String>,
}

pub const WARN_NOT_ONE_ENDED: &str =
    "the group is a free product of cyclic groups; the splitting question is only meaningful for one-ended groups";
pub const WARN_NO_HYPOTHESIS: &str = "hyperbolicity/RG not asserted";
pub const WARN_OUTSIDE_SCOPE: &str =
    "exponent-1 relator with non-zero exponent sums; no decision procedure covers this case";

pub fn triage(r: &Word, assumptions: Assumptions) -> Result<Triage, EngineError> {
    let (root, exponent) = r.max_root()?;
    let sums = r.exponent_sums();
    let mut warnings = Vec::new();
    let applicability = if exponent > 1 {
        if is_primitive(&root)? {
            Applicability::NotOneEnded
        } else if matches!(commutator_power(&root), Some(1) | Some(-1)) {
            Applicability::FuchsianCase
        } else {
            Applicability::WithTorsion
        }
    } else if sums.is_zero() {
        if assumptions.any() {
            Applicability::TorsionFree
        } else {
            warnings.push(WARN_NO_HYPOTHESIS.to_string());
            Applicability::Unsupported
        }
    } else if r.len() == 1 {
        // A single-letter relator kills one generator outright.
        Applicability::NotOneEnded
    } else {
        warnings.push(WARN_OUTSIDE_SCOPE.to_string());
        Applicability::Unsupported
    };
    if applicability == Applicability::NotOneEnded {
        warnings.push(WARN_NOT_ONE_ENDED.to_string());
    }
    Ok(Triage {
        applicability,
        root,
        exponent,
        sums,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Trivial,
    NonTrivial,
    Unknown,
}

/// Does ⟨a, b | R⟩ split non-trivially? Returns the verdict and any
/// warnings explaining an `Unknown`.
pub fn detect(
    r: &Word,
    assumptions: Assumptions,
    orbit_cap: usize,
) -> Result<(Verdict, Vec<String>), EngineError> {
    let triage = triage(r, assumptions)?;
    let mut warnings = triage.warnings.clone();
    let verdict = match triage.applicability {
        Applicability::FuchsianCase => Verdict::Trivial,
        Applicability::NotOneEnded | Applicability::Unsupported => Verdict::Unknown,
        Applicability::TorsionFree => match ft_polytope(r) {
            Ok(p) => {
                if p.classify() == PolytopeClass::Segment {
                    Verdict::NonTrivial
                } else {
                    Verdict::Trivial
                }
            }
            Err(e) => {
                warnings.push(format!("polytope construction failed: {e}"));
                Verdict::Unknown
            }
        },
        Applicability::WithTorsion => {
            let core = CyclicWord::from_word(&triage.root);
            let orbit = shortest_orbit_set_capped(&core, orbit_cap)?;
            match find_representative(&orbit) {
                Some((rep, _)) => {
                    // ±1 commutator roots were routed to FuchsianCase.
                    debug_assert!(!matches!(commutator_power(&rep), Some(1) | Some(-1)));
                    Verdict::NonTrivial
                }
                None => Verdict::Trivial,
            }
        }
    };
    Ok((verdict, warnings))
}

/// The decomposition itself: trivial, or an HNN extension over the
/// subgroup ⟨a, y⟩ with y = b⁻¹ab and stable letter b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JsjDecomposition {
    Trivial,
    Hnn {
        base_relator_xy: XYWord,
        exponent: u32,
        representative: Word,
    },
}

impl JsjDecomposition {
    pub const STABLE_LETTER: &'static str = "b";
    pub const ATTACHING: &'static str = "y = b^-1 a b";
    pub const TRIVIAL_DESCRIPTION: &'static str = "single vertex, no edges, vertex group G";
}

pub fn compute(
    r: &Word,
    assumptions: Assumptions,
    orbit_cap: usize,
) -> Result<JsjDecomposition, EngineError> {
    let triage = triage(r, assumptions)?;
    match triage.applicability {
        Applicability::NotOneEnded | Applicability::Unsupported => {
            Err(EngineError::JsjUndefined(triage.applicability))
        }
        Applicability::FuchsianCase => Ok(JsjDecomposition::Trivial),
        Applicability::TorsionFree | Applicability::WithTorsion => {
            let core = CyclicWord::from_word(&triage.root);
            let orbit = shortest_orbit_set_capped(&core, orbit_cap)?;
            match find_representative(&orbit) {
                None => Ok(JsjDecomposition::Trivial),
                Some((representative, base_relator_xy)) => {
                    let excluded = if triage.applicability == Applicability::TorsionFree {
                        // Any commutator power is excluded here: the orbit
                        // of [a,b]^k consists of conjugates of [a,b]^{±k},
                        // so one commutator member condemns them all.
                        commutator_power(&representative).is_some()
                    } else {
                        debug_assert!(!matches!(
                            commutator_power(&representative),
                            Some(1) | Some(-1)
                        ));
                        false
                    };
                    if excluded {
                        return Ok(JsjDecomposition::Trivial);
                    }
                    // The base relator is strictly shorter than the root.
                    debug_assert!(base_relator_xy.len() < core.len());
                    Ok(JsjDecomposition::Hnn {
                        base_relator_xy,
                        exponent: triage.exponent,
                        representative,
                    })
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OutClass {
    Finite,
    VirtuallyZ,
    GL2Z,
}

pub fn out_class(
    r: &Word,
    assumptions: Assumptions,
    orbit_cap: usize,
) -> Result<OutClass, EngineError> {
    let triage = triage(r, assumptions)?;
    if matches!(
        triage.applicability,
        Applicability::NotOneEnded | Applicability::Unsupported
    ) {
        return Err(EngineError::OutUndefined(triage.applicability));
    }
    if commutator_power(r).is_some() {
        return Ok(OutClass::GL2Z);
    }
    match compute(r, assumptions, orbit_cap)? {
        JsjDecomposition::Hnn { .. } => Ok(OutClass::VirtuallyZ),
        JsjDecomposition::Trivial => Ok(OutClass::Finite),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolytopeJson {
    pub class: String,
    pub vertices: Vec<[i64; 2]>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &LatticePolytope) -> PolytopeJson {
        PolytopeJson {
            class: p.classify().tag().to_string(),
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum DecompositionJson {
    Trivial {
        description: String,
    },
    Hnn {
        base_relator_xy: String,
        exponent: u32,
        stable_letter: String,
        attaching: String,
        representative: String,
    },
}

impl DecompositionJson {
    pub fn from_decomposition(d: &JsjDecomposition) -> DecompositionJson {
        match d {
            JsjDecomposition::Trivial => DecompositionJson::Trivial {
                description: JsjDecomposition::TRIVIAL_DESCRIPTION.to_string(),
            },
            JsjDecomposition::Hnn {
                base_relator_xy,
                exponent,
                representative,
            } => DecompositionJson::Hnn {
                base_relator_xy: base_relator_xy.to_string(),
                exponent: *exponent,
                stable_letter: JsjDecomposition::STABLE_LETTER.to_string(),
                attaching: JsjDecomposition::ATTACHING.to_string(),
                representative: representative.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TimingMs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compute: Option<f64>,
}

/// Everything the analysis produced for one relator, in stable JSON shape.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JsjReport {
    pub input: String,
    pub relator: String,
    pub root: String,
    pub exponent: u32,
    pub exponent_sums: [i64; 2],
    pub applicability: Applicability,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeJson>,
    pub detection: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_class: Option<OutClass>,
    pub warnings: Vec<String>,
    pub timing_ms: TimingMs,
}

fn push_unique(warnings: &mut Vec<String>, msg: String) {
    if !warnings.contains(&msg) {
        warnings.push(msg);
    }
}

/// Run the full pipeline. Inapplicable inputs produce `Unknown` verdicts
/// and warnings rather than errors; only an empty relator fails.
pub fn analyze(
    r: &Word,
    assumptions: Assumptions,
    orbit_cap: usize,
) -> Result<JsjReport, EngineError> {
    let triage_result = triage(r, assumptions)?;
    let mut warnings = triage_result.warnings.clone();

    let polytope = if triage_result.sums.is_zero() {
        match ft_polytope(r) {
            Ok(p) => Some(PolytopeJson::from_polytope(&p)),
            Err(e) => {
                push_unique(&mut warnings, format!("polytope construction failed: {e}"));
                None
            }
        }
    } else {
        None
    };

    let detect_start = Instant::now();
    let detection = match detect(r, assumptions, orbit_cap) {
        Ok((verdict, detect_warnings)) => {
            for w in detect_warnings {
                push_unique(&mut warnings, w);
            }
            verdict
        }
        Err(e) => {
            push_unique(&mut warnings, e.to_string());
            Verdict::Unknown
        }
    };
    let detect_ms = detect_start.elapsed().as_secs_f64() * 1e3;

    let computable = matches!(
        triage_result.applicability,
        Applicability::FuchsianCase | Applicability::TorsionFree | Applicability::WithTorsion
    );
    let mut compute_ms = None;
    let mut decomposition = None;
    if computable {
        let compute_start = Instant::now();
        match compute(r, assumptions, orbit_cap) {
            Ok(d) => decomposition = Some(d),
            Err(e) => push_unique(&mut warnings, e.to_string()),
        }
        compute_ms = Some(compute_start.elapsed().as_secs_f64() * 1e3);
    }

    let out_class = if !computable {
        None
    } else if commutator_power(r).is_some() {
        Some(OutClass::GL2Z)
    } else {
        decomposition.as_ref().map(|d| match d {
            JsjDecomposition::Hnn { .. } => OutClass::VirtuallyZ,
            JsjDecomposition::Trivial => OutClass::Finite,
        })
    };

    Ok(JsjReport {
        input: r.to_string(),
        relator: r.to_string(),
        root: triage_result.root.to_string(),
        exponent: triage_result.exponent,
        exponent_sums: [triage_result.sums.a, triage_result.sums.b],
        applicability: triage_result.applicability,
        polytope,
        detection,
        decomposition: decomposition
            .as_ref()
            .map(DecompositionJson::from_decomposition),
        out_class,
        warnings,
        timing_ms: TimingMs {
            detect: Some(detect_ms),
            compute: compute_ms,
        },
    })
}
