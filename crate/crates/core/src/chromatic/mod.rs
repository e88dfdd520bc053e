//! Exact `k`-colorability and chromatic numbers for induced subgraphs of
//! shift graphs, decided by two independent engines:
//!
//! * [`k_colorable_via_sequences`]: backtracking over good sequences,
//!   restricted to saturated ones;
//! * [`k_colorable_bb`]: DSATUR branch and bound on the plain graph.
//!
//! [`chromatic_number`] runs both on every query and refuses to answer when
//! they disagree.

mod bb;
mod budget;
mod sequence;

pub use bb::{greedy_coloring, is_bipartite, k_colorable_bb};
pub use budget::SearchBudget;
pub use sequence::{k_colorable_via_sequences, SequenceSearch, MAX_SEARCH_COLORS};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goodseq::{first_violation, SubsetSequence, VertexColoring};
use crate::shift::InducedSubgraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Sequence(SubsetSequence),
    Coloring(VertexColoring),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Yes(Certificate),
    No,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorabilityResult {
    pub k: u32,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl ColorabilityResult {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, Outcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn is_conclusive(&self) -> bool {
        self.outcome != Outcome::Inconclusive
    }

    /// Decision as a bool, or [`Error::Inconclusive`].
    pub fn decision(&self) -> Result<bool> {
        match self.outcome {
            Outcome::Yes(_) => Ok(true),
            Outcome::No => Ok(false),
            Outcome::Inconclusive => Err(Error::Inconclusive {
                k: self.k,
                nodes: self.stats.nodes,
            }),
        }
    }

    pub fn refutation(&self) -> Option<RefutationRecord> {
        match self.outcome {
            Outcome::Yes(_) => None,
            _ => Some(RefutationRecord {
                k: self.k,
                nodes: self.stats.nodes,
                prunes: self.stats.prunes,
                conclusive: self.is_conclusive(),
            }),
        }
    }

    /// Re-checks a yes certificate against `view` from scratch.
    pub fn verify_certificate(&self, view: &InducedSubgraph<'_>) -> Result<()> {
        match &self.outcome {
            Outcome::Yes(Certificate::Sequence(seq)) => {
                if seq.len() < view.graph().n_points() as usize {
                    return Err(Error::InvalidLength {
                        len: seq.len(),
                        needed: view.graph().n_points(),
                    });
                }
                match first_violation(seq, view.vertices())? {
                    Some(violation) => Err(Error::NotGood { violation }),
                    None => Ok(()),
                }
            }
            Outcome::Yes(Certificate::Coloring(c)) => {
                let restricted = c.restrict(view.vertices())?;
                if restricted.len() != c.len() {
                    return Err(Error::InvalidColoring {
                        reason: "coloring covers vertices outside the view".into(),
                    });
                }
                restricted.check_proper()
            }
            _ => Ok(()),
        }
    }
}

/// A conclusive "no" (or an exhausted search when `conclusive` is false).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationRecord {
    pub k: u32,
    pub nodes: u64,
    pub prunes: u64,
    pub conclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticReport {
    pub chi: u32,
    pub lower_bound: u32,
    pub greedy_bound: u32,
    /// Optimal coloring (branch and bound, or greedy when it was already optimal).
    pub coloring: VertexColoring,
    /// Good sequence over `[1, chi]` from the sequence engine.
    pub sequence: Option<SubsetSequence>,
    /// Both engines' refutations of `chi - 1`; absent when `chi = 0`.
    pub refutation: Option<EngineRefutations>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineRefutations {
    pub sequence: RefutationRecord,
    pub branch_and_bound: RefutationRecord,
}

struct Joint {
    colorable: bool,
    sequence: ColorabilityResult,
    bb: ColorabilityResult,
}

fn decide_both(view: &InducedSubgraph<'_>, k: u32, budget: SearchBudget) -> Result<Joint> {
    let n_points = view.graph().n_points();
    let sequence = k_colorable_via_sequences(n_points, k, view.vertices(), budget)?;
    let bb = k_colorable_bb(view, k, budget)?;
    let (a, b) = (sequence.decision()?, bb.decision()?);
    if a != b {
        return Err(Error::EngineDisagreement {
            k,
            sequence: a,
            branch_and_bound: b,
        });
    }
    sequence.verify_certificate(view)?;
    bb.verify_certificate(view)?;
    Ok(Joint {
        colorable: a,
        sequence,
        bb,
    })
}

/// Lower bound from structure: 0 empty, 1 edgeless, 2 bipartite, 3 otherwise.
pub fn structural_lower_bound(view: &InducedSubgraph<'_>) -> u32 {
    if view.is_empty() {
        0
    } else if view.edge_count() == 0 {
        1
    } else if is_bipartite(view) {
        2
    } else {
        3
    }
}

/// Binary search between [`structural_lower_bound`] and a greedy coloring,
/// resolving each query with both engines.
pub fn chromatic_number(
    view: &InducedSubgraph<'_>,
    budget: SearchBudget,
) -> Result<ChromaticReport> {
    let lower_bound = structural_lower_bound(view);
    let greedy = greedy_coloring(view);
    let greedy_bound = greedy.colors_used() as u32;
    if view.is_empty() {
        return Ok(ChromaticReport {
            chi: 0,
            lower_bound,
            greedy_bound,
            coloring: VertexColoring::empty(0),
            sequence: None,
            refutation: None,
        });
    }

    let (mut lo, mut hi) = (lower_bound, greedy_bound);
    let mut best_yes: Option<Joint> = None;
    let mut best_no: Option<Joint> = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let joint = decide_both(view, mid, budget)?;
        if joint.colorable {
            hi = mid;
            best_yes = Some(joint);
        } else {
            lo = mid + 1;
            best_no = Some(joint);
        }
    }
    let chi = hi;
    let at_chi = match best_yes {
        Some(j) if j.sequence.k == chi => j,
        _ => decide_both(view, chi, budget)?,
    };
    if !at_chi.colorable {
        return Err(Error::Inconsistent(format!(
            "engines refute {chi}-colorability although a {chi}-coloring was found"
        )));
    }
    let below = match best_no {
        Some(j) if j.sequence.k + 1 == chi => j,
        _ => decide_both(view, chi - 1, budget)?,
    };
    if below.colorable {
        return Err(Error::Inconsistent(format!(
            "engines find a {}-coloring below the structural lower bound {lower_bound}",
            chi - 1
        )));
    }

    let coloring = match &at_chi.bb.outcome {
        Outcome::Yes(Certificate::Coloring(c)) => c.clone(),
        _ => greedy,
    };
    let sequence = match at_chi.sequence.outcome {
        Outcome::Yes(Certificate::Sequence(s)) => Some(s),
        _ => None,
    };
    let refutation = match (below.sequence.refutation(), below.bb.refutation()) {
        (Some(sequence), Some(branch_and_bound)) => Some(EngineRefutations {
            sequence,
            branch_and_bound,
        }),
        _ => None,
    };
    Ok(ChromaticReport {
        chi,
        lower_bound,
        greedy_bound,
        coloring,
        sequence,
        refutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::{critical_core, ShiftGraph};

    #[test]
    fn small_chromatic_numbers() {
        let expected = [(2, 1), (5, 3), (9, 4)];
        for (n, chi) in expected {
            let g = ShiftGraph::new(n).unwrap();
            let r = chromatic_number(&g.full(), SearchBudget::default()).unwrap();
            assert_eq!(r.chi, chi, "N = {n}");
            r.coloring.check_proper().unwrap();
            assert_eq!(r.refutation.is_some(), chi > 0);
        }
    }

    #[test]
    fn empty_view_has_chi_zero() {
        let g = ShiftGraph::new(4).unwrap();
        let r = chromatic_number(
            &g.induced(std::iter::empty()).unwrap(),
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(r.chi, 0);
        assert!(r.refutation.is_none());
    }

    #[test]
    fn core_at_two_is_three_chromatic() {
        let w = critical_core(2).unwrap();
        let g = w.graph();
        let r = chromatic_number(
            &g.induced(w.members().iter().copied()).unwrap(),
            SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(r.chi, 3);
        assert_eq!(r.lower_bound, 3);
        let refs = r.refutation.unwrap();
        assert!(refs.sequence.conclusive && refs.branch_and_bound.conclusive);
        assert_eq!(refs.sequence.k, 2);
    }

    #[test]
    fn refutation_record_json() {
        let rec = RefutationRecord {
            k: 2,
            nodes: 7,
            prunes: 3,
            conclusive: true,
        };
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"k":2,"nodes":7,"prunes":3,"conclusive":true}"#
        );
    }
}
