use std::collections::HashSet;

use serde::Serialize;

use super::{first_violation, SubsetMask, SubsetSequence};
use crate::error::{Error, Result};
use crate::shift::Vertex;

/// One rewrite: the entry at `position` (1-based) shrank from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: u32,
    pub from: SubsetMask,
    pub to: SubsetMask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub sequence: SubsetSequence,
    pub steps: Vec<RewriteStep>,
}

/// Repeatedly takes the largest position `s` whose entry has a proper subset
/// missing from `a_{s+1}..a_L` and replaces `a_s` by that missing subset.
///
/// When several proper subsets are missing, the one of largest cardinality
/// (then largest mask) is used. Every step keeps the sequence `X`-good, and
/// `Σ|a_i|` drops each step, so at most `n·L` steps happen. The procedure
/// itself does not depend on `X`; `X` only gates the precondition.
pub fn saturate(seq: &SubsetSequence, pairs: &[Vertex]) -> Result<Saturation> {
    if let Some(violation) = first_violation(seq, pairs)? {
        return Err(Error::NotGood { violation });
    }
    let mut out = seq.clone();
    let mut steps = Vec::new();
    let entries = out.entries_mut();
    let mut later: HashSet<SubsetMask> = HashSet::new();
    // Rewrites at s leave every later position untouched, so one right-to-left
    // pass suffices: s is re-examined until it has no missing proper subset.
    for s in (0..entries.len()).rev() {
        loop {
            let current = entries[s];
            let missing = current
                .proper_subsets()
                .filter(|b| !later.contains(b))
                .max_by_key(|b| (b.len(), b.bits()));
            match missing {
                Some(b) => {
                    entries[s] = b;
                    steps.push(RewriteStep {
                        position: s as u32 + 1,
                        from: current,
                        to: b,
                    });
                }
                None => break,
            }
        }
        later.insert(entries[s]);
    }
    Ok(Saturation {
        sequence: out,
        steps,
    })
}

/// Every proper subset of every entry appears at some later position.
pub fn is_saturated(seq: &SubsetSequence) -> bool {
    let mut later: HashSet<SubsetMask> = HashSet::new();
    for &a in seq.entries().iter().rev() {
        if a.proper_subsets().any(|b| !later.contains(&b)) {
            return false;
        }
        later.insert(a);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodseq::is_good;

    #[test]
    fn traced_example() {
        let seq = SubsetSequence::from_sets(2, &[&[1, 2], &[2], &[1]]).unwrap();
        let x = [Vertex::new(1, 2)];
        let sat = saturate(&seq, &x).unwrap();
        assert_eq!(
            sat.sequence,
            SubsetSequence::from_sets(2, &[&[1], &[2], &[]]).unwrap()
        );
        assert_eq!(sat.steps.len(), 2);
        assert_eq!(sat.steps[0].position, 3);
        assert_eq!(sat.steps[1].position, 1);
        assert!(is_saturated(&sat.sequence));

        // replay: goodness holds after every step
        let mut entries = seq.entries().to_vec();
        for step in &sat.steps {
            entries[step.position as usize - 1] = step.to;
            let partial = SubsetSequence::new(2, entries.clone()).unwrap();
            assert!(is_good(&partial, &x).unwrap());
        }
    }

    #[test]
    fn fixed_points() {
        let seq = SubsetSequence::from_sets(2, &[&[1, 2], &[1], &[2], &[]]).unwrap();
        let sat = saturate(&seq, &[]).unwrap();
        assert_eq!(sat.sequence, seq);
        assert!(sat.steps.is_empty());

        let empties = SubsetSequence::from_sets(2, &[&[], &[]]).unwrap();
        assert_eq!(saturate(&empties, &[]).unwrap().sequence, empties);
    }

    #[test]
    fn rejects_non_good_input() {
        let seq = SubsetSequence::from_sets(1, &[&[1], &[1]]).unwrap();
        assert!(matches!(
            saturate(&seq, &[Vertex::new(1, 2)]),
            Err(Error::NotGood { .. })
        ));
    }
}
