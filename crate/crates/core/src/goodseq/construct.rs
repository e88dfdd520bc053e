use std::cmp::Ordering;

use super::{first_violation_complete, SubsetMask, SubsetSequence};
use crate::error::{Error, Result};
use crate::shift::{core_interval, Vertex, MAX_CORE_EXPONENT};

// Non-increasing cardinality, ties by ascending mask ({1} before {2}).
fn size_desc_mask_asc(a: &SubsetMask, b: &SubsetMask) -> Ordering {
    b.len().cmp(&a.len()).then(a.bits().cmp(&b.bits()))
}

/// Builds a sequence of length `2^n + 1` that is good for every pair of
/// `G_{2^n+1,2}` except `v`, for `v = (i, j)` in the critical core.
///
/// With `r` the least level such that `i, j ∈ I_r` and `A = [1, n - r]`:
/// `a_i = a_j = A`, the proper supersets of `A` take the first slots, the
/// proper subsets of `A` take the last slots, and every other subset fills
/// the remaining free slots left to right. Each group is listed by
/// non-increasing cardinality. The result is checked before it is returned.
pub fn construct_deleted_vertex_sequence(n: u32, v: Vertex) -> Result<SubsetSequence> {
    if !(2..=MAX_CORE_EXPONENT).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "n must lie in [2,{MAX_CORE_EXPONENT}], got {n}"
        )));
    }
    let len = (1usize << n) + 1;
    if v.x == 0 || v.x >= v.y || v.y as usize > len {
        return Err(Error::InvalidVertex {
            vertex: v,
            n_points: len as u32,
        });
    }
    let level = (0..=n)
        .find(|&l| {
            let iv = core_interval(n, l);
            iv.contains(v.x) && iv.contains(v.y)
        })
        .ok_or_else(|| {
            Error::InvalidParameter(format!("{v} is not in the critical core for n = {n}"))
        })?;

    let anchor = SubsetMask::prefix(n - level);
    let all = (0..1u32 << n).map(SubsetMask::from_bits);
    let mut supersets: Vec<SubsetMask> = all
        .clone()
        .filter(|m| anchor.is_proper_subset_of(*m))
        .collect();
    let mut subsets: Vec<SubsetMask> = anchor.proper_subsets().collect();
    let mut rest: Vec<SubsetMask> = all
        .filter(|m| !m.is_subset_of(anchor) && !anchor.is_subset_of(*m))
        .collect();
    supersets.sort_by(size_desc_mask_asc);
    subsets.sort_by(size_desc_mask_asc);
    rest.sort_by(size_desc_mask_asc);

    let (i, j) = (v.x as usize - 1, v.y as usize - 1);
    // i >= 2^r - 1 = #supersets and len - 1 - j >= 2^(n-r) - 1 = #subsets
    // follow from i, j ∈ I_r; a violation here means the level was wrong.
    if supersets.len() > i || subsets.len() > len - 1 - j {
        return Err(Error::ConstructionFailed {
            vertex: v,
            reason: "interval margins too small for the anchor's supersets or subsets".into(),
        });
    }

    let mut slots: Vec<Option<SubsetMask>> = vec![None; len];
    slots[i] = Some(anchor);
    slots[j] = Some(anchor);
    for (slot, m) in slots.iter_mut().zip(&supersets) {
        *slot = Some(*m);
    }
    let tail = len - subsets.len();
    for (slot, m) in slots[tail..].iter_mut().zip(&subsets) {
        *slot = Some(*m);
    }
    let mut fill = rest.into_iter();
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        *slot = fill.next();
    }

    let entries = slots
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::ConstructionFailed {
            vertex: v,
            reason: "slot count mismatch".into(),
        })?;
    let seq = SubsetSequence::new(n, entries)?;
    if let Some(bad) = first_violation_complete(&seq, &[v]) {
        return Err(Error::ConstructionFailed {
            vertex: v,
            reason: format!("pair {bad} violates goodness"),
        });
    }
    Ok(seq)
}
