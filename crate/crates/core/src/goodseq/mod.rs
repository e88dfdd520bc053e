//! Good sequences: `a_1..a_L` of subsets of `[1, n]` is `X`-good when
//! `a_i ⊄ a_j` for every `(i, j) ∈ X`. A sequence like this exists iff
//! `G[X]` is `n`-colorable, and the two functions
//! [`coloring_from_sequence`] and [`sequence_from_coloring`] move between
//! the two certificates.

mod coloring;
mod construct;
mod mask;
mod saturate;

pub use coloring::VertexColoring;
pub use construct::construct_deleted_vertex_sequence;
pub use mask::{SubsetMask, SubsetSequence, MAX_GROUND};
pub use saturate::{is_saturated, saturate, RewriteStep, Saturation};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::shift::Vertex;

/// Largest ground set for which [`descending_full_sequence`] enumerates masks.
pub const MAX_DESCENDING_GROUND: u32 = 24;

fn check_length(seq: &SubsetSequence, pairs: &[Vertex]) -> Result<()> {
    if let Some(bad) = pairs.iter().find(|v| v.x == 0 || v.x >= v.y) {
        return Err(Error::InvalidVertex {
            vertex: *bad,
            n_points: seq.len() as u32,
        });
    }
    let needed = pairs.iter().map(|v| v.y).max().unwrap_or(0);
    if needed as usize > seq.len() {
        return Err(Error::InvalidLength {
            len: seq.len(),
            needed,
        });
    }
    Ok(())
}

#[inline]
fn violates(seq: &[SubsetMask], v: Vertex) -> bool {
    seq[v.x as usize - 1].is_subset_of(seq[v.y as usize - 1])
}

/// Lexicographically least `(i, j) ∈ X` with `a_i ⊆ a_j`, if any.
pub fn first_violation(seq: &SubsetSequence, pairs: &[Vertex]) -> Result<Option<Vertex>> {
    check_length(seq, pairs)?;
    let entries = seq.entries();
    Ok(pairs
        .iter()
        .copied()
        .filter(|&v| violates(entries, v))
        .min())
}

pub fn is_good(seq: &SubsetSequence, pairs: &[Vertex]) -> Result<bool> {
    first_violation(seq, pairs).map(|v| v.is_none())
}

/// Like [`first_violation`] with `X` = every pair of `[1, L]` except `excluded`.
pub fn first_violation_complete(seq: &SubsetSequence, excluded: &[Vertex]) -> Option<Vertex> {
    let entries = seq.entries();
    for (i, &a) in entries.iter().enumerate() {
        for (j, &b) in entries.iter().enumerate().skip(i + 1) {
            if a.is_subset_of(b) {
                let v = Vertex::new(i as u32 + 1, j as u32 + 1);
                if !excluded.contains(&v) {
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Colors each `(i, j) ∈ X` with `min(a_i \ a_j)`; the result is a proper
/// `n`-coloring of `G[X]`, checked before it is returned.
pub fn coloring_from_sequence(seq: &SubsetSequence, pairs: &[Vertex]) -> Result<VertexColoring> {
    if let Some(violation) = first_violation(seq, pairs)? {
        return Err(Error::NotGood { violation });
    }
    let entries = seq.entries();
    let colors = pairs
        .iter()
        .map(|&v| {
            let diff = entries[v.x as usize - 1].difference(entries[v.y as usize - 1]);
            (
                v,
                diff.min_element()
                    .expect("good pair has a nonempty difference"),
            )
        })
        .collect();
    let coloring = VertexColoring::new(seq.n(), colors)?;
    coloring.check_proper()?;
    Ok(coloring)
}

/// Entry `i` collects the colors of all `(i, j) ∈ X`; `len` is the sequence length.
pub fn sequence_from_coloring(
    coloring: &VertexColoring,
    pairs: &[Vertex],
    len: usize,
) -> Result<SubsetSequence> {
    let k = coloring.k();
    if k > MAX_GROUND {
        return Err(Error::InvalidParameter(format!(
            "{k} colors exceed the subset ground limit {MAX_GROUND}"
        )));
    }
    let restricted = coloring.restrict(pairs)?;
    restricted.check_proper()?;
    let mut entries = vec![SubsetMask::EMPTY; len];
    for (v, c) in restricted.iter() {
        if v.y as usize > len {
            return Err(Error::InvalidLength { len, needed: v.y });
        }
        let slot = &mut entries[v.x as usize - 1];
        *slot = SubsetMask::from_bits(slot.bits() | 1 << (c - 1));
    }
    let seq = SubsetSequence::new(k, entries)?;
    debug_assert!(first_violation(&seq, pairs)?.is_none());
    Ok(seq)
}

/// Non-increasing cardinality, equal cardinalities by descending mask value.
pub(crate) fn size_desc_mask_desc(a: &SubsetMask, b: &SubsetMask) -> Ordering {
    b.len().cmp(&a.len()).then(b.bits().cmp(&a.bits()))
}

/// The first `len` subsets of `[1, n]` by non-increasing cardinality (ties by
/// descending mask). Distinct entries of non-increasing size are pairwise
/// non-nested in the forward direction, so the result is good for every pair.
pub fn descending_full_sequence(n: u32, len: usize) -> Result<SubsetSequence> {
    if n > MAX_DESCENDING_GROUND {
        return Err(Error::InvalidParameter(format!(
            "ground set size {n} exceeds {MAX_DESCENDING_GROUND}"
        )));
    }
    if len > 1usize << n {
        return Err(Error::InvalidParameter(format!(
            "{len} distinct subsets of [1,{n}] do not exist"
        )));
    }
    let mut entries = Vec::with_capacity(len);
    'outer: for size in (0..=n).rev() {
        for bits in (0..1u32 << n).rev() {
            if entries.len() == len {
                break 'outer;
            }
            if bits.count_ones() == size {
                entries.push(SubsetMask::from_bits(bits));
            }
        }
    }
    SubsetSequence::new(n, entries)
}

/// Smallest `n` with `2^n >= len`.
pub fn ceil_log2(len: u32) -> u32 {
    match len {
        0 | 1 => 0,
        _ => 32 - (len - 1).leading_zeros(),
    }
}
