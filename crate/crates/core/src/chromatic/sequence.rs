//! Exact colorability through good sequences.
//!
//! `G[X]` (for `X` inside `G_{N,2}`) is `k`-colorable iff some length-`N`
//! sequence of subsets of `[1, k]` is `X`-good. Positions are filled left to
//! right with candidates in descending cardinality.
//!
//! Saturation maps every `X`-good sequence to a saturated `X`-good one
//! (each proper subset of an entry reappears later), so restricting the search
//! to saturated sequences never loses a solution. The restriction gives two
//! prunes: an entry of size `s` at position `i` needs `i <= N - 2^s + 1`, and
//! the proper subsets still owed to earlier entries must fit in the remaining
//! slots. Elements of `[1, k]` that no placed entry has told apart yet are
//! interchangeable, so each candidate takes the lowest members of every such
//! class.

use super::budget::{Exhausted, Meter};
use super::{Certificate, ColorabilityResult, Outcome, SearchBudget, SearchStats};
use crate::error::{Error, Result};
use crate::goodseq::{descending_full_sequence, first_violation, SubsetMask, SubsetSequence};
use crate::shift::Vertex;

/// Largest palette the search enumerates directly (`2^k` candidate masks).
pub const MAX_SEARCH_COLORS: u32 = 16;

/// Knobs for the sequence search; the defaults are what
/// [`k_colorable_via_sequences`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceSearch {
    pub saturated_only: bool,
    pub symmetry_breaking: bool,
}

impl Default for SequenceSearch {
    fn default() -> Self {
        SequenceSearch {
            saturated_only: true,
            symmetry_breaking: true,
        }
    }
}

pub fn k_colorable_via_sequences(
    n_points: u32,
    k: u32,
    pairs: &[Vertex],
    budget: SearchBudget,
) -> Result<ColorabilityResult> {
    SequenceSearch::default().run(n_points, k, pairs, budget)
}

impl SequenceSearch {
    pub fn run(
        &self,
        n_points: u32,
        k: u32,
        pairs: &[Vertex],
        budget: SearchBudget,
    ) -> Result<ColorabilityResult> {
        if let Some(&bad) = pairs
            .iter()
            .find(|v| v.x == 0 || v.x >= v.y || v.y > n_points)
        {
            return Err(Error::InvalidVertex {
                vertex: bad,
                n_points,
            });
        }
        let len = n_points as usize;

        // Enough distinct subsets for every position: any X is satisfied.
        if k >= 32 || (1u64 << k) >= len as u64 {
            let n = k.min(crate::goodseq::MAX_GROUND);
            let seq = descending_full_sequence(n.min(ceil_bits(len)), len)?;
            let seq = SubsetSequence::new(n, seq.entries().to_vec())?;
            return finish(k, seq, pairs, SearchStats::default());
        }
        if k > MAX_SEARCH_COLORS {
            return Err(Error::InvalidParameter(format!(
                "sequence search supports at most {MAX_SEARCH_COLORS} colors, got {k}"
            )));
        }

        let mut left_partners = vec![Vec::new(); len];
        for v in pairs {
            left_partners[v.y as usize - 1].push(v.x as usize - 1);
        }
        for l in &mut left_partners {
            l.sort_unstable();
            l.dedup();
        }

        let mut candidates: Vec<SubsetMask> = (0..1u32 << k).map(SubsetMask::from_bits).collect();
        candidates.sort_by(crate::goodseq::size_desc_mask_desc);

        let words = (1usize << k).div_ceil(64);
        let mut search = Search {
            config: *self,
            len,
            left_partners,
            candidates,
            entries: vec![SubsetMask::EMPTY; len],
            pending: vec![0u64; words * (len + 1)],
            pending_count: vec![0usize; len + 1],
            words,
            classes: vec![Vec::new(); len + 1],
            meter: Meter::new(budget),
        };
        search.classes[0] = if k == 0 {
            Vec::new()
        } else {
            vec![(1u32 << k) - 1]
        };

        match search.place(0) {
            Ok(true) => {
                let stats = search.stats();
                let seq = SubsetSequence::new(k, search.entries)?;
                finish(k, seq, pairs, stats)
            }
            Ok(false) => Ok(ColorabilityResult {
                k,
                outcome: Outcome::No,
                stats: search.stats(),
            }),
            Err(Exhausted) => Ok(ColorabilityResult {
                k,
                outcome: Outcome::Inconclusive,
                stats: search.stats(),
            }),
        }
    }
}

fn ceil_bits(len: usize) -> u32 {
    crate::goodseq::ceil_log2(len as u32)
}

fn finish(
    k: u32,
    seq: SubsetSequence,
    pairs: &[Vertex],
    stats: SearchStats,
) -> Result<ColorabilityResult> {
    if let Some(violation) = first_violation(&seq, pairs)? {
        return Err(Error::NotGood { violation });
    }
    Ok(ColorabilityResult {
        k,
        outcome: Outcome::Yes(Certificate::Sequence(seq)),
        stats,
    })
}

struct Search {
    config: SequenceSearch,
    len: usize,
    left_partners: Vec<Vec<usize>>,
    candidates: Vec<SubsetMask>,
    entries: Vec<SubsetMask>,
    // pending[t]: proper subsets owed by entries before position t
    pending: Vec<u64>,
    pending_count: Vec<usize>,
    words: usize,
    classes: Vec<Vec<u32>>,
    meter: Meter,
}

impl Search {
    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.meter.nodes,
            prunes: self.meter.prunes,
        }
    }

    fn place(&mut self, t: usize) -> std::result::Result<bool, Exhausted> {
        if t == self.len {
            return Ok(true);
        }
        let remaining = self.len - t - 1;
        for ci in 0..self.candidates.len() {
            let c = self.candidates[ci];
            if self.config.symmetry_breaking && !self.canonical(t, c) {
                continue;
            }
            if self.config.saturated_only && (1usize << c.len()) - 1 > remaining {
                self.meter.prunes += 1;
                continue;
            }
            if self.left_partners[t]
                .iter()
                .any(|&p| self.entries[p].is_subset_of(c))
            {
                continue;
            }
            if self.config.saturated_only && self.owe_after(t, c) > remaining {
                self.meter.prunes += 1;
                continue;
            }
            self.meter.tick()?;
            self.entries[t] = c;
            if self.config.symmetry_breaking {
                self.refine(t, c);
            }
            if self.place(t + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    // c meets every interchangeable class in its lowest elements
    fn canonical(&self, t: usize, c: SubsetMask) -> bool {
        self.classes[t].iter().all(|&class| {
            let taken = (c.bits() & class).count_ones();
            lowest_bits(class, taken) == c.bits() & class
        })
    }

    fn refine(&mut self, t: usize, c: SubsetMask) {
        let (head, tail) = self.classes.split_at_mut(t + 1);
        let next = &mut tail[0];
        next.clear();
        for &class in &head[t] {
            for part in [class & c.bits(), class & !c.bits()] {
                if part != 0 {
                    next.push(part);
                }
            }
        }
    }

    // Writes pending[t + 1] for placing c at t and returns its size.
    fn owe_after(&mut self, t: usize, c: SubsetMask) -> usize {
        let w = self.words;
        let (head, tail) = self.pending.split_at_mut((t + 1) * w);
        let cur = &head[t * w..];
        let next = &mut tail[..w];
        next.copy_from_slice(cur);
        let mut count = self.pending_count[t];
        let bit = c.bits() as usize;
        if next[bit / 64] & (1 << (bit % 64)) != 0 {
            next[bit / 64] &= !(1 << (bit % 64));
            count -= 1;
        }
        for b in c.proper_subsets() {
            let b = b.bits() as usize;
            if next[b / 64] & (1 << (b % 64)) == 0 {
                next[b / 64] |= 1 << (b % 64);
                count += 1;
            }
        }
        self.pending_count[t + 1] = count;
        count
    }
}

fn lowest_bits(mut mask: u32, count: u32) -> u32 {
    let mut out = 0;
    for _ in 0..count {
        let low = mask & mask.wrapping_neg();
        out |= low;
        mask &= !low;
    }
    out
}
