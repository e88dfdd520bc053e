//! Classical exact coloring: DSATUR branching with forward checking.
//!
//! Works on any [`InducedSubgraph`] without looking at the shift structure,
//! which is what makes it usable as a cross-check for the sequence search.

use super::budget::{Exhausted, Meter};
use super::{Certificate, ColorabilityResult, Outcome, SearchBudget, SearchStats};
use crate::error::Result;
use crate::goodseq::VertexColoring;
use crate::shift::InducedSubgraph;

pub fn k_colorable_bb(
    view: &InducedSubgraph<'_>,
    k: u32,
    budget: SearchBudget,
) -> Result<ColorabilityResult> {
    let adj = view.adjacency();
    let n = adj.len();
    if n == 0 {
        return Ok(ColorabilityResult {
            k,
            outcome: Outcome::Yes(Certificate::Coloring(VertexColoring::empty(k))),
            stats: SearchStats::default(),
        });
    }
    let clique = greedy_clique(&adj);
    if clique.len() as u32 > k {
        return Ok(ColorabilityResult {
            k,
            outcome: Outcome::No,
            stats: SearchStats::default(),
        });
    }

    let mut state = State::new(&adj, k as usize, budget);
    // Colors are interchangeable: fix the clique to 0..q-1 up front.
    let mut feasible = true;
    for (c, &v) in clique.iter().enumerate() {
        feasible &= state.assign(v, c);
    }
    let found = if feasible { state.search() } else { Ok(false) };
    let stats = SearchStats {
        nodes: state.meter.nodes,
        prunes: state.meter.prunes,
    };
    let outcome = match found {
        Ok(true) => {
            let colors = view
                .vertices()
                .iter()
                .zip(&state.color)
                .map(|(&v, c)| (v, c.expect("complete coloring") as u32 + 1))
                .collect();
            let coloring = VertexColoring::new(k, colors)?;
            coloring.check_proper()?;
            Outcome::Yes(Certificate::Coloring(coloring))
        }
        Ok(false) => Outcome::No,
        Err(Exhausted) => Outcome::Inconclusive,
    };
    Ok(ColorabilityResult { k, outcome, stats })
}

/// DSATUR greedy coloring with colors `1..`; `k` is the number of colors used.
pub fn greedy_coloring(view: &InducedSubgraph<'_>) -> VertexColoring {
    let adj = view.adjacency();
    let n = adj.len();
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by_key(|&v| {
                let mut seen: Vec<usize> = adj[v].iter().filter_map(|&u| color[u]).collect();
                seen.sort_unstable();
                seen.dedup();
                (seen.len(), adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("uncolored vertex remains");
        let c = (0..)
            .find(|c| adj[v].iter().all(|&u| color[u] != Some(*c)))
            .expect("some color is free");
        color[v] = Some(c);
        used = used.max(c + 1);
    }
    let colors = view
        .vertices()
        .iter()
        .zip(&color)
        .map(|(&v, c)| (v, c.expect("all colored") as u32 + 1))
        .collect();
    VertexColoring::new(used as u32, colors).expect("greedy colors lie in range")
}

/// BFS 2-coloring; false iff the view contains an odd cycle.
pub fn is_bipartite(view: &InducedSubgraph<'_>) -> bool {
    let adj = view.adjacency();
    let mut side: Vec<Option<bool>> = vec![None; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..adj.len() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let s = side[v].expect("queued vertices are labelled");
            for &u in &adj[v] {
                match side[u] {
                    None => {
                        side[u] = Some(!s);
                        queue.push_back(u);
                    }
                    Some(t) if t == s => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

fn greedy_clique(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[v].binary_search(&u).is_ok()) {
            clique.push(v);
        }
    }
    clique
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    color: Vec<Option<usize>>,
    // neighbor_colors[v * k + c]: colored neighbors of v with color c
    neighbor_colors: Vec<u32>,
    saturation: Vec<usize>,
    used: usize,
    uncolored: usize,
    meter: Meter,
}

impl<'a> State<'a> {
    fn new(adj: &'a [Vec<usize>], k: usize, budget: SearchBudget) -> Self {
        State {
            adj,
            k,
            color: vec![None; adj.len()],
            neighbor_colors: vec![0; adj.len() * k],
            saturation: vec![0; adj.len()],
            used: 0,
            uncolored: adj.len(),
            meter: Meter::new(budget),
        }
    }

    // Returns false when some uncolored neighbor is left with no color.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = Some(c);
        self.uncolored -= 1;
        let mut ok = true;
        for &u in &self.adj[v] {
            let slot = &mut self.neighbor_colors[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[u] += 1;
                if self.color[u].is_none() && self.saturation[u] == self.k {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        self.uncolored += 1;
        for &u in &self.adj[v] {
            let slot = &mut self.neighbor_colors[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..self.adj.len() {
            if self.color[v].is_some() {
                continue;
            }
            let free_degree = self.adj[v]
                .iter()
                .filter(|&&u| self.color[u].is_none())
                .count();
            let cand = (self.saturation[v], free_degree);
            if best == usize::MAX || cand > key {
                best = v;
                key = cand;
            }
        }
        best
    }

    fn search(&mut self) -> std::result::Result<bool, Exhausted> {
        self.used = self
            .color
            .iter()
            .flatten()
            .map(|c| c + 1)
            .max()
            .unwrap_or(0);
        self.descend()
    }

    fn descend(&mut self) -> std::result::Result<bool, Exhausted> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        let v = self.pick();
        // at most one fresh color: the lowest unused one
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.neighbor_colors[v * self.k + c] != 0 {
                continue;
            }
            self.meter.tick()?;
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            if self.assign(v, c) {
                if self.descend()? {
                    return Ok(true);
                }
            } else {
                self.meter.prunes += 1;
            }
            self.unassign(v, c);
            self.used = prev_used;
        }
        Ok(false)
    }
}
