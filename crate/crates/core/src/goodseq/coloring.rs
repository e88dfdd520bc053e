use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shift::Vertex;

/// An assignment of colors in `[1, k]` to shift-graph vertices.
///
/// Entries are kept sorted by vertex, so lookups are binary searches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringRecord", into = "ColoringRecord")]
pub struct VertexColoring {
    k: u32,
    colors: Vec<(Vertex, u32)>,
}

impl VertexColoring {
    /// Builds a coloring; rejects duplicate vertices and colors outside `[1, k]`.
    pub fn new(k: u32, mut colors: Vec<(Vertex, u32)>) -> Result<Self> {
        colors.sort_unstable_by_key(|&(v, _)| v);
        if let Some(w) = colors.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidColoring {
                reason: format!("vertex {} colored twice", w[0].0),
            });
        }
        if let Some((v, c)) = colors.iter().find(|(_, c)| *c == 0 || *c > k) {
            return Err(Error::InvalidColoring {
                reason: format!("vertex {v} has color {c} outside [1,{k}]"),
            });
        }
        Ok(VertexColoring { k, colors })
    }

    pub fn empty(k: u32) -> Self {
        VertexColoring {
            k,
            colors: Vec::new(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.colors.iter().copied()
    }

    pub fn color_of(&self, v: Vertex) -> Option<u32> {
        self.colors
            .binary_search_by_key(&v, |&(u, _)| u)
            .ok()
            .map(|i| self.colors[i].1)
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.iter().map(|&(_, c)| c).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Every edge `(x,y)-(y,z)` passes through the middle point `y`, so the
    /// coloring is proper iff, for each point, the colors of vertices ending
    /// there are disjoint from the colors of vertices starting there.
    pub fn check_proper(&self) -> Result<()> {
        if self.k <= 64 {
            return self.check_proper_dense();
        }
        let mut ending: BTreeMap<u32, BTreeMap<u32, Vertex>> = BTreeMap::new();
        for &(v, c) in &self.colors {
            ending.entry(v.y).or_default().entry(c).or_insert(v);
        }
        for &(v, c) in &self.colors {
            if let Some(u) = ending.get(&v.x).and_then(|m| m.get(&c)) {
                return Err(Error::InvalidColoring {
                    reason: format!("adjacent vertices {u} and {v} share color {c}"),
                });
            }
        }
        Ok(())
    }

    fn check_proper_dense(&self) -> Result<()> {
        let top = self.colors.iter().map(|(v, _)| v.y).max().unwrap_or(0) as usize;
        let mut ending = vec![0u64; top + 1];
        for &(v, c) in &self.colors {
            ending[v.y as usize] |= 1 << (c - 1);
        }
        for &(v, c) in &self.colors {
            if ending[v.x as usize] & (1 << (c - 1)) != 0 {
                let u = self
                    .colors
                    .iter()
                    .find(|&&(u, cu)| u.y == v.x && cu == c)
                    .map(|&(u, _)| u)
                    .expect("conflict witness");
                return Err(Error::InvalidColoring {
                    reason: format!("adjacent vertices {u} and {v} share color {c}"),
                });
            }
        }
        Ok(())
    }

    /// The coloring restricted to `domain`; every vertex of `domain` must be colored.
    pub fn restrict(&self, domain: &[Vertex]) -> Result<VertexColoring> {
        let mut colors = Vec::with_capacity(domain.len());
        for &v in domain {
            let c = self.color_of(v).ok_or_else(|| Error::InvalidColoring {
                reason: format!("vertex {v} is not colored"),
            })?;
            colors.push((v, c));
        }
        VertexColoring::new(self.k, colors)
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringRecord {
    k: u32,
    colors: Vec<ColorEntry>,
}

#[derive(Serialize, Deserialize)]
struct ColorEntry {
    x: u32,
    y: u32,
    c: u32,
}

impl From<VertexColoring> for ColoringRecord {
    fn from(c: VertexColoring) -> Self {
        ColoringRecord {
            k: c.k,
            colors: c
                .colors
                .iter()
                .map(|&(v, c)| ColorEntry { x: v.x, y: v.y, c })
                .collect(),
        }
    }
}

impl TryFrom<ColoringRecord> for VertexColoring {
    type Error = Error;

    fn try_from(rec: ColoringRecord) -> Result<Self> {
        VertexColoring::new(
            rec.k,
            rec.colors
                .into_iter()
                .map(|e| (Vertex::new(e.x, e.y), e.c))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32, y: u32) -> Vertex {
        Vertex::new(x, y)
    }

    #[test]
    fn detects_conflict_on_chain() {
        let c = VertexColoring::new(1, vec![(v(1, 2), 1), (v(2, 3), 1)]).unwrap();
        let err = c.check_proper().unwrap_err();
        assert!(matches!(err, Error::InvalidColoring { .. }));
        let ok = VertexColoring::new(2, vec![(v(1, 2), 1), (v(2, 3), 2), (v(1, 3), 2)]).unwrap();
        ok.check_proper().unwrap();
    }

    #[test]
    fn rejects_bad_colors_and_duplicates() {
        assert!(VertexColoring::new(2, vec![(v(1, 2), 3)]).is_err());
        assert!(VertexColoring::new(2, vec![(v(1, 2), 0)]).is_err());
        assert!(VertexColoring::new(2, vec![(v(1, 2), 1), (v(1, 2), 2)]).is_err());
    }

    #[test]
    fn json_shape() {
        let c = VertexColoring::new(2, vec![(v(2, 3), 1), (v(1, 2), 2)]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"k":2,"colors":[{"x":1,"y":2,"c":2},{"x":2,"y":3,"c":1}]}"#
        );
        assert_eq!(serde_json::from_str::<VertexColoring>(&text).unwrap(), c);
    }
}
