#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use regex::Regex;
use shiftcrit_core::goodseq::{SubsetMask, SubsetSequence};
use shiftcrit_core::Vertex;

/// What a rendered diagram says about itself, read back from the SVG text.
pub struct ParsedDiagram {
    pub n: u32,
    pub top: u32,
    pub shaded: BTreeSet<Vertex>,
    pub plain: BTreeSet<Vertex>,
    pub regions: Vec<ParsedRegion>,
    pub hyperbola_product: Option<u32>,
    pub x_labels: Vec<u32>,
    pub y_labels: Vec<u32>,
}

pub struct ParsedRegion {
    pub level: u32,
    pub lo: u32,
    pub hi: u32,
    pub corner: (u32, u32),
    /// First polygon point mapped back to grid coordinates.
    pub first_point: (f64, f64),
}

fn attr(tag: &str, name: &str) -> Option<String> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let len = tag[start..].find('"')?;
    Some(tag[start..start + len].to_string())
}

fn num<T: std::str::FromStr>(tag: &str, name: &str) -> T
where
    T::Err: std::fmt::Debug,
{
    attr(tag, name)
        .unwrap_or_else(|| panic!("missing {name} in {tag}"))
        .parse()
        .unwrap()
}

pub fn parse_diagram(svg: &str) -> ParsedDiagram {
    let root = Regex::new(r"<svg [^>]*>")
        .unwrap()
        .find(svg)
        .expect("svg root")
        .as_str();
    let n: u32 = num(root, "data-n");
    let top: u32 = num(root, "data-top");
    let cell: f64 = num(root, "data-cell");
    let margin: f64 = num(root, "data-margin");
    let to_grid = |px: f64, py: f64| {
        (
            1.0 + (px - margin) / cell,
            top as f64 - (py - margin) / cell,
        )
    };

    let mut shaded = BTreeSet::new();
    let mut plain = BTreeSet::new();
    for m in Regex::new(r"<rect [^>]*>").unwrap().find_iter(svg) {
        let tag = m.as_str();
        let class = attr(tag, "class").unwrap_or_default();
        let v = || Vertex::new(num(tag, "data-x"), num(tag, "data-y"));
        match class.as_str() {
            "cell core" => {
                let v = v();
                // the drawn square must sit where the grid mapping puts (x, y)
                let (gx, gy) = to_grid(num(tag, "x"), num(tag, "y"));
                assert!((gx - v.x as f64).abs() < 1e-6, "{tag}");
                assert!((gy - (top - v.y + 2) as f64).abs() < 1e-6, "{tag}");
                assert!(shaded.insert(v), "duplicate shaded cell {v}");
            }
            "cell" => {
                assert!(plain.insert(v()));
            }
            _ => {}
        }
    }

    let mut regions = Vec::new();
    for m in Regex::new(r#"<polygon class="region"[^>]*>"#)
        .unwrap()
        .find_iter(svg)
    {
        let tag = m.as_str();
        let points = attr(tag, "points").unwrap();
        let first = points.split_whitespace().next().unwrap();
        let (px, py) = first.split_once(',').unwrap();
        regions.push(ParsedRegion {
            level: num(tag, "data-level"),
            lo: num(tag, "data-lo"),
            hi: num(tag, "data-hi"),
            corner: (num(tag, "data-corner-x"), num(tag, "data-corner-y")),
            first_point: to_grid(px.parse().unwrap(), py.parse().unwrap()),
        });
    }

    let hyperbola_product = Regex::new(r#"<polyline class="hyperbola"[^>]*>"#)
        .unwrap()
        .find(svg)
        .map(|m| num(m.as_str(), "data-product"));

    let labels = |class: &str| -> Vec<u32> {
        Regex::new(&format!(r#"<text class="{class}"[^>]*>(\d+)</text>"#))
            .unwrap()
            .captures_iter(svg)
            .map(|c| c[1].parse().unwrap())
            .collect()
    };

    ParsedDiagram {
        n,
        top,
        shaded,
        plain,
        regions,
        hyperbola_product,
        x_labels: labels("x-label"),
        y_labels: labels("y-label"),
    }
}

/// Plain depth-first enumeration of length-`len` sequences over subsets of
/// `[1, k]`, with no pruning beyond goodness of the prefix.
pub fn exists_good_sequence(len: usize, k: u32, pairs: &[Vertex]) -> bool {
    let mut left = vec![Vec::new(); len];
    for v in pairs {
        left[v.y as usize - 1].push(v.x as usize - 1);
    }
    let mut entries = vec![0u32; len];
    fn go(t: usize, k: u32, left: &[Vec<usize>], entries: &mut [u32]) -> bool {
        if t == entries.len() {
            return true;
        }
        for c in 0..1u32 << k {
            if left[t].iter().all(|&p| entries[p] & !c != 0) {
                entries[t] = c;
                if go(t + 1, k, left, entries) {
                    return true;
                }
            }
        }
        false
    }
    go(0, k, &left, &mut entries)
}

/// A sequence plus a set `X` of pairs it is good for.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seq: SubsetSequence,
    pub pairs: Vec<Vertex>,
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (1u32..=4)
        .prop_flat_map(|n| {
            let full = (1usize << n) + 1;
            let len = prop_oneof![Just(full.min(17)), 2usize..=17];
            (Just(n), len)
        })
        .prop_flat_map(|(n, len)| {
            (
                Just(n),
                proptest::collection::vec(0u32..1 << n, len),
                proptest::collection::vec(0u8..4, len * len),
            )
        })
        .prop_map(|(n, bits, keep)| {
            let entries: Vec<SubsetMask> = bits.into_iter().map(SubsetMask::from_bits).collect();
            let len = entries.len();
            let mut pairs = Vec::new();
            for i in 0..len {
                for j in i + 1..len {
                    // keep 3 in 4 compatible pairs
                    if keep[i * len + j] != 0 && !entries[i].is_subset_of(entries[j]) {
                        pairs.push(Vertex::new(i as u32 + 1, j as u32 + 1));
                    }
                }
            }
            Instance {
                seq: SubsetSequence::new(n, entries).unwrap(),
                pairs,
            }
        })
}
