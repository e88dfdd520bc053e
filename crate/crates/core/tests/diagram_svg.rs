mod common;

use std::collections::BTreeSet;

use shiftcrit_core::diagram::{render_svg, DiagramSpec, MAX_DIAGRAM_N, MIN_DIAGRAM_N};
use shiftcrit_core::{critical_core, Vertex};

#[test]
fn parsed_diagram_matches_core() {
    for n in MIN_DIAGRAM_N..=6 {
        let core = critical_core(n).unwrap();
        let svg = render_svg(&DiagramSpec::new(n).unwrap()).unwrap();
        let d = common::parse_diagram(&svg);
        assert_eq!(d.n, n);
        assert_eq!(d.top, core.n_points());

        let members: BTreeSet<Vertex> = core.members().iter().copied().collect();
        assert_eq!(d.shaded, members, "n = {n}");
        let every: BTreeSet<Vertex> = core.graph().vertices().collect();
        assert!(d.shaded.is_disjoint(&d.plain));
        assert_eq!(
            d.shaded.union(&d.plain).copied().collect::<BTreeSet<_>>(),
            every
        );

        assert_eq!(d.regions.len(), n as usize + 1);
        for (l, r) in d.regions.iter().enumerate() {
            let iv = core.intervals()[l];
            assert_eq!((r.level, r.lo, r.hi), (l as u32, iv.lo, iv.hi));
            assert_eq!(r.corner, core.region_corner(l as u32));
            assert_eq!(r.corner.0 * r.corner.1, 1 << n);
            assert!((r.first_point.0 - r.corner.0 as f64).abs() < 1e-6);
            assert!((r.first_point.1 - r.corner.1 as f64).abs() < 1e-6);
        }
        assert_eq!(d.hyperbola_product, Some(1 << n));
        let top = core.n_points();
        assert_eq!(d.x_labels, (1..top).collect::<Vec<_>>());
        assert_eq!(d.y_labels, (2..=top).collect::<Vec<_>>());
    }
}

#[test]
fn corners_at_four() {
    let svg = render_svg(&DiagramSpec::new(4).unwrap()).unwrap();
    let d = common::parse_diagram(&svg);
    let corners: Vec<(u32, u32)> = d.regions.iter().map(|r| r.corner).collect();
    assert_eq!(corners, vec![(1, 16), (2, 8), (4, 4), (8, 2), (16, 1)]);
    assert_eq!(d.shaded.len(), 87);
}

#[test]
fn largest_diagram_renders() {
    let svg = render_svg(&DiagramSpec::new(MAX_DIAGRAM_N).unwrap()).unwrap();
    let d = common::parse_diagram(&svg);
    assert_eq!(d.shaded.len(), critical_core(MAX_DIAGRAM_N).unwrap().len());
}

#[test]
fn short_palette_is_rejected() {
    let mut spec = DiagramSpec::new(3).unwrap();
    spec.palette.truncate(2);
    assert!(render_svg(&spec).is_err());
}

#[test]
fn hyperbola_can_be_turned_off() {
    let mut spec = DiagramSpec::new(2).unwrap();
    spec.hyperbola = false;
    let d = common::parse_diagram(&render_svg(&spec).unwrap());
    assert_eq!(d.hyperbola_product, None);
}
