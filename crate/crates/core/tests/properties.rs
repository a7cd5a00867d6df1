mod common;

use common::random_tree;
use hqviz_core::config::Config;
use hqviz_core::hierarchy::{ingest, to_folded, Format, Hierarchy};
use hqviz_core::layout::{layout, Layout, LayoutKind, NodeGeom};
use hqviz_core::navigation::{
    drill_down, focus_window, pan, roll_up, transform_of, zoom_about, NavConfig, ViewWindow,
};
use hqviz_core::par::Execution;
use hqviz_core::scene::{deserialize_scene, scale_spec, serialize_scene, SceneBuilder};
use hqviz_core::style::{assign_hues, HueBasis, TagSet};
use hqviz_core::NodeId;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kind_strategy() -> impl Strategy<Value = LayoutKind> {
    prop::sample::select(LayoutKind::ALL.to_vec())
}

fn setup(seed: u64, kind: LayoutKind, max_nodes: usize) -> (Hierarchy, Layout, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_tree(&mut rng, max_nodes);
    let l = layout(&h, kind, &Config::default().layout_params(kind)).unwrap();
    (h, l, rng)
}

fn wide_enough(l: &Layout, id: NodeId, nav: &NavConfig) -> bool {
    match l.geom(id) {
        NodeGeom::Rect(g) => g.rect.w > 0.0 && g.rect.h > 0.0 && g.rect.w.max(g.rect.h) >= nav.min_window,
        _ => l.extent(id).unwrap().width() >= nav.min_window * l.kind.full_extent(),
    }
}

fn some_window(rng: &mut ChaCha8Rng, h: &Hierarchy, l: &Layout) -> ViewWindow {
    let nav = NavConfig::default();
    let ids: Vec<NodeId> = h.ids().filter(|id| wide_enough(l, *id, &nav)).collect();
    let w = focus_window(l, ids[rng.gen_range(0..ids.len())], &nav).unwrap();
    zoom_about(&w, l.kind, rng.gen_range(0.3..3.0), (0.5 * l.kind.full_extent(), 0.5), &nav)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wire_round_trip(seed in any::<u64>(), kind in kind_strategy()) {
        let (h, l, mut rng) = setup(seed, kind, 300);
        let cfg = Config::default();
        let w = some_window(&mut rng, &h, &l);
        let tags: TagSet = (0..3).map(|_| NodeId(rng.gen_range(0..h.len() as u32))).collect();
        let scene = SceneBuilder::new(&h, &l, &cfg, cfg.viewport).unwrap().build(&w, &tags, Execution::Sequential).unwrap();
        let bytes = serialize_scene(&scene);
        let back = deserialize_scene(&bytes).unwrap();
        prop_assert_eq!(&back, &scene);
        prop_assert_eq!(serialize_scene(&back), bytes.clone());
        // every strict prefix is rejected without panicking
        for cut in (0..bytes.len()).step_by(bytes.len() / 97 + 1) {
            prop_assert!(deserialize_scene(&bytes[..cut]).is_err());
        }
    }

    #[test]
    fn scale_is_proportional(
        total in 1e-3f64..1e9,
        mag in 1.0f64..1e6,
        axis in 100.0f64..2000.0,
        target in 20.0f64..200.0,
    ) {
        let s = scale_spec(total, mag, axis, target);
        prop_assert_eq!(s.magnification, mag);
        let (a, b) = (s.tick_value / total, s.tick_extent / s.full_extent);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(b));
        prop_assert!(s.tick_extent <= target * (1.0 + 1e-12));
        prop_assert!(s.tick_extent >= target / 2.5 * (1.0 - 1e-12));
        let mantissa = s.tick_value / 10f64.powf(s.tick_value.log10().floor());
        prop_assert!([1.0, 2.0, 5.0].iter().any(|m| (mantissa - m).abs() < 1e-9), "mantissa {}", mantissa);
    }

    #[test]
    fn fills_do_not_depend_on_the_window(seed in any::<u64>(), kind in kind_strategy()) {
        let (h, l, mut rng) = setup(seed, kind, 300);
        let cfg = Config::default();
        let b = SceneBuilder::new(&h, &l, &cfg, cfg.viewport).unwrap();
        let full = b.build(&ViewWindow::full(kind), &TagSet::new(), Execution::Sequential).unwrap();
        let zoomed = b.build(&some_window(&mut rng, &h, &l), &TagSet::new(), Execution::Sequential).unwrap();
        let fills: std::collections::HashMap<_, _> = full.primitives.iter().map(|p| (p.node, p.fill)).collect();
        for p in &zoomed.primitives {
            if let Some(f) = fills.get(&p.node) {
                prop_assert_eq!(*f, p.fill);
            }
        }
    }

    #[test]
    fn hue_ranges_nest(seed in any::<u64>(), by_value in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_tree(&mut rng, 500);
        let basis = if by_value { HueBasis::Value } else { HueBasis::Leaves };
        let hues = assign_hues(&h, basis);
        for id in h.ids() {
            let r = hues[id.index()];
            let mut lo = r.lo;
            for c in h.children(id) {
                let s = hues[c.index()];
                prop_assert!(s.lo >= lo && s.hi <= r.hi && s.lo <= s.hi, "{} escapes {}", c, id);
                lo = s.hi;
            }
        }
    }

    #[test]
    fn drill_and_roll_are_inverse(seed in any::<u64>(), kind in kind_strategy()) {
        let (h, l, mut rng) = setup(seed, kind, 300);
        let nav = NavConfig::default();
        let ids: Vec<NodeId> = h.ids().filter(|id| *id != h.root() && wide_enough(&l, *id, &nav)).collect();
        prop_assume!(!ids.is_empty());
        let child = ids[rng.gen_range(0..ids.len())];
        let parent = h.parent(child).unwrap();
        let before = focus_window(&l, parent, &nav).unwrap();
        let down = drill_down(&h, &l, parent, child, &nav).unwrap();
        prop_assert_eq!(down, focus_window(&l, child, &nav).unwrap());
        prop_assert_eq!(roll_up(&h, &l, child, &nav).unwrap(), before);
        prop_assert!(drill_down(&h, &l, child, parent, &nav).is_err());
        prop_assert!(roll_up(&h, &l, h.root(), &nav).is_err());
    }

    #[test]
    fn zoom_keeps_the_anchor(seed in any::<u64>(), kind in kind_strategy(), factor in 0.1f64..10.0, ax in 0.0f64..1.0, ay in 0.0f64..1.0) {
        let (h, l, mut rng) = setup(seed, kind, 300);
        let nav = NavConfig::default();
        let e = kind.full_extent();
        let w = some_window(&mut rng, &h, &l);
        prop_assert_eq!(pan(&w, kind, 0.0, 0.0), w);
        let anchor = (ax * e, ay);
        let z = zoom_about(&w, kind, factor, anchor, &nav);
        let (t0, t1) = (transform_of(&w, kind), transform_of(&z, kind));
        let p = t0.invert_point(anchor);
        let q = t1.apply_point(p);
        // clamping at the edges or width limits legitimately moves the anchor
        let unclamped = match (w, z) {
            (ViewWindow::Interval(a), ViewWindow::Interval(b)) => {
                (b.width() - a.width() / factor).abs() <= 1e-12 * e && b.lo > 0.0 && b.hi < e
            }
            (ViewWindow::Rect(a), ViewWindow::Rect(b)) => {
                (b.w - a.w / factor).abs() <= 1e-12 && b.x > 0.0 && b.y > 0.0 && b.right() < 1.0 && b.bottom() < 1.0
            }
            _ => false,
        };
        if unclamped {
            prop_assert!((q.0 - anchor.0).abs() <= 1e-9 * e, "{:?} -> {:?}", anchor, q);
            if kind == LayoutKind::Treemap {
                prop_assert!((q.1 - anchor.1).abs() <= 1e-9);
            }
        }
        prop_assert!(z.is_valid(kind));
    }

    #[test]
    fn breadcrumbs_span_the_viewport(seed in any::<u64>(), kind in prop::sample::select(vec![LayoutKind::Icicle, LayoutKind::Sundown, LayoutKind::Sunburst])) {
        let (h, l, mut rng) = setup(seed, kind, 300);
        let nav = NavConfig::default();
        let ids: Vec<NodeId> = h.ids().filter(|id| wide_enough(&l, *id, &nav)).collect();
        let focus = ids[rng.gen_range(0..ids.len())];
        let t = transform_of(&focus_window(&l, focus, &nav).unwrap(), kind);
        let e = kind.full_extent();
        for crumb in hqviz_core::navigation::breadcrumbs(&h, focus).unwrap().trail {
            let s = t.project_span(l.extent(crumb).unwrap());
            prop_assert!(s.lo <= 1e-9 * e && s.hi >= e * (1.0 - 1e-9), "crumb {} projects to {:?}", crumb, s);
        }
    }

    #[test]
    fn folded_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_tree(&mut rng, 400);
        let back = ingest(&to_folded(&h), Format::FoldedStacks).unwrap();
        prop_assert_eq!(back.stats(), h.stats());
        for id in h.ids() {
            let (a, b) = (h.node(id), back.node(id));
            prop_assert_eq!(&a.name, &b.name);
            prop_assert_eq!(a.self_value, b.self_value);
            prop_assert_eq!(a.parent, b.parent);
        }
    }
}

#[test]
fn root_view_draws_every_positive_node() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = Config::default();
    for kind in LayoutKind::ALL {
        let h = random_tree(&mut rng, 500);
        let l = layout(&h, kind, &cfg.layout_params(kind)).unwrap();
        let s = SceneBuilder::new(&h, &l, &cfg, cfg.viewport)
            .unwrap()
            .build(&ViewWindow::full(kind), &TagSet::new(), Execution::Sequential)
            .unwrap();
        let positive = h.ids().filter(|id| l.geom(*id).measure() > 0.0).count();
        assert_eq!(s.primitives.len(), positive, "{kind}");
        // parents are drawn before their children
        let pos: std::collections::HashMap<_, _> = s.primitives.iter().enumerate().map(|(i, p)| (p.node, i)).collect();
        for p in &s.primitives {
            if let Some(parent) = h.parent(p.node) {
                assert!(pos[&parent] < pos[&p.node]);
            }
        }
    }
}

#[test]
fn single_node_icicle_is_one_rectangle() {
    let h = ingest("only 3", Format::FoldedStacks).unwrap();
    let cfg = Config::default();
    let l = layout(&h, LayoutKind::Icicle, &cfg.layout_params(LayoutKind::Icicle)).unwrap();
    let s = SceneBuilder::new(&h, &l, &cfg, cfg.viewport)
        .unwrap()
        .build(&ViewWindow::full(LayoutKind::Icicle), &TagSet::new(), Execution::Sequential)
        .unwrap();
    assert_eq!(s.primitives.len(), 1);
    assert!(!s.primitives[0].partial);
    assert_eq!(s.labels.iter().filter(|l| l.visible).count(), 1);
}
