//! Every anchor the generator admits, tagged with the result that licenses it.

use serde::{Deserialize, Serialize};

use crate::fractal::{classify, FractalClass, Generator, PierKind};
use crate::grid::Direction;
use crate::windows::{cut_anchors, search_free_point, select_anchor, CutAnchor, WindowAnchor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    /// Windows at increasing stages around one pier.
    Window(WindowAnchor),
    /// Two same-size windows of one stage on equivalent cuts.
    Cut(CutAnchor),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// A pier fractal.
    PierFractal,
    /// One bridge in some orientation and a pier pointing along it.
    MultipleBridges,
    /// No usable pier, but a part hanging off a single edge.
    PierLike,
    /// Two equivalent cuts on one side of all bridges across them.
    EquivalentCuts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorVariant {
    pub justification: Justification,
    pub anchor: Anchor,
}

/// Pointing directions whose bond line crosses the unique bridge of its orientation.
fn usable(class: &FractalClass, pointing: Direction) -> bool {
    if pointing.is_vertical() {
        class.nvb == 1
    } else {
        class.nhb == 1
    }
}

fn multiple_bridge_anchors(gen: &Generator, c: i64, class: &FractalClass) -> Vec<WindowAnchor> {
    let mut piers: Vec<_> = class
        .piers
        .iter()
        .filter(|p| p.kind != PierKind::DoubleBridge && usable(class, p.pointing))
        .collect();
    piers.sort_by_key(|p| (p.kind != PierKind::Real, p.location));
    piers
        .into_iter()
        .filter_map(|p| search_free_point(gen, c, p.location, p.pointing, &[p.location]).ok().flatten())
        .collect()
}

fn pier_like_anchors(gen: &Generator, c: i64, class: &FractalClass) -> Vec<WindowAnchor> {
    let mut parts: Vec<_> = class.pier_like.iter().filter(|p| usable(class, p.pointing)).collect();
    parts.sort_by_key(|p| (p.points.len(), p.attachment));
    parts
        .into_iter()
        .filter_map(|p| search_free_point(gen, c, p.attachment, p.pointing, &p.points).ok().flatten())
        .collect()
}

/// Anchors from the main result and every applicable corollary, main ones first.
///
/// Empty when nothing applies, including for `c < 1`.
pub fn anchor_variants(gen: &Generator, c: i64) -> Vec<AnchorVariant> {
    if c < 1 {
        return Vec::new();
    }
    let class = classify(gen);
    let tagged = |justification, anchors: Vec<WindowAnchor>| {
        anchors.into_iter().map(move |a| AnchorVariant { justification, anchor: Anchor::Window(a) })
    };
    let mut out: Vec<AnchorVariant> = Vec::new();
    if class.is_pier_fractal {
        out.extend(tagged(Justification::PierFractal, select_anchor(gen, c).into_iter().collect()));
    } else if class.satisfies_cor_multiple_bridges {
        out.extend(tagged(Justification::MultipleBridges, multiple_bridge_anchors(gen, c, &class)));
    }
    if !class.is_pier_fractal && class.satisfies_cor_pier_like {
        out.extend(tagged(Justification::PierLike, pier_like_anchors(gen, c, &class)));
    }
    if class.satisfies_cor_equiv_columns {
        let cuts = cut_anchors(gen, c).unwrap_or_default();
        out.extend(cuts.into_iter().map(|a| AnchorVariant { justification: Justification::EquivalentCuts, anchor: Anchor::Cut(a) }));
    }
    let mut seen = Vec::new();
    out.retain(|v| {
        let fresh = !seen.contains(&v.anchor);
        if fresh {
            seen.push(v.anchor.clone());
        }
        fresh
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::corpus;
    use crate::grid::Point;

    fn window(v: &AnchorVariant) -> &WindowAnchor {
        match &v.anchor {
            Anchor::Window(a) => a,
            Anchor::Cut(_) => panic!("expected a window anchor"),
        }
    }

    #[test]
    fn sierpinski_uses_the_main_path_only() {
        let all = anchor_variants(&corpus::sierpinski(), 1);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].justification, Justification::PierFractal);
        assert_eq!(window(&all[0]).pier, Point::new(0, 1));
    }

    #[test]
    fn multiple_bridges_north_pier() {
        let gen = corpus::multiple_bridges();
        for c in 1..=2 {
            let all = anchor_variants(&gen, c);
            let first = all.first().expect("a north-pointing pier gives an anchor");
            assert_eq!(first.justification, Justification::MultipleBridges);
            let a = window(first);
            assert_eq!(a.pier_direction, Direction::N);
            assert_eq!((a.pier, a.free_point), (Point::new(2, 2), Point::new(0, 0)));
            assert!(a.verify(&gen, c).unwrap());
        }
    }

    #[test]
    fn pier_like_part() {
        let gen = corpus::pier_like();
        let all = anchor_variants(&gen, 1);
        let first = all.first().expect("the hanging block gives an anchor");
        assert_eq!(first.justification, Justification::PierLike);
        let a = window(first);
        assert!(!a.is_square());
        assert!(a.verify(&gen, 1).unwrap());
        assert!(all.iter().all(|v| v.justification != Justification::PierFractal));
    }

    #[test]
    fn equivalent_cut_pairs() {
        let gen = corpus::equivalent_columns();
        let all = anchor_variants(&gen, 1);
        assert!(all.iter().any(|v| v.justification == Justification::EquivalentCuts
            && matches!(&v.anchor, Anchor::Cut(a) if a.cuts == (2, 3))));
    }

    #[test]
    fn nothing_for_nonpositive_scale() {
        assert!(anchor_variants(&corpus::sierpinski(), 0).is_empty());
    }
}
