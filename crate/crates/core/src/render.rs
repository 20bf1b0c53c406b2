//! Schematic SVG drawing and a plain-text summary of a census.
//!
//! The SVG gives each region a vertical lane bounded by its cut arcs and
//! draws one `<path class="strand">` per path component, so the number of
//! strands in a region's `<g class="region">` equals that region's total.

use std::fmt::Write as _;

use crate::census::{MultiCurveCensusOf, Side, Twist};
use crate::diagnostics::Diagnostics;
use crate::encode::consistency_check;
use crate::scalar::Scalar;
use crate::surface::{ArcId, RegionId};

/// Strands drawn at most, summed over all regions.
pub const MAX_STRANDS: u64 = 20_000;

#[derive(Debug, Clone, Copy)]
pub struct RenderSpec<'a, S> {
    pub census: &'a MultiCurveCensusOf<S>,
    pub width: u32,
    pub height: u32,
    pub show_labels: bool,
    pub strand_spacing: u32,
}

impl<'a, S: Scalar> RenderSpec<'a, S> {
    pub fn new(census: &'a MultiCurveCensusOf<S>) -> Self {
        Self {
            census,
            width: 960,
            height: 360,
            show_labels: true,
            strand_spacing: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("census is inconsistent:\n{0}")]
    InconsistentCensus(Diagnostics),
    #[error("width, height and strand spacing must be positive")]
    InvalidSpec,
    #[error("census has more than {MAX_STRANDS} components to draw")]
    TooLarge,
}

/// Kinds of strand, in drawing order within a lane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stroke {
    Through,
    LoopLeft,
    LoopRight,
    Closed,
    Diagonal { upper: bool },
    Twisted { turns: u64 },
}

impl Stroke {
    fn class(self) -> &'static str {
        match self {
            Stroke::Through => "strand through",
            Stroke::LoopLeft | Stroke::LoopRight => "strand loop",
            Stroke::Closed => "strand closed",
            Stroke::Diagonal { .. } => "strand diagonal",
            Stroke::Twisted { .. } => "strand twist",
        }
    }
}

fn as_u64<S: Scalar>(x: S) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

fn loops(side: Side, count: u64) -> Vec<(Stroke, u64)> {
    match side {
        Side::Left => vec![(Stroke::LoopLeft, count)],
        Side::Right => vec![(Stroke::LoopRight, count)],
        Side::None => vec![],
    }
}

fn twists<S: Scalar>(tw: &Twist<S>) -> Vec<(Stroke, u64)> {
    let t = as_u64(tw.t);
    vec![
        (Stroke::Twisted { turns: t }, as_u64(tw.base)),
        (
            Stroke::Twisted {
                turns: t.saturating_add(1),
            },
            as_u64(tw.m),
        ),
    ]
}

fn strokes<S: Scalar>(census: &MultiCurveCensusOf<S>, region: RegionId) -> Vec<(Stroke, u64)> {
    let mut out = Vec::new();
    match region {
        RegionId::U(i) => {
            let p = &census.puncture[i - 1];
            out.push((
                Stroke::Through,
                as_u64(p.above).saturating_add(as_u64(p.below)),
            ));
            out.extend(loops(p.loops.side, as_u64(p.loops.count)));
        }
        RegionId::G(i) => {
            let r = &census.genus[i - 1];
            out.push((
                Stroke::Through,
                as_u64(r.vis_above).saturating_add(as_u64(r.vis_below)),
            ));
            out.extend(loops(r.visible_genus.side, as_u64(r.visible_genus.count)));
            out.push((Stroke::Closed, as_u64(r.c_curves)));
            out.push((Stroke::Diagonal { upper: true }, as_u64(r.diag_upper)));
            out.push((Stroke::Diagonal { upper: false }, as_u64(r.diag_lower)));
            out.extend(twists(&r.twist));
            out.extend(loops(
                r.invisible_genus.side,
                as_u64(r.invisible_genus.count),
            ));
            out.push((
                Stroke::Through,
                as_u64(r.invis_above).saturating_add(as_u64(r.invis_below)),
            ));
        }
        RegionId::GStar => {
            let h = &census.handle;
            out.extend(loops(Side::Right, as_u64(h.visible_genus)));
            out.push((Stroke::Closed, as_u64(h.c_curves)));
            out.extend(twists(&h.twist));
            out.extend(loops(Side::Left, as_u64(h.invisible_genus)));
        }
    }
    out.retain(|&(_, k)| k > 0);
    out
}

/// Cut arcs drawn on the right and left edge of a region's lane.
fn edge_arcs<S: Scalar>(census: &MultiCurveCensusOf<S>, region: RegionId) -> (String, String) {
    let sig = census.sig;
    let n = sig.n();
    let name = |a: ArcId| a.to_string();
    match region {
        RegionId::U(i) => (name(ArcId::beta(i)), name(ArcId::beta(i + 1))),
        RegionId::G(i) => (
            format!(
                "{} / {}",
                name(ArcId::beta(n + i)),
                name(sig.invisible_arc(i))
            ),
            format!(
                "{} / {}",
                name(ArcId::beta(n + i + 1)),
                name(sig.invisible_arc(i + 1))
            ),
        ),
        RegionId::GStar => (
            name(ArcId::beta(n + sig.g())),
            name(sig.invisible_arc(sig.g())),
        ),
    }
}

fn stroke_path(stroke: Stroke, x0: f64, x1: f64, y: f64, gap: f64) -> String {
    let w = x1 - x0;
    match stroke {
        Stroke::Through => format!("M{x0:.1},{y:.1} L{x1:.1},{y:.1}"),
        Stroke::LoopRight => {
            let tip = x0 + w * 0.6;
            format!(
                "M{x0:.1},{y:.1} L{tip:.1},{y:.1} L{tip:.1},{:.1} L{x0:.1},{:.1}",
                y + gap * 0.5,
                y + gap * 0.5
            )
        }
        Stroke::LoopLeft => {
            let tip = x1 - w * 0.6;
            format!(
                "M{x1:.1},{y:.1} L{tip:.1},{y:.1} L{tip:.1},{:.1} L{x1:.1},{:.1}",
                y + gap * 0.5,
                y + gap * 0.5
            )
        }
        Stroke::Closed => {
            let (a, b) = (x0 + w * 0.2, x1 - w * 0.2);
            let h = gap * 0.4;
            format!(
                "M{a:.1},{:.1} L{b:.1},{:.1} L{b:.1},{:.1} L{a:.1},{:.1} Z",
                y - h,
                y - h,
                y + h,
                y + h
            )
        }
        Stroke::Diagonal { upper } => {
            let d = if upper { -gap * 0.8 } else { gap * 0.8 };
            format!("M{x0:.1},{y:.1} L{x1:.1},{:.1}", y + d)
        }
        Stroke::Twisted { turns } => {
            // one marked bump per twist, capped to keep the lane readable
            let marks = turns.min(12);
            let mut d = format!("M{x0:.1},{y:.1}");
            let step = w / (2 * marks + 1) as f64;
            for k in 0..marks {
                let xa = x0 + step * (2 * k + 1) as f64;
                let _ = write!(
                    d,
                    " L{xa:.1},{y:.1} L{:.1},{:.1} L{:.1},{y:.1}",
                    xa + step * 0.5,
                    y - gap * 0.6,
                    xa + step
                );
            }
            let _ = write!(d, " L{x1:.1},{y:.1}");
            d
        }
    }
}

/// SVG drawing of a consistent census. Identical input gives identical bytes.
pub fn render_svg<S: Scalar>(spec: &RenderSpec<'_, S>) -> Result<String, RenderError> {
    if spec.width == 0 || spec.height == 0 || spec.strand_spacing == 0 {
        return Err(RenderError::InvalidSpec);
    }
    let census = spec.census;
    let check = consistency_check(census);
    if check.has_errors() {
        return Err(RenderError::InconsistentCensus(check));
    }
    let regions = census.region_ids();
    let plan: Vec<_> = regions.iter().map(|&r| (r, strokes(census, r))).collect();
    let drawn = plan
        .iter()
        .flat_map(|(_, s)| s.iter().map(|&(_, k)| k))
        .fold(0u64, u64::saturating_add);
    if drawn > MAX_STRANDS {
        return Err(RenderError::TooLarge);
    }

    let (width, height) = (spec.width as f64, spec.height as f64);
    let gap = spec.strand_spacing as f64;
    let lane = width / regions.len() as f64;
    let top = if spec.show_labels { 28.0 } else { 8.0 };
    let bottom = if spec.show_labels { 20.0 } else { 8.0 };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        "<style>.arc{{stroke:#888;stroke-width:1}} .strand{{fill:none;stroke:#1f4e9c;stroke-width:1.2}} \
         .closed{{stroke:#2a8a3e}} .twist{{stroke:#b0432b}} .diagonal{{stroke:#7b3fa0}} \
         text{{font-family:monospace;font-size:11px}}</style>"
    );
    for (k, (region, plan)) in plan.iter().enumerate() {
        let x0 = lane * k as f64;
        let x1 = x0 + lane;
        let total = census
            .region_total(*region)
            .map(|t| t.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            svg,
            r#"<g class="region" id="{region}" data-total="{total}">"#
        );
        let _ = writeln!(
            svg,
            r#"  <line class="arc" x1="{x0:.1}" y1="{top:.1}" x2="{x0:.1}" y2="{:.1}"/>"#,
            height - bottom
        );
        let _ = writeln!(
            svg,
            r#"  <line class="arc" x1="{x1:.1}" y1="{top:.1}" x2="{x1:.1}" y2="{:.1}"/>"#,
            height - bottom
        );
        if spec.show_labels {
            let (right, left) = edge_arcs(census, *region);
            let _ = writeln!(
                svg,
                r#"  <text class="label" x="{:.1}" y="14">{region}</text>"#,
                x0 + lane / 2.0 - 10.0
            );
            let _ = writeln!(
                svg,
                r#"  <text class="label" x="{:.1}" y="{:.1}">{right}</text>"#,
                x0 + 2.0,
                height - 6.0
            );
            let _ = writeln!(
                svg,
                r#"  <text class="label" x="{:.1}" y="{:.1}" text-anchor="end">{left}</text>"#,
                x1 - 2.0,
                top - 4.0
            );
        }
        let usable = (height - top - bottom - gap).max(gap);
        let count: u64 = plan.iter().map(|&(_, k)| k).sum();
        let spacing = if count > 1 {
            (usable / count as f64).min(gap * 2.0)
        } else {
            gap
        };
        let mut y = top + gap;
        for &(stroke, k) in plan {
            for _ in 0..k {
                let d = stroke_path(stroke, x0 + 4.0, x1 - 4.0, y, spacing.max(1.0));
                let _ = writeln!(svg, r#"  <path class="{}" d="{d}"/>"#, stroke.class());
                y += spacing;
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn twist_text<S: Scalar>(tw: &Twist<S>) -> String {
    let components = tw.m + tw.base;
    let mut parts = Vec::new();
    if !tw.base.is_zero() {
        parts.push(format!("{}×t={}", tw.base, tw.t));
    }
    if !tw.m.is_zero() {
        parts.push(format!("{}×t={}", tw.m, tw.t + S::one()));
    }
    if parts.is_empty() {
        format!("twists {components}")
    } else {
        format!("twists {components} ({}), T {}", parts.join(", "), tw.total)
    }
}

fn sided_text<S: Scalar>(name: &str, count: S, side: Side) -> String {
    match side {
        Side::Left => format!("{name} {count} left"),
        Side::Right => format!("{name} {count} right"),
        Side::None => format!("{name} {count}"),
    }
}

/// One line per non-empty region after a header line.
pub fn render_summary<S: Scalar>(census: &MultiCurveCensusOf<S>) -> String {
    let sig = census.sig;
    let mut out = format!("census on S_{{{},{}}}\n", sig.n(), sig.g());
    for region in census.region_ids() {
        let total = match census.region_total(region) {
            Ok(t) if t.is_zero() => continue,
            Ok(t) => t.to_string(),
            Err(_) => "overflow".to_string(),
        };
        let row = match region {
            RegionId::U(i) => {
                let p = &census.puncture[i - 1];
                format!(
                    "above {}, below {}, {}",
                    p.above,
                    p.below,
                    sided_text("loops", p.loops.count, p.loops.side)
                )
            }
            RegionId::G(i) => {
                let r = &census.genus[i - 1];
                let crossing = match r.side_crossing {
                    crate::census::SideCrossing::Left(x) => format!("crossing left {x}"),
                    crate::census::SideCrossing::Right(x) => format!("crossing right {x}"),
                };
                format!(
                    "{}, diagonals {} upper {} lower, c-curves {}, {}, {}, through {} above {} below, \
                     through' {} above {} below, {crossing}",
                    twist_text(&r.twist),
                    r.diag_upper,
                    r.diag_lower,
                    r.c_curves,
                    sided_text("genus", r.visible_genus.count, r.visible_genus.side),
                    sided_text("genus'", r.invisible_genus.count, r.invisible_genus.side),
                    r.vis_above,
                    r.vis_below,
                    r.invis_above,
                    r.invis_below,
                )
            }
            RegionId::GStar => {
                let h = &census.handle;
                format!(
                    "{}, c-curves {}, genus {}, genus' {}",
                    twist_text(&h.twist),
                    h.c_curves,
                    h.visible_genus,
                    h.invisible_genus
                )
            }
        };
        let _ = writeln!(out, "{region}: {row}, total {total}");
    }
    out
}
