//! Per-region path-component counts of a multicurve.

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::scalar::{sum, Exact, Overflow, Scalar};
use crate::surface::{RegionId, SurfaceSig};

/// Which side a loop or genus component sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    #[default]
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct SidedCount<S> {
    pub count: S,
    pub side: Side,
}

impl<S: Scalar> SidedCount<S> {
    pub fn new(count: S, side: Side) -> Self {
        Self { count, side }
    }

    pub fn none() -> Self {
        Self {
            count: S::zero(),
            side: Side::None,
        }
    }

    pub fn left(&self) -> S {
        if self.side == Side::Left {
            self.count
        } else {
            S::zero()
        }
    }

    pub fn right(&self) -> S {
        if self.side == Side::Right {
            self.count
        } else {
            S::zero()
        }
    }
}

/// Signed total twist and its split over twist components: `m` components
/// twist `t + 1` times and `base` components twist `t` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Twist<S> {
    pub total: S,
    pub m: S,
    pub t: S,
    pub base: S,
}

impl<S: Scalar> Twist<S> {
    pub fn zero() -> Self {
        Self {
            total: S::zero(),
            m: S::zero(),
            t: S::zero(),
            base: S::zero(),
        }
    }

    /// Number of twist components, `m + base`.
    pub fn components(&self) -> Result<S, Overflow> {
        self.m.plus(self.base)
    }
}

/// How many of the twist and diagonal strands of a genus region leave through
/// each visible arc.
///
/// `Left(n)` counts strands ending on `β_{n+i+1}` and is used when
/// `β_{n+i} ≤ β_{n+i+1}`; `Right(k)` counts strands ending on `β_{n+i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    bound = "S: Scalar",
    tag = "side",
    content = "count",
    rename_all = "lowercase"
)]
pub enum SideCrossing<S> {
    Left(S),
    Right(S),
}

impl<S: Scalar> SideCrossing<S> {
    /// Strands ending on the left arc `β_{n+i+1}`, given `c_i`.
    pub fn on_left(&self, c: S) -> Result<S, Overflow> {
        match *self {
            SideCrossing::Left(n) => Ok(n),
            SideCrossing::Right(k) => c.minus(k),
        }
    }

    pub fn value(&self) -> S {
        match *self {
            SideCrossing::Left(x) | SideCrossing::Right(x) => x,
        }
    }
}

impl<S: Default> Default for SideCrossing<S> {
    fn default() -> Self {
        SideCrossing::Left(S::default())
    }
}

/// Components in a puncture region `U_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PunctureCensus<S> {
    pub i: usize,
    pub above: S,
    pub below: S,
    pub loops: SidedCount<S>,
}

impl<S: Scalar> PunctureCensus<S> {
    /// Signed loop number: positive for right loops, negative for left.
    pub fn b(&self) -> S {
        match self.loops.side {
            Side::Right => self.loops.count,
            Side::Left => S::zero() - self.loops.count,
            Side::None => S::zero(),
        }
    }

    pub fn total(&self) -> Result<S, Overflow> {
        sum([self.above, self.below, self.loops.count])
    }
}

/// Components in an inner genus region `G_i`, `1 ≤ i ≤ g − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GenusCensus<S> {
    pub i: usize,
    /// Closed curves parallel to `c_i`.
    pub c_curves: S,
    pub visible_genus: SidedCount<S>,
    pub invisible_genus: SidedCount<S>,
    pub diag_upper: S,
    pub diag_lower: S,
    pub twist: Twist<S>,
    pub vis_above: S,
    pub vis_below: S,
    pub invis_above: S,
    pub invis_below: S,
    pub side_crossing: SideCrossing<S>,
}

impl<S: Scalar> GenusCensus<S> {
    /// Intersections with `c_i`: diagonals plus twist components.
    pub fn c_intersections(&self) -> Result<S, Overflow> {
        sum([
            self.diag_upper,
            self.diag_lower,
            self.twist.m,
            self.twist.base,
        ])
    }

    /// Twist and diagonal strands ending on `β_{n+i+1}`.
    pub fn left_crossings(&self) -> Result<S, Overflow> {
        self.side_crossing.on_left(self.c_intersections()?)
    }

    pub fn total(&self) -> Result<S, Overflow> {
        sum([
            self.c_curves,
            self.visible_genus.count,
            self.invisible_genus.count,
            self.diag_upper,
            self.diag_lower,
            self.twist.components()?,
            self.vis_above,
            self.vis_below,
            self.invis_above,
            self.invis_below,
        ])
    }
}

/// Components in `G*`, the handle next to the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HandleCensus<S> {
    pub c_curves: S,
    pub visible_genus: S,
    pub invisible_genus: S,
    pub twist: Twist<S>,
}

impl<S: Scalar> HandleCensus<S> {
    /// Intersections with `c*`, i.e. the number of twist components.
    pub fn c_intersections(&self) -> Result<S, Overflow> {
        self.twist.components()
    }

    pub fn total(&self) -> Result<S, Overflow> {
        sum([
            self.c_curves,
            self.visible_genus,
            self.invisible_genus,
            self.twist.components()?,
        ])
    }
}

/// The full decoded object: every region's component counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiCurveCensusOf<S> {
    pub sig: SurfaceSig,
    pub puncture: Vec<PunctureCensus<S>>,
    pub genus: Vec<GenusCensus<S>>,
    pub handle: HandleCensus<S>,
}

impl<S: Scalar> MultiCurveCensusOf<S> {
    /// A census with no components.
    pub fn empty(sig: SurfaceSig) -> Self {
        Self {
            sig,
            puncture: (1..=sig.n())
                .map(|i| PunctureCensus {
                    i,
                    ..Default::default()
                })
                .collect(),
            genus: (1..sig.g())
                .map(|i| GenusCensus {
                    i,
                    ..Default::default()
                })
                .collect(),
            handle: HandleCensus::default(),
        }
    }

    pub fn region_ids(&self) -> Vec<RegionId> {
        self.sig.regions().into_iter().map(|r| r.id).collect()
    }

    /// Number of path components in one region.
    pub fn region_total(&self, region: RegionId) -> Result<S, Overflow> {
        match region {
            RegionId::U(i) => self.puncture[i - 1].total(),
            RegionId::G(i) => self.genus[i - 1].total(),
            RegionId::GStar => self.handle.total(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.region_ids()
            .into_iter()
            .all(|r| self.region_total(r).map(|t| t.is_zero()).unwrap_or(false))
    }

    /// Signed total twist of region `i` (`i = g` is `G*`).
    pub fn twist_total(&self, i: usize) -> S {
        if i < self.sig.g() {
            self.genus[i - 1].twist.total
        } else {
            self.handle.twist.total
        }
    }

    /// Multiplies every count by `k`, keeping `t` fixed and preserving the
    /// split of twist components.
    pub fn scaled(&self, k: S) -> Result<Self, Overflow> {
        let sc = |c: SidedCount<S>| -> Result<SidedCount<S>, Overflow> {
            Ok(SidedCount {
                count: c.count.times(k)?,
                side: c.side,
            })
        };
        let tw = |t: Twist<S>| -> Result<Twist<S>, Overflow> {
            Ok(Twist {
                total: t.total.times(k)?,
                m: t.m.times(k)?,
                t: t.t,
                base: t.base.times(k)?,
            })
        };
        let puncture = self
            .puncture
            .iter()
            .map(|p| {
                Ok(PunctureCensus {
                    i: p.i,
                    above: p.above.times(k)?,
                    below: p.below.times(k)?,
                    loops: sc(p.loops)?,
                })
            })
            .collect::<Result<_, Overflow>>()?;
        let genus = self
            .genus
            .iter()
            .map(|r| {
                Ok(GenusCensus {
                    i: r.i,
                    c_curves: r.c_curves.times(k)?,
                    visible_genus: sc(r.visible_genus)?,
                    invisible_genus: sc(r.invisible_genus)?,
                    diag_upper: r.diag_upper.times(k)?,
                    diag_lower: r.diag_lower.times(k)?,
                    twist: tw(r.twist)?,
                    vis_above: r.vis_above.times(k)?,
                    vis_below: r.vis_below.times(k)?,
                    invis_above: r.invis_above.times(k)?,
                    invis_below: r.invis_below.times(k)?,
                    side_crossing: match r.side_crossing {
                        SideCrossing::Left(x) => SideCrossing::Left(x.times(k)?),
                        SideCrossing::Right(x) => SideCrossing::Right(x.times(k)?),
                    },
                })
            })
            .collect::<Result<_, Overflow>>()?;
        let h = &self.handle;
        let handle = HandleCensus {
            c_curves: h.c_curves.times(k)?,
            visible_genus: h.visible_genus.times(k)?,
            invisible_genus: h.invisible_genus.times(k)?,
            twist: tw(h.twist)?,
        };
        Ok(Self {
            sig: self.sig,
            puncture,
            genus,
            handle,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CensusDocument::from_census(self)).expect("census serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: RawCensusDocument<S> = serde_json::from_str(text)?;
        doc.into_census()
    }
}

/// One region of the census JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Scalar", tag = "kind")]
pub enum RegionRecord<S> {
    U {
        i: usize,
        above: S,
        below: S,
        loops: SidedCount<S>,
    },
    G {
        i: usize,
        c_curves: S,
        visible_genus: SidedCount<S>,
        invisible_genus: SidedCount<S>,
        diag_upper: S,
        diag_lower: S,
        twist: Twist<S>,
        vis_above: S,
        vis_below: S,
        invis_above: S,
        invis_below: S,
        side_crossing: SideCrossing<S>,
    },
    GStar {
        c_curves: S,
        visible_genus: S,
        invisible_genus: S,
        twist: Twist<S>,
    },
}

/// `{"regions": [...]}` in region order `U_1..U_n, G_1..G_{g-1}, G*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct CensusDocument<S> {
    pub regions: Vec<RegionRecord<S>>,
}

impl<S: Scalar> CensusDocument<S> {
    pub fn from_census(c: &MultiCurveCensusOf<S>) -> Self {
        let mut regions = Vec::new();
        for p in &c.puncture {
            regions.push(RegionRecord::U {
                i: p.i,
                above: p.above,
                below: p.below,
                loops: p.loops,
            });
        }
        for r in &c.genus {
            regions.push(RegionRecord::G {
                i: r.i,
                c_curves: r.c_curves,
                visible_genus: r.visible_genus,
                invisible_genus: r.invisible_genus,
                diag_upper: r.diag_upper,
                diag_lower: r.diag_lower,
                twist: r.twist,
                vis_above: r.vis_above,
                vis_below: r.vis_below,
                invis_above: r.invis_above,
                invis_below: r.invis_below,
                side_crossing: r.side_crossing,
            });
        }
        let h = &c.handle;
        regions.push(RegionRecord::GStar {
            c_curves: h.c_curves,
            visible_genus: h.visible_genus,
            invisible_genus: h.invisible_genus,
            twist: h.twist,
        });
        Self { regions }
    }
}

// Reading goes through a flat record so that every integer width works with
// serde_json, which cannot buffer 128-bit values inside tagged enums.
#[derive(Deserialize)]
#[serde(bound = "S: Scalar", deny_unknown_fields)]
struct RawRegion<S> {
    kind: String,
    i: Option<usize>,
    above: Option<S>,
    below: Option<S>,
    loops: Option<SidedCount<S>>,
    c_curves: Option<S>,
    visible_genus: Option<serde_json::Value>,
    invisible_genus: Option<serde_json::Value>,
    diag_upper: Option<S>,
    diag_lower: Option<S>,
    twist: Option<Twist<S>>,
    vis_above: Option<S>,
    vis_below: Option<S>,
    invis_above: Option<S>,
    invis_below: Option<S>,
    side_crossing: Option<SideCrossing<S>>,
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct RawCensusDocument<S> {
    regions: Vec<RawRegion<S>>,
}

fn field<T>(value: Option<T>, kind: &str, name: &str) -> Result<T, ParseError> {
    value.ok_or_else(|| ParseError::Census(format!("{kind} region is missing {name:?}")))
}

fn genus_field<T: serde::de::DeserializeOwned>(
    value: Option<serde_json::Value>,
    kind: &str,
    name: &str,
) -> Result<T, ParseError> {
    let v = field(value, kind, name)?;
    serde_json::from_value(v).map_err(|e| ParseError::Census(format!("{kind}.{name}: {e}")))
}

impl<S: Scalar> RawCensusDocument<S> {
    fn into_census(self) -> Result<MultiCurveCensusOf<S>, ParseError> {
        let mut puncture = Vec::new();
        let mut genus = Vec::new();
        let mut handle = None;
        for r in self.regions {
            if handle.is_some() {
                return Err(ParseError::Census("GStar must be the last region".into()));
            }
            match r.kind.as_str() {
                "U" => {
                    if !genus.is_empty() {
                        return Err(ParseError::Census(
                            "U regions must precede G regions".into(),
                        ));
                    }
                    let i = field(r.i, "U", "i")?;
                    if i != puncture.len() + 1 {
                        return Err(ParseError::Census(format!(
                            "expected U_{}, found U_{i}",
                            puncture.len() + 1
                        )));
                    }
                    puncture.push(PunctureCensus {
                        i,
                        above: field(r.above, "U", "above")?,
                        below: field(r.below, "U", "below")?,
                        loops: field(r.loops, "U", "loops")?,
                    });
                }
                "G" => {
                    let i = field(r.i, "G", "i")?;
                    if i != genus.len() + 1 {
                        return Err(ParseError::Census(format!(
                            "expected G_{}, found G_{i}",
                            genus.len() + 1
                        )));
                    }
                    genus.push(GenusCensus {
                        i,
                        c_curves: field(r.c_curves, "G", "c_curves")?,
                        visible_genus: genus_field(r.visible_genus, "G", "visible_genus")?,
                        invisible_genus: genus_field(r.invisible_genus, "G", "invisible_genus")?,
                        diag_upper: field(r.diag_upper, "G", "diag_upper")?,
                        diag_lower: field(r.diag_lower, "G", "diag_lower")?,
                        twist: field(r.twist, "G", "twist")?,
                        vis_above: field(r.vis_above, "G", "vis_above")?,
                        vis_below: field(r.vis_below, "G", "vis_below")?,
                        invis_above: field(r.invis_above, "G", "invis_above")?,
                        invis_below: field(r.invis_below, "G", "invis_below")?,
                        side_crossing: field(r.side_crossing, "G", "side_crossing")?,
                    });
                }
                "GStar" => {
                    handle = Some(HandleCensus {
                        c_curves: field(r.c_curves, "GStar", "c_curves")?,
                        visible_genus: genus_field(r.visible_genus, "GStar", "visible_genus")?,
                        invisible_genus: genus_field(
                            r.invisible_genus,
                            "GStar",
                            "invisible_genus",
                        )?,
                        twist: field(r.twist, "GStar", "twist")?,
                    });
                }
                other => return Err(ParseError::Census(format!("unknown region kind {other:?}"))),
            }
        }
        let handle = handle.ok_or_else(|| ParseError::Census("missing GStar region".into()))?;
        let sig = SurfaceSig::new(puncture.len(), genus.len() + 1)?;
        Ok(MultiCurveCensusOf {
            sig,
            puncture,
            genus,
            handle,
        })
    }
}
