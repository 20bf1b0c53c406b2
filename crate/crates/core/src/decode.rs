//! From intersection numbers and twist directions to the component census.
//!
//! Each step below reads the coordinates directly; [`decode`] runs them in the
//! order loops, genus loops, twists, c-curves, diagonals, twist split, side
//! crossings, above/below, then checks that the result is consistent and
//! reproduces every β and β′ value.

use crate::census::{
    GenusCensus, HandleCensus, MultiCurveCensusOf, PunctureCensus, Side, SideCrossing, SidedCount,
    Twist,
};
use crate::coords::{validate_basic, CoordVectorOf, Sign, TwistSigns};
use crate::diagnostics::{AtLocus, Code, Diagnostic, Diagnostics, Locus};
use crate::encode::{arc_endpoint_count, consistency_check};
use crate::scalar::{Exact, Scalar};
use crate::surface::{ArcId, RegionId};

/// A region carrying a handle: `G_i` for `1 ≤ i ≤ g − 1`, or `G*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusRegion {
    Inner(usize),
    Handle,
}

impl GenusRegion {
    pub fn id(self) -> RegionId {
        match self {
            GenusRegion::Inner(i) => RegionId::G(i),
            GenusRegion::Handle => RegionId::GStar,
        }
    }

    fn locus(self) -> Locus {
        Locus::Region(self.id())
    }
}

type Checked<T> = Result<T, Diagnostic>;

fn negative<S: Scalar>(locus: Locus, what: &str, value: S) -> Diagnostic {
    Diagnostic::error(
        locus,
        Code::NegativeCount,
        format!("{what} = {value} is negative"),
    )
}

fn non_negative<S: Scalar>(locus: Locus, what: &str, value: S) -> Checked<S> {
    if value < S::zero() {
        Err(negative(locus, what, value))
    } else {
        Ok(value)
    }
}

/// `max{0, x/2}`; `x` must be even when positive.
fn clamped_half<S: Scalar>(x: S, locus: Locus, what: &str) -> Checked<S> {
    if x <= S::zero() {
        return Ok(S::zero());
    }
    x.halved()
        .ok_or_else(|| Diagnostic::error(locus, Code::ParityError, format!("{what} = {x} is odd")))
}

/// `x/2` for a quantity that must be even and non-negative.
fn exact_half<S: Scalar>(x: S, locus: Locus, what: &str) -> Checked<S> {
    let x = non_negative(locus, what, x)?;
    x.halved()
        .ok_or_else(|| Diagnostic::error(locus, Code::ParityError, format!("{what} = {x} is odd")))
}

/// Arc values around an inner genus region `G_i`.
struct GenusArcs<S> {
    vis_right: S,
    vis_left: S,
    inv_right: S,
    inv_left: S,
    c: S,
    gamma: S,
}

impl<S: Scalar> GenusArcs<S> {
    fn read(v: &CoordVectorOf<S>, i: usize) -> Self {
        let n = v.sig().n();
        Self {
            vis_right: v.beta(n + i),
            vis_left: v.beta(n + i + 1),
            inv_right: v.invisible(i),
            inv_left: v.invisible(i + 1),
            c: v.c(i),
            gamma: v.gamma(i),
        }
    }
}

/// Signed loop number `b_i = (β_i − β_{i+1}) / 2` of `U_i`: negative for left
/// loops, positive for right loops.
pub fn loop_count<S: Scalar>(v: &CoordVectorOf<S>, i: usize) -> Checked<S> {
    let locus = Locus::Region(RegionId::U(i));
    let d = v.beta(i).minus(v.beta(i + 1)).at(locus)?;
    d.halved().ok_or_else(|| {
        Diagnostic::error(
            locus,
            Code::ParityError,
            format!("beta_{i} - beta_{} = {d} is odd", i + 1),
        )
    })
}

/// Visible and invisible genus components of a handle region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusLoops<S> {
    pub visible: SidedCount<S>,
    pub invisible: SidedCount<S>,
}

fn sided_genus<S: Scalar>(
    right: S,
    left: S,
    c: S,
    locus: Locus,
    what: &str,
) -> Checked<SidedCount<S>> {
    let diff = right.minus(left).at(locus)?;
    let excess = diff.magnitude().and_then(|d| d.minus(c)).at(locus)?;
    let count = clamped_half(excess, locus, what)?;
    let side = if count.is_zero() {
        Side::None
    } else if right < left {
        Side::Left
    } else {
        Side::Right
    };
    Ok(SidedCount { count, side })
}

/// Genus components `l` (visible) and `l′` (invisible) of a handle region.
///
/// In `G_i`, `l_i = max{0, (|β_{n+i} − β_{n+i+1}| − c_i)/2}` and likewise for
/// `l′_i` on the β′ side (with `β_1` standing in for `β′_{n+1}`); the side is
/// left when the right arc carries fewer endpoints. In `G*`,
/// `l_g = (β_{n+g} − c*)/2` and `l′_g = (β′_{n+g} − c*)/2`, without sides.
pub fn genus_loop_counts<S: Scalar>(
    v: &CoordVectorOf<S>,
    region: GenusRegion,
) -> Checked<GenusLoops<S>> {
    let locus = region.locus();
    match region {
        GenusRegion::Inner(i) => {
            let a = GenusArcs::read(v, i);
            Ok(GenusLoops {
                visible: sided_genus(
                    a.vis_right,
                    a.vis_left,
                    a.c,
                    locus,
                    "|visible difference| - c",
                )?,
                invisible: sided_genus(
                    a.inv_right,
                    a.inv_left,
                    a.c,
                    locus,
                    "|invisible difference| - c",
                )?,
            })
        }
        GenusRegion::Handle => {
            let sig = v.sig();
            let c_star = v.c_star();
            let vis = v.beta(sig.n() + sig.g()).minus(c_star).at(locus)?;
            let inv = v.invisible(sig.g()).minus(c_star).at(locus)?;
            let count = |x: S, what: &str| -> Checked<SidedCount<S>> {
                Ok(SidedCount {
                    count: exact_half(x, locus, what)?,
                    side: Side::None,
                })
            };
            Ok(GenusLoops {
                visible: count(vis, "beta_{n+g} - c*")?,
                invisible: count(inv, "beta'_{n+g} - c*")?,
            })
        }
    }
}

/// Right-hand genus components read off one side: `max{0, (max{0, r − l} − c)/2}`.
fn right_genus<S: Scalar>(right: S, left: S, c: S, locus: Locus) -> Checked<S> {
    let diff = right.minus(left).at(locus)?.max(S::zero());
    clamped_half(diff.minus(c).at(locus)?, locus, "right genus excess")
}

/// Unsigned total twist `|T|` of a handle region; zero when the region's
/// closed curve (`c_i` or `c*`) is not crossed.
pub fn twist_magnitude<S: Scalar>(v: &CoordVectorOf<S>, region: GenusRegion) -> Checked<S> {
    let locus = region.locus();
    match region {
        GenusRegion::Inner(i) => {
            let a = GenusArcs::read(v, i);
            if a.c.is_zero() {
                return Ok(S::zero());
            }
            let vis = right_genus(a.vis_right, a.vis_left, a.c, locus)?;
            let inv = right_genus(a.inv_right, a.inv_left, a.c, locus)?;
            let t = a.gamma.minus(vis).and_then(|x| x.minus(inv)).at(locus)?;
            non_negative(locus, "|T|", t)
        }
        GenusRegion::Handle => {
            if v.c_star().is_zero() {
                return Ok(S::zero());
            }
            let g = v.sig().g();
            let loops = genus_loop_counts(v, region)?;
            let t = v
                .gamma(g)
                .minus(loops.visible.count)
                .and_then(|x| x.minus(loops.invisible.count))
                .at(locus)?;
            non_negative(locus, "|T|", t)
        }
    }
}

/// Signed total twist: [`twist_magnitude`] carrying the region's sign.
///
/// Region `i` of `signs` is `G_i` for `i < g` and `G*` for `i = g`.
pub fn total_twist<S: Scalar>(
    v: &CoordVectorOf<S>,
    signs: &TwistSigns,
    region: GenusRegion,
) -> Checked<S> {
    let g = v.sig().g();
    if signs.len() != g {
        return Err(Diagnostic::error(
            Locus::Vector,
            Code::SignCount,
            format!("expected {g} twist signs, found {}", signs.len()),
        ));
    }
    let sign = match region {
        GenusRegion::Inner(i) => signs.region(i),
        GenusRegion::Handle => signs.region(g),
    };
    let magnitude = twist_magnitude(v, region)?;
    let locus = region.locus();
    match (magnitude.is_zero(), sign) {
        (false, Sign::Zero) => Err(Diagnostic::error(
            locus,
            Code::SignMissing,
            format!("|T| = {magnitude} but the twist sign is 0"),
        )),
        (true, Sign::Positive | Sign::Negative) => Err(Diagnostic::error(
            locus,
            Code::SignWithoutTwist,
            format!("sign {sign} given but the region has no twist"),
        )),
        _ => Ok(sign.apply(magnitude)),
    }
}

/// Number of closed curves parallel to `c_i` (or `c*`); zero whenever the
/// region's closed curve is crossed.
pub fn c_curve_count<S: Scalar>(v: &CoordVectorOf<S>, region: GenusRegion) -> Checked<S> {
    let locus = region.locus();
    match region {
        GenusRegion::Inner(i) => {
            let a = GenusArcs::read(v, i);
            if !a.c.is_zero() {
                return Ok(S::zero());
            }
            let vis = right_genus(a.vis_right, a.vis_left, S::zero(), locus)?;
            let inv = right_genus(a.inv_right, a.inv_left, S::zero(), locus)?;
            let p = a.gamma.minus(vis).and_then(|x| x.minus(inv)).at(locus)?;
            non_negative(locus, "p(c_i)", p)
        }
        GenusRegion::Handle => {
            if !v.c_star().is_zero() {
                return Ok(S::zero());
            }
            let loops = genus_loop_counts(v, region)?;
            let p = v
                .gamma(v.sig().g())
                .minus(loops.visible.count)
                .and_then(|x| x.minus(loops.invisible.count))
                .at(locus)?;
            non_negative(locus, "p(c*)", p)
        }
    }
}

/// Upper and lower diagonal counts from `c_i` and the signed total twist.
///
/// `d^u = max{c − |T|, Tc} − max{0, Tc}` and
/// `d^l = max{c − |T|, −Tc} − max{0, −Tc}`, floored at zero: when
/// `|T| > c` there is no diagonal at all. Positive twist leaves only lower
/// diagonals, negative twist only upper ones. At `T = 0` both expressions
/// equal `c`; [`decode`] separates that case using the ξ arcs.
pub fn diagonal_counts<S: Scalar>(c: S, t: S) -> Result<(S, S), crate::scalar::Overflow> {
    let zero = S::zero();
    let tc = t.times(c)?;
    let neg_tc = zero.minus(tc)?;
    let slack = c.minus(t.magnitude()?)?;
    let upper = slack.max(tc).minus(zero.max(tc))?;
    let lower = slack.max(neg_tc).minus(zero.max(neg_tc))?;
    Ok((upper.max(zero), lower.max(zero)))
}

/// The split of `|T|` over `c_eff` twist components.
///
/// Returns `(m, t, base)` with `m = |T| mod c_eff` in `[0, c_eff)`,
/// `t = (|T| − m)/c_eff` and `base = c_eff − m`; `(0, 0, 0)` when there are
/// no twist components.
pub fn twist_distribution<S: Scalar>(c_eff: S, abs_t: S) -> Result<(S, S, S), Diagnostic> {
    let bad = |detail: String| Diagnostic::error(Locus::Vector, Code::InconsistentTwist, detail);
    if c_eff < S::zero() || abs_t < S::zero() {
        return Err(bad(format!(
            "c_eff = {c_eff}, |T| = {abs_t} must be non-negative"
        )));
    }
    if c_eff.is_zero() {
        if abs_t.is_zero() {
            return Ok((S::zero(), S::zero(), S::zero()));
        }
        return Err(bad(format!(
            "|T| = {abs_t} but there are no twist components"
        )));
    }
    let m = abs_t % c_eff;
    let t = abs_t / c_eff;
    Ok((m, t, c_eff - m))
}

/// Twist-plus-diagonal strands leaving `G_i` through the visible arcs.
///
/// When `β_{n+i} ≤ β_{n+i+1}` this is `Left(n_i)` with
/// `n_i = (β_{n+i+1} − β_{n+i} + c_i)/2 − l_i` strands on `β_{n+i+1}`;
/// otherwise `Right(k_i)` with `k_i` strands on `β_{n+i}`, defined
/// symmetrically. The complement on the other arc is `c_i` minus the value.
pub fn side_crossings<S: Scalar>(
    v: &CoordVectorOf<S>,
    c: S,
    l: S,
    i: usize,
) -> Checked<SideCrossing<S>> {
    let locus = Locus::Region(RegionId::G(i));
    let a = GenusArcs::read(v, i);
    let (diff, left) = if a.vis_right <= a.vis_left {
        (a.vis_left.minus(a.vis_right).at(locus)?, true)
    } else {
        (a.vis_right.minus(a.vis_left).at(locus)?, false)
    };
    let half = exact_half(diff.plus(c).at(locus)?, locus, "|beta difference| + c")?;
    let value = non_negative(locus, "side crossing", half.minus(l).at(locus)?)?;
    if value > c {
        return Err(Diagnostic::error(
            locus,
            Code::InvariantViolation,
            format!("side crossing {value} exceeds c_{i} = {c}"),
        ));
    }
    Ok(if left {
        SideCrossing::Left(value)
    } else {
        SideCrossing::Right(value)
    })
}

/// Above and below components of `U_i`: `α_{2i−1} − |b_i|` and `α_{2i} − |b_i|`.
pub fn puncture_above_below<S: Scalar>(v: &CoordVectorOf<S>, i: usize, b: S) -> Checked<(S, S)> {
    let locus = Locus::Region(RegionId::U(i));
    let loops = b.magnitude().at(locus)?;
    let above = non_negative(locus, "above", v.alpha(2 * i - 1).minus(loops).at(locus)?)?;
    let below = non_negative(locus, "below", v.alpha(2 * i).minus(loops).at(locus)?)?;
    Ok((above, below))
}

fn visible_through<S: Scalar>(v: &CoordVectorOf<S>, r: &GenusCensus<S>) -> Checked<(S, S)> {
    let i = r.i;
    let locus = Locus::Region(RegionId::G(i));
    let zero = S::zero();
    let t = r.twist.total;
    let l = r.visible_genus.count;
    let (xa, xb) = (v.xi(2 * i - 1), v.xi(2 * i));
    let (va, vb) = if t.is_zero() {
        (
            xa.minus(r.c_curves.max(r.diag_upper))
                .and_then(|x| x.minus(l)),
            xb.minus(r.c_curves.max(r.diag_lower))
                .and_then(|x| x.minus(l)),
        )
    } else {
        let abs_t = t.magnitude().at(locus)?;
        let c = r.c_intersections().at(locus)?;
        let n = r.side_crossing.on_left(c).at(locus)?;
        let neg_t = zero.minus(t).at(locus)?;
        let above_twist = n
            .minus(r.diag_lower)
            .at(locus)?
            .max(t)
            .minus(zero.max(t))
            .at(locus)?;
        let below_twist = n
            .minus(r.diag_upper)
            .at(locus)?
            .max(neg_t)
            .minus(zero.max(neg_t))
            .at(locus)?;
        (
            xa.minus(abs_t)
                .and_then(|x| x.minus(above_twist))
                .and_then(|x| x.minus(l)),
            xb.minus(abs_t)
                .and_then(|x| x.minus(below_twist))
                .and_then(|x| x.minus(l)),
        )
    };
    Ok((
        non_negative(locus, "visible above", va.at(locus)?)?,
        non_negative(locus, "visible below", vb.at(locus)?)?,
    ))
}

/// Visible and invisible above/below components of `G_i`, given the region's
/// genus loops, c-curves, diagonals, total twist and side crossing.
///
/// Returns `(u^{va}_{2i−1}, u^{vb}_{2i}, u^{v′a}_{2i−1}, u^{v′b}_{2i})`.
pub fn genus_above_below<S: Scalar>(
    v: &CoordVectorOf<S>,
    partial: &GenusCensus<S>,
) -> Checked<(S, S, S, S)> {
    let i = partial.i;
    let locus = Locus::Region(RegionId::G(i));
    let (va, vb) = visible_through(v, partial)?;
    let lp = partial.invisible_genus.count;
    let ia = non_negative(
        locus,
        "invisible above",
        v.xi_prime(2 * i - 1).minus(lp).at(locus)?,
    )?;
    let ib = non_negative(
        locus,
        "invisible below",
        v.xi_prime(2 * i).minus(lp).at(locus)?,
    )?;
    Ok((va, vb, ia, ib))
}

fn decode_puncture<S: Scalar>(v: &CoordVectorOf<S>, i: usize) -> Checked<PunctureCensus<S>> {
    let b = loop_count(v, i)?;
    let (above, below) = puncture_above_below(v, i, b)?;
    let side = match Sign::of(b) {
        Sign::Positive => Side::Right,
        Sign::Negative => Side::Left,
        Sign::Zero => Side::None,
    };
    let count = b.magnitude().at(Locus::Region(RegionId::U(i)))?;
    Ok(PunctureCensus {
        i,
        above,
        below,
        loops: SidedCount { count, side },
    })
}

fn decode_genus<S: Scalar>(
    v: &CoordVectorOf<S>,
    signs: &TwistSigns,
    i: usize,
) -> Checked<GenusCensus<S>> {
    let region = GenusRegion::Inner(i);
    let locus = region.locus();
    let loops = genus_loop_counts(v, region)?;
    let total = total_twist(v, signs, region)?;
    let c_curves = c_curve_count(v, region)?;
    let c = v.c(i);
    let side_crossing = side_crossings(v, c, loops.visible.count, i)?;
    let mut r = GenusCensus {
        i,
        c_curves,
        visible_genus: loops.visible,
        invisible_genus: loops.invisible,
        side_crossing,
        ..Default::default()
    };
    r.twist.total = total;
    let abs_t = total.magnitude().at(locus)?;

    if !total.is_zero() {
        let (du, dl) = diagonal_counts(c, total).at(locus)?;
        r.diag_upper = du;
        r.diag_lower = dl;
    } else if !c.is_zero() {
        // No twist: every strand crossing c_i is a diagonal, and only the ξ
        // arcs tell upper from lower.
        let mut fits = Vec::new();
        let mut first_err = None;
        for (du, dl) in [(c, S::zero()), (S::zero(), c)] {
            let trial = GenusCensus {
                diag_upper: du,
                diag_lower: dl,
                ..r
            };
            match visible_through(v, &trial) {
                Ok(_) => fits.push((du, dl)),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        match fits.as_slice() {
            [(du, dl)] => {
                r.diag_upper = *du;
                r.diag_lower = *dl;
            }
            [] => return Err(first_err.expect("both trials failed")),
            _ => {
                return Err(Diagnostic::error(
                    locus,
                    Code::AmbiguousDiagonals,
                    format!("{c} untwisted strands fit both as upper and as lower diagonals"),
                ))
            }
        }
    }

    let c_eff = c
        .minus(r.diag_upper)
        .and_then(|x| x.minus(r.diag_lower))
        .at(locus)?;
    let (m, t, base) = twist_distribution(c_eff, abs_t).map_err(|d| Diagnostic { locus, ..d })?;
    r.twist = Twist { total, m, t, base };

    let (va, vb, ia, ib) = genus_above_below(v, &r)?;
    r.vis_above = va;
    r.vis_below = vb;
    r.invis_above = ia;
    r.invis_below = ib;
    Ok(r)
}

fn decode_handle<S: Scalar>(v: &CoordVectorOf<S>, signs: &TwistSigns) -> Checked<HandleCensus<S>> {
    let region = GenusRegion::Handle;
    let loops = genus_loop_counts(v, region)?;
    let total = total_twist(v, signs, region)?;
    let c_curves = c_curve_count(v, region)?;
    let abs_t = total.magnitude().at(region.locus())?;
    let (m, t, base) = twist_distribution(v.c_star(), abs_t).map_err(|d| Diagnostic {
        locus: region.locus(),
        ..d
    })?;
    Ok(HandleCensus {
        c_curves,
        visible_genus: loops.visible.count,
        invisible_genus: loops.invisible.count,
        twist: Twist { total, m, t, base },
    })
}

/// Unsigned total twist of every handle region, `G_1..G_{g-1}` then `G*`.
pub fn twist_magnitudes<S: Scalar>(v: &CoordVectorOf<S>) -> Checked<Vec<S>> {
    let g = v.sig().g();
    (1..=g)
        .map(|i| {
            twist_magnitude(
                v,
                if i < g {
                    GenusRegion::Inner(i)
                } else {
                    GenusRegion::Handle
                },
            )
        })
        .collect()
}

/// Decodes a coordinate vector with twist directions into its census.
///
/// Any failure means the vector is not realised by a multicurve with these
/// signs. Besides the per-region formulas this checks the census invariants
/// and that the endpoint count on every β and β′ arc matches the vector.
pub fn decode<S: Scalar>(
    v: &CoordVectorOf<S>,
    signs: &TwistSigns,
) -> Result<MultiCurveCensusOf<S>, Diagnostics> {
    let sig = v.sig();
    if signs.len() != sig.g() {
        return Err(Diagnostic::error(
            Locus::Vector,
            Code::SignCount,
            format!("expected {} twist signs, found {}", sig.g(), signs.len()),
        )
        .into());
    }
    let basic = validate_basic(v);
    if basic.has_errors() {
        return Err(basic);
    }

    let mut errors = Diagnostics::new();
    let mut census = MultiCurveCensusOf::empty(sig);
    for i in 1..=sig.n() {
        match decode_puncture(v, i) {
            Ok(p) => census.puncture[i - 1] = p,
            Err(e) => errors.push(e),
        }
    }
    for i in 1..sig.g() {
        match decode_genus(v, signs, i) {
            Ok(r) => census.genus[i - 1] = r,
            Err(e) => errors.push(e),
        }
    }
    match decode_handle(v, signs) {
        Ok(h) => census.handle = h,
        Err(e) => errors.push(e),
    }
    if errors.has_errors() {
        return Err(errors);
    }

    let check = consistency_check(&census);
    if check.has_errors() {
        return Err(check);
    }
    for arc in sig.cut_arcs() {
        let [region, _] = sig.adjacent_regions(arc).expect("cut arcs have two sides");
        let found = arc_endpoint_count(&census, arc, region).map_err(Diagnostics::from)?;
        let expected = v.get(arc);
        if found != expected {
            errors.push(Diagnostic::error(
                Locus::Arc(arc),
                Code::ArcMismatch,
                format!("components have {found} endpoints on {arc}, vector says {expected}"),
            ));
        }
    }
    errors.into_result(census)
}

/// Whether `arc` is one whose value `decode` checks against endpoint counts.
pub fn is_cut_arc(arc: ArcId) -> bool {
    matches!(
        arc.group,
        crate::surface::ArcGroup::Beta | crate::surface::ArcGroup::BetaPrime
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;
    use crate::CoordVector;

    const EXAMPLE: &str = "(6,2,4,2,5,1; 8,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)";

    fn example() -> CoordVector {
        CoordVector::parse(EXAMPLE, SurfaceSig::new(3, 3).unwrap()).unwrap()
    }

    fn signs(text: &str, g: usize) -> TwistSigns {
        TwistSigns::parse(text, g).unwrap()
    }

    #[test]
    fn loop_count_examples() {
        let v = example();
        assert_eq!(loop_count(&v, 1), Ok(1));
        assert_eq!(loop_count(&v, 2), Ok(1));
        assert_eq!(loop_count(&v, 3), Ok(-1));
        let flat = CoordVector::parse("(1,1; 2,2; 1; 0)", SurfaceSig::new(1, 1).unwrap()).unwrap();
        assert_eq!(loop_count(&flat, 1), Ok(0));
    }

    #[test]
    fn loop_count_parity() {
        let v = CoordVector::parse("(1,1; 3,2; 1; 0)", SurfaceSig::new(1, 1).unwrap()).unwrap();
        assert_eq!(loop_count(&v, 1).unwrap_err().code, Code::ParityError);
    }

    #[test]
    fn genus_loop_examples() {
        let v = example();
        let g1 = genus_loop_counts(&v, GenusRegion::Inner(1)).unwrap();
        assert_eq!(g1.visible, SidedCount::none());
        assert_eq!(g1.invisible, SidedCount::new(1, Side::Right));
        let g2 = genus_loop_counts(&v, GenusRegion::Inner(2)).unwrap();
        assert_eq!(g2.visible, SidedCount::new(1, Side::Right));
        assert_eq!(g2.invisible, SidedCount::none());
        let h = genus_loop_counts(&v, GenusRegion::Handle).unwrap();
        assert_eq!((h.visible.count, h.invisible.count), (1, 0));
    }

    #[test]
    fn genus_loops_vanish_when_c_dominates() {
        // beta_2 = 2, beta_3 = 4, c_1 = 2: |2 - 4| <= c_1
        let sig = SurfaceSig::new(1, 2).unwrap();
        let mut v = CoordVector::zero(sig);
        v.set(ArcId::beta(2), 2);
        v.set(ArcId::beta(3), 4);
        v.set(ArcId::c(1), 2);
        let l = genus_loop_counts(&v, GenusRegion::Inner(1)).unwrap();
        assert_eq!(l.visible, SidedCount::none());
    }

    #[test]
    fn handle_loops_need_enough_endpoints() {
        let v = CoordVector::parse("(1,1; 2,0; 1; 2)", SurfaceSig::new(1, 1).unwrap()).unwrap();
        let e = genus_loop_counts(&v, GenusRegion::Handle).unwrap_err();
        assert_eq!(e.code, Code::NegativeCount);
    }

    #[test]
    fn total_twist_examples() {
        let v = example();
        let s = signs("+,-,0", 3);
        assert_eq!(total_twist(&v, &s, GenusRegion::Inner(1)), Ok(1));
        assert_eq!(total_twist(&v, &s, GenusRegion::Inner(2)), Ok(-4));
        assert_eq!(total_twist(&v, &s, GenusRegion::Handle), Ok(0));
    }

    #[test]
    fn total_twist_sign_errors() {
        let v = example();
        let e = total_twist(&v, &signs("0,-,0", 3), GenusRegion::Inner(1)).unwrap_err();
        assert_eq!(e.code, Code::SignMissing);
        let e = total_twist(&v, &signs("+,-,+", 3), GenusRegion::Handle).unwrap_err();
        assert_eq!(e.code, Code::SignWithoutTwist);
    }

    #[test]
    fn c_curve_examples() {
        let v = example();
        assert_eq!(c_curve_count(&v, GenusRegion::Handle), Ok(2));
        assert_eq!(c_curve_count(&v, GenusRegion::Inner(1)), Ok(0));
        assert_eq!(c_curve_count(&v, GenusRegion::Inner(2)), Ok(0));
        // gamma_g = beta_{n+g} = beta'_{n+g} = c* = 0
        let sig = SurfaceSig::new(1, 2).unwrap();
        let mut z = CoordVector::zero(sig);
        z.set(ArcId::alpha(1), 1);
        assert_eq!(c_curve_count(&z, GenusRegion::Handle), Ok(0));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_counts(3i64, 1), Ok((0, 2)));
        assert_eq!(diagonal_counts(3i64, -4), Ok((0, 0)));
        assert_eq!(diagonal_counts(3i64, -1), Ok((2, 0)));
        assert_eq!(diagonal_counts(0i64, 5), Ok((0, 0)));
        assert_eq!(diagonal_counts(0i64, -2), Ok((0, 0)));
        assert_eq!(diagonal_counts(0i64, 0), Ok((0, 0)));
    }

    #[test]
    fn twist_distribution_examples() {
        assert_eq!(twist_distribution(1i64, 1), Ok((0, 1, 1)));
        assert_eq!(twist_distribution(3i64, 4), Ok((1, 1, 2)));
        assert_eq!(twist_distribution(5i64, 0), Ok((0, 0, 5)));
        assert_eq!(twist_distribution(0i64, 0), Ok((0, 0, 0)));
        assert_eq!(
            twist_distribution(0i64, 2).unwrap_err().code,
            Code::InconsistentTwist
        );
    }

    #[test]
    fn side_crossing_examples() {
        let v = example();
        assert_eq!(side_crossings(&v, 3, 0, 1), Ok(SideCrossing::Left(2)));
        assert_eq!(side_crossings(&v, 3, 1, 2), Ok(SideCrossing::Right(3)));
        let sig = SurfaceSig::new(1, 2).unwrap();
        let mut z = CoordVector::zero(sig);
        z.set(ArcId::beta(2), 4);
        z.set(ArcId::beta(3), 4);
        assert_eq!(side_crossings(&z, 0, 0, 1), Ok(SideCrossing::Left(0)));
    }

    #[test]
    fn above_below_examples() {
        let v = example();
        assert_eq!(puncture_above_below(&v, 1, 1), Ok((5, 1)));
        assert_eq!(puncture_above_below(&v, 2, 1), Ok((3, 1)));
        assert_eq!(puncture_above_below(&v, 3, -1), Ok((4, 0)));
        let census = decode(&v, &signs("+,-,0", 3)).unwrap();
        assert_eq!(genus_above_below(&v, &census.genus[0]), Ok((4, 1, 3, 0)));
        assert_eq!(genus_above_below(&v, &census.genus[1]), Ok((1, 1, 0, 0)));
    }

    #[test]
    fn wrong_sign_count_is_rejected() {
        let e = decode(&example(), &signs("+,-", 2)).unwrap_err();
        assert_eq!(e.codes(), vec![Code::SignCount]);
    }

    #[test]
    fn zero_vector_is_rejected_before_decoding() {
        let sig = SurfaceSig::new(1, 1).unwrap();
        let e = decode(&CoordVector::zero(sig), &signs("0", 1)).unwrap_err();
        assert_eq!(e.codes(), vec![Code::ZeroVector]);
    }

    #[test]
    fn unbalanced_puncture_is_an_arc_mismatch() {
        // alpha says 2 strands, beta_1 says 4 endpoints
        let sig = SurfaceSig::new(1, 1).unwrap();
        let v = CoordVector::parse("(1,1; 4,4; 4; 0)", sig).unwrap();
        let e = decode(&v, &signs("0", 1)).unwrap_err();
        assert!(
            e.contains(Code::ArcMismatch) || e.contains(Code::ArcImbalance),
            "{e}"
        );
    }
}
