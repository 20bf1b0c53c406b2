//! From a census back to coordinates, and the invariants a census must satisfy.

use crate::census::{
    GenusCensus, HandleCensus, MultiCurveCensusOf, Side, SideCrossing, SidedCount, Twist,
};
use crate::coords::{CoordVectorOf, Sign, TwistSigns};
use crate::diagnostics::{AtLocus, Code, Diagnostic, Diagnostics, Locus};
use crate::scalar::{sum, Exact, Overflow, Scalar};
use crate::surface::{ArcGroup, ArcId, RegionId};

type Checked<T> = Result<T, Diagnostic>;

fn not_adjacent(arc: ArcId, region: RegionId) -> Diagnostic {
    Diagnostic::error(
        Locus::Region(region),
        Code::Malformed,
        format!("{arc} does not bound {region}"),
    )
}

fn twice<S: Scalar>(x: S) -> Result<S, Overflow> {
    x.doubled()
}

/// Endpoints that the components of `region` have on the cut arc `arc`.
pub fn arc_endpoint_count<S: Scalar>(
    census: &MultiCurveCensusOf<S>,
    arc: ArcId,
    region: RegionId,
) -> Checked<S> {
    let sig = census.sig;
    let n = sig.n();
    let locus = Locus::Region(region);
    if !matches!(arc.group, ArcGroup::Beta | ArcGroup::BetaPrime) {
        return Err(not_adjacent(arc, region));
    }
    match region {
        RegionId::U(i) => {
            let p = census
                .puncture
                .get(i - 1)
                .ok_or_else(|| not_adjacent(arc, region))?;
            let through = p.above.plus(p.below).at(locus)?;
            let loops = if arc == ArcId::beta(i) {
                p.loops.right()
            } else if arc == ArcId::beta(i + 1) {
                p.loops.left()
            } else {
                return Err(not_adjacent(arc, region));
            };
            through.plus(twice(loops).at(locus)?).at(locus)
        }
        RegionId::G(i) => {
            let r = census
                .genus
                .get(i - 1)
                .ok_or_else(|| not_adjacent(arc, region))?;
            let c = r.c_intersections().at(locus)?;
            let on_left = r.left_crossings().at(locus)?;
            let vis = r.vis_above.plus(r.vis_below).at(locus)?;
            let inv = r.invis_above.plus(r.invis_below).at(locus)?;
            let terms = if arc == ArcId::beta(n + i) {
                [
                    c.minus(on_left).at(locus)?,
                    twice(r.visible_genus.right()).at(locus)?,
                    vis,
                ]
            } else if arc == ArcId::beta(n + i + 1) {
                [on_left, twice(r.visible_genus.left()).at(locus)?, vis]
            } else if arc == sig.invisible_arc(i) {
                [c, twice(r.invisible_genus.right()).at(locus)?, inv]
            } else if arc == sig.invisible_arc(i + 1) {
                [S::zero(), twice(r.invisible_genus.left()).at(locus)?, inv]
            } else {
                return Err(not_adjacent(arc, region));
            };
            sum(terms).at(locus)
        }
        RegionId::GStar => {
            let h = &census.handle;
            let g = sig.g();
            let c = h.c_intersections().at(locus)?;
            let loops = if arc == ArcId::beta(n + g) {
                h.visible_genus
            } else if arc == sig.invisible_arc(g) {
                h.invisible_genus
            } else {
                return Err(not_adjacent(arc, region));
            };
            twice(loops).and_then(|x| x.plus(c)).at(locus)
        }
    }
}

fn violation(locus: Locus, detail: impl Into<String>) -> Diagnostic {
    Diagnostic::error(locus, Code::InvariantViolation, detail)
}

fn check_sided<S: Scalar>(out: &mut Diagnostics, locus: Locus, name: &str, s: &SidedCount<S>) {
    if s.count < S::zero() {
        out.push(Diagnostic::error(
            locus,
            Code::NegativeCount,
            format!("{name} = {} is negative", s.count),
        ));
    } else if s.count.is_zero() != (s.side == Side::None) {
        out.push(violation(
            locus,
            format!("{name} has count {} but side {:?}", s.count, s.side),
        ));
    }
}

fn check_counts<S: Scalar>(out: &mut Diagnostics, locus: Locus, named: &[(&str, S)]) {
    for &(name, value) in named {
        if value < S::zero() {
            out.push(Diagnostic::error(
                locus,
                Code::NegativeCount,
                format!("{name} = {value} is negative"),
            ));
        }
    }
}

/// Twist bookkeeping: `m < c_eff = m + base` and `m(t+1) + base·t = |T|`.
fn check_twist<S: Scalar>(out: &mut Diagnostics, locus: Locus, tw: &Twist<S>) {
    let bad = |detail: String| Diagnostic::error(locus, Code::InconsistentTwist, detail);
    let components = match tw.components() {
        Ok(c) => c,
        Err(_) => return out.push(Diagnostic::overflow(locus)),
    };
    if components.is_zero() {
        if !tw.total.is_zero() || !tw.t.is_zero() {
            out.push(bad(format!(
                "twist {} with t = {} but no twist components",
                tw.total, tw.t
            )));
        }
        return;
    }
    if tw.m >= components {
        out.push(bad(format!(
            "m = {} must be below the {components} twist components",
            tw.m
        )));
        return;
    }
    let realised =
        tw.m.times(tw.t.plus(S::one()).unwrap_or(tw.t))
            .and_then(|a| tw.base.times(tw.t).and_then(|b| a.plus(b)));
    match (realised, tw.total.magnitude()) {
        (Ok(r), Ok(abs)) if r == abs => {}
        (Ok(r), Ok(abs)) => out.push(bad(format!(
            "{} components twisting {} times and {} twisting {} give {r}, not |T| = {abs}",
            tw.m,
            tw.t.plus(S::one()).unwrap_or(tw.t),
            tw.base,
            tw.t
        ))),
        _ => out.push(Diagnostic::overflow(locus)),
    }
}

fn check_genus<S: Scalar>(out: &mut Diagnostics, r: &GenusCensus<S>) {
    let locus = Locus::Region(RegionId::G(r.i));
    let zero = S::zero();
    check_counts(
        out,
        locus,
        &[
            ("c_curves", r.c_curves),
            ("diag_upper", r.diag_upper),
            ("diag_lower", r.diag_lower),
            ("m", r.twist.m),
            ("t", r.twist.t),
            ("base", r.twist.base),
            ("vis_above", r.vis_above),
            ("vis_below", r.vis_below),
            ("invis_above", r.invis_above),
            ("invis_below", r.invis_below),
            ("side_crossing", r.side_crossing.value()),
        ],
    );
    check_sided(out, locus, "visible_genus", &r.visible_genus);
    check_sided(out, locus, "invisible_genus", &r.invisible_genus);
    check_twist(out, locus, &r.twist);
    if out.has_errors() {
        return;
    }
    let derived = || -> Result<_, Overflow> {
        let c = r.c_intersections()?;
        let n = r.left_crossings()?;
        let abs_t = r.twist.total.magnitude()?;
        let diags = r.diag_upper.plus(r.diag_lower)?;
        let budget = c.minus(abs_t)?.max(S::zero());
        let balance = sum([n.doubled()?, twice(r.visible_genus.left())?])?
            .minus(c)?
            .minus(twice(r.visible_genus.right())?)?;
        Ok((c, n, abs_t, diags, budget, balance))
    };
    let Ok((c, n, abs_t, diags, budget, balance)) = derived() else {
        return out.push(Diagnostic::overflow(locus));
    };
    let t = r.twist.total;

    if r.c_curves > zero && c > zero {
        out.push(violation(
            locus,
            format!(
                "{} closed c-curves but c_{} is crossed {c} times",
                r.c_curves, r.i
            ),
        ));
    }
    if r.diag_upper > zero && r.diag_lower > zero {
        out.push(violation(locus, "upper and lower diagonals cannot coexist"));
    }
    if t.is_zero() && !r.twist.components().unwrap_or(zero).is_zero() {
        out.push(violation(
            locus,
            "untwisted strands across c_i must be diagonals",
        ));
    }
    if t > zero && r.diag_upper > zero {
        out.push(violation(locus, "positive twist leaves no upper diagonals"));
    }
    if t < zero && r.diag_lower > zero {
        out.push(violation(locus, "negative twist leaves no lower diagonals"));
    }
    if !t.is_zero() && diags != budget {
        out.push(violation(
            locus,
            format!("{diags} diagonals, but c_i = {c} and |T| = {abs_t} leave {budget}"),
        ));
    }
    if t.is_zero() && c > zero {
        if r.diag_upper > zero && r.vis_below >= c {
            out.push(Diagnostic::error(
                locus,
                Code::AmbiguousDiagonals,
                format!(
                    "{} strands below would also read as {c} lower diagonals",
                    r.vis_below
                ),
            ));
        }
        if r.diag_lower > zero && r.vis_above >= c {
            out.push(Diagnostic::error(
                locus,
                Code::AmbiguousDiagonals,
                format!(
                    "{} strands above would also read as {c} upper diagonals",
                    r.vis_above
                ),
            ));
        }
    }
    if n > c {
        out.push(violation(
            locus,
            format!("{n} strands on the left arc exceed c_i = {c}"),
        ));
    }
    if n < zero {
        out.push(violation(
            locus,
            format!(
                "side crossing {} exceeds c_i = {c}",
                r.side_crossing.value()
            ),
        ));
    }
    if n < diags {
        out.push(violation(
            locus,
            format!("the {diags} diagonals must all end on the left arc, only {n} do"),
        ));
    }
    if r.visible_genus.left() > zero && n != c {
        out.push(violation(
            locus,
            "left genus loops force every crossing strand onto the left arc",
        ));
    }
    if r.visible_genus.right() > zero && !n.is_zero() {
        out.push(violation(
            locus,
            "right genus loops force every crossing strand onto the right arc",
        ));
    }
    if r.invisible_genus.left() > zero && c > zero {
        out.push(violation(
            locus,
            "left invisible genus loops cannot coexist with strands across c_i",
        ));
    }
    let marker_left = matches!(r.side_crossing, SideCrossing::Left(_));
    if marker_left != (balance >= zero) {
        let arc = if marker_left { "left" } else { "right" };
        out.push(violation(
            locus,
            format!("side crossing is recorded on the {arc} arc, which carries fewer endpoints"),
        ));
    }
}

fn check_handle<S: Scalar>(out: &mut Diagnostics, h: &HandleCensus<S>) {
    let locus = Locus::Region(RegionId::GStar);
    check_counts(
        out,
        locus,
        &[
            ("c_curves", h.c_curves),
            ("visible_genus", h.visible_genus),
            ("invisible_genus", h.invisible_genus),
            ("m", h.twist.m),
            ("t", h.twist.t),
            ("base", h.twist.base),
        ],
    );
    check_twist(out, locus, &h.twist);
    if out.has_errors() {
        return;
    }
    if h.c_curves > S::zero() && !h.c_intersections().unwrap_or(S::zero()).is_zero() {
        out.push(violation(
            locus,
            "closed c*-curves cannot coexist with strands across c*",
        ));
    }
}

/// All invariants a census must satisfy to come from a multicurve in
/// canonical position. An empty result means [`encode`] will succeed and
/// decoding its output returns the same census.
pub fn consistency_check<S: Scalar>(census: &MultiCurveCensusOf<S>) -> Diagnostics {
    let sig = census.sig;
    let mut out = Diagnostics::new();
    if census.puncture.len() != sig.n()
        || census.genus.len() + 1 != sig.g()
        || census
            .puncture
            .iter()
            .enumerate()
            .any(|(k, p)| p.i != k + 1)
        || census.genus.iter().enumerate().any(|(k, r)| r.i != k + 1)
    {
        out.push(Diagnostic::error(
            Locus::Vector,
            Code::Malformed,
            format!("census regions do not match the surface {sig}"),
        ));
        return out;
    }
    for p in &census.puncture {
        let locus = Locus::Region(RegionId::U(p.i));
        check_counts(&mut out, locus, &[("above", p.above), ("below", p.below)]);
        check_sided(&mut out, locus, "loops", &p.loops);
    }
    let mut region_errors = Diagnostics::new();
    for r in &census.genus {
        let mut local = Diagnostics::new();
        check_genus(&mut local, r);
        region_errors.extend(local);
    }
    check_handle(&mut region_errors, &census.handle);
    out.extend(region_errors);
    if out.has_errors() {
        return out;
    }

    if census.is_empty() {
        out.push(Diagnostic::error(
            Locus::Vector,
            Code::ZeroVector,
            "the census has no components",
        ));
        return out;
    }
    for arc in sig.cut_arcs() {
        let [a, b] = sig.adjacent_regions(arc).expect("cut arcs have two sides");
        match (
            arc_endpoint_count(census, arc, a),
            arc_endpoint_count(census, arc, b),
        ) {
            (Ok(x), Ok(y)) if x == y => {}
            (Ok(x), Ok(y)) => out.push(Diagnostic::error(
                Locus::Arc(arc),
                Code::ArcImbalance,
                format!("{a} puts {x} endpoints on {arc}, {b} puts {y}"),
            )),
            (Err(e), _) | (_, Err(e)) => out.push(e),
        }
    }
    out
}

fn genus_entries<S: Scalar>(r: &GenusCensus<S>) -> Result<[S; 5], Overflow> {
    // (c_i, gamma_i, xi_{2i-1}, xi_{2i}) plus the shared invisible loop count
    let zero = S::zero();
    let c = r.c_intersections()?;
    let t = r.twist.total;
    let abs_t = t.magnitude()?;
    let l = r.visible_genus.count;
    let gamma = sum([
        r.visible_genus.right(),
        r.invisible_genus.right(),
        abs_t,
        r.c_curves,
    ])?;
    let (xa, xb) = if t.is_zero() {
        (
            sum([r.c_curves.max(r.diag_upper), l, r.vis_above])?,
            sum([r.c_curves.max(r.diag_lower), l, r.vis_below])?,
        )
    } else {
        let n = r.left_crossings()?;
        let neg_t = zero.minus(t)?;
        let above = n.minus(r.diag_lower)?.max(t).minus(zero.max(t))?;
        let below = n.minus(r.diag_upper)?.max(neg_t).minus(zero.max(neg_t))?;
        (
            sum([abs_t, above, l, r.vis_above])?,
            sum([abs_t, below, l, r.vis_below])?,
        )
    };
    Ok([c, gamma, xa, xb, r.invisible_genus.count])
}

/// Coordinates and twist directions of a consistent census.
pub fn encode<S: Scalar>(
    census: &MultiCurveCensusOf<S>,
) -> Result<(CoordVectorOf<S>, TwistSigns), Diagnostics> {
    let check = consistency_check(census);
    if check.has_errors() {
        return Err(check);
    }
    let sig = census.sig;
    let g = sig.g();
    let mut v = CoordVectorOf::zero(sig);
    let fill = |v: &mut CoordVectorOf<S>,
                arc: ArcId,
                locus: Locus,
                x: Result<S, Overflow>|
     -> Checked<()> {
        v.set(arc, x.at(locus)?);
        Ok(())
    };
    let run = |v: &mut CoordVectorOf<S>| -> Checked<()> {
        for p in &census.puncture {
            let i = p.i;
            let locus = Locus::Region(RegionId::U(i));
            fill(
                v,
                ArcId::alpha(2 * i - 1),
                locus,
                p.above.plus(p.loops.count),
            )?;
            fill(v, ArcId::alpha(2 * i), locus, p.below.plus(p.loops.count))?;
        }
        for r in &census.genus {
            let i = r.i;
            let locus = Locus::Region(RegionId::G(i));
            let [c, gamma, xa, xb, lp] = genus_entries(r).at(locus)?;
            v.set(ArcId::c(i), c);
            v.set(ArcId::gamma(i), gamma);
            v.set(ArcId::xi(2 * i - 1), xa);
            v.set(ArcId::xi(2 * i), xb);
            fill(v, ArcId::xi_prime(2 * i - 1), locus, lp.plus(r.invis_above))?;
            fill(v, ArcId::xi_prime(2 * i), locus, lp.plus(r.invis_below))?;
        }
        let h = &census.handle;
        let locus = Locus::Region(RegionId::GStar);
        fill(v, ArcId::c_star(), locus, h.c_intersections())?;
        fill(
            v,
            ArcId::gamma(g),
            locus,
            h.twist
                .total
                .magnitude()
                .and_then(|t| sum([h.visible_genus, h.invisible_genus, t, h.c_curves])),
        )?;
        for arc in sig.cut_arcs() {
            let [region, _] = sig.adjacent_regions(arc).expect("cut arcs have two sides");
            let x = arc_endpoint_count(census, arc, region)?;
            v.set(arc, x);
        }
        Ok(())
    };
    run(&mut v).map_err(Diagnostics::from)?;
    let signs = TwistSigns::new((1..=g).map(|i| Sign::of(census.twist_total(i))).collect());
    Ok((v, signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{PunctureCensus, SideCrossing};
    use crate::surface::SurfaceSig;
    use crate::{decode, CoordVector, MultiCurveCensus};

    const EXAMPLE: &str = "(6,2,4,2,5,1; 8,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)";

    fn example_census() -> MultiCurveCensus {
        let sig = SurfaceSig::new(3, 3).unwrap();
        let mut c = MultiCurveCensus::empty(sig);
        c.puncture[0] = PunctureCensus {
            i: 1,
            above: 5,
            below: 1,
            loops: SidedCount::new(1, Side::Right),
        };
        c.puncture[1] = PunctureCensus {
            i: 2,
            above: 3,
            below: 1,
            loops: SidedCount::new(1, Side::Right),
        };
        c.puncture[2] = PunctureCensus {
            i: 3,
            above: 4,
            below: 0,
            loops: SidedCount::new(1, Side::Left),
        };
        c.genus[0] = GenusCensus {
            i: 1,
            c_curves: 0,
            visible_genus: SidedCount::none(),
            invisible_genus: SidedCount::new(1, Side::Right),
            diag_upper: 0,
            diag_lower: 2,
            twist: Twist {
                total: 1,
                m: 0,
                t: 1,
                base: 1,
            },
            vis_above: 4,
            vis_below: 1,
            invis_above: 3,
            invis_below: 0,
            side_crossing: SideCrossing::Left(2),
        };
        c.genus[1] = GenusCensus {
            i: 2,
            c_curves: 0,
            visible_genus: SidedCount::new(1, Side::Right),
            invisible_genus: SidedCount::none(),
            diag_upper: 0,
            diag_lower: 0,
            twist: Twist {
                total: -4,
                m: 1,
                t: 1,
                base: 2,
            },
            vis_above: 1,
            vis_below: 1,
            invis_above: 0,
            invis_below: 0,
            side_crossing: SideCrossing::Right(3),
        };
        c.handle = HandleCensus {
            c_curves: 2,
            visible_genus: 1,
            invisible_genus: 0,
            twist: Twist::zero(),
        };
        c
    }

    #[test]
    fn example_census_is_consistent() {
        let d = consistency_check(&example_census());
        assert!(d.is_empty(), "{d}");
    }

    #[test]
    fn encode_reproduces_example_vector() {
        let (v, s) = encode(&example_census()).unwrap();
        assert_eq!(
            v,
            CoordVector::parse(EXAMPLE, SurfaceSig::new(3, 3).unwrap()).unwrap()
        );
        assert_eq!(s.to_string(), "+,-,0");
    }

    #[test]
    fn decode_recovers_example_census() {
        let v = CoordVector::parse(EXAMPLE, SurfaceSig::new(3, 3).unwrap()).unwrap();
        let s = TwistSigns::parse("+,-,0", 3).unwrap();
        assert_eq!(decode(&v, &s).unwrap(), example_census());
    }

    #[test]
    fn endpoint_counts_on_example_arcs() {
        let c = example_census();
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta(1), RegionId::U(1)),
            Ok(8)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta(4), RegionId::U(3)),
            Ok(6)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta(4), RegionId::G(1)),
            Ok(6)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta(6), RegionId::GStar),
            Ok(2)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta_prime(5), RegionId::G(1)),
            Ok(3)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta_prime(6), RegionId::GStar),
            Ok(0)
        );
        assert_eq!(
            arc_endpoint_count(&c, ArcId::beta(1), RegionId::G(1)),
            Ok(8)
        );
        let e = arc_endpoint_count(&c, ArcId::beta(1), RegionId::G(2)).unwrap_err();
        assert_eq!(e.code, Code::Malformed);
    }

    #[test]
    fn imbalance_is_reported() {
        let mut c = example_census();
        c.puncture[0].above += 1;
        let d = consistency_check(&c);
        assert!(d.contains(Code::ArcImbalance), "{d}");
    }

    #[test]
    fn invariant_violations_are_reported() {
        let mut c = example_census();
        c.genus[0].diag_upper = 1;
        assert!(consistency_check(&c).has_errors());

        let mut c = example_census();
        c.genus[1].twist.m = 3;
        assert!(consistency_check(&c).contains(Code::InconsistentTwist));

        let mut c = example_census();
        c.handle.visible_genus = -1;
        assert!(consistency_check(&c).contains(Code::NegativeCount));

        let mut c = example_census();
        c.genus[0].visible_genus.side = Side::Left;
        assert!(consistency_check(&c).contains(Code::InvariantViolation));
    }

    #[test]
    fn ambiguous_untwisted_diagonals_are_rejected() {
        let sig = SurfaceSig::new(1, 2).unwrap();
        let mut c = MultiCurveCensus::empty(sig);
        c.genus[0].diag_upper = 1;
        c.genus[0].vis_below = 1;
        c.genus[0].side_crossing = SideCrossing::Left(1);
        let d = consistency_check(&c);
        assert!(d.contains(Code::AmbiguousDiagonals), "{d}");
    }

    #[test]
    fn empty_census_is_rejected() {
        let sig = SurfaceSig::new(2, 2).unwrap();
        assert_eq!(
            consistency_check(&MultiCurveCensus::empty(sig)).codes(),
            vec![Code::ZeroVector]
        );
    }
}
