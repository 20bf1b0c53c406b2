//! Random consistent censuses, exhaustive small vectors, and the round-trip
//! fuzzer built on them.
//!
//! Randomness comes from `xoshiro256**` seeded through `seed_from_u64`; fuzz
//! trials get their own seeds from a SplitMix64 stream over the run seed, so
//! reports are identical whether trials run in parallel or not.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{GenusCensus, HandleCensus, Side, SideCrossing, SidedCount, Twist};
use crate::coords::{validate_basic, TwistSigns};
use crate::decode::decode;
use crate::encode::{consistency_check, encode};
use crate::surface::SurfaceSig;
use crate::{CoordVector, MultiCurveCensus};

/// Attempts made by [`random_census`] before giving up.
pub const REJECTION_BUDGET: usize = 1000;

/// Keeps every generated count far from `i64` overflow.
pub const MAX_COUNT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub sig: SurfaceSig,
    /// Upper bound for each sampled component type.
    pub max_count: u64,
    pub trials: usize,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(sig: SurfaceSig, trials: usize, seed: u64) -> Self {
        Self {
            sig,
            max_count: 4,
            trials,
            seed,
        }
    }

    pub fn with_max_count(self, max_count: u64) -> Self {
        Self { max_count, ..self }
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.trials == 0 {
            return Err(GenError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.max_count > MAX_COUNT_LIMIT {
            return Err(GenError::InvalidConfig(format!(
                "max_count must not exceed {MAX_COUNT_LIMIT}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("no non-empty census found in {attempts} attempts")]
    Infeasible { attempts: usize },
}

fn count(rng: &mut impl Rng, max: i64) -> i64 {
    rng.random_range(0..=max)
}

fn sided(rng: &mut impl Rng, max: i64, sides: &[Side]) -> SidedCount<i64> {
    let c = count(rng, max);
    if c == 0 || sides.is_empty() {
        return SidedCount::none();
    }
    SidedCount::new(c, sides[rng.random_range(0..sides.len())])
}

fn split(rng: &mut impl Rng, total: i64) -> (i64, i64) {
    let a = rng.random_range(0..=total);
    (a, total - a)
}

/// Twist split with `|T| = m(t+1) + base·t`, drawn with at least `min_t`.
fn twist(rng: &mut impl Rng, components: i64, min_t: i64, max: i64) -> Twist<i64> {
    let m = rng.random_range(0..components);
    let t = rng.random_range(min_t..=max.max(min_t));
    let base = components - m;
    let abs = m * (t + 1) + base * t;
    let total = if abs != 0 && rng.random_bool(0.5) {
        -abs
    } else {
        abs
    };
    Twist { total, m, t, base }
}

/// Everything in `G_i` except the through strands, with the endpoint
/// excess each side contributes.
fn sample_genus(rng: &mut impl Rng, i: usize, max: i64) -> GenusCensus<i64> {
    let mut r = GenusCensus {
        i,
        ..Default::default()
    };
    let case = if max == 0 { 0 } else { rng.random_range(0..3) };
    let n;
    match case {
        0 => {
            r.c_curves = count(rng, max);
            r.visible_genus = sided(rng, max, &[Side::Left, Side::Right]);
            r.invisible_genus = sided(rng, max, &[Side::Left, Side::Right]);
            n = 0;
        }
        1 => {
            // untwisted: every strand across c_i is a diagonal of one kind
            let c = rng.random_range(1..=max);
            if rng.random_bool(0.5) {
                r.diag_upper = c;
            } else {
                r.diag_lower = c;
            }
            r.visible_genus = sided(rng, max, &[Side::Left]);
            r.invisible_genus = sided(rng, max, &[Side::Right]);
            n = c;
        }
        _ => {
            let components = rng.random_range(1..=max);
            let with_diagonals = rng.random_bool(0.5);
            r.twist = if with_diagonals {
                // diagonals leave exactly one twist per component
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                Twist {
                    total: sign * components,
                    m: 0,
                    t: 1,
                    base: components,
                }
            } else {
                twist(rng, components, 1, max)
            };
            let diags = if with_diagonals { count(rng, max) } else { 0 };
            if r.twist.total > 0 {
                r.diag_lower = diags;
            } else {
                r.diag_upper = diags;
            }
            let c = components + diags;
            let sides: &[Side] = if diags > 0 {
                &[Side::Left]
            } else {
                &[Side::Left, Side::Right]
            };
            r.visible_genus = sided(rng, max, sides);
            r.invisible_genus = sided(rng, max, &[Side::Right]);
            n = match r.visible_genus.side {
                Side::Left => c,
                Side::Right => 0,
                Side::None => rng.random_range(diags..=c),
            };
        }
    }
    let c = r.diag_upper + r.diag_lower + r.twist.m + r.twist.base;
    let balance = 2 * n - c + 2 * r.visible_genus.left() - 2 * r.visible_genus.right();
    r.side_crossing = if balance >= 0 {
        SideCrossing::Left(n)
    } else {
        SideCrossing::Right(c - n)
    };
    r
}

fn sample_handle(rng: &mut impl Rng, max: i64) -> HandleCensus<i64> {
    let mut h = HandleCensus::default();
    if max > 0 && rng.random_bool(0.5) {
        let components = rng.random_range(1..=max);
        h.twist = twist(rng, components, 0, max);
    } else {
        h.c_curves = count(rng, max);
    }
    h
}

/// One ring segment: endpoints contributed on the arc walked in from and on
/// the arc walked out to, besides the through strands.
struct Segment {
    extra_in: i64,
    extra_out: i64,
}

fn attempt(rng: &mut impl Rng, sig: SurfaceSig, max: i64) -> MultiCurveCensus {
    let (n, g) = (sig.n(), sig.g());
    let mut census = MultiCurveCensus::empty(sig);
    for p in census.puncture.iter_mut() {
        p.loops = sided(rng, max, &[Side::Left, Side::Right]);
    }
    for i in 1..g {
        census.genus[i - 1] = sample_genus(rng, i, max);
    }
    census.handle = sample_handle(rng, max);

    // Walk the ring of cut arcs from beta_{n+g} back to beta_1, then along
    // the invisible side up to beta'_{n+g}.
    let mut segments = Vec::with_capacity(n + 2 * (g - 1));
    for r in census.genus.iter().rev() {
        let c = r.c_intersections().expect("small counts");
        let on_left = r.left_crossings().expect("small counts");
        segments.push(Segment {
            extra_in: on_left + 2 * r.visible_genus.left(),
            extra_out: c - on_left + 2 * r.visible_genus.right(),
        });
    }
    for p in census.puncture.iter().rev() {
        segments.push(Segment {
            extra_in: 2 * p.loops.left(),
            extra_out: 2 * p.loops.right(),
        });
    }
    for r in &census.genus {
        let c = r.c_intersections().expect("small counts");
        segments.push(Segment {
            extra_in: c + 2 * r.invisible_genus.right(),
            extra_out: 2 * r.invisible_genus.left(),
        });
    }
    let drift: i64 = segments.iter().map(|s| s.extra_out - s.extra_in).sum();
    debug_assert!(drift % 2 == 0);

    let c_star = census.handle.c_intersections().expect("small counts");
    let mut l = count(rng, max);
    let mut l_inv = l + drift / 2;
    if l_inv < 0 {
        l += -l_inv;
        l_inv = 0;
    }
    // Lowest through count for the current level; raising both handle loop
    // counts by one raises every through count by two.
    let mut level = 2 * l + c_star;
    let mut lowest = i64::MAX;
    for s in &segments {
        lowest = lowest.min(level - s.extra_in);
        level += s.extra_out - s.extra_in;
    }
    if lowest < 0 {
        let lift = (-lowest + 1) / 2;
        l += lift;
        l_inv += lift;
    }
    census.handle.visible_genus = l;
    census.handle.invisible_genus = l_inv;

    let mut level = 2 * l + c_star;
    let mut through = segments.iter().map(|s| {
        let t = level - s.extra_in;
        level += s.extra_out - s.extra_in;
        t
    });
    let vis: Vec<i64> = (1..g).map(|_| through.next().expect("segment")).collect();
    let punct: Vec<i64> = (1..=n).map(|_| through.next().expect("segment")).collect();
    let inv: Vec<i64> = (1..g).map(|_| through.next().expect("segment")).collect();

    for (p, &t) in census.puncture.iter_mut().rev().zip(&punct) {
        (p.above, p.below) = split(rng, t);
    }
    for (r, &t) in census.genus.iter_mut().rev().zip(&vis) {
        let c = r.diag_upper + r.diag_lower + r.twist.m + r.twist.base;
        if r.twist.total == 0 && c > 0 {
            // keep the untwisted diagonals readable as only one kind
            let capped = rng.random_range(0..=t.min(c - 1));
            if r.diag_upper > 0 {
                (r.vis_below, r.vis_above) = (capped, t - capped);
            } else {
                (r.vis_above, r.vis_below) = (capped, t - capped);
            }
        } else {
            (r.vis_above, r.vis_below) = split(rng, t);
        }
    }
    for (r, &t) in census.genus.iter_mut().zip(&inv) {
        (r.invis_above, r.invis_below) = split(rng, t);
    }
    census
}

/// A random non-empty census satisfying every consistency invariant.
pub fn random_census(cfg: &GenConfig) -> Result<MultiCurveCensus, GenError> {
    cfg.validate()?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(cfg.seed);
    let max = cfg.max_count as i64;
    for _ in 0..REJECTION_BUDGET {
        let census = attempt(&mut rng, cfg.sig, max);
        if !census.is_empty() {
            return Ok(census);
        }
    }
    Err(GenError::Infeasible {
        attempts: REJECTION_BUDGET,
    })
}

/// Every vector with entries in `[0, bound]` together with every sign
/// assignment under which it decodes.
pub fn enumerate_small_vectors(
    sig: SurfaceSig,
    bound: u64,
) -> impl Iterator<Item = (CoordVector, TwistSigns)> {
    let dim = sig.coord_dimension();
    let bound = bound.min(i64::MAX as u64) as i64;
    let mut digits = vec![0i64; dim];
    let mut done = bound == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        // odometer step; the all-zero start is skipped as the zero vector
        let mut k = 0;
        loop {
            if k == dim {
                done = true;
                return None;
            }
            if digits[k] < bound {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        Some(
            CoordVector::new(sig, digits.clone())
                .expect("non-negative entries of the right length"),
        )
    })
    .filter(|v| !validate_basic(v).has_errors())
    .flat_map(move |v| {
        TwistSigns::all(sig.g())
            .filter(|s| decode(&v, s).is_ok())
            .map(|s| (v.clone(), s))
            .collect::<Vec<_>>()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub seed: u64,
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Seed of every trial of a fuzz run.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut stream = SplitMix64::seed_from_u64(seed);
    (0..trials).map(|_| stream.next_u64()).collect()
}

fn fuzz_trial(cfg: &GenConfig, seed: u64) -> Result<Option<FuzzFailure>, GenError> {
    let fail = |stage: &str, detail: String| {
        Ok(Some(FuzzFailure {
            seed,
            stage: stage.into(),
            detail,
        }))
    };
    let census = random_census(&GenConfig { seed, ..*cfg })?;
    let check = consistency_check(&census);
    if check.has_errors() {
        return fail("generate", check.to_string());
    }
    let (v, signs) = match encode(&census) {
        Ok(x) => x,
        Err(d) => return fail("encode", d.to_string()),
    };
    let back = match decode(&v, &signs) {
        Ok(c) => c,
        Err(d) => return fail("decode", format!("{v} with signs {signs}: {d}")),
    };
    if back != census {
        return fail(
            "compare",
            format!("{v} with signs {signs} decodes to a different census"),
        );
    }
    Ok(None)
}

/// Generates `cfg.trials` censuses and checks that each survives
/// encode then decode unchanged.
pub fn roundtrip_fuzz(cfg: &GenConfig) -> Result<FuzzReport, GenError> {
    cfg.validate()?;
    let outcomes: Vec<_> = trial_seeds(cfg.seed, cfg.trials)
        .into_par_iter()
        .map(|s| fuzz_trial(cfg, s))
        .collect();
    let mut failures = Vec::new();
    for outcome in outcomes {
        if let Some(f) = outcome? {
            failures.push(f);
        }
    }
    Ok(FuzzReport {
        trials: cfg.trials,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, g: usize) -> SurfaceSig {
        SurfaceSig::new(n, g).unwrap()
    }

    #[test]
    fn zero_max_count_is_infeasible() {
        let cfg = GenConfig::new(sig(1, 1), 1, 7).with_max_count(0);
        assert_eq!(
            random_census(&cfg),
            Err(GenError::Infeasible {
                attempts: REJECTION_BUDGET
            })
        );
        assert!(matches!(
            roundtrip_fuzz(&cfg),
            Err(GenError::Infeasible { .. })
        ));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let cfg = GenConfig::new(sig(1, 1), 0, 1);
        assert!(matches!(
            roundtrip_fuzz(&cfg),
            Err(GenError::InvalidConfig(_))
        ));
        let cfg = GenConfig::new(sig(1, 1), 1, 1).with_max_count(MAX_COUNT_LIMIT + 1);
        assert!(matches!(
            random_census(&cfg),
            Err(GenError::InvalidConfig(_))
        ));
    }

    #[test]
    fn generated_censuses_are_consistent() {
        for (n, g) in [(1, 1), (2, 1), (1, 2), (3, 2), (3, 3), (2, 5)] {
            for seed in 0..200 {
                let c = random_census(&GenConfig::new(sig(n, g), 1, seed)).unwrap();
                let d = consistency_check(&c);
                assert!(d.is_empty(), "({n},{g}) seed {seed}: {d}");
            }
        }
    }

    #[test]
    fn same_seed_same_census() {
        let cfg = GenConfig::new(sig(3, 3), 1, 99);
        assert_eq!(random_census(&cfg), random_census(&cfg));
    }

    #[test]
    fn trial_seeds_are_stable() {
        assert_eq!(trial_seeds(5, 3), trial_seeds(5, 4)[..3].to_vec());
        assert_ne!(trial_seeds(5, 2), trial_seeds(6, 2));
    }

    #[test]
    fn enumeration_excludes_the_zero_vector() {
        assert_eq!(enumerate_small_vectors(sig(1, 1), 0).count(), 0);
        assert!(enumerate_small_vectors(sig(1, 1), 1).all(|(v, _)| !v.is_zero()));
    }

    #[test]
    fn fuzz_report_json_shape() {
        let report = roundtrip_fuzz(&GenConfig::new(sig(1, 1), 20, 42)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["trials"], 20);
        assert!(json["failures"].as_array().unwrap().is_empty());
    }
}
