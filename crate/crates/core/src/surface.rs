//! The surface `S_{n,g}` and the arc system drawn on it.
//!
//! The coordinate vector lists intersection numbers with arcs in the group
//! order `α; β; β′; ξ; ξ′; γ; c; c*`. Arc indices are 1-based within their
//! group, flat indices into the vector are 0-based.
//!
//! The β and β′ arcs cut the surface into regions that sit on a single ring:
//!
//! ```text
//! β_1 ─ U_1 ─ β_2 ─ … ─ U_n ─ β_{n+1} ─ G_1 ─ β_{n+2} ─ … ─ G_{g-1} ─ β_{n+g} ─┐
//!  │                       (visible side)                                      G*
//!  └── G_1 ─ β′_{n+2} ─ … ─ G_{g-1} ─ β′_{n+g} ────────────────────────────────┘
//!                          (invisible side)
//! ```
//!
//! There is no `β′_{n+1}`: the invisible right side of `G_1` (and the invisible
//! side of `G*` when `g = 1`) is the arc `β_1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct SurfaceSig {
    n: usize,
    g: usize,
}

impl SurfaceSig {
    pub fn new(n: usize, g: usize) -> Result<Self, SurfaceError> {
        if n == 0 || g == 0 {
            return Err(SurfaceError::InvalidSignature { n, g });
        }
        Ok(Self { n, g })
    }

    /// Number of punctures.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Genus.
    pub fn g(&self) -> usize {
        self.g
    }

    /// `3n + 8g − 5`.
    pub fn coord_dimension(&self) -> usize {
        3 * self.n + 8 * self.g - 5
    }

    /// Valid 1-based indices of an arc group.
    pub fn group_indices(&self, group: ArcGroup) -> std::ops::RangeInclusive<usize> {
        let (n, g) = (self.n, self.g);
        match group {
            ArcGroup::Alpha => 1..=2 * n,
            ArcGroup::Beta => 1..=n + g,
            ArcGroup::BetaPrime => n + 2..=n + g,
            ArcGroup::Xi | ArcGroup::XiPrime => 1..=2 * g - 2,
            ArcGroup::Gamma => 1..=g,
            ArcGroup::C => 1..=g - 1,
            ArcGroup::CStar => 1..=1,
        }
    }

    pub fn group_len(&self, group: ArcGroup) -> usize {
        self.group_indices(group).count()
    }

    fn group_offset(&self, group: ArcGroup) -> usize {
        ArcGroup::ALL
            .iter()
            .take_while(|&&g| g != group)
            .map(|&g| self.group_len(g))
            .sum()
    }

    pub fn contains(&self, arc: ArcId) -> bool {
        self.group_indices(arc.group).contains(&arc.index)
    }

    /// Position of `arc` in the flat coordinate vector.
    pub fn flat_index(&self, arc: ArcId) -> Option<usize> {
        if !self.contains(arc) {
            return None;
        }
        let first = *self.group_indices(arc.group).start();
        Some(self.group_offset(arc.group) + arc.index - first)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn arc_at(&self, flat: usize) -> Option<ArcId> {
        let mut offset = 0;
        for group in ArcGroup::ALL {
            let len = self.group_len(group);
            if flat < offset + len {
                let first = *self.group_indices(group).start();
                return Some(ArcId::new(group, first + flat - offset));
            }
            offset += len;
        }
        None
    }

    /// Every arc paired with its flat index, in vector order.
    pub fn layout(&self) -> Vec<(ArcId, usize)> {
        ArcGroup::ALL
            .iter()
            .flat_map(|&group| self.group_indices(group).map(move |i| ArcId::new(group, i)))
            .enumerate()
            .map(|(flat, arc)| (arc, flat))
            .collect()
    }

    /// The arc playing the role of `β′_{n+i}` for `1 ≤ i ≤ g`; this is `β_1`
    /// when `i = 1`.
    pub fn invisible_arc(&self, i: usize) -> ArcId {
        debug_assert!((1..=self.g).contains(&i));
        if i == 1 {
            ArcId::beta(1)
        } else {
            ArcId::beta_prime(self.n + i)
        }
    }

    /// Regions in ring order of their visible side, with bounding arcs.
    ///
    /// `G_i` is bounded by `β_{n+i}, β′_{n+i}, β_{n+i+1}, β′_{n+i+1}` (right
    /// visible, right invisible, left visible, left invisible).
    pub fn regions(&self) -> Vec<Region> {
        let n = self.n;
        let mut out = Vec::with_capacity(n + self.g);
        for i in 1..=n {
            out.push(Region {
                id: RegionId::U(i),
                bounds: vec![ArcId::beta(i), ArcId::beta(i + 1)],
            });
        }
        for i in 1..self.g {
            out.push(Region {
                id: RegionId::G(i),
                bounds: vec![
                    ArcId::beta(n + i),
                    self.invisible_arc(i),
                    ArcId::beta(n + i + 1),
                    self.invisible_arc(i + 1),
                ],
            });
        }
        out.push(Region {
            id: RegionId::GStar,
            bounds: vec![ArcId::beta(n + self.g), self.invisible_arc(self.g)],
        });
        out
    }

    /// The β and β′ arcs, each of which separates exactly two region faces.
    pub fn cut_arcs(&self) -> Vec<ArcId> {
        self.group_indices(ArcGroup::Beta)
            .map(ArcId::beta)
            .chain(
                self.group_indices(ArcGroup::BetaPrime)
                    .map(ArcId::beta_prime),
            )
            .collect()
    }

    /// The two regions on either side of a β or β′ arc.
    pub fn adjacent_regions(&self, arc: ArcId) -> Option<[RegionId; 2]> {
        if !self.contains(arc) {
            return None;
        }
        let (n, g) = (self.n, self.g);
        let genus_or_handle = |i: usize| {
            if i < g {
                RegionId::G(i)
            } else {
                RegionId::GStar
            }
        };
        match arc.group {
            ArcGroup::Beta if arc.index == 1 => Some([RegionId::U(1), genus_or_handle(1)]),
            ArcGroup::Beta if arc.index <= n => {
                Some([RegionId::U(arc.index - 1), RegionId::U(arc.index)])
            }
            ArcGroup::Beta if arc.index == n + 1 => Some([RegionId::U(n), genus_or_handle(1)]),
            ArcGroup::Beta | ArcGroup::BetaPrime => {
                let i = arc.index - n;
                Some([RegionId::G(i - 1), genus_or_handle(i)])
            }
            _ => None,
        }
    }
}

impl TryFrom<(usize, usize)> for SurfaceSig {
    type Error = SurfaceError;

    fn try_from((n, g): (usize, usize)) -> Result<Self, Self::Error> {
        Self::new(n, g)
    }
}

impl From<SurfaceSig> for (usize, usize) {
    fn from(sig: SurfaceSig) -> Self {
        (sig.n, sig.g)
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.n, self.g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcGroup {
    Alpha,
    Beta,
    BetaPrime,
    Xi,
    XiPrime,
    Gamma,
    C,
    CStar,
}

impl ArcGroup {
    /// Vector order.
    pub const ALL: [ArcGroup; 8] = [
        ArcGroup::Alpha,
        ArcGroup::Beta,
        ArcGroup::BetaPrime,
        ArcGroup::Xi,
        ArcGroup::XiPrime,
        ArcGroup::Gamma,
        ArcGroup::C,
        ArcGroup::CStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArcGroup::Alpha => "alpha",
            ArcGroup::Beta => "beta",
            ArcGroup::BetaPrime => "beta'",
            ArcGroup::Xi => "xi",
            ArcGroup::XiPrime => "xi'",
            ArcGroup::Gamma => "gamma",
            ArcGroup::C => "c",
            ArcGroup::CStar => "c*",
        }
    }
}

impl fmt::Display for ArcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An arc or closed curve of the system, `index` 1-based within its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcId {
    pub group: ArcGroup,
    pub index: usize,
}

impl ArcId {
    pub const fn new(group: ArcGroup, index: usize) -> Self {
        Self { group, index }
    }

    pub const fn alpha(i: usize) -> Self {
        Self::new(ArcGroup::Alpha, i)
    }

    pub const fn beta(i: usize) -> Self {
        Self::new(ArcGroup::Beta, i)
    }

    pub const fn beta_prime(i: usize) -> Self {
        Self::new(ArcGroup::BetaPrime, i)
    }

    pub const fn xi(i: usize) -> Self {
        Self::new(ArcGroup::Xi, i)
    }

    pub const fn xi_prime(i: usize) -> Self {
        Self::new(ArcGroup::XiPrime, i)
    }

    pub const fn gamma(i: usize) -> Self {
        Self::new(ArcGroup::Gamma, i)
    }

    pub const fn c(i: usize) -> Self {
        Self::new(ArcGroup::C, i)
    }

    pub const fn c_star() -> Self {
        Self::new(ArcGroup::CStar, 1)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            ArcGroup::CStar => f.write_str("c*"),
            group => write!(f, "{}_{}", group.name(), self.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionId {
    /// Puncture region `U_i`, `1 ≤ i ≤ n`.
    U(usize),
    /// Inner genus region `G_i`, `1 ≤ i ≤ g − 1`.
    G(usize),
    /// The last handle, next to the boundary.
    GStar,
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionId::U(i) => write!(f, "U_{i}"),
            RegionId::G(i) => write!(f, "G_{i}"),
            RegionId::GStar => f.write_str("G*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    pub bounds: Vec<ArcId>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, g: usize) -> SurfaceSig {
        SurfaceSig::new(n, g).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(sig(3, 3).coord_dimension(), 28);
        assert_eq!(sig(1, 1).coord_dimension(), 6);
        assert_eq!(sig(2, 1).coord_dimension(), 9);
    }

    #[test]
    fn rejects_degenerate_signature() {
        assert!(SurfaceSig::new(0, 1).is_err());
        assert!(SurfaceSig::new(1, 0).is_err());
    }

    #[test]
    fn group_sizes_sum_to_dimension() {
        for n in 1..=8 {
            for g in 1..=8 {
                let s = sig(n, g);
                let total: usize = ArcGroup::ALL.iter().map(|&gr| s.group_len(gr)).sum();
                let expected =
                    2 * n + (n + g) + (g - 1) + (2 * g - 2) + (2 * g - 2) + g + (g - 1) + 1;
                assert_eq!(total, s.coord_dimension());
                assert_eq!(total, expected);
            }
        }
    }

    #[test]
    fn layout_examples() {
        let s = sig(3, 3);
        let layout = s.layout();
        assert_eq!(layout[0], (ArcId::alpha(1), 0));
        assert_eq!(layout[27], (ArcId::c_star(), 27));
        assert_eq!(layout[12], (ArcId::beta_prime(5), 12));
        assert_eq!(layout.len(), 28);
    }

    #[test]
    fn layout_is_a_bijection() {
        for n in 1..=5 {
            for g in 1..=5 {
                let s = sig(n, g);
                for (arc, flat) in s.layout() {
                    assert_eq!(s.flat_index(arc), Some(flat));
                    assert_eq!(s.arc_at(flat), Some(arc));
                }
                assert_eq!(s.arc_at(s.coord_dimension()), None);
            }
        }
    }

    #[test]
    fn genus_one_has_empty_groups() {
        let s = sig(2, 1);
        for group in [
            ArcGroup::BetaPrime,
            ArcGroup::Xi,
            ArcGroup::XiPrime,
            ArcGroup::C,
        ] {
            assert_eq!(s.group_len(group), 0, "{group}");
        }
        assert_eq!(s.flat_index(ArcId::beta_prime(3)), None);
    }

    #[test]
    fn region_lists() {
        let ids = |s: SurfaceSig| s.regions().into_iter().map(|r| r.id).collect::<Vec<_>>();
        use RegionId::*;
        assert_eq!(ids(sig(3, 3)), vec![U(1), U(2), U(3), G(1), G(2), GStar]);
        assert_eq!(ids(sig(1, 1)), vec![U(1), GStar]);
        assert_eq!(ids(sig(2, 2)), vec![U(1), U(2), G(1), GStar]);
    }

    #[test]
    fn region_bounds() {
        let s = sig(3, 3);
        let regions = s.regions();
        assert_eq!(regions[0].bounds, vec![ArcId::beta(1), ArcId::beta(2)]);
        assert_eq!(
            regions[3].bounds,
            vec![
                ArcId::beta(4),
                ArcId::beta(1),
                ArcId::beta(5),
                ArcId::beta_prime(5)
            ]
        );
        assert_eq!(
            regions[4].bounds,
            vec![
                ArcId::beta(5),
                ArcId::beta_prime(5),
                ArcId::beta(6),
                ArcId::beta_prime(6)
            ]
        );
        assert_eq!(
            regions[5].bounds,
            vec![ArcId::beta(6), ArcId::beta_prime(6)]
        );
        let s = sig(2, 1);
        assert_eq!(s.regions()[2].bounds, vec![ArcId::beta(3), ArcId::beta(1)]);
    }

    #[test]
    fn every_cut_arc_bounds_both_of_its_neighbours() {
        for n in 1..=4 {
            for g in 1..=4 {
                let s = sig(n, g);
                let regions = s.regions();
                let arcs = s.cut_arcs();
                assert_eq!(arcs.len(), n + 2 * g - 1);
                for arc in arcs {
                    let [a, b] = s.adjacent_regions(arc).unwrap();
                    assert_ne!(a, b);
                    for id in [a, b] {
                        let region = regions.iter().find(|r| r.id == id).unwrap();
                        assert!(region.bounds.contains(&arc), "{arc} not on {id}");
                    }
                }
            }
        }
    }
}
