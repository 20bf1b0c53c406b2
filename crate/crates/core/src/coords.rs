//! Coordinate vectors, twist signs, their text and JSON forms, and the parity
//! checks that precede decoding.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{AtLocus, Code, Diagnostic, Diagnostics, Locus};
use crate::error::ParseError;
use crate::scalar::{Exact, Scalar};
use crate::surface::{ArcGroup, ArcId, RegionId, SurfaceSig};

/// Intersection numbers of a multicurve with every arc of the system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordVectorOf<S> {
    sig: SurfaceSig,
    values: Vec<S>,
}

impl<S: Scalar> CoordVectorOf<S> {
    /// Builds a vector from entries in layout order.
    pub fn new(sig: SurfaceSig, values: Vec<S>) -> Result<Self, ParseError> {
        let expected = sig.coord_dimension();
        if values.len() != expected {
            return Err(ParseError::WrongLength {
                expected,
                found: values.len(),
            });
        }
        if let Some(flat) = values.iter().position(|x| *x < S::zero()) {
            let position = sig.arc_at(flat).expect("index within dimension");
            return Err(ParseError::NegativeEntry { position });
        }
        Ok(Self { sig, values })
    }

    pub fn zero(sig: SurfaceSig) -> Self {
        Self {
            sig,
            values: vec![S::zero(); sig.coord_dimension()],
        }
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// Entry for `arc`; panics if the arc does not exist on this surface.
    pub fn get(&self, arc: ArcId) -> S {
        match self.sig.flat_index(arc) {
            Some(k) => self.values[k],
            None => panic!("{arc} is not an arc of {}", self.sig),
        }
    }

    pub(crate) fn set(&mut self, arc: ArcId, value: S) {
        let k = self.sig.flat_index(arc).expect("arc on surface");
        self.values[k] = value;
    }

    /// Entries of one group, in index order.
    pub fn group(&self, group: ArcGroup) -> &[S] {
        let start = self
            .sig
            .group_indices(group)
            .next()
            .and_then(|i| self.sig.flat_index(ArcId::new(group, i)));
        match start {
            Some(k) => &self.values[k..k + self.sig.group_len(group)],
            None => &[],
        }
    }

    pub fn alpha(&self, i: usize) -> S {
        self.get(ArcId::alpha(i))
    }

    pub fn beta(&self, i: usize) -> S {
        self.get(ArcId::beta(i))
    }

    pub fn beta_prime(&self, i: usize) -> S {
        self.get(ArcId::beta_prime(i))
    }

    pub fn xi(&self, i: usize) -> S {
        self.get(ArcId::xi(i))
    }

    pub fn xi_prime(&self, i: usize) -> S {
        self.get(ArcId::xi_prime(i))
    }

    pub fn gamma(&self, i: usize) -> S {
        self.get(ArcId::gamma(i))
    }

    pub fn c(&self, i: usize) -> S {
        self.get(ArcId::c(i))
    }

    pub fn c_star(&self) -> S {
        self.get(ArcId::c_star())
    }

    /// Value on the arc acting as `β′_{n+i}` (`β_1` for `i = 1`).
    pub fn invisible(&self, i: usize) -> S {
        self.get(self.sig.invisible_arc(i))
    }

    /// Entry-wise image under `f`; used for scaling checks.
    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Self {
            sig: self.sig,
            values: self.values.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Parses the bracketed text form, e.g.
    /// `(6,2,4,2,5,1; 8,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)`.
    ///
    /// Groups that are empty on this surface are omitted, so a genus-one
    /// vector has four groups: `α; β; γ; c*`.
    pub fn parse(text: &str, sig: SurfaceSig) -> Result<Self, ParseError> {
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            body = inner;
        }
        let groups: Vec<ArcGroup> = ArcGroup::ALL
            .into_iter()
            .filter(|&g| sig.group_len(g) > 0)
            .collect();
        let chunks: Vec<&str> = body.split(';').collect();
        if chunks.len() != groups.len() {
            return Err(ParseError::WrongGroupCount {
                expected: groups.len(),
                found: chunks.len(),
            });
        }
        let mut values = Vec::with_capacity(sig.coord_dimension());
        for (&group, chunk) in groups.iter().zip(&chunks) {
            let tokens: Vec<&str> = chunk.split(',').map(str::trim).collect();
            let expected = sig.group_len(group);
            if tokens.len() != expected {
                return Err(ParseError::WrongGroupLength {
                    group,
                    expected,
                    found: tokens.len(),
                });
            }
            for (token, index) in tokens.iter().zip(sig.group_indices(group)) {
                let position = ArcId::new(group, index);
                let value: S = token.parse().map_err(|_| ParseError::NonInteger {
                    position,
                    token: (*token).to_string(),
                })?;
                if value < S::zero() {
                    return Err(ParseError::NegativeEntry { position });
                }
                values.push(value);
            }
        }
        Ok(Self { sig, values })
    }
}

impl<S: Scalar> fmt::Display for CoordVectorOf<S> {
    /// Canonical text form: groups separated by `"; "`, entries by `","`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = ArcGroup::ALL
            .into_iter()
            .filter(|&g| self.sig.group_len(g) > 0)
            .map(|g| {
                self.group(g)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "({})", groups.join("; "))
    }
}

/// Canonical text form of a vector.
pub fn serialize_vector<S: Scalar>(v: &CoordVectorOf<S>) -> String {
    v.to_string()
}

/// Parses the text form of a vector on `sig`.
pub fn parse_vector<S: Scalar>(
    text: &str,
    sig: SurfaceSig,
) -> Result<CoordVectorOf<S>, ParseError> {
    CoordVectorOf::parse(text, sig)
}

/// Direction of the twists in one genus region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Positive, Sign::Negative, Sign::Zero];

    pub fn of<S: Scalar>(x: S) -> Sign {
        if x > S::zero() {
            Sign::Positive
        } else if x < S::zero() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(x: i8) -> Option<Sign> {
        match x {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    /// `magnitude` carrying this sign.
    pub fn apply<S: Scalar>(self, magnitude: S) -> S {
        match self {
            Sign::Negative => S::zero() - magnitude,
            Sign::Zero => S::zero(),
            Sign::Positive => magnitude,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

impl FromStr for Sign {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Positive),
            "-" | "-1" => Ok(Sign::Negative),
            "0" => Ok(Sign::Zero),
            other => Err(ParseError::BadSign {
                token: other.to_string(),
            }),
        }
    }
}

/// One twist direction per genus region: entries `0..g-1` for `G_1..G_{g-1}`,
/// the last for `G*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistSigns(Vec<Sign>);

impl TwistSigns {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn uniform(g: usize, sign: Sign) -> Self {
        Self(vec![sign; g])
    }

    /// Parses `"+,-,0"` and checks the length against the genus.
    pub fn parse(text: &str, g: usize) -> Result<Self, ParseError> {
        let signs: Vec<Sign> = text.split(',').map(str::parse).collect::<Result<_, _>>()?;
        if signs.len() != g {
            return Err(ParseError::WrongSignCount {
                expected: g,
                found: signs.len(),
            });
        }
        Ok(Self(signs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    /// Sign of region `i`, where `i = g` is `G*`.
    pub fn region(&self, i: usize) -> Sign {
        self.0[i - 1]
    }

    /// Every assignment of `{+, -, 0}` to `g` regions.
    pub fn all(g: usize) -> impl Iterator<Item = TwistSigns> {
        let total = 3usize.pow(g as u32);
        (0..total).map(move |mut code| {
            let mut signs = Vec::with_capacity(g);
            for _ in 0..g {
                signs.push(Sign::ALL[code % 3]);
                code /= 3;
            }
            TwistSigns(signs)
        })
    }
}

impl fmt::Display for TwistSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Sign::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// JSON form of a vector with optional signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct VectorDocument<S> {
    pub n: usize,
    pub g: usize,
    pub alpha: Vec<S>,
    pub beta: Vec<S>,
    pub beta_prime: Vec<S>,
    pub xi: Vec<S>,
    pub xi_prime: Vec<S>,
    pub gamma: Vec<S>,
    pub c: Vec<S>,
    pub c_star: S,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
}

impl<S: Scalar> VectorDocument<S> {
    pub fn from_vector(v: &CoordVectorOf<S>, signs: Option<&TwistSigns>) -> Self {
        let sig = v.sig();
        Self {
            n: sig.n(),
            g: sig.g(),
            alpha: v.group(ArcGroup::Alpha).to_vec(),
            beta: v.group(ArcGroup::Beta).to_vec(),
            beta_prime: v.group(ArcGroup::BetaPrime).to_vec(),
            xi: v.group(ArcGroup::Xi).to_vec(),
            xi_prime: v.group(ArcGroup::XiPrime).to_vec(),
            gamma: v.group(ArcGroup::Gamma).to_vec(),
            c: v.group(ArcGroup::C).to_vec(),
            c_star: v.c_star(),
            signs: signs.map(|s| s.as_slice().iter().map(|x| x.as_i8()).collect()),
        }
    }

    pub fn into_parts(self) -> Result<(CoordVectorOf<S>, Option<TwistSigns>), ParseError> {
        let sig = SurfaceSig::new(self.n, self.g)?;
        let groups = [
            (ArcGroup::Alpha, self.alpha),
            (ArcGroup::Beta, self.beta),
            (ArcGroup::BetaPrime, self.beta_prime),
            (ArcGroup::Xi, self.xi),
            (ArcGroup::XiPrime, self.xi_prime),
            (ArcGroup::Gamma, self.gamma),
            (ArcGroup::C, self.c),
            (ArcGroup::CStar, vec![self.c_star]),
        ];
        let mut values = Vec::with_capacity(sig.coord_dimension());
        for (group, entries) in groups {
            let expected = sig.group_len(group);
            if entries.len() != expected {
                return Err(ParseError::WrongGroupLength {
                    group,
                    expected,
                    found: entries.len(),
                });
            }
            values.extend(entries);
        }
        let v = CoordVectorOf::new(sig, values)?;
        let signs = match self.signs {
            None => None,
            Some(raw) => {
                if raw.len() != sig.g() {
                    return Err(ParseError::WrongSignCount {
                        expected: sig.g(),
                        found: raw.len(),
                    });
                }
                let signs = raw
                    .into_iter()
                    .map(|x| {
                        Sign::from_i8(x).ok_or(ParseError::BadSign {
                            token: x.to_string(),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Some(TwistSigns::new(signs))
            }
        };
        Ok((v, signs))
    }
}

fn parity(locus: Locus, what: String) -> Diagnostic {
    Diagnostic::error(locus, Code::ParityError, format!("{what} is odd"))
}

/// Structural checks forced by the halvings in the decoding formulas.
///
/// Reports the zero vector, odd `β_i − β_{i+1}` in each puncture region,
/// odd or negative `β_{n+g} − c*` and `β′_{n+g} − c*`, and odd
/// `β_{n+i+1} − β_{n+i} − c_i` on both sides of every inner genus region.
pub fn validate_basic<S: Scalar>(v: &CoordVectorOf<S>) -> Diagnostics {
    let sig = v.sig();
    let (n, g) = (sig.n(), sig.g());
    let mut out = Diagnostics::new();
    if v.is_zero() {
        out.push(Diagnostic::error(
            Locus::Vector,
            Code::ZeroVector,
            "the zero vector is not a multicurve",
        ));
    }
    for i in 1..=n {
        let locus = Locus::Region(RegionId::U(i));
        match v.beta(i).minus(v.beta(i + 1)).at(locus) {
            Ok(d) if !d.is_even() => {
                out.push(parity(locus, format!("beta_{i} - beta_{} = {d}", i + 1)))
            }
            Ok(_) => {}
            Err(e) => out.push(e),
        }
    }
    for i in 1..g {
        let locus = Locus::Region(RegionId::G(i));
        let c = v.c(i);
        let sides = [
            (
                v.beta(n + i + 1),
                v.beta(n + i),
                format!("beta_{} - beta_{} - c_{i}", n + i + 1, n + i),
            ),
            (
                v.invisible(i + 1),
                v.invisible(i),
                format!(
                    "{} - {} - c_{i}",
                    sig.invisible_arc(i + 1),
                    sig.invisible_arc(i)
                ),
            ),
        ];
        for (left, right, what) in sides {
            match left.minus(right).and_then(|d| d.minus(c)).at(locus) {
                Ok(d) if !d.is_even() => out.push(parity(locus, format!("{what} = {d}"))),
                Ok(_) => {}
                Err(e) => out.push(e),
            }
        }
    }
    let locus = Locus::Region(RegionId::GStar);
    let c_star = v.c_star();
    for arc in [ArcId::beta(n + g), sig.invisible_arc(g)] {
        match v.get(arc).minus(c_star).at(locus) {
            Ok(d) => {
                if !d.is_even() {
                    out.push(parity(locus, format!("{arc} - c* = {d}")));
                }
                if d < S::zero() {
                    out.push(Diagnostic::error(
                        locus,
                        Code::NegativeCount,
                        format!("{arc} - c* = {d} is negative"),
                    ));
                }
            }
            Err(e) => out.push(e),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CoordVector;

    const EXAMPLE: &str = "(6,2,4,2,5,1; 8,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)";

    fn sig(n: usize, g: usize) -> SurfaceSig {
        SurfaceSig::new(n, g).unwrap()
    }

    #[test]
    fn parses_the_worked_example() {
        let v = CoordVector::parse(EXAMPLE, sig(3, 3)).unwrap();
        assert_eq!(v.group(ArcGroup::Alpha), &[6, 2, 4, 2, 5, 1]);
        assert_eq!(v.group(ArcGroup::Beta), &[8, 6, 4, 6, 7, 2]);
        assert_eq!(v.beta_prime(5), 3);
        assert_eq!(v.beta_prime(6), 0);
        assert_eq!(v.group(ArcGroup::Xi), &[5, 4, 6, 6]);
        assert_eq!(v.group(ArcGroup::XiPrime), &[4, 1, 0, 0]);
        assert_eq!(v.group(ArcGroup::Gamma), &[2, 5, 3]);
        assert_eq!(v.group(ArcGroup::C), &[3, 3]);
        assert_eq!(v.c_star(), 0);
        assert_eq!(v.invisible(1), 8);
        assert_eq!(v.invisible(2), 3);
    }

    #[test]
    fn serializes_canonically() {
        let v = CoordVector::parse(EXAMPLE, sig(3, 3)).unwrap();
        assert_eq!(serialize_vector(&v), EXAMPLE);
        let z = CoordVector::parse("(0,0; 0,0; 0; 0)", sig(1, 1)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "(0,0; 0,0; 0; 0)");
    }

    #[test]
    fn parse_errors() {
        let err = CoordVector::parse("(1,1; 2,2; 2; 3; 0)", sig(1, 1)).unwrap_err();
        assert_eq!(
            err,
            ParseError::WrongGroupCount {
                expected: 4,
                found: 5
            }
        );
        let err = CoordVector::parse("(1,1,1; 2,2; 2; 0)", sig(1, 1)).unwrap_err();
        assert!(matches!(
            err,
            ParseError::WrongGroupLength {
                group: ArcGroup::Alpha,
                ..
            }
        ));
        let err = CoordVector::parse("(1,-1; 2,2; 2; 0)", sig(1, 1)).unwrap_err();
        assert_eq!(
            err,
            ParseError::NegativeEntry {
                position: ArcId::alpha(2)
            }
        );
        let err = CoordVector::parse("(1,x; 2,2; 2; 0)", sig(1, 1)).unwrap_err();
        assert!(
            matches!(err, ParseError::NonInteger { position, .. } if position == ArcId::alpha(2))
        );
        let err = CoordVector::parse("(1,1.5; 2,2; 2; 0)", sig(1, 1)).unwrap_err();
        assert!(matches!(err, ParseError::NonInteger { .. }));
    }

    #[test]
    fn parse_accepts_missing_parentheses_and_spacing() {
        let a = CoordVector::parse("  1 ,1;2, 2 ; 2;0 ", sig(1, 1)).unwrap();
        let b = CoordVector::parse("(1, 1; 2, 2; 2; 0)", sig(1, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn overflowing_entry_is_not_an_integer() {
        let err = CoordVectorOf::<i32>::parse("(1,99999999999; 2,2; 2; 0)", sig(1, 1)).unwrap_err();
        assert!(matches!(err, ParseError::NonInteger { .. }));
        let ok = CoordVectorOf::<i128>::parse("(1,99999999999; 2,2; 2; 0)", sig(1, 1)).unwrap();
        assert_eq!(ok.alpha(2), 99_999_999_999);
    }

    #[test]
    fn signs_text_form() {
        let s = TwistSigns::parse("+,-,0", 3).unwrap();
        assert_eq!(s.as_slice(), &[Sign::Positive, Sign::Negative, Sign::Zero]);
        assert_eq!(s.to_string(), "+,-,0");
        assert!(matches!(
            TwistSigns::parse("+,-", 3),
            Err(ParseError::WrongSignCount { .. })
        ));
        assert!(matches!(
            TwistSigns::parse("+,x,0", 3),
            Err(ParseError::BadSign { .. })
        ));
        assert_eq!(TwistSigns::all(3).count(), 27);
    }

    #[test]
    fn json_document_round_trip() {
        let v = CoordVector::parse(EXAMPLE, sig(3, 3)).unwrap();
        let signs = TwistSigns::parse("+,-,0", 3).unwrap();
        let doc = VectorDocument::from_vector(&v, Some(&signs));
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.starts_with(r#"{"n":3,"g":3,"alpha":[6,2,4,2,5,1],"beta":[8,6,4,6,7,2]"#));
        let back: VectorDocument<i64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_parts().unwrap(), (v, Some(signs)));
    }

    #[test]
    fn example_passes_basic_validation() {
        let v = CoordVector::parse(EXAMPLE, sig(3, 3)).unwrap();
        let d = validate_basic(&v);
        assert!(d.is_empty(), "{d}");
        assert_eq!(validate_basic(&v), d);
    }

    #[test]
    fn odd_puncture_difference_is_reported() {
        let v = CoordVector::parse(
            "(6,2,4,2,5,1; 7,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)",
            sig(3, 3),
        )
        .unwrap();
        let d = validate_basic(&v);
        let first = d.iter().next().unwrap();
        assert_eq!(first.code, Code::ParityError);
        assert_eq!(first.locus, Locus::Region(RegionId::U(1)));
    }

    #[test]
    fn zero_vector_is_reported() {
        let d = validate_basic(&CoordVector::zero(sig(1, 1)));
        assert_eq!(d.codes(), vec![Code::ZeroVector]);
    }

    #[test]
    fn handle_needs_enough_endpoints() {
        // beta_2 = 0 < c* = 2
        let v = CoordVector::parse("(1,1; 2,0; 1; 2)", sig(1, 1)).unwrap();
        assert!(validate_basic(&v).contains(Code::NegativeCount));
    }

    #[test]
    fn handle_reports_parity_and_shortfall_together() {
        let v = CoordVector::parse("(1,1; 2,0; 1; 3)", sig(1, 1)).unwrap();
        let d = validate_basic(&v);
        assert!(d.contains(Code::ParityError), "{d}");
        assert!(d.contains(Code::NegativeCount), "{d}");
    }
}
