//! Exact integer coordinates for multicurves on a punctured surface.
//!
//! A multicurve on `S_{n,g}` (genus `g`, `n` punctures, one boundary) is
//! recorded by `3n + 8g − 5` intersection numbers together with one twist
//! direction per handle. [`decode()`] turns such a vector into a
//! [`MultiCurveCensus`], the per-region count of each kind of path
//! component, and [`encode()`] goes back.
//!
//! Everything is generic over the integer type; the aliases at the crate root
//! use `i64`.
//!
//! ```
//! use multicurve::{decode, encode, CoordVector, SurfaceSig, TwistSigns};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let sig = SurfaceSig::new(3, 3)?;
//! let v = CoordVector::parse(
//!     "(6,2,4,2,5,1; 8,6,4,6,7,2; 3,0; 5,4,6,6; 4,1,0,0; 2,5,3; 3,3; 0)",
//!     sig,
//! )?;
//! let signs = TwistSigns::parse("+,-,0", sig.g())?;
//!
//! let census = decode(&v, &signs)?;
//! assert_eq!(census.twist_total(2), -4);
//! assert_eq!(encode(&census)?, (v, signs));
//! # Ok(())
//! # }
//! ```

pub mod census;
pub mod coords;
pub mod decode;
pub mod diagnostics;
pub mod encode;
pub mod error;
pub mod generate;
pub mod render;
pub mod scalar;
pub mod surface;

pub use census::{
    CensusDocument, GenusCensus, HandleCensus, MultiCurveCensusOf, PunctureCensus, RegionRecord,
    Side, SideCrossing, SidedCount, Twist,
};
pub use coords::{
    parse_vector, serialize_vector, validate_basic, CoordVectorOf, Sign, TwistSigns, VectorDocument,
};
pub use decode::{decode, GenusRegion};
pub use diagnostics::{Code, Diagnostic, Diagnostics, Locus, Severity};
pub use encode::{arc_endpoint_count, consistency_check, encode};
pub use error::{Error, ParseError, SurfaceError};
pub use scalar::{Exact, Overflow, Scalar};
pub use surface::{ArcGroup, ArcId, Region, RegionId, SurfaceSig};

pub type CoordVector = CoordVectorOf<i64>;
pub type MultiCurveCensus = MultiCurveCensusOf<i64>;
