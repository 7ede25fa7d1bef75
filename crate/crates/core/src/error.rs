use core::fmt;

use crate::geom::{Point, Violation};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the core can report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Three points handed to a predicate were collinear.
    CollinearInput,
    /// A coordinate exceeded [`crate::geom::COORD_BOUND`] in absolute value.
    CoordinateOutOfRange {
        index: usize,
        point: Point,
    },
    /// The point set has a duplicate pair or a collinear triple.
    GeneralPosition(Violation),
    TooFewPoints {
        needed: usize,
        got: usize,
    },
    /// The requested radial center is interior to the hull of the subset.
    CenterNotOnHull {
        center: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    /// Hole size outside the supported range.
    InvalidK {
        k: usize,
    },
    /// The hole catalog would exceed its configured size cap.
    BudgetExceeded {
        budget: usize,
    },
    PreconditionViolated(&'static str),
    /// A block admitted no assignable 5-hole. Unreachable for valid blocks of
    /// ten points; seeing it means an upstream invariant broke.
    NoCandidate {
        center: usize,
        start: usize,
    },
    /// Neither block of a reflex-middle window produced a good assignment.
    NoGoodBlock {
        center: usize,
        start: usize,
    },
    RangeTooSmall {
        n: usize,
        range: i64,
    },
    RangeTooLarge {
        range: i64,
    },
    /// Horton construction outgrew the coordinate bound.
    CoordinateOverflow {
        m: u32,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CollinearInput => f.write_str("collinear input to an orientation predicate"),
            Error::CoordinateOutOfRange { index, point } => write!(
                f,
                "point {index} at ({}, {}) exceeds the coordinate bound 2^26",
                point.x, point.y
            ),
            Error::GeneralPosition(v) => write!(f, "point set not in general position: {v}"),
            Error::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::CenterNotOnHull { center } => {
                write!(f, "point {center} is not on the convex hull of the subset")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::InvalidK { k } => write!(f, "unsupported hole size k = {k}"),
            Error::BudgetExceeded { budget } => {
                write!(f, "hole catalog exceeds its budget of {budget} holes")
            }
            Error::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            Error::NoCandidate { center, start } => write!(
                f,
                "no assignable 5-hole for center {center}, block at radial offset {start}"
            ),
            Error::NoGoodBlock { center, start } => write!(
                f,
                "no good block in the window at radial offset {start} of center {center}"
            ),
            Error::RangeTooSmall { n, range } => {
                write!(f, "coordinate range {range} too small for {n} points")
            }
            Error::RangeTooLarge { range } => {
                write!(f, "coordinate range {range} exceeds the bound 2^26")
            }
            Error::CoordinateOverflow { m } => {
                write!(f, "Horton set of order {m} does not fit in the coordinate bound")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::GeneralPosition(v)
    }
}
