use std::fmt;

/// Three-valued answer of a decision procedure. `Unknown` carries the
/// sub-query that could not be settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Unknown(String),
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown(_))
    }

    /// Logical and: `No` dominates, then `Unknown`.
    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Unknown(r), _) | (_, Decision::Unknown(r)) => Decision::Unknown(r),
            _ => Decision::Yes,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Yes => f.write_str("yes"),
            Decision::No => f.write_str("no"),
            Decision::Unknown(r) => write!(f, "unknown ({r})"),
        }
    }
}
