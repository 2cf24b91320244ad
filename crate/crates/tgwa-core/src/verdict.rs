//! Three-valued decision results carrying certificates and witnesses.

/// Outcome of a decision, stripped of payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        }
    }
}

/// Decision with a machine-checkable certificate on `Yes`, a witness on
/// `No`, and a list of blockers on `Unknown`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C, W> {
    Yes(C),
    No(W),
    Unknown(Vec<String>),
}

impl<C, W> Verdict<C, W> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Yes(_) => Outcome::Yes,
            Verdict::No(_) => Outcome::No,
            Verdict::Unknown(_) => Outcome::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
}
