use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Algebraic laws checked by the table verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    AdditiveIdentity,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    ZeroAbsorption,
    LeftDistributivity,
    RightDistributivity,
    UnitAction,
    ZeroScalarAction,
    ZeroVectorAction,
    ActionOverVectorSum,
    ActionOverScalarSum,
    ActionCompatibility,
    MonoidAssociativity,
    MonoidIdentity,
    MonoidZero,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::AdditiveIdentity => "additive identity (0 + a = a + 0 = a)",
            Law::AdditiveCommutativity => "additive commutativity (a + b = b + a)",
            Law::AdditiveAssociativity => "additive associativity ((a + b) + c = a + (b + c))",
            Law::MultiplicativeIdentity => "multiplicative identity (1a = a1 = a)",
            Law::MultiplicativeAssociativity => "multiplicative associativity ((ab)c = a(bc))",
            Law::ZeroAbsorption => "zero absorption (0a = a0 = 0)",
            Law::LeftDistributivity => "left distributivity (a(b + c) = ab + ac)",
            Law::RightDistributivity => "right distributivity ((a + b)c = ac + bc)",
            Law::UnitAction => "1·v = v",
            Law::ZeroScalarAction => "0_R·v = 0_V",
            Law::ZeroVectorAction => "r·0_V = 0_V",
            Law::ActionOverVectorSum => "r(v + w) = rv + rw",
            Law::ActionOverScalarSum => "(r + s)v = rv + sv",
            Law::ActionCompatibility => "(rs)v = r(sv)",
            Law::MonoidAssociativity => "monoid associativity ((ab)c = a(bc))",
            Law::MonoidIdentity => "monoid identity (1a = a1 = a)",
            Law::MonoidZero => "monoid zero (0a = a0 = 0)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("{law} violated at {}", Witness(.witness))]
    Axiom { law: Law, witness: Vec<usize> },
    #[error("carrier of {requested} elements exceeds the cap of {cap}")]
    CarrierCap { requested: u128, cap: usize },
    #[error("enumeration over {requested} candidate generators exceeds the cap of {cap}")]
    EnumerationCap { requested: usize, cap: usize },
    #[error("element {element} is out of range for a carrier of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("not a submodule: {0}")]
    NotSubmodule(String),
    #[error("not R-linear: {0}")]
    NotLinear(String),
    #[error("structures are defined over different semirings")]
    SemiringMismatch,
    #[error("element {0} is not a unit")]
    NotAUnit(usize),
    #[error("not an additive spine: element {uncovered} is not additively generated by the halo")]
    NotASpine { uncovered: usize },
    #[error("not a monoid spine: element {element} has no witness")]
    NotAMonoidSpine { element: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

struct Witness<'a>(&'a [usize]);

impl fmt::Display for Witness<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_message_names_law_and_witness() {
        let e = Error::Axiom {
            law: Law::LeftDistributivity,
            witness: vec![1, 2, 0],
        };
        assert_eq!(
            e.to_string(),
            "left distributivity (a(b + c) = ab + ac) violated at (1, 2, 0)"
        );
    }
}
