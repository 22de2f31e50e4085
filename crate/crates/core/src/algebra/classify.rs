use std::fmt;

use serde::Serialize;

use super::FiniteDRL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variety {
    #[serde(rename = "GBL")]
    Gbl,
    #[serde(rename = "BL")]
    Bl,
    Heyting,
    #[serde(rename = "MV")]
    Mv,
    #[serde(rename = "Gödel")]
    Godel,
    Boolean,
}

impl Variety {
    /// Most specific subvariety label for the given identities.
    pub fn from_flags(prelinear: bool, idempotent: bool, involutive: bool) -> Self {
        match (prelinear, idempotent, involutive) {
            (_, true, true) => Variety::Boolean,
            (true, true, false) => Variety::Godel,
            (true, false, true) => Variety::Mv,
            (false, true, false) => Variety::Heyting,
            (true, false, false) => Variety::Bl,
            (false, false, _) => Variety::Gbl,
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Gbl => "GBL",
            Variety::Bl => "BL",
            Variety::Heyting => "Heyting",
            Variety::Mv => "MV",
            Variety::Godel => "Gödel",
            Variety::Boolean => "Boolean",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VarietyFlags {
    pub prelinear: bool,
    pub idempotent: bool,
    pub involutive: bool,
    pub chain: bool,
    pub variety: Variety,
}

/// Evaluates prelinearity, idempotency and involution exhaustively.
pub fn classify(a: &FiniteDRL) -> VarietyFlags {
    let prelinear = a.elements().all(|x| {
        a.elements()
            .all(|y| a.join(a.residuum(x, y), a.residuum(y, x)) == a.top())
    });
    let idempotent = a.elements().all(|x| a.otimes(x, x) == x);
    let involutive = a.elements().all(|x| a.neg(a.neg(x)) == x);
    VarietyFlags {
        prelinear,
        idempotent,
        involutive,
        chain: a.is_chain(),
        variety: Variety::from_flags(prelinear, idempotent, involutive),
    }
}
