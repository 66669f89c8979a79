//! Green's pre-orders and equivalences: exact computation on finite
//! tables and bounded-search deciders whose search radii come from the
//! hyperbolicity constants.

mod constants;
mod deciders;
mod exact;
mod search;

use serde::Serialize;

use crate::monoid::{Word, WordProblemOracle};

pub use constants::{greens_constants, Affine, GreensConstants};
pub use deciders::{
    decide, decide_d_cancellative, decide_equivalences, decide_leq_j, decide_leq_l, decide_leq_r,
    detect_unit_generators, estimate_parameters, finite_parameters, Equivalences, Parameters,
    UnitGenerators,
};
pub use exact::{exact_greens_finite, GreensTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "leqR")]
    LeqR,
    #[serde(rename = "leqL")]
    LeqL,
    #[serde(rename = "leqJ")]
    LeqJ,
    R,
    L,
    J,
    H,
    D,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::LeqR,
        Relation::LeqL,
        Relation::LeqJ,
        Relation::R,
        Relation::L,
        Relation::J,
        Relation::H,
        Relation::D,
    ];

    pub fn parse(s: &str) -> Option<Relation> {
        Some(match s.to_ascii_lowercase().as_str() {
            "leqr" | "<=r" | "le_r" => Relation::LeqR,
            "leql" | "<=l" | "le_l" => Relation::LeqL,
            "leqj" | "<=j" | "le_j" => Relation::LeqJ,
            "r" => Relation::R,
            "l" => Relation::L,
            "j" => Relation::J,
            "h" => Relation::H,
            "d" => Relation::D,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::LeqR => "leqR",
            Relation::LeqL => "leqL",
            Relation::LeqJ => "leqJ",
            Relation::R => "R",
            Relation::L => "L",
            Relation::J => "J",
            Relation::H => "H",
            Relation::D => "D",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    NoWithinBound,
    UnknownAtCap,
}

impl Answer {
    /// Three-valued conjunction: any no wins, then any unknown.
    pub fn and(self, other: Answer) -> Answer {
        use Answer::*;
        match (self, other) {
            (NoWithinBound, _) | (_, NoWithinBound) => NoWithinBound,
            (UnknownAtCap, _) | (_, UnknownAtCap) => UnknownAtCap,
            (Yes, Yes) => Yes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub word: Word,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreensVerdict {
    pub relation: Relation,
    pub answer: Answer,
    /// Set on a no when it is a proof rather than a bounded search result:
    /// the search space was exhausted, or the hypotheses behind the bound
    /// were supplied.
    pub certified: bool,
    pub witness: Vec<Witness>,
    /// Multiplier length bound searched.
    pub bound: Option<u64>,
    pub method: String,
    pub notes: Vec<String>,
}

impl GreensVerdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn witness_word(&self, label: &str) -> Option<&Word> {
        self.witness.iter().find(|w| w.label == label).map(|w| &w.word)
    }
}

/// Caps and the hypotheses a caller vouches for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeciderOptions {
    /// Words or elements stored by one search.
    pub node_cap: usize,
    /// `δ` and `α` are known to hold for the whole monoid.
    pub hypotheses: bool,
    pub left_cancellative: bool,
    pub cancellative: bool,
    /// Longest inverse tried when detecting units.
    pub unit_cap: u64,
}

impl Default for DeciderOptions {
    fn default() -> Self {
        DeciderOptions {
            node_cap: 200_000,
            hypotheses: false,
            left_cancellative: false,
            cancellative: false,
            unit_cap: 6,
        }
    }
}

pub(crate) fn witness(o: &WordProblemOracle, label: &str, word: Word) -> Witness {
    Witness {
        label: label.to_owned(),
        text: o.alphabet().display(&word),
        word,
    }
}
