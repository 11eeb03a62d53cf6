//! Letters, words and the termination order.

use std::fmt;

use serde::Serialize;

/// A letter of the alphabet `Z`; the first seven are concrete (`X`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    /// Scalars `K ⊆ R`.
    K,
    /// The complement `R̃ = ∫R`.
    Rt,
    /// The derivation `∂`.
    D,
    /// The integration `∫`.
    I,
    /// The evaluation `E`.
    E,
    /// Further functionals `Φ̃`.
    Pt,
    /// Further multiplicative functionals `Φ̃ₘ`.
    Pm,
    /// All of `R`; specializes to `K` and `R̃`.
    R,
    /// All functionals; specializes to `E`, `Φ̃` (and `Φ̃ₘ`).
    Phi,
    /// Multiplicative functionals; specializes to `Φ̃ₘ` (and `E`).
    PhiM,
}

/// A word over the alphabet.
pub type Word = Vec<Letter>;

impl Letter {
    /// The concrete letters.
    pub const CONCRETE: [Letter; 7] = [Letter::K, Letter::Rt, Letter::D, Letter::I, Letter::E, Letter::Pt, Letter::Pm];

    /// `true` for letters of `X`.
    pub fn is_concrete(self) -> bool {
        !matches!(self, Letter::R | Letter::Phi | Letter::PhiM)
    }

    /// Rank in the lexicographic part of the order:
    /// `D > I > Φ̃ₘ, Φ̃ > E > R̃ > K`.
    pub fn rank(self) -> u8 {
        match self {
            Letter::K => 0,
            Letter::Rt => 1,
            Letter::E => 2,
            Letter::Pm => 3,
            Letter::Pt => 4,
            Letter::I => 5,
            Letter::D => 6,
            Letter::R | Letter::Phi | Letter::PhiM => panic!("pattern letters have no rank"),
        }
    }

    /// Printed name.
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::K => "K",
            Letter::Rt => "R~",
            Letter::D => "D",
            Letter::I => "I",
            Letter::E => "E",
            Letter::Pt => "Phi~",
            Letter::Pm => "PhiM~",
            Letter::R => "R",
            Letter::Phi => "Phi",
            Letter::PhiM => "PhiM",
        }
    }

    /// Parses a printed name.
    pub fn parse(s: &str) -> Option<Letter> {
        Some(match s {
            "K" => Letter::K,
            "R~" | "Rt" => Letter::Rt,
            "D" => Letter::D,
            "I" => Letter::I,
            "E" => Letter::E,
            "Phi~" | "Pt" => Letter::Pt,
            "PhiM~" | "Pm" => Letter::Pm,
            "R" => Letter::R,
            "Phi" => Letter::Phi,
            "PhiM" => Letter::PhiM,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Formats a word with letters separated by spaces; `ε` for the empty word.
pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.iter().map(|l| l.symbol()).collect::<Vec<_>>().join(" ")
    }
}

/// The termination order on concrete words as a sortable key:
/// (number of `I`, length, letter ranks).
pub fn order_key(w: &[Letter]) -> (usize, usize, Vec<u8>) {
    (w.iter().filter(|l| **l == Letter::I).count(), w.len(), w.iter().map(|l| l.rank()).collect())
}
