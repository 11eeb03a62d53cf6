//! The irreducible words of a reduction system.

use serde_json::{json, Value};

use super::letter::{format_word, Letter, Word};
use super::system::ReductionSystem;

/// Comparison of the irreducible words up to a length bound with the
/// closed-form description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleReport {
    /// System name.
    pub system: String,
    /// Regular-language description of the irreducible words.
    pub description: String,
    /// Length bound of the enumeration.
    pub max_len: usize,
    /// The irreducible words found.
    pub words: Vec<Word>,
    /// Words on which the enumeration and the description disagree.
    pub mismatches: Vec<Word>,
}

impl IrreducibleReport {
    /// `true` if the description matches the enumeration.
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// JSON form.
    pub fn to_json(&self) -> Value {
        json!({
            "system": self.system,
            "description": self.description,
            "max_len": self.max_len,
            "count": self.words.len(),
            "matches": self.matches(),
            "mismatches": self.mismatches.iter().map(|w| format_word(w)).collect::<Vec<_>>(),
        })
    }
}

fn functionals(sys: &ReductionSystem) -> Vec<Letter> {
    [Letter::E, Letter::Pt, Letter::Pm].into_iter().filter(|l| sys.alphabet.contains(l)).collect()
}

/// `true` if a functional letter may be followed by an `R̃` slot.
fn takes_tail(sys: &ReductionSystem, phi: Letter) -> bool {
    match phi {
        Letter::Pm => false,
        Letter::E => !sys.e_in_phim,
        _ => true,
    }
}

/// The closed-form description of the irreducible words: `R̃? D*` without
/// integrals, otherwise `R̃? U? D* | R̃? V? I R̃?` with the admissible
/// functional blocks `U` and `V`.
pub fn description(sys: &ReductionSystem) -> String {
    if !sys.alphabet.contains(&Letter::I) {
        return "R~? D*".into();
    }
    let mut u = Vec::new();
    let mut v = Vec::new();
    for phi in functionals(sys) {
        u.push(phi.symbol().to_string());
        if phi != Letter::E {
            v.push(phi.symbol().to_string());
        }
        if takes_tail(sys, phi) {
            u.push(format!("{} R~", phi.symbol()));
            v.push(format!("{} R~", phi.symbol()));
        }
    }
    format!("R~? U? D* | R~? V? I R~?   where U ∈ {{{}}}, V ∈ {{{}}}", u.join(", "), v.join(", "))
}

/// `true` if the concrete word has the shape of [`description`].
pub fn matches_irreducible_shape(sys: &ReductionSystem, w: &[Letter]) -> bool {
    let mut i = 0;
    if w.get(i) == Some(&Letter::Rt) {
        i += 1;
    }
    let mut block: Option<(Letter, bool)> = None;
    if let Some(&phi) = w.get(i) {
        if functionals(sys).contains(&phi) {
            i += 1;
            let tail = w.get(i) == Some(&Letter::Rt) && takes_tail(sys, phi);
            if tail {
                i += 1;
            }
            block = Some((phi, tail));
        }
    }
    let rest = &w[i..];
    if rest.iter().all(|l| *l == Letter::D) {
        return true;
    }
    if !sys.alphabet.contains(&Letter::I) || rest[0] != Letter::I {
        return false;
    }
    if block == Some((Letter::E, false)) {
        return false;
    }
    matches!(&rest[1..], [] | [Letter::Rt])
}

/// Enumerates all words over the system's alphabet up to `max_len`, keeps
/// the irreducible ones and compares them with the description.
pub fn irreducible_words(sys: &ReductionSystem, max_len: usize) -> IrreducibleReport {
    let mut words = Vec::new();
    let mut mismatches = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            let irr = sys.is_irreducible(w);
            if irr {
                words.push(w.clone());
            }
            if irr != matches_irreducible_shape(sys, w) {
                mismatches.push(w.clone());
            }
            // Extensions of reducible words stay reducible, but are still
            // compared with the description.
            for l in &sys.alphabet {
                let mut w2 = w.clone();
                w2.push(*l);
                next.push(w2);
            }
        }
        layer = next;
    }
    IrreducibleReport { system: sys.name.clone(), description: description(sys), max_len, words, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tenred::SystemName;

    #[test]
    fn diff_words_are_derivative_powers() {
        let rep = irreducible_words(&ReductionSystem::named(SystemName::Diff), 4);
        assert!(rep.matches(), "{:?}", rep.mismatches);
        assert!(rep.words.contains(&vec![Letter::Rt, Letter::D, Letter::D]));
        assert!(!rep.words.contains(&vec![Letter::D, Letter::Rt]));
    }
}
