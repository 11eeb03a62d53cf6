//! Reduction rules and the shipped reduction systems.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::letter::{format_word, Letter, Word};

/// The multilinear replacement maps; `f` is the payload of the `R` slot,
/// `φ`, `ψ` those of functional slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    /// `1 ↦ ε`.
    K,
    /// `f⊗g ↦ fg`.
    RR,
    /// `∂⊗f ↦ f⊗∂ + ∂f`.
    DR,
    /// `∂⊗∫ ↦ ε`.
    DI,
    /// `∫⊗∂ ↦ ε − E`.
    ID,
    /// `∂⊗φ ↦ 0`.
    DPhi,
    /// `φ⊗f⊗ψ ↦ (φf)ψ`.
    PhiRPhi,
    /// `φ⊗ψ ↦ (φ1)ψ`.
    PhiPhi,
    /// `E⊗∫ ↦ 0`.
    EI,
    /// `∫⊗f⊗∂ ↦ f − E⊗f − ∫⊗∂f`.
    IRD,
    /// `∫⊗f⊗φ ↦ ∫f⊗φ`.
    IRPhi,
    /// `∫⊗f⊗∫ ↦ ∫f⊗∫ − E⊗∫f⊗∫ − ∫⊗∫f`.
    IRI,
    /// `∫⊗φ ↦ ∫1⊗φ`.
    IPhi,
    /// `∫⊗∫ ↦ ∫1⊗∫ − E⊗∫1⊗∫ − ∫⊗∫1`.
    II,
    /// `∂⊗f⊗φ ↦ ∂f⊗φ`.
    DRPhi,
    /// `φ⊗f ↦ (φf)φ` for multiplicative `φ`.
    PhimR,
}

impl RuleKind {
    /// The replacement as text, with `φ` standing for the functional slots.
    pub fn template(self) -> &'static str {
        match self {
            RuleKind::K => "ε",
            RuleKind::RR => "fg",
            RuleKind::DR => "f⊗∂ + ∂f",
            RuleKind::DI => "ε",
            RuleKind::ID => "ε − E",
            RuleKind::DPhi => "0",
            RuleKind::PhiRPhi => "(φf)ψ",
            RuleKind::PhiPhi => "(φ1)ψ",
            RuleKind::EI => "0",
            RuleKind::IRD => "f − E⊗f − ∫⊗∂f",
            RuleKind::IRPhi => "∫f⊗φ",
            RuleKind::IRI => "∫f⊗∫ − E⊗∫f⊗∫ − ∫⊗∫f",
            RuleKind::IPhi => "∫1⊗φ",
            RuleKind::II => "∫1⊗∫ − E⊗∫1⊗∫ − ∫⊗∫1",
            RuleKind::DRPhi => "∂f⊗φ",
            RuleKind::PhimR => "(φf)φ",
        }
    }
}

/// A rule: a pattern word over `Z` and a replacement map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    /// Short name, e.g. `IRD`.
    pub name: String,
    /// The pattern.
    pub pattern: Word,
    /// The replacement.
    pub kind: RuleKind,
}

impl Rule {
    fn new(name: &str, pattern: &[Letter], kind: RuleKind) -> Self {
        Rule { name: name.into(), pattern: pattern.to_vec(), kind }
    }

    /// The rule in the text format `WORD -> template`.
    pub fn text(&self) -> String {
        format!("{} -> {}", format_word(&self.pattern), self.kind.template())
    }
}

/// The shipped systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemName {
    /// Differential operators: `K`, `RR`, `DR`.
    Diff,
    /// The defining rules of `R⟨∂,∫,E⟩` (not confluent).
    IdoDefining,
    /// The completed system for `R⟨∂,∫,E⟩`.
    Ido,
    /// The defining rules with functionals (not confluent).
    IdoPhiDefining,
    /// The completed system for `R⟨∂,∫,Φ⟩`.
    IdoPhi,
    /// The completed system with `φ⊗f ↦ (φf)φ` for multiplicative `φ ≠ E`.
    IdoPhiMult,
    /// As [`SystemName::IdoPhiMult`] with `E` multiplicative as well.
    IdoPhiMultE,
}

impl SystemName {
    /// All shipped systems.
    pub const ALL: [SystemName; 7] = [
        SystemName::Diff,
        SystemName::IdoDefining,
        SystemName::Ido,
        SystemName::IdoPhiDefining,
        SystemName::IdoPhi,
        SystemName::IdoPhiMult,
        SystemName::IdoPhiMultE,
    ];

    /// Command-line name.
    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::Diff => "diff",
            SystemName::IdoDefining => "ido-defining",
            SystemName::Ido => "ido",
            SystemName::IdoPhiDefining => "ido-phi-defining",
            SystemName::IdoPhi => "ido-phi",
            SystemName::IdoPhiMult => "ido-phi-mult",
            SystemName::IdoPhiMultE => "ido-phi-mult-e",
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SystemName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Elaborate(format!("unknown system '{s}' (expected one of diff, ido-defining, ido, ido-phi-defining, ido-phi, ido-phi-mult, ido-phi-mult-e)")))
    }
}

/// A reduction system over an alphabet with specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSystem {
    /// Name.
    pub name: String,
    /// Concrete letters that occur.
    pub alphabet: Vec<Letter>,
    /// The rules in priority order.
    pub rules: Vec<Rule>,
    /// `true` if `E` belongs to the multiplicative functionals `Φₘ`.
    pub e_in_phim: bool,
}

impl ReductionSystem {
    /// The concrete letters a pattern letter stands for.
    pub fn spec(&self, l: Letter) -> Vec<Letter> {
        let has = |x: Letter| self.alphabet.contains(&x);
        match l {
            Letter::R => vec![Letter::K, Letter::Rt],
            Letter::Phi => [Letter::E, Letter::Pt, Letter::Pm].into_iter().filter(|x| has(*x)).collect(),
            Letter::PhiM => {
                let mut v = Vec::new();
                if self.e_in_phim {
                    v.push(Letter::E);
                }
                v.push(Letter::Pm);
                v
            }
            x => vec![x],
        }
    }

    /// `true` if the concrete letter `c` specializes the pattern letter `p`.
    pub fn matches(&self, p: Letter, c: Letter) -> bool {
        p == c || self.spec(p).contains(&c)
    }

    /// Position of the first rule whose pattern matches `w` at `pos`.
    pub fn rule_at(&self, w: &[Letter], pos: usize) -> Option<usize> {
        self.rules.iter().position(|r| {
            pos + r.pattern.len() <= w.len() && r.pattern.iter().zip(&w[pos..]).all(|(p, c)| self.matches(*p, *c))
        })
    }

    /// `true` if no rule applies anywhere in the concrete word.
    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        (0..w.len()).all(|p| self.rule_at(w, p).is_none())
    }

    /// A shipped system.
    pub fn named(name: SystemName) -> Self {
        use Letter::*;
        use RuleKind as K_;
        let r = Rule::new;
        let base = vec![r("K", &[K], K_::K), r("RR", &[R, R], K_::RR), r("DR", &[D, R], K_::DR)];
        let (alphabet, mut rules, e_in_phim) = match name {
            SystemName::Diff => (vec![K, Rt, D], vec![], false),
            SystemName::IdoDefining => (
                vec![K, Rt, D, I, E],
                vec![
                    r("DI", &[D, I], K_::DI),
                    r("ID", &[I, D], K_::ID),
                    r("DRE", &[D, R, E], K_::DRPhi),
                    r("IRE", &[I, R, E], K_::IRPhi),
                    r("ERE", &[E, R, E], K_::PhiRPhi),
                ],
                false,
            ),
            SystemName::Ido => (
                vec![K, Rt, D, I, E],
                vec![
                    r("DI", &[D, I], K_::DI),
                    r("ID", &[I, D], K_::ID),
                    r("DE", &[D, E], K_::DPhi),
                    r("ERE", &[E, R, E], K_::PhiRPhi),
                    r("EE", &[E, E], K_::PhiPhi),
                    r("EI", &[E, I], K_::EI),
                    r("IRD", &[I, R, D], K_::IRD),
                    r("IRE", &[I, R, E], K_::IRPhi),
                    r("IRI", &[I, R, I], K_::IRI),
                    r("IE", &[I, E], K_::IPhi),
                    r("II", &[I, I], K_::II),
                ],
                false,
            ),
            SystemName::IdoPhiDefining => (
                vec![K, Rt, D, I, E, Pt],
                vec![
                    r("DI", &[D, I], K_::DI),
                    r("ID", &[I, D], K_::ID),
                    r("DRPhi", &[D, R, Phi], K_::DRPhi),
                    r("IRPhi", &[I, R, Phi], K_::IRPhi),
                    r("PhiRPhi", &[Phi, R, Phi], K_::PhiRPhi),
                ],
                false,
            ),
            SystemName::IdoPhi | SystemName::IdoPhiMult | SystemName::IdoPhiMultE => {
                let mut alphabet = vec![K, Rt, D, I, E, Pt];
                let mut rules = vec![
                    r("DPhi", &[D, Phi], K_::DPhi),
                    r("DI", &[D, I], K_::DI),
                    r("PhiRPhi", &[Phi, R, Phi], K_::PhiRPhi),
                    r("PhiPhi", &[Phi, Phi], K_::PhiPhi),
                    r("EI", &[E, I], K_::EI),
                    r("IRD", &[I, R, D], K_::IRD),
                    r("IRPhi", &[I, R, Phi], K_::IRPhi),
                    r("IRI", &[I, R, I], K_::IRI),
                    r("ID", &[I, D], K_::ID),
                    r("IPhi", &[I, Phi], K_::IPhi),
                    r("II", &[I, I], K_::II),
                ];
                if name != SystemName::IdoPhi {
                    alphabet.push(Pm);
                    rules.push(r("PhiMR", &[PhiM, R], K_::PhimR));
                }
                (alphabet, rules, name == SystemName::IdoPhiMultE)
            }
        };
        let mut all = base;
        all.append(&mut rules);
        ReductionSystem { name: name.as_str().into(), alphabet, rules: all, e_in_phim }
    }

    /// The system in the text format, one rule per line.
    pub fn to_text(&self) -> String {
        self.rules.iter().map(|r| r.text()).collect::<Vec<_>>().join("\n")
    }

    /// Reads a system in the text format. Each line `WORD -> template` must
    /// use a pattern and template of one of the shipped rule kinds; lines
    /// starting with `#` and blank lines are ignored.
    pub fn from_text(name: &str, text: &str, alphabet: Vec<Letter>, e_in_phim: bool) -> Result<Self> {
        let known: Vec<Rule> = SystemName::ALL.iter().flat_map(|n| ReductionSystem::named(*n).rules).collect();
        let mut rules: Vec<Rule> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse { pos: lineno, msg: "expected 'WORD -> template'".into() })?;
            let pattern = lhs
                .split_whitespace()
                .map(|t| Letter::parse(t).ok_or_else(|| Error::Parse { pos: lineno, msg: format!("unknown letter '{t}'") }))
                .collect::<Result<Word>>()?;
            let rule = known
                .iter()
                .find(|r| r.pattern == pattern && r.kind.template() == rhs.trim())
                .ok_or_else(|| Error::Parse { pos: lineno, msg: format!("no known rule '{line}'") })?;
            if !rules.iter().any(|r| r.pattern == pattern) {
                rules.push(rule.clone());
            }
        }
        Ok(ReductionSystem { name: name.into(), alphabet, rules, e_in_phim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(ReductionSystem::named(SystemName::Diff).rules.len(), 3);
        assert_eq!(ReductionSystem::named(SystemName::Ido).rules.len(), 14);
        assert_eq!(ReductionSystem::named(SystemName::IdoPhi).rules.len(), 14);
        assert_eq!(ReductionSystem::named(SystemName::IdoDefining).rules.len(), 8);
    }

    #[test]
    fn text_round_trip() {
        for n in SystemName::ALL {
            let s = ReductionSystem::named(n);
            let back = ReductionSystem::from_text(&s.name, &s.to_text(), s.alphabet.clone(), s.e_in_phim).unwrap();
            assert_eq!(back, s);
        }
    }
}
