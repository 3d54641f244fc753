//! The three bundled factoring programs, embedded verbatim from the `.ctc`
//! files in the crate's `corpus/` directory. The same files are shipped
//! standalone so they can be diffed, modified, and re-run from disk.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dsl::{self, Program};

pub const BRUN1_SOURCE: &str = include_str!("../corpus/brun1.ctc");
pub const BRUN2_SOURCE: &str = include_str!("../corpus/brun2.ctc");
pub const BRUN3_SOURCE: &str = include_str!("../corpus/brun3.ctc");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown corpus program `{0}` (expected brun1, brun2 or brun3)")]
    UnknownCorpusProgram(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CorpusId {
    Brun1,
    Brun2,
    Brun3,
}

impl CorpusId {
    pub const ALL: [CorpusId; 3] = [CorpusId::Brun1, CorpusId::Brun2, CorpusId::Brun3];

    pub fn name(self) -> &'static str {
        match self {
            CorpusId::Brun1 => "brun1",
            CorpusId::Brun2 => "brun2",
            CorpusId::Brun3 => "brun3",
        }
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusId {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brun1" => Ok(CorpusId::Brun1),
            "brun2" => Ok(CorpusId::Brun2),
            "brun3" => Ok(CorpusId::Brun3),
            other => Err(CorpusError::UnknownCorpusProgram(other.to_string())),
        }
    }
}

/// One bundled program: pinned source plus a map from source lines to the
/// line numbers of the published pseudocode listing it transcribes.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub id: CorpusId,
    pub title: &'static str,
    pub source: &'static str,
    /// (DSL source line, pseudocode listing line). Covers at least every
    /// send, every receive, and the LOOP-labeled statement.
    pub pseudocode_lines: &'static [(u32, u32)],
}

impl CorpusEntry {
    /// Parse the pinned source. Corpus sources are tested to parse cleanly,
    /// so this cannot fail for shipped entries.
    pub fn program(&self) -> Program {
        dsl::parse(self.source).expect("corpus source must parse")
    }
}

static BRUN1: CorpusEntry = CorpusEntry {
    id: CorpusId::Brun1,
    title: "Factoring algorithm as proposed by Brun",
    source: BRUN1_SOURCE,
    pseudocode_lines: &[
        (5, 4),
        (6, 5),
        (7, 8),
        (8, 10),
        (9, 11),
        (10, 11),
        (11, 9),
        (12, 12),
        (13, 13),
        (14, 15),
        (15, 16),
        (16, 17),
    ],
};

static BRUN2: CorpusEntry = CorpusEntry {
    id: CorpusId::Brun2,
    title: "Modified factoring algorithm",
    source: BRUN2_SOURCE,
    pseudocode_lines: &[
        (6, 4),
        (7, 5),
        (8, 8),
        (9, 11),
        (10, 13),
        (11, 14),
        (12, 14),
        (13, 12),
        (14, 15),
        (15, 16),
        (16, 18),
        (17, 19),
        (18, 20),
    ],
};

static BRUN3: CorpusEntry = CorpusEntry {
    id: CorpusId::Brun3,
    title: "Optimal factoring algorithm",
    source: BRUN3_SOURCE,
    pseudocode_lines: &[
        (7, 5),
        (8, 6),
        (9, 7),
        (10, 10),
        (11, 13),
        (12, 15),
        (13, 16),
        (14, 16),
        (15, 14),
        (16, 17),
        (17, 18),
        (18, 19),
        (19, 21),
        (20, 22),
        (21, 23),
        (22, 25),
        (23, 26),
    ],
};

pub fn get(id: CorpusId) -> &'static CorpusEntry {
    match id {
        CorpusId::Brun1 => &BRUN1,
        CorpusId::Brun2 => &BRUN2,
        CorpusId::Brun3 => &BRUN3,
    }
}

pub fn get_by_name(name: &str) -> Result<&'static CorpusEntry, CorpusError> {
    Ok(get(name.parse()?))
}

/// All entries in stable order: brun1, brun2, brun3.
pub fn list() -> impl Iterator<Item = &'static CorpusEntry> {
    CorpusId::ALL.iter().map(|&id| get(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{Domain, Instr};

    #[test]
    fn listing_is_stable() {
        let ids: Vec<_> = list().map(|e| e.id.name()).collect();
        assert_eq!(ids, vec!["brun1", "brun2", "brun3"]);
    }

    #[test]
    fn every_entry_parses_cleanly() {
        for entry in list() {
            let program = entry.program();
            assert_eq!(program.name, entry.id.name());
            assert!(dsl::validate(&program).is_valid());
        }
    }

    #[test]
    fn titles_are_pinned() {
        assert_eq!(get(CorpusId::Brun1).title, "Factoring algorithm as proposed by Brun");
        assert_eq!(get(CorpusId::Brun2).title, "Modified factoring algorithm");
        assert_eq!(get(CorpusId::Brun3).title, "Optimal factoring algorithm");
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert_eq!(
            get_by_name("brun9").unwrap_err(),
            CorpusError::UnknownCorpusProgram("brun9".into())
        );
    }

    #[test]
    fn brun1_shape() {
        let p = get(CorpusId::Brun1).program();
        assert_eq!(p.registers.len(), 1);
        assert_eq!(p.registers[0].name, "tt");
        assert_eq!(p.registers[0].initial, -1);
        assert_eq!(p.registers[0].domain, Domain::Auto);
        for label in ["JUMP", "LOOP", "FINAL"] {
            assert!(p.labels.contains_key(label), "missing label {label}");
        }
    }

    #[test]
    fn brun2_prepends_the_self_guard() {
        let p1 = get(CorpusId::Brun1).program();
        let p2 = get(CorpusId::Brun2).program();
        // brun2 = brun1 with one extra guard statement at index 1.
        assert_eq!(p2.statements.len(), p1.statements.len() + 1);
        match &p2.statements[1].instr {
            Instr::IfGoto { target, .. } => assert_eq!(target, "JUMP"),
            other => panic!("expected the guard, found {other:?}"),
        }
        assert_eq!(p2.statements[0], p1.statements[0]);
        assert_eq!(&p2.statements[2..], &p1.statements[1..]);
    }

    #[test]
    fn brun3_has_flag_register_and_two_flag_sends() {
        let p = get(CorpusId::Brun3).program();
        assert_eq!(p.registers.len(), 2);
        assert_eq!(p.registers[1].name, "flag");
        assert_eq!(p.registers[1].initial, 0);
        let flag_sends = p
            .statements
            .iter()
            .filter(|s| matches!(&s.instr, Instr::Send { register, .. } if register == "flag"))
            .count();
        assert_eq!(flag_sends, 2);
        assert!(p.receive_of("flag").is_some());
        assert!(p.labels.contains_key("OUT"));
    }

    // Every send, receive, and the LOOP statement must appear in the
    // pseudocode line map.
    #[test]
    fn pseudocode_lines_cover_temporal_statements() {
        for entry in list() {
            let program = entry.program();
            let mapped: Vec<u32> = entry.pseudocode_lines.iter().map(|&(dsl_line, _)| dsl_line).collect();
            for stmt in &program.statements {
                let must_map = matches!(stmt.instr, Instr::Send { .. } | Instr::Receive { .. })
                    || stmt.label.as_deref() == Some("LOOP");
                if must_map {
                    assert!(
                        mapped.contains(&stmt.line),
                        "{}: line {} not covered by pseudocode_lines",
                        entry.id,
                        stmt.line
                    );
                }
            }
            // And the map must not point at blank or comment lines.
            let source_lines: Vec<&str> = entry.source.lines().collect();
            for &(dsl_line, _) in entry.pseudocode_lines {
                let text = source_lines[(dsl_line - 1) as usize].trim();
                assert!(!text.is_empty() && !text.starts_with('#'), "{}: line {dsl_line} is not code", entry.id);
            }
        }
    }
}
