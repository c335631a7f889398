//! Core domain types shared by every analysis stage.
//!
//! A [`Corpus`] holds two-party [`Dialogue`]s made of speaker-attributed
//! [`Utterance`]s. The privacy-preserving per-dialogue representation is the
//! [`Fingerprint`]: one row per utterance carrying only the speaker role, the
//! utterance type, the character length, and binary term-repetition flags.
//! The terms behind the flag columns are never stored, so dialogue content
//! cannot be recovered from a fingerprint.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which side of a two-party dialogue a speaker is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Seeker,
    Assistant,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Seeker => Role::Assistant,
            Role::Assistant => Role::Seeker,
        }
    }

    /// One-letter tag used in fingerprint serializations.
    pub fn tag(self) -> &'static str {
        match self {
            Role::Seeker => "S",
            Role::Assistant => "A",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Role> {
        match tag {
            "S" => Some(Role::Seeker),
            "A" => Some(Role::Assistant),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Seeker => "seeker",
            Role::Assistant => "assistant",
        })
    }
}

/// Coarse utterance type: greetings and farewells are filtered out of flow
/// analysis, Initiative marks questions/requests/stated needs, everything
/// else is NonInitiative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UtteranceType {
    Hi,
    Initiative,
    NonInitiative,
    Bye,
}

impl UtteranceType {
    /// One-letter tag used in fingerprint serializations and label files.
    pub fn tag(self) -> &'static str {
        match self {
            UtteranceType::Hi => "H",
            UtteranceType::Initiative => "I",
            UtteranceType::NonInitiative => "N",
            UtteranceType::Bye => "B",
        }
    }

    pub fn from_tag(tag: &str) -> Option<UtteranceType> {
        match tag {
            "H" => Some(UtteranceType::Hi),
            "I" => Some(UtteranceType::Initiative),
            "N" => Some(UtteranceType::NonInitiative),
            "B" => Some(UtteranceType::Bye),
            _ => None,
        }
    }

    /// Accepts both the one-letter tags and the long names, case-insensitive.
    pub fn parse_label(label: &str) -> Option<UtteranceType> {
        let trimmed = label.trim();
        if let Some(t) = Self::from_tag(trimmed) {
            return Some(t);
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "hi" | "hello" => Some(UtteranceType::Hi),
            "initiative" => Some(UtteranceType::Initiative),
            "noninitiative" | "non-initiative" => Some(UtteranceType::NonInitiative),
            "bye" => Some(UtteranceType::Bye),
            _ => None,
        }
    }
}

impl fmt::Display for UtteranceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A single speaker-attributed text unit within a dialogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Utterance {
    /// Position within the dialogue, consecutive from 0.
    pub index: usize,
    pub speaker_id: String,
    pub role: Option<Role>,
    pub text: String,
}

/// An ordered two-party conversation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dialogue {
    pub id: String,
    pub utterances: Vec<Utterance>,
    #[serde(default)]
    pub source: BTreeMap<String, String>,
}

impl Dialogue {
    pub fn new(id: impl Into<String>, utterances: Vec<Utterance>) -> Dialogue {
        Dialogue {
            id: id.into(),
            utterances,
            source: BTreeMap::new(),
        }
    }

    /// Distinct speaker ids in first-appearance order.
    pub fn speakers(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for utt in &self.utterances {
            if !seen.contains(&utt.speaker_id.as_str()) {
                seen.push(utt.speaker_id.as_str());
            }
        }
        seen
    }
}

/// A named, ordered collection of dialogues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub dialogues: Vec<Dialogue>,
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, dialogues: Vec<Dialogue>) -> Corpus {
        Corpus {
            name: name.into(),
            dialogues,
            provenance: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.dialogues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dialogues.is_empty()
    }
}

/// One fingerprint row: everything retained about a single utterance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintRow {
    pub role: Role,
    pub utype: UtteranceType,
    /// Unicode scalar count of the trimmed utterance text.
    pub length_chars: usize,
    /// One 0/1 flag per dialogue-vocabulary column.
    pub repetition_flags: Vec<u8>,
}

/// Privacy-preserving dialogue representation: an `n x m` matrix of rows,
/// where `m` is the dialogue vocabulary size. The vocabulary terms themselves
/// are discarded once the flags are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dialogue_id: String,
    pub rows: Vec<FingerprintRow>,
    pub vocab_size: usize,
}

impl Fingerprint {
    /// Number of utterances (rows).
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Swap Seeker and Assistant on every row.
    pub fn role_swapped(&self) -> Fingerprint {
        Fingerprint {
            dialogue_id: self.dialogue_id.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| FingerprintRow {
                    role: r.role.other(),
                    ..r.clone()
                })
                .collect(),
            vocab_size: self.vocab_size,
        }
    }
}

/// A structural problem found by [`validate_corpus`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValidationIssue {
    EmptyCorpus,
    EmptyDialogue {
        dialogue_id: String,
    },
    MultiParty {
        dialogue_id: String,
        speaker_count: usize,
    },
    MissingRole {
        dialogue_id: String,
        utterance_index: usize,
    },
    EmptyUtterance {
        dialogue_id: String,
        utterance_index: usize,
    },
    DuplicateDialogueId {
        dialogue_id: String,
    },
    NonConsecutiveIndices {
        dialogue_id: String,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::EmptyCorpus => write!(f, "corpus has no dialogues"),
            ValidationIssue::EmptyDialogue { dialogue_id } => {
                write!(f, "empty dialogue: {dialogue_id}")
            }
            ValidationIssue::MultiParty {
                dialogue_id,
                speaker_count,
            } => write!(
                f,
                "multi-party: dialogue {dialogue_id} has {speaker_count} distinct speakers"
            ),
            ValidationIssue::MissingRole {
                dialogue_id,
                utterance_index,
            } => write!(
                f,
                "missing role: dialogue {dialogue_id}, utterance {utterance_index}"
            ),
            ValidationIssue::EmptyUtterance {
                dialogue_id,
                utterance_index,
            } => write!(
                f,
                "empty utterance text: dialogue {dialogue_id}, utterance {utterance_index}"
            ),
            ValidationIssue::DuplicateDialogueId { dialogue_id } => {
                write!(f, "duplicate dialogue id: {dialogue_id}")
            }
            ValidationIssue::NonConsecutiveIndices { dialogue_id } => {
                write!(f, "utterance indices not consecutive from 0: {dialogue_id}")
            }
        }
    }
}

/// Report every structural problem in a corpus without mutating it.
///
/// Empty utterance texts are reported rather than dropped so that callers can
/// decide how to treat degenerate source records.
pub fn validate_corpus(corpus: &Corpus) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    if corpus.dialogues.is_empty() {
        issues.push(ValidationIssue::EmptyCorpus);
    }
    let mut seen_ids: Vec<&str> = Vec::new();
    for dialogue in &corpus.dialogues {
        if seen_ids.contains(&dialogue.id.as_str()) {
            issues.push(ValidationIssue::DuplicateDialogueId {
                dialogue_id: dialogue.id.clone(),
            });
        } else {
            seen_ids.push(&dialogue.id);
        }
        if dialogue.utterances.is_empty() {
            issues.push(ValidationIssue::EmptyDialogue {
                dialogue_id: dialogue.id.clone(),
            });
            continue;
        }
        let speaker_count = dialogue.speakers().len();
        if speaker_count > 2 {
            issues.push(ValidationIssue::MultiParty {
                dialogue_id: dialogue.id.clone(),
                speaker_count,
            });
        }
        if dialogue
            .utterances
            .iter()
            .enumerate()
            .any(|(i, u)| u.index != i)
        {
            issues.push(ValidationIssue::NonConsecutiveIndices {
                dialogue_id: dialogue.id.clone(),
            });
        }
        for utt in &dialogue.utterances {
            if utt.role.is_none() {
                issues.push(ValidationIssue::MissingRole {
                    dialogue_id: dialogue.id.clone(),
                    utterance_index: utt.index,
                });
            }
            if utt.text.is_empty() {
                issues.push(ValidationIssue::EmptyUtterance {
                    dialogue_id: dialogue.id.clone(),
                    utterance_index: utt.index,
                });
            }
        }
    }
    issues
}
