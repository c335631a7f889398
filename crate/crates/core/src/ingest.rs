//! Transcript ingestion: parse heterogeneous source formats into a canonical
//! [`Corpus`], fill in missing speaker roles, and segment turns into
//! sentences.
//!
//! Supported formats:
//! - `canonical`: JSON Lines, one object per dialogue:
//!   `{"dialogue_id": "...", "turns": [{"speaker", "role", "text"}, ...]}`
//!   where `role` is `"seeker"`, `"assistant"`, or `null`.
//! - `two-column-chat`: plain text, `speaker<TAB>text` per line, dialogues
//!   separated by a blank line.
//! - `forum-thread`: JSON Lines, one object per thread:
//!   `{"thread_id": "...", "posts": [{"author", "body"}, ...]}`. Quoted lines
//!   (prefix `>` by default) are stripped from post bodies.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::model::{Corpus, Dialogue, Role, Utterance};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: parse error: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: schema error: missing or invalid field \"{field}\"")]
    Schema {
        path: String,
        line: usize,
        field: String,
    },
    #[error("dialogue {dialogue_id} has {speaker_count} distinct speakers; only two-party dialogues are supported")]
    MultiParty {
        dialogue_id: String,
        speaker_count: usize,
    },
    #[error("duplicate dialogue id in corpus: {dialogue_id}")]
    DuplicateDialogueId { dialogue_id: String },
}

/// Source format tag for [`load_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TranscriptFormat {
    #[default]
    Canonical,
    TwoColumnChat,
    ForumThread,
}

impl TranscriptFormat {
    pub fn parse(s: &str) -> Option<TranscriptFormat> {
        match s {
            "canonical" => Some(TranscriptFormat::Canonical),
            "two-column-chat" => Some(TranscriptFormat::TwoColumnChat),
            "forum-thread" => Some(TranscriptFormat::ForumThread),
            _ => None,
        }
    }
}

impl fmt::Display for TranscriptFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TranscriptFormat::Canonical => "canonical",
            TranscriptFormat::TwoColumnChat => "two-column-chat",
            TranscriptFormat::ForumThread => "forum-thread",
        })
    }
}

/// Adapter settings for [`load_corpus`].
#[derive(Debug, Clone)]
pub struct AdapterConfig {
    pub format: TranscriptFormat,
    /// Maps canonical field names (`dialogue_id`, `turns`, `speaker`, `role`,
    /// `text`, `thread_id`, `posts`, `author`, `body`) to the names used in
    /// the source file.
    pub field_overrides: BTreeMap<String, String>,
    /// Fill missing roles with the first-speaker heuristic after parsing.
    pub infer_roles: bool,
    /// Lines starting with this prefix are dropped from forum post bodies.
    pub quote_prefix: String,
}

impl AdapterConfig {
    pub fn new(format: TranscriptFormat) -> AdapterConfig {
        AdapterConfig {
            format,
            field_overrides: BTreeMap::new(),
            infer_roles: true,
            quote_prefix: ">".to_string(),
        }
    }

    fn field<'a>(&'a self, canonical: &'a str) -> &'a str {
        self.field_overrides
            .get(canonical)
            .map(String::as_str)
            .unwrap_or(canonical)
    }
}

impl Default for AdapterConfig {
    fn default() -> AdapterConfig {
        AdapterConfig::new(TranscriptFormat::Canonical)
    }
}

/// One parsed dialogue record, independent of the source format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalRecord {
    pub dialogue_id: String,
    pub turns: Vec<CanonicalTurn>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTurn {
    pub speaker: String,
    pub role: Option<Role>,
    pub text: String,
}

/// Parse a transcript file into a corpus. Dialogue order follows file order;
/// the corpus name is the file stem.
pub fn load_corpus(path: &Path, config: &AdapterConfig) -> Result<Corpus, IngestError> {
    let content = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let path_str = path.display().to_string();
    let records = match config.format {
        TranscriptFormat::Canonical => parse_canonical(&content, &path_str, config)?,
        TranscriptFormat::TwoColumnChat => parse_two_column_chat(&content, &path_str)?,
        TranscriptFormat::ForumThread => parse_forum_thread(&content, &path_str, config)?,
    };

    let mut seen_ids: Vec<&str> = Vec::new();
    let mut dialogues = Vec::with_capacity(records.len());
    for record in &records {
        if seen_ids.contains(&record.dialogue_id.as_str()) {
            return Err(IngestError::DuplicateDialogueId {
                dialogue_id: record.dialogue_id.clone(),
            });
        }
        seen_ids.push(&record.dialogue_id);

        let utterances: Vec<Utterance> = record
            .turns
            .iter()
            .enumerate()
            .map(|(i, turn)| Utterance {
                index: i,
                speaker_id: turn.speaker.clone(),
                role: turn.role,
                text: turn.text.clone(),
            })
            .collect();
        let dialogue = Dialogue::new(record.dialogue_id.clone(), utterances);
        let speaker_count = dialogue.speakers().len();
        if speaker_count > 2 {
            return Err(IngestError::MultiParty {
                dialogue_id: dialogue.id,
                speaker_count,
            });
        }
        dialogues.push(if config.infer_roles {
            infer_roles(&dialogue)?
        } else {
            dialogue
        });
    }

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    let mut corpus = Corpus::new(name, dialogues);
    corpus
        .provenance
        .insert("format".to_string(), config.format.to_string());
    corpus
        .provenance
        .insert("source".to_string(), path_str);
    Ok(corpus)
}

fn parse_canonical(
    content: &str,
    path: &str,
    config: &AdapterConfig,
) -> Result<Vec<CanonicalRecord>, IngestError> {
    let id_field = config.field("dialogue_id");
    let turns_field = config.field("turns");
    let speaker_field = config.field("speaker");
    let role_field = config.field("role");
    let text_field = config.field("text");

    let mut records = Vec::new();
    for (line_no, line) in content.lines().enumerate() {
        let line_no = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: e.to_string(),
            })?;
        let schema_err = |field: &str| IngestError::Schema {
            path: path.to_string(),
            line: line_no,
            field: field.to_string(),
        };
        let dialogue_id = value
            .get(id_field)
            .and_then(|v| v.as_str())
            .ok_or_else(|| schema_err(id_field))?
            .to_string();
        let turns_value = value
            .get(turns_field)
            .and_then(|v| v.as_array())
            .ok_or_else(|| schema_err(turns_field))?;
        if turns_value.is_empty() {
            return Err(schema_err(turns_field));
        }
        let mut turns = Vec::with_capacity(turns_value.len());
        for turn in turns_value {
            let speaker = turn
                .get(speaker_field)
                .and_then(|v| v.as_str())
                .ok_or_else(|| schema_err(speaker_field))?
                .to_string();
            let text = turn
                .get(text_field)
                .and_then(|v| v.as_str())
                .ok_or_else(|| schema_err(text_field))?
                .to_string();
            let role = match turn.get(role_field) {
                None | Some(serde_json::Value::Null) => None,
                Some(serde_json::Value::String(s)) => match s.as_str() {
                    "seeker" => Some(Role::Seeker),
                    "assistant" => Some(Role::Assistant),
                    _ => return Err(schema_err(role_field)),
                },
                Some(_) => return Err(schema_err(role_field)),
            };
            turns.push(CanonicalTurn {
                speaker,
                role,
                text,
            });
        }
        records.push(CanonicalRecord { dialogue_id, turns });
    }
    Ok(records)
}

fn parse_two_column_chat(content: &str, path: &str) -> Result<Vec<CanonicalRecord>, IngestError> {
    let mut records = Vec::new();
    let mut turns: Vec<CanonicalTurn> = Vec::new();
    let flush = |turns: &mut Vec<CanonicalTurn>, records: &mut Vec<CanonicalRecord>| {
        if !turns.is_empty() {
            records.push(CanonicalRecord {
                dialogue_id: format!("chat-{:06}", records.len() + 1),
                turns: std::mem::take(turns),
            });
        }
    };
    for (line_no, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            flush(&mut turns, &mut records);
            continue;
        }
        let (speaker, text) = line.split_once('\t').ok_or_else(|| IngestError::Parse {
            path: path.to_string(),
            line: line_no + 1,
            message: "expected speaker<TAB>text".to_string(),
        })?;
        turns.push(CanonicalTurn {
            speaker: speaker.to_string(),
            role: None,
            text: text.to_string(),
        });
    }
    flush(&mut turns, &mut records);
    Ok(records)
}

fn parse_forum_thread(
    content: &str,
    path: &str,
    config: &AdapterConfig,
) -> Result<Vec<CanonicalRecord>, IngestError> {
    let id_field = config.field("thread_id");
    let posts_field = config.field("posts");
    let author_field = config.field("author");
    let body_field = config.field("body");

    let mut records = Vec::new();
    for (line_no, line) in content.lines().enumerate() {
        let line_no = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: e.to_string(),
            })?;
        let schema_err = |field: &str| IngestError::Schema {
            path: path.to_string(),
            line: line_no,
            field: field.to_string(),
        };
        let dialogue_id = value
            .get(id_field)
            .and_then(|v| v.as_str())
            .ok_or_else(|| schema_err(id_field))?
            .to_string();
        let posts = value
            .get(posts_field)
            .and_then(|v| v.as_array())
            .ok_or_else(|| schema_err(posts_field))?;
        if posts.is_empty() {
            return Err(schema_err(posts_field));
        }
        let mut turns = Vec::with_capacity(posts.len());
        for post in posts {
            let author = post
                .get(author_field)
                .and_then(|v| v.as_str())
                .ok_or_else(|| schema_err(author_field))?;
            let body = post
                .get(body_field)
                .and_then(|v| v.as_str())
                .ok_or_else(|| schema_err(body_field))?;
            turns.push(CanonicalTurn {
                speaker: author.to_string(),
                role: None,
                text: strip_quoted_lines(body, &config.quote_prefix),
            });
        }
        records.push(CanonicalRecord { dialogue_id, turns });
    }
    Ok(records)
}

fn strip_quoted_lines(body: &str, quote_prefix: &str) -> String {
    if quote_prefix.is_empty() {
        return body.to_string();
    }
    body.lines()
        .filter(|line| !line.trim_start().starts_with(quote_prefix))
        .collect::<Vec<_>>()
        .join("\n")
        .trim()
        .to_string()
}

/// Fill in missing roles: the first-appearing speaker is the Seeker, the
/// other speaker the Assistant. Existing annotations are never overwritten.
pub fn infer_roles(dialogue: &Dialogue) -> Result<Dialogue, IngestError> {
    let speakers = dialogue.speakers();
    if speakers.len() > 2 {
        return Err(IngestError::MultiParty {
            dialogue_id: dialogue.id.clone(),
            speaker_count: speakers.len(),
        });
    }
    let first_speaker = speakers.first().map(|s| s.to_string());
    let mut out = dialogue.clone();
    for utt in &mut out.utterances {
        if utt.role.is_none() {
            utt.role = Some(if Some(&utt.speaker_id) == first_speaker.as_ref() {
                Role::Seeker
            } else {
                Role::Assistant
            });
        }
    }
    Ok(out)
}

/// Split a text into sentences. A sentence ends at `.`, `!`, or `?` followed
/// by whitespace or end of text; the terminator stays with the sentence.
/// Abbreviation false-splits are accepted as noise.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    for i in 0..chars.len() {
        if matches!(chars[i], '.' | '!' | '?') {
            let at_boundary = match chars.get(i + 1) {
                None => true,
                Some(c) => c.is_whitespace(),
            };
            if at_boundary {
                let sentence: String = chars[start..=i].iter().collect();
                let trimmed = sentence.trim();
                if !trimmed.is_empty() {
                    sentences.push(trimmed.to_string());
                }
                start = i + 1;
            }
        }
    }
    if start < chars.len() {
        let tail: String = chars[start..].iter().collect();
        let trimmed = tail.trim();
        if !trimmed.is_empty() {
            sentences.push(trimmed.to_string());
        }
    }
    if sentences.is_empty() {
        // an empty source record stays as one (flagged) empty utterance
        sentences.push(text.trim().to_string());
    }
    sentences
}

/// Replace every utterance by its sentences, preserving order, speaker, and
/// role, and reindexing from 0.
pub fn segment_sentences(dialogue: &Dialogue) -> Dialogue {
    let mut utterances = Vec::new();
    for utt in &dialogue.utterances {
        for sentence in split_sentences(&utt.text) {
            utterances.push(Utterance {
                index: utterances.len(),
                speaker_id: utt.speaker_id.clone(),
                role: utt.role,
                text: sentence,
            });
        }
    }
    Dialogue {
        id: dialogue.id.clone(),
        utterances,
        source: dialogue.source.clone(),
    }
}
