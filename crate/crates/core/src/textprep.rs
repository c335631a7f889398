//! Term extraction and fingerprint construction.
//!
//! Every utterance is reduced to a set of normalized terms through a fixed
//! pipeline: punctuation removal, whitespace split, lowercasing, stopword
//! removal, stemming, dedup. Terms that occur in at least two distinct
//! utterances of a dialogue form the dialogue vocabulary; the binary
//! repetition matrix records which vocabulary term occurs in which utterance.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufReader, Read};
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use rust_stemmers::{Algorithm, Stemmer};
use thiserror::Error;

use crate::model::{Dialogue, Fingerprint, FingerprintRow, UtteranceType};

/// Bundled English stopword list (stopwords-iso snapshot), one token per line.
pub const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords-en.txt");

#[derive(Debug, Error)]
pub enum TextprepError {
    #[error("dialogue {dialogue_id}: expected {expected} utterance types, got {actual}")]
    TypeCountMismatch {
        dialogue_id: String,
        expected: usize,
        actual: usize,
    },
    #[error("dialogue {dialogue_id}: utterance {utterance_index} has no role")]
    MissingRole {
        dialogue_id: String,
        utterance_index: usize,
    },
    #[error("failed to read stopword list {path}: {source}")]
    StopwordIo {
        path: String,
        source: std::io::Error,
    },
}

/// Ordered set of normalized terms for one utterance. Terms are unique and
/// kept in first-encounter order so that downstream vocabulary order is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermSet {
    terms: Vec<String>,
}

impl TermSet {
    pub fn from_terms(terms: Vec<String>) -> TermSet {
        let mut out = TermSet::default();
        for t in terms {
            out.insert(t);
        }
        out
    }

    fn insert(&mut self, term: String) {
        if !self.terms.contains(&term) {
            self.terms.push(term);
        }
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.iter().any(|t| t == term)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_slice(&self) -> &[String] {
        &self.terms
    }
}

/// Per-dialogue list of frequent terms in first-appearance order; its length
/// is the fingerprint column count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DialogueVocabulary {
    terms: Vec<String>,
}

impl DialogueVocabulary {
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Stemmer selection for the normalization pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StemmerKind {
    #[default]
    EnglishSnowball,
    None,
}

impl StemmerKind {
    pub fn parse(s: &str) -> Option<StemmerKind> {
        match s {
            "english-snowball" => Some(StemmerKind::EnglishSnowball),
            "none" => Some(StemmerKind::None),
            _ => None,
        }
    }
}

impl fmt::Display for StemmerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StemmerKind::EnglishSnowball => "english-snowball",
            StemmerKind::None => "none",
        })
    }
}

/// Stopword list loaded from the bundled snapshot or a user file.
///
/// File format: UTF-8, one token per line, `#` starts a comment line.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn bundled() -> StopwordList {
        Self::parse(BUNDLED_STOPWORDS)
    }

    pub fn parse(content: &str) -> StopwordList {
        let words = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        StopwordList { words }
    }

    pub fn from_path(path: &Path) -> Result<StopwordList, TextprepError> {
        let content = std::fs::read_to_string(path).map_err(|source| TextprepError::StopwordIo {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::parse(&content))
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<StopwordList, TextprepError> {
        let mut content = String::new();
        BufReader::new(reader)
            .read_to_string(&mut content)
            .map_err(|source| TextprepError::StopwordIo {
                path: "<reader>".to_string(),
                source,
            })?;
        Ok(Self::parse(&content))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for StopwordList {
    fn default() -> StopwordList {
        StopwordList::bundled()
    }
}

/// Normalization pipeline settings.
#[derive(Debug, Clone)]
pub struct PreprocessConfig {
    pub stopwords: StopwordList,
    pub stemmer: StemmerKind,
    pub lowercase: bool,
    pub punctuation_strip: bool,
}

impl Default for PreprocessConfig {
    fn default() -> PreprocessConfig {
        PreprocessConfig {
            stopwords: StopwordList::bundled(),
            stemmer: StemmerKind::EnglishSnowball,
            lowercase: true,
            punctuation_strip: true,
        }
    }
}

fn punctuation_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    // All Unicode punctuation categories. Removing (not replacing with a
    // space) keeps tokens like "@88487" and "what's" in one piece.
    RE.get_or_init(|| Regex::new(r"\p{P}+").expect("valid punctuation pattern"))
}

/// Reduce a text to its ordered set of normalized terms.
///
/// Pipeline order is fixed: punctuation removal, whitespace split,
/// lowercasing, stopword removal, stemming, dedup. Empty input yields an
/// empty set.
pub fn normalize(text: &str, config: &PreprocessConfig) -> TermSet {
    let stripped = if config.punctuation_strip {
        punctuation_regex().replace_all(text, "")
    } else {
        std::borrow::Cow::Borrowed(text)
    };
    let stemmer = match config.stemmer {
        StemmerKind::EnglishSnowball => Some(Stemmer::create(Algorithm::English)),
        StemmerKind::None => None,
    };
    let mut set = TermSet::default();
    for token in stripped.split_whitespace() {
        let word = if config.lowercase {
            token.to_lowercase()
        } else {
            token.to_string()
        };
        if config.stopwords.contains(&word) {
            continue;
        }
        let term = match &stemmer {
            Some(st) => st.stem(&word).to_string(),
            None => word,
        };
        set.insert(term);
    }
    set
}

/// Collect the dialogue vocabulary: terms present in at least two distinct
/// utterances, ordered by first appearance.
pub fn build_vocabulary(term_sets: &[TermSet]) -> DialogueVocabulary {
    let mut order: Vec<String> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for set in term_sets {
        for term in set.iter() {
            match order.iter().position(|t| t == term) {
                Some(pos) => counts[pos] += 1,
                None => {
                    order.push(term.to_string());
                    counts.push(1);
                }
            }
        }
    }
    let terms = order
        .into_iter()
        .zip(counts)
        .filter(|(_, c)| *c >= 2)
        .map(|(t, _)| t)
        .collect();
    DialogueVocabulary { terms }
}

/// Build the binary repetition matrix: rows are utterances, columns are
/// vocabulary terms, entry 1 means the term occurs in the utterance.
pub fn build_repetition_matrix(
    term_sets: &[TermSet],
    vocabulary: &DialogueVocabulary,
) -> Vec<Vec<u8>> {
    term_sets
        .iter()
        .map(|set| {
            vocabulary
                .terms()
                .iter()
                .map(|term| u8::from(set.contains(term)))
                .collect()
        })
        .collect()
}

/// Assemble the fingerprint of a sentence-segmented, role-annotated dialogue.
///
/// `types` must hold one utterance type per utterance. The vocabulary term
/// list is discarded once the repetition flags are stored.
pub fn fingerprint(
    dialogue: &Dialogue,
    types: &[UtteranceType],
    config: &PreprocessConfig,
) -> Result<Fingerprint, TextprepError> {
    if types.len() != dialogue.utterances.len() {
        return Err(TextprepError::TypeCountMismatch {
            dialogue_id: dialogue.id.clone(),
            expected: dialogue.utterances.len(),
            actual: types.len(),
        });
    }
    let term_sets: Vec<TermSet> = dialogue
        .utterances
        .iter()
        .map(|u| normalize(&u.text, config))
        .collect();
    let vocabulary = build_vocabulary(&term_sets);
    let matrix = build_repetition_matrix(&term_sets, &vocabulary);

    let mut rows = Vec::with_capacity(dialogue.utterances.len());
    for (utt, (utype, flags)) in dialogue
        .utterances
        .iter()
        .zip(types.iter().zip(matrix.into_iter()))
    {
        let role = utt.role.ok_or_else(|| TextprepError::MissingRole {
            dialogue_id: dialogue.id.clone(),
            utterance_index: utt.index,
        })?;
        rows.push(FingerprintRow {
            role,
            utype: *utype,
            length_chars: utt.text.trim().chars().count(),
            repetition_flags: flags,
        });
    }
    Ok(Fingerprint {
        dialogue_id: dialogue.id.clone(),
        rows,
        vocab_size: vocabulary.len(),
    })
}
