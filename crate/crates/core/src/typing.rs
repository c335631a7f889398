//! Utterance typing: a rule-based sentence classifier, external label files,
//! schema mapping for foreign annotation sets, and P/R/F1 evaluation.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::flow::QrfaLabel;
use crate::model::{Corpus, UtteranceType};

/// Bundled greeting phrases.
pub const BUNDLED_GREETINGS: &str = include_str!("../data/greetings.txt");
/// Bundled farewell / thanks-closing phrases.
pub const BUNDLED_FAREWELLS: &str = include_str!("../data/farewells.txt");
/// Bundled information-need phrases.
pub const BUNDLED_NEED_PHRASES: &str = include_str!("../data/need-phrases.txt");
/// Bundled mapping from MSDialog-Intent annotation labels to QRFA.
pub const BUNDLED_MSDIALOG_INTENT_MAPPING: &str =
    include_str!("../data/mapping-msdialog-intent.tsv");
/// Bundled mapping from SCSdata action labels to QRFA.
pub const BUNDLED_SCSDATA_MAPPING: &str = include_str!("../data/mapping-scsdata.tsv");

#[derive(Debug, Error)]
pub enum TypingError {
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
    #[error("label file references unknown dialogue id: {dialogue_id}")]
    DanglingDialogue { dialogue_id: String },
    #[error("label file references utterance {utterance_index} of dialogue {dialogue_id}, which has {len} utterances")]
    DanglingIndex {
        dialogue_id: String,
        utterance_index: usize,
        len: usize,
    },
    #[error("duplicate label for dialogue {dialogue_id}, utterance {utterance_index}")]
    DuplicateLabel {
        dialogue_id: String,
        utterance_index: usize,
    },
    #[error("unknown label value: {label:?}")]
    UnknownLabel { label: String },
    #[error("no label for dialogue {dialogue_id}, utterance {utterance_index} and rule fallback is disabled")]
    MissingLabel {
        dialogue_id: String,
        utterance_index: usize,
    },
    #[error("labels not covered by the schema mapping: {labels:?}")]
    UnmappedLabels { labels: Vec<String> },
    #[error("label list length mismatch: predicted {predicted}, gold {gold}")]
    LengthMismatch { predicted: usize, gold: usize },
}

fn parse_phrase_file(content: &str) -> Vec<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// Phrase lexicons driving the rule-based classifier. All phrases are matched
/// against a lightly normalized sentence (lowercased, punctuation stripped,
/// whitespace collapsed).
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub greetings: Vec<String>,
    pub farewells: Vec<String>,
    pub need_phrases: Vec<String>,
}

impl Lexicons {
    pub fn bundled() -> Lexicons {
        Lexicons {
            greetings: parse_phrase_file(BUNDLED_GREETINGS),
            farewells: parse_phrase_file(BUNDLED_FAREWELLS),
            need_phrases: parse_phrase_file(BUNDLED_NEED_PHRASES),
        }
    }

    pub fn from_paths(
        greetings: Option<&Path>,
        farewells: Option<&Path>,
        need_phrases: Option<&Path>,
    ) -> Result<Lexicons, TypingError> {
        let mut lex = Lexicons::bundled();
        let read = |path: &Path| -> Result<Vec<String>, TypingError> {
            std::fs::read_to_string(path)
                .map(|c| parse_phrase_file(&c))
                .map_err(|source| TypingError::Io {
                    path: path.display().to_string(),
                    source,
                })
        };
        if let Some(p) = greetings {
            lex.greetings = read(p)?;
        }
        if let Some(p) = farewells {
            lex.farewells = read(p)?;
        }
        if let Some(p) = need_phrases {
            lex.need_phrases = read(p)?;
        }
        Ok(lex)
    }
}

impl Default for Lexicons {
    fn default() -> Lexicons {
        Lexicons::bundled()
    }
}

const WH_WORDS: &[&str] = &[
    "what", "who", "whom", "whose", "which", "when", "where", "why", "how",
];

const AUX_WORDS: &[&str] = &[
    "do", "does", "did", "can", "could", "will", "would", "shall", "should", "may", "might",
    "must", "is", "are", "was", "were", "am", "has", "have", "had",
];

const SUBJECT_WORDS: &[&str] = &[
    "i", "you", "we", "they", "he", "she", "it", "there", "this", "that", "anyone", "anybody",
    "someone", "somebody", "u",
];

const REQUEST_VERBS: &[&str] = &[
    "help", "find", "tell", "show", "give", "send", "provide", "look", "recommend", "suggest",
    "list", "explain", "search", "share",
];

fn light_normalize(sentence: &str) -> String {
    let mut out = String::with_capacity(sentence.len());
    for c in sentence.chars() {
        if c.is_alphanumeric() {
            out.extend(c.to_lowercase());
        } else if c.is_whitespace() {
            out.push(' ');
        }
        // punctuation and symbols are dropped, keeping tokens intact
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn contains_phrase(normalized: &str, phrase: &str) -> bool {
    let padded = format!(" {normalized} ");
    padded.contains(&format!(" {phrase} "))
}

fn starts_with_phrase(normalized: &str, phrase: &str) -> bool {
    normalized == phrase || normalized.starts_with(&format!("{phrase} "))
}

/// Classify a single sentence as H, B, I, or N.
///
/// A sentence ending in `?` is always Initiative. Otherwise precedence is
/// H > B > I > N: short greeting sentences are H, short farewell/thanks
/// sentences are B, question-like or need-stating sentences are I, and
/// everything else is N.
pub fn classify_rule_based(sentence: &str) -> UtteranceType {
    static BUNDLED: std::sync::OnceLock<Lexicons> = std::sync::OnceLock::new();
    classify_with_lexicons(sentence, BUNDLED.get_or_init(Lexicons::bundled))
}

/// [`classify_rule_based`] with caller-provided lexicons.
pub fn classify_with_lexicons(sentence: &str, lexicons: &Lexicons) -> UtteranceType {
    if sentence.trim_end().ends_with('?') {
        return UtteranceType::Initiative;
    }
    let normalized = light_normalize(sentence);
    let tokens: Vec<&str> = normalized.split_whitespace().collect();
    if tokens.is_empty() {
        return UtteranceType::NonInitiative;
    }
    if tokens.len() <= 3
        && lexicons
            .greetings
            .iter()
            .any(|p| starts_with_phrase(&normalized, p))
    {
        return UtteranceType::Hi;
    }
    if tokens.len() <= 5
        && lexicons
            .farewells
            .iter()
            .any(|p| contains_phrase(&normalized, p))
    {
        return UtteranceType::Bye;
    }
    if is_initiative(&normalized, &tokens, lexicons) {
        return UtteranceType::Initiative;
    }
    UtteranceType::NonInitiative
}

fn is_initiative(normalized: &str, tokens: &[&str], lexicons: &Lexicons) -> bool {
    if WH_WORDS.contains(&tokens[0]) {
        return true;
    }
    // auxiliary inversion: "can you ...", "are they ..."
    if tokens.len() >= 2 && AUX_WORDS.contains(&tokens[0]) && SUBJECT_WORDS.contains(&tokens[1]) {
        return true;
    }
    if tokens.contains(&"please") && tokens.iter().any(|t| REQUEST_VERBS.contains(t)) {
        return true;
    }
    lexicons
        .need_phrases
        .iter()
        .any(|p| contains_phrase(normalized, p))
}

/// One record of an external label file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct LabelRecord {
    pub dialogue_id: String,
    pub utterance_index: usize,
    pub label: String,
}

/// External per-utterance labels, e.g. predictions from a separate model.
///
/// File format: JSON Lines,
/// `{"dialogue_id": "...", "utterance_index": 0, "label": "I"}`.
#[derive(Debug, Clone, Default)]
pub struct LabelFile {
    records: Vec<LabelRecord>,
}

impl LabelFile {
    pub fn from_records(records: Vec<LabelRecord>) -> Result<LabelFile, TypingError> {
        let mut seen: HashSet<(&str, usize)> = HashSet::new();
        for r in &records {
            if !seen.insert((r.dialogue_id.as_str(), r.utterance_index)) {
                return Err(TypingError::DuplicateLabel {
                    dialogue_id: r.dialogue_id.clone(),
                    utterance_index: r.utterance_index,
                });
            }
        }
        Ok(LabelFile { records })
    }

    pub fn from_path(path: &Path) -> Result<LabelFile, TypingError> {
        let content = std::fs::read_to_string(path).map_err(|source| TypingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut records = Vec::new();
        for (line_no, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: LabelRecord =
                serde_json::from_str(line).map_err(|e| TypingError::Parse {
                    path: path.display().to_string(),
                    line: line_no + 1,
                    message: e.to_string(),
                })?;
            records.push(record);
        }
        Self::from_records(records)
    }

    pub fn records(&self) -> &[LabelRecord] {
        &self.records
    }
}

/// Where an assigned utterance type came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelProvenance {
    External,
    Rule,
}

/// Types assigned to one dialogue, with per-utterance provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueTypes {
    pub dialogue_id: String,
    pub types: Vec<UtteranceType>,
    pub provenance: Vec<LabelProvenance>,
}

/// Assign utterance types across a corpus from an external label file.
/// External labels win; with `rule_fallback` unlabeled utterances fall back
/// to [`classify_rule_based`], otherwise they are an error.
pub fn apply_labels(
    corpus: &Corpus,
    labels: &LabelFile,
    rule_fallback: bool,
) -> Result<Vec<DialogueTypes>, TypingError> {
    let mut by_dialogue: BTreeMap<&str, BTreeMap<usize, &str>> = BTreeMap::new();
    for record in &labels.records {
        by_dialogue
            .entry(record.dialogue_id.as_str())
            .or_default()
            .insert(record.utterance_index, record.label.as_str());
    }
    for (&dialogue_id, indexed) in &by_dialogue {
        let Some(dialogue) = corpus.dialogues.iter().find(|d| d.id == dialogue_id) else {
            return Err(TypingError::DanglingDialogue {
                dialogue_id: dialogue_id.to_string(),
            });
        };
        if let Some((&utterance_index, _)) = indexed
            .iter()
            .find(|(&idx, _)| idx >= dialogue.utterances.len())
        {
            return Err(TypingError::DanglingIndex {
                dialogue_id: dialogue_id.to_string(),
                utterance_index,
                len: dialogue.utterances.len(),
            });
        }
    }

    let mut out = Vec::with_capacity(corpus.dialogues.len());
    for dialogue in &corpus.dialogues {
        let indexed = by_dialogue.get(dialogue.id.as_str());
        let mut types = Vec::with_capacity(dialogue.utterances.len());
        let mut provenance = Vec::with_capacity(dialogue.utterances.len());
        for utt in &dialogue.utterances {
            match indexed.and_then(|m| m.get(&utt.index)) {
                Some(label) => {
                    let utype = UtteranceType::parse_label(label).ok_or_else(|| {
                        TypingError::UnknownLabel {
                            label: label.to_string(),
                        }
                    })?;
                    types.push(utype);
                    provenance.push(LabelProvenance::External);
                }
                None if rule_fallback => {
                    types.push(classify_rule_based(&utt.text));
                    provenance.push(LabelProvenance::Rule);
                }
                None => {
                    return Err(TypingError::MissingLabel {
                        dialogue_id: dialogue.id.clone(),
                        utterance_index: utt.index,
                    });
                }
            }
        }
        out.push(DialogueTypes {
            dialogue_id: dialogue.id.clone(),
            types,
            provenance,
        });
    }
    Ok(out)
}

/// Target of a schema-mapping entry: either an utterance type or a QRFA
/// label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappedLabel {
    Type(UtteranceType),
    Qrfa(QrfaLabel),
}

impl MappedLabel {
    pub fn parse(s: &str) -> Option<MappedLabel> {
        match s.trim() {
            "Q" => Some(MappedLabel::Qrfa(QrfaLabel::Q)),
            "R" => Some(MappedLabel::Qrfa(QrfaLabel::R)),
            "F" => Some(MappedLabel::Qrfa(QrfaLabel::F)),
            "A" => Some(MappedLabel::Qrfa(QrfaLabel::A)),
            other => UtteranceType::parse_label(other).map(MappedLabel::Type),
        }
    }

    /// The utterance type implied by this target. QRFA labels with initiative
    /// (Q, R) imply I; the others imply N.
    pub fn utterance_type(self) -> UtteranceType {
        match self {
            MappedLabel::Type(t) => t,
            MappedLabel::Qrfa(QrfaLabel::Q) | MappedLabel::Qrfa(QrfaLabel::R) => {
                UtteranceType::Initiative
            }
            MappedLabel::Qrfa(QrfaLabel::F) | MappedLabel::Qrfa(QrfaLabel::A) => {
                UtteranceType::NonInitiative
            }
        }
    }
}

/// Total mapping from a foreign annotation schema to utterance types or QRFA
/// labels.
///
/// File format: UTF-8 TSV, `foreign_label<TAB>target` per line, `#` starts a
/// comment line. Targets are `H`, `I`, `N`, `B`, `Q`, `R`, `F`, or `A`.
#[derive(Debug, Clone, Default)]
pub struct SchemaMapping {
    map: BTreeMap<String, MappedLabel>,
}

impl SchemaMapping {
    pub fn parse(content: &str, path: &str) -> Result<SchemaMapping, TypingError> {
        let mut map = BTreeMap::new();
        for (line_no, line) in content.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (foreign, target) = trimmed.split_once('\t').ok_or_else(|| TypingError::Parse {
                path: path.to_string(),
                line: line_no + 1,
                message: "expected foreign_label<TAB>target".to_string(),
            })?;
            let target = MappedLabel::parse(target).ok_or_else(|| TypingError::Parse {
                path: path.to_string(),
                line: line_no + 1,
                message: format!("unknown target label {target:?}"),
            })?;
            if map.insert(foreign.trim().to_string(), target).is_some() {
                return Err(TypingError::Parse {
                    path: path.to_string(),
                    line: line_no + 1,
                    message: format!("foreign label {foreign:?} mapped twice"),
                });
            }
        }
        Ok(SchemaMapping { map })
    }

    pub fn from_path(path: &Path) -> Result<SchemaMapping, TypingError> {
        let content = std::fs::read_to_string(path).map_err(|source| TypingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&content, &path.display().to_string())
    }

    /// Bundled MSDialog-Intent mapping.
    pub fn bundled_msdialog_intent() -> SchemaMapping {
        Self::parse(BUNDLED_MSDIALOG_INTENT_MAPPING, "<bundled msdialog-intent>")
            .expect("bundled mapping parses")
    }

    /// Bundled SCSdata mapping.
    pub fn bundled_scsdata() -> SchemaMapping {
        Self::parse(BUNDLED_SCSDATA_MAPPING, "<bundled scsdata>").expect("bundled mapping parses")
    }

    pub fn get(&self, foreign: &str) -> Option<MappedLabel> {
        self.map.get(foreign).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Substitute foreign labels element-wise. Any label missing from the mapping
/// makes the whole call fail, listing every offender once.
pub fn map_schema(
    foreign_labels: &[String],
    mapping: &SchemaMapping,
) -> Result<Vec<MappedLabel>, TypingError> {
    let mut unmapped: Vec<String> = Vec::new();
    let mut out = Vec::with_capacity(foreign_labels.len());
    for label in foreign_labels {
        match mapping.get(label) {
            Some(target) => out.push(target),
            None => {
                if !unmapped.contains(label) {
                    unmapped.push(label.clone());
                }
            }
        }
    }
    if !unmapped.is_empty() {
        return Err(TypingError::UnmappedLabels { labels: unmapped });
    }
    Ok(out)
}

/// Per-class precision, recall, and F1.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassMetrics {
    pub class: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Classification quality report with macro/micro averages and a confusion
/// matrix (rows = gold classes, columns = predicted classes, both in
/// `classes` order).
#[derive(Debug, Clone, PartialEq)]
pub struct TypingReport {
    pub classes: Vec<String>,
    pub per_class: Vec<ClassMetrics>,
    pub macro_f1: f64,
    pub micro_f1: f64,
    pub confusion: Vec<Vec<usize>>,
}

/// Compare predicted labels against gold labels of equal length.
pub fn evaluate<S: AsRef<str>>(predicted: &[S], gold: &[S]) -> Result<TypingReport, TypingError> {
    if predicted.len() != gold.len() {
        return Err(TypingError::LengthMismatch {
            predicted: predicted.len(),
            gold: gold.len(),
        });
    }
    let mut classes: Vec<String> = predicted
        .iter()
        .chain(gold.iter())
        .map(|s| s.as_ref().to_string())
        .collect();
    classes.sort_unstable();
    classes.dedup();

    let index_of = |label: &str| classes.iter().position(|c| c == label).expect("known class");
    let mut confusion = vec![vec![0usize; classes.len()]; classes.len()];
    for (p, g) in predicted.iter().zip(gold.iter()) {
        confusion[index_of(g.as_ref())][index_of(p.as_ref())] += 1;
    }

    let safe_div = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    let mut per_class = Vec::with_capacity(classes.len());
    let mut tp_total = 0usize;
    for (c, class) in classes.iter().enumerate() {
        let tp = confusion[c][c];
        let pred_total: usize = (0..classes.len()).map(|g| confusion[g][c]).sum();
        let gold_total: usize = confusion[c].iter().sum();
        let precision = safe_div(tp as f64, pred_total as f64);
        let recall = safe_div(tp as f64, gold_total as f64);
        let f1 = safe_div(2.0 * precision * recall, precision + recall);
        tp_total += tp;
        per_class.push(ClassMetrics {
            class: class.clone(),
            precision,
            recall,
            f1,
        });
    }
    let macro_f1 = safe_div(
        per_class.iter().map(|m| m.f1).sum::<f64>(),
        per_class.len() as f64,
    );
    // single-label multiclass: micro precision = micro recall = accuracy
    let micro_f1 = safe_div(tp_total as f64, predicted.len() as f64);
    Ok(TypingReport {
        classes,
        per_class,
        macro_f1,
        micro_f1,
        confusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Dialogue, Role, Utterance};

    #[test]
    fn question_mark_is_always_initiative() {
        assert_eq!(
            classify_rule_based("What kind of movies do you like to watch?"),
            UtteranceType::Initiative
        );
        assert_eq!(classify_rule_based("hi?"), UtteranceType::Initiative);
        assert_eq!(classify_rule_based("thanks?  "), UtteranceType::Initiative);
    }

    #[test]
    fn greetings_and_farewells() {
        assert_eq!(classify_rule_based("Hey!"), UtteranceType::Hi);
        assert_eq!(classify_rule_based("Good morning"), UtteranceType::Hi);
        assert_eq!(classify_rule_based("bye!"), UtteranceType::Bye);
        assert_eq!(classify_rule_based("thanks a lot"), UtteranceType::Bye);
        // long thanks sentences are left to the N/I rules
        assert_eq!(
            classify_rule_based("Thanks a lot for your excellent recommendations"),
            UtteranceType::NonInitiative
        );
    }

    #[test]
    fn need_phrases_and_requests_are_initiative() {
        assert_eq!(
            classify_rule_based("I'm looking for some suggestions for good movies."),
            UtteranceType::Initiative
        );
        assert_eq!(
            classify_rule_based("Please help me with this driver."),
            UtteranceType::Initiative
        );
        assert_eq!(
            classify_rule_based("Can you recommend something scary"),
            UtteranceType::Initiative
        );
        assert_eq!(
            classify_rule_based("Those are two really good ones"),
            UtteranceType::NonInitiative
        );
    }

    #[test]
    fn classification_is_deterministic_and_total() {
        for s in ["", "   ", "ok", "why", "hmm..."] {
            assert_eq!(classify_rule_based(s), classify_rule_based(s));
        }
    }

    fn corpus_with_two_utterances() -> Corpus {
        Corpus::new(
            "t",
            vec![Dialogue::new(
                "d1",
                vec![
                    Utterance {
                        index: 0,
                        speaker_id: "u1".into(),
                        role: Some(Role::Seeker),
                        text: "where is it?".into(),
                    },
                    Utterance {
                        index: 1,
                        speaker_id: "u2".into(),
                        role: Some(Role::Assistant),
                        text: "on the shelf".into(),
                    },
                ],
            )],
        )
    }

    #[test]
    fn external_labels_win() {
        let corpus = corpus_with_two_utterances();
        let labels = LabelFile::from_records(vec![
            LabelRecord {
                dialogue_id: "d1".into(),
                utterance_index: 0,
                label: "N".into(),
            },
            LabelRecord {
                dialogue_id: "d1".into(),
                utterance_index: 1,
                label: "initiative".into(),
            },
        ])
        .unwrap();
        let typed = apply_labels(&corpus, &labels, false).unwrap();
        assert_eq!(
            typed[0].types,
            [UtteranceType::NonInitiative, UtteranceType::Initiative]
        );
        assert!(typed[0]
            .provenance
            .iter()
            .all(|p| *p == LabelProvenance::External));
    }

    #[test]
    fn half_coverage_with_fallback_mixes_provenance() {
        let corpus = corpus_with_two_utterances();
        let labels = LabelFile::from_records(vec![LabelRecord {
            dialogue_id: "d1".into(),
            utterance_index: 1,
            label: "N".into(),
        }])
        .unwrap();
        let typed = apply_labels(&corpus, &labels, true).unwrap();
        // utterance 0 ends in '?' so the rule fallback types it I
        assert_eq!(typed[0].types[0], UtteranceType::Initiative);
        assert_eq!(
            typed[0].provenance,
            [LabelProvenance::Rule, LabelProvenance::External]
        );
    }

    #[test]
    fn dangling_dialogue_id_errors_with_the_id() {
        let corpus = corpus_with_two_utterances();
        let labels = LabelFile::from_records(vec![LabelRecord {
            dialogue_id: "nope".into(),
            utterance_index: 0,
            label: "N".into(),
        }])
        .unwrap();
        match apply_labels(&corpus, &labels, true) {
            Err(TypingError::DanglingDialogue { dialogue_id }) => {
                assert_eq!(dialogue_id, "nope")
            }
            other => panic!("expected dangling dialogue, got {other:?}"),
        }
    }

    #[test]
    fn missing_label_without_fallback_errors() {
        let corpus = corpus_with_two_utterances();
        let labels = LabelFile::from_records(vec![]).unwrap();
        assert!(matches!(
            apply_labels(&corpus, &labels, false),
            Err(TypingError::MissingLabel { .. })
        ));
    }

    #[test]
    fn bundled_mapping_covers_the_reference_rows() {
        let mapping = SchemaMapping::bundled_msdialog_intent();
        assert_eq!(
            mapping.get("Original Question"),
            Some(MappedLabel::Qrfa(QrfaLabel::Q))
        );
        assert_eq!(
            mapping.get("Information Request"),
            Some(MappedLabel::Qrfa(QrfaLabel::R))
        );
        assert_eq!(
            mapping.get("Further Details"),
            Some(MappedLabel::Qrfa(QrfaLabel::F))
        );
        // ambiguous labels are intentionally absent
        assert_eq!(mapping.get("Follow Up + Repeat Question"), None);
    }

    #[test]
    fn map_schema_lists_unmapped_labels() {
        let mapping = SchemaMapping::bundled_scsdata();
        let labels: Vec<String> = vec![
            "Access source".into(),
            "Made Up Label".into(),
            "Access source".into(),
            "Another Odd One".into(),
        ];
        match map_schema(&labels, &mapping) {
            Err(TypingError::UnmappedLabels { labels }) => {
                assert_eq!(labels, vec!["Made Up Label", "Another Odd One"]);
            }
            other => panic!("expected unmapped error, got {other:?}"),
        }
    }

    #[test]
    fn map_schema_substitutes_elementwise() {
        let mapping = SchemaMapping::bundled_scsdata();
        let labels: Vec<String> = vec!["Asks to repeat".into(), "Access source".into()];
        let mapped = map_schema(&labels, &mapping).unwrap();
        assert_eq!(
            mapped,
            [
                MappedLabel::Qrfa(QrfaLabel::R),
                MappedLabel::Qrfa(QrfaLabel::Q)
            ]
        );
        assert_eq!(mapped[0].utterance_type(), UtteranceType::Initiative);
    }

    #[test]
    fn evaluate_perfect_agreement() {
        let labels: Vec<&str> = vec!["I", "N", "I", "N", "H", "B", "I", "N", "I", "N"];
        let report = evaluate(&labels, &labels).unwrap();
        assert!(report.per_class.iter().all(|m| m.f1 == 1.0));
        assert_eq!(report.macro_f1, 1.0);
        assert_eq!(report.micro_f1, 1.0);
    }

    #[test]
    fn evaluate_all_n_against_half_i() {
        let predicted = vec!["N"; 10];
        let gold: Vec<&str> = ["I"; 5].iter().chain(["N"; 5].iter()).copied().collect();
        let report = evaluate(&predicted, &gold).unwrap();
        // confusion: gold I -> pred N: 5, gold N -> pred N: 5
        assert_eq!(report.micro_f1, 0.5);
        let n = report.per_class.iter().find(|m| m.class == "N").unwrap();
        assert!((n.precision - 0.5).abs() < 1e-12);
        assert_eq!(n.recall, 1.0);
        let i = report.per_class.iter().find(|m| m.class == "I").unwrap();
        assert_eq!(i.f1, 0.0);
    }

    #[test]
    fn evaluate_disjoint_predictions() {
        let predicted = vec!["A"; 4];
        let gold = vec!["B"; 4];
        let report = evaluate(&predicted, &gold).unwrap();
        assert!(report.per_class.iter().all(|m| m.f1 == 0.0));
        assert_eq!(report.micro_f1, 0.0);
    }

    #[test]
    fn evaluate_length_mismatch() {
        assert!(matches!(
            evaluate(&["I"], &["I", "N"]),
            Err(TypingError::LengthMismatch {
                predicted: 1,
                gold: 2
            })
        ));
    }

    #[test]
    fn confusion_rows_sum_to_gold_counts() {
        let predicted = vec!["I", "N", "N", "I", "H"];
        let gold = vec!["N", "N", "I", "I", "H"];
        let report = evaluate(&predicted, &gold).unwrap();
        for (c, class) in report.classes.iter().enumerate() {
            let row_sum: usize = report.confusion[c].iter().sum();
            let gold_count = gold.iter().filter(|g| *g == class).count();
            assert_eq!(row_sum, gold_count);
        }
    }
}
