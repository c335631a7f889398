//! Dialogue flow mining: QRFA sequences, turn collapsing, n-gram statistics,
//! and the Search/Support/Sharing dataset classification.

mod diagram;

pub use diagram::{emit_dot, emit_svg, stats_json, to_diagram, DiagramSpec, Node};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Fingerprint, Role, UtteranceType};

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("no analyzable turns")]
    NoAnalyzableTurns,
}

/// Turn-level label: Question and Feedback belong to the Seeker, Request and
/// Answer to the Assistant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QrfaLabel {
    Q,
    R,
    F,
    A,
}

impl QrfaLabel {
    pub const ALL: [QrfaLabel; 4] = [QrfaLabel::Q, QrfaLabel::R, QrfaLabel::F, QrfaLabel::A];

    pub fn tag(self) -> &'static str {
        match self {
            QrfaLabel::Q => "Q",
            QrfaLabel::R => "R",
            QrfaLabel::F => "F",
            QrfaLabel::A => "A",
        }
    }

    pub fn from_tag(tag: &str) -> Option<QrfaLabel> {
        match tag {
            "Q" => Some(QrfaLabel::Q),
            "R" => Some(QrfaLabel::R),
            "F" => Some(QrfaLabel::F),
            "A" => Some(QrfaLabel::A),
            _ => None,
        }
    }

    pub fn role(self) -> Role {
        match self {
            QrfaLabel::Q | QrfaLabel::F => Role::Seeker,
            QrfaLabel::R | QrfaLabel::A => Role::Assistant,
        }
    }

    pub fn carries_initiative(self) -> bool {
        matches!(self, QrfaLabel::Q | QrfaLabel::R)
    }

    fn idx(self) -> usize {
        match self {
            QrfaLabel::Q => 0,
            QrfaLabel::R => 1,
            QrfaLabel::F => 2,
            QrfaLabel::A => 3,
        }
    }
}

impl fmt::Display for QrfaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Map a role/type pair onto QRFA. Greetings and farewells carry no label.
pub fn qrfa_of(role: Role, utype: UtteranceType) -> Option<QrfaLabel> {
    match (role, utype) {
        (Role::Seeker, UtteranceType::Initiative) => Some(QrfaLabel::Q),
        (Role::Seeker, UtteranceType::NonInitiative) => Some(QrfaLabel::F),
        (Role::Assistant, UtteranceType::Initiative) => Some(QrfaLabel::R),
        (Role::Assistant, UtteranceType::NonInitiative) => Some(QrfaLabel::A),
        (_, UtteranceType::Hi | UtteranceType::Bye) => None,
    }
}

/// Per-utterance QRFA labels of a fingerprint; H/B rows yield `None`.
pub fn to_qrfa(fingerprint: &Fingerprint) -> Vec<Option<QrfaLabel>> {
    fingerprint
        .rows
        .iter()
        .map(|row| qrfa_of(row.role, row.utype))
        .collect()
}

/// Collapse labeled utterances to one label per turn.
///
/// Rows with no label (greetings/farewells) are dropped first; the remaining
/// rows are grouped into maximal runs of the same role. A turn is labeled
/// Q/R when any of its utterances carries initiative, F/A otherwise. Because
/// unlabeled turns vanish before grouping, the result strictly alternates
/// roles.
pub fn collapse_turns(rows: &[(Role, Option<QrfaLabel>)]) -> Vec<QrfaLabel> {
    let mut out: Vec<QrfaLabel> = Vec::new();
    let mut current: Option<(Role, bool)> = None; // (role, any initiative)
    let flush = |current: &mut Option<(Role, bool)>, out: &mut Vec<QrfaLabel>| {
        if let Some((role, initiative)) = current.take() {
            out.push(match (role, initiative) {
                (Role::Seeker, true) => QrfaLabel::Q,
                (Role::Seeker, false) => QrfaLabel::F,
                (Role::Assistant, true) => QrfaLabel::R,
                (Role::Assistant, false) => QrfaLabel::A,
            });
        }
    };
    for &(role, label) in rows {
        let Some(label) = label else { continue };
        match &mut current {
            Some((turn_role, initiative)) if *turn_role == role => {
                *initiative |= label.carries_initiative();
            }
            _ => {
                flush(&mut current, &mut out);
                current = Some((role, label.carries_initiative()));
            }
        }
    }
    flush(&mut current, &mut out);
    out
}

/// Turn-collapsed QRFA sequence of a fingerprint.
pub fn sequence_of(fingerprint: &Fingerprint) -> Vec<QrfaLabel> {
    let rows: Vec<(Role, Option<QrfaLabel>)> = fingerprint
        .rows
        .iter()
        .map(|row| (row.role, qrfa_of(row.role, row.utype)))
        .collect();
    collapse_turns(&rows)
}

/// Dataset-level unigram/bigram counts over turn-collapsed QRFA sequences,
/// including start (`<X`) and end (`X>`) markers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowStats {
    /// Number of sequences counted (non-empty after collapsing).
    pub dialogue_count: u64,
    /// Sequences skipped because nothing in them was analyzable.
    pub skipped: u64,
    pub unigrams: [u64; 4],
    pub starts: [u64; 4],
    pub ends: [u64; 4],
    /// `pairs[from][to]` in Q, R, F, A order.
    pub pairs: [[u64; 4]; 4],
}

impl FlowStats {
    pub fn unigram(&self, label: QrfaLabel) -> u64 {
        self.unigrams[label.idx()]
    }

    pub fn start(&self, label: QrfaLabel) -> u64 {
        self.starts[label.idx()]
    }

    pub fn end(&self, label: QrfaLabel) -> u64 {
        self.ends[label.idx()]
    }

    pub fn pair(&self, from: QrfaLabel, to: QrfaLabel) -> u64 {
        self.pairs[from.idx()][to.idx()]
    }

    pub fn unigram_total(&self) -> u64 {
        self.unigrams.iter().sum()
    }

    /// Largest label-to-label bigram count.
    pub fn max_pair(&self) -> u64 {
        self.pairs
            .iter()
            .flat_map(|row| row.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    fn observe(&mut self, sequence: &[QrfaLabel]) {
        if sequence.is_empty() {
            self.skipped += 1;
            return;
        }
        self.dialogue_count += 1;
        self.starts[sequence[0].idx()] += 1;
        self.ends[sequence[sequence.len() - 1].idx()] += 1;
        for label in sequence {
            self.unigrams[label.idx()] += 1;
        }
        for pair in sequence.windows(2) {
            self.pairs[pair[0].idx()][pair[1].idx()] += 1;
        }
    }

    /// Combine partial counts; associative and commutative, so partial stats
    /// from parallel workers merge to the same result in any order.
    pub fn merge(&mut self, other: &FlowStats) {
        self.dialogue_count += other.dialogue_count;
        self.skipped += other.skipped;
        for i in 0..4 {
            self.unigrams[i] += other.unigrams[i];
            self.starts[i] += other.starts[i];
            self.ends[i] += other.ends[i];
            for j in 0..4 {
                self.pairs[i][j] += other.pairs[i][j];
            }
        }
    }
}

/// Count unigrams and bigrams over turn-collapsed sequences. Empty sequences
/// are skipped and tallied in [`FlowStats::skipped`].
pub fn count_flow(sequences: &[Vec<QrfaLabel>]) -> FlowStats {
    let mut stats = FlowStats::default();
    for sequence in sequences {
        stats.observe(sequence);
    }
    stats
}

/// Replace the unigram counts of `stats` with counts over per-utterance
/// labels, for the utterance-basis variant of box opacities. Bigram, start,
/// and end counts keep their turn basis.
pub fn with_utterance_unigrams(
    mut stats: FlowStats,
    per_utterance: &[Vec<Option<QrfaLabel>>],
) -> FlowStats {
    stats.unigrams = [0; 4];
    for labels in per_utterance {
        for label in labels.iter().flatten() {
            stats.unigrams[label.idx()] += 1;
        }
    }
    stats
}

/// Dataset class by dominant initiative direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetClass {
    Search,
    Support,
    Sharing,
}

impl fmt::Display for DatasetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetClass::Search => "search",
            DatasetClass::Support => "support",
            DatasetClass::Sharing => "sharing",
        })
    }
}

/// The values behind a [`classify_dataset`] verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDetail {
    /// QA bigram count normalized by the maximum bigram count.
    pub qa: f64,
    /// RF bigram count normalized by the maximum bigram count.
    pub rf: f64,
    pub relative_difference: f64,
    pub epsilon: f64,
    pub class: DatasetClass,
}

/// Classify a dataset as Search, Support, or Sharing.
///
/// Both the QA and RF bigram counts are put on the diagram's opacity scale
/// (divided by the maximum bigram count); the verdict only depends on their
/// relative difference, so the common normalizer cancels out. A relative
/// difference of at most `epsilon` is Sharing, otherwise the larger side
/// decides: more QA means Search, more RF means Support.
pub fn classify_dataset_detail(stats: &FlowStats, epsilon: f64) -> ClassificationDetail {
    let max_pair = stats.max_pair();
    let scale = |count: u64| {
        if max_pair == 0 {
            0.0
        } else {
            count as f64 / max_pair as f64
        }
    };
    let qa = scale(stats.pair(QrfaLabel::Q, QrfaLabel::A));
    let rf = scale(stats.pair(QrfaLabel::R, QrfaLabel::F));
    let relative_difference = if qa + rf == 0.0 {
        0.0
    } else {
        (qa - rf).abs() / (qa + rf)
    };
    let class = if relative_difference <= epsilon {
        DatasetClass::Sharing
    } else if qa > rf {
        DatasetClass::Search
    } else {
        DatasetClass::Support
    };
    ClassificationDetail {
        qa,
        rf,
        relative_difference,
        epsilon,
        class,
    }
}

/// Default Sharing threshold on the relative QA/RF difference.
pub const DEFAULT_EPSILON: f64 = 0.05;

pub fn classify_dataset(stats: &FlowStats, epsilon: f64) -> DatasetClass {
    classify_dataset_detail(stats, epsilon).class
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FingerprintRow;

    fn fp(rows: &[(Role, UtteranceType)]) -> Fingerprint {
        Fingerprint {
            dialogue_id: "d".into(),
            rows: rows
                .iter()
                .map(|&(role, utype)| FingerprintRow {
                    role,
                    utype,
                    length_chars: 1,
                    repetition_flags: vec![],
                })
                .collect(),
            vocab_size: 0,
        }
    }

    use Role::{Assistant as A, Seeker as S};
    use UtteranceType::{Bye, Hi, Initiative as I, NonInitiative as N};

    #[test]
    fn qrfa_mapping_matches_the_schema() {
        assert_eq!(qrfa_of(S, I), Some(QrfaLabel::Q));
        assert_eq!(qrfa_of(S, N), Some(QrfaLabel::F));
        assert_eq!(qrfa_of(A, I), Some(QrfaLabel::R));
        assert_eq!(qrfa_of(A, N), Some(QrfaLabel::A));
        assert_eq!(qrfa_of(S, Hi), None);
        assert_eq!(qrfa_of(A, Bye), None);
    }

    #[test]
    fn all_greetings_dialogue_has_no_labels() {
        let f = fp(&[(A, Hi), (S, Hi), (A, Bye)]);
        assert!(to_qrfa(&f).iter().all(Option::is_none));
        assert!(sequence_of(&f).is_empty());
    }

    #[test]
    fn alternating_single_utterance_turns_collapse_to_themselves() {
        let f = fp(&[(S, I), (A, N), (S, I), (A, N)]);
        assert_eq!(
            sequence_of(&f),
            [QrfaLabel::Q, QrfaLabel::A, QrfaLabel::Q, QrfaLabel::A]
        );
    }

    #[test]
    fn initiative_dominates_within_a_turn() {
        let rows = [
            (A, Some(QrfaLabel::A)),
            (A, Some(QrfaLabel::R)),
            (A, Some(QrfaLabel::A)),
        ];
        assert_eq!(collapse_turns(&rows), [QrfaLabel::R]);
    }

    #[test]
    fn vanished_turns_merge_their_neighbors() {
        // assistant, seeker-greeting-only, assistant: one collapsed turn
        let rows = [
            (A, Some(QrfaLabel::R)),
            (S, None),
            (A, Some(QrfaLabel::A)),
        ];
        assert_eq!(collapse_turns(&rows), [QrfaLabel::R]);
    }

    #[test]
    fn count_flow_single_qa_dialogue() {
        use QrfaLabel::*;
        let stats = count_flow(&[vec![Q, A]]);
        assert_eq!(stats.dialogue_count, 1);
        assert_eq!(stats.unigram(Q), 1);
        assert_eq!(stats.unigram(A), 1);
        assert_eq!(stats.start(Q), 1);
        assert_eq!(stats.end(A), 1);
        assert_eq!(stats.pair(Q, A), 1);
        assert_eq!(stats.pair(A, Q), 0);
    }

    #[test]
    fn count_flow_accumulates_across_dialogues() {
        use QrfaLabel::*;
        let stats = count_flow(&[vec![Q, A, Q, A], vec![Q, A]]);
        assert_eq!(stats.dialogue_count, 2);
        assert_eq!(stats.pair(Q, A), 3);
        assert_eq!(stats.pair(A, Q), 1);
    }

    #[test]
    fn empty_sequences_are_skipped_and_tallied() {
        use QrfaLabel::*;
        let stats = count_flow(&[vec![], vec![Q]]);
        assert_eq!(stats.dialogue_count, 1);
        assert_eq!(stats.skipped, 1);
    }

    #[test]
    fn merge_is_the_same_as_counting_together() {
        use QrfaLabel::*;
        let first = vec![vec![Q, A], vec![R, F, A]];
        let second = vec![vec![Q, R, F], vec![]];
        let mut merged = count_flow(&first);
        merged.merge(&count_flow(&second));
        let all: Vec<Vec<QrfaLabel>> = first.into_iter().chain(second).collect();
        assert_eq!(merged, count_flow(&all));
    }

    #[test]
    fn pure_qa_corpus_is_search() {
        use QrfaLabel::*;
        let stats = count_flow(&vec![vec![Q, A]; 10]);
        let detail = classify_dataset_detail(&stats, DEFAULT_EPSILON);
        assert_eq!(detail.class, DatasetClass::Search);
        assert_eq!(detail.qa, 1.0);
        assert_eq!(detail.rf, 0.0);
    }

    #[test]
    fn zero_over_zero_is_sharing() {
        use QrfaLabel::*;
        let stats = count_flow(&[vec![Q], vec![A]]);
        assert_eq!(classify_dataset(&stats, 0.0), DatasetClass::Sharing);
    }

    #[test]
    fn rf_dominant_corpus_is_support() {
        // qa = 0.56, rf = 0.82 on the opacity scale (max bigram is FA = 100)
        use QrfaLabel::*;
        let mut sequences = Vec::new();
        sequences.extend(std::iter::repeat_n(vec![Q, A], 56));
        sequences.extend(std::iter::repeat_n(vec![R, F], 82));
        sequences.extend(std::iter::repeat_n(vec![F, A], 100));
        let stats = count_flow(&sequences);
        let detail = classify_dataset_detail(&stats, DEFAULT_EPSILON);
        assert!((detail.qa - 0.56).abs() < 1e-12);
        assert!((detail.rf - 0.82).abs() < 1e-12);
        assert_eq!(detail.class, DatasetClass::Support);
    }

    #[test]
    fn epsilon_zero_requires_exact_tie_for_sharing() {
        use QrfaLabel::*;
        let stats = count_flow(&[vec![Q, A], vec![R, F]]);
        assert_eq!(classify_dataset(&stats, 0.0), DatasetClass::Sharing);
        let stats = count_flow(&[vec![Q, A], vec![Q, A], vec![R, F]]);
        assert_ne!(classify_dataset(&stats, 0.0), DatasetClass::Sharing);
    }

    #[test]
    fn utterance_basis_recounts_unigrams_only() {
        use QrfaLabel::*;
        let collapsed = vec![vec![R, F]];
        let per_utterance = vec![vec![None, Some(R), Some(R), Some(F)]];
        let stats = with_utterance_unigrams(count_flow(&collapsed), &per_utterance);
        assert_eq!(stats.unigram(R), 2);
        assert_eq!(stats.unigram(F), 1);
        assert_eq!(stats.pair(R, F), 1);
    }
}
