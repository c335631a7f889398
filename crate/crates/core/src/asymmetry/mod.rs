//! Initiative asymmetry metrics.
//!
//! Four per-dialogue, per-role measures are read off a fingerprint, each
//! normalized by the utterance count `n`:
//! - volume: characters contributed by the role;
//! - direction: Initiative-typed utterances by the role;
//! - information: vocabulary terms first introduced by the role;
//! - repetition: reuses of terms first used by the other role.
//!
//! Per dialogue, each metric yields a balance ratio
//! `(assistant - seeker) / (assistant + seeker)` in [-1, 1]; the dataset
//! delta is the mean ratio over all dialogues, making a dataset a point in a
//! four-dimensional space.

mod scatter;

pub use scatter::{emit_scatter, ScatterArtifact};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Corpus, Fingerprint, Role, UtteranceType};

#[derive(Debug, Error)]
pub enum AsymmetryError {
    #[error("no dialogues to aggregate")]
    EmptyCorpus,
    #[error("missing fingerprint for dialogue {dialogue_id}")]
    MissingFingerprint { dialogue_id: String },
    #[error("need at least two embeddings to compare, got {got}")]
    NeedTwo { got: usize },
}

/// Mean characters per utterance slot contributed by `role`. Greeting and
/// farewell rows count toward both the sum and the divisor `n`.
pub fn volume(fingerprint: &Fingerprint, role: Role) -> f64 {
    let n = fingerprint.n();
    if n == 0 {
        return 0.0;
    }
    let sum: u64 = fingerprint
        .rows
        .iter()
        .filter(|r| r.role == role)
        .map(|r| r.length_chars as u64)
        .sum();
    sum as f64 / n as f64
}

/// Fraction of utterances that are Initiative-typed and spoken by `role`.
pub fn direction(fingerprint: &Fingerprint, role: Role) -> f64 {
    let n = fingerprint.n();
    if n == 0 {
        return 0.0;
    }
    let count = fingerprint
        .rows
        .iter()
        .filter(|r| r.role == role && r.utype == UtteranceType::Initiative)
        .count();
    count as f64 / n as f64
}

/// Fraction of vocabulary terms coined by `role`: columns whose first nonzero
/// row belongs to the role, over `n`.
pub fn information(fingerprint: &Fingerprint, role: Role) -> f64 {
    let n = fingerprint.n();
    if n == 0 {
        return 0.0;
    }
    let mut count = 0u64;
    for k in 0..fingerprint.vocab_size {
        let coiner = fingerprint
            .rows
            .iter()
            .find(|r| r.repetition_flags[k] == 1)
            .map(|r| r.role);
        if coiner == Some(role) {
            count += 1;
        }
    }
    count as f64 / n as f64
}

/// Fraction of repetition-matrix entries where `role` reuses a term some
/// earlier utterance of the other role already used, over `n`. Each
/// (utterance, term) reuse counts once.
pub fn repetition(fingerprint: &Fingerprint, role: Role) -> f64 {
    let n = fingerprint.n();
    if n == 0 {
        return 0.0;
    }
    let mut count = 0u64;
    for (j, row) in fingerprint.rows.iter().enumerate() {
        if row.role != role {
            continue;
        }
        for k in 0..fingerprint.vocab_size {
            if row.repetition_flags[k] != 1 {
                continue;
            }
            let foreign_earlier = fingerprint.rows[..j]
                .iter()
                .any(|g| g.role != role && g.repetition_flags[k] == 1);
            if foreign_earlier {
                count += 1;
            }
        }
    }
    count as f64 / n as f64
}

/// All four measures for one role of one dialogue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoleMetrics {
    pub volume: f64,
    pub direction: f64,
    pub information: f64,
    pub repetition: f64,
}

pub fn role_metrics(fingerprint: &Fingerprint, role: Role) -> RoleMetrics {
    RoleMetrics {
        volume: volume(fingerprint, role),
        direction: direction(fingerprint, role),
        information: information(fingerprint, role),
        repetition: repetition(fingerprint, role),
    }
}

/// How a dialogue where both roles score zero contributes to a delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaZeroPolicy {
    /// Count the dialogue as exactly balanced (ratio 0).
    #[default]
    ContributeZero,
    /// Leave the dialogue out of the mean.
    Exclude,
}

impl DeltaZeroPolicy {
    pub fn parse(s: &str) -> Option<DeltaZeroPolicy> {
        match s {
            "contribute-zero" => Some(DeltaZeroPolicy::ContributeZero),
            "exclude" => Some(DeltaZeroPolicy::Exclude),
            _ => None,
        }
    }
}

impl fmt::Display for DeltaZeroPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaZeroPolicy::ContributeZero => "contribute-zero",
            DeltaZeroPolicy::Exclude => "exclude",
        })
    }
}

/// A dataset delta with the number of dialogues that had a nonzero
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaResult {
    pub value: f64,
    pub dialogues_used: usize,
}

/// Sum by recursive halving. Splitting at the midpoint makes the sum of a
/// list concatenated with itself exactly twice the sum of the list, so
/// duplicating a corpus cannot move a delta even in the last bit.
fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Aggregate per-dialogue `(assistant, seeker)` values into a dataset delta
/// in [-1, 1]; 0 is exact balance, +1 assistant dominance, -1 seeker
/// dominance.
pub fn delta(
    pairs: &[(f64, f64)],
    policy: DeltaZeroPolicy,
) -> Result<DeltaResult, AsymmetryError> {
    if pairs.is_empty() {
        return Err(AsymmetryError::EmptyCorpus);
    }
    let mut ratios = Vec::with_capacity(pairs.len());
    let mut used = 0usize;
    for &(assistant, seeker) in pairs {
        let denom = assistant + seeker;
        if denom == 0.0 {
            if policy == DeltaZeroPolicy::ContributeZero {
                ratios.push(0.0);
            }
        } else {
            used += 1;
            ratios.push((assistant - seeker) / denom);
        }
    }
    if ratios.is_empty() {
        return Ok(DeltaResult {
            value: 0.0,
            dialogues_used: 0,
        });
    }
    let mean = pairwise_sum(&ratios) / ratios.len() as f64;
    Ok(DeltaResult {
        // each ratio is within [-1, 1]; the clamp only absorbs summation
        // rounding
        value: mean.clamp(-1.0, 1.0),
        dialogues_used: used,
    })
}

/// Dialogue counts that entered each metric's average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialoguesUsed {
    pub volume: usize,
    pub direction: usize,
    pub information: usize,
    pub repetition: usize,
}

/// Dataset-level asymmetry deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetAsymmetry {
    pub delta_volume: f64,
    pub delta_direction: f64,
    pub delta_information: f64,
    pub delta_repetition: f64,
    /// Total dialogues in the dataset.
    pub d: usize,
    pub d_used: DialoguesUsed,
}

/// Compute all four deltas over a set of fingerprints.
pub fn dataset_asymmetry(
    fingerprints: &[Fingerprint],
    policy: DeltaZeroPolicy,
) -> Result<DatasetAsymmetry, AsymmetryError> {
    if fingerprints.is_empty() {
        return Err(AsymmetryError::EmptyCorpus);
    }
    let collect = |f: fn(&Fingerprint, Role) -> f64| -> Vec<(f64, f64)> {
        fingerprints
            .iter()
            .map(|fp| (f(fp, Role::Assistant), f(fp, Role::Seeker)))
            .collect()
    };
    let vol = delta(&collect(volume), policy)?;
    let dir = delta(&collect(direction), policy)?;
    let inf = delta(&collect(information), policy)?;
    let rep = delta(&collect(repetition), policy)?;
    Ok(DatasetAsymmetry {
        delta_volume: vol.value,
        delta_direction: dir.value,
        delta_information: inf.value,
        delta_repetition: rep.value,
        d: fingerprints.len(),
        d_used: DialoguesUsed {
            volume: vol.dialogues_used,
            direction: dir.dialogues_used,
            information: inf.dialogues_used,
            repetition: rep.dialogues_used,
        },
    })
}

/// One of the four delta dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymmetryDim {
    Volume,
    Direction,
    Information,
    Repetition,
}

impl AsymmetryDim {
    pub const ALL: [AsymmetryDim; 4] = [
        AsymmetryDim::Volume,
        AsymmetryDim::Direction,
        AsymmetryDim::Information,
        AsymmetryDim::Repetition,
    ];

    pub fn parse(s: &str) -> Option<AsymmetryDim> {
        match s {
            "volume" => Some(AsymmetryDim::Volume),
            "direction" => Some(AsymmetryDim::Direction),
            "information" => Some(AsymmetryDim::Information),
            "repetition" => Some(AsymmetryDim::Repetition),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AsymmetryDim::Volume => "volume",
            AsymmetryDim::Direction => "direction",
            AsymmetryDim::Information => "information",
            AsymmetryDim::Repetition => "repetition",
        }
    }

    /// Axis label with the delta prefix.
    pub fn axis_label(self) -> &'static str {
        match self {
            AsymmetryDim::Volume => "\u{0394}Volume",
            AsymmetryDim::Direction => "\u{0394}Direction",
            AsymmetryDim::Information => "\u{0394}Information",
            AsymmetryDim::Repetition => "\u{0394}Repetition",
        }
    }

    fn idx(self) -> usize {
        match self {
            AsymmetryDim::Volume => 0,
            AsymmetryDim::Direction => 1,
            AsymmetryDim::Information => 2,
            AsymmetryDim::Repetition => 3,
        }
    }
}

impl fmt::Display for AsymmetryDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dataset as a point in the four-dimensional delta space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetEmbedding {
    pub name: String,
    /// (volume, direction, information, repetition)
    pub vector: [f64; 4],
}

impl DatasetEmbedding {
    pub fn new(name: impl Into<String>, asymmetry: &DatasetAsymmetry) -> DatasetEmbedding {
        DatasetEmbedding {
            name: name.into(),
            vector: [
                asymmetry.delta_volume,
                asymmetry.delta_direction,
                asymmetry.delta_information,
                asymmetry.delta_repetition,
            ],
        }
    }

    pub fn component(&self, dim: AsymmetryDim) -> f64 {
        self.vector[dim.idx()]
    }
}

/// Embed a corpus: compute the deltas over fingerprints that must cover every
/// dialogue of the corpus.
pub fn embed(
    corpus: &Corpus,
    fingerprints: &[Fingerprint],
    policy: DeltaZeroPolicy,
) -> Result<DatasetEmbedding, AsymmetryError> {
    for dialogue in &corpus.dialogues {
        if !fingerprints.iter().any(|fp| fp.dialogue_id == dialogue.id) {
            return Err(AsymmetryError::MissingFingerprint {
                dialogue_id: dialogue.id.clone(),
            });
        }
    }
    let asymmetry = dataset_asymmetry(fingerprints, policy)?;
    Ok(DatasetEmbedding::new(corpus.name.clone(), &asymmetry))
}

/// Distance function for dataset comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    #[default]
    Euclidean,
    Cosine,
}

impl DistanceMetric {
    pub fn parse(s: &str) -> Option<DistanceMetric> {
        match s {
            "euclidean" => Some(DistanceMetric::Euclidean),
            "cosine" => Some(DistanceMetric::Cosine),
            _ => None,
        }
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMetric::Euclidean => "euclidean",
            DistanceMetric::Cosine => "cosine",
        })
    }
}

fn distance(a: &[f64; 4], b: &[f64; 4], metric: DistanceMetric) -> Option<f64> {
    match metric {
        DistanceMetric::Euclidean => Some(
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
        ),
        DistanceMetric::Cosine => {
            let dot: f64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
            let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if na == 0.0 || nb == 0.0 {
                None
            } else {
                Some(1.0 - dot / (na * nb))
            }
        }
    }
}

/// Pairwise distances and nearest-neighbor rankings.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub metric: DistanceMetric,
    pub names: Vec<String>,
    /// Symmetric with a zero diagonal; `None` marks an undefined distance
    /// (cosine against a zero vector).
    pub matrix: Vec<Vec<Option<f64>>>,
    /// For each dataset, the other datasets ordered by ascending distance,
    /// ties broken by name; undefined pairs are left out.
    pub neighbors: Vec<Vec<usize>>,
    pub undefined_pairs: Vec<(String, String)>,
}

/// Compare at least two embeddings under the chosen metric.
pub fn compare(
    embeddings: &[DatasetEmbedding],
    metric: DistanceMetric,
) -> Result<Comparison, AsymmetryError> {
    if embeddings.len() < 2 {
        return Err(AsymmetryError::NeedTwo {
            got: embeddings.len(),
        });
    }
    let n = embeddings.len();
    let mut matrix = vec![vec![Some(0.0); n]; n];
    let mut undefined_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(&embeddings[i].vector, &embeddings[j].vector, metric);
            matrix[i][j] = d;
            matrix[j][i] = d;
            if d.is_none() {
                undefined_pairs.push((embeddings[i].name.clone(), embeddings[j].name.clone()));
            }
        }
    }
    let mut neighbors = Vec::with_capacity(n);
    for i in 0..n {
        let mut ranked: Vec<(f64, &str, usize)> = (0..n)
            .filter(|&j| j != i)
            .filter_map(|j| matrix[i][j].map(|d| (d, embeddings[j].name.as_str(), j)))
            .collect();
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
        neighbors.push(ranked.into_iter().map(|(_, _, j)| j).collect());
    }
    Ok(Comparison {
        metric,
        names: embeddings.iter().map(|e| e.name.clone()).collect(),
        matrix,
        neighbors,
        undefined_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FingerprintRow;

    use Role::{Assistant as A, Seeker as S};
    use UtteranceType::{Hi, Initiative as I, NonInitiative as N};

    fn row(role: Role, utype: UtteranceType, len: usize, flags: &[u8]) -> FingerprintRow {
        FingerprintRow {
            role,
            utype,
            length_chars: len,
            repetition_flags: flags.to_vec(),
        }
    }

    /// The nine-row movie-chat fingerprint used across the test suite.
    pub(crate) fn movie_chat_fingerprint() -> Fingerprint {
        Fingerprint {
            dialogue_id: "movie-chat".into(),
            rows: vec![
                row(A, Hi, 4, &[0, 0]),
                row(A, I, 41, &[1, 0]),
                row(S, N, 42, &[0, 0]),
                row(A, I, 30, &[1, 0]),
                row(A, I, 56, &[0, 0]),
                row(A, N, 30, &[0, 0]),
                row(S, N, 44, &[0, 1]),
                row(A, N, 41, &[0, 0]),
                row(A, N, 32, &[0, 1]),
            ],
            vocab_size: 2,
        }
    }

    #[test]
    fn volume_sums_lengths_by_role_over_n() {
        let fp = movie_chat_fingerprint();
        assert_eq!(volume(&fp, A), 234.0 / 9.0);
        assert_eq!(volume(&fp, S), 86.0 / 9.0);
    }

    #[test]
    fn volume_of_absent_role_is_zero() {
        let fp = Fingerprint {
            dialogue_id: "d".into(),
            rows: vec![row(A, N, 10, &[])],
            vocab_size: 0,
        };
        assert_eq!(volume(&fp, S), 0.0);
    }

    #[test]
    fn direction_counts_initiative_rows() {
        let fp = movie_chat_fingerprint();
        assert_eq!(direction(&fp, A), 3.0 / 9.0);
        assert_eq!(direction(&fp, S), 0.0);
    }

    #[test]
    fn direction_is_one_for_all_initiative_single_role() {
        let fp = Fingerprint {
            dialogue_id: "d".into(),
            rows: vec![row(S, I, 5, &[]), row(S, I, 5, &[])],
            vocab_size: 0,
        };
        assert_eq!(direction(&fp, S), 1.0);
    }

    #[test]
    fn information_credits_the_coiner() {
        let fp = movie_chat_fingerprint();
        assert_eq!(information(&fp, A), 1.0 / 9.0);
        assert_eq!(information(&fp, S), 1.0 / 9.0);
    }

    #[test]
    fn information_zero_without_vocabulary() {
        let fp = Fingerprint {
            dialogue_id: "d".into(),
            rows: vec![row(S, I, 5, &[])],
            vocab_size: 0,
        };
        assert_eq!(information(&fp, S), 0.0);
        assert_eq!(information(&fp, A), 0.0);
    }

    #[test]
    fn repetition_counts_foreign_reuse_only() {
        let fp = movie_chat_fingerprint();
        // the assistant reuses the seeker's term once; its own-term reuse
        // (column 0, rows 1 and 3) contributes nothing
        assert_eq!(repetition(&fp, A), 1.0 / 9.0);
        assert_eq!(repetition(&fp, S), 0.0);
    }

    #[test]
    fn self_repetition_is_excluded() {
        let fp = Fingerprint {
            dialogue_id: "d".into(),
            rows: vec![
                row(S, N, 5, &[1]),
                row(S, N, 5, &[1]),
                row(S, N, 5, &[1]),
            ],
            vocab_size: 1,
        };
        assert_eq!(repetition(&fp, S), 0.0);
    }

    #[test]
    fn delta_examples() {
        let policy = DeltaZeroPolicy::ContributeZero;
        let d = delta(&[(42.0, 10.0)], policy).unwrap();
        assert!((d.value - 32.0 / 52.0).abs() < 1e-12);
        assert_eq!(delta(&[(0.33, 0.0)], policy).unwrap().value, 1.0);
        assert_eq!(delta(&[(0.11, 0.11)], policy).unwrap().value, 0.0);
        assert!(delta(&[], policy).is_err());
    }

    #[test]
    fn delta_zero_policy_differs_on_degenerate_dialogues() {
        let pairs = [(1.0, 0.0), (0.0, 0.0)];
        let contribute = delta(&pairs, DeltaZeroPolicy::ContributeZero).unwrap();
        assert_eq!(contribute.value, 0.5);
        assert_eq!(contribute.dialogues_used, 1);
        let exclude = delta(&pairs, DeltaZeroPolicy::Exclude).unwrap();
        assert_eq!(exclude.value, 1.0);
        assert_eq!(exclude.dialogues_used, 1);
    }

    #[test]
    fn all_degenerate_dialogues_give_zero() {
        let pairs = [(0.0, 0.0); 3];
        for policy in [DeltaZeroPolicy::ContributeZero, DeltaZeroPolicy::Exclude] {
            let d = delta(&pairs, policy).unwrap();
            assert_eq!(d.value, 0.0);
            assert_eq!(d.dialogues_used, 0);
        }
    }

    #[test]
    fn mirrored_corpus_embeds_at_the_origin() {
        let fp = movie_chat_fingerprint();
        let mut mirrored = fp.role_swapped();
        mirrored.dialogue_id = "movie-chat-mirror".into();
        let asym =
            dataset_asymmetry(&[fp, mirrored], DeltaZeroPolicy::ContributeZero).unwrap();
        assert_eq!(asym.delta_volume, 0.0);
        assert_eq!(asym.delta_direction, 0.0);
        assert_eq!(asym.delta_information, 0.0);
        assert_eq!(asym.delta_repetition, 0.0);
    }

    #[test]
    fn qa_pair_corpus_direction_is_minus_one() {
        let dialogue = Fingerprint {
            dialogue_id: "qa".into(),
            rows: vec![
                row(S, I, 20, &[]),
                row(A, N, 20, &[]),
                row(S, I, 20, &[]),
                row(A, N, 20, &[]),
            ],
            vocab_size: 0,
        };
        let asym =
            dataset_asymmetry(&[dialogue], DeltaZeroPolicy::ContributeZero).unwrap();
        assert_eq!(asym.delta_direction, -1.0);
        assert_eq!(asym.delta_volume, 0.0);
    }

    #[test]
    fn embed_requires_full_coverage() {
        let corpus = Corpus::new(
            "c",
            vec![crate::model::Dialogue::new(
                "d1",
                vec![crate::model::Utterance {
                    index: 0,
                    speaker_id: "u".into(),
                    role: Some(S),
                    text: "x".into(),
                }],
            )],
        );
        let err = embed(&corpus, &[], DeltaZeroPolicy::ContributeZero).unwrap_err();
        assert!(matches!(err, AsymmetryError::MissingFingerprint { .. }));
    }

    fn emb(name: &str, v: [f64; 4]) -> DatasetEmbedding {
        DatasetEmbedding {
            name: name.into(),
            vector: v,
        }
    }

    #[test]
    fn identical_embeddings_have_zero_distance() {
        let e = emb("a", [0.1, 0.2, 0.3, 0.4]);
        let mut f = e.clone();
        f.name = "b".into();
        let cmp = compare(&[e, f], DistanceMetric::Euclidean).unwrap();
        assert_eq!(cmp.matrix[0][1], Some(0.0));
        assert_eq!(cmp.matrix[1][0], Some(0.0));
        assert_eq!(cmp.matrix[0][0], Some(0.0));
    }

    #[test]
    fn unit_vectors_are_sqrt_two_apart() {
        let cmp = compare(
            &[
                emb("a", [1.0, 0.0, 0.0, 0.0]),
                emb("b", [0.0, 1.0, 0.0, 0.0]),
            ],
            DistanceMetric::Euclidean,
        )
        .unwrap();
        assert!((cmp.matrix[0][1].unwrap() - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn neighbors_are_argmin_rows_with_name_tiebreak() {
        let embeddings = [
            emb("a", [0.0, 0.0, 0.0, 0.0]),
            emb("b", [1.0, 0.0, 0.0, 0.0]),
            emb("c", [0.5, 0.0, 0.0, 0.0]),
        ];
        let cmp = compare(&embeddings, DistanceMetric::Euclidean).unwrap();
        for i in 0..3 {
            // brute-force argmin over the row
            let brute = (0..3)
                .filter(|&j| j != i)
                .min_by(|&x, &y| {
                    cmp.matrix[i][x]
                        .unwrap()
                        .total_cmp(&cmp.matrix[i][y].unwrap())
                        .then_with(|| embeddings[x].name.cmp(&embeddings[y].name))
                })
                .unwrap();
            assert_eq!(cmp.neighbors[i][0], brute);
        }
    }

    #[test]
    fn cosine_zero_vector_is_reported_and_excluded() {
        let cmp = compare(
            &[
                emb("zero", [0.0; 4]),
                emb("x", [1.0, 0.0, 0.0, 0.0]),
                emb("y", [0.0, 1.0, 0.0, 0.0]),
            ],
            DistanceMetric::Cosine,
        )
        .unwrap();
        assert_eq!(cmp.matrix[0][1], None);
        assert_eq!(cmp.undefined_pairs.len(), 2);
        // "zero" ranks nobody it cannot be measured against
        assert_eq!(cmp.neighbors[1], vec![2]);
    }

    #[test]
    fn compare_needs_two() {
        assert!(matches!(
            compare(&[emb("a", [0.0; 4])], DistanceMetric::Euclidean),
            Err(AsymmetryError::NeedTwo { got: 1 })
        ));
    }
}
