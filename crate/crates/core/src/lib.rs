//! convoshape: structural analytics for two-party dialogue transcripts.
//!
//! The pipeline has three stages:
//!
//! 1. [`ingest`] parses transcript files into a [`model::Corpus`], fills in
//!    missing speaker roles, and splits turns into sentences.
//! 2. [`textprep`] and [`typing`] turn each dialogue into a privacy-preserving
//!    [`model::Fingerprint`]: per-utterance role, type, length, and binary
//!    term-repetition flags. No text survives into the fingerprint.
//! 3. [`flow`] mines turn-level QRFA sequences into flow diagrams and a
//!    Search/Support/Sharing verdict, while [`asymmetry`] condenses each
//!    dataset into a four-dimensional initiative-balance vector for
//!    cross-dataset comparison.

pub mod asymmetry;
pub mod flow;
pub mod ingest;
pub mod model;
pub mod textprep;
pub mod typing;

pub use asymmetry::{
    compare, dataset_asymmetry, delta, embed, emit_scatter, AsymmetryDim, AsymmetryError,
    Comparison, DatasetAsymmetry, DatasetEmbedding, DeltaZeroPolicy, DistanceMetric, RoleMetrics,
};
pub use flow::{
    classify_dataset, classify_dataset_detail, collapse_turns, count_flow, emit_dot, emit_svg,
    sequence_of, to_diagram, to_qrfa, ClassificationDetail, DatasetClass, DiagramSpec, FlowError,
    FlowStats, QrfaLabel, DEFAULT_EPSILON,
};
pub use ingest::{
    infer_roles, load_corpus, segment_sentences, split_sentences, AdapterConfig, IngestError,
    TranscriptFormat,
};
pub use model::{
    validate_corpus, Corpus, Dialogue, Fingerprint, FingerprintRow, Role, Utterance,
    UtteranceType, ValidationIssue,
};
pub use textprep::{
    build_repetition_matrix, build_vocabulary, fingerprint, normalize, DialogueVocabulary,
    PreprocessConfig, StemmerKind, StopwordList, TermSet, TextprepError,
};
pub use typing::{
    apply_labels, classify_rule_based, evaluate, map_schema, LabelFile, LabelRecord, Lexicons,
    MappedLabel, SchemaMapping, TypingError, TypingReport,
};
