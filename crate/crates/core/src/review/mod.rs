//! Human review of substitution candidates.

pub mod http;
pub mod journal;
pub mod store;

pub use journal::{DecisionRecord, Journal};
pub use store::{dataset_tsv, DatasetRow, ReviewSession, ReviewStore, SessionCandidate};
pub use http::{router, serve, ApiError, AppState};

/// Default listen address for the review service.
pub const DEFAULT_LISTEN: &str = "127.0.0.1:8470";
