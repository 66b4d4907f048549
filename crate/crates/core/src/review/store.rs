//! Review sessions and their recovery from disk.
//!
//! A data directory holds two append-only files: `sessions.jsonl` (one
//! session per line, written once at creation) and `journal.tsv` (the
//! decision journal). Candidate statuses are never stored directly; they
//! are rebuilt by replaying the journal over the stored sessions.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::journal::{DecisionRecord, Journal};
use crate::error::{Error, Result};
use crate::scoring::Resources;
use crate::substitution::{apply_substitution, generate_candidates, review, Decision, ReviewStatus, SubstitutionCandidate};
use crate::text::Title;

pub const SESSIONS_FILE: &str = "sessions.jsonl";
pub const JOURNAL_FILE: &str = "journal.tsv";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitleText {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionCandidate {
    pub candidate_id: String,
    pub original_text: String,
    pub treatment_text: String,
    #[serde(flatten)]
    pub candidate: SubstitutionCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionEntry {
    pub candidate_id: String,
    pub decision: Decision,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewSession {
    pub session_id: String,
    pub titles: Vec<TitleText>,
    pub candidates: Vec<SessionCandidate>,
    #[serde(default)]
    pub decisions: Vec<DecisionEntry>,
}

impl ReviewSession {
    pub fn candidate(&self, candidate_id: &str) -> Option<&SessionCandidate> {
        self.candidates.iter().find(|c| c.candidate_id == candidate_id)
    }

    pub fn candidates_with(&self, status: Option<ReviewStatus>) -> Vec<&SessionCandidate> {
        self.candidates
            .iter()
            .filter(|c| status.is_none_or(|s| c.candidate.status == s))
            .collect()
    }

    pub fn statuses(&self) -> BTreeMap<&str, ReviewStatus> {
        self.candidates
            .iter()
            .map(|c| (c.candidate_id.as_str(), c.candidate.status))
            .collect()
    }

    fn apply(&mut self, record: &DecisionRecord) -> Result<SessionCandidate> {
        let slot = self
            .candidates
            .iter_mut()
            .find(|c| c.candidate_id == record.candidate_id)
            .ok_or_else(|| Error::UnknownCandidate(record.candidate_id.clone()))?;
        slot.candidate = review(&slot.candidate, record.decision)
            .map_err(|_| Error::AlreadyReviewed(record.candidate_id.clone()))?;
        self.decisions.push(DecisionEntry {
            candidate_id: record.candidate_id.clone(),
            decision: record.decision,
            timestamp: record.timestamp.clone(),
        });
        Ok(slot.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub original: String,
    pub treatment: String,
}

/// Two tab-separated columns under the header `ORIGINAL`, `TREATMENT`.
pub fn dataset_tsv(rows: &[DatasetRow]) -> String {
    let mut writer = csv::WriterBuilder::new().delimiter(b'\t').from_writer(Vec::new());
    writer.write_record(["ORIGINAL", "TREATMENT"]).expect("in-memory write");
    for row in rows {
        writer
            .write_record([row.original.as_str(), row.treatment.as_str()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Build candidates for a batch of titles, numbered `c001, c002, ...`
/// in title order and rank order within each title.
pub fn session_candidates(titles: &[Title], resources: &Resources) -> Result<Vec<SessionCandidate>> {
    let mut out = Vec::new();
    for title in titles {
        for candidate in generate_candidates(title, resources)? {
            let treatment = apply_substitution(title, &candidate)?;
            out.push(SessionCandidate {
                candidate_id: format!("c{:03}", out.len() + 1),
                original_text: title.raw.clone(),
                treatment_text: treatment.raw,
                candidate,
            });
        }
    }
    Ok(out)
}

#[derive(Debug)]
struct Persistence {
    sessions_path: PathBuf,
    sessions_file: File,
    journal: Journal,
}

/// Sessions plus the decision journal; single writer.
#[derive(Debug)]
pub struct ReviewStore {
    resources: Arc<Resources>,
    sessions: BTreeMap<String, ReviewSession>,
    next_id: u64,
    disk: Option<Persistence>,
}

fn session_number(id: &str) -> Option<u64> {
    id.strip_prefix('s')?.parse().ok()
}

impl ReviewStore {
    pub fn in_memory(resources: Arc<Resources>) -> ReviewStore {
        ReviewStore {
            resources,
            sessions: BTreeMap::new(),
            next_id: 1,
            disk: None,
        }
    }

    /// Open a data directory, replaying the journal over stored sessions.
    pub fn open(dir: &Path, resources: Arc<Resources>) -> Result<ReviewStore> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let sessions_path = dir.join(SESSIONS_FILE);
        let mut store = ReviewStore::in_memory(resources);

        let bytes = match fs::read(&sessions_path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(Error::io(&sessions_path, e)),
        };
        let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let origin = sessions_path.display().to_string();
        let text = std::str::from_utf8(&bytes[..complete])
            .map_err(|e| Error::malformed(origin.as_str(), 0, e.to_string()))?;
        for (idx, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let mut session: ReviewSession =
                serde_json::from_str(line).map_err(|e| Error::malformed(origin.as_str(), idx + 1, e.to_string()))?;
            session.decisions.clear();
            store.next_id = store.next_id.max(session_number(&session.session_id).unwrap_or(0) + 1);
            store.sessions.insert(session.session_id.clone(), session);
        }
        let sessions_file = OpenOptions::new()
            .append(true)
            .create(true)
            .open(&sessions_path)
            .map_err(|e| Error::io(&sessions_path, e))?;
        if complete < bytes.len() {
            sessions_file
                .set_len(complete as u64)
                .map_err(|e| Error::io(&sessions_path, e))?;
        }

        let (journal, records) = Journal::open(&dir.join(JOURNAL_FILE))?;
        for record in &records {
            store.apply(record)?;
        }
        store.disk = Some(Persistence {
            sessions_path,
            sessions_file,
            journal,
        });
        Ok(store)
    }

    pub fn resources(&self) -> &Arc<Resources> {
        &self.resources
    }

    fn apply(&mut self, record: &DecisionRecord) -> Result<SessionCandidate> {
        self.sessions
            .get_mut(&record.session_id)
            .ok_or_else(|| Error::UnknownSession(record.session_id.clone()))?
            .apply(record)
    }

    pub fn create_session(&mut self, titles: Vec<Title>) -> Result<&ReviewSession> {
        let candidates = session_candidates(&titles, &self.resources)?;
        let session = ReviewSession {
            session_id: format!("s{:04}", self.next_id),
            titles: titles
                .into_iter()
                .map(|t| TitleText { id: t.id, text: t.raw })
                .collect(),
            candidates,
            decisions: Vec::new(),
        };
        if let Some(disk) = &mut self.disk {
            let mut line = serde_json::to_string(&session)?;
            line.push('\n');
            disk.sessions_file
                .write_all(line.as_bytes())
                .and_then(|()| disk.sessions_file.sync_data())
                .map_err(|e| Error::io(&disk.sessions_path, e))?;
        }
        self.next_id += 1;
        let id = session.session_id.clone();
        Ok(self.sessions.entry(id).or_insert(session))
    }

    pub fn session(&self, session_id: &str) -> Result<&ReviewSession> {
        self.sessions
            .get(session_id)
            .ok_or_else(|| Error::UnknownSession(session_id.to_string()))
    }

    pub fn sessions(&self) -> impl Iterator<Item = &ReviewSession> {
        self.sessions.values()
    }

    /// Journal the decision first, then update in-memory state.
    pub fn record_decision(&mut self, session_id: &str, candidate_id: &str, decision: Decision) -> Result<SessionCandidate> {
        let session = self.session(session_id)?;
        let current = session
            .candidate(candidate_id)
            .ok_or_else(|| Error::UnknownCandidate(candidate_id.to_string()))?;
        if current.candidate.status != ReviewStatus::Pending {
            return Err(Error::AlreadyReviewed(candidate_id.to_string()));
        }
        let record = DecisionRecord::now(session_id, candidate_id, decision);
        if let Some(disk) = &mut self.disk {
            disk.journal.append(&record)?;
        }
        self.apply(&record)
    }

    /// Accepted candidates as (original, treatment) pairs, in session order.
    pub fn export_dataset(&self, session_id: &str) -> Result<Vec<DatasetRow>> {
        Ok(self
            .session(session_id)?
            .candidates_with(Some(ReviewStatus::Accepted))
            .into_iter()
            .map(|c| DatasetRow {
                original: c.original_text.clone(),
                treatment: c.treatment_text.clone(),
            })
            .collect())
    }
}
