//! Append-only decision journal.
//!
//! One record per line, tab-separated:
//!
//! ```text
//! session_id<TAB>candidate_id<TAB>decision<TAB>timestamp
//! ```
//!
//! The timestamp is UTC in RFC 3339. A record is written with a single
//! `write_all` followed by `sync_data`; a trailing line without its
//! newline is a torn write and is discarded on replay.

use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};

use crate::error::{Error, Result};
use crate::substitution::Decision;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionRecord {
    pub session_id: String,
    pub candidate_id: String,
    pub decision: Decision,
    pub timestamp: String,
}

impl DecisionRecord {
    pub fn now(session_id: &str, candidate_id: &str, decision: Decision) -> DecisionRecord {
        DecisionRecord {
            session_id: session_id.to_string(),
            candidate_id: candidate_id.to_string(),
            decision,
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
        }
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\n",
            self.session_id, self.candidate_id, self.decision, self.timestamp
        )
    }

    pub fn parse_line(line: &str, origin: &str, lineno: usize) -> Result<DecisionRecord> {
        let fields: Vec<&str> = line.split('\t').collect();
        let [session_id, candidate_id, decision, timestamp] = fields.as_slice() else {
            return Err(Error::malformed(origin, lineno, format!("expected 4 fields, got {}", fields.len())));
        };
        chrono::DateTime::parse_from_rfc3339(timestamp)
            .map_err(|e| Error::malformed(origin, lineno, format!("timestamp: {e}")))?;
        Ok(DecisionRecord {
            session_id: session_id.to_string(),
            candidate_id: candidate_id.to_string(),
            decision: decision
                .parse()
                .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?,
            timestamp: timestamp.to_string(),
        })
    }
}

/// Parse the complete records in `bytes`, ignoring a torn final line.
/// Returns the records and the byte length of the complete prefix.
pub fn parse_records(bytes: &[u8], origin: &str) -> Result<(Vec<DecisionRecord>, usize)> {
    let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    let text = std::str::from_utf8(&bytes[..complete])
        .map_err(|e| Error::malformed(origin, 0, format!("journal is not UTF-8: {e}")))?;
    let records = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| DecisionRecord::parse_line(l, origin, i + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok((records, complete))
}

pub fn replay(path: &Path) -> Result<Vec<DecisionRecord>> {
    match fs::read(path) {
        Ok(bytes) => Ok(parse_records(&bytes, &path.display().to_string())?.0),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(Error::io(path, e)),
    }
}

#[derive(Debug)]
pub struct Journal {
    path: PathBuf,
    file: File,
}

impl Journal {
    /// Open (or create) a journal, dropping any torn trailing record so
    /// later appends start on a fresh line. Returns the replayed records.
    pub fn open(path: &Path) -> Result<(Journal, Vec<DecisionRecord>)> {
        let io = |e| Error::io(path, e);
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)
            .map_err(io)?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes).map_err(io)?;
        let (records, complete) = parse_records(&bytes, &path.display().to_string())?;
        if complete < bytes.len() {
            file.set_len(complete as u64).map_err(io)?;
            file.seek(SeekFrom::End(0)).map_err(io)?;
            file.sync_data().map_err(io)?;
        }
        Ok((
            Journal {
                path: path.to_path_buf(),
                file,
            },
            records,
        ))
    }

    pub fn append(&mut self, record: &DecisionRecord) -> Result<()> {
        let line = record.to_line();
        self.file
            .write_all(line.as_bytes())
            .and_then(|()| self.file.sync_data())
            .map_err(|e| Error::io(&self.path, e))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let rec = DecisionRecord {
            session_id: "s0001".into(),
            candidate_id: "c003".into(),
            decision: Decision::Accepted,
            timestamp: "2024-05-01T12:00:00.000Z".into(),
        };
        let line = rec.to_line();
        assert_eq!(line, "s0001\tc003\tAccepted\t2024-05-01T12:00:00.000Z\n");
        assert_eq!(DecisionRecord::parse_line(line.trim_end(), "j", 1).unwrap(), rec);
        assert!(DecisionRecord::parse_line("s\tc\tMaybe\t2024-05-01T12:00:00Z", "j", 1).is_err());
        assert!(DecisionRecord::parse_line("s\tc\tAccepted\tyesterday", "j", 1).is_err());
    }

    #[test]
    fn torn_tail_is_dropped_and_repaired() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("journal.tsv");
        let (mut journal, records) = Journal::open(&path).unwrap();
        assert!(records.is_empty());
        journal.append(&DecisionRecord::now("s1", "c1", Decision::Accepted)).unwrap();
        drop(journal);

        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(b"s1\tc2\tRej").unwrap();
        drop(f);
        assert_eq!(replay(&path).unwrap().len(), 1);

        let (mut journal, records) = Journal::open(&path).unwrap();
        assert_eq!(records.len(), 1);
        journal.append(&DecisionRecord::now("s1", "c2", Decision::Rejected)).unwrap();
        let replayed = replay(&path).unwrap();
        assert_eq!(replayed.len(), 2);
        assert_eq!(replayed[1].decision, Decision::Rejected);
    }
}
