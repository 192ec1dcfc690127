//! JSON persistence for correlator tables.
//!
//! The canonical file layout is one record per line:
//!
//! ```text
//! {
//!   "version": 1,
//!   "count": 2,
//!   "records": [
//!     {"g":0,"a":[0,0,0],"value":"1"},
//!     {"g":1,"a":[1],"value":"1/24"}
//!   ]
//! }
//! ```
//!
//! Records are sorted by `(2g - 2 + n, g, a)` with `a` descending and values
//! in lowest terms, so loading and re-saving a valid file reproduces it byte
//! for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::correlator::{CorrelatorKey, CorrelatorTable};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheRecord {
    pub g: u32,
    pub a: Vec<i64>,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    version: u32,
    count: usize,
    records: Vec<CacheRecord>,
}

/// Records for every entry of `table`, in export order.
pub fn records(table: &CorrelatorTable) -> Vec<CacheRecord> {
    table
        .entries()
        .into_iter()
        .map(|(k, v)| CacheRecord {
            g: k.genus(),
            a: k.exponents().iter().map(|&a| a as i64).collect(),
            value: v.to_string(),
        })
        .collect()
}

/// Canonical cache document for `table`.
pub fn to_json(table: &CorrelatorTable) -> String {
    let recs = records(table);
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"version\": {CACHE_VERSION},\n"));
    out.push_str(&format!("  \"count\": {},\n", recs.len()));
    if recs.is_empty() {
        out.push_str("  \"records\": []\n}\n");
        return out;
    }
    out.push_str("  \"records\": [\n");
    for (i, r) in recs.iter().enumerate() {
        out.push_str("    ");
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push_str(if i + 1 < recs.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

/// Parses and validates a cache document into a fresh table.
///
/// Rejects unknown versions, count mismatches, non-canonical keys or
/// values, out-of-order or duplicate records. Diagnostics carry the record
/// index and, for the canonical layout, its line number.
pub fn from_json(text: &str) -> Result<CorrelatorTable> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| {
        Error::CacheFormat(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    if file.version != CACHE_VERSION {
        return Err(Error::CacheFormat(format!(
            "unsupported version {} (expected {CACHE_VERSION})",
            file.version
        )));
    }
    if file.count != file.records.len() {
        return Err(Error::CacheFormat(format!(
            "count is {} but {} records present",
            file.count,
            file.records.len()
        )));
    }

    let table = CorrelatorTable::new();
    let mut prev: Option<CorrelatorKey> = None;
    for (i, rec) in file.records.iter().enumerate() {
        let fail = |msg: String| {
            let at = match record_line(text, i) {
                Some(line) => format!("record {i} (line {line})"),
                None => format!("record {i}"),
            };
            Error::CacheFormat(format!("{at}: {msg}"))
        };
        let exps = rec
            .a
            .iter()
            .map(|&x| u32::try_from(x).map_err(|_| fail(format!("negative exponent {x}"))))
            .collect::<Result<Vec<_>>>()?;
        let key = CorrelatorKey::new(rec.g, &exps).map_err(|e| fail(e.to_string()))?;
        if key.exponents() != exps.as_slice() {
            return Err(fail("exponents not sorted descending".into()));
        }
        let value = Rational::parse_canonical(&rec.value)
            .map_err(|_| fail(format!("value {:?} is not a reduced p/q", rec.value)))?;
        if let Some(p) = &prev {
            if p.export_order() >= key.export_order() {
                return Err(fail("records out of order or duplicated".into()));
            }
        }
        table.insert(key.clone(), value).map_err(|e| fail(e.to_string()))?;
        prev = Some(key);
    }
    Ok(table)
}

// Line of the i-th record in the canonical layout (records are the lines
// carrying a "g" key).
fn record_line(text: &str, index: usize) -> Option<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.contains("\"g\""))
        .nth(index)
        .map(|(n, _)| n + 1)
}

pub fn save(table: &CorrelatorTable, path: &Path) -> Result<()> {
    fs::write(path, to_json(table))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<CorrelatorTable> {
    let text = fs::read_to_string(path)?;
    from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlator::correlator_shell;

    #[test]
    fn round_trip_is_byte_identical() {
        let table = correlator_shell(4);
        let text = to_json(&table);
        let back = from_json(&text).unwrap();
        assert_eq!(back.entries(), table.entries());
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn canonical_layout() {
        let text = to_json(&correlator_shell(1));
        assert_eq!(
            text,
            "{\n  \"version\": 1,\n  \"count\": 2,\n  \"records\": [\n    \
             {\"g\":0,\"a\":[0,0,0],\"value\":\"1\"},\n    \
             {\"g\":1,\"a\":[1],\"value\":\"1/24\"}\n  ]\n}\n"
        );
    }

    #[test]
    fn empty_table() {
        let text = to_json(&CorrelatorTable::new());
        assert!(from_json(&text).unwrap().is_empty());
    }

    fn expect_format_error(text: &str, needle: &str) {
        match from_json(text) {
            Err(Error::CacheFormat(msg)) => assert!(msg.contains(needle), "{msg}"),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unreduced_value() {
        let text = to_json(&correlator_shell(1)).replace("\"1/24\"", "\"2/48\"");
        expect_format_error(&text, "record 1 (line 6)");
    }

    #[test]
    fn rejects_bad_documents() {
        let good = to_json(&correlator_shell(2));
        expect_format_error(&good.replace("\"count\": 5", "\"count\": 4"), "count");
        expect_format_error(&good.replace("\"version\": 1", "\"version\": 2"), "version");
        expect_format_error(&good.replace("[1,0,0,0]", "[0,1,0,0]"), "sorted");
        expect_format_error(&good.replace("[2,0]", "[2,-1]"), "record");
        expect_format_error("{ \"version\": 1,", "line");
        expect_format_error(
            &good.replace("{\"g\":1,\"a\":[1],", "{\"g\":1,\"a\":[1,0],"),
            "record 1",
        );
        let swapped = good.replace(
            "{\"g\":1,\"a\":[1,1],\"value\":\"1/24\"},\n    {\"g\":1,\"a\":[2,0],\"value\":\"1/24\"}",
            "{\"g\":1,\"a\":[2,0],\"value\":\"1/24\"},\n    {\"g\":1,\"a\":[1,1],\"value\":\"1/24\"}",
        );
        assert_ne!(swapped, good);
        expect_format_error(&swapped, "out of order");
    }
}
