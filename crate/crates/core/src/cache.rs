//! On-disk memo files.
//!
//! The format is line-oriented text. The first line is `CH-MEMO 1`; every
//! following line is one record of six space-separated fields:
//!
//! ```text
//! <kind> <d> <delta> <alpha> <beta> <value>
//! T 4 3 0 4 675
//! I 4 3 0 4 620
//! ```
//!
//! `kind` is `T` (total) or `I` (irreducible), sequences use the
//! comma-separated rendering of [`TangencySeq`], and the value is decimal.
//! Records are sorted by `(kind, d, δ, α, β)` with `T` first, so equal stores
//! always serialize to identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::memo::{Kind, MemoStore};
use crate::seq::TangencySeq;
use crate::severi::SeveriKey;

pub const HEADER: &str = "CH-MEMO 1";
const MAGIC: &str = "CH-MEMO";
const VERSION: &str = "1";

pub fn render(memo: &MemoStore) -> String {
    let mut out = String::with_capacity(32 * (memo.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for (kind, key, value) in memo.entries() {
        let _ = writeln!(
            out,
            "{kind} {} {} {} {} {value}",
            key.d, key.delta, key.alpha, key.beta
        );
    }
    out
}

pub fn save(memo: &MemoStore, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render(memo)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(path: impl AsRef<Path>) -> Result<MemoStore> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|reason| Error::Corruption {
        path: path.display().to_string(),
        reason,
    })
}

/// Parses the contents of a memo file; the error names the offending line.
pub fn parse(text: &str) -> Result<MemoStore, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) => {
            let mut parts = header.split(' ');
            if parts.next() != Some(MAGIC) {
                return Err(format!("missing {HEADER:?} header, found {header:?}"));
            }
            let version = parts.next().unwrap_or("");
            if version != VERSION || parts.next().is_some() {
                return Err(format!(
                    "unsupported format version {version:?}, expected {VERSION}"
                ));
            }
        }
        None => return Err("empty file".into()),
    }

    let memo = MemoStore::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let (kind, key, value) = parse_record(line).map_err(|e| format!("line {lineno}: {e}"))?;
        if let Err(reason) = key.validate() {
            return Err(format!(
                "line {lineno}: record {line:?} has an invalid key: {reason}"
            ));
        }
        if memo.insert(kind, key, value).is_err() {
            return Err(format!(
                "line {lineno}: record {line:?} conflicts with an earlier record"
            ));
        }
    }
    Ok(memo)
}

fn parse_record(line: &str) -> Result<(Kind, SeveriKey, BigUint), String> {
    let fields: Vec<&str> = line.split(' ').collect();
    let [kind, d, delta, alpha, beta, value] = fields[..] else {
        return Err(format!(
            "expected 6 fields, found {} in {line:?}",
            fields.len()
        ));
    };
    let kind = Kind::from_tag(kind).ok_or_else(|| format!("unknown record kind {kind:?}"))?;
    let d: u32 = d.parse().map_err(|_| format!("bad degree {d:?}"))?;
    let delta: u32 = delta
        .parse()
        .map_err(|_| format!("bad node count {delta:?}"))?;
    let alpha: TangencySeq = alpha.parse().map_err(|e| format!("{e}"))?;
    let beta: TangencySeq = beta.parse().map_err(|e| format!("{e}"))?;
    let value: BigUint = value.parse().map_err(|_| format!("bad value {value:?}"))?;
    Ok((kind, SeveriKey::new(d, delta, alpha, beta), value))
}

/// Union of two stores into a fresh one; conflicting values are an error.
pub fn merge(a: &MemoStore, b: &MemoStore) -> Result<MemoStore> {
    let out = MemoStore::new();
    out.merge(a)?;
    out.merge(b)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> SeveriKey {
        SeveriKey::classical(4, 3)
    }

    #[test]
    fn empty_store_is_header_only() {
        assert_eq!(render(&MemoStore::new()), "CH-MEMO 1\n");
    }

    #[test]
    fn record_lines() {
        let m = MemoStore::new();
        m.insert(Kind::Irreducible, quartic(), 620u32.into())
            .unwrap();
        m.insert(Kind::Total, quartic(), 675u32.into()).unwrap();
        let key = SeveriKey::new(
            3,
            1,
            TangencySeq::new(vec![1]),
            TangencySeq::new(vec![0, 1]),
        );
        m.insert(Kind::Total, key, 16u32.into()).unwrap();
        assert_eq!(
            render(&m),
            "CH-MEMO 1\nT 3 1 1 0,1 16\nT 4 3 0 4 675\nI 4 3 0 4 620\n"
        );
        assert!(parse(&render(&m)).unwrap().same_contents(&m));
    }

    #[test]
    fn corrupt_inputs() {
        assert!(parse("").is_err());
        assert!(parse("CH-MEMO 2\n").unwrap_err().contains("version"));
        assert!(parse("NOPE 1\n").is_err());
        assert!(parse("CH-MEMO 1\nT 4 3 0 4\n")
            .unwrap_err()
            .contains("line 2"));
        assert!(parse("CH-MEMO 1\nX 4 3 0 4 675\n").is_err());
        assert!(parse("CH-MEMO 1\nT 4 3 0 4 -675\n").is_err());
        assert!(parse("CH-MEMO 1\nT 4 3 1 4 675\n")
            .unwrap_err()
            .contains("invalid key"));
        let conflict = parse("CH-MEMO 1\nT 4 3 0 4 675\nT 4 3 0 4 676\n").unwrap_err();
        assert!(conflict.contains("line 3") && conflict.contains("T 4 3 0 4 676"));
        // An exact repeat carries no conflicting information.
        assert_eq!(
            parse("CH-MEMO 1\nT 4 3 0 4 675\nT 4 3 0 4 675\n")
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn merge_conflict_is_an_error() {
        let a = MemoStore::new();
        a.insert(Kind::Total, quartic(), 675u32.into()).unwrap();
        let b = MemoStore::new();
        b.insert(Kind::Total, quartic(), 674u32.into()).unwrap();
        assert!(merge(&a, &MemoStore::new()).unwrap().same_contents(&a));
        assert!(matches!(merge(&a, &b), Err(Error::Integrity(_))));
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = load("/nonexistent/dir/memo.txt").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/memo.txt"));
    }
}
