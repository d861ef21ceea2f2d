//! Plain-text S-value cache: one `t,k,twoS` record per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// `(line_number, (t, k, twice_s))`.
pub(super) type Record = (usize, (i64, i64, i64));

/// Parses records, returning `(line_number, (t, k, twice_s))`. Blank lines
/// and lines starting with `#` are skipped.
pub(super) fn parse<R: BufRead>(reader: R) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let bad = |msg: String| Error::CacheFormat { line: i + 1, msg };
        if fields.len() != 3 {
            return Err(bad(format!("expected 3 fields, found {}", fields.len())));
        }
        let mut nums = [0i64; 3];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| bad(format!("not an integer: {f:?}")))?;
        }
        out.push((i + 1, (nums[0], nums[1], nums[2])));
    }
    Ok(out)
}

pub(super) fn write<W: Write>(mut writer: W, entries: &[(i64, i64, i64)]) -> Result<()> {
    for (t, k, v) in entries {
        writeln!(writer, "{t},{k},{v}")?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_skips_comments() {
        let text = "# t,k,twoS\n32,11,-2\n\n5,1, 0\n";
        let recs = parse(text.as_bytes()).unwrap();
        assert_eq!(recs, vec![(2, (32, 11, -2)), (4, (5, 1, 0))]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("1,2\n".as_bytes()).is_err());
        assert!(parse("1,x,3\n".as_bytes()).is_err());
    }
}
