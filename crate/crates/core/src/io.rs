//! Reading and writing integer data files.
//!
//! Text: one integer per line; blank lines and `#` comments are ignored.
//! Binary: a little-endian `u64` count followed by that many little-endian
//! `u64` values.

use std::io::{BufRead, Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("line {line}: cannot parse `{content}` as a positive integer")]
    Parse { line: usize, content: String },

    #[error("binary stream truncated: header announces {expected} values, found {found}")]
    Truncated { expected: u64, found: u64 },
}

pub fn read_text<R: BufRead>(reader: R) -> Result<Vec<u64>, DataError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        match content.parse::<u64>() {
            Ok(v) if v >= 1 => out.push(v),
            _ => {
                return Err(DataError::Parse {
                    line: i + 1,
                    content: content.to_string(),
                })
            }
        }
    }
    Ok(out)
}

pub fn write_text<W: Write>(mut writer: W, data: &[u64]) -> std::io::Result<()> {
    for v in data {
        writeln!(writer, "{v}")?;
    }
    writer.flush()
}

pub fn read_binary<R: Read>(mut reader: R) -> Result<Vec<u64>, DataError> {
    let mut word = [0u8; 8];
    reader.read_exact(&mut word)?;
    let expected = u64::from_le_bytes(word);
    let mut out = Vec::new();
    for found in 0..expected {
        match reader.read_exact(&mut word) {
            Ok(()) => out.push(u64::from_le_bytes(word)),
            Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => {
                return Err(DataError::Truncated { expected, found })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn write_binary<W: Write>(mut writer: W, data: &[u64]) -> std::io::Result<()> {
    writer.write_all(&(data.len() as u64).to_le_bytes())?;
    for v in data {
        writer.write_all(&v.to_le_bytes())?;
    }
    writer.flush()
}
