//! The `.trn` text format and the skew-matrix text form.
//!
//! `.trn`: line 1 is the order `n`, line 2 holds `n(n−1)/2` characters of
//! `0`/`1` in row-major upper-triangle order; `1` at `(i,j)` means `v_i → v_j`.
//! The skew form is `n` whitespace-separated rows of `n` entries in {−1,0,1}.
//! Blank lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::tournament::Tournament;

pub fn to_trn(t: &Tournament) -> String {
    format!("{}\n{}\n", t.order(), bit_string(t))
}

/// The orientation bit string alone (line 2 of `.trn`).
pub fn bit_string(t: &Tournament) -> String {
    t.row_major_bits()
        .into_iter()
        .map(|b| if b { '1' } else { '0' })
        .collect()
}

/// `"n bits"` on a single line, used inside reports.
pub fn to_trn_inline(t: &Tournament) -> String {
    format!("{} {}", t.order(), bit_string(t))
}

pub fn to_skew_text(t: &Tournament) -> String {
    let n = t.order();
    let mut s = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                let v = if i == j { 0 } else { t.sign(i, j) };
                format!("{v:>2}")
            })
            .collect();
        s.push_str(row.join(" ").trim_start());
        s.push('\n');
    }
    s
}

/// Parses either form, detected from the first content line: a single
/// positive integer starts `.trn`, anything else is a skew matrix.
/// The one-line `"n bits"` form produced by [`to_trn_inline`] is accepted too.
pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let first = lines
        .first()
        .ok_or_else(|| Error::Parse("empty tournament text".into()))?;
    let tokens: Vec<&str> = first.split_whitespace().collect();
    if tokens.len() == 2 && lines.len() == 1 && is_bit_string(tokens[1]) {
        return parse_trn_parts(tokens[0], tokens[1]);
    }
    if tokens.len() == 1 {
        if let Ok(n) = tokens[0].parse::<usize>() {
            if n >= 1 {
                let bits = match lines.len() {
                    1 => "",
                    2 => lines[1],
                    _ => return Err(Error::Parse(".trn text has more than two lines".into())),
                };
                return parse_trn_parts(tokens[0], bits);
            }
        }
    }
    parse_skew(&lines)
}

fn is_bit_string(s: &str) -> bool {
    s.chars().all(|c| c == '0' || c == '1')
}

fn parse_trn_parts(n_text: &str, bits: &str) -> Result<Tournament> {
    let n: usize = n_text
        .parse()
        .map_err(|_| Error::Parse(format!("bad order {n_text:?}")))?;
    let parsed: Vec<bool> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!(
                "unexpected character {other:?} in bit string"
            ))),
        })
        .collect::<Result<_>>()?;
    Tournament::from_row_major_bits(n, &parsed).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_skew(lines: &[&str]) -> Result<Tournament> {
    let rows: Vec<Vec<i64>> = lines
        .iter()
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {tok:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Tournament::from_skew_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
}
