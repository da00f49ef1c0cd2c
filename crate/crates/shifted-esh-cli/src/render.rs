//! Text rendering of shifted tableaux as staircase-aligned grids, and the
//! inverse parser.
//!
//! Row `r` is indented by `r` cells. Cells of the inner shape print as `.`
//! (`·` in the unicode style), the marker as `X` (`⊠`), letters as usual with
//! primes as apostrophes. Every cell is padded to a common width.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use shifted_esh::shifted_core::{Letter, MarkedTableau, ShiftedSkewShape, StrictPartition};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

impl Style {
    fn inner(self) -> &'static str {
        match self {
            Style::Ascii => ".",
            Style::Unicode => "·",
        }
    }

    fn marker(self) -> &'static str {
        match self {
            Style::Ascii => "X",
            Style::Unicode => "⊠",
        }
    }
}

/// Renders `t` as a grid, one line per row, each line ending in a newline.
/// The empty tableau renders as the empty string.
pub fn render_tableau(t: &MarkedTableau, style: Style) -> String {
    let shape = t.shape();
    let outer = shape.outer();
    let inner = shape.inner();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for r in 0..outer.len() {
        let row = (r..r + outer.part(r))
            .map(|c| {
                if c < r + inner.part(r) {
                    style.inner().to_string()
                } else if t.marker() == Some((r, c)) {
                    style.marker().to_string()
                } else {
                    t.get((r, c)).map(|l| l.to_string()).unwrap_or_else(|| "?".into())
                }
            })
            .collect();
        rows.push(row);
    }
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for (r, row) in rows.iter().enumerate() {
        let mut line = " ".repeat(r * (width + 1));
        let cells: Vec<String> = row.iter().map(|s| format!("{s:<width$}")).collect();
        line.push_str(&cells.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Parses the grid format written by [`render_tableau`] (either style).
/// Indentation is ignored: row `r` always starts in column `r`.
pub fn parse_tableau(text: &str) -> Result<MarkedTableau> {
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    let mut entries = BTreeMap::new();
    let mut marker = None;
    for (r, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let dots = tokens.iter().take_while(|t| **t == "." || **t == "·").count();
        for (k, tok) in tokens.iter().enumerate().skip(dots) {
            let cell = (r, r + k);
            match *tok {
                "." | "·" => bail!("row {}: inner cell after a filled cell", r + 1),
                "X" | "⊠" => {
                    if marker.replace(cell).is_some() {
                        bail!("more than one marker");
                    }
                }
                other => {
                    let l: Letter = other.parse().with_context(|| format!("row {}, cell {}", r + 1, k + 1))?;
                    entries.insert(cell, l);
                }
            }
        }
        outer.push(tokens.len());
        inner.push(dots);
    }
    while inner.last() == Some(&0) {
        inner.pop();
    }
    let shape = ShiftedSkewShape::new(StrictPartition::new(outer)?, StrictPartition::new(inner)?)?;
    Ok(MarkedTableau::new(shape, entries, marker)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use shifted_esh::shifted_core::Word;

    fn sample_tableau() -> MarkedTableau {
        let word: Word = "3 1 1 1' 2 1' 1 2'".parse().unwrap();
        MarkedTableau::from_reading_word("6,4,2,1/3,2".parse().unwrap(), &word).unwrap()
    }

    #[test]
    fn rows_shift_right_one_cell_each() {
        let text = render_tableau(&sample_tableau(), Style::Ascii);
        assert_eq!(text, ".  .  .  1' 1  2'\n   .  .  1' 2\n      1  1\n         3\n");
    }

    #[test]
    fn empty_tableau_renders_empty() {
        let t = MarkedTableau::new(ShiftedSkewShape::straight(StrictPartition::empty()), BTreeMap::new(), None).unwrap();
        assert_eq!(render_tableau(&t, Style::Unicode), "");
    }

    #[test]
    fn parse_inverts_render_in_both_styles() {
        let t = MarkedTableau::from_word(&"3 2 3 3' 4 2' 2 3 2' 2' 1 2 1 X 1' 1 2 1 1 1 1 1 1".parse().unwrap()).unwrap();
        for style in [Style::Ascii, Style::Unicode] {
            for u in [sample_tableau(), t.clone()] {
                let text = render_tableau(&u, style);
                let back = parse_tableau(&text).unwrap();
                assert_eq!(back, u);
                assert_eq!(render_tableau(&back, style), text);
            }
        }
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(parse_tableau("1 1''\n").is_err());
        assert!(parse_tableau("X 1 X\n").is_err());
    }
}
