//! Words, codes and the three distance functions everything else builds on.
//!
//! For words `x` and `y` of equal length, `N(x, y)` counts the positions where
//! `x` is strictly larger than `y`. The asymmetric distance is the smaller of
//! the two directed counts, and the Hamming distance is their sum. A code with
//! minimum asymmetric distance `T` corrects `T - 1` symmetric errors and
//! detects every unidirectional error.
//!
//! Codes are also read and written in a small text format:
//!
//! ```text
//! # comment
//! q n a
//! 01221
//! 10122
//! ```
//!
//! Symbols are single digits when `q <= 10` and space-separated decimals
//! otherwise.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_Q: u16 = 256;

/// A fixed-length word over the alphabet `{0, ..., q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: u16,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(q: u16, symbols: Vec<u8>) -> Result<Self> {
        check_q(q)?;
        if symbols.is_empty() {
            return Err(Error::param("word length must be at least 1"));
        }
        if let Some((i, &s)) = symbols.iter().enumerate().find(|(_, &s)| u16::from(s) >= q) {
            return Err(Error::param(format!(
                "symbol {s} at position {i} is outside the alphabet of size {q}"
            )));
        }
        Ok(Word { q, symbols })
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Componentwise `q - 1 - x`.
    pub fn complement(&self) -> Word {
        let top = (self.q - 1) as u8;
        Word {
            q: self.q,
            symbols: self.symbols.iter().map(|&s| top - s).collect(),
        }
    }

    /// True when `self >= other` componentwise.
    pub fn covers(&self, other: &Word) -> Result<bool> {
        Ok(count_above(other, self)? == 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbols(self.q, &self.symbols))
    }
}

fn check_q(q: u16) -> Result<()> {
    if !(2..=MAX_Q).contains(&q) {
        return Err(Error::param(format!(
            "alphabet size must be in 2..={MAX_Q}, got {q}"
        )));
    }
    Ok(())
}

fn check_pair(x: &Word, y: &Word) -> Result<()> {
    if x.q != y.q {
        return Err(Error::param(format!(
            "alphabet mismatch: {} vs {}",
            x.q, y.q
        )));
    }
    if x.len() != y.len() {
        return Err(Error::param(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

// Unchecked slice kernels. Callers guarantee equal lengths.

#[inline]
pub(crate) fn above(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a > b).count()
}

#[inline]
pub(crate) fn directed_pair(x: &[u8], y: &[u8]) -> (usize, usize) {
    let mut up = 0;
    let mut down = 0;
    for (a, b) in x.iter().zip(y) {
        up += usize::from(a > b);
        down += usize::from(a < b);
    }
    (up, down)
}

#[inline]
pub(crate) fn asym(x: &[u8], y: &[u8]) -> usize {
    let (up, down) = directed_pair(x, y);
    up.min(down)
}

#[inline]
pub(crate) fn differ(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// `N(x, y)`: the number of positions where `x` exceeds `y`.
pub fn count_above(x: &Word, y: &Word) -> Result<usize> {
    check_pair(x, y)?;
    Ok(above(&x.symbols, &y.symbols))
}

/// `min(N(x, y), N(y, x))`.
pub fn asymmetric_distance(x: &Word, y: &Word) -> Result<usize> {
    check_pair(x, y)?;
    Ok(asym(&x.symbols, &y.symbols))
}

/// Number of positions where `x` and `y` differ.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    check_pair(x, y)?;
    Ok(differ(&x.symbols, &y.symbols))
}

/// Pairwise minima of a code, with the lexicographically smallest index pair
/// that attains the minimum asymmetric distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceSummary {
    pub min_asymmetric: usize,
    pub min_hamming: usize,
    pub arg_pair: (usize, usize),
}

/// A set of distinct equal-length words over one alphabet.
#[derive(Clone)]
pub struct Code {
    q: u16,
    n: usize,
    words: Vec<Word>,
    summary: OnceLock<Option<DistanceSummary>>,
}

impl Code {
    /// Builds a code from raw symbol rows. Rejects duplicates, ragged rows and
    /// out-of-range symbols.
    pub fn from_rows(q: u16, rows: Vec<Vec<u8>>) -> Result<Self> {
        check_q(q)?;
        let words = rows
            .into_iter()
            .map(|r| Word::new(q, r))
            .collect::<Result<Vec<_>>>()?;
        Code::new(q, words)
    }

    pub fn new(q: u16, words: Vec<Word>) -> Result<Self> {
        check_q(q)?;
        let Some(first) = words.first() else {
            return Err(Error::param("a code needs at least one word"));
        };
        let n = first.len();
        let mut seen = HashSet::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.q != q {
                return Err(Error::param(format!(
                    "word {i} has alphabet {} but the code has {q}",
                    w.q
                )));
            }
            if w.len() != n {
                return Err(Error::param(format!(
                    "word {i} has length {} but the code has length {n}",
                    w.len()
                )));
            }
            if !seen.insert(&w.symbols) {
                return Err(Error::param(format!("word {i} ({w}) is a duplicate")));
            }
        }
        Ok(Code {
            q,
            n,
            words,
            summary: OnceLock::new(),
        })
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    /// Word length.
    pub fn length(&self) -> usize {
        self.n
    }

    /// Number of words.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.words.iter().map(|w| w.symbols())
    }

    /// Cached pairwise summary; `None` for a single-word code.
    pub fn summary(&self) -> Option<&DistanceSummary> {
        self.summary
            .get_or_init(|| scan_pairs(&self.words))
            .as_ref()
    }

    /// Minimum asymmetric distance, or `None` for a single-word code.
    pub fn min_asymmetric(&self) -> Option<usize> {
        self.summary().map(|s| s.min_asymmetric)
    }

    pub fn min_hamming(&self) -> Option<usize> {
        self.summary().map(|s| s.min_hamming)
    }

    /// The first `count` words.
    pub fn prefix(&self, count: usize) -> Result<Code> {
        if count == 0 || count > self.size() {
            return Err(Error::param(format!(
                "cannot take {count} words from a code of size {}",
                self.size()
            )));
        }
        Code::new(self.q, self.words[..count].to_vec())
    }

    /// Serializes to the code text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q, self.n, self.size());
        for w in &self.words {
            out.push_str(&format_symbols(self.q, &w.symbols));
            out.push('\n');
        }
        out
    }

    /// Parses the code text format.
    pub fn from_text(text: &str) -> Result<Code> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `q n a` header"))?;
        let nums = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(hline, format!("bad header: {e}")))?;
        let [q, n, a] = nums[..] else {
            return Err(Error::parse(hline, "header must be `q n a`"));
        };
        if !(2..=MAX_Q as usize).contains(&q) {
            return Err(Error::parse(hline, format!("alphabet size {q} out of range")));
        }
        let q = q as u16;
        let mut rows = Vec::with_capacity(a);
        for (lno, line) in lines {
            let row = parse_symbols(q, line).map_err(|m| Error::parse(lno, m))?;
            if row.len() != n {
                return Err(Error::parse(
                    lno,
                    format!("expected {n} symbols, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != a {
            return Err(Error::parse(
                hline,
                format!("header declares {a} words, found {}", rows.len()),
            ));
        }
        Code::from_rows(q, rows)
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.words == other.words
    }
}

impl Eq for Code {}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Code")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("a", &self.size())
            .finish()
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Code", 4)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("a", &self.size())?;
        let words: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        st.serialize_field("words", &words)?;
        st.end()
    }
}

fn scan_pairs(words: &[Word]) -> Option<DistanceSummary> {
    let mut best: Option<DistanceSummary> = None;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let (up, down) = directed_pair(&words[i].symbols, &words[j].symbols);
            let d_as = up.min(down);
            let d_h = up + down;
            match &mut best {
                None => {
                    best = Some(DistanceSummary {
                        min_asymmetric: d_as,
                        min_hamming: d_h,
                        arg_pair: (i, j),
                    })
                }
                Some(b) => {
                    // strict comparison keeps the earliest pair on ties
                    if d_as < b.min_asymmetric {
                        b.min_asymmetric = d_as;
                        b.arg_pair = (i, j);
                    }
                    b.min_hamming = b.min_hamming.min(d_h);
                }
            }
        }
    }
    best
}

/// Exact minimum asymmetric and Hamming distances over all pairs.
pub fn min_asymmetric_distance(code: &Code) -> Result<DistanceSummary> {
    code.summary().copied().ok_or_else(|| {
        Error::param("minimum distance needs at least two words")
    })
}

/// True iff every pair of distinct words has `N >= t + 1` in both directions.
pub fn is_t_ec_aued(code: &Code, t: usize) -> bool {
    code.min_asymmetric().map_or(true, |d| d > t)
}

fn format_symbols(q: u16, symbols: &[u8]) -> String {
    if q <= 10 {
        symbols.iter().map(|&s| char::from(b'0' + s)).collect()
    } else {
        symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_symbols(q: u16, line: &str) -> std::result::Result<Vec<u8>, String> {
    let values: Vec<u16> = if line.contains(char::is_whitespace) || q > 10 {
        line.split_whitespace()
            .map(|t| t.parse::<u16>().map_err(|e| format!("bad symbol {t:?}: {e}")))
            .collect::<std::result::Result<_, _>>()?
    } else {
        line.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u16)
                    .ok_or_else(|| format!("bad symbol {c:?}"))
            })
            .collect::<std::result::Result<_, _>>()?
    };
    values
        .into_iter()
        .map(|v| {
            if v < q {
                Ok(v as u8)
            } else {
                Err(format!("symbol {v} outside alphabet of size {q}"))
            }
        })
        .collect()
}
