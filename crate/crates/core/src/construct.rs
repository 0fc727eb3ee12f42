//! Deterministic code constructions.
//!
//! Symbols are 0-based throughout. Every constructor returns a validated
//! [`Code`]; distances are checked by callers through [`crate::search::certify`]
//! or the cached [`Code::summary`].

use log::warn;

use crate::code::{Code, Word};
use crate::designs::SetSystem;
use crate::error::{Error, Result};
use crate::field::field_make;

fn q_u16(q: u64) -> Result<u16> {
    u16::try_from(q)
        .ok()
        .filter(|q| (2..=crate::code::MAX_Q).contains(q))
        .ok_or_else(|| Error::param(format!("alphabet size {q} out of range")))
}

/// `a` words of length `2T`: word `i` is `i` repeated `T` times followed by
/// `a - 1 - i` repeated `T` times. Minimum asymmetric distance is `T`.
pub fn trivial_code(q: u64, a: u64, t: u64) -> Result<Code> {
    let qq = q_u16(q)?;
    if a > q || a < 1 {
        return Err(Error::param(format!("trivial code needs 1 <= a <= q (a={a}, q={q})")));
    }
    if t < 1 {
        return Err(Error::param("T must be at least 1"));
    }
    let rows = (0..a)
        .map(|i| {
            let mut row = vec![i as u8; t as usize];
            row.extend(std::iter::repeat((a - 1 - i) as u8).take(t as usize));
            row
        })
        .collect();
    Code::from_rows(qq, rows)
}

/// The near-one-factorization array over `Z_{2k-1}`: entry `(i, j)` is 0 on
/// the diagonal and otherwise the unique `x` in `1..k` with `i = j +- x`.
///
/// Gives `2k - 1` words of length `2k - 1` over `k` symbols with minimum
/// asymmetric distance `k - 1`.
pub fn construction_one(k: u64) -> Result<Code> {
    if k < 2 {
        return Err(Error::param(format!("k must be at least 2, got {k}")));
    }
    q_u16(k)?;
    Code::from_rows(k as u16, near_factor_array(k))
}

fn near_factor_array(k: u64) -> Vec<Vec<u8>> {
    let m = 2 * k - 1;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let diff = (i + m - j) % m;
                    diff.min(m - diff) as u8
                })
                .collect()
        })
        .collect()
}

/// For odd `k`: the near-one-factorization array shifted by `(k-1)/2` mod `k`,
/// preceded by the constant word `(k-1)/2`. Gives `2k` words of length
/// `2k - 1` with minimum asymmetric distance `k - 1`.
pub fn construction_two(k: u64) -> Result<Code> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::param(format!("k must be odd and at least 3, got {k}")));
    }
    q_u16(k)?;
    let half = (k - 1) / 2;
    let mut rows = vec![vec![half as u8; (2 * k - 1) as usize]];
    rows.extend(near_factor_array(k).into_iter().map(|row| {
        row.into_iter()
            .map(|x| ((u64::from(x) + half) % k) as u8)
            .collect::<Vec<_>>()
    }));
    Code::from_rows(k as u16, rows)
}

/// Maps each word `c` to `c | (q-1-c)`. The output's minimum asymmetric
/// distance equals the input's minimum Hamming distance.
pub fn mirror_concatenate(code: &Code) -> Result<Code> {
    let words = code
        .words()
        .iter()
        .map(|w| {
            let mut symbols = w.symbols().to_vec();
            symbols.extend_from_slice(w.complement().symbols());
            Word::new(code.q(), symbols)
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(code.q(), words)
}

/// The `[q+1, 2, q]` extended Reed–Solomon code: for each `(a, b)` in
/// `GF(q)^2` (slope-major order) the word `(f(x_0), ..., f(x_{q-1}), a)` with
/// `f(x) = ax + b` and evaluation points in encoding order.
pub fn extended_rs_code(q: u64) -> Result<Code> {
    let qq = u32::try_from(q).map_err(|_| Error::param(format!("q={q} too large")))?;
    let field = field_make(qq)?;
    let mut rows = Vec::with_capacity((q * q) as usize);
    for slope in field.elements() {
        for intercept in field.elements() {
            let mut row: Vec<u8> = field
                .elements()
                .map(|x| field.add(field.mul(slope, x), intercept))
                .collect();
            row.push(slope);
            rows.push(row);
        }
    }
    Code::from_rows(qq as u16, rows)
}

/// Mirror concatenation of the extended Reed–Solomon code: `q^2` words of
/// length `2q + 2` with minimum asymmetric distance `q`.
pub fn mds_mirror_code(q: u64) -> Result<Code> {
    mirror_concatenate(&extended_rs_code(q)?)
}

/// Row-wise concatenation; row `i` of `first` is joined with row
/// `pairing[i]` of `second` (identity when `pairing` is `None`).
pub fn juxtapose(first: &Code, second: &Code, pairing: Option<&[usize]>) -> Result<Code> {
    if first.size() != second.size() {
        return Err(Error::param(format!(
            "cannot juxtapose codes of sizes {} and {}",
            first.size(),
            second.size()
        )));
    }
    if first.q() != second.q() {
        return Err(Error::param(format!(
            "alphabet mismatch: {} vs {}",
            first.q(),
            second.q()
        )));
    }
    let a = first.size();
    let identity: Vec<usize> = (0..a).collect();
    let pairing = pairing.unwrap_or(&identity);
    if pairing.len() != a {
        return Err(Error::param("pairing must cover every row"));
    }
    let mut seen = vec![false; a];
    for &p in pairing {
        if p >= a || std::mem::replace(&mut seen[p], true) {
            return Err(Error::param("pairing is not a bijection"));
        }
    }
    let rows = first
        .rows()
        .zip(pairing)
        .map(|(row, &p)| {
            let mut r = row.to_vec();
            r.extend_from_slice(second.word(p).symbols());
            r
        })
        .collect();
    Code::from_rows(first.q(), rows)
}

/// Juxtaposes a non-empty sequence of equal-size codes in order.
pub fn juxtapose_all(codes: &[Code]) -> Result<Code> {
    let (head, tail) = codes
        .split_first()
        .ok_or_else(|| Error::param("nothing to juxtapose"))?;
    tail.iter()
        .try_fold(head.clone(), |acc, c| juxtapose(&acc, c, None))
}

/// All words of length `n` over `q` symbols whose symbol sum is
/// `ceil(n(q-1)/2)`, in lexicographic order. No word covers another.
pub fn debruijn_code(n: usize, q: u64) -> Result<Code> {
    let qq = q_u16(q)?;
    if n < 1 {
        return Err(Error::param("length must be at least 1"));
    }
    let target = (n as u64 * (q - 1)).div_ceil(2);
    let mut rows = Vec::new();
    let mut word = vec![0u8; n];
    fill_sum(&mut word, 0, target, q - 1, &mut rows);
    Code::from_rows(qq, rows)
}

fn fill_sum(word: &mut [u8], pos: usize, remaining: u64, top: u64, out: &mut Vec<Vec<u8>>) {
    let left = (word.len() - pos) as u64;
    if pos == word.len() {
        if remaining == 0 {
            out.push(word.to_vec());
        }
        return;
    }
    // the remaining positions can absorb at most `top` each
    let lo = remaining.saturating_sub((left - 1) * top);
    let hi = remaining.min(top);
    for s in lo..=hi {
        word[pos] = s as u8;
        fill_sum(word, pos + 1, remaining - s, top, out);
    }
}

/// Binary point-by-block incidence rows of a block design. For a BIBD every
/// word has weight `r` and the minimum asymmetric distance is half the
/// minimum Hamming distance.
pub fn constant_weight_from_bibd(design: &SetSystem) -> Result<Code> {
    let v = design.points();
    let mut rows = vec![vec![0u8; design.blocks().len()]; v];
    for (b, block) in design.blocks().iter().enumerate() {
        for &p in block {
            rows[p][b] = 1;
        }
    }
    let weights: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().filter(|&&x| x == 1).count())
        .collect();
    if weights.windows(2).any(|w| w[0] != w[1]) {
        warn!("design has non-uniform replication numbers {weights:?}");
    }
    Code::from_rows(2, rows)
}
