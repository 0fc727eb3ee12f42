//! Error injection and bounded-distance decoding.
//!
//! A code with minimum asymmetric distance `T` has minimum Hamming distance
//! at least `2T`, so Hamming balls of radius `t = T - 1` around codewords are
//! disjoint. The decoder returns the codeword within distance `t` if there is
//! one and reports a detected error otherwise. Unidirectional errors move a
//! word monotonically away from the sent codeword `c`; any other codeword
//! `c'` is still at least `T` positions above (or below) the received word,
//! so it can never be decoded in its place.

use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{differ, Code, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Symmetric,
    Increasing,
    Decreasing,
}

/// Changes applied to a word: `(position, delta)` pairs on distinct
/// positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPattern {
    kind: ErrorKind,
    changes: Vec<(usize, i16)>,
}

impl ErrorPattern {
    pub fn new(kind: ErrorKind, changes: Vec<(usize, i16)>) -> Result<Self> {
        let mut positions: Vec<usize> = changes.iter().map(|c| c.0).collect();
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("pattern changes a position twice"));
        }
        for &(pos, delta) in &changes {
            let ok = match kind {
                ErrorKind::Symmetric => delta != 0,
                ErrorKind::Increasing => delta > 0,
                ErrorKind::Decreasing => delta < 0,
            };
            if !ok {
                return Err(Error::param(format!(
                    "delta {delta} at position {pos} is not valid for a {kind:?} pattern"
                )));
            }
        }
        Ok(ErrorPattern { kind, changes })
    }

    pub fn kind(&self) -> ErrorKind {
        self.kind
    }

    pub fn changes(&self) -> &[(usize, i16)] {
        &self.changes
    }

    /// Number of positions changed.
    pub fn weight(&self) -> usize {
        self.changes.len()
    }
}

/// Applies `pattern` to `word`, rejecting patterns that leave the alphabet.
pub fn inject(word: &Word, pattern: &ErrorPattern) -> Result<Word> {
    let mut symbols = word.symbols().to_vec();
    for &(pos, delta) in pattern.changes() {
        let s = symbols
            .get_mut(pos)
            .ok_or_else(|| Error::param(format!("position {pos} is past the word's end")))?;
        let v = *s as i32 + delta as i32;
        if v < 0 || v >= word.q() as i32 {
            return Err(Error::param(format!(
                "delta {delta} moves symbol {} at position {pos} outside 0..{}",
                *s,
                word.q()
            )));
        }
        *s = v as u8;
    }
    Word::new(word.q(), symbols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeOutcome {
    /// Decoded to the codeword with this index.
    Corrected(usize),
    Detected,
    /// Decoded to a codeword other than the one sent. Only produced by the
    /// trial harness, which knows what was sent.
    Miscorrected(usize),
}

/// Bounded-distance decoder of radius `t` for a verified `t`-EC-AUED code.
#[derive(Clone, Debug)]
pub struct Decoder<'c> {
    code: &'c Code,
    t: usize,
}

impl<'c> Decoder<'c> {
    pub fn new(code: &'c Code, t: usize) -> Result<Self> {
        if !crate::code::is_t_ec_aued(code, t) {
            return Err(Error::verify(format!(
                "code has minimum asymmetric distance {:?}, not a {t}-EC-AUED code",
                code.min_asymmetric()
            )));
        }
        Ok(Decoder { code, t })
    }

    pub fn code(&self) -> &Code {
        self.code
    }

    pub fn radius(&self) -> usize {
        self.t
    }

    pub fn decode(&self, received: &Word) -> Result<DecodeOutcome> {
        if received.q() != self.code.q() || received.len() != self.code.length() {
            return Err(Error::param("received word does not match the code"));
        }
        Ok(self.decode_symbols(received.symbols()))
    }

    pub(crate) fn decode_symbols(&self, received: &[u8]) -> DecodeOutcome {
        self.code
            .rows()
            .position(|c| differ(c, received) <= self.t)
            .map_or(DecodeOutcome::Detected, DecodeOutcome::Corrected)
    }

    fn classify(&self, sent: usize, received: &[u8]) -> DecodeOutcome {
        match self.decode_symbols(received) {
            DecodeOutcome::Corrected(i) if i != sent => DecodeOutcome::Miscorrected(i),
            other => other,
        }
    }
}

/// Convenience wrapper around [`Decoder`].
pub fn decode(code: &Code, t: usize, received: &Word) -> Result<DecodeOutcome> {
    Decoder::new(code, t)?.decode(received)
}

/// A randomized trial campaign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Campaign {
    pub symmetric_trials: u64,
    pub unidirectional_trials: u64,
    pub seed: u64,
    /// Weights drawn for symmetric patterns; defaults to `1..=t`.
    pub symmetric_weights: Option<RangeInclusive<usize>>,
    /// Weights drawn for unidirectional patterns; defaults to `1..=n`.
    /// A weight is capped at the number of positions that can move.
    pub unidirectional_weights: Option<RangeInclusive<usize>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub trials: u64,
    pub corrected: u64,
    pub detected: u64,
    pub miscorrected: u64,
}

impl OutcomeCounts {
    fn record(&mut self, o: DecodeOutcome, sent: usize) {
        self.trials += 1;
        match o {
            DecodeOutcome::Corrected(i) if i == sent => self.corrected += 1,
            DecodeOutcome::Corrected(_) | DecodeOutcome::Miscorrected(_) => self.miscorrected += 1,
            DecodeOutcome::Detected => self.detected += 1,
        }
    }

    fn merge(mut self, o: OutcomeCounts) -> Self {
        self.trials += o.trials;
        self.corrected += o.corrected;
        self.detected += o.detected;
        self.miscorrected += o.miscorrected;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrialStats {
    pub symmetric: OutcomeCounts,
    pub unidirectional: OutcomeCounts,
}

impl TrialStats {
    pub fn total(&self) -> OutcomeCounts {
        self.symmetric.merge(self.unidirectional)
    }
}

const BATCH: u64 = 4096;

fn batch_rng(seed: u64, stream: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(batch) << 20);
    rng
}

/// Random symmetric pattern of the given weight: each chosen position moves
/// to a uniformly chosen different symbol.
pub fn random_symmetric(rng: &mut impl Rng, word: &[u8], q: u16, weight: usize) -> ErrorPattern {
    let positions = sample(rng, word.len(), weight.min(word.len()));
    let changes = positions
        .iter()
        .map(|p| {
            let cur = word[p] as i16;
            let mut v = rng.gen_range(0..q as i16 - 1);
            if v >= cur {
                v += 1;
            }
            (p, v - cur)
        })
        .collect();
    ErrorPattern {
        kind: ErrorKind::Symmetric,
        changes,
    }
}

/// Random unidirectional pattern: pick a direction that has room, then
/// `weight` (capped) of the movable positions, each with a uniform valid
/// magnitude.
pub fn random_unidirectional(
    rng: &mut impl Rng,
    word: &[u8],
    q: u16,
    weight: usize,
) -> ErrorPattern {
    let top = (q - 1) as u8;
    let up: Vec<usize> = (0..word.len()).filter(|&i| word[i] < top).collect();
    let down: Vec<usize> = (0..word.len()).filter(|&i| word[i] > 0).collect();
    let increasing = match (up.is_empty(), down.is_empty()) {
        (false, false) => rng.gen_bool(0.5),
        (false, true) => true,
        (true, false) => false,
        (true, true) => unreachable!("q >= 2 and n >= 1 leave some room"),
    };
    let movable = if increasing { &up } else { &down };
    let picks = sample(rng, movable.len(), weight.clamp(1, movable.len()));
    let changes = picks
        .iter()
        .map(|k| {
            let p = movable[k];
            let delta = if increasing {
                rng.gen_range(1..=(top - word[p]) as i16)
            } else {
                -rng.gen_range(1..=word[p] as i16)
            };
            (p, delta)
        })
        .collect();
    ErrorPattern {
        kind: if increasing {
            ErrorKind::Increasing
        } else {
            ErrorKind::Decreasing
        },
        changes,
    }
}

fn apply(word: &[u8], pattern: &ErrorPattern, out: &mut Vec<u8>) {
    out.clear();
    out.extend_from_slice(word);
    for &(p, d) in pattern.changes() {
        out[p] = (out[p] as i16 + d) as u8;
    }
}

/// Runs a seeded campaign. Trials are split into fixed batches, each with its
/// own random stream, so results do not depend on the thread count.
pub fn run_trials(code: &Code, t: usize, campaign: &Campaign) -> Result<TrialStats> {
    let decoder = Decoder::new(code, t)?;
    let n = code.length();
    let sym_w = campaign.symmetric_weights.clone().unwrap_or(1..=t.max(1));
    let uni_w = campaign.unidirectional_weights.clone().unwrap_or(1..=n);
    if *sym_w.end() > t && campaign.symmetric_trials > 0 {
        return Err(Error::param(format!(
            "symmetric weights up to {} exceed the correction radius {t}",
            sym_w.end()
        )));
    }
    if sym_w.is_empty() || uni_w.is_empty() || *uni_w.start() == 0 {
        return Err(Error::param("weight ranges must be nonempty and positive"));
    }

    let run = |stream: u64, trials: u64, symmetric: bool| -> OutcomeCounts {
        let batches = trials.div_ceil(BATCH);
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = batch_rng(campaign.seed, stream, b);
                let mut counts = OutcomeCounts::default();
                let mut buf = Vec::with_capacity(n);
                let here = BATCH.min(trials - b * BATCH);
                for _ in 0..here {
                    let sent = rng.gen_range(0..code.size());
                    let word = code.word(sent).symbols();
                    let pattern = if symmetric {
                        let w = rng.gen_range(sym_w.clone());
                        random_symmetric(&mut rng, word, code.q(), w)
                    } else {
                        let w = rng.gen_range(uni_w.clone());
                        random_unidirectional(&mut rng, word, code.q(), w)
                    };
                    apply(word, &pattern, &mut buf);
                    counts.record(decoder.classify(sent, &buf), sent);
                }
                counts
            })
            .reduce(OutcomeCounts::default, OutcomeCounts::merge)
    };

    Ok(TrialStats {
        symmetric: run(0, campaign.symmetric_trials, true),
        unidirectional: run(1, campaign.unidirectional_trials, false),
    })
}

/// Decodes every symmetric error pattern of weight `<= t` applied to
/// codeword `index`.
pub fn exhaustive_symmetric(code: &Code, t: usize, index: usize) -> Result<OutcomeCounts> {
    let decoder = Decoder::new(code, t)?;
    let word = code
        .words()
        .get(index)
        .ok_or_else(|| Error::param(format!("no codeword {index}")))?
        .symbols()
        .to_vec();
    let base: Vec<usize> = code.rows().map(|c| differ(c, &word)).collect();
    let mut counts = OutcomeCounts::default();
    counts.record(classify_distances(&base, t, index), index);
    if t == 0 {
        return Ok(counts);
    }
    // split on the first changed position for parallelism
    let rest = (0..word.len())
        .into_par_iter()
        .map(|p| {
            let mut counts = OutcomeCounts::default();
            let mut dist = base.clone();
            for s in (0..code.q() as u8).filter(|&s| s != word[p]) {
                let walk = SymmetricWalk {
                    decoder: &decoder,
                    sent: index,
                    word: &word,
                };
                walk.change(&mut dist, p, s, 1);
                walk.enumerate(&mut dist, p + 1, t - 1, &mut counts);
                walk.change(&mut dist, p, s, -1);
            }
            counts
        })
        .reduce(OutcomeCounts::default, OutcomeCounts::merge);
    Ok(counts.merge(rest))
}

fn classify_distances(dist: &[usize], t: usize, sent: usize) -> DecodeOutcome {
    match dist.iter().position(|&d| d <= t) {
        Some(i) if i == sent => DecodeOutcome::Corrected(i),
        Some(i) => DecodeOutcome::Miscorrected(i),
        None => DecodeOutcome::Detected,
    }
}

/// Enumerates symmetric patterns while keeping the Hamming distance from the
/// received word to every codeword up to date.
struct SymmetricWalk<'a> {
    decoder: &'a Decoder<'a>,
    sent: usize,
    word: &'a [u8],
}

impl SymmetricWalk<'_> {
    /// Applies (`sign = 1`) or undoes (`sign = -1`) changing position `p`
    /// from the sent symbol to `s`.
    fn change(&self, dist: &mut [usize], p: usize, s: u8, sign: isize) {
        let orig = self.word[p];
        for (d, c) in dist.iter_mut().zip(self.decoder.code.rows()) {
            let delta = (c[p] != s) as isize - (c[p] != orig) as isize;
            *d = (*d as isize + sign * delta) as usize;
        }
    }

    fn enumerate(&self, dist: &mut [usize], from: usize, left: usize, counts: &mut OutcomeCounts) {
        counts.record(classify_distances(dist, self.decoder.t, self.sent), self.sent);
        if left == 0 {
            return;
        }
        for p in from..self.word.len() {
            for s in (0..self.decoder.code.q() as u8).filter(|&s| s != self.word[p]) {
                self.change(dist, p, s, 1);
                self.enumerate(dist, p + 1, left - 1, counts);
                self.change(dist, p, s, -1);
            }
        }
    }
}

/// Decodes every increasing pattern on codeword `index` whose per-position
/// magnitudes are at most `max_delta` and whose weight is in `weights`.
pub fn exhaustive_increasing(
    code: &Code,
    t: usize,
    index: usize,
    max_delta: u8,
    weights: RangeInclusive<usize>,
) -> Result<OutcomeCounts> {
    let decoder = Decoder::new(code, t)?;
    let word = code
        .words()
        .get(index)
        .ok_or_else(|| Error::param(format!("no codeword {index}")))?
        .symbols()
        .to_vec();
    let top = (code.q() - 1) as u8;
    let mut counts = OutcomeCounts::default();
    let mut buf = word.clone();
    walk_increasing(&decoder, index, &word, &mut buf, 0, 0, top, max_delta, &weights, &mut counts);
    Ok(counts)
}

#[allow(clippy::too_many_arguments)]
fn walk_increasing(
    decoder: &Decoder<'_>,
    sent: usize,
    word: &[u8],
    buf: &mut [u8],
    pos: usize,
    weight: usize,
    top: u8,
    max_delta: u8,
    weights: &RangeInclusive<usize>,
    counts: &mut OutcomeCounts,
) {
    if weight > *weights.end() {
        return;
    }
    if pos == word.len() {
        if weights.contains(&weight) {
            counts.record(decoder.classify(sent, buf), sent);
        }
        return;
    }
    walk_increasing(decoder, sent, word, buf, pos + 1, weight, top, max_delta, weights, counts);
    for d in 1..=max_delta.min(top - word[pos]) {
        buf[pos] = word[pos] + d;
        walk_increasing(decoder, sent, word, buf, pos + 1, weight + 1, top, max_delta, weights, counts);
    }
    buf[pos] = word[pos];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u16, s: &[u8]) -> Word {
        Word::new(q, s.to_vec()).unwrap()
    }

    fn pair_code() -> Code {
        Code::from_rows(2, vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]).unwrap()
    }

    #[test]
    fn decode_examples() {
        let c = pair_code();
        assert_eq!(decode(&c, 1, &w(2, &[0, 1, 1, 1])).unwrap(), DecodeOutcome::Corrected(0));
        assert_eq!(decode(&c, 1, &w(2, &[1, 1, 1, 1])).unwrap(), DecodeOutcome::Detected);
        assert_eq!(decode(&c, 1, &w(2, &[1, 1, 0, 0])).unwrap(), DecodeOutcome::Corrected(1));
        assert!(decode(&c, 2, &w(2, &[1, 1, 0, 0])).is_err());
        assert!(decode(&c, 1, &w(2, &[1, 1, 0])).is_err());
    }

    #[test]
    fn inject_examples() {
        let x = w(3, &[0, 1, 2]);
        let up = ErrorPattern::new(ErrorKind::Increasing, vec![(0, 2)]).unwrap();
        assert_eq!(inject(&x, &up).unwrap(), w(3, &[2, 1, 2]));
        let down = ErrorPattern::new(ErrorKind::Decreasing, vec![(2, -2)]).unwrap();
        assert_eq!(inject(&x, &down).unwrap(), w(3, &[0, 1, 0]));
        let below = ErrorPattern::new(ErrorKind::Decreasing, vec![(0, -1)]).unwrap();
        assert!(inject(&w(3, &[0, 0]), &below).is_err());
        let past = ErrorPattern::new(ErrorKind::Increasing, vec![(5, 1)]).unwrap();
        assert!(inject(&x, &past).is_err());
    }

    #[test]
    fn pattern_validation() {
        assert!(ErrorPattern::new(ErrorKind::Increasing, vec![(0, -1)]).is_err());
        assert!(ErrorPattern::new(ErrorKind::Decreasing, vec![(0, 1)]).is_err());
        assert!(ErrorPattern::new(ErrorKind::Symmetric, vec![(0, 0)]).is_err());
        assert!(ErrorPattern::new(ErrorKind::Symmetric, vec![(0, 1), (0, -1)]).is_err());
        let p = ErrorPattern::new(ErrorKind::Symmetric, vec![(0, 1), (3, -1)]).unwrap();
        assert_eq!(p.weight(), 2);
    }

    #[test]
    fn random_patterns_respect_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let word = [0u8, 2, 1, 2, 0, 1];
        for _ in 0..2000 {
            let weight = rng.gen_range(1..=6);
            let p = random_unidirectional(&mut rng, &word, 3, weight);
            let r = inject(&Word::new(3, word.to_vec()).unwrap(), &p).unwrap();
            match p.kind() {
                ErrorKind::Increasing => assert!(r.symbols().iter().zip(&word).all(|(a, b)| a >= b)),
                ErrorKind::Decreasing => assert!(r.symbols().iter().zip(&word).all(|(a, b)| a <= b)),
                ErrorKind::Symmetric => unreachable!(),
            }
            let s = random_symmetric(&mut rng, &word, 3, 2);
            let r = inject(&Word::new(3, word.to_vec()).unwrap(), &s).unwrap();
            assert_eq!(differ(r.symbols(), &word), 2);
        }
    }

    #[test]
    fn saturated_word_goes_down() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_unidirectional(&mut rng, &[2, 2, 2], 3, 3);
        assert_eq!(p.kind(), ErrorKind::Decreasing);
        assert_eq!(p.weight(), 3);
    }

    #[test]
    fn trials_are_reproducible() {
        let c = crate::construct::construction_one(4).unwrap();
        let camp = Campaign {
            symmetric_trials: 5000,
            unidirectional_trials: 5000,
            seed: 42,
            symmetric_weights: None,
            unidirectional_weights: None,
        };
        let a = run_trials(&c, 2, &camp).unwrap();
        let b = run_trials(&c, 2, &camp).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.symmetric.corrected, 5000);
        assert_eq!(a.total().miscorrected, 0);
        assert_eq!(a.unidirectional.trials, 5000);
        let other = run_trials(&c, 2, &Campaign { seed: 43, ..camp.clone() }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn symmetric_weights_beyond_radius_rejected() {
        let c = crate::construct::construction_one(4).unwrap();
        let camp = Campaign {
            symmetric_trials: 1,
            unidirectional_trials: 0,
            seed: 0,
            symmetric_weights: Some(1..=3),
            unidirectional_weights: None,
        };
        assert!(run_trials(&c, 2, &camp).is_err());
    }

    #[test]
    fn exhaustive_counts() {
        let c = crate::construct::construction_one(3).unwrap();
        // sum over w <= 1 of C(5, w) 2^w = 1 + 10
        let counts = exhaustive_symmetric(&c, 1, 0).unwrap();
        assert_eq!(counts.trials, 11);
        assert_eq!(counts.corrected, 11);
        let inc = exhaustive_increasing(&c, 1, 0, 2, 1..=5).unwrap();
        assert_eq!(inc.miscorrected, 0);
        // word 01221 has room 2,1,0,0,1: (1+2)(1+1)(1+1) - 1 nonzero patterns
        assert_eq!(inc.trials, 11);
    }
}
