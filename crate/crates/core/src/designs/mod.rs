//! Set systems, resolvable packings and the conversion from a resolvable
//! packing to a code.
//!
//! Given a resolvable packing whose parallel classes each contain `s` blocks,
//! every class becomes one column: a point's symbol in that column is the
//! index of the block containing it. Two points share at most `lambda`
//! blocks, so the rows have Hamming distance at least `classes - lambda`,
//! and mirror concatenation turns that into asymmetric distance.

mod generate;
mod io;

pub use generate::{
    affine_plane, develop_circulant, near_one_factorization, round_robin, CirculantSeed,
};
pub use io::{parse_design, parse_design_file, parse_seed, write_design, write_seed};

use std::collections::HashMap;

use serde::Serialize;

use crate::code::Code;
use crate::construct::mirror_concatenate;
use crate::error::{Error, Result};

/// Points `0..v` and a list of blocks. Blocks are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            if b.is_empty() {
                return Err(Error::param(format!("block {i} is empty")));
            }
            b.sort_unstable();
            if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::param(format!("block {i} repeats point {}", w[0])));
            }
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(Error::param(format!("block {i} has point {p} outside 0..{v}")));
            }
            sorted.push(b);
        }
        Ok(SetSystem { v, blocks: sorted })
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks containing each unordered pair, keyed `(lo, hi)`.
    pub fn pair_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    *counts.entry((x, y)).or_insert(0) += 1;
                }
            }
        }
        counts
    }

    /// The blocks' complements in the point set.
    pub fn complement(&self) -> SetSystem {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..self.v).filter(|p| b.binary_search(p).is_err()).collect())
            .collect();
        SetSystem {
            v: self.v,
            blocks,
        }
    }
}

/// Outcome of [`verify_packing`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingReport {
    pub points: usize,
    pub blocks: usize,
    pub classes: usize,
    /// Common block size, if uniform.
    pub block_size: Option<usize>,
    /// Distinct block sizes seen, ascending.
    pub block_sizes: Vec<usize>,
    /// Realized maximum pair multiplicity.
    pub lambda: usize,
    /// Pairs covered exactly `lambda` times each when every pair is covered.
    pub balanced: bool,
}

/// Checks that each class partitions the point set and every block is used
/// exactly once, and measures the pair multiplicity. With `declared_k` the
/// blocks must all have that size; with `declared_lambda` no pair may occur
/// more often.
pub fn verify_packing(
    base: &SetSystem,
    classes: &[Vec<usize>],
    declared_k: Option<usize>,
    declared_lambda: Option<usize>,
) -> Result<PackingReport> {
    let v = base.points();
    let mut used = vec![false; base.blocks().len()];
    for (ci, class) in classes.iter().enumerate() {
        let mut owner = vec![None; v];
        for &bi in class {
            let block = base.blocks().get(bi).ok_or_else(|| {
                Error::verify(format!("class {ci} references missing block {bi}"))
            })?;
            if std::mem::replace(&mut used[bi], true) {
                return Err(Error::verify(format!("block {bi} appears in more than one class")));
            }
            for &p in block {
                if let Some(other) = owner[p].replace(bi) {
                    return Err(Error::verify(format!(
                        "class {ci}: point {p} lies in blocks {other} and {bi}"
                    )));
                }
            }
        }
        if let Some(p) = owner.iter().position(Option::is_none) {
            return Err(Error::verify(format!("class {ci} does not cover point {p}")));
        }
    }
    if let Some(bi) = used.iter().position(|u| !u) {
        return Err(Error::verify(format!("block {bi} is in no parallel class")));
    }

    let mut sizes: Vec<usize> = base.blocks().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let block_size = (sizes.len() == 1).then(|| sizes[0]);
    if let Some(k) = declared_k {
        if let Some((bi, b)) = base.blocks().iter().enumerate().find(|(_, b)| b.len() != k) {
            return Err(Error::verify(format!(
                "block {bi} has size {} but the design declares k = {k}",
                b.len()
            )));
        }
    }

    let counts = base.pair_counts();
    let lambda = counts.values().copied().max().unwrap_or(0);
    if let Some(bound) = declared_lambda {
        if lambda > bound {
            let mut worst: Vec<_> = counts.iter().filter(|(_, &c)| c > bound).collect();
            worst.sort();
            let (pair, c) = worst[0];
            return Err(Error::verify(format!(
                "pair {pair:?} occurs in {c} blocks, more than lambda = {bound}"
            )));
        }
    }
    let all_pairs = v * v.saturating_sub(1) / 2;
    let balanced = counts.len() == all_pairs && counts.values().all(|&c| c == lambda);

    Ok(PackingReport {
        points: v,
        blocks: base.blocks().len(),
        classes: classes.len(),
        block_size,
        block_sizes: sizes,
        lambda,
        balanced,
    })
}

/// A set system with its blocks partitioned into ordered parallel classes.
/// Construction verifies every invariant; `lambda` is always the realized
/// maximum pair multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvablePacking {
    base: SetSystem,
    classes: Vec<Vec<usize>>,
    block_size: Option<usize>,
    lambda: usize,
}

impl ResolvablePacking {
    pub fn new(base: SetSystem, classes: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_packing(&base, &classes, None, None)?;
        Ok(ResolvablePacking {
            base,
            classes,
            block_size: report.block_size,
            lambda: report.lambda,
        })
    }

    /// Builds from classes given directly as lists of blocks.
    pub fn from_classes(v: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut index = Vec::with_capacity(classes.len());
        for class in classes {
            let start = blocks.len();
            blocks.extend(class);
            index.push((start..blocks.len()).collect());
        }
        ResolvablePacking::new(SetSystem::new(v, blocks)?, index)
    }

    pub fn base(&self) -> &SetSystem {
        &self.base
    }

    pub fn points(&self) -> usize {
        self.base.points()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_blocks(&self, class: usize) -> impl Iterator<Item = &[usize]> {
        self.classes[class]
            .iter()
            .map(move |&b| self.base.blocks()[b].as_slice())
    }

    pub fn block_size(&self) -> Option<usize> {
        self.block_size
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn report(&self) -> PackingReport {
        verify_packing(&self.base, &self.classes, self.block_size, Some(self.lambda))
            .expect("packing was verified at construction")
    }

    /// Blocks per class, if every class has the same number.
    pub fn class_size(&self) -> Option<usize> {
        let first = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == first).then_some(first)
    }
}

/// Verifies a packing and returns its report.
pub fn verify_resolvable(p: &ResolvablePacking) -> PackingReport {
    p.report()
}

/// One column per parallel class; a point's symbol is the position of its
/// block within the class. `ordering[c]`, when given, is a permutation of
/// class `c`'s block positions to use instead of the stored order.
pub fn packing_to_code(p: &ResolvablePacking, ordering: Option<&[Vec<usize>]>) -> Result<Code> {
    let s = p
        .class_size()
        .ok_or_else(|| Error::param("parallel classes have different numbers of blocks"))?;
    if !(2..=crate::code::MAX_Q as usize).contains(&s) {
        return Err(Error::param(format!("{s} blocks per class is not a usable alphabet")));
    }
    if let Some(ord) = ordering {
        if ord.len() != p.classes().len() {
            return Err(Error::param("ordering must give one permutation per class"));
        }
        for perm in ord {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..s).collect::<Vec<_>>() {
                return Err(Error::param(format!("{perm:?} is not a permutation of 0..{s}")));
            }
        }
    }
    let mut rows = vec![vec![0u8; p.classes().len()]; p.points()];
    for (c, class) in p.classes().iter().enumerate() {
        for (pos, &bi) in class.iter().enumerate() {
            let symbol = ordering.map_or(pos, |o| o[c][pos]);
            for &pt in &p.base().blocks()[bi] {
                rows[pt][c] = symbol as u8;
            }
        }
    }
    Code::from_rows(s as u16, rows)
}

/// Output of [`resolvable_packing_code`].
#[derive(Clone, Debug)]
pub struct PackingCode {
    pub code: Code,
    /// `classes - lambda`: the guaranteed minimum asymmetric distance.
    pub claimed_distance: usize,
    pub q: u16,
}

/// Mirror concatenation of [`packing_to_code`]: a `q`-ary code of size `v` and
/// length `2 * classes` with minimum asymmetric distance at least
/// `classes - lambda`, where `q` is the number of blocks per class.
pub fn resolvable_packing_code(p: &ResolvablePacking) -> Result<PackingCode> {
    let k = p
        .block_size()
        .ok_or_else(|| Error::param("packing blocks must have uniform size"))?;
    let s = p
        .class_size()
        .ok_or_else(|| Error::param("parallel classes have different numbers of blocks"))?;
    if s * k != p.points() {
        return Err(Error::param(format!(
            "{s} blocks of size {k} cannot partition {} points",
            p.points()
        )));
    }
    if p.classes().len() <= p.lambda() {
        return Err(Error::param(format!(
            "{} classes with lambda = {} give no distance",
            p.classes().len(),
            p.lambda()
        )));
    }
    let code = mirror_concatenate(&packing_to_code(p, None)?)?;
    let claimed = p.classes().len() - p.lambda();
    if let Some(d) = code.min_asymmetric() {
        if d < claimed {
            return Err(Error::verify(format!(
                "code distance {d} is below the guaranteed {claimed}"
            )));
        }
    }
    Ok(PackingCode {
        q: code.q(),
        code,
        claimed_distance: claimed,
    })
}

/// Removes parallel class `index`, dropping its blocks.
pub fn delete_parallel_class(p: &ResolvablePacking, index: usize) -> Result<ResolvablePacking> {
    if p.classes().len() < 2 {
        return Err(Error::param("cannot delete the only parallel class"));
    }
    if index >= p.classes().len() {
        return Err(Error::param(format!("no parallel class {index}")));
    }
    let classes: Vec<Vec<Vec<usize>>> = p
        .classes()
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != index)
        .map(|(_, class)| class.iter().map(|&b| p.base().blocks()[b].clone()).collect())
        .collect();
    ResolvablePacking::from_classes(p.points(), classes)
}

/// Parameters predicted for a resolvable `(alpha, lambda)`-GDD of type `s^n`
/// used as a packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GddCodeParams {
    pub q: u64,
    pub a: u64,
    #[serde(rename = "T")]
    pub t: u64,
    pub length: u64,
    /// `2 lambda (s-1) < s n - alpha`, under which the length is optimal.
    pub meets_bound: bool,
}

/// `T = lambda s (n-1)/(alpha-1) - lambda`, `q = s n / alpha`,
/// length `2 lambda s (n-1)/(alpha-1)`.
pub fn rgdd_code_params(alpha: u64, lambda: u64, s: u64, n: u64) -> Result<GddCodeParams> {
    if alpha < 2 || lambda < 1 || s < 1 || n < 2 {
        return Err(Error::param("need alpha >= 2, lambda >= 1, s >= 1, n >= 2"));
    }
    if (s * n) % alpha != 0 || (lambda * s * (n - 1)) % (alpha - 1) != 0 {
        return Err(Error::param(format!(
            "divisibility fails for alpha={alpha}, lambda={lambda}, type {s}^{n}"
        )));
    }
    let classes = lambda * s * (n - 1) / (alpha - 1);
    Ok(GddCodeParams {
        q: s * n / alpha,
        a: s * n,
        t: classes - lambda,
        length: 2 * classes,
        meets_bound: 2 * lambda * (s - 1) < s * n - alpha,
    })
}

/// Parameters after deleting one class of an RBIBD`(alpha q, alpha, lambda)`:
/// `T = lambda alpha (q-1)/(alpha-1) - 1`, length
/// `2 lambda (alpha q - 1)/(alpha-1) - 2`.
pub fn rbibd_minus_class_params(alpha: u64, lambda: u64, q: u64) -> Result<GddCodeParams> {
    if alpha < 2 || lambda < 1 || q < 3 {
        return Err(Error::param("need alpha >= 2, lambda >= 1, q >= 3"));
    }
    if (lambda * (alpha * q - 1)) % (alpha - 1) != 0 {
        return Err(Error::param("lambda (alpha q - 1) must be divisible by alpha - 1"));
    }
    let classes = lambda * (alpha * q - 1) / (alpha - 1);
    Ok(GddCodeParams {
        q,
        a: alpha * q,
        t: lambda * alpha * (q - 1) / (alpha - 1) - 1,
        length: 2 * classes - 2,
        meets_bound: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_system_validation() {
        assert!(SetSystem::new(3, vec![vec![]]).is_err());
        assert!(SetSystem::new(3, vec![vec![0, 3]]).is_err());
        assert!(SetSystem::new(3, vec![vec![1, 1]]).is_err());
        let s = SetSystem::new(4, vec![vec![2, 0], vec![1, 3]]).unwrap();
        assert_eq!(s.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(s.complement().blocks(), &[vec![1, 3], vec![0, 2]]);
    }

    #[test]
    fn class_missing_a_point_fails() {
        let base = SetSystem::new(3, vec![vec![1, 2]]).unwrap();
        let err = verify_packing(&base, &[vec![0]], None, None).unwrap_err();
        assert!(err.to_string().contains("point 0"), "{err}");
    }

    #[test]
    fn overlapping_blocks_in_class_fail() {
        let base = SetSystem::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(verify_packing(&base, &[vec![0, 1]], None, None).is_err());
    }

    #[test]
    fn declared_lambda_is_enforced() {
        let p = ResolvablePacking::from_classes(
            4,
            vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 1], vec![2, 3]]],
        )
        .unwrap();
        assert_eq!(p.lambda(), 2);
        let err = verify_packing(p.base(), p.classes(), Some(2), Some(1)).unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "{err}");
        assert!(verify_packing(p.base(), p.classes(), Some(3), None).is_err());
    }

    #[test]
    fn reordering_blocks_keeps_hamming_distance() {
        let p = affine_plane(3).unwrap();
        let plain = packing_to_code(&p, None).unwrap();
        let order: Vec<Vec<usize>> = vec![vec![2, 0, 1], vec![1, 2, 0], vec![0, 2, 1], vec![2, 1, 0]];
        let shuffled = packing_to_code(&p, Some(&order)).unwrap();
        assert_eq!(plain.min_hamming(), shuffled.min_hamming());
        assert!(packing_to_code(&p, Some(&order[..2])).is_err());
        let bad = vec![vec![0, 0, 1]; 4];
        assert!(packing_to_code(&p, Some(&bad)).is_err());
    }

    #[test]
    fn unequal_class_sizes_rejected() {
        let p = ResolvablePacking::from_classes(
            4,
            vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0], vec![1], vec![2, 3]]],
        )
        .unwrap();
        assert!(matches!(packing_to_code(&p, None), Err(Error::Parameter(_))));
    }

    #[test]
    fn delete_class_errors() {
        let single = ResolvablePacking::from_classes(4, vec![vec![vec![0, 1], vec![2, 3]]]).unwrap();
        assert!(delete_parallel_class(&single, 0).is_err());
        let p = round_robin(4).unwrap();
        assert!(delete_parallel_class(&p, 3).is_err());
        let d = delete_parallel_class(&p, 0).unwrap();
        assert_eq!(d.classes().len(), 2);
        assert_eq!(d.lambda(), 1);
    }

    #[test]
    fn gdd_parameter_formulas() {
        // RBIBD(9,3,1) as a GDD of type 1^9
        let p = rgdd_code_params(3, 1, 1, 9).unwrap();
        assert_eq!((p.q, p.a, p.t, p.length), (3, 9, 3, 8));
        assert!(p.meets_bound);
        let p = rgdd_code_params(4, 1, 1, 16).unwrap();
        assert_eq!((p.q, p.a, p.t, p.length), (4, 16, 4, 10));
        let p = rgdd_code_params(3, 1, 1, 15).unwrap();
        assert_eq!((p.q, p.a, p.t, p.length), (5, 15, 6, 14));
        assert!(rgdd_code_params(3, 1, 1, 10).is_err());

        let p = rbibd_minus_class_params(3, 1, 3).unwrap();
        assert_eq!((p.a, p.t, p.length), (9, 2, 6));
        let p = rbibd_minus_class_params(4, 1, 4).unwrap();
        assert_eq!((p.a, p.t, p.length), (16, 3, 8));
        let p = rbibd_minus_class_params(3, 1, 5).unwrap();
        assert_eq!((p.a, p.t, p.length), (15, 5, 12));
    }
}
