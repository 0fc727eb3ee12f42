use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::field_make;

use super::ResolvablePacking;

fn sort_class(mut class: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut class {
        b.sort_unstable();
    }
    class.sort_by_key(|b| b[0]);
    class
}

/// Lines of AG(2, q) on points `x * q + y`: one class per slope followed by
/// the vertical lines. A resolvable `(q^2, q, 1)` design with `q + 1` classes.
pub fn affine_plane(q: u64) -> Result<ResolvablePacking> {
    let order = u32::try_from(q).map_err(|_| Error::param(format!("q={q} too large")))?;
    let f = field_make(order)?;
    let n = q as usize;
    let point = |x: u8, y: u8| x as usize * n + y as usize;
    let mut classes = Vec::with_capacity(n + 1);
    for slope in f.elements() {
        let class = f
            .elements()
            .map(|b| {
                f.elements()
                    .map(|x| point(x, f.add(f.mul(slope, x), b)))
                    .collect()
            })
            .collect();
        classes.push(sort_class(class));
    }
    classes.push(sort_class(
        f.elements()
            .map(|x| f.elements().map(|y| point(x, y)).collect())
            .collect(),
    ));
    ResolvablePacking::from_classes(n * n, classes)
}

/// Circle-method one-factorization of `K_m`: `m - 1` classes of `m / 2`
/// pairs, every pair exactly once.
pub fn round_robin(m: usize) -> Result<ResolvablePacking> {
    if m < 4 || m % 2 == 1 {
        return Err(Error::param(format!("round robin needs an even m >= 4, got {m}")));
    }
    let rounds = m - 1;
    let fixed = m - 1;
    let classes = (0..rounds)
        .map(|r| {
            let mut class = vec![vec![fixed, r]];
            for i in 1..m / 2 {
                class.push(vec![(r + i) % rounds, (r + rounds - i) % rounds]);
            }
            sort_class(class)
        })
        .collect();
    ResolvablePacking::from_classes(m, classes)
}

/// The near one-factors `T_j = {{j + t, j - t} : 1 <= t < k}` of
/// `K_{2k-1}`, for `j` in `Z_{2k-1}`. Pairs are listed as `[j + t, j - t]`.
pub fn near_one_factorization(k: usize) -> Result<Vec<Vec<[usize; 2]>>> {
    if k < 2 {
        return Err(Error::param(format!("k must be at least 2, got {k}")));
    }
    let m = 2 * k - 1;
    Ok((0..m)
        .map(|j| (1..k).map(|t| [(j + t) % m, (j + m - t) % m]).collect())
        .collect())
}

/// Base parallel classes over `Z_m`, developed by adding each shift in turn.
/// Block order inside each class is significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSeed {
    modulus: usize,
    base_classes: Vec<Vec<Vec<usize>>>,
}

impl CirculantSeed {
    pub fn new(modulus: usize, base_classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::param("modulus must be at least 2"));
        }
        if base_classes.is_empty() {
            return Err(Error::param("seed has no base classes"));
        }
        for (ci, class) in base_classes.iter().enumerate() {
            let mut seen = vec![false; modulus];
            for block in class {
                if block.is_empty() {
                    return Err(Error::param(format!("base class {ci} has an empty block")));
                }
                for &p in block {
                    if p >= modulus {
                        return Err(Error::param(format!(
                            "base class {ci}: {p} is not in Z_{modulus}"
                        )));
                    }
                    if std::mem::replace(&mut seen[p], true) {
                        return Err(Error::param(format!("base class {ci} repeats point {p}")));
                    }
                }
            }
            if let Some(p) = seen.iter().position(|s| !s) {
                return Err(Error::param(format!("base class {ci} misses point {p}")));
            }
            if class.len() > crate::code::MAX_Q as usize || class.len() < 2 {
                return Err(Error::param(format!(
                    "base class {ci} has {} blocks; need 2..=256",
                    class.len()
                )));
            }
        }
        Ok(CirculantSeed {
            modulus,
            base_classes,
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn base_classes(&self) -> &[Vec<Vec<usize>>] {
        &self.base_classes
    }

    /// Alphabet size of the developed code.
    pub fn q(&self) -> usize {
        self.base_classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All `modulus * classes` developed parallel classes, base class major,
    /// with block order preserved.
    pub fn developed_packing(&self) -> Result<ResolvablePacking> {
        let m = self.modulus;
        let classes = self
            .base_classes
            .iter()
            .flat_map(|class| {
                (0..m).map(move |shift| {
                    class
                        .iter()
                        .map(|b| b.iter().map(|&p| (p + shift) % m).collect())
                        .collect()
                })
            })
            .collect();
        ResolvablePacking::from_classes(m, classes)
    }
}

/// Rows of the block-circulant matrix `(A_0 | A_1 | ...)`, one circulant per
/// base class. Entry `(r, c*m + i)` is the position of the block of base class
/// `c` that contains `r - i (mod m)`.
pub fn develop_circulant(seed: &CirculantSeed) -> Result<Code> {
    let m = seed.modulus();
    let mut rows = vec![Vec::with_capacity(m * seed.base_classes().len()); m];
    for class in seed.base_classes() {
        let mut symbol_of = vec![0u8; m];
        for (pos, block) in class.iter().enumerate() {
            for &p in block {
                symbol_of[p] = pos as u8;
            }
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.extend((0..m).map(|i| symbol_of[(r + m - i) % m]));
        }
    }
    Code::from_rows(seed.q() as u16, rows)
}
