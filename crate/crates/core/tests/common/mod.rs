//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's distance or search code.

#![allow(dead_code)]

/// `#{i : x_i > y_i}`.
pub fn n_above(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a > b).count()
}

pub fn d_as(x: &[u8], y: &[u8]) -> usize {
    n_above(x, y).min(n_above(y, x))
}

/// Minimum asymmetric distance over all pairs, by direct enumeration.
pub fn min_d_as(rows: &[Vec<u8>]) -> usize {
    let mut best = usize::MAX;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            best = best.min(d_as(&rows[i], &rows[j]));
        }
    }
    best
}

pub fn rows_of(code: &aued::Code) -> Vec<Vec<u8>> {
    code.rows().map(<[u8]>::to_vec).collect()
}

pub fn parse_rows(rows: &[&str]) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect()
}

/// All `q^n` words, odometer order.
pub fn words(q: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; n]];
    loop {
        let mut w = out.last().unwrap().clone();
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] + 1 < q {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
        out.push(w);
    }
}

/// Maximum clique size in the graph on all `q^n` words with edges at
/// asymmetric distance `>= t`. Textbook MCQ branch and bound over boolean
/// adjacency: greedy colour classes bound each branch; every vertex is a
/// candidate root, with no symmetry breaking.
pub fn naive_max_code_size(q: u8, n: usize, t: usize) -> usize {
    let ws = words(q, n);
    let v = ws.len();
    let adj: Vec<Vec<bool>> = (0..v)
        .map(|i| (0..v).map(|j| i != j && d_as(&ws[i], &ws[j]) >= t).collect())
        .collect();
    let mut best = 0;
    mcq(&adj, 0, (0..v).collect(), &mut best);
    best
}

fn mcq(adj: &[Vec<bool>], size: usize, cand: Vec<usize>, best: &mut usize) {
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    // colour classes are independent sets, so a clique uses one vertex per class
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &u in &cand {
        match classes.iter_mut().find(|c| c.iter().all(|&w| !adj[u][w])) {
            Some(c) => c.push(u),
            None => classes.push(vec![u]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    for (k, c) in classes.iter().enumerate() {
        order.extend(c.iter().map(|&u| (u, k + 1)));
    }
    let mut live = cand;
    while let Some((u, colour)) = order.pop() {
        if size + colour <= *best {
            return;
        }
        let next: Vec<usize> = live.iter().copied().filter(|&w| adj[u][w]).collect();
        mcq(adj, size + 1, next, best);
        live.retain(|&w| w != u);
    }
}

/// Instances `(q, n, t)` with `q^n <= 243`, `q <= 15` and `1 <= t <= n`.
pub fn oracle_instances() -> Vec<(u8, usize, usize)> {
    let mut out = Vec::new();
    for q in 2u32..=15 {
        for n in 1usize.. {
            if q.pow(n as u32) > 243 {
                break;
            }
            for t in 1..=n {
                out.push((q as u8, n, t));
            }
        }
    }
    out
}
