//! Constructors for the concrete tables the harness and the catalog hand
//! out: cyclic and dihedral groups, small symmetric/alternating groups, the
//! quaternion group, direct products, random Latin squares, and padded
//! tables that wrap a group in junk elements.

use crate::magma::MagmaTable;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The one-element table.
pub fn trivial() -> MagmaTable {
    MagmaTable::new(vec!["e".into()], vec![vec![0]]).unwrap()
}

/// Z_n under addition, labels "0".."n-1".
pub fn cyclic(n: usize) -> MagmaTable {
    assert!(n >= 1);
    let labels = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    MagmaTable::new(labels, table).unwrap()
}

/// The dihedral group with `m` rotations (order `2m`). Elements are
/// `s^j r^i`, indexed `j*m + i`, so the labels read e, r, r2, …, s, sr, ….
/// D_3 doubles as the catalog table for S_3.
pub fn dihedral(m: usize) -> MagmaTable {
    assert!(m >= 1);
    let n = 2 * m;
    let mut labels = Vec::with_capacity(n);
    for j in 0..2 {
        for i in 0..m {
            labels.push(match (j, i) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, i) => format!("r{i}"),
                (1, 0) => "s".to_string(),
                (1, 1) => "sr".to_string(),
                (1, i) => format!("sr{i}"),
            });
        }
    }
    let idx = |j: usize, i: usize| j * m + i;
    let mut table = vec![vec![0; n]; n];
    for j1 in 0..2 {
        for i1 in 0..m {
            for j2 in 0..2 {
                for i2 in 0..m {
                    // s^j1 r^i1 · s^j2 r^i2 = s^(j1+j2) r^((-1)^j2 i1 + i2)
                    let i = if j2 == 0 {
                        (i1 + i2) % m
                    } else {
                        (m - i1 + i2) % m
                    };
                    table[idx(j1, i1)][idx(j2, i2)] = idx((j1 + j2) % 2, i);
                }
            }
        }
    }
    MagmaTable::new(labels, table).unwrap()
}

/// The quaternion group Q_8 from the presentation a⁴ = e, b² = a²,
/// b⁻¹ab = a⁻¹; elements `a^x b^y` indexed `y*4 + x`.
pub fn quaternion() -> MagmaTable {
    let labels = ["e", "a", "a2", "a3", "b", "ab", "a2b", "a3b"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let idx = |x: usize, y: usize| y * 4 + x;
    let mut table = vec![vec![0; 8]; 8];
    for x1 in 0..4 {
        for y1 in 0..2 {
            for x2 in 0..4 {
                for y2 in 0..2 {
                    // b^y1 a^x2 = a^(-x2 if y1) b^y1 and b² = a²
                    let mut x = x1 + if y1 == 1 { 4 - x2 } else { x2 };
                    if y1 == 1 && y2 == 1 {
                        x += 2;
                    }
                    table[idx(x1, y1)][idx(x2, y2)] = idx(x % 4, (y1 + y2) % 2);
                }
            }
        }
    }
    MagmaTable::new(labels, table).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 0, &mut out);
    out.sort();
    out
}

fn parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

fn permutation_group(perms: Vec<Vec<usize>>) -> MagmaTable {
    let labels: Vec<String> = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    let lookup = |q: &Vec<usize>| perms.iter().position(|p| p == q).unwrap();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    // (p·q)(x) = p(q(x))
                    let composed: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
                    lookup(&composed)
                })
                .collect()
        })
        .collect();
    MagmaTable::new(labels, table).unwrap()
}

/// S_n as all permutations of {0..n-1} in lexicographic order; labels are
/// one-line notation. Kept to n ≤ 4 (24 elements) by the callers.
pub fn symmetric(n: usize) -> MagmaTable {
    assert!((1..=4).contains(&n));
    permutation_group(permutations(n))
}

/// A_n, the even permutations; n ≤ 5 (60 elements).
pub fn alternating(n: usize) -> MagmaTable {
    assert!((1..=5).contains(&n));
    let perms = permutations(n)
        .into_iter()
        .filter(|p| parity(p) == 0)
        .collect();
    permutation_group(perms)
}

/// Direct product; labels join component labels with `|`.
pub fn direct_product(a: &MagmaTable, b: &MagmaTable) -> MagmaTable {
    let (na, nb) = (a.n(), b.n());
    let mut labels = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}|{}", a.labels()[i], b.labels()[j]));
        }
    }
    let idx = |i: usize, j: usize| i * nb + j;
    let mut table = vec![vec![0; na * nb]; na * nb];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    table[idx(i1, j1)][idx(i2, j2)] =
                        idx(a.rows()[i1][i2], b.rows()[j1][j2]);
                }
            }
        }
    }
    MagmaTable::new(labels, table).unwrap()
}

/// A seeded random Latin square of order `n`, built row by row with
/// randomized backtracking and restarts. Every row and column is a
/// permutation, so the table is a valid oracle.
pub fn random_latin(n: usize, seed: u64) -> MagmaTable {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: loop {
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut col_used = vec![vec![false; n]; n];
        for _ in 0..n {
            match random_row(n, &col_used, &mut rng) {
                Some(row) => {
                    for (c, &v) in row.iter().enumerate() {
                        col_used[c][v] = true;
                    }
                    rows.push(row);
                }
                None => continue 'restart,
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        return MagmaTable::new(labels, rows).unwrap();
    }
}

fn random_row<R: Rng>(n: usize, col_used: &[Vec<bool>], rng: &mut R) -> Option<Vec<usize>> {
    // try a few shuffled fills before reporting a dead end
    'attempt: for _ in 0..50 {
        let mut row = vec![usize::MAX; n];
        let mut row_used = vec![false; n];
        for c in 0..n {
            let mut candidates: Vec<usize> = (0..n)
                .filter(|&v| !row_used[v] && !col_used[c][v])
                .collect();
            if candidates.is_empty() {
                continue 'attempt;
            }
            candidates.shuffle(rng);
            row[c] = candidates[0];
            row_used[candidates[0]] = true;
        }
        return Some(row);
    }
    None
}

/// Wraps `inner` (placed at indices `0..n`) inside a table of size `n+junk`.
/// Junk rows are seeded permutations of the whole ground set, and the junk
/// columns of group rows are seeded permutations of the junk block, so every
/// row stays bijective while the group block stays closed.
pub fn padded(inner: &MagmaTable, junk: usize, seed: u64) -> MagmaTable {
    let n = inner.n();
    let total = n + junk;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<String> = inner.labels().to_vec();
    for k in 0..junk {
        labels.push(format!("junk{k}"));
    }
    let mut table = vec![vec![0; total]; total];
    for i in 0..n {
        table[i][..n].copy_from_slice(&inner.rows()[i]);
        let mut tail: Vec<usize> = (n..total).collect();
        tail.shuffle(&mut rng);
        table[i][n..].copy_from_slice(&tail);
    }
    for i in n..total {
        let mut row: Vec<usize> = (0..total).collect();
        row.shuffle(&mut rng);
        table[i] = row;
    }
    MagmaTable::new(labels, table).unwrap()
}
