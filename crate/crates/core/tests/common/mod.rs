//! Brute-force reference implementations used as test oracles. They read
//! colours through `EdgeColouring::colour` only and share no code with the
//! library's verifier.

#![allow(dead_code)]

use chromatic_core::{EdgeColouring, Level};

/// Distinct values among three colours.
pub fn distinct(a: usize, b: usize, c: usize) -> usize {
    1 + usize::from(b != a) + usize::from(c != a && c != b)
}

/// Independent check of a colouring against `E_{n+1}^S` at `level`.
pub fn oracle_passes(col: &EdgeColouring, s: &[usize], n: usize, level: Level) -> bool {
    let m = col.vertex_count();
    let mut present = vec![false; n + 1];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                present[col.colour(i, j)] = true;
            }
        }
    }
    if (1..=n).any(|c| !present[c]) {
        return false;
    }
    let ok = |a: usize, b: usize, c: usize| s.contains(&distinct(a, b, c));
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if i == j || j == k || i == k {
                    continue;
                }
                let (a, b, c) = (col.colour(i, j), col.colour(j, k), col.colour(i, k));
                if !ok(a, b, c) {
                    return false;
                }
                let mut t = [a, b, c];
                t.sort_unstable();
                seen.insert(t);
            }
        }
    }
    if level == Level::Feeble {
        return true;
    }
    for a in 1..=n {
        for b in a..=n {
            for c in b..=n {
                if ok(a, b, c) && !seen.contains(&[a, b, c]) {
                    return false;
                }
            }
        }
    }
    if level == Level::Qualitative {
        return true;
    }
    for x in 0..m {
        for y in 0..m {
            if x == y {
                continue;
            }
            let c = col.colour(x, y);
            for a in 1..=n {
                for b in 1..=n {
                    if !ok(a, b, c) {
                        continue;
                    }
                    let witnessed = (0..m).any(|z| {
                        z != x && z != y && col.colour(x, z) == a && col.colour(z, y) == b
                    });
                    if !witnessed {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The type sets of all eight chromatic algebras.
pub fn all_type_sets() -> Vec<Vec<usize>> {
    (0u8..8)
        .map(|mask| (1..=3).filter(|k| mask & (1 << (k - 1)) != 0).collect())
        .collect()
}
