//! Explicit representations, dispatched per signature and level.

use crate::algebra::Signature;
use crate::colouring::{EdgeColouring, Level};
use crate::error::{Error, Result};
use crate::geometry::{affine_plane, affine_plane_of_order, drop_points, is_prime, near_pencil};
use crate::quasigroup::Quasigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstructionRequest {
    pub sig: Signature,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Built(EdgeColouring),
    /// No construction is available. `settled` is true when the algebra
    /// provably has no representation at this level, false when a
    /// representation may exist but lies outside what is implemented here.
    NotConstructible {
        reason: String,
        settled: bool,
    },
    /// No explicit construction; the search module decides.
    DelegatedToSearch {
        reason: String,
    },
}

impl Construction {
    pub fn colouring(&self) -> Option<&EdgeColouring> {
        match self {
            Construction::Built(c) => Some(c),
            _ => None,
        }
    }

    fn impossible(reason: &str) -> Self {
        Construction::NotConstructible {
            reason: reason.to_string(),
            settled: true,
        }
    }

    fn out_of_scope(reason: &str) -> Self {
        Construction::NotConstructible {
            reason: reason.to_string(),
            settled: false,
        }
    }

    fn delegated(reason: &str) -> Self {
        Construction::DelegatedToSearch {
            reason: reason.to_string(),
        }
    }
}

/// Produces a representation of `req.sig` at `req.level` when one is known.
///
/// # Panics
///
/// Panics if a built colouring fails verification, which would be a defect
/// in the construction rather than a property of the input.
pub fn construct(req: ConstructionRequest) -> Construction {
    let out = dispatch(req.sig, req.level);
    if let Construction::Built(col) = &out {
        let report = col
            .verify(req.sig, req.level)
            .expect("constructions use the requested colour count");
        assert!(
            report.passed,
            "construction for {} at {} failed its own verification: {report:?}",
            req.sig, req.level
        );
    }
    out
}

fn dispatch(sig: Signature, level: Level) -> Construction {
    use Construction::Built;
    let n = sig.n();
    if n == 1 {
        return Built(if sig.contains(1) {
            EdgeColouring::monochromatic(3)
        } else {
            EdgeColouring::monochromatic(2)
        });
    }
    match sig.s().as_slice() {
        [] => Construction::impossible(
            "no proper triple is consistent, so a representation has a single edge and one colour",
        ),
        [1] => Construction::impossible(
            "only monochromatic triangles are allowed, so a connected base carries one colour",
        ),
        [3] => trichromatic(n, level),
        [2] => match (n, level) {
            (2, _) => Built(pentagon()),
            (_, Level::Feeble) => Built(chain(n)),
            _ => Construction::impossible(
                "the dichromatic algebra has no qualitative representation for n > 2",
            ),
        },
        [2, 3] => match level {
            Level::Feeble | Level::Qualitative => Built(walecki(n)),
            Level::Strong if n <= 4 => {
                Construction::delegated("no explicit strong construction; finite search at small n")
            }
            Level::Strong => Construction::out_of_scope(
                "strong representations for n >= 5 need finite-field constructions not implemented here",
            ),
        },
        [1, 3] => lyndon(n, level),
        [1, 2] => match level {
            Level::Feeble => Built(chain(n)),
            _ => Construction::delegated("no explicit finite construction; finite search"),
        },
        [1, 2, 3] => match level {
            Level::Feeble | Level::Qualitative => Built(triangle_union(n)),
            Level::Strong => Construction::delegated("no explicit strong construction; finite search"),
        },
        _ => unreachable!("signature type sets are subsets of {{1,2,3}}"),
    }
}

fn trichromatic(n: usize, level: Level) -> Construction {
    use Construction::Built;
    if n == 2 {
        return Construction::impossible(
            "two colours cannot make a trichromatic triangle, so the base has at most two points",
        );
    }
    if n == 3 {
        return Built(k4_matchings());
    }
    if n % 2 == 1 {
        return match level {
            Level::Strong => Construction::impossible(
                "the algebra is not associative for n > 3, so it has no strong representation",
            ),
            _ => Built(
                Quasigroup::standard(n)
                    .and_then(|q| q.lambda2())
                    .expect("odd order quasigroup exists"),
            ),
        };
    }
    match level {
        Level::Feeble => {
            let base = trichromatic(n - 1, Level::Qualitative);
            let base = base.colouring().expect("odd order is constructible");
            let wide = base.with_colour_count(n).expect("colour count grows");
            Built(wide.recoloured(0, 1, n).expect("edge (0,1) exists"))
        }
        _ => Construction::impossible(
            "qualitative representations of the trichromatic algebra exist only for odd n",
        ),
    }
}

fn lyndon(n: usize, level: Level) -> Construction {
    use Construction::Built;
    if n == 2 {
        return Construction::impossible(
            "with two colours every vertex meeting both lies on a dichromatic triangle",
        );
    }
    let geometry = match level {
        Level::Feeble => near_pencil(n),
        Level::Qualitative if n == 3 => {
            return Construction::delegated("n = 3 is settled by exhaustive search")
        }
        Level::Qualitative => {
            // Dropping points from a plane of order 3 leaves new directions
            // with two-point lines only, so such choices are skipped.
            match (n.div_ceil(2)..n).find(|&p| is_prime(p) && n < 2 * p && (p >= 5 || p + 1 == n)) {
                Some(p) => {
                    let k = n - p - 1;
                    affine_plane(p).and_then(|g| drop_points(&g, &(0..k).collect::<Vec<_>>()))
                }
                None => affine_plane_of_order(n - 1),
            }
        }
        Level::Strong if n == 3 => {
            return Construction::delegated("n = 3 is settled by exhaustive search")
        }
        Level::Strong => match affine_plane_of_order(n - 1) {
            Ok(g) => Ok(g),
            Err(_) => {
                return Construction::out_of_scope(
                    "strong representations are affine planes of order n - 1; only prime power orders are built",
                )
            }
        },
    };
    Built(
        geometry
            .and_then(|g| g.to_colouring())
            .expect("geometry constructions are valid"),
    )
}

/// `x ↦ ((x - 1) mod n) + 1`, taking values in `1..=n` for every integer `x`.
pub fn s_n(x: i64, n: usize) -> usize {
    assert!(n >= 1, "modulus must be positive");
    ((x - 1).rem_euclid(n as i64) + 1) as usize
}

/// Colouring of `K_{2n}` on vertices `u_1..u_{2n}` (stored as `0..2n`) in
/// which `(u_i, u_{i+s})` has colour `s_n(ceil((s + 1) / 2) + i - 1)`.
pub fn walecki(n: usize) -> EdgeColouring {
    assert!(n >= 1, "walecki needs n >= 1");
    EdgeColouring::from_fn(2 * n, n, |a, b| walecki_colour(n, a + 1, b + 1))
        .expect("colours lie in 1..=n")
}

fn walecki_colour(n: usize, a: usize, b: usize) -> usize {
    let s = (b - a) as i64;
    s_n(s / 2 + 1 + a as i64 - 1, n)
}

/// Labels `(l, l + s, l + t)` (1-based, modulo `2n`) of a triangle of
/// [`walecki`] with `(u_l, u_{l+s})` coloured `i`, `(u_l, u_{l+t})` coloured
/// `j` and `(u_{l+s}, u_{l+t})` coloured `k`.
pub fn walecki_witness(n: usize, i: usize, j: usize, k: usize) -> Result<[usize; 3]> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Precondition(format!(
            "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    if !(1..=n).contains(&k) {
        return Err(Error::Precondition(format!("colour k={k} outside 1..={n}")));
    }
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let l = s_n(i + j - k, 2 * n) as i64;
    let (s, t) = if k != i {
        (2 * k - 2 * j + 1, 2 * k - 2 * i)
    } else {
        (2 * k - 2 * j, 2 * k - 2 * i + 1)
    };
    Ok([l as usize, s_n(l + s, 2 * n), s_n(l + t, 2 * n)])
}

/// `K_{n+1}` with `colour(v_i, v_j) = j` for `i < j`.
pub fn chain(n: usize) -> EdgeColouring {
    EdgeColouring::from_fn(n + 1, n, |_, j| j).expect("colours lie in 1..=n")
}

/// The 5-cycle in colour 1 with its diagonals in colour 2.
pub fn pentagon() -> EdgeColouring {
    EdgeColouring::from_fn(5, 2, |i, j| if matches!(j - i, 1 | 4) { 1 } else { 2 })
        .expect("two colours")
}

/// `K_4` split into its three perfect matchings.
pub fn k4_matchings() -> EdgeColouring {
    EdgeColouring::from_edges(
        4,
        3,
        &[
            (0, 1, 1),
            (2, 3, 1),
            (0, 2, 2),
            (1, 3, 2),
            (0, 3, 3),
            (1, 2, 3),
        ],
    )
    .expect("valid matchings")
}

/// One triangle `x, y, z` per colour multiset `a <= b <= c`, with
/// `(x,y) = a`, `(y,z) = b`, `(x,z) = c`; every other edge has colour 1.
pub fn triangle_union(n: usize) -> EdgeColouring {
    let mut triangles = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for c in b..=n {
                triangles.push([a, b, c]);
            }
        }
    }
    EdgeColouring::from_fn(3 * triangles.len(), n, |x, y| {
        if x / 3 != y / 3 {
            return 1;
        }
        let [a, b, c] = triangles[x / 3];
        match (x % 3, y % 3) {
            (0, 1) => a,
            (1, 2) => b,
            _ => c,
        }
    })
    .expect("colours lie in 1..=n")
}
