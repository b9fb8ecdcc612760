//! Edge colourings of complete graphs and the three representation levels.
//!
//! A colouring of `K_m` with proper colours `1..=n` is stored as one byte per
//! unordered vertex pair, enumerated column by column:
//! `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`. The diagonal is the
//! invisible identity colour and reads back as `0`.

mod canon;
mod io;

pub use canon::{are_isomorphic, Equivalence};
pub use io::{dot_colour_name, ColouringDocument, SignatureDocument, DOT_PALETTE};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{distinct_count, Signature};
use crate::error::{Error, Result};
use crate::report::Witnesses;

/// Strength of representation being checked or searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Feeble,
    Qualitative,
    Strong,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Feeble, Level::Qualitative, Level::Strong];

    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Feeble => "feeble",
            Level::Qualitative => "qualitative",
            Level::Strong => "strong",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "feeble" => Ok(Level::Feeble),
            "qualitative" | "quali" => Ok(Level::Qualitative),
            "strong" => Ok(Level::Strong),
            other => Err(Error::Precondition(format!("unknown level {other:?}"))),
        }
    }
}

#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// A surjectivity-agnostic edge colouring of `K_m` with colours in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColouring {
    m: usize,
    n: usize,
    colours: Vec<u8>,
}

impl EdgeColouring {
    /// Builds a colouring from `colour(i, j)` evaluated for every `i < j`.
    pub fn from_fn(
        m: usize,
        n: usize,
        mut colour: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        Self::check_n(n)?;
        let mut colours = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for j in 1..m {
            for i in 0..j {
                let c = colour(i, j);
                if c == 0 || c > n {
                    return Err(Error::InvalidColouring(format!(
                        "edge ({i},{j}) has colour {c} outside 1..={n}"
                    )));
                }
                colours.push(c as u8);
            }
        }
        Ok(EdgeColouring { m, n, colours })
    }

    /// Builds a colouring from an explicit edge list covering every pair once.
    pub fn from_edges(m: usize, n: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        Self::check_n(n)?;
        let mut colours = vec![0u8; m * m.saturating_sub(1) / 2];
        for &(a, b, c) in edges {
            if a == b || a >= m || b >= m {
                return Err(Error::InvalidColouring(format!(
                    "bad edge ({a},{b}) for {m} vertices"
                )));
            }
            if c == 0 || c > n {
                return Err(Error::InvalidColouring(format!(
                    "edge ({a},{b}) has colour {c} outside 1..={n}"
                )));
            }
            let idx = pair_index(a.min(b), a.max(b));
            if colours[idx] != 0 {
                return Err(Error::InvalidColouring(format!(
                    "edge ({a},{b}) listed twice"
                )));
            }
            colours[idx] = c as u8;
        }
        if let Some(idx) = colours.iter().position(|&c| c == 0) {
            let j = (1..m).find(|&j| j * (j + 1) / 2 > idx).unwrap_or(0);
            let i = idx - j * (j - 1) / 2;
            return Err(Error::InvalidColouring(format!(
                "edge ({i},{j}) is uncoloured"
            )));
        }
        Ok(EdgeColouring { m, n, colours })
    }

    /// Wraps raw column-order colours. Callers guarantee the range invariant.
    pub(crate) fn from_raw(m: usize, n: usize, colours: Vec<u8>) -> Self {
        debug_assert_eq!(colours.len(), m * m.saturating_sub(1) / 2);
        debug_assert!(colours.iter().all(|&c| c >= 1 && (c as usize) <= n));
        EdgeColouring { m, n, colours }
    }

    fn check_n(n: usize) -> Result<()> {
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidColouring(format!(
                "colour count {n} outside 1..=255"
            )));
        }
        Ok(())
    }

    /// A single-coloured `K_m`.
    pub fn monochromatic(m: usize) -> Self {
        EdgeColouring::from_fn(m, 1, |_, _| 1).expect("one colour is in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn colour_count(&self) -> usize {
        self.n
    }

    /// Colour of the pair `{i, j}`; `0` stands for the identity on the diagonal.
    #[inline]
    pub fn colour(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.m && j < self.m);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.colours[pair_index(i, j)] as usize,
            std::cmp::Ordering::Greater => self.colours[pair_index(j, i)] as usize,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// The colours in column order.
    pub fn raw(&self) -> &[u8] {
        &self.colours
    }

    /// Edges `(i, j, colour)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.colours.len());
        for i in 0..self.m {
            for j in i + 1..self.m {
                out.push((i, j, self.colour(i, j)));
            }
        }
        out
    }

    /// Same colours under a larger colour count.
    pub fn with_colour_count(&self, n: usize) -> Result<Self> {
        Self::check_n(n)?;
        if self.colours.iter().any(|&c| c as usize > n) {
            return Err(Error::InvalidColouring(format!("colours exceed {n}")));
        }
        Ok(EdgeColouring {
            m: self.m,
            n,
            colours: self.colours.clone(),
        })
    }

    /// Returns a copy with a single edge recoloured.
    pub fn recoloured(&self, i: usize, j: usize, colour: usize) -> Result<Self> {
        if i == j || i >= self.m || j >= self.m {
            return Err(Error::InvalidColouring(format!("bad edge ({i},{j})")));
        }
        if colour == 0 || colour > self.n {
            return Err(Error::InvalidColouring(format!(
                "colour {colour} outside 1..={}",
                self.n
            )));
        }
        let mut out = self.clone();
        out.colours[pair_index(i.min(j), i.max(j))] = colour as u8;
        Ok(out)
    }

    /// Induced colouring on the given vertices, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut colours = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for j in 1..k {
            for i in 0..j {
                colours.push(self.colour(vertices[i], vertices[j]) as u8);
            }
        }
        EdgeColouring {
            m: k,
            n: self.n,
            colours,
        }
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        let mut inverse = vec![0; self.m];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        self.induced(&inverse)
    }

    /// Relabels colours: colour `c` becomes `map[c - 1]`.
    pub fn permute_colours(&self, map: &[usize]) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::InvalidColouring(
                "colour map has wrong length".into(),
            ));
        }
        let mut colours = Vec::with_capacity(self.colours.len());
        for &c in &self.colours {
            let to = map[c as usize - 1];
            if to == 0 || to > self.n {
                return Err(Error::InvalidColouring(format!(
                    "colour map sends {c} to {to}"
                )));
            }
            colours.push(to as u8);
        }
        Ok(EdgeColouring {
            m: self.m,
            n: self.n,
            colours,
        })
    }

    /// Appends a vertex whose edge to vertex `i` has colour `row[i]`.
    pub fn extended(&self, row: &[usize]) -> Result<Self> {
        if row.len() != self.m {
            return Err(Error::InvalidColouring(
                "extension row has wrong length".into(),
            ));
        }
        let mut colours = self.colours.clone();
        for &c in row {
            if c == 0 || c > self.n {
                return Err(Error::InvalidColouring(format!(
                    "colour {c} outside 1..={}",
                    self.n
                )));
            }
            colours.push(c as u8);
        }
        Ok(EdgeColouring {
            m: self.m + 1,
            n: self.n,
            colours,
        })
    }

    /// Whether every colour `1..=n` labels at least one edge.
    pub fn is_surjective(&self) -> bool {
        self.used_colours().iter().all(|&u| u)
    }

    fn used_colours(&self) -> Vec<bool> {
        let mut used = vec![false; self.n];
        for &c in &self.colours {
            used[c as usize - 1] = true;
        }
        used
    }

    /// Number of distinct colours on the triangle `x, y, z`.
    pub fn classify_triangle(&self, x: usize, y: usize, z: usize) -> Result<usize> {
        if x == y || y == z || x == z {
            return Err(Error::Precondition(format!(
                "triangle ({x},{y},{z}) repeats a vertex"
            )));
        }
        if x.max(y).max(z) >= self.m {
            return Err(Error::Precondition(format!(
                "triangle ({x},{y},{z}) leaves {} vertices",
                self.m
            )));
        }
        Ok(distinct_count(
            self.colour(x, y),
            self.colour(y, z),
            self.colour(x, z),
        ))
    }

    /// Number of distinct colours on edges at `v`.
    pub fn chromatic_degree(&self, v: usize) -> usize {
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        for w in (0..self.m).filter(|&w| w != v) {
            let c = self.colour(v, w);
            if !seen[c] {
                seen[c] = true;
                count += 1;
            }
        }
        count
    }

    /// Checks `self` as a representation of `sig` at `level`.
    pub fn verify(&self, sig: Signature, level: Level) -> Result<VerificationReport> {
        if self.n != sig.n() {
            return Err(Error::ColourCountMismatch {
                colouring: self.n,
                signature: sig.n(),
            });
        }
        let n = self.n;
        let mut forbidden = Witnesses::new();
        let mut realized = vec![false; n * n * n];
        for i in 0..self.m {
            for j in i + 1..self.m {
                let cij = self.colour(i, j);
                for k in j + 1..self.m {
                    let (cjk, cik) = (self.colour(j, k), self.colour(i, k));
                    if !sig.allows(cij, cjk, cik) {
                        forbidden.push(ForbiddenTriangle {
                            vertices: [i, j, k],
                            colours: [cij, cjk, cik],
                        });
                    }
                    let mut ms = [cij, cjk, cik];
                    ms.sort_unstable();
                    realized[((ms[0] - 1) * n + ms[1] - 1) * n + ms[2] - 1] = true;
                }
            }
        }

        let mut missing = Witnesses::new();
        if level >= Level::Qualitative {
            for ms in sig.required_multisets() {
                if !realized[((ms[0] - 1) * n + ms[1] - 1) * n + ms[2] - 1] {
                    missing.push(ms);
                }
            }
        }

        let mut strong = Witnesses::new();
        if level == Level::Strong {
            let mut seen = vec![false; n * n];
            for x in 0..self.m {
                for y in x + 1..self.m {
                    seen.iter_mut().for_each(|s| *s = false);
                    for z in (0..self.m).filter(|&z| z != x && z != y) {
                        seen[(self.colour(x, z) - 1) * n + self.colour(z, y) - 1] = true;
                    }
                    let c = self.colour(x, y);
                    for a in 1..=n {
                        for b in 1..=n {
                            if sig.allows(a, b, c) && !seen[(a - 1) * n + b - 1] {
                                strong.push(StrongFailure {
                                    edge: [x, y],
                                    triple: [a, b, c],
                                });
                            }
                        }
                    }
                }
            }
        }

        let surjective = self.is_surjective();
        let passed = surjective && forbidden.is_empty() && missing.is_empty() && strong.is_empty();
        Ok(VerificationReport {
            level_requested: level,
            passed,
            surjective,
            forbidden_witnesses: forbidden,
            missing_required: missing,
            strong_failures: strong,
        })
    }

    /// Whether some triangle has a type outside `S`.
    pub fn has_forbidden_triangle(&self, sig: Signature) -> bool {
        (2..self.m).any(|k| {
            (1..k).any(|j| {
                (0..j).any(|i| !sig.allows(self.colour(i, j), self.colour(j, k), self.colour(i, k)))
            })
        })
    }

    /// Extends the colouring until `v` is chromatically saturated, adding one
    /// vertex per missing colour `d`: the new vertex sees `v` in colour `d`
    /// and copies `v`'s colour to every other vertex.
    ///
    /// Only defined for `S = {2}`, where the copy never creates a
    /// monochromatic or trichromatic triangle.
    pub fn saturate(&self, v: usize, sig: Signature) -> Result<Self> {
        if sig.s() != [2] {
            return Err(Error::Precondition(format!(
                "saturation is only defined for S = {{2}}, got {}",
                sig.set_string()
            )));
        }
        if self.n != sig.n() {
            return Err(Error::ColourCountMismatch {
                colouring: self.n,
                signature: sig.n(),
            });
        }
        if v >= self.m {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        if self.has_forbidden_triangle(sig) {
            return Err(Error::Precondition(
                "input already contains a monochromatic or trichromatic triangle".into(),
            ));
        }
        let mut present = vec![false; self.n + 1];
        for w in (0..self.m).filter(|&w| w != v) {
            present[self.colour(v, w)] = true;
        }
        let mut out = self.clone();
        for d in (1..=self.n).filter(|&d| !present[d]) {
            let row: Vec<usize> = (0..out.m)
                .map(|w| if w == v { d } else { out.colour(v, w) })
                .collect();
            out = out.extended(&row)?;
        }
        debug_assert!(!out.has_forbidden_triangle(sig));
        Ok(out)
    }
}

impl fmt::Display for EdgeColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m)
                .map(|j| {
                    if i == j {
                        ".".into()
                    } else {
                        self.colour(i, j).to_string()
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ForbiddenTriangle {
    pub vertices: [usize; 3],
    /// `(colour(x,y), colour(y,z), colour(x,z))`.
    pub colours: [usize; 3],
}

/// An edge `(x, y)` of colour `c` with no `z` such that `colour(x,z) = a`
/// and `colour(z,y) = b`, although `(a, b, c)` is consistent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrongFailure {
    pub edge: [usize; 2],
    pub triple: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub level_requested: Level,
    pub passed: bool,
    pub surjective: bool,
    pub forbidden_witnesses: Witnesses<ForbiddenTriangle>,
    /// Required colour multisets `[a <= b <= c]` that no triangle realizes.
    pub missing_required: Witnesses<[usize; 3]>,
    pub strong_failures: Witnesses<StrongFailure>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
