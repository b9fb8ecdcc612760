//! Linear spaces with parallelisms, and their correspondence with colourings
//! of the algebra whose proper triples are monochromatic or trichromatic.
//!
//! A linear space is a set of points with lines such that two points lie on
//! exactly one line, lines meet in at most one point, and every line has at
//! least two points. A parallelism partitions the lines into blocks of
//! pairwise disjoint lines; block `b` becomes colour `b + 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Signature;
use crate::colouring::{are_isomorphic, EdgeColouring, Equivalence, Level};
use crate::error::{Error, Result};
use crate::report::Witnesses;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSpace {
    point_count: usize,
    lines: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parallelism {
    blocks: Vec<Vec<usize>>,
}

/// A linear space together with a parallelism of its lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Geometry {
    pub space: LinearSpace,
    pub parallelism: Parallelism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairCoverage {
    pub points: [usize; 2],
    /// Number of lines through both points; anything but `1` is a failure.
    pub lines: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    /// Point pairs on no line (LS1) or on several lines.
    pub coverage: Witnesses<PairCoverage>,
    /// Line pairs meeting in two or more points (LS2).
    pub overlapping_lines: Witnesses<[usize; 2]>,
    /// Lines with fewer than two points (LS3).
    pub short_lines: Witnesses<usize>,
}

impl SpaceReport {
    pub fn is_valid(&self) -> bool {
        self.coverage.is_empty() && self.overlapping_lines.is_empty() && self.short_lines.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelismReport {
    /// Lines in no block.
    pub unassigned: Witnesses<usize>,
    /// Lines in more than one block, or listed twice, or out of range.
    pub misassigned: Witnesses<usize>,
    /// Intersecting line pairs placed in one block.
    pub crossing: Witnesses<[usize; 2]>,
    pub empty_blocks: Witnesses<usize>,
}

impl ParallelismReport {
    pub fn is_valid(&self) -> bool {
        self.unassigned.is_empty()
            && self.misassigned.is_empty()
            && self.crossing.is_empty()
            && self.empty_blocks.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ls4Report {
    pub passed: bool,
    /// Blocks all of whose lines have exactly two points.
    pub failing_blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ls5Report {
    pub passed: bool,
    /// For each `d1 < d2 < d3`, the least `(p1, p2, p3)` with line
    /// `p1p2` in `d1`, `p2p3` in `d2` and `p3p1` in `d3`.
    pub witnesses: BTreeMap<[usize; 3], [usize; 3]>,
    pub failures: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryDocument {
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
}

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl LinearSpace {
    /// Lines are stored sorted; structural axioms are checked by
    /// [`LinearSpace::validate`].
    pub fn new(point_count: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(lines.len());
        for (i, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGeometry(format!("line {i} repeats a point")));
            }
            if line.last().is_some_and(|&p| p >= point_count) {
                return Err(Error::InvalidGeometry(format!(
                    "line {i} leaves the {point_count} points"
                )));
            }
            sorted.push(line);
        }
        Ok(LinearSpace {
            point_count,
            lines: sorted,
        })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn validate(&self) -> SpaceReport {
        let p = self.point_count;
        let mut on = vec![0usize; p * p];
        for line in &self.lines {
            for (a, &x) in line.iter().enumerate() {
                for &y in &line[a + 1..] {
                    on[x * p + y] += 1;
                }
            }
        }
        let mut coverage = Witnesses::new();
        for x in 0..p {
            for y in x + 1..p {
                if on[x * p + y] != 1 {
                    coverage.push(PairCoverage {
                        points: [x, y],
                        lines: on[x * p + y],
                    });
                }
            }
        }
        let mut overlapping_lines = Witnesses::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                if meet(&self.lines[i], &self.lines[j]) >= 2 {
                    overlapping_lines.push([i, j]);
                }
            }
        }
        let mut short_lines = Witnesses::new();
        for (i, _) in self.lines.iter().enumerate().filter(|(_, l)| l.len() < 2) {
            short_lines.push(i);
        }
        SpaceReport {
            coverage,
            overlapping_lines,
            short_lines,
        }
    }

    /// `line_of[x * P + y]` is the index of the line through `x != y`.
    fn line_table(&self) -> Vec<usize> {
        let p = self.point_count;
        let mut table = vec![usize::MAX; p * p];
        for (i, line) in self.lines.iter().enumerate() {
            for &x in line {
                for &y in line {
                    if x != y {
                        table[x * p + y] = i;
                    }
                }
            }
        }
        table
    }
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

impl Parallelism {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Parallelism { blocks }
    }

    /// Every line in its own block.
    pub fn trivial(line_count: usize) -> Self {
        Parallelism {
            blocks: (0..line_count).map(|l| vec![l]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn validate(&self, space: &LinearSpace) -> ParallelismReport {
        let l = space.line_count();
        let mut count = vec![0usize; l];
        let mut misassigned = Vec::new();
        let mut empty_blocks = Witnesses::new();
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                empty_blocks.push(b);
            }
            for &line in block {
                if line >= l {
                    misassigned.push(line);
                } else {
                    count[line] += 1;
                }
            }
        }
        let mut unassigned = Witnesses::new();
        for (line, &c) in count.iter().enumerate() {
            if c == 0 {
                unassigned.push(line);
            } else if c > 1 {
                misassigned.push(line);
            }
        }
        let mut crossing = Vec::new();
        for block in &self.blocks {
            let valid: Vec<usize> = block.iter().copied().filter(|&x| x < l).collect();
            for (a, &x) in valid.iter().enumerate() {
                for &y in &valid[a + 1..] {
                    if meet(&space.lines[x], &space.lines[y]) > 0 {
                        crossing.push([x.min(y), x.max(y)]);
                    }
                }
            }
        }
        misassigned.sort_unstable();
        misassigned.dedup();
        ParallelismReport {
            unassigned,
            misassigned: Witnesses::from_unsorted(misassigned),
            crossing: Witnesses::from_unsorted(crossing),
            empty_blocks,
        }
    }

    fn block_of(&self, line_count: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; line_count];
        for (b, block) in self.blocks.iter().enumerate() {
            for &line in block {
                out[line] = b;
            }
        }
        out
    }
}

impl Geometry {
    pub fn new(space: LinearSpace, parallelism: Parallelism) -> Self {
        Geometry { space, parallelism }
    }

    pub fn block_count(&self) -> usize {
        self.parallelism.block_count()
    }

    fn require_valid(&self) -> Result<()> {
        let s = self.space.validate();
        if !s.is_valid() {
            return Err(Error::InvalidGeometry(format!(
                "linear space axioms fail: {} pair, {} overlap, {} short-line violations",
                s.coverage.total, s.overlapping_lines.total, s.short_lines.total
            )));
        }
        let p = self.parallelism.validate(&self.space);
        if !p.is_valid() {
            return Err(Error::InvalidGeometry(format!(
                "parallelism fails: {} unassigned, {} misassigned, {} crossing, {} empty",
                p.unassigned.total, p.misassigned.total, p.crossing.total, p.empty_blocks.total
            )));
        }
        Ok(())
    }

    /// Every block contains a line of at least three points.
    pub fn check_ls4(&self) -> Ls4Report {
        let failing_blocks: Vec<usize> = (0..self.parallelism.block_count())
            .filter(|&b| {
                self.parallelism.blocks[b]
                    .iter()
                    .all(|&l| self.space.lines[l].len() < 3)
            })
            .collect();
        Ls4Report {
            passed: failing_blocks.is_empty(),
            failing_blocks,
        }
    }

    /// Every triple of distinct blocks is realized by a triangle of points in
    /// general position.
    pub fn check_ls5(&self) -> Ls5Report {
        let p = self.space.point_count;
        let lines = self.space.line_table();
        let block_of_line = self.parallelism.block_of(self.space.line_count());
        let block = |x: usize, y: usize| block_of_line[lines[x * p + y]];
        let mut witnesses = BTreeMap::new();
        for p1 in 0..p {
            for p2 in (0..p).filter(|&q| q != p1) {
                let d1 = block(p1, p2);
                for p3 in (0..p).filter(|&q| q != p1 && q != p2) {
                    let (d2, d3) = (block(p2, p3), block(p3, p1));
                    if d1 < d2 && d2 < d3 {
                        witnesses.entry([d1, d2, d3]).or_insert([p1, p2, p3]);
                    }
                }
            }
        }
        let k = self.parallelism.block_count();
        let mut failures = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    if !witnesses.contains_key(&[a, b, c]) {
                        failures.push([a, b, c]);
                    }
                }
            }
        }
        Ls5Report {
            passed: failures.is_empty(),
            witnesses,
            failures,
        }
    }

    /// `colour(x, y)` is one more than the block of the line through `x, y`.
    pub fn to_colouring(&self) -> Result<EdgeColouring> {
        self.require_valid()?;
        let p = self.space.point_count;
        let lines = self.space.line_table();
        let block_of_line = self.parallelism.block_of(self.space.line_count());
        EdgeColouring::from_fn(p, self.parallelism.block_count().max(1), |x, y| {
            block_of_line[lines[x * p + y]] + 1
        })
    }

    /// Lines are the monochromatic cliques; colour `c` gives block `c - 1`.
    pub fn from_colouring(col: &EdgeColouring) -> Result<Self> {
        let n = col.colour_count();
        let sig = Signature::new(&[1, 3], n)?;
        if !col.verify(sig, Level::Feeble)?.passed {
            return Err(Error::Precondition(
                "colouring is not a feeble representation of the algebra with S = {1,3}".into(),
            ));
        }
        let m = col.vertex_count();
        let mut lines = Vec::new();
        let mut blocks = vec![Vec::new(); n];
        for c in 1..=n {
            let mut placed = vec![false; m];
            for x in 0..m {
                if placed[x] {
                    continue;
                }
                let line: Vec<usize> = std::iter::once(x)
                    .chain((x + 1..m).filter(|&y| col.colour(x, y) == c))
                    .collect();
                if line.len() < 2 {
                    continue;
                }
                for &y in &line {
                    placed[y] = true;
                }
                blocks[c - 1].push(lines.len());
                lines.push(line);
            }
        }
        let geometry = Geometry::new(LinearSpace::new(m, lines)?, Parallelism::new(blocks));
        geometry.require_valid()?;
        Ok(geometry)
    }

    /// Isomorphism as point bijections carrying lines to lines and blocks to
    /// blocks, decided through the associated colourings.
    pub fn is_isomorphic(&self, other: &Geometry) -> Result<bool> {
        Ok(are_isomorphic(
            &self.to_colouring()?,
            &other.to_colouring()?,
            Equivalence::VertexAndColour,
        ))
    }

    pub fn to_document(&self) -> GeometryDocument {
        GeometryDocument {
            points: self.space.point_count,
            lines: self.space.lines.clone(),
            blocks: self.parallelism.blocks.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GeometryDocument = serde_json::from_str(text)?;
        Ok(Geometry::new(
            LinearSpace::new(doc.points, doc.lines)?,
            Parallelism::new(doc.blocks),
        ))
    }
}

/// Colouring induced by a parallelism; see [`Geometry::to_colouring`].
pub fn colouring_from_parallelism(g: &Geometry) -> Result<EdgeColouring> {
    g.to_colouring()
}

/// Geometry read off a feeble colouring; see [`Geometry::from_colouring`].
pub fn linear_space_from_colouring(col: &EdgeColouring) -> Result<Geometry> {
    Geometry::from_colouring(col)
}

/// Points `0..n`: the long line `{1, .., n-1}` and the lines `{0, i}`, each
/// line its own block.
pub fn near_pencil(n: usize) -> Result<Geometry> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "near pencil needs n >= 3, got {n}"
        )));
    }
    let mut lines = vec![(1..n).collect::<Vec<_>>()];
    lines.extend((1..n).map(|i| vec![0, i]));
    let count = lines.len();
    Ok(Geometry::new(
        LinearSpace::new(n, lines)?,
        Parallelism::trivial(count),
    ))
}

/// The affine plane over `Z_p`: point `(x, y)` is `x * p + y`; lines
/// `y = mx + b` grouped by slope `m`, then the verticals as the last block.
pub fn affine_plane(p: usize) -> Result<Geometry> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!(
            "affine planes need a prime order, got {p}"
        )));
    }
    let add: Vec<usize> = (0..p * p).map(|i| (i / p + i % p) % p).collect();
    let mul: Vec<usize> = (0..p * p).map(|i| (i / p) * (i % p) % p).collect();
    plane_over(p, &add, &mul)
}

/// [`affine_plane`] over the field with `q` elements, for any prime power `q`.
/// Field elements are polynomials over `Z_p` written in base `p`.
pub fn affine_plane_of_order(q: usize) -> Result<Geometry> {
    let (add, mul) = finite_field(q).ok_or_else(|| {
        Error::Precondition(format!("affine planes need a prime power order, got {q}"))
    })?;
    plane_over(q, &add, &mul)
}

fn plane_over(q: usize, add: &[usize], mul: &[usize]) -> Result<Geometry> {
    let mut lines = Vec::with_capacity(q * (q + 1));
    let mut blocks = Vec::with_capacity(q + 1);
    for m in 0..q {
        blocks.push((lines.len()..lines.len() + q).collect());
        for b in 0..q {
            lines.push(
                (0..q)
                    .map(|x| x * q + add[mul[m * q + x] * q + b])
                    .collect(),
            );
        }
    }
    blocks.push((lines.len()..lines.len() + q).collect());
    for c in 0..q {
        lines.push((0..q).map(|y| c * q + y).collect());
    }
    Ok(Geometry::new(
        LinearSpace::new(q * q, lines)?,
        Parallelism::new(blocks),
    ))
}

/// Addition and multiplication tables (`a * q + b`) of the field of order `q`.
fn finite_field(q: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return None;
    }
    let digits = |mut x: usize| -> Vec<usize> {
        (0..e)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let value = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
    let add: Vec<usize> = (0..q * q)
        .map(|i| {
            let (a, b) = (digits(i / q), digits(i % q));
            value(
                &a.iter()
                    .zip(&b)
                    .map(|(x, y)| (x + y) % p)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    // Try each monic modulus x^e + r(x) until the product table is a field.
    for r in 0..q {
        let low = digits(r);
        let mul: Vec<usize> = (0..q * q)
            .map(|i| {
                let (a, b) = (digits(i / q), digits(i % q));
                let mut prod = vec![0usize; 2 * e];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        prod[deg] = 0;
                        for (k, l) in low.iter().enumerate() {
                            prod[deg - e + k] = (prod[deg - e + k] + (p - l % p) * c) % p;
                        }
                    }
                }
                value(&prod[..e])
            })
            .collect();
        let is_field = (1..q).all(|a| (1..q).any(|b| mul[a * q + b] == 1));
        if is_field {
            return Some((add, mul));
        }
    }
    None
}

/// Removes the points `dropped` from an affine plane of order `q`. A trimmed
/// line keeps its old block unless its original met `dropped` in exactly one
/// point `d`; such lines form a new block per `d`, numbered after the old
/// blocks in the order of `dropped`. Surviving points are renumbered in
/// increasing order.
///
/// Every block of the result has a line of three or more points when
/// `q >= 4`; for `q = 3` the new blocks consist of two-point lines only.
pub fn drop_points(plane: &Geometry, dropped: &[usize]) -> Result<Geometry> {
    let points = plane.space.point_count;
    let q = (1..=points).find(|q| q * q >= points).unwrap_or(0);
    let is_plane = q >= 2
        && q * q == points
        && plane.space.lines.iter().all(|l| l.len() == q)
        && plane.parallelism.block_count() == q + 1
        && plane.parallelism.blocks.iter().all(|b| b.len() == q);
    if !is_plane {
        return Err(Error::Precondition("input is not an affine plane".into()));
    }
    plane.require_valid()?;
    if q < 3 {
        return Err(Error::Precondition(format!("plane order {q} is below 3")));
    }
    let k = dropped.len();
    if k + 2 > q {
        return Err(Error::Precondition(format!(
            "cannot drop {k} points from a plane of order {q}; at most {}",
            q - 2
        )));
    }
    let mut gone = vec![false; points];
    for &d in dropped {
        if d >= points {
            return Err(Error::Precondition(format!(
                "point {d} is not in the plane"
            )));
        }
        if gone[d] {
            return Err(Error::Precondition(format!("point {d} listed twice")));
        }
        gone[d] = true;
    }
    let mut rename = vec![usize::MAX; points];
    let mut next = 0;
    for x in (0..points).filter(|&x| !gone[x]) {
        rename[x] = next;
        next += 1;
    }
    let old_block = plane.parallelism.block_of(plane.space.line_count());
    let old_blocks = plane.parallelism.block_count();
    let mut lines = Vec::with_capacity(plane.space.line_count());
    let mut blocks = vec![Vec::new(); old_blocks + k];
    for (i, line) in plane.space.lines.iter().enumerate() {
        let hits: Vec<usize> = line.iter().copied().filter(|&x| gone[x]).collect();
        let block = match hits.as_slice() {
            [d] => old_blocks + dropped.iter().position(|x| x == d).expect("d is dropped"),
            _ => old_block[i],
        };
        blocks[block].push(lines.len());
        lines.push(
            line.iter()
                .filter(|&&x| !gone[x])
                .map(|&x| rename[x])
                .collect(),
        );
    }
    blocks.retain(|b| !b.is_empty());
    let out = Geometry::new(LinearSpace::new(next, lines)?, Parallelism::new(blocks));
    out.require_valid()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig13(n: usize) -> Signature {
        Signature::new(&[1, 3], n).unwrap()
    }

    #[test]
    fn primes() {
        let ps: Vec<usize> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn affine_plane_counts() {
        for (p, pts, lines, blocks) in [(2, 4, 6, 3), (3, 9, 12, 4), (5, 25, 30, 6), (7, 49, 56, 8)]
        {
            let g = affine_plane(p).unwrap();
            assert_eq!(g.space.point_count(), pts);
            assert_eq!(g.space.line_count(), lines);
            assert_eq!(g.block_count(), blocks);
            assert!(g.space.validate().is_valid());
            assert!(g.parallelism.validate(&g.space).is_valid());
        }
        assert!(affine_plane(4).is_err());
        assert!(affine_plane(1).is_err());
    }

    #[test]
    fn affine_plane_three_is_lyndon() {
        let g = affine_plane(3).unwrap();
        assert!(g.check_ls4().passed);
        let ls5 = g.check_ls5();
        assert!(ls5.passed);
        assert_eq!(ls5.witnesses.len(), 4);
    }

    #[test]
    fn ls2_overlap_is_reported() {
        let sp = LinearSpace::new(3, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        let r = sp.validate();
        assert_eq!(r.overlapping_lines.items, vec![[0, 1]]);
        assert!(!r.is_valid());
    }

    #[test]
    fn uncovered_and_short() {
        let sp = LinearSpace::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let r = sp.validate();
        assert_eq!(r.short_lines.items, vec![1]);
        assert!(r
            .coverage
            .items
            .iter()
            .any(|c| c.points == [0, 2] && c.lines == 0));
    }

    #[test]
    fn crossing_parallels_are_reported() {
        let g = near_pencil(4).unwrap();
        let bad = Parallelism::new(vec![vec![0, 1], vec![2], vec![3]]);
        let r = bad.validate(&g.space);
        assert_eq!(r.crossing.items, vec![[0, 1]]);
        let missing = Parallelism::new(vec![vec![0], vec![1], vec![2]]);
        assert_eq!(missing.validate(&g.space).unassigned.items, vec![3]);
    }

    #[test]
    fn near_pencil_shape() {
        let g3 = near_pencil(3).unwrap();
        assert_eq!(g3.space.lines(), &[vec![1, 2], vec![0, 1], vec![0, 2]]);
        assert_eq!(g3.block_count(), 3);
        let g4 = near_pencil(4).unwrap();
        assert_eq!(g4.space.line_count(), 4);
        assert_eq!(g4.block_count(), 4);
        assert!(near_pencil(2).is_err());
        let g5 = near_pencil(5).unwrap();
        assert!(g5.space.validate().is_valid());
        assert!(!g5.check_ls4().passed);
        assert_eq!(g5.check_ls4().failing_blocks, vec![1, 2, 3, 4]);
    }

    #[test]
    fn near_pencil_colouring() {
        let c = near_pencil(4).unwrap().to_colouring().unwrap();
        let s = sig13(4);
        assert!(c.verify(s, Level::Feeble).unwrap().passed);
        assert_eq!(c.classify_triangle(1, 2, 3).unwrap(), 1);
        assert_eq!(c.classify_triangle(0, 1, 2).unwrap(), 3);
        assert!(!c.verify(s, Level::Qualitative).unwrap().passed);
    }

    #[test]
    fn drop_points_counts() {
        let g = drop_points(&affine_plane(3).unwrap(), &[0]).unwrap();
        assert_eq!(g.space.point_count(), 8);
        assert_eq!(g.block_count(), 5);
        let g = drop_points(&affine_plane(5).unwrap(), &[0, 1, 7]).unwrap();
        assert_eq!(g.space.point_count(), 22);
        assert_eq!(g.block_count(), 9);
        assert!(g.space.lines().iter().all(|l| l.len() >= 2));
    }

    #[test]
    fn drop_points_rejects_bad_input() {
        let a3 = affine_plane(3).unwrap();
        assert!(drop_points(&a3, &[0, 1]).is_err());
        assert!(drop_points(&a3, &[9]).is_err());
        let a5 = affine_plane(5).unwrap();
        assert!(drop_points(&a5, &[3, 3]).is_err());
        assert!(drop_points(&affine_plane(2).unwrap(), &[]).is_err());
        assert!(drop_points(&near_pencil(4).unwrap(), &[]).is_err());
    }

    #[test]
    fn drop_points_all_single_points_in_order_three() {
        let a3 = affine_plane(3).unwrap();
        for d in 0..9 {
            let g = drop_points(&a3, &[d]).unwrap();
            assert_eq!(g.block_count(), 5);
            // Lines through the dropped point shrink to two points.
            assert_eq!(g.check_ls4().failing_blocks, vec![4]);
            assert!(g.check_ls5().passed);
        }
    }

    #[test]
    fn prime_power_planes() {
        for (q, blocks) in [(4, 5), (8, 9), (9, 10)] {
            let g = affine_plane_of_order(q).unwrap();
            assert_eq!(g.space.point_count(), q * q);
            assert_eq!(g.block_count(), blocks);
            assert!(g.space.validate().is_valid());
            assert!(g.parallelism.validate(&g.space).is_valid());
        }
        assert!(affine_plane_of_order(6).is_err());
        assert!(affine_plane_of_order(1).is_err());
        let g7 = affine_plane_of_order(7).unwrap();
        assert!(g7.is_isomorphic(&affine_plane(7).unwrap()).unwrap());
    }

    #[test]
    fn drop_one_point_from_order_five_is_lyndon() {
        let g = drop_points(&affine_plane(5).unwrap(), &[0]).unwrap();
        assert!(g.check_ls4().passed);
        assert!(g.check_ls5().passed);
    }

    #[test]
    fn colourings_from_planes() {
        let c = affine_plane(3).unwrap().to_colouring().unwrap();
        assert!(c.verify(sig13(4), Level::Strong).unwrap().passed);
        let c = drop_points(&affine_plane(3).unwrap(), &[0])
            .unwrap()
            .to_colouring()
            .unwrap();
        assert!(c.verify(sig13(5), Level::Feeble).unwrap().passed);
        assert!(!c.verify(sig13(5), Level::Qualitative).unwrap().passed);
        let c = drop_points(&affine_plane(5).unwrap(), &[0])
            .unwrap()
            .to_colouring()
            .unwrap();
        assert!(c.verify(sig13(7), Level::Qualitative).unwrap().passed);
        let c = affine_plane_of_order(4).unwrap().to_colouring().unwrap();
        assert!(c.verify(sig13(5), Level::Strong).unwrap().passed);
    }

    #[test]
    fn round_trips() {
        let built = vec![
            affine_plane(2).unwrap(),
            affine_plane(3).unwrap(),
            affine_plane(5).unwrap(),
            near_pencil(3).unwrap(),
            near_pencil(5).unwrap(),
            drop_points(&affine_plane(5).unwrap(), &[4, 10]).unwrap(),
        ];
        for g in built {
            let back = Geometry::from_colouring(&g.to_colouring().unwrap()).unwrap();
            assert_eq!(back.space.line_count(), g.space.line_count());
            assert!(back.is_isomorphic(&g).unwrap());
        }
    }

    #[test]
    fn single_colour_triangle_is_one_line() {
        let g = Geometry::from_colouring(&EdgeColouring::monochromatic(3)).unwrap();
        assert_eq!(g.space.lines(), &[vec![0, 1, 2]]);
        assert_eq!(g.block_count(), 1);
    }

    #[test]
    fn from_colouring_rejects_dichromatic() {
        let c = EdgeColouring::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        assert!(Geometry::from_colouring(&c).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = near_pencil(4).unwrap();
        let text = g.to_json();
        assert_eq!(
            text,
            r#"{"points":4,"lines":[[1,2,3],[0,1],[0,2],[0,3]],"blocks":[[0],[1],[2],[3]]}"#
        );
        assert_eq!(Geometry::from_json(&text).unwrap(), g);
    }
}
