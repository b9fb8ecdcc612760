//! Commutative idempotent quasigroups and the colourings they induce.
//!
//! Quasigroup elements are `0..order`; element `k` corresponds to colour
//! `k + 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Signature;
use crate::colouring::{EdgeColouring, Level};
use crate::error::{Error, Result};
use crate::report::Witnesses;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    order: usize,
    table: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum LatinViolation {
    /// `value` occurs more than once in `row`.
    Row { row: usize, value: usize },
    /// `value` occurs more than once in `column`.
    Column { column: usize, value: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasigroupReport {
    pub latin: Witnesses<LatinViolation>,
    /// Cells `(i, j)`, `i < j`, with `i·j != j·i`.
    pub commutative: Witnesses<[usize; 2]>,
    /// Elements `i` with `i·i != i`.
    pub idempotent: Witnesses<usize>,
}

impl QuasigroupReport {
    pub fn is_valid(&self) -> bool {
        self.latin.is_empty() && self.commutative.is_empty() && self.idempotent.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeCycleReport {
    pub holds: bool,
    /// For each `x < y < z`, the least `(u, v, w)` with `u·v = x`, `v·w = y`, `w·u = z`.
    pub witnesses: BTreeMap<[usize; 3], [usize; 3]>,
    pub failures: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDocument {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl Quasigroup {
    /// Wraps a square table with entries in range. Quasigroup axioms are
    /// checked separately by [`Quasigroup::validate`].
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidQuasigroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidQuasigroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= order) {
                return Err(Error::InvalidQuasigroup(format!(
                    "row {i} contains {v} >= {order}"
                )));
            }
            flat.extend_from_slice(row);
        }
        Ok(Quasigroup { order, table: flat })
    }

    /// `i·j = (i + j) / 2` in `Z_n`, for odd `n >= 3`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "the standard quasigroup needs odd order >= 3, got {n}"
            )));
        }
        let half = n.div_ceil(2);
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) * half % n))
            .collect();
        Ok(Quasigroup { order: n, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn validate(&self) -> QuasigroupReport {
        let n = self.order;
        let mut latin = Vec::new();
        for line in 0..n {
            let mut row_seen = vec![0usize; n];
            let mut col_seen = vec![0usize; n];
            for k in 0..n {
                row_seen[self.op(line, k)] += 1;
                col_seen[self.op(k, line)] += 1;
            }
            for value in 0..n {
                if row_seen[value] > 1 {
                    latin.push(LatinViolation::Row { row: line, value });
                }
                if col_seen[value] > 1 {
                    latin.push(LatinViolation::Column {
                        column: line,
                        value,
                    });
                }
            }
        }
        let mut commutative = Witnesses::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.op(i, j) != self.op(j, i) {
                    commutative.push([i, j]);
                }
            }
        }
        let mut idempotent = Witnesses::new();
        for i in (0..n).filter(|&i| self.op(i, i) != i) {
            idempotent.push(i);
        }
        QuasigroupReport {
            latin: Witnesses::from_unsorted(latin),
            commutative,
            idempotent,
        }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidQuasigroup(format!(
                "{} latin, {} commutativity, {} idempotency violations",
                report.latin.total, report.commutative.total, report.idempotent.total
            )))
        }
    }

    /// Decides, for every triple of distinct elements, whether some `u, v, w`
    /// have `u·v`, `v·w`, `w·u` equal to the triple.
    pub fn three_cycle_condition(&self) -> ThreeCycleReport {
        let n = self.order;
        let mut witnesses = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                let x = self.op(u, v);
                for w in 0..n {
                    let (y, z) = (self.op(v, w), self.op(w, u));
                    if x < y && y < z {
                        witnesses.entry([x, y, z]).or_insert([u, v, w]);
                    }
                }
            }
        }
        let mut failures = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    if !witnesses.contains_key(&[x, y, z]) {
                        failures.push([x, y, z]);
                    }
                }
            }
        }
        ThreeCycleReport {
            holds: failures.is_empty(),
            witnesses,
            failures,
        }
    }

    /// `K_n` with `colour(i, j) = 1 + i·j`.
    pub fn lambda1(&self) -> Result<EdgeColouring> {
        self.require_valid()?;
        EdgeColouring::from_fn(self.order, self.order, |i, j| self.op(i, j) + 1)
    }

    /// [`Quasigroup::lambda1`] plus a final vertex `n` with `colour(n, i) = i + 1`.
    pub fn lambda2(&self) -> Result<EdgeColouring> {
        self.require_valid()?;
        let n = self.order;
        EdgeColouring::from_fn(
            n + 1,
            n,
            |i, j| if j == n { i + 1 } else { self.op(i, j) + 1 },
        )
    }

    /// Reads a quasigroup off a qualitative representation of the trichromatic
    /// algebra on `n + 1` vertices. The last vertex plays the apex `v_{-1}`;
    /// every other vertex `v` is renamed to `colour(apex, v) - 1`.
    pub fn from_colouring(col: &EdgeColouring) -> Result<Self> {
        let n = col.colour_count();
        if col.vertex_count() != n + 1 {
            return Err(Error::Precondition(format!(
                "expected {} vertices for {n} colours, got {}",
                n + 1,
                col.vertex_count()
            )));
        }
        let sig = Signature::new(&[3], n)?;
        if !col.verify(sig, Level::Qualitative)?.passed {
            return Err(Error::Precondition(
                "colouring is not a qualitative representation of the trichromatic algebra".into(),
            ));
        }
        let apex = n;
        let name: Vec<usize> = (0..n).map(|v| col.colour(apex, v) - 1).collect();
        let mut table = vec![vec![0; n]; n];
        for v in 0..n {
            for w in 0..n {
                table[name[v]][name[w]] = if v == w {
                    name[v]
                } else {
                    col.colour(v, w) - 1
                };
            }
        }
        let q = Quasigroup::from_table(table)?;
        q.require_valid()?;
        Ok(q)
    }

    /// Some bijection `f` with `f(a·b) = f(a)·f(b)`, if one exists.
    pub fn isomorphism_to(&self, other: &Quasigroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let n = self.order;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            a: &Quasigroup,
            b: &Quasigroup,
            map: &mut [usize],
            used: &mut [bool],
            next: usize,
        ) -> bool {
            let n = a.order;
            if next == n {
                return true;
            }
            for img in 0..n {
                if used[img] {
                    continue;
                }
                map[next] = img;
                let consistent = (0..=next).all(|x| {
                    let (l, r) = (a.op(x, next), a.op(next, x));
                    let ok_l = l > next || map[l] == b.op(map[x], img);
                    let ok_r = r > next || map[r] == b.op(img, map[x]);
                    ok_l && ok_r
                });
                if consistent {
                    used[img] = true;
                    if extend(a, b, map, used, next + 1) {
                        return true;
                    }
                    used[img] = false;
                }
                map[next] = usize::MAX;
            }
            false
        }
        if extend(self, other, &mut map, &mut used, 0) {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &Quasigroup) -> bool {
        self.isomorphism_to(other).is_some()
    }

    pub fn to_document(&self) -> CayleyDocument {
        CayleyDocument {
            order: self.order,
            table: self.rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CayleyDocument = serde_json::from_str(text)?;
        if doc.table.len() != doc.order {
            return Err(Error::Format(format!(
                "order {} but {} rows",
                doc.order,
                doc.table.len()
            )));
        }
        Quasigroup::from_table(doc.table)
    }
}

/// [`Quasigroup::standard`] under its conventional name.
pub fn standard_qn(n: usize) -> Result<Quasigroup> {
    Quasigroup::standard(n)
}
