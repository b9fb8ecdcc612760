//! Canonical forms by partition refinement with individualization.

use serde::{Deserialize, Serialize};

use super::EdgeColouring;

/// Which relabellings count as the same colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    /// Vertex permutations combined with colour permutations.
    #[default]
    VertexAndColour,
    /// Vertex permutations only; colour names are significant.
    VertexOnly,
}

const MAX_GENERATORS: usize = 64;

struct State<'a> {
    col: &'a EdgeColouring,
    eq: Equivalence,
    best: Option<(Vec<u8>, Vec<usize>)>,
    first: Option<(Vec<u8>, Vec<usize>)>,
    /// Individualization paths of the first and the best leaf.
    first_path: Vec<usize>,
    best_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

/// Returned by `search` when no backjump is pending.
const NO_JUMP: usize = usize::MAX;

impl EdgeColouring {
    /// Canonical relabelling under `eq`: equal for two colourings exactly
    /// when one is a relabelling of the other.
    pub fn canonical_form(&self, eq: Equivalence) -> EdgeColouring {
        self.canonical_with_order(eq).0
    }

    /// Canonical form plus the vertex order realizing it: `order[p]` is the
    /// original vertex placed at canonical position `p`.
    pub fn canonical_with_order(&self, eq: Equivalence) -> (EdgeColouring, Vec<usize>) {
        let m = self.m;
        let mut state = State {
            col: self,
            eq,
            best: None,
            first: None,
            first_path: Vec::new(),
            best_path: Vec::new(),
            generators: Vec::new(),
        };
        if m > 0 {
            let mut path = Vec::new();
            state.search(vec![(0..m).collect()], &mut path);
        }
        let (code, order) = state.best.unwrap_or_default();
        (EdgeColouring::from_raw(m, self.n, code), order)
    }
}

/// Whether `a` and `b` are related by a relabelling allowed by `eq`.
pub fn are_isomorphic(a: &EdgeColouring, b: &EdgeColouring, eq: Equivalence) -> bool {
    a.m == b.m && a.n == b.n && a.canonical_form(eq) == b.canonical_form(eq)
}

impl State<'_> {
    /// Explores the subtree below `path`. Returns the depth of the ancestor
    /// that should move on to its next candidate, or `NO_JUMP`.
    fn search(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> usize {
        let cells = self.refine(cells);
        if cells.len() == self.col.m {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            return self.leaf(order, path);
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for &x in &candidates {
            if !explored.is_empty() {
                let orbit = self.stabilizer_orbits(path);
                if explored.iter().any(|&y| find(&orbit, y) == find(&orbit, x)) {
                    continue;
                }
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    next.push(vec![x]);
                    next.push(cell.iter().copied().filter(|&v| v != x).collect());
                } else {
                    next.push(cell.clone());
                }
            }
            path.push(x);
            let jump = self.search(next, path);
            path.pop();
            explored.push(x);
            if jump < path.len() {
                return jump;
            }
        }
        NO_JUMP
    }

    /// Records a leaf. When it matches the first or the best leaf, the
    /// matching permutation is an automorphism mapping an explored subtree
    /// onto the current one, so the search jumps back to where they split.
    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> usize {
        let code = self.code(&order);
        let Some((best, best_order)) = &self.best else {
            self.first_path = path.to_vec();
            self.best_path = path.to_vec();
            self.first = Some((code.clone(), order.clone()));
            self.best = Some((code, order));
            return NO_JUMP;
        };
        match code.cmp(best) {
            std::cmp::Ordering::Less => {
                self.best_path = path.to_vec();
                self.best = Some((code, order));
                NO_JUMP
            }
            std::cmp::Ordering::Equal => {
                let perm = mapping(best_order, &order);
                self.add_generator(perm);
                common_prefix(path, &self.best_path)
            }
            std::cmp::Ordering::Greater => match &self.first {
                Some((first_code, first_order)) if *first_code == code => {
                    let perm = mapping(first_order, &order);
                    self.add_generator(perm);
                    common_prefix(path, &self.first_path)
                }
                _ => NO_JUMP,
            },
        }
    }

    fn add_generator(&mut self, perm: Vec<usize>) {
        if self.generators.len() < MAX_GENERATORS && perm.iter().enumerate().any(|(i, &v)| i != v) {
            self.generators.push(perm);
        }
    }

    fn code(&self, order: &[usize]) -> Vec<u8> {
        let m = order.len();
        let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        let mut rename = vec![0u8; self.col.n + 1];
        let mut next = 1u8;
        for j in 1..m {
            for i in 0..j {
                let c = self.col.colour(order[i], order[j]);
                match self.eq {
                    Equivalence::VertexOnly => out.push(c as u8),
                    Equivalence::VertexAndColour => {
                        if rename[c] == 0 {
                            rename[c] = next;
                            next += 1;
                        }
                        out.push(rename[c]);
                    }
                }
            }
        }
        out
    }

    /// Union-find roots of the orbits of the generators fixing `path` pointwise.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.col.m).collect();
        for g in &self.generators {
            if path.iter().all(|&p| g[p] == p) {
                for (v, &w) in g.iter().enumerate() {
                    let (a, b) = (find(&parent, v), find(&parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        parent
    }

    /// Splits cells until every vertex in a cell sees the same number of
    /// vertices of each cell along each colour class.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let m = self.col.m;
        let n = self.col.n;
        let mut cell_of = vec![0usize; m];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let k = cells.len();
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(m);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| (self.signature(v, &cell_of, k, n), v))
                    .collect();
                keyed.sort();
                let mut start = 0;
                for idx in 1..=keyed.len() {
                    if idx == keyed.len() || keyed[idx].0 != keyed[start].0 {
                        next.push(keyed[start..idx].iter().map(|e| e.1).collect());
                        start = idx;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn signature(&self, v: usize, cell_of: &[usize], k: usize, n: usize) -> Vec<u32> {
        let mut rows = vec![vec![0u32; k]; n];
        for w in (0..self.col.m).filter(|&w| w != v) {
            rows[self.col.colour(v, w) - 1][cell_of[w]] += 1;
        }
        if self.eq == Equivalence::VertexAndColour {
            rows.sort_unstable();
        }
        rows.concat()
    }
}

/// The permutation sending `from[p]` to `to[p]` for every position `p`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; from.len()];
    for (p, &v) in from.iter().enumerate() {
        perm[v] = to[p];
    }
    perm
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}
