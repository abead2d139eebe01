//! Recovers the underlying lattice order from a base table and its extended
//! table: a constraint search over three-state order matrices with
//! propagation, region branching per cell, and full re-verification of every
//! candidate by regenerating the extension.

use crate::binop::BinOpTable;
use crate::construct::{construct, ConstructionId, Request};
use crate::io::{RawTable, RawUnary};
use crate::lattice::Lattice;
use crate::unary::UnaryOpTable;
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

const MAX_NODES: usize = 500_000;
const MAX_SOLUTIONS: usize = 64;

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("reconstruction is not implemented for `{0}`")]
    UnsupportedConstruction(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("no lattice order is consistent with the tables")]
    NoConsistentLattice,
    #[error("{} minimal lattices are consistent with the tables", solutions.len())]
    AmbiguousLattice { solutions: Vec<Lattice> },
    #[error("search budget exceeded before any consistent lattice was found")]
    SearchBudgetExceeded,
}

/// A successful reconstruction: the inclusion-minimal consistent order,
/// plus any other consistent orders the search encountered.
#[derive(Debug)]
pub struct Reconstruction {
    pub lattice: Lattice,
    pub solutions_found: usize,
    pub exhaustive: bool,
    pub alternatives: Vec<Lattice>,
}

/// Searches for every lattice order on the extended carrier under which the
/// base table is a uninorm on the anchored interval and the named
/// construction regenerates the extended table bit-exactly.
pub fn reconstruct_fixture(
    id: ConstructionId,
    base: &RawTable,
    extended: &RawTable,
    unary: Option<&RawUnary>,
) -> Result<Reconstruction, ReconstructError> {
    let (lower_id, dualize) = match id {
        ConstructionId::U1 => (ConstructionId::U1, false),
        ConstructionId::U3 => (ConstructionId::U3, false),
        ConstructionId::U2 => (ConstructionId::U1, true),
        ConstructionId::U4 => (ConstructionId::U3, true),
        other => return Err(ReconstructError::UnsupportedConstruction(other.as_str().into())),
    };
    let problem = Problem::build(lower_id, base, extended, unary)?;
    let mut search = Search::new(&problem);
    search.run();
    let mut solutions: Vec<Vec<u64>> = search.solutions.into_iter().collect();
    if solutions.is_empty() {
        return if search.truncated {
            Err(ReconstructError::SearchBudgetExceeded)
        } else {
            Err(ReconstructError::NoConsistentLattice)
        };
    }
    // Keep only inclusion-minimal orders.
    let minimal: Vec<Vec<u64>> = solutions
        .iter()
        .filter(|s| {
            !solutions
                .iter()
                .any(|t| t != *s && t.iter().zip(s.iter()).all(|(a, b)| a & b == *a))
        })
        .cloned()
        .collect();
    let to_lattice = |rows: &Vec<u64>| -> Lattice {
        let lat = problem.lattice_of(rows);
        if dualize {
            lat.dual()
        } else {
            lat
        }
    };
    if minimal.len() > 1 {
        return Err(ReconstructError::AmbiguousLattice {
            solutions: minimal.iter().map(to_lattice).collect(),
        });
    }
    let chosen = minimal[0].clone();
    solutions.retain(|s| *s != chosen);
    let lattice = to_lattice(&chosen);
    if dualize && problem.neutral_candidates.len() == 1 {
        debug_assert!(
            verify_on(&problem, id, Arc::new(lattice.clone())),
            "dual transport must re-verify"
        );
    }
    Ok(Reconstruction {
        lattice,
        solutions_found: solutions.len() + 1,
        exhaustive: !search.truncated,
        alternatives: solutions.iter().map(to_lattice).collect(),
    })
}

// --- problem compilation ---

struct Problem {
    id: ConstructionId,
    labels: Vec<String>,
    n: usize,
    /// Extended-carrier indices of base-carrier elements, in base order.
    inner: Vec<usize>,
    inner_set: Vec<bool>,
    /// Base values, remapped to extended indices; usize::MAX off the carrier.
    base_val: Vec<usize>,
    /// Extended values as extended indices.
    ext: Vec<usize>,
    /// Unary map as extended indices (identity when absent).
    cl: Vec<usize>,
    base_name: String,
    ext_name: String,
    neutral_candidates: Vec<usize>,
}

impl Problem {
    fn build(
        id: ConstructionId,
        base: &RawTable,
        extended: &RawTable,
        unary: Option<&RawUnary>,
    ) -> Result<Problem, ReconstructError> {
        let bad = |m: String| ReconstructError::MalformedInput(m);
        let labels = extended.carrier.clone();
        let n = labels.len();
        if n == 0 || n > 64 {
            return Err(bad(format!("extended carrier has {n} elements")));
        }
        let pos = |l: &str| labels.iter().position(|x| x == l);
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(bad(format!("duplicate element `{l}` in extended carrier")));
            }
        }
        let mut inner = Vec::new();
        let mut inner_set = vec![false; n];
        for l in &base.carrier {
            let Some(i) = pos(l) else {
                return Err(bad(format!("base element `{l}` is not in the extended carrier")));
            };
            if inner_set[i] {
                return Err(bad(format!("duplicate element `{l}` in base carrier")));
            }
            inner_set[i] = true;
            inner.push(i);
        }
        let mut ext = vec![0usize; n * n];
        for (i, row) in extended.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let Some(k) = pos(v) else {
                    return Err(bad(format!("extended value `{v}` is not a carrier element")));
                };
                ext[i * n + j] = k;
            }
        }
        let mut base_val = vec![usize::MAX; n * n];
        for (bi, row) in base.rows.iter().enumerate() {
            for (bj, v) in row.iter().enumerate() {
                let Some(k) = pos(v) else {
                    return Err(bad(format!("base value `{v}` is not in the extended carrier")));
                };
                if !inner_set[k] {
                    return Err(ReconstructError::NoConsistentLattice);
                }
                base_val[inner[bi] * n + inner[bj]] = k;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if ext[i * n + j] != ext[j * n + i] {
                    return Err(ReconstructError::NoConsistentLattice);
                }
                if inner_set[i] && inner_set[j] {
                    if base_val[i * n + j] != base_val[j * n + i] {
                        return Err(ReconstructError::NoConsistentLattice);
                    }
                    // Inside the anchored interval the extension is the base.
                    if ext[i * n + j] != base_val[i * n + j] {
                        return Err(ReconstructError::NoConsistentLattice);
                    }
                }
            }
        }
        let mut cl: Vec<usize> = (0..n).collect();
        if let Some(u) = unary {
            for (x, y) in &u.pairs {
                let (Some(i), Some(j)) = (pos(x), pos(y)) else {
                    return Err(bad(format!("unary pair `{x} -> {y}` leaves the carrier")));
                };
                cl[i] = j;
            }
            for i in 0..n {
                if cl[cl[i]] != cl[i] {
                    return Err(ReconstructError::NoConsistentLattice);
                }
            }
        }
        // Neutral candidates: rows that reproduce the carrier.
        let neutral_candidates: Vec<usize> = inner
            .iter()
            .copied()
            .filter(|&e| inner.iter().all(|&x| base_val[e * n + x] == x))
            .collect();
        if neutral_candidates.is_empty() {
            return Err(ReconstructError::NoConsistentLattice);
        }
        Ok(Problem {
            id,
            labels,
            n,
            inner,
            inner_set,
            base_val,
            ext,
            cl,
            base_name: base.name.clone(),
            ext_name: extended.name.clone(),
            neutral_candidates,
        })
    }

    fn lattice_of(&self, rows: &[u64]) -> Lattice {
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        Lattice::from_leq(&format!("{}-order", self.ext_name), &labels, rows)
            .expect("solutions were validated")
    }
}

// --- relation state ---

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tri {
    Unknown,
    True,
    False,
}

#[derive(Clone)]
struct State {
    n: usize,
    rel: Vec<Tri>,
    joins: Vec<(usize, usize, usize)>,
    contradiction: bool,
    dirty: bool,
}

impl State {
    fn new(n: usize) -> State {
        let mut s = State {
            n,
            rel: vec![Tri::Unknown; n * n],
            joins: Vec::new(),
            contradiction: false,
            dirty: false,
        };
        for i in 0..n {
            s.rel[i * n + i] = Tri::True;
        }
        s
    }

    fn get(&self, i: usize, j: usize) -> Tri {
        self.rel[i * self.n + j]
    }

    fn set_true(&mut self, i: usize, j: usize) {
        match self.get(i, j) {
            Tri::True => {}
            Tri::False => self.contradiction = true,
            Tri::Unknown => {
                if i != j && self.get(j, i) == Tri::True {
                    self.contradiction = true;
                    return;
                }
                self.rel[i * self.n + j] = Tri::True;
                self.dirty = true;
            }
        }
    }

    fn set_false(&mut self, i: usize, j: usize) {
        if i == j {
            self.contradiction = true;
            return;
        }
        match self.get(i, j) {
            Tri::False => {}
            Tri::True => self.contradiction = true,
            Tri::Unknown => {
                self.rel[i * self.n + j] = Tri::False;
                self.dirty = true;
            }
        }
    }

    fn pin_join(&mut self, x: usize, y: usize, v: usize) {
        self.joins.push((x, y, v));
        self.dirty = true;
    }

    /// Runs every propagation rule to a fixpoint.
    fn propagate(&mut self, p: &Problem) {
        while self.dirty && !self.contradiction {
            self.dirty = false;
            let n = self.n;
            for i in 0..n {
                for j in 0..n {
                    if self.get(i, j) != Tri::True {
                        continue;
                    }
                    if i != j && self.get(j, i) == Tri::True {
                        self.contradiction = true;
                        return;
                    }
                    for k in 0..n {
                        // i <= j and j <= k force i <= k.
                        if self.get(j, k) == Tri::True {
                            self.set_true(i, k);
                        }
                        // i <= j and not i <= k force not j <= k.
                        if self.get(i, k) == Tri::False {
                            self.set_false(j, k);
                        }
                        // j <= k and not i <= k force not i <= j.
                        if self.get(k, i) == Tri::True && self.get(k, j) == Tri::False {
                            self.contradiction = true;
                            return;
                        }
                    }
                }
            }
            for i in 0..n {
                for k in 0..n {
                    if self.get(i, k) != Tri::False {
                        continue;
                    }
                    for j in 0..n {
                        // j <= k and not i <= k force not i <= j.
                        if self.get(j, k) == Tri::True {
                            self.set_false(i, j);
                        }
                    }
                }
            }
            if self.contradiction {
                return;
            }
            for idx in 0..self.joins.len() {
                let (x, y, v) = self.joins[idx];
                self.set_true(x, v);
                self.set_true(y, v);
                for u in 0..n {
                    let xu = self.get(x, u);
                    let yu = self.get(y, u);
                    let vu = self.get(v, u);
                    if xu == Tri::True && yu == Tri::True {
                        self.set_true(v, u);
                    }
                    if vu == Tri::False {
                        if xu == Tri::True {
                            self.set_false(y, u);
                        }
                        if yu == Tri::True {
                            self.set_false(x, u);
                        }
                    }
                }
                if self.contradiction {
                    return;
                }
            }
            // Base monotonicity: x <= y forces base(x, z) <= base(y, z).
            for &x in &p.inner {
                for &y in &p.inner {
                    if x == y || self.get(x, y) != Tri::True {
                        continue;
                    }
                    for &z in &p.inner {
                        self.set_true(p.base_val[x * self.n + z], p.base_val[y * self.n + z]);
                    }
                }
            }
            if self.contradiction {
                return;
            }
        }
    }

    fn rows(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                let mut m = 0u64;
                for j in 0..self.n {
                    if self.get(i, j) == Tri::True {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect()
    }

    fn unknown_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) == Tri::Unknown {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

// --- cell constraints ---

#[derive(Clone)]
struct Branch {
    trues: Vec<(usize, usize)>,
    falses: Vec<(usize, usize)>,
    joins: Vec<(usize, usize, usize)>,
    /// The cell value must be exactly this element.
    value_must_be: Option<usize>,
    /// The cell value must be the global top.
    value_is_top: bool,
}

struct CellConstraint {
    value: usize,
    branches: Vec<Branch>,
}

impl Branch {
    fn feasible(&self, value: usize) -> bool {
        self.value_must_be.map_or(true, |w| w == value)
    }

    fn apply(&self, s: &mut State, value: usize, n: usize) {
        for &(i, j) in &self.trues {
            s.set_true(i, j);
        }
        for &(i, j) in &self.falses {
            s.set_false(i, j);
        }
        for &(x, y, v) in &self.joins {
            s.pin_join(x, y, v);
        }
        if self.value_is_top {
            for z in 0..n {
                s.set_true(z, value);
            }
        }
    }
}

/// Compiles the region structure of one unordered cell into branches; exactly
/// one branch is true of the real order, and every candidate is re-verified,
/// so overlapping branches only cost time.
fn compile_cells(p: &Problem, e: usize, anchor: usize) -> Vec<CellConstraint> {
    let n = p.n;
    let mut cells = Vec::new();
    for i in 0..n {
        for j in i..n {
            if p.inner_set[i] && p.inner_set[j] {
                continue; // order-independent, checked during compilation
            }
            let v = p.ext[i * n + j];
            let (x, y) = if p.inner_set[j] { (i, j) } else { (j, i) };
            // Now x is outer; y is inner when the cell is mixed.
            let branches = if p.inner_set[y] {
                match p.id {
                    ConstructionId::U1 => vec![
                        // inner in [0, e], outer incomparable with e and anchor
                        Branch {
                            trues: vec![(y, e)],
                            falses: vec![(x, e), (e, x), (anchor, x)],
                            joins: vec![],
                            value_must_be: Some(x),
                            value_is_top: false,
                        },
                        Branch {
                            trues: vec![],
                            falses: vec![],
                            joins: vec![(x, y, v)],
                            value_must_be: None,
                            value_is_top: false,
                        },
                    ],
                    _ => vec![
                        // inner in [0, e]: the outer argument absorbs
                        Branch {
                            trues: vec![(y, e)],
                            falses: vec![],
                            joins: vec![],
                            value_must_be: Some(x),
                            value_is_top: false,
                        },
                        Branch {
                            trues: vec![],
                            falses: vec![(y, e)],
                            joins: vec![],
                            value_must_be: None,
                            value_is_top: true,
                        },
                    ],
                }
            } else {
                match p.id {
                    ConstructionId::U1 => vec![Branch {
                        trues: vec![],
                        falses: vec![],
                        joins: vec![(x, y, v)],
                        value_must_be: None,
                        value_is_top: false,
                    }],
                    _ => vec![
                        // both incomparable with e and anchor
                        Branch {
                            trues: vec![],
                            falses: vec![
                                (x, e),
                                (e, x),
                                (anchor, x),
                                (y, e),
                                (e, y),
                                (anchor, y),
                            ],
                            joins: vec![(p.cl[x], p.cl[y], v)],
                            value_must_be: None,
                            value_is_top: false,
                        },
                        // The complement "not both doubly incomparable" is cut
                        // into exclusive branches that each commit order facts,
                        // so propagation can reject them early.
                        Branch {
                            trues: vec![(e, x)],
                            falses: vec![],
                            joins: vec![],
                            value_must_be: None,
                            value_is_top: true,
                        },
                        Branch {
                            trues: vec![(anchor, x)],
                            falses: vec![(x, e), (e, x)],
                            joins: vec![],
                            value_must_be: None,
                            value_is_top: true,
                        },
                        Branch {
                            trues: vec![(e, y)],
                            falses: vec![(x, e), (e, x), (anchor, x)],
                            joins: vec![],
                            value_must_be: None,
                            value_is_top: true,
                        },
                        Branch {
                            trues: vec![(anchor, y)],
                            falses: vec![(x, e), (e, x), (anchor, x), (y, e), (e, y)],
                            joins: vec![],
                            value_must_be: None,
                            value_is_top: true,
                        },
                    ],
                }
            };
            cells.push(CellConstraint { value: v, branches });
        }
    }
    cells
}

// --- search ---

struct Search<'a> {
    p: &'a Problem,
    solutions: BTreeSet<Vec<u64>>,
    nodes: usize,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem) -> Search<'a> {
        Search {
            p,
            solutions: BTreeSet::new(),
            nodes: 0,
            truncated: false,
        }
    }

    fn run(&mut self) {
        let p = self.p;
        let n = p.n;
        let idempotents: Vec<usize> = p
            .inner
            .iter()
            .copied()
            .filter(|&x| p.base_val[x * n + x] == x)
            .collect();
        for &e in &p.neutral_candidates {
            for &anchor in &idempotents {
                for &bottom in &idempotents {
                    let mut s = State::new(n);
                    // Carrier membership: inner elements lie below the anchor,
                    // outer elements do not; the bottom lies below everything.
                    for x in 0..n {
                        if p.inner_set[x] {
                            s.set_true(x, anchor);
                        } else {
                            s.set_false(x, anchor);
                        }
                        s.set_true(bottom, x);
                        // Monotonicity against the anchor and bottom columns.
                        if p.inner_set[x] {
                            s.set_true(x, p.base_val[x * n + anchor]);
                            s.set_true(p.base_val[x * n + bottom], x);
                        }
                        // The unary map is extensive.
                        s.set_true(x, p.cl[x]);
                    }
                    s.propagate(p);
                    if s.contradiction {
                        continue;
                    }
                    let cells = compile_cells(p, e, anchor);
                    let decided = vec![false; cells.len()];
                    self.solve_cells(e, anchor, &cells, decided, s);
                    if self.truncated {
                        return;
                    }
                }
            }
        }
    }

    /// Unit-propagates forced cells, then branches on the first open one.
    fn solve_cells(
        &mut self,
        e: usize,
        anchor: usize,
        cells: &[CellConstraint],
        mut decided: Vec<bool>,
        mut s: State,
    ) {
        if self.truncated || s.contradiction {
            return;
        }
        loop {
            let mut progress = false;
            let mut branch_at = None;
            for (ci, cell) in cells.iter().enumerate() {
                if decided[ci] {
                    continue;
                }
                let mut feasible = Vec::new();
                for b in &cell.branches {
                    if !b.feasible(cell.value) {
                        continue;
                    }
                    let mut probe = s.clone();
                    b.apply(&mut probe, cell.value, self.p.n);
                    probe.propagate(self.p);
                    if !probe.contradiction {
                        feasible.push(probe);
                    }
                }
                match feasible.len() {
                    0 => return,
                    1 => {
                        s = feasible.pop().expect("one entry");
                        decided[ci] = true;
                        progress = true;
                    }
                    _ => {
                        if branch_at.is_none() {
                            branch_at = Some(ci);
                        }
                    }
                }
            }
            if progress {
                continue;
            }
            match branch_at {
                None => {
                    self.solve_order(e, anchor, s);
                    return;
                }
                Some(ci) => {
                    self.nodes += 1;
                    if self.nodes > MAX_NODES || self.solutions.len() >= MAX_SOLUTIONS {
                        self.truncated = true;
                        return;
                    }
                    let cell = &cells[ci];
                    for b in &cell.branches {
                        if !b.feasible(cell.value) {
                            continue;
                        }
                        let mut next = s.clone();
                        b.apply(&mut next, cell.value, self.p.n);
                        next.propagate(self.p);
                        if next.contradiction {
                            continue;
                        }
                        let mut taken = decided.clone();
                        taken[ci] = true;
                        self.solve_cells(e, anchor, cells, taken, next);
                        if self.truncated {
                            return;
                        }
                    }
                    return;
                }
            }
        }
    }

    /// All cells decided: close the remaining unknowns, sparsest first.
    fn solve_order(&mut self, e: usize, anchor: usize, mut s: State) {
        s.propagate(self.p);
        if s.contradiction || self.truncated {
            return;
        }
        match s.unknown_pair() {
            None => {
                if self.verify(e, anchor, &s) {
                    self.solutions.insert(s.rows());
                    if self.solutions.len() >= MAX_SOLUTIONS {
                        self.truncated = true;
                    }
                }
            }
            Some((i, j)) => {
                // Try the candidate with every unknown closed to false; if it
                // verifies it is the unique minimum over this branch and the
                // denser completions are not minimal.
                let mut closed = s.clone();
                for a in 0..self.p.n {
                    for b in 0..self.p.n {
                        if closed.get(a, b) == Tri::Unknown {
                            closed.rel[a * self.p.n + b] = Tri::False;
                        }
                    }
                }
                if self.verify(e, anchor, &closed) {
                    self.solutions.insert(closed.rows());
                    if self.solutions.len() >= MAX_SOLUTIONS {
                        self.truncated = true;
                    }
                    return;
                }
                self.nodes += 1;
                if self.nodes > MAX_NODES {
                    self.truncated = true;
                    return;
                }
                let mut no = s.clone();
                no.set_false(i, j);
                no.propagate(self.p);
                if !no.contradiction {
                    self.solve_order(e, anchor, no);
                }
                let mut yes = s;
                yes.set_true(i, j);
                yes.propagate(self.p);
                if !yes.contradiction {
                    self.solve_order(e, anchor, yes);
                }
            }
        }
    }

    /// Full verification: the order is a bounded lattice, the base table is a
    /// uninorm on the anchored interval, the unary map is a closure, and the
    /// construction regenerates the extended table bit-exactly.
    fn verify(&self, e: usize, anchor: usize, s: &State) -> bool {
        let p = self.p;
        let rows = s.rows();
        let labels: Vec<&str> = p.labels.iter().map(String::as_str).collect();
        let Ok(lat) = Lattice::from_leq("candidate", &labels, &rows) else {
            return false;
        };
        let lat = Arc::new(lat);
        let k = p.inner.len();
        let mut base_values = Vec::with_capacity(k * k);
        for &x in &p.inner {
            for &y in &p.inner {
                base_values.push(p.base_val[x * p.n + y]);
            }
        }
        let Ok(base) = BinOpTable::new(
            &p.base_name,
            lat.clone(),
            p.inner.clone(),
            base_values,
            Some(e),
        ) else {
            return false;
        };
        let unary = match p.id {
            ConstructionId::U3 => {
                match UnaryOpTable::new("cl", lat.clone(), p.cl.clone()) {
                    Ok(u) => Some(u),
                    Err(_) => return false,
                }
            }
            _ => None,
        };
        let req = Request {
            lat: lat.clone(),
            anchor,
            base,
            neutral: e,
            unary,
            allow_degenerate: false,
        };
        let Ok(table) = construct(p.id, &req) else {
            return false;
        };
        (0..p.n).all(|x| (0..p.n).all(|y| table.at(x, y) == p.ext[x * p.n + y]))
    }
}

/// Re-runs the full check on a finished lattice, for the dualized families.
fn verify_on(p: &Problem, id: ConstructionId, lat: Arc<Lattice>) -> bool {
    let k = p.inner.len();
    let mut base_values = Vec::with_capacity(k * k);
    for &x in &p.inner {
        for &y in &p.inner {
            base_values.push(p.base_val[x * p.n + y]);
        }
    }
    let neutral = p.neutral_candidates[0];
    let anchor = match id {
        ConstructionId::U2 | ConstructionId::U4 => {
            // The anchored interval is an upset; its bottom is the anchor.
            let mask = p.inner.iter().fold(0u64, |m, &x| m | (1 << x));
            match lat.interval_from_mask(mask) {
                Some(iv) => iv.lo,
                None => return false,
            }
        }
        _ => return false,
    };
    let Ok(base) = BinOpTable::new(&p.base_name, lat.clone(), p.inner.clone(), base_values, Some(neutral))
    else {
        return false;
    };
    let unary = match id {
        ConstructionId::U4 => match UnaryOpTable::new("int", lat.clone(), p.cl.clone()) {
            Ok(u) => Some(u),
            Err(_) => return false,
        },
        _ => None,
    };
    let req = Request {
        lat,
        anchor,
        base,
        neutral,
        unary,
        allow_degenerate: false,
    };
    match construct(id, &req) {
        Ok(table) => (0..p.n).all(|x| (0..p.n).all(|y| table.at(x, y) == p.ext[x * p.n + y])),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_table_raw, parse_unary_raw, print_table, print_unary};

    fn pin_lattice() -> Arc<Lattice> {
        Arc::new(
            Lattice::from_covers(
                "pin",
                &["0", "e", "a", "m", "1"],
                &[("0", "e"), ("e", "a"), ("a", "1"), ("0", "m"), ("m", "1")],
            )
            .unwrap(),
        )
    }

    fn disj_base(lat: &Arc<Lattice>) -> BinOpTable {
        let e = 1;
        BinOpTable::from_fn("ustar", lat.clone(), vec![0, 1, 2], Some(e), |x, y| {
            if lat.leq(x, e) && lat.leq(y, e) {
                lat.meet(x, y)
            } else {
                lat.join(x, y)
            }
        })
        .unwrap()
    }

    fn raw_of(table: &BinOpTable) -> RawTable {
        parse_table_raw(&print_table(table)).unwrap()
    }

    fn request(lat: &Arc<Lattice>, unary: Option<UnaryOpTable>) -> Request {
        Request {
            lat: lat.clone(),
            anchor: 2,
            base: disj_base(lat),
            neutral: 1,
            unary,
            allow_degenerate: false,
        }
    }

    /// A lower extension leaves the segment below the neutral reversible:
    /// flipping that chain (so the neutral becomes the global bottom) and
    /// re-hanging the side elements above it regenerates the same tables, so
    /// the search must surface both minimal orders instead of guessing.
    #[test]
    fn lower_extensions_report_the_mirrored_order() {
        let lat = pin_lattice();
        let full = crate::construct::construct_u1(&request(&lat, None)).unwrap();
        let err = reconstruct_fixture(
            ConstructionId::U1,
            &raw_of(&disj_base(&lat)),
            &raw_of(&full),
            None,
        )
        .unwrap_err();
        let ReconstructError::AmbiguousLattice { solutions } = err else {
            panic!("expected an ambiguity report");
        };
        assert_eq!(solutions.len(), 2);
        assert!(solutions
            .iter()
            .any(|s| (0..5).all(|i| s.ups_mask(i) == lat.ups_mask(i))));
        let mirrored = solutions
            .iter()
            .find(|s| s.bottom() == 1)
            .expect("the mirrored order puts the neutral at the bottom");
        assert!(mirrored.leq(1, 0));
    }

    #[test]
    fn recovers_the_order_behind_a_closed_extension() {
        let lat = pin_lattice();
        let id = UnaryOpTable::identity_op(lat.clone());
        let full = crate::construct::construct_u3(&request(&lat, Some(id.clone()))).unwrap();
        let rec = reconstruct_fixture(
            ConstructionId::U3,
            &raw_of(&disj_base(&lat)),
            &raw_of(&full),
            Some(&parse_unary_raw(&print_unary(&id)).unwrap()),
        )
        .unwrap();
        assert!(rec.exhaustive);
        for i in 0..5 {
            assert_eq!(rec.lattice.ups_mask(i), lat.ups_mask(i), "row {i}");
        }
    }

    #[test]
    fn upper_families_come_back_dualized() {
        let lat = pin_lattice();
        let dual = Arc::new(lat.dual());
        let base = disj_base(&lat).with_lattice(dual.clone()).unwrap();
        let req = Request {
            lat: dual.clone(),
            anchor: 2,
            base: base.clone(),
            neutral: 1,
            unary: None,
            allow_degenerate: false,
        };
        let full = crate::construct::construct_u2(&req).unwrap();
        let err = reconstruct_fixture(ConstructionId::U2, &raw_of(&base), &raw_of(&full), None)
            .unwrap_err();
        let ReconstructError::AmbiguousLattice { solutions } = err else {
            panic!("expected the mirrored ambiguity, dualized");
        };
        assert_eq!(solutions.len(), 2);
        assert!(solutions
            .iter()
            .any(|s| (0..5).all(|i| s.ups_mask(i) == dual.ups_mask(i))));
    }

    #[test]
    fn corrupted_tables_have_no_consistent_order() {
        let lat = pin_lattice();
        let full = crate::construct::construct_u1(&request(&lat, None)).unwrap();
        let mut raw = raw_of(&full);
        // No order makes a join non-idempotent, so this cell is unexplainable.
        raw.rows[3][3] = "1".into();
        let err = reconstruct_fixture(ConstructionId::U1, &raw_of(&disj_base(&lat)), &raw, None)
            .unwrap_err();
        assert!(matches!(err, ReconstructError::NoConsistentLattice));
    }

    #[test]
    fn unsupported_and_malformed_inputs_are_rejected() {
        let lat = pin_lattice();
        let full = crate::construct::construct_u1(&request(&lat, None)).unwrap();
        let base = raw_of(&disj_base(&lat));
        let err = reconstruct_fixture(ConstructionId::S1, &base, &raw_of(&full), None).unwrap_err();
        assert!(matches!(err, ReconstructError::UnsupportedConstruction(_)));

        let mut orphan = base.clone();
        orphan.carrier[0] = "ghost".into();
        let err =
            reconstruct_fixture(ConstructionId::U1, &orphan, &raw_of(&full), None).unwrap_err();
        assert!(matches!(err, ReconstructError::MalformedInput(_)));
    }
}
