//! Unary operator tables: closure and interior operators on a lattice.

use crate::binop::{OpError, Verdict};
use crate::lattice::Lattice;
use std::sync::Arc;

/// Which operator family a report was checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryKind {
    Closure,
    Interior,
}

/// `u(x)` is not on the required side of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundWitness {
    pub x: usize,
    pub ux: usize,
}

/// `u(x op y) != u(x) op u(y)` for the family's lattice operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistWitness {
    pub x: usize,
    pub y: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// `u(u(x)) != u(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdemWitness {
    pub x: usize,
    pub ux: usize,
    pub uux: usize,
}

/// Per-axiom verdicts for a closure or interior check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryReport {
    pub kind: UnaryKind,
    /// Extensivity (`x <= u(x)`) for closures, contractivity for interiors.
    pub bounded: Verdict<BoundWitness>,
    /// Distribution over join for closures, over meet for interiors.
    pub distributes: Verdict<DistWitness>,
    pub idempotent: Verdict<IdemWitness>,
}

impl UnaryReport {
    pub fn all_pass(&self) -> bool {
        self.bounded.passed() && self.distributes.passed() && self.idempotent.passed()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.bounded.passed() {
            out.push(match self.kind {
                UnaryKind::Closure => "extensivity",
                UnaryKind::Interior => "contractivity",
            });
        }
        if !self.distributes.passed() {
            out.push(match self.kind {
                UnaryKind::Closure => "join distribution",
                UnaryKind::Interior => "meet distribution",
            });
        }
        if !self.idempotent.passed() {
            out.push("idempotence");
        }
        out
    }
}

/// A total unary map on a lattice carrier, stored as one value per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryOpTable {
    name: String,
    lat: Arc<Lattice>,
    map: Vec<usize>,
}

impl UnaryOpTable {
    pub fn new(name: &str, lat: Arc<Lattice>, map: Vec<usize>) -> Result<UnaryOpTable, OpError> {
        if map.len() != lat.len() {
            return Err(OpError::BadTable {
                op: name.into(),
                detail: format!("expected {} values, got {}", lat.len(), map.len()),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= lat.len()) {
            return Err(OpError::BadTable {
                op: name.into(),
                detail: format!("value index {v} out of range"),
            });
        }
        Ok(UnaryOpTable {
            name: name.to_string(),
            lat,
            map,
        })
    }

    /// Builds from explicit `(x, u(x))` pairs; unlisted elements map to
    /// themselves.
    pub fn from_pairs(
        name: &str,
        lat: Arc<Lattice>,
        pairs: &[(usize, usize)],
    ) -> Result<UnaryOpTable, OpError> {
        let mut map: Vec<usize> = (0..lat.len()).collect();
        for &(x, v) in pairs {
            if x >= lat.len() || v >= lat.len() {
                return Err(OpError::BadTable {
                    op: name.into(),
                    detail: format!("pair ({x}, {v}) out of range"),
                });
            }
            map[x] = v;
        }
        UnaryOpTable::new(name, lat, map)
    }

    /// The identity map.
    pub fn identity_op(lat: Arc<Lattice>) -> UnaryOpTable {
        let map = (0..lat.len()).collect();
        UnaryOpTable::new("id", lat, map).expect("identity map is well formed")
    }

    /// The closure `x -> x v a`.
    pub fn canonical_closure(lat: Arc<Lattice>, a: usize) -> UnaryOpTable {
        let name = format!("join_{}", lat.label(a));
        let map = (0..lat.len()).map(|x| lat.join(x, a)).collect();
        UnaryOpTable::new(&name, lat, map).expect("join map is well formed")
    }

    /// The interior `x -> x ^ b`.
    pub fn canonical_interior(lat: Arc<Lattice>, b: usize) -> UnaryOpTable {
        let name = format!("meet_{}", lat.label(b));
        let map = (0..lat.len()).map(|x| lat.meet(x, b)).collect();
        UnaryOpTable::new(&name, lat, map).expect("meet map is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Pairs `(x, u(x))` with `u(x) != x`, in declaration order.
    pub fn moved_pairs(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .copied()
            .enumerate()
            .filter(|&(x, v)| x != v)
            .collect()
    }

    /// Rebinds the same label-indexed map onto another lattice with an
    /// identical label list (such as the dual).
    pub fn with_lattice(&self, lat: Arc<Lattice>) -> Result<UnaryOpTable, OpError> {
        if lat.labels() != self.lat.labels() {
            return Err(OpError::BadTable {
                op: self.name.clone(),
                detail: "target lattice has a different carrier".into(),
            });
        }
        UnaryOpTable::new(&self.name, lat, self.map.clone())
    }

    /// Closure check: extensive, distributes over join, idempotent.
    pub fn is_closure(&self) -> UnaryReport {
        self.check(UnaryKind::Closure)
    }

    /// Interior check: contractive, distributes over meet, idempotent.
    pub fn is_interior(&self) -> UnaryReport {
        self.check(UnaryKind::Interior)
    }

    fn check(&self, kind: UnaryKind) -> UnaryReport {
        let n = self.lat.len();
        let mut bounded = Verdict::Pass;
        for x in 0..n {
            let ok = match kind {
                UnaryKind::Closure => self.lat.leq(x, self.map[x]),
                UnaryKind::Interior => self.lat.leq(self.map[x], x),
            };
            if !ok {
                bounded = Verdict::Fail(BoundWitness { x, ux: self.map[x] });
                break;
            }
        }
        let mut distributes = Verdict::Pass;
        'outer: for x in 0..n {
            for y in 0..n {
                let (lhs, rhs) = match kind {
                    UnaryKind::Closure => (
                        self.map[self.lat.join(x, y)],
                        self.lat.join(self.map[x], self.map[y]),
                    ),
                    UnaryKind::Interior => (
                        self.map[self.lat.meet(x, y)],
                        self.lat.meet(self.map[x], self.map[y]),
                    ),
                };
                if lhs != rhs {
                    distributes = Verdict::Fail(DistWitness { x, y, lhs, rhs });
                    break 'outer;
                }
            }
        }
        let mut idempotent = Verdict::Pass;
        for x in 0..n {
            let ux = self.map[x];
            let uux = self.map[ux];
            if ux != uux {
                idempotent = Verdict::Fail(IdemWitness { x, ux, uux });
                break;
            }
        }
        UnaryReport {
            kind,
            bounded,
            distributes,
            idempotent,
        }
    }
}
