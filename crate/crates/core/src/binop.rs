//! Binary operation tables over a lattice carrier.
//!
//! A table stores one value per ordered carrier pair. Closedness (values
//! staying inside the carrier) is a queryable property rather than an
//! invariant; axiom checks that need to nest applications report the first
//! offending cell instead. Every failed check carries a witness that can be
//! re-evaluated against the table.

use crate::lattice::{Interval, Lattice, LatticeError};
use std::sync::Arc;
use thiserror::Error;

/// Errors for table construction, axiom checking, and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{element}` is not in the carrier of `{op}`")]
    NotInCarrier { op: String, element: String },
    #[error("`{op}` is not closed: op({x}, {y}) = {value} left the carrier")]
    NotClosed { op: String, x: String, y: String, value: String },
    #[error("carrier of `{op}` is not an interval")]
    CarrierNotInterval { op: String },
    #[error("`{op}` is not a uninorm: {detail}")]
    NotAUninorm { op: String, detail: String },
    #[error("partition does not cover the carrier: `{missing}` is in no part")]
    PartsDoNotCover { missing: String },
    #[error("malformed table `{op}`: {detail}")]
    BadTable { op: String, detail: String },
}

impl From<LatticeError> for OpError {
    fn from(e: LatticeError) -> Self {
        OpError::UnknownElement(e.to_string())
    }
}

/// Outcome of a single axiom check: pass, or fail with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// `op(x, y) != op(y, x)`; all fields are lattice element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommWitness {
    pub x: usize,
    pub y: usize,
    pub xy: usize,
    pub yx: usize,
}

/// `op(x, op(y, z)) != op(op(x, y), z)`; `lhs` is the right-nested side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// `lo <= hi` but `op` applied with `other` fixed does not preserve the order.
/// `left` tells which argument position varied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoWitness {
    pub lo: usize,
    pub hi: usize,
    pub other: usize,
    pub left: bool,
    pub lo_val: usize,
    pub hi_val: usize,
}

/// `op(e, x)` (or `op(x, e)` when `left` is false) returned `got != x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralWitness {
    pub x: usize,
    pub got: usize,
    pub left: bool,
}

/// Results of the four uninorm axioms against a candidate neutral element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub commutative: Verdict<CommWitness>,
    pub associative: Verdict<AssocWitness>,
    pub monotone: Verdict<MonoWitness>,
    pub neutral: Verdict<NeutralWitness>,
    pub neutral_checked: usize,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.commutative.passed()
            && self.associative.passed()
            && self.monotone.passed()
            && self.neutral.passed()
    }

    /// Names of the axioms that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.commutative.passed() {
            out.push("commutativity");
        }
        if !self.associative.passed() {
            out.push("associativity");
        }
        if !self.monotone.passed() {
            out.push("monotonicity");
        }
        if !self.neutral.passed() {
            out.push("neutrality");
        }
        out
    }
}

/// Structural classification of a verified uninorm.
///
/// Bounds and the four quadrant classes are taken relative to the carrier's
/// own least and greatest elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationProfile {
    pub conjunctive: bool,
    pub disjunctive: bool,
    pub idempotent: bool,
    pub in_umin_star: bool,
    pub in_umax_star: bool,
    pub in_ubot_star: bool,
    pub in_utop_star: bool,
    pub neutral_elements: Vec<usize>,
}

/// A binary operation given by a full table over a carrier subset of a
/// lattice. Values are lattice element indices and may leave the carrier.
#[derive(Debug, Clone)]
pub struct BinOpTable {
    name: String,
    lat: Arc<Lattice>,
    carrier: Vec<usize>,
    pos: Vec<Option<usize>>,
    values: Vec<usize>,
    declared_neutral: Option<usize>,
}

impl BinOpTable {
    /// Builds a table from explicit values; `values[i * k + j]` is
    /// `op(carrier[i], carrier[j])` as a lattice index.
    pub fn new(
        name: &str,
        lat: Arc<Lattice>,
        carrier: Vec<usize>,
        values: Vec<usize>,
        declared_neutral: Option<usize>,
    ) -> Result<BinOpTable, OpError> {
        let k = carrier.len();
        let n = lat.len();
        if k == 0 {
            return Err(OpError::BadTable {
                op: name.into(),
                detail: "empty carrier".into(),
            });
        }
        if values.len() != k * k {
            return Err(OpError::BadTable {
                op: name.into(),
                detail: format!("expected {} values, got {}", k * k, values.len()),
            });
        }
        let mut pos = vec![None; n];
        for (p, &c) in carrier.iter().enumerate() {
            if c >= n {
                return Err(OpError::BadTable {
                    op: name.into(),
                    detail: format!("carrier index {c} out of range"),
                });
            }
            if pos[c].replace(p).is_some() {
                return Err(OpError::BadTable {
                    op: name.into(),
                    detail: format!("carrier lists `{}` twice", lat.label(c)),
                });
            }
        }
        for &v in &values {
            if v >= n {
                return Err(OpError::BadTable {
                    op: name.into(),
                    detail: format!("value index {v} out of range"),
                });
            }
        }
        if let Some(e) = declared_neutral {
            if e >= n || pos[e].is_none() {
                return Err(OpError::BadTable {
                    op: name.into(),
                    detail: "declared neutral element is not in the carrier".into(),
                });
            }
        }
        Ok(BinOpTable {
            name: name.to_string(),
            lat,
            carrier,
            pos,
            values,
            declared_neutral,
        })
    }

    /// Builds a table by evaluating `f` on every carrier pair.
    pub fn from_fn(
        name: &str,
        lat: Arc<Lattice>,
        carrier: Vec<usize>,
        declared_neutral: Option<usize>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Result<BinOpTable, OpError> {
        let k = carrier.len();
        let mut values = Vec::with_capacity(k * k);
        for &x in &carrier {
            for &y in &carrier {
                values.push(f(x, y));
            }
        }
        BinOpTable::new(name, lat, carrier, values, declared_neutral)
    }

    // --- accessors ---

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    /// Carrier element indices in declaration order.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn declared_neutral(&self) -> Option<usize> {
        self.declared_neutral
    }

    pub fn carrier_contains(&self, x: usize) -> bool {
        x < self.pos.len() && self.pos[x].is_some()
    }

    /// Carrier as a bitset over lattice indices.
    pub fn carrier_mask(&self) -> u64 {
        self.carrier.iter().fold(0u64, |m, &c| m | (1 << c))
    }

    /// `op(x, y)` for lattice indices `x`, `y`; panics when either argument
    /// is outside the carrier.
    pub fn at(&self, x: usize, y: usize) -> usize {
        let i = self.pos[x].expect("left argument in carrier");
        let j = self.pos[y].expect("right argument in carrier");
        self.values[i * self.carrier.len() + j]
    }

    /// `op(x, y)` when both arguments lie in the carrier.
    pub fn try_at(&self, x: usize, y: usize) -> Option<usize> {
        let i = self.pos.get(x).copied().flatten()?;
        let j = self.pos.get(y).copied().flatten()?;
        Some(self.values[i * self.carrier.len() + j])
    }

    /// Rebinds the table to another lattice with identical element labels,
    /// e.g. the dual; values and carrier are carried over index for index.
    pub fn with_lattice(&self, lat: Arc<Lattice>) -> Result<BinOpTable, OpError> {
        if lat.labels() != self.lat.labels() {
            return Err(OpError::BadTable {
                op: self.name.clone(),
                detail: "target lattice has different element labels".into(),
            });
        }
        BinOpTable::new(
            &self.name,
            lat,
            self.carrier.clone(),
            self.values.clone(),
            self.declared_neutral,
        )
    }

    /// Same carrier labels, same value labels, same declared neutral. Usable
    /// across distinct lattice objects that share element names.
    pub fn table_eq(&self, other: &BinOpTable) -> bool {
        let lab = |lat: &Lattice, xs: &[usize]| -> Vec<String> {
            xs.iter().map(|&x| lat.label(x).to_string()).collect()
        };
        lab(&self.lat, &self.carrier) == lab(&other.lat, &other.carrier)
            && lab(&self.lat, &self.values) == lab(&other.lat, &other.values)
            && self.declared_neutral.map(|e| self.lat.label(e))
                == other.declared_neutral.map(|e| other.lat.label(e))
    }

    // --- closedness ---

    /// First cell whose value leaves the carrier, in row-major carrier order.
    pub fn closure_witness(&self) -> Option<(usize, usize, usize)> {
        let k = self.carrier.len();
        for i in 0..k {
            for j in 0..k {
                let v = self.values[i * k + j];
                if self.pos[v].is_none() {
                    return Some((self.carrier[i], self.carrier[j], v));
                }
            }
        }
        None
    }

    pub fn is_closed(&self) -> bool {
        self.closure_witness().is_none()
    }

    fn require_closed(&self) -> Result<(), OpError> {
        match self.closure_witness() {
            None => Ok(()),
            Some((x, y, v)) => Err(OpError::NotClosed {
                op: self.name.clone(),
                x: self.lat.label(x).into(),
                y: self.lat.label(y).into(),
                value: self.lat.label(v).into(),
            }),
        }
    }

    fn require_in_carrier(&self, x: usize) -> Result<(), OpError> {
        if self.carrier_contains(x) {
            Ok(())
        } else {
            Err(OpError::NotInCarrier {
                op: self.name.clone(),
                element: self.lat.label(x).into(),
            })
        }
    }

    // --- axiom checks ---

    /// Checks commutativity, associativity, monotonicity, and neutrality of
    /// `neutral`. Witnesses are the first failures in row-major carrier
    /// order. Requires a closed table (associativity nests applications).
    pub fn check_axioms(&self, neutral: usize) -> Result<AxiomReport, OpError> {
        self.require_closed()?;
        self.require_in_carrier(neutral)?;
        Ok(AxiomReport {
            commutative: self.commutativity(),
            associative: self.associativity_unchecked(),
            monotone: self.monotonicity(),
            neutral: self.neutrality(neutral),
            neutral_checked: neutral,
        })
    }

    fn commutativity(&self) -> Verdict<CommWitness> {
        let k = self.carrier.len();
        for i in 0..k {
            for j in (i + 1)..k {
                let xy = self.values[i * k + j];
                let yx = self.values[j * k + i];
                if xy != yx {
                    return Verdict::Fail(CommWitness {
                        x: self.carrier[i],
                        y: self.carrier[j],
                        xy,
                        yx,
                    });
                }
            }
        }
        Verdict::Pass
    }

    /// Naive associativity over all carrier triples; requires a closed table.
    pub fn associativity(&self) -> Result<Verdict<AssocWitness>, OpError> {
        self.require_closed()?;
        Ok(self.associativity_unchecked())
    }

    fn associativity_unchecked(&self) -> Verdict<AssocWitness> {
        for &x in &self.carrier {
            for &y in &self.carrier {
                for &z in &self.carrier {
                    let lhs = self.at(x, self.at(y, z));
                    let rhs = self.at(self.at(x, y), z);
                    if lhs != rhs {
                        return Verdict::Fail(AssocWitness { x, y, z, lhs, rhs });
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// Monotonicity in each argument, checked over comparable carrier pairs.
    fn monotonicity(&self) -> Verdict<MonoWitness> {
        for &lo in &self.carrier {
            for &hi in &self.carrier {
                if lo == hi || !self.lat.leq(lo, hi) {
                    continue;
                }
                for &other in &self.carrier {
                    let (a, b) = (self.at(lo, other), self.at(hi, other));
                    if !self.lat.leq(a, b) {
                        return Verdict::Fail(MonoWitness {
                            lo,
                            hi,
                            other,
                            left: true,
                            lo_val: a,
                            hi_val: b,
                        });
                    }
                    let (a, b) = (self.at(other, lo), self.at(other, hi));
                    if !self.lat.leq(a, b) {
                        return Verdict::Fail(MonoWitness {
                            lo,
                            hi,
                            other,
                            left: false,
                            lo_val: a,
                            hi_val: b,
                        });
                    }
                }
            }
        }
        Verdict::Pass
    }

    fn neutrality(&self, e: usize) -> Verdict<NeutralWitness> {
        for &x in &self.carrier {
            let got = self.at(e, x);
            if got != x {
                return Verdict::Fail(NeutralWitness { x, got, left: true });
            }
            let got = self.at(x, e);
            if got != x {
                return Verdict::Fail(NeutralWitness { x, got, left: false });
            }
        }
        Verdict::Pass
    }

    /// All carrier elements that act as two-sided neutral elements.
    pub fn neutral_elements(&self) -> Vec<usize> {
        self.carrier
            .iter()
            .copied()
            .filter(|&e| self.neutrality(e).passed())
            .collect()
    }

    fn carrier_interval(&self) -> Result<Interval, OpError> {
        self.lat
            .interval_from_mask(self.carrier_mask())
            .ok_or_else(|| OpError::CarrierNotInterval {
                op: self.name.clone(),
            })
    }

    /// Uninorm check: closed interval carrier plus the four axioms with
    /// neutral element `e`.
    pub fn is_uninorm(&self, e: usize) -> Result<AxiomReport, OpError> {
        self.require_in_carrier(e)?;
        self.carrier_interval()?;
        self.check_axioms(e)
    }

    /// T-norm check: a uninorm whose neutral element is the carrier top.
    pub fn is_tnorm(&self) -> Result<AxiomReport, OpError> {
        let iv = self.carrier_interval()?;
        self.check_axioms(iv.hi)
    }

    /// T-conorm check: a uninorm whose neutral element is the carrier bottom.
    pub fn is_tconorm(&self) -> Result<AxiomReport, OpError> {
        let iv = self.carrier_interval()?;
        self.check_axioms(iv.lo)
    }

    /// Restriction to an interval sub-carrier; the result must be closed.
    pub fn restrict(&self, iv: &Interval) -> Result<BinOpTable, OpError> {
        for &m in &iv.members {
            self.require_in_carrier(m)?;
        }
        for &x in &iv.members {
            for &y in &iv.members {
                let v = self.at(x, y);
                if !iv.contains(v) {
                    return Err(OpError::NotClosed {
                        op: self.name.clone(),
                        x: self.lat.label(x).into(),
                        y: self.lat.label(y).into(),
                        value: self.lat.label(v).into(),
                    });
                }
            }
        }
        let name = format!(
            "{}[{},{}]",
            self.name,
            self.lat.label(iv.lo),
            self.lat.label(iv.hi)
        );
        let neutral = self.declared_neutral.filter(|&e| iv.contains(e));
        BinOpTable::from_fn(&name, self.lat.clone(), iv.members.clone(), neutral, |x, y| {
            self.at(x, y)
        })
    }

    /// Classifies a verified uninorm with neutral element `e`.
    pub fn classify(&self, e: usize) -> Result<ClassificationProfile, OpError> {
        let report = self.is_uninorm(e)?;
        if !report.all_pass() {
            return Err(OpError::NotAUninorm {
                op: self.name.clone(),
                detail: format!("failed axioms: {}", report.failures().join(", ")),
            });
        }
        let iv = self.carrier_interval()?;
        let (lo, hi) = (iv.lo, iv.hi);
        let above: Vec<usize> = self.carrier.iter().copied().filter(|&x| self.lat.lt(e, x)).collect();
        let below: Vec<usize> = self.carrier.iter().copied().filter(|&x| self.lat.lt(x, e)).collect();

        let mut in_umin_star = true;
        let mut in_umax_star = true;
        for &x in &above {
            for &y in &below {
                if self.at(x, y) != y {
                    in_umin_star = false;
                }
                if self.at(y, x) != x {
                    in_umax_star = false;
                }
            }
        }
        let mut in_ubot_star = true;
        let mut in_utop_star = true;
        let mut idempotent = true;
        for &x in &self.carrier {
            if self.at(x, x) != x {
                idempotent = false;
            }
            for &y in &self.carrier {
                let v = self.at(x, y);
                let low_pair = self.lat.leq(x, e) && self.lat.leq(y, e);
                if self.lat.leq(v, e) != low_pair {
                    in_ubot_star = false;
                }
                let high_pair = self.lat.leq(e, x) && self.lat.leq(e, y);
                if self.lat.leq(e, v) != high_pair {
                    in_utop_star = false;
                }
            }
        }
        Ok(ClassificationProfile {
            conjunctive: self.at(lo, hi) == lo,
            disjunctive: self.at(lo, hi) == hi,
            idempotent,
            in_umin_star,
            in_umax_star,
            in_ubot_star,
            in_utop_star,
            neutral_elements: self.neutral_elements(),
        })
    }

    /// Associativity decided through a covering family of parts: scans
    /// mixed triples across distinct parts, mixed pairs, and triples within
    /// each part. Complete for commutative tables; non-commutative tables
    /// fall back to the naive scan.
    pub fn assoc_by_partition(&self, parts: &[Vec<usize>]) -> Result<Verdict<AssocWitness>, OpError> {
        self.require_closed()?;
        let mut covered = 0u64;
        for part in parts {
            for &x in part {
                self.require_in_carrier(x)?;
                covered |= 1 << x;
            }
        }
        if let Some(&missing) = self.carrier.iter().find(|&&c| covered & (1 << c) == 0) {
            return Err(OpError::PartsDoNotCover {
                missing: self.lat.label(missing).into(),
            });
        }
        if !self.commutativity().passed() {
            return Ok(self.associativity_unchecked());
        }

        // Mixed triples from three distinct parts.
        let p = parts.len();
        for i in 0..p {
            for j in (i + 1)..p {
                for k in (j + 1)..p {
                    for &x in &parts[i] {
                        for &y in &parts[j] {
                            for &z in &parts[k] {
                                let a = self.at(x, self.at(y, z));
                                let b = self.at(self.at(x, y), z);
                                if a != b {
                                    return Ok(Verdict::Fail(AssocWitness { x, y, z, lhs: a, rhs: b }));
                                }
                                let c = self.at(y, self.at(x, z));
                                if b != c {
                                    // By commutativity this is the standard
                                    // identity on the triple (y, x, z).
                                    let rhs = self.at(self.at(y, x), z);
                                    return Ok(Verdict::Fail(AssocWitness {
                                        x: y,
                                        y: x,
                                        z,
                                        lhs: c,
                                        rhs,
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
        // Mixed triples from two distinct parts: one outer, two inner.
        for i in 0..p {
            for j in 0..p {
                if i == j {
                    continue;
                }
                for &x in &parts[i] {
                    for &y in &parts[j] {
                        for &z in &parts[j] {
                            let lhs = self.at(x, self.at(y, z));
                            let rhs = self.at(self.at(x, y), z);
                            if lhs != rhs {
                                return Ok(Verdict::Fail(AssocWitness { x, y, z, lhs, rhs }));
                            }
                        }
                    }
                }
            }
        }
        // Triples within a single part.
        for part in parts {
            for &x in part {
                for &y in part {
                    for &z in part {
                        let lhs = self.at(x, self.at(y, z));
                        let rhs = self.at(self.at(x, y), z);
                        if lhs != rhs {
                            return Ok(Verdict::Fail(AssocWitness { x, y, z, lhs, rhs }));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Pass)
    }
}
