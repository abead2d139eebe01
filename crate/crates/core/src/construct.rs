//! Constructions that extend an operation from an anchored interval to the
//! whole lattice, plus checkers for the exact conditions under which each
//! extension is again a uninorm (or t-norm / t-conorm).
//!
//! Lower-family constructions start from a base on `[0, a]`; upper-family
//! constructions from a base on `[b, 1]`. The two families are exact duals.
//! Every checker reports hypotheses separately from conditions so callers can
//! distinguish "case does not apply" from "condition violated".

use crate::binop::{BinOpTable, OpError};
use crate::lattice::Lattice;
use crate::unary::{UnaryKind, UnaryOpTable};
use std::sync::Arc;
use thiserror::Error;

/// Default cap on stored witnesses per condition item.
pub const DEFAULT_WITNESS_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid `{construction}` request: {}", violations.join("; "))]
    InvalidRequest {
        construction: String,
        violations: Vec<String>,
    },
    #[error(transparent)]
    Op(#[from] OpError),
}

/// Input to a construction: the target lattice, the anchored base operation,
/// the intended neutral element, and an optional unary operator.
#[derive(Debug, Clone)]
pub struct Request {
    pub lat: Arc<Lattice>,
    /// `a` for lower-family constructions, `b` for upper-family ones.
    pub anchor: usize,
    /// The base operation on `[0, anchor]` resp. `[anchor, 1]`.
    pub base: BinOpTable,
    /// Neutral element of the constructed operation.
    pub neutral: usize,
    /// Closure (lower family) or interior (upper family) where required.
    pub unary: Option<UnaryOpTable>,
    /// Permit an anchor equal to the top or bottom of the lattice.
    pub allow_degenerate: bool,
}

/// Lower or upper extension family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Lower,
    Upper,
}

/// What the base operation must be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaseKind {
    Uninorm,
    Tnorm,
    Tconorm,
}

/// The twelve interval-anchored constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionId {
    U1,
    U2,
    S1,
    T1,
    S1Star,
    T1Star,
    U3,
    U31,
    U32,
    U4,
    U41,
    U42,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 12] = [
        ConstructionId::U1,
        ConstructionId::U2,
        ConstructionId::S1,
        ConstructionId::T1,
        ConstructionId::S1Star,
        ConstructionId::T1Star,
        ConstructionId::U3,
        ConstructionId::U31,
        ConstructionId::U32,
        ConstructionId::U4,
        ConstructionId::U41,
        ConstructionId::U42,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionId::U1 => "u1",
            ConstructionId::U2 => "u2",
            ConstructionId::S1 => "s1",
            ConstructionId::T1 => "t1",
            ConstructionId::S1Star => "s1star",
            ConstructionId::T1Star => "t1star",
            ConstructionId::U3 => "u3",
            ConstructionId::U31 => "u31",
            ConstructionId::U32 => "u32",
            ConstructionId::U4 => "u4",
            ConstructionId::U41 => "u41",
            ConstructionId::U42 => "u42",
        }
    }

    pub fn parse(s: &str) -> Option<ConstructionId> {
        ConstructionId::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    pub fn family(&self) -> Family {
        match self {
            ConstructionId::U1
            | ConstructionId::S1
            | ConstructionId::S1Star
            | ConstructionId::U3
            | ConstructionId::U31
            | ConstructionId::U32 => Family::Lower,
            _ => Family::Upper,
        }
    }

    /// Whether the construction consumes a closure/interior operator.
    pub fn needs_unary(&self) -> bool {
        matches!(self, ConstructionId::U3 | ConstructionId::U4)
    }
}

/// Named single-anchor specializations (anchored at the neutral element or at
/// a bound of the lattice).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialId {
    Ut1,
    Us1,
    Ucl,
    Uint,
    Ut2,
    Us2,
    Ut3,
    Us3,
    S2Star,
    T2Star,
}

impl SpecialId {
    pub const ALL: [SpecialId; 10] = [
        SpecialId::Ut1,
        SpecialId::Us1,
        SpecialId::Ucl,
        SpecialId::Uint,
        SpecialId::Ut2,
        SpecialId::Us2,
        SpecialId::Ut3,
        SpecialId::Us3,
        SpecialId::S2Star,
        SpecialId::T2Star,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialId::Ut1 => "ut1",
            SpecialId::Us1 => "us1",
            SpecialId::Ucl => "ucl",
            SpecialId::Uint => "uint",
            SpecialId::Ut2 => "ut2",
            SpecialId::Us2 => "us2",
            SpecialId::Ut3 => "ut3",
            SpecialId::Us3 => "us3",
            SpecialId::S2Star => "s2star",
            SpecialId::T2Star => "t2star",
        }
    }

    pub fn parse(s: &str) -> Option<SpecialId> {
        SpecialId::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    pub fn needs_unary(&self) -> bool {
        matches!(self, SpecialId::Ucl | SpecialId::Uint)
    }
}

// --- condition reports ---

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionRole {
    Hypothesis,
    Condition,
}

/// One violating tuple. `z` is the quantified incomparable element when the
/// item quantifies over one; `value` is the evaluated operation value when
/// the item constrains one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondWitness {
    pub z: Option<usize>,
    pub x: usize,
    pub y: usize,
    pub value: Option<usize>,
}

/// One hypothesis or condition with its verdict and capped witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionItem {
    pub id: &'static str,
    pub role: ConditionRole,
    pub description: String,
    pub holds: bool,
    pub witnesses: Vec<CondWitness>,
    pub truncated: bool,
}

impl ConditionItem {
    fn new(id: &'static str, role: ConditionRole, description: String) -> ConditionItem {
        ConditionItem {
            id,
            role,
            description,
            holds: true,
            witnesses: Vec::new(),
            truncated: false,
        }
    }

    fn violate(&mut self, cap: usize, w: CondWitness) {
        self.holds = false;
        if self.witnesses.len() < cap {
            self.witnesses.push(w);
        } else {
            self.truncated = true;
        }
    }
}

/// Hypotheses and conditions evaluated for one construction instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub construction: String,
    pub items: Vec<ConditionItem>,
}

impl ConditionReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.items
            .iter()
            .filter(|i| i.role == ConditionRole::Hypothesis)
            .all(|i| i.holds)
    }

    pub fn conditions_hold(&self) -> bool {
        self.items
            .iter()
            .filter(|i| i.role == ConditionRole::Condition)
            .all(|i| i.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }

    pub fn item(&self, id: &str) -> Option<&ConditionItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

/// Case selector for the closure/interior extension checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtCase {
    /// Values of the combined map stay among elements incomparable with both
    /// bounds; base class membership is a hypothesis.
    C1i,
    /// Same value range; base class membership becomes part of the
    /// equivalence, guarded by a nonemptiness hypothesis.
    C1ii,
    /// Values of the combined map land strictly beyond the anchor
    /// (sufficiency only).
    C2i,
    /// Same, additionally bounded away from the lattice bound, guarded by a
    /// nonemptiness hypothesis.
    C2ii,
}

impl ExtCase {
    pub const ALL: [ExtCase; 4] = [ExtCase::C1i, ExtCase::C1ii, ExtCase::C2i, ExtCase::C2ii];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExtCase::C1i => "1i",
            ExtCase::C1ii => "1ii",
            ExtCase::C2i => "2i",
            ExtCase::C2ii => "2ii",
        }
    }

    pub fn parse(s: &str) -> Option<ExtCase> {
        ExtCase::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

/// Which set the parallelism condition pairs against the doubly-incomparable
/// elements. The default follows the case statements; `AnchorSide` is the
/// variant appearing in the proof of the bounded case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelWith {
    /// Elements incomparable with the neutral but comparable with the anchor.
    NeutralSide,
    /// Elements incomparable with the anchor but comparable with the neutral.
    AnchorSide,
}

/// Which incomparability filter the fourth mixed condition applies to the
/// partner set: against the quantified `z` (default) or against the anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedFilter {
    AgainstZ,
    AgainstAnchor,
}

/// Checker options; defaults match the published statements.
#[derive(Debug, Clone, Copy)]
pub struct CheckOpts {
    pub witness_cap: usize,
    pub parallel_with: ParallelWith,
    pub mixed_filter: MixedFilter,
}

impl Default for CheckOpts {
    fn default() -> Self {
        CheckOpts {
            witness_cap: DEFAULT_WITNESS_CAP,
            parallel_with: ParallelWith::NeutralSide,
            mixed_filter: MixedFilter::AgainstZ,
        }
    }
}

// --- derived element sets ---

/// Bitsets used by the lower family, for neutral `e` and anchor `a`.
struct LowerSets {
    /// `[0, a]`
    base: u64,
    /// `[0, e]`
    le_e: u64,
    /// Incomparable with both `e` and `a`.
    i_ea: u64,
    /// Incomparable with `a`, comparable with `e` (hence above `e`).
    i_ae: u64,
    /// Incomparable with `e`, comparable with `a` (hence below `a`).
    i_e_a: u64,
    /// `(e, a]`
    gt_e_le_a: u64,
    /// `(a, 1]`
    above_a: u64,
}

fn lower_sets(lat: &Lattice, e: usize, a: usize) -> LowerSets {
    let inc_e = lat.inc_mask(e);
    let inc_a = lat.inc_mask(a);
    let comp_e = lat.full_mask() & !inc_e;
    let comp_a = lat.full_mask() & !inc_a;
    LowerSets {
        base: lat.downs_mask(a),
        le_e: lat.downs_mask(e),
        i_ea: inc_e & inc_a,
        i_ae: inc_a & comp_e,
        i_e_a: inc_e & comp_a,
        gt_e_le_a: lat.ups_mask(e) & lat.downs_mask(a) & !(1 << e),
        above_a: lat.ups_mask(a) & !(1 << a),
    }
}

/// Bitsets used by the upper family, for neutral `e` and anchor `b`.
struct UpperSets {
    /// `[b, 1]`
    base: u64,
    /// `[e, 1]`
    ge_e: u64,
    /// Incomparable with both `e` and `b`.
    i_eb: u64,
    /// Incomparable with `b`, comparable with `e` (hence below `e`).
    i_be: u64,
    /// Incomparable with `e`, comparable with `b` (hence above `b`).
    i_e_b: u64,
    /// `[b, e)`
    ge_b_lt_e: u64,
    /// `[0, b)`
    below_b: u64,
}

fn upper_sets(lat: &Lattice, e: usize, b: usize) -> UpperSets {
    let inc_e = lat.inc_mask(e);
    let inc_b = lat.inc_mask(b);
    let comp_e = lat.full_mask() & !inc_e;
    let comp_b = lat.full_mask() & !inc_b;
    UpperSets {
        base: lat.ups_mask(b),
        ge_e: lat.ups_mask(e),
        i_eb: inc_e & inc_b,
        i_be: inc_b & comp_e,
        i_e_b: inc_e & comp_b,
        ge_b_lt_e: lat.ups_mask(b) & lat.downs_mask(e) & !(1 << e),
        below_b: lat.downs_mask(b) & !(1 << b),
    }
}

fn bit(x: usize) -> u64 {
    1u64 << x
}

fn members(lat: &Lattice, mask: u64) -> Vec<usize> {
    (0..lat.len()).filter(|&i| mask & bit(i) != 0).collect()
}

// --- request validation ---

fn unary_kind_name(kind: UnaryKind) -> &'static str {
    match kind {
        UnaryKind::Closure => "closure",
        UnaryKind::Interior => "interior",
    }
}

fn validate(
    req: &Request,
    construction: &str,
    family: Family,
    base_kind: BaseKind,
    unary: Option<UnaryKind>,
) -> Result<(), ConstructError> {
    let lat = &req.lat;
    let mut violations = Vec::new();
    let (bound_label, far_bound) = match family {
        Family::Lower => ("top", lat.top()),
        Family::Upper => ("bottom", lat.bottom()),
    };
    let near_bound = match family {
        Family::Lower => lat.bottom(),
        Family::Upper => lat.top(),
    };
    if req.anchor == far_bound && !req.allow_degenerate {
        violations.push(format!(
            "anchor `{}` equals the lattice {bound_label} (set allow_degenerate to permit this)",
            lat.label(req.anchor)
        ));
    }
    if req.anchor == near_bound && req.anchor != far_bound && !req.allow_degenerate {
        violations.push(format!(
            "anchor `{}` equals the lattice {} (set allow_degenerate to permit this)",
            lat.label(req.anchor),
            match family {
                Family::Lower => "bottom",
                Family::Upper => "top",
            }
        ));
    }
    let in_order = match family {
        Family::Lower => lat.leq(req.neutral, req.anchor),
        Family::Upper => lat.leq(req.anchor, req.neutral),
    };
    if !in_order {
        violations.push(format!(
            "neutral `{}` is not inside the anchored interval",
            lat.label(req.neutral)
        ));
    }
    let expected_neutral = match (family, base_kind) {
        (_, BaseKind::Uninorm) => req.neutral,
        (Family::Lower, BaseKind::Tnorm) | (Family::Upper, BaseKind::Tconorm) => req.anchor,
        (Family::Lower, BaseKind::Tconorm) => lat.bottom(),
        (Family::Upper, BaseKind::Tnorm) => lat.top(),
    };
    if req.neutral != expected_neutral {
        violations.push(format!(
            "neutral must be `{}` for this construction",
            lat.label(expected_neutral)
        ));
    }
    if !Arc::ptr_eq(req.base.lattice(), lat) && req.base.lattice().labels() != lat.labels() {
        violations.push("base table lives on a different lattice".into());
    }
    let interval = match family {
        Family::Lower => lat.interval(lat.bottom(), req.anchor),
        Family::Upper => lat.interval(req.anchor, lat.top()),
    };
    match interval {
        Err(e) => violations.push(e.to_string()),
        Ok(iv) => {
            if req.base.carrier_mask() != iv.mask() {
                violations.push(format!(
                    "base carrier is not the interval [{}, {}]",
                    lat.label(iv.lo),
                    lat.label(iv.hi)
                ));
            } else {
                let checked = match base_kind {
                    BaseKind::Uninorm => req.base.is_uninorm(req.neutral),
                    BaseKind::Tnorm => req.base.is_tnorm(),
                    BaseKind::Tconorm => req.base.is_tconorm(),
                };
                let kind_name = match base_kind {
                    BaseKind::Uninorm => "uninorm",
                    BaseKind::Tnorm => "t-norm",
                    BaseKind::Tconorm => "t-conorm",
                };
                match checked {
                    Err(e) => violations.push(e.to_string()),
                    Ok(report) if !report.all_pass() => violations.push(format!(
                        "base is not a {kind_name}: failed {}",
                        report.failures().join(", ")
                    )),
                    Ok(_) => {}
                }
            }
        }
    }
    match (unary, &req.unary) {
        (None, _) => {}
        (Some(kind), None) => {
            violations.push(format!("missing {} operator", unary_kind_name(kind)))
        }
        (Some(kind), Some(u)) => {
            if u.lattice().labels() != lat.labels() {
                violations.push("unary operator lives on a different lattice".into());
            } else {
                let report = match kind {
                    UnaryKind::Closure => u.is_closure(),
                    UnaryKind::Interior => u.is_interior(),
                };
                if !report.all_pass() {
                    violations.push(format!(
                        "unary operator is not a {}: failed {}",
                        unary_kind_name(kind),
                        report.failures().join(", ")
                    ));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ConstructError::InvalidRequest {
            construction: construction.to_string(),
            violations,
        })
    }
}

// --- table builders ---

fn assert_disjoint(lat: &Lattice, x: usize, y: usize, regions: &[bool]) {
    assert!(
        regions.iter().filter(|&&r| r).count() <= 1,
        "overlapping construction regions at ({}, {})",
        lat.label(x),
        lat.label(y)
    );
}

fn build_full(
    name: String,
    req: &Request,
    mut cell: impl FnMut(usize, usize) -> usize,
) -> Result<BinOpTable, ConstructError> {
    let lat = req.lat.clone();
    let carrier: Vec<usize> = (0..lat.len()).collect();
    Ok(BinOpTable::from_fn(
        &name,
        lat,
        carrier,
        Some(req.neutral),
        |x, y| cell(x, y),
    )?)
}

/// Lower extension of a uninorm: base on `[0, a]`, doubly-incomparable
/// elements absorb `[0, e]`, everything else joins.
pub fn construct_u1(req: &Request) -> Result<BinOpTable, ConstructError> {
    validate(req, "u1", Family::Lower, BaseKind::Uninorm, None)?;
    let lat = req.lat.clone();
    let s = lower_sets(&lat, req.neutral, req.anchor);
    build_full(format!("u1({})", req.base.name()), req, |x, y| {
        let r1 = s.base & bit(x) != 0 && s.base & bit(y) != 0;
        let r2 = s.i_ea & bit(x) != 0 && s.le_e & bit(y) != 0;
        let r3 = s.le_e & bit(x) != 0 && s.i_ea & bit(y) != 0;
        assert_disjoint(&lat, x, y, &[r1, r2, r3]);
        if r1 {
            req.base.at(x, y)
        } else if r2 {
            x
        } else if r3 {
            y
        } else {
            lat.join(x, y)
        }
    })
}

/// Upper extension of a uninorm: base on `[b, 1]`, doubly-incomparable
/// elements absorb `[e, 1]`, everything else meets.
pub fn construct_u2(req: &Request) -> Result<BinOpTable, ConstructError> {
    validate(req, "u2", Family::Upper, BaseKind::Uninorm, None)?;
    let lat = req.lat.clone();
    let s = upper_sets(&lat, req.neutral, req.anchor);
    build_full(format!("u2({})", req.base.name()), req, |x, y| {
        let r1 = s.base & bit(x) != 0 && s.base & bit(y) != 0;
        let r2 = s.i_eb & bit(x) != 0 && s.ge_e & bit(y) != 0;
        let r3 = s.ge_e & bit(x) != 0 && s.i_eb & bit(y) != 0;
        assert_disjoint(&lat, x, y, &[r1, r2, r3]);
        if r1 {
            req.base.at(x, y)
        } else if r2 {
            x
        } else if r3 {
            y
        } else {
            lat.meet(x, y)
        }
    })
}

fn construct_join_outside(
    req: &Request,
    construction: &str,
    base_kind: BaseKind,
) -> Result<BinOpTable, ConstructError> {
    validate(req, construction, Family::Lower, base_kind, None)?;
    let lat = req.lat.clone();
    let base_mask = lat.downs_mask(req.anchor);
    build_full(format!("{construction}({})", req.base.name()), req, |x, y| {
        if base_mask & bit(x) != 0 && base_mask & bit(y) != 0 {
            req.base.at(x, y)
        } else {
            lat.join(x, y)
        }
    })
}

fn construct_meet_outside(
    req: &Request,
    construction: &str,
    base_kind: BaseKind,
) -> Result<BinOpTable, ConstructError> {
    validate(req, construction, Family::Upper, base_kind, None)?;
    let lat = req.lat.clone();
    let base_mask = lat.ups_mask(req.anchor);
    build_full(format!("{construction}({})", req.base.name()), req, |x, y| {
        if base_mask & bit(x) != 0 && base_mask & bit(y) != 0 {
            req.base.at(x, y)
        } else {
            lat.meet(x, y)
        }
    })
}

/// Lower extension of a t-conorm by joins outside the base square.
pub fn construct_s1(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_join_outside(req, "s1", BaseKind::Tconorm)
}

/// Upper extension of a t-norm by meets outside the base square.
pub fn construct_t1(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_meet_outside(req, "t1", BaseKind::Tnorm)
}

/// Same table as [`construct_s1`]; checked against the t-conorm condition
/// rather than the uninorm one.
pub fn construct_s1star(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_join_outside(req, "s1star", BaseKind::Tconorm)
}

/// Same table as [`construct_t1`]; checked against the t-norm condition.
pub fn construct_t1star(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_meet_outside(req, "t1star", BaseKind::Tnorm)
}

/// Value of the combined-map region for the lower closure extensions.
enum InnerRule {
    ClJoin,
    PlainJoin,
    JoinWithAnchor,
}

fn construct_lower_ext(
    req: &Request,
    construction: &str,
    rule: InnerRule,
) -> Result<BinOpTable, ConstructError> {
    let unary = matches!(rule, InnerRule::ClJoin).then_some(UnaryKind::Closure);
    validate(req, construction, Family::Lower, BaseKind::Uninorm, unary)?;
    let lat = req.lat.clone();
    let s = lower_sets(&lat, req.neutral, req.anchor);
    let top = lat.top();
    let cl = req.unary.clone();
    build_full(format!("{construction}({})", req.base.name()), req, |x, y| {
        let outside_x = s.base & bit(x) == 0;
        let outside_y = s.base & bit(y) == 0;
        let r1 = !outside_x && !outside_y;
        let r2 = outside_x && s.le_e & bit(y) != 0;
        let r3 = s.le_e & bit(x) != 0 && outside_y;
        let r4 = s.i_ea & bit(x) != 0 && s.i_ea & bit(y) != 0;
        assert_disjoint(&lat, x, y, &[r1, r2, r3, r4]);
        if r1 {
            req.base.at(x, y)
        } else if r2 {
            x
        } else if r3 {
            y
        } else if r4 {
            match &rule {
                InnerRule::ClJoin => {
                    let c = cl.as_ref().expect("validated closure");
                    lat.join(c.apply(x), c.apply(y))
                }
                InnerRule::PlainJoin => lat.join(x, y),
                InnerRule::JoinWithAnchor => lat.join(lat.join(x, y), req.anchor),
            }
        } else {
            top
        }
    })
}

/// Value of the combined-map region for the upper interior extensions.
enum InnerRuleUpper {
    IntMeet,
    PlainMeet,
    MeetWithAnchor,
}

fn construct_upper_ext(
    req: &Request,
    construction: &str,
    rule: InnerRuleUpper,
) -> Result<BinOpTable, ConstructError> {
    let unary = matches!(rule, InnerRuleUpper::IntMeet).then_some(UnaryKind::Interior);
    validate(req, construction, Family::Upper, BaseKind::Uninorm, unary)?;
    let lat = req.lat.clone();
    let s = upper_sets(&lat, req.neutral, req.anchor);
    let bottom = lat.bottom();
    let int = req.unary.clone();
    build_full(format!("{construction}({})", req.base.name()), req, |x, y| {
        let outside_x = s.base & bit(x) == 0;
        let outside_y = s.base & bit(y) == 0;
        let r1 = !outside_x && !outside_y;
        let r2 = outside_x && s.ge_e & bit(y) != 0;
        let r3 = s.ge_e & bit(x) != 0 && outside_y;
        let r4 = s.i_eb & bit(x) != 0 && s.i_eb & bit(y) != 0;
        assert_disjoint(&lat, x, y, &[r1, r2, r3, r4]);
        if r1 {
            req.base.at(x, y)
        } else if r2 {
            x
        } else if r3 {
            y
        } else if r4 {
            match &rule {
                InnerRuleUpper::IntMeet => {
                    let i = int.as_ref().expect("validated interior");
                    lat.meet(i.apply(x), i.apply(y))
                }
                InnerRuleUpper::PlainMeet => lat.meet(x, y),
                InnerRuleUpper::MeetWithAnchor => lat.meet(lat.meet(x, y), req.anchor),
            }
        } else {
            bottom
        }
    })
}

/// Lower extension routed through a closure operator on the doubly
/// incomparable square; everything else outside collapses to the top.
pub fn construct_u3(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_lower_ext(req, "u3", InnerRule::ClJoin)
}

/// Like [`construct_u3`] with plain joins on the doubly incomparable square;
/// equal by definition to the general path with the identity closure.
pub fn construct_u31(req: &Request) -> Result<BinOpTable, ConstructError> {
    let table = construct_lower_ext(req, "u31", InnerRule::PlainJoin)?;
    let general = construct_u3(&Request {
        unary: Some(UnaryOpTable::identity_op(req.lat.clone())),
        ..req.clone()
    })?;
    assert!(table.table_eq(&general), "u31 diverged from its general path");
    Ok(table)
}

/// Like [`construct_u3`] with anchor-lifted joins on that square; equal by
/// definition to the general path with the canonical closure at the anchor.
pub fn construct_u32(req: &Request) -> Result<BinOpTable, ConstructError> {
    let table = construct_lower_ext(req, "u32", InnerRule::JoinWithAnchor)?;
    let general = construct_u3(&Request {
        unary: Some(UnaryOpTable::canonical_closure(req.lat.clone(), req.anchor)),
        ..req.clone()
    })?;
    assert!(table.table_eq(&general), "u32 diverged from its general path");
    Ok(table)
}

/// Upper extension routed through an interior operator on the doubly
/// incomparable square; everything else outside collapses to the bottom.
pub fn construct_u4(req: &Request) -> Result<BinOpTable, ConstructError> {
    construct_upper_ext(req, "u4", InnerRuleUpper::IntMeet)
}

/// Like [`construct_u4`] with plain meets on the doubly incomparable square;
/// equal by definition to the general path with the identity interior.
pub fn construct_u41(req: &Request) -> Result<BinOpTable, ConstructError> {
    let table = construct_upper_ext(req, "u41", InnerRuleUpper::PlainMeet)?;
    let general = construct_u4(&Request {
        unary: Some(UnaryOpTable::identity_op(req.lat.clone())),
        ..req.clone()
    })?;
    assert!(table.table_eq(&general), "u41 diverged from its general path");
    Ok(table)
}

/// Like [`construct_u4`] with anchor-lowered meets on that square; equal by
/// definition to the general path with the canonical interior at the anchor.
pub fn construct_u42(req: &Request) -> Result<BinOpTable, ConstructError> {
    let table = construct_upper_ext(req, "u42", InnerRuleUpper::MeetWithAnchor)?;
    let general = construct_u4(&Request {
        unary: Some(UnaryOpTable::canonical_interior(req.lat.clone(), req.anchor)),
        ..req.clone()
    })?;
    assert!(table.table_eq(&general), "u42 diverged from its general path");
    Ok(table)
}

/// Dispatch by construction id.
pub fn construct(id: ConstructionId, req: &Request) -> Result<BinOpTable, ConstructError> {
    match id {
        ConstructionId::U1 => construct_u1(req),
        ConstructionId::U2 => construct_u2(req),
        ConstructionId::S1 => construct_s1(req),
        ConstructionId::T1 => construct_t1(req),
        ConstructionId::S1Star => construct_s1star(req),
        ConstructionId::T1Star => construct_t1star(req),
        ConstructionId::U3 => construct_u3(req),
        ConstructionId::U31 => construct_u31(req),
        ConstructionId::U32 => construct_u32(req),
        ConstructionId::U4 => construct_u4(req),
        ConstructionId::U41 => construct_u41(req),
        ConstructionId::U42 => construct_u42(req),
    }
}

/// Builds one of the named neutral-anchored or bound-anchored tables.
pub fn construct_named_special(id: SpecialId, req: &Request) -> Result<BinOpTable, ConstructError> {
    let name = id.as_str();
    let lat = req.lat.clone();
    match id {
        // T-norm on [0, e]; incomparable elements absorb [0, e]; joins above.
        SpecialId::Ut1 => {
            validate(req, name, Family::Lower, BaseKind::Tnorm, None)?;
            let s = lower_sets(&lat, req.neutral, req.neutral);
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let r1 = s.le_e & bit(x) != 0 && s.le_e & bit(y) != 0;
                let r2 = s.i_ea & bit(x) != 0 && s.le_e & bit(y) != 0;
                let r3 = s.le_e & bit(x) != 0 && s.i_ea & bit(y) != 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else {
                    lat.join(x, y)
                }
            })
        }
        // T-conorm on [e, 1]; incomparable elements absorb [e, 1]; meets below.
        SpecialId::Us1 => {
            validate(req, name, Family::Upper, BaseKind::Tconorm, None)?;
            let s = upper_sets(&lat, req.neutral, req.neutral);
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let r1 = s.ge_e & bit(x) != 0 && s.ge_e & bit(y) != 0;
                let r2 = s.i_eb & bit(x) != 0 && s.ge_e & bit(y) != 0;
                let r3 = s.ge_e & bit(x) != 0 && s.i_eb & bit(y) != 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else {
                    lat.meet(x, y)
                }
            })
        }
        // Closure or join variants anchored at the neutral element.
        SpecialId::Ucl | SpecialId::Ut2 | SpecialId::Ut3 => {
            let unary = (id == SpecialId::Ucl).then_some(UnaryKind::Closure);
            validate(req, name, Family::Lower, BaseKind::Tnorm, unary)?;
            let s = lower_sets(&lat, req.neutral, req.neutral);
            let top = lat.top();
            let cl = req.unary.clone();
            let e = req.neutral;
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let outside_x = s.le_e & bit(x) == 0;
                let outside_y = s.le_e & bit(y) == 0;
                let r1 = !outside_x && !outside_y;
                let r2 = outside_x && s.le_e & bit(y) != 0;
                let r3 = s.le_e & bit(x) != 0 && outside_y;
                let r4 = s.i_ea & bit(x) != 0 && s.i_ea & bit(y) != 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3, r4]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else if r4 {
                    match id {
                        SpecialId::Ucl => {
                            let c = cl.as_ref().expect("validated closure");
                            lat.join(c.apply(x), c.apply(y))
                        }
                        SpecialId::Ut2 => lat.join(x, y),
                        _ => lat.join(lat.join(x, y), e),
                    }
                } else {
                    top
                }
            })
        }
        // Interior or meet variants anchored at the neutral element.
        SpecialId::Uint | SpecialId::Us2 | SpecialId::Us3 => {
            let unary = (id == SpecialId::Uint).then_some(UnaryKind::Interior);
            validate(req, name, Family::Upper, BaseKind::Tconorm, unary)?;
            let s = upper_sets(&lat, req.neutral, req.neutral);
            let bottom = lat.bottom();
            let int = req.unary.clone();
            let e = req.neutral;
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let outside_x = s.ge_e & bit(x) == 0;
                let outside_y = s.ge_e & bit(y) == 0;
                let r1 = !outside_x && !outside_y;
                let r2 = outside_x && s.ge_e & bit(y) != 0;
                let r3 = s.ge_e & bit(x) != 0 && outside_y;
                let r4 = s.i_eb & bit(x) != 0 && s.i_eb & bit(y) != 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3, r4]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else if r4 {
                    match id {
                        SpecialId::Uint => {
                            let i = int.as_ref().expect("validated interior");
                            lat.meet(i.apply(x), i.apply(y))
                        }
                        SpecialId::Us2 => lat.meet(x, y),
                        _ => lat.meet(lat.meet(x, y), e),
                    }
                } else {
                    bottom
                }
            })
        }
        // T-conorm on [0, a]; only the bottom row and column keep their
        // partner outside the base square; everything else collapses to top.
        SpecialId::S2Star => {
            validate(req, name, Family::Lower, BaseKind::Tconorm, None)?;
            let base_mask = lat.downs_mask(req.anchor);
            let bottom = lat.bottom();
            let top = lat.top();
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let r1 = base_mask & bit(x) != 0 && base_mask & bit(y) != 0;
                let r2 = base_mask & bit(x) == 0 && y == bottom;
                let r3 = x == bottom && base_mask & bit(y) == 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else {
                    top
                }
            })
        }
        // T-norm on [b, 1]; only the top row and column keep their partner
        // outside the base square; everything else collapses to bottom.
        SpecialId::T2Star => {
            validate(req, name, Family::Upper, BaseKind::Tnorm, None)?;
            let base_mask = lat.ups_mask(req.anchor);
            let bottom = lat.bottom();
            let top = lat.top();
            build_full(format!("{name}({})", req.base.name()), req, |x, y| {
                let r1 = base_mask & bit(x) != 0 && base_mask & bit(y) != 0;
                let r2 = base_mask & bit(x) == 0 && y == top;
                let r3 = x == top && base_mask & bit(y) == 0;
                assert_disjoint(&lat, x, y, &[r1, r2, r3]);
                if r1 {
                    req.base.at(x, y)
                } else if r2 {
                    x
                } else if r3 {
                    y
                } else {
                    bottom
                }
            })
        }
    }
}

// --- condition checkers ---

struct ItemSink {
    item: ConditionItem,
    cap: usize,
}

impl ItemSink {
    fn new(id: &'static str, role: ConditionRole, description: String, cap: usize) -> ItemSink {
        ItemSink {
            item: ConditionItem::new(id, role, description),
            cap,
        }
    }

    fn violate(&mut self, z: Option<usize>, x: usize, y: usize, value: Option<usize>) {
        self.item.violate(self.cap, CondWitness { z, x, y, value });
    }

    fn done(self) -> ConditionItem {
        self.item
    }
}

/// Square condition: for each `z` in `zs`, base values over partners
/// comparable with `z` must stay comparable with `z`.
fn comp_square_item(
    id: &'static str,
    lat: &Lattice,
    base: &BinOpTable,
    zs: u64,
    partner: u64,
    cap: usize,
    desc: &str,
) -> ConditionItem {
    let mut sink = ItemSink::new(id, ConditionRole::Condition, desc.to_string(), cap);
    for z in members(lat, zs) {
        let comp_z = lat.full_mask() & !lat.inc_mask(z);
        let p = members(lat, partner & comp_z);
        for &x in &p {
            for &y in &p {
                let v = base.at(x, y);
                if lat.incomparable(v, z) {
                    sink.violate(Some(z), x, y, Some(v));
                }
            }
        }
    }
    sink.done()
}

/// Mixed condition: for each `z` in `zs`, base values over pairs touching a
/// partner incomparable with the filter target must stay incomparable with
/// `z`.
fn inc_mixed_item(
    id: &'static str,
    lat: &Lattice,
    base: &BinOpTable,
    zs: u64,
    partner: u64,
    base_mask: u64,
    filter_anchor: Option<usize>,
    cap: usize,
    desc: &str,
) -> ConditionItem {
    let mut sink = ItemSink::new(id, ConditionRole::Condition, desc.to_string(), cap);
    let all = members(lat, base_mask);
    for z in members(lat, zs) {
        let filter_inc = match filter_anchor {
            None => lat.inc_mask(z),
            Some(a) => lat.inc_mask(a),
        };
        let p = partner & filter_inc;
        for &x in &all {
            for &y in &all {
                if p & bit(x) == 0 && p & bit(y) == 0 {
                    continue;
                }
                let v = base.at(x, y);
                if lat.comparable(v, z) {
                    sink.violate(Some(z), x, y, Some(v));
                }
            }
        }
    }
    sink.done()
}

/// Conditions for the lower uninorm extension to be a uninorm.
pub fn check_u1_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "u1", Family::Lower, BaseKind::Uninorm, None)?;
    let lat = &req.lat;
    let s = lower_sets(lat, req.neutral, req.anchor);
    let partner = s.i_e_a | s.gt_e_le_a;
    let filter = match opts.mixed_filter {
        MixedFilter::AgainstZ => None,
        MixedFilter::AgainstAnchor => Some(req.anchor),
    };
    let items = vec![
        comp_square_item(
            "cond-1",
            lat,
            &req.base,
            s.i_ea,
            partner,
            opts.witness_cap,
            "base values over comparable partners stay comparable with each doubly incomparable z",
        ),
        inc_mixed_item(
            "cond-2",
            lat,
            &req.base,
            s.i_ea,
            partner,
            s.base,
            filter,
            opts.witness_cap,
            "base values touching an incomparable partner stay incomparable with each doubly incomparable z",
        ),
        comp_square_item(
            "cond-3",
            lat,
            &req.base,
            s.i_ae,
            partner,
            opts.witness_cap,
            "base values over comparable partners stay comparable with each anchor-incomparable z",
        ),
        inc_mixed_item(
            "cond-4",
            lat,
            &req.base,
            s.i_ae,
            partner,
            s.base,
            filter,
            opts.witness_cap,
            "base values touching an incomparable partner stay incomparable with each anchor-incomparable z",
        ),
    ];
    Ok(ConditionReport {
        construction: "u1".into(),
        items,
    })
}

/// Conditions for the upper uninorm extension to be a uninorm.
pub fn check_u2_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "u2", Family::Upper, BaseKind::Uninorm, None)?;
    let lat = &req.lat;
    let s = upper_sets(lat, req.neutral, req.anchor);
    let partner = s.i_e_b | s.ge_b_lt_e;
    let filter = match opts.mixed_filter {
        MixedFilter::AgainstZ => None,
        MixedFilter::AgainstAnchor => Some(req.anchor),
    };
    let items = vec![
        comp_square_item(
            "cond-1",
            lat,
            &req.base,
            s.i_eb,
            partner,
            opts.witness_cap,
            "base values over comparable partners stay comparable with each doubly incomparable z",
        ),
        inc_mixed_item(
            "cond-2",
            lat,
            &req.base,
            s.i_eb,
            partner,
            s.base,
            filter,
            opts.witness_cap,
            "base values touching an incomparable partner stay incomparable with each doubly incomparable z",
        ),
        comp_square_item(
            "cond-3",
            lat,
            &req.base,
            s.i_be,
            partner,
            opts.witness_cap,
            "base values over comparable partners stay comparable with each anchor-incomparable z",
        ),
        inc_mixed_item(
            "cond-4",
            lat,
            &req.base,
            s.i_be,
            partner,
            s.base,
            filter,
            opts.witness_cap,
            "base values touching an incomparable partner stay incomparable with each anchor-incomparable z",
        ),
    ];
    Ok(ConditionReport {
        construction: "u2".into(),
        items,
    })
}

/// Condition for the joined t-conorm extension to be a t-conorm.
pub fn check_s1_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "s1", Family::Lower, BaseKind::Tconorm, None)?;
    let lat = &req.lat;
    let partner = lat.downs_mask(req.anchor) & !bit(lat.bottom());
    let item = comp_square_item(
        "cond-1",
        lat,
        &req.base,
        lat.inc_mask(req.anchor),
        partner,
        opts.witness_cap,
        "base values over nonzero comparable partners stay comparable with each anchor-incomparable z",
    );
    Ok(ConditionReport {
        construction: "s1".into(),
        items: vec![item],
    })
}

/// Condition for the met t-norm extension to be a t-norm.
pub fn check_t1_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "t1", Family::Upper, BaseKind::Tnorm, None)?;
    let lat = &req.lat;
    let partner = lat.ups_mask(req.anchor);
    let item = comp_square_item(
        "cond-1",
        lat,
        &req.base,
        lat.inc_mask(req.anchor),
        partner,
        opts.witness_cap,
        "base values over comparable partners stay comparable with each anchor-incomparable z",
    );
    Ok(ConditionReport {
        construction: "t1".into(),
        items: vec![item],
    })
}

fn parallel_item(
    lat: &Lattice,
    xs: u64,
    ys: u64,
    cap: usize,
    desc: &str,
) -> ConditionItem {
    let mut sink = ItemSink::new("parallel", ConditionRole::Condition, desc.to_string(), cap);
    for x in members(lat, xs) {
        for y in members(lat, ys) {
            if lat.comparable(x, y) {
                sink.violate(None, x, y, None);
            }
        }
    }
    sink.done()
}

/// Condition for the joined t-conorm extension to be a t-conorm, stated
/// purely on the order: anchor-incomparable elements are parallel to every
/// nonzero element under the anchor.
pub fn check_s1star_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "s1star", Family::Lower, BaseKind::Tconorm, None)?;
    let lat = &req.lat;
    let ys = lat.downs_mask(req.anchor) & !bit(lat.bottom());
    let item = parallel_item(
        lat,
        lat.inc_mask(req.anchor),
        ys,
        opts.witness_cap,
        "anchor-incomparable elements are parallel to every nonzero element below the anchor",
    );
    Ok(ConditionReport {
        construction: "s1star".into(),
        items: vec![item],
    })
}

/// Condition for the met t-norm extension to be a t-norm, stated purely on
/// the order: anchor-incomparable elements are parallel to every non-top
/// element above the anchor.
pub fn check_t1star_conditions(req: &Request, opts: &CheckOpts) -> Result<ConditionReport, ConstructError> {
    validate(req, "t1star", Family::Upper, BaseKind::Tnorm, None)?;
    let lat = &req.lat;
    let ys = lat.ups_mask(req.anchor) & !bit(lat.top());
    let item = parallel_item(
        lat,
        lat.inc_mask(req.anchor),
        ys,
        opts.witness_cap,
        "anchor-incomparable elements are parallel to every non-top element above the anchor",
    );
    Ok(ConditionReport {
        construction: "t1star".into(),
        items: vec![item],
    })
}

fn range_item(
    id: &'static str,
    lat: &Lattice,
    square: u64,
    combined: impl Fn(usize, usize) -> usize,
    target: impl Fn(usize) -> bool,
    cap: usize,
    desc: &str,
) -> ConditionItem {
    let mut sink = ItemSink::new(id, ConditionRole::Hypothesis, desc.to_string(), cap);
    let xs = members(lat, square);
    for &x in &xs {
        for &y in &xs {
            let v = combined(x, y);
            if !target(v) {
                sink.violate(None, x, y, Some(v));
            }
        }
    }
    sink.done()
}

fn class_item(
    lat: &Lattice,
    base: &BinOpTable,
    e: usize,
    role: ConditionRole,
    lower: bool,
    cap: usize,
) -> ConditionItem {
    let desc = if lower {
        "base values fall below the neutral exactly when both arguments do"
    } else {
        "base values rise above the neutral exactly when both arguments do"
    };
    let mut sink = ItemSink::new("base-class", role, desc.to_string(), cap);
    for &x in base.carrier() {
        for &y in base.carrier() {
            let v = base.at(x, y);
            let ok = if lower {
                lat.leq(v, e) == (lat.leq(x, e) && lat.leq(y, e))
            } else {
                lat.leq(e, v) == (lat.leq(e, x) && lat.leq(e, y))
            };
            if !ok {
                sink.violate(None, x, y, Some(v));
            }
        }
    }
    sink.done()
}

fn nonempty_item(mask: u64, desc: &str) -> ConditionItem {
    let mut item = ConditionItem::new("nonempty-guard", ConditionRole::Hypothesis, desc.to_string());
    item.holds = mask != 0;
    item
}

/// Case-wise conditions for the closure-routed lower extension.
pub fn check_u3_conditions(
    req: &Request,
    case: ExtCase,
    opts: &CheckOpts,
) -> Result<ConditionReport, ConstructError> {
    validate(req, "u3", Family::Lower, BaseKind::Uninorm, Some(UnaryKind::Closure))?;
    let lat = &req.lat;
    let s = lower_sets(lat, req.neutral, req.anchor);
    let cl = req.unary.as_ref().expect("validated closure");
    let combined = |x: usize, y: usize| lat.join(cl.apply(x), cl.apply(y));
    let cap = opts.witness_cap;
    let top = lat.top();

    let range_inside = || {
        range_item(
            "range-inside",
            lat,
            s.i_ea,
            combined,
            |v| s.i_ea & bit(v) != 0,
            cap,
            "combined closure values of doubly incomparable pairs stay doubly incomparable",
        )
    };
    let range_above = || {
        range_item(
            "range-above",
            lat,
            s.i_ea,
            combined,
            |v| s.above_a & bit(v) != 0,
            cap,
            "combined closure values of doubly incomparable pairs land strictly above the anchor",
        )
    };
    let below_top = || {
        range_item(
            "below-top",
            lat,
            s.i_ea,
            combined,
            |v| v != top,
            cap,
            "combined closure values of doubly incomparable pairs stay below the top",
        )
    };
    let guard_mask = s.i_ea | s.i_ae | (s.above_a & !bit(top));
    let guard = || {
        nonempty_item(
            guard_mask,
            "something lies outside the base interval besides the top",
        )
    };
    let partner = match opts.parallel_with {
        ParallelWith::NeutralSide => s.i_e_a,
        ParallelWith::AnchorSide => s.i_ae,
    };
    let parallel = |role_desc: &str| {
        parallel_item(lat, s.i_ea, partner, cap, role_desc)
    };
    let par_desc = "doubly incomparable elements are parallel to every singly incomparable one";

    let items = match case {
        ExtCase::C1i => vec![
            range_inside(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Hypothesis, true, cap),
            parallel(par_desc),
        ],
        ExtCase::C1ii => vec![
            range_inside(),
            guard(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, true, cap),
            parallel(par_desc),
        ],
        ExtCase::C2i => vec![
            range_above(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, true, cap),
            parallel(par_desc),
        ],
        ExtCase::C2ii => vec![
            range_above(),
            below_top(),
            guard(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, true, cap),
            parallel(par_desc),
        ],
    };
    Ok(ConditionReport {
        construction: format!("u3-{}", case.as_str()),
        items,
    })
}

/// Case-wise conditions for the interior-routed upper extension.
pub fn check_u4_conditions(
    req: &Request,
    case: ExtCase,
    opts: &CheckOpts,
) -> Result<ConditionReport, ConstructError> {
    validate(req, "u4", Family::Upper, BaseKind::Uninorm, Some(UnaryKind::Interior))?;
    let lat = &req.lat;
    let s = upper_sets(lat, req.neutral, req.anchor);
    let int = req.unary.as_ref().expect("validated interior");
    let combined = |x: usize, y: usize| lat.meet(int.apply(x), int.apply(y));
    let cap = opts.witness_cap;
    let bottom = lat.bottom();

    let range_inside = || {
        range_item(
            "range-inside",
            lat,
            s.i_eb,
            combined,
            |v| s.i_eb & bit(v) != 0,
            cap,
            "combined interior values of doubly incomparable pairs stay doubly incomparable",
        )
    };
    let range_below = || {
        range_item(
            "range-above",
            lat,
            s.i_eb,
            combined,
            |v| s.below_b & bit(v) != 0,
            cap,
            "combined interior values of doubly incomparable pairs land strictly below the anchor",
        )
    };
    let above_bottom = || {
        range_item(
            "below-top",
            lat,
            s.i_eb,
            combined,
            |v| v != bottom,
            cap,
            "combined interior values of doubly incomparable pairs stay above the bottom",
        )
    };
    let guard_mask = s.i_eb | s.i_be | (s.below_b & !bit(bottom));
    let guard = || {
        nonempty_item(
            guard_mask,
            "something lies outside the base interval besides the bottom",
        )
    };
    let partner = match opts.parallel_with {
        ParallelWith::NeutralSide => s.i_e_b,
        ParallelWith::AnchorSide => s.i_be,
    };
    let par_desc = "doubly incomparable elements are parallel to every singly incomparable one";
    let parallel = |role_desc: &str| parallel_item(lat, s.i_eb, partner, cap, role_desc);

    let items = match case {
        ExtCase::C1i => vec![
            range_inside(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Hypothesis, false, cap),
            parallel(par_desc),
        ],
        ExtCase::C1ii => vec![
            range_inside(),
            guard(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, false, cap),
            parallel(par_desc),
        ],
        ExtCase::C2i => vec![
            range_below(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, false, cap),
            parallel(par_desc),
        ],
        ExtCase::C2ii => vec![
            range_below(),
            above_bottom(),
            guard(),
            class_item(lat, &req.base, req.neutral, ConditionRole::Condition, false, cap),
            parallel(par_desc),
        ],
    };
    Ok(ConditionReport {
        construction: format!("u4-{}", case.as_str()),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binop::BinOpTable;
    use crate::lattice::Lattice;
    use crate::unary::UnaryOpTable;

    /// Chain 0 < e < a < 1 plus m with 0 < m < 1 and m parallel to e, a.
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

    /// Uninorm on [0, a] with neutral e: meet if either argument is under e,
    /// join otherwise. Conjunctive flavor.
    fn conj_base(lat: &Arc<Lattice>, e: usize, a: usize) -> BinOpTable {
        let iv = lat.interval(lat.bottom(), a).unwrap();
        BinOpTable::from_fn("conj", lat.clone(), iv.members.clone(), Some(e), |x, y| {
            if lat.lt(x, e) || lat.lt(y, e) {
                lat.meet(x, y)
            } else {
                lat.join(x, y)
            }
        })
        .unwrap()
    }

    /// Uninorm on [0, a] with neutral e: meet if both arguments are under e,
    /// join otherwise. Disjunctive flavor.
    fn disj_base(lat: &Arc<Lattice>, e: usize, a: usize) -> BinOpTable {
        let iv = lat.interval(lat.bottom(), a).unwrap();
        BinOpTable::from_fn("disj", lat.clone(), iv.members.clone(), Some(e), |x, y| {
            if lat.leq(x, e) && lat.leq(y, e) {
                lat.meet(x, y)
            } else {
                lat.join(x, y)
            }
        })
        .unwrap()
    }

    fn request(lat: &Arc<Lattice>, base: BinOpTable, e: usize, a: usize) -> Request {
        Request {
            lat: lat.clone(),
            anchor: a,
            base,
            neutral: e,
            unary: None,
            allow_degenerate: false,
        }
    }

    #[test]
    fn base_tables_are_uninorms() {
        let lat = pin_lattice();
        let (e, a) = (1, 2);
        assert!(conj_base(&lat, e, a).is_uninorm(e).unwrap().all_pass());
        assert!(disj_base(&lat, e, a).is_uninorm(e).unwrap().all_pass());
    }

    #[test]
    fn lower_extension_matches_conditions_verdict() {
        let lat = pin_lattice();
        let (e, a) = (1, 2);
        for (base, expect) in [(disj_base(&lat, e, a), true), (conj_base(&lat, e, a), false)] {
            let req = request(&lat, base, e, a);
            let report = check_u1_conditions(&req, &CheckOpts::default()).unwrap();
            assert_eq!(report.conditions_hold(), expect);
            let table = construct_u1(&req).unwrap();
            assert_eq!(table.is_uninorm(e).unwrap().all_pass(), expect);
        }
    }

    #[test]
    fn lower_extension_values() {
        let lat = pin_lattice();
        let (e, a, m, top) = (1, 2, 3, 4);
        let req = request(&lat, disj_base(&lat, e, a), e, a);
        let u = construct_u1(&req).unwrap();
        assert_eq!(u.at(m, 0), m);
        assert_eq!(u.at(m, e), m);
        assert_eq!(u.at(e, m), m);
        assert_eq!(u.at(m, a), top);
        assert_eq!(u.at(m, m), m);
        assert_eq!(u.at(0, a), a);
        let iv = lat.interval(0, a).unwrap();
        assert!(u.restrict(&iv).unwrap().table_eq(&req.base));
    }

    #[test]
    fn closed_extension_matches_case_verdicts() {
        let lat = pin_lattice();
        let (e, a) = (1, 2);
        let id = UnaryOpTable::identity_op(lat.clone());
        for (base, expect) in [(disj_base(&lat, e, a), true), (conj_base(&lat, e, a), false)] {
            let req = Request {
                unary: Some(id.clone()),
                ..request(&lat, base, e, a)
            };
            let report = check_u3_conditions(&req, ExtCase::C1ii, &CheckOpts::default()).unwrap();
            assert!(report.item("nonempty-guard").unwrap().holds);
            assert!(report.item("range-inside").unwrap().holds);
            assert_eq!(report.conditions_hold(), expect);
            let table = construct_u3(&req).unwrap();
            assert_eq!(table.is_uninorm(e).unwrap().all_pass(), expect);
        }
    }

    #[test]
    fn upper_extension_dual_to_lower() {
        let lat = pin_lattice();
        let dual = Arc::new(lat.dual());
        let (e, a) = (1, 2);
        let base = disj_base(&lat, e, a);
        let req = request(&lat, base.clone(), e, a);
        let u1 = construct_u1(&req).unwrap();

        // Same labels on the dual: the base becomes an upper base.
        let carrier = base.carrier().to_vec();
        let values: Vec<usize> = carrier
            .iter()
            .flat_map(|&x| carrier.iter().map(move |&y| (x, y)))
            .map(|(x, y)| base.at(x, y))
            .collect();
        let dual_base = BinOpTable::new("disj", dual.clone(), carrier, values, Some(e)).unwrap();
        let dual_req = Request {
            lat: dual.clone(),
            anchor: a,
            base: dual_base,
            neutral: e,
            unary: None,
            allow_degenerate: false,
        };
        let u2 = construct_u2(&dual_req).unwrap();
        assert!(u1.table_eq(&u2));
    }

    #[test]
    fn invalid_requests_name_every_violation() {
        let lat = pin_lattice();
        let (e, a) = (1, 2);
        let base = disj_base(&lat, e, a);
        let bad = Request {
            lat: lat.clone(),
            anchor: lat.top(),
            base,
            neutral: e,
            unary: None,
            allow_degenerate: false,
        };
        let err = construct_u1(&bad).unwrap_err();
        match err {
            ConstructError::InvalidRequest { violations, .. } => {
                assert!(violations.iter().any(|v| v.contains("anchor")));
                assert!(violations.iter().any(|v| v.contains("carrier")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    /// Uninorm on the whole lattice with neutral e: meet under e, absorption
    /// for elements incomparable with e, join elsewhere.
    fn full_base(lat: &Arc<Lattice>, e: usize) -> BinOpTable {
        let carrier: Vec<usize> = (0..lat.len()).collect();
        BinOpTable::from_fn("full", lat.clone(), carrier, Some(e), |x, y| {
            if lat.leq(x, e) && lat.leq(y, e) {
                lat.meet(x, y)
            } else if lat.incomparable(x, e) && lat.leq(y, e) {
                x
            } else if lat.leq(x, e) && lat.incomparable(y, e) {
                y
            } else {
                lat.join(x, y)
            }
        })
        .unwrap()
    }

    #[test]
    fn degenerate_anchor_returns_base_shape() {
        let lat = pin_lattice();
        let e = 1;
        let top = lat.top();
        let base = full_base(&lat, e);
        assert!(base.is_uninorm(e).unwrap().all_pass());
        let req = Request {
            lat: lat.clone(),
            anchor: top,
            base: base.clone(),
            neutral: e,
            unary: None,
            allow_degenerate: true,
        };
        let u = construct_u1(&req).unwrap();
        assert!(u.table_eq(&base));
    }

    #[test]
    fn specials_follow_their_regions() {
        let lat = pin_lattice();
        let (e, m, top) = (1, 3, 4);
        let iv = lat.interval(0, e).unwrap();
        let te = BinOpTable::from_fn("te", lat.clone(), iv.members.clone(), Some(e), |x, y| {
            lat.meet(x, y)
        })
        .unwrap();
        let req = Request {
            lat: lat.clone(),
            anchor: e,
            base: te,
            neutral: e,
            unary: None,
            allow_degenerate: false,
        };
        let t = construct_named_special(SpecialId::Ut2, &req).unwrap();
        // m is incomparable with e: absorbs [0, e], joins with itself, top otherwise.
        assert_eq!(t.at(m, 0), m);
        assert_eq!(t.at(m, m), m);
        assert_eq!(t.at(m, 2), top);
        assert_eq!(t.at(2, 2), top);
        assert!(t.is_uninorm(e).unwrap().all_pass());
    }

    #[test]
    fn bound_anchored_specials() {
        let lat = pin_lattice();
        let (e, a, m, top) = (1, 2, 3, 4);
        let iv = lat.interval(0, a).unwrap();
        let s = BinOpTable::from_fn("s", lat.clone(), iv.members.clone(), Some(0), |x, y| {
            lat.join(x, y)
        })
        .unwrap();
        let req = Request {
            lat: lat.clone(),
            anchor: a,
            base: s,
            neutral: 0,
            unary: None,
            allow_degenerate: false,
        };
        let t = construct_named_special(SpecialId::S2Star, &req).unwrap();
        assert_eq!(t.at(m, 0), m);
        assert_eq!(t.at(0, m), m);
        assert_eq!(t.at(m, e), top);
        assert_eq!(t.at(e, a), a);
        assert!(t.is_tconorm().unwrap().all_pass());
    }
}
