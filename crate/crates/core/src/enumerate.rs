//! Brute-force machinery: enumerate small bounded lattices (up to
//! isomorphism), enumerate uninorms on subintervals, enumerate closure and
//! interior operators, and run both directions of every extension-condition
//! claim over the whole population, hunting for counterexamples.

use crate::binop::BinOpTable;
use crate::construct::{
    check_s1_conditions, check_s1star_conditions, check_t1_conditions, check_t1star_conditions,
    check_u1_conditions, check_u2_conditions, check_u3_conditions, check_u4_conditions, construct,
    construct_named_special, construct_s1, construct_s1star, construct_t1, construct_t1star,
    construct_u1, construct_u2, construct_u3, construct_u4, CheckOpts, ConstructionId, ExtCase,
    MixedFilter, ParallelWith, Request, SpecialId,
};
use crate::lattice::{Interval, Lattice};
use crate::unary::UnaryOpTable;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

/// Exhaustive closure/interior enumeration is feasible only on tiny carriers;
/// larger lattices fall back to the canonical families.
pub const EXHAUSTIVE_UNARY_MAX: usize = 4;

#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub max_elements: usize,
    pub max_uninorms_per_interval: usize,
    pub seed: u64,
    pub dedupe_isomorphic: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_elements: 6,
            max_uninorms_per_interval: 5000,
            seed: 0,
            dedupe_isomorphic: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
}

/// One instance on which a claim's two sides disagreed.
#[derive(Debug, Clone)]
pub struct IffCounterexample {
    pub claim: String,
    pub lattice: Arc<Lattice>,
    pub anchor: usize,
    pub neutral: usize,
    pub base: Option<BinOpTable>,
    pub unary: Option<UnaryOpTable>,
    pub conditions_hold: bool,
    pub table_passes: bool,
    pub detail: String,
}

/// Outcome of testing one claim over the enumerated population.
#[derive(Debug, Clone)]
pub struct IffResult {
    pub claim: String,
    pub instances: usize,
    pub confirmations: usize,
    pub counterexamples: Vec<IffCounterexample>,
    pub counterexample_count: usize,
    pub truncated: bool,
}

const COUNTEREXAMPLE_CAP: usize = 16;

impl IffResult {
    fn new(claim: &str) -> IffResult {
        IffResult {
            claim: claim.to_string(),
            instances: 0,
            confirmations: 0,
            counterexamples: Vec::new(),
            counterexample_count: 0,
            truncated: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }

    fn record(&mut self, ok: bool, make: impl FnOnce() -> IffCounterexample) {
        self.instances += 1;
        if ok {
            self.confirmations += 1;
        } else {
            self.counterexample_count += 1;
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.counterexamples.push(make());
            }
        }
    }
}

// --- lattice enumeration ---

/// All bounded lattices with 2..=max_elements elements, deduplicated up to
/// isomorphism when configured, in a deterministic order.
pub fn enumerate_lattices(cfg: &EnumConfig) -> Vec<Arc<Lattice>> {
    let mut out = Vec::new();
    for n in 2..=cfg.max_elements {
        for lat in lattices_of_size(n, cfg.dedupe_isomorphic) {
            out.push(Arc::new(lat));
        }
    }
    out
}

fn middle_labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// Enumerates bounded lattices on exactly `n` elements by assigning one of
/// three states (below, above, incomparable) to every unordered pair of
/// middle elements, filtering for transitivity and the lattice property.
fn lattices_of_size(n: usize, dedupe: bool) -> Vec<Lattice> {
    assert!(n >= 2, "bounded lattices need at least two elements");
    let m = n - 2;
    let mids = middle_labels(m);
    let labels: Vec<&str> = std::iter::once("0")
        .chain(mids.iter().map(|s| s.as_str()))
        .chain(std::iter::once("1"))
        .collect();
    let bottom = 0usize;
    let top = n - 1;
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| ((i + 1)..=m).map(move |j| (i, j)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);

    let mut seen = BTreeSet::new();
    let mut plain = Vec::new();
    for code in 0..total {
        let mut rel = vec![0u64; n]; // strict middle relation, rel[i] bit j <=> i < j
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => rel[i] |= 1 << j,
                2 => rel[j] |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        // Transitivity among middles; bottom/top cannot break it.
        let mut transitive = true;
        'outer: for i in 1..=m {
            let mut rest = rel[i];
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rel[j] & !rel[i] != 0 {
                    transitive = false;
                    break 'outer;
                }
            }
        }
        if !transitive {
            continue;
        }
        let full = (1u64 << n) - 1;
        let mut rows = vec![0u64; n];
        rows[bottom] = full;
        rows[top] = 1 << top;
        for i in 1..=m {
            rows[i] = (1 << i) | (1 << top) | rel[i];
        }
        if Lattice::from_leq("candidate", &labels, &rows).is_err() {
            continue;
        }
        if dedupe {
            seen.insert(canonical_rows(&rows, n));
        } else {
            let name = format!("n{n}i{}", plain.len());
            plain.push(Lattice::from_leq(&name, &labels, &rows).expect("already validated"));
        }
    }
    if !dedupe {
        return plain;
    }
    seen.into_iter()
        .enumerate()
        .map(|(k, rows)| {
            let name = format!("n{n}i{k}");
            Lattice::from_leq(&name, &labels, &rows).expect("canonical rows stay a lattice")
        })
        .collect()
}

/// Lexicographically minimal row vector over all permutations of the middle
/// elements (bottom and top stay fixed).
fn canonical_rows(rows: &[u64], n: usize) -> Vec<u64> {
    let m = n - 2;
    let mut perm: Vec<usize> = (1..=m).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut map: Vec<usize> = (0..n).collect();
        for (slot, &target) in p.iter().enumerate() {
            map[slot + 1] = target;
        }
        let mut out = vec![0u64; n];
        for i in 0..n {
            let mut bits = rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out[map[i]] |= 1 << map[j];
            }
        }
        if best.as_ref().map_or(true, |b| out < *b) {
            best = Some(out);
        }
    });
    best.expect("at least the identity permutation")
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

// --- uninorm enumeration ---

/// All uninorms on `iv` with neutral `e`, truncated at the configured cap.
/// Returns the tables and whether the search was cut short.
pub fn enumerate_uninorms(
    lat: &Arc<Lattice>,
    iv: &Interval,
    e: usize,
    cfg: &EnumConfig,
) -> (Vec<BinOpTable>, bool) {
    assert!(iv.contains(e), "neutral must lie in the interval");
    let carrier = iv.members.clone();
    let k = carrier.len();
    let pos_of: Vec<usize> = {
        let mut p = vec![usize::MAX; lat.len()];
        for (i, &c) in carrier.iter().enumerate() {
            p[c] = i;
        }
        p
    };
    // Fill order: linear extension so monotonicity bounds bite early.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (lat.downs_mask(carrier[p]).count_ones(), p));
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for a in 0..k {
        for b in a..k {
            let (x, y) = (carrier[order[a]], carrier[order[b]]);
            if x == e || y == e {
                continue;
            }
            cells.push((order[a], order[b]));
        }
    }

    let mut values: Vec<Option<usize>> = vec![None; k * k];
    let ep = pos_of[e];
    for p in 0..k {
        values[ep * k + p] = Some(carrier[p]);
        values[p * k + ep] = Some(carrier[p]);
    }

    let mut found = Vec::new();
    let mut truncated = false;
    search_uninorms(
        lat,
        &carrier,
        &pos_of,
        e,
        &cells,
        0,
        &mut values,
        &mut found,
        cfg.max_uninorms_per_interval,
        &mut truncated,
    );
    (found, truncated)
}

#[allow(clippy::too_many_arguments)]
fn search_uninorms(
    lat: &Arc<Lattice>,
    carrier: &[usize],
    pos_of: &[usize],
    e: usize,
    cells: &[(usize, usize)],
    depth: usize,
    values: &mut Vec<Option<usize>>,
    found: &mut Vec<BinOpTable>,
    cap: usize,
    truncated: &mut bool,
) {
    if found.len() >= cap {
        *truncated = true;
        return;
    }
    let k = carrier.len();
    if depth == cells.len() {
        let vals: Vec<usize> = values.iter().map(|v| v.expect("complete")).collect();
        let table = BinOpTable::new(
            &format!("u{}", found.len()),
            lat.clone(),
            carrier.to_vec(),
            vals,
            Some(e),
        )
        .expect("enumerated table is well formed");
        if table
            .is_uninorm(e)
            .map(|r| r.all_pass())
            .unwrap_or(false)
        {
            found.push(table);
        }
        return;
    }
    let (pi, pj) = cells[depth];
    let (x, y) = (carrier[pi], carrier[pj]);
    for &v in carrier {
        if !fits_monotone(lat, carrier, values, k, x, y, v)
            || !fits_assoc(carrier, pos_of, values, k, pi, pj, v)
        {
            continue;
        }
        values[pi * k + pj] = Some(v);
        values[pj * k + pi] = Some(v);
        search_uninorms(
            lat, carrier, pos_of, e, cells, depth + 1, values, found, cap, truncated,
        );
        values[pi * k + pj] = None;
        values[pj * k + pi] = None;
        if *truncated {
            return;
        }
    }
}

/// Candidate `v` for cell `(x, y)` must sit between every already filled
/// pointwise-smaller and pointwise-larger cell.
fn fits_monotone(
    lat: &Lattice,
    carrier: &[usize],
    values: &[Option<usize>],
    k: usize,
    x: usize,
    y: usize,
    v: usize,
) -> bool {
    for (pi, &cx) in carrier.iter().enumerate() {
        for (pj, &cy) in carrier.iter().enumerate() {
            let Some(w) = values[pi * k + pj] else {
                continue;
            };
            if lat.leq(cx, x) && lat.leq(cy, y) && !lat.leq(w, v) {
                return false;
            }
            if lat.leq(x, cx) && lat.leq(y, cy) && !lat.leq(v, w) {
                return false;
            }
        }
    }
    true
}

/// Associativity on every triple whose needed products are all known once
/// `(x, y) = v` is placed. `values` must not yet contain the candidate; the
/// lookup treats the candidate cell specially.
fn fits_assoc(
    carrier: &[usize],
    pos_of: &[usize],
    values: &[Option<usize>],
    k: usize,
    pi: usize,
    pj: usize,
    v: usize,
) -> bool {
    let get = |a: usize, b: usize| -> Option<usize> {
        let (pa, pb) = (pos_of[a], pos_of[b]);
        if pa == usize::MAX || pb == usize::MAX {
            return None;
        }
        if (pa, pb) == (pi, pj) || (pa, pb) == (pj, pi) {
            return Some(v);
        }
        values[pa * k + pb]
    };
    for &a in carrier {
        for &b in carrier {
            for &c in carrier {
                let Some(ab) = get(a, b) else { continue };
                let Some(bc) = get(b, c) else { continue };
                let Some(l) = get(a, bc) else { continue };
                let Some(r) = get(ab, c) else { continue };
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

// --- unary enumeration ---

/// All closure operators when the lattice is small enough for brute force,
/// otherwise the canonical family: identity plus `x -> x v a` for each `a`.
pub fn enumerate_closures(lat: &Arc<Lattice>) -> Vec<UnaryOpTable> {
    enumerate_unary(lat, true)
}

/// Dual of [`enumerate_closures`].
pub fn enumerate_interiors(lat: &Arc<Lattice>) -> Vec<UnaryOpTable> {
    enumerate_unary(lat, false)
}

fn enumerate_unary(lat: &Arc<Lattice>, closure: bool) -> Vec<UnaryOpTable> {
    let n = lat.len();
    let mut maps: BTreeSet<Vec<usize>> = BTreeSet::new();
    if n <= EXHAUSTIVE_UNARY_MAX {
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mask = if closure {
                    lat.ups_mask(x)
                } else {
                    lat.downs_mask(x)
                };
                (0..n).filter(|&y| mask & (1 << y) != 0).collect()
            })
            .collect();
        let mut map = vec![0usize; n];
        brute_unary(lat, closure, &candidates, 0, &mut map, &mut maps);
    } else {
        maps.insert((0..n).collect());
        for a in 0..n {
            let map: Vec<usize> = (0..n)
                .map(|x| if closure { lat.join(x, a) } else { lat.meet(x, a) })
                .collect();
            maps.insert(map);
        }
    }
    maps.into_iter()
        .enumerate()
        .map(|(i, map)| {
            UnaryOpTable::new(&format!("{}{}", if closure { "cl" } else { "int" }, i), lat.clone(), map)
                .expect("enumerated map is total")
        })
        .collect()
}

fn brute_unary(
    lat: &Arc<Lattice>,
    closure: bool,
    candidates: &[Vec<usize>],
    x: usize,
    map: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if x == lat.len() {
        let table = UnaryOpTable::new("probe", lat.clone(), map.clone()).expect("total map");
        let ok = if closure {
            table.is_closure().all_pass()
        } else {
            table.is_interior().all_pass()
        };
        if ok {
            out.insert(map.clone());
        }
        return;
    }
    for &v in &candidates[x] {
        map[x] = v;
        brute_unary(lat, closure, candidates, x + 1, map, out);
    }
}

// --- population helpers ---

fn interior_elements(lat: &Lattice) -> Vec<usize> {
    (0..lat.len())
        .filter(|&x| x != lat.bottom() && x != lat.top())
        .collect()
}

fn members_of(lat: &Lattice, mask: u64) -> Vec<usize> {
    (0..lat.len()).filter(|&i| mask & (1 << i) != 0).collect()
}

struct LowerInstance {
    lat: Arc<Lattice>,
    anchor: usize,
    neutral: usize,
    base: BinOpTable,
}

/// Every (lattice, interior anchor a, neutral e in [0,a], uninorm on [0,a])
/// instance; `neutral_filter` restricts e when given.
fn lower_instances(
    cfg: &EnumConfig,
    neutral_filter: Option<NeutralFilter>,
    truncated: &mut bool,
    mut visit: impl FnMut(LowerInstance),
) {
    for lat in enumerate_lattices(cfg) {
        for a in interior_elements(&lat) {
            let iv = lat.interval(lat.bottom(), a).expect("downset interval");
            for e in members_of(&lat, iv.mask()) {
                match neutral_filter {
                    Some(NeutralFilter::Bottom) if e != lat.bottom() => continue,
                    Some(NeutralFilter::Anchor) if e != a => continue,
                    _ => {}
                }
                let (bases, cut) = enumerate_uninorms(&lat, &iv, e, cfg);
                *truncated |= cut;
                for base in bases {
                    visit(LowerInstance {
                        lat: lat.clone(),
                        anchor: a,
                        neutral: e,
                        base,
                    });
                }
            }
        }
    }
}

struct UpperInstance {
    lat: Arc<Lattice>,
    anchor: usize,
    neutral: usize,
    base: BinOpTable,
}

fn upper_instances(
    cfg: &EnumConfig,
    neutral_filter: Option<NeutralFilter>,
    truncated: &mut bool,
    mut visit: impl FnMut(UpperInstance),
) {
    for lat in enumerate_lattices(cfg) {
        for b in interior_elements(&lat) {
            let iv = lat.interval(b, lat.top()).expect("upset interval");
            for e in members_of(&lat, iv.mask()) {
                match neutral_filter {
                    Some(NeutralFilter::Bottom) if e != lat.top() => continue,
                    Some(NeutralFilter::Anchor) if e != b => continue,
                    _ => {}
                }
                let (bases, cut) = enumerate_uninorms(&lat, &iv, e, cfg);
                *truncated |= cut;
                for base in bases {
                    visit(UpperInstance {
                        lat: lat.clone(),
                        anchor: b,
                        neutral: e,
                        base,
                    });
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum NeutralFilter {
    /// t-conorm populations (lower family) / t-norm populations (upper: top).
    Bottom,
    /// neutral pinned to the anchor.
    Anchor,
}

fn lower_request(inst: &LowerInstance, unary: Option<UnaryOpTable>) -> Request {
    Request {
        lat: inst.lat.clone(),
        anchor: inst.anchor,
        base: inst.base.clone(),
        neutral: inst.neutral,
        unary,
        allow_degenerate: false,
    }
}

fn upper_request(inst: &UpperInstance, unary: Option<UnaryOpTable>) -> Request {
    Request {
        lat: inst.lat.clone(),
        anchor: inst.anchor,
        base: inst.base.clone(),
        neutral: inst.neutral,
        unary,
        allow_degenerate: false,
    }
}

fn uninorm_passes(table: &BinOpTable, e: usize) -> bool {
    table.is_uninorm(e).map(|r| r.all_pass()).unwrap_or(false)
}

// --- the iff suite ---

/// Claims expected to hold on every instance; `suite all` runs these.
pub const STANDARD_CLAIMS: [&str; 23] = [
    "u1",
    "u2",
    "s1",
    "t1",
    "s1star",
    "t1star",
    "s1star-implies-s1",
    "u1-bottom-neutral",
    "u3-1i",
    "u3-1ii",
    "u3-2i",
    "u3-2ii",
    "u4-1i",
    "u4-1ii",
    "u4-2i",
    "u4-2ii",
    "u1-profile",
    "u2-profile",
    "u3-profile",
    "u4-profile",
    "specials",
    "duality",
    "partition",
];

/// Alternate readings of the printed side conditions, kept for comparison;
/// these are allowed to produce counterexamples.
pub const ALTERNATE_CLAIMS: [&str; 4] = [
    "u1-anchor-filter",
    "u2-anchor-filter",
    "u3-2ii-anchor-parallel",
    "u4-2ii-anchor-parallel",
];

/// Runs one claim over the enumerated population and reports agreement.
pub fn run_iff_suite(claim: &str, cfg: &EnumConfig) -> Result<IffResult, SuiteError> {
    match claim {
        "u1" => Ok(lower_iff_claim(claim, cfg, CheckOpts::default())),
        "u1-anchor-filter" => Ok(lower_iff_claim(
            claim,
            cfg,
            CheckOpts {
                mixed_filter: MixedFilter::AgainstAnchor,
                ..CheckOpts::default()
            },
        )),
        "u2" => Ok(upper_iff_claim(claim, cfg, CheckOpts::default())),
        "u2-anchor-filter" => Ok(upper_iff_claim(
            claim,
            cfg,
            CheckOpts {
                mixed_filter: MixedFilter::AgainstAnchor,
                ..CheckOpts::default()
            },
        )),
        "s1" => Ok(s1_claim(cfg)),
        "t1" => Ok(t1_claim(cfg)),
        "s1star" => Ok(s1star_claim(cfg)),
        "t1star" => Ok(t1star_claim(cfg)),
        "s1star-implies-s1" => Ok(s1star_implies_s1(cfg)),
        "u1-bottom-neutral" => Ok(bottom_neutral_claim(cfg)),
        "u3-1i" | "u3-1ii" | "u3-2i" | "u3-2ii" => Ok(u3_claim(
            claim,
            cfg,
            case_of(claim),
            ParallelWith::NeutralSide,
        )),
        "u3-2ii-anchor-parallel" => {
            Ok(u3_claim(claim, cfg, ExtCase::C2ii, ParallelWith::AnchorSide))
        }
        "u4-1i" | "u4-1ii" | "u4-2i" | "u4-2ii" => Ok(u4_claim(
            claim,
            cfg,
            case_of(claim),
            ParallelWith::NeutralSide,
        )),
        "u4-2ii-anchor-parallel" => {
            Ok(u4_claim(claim, cfg, ExtCase::C2ii, ParallelWith::AnchorSide))
        }
        "u1-profile" => Ok(u1_profile_claim(cfg)),
        "u2-profile" => Ok(u2_profile_claim(cfg)),
        "u3-profile" => Ok(u3_profile_claim(cfg)),
        "u4-profile" => Ok(u4_profile_claim(cfg)),
        "specials" => Ok(specials_claim(cfg)),
        "duality" => Ok(duality_claim(cfg, 500)),
        "partition" => Ok(partition_claim(cfg, 200)),
        other => Err(SuiteError::UnknownClaim(other.to_string())),
    }
}

fn case_of(claim: &str) -> ExtCase {
    ExtCase::parse(claim.rsplit('-').next().expect("dashed claim")).expect("known case suffix")
}

fn lower_iff_claim(claim: &str, cfg: &EnumConfig, opts: CheckOpts) -> IffResult {
    let mut res = IffResult::new(claim);
    let mut truncated = false;
    lower_instances(cfg, None, &mut truncated, |inst| {
        let req = lower_request(&inst, None);
        let cond = check_u1_conditions(&req, &opts)
            .expect("enumerated instance is a valid request")
            .conditions_hold();
        let table = construct_u1(&req).expect("valid request");
        let actual = uninorm_passes(&table, inst.neutral);
        res.record(cond == actual, || counterexample(claim, &inst.lat, &inst, None, cond, actual));
    });
    res.truncated = truncated;
    res
}

fn upper_iff_claim(claim: &str, cfg: &EnumConfig, opts: CheckOpts) -> IffResult {
    let mut res = IffResult::new(claim);
    let mut truncated = false;
    upper_instances(cfg, None, &mut truncated, |inst| {
        let req = upper_request(&inst, None);
        let cond = check_u2_conditions(&req, &opts)
            .expect("valid request")
            .conditions_hold();
        let table = construct_u2(&req).expect("valid request");
        let actual = uninorm_passes(&table, inst.neutral);
        res.record(cond == actual, || {
            upper_counterexample(claim, &inst, None, cond, actual)
        });
    });
    res.truncated = truncated;
    res
}

fn counterexample(
    claim: &str,
    lat: &Arc<Lattice>,
    inst: &LowerInstance,
    unary: Option<UnaryOpTable>,
    cond: bool,
    actual: bool,
) -> IffCounterexample {
    IffCounterexample {
        claim: claim.to_string(),
        lattice: lat.clone(),
        anchor: inst.anchor,
        neutral: inst.neutral,
        base: Some(inst.base.clone()),
        unary,
        conditions_hold: cond,
        table_passes: actual,
        detail: format!(
            "conditions {} but constructed table {}",
            if cond { "hold" } else { "fail" },
            if actual { "passes" } else { "fails" },
        ),
    }
}

fn upper_counterexample(
    claim: &str,
    inst: &UpperInstance,
    unary: Option<UnaryOpTable>,
    cond: bool,
    actual: bool,
) -> IffCounterexample {
    IffCounterexample {
        claim: claim.to_string(),
        lattice: inst.lat.clone(),
        anchor: inst.anchor,
        neutral: inst.neutral,
        base: Some(inst.base.clone()),
        unary,
        conditions_hold: cond,
        table_passes: actual,
        detail: format!(
            "conditions {} but constructed table {}",
            if cond { "hold" } else { "fail" },
            if actual { "passes" } else { "fails" },
        ),
    }
}

fn s1_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("s1");
    let mut truncated = false;
    lower_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let req = lower_request(&inst, None);
        let cond = check_s1_conditions(&req, &CheckOpts::default())
            .expect("valid request")
            .conditions_hold();
        let table = construct_s1(&req).expect("valid request");
        let actual = table.is_tconorm().map(|r| r.all_pass()).unwrap_or(false);
        res.record(cond == actual, || counterexample("s1", &inst.lat, &inst, None, cond, actual));
    });
    res.truncated = truncated;
    res
}

fn t1_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("t1");
    let mut truncated = false;
    upper_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let req = upper_request(&inst, None);
        let cond = check_t1_conditions(&req, &CheckOpts::default())
            .expect("valid request")
            .conditions_hold();
        let table = construct_t1(&req).expect("valid request");
        let actual = table.is_tnorm().map(|r| r.all_pass()).unwrap_or(false);
        res.record(cond == actual, || upper_counterexample("t1", &inst, None, cond, actual));
    });
    res.truncated = truncated;
    res
}

/// The order-only condition quantifies over every base t-conorm: condition
/// holds iff every extension is a t-conorm.
fn s1star_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("s1star");
    let mut truncated = false;
    for lat in enumerate_lattices(cfg) {
        for a in interior_elements(&lat) {
            let iv = lat.interval(lat.bottom(), a).expect("downset interval");
            let (bases, cut) = enumerate_uninorms(&lat, &iv, lat.bottom(), cfg);
            truncated |= cut;
            if bases.is_empty() {
                continue;
            }
            let probe = lower_request(
                &LowerInstance {
                    lat: lat.clone(),
                    anchor: a,
                    neutral: lat.bottom(),
                    base: bases[0].clone(),
                },
                None,
            );
            let cond = check_s1star_conditions(&probe, &CheckOpts::default())
                .expect("valid request")
                .conditions_hold();
            let mut failing = None;
            for base in &bases {
                let req = Request {
                    base: base.clone(),
                    ..probe.clone()
                };
                let table = construct_s1star(&req).expect("valid request");
                if !table.is_tconorm().map(|r| r.all_pass()).unwrap_or(false) {
                    failing = Some(base.clone());
                    break;
                }
            }
            let all_pass = failing.is_none();
            res.record(cond == all_pass, || IffCounterexample {
                claim: "s1star".into(),
                lattice: lat.clone(),
                anchor: a,
                neutral: lat.bottom(),
                base: failing.or_else(|| Some(bases[0].clone())),
                unary: None,
                conditions_hold: cond,
                table_passes: all_pass,
                detail: "order condition vs universally quantified extension disagree".into(),
            });
        }
    }
    res.truncated = truncated;
    res
}

fn t1star_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("t1star");
    let mut truncated = false;
    for lat in enumerate_lattices(cfg) {
        for b in interior_elements(&lat) {
            let iv = lat.interval(b, lat.top()).expect("upset interval");
            let (bases, cut) = enumerate_uninorms(&lat, &iv, lat.top(), cfg);
            truncated |= cut;
            if bases.is_empty() {
                continue;
            }
            let probe = upper_request(
                &UpperInstance {
                    lat: lat.clone(),
                    anchor: b,
                    neutral: lat.top(),
                    base: bases[0].clone(),
                },
                None,
            );
            let cond = check_t1star_conditions(&probe, &CheckOpts::default())
                .expect("valid request")
                .conditions_hold();
            let mut failing = None;
            for base in &bases {
                let req = Request {
                    base: base.clone(),
                    ..probe.clone()
                };
                let table = construct_t1star(&req).expect("valid request");
                if !table.is_tnorm().map(|r| r.all_pass()).unwrap_or(false) {
                    failing = Some(base.clone());
                    break;
                }
            }
            let all_pass = failing.is_none();
            res.record(cond == all_pass, || IffCounterexample {
                claim: "t1star".into(),
                lattice: lat.clone(),
                anchor: b,
                neutral: lat.top(),
                base: failing.or_else(|| Some(bases[0].clone())),
                unary: None,
                conditions_hold: cond,
                table_passes: all_pass,
                detail: "order condition vs universally quantified extension disagree".into(),
            });
        }
    }
    res.truncated = truncated;
    res
}

/// Where the order-only condition holds, the table-aware condition holds for
/// every base t-conorm.
fn s1star_implies_s1(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("s1star-implies-s1");
    let mut truncated = false;
    lower_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let req = lower_request(&inst, None);
        let strong = check_s1star_conditions(&req, &CheckOpts::default())
            .expect("valid request")
            .conditions_hold();
        if !strong {
            return;
        }
        let weak = check_s1_conditions(&req, &CheckOpts::default())
            .expect("valid request")
            .conditions_hold();
        res.record(weak, || counterexample("s1star-implies-s1", &inst.lat, &inst, None, strong, weak));
    });
    res.truncated = truncated;
    res
}

/// With the neutral at the bottom, the fourth mixed condition always holds.
fn bottom_neutral_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("u1-bottom-neutral");
    let mut truncated = false;
    lower_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let req = lower_request(&inst, None);
        let report = check_u1_conditions(&req, &CheckOpts::default()).expect("valid request");
        let holds = report.item("cond-4").expect("cond-4 present").holds;
        res.record(holds, || counterexample("u1-bottom-neutral", &inst.lat, &inst, None, holds, true));
    });
    res.truncated = truncated;
    res
}

fn u3_claim(claim: &str, cfg: &EnumConfig, case: ExtCase, parallel: ParallelWith) -> IffResult {
    let mut res = IffResult::new(claim);
    let mut truncated = false;
    let opts = CheckOpts {
        parallel_with: parallel,
        ..CheckOpts::default()
    };
    lower_instances(cfg, None, &mut truncated, |inst| {
        for cl in enumerate_closures(&inst.lat) {
            let req = lower_request(&inst, Some(cl.clone()));
            let report = check_u3_conditions(&req, case, &opts).expect("valid request");
            if !report.hypotheses_hold() {
                continue;
            }
            let cond = report.conditions_hold();
            let table = construct_u3(&req).expect("valid request");
            let actual = uninorm_passes(&table, inst.neutral);
            let ok = match case {
                ExtCase::C2i => !cond || actual,
                _ => cond == actual,
            };
            res.record(ok, || counterexample(claim, &inst.lat, &inst, Some(cl.clone()), cond, actual));
        }
    });
    res.truncated = truncated;
    res
}

fn u4_claim(claim: &str, cfg: &EnumConfig, case: ExtCase, parallel: ParallelWith) -> IffResult {
    let mut res = IffResult::new(claim);
    let mut truncated = false;
    let opts = CheckOpts {
        parallel_with: parallel,
        ..CheckOpts::default()
    };
    upper_instances(cfg, None, &mut truncated, |inst| {
        for int in enumerate_interiors(&inst.lat) {
            let req = upper_request(&inst, Some(int.clone()));
            let report = check_u4_conditions(&req, case, &opts).expect("valid request");
            if !report.hypotheses_hold() {
                continue;
            }
            let cond = report.conditions_hold();
            let table = construct_u4(&req).expect("valid request");
            let actual = uninorm_passes(&table, inst.neutral);
            let ok = match case {
                ExtCase::C2i => !cond || actual,
                _ => cond == actual,
            };
            res.record(ok, || upper_counterexample(claim, &inst, Some(int.clone()), cond, actual));
        }
    });
    res.truncated = truncated;
    res
}

fn u1_profile_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("u1-profile");
    let mut truncated = false;
    lower_instances(cfg, None, &mut truncated, |inst| {
        let req = lower_request(&inst, None);
        let table = construct_u1(&req).expect("valid request");
        if !uninorm_passes(&table, inst.neutral) {
            return;
        }
        let got = table.classify(inst.neutral).expect("verified uninorm");
        let base = inst.base.classify(inst.neutral).expect("base is a uninorm");
        let mut bad = Vec::new();
        if !got.disjunctive {
            bad.push("extension is not disjunctive");
        }
        if got.idempotent != base.idempotent {
            bad.push("idempotence does not transfer");
        }
        if got.in_umax_star != base.in_umax_star {
            bad.push("upper class membership does not transfer");
        }
        res.record(bad.is_empty(), || {
            let mut c = counterexample("u1-profile", &inst.lat, &inst, None, true, true);
            c.detail = bad.join("; ");
            c
        });
    });
    res.truncated = truncated;
    res
}

fn u2_profile_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("u2-profile");
    let mut truncated = false;
    upper_instances(cfg, None, &mut truncated, |inst| {
        let req = upper_request(&inst, None);
        let table = construct_u2(&req).expect("valid request");
        if !uninorm_passes(&table, inst.neutral) {
            return;
        }
        let got = table.classify(inst.neutral).expect("verified uninorm");
        let base = inst.base.classify(inst.neutral).expect("base is a uninorm");
        let mut bad = Vec::new();
        if !got.conjunctive {
            bad.push("extension is not conjunctive");
        }
        if got.idempotent != base.idempotent {
            bad.push("idempotence does not transfer");
        }
        if got.in_umin_star != base.in_umin_star {
            bad.push("lower class membership does not transfer");
        }
        res.record(bad.is_empty(), || {
            let mut c = upper_counterexample("u2-profile", &inst, None, true, true);
            c.detail = bad.join("; ");
            c
        });
    });
    res.truncated = truncated;
    res
}

fn u3_profile_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("u3-profile");
    let mut truncated = false;
    lower_instances(cfg, None, &mut truncated, |inst| {
        for cl in enumerate_closures(&inst.lat) {
            let req = lower_request(&inst, Some(cl.clone()));
            let table = construct_u3(&req).expect("valid request");
            if !uninorm_passes(&table, inst.neutral) {
                continue;
            }
            let got = table.classify(inst.neutral).expect("verified uninorm");
            let base = inst.base.classify(inst.neutral).expect("base is a uninorm");
            let strictly_above = inst.lat.ups_mask(inst.anchor)
                & !(1 << inst.anchor)
                & !(1 << inst.lat.top());
            let mut bad = Vec::new();
            if !got.disjunctive {
                bad.push("extension is not disjunctive");
            }
            if got.in_umax_star != base.in_umax_star {
                bad.push("upper class membership does not transfer");
            }
            if strictly_above != 0 && got.idempotent {
                bad.push("idempotent despite elements strictly between anchor and top");
            }
            res.record(bad.is_empty(), || {
                let mut c = counterexample("u3-profile", &inst.lat, &inst, Some(cl.clone()), true, true);
                c.detail = bad.join("; ");
                c
            });
        }
    });
    res.truncated = truncated;
    res
}

fn u4_profile_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("u4-profile");
    let mut truncated = false;
    upper_instances(cfg, None, &mut truncated, |inst| {
        for int in enumerate_interiors(&inst.lat) {
            let req = upper_request(&inst, Some(int.clone()));
            let table = construct_u4(&req).expect("valid request");
            if !uninorm_passes(&table, inst.neutral) {
                continue;
            }
            let got = table.classify(inst.neutral).expect("verified uninorm");
            let base = inst.base.classify(inst.neutral).expect("base is a uninorm");
            let strictly_below = inst.lat.downs_mask(inst.anchor)
                & !(1 << inst.anchor)
                & !(1 << inst.lat.bottom());
            let mut bad = Vec::new();
            if !got.conjunctive {
                bad.push("extension is not conjunctive");
            }
            if got.in_umin_star != base.in_umin_star {
                bad.push("lower class membership does not transfer");
            }
            if strictly_below != 0 && got.idempotent {
                bad.push("idempotent despite elements strictly between bottom and anchor");
            }
            res.record(bad.is_empty(), || {
                let mut c = upper_counterexample("u4-profile", &inst, Some(int.clone()), true, true);
                c.detail = bad.join("; ");
                c
            });
        }
    });
    res.truncated = truncated;
    res
}

/// Every named special-purpose table equals its general construction at the
/// corresponding degenerate parameter.
fn specials_claim(cfg: &EnumConfig) -> IffResult {
    let mut res = IffResult::new("specials");
    let mut truncated = false;

    // Neutral-anchored lower family: anchor = e, base a t-norm on [0, e].
    lower_instances(cfg, Some(NeutralFilter::Anchor), &mut truncated, |inst| {
        let lat = &inst.lat;
        let plain = lower_request(&inst, None);
        let pairs: Vec<(SpecialId, Result<BinOpTable, _>, Result<BinOpTable, _>)> = vec![
            (
                SpecialId::Ut1,
                construct_named_special(SpecialId::Ut1, &plain),
                construct(ConstructionId::U1, &plain),
            ),
            (
                SpecialId::Ut2,
                construct_named_special(SpecialId::Ut2, &plain),
                construct(ConstructionId::U31, &plain),
            ),
            (
                SpecialId::Ut3,
                construct_named_special(SpecialId::Ut3, &plain),
                construct(ConstructionId::U32, &plain),
            ),
        ];
        for (id_, a, b) in pairs {
            check_special_pair(&mut res, &inst, id_, a, b, None);
        }
        for cl in enumerate_closures(lat) {
            let with_cl = lower_request(&inst, Some(cl.clone()));
            check_special_pair(
                &mut res,
                &inst,
                SpecialId::Ucl,
                construct_named_special(SpecialId::Ucl, &with_cl),
                construct(ConstructionId::U3, &with_cl),
                Some(cl),
            );
        }
    });

    // Bottom-neutral lower family: S2* vs the closure extension at e = 0.
    lower_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let id = UnaryOpTable::identity_op(inst.lat.clone());
        let plain = lower_request(&inst, None);
        let with_id = lower_request(&inst, Some(id.clone()));
        check_special_pair(
            &mut res,
            &inst,
            SpecialId::S2Star,
            construct_named_special(SpecialId::S2Star, &plain),
            construct(ConstructionId::U3, &with_id),
            Some(id),
        );
        // S1 vs the lower uninorm extension with a bottom neutral.
        let s1 = construct_s1(&plain);
        let u1 = construct_u1(&plain);
        check_special_eq(&mut res, &inst, "s1", s1, u1, None);
    });

    // Neutral-anchored upper family.
    upper_instances(cfg, Some(NeutralFilter::Anchor), &mut truncated, |inst| {
        let plain = upper_request(&inst, None);
        let pairs: Vec<(SpecialId, Result<BinOpTable, _>, Result<BinOpTable, _>)> = vec![
            (
                SpecialId::Us1,
                construct_named_special(SpecialId::Us1, &plain),
                construct(ConstructionId::U2, &plain),
            ),
            (
                SpecialId::Us2,
                construct_named_special(SpecialId::Us2, &plain),
                construct(ConstructionId::U41, &plain),
            ),
            (
                SpecialId::Us3,
                construct_named_special(SpecialId::Us3, &plain),
                construct(ConstructionId::U42, &plain),
            ),
        ];
        for (id_, a, b) in pairs {
            check_special_pair_u(&mut res, &inst, id_, a, b, None);
        }
        for int in enumerate_interiors(&inst.lat) {
            let with_int = upper_request(&inst, Some(int.clone()));
            check_special_pair_u(
                &mut res,
                &inst,
                SpecialId::Uint,
                construct_named_special(SpecialId::Uint, &with_int),
                construct(ConstructionId::U4, &with_int),
                Some(int),
            );
        }
    });

    // Top-neutral upper family: T2* vs the interior extension at e = 1.
    upper_instances(cfg, Some(NeutralFilter::Bottom), &mut truncated, |inst| {
        let id = UnaryOpTable::identity_op(inst.lat.clone());
        let plain = upper_request(&inst, None);
        let with_id = upper_request(&inst, Some(id.clone()));
        check_special_pair_u(
            &mut res,
            &inst,
            SpecialId::T2Star,
            construct_named_special(SpecialId::T2Star, &plain),
            construct(ConstructionId::U4, &with_id),
            Some(id),
        );
    });

    res.truncated = truncated;
    res
}

fn check_special_pair(
    res: &mut IffResult,
    inst: &LowerInstance,
    id: SpecialId,
    special: Result<BinOpTable, crate::construct::ConstructError>,
    general: Result<BinOpTable, crate::construct::ConstructError>,
    unary: Option<UnaryOpTable>,
) {
    check_special_eq(res, inst, id.as_str(), special, general, unary);
}

fn check_special_eq(
    res: &mut IffResult,
    inst: &LowerInstance,
    label: &str,
    special: Result<BinOpTable, crate::construct::ConstructError>,
    general: Result<BinOpTable, crate::construct::ConstructError>,
    unary: Option<UnaryOpTable>,
) {
    let ok = match (&special, &general) {
        (Ok(s), Ok(g)) => s.table_eq(g),
        _ => false,
    };
    let label = label.to_string();
    res.record(ok, || {
        let mut c = counterexample("specials", &inst.lat, inst, unary, true, true);
        c.detail = format!("{label} differs from its general construction");
        c
    });
}

fn check_special_pair_u(
    res: &mut IffResult,
    inst: &UpperInstance,
    id: SpecialId,
    special: Result<BinOpTable, crate::construct::ConstructError>,
    general: Result<BinOpTable, crate::construct::ConstructError>,
    unary: Option<UnaryOpTable>,
) {
    let ok = match (&special, &general) {
        (Ok(s), Ok(g)) => s.table_eq(g),
        _ => false,
    };
    res.record(ok, || {
        let mut c = upper_counterexample("specials", inst, unary, true, true);
        c.detail = format!("{} differs from its general construction", id.as_str());
        c
    });
}

/// Seeded random instances: the upper constructions must equal the dual
/// transport of the lower ones on the dual lattice, cell for cell.
fn duality_claim(cfg: &EnumConfig, samples: usize) -> IffResult {
    let mut res = IffResult::new("duality");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool: Vec<Arc<Lattice>> = enumerate_lattices(cfg)
        .into_iter()
        .filter(|l| !interior_elements(l).is_empty())
        .collect();
    if pool.is_empty() {
        return res;
    }
    let mut done = 0;
    while done < samples {
        let lat = pool[rng.gen_range(0..pool.len())].clone();
        let anchors = interior_elements(&lat);
        let a = anchors[rng.gen_range(0..anchors.len())];
        let iv = lat.interval(lat.bottom(), a).expect("downset interval");
        let es = members_of(&lat, iv.mask());
        let e = es[rng.gen_range(0..es.len())];
        let (bases, _) = enumerate_uninorms(&lat, &iv, e, cfg);
        if bases.is_empty() {
            continue;
        }
        let base = bases[rng.gen_range(0..bases.len())].clone();
        let closures = enumerate_closures(&lat);
        let cl = closures[rng.gen_range(0..closures.len())].clone();
        done += 1;

        let dual = Arc::new(lat.dual());
        let dual_base = base.with_lattice(dual.clone()).expect("same labels");
        let dual_unary = cl.with_lattice(dual.clone()).expect("same labels");

        let lower = Request {
            lat: lat.clone(),
            anchor: a,
            base: base.clone(),
            neutral: e,
            unary: Some(cl.clone()),
            allow_degenerate: false,
        };
        let upper = Request {
            lat: dual.clone(),
            anchor: a,
            base: dual_base,
            neutral: e,
            unary: Some(dual_unary),
            allow_degenerate: false,
        };
        let u1 = construct_u1(&lower).expect("valid request");
        let u2 = construct_u2(&upper).expect("valid dual request");
        let u3 = construct_u3(&lower).expect("valid request");
        let u4 = construct_u4(&upper).expect("valid dual request");
        let ok = u2.table_eq(&u1) && u4.table_eq(&u3);
        res.record(ok, || IffCounterexample {
            claim: "duality".into(),
            lattice: lat.clone(),
            anchor: a,
            neutral: e,
            base: Some(base.clone()),
            unary: Some(cl.clone()),
            conditions_hold: u2.table_eq(&u1),
            table_passes: u4.table_eq(&u3),
            detail: "upper construction differs from dual transport of the lower one".into(),
        });
    }
    res
}

/// Seeded random commutative tables with random covering parts: the
/// partition-based associativity scan must agree with the naive one.
fn partition_claim(cfg: &EnumConfig, samples: usize) -> IffResult {
    let mut res = IffResult::new("partition");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let pool = enumerate_lattices(cfg);
    for _ in 0..samples {
        let lat = pool[rng.gen_range(0..pool.len())].clone();
        let n = lat.len();
        let carrier: Vec<usize> = (0..n).collect();
        let mut values = vec![0usize; n * n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(0..n);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        let table = BinOpTable::new("fuzz", lat.clone(), carrier, values, None)
            .expect("well formed");
        let parts_count = rng.gen_range(2..=4usize);
        let mut parts: Vec<Vec<usize>> = (0..parts_count)
            .map(|_| {
                let mut p: Vec<usize> =
                    (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if p.is_empty() {
                    p.push(rng.gen_range(0..n));
                }
                p
            })
            .collect();
        for x in 0..n {
            if !parts.iter().any(|p| p.contains(&x)) {
                let idx = rng.gen_range(0..parts.len());
                parts[idx].push(x);
            }
        }
        let naive = table.associativity().expect("closed table").passed();
        let by_parts = table
            .assoc_by_partition(&parts)
            .expect("covering parts")
            .passed();
        res.record(naive == by_parts, || IffCounterexample {
            claim: "partition".into(),
            lattice: lat.clone(),
            anchor: lat.bottom(),
            neutral: lat.bottom(),
            base: Some(table.clone()),
            unary: None,
            conditions_hold: by_parts,
            table_passes: naive,
            detail: "partition-based associativity disagrees with the naive scan".into(),
        });
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> EnumConfig {
        EnumConfig {
            max_elements: n,
            ..EnumConfig::default()
        }
    }

    #[test]
    fn lattice_counts_up_to_six() {
        let counts: Vec<usize> = (2..=6)
            .map(|n| lattices_of_size(n, true).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }

    #[test]
    fn every_enumerated_lattice_validates() {
        for lat in enumerate_lattices(&cfg(5)) {
            assert!(lat.len() >= 2);
            assert_eq!(lat.bottom(), 0);
            assert_eq!(lat.top(), lat.len() - 1);
        }
    }

    #[test]
    fn quotient_of_labeled_enumeration_matches_deduped() {
        for n in 2..=5 {
            let labeled = lattices_of_size(n, false);
            let mut canon = BTreeSet::new();
            for lat in &labeled {
                let rows: Vec<u64> = (0..lat.len()).map(|i| lat.ups_mask(i)).collect();
                canon.insert(canonical_rows(&rows, lat.len()));
            }
            assert_eq!(canon.len(), lattices_of_size(n, true).len());
        }
    }

    #[test]
    fn two_chain_has_one_uninorm_per_neutral() {
        let lat = Arc::new(Lattice::from_covers("c2", &["0", "1"], &[("0", "1")]).unwrap());
        let iv = lat.interval(0, 1).unwrap();
        let (with_top, t1) = enumerate_uninorms(&lat, &iv, 1, &cfg(6));
        let (with_bottom, t2) = enumerate_uninorms(&lat, &iv, 0, &cfg(6));
        assert!(!t1 && !t2);
        assert_eq!(with_top.len(), 1);
        assert_eq!(with_bottom.len(), 1);
        assert_eq!(with_top[0].at(0, 0), 0); // meet
        assert_eq!(with_bottom[0].at(1, 1), 1); // join
    }

    #[test]
    fn three_chain_matches_naive_oracle() {
        let lat = Arc::new(
            Lattice::from_covers("c3", &["0", "e", "1"], &[("0", "e"), ("e", "1")]).unwrap(),
        );
        let iv = lat.interval(0, 2).unwrap();
        let (fast, truncated) = enumerate_uninorms(&lat, &iv, 1, &cfg(6));
        assert!(!truncated);

        // Independent oracle: filter every one of the 3^9 raw tables.
        let mut naive = 0;
        let n = 3usize;
        for code in 0..n.pow(9) {
            let mut c = code;
            let mut values = vec![0usize; 9];
            for v in values.iter_mut() {
                *v = c % n;
                c /= n;
            }
            let table =
                BinOpTable::new("raw", lat.clone(), vec![0, 1, 2], values, None).unwrap();
            if table.is_uninorm(1).map(|r| r.all_pass()).unwrap_or(false) {
                naive += 1;
            }
        }
        assert_eq!(fast.len(), naive);
        assert_eq!(fast.len(), 2);
    }

    #[test]
    fn enumerated_uninorms_pass_their_own_check() {
        let lat = Arc::new(
            Lattice::from_covers(
                "d",
                &["0", "x", "y", "1"],
                &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
            )
            .unwrap(),
        );
        let iv = lat.interval(0, 3).unwrap();
        for e in 0..4 {
            let (tables, truncated) = enumerate_uninorms(&lat, &iv, e, &cfg(6));
            assert!(!truncated);
            for t in tables {
                assert!(t.is_uninorm(e).unwrap().all_pass());
            }
        }
    }

    #[test]
    fn closures_and_interiors_are_dual() {
        let lat = Arc::new(
            Lattice::from_covers(
                "d",
                &["0", "x", "y", "1"],
                &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
            )
            .unwrap(),
        );
        let dual = Arc::new(lat.dual());
        let cls = enumerate_closures(&lat);
        let ints = enumerate_interiors(&dual);
        assert_eq!(cls.len(), ints.len());
        for c in &cls {
            assert!(c.is_closure().all_pass());
        }
        let identity: Vec<usize> = (0..4).collect();
        assert!(cls.iter().any(|c| c.map() == identity.as_slice()));
    }

    #[test]
    fn suite_rejects_unknown_claims() {
        let err = run_iff_suite("nonsense", &cfg(3)).unwrap_err();
        assert_eq!(err, SuiteError::UnknownClaim("nonsense".into()));
    }

    #[test]
    fn small_iff_suites_confirm() {
        let cfg = cfg(4);
        for claim in ["u1", "u2", "s1", "t1", "s1star", "t1star", "u1-bottom-neutral"] {
            let res = run_iff_suite(claim, &cfg).unwrap();
            assert!(res.passed(), "{claim}: {:?}", res.counterexamples.first().map(|c| &c.detail));
            assert!(res.instances > 0, "{claim} tested nothing");
            assert!(!res.truncated);
        }
    }

    #[test]
    fn partition_samples_agree() {
        let res = run_iff_suite("partition", &cfg(4)).unwrap();
        assert!(res.passed());
        assert_eq!(res.instances, 200);
    }
}
