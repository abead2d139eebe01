//! Finite bounded lattices with dense order, join, and meet tables.
//!
//! Carriers are capped at 64 elements so each row of the order relation fits
//! in a `u64` bitset. Elements are addressed by index in declaration order;
//! labels are resolved once at the API boundary.

use std::collections::BTreeMap;
use thiserror::Error;

/// Hard cap on carrier size; order rows are stored as `u64` bitsets.
pub const MAX_ELEMENTS: usize = 64;

/// Validation and lookup errors for lattice construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover references unknown element `{0}`")]
    UnknownElementInCover(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a lattice at (`{x}`, `{y}`): {reason}")]
    NotALattice { x: String, y: String, reason: String },
    #[error("not bounded: {0}")]
    NotBounded(String),
    #[error("carrier has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooManyElements(usize),
    #[error("`{x}` and `{y}` are incomparable")]
    NotComparable { x: String, y: String },
}

/// A closed interval `[lo, hi]` of a lattice, with its member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub members: Vec<usize>,
    mask: u64,
}

impl Interval {
    /// Membership test by element index.
    pub fn contains(&self, x: usize) -> bool {
        self.mask & (1 << x) != 0
    }

    /// Members as a bitset over element indices.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True when the interval is a single element (`lo == hi`).
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A finite bounded lattice over named elements.
///
/// Equality compares carrier labels (in order) and the order relation, so two
/// lattices built from different but equivalent cover lists compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    /// `ups[i]` bit `j` set iff `i <= j`.
    ups: Vec<u64>,
    /// `downs[i]` bit `j` set iff `j <= i`.
    downs: Vec<u64>,
    join: Vec<u8>,
    meet: Vec<u8>,
    covers: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds a lattice from its cover relation (`lo` is covered by `hi`).
    ///
    /// Validation is eager: duplicate labels, unknown labels in covers,
    /// self-covers, cycles, missing bounds, and pairs without a unique least
    /// upper or greatest lower bound are all rejected here.
    pub fn from_covers(
        name: &str,
        labels: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Lattice, LatticeError> {
        let (labels, index) = Self::index_labels(labels)?;
        let n = labels.len();
        let mut adj = vec![0u64; n];
        for (lo, hi) in covers {
            let i = *index
                .get(*lo)
                .ok_or_else(|| LatticeError::UnknownElementInCover(lo.to_string()))?;
            let j = *index
                .get(*hi)
                .ok_or_else(|| LatticeError::UnknownElementInCover(hi.to_string()))?;
            if i == j {
                return Err(LatticeError::NotALattice {
                    x: labels[i].clone(),
                    y: labels[j].clone(),
                    reason: "element covers itself".into(),
                });
            }
            adj[i] |= 1 << j;
        }
        // Reflexive-transitive closure of the cover relation.
        let mut ups: Vec<u64> = (0..n).map(|i| (1u64 << i) | adj[i]).collect();
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = ups[i];
                let mut rest = ups[i];
                while rest != 0 {
                    let j = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    acc |= ups[j];
                }
                if acc != ups[i] {
                    ups[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if ups[i] & (1 << j) != 0 && ups[j] & (1 << i) != 0 {
                    return Err(LatticeError::NotALattice {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        reason: "covers contain a cycle".into(),
                    });
                }
            }
        }
        Self::finish(name, labels, index, ups)
    }

    /// Builds a lattice from a full order relation given as bitset rows
    /// (`rows[i]` bit `j` set iff `i <= j`).
    pub fn from_leq(name: &str, labels: &[&str], rows: &[u64]) -> Result<Lattice, LatticeError> {
        let (labels, index) = Self::index_labels(labels)?;
        let n = labels.len();
        assert_eq!(rows.len(), n, "one relation row per element");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut ups = rows.to_vec();
        for (i, row) in ups.iter_mut().enumerate() {
            *row &= mask;
            *row |= 1 << i;
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || ups[i] & (1 << j) == 0 {
                    continue;
                }
                if ups[j] & (1 << i) != 0 {
                    return Err(LatticeError::NotALattice {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        reason: "order is not antisymmetric".into(),
                    });
                }
                if ups[i] & ups[j] != ups[j] {
                    return Err(LatticeError::NotALattice {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        reason: "order is not transitive".into(),
                    });
                }
            }
        }
        Self::finish(name, labels, index, ups)
    }

    fn index_labels(labels: &[&str]) -> Result<(Vec<String>, BTreeMap<String, usize>), LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::NotBounded("empty carrier".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooManyElements(n));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.to_string(), i).is_some() {
                return Err(LatticeError::DuplicateElement(l.to_string()));
            }
        }
        Ok((labels.iter().map(|l| l.to_string()).collect(), index))
    }

    fn finish(
        name: &str,
        labels: Vec<String>,
        index: BTreeMap<String, usize>,
        ups: Vec<u64>,
    ) -> Result<Lattice, LatticeError> {
        let n = labels.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut downs = vec![0u64; n];
        for (i, &row) in ups.iter().enumerate() {
            let mut rest = row;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                downs[j] |= 1 << i;
            }
        }
        let bottom = (0..n)
            .find(|&i| ups[i] == full)
            .ok_or_else(|| LatticeError::NotBounded("no least element".into()))?;
        let top = (0..n)
            .find(|&i| downs[i] == full)
            .ok_or_else(|| LatticeError::NotBounded("no greatest element".into()))?;

        let mut join = vec![0u8; n * n];
        let mut meet = vec![0u8; n * n];
        for i in 0..n {
            for j in i..n {
                let jn = Self::unique_bound(i, j, ups[i] & ups[j], &downs, &labels, "upper")?;
                let mt = Self::unique_bound(i, j, downs[i] & downs[j], &ups, &labels, "lower")?;
                join[i * n + j] = jn as u8;
                join[j * n + i] = jn as u8;
                meet[i * n + j] = mt as u8;
                meet[j * n + i] = mt as u8;
            }
        }

        let mut covers = Vec::new();
        for i in 0..n {
            let strict_ups = ups[i] & !(1u64 << i);
            let mut rest = strict_ups;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let between = strict_ups & downs[j] & !(1u64 << j);
                if between == 0 {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();

        Ok(Lattice {
            name: name.to_string(),
            labels,
            index,
            ups,
            downs,
            join,
            meet,
            covers,
            bottom,
            top,
        })
    }

    /// Picks the unique extremal element of `candidates`, or reports the
    /// offending pair. `toward[c]` must list elements on the far side of `c`.
    fn unique_bound(
        i: usize,
        j: usize,
        candidates: u64,
        toward: &[u64],
        labels: &[String],
        kind: &str,
    ) -> Result<usize, LatticeError> {
        let mut best: Option<usize> = None;
        let mut rest = candidates;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if candidates & toward[c] & !(1u64 << c) != 0 {
                continue; // not extremal: something in candidates lies strictly beyond c
            }
            match best {
                None => best = Some(c),
                Some(b) => {
                    return Err(LatticeError::NotALattice {
                        x: labels[i].clone(),
                        y: labels[j].clone(),
                        reason: format!(
                            "two minimal {kind} bounds `{}` and `{}`",
                            labels[b], labels[c]
                        ),
                    });
                }
            }
        }
        best.ok_or_else(|| LatticeError::NotBounded(format!("no common {kind} bound")))
    }

    // --- basic accessors ---

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Resolves a label to its element index.
    pub fn idx(&self, label: &str) -> Result<usize, LatticeError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(label.to_string()))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover pairs `(lo, hi)` of the transitive reduction, sorted by index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    // --- order queries ---

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.ups[x] & (1 << y) != 0
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.labels.len() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.labels.len() + y] as usize
    }

    /// Bitset of `y` with `x <= y`.
    pub fn ups_mask(&self, x: usize) -> u64 {
        self.ups[x]
    }

    /// Bitset of `y` with `y <= x`.
    pub fn downs_mask(&self, x: usize) -> u64 {
        self.downs[x]
    }

    /// All elements as a bitset.
    pub fn full_mask(&self) -> u64 {
        let n = self.labels.len();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    fn collect(&self, mask: u64) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| mask & (1 << i) != 0).collect()
    }

    /// Bitset of elements incomparable with `a`.
    pub fn inc_mask(&self, a: usize) -> u64 {
        self.full_mask() & !self.ups[a] & !self.downs[a]
    }

    /// Elements incomparable with `a`, in declaration order.
    pub fn inc_set(&self, a: usize) -> Vec<usize> {
        self.collect(self.inc_mask(a))
    }

    /// Elements incomparable with `a` but comparable with `b`.
    pub fn inc_comp_set(&self, a: usize, b: usize) -> Vec<usize> {
        self.collect(self.inc_mask(a) & (self.ups[b] | self.downs[b]))
    }

    /// Elements incomparable with both `a` and `b`.
    pub fn inc_both_set(&self, a: usize, b: usize) -> Vec<usize> {
        self.collect(self.inc_mask(a) & self.inc_mask(b))
    }

    /// The closed interval `[lo, hi]`; errors when `lo <= hi` fails.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Interval, LatticeError> {
        if !self.leq(lo, hi) {
            return Err(LatticeError::NotComparable {
                x: self.labels[lo].clone(),
                y: self.labels[hi].clone(),
            });
        }
        let mask = self.ups[lo] & self.downs[hi];
        Ok(Interval {
            lo,
            hi,
            members: self.collect(mask),
            mask,
        })
    }

    /// Reinterprets a bitset as an interval `[lo, hi]` when it is one.
    pub fn interval_from_mask(&self, mask: u64) -> Option<Interval> {
        if mask == 0 {
            return None;
        }
        let lo = self.collect(mask).into_iter().find(|&c| self.ups[c] & mask == mask)?;
        let hi = self.collect(mask).into_iter().find(|&c| self.downs[c] & mask == mask)?;
        if self.ups[lo] & self.downs[hi] != mask {
            return None;
        }
        Some(Interval {
            lo,
            hi,
            members: self.collect(mask),
            mask,
        })
    }

    /// The dual lattice: same carrier, order reversed. An involution.
    pub fn dual(&self) -> Lattice {
        let labels: Vec<&str> = self.labels.iter().map(|s| s.as_str()).collect();
        Lattice::from_leq(&self.name, &labels, &self.downs)
            .expect("the dual of a bounded lattice is a bounded lattice")
    }

    /// Renders element indices as a comma-separated label list.
    pub fn render_set(&self, xs: &[usize]) -> String {
        xs.iter()
            .map(|&x| self.labels[x].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}
