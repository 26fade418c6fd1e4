//! Increasing set families represented by their antichain of minimal
//! elements.
//!
//! Every increasing family over a finite ground set is generated by its
//! minimal elements, so storing the antichain is lossless and canonical.
//! The ground set is capped at 24 elements because several operations
//! enumerate all `2^n` subsets.

use std::fmt;

use crate::error::{Error, Result};
use crate::rat::{pow, Rat};
use crate::subset::Subset;

/// Hard cap on the ground-set size; enumeration operations are `2^n`.
pub const MAX_GROUND: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidParam(format!(
                "ground set size {n} exceeds cap {MAX_GROUND}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> Subset {
        Subset::universe(self.n)
    }
}

/// An increasing family, stored as the canonically sorted antichain of its
/// minimal elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalFamily {
    ground: GroundSet,
    minimal: Vec<Subset>,
}

impl MinimalFamily {
    /// Builds a family from generator sets: antichain-reduces (any set
    /// containing another listed set is dropped), dedups, sorts canonically.
    pub fn new(ground: GroundSet, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let universe = ground.universe();
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        for &s in &sets {
            if !s.is_subset_of(universe) {
                return Err(Error::InvalidParam(format!(
                    "set {{{s}}} is not contained in the ground set 1..={}",
                    ground.n()
                )));
            }
        }
        // keep inclusion-minimal sets only
        sets.sort_by_key(|s| s.len());
        let mut minimal: Vec<Subset> = Vec::new();
        for s in sets {
            if !minimal.iter().any(|kept| kept.is_subset_of(s)) {
                minimal.push(s);
            }
        }
        minimal.sort();
        Ok(MinimalFamily { ground, minimal })
    }

    /// The family with no members.
    pub fn empty(ground: GroundSet) -> Self {
        MinimalFamily {
            ground,
            minimal: Vec::new(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn minimal(&self) -> &[Subset] {
        &self.minimal
    }

    /// True when the family has no members at all.
    pub fn is_empty_family(&self) -> bool {
        self.minimal.is_empty()
    }

    /// True when the empty set is a member, i.e. the family is all of `2^V`.
    pub fn has_empty_minimal(&self) -> bool {
        self.minimal.first().is_some_and(|s| s.is_empty())
    }

    pub fn max_minimal_size(&self) -> usize {
        self.minimal.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Membership: true iff some minimal element is contained in `sub`.
    pub fn contains(&self, sub: Subset) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(sub))
    }

    /// All members in canonical order. Cost is `2^n` membership tests.
    pub fn members(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0u32..1u32 << self.n())
            .map(Subset::from_mask)
            .filter(|&s| self.contains(s))
            .collect();
        out.sort();
        out
    }

    /// Re-embeds the same minimal elements into a ground set of size `n`.
    pub fn with_ground(&self, n: usize) -> Result<Self> {
        MinimalFamily::new(GroundSet::new(n)?, self.minimal.iter().copied())
    }

    // ---- generators ----

    /// The up-set of a single set.
    pub fn single(n: usize, elems: &[usize]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        for &e in elems {
            if e == 0 || e > n {
                return Err(Error::InvalidParam(format!(
                    "element {e} out of range 1..={n}"
                )));
            }
        }
        MinimalFamily::new(ground, [Subset::from_elems(elems)])
    }

    /// All k-subsets of `{1..=n}` as minimal elements.
    pub fn k_uniform(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParam(format!("k = {k} exceeds n = {n}")));
        }
        let ground = GroundSet::new(n)?;
        MinimalFamily::new(ground, crate::subset::m_subsets(n, k))
    }

    /// Minimal elements `{1}, ..., {n}`.
    pub fn singletons(n: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        MinimalFamily::new(ground, (1..=n).map(Subset::singleton))
    }

    /// Ground set = the C(v,2) edges of the complete graph on `v` vertices,
    /// labeled in lexicographic pair order; minimal elements are the edge
    /// sets of its triangles.
    pub fn triangles(v: usize) -> Result<Self> {
        if v < 3 {
            return Err(Error::InvalidParam(format!(
                "triangles generator needs v >= 3, got {v}"
            )));
        }
        let mut edge_label = std::collections::BTreeMap::new();
        let mut next = 1usize;
        for i in 1..=v {
            for j in i + 1..=v {
                edge_label.insert((i, j), next);
                next += 1;
            }
        }
        let ground = GroundSet::new(next - 1)?;
        let mut tris = Vec::new();
        for a in 1..=v {
            for b in a + 1..=v {
                for c in b + 1..=v {
                    tris.push(Subset::from_elems(&[
                        edge_label[&(a, b)],
                        edge_label[&(a, c)],
                        edge_label[&(b, c)],
                    ]));
                }
            }
        }
        MinimalFamily::new(ground, tris)
    }

    // ---- on-disk format ----

    /// Parses family-file text: first nonblank line `n=<int>`, then one
    /// strictly increasing space-separated element list per line; `#`
    /// starts a comment.
    pub fn parse_fam(text: &str) -> Result<Self> {
        let mut ground: Option<GroundSet> = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match ground {
                None => {
                    let n_text = line.strip_prefix("n=").ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: format!("expected n=<int>, got {line:?}"),
                    })?;
                    let n: usize = n_text.trim().parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad ground size {n_text:?}"),
                    })?;
                    ground = Some(GroundSet::new(n).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?);
                }
                Some(g) => {
                    let mut elems = Vec::new();
                    for tok in line.split_whitespace() {
                        let e: usize = tok.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad element {tok:?}"),
                        })?;
                        if e == 0 || e > g.n() {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("element {e} out of range 1..={}", g.n()),
                            });
                        }
                        if let Some(&last) = elems.last() {
                            if e <= last {
                                return Err(Error::Parse {
                                    line: line_no,
                                    msg: format!(
                                        "elements must be strictly increasing, got {e} after {last}"
                                    ),
                                });
                            }
                        }
                        elems.push(e);
                    }
                    sets.push(Subset::from_elems(&elems));
                }
            }
        }
        let ground = ground.ok_or(Error::Parse {
            line: 1,
            msg: "missing n=<int> line".to_string(),
        })?;
        MinimalFamily::new(ground, sets)
    }

    /// Serializes to family-file text: minimal elements in canonical order,
    /// one per line, no comments.
    pub fn to_fam_string(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for s in &self.minimal {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MinimalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, s) in self.minimal.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{s}}}")?;
        }
        write!(f, "> on n={}", self.n())
    }
}

/// A finite witness for p-smallness: a collection of subsets, canonically
/// ordered and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    sets: Vec<Subset>,
}

impl Cover {
    pub fn new(sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        Cover { sets }
    }

    pub fn empty() -> Self {
        Cover { sets: Vec::new() }
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// True iff every minimal element of `family` contains some cover set.
    pub fn covers(&self, family: &MinimalFamily) -> bool {
        family
            .minimal()
            .iter()
            .all(|&m| self.sets.iter().any(|&s| s.is_subset_of(m)))
    }

    /// `sum over S of p^|S|`, exactly.
    pub fn weight(&self, p: &Rat) -> Rat {
        self.sets.iter().map(|s| pow(p, s.len())).sum()
    }
}
