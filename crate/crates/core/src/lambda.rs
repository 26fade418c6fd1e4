//! Sparse nonnegative weight assignments on subsets of the ground set,
//! the witnesses of weak p-smallness.
//!
//! Only strictly positive entries are stored, keyed in canonical subset
//! order, so iteration and serialization are deterministic.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{GroundSet, MinimalFamily};
use crate::rat::{pow, Rat};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda {
    ground: GroundSet,
    entries: BTreeMap<Subset, Rat>,
}

impl Lambda {
    /// Builds an assignment; duplicate keys are summed, zero entries are
    /// dropped, negative weights are rejected.
    pub fn new(ground: GroundSet, entries: impl IntoIterator<Item = (Subset, Rat)>) -> Result<Self> {
        let universe = ground.universe();
        let mut map: BTreeMap<Subset, Rat> = BTreeMap::new();
        for (s, w) in entries {
            if !s.is_subset_of(universe) {
                return Err(Error::InvalidParam(format!(
                    "support set {{{s}}} is not contained in the ground set 1..={}",
                    ground.n()
                )));
            }
            if w.is_negative() {
                return Err(Error::InvalidParam(format!(
                    "negative weight {w} on {{{s}}}"
                )));
            }
            if !w.is_zero() {
                *map.entry(s).or_insert_with(Rat::zero) += w;
            }
        }
        map.retain(|_, w| !w.is_zero());
        Ok(Lambda {
            ground,
            entries: map,
        })
    }

    pub fn zero(ground: GroundSet) -> Self {
        Lambda {
            ground,
            entries: BTreeMap::new(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Entries in canonical support order.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, &Rat)> {
        self.entries.iter().map(|(s, w)| (*s, w))
    }

    pub fn get(&self, s: Subset) -> Rat {
        self.entries.get(&s).cloned().unwrap_or_else(Rat::zero)
    }

    /// Weight on the empty set.
    pub fn empty_set_weight(&self) -> Rat {
        self.get(Subset::EMPTY)
    }

    /// Largest support-set size (0 for the zero assignment).
    pub fn max_support_size(&self) -> usize {
        self.entries.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// `sum of lambda_S` over all S.
    pub fn total_mass(&self) -> Rat {
        self.entries.values().sum()
    }

    /// `sum of lambda_S over S contained in I`, the covering constraint
    /// left-hand side at `I`.
    pub fn constraint_sum(&self, i: Subset) -> Rat {
        self.entries
            .iter()
            .filter(|(s, _)| s.is_subset_of(i))
            .map(|(_, w)| w)
            .sum()
    }

    /// `sum of lambda_S * p^|S|`, the certificate weight at `p`.
    pub fn weight(&self, p: &Rat) -> Rat {
        self.entries
            .iter()
            .map(|(s, w)| w * pow(p, s.len()))
            .sum()
    }

    /// True iff the covering constraint holds at every minimal element of
    /// `family`. The constraint left side is monotone under taking
    /// supersets, so this implies it at every member.
    pub fn is_feasible_for(&self, family: &MinimalFamily) -> bool {
        family
            .minimal()
            .iter()
            .all(|&m| self.constraint_sum(m) >= Rat::from_integer(1.into()))
    }

    /// Parses lambda-file text: first line `n=<int>`, then one entry per
    /// line as `<num>/<den> : e1 e2 ...` (empty element list for the empty
    /// set); `#` starts a comment.
    pub fn parse_lam(text: &str) -> Result<Self> {
        let mut ground: Option<GroundSet> = None;
        let mut entries = Vec::new();
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
                    let (w_text, elems_text) = line.split_once(':').ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: format!("expected <num>/<den> : e1 e2 ..., got {line:?}"),
                    })?;
                    let w = crate::rat::parse_rat(w_text.trim()).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                    let mut elems = Vec::new();
                    for tok in elems_text.split_whitespace() {
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
                        elems.push(e);
                    }
                    entries.push((Subset::from_elems(&elems), w));
                }
            }
        }
        let ground = ground.ok_or(Error::Parse {
            line: 1,
            msg: "missing n=<int> line".to_string(),
        })?;
        Lambda::new(ground, entries).map_err(|e| match e {
            Error::InvalidParam(msg) => Error::Parse { line: 1, msg },
            other => other,
        })
    }

    pub fn to_lam_string(&self) -> String {
        let mut out = format!("n={}\n", self.ground.n());
        for (s, w) in &self.entries {
            out.push_str(&format!("{}/{} : {}\n", w.numer(), w.denom(), s));
        }
        out
    }
}
