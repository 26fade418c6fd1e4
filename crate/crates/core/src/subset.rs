//! Subsets of a small labeled ground set, packed into a `u32` bitmask.
//!
//! Ground elements are labeled `1..=n` (n <= 24) and element `e` occupies
//! bit `e - 1`. The `Ord` impl is the crate-wide canonical order:
//! lexicographic on the ascending element lists, so `{1,2} < {1,2,3} <
//! {1,3} < {2}` and the empty set comes first. Every container that must
//! serialize deterministically sorts by this order.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// The full ground set `{1..=n}`.
    pub fn universe(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    /// Single 1-based element.
    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=32).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn from_elems(elems: &[usize]) -> Self {
        let mut mask = 0;
        for &e in elems {
            mask |= Subset::singleton(e).0;
        }
        Subset(mask)
    }

    pub fn insert(self, e: usize) -> Self {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn contains_elem(self, e: usize) -> bool {
        self.0 & Subset::singleton(e).0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Ascending 1-based element labels.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bit + 1)
            }
        })
    }

    /// All submasks of `self`, empty set included, in carry-rippler order.
    pub fn submasks(self) -> Submasks {
        Submasks {
            of: self.0,
            cur: 0,
            done: false,
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // The ascending element lists agree below the lowest differing
        // element e; the side holding e wins only if the other side still
        // has elements above e (otherwise the other side is a proper prefix).
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        let above = !((low << 1).wrapping_sub(1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    /// Space-separated ascending elements; the empty set prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

pub struct Submasks {
    of: u32,
    cur: u32,
    done: bool,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset(self.cur);
        self.cur = self.cur.wrapping_sub(self.of) & self.of;
        self.done = self.cur == 0;
        Some(out)
    }
}

/// All m-element subsets of `{1..=n}` in lexicographic element order.
pub fn m_subsets(n: usize, m: usize) -> MSubsets {
    MSubsets {
        n,
        idx: (0..m).collect(),
        started: false,
        exhausted: m > n,
    }
}

pub struct MSubsets {
    n: usize,
    idx: Vec<usize>, // 0-based element indices, strictly increasing
    started: bool,
    exhausted: bool,
}

impl Iterator for MSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.exhausted {
            return None;
        }
        if self.started {
            // advance to the next combination
            let m = self.idx.len();
            let mut i = m;
            loop {
                if i == 0 {
                    self.exhausted = true;
                    return None;
                }
                i -= 1;
                if self.idx[i] < self.n - (m - i) {
                    self.idx[i] += 1;
                    for j in i + 1..m {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        self.started = true;
        let mut mask = 0u32;
        for &i in &self.idx {
            mask |= 1 << i;
        }
        Some(Subset(mask))
    }
}
