//! Exact minimum-weight cover search.
//!
//! A cover G witnesses p-smallness when every minimal element of the
//! family contains some set of G, and its weight is `sum of p^|S|`.
//! Any cover set contained in no minimal element witnesses nothing and can
//! be dropped (weights are positive), so the search ranges over nonempty
//! subsets of minimal elements only.
//!
//! Branching: order the minimal elements canonically, branch on which
//! subset of the first uncovered one joins the cover, prune when the
//! partial weight already reaches the incumbent (every extension adds
//! positive weight). Ties between optimal covers are broken by fewer sets,
//! then canonical set-list order, so certificates are deterministic.

use num::Signed;

use crate::error::{Error, Result};
use crate::family::{Cover, MinimalFamily};
use crate::rat::{pow, Rat};
use crate::subset::Subset;

/// Result of the exact cover minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCover {
    pub weight: Rat,
    pub cover: Cover,
    /// Set when the family contains the empty set, whose only cover is
    /// `{empty}` at weight 1: such a family is never p-small.
    pub never_small: bool,
}

pub fn min_cover_weight(family: &MinimalFamily, p: &Rat) -> Result<MinCover> {
    if !p.is_positive() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    if family.is_empty_family() {
        return Ok(MinCover {
            weight: Rat::from_integer(0.into()),
            cover: Cover::empty(),
            never_small: false,
        });
    }
    if family.has_empty_minimal() {
        return Ok(MinCover {
            weight: Rat::from_integer(1.into()),
            cover: Cover::new([Subset::EMPTY]),
            never_small: true,
        });
    }

    let minimal = family.minimal();
    let size_weight: Vec<Rat> = (0..=family.max_minimal_size()).map(|k| pow(p, k)).collect();

    let mut search = Search {
        minimal,
        size_weight: &size_weight,
        best: None,
    };
    search.descend(&mut Vec::new(), Rat::from_integer(0.into()), 0);
    let (weight, mut sets) = search.best.expect("some cover always exists");
    sets.sort();
    Ok(MinCover {
        weight,
        cover: Cover::new(sets),
        never_small: false,
    })
}

struct Search<'a> {
    minimal: &'a [Subset],
    size_weight: &'a [Rat],
    best: Option<(Rat, Vec<Subset>)>,
}

impl Search<'_> {
    /// `covered_from` = all minimal elements below this index are covered.
    fn descend(&mut self, chosen: &mut Vec<Subset>, weight: Rat, covered_from: usize) {
        let next_uncovered = (covered_from..self.minimal.len())
            .find(|&i| !chosen.iter().any(|s| s.is_subset_of(self.minimal[i])));
        let Some(idx) = next_uncovered else {
            // complete cover: compare (weight, count, canonical sequence)
            let mut sorted = chosen.clone();
            sorted.sort();
            let replace = match &self.best {
                None => true,
                Some((bw, bs)) => match weight.cmp(bw) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        (sorted.len(), &sorted) < (bs.len(), bs)
                    }
                },
            };
            if replace {
                self.best = Some((weight, sorted));
            }
            return;
        };
        if let Some((bw, _)) = &self.best {
            // any completion adds at least one positive-weight set
            if weight >= *bw {
                return;
            }
        }
        for sub in self.minimal[idx].submasks() {
            if sub.is_empty() {
                continue;
            }
            chosen.push(sub);
            let w = &weight + &self.size_weight[sub.len()];
            self.descend(chosen, w, idx + 1);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn fam(text: &str) -> MinimalFamily {
        MinimalFamily::parse_fam(text).unwrap()
    }

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems)
    }

    #[test]
    fn single_triple_takes_whole_set() {
        let out = min_cover_weight(&fam("n=3\n1 2 3"), &rat(1, 2)).unwrap();
        assert_eq!(out.weight, rat(1, 8));
        assert_eq!(out.cover.sets(), &[s(&[1, 2, 3])]);
    }

    #[test]
    fn triangle_pairs_prefer_three_pairs() {
        // min(2p, 3p^2, p + p^2) at p = 2/5 is 3p^2 = 12/25
        let out = min_cover_weight(&fam("n=3\n1 2\n2 3\n1 3"), &rat(2, 5)).unwrap();
        assert_eq!(out.weight, rat(12, 25));
        assert_eq!(out.cover.sets(), &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
    }

    #[test]
    fn empty_family_weight_zero() {
        let out = min_cover_weight(&fam("n=3"), &rat(1, 2)).unwrap();
        assert_eq!(out.weight, int(0));
        assert!(out.cover.is_empty());
        assert!(!out.never_small);
    }

    #[test]
    fn empty_minimal_flagged() {
        let full = MinimalFamily::new(
            crate::family::GroundSet::new(2).unwrap(),
            [Subset::EMPTY],
        )
        .unwrap();
        let out = min_cover_weight(&full, &rat(1, 3)).unwrap();
        assert_eq!(out.weight, int(1));
        assert_eq!(out.cover.sets(), &[Subset::EMPTY]);
        assert!(out.never_small);
    }

    #[test]
    fn tie_break_prefers_canonical() {
        // at p = 1 the covers {{1}}, {{2}}, {{1,2}} all weigh 1;
        // fewest sets ties, canonical order picks {1}
        let out = min_cover_weight(&fam("n=2\n1 2"), &int(1)).unwrap();
        assert_eq!(out.weight, int(1));
        assert_eq!(out.cover.sets(), &[s(&[1])]);
    }

    #[test]
    fn singletons_need_every_point() {
        let out = min_cover_weight(&fam("n=4\n1\n2\n3\n4"), &rat(1, 10)).unwrap();
        assert_eq!(out.weight, rat(4, 10));
        assert_eq!(out.cover.len(), 4);
    }

    #[test]
    fn rejects_nonpositive_p() {
        assert!(min_cover_weight(&fam("n=2\n1"), &int(0)).is_err());
        assert!(min_cover_weight(&fam("n=2\n1"), &rat(-1, 2)).is_err());
    }

    #[test]
    fn allows_p_above_one() {
        // weights grow with |S| when p > 1, so singles win
        let out = min_cover_weight(&fam("n=2\n1 2"), &int(2)).unwrap();
        assert_eq!(out.weight, int(2));
        assert_eq!(out.cover.sets(), &[s(&[1])]);
    }
}
