//! Subgroup enumeration for groups of order at most 64.

use std::collections::BTreeSet;

use serde::Serialize;

use super::finite::FiniteGroup;

/// A subgroup as a sorted list of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    fn mask(&self) -> u64 {
        self.elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
    }

    /// Check closure under products and inverses inside `g`.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.elements.iter().all(|&a| {
                self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b)))
            })
    }

    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Option<Subgroup> {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        let s = Subgroup { elements: set.into_iter().collect() };
        s.is_subgroup_of(g).then_some(s)
    }
}

fn from_mask(m: u64) -> Subgroup {
    Subgroup { elements: (0..64).filter(|i| m >> i & 1 == 1).collect() }
}

/// Subgroup generated by the elements in `seed`.
pub fn closure(g: &FiniteGroup, seed: u64) -> u64 {
    let mut m = seed | 1;
    loop {
        let mut next = m;
        for a in (0..g.order()).filter(|a| m >> a & 1 == 1) {
            for b in (0..g.order()).filter(|b| m >> b & 1 == 1) {
                next |= 1u64 << g.mul(a, b);
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// All subgroups ordered by `(order, element list)`; `{1}` first and `G` last.
pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let cyclic: BTreeSet<u64> = (0..n).map(|a| closure(g, 1u64 << a)).collect();
    let mut all: BTreeSet<u64> = cyclic.clone();
    let mut frontier: Vec<u64> = cyclic.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for &c in &cyclic {
                if a & c == c {
                    continue;
                }
                let j = closure(g, a | c);
                if all.insert(j) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all.into_iter().map(from_mask).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// `gHg^{-1}`.
pub fn conjugate(g: &FiniteGroup, h: &Subgroup, x: usize) -> Subgroup {
    let xi = g.inv(x);
    let m = h.elements.iter().fold(0u64, |m, &e| m | 1u64 << g.mul(g.mul(x, e), xi));
    from_mask(m)
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    (0..g.order()).all(|x| conjugate(g, h, x).mask() == h.mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::build_group;

    #[test]
    fn subgroup_counts() {
        let count = |s: &str| subgroups(&build_group(s).unwrap()).len();
        assert_eq!(count("C1"), 1);
        assert_eq!(count("C2xC2"), 5);
        assert_eq!(count("C7"), 2);
        assert_eq!(count("S3"), 6);
        assert_eq!(count("D4"), 10);
        assert_eq!(count("Q8"), 6);
        assert_eq!(count("A4"), 10);
        assert_eq!(count("S4"), 30);
        assert_eq!(count("C2xC2xC2"), 16);
    }

    #[test]
    fn ordering_puts_trivial_first_and_whole_group_last() {
        let g = build_group("S3").unwrap();
        let subs = subgroups(&g);
        assert!(subs[0].is_trivial());
        assert_eq!(subs.last().unwrap().order(), 6);
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        for h in &subs {
            assert!(h.is_subgroup_of(&g));
        }
    }

    #[test]
    fn s3_transpositions_are_conjugate_not_normal() {
        let g = build_group("S3").unwrap();
        let subs = subgroups(&g);
        assert!(!is_normal(&g, &subs[1]));
        assert!(is_normal(&g, &subs[4]));
    }
}
