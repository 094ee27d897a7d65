//! Finite groups given by a multiplication table.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;
pub const MAX_DEGREE: usize = 16;

/// A finite group on the elements `0..n`, with `0` the identity.
///
/// `mul[a][b]` is the product `a * b`; for automorphism groups this is the
/// composition `a ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table. The identity must be element 0.
    pub fn from_table(name: &str, mul: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidInput("a group has at least one element".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::Unsupported(format!("group order {n} exceeds {MAX_ORDER}")));
        }
        if mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("malformed multiplication table".into()));
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0) {
                Some(b) if mul[b][a] == 0 => inv[a] = b,
                _ => return Err(Error::InvalidInput(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidInput("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), mul, inv })
    }

    /// Closure of permutation generators (images of `0..degree`).
    /// Elements are sorted lexicographically by image, so the identity is first.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(1, |g| g.len());
        if degree > MAX_DEGREE {
            return Err(Error::Unsupported(format!("permutation degree {degree} exceeds {MAX_DEGREE}")));
        }
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidInput("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose(g, &p);
                if found.insert(q.clone()) {
                    if found.len() > MAX_ORDER {
                        return Err(Error::Unsupported(format!("group order exceeds {MAX_ORDER}")));
                    }
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = found.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed");
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&compose(a, b))).collect())
            .collect();
        FiniteGroup::from_table(name, mul)
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("C0 is not a finite group".into()));
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&format!("C{n}"), mul)
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
        let (m, n) = (g.order(), h.order());
        if m * n > MAX_ORDER {
            return Err(Error::Unsupported(format!("group order {} exceeds {MAX_ORDER}", m * n)));
        }
        let mul = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("{}x{}", g.name, h.name), mul)
    }

    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::InvalidInput("dihedral groups need n >= 3".into()));
        }
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(&format!("D{n}"), &[r, s])
    }

    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("S0 is not supported".into()));
        }
        let mut gens = Vec::new();
        if n > 1 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(&format!("S{n}"), &gens)
    }

    pub fn alternating(n: usize) -> Result<FiniteGroup> {
        if n < 3 {
            return FiniteGroup::from_permutations(&format!("A{n}"), &[]);
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        FiniteGroup::from_permutations(&format!("A{n}"), &gens)
    }

    pub fn quaternion() -> Result<FiniteGroup> {
        // left regular action of i and j on {±1, ±i, ±j, ±k}
        let i = vec![2, 3, 1, 0, 7, 6, 4, 5];
        let j = vec![4, 5, 6, 7, 1, 0, 3, 2];
        FiniteGroup::from_permutations("Q8", &[i, j])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Parse a named family: `C<n>`, `V4`, `D<n>`, `S<n>`, `A<n>`, `Q8`, and
/// direct products joined by `x` such as `C2xC2` or `C2xC4`.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::InvalidInput("empty group spec".into()));
    }
    let parts: Vec<&str> = spec.split(['x', '*', '×']).map(str::trim).collect();
    let mut group = build_factor(parts[0])?;
    for p in &parts[1..] {
        group = FiniteGroup::product(&group, &build_factor(p)?)?;
    }
    group.name = spec.to_string();
    Ok(group)
}

fn build_factor(s: &str) -> Result<FiniteGroup> {
    let bad = || Error::InvalidInput(format!("unknown group '{s}'"));
    if s == "V4" {
        return FiniteGroup::product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(2)?);
    }
    if s == "Q8" {
        return FiniteGroup::quaternion();
    }
    let (head, tail) = s.split_at(1.min(s.len()));
    let n: usize = tail.parse().map_err(|_| bad())?;
    if n > MAX_ORDER {
        return Err(Error::Unsupported(format!("group parameter {n} too large")));
    }
    match head {
        "C" | "Z" => FiniteGroup::cyclic(n),
        "D" => FiniteGroup::dihedral(n),
        "S" => {
            if n > 4 {
                Err(Error::Unsupported(format!("S{n} has order above {MAX_ORDER}")))
            } else {
                FiniteGroup::symmetric(n)
            }
        }
        "A" => {
            if n > 5 {
                Err(Error::Unsupported(format!("A{n} has order above {MAX_ORDER}")))
            } else {
                FiniteGroup::alternating(n)
            }
        }
        _ => Err(bad()),
    }
}

/// Parse permutations written in cycle notation over the points `1..=degree`,
/// e.g. `"(1 2)(3 4)"` or `"(1,2,3)"`.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let bad = || Error::InvalidInput(format!("cannot parse permutation '{s}'"));
    let mut rest = s.trim();
    if rest.is_empty() || rest == "()" {
        return Ok(perm);
    }
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = open.find(')').ok_or_else(bad)?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let pts: Vec<usize> = body
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if pts.iter().any(|&p| p == 0 || p > degree) {
            return Err(bad());
        }
        // apply this cycle after the ones already read (left to right)
        let mut cyc: Vec<usize> = (0..degree).collect();
        for k in 0..pts.len() {
            cyc[pts[k] - 1] = pts[(k + 1) % pts.len()] - 1;
        }
        perm = compose(&cyc, &perm);
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families() {
        let v4 = build_group("C2xC2").unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        assert_eq!(build_group("C1").unwrap().order(), 1);
        assert_eq!(build_group("S3").unwrap().order(), 6);
        assert_eq!(build_group("D4").unwrap().order(), 8);
        assert!(!build_group("Q8").unwrap().is_abelian());
        assert_eq!(build_group("A4").unwrap().order(), 12);
        assert_eq!(build_group("S4").unwrap().order(), 24);
        assert!(build_group("S5").is_err());
        assert!(build_group("K9").is_err());
    }

    #[test]
    fn s3_from_cycles() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(1,2,3)", 3).unwrap();
        let g = FiniteGroup::from_permutations("S3", &[a, b]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // identity row fine, but 1*1 = 1 makes 1 non-invertible
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("bad", vec![vec![1, 0], vec![0, 1]]).is_err());
    }
}
