use serde::Serialize;

use super::Relation;
use crate::monoid::FiniteMonoid;

/// Every pre-order and equivalence of a finite monoid as an element-pair
/// matrix: `leq_r[a][b]` holds when `a ≤_R b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreensTables {
    pub elements: Vec<String>,
    pub leq_r: Vec<Vec<bool>>,
    pub leq_l: Vec<Vec<bool>>,
    pub leq_j: Vec<Vec<bool>>,
    pub r: Vec<Vec<bool>>,
    pub l: Vec<Vec<bool>>,
    pub j: Vec<Vec<bool>>,
    pub h: Vec<Vec<bool>>,
    pub d: Vec<Vec<bool>>,
}

type Matrix = Vec<Vec<bool>>;

fn matrix(n: usize, f: impl Fn(usize, usize) -> bool) -> Matrix {
    (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
}

/// By ideal containment: `a ≤_R b` iff `a ∈ bS`, `a ≤_L b` iff `a ∈ Sb`,
/// `a ≤_J b` iff `a ∈ SbS`; `D` is `∃c: a L c R b`.
pub fn exact_greens_finite(m: &FiniteMonoid) -> GreensTables {
    let n = m.order();
    // right[b][x]: x ∈ bS
    let right = matrix(n, |b, x| (0..n).any(|s| m.mul(b, s) == x));
    let left = matrix(n, |b, x| (0..n).any(|s| m.mul(s, b) == x));
    let two = matrix(n, |b, x| (0..n).any(|s| left[m.mul(b, s)][x]));
    let leq_r = matrix(n, |a, b| right[b][a]);
    let leq_l = matrix(n, |a, b| left[b][a]);
    let leq_j = matrix(n, |a, b| two[b][a]);
    let r = matrix(n, |a, b| leq_r[a][b] && leq_r[b][a]);
    let l = matrix(n, |a, b| leq_l[a][b] && leq_l[b][a]);
    let j = matrix(n, |a, b| leq_j[a][b] && leq_j[b][a]);
    let h = matrix(n, |a, b| r[a][b] && l[a][b]);
    let d = matrix(n, |a, b| (0..n).any(|c| l[a][c] && r[c][b]));
    GreensTables {
        elements: (0..n).map(|x| m.element_name(x).to_owned()).collect(),
        leq_r,
        leq_l,
        leq_j,
        r,
        l,
        j,
        h,
        d,
    }
}

impl GreensTables {
    pub fn get(&self, rel: Relation) -> &Matrix {
        match rel {
            Relation::LeqR => &self.leq_r,
            Relation::LeqL => &self.leq_l,
            Relation::LeqJ => &self.leq_j,
            Relation::R => &self.r,
            Relation::L => &self.l,
            Relation::J => &self.j,
            Relation::H => &self.h,
            Relation::D => &self.d,
        }
    }

    /// Classes of an equivalence, each listed by element name.
    pub fn classes(&self, rel: Relation) -> Vec<Vec<String>> {
        let m = self.get(rel);
        let mut seen = vec![false; m.len()];
        let mut out = Vec::new();
        for a in 0..m.len() {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (0..m.len()).filter(|&b| m[a][b]).collect();
            for &b in &class {
                seen[b] = true;
            }
            out.push(class.iter().map(|&b| self.elements[b].clone()).collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(m: &Matrix) -> bool {
        m.iter().flatten().all(|&x| x)
    }

    #[test]
    fn trivial_monoid() {
        let m = FiniteMonoid::parse("elements: 1\n1").unwrap();
        let t = exact_greens_finite(&m);
        assert!(Relation::ALL.iter().all(|&r| all(t.get(r))));
    }

    #[test]
    fn semilattice() {
        let m = FiniteMonoid::parse("elements: 1 e\n1 e\ne e").unwrap();
        let t = exact_greens_finite(&m);
        // e ≤_J 1, not conversely
        assert!(t.leq_j[1][0]);
        assert!(!t.leq_j[0][1]);
        assert_eq!(t.classes(Relation::J), vec![vec!["1".to_owned()], vec!["e".to_owned()]]);
    }

    #[test]
    fn cyclic_group_is_one_class() {
        let m = FiniteMonoid::parse("elements: 1 g h\n1 g h\ng h 1\nh 1 g").unwrap();
        let t = exact_greens_finite(&m);
        assert!(Relation::ALL.iter().all(|&r| all(t.get(r))));
    }

    #[test]
    fn left_zero_semigroup_with_identity() {
        // xy = x for x, y ∈ {a, b}: R-classes split, L-classes merge
        let m = FiniteMonoid::parse("elements: 1 a b\n1 a b\na a a\nb b b").unwrap();
        let t = exact_greens_finite(&m);
        assert!(!t.r[1][2]);
        assert!(t.l[1][2]);
        assert!(t.d[1][2]);
        assert!(!t.h[1][2]);
    }
}
