//! Finite groups as dense Cayley tables.
//!
//! Elements are indices `0..|G|` with the identity at index 0. Every other
//! module speaks indices only; the permutation realization (when there is
//! one) is kept around for printing.

mod classes;
pub mod named;
mod perm;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use classes::ConjugacyClassSet;
pub use perm::Permutation;
pub use subgroup::{centralizer, double_cosets, left_transversal, DoubleCoset, SubgroupEmbedding};

use crate::error::{Error, Result};

/// Default cap on generated group orders.
pub const DEFAULT_ORDER_CAP: usize = 20160;

/// Largest order for which associativity of a supplied table is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;

const SAMPLED_ASSOCIATIVITY_TRIALS: usize = 100_000;

pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    name: Option<String>,
    labels: Option<Vec<String>>,
    elements: Option<Vec<Permutation>>,
    classes: OnceLock<ConjugacyClassSet>,
    element_orders: OnceLock<Vec<u32>>,
}

impl GroupTable {
    /// Closure of `generators` under composition with the default order cap.
    pub fn generate(generators: &[Permutation]) -> Result<Self> {
        Self::generate_with_cap(generators, DEFAULT_ORDER_CAP)
    }

    /// Breadth-first closure from the identity, multiplying on the right by the
    /// generators in the order given. Indexing is a pure function of the input.
    pub fn generate_with_cap(generators: &[Permutation], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Input("at least one generator is required".into()))?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Input(format!("generator {bad} has degree {} but expected {degree}", bad.degree())));
        }

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // parent[b] = (a, k) with b = a * g_k; right[a][k] = a * g_k
        let mut parent: Vec<(u32, usize)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            let mut row = Vec::with_capacity(generators.len());
            for (k, g) in generators.iter().enumerate() {
                let y = x.compose(g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len() as u32;
                        if elements.len() >= cap {
                            return Err(Error::SizeCap { cap });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((head as u32, k));
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }

        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        // a * b = (a * parent(b)) * g_k, filled in breadth-first order of b
        for b in 1..n {
            let (p, k) = parent[b];
            for a in 0..n {
                let ap = mul[a * n + p as usize];
                mul[a * n + b] = right[ap as usize][k];
            }
        }
        let inv = inverses(&mul, n)?;
        Ok(GroupTable {
            order: n,
            mul,
            inv,
            name: None,
            labels: None,
            elements: Some(elements),
            classes: OnceLock::new(),
            element_orders: OnceLock::new(),
        })
    }

    /// Builds a group from a row-major Cayley table, validating the group axioms.
    ///
    /// Associativity is checked on every triple up to order 512 and on
    /// 10⁵ seeded random triples above that.
    pub fn from_cayley(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::Input("Cayley table must be |G|×|G| with |G| ≥ 1".into()));
        }
        if mul.iter().any(|&v| v as usize >= order) {
            return Err(Error::Input("Cayley table entry out of range".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::Input("element 0 must be the identity".into()));
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let check = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !check(a, b, c) {
                            return Err(Error::Input(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIALS {
                let (a, b, c) = (rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order));
                if !check(a, b, c) {
                    return Err(Error::Input(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        let inv = inverses(&mul, order)?;
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::Input("label count differs from group order".into()));
            }
        }
        Ok(GroupTable {
            order,
            mul,
            inv,
            name: None,
            labels,
            elements: None,
            classes: OnceLock::new(),
            element_orders: OnceLock::new(),
        })
    }

    /// `G₁ × G₂` with element `(a, b)` at index `a·|G₂| + b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let (x1, x2) = (x / nb, x % nb);
            for y in 0..n {
                let (y1, y2) = (y / nb, y % nb);
                let z1 = a.mul(x1 as u32, y1 as u32) as usize;
                let z2 = b.mul(x2 as u32, y2 as u32) as usize;
                mul[x * n + y] = (z1 * nb + z2) as u32;
            }
        }
        let labels = (0..n).map(|x| format!("({}, {})", a.label((x / nb) as u32), b.label((x % nb) as u32))).collect();
        let mut g = GroupTable::from_cayley(n, mul, Some(labels))?;
        if let (Some(x), Some(y)) = (&a.name, &b.name) {
            g.name = Some(format!("{x}x{y}"));
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let mut result = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.element_orders.get_or_init(|| {
            (0..self.order as u32)
                .map(|x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })[x as usize]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.elements().fold(1u32, |acc, x| acc.lcm(&self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<u32> {
        self.elements().filter(|&z| self.elements().all(|g| self.mul(g, z) == self.mul(z, g))).collect()
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        self.classes.get_or_init(|| ConjugacyClassSet::compute(self))
    }

    pub fn permutation(&self, x: u32) -> Option<&Permutation> {
        self.elements.as_ref().map(|e| &e[x as usize])
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    /// Human-readable name for an element: cycle notation, a stored label, or the index.
    pub fn label(&self, x: u32) -> String {
        if let Some(p) = self.permutation(x) {
            p.cycle_notation()
        } else if let Some(l) = &self.labels {
            l[x as usize].clone()
        } else {
            format!("g{x}")
        }
    }

    /// Index lookup for a permutation in the realization, if any.
    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.elements.as_ref()?.iter().position(|q| q == p).map(|i| i as u32)
    }

    pub(crate) fn restricted(&self, members: &[u32]) -> GroupTable {
        let n = members.len();
        let mut local = vec![u32::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            local[m as usize] = i as u32;
        }
        let mut mul = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * n + j] = local[self.mul(a, b) as usize];
            }
        }
        let inv = members.iter().map(|&a| local[self.inv(a) as usize]).collect();
        GroupTable {
            order: n,
            mul,
            inv,
            name: None,
            labels: self.labels.as_ref().map(|l| members.iter().map(|&m| l[m as usize].clone()).collect()),
            elements: self.elements.as_ref().map(|e| members.iter().map(|&m| e[m as usize].clone()).collect()),
            classes: OnceLock::new(),
            element_orders: OnceLock::new(),
        }
    }

    pub fn into_arc(self) -> Arc<GroupTable> {
        Arc::new(self)
    }
}

fn inverses(mul: &[u32], n: usize) -> Result<Vec<u32>> {
    (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| mul[x * n + y] == 0)
                .map(|y| y as u32)
                .ok_or_else(|| Error::Input(format!("element {x} has no inverse")))
        })
        .collect()
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("name", &self.name).field("order", &self.order).finish_non_exhaustive()
    }
}

/// Whether two handles denote the same group (pointer identity, then table equality).
pub fn same_group(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(c: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(c, n).unwrap()
    }

    /// Independent closure: repeatedly multiply every known element by every known element.
    fn brute_closure(gens: &[Permutation]) -> usize {
        let mut set: Vec<Permutation> = vec![Permutation::identity(gens[0].degree())];
        set.extend(gens.iter().cloned());
        loop {
            let mut added = false;
            let snapshot = set.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let c = a.compose(b);
                    if !set.contains(&c) {
                        set.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return set.len();
            }
        }
    }

    #[test]
    fn s3_from_transposition_and_three_cycle() {
        let gens = [perm("(0 1)", 3), perm("(0 1 2)", 3)];
        let g = GroupTable::generate(&gens).unwrap();
        assert_eq!(g.order(), brute_closure(&gens));
        assert_eq!(g.order(), 6);
        for x in g.elements() {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn cyclic_of_order_four() {
        let gens = [perm("(0 1 2 3)", 4)];
        let g = GroupTable::generate(&gens).unwrap();
        assert_eq!(g.order(), brute_closure(&gens));
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let g = GroupTable::generate(&[Permutation::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn generator_errors() {
        assert!(matches!(GroupTable::generate(&[]), Err(Error::Input(_))));
        let mixed = [perm("(0 1)", 2), perm("(0 1 2)", 3)];
        assert!(matches!(GroupTable::generate(&mixed), Err(Error::Input(_))));
        let s5 = [perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)];
        assert!(matches!(GroupTable::generate_with_cap(&s5, 100), Err(Error::SizeCap { cap: 100 })));
    }

    #[test]
    fn generation_is_deterministic() {
        let gens = [perm("(0 1)", 4), perm("(0 1 2 3)", 4)];
        let a = GroupTable::generate(&gens).unwrap();
        let b = GroupTable::generate(&gens).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.permutations(), b.permutations());
    }

    #[test]
    fn cayley_table_matches_composition() {
        let gens = [perm("(0 1)", 4), perm("(0 1 2 3)", 4)];
        let g = GroupTable::generate(&gens).unwrap();
        let els = g.permutations().unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(els[g.mul(a, b) as usize], els[a as usize].compose(&els[b as usize]));
            }
        }
    }

    #[test]
    fn from_cayley_rejects_non_associative() {
        // unital magma on three elements where (1*1)*2 != 1*(1*2)
        let mul = vec![0, 1, 2, 1, 0, 0, 2, 0, 1];
        assert!(GroupTable::from_cayley(3, mul, None).is_err());
        let z3 = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        assert!(GroupTable::from_cayley(3, z3, None).is_ok());
    }
}
