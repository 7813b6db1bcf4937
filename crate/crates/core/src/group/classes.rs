use super::GroupTable;

/// Conjugacy classes with the identity class first, then by size, ties by smallest member.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyClassSet {
    class_of: Vec<u32>,
    representatives: Vec<u32>,
    sizes: Vec<usize>,
    centralizer_orders: Vec<usize>,
    members: Vec<Vec<u32>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClassSet {
    pub(crate) fn compute(g: &GroupTable) -> Self {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for x in g.elements() {
            if seen[x as usize] {
                continue;
            }
            let mut orbit: Vec<u32> = Vec::new();
            for y in g.elements() {
                let c = g.conjugate(y, x);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    orbit.push(c);
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        // orbits were discovered in order of their smallest member, so a stable
        // sort by size gives the documented order (identity class has size 1 and member 0)
        orbits.sort_by_key(|o| o.len());

        let mut class_of = vec![0u32; n];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                class_of[x as usize] = i as u32;
            }
        }
        let representatives: Vec<u32> = orbits.iter().map(|o| o[0]).collect();
        let centralizer_orders =
            representatives.iter().map(|&x| g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count()).collect();
        let inverse_class = representatives.iter().map(|&x| class_of[g.inv(x) as usize] as usize).collect();
        ConjugacyClassSet {
            class_of,
            representatives,
            sizes: orbits.iter().map(Vec::len).collect(),
            centralizer_orders,
            members: orbits,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn class_map(&self) -> &[u32] {
        &self.class_of
    }

    pub fn representative(&self, i: usize) -> u32 {
        self.representatives[i]
    }

    pub fn representatives(&self) -> &[u32] {
        &self.representatives
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `|G_x|` for `x` in class `i`.
    pub fn centralizer_order(&self, i: usize) -> usize {
        self.centralizer_orders[i]
    }

    pub fn centralizer_orders(&self) -> &[usize] {
        &self.centralizer_orders
    }

    pub fn members(&self, i: usize) -> &[u32] {
        &self.members[i]
    }

    /// Index of the class containing the inverses of class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Class of `x^k` for `x` in class `i`.
    pub fn power_class(&self, g: &GroupTable, i: usize, k: u64) -> usize {
        self.class_of(g.pow(self.representatives[i], k))
    }
}
