use std::fmt;
use std::sync::Arc;

use super::{same_group, GroupTable};
use crate::error::{Error, Result};

/// A subgroup of an ambient group, stored with its own closed Cayley table.
///
/// Local index `i` of the subgroup table corresponds to ambient element `members[i]`.
#[derive(Clone)]
pub struct SubgroupEmbedding {
    ambient: Arc<GroupTable>,
    members: Vec<u32>,
    table: Arc<GroupTable>,
}

impl SubgroupEmbedding {
    /// The subgroup generated by the given ambient elements.
    pub fn generated_by(ambient: &Arc<GroupTable>, generators: &[u32]) -> Result<Self> {
        for &g in generators {
            check_element(ambient, g)?;
        }
        let mut inside = vec![false; ambient.order()];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in generators {
                let y = ambient.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        Ok(Self::from_sorted_closed(ambient, members))
    }

    /// Validates that `members` is a subgroup and wraps it.
    pub fn from_members(ambient: &Arc<GroupTable>, members: &[u32]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            check_element(ambient, m)?;
        }
        if members.first() != Some(&0) {
            return Err(Error::Input("subgroup must contain the identity".into()));
        }
        let contains = |x: u32| members.binary_search(&x).is_ok();
        for &a in &members {
            if !contains(ambient.inv(a)) {
                return Err(Error::Input("subgroup is not closed under inversion".into()));
            }
            for &b in &members {
                if !contains(ambient.mul(a, b)) {
                    return Err(Error::Input("subgroup is not closed under multiplication".into()));
                }
            }
        }
        Ok(Self::from_sorted_closed(ambient, members))
    }

    pub(crate) fn from_sorted_closed(ambient: &Arc<GroupTable>, members: Vec<u32>) -> Self {
        let table = Arc::new(ambient.restricted(&members));
        SubgroupEmbedding { ambient: ambient.clone(), members, table }
    }

    pub fn whole(ambient: &Arc<GroupTable>) -> Self {
        Self::from_sorted_closed(ambient, ambient.elements().collect())
    }

    pub fn trivial(ambient: &Arc<GroupTable>) -> Self {
        Self::from_sorted_closed(ambient, vec![0])
    }

    pub fn ambient(&self) -> &Arc<GroupTable> {
        &self.ambient
    }

    /// The subgroup as a group in its own right.
    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    /// Ambient indices of the members, sorted.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `[G : Γ]`.
    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Local index of an ambient element, if it is a member.
    pub fn local_index(&self, x: u32) -> Option<u32> {
        self.members.binary_search(&x).ok().map(|i| i as u32)
    }

    /// Ambient index of a local element.
    pub fn lift(&self, local: u32) -> u32 {
        self.members[local as usize]
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.ambient.order()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupEmbedding) -> bool {
        same_group(&self.ambient, &other.ambient) && self.members.iter().all(|&x| other.contains(x))
    }

    /// `g Γ g⁻¹`.
    pub fn conjugate_by(&self, g: u32) -> SubgroupEmbedding {
        let mut members: Vec<u32> = self.members.iter().map(|&x| self.ambient.conjugate(g, x)).collect();
        members.sort_unstable();
        Self::from_sorted_closed(&self.ambient, members)
    }

    pub fn intersection(&self, other: &SubgroupEmbedding) -> SubgroupEmbedding {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_sorted_closed(&self.ambient, members)
    }

    /// Re-expresses `self` as a subgroup of `outer`'s own table.
    pub fn within(&self, outer: &SubgroupEmbedding) -> Result<SubgroupEmbedding> {
        if !self.is_subgroup_of(outer) {
            return Err(Error::Input("subgroup is not contained in the outer subgroup".into()));
        }
        let local: Vec<u32> = self.members.iter().map(|&x| outer.local_index(x).unwrap()).collect();
        let mut sorted = local;
        sorted.sort_unstable();
        Ok(Self::from_sorted_closed(outer.table(), sorted))
    }

    /// Whether `gΓg⁻¹ = Γ` for all `g` in the ambient group.
    pub fn is_normal(&self) -> bool {
        self.ambient.elements().all(|g| self.members.iter().all(|&x| self.contains(self.ambient.conjugate(g, x))))
    }
}

impl PartialEq for SubgroupEmbedding {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.ambient, &other.ambient) && self.members == other.members
    }
}

impl fmt::Debug for SubgroupEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupEmbedding")
            .field("ambient_order", &self.ambient.order())
            .field("members", &self.members)
            .finish()
    }
}

fn check_element(g: &GroupTable, x: u32) -> Result<()> {
    if (x as usize) < g.order() {
        Ok(())
    } else {
        Err(Error::OutOfRange { index: x as usize, len: g.order() })
    }
}

/// `G_x = {y : xy = yx}`.
pub fn centralizer(g: &Arc<GroupTable>, x: u32) -> Result<SubgroupEmbedding> {
    check_element(g, x)?;
    let members = g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).collect();
    Ok(SubgroupEmbedding::from_sorted_closed(g, members))
}

/// Smallest element of each left coset `xΓ`, sorted.
pub fn left_transversal(g: &Arc<GroupTable>, sub: &SubgroupEmbedding) -> Result<Vec<u32>> {
    if !same_group(g, sub.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::with_capacity(sub.index());
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        for &h in sub.members() {
            seen[g.mul(x, h) as usize] = true;
        }
    }
    Ok(reps)
}

/// One double coset `Γ₁ s Γ₂` together with `Γ₂(s) = sΓ₂s⁻¹ ∩ Γ₁`.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    /// Smallest element of the double coset.
    pub representative: u32,
    pub size: usize,
    pub stabilizer: SubgroupEmbedding,
}

/// The double cosets `Γ₁\G/Γ₂` in order of their smallest elements.
pub fn double_cosets(
    g: &Arc<GroupTable>,
    gamma1: &SubgroupEmbedding,
    gamma2: &SubgroupEmbedding,
) -> Result<Vec<DoubleCoset>> {
    if !same_group(g, gamma1.ambient()) || !same_group(g, gamma2.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in g.elements() {
        if seen[s as usize] {
            continue;
        }
        let mut size = 0;
        for &a in gamma1.members() {
            let as_ = g.mul(a, s);
            for &b in gamma2.members() {
                let y = g.mul(as_, b) as usize;
                if !seen[y] {
                    seen[y] = true;
                    size += 1;
                }
            }
        }
        let stabilizer = gamma2.conjugate_by(s).intersection(gamma1);
        out.push(DoubleCoset { representative: s, size, stabilizer });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    fn s(n: u32) -> Arc<GroupTable> {
        Arc::new(named::symmetric(n).unwrap())
    }

    fn point_stabilizer(g: &Arc<GroupTable>, point: u32) -> SubgroupEmbedding {
        let members: Vec<u32> = g.elements().filter(|&x| g.permutation(x).unwrap().apply(point) == point).collect();
        SubgroupEmbedding::from_members(g, &members).unwrap()
    }

    fn alternating_in(g: &Arc<GroupTable>) -> SubgroupEmbedding {
        let members: Vec<u32> = g
            .elements()
            .filter(|&x| {
                let p = g.permutation(x).unwrap();
                p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
            })
            .collect();
        SubgroupEmbedding::from_members(g, &members).unwrap()
    }

    #[test]
    fn centralizer_orders() {
        let g = s(3);
        let t = g.index_of(&crate::group::Permutation::parse_cycles("(0 1)", 3).unwrap()).unwrap();
        assert_eq!(centralizer(&g, t).unwrap().order(), 2);
        assert!(centralizer(&g, 0).unwrap().is_whole());
        let z4 = Arc::new(named::cyclic(4).unwrap());
        for x in z4.elements() {
            assert!(centralizer(&z4, x).unwrap().is_whole());
        }
    }

    #[test]
    fn transversals() {
        let g = s(3);
        let a3 = alternating_in(&g);
        assert_eq!(left_transversal(&g, &a3).unwrap().len(), 2);
        assert_eq!(left_transversal(&g, &SubgroupEmbedding::whole(&g)).unwrap(), vec![0]);
        let g4 = s(4);
        let s3 = point_stabilizer(&g4, 3);
        let t = left_transversal(&g4, &s3).unwrap();
        assert_eq!(t.len(), 4);
        // brute force: the cosets xΓ are disjoint and cover G
        let mut covered = vec![0; g4.order()];
        for &x in &t {
            for &h in s3.members() {
                covered[g4.mul(x, h) as usize] += 1;
            }
        }
        assert!(covered.iter().all(|&c| c == 1));
    }

    #[test]
    fn double_coset_counts() {
        let g = s(3);
        let a3 = alternating_in(&g);
        assert_eq!(double_cosets(&g, &a3, &a3).unwrap().len(), 2);
        let whole = SubgroupEmbedding::whole(&g);
        assert_eq!(double_cosets(&g, &whole, &whole).unwrap().len(), 1);
        let g4 = s(4);
        let s3 = point_stabilizer(&g4, 3);
        let dc = double_cosets(&g4, &s3, &s3).unwrap();
        assert_eq!(dc.len(), 2);
        assert_eq!(dc.iter().map(|d| d.size).sum::<usize>(), 24);
    }

    #[test]
    fn closure_and_validation() {
        let g = s(4);
        let c = g.index_of(&crate::group::Permutation::parse_cycles("(0 1 2 3)", 4).unwrap()).unwrap();
        let h = SubgroupEmbedding::generated_by(&g, &[c]).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.table().order(), 4);
        assert!(h.table().is_abelian());
        assert!(SubgroupEmbedding::from_members(&g, &[0, c]).is_err());
        assert!(alternating_in(&g).is_normal());
        assert!(!point_stabilizer(&g, 0).is_normal());
    }
}
