use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::finite::{Elem, FiniteGroup};
use crate::group::hom::GroupHom;

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list plus a membership mask.
///
/// Cloning is cheap. The subgroup viewed as a group in its own right ([`Subgroup::to_group`])
/// numbers its elements by the sorted member order, so the identity stays at index `0`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Arc<Vec<Elem>>,
    mask: Arc<Vec<bool>>,
    local: Arc<OnceLock<LocalView>>,
}

struct LocalView {
    group: Arc<FiniteGroup>,
    // parent element -> local index, u32::MAX when absent
    local_index: Vec<u32>,
}

impl Subgroup {
    pub(crate) fn from_mask(parent: Arc<FiniteGroup>, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup {
            parent,
            members: Arc::new(members),
            mask: Arc::new(mask),
            local: Arc::new(OnceLock::new()),
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated_by(parent: &Arc<FiniteGroup>, seed: &[Elem]) -> Result<Self> {
        for &s in seed {
            if s >= parent.order() {
                return Err(Error::InvalidElement {
                    index: s,
                    order: parent.order(),
                });
            }
        }
        Ok(Self::from_mask(parent.clone(), parent.closure_mask(seed)))
    }

    /// Interprets an explicit element set as a subgroup, checking closure.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[Elem]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            if m >= parent.order() {
                return Err(Error::InvalidElement {
                    index: m,
                    order: parent.order(),
                });
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::InvalidInput(
                "subset does not contain the identity".into(),
            ));
        }
        let sub = Self::from_mask(parent.clone(), mask);
        for &x in sub.members() {
            if !sub.contains(parent.inv(x)) {
                return Err(Error::InvalidInput(format!(
                    "subset not closed under inverse at {x}"
                )));
            }
            for &y in sub.members() {
                if !sub.contains(parent.mul(x, y)) {
                    return Err(Error::InvalidInput(format!(
                        "subset not closed under product at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(sub)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::generated_by(parent, &[]).expect("identity is always valid")
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_mask(parent.clone(), vec![true; parent.order()])
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Normal in the parent group: closed under conjugation by the parent's generators.
    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(self.parent.generators())
    }

    /// Closed under conjugation by every element of `by`.
    pub fn is_normalized_by(&self, by: &[Elem]) -> bool {
        by.iter().all(|&g| {
            self.members
                .iter()
                .all(|&x| self.contains(self.parent.conj(x, g)))
        })
    }

    /// `x^-1 S x`.
    pub fn conjugate(&self, x: Elem) -> Subgroup {
        let mut mask = vec![false; self.parent.order()];
        for &m in self.members.iter() {
            mask[self.parent.conj(m, x)] = true;
        }
        Self::from_mask(self.parent.clone(), mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(other.mask.iter())
            .map(|(&a, &b)| a && b)
            .collect();
        Self::from_mask(self.parent.clone(), mask)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut seed: Vec<Elem> = self.generators();
        seed.extend(other.generators());
        Self::from_mask(self.parent.clone(), self.parent.closure_mask(&seed))
    }

    /// A generating set chosen greedily in member order.
    pub fn generators(&self) -> Vec<Elem> {
        self.to_group()
            .generators()
            .iter()
            .map(|&l| self.members[l])
            .collect()
    }

    /// Local index of a parent element inside [`Subgroup::to_group`].
    pub fn local_index(&self, x: Elem) -> Option<usize> {
        let v = self.view().local_index[x];
        (v != u32::MAX).then_some(v as usize)
    }

    /// Parent element for a local index.
    pub fn global(&self, local: usize) -> Elem {
        self.members[local]
    }

    /// A subgroup `inner ≤ self` of the parent, renumbered inside [`Subgroup::to_group`].
    pub fn localize(&self, inner: &Subgroup) -> Result<Subgroup> {
        if **inner.parent() != *self.parent || !inner.is_subgroup_of(self) {
            return Err(Error::GroupMismatch(format!(
                "{inner:?} does not lie in {self:?}"
            )));
        }
        let mut mask = vec![false; self.order()];
        for &x in inner.members() {
            mask[self.local_index(x).expect("contained")] = true;
        }
        Ok(Subgroup::from_mask(self.to_group(), mask))
    }

    /// Inverse of [`Subgroup::localize`]: a subgroup of the standalone group read in the parent.
    pub fn globalize(&self, local: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.parent.order()];
        for &l in local.members() {
            mask[self.members[l]] = true;
        }
        Subgroup::from_mask(self.parent.clone(), mask)
    }

    /// The subgroup as a standalone group, elements numbered by sorted member order.
    pub fn to_group(&self) -> Arc<FiniteGroup> {
        self.view().group.clone()
    }

    /// Inclusion of [`Subgroup::to_group`] into the parent.
    pub fn embedding(&self) -> GroupHom {
        GroupHom::from_map_unchecked(self.to_group(), self.parent.clone(), self.members.to_vec())
    }

    fn view(&self) -> &LocalView {
        self.local.get_or_init(|| {
            let n = self.parent.order();
            let mut local_index = vec![u32::MAX; n];
            for (i, &m) in self.members.iter().enumerate() {
                local_index[m] = i as u32;
            }
            let k = self.members.len();
            let mut mul = vec![0u32; k * k];
            for (i, &x) in self.members.iter().enumerate() {
                for (j, &y) in self.members.iter().enumerate() {
                    mul[i * k + j] = local_index[self.parent.mul(x, y)];
                }
            }
            let labels = self
                .parent
                .labels()
                .map(|l| self.members.iter().map(|&m| l[m].clone()).collect());
            let group = FiniteGroup::from_raw(
                format!("{}<sub {}>", self.parent.name(), k),
                mul,
                (0..k).collect(),
                labels,
            )
            .expect("a subgroup table is a group table");
            LocalView {
                group: Arc::new(group),
                local_index,
            }
        })
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
            && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {}: {:?})",
            self.order(),
            self.parent.name(),
            self.members
        )
    }
}

/// Quotient of `parent` by a normal subgroup, with the canonical projection.
///
/// Cosets are numbered by their least element, so the identity coset is `0`.
pub fn quotient(normal: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !normal.is_normal() {
        return Err(Error::NotNormal(format!("{normal:?}")));
    }
    let parent = normal.parent();
    let n = parent.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in parent.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in normal.members() {
            coset_of[parent.mul(x, k)] = c;
        }
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = coset_of[parent.mul(a, b)] as u32;
        }
    }
    let gens = parent.generators().iter().map(|&g| coset_of[g]).collect();
    let group = Arc::new(FiniteGroup::from_raw(
        format!("{}/{}", parent.name(), normal.order()),
        mul,
        gens,
        None,
    )?);
    let proj = GroupHom::from_map_unchecked(parent.clone(), group.clone(), coset_of);
    Ok((group, proj))
}
