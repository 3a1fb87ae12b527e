use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::finite::{Elem, FiniteGroup};
use crate::group::subgroup::Subgroup;

/// A homomorphism stored as a total element map, with kernel and image cached on demand.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Arc<Vec<Elem>>,
    kernel: Arc<OnceLock<Subgroup>>,
    image: Arc<OnceLock<Subgroup>>,
}

impl GroupHom {
    pub(crate) fn from_map_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<Elem>,
    ) -> Self {
        debug_assert_eq!(map.len(), source.order());
        GroupHom {
            source,
            target,
            map: Arc::new(map),
            kernel: Arc::new(OnceLock::new()),
            image: Arc::new(OnceLock::new()),
        }
    }

    /// Wraps an explicit element map, verifying the homomorphism property.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::GroupMismatch(format!(
                "map has {} entries, source {} has order {}",
                map.len(),
                source.name(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::InvalidElement {
                index: bad,
                order: target.order(),
            });
        }
        let hom = Self::from_map_unchecked(source, target, map);
        hom.check_on_generators()?;
        Ok(hom)
    }

    /// Extends images of the source's stored generators to a homomorphism.
    pub fn from_gen_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[Elem],
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidInput(format!(
                "{} generator images given, {} has {} generators",
                images.len(),
                source.name(),
                source.generators().len()
            )));
        }
        let pairs: Vec<(Elem, Elem)> = source
            .generators()
            .iter()
            .copied()
            .zip(images.iter().copied())
            .collect();
        Self::from_images(source, target, &pairs)
    }

    /// Extends an assignment on an arbitrary generating set of the source.
    ///
    /// Fails if the seeds do not generate the source or the assignment does not extend.
    pub fn from_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        pairs: &[(Elem, Elem)],
    ) -> Result<Self> {
        for &(s, t) in pairs {
            if s >= source.order() {
                return Err(Error::InvalidElement {
                    index: s,
                    order: source.order(),
                });
            }
            if t >= target.order() {
                return Err(Error::InvalidElement {
                    index: t,
                    order: target.order(),
                });
            }
        }
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &(s, t) in pairs {
                let y = source.mul(x, s);
                let v = target.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push(y);
                } else if map[y] != v {
                    return Err(Error::NotHomomorphism { x, y: s });
                }
            }
            i += 1;
        }
        if queue.len() != source.order() {
            return Err(Error::InvalidInput(format!(
                "images given on elements generating only {} of {} elements",
                queue.len(),
                source.order()
            )));
        }
        Ok(Self::from_map_unchecked(source, target, map))
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        Self::from_map_unchecked(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn trivial(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Self {
        Self::from_map_unchecked(source.clone(), target.clone(), vec![0; source.order()])
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn gen_images(&self) -> Vec<Elem> {
        self.source
            .generators()
            .iter()
            .map(|&g| self.map[g])
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if *self.target != *other.source {
            return Err(Error::GroupMismatch(format!(
                "cannot compose: target {} is not source {}",
                self.target.name(),
                other.source.name()
            )));
        }
        Ok(Self::from_map_unchecked(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&x| other.map[x]).collect(),
        ))
    }

    /// The map `f` with `f ∘ quot = self`, for a surjection `quot` whose kernel lies in
    /// the kernel of `self`.
    pub fn descend(&self, quot: &GroupHom) -> Result<GroupHom> {
        if *quot.source != *self.source {
            return Err(Error::GroupMismatch(
                "descent along a map from another group".into(),
            ));
        }
        let mut map = vec![usize::MAX; quot.target.order()];
        for x in self.source.elements() {
            let y = quot.map[x];
            if map[y] == usize::MAX {
                map[y] = self.map[x];
            } else if map[y] != self.map[x] {
                return Err(Error::Precondition(format!(
                    "kernel of the quotient is not inside the kernel: element {x}"
                )));
            }
        }
        if let Some(y) = map.iter().position(|&v| v == usize::MAX) {
            return Err(Error::NotSurjective("quotient map".into(), y));
        }
        Ok(Self::from_map_unchecked(
            quot.target.clone(),
            self.target.clone(),
            map,
        ))
    }

    /// Restriction to `dom` (a subgroup of the source) corestricted to `cod` (a subgroup
    /// of the target), as a map between the two standalone subgroup groups.
    pub fn restrict(&self, dom: &Subgroup, cod: &Subgroup) -> Result<GroupHom> {
        if **dom.parent() != *self.source || **cod.parent() != *self.target {
            return Err(Error::GroupMismatch(
                "restriction to foreign subgroups".into(),
            ));
        }
        let mut map = Vec::with_capacity(dom.order());
        for &x in dom.members() {
            let y = self.map[x];
            match cod.local_index(y) {
                Some(l) => map.push(l),
                None => {
                    return Err(Error::Precondition(format!(
                        "image of {x} leaves the codomain subgroup"
                    )))
                }
            }
        }
        Ok(Self::from_map_unchecked(
            dom.to_group(),
            cod.to_group(),
            map,
        ))
    }

    pub fn kernel(&self) -> Subgroup {
        self.kernel
            .get_or_init(|| {
                let mask = self.map.iter().map(|&v| v == 0).collect();
                Subgroup::from_mask(self.source.clone(), mask)
            })
            .clone()
    }

    pub fn image(&self) -> Subgroup {
        self.image
            .get_or_init(|| {
                let mut mask = vec![false; self.target.order()];
                for &v in self.map.iter() {
                    mask[v] = true;
                }
                Subgroup::from_mask(self.target.clone(), mask)
            })
            .clone()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let mask = self.map.iter().map(|&v| sub.contains(v)).collect();
        Subgroup::from_mask(self.source.clone(), mask)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &x in sub.members() {
            mask[self.map[x]] = true;
        }
        Subgroup::from_mask(self.target.clone(), mask)
    }

    /// Checks `f(x g) = f(x) f(g)` for every element `x` and stored generator `g`.
    pub fn check_on_generators(&self) -> Result<()> {
        if self.map[0] != 0 {
            return Err(Error::NotHomomorphism { x: 0, y: 0 });
        }
        for &g in self.source.generators() {
            let fg = self.map[g];
            for x in self.source.elements() {
                if self.map[self.source.mul(x, g)] != self.target.mul(self.map[x], fg) {
                    return Err(Error::NotHomomorphism { x, y: g });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)` over all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let s = &self.source;
        let t = &self.target;
        s.elements().all(|x| {
            s.elements()
                .all(|y| self.map[s.mul(x, y)] == t.mul(self.map[x], self.map[y]))
        })
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.source == *other.source && *self.target == *other.target
    }
}

impl Eq for GroupHom {}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, gens -> {:?})",
            self.source.name(),
            self.target.name(),
            self.gen_images()
        )
    }
}
