//! Non-abelian 1-cocycles and their correspondence with sections of semidirect products.
//!
//! For a left action of `Q` on `A`, a cocycle is a map `x: Q → A` with
//! `x(q₁q₂) = x(q₁) · (q₁ · x(q₂))`. The map `q ↦ (x(q), q)` is then a section of
//! `A ⋊ Q → Q`, and every section arises this way.

use std::sync::Arc;

use crate::constructions::{GroupAction, SemidirectProduct};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

/// A 1-cocycle of `action`, stored as its full value table.
#[derive(Clone, Debug)]
pub struct Cocycle {
    action: GroupAction,
    values: Vec<Elem>,
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_action(&self.action, &other.action)
    }
}

fn same_action(a: &GroupAction, b: &GroupAction) -> bool {
    **a.actor() == **b.actor()
        && **a.space() == **b.space()
        && a.actor()
            .elements()
            .all(|q| a.space().elements().all(|x| a.act(q, x) == b.act(q, x)))
}

impl Cocycle {
    /// Checks the cocycle relation on every pair.
    pub fn new(action: GroupAction, values: Vec<Elem>) -> Result<Self> {
        let (q, a) = (action.actor(), action.space());
        if values.len() != q.order() || values.iter().any(|&v| v >= a.order()) {
            return Err(Error::InvalidInput(
                "cocycle table does not match the action".into(),
            ));
        }
        let c = Cocycle { action, values };
        if let Some((x, y)) = c.first_violation() {
            return Err(Error::InvalidInput(format!(
                "cocycle relation fails at ({x}, {y})"
            )));
        }
        Ok(c)
    }

    /// The cocycle that is identically the identity.
    pub fn trivial(action: &GroupAction) -> Self {
        Cocycle {
            action: action.clone(),
            values: vec![0; action.actor().order()],
        }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value(&self, q: Elem) -> Elem {
        self.values[q]
    }

    fn first_violation(&self) -> Option<(Elem, Elem)> {
        let (q, a) = (self.action.actor(), self.action.space());
        for x in q.elements() {
            for y in q.elements() {
                let lhs = self.values[q.mul(x, y)];
                let rhs = a.mul(self.values[x], self.action.act(x, self.values[y]));
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Whether the relation holds on all `|Q|²` pairs.
    pub fn verify(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Restriction to a subgroup of the actor, as a cocycle of the restricted action.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Cocycle> {
        let action = self.action.restrict(sub)?;
        let values = sub.members().iter().map(|&q| self.values[q]).collect();
        Ok(Cocycle { action, values })
    }
}

/// Every cocycle of `action`, ordered lexicographically by the values on the generators
/// of the actor.
pub fn enumerate_cocycles(action: &GroupAction) -> CocycleSearch {
    CocycleSearch::new(action.clone())
}

/// Iterator returned by [`enumerate_cocycles`].
pub struct CocycleSearch {
    action: GroupAction,
    gens: Vec<Elem>,
    // one frame per assigned generator: the partial table after the assignment and the
    // next candidate value to try
    stack: Vec<(Vec<u32>, usize)>,
    started: bool,
}

const UNSET: u32 = u32::MAX;

impl CocycleSearch {
    fn new(action: GroupAction) -> Self {
        let gens = action.actor().generators().to_vec();
        CocycleSearch {
            action,
            gens,
            stack: Vec::new(),
            started: false,
        }
    }

    /// Extends `table` by setting `x(gens[j]) = v` and closing under right multiplication
    /// by `gens[..=j]`; `None` on a contradiction.
    fn extend(&self, table: &[u32], j: usize, v: Elem) -> Option<Vec<u32>> {
        let q = self.action.actor();
        let a = self.action.space();
        let mut t = table.to_vec();
        let s = self.gens[j];
        if t[s] != UNSET {
            return (t[s] as usize == v).then_some(t);
        }
        t[s] = v as u32;
        let mut queue: Vec<Elem> = q.elements().filter(|&x| t[x] != UNSET).collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in &self.gens[..=j] {
                let xg = q.mul(x, g);
                let val = a.mul(t[x] as usize, self.action.act(x, t[g] as usize)) as u32;
                if t[xg] == UNSET {
                    t[xg] = val;
                    queue.push(xg);
                } else if t[xg] != val {
                    return None;
                }
            }
        }
        Some(t)
    }
}

impl Iterator for CocycleSearch {
    type Item = Cocycle;

    fn next(&mut self) -> Option<Cocycle> {
        let q_order = self.action.actor().order();
        let a_order = self.action.space().order();
        if !self.started {
            self.started = true;
            let mut base = vec![UNSET; q_order];
            base[0] = 0;
            if self.gens.is_empty() {
                return Some(Cocycle {
                    action: self.action.clone(),
                    values: vec![0; q_order],
                });
            }
            self.stack.push((base, 0));
        }
        loop {
            let depth = self.stack.len();
            if depth == 0 {
                return None;
            }
            let j = depth - 1;
            let (table, next) = self.stack.last().cloned().expect("non-empty");
            if next >= a_order {
                self.stack.pop();
                continue;
            }
            self.stack.last_mut().expect("non-empty").1 = next + 1;
            let Some(t) = self.extend(&table, j, next) else {
                continue;
            };
            // a forced generator admits exactly one value, so skip the others
            if table[self.gens[j]] != UNSET {
                self.stack.last_mut().expect("non-empty").1 = a_order;
            }
            if j + 1 == self.gens.len() {
                return Some(Cocycle {
                    action: self.action.clone(),
                    values: t.iter().map(|&v| v as usize).collect(),
                });
            }
            self.stack.push((t, 0));
        }
    }
}

fn check_semidirect(action: &GroupAction, sd: &SemidirectProduct) -> Result<()> {
    if !same_action(action, &sd.action) {
        return Err(Error::GroupMismatch(
            "semidirect product of a different action".into(),
        ));
    }
    Ok(())
}

/// The section `q ↦ (x(q), q)` of `A ⋊ Q → Q`.
pub fn cocycle_to_section(x: &Cocycle, sd: &SemidirectProduct) -> Result<GroupHom> {
    check_semidirect(&x.action, sd)?;
    let q = x.action.actor();
    let map = q.elements().map(|g| sd.pair(x.values[g], g)).collect();
    let section = GroupHom::new(q.clone(), sd.group.clone(), map)?;
    assert!(
        section.is_homomorphism(),
        "cocycle relation gives a homomorphism"
    );
    Ok(section)
}

/// The cocycle `x(q) = β'(q) · q⁻¹` of a section `β'` of `A ⋊ Q → Q`.
pub fn section_to_cocycle(section: &GroupHom, sd: &SemidirectProduct) -> Result<Cocycle> {
    if **section.source() != **sd.action.actor() || **section.target() != *sd.group {
        return Err(Error::GroupMismatch("not a map Q -> A:Q".into()));
    }
    let q = section.source();
    let mut values = Vec::with_capacity(q.order());
    for g in q.elements() {
        if sd.split(section.apply(g)).1 != g {
            return Err(Error::Precondition(format!("not a section at {g}")));
        }
        let (x, _) = sd.split(sd.group.mul(section.apply(g), sd.group.inv(sd.pair(0, g))));
        values.push(x);
    }
    Cocycle::new(sd.action.clone(), values)
}

/// Whether `y(q) = a⁻¹ · x(q) · (q · a)` for some `a ∈ A`.
pub fn cohomologous(x: &Cocycle, y: &Cocycle) -> Result<bool> {
    Ok(twisting_element(x, y)?.is_some())
}

/// The element `a` with `y(q) = a⁻¹ · x(q) · (q · a)`, if one exists.
pub fn twisting_element(x: &Cocycle, y: &Cocycle) -> Result<Option<Elem>> {
    if !same_action(&x.action, &y.action) {
        return Err(Error::GroupMismatch("cocycles of different actions".into()));
    }
    let (q, a) = (x.action.actor(), x.action.space());
    Ok(a.elements().find(|&e| {
        let ei = a.inv(e);
        q.elements()
            .all(|g| y.values[g] == a.mul(a.mul(ei, x.values[g]), x.action.act(g, e)))
    }))
}

/// Outcome of a restriction-surjectivity test.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub surjective: bool,
    /// A cocycle of the subgroup with no preimage, when the map is not surjective.
    pub witness: Option<Cocycle>,
    /// For each cocycle of the subgroup (in enumeration order), the first cocycle of the
    /// whole actor restricting to it (or to a cohomologous cocycle for the class-level
    /// test).
    pub extensions: Vec<Option<Cocycle>>,
    pub actor_cocycles: usize,
    pub subgroup_cocycles: usize,
}

fn restriction_test(
    action: &GroupAction,
    sub: &Subgroup,
    classes: bool,
) -> Result<RestrictionReport> {
    if **sub.parent() != **action.actor() {
        return Err(Error::GroupMismatch("subgroup of a different actor".into()));
    }
    let big: Vec<Cocycle> = enumerate_cocycles(action).collect();
    let restricted: Vec<Cocycle> = big.iter().map(|c| c.restrict(sub)).collect::<Result<_>>()?;
    let small_action = action.restrict(sub)?;
    let small: Vec<Cocycle> = enumerate_cocycles(&small_action).collect();
    let mut extensions = Vec::with_capacity(small.len());
    let mut witness = None;
    for s in &small {
        let hit = restricted.iter().position(|r| {
            if classes {
                cohomologous(r, s).unwrap_or(false)
            } else {
                r.values == s.values
            }
        });
        if hit.is_none() && witness.is_none() {
            witness = Some(s.clone());
        }
        extensions.push(hit.map(|i| big[i].clone()));
    }
    Ok(RestrictionReport {
        surjective: witness.is_none(),
        witness,
        extensions,
        actor_cocycles: big.len(),
        subgroup_cocycles: small.len(),
    })
}

/// Whether every cocycle of the subgroup is the restriction of a cocycle of the actor.
pub fn restriction_surjective(action: &GroupAction, sub: &Subgroup) -> Result<RestrictionReport> {
    restriction_test(action, sub, false)
}

/// Whether every cocycle class of the subgroup contains the restriction of a cocycle of the
/// actor.
pub fn restriction_surjective_classes(
    action: &GroupAction,
    sub: &Subgroup,
) -> Result<RestrictionReport> {
    restriction_test(action, sub, true)
}

/// Actions of `actor` on `space` determined by an assignment of automorphisms to the
/// actor's generators, for every assignment that extends to an action.
pub fn all_actions(actor: &Arc<FiniteGroup>, space: &Arc<FiniteGroup>) -> Vec<GroupAction> {
    let autos: Vec<Vec<Elem>> =
        crate::group::enumerate_homs(space, space, &crate::group::HomConstraints::new(), true)
            .map(|s| s.map(|h| h.map().to_vec()).collect())
            .unwrap_or_default();
    let k = actor.generators().len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<Vec<Elem>> = idx.iter().map(|&i| autos[i].clone()).collect();
        if let Ok(a) = GroupAction::from_generator_images(actor.clone(), space.clone(), &images) {
            out.push(a);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < autos.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::semidirect_product;
    use crate::group::{catalog, sections_of, HomConstraints};

    fn brute_cocycles(action: &GroupAction) -> usize {
        // all maps Q → A, filtered by the relation
        let (q, a) = (action.actor().order(), action.space().order());
        let mut count = 0;
        let total = a.pow(q as u32);
        for code in 0..total {
            let mut c = code;
            let values: Vec<Elem> = (0..q)
                .map(|_| {
                    let v = c % a;
                    c /= a;
                    v
                })
                .collect();
            count += Cocycle::new(action.clone(), values).is_ok() as usize;
        }
        count
    }

    #[test]
    fn small_counts() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let one = Arc::new(FiniteGroup::trivial());
        let t = GroupAction::trivial(&c2, &c2);
        assert_eq!(enumerate_cocycles(&t).count(), 2);
        assert_eq!(brute_cocycles(&t), 2);
        assert_eq!(
            enumerate_cocycles(&GroupAction::trivial(&c3, &one)).count(),
            1
        );
        assert_eq!(
            enumerate_cocycles(&GroupAction::trivial(&one, &c3)).count(),
            1
        );
        for action in all_actions(&c2, &c3)
            .iter()
            .chain(all_actions(&c3, &c2).iter())
        {
            assert_eq!(enumerate_cocycles(action).count(), brute_cocycles(action));
        }
        let s3 = catalog::group("S3").unwrap();
        for action in all_actions(&s3, &c3) {
            assert_eq!(enumerate_cocycles(&action).count(), brute_cocycles(&action));
        }
    }

    #[test]
    fn sections_round_trip() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        for action in all_actions(&c2, &c2)
            .into_iter()
            .chain(all_actions(&c2, &c3))
        {
            let sd = semidirect_product(&action).unwrap();
            let cocycles: Vec<Cocycle> = enumerate_cocycles(&action).collect();
            let sections: Vec<GroupHom> = sections_of(&sd.quot).unwrap().collect();
            assert_eq!(cocycles.len(), sections.len());
            for c in &cocycles {
                let s = cocycle_to_section(c, &sd).unwrap();
                assert!(sections.contains(&s));
                assert_eq!(&section_to_cocycle(&s, &sd).unwrap(), c);
            }
            let triv = cocycle_to_section(&Cocycle::trivial(&action), &sd).unwrap();
            assert_eq!(triv, sd.embed_actor);
        }
    }

    #[test]
    fn cohomology_classes() {
        let c2 = catalog::group("C2").unwrap();
        let t = GroupAction::trivial(&c2, &c2);
        let cs: Vec<Cocycle> = enumerate_cocycles(&t).collect();
        assert!(cohomologous(&cs[0], &cs[0]).unwrap());
        assert!(!cohomologous(&cs[0], &cs[1]).unwrap());
        // conjugate sections give cohomologous cocycles
        let sd = semidirect_product(&t).unwrap();
        for c in &cs {
            let s = cocycle_to_section(c, &sd).unwrap();
            for a in 0..2 {
                let e = sd.pair(a, 0);
                let conj: Vec<Elem> = (0..2).map(|q| sd.group.conj(s.apply(q), e)).collect();
                let s2 = GroupHom::new(c2.clone(), sd.group.clone(), conj).unwrap();
                assert!(cohomologous(c, &section_to_cocycle(&s2, &sd).unwrap()).unwrap());
            }
        }
        // an equivalence relation on a nonabelian example
        let s3 = catalog::group("S3").unwrap();
        let conj =
            GroupAction::conjugation(&crate::group::sylow_subgroup(&s3, 3).unwrap()).unwrap();
        let cs: Vec<Cocycle> = enumerate_cocycles(&conj).collect();
        for x in &cs {
            for y in &cs {
                let xy = cohomologous(x, y).unwrap();
                assert_eq!(xy, cohomologous(y, x).unwrap());
                for z in &cs {
                    if xy && cohomologous(y, z).unwrap() {
                        assert!(cohomologous(x, z).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let c4 = catalog::group("C4").unwrap();
        let c2 = catalog::group("C2").unwrap();
        let one = Arc::new(FiniteGroup::trivial());
        let whole = Subgroup::whole(&c4);
        assert!(
            restriction_surjective(&GroupAction::trivial(&c4, &c2), &whole)
                .unwrap()
                .surjective
        );
        let two = Subgroup::generated_by(&c4, &[c4.pow(c4.generators()[0], 2)]).unwrap();
        assert!(
            restriction_surjective(&GroupAction::trivial(&c4, &one), &two)
                .unwrap()
                .surjective
        );
        // the isomorphism from the order-2 subgroup onto C2 does not extend to C4
        let r = restriction_surjective(&GroupAction::trivial(&c4, &c2), &two).unwrap();
        assert!(!r.surjective);
        let w = r.witness.unwrap();
        assert_eq!(w.values(), &[0, 1]);
        let homs = crate::group::enumerate_homs(&c4, &c2, &HomConstraints::new(), false).unwrap();
        assert!(homs.into_iter().all(|h| h.apply(two.global(1)) == 0));
    }
}
