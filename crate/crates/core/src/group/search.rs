//! Backtracking enumeration of homomorphisms under side conditions.
//!
//! A homomorphism is fixed by the images of the source generators. The search assigns
//! generator images one at a time in increasing target index, and after each assignment
//! propagates the partial map over the subgroup generated so far, so every relation among
//! the first `j` generators is checked as soon as it becomes visible. Per-element side
//! conditions (pins, restrictions, image containment, commuting squares) are checked the
//! moment an element receives its image.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::finite::{Elem, FiniteGroup};
use crate::group::hom::GroupHom;
use crate::group::subgroup::Subgroup;

/// Side conditions for [`enumerate_homs`].
#[derive(Clone, Default, Debug)]
pub struct HomConstraints {
    commuting: Option<(GroupHom, GroupHom)>,
    image_in: Vec<(Option<Subgroup>, Subgroup)>,
    restriction: Vec<(Subgroup, GroupHom)>,
    pins: Vec<(Elem, Elem)>,
}

impl HomConstraints {
    pub fn new() -> Self {
        Self::default()
    }

    /// Demand `after ∘ θ = equals`, where `after` leaves the target and `equals` leaves
    /// the source.
    pub fn commuting(mut self, after: &GroupHom, equals: &GroupHom) -> Self {
        self.commuting = Some((after.clone(), equals.clone()));
        self
    }

    /// Demand `θ(source) ⊆ within`.
    pub fn image_in(mut self, within: &Subgroup) -> Self {
        self.image_in.push((None, within.clone()));
        self
    }

    /// Demand `θ(domain) ⊆ within` for a subgroup `domain` of the source.
    pub fn maps_into(mut self, domain: &Subgroup, within: &Subgroup) -> Self {
        self.image_in.push((Some(domain.clone()), within.clone()));
        self
    }

    /// Demand `θ|_sub = hom`, where `hom` goes from `sub.to_group()` to the target.
    pub fn restriction(mut self, sub: &Subgroup, hom: &GroupHom) -> Self {
        self.restriction.push((sub.clone(), hom.clone()));
        self
    }

    /// Demand `θ(x) = y`.
    pub fn pin(mut self, x: Elem, y: Elem) -> Self {
        self.pins.push((x, y));
        self
    }
}

/// Lazily enumerates every homomorphism `source → target` satisfying `constraints`,
/// each exactly once, ordered lexicographically by the tuple of generator images.
pub fn enumerate_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    constraints: &HomConstraints,
    surjective_only: bool,
) -> Result<HomSearch> {
    HomSearch::new(source.clone(), target.clone(), constraints, surjective_only)
}

/// All sections `s` of a surjection `epi: X → Y`, i.e. homomorphisms with `epi ∘ s = id`.
pub fn sections_of(epi: &GroupHom) -> Result<HomSearch> {
    if !epi.is_surjective() {
        let missing = epi.image().mask().iter().position(|&m| !m).unwrap_or(0);
        return Err(Error::NotSurjective("epimorphism".into(), missing));
    }
    let id = GroupHom::identity(epi.target());
    enumerate_homs(
        epi.target(),
        epi.source(),
        &HomConstraints::new().commuting(epi, &id),
        false,
    )
}

/// Whether two groups are isomorphic: equal fingerprints and a bijective homomorphism.
pub fn is_isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    if a.fingerprint() != b.fingerprint() {
        return false;
    }
    enumerate_homs(a, b, &HomConstraints::new(), true)
        .map(|mut s| s.next().is_some())
        .unwrap_or(false)
}

const NONE: u32 = u32::MAX;

struct Level {
    candidates: Vec<Elem>,
    pos: usize,
    trail_mark: usize,
}

/// Iterator returned by [`enumerate_homs`].
pub struct HomSearch {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    gens: Vec<Elem>,
    surjective_only: bool,
    fixed: Vec<u32>,
    allowed_id: Vec<u32>,
    allowed: Vec<Vec<bool>>,
    commuting: Option<(Vec<Elem>, Vec<Elem>)>,
    map: Vec<u32>,
    images: Vec<Elem>,
    trail: Vec<Elem>,
    levels: Vec<Level>,
    started: bool,
    done: bool,
}

impl HomSearch {
    fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        c: &HomConstraints,
        surjective_only: bool,
    ) -> Result<Self> {
        let n = source.order();
        let mut fixed = vec![NONE; n];
        let mut contradiction = false;
        let mut fix = |x: Elem, y: Elem, fixed: &mut Vec<u32>| -> Result<()> {
            if x >= n {
                return Err(Error::InvalidElement { index: x, order: n });
            }
            if y >= target.order() {
                return Err(Error::InvalidElement {
                    index: y,
                    order: target.order(),
                });
            }
            if fixed[x] != NONE && fixed[x] as usize != y {
                contradiction = true;
            }
            fixed[x] = y as u32;
            Ok(())
        };
        for &(x, y) in &c.pins {
            fix(x, y, &mut fixed)?;
        }
        for (sub, hom) in &c.restriction {
            if **sub.parent() != *source
                || **hom.source() != *sub.to_group()
                || **hom.target() != *target
            {
                return Err(Error::GroupMismatch(
                    "restriction constraint does not match the search groups".into(),
                ));
            }
            for (local, &x) in sub.members().iter().enumerate() {
                fix(x, hom.apply(local), &mut fixed)?;
            }
        }

        let mut allowed_id = vec![NONE; n];
        let mut allowed: Vec<Vec<bool>> = Vec::new();
        let mut dedup: HashMap<Vec<bool>, u32> = HashMap::new();
        for (domain, within) in &c.image_in {
            if **within.parent() != *target {
                return Err(Error::GroupMismatch(
                    "image constraint outside the target".into(),
                ));
            }
            if let Some(d) = domain {
                if **d.parent() != *source {
                    return Err(Error::GroupMismatch(
                        "image constraint domain outside the source".into(),
                    ));
                }
            }
            let members: Vec<Elem> = match domain {
                Some(d) => d.members().to_vec(),
                None => source.elements().collect(),
            };
            for x in members {
                let mask: Vec<bool> = if allowed_id[x] == NONE {
                    within.mask().to_vec()
                } else {
                    allowed[allowed_id[x] as usize]
                        .iter()
                        .zip(within.mask())
                        .map(|(&a, &b)| a && b)
                        .collect()
                };
                let id = *dedup.entry(mask.clone()).or_insert_with(|| {
                    allowed.push(mask);
                    (allowed.len() - 1) as u32
                });
                allowed_id[x] = id;
            }
        }

        let commuting = match &c.commuting {
            Some((after, equals)) => {
                if **after.source() != *target || **equals.source() != *source {
                    return Err(Error::GroupMismatch(
                        "commuting constraint maps do not leave target and source".into(),
                    ));
                }
                if *after.target() != *equals.target() {
                    return Err(Error::GroupMismatch(
                        "commuting constraint maps have different targets".into(),
                    ));
                }
                Some((after.map().to_vec(), equals.map().to_vec()))
            }
            None => None,
        };

        let gens = source.generators().to_vec();
        let k = gens.len();
        Ok(HomSearch {
            map: vec![NONE; n],
            source,
            target,
            gens,
            surjective_only,
            fixed,
            allowed_id,
            allowed,
            commuting,
            images: vec![0; k],
            trail: Vec::new(),
            levels: Vec::new(),
            started: false,
            done: contradiction,
        })
    }

    #[inline]
    fn admissible(&self, x: Elem, v: Elem) -> bool {
        let f = self.fixed[x];
        if f != NONE && f as usize != v {
            return false;
        }
        let a = self.allowed_id[x];
        if a != NONE && !self.allowed[a as usize][v] {
            return false;
        }
        if let Some((after, equals)) = &self.commuting {
            if after[v] != equals[x] {
                return false;
            }
        }
        true
    }

    fn candidates(&self, j: usize) -> Vec<Elem> {
        let s = self.gens[j];
        if self.map[s] != NONE {
            return vec![self.map[s] as usize];
        }
        if self.fixed[s] != NONE {
            let v = self.fixed[s] as usize;
            return if self.admissible_gen(s, v) {
                vec![v]
            } else {
                vec![]
            };
        }
        self.target
            .elements()
            .filter(|&v| self.admissible_gen(s, v))
            .collect()
    }

    fn admissible_gen(&self, s: Elem, v: Elem) -> bool {
        self.source
            .elem_order(s)
            .is_multiple_of(self.target.elem_order(v))
            && self.admissible(s, v)
    }

    fn assign(&mut self, y: Elem, v: Elem) -> bool {
        if !self.admissible(y, v) {
            return false;
        }
        self.map[y] = v as u32;
        self.trail.push(y);
        true
    }

    /// Sets the image of generator `j` and propagates over `<s_0..s_j>`.
    fn extend(&mut self, j: usize, t: Elem) -> bool {
        self.images[j] = t;
        let src = self.source.clone();
        let tgt = self.target.clone();
        let sj = self.gens[j];
        let old_len = self.trail.len();
        // old domain = {0} ∪ trail[..old_len]
        for idx in 0..=old_len {
            let x = if idx == 0 { 0 } else { self.trail[idx - 1] };
            let y = src.mul(x, sj);
            let v = tgt.mul(self.map[x] as usize, t);
            if self.map[y] == NONE {
                if !self.assign(y, v) {
                    return false;
                }
            } else if self.map[y] as usize != v {
                return false;
            }
        }
        let mut idx = old_len;
        while idx < self.trail.len() {
            let x = self.trail[idx];
            let fx = self.map[x] as usize;
            for i in 0..=j {
                let y = src.mul(x, self.gens[i]);
                let v = tgt.mul(fx, self.images[i]);
                if self.map[y] == NONE {
                    if !self.assign(y, v) {
                        return false;
                    }
                } else if self.map[y] as usize != v {
                    return false;
                }
            }
            idx += 1;
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let y = self.trail.pop().expect("trail is non-empty");
            self.map[y] = NONE;
        }
    }

    fn emit(&self) -> Option<GroupHom> {
        let map: Vec<Elem> = self.map.iter().map(|&v| v as usize).collect();
        if self.surjective_only {
            let mut hit = vec![false; self.target.order()];
            let mut count = 0;
            for &v in &map {
                if !hit[v] {
                    hit[v] = true;
                    count += 1;
                }
            }
            if count != self.target.order() {
                return None;
            }
        }
        Some(GroupHom::from_map_unchecked(
            self.source.clone(),
            self.target.clone(),
            map,
        ))
    }
}

impl Iterator for HomSearch {
    type Item = GroupHom;

    fn next(&mut self) -> Option<GroupHom> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if !self.admissible(0, 0) {
                self.done = true;
                return None;
            }
            self.map[0] = 0;
            if self.gens.is_empty() {
                self.done = true;
                return self.emit();
            }
            self.levels.push(Level {
                candidates: self.candidates(0),
                pos: 0,
                trail_mark: 0,
            });
        }
        let k = self.gens.len();
        loop {
            let Some(level) = self.levels.last_mut() else {
                self.done = true;
                return None;
            };
            let mark = level.trail_mark;
            if level.pos == level.candidates.len() {
                self.levels.pop();
                self.undo_to(mark);
                continue;
            }
            let t = level.candidates[level.pos];
            level.pos += 1;
            self.undo_to(mark);
            let j = self.levels.len() - 1;
            if !self.extend(j, t) {
                continue;
            }
            if j + 1 == k {
                if let Some(h) = self.emit() {
                    return Some(h);
                }
            } else {
                let candidates = self.candidates(j + 1);
                self.levels.push(Level {
                    candidates,
                    pos: 0,
                    trail_mark: self.trail.len(),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    /// Brute force over every function source → target.
    fn brute_count(s: &FiniteGroup, t: &FiniteGroup, surjective: bool) -> usize {
        let n = s.order();
        let m = t.order();
        let mut f = vec![0usize; n];
        let mut count = 0;
        loop {
            let hom = (0..n).all(|x| (0..n).all(|y| f[s.mul(x, y)] == t.mul(f[x], f[y])));
            if hom {
                let mut hit = vec![false; m];
                f.iter().for_each(|&v| hit[v] = true);
                if !surjective || hit.iter().all(|&h| h) {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                f[i] += 1;
                if f[i] < m {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn c2_to_c2_has_two() {
        let c2 = catalog::group("C2").unwrap();
        let homs: Vec<_> = enumerate_homs(&c2, &c2, &HomConstraints::new(), false)
            .unwrap()
            .collect();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[0].gen_images(), vec![0]);
        assert_eq!(homs[1].gen_images(), vec![1]);
    }

    #[test]
    fn s3_onto_c2_is_unique() {
        let s3 = catalog::group("S3").unwrap();
        let c2 = catalog::group("C2").unwrap();
        assert_eq!(brute_count(&s3, &c2, true), 1);
        let n = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)
            .unwrap()
            .count();
        assert_eq!(n, 1);
    }

    #[test]
    fn c2_onto_c3_is_empty() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        assert_eq!(
            enumerate_homs(&c2, &c3, &HomConstraints::new(), true)
                .unwrap()
                .count(),
            0
        );
    }

    #[test]
    fn unconstrained_counts_match_brute_force() {
        // |source| * |target| <= 64 keeps the function space small
        let groups = catalog::up_to_order(8);
        for s in &groups {
            for t in &groups {
                if s.order() * t.order() > 64 || (t.order() as f64).powi(s.order() as i32) > 3e6 {
                    continue;
                }
                let expected = brute_count(s, t, false);
                let homs: Vec<_> = enumerate_homs(s, t, &HomConstraints::new(), false)
                    .unwrap()
                    .collect();
                assert_eq!(homs.len(), expected, "{} -> {}", s.name(), t.name());
                for h in &homs {
                    assert!(h.is_homomorphism());
                }
                // lexicographic, duplicate free
                for w in homs.windows(2) {
                    assert!(w[0].gen_images() < w[1].gen_images());
                }
            }
        }
    }

    #[test]
    fn sections_of_small_quotients() {
        let c4 = catalog::group("C4").unwrap();
        let c2 = catalog::group("C2").unwrap();
        let q = GroupHom::from_gen_images(c4.clone(), c2.clone(), &[1]).unwrap();
        assert_eq!(sections_of(&q).unwrap().count(), 0);

        let v4 = catalog::group("V4").unwrap();
        // kill the first factor
        let p = GroupHom::from_gen_images(v4.clone(), c2.clone(), &[0, 1]).unwrap();
        let secs: Vec<_> = sections_of(&p).unwrap().collect();
        assert_eq!(secs.len(), 2);
        for s in &secs {
            assert_eq!(s.then(&p).unwrap(), GroupHom::identity(&c2));
        }

        let s3 = catalog::group("S3").unwrap();
        assert_eq!(sections_of(&GroupHom::identity(&s3)).unwrap().count(), 1);

        let not_onto = GroupHom::trivial(&c4, &c2);
        assert!(sections_of(&not_onto).is_err());
    }

    #[test]
    fn pins_restrictions_and_images() {
        let s3 = catalog::group("S3").unwrap();
        let all: Vec<_> = enumerate_homs(&s3, &s3, &HomConstraints::new(), false)
            .unwrap()
            .collect();
        // 6 automorphisms + 3 maps onto an order-2 subgroup + trivial
        assert_eq!(all.len(), 10);
        let t = s3.generators()[0];
        let pinned = enumerate_homs(&s3, &s3, &HomConstraints::new().pin(t, t), false)
            .unwrap()
            .count();
        assert_eq!(pinned, all.iter().filter(|h| h.apply(t) == t).count());

        let c3 = Subgroup::generated_by(&s3, &[s3.generators()[1]]).unwrap();
        let into_c3 = enumerate_homs(&s3, &s3, &HomConstraints::new().image_in(&c3), false)
            .unwrap()
            .count();
        assert_eq!(into_c3, 1);

        let id = GroupHom::identity(&s3);
        let restr = id.restrict(&c3, &Subgroup::whole(&s3)).unwrap();
        let fixing_c3 = enumerate_homs(
            &s3,
            &s3,
            &HomConstraints::new().restriction(&c3, &restr),
            false,
        )
        .unwrap()
        .count();
        // automorphisms fixing a 3-cycle pointwise: inner by elements of A3
        assert_eq!(fixing_c3, 3);

        let bad = enumerate_homs(&s3, &s3, &HomConstraints::new().pin(0, 1), false)
            .unwrap()
            .count();
        assert_eq!(bad, 0);
    }

    #[test]
    fn isomorphism_screen() {
        let d4 = catalog::group("D4").unwrap();
        let q8 = catalog::group("Q8").unwrap();
        assert_eq!(d4.fingerprint(), q8.fingerprint());
        assert!(!is_isomorphic(&d4, &q8));
        let c6 = catalog::group("C6").unwrap();
        assert!(is_isomorphic(&c6, &catalog::cyclic(6)));
        assert!(!is_isomorphic(&c6, &catalog::group("S3").unwrap()));
    }
}
