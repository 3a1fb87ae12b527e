use std::sync::Arc;

use crate::constructions::wreath_product;
use crate::error::{Error, Result};
use crate::group::normal::{core_in, is_simple};
use crate::group::{
    normal_subgroups, quotient, sylow_subgroup, FiniteGroup, FinitePair, GroupHom, Subgroup,
};

use super::{solve_weak_prescribed, DoubleEmbeddingProblem, WeakSolution};

/// A subgroup `M ≤ L` with `N = Gm ∩ M` and `Gm · M = L`, and the map `θ: L → Gm/N̂` it
/// was cut out of.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub m: Subgroup,
    pub theta: GroupHom,
}

/// Looks for `M ≤ L` with `N = Gm ∩ M` and `Gm · M = L` by extending the quotient map
/// `Gm → Gm/N̂` to `L`, where `N̂` is the core of `N` in `Gm`.
///
/// `None` means no such extension exists; a finite pair can fail this even when the
/// corresponding statement holds for every projective pair it approximates.
pub fn split_over_subgroup(pair: &FinitePair, n: &Subgroup) -> Result<Option<Splitting>> {
    let l = pair.ambient();
    let gm = pair.distinguished();
    if **n.parent() != **l || !n.is_subgroup_of(gm) {
        return Err(Error::Precondition(
            "N is not a subgroup of the distinguished subgroup".into(),
        ));
    }
    let n_hat = core_in(n, gm);
    let (q_group, q) = quotient(&gm.localize(&n_hat)?)?;
    let one = Arc::new(FiniteGroup::trivial());
    let dep = DoubleEmbeddingProblem::new(
        pair.clone(),
        Subgroup::whole(&q_group),
        Subgroup::whole(&one),
        GroupHom::trivial(&q_group, &one),
        GroupHom::trivial(l, &one),
    )?;
    // G is the whole quotient, so eta is the quotient map read into G's standalone copy
    let eta = GroupHom::new(q.source().clone(), dep.g().to_group(), q.map().to_vec())?;
    let Some(WeakSolution { theta, .. }) = solve_weak_prescribed(&dep, &eta)? else {
        return Ok(None);
    };
    let n_bar = q.image_of(&gm.localize(n)?);
    let m = theta.preimage(&n_bar);
    assert_eq!(gm.intersection(&m), *n, "N = Gm ∩ M");
    assert_eq!(gm.order() * m.order(), l.order() * n.order(), "Gm · M = L");
    if gm.localize(n)?.is_normal() {
        assert!(m.is_normal(), "M is normal when N is normal in Gm");
    }
    Ok(Some(Splitting { m, theta }))
}

/// A normal complement `M` of `Gm` in `L` (so `L = M ⋊ Gm`), when the search finds one.
pub fn semidirect_complement(pair: &FinitePair) -> Result<Option<Splitting>> {
    split_over_subgroup(pair, &Subgroup::trivial(pair.ambient()))
}

/// The problem that rules out normal pairs: higher problem `ν: L → G` against the quotient
/// `A ≀ G → G`, lower problem `Gm → 1` against `A¹ → 1`, and `η` re-targeted into the
/// coordinate copy `A¹`.
///
/// Requires `Gm ⊴ L`, `η: Gm → A` and `ν: L → G` surjective onto nontrivial groups and
/// `Gm ≤ ker ν`, so that the lower target is trivial as the diagram demands.
pub fn wreath_obstruction_dep(
    pair: &FinitePair,
    eta: &GroupHom,
    nu: &GroupHom,
) -> Result<(DoubleEmbeddingProblem, GroupHom)> {
    let gm = pair.distinguished();
    if !gm.is_normal() {
        return Err(Error::NotNormal("the distinguished subgroup".into()));
    }
    if **eta.source() != *gm.to_group() || **nu.source() != **pair.ambient() {
        return Err(Error::GroupMismatch(
            "eta must leave Gm and nu must leave L".into(),
        ));
    }
    let (a, g) = (eta.target().clone(), nu.target().clone());
    if a.is_trivial() || g.is_trivial() {
        return Err(Error::Precondition(
            "wreath obstruction needs nontrivial targets".into(),
        ));
    }
    if !eta.is_surjective() {
        return Err(Error::NotSurjective(
            "eta".into(),
            eta.image().mask().iter().position(|&m| !m).unwrap_or(0),
        ));
    }
    if !nu.is_surjective() {
        return Err(Error::NotSurjective(
            "nu".into(),
            nu.image().mask().iter().position(|&m| !m).unwrap_or(0),
        ));
    }
    if !gm.is_subgroup_of(&nu.kernel()) {
        return Err(Error::Precondition(
            "nu must vanish on the distinguished subgroup".into(),
        ));
    }
    let w = wreath_product(&a, &g)?;
    let a1 = w.coord_embed.image();
    let dep = DoubleEmbeddingProblem::new(
        pair.clone(),
        a1.clone(),
        Subgroup::trivial(&g),
        w.top_quot.clone(),
        nu.clone(),
    )?;
    let map = eta
        .map()
        .iter()
        .map(|&x| {
            a1.local_index(w.coord_embed.apply(x))
                .expect("coordinate copy")
        })
        .collect();
    let prescribed = GroupHom::new(gm.to_group(), a1.to_group(), map)?;
    Ok((dep, prescribed))
}

/// Whether `L = M ⋊ P` is impossible for a Sylow `p`-subgroup `P` of `q`, given an
/// epimorphism `psi` onto a nonabelian simple group of order divisible by `p`.
pub fn sylow_obstruction_check(q: &Arc<FiniteGroup>, p: usize, psi: &GroupHom) -> Result<bool> {
    let s = psi.target();
    if **psi.source() != **q {
        return Err(Error::GroupMismatch("psi does not leave Q".into()));
    }
    if !psi.is_surjective() {
        return Err(Error::NotSurjective(
            "psi".into(),
            psi.image().mask().iter().position(|&m| !m).unwrap_or(0),
        ));
    }
    if s.is_abelian() || !is_simple(s) {
        return Err(Error::Precondition(format!(
            "{} is not nonabelian simple",
            s.name()
        )));
    }
    if p == 0 || !s.order().is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "{p} does not divide |S| = {}",
            s.order()
        )));
    }
    let sylow = sylow_subgroup(q, p)?;
    let splits = normal_subgroups(q)
        .iter()
        .any(|m| m.order() * sylow.order() == q.order() && m.intersection(&sylow).is_trivial());
    Ok(!splits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::direct_product;
    use crate::group::catalog;

    fn pair_with(l: &Arc<FiniteGroup>, order: usize) -> FinitePair {
        let x = l.elements().find(|&x| l.elem_order(x) == order).unwrap();
        FinitePair::generated(l, &[x]).unwrap()
    }

    #[test]
    fn complements() {
        let s3 = catalog::group("S3").unwrap();
        let sp = semidirect_complement(&pair_with(&s3, 2)).unwrap().unwrap();
        assert_eq!(sp.m.order(), 3);
        assert!(sp.m.is_normal());
        let c4 = catalog::group("C4").unwrap();
        assert!(semidirect_complement(&pair_with(&c4, 2)).unwrap().is_none());
        let trivial = FinitePair::new(s3.clone(), Subgroup::trivial(&s3)).unwrap();
        assert!(semidirect_complement(&trivial)
            .unwrap()
            .unwrap()
            .m
            .is_whole());
    }

    #[test]
    fn splitting_over_subgroups() {
        let s4 = catalog::group("S4").unwrap();
        let whole = FinitePair::new(s4.clone(), Subgroup::whole(&s4)).unwrap();
        let n = pair_with(&s4, 3).distinguished().clone();
        assert_eq!(split_over_subgroup(&whole, &n).unwrap().unwrap().m, n);
        let c2 = catalog::group("C2").unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        let pair = FinitePair::new(v.group.clone(), v.inj_left.image()).unwrap();
        let sp = split_over_subgroup(&pair, &Subgroup::trivial(&v.group))
            .unwrap()
            .unwrap();
        assert!(sp.m.intersection(pair.distinguished()).is_trivial());
        assert_eq!(sp.m.order(), 2);
        let outside = v.inj_right.image();
        assert!(split_over_subgroup(&pair, &outside).is_err());
    }

    #[test]
    fn wreath_obstruction_on_v4() {
        let c2 = catalog::group("C2").unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        let gm = v.inj_left.image();
        let pair = FinitePair::new(v.group.clone(), gm.clone()).unwrap();
        let eta = GroupHom::new(gm.to_group(), c2.clone(), vec![0, 1]).unwrap();
        let (dep, prescribed) = wreath_obstruction_dep(&pair, &eta, &v.proj_right).unwrap();
        assert_eq!(dep.h().order(), 8);
        assert!(dep.is_valid());
        assert!(solve_weak_prescribed(&dep, &prescribed).unwrap().is_none());
        let one = Arc::new(FiniteGroup::trivial());
        let to_one = GroupHom::trivial(&gm.to_group(), &one);
        assert!(wreath_obstruction_dep(&pair, &to_one, &v.proj_right).is_err());
    }

    #[test]
    fn sylow_in_a5() {
        let a5 = catalog::group("A5").unwrap();
        let id = GroupHom::identity(&a5);
        assert!(sylow_obstruction_check(&a5, 2, &id).unwrap());
        assert!(sylow_obstruction_check(&a5, 5, &id).unwrap());
        assert!(sylow_obstruction_check(&a5, 7, &id).is_err());
        let s3 = catalog::group("S3").unwrap();
        assert!(sylow_obstruction_check(&s3, 3, &GroupHom::identity(&s3)).is_err());
    }
}
