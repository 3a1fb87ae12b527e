use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::finite::{is_prime, Elem, FiniteGroup};
use crate::group::subgroup::{quotient, Subgroup};

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<Elem>> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for x in group.elements() {
        if seen[x] {
            continue;
        }
        let mut class = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &g in group.generators() {
                let z = group.conj(y, g);
                if !seen[z] {
                    seen[z] = true;
                    class.push(z);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure(group: &Arc<FiniteGroup>, seed: &[Elem]) -> Subgroup {
    let mut current = Subgroup::generated_by(group, seed).expect("seed elements are in range");
    loop {
        let mut extra: Vec<Elem> = current.generators();
        let before = extra.len();
        for &x in current.members() {
            for &g in group.generators() {
                let c = group.conj(x, g);
                if !current.contains(c) {
                    extra.push(c);
                }
            }
        }
        if extra.len() == before {
            return current;
        }
        current = Subgroup::generated_by(group, &extra).expect("elements are in range");
    }
}

/// Every normal subgroup, sorted by order and then by member list.
///
/// Normal subgroups are exactly the unions of conjugacy classes closed under products; they
/// are produced as joins of the normal closures of single classes.
pub fn normal_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<(usize, Vec<Elem>)> = BTreeSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, list: &mut Vec<Subgroup>| {
        if found.insert((s.order(), s.members().to_vec())) {
            list.push(s);
        }
    };
    push(Subgroup::trivial(group), &mut list);
    let atoms: Vec<Subgroup> = conjugacy_classes(group)
        .into_iter()
        .skip(1)
        .map(|c| normal_closure(group, &c[..1]))
        .collect();
    for a in &atoms {
        push(a.clone(), &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        for a in &atoms {
            if a.is_subgroup_of(&list[i]) {
                continue;
            }
            let j = list[i].join(a);
            push(j, &mut list);
        }
        i += 1;
    }
    list.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    list
}

/// `⋂_{x ∈ group} sub^x`, the largest subgroup of `sub` normal in the parent.
pub fn normal_core(sub: &Subgroup) -> Subgroup {
    let group = sub.parent();
    let mut core = sub.clone();
    for x in group.elements() {
        if core.is_trivial() {
            break;
        }
        core = core.intersection(&sub.conjugate(x));
    }
    core
}

/// Core of `sub` under conjugation by the elements of `within` only.
pub fn core_in(sub: &Subgroup, within: &Subgroup) -> Subgroup {
    let mut core = sub.clone();
    for &x in within.members() {
        core = core.intersection(&sub.conjugate(x));
    }
    core
}

/// A Sylow `p`-subgroup, built by repeatedly adjoining the first element (in canonical
/// order) of the normalizer whose coset has order `p`.
pub fn sylow_subgroup(group: &Arc<FiniteGroup>, p: usize) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let mut target = 1;
    let mut n = group.order();
    while n.is_multiple_of(p) {
        n /= p;
        target *= p;
    }
    let mut current = Subgroup::trivial(group);
    while current.order() < target {
        let next = group.elements().find(|&x| {
            !current.contains(x)
                && current.contains(group.pow(x, p))
                && current.is_normalized_by(&[x])
        });
        let x = next.expect("a non-Sylow p-subgroup has a normalizer element of order p mod it");
        let mut seed = current.generators();
        seed.push(x);
        current = Subgroup::generated_by(group, &seed)?;
    }
    Ok(current)
}

/// Subgroup generated by all commutators.
pub fn derived_subgroup(group: &Arc<FiniteGroup>) -> Subgroup {
    let gens = group.generators();
    // normal closure of generator commutators is the derived subgroup
    let mut seed = Vec::new();
    for &a in gens {
        for &b in gens {
            let c = group.commutator(a, b);
            if c != 0 {
                seed.push(c);
            }
        }
    }
    normal_closure(group, &seed)
}

/// Derived series as standalone groups, starting with `group` and ending at its perfect core.
pub fn derived_series(group: &Arc<FiniteGroup>) -> Vec<Arc<FiniteGroup>> {
    let mut series = vec![group.clone()];
    loop {
        let g = series.last().expect("non-empty").clone();
        let d = derived_subgroup(&g);
        if d.order() == g.order() {
            return series;
        }
        series.push(d.to_group());
    }
}

pub fn is_solvable(group: &Arc<FiniteGroup>) -> bool {
    derived_series(group)
        .last()
        .map(|g| g.is_trivial())
        .unwrap_or(true)
}

pub fn is_simple(group: &Arc<FiniteGroup>) -> bool {
    group.order() > 1 && normal_subgroups(group).len() == 2
}

/// Composition factors from the top down: each step passes to a maximal normal subgroup
/// (a normal subgroup of largest proper order).
pub fn composition_factors(group: &Arc<FiniteGroup>) -> Vec<Arc<FiniteGroup>> {
    let mut factors = Vec::new();
    let mut current = group.clone();
    while current.order() > 1 {
        let normals = normal_subgroups(&current);
        let maximal = normals
            .iter()
            .rev()
            .find(|n| n.order() < current.order())
            .expect("the trivial subgroup is proper")
            .clone();
        let (q, _) = quotient(&maximal).expect("normal subgroups have quotients");
        factors.push(q);
        current = maximal.to_group();
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn sub_of_order(g: &Arc<FiniteGroup>, order: usize) -> Subgroup {
        let x = g.elements().find(|&x| g.elem_order(x) == order).unwrap();
        Subgroup::generated_by(g, &[x]).unwrap()
    }

    #[test]
    fn core_of_transposition_in_s3_is_trivial() {
        let s3 = catalog::group("S3").unwrap();
        let t = sub_of_order(&s3, 2);
        // oracle: intersect the three conjugates directly
        let mut inter = t.clone();
        for x in s3.elements() {
            inter = inter.intersection(&t.conjugate(x));
        }
        assert!(inter.is_trivial());
        assert_eq!(normal_core(&t), inter);
        assert_eq!(normal_core(&Subgroup::whole(&s3)), Subgroup::whole(&s3));
        let c4 = catalog::group("C4").unwrap();
        let two = sub_of_order(&c4, 2);
        assert_eq!(normal_core(&two), two);
    }

    #[test]
    fn core_is_largest_normal_subgroup_inside() {
        for g in catalog::up_to_order(24) {
            for x in g.elements() {
                let s = Subgroup::generated_by(&g, &[x]).unwrap();
                let core = normal_core(&s);
                assert!(core.is_normal());
                assert!(core.is_subgroup_of(&s));
                for &y in s.members() {
                    if core.contains(y) {
                        continue;
                    }
                    let bigger = core.join(&Subgroup::generated_by(&g, &[y]).unwrap());
                    assert!(!bigger.is_normal() || !bigger.is_subgroup_of(&s));
                }
            }
        }
    }

    #[test]
    fn sylow_examples() {
        let s3 = catalog::group("S3").unwrap();
        let p3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(p3.order(), 3);
        assert_eq!(p3, sub_of_order(&s3, 3));
        let a5 = catalog::group("A5").unwrap();
        let p2 = sylow_subgroup(&a5, 2).unwrap();
        assert_eq!(p2.order(), 4);
        // exhaustive: every order-4 subgroup of A5 is a Klein group
        assert!(p2.members().iter().all(|&x| a5.elem_order(x) <= 2));
        let c5 = catalog::group("C5").unwrap();
        assert!(sylow_subgroup(&c5, 3).unwrap().is_trivial());
        assert!(sylow_subgroup(&c5, 4).is_err());
        let s4 = catalog::group("S4").unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order(), 8);
    }

    #[test]
    fn normal_subgroup_counts() {
        let expect = [
            ("S3", 3),
            ("A4", 3),
            ("S4", 4),
            ("A5", 2),
            ("D4", 6),
            ("Q8", 6),
            ("C12", 6),
            ("V4", 5),
        ];
        for (name, count) in expect {
            let g = catalog::group(name).unwrap();
            let ns = normal_subgroups(&g);
            assert_eq!(ns.len(), count, "{name}");
            assert!(ns.iter().all(|n| n.is_normal()));
        }
    }

    #[test]
    fn solvability_and_composition() {
        assert!(is_solvable(&catalog::group("S4").unwrap()));
        assert!(!is_solvable(&catalog::group("A5").unwrap()));
        assert!(is_simple(&catalog::group("A5").unwrap()));
        assert!(!is_simple(&catalog::group("A4").unwrap()));
        let orders: Vec<usize> = composition_factors(&catalog::group("S4").unwrap())
            .iter()
            .map(|f| f.order())
            .collect();
        assert_eq!(orders, vec![2, 3, 2, 2]);
        let s5 = composition_factors(&catalog::group("S5").unwrap());
        assert_eq!(
            s5.iter().map(|f| f.order()).collect::<Vec<_>>(),
            vec![2, 60]
        );
    }
}
