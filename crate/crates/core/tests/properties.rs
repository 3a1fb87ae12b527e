use std::sync::Arc;

use proptest::prelude::*;

use projpair::cohomology::{all_actions, enumerate_cocycles};
use projpair::constructions::{direct_product, fiber_power, fiber_product};
use projpair::group::{
    catalog, enumerate_homs, normal_subgroups, quotient, FiniteGroup, GroupHom, HomConstraints,
    Subgroup,
};
use projpair::io;

const SMALL: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8", "A4", "D6", "C8", "C12",
];

fn group(i: usize) -> Arc<FiniteGroup> {
    catalog::group(SMALL[i % SMALL.len()]).unwrap()
}

fn homs(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, surjective: bool) -> Vec<GroupHom> {
    enumerate_homs(g, h, &HomConstraints::new(), surjective)
        .unwrap()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_groups(gi in 0usize..64, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let g = group(gi);
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.pow(a, g.elem_order(a)), 0);
    }

    #[test]
    fn words_evaluate_back(gi in 0usize..64, x in 0usize..1000) {
        let g = group(gi);
        let x = x % g.order();
        prop_assert_eq!(g.eval_word(&g.signed_word(x)).unwrap(), x);
    }

    #[test]
    fn kernel_and_image_orders(gi in 0usize..64, hi in 0usize..64, k in 0usize..1000) {
        let (g, h) = (group(gi), group(hi));
        let all = homs(&g, &h, false);
        let f = &all[k % all.len()];
        prop_assert!(f.is_homomorphism());
        prop_assert_eq!(f.kernel().order() * f.image().order(), g.order());
        prop_assert!(f.kernel().is_normal());
    }

    #[test]
    fn quotient_orders(gi in 0usize..64, k in 0usize..100) {
        let g = group(gi);
        let normals = normal_subgroups(&g);
        let n = &normals[k % normals.len()];
        let (q, map) = quotient(n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert_eq!(map.kernel(), n.clone());
        prop_assert!(map.is_surjective());
    }

    #[test]
    fn fiber_product_counts_fibers(gi in 0usize..64, hi in 0usize..64, bi in 0usize..3, j in 0usize..100, k in 0usize..100) {
        let b = catalog::group(["C2", "C3", "S3"][bi]).unwrap();
        let (g, h) = (group(gi), group(hi));
        let left = homs(&g, &b, true);
        let right = homs(&h, &b, true);
        prop_assume!(!left.is_empty() && !right.is_empty());
        let (beta, alpha) = (&left[j % left.len()], &right[k % right.len()]);
        let fp = fiber_product(beta, alpha).unwrap();
        let expected: usize = b
            .elements()
            .map(|y| {
                let over = |f: &GroupHom| f.source().elements().filter(|&x| f.apply(x) == y).count();
                over(beta) * over(alpha)
            })
            .sum();
        prop_assert_eq!(fp.total.order(), expected);
        prop_assert!(fp.verify());
        prop_assert_eq!(fp.left_proj.then(beta).unwrap(), fp.right_proj.then(alpha).unwrap());
    }

    #[test]
    fn fiber_power_order(hi in 0usize..64, n in 1usize..4) {
        let h = group(hi);
        let c2 = catalog::group("C2").unwrap();
        let epis = homs(&h, &c2, true);
        prop_assume!(!epis.is_empty());
        let d = fiber_power(&epis[0], n).unwrap();
        let k = epis[0].kernel().order();
        prop_assert_eq!(d.total.order(), 2 * k.pow(n as u32));
        for p in &d.projections {
            prop_assert_eq!(p.then(&epis[0]).unwrap(), d.beta_hat.clone());
        }
    }

    #[test]
    fn cocycles_satisfy_the_relation(qi in 0usize..4, ai in 0usize..4, k in 0usize..100) {
        let q = catalog::group(["C2", "C3", "C4", "V4"][qi]).unwrap();
        let a = catalog::group(["C2", "C3", "V4", "S3"][ai]).unwrap();
        let actions = all_actions(&q, &a);
        let action = &actions[k % actions.len()];
        for x in enumerate_cocycles(action) {
            for q1 in q.elements() {
                for q2 in q.elements() {
                    let lhs = x.value(q.mul(q1, q2));
                    let rhs = a.mul(x.value(q1), action.act(q1, x.value(q2)));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn subgroup_views_round_trip(gi in 0usize..64, x in 0usize..1000, y in 0usize..1000) {
        let g = group(gi);
        let (x, y) = (x % g.order(), y % g.order());
        let big = Subgroup::generated_by(&g, &[x, y]).unwrap();
        let small = Subgroup::generated_by(&g, &[x]).unwrap();
        let local = big.localize(&small).unwrap();
        prop_assert_eq!(local.order(), small.order());
        prop_assert_eq!(big.globalize(&local), small);
        prop_assert_eq!(big.to_group().order(), big.order());
    }

    #[test]
    fn serialized_groups_keep_words(gi in 0usize..64, hi in 0usize..64) {
        let (g, h) = (group(gi), group(hi));
        let p = direct_product(&g, &h).unwrap().group;
        let doc = io::group_json(&p, serde_json::Value::Null);
        let back = io::Loader::default().group(&doc, "g").unwrap();
        prop_assert_eq!(&*back, &*p);
        for x in p.elements() {
            prop_assert_eq!(io::element(&back, &io::word_json(&p, x), "w").unwrap(), x);
        }
    }
}
