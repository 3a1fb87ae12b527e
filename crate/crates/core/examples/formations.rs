//! Formation membership and its closure under subgroups, quotients and fiber products.

use projpair::constructions::fiber_product;
use projpair::group::normal::composition_factors;
use projpair::group::{
    catalog, enumerate_homs, formation_member, normal_subgroups, quotient, FormationSpec,
    HomConstraints,
};

fn main() -> projpair::Result<()> {
    let specs = [
        ("2-groups", FormationSpec::p_group(2)?),
        ("solvable", FormationSpec::Solvable),
        (
            "factors in {C2, C3}",
            FormationSpec::CompositionFactorsIn(vec![
                catalog::group("C2").expect("catalog"),
                catalog::group("C3").expect("catalog"),
            ]),
        ),
    ];
    for name in catalog::NAMES {
        let g = catalog::group(name).expect("catalog");
        let factors: Vec<usize> = composition_factors(&g).iter().map(|f| f.order()).collect();
        let member: Vec<String> = specs
            .iter()
            .map(|(label, f)| format!("{label}: {}", formation_member(&g, f)))
            .collect();
        println!("{name:>4} factors {factors:?}; {}", member.join(", "));
    }

    // quotients of a solvable group stay solvable
    let s4 = catalog::group("S4").expect("catalog");
    for n in normal_subgroups(&s4) {
        let (q, _) = quotient(&n)?;
        assert!(formation_member(&q, &FormationSpec::Solvable));
    }

    // S4 x_C2 S3 over the two sign maps
    let c2 = catalog::group("C2").expect("catalog");
    let s3 = catalog::group("S3").expect("catalog");
    let sign4 = enumerate_homs(&s4, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let sign3 = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let fp = fiber_product(&sign4, &sign3)?;
    println!(
        "S4 x_C2 S3: order {}, solvable {}",
        fp.total.order(),
        formation_member(&fp.total, &FormationSpec::Solvable)
    );
    Ok(())
}
