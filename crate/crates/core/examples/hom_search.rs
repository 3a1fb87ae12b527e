//! Constrained homomorphism search: counting maps, sections of an epimorphism and the
//! fingerprint-screened isomorphism test.

use projpair::group::{
    catalog, enumerate_homs, is_isomorphic, sections_of, GroupHom, HomConstraints,
};

fn main() -> projpair::Result<()> {
    let s3 = catalog::group("S3").expect("catalog");
    let s4 = catalog::group("S4").expect("catalog");
    let c2 = catalog::group("C2").expect("catalog");

    let all = enumerate_homs(&s3, &s4, &HomConstraints::new(), false)?.count();
    let injective = enumerate_homs(&s3, &s4, &HomConstraints::new(), false)?
        .filter(GroupHom::is_injective)
        .count();
    println!("homs S3 -> S4: {all}, of which injective: {injective}");

    // maps S4 -> S3 that agree with the sign character
    let sign4 = enumerate_homs(&s4, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let sign3 = enumerate_homs(&s3, &c2, &HomConstraints::new(), true)?
        .next()
        .expect("sign");
    let over_sign = HomConstraints::new().commuting(&sign3, &sign4);
    let lifts = enumerate_homs(&s4, &s3, &over_sign, false)?.count();
    println!("homs S4 -> S3 over the sign: {lifts}");

    // pin a transposition onto a fixed involution
    let t = s4.generators()[0];
    let pinned = HomConstraints::new().pin(t, s3.generators()[0]);
    println!(
        "with a pinned transposition: {}",
        enumerate_homs(&s4, &s3, &pinned, false)?.count()
    );

    // A4 -> S4 landing in the Klein subgroup
    let a4 = catalog::group("A4").expect("catalog");
    let v4 = projpair::group::normal::derived_subgroup(&a4);
    let into_v4 = HomConstraints::new().image_in(&v4);
    println!(
        "endomorphisms of A4 with image in V4: {}",
        enumerate_homs(&a4, &a4, &into_v4, false)?.count()
    );

    println!(
        "sections of sign: S3 -> C2: {}",
        sections_of(&sign3)?.count()
    );
    println!(
        "sections of sign: S4 -> C2: {}",
        sections_of(&sign4)?.count()
    );

    let d6 = catalog::group("D6").expect("catalog");
    let c12 = catalog::group("C12").expect("catalog");
    let d3xc2 = projpair::constructions::direct_product(&s3, &c2)?.group;
    println!(
        "D6 ~ C12: {}, D6 ~ S3 x C2: {}",
        is_isomorphic(&d6, &c12),
        is_isomorphic(&d6, &d3xc2)
    );
    Ok(())
}
