use crate::constructions::{fiber_lift, fiber_product, FiberProduct};
use crate::error::{Error, Result};
use crate::group::{normal_core, normal_subgroups, quotient, GroupHom, Subgroup};

use super::{is_split, DoubleEmbeddingProblem, WeakSolution};

/// A split problem over the same pair mapping onto a given problem through four
/// epimorphisms, with one section of each of its lower and higher maps.
#[derive(Clone, Debug)]
pub struct DominationWitness {
    pub dominated: DoubleEmbeddingProblem,
    pub dominating: DoubleEmbeddingProblem,
    /// `Ĝ → G`
    pub pi1: GroupHom,
    /// `Ĥ → H`
    pub pi2: GroupHom,
    /// `Â → A`
    pub pi3: GroupHom,
    /// `B̂ → B`
    pub pi4: GroupHom,
    /// `Â → Ĝ`, a section of the lower map of the dominating problem.
    pub alpha_hat_prime: GroupHom,
    /// `B̂ → Ĥ`, a section of the higher map of the dominating problem.
    pub beta_hat_prime: GroupHom,
}

impl DominationWitness {
    /// Checks surjectivity of the four maps, every face of the prism and both sections.
    pub fn verify(&self) -> Result<()> {
        let (d, e) = (&self.dominated, &self.dominating);
        for (name, p) in [
            ("pi1", &self.pi1),
            ("pi2", &self.pi2),
            ("pi3", &self.pi3),
            ("pi4", &self.pi4),
        ] {
            if !p.is_surjective() || !p.is_homomorphism() {
                return Err(Error::Precondition(format!("{name} is not an epimorphism")));
            }
        }
        let faces = [
            (
                "beta",
                e.beta().then(&self.pi4)? == self.pi2.then(d.beta())?,
            ),
            ("nu", e.nu().then(&self.pi4)? == *d.nu()),
            (
                "alpha",
                e.alpha()?.then(&self.pi3)? == self.pi1.then(&d.alpha()?)?,
            ),
            ("mu", e.mu()?.then(&self.pi3)? == d.mu()?),
            (
                "G inclusion",
                e.g().embedding().then(&self.pi2)? == self.pi1.then(&d.g().embedding())?,
            ),
            (
                "A inclusion",
                e.a().embedding().then(&self.pi4)? == self.pi3.then(&d.a().embedding())?,
            ),
            (
                "lower section",
                self.alpha_hat_prime.then(&e.alpha()?)? == GroupHom::identity(&e.a().to_group()),
            ),
            (
                "higher section",
                self.beta_hat_prime.then(e.beta())? == GroupHom::identity(e.b()),
            ),
        ];
        if let Some((name, _)) = faces.iter().find(|(_, ok)| !ok) {
            return Err(Error::Precondition(format!(
                "domination square {name} does not commute"
            )));
        }
        Ok(())
    }
}

/// Builds a split problem dominating `dep` from independent weak solutions `θ` of the
/// higher problem (`β ∘ θ = ν`) and `η` of the lower problem (`α ∘ η = μ`).
///
/// With `N = ker θ ∩ core_L(ker η)` it takes `B̂ = L/N`, `Â` the image of `Gm`,
/// `Ĥ = H ×_B B̂`, `Ĝ = G ×_A Â`, and the sections `x ↦ (η(x), x)`, `x ↦ (θ(x), x)`.
pub fn dominate_split(
    dep: &DoubleEmbeddingProblem,
    theta: &GroupHom,
    eta: &GroupHom,
) -> Result<DominationWitness> {
    let l = dep.ambient();
    let gm = dep.distinguished();
    if **theta.source() != **l || **theta.target() != **dep.h() {
        return Err(Error::GroupMismatch("theta does not map L to H".into()));
    }
    if theta.then(dep.beta())? != *dep.nu() {
        return Err(Error::Precondition(
            "theta is not a weak solution of the higher problem".into(),
        ));
    }
    if **eta.source() != *gm.to_group() || **eta.target() != *dep.g().to_group() {
        return Err(Error::GroupMismatch("eta does not map Gm to G".into()));
    }
    if eta.then(&dep.alpha()?)? != dep.mu()? {
        return Err(Error::Precondition(
            "eta is not a weak solution of the lower problem".into(),
        ));
    }
    let ker_eta = gm.globalize(&eta.kernel());
    let n = theta.kernel().intersection(&normal_core(&ker_eta));
    let (b_hat, q) = quotient(&n)?;
    let pi4 = dep.nu().descend(&q)?;
    let a_hat = q.image_of(gm);
    let h_hat = fiber_product(dep.beta(), &pi4)?;
    let total = &h_hat.total;
    let g_hat_members: Vec<usize> = total
        .elements()
        .filter(|&x| {
            dep.g().contains(h_hat.left_proj.apply(x)) && a_hat.contains(h_hat.right_proj.apply(x))
        })
        .collect();
    let g_hat = Subgroup::from_members(total, &g_hat_members)?;
    let dominating = DoubleEmbeddingProblem::new(
        dep.pair().clone(),
        g_hat.clone(),
        a_hat.clone(),
        h_hat.right_proj.clone(),
        q.clone(),
    )?;
    let pi2 = h_hat.left_proj.clone();
    let pi1 = pi2.restrict(&g_hat, dep.g())?;
    let pi3 = pi4.restrict(&a_hat, dep.a())?;
    let beta_hat_prime = fiber_lift(&theta.descend(&q)?, &GroupHom::identity(&b_hat), &h_hat)?;
    // η read in H and pushed down to Â = q(Gm)
    let eta_h = eta.then(&dep.g().embedding())?;
    let eta_hat = eta_h.descend(&q.restrict(gm, &a_hat)?)?;
    let lifted = fiber_lift(&eta_hat, &a_hat.embedding(), &h_hat)?;
    let local: Option<Vec<usize>> = lifted.map().iter().map(|&x| g_hat.local_index(x)).collect();
    let local = local.ok_or_else(|| Error::Precondition("lower section leaves G hat".into()))?;
    let alpha_hat_prime = GroupHom::new(a_hat.to_group(), g_hat.to_group(), local)?;
    let witness = DominationWitness {
        dominated: dep.clone(),
        dominating,
        pi1,
        pi2,
        pi3,
        pi4,
        alpha_hat_prime,
        beta_hat_prime,
    };
    witness.verify()?;
    debug_assert!(is_split(&witness.dominating)
        .map(|s| s.is_some())
        .unwrap_or(false));
    Ok(witness)
}

/// Pushes a weak solution of the dominating problem down to the dominated one:
/// `θ = π2 ∘ θ̂`, `η = π1 ∘ η̂`, re-verified from scratch.
pub fn induced_solution(witness: &DominationWitness, sol: &WeakSolution) -> Result<WeakSolution> {
    sol.verify(&witness.dominating)?;
    let theta = sol.theta.then(&witness.pi2)?;
    let out = WeakSolution::from_theta(&witness.dominated, theta)?;
    if sol.eta.then(&witness.pi1)? != out.eta {
        return Err(Error::Precondition(
            "induced eta differs from pi1 after the lower solution".into(),
        ));
    }
    Ok(out)
}

/// Output of [`finite_kernel_reduction`].
#[derive(Clone, Debug)]
pub struct KernelReduction {
    /// Normal subgroup `U ⊴ H` with `U ∩ KG ≤ G` and `K ∩ U = 1`, where `K = ker β`.
    pub u: Subgroup,
    /// The problem over `H̄ = H/U`, `B̄ = B/β(U)`, `Ḡ`, `Ā`.
    pub reduced: DoubleEmbeddingProblem,
    pub quot_h: GroupHom,
    pub quot_b: GroupHom,
    /// `H` as the fiber product of `H̄ → B̄ ← B`.
    pub square: FiberProduct,
    /// Whether `(KG) ∩ (UG) = G` holds, checked element by element.
    pub kg_cap_ug_is_g: bool,
}

impl KernelReduction {
    /// Lifts a weak solution of the reduced problem through the cartesian square.
    pub fn lift(&self, dep: &DoubleEmbeddingProblem, sol: &WeakSolution) -> Result<WeakSolution> {
        sol.verify(&self.reduced)?;
        let theta = fiber_lift(&sol.theta, dep.nu(), &self.square)?;
        WeakSolution::from_theta(dep, theta)
    }
}

/// Quotients `H` by the largest normal `U` (first in canonical order among those of that
/// order) meeting `K = ker β` trivially with `U ∩ KG ≤ G`; `U = 1` always qualifies.
pub fn finite_kernel_reduction(dep: &DoubleEmbeddingProblem) -> Result<KernelReduction> {
    let h = dep.h();
    let k = dep.beta().kernel();
    let kg = k.join(dep.g());
    let candidates = normal_subgroups(h);
    let admissible: Vec<&Subgroup> = candidates
        .iter()
        .filter(|u| u.intersection(&k).is_trivial() && u.intersection(&kg).is_subgroup_of(dep.g()))
        .collect();
    let top = admissible
        .iter()
        .map(|u| u.order())
        .max()
        .expect("the trivial subgroup qualifies");
    let u = (*admissible
        .iter()
        .find(|u| u.order() == top)
        .expect("present"))
    .clone();
    let ug = u.join(dep.g());
    let kg_cap_ug_is_g = kg.intersection(&ug) == *dep.g();
    let (_, quot_h) = quotient(&u)?;
    let beta_u = dep.beta().image_of(&u);
    let (_, quot_b) = quotient(&beta_u)?;
    let beta_bar = dep.beta().then(&quot_b)?.descend(&quot_h)?;
    let nu_bar = dep.nu().then(&quot_b)?;
    let reduced = DoubleEmbeddingProblem::new(
        dep.pair().clone(),
        quot_h.image_of(dep.g()),
        quot_b.image_of(dep.a()),
        beta_bar.clone(),
        nu_bar,
    )?;
    let square = FiberProduct::from_cartesian_square(&quot_h, dep.beta(), &beta_bar, &quot_b)?;
    Ok(KernelReduction {
        u,
        reduced,
        quot_h,
        quot_b,
        square,
        kg_cap_ug_is_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::direct_product;
    use crate::dep::{solve_weak, tests::v4_dep};
    use crate::group::{catalog, FinitePair};

    fn check_domination(
        dep: &DoubleEmbeddingProblem,
        theta: &GroupHom,
        eta: &GroupHom,
    ) -> DominationWitness {
        let w = dominate_split(dep, theta, eta).unwrap();
        assert!(w.dominating.is_valid());
        assert!(is_split(&w.dominating).unwrap().is_some());
        for sol in solve_weak(&w.dominating, true).unwrap() {
            induced_solution(&w, &sol).unwrap();
        }
        w
    }

    #[test]
    fn injective_solutions_give_faithful_quotient() {
        let s3 = catalog::group("S3").unwrap();
        let pair = FinitePair::generated(&s3, &[s3.generators()[0]]).unwrap();
        let id = GroupHom::identity(&s3);
        let dep = DoubleEmbeddingProblem::identity(pair, id.clone()).unwrap();
        let sol = solve_weak(&dep, false).unwrap().remove(0);
        let w = check_domination(&dep, &sol.theta, &sol.eta);
        assert_eq!(w.dominating.b().order(), 6);
    }

    #[test]
    fn independent_solutions_on_v4() {
        let dep = v4_dep();
        let theta = GroupHom::identity(dep.ambient());
        let gm = dep.distinguished().to_group();
        let eta = GroupHom::trivial(&gm, &dep.g().to_group());
        let w = check_domination(&dep, &theta, &eta);
        // N = ker θ ∩ core(ker η) = 1
        assert_eq!(w.dominating.b().order(), 4);
        let bad = GroupHom::trivial(dep.ambient(), dep.h());
        assert!(dominate_split(&dep, &bad, &eta).is_err());
    }

    #[test]
    fn kernel_reduction_on_v4() {
        let c2 = catalog::group("C2").unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        let line = v.inj_right.image();
        let pair = FinitePair::new(v.group.clone(), line.clone()).unwrap();
        let dep = DoubleEmbeddingProblem::new(
            pair,
            line.clone(),
            Subgroup::whole(&c2),
            v.proj_right.clone(),
            v.proj_right.clone(),
        )
        .unwrap();
        assert!(dep.is_valid());
        let red = finite_kernel_reduction(&dep).unwrap();
        assert!(red.kg_cap_ug_is_g);
        // oracle: every admissible normal subgroup, checked directly
        let k = dep.beta().kernel();
        let kg = k.join(dep.g());
        for u in normal_subgroups(dep.h()) {
            if u.intersection(&k).is_trivial() && u.intersection(&kg).is_subgroup_of(dep.g()) {
                assert!(u.order() <= red.u.order());
                assert_eq!(kg.intersection(&u.join(dep.g())), *dep.g());
            }
        }
        assert!(red.reduced.is_valid());
        for sol in solve_weak(&red.reduced, true).unwrap() {
            red.lift(&dep, &sol).unwrap();
        }
    }

    #[test]
    fn kernel_reduction_degenerate_cases() {
        let s3 = catalog::group("S3").unwrap();
        let pair = FinitePair::new(s3.clone(), Subgroup::whole(&s3)).unwrap();
        let id = GroupHom::identity(&s3);
        let dep = DoubleEmbeddingProblem::identity(pair, id).unwrap();
        let red = finite_kernel_reduction(&dep).unwrap();
        assert!(red.u.is_whole());
        assert_eq!(red.reduced.h().order(), 1);
        let sol = solve_weak(&red.reduced, false).unwrap().remove(0);
        assert_eq!(red.lift(&dep, &sol).unwrap().theta, GroupHom::identity(&s3));
        let red = finite_kernel_reduction(&v4_dep()).unwrap();
        assert!(red.kg_cap_ug_is_g);
    }
}
