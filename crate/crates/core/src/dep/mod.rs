//! Double embedding problems over a finite pair and their solvers.
//!
//! A problem attaches two compatible embedding problems to a pair `Gm ≤ L`:
//!
//! ```text
//!        L ──ν──▶ B            Gm ──μ──▶ A
//!                 ▲ β                    ▲ α
//!                 H                      G
//! ```
//!
//! with `G ≤ H`, `A ≤ B`, `α = β|_G` and `μ = ν|_Gm`. A weak solution is `θ: L → H` with
//! `β ∘ θ = ν` and `θ(Gm) ≤ G`.

mod domination;
mod solve;
mod splitting;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{sections_of, Elem, FiniteGroup, FinitePair, GroupHom, Subgroup};

pub use domination::{
    dominate_split, finite_kernel_reduction, induced_solution, DominationWitness, KernelReduction,
};
pub use solve::{lift_via_fiber, solve_weak, solve_weak_prescribed, weak_solutions};
pub use splitting::{
    semidirect_complement, split_over_subgroup, sylow_obstruction_check, wreath_obstruction_dep,
    Splitting,
};

/// The diagram of a double embedding problem. Construction checks only that every arrow
/// connects the right groups; surjectivity and commutation are reported by
/// [`validate_dep`].
#[derive(Clone, Debug)]
pub struct DoubleEmbeddingProblem {
    pair: FinitePair,
    h: Arc<FiniteGroup>,
    b: Arc<FiniteGroup>,
    g: Subgroup,
    a: Subgroup,
    beta: GroupHom,
    nu: GroupHom,
}

impl DoubleEmbeddingProblem {
    pub fn new(
        pair: FinitePair,
        g: Subgroup,
        a: Subgroup,
        beta: GroupHom,
        nu: GroupHom,
    ) -> Result<Self> {
        let h = beta.source().clone();
        let b = beta.target().clone();
        if **g.parent() != *h {
            return Err(Error::GroupMismatch(
                "G is not a subgroup of the source of beta".into(),
            ));
        }
        if **a.parent() != *b {
            return Err(Error::GroupMismatch(
                "A is not a subgroup of the target of beta".into(),
            ));
        }
        if **nu.source() != **pair.ambient() {
            return Err(Error::GroupMismatch(
                "nu does not leave the ambient group".into(),
            ));
        }
        if **nu.target() != *b {
            return Err(Error::GroupMismatch(
                "nu and beta have different targets".into(),
            ));
        }
        Ok(DoubleEmbeddingProblem {
            pair,
            h,
            b,
            g,
            a,
            beta,
            nu,
        })
    }

    /// The problem with `H = B`, `β = id`, `G = A = ν(Gm)`.
    pub fn identity(pair: FinitePair, nu: GroupHom) -> Result<Self> {
        let a = nu.image_of(pair.distinguished());
        let beta = GroupHom::identity(nu.target());
        Self::new(pair, a.clone(), a, beta, nu)
    }

    pub fn pair(&self) -> &FinitePair {
        &self.pair
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        self.pair.ambient()
    }

    pub fn distinguished(&self) -> &Subgroup {
        self.pair.distinguished()
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    pub fn b(&self) -> &Arc<FiniteGroup> {
        &self.b
    }

    pub fn g(&self) -> &Subgroup {
        &self.g
    }

    pub fn a(&self) -> &Subgroup {
        &self.a
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn nu(&self) -> &GroupHom {
        &self.nu
    }

    /// `β|_G` as a map `G → A` between standalone groups.
    pub fn alpha(&self) -> Result<GroupHom> {
        self.beta.restrict(&self.g, &self.a)
    }

    /// `ν|_Gm` as a map `Gm → A` between standalone groups.
    pub fn mu(&self) -> Result<GroupHom> {
        self.nu.restrict(self.pair.distinguished(), &self.a)
    }

    /// Whether the problem has no diagnostics.
    pub fn is_valid(&self) -> bool {
        validate_dep(self).is_empty()
    }
}

/// A failed invariant: the arrow at fault and an element witnessing the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub arrow: &'static str,
    pub witness: Elem,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (witness {})",
            self.arrow, self.message, self.witness
        )
    }
}

/// Checks surjectivity of `β`, `ν`, `α`, `μ` and that `β(G) ⊆ A`, `ν(Gm) ⊆ A`.
/// An empty list means the problem is valid.
pub fn validate_dep(dep: &DoubleEmbeddingProblem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut unhit = |arrow: &'static str, image: &Subgroup, whole: &Subgroup, what: &str| {
        if let Some(&w) = whole.members().iter().find(|&&x| !image.contains(x)) {
            out.push(Diagnostic {
                arrow,
                witness: w,
                message: format!("element of {what} outside the image"),
            });
        }
    };
    unhit("beta", &dep.beta.image(), &Subgroup::whole(&dep.b), "B");
    unhit("nu", &dep.nu.image(), &Subgroup::whole(&dep.b), "B");
    let lower = dep.beta.image_of(&dep.g);
    unhit("alpha", &lower, &dep.a, "A");
    let gm = dep.pair.distinguished();
    let mu_image = dep.nu.image_of(gm);
    unhit("mu", &mu_image, &dep.a, "A");
    if let Some(&x) = dep
        .g
        .members()
        .iter()
        .find(|&&x| !dep.a.contains(dep.beta.apply(x)))
    {
        out.push(Diagnostic {
            arrow: "alpha",
            witness: x,
            message: "beta maps this element of G outside A".into(),
        });
    }
    if let Some(&x) = gm
        .members()
        .iter()
        .find(|&&x| !dep.a.contains(dep.nu.apply(x)))
    {
        out.push(Diagnostic {
            arrow: "mu",
            witness: x,
            message: "nu maps this element of Gm outside A".into(),
        });
    }
    out
}

/// Result of [`normalize_dep`]: a valid problem together with the inclusion `H' → H` used
/// to push its solutions back to the original diagram.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub dep: DoubleEmbeddingProblem,
    pub h_inclusion: GroupHom,
}

impl Normalized {
    /// A weak solution of the normalized problem read as a weak solution of `raw`.
    pub fn lift(&self, raw: &DoubleEmbeddingProblem, sol: &WeakSolution) -> Result<WeakSolution> {
        let theta = sol.theta.then(&self.h_inclusion)?;
        WeakSolution::from_theta(raw, theta)
    }
}

/// Replaces `A` by `μ(Gm)`, `B` by `ν(L)`, `G` by `α⁻¹(μ(Gm))` and `H` by `β⁻¹(ν(L))`,
/// producing a problem whose four structure maps are surjective.
///
/// Requires `β(G) = A`, `β(H) = B` and `ν(Gm) ⊆ A`. When `ν` is already surjective the
/// groups `H` and `B` are kept as they are.
pub fn normalize_dep(raw: &DoubleEmbeddingProblem) -> Result<Normalized> {
    let gm = raw.pair.distinguished();
    if let Some(&x) = gm
        .members()
        .iter()
        .find(|&&x| !raw.a.contains(raw.nu.apply(x)))
    {
        return Err(Error::IncompatibleAt(x));
    }
    if !raw.beta.is_surjective() {
        return Err(Error::NotSurjective(
            "beta".into(),
            first_missing(&raw.beta),
        ));
    }
    if raw.beta.image_of(&raw.g) != raw.a {
        return Err(Error::Precondition("beta does not map G onto A".into()));
    }
    let new_b = raw.nu.image();
    let new_a = raw.nu.image_of(gm);
    let new_g = raw.g.intersection(&raw.beta.preimage(&new_a));
    if new_b.is_whole() {
        let dep = DoubleEmbeddingProblem::new(
            raw.pair.clone(),
            new_g,
            new_a,
            raw.beta.clone(),
            raw.nu.clone(),
        )?;
        return Ok(Normalized {
            dep,
            h_inclusion: GroupHom::identity(&raw.h),
        });
    }
    let new_h = raw.beta.preimage(&new_b);
    let beta = raw.beta.restrict(&new_h, &new_b)?;
    let nu_map = raw
        .nu
        .map()
        .iter()
        .map(|&y| new_b.local_index(y).expect("inside the image"))
        .collect();
    let nu = GroupHom::new(raw.pair.ambient().clone(), new_b.to_group(), nu_map)?;
    let dep = DoubleEmbeddingProblem::new(
        raw.pair.clone(),
        new_h.localize(&new_g)?,
        new_b.localize(&new_a)?,
        beta,
        nu,
    )?;
    Ok(Normalized {
        dep,
        h_inclusion: new_h.embedding(),
    })
}

fn first_missing(hom: &GroupHom) -> Elem {
    hom.image().mask().iter().position(|&m| !m).unwrap_or(0)
}

/// Sections `α': A → G` and `β': B → H`, chosen independently of each other.
pub fn is_split(dep: &DoubleEmbeddingProblem) -> Result<Option<(GroupHom, GroupHom)>> {
    let alpha = dep.alpha()?;
    let Some(a_sec) = sections_of(&alpha)?.next() else {
        return Ok(None);
    };
    let Some(b_sec) = sections_of(&dep.beta)?.next() else {
        return Ok(None);
    };
    Ok(Some((a_sec, b_sec)))
}

/// A weak solution: `θ: L → H` together with its restriction `η: Gm → G`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakSolution {
    pub theta: GroupHom,
    pub eta: GroupHom,
}

impl WeakSolution {
    /// Wraps `θ`, deriving `η` and verifying every invariant element by element.
    pub fn from_theta(dep: &DoubleEmbeddingProblem, theta: GroupHom) -> Result<Self> {
        if **theta.source() != **dep.ambient() || **theta.target() != *dep.h {
            return Err(Error::GroupMismatch("theta does not map L to H".into()));
        }
        let eta = theta
            .restrict(dep.distinguished(), &dep.g)
            .map_err(|_| Error::Precondition("theta maps Gm outside G".into()))?;
        let sol = WeakSolution { theta, eta };
        sol.verify(dep)?;
        Ok(sol)
    }

    /// `β ∘ θ = ν`, `θ(Gm) ≤ G`, `η = θ|_Gm` and `α ∘ η = μ`, checked on every element.
    pub fn verify(&self, dep: &DoubleEmbeddingProblem) -> Result<()> {
        if !self.theta.is_homomorphism() {
            return Err(Error::NotHomomorphism { x: 0, y: 0 });
        }
        for x in dep.ambient().elements() {
            if dep.beta.apply(self.theta.apply(x)) != dep.nu.apply(x) {
                return Err(Error::IncompatibleAt(x));
            }
        }
        let gm = dep.distinguished();
        for (l, &x) in gm.members().iter().enumerate() {
            let t = self.theta.apply(x);
            if !dep.g.contains(t) {
                return Err(Error::Precondition(format!("theta maps {x} outside G")));
            }
            if dep.g.global(self.eta.apply(l)) != t {
                return Err(Error::Precondition(format!(
                    "eta differs from theta at {x}"
                )));
            }
        }
        if self.eta.then(&dep.alpha()?)? != dep.mu()? {
            return Err(Error::Precondition(
                "alpha after eta differs from mu".into(),
            ));
        }
        Ok(())
    }
}
