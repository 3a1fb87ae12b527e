//! Finite group arithmetic over dense multiplication tables.

pub mod catalog;
mod finite;
pub mod formation;
mod hom;
pub mod normal;
mod perm;
pub mod search;
mod subgroup;

use std::sync::Arc;

pub(crate) use finite::check_cap_u128;
pub use finite::{is_prime, order_cap, set_order_cap, Elem, FiniteGroup, DEFAULT_ORDER_CAP};
pub use formation::{formation_member, FormationSpec};
pub use hom::GroupHom;
pub use normal::{normal_core, normal_subgroups, sylow_subgroup};
pub use perm::Permutation;
pub use search::{enumerate_homs, is_isomorphic, sections_of, HomConstraints, HomSearch};
pub use subgroup::{quotient, Subgroup};

use crate::error::{Error, Result};

/// Smallest subgroup containing `seed`.
pub fn subgroup_closure(group: &Arc<FiniteGroup>, seed: &[Elem]) -> Result<Subgroup> {
    Subgroup::generated_by(group, seed)
}

/// A finite model of a pair `Γ ≤ Λ`: an ambient group with a distinguished subgroup.
#[derive(Clone, Debug)]
pub struct FinitePair {
    ambient: Arc<FiniteGroup>,
    distinguished: Subgroup,
}

impl FinitePair {
    pub fn new(ambient: Arc<FiniteGroup>, distinguished: Subgroup) -> Result<Self> {
        if **distinguished.parent() != *ambient {
            return Err(Error::GroupMismatch(
                "distinguished subgroup does not live in the ambient group".into(),
            ));
        }
        Ok(FinitePair {
            ambient,
            distinguished,
        })
    }

    pub fn generated(ambient: &Arc<FiniteGroup>, seed: &[Elem]) -> Result<Self> {
        Self::new(ambient.clone(), Subgroup::generated_by(ambient, seed)?)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn distinguished(&self) -> &Subgroup {
        &self.distinguished
    }
}
