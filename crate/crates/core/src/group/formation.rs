use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::finite::{is_prime, FiniteGroup};
use crate::group::normal::{composition_factors, is_solvable};
use crate::group::search::is_isomorphic;

/// A formation of finite groups, described by membership predicate.
#[derive(Clone, Debug)]
pub enum FormationSpec {
    All,
    PGroup(usize),
    Solvable,
    /// Groups all of whose composition factors are isomorphic to one of these.
    CompositionFactorsIn(Vec<Arc<FiniteGroup>>),
}

impl FormationSpec {
    pub fn p_group(p: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(FormationSpec::PGroup(p))
    }
}

/// Whether `group` belongs to the formation.
pub fn formation_member(group: &Arc<FiniteGroup>, spec: &FormationSpec) -> bool {
    match spec {
        FormationSpec::All => true,
        FormationSpec::PGroup(p) => {
            let mut n = group.order();
            while n.is_multiple_of(*p) {
                n /= p;
            }
            n == 1
        }
        FormationSpec::Solvable => is_solvable(group),
        FormationSpec::CompositionFactorsIn(allowed) => {
            composition_factors(group).iter().all(|factor| {
                allowed.iter().any(|a| {
                    // fingerprints screen before the full isomorphism search
                    a.fingerprint() == factor.fingerprint() && is_isomorphic(a, factor)
                })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn basic_memberships() {
        let s3 = catalog::group("S3").unwrap();
        let a5 = catalog::group("A5").unwrap();
        let c8 = catalog::group("C8").unwrap();
        assert!(formation_member(&s3, &FormationSpec::Solvable));
        assert!(!formation_member(&a5, &FormationSpec::Solvable));
        assert!(formation_member(&c8, &FormationSpec::p_group(2).unwrap()));
        assert!(!formation_member(&s3, &FormationSpec::p_group(2).unwrap()));
        assert!(formation_member(&a5, &FormationSpec::All));
        assert!(FormationSpec::p_group(6).is_err());
    }

    #[test]
    fn composition_factor_formations() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let a5 = catalog::group("A5").unwrap();
        let f23 = FormationSpec::CompositionFactorsIn(vec![c2.clone(), c3.clone()]);
        assert!(formation_member(&catalog::group("S4").unwrap(), &f23));
        assert!(!formation_member(&catalog::group("C5").unwrap(), &f23));
        assert!(!formation_member(&catalog::group("S5").unwrap(), &f23));
        let with_a5 = FormationSpec::CompositionFactorsIn(vec![c2, a5]);
        assert!(formation_member(&catalog::group("S5").unwrap(), &with_a5));
        assert!(formation_member(&catalog::group("D4").unwrap(), &with_a5));
    }
}
