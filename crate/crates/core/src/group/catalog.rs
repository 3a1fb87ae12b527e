//! Built-in small groups, resolvable by name wherever a group file is accepted.

use std::sync::Arc;

use crate::group::finite::FiniteGroup;
use crate::group::perm::Permutation;

/// Every catalog name, smallest order first within each family.
pub const NAMES: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "V4", "S3", "D4", "Q8",
    "A4", "D6", "S4", "A5", "S5",
];

fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).expect("catalog cycles are valid")
}

fn cycle_of(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Looks up a catalog group by name (`C2`..`C12`, `S3`..`S5`, `A4`, `A5`, `D4`, `D6`, `Q8`, `V4`).
pub fn group(name: &str) -> Option<Arc<FiniteGroup>> {
    let g = match name {
        "V4" => {
            FiniteGroup::from_permutations(name, 4, &[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])])
        }
        "S3" => {
            FiniteGroup::from_permutations(name, 3, &[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])])
        }
        "S4" => FiniteGroup::from_permutations(
            name,
            4,
            &[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])],
        ),
        "S5" => FiniteGroup::from_permutations(
            name,
            5,
            &[perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])],
        ),
        "A4" => FiniteGroup::from_permutations(
            name,
            4,
            &[perm(4, &[&[0, 1, 2]]), perm(4, &[&[0, 1], &[2, 3]])],
        ),
        "A5" => FiniteGroup::from_permutations(
            name,
            5,
            &[perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1, 2]])],
        ),
        "D4" => FiniteGroup::from_permutations(
            name,
            4,
            &[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[1, 3]])],
        ),
        "D6" => FiniteGroup::from_permutations(
            name,
            6,
            &[
                perm(6, &[&[0, 1, 2, 3, 4, 5]]),
                perm(6, &[&[1, 5], &[2, 4]]),
            ],
        ),
        "Q8" => FiniteGroup::from_table(name, &quaternion_table()),
        _ => {
            let n: usize = name.strip_prefix('C')?.parse().ok()?;
            if !(2..=12).contains(&n) {
                return None;
            }
            FiniteGroup::from_permutations(name, n, &[perm(n, &[&cycle_of(n)])])
        }
    };
    Some(Arc::new(
        g.expect("catalog groups are within the default cap"),
    ))
}

/// Cyclic group of any order (not limited to the named catalog range).
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    if n <= 1 {
        return Arc::new(FiniteGroup::trivial());
    }
    Arc::new(
        FiniteGroup::from_permutations(format!("C{n}"), n, &[perm(n, &[&cycle_of(n)])])
            .expect("cyclic group within cap"),
    )
}

/// Every catalog group of order at most `max_order`, in [`NAMES`] order.
pub fn up_to_order(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    NAMES
        .iter()
        .filter_map(|n| group(n))
        .filter(|g| g.order() <= max_order)
        .collect()
}

// Index = unit + 4 * sign, units ordered 1, i, j, k.
fn quaternion_table() -> Vec<Vec<usize>> {
    // (sign, unit) of unit_a * unit_b
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = UNIT[a % 4][b % 4];
                    u + 4 * ((s + a / 4 + b / 4) % 2)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let expected = [
            ("C2", 2),
            ("C7", 7),
            ("C12", 12),
            ("V4", 4),
            ("S3", 6),
            ("D4", 8),
            ("Q8", 8),
            ("A4", 12),
            ("D6", 12),
            ("S4", 24),
            ("A5", 60),
            ("S5", 120),
        ];
        for (name, order) in expected {
            let g = group(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
        assert!(group("C13").is_none());
        assert!(group("X").is_none());
        assert_eq!(up_to_order(1000).len(), NAMES.len());
    }

    #[test]
    fn small_catalog_groups_satisfy_axioms() {
        for g in up_to_order(24) {
            assert!(g.verify_axioms(), "{}", g.name());
        }
    }

    #[test]
    fn q8_has_unique_involution() {
        let q8 = group("Q8").unwrap();
        let involutions = q8.elements().filter(|&x| q8.elem_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q8.is_abelian());
        let d4 = group("D4").unwrap();
        assert_eq!(d4.elements().filter(|&x| d4.elem_order(x) == 2).count(), 5);
    }
}
