use proptest::prelude::*;

use weylbach::hirzebruch::{calabi_energy_class_over_pi, calabi_energy_over_pi, compare_across_structures};
use weylbach::lattice::{
    change_basis, compatible_structures, first_chern, integer, intersect, is_kahler, lebrun_ratio, rational,
    CohomologyClass, HomologyCycle,
};

fn kahler_class() -> impl Strategy<Value = CohomologyClass> {
    (0u32..7, 1i64..40, 1i64..21, 1i64..200, 1i64..21).prop_map(|(k, pn, pd, extra, qd)| {
        let p = rational(pn, pd);
        let q = integer(k.into()) * &p + rational(extra, qd);
        CohomologyClass::new(k, p, q)
    })
}

proptest! {
    #[test]
    fn comparison_rows_preserve_intersection_data(a in kahler_class()) {
        let cmp = compare_across_structures(&a).unwrap();
        prop_assert_eq!(cmp.rows.iter().map(|r| r.n).collect::<Vec<_>>(), compatible_structures(&a).unwrap());
        for row in &cmp.rows {
            prop_assert!(is_kahler(&row.class));
            // volume A·A and c₁·A are basis-independent, the energy is not in general
            prop_assert_eq!(intersect(&row.class, &row.class).unwrap(), intersect(&a, &a).unwrap());
            prop_assert_eq!(
                intersect(&first_chern(row.n), &row.class).unwrap(),
                intersect(&first_chern(a.k), &a).unwrap()
            );
            prop_assert_eq!(&row.energy_over_pi, &calabi_energy_class_over_pi(&row.class).unwrap());
        }
    }

    #[test]
    fn lebrun_ratio_is_basis_invariant(a in kahler_class()) {
        for n in compatible_structures(&a).unwrap() {
            prop_assert_eq!(lebrun_ratio(&change_basis(&a, n).unwrap()).unwrap(), lebrun_ratio(&a).unwrap());
        }
    }

    #[test]
    fn cycles_pair_through_their_duals(c in -5i64..6, f in -5i64..6, a in kahler_class()) {
        let cycle = HomologyCycle { k: a.k, coeff_c: integer(c), coeff_f: integer(f) };
        prop_assert_eq!(cycle.evaluate(&a).unwrap(), intersect(&cycle.dual(), &a).unwrap());
    }
}

#[test]
fn witness_energies_differ() {
    let cmp = compare_across_structures(&CohomologyClass::from_integers(1, 1, 3)).unwrap();
    assert_eq!(cmp.rows.len(), 2);
    assert_eq!(cmp.rows[0].energy_over_pi, calabi_energy_over_pi(&integer(5), 1).unwrap());
    assert_eq!(cmp.rows[1].energy_over_pi, calabi_energy_over_pi(&integer(5), 3).unwrap());
    assert!(cmp.rows[0].energy_over_pi < cmp.rows[1].energy_over_pi);
}
