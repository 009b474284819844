use proptest::prelude::*;

use z22_core::catalog;
use z22_core::format;
use z22_core::jacobi::{check_all_jacobi, jacobiator_idx};
use z22_core::rational::{frac, int};
use z22_core::solver::partial_of;
use z22_core::structure::{
    assemble, assemble_unchecked, decompose, evaluate_constraints, CoefficientSet, Family,
    NamingScheme,
};
use z22_core::{Degree, Generator, GradedAlgebra, LinComb, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    ((1i64..=5), (1i64..=5), any::<bool>())
        .prop_map(|(n, d, neg)| if neg { frac(-n, d) } else { frac(n, d) })
}

fn degree() -> impl Strategy<Value = Degree> {
    (0usize..4).prop_map(|i| Degree::ALL[i])
}

/// Random algebra whose products respect the grading; Jacobi is not imposed.
fn graded_algebra() -> impl Strategy<Value = GradedAlgebra> {
    prop::collection::vec(degree(), 1..6).prop_flat_map(|degrees| {
        let n = degrees.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let coeffs = prop::collection::vec(
            prop::collection::vec(small_rational(), n),
            pairs.len(),
        );
        (Just(degrees), Just(pairs), coeffs).prop_map(|(degrees, pairs, coeffs)| {
            let gens: Vec<Generator> = degrees
                .iter()
                .enumerate()
                .map(|(i, d)| Generator::new(format!("G{}", i + 1), *d))
                .collect();
            let products = pairs.iter().zip(coeffs).filter_map(|(&(a, b), row)| {
                let target = degrees[a].add(degrees[b]);
                let mut lc = LinComb::zero();
                for (k, c) in row.into_iter().enumerate() {
                    if degrees[k] == target {
                        lc.add_term(k, c);
                    }
                }
                // Even-degree self products must vanish under graded antisymmetry.
                let self_even = a == b && degrees[a].dot(degrees[a]) == 0;
                (!lc.is_zero() && !self_even).then_some((a, b, lc))
            });
            GradedAlgebra::from_products("random", gens.clone(), products).unwrap()
        })
    })
}

fn rescaling() -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, Vec<Rational>)> {
    (
        prop::collection::vec(nonzero_rational(), 4),
        prop::collection::vec(nonzero_rational(), 2),
        prop::collection::vec(nonzero_rational(), 2),
    )
}

const FAMILIES: [Family; 9] = [
    Family::K,
    Family::H,
    Family::S,
    Family::T,
    Family::U,
    Family::V,
    Family::L,
    Family::M,
    Family::N,
];

/// A single-entry perturbation of the published coefficient set.
fn mutation() -> impl Strategy<Value = CoefficientSet> {
    (0usize..FAMILIES.len(), 0usize..8, 0usize..4, 0usize..4, nonzero_rational()).prop_map(
        |(fi, index, row, col, delta)| {
            let cs = catalog::u11_z22_coefficients();
            let f = FAMILIES[fi];
            let mats = cs.family(f);
            let m = &mats[index % mats.len()];
            let (row, mut col) = (row % m.rows(), col % m.cols());
            if f == Family::T && row == col {
                col = (col + 1) % m.cols();
            }
            let value = &m[(row, col)] + delta;
            cs.with_entry(f, index % mats.len(), row, col, value).unwrap()
        },
    )
}

fn scaled_lmn(cs: &CoefficientSet, l: &Rational, m: &Rational, n: &Rational) -> CoefficientSet {
    let mut parts = cs.parts().clone();
    for (family, factor) in [(Family::L, l), (Family::M, m), (Family::N, n)] {
        for mat in parts.family_mut(family).iter_mut() {
            *mat = mat.scale(factor);
        }
    }
    CoefficientSet::try_from(parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algebra_json_round_trip(alg in graded_algebra()) {
        let text = format::algebra_to_json(&alg);
        let back = format::parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(format::algebra_to_json(&back), text);
    }

    #[test]
    fn coefficient_json_round_trip(cs in mutation()) {
        let text = format::coefficients_to_json(&cs);
        let back = format::parse_coefficients(&text).unwrap();
        prop_assert_eq!(&back, &cs);
    }

    #[test]
    fn jacobiator_is_cyclic(alg in graded_algebra(), picks in prop::array::uniform3(0usize..64)) {
        let n = alg.len();
        let [u, v, w] = picks.map(|i| i % n);
        let j = jacobiator_idx(&alg, u, v, w);
        prop_assert_eq!(&j, &jacobiator_idx(&alg, v, w, u));
        prop_assert_eq!(&j, &jacobiator_idx(&alg, w, u, v));
    }

    #[test]
    fn rescaled_solution_is_a_solution((q, y, z) in rescaling()) {
        let cs = catalog::u11_z22_coefficients().rescaled(&q, &y, &z).unwrap();
        prop_assert!(evaluate_constraints(&cs).passed());
        let alg = assemble(&cs, &NamingScheme::default()).unwrap();
        prop_assert!(check_all_jacobi(&alg).passed());
        prop_assert_eq!(decompose(&alg).unwrap(), cs);
    }

    #[test]
    fn partial_set_stabilizer_moves_solutions(alpha in nonzero_rational(), gamma in nonzero_rational(), flip in any::<bool>()) {
        let cs = catalog::u11_z22_coefficients();
        let beta = if flip { int(-1) } else { int(1) };
        let q = [alpha.clone(), alpha.recip(), alpha.clone(), alpha.recip()];
        let r = cs.rescaled(&q, &[beta.clone(), beta], &[gamma.clone(), gamma.recip()]).unwrap();
        prop_assert_eq!(partial_of(&r), partial_of(&cs));
        prop_assert!(evaluate_constraints(&r).passed());
    }

    #[test]
    fn unbalanced_lm_scaling_is_not_a_symmetry(lambda in nonzero_rational()) {
        prop_assume!(lambda != int(1));
        let cs = catalog::u11_z22_coefficients();
        let scaled = scaled_lmn(&cs, &lambda, &lambda.recip(), &int(1));
        prop_assert!(!evaluate_constraints(&scaled).passed());
    }

    #[test]
    fn constraints_pass_iff_jacobi_passes(cs in mutation()) {
        let constraints = evaluate_constraints(&cs).passed();
        let jacobi = check_all_jacobi(&assemble_unchecked(&cs, &NamingScheme::default())).passed();
        prop_assert_eq!(constraints, jacobi);
    }

    #[test]
    fn mutated_set_survives_decompose(cs in mutation()) {
        let alg = assemble_unchecked(&cs, &NamingScheme::default());
        prop_assert_eq!(decompose(&alg).unwrap(), cs);
    }
}

#[test]
fn global_lmn_sign_is_a_symmetry() {
    let cs = catalog::u11_z22_coefficients();
    let minus = int(-1);
    assert!(evaluate_constraints(&scaled_lmn(&cs, &minus, &minus, &minus)).passed());
    for (l, m, n) in [(-1, 1, 1), (1, -1, 1), (1, 1, -1), (-1, -1, 1)] {
        let s = scaled_lmn(&cs, &int(l), &int(m), &int(n));
        assert!(!evaluate_constraints(&s).passed(), "({l},{m},{n})");
    }
}

#[test]
fn sign_rescalings_act_on_lmn_by_a_common_sign() {
    let cs = catalog::u11_z22_coefficients();
    let minus = int(-1);
    let negated = scaled_lmn(&cs, &minus, &minus, &minus);
    for bits in 0..8u8 {
        let pick = |bit: u8| if bits & bit != 0 { int(-1) } else { int(1) };
        let (a, b, g) = (pick(1), pick(2), pick(4));
        let r = cs
            .rescaled(&[a.clone(), a.clone(), a.clone(), a], &[b.clone(), b], &[g.clone(), g])
            .unwrap();
        assert!(r == cs || r == negated, "bits {bits:03b}");
    }
}
