use orbispace_linalg::{rat, Rat, RatMatrix};
use orbispace_repmodel::{component_group, omega_invariants, MonomialElement, RepSpec};
use orbispace_weightset::WeightMultiset;
use proptest::prelude::*;

fn elem(perm: Vec<usize>, rot: Vec<Rat>) -> MonomialElement {
    let n = perm.len();
    MonomialElement::new(perm, vec![false; n], rot, RatMatrix::identity(0))
}

/// The imprimitive reflection group `G(r, p, 3)` on weights (1,1,1).
fn grp3(r: i64, p: i64) -> RepSpec {
    let z = || rat(0, 1);
    RepSpec::new(
        WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]),
        0,
        vec![
            elem(vec![1, 0, 2], vec![z(), z(), z()]),
            elem(vec![0, 2, 1], vec![z(), z(), z()]),
            elem(vec![0, 1, 2], vec![rat(1, r), rat(-1, r), z()]),
            elem(vec![0, 1, 2], vec![rat(p, r), z(), z()]),
        ],
    )
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn imprimitive_family_orders() {
    // |G(r,p,3)| = 6 r^3 / p; the scalars it contains number r gcd(3,p) / p
    for (r, p) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3), (4, 2), (6, 3), (5, 5)] {
        let g = component_group(&grp3(r, p)).unwrap();
        assert_eq!(g.len() as i64, 6 * r * r / gcd(3, p), "G({r},{p},3)");
    }
}

fn small_rot() -> impl Strategy<Value = Rat> {
    (0i64..12, 1i64..=12).prop_map(|(a, b)| rat(a, b))
}

fn random_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn ad_constant_on_translates(k in 0usize..24, x in small_rot()) {
        let spec = {
            let z = || rat(0, 1);
            RepSpec::new(
                WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]),
                0,
                vec![
                    elem(vec![1, 2, 0], vec![z(), z(), z()]),
                    elem(vec![0, 1, 2], vec![rat(1, 2), z(), z()]),
                    MonomialElement::new(vec![0, 2, 1], vec![true; 3], vec![z(), z(), z()], RatMatrix::identity(0)),
                ],
            )
        };
        let g = component_group(&spec).unwrap();
        let rep = &g.cosets[k % g.len()].representative;
        let t = MonomialElement::diagonal(&[x.clone(), x.clone(), x], 0);
        prop_assert_eq!(spec.ad_matrix(&t.compose(rep)).unwrap(), g.cosets[k % g.len()].ad.clone());
        prop_assert_eq!(spec.ad_matrix(&rep.compose(&t)).unwrap(), g.cosets[k % g.len()].ad.clone());
    }

    #[test]
    fn omega_even_for_linear_elements_with_trivial_ad(
        perm in random_perm(4),
        rot in proptest::collection::vec(small_rot(), 4),
    ) {
        let spec = RepSpec::new(WeightMultiset::new(1, vec![vec![1]; 4]).unwrap(), 0, vec![]);
        let info = omega_invariants(&elem(perm, rot), &spec).unwrap();
        prop_assert_eq!(info.rk_e_minus_a, 0);
        prop_assert_eq!(info.omega % 2, 0);
    }

    #[test]
    fn composition_is_associative(
        p in proptest::collection::vec((random_perm(3), proptest::collection::vec(any::<bool>(), 3), proptest::collection::vec(small_rot(), 3)), 3),
    ) {
        let e: Vec<MonomialElement> = p
            .into_iter()
            .map(|(perm, conj, rot)| MonomialElement::new(perm, conj, rot, RatMatrix::identity(0)))
            .collect();
        prop_assert_eq!(e[0].compose(&e[1]).compose(&e[2]), e[0].compose(&e[1].compose(&e[2])));
        let inv = e[0].inverse().unwrap();
        prop_assert!(e[0].compose(&inv).is_identity());
    }
}
