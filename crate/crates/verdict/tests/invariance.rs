//! Relabeling lines or conjugating a line must not change the verdict, and
//! every verdict must be internally consistent.

use orbispace_linalg::{rat, Rat, RatMatrix};
use orbispace_repmodel::{validate, Generator, MonomialElement, RepSpec};
use orbispace_verdict::{analyze, Smooth, Tag, Topological, Verdict};
use orbispace_weightset::WeightMultiset;
use proptest::prelude::*;

fn relabel(spec: &RepSpec, pi: &[usize]) -> RepSpec {
    let n = spec.lines();
    let mut items = vec![vec![]; n];
    for j in 0..n {
        items[pi[j]] = spec.weights.items()[j].clone();
    }
    let mut out = spec.clone();
    out.weights = WeightMultiset::new(spec.m(), items).unwrap();
    out.generators = spec
        .generators
        .iter()
        .map(|g| {
            let e = &g.element;
            let mut perm = vec![0; n];
            let mut conj = vec![false; n];
            let mut rot = vec![rat(0, 1); n];
            for j in 0..n {
                perm[pi[j]] = pi[e.perm[j]];
                conj[pi[j]] = e.conj[j];
                rot[pi[j]] = e.rot[j].clone();
            }
            Generator { name: None, element: MonomialElement::new(perm, conj, rot, e.v0_block.clone()) }
        })
        .collect();
    out
}

/// Uses the coordinate `conj(z_k)` on line `k`, whose weight changes sign.
fn flip(spec: &RepSpec, k: usize) -> RepSpec {
    let n = spec.lines();
    let mut items = spec.weights.items().to_vec();
    items[k] = items[k].iter().map(|x| -x).collect();
    let mut out = spec.clone();
    out.weights = WeightMultiset::new(spec.m(), items).unwrap();
    out.generators = spec
        .generators
        .iter()
        .map(|g| {
            let e = &g.element;
            let f = |j: usize| j == k;
            let element = MonomialElement::new(
                e.perm.clone(),
                (0..n).map(|j| e.conj[j] ^ f(j) ^ f(e.perm[j])).collect(),
                (0..n).map(|j| if f(e.perm[j]) { -&e.rot[j] } else { e.rot[j].clone() }).collect::<Vec<Rat>>(),
                e.v0_block.clone(),
            );
            Generator { name: None, element }
        })
        .collect();
    out
}

fn tags(v: &Verdict) -> Vec<Tag> {
    v.certificate.iter().map(|s| s.tag).collect()
}

fn consistent(v: &Verdict) -> bool {
    use Tag::*;
    let yes_tags = [MainSufficiency, Mainp, Mich, GrHi, HG3, GiHr, ProductRule, TorExample];
    let no_tags = [Prop1st, Cor1dim, Cor2dim];
    let smooth_no_tags = [Submain, MainNecessity, Abel, Main1, GrHi, GiHr, Mich];
    let state_ok = match v.topological {
        Topological::Yes => v.smooth == Smooth::Open,
        Topological::No => v.smooth == Smooth::No,
        Topological::Unknown => true,
    };
    let yes_ok = v.topological != Topological::Yes || yes_tags.iter().any(|&t| v.cites(t));
    let no_ok = v.topological != Topological::No || no_tags.iter().any(|&t| v.cites(t));
    let smooth_ok = v.smooth != Smooth::No || smooth_no_tags.iter().chain(&no_tags).any(|&t| v.cites(t));
    state_ok && yes_ok && no_ok && smooth_ok
}

fn rot4() -> impl Strategy<Value = Rat> {
    (0i64..4).prop_map(|k| rat(k, 4))
}

/// Specs on 2 to 4 lines with diagonal, conjugating or swapping generators.
fn spec_strategy() -> impl Strategy<Value = RepSpec> {
    (1usize..=2, 2usize..=4)
        .prop_flat_map(|(m, n)| {
            (
                Just(m),
                proptest::collection::vec(proptest::collection::vec(-2i64..=2, m), n),
                proptest::collection::vec((0u8..3, proptest::collection::vec(rot4(), n)), 0..=2),
            )
        })
        .prop_filter_map("valid spec", |(m, items, gens)| {
            if items.iter().any(|w| w.iter().all(|&x| x == 0)) {
                return None;
            }
            let n = items.len();
            let weights = WeightMultiset::new(m, items).ok()?;
            let elements = gens
                .into_iter()
                .map(|(kind, rot)| {
                    let mut g = MonomialElement::new((0..n).collect(), vec![false; n], rot, RatMatrix::identity(0));
                    if kind == 1 {
                        g.conj = vec![true; n];
                    }
                    if kind == 2 {
                        g.perm.swap(0, 1);
                    }
                    g
                })
                .collect();
            let spec = RepSpec::new(weights, 0, elements);
            validate(&spec).ok()?;
            Some(spec)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn verdicts_are_consistent(spec in spec_strategy()) {
        let v = analyze(&spec).unwrap();
        prop_assert!(consistent(&v), "{:?}", v);
    }

    #[test]
    fn relabeling_lines(spec in spec_strategy(), seed in any::<u64>()) {
        let n = spec.lines();
        let mut pi: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            pi.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let a = analyze(&spec).unwrap();
        let b = analyze(&relabel(&spec, &pi)).unwrap();
        prop_assert_eq!((a.topological, a.smooth), (b.topological, b.smooth));
        prop_assert_eq!(tags(&a), tags(&b));
    }

    #[test]
    fn flipping_a_weight(spec in spec_strategy(), k in 0usize..4) {
        let k = k % spec.lines();
        let a = analyze(&spec).unwrap();
        let b = analyze(&flip(&spec, k)).unwrap();
        prop_assert_eq!((a.topological, a.smooth), (b.topological, b.smooth));
        prop_assert_eq!(tags(&a), tags(&b));
    }
}
