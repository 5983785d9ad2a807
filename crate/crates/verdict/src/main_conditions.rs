//! Conditions (i)-(iv) for a factor whose torus has dimension at least 2.

use orbispace_linalg::RatMatrix;
use orbispace_repmodel::{component_group, ComponentGroup, RepSpec};
use orbispace_weightset::is_q_stable;

use crate::stabilizer::{sample_condition_iv, Counterexample};
use crate::{element_to_json, vector_to_json, AnalyzeError, CertStep, Smooth, Tag, Topological, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IvStatus {
    Proved,
    Falsified(Counterexample),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainConditions {
    /// `m + 2` nonzero weights and 2-stable.
    pub i: bool,
    /// The lines split into invariant 2-planes compatible with the weights.
    pub ii: bool,
    /// Some coset has `Ad = -E` and fixes every line.
    pub iii: bool,
    pub iv: IvStatus,
    /// Coset witnessing (iii).
    pub minus_e_coset: Option<usize>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn check_main_conditions(spec: &RepSpec) -> Result<(MainConditions, ComponentGroup), AnalyzeError> {
    let m = spec.m();
    let n = spec.lines();
    let group = component_group(spec)?;
    let i = spec.weights.nonzero_indices().len() == m + 2 && is_q_stable(&spec.weights, 2)?;
    let perms: Vec<&Vec<usize>> = spec.generators.iter().map(|g| &g.element.perm).collect();
    let all_trivial = perms.iter().all(|p| p.iter().enumerate().all(|(j, &k)| j == k));
    let ii = if m > 2 {
        all_trivial
    } else {
        subsets(n, m).iter().any(|s| perms.iter().all(|p| s.iter().all(|j| s.contains(&p[*j]))))
    };
    let minus_e = RatMatrix::zeros(m, m).sub(&RatMatrix::identity(m));
    let minus_e_coset = (0..group.len()).find(|&c| {
        let cs = &group.cosets[c];
        cs.ad == minus_e && cs.representative.perm.iter().enumerate().all(|(j, &k)| j == k)
    });
    let iv = if all_trivial {
        IvStatus::Proved
    } else {
        match sample_condition_iv(&group, spec.caps.seed, spec.caps.iv_trials) {
            Some(c) => IvStatus::Falsified(c),
            None => IvStatus::Inconclusive,
        }
    };
    Ok((MainConditions { i, ii, iii: minus_e_coset.is_some(), iv, minus_e_coset }, group))
}

pub(crate) fn main_verdict(spec: &RepSpec) -> Result<Verdict, AnalyzeError> {
    let (c, group) = check_main_conditions(spec)?;
    let m = spec.m();
    let mut failed = Vec::new();
    if !c.i {
        failed.push(format!("(i): {} nonzero weights, need {} and 2-stability", spec.weights.nonzero_indices().len(), m + 2));
    }
    if !c.ii {
        failed.push("(ii): no decomposition into invariant planes".to_string());
    }
    if !c.iii {
        failed.push("(iii): no coset with Ad = -E fixing every line".to_string());
    }
    if !failed.is_empty() {
        let step = CertStep::new(Tag::MainNecessity, format!("torus dimension {m}; fails {}", failed.join("; ")));
        return Ok(Verdict::new(Topological::Unknown, Smooth::No, vec![step]));
    }
    let w = c.minus_e_coset.expect("(iii) holds");
    let base = format!(
        "torus dimension {m}: (i) {} = m + 2 nonzero weights, 2-stable; (ii) holds; (iii) coset {w} has Ad = -E",
        m + 2
    );
    match c.iv {
        IvStatus::Proved => Ok(Verdict::new(
            Topological::Yes,
            Smooth::Open,
            vec![
                CertStep::new(Tag::MainSufficiency, base)
                    .with_witness(element_to_json(&group.cosets[w].representative)),
                CertStep::new(Tag::AdGE, "every line is invariant, so (iv) holds"),
            ],
        )),
        IvStatus::Falsified(ce) => Ok(Verdict::new(
            Topological::Unknown,
            Smooth::No,
            vec![CertStep::new(
                Tag::MainNecessity,
                format!(
                    "(iv) fails: stabilizer of order {} whose Omega part generates order {}",
                    ce.stabilizer_order, ce.omega_generated_order
                ),
            )
            .with_witness(vector_to_json(&ce.vector))],
        )),
        IvStatus::Inconclusive => Ok(Verdict::unknown(vec![CertStep::new(
            Tag::MainSufficiency,
            format!("{base}; (iv) neither proved nor refuted in {} trials", spec.caps.iv_trials),
        )])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbispace_repmodel::MonomialElement;
    use orbispace_weightset::WeightMultiset;

    fn example(gens: Vec<MonomialElement>) -> RepSpec {
        RepSpec::new(WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]), 0, gens)
    }

    #[test]
    fn conjugate_all_example() {
        let (c, _) = check_main_conditions(&example(vec![MonomialElement::conjugate_all(4, 0)])).unwrap();
        assert!(c.i && c.ii && c.iii);
        assert_eq!(c.iv, IvStatus::Proved);
        let v = main_verdict(&example(vec![MonomialElement::conjugate_all(4, 0)])).unwrap();
        assert_eq!((v.topological, v.smooth), (Topological::Yes, Smooth::Open));
        assert!(v.cites(Tag::MainSufficiency) && v.cites(Tag::AdGE));
    }

    #[test]
    fn torus_only_lacks_minus_e() {
        let (c, _) = check_main_conditions(&example(vec![])).unwrap();
        assert!(c.i && c.ii && !c.iii);
        let v = main_verdict(&example(vec![])).unwrap();
        assert_eq!(v.smooth, Smooth::No);
        assert!(v.cites(Tag::MainNecessity));
    }

    #[test]
    fn five_weights_fail_count() {
        let s = RepSpec::new(
            WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1], &[1, 2]]),
            0,
            vec![MonomialElement::conjugate_all(5, 0)],
        );
        let (c, _) = check_main_conditions(&s).unwrap();
        assert!(!c.i);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
