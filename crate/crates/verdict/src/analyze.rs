use orbispace_reducer::{reduce_to_2stable, ReduceError};
use orbispace_repmodel::{
    component_group, factors_over_partition, fixed_dim_on_v0, validate, Block, ComponentGroup, MonomialElement,
    RepError, RepSpec,
};
use orbispace_weightset::is_q_stable;

use crate::dim1::check_dim1;
use crate::factor::{factor_spec, partition_blocks};
use crate::finite::check_finite_case;
use crate::main_conditions::main_verdict;
use crate::{element_to_json, AnalyzeError, CertStep, Smooth, Tag, Topological, Verdict};

fn capped(tag: Tag, cap: usize, what: &str) -> Verdict {
    Verdict::unknown(vec![CertStep::new(tag, format!("{what}: component group exceeds the cap of {cap}"))])
}

fn soften(r: Result<Verdict, AnalyzeError>, tag: Tag, what: &str) -> Result<Verdict, AnalyzeError> {
    match r {
        Err(AnalyzeError::Rep(RepError::CapExceeded { cap })) => Ok(capped(tag, cap, what)),
        other => other,
    }
}

/// A coset containing an element that is the identity on the lines and a
/// reflection of `V0`.
fn v0_reflection(group: &ComponentGroup) -> Option<MonomialElement> {
    let spec = group.spec();
    group.cosets.iter().find_map(|c| {
        let b = &c.representative.v0_block;
        if spec.v0_dim - fixed_dim_on_v0(b) != 1 {
            return None;
        }
        let mut e = spec.identity();
        e.v0_block = b.clone();
        group.locate(&e).map(|_| e)
    })
}

fn block_name(b: &Block) -> String {
    if b.v0 {
        "V0".to_string()
    } else {
        format!("lines {:?}", b.lines)
    }
}

pub fn analyze(spec: &RepSpec) -> Result<Verdict, AnalyzeError> {
    validate(spec)?;
    if !is_q_stable(&spec.weights, 1)? {
        let all: Vec<usize> = (0..spec.lines()).collect();
        let span = spec.weights.rank_of(&all);
        let k = (0..spec.lines())
            .find(|&k| spec.weights.rank_of(&all.iter().copied().filter(|&j| j != k).collect::<Vec<_>>()) < span)
            .expect("a non-1-stable set has a coloop");
        let step = CertStep::new(Tag::Prop1st, format!("weights are not 1-stable: removing item {k} lowers the span"))
            .with_witness(serde_json::json!({ "removed": k }));
        return Ok(Verdict::new(Topological::No, Smooth::No, vec![step]));
    }

    let trace = match reduce_to_2stable(spec) {
        Ok(t) => t,
        Err(ReduceError::Rep(RepError::CapExceeded { cap })) => return Ok(capped(Tag::Reduction, cap, "reduction")),
        Err(e) => return Err(e.into()),
    };
    let mut certificate = Vec::new();
    for (k, step) in trace.steps.iter().enumerate() {
        certificate.push(CertStep::new(
            Tag::Reduction,
            format!(
                "step {k}: classes {:?} eliminated; torus {} -> {}, V0 {} -> {}",
                step.class_orbit, step.dims.m_before, step.dims.m_after, step.dims.v0_before, step.dims.v0_after
            ),
        ));
        let sizes: Vec<usize> = step.class_orbit.iter().map(Vec::len).collect();
        certificate.push(CertStep::new(
            Tag::TorExample,
            format!("each class of sizes {sizes:?} has quotient C^n / T^(n-1) = R^(n-1) + C"),
        ));
        if !step.group_propagated {
            let why = step.warning.clone().unwrap_or_default();
            certificate.push(CertStep::new(Tag::Reduction, format!("generators not propagated: {why}")));
            return Ok(Verdict::unknown(certificate));
        }
    }
    let r = trace.final_spec;

    let group = match component_group(&r) {
        Ok(g) => g,
        Err(RepError::CapExceeded { cap }) => {
            certificate.extend(capped(Tag::Submain, cap, "reduced representation").certificate);
            return Ok(Verdict::unknown(certificate));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(e) = v0_reflection(&group) {
        certificate.push(
            CertStep::new(Tag::Cor1dim, "an element is trivial on the lines and a reflection of V0")
                .with_witness(element_to_json(&e)),
        );
        return Ok(Verdict::new(Topological::No, Smooth::No, certificate));
    }

    let mut blocks = partition_blocks(&r)?;
    if blocks.is_empty() {
        blocks.push(Block { lines: vec![], v0: true });
    }
    if blocks.len() > 1 {
        if let Some(i) = (0..group.len()).find(|&i| !factors_over_partition(&group, i, &blocks)) {
            let names: Vec<String> = blocks.iter().map(block_name).collect();
            certificate.push(
                CertStep::new(Tag::Submain, format!("coset {i} is not a product over the blocks {}", names.join(", ")))
                    .with_witness(element_to_json(&group.cosets[i].representative)),
            );
            return Ok(Verdict::new(Topological::Unknown, Smooth::No, certificate));
        }
    }

    let mut fragments = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let f = factor_spec(&r, b);
        let name = block_name(b);
        let v = match f.m() {
            0 => soften(check_finite_case(&f).map_err(Into::into), Tag::Mich, &name)?,
            1 => soften(check_dim1(&f), Tag::Main1, &name)?,
            _ => soften(main_verdict(&f), Tag::MainSufficiency, &name)?,
        };
        certificate.extend(v.certificate.iter().map(|s| CertStep { detail: format!("{name}: {}", s.detail), ..s.clone() }));
        fragments.push(v);
    }

    let all_yes = fragments.iter().all(|v| v.topological == Topological::Yes);
    let smooth_no = fragments.iter().any(|v| v.smooth == Smooth::No);
    if all_yes && fragments.len() > 1 {
        certificate.push(CertStep::new(
            Tag::ProductRule,
            format!("V/G is the product of the {} factor quotients", fragments.len()),
        ));
    }
    let topological = if all_yes { Topological::Yes } else { Topological::Unknown };
    let smooth = if smooth_no {
        Smooth::No
    } else if all_yes {
        Smooth::Open
    } else {
        Smooth::Unknown
    };
    Ok(Verdict::new(topological, smooth, certificate))
}
