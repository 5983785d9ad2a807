use orbispace_repmodel::{component_group, cosets_generate, fixed_dim_on_v0, RepError, RepSpec};

use crate::{element_to_json, CertStep, Smooth, Tag, Topological, Verdict};

/// Finite group on `V0` (no torus): reflections exclude a manifold,
/// generation by pseudoreflections gives one.
pub fn check_finite_case(spec: &RepSpec) -> Result<Verdict, RepError> {
    assert_eq!(spec.m(), 0, "finite case needs a trivial torus");
    let group = component_group(spec)?;
    let n = spec.v0_dim;
    let codim = |i: usize| n - fixed_dim_on_v0(&group.cosets[i].representative.v0_block);
    if let Some(i) = (0..group.len()).find(|&i| codim(i) == 1) {
        let step = CertStep::new(Tag::Cor1dim, format!("element {i} of the finite group of order {} is a reflection", group.len()))
            .with_witness(element_to_json(&group.cosets[i].representative));
        return Ok(Verdict::new(Topological::No, Smooth::No, vec![step]));
    }
    let pseudo: Vec<usize> = (0..group.len()).filter(|&i| codim(i) == 2).collect();
    if cosets_generate(&group, &pseudo) {
        let step = CertStep::new(
            Tag::Mich,
            format!("finite group of order {} is generated by its {} pseudoreflections", group.len(), pseudo.len()),
        );
        Ok(Verdict::new(Topological::Yes, Smooth::Open, vec![step]))
    } else {
        let step = CertStep::new(
            Tag::Mich,
            format!(
                "the {} pseudoreflections do not generate the finite group of order {}",
                pseudo.len(),
                group.len()
            ),
        );
        Ok(Verdict::new(Topological::Unknown, Smooth::No, vec![step]))
    }
}
