//! Factors with a one-dimensional torus.
//!
//! Lines are first conjugated so that every weight is positive; then
//! `Ad = +1` elements are complex-linear and `Ad = -1` elements antilinear
//! on all three lines at once. `H` is the subgroup generated by the complex
//! reflections, all of which lie in finitely many torus translates.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Zero};
use orbispace_linalg::{rat, solve_mod_one, BigInt, Congruence, IntMatrix, Rat, RatMatrix};
use orbispace_repmodel::{component_group, ComponentGroup, Generator, MeetsOmega, MonomialElement, RepError, RepSpec};

use crate::{AnalyzeError, CertStep, Smooth, Tag, Topological, Verdict};

const MAX_CONJUGATOR_GRID: i64 = 96;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionSubgroupReport {
    pub order: usize,
    /// The complex reflections of `G`, in sign-normalized coordinates.
    pub generators: Vec<MonomialElement>,
    pub elements: Vec<MonomialElement>,
    pub is_irreducible_c: bool,
    /// `(p, q)` when `H` is `G(pq, p, 3)` after a diagonal change of basis.
    pub is_g_pq_p_3: Option<(u64, u64)>,
    pub degrees_distinct: bool,
}

/// Replaces `z_j` by its conjugate on every line with negative weight.
pub fn normalize_signs(spec: &RepSpec) -> RepSpec {
    assert_eq!(spec.m(), 1, "sign normalization needs a one-dimensional torus");
    let neg: Vec<bool> = spec.weights.items().iter().map(|w| w[0] < 0).collect();
    let mut out = spec.clone();
    out.weights = orbispace_weightset::WeightMultiset::new(1, spec.weights.items().iter().map(|w| vec![w[0].abs()]).collect())
        .expect("same shape");
    out.generators = spec
        .generators
        .iter()
        .map(|g| {
            let e = &g.element;
            let n = e.lines();
            let element = MonomialElement::new(
                e.perm.clone(),
                (0..n).map(|j| e.conj[j] ^ neg[j] ^ neg[e.perm[j]]).collect(),
                (0..n).map(|j| if neg[e.perm[j]] { -&e.rot[j] } else { e.rot[j].clone() }).collect(),
                e.v0_block.clone(),
            );
            Generator { name: g.name.clone(), element }
        })
        .collect();
    out
}

fn is_linear(g: &MonomialElement) -> bool {
    !g.is_antilinear_anywhere()
}

fn closure(gens: &[MonomialElement], identity: MonomialElement, cap: usize) -> Result<Vec<MonomialElement>, RepError> {
    let mut seen = HashSet::from([identity.clone()]);
    let mut out = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(RepError::CapExceeded { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Torus translates `t g` of a linear coset representative that are complex
/// reflections.
fn reflections_in_coset(g: &MonomialElement, w: &[i64], cap: usize) -> Result<Vec<MonomialElement>, RepError> {
    let n = g.lines();
    let cycles = g.cycles();
    let fixed: Vec<usize> = cycles.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    let moved: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() > 1).collect();
    // each equation: (coefficient of t, constant), meaning coeff * t + constant = 0 mod 1
    let mut systems: Vec<(Vec<(i64, Rat)>, Option<usize>)> = Vec::new();
    match moved.as_slice() {
        [] => {
            for l in 0..n {
                let eqs = (0..n).filter(|&j| j != l).map(|j| (w[j], g.rot[j].clone())).collect();
                systems.push((eqs, Some(l)));
            }
        }
        [c] if c.len() == 2 => {
            let (j, k) = (c[0], c[1]);
            let mut eqs: Vec<(i64, Rat)> = fixed.iter().map(|&l| (w[l], g.rot[l].clone())).collect();
            eqs.push((w[j] + w[k], &g.rot[j] + &g.rot[k]));
            systems.push((eqs, None));
        }
        _ => return Ok(vec![]),
    }
    let mut out = Vec::new();
    for (eqs, rotated) in systems {
        let rows: Vec<Vec<i64>> = eqs.iter().map(|(c, _)| vec![*c]).collect();
        let b: Vec<Rat> = eqs.iter().map(|(_, r)| -r.clone()).collect();
        let sols = match solve_mod_one(&IntMatrix::from_i64(&rows), &b, cap) {
            Congruence::Finite(s) => s,
            Congruence::Infeasible => continue,
            Congruence::Infinite | Congruence::TooMany(_) => return Err(RepError::CapExceeded { cap }),
        };
        for t in sols {
            let delta: Vec<Rat> = w.iter().map(|&x| Rat::from_integer(x.into()) * &t[0]).collect();
            let h = MonomialElement::diagonal(&delta, g.v0_dim()).compose(g);
            if rotated.is_none_or(|l| !h.rot[l].is_zero()) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

fn orbit_of_line(elems: &[MonomialElement], n: usize) -> usize {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(j) = stack.pop() {
        for e in elems {
            if !seen[e.perm[j]] {
                seen[e.perm[j]] = true;
                stack.push(e.perm[j]);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Irreducibility over `C` of the group generated by complex-linear
/// monomial elements (scalars allowed). Intransitive means reducible; a
/// transitive one is reducible iff it fixes a line `(1, e(phi_1), ...)`,
/// which is a system of congruences in the phases and the eigenvalues.
pub(crate) fn linear_irreducible(elems: &[MonomialElement], n: usize) -> bool {
    if n == 0 || orbit_of_line(elems, n) < n {
        return false;
    }
    let unknowns = (n - 1) + elems.len();
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for (a, e) in elems.iter().enumerate() {
        for j in 0..n {
            let mut row = vec![0i64; unknowns];
            if e.perm[j] != 0 {
                row[e.perm[j] - 1] += 1;
            }
            if j != 0 {
                row[j - 1] -= 1;
            }
            row[n - 1 + a] += 1;
            rows.push(row);
            b.push(e.rot[j].clone());
        }
    }
    if rows.is_empty() {
        return n == 1;
    }
    !solve_mod_one(&IntMatrix::from_i64(&rows), &b, 0).is_feasible()
}

/// `c h c^{-1}` for the diagonal `c = diag(e(rho))`.
fn conjugate_diag(h: &MonomialElement, rho: &[Rat]) -> MonomialElement {
    let neg: Vec<Rat> = rho.iter().map(|x| -x.clone()).collect();
    MonomialElement::diagonal(rho, h.v0_dim()).compose(h).compose(&MonomialElement::diagonal(&neg, h.v0_dim()))
}

fn perm_element(perm: Vec<usize>, v0: usize) -> MonomialElement {
    let n = perm.len();
    MonomialElement::new(perm, vec![false; n], vec![Rat::zero(); n], RatMatrix::identity(v0))
}

/// Recognizes `G(pq, p, 3)` up to a diagonal change of basis.
fn recognize_imprimitive(h: &[MonomialElement], cap: usize) -> Option<(u64, u64)> {
    if h.first()?.lines() != 3 {
        return None;
    }
    let zero = Rat::zero();
    let t01 = h.iter().find(|e| e.perm == [1, 0, 2] && e.rot[2] == zero && (&e.rot[0] + &e.rot[1]).is_integer())?;
    let t12 = h.iter().find(|e| e.perm == [0, 2, 1] && e.rot[0] == zero && (&e.rot[1] + &e.rot[2]).is_integer())?;
    let c1 = -t01.rot[0].clone();
    let c2 = &c1 - &t12.rot[1];
    let rho = [zero.clone(), c1, c2];
    let conj: HashSet<MonomialElement> = h.iter().map(|e| conjugate_diag(e, &rho)).collect();
    let diag: Vec<&MonomialElement> = conj.iter().filter(|e| e.perm == [0, 1, 2]).collect();
    let m = diag.iter().flat_map(|e| e.rot.iter()).fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let m = u64::try_from(m).ok()?;
    let cube = m.checked_pow(3)?;
    let d = diag.len() as u64;
    if cube % d != 0 {
        return None;
    }
    let p = cube / d;
    if p == 0 || m % p != 0 {
        return None;
    }
    let q = m / p;
    let gens = vec![
        perm_element(vec![1, 0, 2], 0),
        perm_element(vec![0, 2, 1], 0),
        MonomialElement::diagonal(&[rat(1, q as i64), zero.clone(), zero.clone()], 0),
        MonomialElement::diagonal(&[zero.clone(), rat(1, m as i64), rat(-1, m as i64)], 0),
    ];
    let standard = closure(&gens, MonomialElement::identity(3, 0), cap).ok()?;
    (standard.len() == conj.len() && standard.iter().all(|e| conj.contains(e))).then_some((p, q))
}

fn reflection_subgroup_of(ns: &RepSpec, group: &ComponentGroup) -> Result<ReflectionSubgroupReport, RepError> {
    let cap = ns.caps.group_order_cap;
    let w: Vec<i64> = ns.weights.items().iter().map(|x| x[0]).collect();
    let mut seen = HashSet::new();
    let mut refl = Vec::new();
    for c in group.cosets.iter().filter(|c| is_linear(&c.representative)) {
        for r in reflections_in_coset(&c.representative, &w, cap)? {
            if seen.insert(r.clone()) {
                refl.push(r);
            }
        }
    }
    let elements = closure(&refl, ns.identity(), cap)?;
    let is_irreducible_c = linear_irreducible(&refl, ns.lines());
    let is_g_pq_p_3 = recognize_imprimitive(&elements, cap);
    let degrees_distinct = match is_g_pq_p_3 {
        Some((p, _)) => p != 3,
        None => is_irreducible_c,
    };
    Ok(ReflectionSubgroupReport {
        order: elements.len(),
        generators: refl,
        elements,
        is_irreducible_c,
        is_g_pq_p_3,
        degrees_distinct,
    })
}

/// The subgroup `H` generated by the complex reflections of `G`.
pub fn reflection_subgroup(spec: &RepSpec) -> Result<ReflectionSubgroupReport, RepError> {
    let ns = normalize_signs(spec);
    let group = component_group(&ns)?;
    reflection_subgroup_of(&ns, &group)
}

/// The group `G(q,3)` on lines with the given (equal) weights.
fn standard_gq3(ns: &RepSpec, q: u64) -> RepSpec {
    let z = Rat::zero;
    let mut g23 = perm_element(vec![0, 2, 1], 0);
    g23.conj = vec![true; 3];
    RepSpec {
        generators: vec![
            Generator { name: None, element: perm_element(vec![1, 2, 0], 0) },
            Generator { name: None, element: MonomialElement::diagonal(&[rat(1, q as i64), z(), z()], 0) },
            Generator { name: None, element: g23 },
        ],
        ..ns.clone()
    }
}

enum Comparison {
    Equal,
    NotEqual(String),
    Undecided(String),
}

/// Is `G = G(q,3)` after relabeling lines and a diagonal change of basis?
/// Conjugators are searched with rotations in `(1/N) Z`.
fn compare_with_gq3(ns: &RepSpec, group: &ComponentGroup, h: &ReflectionSubgroupReport) -> Result<(Comparison, u64), RepError> {
    let q = (1..=h.order as u64).find(|q| q * q * q >= h.order as u64).unwrap_or(1);
    let h_is_dq = q * q * q == h.order as u64
        && h.elements.iter().all(|e| e.perm == [0, 1, 2] && e.rot.iter().all(|r| (r * Rat::from_integer(q.into())).is_integer()));
    if !h_is_dq {
        return Ok((Comparison::NotEqual(format!("H of order {} is not the diagonal group of some exponent q", h.order)), q));
    }
    if q < 2 {
        return Ok((Comparison::NotEqual("H is trivial, so q = 1".into()), q));
    }
    if ns.weights.items().iter().any(|w| w != &ns.weights.items()[0]) {
        return Ok((Comparison::NotEqual("weights differ, the torus is not scalar".into()), q));
    }
    let std = standard_gq3(ns, q);
    let std_group = component_group(&std)?;
    let l = ns
        .generators
        .iter()
        .flat_map(|g| g.element.rot.iter())
        .fold(BigInt::from(q), |l, r| l.lcm(r.denom()));
    let grid = l * 24;
    // a grid too fine to search exhaustively is replaced by relabelings only
    let (n, exhaustive) = match i64::try_from(&grid) {
        Ok(n) if n <= MAX_CONJUGATOR_GRID => (n, true),
        _ => (1, false),
    };
    let gens = ns.generator_elements();
    let std_gens = std.generator_elements();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        for a in 0..n {
            for b in 0..n {
                let c = MonomialElement::diagonal(&[Rat::zero(), rat(a, n), rat(b, n)], 0).compose(&perm_element(perm.to_vec(), 0));
                let ci = c.inverse().expect("monomial elements are invertible");
                let forward = gens.iter().all(|g| std_group.locate(&c.compose(g).compose(&ci)).is_some());
                if forward && std_gens.iter().all(|s| group.locate(&ci.compose(s).compose(&c)).is_some()) {
                    return Ok((Comparison::Equal, q));
                }
            }
        }
    }
    if !exhaustive {
        return Ok((Comparison::Undecided(format!("conjugator grid 1/{grid} too fine to search")), q));
    }
    Ok((Comparison::NotEqual(format!("no monomial change of basis on the 1/{n} grid maps G onto G({q},3)")), q))
}

pub fn check_dim1(spec: &RepSpec) -> Result<Verdict, AnalyzeError> {
    let ns = normalize_signs(spec);
    let group = component_group(&ns)?;
    let minus = RatMatrix::from_i64(&[vec![-1]]);
    if !group.cosets.iter().any(|c| c.ad == minus) {
        let step = CertStep::new(Tag::Abel, format!("torus dimension 1 and Ad(G) = {{E}} on {} lines", ns.lines()));
        return Ok(Verdict::new(Topological::Unknown, Smooth::No, vec![step]));
    }
    if ns.lines() != 3 {
        let step = CertStep::new(Tag::Main1, format!("complex dimension {} is not 3", ns.lines()));
        return Ok(Verdict::new(Topological::Unknown, Smooth::No, vec![step]));
    }
    let h = reflection_subgroup_of(&ns, &group)?;
    let linear: Vec<MonomialElement> =
        group.cosets.iter().map(|c| c.representative.clone()).filter(is_linear).collect();
    let g_irreducible = linear_irreducible(&linear, 3);
    let h_desc = format!(
        "H of order {} is {} over C",
        h.order,
        if h.is_irreducible_c { "irreducible" } else { "reducible" }
    );
    let not_g3q33 = h.is_g_pq_p_3.is_none_or(|(p, _)| p != 3);
    if h.is_irreducible_c && not_g3q33 {
        let what = match h.is_g_pq_p_3 {
            Some((p, q)) => format!("G({},{p},3) with p != 3", p * q),
            None => "not imprimitive of type G(3q,3,3)".to_string(),
        };
        return Ok(Verdict::new(Topological::Yes, Smooth::Open, vec![CertStep::new(Tag::HG3, format!("{h_desc}, {what}"))]));
    }
    if h.is_irreducible_c || !g_irreducible {
        let why = if h.is_irreducible_c { h_desc.clone() } else { format!("{h_desc}; G is reducible over R") };
        let omega: Vec<usize> = (0..group.len()).filter(|&i| group.cosets[i].meets_omega.is_yes()).collect();
        if orbispace_repmodel::cosets_generate(&group, &omega) {
            let step = CertStep::new(Tag::GrHi, format!("{why}; the {} cosets meeting Omega generate G/G0", omega.len()));
            return Ok(Verdict::new(Topological::Yes, Smooth::Open, vec![step]));
        }
        if group.cosets.iter().any(|c| c.meets_omega == MeetsOmega::Unknown) {
            let step = CertStep::new(Tag::GrHi, format!("{why}; Omega membership undecided for some coset"));
            return Ok(Verdict::unknown(vec![step]));
        }
        let step = CertStep::new(Tag::GrHi, format!("{why}; the cosets meeting Omega generate a proper subgroup"));
        return Ok(Verdict::new(Topological::Unknown, Smooth::No, vec![step]));
    }
    let (cmp, q) = compare_with_gq3(&ns, &group, &h)?;
    let base = format!("{h_desc}; G is irreducible over R");
    Ok(match cmp {
        Comparison::Equal => Verdict::new(
            Topological::Yes,
            Smooth::Open,
            vec![CertStep::new(Tag::GiHr, format!("{base}; G = G({q},3)"))],
        ),
        Comparison::NotEqual(why) => Verdict::new(
            Topological::Unknown,
            Smooth::No,
            vec![CertStep::new(Tag::GiHr, format!("{base}; G is not G(q,3) with q > 1: {why}"))],
        ),
        Comparison::Undecided(why) => Verdict::unknown(vec![CertStep::new(Tag::GiHr, format!("{base}; {why}"))]),
    })
}
