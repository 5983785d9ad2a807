use num_traits::{ToPrimitive, Zero};
use orbispace_linalg::{integer_kernel, kernel_basis, rank, BigInt, IntMatrix, Rat, RatMatrix};
use orbispace_repmodel::{validate, Generator, MonomialElement, RepSpec};
use orbispace_weightset::{class_relation, equivalence_classes, is_q_stable, ClassRelation, WeightMultiset};

use crate::planes::PlaneBasis;
use crate::{ReduceError, ReductionStep, StepDims};

fn contradiction(msg: impl Into<String>) -> ReduceError {
    ReduceError::InternalContradiction(msg.into())
}

/// Closes `start` under the class permutation of the generators. `None` when
/// some generator maps a class onto something that is not a class.
fn class_orbit(start: &[usize], classes: &[Vec<usize>], gens: &[MonomialElement]) -> Option<Vec<Vec<usize>>> {
    let mut orbit = vec![start.to_vec()];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let mut image: Vec<usize> = orbit[i].iter().map(|&j| g.perm[j]).collect();
            image.sort_unstable();
            if !classes.contains(&image) {
                return None;
            }
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        i += 1;
    }
    Some(orbit)
}

/// Character lattice of the torus left after dividing by the subtori that
/// act on a single class only, in Hermite form.
fn reduced_lattice(p: &WeightMultiset, orbit: &[Vec<usize>]) -> Result<Vec<Vec<BigInt>>, ReduceError> {
    let m = p.torus_dim();
    let mut h: Vec<Vec<Rat>> = Vec::new();
    for n in orbit {
        let rest: Vec<usize> = (0..p.len()).filter(|j| !n.contains(j)).collect();
        let rows: Vec<Vec<Rat>> =
            rest.iter().map(|&j| p.items()[j].iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
        let hi = kernel_basis(&RatMatrix::from_rows(rows, m));
        if hi.len() != n.len() - 1 {
            return Err(contradiction(format!("class {n:?} carries a subtorus of dimension {}", hi.len())));
        }
        h.extend(hi);
    }
    let expected: usize = orbit.iter().map(|n| n.len() - 1).sum();
    if rank(&RatMatrix::from_columns(&h, m)) != expected {
        return Err(contradiction("class subtori do not form a direct product"));
    }
    let cols: Vec<Vec<BigInt>> = h
        .iter()
        .map(|v| {
            let l = v.iter().fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut mat = IntMatrix::zeros(m, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            mat.data[i * cols.len() + j] = x.clone();
        }
    }
    let lattice = integer_kernel(&mat);
    if lattice.rank() != m - expected {
        return Err(contradiction("reduced character lattice has the wrong rank"));
    }
    Ok(lattice.basis)
}

/// Coordinates of `chi` in an upper-echelon lattice basis.
fn coordinates(basis: &[Vec<BigInt>], chi: &[i64]) -> Result<Vec<i64>, ReduceError> {
    let chi: Vec<Rat> = chi.iter().map(|&x| Rat::from_integer(x.into())).collect();
    let mut c: Vec<Rat> = Vec::with_capacity(basis.len());
    for (r, b) in basis.iter().enumerate() {
        let p = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        let done = (0..r).fold(Rat::zero(), |s, k| s + &c[k] * Rat::from_integer(basis[k][p].clone()));
        c.push((&chi[p] - done) / Rat::from_integer(b[p].clone()));
    }
    let back: Vec<Rat> = (0..chi.len())
        .map(|i| (0..basis.len()).fold(Rat::zero(), |s, r| s + &c[r] * Rat::from_integer(basis[r][i].clone())))
        .collect();
    if back != chi {
        return Err(contradiction("character is outside the reduced lattice"));
    }
    c.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_i64().ok_or_else(|| contradiction("weight overflows i64"))
            } else {
                Err(contradiction("character has fractional reduced coordinates"))
            }
        })
        .collect()
}

/// Leading `(n-1)`-block of `I - J/n`: Gram form of the sum-zero hyperplane
/// in the basis of projected unit vectors `P e_1, ..., P e_{n-1}`.
fn hyperplane_gram(n: usize) -> RatMatrix {
    let mut g = RatMatrix::zeros(n - 1, n - 1);
    let inv = Rat::new(BigInt::from(1), BigInt::from(n));
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            g[(i, j)] = if i == j { Rat::from_integer(1.into()) - &inv } else { -inv.clone() };
        }
    }
    g
}

struct Layout {
    survivors: Vec<usize>,
    /// Position of the new line for each orbit class, `None` when folded.
    new_line: Vec<Option<usize>>,
    hyper_off: Vec<usize>,
    plane_off: Vec<Option<usize>>,
    v0_dim: usize,
}

pub fn reduce_step(spec: &RepSpec) -> Result<(RepSpec, ReductionStep), ReduceError> {
    let p = &spec.weights;
    if !is_q_stable(p, 1)? {
        return Err(ReduceError::Not1Stable);
    }
    let classes = equivalence_classes(p);
    let start = classes.iter().filter(|c| c.len() >= 2).min().cloned().ok_or(ReduceError::NoReducibleClass)?;
    let gens = spec.generator_elements();
    let mut warning = None;
    let mut propagate = true;
    let orbit = match class_orbit(&start, &classes, &gens) {
        Some(o) => o,
        None => {
            propagate = false;
            warning = Some("a generator does not permute the equivalence classes; generators dropped".to_string());
            vec![start]
        }
    };
    let relations: Vec<ClassRelation> = orbit.iter().map(|n| class_relation(p, n)).collect::<Result<_, _>>()?;

    let lattice = reduced_lattice(p, &orbit)?;
    let m_after = lattice.len();
    let new_weights: Vec<Vec<i64>> =
        relations.iter().map(|r| coordinates(&lattice, &r.combined_weight(p))).collect::<Result<_, _>>()?;

    let removed: Vec<usize> = orbit.iter().flatten().copied().collect();
    let survivors: Vec<usize> = (0..p.len()).filter(|j| !removed.contains(j)).collect();
    let mut items: Vec<Vec<i64>> =
        survivors.iter().map(|&j| coordinates(&lattice, &p.items()[j])).collect::<Result<_, _>>()?;
    let mut new_line = Vec::new();
    for w in &new_weights {
        if w.iter().all(|&x| x == 0) {
            new_line.push(None);
        } else {
            new_line.push(Some(items.len()));
            items.push(w.clone());
        }
    }
    let mut v0_dim = spec.v0_dim;
    let mut hyper_off = Vec::new();
    for n in &orbit {
        hyper_off.push(v0_dim);
        v0_dim += n.len() - 1;
    }
    let mut plane_off = Vec::new();
    for nl in &new_line {
        if nl.is_none() {
            plane_off.push(Some(v0_dim));
            v0_dim += 2;
        } else {
            plane_off.push(None);
        }
    }
    let layout = Layout { survivors, new_line, hyper_off, plane_off, v0_dim };

    // per generator: (class map, conj flag, rotation) on each orbit class
    let mut images = Vec::new();
    if propagate {
        for (gi, g) in gens.iter().enumerate() {
            images.push(class_images(gi, g, &orbit, &relations)?);
        }
    }
    let folded_rots: Vec<&Rat> = images
        .iter()
        .flat_map(|im: &Vec<(usize, bool, Rat)>| im.iter().enumerate())
        .filter(|(i, _)| layout.new_line[*i].is_none())
        .map(|(_, (_, _, r))| r)
        .collect();
    let plane_basis = PlaneBasis::for_rotations(folded_rots.iter().copied());
    if propagate && !gens.is_empty() && plane_basis.is_none() {
        propagate = false;
        warning = Some("rotation on a torus-trivial plane has no rational model; generators dropped".to_string());
    }
    let basis = plane_basis.unwrap_or(PlaneBasis::Square);

    let mut gram = spec.v0_gram.clone();
    for n in &orbit {
        gram = gram.direct_sum(&hyperplane_gram(n.len()));
    }
    for nl in &layout.new_line {
        if nl.is_none() {
            gram = gram.direct_sum(&basis.gram());
        }
    }

    let generators = if propagate {
        spec.generators
            .iter()
            .zip(&images)
            .map(|(gen, im)| Generator {
                name: gen.name.clone(),
                element: push_forward(&gen.element, im, &orbit, &layout, basis, spec.v0_dim),
            })
            .collect()
    } else {
        Vec::new()
    };
    if !propagate && !gens.is_empty() && warning.is_none() {
        warning = Some("generators dropped".to_string());
    }

    let reduced = RepSpec {
        weights: WeightMultiset::new(m_after, items)?,
        v0_dim: layout.v0_dim,
        v0_gram: gram,
        generators,
        caps: spec.caps.clone(),
    };
    validate(&reduced)?;
    if !is_q_stable(&reduced.weights, 1)? {
        return Err(contradiction("reduction lost 1-stability"));
    }
    let shrink: usize = orbit.iter().map(|n| n.len() - 1).sum();
    if spec.real_dim() - reduced.real_dim() != shrink || spec.m() - m_after != shrink {
        return Err(contradiction("dimension ledger does not balance"));
    }
    let step = ReductionStep {
        class_orbit: orbit,
        relations,
        new_weights,
        dims: StepDims { m_before: spec.m(), m_after, v0_before: spec.v0_dim, v0_after: reduced.v0_dim },
        group_propagated: propagate || gens.is_empty(),
        warning,
    };
    Ok((reduced, step))
}

/// For each orbit class `i`: the image class `k`, whether the new coordinate
/// is conjugated, and its rotation.
///
/// With `w_i = prod_j c_{s_j}(z_j)^{a_j}` and `g: z_j -> e(theta_j) c_j(z_j)`
/// landing on line `perm(j)`, one gets
/// `w_k(gz) = e(sum_j a_j s_{perm j} theta_j) c_eps(w_i(z))`, where
/// `eps_j = [s_{perm j} < 0] xor conj_j xor [s_j < 0]` must not depend on `j`.
fn class_images(
    gi: usize,
    g: &MonomialElement,
    orbit: &[Vec<usize>],
    relations: &[ClassRelation],
) -> Result<Vec<(usize, bool, Rat)>, ReduceError> {
    let mut out = Vec::new();
    for (i, n) in orbit.iter().enumerate() {
        let mut image: Vec<usize> = n.iter().map(|&j| g.perm[j]).collect();
        image.sort_unstable();
        let k = orbit.iter().position(|c| *c == image).expect("orbit is closed");
        let (ri, rk) = (&relations[i], &relations[k]);
        let mut eps = None;
        let mut rot = Rat::zero();
        for (pos, &j) in n.iter().enumerate() {
            let q = rk.indices.iter().position(|&x| x == g.perm[j]).unwrap();
            if ri.coeffs[pos] != rk.coeffs[q] {
                return Err(contradiction("class coefficients are not preserved by a generator"));
            }
            let e = (rk.flips[q] < 0) ^ g.conj[j] ^ (ri.flips[pos] < 0);
            if *eps.get_or_insert(e) != e {
                return Err(ReduceError::MixedConjugationOnClass { generator: gi, class: n.clone() });
            }
            rot += Rat::from_integer((ri.coeffs[pos] * i64::from(rk.flips[q])).into()) * &g.rot[j];
        }
        out.push((k, eps.unwrap_or(false), rot));
    }
    Ok(out)
}

fn push_forward(
    g: &MonomialElement,
    images: &[(usize, bool, Rat)],
    orbit: &[Vec<usize>],
    layout: &Layout,
    basis: PlaneBasis,
    old_v0: usize,
) -> MonomialElement {
    let lines = layout.survivors.len() + layout.new_line.iter().flatten().count();
    let mut perm = vec![0; lines];
    let mut conj = vec![false; lines];
    let mut rot = vec![Rat::zero(); lines];
    for (new, &old) in layout.survivors.iter().enumerate() {
        perm[new] = layout.survivors.iter().position(|&x| x == g.perm[old]).expect("survivors are permuted");
        conj[new] = g.conj[old];
        rot[new] = g.rot[old].clone();
    }
    let mut b = RatMatrix::zeros(layout.v0_dim, layout.v0_dim);
    for i in 0..old_v0 {
        for j in 0..old_v0 {
            b[(i, j)] = g.v0_block[(i, j)].clone();
        }
    }
    for (i, (k, eps, theta)) in images.iter().enumerate() {
        if let Some(src) = layout.new_line[i] {
            let dst = layout.new_line[*k].expect("orbit classes fold together");
            perm[src] = dst;
            conj[src] = *eps;
            rot[src] = theta.clone();
        }
        if let (Some(src), Some(dst)) = (layout.plane_off[i], layout.plane_off[*k]) {
            let blk = basis.matrix(theta, *eps);
            for r in 0..2 {
                for c in 0..2 {
                    b[(dst + r, src + c)] = blk[(r, c)].clone();
                }
            }
        }
        // permutation of the moment coordinates, basis P e_p for p < n-1
        let (ni, nk) = (&orbit[i], &orbit[*k]);
        let last = nk.len() - 1;
        for (pos, &j) in ni.iter().enumerate().take(ni.len() - 1) {
            let q = nk.iter().position(|&x| x == g.perm[j]).unwrap();
            let col = layout.hyper_off[i] + pos;
            if q < last {
                b[(layout.hyper_off[*k] + q, col)] = Rat::from_integer(1.into());
            } else {
                for r in 0..last {
                    b[(layout.hyper_off[*k] + r, col)] = Rat::from_integer((-1).into());
                }
            }
        }
    }
    MonomialElement::new(perm, conj, rot, b)
}
