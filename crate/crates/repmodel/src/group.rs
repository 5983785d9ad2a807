use std::collections::{HashMap, VecDeque};

use num_traits::Zero;
use orbispace_linalg::{frac, integer_kernel, BigInt, IntMatrix, Lattice, Rat, RatMatrix};

use crate::element::MonomialElement;
use crate::feasibility::{coset_meets_omega, MeetsOmega};
use crate::omega::validate;
use crate::spec::RepSpec;
use crate::RepError;

/// An element of `G/G0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: MonomialElement,
    pub ad: RatMatrix,
    pub meets_omega: MeetsOmega,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CosetKey {
    perm: Vec<usize>,
    conj: Vec<bool>,
    v0_block: RatMatrix,
    /// `d . u mod 1` for the basis vectors `d` of the annihilator lattice,
    /// where `u` are the rotations indexed by target line.
    residue: Vec<Rat>,
}

/// The finite component group, enumerated in BFS order from the identity.
#[derive(Debug, Clone)]
pub struct ComponentGroup {
    pub cosets: Vec<Coset>,
    annihilator: Lattice,
    index: HashMap<CosetKey, usize>,
    spec: RepSpec,
}

/// Which part of `V` a block of a partition covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub lines: Vec<usize>,
    pub v0: bool,
}

/// Annihilator `{d : sum d_j lambda_j = 0}` of the weights.
pub fn weight_annihilator(spec: &RepSpec) -> Lattice {
    let rows: Vec<Vec<BigInt>> =
        spec.weights.items().iter().map(|w| w.iter().map(|&x| BigInt::from(x)).collect()).collect();
    integer_kernel(&IntMatrix::from_rows(&rows, spec.m()))
}

impl ComponentGroup {
    fn key(&self, g: &MonomialElement) -> CosetKey {
        coset_key(g, &self.annihilator)
    }

    pub fn spec(&self) -> &RepSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing `g`, if `g` lies in the group.
    pub fn locate(&self, g: &MonomialElement) -> Option<usize> {
        self.index.get(&self.key(g)).copied()
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        let p = self.cosets[i].representative.compose(&self.cosets[j].representative);
        self.locate(&p).expect("component group is closed")
    }

    /// Cosets of the generators, in generator order.
    pub fn generator_cosets(&self) -> Vec<usize> {
        self.spec.generators.iter().map(|g| self.locate(&g.element).expect("generator in group")).collect()
    }

    pub fn annihilator(&self) -> &Lattice {
        &self.annihilator
    }
}

fn coset_key(g: &MonomialElement, d: &Lattice) -> CosetKey {
    let u = g.target_rotations();
    let residue = d
        .basis
        .iter()
        .map(|b| frac(&b.iter().zip(&u).fold(Rat::zero(), |s, (x, y)| s + Rat::from_integer(x.clone()) * y)))
        .collect();
    CosetKey { perm: g.perm.clone(), conj: g.conj.clone(), v0_block: g.v0_block.clone(), residue }
}

pub fn component_group(spec: &RepSpec) -> Result<ComponentGroup, RepError> {
    validate(spec)?;
    let annihilator = weight_annihilator(spec);
    let cap = spec.caps.group_order_cap;
    let gens = spec.generator_elements();
    let mut reps = vec![spec.identity()];
    let mut index = HashMap::new();
    index.insert(coset_key(&reps[0], &annihilator), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let h = g.compose(&reps[i]);
            let key = coset_key(&h, &annihilator);
            if index.contains_key(&key) {
                continue;
            }
            if reps.len() >= cap {
                return Err(RepError::CapExceeded { cap });
            }
            index.insert(key, reps.len());
            queue.push_back(reps.len());
            reps.push(h);
        }
    }
    let mut cosets = Vec::with_capacity(reps.len());
    for r in reps {
        let ad = spec.ad_matrix(&r)?;
        let meets_omega = match coset_meets_omega(&r, spec) {
            Ok(x) => x,
            Err(RepError::TooManyLinearCycles(_)) => MeetsOmega::Unknown,
            Err(e) => return Err(e),
        };
        cosets.push(Coset { representative: r, ad, meets_omega });
    }
    Ok(ComponentGroup { cosets, annihilator, index, spec: spec.clone() })
}

/// `c` restricted to `block`, identity elsewhere.
pub fn restrict(c: &MonomialElement, block: &Block) -> MonomialElement {
    let mut r = MonomialElement::identity(c.lines(), c.v0_dim());
    for &j in &block.lines {
        r.perm[j] = c.perm[j];
        r.conj[j] = c.conj[j];
        r.rot[j] = c.rot[j].clone();
    }
    if block.v0 {
        r.v0_block = c.v0_block.clone();
    }
    r
}

/// Whether coset `i` is a product of elements each supported on one block.
/// Blocks are expected to be unions of indecomposable components, so that
/// the torus splits along them.
pub fn factors_over_partition(group: &ComponentGroup, i: usize, blocks: &[Block]) -> bool {
    let c = &group.cosets[i].representative;
    for b in blocks {
        if b.lines.iter().any(|&j| !b.lines.contains(&c.perm[j])) {
            return false;
        }
    }
    blocks.iter().all(|b| group.locate(&restrict(c, b)).is_some())
}

/// Whether the given cosets generate the whole component group.
pub fn cosets_generate(group: &ComponentGroup, subset: &[usize]) -> bool {
    let mut seen = vec![false; group.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        for &s in subset {
            let j = group.multiply(s, i);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    count == group.len()
}
