//! Splitting a spec along the indecomposable components of its weights.

use num_traits::Zero;
use orbispace_linalg::{hermite_normal_form, BigInt, Rat, RatMatrix};
use orbispace_repmodel::{Block, Generator, MonomialElement, RepSpec};
use orbispace_weightset::{indecomposable_components, WeightError, WeightMultiset};

/// One block per indecomposable component, then `V0` if it is nonzero.
pub fn partition_blocks(spec: &RepSpec) -> Result<Vec<Block>, WeightError> {
    let dec = indecomposable_components(&spec.weights)?;
    let mut blocks: Vec<Block> = dec.blocks.into_iter().map(|lines| Block { lines, v0: false }).collect();
    if spec.v0_dim > 0 {
        blocks.push(Block { lines: vec![], v0: true });
    }
    Ok(blocks)
}

/// Integer coordinates of `w` in an HNF basis containing it in its span.
fn hnf_coordinates(basis: &[Vec<BigInt>], w: &[i64]) -> Vec<i64> {
    let mut c: Vec<BigInt> = Vec::with_capacity(basis.len());
    for (i, row) in basis.iter().enumerate() {
        let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
        let mut rest = BigInt::from(w[p]);
        for (k, ck) in c.iter().enumerate() {
            rest -= ck * &basis[k][p];
        }
        debug_assert!((&rest % &row[p]).is_zero(), "weight outside the lattice at row {i}");
        c.push(rest / &row[p]);
    }
    c.iter().map(|x| i64::try_from(x).expect("coordinate fits i64")).collect()
}

/// The representation of the block's part of the group on the block.
/// Generators are restricted; the caller must know the group factors
/// over the partition this block belongs to.
pub fn factor_spec(spec: &RepSpec, block: &Block) -> RepSpec {
    let lines = &block.lines;
    let rows: Vec<Vec<BigInt>> =
        lines.iter().map(|&j| spec.weights.items()[j].iter().map(|&x| BigInt::from(x)).collect()).collect();
    let basis = hermite_normal_form(&rows, spec.m());
    let items: Vec<Vec<i64>> = lines.iter().map(|&j| hnf_coordinates(&basis, &spec.weights.items()[j])).collect();
    let weights = WeightMultiset::new(basis.len(), items).expect("block weights are consistent");
    let v0_dim = if block.v0 { spec.v0_dim } else { 0 };
    let local = |j: usize| lines.iter().position(|&l| l == j).expect("block is invariant");
    let generators = spec
        .generators
        .iter()
        .map(|g| {
            let e = &g.element;
            let element = MonomialElement::new(
                lines.iter().map(|&j| local(e.perm[j])).collect(),
                lines.iter().map(|&j| e.conj[j]).collect(),
                lines.iter().map(|&j| e.rot[j].clone()).collect::<Vec<Rat>>(),
                if block.v0 { e.v0_block.clone() } else { RatMatrix::identity(0) },
            );
            Generator { name: g.name.clone(), element }
        })
        .collect();
    RepSpec {
        weights,
        v0_dim,
        v0_gram: if block.v0 { spec.v0_gram.clone() } else { RatMatrix::identity(0) },
        generators,
        caps: spec.caps.clone(),
    }
}
