use num_traits::Zero;
use orbispace_linalg::kernel_basis;

use crate::{WeightError, WeightMultiset};

/// Indecomposable components of the nonzero items, plus the zero items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Blocks of item indices, each sorted, ordered by their first index.
    pub blocks: Vec<Vec<usize>>,
    pub zeros: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn indecomposable_components(p: &WeightMultiset) -> Result<Decomposition, WeightError> {
    let nz = p.nonzero_indices();
    let zeros: Vec<usize> = (0..p.len()).filter(|&i| p.is_zero_item(i)).collect();
    let mut uf = UnionFind((0..nz.len()).collect());
    if !nz.is_empty() {
        // Supports of the fundamental circuits of the pivot basis.
        for v in kernel_basis(&p.column_matrix(&nz)) {
            let support: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
            for w in support.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of_block: Vec<usize> = Vec::new();
    for k in 0..nz.len() {
        let r = uf.find(k);
        match root_of_block.iter().position(|&x| x == r) {
            Some(b) => blocks[b].push(nz[k]),
            None => {
                root_of_block.push(r);
                blocks.push(vec![nz[k]]);
            }
        }
    }
    let total: usize = blocks.iter().map(|b| p.rank_of(b)).sum();
    if total != p.rank_of(&nz) {
        return Err(WeightError::InternalContradiction(format!(
            "component spans sum to {total}, expected {}",
            p.rank_of(&nz)
        )));
    }
    Ok(Decomposition { blocks, zeros })
}
