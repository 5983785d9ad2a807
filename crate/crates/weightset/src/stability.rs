use itertools::Itertools;

use crate::{WeightError, WeightMultiset};

pub const DEFAULT_MAX_NONZERO: usize = 24;

/// Span survives removal of any `q` items.
pub fn is_q_stable(p: &WeightMultiset, q: usize) -> Result<bool, WeightError> {
    is_q_stable_capped(p, q, DEFAULT_MAX_NONZERO)
}

pub fn is_q_stable_capped(p: &WeightMultiset, q: usize, cap: usize) -> Result<bool, WeightError> {
    let nz = p.nonzero_indices();
    if nz.len() > cap {
        return Err(WeightError::CapExceeded { nonzero: nz.len(), cap });
    }
    let full = p.rank_of(&nz);
    if full == 0 {
        return Ok(true);
    }
    // Removing fewer items only keeps more, so the largest removals suffice.
    let k = q.min(nz.len());
    for removed in nz.iter().copied().combinations(k) {
        let kept: Vec<usize> = nz.iter().copied().filter(|i| !removed.contains(i)).collect();
        if p.rank_of(&kept) < full {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(is_q_stable(&p, 1).unwrap());
        assert!(!is_q_stable(&p, 2).unwrap());

        let z = WeightMultiset::from_slices(2, &[&[0, 0], &[0, 0]]);
        assert!(is_q_stable(&z, 7).unwrap());

        let ones = WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]);
        assert!(is_q_stable(&ones, 2).unwrap());
        assert!(!is_q_stable(&ones, 3).unwrap());
    }

    #[test]
    fn zeros_do_not_help() {
        let p = WeightMultiset::from_slices(1, &[&[1], &[0], &[0]]);
        assert!(!is_q_stable(&p, 1).unwrap());
        assert!(is_q_stable(&p, 0).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let p = WeightMultiset::new(1, vec![vec![1]; 25]).unwrap();
        assert_eq!(is_q_stable(&p, 1), Err(WeightError::CapExceeded { nonzero: 25, cap: 24 }));
        assert!(is_q_stable_capped(&p, 1, 30).unwrap());
        // zeros do not count towards the cap
        let mut items = vec![vec![1]; 24];
        items.extend(vec![vec![0]; 10]);
        assert!(is_q_stable(&WeightMultiset::new(1, items).unwrap(), 2).unwrap());
    }
}
