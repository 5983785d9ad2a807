use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use orbispace_linalg::{rank, BigInt, Rat, RatMatrix};

use crate::{is_q_stable, WeightError, WeightMultiset};

/// The positive linear relation carried by an equivalence class `N`:
/// `sum_j coeffs[j] * flips[j] * lambda_j` lies in the span of the other items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRelation {
    pub indices: Vec<usize>,
    pub flips: Vec<i8>,
    pub coeffs: Vec<i64>,
}

impl ClassRelation {
    /// `sum_j a_j * s_j * lambda_j`.
    pub fn combined_weight(&self, p: &WeightMultiset) -> Vec<i64> {
        let mut w = vec![0i64; p.torus_dim()];
        for ((&i, &s), &a) in self.indices.iter().zip(&self.flips).zip(&self.coeffs) {
            for (x, &l) in w.iter_mut().zip(&p.items()[i]) {
                *x += a * i64::from(s) * l;
            }
        }
        w
    }
}

/// Coordinates of item `i` across the relation basis.
fn relation_columns(p: &WeightMultiset) -> Vec<Vec<Rat>> {
    let basis = p.relation_space();
    (0..p.len()).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect()
}

fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    let za = a.iter().all(Zero::is_zero);
    let zb = b.iter().all(Zero::is_zero);
    if za || zb {
        return za && zb;
    }
    let m = RatMatrix::from_columns(&[a.to_vec(), b.to_vec()], a.len());
    rank(&m) == 1
}

/// Items `i ~ j` when every relation involves both or neither. Zero items
/// are singletons. Classes are sorted and ordered by their first index.
pub fn equivalence_classes(p: &WeightMultiset) -> Vec<Vec<usize>> {
    let cols = relation_columns(p);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'items: for i in 0..p.len() {
        if !p.is_zero_item(i) {
            for c in classes.iter_mut() {
                let j = c[0];
                if !p.is_zero_item(j) && proportional(&cols[i], &cols[j]) {
                    c.push(i);
                    continue 'items;
                }
            }
        }
        classes.push(vec![i]);
    }
    classes
}

/// 2-stability of a 1-stable set via pairwise inequivalence.
pub fn two_stable_via_crit(p: &WeightMultiset) -> Result<bool, WeightError> {
    if !is_q_stable(p, 1)? {
        return Err(WeightError::Not1Stable);
    }
    Ok(equivalence_classes(p).iter().all(|c| c.len() == 1))
}

/// Relation of class `n`, scaled to coprime positive coefficients.
///
/// The overall sign is fixed so that the combined weight is lexicographically
/// positive; when it vanishes, the item with the smallest coefficient (lowest
/// index on ties) keeps a `+` flip.
pub fn class_relation(p: &WeightMultiset, n: &[usize]) -> Result<ClassRelation, WeightError> {
    let mut n = n.to_vec();
    n.sort_unstable();
    n.dedup();
    if n.len() < 2 || !equivalence_classes(p).contains(&n) {
        return Err(WeightError::NotAClass);
    }
    let cols = relation_columns(p);
    if n.iter().any(|&i| cols[i].iter().all(Zero::is_zero)) {
        // items of N are coloops: removing one drops the span
        return Err(WeightError::Not1Stable);
    }
    let proj = RatMatrix::from_columns(&n.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>(), cols[n[0]].len());
    if rank(&proj) != 1 {
        return Err(WeightError::InternalContradiction(format!(
            "class relation space has dimension {}",
            rank(&proj)
        )));
    }
    let r = (0..proj.rows()).find(|&r| !proj.row(r).iter().all(Zero::is_zero)).unwrap();
    let g: Vec<Rat> = proj.row(r).to_vec();
    if g.iter().any(Zero::is_zero) {
        return Err(WeightError::InternalContradiction("class relation has a zero entry".into()));
    }
    let l = g.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = g.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let d = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut flips = Vec::with_capacity(n.len());
    let mut coeffs = Vec::with_capacity(n.len());
    for x in &ints {
        let y = x / &d;
        flips.push(if y.is_negative() { -1i8 } else { 1 });
        coeffs.push(y.abs().to_i64().ok_or_else(|| {
            WeightError::InternalContradiction("class coefficient overflows i64".into())
        })?);
    }
    let mut rel = ClassRelation { indices: n, flips, coeffs };
    let w = rel.combined_weight(p);
    let flip = match w.iter().find(|&&x| x != 0) {
        Some(&x) => x < 0,
        None => {
            let min = *rel.coeffs.iter().min().unwrap();
            let k = rel.coeffs.iter().position(|&a| a == min).unwrap();
            rel.flips[k] < 0
        }
    };
    if flip {
        rel.flips.iter_mut().for_each(|s| *s = -*s);
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_examples() {
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(equivalence_classes(&p), vec![vec![0, 1, 2]]);

        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        assert_eq!(equivalence_classes(&p), vec![vec![0], vec![1], vec![2], vec![3]]);

        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(equivalence_classes(&p), vec![vec![0], vec![1], vec![2, 3]]);
    }

    #[test]
    fn zero_items_are_singletons() {
        let p = WeightMultiset::from_slices(1, &[&[0], &[1], &[0], &[1]]);
        assert_eq!(equivalence_classes(&p), vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn crit_examples() {
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(!two_stable_via_crit(&p).unwrap());
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        assert!(two_stable_via_crit(&p).unwrap());
        let p = WeightMultiset::from_slices(1, &[&[1], &[1], &[1]]);
        assert!(two_stable_via_crit(&p).unwrap());
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[1, 0], &[0, 1]]);
        assert_eq!(two_stable_via_crit(&p), Err(WeightError::Not1Stable));
    }

    #[test]
    fn relation_examples() {
        let p = WeightMultiset::from_slices(2, &[&[2, 0], &[1, 0], &[0, 1]]);
        let r = class_relation(&p, &[0, 1]).unwrap();
        assert_eq!((r.flips, r.coeffs), (vec![1, -1], vec![1, 2]));

        let p = WeightMultiset::from_slices(1, &[&[1], &[1]]);
        let r = class_relation(&p, &[0, 1]).unwrap();
        assert_eq!((r.flips, r.coeffs), (vec![1, -1], vec![1, 1]));

        let p = WeightMultiset::from_slices(2, &[&[1, 1], &[2, 2], &[0, 1]]);
        let r = class_relation(&p, &[0, 1]).unwrap();
        assert_eq!((r.flips, r.coeffs), (vec![-1, 1], vec![2, 1]));
    }

    #[test]
    fn relation_with_nonzero_sum() {
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let r = class_relation(&p, &[2, 3]).unwrap();
        assert_eq!((r.flips.clone(), r.coeffs.clone()), (vec![-1, 1], vec![1, 1]));
        assert_eq!(r.combined_weight(&p), vec![1, 0]);
    }

    #[test]
    fn relation_errors() {
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(class_relation(&p, &[0, 1]), Err(WeightError::NotAClass));
        assert_eq!(class_relation(&p, &[0]), Err(WeightError::NotAClass));
        // two coloops form one class under the kernel test but carry no relation
        let p = WeightMultiset::from_slices(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(class_relation(&p, &[0, 1]), Err(WeightError::Not1Stable));
    }
}
