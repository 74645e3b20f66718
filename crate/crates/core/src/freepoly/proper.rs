use super::{permutations, DegreeComposition, MultiPoly, Word};

/// A redundant spanning family of the proper polynomials in the component:
/// `m * w_1 * ... * w_t` where `m` is a word over some of the non-identity
/// slots (any order) and the `w_j` are left-normed commutators of length >= 2
/// partitioning the remaining slots, which include every identity slot.
pub fn proper_spanning_set(composition: &DegreeComposition) -> Vec<MultiPoly> {
    let n = composition.n();
    let free: Vec<usize> = (0..n).filter(|&s| composition.degree(s) != 0).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let prefix: Vec<usize> = free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
        let rest: Vec<usize> = (0..n).filter(|s| !prefix.contains(s)).collect();
        let block_sets = set_partitions_min2(&rest);
        for order in orderings(&prefix) {
            let head = MultiPoly::word(composition, &order);
            for blocks in &block_sets {
                for tail in commutator_products(composition, blocks) {
                    out.push(head.mul(&tail).unwrap());
                }
            }
        }
    }
    out
}

fn orderings(items: &[usize]) -> Vec<Word> {
    permutations(items.len()).into_iter().map(|p| p.iter().map(|&i| items[i]).collect()).collect()
}

/// Set partitions of `items` into blocks of size >= 2. The empty set has the
/// single empty partition.
fn set_partitions_min2(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(items: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = items.split_first() else {
            if cur.iter().all(|b| b.len() >= 2) {
                out.push(cur.clone());
            }
            return;
        };
        for i in 0..cur.len() {
            cur[i].push(first);
            rec(rest, cur, out);
            cur[i].pop();
        }
        cur.push(vec![first]);
        rec(rest, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(items, &mut Vec::new(), &mut out);
    out
}

/// Products of left-normed commutators over the blocks, for every ordering of
/// the blocks and of the entries inside each block. With no blocks this is the
/// empty word.
fn commutator_products(composition: &DegreeComposition, blocks: &[Vec<usize>]) -> Vec<MultiPoly> {
    if blocks.is_empty() {
        return vec![MultiPoly::word(composition, &[])];
    }
    let per_block: Vec<Vec<MultiPoly>> = blocks
        .iter()
        .map(|b| orderings(b).iter().map(|o| MultiPoly::commutator_of_slots(composition, o)).collect())
        .collect();
    let mut out = Vec::new();
    for block_order in permutations(blocks.len()) {
        let mut acc: Vec<MultiPoly> = vec![MultiPoly::word(composition, &[])];
        for &b in &block_order {
            acc = acc.iter().flat_map(|p| per_block[b].iter().map(move |c| p.mul(c).unwrap())).collect();
        }
        out.extend(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;

    fn rank(comp: &DegreeComposition) -> usize {
        let set = proper_spanning_set(comp);
        let cols = (1..=comp.n()).product();
        RationalMatrix::from_rows(cols, set.iter().map(|p| p.to_vector()).collect()).rank()
    }

    #[test]
    fn table_one_dimensions() {
        // (1_g)
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[0, 1])), 1);
        // (1_1): no proper polynomial of degree 1 in an identity variable
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[1, 0])), 0);
        // (2_1): [x1, x2]
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[2, 0])), 1);
        // (2_g): everything
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[0, 2])), 2);
        // (1_1, 1_g): [x1, x2]
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[1, 1])), 1);
        // (1_g, 1_h): x1x2, x2x1
        assert_eq!(rank(&DegreeComposition::from_aggregate(&[0, 1, 1])), 2);
    }

    #[test]
    fn set_partitions() {
        assert_eq!(set_partitions_min2(&[]).len(), 1);
        assert_eq!(set_partitions_min2(&[0]).len(), 0);
        assert_eq!(set_partitions_min2(&[0, 1, 2, 3]).len(), 4);
    }

    #[test]
    fn members_are_full() {
        let comp = DegreeComposition::from_aggregate(&[2, 1, 1]);
        for p in proper_spanning_set(&comp) {
            assert!(p.is_full());
            assert!(!p.is_zero());
        }
    }
}
