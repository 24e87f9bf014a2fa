use crate::tree::NodeId;

/// Number of rooted unlabeled trees with `n = 1..=8` nodes.
pub const KNOWN_SHAPE_COUNTS: [usize; 8] = [1, 1, 2, 4, 9, 20, 48, 115];

/// Every rooted tree shape with `n` nodes exactly once, as parent arrays in
/// preorder (root 0). Generated by successor steps on canonical level
/// sequences (Beyer–Hedetniemi), without any isomorphism test.
pub fn rooted_shapes(n: usize) -> Vec<Vec<Option<NodeId>>> {
    if n == 0 {
        return Vec::new();
    }
    let mut levels: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(parents_of(&levels));
        let Some(p) = (0..n).rev().find(|&i| levels[i] > 1) else {
            break;
        };
        let q = (0..p).rev().find(|&i| levels[i] == levels[p] - 1).unwrap();
        for i in p..n {
            levels[i] = levels[i - (p - q)];
        }
    }
    out
}

fn parents_of(levels: &[usize]) -> Vec<Option<NodeId>> {
    let mut last_at: Vec<NodeId> = Vec::new();
    levels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            last_at.truncate(l);
            let parent = l.checked_sub(1).map(|k| last_at[k]);
            last_at.push(i);
            parent
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_values() {
        for (i, &expected) in KNOWN_SHAPE_COUNTS.iter().enumerate() {
            assert_eq!(rooted_shapes(i + 1).len(), expected, "n = {}", i + 1);
        }
    }

    #[test]
    fn three_nodes() {
        assert_eq!(
            rooted_shapes(3),
            vec![vec![None, Some(0), Some(1)], vec![None, Some(0), Some(0)]]
        );
    }
}
