use std::collections::HashMap;

use crate::tree::{NodeId, PortTree};

/// Combined size limit for [`iso_check`].
pub const MAX_ISO_NODES: usize = 2000;

struct Side<'a> {
    tree: &'a PortTree,
    size: Vec<usize>,
    height: Vec<usize>,
}

impl<'a> Side<'a> {
    fn new(tree: &'a PortTree) -> Self {
        let size = tree.subtree_sizes();
        let mut height = vec![0; tree.len()];
        for &v in tree.preorder().iter().rev() {
            if let Some(p) = tree.parent(v) {
                height[p] = height[p].max(height[v] + 1);
            }
        }
        Self { tree, size, height }
    }
}

/// Whether a root-preserving isomorphism ignoring ports exists. Children
/// are matched greedily as multisets: isomorphism is an equivalence, so any
/// isomorphic partner is as good as another.
pub fn iso_check(t1: &PortTree, t2: &PortTree) -> bool {
    assert!(
        t1.len() + t2.len() <= MAX_ISO_NODES,
        "iso_check is limited to {MAX_ISO_NODES} nodes in total"
    );
    let a = Side::new(t1);
    let b = Side::new(t2);
    let mut memo = HashMap::new();
    matches(&a, &b, t1.root(), t2.root(), &mut memo)
}

fn matches(a: &Side, b: &Side, u: NodeId, v: NodeId, memo: &mut HashMap<(NodeId, NodeId), bool>) -> bool {
    if a.size[u] != b.size[v] || a.height[u] != b.height[v] {
        return false;
    }
    let ku = a.tree.children(u);
    let kv = b.tree.children(v);
    if ku.len() != kv.len() {
        return false;
    }
    if let Some(&r) = memo.get(&(u, v)) {
        return r;
    }
    let mut used = vec![false; kv.len()];
    let mut ok = true;
    for &(_, cu) in ku {
        let partner = (0..kv.len()).find(|&j| !used[j] && matches(a, b, cu, kv[j].1, memo));
        match partner {
            Some(j) => used[j] = true,
            None => {
                ok = false;
                break;
            }
        }
    }
    memo.insert((u, v), ok);
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, GenSpec};

    fn tree(f: Family, seed: u64) -> PortTree {
        generate(&GenSpec::seeded(f, seed)).unwrap()
    }

    #[test]
    fn relabeled_caterpillars_match() {
        let f = Family::Caterpillar { l: 3 };
        assert!(iso_check(&tree(f, 1), &tree(f, 2)));
    }

    #[test]
    fn different_shapes_with_equal_size() {
        let a = tree(Family::StarPendant { n: 3 }, 1);
        let b = tree(Family::Star { n: 4 }, 1);
        assert!(!iso_check(&a, &b));
    }

    #[test]
    fn identity() {
        let t = tree(
            Family::Random {
                nodes: 300,
                max_degree: 4,
                seed: 6,
            },
            3,
        );
        assert!(iso_check(&t, &t));
        assert!(iso_check(&t, &t.renumbered()));
    }
}
