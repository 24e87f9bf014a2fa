//! Hand-built port assignments: representatives of relabeling orbits and
//! adversarial labelings for families too large to enumerate.

use crate::generators::{shape, Family};
use crate::tree::{NodeId, PortMode, PortTree};

/// Reassigns ports: `slots(v)` lists the neighbours of `v` by new port,
/// `None` standing for the parent edge.
pub fn arrange(tree: &PortTree, slots: impl Fn(NodeId) -> Vec<Option<NodeId>>) -> PortTree {
    let perms: Vec<Vec<usize>> = (0..tree.len())
        .map(|v| {
            let order = slots(v);
            assert_eq!(
                order.len(),
                tree.degree(v),
                "slots of node {v} must list every neighbour"
            );
            let mut perm = vec![usize::MAX; tree.degree(v)];
            for (new, slot) in order.into_iter().enumerate() {
                let old = match slot {
                    None => tree
                        .node(v)
                        .parent_port
                        .expect("only non-root nodes have a parent slot"),
                    Some(c) => tree
                        .children(v)
                        .iter()
                        .find(|&&(_, x)| x == c)
                        .map(|&(p, _)| p)
                        .expect("slot names a child"),
                };
                perm[old] = new;
            }
            perm
        })
        .collect();
    tree.permute_ports(&perms).expect("slots form a permutation")
}

/// Children in the given order, parent edge on the highest port.
fn children_then_parent(tree: &PortTree, v: NodeId, children: impl IntoIterator<Item = NodeId>) -> Vec<Option<NodeId>> {
    let mut s: Vec<Option<NodeId>> = children.into_iter().map(Some).collect();
    if tree.parent(v).is_some() {
        s.push(None);
    }
    s
}

fn sorted_children(tree: &PortTree, v: NodeId) -> Vec<NodeId> {
    let mut c: Vec<NodeId> = tree.children(v).iter().map(|&(_, c)| c).collect();
    c.sort_unstable();
    c
}

/// Larger subtrees on lower ports (ties by id), parent edge last. Port-order
/// sweeps then reach the smallest subtree last.
pub fn heavy_first(tree: &PortTree) -> PortTree {
    let size = tree.subtree_sizes();
    arrange(tree, |v| {
        let mut c = sorted_children(tree, v);
        c.sort_by_key(|&x| std::cmp::Reverse(size[x]));
        children_then_parent(tree, v, c)
    })
}

/// One labeling per orbit of `star_pendant(n)`: the position of `u` among
/// the root's ports times the order of `u`'s two ports. Leaves are
/// interchangeable, so every labeling is isomorphic to one of these `2n`.
pub fn star_pendant_representatives(n: usize) -> Vec<PortTree> {
    let parents = shape(&Family::StarPendant { n }).expect("n >= 2");
    let base = PortTree::from_parents(&parents, PortMode::Sorted).expect("valid shape");
    let (u, t) = (1, n + 1);
    let mut out = Vec::with_capacity(2 * n);
    for pos in 0..n {
        for t_first in [false, true] {
            out.push(arrange(&base, |v| match v {
                0 => {
                    let mut leaves: Vec<Option<NodeId>> = (2..=n).map(Some).collect();
                    leaves.insert(pos, Some(u));
                    leaves
                }
                1 if t_first => vec![Some(t), None],
                1 => vec![None, Some(t)],
                _ => children_then_parent(&base, v, sorted_children(&base, v)),
            }));
        }
    }
    out
}

/// Labelings of `T_ℓ` that put the pendant first at every spine node, with
/// all four orders at each consecutive pair `(u_w, u_{w+1})`.
pub fn spine_adversaries(l: usize) -> Vec<PortTree> {
    let parents = shape(&Family::Caterpillar { l }).expect("l >= 2");
    let base = PortTree::from_parents(&parents, PortMode::Sorted).expect("valid shape");
    let mut out: Vec<PortTree> = Vec::new();
    for w in 0..l.saturating_sub(1) {
        for flips in 0..4u32 {
            let flipped = |i: usize| (i == w && flips & 1 != 0) || (i == w + 1 && flips & 2 != 0);
            let t = arrange(&base, |v| {
                let mut c = sorted_children(&base, v);
                // spine nodes u_0..u_{ℓ-2}: ids 0..ℓ-2, spine child id v+1
                if v + 1 < l && c.len() == 2 {
                    let spine_first = c[0] == v + 1;
                    if spine_first != flipped(v) {
                        c.swap(0, 1);
                    }
                }
                children_then_parent(&base, v, c)
            });
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::iso_check;
    use crate::tree::blind_code;

    #[test]
    fn arrange_places_parent_and_children() {
        let t = PortTree::from_parents(&[None, Some(0), Some(0), Some(1)], PortMode::Sorted).unwrap();
        let a = arrange(&t, |v| match v {
            0 => vec![Some(2), Some(1)],
            1 => vec![None, Some(3)],
            _ => vec![None],
        });
        assert_eq!(a.traverse(0, 0), Some((2, 0)));
        assert_eq!(a.traverse(1, 1), Some((3, 0)));
        assert_eq!(a.node(1).parent_port, Some(0));
    }

    #[test]
    fn heavy_first_keeps_shape() {
        let t = crate::generators::generate(&crate::generators::GenSpec::seeded(
            Family::Random {
                nodes: 60,
                max_degree: 4,
                seed: 3,
            },
            9,
        ))
        .unwrap();
        let h = heavy_first(&t);
        assert!(iso_check(&t, &h));
        let size = h.subtree_sizes();
        for v in 0..h.len() {
            let sizes: Vec<usize> = h.children(v).iter().map(|&(_, c)| size[c]).collect();
            assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn representative_counts() {
        let reps = star_pendant_representatives(4);
        assert_eq!(reps.len(), 8);
        let code = blind_code(&reps[0]).code;
        assert!(reps.iter().all(|r| blind_code(r).code == code));
        assert_eq!(spine_adversaries(2).len(), 2);
        assert_eq!(spine_adversaries(3).len(), 4);
    }
}
