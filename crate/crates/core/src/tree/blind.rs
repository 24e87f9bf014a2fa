use serde::{Deserialize, Serialize};

use super::{level_counts, LevelProfile, PortTree};

/// What a blind-map agent knows: the rooted shape without ports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlindMap {
    /// Parenthesised encoding: every node is `(` followed by the sorted codes
    /// of its children and `)`.
    pub code: String,
    pub profile: LevelProfile,
}

impl BlindMap {
    pub fn depth(&self) -> usize {
        self.profile.depth()
    }
}

/// Canonical port-free code of a rooted tree. Equal codes exactly when the
/// trees are root-preserving isomorphic.
pub fn blind_code(tree: &PortTree) -> BlindMap {
    let mut codes: Vec<Option<String>> = vec![None; tree.len()];
    for &v in tree.preorder().iter().rev() {
        let mut kids: Vec<String> = tree
            .children(v)
            .iter()
            .map(|&(_, c)| codes[c].take().unwrap())
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in &kids {
            s.push_str(k);
        }
        s.push(')');
        codes[v] = Some(s);
    }
    BlindMap {
        code: codes[tree.root()].take().unwrap(),
        profile: level_counts(tree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::PortMode;

    #[test]
    fn single_node() {
        let t = PortTree::from_parents(&[None], PortMode::Sorted).unwrap();
        let b = blind_code(&t);
        assert_eq!(b.code, "()");
        assert_eq!(b.profile.counts(), &[1]);
    }

    #[test]
    fn path_differs_from_cherry() {
        let path = PortTree::from_parents(&[None, Some(0), Some(1)], PortMode::Sorted).unwrap();
        let cherry = PortTree::from_parents(&[None, Some(0), Some(0)], PortMode::Sorted).unwrap();
        assert_ne!(blind_code(&path).code, blind_code(&cherry).code);
    }

    #[test]
    fn child_order_is_irrelevant() {
        let a = PortTree::from_parents(&[None, Some(0), Some(0), Some(1)], PortMode::Sorted).unwrap();
        let b = PortTree::from_parents(&[None, Some(0), Some(0), Some(2)], PortMode::Sorted).unwrap();
        assert_eq!(blind_code(&a), blind_code(&b));
    }
}
