//! The on-disk tree format:
//!
//! ```json
//! {"root": {"children": [{"port_parent": 0, "port_child": 1, "node": {"children": []}}]}}
//! ```
//!
//! `port_parent` is the port of the edge at the parent, `port_child` the port
//! at the child. Serialization lists children by increasing `port_parent`.

use serde::{Deserialize, Serialize};

use super::{NodeId, NodeRecord, Port, PortTree, TreeError};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    children: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    port_parent: usize,
    port_child: usize,
    node: NodeDoc,
}

fn encode(tree: &PortTree, v: NodeId) -> NodeDoc {
    NodeDoc {
        children: tree
            .children(v)
            .iter()
            .map(|&(p, c)| EdgeDoc {
                port_parent: p,
                port_child: tree.node(c).parent_port.unwrap(),
                node: encode(tree, c),
            })
            .collect(),
    }
}

pub fn to_json(tree: &PortTree) -> String {
    let doc = TreeDoc {
        root: encode(tree, tree.root()),
    };
    serde_json::to_string(&doc).expect("tree documents always serialize")
}

/// Parses and validates a tree. Node ids are assigned in preorder, root 0.
pub fn from_json(text: &str) -> Result<PortTree, TreeError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let doc = TreeDoc::deserialize(&mut de).map_err(|e| TreeError::Json(e.to_string()))?;
    de.end().map_err(|e| TreeError::Json(e.to_string()))?;

    // ids in preorder, children by document order
    let mut nodes: Vec<NodeRecord> = Vec::new();
    // (parent, port at parent, port at child) of each pending subtree
    type Link = Option<(NodeId, Port, Port)>;
    let mut stack: Vec<(Link, NodeDoc)> = vec![(None, doc.root)];
    while let Some((link, doc)) = stack.pop() {
        let id = nodes.len();
        nodes.push(NodeRecord {
            parent: link.map(|(p, _, _)| p),
            parent_port: link.map(|(_, _, c)| c),
            children: Vec::new(),
        });
        if let Some((p, port_parent, _)) = link {
            nodes[p].children.push((port_parent, id));
        }
        stack.extend(
            doc.children
                .into_iter()
                .rev()
                .map(|e| (Some((id, e.port_parent, e.port_child)), e.node)),
        );
    }
    PortTree::new(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::PortMode;

    #[test]
    fn known_document() {
        let t = PortTree::from_parents(&[None, Some(0), Some(0)], PortMode::Sorted).unwrap();
        assert_eq!(
            to_json(&t),
            r#"{"root":{"children":[{"port_parent":0,"port_child":0,"node":{"children":[]}},{"port_parent":1,"port_child":0,"node":{"children":[]}}]}}"#
        );
    }

    #[test]
    fn bad_ports_are_rejected_on_load() {
        let text = r#"{"root":{"children":[{"port_parent":1,"port_child":0,"node":{"children":[]}}]}}"#;
        assert!(matches!(from_json(text), Err(TreeError::Invalid(_))));
        assert!(matches!(from_json("{\"root\": 3}"), Err(TreeError::Json(_))));
    }

    #[test]
    fn deep_paths_load() {
        let parents: Vec<Option<usize>> = (0usize..400).map(|i| i.checked_sub(1)).collect();
        let t = PortTree::from_parents(&parents, PortMode::Seeded(5)).unwrap();
        let back = from_json(&to_json(&t)).unwrap();
        assert_eq!(back.depth(), 399);
        assert_eq!(to_json(&back), to_json(&t));
    }
}
