//! Hierarchical topic taxonomy and path-overlap similarity.
//!
//! Topics form a rooted tree in which a child specializes its parent.
//! The similarity of topic `b` to topic `a` is the number of nodes the
//! two root paths share, divided by the length of `a`'s root path. The
//! measure is asymmetric on purpose: a broad topic is fully covered by
//! any of its specializations, while a specialized topic is only
//! partially covered by its ancestors. Because every path starts at the
//! root, the value is always strictly positive.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a topic inside its [`TopicTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TopicId(pub(crate) u32);

impl TopicId {
    #[inline]
    pub(crate) fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Immutable rooted tree of topic identifiers.
///
/// Identifiers are case-sensitive exact strings; no normalization is
/// applied, so data errors in machine-generated taxonomy files surface
/// instead of being silently folded together.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicTree {
    ids: Vec<String>,
    index: HashMap<String, TopicId>,
    parent: Vec<Option<TopicId>>,
    root: TopicId,
    // Root-to-node paths, both endpoints included, cached at load time.
    paths: Vec<Vec<TopicId>>,
}

impl TopicTree {
    /// Builds a tree from `(node, parent)` records where the root is the
    /// single record without a parent.
    pub fn from_edges<I, S>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Option<S>)>,
        S: Into<String>,
    {
        let mut ids: Vec<String> = Vec::new();
        let mut parent_names: Vec<Option<String>> = Vec::new();
        let mut index: HashMap<String, TopicId> = HashMap::new();

        for (node, parent) in records {
            let node = node.into();
            if index.contains_key(&node) {
                return Err(Error::DuplicateTopic(node));
            }
            index.insert(node.clone(), TopicId(ids.len() as u32));
            ids.push(node);
            parent_names.push(parent.map(Into::into));
        }

        let mut root: Option<usize> = None;
        let mut parent: Vec<Option<TopicId>> = Vec::with_capacity(ids.len());
        for (i, pname) in parent_names.iter().enumerate() {
            match pname {
                None => {
                    if let Some(prev) = root {
                        return Err(Error::MultipleRoots(
                            ids[prev].clone(),
                            ids[i].clone(),
                        ));
                    }
                    root = Some(i);
                    parent.push(None);
                }
                Some(p) => match index.get(p) {
                    Some(&pid) => parent.push(Some(pid)),
                    None => {
                        return Err(Error::DanglingParent {
                            child: ids[i].clone(),
                            parent: p.clone(),
                        })
                    }
                },
            }
        }
        let root = TopicId(root.ok_or(Error::NoRoot)? as u32);

        // Walk each parent chain up to the root (or an already-resolved
        // node), caching paths as we go. Revisiting a node of the current
        // chain means a cycle; self-parents are the degenerate case.
        let n = ids.len();
        let mut paths: Vec<Vec<TopicId>> = vec![Vec::new(); n];
        paths[root.idx()] = vec![root];
        for start in 0..n {
            if !paths[start].is_empty() {
                continue;
            }
            let mut chain = vec![TopicId(start as u32)];
            loop {
                let head = *chain.last().expect("chain is never empty");
                if !paths[head.idx()].is_empty() {
                    break;
                }
                let p = parent[head.idx()].expect("non-root node has a parent");
                if chain.contains(&p) {
                    return Err(Error::TaxonomyCycle(ids[p.idx()].clone()));
                }
                chain.push(p);
            }
            let known = chain.pop().expect("chain is never empty");
            let mut prefix = paths[known.idx()].clone();
            while let Some(node) = chain.pop() {
                prefix.push(node);
                paths[node.idx()] = prefix.clone();
            }
        }

        Ok(TopicTree {
            ids,
            index,
            parent,
            root,
            paths,
        })
    }

    /// Parses the line-oriented taxonomy format: one `node,parent` record
    /// per line, the root given with an empty parent field. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "<taxonomy>")
    }

    /// Like [`TopicTree::parse`] but with a source name for diagnostics.
    pub fn parse_named(text: &str, source: &str) -> Result<Self> {
        let mut records: Vec<(String, Option<String>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (node, parent) = line.split_once(',').ok_or_else(|| Error::Parse {
                path: source.to_string(),
                line: lineno + 1,
                msg: "expected `node-id,parent-id` (root has an empty parent field)".into(),
            })?;
            let node = node.trim();
            let parent = parent.trim();
            if node.is_empty() {
                return Err(Error::Parse {
                    path: source.to_string(),
                    line: lineno + 1,
                    msg: "empty node id".into(),
                });
            }
            records.push((
                node.to_string(),
                if parent.is_empty() {
                    None
                } else {
                    Some(parent.to_string())
                },
            ));
        }
        Self::from_edges(records)
    }

    /// Serializes to the `node,parent` line format parsed by [`TopicTree::parse`].
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for (i, id) in self.ids.iter().enumerate() {
            match self.parent[i] {
                Some(p) => {
                    out.push_str(id);
                    out.push(',');
                    out.push_str(&self.ids[p.idx()]);
                }
                None => {
                    out.push_str(id);
                    out.push(',');
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn root(&self) -> TopicId {
        self.root
    }

    pub fn topic_id(&self, name: &str) -> Result<TopicId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownTopic(name.to_string()))
    }

    pub fn contains(&self, id: TopicId) -> bool {
        id.idx() < self.ids.len()
    }

    pub fn name(&self, id: TopicId) -> &str {
        &self.ids[id.idx()]
    }

    pub fn parent(&self, id: TopicId) -> Option<TopicId> {
        self.parent[id.idx()]
    }

    pub fn topics(&self) -> impl Iterator<Item = TopicId> + '_ {
        (0..self.ids.len() as u32).map(TopicId)
    }

    /// Root-to-topic path, both endpoints included.
    pub fn path_to(&self, topic: TopicId) -> &[TopicId] {
        &self.paths[topic.idx()]
    }

    /// Path length of `topic` (the root has depth 1).
    pub fn depth(&self, topic: TopicId) -> usize {
        self.paths[topic.idx()].len()
    }

    /// Similarity of topic `to` with respect to topic `of`: shared root-path
    /// nodes over the length of `of`'s root path. Always in (0, 1] since the
    /// root is shared; equals 1 exactly when `to` is `of` or one of its
    /// descendants.
    pub fn similarity(&self, of: TopicId, to: TopicId) -> f64 {
        let pa = &self.paths[of.idx()];
        let pb = &self.paths[to.idx()];
        // Both paths start at the root of a proper tree, so the set
        // intersection is exactly the common prefix.
        let shared = pa
            .iter()
            .zip(pb.iter())
            .take_while(|(a, b)| a == b)
            .count();
        shared as f64 / pa.len() as f64
    }
}
