//! Quivers: finite directed multigraphs with named vertices and arrows.
//!
//! Vertices and arrows are referred to by index internally; names are kept
//! for file formats and display. Paths are stored in application order:
//! `[a, b]` means "apply a first, then b", written `b*a` in file syntax.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?} references unknown vertex {vertex:?}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("a quiver needs at least one vertex")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, QuiverError> {
        if vertex_names.is_empty() {
            return Err(QuiverError::Empty);
        }
        for (i, v) in vertex_names.iter().enumerate() {
            if vertex_names[..i].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut built = Vec::new();
        for (name, src, tgt) in arrows {
            if built.iter().any(|a: &Arrow| a.name == name) {
                return Err(QuiverError::DuplicateArrow(name));
            }
            let source = vertex_names
                .iter()
                .position(|v| *v == src)
                .ok_or_else(|| QuiverError::UnknownVertex {
                    arrow: name.clone(),
                    vertex: src.clone(),
                })?;
            let target = vertex_names
                .iter()
                .position(|v| *v == tgt)
                .ok_or_else(|| QuiverError::UnknownVertex {
                    arrow: name.clone(),
                    vertex: tgt.clone(),
                })?;
            built.push(Arrow { name, source, target });
        }
        Ok(Quiver {
            vertex_names,
            arrows: built,
        })
    }

    /// Convenience constructor with vertices named "1".."n".
    pub fn numbered(n: usize, arrows: &[(&str, usize, usize)]) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arr = arrows
            .iter()
            .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
            .collect();
        Quiver::new(names, arr).expect("valid quiver")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// The opposite quiver: same vertices, all arrows reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_names: self.vertex_names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // DFS cycle detection on vertices
        let n = self.num_vertices();
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        fn visit(q: &Quiver, v: usize, state: &mut Vec<u8>) -> bool {
            state[v] = 1;
            for a in q.arrows() {
                if a.source == v {
                    match state[a.target] {
                        1 => return false,
                        0 => {
                            if !visit(q, a.target, state) {
                                return false;
                            }
                        }
                        _ => {}
                    }
                }
            }
            state[v] = 2;
            true
        }
        for v in 0..n {
            if state[v] == 0 && !visit(self, v, &mut state) {
                return false;
            }
        }
        true
    }
}

/// A path: arrow indices in application order, with explicit endpoints so
/// that trivial paths at a vertex are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices; empty for the trivial path (then source == target).
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: vec![],
        }
    }

    pub fn of_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        if arrows.is_empty() {
            return None;
        }
        let source = q.arrow(arrows[0]).source;
        let mut at = source;
        for &a in &arrows {
            if q.arrow(a).source != at {
                return None;
            }
            at = q.arrow(a).target;
        }
        Some(Path {
            source,
            target: at,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` then `next` (target of self must equal source of next).
    pub fn compose(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// Display in composition order (`b*a` = apply a then b), matching the
    /// file syntax.
    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e{}", q.vertex_name(self.source));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).name.clone())
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_lookup() {
        let q = Quiver::numbered(2, &[("a", 1, 2)]);
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrow(0).source, 0);
        assert_eq!(q.arrow(0).target, 1);
        assert!(q.is_acyclic());
        let op = q.opposite();
        assert_eq!(op.arrow(0).source, 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Quiver::new(vec![], vec![]).is_err());
        assert!(Quiver::new(
            vec!["1".into(), "1".into()],
            vec![]
        )
        .is_err());
        assert!(Quiver::new(
            vec!["1".into()],
            vec![("a".into(), "1".into(), "7".into())]
        )
        .is_err());
    }

    #[test]
    fn path_composition() {
        let q = Quiver::numbered(3, &[("a", 1, 2), ("b", 2, 3)]);
        let a = Path::of_arrows(&q, vec![0]).unwrap();
        let b = Path::of_arrows(&q, vec![1]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.source, 0);
        assert_eq!(ab.target, 2);
        assert_eq!(ab.display(&q), "b*a");
        assert!(b.compose(&a).is_none());
        let loop_q = Quiver::numbered(1, &[("x", 1, 1)]);
        assert!(!loop_q.is_acyclic());
    }
}
