//! Explicit model of the infinite shifted forest: complete binary subtrees of
//! sizes `1, 1, 3, 7, …` labelled in preorder and joined by a path of
//! super-nodes, each of which takes `s` consecutive labels.
//!
//! Everything here is computed from label arithmetic alone, so it serves as a
//! brute-force oracle for the recurrence in [`crate::metafib`].

use std::fmt::Write as _;

use crate::metafib::{block_of, Block, Shift};

/// Default label cap for [`render`].
pub const RENDER_CAP: u64 = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Ordinary node of a complete subtree. `offset` is its 1-based preorder
    /// position inside the subtree.
    Subtree {
        offset: u64,
        depth: u32,
    },
    SuperNode,
}

/// Position of one preorder label inside the forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeLocus {
    pub index: u64,
    pub kind: NodeKind,
    /// For subtree nodes the subtree number; for super-nodes the subtree
    /// they precede. Label 1 is the leading single node, subtree 0.
    pub subtree: u32,
    pub is_leaf: bool,
}

impl NodeLocus {
    pub fn is_super_node(&self) -> bool {
        matches!(self.kind, NodeKind::SuperNode)
    }

    pub fn depth(&self) -> Option<u32> {
        match self.kind {
            NodeKind::Subtree { depth, .. } => Some(depth),
            NodeKind::SuperNode => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("prefix length {n} exceeds the render cap {cap}")]
    TooLarge { n: u64, cap: u64 },
    #[error("prefix length must be positive")]
    Empty,
}

/// Decodes a 1-based preorder offset inside a complete tree with `height`
/// levels into its depth.
fn preorder_depth(mut offset: u64, height: u32) -> u32 {
    let mut levels = height;
    let mut depth = 0;
    while offset != 1 {
        let left = (1u64 << (levels - 1)) - 1;
        offset = if offset - 1 <= left {
            offset - 1
        } else {
            offset - 1 - left
        };
        levels -= 1;
        depth += 1;
    }
    depth
}

pub fn locate(s: Shift, n: u64) -> NodeLocus {
    assert!(n >= 1, "labels start at 1");
    if n == 1 {
        return NodeLocus {
            index: 1,
            kind: NodeKind::Subtree {
                offset: 1,
                depth: 0,
            },
            subtree: 0,
            is_leaf: true,
        };
    }
    match block_of(s, n) {
        Block::SuperNode { h } => NodeLocus {
            index: n,
            kind: NodeKind::SuperNode,
            subtree: h,
            is_leaf: false,
        },
        Block::Subtree { h, base } => {
            let offset = n - base;
            let depth = preorder_depth(offset, h);
            NodeLocus {
                index: n,
                kind: NodeKind::Subtree { offset, depth },
                subtree: h,
                is_leaf: depth + 1 == h,
            }
        }
    }
}

pub fn is_leaf_oracle(s: Shift, n: u64) -> bool {
    locate(s, n).is_leaf
}

/// Leaves among labels `1..=n`. Every leaf sits on the common bottom level,
/// so this is the bottom-level count of the prefix tree.
pub fn leaves_in_prefix(s: Shift, n: u64) -> u64 {
    (1..=n).filter(|&i| is_leaf_oracle(s, i)).count() as u64
}

/// Running leaf counts for labels `1..=n` (entry `i` is the count up to `i+1`).
pub fn leaf_counts(s: Shift, n: u64) -> Vec<u64> {
    let mut acc = 0;
    (1..=n)
        .map(|i| {
            acc += u64::from(is_leaf_oracle(s, i));
            acc
        })
        .collect()
}

/// ASCII outline of the prefix tree on labels `1..=n`.
///
/// Super-nodes appear on the left margin as `[first..last]`; subtree nodes
/// are indented by depth, internal nodes marked `o` and leaves `*`.
/// Lines longer than `max_width` are clipped.
pub fn render(s: Shift, n: u64, max_width: usize) -> Result<String, RenderError> {
    render_capped(s, n, max_width, RENDER_CAP)
}

pub fn render_capped(s: Shift, n: u64, max_width: usize, cap: u64) -> Result<String, RenderError> {
    if n == 0 {
        return Err(RenderError::Empty);
    }
    if n > cap {
        return Err(RenderError::TooLarge { n, cap });
    }
    let mut lines: Vec<String> = Vec::new();
    let mut i = 1;
    while i <= n {
        let locus = locate(s, i);
        match locus.kind {
            NodeKind::SuperNode => {
                let first = i;
                while i < n && locate(s, i + 1).is_super_node() {
                    i += 1;
                }
                lines.push(format!("[{first}..{i}]"));
            }
            NodeKind::Subtree { depth, .. } => {
                let mut line = String::new();
                if locus.subtree >= 1 {
                    line.push_str(" |");
                }
                for _ in 0..depth {
                    line.push_str("  ");
                }
                let mark = if locus.is_leaf { '*' } else { 'o' };
                let _ = write!(line, "{mark}{i}");
                lines.push(line);
            }
        }
        i += 1;
    }
    let mut out = String::new();
    for line in lines {
        let clipped: String = line.chars().take(max_width.max(1)).collect();
        out.push_str(&clipped);
        out.push('\n');
    }
    Ok(out)
}
