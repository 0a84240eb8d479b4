//! Comparison of local sequences against OEIS b-files.
//!
//! Index and value conventions differ between OEIS entries and the local
//! 1-based sequences; the mapping lives in a TOML role map shipped next to
//! the fixtures:
//!
//! ```toml
//! [sequences.A046699]
//! sequence = "a"
//! shift = 0
//! index_offset = -1   # local index = OEIS index + index_offset
//! value_offset = 0    # local value = OEIS value + value_offset
//!
//! [[identities]]
//! left = "A101925"
//! right = "A005187"
//! delta = 1           # left(n) = right(n) + delta
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::bfile::BFileRecord;
use crate::metafib::{ruler, SequenceTable, Shift};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    /// Bottom-level counts, defined from index 0.
    A,
    /// Leaf indicators, from index 1.
    D,
    /// Leaf positions, from index 1.
    P,
    Ruler,
}

impl SequenceKind {
    fn first_index(self) -> i64 {
        match self {
            SequenceKind::A => 0,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct OeisRole {
    pub sequence: SequenceKind,
    #[serde(default)]
    pub shift: u64,
    #[serde(default)]
    pub index_offset: i64,
    #[serde(default)]
    pub value_offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ShiftIdentity {
    pub left: String,
    pub right: String,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct RoleMap {
    pub sequences: BTreeMap<String, OeisRole>,
    #[serde(default)]
    pub identities: Vec<ShiftIdentity>,
}

impl RoleMap {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn role(&self, id: &str) -> Option<&OeisRole> {
        self.sequences.get(id)
    }
}

/// OEIS file name for a b-file, e.g. `A046699` -> `b046699.txt`.
pub fn bfile_name(id: &str) -> String {
    let digits = id.trim_start_matches(['A', 'a']);
    format!("b{digits}.txt")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    /// Index as written in the b-file.
    pub index: i64,
    pub expected: i64,
    pub found: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Comparison {
    pub compared: usize,
    /// Records whose mapped index lies outside the local domain.
    pub skipped: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares every record against the local sequence named by `role`.
///
/// `expected` in a mismatch is the local value translated into the b-file's
/// value convention.
pub fn compare(role: &OeisRole, records: &[BFileRecord]) -> Comparison {
    let mut table = SequenceTable::new(Shift(role.shift));
    let mut result = Comparison::default();
    for rec in records {
        let local_index = rec.index + role.index_offset;
        if local_index < role.sequence.first_index() {
            result.skipped += 1;
            continue;
        }
        let n = local_index as u64;
        let local = match role.sequence {
            SequenceKind::A => table.a(n) as i64,
            SequenceKind::D => i64::from(table.d(n)),
            SequenceKind::P => table.p(n) as i64,
            SequenceKind::Ruler => ruler(n) as i64,
        };
        result.compared += 1;
        let expected = local - role.value_offset;
        if expected != rec.value {
            result.first_mismatch = Some(Mismatch {
                index: rec.index,
                expected,
                found: rec.value,
            });
            break;
        }
    }
    result
}

/// Checks `left(n) = right(n) + delta` on the indices both files share.
pub fn compare_identity(left: &[BFileRecord], right: &[BFileRecord], delta: i64) -> Comparison {
    let right_by_index: BTreeMap<i64, i64> = right.iter().map(|r| (r.index, r.value)).collect();
    let mut result = Comparison::default();
    for rec in left {
        let Some(&rv) = right_by_index.get(&rec.index) else {
            result.skipped += 1;
            continue;
        };
        result.compared += 1;
        if rec.value != rv + delta {
            result.first_mismatch = Some(Mismatch {
                index: rec.index,
                expected: rv + delta,
                found: rec.value,
            });
            break;
        }
    }
    result
}
