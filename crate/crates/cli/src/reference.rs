//! Published reference counts for the supported spaces, keyed by family,
//! setting, and node count, with the sequence-catalog ids that back the
//! labeled and unlabeled rows. These values are compared against, never
//! recomputed; a mismatch is a failure, not something to auto-correct.

use graphspace::{SpaceFamily, SymmetryScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    /// All labelings, no symmetry handling.
    Labeled,
    /// Labelings surviving one symmetry-breaking scheme.
    Scheme(SymmetryScheme),
    /// Isomorphism classes.
    Unlabeled,
}

pub struct ReferenceRow {
    pub family: SpaceFamily,
    pub setting: Setting,
    /// Sequence-catalog id backing the row, when one exists.
    pub oeis: Option<&'static str>,
    /// Counts for n = 3..=7; `None` marks values the source left uncounted.
    pub counts: [Option<u64>; 5],
}

use Setting::{Labeled, Scheme, Unlabeled};
use SpaceFamily::*;
use SymmetryScheme::{DagLex, DagLexPlus, DirectedUnderlyingLex, UndirectedLex};

pub const TABLE: &[ReferenceRow] = &[
    ReferenceRow {
        family: ConnectedUndirected,
        setting: Labeled,
        oeis: Some("A001187"),
        counts: [Some(4), Some(38), Some(728), Some(26_704), Some(1_866_256)],
    },
    ReferenceRow {
        family: ConnectedUndirected,
        setting: Scheme(UndirectedLex),
        oeis: None,
        counts: [Some(2), Some(6), Some(31), Some(262), Some(3_628)],
    },
    ReferenceRow {
        family: ConnectedUndirected,
        setting: Unlabeled,
        oeis: Some("A001349"),
        counts: [Some(2), Some(6), Some(21), Some(112), Some(853)],
    },
    ReferenceRow {
        family: StronglyConnected,
        setting: Labeled,
        oeis: Some("A003030"),
        counts: [Some(18), Some(1_606), Some(565_080), Some(734_774_776), None],
    },
    ReferenceRow {
        family: StronglyConnected,
        setting: Scheme(DirectedUnderlyingLex),
        oeis: None,
        counts: [Some(16), Some(720), Some(84_481), None, None],
    },
    ReferenceRow {
        family: StronglyConnected,
        setting: Unlabeled,
        oeis: Some("A035512"),
        counts: [Some(5), Some(83), Some(5_048), Some(1_047_008), None],
    },
    ReferenceRow {
        family: WeaklyConnected,
        setting: Labeled,
        oeis: Some("A003027"),
        counts: [
            Some(54),
            Some(3_834),
            Some(1_027_080),
            Some(1_067_308_488),
            None,
        ],
    },
    ReferenceRow {
        family: WeaklyConnected,
        setting: Scheme(DirectedUnderlyingLex),
        oeis: None,
        counts: [Some(36), Some(1_188), Some(113_157), None, None],
    },
    ReferenceRow {
        family: WeaklyConnected,
        setting: Unlabeled,
        oeis: Some("A003085"),
        counts: [Some(13), Some(199), Some(9_364), Some(1_530_843), None],
    },
    ReferenceRow {
        family: Dag,
        setting: Labeled,
        oeis: Some("A003024"),
        counts: [None, None, None, None, None],
    },
    ReferenceRow {
        family: WeaklyConnectedDag,
        setting: Labeled,
        oeis: Some("A082402"),
        counts: [
            Some(18),
            Some(446),
            Some(26_430),
            Some(3_596_762),
            Some(1_111_506_858),
        ],
    },
    ReferenceRow {
        family: WeaklyConnectedDag,
        setting: Scheme(DirectedUnderlyingLex),
        oeis: None,
        counts: [Some(10), Some(84), Some(1_312), Some(39_846), None],
    },
    ReferenceRow {
        family: WeaklyConnectedDag,
        setting: Scheme(DagLex),
        oeis: None,
        counts: [Some(4), Some(31), Some(450), Some(12_175), Some(627_846)],
    },
    ReferenceRow {
        family: WeaklyConnectedDag,
        setting: Scheme(DagLexPlus),
        oeis: None,
        counts: [Some(4), Some(26), Some(326), Some(7_769), Some(359_396)],
    },
    ReferenceRow {
        family: WeaklyConnectedDag,
        setting: Unlabeled,
        oeis: Some("A101228"),
        counts: [Some(4), Some(24), Some(267), Some(5_647), Some(237_317)],
    },
    ReferenceRow {
        family: StDag,
        setting: Labeled,
        oeis: Some("A165950"),
        counts: [
            Some(12),
            Some(216),
            Some(10_600),
            Some(1_306_620),
            Some(384_471_444),
        ],
    },
    ReferenceRow {
        family: StDag,
        setting: Scheme(DirectedUnderlyingLex),
        oeis: None,
        counts: [Some(8), Some(56), Some(696), Some(17_620), Some(978_548)],
    },
    ReferenceRow {
        family: StDag,
        setting: Scheme(DagLex),
        oeis: None,
        counts: [Some(2), Some(10), Some(114), Some(2_730), Some(132_978)],
    },
    ReferenceRow {
        family: StDag,
        setting: Scheme(DagLexPlus),
        oeis: None,
        counts: [Some(2), Some(10), Some(106), Some(2_314), Some(102_538)],
    },
    ReferenceRow {
        family: StDag,
        setting: Unlabeled,
        oeis: Some("A345258"),
        counts: [Some(2), Some(10), Some(98), Some(1_960), Some(80_176)],
    },
];

/// Reference count for a full-size space (`n0 = n`), when the table has one.
pub fn expected_count(family: SpaceFamily, setting: Setting, n: usize) -> Option<u64> {
    if !(3..=7).contains(&n) {
        return None;
    }
    TABLE
        .iter()
        .find(|row| row.family == family && row.setting == setting)
        .and_then(|row| row.counts[n - 3])
}

/// Sequence id backing a row, when one exists.
pub fn sequence_id(family: SpaceFamily, setting: Setting) -> Option<&'static str> {
    TABLE
        .iter()
        .find(|row| row.family == family && row.setting == setting)
        .and_then(|row| row.oeis)
}
