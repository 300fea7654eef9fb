//! Test groups, keyed by the text accepted by `GroupSpec::parse_named`.

use ingleton::{build_group, GroupSpec, GroupTable};

/// `(label, spec, order)`.
pub const CORPUS: &[(&str, &str, usize)] = &[
    ("C6", "cyclic:6", 6),
    ("S3", "sym:3", 6),
    ("C8", "cyclic:8", 8),
    ("C2^3", "abelian:2,2,2", 8),
    ("C2 x C4", "abelian:2,4", 8),
    ("D8", "dihedral:4", 8),
    ("Q8", "dicyclic:2", 8),
    ("C3^2", "abelian:3,3", 9),
    ("D10", "dihedral:5", 10),
    ("A4", "alt:4", 12),
    ("D12", "dihedral:6", 12),
    ("Dic3", "dicyclic:3", 12),
    ("C2^4", "abelian:2,2,2,2", 16),
    ("C4^2", "abelian:4,4", 16),
    ("D16", "dihedral:8", 16),
    ("Q16", "dicyclic:4", 16),
    ("C5 : C4", "metacyclic:5,4,2", 20),
    ("C7 : C3", "metacyclic:7,3,2", 21),
    ("S4", "sym:4", 24),
    ("SL2(3)", "sl2:3", 24),
    ("D24", "dihedral:12", 24),
    ("Dic6", "dicyclic:6", 24),
    ("C3 : C8", "metacyclic:3,8,2", 24),
    ("C3^3", "abelian:3,3,3", 27),
    ("C2^5", "abelian:2,2,2,2,2", 32),
    ("C16 : C2", "metacyclic:16,2,7", 32),
    ("C2 x C4 x C4", "abelian:2,4,4", 32),
    ("S3 x S3", "direct_product:(sym:3),(sym:3)", 36),
    ("A4 x C3", "direct_product:(alt:4),(cyclic:3)", 36),
    ("S4 x C2", "direct_product:(sym:4),(cyclic:2)", 48),
    ("D48", "dihedral:24", 48),
    ("C13 : C4", "metacyclic:13,4,5", 52),
    ("C9 : C6", "metacyclic:9,6,2", 54),
    ("A5", "alt:5", 60),
    ("C8 x C8", "abelian:8,8", 64),
    ("D8 x D8", "direct_product:(dihedral:4),(dihedral:4)", 64),
    ("S3 wr 2", "wreath2:(sym:3)", 72),
    ("A4 x S3", "direct_product:(alt:4),(sym:3)", 72),
    ("SL2(3) x C3", "direct_product:(sl2:3),(cyclic:3)", 72),
    ("S4 x C3", "direct_product:(sym:4),(cyclic:3)", 72),
    ("D72", "dihedral:36", 72),
    ("C25 : C4", "metacyclic:25,4,7", 100),
    ("C11 : C10", "metacyclic:11,10,2", 110),
    ("S5", "sym:5", 120),
    ("A5 x C2", "direct_product:(alt:5),(cyclic:2)", 120),
    ("C11^2", "abelian:11,11", 121),
    ("C4 x C32", "abelian:4,32", 128),
    ("A4 x A4", "direct_product:(alt:4),(alt:4)", 144),
    ("C13 : C12", "metacyclic:13,12,2", 156),
    ("C19 : C9", "metacyclic:19,9,4", 171),
    ("C31 : C5", "metacyclic:31,5,2", 155),
    ("PSL2(7)", "psl2:7", 168),
];

/// Groups whose lattices are too large for a four-fold scan over all
/// subgroups; used where the search itself suffices.
pub const LARGE_LATTICES: &[(&str, &str, usize)] = &[
    ("C2^6", "abelian:2,2,2,2,2,2", 64),
    ("C2^7", "abelian:2,2,2,2,2,2,2", 128),
];

pub fn build(spec: &str) -> GroupTable {
    build_group(&GroupSpec::parse_named(spec).unwrap()).unwrap()
}

pub fn up_to(order: usize) -> impl Iterator<Item = &'static (&'static str, &'static str, usize)> {
    CORPUS.iter().filter(move |e| e.2 <= order)
}
