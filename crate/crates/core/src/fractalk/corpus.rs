//! The assertion sequences shipped with the crate, as script text.

pub const A: &str = include_str!("../../../../corpus/A.ftk");
pub const B: &str = include_str!("../../../../corpus/B.ftk");
pub const B_PRIME: &str = include_str!("../../../../corpus/Bprime.ftk");
pub const B_DOUBLE_PRIME: &str = include_str!("../../../../corpus/Bpp.ftk");
pub const C: &str = include_str!("../../../../corpus/C.ftk");
pub const C_PRIME: &str = include_str!("../../../../corpus/Cprime.ftk");
pub const D: &str = include_str!("../../../../corpus/D.ftk");
pub const E: &str = include_str!("../../../../corpus/E.ftk");
pub const F: &str = include_str!("../../../../corpus/F.ftk");

/// `(file name, script)` for every sequence, in reading order.
pub const ALL: [(&str, &str); 9] = [
    ("A.ftk", A),
    ("B.ftk", B),
    ("Bprime.ftk", B_PRIME),
    ("Bpp.ftk", B_DOUBLE_PRIME),
    ("C.ftk", C),
    ("Cprime.ftk", C_PRIME),
    ("D.ftk", D),
    ("E.ftk", E),
    ("F.ftk", F),
];
