pub mod elliptic;
pub mod error;
pub mod factor;
pub mod field;
pub mod finite_field;
pub mod fixtures;
pub mod kodaira;
pub mod lattice;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod si_verify;
pub mod ss_scan;
pub mod surface_count;
pub mod tate;
pub mod tate_surface;
pub mod weil;

/// Chapters of the guide in `book/`, compiled as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/point-counts.md")]
    pub mod point_counts {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    pub mod frobenius {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    pub mod lattices {}
    #[doc = include_str!("../../../book/src/fibrations.md")]
    pub mod fibrations {}
    #[doc = include_str!("../../../book/src/kodaira.md")]
    pub mod kodaira {}
    #[doc = include_str!("../../../book/src/supersingular.md")]
    pub mod supersingular {}
    #[doc = include_str!("../../../book/src/shioda-inose.md")]
    pub mod shioda_inose {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
