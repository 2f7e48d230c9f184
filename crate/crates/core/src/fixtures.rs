//! Small hand-checkable datasets.

use crate::data::Dataset;

/// Five 2-d tuples with a three-point skyline `{a, b, c}`.
pub fn d1() -> Dataset {
    Dataset::from_rows([
        ("a", vec![1.0, 5.0]),
        ("b", vec![2.0, 2.0]),
        ("c", vec![5.0, 1.0]),
        ("d", vec![4.0, 4.0]),
        ("e", vec![3.0, 3.0]),
    ])
    .expect("valid fixture")
}

/// Nine 2-d tuples whose skyline is `{r1, r2, r4, r6, r8, r9}`.
///
/// `r4`, `r6` and `r8` form a tight cluster near `(5, 5)`; each of them
/// alone dominates exactly one of the non-skyline tuples `r3`, `r5`, `r7`.
pub fn clustered_skyline() -> Dataset {
    Dataset::from_rows([
        ("r1", vec![1.0, 10.0]),
        ("r2", vec![2.0, 7.5]),
        ("r3", vec![4.9, 6.0]),
        ("r4", vec![4.8, 5.2]),
        ("r5", vec![5.1, 5.1]),
        ("r6", vec![5.0, 5.0]),
        ("r7", vec![6.0, 4.9]),
        ("r8", vec![5.2, 4.8]),
        ("r9", vec![10.0, 1.0]),
    ])
    .expect("valid fixture")
}
