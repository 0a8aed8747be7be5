//! The four reference graphs used across the test suites and shipped as
//! files with the CLI.

/// Eight-vertex graph: a two-way split re-merging through `d` into a tail
/// loop.  Weakly left-resolving for the smallest accommodating family but not
/// for the family of unions of generalized vertices.
pub const FIXTURE_A: &str = "# fixture A
edge u0 p a
edge u0 q a
edge p v1 b
edge p v2 b
edge q v2 c
edge q v3 c
edge v1 v4 d
edge v2 v4 d
edge v3 v4 d
edge v4 v5 e
edge v5 v5 f
";

/// Six-vertex strongly connected graph whose only nondeterministic letter is
/// `a3`; every singleton is a union of generalized vertices but `{v4}` is not
/// in the smallest accommodating family.
pub const FIXTURE_B: &str = "# fixture B
edge v1 v2 a1
edge v1 v3 a2
edge v2 v4 a3
edge v2 v5 a3
edge v3 v5 a4
edge v4 v6 a5
edge v5 v6 a6
edge v6 v1 a7
";

/// Single vertex with one loop.
pub const FIXTURE_C: &str = "# fixture C
edge v v a
";

/// Two disconnected single-vertex loops with distinct labels.
pub const FIXTURE_D: &str = "# fixture D
edge w w a
edge v v b
";
