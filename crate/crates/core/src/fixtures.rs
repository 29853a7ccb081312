//! Worked-example tensors used by tests, docs and the CLI built-ins.

/// Dense 27-value tensor (lexicographic `abc`, `c` fastest). `l1_svd` mode 1
/// certifies it as fully separable.
pub const EXAMPLE_1: [f64; 27] = [
    0.0607, 0.012, -0.0369, 0.0216, 0.0697, 0.0952, 0.0912, -0.0323, 0.0344, //
    0.0892, 0.0489, 0.0643, 0.0377, -0.0451, 0.0433, -0.0632, 0.0381, -0.0675, //
    0.0415, 0.0305, 0.0438, 0.0425, 0.0322, 0.0671, 0.0283, 0.0514, -0.0673,
];

/// Sparse tensor with nine nonzero entries, one-based labels.
pub const EXAMPLE_2: [(&str, f64); 9] = [
    ("112", 0.05),
    ("113", 0.22),
    ("132", 0.12),
    ("133", 0.2),
    ("211", 0.12),
    ("221", 0.3),
    ("311", 0.15),
    ("322", 0.25),
    ("333", 0.1),
];
