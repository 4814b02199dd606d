//! Alternating n-ary algebras of dimension n+1, stored by the images of the
//! n+1 ascending basis tuples that omit one index.

mod io;
mod perm;

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::freealg::{format_scalar, rat, Polynomial, Scalar, Word};
use crate::rewrite::GeneratorSet;

pub use io::{parse_rational, AlgebraFile, AlgebraFileError};
pub use perm::{permutations_with_sign, sort_with_sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NLieError {
    #[error("bracket takes {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("basis index {index} outside 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("alternating sum needs distinct indices, {index} is repeated")]
    RepeatedIndex { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("structure table must have {expected} vectors of length {expected}, got {got}")]
    BadTable { expected: usize, got: String },
}

/// Which row of the classification an algebra was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraLabel {
    /// `[e_1, …, ê_i, …, e_{n+1}] = (−1)^{n+i+1} e_i`.
    Simple,
    Abelian,
    /// `[e_2, …, e_{n+1}] = e_1`.
    OneA,
    /// `[e_1, …, e_n] = e_1`.
    OneB,
    /// `[e_2, …, e_{n+1}] = e_1`, `[e_1, e_3, …, e_{n+1}] = e_2`.
    TwoA,
    /// `[e_2, …, e_{n+1}] = e_1 + β e_2`, `[e_1, e_3, …, e_{n+1}] = e_2`, β ≠ 0.
    TwoB { beta: Scalar },
    /// `[e_1, …, ê_i, …, e_{n+1}] = e_i` for `1 ≤ i ≤ r`.
    R { r: usize },
}

impl AlgebraLabel {
    /// Short case name: `simple`, `abelian`, `1a`, `1b`, `2a`, `2b`, `r`.
    pub fn case_name(&self) -> &'static str {
        match self {
            AlgebraLabel::Simple => "simple",
            AlgebraLabel::Abelian => "abelian",
            AlgebraLabel::OneA => "1a",
            AlgebraLabel::OneB => "1b",
            AlgebraLabel::TwoA => "2a",
            AlgebraLabel::TwoB { .. } => "2b",
            AlgebraLabel::R { .. } => "r",
        }
    }

    /// Dimension of the derived algebra implied by the case.
    pub fn expected_derived_dimension(&self, n: usize) -> usize {
        match self {
            AlgebraLabel::Simple => n + 1,
            AlgebraLabel::Abelian => 0,
            AlgebraLabel::OneA | AlgebraLabel::OneB => 1,
            AlgebraLabel::TwoA | AlgebraLabel::TwoB { .. } => 2,
            AlgebraLabel::R { r } => *r,
        }
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraLabel::TwoB { beta } => write!(f, "2b(beta={})", format_scalar(beta)),
            AlgebraLabel::R { r } => write!(f, "r(r={r})"),
            other => f.write_str(other.case_name()),
        }
    }
}

/// An alternating n-ary algebra on `e_1, …, e_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra {
    arity: usize,
    /// `structure[i - 1]` holds the coordinates of `[e_1, …, ê_i, …, e_{n+1}]`.
    structure: Vec<Vec<Scalar>>,
    label: Option<AlgebraLabel>,
}

impl NLieAlgebra {
    pub fn new(arity: usize, structure: Vec<Vec<Scalar>>, label: Option<AlgebraLabel>) -> Result<Self, NLieError> {
        if arity < 2 {
            return Err(NLieError::InvalidParameter(format!("arity must be at least 2, got {arity}")));
        }
        let m = arity + 1;
        if structure.len() != m || structure.iter().any(|y| y.len() != m) {
            let got = format!("{} vectors of lengths {:?}", structure.len(), structure.iter().map(Vec::len).collect::<Vec<_>>());
            return Err(NLieError::BadTable { expected: m, got });
        }
        Ok(NLieAlgebra { arity, structure, label })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dimension(&self) -> usize {
        self.arity + 1
    }

    pub fn label(&self) -> Option<&AlgebraLabel> {
        self.label.as_ref()
    }

    pub fn with_label(mut self, label: Option<AlgebraLabel>) -> Self {
        self.label = label;
        self
    }

    /// Coordinates of `[e_1, …, ê_i, …, e_{n+1}]`, `i` 1-based.
    pub fn structure_vector(&self, i: usize) -> &[Scalar] {
        &self.structure[i - 1]
    }

    pub fn structure(&self) -> &[Vec<Scalar>] {
        &self.structure
    }

    fn zero_vector(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dimension()]
    }

    /// Bracket of basis vectors `e_{t_1}, …, e_{t_n}` (1-based indices).
    pub fn bracket(&self, tuple: &[usize]) -> Result<Vec<Scalar>, NLieError> {
        if tuple.len() != self.arity {
            return Err(NLieError::ArityMismatch { expected: self.arity, got: tuple.len() });
        }
        let m = self.dimension();
        if let Some(&index) = tuple.iter().find(|&&i| i == 0 || i > m) {
            return Err(NLieError::IndexOutOfRange { index, dimension: m });
        }
        Ok(self.bracket_unchecked(tuple))
    }

    fn bracket_unchecked(&self, tuple: &[usize]) -> Vec<Scalar> {
        let Some((sorted, sign)) = sort_with_sign(tuple) else {
            return self.zero_vector();
        };
        // n distinct indices out of n+1: exactly one is missing
        let omitted = (1..=self.dimension())
            .zip(sorted.iter().copied().chain(std::iter::once(usize::MAX)))
            .find(|&(expected, got)| expected != got)
            .map(|(expected, _)| expected)
            .expect("one index is omitted");
        let y = &self.structure[omitted - 1];
        if sign > 0 {
            y.clone()
        } else {
            y.iter().map(|c| -c).collect()
        }
    }

    /// Multilinear extension of the bracket to arbitrary coordinate vectors.
    pub fn bracket_vectors(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>, NLieError> {
        if args.len() != self.arity {
            return Err(NLieError::ArityMismatch { expected: self.arity, got: args.len() });
        }
        let mut out = self.zero_vector();
        let mut tuple = Vec::with_capacity(self.arity);
        self.expand(args, &mut tuple, Scalar::one(), &mut out);
        Ok(out)
    }

    fn expand(&self, args: &[Vec<Scalar>], tuple: &mut Vec<usize>, coeff: Scalar, out: &mut [Scalar]) {
        let depth = tuple.len();
        if depth == args.len() {
            for (o, y) in out.iter_mut().zip(self.bracket_unchecked(tuple)) {
                if !y.is_zero() {
                    *o += &coeff * y;
                }
            }
            return;
        }
        for (j, c) in args[depth].iter().enumerate() {
            if c.is_zero() || tuple.contains(&(j + 1)) {
                continue;
            }
            tuple.push(j + 1);
            self.expand(args, tuple, &coeff * c, out);
            tuple.pop();
        }
    }

    fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i - 1] = Scalar::one();
        v
    }

    /// Brute-force check of `[[x_1..x_n], y_2..y_n] = Σ_i [x_1, …, [x_i, y_2..y_n], …, x_n]`
    /// over ascending basis tuples `x` and `y`. Both sides are multilinear
    /// and alternating in `x` and in `y`, so these tuples decide the identity.
    pub fn check_generalized_jacobi(&self) -> JacobiReport {
        self.check_jacobi_over(&ascending_tuples(self.dimension(), self.arity - 1))
    }

    /// The same check over every basis tuple `y`, repeats and all.
    pub fn check_generalized_jacobi_exhaustive(&self) -> JacobiReport {
        self.check_jacobi_over(&all_tuples(self.dimension(), self.arity - 1))
    }

    fn check_jacobi_over(&self, y_tuples: &[Vec<usize>]) -> JacobiReport {
        let n = self.arity;
        let m = self.dimension();
        let mut violations = Vec::new();
        let mut checked = 0usize;
        for omit in (1..=m).rev() {
            let xs: Vec<usize> = (1..=m).filter(|&i| i != omit).collect();
            let x_vectors: Vec<Vec<Scalar>> = xs.iter().map(|&i| self.basis_vector(i)).collect();
            let outer = self.bracket_unchecked(&xs);
            for ys in y_tuples {
                checked += 1;
                let y_vectors: Vec<Vec<Scalar>> = ys.iter().map(|&i| self.basis_vector(i)).collect();
                let mut lhs_args = vec![outer.clone()];
                lhs_args.extend(y_vectors.iter().cloned());
                let lhs = self.bracket_vectors(&lhs_args).expect("arity");
                let mut rhs = self.zero_vector();
                for i in 0..n {
                    let mut inner_args = vec![x_vectors[i].clone()];
                    inner_args.extend(y_vectors.iter().cloned());
                    let inner = self.bracket_vectors(&inner_args).expect("arity");
                    let mut args = x_vectors.clone();
                    args[i] = inner;
                    for (r, v) in rhs.iter_mut().zip(self.bracket_vectors(&args).expect("arity")) {
                        *r += v;
                    }
                }
                if lhs != rhs {
                    violations.push(JacobiViolation { x: xs.clone(), y: ys.clone(), lhs, rhs });
                }
            }
        }
        JacobiReport { checked, violations }
    }

    /// Dimension of the span of all bracket values.
    pub fn derived_dimension(&self) -> usize {
        rank(self.structure.clone())
    }

    /// `φ(v) = Σ v_i x_i`.
    pub fn phi(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(v.iter().enumerate().map(|(i, c)| (Word::letter(i + 1), c.clone())))
    }

    /// `φ(y_i)` for 1-based `i`.
    pub fn y_polynomial(&self, i: usize) -> Polynomial {
        self.phi(self.structure_vector(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct JacobiReport {
    pub checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Strictly increasing tuples of `len` indices from `1..=m`.
fn ascending_tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    all_tuples(m, len).into_iter().filter(|t| t.windows(2).all(|w| w[0] < w[1])).collect()
}

fn all_tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=m).map(move |i| {
                    let mut next = t.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out
}

/// Rank over ℚ by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        let pivot_row: Vec<Scalar> = rows[rank].iter().map(|c| c * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for (c, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *c -= &factor * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn sign_pow(exponent: usize) -> Scalar {
    if exponent.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn unit_table(m: usize, entries: &[(usize, usize, Scalar)]) -> Vec<Vec<Scalar>> {
    let mut table = vec![vec![Scalar::zero(); m]; m];
    for (i, j, c) in entries {
        table[i - 1][j - 1] = c.clone();
    }
    table
}

/// The simple algebra: `y_i = (−1)^{n+i+1} e_i`.
pub fn simple_algebra(n: usize) -> Result<NLieAlgebra, NLieError> {
    if n < 3 {
        return Err(NLieError::InvalidParameter(format!("the simple algebra needs n >= 3, got {n}")));
    }
    let entries: Vec<_> = (1..=n + 1).map(|i| (i, i, sign_pow(n + i + 1))).collect();
    NLieAlgebra::new(n, unit_table(n + 1, &entries), Some(AlgebraLabel::Simple))
}

/// Non-simple algebras of the classification, by label. Use
/// [`simple_algebra`] for [`AlgebraLabel::Simple`]; it is accepted here too.
pub fn classified_algebra(label: &AlgebraLabel, n: usize) -> Result<NLieAlgebra, NLieError> {
    if n < 3 {
        return Err(NLieError::InvalidParameter(format!("classified algebras need n >= 3, got {n}")));
    }
    let m = n + 1;
    let one = Scalar::one();
    let entries: Vec<(usize, usize, Scalar)> = match label {
        AlgebraLabel::Simple => return simple_algebra(n),
        AlgebraLabel::Abelian => vec![],
        AlgebraLabel::OneA => vec![(1, 1, one)],
        AlgebraLabel::OneB => vec![(m, 1, one)],
        AlgebraLabel::TwoA => vec![(1, 1, one.clone()), (2, 2, one)],
        AlgebraLabel::TwoB { beta } => {
            if beta.is_zero() {
                return Err(NLieError::InvalidParameter("beta must be nonzero".into()));
            }
            vec![(1, 1, one.clone()), (1, 2, beta.clone()), (2, 2, one)]
        }
        AlgebraLabel::R { r } => {
            if *r < 3 || *r > m {
                return Err(NLieError::InvalidParameter(format!("r must lie in 3..={m}, got {r}")));
            }
            (1..=*r).map(|i| (i, i, one.clone())).collect()
        }
    };
    NLieAlgebra::new(n, unit_table(m, &entries), Some(label.clone()))
}

/// `Σ_{σ ∈ S_n} ε(σ) x_{σ(1)} ⋯ x_{σ(n)}` over the given distinct indices.
pub fn alt_polynomial(indices: &[usize]) -> Result<Polynomial, NLieError> {
    for (k, i) in indices.iter().enumerate() {
        if indices[..k].contains(i) {
            return Err(NLieError::RepeatedIndex { index: *i });
        }
    }
    Ok(signed_permutation_sum(indices, |_| true))
}

/// Signed sum over the permutations of `indices` accepted by `keep`, with
/// signs relative to the given order.
pub fn signed_permutation_sum(indices: &[usize], keep: impl Fn(&[usize]) -> bool) -> Polynomial {
    let mut terms = Vec::new();
    for (perm, sign) in permutations_with_sign(indices.len()) {
        let word: Vec<usize> = perm.iter().map(|&p| indices[p]).collect();
        if keep(&word) {
            terms.push((Word::new(word), if sign > 0 { Scalar::one() } else { -Scalar::one() }));
        }
    }
    Polynomial::from_terms(terms)
}

/// `(−1)^{⌊n/2⌋}`, which makes the descending word in an alternating sum of
/// `n` ascending indices carry coefficient 1.
pub fn envelope_sign(n: usize) -> Scalar {
    sign_pow(n / 2)
}

/// Indices `1..=n+1` with `i` removed.
pub fn omit(m: usize, i: usize) -> Vec<usize> {
    (1..=m).filter(|&k| k != i).collect()
}

/// `G_i = (−1)^{⌊n/2⌋} (alt(x_1, …, x̂_i, …, x_{n+1}) − φ(y_i))` for
/// `i = 1..=n+1`, in index order.
pub fn envelope_generator_list(algebra: &NLieAlgebra) -> Vec<Polynomial> {
    let n = algebra.arity();
    let m = algebra.dimension();
    let sign = envelope_sign(n);
    (1..=m)
        .map(|i| {
            let alt = alt_polynomial(&omit(m, i)).expect("distinct indices");
            (&alt - &algebra.y_polynomial(i)).scale(&sign)
        })
        .collect()
}

/// The ideal generators `{G_1, …, G_{n+1}}` of the universal envelope.
pub fn envelope_generators(algebra: &NLieAlgebra) -> GeneratorSet {
    let list = envelope_generator_list(algebra);
    debug_assert!(list.iter().all(Polynomial::is_monic));
    GeneratorSet::new(list).expect("envelope generators are nonzero")
}

/// Normal form of `G_1 x_1 − x_{n+1} G_{n+1}` modulo the original generators,
/// `(−1)^{⌊n/2⌋} (−1)^{n+1} Σ_i (−1)^i (x_i φ(y_i) − (−1)^n φ(y_i) x_i)`,
/// evaluated directly from the structure constants. The factor
/// `(−1)^{⌊n/2⌋}` is the sign carried by the generators themselves.
pub fn nff_normal_form(algebra: &NLieAlgebra) -> Polynomial {
    let n = algebra.arity();
    let mut acc = Polynomial::zero();
    for i in 1..=algebra.dimension() {
        let x = Polynomial::letter(i);
        let y = algebra.y_polynomial(i);
        let inner = &(&x * &y) - &(&y * &x).scale(&sign_pow(n));
        acc = acc + inner.scale(&sign_pow(i));
    }
    acc.scale(&(envelope_sign(n) * sign_pow(n + 1)))
}

/// `Σ x_i²` over `x_1..x_m`.
pub fn sum_of_squares(m: usize) -> Polynomial {
    Polynomial::from_terms((1..=m).map(|i| (Word::new([i, i]), rat(1, 1))))
}

impl fmt::Display for NLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.dimension();
        for i in 1..=m {
            let args: Vec<String> = omit(m, i).iter().map(|k| format!("e{k}")).collect();
            let value = self.structure_vector(i);
            let mut rhs = String::new();
            for (k, c) in value.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                if rhs.is_empty() {
                    if neg {
                        rhs.push('-');
                    }
                } else {
                    rhs.push_str(if neg { " - " } else { " + " });
                }
                let mag = c.abs();
                if !mag.is_one() {
                    rhs.push_str(&format_scalar(&mag));
                    rhs.push('*');
                }
                rhs.push_str(&format!("e{}", k + 1));
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            writeln!(f, "[{}] = {}", args.join(", "), rhs)?;
        }
        Ok(())
    }
}
