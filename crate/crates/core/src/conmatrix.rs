//! The connectivity matrix over `Part_n`, its triangularization by `pi`, and
//! the determinant computed two independent ways.

use std::fmt;
use std::ops::Range;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{connectivity_number, pi};
use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::partitions::{coherent_order, CoherentOrder, Partition};
use crate::scalar::{factorial, pow, Integer, Scalar};

/// 0/1 matrix with `a[i][j] = 1` iff `order[i] · order[j]` is the one-block
/// partition. Rows are bit-packed.
#[derive(Debug, Clone)]
pub struct ConnMatrix {
    order: CoherentOrder,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl ConnMatrix {
    pub fn order(&self) -> &CoherentOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.dim()).map(|j| self.get(i, j) as u8).collect()
    }

    pub fn to_dense<T: Scalar>(&self) -> Matrix<T> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if self.get(i, j) {
                    m.set(i, j, T::one());
                }
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rows of `0`/`1` separated by spaces, one line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.dim() * (2 * self.dim() + 1));
        for i in 0..self.dim() {
            let row: Vec<&str> = (0..self.dim())
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn export(&self) -> MatrixExport {
        MatrixExport {
            kind: "connectivity".into(),
            n: self.order.n(),
            dimension: self.dim(),
            order: self.order.sequence().iter().map(ToString::to_string).collect(),
            entries: (0..self.dim())
                .map(|i| (0..self.dim()).map(|j| (self.get(i, j) as u8).to_string()).collect())
                .collect(),
        }
    }
}

/// Structured matrix export: the basis order, the entries as decimal strings,
/// and enough metadata to rebuild the matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub kind: String,
    pub n: usize,
    pub dimension: usize,
    pub order: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixExport {
    pub fn from_matrix<T: Scalar>(kind: &str, order: &CoherentOrder, m: &Matrix<T>) -> Self {
        MatrixExport {
            kind: kind.into(),
            n: order.n(),
            dimension: m.dim(),
            order: order.sequence().iter().map(ToString::to_string).collect(),
            entries: m
                .rows()
                .into_iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

pub fn build_connectivity_matrix(order: &CoherentOrder) -> ConnMatrix {
    let dim = order.len();
    let words_per_row = dim.div_ceil(64);
    let seq = order.sequence();
    let masks: Option<Vec<Vec<u64>>> = seq.iter().map(Partition::block_masks).collect();
    let rows: Vec<Vec<u64>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut words = vec![0u64; words_per_row];
            for j in 0..dim {
                let trivial = match &masks {
                    Some(masks) => masks_join_to_full(&masks[i], &masks[j], order.n()),
                    None => seq[i].joins_to_trivial(&seq[j]).expect("order holds one ground set"),
                };
                if trivial {
                    words[j / 64] |= 1 << (j % 64);
                }
            }
            words
        })
        .collect();
    ConnMatrix {
        order: order.clone(),
        words_per_row,
        bits: rows.into_iter().flatten().collect(),
    }
}

/// Grows the component of element 1 through blocks of either partition until
/// it stops changing; the join is one block iff that component is everything.
fn masks_join_to_full(a: &[u64], b: &[u64], n: usize) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut reached = a[0];
    loop {
        let grown = a
            .iter()
            .chain(b)
            .filter(|&&m| m & reached != 0)
            .fold(reached, |acc, &m| acc | m);
        if grown == reached {
            return reached == full;
        }
        reached = grown;
    }
}

/// The matrix of `pi` in the ordered basis: column `j` holds the coefficients
/// of `pi(order[j])`, so entry `(k, j)` is the coefficient of `order[k]`.
/// Unit lower triangular whenever the order is coherent.
#[derive(Debug, Clone)]
pub struct EliminationMatrix<T> {
    order: CoherentOrder,
    matrix: Matrix<T>,
}

impl<T: Scalar> EliminationMatrix<T> {
    pub fn order(&self) -> &CoherentOrder {
        &self.order
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

pub fn build_elimination_matrix<T: Scalar>(
    order: &CoherentOrder,
    limits: &Limits,
) -> Result<EliminationMatrix<T>> {
    check_limit("n (dense matrices)", order.n(), limits.max_dense_n)?;
    let dim = order.len();
    let mut matrix = Matrix::zeros(dim);
    for (j, a) in order.sequence().iter().enumerate() {
        for (q, c) in pi::<T>(a).iter() {
            let k = order
                .position(q)
                .ok_or_else(|| Error::Consistency(format!("{q} missing from order")))?;
            if k < j {
                return Err(Error::Consistency(format!(
                    "pi({a}) has support on {q}, which precedes it in the order"
                )));
            }
            matrix.set(k, j, c.clone());
        }
        if !matrix.get(j, j).is_one() {
            return Err(Error::Consistency(format!("pi({a}) does not start with {a}")));
        }
    }
    Ok(EliminationMatrix {
        order: order.clone(),
        matrix,
    })
}

/// `Bᵗ A`: row `i` is the one-block coefficient of `pi(order[i]) · order[j]`
/// for every `j`.
pub fn triangularize<T: Scalar>(a: &ConnMatrix, b: &EliminationMatrix<T>) -> Result<Matrix<T>> {
    if a.order() != b.order() {
        return Err(Error::Domain("matrices built over different orders".into()));
    }
    Ok(b.matrix().transpose().mul(&a.to_dense()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularCheck {
    pub lower_triangular: bool,
    /// The diagonal is constant on every class range and equals that class's
    /// connectivity number.
    pub diagonal_matches_alpha: bool,
}

pub fn check_triangularized<T: Scalar>(
    order: &CoherentOrder,
    tri: &Matrix<T>,
    alphas: &[ClassAlpha<T>],
) -> TriangularCheck {
    let diagonal_matches_alpha = alphas.iter().all(|ca| {
        ca.range
            .clone()
            .all(|i| i < tri.dim() && *tri.get(i, i) == ca.alpha)
    }) && alphas.iter().map(|ca| ca.range.len()).sum::<usize>() == order.len();
    TriangularCheck {
        lower_triangular: tri.is_lower_triangular(),
        diagonal_matches_alpha,
    }
}

/// Connectivity number of one conjugation class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassAlpha<T> {
    pub range: Range<usize>,
    pub signature: Vec<usize>,
    pub alpha: T,
}

/// One connectivity number per class range, computed on the first member.
pub fn class_alphas<T: Scalar>(order: &CoherentOrder) -> Vec<ClassAlpha<T>> {
    order
        .class_ranges()
        .par_iter()
        .map(|range| {
            let rep = order.get(range.start);
            ClassAlpha {
                range: range.clone(),
                signature: rep.signature(),
                alpha: connectivity_number::<T>(rep).alpha,
            }
        })
        .collect()
}

/// `∏ α` over `Part_n`, evaluated as `∏ α_class ^ |class|`.
pub fn determinant_alpha<T: Scalar>(order: &CoherentOrder, limits: &Limits) -> Result<T> {
    check_limit("n (connectivity-number determinant)", order.n(), limits.max_alpha_n)?;
    Ok(class_alphas::<T>(order)
        .iter()
        .fold(T::one(), |acc, ca| acc * pow(&ca.alpha, ca.range.len())))
}

/// Bareiss determinant of the dense connectivity matrix.
pub fn determinant_direct<T: Scalar>(a: &ConnMatrix, limits: &Limits) -> Result<T> {
    let n = a.order().n();
    check_limit("n (direct determinant)", n, limits.max_direct_n)?;
    if n >= 7 {
        warn!("dense Bareiss on a {0}x{0} matrix; this can take a long time", a.dim());
    }
    Ok(a.to_dense::<T>().bareiss_determinant())
}

/// `∏ (m_A - 1)!` over `Part_n`, computed from block-size signatures alone:
/// a class with parts `λ` (multiplicities `k_s`) has `n! / (∏ λ_i! ∏ k_s!)` members.
pub fn formula_value(n: usize) -> Integer {
    let mut total = Integer::from(1);
    for parts in integer_partitions(n) {
        let mut denom: Integer = parts.iter().map(|&s| factorial::<Integer>(s)).product();
        let mut run = 1;
        for w in parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                denom *= factorial::<Integer>(run);
                run = 1;
            }
        }
        denom *= factorial::<Integer>(run);
        let size = factorial::<Integer>(n) / denom;
        let size: usize = size.try_into().expect("class size fits in usize");
        total *= pow(&factorial::<Integer>(parts.len() - 1), size);
    }
    total
}

/// Integer partitions of `n` as non-increasing part lists.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetMethod {
    Alpha,
    Direct,
    Both,
}

impl DetMethod {
    pub fn uses_alpha(self) -> bool {
        matches!(self, DetMethod::Alpha | DetMethod::Both)
    }

    pub fn uses_direct(self) -> bool {
        matches!(self, DetMethod::Direct | DetMethod::Both)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub method: DetMethod,
    pub limits: Limits,
    /// With [`DetMethod::Both`], the direct leg is skipped above this `n`.
    pub direct_default_max_n: usize,
    /// Use this order instead of the default one.
    pub order: Option<CoherentOrder>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            method: DetMethod::Both,
            limits: Limits::default(),
            direct_default_max_n: 6,
            order: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub signature: Vec<usize>,
    pub size: usize,
    pub num_blocks: usize,
    #[serde(with = "int_string")]
    pub alpha: Integer,
}

/// Outcome of checking the determinant formula at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub bell: usize,
    pub method: DetMethod,
    pub order: Vec<String>,
    pub classes: Vec<ClassSummary>,
    #[serde(with = "opt_int_string")]
    pub det_alpha: Option<Integer>,
    #[serde(with = "opt_int_string")]
    pub det_direct: Option<Integer>,
    #[serde(with = "int_string")]
    pub formula: Integer,
    pub alpha_matches_formula: Option<bool>,
    pub direct_matches_formula: Option<bool>,
    pub legs_agree: Option<bool>,
    pub triangularization: Option<TriangularCheck>,
    pub nonzero: bool,
    /// Sign of the computed determinant: -1 or 1.
    pub sign: i8,
    pub passed: bool,
}

pub fn verify_theorem(n: usize, options: &VerifyOptions) -> Result<VerificationReport> {
    let limits = &options.limits;
    let order = match &options.order {
        Some(order) if order.n() == n => order.clone(),
        Some(order) => {
            return Err(Error::Domain(format!(
                "order is over Part_{} but n = {n}",
                order.n()
            )))
        }
        None => coherent_order(n, limits)?,
    };
    let run_alpha = options.method.uses_alpha();
    let run_direct = match options.method {
        DetMethod::Direct => true,
        DetMethod::Both => n <= options.direct_default_max_n.min(limits.max_direct_n),
        DetMethod::Alpha => false,
    };
    if run_alpha {
        check_limit("n (connectivity-number determinant)", n, limits.max_alpha_n)?;
    }

    let alphas = class_alphas::<Integer>(&order);
    let det_alpha = run_alpha.then(|| {
        alphas
            .iter()
            .fold(Integer::from(1), |acc, ca| acc * pow(&ca.alpha, ca.range.len()))
    });

    let needs_matrix = run_direct || n <= limits.max_dense_n;
    let a = needs_matrix.then(|| build_connectivity_matrix(&order));
    let det_direct = match (&a, run_direct) {
        (Some(a), true) => Some(determinant_direct::<Integer>(a, limits)?),
        _ => None,
    };
    let triangularization = match &a {
        Some(a) if n <= limits.max_dense_n => {
            let b = build_elimination_matrix::<Integer>(&order, limits)?;
            let tri = triangularize(a, &b)?;
            Some(check_triangularized(&order, &tri, &alphas))
        }
        _ => None,
    };

    let formula = formula_value(n);
    let alpha_matches_formula = det_alpha.as_ref().map(|d| d.magnitude() == formula.magnitude());
    let direct_matches_formula = det_direct.as_ref().map(|d| d.magnitude() == formula.magnitude());
    let legs_agree = match (&det_alpha, &det_direct) {
        (Some(x), Some(y)) => Some(x == y),
        _ => None,
    };
    let det = det_alpha
        .as_ref()
        .or(det_direct.as_ref())
        .expect("at least one leg runs");
    let nonzero = det.sign() != num_bigint::Sign::NoSign;
    let sign = if det.sign() == num_bigint::Sign::Minus { -1 } else { 1 };
    let triangular_ok = triangularization
        .as_ref()
        .is_none_or(|t| t.lower_triangular && t.diagonal_matches_alpha);
    let passed = nonzero
        && alpha_matches_formula.unwrap_or(true)
        && direct_matches_formula.unwrap_or(true)
        && legs_agree.unwrap_or(true)
        && triangular_ok;

    Ok(VerificationReport {
        n,
        bell: order.len(),
        method: options.method,
        order: if order.len() <= 64 {
            order.sequence().iter().map(ToString::to_string).collect()
        } else {
            Vec::new()
        },
        classes: alphas
            .iter()
            .map(|ca| ClassSummary {
                signature: ca.signature.clone(),
                size: ca.range.len(),
                num_blocks: ca.signature.len(),
                alpha: ca.alpha.clone(),
            })
            .collect(),
        det_alpha,
        det_direct,
        formula,
        alpha_matches_formula,
        direct_matches_formula,
        legs_agree,
        triangularization,
        nonzero,
        sign,
        passed,
    })
}

fn show<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "skipped".to_string(), ToString::to_string)
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}  (Bell(n) = {})", self.n, self.bell)?;
        for c in &self.classes {
            writeln!(
                f,
                "  class {:?}: {} partitions, {} blocks, alpha = {}",
                c.signature, c.size, c.num_blocks, c.alpha
            )?;
        }
        writeln!(f, "det via connectivity numbers: {}", show(&self.det_alpha))?;
        writeln!(f, "det via Bareiss:              {}", show(&self.det_direct))?;
        writeln!(f, "prod (m - 1)!:                {}", self.formula)?;
        writeln!(f, "|alpha det| = formula:        {}", show(&self.alpha_matches_formula))?;
        writeln!(f, "|direct det| = formula:       {}", show(&self.direct_matches_formula))?;
        writeln!(f, "legs agree:                   {}", show(&self.legs_agree))?;
        match &self.triangularization {
            Some(t) => writeln!(
                f,
                "B^t A lower triangular: {}, diagonal = class alphas: {}",
                t.lower_triangular, t.diagonal_matches_alpha
            )?,
            None => writeln!(f, "B^t A: skipped")?,
        }
        writeln!(f, "sign: {}", if self.sign < 0 { "-" } else { "+" })?;
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

pub(crate) mod int_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Integer;

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod opt_int_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Integer;

    pub fn serialize<S: Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Integer>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// `∏ (m_A - 1)!` by direct enumeration of the order.
pub fn formula_by_enumeration(order: &CoherentOrder) -> Integer {
    order
        .sequence()
        .iter()
        .map(|p: &Partition| factorial::<Integer>(p.num_blocks() - 1))
        .product()
}
