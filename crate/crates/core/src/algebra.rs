use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ConstraintKind, Error, Result};
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::ZERO; dim]
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = Rational::ONE;
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn parity(degree: i64) -> i64 {
    degree.rem_euclid(2)
}

/// Koszul sign `(-1)^(a*b)` as an integer.
pub fn koszul(a: i64, b: i64) -> i64 {
    if parity(a) * parity(b) == 1 {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    degrees: Vec<i64>,
}

impl GradedVectorSpace {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        Ok(GradedVectorSpace { degrees })
    }

    /// The zero space, used for acyclic homology.
    pub fn empty() -> Self {
        GradedVectorSpace { degrees: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Degree of a vector if it is homogeneous (zero counts as degree 0).
    pub fn homogeneous_degree(&self, v: &[Rational]) -> Option<i64> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Splits a vector into its homogeneous components, ordered by degree.
    pub fn homogeneous_components(&self, v: &[Rational]) -> Vec<(i64, Vector)> {
        let mut degs: Vec<i64> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| self.degrees[i])
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter()
            .map(|d| {
                let comp = v
                    .iter()
                    .enumerate()
                    .map(|(i, x)| if self.degrees[i] == d { x.clone() } else { Rational::ZERO })
                    .collect();
                (d, comp)
            })
            .collect()
    }

    pub fn sdim(&self) -> i64 {
        self.degrees.iter().map(|&d| if parity(d) == 0 { 1 } else { -1 }).sum()
    }

    pub fn direct_sum(&self, other: &GradedVectorSpace) -> GradedVectorSpace {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedVectorSpace { degrees }
    }
}

/// Dense matrix with a degree label. Column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinOp {
    rows: usize,
    cols: usize,
    degree: i64,
    data: Vec<Rational>,
}

impl LinOp {
    pub fn zeros(rows: usize, cols: usize, degree: i64) -> Self {
        LinOp {
            rows,
            cols,
            degree,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn zero(dim: usize, degree: i64) -> Self {
        Self::zeros(dim, dim, degree)
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim, 0);
        for i in 0..dim {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, degree: i64) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(LinOp {
            rows: r,
            cols: c,
            degree,
            data,
        })
    }

    /// Matrix with the given nonzero entries `(row, col, value)`.
    pub fn from_entries(rows: usize, cols: usize, degree: i64, entries: &[(usize, usize, Rational)]) -> Self {
        let mut m = Self::zeros(rows, cols, degree);
        for (r, c, v) in entries {
            m.set(*r, *c, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn with_degree(mut self, degree: i64) -> Self {
        self.degree = degree;
        self
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols.max(1)).map(<[Rational]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match operator");
        let mut out = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *o += &(m * x);
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinOp) -> LinOp {
        assert_eq!(self.cols, other.rows, "composition of incompatible operators");
        let mut out = LinOp::zeros(self.rows, other.cols, self.degree + other.degree);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LinOp {
        LinOp {
            rows: self.rows,
            cols: self.cols,
            degree: self.degree,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> LinOp {
        self.scale(&Rational::from_int(-1))
    }

    /// Entrywise sum; the degree label of `self` is kept.
    pub fn add(&self, other: &LinOp) -> LinOp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinOp {
            rows: self.rows,
            cols: self.cols,
            degree: self.degree,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LinOp) -> LinOp {
        self.add(&other.neg())
    }

    pub fn add_assign_scaled(&mut self, c: &Rational, other: &LinOp) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, c, &other.data);
    }

    pub fn pow(&self, k: u32) -> LinOp {
        let mut out = LinOp::identity(self.rows).with_degree(0);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    /// First entry `(row, col)` that breaks homogeneity of degree `self.degree`.
    pub fn degree_violation(&self, target: &GradedVectorSpace, source: &GradedVectorSpace) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() && target.degree(r) != source.degree(c) + self.degree {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn check_homogeneous(&self, target: &GradedVectorSpace, source: &GradedVectorSpace) -> Result<()> {
        if self.rows != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: self.rows,
            });
        }
        if self.cols != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: self.cols,
            });
        }
        match self.degree_violation(target, source) {
            Some((row, col)) => Err(Error::NotHomogeneous {
                degree: self.degree,
                row,
                col,
            }),
            None => Ok(()),
        }
    }

    /// Sparse columns: for each source index the nonzero `(row, value)` pairs.
    pub fn sparse_columns(&self) -> Vec<Vec<(usize, Rational)>> {
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter_map(|r| {
                        let v = self.get(r, c);
                        (!v.is_zero()).then(|| (r, v.clone()))
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinOp(degree {}) [", self.degree)?;
        for row in self.row_vecs() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn supertrace(space: &GradedVectorSpace, m: &LinOp) -> Rational {
    assert!(m.is_square() && m.rows() == space.dim());
    let mut acc = Rational::ZERO;
    for b in 0..space.dim() {
        let x = m.get(b, b);
        if x.is_zero() {
            continue;
        }
        if parity(space.degree(b)) == 0 {
            acc += x;
        } else {
            acc -= x;
        }
    }
    acc
}

/// Supercommutator `AB - (-1)^(|A||B|) BA`.
pub fn commutator(a: &LinOp, b: &LinOp) -> LinOp {
    let ab = a.compose(b);
    let ba = b.compose(a);
    let s = Rational::from_int(koszul(a.degree(), b.degree()));
    let mut out = ab;
    out.add_assign_scaled(&-s, &ba);
    out
}

/// Finite-dimensional graded commutative associative algebra given by
/// structure constants `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    space: GradedVectorSpace,
    products: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("degrees", &self.space.degrees())
            .field("nonzero_constants", &self.structure_constants().len())
            .finish()
    }
}

pub fn make_algebra(space: GradedVectorSpace, mult: &[Vec<Vec<Rational>>]) -> Result<GradedAlgebra> {
    let dim = space.dim();
    if mult.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: mult.len(),
        });
    }
    let mut entries = Vec::new();
    for (i, plane) in mult.iter().enumerate() {
        if plane.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: plane.len(),
            });
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
    }
    GradedAlgebra::from_sparse(space, &entries)
}

impl GradedAlgebra {
    /// Builds and validates an algebra from sparse structure constants.
    /// Repeated `(i, j, k)` entries are summed.
    pub fn from_sparse(space: GradedVectorSpace, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let dim = space.dim();
        let mut dense = vec![Rational::ZERO; dim * dim * dim];
        for (i, j, k, c) in entries {
            for &idx in [i, j, k].iter() {
                if *idx >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: idx + 1,
                    });
                }
            }
            dense[(i * dim + j) * dim + k] += c;
        }
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &dense[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let alg = GradedAlgebra { space, products };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let deg = |i: usize| self.space.degree(i);
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in self.product_terms(i, j) {
                    if deg(*k) != deg(i) + deg(j) {
                        return Err(Error::ConstraintViolation {
                            kind: ConstraintKind::Degree,
                            witness: vec![i, j, *k],
                        });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let s = Rational::from_int(koszul(deg(i), deg(j)));
                for k in 0..dim {
                    if self.structure_constant(i, j, k) != &s * &self.structure_constant(j, i, k) {
                        return Err(Error::ConstraintViolation {
                            kind: ConstraintKind::Commutativity,
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.multiply_by_basis(&ij, k);
                    let jk = self.basis_product(j, k);
                    let right = self.basis_times(i, &jk);
                    if left != right {
                        return Err(Error::ConstraintViolation {
                            kind: ConstraintKind::Associativity,
                            witness: vec![i, j, k],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn degrees(&self) -> &[i64] {
        self.space.degrees()
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or(Rational::ZERO, |(_, c)| c.clone())
    }

    /// Sparse list of all nonzero `(i, j, k, c)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in self.product_terms(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (k, c) in self.product_terms(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// `f * e_k`
    pub fn multiply_by_basis(&self, f: &[Rational], k: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, c) in self.product_terms(i, k) {
                out[*t] += &(x * c);
            }
        }
        out
    }

    /// `e_i * g`
    pub fn basis_times(&self, i: usize, g: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (j, y) in g.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (t, c) in self.product_terms(i, j) {
                out[*t] += &(y * c);
            }
        }
        out
    }

    /// Bilinear product of coordinate vectors. Panics on length mismatch;
    /// use [`multiply`] for a checked version.
    pub fn mul(&self, f: &[Rational], g: &[Rational]) -> Vector {
        let dim = self.dim();
        assert!(f.len() == dim && g.len() == dim);
        let mut out = zero_vector(dim);
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in g.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let terms = self.product_terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in terms {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Left multiplication matrix of an arbitrary (possibly inhomogeneous)
    /// vector; the degree label is the degree of `f` when homogeneous.
    pub fn left_mult(&self, f: &[Rational]) -> LinOp {
        let dim = self.dim();
        let degree = self.space.homogeneous_degree(f).unwrap_or(0);
        let mut m = LinOp::zero(dim, degree);
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..dim {
                for (k, c) in self.product_terms(i, j) {
                    let cur = m.get(*k, j) + &(x * c);
                    m.set(*k, j, cur);
                }
            }
        }
        m
    }

    /// `str(e_k * (-))` for every basis vector.
    pub fn trace_form(&self) -> Vector {
        let dim = self.dim();
        (0..dim)
            .map(|k| {
                let mut acc = Rational::ZERO;
                for b in 0..dim {
                    let c = self.structure_constant(k, b, b);
                    if parity(self.degree(b)) == 0 {
                        acc += &c;
                    } else {
                        acc -= &c;
                    }
                }
                acc
            })
            .collect()
    }

    /// `str(f * (-))`, linear in `f`.
    pub fn trace_of_mult(&self, f: &[Rational]) -> Rational {
        self.trace_form().iter().zip(f).map(|(t, x)| t * x).sum()
    }

    /// Graded tensor product `self ⊗ other` with basis `(i, j) -> i * other.dim() + j`.
    pub fn tensor(&self, other: &GradedAlgebra) -> GradedAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let degrees = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| self.degree(i) + other.degree(j))
            .collect();
        let space = GradedVectorSpace::new(degrees).expect("nonempty");
        let mut entries = Vec::new();
        // (a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        let s = Rational::from_int(koszul(other.degree(b), self.degree(c)));
                        for (k, x) in self.product_terms(a, c) {
                            for (l, y) in other.product_terms(b, d) {
                                entries.push((a * m + b, c * m + d, k * m + l, &s * &(x * y)));
                            }
                        }
                    }
                }
            }
        }
        GradedAlgebra::from_sparse(space, &entries).expect("tensor product of valid algebras is valid")
    }
}

pub fn multiply(alg: &GradedAlgebra, f: &[Rational], g: &[Rational]) -> Result<Vector> {
    for v in [f, g] {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: v.len(),
            });
        }
    }
    Ok(alg.mul(f, g))
}

pub fn mult_op(alg: &GradedAlgebra, f: &[Rational]) -> Result<LinOp> {
    if f.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: f.len(),
        });
    }
    if alg.space().homogeneous_degree(f).is_none() {
        return Err(Error::PreconditionViolation(
            "mult_op needs a homogeneous vector; split it with homogeneous_components".into(),
        ));
    }
    Ok(alg.left_mult(f))
}

/// Multilinear map `V^{⊗n} -> W` stored as a dense tensor; `out_dim == 1`
/// with `scalar == true` encodes functionals.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiLinearMap {
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    scalar: bool,
    data: Vec<Rational>,
}

impl fmt::Debug for MultiLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero = self.data.iter().filter(|x| !x.is_zero()).count();
        write!(
            f,
            "MultiLinearMap(arity {}, {} -> {}, {} nonzero)",
            self.arity,
            self.in_dim,
            if self.scalar { 0 } else { self.out_dim },
            nonzero
        )
    }
}

impl MultiLinearMap {
    pub fn zeros(arity: usize, in_dim: usize, out_dim: usize) -> Self {
        let len = in_dim.pow(arity as u32) * out_dim;
        MultiLinearMap {
            arity,
            in_dim,
            out_dim,
            scalar: false,
            data: vec![Rational::ZERO; len],
        }
    }

    pub fn zero_functional(arity: usize, in_dim: usize) -> Self {
        let mut m = Self::zeros(arity, in_dim, 1);
        m.scalar = true;
        m
    }

    /// Tabulates a vector-valued function on all basis tuples.
    pub fn from_fn(arity: usize, in_dim: usize, out_dim: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut m = Self::zeros(arity, in_dim, out_dim);
        for (t, tuple) in BasisTuples::new(arity, in_dim).enumerate() {
            let v = f(&tuple);
            assert_eq!(v.len(), out_dim);
            m.data[t * out_dim..(t + 1) * out_dim].clone_from_slice(&v);
        }
        m
    }

    pub fn functional_from_fn(arity: usize, in_dim: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut m = Self::from_fn(arity, in_dim, 1, |t| vec![f(t)]);
        m.scalar = true;
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn is_functional(&self) -> bool {
        self.scalar
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &j| acc * self.in_dim + j) * self.out_dim
    }

    pub fn get(&self, tuple: &[usize]) -> &[Rational] {
        let o = self.offset(tuple);
        &self.data[o..o + self.out_dim]
    }

    pub fn get_mut(&mut self, tuple: &[usize]) -> &mut [Rational] {
        let o = self.offset(tuple);
        &mut self.data[o..o + self.out_dim]
    }

    pub fn value(&self, tuple: &[usize]) -> &Rational {
        assert!(self.scalar);
        &self.get(tuple)[0]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// First basis tuple with a nonzero value, in lexicographic order.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        BasisTuples::new(self.arity, self.in_dim).find(|t| !is_zero_vector(self.get(t)))
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &MultiLinearMap) {
        assert_eq!(self.data.len(), other.data.len());
        axpy(&mut self.data, c, &other.data);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = &*x * c;
        }
        out
    }

    /// Evaluates on arbitrary vectors by multilinear expansion.
    pub fn evaluate(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity);
        let mut out = zero_vector(self.out_dim);
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; self.arity];
        loop {
            let tuple: Vec<usize> = idx.iter().zip(&supports).map(|(&i, s)| s[i]).collect();
            let coeff: Rational = tuple.iter().zip(args).map(|(&j, v)| v[j].clone()).product();
            axpy(&mut out, &coeff, self.get(&tuple));
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn raw(&self) -> &[Rational] {
        &self.data
    }
}

/// All tuples in `{0..dim}^n`, lexicographic.
#[derive(Debug, Clone)]
pub struct BasisTuples {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl BasisTuples {
    pub fn new(n: usize, dim: usize) -> Self {
        BasisTuples {
            dim,
            next: if dim == 0 && n > 0 { None } else { Some(vec![0; n]) },
        }
    }
}

impl Iterator for BasisTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut pos = nxt.len();
        while pos > 0 {
            pos -= 1;
            nxt[pos] += 1;
            if nxt[pos] < self.dim {
                self.next = Some(nxt);
                return Some(cur);
            }
            nxt[pos] = 0;
        }
        Some(cur)
    }
}
