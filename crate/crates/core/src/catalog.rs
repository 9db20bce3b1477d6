//! Built-in algebras and named operators.

use crate::algebra::{koszul, GradedAlgebra, GradedVectorSpace, LinOp};
use crate::rational::{factorial, Rational};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub algebra: GradedAlgebra,
    pub operators: Vec<(String, LinOp)>,
}

impl CatalogEntry {
    pub fn operator(&self, name: &str) -> Option<&LinOp> {
        self.operators.iter().find(|(n, _)| n == name).map(|(_, op)| op)
    }

    /// True when some basis vector has odd degree.
    pub fn is_graded(&self) -> bool {
        self.algebra.degrees().iter().any(|d| d % 2 != 0)
    }

    /// True when `str(f * (-))` is not identically zero.
    pub fn has_trace_structure(&self) -> bool {
        self.algebra.trace_form().iter().any(|t| !t.is_zero())
    }
}

/// C[x]/(x^k) with x in degree 0.
pub fn trunc_poly(k: usize) -> GradedAlgebra {
    trunc_poly_graded(k, 0)
}

/// C[x]/(x^k) with x in the given even degree.
pub fn trunc_poly_graded(k: usize, deg_x: i64) -> GradedAlgebra {
    assert!(k >= 1 && deg_x % 2 == 0);
    let space = GradedVectorSpace::new((0..k as i64).map(|a| a * deg_x).collect()).unwrap();
    let mut entries = Vec::new();
    for a in 0..k {
        for b in 0..k - a {
            entries.push((a, b, a + b, Rational::ONE));
        }
    }
    GradedAlgebra::from_sparse(space, &entries).unwrap()
}

/// Exterior algebra on `m` generators of degree 1; basis indexed by bitmask.
pub fn exterior(m: usize) -> GradedAlgebra {
    exterior_graded(m, 1)
}

/// Exterior algebra on `m` generators of the given odd degree.
pub fn exterior_graded(m: usize, deg: i64) -> GradedAlgebra {
    assert!(deg % 2 != 0);
    let dim = 1usize << m;
    let space = GradedVectorSpace::new((0..dim).map(|s| s.count_ones() as i64 * deg).collect()).unwrap();
    let mut entries = Vec::new();
    for s in 0..dim {
        for t in 0..dim {
            if s & t == 0 {
                entries.push((s, t, s | t, Rational::sign(exterior_inversions(s, t))));
            }
        }
    }
    GradedAlgebra::from_sparse(space, &entries).unwrap()
}

/// Pairs (a in S, b in T) with a > b; the sign of θ_S θ_T = ± θ_{S∪T}.
fn exterior_inversions(s: usize, t: usize) -> i64 {
    let mut count = 0;
    for a in 0..usize::BITS as usize {
        if s >> a & 1 == 1 {
            count += (t & ((1usize << a) - 1)).count_ones() as i64;
        }
    }
    count
}

/// C ⊕ N with N spanned by vectors of the given degrees and N·N = 0; the
/// first basis vector is the unit.
pub fn square_zero(extra: &[i64]) -> GradedAlgebra {
    let mut degrees = vec![0];
    degrees.extend_from_slice(extra);
    let dim = degrees.len();
    let space = GradedVectorSpace::new(degrees).unwrap();
    let mut entries = vec![(0, 0, 0, Rational::ONE)];
    for i in 1..dim {
        entries.push((0, i, i, Rational::ONE));
        entries.push((i, 0, i, Rational::ONE));
    }
    GradedAlgebra::from_sparse(space, &entries).unwrap()
}

/// C[x]/(x^3) ⊕ Cθ with θ odd of degree -1, x θ = θ θ = 0.
pub fn trunc_poly_3_odd_ext() -> GradedAlgebra {
    let space = GradedVectorSpace::new(vec![0, 0, 0, -1]).unwrap();
    let mut entries = Vec::new();
    for a in 0..3 {
        for b in 0..3 - a {
            entries.push((a, b, a + b, Rational::ONE));
        }
    }
    entries.push((0, 3, 3, Rational::ONE));
    entries.push((3, 0, 3, Rational::ONE));
    GradedAlgebra::from_sparse(space, &entries).unwrap()
}

/// (C[x]/(x^2)) ⊕ N where N = span{u, v} is acyclic for `D_1 u = v`, the
/// unit acts as identity on N, and x N = N N = 0. Basis {1, x, u, v} with
/// degrees {0, 0, 1, 0}.
pub fn acyclic_summand() -> GradedAlgebra {
    let space = GradedVectorSpace::new(vec![0, 0, 1, 0]).unwrap();
    let one = Rational::ONE;
    let entries = vec![
        (0, 0, 0, one.clone()),
        (0, 1, 1, one.clone()),
        (1, 0, 1, one.clone()),
        (0, 2, 2, one.clone()),
        (2, 0, 2, one.clone()),
        (0, 3, 3, one.clone()),
        (3, 0, 3, one),
    ];
    GradedAlgebra::from_sparse(space, &entries).unwrap()
}

/// `d^m/dx^m` on C[x]/(x^k).
pub fn poly_derivative(k: usize, m: usize, deg_x: i64) -> LinOp {
    let mut op = LinOp::zero(k, -(m as i64) * deg_x);
    for a in m..k {
        op.set(a - m, a, &factorial(a as u32) / &factorial((a - m) as u32));
    }
    op
}

/// `x^p d^m/dx^m` on C[x]/(x^k).
pub fn poly_weighted_derivative(k: usize, p: usize, m: usize) -> LinOp {
    let mut op = LinOp::zero(k, 0);
    for a in m..k {
        let b = a - m + p;
        if b < k {
            op.set(b, a, &factorial(a as u32) / &factorial((a - m) as u32));
        }
    }
    op
}

/// `∂/∂θ_i` on an exterior algebra with generators of degree `deg`.
pub fn exterior_derivative(m: usize, i: usize, deg: i64) -> LinOp {
    let dim = 1usize << m;
    let mut op = LinOp::zero(dim, -deg);
    for s in 0..dim {
        if s >> i & 1 == 1 {
            let before = (s & ((1usize << i) - 1)).count_ones() as i64;
            op.set(s & !(1 << i), s, Rational::sign(before));
        }
    }
    op
}

/// `D ⊗ 1` on `A ⊗ B`.
pub fn tensor_left(d: &LinOp, b: &GradedAlgebra) -> LinOp {
    let m = b.dim();
    let n = d.rows();
    let mut op = LinOp::zero(n * m, d.degree());
    for r in 0..n {
        for c in 0..n {
            let v = d.get(r, c);
            if v.is_zero() {
                continue;
            }
            for j in 0..m {
                op.set(r * m + j, c * m + j, v.clone());
            }
        }
    }
    op
}

/// `1 ⊗ D` on `A ⊗ B`, with the Koszul sign `(-1)^{|D||a|}`.
pub fn tensor_right(a: &GradedAlgebra, d: &LinOp) -> LinOp {
    let n = a.dim();
    let m = d.rows();
    let mut op = LinOp::zero(n * m, d.degree());
    for i in 0..n {
        let s = Rational::from_int(koszul(d.degree(), a.degree(i)));
        for r in 0..m {
            for c in 0..m {
                let v = d.get(r, c);
                if !v.is_zero() {
                    op.set(i * m + r, i * m + c, &s * v);
                }
            }
        }
    }
    op
}

fn entry(name: &str, description: &str, algebra: GradedAlgebra, mut operators: Vec<(String, LinOp)>) -> CatalogEntry {
    let dim = algebra.dim();
    operators.insert(0, ("zero".to_string(), LinOp::zero(dim, 0)));
    operators.insert(1, ("identity".to_string(), LinOp::identity(dim)));
    for (op_name, op) in &operators {
        op.check_homogeneous(algebra.space(), algebra.space())
            .unwrap_or_else(|e| panic!("catalog operator {name}/{op_name}: {e}"));
    }
    CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        algebra,
        operators,
    }
}

fn trunc_poly_entry(k: usize) -> CatalogEntry {
    let mut ops = Vec::new();
    for m in 1..k.min(5) {
        let name = match m {
            1 => "d_dx".to_string(),
            _ => format!("d{m}_dx{m}"),
        };
        ops.push((name, poly_derivative(k, m, 0)));
    }
    if k >= 2 {
        ops.push(("x_d_dx".to_string(), poly_weighted_derivative(k, 1, 1)));
    }
    if k >= 3 {
        ops.push(("x_d2_dx2".to_string(), poly_weighted_derivative(k, 1, 2)));
        ops.push(("x2_d2_dx2".to_string(), poly_weighted_derivative(k, 2, 2)));
    }
    if k >= 4 {
        ops.push(("x3_d3_dx3".to_string(), poly_weighted_derivative(k, 3, 3)));
    }
    if k >= 5 {
        // x^3 -> x^(k-1), order exactly 3
        ops.push((
            "rank_one".to_string(),
            LinOp::from_entries(k, k, 0, &[(k - 1, 3, Rational::ONE)]),
        ));
    }
    entry(
        &format!("trunc_poly_{k}"),
        &format!("C[x]/(x^{k}), x in degree 0"),
        trunc_poly(k),
        ops,
    )
}

fn exterior_entry(m: usize) -> CatalogEntry {
    let mut ops = Vec::new();
    for i in 0..m {
        ops.push((format!("d_theta{}", i + 1), exterior_derivative(m, i, 1)));
    }
    let euler = (0..m).fold(LinOp::zero(1 << m, 0), |acc, i| {
        let theta_i = exterior_generator(m, i);
        acc.add(&theta_i.compose(&exterior_derivative(m, i, 1)).with_degree(0))
    });
    ops.push(("euler".to_string(), euler));
    if m >= 2 {
        ops.push((
            "bv_laplacian".to_string(),
            exterior_derivative(m, 0, 1).compose(&exterior_derivative(m, 1, 1)),
        ));
    }
    if m >= 3 {
        ops.push((
            "d_theta123".to_string(),
            exterior_derivative(m, 0, 1)
                .compose(&exterior_derivative(m, 1, 1))
                .compose(&exterior_derivative(m, 2, 1)),
        ));
    }
    let names: Vec<String> = (1..=m).map(|i| format!("θ{i}")).collect();
    entry(
        &format!("exterior_{m}"),
        &format!("Λ({}), generators in degree 1", names.join(",")),
        exterior(m),
        ops,
    )
}

/// Left multiplication by θ_i on the exterior algebra.
fn exterior_generator(m: usize, i: usize) -> LinOp {
    let dim = 1usize << m;
    let mut op = LinOp::zero(dim, 1);
    for s in 0..dim {
        if s >> i & 1 == 0 {
            op.set(s | 1 << i, s, Rational::sign(exterior_inversions(1 << i, s)));
        }
    }
    op
}

fn dual_x_odd_theta_entry() -> CatalogEntry {
    // basis (x^a ⊗ θ^b) -> 2a + b : {1, θ, x, xθ}, degrees {0, -1, 0, -1}
    let poly = trunc_poly(2);
    let ext = exterior_graded(1, -1);
    let alg = poly.tensor(&ext);
    let d_dx = tensor_left(&poly_derivative(2, 1, 0), &ext);
    let d_dtheta = tensor_right(&poly, &exterior_derivative(1, 0, -1));
    let theta = tensor_right(&poly, &exterior_generator(1, 0).with_degree(-1));
    let ops = vec![
        ("d_dx".to_string(), d_dx.clone()),
        ("d_dtheta".to_string(), d_dtheta.clone()),
        ("theta_d_dx".to_string(), theta.compose(&d_dx)),
        ("bv_laplacian".to_string(), d_dtheta.compose(&d_dx)),
    ];
    entry(
        "dual_x_odd_theta",
        "C[x]/(x^2) ⊗ Λ(θ), θ in degree -1",
        alg,
        ops,
    )
}

fn exterior_2_trunc_poly_2_entry() -> CatalogEntry {
    // basis (θ_S ⊗ x^a) -> 2S + a
    let ext = exterior(2);
    let poly = trunc_poly(2);
    let alg = ext.tensor(&poly);
    let d_dx = tensor_right(&ext, &poly_derivative(2, 1, 0));
    let d1 = tensor_left(&exterior_derivative(2, 0, 1), &poly);
    let d2 = tensor_left(&exterior_derivative(2, 1, 1), &poly);
    let lap = d1.compose(&d2);
    let ops = vec![
        ("d_dx".to_string(), d_dx.clone()),
        ("d_theta1".to_string(), d1.clone()),
        ("d_theta2".to_string(), d2),
        ("bv_laplacian".to_string(), lap.clone()),
        ("d_theta1_d_dx".to_string(), d1.compose(&d_dx)),
        ("bv_laplacian_d_dx".to_string(), lap.compose(&d_dx)),
    ];
    entry(
        "exterior_2_trunc_poly_2",
        "Λ(θ1,θ2) ⊗ C[x]/(x^2), θ in degree 1",
        alg,
        ops,
    )
}

fn odd_dual_numbers_entry() -> CatalogEntry {
    let ops = vec![("d_deps".to_string(), exterior_derivative(1, 0, -1))];
    entry("odd_dual_numbers", "C[ε]/(ε^2), ε in degree -1", exterior_graded(1, -1), ops)
}

fn square_zero_odd_entry() -> CatalogEntry {
    let alg = square_zero(&[1, 1]);
    let ops = vec![
        (
            "swap_odd".to_string(),
            LinOp::from_entries(3, 3, 0, &[(1, 2, Rational::ONE), (2, 1, Rational::ONE)]),
        ),
        (
            "unit_to_odd".to_string(),
            LinOp::from_entries(3, 3, 1, &[(1, 0, Rational::ONE)]),
        ),
        (
            "odd_to_unit".to_string(),
            LinOp::from_entries(3, 3, -1, &[(0, 1, Rational::ONE)]),
        ),
    ];
    entry("square_zero_odd_2", "C ⊕ span(θ1, θ2), θ in degree 1, θ_i θ_j = 0", alg, ops)
}

fn trunc_poly_even_entry() -> CatalogEntry {
    let ops = vec![
        ("d_dx".to_string(), poly_derivative(3, 1, 2)),
        ("d2_dx2".to_string(), poly_derivative(3, 2, 2)),
    ];
    entry("trunc_poly_even_3", "C[x]/(x^3), x in degree 2", trunc_poly_graded(3, 2), ops)
}

fn trunc_poly_3_odd_ext_entry() -> CatalogEntry {
    let one = Rational::ONE;
    let ops = vec![
        ("d_dx".to_string(), {
            let mut d = LinOp::zero(4, 0);
            d.set(0, 1, one.clone());
            d.set(1, 2, Rational::from_int(2));
            d
        }),
        (
            "x2_to_theta".to_string(),
            LinOp::from_entries(4, 4, -1, &[(3, 2, one.clone())]),
        ),
        ("theta_to_x".to_string(), LinOp::from_entries(4, 4, 1, &[(1, 3, one.clone())])),
        ("theta_to_unit".to_string(), LinOp::from_entries(4, 4, 1, &[(0, 3, one)])),
    ];
    entry(
        "trunc_poly_3_odd_ext",
        "C[x]/(x^3) ⊕ Cθ, θ in degree -1, xθ = θθ = 0",
        trunc_poly_3_odd_ext(),
        ops,
    )
}

fn acyclic_summand_entry() -> CatalogEntry {
    let ops = vec![(
        "d1".to_string(),
        LinOp::from_entries(4, 4, -1, &[(3, 2, Rational::ONE)]),
    )];
    entry(
        "acyclic_summand",
        "C[x]/(x^2) ⊕ span(u, v), D1 u = v, unit acts on u, v; x u = x v = 0",
        acyclic_summand(),
        ops,
    )
}

/// All catalog algebras, in a fixed order.
pub fn all() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=8).map(trunc_poly_entry).collect();
    out.extend((1..=3).map(exterior_entry));
    out.push(odd_dual_numbers_entry());
    out.push(dual_x_odd_theta_entry());
    out.push(exterior_2_trunc_poly_2_entry());
    out.push(square_zero_odd_entry());
    out.push(trunc_poly_even_entry());
    out.push(trunc_poly_3_odd_ext_entry());
    out.push(acyclic_summand_entry());
    out
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    all().into_iter().find(|e| e.name == name)
}
