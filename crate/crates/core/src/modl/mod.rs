//! Finite subgroups of GL₂(F_{l^k}): closure, the adjoint action on trace-zero
//! matrices, H⁰ and H¹ of ad⁰, the enormous-image test, decomposed
//! genericity and the scalar-element condition.

mod fq;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{finite_extension, is_prime_u64, Elem, Field, FieldKind};
use crate::matrix::{Matrix, Subspace};
use crate::roots;

use fq::Fq;

pub const DEFAULT_CAP: usize = 200_000;
pub const DEFAULT_H1_CAP: usize = 2000;
/// Largest total degree [F' : F_l] of a splitting extension.
pub const MAX_SPLITTING_DEGREE: usize = 12;

/// Row-major coded 2×2 matrix.
type Code = [u64; 4];

const IDENTITY: Code = [1, 0, 0, 1];

/// A finitely generated subgroup of GL₂(F_{l^k}) with an enumeration cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatGroup {
    field: Field,
    generators: Vec<Matrix>,
    cap: usize,
}

impl MatGroup {
    pub fn new(field: &Field, generators: Vec<Matrix>, cap: usize) -> Result<MatGroup> {
        let l = check_field(field)?;
        let mut problems = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != 2 || g.cols() != 2 {
                problems.push(format!("generator {i} is {}×{}, expected 2×2", g.rows(), g.cols()));
            } else if g.field() != field {
                problems.push(format!("generator {i} has entries outside F_{l}^k"));
            } else if !g.is_invertible() {
                problems.push(format!("generator {i} is singular"));
            }
        }
        if cap == 0 {
            problems.push("cap must be positive".into());
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        Ok(MatGroup { field: field.clone(), generators, cap })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn l(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn k(&self) -> usize {
        self.field.degree()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Conjugate every generator by `p`.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<MatGroup> {
        let generators = self.generators.iter().map(|g| g.conjugate_by(p)).collect::<Result<_>>()?;
        MatGroup::new(&self.field, generators, self.cap)
    }
}

fn check_field(field: &Field) -> Result<u32> {
    match field.kind() {
        FieldKind::Finite { l, .. } if *l >= 5 => Ok(*l),
        FieldKind::Finite { l, .. } => Err(Error::InvalidField(format!("l = {l}; the group engine needs l ≥ 5"))),
        _ => Err(Error::InvalidField("the group engine needs a finite field".into())),
    }
}

/// The enumerated closure of a [`MatGroup`].
#[derive(Clone, Debug)]
pub struct ClosedGroup {
    field: Field,
    fq: Arc<Fq>,
    generators: Vec<Code>,
    elements: Vec<Code>,
    index: HashMap<Code, usize>,
}

impl ClosedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Elements in enumeration order; the identity comes first.
    pub fn elements(&self) -> Vec<Matrix> {
        self.elements.iter().map(|c| self.matrix(c)).collect()
    }

    /// Distinct generators in the sorted order used by the enumeration.
    pub fn generators(&self) -> Vec<Matrix> {
        self.generators.iter().map(|c| self.matrix(c)).collect()
    }

    fn matrix(&self, c: &Code) -> Matrix {
        Matrix::new(&self.field, 2, 2, c.iter().map(|&x| self.fq.to_elem(x)).collect()).unwrap()
    }

    fn mul(&self, a: &Code, b: &Code) -> Code {
        mul2(&self.fq, a, b)
    }

    fn pow(&self, a: &Code, mut e: u64) -> Code {
        let (mut base, mut r) = (*a, IDENTITY);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    fn element_order(&self, a: &Code) -> u64 {
        let mut x = *a;
        let mut n = 1;
        while x != IDENTITY {
            x = self.mul(&x, a);
            n += 1;
        }
        n
    }

    fn product_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.mul(&self.elements[a], &self.elements[b])]
    }
}

fn mul2(fq: &Fq, a: &Code, b: &Code) -> Code {
    let dot = |x: u64, y: u64, z: u64, w: u64| fq.add(fq.mul(x, y), fq.mul(z, w));
    [
        dot(a[0], b[0], a[1], b[2]),
        dot(a[0], b[1], a[1], b[3]),
        dot(a[2], b[0], a[3], b[2]),
        dot(a[2], b[1], a[3], b[3]),
    ]
}

fn code_of(fq: &Fq, m: &Matrix) -> Code {
    [fq.code(m.get(0, 0)), fq.code(m.get(0, 1)), fq.code(m.get(1, 0)), fq.code(m.get(1, 1))]
}

/// Breadth-first closure: elements are appended in discovery order, each
/// dequeued element being multiplied on the right by the sorted generators.
pub fn close_group(g: &MatGroup) -> Result<ClosedGroup> {
    let fq = Arc::new(Fq::new(&g.field));
    let mut generators: Vec<Code> = g.generators.iter().map(|m| code_of(&fq, m)).collect();
    generators.sort_unstable();
    generators.dedup();
    let elements = bfs(&fq, &generators, g.cap)?;
    let index = elements.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    Ok(ClosedGroup { field: g.field.clone(), fq, generators, elements, index })
}

fn bfs(fq: &Fq, generators: &[Code], cap: usize) -> Result<Vec<Code>> {
    let mut elements = vec![IDENTITY];
    let mut seen: HashSet<Code> = HashSet::from([IDENTITY]);
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        for s in generators {
            let y = mul2(fq, &x, s);
            if seen.insert(y) {
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                elements.push(y);
            }
        }
        i += 1;
    }
    Ok(elements)
}

/// Matrix of X ↦ gXg⁻¹ on trace-zero matrices in the basis
/// e = [[0,1],[0,0]], h = [[1,0],[0,−1]], f = [[0,0],[1,0]].
pub fn ad0_action(g: &Matrix) -> Result<Matrix> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::ShapeMismatch("ad0_action needs a 2×2 matrix".into()));
    }
    let f = g.field();
    let ginv = g.inverse()?;
    let (o, z) = (f.one(), f.zero());
    let basis = [
        Matrix::from_rows(f, vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]])?,
        Matrix::from_rows(f, vec![vec![o.clone(), z.clone()], vec![z.clone(), f.neg(&o)]])?,
        Matrix::from_rows(f, vec![vec![z.clone(), z.clone()], vec![o, z]])?,
    ];
    let columns: Vec<Vec<Elem>> = basis
        .iter()
        .map(|x| {
            let y = g.mul(x).mul(&ginv);
            vec![y.get(0, 1).clone(), y.get(0, 0).clone(), y.get(1, 0).clone()]
        })
        .collect();
    Ok(Matrix::from_columns(f, 3, &columns))
}

/// ad⁰ on coded matrices, row-major 3×3.
fn ad0_code(fq: &Fq, g: &Code) -> [u64; 9] {
    let det = fq.sub(fq.mul(g[0], g[3]), fq.mul(g[1], g[2]));
    let di = fq.inv(det);
    let ginv = [fq.mul(g[3], di), fq.mul(fq.neg(g[1]), di), fq.mul(fq.neg(g[2]), di), fq.mul(g[0], di)];
    let m1 = fq.neg(1);
    let basis: [Code; 3] = [[0, 1, 0, 0], [1, 0, 0, m1], [0, 0, 1, 0]];
    let mut out = [0u64; 9];
    for (j, x) in basis.iter().enumerate() {
        let y = mul2(fq, &mul2(fq, g, x), &ginv);
        out[j] = y[1];
        out[3 + j] = y[0];
        out[6 + j] = y[2];
    }
    out
}

fn fixed_space<'a>(field: &Field, mats: impl Iterator<Item = &'a Matrix>) -> Subspace {
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for m in mats {
        rows.extend(m.sub(&Matrix::identity(field, 3)).to_rows());
    }
    if rows.is_empty() {
        return Subspace::whole(field, 3);
    }
    Subspace::kernel_of(&Matrix::from_rows(field, rows).unwrap())
}

/// Dimensions attached to the action of a closed group on ad⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    /// dim H⁰ from the generators.
    pub h0: usize,
    /// dim H⁰ from the fixed points of every element.
    pub h0_all_elements: usize,
    pub b1: usize,
    /// dim Z¹ from the cocycle equations over all pairs of elements.
    pub z1_all_pairs: usize,
    /// dim Z¹ from generator values subject to the Schreier relations.
    pub z1_relations: usize,
}

impl Cohomology {
    pub fn h1(&self) -> usize {
        self.z1_all_pairs - self.b1
    }

    pub fn h1_relations(&self) -> usize {
        self.z1_relations - self.b1
    }

    pub fn methods_agree(&self) -> bool {
        self.h0 == self.h0_all_elements && self.z1_all_pairs == self.z1_relations
    }
}

/// H⁰ and H¹ of ad⁰, each computed two ways.
pub fn cohomology_ad0(g: &ClosedGroup, h1_cap: usize) -> Result<Cohomology> {
    if g.order() > h1_cap {
        return Err(Error::GroupTooLarge(h1_cap));
    }
    let f = &g.field;
    let gen_ad: Vec<Matrix> = g.generators().iter().map(ad0_action).collect::<Result<_>>()?;
    let h0 = fixed_space(f, gen_ad.iter()).dim();
    let all_ad: Vec<Matrix> = g.elements().iter().map(ad0_action).collect::<Result<_>>()?;
    let h0_all_elements = fixed_space(f, all_ad.iter()).dim();
    let b1 = 3 - h0_all_elements;
    let z1_all_pairs = z1_all_pairs(g);
    let z1_relations = z1_relations(g, &gen_ad)?;
    if z1_all_pairs < b1 || z1_relations < b1 {
        return Err(Error::Invariant("coboundaries are not all cocycles".into()));
    }
    Ok(Cohomology { h0, h0_all_elements, b1, z1_all_pairs, z1_relations })
}

/// (dim H⁰, dim H¹) with the default H¹ cap.
pub fn h0_h1_ad0(g: &ClosedGroup) -> Result<(usize, usize)> {
    let c = cohomology_ad0(g, DEFAULT_H1_CAP)?;
    Ok((c.h0, c.h1()))
}

/// Incremental sparse echelon form. Rows are sorted by decreasing column, so
/// the leading (smallest) column sits at the end; stored rows are normalised to
/// leading coefficient 1. A stored row is re-reduced against newer pivots
/// lazily, the first time it is used after the pivot set has grown.
struct Echelon<'a> {
    fq: &'a Fq,
    /// (rank when last reduced, row)
    pivots: Vec<Option<(usize, Vec<(u32, u64)>)>>,
    rank: usize,
}

impl<'a> Echelon<'a> {
    fn new(fq: &'a Fq, cols: usize) -> Self {
        Echelon { fq, pivots: vec![None; cols], rank: 0 }
    }

    /// row − v·p, both sorted by decreasing column.
    fn sub_scaled(fq: &Fq, row: &[(u32, u64)], v: u64, p: &[(u32, u64)]) -> Vec<(u32, u64)> {
        let mut out = Vec::with_capacity(row.len() + p.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < p.len() {
            let take_row = j == p.len() || (i < row.len() && row[i].0 > p[j].0);
            let take_p = i == row.len() || (j < p.len() && p[j].0 > row[i].0);
            if take_row {
                out.push(row[i]);
                i += 1;
            } else if take_p {
                out.push((p[j].0, fq.neg(fq.mul(v, p[j].1))));
                j += 1;
            } else {
                let x = fq.sub(row[i].1, fq.mul(v, p[j].1));
                if x != 0 {
                    out.push((row[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Entries of `row` left after eliminating every pivot column, in increasing column order.
    fn reduce(&mut self, mut row: Vec<(u32, u64)>) -> Vec<(u32, u64)> {
        let mut kept = Vec::new();
        while let Some(&(c, v)) = row.last() {
            let c = c as usize;
            if self.pivots[c].is_some() {
                self.refresh(c);
                let p = self.pivots[c].take().unwrap();
                row = Self::sub_scaled(self.fq, &row, v, &p.1);
                self.pivots[c] = Some(p);
            } else {
                kept.push(row.pop().unwrap());
            }
        }
        kept
    }

    fn refresh(&mut self, c: usize) {
        let (stamp, mut row) = self.pivots[c].take().unwrap();
        if stamp != self.rank {
            let lead = row.pop().unwrap();
            let mut tail = self.reduce(row);
            tail.reverse();
            tail.push(lead);
            row = tail;
        }
        self.pivots[c] = Some((self.rank, row));
    }

    fn insert(&mut self, row: Vec<(u32, u64)>) {
        let kept = self.reduce(row);
        let Some(&(lead, v)) = kept.first() else { return };
        let inv = self.fq.inv(v);
        let stored: Vec<(u32, u64)> = kept.iter().rev().map(|&(c, x)| (c, self.fq.mul(x, inv))).collect();
        self.rank += 1;
        self.pivots[lead as usize] = Some((self.rank, stored));
    }
}

/// dim Z¹ from f(gh) = f(g) + g·f(h) imposed for every pair (g, h).
fn z1_all_pairs(g: &ClosedGroup) -> usize {
    let fq = &*g.fq;
    let n = g.order();
    let ad: Vec<[u64; 9]> = g.elements.iter().map(|x| ad0_code(fq, x)).collect();
    // later elements get smaller columns and so become pivots first
    let col = |i: usize, c: usize| (3 * (n - 1 - i) + c) as u32;
    let mut ech = Echelon::new(fq, 3 * n);
    let mut entries: Vec<(u32, u64)> = Vec::with_capacity(8);
    for a in 0..n {
        for b in 0..n {
            let ab = g.product_index(a, b);
            for c in 0..3 {
                entries.clear();
                entries.push((col(ab, c), 1));
                entries.push((col(a, c), fq.neg(1)));
                for j in 0..3 {
                    let x = ad[a][3 * c + j];
                    if x != 0 {
                        entries.push((col(b, j), fq.neg(x)));
                    }
                }
                entries.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                let mut row: Vec<(u32, u64)> = Vec::with_capacity(entries.len());
                for &(cc, v) in entries.iter() {
                    match row.last_mut() {
                        Some(last) if last.0 == cc => last.1 = fq.add(last.1, v),
                        _ => row.push((cc, v)),
                    }
                }
                row.retain(|e| e.1 != 0);
                ech.insert(row);
            }
        }
    }
    3 * n - ech.rank
}

/// dim Z¹ from the values on generators: a spanning tree of the right Cayley
/// graph propagates f(x·s) = f(x) + x·f(s), and every non-tree edge imposes
/// that relation as a linear condition on the generator values.
fn z1_relations(g: &ClosedGroup, gen_ad: &[Matrix]) -> Result<usize> {
    let f = &g.field;
    let m = g.generators.len();
    if m == 0 {
        return Ok(0);
    }
    let unknowns = 3 * m;
    let selector = |j: usize| {
        let mut e = Matrix::zeros(f, 3, unknowns);
        for c in 0..3 {
            e.set(c, 3 * j + c, f.one());
        }
        e
    };
    let selectors: Vec<Matrix> = (0..m).map(selector).collect();
    // f(x) as a 3 × 3m matrix in the generator values
    let mut value: Vec<Option<Matrix>> = vec![None; g.order()];
    let mut rho: Vec<Option<Matrix>> = vec![None; g.order()];
    value[0] = Some(Matrix::zeros(f, 3, unknowns));
    rho[0] = Some(Matrix::identity(f, 3));
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut relations: Vec<Vec<Elem>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let fx = value[x].clone().unwrap();
        let rx = rho[x].clone().unwrap();
        for j in 0..m {
            let y = g.index[&g.mul(&g.elements[x], &g.generators[j])];
            let candidate = fx.add(&rx.mul(&selectors[j]));
            match &value[y] {
                None => {
                    value[y] = Some(candidate);
                    rho[y] = Some(rx.mul(&gen_ad[j]));
                    queue.push_back(y);
                }
                Some(fy) => {
                    let diff = fy.sub(&candidate);
                    if !diff.is_zero() {
                        relations.extend(diff.to_rows());
                    }
                }
            }
        }
        if relations.len() > 4 * unknowns {
            let reduced = Subspace::span(f, unknowns, &relations);
            relations = reduced.basis().to_vec();
        }
    }
    if relations.is_empty() {
        return Ok(unknowns);
    }
    Ok(unknowns - Subspace::span(f, unknowns, &relations).dim())
}

/// Outcome of the enormous-image test with witnesses for failing conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnormousReport {
    pub order: usize,
    /// F' ⊇ F_{l^k} over which eigenvectors and submodules are computed.
    pub splitting_field: Field,
    pub splitting_degree: usize,
    pub absolutely_irreducible: bool,
    /// A common eigenvector of the generators over F', if any.
    pub invariant_line: Option<Vec<Elem>>,
    pub commutant_dim: usize,
    pub no_l_power_quotient: bool,
    /// |H| / |⟨l′-parts⟩|.
    pub l_power_quotient_order: usize,
    pub h0_zero: bool,
    pub fixed_vectors: Vec<Vec<Elem>>,
    pub h1_zero: bool,
    pub cohomology: Cohomology,
    pub simple_submodule_condition: bool,
    pub simple_submodules: usize,
    /// Basis (over F') of a simple submodule with no suitable regular semisimple element.
    pub failing_submodule: Option<Vec<Vec<Elem>>>,
    pub enormous: bool,
}

pub fn is_enormous(g: &MatGroup) -> Result<EnormousReport> {
    is_enormous_with_cap(g, DEFAULT_H1_CAP)
}

pub fn is_enormous_with_cap(g: &MatGroup, h1_cap: usize) -> Result<EnormousReport> {
    let group = close_group(g)?;
    if group.order() > h1_cap {
        return Err(Error::GroupTooLarge(h1_cap));
    }
    let f = &group.field;
    let elements = group.elements();
    let gens = group.generators();
    let elem_ad: Vec<Matrix> = elements.iter().map(ad0_action).collect::<Result<_>>()?;
    let gen_ad: Vec<Matrix> = gens.iter().map(ad0_action).collect::<Result<_>>()?;

    // splitting extension for both the natural and the adjoint representation
    let mut e = 1usize;
    for m in spanning_set(f, &elements).iter().chain(spanning_set(f, &elem_ad).iter()) {
        e = e.lcm(&splitting_degree(m)?);
    }
    let total = g.k() * e;
    if total > MAX_SPLITTING_DEGREE {
        return Err(Error::SplittingFieldTooLarge(total));
    }
    let ext = finite_extension(f, e)?;
    let big = ext.field.clone();
    let lift = |m: &Matrix| m.map_field(&ext.embedding);

    // (a) absolute irreducibility
    let lines = common_eigenspaces(&big, 2, &gens.iter().map(lift).collect::<Vec<_>>())?;
    let invariant_line = lines.first().map(|s| s.basis()[0].clone());
    let commutant_dim = commutant_dim(f, &gens);
    let absolutely_irreducible = lines.is_empty() && commutant_dim == 1;

    // (b) l-power quotients
    let sub_order = l_prime_subgroup_order(&group);
    let l_power_quotient_order = group.order() / sub_order;
    let no_l_power_quotient = l_power_quotient_order == 1;

    // (c) cohomology
    let cohomology = cohomology_ad0(&group, h1_cap)?;
    let fixed = fixed_space(f, gen_ad.iter());
    let h0_zero = cohomology.h0 == 0;
    let h1_zero = cohomology.h1() == 0;

    // (d) simple submodules of ad⁰ over F'
    let big_ad: Vec<Matrix> = gen_ad.iter().map(lift).collect();
    let simple = simple_submodules(&big, &big_ad)?;
    let mut regular_fixed: Vec<Subspace> = Vec::new();
    for (h, a) in elements.iter().zip(&elem_ad) {
        if is_regular_semisimple(h) {
            regular_fixed.push(Subspace::kernel_of(&lift(a).sub(&Matrix::identity(&big, 3))));
        }
    }
    let failing = simple.iter().find(|w| !regular_fixed.iter().any(|fix| !w.intersect(fix).is_zero()));
    let simple_submodule_condition = failing.is_none();

    let enormous = absolutely_irreducible && no_l_power_quotient && h0_zero && h1_zero && simple_submodule_condition;
    Ok(EnormousReport {
        order: group.order(),
        splitting_field: big,
        splitting_degree: total,
        absolutely_irreducible,
        invariant_line,
        commutant_dim,
        no_l_power_quotient,
        l_power_quotient_order,
        h0_zero,
        fixed_vectors: fixed.basis().to_vec(),
        h1_zero,
        cohomology,
        simple_submodule_condition,
        simple_submodules: simple.len(),
        failing_submodule: failing.map(|w| w.basis().to_vec()),
        enormous,
    })
}

/// Elements of `mats` (in order) whose span is the span of all of them.
fn spanning_set(f: &Field, mats: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = mats.first() else { return Vec::new() };
    let size = first.rows() * first.cols();
    let mut span = Subspace::zero(f, size);
    let mut out = Vec::new();
    for m in mats {
        let v = m.entries().to_vec();
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(f, size, &[v]));
            out.push(m.clone());
            if span.dim() == size {
                break;
            }
        }
    }
    out
}

/// Degree of the smallest extension over which the characteristic polynomial
/// (of degree ≤ 3) splits.
fn splitting_degree(m: &Matrix) -> Result<usize> {
    let (_, rest) = roots::split_linear(&m.char_poly(), m.field())?;
    Ok(rest.degree().unwrap_or(0).max(1))
}

/// Nonzero spaces ∩ᵢ ker(Mᵢ − λᵢ) over all eigenvalue choices; their lines
/// are exactly the lines invariant under every Mᵢ.
fn common_eigenspaces(f: &Field, n: usize, mats: &[Matrix]) -> Result<Vec<Subspace>> {
    let mut spaces = vec![Subspace::whole(f, n)];
    for m in mats {
        let values = roots::roots(&m.char_poly(), f)?;
        let kernels: Vec<Subspace> =
            values.iter().map(|v| Subspace::kernel_of(&m.sub(&Matrix::scalar(f, n, v)))).collect();
        let mut next = Vec::new();
        for u in &spaces {
            for k in &kernels {
                let w = u.intersect(k);
                if !w.is_zero() {
                    next.push(w);
                }
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

/// dim of {X : XM = MX for every generator M}.
fn commutant_dim(f: &Field, gens: &[Matrix]) -> usize {
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for m in gens {
        let mut cols = Vec::new();
        for idx in 0..4 {
            let mut x = Matrix::zeros(f, 2, 2);
            x.set(idx / 2, idx % 2, f.one());
            cols.push(x.mul(m).sub(&m.mul(&x)).entries().to_vec());
        }
        rows.extend(Matrix::from_columns(f, 4, &cols).to_rows());
    }
    if rows.is_empty() {
        return 4;
    }
    Matrix::from_rows(f, rows).unwrap().kernel().len()
}

/// Order of the subgroup generated by the l′-parts of all elements.
fn l_prime_subgroup_order(g: &ClosedGroup) -> usize {
    let l = g.field.characteristic() as u64;
    let mut gens: Vec<Code> = Vec::new();
    let mut members: HashSet<Code> = HashSet::from([IDENTITY]);
    for x in &g.elements {
        let o = g.element_order(x);
        let mut lpart = 1u64;
        while o % (lpart * l) == 0 {
            lpart *= l;
        }
        let m = o / lpart;
        // e ≡ 1 mod m and e ≡ 0 mod lpart
        let e = if m == 1 { 0 } else { lpart * mod_inverse(lpart % m, m) };
        let y = g.pow(x, e);
        if !members.contains(&y) {
            gens.push(y);
            gens.sort_unstable();
            let sub = bfs(&g.fq, &gens, usize::MAX).expect("uncapped");
            members = sub.into_iter().collect();
        }
    }
    members.len()
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

fn is_regular_semisimple(h: &Matrix) -> bool {
    let f = h.field();
    let tr = h.trace();
    let disc = f.sub(&f.mul(&tr, &tr), &f.mul(&f.from_i64(4), &h.det()));
    !f.is_zero(&disc)
}

/// Simple submodules of ad⁰ over F'. A common eigenspace of dimension ≥ 2
/// stands for the family of its lines: the group acts on it by a character,
/// so all those lines behave alike.
fn simple_submodules(f: &Field, gen_ad: &[Matrix]) -> Result<Vec<Subspace>> {
    let lines = common_eigenspaces(f, 3, gen_ad)?;
    let transposed: Vec<Matrix> = gen_ad.iter().map(Matrix::transpose).collect();
    let dual = common_eigenspaces(f, 3, &transposed)?;
    let mut out = lines.clone();
    for w in dual.iter().filter(|w| w.dim() == 1) {
        let plane = Subspace::kernel_of(&Matrix::from_rows(f, vec![w.basis()[0].clone()])?);
        if lines.iter().all(|u| u.intersect(&plane).is_zero()) {
            out.push(plane);
        }
    }
    if lines.is_empty() && dual.is_empty() {
        out.push(Subspace::whole(f, 3));
    }
    Ok(out)
}

pub const RATIO_ONE: &str = "ratio = 1";
pub const RATIO_P: &str = "ratio = p";
pub const RATIO_P_INV: &str = "ratio = p⁻¹";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceFailure {
    pub index: usize,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedGenericReport {
    pub splits_completely: bool,
    pub failures: Vec<PlaceFailure>,
    pub decomposed_generic: bool,
}

/// Checks a certificate prime p against Frobenius eigenvalue pairs (α, β) in F_{l^k}.
pub fn is_decomposed_generic_at(
    p: u64,
    field: &Field,
    places: &[(Elem, Elem)],
    splits_completely: bool,
) -> Result<DecomposedGenericReport> {
    let l = check_field(field)? as u64;
    if p == l {
        return Err(Error::EqualCharacteristic(l));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not prime")));
    }
    let pe = field.from_i64((p % l) as i64);
    let pinv = field.inv(&pe)?;
    let mut failures = Vec::new();
    for (index, (alpha, beta)) in places.iter().enumerate() {
        if field.is_zero(alpha) || field.is_zero(beta) {
            return Err(Error::ZeroEigenvalue);
        }
        let ratio = field.div(alpha, beta)?;
        let reason = if field.is_one(&ratio) {
            Some(RATIO_ONE)
        } else if ratio == pe {
            Some(RATIO_P)
        } else if ratio == pinv {
            Some(RATIO_P_INV)
        } else {
            None
        };
        if let Some(reason) = reason {
            failures.push(PlaceFailure { index, reason });
        }
    }
    let decomposed_generic = splits_completely && failures.is_empty();
    Ok(DecomposedGenericReport { splits_completely, failures, decomposed_generic })
}

/// Index of the first pair (h, c) with h scalar and c ≠ 1, where c is the
/// mod-l cyclotomic character value in F_l.
pub fn scalar_outside_cyclotomic_witness(field: &Field, elements: &[(Matrix, Elem)]) -> Result<Option<usize>> {
    check_field(field)?;
    for (i, (h, c)) in elements.iter().enumerate() {
        if h.rows() != 2 || h.cols() != 2 || h.field() != field || !h.is_invertible() {
            return Err(Error::InvalidInput(format!("element {i} is not an invertible 2×2 matrix over the field")));
        }
        if field.is_zero(c) || field.as_prime_residue(c).is_none() {
            return Err(Error::InvalidInput(format!("cyclotomic value {i} must be a nonzero element of F_l")));
        }
    }
    Ok(elements.iter().position(|(h, c)| h.scalar_value().is_some() && !field.is_one(c)))
}

pub fn exists_scalar_outside_cyclotomic(field: &Field, elements: &[(Matrix, Elem)]) -> Result<bool> {
    Ok(scalar_outside_cyclotomic_witness(field, elements)?.is_some())
}

#[cfg(test)]
mod tests;
