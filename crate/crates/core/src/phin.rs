//! τ-decomposed (φ,N)-modules over an unramified base, filtrations,
//! Hodge–Tate weights, weak admissibility, monodromy modules and the L-invariant.

use num_bigint::BigInt;

use crate::decomp::eigen_split;
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, rational_valuation, Elem, Field, FieldKind, Rational};
use crate::matrix::{Matrix, Subspace};

/// Semilinear (φ,N)-data: `phi[i]` maps D_{τ_i} to D_{τ_{i+1 mod f}} and `n[i]` acts on D_{τ_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiNModule {
    l: u64,
    field: Field,
    phi: Vec<Matrix>,
    n: Vec<Matrix>,
}

impl PhiNModule {
    /// Validate and build. Every violated invariant is reported.
    pub fn new(l: u64, field: &Field, phi: Vec<Matrix>, n: Vec<Matrix>) -> Result<PhiNModule> {
        let mut problems = Vec::new();
        if !is_prime_u64(l) {
            problems.push(format!("l = {l} is not prime"));
        }
        if field.characteristic() != 0 {
            problems.push("coefficient field must have characteristic 0".to_string());
        }
        if phi.is_empty() {
            problems.push("at least one Frobenius component is required".to_string());
        }
        if phi.len() != n.len() {
            problems.push(format!("{} Frobenius components but {} monodromy components", phi.len(), n.len()));
        }
        let d = phi.first().map_or(0, |m| m.rows());
        for (name, mats) in [("phi", &phi), ("n", &n)] {
            for (i, m) in mats.iter().enumerate() {
                if m.rows() != d || m.cols() != d {
                    problems.push(format!("{name}[{i}] is {}×{}, expected {d}×{d}", m.rows(), m.cols()));
                }
                if m.field() != field {
                    problems.push(format!("{name}[{i}] has entries outside the coefficient field"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        let f = phi.len();
        let lq = field.from_i64(l as i64);
        for i in 0..f {
            if !phi[i].is_invertible() {
                problems.push(format!("phi[{i}] is not invertible"));
            }
            if !n[i].is_nilpotent() {
                problems.push(format!("n[{i}] is not nilpotent"));
            }
            let j = (i + 1) % f;
            if n[j].mul(&phi[i]) != phi[i].mul(&n[i]).scale(&lq) {
                problems.push(format!("commutation n[{j}]·phi[{i}] = l·phi[{i}]·n[{i}] fails at index {i}"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        Ok(PhiNModule { l, field: field.clone(), phi, n })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Degree of the unramified base over Q_l.
    pub fn f(&self) -> usize {
        self.phi.len()
    }

    pub fn rank(&self) -> usize {
        self.phi[0].rows()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn phi(&self) -> &[Matrix] {
        &self.phi
    }

    pub fn n(&self) -> &[Matrix] {
        &self.n
    }

    /// The f-fold composite φ^f restricted to D_τ: Phi[τ−1]···Phi[τ+1]·Phi[τ].
    pub fn frobenius_at(&self, tau: usize) -> Result<Matrix> {
        let f = self.f();
        if tau >= f {
            return Err(Error::IndexOutOfRange { index: tau, len: f });
        }
        let mut acc = Matrix::identity(&self.field, self.rank());
        for k in 0..f {
            acc = self.phi[(tau + k) % f].mul(&acc);
        }
        Ok(acc)
    }

    /// Transport the structure along a change of basis P_i on each D_{τ_i}:
    /// Phi[i] ↦ P_{i+1} Phi[i] P_i⁻¹ and N[i] ↦ P_i N[i] P_i⁻¹.
    pub fn change_basis(&self, p: &[Matrix]) -> Result<PhiNModule> {
        let f = self.f();
        if p.len() != f {
            return Err(Error::ShapeMismatch(format!("{} basis changes for f = {f}", p.len())));
        }
        let inv: Vec<Matrix> = p.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        let phi = (0..f).map(|i| p[(i + 1) % f].mul(&self.phi[i]).mul(&inv[i])).collect();
        let n = (0..f).map(|i| p[i].mul(&self.n[i]).mul(&inv[i])).collect();
        PhiNModule::new(self.l, &self.field, phi, n)
    }
}

/// One recorded step of a decreasing filtration: Fil^jump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilStep {
    pub jump: i64,
    pub space: Subspace,
}

/// A decreasing, exhaustive and separated filtration on a d-dimensional space,
/// recorded by its jumps in increasing order with strictly decreasing dimensions
/// running from d down to 0. Fil^i is the recorded step with the smallest jump ≥ i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<FilStep>,
}

impl Filtration {
    pub fn new(d: usize, steps: Vec<FilStep>) -> std::result::Result<Filtration, String> {
        if steps.len() < 2 {
            return Err("a filtration needs at least two recorded steps (full space and zero)".into());
        }
        if steps[0].space.dim() != d {
            return Err(format!("first step has dimension {} instead of {d}", steps[0].space.dim()));
        }
        if !steps.last().unwrap().space.is_zero() {
            return Err("last step must be the zero space".into());
        }
        for w in steps.windows(2) {
            if w[1].jump <= w[0].jump {
                return Err(format!("jumps must increase strictly ({} then {})", w[0].jump, w[1].jump));
            }
            if w[1].space.dim() >= w[0].space.dim() {
                return Err(format!("dimensions must decrease strictly (at jump {})", w[1].jump));
            }
            if !w[1].space.is_subspace_of(&w[0].space) {
                return Err(format!("Fil^{} is not contained in Fil^{}", w[1].jump, w[0].jump));
            }
        }
        if steps.iter().any(|s| s.space.ambient() != d) {
            return Err(format!("filtration vectors must have length {d}"));
        }
        Ok(Filtration { steps })
    }

    /// Filtration with the single jump `j`: Fil^j = D and Fil^{j+1} = 0.
    pub fn trivial(field: &Field, d: usize, j: i64) -> Filtration {
        Filtration {
            steps: vec![
                FilStep { jump: j, space: Subspace::whole(field, d) },
                FilStep { jump: j + 1, space: Subspace::zero(field, d) },
            ],
        }
    }

    pub fn steps(&self) -> &[FilStep] {
        &self.steps
    }

    /// Fil^i.
    pub fn at(&self, i: i64) -> &Subspace {
        let last = self.steps.last().unwrap();
        self.steps.iter().find(|s| s.jump >= i).map_or(&last.space, |s| &s.space)
    }

    /// Jumps with multiplicity dim Fil^j − dim Fil^{j+1}, increasing.
    pub fn weights(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for w in self.steps.windows(2) {
            out.extend(std::iter::repeat(w[0].jump).take(w[0].space.dim() - w[1].space.dim()));
        }
        out
    }

    /// The largest i with `line` ⊆ Fil^i.
    pub fn weight_of_line(&self, line: &Subspace) -> i64 {
        self.steps.iter().rev().find(|s| line.is_subspace_of(&s.space)).map(|s| s.jump).unwrap_or(i64::MIN)
    }

    /// Image of the filtration under an invertible map.
    pub fn transport(&self, p: &Matrix) -> Filtration {
        Filtration {
            steps: self.steps.iter().map(|s| FilStep { jump: s.jump, space: s.space.image(p) }).collect(),
        }
    }
}

/// Valuation data for the coefficient field used by weak admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// The l-adic valuation of Q.
    LAdic,
    /// For Q(θ): the supplied value v(θ). Valuations are computed as
    /// v(a) = v_l(N(a))/[E:Q], which is the valuation when l has a single
    /// prime above it; the supplied v(θ) must agree with that formula.
    Generator(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredPhiNModule {
    module: PhiNModule,
    filtration: Vec<Filtration>,
    valuation: Option<Valuation>,
}

impl FilteredPhiNModule {
    pub fn new(module: PhiNModule, filtration: Vec<Filtration>, valuation: Option<Valuation>) -> Result<Self> {
        let mut problems = Vec::new();
        if filtration.len() != module.f() {
            problems.push(format!("{} filtrations for f = {}", filtration.len(), module.f()));
        }
        for (i, fil) in filtration.iter().enumerate() {
            if fil.steps[0].space.ambient() != module.rank() {
                problems.push(format!("filtration {i} lives in dimension {}", fil.steps[0].space.ambient()));
            }
            if fil.steps[0].space.field() != module.field() {
                problems.push(format!("filtration {i} has coordinates outside the coefficient field"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        Ok(FilteredPhiNModule { module, filtration, valuation })
    }

    pub fn module(&self) -> &PhiNModule {
        &self.module
    }

    pub fn filtration(&self) -> &[Filtration] {
        &self.filtration
    }

    pub fn valuation(&self) -> Option<&Valuation> {
        self.valuation.as_ref()
    }

    /// Change of basis on every component, with filtrations transported.
    pub fn change_basis(&self, p: &[Matrix]) -> Result<FilteredPhiNModule> {
        let module = self.module.change_basis(p)?;
        let filtration = self.filtration.iter().zip(p).map(|(fil, m)| fil.transport(m)).collect();
        Ok(FilteredPhiNModule { module, filtration, valuation: self.valuation.clone() })
    }
}

pub fn hodge_tate_weights(d: &FilteredPhiNModule, tau: usize) -> Result<Vec<i64>> {
    let fil = d.filtration.get(tau).ok_or(Error::IndexOutOfRange { index: tau, len: d.filtration.len() })?;
    Ok(fil.weights())
}

/// Hodge–Tate weights {0, 1} at every embedding.
pub fn is_weight_zero_type(d: &FilteredPhiNModule) -> Result<bool> {
    let rank = d.module.rank();
    if rank != 2 {
        return Err(Error::WrongRank { expected: 2, got: rank });
    }
    Ok(d.filtration.iter().all(|fil| fil.weights() == [0, 1]))
}

/// A rank-one (φ,N)-stable sub-object examined by weak admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubObject {
    /// Spanning vector of the line in D_{τ_0}.
    pub line: Vec<Elem>,
    pub t_n: Rational,
    pub t_h: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakAdmissibilityReport {
    pub t_n: Rational,
    pub t_h: Rational,
    pub sub_objects: Vec<SubObject>,
    pub weakly_admissible: bool,
}

fn valuation_of(d: &FilteredPhiNModule, a: &Elem) -> Result<Rational> {
    let f = d.module.field();
    let l = d.module.l();
    let v_norm = |x: &Elem| -> Result<Rational> {
        let nm = f.norm_to_q(x).ok_or(Error::NoValuationData)?;
        let v = rational_valuation(&nm, l).ok_or(Error::ZeroEigenvalue)?;
        Ok(Rational::new(BigInt::from(v), BigInt::from(f.degree())))
    };
    match (f.kind(), d.valuation.as_ref()) {
        (FieldKind::Rationals, None | Some(Valuation::LAdic)) => v_norm(a),
        (FieldKind::NumberField { .. }, Some(Valuation::Generator(vt))) => {
            let implied = v_norm(&f.generator())?;
            if implied != *vt {
                return Err(Error::InconsistentValuation(format!(
                    "v(θ) = {vt} supplied but v_l(N(θ))/[E:Q] = {implied}; only fields with one prime above l are supported"
                )));
            }
            v_norm(a)
        }
        (FieldKind::NumberField { .. }, _) => Err(Error::NoValuationData),
        (FieldKind::Rationals, Some(Valuation::Generator(_))) => {
            Err(Error::InconsistentValuation("generator valuation supplied for Q".into()))
        }
        (FieldKind::Finite { .. }, _) => Err(Error::InvalidField("coefficients must have characteristic 0".into())),
    }
}

/// Weak admissibility for rank ≤ 2 with explicit valuation data.
pub fn is_weakly_admissible(d: &FilteredPhiNModule) -> Result<WeakAdmissibilityReport> {
    let m = &d.module;
    let rank = m.rank();
    if rank > 2 {
        return Err(Error::UnsupportedRank(rank));
    }
    let field = m.field();
    let fr = Rational::from_integer(BigInt::from(m.f()));
    let f0 = m.frobenius_at(0)?;
    let t_n = valuation_of(d, &f0.det())? / &fr;
    let t_h = Rational::from_integer(BigInt::from(d.filtration.iter().flat_map(|fil| fil.weights()).sum::<i64>())) / &fr;

    let mut sub_objects = Vec::new();
    if rank == 2 {
        for line in candidate_lines(d, &f0)? {
            let v = line.basis()[0].clone();
            let image = f0.mul_vec(&v);
            let pivot = v.iter().position(|x| !field.is_zero(x)).unwrap();
            let eigenvalue = field.div(&image[pivot], &v[pivot])?;
            let sub_t_n = valuation_of(d, &eigenvalue)? / &fr;
            let mut total = 0i64;
            let mut current = line.clone();
            for (i, fil) in d.filtration.iter().enumerate() {
                total += fil.weight_of_line(&current);
                current = current.image(&m.phi()[i]);
            }
            let sub_t_h = Rational::from_integer(BigInt::from(total)) / &fr;
            sub_objects.push(SubObject { line: v, t_n: sub_t_n, t_h: sub_t_h });
        }
    }
    let weakly_admissible = t_n == t_h && sub_objects.iter().all(SubObject::passes);
    Ok(WeakAdmissibilityReport { t_n, t_h, sub_objects, weakly_admissible })
}

/// Lines in D_{τ_0} spanning rank-one stable sub-objects, or, when there are
/// infinitely many, a finite set on which the maximum of t_H is attained.
fn candidate_lines(d: &FilteredPhiNModule, f0: &Matrix) -> Result<Vec<Subspace>> {
    let m = &d.module;
    let field = m.field();
    let ker_n = Subspace::kernel_of(&m.n()[0]);
    let mut lines: Vec<Subspace> = Vec::new();
    let push = |lines: &mut Vec<Subspace>, s: Subspace| {
        if !lines.contains(&s) {
            lines.push(s);
        }
    };
    if ker_n.dim() == 2 && f0.scalar_value().is_some() {
        // every line is stable; t_H is maximal on pull-backs of one-dimensional
        // filtration steps or, failing those, on a generic line
        let mut transport = Matrix::identity(field, 2);
        for (i, fil) in d.filtration.iter().enumerate() {
            let back = transport.inverse()?;
            for step in fil.steps() {
                if step.space.dim() == 1 {
                    push(&mut lines, step.space.image(&back));
                }
            }
            transport = m.phi()[i].mul(&transport);
        }
        let mut generic = None;
        for a in 0i64.. {
            let cand = Subspace::span(field, 2, &[vec![field.one(), field.from_i64(a)]]);
            if !lines.contains(&cand) {
                generic = Some(cand);
                break;
            }
        }
        push(&mut lines, generic.unwrap());
        return Ok(lines);
    }
    let spaces = match eigen_split(f0) {
        Ok(es) => es,
        // no eigenvalue in E means no E-rational stable line
        Err(Error::NonSplitCharPoly { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    for e in spaces {
        let eig = Subspace::kernel_of(&f0.sub(&Matrix::scalar(field, 2, &e.value)));
        let inside = eig.intersect(&ker_n);
        match inside.dim() {
            0 => {}
            1 => push(&mut lines, inside),
            _ => unreachable!("scalar Frobenius on the kernel is handled above"),
        }
    }
    Ok(lines)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    pub n_nonzero: bool,
    /// The jump at which the filtration becomes one-dimensional.
    pub j0: Option<i64>,
    /// N(D) differs from Fil^{j₀}; `None` when j₀ does not exist.
    pub image_differs: Option<bool>,
    pub is_monodromy_module: bool,
}

pub fn is_monodromy_module(d: &FilteredPhiNModule) -> Result<MonodromyReport> {
    let m = &d.module;
    if m.f() != 1 {
        return Err(Error::UnsupportedBase(m.f()));
    }
    if m.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, got: m.rank() });
    }
    let n = &m.n()[0];
    let n_nonzero = !n.is_zero();
    let fil = &d.filtration[0];
    let j0_step = fil.steps().iter().find(|s| s.space.dim() == 1);
    let j0 = j0_step.map(|s| s.jump);
    let image = Subspace::span(m.field(), 2, &n.columns());
    let image_differs = j0_step.map(|s| s.space != image);
    let is_monodromy_module = n_nonzero && image_differs == Some(true);
    Ok(MonodromyReport { n_nonzero, j0, image_differs, is_monodromy_module })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInvariantResult {
    pub value: Elem,
    /// Eigenvalue of φ on the chosen eigenvector x.
    pub alpha: Elem,
    pub j0: i64,
}

/// The unique L with x − L·Nx spanning Fil^{j₀}, for x a φ-eigenvector with Nx ≠ 0.
pub fn l_invariant(d: &FilteredPhiNModule) -> Result<LInvariantResult> {
    let report = is_monodromy_module(d)?;
    if !report.is_monodromy_module {
        let why = if !report.n_nonzero {
            "N = 0"
        } else if report.j0.is_none() {
            "no one-dimensional filtration step"
        } else {
            "N(D) equals Fil^{j0}"
        };
        return Err(Error::NotMonodromyModule(why.into()));
    }
    let m = &d.module;
    let field = m.field();
    let phi = &m.phi()[0];
    let ker_n = Subspace::kernel_of(&m.n()[0]);
    let u = &ker_n.basis()[0];
    let pu = phi.mul_vec(u);
    let pivot = u.iter().position(|x| !field.is_zero(x)).unwrap();
    let beta = field.div(&pu[pivot], &u[pivot])?;
    let alpha = field.mul(&beta, &field.from_i64(m.l() as i64));
    let eig = Subspace::kernel_of(&phi.sub(&Matrix::scalar(field, 2, &alpha)));
    if eig.dim() != 1 {
        return Err(Error::Invariant(format!("φ-eigenspace for α has dimension {}", eig.dim())));
    }
    let x = eig.basis()[0].clone();
    let (value, j0) = l_invariant_for_eigenvector(d, &x)?;
    Ok(LInvariantResult { value, alpha, j0 })
}

/// L computed from a caller-chosen φ-eigenvector x with Nx ≠ 0; the result
/// does not depend on the normalisation of x.
pub fn l_invariant_for_eigenvector(d: &FilteredPhiNModule, x: &[Elem]) -> Result<(Elem, i64)> {
    let report = is_monodromy_module(d)?;
    let j0 = report.j0.filter(|_| report.is_monodromy_module).ok_or_else(|| {
        Error::NotMonodromyModule("the module fails the monodromy-module conditions".into())
    })?;
    let m = &d.module;
    let field = m.field();
    let nx = m.n()[0].mul_vec(x);
    if nx.iter().all(|c| field.is_zero(c)) {
        return Err(Error::InvalidInput("N x = 0 for the supplied eigenvector".into()));
    }
    let px = m.phi()[0].mul_vec(x);
    if Subspace::span(field, 2, &[x.to_vec(), px]).dim() != 1 {
        return Err(Error::InvalidInput("supplied vector is not a φ-eigenvector".into()));
    }
    let fil = d.filtration[0].at(j0);
    let v = &fil.basis()[0];
    let coords = Matrix::from_columns(field, 2, &[x.to_vec(), nx])
        .inverse()
        .map_err(|_| Error::Invariant("x and Nx are dependent".into()))?
        .mul_vec(v);
    let (a, b) = (&coords[0], &coords[1]);
    if field.is_zero(a) {
        return Err(Error::Invariant("Fil^{j0} equals N(D)".into()));
    }
    Ok((field.neg(&field.div(b, a)?), j0))
}

impl SubObject {
    pub fn passes(&self) -> bool {
        self.t_h <= self.t_n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn line(v: &[i64]) -> Subspace {
        let f = q();
        Subspace::span(&f, v.len(), &[v.iter().map(|&x| f.from_i64(x)).collect()])
    }

    fn two_step(d: usize, jumps: [i64; 2], middle: Subspace) -> Filtration {
        let f = q();
        Filtration::new(
            d,
            vec![
                FilStep { jump: jumps[0], space: Subspace::whole(&f, d) },
                FilStep { jump: jumps[1], space: middle },
                FilStep { jump: jumps[1] + 1, space: Subspace::zero(&f, d) },
            ],
        )
        .unwrap()
    }

    fn base_module(phi: &[&[i64]], n: &[&[i64]]) -> Result<PhiNModule> {
        let f = q();
        PhiNModule::new(5, &f, vec![Matrix::from_i64(&f, phi)], vec![Matrix::from_i64(&f, n)])
    }

    fn example(fil_line: &[i64], jumps: [i64; 2]) -> FilteredPhiNModule {
        let m = base_module(&[&[5, 0], &[0, 1]], &[&[0, 0], &[1, 0]]).unwrap();
        FilteredPhiNModule::new(m, vec![two_step(2, jumps, line(fil_line))], None).unwrap()
    }

    #[test]
    fn validation() {
        assert!(base_module(&[&[5, 0], &[0, 1]], &[&[0, 0], &[1, 0]]).is_ok());
        assert!(matches!(base_module(&[&[1, 0], &[0, 1]], &[&[0, 0], &[1, 0]]), Err(Error::ValidationFailed(_))));
        assert!(matches!(base_module(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]), Err(Error::ValidationFailed(_))));
        assert!(matches!(base_module(&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 0]]), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn filtration_rules() {
        let f = q();
        let bad = Filtration::new(
            2,
            vec![FilStep { jump: 1, space: Subspace::whole(&f, 2) }, FilStep { jump: 1, space: Subspace::zero(&f, 2) }],
        );
        assert!(bad.is_err());
        let fil = two_step(2, [0, 1], line(&[1, -3]));
        assert_eq!(*fil.at(-7), Subspace::whole(&f, 2));
        assert_eq!(*fil.at(1), line(&[1, -3]));
        assert!(fil.at(2).is_zero());
        assert_eq!(fil.weight_of_line(&line(&[1, -3])), 1);
        assert_eq!(fil.weight_of_line(&line(&[0, 1])), 0);
    }

    #[test]
    fn hodge_tate_examples() {
        let f = q();
        assert_eq!(example(&[1, -3], [0, 1]).filtration()[0].weights(), vec![0, 1]);
        assert_eq!(Filtration::trivial(&f, 3, 0).weights(), vec![0, 0, 0]);
        let plane = Subspace::span(&f, 3, &[line(&[1, 0, 0]).basis()[0].clone(), line(&[0, 1, 0]).basis()[0].clone()]);
        let fil = Filtration::new(
            3,
            vec![
                FilStep { jump: -1, space: Subspace::whole(&f, 3) },
                FilStep { jump: 0, space: plane },
                FilStep { jump: 2, space: line(&[1, 0, 0]) },
                FilStep { jump: 3, space: Subspace::zero(&f, 3) },
            ],
        )
        .unwrap();
        assert_eq!(fil.weights(), vec![-1, 0, 2]);
        let d = example(&[1, -3], [0, 1]);
        assert_eq!(hodge_tate_weights(&d, 0).unwrap(), vec![0, 1]);
        assert!(matches!(hodge_tate_weights(&d, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn weight_zero_type() {
        assert!(is_weight_zero_type(&example(&[1, -3], [0, 1])).unwrap());
        assert!(!is_weight_zero_type(&example(&[1, -3], [0, 2])).unwrap());
        let f = q();
        let m = PhiNModule::new(5, &f, vec![Matrix::identity(&f, 3)], vec![Matrix::zeros(&f, 3, 3)]).unwrap();
        let d = FilteredPhiNModule::new(m, vec![Filtration::trivial(&f, 3, 0)], None).unwrap();
        assert_eq!(is_weight_zero_type(&d), Err(Error::WrongRank { expected: 2, got: 3 }));
    }

    #[test]
    fn weak_admissibility_examples() {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let r = is_weakly_admissible(&example(&[1, -3], [0, 1])).unwrap();
        assert_eq!((r.t_n.clone(), r.t_h.clone()), (one.clone(), one.clone()));
        assert_eq!(r.sub_objects.len(), 1);
        assert_eq!(r.sub_objects[0].line, line(&[0, 1]).basis()[0]);
        assert_eq!((r.sub_objects[0].t_n.clone(), r.sub_objects[0].t_h.clone()), (zero.clone(), zero.clone()));
        assert!(r.weakly_admissible);

        let r = is_weakly_admissible(&example(&[1, -3], [0, 3])).unwrap();
        assert_eq!(r.t_h, Rational::from_integer(3.into()));
        assert!(!r.weakly_admissible);

        let f = q();
        let m = PhiNModule::new(5, &f, vec![Matrix::identity(&f, 2)], vec![Matrix::zeros(&f, 2, 2)]).unwrap();
        let d = FilteredPhiNModule::new(m, vec![Filtration::trivial(&f, 2, 0)], None).unwrap();
        let r = is_weakly_admissible(&d).unwrap();
        assert!(r.weakly_admissible && r.t_n == zero && r.sub_objects.iter().all(|s| s.t_h == zero));
    }

    #[test]
    fn weak_admissibility_scalar_frobenius_sees_filtration_line() {
        // every line is stable; the filtration line itself has t_H = 1 > 0 = t_N
        let f = q();
        let m = PhiNModule::new(5, &f, vec![Matrix::identity(&f, 2)], vec![Matrix::zeros(&f, 2, 2)]).unwrap();
        let d = FilteredPhiNModule::new(m, vec![two_step(2, [0, 1], line(&[1, 2]))], None).unwrap();
        let r = is_weakly_admissible(&d).unwrap();
        assert!(!r.weakly_admissible);
        assert!(r.sub_objects.iter().any(|s| s.line == line(&[1, 2]).basis()[0] && !s.passes()));
    }

    #[test]
    fn monodromy_examples() {
        let r = is_monodromy_module(&example(&[1, -3], [0, 1])).unwrap();
        assert_eq!((r.n_nonzero, r.j0, r.image_differs, r.is_monodromy_module), (true, Some(1), Some(true), true));
        let r = is_monodromy_module(&example(&[0, 1], [0, 1])).unwrap();
        assert_eq!((r.image_differs, r.is_monodromy_module), (Some(false), false));
        let f = q();
        let m = PhiNModule::new(5, &f, vec![Matrix::identity(&f, 2)], vec![Matrix::zeros(&f, 2, 2)]).unwrap();
        let d = FilteredPhiNModule::new(m, vec![two_step(2, [0, 1], line(&[1, -3]))], None).unwrap();
        let r = is_monodromy_module(&d).unwrap();
        assert!(!r.n_nonzero && !r.is_monodromy_module);
        assert!(matches!(l_invariant(&d), Err(Error::NotMonodromyModule(_))));
    }

    #[test]
    fn l_invariant_examples() {
        let f = q();
        let r = l_invariant(&example(&[1, -3], [0, 1])).unwrap();
        assert_eq!((r.value, r.alpha, r.j0), (f.from_i64(3), f.from_i64(5), 1));
        assert_eq!(l_invariant(&example(&[1, 0], [0, 1])).unwrap().value, f.zero());
        let seven = l_invariant_for_eigenvector(&example(&[1, -3], [0, 1]), &[f.from_i64(7), f.zero()]).unwrap();
        assert_eq!(seven, (f.from_i64(3), 1));
    }

    #[test]
    fn l_invariant_after_basis_change() {
        let f = q();
        let p = Matrix::from_i64(&f, &[&[2, 1], &[1, 1]]);
        let d = example(&[1, -3], [0, 1]).change_basis(&[p]).unwrap();
        assert_eq!(l_invariant(&d).unwrap().value, f.from_i64(3));
    }

    #[test]
    fn l_invariant_rejects_f_two() {
        let f = q();
        let m = PhiNModule::new(5, &f, vec![Matrix::identity(&f, 1); 2], vec![Matrix::zeros(&f, 1, 1); 2]).unwrap();
        let d = FilteredPhiNModule::new(m, vec![Filtration::trivial(&f, 1, 0); 2], None).unwrap();
        assert_eq!(l_invariant(&d), Err(Error::UnsupportedBase(2)));
    }
}
