//! Graded cocommutative coalgebras and their comodules.
//!
//! A coalgebra carries its comultiplication as an honest degree-0 linear
//! map `Δ: C -> C ⊗ C` (so every construction downstream is plain linear
//! algebra), the counit, an optional right Steenrod action (F2 only) and an
//! optional basepoint. Comodules store LEFT coactions `ρ: M -> C ⊗ M`;
//! whenever a right coaction is needed it is derived through the symmetry
//! τ, which cocommutativity makes harmless.
//!
//! Validation is machine-checked and reports every failed axiom with a
//! witness basis element.

pub mod ops;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::linalg::graded::{
    tensor, tensor_maps, associator, left_unitor, right_unitor, tau, Degree, GradedLinearMap,
    GradedVectorSpace, TensorLayout,
};
use crate::linalg::{Field, Matrix, Scalar};
use crate::steenrod::{SteenrodAction, UnstableRightModule};

/// A finite-type graded cocommutative counital coalgebra, truncated at the
/// session cap. The optional Steenrod action and basepoint only make sense
/// in the singly-graded case; bigraded coalgebras (cohomotopy pages) leave
/// them empty.
#[derive(Debug, Clone)]
pub struct Coalgebra<D: Degree = usize> {
    space: GradedVectorSpace<D>,
    delta: GradedLinearMap<D>,
    counit: GradedLinearMap<D>,
    action: Option<SteenrodAction>,
    basepoint: Option<usize>,
    /// Declared grouplike basis of degree 0 (columns), when provided.
    declared_grouplikes: Option<Matrix>,
}

pub type CoalgRef<D = usize> = Arc<Coalgebra<D>>;

impl<D: Degree> Coalgebra<D> {
    pub fn space(&self) -> &GradedVectorSpace<D> {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn cap(&self) -> D {
        self.space.cap()
    }

    /// `Δ: C -> C ⊗ C` as a degree-0 map.
    pub fn delta(&self) -> &GradedLinearMap<D> {
        &self.delta
    }

    /// `ε: C -> F` with the unit space as target.
    pub fn counit(&self) -> &GradedLinearMap<D> {
        &self.counit
    }

    pub fn action(&self) -> Option<&SteenrodAction> {
        self.action.as_ref()
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    /// Connected: one-dimensional in degree zero.
    pub fn is_connected(&self) -> bool {
        self.space.dim(D::zero()) == 1
    }

    pub fn unit_space(&self) -> GradedVectorSpace<D> {
        GradedVectorSpace::unit(self.field(), self.cap())
    }

    /// The basepoint as a column vector in degree zero.
    pub fn basepoint_vector(&self) -> Option<Matrix> {
        let idx = self.basepoint?;
        let d0 = self.space.dim(D::zero());
        let mut m = Matrix::zero(self.field(), d0, 1);
        m.set(idx, 0, &Scalar::one(self.field()));
        Some(m)
    }

    /// The basepoint as a map from the unit space, `σ: F -> C`.
    pub fn basepoint_map(&self) -> Option<GradedLinearMap<D>> {
        let v = self.basepoint_vector()?;
        let mut f = GradedLinearMap::zero(self.unit_space(), self.space.clone(), D::Shift::default());
        f.set_block(D::zero(), v);
        Some(f)
    }

    /// Total dimension across all degrees.
    pub fn total_dim(&self) -> usize {
        self.space.total_dim()
    }

    /// Structural equality of the underlying data (used to decide whether
    /// two comodules share a base).
    pub fn same_structure(&self, other: &Self) -> bool {
        self.space.same_dims(&other.space)
            && self.delta.equal(&other.delta)
            && self.counit.equal(&other.counit)
    }

    /// Raw constructor for callers that assemble the maps themselves (the
    /// cofree construction, tensor products, π⁰-pages). Shapes are
    /// asserted; axioms are the caller's responsibility and remain
    /// machine-checkable through [`validate_coalgebra`].
    pub fn from_parts(
        space: GradedVectorSpace<D>,
        delta: GradedLinearMap<D>,
        counit: GradedLinearMap<D>,
        action: Option<SteenrodAction>,
        basepoint: Option<usize>,
    ) -> Self {
        assert!(delta.source().same_dims(&space));
        assert!(counit.source().same_dims(&space));
        if let Some(b) = basepoint {
            assert!(b < space.dim(D::zero()), "basepoint index out of range");
        }
        Coalgebra {
            space,
            delta,
            counit,
            action,
            basepoint,
            declared_grouplikes: None,
        }
    }

    pub fn with_declared_grouplikes(mut self, g: Matrix) -> Self {
        self.declared_grouplikes = Some(g);
        self
    }

    pub fn declared_grouplikes(&self) -> Option<&Matrix> {
        self.declared_grouplikes.as_ref()
    }
}

/// Incremental builder from structure constants, with degree-additivity
/// checking. This is the entry point used by file parsing.
pub struct CoalgebraBuilder<D: Degree = usize> {
    space: GradedVectorSpace<D>,
    comul: Vec<((D, usize), (D, usize), (D, usize), Scalar)>,
    counit: Vec<((D, usize), Scalar)>,
    action_entries: Vec<(u32, (usize, usize), (usize, usize), Scalar)>,
    basepoint: Option<(D, usize)>,
    grouplikes: Option<Vec<Vec<((D, usize), Scalar)>>>,
    violations: Vec<Violation>,
}

impl<D: Degree> CoalgebraBuilder<D> {
    pub fn new(field: Field, cap: D) -> Self {
        CoalgebraBuilder {
            space: GradedVectorSpace::new(field, cap),
            comul: Vec::new(),
            counit: Vec::new(),
            action_entries: Vec::new(),
            basepoint: None,
            grouplikes: None,
            violations: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn add_generator(&mut self, degree: D, label: &str) -> Result<()> {
        if !degree.within(self.space.cap()) {
            return Err(Error::shape("generator degree above the cap"));
        }
        if self.space.label_index(degree, label).is_some() {
            return Err(Error::shape("duplicate generator label"));
        }
        self.space.push_label(degree, label.to_string());
        Ok(())
    }

    fn resolve(&self, label: &str) -> Result<(D, usize)> {
        for d in self.space.support() {
            if let Some(i) = self.space.label_index(d, label) {
                return Ok((d, i));
            }
        }
        Err(Error::Shape(format!("unknown generator `{label}`")))
    }

    /// Record `coeff · (left ⊗ right)` as a term of `Δ(of)`.
    pub fn comul_term(&mut self, of: &str, left: &str, right: &str, coeff: Scalar) -> Result<()> {
        let x = self.resolve(of)?;
        let a = self.resolve(left)?;
        let b = self.resolve(right)?;
        if a.0.add(b.0) != x.0 {
            self.violations.push(Violation {
                axiom: "degree additivity of Δ".to_string(),
                witness: format!("Δ({of}) has term ({left})⊗({right})"),
            });
            return Ok(());
        }
        self.comul.push((x, a, b, coeff));
        Ok(())
    }

    pub fn counit_value(&mut self, of: &str, value: Scalar) -> Result<()> {
        let x = self.resolve(of)?;
        if x.0 != D::zero() && !value.is_zero() {
            self.violations.push(Violation {
                axiom: "counit support".to_string(),
                witness: format!("ε({of}) ≠ 0 in positive degree"),
            });
            return Ok(());
        }
        self.counit.push((x, value));
        Ok(())
    }

    pub fn basepoint(&mut self, label: &str) -> Result<()> {
        let x = self.resolve(label)?;
        if x.0 != D::zero() {
            return Err(Error::shape("basepoint must live in degree zero"));
        }
        self.basepoint = Some(x);
        Ok(())
    }

    pub fn grouplike(&mut self, combo: &[(&str, Scalar)]) -> Result<()> {
        let mut entry = Vec::new();
        for (label, c) in combo {
            let x = self.resolve(label)?;
            if x.0 != D::zero() {
                return Err(Error::shape("grouplikes live in degree zero"));
            }
            entry.push((x, c.clone()));
        }
        self.grouplikes.get_or_insert_with(Vec::new).push(entry);
        Ok(())
    }

    pub fn build(self) -> Result<Coalgebra<D>> {
        if !self.violations.is_empty() {
            return Err(Error::Validation(self.violations));
        }
        let space = self.space;
        let target = tensor(&space, &space);
        let layout = TensorLayout::new(&space, &space);
        let mut delta = GradedLinearMap::zero(space.clone(), target, D::Shift::default());
        let mut blocks: BTreeMap<D, Matrix> = BTreeMap::new();
        for ((xd, xi), (ad, ai), (bd, bi), c) in &self.comul {
            let block = blocks.entry(*xd).or_insert_with(|| {
                Matrix::zero(space.field(), layout.dim(*xd), space.dim(*xd))
            });
            let row = layout.index(*xd, *ad, *ai, *bi);
            block.add_assign_entry(row, *xi, c);
        }
        for (d, b) in blocks {
            delta.set_block(d, b);
        }
        let unit = GradedVectorSpace::unit(space.field(), space.cap());
        let mut counit = GradedLinearMap::zero(space.clone(), unit, D::Shift::default());
        {
            let mut b = Matrix::zero(space.field(), 1, space.dim(D::zero()));
            for ((xd, xi), v) in &self.counit {
                if *xd == D::zero() {
                    b.add_assign_entry(0, *xi, v);
                }
            }
            counit.set_block(D::zero(), b);
        }
        let basepoint = self.basepoint.map(|(_, i)| i);
        let mut out = Coalgebra::from_parts(space, delta, counit, None, basepoint);
        if let Some(gs) = &self.grouplikes {
            let d0 = out.space.dim(D::zero());
            let mut m = Matrix::zero(out.field(), d0, gs.len());
            for (k, combo) in gs.iter().enumerate() {
                for ((_, i), c) in combo {
                    m.add_assign_entry(*i, k, c);
                }
            }
            out = out.with_declared_grouplikes(m);
        }
        Ok(out)
    }

    /// Attach a raw action entry `of · Sq^k = Σ coeff · target` (F2 only).
    /// Degrees are resolved at build time through `build_with_action`.
    pub fn action_term(&mut self, of: &str, k: u32, target: &str, coeff: Scalar) -> Result<()> {
        let x = self.resolve(of)?;
        let y = self.resolve(target)?;
        // Only the singly-graded case carries actions; encode degrees via
        // the order of `support()` later. Store label indices with their
        // degrees flattened by position in support order.
        let xd_pos = self
            .space
            .support()
            .iter()
            .position(|d| *d == x.0)
            .unwrap();
        let yd_pos = self
            .space
            .support()
            .iter()
            .position(|d| *d == y.0)
            .unwrap();
        self.action_entries
            .push((k, (xd_pos, x.1), (yd_pos, y.1), coeff));
        Ok(())
    }
}

impl CoalgebraBuilder<usize> {
    /// Build including the Steenrod action (singly-graded, F2).
    pub fn build_with_action(mut self, generators_only: bool) -> Result<Coalgebra<usize>> {
        if self.field() == Field::Q && !self.action_entries.is_empty() {
            return Err(Error::unsupported(
                "Steenrod actions are trivial over Q; remove the action block",
            ));
        }
        let entries = core::mem::take(&mut self.action_entries);
        let support = self.space.support();
        let mut violations = Vec::new();
        let coalg = self.build()?;
        let mut action = SteenrodAction::trivial(coalg.space().clone());
        let mut blocks: BTreeMap<(u32, usize), Matrix> = BTreeMap::new();
        for (k, (xdp, xi), (ydp, yi), c) in entries {
            let xd = support[xdp];
            let yd = support[ydp];
            if xd < k as usize || yd != xd - k as usize {
                violations.push(Violation {
                    axiom: "action degree bookkeeping".to_string(),
                    witness: format!(
                        "Sq[{k}] sends degree {xd} to degree {yd}"
                    ),
                });
                continue;
            }
            let b = blocks.entry((k, xd)).or_insert_with(|| {
                Matrix::zero(
                    Field::F2,
                    coalg.space().dim(yd),
                    coalg.space().dim(xd),
                )
            });
            b.add_assign_entry(yi, xi, &c);
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        for ((k, n), b) in blocks {
            action.set_block(k, n, b);
        }
        if generators_only {
            action.saturate_from_generators();
        }
        Ok(Coalgebra {
            action: Some(action),
            ..coalg
        })
    }
}

/// A left comodule over a shared base coalgebra.
#[derive(Debug, Clone)]
pub struct Comodule<D: Degree = usize> {
    base: CoalgRef<D>,
    space: GradedVectorSpace<D>,
    /// Left coaction `ρ: M -> C ⊗ M`, degree 0.
    coaction: GradedLinearMap<D>,
    action: Option<SteenrodAction>,
}

impl<D: Degree> Comodule<D> {
    pub fn new(
        base: CoalgRef<D>,
        space: GradedVectorSpace<D>,
        coaction: GradedLinearMap<D>,
        action: Option<SteenrodAction>,
    ) -> Self {
        assert!(coaction.source().same_dims(&space), "coaction source");
        Comodule {
            base,
            space,
            coaction,
            action,
        }
    }

    pub fn base(&self) -> &CoalgRef<D> {
        &self.base
    }

    pub fn space(&self) -> &GradedVectorSpace<D> {
        &self.space
    }

    pub fn coaction(&self) -> &GradedLinearMap<D> {
        &self.coaction
    }

    pub fn action(&self) -> Option<&SteenrodAction> {
        self.action.as_ref()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn cap(&self) -> D {
        self.space.cap()
    }

    pub fn total_dim(&self) -> usize {
        self.space.total_dim()
    }

    /// The zero comodule over a base.
    pub fn zero(base: CoalgRef<D>) -> Self {
        let space = GradedVectorSpace::new(base.field(), base.cap());
        let target = tensor(base.space(), &space);
        let coaction = GradedLinearMap::zero(space.clone(), target, D::Shift::default());
        Comodule::new(base, space, coaction, None)
    }

    /// The base coalgebra as a comodule over itself (`ρ = Δ`).
    pub fn regular(base: CoalgRef<D>) -> Self {
        let space = base.space().clone();
        let coaction = base.delta().clone();
        let action = base.action().cloned();
        Comodule::new(base, space, coaction, action)
    }

    /// Do two comodules share a base (pointer or structural)?
    pub fn same_base(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || self.base.same_structure(&other.base)
    }

    /// The right coaction `τ ∘ ρ : M -> M ⊗ C` derived through the twist.
    pub fn right_coaction(&self) -> GradedLinearMap<D> {
        let t = tau(self.base.space(), &self.space);
        t.compose(&self.coaction)
    }
}

/// The trivial comodule `F` over a pointed coalgebra: `ρ(1) = σ ⊗ 1`.
pub fn trivial_comodule<D: Degree>(base: &CoalgRef<D>) -> Result<Comodule<D>> {
    let sigma = base
        .basepoint_map()
        .ok_or_else(|| Error::unsupported("trivial comodule needs a basepoint"))?;
    let unit = base.unit_space();
    let target = tensor(base.space(), &unit);
    let layout = TensorLayout::new(base.space(), &unit);
    let mut coaction = GradedLinearMap::zero(unit.clone(), target, D::Shift::default());
    let mut b = Matrix::zero(base.field(), layout.dim(D::zero()), 1);
    let sv = sigma.block(D::zero());
    for r in 0..sv.rows() {
        let v = sv.get(r, 0);
        if !v.is_zero() {
            b.set(layout.index(D::zero(), D::zero(), r, 0), 0, &v);
        }
    }
    coaction.set_block(D::zero(), b);
    let action = if base.field() == Field::F2 {
        Some(SteenrodAction::trivial(unit.clone()))
    } else {
        None
    };
    Ok(Comodule::new(base.clone(), unit, coaction, action))
}

/// The cofree comodule `W ⊗ C` with coaction `w⊗c ↦ Σ ±c(1) ⊗ (w ⊗ c(2))`
/// (the Koszul sign moves `c(1)` past `w`).
pub fn cofree_comodule<D: Degree>(base: &CoalgRef<D>, w: &GradedVectorSpace<D>) -> Comodule<D> {
    let c = base.space();
    let space = tensor(w, c);
    let space_layout = TensorLayout::new(w, c);
    let target = tensor(c, &space);
    let target_layout = TensorLayout::new(c, &space);
    let cc_layout = TensorLayout::new(c, c);
    let field = base.field();
    let mut coaction = GradedLinearMap::zero(space.clone(), target.clone(), D::Shift::default());
    for d in space.support() {
        let mut block = Matrix::zero(field, target_layout.dim(d), space_layout.dim(d));
        for &(wd, cd, dw, dc, _) in space_layout.segments(d) {
            let db = base.delta().block(cd);
            for j in 0..dc {
                for r in 0..db.rows() {
                    let v = db.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let (c1d, c1i, c2d, c2i) = cc_layout.decompose(cd, r);
                    // Sign for moving c(1) (degree c1d) past w (degree wd).
                    let v = if field == Field::Q && D::swap_sign(c1d, wd) {
                        v.neg()
                    } else {
                        v
                    };
                    for i in 0..dw {
                        let col = space_layout.index(d, wd, i, j);
                        let inner = space_layout.index(wd.add(c2d), wd, i, c2i);
                        let row = target_layout.index(d, c1d, c1i, inner);
                        block.add_assign_entry(row, col, &v);
                    }
                }
            }
        }
        coaction.set_block(d, block);
    }
    let action = base.action().map(|a| {
        // Cartan action on W ⊗ C with trivial action on W.
        let wa = SteenrodAction::trivial(w.clone());
        SteenrodAction::cartan_tensor(&wa, a)
    });
    Comodule::new(base.clone(), space, coaction, action)
}

/// Options controlling coalgebra validation.
#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions {
    /// Exhaustive grouplike search bound over F2 (dimension of degree 0).
    pub setlike_search_limit: usize,
    /// Check the unstable conditions (Steenrod compatibility, set-like
    /// degree 0). When false only the plain coalgebra axioms are checked.
    pub unstable: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            setlike_search_limit: 16,
            unstable: true,
        }
    }
}

/// Outcome of validation: all violations, plus the grouplike basis when the
/// degree-0 set-like check succeeded.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub grouplikes: Option<Matrix>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(Error::Validation(self.violations))
        }
    }
}

fn witness_label<D: Degree>(space: &GradedVectorSpace<D>, d: D, block: &Matrix) -> String {
    for c in 0..block.cols() {
        if (0..block.rows()).any(|r| !block.get(r, c).is_zero()) {
            return format!("{} (degree {d})", space.labels(d)[c]);
        }
    }
    format!("degree {d}")
}

/// Check the coalgebra axioms (and unstable structure where applicable).
pub fn validate_coalgebra<D: Degree>(c: &Coalgebra<D>, opts: &ValidateOptions) -> ValidationReport {
    let mut violations = Vec::new();
    let space = c.space();
    let field = c.field();

    // Coassociativity: (Δ⊗id)Δ = assoc⁻¹ ∘ (id⊗Δ) Δ.
    let id = GradedLinearMap::identity(space);
    let left = tensor_maps(c.delta(), &id).compose(c.delta());
    let assoc = associator(space, space, space);
    let right = tensor_maps(&id, c.delta()).compose(c.delta());
    let left_in_right_basis = assoc.compose(&left);
    let diff = left_in_right_basis.sub(&right);
    if !diff.is_zero() {
        for d in space.support() {
            let b = diff.block(d);
            if !b.is_zero() {
                violations.push(Violation {
                    axiom: "coassociativity".to_string(),
                    witness: witness_label(space, d, &b),
                });
                break;
            }
        }
    }

    // Counit: (ε⊗id)Δ = id = (id⊗ε)Δ.
    let unit = c.unit_space();
    let lu = left_unitor(&unit, space);
    let ru = right_unitor(space, &unit);
    let lhs = lu.compose(&tensor_maps(c.counit(), &id)).compose(c.delta());
    let rhs = ru.compose(&tensor_maps(&id, c.counit())).compose(c.delta());
    for (name, f) in [("left counit", &lhs), ("right counit", &rhs)] {
        let diff = f.sub(&id);
        if !diff.is_zero() {
            for d in space.support() {
                let b = diff.block(d);
                if !b.is_zero() {
                    violations.push(Violation {
                        axiom: name.to_string(),
                        witness: witness_label(space, d, &b),
                    });
                    break;
                }
            }
        }
    }

    // Cocommutativity: τ ∘ Δ = Δ.
    let tw = tau(space, space);
    let diff = tw.compose(c.delta()).sub(c.delta());
    if !diff.is_zero() {
        for d in space.support() {
            let b = diff.block(d);
            if !b.is_zero() {
                violations.push(Violation {
                    axiom: "cocommutativity".to_string(),
                    witness: witness_label(space, d, &b),
                });
                break;
            }
        }
    }

    // Basepoint must be grouplike.
    if let Some(bp) = c.basepoint_vector() {
        let d0 = D::zero();
        let layout = TensorLayout::new(space, space);
        let image = c.delta().block(d0).mul(&bp);
        let mut expected = Matrix::zero(field, layout.dim(d0), 1);
        for i in 0..bp.rows() {
            for j in 0..bp.rows() {
                let v = bp.get(i, 0).mul(&bp.get(j, 0));
                if !v.is_zero() {
                    expected.set(layout.index(d0, d0, i, j), 0, &v);
                }
            }
        }
        if image != expected {
            violations.push(Violation {
                axiom: "basepoint grouplike".to_string(),
                witness: "σ".to_string(),
            });
        }
        let e = c.counit().block(d0).mul(&bp);
        if e.get(0, 0) != Scalar::one(field) {
            violations.push(Violation {
                axiom: "basepoint counit".to_string(),
                witness: "ε(σ) ≠ 1".to_string(),
            });
        }
    }

    let mut grouplikes = None;
    if opts.unstable {
        grouplikes = check_setlike(c, opts, &mut violations);
    }

    ValidationReport {
        violations,
        grouplikes,
    }
}

/// Degree-0 set-like check. Over F2 an exhaustive grouplike search (within
/// the search limit); over Q the declared basis is verified. Returns the
/// grouplike basis on success.
fn check_setlike<D: Degree>(
    c: &Coalgebra<D>,
    opts: &ValidateOptions,
    violations: &mut Vec<Violation>,
) -> Option<Matrix> {
    let d0 = D::zero();
    let dim0 = c.space().dim(d0);
    if dim0 == 0 {
        violations.push(Violation {
            axiom: "set-like degree 0".to_string(),
            witness: "degree 0 is zero (no counit section)".to_string(),
        });
        return None;
    }
    let is_grouplike = |g: &Matrix| -> bool {
        let layout = TensorLayout::new(c.space(), c.space());
        let image = c.delta().block(d0).mul(g);
        let mut expected = Matrix::zero(c.field(), layout.dim(d0), 1);
        for i in 0..g.rows() {
            for j in 0..g.rows() {
                let v = g.get(i, 0).mul(&g.get(j, 0));
                if !v.is_zero() {
                    expected.set(layout.index(d0, d0, i, j), 0, &v);
                }
            }
        }
        image == expected && c.counit().block(d0).mul(g).get(0, 0).is_one()
    };
    let candidate = match (c.field(), c.declared_grouplikes()) {
        (_, Some(declared)) => Some(declared.clone()),
        (Field::F2, None) => {
            if dim0 > opts.setlike_search_limit {
                violations.push(Violation {
                    axiom: "set-like degree 0".to_string(),
                    witness: format!(
                        "dim C_0 = {dim0} exceeds the search limit; declare a grouplike basis"
                    ),
                });
                return None;
            }
            // Exhaustive search over nonzero vectors.
            let mut found = Vec::new();
            for mask in 1u64..(1u64 << dim0) {
                let mut g = Matrix::zero(Field::F2, dim0, 1);
                for i in 0..dim0 {
                    if (mask >> i) & 1 == 1 {
                        g.set(i, 0, &Scalar::F2(true));
                    }
                }
                if is_grouplike(&g) {
                    found.push(g);
                }
            }
            let refs: Vec<&Matrix> = found.iter().collect();
            if refs.is_empty() {
                None
            } else {
                Some(Matrix::hstack(&refs))
            }
        }
        (Field::Q, None) => {
            violations.push(Violation {
                axiom: "set-like degree 0".to_string(),
                witness: "over Q the grouplike basis must be declared".to_string(),
            });
            return None;
        }
    };
    let Some(g) = candidate else {
        violations.push(Violation {
            axiom: "set-like degree 0".to_string(),
            witness: "no grouplikes found".to_string(),
        });
        return None;
    };
    // Each declared column must be grouplike; together they must be a basis.
    for k in 0..g.cols() {
        if !is_grouplike(&g.column(k)) {
            violations.push(Violation {
                axiom: "set-like degree 0".to_string(),
                witness: format!("declared grouplike {k} fails Δg = g⊗g, εg = 1"),
            });
            return None;
        }
    }
    if g.cols() != dim0 || g.rank() != dim0 {
        violations.push(Violation {
            axiom: "set-like degree 0".to_string(),
            witness: format!("grouplikes span {} of {} dimensions", g.rank(), dim0),
        });
        return None;
    }
    Some(g)
}

/// The unstable checks that only exist for singly-graded F2 coalgebras:
/// module axioms and instability of the action, Δ-equivariance through the
/// Cartan formula, and the root map `ξ(x) = x·Sq^n` for `|x| = 2n`.
pub fn validate_unstable(c: &Coalgebra<usize>) -> Vec<Violation> {
    let mut violations = Vec::new();
    let Some(action) = c.action() else {
        return violations;
    };
    if c.field() != Field::F2 {
        violations.push(Violation {
            axiom: "field".to_string(),
            witness: "nontrivial Steenrod action over Q".to_string(),
        });
        return violations;
    }
    let module = UnstableRightModule::new(c.space().clone(), action.clone());
    violations.extend(crate::steenrod::verify_unstable_module(&module, false));

    // Δ is a map of unstable modules: Δ(x·Sq^k) = Δ(x)·Sq^k (Cartan).
    let cap = c.space().cap();
    let tensor_action = SteenrodAction::cartan_tensor(action, action);
    for k in 1..=cap as u32 {
        for n in k as usize..=cap {
            if c.space().dim(n) == 0 {
                continue;
            }
            let lhs = c.delta().block(n - k as usize).mul(&action.act(k, n));
            let rhs = tensor_action.act(k, n).mul(&c.delta().block(n));
            if lhs != rhs {
                violations.push(Violation {
                    axiom: "Δ Steenrod equivariance".to_string(),
                    witness: format!("Sq[{k}] at degree {n}"),
                });
            }
        }
    }

    // p-th root: ξ(x) = x·Sq^n for |x| = 2n, where ⟨λ, ξx⟩ = ⟨λ², x⟩, i.e.
    // ξ matrix entries are the coefficients of e_i ⊗ e_i in Δ.
    let layout = TensorLayout::new(c.space(), c.space());
    for n in 0..=cap / 2 {
        let (src, tgt) = (2 * n, n);
        if c.space().dim(src) == 0 {
            continue;
        }
        let db = c.delta().block(src);
        let mut xi = Matrix::zero(Field::F2, c.space().dim(tgt), c.space().dim(src));
        for j in 0..c.space().dim(src) {
            for i in 0..c.space().dim(tgt) {
                let row = layout.index(src, tgt, i, i);
                xi.set(i, j, &db.get(row, j));
            }
        }
        let act = if n == 0 {
            Matrix::identity(Field::F2, c.space().dim(0))
        } else {
            action.act(n as u32, src)
        };
        if xi != act {
            violations.push(Violation {
                axiom: "root map ξ = Sq^n on degree 2n".to_string(),
                witness: format!("degree {src}"),
            });
        }
    }
    violations
}

/// Full validation for singly-graded coalgebras: coalgebra axioms, set-like
/// degree 0, and the unstable structure when an action is present.
pub fn validate_full(c: &Coalgebra<usize>, opts: &ValidateOptions) -> ValidationReport {
    let mut report = validate_coalgebra(c, opts);
    if opts.unstable {
        report.violations.extend(validate_unstable(c));
    }
    report
}

/// Check that a degree-0 map is a counital coalgebra map, and Steenrod
/// equivariant when both sides carry actions.
pub fn validate_coalgebra_map<D: Degree>(
    src: &Coalgebra<D>,
    tgt: &Coalgebra<D>,
    f: &GradedLinearMap<D>,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    let ff = tensor_maps(f, f);
    let diff = ff.compose(src.delta()).sub(&tgt.delta().compose(f));
    if !diff.is_zero() {
        for d in src.space().support() {
            if !diff.block(d).is_zero() {
                violations.push(Violation {
                    axiom: "coalgebra map: Δ compatibility".to_string(),
                    witness: witness_label(src.space(), d, &diff.block(d)),
                });
                break;
            }
        }
    }
    let diff = tgt.counit().compose(f).sub(src.counit());
    if !diff.is_zero() {
        violations.push(Violation {
            axiom: "coalgebra map: counit".to_string(),
            witness: "ε ∘ f ≠ ε".to_string(),
        });
    }
    violations
}

/// Check the comodule axioms: coassociativity `(Δ⊗id)ρ = (id⊗ρ)ρ` and
/// counit `(ε⊗id)ρ = id`; with `strict`, additionally the coabelian bound
/// on the action.
pub fn validate_comodule<D: Degree>(m: &Comodule<D>, strict: bool) -> Vec<Violation> {
    let mut violations = Vec::new();
    let c = m.base();
    let idm = GradedLinearMap::identity(m.space());
    let idc = GradedLinearMap::identity(c.space());
    // (Δ⊗id)ρ and assoc ∘ ... = (id⊗ρ)ρ inside C⊗(C⊗M).
    let lhs = associator(c.space(), c.space(), m.space())
        .compose(&tensor_maps(c.delta(), &idm))
        .compose(m.coaction());
    let rhs = tensor_maps(&idc, m.coaction()).compose(m.coaction());
    let diff = lhs.sub(&rhs);
    if !diff.is_zero() {
        for d in m.space().support() {
            if !diff.block(d).is_zero() {
                violations.push(Violation {
                    axiom: "comodule coassociativity".to_string(),
                    witness: witness_label(m.space(), d, &diff.block(d)),
                });
                break;
            }
        }
    }
    let unit = c.unit_space();
    let lu = left_unitor(&unit, m.space());
    let counit_side = lu
        .compose(&tensor_maps(c.counit(), &idm))
        .compose(m.coaction());
    let diff = counit_side.sub(&idm);
    if !diff.is_zero() {
        for d in m.space().support() {
            if !diff.block(d).is_zero() {
                violations.push(Violation {
                    axiom: "comodule counit".to_string(),
                    witness: witness_label(m.space(), d, &diff.block(d)),
                });
                break;
            }
        }
    }
    if let Some(act) = m.action() {
        let module = UnstableRightModule::new(m.space().clone(), act.clone());
        violations.extend(crate::steenrod::verify_unstable_module(&module, strict));
        // ρ is a module map for the Cartan action on C⊗M.
        if let Some(cact) = c.action() {
            let tensor_action = SteenrodAction::cartan_tensor(cact, act);
            let cap = m.space().cap();
            for k in 1..=cap as u32 {
                for n in k as usize..=cap {
                    if m.space().dim(n) == 0 {
                        continue;
                    }
                    let lhs = m.coaction().block(n - k as usize).mul(&act.act(k, n));
                    let rhs = tensor_action.act(k, n).mul(&m.coaction().block(n));
                    if lhs != rhs {
                        violations.push(Violation {
                            axiom: "coaction Steenrod equivariance".to_string(),
                            witness: format!("Sq[{k}] at degree {n}"),
                        });
                    }
                }
            }
        }
    } else if strict {
        violations.push(Violation {
            axiom: "coabelian flag".to_string(),
            witness: "no action data to check the strict bound against".to_string(),
        });
    }
    violations
}

pub mod examples {
    //! Stock coalgebras used across tests and the command line.

    use super::*;

    /// The terminal coalgebra `F` (the monoidal unit), pointed.
    pub fn terminal(field: Field, cap: usize) -> Coalgebra<usize> {
        let mut b = CoalgebraBuilder::new(field, cap);
        b.add_generator(0, "1").unwrap();
        b.comul_term("1", "1", "1", Scalar::one(field)).unwrap();
        b.counit_value("1", Scalar::one(field)).unwrap();
        b.basepoint("1").unwrap();
        if field == Field::Q {
            b.grouplike(&[("1", Scalar::one(field))]).unwrap();
        }
        let mut c = b.build().unwrap();
        if field == Field::F2 {
            c.action = Some(SteenrodAction::trivial(c.space().clone()));
        }
        c
    }

    /// The exterior coalgebra `Λ(x_m)`: basis `{1, x}` with `Δx = x⊗1+1⊗x`,
    /// trivial action.
    pub fn exterior(field: Field, cap: usize, m: usize) -> Coalgebra<usize> {
        assert!(m >= 1 && m <= cap);
        let mut b = CoalgebraBuilder::new(field, cap);
        b.add_generator(0, "1").unwrap();
        b.add_generator(m, "x").unwrap();
        let one = Scalar::one(field);
        b.comul_term("1", "1", "1", one.clone()).unwrap();
        b.comul_term("x", "x", "1", one.clone()).unwrap();
        b.comul_term("x", "1", "x", one.clone()).unwrap();
        b.counit_value("1", one.clone()).unwrap();
        b.basepoint("1").unwrap();
        if field == Field::Q {
            b.grouplike(&[("1", one)]).unwrap();
        }
        let mut c = b.build().unwrap();
        if field == Field::F2 {
            c.action = Some(SteenrodAction::trivial(c.space().clone()));
        }
        c
    }

    /// The set-like coalgebra `F(S)` on `points` grouplikes, pointed at the
    /// first.
    pub fn set_like(field: Field, cap: usize, points: usize) -> Coalgebra<usize> {
        assert!(points >= 1);
        let mut b = CoalgebraBuilder::new(field, cap);
        let one = Scalar::one(field);
        for i in 0..points {
            let label = format!("g{i}");
            b.add_generator(0, &label).unwrap();
            b.comul_term(&label, &label, &label, one.clone()).unwrap();
            b.counit_value(&label, one.clone()).unwrap();
            if field == Field::Q {
                b.grouplike(&[(&label, one.clone())]).unwrap();
            }
        }
        b.basepoint("g0").unwrap();
        let mut c = b.build().unwrap();
        if field == Field::F2 {
            c.action = Some(SteenrodAction::trivial(c.space().clone()));
        }
        c
    }

    /// The graded dual of `F[t]/(t^k)` with `|t| = m`: divided-power basis
    /// `γ_0..γ_{k-1}` in degrees `i·m`, `Δγ_n = Σ γ_i ⊗ γ_{n-i}` (no
    /// binomial coefficients on this side). No Steenrod action is attached.
    pub fn divided_power(field: Field, cap: usize, m: usize, k: usize) -> Coalgebra<usize> {
        assert!(m >= 1 && k >= 1 && (k - 1) * m <= cap);
        let mut b = CoalgebraBuilder::new(field, cap);
        let one = Scalar::one(field);
        for i in 0..k {
            b.add_generator(i * m, &format!("γ{i}")).unwrap();
        }
        for n in 0..k {
            for i in 0..=n {
                b.comul_term(
                    &format!("γ{n}"),
                    &format!("γ{i}"),
                    &format!("γ{}", n - i),
                    one.clone(),
                )
                .unwrap();
            }
        }
        b.counit_value("γ0", one.clone()).unwrap();
        b.basepoint("γ0").unwrap();
        if field == Field::Q {
            b.grouplike(&[("γ0", one)]).unwrap();
        }
        b.build().unwrap()
    }

    /// Tensor product of coalgebras: the categorical product in the
    /// cocommutative world. `Δ(x⊗y) = (id⊗τ⊗id)(Δx ⊗ Δy)`, built
    /// entrywise with the Koszul sign from the middle twist.
    pub fn tensor_coalgebra(a: &Coalgebra<usize>, b: &Coalgebra<usize>) -> Coalgebra<usize> {
        let space = tensor(a.space(), b.space());
        let layout_ab = TensorLayout::new(a.space(), b.space());
        let space_layout = TensorLayout::new(&space, &space);
        let la = TensorLayout::new(a.space(), a.space());
        let lb = TensorLayout::new(b.space(), b.space());
        let field = a.field();
        let mut delta = GradedLinearMap::zero(
            space.clone(),
            tensor(&space, &space),
            <usize as Degree>::Shift::default(),
        );
        for d in space.support() {
            let mut block = Matrix::zero(field, space_layout.dim(d), layout_ab.dim(d));
            for &(da, db_, na, nb, _) in layout_ab.segments(d) {
                let ba = a.delta().block(da);
                let bb = b.delta().block(db_);
                for i in 0..na {
                    for j in 0..nb {
                        let col = layout_ab.index(d, da, i, j);
                        for ra in 0..ba.rows() {
                            let va = ba.get(ra, i);
                            if va.is_zero() {
                                continue;
                            }
                            let (a1d, a1i, a2d, a2i) = la.decompose(da, ra);
                            for rb in 0..bb.rows() {
                                let vb = bb.get(rb, j);
                                if vb.is_zero() {
                                    continue;
                                }
                                let (b1d, b1i, b2d, b2i) = lb.decompose(db_, rb);
                                // sign: move b1 (deg b1d) past a2 (deg a2d)
                                let mut v = va.mul(&vb);
                                if field == Field::Q && Degree::swap_sign(b1d, a2d) {
                                    v = v.neg();
                                }
                                let left = layout_ab.index(a1d + b1d, a1d, a1i, b1i);
                                let right = layout_ab.index(a2d + b2d, a2d, a2i, b2i);
                                let row = space_layout.index(
                                    d,
                                    a1d + b1d,
                                    left,
                                    right,
                                );
                                block.add_assign_entry(row, col, &v);
                            }
                        }
                    }
                }
            }
            delta.set_block(d, block);
        }
        let _ = (dd, s1, idb);
        let unit = GradedVectorSpace::unit(field, space.cap());
        let mut counit = GradedLinearMap::zero(
            space.clone(),
            unit,
            <usize as Degree>::Shift::default(),
        );
        {
            let ea = a.counit().block(0);
            let eb = b.counit().block(0);
            let mut blockc = Matrix::zero(field, 1, space.dim(0));
            for i in 0..a.space().dim(0) {
                for j in 0..b.space().dim(0) {
                    let col = layout_ab.index(0, 0, i, j);
                    blockc.set(col / blockc.cols() * 0, col, &ea.get(0, i).mul(&eb.get(0, j)));
                }
            }
            let mut fixed = Matrix::zero(field, 1, space.dim(0));
            for i in 0..a.space().dim(0) {
                for j in 0..b.space().dim(0) {
                    let col = layout_ab.index(0, 0, i, j);
                    fixed.set(0, col, &ea.get(0, i).mul(&eb.get(0, j)));
                }
            }
            let _ = blockc;
            counit.set_block(0usize, fixed);
        }
        let action = match (a.action(), b.action()) {
            (Some(x), Some(y)) => Some(SteenrodAction::cartan_tensor(x, y)),
            _ => None,
        };
        let basepoint = match (a.basepoint(), b.basepoint()) {
            (Some(i), Some(j)) => Some(layout_ab.index(0, 0, i, j)),
            _ => None,
        };
        Coalgebra::from_parts(space, delta, counit, action, basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn terminal_is_valid_and_setlike() {
        for field in [Field::F2, Field::Q] {
            let c = terminal(field, 4);
            let report = validate_full(&c, &ValidateOptions::default());
            assert!(report.is_valid(), "{:?}", report.violations);
            assert_eq!(report.grouplikes.unwrap().cols(), 1);
        }
    }

    #[test]
    fn exterior_is_valid() {
        for field in [Field::F2, Field::Q] {
            for m in [1usize, 2, 3] {
                let c = exterior(field, 5, m);
                let report = validate_full(&c, &ValidateOptions::default());
                assert!(report.is_valid(), "m={m} {:?}", report.violations);
            }
        }
    }

    #[test]
    fn grading_violation_is_rejected_by_the_builder() {
        // Δx = x⊗x in degree m > 0 violates degree additivity.
        let mut b = CoalgebraBuilder::new(Field::F2, 4);
        b.add_generator(0, "1").unwrap();
        b.add_generator(2, "x").unwrap();
        b.comul_term("1", "1", "1", Scalar::one(Field::F2)).unwrap();
        b.comul_term("x", "x", "x", Scalar::one(Field::F2)).unwrap();
        b.counit_value("1", Scalar::one(Field::F2)).unwrap();
        match b.build() {
            Err(Error::Validation(vs)) => {
                assert!(vs.iter().any(|v| v.axiom.contains("degree additivity")));
            }
            other => panic!("expected a degree-additivity rejection, got {other:?}"),
        }
    }

    #[test]
    fn non_coassociative_delta_is_reported() {
        // Tweak Λ(x): Δx = x⊗1 only. Fails counit and cocommutativity too;
        // coassociativity of this particular Δ actually holds, so check
        // the counit axiom is the one reported.
        let mut b = CoalgebraBuilder::new(Field::F2, 3);
        b.add_generator(0, "1").unwrap();
        b.add_generator(1, "x").unwrap();
        let one = Scalar::one(Field::F2);
        b.comul_term("1", "1", "1", one.clone()).unwrap();
        b.comul_term("x", "x", "1", one.clone()).unwrap();
        b.counit_value("1", one).unwrap();
        let c = b.build().unwrap();
        let report = validate_coalgebra(&c, &ValidateOptions::default());
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom.contains("counit") || v.axiom.contains("cocommutativity")));
    }

    #[test]
    fn set_like_search_finds_exactly_the_points() {
        let c = set_like(Field::F2, 3, 3);
        let report = validate_full(&c, &ValidateOptions::default());
        assert!(report.is_valid(), "{:?}", report.violations);
        let g = report.grouplikes.unwrap();
        assert_eq!(g.cols(), 3);
        // Each column is a standard basis vector (the points themselves).
        for k in 0..3 {
            let col = g.column(k);
            let ones = (0..3).filter(|&r| col.get(r, 0).is_one()).count();
            assert_eq!(ones, 1);
        }
    }

    #[test]
    fn divided_power_coalgebra_is_valid() {
        for field in [Field::F2, Field::Q] {
            let c = divided_power(field, 6, 2, 4);
            let report = validate_coalgebra(&c, &ValidateOptions::default());
            // No action; plain axioms plus set-like must pass.
            assert!(report.violations.is_empty(), "{:?}", report.violations);
        }
    }

    #[test]
    fn tensor_coalgebra_is_valid() {
        for field in [Field::F2, Field::Q] {
            let a = exterior(field, 5, 1);
            let b = exterior(field, 5, 2);
            let t = tensor_coalgebra(&a, &b);
            let report = validate_full(&t, &ValidateOptions::default());
            assert!(report.is_valid(), "{field}: {:?}", report.violations);
        }
    }

    #[test]
    fn regular_and_trivial_and_cofree_comodules_validate() {
        for field in [Field::F2, Field::Q] {
            let c = Arc::new(exterior(field, 5, 2));
            let reg = Comodule::regular(c.clone());
            assert!(validate_comodule(&reg, false).is_empty());
            let triv = trivial_comodule(&c).unwrap();
            assert!(validate_comodule(&triv, false).is_empty());
            let mut w = GradedVectorSpace::new(field, 5);
            w.push_label(1usize, "w0".to_string());
            w.push_label(3usize, "w1".to_string());
            let cf = cofree_comodule(&c, &w);
            let vs = validate_comodule(&cf, false);
            assert!(vs.is_empty(), "{field}: {vs:?}");
        }
    }

    #[test]
    fn steenrod_equivariance_violation_is_caught() {
        // Λ(x_1) with a forged action x·Sq^1 = 1 breaks instability.
        let mut c = exterior(Field::F2, 3, 1);
        let mut act = SteenrodAction::trivial(c.space().clone());
        act.set_block(1, 1, Matrix::identity(Field::F2, 1));
        c.action = Some(act);
        let vs = validate_unstable(&c);
        assert!(!vs.is_empty());
    }
}
