//! Graded vector spaces and degree-preserving (or shifted) linear maps.
//!
//! Everything is truncated at a hard internal-degree cap carried by each
//! space; operations never fabricate degrees above the cap. The degree type
//! is generic so that the same machinery serves singly-graded objects
//! (`usize`) and the bigraded objects appearing on cohomotopy pages
//! ([`BiDegree`]).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use super::matrix::Matrix;
use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Grading for spaces and maps. `swap_sign` encodes the Koszul rule for the
/// symmetry isomorphism of the graded tensor product.
pub trait Degree: Copy + Ord + fmt::Debug + fmt::Display {
    /// Additive shifts of this grading (signed).
    type Shift: Copy + Default + PartialEq + fmt::Debug + Add<Output = Self::Shift>;

    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    /// Apply a shift; `None` when the result leaves the grading range.
    fn shift_by(self, s: Self::Shift) -> Option<Self>;
    /// Componentwise comparison against a cap.
    fn within(self, cap: Self) -> bool;
    /// Whether swapping homogeneous elements of these degrees picks up a
    /// sign over Q. Over F2 the sign is immaterial.
    fn swap_sign(a: Self, b: Self) -> bool;
    /// All degrees from zero through the cap, ascending.
    fn all_up_to(cap: Self) -> Vec<Self>;
    /// All ordered decompositions `self = a + b`, in a fixed order.
    fn decompositions(self) -> Vec<(Self, Self)>;
}

impl Degree for usize {
    type Shift = isize;

    fn zero() -> Self {
        0
    }

    fn add(self, other: Self) -> Self {
        self + other
    }

    fn shift_by(self, s: isize) -> Option<Self> {
        let v = self as isize + s;
        (v >= 0).then_some(v as usize)
    }

    fn within(self, cap: Self) -> bool {
        self <= cap
    }

    fn swap_sign(a: Self, b: Self) -> bool {
        (a & 1) == 1 && (b & 1) == 1
    }

    fn all_up_to(cap: Self) -> Vec<Self> {
        (0..=cap).collect()
    }

    fn decompositions(self) -> Vec<(Self, Self)> {
        (0..=self).map(|a| (a, self - a)).collect()
    }
}

/// Bigraded degree `(s, q)`: cohomological degree `s` (cosimplicial
/// direction) and internal degree `q`. The Koszul rule uses both parities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiDegree {
    pub s: usize,
    pub q: usize,
}

impl BiDegree {
    pub fn new(s: usize, q: usize) -> Self {
        BiDegree { s, q }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.q)
    }
}

/// Signed shift of a bidegree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BiShift {
    pub s: isize,
    pub q: isize,
}

impl Add for BiShift {
    type Output = BiShift;
    fn add(self, o: BiShift) -> BiShift {
        BiShift {
            s: self.s + o.s,
            q: self.q + o.q,
        }
    }
}

impl Degree for BiDegree {
    type Shift = BiShift;

    fn zero() -> Self {
        BiDegree { s: 0, q: 0 }
    }

    fn add(self, other: Self) -> Self {
        BiDegree {
            s: self.s + other.s,
            q: self.q + other.q,
        }
    }

    fn shift_by(self, sh: BiShift) -> Option<Self> {
        let s = self.s as isize + sh.s;
        let q = self.q as isize + sh.q;
        (s >= 0 && q >= 0).then(|| BiDegree {
            s: s as usize,
            q: q as usize,
        })
    }

    fn within(self, cap: Self) -> bool {
        self.s <= cap.s && self.q <= cap.q
    }

    fn swap_sign(a: Self, b: Self) -> bool {
        ((a.s * b.s) + (a.q * b.q)) & 1 == 1
    }

    fn all_up_to(cap: Self) -> Vec<Self> {
        let mut out = Vec::new();
        for s in 0..=cap.s {
            for q in 0..=cap.q {
                out.push(BiDegree { s, q });
            }
        }
        out
    }

    fn decompositions(self) -> Vec<(Self, Self)> {
        let mut out = Vec::new();
        for s in 0..=self.s {
            for q in 0..=self.q {
                out.push((
                    BiDegree { s, q },
                    BiDegree {
                        s: self.s - s,
                        q: self.q - q,
                    },
                ));
            }
        }
        out
    }
}

/// A finite-type graded vector space truncated at an internal-degree cap.
/// Basis labels are unique within each degree; degrees above the cap are
/// implicitly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVectorSpace<D: Degree = usize> {
    field: Field,
    cap: D,
    basis: BTreeMap<D, Vec<String>>,
}

impl<D: Degree> GradedVectorSpace<D> {
    pub fn new(field: Field, cap: D) -> Self {
        GradedVectorSpace {
            field,
            cap,
            basis: BTreeMap::new(),
        }
    }

    /// The monoidal unit: one basis element `1` in degree zero.
    pub fn unit(field: Field, cap: D) -> Self {
        let mut v = Self::new(field, cap);
        v.push_label(D::zero(), String::from("1"));
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cap(&self) -> D {
        self.cap
    }

    pub fn dim(&self, d: D) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn labels(&self, d: D) -> &[String] {
        self.basis.get(&d).map_or(&[], Vec::as_slice)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<D> {
        self.basis.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn push_label(&mut self, d: D, label: String) {
        assert!(d.within(self.cap), "degree above cap");
        let v = self.basis.entry(d).or_default();
        assert!(
            !v.contains(&label),
            "duplicate basis label within a degree"
        );
        v.push(label);
    }

    pub fn label_index(&self, d: D, label: &str) -> Option<usize> {
        self.basis.get(&d)?.iter().position(|l| l == label)
    }

    /// Same dimensions degree by degree.
    pub fn same_dims(&self, other: &Self) -> bool {
        let degs: alloc::collections::BTreeSet<D> = self
            .support()
            .into_iter()
            .chain(other.support())
            .collect();
        degs.into_iter().all(|d| self.dim(d) == other.dim(d))
    }

    pub fn dims_table(&self) -> Vec<(D, usize)> {
        self.basis.iter().map(|(d, v)| (*d, v.len())).collect()
    }
}

/// A graded linear map with a fixed shift: the block at source degree `d`
/// maps into target degree `d + shift`. Absent blocks are zero.
#[derive(Debug, Clone)]
pub struct GradedLinearMap<D: Degree = usize> {
    source: GradedVectorSpace<D>,
    target: GradedVectorSpace<D>,
    shift: D::Shift,
    blocks: BTreeMap<D, Matrix>,
}

impl<D: Degree> GradedLinearMap<D> {
    pub fn zero(
        source: GradedVectorSpace<D>,
        target: GradedVectorSpace<D>,
        shift: D::Shift,
    ) -> Self {
        assert_eq!(source.field(), target.field(), "field mismatch");
        GradedLinearMap {
            source,
            target,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedVectorSpace<D>) -> Self {
        let mut f = Self::zero(space.clone(), space.clone(), D::Shift::default());
        for d in space.support() {
            f.set_block(d, Matrix::identity(space.field(), space.dim(d)));
        }
        f
    }

    pub fn source(&self) -> &GradedVectorSpace<D> {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace<D> {
        &self.target
    }

    pub fn shift(&self) -> D::Shift {
        self.shift
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// The block at source degree `d` (zero matrix when absent).
    pub fn block(&self, d: D) -> Matrix {
        if let Some(b) = self.blocks.get(&d) {
            return b.clone();
        }
        let tdim = self
            .target_degree(d)
            .map_or(0, |t| self.target.dim(t));
        Matrix::zero(self.field(), tdim, self.source.dim(d))
    }

    /// Target degree of the block at source degree `d`, if in range and
    /// within the cap.
    pub fn target_degree(&self, d: D) -> Option<D> {
        let t = d.shift_by(self.shift)?;
        t.within(self.target.cap()).then_some(t)
    }

    pub fn set_block(&mut self, d: D, m: Matrix) {
        let tdim = self.target_degree(d).map_or(0, |t| self.target.dim(t));
        assert_eq!(m.rows(), tdim, "block row count mismatch");
        assert_eq!(m.cols(), self.source.dim(d), "block col count mismatch");
        if m.is_zero() {
            self.blocks.remove(&d);
        } else {
            self.blocks.insert(d, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Bit-exact equality of blocks (sources/targets must have equal dims).
    pub fn equal(&self, other: &Self) -> bool {
        if self.shift != other.shift
            || !self.source.same_dims(&other.source)
            || !self.target.same_dims(&other.target)
        {
            return false;
        }
        let degs: alloc::collections::BTreeSet<D> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .copied()
            .collect();
        degs.into_iter().all(|d| self.block(d) == other.block(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.shift == other.shift, "shift mismatch in add");
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.shift);
        let degs: alloc::collections::BTreeSet<D> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .copied()
            .collect();
        for d in degs {
            out.set_block(d, self.block(d).add(&other.block(d)));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.shift);
        for (d, b) in &self.blocks {
            out.set_block(*d, b.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.source.clone(), self.target.clone(), self.shift);
        for (d, b) in &self.blocks {
            out.set_block(*d, b.scale(s));
        }
        out
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert!(
            self.source.same_dims(&other.target),
            "composition domain mismatch"
        );
        let shift = self.shift + other.shift;
        let mut out = Self::zero(other.source.clone(), self.target.clone(), shift);
        for d in other.source.support() {
            let Some(mid) = d.shift_by(other.shift) else {
                continue;
            };
            if !mid.within(other.target.cap()) {
                continue;
            }
            let b = self.block(mid).mul(&other.block(d));
            if out.target_degree(d).is_some() {
                out.set_block(d, b);
            } else {
                assert!(b.is_zero(), "composite leaves the grading range");
            }
        }
        out
    }

    /// Kernel with deterministic labels `ker:<degree>:<index>` and its
    /// inclusion. `f ∘ inclusion = 0` exactly.
    pub fn kernel(&self) -> (GradedVectorSpace<D>, GradedLinearMap<D>) {
        let mut space = GradedVectorSpace::new(self.field(), self.source.cap());
        let mut bases: BTreeMap<D, Matrix> = BTreeMap::new();
        for d in self.source.support() {
            let k = self.block(d).kernel_basis();
            for i in 0..k.cols() {
                space.push_label(d, format!("ker:{d}:{i}"));
            }
            if k.cols() > 0 {
                bases.insert(d, k);
            }
        }
        let mut incl = GradedLinearMap::zero(space.clone(), self.source.clone(), D::Shift::default());
        for (d, b) in bases {
            incl.set_block(d, b);
        }
        (space, incl)
    }

    /// Cokernel of the map, with the projection from the target. Labels are
    /// `cok:<degree>:<index>`; the projection kills the image exactly.
    pub fn cokernel(&self) -> (GradedVectorSpace<D>, GradedLinearMap<D>) {
        let mut space = GradedVectorSpace::new(self.field(), self.target.cap());
        let mut projs: BTreeMap<D, Matrix> = BTreeMap::new();
        for t in self.target.support() {
            // Collect all blocks landing in target degree t.
            let mut images: Vec<Matrix> = Vec::new();
            for d in self.source.support() {
                if self.target_degree(d) == Some(t) {
                    images.push(self.block(d));
                }
            }
            let span = if images.is_empty() {
                Matrix::zero(self.field(), self.target.dim(t), 0)
            } else {
                let refs: Vec<&Matrix> = images.iter().collect();
                Matrix::hstack(&refs)
            };
            let (proj, _free) = subspace_complement(&span);
            for i in 0..proj.rows() {
                space.push_label(t, format!("cok:{t}:{i}"));
            }
            projs.insert(t, proj);
        }
        let mut proj = GradedLinearMap::zero(self.target.clone(), space.clone(), D::Shift::default());
        for (t, p) in projs {
            proj.set_block(t, p);
        }
        (space, proj)
    }

    /// Image as a subspace of the target, with deterministic basis (pivot
    /// columns of the blocks) and inclusion. Labels `im:<degree>:<index>`.
    pub fn image(&self) -> (GradedVectorSpace<D>, GradedLinearMap<D>) {
        let mut space = GradedVectorSpace::new(self.field(), self.target.cap());
        let mut bases: BTreeMap<D, Matrix> = BTreeMap::new();
        for t in self.target.support() {
            let mut images: Vec<Matrix> = Vec::new();
            for d in self.source.support() {
                if self.target_degree(d) == Some(t) {
                    images.push(self.block(d));
                }
            }
            if images.is_empty() {
                continue;
            }
            let refs: Vec<&Matrix> = images.iter().collect();
            let b = Matrix::hstack(&refs).column_space_basis();
            for i in 0..b.cols() {
                space.push_label(t, format!("im:{t}:{i}"));
            }
            if b.cols() > 0 {
                bases.insert(t, b);
            }
        }
        let mut incl = GradedLinearMap::zero(space.clone(), self.target.clone(), D::Shift::default());
        for (t, b) in bases {
            incl.set_block(t, b);
        }
        (space, incl)
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(Matrix::rank).sum()
    }

    /// Factor `self` through an inclusion `incl: W -> target`: the unique
    /// `g` with `incl ∘ g = self`. Errors when the image escapes `W`.
    pub fn corestrict(&self, incl: &GradedLinearMap<D>) -> Result<GradedLinearMap<D>> {
        assert!(incl.shift == D::Shift::default(), "inclusion must be degree 0");
        let mut out = GradedLinearMap::zero(self.source.clone(), incl.source.clone(), self.shift);
        for d in self.source.support() {
            let Some(t) = self.target_degree(d) else {
                assert!(self.block(d).is_zero());
                continue;
            };
            let b = self.block(d);
            if b.is_zero() {
                continue;
            }
            match incl.block(t).solve(&b) {
                Some(x) => out.set_block(d, x),
                None => {
                    return Err(Error::Unsolvable(format!(
                        "image not contained in subspace at degree {t}"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Restrict along an inclusion of the source: `self ∘ incl`.
    pub fn restrict(&self, incl: &GradedLinearMap<D>) -> GradedLinearMap<D> {
        self.compose(incl)
    }
}

/// Deterministic complement of a subspace of `F^dim` spanned by the columns
/// of `span`. Returns the projection matrix (quotient coordinates indexed by
/// the free columns, ascending) and the free column indices.
pub fn subspace_complement(span: &Matrix) -> (Matrix, Vec<usize>) {
    let dim = span.rows();
    let r = span.transpose().rref();
    let pivots = &r.pivots;
    let reduced = &r.reduced;
    let mut is_pivot = alloc::vec![false; dim];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !is_pivot[*c]).collect();
    let mut proj = Matrix::zero(span.field(), free.len(), dim);
    for (k, &j) in free.iter().enumerate() {
        proj.set(k, j, &Scalar::one(span.field()));
    }
    for (row, &p) in pivots.iter().enumerate() {
        for (k, &j) in free.iter().enumerate() {
            let v = reduced.get(row, j);
            if !v.is_zero() {
                proj.set(k, p, &v.neg());
            }
        }
    }
    (proj, free)
}

/// The span of a set of columns per degree, as a subspace with inclusion.
pub fn span_subspace<D: Degree>(
    ambient: &GradedVectorSpace<D>,
    columns: &BTreeMap<D, Matrix>,
    tag: &str,
) -> (GradedVectorSpace<D>, GradedLinearMap<D>) {
    let mut space = GradedVectorSpace::new(ambient.field(), ambient.cap());
    let mut incl_blocks = BTreeMap::new();
    for (d, m) in columns {
        let b = m.column_space_basis();
        for i in 0..b.cols() {
            space.push_label(*d, format!("{tag}:{d}:{i}"));
        }
        if b.cols() > 0 {
            incl_blocks.insert(*d, b);
        }
    }
    let mut incl = GradedLinearMap::zero(space.clone(), ambient.clone(), D::Shift::default());
    for (d, b) in incl_blocks {
        incl.set_block(d, b);
    }
    (space, incl)
}

/// Joint kernel of several maps out of a common source.
pub fn joint_kernel<D: Degree>(
    maps: &[&GradedLinearMap<D>],
) -> (GradedVectorSpace<D>, GradedLinearMap<D>) {
    assert!(!maps.is_empty());
    let source = maps[0].source().clone();
    let mut space = GradedVectorSpace::new(source.field(), source.cap());
    let mut bases: BTreeMap<D, Matrix> = BTreeMap::new();
    for d in source.support() {
        let blocks: Vec<Matrix> = maps.iter().map(|f| f.block(d)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let k = Matrix::vstack(&refs).kernel_basis();
        for i in 0..k.cols() {
            space.push_label(d, format!("ker:{d}:{i}"));
        }
        if k.cols() > 0 {
            bases.insert(d, k);
        }
    }
    let mut incl = GradedLinearMap::zero(space.clone(), source, D::Shift::default());
    for (d, b) in bases {
        incl.set_block(d, b);
    }
    (space, incl)
}

/// Layout of a binary tensor product: flat index bookkeeping for
/// `(V ⊗ W)_d = ⊕_{k+l=d} V_k ⊗ W_l` in the canonical decomposition order.
pub struct TensorLayout<D: Degree> {
    /// Per degree: list of `(k, l, dim V_k, dim W_l, offset)`.
    segments: BTreeMap<D, Vec<(D, D, usize, usize, usize)>>,
}

impl<D: Degree> TensorLayout<D> {
    pub fn new(v: &GradedVectorSpace<D>, w: &GradedVectorSpace<D>) -> Self {
        assert_eq!(v.field(), w.field(), "field mismatch in tensor");
        assert!(v.cap() == w.cap(), "cap mismatch in tensor");
        let cap = v.cap();
        let mut segments = BTreeMap::new();
        for d in D::all_up_to(cap) {
            let mut segs = Vec::new();
            let mut off = 0usize;
            for (k, l) in d.decompositions() {
                let (dv, dw) = (v.dim(k), w.dim(l));
                if dv == 0 || dw == 0 {
                    continue;
                }
                segs.push((k, l, dv, dw, off));
                off += dv * dw;
            }
            if !segs.is_empty() {
                segments.insert(d, segs);
            }
        }
        TensorLayout { segments }
    }

    pub fn dim(&self, d: D) -> usize {
        self.segments
            .get(&d)
            .map_or(0, |s| s.iter().map(|(_, _, a, b, _)| a * b).sum())
    }

    /// Flat index of `v_i ⊗ w_j` with `i` in degree `k`, `j` in degree `l`.
    pub fn index(&self, d: D, k: D, i: usize, j: usize) -> usize {
        let segs = self.segments.get(&d).expect("empty tensor degree");
        for (sk, _sl, dv, dw, off) in segs {
            if *sk == k {
                assert!(i < *dv && j < *dw);
                return off + i * dw + j;
            }
        }
        panic!("no tensor segment for this decomposition");
    }

    /// Inverse of `index`: `(k, i, l, j)` for a flat position.
    pub fn decompose(&self, d: D, flat: usize) -> (D, usize, D, usize) {
        let segs = self.segments.get(&d).expect("empty tensor degree");
        for (k, l, dv, dw, off) in segs {
            if flat >= *off && flat < off + dv * dw {
                let rel = flat - off;
                return (*k, rel / dw, *l, rel % dw);
            }
        }
        panic!("flat index out of range");
    }

    pub fn segments(&self, d: D) -> &[(D, D, usize, usize, usize)] {
        self.segments.get(&d).map_or(&[], Vec::as_slice)
    }
}

/// The graded tensor product, truncated at the common cap. Basis labels are
/// ordered pairs `(a)⊗(b)`.
pub fn tensor<D: Degree>(
    v: &GradedVectorSpace<D>,
    w: &GradedVectorSpace<D>,
) -> GradedVectorSpace<D> {
    assert_eq!(v.field(), w.field());
    let layout = TensorLayout::new(v, w);
    let mut out = GradedVectorSpace::new(v.field(), v.cap());
    for d in D::all_up_to(v.cap()) {
        for &(k, l, dv, dw, _) in layout.segments(d) {
            for i in 0..dv {
                for j in 0..dw {
                    out.push_label(
                        d,
                        format!("({})⊗({})", v.labels(k)[i], w.labels(l)[j]),
                    );
                }
            }
        }
    }
    out
}

/// Tensor product of two degree-preserving maps (no Koszul signs arise for
/// degree-0 maps).
pub fn tensor_maps<D: Degree>(
    f: &GradedLinearMap<D>,
    g: &GradedLinearMap<D>,
) -> GradedLinearMap<D> {
    assert!(f.shift() == D::Shift::default(), "tensor_maps needs degree-0 maps");
    assert!(g.shift() == D::Shift::default(), "tensor_maps needs degree-0 maps");
    let src = tensor(f.source(), g.source());
    let tgt = tensor(f.target(), g.target());
    let src_layout = TensorLayout::new(f.source(), g.source());
    let tgt_layout = TensorLayout::new(f.target(), g.target());
    let field = f.field();
    let mut out = GradedLinearMap::zero(src.clone(), tgt, D::Shift::default());
    for d in src.support() {
        let mut block = Matrix::zero(field, tgt_layout.dim(d), src_layout.dim(d));
        for &(k, l, dv, dw, _) in src_layout.segments(d) {
            let fb = f.block(k);
            let gb = g.block(l);
            for i in 0..dv {
                for j in 0..dw {
                    let col = src_layout.index(d, k, i, j);
                    for fi in 0..fb.rows() {
                        let fv = fb.get(fi, i);
                        if fv.is_zero() {
                            continue;
                        }
                        for gj in 0..gb.rows() {
                            let gv = gb.get(gj, j);
                            if gv.is_zero() {
                                continue;
                            }
                            let row = tgt_layout.index(d, k, fi, gj);
                            block.add_assign_entry(row, col, &fv.mul(&gv));
                        }
                    }
                }
            }
        }
        out.set_block(d, block);
    }
    out
}

/// The symmetry isomorphism `τ: V ⊗ W -> W ⊗ V`. Over Q it carries the
/// Koszul sign `(-1)^{|a||b|}`; over F2 it is a permutation.
pub fn tau<D: Degree>(
    v: &GradedVectorSpace<D>,
    w: &GradedVectorSpace<D>,
) -> GradedLinearMap<D> {
    let src = tensor(v, w);
    let tgt = tensor(w, v);
    let src_layout = TensorLayout::new(v, w);
    let tgt_layout = TensorLayout::new(w, v);
    let field = v.field();
    let mut out = GradedLinearMap::zero(src.clone(), tgt, D::Shift::default());
    for d in src.support() {
        let mut block = Matrix::zero(field, tgt_layout.dim(d), src_layout.dim(d));
        for &(k, l, dv, dw, _) in src_layout.segments(d) {
            let sign = if field == Field::Q && D::swap_sign(k, l) {
                Scalar::from_int(field, -1)
            } else {
                Scalar::one(field)
            };
            for i in 0..dv {
                for j in 0..dw {
                    let col = src_layout.index(d, k, i, j);
                    let row = tgt_layout.index(d, l, j, i);
                    block.set(row, col, &sign);
                }
            }
        }
        out.set_block(d, block);
    }
    out
}

/// Associativity isomorphism `(V ⊗ W) ⊗ U -> V ⊗ (W ⊗ U)` (a permutation,
/// no signs).
pub fn associator<D: Degree>(
    v: &GradedVectorSpace<D>,
    w: &GradedVectorSpace<D>,
    u: &GradedVectorSpace<D>,
) -> GradedLinearMap<D> {
    let vw = tensor(v, w);
    let wu = tensor(w, u);
    let src = tensor(&vw, u);
    let tgt = tensor(v, &wu);
    let outer_src = TensorLayout::new(&vw, u);
    let inner_src = TensorLayout::new(v, w);
    let outer_tgt = TensorLayout::new(v, &wu);
    let inner_tgt = TensorLayout::new(w, u);
    let field = v.field();
    let one = Scalar::one(field);
    let mut out = GradedLinearMap::zero(src.clone(), tgt, D::Shift::default());
    for d in src.support() {
        let mut block = Matrix::zero(field, outer_tgt.dim(d), outer_src.dim(d));
        for &(kl, m, dkl, dm, _) in outer_src.segments(d) {
            for a in 0..dkl {
                let (k, i, l, j) = inner_src.decompose(kl, a);
                for c in 0..dm {
                    let col = outer_src.index(d, kl, a, c);
                    let lm = l.add(m);
                    let inner = inner_tgt.index(lm, l, j, c);
                    let row = outer_tgt.index(d, k, i, inner);
                    block.set(row, col, &one);
                }
            }
        }
        out.set_block(d, block);
    }
    out
}

/// Left unit isomorphism `F ⊗ V -> V` where `F` is the unit space.
pub fn left_unitor<D: Degree>(
    unit: &GradedVectorSpace<D>,
    v: &GradedVectorSpace<D>,
) -> GradedLinearMap<D> {
    assert_eq!(unit.total_dim(), 1, "unitor needs the unit space");
    let src = tensor(unit, v);
    let mut out = GradedLinearMap::zero(src, v.clone(), D::Shift::default());
    for d in v.support() {
        out.set_block(d, Matrix::identity(v.field(), v.dim(d)));
    }
    out
}

/// Right unit isomorphism `V ⊗ F -> V`.
pub fn right_unitor<D: Degree>(
    v: &GradedVectorSpace<D>,
    unit: &GradedVectorSpace<D>,
) -> GradedLinearMap<D> {
    assert_eq!(unit.total_dim(), 1, "unitor needs the unit space");
    let src = tensor(v, unit);
    let mut out = GradedLinearMap::zero(src, v.clone(), D::Shift::default());
    for d in v.support() {
        out.set_block(d, Matrix::identity(v.field(), v.dim(d)));
    }
    out
}

/// Quotient `V / U` with `U` given by an inclusion into `V`. Deterministic
/// complement-basis labels `q:<degree>:<index>`; rejects non-injective
/// inclusions.
pub fn quotient<D: Degree>(
    v: &GradedVectorSpace<D>,
    inclusion: &GradedLinearMap<D>,
) -> Result<(GradedVectorSpace<D>, GradedLinearMap<D>)> {
    assert!(inclusion.shift() == D::Shift::default());
    assert!(inclusion.target().same_dims(v), "inclusion target mismatch");
    // Injectivity check per degree.
    for d in inclusion.source().support() {
        let b = inclusion.block(d);
        if b.rank() < b.cols() {
            return Err(Error::NotInjective(format!("at degree {d}")));
        }
    }
    let mut space = GradedVectorSpace::new(v.field(), v.cap());
    let mut projs = BTreeMap::new();
    for d in v.support() {
        let span = inclusion.block(d);
        let (proj, _) = subspace_complement(&span);
        for i in 0..proj.rows() {
            space.push_label(d, format!("q:{d}:{i}"));
        }
        projs.insert(d, proj);
    }
    let mut proj = GradedLinearMap::zero(v.clone(), space.clone(), D::Shift::default());
    for (d, p) in projs {
        proj.set_block(d, p);
    }
    Ok((space, proj))
}

/// Direct sum with optional label tags (`tag:label`); returns inclusions
/// and projections for each part in order.
#[allow(clippy::type_complexity)]
pub fn direct_sum<D: Degree>(
    parts: &[(Option<&str>, &GradedVectorSpace<D>)],
) -> (
    GradedVectorSpace<D>,
    Vec<GradedLinearMap<D>>,
    Vec<GradedLinearMap<D>>,
) {
    assert!(!parts.is_empty());
    let field = parts[0].1.field();
    let cap = parts[0].1.cap();
    let mut total = GradedVectorSpace::new(field, cap);
    for (tag, p) in parts {
        for d in p.support() {
            for l in p.labels(d) {
                let label = match tag {
                    Some(t) => format!("{t}:{l}"),
                    None => l.clone(),
                };
                total.push_label(d, label);
            }
        }
    }
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    let mut offset: BTreeMap<D, usize> = BTreeMap::new();
    for (_, p) in parts {
        let mut incl = GradedLinearMap::zero((*p).clone(), total.clone(), D::Shift::default());
        let mut proj = GradedLinearMap::zero(total.clone(), (*p).clone(), D::Shift::default());
        for d in p.support() {
            let off = *offset.get(&d).unwrap_or(&0);
            let mut bi = Matrix::zero(field, total.dim(d), p.dim(d));
            let mut bp = Matrix::zero(field, p.dim(d), total.dim(d));
            for i in 0..p.dim(d) {
                bi.set(off + i, i, &Scalar::one(field));
                bp.set(i, off + i, &Scalar::one(field));
            }
            incl.set_block(d, bi);
            proj.set_block(d, bp);
            offset.insert(d, off + p.dim(d));
        }
        incls.push(incl);
        projs.push(proj);
    }
    (total, incls, projs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn space_f2(dims: &[usize]) -> GradedVectorSpace {
        let cap = dims.len().saturating_sub(1);
        let mut v = GradedVectorSpace::new(Field::F2, cap);
        for (d, &n) in dims.iter().enumerate() {
            for i in 0..n {
                v.push_label(d, format!("e{d}_{i}"));
            }
        }
        v
    }

    #[test]
    fn tensor_dims_follow_the_convolution_formula() {
        let v = space_f2(&[1, 2, 1]);
        let w = space_f2(&[2, 0, 3]);
        let t = tensor(&v, &w);
        for q in 0..=2usize {
            let expect: usize = (0..=q).map(|k| v.dim(k) * w.dim(q - k)).sum();
            assert_eq!(t.dim(q), expect);
        }
    }

    #[test]
    fn tau_is_an_involution() {
        let v = space_f2(&[1, 2]);
        let w = space_f2(&[2, 1]);
        let t1 = tau(&v, &w);
        let t2 = tau(&w, &v);
        let round = t2.compose(&t1);
        assert!(round.equal(&GradedLinearMap::identity(round.source())));
    }

    #[test]
    fn tau_koszul_sign_on_odd_degrees_over_q() {
        let mut v = GradedVectorSpace::new(Field::Q, 2);
        v.push_label(1usize, "a".to_string());
        let mut w = GradedVectorSpace::new(Field::Q, 2);
        w.push_label(1usize, "b".to_string());
        let t = tau(&v, &w);
        // τ(a⊗b) = −(b⊗a) when |a| = |b| = 1.
        assert_eq!(t.block(2).get(0, 0), Scalar::from_int(Field::Q, -1));
        // And τ² = id even with signs.
        let round = tau(&w, &v).compose(&t);
        assert!(round.equal(&GradedLinearMap::identity(round.source())));
    }

    #[test]
    fn kernel_of_sum_map_has_dimension_one() {
        // f: F² → F in degree 0, (a,b) ↦ a+b over F2.
        let v = space_f2(&[2]);
        let w = space_f2(&[1]);
        let mut f = GradedLinearMap::zero(v, w, 0);
        let mut b = Matrix::zero(Field::F2, 1, 2);
        b.set(0, 0, &Scalar::one(Field::F2));
        b.set(0, 1, &Scalar::one(Field::F2));
        f.set_block(0usize, b);
        let (k, incl) = f.kernel();
        assert_eq!(k.dim(0usize), 1);
        assert_eq!(k.labels(0usize)[0], "ker:0:0");
        assert!(f.compose(&incl).is_zero());
    }

    #[test]
    fn kernel_edge_cases() {
        let v = space_f2(&[2, 3]);
        let zero = GradedLinearMap::zero(v.clone(), v.clone(), 0);
        let (k, _) = zero.kernel();
        assert!(k.same_dims(&v));
        let id = GradedLinearMap::identity(&v);
        let (k, _) = id.kernel();
        assert!(k.is_zero());
    }

    #[test]
    fn quotient_examples() {
        // V/0 = V and V/V = 0.
        let v = space_f2(&[1, 2]);
        let zero_space = GradedVectorSpace::new(Field::F2, 1);
        let incl0 = GradedLinearMap::zero(zero_space, v.clone(), 0);
        let (q, _) = quotient(&v, &incl0).unwrap();
        assert!(q.same_dims(&v));

        let idv = GradedLinearMap::identity(&v);
        let (q, proj) = quotient(&v, &idv).unwrap();
        assert!(q.is_zero());
        assert!(proj.compose(&idv).is_zero());

        // F³/span(e1+e2) over F2 has dimension 2.
        let v3 = space_f2(&[3]);
        let mut line = GradedVectorSpace::new(Field::F2, 0);
        line.push_label(0usize, "u".to_string());
        let mut incl = GradedLinearMap::zero(line, v3.clone(), 0);
        let mut b = Matrix::zero(Field::F2, 3, 1);
        b.set(0, 0, &Scalar::one(Field::F2));
        b.set(1, 0, &Scalar::one(Field::F2));
        incl.set_block(0usize, b);
        let (q, proj) = quotient(&v3, &incl).unwrap();
        assert_eq!(q.dim(0usize), 2);
        assert!(proj.compose(&incl).is_zero());
    }

    #[test]
    fn quotient_rejects_non_injective_inclusion() {
        let v = space_f2(&[1]);
        let big = space_f2(&[2]);
        let f = GradedLinearMap::zero(big, v.clone(), 0);
        assert!(matches!(quotient(&v, &f), Err(Error::NotInjective(_))));
    }

    #[test]
    fn associator_is_an_isomorphism_compatible_with_dims() {
        let v = space_f2(&[1, 1]);
        let w = space_f2(&[2, 0]);
        let u = space_f2(&[1, 1]);
        let a = associator(&v, &w, &u);
        for d in 0..=1usize {
            let b = a.block(d);
            assert_eq!(b.rank(), b.cols());
            assert_eq!(b.rows(), b.cols());
        }
    }

    #[test]
    fn functoriality_of_kernels_on_commuting_squares() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..20 {
            // Square: f: V→W, and automorphism-ish maps a: V→V', b: W→W'
            // with f' ∘ a = b ∘ f. Take V' = V, W' = W, a = id, b = id,
            // f' = f composed with random commuting data is trivial; instead
            // test the induced map on kernels for b ∘ f = f' ∘ a with
            // a random f and f' = b ∘ f ∘ a^{-1} where a is a permutation.
            let v = space_f2(&[3]);
            let w = space_f2(&[2]);
            let mut f = GradedLinearMap::zero(v.clone(), w.clone(), 0);
            f.set_block(
                0usize,
                Matrix::from_fn(Field::F2, 2, 3, |_, _| Scalar::F2(rng.gen_bool(0.5))),
            );
            // a: permutation of V's coordinates.
            let perm = if rng.gen_bool(0.5) { [1usize, 0, 2] } else { [2usize, 1, 0] };
            let mut a = GradedLinearMap::zero(v.clone(), v.clone(), 0);
            a.set_block(
                0usize,
                Matrix::from_fn(Field::F2, 3, 3, |r, c| Scalar::F2(perm[c] == r)),
            );
            let f_prime = f.compose(&a); // then f' ∘ a^{-1} = f ... we test f' = f∘a
            // Square: f' ∘ id = f ∘ a commutes by construction. Induced map
            // on kernels: a maps ker(f') into ker(f).
            let (_, incl_kp) = f_prime.kernel();
            let (_, incl_k) = f.kernel();
            let carried = a.compose(&incl_kp);
            // carried factors through ker(f):
            let g = carried.corestrict(&incl_k).expect("kernels are functorial");
            assert!(incl_k.compose(&g).equal(&carried));
        }
    }

    #[test]
    fn bidegree_enumeration_and_signs() {
        let cap = BiDegree::new(1, 2);
        assert_eq!(BiDegree::all_up_to(cap).len(), 6);
        assert!(BiDegree::swap_sign(BiDegree::new(1, 0), BiDegree::new(1, 0)));
        assert!(!BiDegree::swap_sign(BiDegree::new(1, 1), BiDegree::new(1, 1)));
        assert!(BiDegree::swap_sign(BiDegree::new(0, 1), BiDegree::new(0, 1)));
    }
}
