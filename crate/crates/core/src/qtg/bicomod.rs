//! Bicomodules over a Hopf algebra `L` and algebras among them.

use std::sync::Arc;

use crate::corep::{check_comodule, Comodule};
use crate::engine::{check_tuples, CheckOptions, Outcome};
use crate::error::{Error, Result};
use crate::exact::{apply_mid, Accumulator, Q, Shape, Space, SparseMatrix, SparseVec};
use crate::qtg::hopf::HopfAlgebraData;
use crate::report::{Check, CheckReport};
use crate::wba::{check_algebra, AlgebraData};

/// `λ: X → L ⊗ X` and `ρ: X → X ⊗ L`. The right coaction is kept as a
/// [`Comodule`] over `L`.
#[derive(Debug, Clone)]
pub struct Bicomodule {
    l: Arc<HopfAlgebraData>,
    left: SparseMatrix,
    right: Arc<Comodule>,
}

impl Bicomodule {
    pub fn new(name: impl Into<String>, l: Arc<HopfAlgebraData>, space: Space, left: SparseMatrix, right: SparseMatrix) -> Result<Self> {
        let d = space.dim();
        let right = Arc::new(Comodule::new(name, space.clone(), right, l.wba().clone())?);
        if left.ncols() != d || left.nrows() != d * l.dim() {
            return Err(Error::mismatch(format!("left coaction must map X to L ⊗ X of dimension {}", d * l.dim())));
        }
        let left = left.with_shapes(Shape::of(&space), Shape::new(vec![l.wba().space().clone(), space]))?;
        Ok(Bicomodule { l, left, right })
    }

    pub fn from_fn(
        name: impl Into<String>,
        l: Arc<HopfAlgebraData>,
        space: Space,
        left: impl Fn(usize) -> SparseVec,
        right: impl Fn(usize) -> SparseVec,
    ) -> Result<Self> {
        let sh = Shape::of(&space);
        let lh = l.wba().space().clone();
        let lm = SparseMatrix::new(sh.clone(), Shape::new(vec![lh.clone(), space.clone()]), (0..space.dim()).map(left).collect())?;
        let rm = SparseMatrix::new(sh, Shape::new(vec![space.clone(), lh]), (0..space.dim()).map(right).collect())?;
        Bicomodule::new(name, l, space, lm, rm)
    }

    /// `L` with `λ = ρ = Δ_L`.
    pub fn regular(l: &Arc<HopfAlgebraData>) -> Self {
        let delta = l.wba().coalg().comult().clone();
        Bicomodule::new("L", l.clone(), l.wba().space().clone(), delta.clone(), delta).expect("Δ has the shape of both coactions")
    }

    /// The unit object `𝕜` with `λ(1) = 1_L ⊗ 1` and `ρ(1) = 1 ⊗ 1_L`.
    pub fn unit(l: &Arc<HopfAlgebraData>) -> Self {
        let space = Space::new(["1"]).expect("single label");
        let one = l.one().clone();
        Bicomodule::from_fn("𝕜", l.clone(), space, |_| one.clone(), |_| one.clone()).expect("unit coactions")
    }

    /// Basis element `i` coacts by the basis element `degrees[i]` of `L` on
    /// both sides: `λ(xᵢ) = gᵢ ⊗ xᵢ`, `ρ(xᵢ) = xᵢ ⊗ gᵢ`.
    pub fn graded(name: impl Into<String>, l: &Arc<HopfAlgebraData>, space: Space, degrees: &[usize]) -> Result<Self> {
        let (d, nl) = (space.dim(), l.dim());
        if degrees.len() != d || degrees.iter().any(|&g| g >= nl) {
            return Err(Error::mismatch("one degree in L per basis element"));
        }
        Bicomodule::from_fn(
            name,
            l.clone(),
            space,
            |i| SparseVec::basis(nl * d, degrees[i] * d + i),
            |i| SparseVec::basis(d * nl, i * nl + degrees[i]),
        )
    }

    /// `X ⊗ X'` with `λ(x ⊗ x') = x₋₁x'₋₁ ⊗ x₀ ⊗ x'₀` and
    /// `ρ(x ⊗ x') = x₀ ⊗ x'₀ ⊗ x₁x'₁`.
    pub fn tensor(&self, other: &Bicomodule) -> Result<Bicomodule> {
        if !Arc::ptr_eq(&self.l, &other.l) {
            return Err(Error::mismatch("bicomodules over different Hopf algebras"));
        }
        let (dx, dy, nl) = (self.dim(), other.dim(), self.l.dim());
        let lmul = self.l.wba().alg();
        let labels: Vec<String> =
            self.space().labels().iter().flat_map(|a| other.space().labels().iter().map(move |b| format!("({a} ⊗ {b})"))).collect();
        let space = Space::new(labels)?;
        let mut left = Vec::with_capacity(dx * dy);
        let mut right = Vec::with_capacity(dx * dy);
        for i in 0..dx {
            for j in 0..dy {
                let mut la = Accumulator::new(nl * dx * dy);
                for (s, c) in self.left.col(i).entries() {
                    for (t, c2) in other.left.col(j).entries() {
                        let g = lmul.mul_basis(s / dx, t / dy)?;
                        let x = SparseVec::basis(dx * dy, (s % dx) * dy + t % dy);
                        la.add_scaled(&(c * c2), &g.kron(&x));
                    }
                }
                left.push(la.finish());
                let mut ra = Accumulator::new(dx * dy * nl);
                for (s, c) in self.right.rho_basis(i).entries() {
                    for (t, c2) in other.right.rho_basis(j).entries() {
                        let g = lmul.mul_basis(s % nl, t % nl)?;
                        let x = SparseVec::basis(dx * dy, (s / nl) * dy + t / nl);
                        ra.add_scaled(&(c * c2), &x.kron(g));
                    }
                }
                right.push(ra.finish());
            }
        }
        let name = format!("({} ⊗ {})", self.name(), other.name());
        Bicomodule::from_fn(name, self.l.clone(), space, |k| left[k].clone(), |k| right[k].clone())
    }

    pub fn name(&self) -> &str {
        self.right.name()
    }

    pub fn l(&self) -> &Arc<HopfAlgebraData> {
        &self.l
    }

    pub fn space(&self) -> &Space {
        self.right.space()
    }

    pub fn shape(&self) -> Shape {
        self.right.shape()
    }

    pub fn dim(&self) -> usize {
        self.right.dim()
    }

    pub fn left(&self) -> &SparseMatrix {
        &self.left
    }

    /// The right `L`-comodule obtained by forgetting `λ`.
    pub fn right(&self) -> &Arc<Comodule> {
        &self.right
    }
}

/// Both coactions are coassociative and counital and they commute.
pub fn check_bicomodule(x: &Bicomodule, opts: &CheckOptions) -> CheckReport {
    let (d, nl) = (x.dim(), x.l.dim());
    let coalg = x.l.wba().coalg();
    let eps = coalg.counit_matrix();
    let lsp = x.l.wba().space().clone();
    let args = [x.space().clone()];
    let mut r = CheckReport::new(format!("bicomodule {}", x.name()));
    r.absorb("right", check_comodule(&x.right, opts));
    let llx = Shape::new(vec![lsp.clone(), lsp.clone(), x.space().clone()]);
    r.push(check_tuples("left-coassoc", &args, &llx, opts, |i| {
        let lam = x.left.col(i[0]);
        let lhs = apply_mid(lam, nl, d, coalg.comult());
        let rhs = apply_mid(lam, d, 1, &x.left);
        Outcome::compare(lhs, rhs)
    }));
    r.push(check_tuples("left-counit", &args, &x.shape(), opts, |i| {
        Outcome::compare(apply_mid(x.left.col(i[0]), nl, d, &eps), SparseVec::basis(d, i[0]))
    }));
    let lxl = Shape::new(vec![lsp.clone(), x.space().clone(), lsp]);
    r.push(check_tuples("compat", &args, &lxl, opts, |i| {
        // (λ ⊗ Id)ρ(x) = (Id ⊗ ρ)λ(x)
        let lhs = apply_mid(x.right.rho_basis(i[0]), d, nl, &x.left);
        let rhs = apply_mid(x.left.col(i[0]), d, 1, x.right.coaction());
        Outcome::compare(lhs, rhs)
    }));
    r
}

/// `f: X → Y` commutes with both coactions.
pub fn check_bicomodule_morphism(name: &str, f: &SparseMatrix, from: &Bicomodule, to: &Bicomodule, opts: &CheckOptions) -> Result<Check> {
    if f.ncols() != from.dim() || f.nrows() != to.dim() {
        return Err(Error::mismatch(format!("{name}: map does not go from {} to {}", from.name(), to.name())));
    }
    let nl = from.l.dim();
    let lsp = from.l.wba().space().clone();
    let args = [from.space().clone()];
    let value = Shape::new(vec![lsp.clone(), to.space().clone(), lsp]);
    // both coactions in one vector: λ in the first slot of L, ρ in the last
    Ok(check_tuples(name, &args, &value, opts, |i| {
        let one = SparseVec::basis(nl, 0);
        let lhs_l = to.left.apply(f.col(i[0])).kron(&one);
        let rhs_l = apply_mid(from.left.col(i[0]), from.dim(), 1, f).kron(&one);
        let lhs_r = one.kron(&to.right.rho(f.col(i[0])));
        let rhs_r = one.kron(&apply_mid(from.right.rho_basis(i[0]), from.dim(), nl, f));
        if lhs_l != rhs_l {
            Outcome::compare(lhs_l, rhs_l)
        } else {
            Outcome::compare(lhs_r, rhs_r)
        }
    }))
}

/// An algebra in `L`-bicomodules: `m: X ⊗ X → X`, `u: 𝕜 → X`.
#[derive(Debug, Clone)]
pub struct BicomoduleAlgebra {
    pub x: Bicomodule,
    pub alg: AlgebraData,
}

impl BicomoduleAlgebra {
    pub fn new(x: Bicomodule, alg: AlgebraData) -> Result<Self> {
        if alg.space() != x.space() {
            return Err(Error::mismatch("algebra and bicomodule live on different spaces"));
        }
        Ok(BicomoduleAlgebra { x, alg })
    }

    /// `L` with its own multiplication.
    pub fn regular(l: &Arc<HopfAlgebraData>) -> Self {
        BicomoduleAlgebra { x: Bicomodule::regular(l), alg: l.wba().alg().clone() }
    }

    /// `𝕜` with `1 · 1 = 1`.
    pub fn unit(l: &Arc<HopfAlgebraData>) -> Self {
        let x = Bicomodule::unit(l);
        let alg = AlgebraData::from_table(x.space().clone(), |_, _| SparseVec::basis(1, 0), SparseVec::basis(1, 0)).expect("ground field");
        BicomoduleAlgebra { x, alg }
    }

    /// `u: 𝕜 → X` as a matrix.
    pub fn unit_map(&self) -> SparseMatrix {
        SparseMatrix::element(self.x.shape(), self.alg.unit().clone())
    }
}

/// The algebra axioms, and `m`, `u` as bicomodule morphisms.
pub fn check_bicomodule_algebra(a: &BicomoduleAlgebra, opts: &CheckOptions) -> CheckReport {
    let mut r = CheckReport::new(format!("bicomodule algebra {}", a.x.name()));
    r.absorb("algebra", check_algebra(&a.alg, opts));
    r.absorb("bicomodule", check_bicomodule(&a.x, opts));
    let morphisms = || -> Result<(Check, Check)> {
        let xx = a.x.tensor(&a.x)?;
        let k = Bicomodule::unit(&a.x.l);
        let m = check_bicomodule_morphism("mult-morphism", a.alg.mult(), &xx, &a.x, opts)?;
        let u = check_bicomodule_morphism("unit-morphism", &a.unit_map(), &k, &a.x, opts)?;
        Ok((m, u))
    };
    match morphisms() {
        Ok((m, u)) => {
            r.push(m);
            r.push(u);
        }
        Err(e) => r.push(Check::boolean("mult-morphism", false, None).with_detail(e.to_string())),
    }
    r
}

/// `T(V)/T^{>d}(V)`: words in the basis of `V` of length at most `d`,
/// concatenation (zero past length `d`), with the diagonal coactions.
/// For one-dimensional `V = 𝕜v`, `d = 1` gives `T(V)/(v²)`.
pub fn truncated_tensor_algebra(v: &Bicomodule, d: usize) -> Result<BicomoduleAlgebra> {
    let n = v.dim();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        layer = layer.iter().flat_map(|w| (0..n).map(move |i| [w.as_slice(), &[i]].concat())).collect();
        words.extend(layer.iter().cloned());
    }
    let label = |w: &[usize]| {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&i| v.space().label(i)).collect::<Vec<_>>().join("·")
        }
    };
    let space = Space::new(words.iter().map(|w| label(w)))?;
    let nw = words.len();
    let index = |w: &[usize]| words.iter().position(|u| u == w);
    let (nl, lmul) = (v.l.dim(), v.l.wba().alg());

    // coactions of a word, built letter by letter
    let coact = |w: &[usize], left: bool| -> Result<SparseVec> {
        let mut terms: Vec<(usize, Vec<usize>, Q)> = match v.l.one().entries() {
            [(e, c)] if c.is_one() => vec![(*e, vec![], Q::one())],
            _ => return Err(Error::Invalid("tensor algebra needs 1_L to be a basis element".into())),
        };
        for &i in w {
            let mut next = Vec::new();
            for (g, word, c) in &terms {
                let src = if left { v.left.col(i) } else { v.right.rho_basis(i) };
                for (t, c2) in src.entries() {
                    let (h, x) = if left { (t / n, t % n) } else { (t % nl, t / nl) };
                    for (k, c3) in lmul.mul_basis(*g, h)?.entries() {
                        next.push((*k, [word.as_slice(), &[x]].concat(), c * c2 * c3.clone()));
                    }
                }
            }
            terms = next;
        }
        let mut acc = Accumulator::new(nw * nl);
        for (g, word, c) in terms {
            let k = index(&word).expect("same length");
            acc.push(if left { g * nw + k } else { k * nl + g }, c);
        }
        Ok(acc.finish())
    };
    let left: Vec<SparseVec> = words.iter().map(|w| coact(w, true)).collect::<Result<_>>()?;
    let right: Vec<SparseVec> = words.iter().map(|w| coact(w, false)).collect::<Result<_>>()?;
    let x = Bicomodule::from_fn(format!("T({})≤{d}", v.name()), v.l.clone(), space.clone(), |k| left[k].clone(), |k| right[k].clone())?;
    let alg = AlgebraData::from_table(
        space,
        |i, j| match index(&[words[i].as_slice(), &words[j]].concat()) {
            Some(k) => SparseVec::basis(nw, k),
            None => SparseVec::zero(nw),
        },
        SparseVec::basis(nw, 0),
    )?;
    BicomoduleAlgebra::new(x, alg)
}
