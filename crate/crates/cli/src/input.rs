//! Structure files: TOML tables keyed by kind and name, resolved into
//! library structures.
//!
//! Every structure lives in a single namespace regardless of kind. Tensor
//! entries are written as rows of basis labels followed by a scalar, for
//! example `mult = [["g", "g", "e", "1"]]` for `g·g = e`. Scalars are
//! integers or `"num/den"` strings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use weakhopf::constructions::{
    face_algebra, face_algebra_quotient, groupoid_algebra, groupoid_closed_form_report, kq_comodule, kq_comodule_instances,
    matrix_frobenius_example, path_algebra_wba, unit_object_instance, FaceAlgebra, FaceMode, Group, Groupoid, Identification, Quiver,
};
use weakhopf::corep::Comodule;
use weakhopf::qtg::{
    adjoint_action, build_qtg, check_action_data, check_hopf, check_separable, group_hopf, group_qtg, group_separable, trivial_action, Bicomodule,
    HopfAlgebraData, ModuleAlgebraAction, Qtg, SeparableAlgebraData,
};
use weakhopf::structures::{ComoduleAlgebra, ComoduleCoalgebra, ComoduleFrobenius, Formulaic};
use weakhopf::wba::{AlgebraData, CoalgebraData, WeakBialgebra, WeakHopfAlgebra};
use weakhopf::{CheckOptions, CheckReport, Shape, Space, SparseMatrix, SparseVec, Q};

use crate::error::{CliError, Location, Result};

/// A label or scalar cell.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Str(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Str(s) => s.clone(),
        }
    }
}

type Ref = Spanned<String>;
type Label = Spanned<Cell>;
type Rows = Vec<Spanned<Vec<Label>>>;

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    quiver: BTreeMap<String, Spanned<QuiverDecl>>,
    #[serde(default)]
    group: BTreeMap<String, Spanned<GroupDecl>>,
    #[serde(default)]
    groupoid: BTreeMap<String, Spanned<GroupoidDecl>>,
    #[serde(default)]
    hopf: BTreeMap<String, Spanned<HopfDecl>>,
    #[serde(default)]
    separable: BTreeMap<String, Spanned<SeparableDecl>>,
    #[serde(default)]
    action: BTreeMap<String, Spanned<ActionDecl>>,
    #[serde(default)]
    qtg: BTreeMap<String, Spanned<QtgDecl>>,
    #[serde(default)]
    wba: BTreeMap<String, Spanned<WbaDecl>>,
    #[serde(default)]
    comodule: BTreeMap<String, Spanned<ComoduleDecl>>,
    #[serde(default)]
    bicomodule: BTreeMap<String, Spanned<BicomoduleDecl>>,
    #[serde(default)]
    bundle: BTreeMap<String, Spanned<BundleDecl>>,
    #[serde(default)]
    gamma: BTreeMap<String, Spanned<GammaDecl>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDecl {
    vertices: Vec<Label>,
    #[serde(default)]
    arrows: Rows,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDecl {
    elements: Option<Vec<Label>>,
    table: Option<Vec<Vec<Label>>>,
    cyclic: Option<usize>,
    symmetric: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidDecl {
    objects: Option<Vec<Label>>,
    morphisms: Option<Rows>,
    compose: Option<Rows>,
    pair: Option<usize>,
    group: Option<Ref>,
}

/// Explicit structure constants shared by several kinds.
struct Explicit<'a> {
    basis: &'a Option<Vec<Label>>,
    mult: &'a Option<Rows>,
    unit: &'a Option<Rows>,
    comult: &'a Option<Rows>,
    counit: &'a Option<Rows>,
}

macro_rules! explicit {
    ($d:expr) => {
        Explicit { basis: &$d.basis, mult: &$d.mult, unit: &$d.unit, comult: &$d.comult, counit: &$d.counit }
    };
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WbaDecl {
    path: Option<Ref>,
    face: Option<Ref>,
    truncate: Option<usize>,
    identify: Option<Rows>,
    groupoid: Option<Ref>,
    group: Option<Ref>,
    hopf: Option<Ref>,
    qtg: Option<Ref>,
    #[serde(default)]
    unchecked: bool,
    basis: Option<Vec<Label>>,
    mult: Option<Rows>,
    unit: Option<Rows>,
    comult: Option<Rows>,
    counit: Option<Rows>,
    antipode: Option<Rows>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfDecl {
    group: Option<Ref>,
    #[serde(default)]
    unchecked: bool,
    basis: Option<Vec<Label>>,
    mult: Option<Rows>,
    unit: Option<Rows>,
    comult: Option<Rows>,
    counit: Option<Rows>,
    antipode: Option<Rows>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeparableDecl {
    group: Option<Ref>,
    basis: Option<Vec<Label>>,
    mult: Option<Rows>,
    unit: Option<Rows>,
    idempotent: Option<Rows>,
    omega: Option<Rows>,
    #[serde(default)]
    unchecked: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDecl {
    b: Ref,
    l: Ref,
    preset: Option<Spanned<String>>,
    group: Option<Ref>,
    entries: Option<Rows>,
    #[serde(default)]
    unchecked: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QtgDecl {
    group: Option<Ref>,
    l: Option<Ref>,
    b: Option<Ref>,
    action: Option<Ref>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComoduleDecl {
    h: Ref,
    preset: Option<Spanned<String>>,
    basis: Option<Vec<Label>>,
    coaction: Option<Rows>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BicomoduleDecl {
    l: Ref,
    preset: Option<Spanned<String>>,
    basis: Option<Vec<Label>>,
    degrees: Option<Vec<Label>>,
    left: Option<Rows>,
    right: Option<Rows>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDecl {
    kind: Spanned<String>,
    preset: Option<Spanned<String>>,
    h: Option<Ref>,
    comodule: Option<Ref>,
    mult: Option<Rows>,
    unit: Option<Rows>,
    comult: Option<Rows>,
    counit: Option<Rows>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaDecl {
    qtg: Ref,
    x: Ref,
    y: Ref,
    z: Option<Ref>,
}

/// A declared weak bialgebra with whatever extra data its origin supplies.
#[derive(Clone, Debug)]
pub struct WbaItem {
    pub wba: Arc<WeakBialgebra>,
    pub hopf: Option<Arc<WeakHopfAlgebra>>,
    /// Known closed forms for the counital maps, compared against the
    /// computed ones by the `wba` suite.
    pub closed_forms: Option<CheckReport>,
    pub face: Option<Arc<FaceAlgebra>>,
}

#[derive(Clone, Debug)]
pub enum QtgSource {
    Group(String),
    Parts { l: String, b: String, action: String },
}

#[derive(Clone, Debug)]
pub struct ActionItem {
    pub action: Arc<ModuleAlgebraAction>,
    pub b: String,
    pub l: String,
}

#[derive(Clone, Debug)]
pub struct QtgItem {
    pub qtg: Arc<Qtg>,
    pub source: QtgSource,
}

#[derive(Clone, Debug)]
pub struct GammaItem {
    pub qtg: String,
    pub x: String,
    pub y: String,
    pub z: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Item {
    Quiver(Arc<Quiver>),
    Group(Arc<Group>),
    Groupoid(Arc<Groupoid>),
    Wba(WbaItem),
    Hopf(Arc<HopfAlgebraData>),
    Separable(Arc<SeparableAlgebraData>),
    Action(ActionItem),
    Qtg(QtgItem),
    Comodule(Arc<Comodule>),
    Bicomodule(Arc<Bicomodule>),
    Bundle(Formulaic),
    Gamma(GammaItem),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Quiver(_) => "quiver",
            Item::Group(_) => "group",
            Item::Groupoid(_) => "groupoid",
            Item::Wba(_) => "wba",
            Item::Hopf(_) => "hopf",
            Item::Separable(_) => "separable",
            Item::Action(_) => "action",
            Item::Qtg(_) => "qtg",
            Item::Comodule(_) => "comodule",
            Item::Bicomodule(_) => "bicomodule",
            Item::Bundle(_) => "bundle",
            Item::Gamma(_) => "gamma",
        }
    }
}

/// Declared structures in resolution order: by kind, then by name.
#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub items: Vec<(String, Item)>,
    index: HashMap<String, usize>,
}

impl Resolved {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.index.get(name).map(|&i| &self.items[i].1)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|(n, _)| n.as_str())
    }

    fn insert(&mut self, name: &str, item: Item) {
        self.index.insert(name.to_string(), self.items.len());
        self.items.push((name.to_string(), item));
    }
}

/// Reads and resolves a structure file.
pub fn parse_file(path: &str, opts: &CheckOptions) -> Result<Resolved> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    parse_str(&src, opts)
}

/// Parses and resolves structure-file text.
pub fn parse_str(src: &str, opts: &CheckOptions) -> Result<Resolved> {
    let doc: Document = toml::from_str(src).map_err(|e| CliError::Parse {
        location: e.span().map(|s| Location::of(src, s.start)),
        message: e.message().to_string(),
    })?;
    let mut r = Resolver { src, opts, out: Resolved::default() };
    r.run(doc)?;
    Ok(r.out)
}

struct Resolver<'a> {
    src: &'a str,
    opts: &'a CheckOptions,
    out: Resolved,
}

impl Resolver<'_> {
    fn loc(&self, span: std::ops::Range<usize>) -> Option<Location> {
        Some(Location::of(self.src, span.start))
    }

    fn parse_err<T>(&self, span: std::ops::Range<usize>, message: impl Into<String>) -> Result<T> {
        Err(CliError::Parse { location: self.loc(span), message: message.into() })
    }

    fn resolve_err<T>(&self, span: std::ops::Range<usize>, message: impl Into<String>) -> Result<T> {
        Err(CliError::Resolution { location: self.loc(span), message: message.into() })
    }

    fn lookup(&self, r: &Ref) -> Result<&Item> {
        match self.out.get(r.get_ref()) {
            Some(item) => Ok(item),
            None => self.resolve_err(r.span(), format!("no structure named `{}` declared before this point", r.get_ref())),
        }
    }

    fn expect<'b, T>(&'b self, r: &Ref, what: &str, f: impl Fn(&'b Item) -> Option<T>) -> Result<T> {
        let item = self.lookup(r)?;
        match f(item) {
            Some(t) => Ok(t),
            None => self.resolve_err(r.span(), format!("`{}` is a {}, expected {what}", r.get_ref(), item.kind())),
        }
    }

    fn quiver(&self, r: &Ref) -> Result<Arc<Quiver>> {
        self.expect(r, "a quiver", |i| match i {
            Item::Quiver(q) => Some(q.clone()),
            _ => None,
        })
    }

    fn group(&self, r: &Ref) -> Result<Arc<Group>> {
        self.expect(r, "a group", |i| match i {
            Item::Group(g) => Some(g.clone()),
            _ => None,
        })
    }

    fn hopf(&self, r: &Ref) -> Result<Arc<HopfAlgebraData>> {
        self.expect(r, "a Hopf algebra or QTG", |i| match i {
            Item::Hopf(h) => Some(h.clone()),
            Item::Qtg(q) => Some(q.qtg.l().clone()),
            _ => None,
        })
    }

    fn separable(&self, r: &Ref) -> Result<Arc<SeparableAlgebraData>> {
        self.expect(r, "a separable algebra", |i| match i {
            Item::Separable(s) => Some(s.clone()),
            _ => None,
        })
    }

    fn qtg(&self, r: &Ref) -> Result<Arc<Qtg>> {
        self.expect(r, "a QTG", |i| match i {
            Item::Qtg(q) => Some(q.qtg.clone()),
            _ => None,
        })
    }

    fn weak_bialgebra(&self, r: &Ref) -> Result<Arc<WeakBialgebra>> {
        self.expect(r, "a weak bialgebra, Hopf algebra or QTG", |i| match i {
            Item::Wba(w) => Some(w.wba.clone()),
            Item::Hopf(h) => Some(h.wba().clone()),
            Item::Qtg(q) => Some(q.qtg.wba().clone()),
            _ => None,
        })
    }

    fn comodule(&self, r: &Ref) -> Result<Arc<Comodule>> {
        self.expect(r, "a comodule", |i| match i {
            Item::Comodule(c) => Some(c.clone()),
            _ => None,
        })
    }

    fn bicomodule(&self, r: &Ref) -> Result<Arc<Bicomodule>> {
        self.expect(r, "a bicomodule", |i| match i {
            Item::Bicomodule(b) => Some(b.clone()),
            _ => None,
        })
    }

    fn add(&mut self, name: &str, span: std::ops::Range<usize>, item: Item) -> Result<()> {
        if let Some(prev) = self.out.get(name) {
            return self.resolve_err(span, format!("name `{name}` is already used by a {}", prev.kind()));
        }
        self.out.insert(name, item);
        Ok(())
    }

    fn labels(&self, cells: &[Label]) -> Vec<String> {
        cells.iter().map(|c| c.get_ref().text()).collect()
    }

    fn space(&self, cells: &[Label], span: std::ops::Range<usize>) -> Result<Space> {
        Space::new(self.labels(cells)).or_else(|e| self.parse_err(span, e.to_string()))
    }

    fn scalar(&self, cell: &Label) -> Result<Q> {
        match cell.get_ref() {
            Cell::Int(n) => Ok(Q::from_int(*n)),
            Cell::Str(s) => s.parse::<Q>().or_else(|e| self.parse_err(cell.span(), format!("bad scalar `{s}`: {e}"))),
        }
    }

    fn index(&self, space: &Space, cell: &Label) -> Result<usize> {
        let label = cell.get_ref().text();
        match space.index_of(&label) {
            Some(i) => Ok(i),
            None => self.resolve_err(cell.span(), format!("unknown basis label `{label}`")),
        }
    }

    /// Rows `[f₁, …, f_k, scalar]` as `(flat index, scalar)` pairs over
    /// the given factors.
    fn entries(&self, rows: &Rows, factors: &[Space]) -> Result<Vec<(usize, Q)>> {
        let shape = Shape::new(factors.to_vec());
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row.get_ref();
            if cells.len() != factors.len() + 1 {
                return self.parse_err(row.span(), format!("expected {} labels and a scalar, found {} cells", factors.len(), cells.len()));
            }
            let parts = factors.iter().zip(cells).map(|(s, c)| self.index(s, c)).collect::<Result<Vec<_>>>()?;
            out.push((shape.join(&parts), self.scalar(&cells[factors.len()])?));
        }
        Ok(out)
    }

    fn vector(&self, rows: &Rows, factors: &[Space]) -> Result<SparseVec> {
        let dim = factors.iter().map(Space::dim).product();
        Ok(SparseVec::from_terms(dim, self.entries(rows, factors)?))
    }

    /// Rows `[domain labels…, codomain labels…, scalar]` as a matrix.
    fn matrix(&self, rows: &Rows, dom: &[Space], cod: &[Space]) -> Result<SparseMatrix> {
        let all: Vec<Space> = dom.iter().chain(cod).cloned().collect();
        let cd: usize = cod.iter().map(Space::dim).product();
        let dd: usize = dom.iter().map(Space::dim).product();
        let mut cols = vec![Vec::new(); dd];
        for (k, c) in self.entries(rows, &all)? {
            cols[k / cd].push((k % cd, c));
        }
        let cols = cols.into_iter().map(|t| SparseVec::from_terms(cd, t)).collect();
        Ok(SparseMatrix::new(Shape::new(dom.to_vec()), Shape::new(cod.to_vec()), cols)?)
    }

    fn required<'b, T>(&self, field: &'b Option<T>, name: &str, span: std::ops::Range<usize>) -> Result<&'b T> {
        match field {
            Some(v) => Ok(v),
            None => self.parse_err(span, format!("missing field `{name}`")),
        }
    }

    fn exactly_one(&self, span: std::ops::Range<usize>, options: &[(&str, bool)]) -> Result<usize> {
        let set: Vec<usize> = (0..options.len()).filter(|&i| options[i].1).collect();
        if set.len() == 1 {
            return Ok(set[0]);
        }
        let names: Vec<&str> = options.iter().map(|o| o.0).collect();
        self.parse_err(span, format!("give exactly one of: {}", names.join(", ")))
    }

    fn run(&mut self, doc: Document) -> Result<()> {
        for (name, d) in &doc.quiver {
            let item = self.quiver_decl(d)?;
            self.add(name, d.span(), Item::Quiver(Arc::new(item)))?;
        }
        for (name, d) in &doc.group {
            let item = self.group_decl(d)?;
            self.add(name, d.span(), Item::Group(Arc::new(item)))?;
        }
        for (name, d) in &doc.groupoid {
            let item = self.groupoid_decl(d)?;
            self.add(name, d.span(), Item::Groupoid(Arc::new(item)))?;
        }
        for (name, d) in &doc.hopf {
            let item = self.hopf_decl(name, d)?;
            self.add(name, d.span(), Item::Hopf(Arc::new(item)))?;
        }
        for (name, d) in &doc.separable {
            let item = self.separable_decl(name, d)?;
            self.add(name, d.span(), Item::Separable(Arc::new(item)))?;
        }
        for (name, d) in &doc.action {
            let item = self.action_decl(name, d)?;
            self.add(name, d.span(), Item::Action(item))?;
        }
        for (name, d) in &doc.qtg {
            let item = self.qtg_decl(name, d)?;
            self.add(name, d.span(), Item::Qtg(item))?;
        }
        for (name, d) in &doc.wba {
            let item = self.wba_decl(name, d)?;
            self.add(name, d.span(), Item::Wba(item))?;
        }
        for (name, d) in &doc.comodule {
            let item = self.comodule_decl(name, d)?;
            self.add(name, d.span(), Item::Comodule(Arc::new(item)))?;
        }
        for (name, d) in &doc.bicomodule {
            let item = self.bicomodule_decl(name, d)?;
            self.add(name, d.span(), Item::Bicomodule(Arc::new(item)))?;
        }
        for (name, d) in &doc.bundle {
            let item = self.bundle_decl(name, d)?;
            self.add(name, d.span(), Item::Bundle(item))?;
        }
        for (name, d) in &doc.gamma {
            let item = self.gamma_decl(d)?;
            self.add(name, d.span(), Item::Gamma(item))?;
        }
        Ok(())
    }

    fn quiver_decl(&self, d: &Spanned<QuiverDecl>) -> Result<Quiver> {
        let q = d.get_ref();
        let vertices = self.labels(&q.vertices);
        let mut arrows = Vec::new();
        for row in &q.arrows {
            let cells = self.labels(row.get_ref());
            if cells.len() != 3 {
                return self.parse_err(row.span(), "an arrow is [name, source, target]");
            }
            arrows.push(cells);
        }
        let triples: Vec<(&str, &str, &str)> = arrows.iter().map(|a| (a[0].as_str(), a[1].as_str(), a[2].as_str())).collect();
        Quiver::new(vertices, &triples).or_else(|e| self.parse_err(d.span(), e.to_string()))
    }

    fn group_decl(&self, d: &Spanned<GroupDecl>) -> Result<Group> {
        let g = d.get_ref();
        let which = self.exactly_one(d.span(), &[("elements", g.elements.is_some()), ("cyclic", g.cyclic.is_some()), ("symmetric", g.symmetric.is_some())])?;
        match which {
            0 => {
                let elements = self.required(&g.elements, "elements", d.span())?;
                let space = self.space(elements, d.span())?;
                let table = self.required(&g.table, "table", d.span())?;
                let rows = table
                    .iter()
                    .map(|row| row.iter().map(|c| self.index(&space, c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Group::new(space.labels().to_vec(), rows).or_else(|e| self.parse_err(d.span(), e.to_string()))
            }
            1 => Ok(Group::cyclic(g.cyclic.unwrap_or(1))),
            _ => match g.symmetric {
                Some(3) => Ok(Group::symmetric3()),
                Some(1) => Ok(Group::cyclic(1)),
                Some(2) => Ok(Group::cyclic(2)),
                _ => self.parse_err(d.span(), "only symmetric = 1, 2 or 3 is built in; give larger groups by table"),
            },
        }
    }

    fn groupoid_decl(&self, d: &Spanned<GroupoidDecl>) -> Result<Groupoid> {
        let g = d.get_ref();
        let which = self.exactly_one(d.span(), &[("objects", g.objects.is_some()), ("pair", g.pair.is_some()), ("group", g.group.is_some())])?;
        match which {
            0 => {
                let objects = self.labels(self.required(&g.objects, "objects", d.span())?);
                let triples = |rows: &Rows| -> Result<Vec<Vec<String>>> {
                    rows.iter()
                        .map(|row| {
                            let cells = self.labels(row.get_ref());
                            if cells.len() == 3 {
                                Ok(cells)
                            } else {
                                self.parse_err(row.span(), "expected three names")
                            }
                        })
                        .collect()
                };
                let morphisms = triples(self.required(&g.morphisms, "morphisms", d.span())?)?;
                let compose = triples(self.required(&g.compose, "compose", d.span())?)?;
                let obj: Vec<&str> = objects.iter().map(String::as_str).collect();
                let view = |v: &[Vec<String>]| v.iter().map(|t| (t[0].clone(), t[1].clone(), t[2].clone())).collect::<Vec<_>>();
                let (m, c) = (view(&morphisms), view(&compose));
                let m: Vec<(&str, &str, &str)> = m.iter().map(|t| (t.0.as_str(), t.1.as_str(), t.2.as_str())).collect();
                let c: Vec<(&str, &str, &str)> = c.iter().map(|t| (t.0.as_str(), t.1.as_str(), t.2.as_str())).collect();
                Groupoid::new(&obj, &m, &c).or_else(|e| self.parse_err(d.span(), e.to_string()))
            }
            1 => Ok(Groupoid::pair(g.pair.unwrap_or(1))),
            _ => Ok(Groupoid::from_group(&*self.group(g.group.as_ref().expect("checked"))?)),
        }
    }

    /// Algebra and coalgebra from explicit rows on a declared basis.
    fn explicit_parts(&self, e: Explicit<'_>, span: std::ops::Range<usize>) -> Result<(Space, AlgebraData, CoalgebraData)> {
        let space = self.space(self.required(e.basis, "basis", span.clone())?, span.clone())?;
        let s = std::slice::from_ref(&space);
        let two = [space.clone(), space.clone()];
        let mult = self.matrix(self.required(e.mult, "mult", span.clone())?, &two, s)?;
        let unit = self.vector(self.required(e.unit, "unit", span.clone())?, s)?;
        let comult = self.matrix(self.required(e.comult, "comult", span.clone())?, s, &two)?;
        let counit = self.vector(self.required(e.counit, "counit", span.clone())?, s)?;
        let alg = AlgebraData::new(space.clone(), mult, unit).or_else(|e| self.parse_err(span.clone(), e.to_string()))?;
        let coalg = CoalgebraData::new(space.clone(), comult, counit).or_else(|e| self.parse_err(span, e.to_string()))?;
        Ok((space, alg, coalg))
    }

    fn hopf_decl(&self, name: &str, d: &Spanned<HopfDecl>) -> Result<HopfAlgebraData> {
        let h = d.get_ref();
        if let Some(g) = &h.group {
            return Ok(group_hopf(&*self.group(g)?));
        }
        let (space, alg, coalg) = self.explicit_parts(explicit!(h), d.span())?;
        let s = std::slice::from_ref(&space);
        let antipode = self.matrix(self.required(&h.antipode, "antipode", d.span())?, s, s)?;
        let l = HopfAlgebraData::new(name, alg, coalg, antipode).map_err(|e| CliError::validation(name, e))?;
        if !h.unchecked {
            require(name, &check_hopf(&l, self.opts))?;
        }
        Ok(l)
    }

    fn separable_decl(&self, name: &str, d: &Spanned<SeparableDecl>) -> Result<SeparableAlgebraData> {
        let b = d.get_ref();
        if let Some(g) = &b.group {
            return Ok(group_separable(&*self.group(g)?));
        }
        let span = d.span();
        let space = self.space(self.required(&b.basis, "basis", span.clone())?, span.clone())?;
        let s = std::slice::from_ref(&space);
        let two = [space.clone(), space.clone()];
        let mult = self.matrix(self.required(&b.mult, "mult", span.clone())?, &two, s)?;
        let unit = self.vector(self.required(&b.unit, "unit", span.clone())?, s)?;
        let alg = AlgebraData::new(space.clone(), mult, unit).map_err(|e| CliError::validation(name, e))?;
        let e = self.vector(self.required(&b.idempotent, "idempotent", span.clone())?, &two)?;
        let omega = b.omega.as_ref().map(|rows| self.vector(rows, s)).transpose()?;
        let sep = SeparableAlgebraData::new(alg, e, omega).map_err(|e| CliError::validation(name, e))?;
        if !b.unchecked {
            require(name, &check_separable(&sep, self.opts))?;
        }
        Ok(sep)
    }

    fn action_decl(&self, name: &str, d: &Spanned<ActionDecl>) -> Result<ActionItem> {
        let a = d.get_ref();
        let b = self.separable(&a.b)?;
        let l = self.hopf(&a.l)?;
        let which = self.exactly_one(d.span(), &[("preset", a.preset.is_some()), ("entries", a.entries.is_some())])?;
        let act = if which == 0 {
            let preset = a.preset.as_ref().expect("checked");
            match preset.get_ref().as_str() {
                "trivial" => trivial_action(&b, &l).map_err(|e| CliError::validation(name, e))?,
                "adjoint" => {
                    let g = self.group(self.required(&a.group, "group", d.span())?)?;
                    adjoint_action(&g, &b, &l).map_err(|e| CliError::validation(name, e))?
                }
                other => return self.parse_err(preset.span(), format!("unknown action preset `{other}` (adjoint, trivial)")),
            }
        } else {
            let rows = a.entries.as_ref().expect("checked");
            let m = self.matrix(rows, &[b.space().clone(), l.wba().space().clone()], std::slice::from_ref(b.space()))?;
            ModuleAlgebraAction::new(m, &b, &l).map_err(|e| CliError::validation(name, e))?
        };
        if !a.unchecked {
            require(name, &check_action_data(&l, &b, &act, self.opts))?;
        }
        Ok(ActionItem { action: Arc::new(act), b: a.b.get_ref().clone(), l: a.l.get_ref().clone() })
    }

    fn qtg_decl(&self, name: &str, d: &Spanned<QtgDecl>) -> Result<QtgItem> {
        let q = d.get_ref();
        if let Some(g) = &q.group {
            let qtg = group_qtg(&*self.group(g)?, self.opts).map_err(|e| CliError::validation(name, e))?;
            return Ok(QtgItem { qtg: Arc::new(qtg), source: QtgSource::Group(g.get_ref().clone()) });
        }
        let span = d.span();
        let (lr, br, ar) = (self.required(&q.l, "l", span.clone())?, self.required(&q.b, "b", span.clone())?, self.required(&q.action, "action", span)?);
        let l = self.hopf(lr)?;
        let b = self.separable(br)?;
        let act = self.expect(ar, "an action", |i| match i {
            Item::Action(a) => Some(a.clone()),
            _ => None,
        })?;
        if act.l != *lr.get_ref() || act.b != *br.get_ref() {
            return self.resolve_err(ar.span(), format!("action `{}` is declared on ({}, {}), not ({}, {})", ar.get_ref(), act.b, act.l, br.get_ref(), lr.get_ref()));
        }
        let qtg = build_qtg(l, b, act.action, self.opts).map_err(|e| CliError::validation(name, e))?;
        let source = QtgSource::Parts { l: lr.get_ref().clone(), b: br.get_ref().clone(), action: ar.get_ref().clone() };
        Ok(QtgItem { qtg: Arc::new(qtg), source })
    }

    fn wba_decl(&self, name: &str, d: &Spanned<WbaDecl>) -> Result<WbaItem> {
        let w = d.get_ref();
        let which = self.exactly_one(
            d.span(),
            &[
                ("path", w.path.is_some()),
                ("face", w.face.is_some()),
                ("groupoid", w.groupoid.is_some()),
                ("group", w.group.is_some()),
                ("hopf", w.hopf.is_some()),
                ("qtg", w.qtg.is_some()),
                ("basis", w.basis.is_some()),
            ],
        )?;
        let plain = |wba: Arc<WeakBialgebra>| WbaItem { wba, hopf: None, closed_forms: None, face: None };
        let with_hopf = |h: WeakHopfAlgebra, closed_forms: Option<CheckReport>| WbaItem {
            wba: h.wba().clone(),
            hopf: Some(Arc::new(h)),
            closed_forms,
            face: None,
        };
        match which {
            0 => Ok(plain(path_algebra_wba(&*self.quiver(w.path.as_ref().expect("checked"))?).map_err(|e| CliError::validation(name, e))?)),
            1 => self.face_wba(name, w, d.span()),
            2 => {
                let g = self.expect(w.groupoid.as_ref().expect("checked"), "a groupoid", |i| match i {
                    Item::Groupoid(g) => Some(g.clone()),
                    _ => None,
                })?;
                let h = groupoid_algebra(&g).map_err(|e| CliError::validation(name, e))?;
                let cf = groupoid_closed_form_report(&g, &h);
                Ok(with_hopf(h, Some(cf)))
            }
            3 => {
                let g = Groupoid::from_group(&*self.group(w.group.as_ref().expect("checked"))?);
                let h = groupoid_algebra(&g).map_err(|e| CliError::validation(name, e))?;
                let cf = groupoid_closed_form_report(&g, &h);
                Ok(with_hopf(h, Some(cf)))
            }
            4 => Ok(with_hopf(self.hopf(w.hopf.as_ref().expect("checked"))?.weak_hopf(), None)),
            5 => {
                let q = self.qtg(w.qtg.as_ref().expect("checked"))?;
                let mut cf = CheckReport::new(q.wba().name());
                for c in q.report().checks.iter().filter(|c| c.name.ends_with("closed-form")) {
                    cf.push(c.clone());
                }
                Ok(with_hopf(q.hopf().clone(), Some(cf)))
            }
            _ => {
                let (space, alg, coalg) = self.explicit_parts(explicit!(w), d.span())?;
                let wba = if w.unchecked {
                    WeakBialgebra::new_unchecked(name, alg, coalg)
                } else {
                    WeakBialgebra::new(name, alg, coalg, self.opts)
                }
                .map_err(|e| CliError::validation(name, e))?;
                let wba = Arc::new(wba);
                let hopf = match &w.antipode {
                    Some(rows) => {
                        let s = std::slice::from_ref(&space);
                        let m = self.matrix(rows, s, s)?;
                        Some(Arc::new(WeakHopfAlgebra::new(wba.clone(), m, None).map_err(|e| CliError::validation(name, e))?))
                    }
                    None => None,
                };
                Ok(WbaItem { wba, hopf, closed_forms: None, face: None })
            }
        }
    }

    fn face_wba(&self, name: &str, w: &WbaDecl, span: std::ops::Range<usize>) -> Result<WbaItem> {
        let q = self.quiver(w.face.as_ref().expect("checked"))?;
        let mode = match w.truncate {
            Some(n) => FaceMode::Truncated(n),
            None => FaceMode::Full,
        };
        let face = face_algebra(&q, mode).or_else(|e| self.parse_err(span, e.to_string()))?;
        let Some(rows) = &w.identify else {
            let cf = face.closed_form_report();
            return Ok(WbaItem { wba: face.wba().clone(), hopf: None, closed_forms: Some(cf), face: Some(Arc::new(face)) });
        };
        let mut ids: Vec<Identification> = Vec::new();
        for row in rows {
            let cells = row.get_ref();
            if cells.len() != 3 {
                return self.parse_err(row.span(), "an identification is [path, path, scalar]");
            }
            let path = |c: &Label| q.parse_path(&c.get_ref().text()).or_else(|e| self.resolve_err(c.span(), e.to_string()));
            let (p, p2, c) = (path(&cells[0])?, path(&cells[1])?, self.scalar(&cells[2])?);
            match ids.iter_mut().find(|i| i.path == p) {
                Some(i) => i.combination.push((c, p2)),
                None => ids.push(Identification { path: p, combination: vec![(c, p2)] }),
            }
        }
        let quotient = face_algebra_quotient(&face, &ids, self.opts).map_err(|e| CliError::validation(name, e))?;
        if !w.unchecked {
            quotient.require_valid().map_err(|e| CliError::validation(name, e))?;
        }
        Ok(WbaItem { wba: quotient.wba.clone(), hopf: None, closed_forms: None, face: None })
    }

    fn face_of(&self, r: &Ref) -> Result<Arc<FaceAlgebra>> {
        self.expect(r, "a face algebra (wba with `face`)", |i| match i {
            Item::Wba(w) => w.face.clone(),
            _ => None,
        })
    }

    fn comodule_decl(&self, name: &str, d: &Spanned<ComoduleDecl>) -> Result<Comodule> {
        let c = d.get_ref();
        let which = self.exactly_one(d.span(), &[("preset", c.preset.is_some()), ("basis", c.basis.is_some())])?;
        if which == 0 {
            let preset = c.preset.as_ref().expect("checked");
            let m = match preset.get_ref().as_str() {
                "regular" => Comodule::regular(&self.weak_bialgebra(&c.h)?),
                "unit-object" => Comodule::unit_object(&self.weak_bialgebra(&c.h)?).map_err(|e| CliError::validation(name, e))?,
                "kq" => (*kq_comodule(&*self.face_of(&c.h)?).map_err(|e| CliError::validation(name, e))?).clone(),
                other => return self.parse_err(preset.span(), format!("unknown comodule preset `{other}` (regular, unit-object, kq)")),
            };
            return Ok(m.renamed(name));
        }
        let h = self.weak_bialgebra(&c.h)?;
        let space = self.space(c.basis.as_ref().expect("checked"), d.span())?;
        let rows = self.required(&c.coaction, "coaction", d.span())?;
        let rho = self.matrix(rows, std::slice::from_ref(&space), &[space.clone(), h.space().clone()])?;
        Comodule::new(name, space, rho, h).map_err(|e| CliError::validation(name, e))
    }

    fn bicomodule_decl(&self, name: &str, d: &Spanned<BicomoduleDecl>) -> Result<Bicomodule> {
        let b = d.get_ref();
        let l = self.hopf(&b.l)?;
        let which = self.exactly_one(d.span(), &[("preset", b.preset.is_some()), ("basis", b.basis.is_some())])?;
        if which == 0 {
            let preset = b.preset.as_ref().expect("checked");
            return match preset.get_ref().as_str() {
                "regular" => Ok(Bicomodule::regular(&l)),
                "unit" => Ok(Bicomodule::unit(&l)),
                other => self.parse_err(preset.span(), format!("unknown bicomodule preset `{other}` (regular, unit)")),
            };
        }
        let space = self.space(b.basis.as_ref().expect("checked"), d.span())?;
        if let Some(degrees) = &b.degrees {
            let ls = l.wba().space().clone();
            let deg = degrees.iter().map(|c| self.index(&ls, c)).collect::<Result<Vec<_>>>()?;
            return Bicomodule::graded(name, &l, space, &deg).map_err(|e| CliError::validation(name, e));
        }
        let s = std::slice::from_ref(&space);
        let ls = l.wba().space().clone();
        let left = self.matrix(self.required(&b.left, "left", d.span())?, s, &[ls.clone(), space.clone()])?;
        let right = self.matrix(self.required(&b.right, "right", d.span())?, s, &[space.clone(), ls])?;
        Bicomodule::new(name, l, space, left, right).map_err(|e| CliError::validation(name, e))
    }

    fn bundle_decl(&self, name: &str, d: &Spanned<BundleDecl>) -> Result<Formulaic> {
        let b = d.get_ref();
        let kind = b.kind.get_ref().as_str();
        if !matches!(kind, "comodule-algebra" | "comodule-coalgebra" | "comodule-frobenius") {
            return self.parse_err(b.kind.span(), format!("unknown bundle kind `{kind}` (comodule-algebra, comodule-coalgebra, comodule-frobenius)"));
        }
        let v = |e| CliError::validation(name, e);
        let frob = match &b.preset {
            Some(preset) => match preset.get_ref().as_str() {
                "kq" => {
                    let face = self.face_of(self.required(&b.h, "h", d.span())?)?;
                    let (a, c) = kq_comodule_instances(&face).map_err(v)?;
                    ComoduleFrobenius::new(a.comodule.clone(), a.alg, c.coalg).map_err(v)?
                }
                "unit-object" => unit_object_instance(&self.weak_bialgebra(self.required(&b.h, "h", d.span())?)?).map_err(v)?,
                "matrix-frobenius" => matrix_frobenius_example(self.opts).map_err(v)?.frobenius,
                other => return self.parse_err(preset.span(), format!("unknown bundle preset `{other}` (kq, unit-object, matrix-frobenius)")),
            },
            None => return self.explicit_bundle(name, kind, b, d.span()),
        };
        Ok(match kind {
            "comodule-algebra" => Formulaic::Alg(frob.algebra),
            "comodule-coalgebra" => Formulaic::Coalg(frob.coalgebra),
            _ => Formulaic::Frob(frob),
        })
    }

    fn explicit_bundle(&self, name: &str, kind: &str, b: &BundleDecl, span: std::ops::Range<usize>) -> Result<Formulaic> {
        let m = self.comodule(self.required(&b.comodule, "comodule", span.clone())?)?;
        let space = m.space().clone();
        let s = std::slice::from_ref(&space);
        let two = [space.clone(), space.clone()];
        let v = |e| CliError::validation(name, e);
        let alg = || -> Result<AlgebraData> {
            let mult = self.matrix(self.required(&b.mult, "mult", span.clone())?, &two, s)?;
            let unit = self.vector(self.required(&b.unit, "unit", span.clone())?, s)?;
            AlgebraData::new(space.clone(), mult, unit).map_err(v)
        };
        let coalg = || -> Result<CoalgebraData> {
            let comult = self.matrix(self.required(&b.comult, "comult", span.clone())?, s, &two)?;
            let counit = self.vector(self.required(&b.counit, "counit", span.clone())?, s)?;
            CoalgebraData::new(space.clone(), comult, counit).map_err(v)
        };
        Ok(match kind {
            "comodule-algebra" => Formulaic::Alg(ComoduleAlgebra::new(m, alg()?).map_err(v)?),
            "comodule-coalgebra" => Formulaic::Coalg(ComoduleCoalgebra::new(m, coalg()?).map_err(v)?),
            _ => Formulaic::Frob(ComoduleFrobenius::new(m, alg()?, coalg()?).map_err(v)?),
        })
    }

    fn gamma_decl(&self, d: &Spanned<GammaDecl>) -> Result<GammaItem> {
        let g = d.get_ref();
        let q = self.qtg(&g.qtg)?;
        for r in [Some(&g.x), Some(&g.y), g.z.as_ref()].into_iter().flatten() {
            let x = self.bicomodule(r)?;
            if !Arc::ptr_eq(x.l(), q.l()) {
                return self.resolve_err(r.span(), format!("bicomodule `{}` is not over the Hopf algebra of `{}`", r.get_ref(), g.qtg.get_ref()));
            }
        }
        Ok(GammaItem {
            qtg: g.qtg.get_ref().clone(),
            x: g.x.get_ref().clone(),
            y: g.y.get_ref().clone(),
            z: g.z.as_ref().map(|z| z.get_ref().clone()),
        })
    }
}

/// Fails with the first failing check of a construction-time report.
fn require(structure: &str, r: &CheckReport) -> Result<()> {
    match r.first_failure() {
        Some(c) => Err(CliError::Validation {
            structure: structure.to_string(),
            check: c.name.clone(),
            witness: c.witnesses.first().cloned().map(Box::new),
        }),
        None => Ok(()),
    }
}
