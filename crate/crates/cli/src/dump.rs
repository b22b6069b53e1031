//! Writes resolved structures back as an explicit structure file.
//!
//! Presets are expanded into structure constants, so parsing the dump
//! reproduces every tensor exactly. Structures reached only through a
//! preset (the comodule of a preset bundle, say) are written under
//! synthesized names `<owner>.comodule` and `<owner>.h`.

use std::sync::Arc;

use toml::{Table, Value};

use weakhopf::corep::Comodule;
use weakhopf::structures::Formulaic;
use weakhopf::wba::{AlgebraData, CoalgebraData, WeakBialgebra};
use weakhopf::{Shape, SparseMatrix, SparseVec};

use crate::input::{Item, QtgSource, Resolved};

fn s(x: impl Into<String>) -> Value {
    Value::String(x.into())
}

fn strings<I: IntoIterator<Item = S>, S: Into<String>>(xs: I) -> Value {
    Value::Array(xs.into_iter().map(s).collect())
}

fn vec_rows(shape: &Shape, v: &SparseVec) -> Value {
    Value::Array(
        v.entries()
            .iter()
            .map(|(k, c)| {
                let mut row: Vec<Value> = shape.split(*k).iter().zip(shape.factors()).map(|(&i, f)| s(f.label(i))).collect();
                row.push(s(c.to_string()));
                Value::Array(row)
            })
            .collect(),
    )
}

fn matrix_rows(m: &SparseMatrix) -> Value {
    let (dom, cod) = (m.domain(), m.codomain());
    let mut rows = Vec::with_capacity(m.nnz());
    for (j, col) in m.cols().iter().enumerate() {
        let d = dom.split(j);
        for (k, c) in col.entries() {
            let mut row: Vec<Value> = d.iter().zip(dom.factors()).map(|(&i, f)| s(f.label(i))).collect();
            row.extend(cod.split(*k).iter().zip(cod.factors()).map(|(&i, f)| s(f.label(i))));
            row.push(s(c.to_string()));
            rows.push(Value::Array(row));
        }
    }
    Value::Array(rows)
}

fn algebra(t: &mut Table, a: &AlgebraData) {
    t.insert("mult".into(), matrix_rows(a.mult()));
    t.insert("unit".into(), vec_rows(&Shape::of(a.space()), a.unit()));
}

fn coalgebra(t: &mut Table, c: &CoalgebraData) {
    t.insert("comult".into(), matrix_rows(c.comult()));
    t.insert("counit".into(), vec_rows(&Shape::of(c.space()), c.counit()));
}

fn explicit_wba(w: &WeakBialgebra) -> Table {
    let mut t = Table::new();
    t.insert("basis".into(), strings(w.space().labels().iter().cloned()));
    algebra(&mut t, w.alg());
    coalgebra(&mut t, w.coalg());
    t.insert("unchecked".into(), Value::Boolean(true));
    t
}

struct Dumper<'a> {
    resolved: &'a Resolved,
    doc: Table,
    wbas: Vec<(Arc<WeakBialgebra>, String)>,
    comodules: Vec<(Arc<Comodule>, String)>,
}

impl Dumper<'_> {
    fn put(&mut self, kind: &str, name: &str, t: Table) {
        let section = self.doc.entry(kind.to_string()).or_insert_with(|| Value::Table(Table::new()));
        if let Value::Table(sec) = section {
            sec.insert(name.to_string(), Value::Table(t));
        }
    }

    fn wba_name(&mut self, w: &Arc<WeakBialgebra>, fallback: String) -> String {
        if let Some((_, n)) = self.wbas.iter().find(|(x, _)| Arc::ptr_eq(x, w)) {
            return n.clone();
        }
        self.put("wba", &fallback, explicit_wba(w));
        self.wbas.push((w.clone(), fallback.clone()));
        fallback
    }

    fn comodule_table(&mut self, m: &Comodule, owner: &str) -> Table {
        let h = self.wba_name(m.h(), format!("{owner}.h"));
        let mut t = Table::new();
        t.insert("h".into(), s(h));
        t.insert("basis".into(), strings(m.space().labels().iter().cloned()));
        t.insert("coaction".into(), matrix_rows(m.coaction()));
        t
    }

    fn comodule_name(&mut self, m: &Arc<Comodule>, owner: &str) -> String {
        if let Some((_, n)) = self.comodules.iter().find(|(x, _)| Arc::ptr_eq(x, m)) {
            return n.clone();
        }
        let name = format!("{owner}.comodule");
        let t = self.comodule_table(m, owner);
        self.put("comodule", &name, t);
        self.comodules.push((m.clone(), name.clone()));
        name
    }

    fn hopf_name(&self, l: &Arc<weakhopf::qtg::HopfAlgebraData>) -> String {
        for (name, item) in &self.resolved.items {
            match item {
                Item::Hopf(h) if Arc::ptr_eq(h, l) => return name.clone(),
                Item::Qtg(q) if Arc::ptr_eq(q.qtg.l(), l) => return name.clone(),
                _ => {}
            }
        }
        unreachable!("bicomodules resolve their Hopf algebra by name")
    }

    fn register(&mut self) {
        for (name, item) in &self.resolved.items {
            match item {
                Item::Wba(w) => self.wbas.push((w.wba.clone(), name.clone())),
                Item::Hopf(h) => self.wbas.push((h.wba().clone(), name.clone())),
                Item::Qtg(q) => self.wbas.push((q.qtg.wba().clone(), name.clone())),
                Item::Comodule(m) => self.comodules.push((m.clone(), name.clone())),
                _ => {}
            }
        }
    }

    fn item(&mut self, name: &str, item: &Item) {
        let mut t = Table::new();
        match item {
            Item::Quiver(q) => {
                t.insert("vertices".into(), strings(q.vertices().iter().cloned()));
                let arrows = q.arrows().iter().map(|a| strings([a.name.clone(), q.vertices()[a.src].clone(), q.vertices()[a.tgt].clone()]));
                t.insert("arrows".into(), Value::Array(arrows.collect()));
            }
            Item::Group(g) => {
                t.insert("elements".into(), strings(g.elements().iter().cloned()));
                let n = g.order();
                let table = (0..n).map(|a| strings((0..n).map(|b| g.name(g.mul(a, b)).to_string())));
                t.insert("table".into(), Value::Array(table.collect()));
            }
            Item::Groupoid(g) => {
                t.insert("objects".into(), strings(g.objects().iter().cloned()));
                let ms = g.morphisms();
                let obj = |o: usize| g.objects()[o].clone();
                t.insert("morphisms".into(), Value::Array(ms.iter().map(|m| strings([m.name.clone(), obj(m.src), obj(m.tgt)])).collect()));
                let mut compose = Vec::new();
                for a in 0..ms.len() {
                    for b in 0..ms.len() {
                        if let Some(c) = g.compose(a, b) {
                            compose.push(strings([ms[a].name.clone(), ms[b].name.clone(), ms[c].name.clone()]));
                        }
                    }
                }
                t.insert("compose".into(), Value::Array(compose));
            }
            Item::Wba(w) => {
                t = explicit_wba(&w.wba);
                if let Some(h) = &w.hopf {
                    t.insert("antipode".into(), matrix_rows(h.antipode()));
                }
            }
            Item::Hopf(h) => {
                t = explicit_wba(h.wba());
                t.insert("antipode".into(), matrix_rows(h.antipode()));
            }
            Item::Separable(b) => {
                t.insert("basis".into(), strings(b.space().labels().iter().cloned()));
                algebra(&mut t, b.alg());
                let two = Shape::new(vec![b.space().clone(), b.space().clone()]);
                t.insert("idempotent".into(), vec_rows(&two, b.idempotent()));
                if let Some(w) = b.supplied_omega() {
                    t.insert("omega".into(), vec_rows(&Shape::of(b.space()), w));
                }
                t.insert("unchecked".into(), Value::Boolean(true));
            }
            Item::Action(a) => {
                t.insert("b".into(), s(a.b.clone()));
                t.insert("l".into(), s(a.l.clone()));
                t.insert("entries".into(), matrix_rows(a.action.matrix()));
                t.insert("unchecked".into(), Value::Boolean(true));
            }
            Item::Qtg(q) => match &q.source {
                QtgSource::Group(g) => {
                    t.insert("group".into(), s(g.clone()));
                }
                QtgSource::Parts { l, b, action } => {
                    t.insert("l".into(), s(l.clone()));
                    t.insert("b".into(), s(b.clone()));
                    t.insert("action".into(), s(action.clone()));
                }
            },
            Item::Comodule(m) => t = self.comodule_table(m, name),
            Item::Bicomodule(x) => {
                t.insert("l".into(), s(self.hopf_name(x.l())));
                t.insert("basis".into(), strings(x.space().labels().iter().cloned()));
                t.insert("left".into(), matrix_rows(x.left()));
                t.insert("right".into(), matrix_rows(x.right().coaction()));
            }
            Item::Bundle(f) => {
                let comodule = self.comodule_name(f.comodule(), name);
                t.insert("comodule".into(), s(comodule));
                let kind = match f {
                    Formulaic::Alg(a) => {
                        algebra(&mut t, &a.alg);
                        "comodule-algebra"
                    }
                    Formulaic::Coalg(c) => {
                        coalgebra(&mut t, &c.coalg);
                        "comodule-coalgebra"
                    }
                    Formulaic::Frob(x) => {
                        algebra(&mut t, &x.algebra.alg);
                        coalgebra(&mut t, &x.coalgebra.coalg);
                        "comodule-frobenius"
                    }
                };
                t.insert("kind".into(), s(kind));
            }
            Item::Gamma(g) => {
                t.insert("qtg".into(), s(g.qtg.clone()));
                t.insert("x".into(), s(g.x.clone()));
                t.insert("y".into(), s(g.y.clone()));
                if let Some(z) = &g.z {
                    t.insert("z".into(), s(z.clone()));
                }
            }
        }
        self.put(item.kind(), name, t);
    }
}

/// An explicit structure file equivalent to the resolved input.
pub fn dump(resolved: &Resolved) -> String {
    let mut d = Dumper { resolved, doc: Table::new(), wbas: Vec::new(), comodules: Vec::new() };
    d.register();
    for (name, item) in &resolved.items {
        d.item(name, item);
    }
    toml::to_string(&d.doc).expect("tables serialize")
}
