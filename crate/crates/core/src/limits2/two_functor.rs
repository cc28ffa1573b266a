use std::sync::Arc;

use super::two_category::{CellId, TwoCategory};
use crate::cat::{
    same_category, validate_functor, validate_nat_trans, violation, FinCategory, FinFunctor, MorId, NatTransformation,
    ObjId, ValidationReport,
};
use crate::error::{input, Result};

/// A strict 2-functor from a finite 2-category into finite categories.
#[derive(Debug, Clone)]
pub struct TwoFunctor {
    source: Arc<TwoCategory>,
    on_objects: Vec<Arc<FinCategory>>,
    on_one_cells: Vec<FinFunctor>,
    on_two_cells: Vec<NatTransformation>,
}

impl TwoFunctor {
    /// Checks typing only; the functoriality laws are left to
    /// [`validate_two_functor`].
    pub fn new(
        source: Arc<TwoCategory>,
        on_objects: Vec<Arc<FinCategory>>,
        on_one_cells: Vec<FinFunctor>,
        on_two_cells: Vec<NatTransformation>,
    ) -> Result<Self> {
        let g = source.underlying();
        if on_objects.len() != g.num_objects()
            || on_one_cells.len() != g.num_morphisms()
            || on_two_cells.len() != source.num_cells()
        {
            return input("2-functor assignment is not total".to_owned());
        }
        for a in g.morphisms() {
            let f = &on_one_cells[a.index()];
            if !same_category(f.source(), &on_objects[g.src(a).index()])
                || !same_category(f.target(), &on_objects[g.tgt(a).index()])
            {
                return input(format!("image of 1-cell {} is mistyped", g.morphism_name(a)));
            }
        }
        for t in source.cells() {
            let c = source.cell(t);
            let h = &on_two_cells[t.index()];
            if h.source() != &on_one_cells[c.src.index()] || h.target() != &on_one_cells[c.tgt.index()] {
                return input(format!("image of 2-cell {} is mistyped", c.id));
            }
        }
        Ok(TwoFunctor {
            source,
            on_objects,
            on_one_cells,
            on_two_cells,
        })
    }

    /// The constant 2-functor at `k`: identities on every cell.
    pub fn constant(source: &Arc<TwoCategory>, k: &Arc<FinCategory>) -> Self {
        let g = source.underlying();
        let id = FinFunctor::identity(k);
        TwoFunctor {
            source: source.clone(),
            on_objects: vec![k.clone(); g.num_objects()],
            on_one_cells: vec![id.clone(); g.num_morphisms()],
            on_two_cells: vec![NatTransformation::identity(&id); source.num_cells()],
        }
    }

    /// A 2-functor on a 2-category with identity 2-cells only. 1-cells not
    /// listed by name go to identity functors.
    pub fn locally_discrete(
        source: &Arc<TwoCategory>,
        on_objects: Vec<Arc<FinCategory>>,
        on_one_cells: Vec<(&str, FinFunctor)>,
    ) -> Result<Self> {
        let g = source.underlying();
        if source.cells().any(|t| !source.is_identity_cell(t)) {
            return input(format!("{} has non-identity 2-cells", source.name()));
        }
        if on_objects.len() != g.num_objects() {
            return input("2-functor assignment is not total".to_owned());
        }
        let mut one: Vec<Option<FinFunctor>> = vec![None; g.num_morphisms()];
        for (name, f) in on_one_cells {
            let a = g
                .morphism_id(name)
                .ok_or_else(|| crate::Error::Input(format!("unknown 1-cell {name}")))?;
            one[a.index()] = Some(f);
        }
        let one: Vec<FinFunctor> = g
            .morphisms()
            .zip(one)
            .map(|(a, f)| f.unwrap_or_else(|| FinFunctor::identity(&on_objects[g.src(a).index()])))
            .collect();
        let two = source
            .cells()
            .map(|t| NatTransformation::identity(&one[source.cell(t).src.index()]))
            .collect();
        TwoFunctor::new(source.clone(), on_objects, one, two)
    }

    pub fn source(&self) -> &Arc<TwoCategory> {
        &self.source
    }

    pub fn obj(&self, x: ObjId) -> &Arc<FinCategory> {
        &self.on_objects[x.index()]
    }

    pub fn one_cell(&self, a: MorId) -> &FinFunctor {
        &self.on_one_cells[a.index()]
    }

    pub fn two_cell(&self, t: CellId) -> &NatTransformation {
        &self.on_two_cells[t.index()]
    }
}

/// Exhaustive check that `h` is a strict 2-functor.
pub fn validate_two_functor(h: &TwoFunctor) -> ValidationReport {
    let gamma = h.source();
    let g = gamma.underlying();
    let mut out = Vec::new();
    for a in g.morphisms() {
        let r = validate_functor(h.one_cell(a));
        if !r.ok {
            out.push(violation("one-cell functor", &[g.morphism_name(a)]));
        }
    }
    for t in gamma.cells() {
        if !validate_nat_trans(h.two_cell(t)).ok {
            out.push(violation("two-cell naturality", &[gamma.cell_name(t)]));
        }
    }
    if !out.is_empty() {
        return ValidationReport::from_violations(out);
    }
    for x in g.objects() {
        if *h.one_cell(g.identity(x)) != FinFunctor::identity(h.obj(x)) {
            out.push(violation("preserves identity 1-cells", &[g.object_name(x)]));
        }
    }
    for (b, a) in gamma.composable_one_cells() {
        let ba = g.comp(b, a);
        match FinFunctor::compose(h.one_cell(b), h.one_cell(a)) {
            Ok(f) if f == *h.one_cell(ba) => {}
            _ => out.push(violation(
                "preserves composition",
                &[g.morphism_name(b), g.morphism_name(a)],
            )),
        }
    }
    for a in g.morphisms() {
        let i = gamma.identity_cell(a);
        if *h.two_cell(i) != NatTransformation::identity(h.one_cell(a)) {
            out.push(violation("preserves identity 2-cells", &[gamma.cell_name(i)]));
        }
    }
    for (&(s, t), &r) in gamma.vcomp_table() {
        match NatTransformation::vertical(h.two_cell(s), h.two_cell(t)) {
            Ok(v) if v == *h.two_cell(r) => {}
            _ => out.push(violation(
                "preserves vertical composition",
                &[gamma.cell_name(s), gamma.cell_name(t)],
            )),
        }
    }
    for (&(s, t), &r) in gamma.hcomp_table() {
        match NatTransformation::horizontal(h.two_cell(s), h.two_cell(t)) {
            Ok(v) if v == *h.two_cell(r) => {}
            _ => out.push(violation(
                "preserves horizontal composition",
                &[gamma.cell_name(s), gamma.cell_name(t)],
            )),
        }
    }
    ValidationReport::from_violations(out)
}
