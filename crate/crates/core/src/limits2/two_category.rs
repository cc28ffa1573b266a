use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cat::{validate_category, violation, FinCategory, MorId, ObjId, ValidationReport};
use crate::error::{input, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub id: String,
    pub src: MorId,
    pub tgt: MorId,
}

/// A strict finite 2-category: objects and 1-cells form the underlying
/// category; 2-cells carry vertical and horizontal composition tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCategory {
    name: String,
    one: Arc<FinCategory>,
    cells: Vec<TwoCell>,
    cell_index: HashMap<String, CellId>,
    identity_cells: Vec<CellId>,
    vcomp: BTreeMap<(CellId, CellId), CellId>,
    hcomp: BTreeMap<(CellId, CellId), CellId>,
}

impl TwoCategory {
    /// `vcomp[(s, t)]` is `s · t` (first `t`, then `s`); `hcomp[(s, t)]` is
    /// `s * t` for `t` over `a: γ → δ` and `s` over `b: δ → ε`.
    pub fn new(
        name: impl Into<String>,
        one: Arc<FinCategory>,
        cells: Vec<TwoCell>,
        identity_cells: Vec<CellId>,
        vcomp: BTreeMap<(CellId, CellId), CellId>,
        hcomp: BTreeMap<(CellId, CellId), CellId>,
    ) -> Result<Self> {
        let n1 = one.num_morphisms();
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| cells[a].id.cmp(&cells[b].id));
        let mut new_of = vec![CellId(0); cells.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = CellId(new as u32);
        }
        let mut sorted = Vec::with_capacity(cells.len());
        let mut cell_index = HashMap::new();
        for &old in &order {
            let c = &cells[old];
            if c.src.index() >= n1 || c.tgt.index() >= n1 {
                return input(format!("2-cell {} has an unresolved boundary", c.id));
            }
            if cell_index.insert(c.id.clone(), CellId(sorted.len() as u32)).is_some() {
                return input(format!("duplicate 2-cell id {}", c.id));
            }
            sorted.push(c.clone());
        }
        if identity_cells.len() != n1 {
            return input("every 1-cell needs an identity 2-cell".to_owned());
        }
        let resolve = |c: CellId| -> Result<CellId> {
            new_of
                .get(c.index())
                .copied()
                .ok_or_else(|| crate::Error::Input("unresolved 2-cell in a table".to_owned()))
        };
        let identity_cells = identity_cells.into_iter().map(resolve).collect::<Result<Vec<_>>>()?;
        let remap = |t: BTreeMap<(CellId, CellId), CellId>| -> Result<BTreeMap<(CellId, CellId), CellId>> {
            t.into_iter()
                .map(|((a, b), c)| Ok(((resolve(a)?, resolve(b)?), resolve(c)?)))
                .collect()
        };
        Ok(TwoCategory {
            name: name.into(),
            one,
            cells: sorted,
            cell_index,
            identity_cells,
            vcomp: remap(vcomp)?,
            hcomp: remap(hcomp)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Objects and 1-cells.
    pub fn underlying(&self) -> &Arc<FinCategory> {
        &self.one
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl ExactSizeIterator<Item = CellId> + Clone {
        (0..self.cells.len() as u32).map(CellId)
    }

    pub fn cell(&self, t: CellId) -> &TwoCell {
        &self.cells[t.index()]
    }

    pub fn cell_name(&self, t: CellId) -> &str {
        &self.cells[t.index()].id
    }

    pub fn cell_id(&self, name: &str) -> Option<CellId> {
        self.cell_index.get(name).copied()
    }

    pub fn identity_cell(&self, a: MorId) -> CellId {
        self.identity_cells[a.index()]
    }

    pub fn is_identity_cell(&self, t: CellId) -> bool {
        let c = &self.cells[t.index()];
        c.src == c.tgt && self.identity_cells[c.src.index()] == t
    }

    pub fn vcomp(&self, s: CellId, t: CellId) -> Option<CellId> {
        self.vcomp.get(&(s, t)).copied()
    }

    pub fn hcomp(&self, s: CellId, t: CellId) -> Option<CellId> {
        self.hcomp.get(&(s, t)).copied()
    }

    pub fn vcomp_table(&self) -> &BTreeMap<(CellId, CellId), CellId> {
        &self.vcomp
    }

    pub fn hcomp_table(&self) -> &BTreeMap<(CellId, CellId), CellId> {
        &self.hcomp
    }

    /// Pairs of composable 1-cells `(b, a)` with `src(b) = tgt(a)`.
    pub fn composable_one_cells(&self) -> Vec<(MorId, MorId)> {
        let c = &self.one;
        c.morphisms()
            .flat_map(|a| c.outgoing(c.tgt(a)).iter().map(move |&b| (b, a)))
            .collect()
    }

    pub fn identity_one_cell(&self, x: ObjId) -> MorId {
        self.one.identity(x)
    }

    /// Corrupts nothing; used by tests to build variants with replaced tables.
    pub fn with_tables(
        &self,
        vcomp: BTreeMap<(CellId, CellId), CellId>,
        hcomp: BTreeMap<(CellId, CellId), CellId>,
    ) -> Self {
        TwoCategory {
            vcomp,
            hcomp,
            ..self.clone()
        }
    }
}

/// Builds a 2-category from its underlying category and the non-identity
/// 2-cells. Identity 2-cells are named `1_<a>`; unit entries of both
/// compositions and `1_b * 1_a = 1_{ba}` are filled in, other entries must be
/// given.
pub struct TwoCategoryBuilder {
    name: String,
    one: Arc<FinCategory>,
    cells: Vec<(String, String, String)>,
    vcomp: Vec<(String, String, String)>,
    hcomp: Vec<(String, String, String)>,
}

impl TwoCategoryBuilder {
    pub fn new(name: impl Into<String>, one: Arc<FinCategory>) -> Self {
        TwoCategoryBuilder {
            name: name.into(),
            one,
            cells: Vec::new(),
            vcomp: Vec::new(),
            hcomp: Vec::new(),
        }
    }

    pub fn cell(mut self, id: &str, src: &str, tgt: &str) -> Self {
        self.cells.push((id.into(), src.into(), tgt.into()));
        self
    }

    /// Records `s · t = r`.
    pub fn vcomp(mut self, s: &str, t: &str, r: &str) -> Self {
        self.vcomp.push((s.into(), t.into(), r.into()));
        self
    }

    /// Records `s * t = r`.
    pub fn hcomp(mut self, s: &str, t: &str, r: &str) -> Self {
        self.hcomp.push((s.into(), t.into(), r.into()));
        self
    }

    pub fn build(self) -> Result<TwoCategory> {
        let one = self.one;
        let mor = |n: &str| {
            one.morphism_id(n)
                .ok_or_else(|| crate::Error::Input(format!("unknown 1-cell {n}")))
        };
        let mut cells: Vec<TwoCell> = one
            .morphisms()
            .map(|a| TwoCell {
                id: format!("1_{}", one.morphism_name(a)),
                src: a,
                tgt: a,
            })
            .collect();
        let identity_cells: Vec<CellId> = (0..cells.len() as u32).map(CellId).collect();
        for (id, s, t) in &self.cells {
            cells.push(TwoCell {
                id: id.clone(),
                src: mor(s)?,
                tgt: mor(t)?,
            });
        }
        let pos: HashMap<String, CellId> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), CellId(i as u32)))
            .collect();
        let cell = |n: &str| {
            pos.get(n)
                .copied()
                .ok_or_else(|| crate::Error::Input(format!("unknown 2-cell {n}")))
        };
        let mut vcomp = BTreeMap::new();
        let mut hcomp = BTreeMap::new();
        for (i, c) in cells.iter().enumerate() {
            let t = CellId(i as u32);
            vcomp.insert((t, identity_cells[c.src.index()]), t);
            vcomp.insert((identity_cells[c.tgt.index()], t), t);
            let (x, y) = (one.src(c.src), one.tgt(c.src));
            hcomp.insert((t, identity_cells[one.identity(x).index()]), t);
            hcomp.insert((identity_cells[one.identity(y).index()], t), t);
        }
        for a in one.morphisms() {
            for &b in one.outgoing(one.tgt(a)) {
                hcomp.insert(
                    (identity_cells[b.index()], identity_cells[a.index()]),
                    identity_cells[one.comp(b, a).index()],
                );
            }
        }
        for (s, t, r) in &self.vcomp {
            vcomp.insert((cell(s)?, cell(t)?), cell(r)?);
        }
        for (s, t, r) in &self.hcomp {
            hcomp.insert((cell(s)?, cell(t)?), cell(r)?);
        }
        TwoCategory::new(self.name, one.clone(), cells, identity_cells, vcomp, hcomp)
    }
}

/// Checks the enrichment laws: underlying category, both compositions
/// (typing, totality, units, associativity) and interchange.
pub fn validate_two_category(g: &TwoCategory) -> ValidationReport {
    let one = g.underlying();
    let mut out = validate_category(one).violations;
    if !out.is_empty() {
        return ValidationReport::from_violations(out);
    }
    let name = |t: CellId| g.cell_name(t);
    for a in one.morphisms() {
        let i = g.identity_cell(a);
        if g.cell(i).src != a || g.cell(i).tgt != a {
            out.push(violation("identity 2-cell typing", &[one.morphism_name(a)]));
        }
    }
    let cells: Vec<CellId> = g.cells().collect();
    // vertical composition
    for &t in &cells {
        for &s in &cells {
            let composable = g.cell(s).src == g.cell(t).tgt;
            match (composable, g.vcomp(s, t)) {
                (true, None) => out.push(violation("vertical totality", &[name(s), name(t)])),
                (false, Some(r)) => out.push(violation("vertical domain", &[name(s), name(t), name(r)])),
                (true, Some(r)) => {
                    if g.cell(r).src != g.cell(t).src || g.cell(r).tgt != g.cell(s).tgt {
                        out.push(violation("vertical typing", &[name(s), name(t), name(r)]));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for &t in &cells {
        let c = g.cell(t);
        if g.vcomp(t, g.identity_cell(c.src)) != Some(t) || g.vcomp(g.identity_cell(c.tgt), t) != Some(t) {
            out.push(violation("vertical identity", &[name(t)]));
        }
    }
    for &t in &cells {
        for &s in &cells {
            let Some(st) = g.vcomp(s, t) else { continue };
            for &r in &cells {
                let Some(rs) = g.vcomp(r, s) else { continue };
                if let (Some(x), Some(y)) = (g.vcomp(r, st), g.vcomp(rs, t)) {
                    if x != y {
                        out.push(violation("vertical associativity", &[name(r), name(s), name(t)]));
                    }
                }
            }
        }
    }
    // horizontal composition
    for &t in &cells {
        for &s in &cells {
            let (ct, cs) = (g.cell(t), g.cell(s));
            let composable = one.src(cs.src) == one.tgt(ct.src);
            match (composable, g.hcomp(s, t)) {
                (true, None) => out.push(violation("horizontal totality", &[name(s), name(t)])),
                (false, Some(r)) => out.push(violation("horizontal domain", &[name(s), name(t), name(r)])),
                (true, Some(r)) => {
                    let cr = g.cell(r);
                    if one.compose(cs.src, ct.src) != Some(cr.src) || one.compose(cs.tgt, ct.tgt) != Some(cr.tgt) {
                        out.push(violation("horizontal typing", &[name(s), name(t), name(r)]));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for &t in &cells {
        let c = g.cell(t);
        let (x, y) = (one.src(c.src), one.tgt(c.src));
        let (ix, iy) = (g.identity_cell(one.identity(x)), g.identity_cell(one.identity(y)));
        if g.hcomp(t, ix) != Some(t) || g.hcomp(iy, t) != Some(t) {
            out.push(violation("horizontal identity", &[name(t)]));
        }
    }
    for a in one.morphisms() {
        for &b in one.outgoing(one.tgt(a)) {
            let want = g.identity_cell(one.comp(b, a));
            if g.hcomp(g.identity_cell(b), g.identity_cell(a)) != Some(want) {
                out.push(violation(
                    "identity interchange",
                    &[one.morphism_name(b), one.morphism_name(a)],
                ));
            }
        }
    }
    for &t in &cells {
        for &s in &cells {
            let Some(st) = g.hcomp(s, t) else { continue };
            for &r in &cells {
                let Some(rs) = g.hcomp(r, s) else { continue };
                if let (Some(x), Some(y)) = (g.hcomp(r, st), g.hcomp(rs, t)) {
                    if x != y {
                        out.push(violation("horizontal associativity", &[name(r), name(s), name(t)]));
                    }
                }
            }
        }
    }
    // interchange: (s2·s1) * (t2·t1) = (s2*t2) · (s1*t1)
    for &t1 in &cells {
        for &t2 in &cells {
            let Some(t21) = g.vcomp(t2, t1) else { continue };
            for &s1 in &cells {
                let Some(s1t1) = g.hcomp(s1, t1) else { continue };
                for &s2 in &cells {
                    let (Some(s21), Some(s2t2)) = (g.vcomp(s2, s1), g.hcomp(s2, t2)) else {
                        continue;
                    };
                    let lhs = g.hcomp(s21, t21);
                    let rhs = g.vcomp(s2t2, s1t1);
                    if lhs.is_some() && rhs.is_some() && lhs != rhs {
                        out.push(violation("interchange", &[name(s2), name(s1), name(t2), name(t1)]));
                    }
                }
            }
        }
    }
    ValidationReport::from_violations(out)
}
