use std::collections::HashMap;
use std::fmt;

use crate::budget::Budget;
use crate::error::{input, resource, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NO_MOR: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// A finite category stored as explicit tables.
///
/// Objects and morphisms are kept sorted by identifier, so `ObjId` and
/// `MorId` order is the lexicographic order of the identifiers. Composition
/// is stored for every composable pair; tables read from user files may be
/// incomplete or wrong, which `validate_category` reports.
#[derive(Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    object_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, MorId>,
    identities: Vec<MorId>,
    // outgoing[x] is sorted by (tgt, id), so a hom-set is a contiguous slice.
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    out_pos: Vec<u32>,
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
    stray: Vec<(MorId, MorId, MorId)>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
            && self.stray == other.stray
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("name", &self.name)
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

/// Index-based description of a category, consumed by [`RawCategory::build`].
///
/// Entries may be given in any order; building sorts them by identifier.
#[derive(Debug, Clone, Default)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    pub identities: Vec<usize>,
}

impl RawCategory {
    pub fn new(name: impl Into<String>) -> Self {
        RawCategory {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, id: impl Into<String>) -> usize {
        self.objects.push(id.into());
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.morphisms.push((id.into(), src, tgt));
        self.morphisms.len() - 1
    }

    /// Builds the category, asking `compose(g, f)` for `g ∘ f` on every
    /// composable pair (raw indices in and out). `None` leaves a hole that
    /// validation reports as a totality violation.
    pub fn build(self, budget: &Budget, mut compose: impl FnMut(usize, usize) -> Option<usize>) -> Result<FinCategory> {
        Ok(self.build_with_strays(budget, &mut compose, Vec::new())?.0)
    }

    /// Like [`RawCategory::build`], also returning the id assigned to each
    /// raw object and raw morphism.
    pub fn build_indexed(
        self,
        budget: &Budget,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<(FinCategory, Vec<ObjId>, Vec<MorId>)> {
        self.build_with_strays(budget, &mut compose, Vec::new())
    }

    pub(crate) fn build_with_strays(
        self,
        budget: &Budget,
        compose: &mut dyn FnMut(usize, usize) -> Option<usize>,
        stray_raw: Vec<(usize, usize, usize)>,
    ) -> Result<(FinCategory, Vec<ObjId>, Vec<MorId>)> {
        let RawCategory {
            name,
            objects,
            morphisms,
            identities,
        } = self;
        let n = objects.len();
        let m = morphisms.len();
        if identities.len() != n {
            return input(format!(
                "category {name}: {} identities for {n} objects",
                identities.len()
            ));
        }
        if n > u32::MAX as usize - 1 || m > NO_MOR as usize - 1 {
            return resource(format!("category {name} is too large"));
        }
        for &(ref id, s, t) in &morphisms {
            if s >= n || t >= n {
                return input(format!("morphism {id} has an unresolved endpoint"));
            }
        }

        let mut obj_order: Vec<usize> = (0..n).collect();
        obj_order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut obj_new = vec![0u32; n];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new as u32;
        }
        let mut mor_order: Vec<usize> = (0..m).collect();
        mor_order.sort_by(|&a, &b| morphisms[a].0.cmp(&morphisms[b].0));
        let mut mor_new = vec![0u32; m];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new as u32;
        }

        let mut object_index = HashMap::with_capacity(n);
        let mut sorted_objects = Vec::with_capacity(n);
        for &old in &obj_order {
            let id = objects[old].clone();
            if object_index
                .insert(id.clone(), ObjId(sorted_objects.len() as u32))
                .is_some()
            {
                return input(format!("duplicate object id {id}"));
            }
            sorted_objects.push(id);
        }
        let mut morphism_index = HashMap::with_capacity(m);
        let mut sorted_morphisms = Vec::with_capacity(m);
        for &old in &mor_order {
            let (id, s, t) = &morphisms[old];
            if morphism_index
                .insert(id.clone(), MorId(sorted_morphisms.len() as u32))
                .is_some()
            {
                return input(format!("duplicate morphism id {id}"));
            }
            sorted_morphisms.push(Morphism {
                id: id.clone(),
                src: ObjId(obj_new[*s]),
                tgt: ObjId(obj_new[*t]),
            });
        }
        let mut sorted_identities = vec![MorId(0); n];
        for (old_obj, &old_mor) in identities.iter().enumerate() {
            if old_mor >= m {
                return input(format!("identity of object {} is unresolved", objects[old_obj]));
            }
            sorted_identities[obj_new[old_obj] as usize] = MorId(mor_new[old_mor]);
        }

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, mo) in sorted_morphisms.iter().enumerate() {
            outgoing[mo.src.index()].push(MorId(i as u32));
            incoming[mo.tgt.index()].push(MorId(i as u32));
        }
        for out in &mut outgoing {
            out.sort_by_key(|f| (sorted_morphisms[f.index()].tgt, *f));
        }
        let mut out_pos = vec![0u32; m];
        for out in &outgoing {
            for (p, f) in out.iter().enumerate() {
                out_pos[f.index()] = p as u32;
            }
        }

        let mut comp_offset = Vec::with_capacity(m + 1);
        let mut total: u64 = 0;
        for mo in &sorted_morphisms {
            comp_offset.push(total as usize);
            total += outgoing[mo.tgt.index()].len() as u64;
        }
        comp_offset.push(total as usize);
        if total > budget.table_entries {
            return resource(format!(
                "category {name}: composition table of {total} entries exceeds budget {}",
                budget.table_entries
            ));
        }
        let mut comp = vec![NO_MOR; total as usize];
        for (fi, mo) in sorted_morphisms.iter().enumerate() {
            let raw_f = mor_order[fi];
            let base = comp_offset[fi];
            for (p, g) in outgoing[mo.tgt.index()].iter().enumerate() {
                let raw_g = mor_order[g.index()];
                if let Some(raw_h) = compose(raw_g, raw_f) {
                    if raw_h >= m {
                        return input(format!(
                            "composite of {} and {} is unresolved",
                            sorted_morphisms[g.index()].id,
                            mo.id
                        ));
                    }
                    comp[base + p] = mor_new[raw_h];
                }
            }
        }
        let stray = stray_raw
            .into_iter()
            .map(|(g, f, h)| (MorId(mor_new[g]), MorId(mor_new[f]), MorId(mor_new[h])))
            .collect();

        let cat = FinCategory {
            name,
            objects: sorted_objects,
            object_index,
            morphisms: sorted_morphisms,
            morphism_index,
            identities: sorted_identities,
            outgoing,
            incoming,
            out_pos,
            comp_offset,
            comp,
            stray,
        };
        Ok((
            cat,
            obj_new.into_iter().map(ObjId).collect(),
            mor_new.into_iter().map(MorId).collect(),
        ))
    }
}

/// String-keyed builder, mainly for hand-written categories and file input.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composition: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn object(mut self, id: &str) -> Self {
        self.objects.push(id.to_owned());
        self
    }

    pub fn morphism(mut self, id: &str, src: &str, tgt: &str) -> Self {
        self.morphisms.push((id.to_owned(), src.to_owned(), tgt.to_owned()));
        self
    }

    pub fn identity(mut self, obj: &str, mor: &str) -> Self {
        self.identities.push((obj.to_owned(), mor.to_owned()));
        self
    }

    /// Records `g ∘ f = gf`.
    pub fn compose(mut self, g: &str, f: &str, gf: &str) -> Self {
        self.composition.push((g.to_owned(), f.to_owned(), gf.to_owned()));
        self
    }

    /// Adds an object together with an identity morphism named `id_<obj>`
    /// and the identity-law composition entries it needs once all morphisms
    /// are known (see [`CategoryBuilder::with_identity_laws`]).
    pub fn object_with_identity(self, id: &str) -> Self {
        let idm = format!("id_{id}");
        self.object(id).morphism(&idm, id, id).identity(id, &idm)
    }

    /// Fills in `f ∘ id = f` and `id ∘ f = f` for every morphism, skipping
    /// entries that were given explicitly.
    pub fn with_identity_laws(mut self) -> Self {
        let ids: HashMap<&str, &str> = self.identities.iter().map(|(o, m)| (o.as_str(), m.as_str())).collect();
        let mut have: std::collections::HashSet<(String, String)> = self
            .composition
            .iter()
            .map(|(g, f, _)| (g.clone(), f.clone()))
            .collect();
        let mut extra = Vec::new();
        for (f, s, t) in &self.morphisms {
            if let Some(&is) = ids.get(s.as_str()) {
                if have.insert((f.clone(), is.to_owned())) {
                    extra.push((f.clone(), is.to_owned(), f.clone()));
                }
            }
            if let Some(&it) = ids.get(t.as_str()) {
                if have.insert((it.to_owned(), f.clone())) {
                    extra.push((it.to_owned(), f.clone(), f.clone()));
                }
            }
        }
        self.composition.extend(extra);
        self
    }

    pub fn build(self) -> Result<FinCategory> {
        let mut raw = RawCategory::new(self.name);
        let mut obj_ix: HashMap<String, usize> = HashMap::new();
        for o in &self.objects {
            if obj_ix.insert(o.clone(), raw.objects.len()).is_some() {
                return input(format!("duplicate object id {o}"));
            }
            raw.objects.push(o.clone());
        }
        let mut mor_ix: HashMap<String, usize> = HashMap::new();
        for (id, s, t) in &self.morphisms {
            let s_i = *obj_ix
                .get(s)
                .ok_or_else(|| crate::Error::Input(format!("morphism {id}: unknown source {s}")))?;
            let t_i = *obj_ix
                .get(t)
                .ok_or_else(|| crate::Error::Input(format!("morphism {id}: unknown target {t}")))?;
            if mor_ix.insert(id.clone(), raw.morphisms.len()).is_some() {
                return input(format!("duplicate morphism id {id}"));
            }
            raw.morphisms.push((id.clone(), s_i, t_i));
        }
        let mut identities: Vec<Option<usize>> = vec![None; raw.objects.len()];
        for (o, mo) in &self.identities {
            let oi = *obj_ix
                .get(o)
                .ok_or_else(|| crate::Error::Input(format!("identity for unknown object {o}")))?;
            let mi = *mor_ix
                .get(mo)
                .ok_or_else(|| crate::Error::Input(format!("identity {mo} is not a morphism")))?;
            if identities[oi].replace(mi).is_some() {
                return input(format!("object {o} has two identities"));
            }
        }
        raw.identities = identities
            .iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| crate::Error::Input(format!("object {} has no identity", raw.objects[i]))))
            .collect::<Result<_>>()?;

        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        let mut stray = Vec::new();
        for (g, f, h) in &self.composition {
            let look = |id: &String| {
                mor_ix
                    .get(id)
                    .copied()
                    .ok_or_else(|| crate::Error::Input(format!("composition mentions unknown morphism {id}")))
            };
            let (gi, fi, hi) = (look(g)?, look(f)?, look(h)?);
            if let Some(prev) = table.insert((gi, fi), hi) {
                if prev != hi {
                    return input(format!("composition of {g} and {f} given twice"));
                }
            }
            if raw.morphisms[fi].2 != raw.morphisms[gi].1 {
                stray.push((gi, fi, hi));
            }
        }
        Ok(raw
            .build_with_strays(&Budget::unlimited(), &mut |g, f| table.get(&(g, f)).copied(), stray)?
            .0)
    }
}

impl FinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.index()]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.index()]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f.index()].id
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    #[inline]
    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].src
    }

    #[inline]
    pub fn tgt(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].tgt
    }

    #[inline]
    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        let s = self.src(f);
        s == self.tgt(f) && self.identity(s) == f
    }

    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.outgoing[x.index()]
    }

    pub fn incoming(&self, x: ObjId) -> &[MorId] {
        &self.incoming[x.index()]
    }

    /// Morphisms `x → y` in identifier order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        let out = &self.outgoing[x.index()];
        let lo = out.partition_point(|f| self.tgt(*f) < y);
        let hi = out.partition_point(|f| self.tgt(*f) <= y);
        &out[lo..hi]
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table has a hole.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.src(g) != self.tgt(f) {
            return None;
        }
        let h = self.comp[self.comp_offset[f.index()] + self.out_pos[g.index()] as usize];
        (h != NO_MOR).then_some(MorId(h))
    }

    /// `g ∘ f` on a composable pair of a valid category.
    ///
    /// Panics on a hole in the table; callers must only use this on
    /// categories that passed validation or were produced by a construction.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        match self.compose(g, f) {
            Some(h) => h,
            None => panic!(
                "category {}: no composite for {} ∘ {}",
                self.name,
                self.morphism_name(g),
                self.morphism_name(f)
            ),
        }
    }

    /// Composite of a path given in application order (first morphism first).
    pub fn comp_path(&self, path: &[MorId]) -> MorId {
        let mut it = path.iter();
        let mut acc = *it.next().expect("empty path");
        for &g in it {
            acc = self.comp(g, acc);
        }
        acc
    }

    pub fn num_composable_pairs(&self) -> usize {
        self.comp.len()
    }

    pub(crate) fn stray_compositions(&self) -> &[(MorId, MorId, MorId)] {
        &self.stray
    }

    /// A two-sided inverse found by scanning the composition table.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (s, t) = (self.src(f), self.tgt(f));
        let (ids, idt) = (self.identity(s), self.identity(t));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(ids) && self.compose(f, g) == Some(idt))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Least isomorphism `x → y`, if any.
    pub fn find_iso(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        self.hom(x, y).iter().copied().find(|&f| self.is_iso(f))
    }

    pub fn isos(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.hom(x, y).iter().copied().filter(|&f| self.is_iso(f)).collect()
    }

    /// Full subcategory on `keep` (any order, duplicates ignored), names preserved.
    pub fn full_subcategory(&self, name: impl Into<String>, keep: &[ObjId]) -> Result<FullSubcategory> {
        let mut kept: Vec<ObjId> = keep.to_vec();
        kept.sort();
        kept.dedup();
        let mut local = vec![usize::MAX; self.num_objects()];
        let mut raw = RawCategory::new(name);
        for (i, &x) in kept.iter().enumerate() {
            local[x.index()] = i;
            raw.add_object(self.object_name(x));
        }
        let mut mor_local = HashMap::new();
        let mut mors = Vec::new();
        for &x in &kept {
            for &f in self.outgoing(x) {
                let t = self.tgt(f);
                if local[t.index()] != usize::MAX {
                    mor_local.insert(f, mors.len());
                    mors.push(f);
                    raw.add_morphism(self.morphism_name(f), local[x.index()], local[t.index()]);
                }
            }
        }
        raw.identities = kept.iter().map(|&x| mor_local[&self.identity(x)]).collect();
        let cat = raw.build(&Budget::unlimited(), |g, f| {
            self.compose(mors[g], mors[f]).map(|h| mor_local[&h])
        })?;
        let objects = kept;
        let morphisms = cat
            .morphisms()
            .map(|f| self.morphism_id(cat.morphism_name(f)).expect("name preserved"))
            .collect();
        Ok(FullSubcategory {
            category: cat,
            objects,
            morphisms,
        })
    }
}

/// A materialized full subcategory with its inclusion data.
#[derive(Debug, Clone)]
pub struct FullSubcategory {
    pub category: FinCategory,
    /// Ambient object for each local object.
    pub objects: Vec<ObjId>,
    /// Ambient morphism for each local morphism.
    pub morphisms: Vec<MorId>,
}

impl FullSubcategory {
    // local order is the ambient order restricted, so both lists are sorted
    pub fn local_object(&self, x: ObjId) -> Option<ObjId> {
        self.objects.binary_search(&x).ok().map(|i| ObjId(i as u32))
    }

    pub fn local_morphism(&self, f: MorId) -> Option<MorId> {
        self.morphisms.binary_search(&f).ok().map(|i| MorId(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FinCategory {
        CategoryBuilder::new("arrow")
            .object_with_identity("0")
            .object_with_identity("1")
            .morphism("f", "0", "1")
            .with_identity_laws()
            .build()
            .unwrap()
    }

    #[test]
    fn hom_sets_are_sorted_slices() {
        let c = arrow();
        let (x0, x1) = (c.object_id("0").unwrap(), c.object_id("1").unwrap());
        let f = c.morphism_id("f").unwrap();
        assert_eq!(c.hom(x0, x1), &[f]);
        assert!(c.hom(x1, x0).is_empty());
        assert_eq!(c.hom(x0, x0), &[c.identity(x0)]);
        assert_eq!(c.compose(f, c.identity(x0)), Some(f));
        assert_eq!(c.compose(c.identity(x0), f), None);
    }

    #[test]
    fn unresolved_source_is_an_input_error() {
        let err = CategoryBuilder::new("bad")
            .object_with_identity("a")
            .morphism("f", "a", "zz")
            .build()
            .unwrap_err();
        assert!(matches!(err, crate::Error::Input(ref m) if m.contains("zz")));
    }

    #[test]
    fn missing_identity_is_an_input_error() {
        let err = CategoryBuilder::new("bad").object("a").build().unwrap_err();
        assert!(matches!(err, crate::Error::Input(_)));
    }

    #[test]
    fn full_subcategory_keeps_names() {
        let c = arrow();
        let x1 = c.object_id("1").unwrap();
        let sub = c.full_subcategory("one", &[x1]).unwrap();
        assert_eq!(sub.category.num_objects(), 1);
        assert_eq!(sub.category.num_morphisms(), 1);
        assert_eq!(sub.category.morphism_name(MorId(0)), "id_1");
    }

    #[test]
    fn inverse_scan() {
        let c = CategoryBuilder::new("iso")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("f", "a", "b")
            .morphism("g", "b", "a")
            .compose("g", "f", "id_a")
            .compose("f", "g", "id_b")
            .with_identity_laws()
            .build()
            .unwrap();
        let f = c.morphism_id("f").unwrap();
        assert_eq!(c.inverse(f), c.morphism_id("g"));
    }
}
