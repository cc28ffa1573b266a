use std::collections::HashMap;
use std::sync::Arc;

use super::quiver::{path_order, Path, Quiver, Relation, RelationSet};
use super::scalar::Coefficient;
use crate::cat::{violation, ValidationReport};
use crate::error::{input, Result};

/// Hermite normal form of the row span: echelon rows with canonical pivots
/// and reduced entries above each pivot. Returns the rows and their pivot
/// columns.
pub fn hermite<R: Coefficient>(mut m: Vec<Vec<R>>, ncols: usize) -> (Vec<Vec<R>>, Vec<usize>) {
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let mut found = false;
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| (m[i][col].euclid_norm(), i));
            let Some(best) = best else { break };
            found = true;
            m.swap(r, best);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let (q, _) = m[i][col].div_rem_canonical(m[r][col]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = *x - q * y;
                }
                if !m[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        let u = m[r][col].normalizing_unit();
        for x in m[r].iter_mut() {
            *x = *x * u;
        }
        let pivot_row = m[r].clone();
        for i in 0..r {
            let (q, _) = m[i][col].div_rem_canonical(pivot_row[col]);
            if q.is_zero() {
                continue;
            }
            for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                *x = *x - q * y;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical representative of `v` modulo the span of Hermite rows.
pub fn reduce<R: Coefficient>(rows: &[Vec<R>], pivots: &[usize], v: &mut [R]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let (q, _) = v[p].div_rem_canonical(row[p]);
        if q.is_zero() {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(row) {
            *x = *x - q * y;
        }
    }
}

#[derive(Debug, Clone)]
struct Hom<R> {
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    rows: Vec<Vec<R>>,
    pivots: Vec<usize>,
}

/// A k-linear category presented by an acyclic quiver and relations: hom
/// modules are spanned by paths, reduced modulo the ideal the relations
/// generate.
#[derive(Debug, Clone)]
pub struct LinearCategory<R: Coefficient> {
    quiver: Arc<Quiver>,
    relations: RelationSet<R>,
    homs: Vec<Vec<Hom<R>>>,
}

/// Free path category; cyclic quivers have infinite hom bases and are
/// rejected.
pub fn free_path_category<R: Coefficient>(q: Arc<Quiver>) -> Result<LinearCategory<R>> {
    if !q.is_acyclic() {
        return Err(crate::Error::Unsupported(format!(
            "quiver {} has a cycle, so its path category is infinite",
            q.name()
        )));
    }
    let n = q.vertices().len();
    let mut by_src: Vec<Vec<Path>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut stack = vec![Path::empty(v)];
        while let Some(p) = stack.pop() {
            for (i, a) in q.arrows().iter().enumerate() {
                if a.src == p.tgt {
                    let mut next = p.clone();
                    next.arrows.push(i);
                    next.tgt = a.tgt;
                    stack.push(next);
                }
            }
            by_src[v].push(p);
        }
    }
    let mut homs: Vec<Vec<Hom<R>>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Hom {
                    paths: Vec::new(),
                    index: HashMap::new(),
                    rows: Vec::new(),
                    pivots: Vec::new(),
                })
                .collect()
        })
        .collect();
    for paths in by_src {
        for p in paths {
            homs[p.src][p.tgt].paths.push(p);
        }
    }
    for row in homs.iter_mut() {
        for h in row.iter_mut() {
            h.paths.sort_by(path_order);
            h.index = h.paths.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect();
        }
    }
    Ok(LinearCategory {
        quiver: q,
        relations: Vec::new(),
        homs,
    })
}

/// `B / J` for the two-sided ideal generated by `rels`.
pub fn quotient_by_relations<R: Coefficient>(b: &LinearCategory<R>, rels: RelationSet<R>) -> Result<LinearCategory<R>> {
    let n = b.quiver.vertices().len();
    for r in &rels {
        if r.src >= n || r.tgt >= n {
            return input("relation refers to an unknown vertex".to_owned());
        }
        for (_, p) in &r.terms {
            if b.path_index(p).is_none() {
                return input(format!("relation term {} is not a path", b.quiver.path_label(p)));
            }
        }
    }
    let mut all: Vec<Relation<R>> = b.relations.clone();
    all.extend(rels);
    let mut out = LinearCategory {
        quiver: b.quiver.clone(),
        relations: all,
        homs: b.homs.clone(),
    };
    for x in 0..n {
        for y in 0..n {
            let gens = out.ideal_generators(x, y);
            let ncols = out.homs[x][y].paths.len();
            let (rows, pivots) = hermite(gens, ncols);
            out.homs[x][y].rows = rows;
            out.homs[x][y].pivots = pivots;
        }
    }
    Ok(out)
}

impl<R: Coefficient> LinearCategory<R> {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet<R> {
        &self.relations
    }

    pub fn num_objects(&self) -> usize {
        self.homs.len()
    }

    /// All paths `a → b` in canonical order.
    pub fn hom_basis(&self, a: usize, b: usize) -> &[Path] {
        &self.homs[a][b].paths
    }

    /// Free rank of `Hom(a, b)` in the quotient.
    pub fn rank(&self, a: usize, b: usize) -> usize {
        let h = &self.homs[a][b];
        h.paths.len() - h.rows.len()
    }

    /// Paths that are not pivots of the ideal; a basis of the quotient over
    /// a field.
    pub fn quotient_basis(&self, a: usize, b: usize) -> Vec<&Path> {
        let h = &self.homs[a][b];
        h.paths
            .iter()
            .enumerate()
            .filter(|(i, _)| h.pivots.binary_search(i).is_err())
            .map(|(_, p)| p)
            .collect()
    }

    fn path_index(&self, p: &Path) -> Option<usize> {
        self.homs.get(p.src)?.get(p.tgt)?.index.get(&p.arrows).copied()
    }

    /// Coefficient vector of a combination of paths `a → b`, not reduced.
    fn raw_vector(&self, a: usize, b: usize, terms: &[(R, Path)]) -> Vec<R> {
        let mut v = vec![R::zero(); self.homs[a][b].paths.len()];
        for (c, p) in terms {
            let i = self.homs[a][b].index[&p.arrows];
            v[i] = v[i] + *c;
        }
        v
    }

    fn ideal_generators(&self, a: usize, b: usize) -> Vec<Vec<R>> {
        let mut out = Vec::new();
        for r in &self.relations {
            for q in &self.homs[a][r.src].paths {
                for p in &self.homs[r.tgt][b].paths {
                    let terms: Vec<(R, Path)> = r
                        .terms
                        .iter()
                        .map(|(c, m)| {
                            let full = q.then(m).and_then(|qm| qm.then(p)).expect("typed relation");
                            (*c, full)
                        })
                        .collect();
                    out.push(self.raw_vector(a, b, &terms));
                }
            }
        }
        out
    }

    /// Normal form of a coefficient vector over the path basis of `(a, b)`.
    pub fn normal_form(&self, a: usize, b: usize, v: &[R]) -> Vec<R> {
        let h = &self.homs[a][b];
        let mut v = v.to_vec();
        reduce(&h.rows, &h.pivots, &mut v);
        v
    }

    pub fn element(&self, p: &Path) -> Option<Vec<R>> {
        let i = self.path_index(p)?;
        let mut v = vec![R::zero(); self.homs[p.src][p.tgt].paths.len()];
        v[i] = R::one();
        Some(self.normal_form(p.src, p.tgt, &v))
    }

    pub fn combination(&self, a: usize, b: usize, terms: &[(R, Path)]) -> Vec<R> {
        let v = self.raw_vector(a, b, terms);
        self.normal_form(a, b, &v)
    }

    pub fn is_zero(&self, a: usize, b: usize, v: &[R]) -> bool {
        self.normal_form(a, b, v).iter().all(|c| c.is_zero())
    }

    /// `g ∘ f` for `f: a → b`, `g: b → c`, extended bilinearly.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &[R], f: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.homs[a][c].paths.len()];
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in g.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = self.homs[a][b].paths[i]
                    .then(&self.homs[b][c].paths[j])
                    .expect("composable");
                let k = self.homs[a][c].index[&p.arrows];
                out[k] = out[k] + *x * *y;
            }
        }
        self.normal_form(a, c, &out)
    }

    /// Composition is well defined on normal forms: composing any ideal
    /// element with a basis path on either side stays in the ideal, and
    /// empty paths act as identities.
    pub fn check_composition(&self) -> ValidationReport {
        let n = self.num_objects();
        let q = &self.quiver;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for row in &self.homs[a][b].rows {
                    for c in 0..n {
                        for (j, p) in self.homs[b][c].paths.iter().enumerate() {
                            let mut e = vec![R::zero(); self.homs[b][c].paths.len()];
                            e[j] = R::one();
                            if !self.is_zero(a, c, &self.compose(a, b, c, &e, row)) {
                                out.push(violation("ideal closed under composition", &[&q.path_label(p)]));
                            }
                        }
                        for (j, p) in self.homs[c][a].paths.iter().enumerate() {
                            let mut e = vec![R::zero(); self.homs[c][a].paths.len()];
                            e[j] = R::one();
                            if !self.is_zero(c, b, &self.compose(c, a, b, row, &e)) {
                                out.push(violation("ideal closed under composition", &[&q.path_label(p)]));
                            }
                        }
                    }
                }
                for (i, p) in self.homs[a][b].paths.iter().enumerate() {
                    let mut e = vec![R::zero(); self.homs[a][b].paths.len()];
                    e[i] = R::one();
                    let e = self.normal_form(a, b, &e);
                    let ida = self.element(&Path::empty(a)).expect("identity");
                    let idb = self.element(&Path::empty(b)).expect("identity");
                    if self.compose(a, a, b, &e, &ida) != e || self.compose(a, b, b, &idb, &e) != e {
                        out.push(violation("identity paths are neutral", &[&q.path_label(p)]));
                    }
                }
            }
        }
        ValidationReport::from_violations(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::scalar::F3;

    #[test]
    fn hermite_over_integers() {
        let (rows, piv) = hermite::<i64>(vec![vec![4, 6], vec![6, 9]], 2);
        assert_eq!(piv, vec![0]);
        assert_eq!(rows, vec![vec![2, 3]]);
        let mut v = vec![5, 1];
        reduce(&rows, &piv, &mut v);
        assert_eq!(v, vec![1, -5]);
    }

    #[test]
    fn hermite_over_a_field() {
        let r = |a: i64, b: i64| vec![F3::new(a), F3::new(b)];
        let (rows, piv) = hermite(vec![r(2, 1), r(1, 2)], 2);
        assert_eq!(piv, vec![0]);
        assert_eq!(rows, vec![r(1, 2)]);
    }
}
