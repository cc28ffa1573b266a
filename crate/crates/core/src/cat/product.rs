use std::sync::Arc;

use super::category::{FinCategory, MorId, ObjId, RawCategory};
use super::functor::{same_category, FinFunctor, NatTransformation};
use crate::budget::Budget;
use crate::error::{input, resource, Result};

/// A materialized finite product with its projections.
///
/// Objects are named `(x1,...,xn)` and morphisms `(f1,...,fn)`; the empty
/// product is the terminal category on `()`.
#[derive(Debug, Clone)]
pub struct Product {
    pub category: Arc<FinCategory>,
    pub factors: Vec<Arc<FinCategory>>,
    pub projections: Vec<FinFunctor>,
    // tuple index (mixed radix over factors) -> id in the built category
    obj_of_tuple: Vec<ObjId>,
    mor_of_tuple: Vec<MorId>,
}

fn tuple_name<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let v: Vec<&str> = parts.collect();
    format!("({})", v.join(","))
}

fn decode(mut ix: usize, radix: &[usize], out: &mut [usize]) {
    for i in (0..radix.len()).rev() {
        out[i] = ix % radix[i];
        ix /= radix[i];
    }
}

fn encode(parts: impl Iterator<Item = usize>, radix: &[usize]) -> usize {
    parts.zip(radix).fold(0, |acc, (p, r)| acc * r + p)
}

fn checked_size(radix: &[usize], what: &str) -> Result<usize> {
    radix
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .map_or_else(|| resource(format!("product has too many {what}")), Ok)
}

/// Number of composable pairs the product's composition table would hold.
pub fn product_table_estimate(factors: &[Arc<FinCategory>]) -> u128 {
    factors.iter().map(|c| c.num_composable_pairs() as u128).product()
}

pub fn product_category(factors: &[Arc<FinCategory>], budget: &Budget) -> Result<Product> {
    let name = if factors.is_empty() {
        "1".to_owned()
    } else {
        factors.iter().map(|c| c.name()).collect::<Vec<_>>().join("×")
    };
    let orad: Vec<usize> = factors.iter().map(|c| c.num_objects()).collect();
    let mrad: Vec<usize> = factors.iter().map(|c| c.num_morphisms()).collect();
    let no = checked_size(&orad, "objects")?;
    let nm = checked_size(&mrad, "morphisms")?;
    if nm as u64 > budget.table_entries {
        return resource(format!("product {name} has {nm} morphisms"));
    }
    let k = factors.len();
    let mut raw = RawCategory::new(name);
    let mut buf = vec![0usize; k];
    for ix in 0..no {
        decode(ix, &orad, &mut buf);
        raw.add_object(tuple_name(
            factors.iter().zip(&buf).map(|(c, &i)| c.object_name(ObjId(i as u32))),
        ));
    }
    for ix in 0..nm {
        decode(ix, &mrad, &mut buf);
        let name = tuple_name(factors.iter().zip(&buf).map(|(c, &i)| c.morphism_name(MorId(i as u32))));
        let s = encode(
            factors.iter().zip(&buf).map(|(c, &i)| c.src(MorId(i as u32)).index()),
            &orad,
        );
        let t = encode(
            factors.iter().zip(&buf).map(|(c, &i)| c.tgt(MorId(i as u32)).index()),
            &orad,
        );
        raw.add_morphism(name, s, t);
    }
    raw.identities = (0..no)
        .map(|ix| {
            decode(ix, &orad, &mut buf);
            encode(
                factors
                    .iter()
                    .zip(&buf)
                    .map(|(c, &i)| c.identity(ObjId(i as u32)).index()),
                &mrad,
            )
        })
        .collect();
    let mut gb = vec![0usize; k];
    let mut fb = vec![0usize; k];
    let (cat, obj_of_tuple, mor_of_tuple) = raw.build_indexed(budget, |g, f| {
        decode(g, &mrad, &mut gb);
        decode(f, &mrad, &mut fb);
        let mut acc = 0usize;
        for i in 0..k {
            let h = factors[i].compose(MorId(gb[i] as u32), MorId(fb[i] as u32))?;
            acc = acc * mrad[i] + h.index();
        }
        Some(acc)
    })?;
    let cat = Arc::new(cat);
    let mut obj_comp = vec![vec![ObjId(0); no]; k];
    for ix in 0..no {
        decode(ix, &orad, &mut buf);
        for i in 0..k {
            obj_comp[i][obj_of_tuple[ix].index()] = ObjId(buf[i] as u32);
        }
    }
    let mut mor_comp = vec![vec![MorId(0); nm]; k];
    for ix in 0..nm {
        decode(ix, &mrad, &mut buf);
        for i in 0..k {
            mor_comp[i][mor_of_tuple[ix].index()] = MorId(buf[i] as u32);
        }
    }
    let projections = obj_comp
        .into_iter()
        .zip(mor_comp)
        .zip(factors)
        .map(|((om, mm), f)| FinFunctor::new(cat.clone(), f.clone(), om, mm))
        .collect::<Result<Vec<_>>>()?;
    Ok(Product {
        category: cat,
        factors: factors.to_vec(),
        projections,
        obj_of_tuple,
        mor_of_tuple,
    })
}

impl Product {
    pub fn object_of(&self, parts: &[ObjId]) -> ObjId {
        let radix: Vec<usize> = self.factors.iter().map(|c| c.num_objects()).collect();
        self.obj_of_tuple[encode(parts.iter().map(|x| x.index()), &radix)]
    }

    pub fn morphism_of(&self, parts: &[MorId]) -> MorId {
        let radix: Vec<usize> = self.factors.iter().map(|c| c.num_morphisms()).collect();
        self.mor_of_tuple[encode(parts.iter().map(|x| x.index()), &radix)]
    }

    pub fn object_parts(&self, x: ObjId) -> Vec<ObjId> {
        self.projections.iter().map(|p| p.obj(x)).collect()
    }

    pub fn morphism_parts(&self, f: MorId) -> Vec<MorId> {
        self.projections.iter().map(|p| p.mor(f)).collect()
    }

    /// The pairing `⟨F_1, ..., F_n⟩` of functors out of a common source.
    pub fn pairing(&self, functors: &[FinFunctor]) -> Result<FinFunctor> {
        if functors.len() != self.factors.len() {
            return input("pairing needs one functor per factor".to_owned());
        }
        for (f, c) in functors.iter().zip(&self.factors) {
            if !same_category(f.target(), c) {
                return input("pairing functor lands outside its factor".to_owned());
            }
        }
        let src = match functors.first() {
            Some(f) => f.source().clone(),
            None => return input("pairing of an empty family has no source".to_owned()),
        };
        if functors.iter().any(|f| !same_category(f.source(), &src)) {
            return input("pairing functors have different sources".to_owned());
        }
        let mut om = Vec::with_capacity(src.num_objects());
        let mut parts = Vec::with_capacity(functors.len());
        for x in src.objects() {
            parts.clear();
            parts.extend(functors.iter().map(|f| f.obj(x)));
            om.push(self.object_of(&parts));
        }
        let mut mm = Vec::with_capacity(src.num_morphisms());
        let mut mparts = Vec::with_capacity(functors.len());
        for m in src.morphisms() {
            mparts.clear();
            mparts.extend(functors.iter().map(|f| f.mor(m)));
            mm.push(self.morphism_of(&mparts));
        }
        FinFunctor::new(src, self.category.clone(), om, mm)
    }
}

impl Product {
    /// The pairing of transformations `(t_i)` between pairings of their
    /// source and target functors.
    pub fn pair_transformations(&self, ts: &[NatTransformation]) -> Result<NatTransformation> {
        let sources: Vec<FinFunctor> = ts.iter().map(|t| t.source().clone()).collect();
        let targets: Vec<FinFunctor> = ts.iter().map(|t| t.target().clone()).collect();
        let f = self.pairing(&sources)?;
        let g = self.pairing(&targets)?;
        let mut parts = Vec::with_capacity(ts.len());
        let comps = f
            .source()
            .objects()
            .map(|x| {
                parts.clear();
                parts.extend(ts.iter().map(|t| t.component(x)));
                self.morphism_of(&parts)
            })
            .collect();
        NatTransformation::new(f, g, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::builtin;
    use crate::cat::validate_functor;

    #[test]
    fn counts_multiply() {
        let a = Arc::new(builtin::arrow());
        let p = product_category(&[a.clone(), a], &Budget::default()).unwrap();
        assert_eq!(p.category.num_objects(), 4);
        assert_eq!(p.category.num_morphisms(), 9);
        assert!(crate::cat::validate_category(&p.category).ok);
        for pr in &p.projections {
            assert!(validate_functor(pr).ok);
        }
    }

    #[test]
    fn empty_product_is_terminal() {
        let p = product_category(&[], &Budget::default()).unwrap();
        assert_eq!(p.category.num_objects(), 1);
        assert_eq!(p.category.num_morphisms(), 1);
        assert_eq!(p.category.object_name(ObjId(0)), "()");
    }

    #[test]
    fn discrete_product() {
        let p = product_category(
            &[Arc::new(builtin::discrete(2)), Arc::new(builtin::discrete(3))],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(p.category.num_objects(), 6);
        assert_eq!(p.category.num_morphisms(), 6);
    }

    #[test]
    fn pairing_of_projections_is_identity() {
        let a = Arc::new(builtin::walking_iso());
        let p = product_category(&[a.clone(), Arc::new(builtin::arrow())], &Budget::default()).unwrap();
        let pair = p.pairing(&p.projections).unwrap();
        assert_eq!(pair, FinFunctor::identity(&p.category));
    }
}
