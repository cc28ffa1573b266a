//! Small named categories used throughout the tests and the command line.

use super::category::{CategoryBuilder, FinCategory, RawCategory};
use crate::budget::Budget;
use crate::error::{input, Result};

pub fn terminal() -> FinCategory {
    CategoryBuilder::new("terminal")
        .object_with_identity("*")
        .with_identity_laws()
        .build()
        .expect("terminal category")
}

pub fn discrete(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new(format!("discrete{n}"));
    for i in 0..n {
        b = b.object_with_identity(&i.to_string());
    }
    b.with_identity_laws().build().expect("discrete category")
}

pub fn arrow() -> FinCategory {
    chain(2).with_name("arrow")
}

/// The walking parallel pair `f, g: a ⇉ b`.
pub fn parallel_pair() -> FinCategory {
    CategoryBuilder::new("parallel-pair")
        .object_with_identity("a")
        .object_with_identity("b")
        .morphism("f", "a", "b")
        .morphism("g", "a", "b")
        .with_identity_laws()
        .build()
        .expect("parallel pair")
}

/// Two objects and mutually inverse `f: a → b`, `g: b → a`.
pub fn walking_iso() -> FinCategory {
    CategoryBuilder::new("walking-iso")
        .object_with_identity("a")
        .object_with_identity("b")
        .morphism("f", "a", "b")
        .morphism("g", "b", "a")
        .compose("g", "f", "id_a")
        .compose("f", "g", "id_b")
        .with_identity_laws()
        .build()
        .expect("walking isomorphism")
}

/// Poset category: identities `id_x`, and `x<y` for each strict relation.
pub fn poset(name: &str, elems: &[String], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
    let n = elems.len();
    for i in 0..n {
        if !leq(i, i) {
            return input(format!("poset {name}: relation is not reflexive"));
        }
        for j in 0..n {
            if i != j && leq(i, j) && leq(j, i) {
                return input(format!("poset {name}: relation is not antisymmetric"));
            }
            for k in 0..n {
                if leq(i, j) && leq(j, k) && !leq(i, k) {
                    return input(format!("poset {name}: relation is not transitive"));
                }
            }
        }
    }
    let mut raw = RawCategory::new(name);
    for e in elems {
        raw.add_object(e.clone());
    }
    let mut mor = vec![vec![usize::MAX; n]; n];
    let mut ends = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let id = if i == j {
                    format!("id_{}", elems[i])
                } else {
                    format!("{}<{}", elems[i], elems[j])
                };
                mor[i][j] = raw.add_morphism(id, i, j);
                ends.push((i, j));
            }
        }
    }
    raw.identities = (0..n).map(|i| mor[i][i]).collect();
    raw.build(&Budget::unlimited(), |g, f| {
        let (a, _) = ends[f];
        let (_, c) = ends[g];
        Some(mor[a][c])
    })
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FinCategory {
    let elems: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    poset(&format!("chain{n}"), &elems, |i, j| i <= j).expect("chain")
}

/// The poset `{0<1<2}`.
pub fn poset3() -> FinCategory {
    chain(3).with_name("poset3")
}

/// The product poset `{0<1} × {0<1}`, objects `00, 01, 10, 11`.
pub fn square() -> FinCategory {
    let elems: Vec<String> = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
    poset("square", &elems, |i, j| (i & j) == i).expect("square")
}

/// Skeleton of finite sets of size at most `n`: objects `0..=n`, morphisms
/// all functions, named `a->b:[values]`.
pub fn sets(n: usize) -> FinCategory {
    let mut raw = RawCategory::new(format!("sets{n}"));
    for a in 0..=n {
        raw.add_object(a.to_string());
    }
    // functions a -> b as value vectors
    let mut funcs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for a in 0..=n {
        for b in 0..=n {
            let count = b.pow(a as u32);
            for code in 0..count {
                let mut vals = vec![0; a];
                let mut c = code;
                for v in vals.iter_mut().rev() {
                    *v = c % b;
                    c /= b;
                }
                let name = format!(
                    "{a}->{b}:[{}]",
                    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                );
                let ix = raw.add_morphism(name, a, b);
                index.insert((a, b, vals.clone()), ix);
                funcs.push((a, b, vals));
            }
        }
    }
    raw.identities = (0..=n).map(|a| index[&(a, a, (0..a).collect::<Vec<_>>())]).collect();
    raw.build(&Budget::unlimited(), |g, f| {
        let (a, _, fv) = &funcs[f];
        let (_, c, gv) = &funcs[g];
        let comp: Vec<usize> = fv.iter().map(|&x| gv[x]).collect();
        Some(index[&(*a, *c, comp)])
    })
    .expect("sets skeleton")
}

/// Resolves a builtin category name such as `arrow`, `discrete3` or `sets2`.
pub fn by_name(name: &str) -> Option<FinCategory> {
    let num = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .filter(|s| !s.is_empty())
            .and_then(|s| s.parse().ok())
            .filter(|&n: &usize| n <= 8)
    };
    Some(match name {
        "terminal" => terminal(),
        "arrow" => arrow(),
        "parallel-pair" => parallel_pair(),
        "walking-iso" => walking_iso(),
        "poset3" => poset3(),
        "square" => square(),
        _ => {
            if let Some(n) = num("discrete") {
                discrete(n)
            } else if let Some(n) = num("chain") {
                chain(n)
            } else if let Some(n) = num("sets").filter(|&n| n <= 3) {
                sets(n)
            } else {
                return None;
            }
        }
    })
}

/// Names of the builtin corpus of base categories.
pub const CORPUS: &[&str] = &[
    "terminal",
    "arrow",
    "discrete2",
    "discrete3",
    "parallel-pair",
    "walking-iso",
    "poset3",
    "square",
    "sets2",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;

    #[test]
    fn builtins_are_categories() {
        for name in CORPUS.iter().chain(["sets1", "sets3", "chain4"].iter()) {
            let c = by_name(name).unwrap();
            let r = validate_category(&c);
            assert!(r.ok, "{name}: {:?}", r.violations);
        }
    }

    #[test]
    fn sets_counts() {
        // sum over a, b <= 2 of b^a
        assert_eq!(sets(2).num_morphisms(), 1 + 1 + 1 + 0 + 1 + 2 + 0 + 1 + 4);
        assert_eq!(sets(1).num_morphisms(), 3);
    }

    #[test]
    fn square_shape() {
        let c = square();
        assert_eq!(c.num_objects(), 4);
        assert_eq!(c.num_morphisms(), 9);
    }
}
