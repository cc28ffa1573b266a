//! Small named 2-categories.

use std::sync::Arc;

use super::two_category::{TwoCategory, TwoCategoryBuilder};
use super::two_functor::TwoFunctor;
use crate::cat::{builtin, CategoryBuilder, FinCategory, FinFunctor, NatTransformation};

fn locally_discrete(name: &str, one: FinCategory) -> TwoCategory {
    TwoCategoryBuilder::new(name, Arc::new(one))
        .build()
        .expect("locally discrete 2-category")
}

/// One object, one 1-cell, one 2-cell.
pub fn terminal() -> TwoCategory {
    locally_discrete("terminal2", builtin::terminal())
}

pub fn discrete(n: usize) -> TwoCategory {
    locally_discrete(&format!("discrete{n}-2"), builtin::discrete(n))
}

/// `0 → 1` with identity 2-cells only.
pub fn arrow() -> TwoCategory {
    locally_discrete("arrow2", builtin::arrow())
}

/// `0 → 1 → 2` with identity 2-cells only.
pub fn composable() -> TwoCategory {
    locally_discrete("composable2", builtin::chain(3))
}

/// `0 → 2 ← 1`.
pub fn cospan() -> TwoCategory {
    let elems: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    let one = builtin::poset("cospan", &elems, |i, j| i == j || j == 2).expect("cospan poset");
    locally_discrete("cospan2", one)
}

/// Parallel 1-cells `a, b: 0 → 1` and a single 2-cell `t: a ⇒ b`.
pub fn parallel_two_cell() -> TwoCategory {
    let one = CategoryBuilder::new("parallel")
        .object_with_identity("0")
        .object_with_identity("1")
        .morphism("a", "0", "1")
        .morphism("b", "0", "1")
        .with_identity_laws()
        .build()
        .expect("parallel pair");
    TwoCategoryBuilder::new("parallel-2cell", Arc::new(one))
        .cell("t", "a", "b")
        .build()
        .expect("parallel 2-cell")
}

pub const CORPUS: &[&str] = &[
    "terminal2",
    "discrete2-2",
    "arrow2",
    "composable2",
    "cospan2",
    "parallel-2cell",
];

pub fn by_name(name: &str) -> Option<TwoCategory> {
    Some(match name {
        "terminal2" => terminal(),
        "discrete2-2" => discrete(2),
        "arrow2" => arrow(),
        "composable2" => composable(),
        "cospan2" => cospan(),
        "parallel-2cell" => parallel_two_cell(),
        _ => return None,
    })
}

fn value(name: &str) -> Arc<FinCategory> {
    Arc::new(builtin::by_name(name).expect("builtin category"))
}

fn constant_at(source: &Arc<FinCategory>, target: &Arc<FinCategory>, obj: &str) -> FinFunctor {
    FinFunctor::constant(source, target, target.object_id(obj).expect("object"))
}

/// Named 2-functors used as test instances and by the command line.
pub const FUNCTOR_CORPUS: &[&str] = &[
    "terminal-sets2",
    "discrete-arrow-sets1",
    "arrow-sets2",
    "arrow-chain",
    "arrow-const",
    "composable-const2",
    "cospan-sets1",
    "parallel-const2",
];

pub fn functor_by_name(name: &str) -> Option<TwoFunctor> {
    let built = match name {
        "terminal-sets2" => Ok(TwoFunctor::constant(&Arc::new(terminal()), &value("sets2"))),
        "discrete-arrow-sets1" => {
            TwoFunctor::locally_discrete(&Arc::new(discrete(2)), vec![value("arrow"), value("sets1")], Vec::new())
        }
        "arrow-sets2" => Ok(TwoFunctor::constant(&Arc::new(arrow()), &value("sets2"))),
        "arrow-chain" => Ok(TwoFunctor::constant(&Arc::new(arrow()), &value("arrow"))),
        "arrow-const" => {
            let (s1, s2) = (value("sets1"), value("sets2"));
            TwoFunctor::locally_discrete(
                &Arc::new(arrow()),
                vec![s1.clone(), s2.clone()],
                vec![("0<1", constant_at(&s1, &s2, "1"))],
            )
        }
        "composable-const2" => {
            let (t, s2) = (value("terminal"), value("sets2"));
            let two = constant_at(&t, &s2, "2");
            TwoFunctor::locally_discrete(
                &Arc::new(composable()),
                vec![t.clone(), t.clone(), s2],
                vec![("1<2", two.clone()), ("0<2", two)],
            )
        }
        "cospan-sets1" => Ok(TwoFunctor::constant(&Arc::new(cospan()), &value("sets1"))),
        "parallel-const2" => {
            let gamma = Arc::new(parallel_two_cell());
            let (t, s2) = (value("terminal"), value("sets2"));
            let two = constant_at(&t, &s2, "2");
            let g = gamma.underlying().clone();
            let cells = |x: &str| match x {
                "0" => t.clone(),
                _ => s2.clone(),
            };
            let one: Vec<FinFunctor> = g
                .morphisms()
                .map(|a| match g.morphism_name(a) {
                    "a" | "b" => two.clone(),
                    _ => FinFunctor::identity(&cells(g.object_name(g.src(a)))),
                })
                .collect();
            let two_cells: Vec<NatTransformation> = gamma
                .cells()
                .map(|c| NatTransformation::identity(&one[gamma.cell(c).src.index()]))
                .collect();
            TwoFunctor::new(gamma, vec![t.clone(), s2.clone()], one, two_cells)
        }
        _ => return None,
    };
    Some(built.expect("builtin 2-functor"))
}
