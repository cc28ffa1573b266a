use serde::{Deserialize, Serialize};

use super::presentation::FilteredPresentation;
use crate::cat::{
    same_category, violation, FinCategory, FinFunctor, MorId, NatTransformation, ObjId, ValidationReport,
};
use crate::error::{input, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Equifier,
    Inserter,
}

/// A factorization through a stage of a presentation, with the visited
/// chain of stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub kind: CaseKind,
    pub stage: ObjId,
    /// Into `T_stage`: from `S` in the equifier case, from `T` in the
    /// inserter case.
    pub through: MorId,
    pub leg: MorId,
    /// Structure map `F(T_stage) → G(T_stage)` in the inserter case.
    pub psi: Option<MorId>,
    pub chain: Vec<ObjId>,
    /// Inserter case: `ψ_i: F(T_{ξ_i}) → G(T_{ξ_{i+1}})`, the last one
    /// landing in the final stage itself.
    pub lifts: Vec<MorId>,
}

impl FactorizationCertificate {
    /// Number of moves along the chain.
    pub fn chain_length(&self) -> usize {
        self.chain.len() - 1
    }

    /// Names for audit output. `l` is the category the structure maps live
    /// in, when there is one.
    pub fn record(&self, p: &FilteredPresentation, l: Option<&FinCategory>) -> CertificateRecord {
        let (xi, k) = (p.index(), p.target());
        let lname = |m: MorId| l.map_or_else(|| m.index().to_string(), |c| c.morphism_name(m).to_owned());
        CertificateRecord {
            kind: self.kind,
            stage: xi.object_name(self.stage).to_owned(),
            through: k.morphism_name(self.through).to_owned(),
            leg: k.morphism_name(self.leg).to_owned(),
            psi: self.psi.map(lname),
            chain: self.chain.iter().map(|&x| xi.object_name(x).to_owned()).collect(),
            lifts: self.lifts.iter().map(|&m| lname(m)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: CaseKind,
    pub stage: String,
    pub through: String,
    pub leg: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi: Option<String>,
    pub chain: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lifts: Vec<String>,
}

fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(crate::Error::Precondition(msg.into()))
}

fn check_pair(phi: &NatTransformation, psi: &NatTransformation, p: &FilteredPresentation) -> Result<()> {
    if !phi.source().is_parallel(psi.source()) || !phi.target().is_parallel(psi.target()) {
        return input("φ and ψ must be parallel".to_owned());
    }
    if !same_category(phi.source().source(), p.target()) {
        return input("φ and ψ must be defined on the presented category".to_owned());
    }
    Ok(())
}

/// Whether `G(T(a ≤ b)) ∘ φ_{T_a}` equals the same with `ψ`.
fn agree_after(phi: &NatTransformation, psi: &NatTransformation, p: &FilteredPresentation, a: ObjId, b: ObjId) -> bool {
    let g = phi.target();
    let l = g.target();
    let x = p.stage(a);
    let tr = g.mor(p.transition(a, b));
    l.comp(tr, phi.component(x)) == l.comp(tr, psi.component(x))
}

/// Chain search for a morphism `f: S → E` into the apex, where `E` lies in
/// the equifier of `φ, ψ: F ⇒ G`. Starts at the least stage `f` factors
/// through and moves to the least later stage where `φ` and `ψ` agree after
/// transport, until they agree on the nose.
pub fn equifier_factorize(
    f: MorId,
    phi: &NatTransformation,
    psi: &NatTransformation,
    p: &FilteredPresentation,
) -> Result<FactorizationCertificate> {
    check_pair(phi, psi, p)?;
    let k = p.target();
    if f.index() >= k.num_morphisms() || k.tgt(f) != p.apex() {
        return input("the morphism must land in the apex".to_owned());
    }
    if phi.component(p.apex()) != psi.component(p.apex()) {
        return precondition("φ and ψ differ at the apex");
    }
    let Some((start, t0)) = p.first_factorization(f) else {
        return Err(crate::Error::Presentation(format!(
            "{} factors through no stage",
            k.morphism_name(f)
        )));
    };
    let xi = p.index();
    let mut chain = vec![start];
    let mut cur = start;
    while phi.component(p.stage(cur)) != psi.component(p.stage(cur)) {
        let next = xi
            .objects()
            .find(|&y| y != cur && p.leq(cur, y) && agree_after(phi, psi, p, cur, y));
        match next {
            Some(y) => {
                chain.push(y);
                cur = y;
            }
            // unreachable for a valid presentation: the maximum always works
            None => return Err(crate::Error::Presentation("chain search stalled".to_owned())),
        }
    }
    Ok(FactorizationCertificate {
        kind: CaseKind::Equifier,
        stage: cur,
        through: k.comp(p.transition(start, cur), t0),
        leg: p.leg(cur),
        psi: None,
        chain,
        lifts: Vec::new(),
    })
}

fn check_chain(c: &FactorizationCertificate, p: &FilteredPresentation, out: &mut Vec<crate::cat::Violation>) -> bool {
    let xi = p.index();
    if c.chain.is_empty() || c.chain.iter().any(|x| x.index() >= xi.num_objects()) {
        out.push(violation("chain typing", &[]));
        return false;
    }
    if c.chain.len() > xi.num_objects() {
        out.push(violation("chain length", &[&c.chain.len().to_string()]));
    }
    for w in c.chain.windows(2) {
        if w[0] == w[1] || !p.leq(w[0], w[1]) {
            out.push(violation(
                "chain monotone",
                &[xi.object_name(w[0]), xi.object_name(w[1])],
            ));
        }
    }
    if c.chain.last() != Some(&c.stage) || c.leg != p.leg(c.stage) {
        out.push(violation("certificate stage", &[xi.object_name(c.stage)]));
    }
    out.is_empty()
}

/// Re-checks an equifier certificate against its inputs by table lookups.
pub fn verify_equifier_certificate(
    c: &FactorizationCertificate,
    f: MorId,
    phi: &NatTransformation,
    psi: &NatTransformation,
    p: &FilteredPresentation,
) -> ValidationReport {
    let mut out = Vec::new();
    if c.kind != CaseKind::Equifier {
        out.push(violation("certificate kind", &["expected equifier"]));
        return ValidationReport::from_violations(out);
    }
    if !check_chain(c, p, &mut out) {
        return ValidationReport::from_violations(out);
    }
    let k = p.target();
    let xi = p.index();
    let x = p.stage(c.stage);
    if k.src(c.through) != k.src(f) || k.tgt(c.through) != x || k.compose(c.leg, c.through) != Some(f) {
        out.push(violation("composite", &[k.morphism_name(f)]));
    }
    if phi.component(x) != psi.component(x) {
        out.push(violation("case condition", &[xi.object_name(c.stage)]));
    }
    let start = c.chain[0];
    if !k
        .hom(k.src(f), p.stage(start))
        .iter()
        .any(|&t| k.compose(p.leg(start), t) == Some(f))
    {
        out.push(violation("chain start", &[xi.object_name(start)]));
    }
    for w in c.chain.windows(2) {
        if !agree_after(phi, psi, p, w[0], w[1]) {
            out.push(violation("chain step", &[xi.object_name(w[0]), xi.object_name(w[1])]));
        }
    }
    ValidationReport::from_violations(out)
}

/// The data of the lifting problem: `s: S → T`, `t: T → K` into the apex,
/// `σ: F(S) → G(T)` and the structure map `φ: F(K) → G(K)` of the object
/// `(K, φ)` of the inserter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftProblem {
    pub s: MorId,
    pub t: MorId,
    pub sigma: MorId,
    pub phi: MorId,
}

fn check_lift_problem(f: &FinFunctor, g: &FinFunctor, q: &LiftProblem, p: &FilteredPresentation) -> Result<()> {
    if !f.is_parallel(g) || !same_category(f.source(), p.target()) {
        return input("F and G must be parallel functors out of the presented category".to_owned());
    }
    let (k, l) = (f.source(), f.target());
    if [q.s, q.t].iter().any(|m| m.index() >= k.num_morphisms())
        || [q.sigma, q.phi].iter().any(|m| m.index() >= l.num_morphisms())
    {
        return input("lift problem refers to unknown morphisms".to_owned());
    }
    let (sv, tv, kv) = (k.src(q.s), k.tgt(q.s), p.apex());
    if k.src(q.t) != tv || k.tgt(q.t) != kv {
        return input("t must run from the target of s to the apex".to_owned());
    }
    if l.src(q.phi) != f.obj(kv) || l.tgt(q.phi) != g.obj(kv) {
        return input("φ must be a map F(K) → G(K)".to_owned());
    }
    if l.src(q.sigma) != f.obj(sv) || l.tgt(q.sigma) != g.obj(tv) {
        return input("σ must be a map F(S) → G(T)".to_owned());
    }
    if l.comp(q.phi, f.mor(k.comp(q.t, q.s))) != l.comp(g.mor(q.t), q.sigma) {
        return precondition("the input pentagon does not commute");
    }
    Ok(())
}

/// Chain search for a structure map on a stage: from the least stage `t`
/// factors through, each step picks a stage `η ≥ ξ` and `ψ: F(T_ξ) →
/// G(T_η)` compatible with `φ` and with the previous step. Staying at `ξ`
/// is tried first and ends the chain; otherwise the least later stage is
/// taken.
pub fn inserter_factorize(
    f: &FinFunctor,
    g: &FinFunctor,
    q: &LiftProblem,
    p: &FilteredPresentation,
) -> Result<FactorizationCertificate> {
    check_lift_problem(f, g, q, p)?;
    let k = f.source();
    let Some((start, t0)) = p.first_factorization(q.t) else {
        return Err(crate::Error::Presentation(format!(
            "{} factors through no stage",
            k.morphism_name(q.t)
        )));
    };
    let xi = p.index();
    let mut chain = vec![start];
    let mut lifts: Vec<MorId> = Vec::new();
    let mut cur = start;
    loop {
        let candidates = std::iter::once(cur).chain(xi.objects().filter(|&y| y != cur && p.leq(cur, y)));
        let mut found = None;
        for eta in candidates {
            let here = lift_candidates(f, g, q, p, &chain, &lifts, t0, eta);
            if let Some(&psi) = here.first() {
                found = Some((eta, psi));
                break;
            }
        }
        let Some((eta, psi)) = found else {
            return Err(crate::Error::Presentation("chain search stalled".to_owned()));
        };
        lifts.push(psi);
        if eta == cur {
            break;
        }
        chain.push(eta);
        cur = eta;
    }
    Ok(FactorizationCertificate {
        kind: CaseKind::Inserter,
        stage: cur,
        through: k.comp(p.transition(start, cur), t0),
        leg: p.leg(cur),
        psi: lifts.last().copied(),
        chain,
        lifts,
    })
}

/// The admissible `ψ: F(T_cur) → G(T_eta)` for the next step, in hom order.
#[allow(clippy::too_many_arguments)]
fn lift_candidates(
    f: &FinFunctor,
    g: &FinFunctor,
    q: &LiftProblem,
    p: &FilteredPresentation,
    chain: &[ObjId],
    lifts: &[MorId],
    t0: MorId,
    eta: ObjId,
) -> Vec<MorId> {
    let (k, l) = (f.source(), f.target());
    let cur = *chain.last().expect("nonempty chain");
    let (xc, xe) = (p.stage(cur), p.stage(eta));
    let square = l.comp(q.phi, f.mor(p.leg(cur)));
    let tr = g.mor(p.transition(cur, eta));
    l.hom(f.obj(xc), g.obj(xe))
        .iter()
        .copied()
        .filter(|&psi| l.comp(g.mor(p.leg(eta)), psi) == square)
        .filter(|&psi| match lifts.last() {
            None => {
                let left = l.comp(psi, f.mor(k.comp(t0, q.s)));
                let right = l.comp(l.comp(tr, g.mor(t0)), q.sigma);
                left == right
            }
            Some(&prev) => {
                let before = chain[chain.len() - 2];
                l.comp(psi, f.mor(p.transition(before, cur))) == l.comp(tr, prev)
            }
        })
        .collect()
}

/// Re-checks an inserter certificate: the triangle `T → U → K`, the
/// structure map as a morphism `(U, ψ) → (K, φ)`, the concluding pentagon,
/// and every lift square along the chain.
pub fn verify_inserter_certificate(
    c: &FactorizationCertificate,
    f: &FinFunctor,
    g: &FinFunctor,
    q: &LiftProblem,
    p: &FilteredPresentation,
) -> ValidationReport {
    let mut out = Vec::new();
    if c.kind != CaseKind::Inserter {
        out.push(violation("certificate kind", &["expected inserter"]));
        return ValidationReport::from_violations(out);
    }
    if !check_chain(c, p, &mut out) {
        return ValidationReport::from_violations(out);
    }
    let n = c.chain.len();
    let (k, l) = (f.source(), f.target());
    let xi = p.index();
    let u = p.stage(c.stage);
    let Some(psi) = c.psi else {
        out.push(violation("structure map", &["missing"]));
        return ValidationReport::from_violations(out);
    };
    if c.lifts.len() != n || c.lifts.last() != Some(&psi) {
        out.push(violation("lift count", &[&c.lifts.len().to_string()]));
        return ValidationReport::from_violations(out);
    }
    let tgt_of = |i: usize| if i + 1 < n { c.chain[i + 1] } else { c.chain[n - 1] };
    for (i, &m) in c.lifts.iter().enumerate() {
        if l.src(m) != f.obj(p.stage(c.chain[i])) || l.tgt(m) != g.obj(p.stage(tgt_of(i))) {
            out.push(violation("lift typing", &[&i.to_string()]));
            return ValidationReport::from_violations(out);
        }
    }
    if k.src(c.through) != k.src(q.t) || k.tgt(c.through) != u || k.compose(c.leg, c.through) != Some(q.t) {
        out.push(violation("composite", &[k.morphism_name(q.t)]));
    }
    if l.src(psi) != f.obj(u) || l.tgt(psi) != g.obj(u) {
        out.push(violation("structure map", &["typing"]));
        return ValidationReport::from_violations(out);
    }
    if l.comp(g.mor(c.leg), psi) != l.comp(q.phi, f.mor(c.leg)) {
        out.push(violation("structure map", &[xi.object_name(c.stage)]));
    }
    if k.src(c.through) == k.tgt(q.s) && l.comp(psi, f.mor(k.comp(c.through, q.s))) != l.comp(g.mor(c.through), q.sigma)
    {
        out.push(violation("pentagon", &[xi.object_name(c.stage)]));
    }
    for i in 0..n {
        let (a, b) = (c.chain[i], tgt_of(i));
        if l.comp(g.mor(p.leg(b)), c.lifts[i]) != l.comp(q.phi, f.mor(p.leg(a))) {
            out.push(violation("lift square", &[xi.object_name(a)]));
        }
        for j in i + 1..n {
            let left = l.comp(c.lifts[j], f.mor(p.transition(a, c.chain[j])));
            let right = l.comp(g.mor(p.transition(b, tgt_of(j))), c.lifts[i]);
            if left != right {
                out.push(violation(
                    "lift compatibility",
                    &[xi.object_name(a), xi.object_name(c.chain[j])],
                ));
            }
        }
    }
    ValidationReport::from_violations(out)
}
