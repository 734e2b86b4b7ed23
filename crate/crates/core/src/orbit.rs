//! Bounded-height enumeration, periodic points, backward orbits and the
//! finite-set chain lemma.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::certify::{certify_descent, certify_power, DescentCertificate};
use crate::error::{Error, Result};
use crate::projective::{Morphism, ProjPoint};

/// Default ceiling on the number of candidate points.
pub const DEFAULT_MAX_CANDIDATES: u128 = 10_000_000;

/// Default ceiling on coefficient size when composing a map with itself.
pub const DEFAULT_COMPOSITION_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub max_candidates: u128,
    pub composition_bits: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { max_candidates: DEFAULT_MAX_CANDIDATES, composition_bits: DEFAULT_COMPOSITION_BITS }
    }
}

/// All points of `P^n(Q)` with `H <= M`, ordered by height and then
/// lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    dim: usize,
    bound: BigInt,
    points: Vec<ProjPoint>,
}

impl CandidateSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<ProjPoint> {
        self.points
    }
}

/// Upper bound on `#{P in P^n(Q) : H(P) <= M}`: half the nonzero integer
/// tuples in the box.
pub fn projected_count(n: usize, bound: &BigInt) -> BigInt {
    let side: BigInt = bound * 2u32 + 1u32;
    (side.pow(n as u32 + 1) - 1u32) / 2u32
}

pub fn enumerate_bounded(n: usize, bound: &BigInt, limit: u128) -> Result<CandidateSet> {
    if bound < &BigInt::one() {
        return Err(Error::InvalidBound);
    }
    let projected = projected_count(n, bound);
    let too_large = || Error::CandidateSetTooLarge { projected: projected.to_u128().unwrap_or(u128::MAX), limit };
    if projected > BigInt::from(limit) {
        return Err(too_large());
    }
    let m = bound.to_i64().ok_or_else(too_large)?;
    let mut points = Vec::new();
    let mut buf = vec![0i64; n + 1];
    for h in 1..=m {
        height_shell(&mut buf, 0, h, false, false, 0, &mut points);
    }
    Ok(CandidateSet { dim: n, bound: bound.clone(), points })
}

/// Pushes, in lexicographic order, every canonical primitive tuple with
/// `max |x_i| = h` that extends `buf[..pos]`.
fn height_shell(buf: &mut [i64], pos: usize, h: i64, reached: bool, nonzero: bool, g: i64, out: &mut Vec<ProjPoint>) {
    if pos == buf.len() {
        if g == 1 {
            out.push(ProjPoint::from_canonical(buf.iter().map(|&c| BigInt::from(c)).collect()));
        }
        return;
    }
    let lo = if nonzero { -h } else { 0 };
    let last = pos + 1 == buf.len();
    let mut visit = |v: i64, buf: &mut [i64]| {
        buf[pos] = v;
        height_shell(buf, pos + 1, h, reached || v.abs() == h, nonzero || v != 0, g.gcd(&v), out);
    };
    if last && !reached {
        if lo == -h {
            visit(-h, buf);
        }
        visit(h, buf);
    } else {
        for v in lo..=h {
            visit(v, buf);
        }
    }
}

/// What happens to a candidate under iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fate {
    /// Lies on the cycle with this index.
    Periodic { cycle: usize },
    /// Reaches the cycle after `tail` steps.
    Preperiodic { cycle: usize, tail: usize },
    /// Leaves the candidate set after `steps` steps; in certified mode this
    /// proves the point is not periodic.
    Escaping { steps: usize },
    /// Leaves the search window or hits the base locus (search mode only).
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicReport {
    pub dim: usize,
    /// True when the candidate cap comes from a descent certificate, so the
    /// cycles are all of `X(Q)_per`.
    pub certified: bool,
    pub bound: BigInt,
    pub certificate: Option<DescentCertificate>,
    pub candidates: usize,
    /// Each cycle starts at its smallest point; cycles are ordered by that
    /// point.
    pub cycles: Vec<Vec<ProjPoint>>,
    pub preperiodic: usize,
    pub escaping: usize,
    pub unresolved: usize,
}

impl PeriodicReport {
    pub fn periods(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Sorted periodic points.
    pub fn periodic_points(&self) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = self.cycles.iter().flatten().cloned().collect();
        v.sort();
        v
    }

    pub fn periodic_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }
}

/// Full classification of a candidate set.
#[derive(Debug, Clone)]
pub struct Classification {
    pub candidates: CandidateSet,
    pub fates: Vec<Fate>,
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Next {
    Inside(usize),
    Outside,
    BaseLocus,
}

/// Classifies every point of `S` by colouring the functional graph on
/// `S ∪ {outside}`.
pub fn classify(f: &Morphism, candidates: CandidateSet) -> Result<Classification> {
    if candidates.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: candidates.dim() });
    }
    let index: HashMap<&ProjPoint, usize> = candidates.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let bound = &candidates.bound;
    let next: Vec<Next> = candidates
        .points
        .par_iter()
        .map(|p| match f.evaluate(p) {
            Ok(q) if q.height().0 <= *bound => Ok(Next::Inside(index[&q])),
            Ok(_) => Ok(Next::Outside),
            Err(Error::BaseLocus(_)) => Ok(Next::BaseLocus),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    drop(index);

    const UNSEEN: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let n = next.len();
    let mut state = vec![UNSEEN; n];
    let mut fates = vec![Fate::Unresolved; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut cur = start;
        // Fate of whatever the path runs into.
        let mut tail = loop {
            state[cur] = ACTIVE;
            path.push(cur);
            match next[cur] {
                Next::Outside => break Fate::Escaping { steps: 0 },
                Next::BaseLocus => break Fate::Unresolved,
                Next::Inside(j) if state[j] == DONE => break fates[j],
                Next::Inside(j) if state[j] == ACTIVE => {
                    let pos = path.iter().position(|&v| v == j).expect("active node is on the path");
                    let id = cycles.len();
                    cycles.push(path[pos..].to_vec());
                    for &v in &path[pos..] {
                        fates[v] = Fate::Periodic { cycle: id };
                        state[v] = DONE;
                    }
                    path.truncate(pos);
                    break Fate::Periodic { cycle: id };
                }
                Next::Inside(j) => cur = j,
            }
        };
        // Nodes on `path` whose successor is not yet classified, last first.
        for &v in path.iter().rev() {
            if state[v] == DONE {
                continue;
            }
            tail = match tail {
                Fate::Periodic { cycle } => Fate::Preperiodic { cycle, tail: 1 },
                Fate::Preperiodic { cycle, tail } => Fate::Preperiodic { cycle, tail: tail + 1 },
                Fate::Escaping { steps } => match next[v] {
                    Next::Outside => Fate::Escaping { steps: 1 },
                    _ => Fate::Escaping { steps: steps + 1 },
                },
                Fate::Unresolved => Fate::Unresolved,
            };
            fates[v] = tail;
            state[v] = DONE;
        }
    }

    // Canonical cycle order: rotate to the smallest index, then sort.
    for c in &mut cycles {
        let k = c.iter().enumerate().min_by_key(|(_, &v)| v).map(|(k, _)| k).unwrap_or(0);
        c.rotate_left(k);
    }
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| cycles[i][0]);
    let mut relabel = vec![0; cycles.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    for fate in &mut fates {
        match fate {
            Fate::Periodic { cycle } | Fate::Preperiodic { cycle, .. } => *cycle = relabel[*cycle],
            _ => {}
        }
    }
    let cycles = order.into_iter().map(|i| std::mem::take(&mut cycles[i])).collect();
    Ok(Classification { candidates, fates, cycles })
}

fn report(c: &Classification, certified: bool, certificate: Option<DescentCertificate>) -> PeriodicReport {
    let mut preperiodic = 0;
    let mut escaping = 0;
    let mut unresolved = 0;
    for fate in &c.fates {
        match fate {
            Fate::Periodic { .. } => {}
            Fate::Preperiodic { .. } => preperiodic += 1,
            Fate::Escaping { .. } => escaping += 1,
            Fate::Unresolved => unresolved += 1,
        }
    }
    let pts = c.candidates.points();
    PeriodicReport {
        dim: c.candidates.dim(),
        certified,
        bound: c.candidates.bound().clone(),
        certificate,
        candidates: pts.len(),
        cycles: c.cycles.iter().map(|cy| cy.iter().map(|&i| pts[i].clone()).collect()).collect(),
        preperiodic,
        escaping,
        unresolved,
    }
}

/// Certified classification for a map of `P^1`: the candidate set is cut
/// at the descent cap, so points leaving it are provably not periodic.
pub fn classify_certified(f: &Morphism, opts: &EngineOptions) -> Result<(DescentCertificate, Classification)> {
    let cert = certify_descent(f)?;
    let c = classify_with(f, &cert, opts)?;
    Ok((cert, c))
}

fn classify_with(f: &Morphism, cert: &DescentCertificate, opts: &EngineOptions) -> Result<Classification> {
    let s = enumerate_bounded(1, cert.cap(), opts.max_candidates)?;
    classify(f, s)
}

/// The complete set of rational periodic points of a map of `P^1`.
pub fn periodic_points(f: &Morphism, opts: &EngineOptions) -> Result<PeriodicReport> {
    periodic_points_with(f, certify_descent(f)?, opts)
}

/// As [`periodic_points`], with a certificate the caller has already proved.
pub(crate) fn periodic_points_with(
    f: &Morphism,
    cert: DescentCertificate,
    opts: &EngineOptions,
) -> Result<PeriodicReport> {
    if cert.degree() != f.degree() {
        return Err(Error::Precondition("certificate degree differs from the map's".into()));
    }
    let c = classify_with(f, &cert, opts)?;
    let mut r = report(&c, true, Some(cert));
    r.unresolved = 0;
    debug_assert!(c.fates.iter().all(|f| *f != Fate::Unresolved));
    Ok(r)
}

/// Periodic points whose whole cycle has height at most `cap`. Without a
/// descent certificate this is a search, not a proof of completeness.
pub fn periodic_points_search(f: &Morphism, cap: &BigInt, opts: &EngineOptions) -> Result<PeriodicReport> {
    let s = enumerate_bounded(f.dim(), cap, opts.max_candidates)?;
    let c = classify(f, s)?;
    let mut r = report(&c, false, None);
    // Leaving the window proves nothing here.
    r.unresolved += r.escaping;
    r.escaping = 0;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub point: ProjPoint,
    /// Index into the previous level; `None` only for the root.
    pub parent: Option<usize>,
}

/// Rational backward orbit of a point, level by level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardTree {
    pub root: ProjPoint,
    pub depth: usize,
    /// `levels[0]` is the root; every node of `levels[k]` maps to its parent
    /// in `levels[k - 1]`.
    pub levels: Vec<Vec<TreeNode>>,
}

impl BackwardTree {
    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

pub fn backward_tree(f: &Morphism, root: &ProjPoint, depth: usize) -> Result<BackwardTree> {
    let mut cache: HashMap<ProjPoint, Vec<ProjPoint>> = HashMap::new();
    let mut levels = vec![vec![TreeNode { point: root.clone(), parent: None }]];
    for _ in 0..depth {
        let prev = levels.last().expect("root level");
        let mut level = Vec::new();
        for (i, node) in prev.iter().enumerate() {
            if !cache.contains_key(&node.point) {
                cache.insert(node.point.clone(), f.preimages_p1(&node.point)?);
            }
            for p in &cache[&node.point] {
                if f.evaluate(p)? != node.point {
                    return Err(Error::Precondition(format!("{p} does not map to {}", node.point)));
                }
                level.push(TreeNode { point: p.clone(), parent: Some(i) });
            }
        }
        let stop = level.is_empty();
        levels.push(level);
        if stop {
            break;
        }
    }
    // Pad so that `levels.len() == depth + 1` even when the orbit dies out.
    while levels.len() < depth + 1 {
        levels.push(Vec::new());
    }
    Ok(BackwardTree { root: root.clone(), depth, levels })
}

/// A point of the inverse limit: the backward chain through a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitChain {
    /// `x_0, …, x_{p-1}`; the chain continues with `x_n = cycle[n mod p]`.
    pub cycle: Vec<ProjPoint>,
}

impl LimitChain {
    pub fn start(&self) -> &ProjPoint {
        &self.cycle[0]
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn element(&self, n: usize) -> &ProjPoint {
        &self.cycle[n % self.cycle.len()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseLimit {
    pub report: PeriodicReport,
    /// One chain per periodic point, ordered by `x_0`.
    pub chains: Vec<LimitChain>,
}

/// Rational points of `lim_f P^1(Q)`. Since the periodic set is finite these
/// are exactly the periodic points, each with a unique chain running the
/// cycle backwards.
pub fn inverse_limit_p1(f: &Morphism, opts: &EngineOptions) -> Result<InverseLimit> {
    let report = periodic_points(f, opts)?;
    let mut chains = Vec::new();
    for cycle in &report.cycles {
        let p = cycle.len();
        for j in 0..p {
            let chain: Vec<ProjPoint> = (0..p).map(|n| cycle[(j + p - n % p) % p].clone()).collect();
            for n in 0..p {
                if f.evaluate(&chain[(n + 1) % p])? != chain[n] {
                    return Err(Error::LemmaViolation(format!("chain from {} breaks at {n}", chain[0])));
                }
            }
            chains.push(LimitChain { cycle: chain });
        }
    }
    chains.sort_by(|a, b| a.start().cmp(b.start()));
    Ok(InverseLimit { report, chains })
}

/// A backward chain in a finite partial functional graph on `0..table.len()`.
#[derive(Debug, Clone)]
pub struct AbstractChain<I> {
    table: Vec<Option<usize>>,
    chain: I,
}

impl<I: Iterator<Item = usize>> AbstractChain<I> {
    pub fn new(table: Vec<Option<usize>>, chain: I) -> Self {
        AbstractChain { table, chain }
    }

    pub fn ground_size(&self) -> usize {
        self.table.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    /// `x_{n+p} = x_n` on the whole simulated prefix; `first` and `repeat`
    /// are the indices of the detected return into `S`.
    Periodic {
        period: usize,
        first: usize,
        repeat: usize,
    },
    Inconclusive {
        simulated: usize,
    },
}

/// Simulates a backward chain and, if it returns to an element of `S`,
/// verifies that the chain is periodic and determined by `x_0`.
pub fn check_chain_lemma<I: Iterator<Item = usize>>(
    chain: AbstractChain<I>,
    s: &BTreeSet<usize>,
    horizon: usize,
) -> Result<ChainVerdict> {
    let required = 2 * s.len() + 2;
    if horizon < required {
        return Err(Error::HorizonTooShort { horizon, required });
    }
    let AbstractChain { table, chain } = chain;
    let xs: Vec<usize> = chain.take(horizon).collect();
    for (n, &x) in xs.iter().enumerate() {
        if x >= table.len() {
            return Err(Error::MalformedChain { index: n });
        }
        if n > 0 && table[x] != Some(xs[n - 1]) {
            return Err(Error::MalformedChain { index: n - 1 });
        }
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut hit = None;
    for (n, &x) in xs.iter().enumerate() {
        if !s.contains(&x) {
            continue;
        }
        if let Some(&n0) = seen.get(&x) {
            hit = Some((n0, n));
            break;
        }
        seen.insert(x, n);
    }
    let Some((first, repeat)) = hit else {
        return Ok(ChainVerdict::Inconclusive { simulated: xs.len() });
    };
    let p = repeat - first;
    for n in 0..xs.len().saturating_sub(p) {
        if xs[n + p] != xs[n] {
            return Err(Error::LemmaViolation(format!("x_{} != x_{n} with period {p}", n + p)));
        }
    }
    // x_n = f^(p - l)(x_0) with l = n mod p, using only x_0 and the table.
    let mut forward = vec![xs[0]];
    for j in 0..p {
        match table[forward[j]] {
            Some(y) => forward.push(y),
            None => return Err(Error::LemmaViolation(format!("f undefined at x_0's iterate {j}"))),
        }
    }
    if forward[p] != xs[0] {
        return Err(Error::LemmaViolation("x_0 is not periodic with the detected period".into()));
    }
    for (n, &x) in xs.iter().enumerate() {
        if forward[(p - n % p) % p] != x {
            return Err(Error::LemmaViolation(format!("x_{n} is not reconstructed from x_0")));
        }
    }
    Ok(ChainVerdict::Periodic { period: p, first, repeat })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerReport {
    pub k: u32,
    pub base: PeriodicReport,
    pub power: PeriodicReport,
    pub equal: bool,
}

/// Compares the periodic sets of `f` and `f^k`.
pub fn power_equivalence_check(f: &Morphism, k: u32, opts: &EngineOptions) -> Result<PowerReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let base = periodic_points(f, opts)?;
    let power = if k == 1 {
        base.clone()
    } else {
        let fk = f.power(k, opts.composition_bits)?;
        let cert = certify_power(&fk, base.certificate.as_ref().expect("certified report"), k)?;
        periodic_points_with(&fk, cert, opts)?
    };
    let equal = base.periodic_points() == power.periodic_points();
    Ok(PowerReport { k, base, power, equal })
}
