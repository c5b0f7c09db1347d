//! The equilibrium pipeline: one Gröbner basis, a sample solution, its
//! conjugate orbit and a Nash filter. The substitution solver that walks
//! every root of the triangular form is kept alongside as an oracle.

use crate::galois::{
    canonicalize, identify_group, orbit, shape_tuple, Conjugates, GaloisError, GaloisInfo, OrbitMode,
    SolutionTuple, TupleSource,
};
use crate::game::{build_game_system, Game, GameError, GameSystem, VarMap};
use crate::groebner::{buchberger, BuchbergerTrace, GroebnerBasis, GroebnerError, IdealClass, ShapeForm};
use crate::multipoly::MPoly;
use crate::numberfield::{gcd_over, real_roots_over, AlgebraicNumber, NFElement, NumberField};
use crate::tower::Partial;
use crate::unipoly::{count_real_roots, factor, UPoly, UniError};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

pub const DEFAULT_MAX_VARS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(
        "the orbit method needs at least three players: a bimatrix game with rational payoffs \
         has only rational equilibria, so its irrational orbit is always empty (use the naive method)"
    )]
    BimatrixUnsupported,
    #[error("the game system has infinitely many solutions; the game is not generic")]
    NonGenericGame,
    #[error("every real root of the eliminant is rational")]
    NoIrrationalRoot,
    #[error("the eliminant has no irrational real root")]
    NoRealRoot,
    #[error("{vars} mixing variables exceed the limit of {limit}")]
    SizeLimit { vars: usize, limit: usize },
    #[error("tuple has {got} coordinates, expected {expected}")]
    IncompleteTuple { got: usize, expected: usize },
    #[error("orbit and substitution solvers disagree: {0}")]
    MethodsDisagree(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Poly(#[from] UniError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Orbit,
    Naive,
    Both,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PhaseCounts {
    pub factorizations: usize,
    pub substitutions: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SolveStats {
    pub buchberger_calls: usize,
    pub univariate_factorizations: usize,
    pub substitutions: usize,
    pub sampling: PhaseCounts,
    pub orbit: PhaseCounts,
    pub orbit_actions: usize,
    pub candidates_generated: usize,
    pub candidates_rejected_rational: usize,
    pub candidates_rejected_complex: usize,
    pub candidates_rejected_not_nash: usize,
    /// Substitution solver only: real roots found at each node, grouped by
    /// level starting from the least variable.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub level_roots: Vec<Vec<usize>>,
    pub groebner: BuchbergerTrace,
    #[serde(skip)]
    pub timings: Vec<(&'static str, Duration)>,
}

impl SolveStats {
    fn close(&mut self) {
        self.univariate_factorizations = self.sampling.factorizations + self.orbit.factorizations;
        self.substitutions = self.sampling.substitutions + self.orbit.substitutions;
    }

    /// `∏ d_i` where `d_i` is the real-root count shared by every node of
    /// level `i`; `None` when some level branches unevenly.
    pub fn uniform_branching_product(&self) -> Option<usize> {
        let mut prod = 1usize;
        for level in &self.level_roots {
            match level.first() {
                None => return Some(0),
                Some(&d) if level.iter().all(|&x| x == d) => prod *= d,
                _ => return None,
            }
        }
        Some(prod)
    }
}

/// An irreducible factor of an eliminant and its Galois group.
#[derive(Debug, Clone)]
pub struct EliminantReport {
    pub variable: String,
    pub poly: UPoly,
    pub galois: GaloisInfo,
}

/// Outcome of the sampling step.
#[derive(Debug, Clone)]
pub struct SampleSolution {
    pub tuple: SolutionTuple,
    pub gb: GroebnerBasis,
    pub eliminants: Vec<EliminantReport>,
}

struct Sampling {
    gb: GroebnerBasis,
    plan: Plan,
    /// One sample per irreducible factor that has an irrational real root.
    samples: Vec<SolutionTuple>,
    rational: Vec<SolutionTuple>,
    eliminants: Vec<EliminantReport>,
    stats: SolveStats,
}

enum Plan {
    Empty,
    Shape(ShapeForm),
    Fallback(Conjugates),
}

fn factor_sorted(p: &UPoly) -> Result<Vec<UPoly>, UniError> {
    let mut fs: Vec<UPoly> = factor(&p.squarefree_part())?
        .factors
        .into_iter()
        .map(|(f, _)| f.primitive())
        .collect();
    fs.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(fs)
}

fn report(gb: &GroebnerBasis, var: usize, f: &UPoly) -> Result<EliminantReport, SolveError> {
    Ok(EliminantReport {
        variable: gb.ring.name(var).to_string(),
        poly: f.clone(),
        galois: identify_group(f)?,
    })
}

fn sampling(equations: &[MPoly]) -> Result<Sampling, SolveError> {
    let mut stats = SolveStats::default();
    let t0 = Instant::now();
    let gb = buchberger(equations)?;
    stats.buchberger_calls = 1;
    stats.groebner = gb.trace.clone();
    stats.timings.push(("buchberger", t0.elapsed()));
    let t1 = Instant::now();
    let n = gb.ring.nvars();
    let mut samples = Vec::new();
    let mut rational = Vec::new();
    let mut eliminants = Vec::new();
    let plan = match gb.classify() {
        IdealClass::PositiveDimensional => return Err(SolveError::NonGenericGame),
        IdealClass::ZeroDimensional { shape: None } if gb.is_unit() => Plan::Empty,
        IdealClass::ZeroDimensional { shape: Some(shape) } => {
            let v = shape.primitive_var;
            stats.sampling.factorizations += 1;
            for f in factor_sorted(&shape.eliminant)? {
                eliminants.push(report(&gb, v, &f)?);
                if f.degree() == 1 {
                    let r = -f.coeff(0) / f.coeff(1);
                    let root = AlgebraicNumber::rational(&r);
                    rational.push(shape_tuple(&shape, n, &root, TupleSource::Rational));
                    stats.sampling.substitutions += 1;
                    stats.candidates_rejected_rational += 1;
                    continue;
                }
                let real = count_real_roots(&f);
                stats.candidates_rejected_complex += f.degree() - real;
                if real > 0 {
                    let root = AlgebraicNumber::new(&f, 0).expect("irreducible factor");
                    samples.push(shape_tuple(&shape, n, &root, TupleSource::Sample));
                    stats.sampling.substitutions += 1;
                }
            }
            Plan::Shape(shape)
        }
        IdealClass::ZeroDimensional { shape: None } => {
            let mut factors = Vec::with_capacity(n);
            for var in 0..n {
                stats.sampling.factorizations += 1;
                let fs = factor_sorted(&gb.eliminant(var))?;
                let mut keep = Vec::new();
                for f in fs {
                    eliminants.push(report(&gb, var, &f)?);
                    if count_real_roots(&f) > 0 {
                        keep.push(f);
                    }
                }
                factors.push(keep);
            }
            // Walk the triangular form until a tuple with an irrational
            // coordinate turns up; rational leaves met on the way are kept.
            let walk = triangular_walk(&gb, true);
            stats.sampling.factorizations += walk.nodes;
            stats.sampling.substitutions += walk.leaves.len();
            stats.candidates_rejected_complex += walk.nonreal;
            for coords in walk.leaves {
                let t = SolutionTuple {
                    coords,
                    source: TupleSource::Rational,
                };
                if t.is_rational() {
                    stats.candidates_rejected_rational += 1;
                    rational.push(t);
                } else {
                    samples.push(SolutionTuple {
                        source: TupleSource::Sample,
                        ..t
                    });
                }
            }
            Plan::Fallback(Conjugates { factors })
        }
    };
    samples = canonicalize(samples);
    stats.timings.push(("sampling", t1.elapsed()));
    Ok(Sampling {
        gb,
        plan,
        samples,
        rational: canonicalize(rational),
        eliminants,
        stats,
    })
}

/// One solution with an irrational coordinate, taken at the least
/// irrational real root of the eliminant.
pub fn sample_solution(equations: &[MPoly]) -> Result<SampleSolution, SolveError> {
    let s = sampling(equations)?;
    match s.samples.into_iter().next() {
        Some(tuple) => Ok(SampleSolution {
            tuple,
            gb: s.gb,
            eliminants: s.eliminants,
        }),
        None => Err(no_sample_error(&s.rational)),
    }
}

fn no_sample_error(rational: &[SolutionTuple]) -> SolveError {
    if rational.is_empty() {
        SolveError::NoRealRoot
    } else {
        SolveError::NoIrrationalRoot
    }
}

/// Real solutions found by sampling and orbit expansion.
#[derive(Debug, Clone)]
pub struct OrbitSolutions {
    /// Orbit members: tuples with at least one irrational coordinate.
    pub irrational: Vec<SolutionTuple>,
    /// Tuples from rational roots of the eliminant.
    pub rational: Vec<SolutionTuple>,
    pub samples: Vec<SolutionTuple>,
    pub gb: GroebnerBasis,
    pub eliminants: Vec<EliminantReport>,
    pub stats: SolveStats,
}

impl OrbitSolutions {
    /// Both parts, canonically ordered.
    pub fn all(&self) -> Vec<SolutionTuple> {
        canonicalize(self.irrational.iter().chain(&self.rational).cloned().collect())
    }
}

fn orbit_solutions(equations: &[MPoly]) -> Result<OrbitSolutions, SolveError> {
    let Sampling {
        gb,
        plan,
        samples,
        mut rational,
        eliminants,
        mut stats,
    } = sampling(equations)?;
    let t0 = Instant::now();
    let mut irrational = Vec::new();
    stats.candidates_generated += rational.len();
    match &plan {
        Plan::Empty => {}
        Plan::Shape(shape) => {
            for s in &samples {
                let o = orbit(s, equations, OrbitMode::Shape(shape))?;
                stats.orbit_actions += o.actions;
                stats.candidates_generated += o.candidates;
                stats.orbit.factorizations += o.factorizations;
                irrational.extend(o.tuples);
            }
        }
        Plan::Fallback(conj) => {
            if let Some(s) = samples.first() {
                let o = orbit(s, equations, OrbitMode::Fallback { gb: &gb, conjugates: conj })?;
                stats.orbit_actions += o.actions;
                stats.candidates_generated += o.candidates;
                stats.orbit.factorizations += o.factorizations;
                for t in o.tuples {
                    if t.is_rational() {
                        rational.push(t);
                    } else {
                        irrational.push(t);
                    }
                }
            }
        }
    }
    stats.timings.push(("orbit", t0.elapsed()));
    stats.close();
    Ok(OrbitSolutions {
        irrational: canonicalize(irrational),
        rational: canonicalize(rational),
        samples,
        gb,
        eliminants,
        stats,
    })
}

/// Sample plus orbit. Fails when the eliminant has no irrational real root.
pub fn all_solutions_orbit(equations: &[MPoly]) -> Result<OrbitSolutions, SolveError> {
    let out = orbit_solutions(equations)?;
    if out.irrational.is_empty() {
        return Err(no_sample_error(&out.rational));
    }
    Ok(out)
}

struct Walk {
    leaves: Vec<Vec<NFElement>>,
    level_roots: Vec<Vec<usize>>,
    nodes: usize,
    nonreal: usize,
}

/// Depth-first substitution through the triangular basis, least variable
/// first, roots in increasing order. With `stop_at_irrational` the walk
/// ends at the first leaf having an irrational coordinate.
fn triangular_walk(gb: &GroebnerBasis, stop_at_irrational: bool) -> Walk {
    let n = gb.ring.nvars();
    let mut walk = Walk {
        leaves: Vec::new(),
        level_roots: vec![Vec::new(); n],
        nodes: 0,
        nonreal: 0,
    };
    let mut stack = vec![Partial::empty(n)];
    while let Some(partial) = stack.pop() {
        let Some(var) = partial.coords.iter().rposition(|c| c.is_none()) else {
            let leaf = partial.complete().expect("complete");
            let irrational = leaf.iter().any(|c| c.is_rational().is_none());
            walk.leaves.push(leaf);
            if stop_at_irrational && irrational {
                break;
            }
            continue;
        };
        walk.nodes += 1;
        let mut g: Vec<NFElement> = Vec::new();
        for p in gb.level(var) {
            let c = p.specialize(var, &partial.coords, &partial.field).expect("lower variables assigned");
            g = gcd_over(&g, &c);
        }
        let roots = real_roots_over(&partial.field, &g).expect("nonzero specialization");
        walk.nonreal += roots.nonreal;
        walk.level_roots[n - 1 - var].push(roots.roots.len());
        for adj in roots.roots.iter().rev() {
            stack.push(partial.extend(var, adj));
        }
    }
    walk
}

/// Every real solution, by substituting each root of each level of the
/// triangular basis into the next.
#[derive(Debug, Clone)]
pub struct NaiveSolutions {
    pub tuples: Vec<SolutionTuple>,
    pub gb: GroebnerBasis,
    pub stats: SolveStats,
}

pub fn all_solutions_naive(equations: &[MPoly]) -> Result<NaiveSolutions, SolveError> {
    let mut stats = SolveStats::default();
    let t0 = Instant::now();
    let gb = buchberger(equations)?;
    stats.buchberger_calls = 1;
    stats.groebner = gb.trace.clone();
    stats.timings.push(("buchberger", t0.elapsed()));
    if !gb.is_zero_dimensional() {
        return Err(SolveError::NonGenericGame);
    }
    let t1 = Instant::now();
    let tuples = if gb.is_unit() {
        Vec::new()
    } else {
        let walk = triangular_walk(&gb, false);
        stats.sampling.factorizations = walk.nodes;
        stats.sampling.substitutions = walk.leaves.len();
        stats.candidates_generated = walk.leaves.len();
        stats.candidates_rejected_complex = walk.nonreal;
        stats.level_roots = walk.level_roots;
        walk.leaves
            .into_iter()
            .map(|coords| SolutionTuple {
                coords,
                source: TupleSource::Substitution,
            })
            .collect()
    };
    stats.timings.push(("substitution", t1.elapsed()));
    stats.close();
    Ok(NaiveSolutions {
        tuples: canonicalize(tuples),
        gb,
        stats,
    })
}

/// Exact equilibrium check of a tuple of the full game system.
#[derive(Debug, Clone)]
pub struct NashCheck {
    pub is_nash: bool,
    /// `α_i − dev(i, j)` at the tuple for every player and pure strategy.
    pub margins: Vec<Vec<NFElement>>,
}

pub fn is_nash(g: &Game, vars: &VarMap, t: &SolutionTuple) -> Result<NashCheck, SolveError> {
    let expected = vars.ring.nvars();
    if t.coords.len() != expected {
        return Err(SolveError::IncompleteTuple {
            got: t.coords.len(),
            expected,
        });
    }
    let point: Vec<Option<NFElement>> = t.coords.iter().cloned().map(Some).collect();
    let eval = |p: &MPoly| -> NFElement {
        if p.is_zero() {
            NFElement::zero(t.field())
        } else {
            p.evaluate(&point).expect("complete point")
        }
    };
    let mut ok = t.coords.iter().all(|c| c.in_open_unit_interval());
    let mut margins = Vec::with_capacity(g.players());
    for i in 0..g.players() {
        let k = g.strategies()[i];
        let sum = (0..k).fold(NFElement::zero(t.field()), |acc, j| &acc + &t.coords[vars.var(i, j)]);
        ok &= sum.is_one();
        let alpha = eval(&g.expected_payoff(vars, i)?);
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let m = &alpha - &eval(&g.pure_deviation_payoff(vars, i, j)?);
            ok &= m.sign() >= 0;
            row.push(m);
        }
        margins.push(row);
    }
    Ok(NashCheck { is_nash: ok, margins })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RpieVerdict {
    #[serde(rename = "RPIE")]
    Rpie,
    HasRationalTotallyMixed,
    NoTotallyMixed,
    NonGeneric,
}

impl fmt::Display for RpieVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RpieVerdict::Rpie => "RPIE",
            RpieVerdict::HasRationalTotallyMixed => "HasRationalTotallyMixed",
            RpieVerdict::NoTotallyMixed => "NoTotallyMixed",
            RpieVerdict::NonGeneric => "NonGeneric",
        })
    }
}

/// A totally mixed equilibrium with exact coordinates.
#[derive(Debug, Clone)]
pub struct Equilibrium {
    pub field: Arc<NumberField>,
    /// `profile[i][j]` is the probability player `i` gives strategy `j`.
    pub profile: Vec<Vec<NFElement>>,
    pub margins: Vec<Vec<NFElement>>,
    pub tuple: SolutionTuple,
}

impl Equilibrium {
    pub fn is_rational(&self) -> bool {
        self.tuple.is_rational()
    }

    pub fn all_irrational(&self) -> bool {
        self.tuple.coords.iter().all(|c| c.is_rational().is_none())
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: Method,
    /// Explicit variable order, least first.
    pub order: Option<Vec<String>>,
    pub max_vars: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::Orbit,
            order: None,
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub verdict: RpieVerdict,
    pub equilibria: Vec<Equilibrium>,
    /// Every real solution of the game system, in or out of the simplex.
    pub solutions: Vec<SolutionTuple>,
    pub samples: Vec<SolutionTuple>,
    pub eliminants: Vec<EliminantReport>,
    pub system: GameSystem,
    pub gb: GroebnerBasis,
    pub orbit_stats: Option<SolveStats>,
    pub naive_stats: Option<SolveStats>,
}

fn key_set(ts: &[SolutionTuple]) -> BTreeSet<Vec<AlgebraicNumber>> {
    ts.iter().map(|t| t.key()).collect()
}

/// Totally mixed equilibria of `g`.
pub fn solve(g: &Game, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    if g.players() == 2 && opts.method != Method::Naive {
        return Err(SolveError::BimatrixUnsupported);
    }
    let vars = g.total_strategies();
    if vars > opts.max_vars {
        return Err(SolveError::SizeLimit {
            vars,
            limit: opts.max_vars,
        });
    }
    let system = build_game_system(g, opts.order.as_deref())?;
    let by_orbit = match opts.method {
        Method::Naive => None,
        _ => Some(orbit_solutions(&system.equations)?),
    };
    let by_naive = match opts.method {
        Method::Orbit => None,
        _ => Some(all_solutions_naive(&system.equations)?),
    };
    if let (Some(o), Some(n)) = (&by_orbit, &by_naive) {
        let (a, b) = (key_set(&o.all()), key_set(&n.tuples));
        if a != b {
            return Err(SolveError::MethodsDisagree(format!(
                "orbit found {} solutions, substitution found {}",
                a.len(),
                b.len()
            )));
        }
    }
    let (solutions, samples, eliminants, gb) = match (&by_orbit, &by_naive) {
        (Some(o), _) => (o.all(), o.samples.clone(), o.eliminants.clone(), o.gb.clone()),
        (None, Some(n)) => (n.tuples.clone(), Vec::new(), least_eliminant_report(&n.gb)?, n.gb.clone()),
        (None, None) => unreachable!("at least one method runs"),
    };
    let t0 = Instant::now();
    let mut equilibria = Vec::new();
    let mut rejected = 0;
    for t in &solutions {
        let check = is_nash(g, &system.vars, t)?;
        if !check.is_nash {
            rejected += 1;
            continue;
        }
        let profile = system
            .vars
            .index
            .iter()
            .map(|row| row.iter().map(|&v| t.coords[v].clone()).collect())
            .collect();
        equilibria.push(Equilibrium {
            field: t.field().clone(),
            profile,
            margins: check.margins,
            tuple: t.clone(),
        });
    }
    let filter_time = t0.elapsed();
    let finish = |s: &SolveStats| {
        let mut s = s.clone();
        s.candidates_rejected_not_nash = rejected;
        s.timings.push(("nash filter", filter_time));
        s
    };
    let verdict = if equilibria.is_empty() {
        RpieVerdict::NoTotallyMixed
    } else if equilibria.iter().all(|e| e.all_irrational()) {
        RpieVerdict::Rpie
    } else {
        RpieVerdict::HasRationalTotallyMixed
    };
    Ok(SolveReport {
        verdict,
        equilibria,
        solutions,
        samples,
        eliminants,
        system,
        gb,
        orbit_stats: by_orbit.as_ref().map(|o| finish(&o.stats)),
        naive_stats: by_naive.as_ref().map(|n| finish(&n.stats)),
    })
}

fn least_eliminant_report(gb: &GroebnerBasis) -> Result<Vec<EliminantReport>, SolveError> {
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let v = gb.ring.nvars() - 1;
    factor_sorted(&gb.eliminant(v))?
        .iter()
        .map(|f| report(gb, v, f))
        .collect()
}

/// Membership in the class of games whose totally mixed equilibria exist
/// and are all irrational.
pub fn classify_rpie(g: &Game) -> Result<RpieVerdict, SolveError> {
    let opts = SolveOptions {
        method: if g.players() == 2 { Method::Naive } else { Method::Orbit },
        ..SolveOptions::default()
    };
    match solve(g, &opts) {
        Ok(r) => Ok(r.verdict),
        Err(SolveError::NonGenericGame) => Ok(RpieVerdict::NonGeneric),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::table1;
    use crate::multipoly::Ring;
    use crate::rational::{q, qf, Q};

    fn system(names: &[&str], eqs: &[&str]) -> Vec<MPoly> {
        let r = Ring::new(names.iter().copied());
        eqs.iter().map(|s| MPoly::parse(&r, s).unwrap()).collect()
    }

    #[test]
    fn toy_sample_is_least_root() {
        let s = sample_solution(&system(&["x"], &["x^2 - 2"])).unwrap();
        assert_eq!(s.tuple.coords[0].approx_decimal(4), "-1.4142");
    }

    #[test]
    fn rational_root_is_skipped() {
        // (t - 1/2)(t^2 - 2)
        let eqs = system(&["y", "t"], &["2*t^3 - t^2 - 4*t + 2", "y - t"]);
        let s = sample_solution(&eqs).unwrap();
        assert_eq!(s.tuple.coords[1].approx_decimal(4), "-1.4142");
        let all = all_solutions_orbit(&eqs).unwrap();
        assert_eq!(all.irrational.len(), 2);
        assert_eq!(all.rational.len(), 1);
        assert_eq!(all.rational[0].coords[0].is_rational(), Some(qf(1, 2)));
        assert_eq!(all.stats.candidates_rejected_rational, 1);
    }

    #[test]
    fn missing_roots_are_reported() {
        let eqs = system(&["y", "t"], &["t^2 + 1", "y - t"]);
        assert_eq!(all_solutions_orbit(&eqs).unwrap_err(), SolveError::NoRealRoot);
        let eqs = system(&["y", "t"], &["t^2 - 1", "y - t"]);
        assert_eq!(sample_solution(&eqs).unwrap_err(), SolveError::NoIrrationalRoot);
        let eqs = system(&["y", "t"], &["2*t^3 - t^2 + 2*t - 1", "y - t"]);
        assert_eq!(all_solutions_orbit(&eqs).unwrap_err(), SolveError::NoIrrationalRoot);
    }

    #[test]
    fn shape_toy_orbit() {
        let eqs = system(&["y", "t"], &["t^2 - 2", "y - t - 1"]);
        let all = all_solutions_orbit(&eqs).unwrap();
        assert_eq!(all.irrational.len(), 2);
        assert_eq!(all.stats.orbit, PhaseCounts::default());
        assert_eq!(all.stats.buchberger_calls, 1);
    }

    #[test]
    fn naive_counts() {
        let eqs = system(&["y", "x"], &["x^2 - 2", "y - x"]);
        let n = all_solutions_naive(&eqs).unwrap();
        assert_eq!(n.tuples.len(), 2);
        assert_eq!(n.stats.substitutions, 2);
        assert_eq!(n.stats.uniform_branching_product(), Some(2));
        for t in &n.tuples {
            assert!(t.coords[0].same(&t.coords[1]));
        }
    }

    #[test]
    fn fallback_matches_naive() {
        // the basis here is {x - y, y^2 - 2}, so the shape path is taken
        let eqs = system(&["x", "y"], &["x^2 - 2", "y^2 - 2", "x*y - 2"]);
        let o = all_solutions_orbit(&eqs).unwrap();
        let n = all_solutions_naive(&eqs).unwrap();
        assert_eq!(key_set(&o.all()), key_set(&n.tuples));
        assert_eq!(n.tuples.len(), 2);
        // non-shape, two coordinates that are independent square roots
        let eqs = system(&["x", "y"], &["x^2 - 2", "y^2 - 3"]);
        let o = all_solutions_orbit(&eqs).unwrap();
        let n = all_solutions_naive(&eqs).unwrap();
        assert_eq!(o.all().len(), 4);
        assert_eq!(o.stats.candidates_generated, 4);
        assert!(o.stats.orbit.factorizations > 0);
        assert_eq!(key_set(&o.all()), key_set(&n.tuples));
    }

    #[test]
    fn positive_dimensional_is_non_generic() {
        let eqs = system(&["x", "y"], &["x*y - 1", "2*x*y - 2"]);
        assert_eq!(all_solutions_naive(&eqs).unwrap_err(), SolveError::NonGenericGame);
        assert_eq!(all_solutions_orbit(&eqs).unwrap_err(), SolveError::NonGenericGame);
    }

    #[test]
    fn table1_both_methods() {
        let g = table1();
        let opts = SolveOptions {
            method: Method::Both,
            ..SolveOptions::default()
        };
        let r = solve(&g, &opts).unwrap();
        assert_eq!(r.verdict, RpieVerdict::HasRationalTotallyMixed);
        assert_eq!(r.equilibria.len(), 1);
        let e = &r.equilibria[0];
        let firsts: Vec<_> = e.profile.iter().map(|p| p[0].is_rational().unwrap()).collect();
        assert_eq!(firsts, vec![qf(3, 5), qf(1, 2), qf(1, 3)]);
        assert!(e.margins.iter().flatten().all(|m| m.is_zero()));
        assert_eq!(r.orbit_stats.unwrap().buchberger_calls, 1);
        assert_eq!(classify_rpie(&g).unwrap(), RpieVerdict::HasRationalTotallyMixed);
    }

    #[test]
    fn nash_check_rejects_bad_tuples() {
        let g = table1();
        let sys = build_game_system(&g, None).unwrap();
        let f = NumberField::rationals();
        let mk = |vals: &[Q]| SolutionTuple {
            coords: vals.iter().map(|v| NFElement::from_rational(&f, v.clone())).collect(),
            source: TupleSource::Rational,
        };
        let mut vals = vec![q(0); 6];
        let set = |vals: &mut Vec<Q>, i: usize, j: usize, v: Q| vals[sys.vars.var(i, j)] = v;
        for (i, x) in [qf(3, 5), qf(1, 2), qf(1, 3)].into_iter().enumerate() {
            set(&mut vals, i, 1, q(1) - &x);
            set(&mut vals, i, 0, x);
        }
        assert!(is_nash(&g, &sys.vars, &mk(&vals)).unwrap().is_nash);
        let mut zero = vals.clone();
        set(&mut zero, 0, 0, q(0));
        set(&mut zero, 0, 1, q(1));
        assert!(!is_nash(&g, &sys.vars, &mk(&zero)).unwrap().is_nash);
        let mut off = vals.clone();
        set(&mut off, 2, 1, qf(1, 2));
        assert!(!is_nash(&g, &sys.vars, &mk(&off)).unwrap().is_nash);
        assert!(matches!(
            is_nash(&g, &sys.vars, &mk(&vals[..5])),
            Err(SolveError::IncompleteTuple { got: 5, expected: 6 })
        ));
    }

    #[test]
    fn bimatrix_guard() {
        let g = Game::from_table(&[2, 2], vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(solve(&g, &SolveOptions::default()).unwrap_err(), SolveError::BimatrixUnsupported);
        let naive = SolveOptions {
            method: Method::Naive,
            ..SolveOptions::default()
        };
        let r = solve(&g, &naive).unwrap();
        assert_eq!(r.equilibria.len(), 1);
        assert!(r.equilibria[0].is_rational());
        let big = SolveOptions {
            method: Method::Naive,
            max_vars: 3,
            ..SolveOptions::default()
        };
        assert_eq!(solve(&g, &big).unwrap_err(), SolveError::SizeLimit { vars: 4, limit: 3 });
    }
}
