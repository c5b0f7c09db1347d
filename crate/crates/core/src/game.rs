//! Normal-form games and their polynomial indifference systems.

use crate::multipoly::{MPoly, Ring};
use crate::rational::{parse_rational, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),
    #[error("player {player} has {count} strategies; at least two are required")]
    TooFewStrategies { player: usize, count: usize },
    #[error("no payoff given for profile {}", fmt_profile(.0))]
    MissingProfile(Vec<usize>),
    #[error("payoff {value:?} at profile {} is not an integer or p/q rational", fmt_profile(.profile))]
    NonRationalPayoff { profile: Vec<usize>, value: String },
    #[error("profile {} is listed more than once", fmt_profile(.0))]
    DuplicateProfile(Vec<usize>),
    #[error("profile {} does not fit the strategy counts", fmt_profile(.0))]
    BadProfile(Vec<usize>),
    #[error("profile {} has {got} payoff values, expected {expected}", fmt_profile(.profile))]
    WrongValueCount {
        profile: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("{players} players but {counts} strategy counts")]
    StrategyCountMismatch { players: usize, counts: usize },
    #[error("player index {0} out of range")]
    BadPlayer(usize),
    #[error("strategy index {0} out of range")]
    BadStrategy(usize),
    #[error("variable order must list each of the {expected} variables once: {reason}")]
    BadOrder { expected: usize, reason: String },
}

fn fmt_profile(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(|j| j.to_string()).collect();
    format!("({})", v.join(","))
}

/// A game as read from input, before validation. Profiles are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawGame {
    pub players: usize,
    pub strategies: Vec<usize>,
    pub payoffs: Vec<(Vec<usize>, Vec<String>)>,
    pub labels: Option<Vec<Vec<String>>>,
}

/// A finite normal-form game with exact rational payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    strategies: Vec<usize>,
    /// Payoff vectors indexed by the mixed-radix code of the 0-based profile.
    payoffs: Vec<Vec<Q>>,
    labels: Option<Vec<Vec<String>>>,
}

pub fn validate_game(raw: &RawGame) -> Result<Game, GameError> {
    if raw.players < 2 {
        return Err(GameError::TooFewPlayers(raw.players));
    }
    if raw.strategies.len() != raw.players {
        return Err(GameError::StrategyCountMismatch {
            players: raw.players,
            counts: raw.strategies.len(),
        });
    }
    for (i, &k) in raw.strategies.iter().enumerate() {
        if k < 2 {
            return Err(GameError::TooFewStrategies { player: i + 1, count: k });
        }
    }
    let n = raw.players;
    let total: usize = raw.strategies.iter().product();
    let mut payoffs: Vec<Option<Vec<Q>>> = vec![None; total];
    for (profile, values) in &raw.payoffs {
        if profile.len() != n
            || profile
                .iter()
                .zip(&raw.strategies)
                .any(|(&j, &k)| j == 0 || j > k)
        {
            return Err(GameError::BadProfile(profile.clone()));
        }
        if values.len() != n {
            return Err(GameError::WrongValueCount {
                profile: profile.clone(),
                got: values.len(),
                expected: n,
            });
        }
        let zero_based: Vec<usize> = profile.iter().map(|j| j - 1).collect();
        let code = encode(&raw.strategies, &zero_based);
        if payoffs[code].is_some() {
            return Err(GameError::DuplicateProfile(profile.clone()));
        }
        let parsed = values
            .iter()
            .map(|v| {
                parse_rational(v).map_err(|_| GameError::NonRationalPayoff {
                    profile: profile.clone(),
                    value: v.clone(),
                })
            })
            .collect::<Result<Vec<Q>, _>>()?;
        payoffs[code] = Some(parsed);
    }
    let mut out = Vec::with_capacity(total);
    for (code, p) in payoffs.into_iter().enumerate() {
        match p {
            Some(v) => out.push(v),
            None => {
                let prof = decode(&raw.strategies, code).iter().map(|j| j + 1).collect();
                return Err(GameError::MissingProfile(prof));
            }
        }
    }
    Ok(Game {
        strategies: raw.strategies.clone(),
        payoffs: out,
        labels: raw.labels.clone(),
    })
}

/// Mixed-radix code, player 1 most significant.
fn encode(strategies: &[usize], profile: &[usize]) -> usize {
    profile
        .iter()
        .zip(strategies)
        .fold(0, |acc, (&j, &k)| acc * k + j)
}

fn decode(strategies: &[usize], mut code: usize) -> Vec<usize> {
    let mut out = vec![0; strategies.len()];
    for (i, &k) in strategies.iter().enumerate().rev() {
        out[i] = code % k;
        code /= k;
    }
    out
}

impl Game {
    /// Builds a game from payoff vectors listed in profile order (player 1's
    /// strategy varies slowest).
    pub fn from_table(strategies: &[usize], table: Vec<Vec<Q>>) -> Result<Game, GameError> {
        let raw = RawGame {
            players: strategies.len(),
            strategies: strategies.to_vec(),
            payoffs: table
                .into_iter()
                .enumerate()
                .map(|(code, v)| {
                    let prof = decode(strategies, code).iter().map(|j| j + 1).collect();
                    (prof, v.iter().map(crate::rational::fmt_q).collect())
                })
                .collect(),
            labels: None,
        };
        validate_game(&raw)
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self) -> &[usize] {
        &self.strategies
    }

    /// Total number of mixing variables.
    pub fn total_strategies(&self) -> usize {
        self.strategies.iter().sum()
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    /// Payoffs at a 0-based profile.
    pub fn payoff(&self, profile: &[usize]) -> &[Q] {
        &self.payoffs[encode(&self.strategies, profile)]
    }

    /// All 0-based profiles in table order.
    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.payoffs.len()).map(|c| decode(&self.strategies, c))
    }

    pub fn to_raw(&self) -> RawGame {
        RawGame {
            players: self.players(),
            strategies: self.strategies.clone(),
            payoffs: self
                .profiles()
                .map(|p| {
                    let vals = self.payoff(&p).iter().map(crate::rational::fmt_q).collect();
                    (p.iter().map(|j| j + 1).collect(), vals)
                })
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Name of the variable for player `i`, strategy `j` (both 0-based).
    pub fn var_name(i: usize, j: usize) -> String {
        format!("x{}_{}", i + 1, j + 1)
    }

    /// Variable names in player-major, strategy-minor order.
    pub fn var_names(&self) -> Vec<String> {
        let mut v = Vec::new();
        for (i, &k) in self.strategies.iter().enumerate() {
            for j in 0..k {
                v.push(Self::var_name(i, j));
            }
        }
        v
    }

    fn check_player(&self, i: usize) -> Result<(), GameError> {
        if i >= self.players() {
            return Err(GameError::BadPlayer(i));
        }
        Ok(())
    }

    /// Σ_profiles A^i · ∏ x^l_{j_l} over `sys`'s ring.
    pub fn expected_payoff(&self, sys: &VarMap, i: usize) -> Result<MPoly, GameError> {
        self.check_player(i)?;
        let mut out = MPoly::zero(&sys.ring);
        for p in self.profiles() {
            let a = &self.payoff(&p)[i];
            if a.is_zero() {
                continue;
            }
            out.add_term(sys.monomial(&p, None), a.clone());
        }
        Ok(out)
    }

    /// Payoff to player `i` for pure strategy `j` against the others' mixes.
    pub fn pure_deviation_payoff(&self, sys: &VarMap, i: usize, j: usize) -> Result<MPoly, GameError> {
        self.check_player(i)?;
        if j >= self.strategies[i] {
            return Err(GameError::BadStrategy(j));
        }
        let mut out = MPoly::zero(&sys.ring);
        for p in self.profiles().filter(|p| p[i] == j) {
            let a = &self.payoff(&p)[i];
            if a.is_zero() {
                continue;
            }
            out.add_term(sys.monomial(&p, Some(i)), a.clone());
        }
        Ok(out)
    }

    /// Full variable map with the default precedence, or an explicit order
    /// given least variable first.
    pub fn var_map(&self, order: Option<&[String]>) -> Result<VarMap, GameError> {
        let names = self.var_names();
        let least_first: Vec<String> = match order {
            None => names.clone(),
            Some(o) => {
                let mut sorted = o.to_vec();
                sorted.sort();
                let mut want = names.clone();
                want.sort();
                if sorted != want {
                    return Err(GameError::BadOrder {
                        expected: names.len(),
                        reason: format!("got [{}]", o.join(", ")),
                    });
                }
                o.to_vec()
            }
        };
        let ring = Ring::new(least_first.iter().rev().cloned());
        let index = self
            .strategies
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                (0..k)
                    .map(|j| ring.index_of(&Self::var_name(i, j)).unwrap())
                    .collect()
            })
            .collect();
        Ok(VarMap { ring, index })
    }
}

/// Where each mixing variable `x^i_j` lives in a polynomial ring.
#[derive(Debug, Clone)]
pub struct VarMap {
    pub ring: Arc<Ring>,
    /// `index[i][j]` is the ring position of player `i`'s strategy `j`.
    pub index: Vec<Vec<usize>>,
}

impl VarMap {
    fn monomial(&self, profile: &[usize], skip: Option<usize>) -> Vec<u32> {
        let mut m = vec![0; self.ring.nvars()];
        for (l, &j) in profile.iter().enumerate() {
            if Some(l) != skip {
                m[self.index[l][j]] = 1;
            }
        }
        m
    }

    pub fn var(&self, i: usize, j: usize) -> usize {
        self.index[i][j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationSource {
    Indifference { player: usize, strategy: usize },
    Simplex { player: usize },
}

impl fmt::Display for EquationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationSource::Indifference { player, strategy } => {
                write!(f, "indifference(player {}, strategy {})", player + 1, strategy + 1)
            }
            EquationSource::Simplex { player } => write!(f, "simplex(player {})", player + 1),
        }
    }
}

/// The indifference and simplex equations of a game, each read as `= 0`.
#[derive(Debug, Clone)]
pub struct GameSystem {
    pub vars: VarMap,
    pub equations: Vec<MPoly>,
    pub sources: Vec<EquationSource>,
}

impl GameSystem {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.vars.ring
    }
}

/// `α_i − dev(i, j)` for every player and pure strategy, then `Σ_j x^i_j − 1`
/// for every player.
pub fn build_game_system(g: &Game, order: Option<&[String]>) -> Result<GameSystem, GameError> {
    let vars = g.var_map(order)?;
    let mut equations = Vec::new();
    let mut sources = Vec::new();
    for i in 0..g.players() {
        let alpha = g.expected_payoff(&vars, i)?;
        for j in 0..g.strategies()[i] {
            equations.push(&alpha - &g.pure_deviation_payoff(&vars, i, j)?);
            sources.push(EquationSource::Indifference { player: i, strategy: j });
        }
    }
    for i in 0..g.players() {
        let mut s = MPoly::constant(&vars.ring, -Q::one());
        for j in 0..g.strategies()[i] {
            s = &s + &MPoly::var(&vars.ring, vars.var(i, j));
        }
        equations.push(s);
        sources.push(EquationSource::Simplex { player: i });
    }
    Ok(GameSystem {
        vars,
        equations,
        sources,
    })
}

/// The system in the first `k_i − 1` variables of each player, with the last
/// one replaced by `1 − Σ`: one equation `dev(i, j) − dev(i, k_i)` per player
/// and non-final strategy.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub ring: Arc<Ring>,
    pub equations: Vec<MPoly>,
    /// `(player, strategy)` of each ring variable.
    pub var_owner: Vec<(usize, usize)>,
}

/// Reduced view; `names[i][j]` optionally renames player `i`'s strategy `j`
/// variable. Variables are ordered player-major with player 1 least.
pub fn reduced_system(g: &Game, names: Option<&[Vec<String>]>) -> ReducedSystem {
    let mut owners = Vec::new();
    let mut labels = Vec::new();
    for (i, &k) in g.strategies().iter().enumerate() {
        for j in 0..k - 1 {
            owners.push((i, j));
            labels.push(match names {
                Some(n) => n[i][j].clone(),
                None => Game::var_name(i, j),
            });
        }
    }
    let ring = Ring::new(labels.iter().rev().cloned());
    let nv = owners.len();
    let pos = |i: usize, j: usize| nv - 1 - owners.iter().position(|&o| o == (i, j)).unwrap();
    // x^i_j as a polynomial in the reduced variables
    let mix = |i: usize, j: usize| -> MPoly {
        let k = g.strategies()[i];
        if j + 1 < k {
            MPoly::var(&ring, pos(i, j))
        } else {
            let mut p = MPoly::one(&ring);
            for l in 0..k - 1 {
                p = &p - &MPoly::var(&ring, pos(i, l));
            }
            p
        }
    };
    let dev = |i: usize, j: usize| -> MPoly {
        let mut out = MPoly::zero(&ring);
        for p in g.profiles().filter(|p| p[i] == j) {
            let a = &g.payoff(&p)[i];
            if a.is_zero() {
                continue;
            }
            let mut t = MPoly::constant(&ring, a.clone());
            for (l, &jl) in p.iter().enumerate() {
                if l != i {
                    t = &t * &mix(l, jl);
                }
            }
            out = &out + &t;
        }
        out
    };
    let mut equations = Vec::new();
    for (i, &k) in g.strategies().iter().enumerate() {
        let last = dev(i, k - 1);
        for j in 0..k - 1 {
            equations.push(&dev(i, j) - &last);
        }
    }
    let var_owner = (0..nv).map(|r| owners[nv - 1 - r]).collect();
    ReducedSystem {
        ring,
        equations,
        var_owner,
    }
}

/// Sorted map view of the payoffs, keyed by 1-based profile.
pub fn payoff_map(g: &Game) -> BTreeMap<Vec<usize>, Vec<Q>> {
    g.profiles()
        .map(|p| {
            let v = g.payoff(&p).to_vec();
            (p.iter().map(|j| j + 1).collect(), v)
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{q, qf};

    /// Rows a/b for player 1, columns A/B for player 2, tables 1/2 for player 3.
    pub(crate) fn table1() -> Game {
        let t = |a: i64, b: Q, c: i64| vec![q(a), b, q(c)];
        Game::from_table(
            &[2, 2, 2],
            vec![
                t(6, q(-1), 4),     // a A 1
                t(2, q(0), 0),      // a A 2
                t(0, q(9), 0),      // a B 1
                t(0, qf(9, 2), 0),  // a B 2
                t(0, qf(3, 2), 0),  // b A 1
                t(0, qf(27, 2), 0), // b A 2
                t(2, q(0), 0),      // b B 1
                t(4, q(0), 6),      // b B 2
            ],
        )
        .unwrap()
    }

    fn raw_2x2() -> RawGame {
        RawGame {
            players: 2,
            strategies: vec![2, 2],
            payoffs: vec![
                (vec![1, 1], vec!["1".into(), "0".into()]),
                (vec![1, 2], vec!["0".into(), "0".into()]),
                (vec![2, 1], vec!["0".into(), "0".into()]),
                (vec![2, 2], vec!["1".into(), "0".into()]),
            ],
            labels: None,
        }
    }

    #[test]
    fn validation_errors() {
        let mut raw = raw_2x2();
        raw.strategies = vec![1, 2];
        assert!(matches!(validate_game(&raw), Err(GameError::TooFewStrategies { player: 1, count: 1 })));
        let mut raw = raw_2x2();
        raw.payoffs.pop();
        assert_eq!(validate_game(&raw), Err(GameError::MissingProfile(vec![2, 2])));
        let mut raw = raw_2x2();
        raw.payoffs[0].1[0] = "1.5".into();
        assert!(matches!(validate_game(&raw), Err(GameError::NonRationalPayoff { .. })));
        let mut raw = raw_2x2();
        raw.players = 1;
        assert_eq!(validate_game(&raw), Err(GameError::TooFewPlayers(1)));
        let mut raw = raw_2x2();
        raw.payoffs[1].0 = vec![1, 1];
        assert!(matches!(validate_game(&raw), Err(GameError::DuplicateProfile(_))));
    }

    #[test]
    fn expected_payoffs() {
        let g = table1();
        let vm = g.var_map(None).unwrap();
        let a3 = g.expected_payoff(&vm, 2).unwrap();
        assert_eq!(a3.len(), 2);
        assert_eq!(a3.to_string(), "6*x3_2*x2_2*x1_2 + 4*x3_1*x2_1*x1_1");
        let d = g.pure_deviation_payoff(&vm, 2, 0).unwrap();
        assert_eq!(d.to_string(), "4*x2_1*x1_1");
        let d = g.pure_deviation_payoff(&vm, 2, 1).unwrap();
        assert_eq!(d.to_string(), "6*x2_2*x1_2");
        let id = validate_game(&raw_2x2()).unwrap();
        let vm = id.var_map(None).unwrap();
        assert_eq!(id.expected_payoff(&vm, 0).unwrap().to_string(), "x2_2*x1_2 + x2_1*x1_1");
        assert!(id.expected_payoff(&vm, 1).unwrap().is_zero());
    }

    #[test]
    fn system_shape() {
        let g = table1();
        let gs = build_game_system(&g, None).unwrap();
        assert_eq!(gs.equations.len(), 6 + 3);
        assert_eq!(gs.ring().order_string(), "x1_1 ≺ x1_2 ≺ x2_1 ≺ x2_2 ≺ x3_1 ≺ x3_2");
        assert_eq!(gs.sources[8], EquationSource::Simplex { player: 2 });
    }

    #[test]
    fn reduced_view() {
        let names = vec![vec!["x".to_string()], vec!["y".to_string()], vec!["z".to_string()]];
        let rs = reduced_system(&table1(), Some(&names));
        let text: Vec<String> = rs.equations.iter().map(|e| e.to_string()).collect();
        assert_eq!(rs.ring.order_string(), "x ≺ y ≺ z");
        assert_eq!(text[0], "2*z*y + 2*z + 6*y - 4");
        assert_eq!(text[2], "-2*y*x + 6*y + 6*x - 6");
    }

    #[test]
    fn identical_rows_give_zero_equations() {
        let mut raw = raw_2x2();
        for p in &mut raw.payoffs {
            p.1[0] = "5".into();
        }
        let g = validate_game(&raw).unwrap();
        let rs = reduced_system(&g, None);
        assert!(rs.equations[0].is_zero());
        // in the full system they vanish modulo the simplex equations
        let gs = build_game_system(&g, None).unwrap();
        let simplex = crate::groebner::buchberger(&gs.equations[4..]).unwrap();
        assert!(simplex.contains(&gs.equations[0]));
        assert!(simplex.contains(&gs.equations[1]));
        assert!(!gs.equations[0].is_zero());
    }

    #[test]
    fn custom_order() {
        let g = validate_game(&raw_2x2()).unwrap();
        let order: Vec<String> = ["x2_1", "x1_1", "x1_2", "x2_2"].iter().map(|s| s.to_string()).collect();
        let vm = g.var_map(Some(&order)).unwrap();
        assert_eq!(vm.ring.order_string(), "x2_1 ≺ x1_1 ≺ x1_2 ≺ x2_2");
        let bad: Vec<String> = vec!["x1_1".into()];
        assert!(matches!(g.var_map(Some(&bad)), Err(GameError::BadOrder { .. })));
    }
}
