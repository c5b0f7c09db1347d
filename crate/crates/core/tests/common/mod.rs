#![allow(dead_code)]

use nalgebra::{DMatrix, Schur};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rpie::game::Game;
use rpie::gamefile::parse_game_file;
use rpie::rational::{to_f64, Q};
use rpie::unipoly::UPoly;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Game {
    parse_game_file(&fixture_path(name)).expect("fixture parses")
}

/// Integer payoffs drawn uniformly from `lo..=hi`.
pub fn random_game(rng: &mut ChaCha8Rng, strategies: &[usize], lo: i64, hi: i64) -> Game {
    let n = strategies.len();
    let profiles: usize = strategies.iter().product();
    let table = (0..profiles)
        .map(|_| (0..n).map(|_| Q::from_integer(rng.gen_range(lo..=hi).into())).collect())
        .collect();
    Game::from_table(strategies, table).expect("valid game")
}

/// Roots of `p` as eigenvalues of its companion matrix.
pub fn numeric_roots(p: &UPoly) -> Vec<(f64, f64)> {
    let d = p.degree();
    let lc = to_f64(&p.lc());
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -to_f64(&p.coeff(i)) / lc;
    }
    // unshifted QR can stall on near-cyclic companion matrices such as
    // t^4 + 3, so bound the iterations and retry on a similar matrix
    let mut t = DMatrix::<f64>::identity(d, d);
    for i in 0..d {
        for j in i + 1..d {
            t[(i, j)] = 1.0 / (1 + i + 2 * j) as f64;
        }
    }
    let t_inv = t.clone().try_inverse().expect("unit upper triangular");
    for candidate in [m.clone(), &t * &m * &t_inv] {
        if let Some(s) = Schur::try_new(candidate, 1e-14, 10_000) {
            return s.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
        }
    }
    panic!("eigenvalue iteration did not converge for {p}");
}
