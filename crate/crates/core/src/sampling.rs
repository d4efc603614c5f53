//! Seeded parameter draws.
//!
//! Magnitudes are log-uniform on `[0.1, 10]` and phases uniform on
//! `(−π, π]`. Every draw is addressed by `(master seed, index)`, so results
//! do not depend on how work is split across threads.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chessboard::{family_a, family_b, CanonicalParams, Params, RawParams};
use crate::C64;

pub const MAGNITUDE_MIN: f64 = 0.1;
pub const MAGNITUDE_MAX: f64 = 10.0;

/// splitmix64 output for state `master + index·γ` (γ the golden-ratio increment).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn magnitude<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let (lo, hi) = (MAGNITUDE_MIN.ln(), MAGNITUDE_MAX.ln());
    rng.gen_range(lo..=hi).exp()
}

/// Uniform on `(−π, π]`.
pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    PI - rng.gen_range(0.0..2.0 * PI)
}

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let r = magnitude(rng);
    C64::from_polar(r, phase(rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `s = ac/n`, `t = ad/m`
    A,
    /// `|s| = ac/n`, `|t| = ad/m`, free phases
    B,
    /// all eight parameters complex and unconstrained
    Raw,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "a",
            Family::B => "b",
            Family::Raw => "raw",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "raw" => Ok(Family::Raw),
            other => Err(format!("unknown family '{other}' (expected a, b or raw)")),
        }
    }
}

/// One draw of the six real magnitudes `a, b, c, d, m, n`.
pub fn reals<R: Rng + ?Sized>(rng: &mut R) -> [f64; 6] {
    std::array::from_fn(|_| magnitude(rng))
}

pub fn family_a_params<R: Rng + ?Sized>(rng: &mut R) -> CanonicalParams {
    let [a, b, c, d, m, n] = reals(rng);
    family_a(a, b, c, d, m, n).expect("sampled magnitudes are positive")
}

/// Family B draw; also returns `(phi_s, phi_t)`.
pub fn family_b_params<R: Rng + ?Sized>(rng: &mut R) -> (CanonicalParams, [f64; 2]) {
    let [a, b, c, d, m, n] = reals(rng);
    let (phi_s, phi_t) = (phase(rng), phase(rng));
    let p = family_b(a, b, c, d, m, n, phi_s, phi_t).expect("sampled magnitudes are positive");
    (p, [phi_s, phi_t])
}

pub fn raw_params<R: Rng + ?Sized>(rng: &mut R) -> RawParams {
    RawParams::from_array(std::array::from_fn(|_| complex(rng)))
}

/// The parameters of sample `index` under `master`, with the per-sample seed.
pub fn draw(family: Family, master: u64, index: u64) -> (u64, Params) {
    let seed = derive_seed(master, index);
    let mut rng = rng_from_seed(seed);
    let params = match family {
        Family::A => Params::Canonical(family_a_params(&mut rng)),
        Family::B => Params::Canonical(family_b_params(&mut rng).0),
        Family::Raw => Params::Raw(raw_params(&mut rng)),
    };
    (seed, params)
}
