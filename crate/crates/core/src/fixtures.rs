//! Reference data: the local minima for 27 points in `R^6`, the lowest energy
//! levels for 120 points in `R^4`, and two stored rare 27-point minima.

use crate::config::PointConfig;
use crate::io::parse_config;

/// One harmonic local minimum for 27 points in `R^6`, with its frequency out of `10^8` trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum27 {
    pub energy: f64,
    pub frequency: u64,
    pub parameters: usize,
    pub max_cosine: f64,
    pub symmetries: u128,
}

pub const MINIMA_27_IN_6: [Minimum27; 5] = [
    Minimum27 { energy: 111.0000000000, frequency: 99971504, parameters: 0, max_cosine: 0.2500000000, symmetries: 51840 },
    Minimum27 { energy: 112.6145815185, frequency: 653, parameters: 9, max_cosine: 0.4306480635, symmetries: 120 },
    Minimum27 { energy: 112.6420995468, frequency: 22993, parameters: 18, max_cosine: 0.3789599707, symmetries: 24 },
    Minimum27 { energy: 112.7360209988, frequency: 10, parameters: 2, max_cosine: 0.4015602076, symmetries: 1920 },
    Minimum27 { energy: 112.8896851626, frequency: 4840, parameters: 13, max_cosine: 0.4041651631, symmetries: 48 },
];

/// The thirty lowest harmonic energy levels for 120 points in `R^4` with their
/// frequencies out of 200000 trials.
pub const LEVELS_120_IN_4: [(f64, u64); 30] = [
    (5395.000000, 186418),
    (5398.650556, 4393),
    (5398.687876, 2356),
    (5400.842726, 18),
    (5400.880057, 149),
    (5400.890460, 47),
    (5400.894513, 26),
    (5400.928674, 25),
    (5400.936106, 41),
    (5400.940237, 28),
    (5400.940550, 7),
    (5400.943094, 38),
    (5402.029556, 7),
    (5402.088248, 3),
    (5402.093726, 10),
    (5402.116636, 1),
    (5402.152619, 1),
    (5402.213231, 2),
    (5402.366164, 1),
    (5402.922701, 1),
    (5403.091064, 111),
    (5403.115123, 1),
    (5403.129076, 108),
    (5403.271100, 66),
    (5403.319898, 157),
    (5403.326719, 84),
    (5403.347209, 24),
    (5403.455701, 7),
    (5403.462898, 8),
    (5403.488923, 4),
];

/// The large gaps among [`LEVELS_120_IN_4`], as (lower, upper) levels.
pub const GAPS_120_IN_4: [(f64, f64); 3] =
    [(5395.000000, 5398.650556), (5398.687876, 5400.842726), (5400.943094, 5402.029556)];

pub fn levels_120_in_4() -> Vec<f64> {
    LEVELS_120_IN_4.iter().map(|&(e, _)| e).collect()
}

const MINIMUM_112736: &str = include_str!("../data/minimum_27_6_112736.txt");

/// The minimum with energy `112.7360209988...`: the Schlafli configuration with
/// one point replaced by its antipode, then relaxed and polished.
pub fn minimum_27_in_6_112736() -> PointConfig {
    parse_config(MINIMUM_112736).expect("stored fixture parses")
}

const MINIMUM_112890: &str = include_str!("../data/minimum_27_6_112890.txt");

/// The minimum with energy `112.8896851626...`, taken from a random-start search.
pub fn minimum_27_in_6_112890() -> PointConfig {
    parse_config(MINIMUM_112890).expect("stored fixture parses")
}
