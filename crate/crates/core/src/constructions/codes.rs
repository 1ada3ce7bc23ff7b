//! Binary codes, the Nordstrom-Robinson code, and the 64-point code from `F_8^2`.

use nalgebra::DMatrix;

use super::gram::{realize_from_gram, GramMatrix};
use crate::config::PointConfig;
use crate::error::{Error, Result};

/// Distinct words of a fixed length; bit `k` of a word is coordinate `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    words: Vec<u32>,
    min_distance: u32,
}

impl BinaryCode {
    /// Sorts and deduplicates `words`; rejects words wider than `length`.
    pub fn new(length: usize, mut words: Vec<u32>) -> Result<Self> {
        if length == 0 || length > 32 {
            return Err(Error::ParameterOutOfRange(format!("code length {length} outside 1..=32")));
        }
        if length < 32 && words.iter().any(|&w| w >> length != 0) {
            return Err(Error::InvalidConfig(format!("word longer than {length} bits")));
        }
        words.sort_unstable();
        words.dedup();
        let mut min_distance = u32::MAX;
        for (i, &a) in words.iter().enumerate() {
            for &b in &words[i + 1..] {
                min_distance = min_distance.min((a ^ b).count_ones());
            }
        }
        Ok(BinaryCode { length, words, min_distance })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Minimum Hamming distance, `u32::MAX` for fewer than two words.
    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }
}

/// Generator matrix of the octacode over `Z/4`.
const OCTACODE: [[u8; 8]; 4] = [
    [1, 0, 0, 0, 3, 1, 2, 1],
    [0, 1, 0, 0, 1, 2, 3, 1],
    [0, 0, 1, 0, 3, 3, 3, 2],
    [0, 0, 0, 1, 2, 3, 1, 1],
];

/// Gray map `0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10`.
const GRAY: [[u32; 2]; 4] = [[0, 0], [0, 1], [1, 1], [1, 0]];

/// The `(16, 256, 6)` Nordstrom-Robinson code as the Gray image of the octacode.
pub fn build_nordstrom_robinson() -> BinaryCode {
    let mut words = Vec::with_capacity(256);
    for m in 0..256u32 {
        let coeffs: [u32; 4] = std::array::from_fn(|r| (m >> (2 * r)) & 3);
        let mut word = 0u32;
        for col in 0..8 {
            let s = (0..4).map(|r| coeffs[r] * OCTACODE[r][col] as u32).sum::<u32>() % 4;
            for (b, &bit) in GRAY[s as usize].iter().enumerate() {
                word |= bit << (2 * col + b);
            }
        }
        words.push(word);
    }
    BinaryCode::new(16, words).expect("octacode image is a valid code")
}

/// Keeps the words with `value` at `coordinate` and deletes that coordinate.
pub fn shorten(code: &BinaryCode, coordinate: usize, value: bool) -> Result<BinaryCode> {
    if coordinate >= code.length {
        return Err(Error::ParameterOutOfRange(format!(
            "coordinate {coordinate} outside a code of length {}",
            code.length
        )));
    }
    if code.length == 1 {
        return Err(Error::EmptyShortening);
    }
    let low = (1u32 << coordinate) - 1;
    let words: Vec<u32> = code
        .words
        .iter()
        .filter(|&&w| (w >> coordinate & 1 == 1) == value)
        .map(|&w| (w & low) | ((w >> (coordinate + 1)) << coordinate))
        .collect();
    if words.is_empty() {
        return Err(Error::EmptyShortening);
    }
    BinaryCode::new(code.length - 1, words)
}

/// Maps bit 0 to `+1/sqrt(L)` and bit 1 to `-1/sqrt(L)`.
pub fn cube_embed(code: &BinaryCode) -> Result<PointConfig> {
    if code.is_empty() {
        return Err(Error::EmptyShortening);
    }
    let l = code.length;
    if l < 2 {
        return Err(Error::InvalidConfig("cube embedding needs length >= 2".into()));
    }
    let s = 1.0 / (l as f64).sqrt();
    let mut coords = Vec::with_capacity(l * code.len());
    for &w in &code.words {
        coords.extend((0..l).map(|k| if w >> k & 1 == 1 { -s } else { s }));
    }
    PointConfig::from_flat(l, coords)
}

/// Multiplication in `F_8 = F_2[x]/(x^3 + x + 1)`.
fn f8_mul(a: u8, b: u8) -> u8 {
    let mut r: u16 = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= (a as u16) << i;
        }
    }
    for i in [4, 3] {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r as u8
}

/// The 64-point code in `R^14` from its Gram matrix over `F_8^2`; point
/// `8 x1 + x2` corresponds to `(x1, x2)`.
pub fn build_64_in_14_gram() -> PointConfig {
    let g = DMatrix::from_fn(64, 64, |p, q| {
        let (x1, x2) = ((p / 8) as u8, (p % 8) as u8);
        let (y1, y2) = ((q / 8) as u8, (q % 8) as u8);
        if p == q {
            1.0
        } else if x1 == y1 {
            -1.0 / 7.0
        } else {
            let s = x1 ^ y1;
            let t = x2 ^ y2;
            if t == f8_mul(f8_mul(s, s), s) || t == f8_mul(f8_mul(x1, y1), s) {
                -3.0 / 7.0
            } else {
                1.0 / 7.0
            }
        }
    });
    let gram = GramMatrix::new(g).expect("table rule is symmetric");
    realize_from_gram(&gram, 14).expect("64-point Gram matrix has rank 14")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        // x * x^2 = x^3 = x + 1
        assert_eq!(f8_mul(2, 4), 3);
        for a in 1..8u8 {
            assert!((1..8u8).any(|b| f8_mul(a, b) == 1));
            assert_eq!(f8_mul(a, 1), a);
        }
    }

    #[test]
    fn nordstrom_robinson_parameters() {
        let nr = build_nordstrom_robinson();
        assert_eq!((nr.length(), nr.len(), nr.min_distance()), (16, 256, 6));
        let once = shorten(&nr, 0, false).unwrap();
        assert_eq!((once.length(), once.len(), once.min_distance()), (15, 128, 6));
        let twice = shorten(&once, 0, false).unwrap();
        assert_eq!((twice.length(), twice.len(), twice.min_distance()), (14, 64, 6));
        let other = shorten(&shorten(&nr, 5, true).unwrap(), 9, false).unwrap();
        assert_eq!((other.len(), other.min_distance()), (64, 6));
    }

    #[test]
    fn shorten_errors() {
        let c = BinaryCode::new(3, vec![0b000, 0b011]).unwrap();
        assert_eq!(shorten(&c, 2, true), Err(Error::EmptyShortening));
        assert!(shorten(&c, 3, false).is_err());
        assert!(BinaryCode::new(3, vec![0b1000]).is_err());
    }

    #[test]
    fn cube_embedding_distances() {
        let code = shorten(&shorten(&build_nordstrom_robinson(), 0, false).unwrap(), 0, false).unwrap();
        let c = cube_embed(&code).unwrap();
        for i in 0..code.len() {
            for j in i + 1..code.len() {
                let h = (code.words()[i] ^ code.words()[j]).count_ones() as f64;
                assert!((c.squared_distance(i, j) - 4.0 * h / 14.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gram64_inner_products() {
        let c = build_64_in_14_gram();
        assert_eq!((c.dim(), c.len()), (14, 64));
        for i in 0..64 {
            for j in i + 1..64 {
                let t = c.inner(i, j);
                assert!([-3.0, -1.0, 1.0].iter().any(|k| (t - k / 7.0).abs() < 1e-9), "{t}");
            }
        }
    }
}
