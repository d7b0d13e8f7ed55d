//! Explicit degree, sample-size, height and prime budgets.

use num_bigint::BigUint;
use num_traits::One;

/// Constant in front of the output height budget.
pub const DEFAULT_HEIGHT_CONSTANT: u64 = 16;
/// Constant in front of the lucky-prime height budget.
pub const DEFAULT_PRIME_CONSTANT: u64 = 64;

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u64 {
    assert!(x >= 1);
    (64 - (x - 1).leading_zeros()) as u64
}

/// `D = (2n - r + 4) r (delta^3 + 2 delta^2)`.
pub fn degree_budget(n: u64, r: u64, delta: &BigUint) -> BigUint {
    assert!(n >= r && r >= 1, "need n >= r >= 1");
    let delta2 = delta * delta;
    BigUint::from((2 * n - r + 4) * r) * (&delta2 * delta + delta2 * 2u32)
}

/// Sample-set sizes `(a, b) = (8D, 9D)` for the coordinate change and the
/// lifting point.
pub fn sample_bounds(d: &BigUint) -> (BigUint, BigUint) {
    (d * 8u32, d * 9u32)
}

/// Height budget of the stage-`s` representation,
/// `C n d^{s-1} (h + r d) (1 + ceil(log2(n+2))) (1 + ceil(log2(d+1)))`.
pub fn height_budget(n: u64, d: u64, h: u64, r: u64, s: u64, constant: u64) -> BigUint {
    assert!(s >= 1);
    BigUint::from(constant)
        * n
        * num_traits::pow(BigUint::from(d), (s - 1) as usize)
        * (h + r * d)
        * (1 + ceil_log2(n + 2))
        * (1 + ceil_log2(d + 1))
}

/// Lucky-prime budget `𝔥` and the search bound `B = 12 𝔥`, where `𝔥` is the
/// larger of `C n^3 d^{8r-7} (h + r d) (1 + ceil(log2(n+2)))^3` and
/// `60 n^2 d (d^r)^4`.
pub fn prime_budget(n: u64, d: u64, h: u64, r: u64, constant: u64) -> (BigUint, BigUint) {
    assert!(r >= 1);
    let log = 1 + ceil_log2(n + 2);
    let main = BigUint::from(constant)
        * n.pow(3)
        * num_traits::pow(BigUint::from(d), (8 * r - 7) as usize)
        * (h + r * d)
        * log.pow(3);
    let bezout = num_traits::pow(BigUint::from(d), r as usize);
    let floor = BigUint::from(60 * n * n * d) * num_traits::pow(bezout, 4);
    let budget = main.max(floor);
    let bound = &budget * 12u32;
    (budget, bound)
}

/// All budgets for one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSet {
    pub n: u64,
    pub r: u64,
    pub d: u64,
    pub h: u64,
    /// `d_1 ... d_s` for `s = 1..r`.
    pub bezout: Vec<BigUint>,
    pub degree_budget: BigUint,
    pub a: BigUint,
    pub b: BigUint,
    /// Height budgets for `s = 1..r`.
    pub heights: Vec<BigUint>,
    pub prime_budget: BigUint,
    pub prime_bound: BigUint,
}

impl BoundSet {
    pub fn new(n: u64, degrees: &[u32], h: u64, height_constant: u64, prime_constant: u64) -> Self {
        let r = degrees.len() as u64;
        let d = degrees.iter().copied().max().unwrap_or(1).max(1) as u64;
        let h = h.max(1);
        let mut bezout = Vec::with_capacity(degrees.len());
        let mut acc = BigUint::one();
        for &dj in degrees {
            acc *= dj;
            bezout.push(acc.clone());
        }
        let degree_budget = degree_budget(n, r, bezout.last().unwrap());
        let (a, b) = sample_bounds(&degree_budget);
        let heights = (1..=r)
            .map(|s| height_budget(n, d, h, r, s, height_constant))
            .collect();
        let (prime_budget, prime_bound) = prime_budget(n, d, h, r, prime_constant);
        BoundSet {
            n,
            r,
            d,
            h,
            bezout,
            degree_budget,
            a,
            b,
            heights,
            prime_budget,
            prime_bound,
        }
    }

    /// Bits of `p`-adic precision needed in provable mode: `2 eta_r + 2`.
    pub fn lifting_bits(&self) -> BigUint {
        self.heights.last().unwrap() * 2u32 + 2u32
    }
}
