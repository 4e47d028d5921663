//! The product replacement random walk.
//!
//! A chain holds a generating `k`-tuple and at every step applies one move
//! drawn uniformly from the policy's move set: the `4k(k-1)` R/L moves for
//! the plain policy, plus P and I moves for the extended policy. The output
//! of a run is a uniformly chosen coordinate of the current tuple.
//!
//! Randomness is ChaCha8 seeded from a 64-bit seed; chain `c` uses stream
//! `c`, so parallel chains are independent and reproducible.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementId, FiniteGroupTable};
use crate::pragraph::{all_moves, enumerate_generating_tuples, GenTuple, NielsenMove};

/// Attempts allowed when rejection-sampling a generating start tuple.
pub const START_ATTEMPTS: usize = 10_000;

/// Steps between generation checks of the walk state.
const CHECK_INTERVAL: u64 = if cfg!(debug_assertions) { 1 } else { 1024 };

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovePolicy {
    /// R and L moves: the walk on `X_k`.
    #[default]
    Plain,
    /// R, L, P and I moves: the walk on `X~_k`.
    Extended,
}

impl MovePolicy {
    pub fn moves(self, k: usize) -> Vec<NielsenMove> {
        all_moves(k, self == MovePolicy::Extended)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub k: usize,
    pub burn_in: u64,
    pub seed: u64,
    pub policy: MovePolicy,
    /// Steps between consecutive outputs of one chain after burn-in.
    pub thinning: u64,
}

impl WalkConfig {
    pub fn new(k: usize, burn_in: u64, seed: u64) -> WalkConfig {
        WalkConfig {
            k,
            burn_in,
            seed,
            policy: MovePolicy::Plain,
            thinning: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Precondition("walk needs k >= 1".into()));
        }
        if self.thinning == 0 {
            return Err(Error::Precondition("thinning must be positive".into()));
        }
        Ok(())
    }
}

/// Histogram of outputs and distance to the uniform distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkStats {
    pub sample_count: u64,
    /// Total walk steps taken to produce the samples (0 if unknown).
    pub steps: u64,
    /// Count per element id.
    pub histogram: Vec<u64>,
    pub tv_to_uniform: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
}

/// One step of the walk from `t`, in place. With `k = 1` there are no
/// moves and the tuple stays put.
pub fn pra_step_in_place<R: Rng + ?Sized>(
    g: &FiniteGroupTable,
    t: &mut [ElementId],
    moves: &[NielsenMove],
    rng: &mut R,
) -> Option<NielsenMove> {
    if moves.is_empty() {
        return None;
    }
    let m = moves[rng.random_range(0..moves.len())];
    m.apply_in_place(g, t);
    Some(m)
}

pub fn pra_step<R: Rng + ?Sized>(
    g: &FiniteGroupTable,
    t: &GenTuple,
    policy: MovePolicy,
    rng: &mut R,
) -> GenTuple {
    let mut ids = t.ids().to_vec();
    pra_step_in_place(g, &mut ids, &policy.moves(t.k()), rng);
    GenTuple::new(ids)
}

/// Uniform random tuples until one generates.
pub fn random_start<R: Rng + ?Sized>(g: &FiniteGroupTable, k: usize, rng: &mut R) -> Result<Vec<ElementId>> {
    for _ in 0..START_ATTEMPTS {
        let t: Vec<ElementId> = (0..k).map(|_| g.random_element(rng)).collect();
        if g.is_generating(&t) {
            return Ok(t);
        }
    }
    Err(Error::NoGeneratingTuple {
        k,
        attempts: START_ATTEMPTS,
    })
}

/// A single product replacement chain.
pub struct Chain<'g> {
    g: &'g FiniteGroupTable,
    moves: Vec<NielsenMove>,
    state: Vec<ElementId>,
    rng: ChaCha8Rng,
    steps: u64,
}

impl<'g> Chain<'g> {
    /// Chain on stream `stream` of the configured seed, started from a
    /// random generating tuple (or `start`) and run through burn-in.
    pub fn new(g: &'g FiniteGroupTable, cfg: &WalkConfig, stream: u64, start: Option<&[ElementId]>) -> Result<Chain<'g>> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        let state = match start {
            Some(t) => {
                if t.len() != cfg.k {
                    return Err(Error::DimensionMismatch(format!(
                        "start tuple has length {}, expected {}",
                        t.len(),
                        cfg.k
                    )));
                }
                if t.iter().any(|&x| x as usize >= g.order()) || !g.is_generating(t) {
                    return Err(Error::NotGenerating(format!("{t:?}")));
                }
                t.to_vec()
            }
            None => random_start(g, cfg.k, &mut rng)?,
        };
        let mut chain = Chain {
            g,
            moves: cfg.policy.moves(cfg.k),
            state,
            rng,
            steps: 0,
        };
        chain.run(cfg.burn_in);
        Ok(chain)
    }

    pub fn step(&mut self) -> Option<NielsenMove> {
        let m = pra_step_in_place(self.g, &mut self.state, &self.moves, &mut self.rng);
        self.steps += 1;
        if self.steps.is_multiple_of(CHECK_INTERVAL) {
            assert!(self.g.is_generating(&self.state), "walk left the generating tuples");
        }
        m
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn state(&self) -> &[ElementId] {
        &self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// A uniformly chosen coordinate of the current tuple.
    pub fn output(&mut self) -> ElementId {
        self.state[self.rng.random_range(0..self.state.len())]
    }
}

/// Burn-in from a random start, then one output.
pub fn sample_element(g: &FiniteGroupTable, cfg: &WalkConfig) -> Result<ElementId> {
    Ok(Chain::new(g, cfg, 0, None)?.output())
}

/// `count` outputs of one chain, taken every `thinning` steps after burn-in.
/// Returns the samples and the number of steps walked.
pub fn sample_many(g: &FiniteGroupTable, cfg: &WalkConfig, count: usize) -> Result<(Vec<ElementId>, u64)> {
    let mut chain = Chain::new(g, cfg, 0, None)?;
    let samples = (0..count)
        .map(|_| {
            chain.run(cfg.thinning);
            chain.output()
        })
        .collect();
    Ok((samples, chain.steps()))
}

/// Independent chains in parallel, chain `c` on stream `c`; samples are
/// concatenated in chain order.
pub fn sample_chains(
    g: &FiniteGroupTable,
    cfg: &WalkConfig,
    chains: usize,
    per_chain: usize,
) -> Result<(Vec<ElementId>, u64)> {
    let runs: Vec<(Vec<ElementId>, u64)> = (0..chains as u64)
        .into_par_iter()
        .map(|c| {
            let mut chain = Chain::new(g, cfg, c, None)?;
            let samples = (0..per_chain)
                .map(|_| {
                    chain.run(cfg.thinning);
                    chain.output()
                })
                .collect();
            Ok((samples, chain.steps()))
        })
        .collect::<Result<_>>()?;
    let steps = runs.iter().map(|r| r.1).sum();
    Ok((runs.into_iter().flat_map(|r| r.0).collect(), steps))
}

/// Total variation distance between two distributions on the same set.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

pub fn uniformity_report(samples: &[ElementId], g: &FiniteGroupTable) -> Result<WalkStats> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = g.order();
    let mut histogram = vec![0u64; n];
    for &x in samples {
        let slot = histogram
            .get_mut(x as usize)
            .ok_or_else(|| Error::InvalidElement(format!("element id {x} out of range")))?;
        *slot += 1;
    }
    let total = samples.len() as f64;
    let expected = total / n as f64;
    let tv = 0.5
        * histogram
            .iter()
            .map(|&c| (c as f64 / total - 1.0 / n as f64).abs())
            .sum::<f64>();
    let chi_square = histogram
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok(WalkStats {
        sample_count: samples.len() as u64,
        steps: 0,
        histogram,
        tv_to_uniform: tv,
        chi_square,
        degrees_of_freedom: n.saturating_sub(1),
    })
}

/// Exact law of a uniform coordinate of a uniform generating `k`-tuple.
/// This is the stationary output law of the walk when its graph is
/// connected.
pub fn stationary_output_distribution(g: &FiniteGroupTable, k: usize) -> Result<Vec<f64>> {
    let mut counts = vec![0u64; g.order()];
    let mut total = 0u64;
    for t in enumerate_generating_tuples(g, k)? {
        for &x in t.ids() {
            counts[x as usize] += 1;
        }
        total += k as u64;
    }
    if total == 0 {
        return Err(Error::EmptySamples);
    }
    Ok(counts.iter().map(|&c| c as f64 / total as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn step_examples() {
        let g = build_group("alt:5").unwrap();
        assert_eq!(MovePolicy::Plain.moves(2).len(), 8);
        assert_eq!(MovePolicy::Plain.moves(3).len(), 24);
        let x = 7;
        let mut t = vec![x, g.identity()];
        NielsenMove::r(0, 1, crate::pragraph::Sign::Plus).apply_in_place(&g, &mut t);
        assert_eq!(t, vec![x, g.identity()]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_start(&g, 3, &mut rng).unwrap();
        let u = pra_step(&g, &GenTuple::new(t), MovePolicy::Plain, &mut rng);
        assert!(u.is_generating(&g));
    }

    #[test]
    fn trivial_and_small_groups() {
        let g = build_group("ab:1").unwrap();
        for seed in 0..5 {
            assert_eq!(sample_element(&g, &WalkConfig::new(1, 10, seed)).unwrap(), 0);
        }
        let g = build_group("ab:2").unwrap();
        for burn in [0, 1, 7, 100] {
            assert!(sample_element(&g, &WalkConfig::new(2, burn, 3)).unwrap() < 2);
        }
    }

    #[test]
    fn no_start_tuple() {
        let g = build_group("ab:2,2").unwrap();
        assert!(matches!(
            sample_element(&g, &WalkConfig::new(1, 0, 0)),
            Err(Error::NoGeneratingTuple { k: 1, .. })
        ));
    }

    #[test]
    fn report_examples() {
        let g = build_group("ab:2").unwrap();
        let s = uniformity_report(&[0; 10], &g).unwrap();
        assert!((s.tv_to_uniform - 0.5).abs() < 1e-12);
        assert_eq!(s.histogram, vec![10, 0]);
        let s = uniformity_report(&[0, 1, 1, 0], &g).unwrap();
        assert_eq!(s.tv_to_uniform, 0.0);
        assert_eq!(s.chi_square, 0.0);
        let g = build_group("alt:5").unwrap();
        let s = uniformity_report(&[5], &g).unwrap();
        assert!((s.tv_to_uniform - 59.0 / 60.0).abs() < 1e-12);
        assert!(matches!(uniformity_report(&[], &g), Err(Error::EmptySamples)));
    }

    #[test]
    fn determinism() {
        let g = build_group("sym:4").unwrap();
        let cfg = WalkConfig::new(3, 200, 99);
        let a = sample_many(&g, &cfg, 500).unwrap();
        let b = sample_many(&g, &cfg, 500).unwrap();
        assert_eq!(a, b);
        let c = sample_many(&g, &WalkConfig::new(3, 200, 100), 500).unwrap();
        assert_ne!(a.0, c.0);
        let p = sample_chains(&g, &cfg, 4, 50).unwrap();
        assert_eq!(p, sample_chains(&g, &cfg, 4, 50).unwrap());
        assert_eq!(p.0[..50], a.0[..50]);
    }

    #[test]
    fn stationary_law_is_a_distribution() {
        let g = build_group("sym:3").unwrap();
        let p = stationary_output_distribution(&g, 2).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(p[0], 0.0);
    }
}
