use std::cmp::Ordering as CmpOrdering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::pauli::{PauliOperator, PauliTerm};
use crate::simulator::{expectation, trotter_energy, trotter_evolution, StateVector, TrotterPlan};
use crate::{Error, Result};

/// Generator behind [`random_orderings`], recorded alongside results.
pub const PRNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9) seeded by seed_from_u64(seed), stream = ordering index, Fisher-Yates shuffle";

/// One term ordering and, after a scan, its Trotter errors.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingRecord {
    pub id: String,
    pub seed: Option<u64>,
    /// Indices into `PauliOperator::non_identity_terms`, in application order.
    pub permutation: Vec<usize>,
    pub results: Vec<StepResult>,
}

impl OrderingRecord {
    pub fn terms(&self, h: &PauliOperator) -> Vec<PauliTerm> {
        let base = h.non_identity_terms();
        self.permutation.iter().map(|&k| base[k].clone()).collect()
    }

    /// Error at the smallest scanned step count.
    pub fn first_error(&self) -> Option<f64> {
        self.results.first().map(|r| r.abs_error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult {
    pub steps: usize,
    pub energy: f64,
    pub abs_error: f64,
}

/// Magnitudes that round to the same multiple of this count as equal.
const MAGNITUDE_QUANTUM: f64 = 1e-10;

fn by_magnitude(a: &(usize, &PauliTerm), b: &(usize, &PauliTerm)) -> CmpOrdering {
    let key = |t: &PauliTerm| (t.coefficient.norm() / MAGNITUDE_QUANTUM).round() as i64;
    key(a.1)
        .cmp(&key(b.1))
        .then_with(|| a.1.string.letters().cmp(&b.1.string.letters()))
}

fn magnitude_permutation(h: &PauliOperator) -> Vec<usize> {
    let terms = h.non_identity_terms();
    let (mut z, mut xy): (Vec<_>, Vec<_>) = terms.iter().enumerate().partition(|(_, t)| t.string.is_z_only());
    z.sort_by(by_magnitude);
    xy.sort_by(by_magnitude);
    let mut out = Vec::with_capacity(terms.len());
    let mut zs = z.into_iter();
    for x in xy {
        if let Some(t) = zs.next() {
            out.push(t.0);
        }
        out.push(x.0);
    }
    out.extend(zs.map(|t| t.0));
    out
}

/// Z-only and X/Y-bearing terms each sorted by ascending `|c|`, then
/// interleaved starting with a Z-only term; leftover Z-only terms go last.
/// The identity term is left out.
pub fn magnitude_ordering(h: &PauliOperator) -> Vec<PauliTerm> {
    let terms = h.non_identity_terms();
    magnitude_permutation(h).into_iter().map(|k| terms[k].clone()).collect()
}

pub fn magnitude_record(h: &PauliOperator) -> OrderingRecord {
    OrderingRecord {
        id: "magnitude".into(),
        seed: None,
        permutation: magnitude_permutation(h),
        results: Vec::new(),
    }
}

/// `count` uniformly random orderings of the non-identity terms. Ordering
/// `k` depends only on `(seed, k)`.
pub fn random_orderings(h: &PauliOperator, count: usize, seed: u64) -> Vec<OrderingRecord> {
    let len = h.non_identity_terms().len();
    (0..count)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut permutation: Vec<usize> = (0..len).collect();
            permutation.shuffle(&mut rng);
            OrderingRecord {
                id: format!("random-{k}"),
                seed: Some(seed),
                permutation,
                results: Vec::new(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSettings {
    pub time: f64,
    pub order: u8,
    pub steps: Vec<usize>,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            time: 1.0,
            order: 1,
            steps: (1..=11).collect(),
        }
    }
}

fn evaluate(
    terms: Vec<PauliTerm>,
    settings: &ScanSettings,
    reference: &StateVector,
    offset: f64,
    e0: f64,
) -> Result<Vec<StepResult>> {
    settings
        .steps
        .iter()
        .map(|&n| {
            let plan = TrotterPlan::new(terms.clone(), settings.order, n, settings.time)?;
            let u = trotter_evolution(&plan)?;
            let energy = trotter_energy(&u, settings.time, reference)? + offset;
            Ok(StepResult {
                steps: n,
                energy,
                abs_error: (energy - e0).abs(),
            })
        })
        .collect()
}

/// Trotter energy error of every ordering at every step count, against the
/// energy `<ref|H|ref>` of `reference`. The identity term enters as a phase
/// offset. Records come back sorted by their error at the first step count;
/// evaluation runs in parallel but the result does not depend on it.
pub fn ordering_scan(
    h: &PauliOperator,
    orderings: &[OrderingRecord],
    settings: &ScanSettings,
    reference: &StateVector,
) -> Result<Vec<OrderingRecord>> {
    if settings.steps.is_empty() || settings.steps.contains(&0) {
        return Err(Error::Validation("step counts must be positive".into()));
    }
    let len = h.non_identity_terms().len();
    for o in orderings {
        let mut seen = o.permutation.clone();
        seen.sort_unstable();
        if seen != (0..len).collect::<Vec<_>>() {
            return Err(Error::Validation(format!(
                "ordering {} is not a permutation of the {len} non-identity terms",
                o.id
            )));
        }
    }
    let e0 = expectation(h, reference)?.re;
    let offset = h.identity_coefficient().re;
    let mut records: Vec<OrderingRecord> = orderings
        .par_iter()
        .map(|o| {
            let results = evaluate(o.terms(h), settings, reference, offset, e0)?;
            Ok(OrderingRecord {
                results,
                ..o.clone()
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by(|a, b| {
        let ea = a.first_error().unwrap_or(f64::INFINITY);
        let eb = b.first_error().unwrap_or(f64::INFINITY);
        ea.total_cmp(&eb)
    });
    Ok(records)
}

/// Smallest error at each scanned step count over all records.
pub fn best_curve(records: &[OrderingRecord]) -> Vec<StepResult> {
    let Some(first) = records.first() else {
        return Vec::new();
    };
    (0..first.results.len())
        .map(|k| {
            records
                .iter()
                .map(|r| r.results[k])
                .min_by(|a, b| a.abs_error.total_cmp(&b.abs_error))
                .expect("non-empty")
        })
        .collect()
}
