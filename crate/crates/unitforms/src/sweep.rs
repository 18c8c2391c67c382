//! Seeded random consistency sweeps over connected quivers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use unitforms_core::coxeter::{
    coxeter_matrix, coxeter_matrix_of_quiver, inverse_quiver, inverse_via_gram, inverse_via_recursion,
    triangular_inverse_identity,
};
use unitforms_core::enumerate::random_small_quiver;
use unitforms_core::{realize_as_quiver, Quiver};

use crate::formats::QuiverDoc;

/// Identity checks on one quiver; returns the names of the failed ones.
pub fn check_quiver(q: &Quiver) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let Ok(form) = q.unit_form() else { return vec!["unit form"] };
    let walk = inverse_quiver(q).ok();
    if walk.is_none() || walk != inverse_via_gram(q).ok() || walk != inverse_via_recursion(q).ok() {
        failed.push("inverse routes");
    }
    if !matches!(triangular_inverse_identity(q), Ok(true)) {
        failed.push("triangular inverse identity");
    }
    if coxeter_matrix_of_quiver(q).ok() != Some(coxeter_matrix(&form)) {
        failed.push("coxeter routes");
    }
    if q.corank().ok() != Some(form.corank()) {
        failed.push("corank formula");
    }
    match realize_as_quiver(&form) {
        Ok(r) if r.quiver.unit_form().ok().as_ref() == Some(&form) => {}
        _ => failed.push("realization round trip"),
    }
    failed
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub sample: usize,
    pub quiver: QuiverDoc,
    pub checks: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub samples: usize,
    pub max_arrows: usize,
    pub failures: Vec<SweepFailure>,
    pub ok: bool,
}

/// Quiver for sample `index`; independent of how samples are split over jobs.
pub fn sample_quiver(seed: u64, index: usize, max_arrows: usize) -> Quiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut pick = |n: usize| rng.gen_range(0..n);
    random_small_quiver(max_arrows, &mut pick)
}

pub fn random_sweep(seed: u64, samples: usize, max_arrows: usize, jobs: usize) -> SweepReport {
    let jobs = jobs.clamp(1, samples.max(1));
    let mut failures: Vec<SweepFailure> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|job| {
                scope.spawn(move || {
                    (job..samples)
                        .step_by(jobs)
                        .filter_map(|index| {
                            let q = sample_quiver(seed, index, max_arrows);
                            let checks = check_quiver(&q);
                            (!checks.is_empty()).then(|| SweepFailure { sample: index, quiver: QuiverDoc::from_quiver(&q), checks })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    failures.sort_by_key(|f| f.sample);
    let ok = failures.is_empty();
    SweepReport { seed, samples, max_arrows, failures, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_do_not_depend_on_jobs() {
        assert_eq!(sample_quiver(3, 7, 6), sample_quiver(3, 7, 6));
        let one = random_sweep(11, 40, 6, 1);
        let three = random_sweep(11, 40, 6, 3);
        assert!(one.ok && three.ok);
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&three).unwrap());
    }
}
