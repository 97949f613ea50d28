use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::homology::{reduced_betti, BettiVector};
use crate::recognition::{classify_homology, is_normal_pseudomanifold, Classification, PseudomanifoldReport};
use crate::sigma_mu::{mu_vector, sigma_vector, RationalVector};
use crate::stanley_reisner::{graded_betti, wlp_test, GradedBettiTable, WlpOutcome};
use crate::{FieldSpec, RelativeComplex, SimplicialComplex, Vertex};

use super::CheckOptions;

type Cell<T> = OnceLock<Result<T>>;
/// Keyed by (prime, seed, trials).
type WlpCache<T> = Mutex<BTreeMap<(u64, u64, usize), Result<T>>>;

fn cached<T: Clone>(cell: &Cell<T>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    cell.get_or_init(f).clone()
}

/// A complex together with lazily computed invariants shared by all checks.
pub struct Analysis {
    pub delta: SimplicialComplex,
    /// Subcomplex supplied by the caller for checks on general pairs.
    pub sub: Option<SimplicialComplex>,
    pub field: FieldSpec,
    pub input: String,
    pub seed: Option<u64>,
    pseudomanifold: Cell<PseudomanifoldReport>,
    classification: Cell<Classification>,
    boundary_pair: Cell<RelativeComplex>,
    betti_pair: Cell<BettiVector>,
    betti_abs: Cell<BettiVector>,
    sigma_pair: Cell<RationalVector>,
    sigma_abs: Cell<RationalVector>,
    mu_pair: Cell<RationalVector>,
    table_pair: Cell<GradedBettiTable>,
    wlp: WlpCache<WlpOutcome>,
    link_wlp: WlpCache<Vec<(Vertex, WlpOutcome)>>,
}

impl Analysis {
    pub fn new(delta: SimplicialComplex, field: FieldSpec, input: impl Into<String>) -> Self {
        Self {
            delta,
            sub: None,
            field,
            input: input.into(),
            seed: None,
            pseudomanifold: OnceLock::new(),
            classification: OnceLock::new(),
            boundary_pair: OnceLock::new(),
            betti_pair: OnceLock::new(),
            betti_abs: OnceLock::new(),
            sigma_pair: OnceLock::new(),
            sigma_abs: OnceLock::new(),
            mu_pair: OnceLock::new(),
            table_pair: OnceLock::new(),
            wlp: Mutex::new(BTreeMap::new()),
            link_wlp: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_sub(mut self, sub: SimplicialComplex) -> Self {
        self.sub = Some(sub);
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn dim(&self) -> Result<i32> {
        self.delta.dimension()
    }

    pub fn pseudomanifold(&self) -> Result<PseudomanifoldReport> {
        cached(&self.pseudomanifold, || is_normal_pseudomanifold(&self.delta))
    }

    pub fn classification(&self) -> Result<Classification> {
        cached(&self.classification, || classify_homology(&self.delta, self.field))
    }

    /// `(Δ, ∂Δ)` with the ridge boundary; equals `Δ` when closed.
    pub fn boundary_pair(&self) -> Result<RelativeComplex> {
        cached(&self.boundary_pair, || {
            let pm = self.pseudomanifold()?;
            if pm.kind == crate::recognition::PseudomanifoldKind::No {
                return Err(Error::Hypothesis(format!(
                    "not a normal pseudomanifold: {}",
                    pm.reason.unwrap_or_default()
                )));
            }
            RelativeComplex::new(self.delta.clone(), pm.boundary.with_ground(self.delta.ground_set()))
        })
    }

    /// The caller's pair if given, else the boundary pair when defined, else `Δ`.
    pub fn general_pair(&self) -> Result<RelativeComplex> {
        if let Some(sub) = &self.sub {
            return RelativeComplex::new(self.delta.clone(), sub.with_ground(self.delta.ground_set()));
        }
        Ok(self
            .boundary_pair()
            .unwrap_or_else(|_| RelativeComplex::absolute(self.delta.clone())))
    }

    pub fn boundary(&self) -> Result<SimplicialComplex> {
        Ok(self.pseudomanifold()?.boundary)
    }

    pub fn betti_pair(&self) -> Result<BettiVector> {
        cached(&self.betti_pair, || reduced_betti(&self.boundary_pair()?, self.field))
    }

    pub fn betti_abs(&self) -> Result<BettiVector> {
        cached(&self.betti_abs, || {
            reduced_betti(&RelativeComplex::absolute(self.delta.clone()), self.field)
        })
    }

    pub fn sigma_pair(&self) -> Result<RationalVector> {
        cached(&self.sigma_pair, || sigma_vector(&self.boundary_pair()?, self.field))
    }

    pub fn sigma_abs(&self) -> Result<RationalVector> {
        cached(&self.sigma_abs, || {
            sigma_vector(&RelativeComplex::absolute(self.delta.clone()), self.field)
        })
    }

    pub fn mu_pair(&self) -> Result<RationalVector> {
        cached(&self.mu_pair, || mu_vector(&self.boundary_pair()?, self.field))
    }

    pub fn table_pair(&self) -> Result<GradedBettiTable> {
        cached(&self.table_pair, || graded_betti(&self.boundary_pair()?, self.field))
    }

    pub fn wlp(&self, options: &CheckOptions) -> Result<WlpOutcome> {
        let key = (options.prime, options.seed, options.wlp_trials);
        if let Some(r) = self.wlp.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = wlp_test(&self.delta, options.prime, options.wlp_trials, options.seed);
        self.wlp.lock().unwrap().insert(key, r.clone());
        r
    }

    /// WLP outcome of every vertex link, in vertex order.
    pub fn link_wlp(&self, options: &CheckOptions) -> Result<Vec<(Vertex, WlpOutcome)>> {
        let key = (options.prime, options.seed, options.wlp_trials);
        if let Some(r) = self.link_wlp.lock().unwrap().get(&key) {
            return r.clone();
        }
        let r = self
            .delta
            .vertex_support()
            .iter()
            .map(|v| {
                let lk = self.delta.link(&crate::VertexSet::singleton(v));
                Ok((v, wlp_test(&lk, options.prime, options.wlp_trials, options.seed)?))
            })
            .collect::<Result<Vec<_>>>();
        self.link_wlp.lock().unwrap().insert(key, r.clone());
        r
    }
}
