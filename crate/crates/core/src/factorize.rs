//! The prime-factorisation worklist: repeatedly simplify, search for a quad
//! vertex 2-sphere meeting the loop in 0 or 2 points, crush it, and certify
//! the terminal prime summands through their knot groups. Emits a
//! machine-checkable certificate and verifies certificates back.

use crate::crush::{certify_quad_vertex, crush, IdealContent};
use crate::loops::EdgeIdeal;
use crate::normal::{loop_weight, NormalSurface, SphereSearch};
use crate::pi1::{NontrivialityVerdict, Verdict, VerdictConfig, Witness};
use crate::simplify::{randomize, simplify, SimplifyConfig};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub enumeration_budget: u64,
    pub randomize_heat: usize,
    pub rep_degree_cap: usize,
    pub unknown_policy: UnknownPolicy,
    pub parallel: bool,
    pub disc_cap: u64,
    pub simplify: SimplifyConfig,
    /// Budget-escalation rounds before the enumeration runs unbounded.
    pub search_rounds: usize,
    /// Hard cap on worklist iterations (resource guard).
    pub max_iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknownPolicy {
    Abort,
    Flag,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            enumeration_budget: 2_000_000,
            randomize_heat: 24,
            rep_degree_cap: 6,
            unknown_policy: UnknownPolicy::Abort,
            parallel: false,
            disc_cap: 10_000_000,
            simplify: SimplifyConfig::default(),
            search_rounds: 4,
            max_iterations: 4096,
        }
    }
}

#[derive(Debug, Error)]
pub enum FactorizeError {
    #[error("nontriviality verdict UNKNOWN for a terminal summand (aborting per policy)")]
    UnknownAborted(Box<FactorisationResult>),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error(transparent)]
    Normal(#[from] crate::normal::NormalError),
    #[error(transparent)]
    Crush(#[from] crate::crush::CrushError),
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub edge_ideal: EdgeIdeal,
    pub signature: String,
    pub nontriviality: NontrivialityVerdict,
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub crushes: usize,
    pub enumerations: usize,
    pub wall_ms: u128,
}

#[derive(Clone, Debug)]
pub struct FactorisationResult {
    pub summands: Vec<Summand>,
    pub unknown_count: usize,
    pub stats: Stats,
}

/// A deterministic, replayable preparation applied to one component of the
/// union between crushes.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Prep {
    pub component: usize,
    pub op: PrepOp,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum PrepOp {
    Simplify { seed: u64 },
    Randomize { heat: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertStep {
    /// Preparations since the previous step, in order.
    pub preps: Vec<Prep>,
    /// Marked signature of the full disjoint union after the preparations.
    pub signature_before: String,
    pub crushed_component: usize,
    /// Quad coordinates of the crushed sphere (decimal strings).
    pub sphere: Vec<String>,
    pub loop_weight: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TerminalWitness {
    pub component: usize,
    pub signature: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorisationCertificate {
    /// Marked signature of the freshly built edge-ideal triangulation.
    pub initial_signature: String,
    pub chain: Vec<CertStep>,
    /// Preparations applied after the last crush.
    pub terminal_preps: Vec<Prep>,
    /// Marked signature of the terminal disjoint union of summands.
    pub terminal_signature: String,
    pub terminal: Vec<TerminalWitness>,
    /// Configuration knobs the verifier needs for replay.
    pub rep_degree_cap: usize,
}

/// Marked signature of a disjoint union of edge-ideal triangulations.
pub fn union_signature(components: &[EdgeIdeal]) -> String {
    if components.is_empty() {
        return "tri0".to_string();
    }
    let mut tri = crate::tri::Triangulation::empty();
    let mut offsets = Vec::new();
    for c in components {
        offsets.push(tri.tet_count());
        tri = tri.disjoint_union(&c.tri);
    }
    let skel = tri.skeleton();
    let mut marks = BTreeSet::new();
    for (c, off) in components.iter().zip(&offsets) {
        let cskel = c.tri.skeleton();
        for s in &c.knot.steps {
            let emb = cskel.edges[s.edge].embeddings[0];
            marks.insert(skel.edge_class(emb.tet + off, emb.edge));
        }
    }
    crate::isosig::iso_signature(&tri, Some(&marks))
}

struct Engine {
    config: Config,
    state: Vec<EdgeIdeal>,
    /// Components still to process (indices into state).
    pending: std::collections::VecDeque<usize>,
    /// Components finished as prime summands.
    summands: Vec<(usize, NontrivialityVerdict)>,
    prep_log: Vec<Prep>,
    chain: Vec<CertStep>,
    stats: Stats,
    seed_counter: u64,
    unknown_count: usize,
}

impl Engine {
    fn next_seed(&mut self) -> u64 {
        self.seed_counter = self.seed_counter.wrapping_add(1);
        self.config.seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(self.seed_counter)
    }

    fn splice(&mut self, at: usize, replacements: Vec<EdgeIdeal>) {
        let k = replacements.len();
        self.state.splice(at..=at, replacements);
        // Reindex bookkeeping.
        let shift = |idx: usize| -> usize {
            if idx > at {
                idx + k - 1
            } else {
                idx
            }
        };
        self.pending = self.pending.iter().map(|&i| shift(i)).collect();
        for s in self.summands.iter_mut() {
            s.0 = shift(s.0);
        }
        for i in 0..k {
            self.pending.push_back(at + i);
        }
    }
}

/// Runs the factorisation worklist on an edge-ideal triangulation. The input
/// is typically a fresh build from a diagram.
pub fn factorize(
    input: &EdgeIdeal,
    config: &Config,
) -> Result<(FactorisationResult, FactorisationCertificate), FactorizeError> {
    let t0 = std::time::Instant::now();
    let initial_signature = input.marked_signature();
    let mut engine = Engine {
        config: config.clone(),
        state: vec![input.clone()],
        pending: std::collections::VecDeque::from([0usize]),
        summands: Vec::new(),
        prep_log: Vec::new(),
        chain: Vec::new(),
        stats: Stats::default(),
        seed_counter: 0,
        unknown_count: 0,
    };
    let mut iterations = 0usize;
    while let Some(idx) = engine.pending.pop_front() {
        iterations += 1;
        if iterations > config.max_iterations {
            return Err(FactorizeError::ResourceCap("worklist iteration cap".into()));
        }
        // Simplify the component.
        let seed = engine.next_seed();
        let simplified = simplify(&engine.state[idx], seed, &config.simplify);
        engine.state[idx] = simplified;
        engine.prep_log.push(Prep { component: idx, op: PrepOp::Simplify { seed } });

        // Search for a crushable sphere, alternating with randomization on
        // budget expiry; the final round is unbounded so a NONE verdict only
        // ever comes from a completed enumeration.
        let mut budget = Some(config.enumeration_budget);
        let rounds = config.search_rounds.max(1);
        let mut search_result: Option<SphereSearch> = None;
        for round in 0..rounds {
            if round + 1 == rounds {
                budget = None;
            }
            engine.stats.enumerations += 1;
            match search_once(&engine.state[idx], budget, config.disc_cap) {
                Ok(res) => {
                    search_result = Some(res);
                    break;
                }
                Err(crate::normal::NormalError::BudgetExhausted) => {
                    let seed = engine.next_seed();
                    let alt = randomize(
                        &engine.state[idx],
                        config.randomize_heat,
                        seed,
                        &config.simplify,
                    );
                    if alt.tet_count() <= engine.state[idx].tet_count() {
                        engine.state[idx] = alt;
                        engine
                            .prep_log
                            .push(Prep { component: idx, op: PrepOp::Randomize { heat: config.randomize_heat, seed } });
                    }
                    budget = budget.map(|b| b.saturating_mul(4));
                }
                Err(other) => return Err(other.into()),
            }
        }
        match search_result.expect("final round is unbounded") {
            SphereSearch::Found(sphere) => {
                let lw = loop_weight(&sphere.standard, &engine.state[idx]);
                let step = CertStep {
                    preps: std::mem::take(&mut engine.prep_log),
                    signature_before: union_signature(&engine.state),
                    crushed_component: idx,
                    sphere: sphere.quad.iter().map(|x| x.to_string()).collect(),
                    loop_weight: u8::try_from(&lw).unwrap_or(0),
                };
                let before_tets = engine.state[idx].tet_count();
                let outcome = crush(&engine.state[idx], &sphere)?;
                engine.stats.crushes += 1;
                let mut replacements = Vec::new();
                let mut total = 0usize;
                for comp in outcome.components {
                    total += comp.tri.tet_count();
                    match comp.ideal {
                        IdealContent::Loop(knot) => {
                            let e = EdgeIdeal { tri: comp.tri, knot };
                            debug_assert!(e.validate().is_ok());
                            replacements.push(e);
                        }
                        IdealContent::NonLoopEdge | IdealContent::None => {
                            // 3-sphere component without an ideal loop: the
                            // corresponding knot piece is trivial. Discarded.
                            debug_assert!(
                                crate::homology::homology_h1(&comp.tri)
                                    .map(|h| h.is_empty())
                                    .unwrap_or(true)
                            );
                        }
                    }
                }
                if total >= before_tets {
                    return Err(FactorizeError::ResourceCap(
                        "crush did not shrink the triangulation".into(),
                    ));
                }
                engine.chain.push(step);
                engine.splice(idx, replacements);
            }
            SphereSearch::None => {
                // Terminal component: decide nontriviality.
                let vc = VerdictConfig {
                    rep_cap: config.rep_degree_cap,
                    ..VerdictConfig::default()
                };
                let verdict = crate::pi1::nontriviality_verdict(&engine.state[idx], &vc);
                match verdict.verdict {
                    Verdict::Trivial => {
                        // Unknotted piece: contributes nothing to the sum. It
                        // stays in the state (so certificate indices remain
                        // stable) but is not recorded as a summand; the
                        // verifier re-certifies it trivial.
                    }
                    Verdict::Nontrivial => {
                        engine.summands.push((idx, verdict));
                    }
                    Verdict::Unknown => {
                        engine.unknown_count += 1;
                        match config.unknown_policy {
                            UnknownPolicy::Flag => {
                                engine.summands.push((idx, verdict));
                            }
                            UnknownPolicy::Abort => {
                                let result = engine.into_result(t0, true);
                                return Err(FactorizeError::UnknownAborted(Box::new(result)));
                            }
                        }
                    }
                }
            }
        }
    }
    let terminal_preps = std::mem::take(&mut engine.prep_log);
    let terminal_signature = union_signature(&engine.state);
    let mut terminal = Vec::new();
    for (idx, verdict) in &engine.summands {
        if let Some(w) = &verdict.witness {
            terminal.push(TerminalWitness {
                component: *idx,
                signature: engine.state[*idx].marked_signature(),
                witness: w.clone(),
            });
        }
    }
    let cert = FactorisationCertificate {
        initial_signature,
        chain: engine.chain.clone(),
        terminal_preps,
        terminal_signature,
        terminal,
        rep_degree_cap: config.rep_degree_cap,
    };
    let result = engine.into_result(t0, false);
    Ok((result, cert))
}

impl Engine {
    fn into_result(self, t0: std::time::Instant, _partial: bool) -> FactorisationResult {
        let mut stats = self.stats;
        stats.wall_ms = t0.elapsed().as_millis();
        let summands = self
            .summands
            .into_iter()
            .map(|(idx, nontriviality)| Summand {
                signature: self.state[idx].marked_signature(),
                edge_ideal: self.state[idx].clone(),
                nontriviality,
            })
            .collect();
        FactorisationResult { summands, unknown_count: self.unknown_count, stats }
    }
}

fn search_once(
    e: &EdgeIdeal,
    budget: Option<u64>,
    disc_cap: u64,
) -> Result<SphereSearch, crate::normal::NormalError> {
    let mut found: Option<NormalSurface> = None;
    let mut inner_err = None;
    crate::normal::enumerate_quad_vertex(&e.tri, budget, |q| {
        match NormalSurface::from_quad(q.to_vec(), &e.tri, disc_cap) {
            Err(err) => {
                inner_err = Some(err);
                false
            }
            Ok(s) => {
                let w = loop_weight(&s.standard, e);
                if s.is_connected_two_sphere() && (w.is_zero() || w == BigInt::from(2)) {
                    found = Some(s);
                    false
                } else {
                    true
                }
            }
        }
    })?;
    if let Some(err) = inner_err {
        return Err(err);
    }
    Ok(match found {
        Some(s) => SphereSearch::Found(s),
        None => SphereSearch::None,
    })
}

// --- Verification ----------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub at: String,
}

/// Replays a certificate against the input: rebuilds the edge-ideal
/// triangulation, replays each preparation and crush with full checks
/// (loop weight, quad vertex certification, signature equality), and
/// re-verifies every terminal nontriviality witness.
pub fn verify_certificate(
    input: &EdgeIdeal,
    cert: &FactorisationCertificate,
    config: &Config,
) -> Result<(), VerifyFailure> {
    let fail = |at: &str| Err(VerifyFailure { at: at.to_string() });
    if input.marked_signature() != cert.initial_signature {
        return fail("initial signature mismatch");
    }
    let mut state = vec![input.clone()];
    for (si, step) in cert.chain.iter().enumerate() {
        if apply_preps(&mut state, &step.preps, config).is_err() {
            return fail(&format!("step {si}: bad preparation"));
        }
        if union_signature(&state) != step.signature_before {
            return fail(&format!("step {si}: signature mismatch"));
        }
        if step.crushed_component >= state.len() {
            return fail(&format!("step {si}: component out of range"));
        }
        let e = &state[step.crushed_component];
        let quad: Result<Vec<BigInt>, _> = step.sphere.iter().map(|s| s.parse()).collect();
        let Ok(quad) = quad else {
            return fail(&format!("step {si}: unparseable sphere vector"));
        };
        let Ok(surface) = NormalSurface::from_quad(quad, &e.tri, config.disc_cap) else {
            return fail(&format!("step {si}: sphere vector not admissible"));
        };
        let lw = loop_weight(&surface.standard, e);
        if lw != BigInt::from(step.loop_weight) || !(lw.is_zero() || lw == BigInt::from(2)) {
            return fail(&format!("step {si}: loop weight check failed"));
        }
        match certify_quad_vertex(e, &surface) {
            Ok(true) => {}
            _ => return fail(&format!("step {si}: quad vertex certification failed")),
        }
        let Ok(outcome) = crush(e, &surface) else {
            return fail(&format!("step {si}: crush failed"));
        };
        let mut replacements = Vec::new();
        for comp in outcome.components {
            if let IdealContent::Loop(knot) = comp.ideal {
                let e2 = EdgeIdeal { tri: comp.tri, knot };
                if e2.validate().is_err() {
                    return fail(&format!("step {si}: crushed component invalid"));
                }
                replacements.push(e2);
            }
        }
        state.splice(step.crushed_component..=step.crushed_component, replacements);
    }
    if apply_preps(&mut state, &cert.terminal_preps, config).is_err() {
        return fail("terminal preparation failed");
    }
    // Terminal: drop trivial components the same way the factoriser did —
    // every component that is not named by a witness must Tietze-reduce to
    // the rank-1 free group.
    let witnessed: BTreeSet<usize> = cert.terminal.iter().map(|t| t.component).collect();
    let vc = VerdictConfig { rep_cap: cert.rep_degree_cap, ..VerdictConfig::default() };
    let mut kept = Vec::new();
    for (i, comp) in state.iter().enumerate() {
        if witnessed.contains(&i) {
            kept.push(comp.clone());
            continue;
        }
        let pres = crate::pi1::complement_presentation(comp);
        let (red, _) = crate::pi1::tietze_simplify(&pres, vc.tietze_budget);
        if !red.is_rank_one_free() {
            return fail(&format!("terminal: unwitnessed component {i} not certified trivial"));
        }
    }
    // Witness replay.
    for tw in &cert.terminal {
        if tw.component >= state.len() {
            return fail("terminal: witness component out of range");
        }
        let comp = &state[tw.component];
        if comp.marked_signature() != tw.signature {
            return fail("terminal: summand signature mismatch");
        }
        let pres = crate::pi1::complement_presentation(comp);
        if !crate::pi1::replay_witness(&pres, &tw.witness, &vc) {
            return fail("terminal: witness replay failed");
        }
    }
    let _ = kept;
    if union_signature(&state) != cert.terminal_signature {
        return fail("terminal signature mismatch");
    }
    Ok(())
}

fn apply_preps(state: &mut [EdgeIdeal], preps: &[Prep], config: &Config) -> Result<(), ()> {
    for p in preps {
        if p.component >= state.len() {
            return Err(());
        }
        match p.op {
            PrepOp::Simplify { seed } => {
                state[p.component] = simplify(&state[p.component], seed, &config.simplify);
            }
            PrepOp::Randomize { heat, seed } => {
                state[p.component] =
                    randomize(&state[p.component], heat, seed, &config.simplify);
            }
        }
    }
    Ok(())
}

/// Multiset of complement rep-count signatures of the summands: the k ->
/// transitive representation counts for k up to the configured cap. Used to
/// compare factorisations without asserting chirality.
pub fn summand_rep_signature(e: &EdgeIdeal, cap: usize) -> Vec<usize> {
    let pres = crate::pi1::complement_presentation(e);
    let (red, _) = crate::pi1::tietze_simplify(&pres, 4000);
    (2..=cap.clamp(2, 7)).map(|k| crate::pi1::count_transitive_reps(&red, k)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonReport {
    pub summands: usize,
    pub signatures: Vec<String>,
    pub unknown: usize,
    pub crushes: usize,
    pub enumerations: usize,
    pub wall_ms: u128,
}

impl FactorisationResult {
    pub fn json_report(&self) -> JsonReport {
        JsonReport {
            summands: self.summands.len(),
            signatures: self.summands.iter().map(|s| s.signature.clone()).collect(),
            unknown: self.unknown_count,
            crushes: self.stats.crushes,
            enumerations: self.stats.enumerations,
            wall_ms: self.stats.wall_ms,
        }
    }
}
