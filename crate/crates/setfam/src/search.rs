//! Exact extremal search: the maximum weight of a family over `[n]` that is
//! simultaneously `r1`-wise `k1`-intersecting and `r2`-wise `k2`-intersecting,
//! together with every maximizer.
//!
//! Three engines back the public entry points, chosen by problem size and
//! mode:
//!
//! * **all-families scan** (`n ≤ 4`): iterates every one of the `2^(2^n)`
//!   families directly and checks the predicates by definition.  Slowest per
//!   family but assumption-free; it is the trust anchor the other engines are
//!   tested against.
//! * **up-set scan** (`n = 5, 6`): iterates every up-set, encoded as a
//!   `2^n`-bit word, via the recursive pairing `F ↦ (F without n, F with n
//!   removed from its members)`.  Sound for unrestricted search because the
//!   up-closure of a feasible family is feasible and at least as heavy, so
//!   every maximizer is an up-set.
//! * **generator DFS** (restricted mode): depth-first search over antichains
//!   of generators in (size, mask) order, maintaining the closure as a
//!   bitmap.  The left-compressed condition is decided exactly at insertion
//!   time: every dominated equal-size set must already lie in the closure,
//!   and no later insertion could cover it.  In branch-and-bound mode a
//!   branch is cut only when its optimistic bound is *strictly* below the
//!   incumbent, so tied maximizers are never lost and reported maximizer
//!   lists stay complete.

use std::time::Duration;

use serde_json::json;

use crate::dyadic::DyadicRational;
use crate::error::{Result, SetFamError};
use crate::family::Family;
use crate::mask::prec_bits;

/// Largest ground size for the unrestricted exhaustive engines.
pub const MAX_EXHAUSTIVE_FREE: u8 = 6;
/// Largest ground size for exhaustive search restricted to left-compressed
/// families.
pub const MAX_EXHAUSTIVE_LC: u8 = 7;
/// Largest ground size for branch-and-bound (always restricted).
pub const MAX_BRANCH_AND_BOUND: u8 = 10;

/// How the search space is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Complete traversal with no bound pruning.
    Exhaustive,
    /// Generator DFS with an optimistic weight bound; prunes only branches
    /// that provably cannot tie the incumbent.
    BranchAndBound,
}

impl std::str::FromStr for SearchMode {
    type Err = SetFamError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Self::Exhaustive),
            "branch-and-bound" | "bb" => Ok(Self::BranchAndBound),
            other => Err(SetFamError::InvalidParameter(format!(
                "unknown search mode {other:?} (expected \"exhaustive\" or \"branch-and-bound\")"
            ))),
        }
    }
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exhaustive => write!(f, "exhaustive"),
            Self::BranchAndBound => write!(f, "branch-and-bound"),
        }
    }
}

/// An extremal-search instance: maximize weight over families on `[n]`
/// satisfying both intersection constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: u8,
    /// First constraint: `r1`-wise `k1`-intersecting (`r1 ≥ 2`).
    pub r1: u32,
    pub k1: u32,
    /// Second constraint: `r2`-wise `k2`-intersecting (`r2 ≥ 2`).
    pub r2: u32,
    pub k2: u32,
    pub mode: SearchMode,
    /// Search only left-compressed families.  Weight-preserving for the
    /// optimum (compression keeps both predicates and the weight), so the
    /// restricted optimum equals the unrestricted one.
    pub restrict_lc: bool,
    /// Node budget; exceeding it stops the traversal and reports
    /// `proof_of_optimality = false`.
    pub node_budget: Option<u64>,
}

impl SearchProblem {
    /// The headline instance: 3-wise 1-intersecting and (pairwise)
    /// 3-intersecting, unrestricted exhaustive.
    pub fn w13(n: u8) -> Self {
        Self {
            n,
            r1: 3,
            k1: 1,
            r2: 2,
            k2: 3,
            mode: SearchMode::Exhaustive,
            restrict_lc: false,
            node_budget: None,
        }
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn restricted(mut self) -> Self {
        self.restrict_lc = true;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }
}

/// Result of a search run.
#[derive(Debug, Clone)]
pub struct SearchReport {
    /// The best weight found (the true optimum when `proof_of_optimality`).
    pub optimum: DyadicRational,
    /// All maximizers found, deduplicated and sorted by member masks.  With
    /// `proof_of_optimality` this list is complete for the searched space:
    /// all maximizing left-compressed families in restricted mode, all
    /// maximizers outright in unrestricted mode (every unrestricted
    /// maximizer is automatically an up-set: otherwise its up-closure would
    /// be a strictly heavier feasible family).
    pub optimal_families: Vec<Family>,
    /// Families examined (scan engines) or antichain nodes entered (DFS).
    pub nodes_explored: u64,
    pub wall_time: Duration,
    /// True iff the search space was covered completely (no budget stop).
    pub proof_of_optimality: bool,
}

impl SearchReport {
    /// The machine-readable report: `{optimum: {num, exp}, families:
    /// [[masks…]], nodes, millis, proven}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "optimum": serde_json::to_value(&self.optimum).expect("dyadic serializes"),
            "families": self
                .optimal_families
                .iter()
                .map(|f| f.masks().to_vec())
                .collect::<Vec<_>>(),
            "nodes": self.nodes_explored,
            "millis": self.wall_time.as_millis() as u64,
            "proven": self.proof_of_optimality,
        })
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct Stopwatch(std::time::Instant);
#[cfg(not(target_arch = "wasm32"))]
impl Stopwatch {
    fn start() -> Self {
        Self(std::time::Instant::now())
    }
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

// `std::time::Instant::now` aborts on bare wasm targets; report zero there.
#[cfg(target_arch = "wasm32")]
struct Stopwatch;
#[cfg(target_arch = "wasm32")]
impl Stopwatch {
    fn start() -> Self {
        Self
    }
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

fn validate(p: &SearchProblem) -> Result<()> {
    crate::mask::check_ground(p.n)?;
    if p.r1 < 2 || p.r2 < 2 {
        return Err(SetFamError::InvalidParameter(format!(
            "intersection arity must be at least 2, got r1={}, r2={}",
            p.r1, p.r2
        )));
    }
    Ok(())
}

/// Solves the instance on one thread.  See [`solve_with_threads`].
pub fn solve(p: &SearchProblem) -> Result<SearchReport> {
    solve_with_threads(p, 1)
}

/// Solves the instance, using up to `threads` worker threads where the
/// engine supports it (the `n = 6` up-set scan).  Reports are identical for
/// every thread count: workers keep private partial results over a fixed
/// index partition and the merge is deterministic.
///
/// Engine dispatch and size caps (exceeding them is an error, never a
/// silent approximation):
///
/// | mode, restriction            | engine          | cap    |
/// |------------------------------|-----------------|--------|
/// | exhaustive, unrestricted     | all families    | n ≤ 4  |
/// | exhaustive, unrestricted     | up-set scan     | n ≤ 6  |
/// | exhaustive, left-compressed  | all families    | n ≤ 4  |
/// | exhaustive, left-compressed  | up-set scan     | n ≤ 6  |
/// | exhaustive, left-compressed  | generator DFS   | n = 7  |
/// | branch-and-bound, restricted | generator DFS   | n ≤ 10 |
///
/// Branch-and-bound requires `restrict_lc`: its pruning bound
/// `Σ 2^{−max(E)}` over addable generators is the generating-set weight
/// formula, which is only valid left-compressed.
pub fn solve_with_threads(p: &SearchProblem, threads: usize) -> Result<SearchReport> {
    validate(p)?;
    let threads = threads.max(1);
    match (p.mode, p.restrict_lc) {
        (SearchMode::Exhaustive, false) => {
            if p.n <= 4 {
                scan_all_families(p)
            } else if p.n <= MAX_EXHAUSTIVE_FREE {
                scan_up_sets(p, threads)
            } else {
                Err(SetFamError::GroundSize {
                    n: u64::from(p.n),
                    reason: "unrestricted exhaustive search supports n <= 6; \
                             use restrict_lc (exhaustive n <= 7, branch-and-bound n <= 10)",
                })
            }
        }
        (SearchMode::Exhaustive, true) => {
            if p.n <= 4 {
                scan_all_families(p)
            } else if p.n <= MAX_EXHAUSTIVE_FREE {
                scan_up_sets(p, threads)
            } else if p.n <= MAX_EXHAUSTIVE_LC {
                dfs_generators(p, false)
            } else {
                Err(SetFamError::GroundSize {
                    n: u64::from(p.n),
                    reason: "exhaustive left-compressed search supports n <= 7; \
                             use branch-and-bound (n <= 10)",
                })
            }
        }
        (SearchMode::BranchAndBound, false) => Err(SetFamError::InvalidParameter(
            "branch-and-bound requires restrict_lc: its weight bound is the \
             generating-set formula, valid only for left-compressed families"
                .to_string(),
        )),
        (SearchMode::BranchAndBound, true) => {
            if p.n <= MAX_BRANCH_AND_BOUND {
                dfs_generators(p, true)
            } else {
                Err(SetFamError::GroundSize {
                    n: u64::from(p.n),
                    reason: "branch-and-bound search supports n <= 10",
                })
            }
        }
    }
}

/// Solves via the generator DFS regardless of `n`-based engine choice
/// (caps: exhaustive `n ≤ 7`, branch-and-bound `n ≤ 10`).  Requires
/// `restrict_lc`; agreement with [`solve`] on overlapping instances is the
/// cross-validation pair, since `solve` uses the scan engines for `n ≤ 6`.
pub fn solve_via_generators(p: &SearchProblem) -> Result<SearchReport> {
    validate(p)?;
    if !p.restrict_lc {
        return Err(SetFamError::Precondition(
            "solve_via_generators searches generating antichains of \
             left-compressed families; set restrict_lc"
                .to_string(),
        ));
    }
    let (prune, cap) = match p.mode {
        SearchMode::Exhaustive => (false, MAX_EXHAUSTIVE_LC),
        SearchMode::BranchAndBound => (true, MAX_BRANCH_AND_BOUND),
    };
    if p.n > cap {
        return Err(SetFamError::GroundSize {
            n: u64::from(p.n),
            reason: "generator search supports n <= 7 exhaustive, n <= 10 branch-and-bound",
        });
    }
    dfs_generators(p, prune)
}

// ---------------------------------------------------------------------------
// Constraint plumbing shared by all engines.
// ---------------------------------------------------------------------------

/// Per-tuple-size requirements induced by the two constraints under
/// with-repetition semantics: every distinct sub-collection of size `t ≤ r`
/// must intersect in at least `k`.  `min_card` is the `t = 1` (and, since
/// `r ≥ 2`, also `t = 2`) requirement `max(k1, k2)`; `higher[i]` is the
/// requirement for tuples of size `3 + i`.
struct Levels {
    min_card: u32,
    pair_k: u32,
    higher: Vec<(usize, u32)>,
}

fn levels_for(p: &SearchProblem) -> Levels {
    let min_card = p.k1.max(p.k2);
    let mut higher = Vec::new();
    for t in 3..=(p.r1.max(p.r2) as usize) {
        let mut k = 0;
        if p.r1 as usize >= t {
            k = k.max(p.k1);
        }
        if p.r2 as usize >= t {
            k = k.max(p.k2);
        }
        if k > 0 {
            higher.push((t, k));
        }
    }
    Levels {
        min_card,
        pair_k: min_card,
        higher,
    }
}

/// True iff every distinct `(left)`-subset of `sets[start..]` intersects
/// `acc` in at least `k` elements.
fn all_tuples_meet(sets: &[u64], start: usize, left: usize, acc: u64, k: u32) -> bool {
    if left == 0 {
        return acc.count_ones() >= k;
    }
    if sets.len() - start < left {
        return true; // not enough sets to form a tuple
    }
    if acc.count_ones() < k {
        return false; // intersections only shrink
    }
    all_tuples_meet(sets, start + 1, left - 1, acc & sets[start], k)
        && all_tuples_meet(sets, start + 1, left, acc, k)
}

/// Checks both constraints on an explicit list of sets (all distinct
/// sub-collections of each relevant size).  For an up-set it suffices to
/// pass the generators: any `r` members contain `r` generators pointwise,
/// and intersections only grow pointwise.
fn list_meets_constraints(sets: &[u64], levels: &Levels) -> bool {
    for (i, &a) in sets.iter().enumerate() {
        if a.count_ones() < levels.min_card {
            return false;
        }
        for &b in &sets[i + 1..] {
            if (a & b).count_ones() < levels.pair_k {
                return false;
            }
        }
    }
    for &(t, k) in &levels.higher {
        if !all_tuples_meet(sets, 0, t, u64::MAX, k) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Up-set words: a family over [n] (n ≤ 6) as a 2^n-bit word whose bit `s`
// says whether the subset with mask `s` is a member.
// ---------------------------------------------------------------------------

/// For each ground element (0-based bit `e`), the word marking the
/// positions whose subset contains that element.
fn element_position_masks(n: u8) -> [u64; 6] {
    let mut out = [0u64; 6];
    let size = 1u64 << n;
    for (e, slot) in out.iter_mut().enumerate().take(usize::from(n)) {
        for pos in 0..size {
            if pos & (1 << e) != 0 {
                *slot |= 1 << pos;
            }
        }
    }
    out
}

/// All up-set words over a ground set of `m ≤ 5` elements, ascending.
/// Built by the pairing: an up-set over `[m]` is `U ∪ (V + m)` for up-sets
/// `U ⊆ V` over `[m−1]`, encoded `u | (v << 2^{m−1})`.
fn up_set_words(m: u8) -> Vec<u64> {
    assert!(m <= 5);
    let mut cur = vec![0u64, 1u64];
    for level in 0..m {
        let width = 1u32 << level;
        let mut next = Vec::with_capacity(cur.len() * 3);
        for &v in &cur {
            for &u in &cur {
                if u & !v == 0 {
                    next.push(u | (v << width));
                }
            }
        }
        next.sort_unstable();
        cur = next;
    }
    cur
}

/// Calls `f` with every up-set word over `[n]`, `n ≤ 6`, in a fixed
/// deterministic order.  The counts are the Dedekind numbers 3, 6, 20, 168,
/// 7581, 7828354 for n = 1…6.
pub fn for_each_up_set_word<F: FnMut(u64)>(n: u8, mut f: F) -> Result<()> {
    crate::mask::check_ground(n)?;
    if n <= 5 {
        for w in up_set_words(n) {
            f(w);
        }
        return Ok(());
    }
    if n == 6 {
        let half = up_set_words(5);
        for &v in &half {
            for &u in &half {
                if u & !v == 0 {
                    f(u | (v << 32));
                }
            }
        }
        return Ok(());
    }
    Err(SetFamError::GroundSize {
        n: u64::from(n),
        reason: "up-set enumeration by 64-bit words requires n <= 6",
    })
}

/// Materializes the family encoded by an up-set word (usable for any word,
/// up-set or not; bit `s` of `word` marks the subset with mask `s`).
pub fn family_from_word(n: u8, word: u64) -> Result<Family> {
    if n > 6 {
        return Err(SetFamError::GroundSize {
            n: u64::from(n),
            reason: "word-coded families require n <= 6",
        });
    }
    let size = 1u64 << n;
    let masks = (0..size).filter(|&s| word & (1 << s) != 0);
    Family::from_masks(n, masks)
}

/// Word-level left-compression test, equivalent to
/// `Family::is_left_compressed` for the decoded family: for every `i < j`,
/// each member containing `j` but not `i` must have its compressed image
/// present.
pub fn word_is_left_compressed(n: u8, word: u64) -> bool {
    let pos = element_position_masks(n.min(6));
    word_is_lc_with(n, word, &pos)
}

fn word_is_lc_with(n: u8, word: u64, pos: &[u64; 6]) -> bool {
    for j in 1..usize::from(n) {
        for i in 0..j {
            let movable = word & pos[j] & !pos[i];
            let delta = (1u64 << j) - (1u64 << i);
            if (movable >> delta) & !word != 0 {
                return false;
            }
        }
    }
    true
}

/// Minimal members (generators) of an up-set word.  For an up-set, a member
/// is non-minimal iff removing some single element stays inside, so one
/// shift per element marks all non-minimal members.
fn generators_of_word(n: u8, word: u64, pos: &[u64; 6]) -> u64 {
    let mut non_minimal = 0u64;
    for (e, &p) in pos.iter().enumerate().take(usize::from(n)) {
        non_minimal |= (word & !p) << (1 << e);
    }
    word & !non_minimal
}

// ---------------------------------------------------------------------------
// Engine 1: all 2^(2^n) families, n ≤ 4.
// ---------------------------------------------------------------------------

fn scan_all_families(p: &SearchProblem) -> Result<SearchReport> {
    let clock = Stopwatch::start();
    let n = p.n;
    let levels = levels_for(p);
    let pos = element_position_masks(n);
    let total: u64 = 1u64 << (1u64 << n);
    let mut best_pop = 0u32;
    let mut best_words: Vec<u64> = vec![0];
    let mut nodes = 0u64;
    let mut proven = true;
    let mut members = [0u64; 16];
    for word in 0..total {
        if let Some(b) = p.node_budget {
            if nodes >= b {
                proven = false;
                break;
            }
        }
        nodes += 1;
        let pop = word.count_ones();
        if pop < best_pop {
            continue;
        }
        if p.restrict_lc && !word_is_lc_with(n, word, &pos) {
            continue;
        }
        let mut count = 0usize;
        let mut w = word;
        while w != 0 {
            members[count] = w.trailing_zeros() as u64;
            count += 1;
            w &= w - 1;
        }
        if !list_meets_constraints(&members[..count], &levels) {
            continue;
        }
        if pop > best_pop {
            best_pop = pop;
            best_words.clear();
        }
        best_words.push(word);
    }
    assemble_report(n, best_pop, best_words, nodes, proven, &clock)
}

// ---------------------------------------------------------------------------
// Engine 2: all up-sets as words, n = 5 or 6.
// ---------------------------------------------------------------------------

struct ScanPartial {
    best_pop: u32,
    words: Vec<u64>,
    nodes: u64,
}

fn scan_process(
    word: u64,
    n: u8,
    restrict_lc: bool,
    levels: &Levels,
    pos: &[u64; 6],
    out: &mut ScanPartial,
) {
    out.nodes += 1;
    let pop = word.count_ones();
    if pop < out.best_pop {
        return;
    }
    if restrict_lc && !word_is_lc_with(n, word, pos) {
        return;
    }
    let gens_word = generators_of_word(n, word, pos);
    let mut gens = [0u64; 32];
    let mut count = 0usize;
    let mut g = gens_word;
    while g != 0 {
        gens[count] = g.trailing_zeros() as u64;
        count += 1;
        g &= g - 1;
    }
    if !list_meets_constraints(&gens[..count], levels) {
        return;
    }
    if pop > out.best_pop {
        out.best_pop = pop;
        out.words.clear();
    }
    out.words.push(word);
}

fn scan_up_sets(p: &SearchProblem, threads: usize) -> Result<SearchReport> {
    let clock = Stopwatch::start();
    let n = p.n;
    let levels = levels_for(p);
    let pos = element_position_masks(n);
    let mut proven = true;

    let merged: ScanPartial = if n == 5 {
        let mut out = ScanPartial {
            best_pop: 0,
            words: Vec::new(),
            nodes: 0,
        };
        for w in up_set_words(5) {
            if let Some(b) = p.node_budget {
                if out.nodes >= b {
                    proven = false;
                    break;
                }
            }
            scan_process(w, n, p.restrict_lc, &levels, &pos, &mut out);
        }
        out
    } else {
        let half = up_set_words(5);
        if let Some(b) = p.node_budget {
            // Budgeted runs stay sequential so the stopping point is
            // well-defined.
            let mut out = ScanPartial {
                best_pop: 0,
                words: Vec::new(),
                nodes: 0,
            };
            'outer: for &v in &half {
                for &u in &half {
                    if u & !v == 0 {
                        if out.nodes >= b {
                            proven = false;
                            break 'outer;
                        }
                        scan_process(u | (v << 32), n, p.restrict_lc, &levels, &pos, &mut out);
                    }
                }
            }
            out
        } else if threads <= 1 {
            let mut out = ScanPartial {
                best_pop: 0,
                words: Vec::new(),
                nodes: 0,
            };
            for &v in &half {
                for &u in &half {
                    if u & !v == 0 {
                        scan_process(u | (v << 32), n, p.restrict_lc, &levels, &pos, &mut out);
                    }
                }
            }
            out
        } else {
            // Striped partition of the outer index: the per-worker work
            // depends only on (problem, stripe), so results and node counts
            // are reproducible; the merge below is deterministic.
            let restrict = p.restrict_lc;
            let partials: Vec<ScanPartial> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads)
                    .map(|t| {
                        let half = &half;
                        let levels = &levels;
                        let pos = &pos;
                        scope.spawn(move || {
                            let mut out = ScanPartial {
                                best_pop: 0,
                                words: Vec::new(),
                                nodes: 0,
                            };
                            let mut vi = t;
                            while vi < half.len() {
                                let v = half[vi];
                                for &u in half.iter() {
                                    if u & !v == 0 {
                                        scan_process(
                                            u | (v << 32),
                                            n,
                                            restrict,
                                            levels,
                                            pos,
                                            &mut out,
                                        );
                                    }
                                }
                                vi += threads;
                            }
                            out
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("worker"))
                    .collect()
            });
            let best_pop = partials.iter().map(|s| s.best_pop).max().unwrap_or(0);
            let nodes = partials.iter().map(|s| s.nodes).sum();
            let mut words = Vec::new();
            for s in &partials {
                if s.best_pop == best_pop {
                    words.extend_from_slice(&s.words);
                }
            }
            ScanPartial {
                best_pop,
                words,
                nodes,
            }
        }
    };

    // Empty family (word 0) is always feasible, so a 0-optimum reports it.
    let mut words = merged.words;
    if merged.best_pop == 0 && words.is_empty() {
        words.push(0);
    }
    assemble_report(n, merged.best_pop, words, merged.nodes, proven, &clock)
}

fn assemble_report(
    n: u8,
    best_pop: u32,
    mut words: Vec<u64>,
    nodes: u64,
    proven: bool,
    clock: &Stopwatch,
) -> Result<SearchReport> {
    words.sort_unstable();
    words.dedup();
    let mut families = Vec::with_capacity(words.len());
    for w in words {
        families.push(family_from_word(n, w)?);
    }
    families.sort_by(|a, b| a.masks().cmp(b.masks()));
    Ok(SearchReport {
        optimum: DyadicRational::new(i64::from(best_pop), u32::from(n)),
        optimal_families: families,
        nodes_explored: nodes,
        wall_time: clock.elapsed(),
        proof_of_optimality: proven,
    })
}

// ---------------------------------------------------------------------------
// Engine 3: DFS over generating antichains of left-compressed up-sets.
// ---------------------------------------------------------------------------

const CLOSURE_WORDS: usize = (1 << MAX_BRANCH_AND_BOUND as usize) / 64;

#[inline]
fn closure_test(closure: &[u64; CLOSURE_WORDS], mask: u64) -> bool {
    closure[(mask >> 6) as usize] & (1 << (mask & 63)) != 0
}

struct DfsContext {
    n: u8,
    levels: Levels,
    /// Candidate generator masks, sorted by (popcount, mask value).
    candidates: Vec<u64>,
    /// Scaled weight contribution `2^{n − max(E)}` per candidate.
    contrib: Vec<u64>,
    /// Equal-size dominated masks per candidate; all must already be in the
    /// closure when the candidate is inserted.
    preds: Vec<Vec<u64>>,
    prune: bool,
    budget: Option<u64>,
}

struct DfsState {
    chosen: Vec<u64>,
    closure: [u64; CLOSURE_WORDS],
    weight_scaled: u64,
    nodes: u64,
    best_scaled: u64,
    best_families: Vec<Vec<u64>>,
    aborted: bool,
}

fn scaled_contribution(mask: u64, n: u8) -> u64 {
    if mask == 0 {
        1u64 << n
    } else {
        let max_element = 64 - mask.leading_zeros(); // 1-based
        1u64 << (u32::from(n) - max_element)
    }
}

fn dfs_generators(p: &SearchProblem, prune: bool) -> Result<SearchReport> {
    let clock = Stopwatch::start();
    let n = p.n;
    let levels = levels_for(p);
    let size = 1u64 << n;

    let mut candidates: Vec<u64> = (0..size)
        .filter(|m| m.count_ones() >= levels.min_card)
        .collect();
    candidates.sort_by_key(|&m| (m.count_ones(), m));
    let contrib: Vec<u64> = candidates
        .iter()
        .map(|&m| scaled_contribution(m, n))
        .collect();

    // Dominated equal-size masks per candidate, via the raw domination test.
    let mut by_pop: Vec<Vec<u64>> = vec![Vec::new(); usize::from(n) + 1];
    for m in 0..size {
        by_pop[m.count_ones() as usize].push(m);
    }
    let preds: Vec<Vec<u64>> = candidates
        .iter()
        .map(|&c| {
            by_pop[c.count_ones() as usize]
                .iter()
                .copied()
                .filter(|&a| a < c && prec_bits(a, c, n))
                .collect()
        })
        .collect();

    let ctx = DfsContext {
        n,
        levels,
        candidates,
        contrib,
        preds,
        prune,
        budget: p.node_budget,
    };
    let mut state = DfsState {
        chosen: Vec::new(),
        closure: [0u64; CLOSURE_WORDS],
        weight_scaled: 0,
        nodes: 0,
        best_scaled: 0,
        best_families: vec![Vec::new()], // the empty family, weight 0
        aborted: false,
    };
    let alive: Vec<u32> = (0..ctx.candidates.len() as u32).collect();
    dfs_node(&ctx, &mut state, &alive);

    let mut families: Vec<Vec<u64>> = state.best_families;
    families.sort();
    families.dedup();
    let families = families
        .into_iter()
        .map(|masks| Family::from_masks(n, masks))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport {
        optimum: DyadicRational::new(state.best_scaled as i64, u32::from(n)),
        optimal_families: families,
        nodes_explored: state.nodes,
        wall_time: clock.elapsed(),
        proof_of_optimality: !state.aborted,
    })
}

fn dfs_node(ctx: &DfsContext, st: &mut DfsState, alive: &[u32]) {
    st.nodes += 1;
    // Record the current antichain's closure if it ties or beats the best.
    if st.weight_scaled >= st.best_scaled && !st.chosen.is_empty() {
        if st.weight_scaled > st.best_scaled {
            st.best_scaled = st.weight_scaled;
            st.best_families.clear();
        }
        let mut masks = Vec::with_capacity(st.weight_scaled as usize);
        for (wi, &w) in st.closure.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                masks.push((wi as u64) << 6 | u64::from(bits.trailing_zeros()));
                bits &= bits - 1;
            }
        }
        debug_assert_eq!(
            masks.len() as u64,
            st.weight_scaled,
            "closure size must equal the generating-set weight sum"
        );
        st.best_families.push(masks);
    }
    if let Some(b) = ctx.budget {
        if st.nodes > b {
            st.aborted = true;
            return;
        }
    }

    // Suffix sums of optimistic contributions for the strict bound cut.
    let suffixes: Vec<u64> = if ctx.prune {
        let mut v = vec![0u64; alive.len() + 1];
        let mut acc = 0u64;
        for (i, &ci) in alive.iter().enumerate().rev() {
            acc += ctx.contrib[ci as usize];
            v[i] = acc;
        }
        v
    } else {
        Vec::new()
    };

    for (pos, &ci) in alive.iter().enumerate() {
        if ctx.prune && st.weight_scaled + suffixes[pos] < st.best_scaled {
            // Even taking every remaining candidate cannot tie the best.
            break;
        }
        let c = ctx.candidates[ci as usize];
        // Left-compression: every dominated equal-size set must already be
        // generated.  Later candidates are no smaller, so a missing one can
        // never appear afterwards — the check is exact, not heuristic.
        if !ctx.preds[ci as usize]
            .iter()
            .all(|&a| closure_test(&st.closure, a))
        {
            continue;
        }
        // Tuple constraints of size ≥ 3 involving the new generator
        // (pairwise feasibility is maintained by the alive-list filter).
        if !ctx
            .levels
            .higher
            .iter()
            .all(|&(t, k)| all_tuples_meet(&st.chosen, 0, t - 1, c, k))
        {
            continue;
        }

        let snapshot = st.closure;
        add_supersets(&mut st.closure, c, ctx.n);
        st.chosen.push(c);
        st.weight_scaled += ctx.contrib[ci as usize];

        let next_alive: Vec<u32> = alive[pos + 1..]
            .iter()
            .copied()
            .filter(|&xi| {
                let x = ctx.candidates[xi as usize];
                x & c != c && (x & c).count_ones() >= ctx.levels.pair_k
            })
            .collect();
        dfs_node(ctx, st, &next_alive);

        st.weight_scaled -= ctx.contrib[ci as usize];
        st.chosen.pop();
        st.closure = snapshot;
        if st.aborted {
            return;
        }
    }
}

fn add_supersets(closure: &mut [u64; CLOSURE_WORDS], gen: u64, n: u8) {
    let full = if n == 63 { u64::MAX } else { (1u64 << n) - 1 };
    let free = full & !gen;
    let mut sub = free;
    loop {
        let s = gen | sub;
        closure[(s >> 6) as usize] |= 1 << (s & 63);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

// ---------------------------------------------------------------------------
// The weight table: predicted extremal weights with optional confirmation.
// ---------------------------------------------------------------------------

/// One row of [`weight_table`].
#[derive(Debug, Clone)]
pub struct WeightTableRow {
    pub n: u64,
    /// The predicted extremal weight: `w(F_7)` for `n ≤ 72`, `w(F_n)` for
    /// odd `n ≥ 73`, `w(F_{n−1})` for even `n ≥ 74`.
    pub predicted: DyadicRational,
    /// `Some(true)` when a search run confirmed the prediction with proof;
    /// `None` when `n` is beyond `confirm_limit`.
    pub confirmed: Option<bool>,
}

/// Builds the predicted extremal-weight table for `7 ≤ n ≤ n_max` and
/// confirms rows with `n ≤ confirm_limit` (at most 10) by restricted
/// branch-and-bound search.
pub fn weight_table(n_max: u64, confirm_limit: u64) -> Result<Vec<WeightTableRow>> {
    let mut rows = Vec::new();
    for n in 7..=n_max {
        let predicted = if n <= 72 {
            crate::constructions::fn_weight(7)?
        } else if n % 2 == 1 {
            crate::constructions::fn_weight(n)?
        } else {
            crate::constructions::fn_weight(n - 1)?
        };
        let confirmed = if n <= confirm_limit && n <= u64::from(MAX_BRANCH_AND_BOUND) {
            let problem = SearchProblem::w13(n as u8)
                .with_mode(SearchMode::BranchAndBound)
                .restricted();
            let report = solve(&problem)?;
            Some(report.proof_of_optimality && report.optimum == predicted)
        } else {
            None
        };
        rows.push(WeightTableRow {
            n,
            predicted,
            confirmed,
        });
    }
    Ok(rows)
}
