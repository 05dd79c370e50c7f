//! Infinite link states with an all-strings or simple-cup tail, and the
//! representations `X(w)` they generate, studied through finite restrictions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Result, TlError};
use crate::homs::{hom_dim_oracle, is_symmetric_pair, phi_general};
use crate::linalg::{self, Matrix};
use crate::linkstates::{gram_nullity, pair_loops, radical_basis, LSVector, LinkState, StandardModule};
use crate::modp::gram_full_rank;
use crate::scalars::{QMode, Scalar};

pub const DEFAULT_TRUNCATION: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// Every point past the prefix is a string.
    Strings,
    /// Points past the prefix are joined in consecutive pairs.
    Cups,
}

impl FromStr for Tail {
    type Err = TlError;
    fn from_str(s: &str) -> Result<Tail> {
        match s {
            "strings" => Ok(Tail::Strings),
            "cups" => Ok(Tail::Cups),
            _ => Err(TlError::Invalid(format!("tail {s:?} (expected strings|cups)"))),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Strings => "strings",
            Tail::Cups => "cups",
        })
    }
}

/// A link state on the points `0, 1, 2, ...`: a finite prefix followed by a
/// periodic tail. The prefix is kept as short as possible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfiniteLinkState {
    prefix: LinkState,
    tail: Tail,
}

impl fmt::Debug for InfiniteLinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = match self.tail {
            Tail::Strings => "|||…",
            Tail::Cups => "∪∪∪…",
        };
        write!(f, "{} {tail}", self.prefix.render())
    }
}

impl InfiniteLinkState {
    pub fn new(prefix: LinkState, tail: Tail) -> InfiniteLinkState {
        let mut cups = prefix.cups().to_vec();
        let mut n = prefix.n();
        loop {
            match tail {
                Tail::Strings if n > 0 && !cups.iter().any(|c| c.1 == n - 1) => n -= 1,
                Tail::Cups if n >= 2 && cups.last() == Some(&(n - 2, n - 1)) => {
                    cups.pop();
                    n -= 2;
                }
                _ => break,
            }
        }
        let prefix = LinkState::new(n, cups).expect("truncating a tail keeps validity");
        InfiniteLinkState { prefix, tail }
    }

    /// From one-based cups; the prefix length defaults to the last endpoint.
    pub fn from_cups(cups: &[(usize, usize)], len: Option<usize>, tail: Tail) -> Result<InfiniteLinkState> {
        let last = cups.iter().map(|c| c.0.max(c.1)).max().unwrap_or(0);
        let n = len.unwrap_or(last);
        if n < last {
            return Err(TlError::Invalid(format!("prefix length {n} is shorter than cup endpoint {last}")));
        }
        Ok(InfiniteLinkState::new(LinkState::from_one_based(n, cups)?, tail))
    }

    /// Parses a cup list like `"(1,2),(3,6)"`.
    pub fn parse(spec: &str, len: Option<usize>, tail: Tail) -> Result<InfiniteLinkState> {
        InfiniteLinkState::from_cups(&parse_cup_list(spec)?, len, tail)
    }

    /// `s` strings followed by the cup tail.
    pub fn strings_then_cups(s: usize) -> InfiniteLinkState {
        InfiniteLinkState::new(LinkState::all_strings(s), Tail::Cups)
    }

    pub fn prefix(&self) -> &LinkState {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.n()
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Number of strings, `None` for infinitely many.
    pub fn s(&self) -> Option<usize> {
        match self.tail {
            Tail::Strings => None,
            Tail::Cups => Some(self.prefix.strings().len()),
        }
    }

    /// Number of cups, `None` for infinitely many.
    pub fn c(&self) -> Option<usize> {
        match self.tail {
            Tail::Strings => Some(self.prefix.p()),
            Tail::Cups => None,
        }
    }

    /// Can the state be cut between points `n-1` and `n` without cutting a cup?
    pub fn admissible(&self, n: usize) -> bool {
        let big = self.prefix_len();
        if n > big {
            return self.tail == Tail::Strings || (n - big).is_multiple_of(2);
        }
        !self.prefix.cups().iter().any(|&(a, b)| a < n && n <= b)
    }

    /// The first `n` points; `n` must be admissible.
    fn points(&self, n: usize) -> LinkState {
        debug_assert!(self.admissible(n));
        let big = self.prefix_len();
        let mut cups: Vec<_> = self.prefix.cups().iter().copied().filter(|c| c.1 < n).collect();
        if self.tail == Tail::Cups && n > big {
            cups.extend((big..n).step_by(2).map(|a| (a, a + 1)));
        }
        LinkState::new(n, cups).expect("admissible cut")
    }

    /// The smallest admissible `n′ ≥ n` and the link state on its first `n′` points.
    pub fn restrict(&self, n: usize) -> (LinkState, usize) {
        let n2 = (n..).find(|&k| self.admissible(k)).expect("tails are eventually admissible");
        (self.points(n2), n2)
    }

    /// Admissible cut points in `lo..=hi`.
    pub fn levels(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo.max(1)..=hi).filter(|&n| self.admissible(n)).collect()
    }

    /// The `(n, p)` label of the restriction at an admissible level.
    pub fn label(&self, n: usize) -> (usize, usize) {
        (n, self.points(n).p())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prefix_len": self.prefix_len(),
            "cups": self.prefix.to_json()["cups"],
            "tail": self.tail.to_string(),
            "s": self.s(),
            "c": self.c(),
        })
    }
}

pub fn parse_cup_list(spec: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || TlError::Invalid(format!("cup list {spec:?} (expected e.g. \"(1,2),(3,6)\")"));
    let nums: Vec<usize> = spec
        .split(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    // Every pair is parenthesised.
    let opens = spec.matches('(').count();
    if nums.len() != 2 * opens || spec.matches(')').count() != opens {
        return Err(bad());
    }
    Ok(nums.chunks(2).map(|c| (c[0], c[1])).collect())
}

/// Do the states agree past some point?
pub fn differ_finitely(w: &InfiniteLinkState, z: &InfiniteLinkState) -> bool {
    match (w.tail, z.tail) {
        (Tail::Strings, Tail::Strings) => true,
        (Tail::Cups, Tail::Cups) => w.prefix_len() % 2 == z.prefix_len() % 2,
        _ => false,
    }
}

/// `w ∼ z`: finitely different, with matching labels on all large restrictions.
pub fn equivalent(w: &InfiniteLinkState, z: &InfiniteLinkState) -> bool {
    differ_finitely(w, z)
        && match w.tail {
            Tail::Strings => w.c() == z.c(),
            Tail::Cups => w.s() == z.s(),
        }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Irreducible,
    IndecomposableNotIrreducible,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Irreducible => "irreducible",
            Classification::IndecomposableNotIrreducible => "indecomposable-not-irreducible",
        })
    }
}

pub fn classify(w: &InfiniteLinkState, mode: &QMode) -> Classification {
    let Some(l) = mode.minimal_l() else {
        return Classification::Irreducible;
    };
    match w.s() {
        None => Classification::Irreducible,
        Some(s) if (s + 1) % l == 0 => Classification::Irreducible,
        Some(0) if l == 2 => Classification::Irreducible,
        Some(_) => Classification::IndecomposableNotIrreducible,
    }
}

/// Symmetric pair of finitely different states with finite string counts,
/// in either order.
pub fn is_symmetric_pair_inf(w: &InfiniteLinkState, z: &InfiniteLinkState, mode: &QMode) -> Result<bool> {
    let (Some(sw), Some(sz)) = (w.s(), z.s()) else {
        return Err(TlError::InfiniteStrings);
    };
    if mode.is_generic() || sw == sz || !differ_finitely(w, z) {
        return Ok(false);
    }
    let (lo, hi) = (sw.min(sz), sw.max(sz));
    is_symmetric_pair(hi, 0, (hi - lo) / 2, mode)
}

/// `dim Hom(X(w), X(z))`.
pub fn hom_dim_inf(w: &InfiniteLinkState, z: &InfiniteLinkState, mode: &QMode) -> usize {
    if equivalent(w, z) {
        return 1;
    }
    match (w.s(), z.s()) {
        (Some(sw), Some(sz)) if sz < sw => usize::from(is_symmetric_pair_inf(w, z, mode).unwrap_or(false)),
        _ => 0,
    }
}

/// What a restriction level says about the radical of its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalEvidence {
    /// Nondegenerate Gram matrix (exact or by a prime-field certificate).
    Zero,
    /// A nonzero radical vector was checked exactly and the Gram matrix is nonzero.
    Proper,
    /// The Gram matrix vanishes identically.
    Full,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEvidence {
    pub n: usize,
    pub p: usize,
    pub dim: usize,
    pub critical: bool,
    pub radical: RadicalEvidence,
}

impl LevelEvidence {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n, "p": self.p, "dim": self.dim, "critical": self.critical,
            "radical": format!("{:?}", self.radical).to_lowercase(),
        })
    }
}

/// Exact size below which radicals are computed by elimination outright.
const EXACT_DIM: usize = 100;

fn gram_vanishes(m: &StandardModule, mode: &QMode) -> bool {
    mode.delta().is_zero() && m.gram_loops().iter().all(|l| l.is_none_or(|k| k > 0))
}

/// Is `⟨v, y⟩ = 0` for every basis state `y`?
fn is_radical(v: &LSVector, mode: &QMode) -> Result<bool> {
    let m = StandardModule::get(v.n, v.p)?;
    let delta = mode.delta();
    let powers: Vec<Scalar> = (0..=v.n).map(|k| delta.pow(k as u32)).collect();
    for y in &m.basis {
        let mut total = Scalar::zero();
        for (u, c) in &v.terms {
            if let Some(k) = pair_loops(u, y)? {
                total += &(c * &powers[k]);
            }
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn append_cups(v: &LSVector, k: usize) -> LSVector {
    let mut out = LSVector::zero(v.n + 2 * k, v.p + k);
    for (s, c) in &v.terms {
        out.add_term(s.append_cups(k), c.clone());
    }
    out
}

/// Radical evidence for every admissible level of `w` from its prefix length
/// up to `bound`.
pub fn truncation_evidence(w: &InfiniteLinkState, mode: &QMode, bound: usize) -> Result<Vec<LevelEvidence>> {
    let levels = w.levels(w.prefix_len(), bound);
    let labels: Vec<(usize, usize)> = levels.iter().map(|&n| w.label(n)).collect();
    // A radical vector at the first level where one appears seeds the higher
    // levels of a cup tail, so large labels only need a sparse check.
    let mut seed: Option<LSVector> = None;
    if w.tail == Tail::Cups && !mode.is_generic() {
        for &(n, p) in &labels {
            let m = StandardModule::get(n, p)?;
            if m.dim() > EXACT_DIM {
                break;
            }
            if gram_vanishes(&m, mode) || gram_full_rank(&m, mode) {
                continue;
            }
            if let Some(v) = radical_basis(n, p, mode)?.into_iter().next() {
                seed = Some(v);
                break;
            }
        }
    }
    labels
        .par_iter()
        .map(|&(n, p)| {
            let m = StandardModule::get(n, p)?;
            let seeded = |v: &LSVector| -> Result<bool> {
                Ok(v.n <= n && (n - v.n).is_multiple_of(2) && is_radical(&append_cups(v, (n - v.n) / 2), mode)?)
            };
            let radical = if gram_vanishes(&m, mode) {
                RadicalEvidence::Full
            } else if gram_full_rank(&m, mode) {
                RadicalEvidence::Zero
            } else if seed.as_ref().map(seeded).transpose()?.unwrap_or(false) {
                RadicalEvidence::Proper
            } else if m.dim() <= EXACT_DIM && !mode.is_generic() {
                match gram_nullity(n, p, mode)? {
                    0 => RadicalEvidence::Zero,
                    _ => RadicalEvidence::Proper,
                }
            } else {
                RadicalEvidence::Unknown
            };
            Ok(LevelEvidence {
                n,
                p,
                dim: m.dim(),
                critical: mode.is_critical(n, p),
                radical,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyReport {
    pub state: InfiniteLinkState,
    pub classification: Classification,
    pub levels: Vec<LevelEvidence>,
    /// Does the truncation evidence independently support the classification?
    pub consistent: bool,
    pub reason: String,
}

impl ClassifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "state": self.state.to_json(),
            "classification": self.classification.to_string(),
            "consistent": self.consistent,
            "reason": self.reason,
            "levels": self.levels.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Classify `w` and test the answer against the restrictions up to `bound`.
///
/// A proper nonzero radical on every level from some point on supports a
/// reducible `X(w)`. Irreducible cases need, per case:
/// - string tail: a radical-free critical level among the last `l` levels;
/// - `s = kl-1`: critical, radical-free labels throughout;
/// - `s = 0` at `l = 2`: an identically vanishing form.
pub fn classify_with_evidence(w: &InfiniteLinkState, mode: &QMode, bound: usize) -> Result<ClassifyReport> {
    let classification = classify(w, mode);
    let levels = truncation_evidence(w, mode, bound)?;
    let all = |f: &dyn Fn(&LevelEvidence) -> bool| !levels.is_empty() && levels.iter().all(f);
    let eventually_proper = levels
        .iter()
        .rposition(|e| e.radical != RadicalEvidence::Proper)
        .map_or(!levels.is_empty(), |i| i + 1 < levels.len());
    let l = mode.minimal_l();
    let (consistent, reason) = match (classification, l, w.s()) {
        (Classification::Irreducible, None, _) => (
            all(&|e| e.radical == RadicalEvidence::Zero),
            "generic: nondegenerate form at every level".to_string(),
        ),
        (Classification::Irreducible, Some(l), None) => (
            levels.len() >= l
                && levels[levels.len() - l..]
                    .iter()
                    .any(|e| e.critical && e.radical == RadicalEvidence::Zero),
            "string tail: a critical level with zero radical among the last l levels".to_string(),
        ),
        (Classification::Irreducible, Some(l), Some(s)) if (s + 1) % l == 0 => (
            all(&|e| e.critical && e.radical == RadicalEvidence::Zero),
            format!("s = {s} = kl-1: every label critical with zero radical"),
        ),
        (Classification::Irreducible, Some(_), Some(_)) => (
            all(&|e| e.radical == RadicalEvidence::Full),
            "delta = 0 with no strings: the radical is everything".to_string(),
        ),
        (Classification::IndecomposableNotIrreducible, _, _) => (
            eventually_proper,
            "proper nonzero radical on all high levels".to_string(),
        ),
    };
    Ok(ClassifyReport {
        state: w.clone(),
        classification,
        levels,
        consistent,
        reason,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalVerdict {
    Verified,
    Refuted,
    Inconclusive(usize),
}

impl RadicalVerdict {
    fn rank(&self) -> u8 {
        match self {
            RadicalVerdict::Refuted => 2,
            RadicalVerdict::Verified => 1,
            RadicalVerdict::Inconclusive(_) => 0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RadicalVerdict::Verified => "verified".into(),
            RadicalVerdict::Refuted => "refuted".into(),
            RadicalVerdict::Inconclusive(n) => format!("inconclusive(n_max={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub verdict: RadicalVerdict,
    /// `(level, restriction lies in the radical)`.
    pub levels: Vec<(usize, bool)>,
}

/// Extend a vector on the first `x.n` points of `w` to the first `n` points.
fn extend(x: &LSVector, w: &InfiniteLinkState, n: usize) -> Result<LSVector> {
    let extra: Vec<(usize, usize)> = w
        .points(n)
        .cups()
        .iter()
        .copied()
        .filter(|c| c.0 >= x.n)
        .collect();
    let mut out = LSVector::zero(n, x.p + extra.len());
    for (s, c) in &x.terms {
        let mut cups = s.cups().to_vec();
        cups.extend(&extra);
        out.add_term(LinkState::new(n, cups)?, c.clone());
    }
    Ok(out)
}

/// Is `x`, given on the first `x.n` points and continued like `w`, in `R(w)`?
///
/// Past the prefix, a restriction outside the radical stays outside at every
/// higher level (pair against the test state with the new cup or string
/// attached), so one such level refutes. A radical restriction of a cup tail
/// stays radical once cups are appended, which verifies.
pub fn radical_member(x: &LSVector, w: &InfiniteLinkState, mode: &QMode, n_max: usize) -> Result<RadicalReport> {
    if !w.admissible(x.n) || w.points(x.n).p() != x.p {
        return Err(TlError::Invalid(format!(
            "vector in V_({},{}) is not a restriction level of the state",
            x.n, x.p
        )));
    }
    if x.is_zero() {
        return Ok(RadicalReport {
            verdict: RadicalVerdict::Verified,
            levels: Vec::new(),
        });
    }
    let stable = w.prefix_len().max(x.n);
    let levels = w.levels(x.n, n_max);
    let results: Vec<(usize, bool)> = levels
        .par_iter()
        .map(|&n| Ok((n, is_radical(&extend(x, w, n)?, mode)?)))
        .collect::<Result<_>>()?;
    let verdict = results
        .iter()
        .map(|&(n, rad)| match (n >= stable, rad, w.tail) {
            (true, false, _) => RadicalVerdict::Refuted,
            (true, true, Tail::Cups) => RadicalVerdict::Verified,
            _ => RadicalVerdict::Inconclusive(n_max),
        })
        .max_by_key(|v| v.rank())
        .unwrap_or(RadicalVerdict::Inconclusive(n_max));
    Ok(RadicalReport {
        verdict,
        levels: results,
    })
}

/// `j_1, ..., j_depth` from `j_k = 2(kl-1) - j_{k-1}`.
pub fn sequence_indices(j0: usize, l: usize, depth: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(depth);
    let mut prev = j0;
    for k in 1..=depth {
        prev = 2 * (k * l - 1) - prev;
        out.push(prev);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceLevel {
    pub k: usize,
    pub n: usize,
    /// `φ_k: V_{n,source} → V_{n,target}`.
    pub source: usize,
    pub target: usize,
    pub rank: usize,
    pub target_nullity: usize,
    /// `dim ker φ_{k-1}` at the same level when `k ≥ 2`.
    pub previous_kernel: Option<usize>,
    pub composes_to_zero: bool,
}

impl SequenceLevel {
    pub fn ok(&self) -> bool {
        self.rank == self.target_nullity && self.previous_kernel.is_none_or(|k| k == self.rank) && self.composes_to_zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub j: Vec<usize>,
    pub levels: Vec<SequenceLevel>,
}

impl SequenceReport {
    pub fn ok(&self) -> bool {
        !self.levels.is_empty() && self.levels.iter().all(SequenceLevel::ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "j": self.j,
            "ok": self.ok(),
            "levels": self.levels.iter().map(|s| json!({
                "k": s.k, "n": s.n, "source": [s.n, s.source], "target": [s.n, s.target],
                "rank": s.rank, "target_nullity": s.target_nullity,
                "previous_kernel": s.previous_kernel, "composes_to_zero": s.composes_to_zero,
                "ok": s.ok(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Finite-level exactness of `⋯ → X(w^{(j_2)}) → X(w^{(j_1)}) → X(w)`: at each
/// level `n ≤ bound`, `rank φ_k` equals the radical dimension of the target,
/// and the image of `φ_k` is the kernel of `φ_{k-1}`.
pub fn sequence_check(w: &InfiniteLinkState, depth: usize, bound: usize, mode: &QMode) -> Result<SequenceReport> {
    let l = mode.minimal_l().ok_or(TlError::RequiresRootOfUnity)?;
    let j0 = match (w.tail, w.s()) {
        (Tail::Cups, Some(s)) if s + 2 <= l => s,
        _ => {
            return Err(TlError::Invalid(format!(
                "sequence needs a cup tail with 0 <= s(w) <= l-2 = {}",
                l - 2
            )))
        }
    };
    let j = sequence_indices(j0, l, depth);
    let mut counts = vec![j0];
    counts.extend(&j);
    let mut levels = Vec::new();
    for n in (j0..=bound).step_by(2) {
        let mut previous: Option<Matrix> = None;
        for k in 1..=depth {
            let (js, jt) = (counts[k], counts[k - 1]);
            if js > n {
                break;
            }
            let (source, target) = ((n - js) / 2, (n - jt) / 2);
            let phi = phi_general(n, source, target, mode)?;
            let rank = phi.rank();
            let target_nullity = gram_nullity(n, target, mode)?;
            let (previous_kernel, composes_to_zero) = match &previous {
                Some(prev) => (Some(prev.nullity()), prev.mul(&phi.matrix).is_zero()),
                None => (None, true),
            };
            levels.push(SequenceLevel {
                k,
                n,
                source,
                target,
                rank,
                target_nullity,
                previous_kernel,
                composes_to_zero,
            });
            previous = Some(phi.matrix);
        }
    }
    Ok(SequenceReport { j, levels })
}

/// Compare `hom_dim_inf` with the finite intertwiner solver on every common
/// admissible level in `3..=bound` past both prefixes. Returns the
/// disagreeing levels.
pub fn hom_truncation_mismatches(
    w: &InfiniteLinkState,
    z: &InfiniteLinkState,
    mode: &QMode,
    bound: usize,
) -> Result<Vec<usize>> {
    let expected = hom_dim_inf(w, z, mode);
    let start = w.prefix_len().max(z.prefix_len()).max(3);
    let mut bad = Vec::new();
    for n in w.levels(start, bound) {
        if !z.admissible(n) {
            continue;
        }
        let (_, pw) = w.label(n);
        let (_, pz) = z.label(n);
        if hom_dim_oracle(n, pw, pz, mode)? != expected {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// At `l = 3` with `s(w) ∈ {0, 1}`: on each level up to `bound`, the quotient
/// `L` of the restriction label is one-dimensional and every `e_i` acts on it
/// by `δ`. Returns `(level, dim L, e_i acts by δ)`.
pub fn one_dimensional_quotient(s: usize, bound: usize) -> Result<Vec<(usize, usize, bool)>> {
    let mode = QMode::for_l(3);
    let delta = mode.delta();
    let mut out = Vec::new();
    let first = if s == 0 { 2 } else { s };
    for n in (first..=bound).step_by(2) {
        let p = (n - s) / 2;
        let m = StandardModule::get(n, p)?;
        let g = m.gram(&mode);
        let l_dim = m.dim() - g.nullity();
        let radical = g.nullspace();
        let mut by_delta = true;
        for i in 1..n {
            let e = m.generator_matrix(i, &mode);
            for x in 0..m.dim() {
                let mut v = e.column(x);
                v[x] -= &delta;
                by_delta &= linalg::in_span(&radical, &v);
            }
        }
        out.push((n, l_dim, by_delta));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrict_examples() {
        let w = InfiniteLinkState::new(LinkState::all_strings(0), Tail::Strings);
        assert_eq!(w.restrict(4), (LinkState::all_strings(4), 4));
        let w = InfiniteLinkState::new(LinkState::all_strings(0), Tail::Cups);
        let (s, n) = w.restrict(5);
        assert_eq!((n, s.p()), (6, 3));
        let w = InfiniteLinkState::parse("(2,5),(3,4)", None, Tail::Strings).unwrap();
        assert_eq!(w.restrict(3).1, 5);
    }

    #[test]
    fn normalisation_strips_tail_pattern() {
        let a = InfiniteLinkState::parse("(1,2),(3,4)", None, Tail::Cups).unwrap();
        assert_eq!(a.prefix_len(), 0);
        let b = InfiniteLinkState::parse("(2,3)", Some(5), Tail::Strings).unwrap();
        assert_eq!(b.prefix_len(), 3);
    }

    #[test]
    fn equivalence_examples() {
        let a = InfiniteLinkState::parse("(1,2),(3,4)", None, Tail::Strings).unwrap();
        let b = InfiniteLinkState::parse("(2,3),(5,6)", None, Tail::Strings).unwrap();
        let c = InfiniteLinkState::parse("(1,2)", None, Tail::Strings).unwrap();
        assert!(equivalent(&a, &b));
        assert!(!equivalent(&a, &c));
        // Offset cup trains differ everywhere.
        let d = InfiniteLinkState::strings_then_cups(1);
        let e = InfiniteLinkState::strings_then_cups(0);
        assert!(!differ_finitely(&d, &e));
    }

    #[test]
    fn classify_examples() {
        let l3 = QMode::for_l(3);
        let s = InfiniteLinkState::strings_then_cups;
        assert_eq!(classify(&s(2), &l3), Classification::Irreducible);
        assert_eq!(classify(&s(1), &l3), Classification::IndecomposableNotIrreducible);
        assert_eq!(classify(&s(1), &QMode::Generic), Classification::Irreducible);
        assert_eq!(classify(&s(0), &QMode::for_l(2)), Classification::Irreducible);
    }

    #[test]
    fn hom_examples() {
        let l3 = QMode::for_l(3);
        let s = InfiniteLinkState::strings_then_cups;
        assert!(is_symmetric_pair_inf(&s(1), &s(3), &l3).unwrap());
        assert!(!is_symmetric_pair_inf(&s(1), &s(1), &l3).unwrap());
        assert!(!is_symmetric_pair_inf(&s(1), &s(3), &QMode::Generic).unwrap());
        assert_eq!(hom_dim_inf(&s(3), &s(1), &l3), 1);
        assert_eq!(hom_dim_inf(&s(1), &s(3), &l3), 0);
        let strings = InfiniteLinkState::new(LinkState::all_strings(0), Tail::Strings);
        assert_eq!(hom_dim_inf(&strings, &s(1), &l3), 0);
    }

    #[test]
    fn radical_member_examples() {
        let l3 = QMode::for_l(3);
        let w = InfiniteLinkState::strings_then_cups(1);
        let r = radical_basis(3, 1, &l3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(radical_member(&r[0], &w, &l3, 9).unwrap().verdict, RadicalVerdict::Verified);
        let (s, n) = w.restrict(3);
        let own = LSVector::basis(s);
        assert_eq!(n, 3);
        assert_eq!(radical_member(&own, &w, &l3, 9).unwrap().verdict, RadicalVerdict::Refuted);
    }

    #[test]
    fn sequence_indices_follow_recurrence() {
        assert_eq!(sequence_indices(0, 3, 2), vec![4, 6]);
        assert_eq!(sequence_indices(0, 2, 1), vec![2]);
    }
}
