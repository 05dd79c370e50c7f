//! Extensions of standard modules by the corrected action `ẽ_k`, the
//! secondary `Q` extension, and machine checks of the TL relations and of
//! non-splitness.

use serde_json::{json, Value};

use crate::error::{Result, TlError};
use crate::homs::{self, ModuleMap};
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::linkstates::{LSVector, LinkState, StandardModule};
use crate::scalars::{QMode, Scalar};

/// A module with basis `V_{n,bottom} ⊕ V_{n,top}` (bottom first) and
/// generators acting by `[[A_k, C_k], [0, B_k]]`.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub n: usize,
    pub bottom: usize,
    pub top: usize,
    pub mode: QMode,
    /// `corrections[k-1] = C_k`, of shape `d_bottom × d_top`.
    pub corrections: Vec<Matrix>,
}

impl ExtModule {
    pub fn dims(&self) -> Result<(usize, usize)> {
        Ok((
            StandardModule::get(self.n, self.bottom)?.dim(),
            StandardModule::get(self.n, self.top)?.dim(),
        ))
    }

    /// Full matrix of `e_k` (one-based).
    pub fn generator_matrix(&self, k: usize) -> Result<Matrix> {
        let bot = StandardModule::get(self.n, self.bottom)?;
        let top = StandardModule::get(self.n, self.top)?;
        let (db, dt) = (bot.dim(), top.dim());
        let a = bot.generator_matrix(k, &self.mode);
        let b = top.generator_matrix(k, &self.mode);
        let c = &self.corrections[k - 1];
        let mut m = Matrix::zeros(db + dt, db + dt);
        for i in 0..db {
            for j in 0..db {
                m[(i, j)] = a[(i, j)].clone();
            }
            for j in 0..dt {
                m[(i, db + j)] = c[(i, j)].clone();
            }
        }
        for i in 0..dt {
            for j in 0..dt {
                m[(db + i, db + j)] = b[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Result<Value> {
        let mats = (1..self.n)
            .map(|k| {
                let m = self.generator_matrix(k)?;
                Ok((0..m.rows())
                    .map(|r| m.row(r).iter().map(|s| self.mode.scalar_json(s)).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({"n": self.n, "bottom": self.bottom, "top": self.top, "generator_matrices": mats}))
    }
}

/// `C_k`: for each top state with strings at `k, k+1`, the part of its image
/// under `map` supported on states with a simple cup at `k`; zero elsewhere.
fn corrections_from(map: &Matrix, n: usize, top: usize, bottom: usize) -> Result<Vec<Matrix>> {
    let t = StandardModule::get(n, top)?;
    let b = StandardModule::get(n, bottom)?;
    let mut out = Vec::new();
    for k in 1..n {
        let mut c = Matrix::zeros(b.dim(), t.dim());
        for x in 0..t.dim() {
            if t.action(k, x).is_some() {
                continue;
            }
            for (y, state) in b.basis.iter().enumerate() {
                if state.has_simple_cup(k - 1) {
                    c[(y, x)] = map[(y, x)].clone();
                }
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// The extension `V_{n,p2} → P → V_{n,p}` built from the closed-form map.
pub fn build_p(n: usize, p: usize, p2: usize, mode: &QMode) -> Result<ExtModule> {
    let phi = homs::phi_general(n, p, p2, mode)?;
    build_p_from_map(&phi, mode)
}

/// Same construction from an arbitrary coefficient map `V_{n,p} → V_{n,p2}`.
pub fn build_p_from_map(map: &ModuleMap, mode: &QMode) -> Result<ExtModule> {
    Ok(ExtModule {
        n: map.n,
        bottom: map.target,
        top: map.source,
        mode: *mode,
        corrections: corrections_from(&map.matrix, map.n, map.source, map.target)?,
    })
}

/// The correction with every coefficient replaced by one: each source state
/// is sent to the sum of all target states obtained by adding cups over its
/// strings.
pub fn naive_map(n: usize, p: usize, p2: usize) -> Result<ModuleMap> {
    let src = StandardModule::get(n, p)?;
    let tgt = StandardModule::get(n, p2)?;
    let pattern = StandardModule::get(n - 2 * p, p2 - p)?;
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for (xi, x) in src.basis.iter().enumerate() {
        let strings = x.strings();
        for y in &pattern.basis {
            let mut cups = x.cups().to_vec();
            cups.extend(y.cups().iter().map(|&(a, b)| (strings[a], strings[b])));
            let z = LinkState::new(n, cups)?;
            m[(tgt.index_of(&z).expect("target state"), xi)] = Scalar::one();
        }
    }
    Ok(ModuleMap {
        n,
        source: p,
        target: p2,
        matrix: m,
    })
}

/// Which TL relation failed first, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationFailure {
    Idempotent(usize),
    Braid(usize, usize),
    Commute(usize, usize),
}

pub fn relation_failure(m: &ExtModule) -> Result<Option<RelationFailure>> {
    let delta = m.mode.delta();
    let gens = (1..m.n).map(|k| m.generator_matrix(k)).collect::<Result<Vec<_>>>()?;
    for (k, g) in gens.iter().enumerate() {
        if g.mul(g) != g.scale(&delta) {
            return Ok(Some(RelationFailure::Idempotent(k + 1)));
        }
    }
    for k in 0..gens.len() {
        for j in [k.wrapping_sub(1), k + 1] {
            if j < gens.len() && gens[k].mul(&gens[j]).mul(&gens[k]) != gens[k] {
                return Ok(Some(RelationFailure::Braid(k + 1, j + 1)));
            }
        }
        for j in k + 2..gens.len() {
            if gens[k].mul(&gens[j]) != gens[j].mul(&gens[k]) {
                return Ok(Some(RelationFailure::Commute(k + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

pub fn verify_relations(m: &ExtModule) -> Result<bool> {
    Ok(relation_failure(m)?.is_none())
}

/// Splitting maps `V_{n,top} → ExtModule` lifting the identity are the
/// solutions with `λ = 1` of `A_k S + λ C_k = S B_k` for all `k`. Returns 0
/// if `λ` is forced to vanish (the extension does not split), otherwise the
/// dimension of the homogeneous solution space in `(S, λ)`.
pub fn splitting_solutions(m: &ExtModule) -> Result<usize> {
    let bot = StandardModule::get(m.n, m.bottom)?;
    let top = StandardModule::get(m.n, m.top)?;
    let (db, dt) = (bot.dim(), top.dim());
    let delta = m.mode.delta();
    let coef = |lp: bool| if lp { delta.clone() } else { Scalar::one() };
    // λ is column 0; S[y][x] is column 1 + y*dt + x.
    let var = |y: usize, x: usize| 1 + y * dt + x;
    let ncols = 1 + db * dt;
    let mut e = SparseEchelon::new(ncols);
    for k in 1..m.n {
        let mut pre: Vec<Vec<(usize, bool)>> = vec![Vec::new(); db];
        for y2 in 0..db {
            if let Some((y, lp)) = bot.action(k, y2) {
                pre[y].push((y2, lp));
            }
        }
        let c = &m.corrections[k - 1];
        for y in 0..db {
            for x in 0..dt {
                let mut row: SparseRow = Vec::new();
                // (A S)[y,x] runs over y2 with e_k y2 = y
                for &(y2, lp) in &pre[y] {
                    row.push((var(y2, x), coef(lp)));
                }
                // (S B)[y,x] has the single term S[y, e_k x]
                if let Some((x2, lp)) = top.action(k, x) {
                    row.push((var(y, x2), -coef(lp)));
                }
                if !c[(y, x)].is_zero() {
                    row.push((0, c[(y, x)].clone()));
                }
                if !row.is_empty() {
                    e.push(row);
                }
            }
        }
    }
    let nullity = e.nullity();
    let mut probe = e.clone();
    if probe.push(vec![(0, Scalar::one())]) {
        Ok(nullity)
    } else {
        Ok(0)
    }
}

/// `V_{n,p3} → Q → V_{n,p}` with correction `ē_k = ẽ_k ∘ φ`, where `φ` is the
/// map `V_{n,p} → V_{n,p2}` and `ẽ_k` the correction of `P(n, p2, p3)`.
pub fn build_q(n: usize, p: usize, p2: usize, p3: usize, mode: &QMode) -> Result<ExtModule> {
    let ok = p < p2
        && p2 < p3
        && homs::is_symmetric_pair(n, p, p2, mode)?
        && homs::is_symmetric_pair(n, p2, p3, mode)?;
    if !ok {
        return Err(TlError::ChainUnmet(format!("({n},{p}),({n},{p2}),({n},{p3})")));
    }
    let phi = homs::phi_general(n, p, p2, mode)?;
    let inner = build_p(n, p2, p3, mode)?;
    Ok(ExtModule {
        n,
        bottom: p3,
        top: p,
        mode: *mode,
        corrections: inner.corrections.iter().map(|c| c.mul(&phi.matrix)).collect(),
    })
}

/// All `(n, p, p2, p3)` with `(n,p),(n,p2)` and `(n,p2),(n,p3)` symmetric.
pub fn symmetric_chains(mode: &QMode, n_max: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for p in 0..=n / 2 {
            if let Some(p2) = homs::symmetric_partner_above(n, p, mode) {
                if let Some(p3) = homs::symmetric_partner_above(n, p2, mode) {
                    out.push((n, p, p2, p3));
                }
            }
        }
    }
    out
}

/// Solution of the splitting system for the single-cup chain on `n + 1`
/// points: `(-1)^{i+1}[i] + b_{i-1} + δ b_i + b_{i+1} = 0`, `b_0 = b_{n+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BSolution {
    Unique(Vec<Scalar>),
    Family(usize),
    Inconsistent,
}

pub fn b_coefficients(n: usize, mode: &QMode) -> BSolution {
    let delta = mode.delta();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 1..=n {
        let r = i - 1;
        if i > 1 {
            aug[(r, i - 2)] = Scalar::one();
        }
        aug[(r, i - 1)] = delta.clone();
        if i < n {
            aug[(r, i)] = Scalar::one();
        }
        let c = mode.qint(i as i64);
        aug[(r, n)] = if i % 2 == 1 { -c } else { c };
    }
    let (rref, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return BSolution::Inconsistent;
    }
    if pivots.len() < n {
        return BSolution::Family(n - pivots.len());
    }
    BSolution::Unique((0..n).map(|i| rref[(i, n)].clone()).collect())
}

/// The closed form `b_k = (-1)^{k+1} Σ_i (k-2i-1)[k-2i-1] + (-1)^{k+1}[k] b_1`
/// with `b_1 = -Σ_i (n-2i)[n-2i] / [n+1]`; `None` if `[n+1] = 0`.
pub fn b_closed_form(n: usize, mode: &QMode) -> Option<Vec<Scalar>> {
    let q = |k: i64| mode.qint(k);
    let b1_num: Scalar = (0..=n / 2)
        .map(|i| {
            let k = (n - 2 * i) as i64;
            &Scalar::int(k) * &q(k)
        })
        .sum();
    let denom = q(n as i64 + 1);
    if denom.is_zero() {
        return None;
    }
    let b1 = -(&b1_num / &denom);
    Some(
        (1..=n)
            .map(|k| {
                let s: Scalar = (0..=(k - 1) / 2)
                    .map(|i| {
                        let j = (k - 2 * i - 1) as i64;
                        &Scalar::int(j) * &q(j)
                    })
                    .sum();
                let v = &s + &(&q(k as i64) * &b1);
                if k % 2 == 0 {
                    -v
                } else {
                    v
                }
            })
            .collect(),
    )
}

/// `b_n = (-1)^n Σ [i]² / [n+1]`.
pub fn b_last_closed_form(n: usize, mode: &QMode) -> Option<Scalar> {
    let s: Scalar = (1..=n as i64).map(|i| mode.qint(i).pow(2)).sum();
    let d = mode.qint(n as i64 + 1).inv()?;
    let v = &s * &d;
    Some(if n.is_multiple_of(2) { v } else { -v })
}

/// Terms of `φ(|^{⊗n})` whose last point closes a cup, with that point
/// deleted (its partner becomes a string).
pub fn truncated_image(n: usize, p2: usize, mode: &QMode) -> Result<LSVector> {
    let phi = homs::phi_base(n, p2, mode)?;
    let tgt = StandardModule::get(n, p2)?;
    let mut out = LSVector::zero(n - 1, p2 - 1);
    for (y, state) in tgt.basis.iter().enumerate() {
        let c = &phi.matrix[(y, 0)];
        if c.is_zero() {
            continue;
        }
        let last = state.cups().iter().find(|&&(_, b)| b == n - 1).copied();
        if let Some(cup) = last {
            let cups: Vec<(usize, usize)> = state.cups().iter().copied().filter(|&x| x != cup).collect();
            out.add_term(LinkState::new(n - 1, cups)?, c.clone());
        }
    }
    Ok(out)
}

/// Does the truncation equal `(-1)^{n-p+1}/[n-p]` times the smaller image?
/// Returns the ratio found (if the two are proportional) and whether it is
/// the expected one.
pub fn truncation_ratio(n: usize, p2: usize, mode: &QMode) -> Result<(Option<Scalar>, bool)> {
    let trunc = truncated_image(n, p2, mode)?;
    let smaller = homs::phi_base(n - 1, p2 - 1, mode)
        .map(|m| m.matrix.column(0))
        .or_else(|_| {
            // p2 - 1 = 0: the identity on V_{n-1,0}
            if p2 == 1 {
                Ok(vec![Scalar::one()])
            } else {
                Err(TlError::NotSymmetricPair { n: n - 1, p: 0, p2: p2 - 1 })
            }
        })?;
    let module = StandardModule::get(n - 1, p2 - 1)?;
    let t = module.coords(&trunc);
    let Some(k) = smaller.iter().position(|c| !c.is_zero()) else {
        return Ok((None, false));
    };
    let ratio = &t[k] / &smaller[k];
    let proportional = t.iter().zip(&smaller).all(|(a, b)| a == &(b * &ratio));
    if !proportional {
        return Ok((None, false));
    }
    let m = (n - p2) as i64;
    let expected = mode.qint(m).inv().map(|x| if (n - p2 + 1).is_multiple_of(2) { x } else { -x });
    let ok = expected.as_ref() == Some(&ratio);
    Ok((Some(ratio), ok))
}

/// For `|i-j| > 1`: `Σ a e_j y` over states with a simple cup at `i` but not
/// `j` equals `Σ a e_i y` over states with a simple cup at `j` but not `i`.
pub fn sub_sum_identity(n: usize, p2: usize, i: usize, j: usize, mode: &QMode) -> Result<bool> {
    let phi = homs::phi_base(n, p2, mode)?;
    let tgt = StandardModule::get(n, p2)?;
    let mut lhs = LSVector::zero(n, p2);
    let mut rhs = LSVector::zero(n, p2);
    for (y, state) in tgt.basis.iter().enumerate() {
        let c = &phi.matrix[(y, 0)];
        let (ci, cj) = (state.has_simple_cup(i - 1), state.has_simple_cup(j - 1));
        let v = LSVector::basis(state.clone()).scale(c);
        if ci && !cj {
            lhs = lhs.add(&v.act_generator(j, mode)?);
        }
        if cj && !ci {
            rhs = rhs.add(&v.act_generator(i, mode)?);
        }
    }
    Ok(lhs == rhs)
}
