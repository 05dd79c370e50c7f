//! Standard modules `V_{n,p}` on link states: basis, action, bilinear form,
//! Gram matrices, radicals and irreducible dimensions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::diagrams::Diagram;
use crate::error::{Result, TlError};
use crate::linalg::Matrix;
use crate::scalars::{QMode, Scalar};

/// `d_{n,p} = C(n,p) - C(n,p-1)`, zero outside `0 ≤ p ≤ n/2`.
pub fn d_np(n: usize, p: usize) -> usize {
    if 2 * p > n {
        return 0;
    }
    let c = |k: usize| -> u128 {
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * (n - i) as u128 / (i + 1) as u128;
        }
        r
    };
    (c(p) - if p == 0 { 0 } else { c(p - 1) }) as usize
}

/// A link state on points `0..n`: `p` non-crossing cups with no string
/// underneath any cup. Cups are kept sorted by left endpoint, which makes the
/// derived order the lexicographic order on the cup-endpoint sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkState {
    cups: Vec<(usize, usize)>,
    n: usize,
}

impl fmt::Debug for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl LinkState {
    pub fn all_strings(n: usize) -> LinkState {
        LinkState { cups: Vec::new(), n }
    }

    /// From zero-based cups; validates planarity and the no-string-under-cup rule.
    pub fn new(n: usize, mut cups: Vec<(usize, usize)>) -> Result<LinkState> {
        for c in cups.iter_mut() {
            if c.0 > c.1 {
                *c = (c.1, c.0);
            }
        }
        cups.sort();
        let s = LinkState { cups, n };
        if s.is_valid() {
            Ok(s)
        } else {
            Err(TlError::Invalid(format!("not a link state: n={n} cups={:?}", s.cups)))
        }
    }

    /// From one-based cups.
    pub fn from_one_based(n: usize, cups: &[(usize, usize)]) -> Result<LinkState> {
        if cups.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(TlError::Invalid("cup endpoints are one-based".into()));
        }
        LinkState::new(n, cups.iter().map(|&(a, b)| (a - 1, b - 1)).collect())
    }

    fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.n];
        for &(a, b) in &self.cups {
            if a >= b || b >= self.n || seen[a] || seen[b] {
                return false;
            }
            seen[a] = true;
            seen[b] = true;
        }
        let partners = self.partners();
        let mut depth = 0usize;
        for (k, p) in partners.iter().enumerate() {
            match p {
                None if depth > 0 => return false,
                None => {}
                Some(j) if *j > k => depth += 1,
                Some(_) => {
                    depth -= 1;
                }
            }
        }
        // Non-crossing: a stack check on cup endpoints.
        let mut stack = Vec::new();
        for (k, p) in partners.iter().enumerate() {
            if let Some(j) = *p {
                if j > k {
                    stack.push(k);
                } else if stack.pop() != Some(j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.cups.len()
    }

    pub fn cups(&self) -> &[(usize, usize)] {
        &self.cups
    }

    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.n];
        for &(a, b) in &self.cups {
            v[a] = Some(b);
            v[b] = Some(a);
        }
        v
    }

    /// Positions of strings, left to right.
    pub fn strings(&self) -> Vec<usize> {
        let p = self.partners();
        (0..self.n).filter(|&k| p[k].is_none()).collect()
    }

    /// Has a simple cup `(k, k+1)` (zero-based `k`).
    pub fn has_simple_cup(&self, k: usize) -> bool {
        self.cups.contains(&(k, k + 1))
    }

    /// Append `count` simple cups on new points to the right.
    pub fn append_cups(&self, count: usize) -> LinkState {
        let mut cups = self.cups.clone();
        for c in 0..count {
            cups.push((self.n + 2 * c, self.n + 2 * c + 1));
        }
        LinkState {
            cups,
            n: self.n + 2 * count,
        }
    }

    /// Append `count` strings on the right.
    pub fn append_strings(&self, count: usize) -> LinkState {
        LinkState {
            cups: self.cups.clone(),
            n: self.n + count,
        }
    }

    /// Tokens in point order: `|` for a string, `∪(i,j)` (one-based) for a cup.
    pub fn render(&self) -> String {
        let partners = self.partners();
        let mut out = Vec::new();
        for k in 0..self.n {
            match partners[k] {
                None => out.push("|".to_string()),
                Some(j) if j > k => out.push(format!("∪({},{})", k + 1, j + 1)),
                Some(_) => {}
            }
        }
        if out.is_empty() {
            "∅".to_string()
        } else {
            out.join(" ")
        }
    }

    pub fn to_json(&self) -> Value {
        let cups: Vec<[usize; 2]> = self.cups.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
        json!({"n": self.n, "cups": cups})
    }

    /// `e_i · x` (one-based `i`): `None` if the action increases the cup count,
    /// else the new state and whether a closed loop was removed.
    pub fn act_generator(&self, i: usize) -> Result<Option<(LinkState, bool)>> {
        if i == 0 || i >= self.n {
            return Err(TlError::GeneratorOutOfRange { n: self.n, i });
        }
        let (a, b) = (i - 1, i);
        let partners = self.partners();
        let (pa, pb) = (partners[a], partners[b]);
        if pa == Some(b) {
            return Ok(Some((self.clone(), true)));
        }
        let mut cups: Vec<(usize, usize)> = self
            .cups
            .iter()
            .copied()
            .filter(|&(x, y)| x != a && y != a && x != b && y != b)
            .collect();
        match (pa, pb) {
            (None, None) => return Ok(None),
            (Some(u), Some(v)) => cups.push((u.min(v), u.max(v))),
            _ => {}
        }
        cups.push((a, b));
        cups.sort();
        Ok(Some((LinkState { cups, n: self.n }, false)))
    }

    /// `D · x` with `x` attached at the bottom of `D`: `None` if two strings
    /// of `x` get joined, else the new state and the number of closed loops.
    pub fn act_diagram(&self, d: &Diagram) -> Result<Option<(LinkState, usize)>> {
        let n = self.n;
        if d.n() != n {
            return Err(TlError::SizeMismatch(d.n(), n));
        }
        let xp = self.partners();
        let pos = |label: usize| 2 * n - 1 - label;
        let mut visited = vec![false; n];
        let mut result: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        for t in 0..n {
            if done[t] {
                continue;
            }
            let mut cur = t;
            let end_top = loop {
                let q = d.partner(cur);
                if d.is_top(q) {
                    break Some(q);
                }
                let j = pos(q);
                visited[j] = true;
                match xp[j] {
                    None => break None,
                    Some(k) => {
                        visited[k] = true;
                        cur = d.bottom(k);
                    }
                }
            };
            done[t] = true;
            if let Some(q) = end_top {
                done[q] = true;
                result[t] = Some(q);
                result[q] = Some(t);
            }
        }
        // Strings of x not reached from the top are joined to each other.
        for j in self.strings() {
            if !visited[j] {
                return Ok(None);
            }
        }
        let mut loops = 0;
        for j in 0..n {
            if visited[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                visited[cur] = true;
                let k = xp[cur].expect("unvisited points lie on cups");
                visited[k] = true;
                let up = d.partner(d.bottom(k));
                cur = pos(up);
                if cur == j {
                    break;
                }
            }
        }
        let cups: Vec<(usize, usize)> = (0..n)
            .filter_map(|k| result[k].filter(|&j| j > k).map(|j| (k, j)))
            .collect();
        Ok(Some((LinkState { cups, n }, loops)))
    }
}

/// Loop count of `⟨x, y⟩`, or `None` when the pairing vanishes.
pub fn pair_loops(x: &LinkState, y: &LinkState) -> Result<Option<usize>> {
    if x.n != y.n || x.p() != y.p() {
        return Err(TlError::SizeMismatch(x.n, y.n));
    }
    let n = x.n;
    let xp = x.partners();
    let yp = y.partners();
    let mut visited = vec![false; n];
    // Open paths start at strings of x and must end at strings of y.
    for s in x.strings() {
        if visited[s] {
            continue;
        }
        let mut cur = s;
        visited[cur] = true;
        let mut in_y = true;
        loop {
            let next = if in_y { yp[cur] } else { xp[cur] };
            match next {
                None => {
                    if in_y {
                        break;
                    }
                    return Ok(None);
                }
                Some(k) => {
                    visited[k] = true;
                    cur = k;
                    in_y = !in_y;
                }
            }
        }
    }
    if y.strings().iter().any(|&s| !visited[s]) {
        return Ok(None);
    }
    let mut loops = 0;
    for k in 0..n {
        if visited[k] {
            continue;
        }
        loops += 1;
        let mut cur = k;
        loop {
            visited[cur] = true;
            let a = xp[cur].expect("cup");
            visited[a] = true;
            cur = yp[a].expect("cup");
            if cur == k {
                break;
            }
        }
    }
    Ok(Some(loops))
}

/// The TL element `∥x y∥`: top half from `x`, bottom half the reflection of
/// `y`, strings of `x` joined to strings of `y` in order.
pub fn ket_bra(x: &LinkState, y: &LinkState) -> Result<Diagram> {
    if x.n != y.n || x.p() != y.p() {
        return Err(TlError::SizeMismatch(x.n, y.n));
    }
    let n = x.n;
    let mut pairing = vec![0; 2 * n];
    let bottom = |j: usize| 2 * n - 1 - j;
    for &(a, b) in &x.cups {
        pairing[a] = b;
        pairing[b] = a;
    }
    for &(a, b) in &y.cups {
        pairing[bottom(a)] = bottom(b);
        pairing[bottom(b)] = bottom(a);
    }
    for (s, t) in x.strings().into_iter().zip(y.strings()) {
        pairing[s] = bottom(t);
        pairing[bottom(t)] = s;
    }
    Diagram::from_pairing(n, pairing)
}

fn gen_states(n: usize, pos: usize, open: &mut Vec<usize>, cups_left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<LinkState>) {
    let remaining = n - pos;
    if remaining < open.len() + 2 * cups_left {
        return;
    }
    if pos == n {
        if open.is_empty() && cups_left == 0 {
            let mut cups = cur.clone();
            cups.sort();
            out.push(LinkState { cups, n });
        }
        return;
    }
    // string
    if open.is_empty() {
        gen_states(n, pos + 1, open, cups_left, cur, out);
    }
    // open a cup
    if cups_left > 0 {
        open.push(pos);
        gen_states(n, pos + 1, open, cups_left - 1, cur, out);
        open.pop();
    }
    // close a cup
    if let Some(a) = open.pop() {
        cur.push((a, pos));
        gen_states(n, pos + 1, open, cups_left, cur, out);
        cur.pop();
        open.push(a);
    }
}

/// All `(n,p)`-link states in basis order.
pub fn enumerate_linkstates(n: usize, p: usize) -> Result<Vec<LinkState>> {
    if 2 * p > n {
        return Err(TlError::LabelOutOfRange { n, p });
    }
    let mut out = Vec::new();
    gen_states(n, 0, &mut Vec::new(), p, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Mode-independent data for `V_{n,p}`: basis, index, generator tables and
/// pairing loop counts.
pub struct StandardModule {
    pub n: usize,
    pub p: usize,
    pub basis: Vec<LinkState>,
    index: HashMap<LinkState, usize>,
    /// `actions[i-1][x] = Some((y, loop))` for `e_i · basis[x]`.
    actions: Vec<Vec<Option<(usize, bool)>>>,
    gram_loops: OnceLock<Vec<Option<u8>>>,
}

impl StandardModule {
    pub fn get(n: usize, p: usize) -> Result<Arc<StandardModule>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<StandardModule>>>> = OnceLock::new();
        if 2 * p > n {
            return Err(TlError::LabelOutOfRange { n, p });
        }
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(m) = cache.lock().expect("cache poisoned").get(&(n, p)) {
            return Ok(m.clone());
        }
        let m = Arc::new(StandardModule::build(n, p)?);
        Ok(cache
            .lock()
            .expect("cache poisoned")
            .entry((n, p))
            .or_insert(m)
            .clone())
    }

    fn build(n: usize, p: usize) -> Result<StandardModule> {
        let basis = enumerate_linkstates(n, p)?;
        let index: HashMap<LinkState, usize> =
            basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut actions = Vec::new();
        for i in 1..n {
            let col = basis
                .iter()
                .map(|x| {
                    x.act_generator(i)
                        .map(|r| r.map(|(y, l)| (index[&y], l)))
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(col);
        }
        Ok(StandardModule {
            n,
            p,
            basis,
            index,
            actions,
            gram_loops: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, s: &LinkState) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Image of basis state `x` under `e_i` (one-based).
    pub fn action(&self, i: usize, x: usize) -> Option<(usize, bool)> {
        self.actions[i - 1][x]
    }

    /// Matrix of `e_i` in this basis.
    pub fn generator_matrix(&self, i: usize, mode: &QMode) -> Matrix {
        let delta = mode.delta();
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for x in 0..self.dim() {
            if let Some((y, lp)) = self.action(i, x) {
                m[(y, x)] = if lp { delta.clone() } else { Scalar::one() };
            }
        }
        m
    }

    pub fn gram_loops(&self) -> &[Option<u8>] {
        self.gram_loops.get_or_init(|| {
            let d = self.dim();
            let mut g = vec![None; d * d];
            for i in 0..d {
                for j in i..d {
                    let l = pair_loops(&self.basis[i], &self.basis[j])
                        .expect("same shape")
                        .map(|l| l as u8);
                    g[i * d + j] = l;
                    g[j * d + i] = l;
                }
            }
            g
        })
    }

    pub fn gram(&self, mode: &QMode) -> Matrix {
        let d = self.dim();
        let powers: Vec<Scalar> = (0..=self.n).map(|k| mode.delta().pow(k as u32)).collect();
        let loops = self.gram_loops();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if let Some(l) = loops[i * d + j] {
                    m[(i, j)] = powers[l as usize].clone();
                }
            }
        }
        m
    }

    pub fn vector(&self, coords: &[Scalar]) -> LSVector {
        let mut v = LSVector::zero(self.n, self.p);
        for (i, c) in coords.iter().enumerate() {
            v.add_term(self.basis[i].clone(), c.clone());
        }
        v
    }

    pub fn coords(&self, v: &LSVector) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (s, c) in &v.terms {
            out[self.index[s]] = c.clone();
        }
        out
    }
}

/// Sparse element of `V_{n,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSVector {
    pub n: usize,
    pub p: usize,
    pub terms: BTreeMap<LinkState, Scalar>,
}

impl LSVector {
    pub fn zero(n: usize, p: usize) -> LSVector {
        LSVector {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(s: LinkState) -> LSVector {
        let mut v = LSVector::zero(s.n, s.p());
        v.terms.insert(s, Scalar::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: LinkState, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        debug_assert_eq!((s.n, s.p()), (self.n, self.p));
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &LSVector) -> LSVector {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> LSVector {
        let mut out = LSVector::zero(self.n, self.p);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * k);
        }
        out
    }

    pub fn act_generator(&self, i: usize, mode: &QMode) -> Result<LSVector> {
        if i == 0 || i >= self.n {
            return Err(TlError::GeneratorOutOfRange { n: self.n, i });
        }
        let delta = mode.delta();
        let mut out = LSVector::zero(self.n, self.p);
        for (s, c) in &self.terms {
            if let Some((t, lp)) = s.act_generator(i)? {
                out.add_term(t, if lp { c * &delta } else { c.clone() });
            }
        }
        Ok(out)
    }

    /// Apply a word, rightmost generator first (as the product `e_{w_1}⋯e_{w_k}`).
    pub fn act_word(&self, word: &[usize], mode: &QMode) -> Result<LSVector> {
        let mut v = self.clone();
        for &i in word.iter().rev() {
            v = v.act_generator(i, mode)?;
        }
        Ok(v)
    }

    pub fn act_diagram(&self, d: &Diagram, mode: &QMode) -> Result<LSVector> {
        let delta = mode.delta();
        let mut out = LSVector::zero(self.n, self.p);
        for (s, c) in &self.terms {
            if let Some((t, loops)) = s.act_diagram(d)? {
                out.add_term(t, c * &delta.pow(loops as u32));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, mode: &QMode) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(s, c)| json!({"state": s.to_json()["cups"], "coeff": mode.scalar_json(c)}))
            .collect();
        json!({"n": self.n, "p": self.p, "terms": terms})
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, c)| format!("({c})·[{}]", s.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Bilinear form `⟨x, y⟩`.
pub fn pair(x: &LSVector, y: &LSVector, mode: &QMode) -> Result<Scalar> {
    if (x.n, x.p) != (y.n, y.p) {
        return Err(TlError::SizeMismatch(x.n, y.n));
    }
    let delta = mode.delta();
    let mut total = Scalar::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if let Some(l) = pair_loops(a, b)? {
                total += &(&(ca * cb) * &delta.pow(l as u32));
            }
        }
    }
    Ok(total)
}

pub fn gram(n: usize, p: usize, mode: &QMode) -> Result<Matrix> {
    Ok(StandardModule::get(n, p)?.gram(mode))
}

/// Reduced-echelon nullspace basis of the Gram matrix, as vectors.
pub fn radical_basis(n: usize, p: usize, mode: &QMode) -> Result<Vec<LSVector>> {
    let m = StandardModule::get(n, p)?;
    Ok(m.gram(mode).nullspace().iter().map(|v| m.vector(v)).collect())
}

pub fn gram_nullity(n: usize, p: usize, mode: &QMode) -> Result<usize> {
    Ok(StandardModule::get(n, p)?.gram(mode).nullity())
}

/// Shape of the radical `R_{n,p}` inside `V_{n,p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalShape {
    Zero,
    Proper,
    Full,
}

impl fmt::Display for RadicalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadicalShape::Zero => "zero",
            RadicalShape::Proper => "proper",
            RadicalShape::Full => "full",
        })
    }
}

/// How to read the case "`0 ≤ n-2p+1 < l` gives a zero radical".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremReading {
    /// Literally: only labels with fewer than `l - 1` strings.
    AsStated,
    /// With `n - 2p + 1 = kl + r`, `1 ≤ r < l`: zero radical iff `p < l - r`.
    /// This is what the Gram matrices show, e.g. `V_{n,0}` is never degenerate.
    Corrected,
}

pub fn predicted_radical(n: usize, p: usize, mode: &QMode, reading: TheoremReading) -> RadicalShape {
    let Some(l) = mode.minimal_l() else {
        return RadicalShape::Zero;
    };
    if l == 1 || (l == 2 && n % 2 == 1) {
        return RadicalShape::Zero;
    }
    let v = n - 2 * p + 1;
    if v.is_multiple_of(l) {
        return RadicalShape::Zero;
    }
    if l == 2 && n == 2 * p && n > 0 {
        return RadicalShape::Full;
    }
    let zero = match reading {
        TheoremReading::AsStated => v < l,
        TheoremReading::Corrected => p < l - v % l,
    };
    if zero {
        RadicalShape::Zero
    } else {
        RadicalShape::Proper
    }
}

/// The radical shape read off the Gram matrix.
pub fn radical_shape(n: usize, p: usize, mode: &QMode) -> Result<RadicalShape> {
    let nullity = gram_nullity(n, p, mode)?;
    Ok(if nullity == 0 {
        RadicalShape::Zero
    } else if nullity == d_np(n, p) {
        RadicalShape::Full
    } else {
        RadicalShape::Proper
    })
}

/// Irreducible dimension by the recursion on `r(n,p)`; `d_{n,p}` for generic `q`.
pub fn l_dim(n: usize, p: usize, mode: &QMode) -> usize {
    let Some(l) = mode.minimal_l() else {
        return d_np(n, p);
    };
    let mut memo = HashMap::new();
    l_dim_rec(n, p, l, &mut memo)
}

fn l_dim_rec(n: usize, p: usize, l: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
    if 2 * p > n {
        return 0;
    }
    if p == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(&(n, p)) {
        return v;
    }
    let v = n - 2 * p + 1;
    let r = (v - 1) % l + 1;
    let out = if r == l {
        d_np(n, p)
    } else if r == l - 1 {
        l_dim_rec(n - 1, p, l, memo)
    } else {
        l_dim_rec(n - 1, p, l, memo) + l_dim_rec(n - 1, p - 1, l, memo)
    };
    memo.insert((n, p), out);
    out
}

/// Row `n` of the Bratteli diagram: labels `(n,p)` left to right by string
/// count `n-2p`, with a bar on every critical line that passes between them.
/// In generic mode there are no bars.
pub fn bratteli_row(n: usize, mode: &QMode) -> String {
    let l = mode.minimal_l();
    let mut tokens = Vec::new();
    for c in 0..=n + 1 {
        if c % 2 == n % 2 && c <= n {
            tokens.push(format!("({},{})", n, (n - c) / 2));
        } else if l.is_some_and(|l| (c + 1) % l == 0) {
            tokens.push("|".to_string());
        }
    }
    tokens.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(d_np(2, 1), 1);
        assert_eq!(d_np(4, 1), 3);
        assert_eq!(d_np(5, 2), 5);
        for n in 0..=10 {
            for p in 0..=n / 2 {
                assert_eq!(enumerate_linkstates(n, p).unwrap().len(), d_np(n, p));
            }
        }
        assert!(enumerate_linkstates(3, 2).is_err());
    }

    #[test]
    fn basis_order() {
        let b = enumerate_linkstates(4, 2).unwrap();
        assert_eq!(b[0].cups(), &[(0, 1), (2, 3)]);
        assert_eq!(b[1].cups(), &[(0, 3), (1, 2)]);
        let b = enumerate_linkstates(3, 1).unwrap();
        assert_eq!(b[0].cups(), &[(0, 1)]);
        assert_eq!(b[1].cups(), &[(1, 2)]);
    }

    #[test]
    fn generator_examples() {
        let mode = QMode::Generic;
        let v = LSVector::basis(LinkState::all_strings(3));
        assert!(v.act_generator(1, &mode).unwrap().is_zero());
        let c1 = LSVector::basis(LinkState::new(2, vec![(0, 1)]).unwrap());
        assert_eq!(c1.act_generator(1, &mode).unwrap(), c1.scale(&mode.delta()));
        let c1 = LinkState::new(3, vec![(0, 1)]).unwrap();
        let c2 = LinkState::new(3, vec![(1, 2)]).unwrap();
        assert_eq!(c1.act_generator(2).unwrap(), Some((c2, false)));
    }

    #[test]
    fn pair_examples() {
        let c1 = LinkState::new(3, vec![(0, 1)]).unwrap();
        let c2 = LinkState::new(3, vec![(1, 2)]).unwrap();
        assert_eq!(pair_loops(&c1, &c2).unwrap(), Some(0));
        assert_eq!(pair_loops(&c1, &c1).unwrap(), Some(1));
        let a = LinkState::new(4, vec![(0, 1)]).unwrap();
        let b = LinkState::new(4, vec![(2, 3)]).unwrap();
        assert_eq!(pair_loops(&a, &b).unwrap(), None);
    }

    #[test]
    fn gram_3_1() {
        let mode = QMode::Generic;
        let d = mode.delta();
        let g = gram(3, 1, &mode).unwrap();
        assert_eq!(g, Matrix::from_rows(vec![vec![d.clone(), Scalar::one()], vec![Scalar::one(), d.clone()]]));
        let g4 = gram(4, 1, &mode).unwrap();
        assert_eq!(g4.det(), &d.pow(3) - &(&Scalar::int(2) * &d));
    }

    #[test]
    fn zero_point_module() {
        let m = StandardModule::get(0, 0).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.gram(&QMode::Generic), Matrix::identity(1));
    }

    #[test]
    fn diagram_action_matches_words() {
        let mode = QMode::RootOfUnity { m: 8 };
        for n in 1..=5 {
            let words = crate::diagrams::reduced_words(n);
            for p in 0..=n / 2 {
                for x in enumerate_linkstates(n, p).unwrap() {
                    let v = LSVector::basis(x);
                    for (d, w) in words.iter() {
                        assert_eq!(v.act_diagram(d, &mode).unwrap(), v.act_word(w, &mode).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn l_dim_examples() {
        let m6 = QMode::RootOfUnity { m: 6 };
        assert_eq!(l_dim(3, 1, &m6), 1);
        for p in 1..=5 {
            assert_eq!(l_dim(2 * p, p, &m6), 1);
        }
        for n in 0..10 {
            assert_eq!(l_dim(n, 0, &m6), 1);
        }
    }
}
