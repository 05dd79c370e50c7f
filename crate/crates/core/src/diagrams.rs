//! Temperley-Lieb diagrams: planar perfect matchings on `n` top and `n`
//! bottom points.
//!
//! Endpoints are labelled around the boundary: top points `0..n` left to
//! right, then bottom points `n..2n` right to left. Bottom position `j`
//! (counted from the left) therefore has label `2n - 1 - j`, and planarity is
//! exactly balanced nesting of the label sequence.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::error::{Result, TlError};
use crate::scalars::{QMode, Scalar};

pub const DEFAULT_ENUM_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    pairing: Vec<usize>,
}

impl Diagram {
    pub fn identity(n: usize) -> Diagram {
        let mut pairing = vec![0; 2 * n];
        for i in 0..n {
            pairing[i] = 2 * n - 1 - i;
            pairing[2 * n - 1 - i] = i;
        }
        Diagram { n, pairing }
    }

    /// `e_i` for `1 ≤ i ≤ n-1`.
    pub fn generator(n: usize, i: usize) -> Result<Diagram> {
        if i == 0 || i >= n {
            return Err(TlError::GeneratorOutOfRange { n, i });
        }
        let mut d = Diagram::identity(n);
        let (a, b) = (i - 1, i);
        let (ba, bb) = (d.bottom(a), d.bottom(b));
        d.pairing[a] = b;
        d.pairing[b] = a;
        d.pairing[ba] = bb;
        d.pairing[bb] = ba;
        Ok(d)
    }

    /// Build from a pairing array on boundary labels; checks involution and
    /// planarity.
    pub fn from_pairing(n: usize, pairing: Vec<usize>) -> Result<Diagram> {
        let d = Diagram { n, pairing };
        if d.pairing.len() != 2 * n || !d.is_valid() {
            return Err(TlError::Invalid(format!("not a planar matching: {:?}", d.pairing)));
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn partner(&self, label: usize) -> usize {
        self.pairing[label]
    }

    /// Label of bottom position `j`.
    pub fn bottom(&self, j: usize) -> usize {
        2 * self.n - 1 - j
    }

    pub fn is_top(&self, label: usize) -> bool {
        label < self.n
    }

    pub fn is_valid(&self) -> bool {
        let m = self.pairing.len();
        let mut stack = Vec::new();
        for a in 0..m {
            let b = self.pairing[a];
            if b >= m || b == a || self.pairing[b] != a {
                return false;
            }
            if b > a {
                stack.push(a);
            } else if stack.pop() != Some(b) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Number of through-strings.
    pub fn through_strings(&self) -> usize {
        (0..self.n).filter(|&a| !self.is_top(self.pairing[a])).count()
    }

    /// Vertical reflection.
    pub fn transpose(&self) -> Diagram {
        let n = self.n;
        let flip = |a: usize| 2 * n - 1 - a;
        let mut pairing = vec![0; 2 * n];
        for a in 0..2 * n {
            pairing[flip(a)] = flip(self.pairing[a]);
        }
        Diagram { n, pairing }
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<[usize; 2]> = (0..2 * self.n)
            .filter(|&a| a < self.pairing[a])
            .map(|a| [a + 1, self.pairing[a] + 1])
            .collect();
        json!({"n": self.n, "pairs": pairs})
    }

    /// One line per chord: `top i - bottom j`, `top i ∪ top j`, `bottom i ∩ bottom j`.
    pub fn render(&self) -> String {
        let n = self.n;
        let pos = |a: usize| if a < n { ("t", a + 1) } else { ("b", 2 * n - a) };
        let mut parts = Vec::new();
        for a in 0..2 * n {
            let b = self.pairing[a];
            if a < b {
                let (sa, ia) = pos(a);
                let (sb, ib) = pos(b);
                parts.push(format!("{sa}{ia}-{sb}{ib}"));
            }
        }
        parts.join(" ")
    }
}

/// Stack `a` above `b` (bottom of `a` glued to top of `b`); returns the
/// resulting diagram and the number of closed loops removed.
pub fn compose(a: &Diagram, b: &Diagram) -> Result<(Diagram, usize)> {
    if a.n != b.n {
        return Err(TlError::SizeMismatch(a.n, b.n));
    }
    let n = a.n;
    // Middle position j is a's bottom(j) and b's top j.
    let mut visited = vec![false; n];
    let mut pairing = vec![usize::MAX; 2 * n];
    // Outer endpoints: a's tops are result tops; b's bottoms are result bottoms.
    let trace = |start_in_a: bool, label: usize, visited: &mut Vec<bool>| -> usize {
        let mut in_a = start_in_a;
        let mut cur = label;
        loop {
            let d = if in_a { a } else { b };
            let q = d.partner(cur);
            if in_a {
                if d.is_top(q) {
                    return q;
                }
                let j = 2 * n - 1 - q;
                visited[j] = true;
                in_a = false;
                cur = j;
            } else {
                if !d.is_top(q) {
                    return q;
                }
                visited[q] = true;
                in_a = true;
                cur = 2 * n - 1 - q;
            }
        }
    };
    for t in 0..n {
        if pairing[t] == usize::MAX {
            let end = trace(true, t, &mut visited);
            pairing[t] = end;
            pairing[end] = t;
        }
    }
    for j in 0..n {
        let label = 2 * n - 1 - j;
        if pairing[label] == usize::MAX {
            let end = trace(false, label, &mut visited);
            pairing[label] = end;
            pairing[end] = label;
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
            let down = b.partner(cur);
            debug_assert!(b.is_top(down));
            let up = a.partner(2 * n - 1 - down);
            visited[down] = true;
            cur = 2 * n - 1 - up;
            if cur == j {
                break;
            }
        }
    }
    let d = Diagram { n, pairing };
    debug_assert!(d.is_valid());
    Ok((d, loops))
}

/// Formal linear combination of diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiagramVector {
    pub terms: BTreeMap<Diagram, Scalar>,
}

impl DiagramVector {
    pub fn zero() -> DiagramVector {
        DiagramVector::default()
    }

    pub fn single(d: Diagram, c: Scalar) -> DiagramVector {
        let mut v = DiagramVector::zero();
        v.add_term(d, c);
        v
    }

    pub fn add_term(&mut self, d: Diagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
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

    pub fn add(&self, rhs: &DiagramVector) -> DiagramVector {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> DiagramVector {
        let mut out = DiagramVector::zero();
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &DiagramVector, mode: &QMode) -> Result<DiagramVector> {
        let delta = mode.delta();
        let mut out = DiagramVector::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (d, loops) = compose(a, b)?;
                out.add_term(d, &(ca * cb) * &delta.pow(loops as u32));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Compose a generator word left to right; returns the diagram and total loops.
pub fn word_diagram(n: usize, word: &[usize]) -> Result<(Diagram, usize)> {
    let mut d = Diagram::identity(n);
    let mut loops = 0;
    for &i in word {
        let (e, l) = compose(&d, &Diagram::generator(n, i)?)?;
        d = e;
        loops += l;
    }
    Ok((d, loops))
}

/// `e_{w_1} e_{w_2} ⋯` as a one-term diagram vector.
pub fn eval_word(n: usize, word: &[usize], mode: &QMode) -> Result<DiagramVector> {
    let (d, loops) = word_diagram(n, word)?;
    Ok(DiagramVector::single(d, mode.delta().pow(loops as u32)))
}

fn matchings(labels: &[usize], out: &mut Vec<Vec<(usize, usize)>>, acc: &mut Vec<(usize, usize)>) {
    if labels.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = labels[0];
    for k in (1..labels.len()).step_by(2) {
        acc.push((first, labels[k]));
        let inner = &labels[1..k];
        let outer = &labels[k + 1..];
        let mut inner_out = Vec::new();
        matchings(inner, &mut inner_out, &mut Vec::new());
        let mut outer_out = Vec::new();
        matchings(outer, &mut outer_out, &mut Vec::new());
        for i in &inner_out {
            for o in &outer_out {
                let mut full = acc.clone();
                full.extend(i.iter().copied());
                full.extend(o.iter().copied());
                out.push(full);
            }
        }
        acc.pop();
    }
}

/// All diagrams on `n` strands, sorted.
pub fn enumerate_diagrams(n: usize, bound: usize) -> Result<Vec<Diagram>> {
    if n > bound {
        return Err(TlError::BoundExceeded { n, bound });
    }
    let labels: Vec<usize> = (0..2 * n).collect();
    let mut all = Vec::new();
    matchings(&labels, &mut all, &mut Vec::new());
    let mut out: Vec<Diagram> = all
        .into_iter()
        .map(|pairs| {
            let mut pairing = vec![0; 2 * n];
            for (a, b) in pairs {
                pairing[a] = b;
                pairing[b] = a;
            }
            Diagram { n, pairing }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// A shortest loop-free generator word for every diagram on `n` strands.
pub fn reduced_words(n: usize) -> Arc<HashMap<Diagram, Vec<usize>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HashMap<Diagram, Vec<usize>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(w) = cache.lock().expect("cache poisoned").get(&n) {
        return w.clone();
    }
    let mut words: HashMap<Diagram, Vec<usize>> = HashMap::new();
    let id = Diagram::identity(n);
    words.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<Diagram> = (1..n).map(|i| Diagram::generator(n, i).expect("in range")).collect();
    while let Some(d) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            let (e, loops) = compose(&d, g).expect("same size");
            if loops == 0 && !words.contains_key(&e) {
                let mut w = words[&d].clone();
                w.push(k + 1);
                words.insert(e.clone(), w);
                queue.push_back(e);
            }
        }
    }
    let words = Arc::new(words);
    cache.lock().expect("cache poisoned").insert(n, words.clone());
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shapes() {
        let e = Diagram::generator(2, 1).unwrap();
        assert_eq!(e.pairing(), &[1, 0, 3, 2]);
        let e = Diagram::generator(3, 2).unwrap();
        // top1-bot1, top2-top3, bot2-bot3
        assert_eq!(e.partner(0), e.bottom(0));
        assert_eq!(e.partner(1), 2);
        assert_eq!(e.partner(e.bottom(1)), e.bottom(2));
        assert!(Diagram::generator(3, 3).is_err());
        assert!(Diagram::generator(3, 0).is_err());
    }

    #[test]
    fn square_gives_one_loop() {
        for n in 2..=5 {
            for i in 1..n {
                let e = Diagram::generator(n, i).unwrap();
                assert_eq!(compose(&e, &e).unwrap(), (e.clone(), 1));
            }
        }
    }

    #[test]
    fn braid_like_relation() {
        let e1 = Diagram::generator(3, 1).unwrap();
        let (d, l) = word_diagram(3, &[1, 2, 1]).unwrap();
        assert_eq!((d, l), (e1, 0));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_diagrams(n, 8).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        assert!(enumerate_diagrams(9, 8).is_err());
    }

    #[test]
    fn reduced_words_reach_everything() {
        for n in 1..=6 {
            let w = reduced_words(n);
            assert_eq!(w.len(), enumerate_diagrams(n, 8).unwrap().len());
            for (d, word) in w.iter() {
                assert_eq!(&word_diagram(n, word).unwrap(), &(d.clone(), 0));
            }
        }
    }

    #[test]
    fn json_uses_one_based_pairs() {
        let e = Diagram::generator(2, 1).unwrap();
        assert_eq!(e.to_json(), json!({"n": 2, "pairs": [[1, 2], [3, 4]]}));
    }
}
