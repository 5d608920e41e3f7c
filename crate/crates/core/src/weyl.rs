//! Weyl groups acting on h* (simple-root basis), Bruhat order, diagram
//! automorphisms and twisted conjugacy classes in W.
//!
//! Elements are stored as exact integer matrices together with one reduced word.
//! For type A the permutation view uses `ẇ e_k = e_{w(k)}` and `(uv)(k) = u(v(k))`,
//! with `s_i` the transposition of `i` and `i+1`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::IntMatrix;
use crate::rootdata::{build_root_datum, RootDatum, TypeLabel};

/// Largest group that may be enumerated by brute force.
pub const ENUMERATION_LIMIT: usize = 10_000;

#[derive(Clone)]
pub struct WeylElement {
    datum: Arc<RootDatum>,
    action: IntMatrix,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.datum.label() == other.datum.label() && self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.datum.label().hash(state);
        self.action.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({}, {})", self.datum.label(), self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        match self.datum.label() {
            TypeLabel::A(_) | TypeLabel::ProductA { .. } => {
                let blocks = self.block_perms().expect("type A element");
                let mut parts = Vec::new();
                for (b, p) in blocks.iter().enumerate() {
                    let cycles = cycle_notation(p);
                    if cycles.is_empty() {
                        continue;
                    }
                    if blocks.len() > 1 {
                        parts.push(format!("[{}]{}", b + 1, cycles));
                    } else {
                        parts.push(cycles);
                    }
                }
                write!(f, "{}", parts.join(" "))
            }
            TypeLabel::D4 => {
                let w: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
                write!(f, "{}", w.join(""))
            }
        }
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cyc.push((k + 1).to_string());
            k = p[k];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    out
}

/// Right-multiply an action matrix by `s_i`: column `j` becomes `c_j - A_ij c_i`.
fn times_simple(m: &IntMatrix, cartan: &IntMatrix, i: usize) -> IntMatrix {
    let k = m.nrows();
    let mut out = m.clone();
    for j in 0..k {
        let a = cartan[(i, j)];
        if a != 0 && j != i {
            for r in 0..k {
                out[(r, j)] -= a * m[(r, i)];
            }
        }
    }
    for r in 0..k {
        out[(r, i)] = -m[(r, i)];
    }
    out
}

/// `w(α_i) < 0` iff the i-th column is non-positive (and nonzero).
fn is_right_descent(m: &IntMatrix, i: usize) -> bool {
    (0..m.nrows()).all(|r| m[(r, i)] <= 0)
}

fn reduced_word(m: &IntMatrix, cartan: &IntMatrix) -> Vec<usize> {
    let k = m.nrows();
    let mut cur = m.clone();
    let mut rev = Vec::new();
    'outer: loop {
        for i in 0..k {
            if is_right_descent(&cur, i) {
                cur = times_simple(&cur, cartan, i);
                rev.push(i);
                continue 'outer;
            }
        }
        break;
    }
    debug_assert_eq!(cur, IntMatrix::identity(k));
    rev.reverse();
    rev
}

impl WeylElement {
    fn from_action(datum: Arc<RootDatum>, action: IntMatrix) -> Self {
        let word = reduced_word(&action, datum.cartan_matrix());
        WeylElement {
            datum,
            action,
            word,
        }
    }

    pub fn label(&self) -> TypeLabel {
        self.datum.label()
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// Action on h* in the simple-root basis.
    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    /// A reduced word (0-based simple-reflection indices, leftmost factor first).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    fn same_group(&self, other: &WeylElement) -> Result<()> {
        if self.label() != other.label() {
            return Err(Error::domain(format!(
                "Weyl elements from different groups ({} and {})",
                self.label(),
                other.label()
            )));
        }
        Ok(())
    }

    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.same_group(other)?;
        Ok(WeylElement::from_action(
            self.datum.clone(),
            &self.action * &other.action,
        ))
    }

    pub fn inverse(&self) -> WeylElement {
        // The action is orthogonal for the invariant form A: w⁻¹ = A⁻¹ wᵀ A.
        // Reversing the word is simpler and exact.
        let k = self.datum.rank();
        let mut m = IntMatrix::identity(k);
        for &i in self.word.iter().rev() {
            m = times_simple(&m, self.datum.cartan_matrix(), i);
        }
        WeylElement {
            datum: self.datum.clone(),
            action: m,
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// Right multiplication by `s_i`.
    pub fn times_simple(&self, i: usize) -> WeylElement {
        WeylElement::from_action(
            self.datum.clone(),
            times_simple(&self.action, self.datum.cartan_matrix(), i),
        )
    }

    /// Apply to a vector of simple-root coefficients.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.action.apply(v)
    }

    /// One permutation per block (type A and products of type A).
    pub fn block_perms(&self) -> Option<Vec<Vec<usize>>> {
        let (size, blocks) = self.datum.matrix_shape()?;
        let n = size - 1;
        let mut perms = vec![(0..size).collect::<Vec<_>>(); blocks];
        for &i in &self.word {
            let (b, j) = (i / n, i % n);
            perms[b].swap(j, j + 1);
        }
        Some(perms)
    }

    /// The permutation of `{0..n}` for type A_n.
    pub fn perm(&self) -> Option<Vec<usize>> {
        match self.label() {
            TypeLabel::A(_) => self.block_perms().map(|mut p| p.remove(0)),
            _ => None,
        }
    }

    /// JSON summary: 1-based reduced word, length and (type A) the 1-based permutation.
    pub fn report(&self) -> WeylElementReport {
        WeylElementReport {
            name: self.to_string(),
            word: self.word.iter().map(|i| i + 1).collect(),
            length: self.length(),
            perm: self
                .perm()
                .map(|p| p.into_iter().map(|x| x + 1).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylElementReport {
    pub name: String,
    pub word: Vec<usize>,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

/// Permutation of the simple-root indices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAut {
    perm: Vec<usize>,
}

impl DiagramAut {
    pub fn new(perm: Vec<usize>, datum: &RootDatum) -> Result<Self> {
        let k = datum.rank();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::domain("diagram automorphism is not a permutation of the simple roots"));
        }
        let a = datum.cartan_matrix();
        for i in 0..k {
            for j in 0..k {
                if a[(perm[i], perm[j])] != a[(i, j)] {
                    return Err(Error::domain(format!(
                        "permutation does not preserve the Cartan matrix at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(DiagramAut { perm })
    }

    pub fn identity(k: usize) -> Self {
        DiagramAut {
            perm: (0..k).collect(),
        }
    }

    /// α_i ↦ α_{n+1-i} on A_n.
    pub fn flip(n: usize) -> Self {
        DiagramAut {
            perm: (0..n).rev().collect(),
        }
    }

    /// α_i^{(c)} ↦ α_i^{(c-1)} on `copies` copies of A_n: the diagram action of the
    /// cyclic shift `(g_1, …, g_m) ↦ (g_2, …, g_m, g_1)`.
    pub fn cyclic_shift(n: usize, copies: usize) -> Self {
        DiagramAut {
            perm: (0..copies)
                .flat_map(|c| (0..n).map(move |i| ((c + copies - 1) % copies) * n + i))
                .collect(),
        }
    }

    /// α_i ↦ α_{σ(i)} with σ = (1 3 4), fixing α_2.
    pub fn d4_triality() -> Self {
        DiagramAut {
            perm: vec![2, 1, 3, 0],
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Matrix on h* in the simple-root basis: `e_i ↦ e_{σ(i)}`.
    pub fn matrix(&self) -> IntMatrix {
        let k = self.perm.len();
        IntMatrix::from_fn(k, k, |r, c| (self.perm[c] == r) as i64)
    }

    /// θ(w) = θ w θ⁻¹, i.e. `s_i ↦ s_{σ(i)}` letter by letter.
    pub fn apply_weyl(&self, w: &WeylElement) -> Result<WeylElement> {
        if self.perm.len() != w.datum.rank() {
            return Err(Error::domain("diagram automorphism and Weyl element have different ranks"));
        }
        let p = self.matrix();
        let pt = p.transpose();
        Ok(WeylElement::from_action(w.datum.clone(), &(&p * &w.action) * &pt))
    }
}

/// The Weyl group of a root datum, with a lazily built element list.
#[derive(Debug)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: OnceLock<Vec<WeylElement>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        WeylGroup {
            datum: Arc::new(datum),
            elements: OnceLock::new(),
        }
    }

    pub fn of_type(label: TypeLabel) -> Result<Self> {
        Ok(WeylGroup::new(build_root_datum(label)?))
    }

    /// S_{n+1}.
    pub fn type_a(n: usize) -> Result<Self> {
        Self::of_type(TypeLabel::A(n))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn label(&self) -> TypeLabel {
        self.datum.label()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        fn fact(n: usize) -> usize {
            (1..=n).product()
        }
        match self.label() {
            TypeLabel::A(n) => fact(n + 1),
            TypeLabel::D4 => 192,
            TypeLabel::ProductA { n, copies } => fact(n + 1).saturating_pow(copies as u32),
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            datum: self.datum.clone(),
            action: IntMatrix::identity(self.rank()),
            word: Vec::new(),
        }
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        self.identity().times_simple(i)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let k = self.rank();
        if let Some(&bad) = word.iter().find(|&&i| i >= k) {
            return Err(Error::domain(format!("simple reflection index {} out of range", bad + 1)));
        }
        let mut m = IntMatrix::identity(k);
        for &i in word {
            m = times_simple(&m, self.datum.cartan_matrix(), i);
        }
        Ok(WeylElement::from_action(self.datum.clone(), m))
    }

    /// Element with the given action matrix; rejects matrices outside W.
    pub fn from_action(&self, action: IntMatrix) -> Result<WeylElement> {
        let k = self.rank();
        if action.nrows() != k || action.ncols() != k {
            return Err(Error::domain("action matrix has the wrong size"));
        }
        // Descent reduction terminates at the identity exactly for elements of W
        // (at most |Δ₊| steps).
        let mut cur = action.clone();
        for _ in 0..=self.datum.longest_element_length() {
            match (0..k).find(|&i| is_right_descent(&cur, i)) {
                Some(i) => cur = times_simple(&cur, self.datum.cartan_matrix(), i),
                None => break,
            }
        }
        if cur != IntMatrix::identity(k) {
            return Err(Error::domain("matrix is not the action of a Weyl group element"));
        }
        Ok(WeylElement::from_action(self.datum.clone(), action))
    }

    /// Type A element from a 0-based permutation of `{0..n}`.
    pub fn from_perm(&self, perm: &[usize]) -> Result<WeylElement> {
        self.from_block_perms(&[perm.to_vec()])
    }

    /// Element of a product of type-A groups from one permutation per block.
    pub fn from_block_perms(&self, perms: &[Vec<usize>]) -> Result<WeylElement> {
        let (size, blocks) = self
            .datum
            .matrix_shape()
            .ok_or_else(|| Error::domain(format!("{} has no permutation model", self.label())))?;
        if perms.len() != blocks {
            return Err(Error::domain(format!("expected {blocks} permutations")));
        }
        let mut word = Vec::new();
        for (b, p) in perms.iter().enumerate() {
            let mut seen = vec![false; size];
            if p.len() != size || p.iter().any(|&x| x >= size || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::domain(format!(
                    "not a permutation of {{1..{size}}}: {:?}",
                    p.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            // Bubble sort p to the identity with adjacent swaps on positions:
            // p = q s_j ⇔ q = p s_j, so the swaps read backwards give a word for p.
            let mut q = p.clone();
            let mut rev = Vec::new();
            loop {
                match (0..size - 1).find(|&j| q[j] > q[j + 1]) {
                    Some(j) => {
                        q.swap(j, j + 1);
                        rev.push(b * (size - 1) + j);
                    }
                    None => break,
                }
            }
            rev.reverse();
            word.extend(rev);
        }
        self.from_word(&word)
    }

    /// The longest element, obtained by climbing ascents.
    pub fn longest(&self) -> WeylElement {
        let k = self.rank();
        let mut w = self.identity();
        'outer: loop {
            for i in 0..k {
                if !is_right_descent(&w.action, i) {
                    w = w.times_simple(i);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Every element of W (breadth-first by length).
    pub fn elements(&self) -> Result<&[WeylElement]> {
        let order = self.order();
        if order > ENUMERATION_LIMIT {
            return Err(Error::Capacity {
                what: "Weyl group",
                size: order,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(self.elements.get_or_init(|| {
            let mut seen: HashSet<IntMatrix> = HashSet::new();
            let mut out = Vec::with_capacity(order);
            let mut queue = VecDeque::new();
            let e = self.identity();
            seen.insert(e.action.clone());
            queue.push_back(e);
            while let Some(w) = queue.pop_front() {
                for i in 0..self.rank() {
                    if !is_right_descent(&w.action, i) {
                        let ws = w.times_simple(i);
                        if seen.insert(ws.action.clone()) {
                            queue.push_back(ws);
                        }
                    }
                }
                out.push(w);
            }
            debug_assert_eq!(out.len(), order);
            out
        }))
    }

    /// Reflections `s_β`, one per positive root (in root order).
    pub fn reflections(&self) -> Vec<WeylElement> {
        self.datum
            .positive_roots()
            .iter()
            .map(|b| WeylElement::from_action(self.datum.clone(), self.datum.reflection(b)))
            .collect()
    }

    pub fn reflection(&self, beta: &[i64]) -> WeylElement {
        WeylElement::from_action(self.datum.clone(), self.datum.reflection(beta))
    }

    fn check(&self, w: &WeylElement) -> Result<()> {
        if w.label() != self.label() {
            return Err(Error::domain(format!(
                "element of {} used with the Weyl group of {}",
                w.label(),
                self.label()
            )));
        }
        Ok(())
    }

    /// All subwords of the reduced word of `w`, as group elements.
    pub fn bruhat_interval_below(&self, w: &WeylElement) -> Result<HashSet<WeylElement>> {
        self.check(w)?;
        let mut set: HashSet<WeylElement> = HashSet::new();
        set.insert(self.identity());
        for &i in &w.word {
            let extra: Vec<WeylElement> = set.iter().map(|x| x.times_simple(i)).collect();
            set.extend(extra);
        }
        Ok(set)
    }

    /// Covers `w ⋖ w s_β` (length goes up by exactly one).
    pub fn upper_covers(&self, w: &WeylElement) -> Result<Vec<WeylElement>> {
        self.check(w)?;
        let mut out: Vec<WeylElement> = self
            .reflections()
            .iter()
            .map(|s| w.compose(s).expect("same group"))
            .filter(|ws| ws.length() == w.length() + 1)
            .collect();
        out.sort_by(|a, b| a.word.cmp(&b.word));
        out.dedup();
        Ok(out)
    }

    /// {v w θ(v)⁻¹ : v ∈ W}, sorted by length then reduced word.
    pub fn twisted_class(&self, w: &WeylElement, theta: &DiagramAut) -> Result<Vec<WeylElement>> {
        self.check(w)?;
        let order = self.order();
        if order > ENUMERATION_LIMIT {
            return Err(Error::Capacity {
                what: "Weyl group",
                size: order,
                limit: ENUMERATION_LIMIT,
            });
        }
        let gens: Vec<(WeylElement, WeylElement)> = (0..self.rank())
            .map(|i| (self.simple(i), self.simple(theta.apply_index(i))))
            .collect();
        let mut seen: HashSet<WeylElement> = HashSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for (s, ts) in &gens {
                // s x θ(s)⁻¹ with θ(s) an involution.
                let y = s.compose(&x)?.compose(ts)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut class: Vec<WeylElement> = seen.into_iter().collect();
        class.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word.cmp(&b.word)));
        Ok(class)
    }

    /// Partition of W into θ-twisted classes.
    pub fn twisted_classes(&self, theta: &DiagramAut) -> Result<Vec<Vec<WeylElement>>> {
        let mut assigned: HashMap<WeylElement, usize> = HashMap::new();
        let mut classes = Vec::new();
        for w in self.elements()? {
            if assigned.contains_key(w) {
                continue;
            }
            let class = self.twisted_class(w, theta)?;
            for x in &class {
                assigned.insert(x.clone(), classes.len());
            }
            classes.push(class);
        }
        Ok(classes)
    }
}

/// `u ≤ w` in the Bruhat order (subword criterion on the reduced word of `w`).
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    u.same_group(w)?;
    if u.length() > w.length() {
        return Ok(false);
    }
    if u.length() == w.length() {
        return Ok(u == w);
    }
    let mut set: HashSet<WeylElement> = HashSet::new();
    set.insert(WeylElement {
        datum: w.datum.clone(),
        action: IntMatrix::identity(w.datum.rank()),
        word: Vec::new(),
    });
    for &i in &w.word {
        let extra: Vec<WeylElement> = set.iter().map(|x| x.times_simple(i)).collect();
        set.extend(extra);
        if set.contains(u) {
            return Ok(true);
        }
    }
    Ok(set.contains(u))
}

/// `m_l = (1, n+1)(2, n)⋯(l, n+2-l)` in S_{n+1}.
pub fn m_l(n: usize, l: usize) -> Result<WeylElement> {
    if n == 0 {
        return Err(Error::domain("m_l requires n ≥ 1"));
    }
    if l > (n + 1) / 2 {
        return Err(Error::domain(format!(
            "l = {l} out of range for S_{} (need l ≤ {})",
            n + 1,
            (n + 1) / 2
        )));
    }
    let group = WeylGroup::type_a(n)?;
    let mut p: Vec<usize> = (0..=n).collect();
    for k in 0..l {
        p.swap(k, n - k);
    }
    group.from_perm(&p)
}

/// The unique element of maximal length; ties are reported, not resolved.
pub fn max_length_element(class: &[WeylElement]) -> Result<WeylElement> {
    let max = class
        .iter()
        .map(WeylElement::length)
        .max()
        .ok_or_else(|| Error::domain("empty class"))?;
    let top: Vec<&WeylElement> = class.iter().filter(|w| w.length() == max).collect();
    if top.len() > 1 {
        return Err(Error::Ambiguous {
            length: max,
            candidates: top.iter().map(|w| w.word.iter().map(|i| i + 1).collect()).collect(),
        });
    }
    Ok(top[0].clone())
}

/// Number of inversions of a permutation.
pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> WeylGroup {
        WeylGroup::type_a(2).unwrap()
    }

    #[test]
    fn orders_and_longest() {
        for n in 1..=4 {
            let g = WeylGroup::type_a(n).unwrap();
            assert_eq!(g.elements().unwrap().len(), g.order());
            assert_eq!(g.longest().length(), n * (n + 1) / 2);
        }
        let d4 = WeylGroup::of_type(TypeLabel::D4).unwrap();
        assert_eq!(d4.elements().unwrap().len(), 192);
        assert_eq!(d4.longest().length(), 12);
        // w0 = -1 on h* for D4
        assert_eq!(d4.longest().action(), &(-&IntMatrix::identity(4)));
    }

    #[test]
    fn length_is_inversion_count() {
        let g = WeylGroup::type_a(3).unwrap();
        for w in g.elements().unwrap() {
            assert_eq!(w.length(), inversions(&w.perm().unwrap()));
            assert_eq!(g.from_perm(&w.perm().unwrap()).unwrap(), *w);
        }
    }

    #[test]
    fn perm_is_a_homomorphism() {
        let g = WeylGroup::type_a(3).unwrap();
        let els = g.elements().unwrap();
        for u in els.iter().step_by(5) {
            for v in els.iter().step_by(7) {
                let uv = u.compose(v).unwrap().perm().unwrap();
                let pu = u.perm().unwrap();
                let pv = v.perm().unwrap();
                let expect: Vec<usize> = (0..4).map(|k| pu[pv[k]]).collect();
                assert_eq!(uv, expect);
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let g = s3();
        let e = g.identity();
        let w0 = g.longest();
        assert!(bruhat_leq(&e, &w0).unwrap());
        assert!(!bruhat_leq(&w0, &e).unwrap());
        let t12 = g.from_perm(&[1, 0, 2]).unwrap();
        let t13 = g.from_perm(&[2, 1, 0]).unwrap();
        assert!(bruhat_leq(&t12, &t13).unwrap());
        let a1 = WeylGroup::type_a(1).unwrap();
        assert!(matches!(bruhat_leq(&a1.identity(), &w0), Err(Error::Domain(_))));
    }

    #[test]
    fn m_l_examples() {
        let m = m_l(3, 2).unwrap();
        assert_eq!(m.perm().unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(m.to_string(), "(1 4)(2 3)");
        assert!(m_l(4, 0).unwrap().is_identity());
        assert_eq!(m_l(2, 1).unwrap(), s3().longest());
        assert_eq!(m_l(1, 1).unwrap().length(), 1);
        assert_eq!(m_l(2, 1).unwrap().length(), 3);
        assert_eq!(m_l(3, 2).unwrap().length(), 6);
        assert!(matches!(m_l(3, 3), Err(Error::Domain(_))));
        for n in 1..=5 {
            for l in 0..=(n + 1) / 2 {
                let m = m_l(n, l).unwrap();
                assert!(m.compose(&m).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn twisted_class_examples() {
        let g = s3();
        let id = DiagramAut::identity(2);
        assert_eq!(g.twisted_class(&g.identity(), &id).unwrap(), vec![g.identity()]);
        let class = g.twisted_class(&g.simple(0), &id).unwrap();
        assert_eq!(class.len(), 3);
        assert!(class.contains(&g.simple(1)));
        assert_eq!(max_length_element(&class).unwrap(), g.longest());
    }

    #[test]
    fn twisted_class_capacity() {
        let g = WeylGroup::of_type(TypeLabel::ProductA { n: 3, copies: 3 }).unwrap();
        let theta = DiagramAut::cyclic_shift(3, 3);
        assert!(matches!(
            g.twisted_class(&g.identity(), &theta),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn max_length_reports_ties() {
        let g = s3();
        let err = max_length_element(&[g.simple(0), g.simple(1)]).unwrap_err();
        match err {
            Error::Ambiguous { length, candidates } => {
                assert_eq!(length, 1);
                assert_eq!(candidates.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triality() {
        let d4 = build_root_datum(TypeLabel::D4).unwrap();
        let t = DiagramAut::new(DiagramAut::d4_triality().perm().to_vec(), &d4).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.apply_index(2), 3);
        assert_eq!(t.apply_index(0), 2);
        assert_eq!(t.apply_index(1), 1);
        assert!(DiagramAut::new(vec![1, 0, 2, 3], &d4).is_err());
    }

    #[test]
    fn d4_w0_s2_class_maximum() {
        let g = WeylGroup::of_type(TypeLabel::D4).unwrap();
        let m = g.longest().compose(&g.simple(1)).unwrap();
        assert_eq!(m.length(), 11);
        let class = g.twisted_class(&m, &DiagramAut::d4_triality()).unwrap();
        assert_eq!(max_length_element(&class).unwrap(), m);
    }

    #[test]
    fn from_action_rejects_non_elements() {
        let g = s3();
        assert!(g.from_action(IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).is_err());
        assert_eq!(g.from_action(g.longest().action().clone()).unwrap(), g.longest());
    }

    #[test]
    fn cyclic_shift_is_diagram_aut() {
        let d = build_root_datum(TypeLabel::ProductA { n: 2, copies: 3 }).unwrap();
        let s = DiagramAut::cyclic_shift(2, 3);
        assert!(DiagramAut::new(s.perm().to_vec(), &d).is_ok());
        assert_eq!(s.order(), 3);
        // α^{(2)}_1 ↦ α^{(1)}_1
        assert_eq!(s.apply_index(2), 0);
    }

    #[test]
    fn display_forms() {
        let d4 = WeylGroup::of_type(TypeLabel::D4).unwrap();
        assert_eq!(d4.simple(1).to_string(), "s2");
        let p = WeylGroup::of_type(TypeLabel::ProductA { n: 1, copies: 2 }).unwrap();
        assert_eq!(p.simple(1).to_string(), "[2](1 2)");
    }
}
