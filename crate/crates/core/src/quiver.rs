//! Quivers, dimension vectors and the combinatorics that depends only on the
//! Euler form: roots, condition (★), slopes and generic characters, derived
//! quivers, and point counts of representation spaces.
//!
//! Vertices are 0-indexed. Labels default to `"1"`, `"2"`, ... and are carried
//! through derived-quiver constructions.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::series::QPolynomial;
use crate::Int;

/// A dimension vector: one nonnegative integer per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// `e_i` in a quiver with `n` vertices.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `|d| = Σ d_i`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &x| g.gcd(&x))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// `self + n·other`.
    pub fn add_multiple(&self, other: &DimVector, n: u32) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + n * b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: u32) -> DimVector {
        let mut v = self.0.clone();
        v.push(last);
        DimVector(v)
    }

    /// All `v` with `0 <= v <= self`, in mixed-radix order (first coordinate
    /// fastest).
    pub fn subvectors(&self) -> SubvectorIter {
        SubvectorIter { bound: self.0.clone(), current: Some(vec![0; self.0.len()]) }
    }

    /// Number of vectors `0 <= v <= self`.
    pub fn box_size(&self) -> u128 {
        self.0.iter().map(|&x| u128::from(x) + 1).product()
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

impl From<&[u32]> for DimVector {
    fn from(v: &[u32]) -> Self {
        DimVector(v.to_vec())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub struct SubvectorIter {
    bound: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl Iterator for SubvectorIter {
    type Item = DimVector;
    fn next(&mut self) -> Option<DimVector> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let mut i = 0;
        loop {
            if i == next.len() {
                break;
            }
            if next[i] < self.bound[i] {
                next[i] += 1;
                self.current = Some(next);
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(DimVector(cur))
    }
}

/// A character `χ` of `GL_d`, identified with its integer weights `χ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character(Vec<i64>);

impl Character {
    pub fn new(weights: Vec<i64>) -> Self {
        Character(weights)
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `χ(d) = Σ χ_i d_i`.
    pub fn apply(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(d.entries()).map(|(c, &x)| c * i64::from(x)).sum()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Euler,
    Cartan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    Real,
    Imaginary,
    NotRoot,
}

/// A finite quiver given by its arrow-count matrix `a[i][j] = #(i → j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
    labels: Vec<String>,
}

impl Quiver {
    fn build(arrows: Vec<Vec<u32>>, allow_loops: bool) -> Result<Self> {
        let n = arrows.len();
        if n == 0 {
            return Err(Error::Invalid("a quiver needs at least one vertex".into()));
        }
        if arrows.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("arrow matrix must be square".into()));
        }
        if !allow_loops && (0..n).any(|i| arrows[i][i] != 0) {
            return Err(Error::LoopsPresent);
        }
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Ok(Quiver { arrows, labels })
    }

    /// A loop-free quiver from its arrow-count matrix.
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self> {
        Self::build(arrows, false)
    }

    /// Like [`Quiver::new`] but accepting loops (`a[i][i] > 0`).
    pub fn with_loops(arrows: Vec<Vec<u32>>) -> Result<Self> {
        Self::build(arrows, true)
    }

    /// A loop-free quiver from a list of arrows; repetition is multiplicity.
    pub fn from_arrows(n: usize, list: &[(usize, usize)]) -> Result<Self> {
        let mut a = vec![vec![0; n]; n];
        for &(s, t) in list {
            if s >= n || t >= n {
                return Err(Error::Invalid(format!("arrow {s}->{t} references a missing vertex")));
            }
            a[s][t] += 1;
        }
        Self::new(a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_vertices() {
            return Err(Error::Invalid("one label per vertex is required".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate vertex label {l}")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// The `m`-Kronecker quiver: two vertices, `m` arrows `1 → 2`.
    pub fn kronecker(m: u32) -> Self {
        Self::new(vec![vec![0, m], vec![0, 0]]).expect("valid")
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`.
    pub fn path(n: usize) -> Self {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n.saturating_sub(1) {
            a[i][i + 1] = 1;
        }
        Self::new(a).expect("valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_matrix(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n_vertices()).any(|i| self.arrows[i][i] > 0)
    }

    pub fn total_arrows(&self) -> u32 {
        self.arrows.iter().flatten().sum()
    }

    /// Arrows as `(source, target)` pairs, repeated by multiplicity, in row
    /// order.
    pub fn arrow_list(&self) -> Vec<(usize, usize)> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for _ in 0..self.arrows[s][t] {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// Edges between `i` and `j` in the underlying graph (for `i == j`, the
    /// loops at `i`).
    pub fn edges_between(&self, i: usize, j: usize) -> u32 {
        if i == j {
            self.arrows[i][i]
        } else {
            self.arrows[i][j] + self.arrows[j][i]
        }
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.n_vertices() {
            return Err(Error::DimensionMismatch { expected: self.n_vertices(), found: d.len() });
        }
        Ok(())
    }

    pub(crate) fn euler_raw(&self, d: &[u32], v: &[u32]) -> i64 {
        let n = self.n_vertices();
        let mut s: i64 = 0;
        for i in 0..n {
            s += i64::from(d[i]) * i64::from(v[i]);
        }
        for i in 0..n {
            if d[i] == 0 {
                continue;
            }
            for j in 0..n {
                let a = self.arrows[i][j];
                if a != 0 {
                    s -= i64::from(a) * i64::from(d[i]) * i64::from(v[j]);
                }
            }
        }
        s
    }

    pub(crate) fn form_raw(&self, form: Form, d: &[u32], v: &[u32]) -> i64 {
        match form {
            Form::Euler => self.euler_raw(d, v),
            Form::Cartan => self.euler_raw(d, v) + self.euler_raw(v, d),
        }
    }

    /// Euler form `⟨d,v⟩ = Σ_i d_i v_i − Σ_{i→j} d_i v_j`.
    pub fn euler_form(&self, d: &DimVector, v: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(v)?;
        Ok(self.euler_raw(d.entries(), v.entries()))
    }

    /// Cartan form `(d,v) = ⟨d,v⟩ + ⟨v,d⟩`.
    pub fn cartan_form(&self, d: &DimVector, v: &DimVector) -> Result<i64> {
        self.form(Form::Cartan, d, v)
    }

    pub fn form(&self, form: Form, d: &DimVector, v: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(v)?;
        Ok(self.form_raw(form, d.entries(), v.entries()))
    }

    /// Matrix of the chosen form on simple vectors.
    pub fn form_matrix(&self, form: Form) -> Vec<Vec<i64>> {
        let n = self.n_vertices();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let ei = DimVector::unit(n, i);
                        let ej = DimVector::unit(n, j);
                        self.form_raw(form, ei.entries(), ej.entries())
                    })
                    .collect()
            })
            .collect()
    }

    /// Pairings `(d, e_i)` (or `⟨d, e_i⟩`) for every vertex.
    pub fn pairings_with_simples(&self, form: Form, d: &DimVector) -> Result<Vec<i64>> {
        self.check_dim(d)?;
        let n = self.n_vertices();
        Ok((0..n).map(|i| self.form_raw(form, d.entries(), DimVector::unit(n, i).entries())).collect())
    }

    /// True when `#(i → j) = #(j → i)` for all `i, j`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n_vertices();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    /// The same quiver with one arrow `i → j` turned into `j → i`.
    pub fn reverse_one_arrow(&self, i: usize, j: usize) -> Result<Quiver> {
        if self.arrows[i][j] == 0 {
            return Err(Error::Invalid(format!("no arrow {i}->{j} to reverse")));
        }
        let mut q = self.clone();
        q.arrows[i][j] -= 1;
        q.arrows[j][i] += 1;
        Ok(q)
    }

    /// Double quiver: every arrow gets a reversed partner.
    pub fn double_quiver(&self) -> Quiver {
        let n = self.n_vertices();
        let mut a = self.arrows.clone();
        for i in 0..n {
            for j in 0..n {
                a[j][i] += self.arrows[i][j];
            }
        }
        Quiver { arrows: a, labels: self.labels.clone() }
    }

    /// Framed quiver: a new vertex `1_i` with one arrow `1_i → i` per vertex.
    /// The framing vertices are appended after the original ones.
    pub fn framed_quiver(&self) -> Quiver {
        let n = self.n_vertices();
        let mut a = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            a[i][..n].copy_from_slice(&self.arrows[i]);
            a[n + i][i] = 1;
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("1_{l}")));
        Quiver { arrows: a, labels }
    }

    /// Crawley–Boevey quiver `Q_w`: one vertex `∞` (appended last) with
    /// `w_i` arrows `∞ → i`.
    pub fn crawley_boevey(&self, w: &DimVector) -> Result<Quiver> {
        self.check_dim(w)?;
        if w.is_zero() {
            return Err(Error::ZeroVector("framing w"));
        }
        let n = self.n_vertices();
        let mut a = vec![vec![0; n + 1]; n + 1];
        for i in 0..n {
            a[i][..n].copy_from_slice(&self.arrows[i]);
        }
        a[n][..n].copy_from_slice(w.entries());
        let mut labels = self.labels.clone();
        let mut inf = String::from("inf");
        while labels.contains(&inf) {
            inf.push('\'');
        }
        labels.push(inf);
        Ok(Quiver { arrows: a, labels })
    }
}

/// The dimension vector `(d, 1)` of a Crawley–Boevey quiver.
pub fn cb_vector(d: &DimVector) -> DimVector {
    d.extended(1)
}

/// Connected components of `supp δ` together with their pairwise distances
/// in the underlying graph of the whole quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportComponents {
    pub components: Vec<Vec<usize>>,
    /// `distances[k][l]`, `None` when no path exists.
    pub distances: Vec<Vec<Option<u32>>>,
}

fn neighbours(q: &Quiver, i: usize) -> impl Iterator<Item = usize> + '_ {
    (0..q.n_vertices()).filter(move |&j| j != i && q.edges_between(i, j) > 0)
}

/// Components of the subgraph induced on `supp δ`, and BFS distances between
/// them measured in the full underlying graph.
pub fn support_components(q: &Quiver, delta: &DimVector) -> Result<SupportComponents> {
    q.check_dim(delta)?;
    let n = q.n_vertices();
    let in_supp: Vec<bool> = delta.entries().iter().map(|&x| x > 0).collect();
    let mut comp_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if !in_supp[start] || comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        comp_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in neighbours(q, u) {
                if in_supp[v] && comp_of[v] == usize::MAX {
                    comp_of[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let k = components.len();
    let mut distances = vec![vec![None; k]; k];
    for (a, comp) in components.iter().enumerate() {
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for &v in comp {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for v in neighbours(q, u) {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (b, other) in components.iter().enumerate() {
            let best = other.iter().map(|&v| dist[v]).min().unwrap_or(u32::MAX);
            distances[a][b] = (best != u32::MAX).then_some(best);
        }
    }
    Ok(SupportComponents { components, distances })
}

/// Classifies `d` as a real root, an imaginary root, or not a root, by
/// reflecting towards the fundamental region.
pub fn root_type(q: &Quiver, d: &DimVector) -> Result<RootType> {
    q.check_dim(d)?;
    if q.has_loops() {
        return Err(Error::LoopsPresent);
    }
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    let n = q.n_vertices();
    let cartan = q.form_matrix(Form::Cartan);
    let mut v: Vec<i64> = d.entries().iter().map(|&x| i64::from(x)).collect();
    let cap = 10 * u64::from(d.total());
    for _ in 0..=cap {
        let nonzero: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 && v[nonzero[0]] == 1 {
            return Ok(RootType::Real);
        }
        let pair = |i: usize| -> i64 { (0..n).map(|j| v[j] * cartan[j][i]).sum() };
        match (0..n).find(|&i| pair(i) > 0) {
            Some(i) => {
                v[i] -= pair(i);
                if v[i] < 0 {
                    return Ok(RootType::NotRoot);
                }
            }
            None => {
                let supp = DimVector::new(v.iter().map(|&x| x as u32).collect());
                let connected = support_components(q, &supp)?.components.len() == 1;
                return Ok(if connected { RootType::Imaginary } else { RootType::NotRoot });
            }
        }
    }
    Err(Error::Internal(format!("reflection descent for {d} exceeded its height cap")))
}

pub fn is_indivisible(d: &DimVector) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    Ok(d.gcd() == 1)
}

/// `s(d) = χ(d) / |d|`.
pub fn slope(chi: &Character, d: &DimVector) -> Result<Ratio<i64>> {
    if chi.weights().len() != d.len() {
        return Err(Error::DimensionMismatch { expected: chi.weights().len(), found: d.len() });
    }
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    Ok(Ratio::new(chi.apply(d), i64::from(d.total())))
}

/// True when no proper nonzero subvector `0 < v < d` shares the slope of `d`.
pub fn is_generic(q: &Quiver, d: &DimVector, chi: &Character) -> Result<bool> {
    q.check_dim(d)?;
    if chi.weights().len() != d.len() {
        return Err(Error::DimensionMismatch { expected: d.len(), found: chi.weights().len() });
    }
    if d.is_zero() {
        return Err(Error::ZeroVector("dimension vector"));
    }
    Ok(first_slope_collision(d, chi).is_none())
}

fn first_slope_collision(d: &DimVector, chi: &Character) -> Option<DimVector> {
    let cd = chi.apply(d);
    let nd = i64::from(d.total());
    d.subvectors().find(|v| {
        !v.is_zero() && v != d && chi.apply(v) * nd == cd * i64::from(v.total())
    })
}

/// A character generic for `d`, searching integer weights by increasing
/// max-norm and lexicographically within a norm.
pub fn generic_character(q: &Quiver, d: &DimVector) -> Result<Character> {
    q.check_dim(d)?;
    if !is_indivisible(d)? {
        return Err(Error::Divisible { gcd: d.gcd() });
    }
    let n = d.len();
    // Each proper subvector forbids one hyperplane; some vector of max-norm
    // at most their number avoids them all.
    let limit = d.box_size().min(1 << 20) as i64;
    for m in 0..=limit {
        let mut w = vec![-m; n];
        loop {
            if w.iter().any(|x| x.abs() == m) {
                let chi = Character::new(w.clone());
                if first_slope_collision(d, &chi).is_none() {
                    return Ok(chi);
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if w[i] < m {
                    w[i] += 1;
                    for x in w.iter_mut().skip(i + 1) {
                        *x = -m;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Err(Error::Internal(format!("no generic character found for {d}")))
}

/// `|Rep_d(F_q)| = q^{Σ_{i→j} d_i d_j}` and `|GL_d(F_q)| = ∏_i ∏_{k<d_i} (q^{d_i} − q^k)`.
pub fn finite_field_counts(q: &Quiver, d: &DimVector) -> Result<(QPolynomial, QPolynomial)> {
    q.check_dim(d)?;
    let n = q.n_vertices();
    let mut exp: usize = 0;
    for i in 0..n {
        for j in 0..n {
            exp += (q.arrow_count(i, j) * d.entries()[i] * d.entries()[j]) as usize;
        }
    }
    let rep = QPolynomial::monomial(Int::from(1), exp);
    let mut gl = QPolynomial::one();
    for &di in d.entries() {
        for k in 0..di as usize {
            let factor = QPolynomial::monomial(Int::from(1), di as usize)
                - QPolynomial::monomial(Int::from(1), k);
            gl = &gl * &factor;
        }
    }
    Ok((rep, gl))
}

/// Whether `(★)` uses strict or non-strict inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Weak,
}

/// How close distinct components of `supp δ` must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DistanceRule {
    /// Joined by an edge or sharing a neighbouring vertex (distance ≤ 2).
    #[default]
    CommonNeighbour,
    /// Distance ≤ 1; distinct components are never adjacent, so this forces
    /// `supp δ` to be connected.
    Adjacent,
}

impl DistanceRule {
    fn max_distance(self) -> u32 {
        match self {
            DistanceRule::CommonNeighbour => 2,
            DistanceRule::Adjacent => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexVerdict {
    pub vertex: usize,
    /// `⟨e_i, δ⟩` (Cartan: `(e_i, δ)`).
    pub out_pairing: i64,
    /// `⟨δ, e_i⟩` (Cartan: `(δ, e_i)`).
    pub in_pairing: i64,
    pub out_ok: bool,
    pub in_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub form: Form,
    pub strictness: Strictness,
    pub rule: DistanceRule,
    pub vertices: Vec<VertexVerdict>,
    pub components: SupportComponents,
    pub components_ok: bool,
    pub overall: bool,
}

impl StarReport {
    pub fn inequalities_ok(&self) -> bool {
        self.vertices.iter().all(|v| v.out_ok && v.in_ok)
    }
}

/// Evaluates condition (★) for `δ`.
pub fn check_star(
    q: &Quiver,
    delta: &DimVector,
    form: Form,
    strictness: Strictness,
    rule: DistanceRule,
) -> Result<StarReport> {
    q.check_dim(delta)?;
    if delta.is_zero() {
        return Err(Error::ZeroVector("δ"));
    }
    let n = q.n_vertices();
    let ok = |x: i64| match strictness {
        Strictness::Strict => x < 0,
        Strictness::Weak => x <= 0,
    };
    let vertices = (0..n)
        .map(|i| {
            let e = DimVector::unit(n, i);
            let out_pairing = q.form_raw(form, e.entries(), delta.entries());
            let in_pairing = q.form_raw(form, delta.entries(), e.entries());
            VertexVerdict {
                vertex: i,
                out_pairing,
                in_pairing,
                out_ok: ok(out_pairing),
                in_ok: ok(in_pairing),
            }
        })
        .collect::<Vec<_>>();
    let components = support_components(q, delta)?;
    let max = rule.max_distance();
    let k = components.components.len();
    let components_ok = (0..k).all(|a| {
        (0..k).all(|b| a == b || components.distances[a][b].is_some_and(|x| x <= max))
    });
    let overall = components_ok && vertices.iter().all(|v| v.out_ok && v.in_ok);
    Ok(StarReport { form, strictness, rule, vertices, components, components_ok, overall })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::from(v)
    }

    fn s2() -> Quiver {
        Quiver::new(vec![vec![0, 2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn euler_form_examples() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(k3.euler_form(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), -1);
        assert_eq!(k3.euler_form(&dv(&[2, 1]), &dv(&[2, 1])).unwrap(), -1);
        assert_eq!(k3.euler_form(&dv(&[1, 0]), &dv(&[1, 0])).unwrap(), 1);
        assert_eq!(
            k3.euler_form(&dv(&[1]), &dv(&[1])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn cartan_form_examples() {
        assert_eq!(Quiver::kronecker(3).cartan_form(&dv(&[1, 1]), &dv(&[1, 0])).unwrap(), -1);
        assert_eq!(Quiver::kronecker(2).cartan_form(&dv(&[1, 1]), &dv(&[1, 0])).unwrap(), 0);
        assert_eq!(s2().cartan_form(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), -4);
    }

    #[test]
    fn symmetry() {
        assert!(s2().is_symmetric());
        assert!(!Quiver::kronecker(3).is_symmetric());
        assert!(Quiver::new(vec![vec![0]]).unwrap().is_symmetric());
    }

    #[test]
    fn loops_rejected_unless_allowed() {
        assert_eq!(Quiver::new(vec![vec![1]]), Err(Error::LoopsPresent));
        let jordan = Quiver::with_loops(vec![vec![1]]).unwrap();
        assert_eq!(root_type(&jordan, &dv(&[1])), Err(Error::LoopsPresent));
    }

    #[test]
    fn star_examples() {
        let k3 = Quiver::kronecker(3);
        let d = dv(&[1, 1]);
        let r = check_star(&k3, &d, Form::Cartan, Strictness::Strict, DistanceRule::default()).unwrap();
        assert!(r.overall);
        let r = check_star(&k3, &d, Form::Euler, Strictness::Strict, DistanceRule::default()).unwrap();
        assert!(!r.overall);
        assert_eq!(r.vertices[0].in_pairing, 1);

        let path = Quiver::path(3);
        let delta = dv(&[1, 0, 1]);
        let r = check_star(&path, &delta, Form::Cartan, Strictness::Weak, DistanceRule::CommonNeighbour)
            .unwrap();
        assert!(r.components_ok);
        assert_eq!(r.vertices[0].in_pairing, 2);
        assert!(!r.overall);
        let lit = check_star(&path, &delta, Form::Cartan, Strictness::Weak, DistanceRule::Adjacent).unwrap();
        assert!(!lit.components_ok);
        assert!(check_star(&k3, &dv(&[0, 0]), Form::Euler, Strictness::Weak, DistanceRule::default()).is_err());
    }

    #[test]
    fn components_examples() {
        let path = Quiver::path(3);
        let c = support_components(&path, &dv(&[1, 0, 1])).unwrap();
        assert_eq!(c.components, vec![vec![0], vec![2]]);
        assert_eq!(c.distances[0][1], Some(2));
        assert_eq!(support_components(&path, &dv(&[1, 1, 1])).unwrap().components.len(), 1);
        assert!(support_components(&path, &dv(&[0, 0, 0])).unwrap().components.is_empty());
    }

    #[test]
    fn root_type_examples() {
        assert_eq!(root_type(&Quiver::path(2), &dv(&[1, 1])).unwrap(), RootType::Real);
        assert_eq!(root_type(&Quiver::kronecker(2), &dv(&[1, 1])).unwrap(), RootType::Imaginary);
        assert_eq!(root_type(&Quiver::path(2), &dv(&[2, 0])).unwrap(), RootType::NotRoot);
        assert_eq!(root_type(&Quiver::path(2), &dv(&[0, 0])), Err(Error::ZeroVector("dimension vector")));
        // Disconnected support in the fundamental region.
        let two = Quiver::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(root_type(&two, &dv(&[1, 1])).unwrap(), RootType::NotRoot);
    }

    #[test]
    fn indivisibility_and_slopes() {
        assert!(is_indivisible(&dv(&[2, 1])).unwrap());
        assert!(!is_indivisible(&dv(&[2, 2])).unwrap());
        assert!(is_indivisible(&dv(&[3, 4, 3])).unwrap());
        assert!(is_indivisible(&dv(&[0, 0])).is_err());
        assert_eq!(slope(&Character::new(vec![1, 0]), &dv(&[2, 1])).unwrap(), Ratio::new(2, 3));
        assert_eq!(slope(&Character::new(vec![0, 0]), &dv(&[5, 1])).unwrap(), Ratio::from_integer(0));
        assert_eq!(slope(&Character::new(vec![1, 1]), &dv(&[1, 1])).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn generic_characters() {
        let k3 = Quiver::kronecker(3);
        assert!(is_generic(&k3, &dv(&[2, 1]), &Character::new(vec![1, 0])).unwrap());
        let chi = generic_character(&k3, &dv(&[2, 1])).unwrap();
        assert!(is_generic(&k3, &dv(&[2, 1]), &chi).unwrap());
        assert_eq!(chi, Character::new(vec![-1, 0]));
        assert_eq!(generic_character(&k3, &dv(&[2, 2])), Err(Error::Divisible { gcd: 2 }));
        assert!(!is_generic(&Quiver::kronecker(2), &dv(&[1, 1]), &Character::new(vec![1, 1])).unwrap());
    }

    #[test]
    fn derived_quivers() {
        assert_eq!(Quiver::kronecker(2).double_quiver().arrow_matrix(), s2().arrow_matrix());
        let cb = Quiver::kronecker(2).crawley_boevey(&dv(&[0, 1])).unwrap();
        assert_eq!(cb.arrow_matrix(), &[vec![0, 2, 0], vec![0, 0, 0], vec![0, 1, 0]]);
        let hyper = Quiver::new(vec![vec![0, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let cb = hyper.crawley_boevey(&dv(&[2, 0, 1])).unwrap();
        assert_eq!(cb.arrow_count(3, 0), 2);
        assert_eq!(cb.arrow_count(3, 2), 1);
        assert_eq!(cb.arrow_count(3, 1), 0);
        assert!(Quiver::kronecker(2).crawley_boevey(&dv(&[0, 0])).is_err());
        let framed = Quiver::kronecker(2).framed_quiver();
        assert_eq!(framed.n_vertices(), 4);
        assert_eq!(framed.arrow_count(2, 0), 1);
        assert_eq!(framed.arrow_count(3, 1), 1);
        assert_eq!(framed.labels()[2], "1_1");
    }

    #[test]
    fn point_counts() {
        let (rep, _) = finite_field_counts(&Quiver::kronecker(3), &dv(&[2, 1])).unwrap();
        assert_eq!(rep, QPolynomial::monomial(Int::from(1), 6));
        let single = Quiver::new(vec![vec![0]]).unwrap();
        let (_, gl) = finite_field_counts(&single, &dv(&[2])).unwrap();
        assert_eq!(gl, QPolynomial::from_i64s(&[0, 1, -1, -1, 1]));
        let (rep, gl) = finite_field_counts(&Quiver::kronecker(3), &dv(&[0, 0])).unwrap();
        assert_eq!((rep, gl), (QPolynomial::one(), QPolynomial::one()));
    }
}
