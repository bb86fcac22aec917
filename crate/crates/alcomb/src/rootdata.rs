//! Cartan data, the finite Weyl group, coroots, lengths and Bruhat order.
//!
//! The coweight lattice `Y` is the free abelian group on the simple coroots,
//! indexed `1..=rank` in the public API. The Weyl group acts on `Y` on the
//! *right*; elements are stored as dense integer action matrices (row vector
//! times matrix), which is cheap at rank <= 4 and makes equality and hashing
//! trivial.
//!
//! Supported Cartan types are a fixed allow-list. Arbitrary Cartan matrices
//! are rejected so that the derived tables (longest element, highest root,
//! reflection lengths) stay trustworthy.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use crate::{Error, Result};

pub const MAX_RANK: usize = 4;

/// The supported Cartan types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A1,
    A2,
    B2,
    G2,
    A3,
}

impl CartanType {
    pub fn label(self) -> &'static str {
        match self {
            CartanType::A1 => "A1",
            CartanType::A2 => "A2",
            CartanType::B2 => "B2",
            CartanType::G2 => "G2",
            CartanType::A3 => "A3",
        }
    }

    /// Symmetric bilinear values `i . j` on the simple coroots.
    fn dot_matrix(self) -> Vec<Vec<i64>> {
        match self {
            CartanType::A1 => vec![vec![2]],
            CartanType::A2 => vec![vec![2, -1], vec![-1, 2]],
            // First node long (d = 2), second short.
            CartanType::B2 => vec![vec![4, -2], vec![-2, 2]],
            // First node short, second long (d = 3).
            CartanType::G2 => vec![vec![2, -3], vec![-3, 6]],
            CartanType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(CartanType::A1),
            "A2" => Ok(CartanType::A2),
            "B2" => Ok(CartanType::B2),
            "G2" => Ok(CartanType::G2),
            "A3" => Ok(CartanType::A3),
            other => Err(Error::Config(format!(
                "unknown Cartan type label {other:?} (expected one of A1, A2, B2, G2, A3)"
            ))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An element of the coweight lattice `Y`, as coefficients over the simple
/// coroots. `Copy` at rank <= 4; unused slots are kept at zero so derived
/// equality and hashing are sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coweight {
    rank: u8,
    coeffs: [i64; MAX_RANK],
}

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1 && rank <= MAX_RANK);
        Coweight {
            rank: rank as u8,
            coeffs: [0; MAX_RANK],
        }
    }

    /// The simple coroot with 1-based index `i`.
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank);
        let mut c = Coweight::zero(rank);
        c.coeffs[i - 1] = 1;
        c
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= MAX_RANK);
        let mut c = Coweight::zero(coeffs.len());
        c.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        c
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.rank as usize]
    }

    pub fn coeff(&self, i0: usize) -> i64 {
        self.coeffs[i0]
    }

    /// `|chi|`: the sum of the coefficients. Additive.
    pub fn height(&self) -> i64 {
        self.coeffs().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&a| a == 0)
    }

    /// Membership in `N[I]` (all coefficients nonnegative).
    pub fn is_natural(&self) -> bool {
        self.coeffs().iter().all(|&a| a >= 0)
    }

    /// The componentwise order: `self <= other` iff `other - self` is in `N[I]`.
    pub fn leq(&self, other: &Coweight) -> bool {
        debug_assert_eq!(self.rank, other.rank);
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = *self;
        for k in 0..self.rank as usize {
            out.coeffs[k] += other.coeffs[k];
        }
        out
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = *self;
        for k in 0..self.rank as usize {
            out.coeffs[k] -= other.coeffs[k];
        }
        out
    }

    pub fn neg(&self) -> Coweight {
        let mut out = *self;
        for k in 0..self.rank as usize {
            out.coeffs[k] = -out.coeffs[k];
        }
        out
    }

    pub fn scale(&self, n: i64) -> Coweight {
        let mut out = *self;
        for k in 0..self.rank as usize {
            out.coeffs[k] *= n;
        }
        out
    }
}

/// Graded-lex: by `|chi|` first, then lexicographically on the coefficients.
/// This is the fixed monomial order used for all sorted output.
impl Ord for Coweight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.rank, other.rank);
        self.height()
            .cmp(&other.height())
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }
}

impl PartialOrd for Coweight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// An element of the root lattice `X`, as coefficients over the simple roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    rank: u8,
    coeffs: [i64; MAX_RANK],
}

impl Root {
    fn simple(rank: usize, i0: usize) -> Self {
        let mut c = Root {
            rank: rank as u8,
            coeffs: [0; MAX_RANK],
        };
        c.coeffs[i0] = 1;
        c
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.rank as usize]
    }

    fn is_natural(&self) -> bool {
        self.coeffs().iter().all(|&a| a >= 0)
    }

    fn dominates(&self, other: &Root) -> bool {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .all(|(a, b)| a >= b)
    }
}

/// Dense action matrix on `Y` (row vector times matrix). Unused rows and
/// columns stay zero, so derived equality and hashing are sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct ActionMatrix {
    rank: u8,
    m: [[i64; MAX_RANK]; MAX_RANK],
}

impl ActionMatrix {
    fn identity(rank: usize) -> Self {
        let mut m = [[0; MAX_RANK]; MAX_RANK];
        for (k, row) in m.iter_mut().enumerate().take(rank) {
            row[k] = 1;
        }
        ActionMatrix { rank: rank as u8, m }
    }

    fn mul(&self, other: &ActionMatrix) -> ActionMatrix {
        let n = self.rank as usize;
        let mut out = ActionMatrix {
            rank: self.rank,
            m: [[0; MAX_RANK]; MAX_RANK],
        };
        for k in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    acc += self.m[k][t] * other.m[t][j];
                }
                out.m[k][j] = acc;
            }
        }
        out
    }

    fn apply(&self, y: &Coweight) -> Coweight {
        let n = self.rank as usize;
        debug_assert_eq!(n, y.rank());
        let mut out = Coweight::zero(n);
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc += y.coeffs[k] * self.m[k][j];
            }
            out.coeffs[j] = acc;
        }
        out
    }
}

/// A finite Weyl group element: its right-action matrix on `Y` and its
/// cached length.
#[derive(Debug, Clone)]
pub struct WeylElement {
    mat: ActionMatrix,
    length: u32,
}

impl WeylElement {
    pub fn length(&self) -> u32 {
        self.length
    }
}

/// The Cartan datum: bilinear form, root lengths, pairing and braid orders.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    label: CartanType,
    rank: usize,
    dot: Vec<Vec<i64>>,
    d: Vec<i64>,
    /// `pairing[j][i] = <j, i'>` for simple coroot `j` and simple root `i`
    /// (0-based); the diagonal is 2.
    pairing: Vec<Vec<i64>>,
    braid: Vec<Vec<u32>>,
}

impl CartanDatum {
    fn new(label: CartanType) -> Self {
        let dot = label.dot_matrix();
        let rank = dot.len();
        let d: Vec<i64> = (0..rank).map(|i| dot[i][i] / 2).collect();
        let mut pairing = vec![vec![0i64; rank]; rank];
        for j in 0..rank {
            for i in 0..rank {
                assert_eq!(dot[j][i] % d[i], 0, "Cartan datum not integral");
                pairing[j][i] = dot[j][i] / d[i];
            }
        }
        let mut braid = vec![vec![0u32; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                braid[i][j] = if i == j {
                    1
                } else {
                    match pairing[i][j] * pairing[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        n => panic!("unexpected Cartan product {n}"),
                    }
                };
            }
        }
        for i in 0..rank {
            assert_eq!(pairing[i][i], 2);
            assert!((1..=3).contains(&d[i]));
            for j in 0..rank {
                if i != j {
                    assert!(pairing[j][i] <= 0);
                    assert_eq!(dot[i][j], dot[j][i]);
                }
            }
        }
        CartanDatum {
            label,
            rank,
            dot,
            d,
            pairing,
            braid,
        }
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.dot[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// `<j, i'>` with 0-based simple indices.
    pub fn simple_pairing(&self, j: usize, i: usize) -> i64 {
        self.pairing[j][i]
    }

    /// Braid order `m_ij` (0-based).
    pub fn braid_order(&self, i: usize, j: usize) -> u32 {
        self.braid[i][j]
    }

    /// `<y, i'>` for a coweight and a 0-based simple root index.
    pub fn pair_simple(&self, y: &Coweight, i0: usize) -> i64 {
        (0..self.rank).map(|k| y.coeff(k) * self.pairing[k][i0]).sum()
    }

    /// `<y, theta>` for a coweight and a root, extended bilinearly.
    pub fn pair_root(&self, y: &Coweight, theta: &Root) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            if theta.coeffs[i] != 0 {
                acc += theta.coeffs[i] * self.pair_simple(y, i);
            }
        }
        acc
    }
}

/// Complete tables for one root datum: the enumerated Weyl group, positive
/// coroots with their dual roots and reflections, the highest root, and the
/// Bruhat order. Immutable after construction and safe to share across
/// threads (the reduced-word cache is mutex-guarded).
pub struct RootDatumTables {
    cartan: CartanDatum,
    elements: Vec<WeylElement>,
    index: HashMap<ActionMatrix, usize>,
    gens: Vec<usize>,
    pos_coroots: Vec<Coweight>,
    pos_roots: Vec<Root>,
    /// For each positive coroot: the Weyl element of the reflection.
    reflections: Vec<usize>,
    theta0: Root,
    beta0_index: usize,
    two_rho: Coweight,
    w0: usize,
    /// `downsets[y]` is the bitset of all `w <= y` in Bruhat order.
    downsets: Vec<u64>,
    word_cache: Mutex<Vec<Option<Vec<usize>>>>,
}

/// Builds the full tables for a supported type. The Weyl group is enumerated
/// by breadth-first closure of the generators; coroots are the orbit of the
/// simple coroots intersected with `N[I]`.
pub fn build_root_datum(label: CartanType) -> RootDatumTables {
    let cartan = CartanDatum::new(label);
    let rank = cartan.rank();

    // Generator matrices: s_i(y) = y - <y, i'> i.
    let mut gen_mats = Vec::with_capacity(rank);
    for i0 in 0..rank {
        let mut m = ActionMatrix::identity(rank);
        for k in 0..rank {
            m.m[k][i0] -= cartan.simple_pairing(k, i0);
        }
        gen_mats.push(m);
    }
    for g in &gen_mats {
        assert_eq!(g.mul(g), ActionMatrix::identity(rank), "generator not an involution");
    }
    // Braid relations: (s_i s_j)^{m_ij} = e.
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let prod = gen_mats[i].mul(&gen_mats[j]);
            let mut acc = ActionMatrix::identity(rank);
            for _ in 0..cartan.braid_order(i, j) {
                acc = acc.mul(&prod);
            }
            assert_eq!(acc, ActionMatrix::identity(rank), "braid relation failed");
        }
    }

    // Breadth-first enumeration; BFS depth is the length.
    let mut elements: Vec<WeylElement> = vec![WeylElement {
        mat: ActionMatrix::identity(rank),
        length: 0,
    }];
    let mut index = HashMap::new();
    index.insert(elements[0].mat, 0usize);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &widx in &frontier {
            let base = elements[widx].mat;
            let depth = elements[widx].length;
            for g in &gen_mats {
                let m = base.mul(g);
                if !index.contains_key(&m) {
                    index.insert(m, elements.len());
                    elements.push(WeylElement {
                        mat: m,
                        length: depth + 1,
                    });
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let gens: Vec<usize> = gen_mats.iter().map(|m| index[m]).collect();

    // Orbit of the simple (coroot, root) pairs under the generators.
    let mut orbit: Vec<(Coweight, Root)> = Vec::new();
    let mut seen: HashMap<Coweight, Root> = HashMap::new();
    let mut queue: Vec<(Coweight, Root)> = (0..rank)
        .map(|i0| (Coweight::simple(rank, i0 + 1), Root::simple(rank, i0)))
        .collect();
    while let Some((cw, rt)) = queue.pop() {
        if let Some(prev) = seen.get(&cw) {
            assert_eq!(prev, &rt, "coroot paired with two distinct roots");
            continue;
        }
        seen.insert(cw, rt);
        orbit.push((cw, rt));
        for j0 in 0..rank {
            let cw2 = gen_mats[j0].apply(&cw);
            // theta . s_j = theta - <j, theta> j'.
            let mut rt2 = rt;
            let coef: i64 = (0..rank)
                .map(|i| rt.coeffs[i] * cartan.simple_pairing(j0, i))
                .sum();
            rt2.coeffs[j0] -= coef;
            queue.push((cw2, rt2));
        }
    }
    let mut pos_pairs: Vec<(Coweight, Root)> = orbit
        .iter()
        .copied()
        .filter(|(cw, _)| cw.is_natural() && !cw.is_zero())
        .collect();
    pos_pairs.sort_by(|a, b| a.0.cmp(&b.0));
    for (cw, rt) in &pos_pairs {
        assert!(rt.is_natural(), "positive coroot {cw} paired with non-positive root");
    }
    assert_eq!(orbit.len(), 2 * pos_pairs.len());
    let pos_coroots: Vec<Coweight> = pos_pairs.iter().map(|p| p.0).collect();
    let pos_roots: Vec<Root> = pos_pairs.iter().map(|p| p.1).collect();

    // Reflections: s_theta(y) = y - <y, theta> theta_check.
    let mut reflections = Vec::with_capacity(pos_pairs.len());
    for (cw, rt) in &pos_pairs {
        let mut m = ActionMatrix::identity(rank);
        for k in 0..rank {
            let row_pairing: i64 = (0..rank)
                .map(|i| rt.coeffs[i] * cartan.simple_pairing(k, i))
                .sum();
            for j in 0..rank {
                m.m[k][j] -= row_pairing * cw.coeff(j);
            }
        }
        let widx = *index.get(&m).expect("reflection not in Weyl group");
        assert_eq!(elements[widx].length % 2, 1, "reflection has even length");
        reflections.push(widx);
    }

    // Highest root: the unique componentwise maximum among positive roots.
    let theta0 = *pos_roots
        .iter()
        .find(|cand| pos_roots.iter().all(|other| cand.dominates(other)))
        .expect("no highest root");
    let beta0_index = pos_roots.iter().position(|r| *r == theta0).unwrap();

    let mut two_rho = Coweight::zero(rank);
    for cw in &pos_coroots {
        two_rho = two_rho.add(cw);
    }
    for i0 in 0..rank {
        assert_eq!(cartan.pair_simple(&two_rho, i0), 2, "2rho pairing");
    }

    // Longest element: the unique element of maximal length.
    let max_len = elements.iter().map(|e| e.length).max().unwrap();
    let longest: Vec<usize> = (0..elements.len())
        .filter(|&w| elements[w].length == max_len)
        .collect();
    assert_eq!(longest.len(), 1, "longest element not unique");
    let w0 = longest[0];
    assert_eq!(max_len as usize, pos_coroots.len(), "l(w0) != #positive coroots");

    // Cross-check lengths: BFS depth vs coroot inversion count.
    for e in &elements {
        let inversions = pos_coroots
            .iter()
            .filter(|cw| !e.mat.apply(cw).is_natural())
            .count();
        assert_eq!(e.length as usize, inversions, "length mismatch");
    }

    let noword = vec![None; elements.len()];
    let mut tables = RootDatumTables {
        cartan,
        elements,
        index,
        gens,
        pos_coroots,
        pos_roots,
        reflections,
        theta0,
        beta0_index,
        two_rho,
        w0,
        downsets: Vec::new(),
        word_cache: Mutex::new(noword),
    };
    tables.downsets = (0..tables.elements.len())
        .map(|y| {
            let mut mask = 0u64;
            for w in 0..tables.elements.len() {
                if tables.bruhat_leq_recursive(w, y) {
                    mask |= 1 << w;
                }
            }
            mask
        })
        .collect();
    tables
}

impl RootDatumTables {
    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> u32 {
        self.elements[w].length
    }

    /// The generator `s_i` for a 1-based simple index.
    pub fn generator(&self, i: usize) -> Result<usize> {
        if i >= 1 && i <= self.rank() {
            Ok(self.gens[i - 1])
        } else {
            Err(Error::Usage(format!(
                "generator index {i} out of range 1..={}",
                self.rank()
            )))
        }
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mat.mul(&self.elements[b].mat);
        self.index[&m]
    }

    pub fn inverse(&self, a: usize) -> usize {
        // Involutions generate; invert via the reduced word reversed, or
        // simply search: the group is tiny.
        let ident = ActionMatrix::identity(self.rank());
        (0..self.elements.len())
            .find(|&b| self.elements[a].mat.mul(&self.elements[b].mat) == ident)
            .expect("no inverse")
    }

    /// Right action `y . w`.
    pub fn act(&self, y: &Coweight, w: usize) -> Coweight {
        self.elements[w].mat.apply(y)
    }

    /// `s_i(y) = y - <y, i'> i`, with 1-based `i`.
    pub fn reflect(&self, y: &Coweight, i: usize) -> Result<Coweight> {
        if i < 1 || i > self.rank() {
            return Err(Error::Usage(format!(
                "simple index {i} out of range 1..={}",
                self.rank()
            )));
        }
        let c = self.cartan.pair_simple(y, i - 1);
        Ok(y.sub(&Coweight::simple(self.rank(), i).scale(c)))
    }

    /// `<y, i'>` with 1-based `i`.
    pub fn pair_simple(&self, y: &Coweight, i: usize) -> i64 {
        self.cartan.pair_simple(y, i - 1)
    }

    pub fn pos_coroots(&self) -> &[Coweight] {
        &self.pos_coroots
    }

    pub fn pos_roots(&self) -> &[Root] {
        &self.pos_roots
    }

    /// The reflection `s_theta` for the k-th positive coroot.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k]
    }

    pub fn reflection_length(&self, k: usize) -> u32 {
        self.elements[self.reflections[k]].length
    }

    pub fn theta0(&self) -> &Root {
        &self.theta0
    }

    /// The coroot dual to the highest root.
    pub fn beta0(&self) -> Coweight {
        self.pos_coroots[self.beta0_index]
    }

    pub fn beta0_index(&self) -> usize {
        self.beta0_index
    }

    /// The reflection `s_{beta0}`.
    pub fn s_beta0(&self) -> usize {
        self.reflections[self.beta0_index]
    }

    /// The sum of the positive coroots.
    pub fn two_rho(&self) -> Coweight {
        self.two_rho
    }

    pub fn dim_x(&self) -> usize {
        self.pos_coroots.len()
    }

    pub fn w0(&self) -> usize {
        self.w0
    }

    /// Bruhat order `w <= y`, by the standard descent recursion.
    pub fn bruhat_leq(&self, w: usize, y: usize) -> bool {
        self.downsets[y] & (1 << w) != 0
    }

    /// Bitset of `{w : w <= y}` over element indices.
    pub fn bruhat_downset(&self, y: usize) -> u64 {
        self.downsets[y]
    }

    fn bruhat_leq_recursive(&self, w: usize, y: usize) -> bool {
        if w == self.identity() || w == y {
            return true;
        }
        if self.length(w) >= self.length(y) {
            return false;
        }
        // Smallest left descent of y.
        let i0 = (0..self.rank())
            .find(|&i0| {
                let sy = self.mult(self.gens[i0], y);
                self.length(sy) < self.length(y)
            })
            .expect("non-identity element without descent");
        let sy = self.mult(self.gens[i0], y);
        let sw = self.mult(self.gens[i0], w);
        if self.length(sw) < self.length(w) {
            self.bruhat_leq_recursive(sw, sy)
        } else {
            self.bruhat_leq_recursive(w, sy)
        }
    }

    /// Bruhat covers of `w`: all `y` with `w < y` and `l(y) = l(w) + 1`.
    pub fn bruhat_covers_up(&self, w: usize) -> Vec<usize> {
        let lw = self.length(w);
        (0..self.elements.len())
            .filter(|&y| self.length(y) == lw + 1 && self.bruhat_leq(w, y))
            .collect()
    }

    /// The lexicographically smallest reduced word (1-based letters),
    /// cached per element.
    pub fn reduced_word(&self, w: usize) -> Vec<usize> {
        if let Some(cached) = &self.word_cache.lock().unwrap()[w] {
            return cached.clone();
        }
        let mut word = Vec::new();
        let mut cur = w;
        while cur != self.identity() {
            let i0 = (0..self.rank())
                .find(|&i0| self.length(self.mult(self.gens[i0], cur)) < self.length(cur))
                .unwrap();
            word.push(i0 + 1);
            cur = self.mult(self.gens[i0], cur);
        }
        self.word_cache.lock().unwrap()[w] = Some(word.clone());
        word
    }

    /// Compact rendering of an element: its lex-min reduced word, or `e`.
    pub fn word_string(&self, w: usize) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| i.to_string()).collect()
        }
    }

    /// Parse a word string as produced by [`word_string`](Self::word_string).
    /// Non-reduced words are accepted; the product is taken.
    pub fn element_from_word(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.identity());
        }
        let mut cur = self.identity();
        for ch in s.chars() {
            let i = ch
                .to_digit(10)
                .ok_or_else(|| Error::Usage(format!("bad word character {ch:?}")))?
                as usize;
            let g = self.generator(i)?;
            cur = self.mult(cur, g);
        }
        Ok(cur)
    }
}

impl fmt::Debug for RootDatumTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatumTables")
            .field("type", &self.cartan.label())
            .field("order", &self.elements.len())
            .field("pos_coroots", &self.pos_coroots.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_reduced_subwords_reach(rd: &RootDatumTables, w: usize, yword: &[usize]) -> bool {
        // w <= y iff some subsequence of a fixed reduced word of y is a
        // reduced word of w.
        let lw = rd.length(w) as usize;
        let n = yword.len();
        let mut found = false;
        let mut pick = vec![0usize; lw];
        fn rec(
            rd: &RootDatumTables,
            yword: &[usize],
            pick: &mut [usize],
            depth: usize,
            start: usize,
            target: usize,
            found: &mut bool,
        ) {
            if *found {
                return;
            }
            if depth == pick.len() {
                let mut cur = rd.identity();
                for &p in pick.iter() {
                    cur = rd.mult(cur, rd.generator(yword[p]).unwrap());
                }
                if cur == target {
                    *found = true;
                }
                return;
            }
            for s in start..yword.len() {
                pick[depth] = s;
                rec(rd, yword, pick, depth + 1, s + 1, target, found);
            }
        }
        if lw > n {
            return false;
        }
        rec(rd, yword, &mut pick, 0, 0, w, &mut found);
        found
    }

    #[test]
    fn orders_and_coroot_counts() {
        let a2 = build_root_datum(CartanType::A2);
        assert_eq!(a2.num_elements(), 6);
        assert_eq!(a2.pos_coroots().len(), 3);

        let a1 = build_root_datum(CartanType::A1);
        assert_eq!(a1.pos_coroots(), &[Coweight::simple(1, 1)]);
        assert_eq!(a1.w0(), a1.generator(1).unwrap());
        assert_eq!(a1.dim_x(), 1);

        let g2 = build_root_datum(CartanType::G2);
        assert_eq!(g2.pos_coroots().len(), 6);
        assert_eq!(g2.length(g2.w0()), 6);
        assert_eq!(g2.num_elements(), 12);

        let b2 = build_root_datum(CartanType::B2);
        assert_eq!(b2.num_elements(), 8);
        assert_eq!(b2.pos_coroots().len(), 4);
        assert_eq!(b2.cartan().braid_order(0, 1), 4);

        let a3 = build_root_datum(CartanType::A3);
        assert_eq!(a3.num_elements(), 24);
        assert_eq!(a3.pos_coroots().len(), 6);
    }

    #[test]
    fn reflect_examples() {
        let a1 = build_root_datum(CartanType::A1);
        let al = Coweight::simple(1, 1);
        assert_eq!(a1.reflect(&al, 1).unwrap(), al.neg());

        let a2 = build_root_datum(CartanType::A2);
        let a1c = Coweight::simple(2, 1);
        let both = Coweight::from_coeffs(&[1, 1]);
        assert_eq!(a2.reflect(&a1c, 2).unwrap(), both);

        // A fixed vector on the reflection hyperplane.
        let fixed = Coweight::from_coeffs(&[2, 1]);
        assert_eq!(a2.pair_simple(&fixed, 1), 3);
        let orth = Coweight::from_coeffs(&[1, 2]);
        assert_eq!(a2.pair_simple(&orth, 1), 0);
        assert_eq!(a2.reflect(&orth, 1).unwrap(), orth);

        assert!(a2.reflect(&a1c, 3).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let a2 = build_root_datum(CartanType::A2);
        let s1 = a2.generator(1).unwrap();
        let s2 = a2.generator(2).unwrap();
        let s1s2 = a2.mult(s1, s2);
        for w in 0..a2.num_elements() {
            assert!(a2.bruhat_leq(a2.identity(), w));
        }
        assert!(a2.bruhat_leq(s1, s1s2));
        assert!(!a2.bruhat_leq(s1, s2));
    }

    #[test]
    fn bruhat_matches_subword_characterization() {
        for label in [CartanType::A2, CartanType::B2, CartanType::G2, CartanType::A3] {
            let rd = build_root_datum(label);
            for y in 0..rd.num_elements() {
                let yword = rd.reduced_word(y);
                for w in 0..rd.num_elements() {
                    assert_eq!(
                        rd.bruhat_leq(w, y),
                        all_reduced_subwords_reach(&rd, w, &yword),
                        "subword mismatch in {label} at ({w},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn covers_are_reflections() {
        for label in [CartanType::A2, CartanType::B2, CartanType::G2, CartanType::A3] {
            let rd = build_root_datum(label);
            for w in 0..rd.num_elements() {
                for y in 0..rd.num_elements() {
                    if rd.length(y) != rd.length(w) + 1 {
                        continue;
                    }
                    let is_cover = rd.bruhat_leq(w, y);
                    let by_reflection = (0..rd.pos_coroots().len())
                        .any(|k| rd.mult(rd.reflection(k), w) == y);
                    assert_eq!(is_cover, by_reflection, "{label} cover mismatch");
                }
            }
        }
    }

    #[test]
    fn two_rho_and_word_roundtrip() {
        for label in [
            CartanType::A1,
            CartanType::A2,
            CartanType::B2,
            CartanType::G2,
            CartanType::A3,
        ] {
            let rd = build_root_datum(label);
            let mut total = Coweight::zero(rd.rank());
            for c in rd.pos_coroots() {
                total = total.add(c);
            }
            assert_eq!(total, rd.two_rho());
            for w in 0..rd.num_elements() {
                let word = rd.reduced_word(w);
                assert_eq!(word.len(), rd.length(w) as usize);
                let back = rd.element_from_word(&rd.word_string(w)).unwrap();
                assert_eq!(back, w);
            }
        }
    }

    #[test]
    fn unknown_label_rejected() {
        assert!(matches!("E8".parse::<CartanType>(), Err(Error::Config(_))));
        assert!("g2".parse::<CartanType>().is_ok());
    }
}
