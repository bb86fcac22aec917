//! The alcove model: pairs `(w, chi)`, generator actions, distance, and the
//! partial order decided by two independent algorithms.
//!
//! An alcove is a pair of a finite Weyl element and a coweight. The grading
//! `level(A) = 2|chi| + l(w)` turns the order into a graded poset whose
//! covers have distance one. The authoritative order [`AlcoveCtx::leq`] is
//! the closure criterion: `A <= B` iff `chi_B - chi_A` is natural and the
//! pair of Weyl parts is connected by a reflection chain within that
//! coweight budget. The independently generated order
//! [`AlcoveCtx::leq_generated`] is the transitive closure of Bruhat covers
//! and reflection translates inside a window; agreement of the two is a core
//! acceptance test, not an assumption.
//!
//! The budgeted reflection chains compose on a calibrated side (see
//! [`CompositeSide`]): both readings of the translate move are implemented,
//! and the one that reproduces the closure criterion on the rank-2 depth-4
//! calibration window is the default.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::rootdata::{Coweight, RootDatumTables};
use crate::{Error, Result};

/// An alcove `(w, chi)`: a finite Weyl element index and a coweight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alcove {
    pub chi: Coweight,
    pub w: usize,
}

impl Alcove {
    pub fn new(w: usize, chi: Coweight) -> Self {
        Alcove { w, chi }
    }

    pub fn base(rd: &RootDatumTables) -> Self {
        Alcove {
            w: rd.identity(),
            chi: Coweight::zero(rd.rank()),
        }
    }

    /// The integer grading `2|chi| + l(w)`.
    pub fn level(&self, rd: &RootDatumTables) -> i64 {
        2 * self.chi.height() + rd.length(self.w) as i64
    }

    /// Translate by a coweight.
    pub fn translate(&self, nu: &Coweight) -> Alcove {
        Alcove {
            w: self.w,
            chi: self.chi.add(nu),
        }
    }

    pub fn render(&self, rd: &RootDatumTables) -> String {
        format!("{}@{}", rd.word_string(self.w), self.chi)
    }
}

/// Which side the reflection composes on in the translate move
/// `(w, chi) -> (refl * w or w * refl, chi + theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositeSide {
    Left,
    Right,
}

impl fmt::Display for CompositeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositeSide::Left => "left",
            CompositeSide::Right => "right",
        })
    }
}

/// A depth-bounded downward window below a top alcove: all `B <= top` with
/// `distance(B, top) <= depth`, enumerated by backward breadth-first search
/// through the cover relation.
#[derive(Debug, Clone)]
pub struct AlcoveWindow {
    top: Alcove,
    depth: u32,
    members: Vec<Alcove>,
    index: HashMap<Alcove, usize>,
}

impl AlcoveWindow {
    pub fn top(&self) -> Alcove {
        self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Members sorted by level, then by the intrinsic alcove order.
    pub fn members(&self) -> &[Alcove] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &Alcove) -> bool {
        self.index.contains_key(a)
    }

    pub fn position(&self, a: &Alcove) -> Option<usize> {
        self.index.get(a).copied()
    }
}

/// Reachability closure of the generating moves inside one window.
pub struct WindowPoset {
    blocks: usize,
    /// `reach[i]` is a bitset over member positions: the up-set of member i.
    reach: Vec<Vec<u64>>,
}

impl WindowPoset {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.reach[i][j / 64] & (1 << (j % 64)) != 0
    }
}

/// Alcove operations over a fixed root datum, with synchronized memo tables
/// for reflection-chain reachability and window posets.
pub struct AlcoveCtx<'a> {
    rd: &'a RootDatumTables,
    side: CompositeSide,
    /// Permutation tables of left/right multiplication by each reflection.
    refl_left: Vec<Vec<usize>>,
    refl_right: Vec<Vec<usize>>,
    reach_memo: Mutex<HashMap<(usize, Coweight), u64>>,
    poset_memo: Mutex<HashMap<(Alcove, u32), Arc<WindowPoset>>>,
}

impl<'a> AlcoveCtx<'a> {
    pub fn new(rd: &'a RootDatumTables) -> Self {
        Self::with_side(rd, CompositeSide::Right)
    }

    pub fn with_side(rd: &'a RootDatumTables, side: CompositeSide) -> Self {
        let n = rd.num_elements();
        let m = rd.pos_coroots().len();
        let mut refl_left = vec![vec![0usize; n]; m];
        let mut refl_right = vec![vec![0usize; n]; m];
        for k in 0..m {
            let r = rd.reflection(k);
            for w in 0..n {
                refl_left[k][w] = rd.mult(r, w);
                refl_right[k][w] = rd.mult(w, r);
            }
        }
        AlcoveCtx {
            rd,
            side,
            refl_left,
            refl_right,
            reach_memo: Mutex::new(HashMap::new()),
            poset_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn tables(&self) -> &'a RootDatumTables {
        self.rd
    }

    pub fn side(&self) -> CompositeSide {
        self.side
    }

    /// The reflection composite used by the translate move.
    fn composite(&self, k: usize, w: usize) -> usize {
        match self.side {
            CompositeSide::Left => self.refl_left[k][w],
            CompositeSide::Right => self.refl_right[k][w],
        }
    }

    /// Action of the affine Coxeter generators: index 0 is the affine wall,
    /// `1..=rank` are the finite generators.
    pub fn gen_action(&self, k: usize, a: &Alcove) -> Alcove {
        if k == 0 {
            let bw = self.rd.act(&self.rd.beta0(), a.w);
            Alcove {
                w: self.rd.mult(self.rd.s_beta0(), a.w),
                chi: a.chi.sub(&bw),
            }
        } else {
            let g = self.rd.generator(k).expect("generator index");
            Alcove {
                w: self.rd.mult(g, a.w),
                chi: a.chi,
            }
        }
    }

    /// Signed distance `level(B) - level(A)`; antisymmetric and additive.
    pub fn distance(&self, a: &Alcove, b: &Alcove) -> i64 {
        b.level(self.rd) - a.level(self.rd)
    }

    /// Reachable Weyl elements from `w` by reflection chains whose coroots
    /// sum to at most `budget`, as a bitset over element indices.
    fn reachable(&self, w: usize, budget: &Coweight) -> u64 {
        if let Some(&bits) = self.reach_memo.lock().unwrap().get(&(w, *budget)) {
            return bits;
        }
        // Graded DP over the budget box: every smaller budget is computed
        // along the way and memoized.
        let coroots = self.rd.pos_coroots();
        let boxed = crate::kostant::iterate_box(budget);
        let mut local: HashMap<Coweight, u64> = HashMap::new();
        for beta in &boxed {
            if let Some(&bits) = self.reach_memo.lock().unwrap().get(&(w, *beta)) {
                local.insert(*beta, bits);
                continue;
            }
            let mut bits = 1u64 << w;
            for (k, theta) in coroots.iter().enumerate() {
                if theta.leq(beta) {
                    let prev = local[&beta.sub(theta)];
                    let mut image = 0u64;
                    let mut rest = prev;
                    while rest != 0 {
                        let u = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        image |= 1 << self.composite(k, u);
                    }
                    bits |= image;
                }
            }
            local.insert(*beta, bits);
            self.reach_memo.lock().unwrap().insert((w, *beta), bits);
        }
        local[budget]
    }

    /// Budgeted connectivity: some reflection chain with coroot sum at most
    /// `gamma` carries `w` to an element Bruhat-below `y`.
    pub fn gamma_connected(&self, w: usize, y: usize, gamma: &Coweight) -> Result<bool> {
        if !gamma.is_natural() {
            return Err(Error::Domain(format!(
                "connectivity budget {gamma} has a negative coefficient"
            )));
        }
        Ok(self.reachable(w, gamma) & self.rd.bruhat_downset(y) != 0)
    }

    /// The authoritative alcove order.
    pub fn leq(&self, a: &Alcove, b: &Alcove) -> bool {
        let delta = b.chi.sub(&a.chi);
        if !delta.is_natural() {
            return false;
        }
        self.gamma_connected(a.w, b.w, &delta).expect("natural delta")
    }

    /// Whether `s_0 A <= A`. Equivalent to the positivity of the image of
    /// the highest-root coroot under the Weyl part, which is the form used
    /// here; the order-theoretic reading is cross-checked in tests.
    pub fn s0_order_side(&self, a: &Alcove) -> bool {
        self.rd.act(&self.rd.beta0(), a.w).is_natural()
    }

    /// All covers of `A` from above: Bruhat covers in the same coweight, and
    /// reflection translates that drop the length by exactly `2|theta| - 1`
    /// for a reflection of that same length.
    pub fn covers_up(&self, a: &Alcove) -> Vec<Alcove> {
        let mut out = Vec::new();
        for y in self.rd.bruhat_covers_up(a.w) {
            out.push(Alcove { w: y, chi: a.chi });
        }
        for (k, theta) in self.rd.pos_coroots().iter().enumerate() {
            let len_bound = 2 * theta.height() - 1;
            if self.rd.reflection_length(k) as i64 != len_bound {
                continue;
            }
            let u = self.composite(k, a.w);
            if self.rd.length(a.w) as i64 - self.rd.length(u) as i64 == len_bound {
                out.push(Alcove {
                    w: u,
                    chi: a.chi.add(theta),
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// All covers of `A` from below; inverse of [`covers_up`](Self::covers_up).
    pub fn covers_down(&self, a: &Alcove) -> Vec<Alcove> {
        let mut out = Vec::new();
        let lw = self.rd.length(a.w);
        for y in 0..self.rd.num_elements() {
            if self.rd.length(y) + 1 == lw && self.rd.bruhat_leq(y, a.w) {
                out.push(Alcove { w: y, chi: a.chi });
            }
        }
        for (k, theta) in self.rd.pos_coroots().iter().enumerate() {
            let len_bound = 2 * theta.height() - 1;
            if self.rd.reflection_length(k) as i64 != len_bound {
                continue;
            }
            let u = self.composite(k, a.w);
            if self.rd.length(u) as i64 - self.rd.length(a.w) as i64 == len_bound {
                out.push(Alcove {
                    w: u,
                    chi: a.chi.sub(theta),
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Enumerate the window below `top`: all `B <= top` within the depth
    /// bound, by backward breadth-first search through the covers.
    pub fn window(&self, top: Alcove, depth: u32) -> AlcoveWindow {
        let floor = top.level(self.rd) - depth as i64;
        let mut members = vec![top];
        let mut index = HashMap::new();
        index.insert(top, 0usize);
        let mut queue = VecDeque::new();
        queue.push_back(top);
        while let Some(a) = queue.pop_front() {
            for b in self.covers_down(&a) {
                if b.level(self.rd) < floor || index.contains_key(&b) {
                    continue;
                }
                index.insert(b, members.len());
                members.push(b);
                queue.push_back(b);
            }
        }
        members.sort_by_key(|a| (a.level(self.rd), *a));
        for (i, a) in members.iter().enumerate() {
            index.insert(*a, i);
        }
        AlcoveWindow {
            top,
            depth,
            members,
            index,
        }
    }

    /// The transitive closure of the generating moves on a window.
    pub fn window_poset(&self, window: &AlcoveWindow) -> Arc<WindowPoset> {
        let key = (window.top, window.depth);
        if let Some(p) = self.poset_memo.lock().unwrap().get(&key) {
            return Arc::clone(p);
        }
        let n = window.members.len();
        let blocks = n.div_ceil(64);
        let mut reach = vec![vec![0u64; blocks]; n];
        // Members are sorted by level and every move strictly increases the
        // level, so a reverse sweep is a valid topological order.
        for i in (0..n).rev() {
            reach[i][i / 64] |= 1 << (i % 64);
            let a = window.members[i];
            let mut ups: Vec<Alcove> = Vec::new();
            for y in self.rd.bruhat_covers_up(a.w) {
                ups.push(Alcove { w: y, chi: a.chi });
            }
            for (k, theta) in self.rd.pos_coroots().iter().enumerate() {
                ups.push(Alcove {
                    w: self.composite(k, a.w),
                    chi: a.chi.add(theta),
                });
            }
            for b in ups {
                if let Some(j) = window.position(&b) {
                    debug_assert!(j > i);
                    let (lo, hi) = reach.split_at_mut(j);
                    for (dst, src) in lo[i].iter_mut().zip(hi[0].iter()) {
                        *dst |= *src;
                    }
                }
            }
        }
        let poset = Arc::new(WindowPoset { blocks, reach });
        self.poset_memo.lock().unwrap().insert(key, Arc::clone(&poset));
        poset
    }

    /// The generated order on a window: reflexive-transitive closure of
    /// Bruhat covers and reflection translates. Must agree with
    /// [`leq`](Self::leq) on every window; that agreement is an acceptance
    /// criterion.
    pub fn leq_generated(&self, a: &Alcove, b: &Alcove, window: &AlcoveWindow) -> Result<bool> {
        let (i, j) = match (window.position(a), window.position(b)) {
            (Some(i), Some(j)) => (i, j),
            _ => {
                return Err(Error::Usage(format!(
                    "leq_generated inputs must lie in the window (top {}, depth {})",
                    window.top.render(self.rd),
                    window.depth
                )))
            }
        };
        let poset = self.window_poset(window);
        let _ = poset.blocks;
        Ok(poset.leq(i, j))
    }

    /// Dimension of a Schubert stratum: `2|eta - chi + alpha| + l(w) - dim X`.
    /// Only differences of these values are geometrically meaningful; the
    /// difference of two equals the alcove distance.
    pub fn stratum_dim(
        &self,
        w: usize,
        eta: &Coweight,
        chi: &Coweight,
        alpha: &Coweight,
    ) -> Result<i64> {
        let deg = eta.sub(chi).add(alpha);
        if !deg.is_natural() {
            return Err(Error::Domain(format!(
                "stratum degree {deg} has a negative coefficient"
            )));
        }
        Ok(2 * deg.height() + self.rd.length(w) as i64 - self.rd.dim_x() as i64)
    }
}

/// Decide the composite-side convention on the rank-2 depth-4 calibration
/// window. A side passes when the criterion order agrees with the generated
/// order on all pairs *and* satisfies the wall-crossing law: `s_0 A <= A`
/// exactly when the image of the dual highest-root coroot under the Weyl
/// part stays positive. Exactly one side passes; it is frozen into every
/// context created by [`AlcoveCtx::new`] and asserted here.
pub fn calibrate_composite_side() -> CompositeSide {
    use crate::rootdata::{build_root_datum, CartanType};
    let rd = build_root_datum(CartanType::A2);
    let mut passing = Vec::new();
    for side in [CompositeSide::Left, CompositeSide::Right] {
        let ctx = AlcoveCtx::with_side(&rd, side);
        let top = Alcove::new(rd.w0(), Coweight::zero(2));
        let window = ctx.window(top, 4);
        let orders_agree = window.members().iter().all(|a| {
            window
                .members()
                .iter()
                .all(|b| ctx.leq(a, b) == ctx.leq_generated(a, b, &window).unwrap())
        });
        let wall_law = window.members().iter().all(|a| {
            let s0a = ctx.gen_action(0, a);
            ctx.leq(&s0a, a) == ctx.s0_order_side(a)
        });
        if orders_agree && wall_law {
            passing.push(side);
        }
    }
    assert_eq!(
        passing,
        vec![CompositeSide::Right],
        "composite-side calibration: expected exactly the right convention to pass"
    );
    CompositeSide::Right
}
