//! Backtrack search over a stabilizer chain: set stabilizers and set
//! transporters.
//!
//! The search walks base images level by level. Writing an element as
//! `g = h·u_l·…·u_1` (transversal elements chosen top-down), the final image
//! of base point `b_i` is fixed once levels `1..i` are chosen, which allows
//! pruning by set membership: a transporter of `A` onto `B` must map `A`
//! into `B` and the complement into the complement.
//!
//! On bitmask domains where the group acts XOR-linearly, choosing images of
//! independent base points forces the images of their whole XOR-span; the
//! search propagates these forced images and checks membership on every
//! spanned point, which prunes most of the tree. Linearity of the generators
//! is verified before the option is honored.

use crate::chain::{PermGroup, StabChain};
use crate::error::{PermError, PermResult};
use crate::orbit::orbit_partition;
use crate::perm::{is_xor_linear, Perm};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Backtrack node budget; exceeding it is an explicit error, never a
    /// wrong answer.
    pub node_budget: u64,
    /// Element-enumeration budget for exhaustive fallbacks.
    pub exhaustive_budget: usize,
    /// Enable XOR-span propagation (bitmask domains with linear action).
    pub xor_span: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: 5_000_000,
            exhaustive_budget: 200_000,
            xor_span: false,
        }
    }
}

const NO_IMAGE: u32 = u32::MAX;

/// Forced-image table for the XOR-span of the chosen base prefix.
struct SpanState {
    img: Vec<u32>,
    used: Vec<bool>,
    members: Vec<u32>,
    marks: Vec<usize>,
}

impl SpanState {
    fn new(degree: usize) -> Self {
        let mut img = vec![NO_IMAGE; degree];
        img[0] = 0;
        let mut used = vec![false; degree];
        used[0] = true;
        SpanState { img, used, members: vec![0], marks: Vec::new() }
    }

    fn image_of(&self, p: u32) -> Option<u32> {
        let v = self.img[p as usize];
        (v != NO_IMAGE).then_some(v)
    }

    /// Record `p ↦ v` for an independent point `p`, propagating over the
    /// span and checking membership consistency; on failure the state is
    /// unchanged and `false` is returned.
    fn push(&mut self, p: u32, v: u32, in_a: &[bool], in_b: &[bool]) -> bool {
        debug_assert_eq!(self.img[p as usize], NO_IMAGE);
        let start = self.members.len();
        self.marks.push(start);
        for i in 0..start {
            let m = self.members[i];
            let np = m ^ p;
            let nv = self.img[m as usize] ^ v;
            if self.used[nv as usize] || in_a[np as usize] != in_b[nv as usize] {
                self.pop();
                return false;
            }
            self.img[np as usize] = nv;
            self.used[nv as usize] = true;
            self.members.push(np);
        }
        true
    }

    fn pop(&mut self) {
        let start = self.marks.pop().expect("pop without matching push");
        while self.members.len() > start {
            let np = self.members.pop().expect("nonempty");
            let nv = self.img[np as usize];
            self.used[nv as usize] = false;
            self.img[np as usize] = NO_IMAGE;
        }
    }
}

struct Dfs<'a> {
    chain: &'a StabChain,
    in_a: &'a [bool],
    in_b: &'a [bool],
    a_pts: &'a [u32],
    nodes: u64,
    budget: u64,
    span: Option<SpanState>,
    /// Stabilizer mode: skip leaves inside this known subgroup.
    known: Option<&'a PermGroup>,
    /// Stabilizer mode: restrict the level-0 image to the minimum of its
    /// orbit under the known subgroup.
    level0_min: Option<&'a [u32]>,
}

impl<'a> Dfs<'a> {
    fn run(&mut self) -> PermResult<Option<Perm>> {
        let id = Perm::identity(self.chain.degree());
        self.dfs(0, &id, &id.clone())
    }

    fn dfs(&mut self, level: usize, s: &Perm, s_inv: &Perm) -> PermResult<Option<Perm>> {
        if let Some(sp) = &self.span {
            if self.a_pts.iter().all(|&x| sp.image_of(x).is_some()) {
                // Every set point already has a verified forced image, so
                // *all* completions below this node map the set correctly;
                // the subtree need not be walked.
                return Ok(self.emit_from_subtree(level, s));
            }
        }
        if level == self.chain.levels.len() {
            for &x in self.a_pts {
                if !self.in_b[s.apply(x) as usize] {
                    return Ok(None);
                }
            }
            if let Some(k) = self.known {
                if k.contains(s) {
                    return Ok(None);
                }
            }
            return Ok(Some(s.clone()));
        }
        let bp = self.chain.levels[level].point;
        let forced = self.span.as_ref().and_then(|sp| sp.image_of(bp));
        let candidates: Vec<u32> = match forced {
            Some(f) => {
                let delta = s_inv.apply(f);
                if self.chain.levels[level].in_orbit(delta) {
                    vec![delta]
                } else {
                    Vec::new()
                }
            }
            None => self.chain.levels[level].orbit().to_vec(),
        };
        for delta in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(PermError::Budget(format!(
                    "backtrack exceeded {} nodes",
                    self.budget
                )));
            }
            let v = s.apply(delta);
            if self.in_a[bp as usize] != self.in_b[v as usize] {
                continue;
            }
            if level == 0 {
                if let Some(mins) = self.level0_min {
                    if mins[v as usize] != v {
                        continue;
                    }
                }
            }
            let mut pushed = false;
            if forced.is_none() {
                if let Some(sp) = self.span.as_mut() {
                    if !sp.push(bp, v, self.in_a, self.in_b) {
                        continue;
                    }
                    pushed = true;
                }
            }
            let lev = &self.chain.levels[level];
            let ns = lev.transversal_to(delta).then(s);
            let ns_inv = s_inv.then(lev.transversal_from(delta));
            let res = self.dfs(level + 1, &ns, &ns_inv);
            if pushed {
                self.span.as_mut().expect("span present").pop();
            }
            match res {
                Ok(Some(found)) => return Ok(Some(found)),
                Ok(None) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    /// Everything below this node is valid; the subtree is the set
    /// `{w·then·s : w in the pointwise stabilizer of the base prefix}`.
    /// Return `s` itself, or — when a known subgroup must be escaped — the
    /// first subtree element outside it (`None` when the subtree is
    /// contained in the known subgroup).
    fn emit_from_subtree(&self, level: usize, s: &Perm) -> Option<Perm> {
        let k = match self.known {
            None => return Some(s.clone()),
            Some(k) => k,
        };
        if !k.contains(s) {
            return Some(s.clone());
        }
        if let Some(lev) = self.chain.levels.get(level) {
            // This level's generators generate the whole pointwise
            // stabilizer of the base prefix (nested strong generators).
            for w in &lev.gens {
                if !k.contains(w) {
                    return Some(w.then(s));
                }
            }
        }
        None
    }
}

fn membership_vec(degree: usize, pts: &[u32]) -> PermResult<(Vec<bool>, Vec<u32>)> {
    let mut v = vec![false; degree];
    for &p in pts {
        if (p as usize) >= degree {
            return Err(PermError::Domain(format!(
                "point {p} outside domain of size {degree}"
            )));
        }
        v[p as usize] = true;
    }
    let dedup: Vec<u32> = (0..degree as u32).filter(|&p| v[p as usize]).collect();
    Ok((v, dedup))
}

fn validate_xor(g: &PermGroup, opts: &SearchOptions) -> PermResult<bool> {
    if !opts.xor_span {
        return Ok(false);
    }
    for gen in g.generators() {
        if !is_xor_linear(gen) {
            return Err(PermError::NotLinear(
                "xor_span requested but a generator is not XOR-linear".into(),
            ));
        }
    }
    Ok(true)
}

/// An element of `g` mapping the set `a` onto the set `b`, or `None` after
/// a complete (budgeted) search.
pub fn set_transporter(
    g: &PermGroup,
    a: &[u32],
    b: &[u32],
    opts: &SearchOptions,
) -> PermResult<Option<Perm>> {
    let degree = g.degree();
    let (in_a, a_pts) = membership_vec(degree, a)?;
    let (in_b, b_pts) = membership_vec(degree, b)?;
    if a_pts.len() != b_pts.len() {
        return Ok(None);
    }
    if a_pts == b_pts {
        return Ok(Some(Perm::identity(degree)));
    }
    let use_span = validate_xor(g, opts)?;
    let mut d = Dfs {
        chain: g.chain(),
        in_a: &in_a,
        in_b: &in_b,
        a_pts: &a_pts,
        nodes: 0,
        budget: opts.node_budget,
        span: use_span.then(|| SpanState::new(degree)),
        known: None,
        level0_min: None,
    };
    d.run()
}

/// The full setwise stabilizer of `s` in `g`, grown one backtrack-found
/// generator at a time with known-subgroup pruning.
pub fn set_stabilizer(g: &PermGroup, s: &[u32], opts: &SearchOptions) -> PermResult<PermGroup> {
    let degree = g.degree();
    let (in_s, s_pts) = membership_vec(degree, s)?;
    if s_pts.is_empty() || s_pts.len() == degree {
        return Ok(g.clone());
    }
    let use_span = validate_xor(g, opts)?;
    let mut known = PermGroup::trivial(degree);
    let mut budget_left = opts.node_budget;
    loop {
        let part = orbit_partition(degree, known.generators());
        let mut mins = vec![0u32; degree];
        for (p, m) in mins.iter_mut().enumerate() {
            *m = part.orbits[part.id[p]][0];
        }
        let found = {
            let mut d = Dfs {
                chain: g.chain(),
                in_a: &in_s,
                in_b: &in_s,
                a_pts: &s_pts,
                nodes: 0,
                budget: budget_left,
                span: use_span.then(|| SpanState::new(degree)),
                known: Some(&known),
                level0_min: Some(&mins),
            };
            let res = d.run()?;
            budget_left = budget_left.saturating_sub(d.nodes);
            res
        };
        match found {
            Some(new_gen) => known.add_generator(new_gen)?,
            None => break,
        }
    }
    Ok(known)
}
