//! Brute-force validators: homomorphism counts into small finite groups,
//! automorphism group orders, and homology of finite covers from the
//! permutation image of the Fox Jacobian.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::presentations::{Presentation, Word};

/// Default limit on partial assignments explored by [`hom_count`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

impl FiniteGroupTable {
    /// Validates the group axioms. `mul[a * n + b]` is the product `ab`.
    pub fn new(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order || mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParameter("malformed multiplication table".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidParameter("table has no identity".into()))?;
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| Error::InvalidParameter(format!("element {a} has no inverse")))?;
            if at(b, a) != identity {
                return Err(Error::InvalidParameter(format!("element {a} has no two-sided inverse")));
            }
            inverse[a] = b as u32;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidParameter("table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            order,
            mul,
            identity: identity as u32,
            inverse,
        })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(f(a, b) as u32);
            }
        }
        Self::new(order, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut out = self.identity;
        for _ in 0..e.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[u32]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[u32]) -> bool {
        self.generated(gens).iter().all(|&b| b)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Value of `w` when generator `i` maps to `images[i]`.
    pub fn eval_word(&self, w: &Word, images: &[u32]) -> u32 {
        w.syllables()
            .iter()
            .fold(self.identity, |acc, &(g, e)| self.mul(acc, self.pow(images[g], e)))
    }

    /// `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `Z_{c_1} + ... + Z_{c_r}`, elements encoded with the first factor fastest.
    pub fn abelian(cs: &[usize]) -> Result<Self> {
        let n: usize = cs.iter().product();
        Self::from_fn(n, |a, b| {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            for &c in cs {
                out += ((a % c + b % c) % c) * place;
                place *= c;
                a /= c;
                b /= c;
            }
            out
        })
    }

    pub fn direct_product(&self, other: &FiniteGroupTable) -> Result<Self> {
        let m = other.order;
        Self::from_fn(self.order * m, |a, b| {
            let x = self.mul((a / m) as u32, (b / m) as u32) as usize;
            let y = other.mul((a % m) as u32, (b % m) as u32) as usize;
            x * m + y
        })
    }

    /// The group of permutations `perms` (closed under composition), where
    /// `ab` means "first `a`, then `b`".
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut mul = Vec::with_capacity(perms.len() * perms.len());
        for a in perms {
            for b in perms {
                let c: Vec<usize> = a.iter().map(|&x| b[x]).collect();
                let k = index
                    .get(c.as_slice())
                    .ok_or_else(|| Error::InvalidParameter("permutations are not closed".into()))?;
                mul.push(*k as u32);
            }
        }
        Self::new(perms.len(), mul)
    }

    /// `S_n`; also returns the permutation of each element.
    pub fn symmetric(n: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        let perms = all_permutations(n);
        Ok((Self::from_permutations(&perms)?, perms))
    }

    /// `A_n`.
    pub fn alternating(n: usize) -> Result<Self> {
        let perms: Vec<Vec<usize>> = all_permutations(n).into_iter().filter(|p| is_even(p)).collect();
        Self::from_permutations(&perms)
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomMode {
    All,
    Epi,
}

/// Search plan: generator order and, for each depth, the relators that
/// become fully assigned there.
struct Plan {
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
}

fn plan(p: &Presentation) -> Plan {
    let l = p.num_generators();
    let mut occurrences = vec![0usize; l];
    for r in p.relators() {
        for (g, _) in r.letters() {
            occurrences[g] += 1;
        }
    }
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(occurrences[g]), g));
    let mut position = vec![0usize; l];
    for (k, &g) in order.iter().enumerate() {
        position[g] = k;
    }
    let mut checks = vec![Vec::new(); l];
    for (i, r) in p.relators().iter().enumerate() {
        if let Some(k) = r.letters().map(|(g, _)| position[g]).max() {
            checks[k].push(i);
        }
    }
    Plan { order, checks }
}

/// Counts generator assignments `x_i -> g_i` killing every relator and
/// accepted by `leaf`. Parallel over the image of the first generator.
pub fn hom_count_filtered<F>(
    p: &Presentation,
    t: &FiniteGroupTable,
    budget: u64,
    leaf: F,
) -> Result<BigInt>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let l = p.num_generators();
    if l == 0 {
        return Ok(BigInt::from(leaf(&[]) as u32));
    }
    let plan = plan(p);
    let spent = AtomicU64::new(0);
    let counts: Vec<Result<u128>> = (0..t.order() as u32)
        .into_par_iter()
        .map(|first| {
            let mut images = vec![t.identity(); l];
            images[plan.order[0]] = first;
            let mut count = 0u128;
            search(p, t, &plan, 1, &mut images, &mut count, &spent, budget, &leaf)?;
            Ok(count)
        })
        .collect();
    let mut total = BigInt::zero();
    for c in counts {
        total += c?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn search<F: Fn(&[u32]) -> bool>(
    p: &Presentation,
    t: &FiniteGroupTable,
    plan: &Plan,
    depth: usize,
    images: &mut [u32],
    count: &mut u128,
    spent: &AtomicU64,
    budget: u64,
    leaf: &F,
) -> Result<()> {
    if spent.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(Error::Infeasible { budget });
    }
    for &r in &plan.checks[depth - 1] {
        if t.eval_word(&p.relators()[r], images) != t.identity() {
            return Ok(());
        }
    }
    if depth == plan.order.len() {
        if leaf(images) {
            *count += 1;
        }
        return Ok(());
    }
    let g = plan.order[depth];
    for x in 0..t.order() as u32 {
        images[g] = x;
        search(p, t, plan, depth + 1, images, count, spent, budget, leaf)?;
    }
    Ok(())
}

/// `|Hom(G, T)|` or `|Epi(G, T)|`. Presentations whose relators can be read
/// off left to right while keeping few images in memory (one-relator surface
/// groups, say) go through [`frontier_count`]; the rest are backtracked.
pub fn hom_count(p: &Presentation, t: &FiniteGroupTable, mode: HomMode, budget: u64) -> Result<BigInt> {
    let frontier = Frontier::new(p);
    if frontier.max_width() <= 3 && p.num_generators() > 3 {
        return frontier_count(p, t, mode, budget);
    }
    match mode {
        HomMode::All => hom_count_filtered(p, t, budget, |_| true),
        HomMode::Epi => hom_count_filtered(p, t, budget, |imgs| t.generates(imgs)),
    }
}

/// For each search depth: which images must be remembered and how far each
/// relator can be multiplied out.
struct Frontier {
    order: Vec<usize>,
    letters: Vec<Vec<(usize, i8)>>,
    live: Vec<Vec<usize>>,
    prefix: Vec<Vec<usize>>,
}

impl Frontier {
    fn new(p: &Presentation) -> Self {
        let order = plan(p).order;
        let l = order.len();
        let letters: Vec<Vec<(usize, i8)>> = p.relators().iter().map(|r| r.letters().collect()).collect();
        let mut assigned = vec![false; p.num_generators()];
        let mut live = Vec::with_capacity(l);
        let mut prefix = Vec::with_capacity(l);
        for &g in &order {
            assigned[g] = true;
            let lens: Vec<usize> = letters
                .iter()
                .map(|r| r.iter().take_while(|&&(h, _)| assigned[h]).count())
                .collect();
            let mut pending = vec![false; assigned.len()];
            for (r, &len) in letters.iter().zip(&lens) {
                for &(h, _) in &r[len..] {
                    pending[h] = true;
                }
            }
            live.push((0..assigned.len()).filter(|&h| assigned[h] && pending[h]).collect());
            prefix.push(lens);
        }
        Frontier {
            order,
            letters,
            live,
            prefix,
        }
    }

    /// Largest number of group elements in a state.
    fn max_width(&self) -> usize {
        (0..self.order.len())
            .map(|k| {
                let open = (0..self.letters.len())
                    .filter(|&i| self.prefix[k][i] < self.letters[i].len())
                    .count();
                self.live[k].len() + open
            })
            .max()
            .unwrap_or(0)
    }
}

/// Subgroups met while counting epimorphisms, with a memoised join.
struct Subgroups<'a> {
    t: &'a FiniteGroupTable,
    ids: HashMap<Vec<bool>, u32>,
    members: Vec<Vec<u32>>,
    join: HashMap<(u32, u32), u32>,
}

impl<'a> Subgroups<'a> {
    fn new(t: &'a FiniteGroupTable) -> Self {
        let mut s = Subgroups {
            t,
            ids: HashMap::new(),
            members: Vec::new(),
            join: HashMap::new(),
        };
        s.intern(t.generated(&[]));
        s
    }

    fn intern(&mut self, set: Vec<bool>) -> u32 {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        let id = self.members.len() as u32;
        self.members
            .push((0..set.len() as u32).filter(|&x| set[x as usize]).collect());
        self.ids.insert(set, id);
        id
    }

    fn join(&mut self, h: u32, x: u32) -> u32 {
        if let Some(&j) = self.join.get(&(h, x)) {
            return j;
        }
        let mut gens = self.members[h as usize].clone();
        gens.push(x);
        let j = self.intern(self.t.generated(&gens));
        self.join.insert((h, x), j);
        j
    }

    fn is_whole(&self, h: u32) -> bool {
        self.members[h as usize].len() == self.t.order()
    }
}

/// Layered count of generator assignments. A state holds the images still
/// needed by some relator, the value of every relator prefix multiplied out
/// so far and, for epimorphisms, the subgroup generated by the images.
pub fn frontier_count(p: &Presentation, t: &FiniteGroupTable, mode: HomMode, budget: u64) -> Result<BigInt> {
    let f = Frontier::new(p);
    let nrel = f.letters.len();
    let mut subs = Subgroups::new(t);
    let mut layer: HashMap<Vec<u32>, u128> = HashMap::new();
    let mut start = vec![t.identity(); nrel];
    start.push(0);
    layer.insert(start, 1);
    let mut prev_live: Vec<usize> = Vec::new();
    let mut prev_len = vec![0usize; nrel];
    let mut spent = 0u64;
    let mut image = vec![t.identity(); p.num_generators()];
    for (k, &g) in f.order.iter().enumerate() {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (state, &count) in &layer {
            let (imgs, rest) = state.split_at(prev_live.len());
            for (&h, &v) in prev_live.iter().zip(imgs) {
                image[h] = v;
            }
            'value: for x in 0..t.order() as u32 {
                spent += 1;
                if spent > budget {
                    return Err(Error::Infeasible { budget });
                }
                image[g] = x;
                let mut key: Vec<u32> = f.live[k].iter().map(|&h| image[h]).collect();
                for i in 0..nrel {
                    let r = &f.letters[i];
                    if prev_len[i] == r.len() {
                        key.push(t.identity());
                        continue;
                    }
                    let mut v = rest[i];
                    for &(h, s) in &r[prev_len[i]..f.prefix[k][i]] {
                        let y = if s > 0 { image[h] } else { t.inv(image[h]) };
                        v = t.mul(v, y);
                    }
                    if f.prefix[k][i] == r.len() && v != t.identity() {
                        continue 'value;
                    }
                    key.push(v);
                }
                let sub = match mode {
                    HomMode::All => 0,
                    HomMode::Epi => subs.join(rest[rest.len() - 1], x),
                };
                key.push(sub);
                *next.entry(key).or_insert(0) += count;
            }
        }
        layer = next;
        prev_live = f.live[k].clone();
        prev_len = f.prefix[k].clone();
    }
    let mut total = BigInt::zero();
    for (state, count) in layer {
        let sub = *state.last().unwrap();
        if mode == HomMode::All || subs.is_whole(sub) {
            total += count;
        }
    }
    Ok(total)
}

/// Number of homomorphisms `G -> S_k` whose action on `k` points is transitive.
pub fn transitive_hom_count(p: &Presentation, k: usize, budget: u64) -> Result<BigInt> {
    let (t, perms) = FiniteGroupTable::symmetric(k)?;
    hom_count_filtered(p, &t, budget, |imgs| {
        let action: Vec<Vec<usize>> = imgs.iter().map(|&x| perms[x as usize].clone()).collect();
        is_transitive(&action, k)
    })
}

/// Index-`k` subgroups counted directly: transitive actions with `1` fixed
/// as base point, i.e. transitive homomorphisms divided by `(k-1)!`.
pub fn subgroup_count(p: &Presentation, k: usize, budget: u64) -> Result<BigInt> {
    let t = transitive_hom_count(p, k, budget)?;
    crate::arith::exact_div(&t, &crate::arith::factorial(k as u64 - 1), "transitive actions")
}

/// Greedy generating set: repeatedly adds the element enlarging the
/// generated subgroup the most.
pub fn generating_set(t: &FiniteGroupTable) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = t.generated(&gens);
    while span.iter().any(|&b| !b) {
        let best = (0..t.order() as u32)
            .filter(|&x| !span[x as usize])
            .max_by_key(|&x| {
                let mut g = gens.clone();
                g.push(x);
                (t.generated(&g).iter().filter(|&&b| b).count(), std::cmp::Reverse(x))
            })
            .unwrap();
        gens.push(best);
        span = t.generated(&gens);
    }
    gens
}

/// Each element as a product of generators: `(parent, generator index)`,
/// found by breadth-first search from the identity.
fn spanning_tree(t: &FiniteGroupTable, gens: &[u32]) -> Vec<Option<(u32, usize)>> {
    let mut tree = vec![None; t.order()];
    let mut seen = vec![false; t.order()];
    seen[t.identity() as usize] = true;
    let mut queue = VecDeque::from([t.identity()]);
    let mut order = Vec::new();
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for (i, &g) in gens.iter().enumerate() {
            let y = t.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                tree[y as usize] = Some((x, i));
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Extends `gens[i] -> images[i]` along the spanning tree and returns the
/// map if it is a homomorphism.
fn extend(
    a: &FiniteGroupTable,
    b: &FiniteGroupTable,
    bfs: &[u32],
    tree: &[Option<(u32, usize)>],
    images: &[u32],
) -> Option<Vec<u32>> {
    let mut f = vec![u32::MAX; a.order()];
    f[a.identity() as usize] = b.identity();
    for &x in bfs {
        if let Some((parent, g)) = tree[x as usize] {
            f[x as usize] = b.mul(f[parent as usize], images[g]);
        }
    }
    for x in 0..a.order() as u32 {
        for y in 0..a.order() as u32 {
            if f[a.mul(x, y) as usize] != b.mul(f[x as usize], f[y as usize]) {
                return None;
            }
        }
    }
    Some(f)
}

fn bfs_order(t: &FiniteGroupTable, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; t.order()];
    seen[t.identity() as usize] = true;
    let mut queue = VecDeque::from([t.identity()]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        out.push(x);
        for &g in gens {
            let y = t.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    out
}

/// Number of isomorphisms `a -> b`.
pub fn isomorphism_count(a: &FiniteGroupTable, b: &FiniteGroupTable) -> u64 {
    if a.order() != b.order() {
        return 0;
    }
    let gens = generating_set(a);
    let tree = spanning_tree(a, &gens);
    let bfs = bfs_order(a, &gens);
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order() as u32).filter(|&y| b.element_order(y) == o).collect()
        })
        .collect();
    let mut count = 0;
    let mut images = vec![0u32; gens.len()];
    let mut stack = vec![0usize];
    // odometer over the candidate lists
    loop {
        let k = stack.len() - 1;
        if stack[k] == candidates[k].len() {
            stack.pop();
            if stack.is_empty() {
                break;
            }
            *stack.last_mut().unwrap() += 1;
            continue;
        }
        images[k] = candidates[k][stack[k]];
        if k + 1 < gens.len() {
            stack.push(0);
            continue;
        }
        if let Some(f) = extend(a, b, &bfs, &tree, &images) {
            let mut hit = vec![false; b.order()];
            if f.iter().all(|&y| !std::mem::replace(&mut hit[y as usize], true)) {
                count += 1;
            }
        }
        stack[k] += 1;
    }
    count
}

/// `|Aut T|`.
pub fn aut_order(t: &FiniteGroupTable) -> u64 {
    isomorphism_count(t, t)
}

/// Whether the permutations `action[g]` of `{0..k}` act transitively.
pub fn is_transitive(action: &[Vec<usize>], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for perm in action {
            let y = perm[x];
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == k
}

/// First homology of a finite cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverHomology {
    pub index: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl CoverHomology {
    /// Dimension of `H_1(K; F_q)`, or `H_1(K; Q)` for `q = 0`.
    pub fn b1(&self, q: u64) -> usize {
        if q == 0 {
            return self.betti;
        }
        let q = BigInt::from(q);
        self.betti + self.torsion.iter().filter(|d| d.is_multiple_of(&q)).count()
    }
}

/// `H_1` of the stabilizer of point `0` under the right action where
/// generator `g` sends point `x` to `action[g][x]`.
///
/// The Fox Jacobian is pushed into `k x k` permutation matrices; its
/// cokernel is `H_1(K) + Z^{k-1}`.
pub fn cover_homology(p: &Presentation, action: &[Vec<usize>]) -> Result<CoverHomology> {
    let l = p.num_generators();
    if action.len() != l {
        return Err(Error::InvalidParameter("one permutation per generator is required".into()));
    }
    let k = action.first().map_or(1, |a| a.len());
    for perm in action {
        let mut hit = vec![false; k];
        if perm.len() != k || perm.iter().any(|&y| y >= k || std::mem::replace(&mut hit[y], true)) {
            return Err(Error::InvalidParameter("generator images are not permutations".into()));
        }
    }
    if !is_transitive(action, k) {
        return Err(Error::NotTransitive);
    }
    let inverse: Vec<Vec<usize>> = action
        .iter()
        .map(|perm| {
            let mut inv = vec![0; k];
            for (x, &y) in perm.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();
    let m = p.num_relators();
    let mut a = vec![0i64; m * k * l * k];
    let cols = l * k;
    for (i, r) in p.relators().iter().enumerate() {
        // prefix as a map on points
        let mut prefix: Vec<usize> = (0..k).collect();
        for (g, s) in r.letters() {
            let step = |pre: &Vec<usize>| -> Vec<usize> {
                let perm = if s > 0 { &action[g] } else { &inverse[g] };
                pre.iter().map(|&y| perm[y]).collect()
            };
            if s > 0 {
                add_block(&mut a, cols, i * k, g * k, &prefix, 1);
                prefix = step(&prefix);
            } else {
                prefix = step(&prefix);
                add_block(&mut a, cols, i * k, g * k, &prefix, -1);
            }
        }
    }
    let mat = IntMatrix::from_i64(m * k, cols, &a);
    let snf = smith_normal_form(&mat, false);
    let free = snf.coker_free_rank;
    if free < k - 1 {
        return Err(Error::BoundViolation("cover homology has too small a free part".into()));
    }
    Ok(CoverHomology {
        index: k,
        betti: free - (k - 1),
        torsion: snf.torsion(),
    })
}

fn add_block(a: &mut [i64], cols: usize, row0: usize, col0: usize, perm: &[usize], sign: i64) {
    for (x, &y) in perm.iter().enumerate() {
        a[(row0 + x) * cols + col0 + y] += sign;
    }
}

/// Action of generator `g` on `Z_n` by translation by `lam[g]`.
pub fn cyclic_action(lam: &[i64], n: usize) -> Vec<Vec<usize>> {
    lam.iter()
        .map(|&c| (0..n).map(|x| (x as i64 + c).rem_euclid(n as i64) as usize).collect())
        .collect()
}

/// Right-regular action of the generator images on the elements of `t`.
pub fn regular_action(t: &FiniteGroupTable, images: &[u32]) -> Vec<Vec<usize>> {
    images
        .iter()
        .map(|&g| (0..t.order() as u32).map(|x| t.mul(x, g) as usize).collect())
        .collect()
}

/// All nonzero `lam` in `Z_p^l` killing every relator modulo `p`, one per
/// line (first nonzero entry equal to one): the index-`p` normal subgroups.
pub fn cyclic_quotients(p: &Presentation, prime: u64) -> Vec<Vec<i64>> {
    let l = p.num_generators();
    let exps: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(l)).collect();
    let total = prime.pow(l as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut rest = idx;
        let lam: Vec<i64> = (0..l)
            .map(|_| {
                let d = rest % prime;
                rest /= prime;
                d as i64
            })
            .collect();
        if lam.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let kills = exps.iter().all(|e| {
            e.iter().zip(&lam).map(|(a, b)| a * b).sum::<i64>().rem_euclid(prime as i64) == 0
        });
        if kills {
            out.push(lam);
        }
    }
    out
}

/// `|Epi(G, T)| / |Aut T|`, by enumeration.
pub fn brute_force_delta(p: &Presentation, t: &FiniteGroupTable, budget: u64) -> Result<BigInt> {
    let epi = hom_count(p, t, HomMode::Epi, budget)?;
    crate::arith::exact_div(&epi, &BigInt::from(aut_order(t)), "epimorphisms by automorphisms")
}

/// Converts a small count to `u64`, failing loudly on overflow.
pub fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(x.to_string()))
}
