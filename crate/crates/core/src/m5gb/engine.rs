//! The signature main loop shared by M5GB and the SB baseline: pair queue,
//! syzygy signatures, rewriter selection and basis update.

use std::cmp::Ordering;
use std::ops::Range;

use super::{RunStats, Solution, SolverConfig};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring, Term};
use crate::sig::{make_spair, PairOrigin, SPairRecord, SigOrder, SigPoly, Signature};

/// A signature basis `G` in insertion order, with leading-term data cached
/// for divisor queries. Elements are pushed, never removed.
pub struct Basis {
    pub(crate) ring: Ring,
    pub(crate) order: SigOrder,
    pub(crate) elems: Vec<SigPoly>,
    leads: Vec<(Term, u64)>,
    by_index: Vec<Vec<usize>>,
}

impl Basis {
    pub fn new(ring: Ring, order: SigOrder, ngens: usize) -> Self {
        Self { ring, order, elems: Vec::new(), leads: Vec::new(), by_index: vec![Vec::new(); ngens] }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[SigPoly] {
        &self.elems
    }

    #[inline]
    pub fn lead(&self, i: usize) -> &Term {
        &self.leads[i].0
    }

    #[inline]
    pub fn lead_divides(&self, i: usize, t: &Term, tmask: u64) -> bool {
        let (lt, mask) = &self.leads[i];
        mask & !tmask == 0 && lt.divides(t)
    }

    /// `(t / LT(g_i)) * sig(g_i)`; requires `LT(g_i) | t`.
    #[inline]
    pub fn multiple_sig(&self, i: usize, t: &Term) -> Signature {
        self.elems[i].sig.mul(&t.quot_unchecked(self.lead(i)))
    }

    /// Appends a nonzero element; the caller keeps signatures increasing.
    pub fn push(&mut self, g: SigPoly) {
        let lt = g.poly.lead_term().expect("basis elements are nonzero").clone();
        let mask = lt.divmask();
        self.by_index[g.sig.index()].push(self.elems.len());
        self.leads.push((lt, mask));
        self.elems.push(g);
    }

    /// The basis element in `range` minimizing the signature of its multiple
    /// with leading term `t`, among those whose multiple lies below `s`.
    pub fn min_eligible_in(&self, t: &Term, s: &Signature, range: Range<usize>) -> Option<(usize, Signature)> {
        let tmask = t.divmask();
        let mut best: Option<(usize, Signature)> = None;
        for i in range {
            if !self.lead_divides(i, t, tmask) {
                continue;
            }
            let cand = self.multiple_sig(i, t);
            if self.order.lt(&cand, s) && best.as_ref().map_or(true, |(_, b)| self.order.lt(&cand, b)) {
                best = Some((i, cand));
            }
        }
        best
    }

    /// The minimal signature of a basis multiple with leading term `t`, or
    /// `None` when no leading term divides `t`.
    pub fn flag_of_term(&self, t: &Term) -> Option<(usize, Signature)> {
        let tmask = t.divmask();
        let mut best: Option<(usize, Signature)> = None;
        for i in 0..self.len() {
            if !self.lead_divides(i, t, tmask) {
                continue;
            }
            let cand = self.multiple_sig(i, t);
            if best.as_ref().map_or(true, |(_, b)| self.order.lt(&cand, b)) {
                best = Some((i, cand));
            }
        }
        best
    }

    /// Whether `t` is Sig-reducible up to `s` by an element of `range`.
    pub fn sig_reducible(&self, t: &Term, s: &Signature, range: Range<usize>) -> bool {
        self.min_eligible_in(t, s, range).is_some()
    }

    /// The latest element whose signature divides `s`, with the multiplier.
    pub fn rewriter(&self, s: &Signature) -> Option<(usize, Term)> {
        self.by_index[s.index()]
            .iter()
            .rev()
            .find(|&&i| self.elems[i].sig.divides(s))
            .map(|&i| (i, s.term().quot_unchecked(self.elems[i].sig.term())))
    }
}

/// The reduction routine plugged into the main loop.
/// One regular reduction round, as used by the main loop.
pub trait RoundReducer {
    /// Regular Sig-reduction of `f` (signature `s`) over all of its terms.
    fn reduce(&mut self, basis: &Basis, f: Polynomial, s: &Signature, stats: &mut RunStats) -> Result<Polynomial>;
}

/// Syzygy signatures, kept minimal under divisibility and grouped by
/// generator index.
#[derive(Clone, Debug, Default)]
pub struct SyzygySet {
    by_index: Vec<Vec<(u64, Term)>>,
}

impl SyzygySet {
    pub fn new(ngens: usize) -> Self {
        Self { by_index: vec![Vec::new(); ngens] }
    }

    /// Whether some element divides `s`.
    pub fn divides(&self, s: &Signature) -> bool {
        let Some(list) = self.by_index.get(s.index()) else {
            return false;
        };
        let mask = s.term().divmask();
        list.iter().any(|(m, h)| m & !mask == 0 && h.divides(s.term()))
    }

    /// Adds `s` unless a divisor is present; drops the multiples of `s`.
    pub fn insert(&mut self, s: Signature) -> bool {
        if self.by_index.len() <= s.index() {
            self.by_index.resize(s.index() + 1, Vec::new());
        }
        if self.divides(&s) {
            return false;
        }
        let mask = s.term().divmask();
        let list = &mut self.by_index[s.index()];
        list.retain(|(m, h)| !(mask & !m == 0 && s.term().divides(h)));
        list.push((mask, s.term().clone()));
        true
    }

    pub fn len(&self) -> usize {
        self.by_index.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Signature> + '_ {
        self.by_index
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().map(move |(_, t)| Signature::new(t.clone(), i)))
    }
}

/// Binary min-heap of pair records under a signature order.
struct PairQueue {
    order: SigOrder,
    heap: Vec<SPairRecord>,
}

impl PairQueue {
    fn new(order: SigOrder) -> Self {
        Self { order, heap: Vec::new() }
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.heap.len()
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.order.cmp(&self.heap[a].sig, &self.heap[b].sig) == Ordering::Less
    }

    fn push(&mut self, rec: SPairRecord) {
        self.heap.push(rec);
        let mut i = self.heap.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.less(i, parent) {
                break;
            }
            self.heap.swap(i, parent);
            i = parent;
        }
    }

    fn peek(&self) -> Option<&SPairRecord> {
        self.heap.first()
    }

    fn pop(&mut self) -> Option<SPairRecord> {
        let last = self.heap.len().checked_sub(1)?;
        self.heap.swap(0, last);
        let top = self.heap.pop();
        let n = self.heap.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut m = i;
            if l < n && self.less(l, m) {
                m = l;
            }
            if r < n && self.less(r, m) {
                m = r;
            }
            if m == i {
                break;
            }
            self.heap.swap(i, m);
            i = m;
        }
        top
    }
}

/// The complete state of one signature run.
pub(crate) struct State {
    pub basis: Basis,
    pub syzygies: SyzygySet,
    pub stats: RunStats,
    input: Vec<Polynomial>,
    queue: PairQueue,
    last: Option<Signature>,
    check: bool,
}

impl State {
    pub fn new(ring: &Ring, input: &[Polynomial], cfg: &SolverConfig) -> Result<Self> {
        if input.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, f) in input.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::ZeroInput(i));
            }
            for t in f.terms() {
                if t.nvars() != ring.nvars() {
                    return Err(Error::VariableCount { expected: ring.nvars(), found: t.nvars() });
                }
            }
        }
        let order = SigOrder::new(cfg.sig_order, ring.order());
        let mut queue = PairQueue::new(order);
        for i in 0..input.len() {
            queue.push(SPairRecord::input(ring.nvars(), i));
        }
        Ok(Self {
            basis: Basis::new(*ring, order, input.len()),
            syzygies: SyzygySet::new(input.len()),
            stats: RunStats::default(),
            input: input.to_vec(),
            queue,
            last: None,
            check: cfg.check_invariants,
        })
    }

    #[cfg(test)]
    pub fn pending(&self) -> usize {
        self.queue.len()
    }

    /// Processes the minimal pending signature. Returns `false` once the
    /// queue is exhausted.
    pub fn step(&mut self, reducer: &mut dyn RoundReducer) -> Result<bool> {
        let Some(rec) = self.queue.pop() else {
            return Ok(false);
        };
        let s = rec.sig;
        while self.queue.peek().is_some_and(|r| r.sig == s) {
            self.queue.pop();
            self.stats.spairs_skipped_duplicate += 1;
        }
        if self.check {
            if let Some(prev) = &self.last {
                if !self.basis.order.lt(prev, &s) {
                    return Err(Error::Invariant(format!("signature {s} does not exceed {prev}")));
                }
            }
        }
        self.last = Some(s.clone());
        if self.syzygies.divides(&s) {
            self.stats.spairs_skipped_syzygy += 1;
            return Ok(true);
        }
        self.stats.spairs_processed += 1;

        let ring = self.basis.ring;
        let f = match self.basis.rewriter(&s) {
            Some((i, u)) => ring.mul_term(&self.basis.elems[i].poly, &u),
            None => match rec.origin {
                PairOrigin::Input(i) => self.input[i].clone(),
                PairOrigin::Pair { .. } => {
                    return Err(Error::Invariant(format!("no rewriter for pair signature {s}")));
                }
            },
        };
        let reduced = reducer.reduce(&self.basis, f, &s, &mut self.stats)?;
        if self.check {
            self.check_regular_normal_form(&reduced, &s)?;
        }
        if reduced.is_zero() {
            self.stats.zero_reductions += 1;
            self.syzygies.insert(s);
        } else if self.singular_top_reducible(&reduced, &s) {
            self.stats.singular_discards += 1;
        } else {
            self.update(SigPoly::new(s, ring.monic(&reduced)))?;
        }
        Ok(true)
    }

    /// For a regular normal form, a basis multiple with leading term
    /// `LT(f)` has signature at least `s`; it is singular when the least one
    /// equals `s`.
    fn singular_top_reducible(&self, f: &Polynomial, s: &Signature) -> bool {
        let lt = f.lead_term().expect("nonzero");
        self.basis.flag_of_term(lt).is_some_and(|(_, sig)| sig == *s)
    }

    fn check_regular_normal_form(&self, f: &Polynomial, s: &Signature) -> Result<()> {
        for t in f.terms() {
            if self.basis.sig_reducible(t, s, 0..self.basis.len()) {
                return Err(Error::Invariant(format!("term {t} of the round-{s} result is Sig-reducible")));
            }
        }
        Ok(())
    }

    /// Adds `fprime` to the basis, queues its regular S-pairs and, for an
    /// input signature `e_i`, records the Koszul syzygies against the
    /// earlier basis.
    pub fn update(&mut self, fprime: SigPoly) -> Result<()> {
        let order = self.basis.order;
        if fprime.poly.is_zero() {
            return Err(Error::Invariant("zero polynomial added to the basis".into()));
        }
        if let Some(last) = self.basis.elems.last() {
            if !order.lt(&last.sig, &fprime.sig) {
                return Err(Error::Invariant(format!(
                    "basis signature {} does not exceed {}",
                    fprime.sig, last.sig
                )));
            }
        }
        let k = self.basis.len();
        for (j, g) in self.basis.elems.iter().enumerate() {
            if let Some(rec) = make_spair(&order, (k, &fprime), (j, g))? {
                self.queue.push(rec);
            }
        }
        if fprime.sig.is_unit() {
            let i = fprime.sig.index();
            let lt_fi = self.input[i].lead_term().expect("nonzero input").clone();
            let mut koszul = Vec::new();
            for g in &self.basis.elems {
                let a = Signature::new(g.poly.lead_term().expect("nonzero").clone(), i);
                let b = g.sig.mul(&lt_fi);
                if a != b {
                    koszul.push(order.max(&a, &b).clone());
                }
            }
            for h in koszul {
                self.syzygies.insert(h);
            }
        }
        self.basis.push(fprime);
        Ok(())
    }

    pub fn finish(mut self) -> Solution {
        self.stats.basis_size = self.basis.len();
        Solution { basis: self.basis.elems.into_iter().map(|g| g.poly).collect(), stats: self.stats }
    }
}

pub(crate) fn run(ring: &Ring, input: &[Polynomial], cfg: &SolverConfig, reducer: &mut dyn RoundReducer) -> Result<Solution> {
    let mut state = State::new(ring, input, cfg)?;
    while state.step(reducer)? {}
    Ok(state.finish())
}
