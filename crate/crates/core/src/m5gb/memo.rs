//! Per-term divisor memo: for each term seen, the basis multiple with the
//! smallest signature among those with that leading term, refreshed
//! incrementally as the basis grows.

use rustc_hash::FxHashMap;

use super::Basis;
use crate::poly::Term;
use crate::sig::Signature;

struct TermInfo {
    /// Basis length the entry is valid for.
    stamp: u32,
    best: Option<(u32, Signature)>,
}

#[derive(Default)]
pub(crate) struct DivisorMemo {
    map: FxHashMap<Term, TermInfo>,
}

impl DivisorMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Flag(t)` with respect to the whole basis, with its basis index.
    pub fn flag(&mut self, basis: &Basis, t: &Term) -> Option<(usize, Signature)> {
        let len = basis.len() as u32;
        let info = match self.map.get_mut(t) {
            Some(info) => info,
            None => self.map.entry(t.clone()).or_insert(TermInfo { stamp: 0, best: None }),
        };
        if info.stamp < len {
            let tmask = t.divmask();
            for i in info.stamp as usize..len as usize {
                if !basis.lead_divides(i, t, tmask) {
                    continue;
                }
                let cand = basis.multiple_sig(i, t);
                if info.best.as_ref().map_or(true, |(_, b)| basis.order.lt(&cand, b)) {
                    info.best = Some((i as u32, cand));
                }
            }
            info.stamp = len;
        }
        info.best.as_ref().map(|(i, s)| (*i as usize, s.clone()))
    }
}
