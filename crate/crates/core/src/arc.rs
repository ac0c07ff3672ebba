//! Arcs of directions on the unit circle and a canonical arc-set algebra.
//!
//! Every arc carries a closure flag per endpoint. Endpoints closer than the
//! angular tolerance are identified; when two arcs meet at such a point they
//! merge iff at least one of them contains it.

use std::f64::consts::TAU;

use crate::geom::Angle;

/// Default angular tolerance, radians.
pub const DEFAULT_EPS_ANGLE: f64 = 1e-9;

/// Counterclockwise arc from `start` spanning `width` radians.
///
/// `width == 0` with both ends closed is a single direction. `width == 2π`
/// with a closed end is the full circle; with both ends open it is the circle
/// minus the single direction `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: Angle,
    pub width: f64,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Arc {
    /// Arc from `start` counterclockwise to `end`. Equal endpoints give a
    /// single direction.
    pub fn new(start: Angle, end: Angle, start_closed: bool, end_closed: bool) -> Self {
        Arc {
            start,
            width: start.ccw_to(end),
            start_closed,
            end_closed,
        }
    }

    pub fn from_width(start: f64, width: f64, start_closed: bool, end_closed: bool) -> Self {
        Arc {
            start: Angle::wrap(start),
            width: width.clamp(0.0, TAU),
            start_closed,
            end_closed,
        }
    }

    pub fn closed(start: f64, end: f64) -> Self {
        Arc::new(Angle::wrap(start), Angle::wrap(end), true, true)
    }

    pub fn open(start: f64, end: f64) -> Self {
        Arc::new(Angle::wrap(start), Angle::wrap(end), false, false)
    }

    pub fn full() -> Self {
        Arc {
            start: Angle::ZERO,
            width: TAU,
            start_closed: true,
            end_closed: true,
        }
    }

    pub fn point(theta: f64) -> Self {
        Arc::from_width(theta, 0.0, true, true)
    }

    pub fn end(&self) -> Angle {
        self.start.rotated(self.width)
    }

    pub fn mid(&self) -> Angle {
        self.start.rotated(self.width / 2.0)
    }

    pub fn is_full(&self, eps: f64) -> bool {
        self.width >= TAU - eps && (self.start_closed || self.end_closed)
    }

    pub fn contains(&self, theta: Angle, eps: f64) -> bool {
        if self.is_full(eps) {
            return true;
        }
        let off = self.start.ccw_to(theta);
        let near_start = off <= eps || TAU - off <= eps;
        let near_end = (off - self.width).abs() <= eps;
        if near_start && near_end {
            return self.start_closed || self.end_closed;
        }
        if near_start {
            return self.start_closed;
        }
        if near_end {
            return self.end_closed;
        }
        off < self.width
    }
}

/// Linear interval `[lo, hi] ⊆ [0, 2π]` with closure flags, used while merging.
#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    hi: f64,
    lo_c: bool,
    hi_c: bool,
}

fn split(arc: &Arc, eps: f64, out: &mut Vec<Piece>) {
    let mut s = arc.start.radians();
    if s > TAU - eps {
        s = 0.0;
    }
    let w = arc.width;
    if w <= eps {
        if arc.start_closed || arc.end_closed {
            out.push(Piece {
                lo: s,
                hi: s,
                lo_c: true,
                hi_c: true,
            });
        }
        return;
    }
    if w >= TAU - eps {
        if arc.start_closed || arc.end_closed {
            out.push(Piece {
                lo: 0.0,
                hi: TAU,
                lo_c: true,
                hi_c: true,
            });
        } else {
            // circle minus the direction s
            if s > eps {
                out.push(Piece {
                    lo: 0.0,
                    hi: s,
                    lo_c: true,
                    hi_c: false,
                });
            }
            out.push(Piece {
                lo: s,
                hi: TAU,
                lo_c: false,
                hi_c: s > eps,
            });
        }
        return;
    }
    let e = s + w;
    if e <= TAU {
        out.push(Piece {
            lo: s,
            hi: e,
            lo_c: arc.start_closed,
            hi_c: arc.end_closed,
        });
    } else {
        out.push(Piece {
            lo: s,
            hi: TAU,
            lo_c: arc.start_closed,
            hi_c: true,
        });
        out.push(Piece {
            lo: 0.0,
            hi: e - TAU,
            lo_c: true,
            hi_c: arc.end_closed,
        });
    }
}

fn merge_pieces(mut pieces: Vec<Piece>, eps: f64) -> Vec<Piece> {
    pieces.sort_by(|a, b| {
        a.lo.total_cmp(&b.lo)
            .then(b.lo_c.cmp(&a.lo_c))
            .then(b.hi.total_cmp(&a.hi))
    });
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    let mut iter = pieces.into_iter();
    let Some(mut cur) = iter.next() else {
        return out;
    };
    for p in iter {
        let overlaps = p.lo < cur.hi - eps;
        let abuts = !overlaps && p.lo <= cur.hi + eps && (cur.hi_c || p.lo_c);
        if overlaps || abuts {
            if (p.lo - cur.lo).abs() <= eps {
                cur.lo_c |= p.lo_c;
            }
            if p.hi > cur.hi + eps {
                cur.hi = p.hi;
                cur.hi_c = p.hi_c;
            } else if (p.hi - cur.hi).abs() <= eps {
                cur.hi_c |= p.hi_c;
                cur.hi = cur.hi.max(p.hi);
            }
        } else {
            out.push(cur);
            cur = p;
        }
    }
    out.push(cur);
    out
}

/// A finite union of arcs kept in canonical form: pairwise disjoint, sorted by
/// start, and merged wherever the union is itself an arc.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![Arc::full()],
        }
    }

    /// Canonicalizes an arbitrary collection of arcs.
    pub fn from_arcs<I: IntoIterator<Item = Arc>>(arcs: I, eps: f64) -> Self {
        let mut pieces = Vec::new();
        for a in arcs {
            split(&a, eps, &mut pieces);
        }
        let mut merged = merge_pieces(pieces, eps);
        if merged.is_empty() {
            return ArcSet::empty();
        }

        let n = merged.len();
        let first = merged[0];
        let last = merged[n - 1];
        let mut arcs = Vec::with_capacity(n);
        if first.lo <= eps && last.hi >= TAU - eps {
            let zero_covered = first.lo_c || last.hi_c;
            if n == 1 {
                let arc = if zero_covered {
                    Arc::full()
                } else {
                    Arc::from_width(0.0, TAU, false, false)
                };
                return ArcSet { arcs: vec![arc] };
            }
            if zero_covered {
                merged.pop();
                merged.remove(0);
                for p in &merged {
                    arcs.push(Arc::from_width(p.lo, p.hi - p.lo, p.lo_c, p.hi_c));
                }
                arcs.push(Arc::from_width(
                    last.lo,
                    (TAU - last.lo) + first.hi,
                    last.lo_c,
                    first.hi_c,
                ));
                return ArcSet::sorted(arcs);
            }
        }
        for p in &merged {
            arcs.push(Arc::from_width(p.lo, p.hi - p.lo, p.lo_c, p.hi_c));
        }
        ArcSet::sorted(arcs)
    }

    fn sorted(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_by(|a, b| a.start.radians().total_cmp(&b.start.radians()));
        ArcSet { arcs }
    }

    pub fn single(arc: Arc, eps: f64) -> Self {
        ArcSet::from_arcs([arc], eps)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self, eps: f64) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full(eps)
    }

    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|a| a.width).sum()
    }

    pub fn contains(&self, theta: Angle, eps: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta, eps))
    }

    pub fn union(&self, other: &ArcSet, eps: f64) -> ArcSet {
        ArcSet::from_arcs(self.arcs.iter().chain(other.arcs.iter()).copied(), eps)
    }

    /// All directions not in `self`. Closure flags flip at every endpoint;
    /// two open endpoints meeting at one direction leave that direction as a
    /// degenerate arc.
    pub fn complement(&self, eps: f64) -> ArcSet {
        if self.arcs.is_empty() {
            return ArcSet::full();
        }
        if self.is_full(eps) {
            return ArcSet::empty();
        }
        let n = self.arcs.len();
        let mut gaps = Vec::with_capacity(n);
        for (i, a) in self.arcs.iter().enumerate() {
            let next = &self.arcs[(i + 1) % n];
            let end = a.start.radians() + a.width;
            let mut next_start = next.start.radians();
            if i + 1 == n {
                next_start += TAU;
            }
            let gap = next_start - end;
            if gap > eps {
                gaps.push(Arc::from_width(end, gap, !a.end_closed, !next.start_closed));
            } else if !a.end_closed && !next.start_closed {
                gaps.push(Arc::point(end));
            }
        }
        ArcSet::from_arcs(gaps, eps)
    }

    pub fn intersection(&self, other: &ArcSet, eps: f64) -> ArcSet {
        self.complement(eps).union(&other.complement(eps), eps).complement(eps)
    }

    /// `other ⊆ self` as point sets, closure-aware.
    pub fn contains_set(&self, other: &ArcSet, eps: f64) -> bool {
        other.intersection(&self.complement(eps), eps).is_empty()
    }

    /// Whether every direction is covered; otherwise one uncovered direction.
    pub fn covers_circle(&self, eps: f64) -> (bool, Option<Angle>) {
        let comp = self.complement(eps);
        match comp.arcs.iter().max_by(|a, b| a.width.total_cmp(&b.width)) {
            None => (true, None),
            Some(gap) => (false, Some(gap.mid())),
        }
    }

    pub fn rotated(&self, phi: f64, eps: f64) -> ArcSet {
        ArcSet::from_arcs(
            self.arcs.iter().map(|a| Arc {
                start: a.start.rotated(phi),
                ..*a
            }),
            eps,
        )
    }

    /// Endpoint-wise comparison with tolerance `tol`.
    pub fn approx_eq(&self, other: &ArcSet, tol: f64) -> bool {
        self.arcs.len() == other.arcs.len()
            && self.arcs.iter().zip(&other.arcs).all(|(a, b)| {
                a.start.distance(b.start) <= tol
                    && (a.width - b.width).abs() <= tol
                    && a.start_closed == b.start_closed
                    && a.end_closed == b.end_closed
            })
    }
}

pub fn arcset_union(a: &ArcSet, b: &ArcSet, eps: f64) -> ArcSet {
    a.union(b, eps)
}

pub fn arcset_complement(a: &ArcSet, eps: f64) -> ArcSet {
    a.complement(eps)
}

pub fn arcset_covers_circle(a: &ArcSet, eps: f64) -> (bool, Option<Angle>) {
    a.covers_circle(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const EPS: f64 = DEFAULT_EPS_ANGLE;

    fn set(arcs: &[Arc]) -> ArcSet {
        ArcSet::from_arcs(arcs.iter().copied(), EPS)
    }

    #[test]
    fn half_open_halves_merge_to_full() {
        let a = set(&[Arc::from_width(0.0, PI, true, false)]);
        let b = set(&[Arc::from_width(PI, PI, true, false)]);
        assert!(a.union(&b, EPS).is_full(EPS));
    }

    #[test]
    fn open_halves_leave_two_directions() {
        let a = set(&[Arc::open(0.0, PI)]);
        let b = set(&[Arc::open(PI, TAU)]);
        let u = a.union(&b, EPS);
        assert_eq!(u.arcs().len(), 2);
        assert!(!u.contains(Angle::wrap(0.0), EPS));
        assert!(!u.contains(Angle::wrap(PI), EPS));
        let (covered, witness) = u.covers_circle(EPS);
        assert!(!covered);
        let w = witness.unwrap();
        assert!(w.distance(Angle::ZERO) < 1e-12 || w.distance(Angle::wrap(PI)) < 1e-12);
    }

    #[test]
    fn overlapping_closed_arcs_merge() {
        let u = set(&[Arc::closed(0.0, FRAC_PI_2)]).union(&set(&[Arc::closed(FRAC_PI_4, PI)]), EPS);
        assert_eq!(u.arcs().len(), 1);
        let a = u.arcs()[0];
        assert!(a.start.radians().abs() < 1e-15 && (a.width - PI).abs() < 1e-12);
        assert!(a.start_closed && a.end_closed);
    }

    #[test]
    fn complement_of_full_is_empty() {
        assert!(ArcSet::full().complement(EPS).is_empty());
        assert!(ArcSet::empty().complement(EPS).is_full(EPS));
    }

    #[test]
    fn complement_flips_closure() {
        let c = set(&[Arc::open(0.0, PI)]).complement(EPS);
        assert_eq!(c.arcs().len(), 1);
        let a = c.arcs()[0];
        assert!((a.start.radians() - PI).abs() < 1e-12);
        assert!((a.width - PI).abs() < 1e-12);
        assert!(a.start_closed && a.end_closed);
        assert!(c.contains(Angle::ZERO, EPS));
    }

    #[test]
    fn four_closed_quarters_cover() {
        let arcs: Vec<Arc> = (0..4)
            .map(|k| {
                let c = k as f64 * FRAC_PI_2;
                Arc::closed(c - FRAC_PI_4, c + FRAC_PI_4)
            })
            .collect();
        assert!(set(&arcs).covers_circle(EPS).0);
    }

    #[test]
    fn four_open_quarters_leave_four_directions() {
        let arcs: Vec<Arc> = (0..4)
            .map(|k| {
                let c = k as f64 * FRAC_PI_2;
                Arc::open(c - FRAC_PI_4, c + FRAC_PI_4)
            })
            .collect();
        let comp = set(&arcs).complement(EPS);
        assert_eq!(comp.arcs().len(), 4);
        for (k, a) in comp.arcs().iter().enumerate() {
            assert_eq!(a.width, 0.0);
            let want = FRAC_PI_4 + k as f64 * FRAC_PI_2;
            assert!((a.start.radians() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_minus_point_round_trips() {
        let s = set(&[Arc::open(1.0, 1.0 + PI), Arc::open(1.0 + PI, 1.0)]);
        let c = s.complement(EPS);
        assert_eq!(c.arcs().len(), 2);
        let back = c.complement(EPS);
        assert!(back.approx_eq(&s, 1e-12));
        let m = set(&[Arc::from_width(2.0, TAU, false, false)]);
        let mc = m.complement(EPS);
        assert_eq!(mc.arcs().len(), 1);
        assert_eq!(mc.arcs()[0].width, 0.0);
        assert!((mc.arcs()[0].start.radians() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn point_fills_gap_between_open_ends() {
        let s = set(&[Arc::open(0.0, 1.0), Arc::open(1.0, 2.0), Arc::point(1.0)]);
        assert_eq!(s.arcs().len(), 1);
        assert!(s.contains(Angle::wrap(1.0), EPS));
    }

    #[test]
    fn wrapping_arc_is_single() {
        let s = set(&[Arc::closed(5.5, 0.5)]);
        assert_eq!(s.arcs().len(), 1);
        assert!(s.contains(Angle::ZERO, EPS));
        assert!((s.measure() - (TAU - 5.0)).abs() < 1e-12);
    }

    #[test]
    fn containment() {
        let big = set(&[Arc::closed(-0.4, 0.4)]);
        let small = set(&[Arc::closed(-0.25, 0.25)]);
        assert!(big.contains_set(&small, EPS));
        assert!(!small.contains_set(&big, EPS));
        let open_same = set(&[Arc::open(-0.4, 0.4)]);
        assert!(big.contains_set(&open_same, EPS));
        assert!(!open_same.contains_set(&big, EPS));
    }

    fn arc_strategy() -> impl Strategy<Value = Arc> {
        // endpoints on a coarse grid so exact abutments are common
        (0u32..16, 0u32..17, any::<bool>(), any::<bool>()).prop_map(|(s, w, sc, ec)| {
            let step = TAU / 16.0;
            let w = if w == 0 { 0 } else { w };
            let (sc, ec) = if w == 0 { (true, true) } else { (sc, ec) };
            Arc::from_width(s as f64 * step, w as f64 * step, sc, ec)
        })
    }

    fn set_strategy() -> impl Strategy<Value = ArcSet> {
        prop::collection::vec(arc_strategy(), 0..5).prop_map(|v| ArcSet::from_arcs(v, EPS))
    }

    fn probe_dirs() -> Vec<Angle> {
        (0..64).map(|i| Angle::wrap(i as f64 * TAU / 64.0)).collect()
    }

    fn same_points(a: &ArcSet, b: &ArcSet) -> bool {
        probe_dirs()
            .into_iter()
            .all(|t| a.contains(t, EPS) == b.contains(t, EPS))
    }

    proptest! {
        #[test]
        fn union_commutative(a in set_strategy(), b in set_strategy()) {
            prop_assert!(a.union(&b, EPS).approx_eq(&b.union(&a, EPS), 1e-12));
        }

        #[test]
        fn union_associative(a in set_strategy(), b in set_strategy(), c in set_strategy()) {
            let l = a.union(&b, EPS).union(&c, EPS);
            let r = a.union(&b.union(&c, EPS), EPS);
            prop_assert!(l.approx_eq(&r, 1e-12));
        }

        #[test]
        fn union_idempotent(a in set_strategy()) {
            prop_assert!(a.union(&a, EPS).approx_eq(&a, 1e-12));
        }

        #[test]
        fn canonical_fixpoint(a in set_strategy()) {
            let again = ArcSet::from_arcs(a.arcs().iter().copied(), EPS);
            prop_assert!(again.approx_eq(&a, 1e-12));
        }

        #[test]
        fn measure_adds_to_tau(a in set_strategy()) {
            let c = a.complement(EPS);
            prop_assert!((a.measure() + c.measure() - TAU).abs() < 1e-12);
        }

        #[test]
        fn complement_involution(a in set_strategy()) {
            prop_assert!(a.complement(EPS).complement(EPS).approx_eq(&a, 1e-12));
        }

        #[test]
        fn complement_is_pointwise(a in set_strategy()) {
            let c = a.complement(EPS);
            for t in probe_dirs() {
                prop_assert_ne!(a.contains(t, EPS), c.contains(t, EPS));
            }
        }

        #[test]
        fn covers_iff_complement_empty(a in set_strategy()) {
            let (covered, witness) = a.covers_circle(EPS);
            prop_assert_eq!(covered, a.complement(EPS).is_empty());
            if let Some(w) = witness {
                prop_assert!(!a.contains(w, EPS));
            }
        }

        #[test]
        fn union_is_pointwise(a in set_strategy(), b in set_strategy()) {
            let u = a.union(&b, EPS);
            for t in probe_dirs() {
                prop_assert_eq!(u.contains(t, EPS), a.contains(t, EPS) || b.contains(t, EPS));
            }
        }

        #[test]
        fn intersection_is_pointwise(a in set_strategy(), b in set_strategy()) {
            let i = a.intersection(&b, EPS);
            for t in probe_dirs() {
                prop_assert_eq!(i.contains(t, EPS), a.contains(t, EPS) && b.contains(t, EPS));
            }
        }

        #[test]
        fn rotation_preserves_points(a in set_strategy(), k in 0u32..16) {
            let phi = k as f64 * TAU / 16.0;
            let r = a.rotated(phi, EPS);
            let back = r.rotated(-phi, EPS);
            prop_assert!(same_points(&a, &back));
        }
    }
}
