//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! A crossing `X(a,b,c,d)` lists its four arcs counterclockwise, starting
//! from the incoming under-strand `a`; the under-strand runs `a -> c`.
//! Arcs of each component are numbered consecutively along the orientation,
//! wrapping from the largest id of the component back to the smallest.
//! Crossing-free circles are written `O`.
//!
//! Sign convention: a crossing is positive when its over-strand runs
//! `d -> b` and negative when it runs `b -> d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub type ArcId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn a(&self) -> ArcId {
        self.arcs[0]
    }
    pub fn b(&self) -> ArcId {
        self.arcs[1]
    }
    pub fn c(&self) -> ArcId {
        self.arcs[2]
    }
    pub fn d(&self) -> ArcId {
        self.arcs[3]
    }

    /// The same crossing with over and under strands exchanged.
    pub fn changed(&self) -> [ArcId; 4] {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            // over-strand b -> d becomes the under-strand
            Sign::Negative => [b, c, d, a],
            // over-strand d -> b becomes the under-strand
            Sign::Positive => [d, a, b, c],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
    /// Arc ranges `lo..=hi`, sorted by `lo`.
    components: Vec<(ArcId, ArcId)>,
    extra_unknots: u32,
}

impl Diagram {
    /// Validates raw crossing tuples and derives orientation and signs.
    pub fn from_crossings(tuples: Vec<[ArcId; 4]>, extra_unknots: u32) -> Result<Diagram> {
        orient(&Self::assemble(tuples, extra_unknots)?, None)
    }

    /// Like [`Diagram::from_crossings`], but keeps known signs. A component
    /// with two arcs that only passes over has no direction in PD text;
    /// such components are relabeled where needed so that the text form
    /// parses back to the same signs.
    pub(crate) fn from_signed(tuples: Vec<[ArcId; 4]>, extra_unknots: u32, signs: &[Sign]) -> Result<Diagram> {
        let d = orient(&Self::assemble(tuples.clone(), extra_unknots)?, Some(signs))?;
        if d.crossings.iter().zip(signs).any(|(x, &s)| x.sign != s) {
            return Err(Error::OrientationConflict("signs do not fit the arc numbering".into()));
        }
        let flip: Vec<ArcId> = d
            .components
            .iter()
            .filter(|&&(lo, hi)| hi == lo + 1 && d.over_only(lo))
            .map(|&(lo, _)| lo)
            .filter(|&lo| {
                let (i, slot) = convention_tail(&d.crossings, lo);
                let out = (slot == 1) == (d.crossings[i].sign == Sign::Positive);
                !out
            })
            .collect();
        if flip.is_empty() {
            return Ok(d);
        }
        let swap = |a: ArcId| {
            if flip.contains(&a) {
                a + 1
            } else if flip.contains(&(a - 1)) {
                a - 1
            } else {
                a
            }
        };
        let tuples = tuples.into_iter().map(|t| t.map(swap)).collect();
        orient(&Self::assemble(tuples, extra_unknots)?, Some(signs))
    }

    fn over_only(&self, lo: ArcId) -> bool {
        self.crossings.iter().all(|x| ![x.a(), x.c()].iter().any(|&a| a == lo || a == lo + 1))
    }

    fn assemble(tuples: Vec<[ArcId; 4]>, extra_unknots: u32) -> Result<Diagram> {
        if tuples.is_empty() && extra_unknots == 0 {
            return Err(Error::EmptyInput);
        }
        let arc_count = tuples.iter().flatten().copied().max().unwrap_or(0);
        let mut uses = vec![0u32; arc_count as usize + 1];
        for &arc in tuples.iter().flatten() {
            if arc == 0 {
                return Err(Error::InconsistentArcs("arc id 0 is not allowed".into()));
            }
            uses[arc as usize] += 1;
        }
        for (arc, &count) in uses.iter().enumerate().skip(1) {
            if count != 2 {
                return Err(Error::InconsistentArcs(format!(
                    "arc {arc} is used {count} time(s), expected 2"
                )));
            }
        }

        let mut uf = UnionFind::new(arc_count as usize);
        for t in &tuples {
            uf.union(t[0] as usize - 1, t[2] as usize - 1);
            uf.union(t[1] as usize - 1, t[3] as usize - 1);
        }
        let (labels, count) = uf.labels();
        let mut ranges = vec![(ArcId::MAX, 0, 0u32); count];
        for (i, &l) in labels.iter().enumerate() {
            let arc = i as ArcId + 1;
            let r = &mut ranges[l as usize];
            r.0 = r.0.min(arc);
            r.1 = r.1.max(arc);
            r.2 += 1;
        }
        let mut components = Vec::with_capacity(count);
        for (lo, hi, size) in ranges {
            if hi - lo + 1 != size {
                return Err(Error::InconsistentArcs(format!(
                    "component containing arc {lo} is not numbered consecutively"
                )));
            }
            components.push((lo, hi));
        }
        components.sort_unstable();

        let unsigned = Diagram {
            crossings: tuples
                .into_iter()
                .map(|arcs| Crossing { arcs, sign: Sign::Positive })
                .collect(),
            arc_count,
            components,
            extra_unknots,
        };
        for x in &unsigned.crossings {
            if unsigned.next_arc(x.a()) != x.c() {
                return Err(Error::InconsistentArcs(format!(
                    "under-strand of {x} does not run {} -> {}",
                    x.a(),
                    x.c()
                )));
            }
        }
        Ok(unsigned)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn extra_unknots(&self) -> u32 {
        self.extra_unknots
    }

    /// Components that pass through at least one crossing, each as its arcs
    /// in orientation order.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        self.components.iter().map(|&(lo, hi)| (lo..=hi).collect()).collect()
    }

    /// All components, crossing-free circles included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.extra_unknots as usize
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    fn component_range(&self, arc: ArcId) -> (ArcId, ArcId) {
        let idx = self.components.partition_point(|&(lo, _)| lo <= arc) - 1;
        self.components[idx]
    }

    pub fn component_of_arc(&self, arc: ArcId) -> usize {
        self.components.partition_point(|&(lo, _)| lo <= arc) - 1
    }

    /// Successor of `arc` along its component.
    pub fn next_arc(&self, arc: ArcId) -> ArcId {
        let (lo, hi) = self.component_range(arc);
        if arc == hi {
            lo
        } else {
            arc + 1
        }
    }

    /// Connected as a 4-valent graph; crossing-free circles count as
    /// separate pieces.
    pub fn is_connected(&self) -> bool {
        let pieces = self.components.len() + self.extra_unknots as usize;
        if pieces <= 1 {
            return true;
        }
        if self.extra_unknots > 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.components.len());
        for x in &self.crossings {
            uf.union(self.component_of_arc(x.a()), self.component_of_arc(x.b()));
        }
        uf.labels().1 == 1
    }

    /// Rebuilds the diagram with crossings listed in `order` (a permutation
    /// of crossing indices).
    pub fn with_crossing_order(&self, order: &[usize]) -> Result<Diagram> {
        assert_eq!(order.len(), self.crossings.len(), "not a permutation");
        let tuples = order.iter().map(|&i| self.crossings[i].arcs).collect();
        let signs: Vec<Sign> = order.iter().map(|&i| self.crossings[i].sign).collect();
        Diagram::from_signed(tuples, self.extra_unknots, &signs)
    }

    /// Moves crossing `index` to the front, keeping the others in order.
    pub fn with_crossing_first(&self, index: usize) -> Result<Diagram> {
        let mut order = vec![index];
        order.extend((0..self.crossings.len()).filter(|&i| i != index));
        self.with_crossing_order(&order)
    }

    /// Changes the crossing at `index` (over-strand becomes under-strand).
    pub fn crossing_changed(&self, index: usize) -> Result<Diagram> {
        let mut tuples: Vec<_> = self.crossings.iter().map(|x| x.arcs).collect();
        tuples[index] = self.crossings[index].changed();
        let mut signs = self.signs();
        signs[index] = signs[index].flipped();
        Diagram::from_signed(tuples, self.extra_unknots, &signs)
    }

    /// Changes every crossing.
    pub fn mirror(&self) -> Result<Diagram> {
        let tuples = self.crossings.iter().map(Crossing::changed).collect();
        let signs: Vec<Sign> = self.signs().into_iter().map(Sign::flipped).collect();
        Diagram::from_signed(tuples, self.extra_unknots, &signs)
    }

    /// Cyclically shifts the arc numbering inside component `component`.
    pub fn with_rotated_component(&self, component: usize, shift: u32) -> Result<Diagram> {
        let (lo, hi) = self.components[component];
        let len = hi - lo + 1;
        let relabel = |arc: ArcId| {
            if (lo..=hi).contains(&arc) {
                lo + (arc - lo + shift) % len
            } else {
                arc
            }
        };
        let tuples = self.crossings.iter().map(|x| x.arcs.map(relabel)).collect();
        Diagram::from_signed(tuples, self.extra_unknots, &self.signs())
    }

    /// Inserts a Reidemeister-I kink of the given sign on `arc`; the new
    /// crossing is appended last.
    pub fn with_kink(&self, arc: ArcId, sign: Sign) -> Result<Diagram> {
        if arc == 0 || arc > self.arc_count {
            return Err(Error::InconsistentArcs(format!("no arc {arc} to kink")));
        }
        // `arc` keeps its tail; its head end becomes arc + 2.
        let (head_x, head_slot) = self.head_of(arc);
        let shift = |a: ArcId| if a > arc { a + 2 } else { a };
        let mut tuples: Vec<[ArcId; 4]> =
            self.crossings.iter().map(|x| x.arcs.map(shift)).collect();
        tuples[head_x][head_slot] = arc + 2;
        let (e, loop_arc, out) = (arc, arc + 1, arc + 2);
        tuples.push(match sign {
            Sign::Positive => [e, out, loop_arc, loop_arc],
            Sign::Negative => [loop_arc, e, out, loop_arc],
        });
        let mut signs = self.signs();
        signs.push(sign);
        Diagram::from_signed(tuples, self.extra_unknots, &signs)
    }

    /// Crossing index and slot where `arc` ends (enters a crossing).
    pub fn head_of(&self, arc: ArcId) -> (usize, usize) {
        for (i, x) in self.crossings.iter().enumerate() {
            if x.a() == arc {
                return (i, 0);
            }
            let incoming_over = match x.sign {
                Sign::Positive => 3,
                Sign::Negative => 1,
            };
            if x.arcs[incoming_over] == arc {
                return (i, incoming_over);
            }
        }
        unreachable!("validated arcs always have a head")
    }

    fn signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(|x| x.sign).collect()
    }

    /// Canonical PD text.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self.crossings.iter().map(|x| x.to_string()).collect();
        parts.extend((0..self.extra_unknots).map(|_| "O".to_string()));
        parts.join(" ")
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

enum Token {
    Crossing([ArcId; 4]),
    Unknot,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut rest = line.trim_start();
        while !rest.is_empty() {
            if let Some(after) = rest.strip_prefix('X') {
                let Some(close) = after.find(')') else {
                    return Err(Error::MalformedToken(rest.split_whitespace().next().unwrap_or(rest).into()));
                };
                let token = &rest[..close + 2];
                let body = after[..close].trim_start();
                let inner = body
                    .strip_prefix('(')
                    .ok_or_else(|| Error::MalformedToken(token.into()))?;
                let ids: Vec<ArcId> = inner
                    .split(',')
                    .map(|s| s.trim().parse::<ArcId>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::MalformedToken(token.into()))?;
                let arcs: [ArcId; 4] =
                    ids.try_into().map_err(|_| Error::MalformedToken(token.into()))?;
                if arcs.contains(&0) {
                    return Err(Error::MalformedToken(token.into()));
                }
                tokens.push(Token::Crossing(arcs));
                rest = rest[close + 2..].trim_start();
            } else {
                let word = rest.split_whitespace().next().unwrap_or(rest);
                if word != "O" {
                    return Err(Error::MalformedToken(word.into()));
                }
                tokens.push(Token::Unknot);
                rest = rest[word.len()..].trim_start();
            }
        }
    }
    Ok(tokens)
}

/// Parses PD text such as `"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"` or `"O"`.
/// `#` starts a comment running to the end of the line.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut tuples = Vec::new();
    let mut unknots = 0;
    for t in tokens {
        match t {
            Token::Crossing(arcs) => tuples.push(arcs),
            Token::Unknot => unknots += 1,
        }
    }
    Diagram::from_crossings(tuples, unknots)
}

/// Recomputes every crossing sign from the arc numbering.
///
/// Each arc has one incoming and one outgoing end. The under-strand fixes
/// both of its ends; an over-strand `{b, d}` is oriented by the successor
/// relation, or, on components with only two arcs where both `next(b) = d`
/// and `next(d) = b` hold, by the opposite end of the same arc. A two-arc
/// component that only passes over is unoriented in PD text; by
/// convention its lower arc leaves the crossing whose incoming under-arc
/// is smaller.
pub fn derive_signs(d: &Diagram) -> Result<Diagram> {
    orient(d, None)
}

/// Crossing and slot where, by the parse convention, arc `lo` of an
/// over-only two-arc component starts.
fn convention_tail(crossings: &[Crossing], lo: ArcId) -> (usize, usize) {
    crossings
        .iter()
        .enumerate()
        .filter_map(|(i, x)| [1, 3].into_iter().find(|&s| x.arcs[s] == lo).map(|s| (i, s)))
        .min_by_key(|&(i, _)| crossings[i].a())
        .expect("arc occurs as an over-strand")
}

fn orient(d: &Diagram, hint: Option<&[Sign]>) -> Result<Diagram> {
    #[derive(Clone, Copy, PartialEq)]
    enum End {
        In,
        Out,
        Unknown,
    }
    let n = d.crossings.len();
    let mut ends = vec![[End::Unknown; 4]; n];
    let mut occurrences = vec![Vec::with_capacity(2); d.arc_count as usize + 1];
    for (i, x) in d.crossings.iter().enumerate() {
        ends[i][0] = End::In;
        ends[i][2] = End::Out;
        for slot in 0..4 {
            occurrences[x.arcs[slot] as usize].push((i, slot));
        }
        let (b, dd) = (x.b(), x.d());
        let d_to_b = d.next_arc(dd) == b;
        let b_to_d = d.next_arc(b) == dd;
        match (d_to_b, b_to_d) {
            (true, false) => {
                ends[i][3] = End::In;
                ends[i][1] = End::Out;
            }
            (false, true) => {
                ends[i][1] = End::In;
                ends[i][3] = End::Out;
            }
            (false, false) => {
                return Err(Error::OrientationConflict(format!(
                    "over-strand of {x} joins non-consecutive arcs {b} and {dd}"
                )))
            }
            (true, true) => {}
        }
    }

    let other_end = |arc: ArcId, at: (usize, usize)| {
        let occ = &occurrences[arc as usize];
        if occ[0] == at {
            occ[1]
        } else {
            occ[0]
        }
    };
    loop {
        let mut progress = false;
        let mut pending = false;
        for i in 0..n {
            if ends[i][1] != End::Unknown {
                continue;
            }
            let x = &d.crossings[i];
            let (oi, os) = other_end(x.b(), (i, 1));
            let (pi, ps) = other_end(x.d(), (i, 3));
            let b_end = match (ends[oi][os], ends[pi][ps]) {
                (End::In, _) | (_, End::Out) => End::Out,
                (End::Out, _) | (_, End::In) => End::In,
                _ => End::Unknown,
            };
            if b_end == End::Unknown {
                pending = true;
                continue;
            }
            ends[i][1] = b_end;
            ends[i][3] = if b_end == End::In { End::Out } else { End::In };
            progress = true;
        }
        if !pending {
            break;
        }
        if !progress {
            let i = (0..n).find(|&i| ends[i][1] == End::Unknown).unwrap();
            let (i, out_slot) = match hint {
                Some(signs) => (i, if signs[i] == Sign::Positive { 1 } else { 3 }),
                None => {
                    let x = &d.crossings[i];
                    convention_tail(&d.crossings, x.b().min(x.d()))
                }
            };
            ends[i][out_slot] = End::Out;
            ends[i][4 - out_slot] = End::In;
        }
    }

    for (arc, occ) in occurrences.iter().enumerate().skip(1) {
        let e0 = ends[occ[0].0][occ[0].1];
        let e1 = ends[occ[1].0][occ[1].1];
        if e0 == e1 {
            return Err(Error::OrientationConflict(format!(
                "arc {arc} has two {} ends",
                if e0 == End::In { "incoming" } else { "outgoing" }
            )));
        }
    }

    let mut out = d.clone();
    for (x, e) in out.crossings.iter_mut().zip(&ends) {
        x.sign = if e[3] == End::In { Sign::Positive } else { Sign::Negative };
    }
    Ok(out)
}

/// Closure of a braid word: `+i` is a positive crossing between strands
/// `i` and `i + 1`, `-i` a negative one.
pub fn braid_to_pd(word: &[i32], strands: u32) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::GeneratorOutOfRange { generator: 0, strands });
    }
    if word.is_empty() && strands != 1 {
        return Err(Error::EmptyWord(strands));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() >= strands {
            return Err(Error::GeneratorOutOfRange { generator: g, strands });
        }
    }

    // Provisional edge ids; edge k < strands starts at the bottom of strand k.
    let mut position: Vec<u32> = (0..strands).collect();
    let mut next_edge = strands;
    let mut raw: Vec<[u32; 4]> = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (el, er) = (position[i], position[i + 1]);
        let (fl, fr) = (next_edge, next_edge + 1);
        next_edge += 2;
        raw.push(if g > 0 { [er, fr, fl, el] } else { [el, er, fr, fl] });
        position[i] = fl;
        position[i + 1] = fr;
    }
    // Closing the braid identifies the top edge of each strand with its bottom edge.
    let mut alias: Vec<u32> = (0..next_edge).collect();
    for (k, &top) in position.iter().enumerate() {
        alias[top as usize] = k as u32;
    }
    let untouched = position.iter().enumerate().filter(|&(k, &p)| p == k as u32).count() as u32;
    for t in raw.iter_mut() {
        for e in t.iter_mut() {
            *e = alias[*e as usize];
        }
    }

    let mut successor = vec![u32::MAX; next_edge as usize];
    for (t, &g) in raw.iter().zip(word) {
        successor[t[0] as usize] = t[2];
        if g > 0 {
            successor[t[3] as usize] = t[1];
        } else {
            successor[t[1] as usize] = t[3];
        }
    }
    let mut new_id = vec![0u32; next_edge as usize];
    let mut assigned = 0u32;
    for t in &raw {
        for &start in t {
            if new_id[start as usize] != 0 {
                continue;
            }
            let mut e = start;
            loop {
                assigned += 1;
                new_id[e as usize] = assigned;
                e = successor[e as usize];
                if e == start {
                    break;
                }
            }
        }
    }
    let tuples = raw.iter().map(|t| t.map(|e| new_id[e as usize])).collect();
    let signs: Vec<Sign> = word.iter().map(|&g| if g > 0 { Sign::Positive } else { Sign::Negative }).collect();
    Diagram::from_signed(tuples, untouched, &signs)
}
