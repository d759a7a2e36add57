//! Oriented Blue-Red coloring on directed paths `v_1 -> v_2 -> ... -> v_k`.
//!
//! Four path classes cover every position reachable from an uncolored path:
//!
//! | class | precolored                      |
//! |-------|---------------------------------|
//! | `A_k` | `v_1` Blue                      |
//! | `B_k` | `v_k` Red                       |
//! | `C_k` | `v_1` Blue and `v_k` Red        |
//! | `D_k` | nothing                         |
//!
//! Painting `v_i` Blue blocks `v_{i-1}` for good and forces `v_{i+1}` Red;
//! painting it Red does the mirror image. Each move therefore splits the path
//! into two classed pieces, giving (with `g(X_j) = 0` for `j <= 0`):
//!
//! ```text
//! D_k = mex { D_{i-2} ^ A_{k+1-i} : 1 <= i <= k }   U { B_i ^ D_{k-i-1} : 1 <= i <= k }
//! A_k = mex { A_{i-2} ^ A_{k+1-i} : 3 <= i <= k }   U { C_i ^ D_{k-i-1} : 2 <= i <= k }
//! C_k = mex { A_{i-2} ^ C_{k+1-i} : 3 <= i <= k-1 } U { C_i ^ B_{k-i-1} : 2 <= i <= k-2 }
//! ```
//!
//! Reversing a path and swapping the colors maps `A_k` onto `B_k`, so
//! `g(B_k) = g(A_k)` and `B` is never stored.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{Board, Color, Move, Nimber, Position};
use crate::graph::Family;
use crate::rules::{Ruleset, BLUE, RED};

/// Largest bound accepted by [`GrundyTable::compute`] (about 300 MB of tables).
pub const MAX_BOUND: usize = 50_000_000;

const MAGIC: &[u8; 4] = b"CGPT";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathClass {
    A,
    B,
    C,
    D,
}

impl PathClass {
    pub const ALL: [PathClass; 4] = [PathClass::A, PathClass::B, PathClass::C, PathClass::D];
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathClass::A => "A",
            PathClass::B => "B",
            PathClass::C => "C",
            PathClass::D => "D",
        })
    }
}

impl FromStr for PathClass {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(PathClass::A),
            "B" | "b" => Ok(PathClass::B),
            "C" | "c" => Ok(PathClass::C),
            "D" | "d" => Ok(PathClass::D),
            other => Err(PathError::UnknownClass(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableMode {
    /// Scan every option.
    #[default]
    Naive,
    /// Scan options touching a rare value first and stop once the mex is
    /// settled; `C_{k+3}` is copied from `D_k`.
    Accelerated,
}

impl FromStr for TableMode {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(TableMode::Naive),
            "accelerated" | "fast" => Ok(TableMode::Accelerated),
            other => Err(PathError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum PathError {
    #[error("bound {k} exceeds the supported maximum {max}")]
    BoundTooLarge { k: usize, max: usize },
    #[error("value {value} of {class}_{k} does not fit in 16 bits")]
    Overflow { class: PathClass, k: usize, value: u32 },
    #[error("{class}_{k} is not a valid path position")]
    InvalidLength { class: PathClass, k: usize },
    #[error("the mirror strategy needs k > 3, got {0}")]
    StrategyNeedsLongerPath(usize),
    #[error("the mirror strategy is for classes A and B, got {0}")]
    StrategyClass(PathClass),
    #[error("unknown path class `{0}`")]
    UnknownClass(String),
    #[error("unknown table mode `{0}`")]
    UnknownMode(String),
    #[error("not a grundy table file")]
    BadMagic,
    #[error("table file version {found}, expected {VERSION}")]
    Version { found: u32 },
    #[error("table file checksum mismatch")]
    Checksum,
    #[error("table file is truncated")]
    Truncated,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The rare values: the XOR-closure of [`RareSet::GENERATORS`].
#[derive(Debug, Clone)]
pub struct RareSet {
    /// Reduced basis, indexed by leading bit.
    basis: [u32; 32],
    dim: usize,
}

impl Default for RareSet {
    fn default() -> Self {
        Self::new()
    }
}

impl RareSet {
    pub const GENERATORS: [u32; 15] = [0, 1, 2, 3, 4, 5, 6, 7, 24, 40, 64, 136, 264, 520, 1032];

    pub fn new() -> Self {
        let mut set = RareSet { basis: [0; 32], dim: 0 };
        for g in Self::GENERATORS {
            let r = set.reduce(g);
            if r != 0 {
                set.basis[31 - r.leading_zeros() as usize] = r;
                set.dim += 1;
            }
        }
        set
    }

    fn reduce(&self, mut x: u32) -> u32 {
        for bit in (0..32).rev() {
            if x >> bit & 1 == 1 && self.basis[bit] != 0 {
                x ^= self.basis[bit];
            }
        }
        x
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Every member, in increasing order.
    pub fn members(&self) -> Vec<u32> {
        let vectors: Vec<u32> = self.basis.iter().copied().filter(|&b| b != 0).collect();
        let mut out: Vec<u32> = (0u32..1 << vectors.len())
            .map(|mask| {
                vectors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, &v)| acc ^ v)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Grundy values of `A_k`, `C_k`, `D_k` for `k = 0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyTable {
    a: Vec<u16>,
    c: Vec<u16>,
    d: Vec<u16>,
}

impl Default for GrundyTable {
    fn default() -> Self {
        GrundyTable { a: vec![0], c: vec![0], d: vec![0] }
    }
}

/// Summary of the rare/common split of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RareReport {
    pub bound: usize,
    pub rare_occurrences: usize,
    pub common_occurrences: usize,
    /// Largest `k >= 1` holding a rare value, per class `A`, `C`, `D`.
    pub largest_rare_index: [Option<usize>; 3],
    pub max_value: u16,
    /// Class and index of the first occurrence of `max_value`.
    pub max_value_at: (PathClass, usize),
    pub rare_values: BTreeSet<u16>,
    pub common_values: BTreeSet<u16>,
}

impl RareReport {
    pub fn largest_rare_index_overall(&self) -> Option<usize> {
        self.largest_rare_index.iter().flatten().copied().max()
    }
}

impl GrundyTable {
    pub fn compute(bound: usize, mode: TableMode) -> Result<Self, PathError> {
        let mut t = GrundyTable::default();
        t.extend(bound, mode)?;
        Ok(t)
    }

    /// Largest `k` with stored values.
    pub fn bound(&self) -> usize {
        self.a.len() - 1
    }

    pub fn get(&self, class: PathClass, k: usize) -> Option<Nimber> {
        self.values(class).get(k).map(|&v| Nimber(v as u32))
    }

    fn values(&self, class: PathClass) -> &[u16] {
        match class {
            PathClass::A | PathClass::B => &self.a,
            PathClass::C => &self.c,
            PathClass::D => &self.d,
        }
    }

    pub fn ga(&self) -> &[u16] {
        &self.a
    }

    pub fn gc(&self) -> &[u16] {
        &self.c
    }

    pub fn gd(&self) -> &[u16] {
        &self.d
    }

    /// Grows the table to `bound`; existing entries are kept as they are.
    pub fn extend(&mut self, bound: usize, mode: TableMode) -> Result<(), PathError> {
        if bound > MAX_BOUND {
            return Err(PathError::BoundTooLarge { k: bound, max: MAX_BOUND });
        }
        if bound <= self.bound() {
            return Ok(());
        }
        let extra = bound - self.bound();
        self.a.reserve(extra);
        self.c.reserve(extra);
        self.d.reserve(extra);
        let mut fill = Filler::new(self, mode);
        for k in self.bound() + 1..=bound {
            // C_{j+3} and D_j have equal values; naive mode recomputes C as a check.
            let c = if mode == TableMode::Accelerated && k >= 4 {
                self.d[k - 3]
            } else {
                fill.next_value(self, PathClass::C, k)?
            };
            self.c.push(c);
            fill.record(PathClass::C, k, c);
            let a = fill.next_value(self, PathClass::A, k)?;
            self.a.push(a);
            fill.record(PathClass::A, k, a);
            let d = fill.next_value(self, PathClass::D, k)?;
            self.d.push(d);
            fill.record(PathClass::D, k, d);
        }
        Ok(())
    }

    /// Lengths `1 <= k <= bound` whose class value is zero.
    pub fn p_positions(&self, class: PathClass) -> Vec<usize> {
        (1..=self.bound())
            .filter(|&k| self.get(class, k) == Some(Nimber(0)))
            .collect()
    }

    pub fn classify_rare_common(&self, bound: usize) -> RareReport {
        let rare = RareSet::new();
        let bound = bound.min(self.bound());
        let mut report = RareReport {
            bound,
            rare_occurrences: 0,
            common_occurrences: 0,
            largest_rare_index: [None; 3],
            max_value: 0,
            max_value_at: (PathClass::A, 0),
            rare_values: BTreeSet::new(),
            common_values: BTreeSet::new(),
        };
        let classes = [(PathClass::A, &self.a), (PathClass::C, &self.c), (PathClass::D, &self.d)];
        for (slot, (class, arr)) in classes.iter().enumerate() {
            for (k, &v) in arr.iter().enumerate().take(bound + 1).skip(1) {
                if rare.contains(v as u32) {
                    report.rare_occurrences += 1;
                    report.rare_values.insert(v);
                    report.largest_rare_index[slot] = Some(k);
                } else {
                    report.common_occurrences += 1;
                    report.common_values.insert(v);
                }
                if v > report.max_value {
                    report.max_value = v;
                    report.max_value_at = (*class, k);
                }
            }
        }
        report
    }

    pub fn save(&self, path: &Path) -> Result<(), PathError> {
        let mut file = io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut file)?;
        file.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, PathError> {
        Self::read_from(&mut io::BufReader::new(std::fs::File::open(path)?))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let k = self.bound();
        let mut out = Vec::with_capacity(HEADER_LEN + 6 * (k + 1) + 8);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(k as u64).to_le_bytes());
        for arr in [&self.a, &self.c, &self.d] {
            for v in arr.iter() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        let sum = fnv1a(&out);
        out.extend_from_slice(&sum.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, PathError> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(PathError::BadMagic);
        }
        if bytes.len() < HEADER_LEN + 8 {
            return Err(PathError::Truncated);
        }
        let (body, tail) = bytes.split_at(bytes.len() - 8);
        if fnv1a(body) != u64::from_le_bytes(tail.try_into().unwrap()) {
            return Err(PathError::Checksum);
        }
        let version = u32::from_le_bytes(body[4..8].try_into().unwrap());
        if version != VERSION {
            return Err(PathError::Version { found: version });
        }
        let k = u64::from_le_bytes(body[8..16].try_into().unwrap()) as usize;
        if k > MAX_BOUND {
            return Err(PathError::BoundTooLarge { k, max: MAX_BOUND });
        }
        let len = k + 1;
        if body.len() != HEADER_LEN + 6 * len {
            return Err(PathError::Truncated);
        }
        let arrays: Vec<Vec<u16>> = body[HEADER_LEN..]
            .chunks(2 * len)
            .map(|chunk| chunk.chunks(2).map(|b| u16::from_le_bytes([b[0], b[1]])).collect())
            .collect();
        let [a, c, d]: [Vec<u16>; 3] = arrays.try_into().map_err(|_| PathError::Truncated)?;
        Ok(GrundyTable { a, c, d })
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<(), PathError> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self, PathError> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    /// `k,gA,gC,gD` rows for `k = 1..=bound`, with a header line.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "k,gA,gC,gD")?;
        for k in 1..=self.bound() {
            writeln!(w, "{},{},{},{}", k, self.a[k], self.c[k], self.d[k])?;
        }
        Ok(())
    }
}

/// 64-bit FNV-1a.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Scattered probes tried before falling back to a full option scan.
const PROBE_BUDGET: usize = 24_576;

/// One family `X_{i + x_off} ^ Y_{y_base - i}` for `lo <= i <= hi`.
#[derive(Clone, Copy)]
struct Family2 {
    x: PathClass,
    x_off: isize,
    y: PathClass,
    y_base: isize,
    lo: isize,
    hi: isize,
}

fn families(class: PathClass, k: usize) -> [Family2; 2] {
    use PathClass::*;
    let k = k as isize;
    let f = |x, x_off, y, y_base, lo, hi| Family2 { x, x_off, y, y_base, lo, hi };
    match class {
        D => [f(D, -2, A, k + 1, 1, k), f(B, 0, D, k - 1, 1, k)],
        A | B => [f(A, -2, A, k + 1, 3, k), f(C, 0, D, k - 1, 2, k)],
        C => [f(A, -2, C, k + 1, 3, k - 1), f(C, 0, B, k - 1, 2, k - 2)],
    }
}

/// Incremental state for filling a table.
struct Filler {
    mode: TableMode,
    rare: Vec<bool>,
    /// Indices `k >= 1` holding a rare value, per class slot `A`, `C`, `D`.
    rare_at: [Vec<usize>; 3],
    common_rep: Option<u16>,
    /// Some pair of common values differs by a common value; the shortcut
    /// is no longer sound.
    coset_broken: bool,
    seen: Vec<u32>,
    epoch: u32,
}

fn slot(class: PathClass) -> usize {
    match class {
        PathClass::A | PathClass::B => 0,
        PathClass::C => 1,
        PathClass::D => 2,
    }
}

impl Filler {
    fn new(table: &GrundyTable, mode: TableMode) -> Self {
        let set = RareSet::new();
        let rare: Vec<bool> = (0..=u16::MAX as u32 + 1).map(|v| set.contains(v)).collect();
        let mut fill = Filler {
            mode,
            rare,
            rare_at: [Vec::new(), Vec::new(), Vec::new()],
            common_rep: None,
            coset_broken: false,
            seen: vec![0; u16::MAX as usize + 2],
            epoch: 0,
        };
        for k in 1..=table.bound() {
            fill.record(PathClass::C, k, table.c[k]);
            fill.record(PathClass::A, k, table.a[k]);
            fill.record(PathClass::D, k, table.d[k]);
        }
        fill
    }

    fn record(&mut self, class: PathClass, k: usize, v: u16) {
        if self.rare[v as usize] {
            self.rare_at[slot(class)].push(k);
        } else {
            match self.common_rep {
                None => self.common_rep = Some(v),
                Some(rep) if !self.rare[(rep ^ v) as usize] => self.coset_broken = true,
                Some(_) => {}
            }
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn mex(&self, epoch: u32) -> u32 {
        self.seen.iter().position(|&s| s != epoch).unwrap() as u32
    }

    fn next_value(&mut self, t: &GrundyTable, class: PathClass, k: usize) -> Result<u16, PathError> {
        let fams = families(class, k);
        let term = |f: &Family2, i: isize| at(t.values(f.x), i + f.x_off) ^ at(t.values(f.y), f.y_base - i);

        let epoch = self.next_epoch();
        let m = if self.mode == TableMode::Accelerated && !self.coset_broken {
            // Options touching a rare value. Indices at or below zero are
            // empty paths with value 0, which is rare.
            for f in &fams {
                if f.lo > f.hi {
                    continue;
                }
                for i in (f.lo..=f.hi.min(-f.x_off)).chain(f.lo.max(f.y_base)..=f.hi) {
                    self.seen[term(f, i) as usize] = epoch;
                }
                for &j in &self.rare_at[slot(f.x)] {
                    let i = j as isize - f.x_off;
                    if i > f.hi {
                        break;
                    }
                    if i >= f.lo {
                        self.seen[term(f, i) as usize] = epoch;
                    }
                }
                for &j in &self.rare_at[slot(f.y)] {
                    let i = f.y_base - j as isize;
                    if i < f.lo {
                        break;
                    }
                    if i <= f.hi {
                        self.seen[term(f, i) as usize] = epoch;
                    }
                }
            }
            // The remaining options pair two common values and so are rare:
            // the smallest common value not yet seen is already missing from
            // the option set. It is the answer once every rare value below
            // it has been seen.
            let c = (0..).find(|&v| !self.rare[v] && self.seen[v] != epoch).unwrap();
            let mut missing = (0..c).filter(|&v| self.seen[v] != epoch).count();
            // Probe in a scattered order, which pairs values of similar size
            // early; small rare values come from those pairs. Past the probe
            // budget the answer is most likely rare and needs a full scan.
            let mut budget = PROBE_BUDGET;
            let mut exhaustive = true;
            'scan: for f in &fams {
                if f.lo > f.hi {
                    continue;
                }
                let len = (f.hi - f.lo + 1) as usize;
                let step = coprime_step(len);
                let mut off = 0;
                for _ in 0..len {
                    if missing == 0 {
                        break 'scan;
                    }
                    if budget == 0 {
                        exhaustive = false;
                        break 'scan;
                    }
                    budget -= 1;
                    let w = term(f, f.lo + off as isize) as usize;
                    if w < c && self.seen[w] != epoch {
                        self.seen[w] = epoch;
                        missing -= 1;
                    }
                    off += step;
                    if off >= len {
                        off -= len;
                    }
                }
            }
            if missing == 0 {
                c as u32
            } else {
                if !exhaustive {
                    let seen = &mut self.seen;
                    for f in &fams {
                        terms(t, f).for_each(|w| seen[w as usize] = epoch);
                    }
                }
                self.mex(epoch)
            }
        } else {
            let seen = &mut self.seen;
            for f in &fams {
                terms(t, f).for_each(|w| seen[w as usize] = epoch);
            }
            self.mex(epoch)
        };
        u16::try_from(m).map_err(|_| PathError::Overflow { class, k, value: m })
    }
}

/// A step near `len / phi` that visits every offset of `0..len` once.
fn coprime_step(len: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut step = ((len as f64) * 0.618_033_988_7) as usize;
    while step > 1 && gcd(step, len) != 1 {
        step -= 1;
    }
    step.max(1)
}

fn at(values: &[u16], j: isize) -> u16 {
    if j <= 0 {
        0
    } else {
        values[j as usize]
    }
}

/// Option values of one family in increasing `i`; the stretch where both
/// indices are positive runs over plain slices.
fn terms<'a>(t: &'a GrundyTable, f: &Family2) -> impl Iterator<Item = u16> + 'a {
    let f = *f;
    let (xs, ys) = (t.values(f.x), t.values(f.y));
    let mid_lo = f.lo.max(1 - f.x_off);
    let mid_hi = f.hi.min(f.y_base - 1);
    let head_hi = f.hi.min(mid_lo - 1);
    let tail_lo = f.lo.max(mid_hi + 1).max(head_hi + 1);
    let edge = move |i: isize| at(xs, i + f.x_off) ^ at(ys, f.y_base - i);
    let (mid_x, mid_y): (&[u16], &[u16]) = if mid_lo <= mid_hi {
        let len = (mid_hi - mid_lo + 1) as usize;
        let a = (mid_lo + f.x_off) as usize;
        let b = (f.y_base - mid_lo) as usize;
        (&xs[a..a + len], &ys[b + 1 - len..=b])
    } else {
        (&[], &[])
    };
    (f.lo..=head_hi)
        .map(edge)
        .chain(mid_x.iter().zip(mid_y.iter().rev()).map(|(x, y)| x ^ y))
        .chain((tail_lo..=f.hi).map(edge))
}

/// The uncolored-or-precolored directed path for `class` with `k` vertices.
pub fn class_position(class: PathClass, k: usize) -> Result<Position, PathError> {
    let min = if class == PathClass::C { 2 } else { 1 };
    if k < min {
        return Err(PathError::InvalidLength { class, k });
    }
    let graph = Family::DirectedPath(k).build().expect("k >= 1");
    let mut coloring: Vec<Color> = vec![0; k];
    if matches!(class, PathClass::A | PathClass::C) {
        coloring[0] = BLUE;
    }
    if matches!(class, PathClass::B | PathClass::C) {
        coloring[k - 1] = RED;
    }
    let board = Arc::new(Board::new(graph, Ruleset::OrientedBlueRed, 2, None).expect("directed, k = 2"));
    Ok(Position::new(board, coloring).expect("precoloring is legal"))
}

/// The mirror-strategy move from `A_k` or `B_k` to a zero position (`k > 3`).
///
/// On `A_k` with `k` odd, Blue on `v_{(k+3)/2}` leaves `A_{(k-1)/2} + A_{(k-1)/2}`.
/// With `k` even, Red on `v_{k/2+1}` leaves `C_{k/2+1} + D_{k/2-2}`, two equal
/// values. `B_k` uses the reflected vertex and the other color. Vertices in
/// the returned move are 0-based.
pub fn winning_move_ab(k: usize, class: PathClass) -> Result<Move, PathError> {
    if k <= 3 {
        return Err(PathError::StrategyNeedsLongerPath(k));
    }
    let (i, color) = if k % 2 == 1 { ((k + 3) / 2, BLUE) } else { (k / 2 + 1, RED) };
    match class {
        PathClass::A => Ok(Move { vertex: i - 1, color }),
        PathClass::B => Ok(Move { vertex: k - i, color: if color == BLUE { RED } else { BLUE } }),
        other => Err(PathError::StrategyClass(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::grundy;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn table(k: usize) -> GrundyTable {
        GrundyTable::compute(k, TableMode::Naive).unwrap()
    }

    #[test]
    fn base_values() {
        let t = table(10);
        assert_eq!(t.get(PathClass::A, 1), Some(Nimber(0)));
        assert_eq!(t.get(PathClass::B, 1), Some(Nimber(0)));
        assert_eq!(t.get(PathClass::C, 4), Some(Nimber(1)));
        assert_eq!(t.get(PathClass::D, 1), Some(Nimber(1)));
        assert_eq!(t.get(PathClass::D, 2), Some(Nimber(2)));
        assert_eq!(t.get(PathClass::D, 0), Some(Nimber(0)));
        assert!(t.p_positions(PathClass::A).contains(&1));
    }

    #[test]
    fn recursion_matches_search() {
        let t = table(12);
        for class in PathClass::ALL {
            let min = if class == PathClass::C { 2 } else { 1 };
            for k in min..=12 {
                let p = class_position(class, k).unwrap();
                assert_eq!(t.get(class, k), Some(grundy(&p).unwrap()), "{class}_{k}");
            }
        }
    }

    #[test]
    fn offset_identity() {
        let t = table(2000);
        for k in 0..=t.bound() - 3 {
            assert_eq!(t.gc()[k + 3], t.gd()[k], "k = {k}");
        }
    }

    #[test]
    fn accelerated_is_identical() {
        let naive = table(3000);
        let fast = GrundyTable::compute(3000, TableMode::Accelerated).unwrap();
        assert_eq!(naive, fast);
    }

    #[test]
    fn extend_keeps_prefix() {
        let mut t = table(100);
        let before = t.clone();
        t.extend(200, TableMode::Accelerated).unwrap();
        assert_eq!(&t.ga()[..=100], before.ga());
        assert_eq!(&t.gd()[..=100], before.gd());
        assert_eq!(t, table(200));
        t.extend(50, TableMode::Naive).unwrap();
        assert_eq!(t.bound(), 200);
    }

    #[test]
    fn strategy_moves_reach_zero() {
        let t = table(60);
        let five = winning_move_ab(5, PathClass::A).unwrap();
        assert_eq!(five, Move { vertex: 3, color: BLUE });
        assert_eq!(winning_move_ab(6, PathClass::A).unwrap(), Move { vertex: 3, color: RED });
        assert_eq!(winning_move_ab(5, PathClass::B).unwrap(), Move { vertex: 1, color: RED });
        for k in 4..=12 {
            for class in [PathClass::A, PathClass::B] {
                let p = class_position(class, k).unwrap();
                let mv = winning_move_ab(k, class).unwrap();
                assert_eq!(grundy(&p.play(mv).unwrap()).unwrap(), Nimber(0), "{class}_{k}");
            }
        }
        for k in 4..=60 {
            let h = k / 2;
            let split = if k % 2 == 1 {
                t.ga()[(k - 1) / 2] ^ t.ga()[(k - 1) / 2]
            } else {
                t.gc()[h + 1] ^ t.gd()[h - 2]
            };
            assert_eq!(split, 0, "k = {k}");
        }
        assert!(winning_move_ab(3, PathClass::A).is_err());
        assert!(winning_move_ab(9, PathClass::C).is_err());
    }

    #[test]
    fn rare_set_is_the_generated_closure() {
        let mut closure: HashSet<u32> = HashSet::from([0]);
        loop {
            let next: HashSet<u32> = closure
                .iter()
                .flat_map(|&x| RareSet::GENERATORS.iter().map(move |&g| x ^ g))
                .chain(closure.iter().copied())
                .collect();
            if next.len() == closure.len() {
                break;
            }
            closure = next;
        }
        let set = RareSet::new();
        assert_eq!(set.dimension(), 10);
        assert_eq!(closure.len(), 1024);
        let mut sorted: Vec<u32> = closure.iter().copied().collect();
        sorted.sort_unstable();
        assert_eq!(set.members(), sorted);
        for x in 0..4096 {
            assert_eq!(set.contains(x), closure.contains(&x), "{x}");
        }
        assert!(set.contains(24 ^ 40));
        for &x in &sorted {
            for &y in &sorted {
                assert!(set.contains(x ^ y));
            }
        }
    }

    #[test]
    fn report_summarises_values() {
        let t = table(500);
        let r = t.classify_rare_common(500);
        assert_eq!(r.rare_occurrences + r.common_occurrences, 3 * 500);
        let set = RareSet::new();
        assert!(r.rare_values.iter().all(|&v| set.contains(v as u32)));
        assert!(r.common_values.iter().all(|&v| !set.contains(v as u32)));
        let max = t.ga()[1..].iter().chain(&t.gc()[1..]).chain(&t.gd()[1..]).max().copied();
        assert_eq!(Some(r.max_value), max);
    }

    #[test]
    fn file_round_trip_and_corruption() {
        let t = table(100);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.bin");
        t.save(&path).unwrap();
        assert_eq!(GrundyTable::load(&path).unwrap(), t);

        let mut bytes = t.to_bytes();
        bytes[40] ^= 0x10;
        assert!(matches!(GrundyTable::from_bytes(&bytes), Err(PathError::Checksum)));
        let mut bytes = t.to_bytes();
        bytes[4] = 9;
        let n = bytes.len();
        let sum = fnv1a(&bytes[..n - 8]);
        bytes[n - 8..].copy_from_slice(&sum.to_le_bytes());
        assert!(matches!(GrundyTable::from_bytes(&bytes), Err(PathError::Version { found: 9 })));
        assert!(matches!(GrundyTable::from_bytes(b"nope"), Err(PathError::BadMagic)));
        assert!(matches!(GrundyTable::from_bytes(&t.to_bytes()[..20]), Err(PathError::Truncated | PathError::Checksum)));
    }

    #[test]
    fn csv_layout() {
        let mut out = Vec::new();
        table(3).write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,gA,gC,gD");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,0,"));
        assert!(lines[2].ends_with(",2"));
    }

    #[test]
    fn rejects_huge_bounds() {
        assert!(matches!(
            GrundyTable::compute(MAX_BOUND + 1, TableMode::Naive),
            Err(PathError::BoundTooLarge { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// A random move on a random class position splits it into two
        /// table entries; their nim-sum must be an option value of the parent.
        #[test]
        fn splits_are_options(k in 2usize..200, i in 1usize..200, blue in any::<bool>(), which in 0usize..4) {
            let t = table(200);
            let class = PathClass::ALL[which];
            let i = 1 + (i - 1) % k;
            let color = if blue { BLUE } else { RED };
            // Which vertices are already painted in this class.
            let first_blue = matches!(class, PathClass::A | PathClass::C);
            let last_red = matches!(class, PathClass::B | PathClass::C);
            prop_assume!(!(class == PathClass::C && k < 2));
            prop_assume!(!(first_blue && i == 1) && !(last_red && i == k));
            // Legality against the precolored ends.
            prop_assume!(!(first_blue && i == 2 && color == BLUE));
            prop_assume!(!(last_red && i == k - 1 && color == RED));
            let g = |c: PathClass, j: isize| if j <= 0 { 0 } else { t.get(c, j as usize).unwrap().0 };
            let (ki, ii) = (k as isize, i as isize);
            let left = match (first_blue, color == BLUE) {
                (true, true) => g(PathClass::A, ii - 2),
                (false, true) => g(PathClass::D, ii - 2),
                (true, false) => g(PathClass::C, ii),
                (false, false) => g(PathClass::B, ii),
            };
            let right = match (last_red, color == BLUE) {
                (true, true) => g(PathClass::C, ki + 1 - ii),
                (false, true) => g(PathClass::A, ki + 1 - ii),
                (true, false) => g(PathClass::B, ki - ii - 1),
                (false, false) => g(PathClass::D, ki - ii - 1),
            };
            let parent = t.get(class, k).unwrap().0;
            prop_assert_ne!(left ^ right, parent);
            if k <= 10 {
                let p = class_position(class, k).unwrap();
                let q = p.play(Move { vertex: i - 1, color }).unwrap();
                prop_assert_eq!(grundy(&q).unwrap().0, left ^ right);
            }
        }
    }
}
