//! Operator words, symbolic frequencies and rotating monomials.
//!
//! Qubit operators are matrix units of the free-frame eigenbasis.
//! Qubit 1 rotates under X0σx: index 0 is |+x⟩, index 1 is |−x⟩.
//! Qubit 2 rotates under Z0σz: index 0 is |0⟩ (σz = +1), index 1 is |1⟩.
//! A unit E_ij then oscillates at e_i − e_j, i.e. ±(2X0) or ±(2Z0).

use jjdirac_core::linalg::{C64, ONE, ZERO};
use serde::Serialize;
use std::fmt;

/// Frequency symbols. Every monomial frequency is an integer combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sym {
    /// Qubit 1 splitting 2X0.
    Q1,
    /// Qubit 2 splitting 2Z0.
    Q2,
    Mode(Mode),
    Drive(DriveId),
}

pub const N_SYM: usize = 2 + 7 + 6;

impl Sym {
    pub fn index(self) -> usize {
        match self {
            Sym::Q1 => 0,
            Sym::Q2 => 1,
            Sym::Mode(m) => 2 + m as usize,
            Sym::Drive(d) => 9 + d.index(),
        }
    }

    pub fn from_index(i: usize) -> Sym {
        match i {
            0 => Sym::Q1,
            1 => Sym::Q2,
            2..=8 => Sym::Mode(Mode::ALL[i - 2]),
            _ => Sym::Drive(DriveId::from_index(i - 9)),
        }
    }

    /// Hierarchy tier: O is fastest, the axis buses next, all else slow.
    pub fn tier(self) -> u8 {
        match self {
            Sym::Mode(Mode::O) => 2,
            Sym::Mode(Mode::BX | Mode::BY | Mode::BZ) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Q1 => write!(f, "2X0(1)"),
            Sym::Q2 => write!(f, "2Z0(2)"),
            Sym::Mode(m) => write!(f, "w_{}", m.name()),
            Sym::Drive(d) => write!(f, "w{}({})", d.line, d.qubit),
        }
    }
}

/// Drive line `line` ∈ {1,2,3} of flux qubit `qubit` ∈ {1,2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DriveId {
    pub qubit: u8,
    pub line: u8,
}

impl DriveId {
    pub fn new(qubit: u8, line: u8) -> Self {
        assert!((1..=2).contains(&qubit) && (1..=3).contains(&line));
        Self { qubit, line }
    }

    pub fn index(self) -> usize {
        (self.qubit as usize - 1) * 3 + self.line as usize - 1
    }

    pub fn from_index(i: usize) -> Self {
        Self::new((i / 3) as u8 + 1, (i % 3) as u8 + 1)
    }
}

/// Integer combination of frequency symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreqVec(pub [i8; N_SYM]);

impl FreqVec {
    pub const ZERO: FreqVec = FreqVec([0; N_SYM]);

    pub fn unit(s: Sym, sign: i8) -> Self {
        let mut v = [0; N_SYM];
        v[s.index()] = sign;
        FreqVec(v)
    }

    pub fn add(&self, o: &FreqVec) -> FreqVec {
        FreqVec(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn neg(&self) -> FreqVec {
        FreqVec(self.0.map(|c| -c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn value(&self, t: &FreqTable) -> f64 {
        self.0
            .iter()
            .zip(t.values.iter())
            .map(|(&c, &v)| c as f64 * v)
            .sum()
    }

    /// Highest tier with a nonzero coefficient.
    pub fn tier(&self) -> u8 {
        (0..N_SYM)
            .filter(|&i| self.0[i] != 0)
            .map(|i| Sym::from_index(i).tier())
            .max()
            .unwrap_or(0)
    }

    /// Value keeping only the symbols of the highest tier present.
    pub fn collapsed(&self, t: &FreqTable) -> f64 {
        let top = self.tier();
        (0..N_SYM)
            .filter(|&i| Sym::from_index(i).tier() == top)
            .map(|i| self.0[i] as f64 * t.values[i])
            .sum()
    }
}

impl fmt::Display for FreqVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..N_SYM {
            let c = self.0[i];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{}", Sym::from_index(i))?;
            } else {
                write!(f, "{sign}{mag}{}", Sym::from_index(i))?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Numeric values (GHz, signed) of every frequency symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqTable {
    pub values: [f64; N_SYM],
}

impl FreqTable {
    pub fn new() -> Self {
        Self {
            values: [0.0; N_SYM],
        }
    }

    pub fn set(&mut self, s: Sym, v: f64) {
        self.values[s.index()] = v;
    }

    pub fn get(&self, s: Sym) -> f64 {
        self.values[s.index()]
    }
}

impl Default for FreqTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Bosonic modes: phase qubits x, y, z and shared junctions X, Y, Z, O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    Px,
    Py,
    Pz,
    BX,
    BY,
    BZ,
    O,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::Px,
        Mode::Py,
        Mode::Pz,
        Mode::BX,
        Mode::BY,
        Mode::BZ,
        Mode::O,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Px => "x",
            Mode::Py => "y",
            Mode::Pz => "z",
            Mode::BX => "X",
            Mode::BY => "Y",
            Mode::BZ => "Z",
            Mode::O => "O",
        }
    }

    /// Bus modes are eliminated against their vacuum.
    pub fn is_bus(self) -> bool {
        matches!(self, Mode::BX | Mode::BY | Mode::BZ | Mode::O)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ladder {
    Create,
    Annihilate,
}

impl Ladder {
    pub fn sign(self) -> i8 {
        match self {
            Ladder::Create => 1,
            Ladder::Annihilate => -1,
        }
    }

    pub fn flip(self) -> Ladder {
        match self {
            Ladder::Create => Ladder::Annihilate,
            Ladder::Annihilate => Ladder::Create,
        }
    }
}

/// Matrix unit |row⟩⟨col| in a qubit's frame basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Unit {
    pub row: u8,
    pub col: u8,
}

impl Unit {
    pub const fn new(row: u8, col: u8) -> Self {
        Self { row, col }
    }

    /// Signed multiple of the qubit splitting at which the unit rotates.
    pub fn rotation(self) -> i8 {
        self.col as i8 - self.row as i8
    }

    pub fn mul(self, o: Unit) -> Option<Unit> {
        (self.col == o.row).then_some(Unit::new(self.row, o.col))
    }

    pub fn dagger(self) -> Unit {
        Unit::new(self.col, self.row)
    }
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModeLabel {
    Qubit1(Unit),
    Qubit2(Unit),
    Boson(Mode, Ladder),
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Qubit1(u) => {
                let s = match (u.row, u.col) {
                    (0, 0) => "P+x",
                    (1, 1) => "P-x",
                    (0, 1) => "r+",
                    _ => "r-",
                };
                write!(f, "{s}(1)")
            }
            ModeLabel::Qubit2(u) => {
                let s = match (u.row, u.col) {
                    (0, 0) => "P0",
                    (1, 1) => "P1",
                    (0, 1) => "s+",
                    _ => "s-",
                };
                write!(f, "{s}(2)")
            }
            ModeLabel::Boson(m, Ladder::Create) => write!(f, "a+_{}", m.name()),
            ModeLabel::Boson(m, Ladder::Annihilate) => write!(f, "a-_{}", m.name()),
        }
    }
}

/// Canonical operator word: qubit 1, qubit 2, then bosons by mode with
/// the time order within each mode preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Word {
    pub q1: Option<Unit>,
    pub q2: Option<Unit>,
    pub bosons: Vec<(Mode, Ladder)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn q1(u: Unit) -> Self {
        Self {
            q1: Some(u),
            ..Self::default()
        }
    }

    pub fn q2(u: Unit) -> Self {
        Self {
            q2: Some(u),
            ..Self::default()
        }
    }

    pub fn boson(m: Mode, l: Ladder) -> Self {
        Self {
            bosons: vec![(m, l)],
            ..Self::default()
        }
    }

    pub fn labels(&self) -> Vec<ModeLabel> {
        let mut out = Vec::new();
        if let Some(u) = self.q1 {
            out.push(ModeLabel::Qubit1(u));
        }
        if let Some(u) = self.q2 {
            out.push(ModeLabel::Qubit2(u));
        }
        out.extend(self.bosons.iter().map(|&(m, l)| ModeLabel::Boson(m, l)));
        out
    }

    /// Frequency implied by the letters alone.
    pub fn frequency(&self) -> FreqVec {
        let mut f = FreqVec::ZERO;
        if let Some(u) = self.q1 {
            f = f.add(&FreqVec::unit(Sym::Q1, u.rotation()));
        }
        if let Some(u) = self.q2 {
            f = f.add(&FreqVec::unit(Sym::Q2, u.rotation()));
        }
        for &(m, l) in &self.bosons {
            f = f.add(&FreqVec::unit(Sym::Mode(m), l.sign()));
        }
        f
    }

    /// Product self·o; None when a qubit projector product vanishes.
    pub fn mul(&self, o: &Word) -> Option<Word> {
        let join = |a: Option<Unit>, b: Option<Unit>| match (a, b) {
            (None, x) | (x, None) => Some(x),
            (Some(a), Some(b)) => a.mul(b).map(Some),
        };
        let q1 = join(self.q1, o.q1)?;
        let q2 = join(self.q2, o.q2)?;
        let mut bosons = self.bosons.clone();
        bosons.extend_from_slice(&o.bosons);
        // stable: keeps the time order within a mode
        bosons.sort_by_key(|&(m, _)| m);
        Some(Word { q1, q2, bosons })
    }

    pub fn dagger(&self) -> Word {
        let mut bosons: Vec<_> = self.bosons.iter().rev().map(|&(m, l)| (m, l.flip())).collect();
        bosons.sort_by_key(|&(m, _)| m);
        Word {
            q1: self.q1.map(Unit::dagger),
            q2: self.q2.map(Unit::dagger),
            bosons,
        }
    }

    /// Replace every bus-mode string by its vacuum expectation value.
    /// Returns the scalar and the reduced word.
    pub fn reduce_buses(&self) -> (f64, Word) {
        let mut factor = 1.0;
        for m in Mode::ALL.iter().filter(|m| m.is_bus()) {
            let seq: Vec<Ladder> = self
                .bosons
                .iter()
                .filter(|(mm, _)| mm == m)
                .map(|&(_, l)| l)
                .collect();
            if !seq.is_empty() {
                factor *= vacuum_expectation(&seq);
                if factor == 0.0 {
                    break;
                }
            }
        }
        let bosons = self.bosons.iter().copied().filter(|(m, _)| !m.is_bus()).collect();
        (
            factor,
            Word {
                q1: self.q1,
                q2: self.q2,
                bosons,
            },
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.labels();
        if labels.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// ⟨0| op_1 op_2 … op_k |0⟩ for one mode, leftmost operator first.
pub fn vacuum_expectation(seq: &[Ladder]) -> f64 {
    let n = seq.len() + 1;
    let mut psi = vec![0.0; n];
    psi[0] = 1.0;
    for &op in seq.iter().rev() {
        let mut next = vec![0.0; n];
        for k in 0..n {
            if psi[k] == 0.0 {
                continue;
            }
            match op {
                Ladder::Create if k + 1 < n => next[k + 1] += psi[k] * ((k + 1) as f64).sqrt(),
                Ladder::Annihilate if k > 0 => next[k - 1] += psi[k] * (k as f64).sqrt(),
                _ => {}
            }
        }
        psi = next;
    }
    psi[0]
}

/// amplitude · word · e^{i 2π (frequency) t}, with the drive lines whose
/// scalar factors were absorbed into the amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatingMonomial {
    pub amplitude: C64,
    pub frequency: FreqVec,
    pub word: Word,
    /// (drive, ±1) for each absorbed ½n e^{±i(ωt+φ)} factor.
    pub drives: Vec<(DriveId, i8)>,
}

impl RotatingMonomial {
    pub fn operator(amplitude: C64, word: Word) -> Self {
        Self {
            amplitude,
            frequency: word.frequency(),
            word,
            drives: Vec::new(),
        }
    }

    /// ½n e^{±i(ω t + φ)} as a scalar monomial.
    pub fn drive(d: DriveId, sign: i8, amplitude: f64, phase: f64) -> Self {
        Self {
            amplitude: C64::from_polar(0.5 * amplitude, sign as f64 * phase),
            frequency: FreqVec::unit(Sym::Drive(d), sign),
            word: Word::identity(),
            drives: vec![(d, sign)],
        }
    }

    /// Frequency implied by the word and drive labels.
    pub fn implied_frequency(&self) -> FreqVec {
        self.drives.iter().fold(self.word.frequency(), |f, &(d, s)| {
            f.add(&FreqVec::unit(Sym::Drive(d), s))
        })
    }

    pub fn mul(&self, o: &RotatingMonomial) -> Option<RotatingMonomial> {
        let word = self.word.mul(&o.word)?;
        let mut drives = self.drives.clone();
        drives.extend_from_slice(&o.drives);
        drives.sort();
        Some(RotatingMonomial {
            amplitude: self.amplitude * o.amplitude,
            frequency: self.frequency.add(&o.frequency),
            word,
            drives,
        })
    }

    pub fn scale(mut self, s: C64) -> Self {
        self.amplitude *= s;
        self
    }

    pub fn conjugate(&self) -> RotatingMonomial {
        RotatingMonomial {
            amplitude: self.amplitude.conj(),
            frequency: self.frequency.neg(),
            word: self.word.dagger(),
            drives: self.drives.iter().map(|&(d, s)| (d, -s)).collect(),
        }
    }
}

/// A Hermitian sum of rotating monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionTerm {
    pub name: String,
    pub monomials: Vec<RotatingMonomial>,
}

impl InteractionTerm {
    /// Expand a product of Hermitian factors (each a sum of monomials).
    pub fn product(name: &str, factors: &[Vec<RotatingMonomial>]) -> Self {
        let mut acc = vec![RotatingMonomial::operator(ONE, Word::identity())];
        for f in factors {
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for a in &acc {
                for b in f {
                    if let Some(m) = a.mul(b) {
                        if m.amplitude != ZERO {
                            next.push(m);
                        }
                    }
                }
            }
            acc = next;
        }
        Self {
            name: name.to_string(),
            monomials: acc,
        }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        for m in &mut self.monomials {
            m.amplitude *= s;
        }
        self
    }

    /// Every monomial has its conjugate partner with the conjugate amplitude.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.monomials.iter().all(|m| {
            let c = m.conjugate();
            let total: C64 = self
                .monomials
                .iter()
                .filter(|o| o.word == c.word && o.frequency == c.frequency && o.drives == c.drives)
                .map(|o| o.amplitude)
                .sum();
            (total - c.amplitude).norm() <= tol * (1.0 + c.amplitude.norm())
        })
    }
}

/// Hermitian factor builders.
pub mod factors {
    use super::*;
    use jjdirac_core::linalg::I;

    fn op(a: C64, w: Word) -> RotatingMonomial {
        RotatingMonomial::operator(a, w)
    }

    /// σx of qubit 1 (static in its frame).
    pub fn q1_sigma_x() -> Vec<RotatingMonomial> {
        vec![
            op(ONE, Word::q1(Unit::new(0, 0))),
            op(-ONE, Word::q1(Unit::new(1, 1))),
        ]
    }

    /// σz of qubit 1 = ρ+ + ρ−.
    pub fn q1_sigma_z() -> Vec<RotatingMonomial> {
        vec![
            op(ONE, Word::q1(Unit::new(0, 1))),
            op(ONE, Word::q1(Unit::new(1, 0))),
        ]
    }

    /// σy of qubit 1 = iρ+ − iρ−.
    pub fn q1_sigma_y() -> Vec<RotatingMonomial> {
        vec![
            op(I, Word::q1(Unit::new(0, 1))),
            op(-I, Word::q1(Unit::new(1, 0))),
        ]
    }

    /// σx of qubit 2 = σ+ + σ−.
    pub fn q2_sigma_x() -> Vec<RotatingMonomial> {
        vec![
            op(ONE, Word::q2(Unit::new(0, 1))),
            op(ONE, Word::q2(Unit::new(1, 0))),
        ]
    }

    /// σy of qubit 2 = −iσ+ + iσ−.
    pub fn q2_sigma_y() -> Vec<RotatingMonomial> {
        vec![
            op(-I, Word::q2(Unit::new(0, 1))),
            op(I, Word::q2(Unit::new(1, 0))),
        ]
    }

    /// σz of qubit 2 (static in its frame).
    pub fn q2_sigma_z() -> Vec<RotatingMonomial> {
        vec![
            op(ONE, Word::q2(Unit::new(0, 0))),
            op(-ONE, Word::q2(Unit::new(1, 1))),
        ]
    }

    /// λ(a† e^{iωt} + H.C).
    pub fn boson(m: Mode, lambda: f64) -> Vec<RotatingMonomial> {
        vec![
            op(C64::new(lambda, 0.0), Word::boson(m, Ladder::Create)),
            op(C64::new(lambda, 0.0), Word::boson(m, Ladder::Annihilate)),
        ]
    }

    /// ½n e^{i(ωt+φ)} + H.C.
    pub fn drive(d: DriveId, amplitude: f64, phase: f64) -> Vec<RotatingMonomial> {
        vec![
            RotatingMonomial::drive(d, 1, amplitude, phase),
            RotatingMonomial::drive(d, -1, amplitude, phase),
        ]
    }

    /// A scalar constant.
    pub fn scalar(s: f64) -> Vec<RotatingMonomial> {
        vec![op(C64::new(s, 0.0), Word::identity())]
    }
}
