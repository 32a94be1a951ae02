//! Pauli strings, Pauli rotations and Clifford tableaux.
//!
//! A Pauli string is stored in binary symplectic form: qubit `i` carries the
//! letter `σ(x_i, z_i)` with `σ(1,0) = X`, `σ(0,1) = Z`, `σ(1,1) = Y = iXZ`,
//! plus an overall sign. Conjugation rules for every Clifford gate act on
//! these bits directly; the sign conventions below are checked against dense
//! matrices in the `verify` tests.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Angle, Gate};
use crate::error::{Error, Result};
use crate::f2::BitRow;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitRow,
    z: BitRow,
    neg: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitRow::zeros(n),
            z: BitRow::zeros(n),
            neg: false,
        }
    }

    pub fn from_bits(x: BitRow, z: BitRow, neg: bool) -> Self {
        assert_eq!(x.len(), z.len());
        PauliString { x, z, neg }
    }

    /// Single-letter string `letter` on qubit `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        let mut p = PauliString::identity(n);
        p.set_letter(q, letter)?;
        Ok(p)
    }

    pub fn z_on(n: usize, q: usize) -> Self {
        let mut p = PauliString::identity(n);
        p.z.set(q, true);
        p
    }

    pub fn x_on(n: usize, q: usize) -> Self {
        let mut p = PauliString::identity(n);
        p.x.set(q, true);
        p
    }

    /// Product of `Z` over the given qubits.
    pub fn z_parity(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliString {
            x: BitRow::zeros(n),
            z: BitRow::from_indices(n, qubits),
            neg: false,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x_bits(&self) -> &BitRow {
        &self.x
    }

    pub fn z_bits(&self) -> &BitRow {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn sign(&self) -> i8 {
        if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn set_negative(&mut self, neg: bool) {
        self.neg = neg;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.neg ^= true;
        p
    }

    /// Same letters with a `+` sign.
    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.neg = false;
        p
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn set_letter(&mut self, q: usize, letter: char) -> Result<()> {
        let (x, z) = match letter {
            'I' => (false, false),
            'X' => (true, false),
            'Z' => (false, true),
            'Y' => (true, true),
            _ => return Err(Error::InvalidPauli(letter.to_string())),
        };
        self.x.set(q, x);
        self.z.set(q, z);
        Ok(())
    }

    /// Qubits on which the string acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut mask = self.x.clone();
        for (m, z) in mask.words_mut().iter_mut().zip(self.z.words()) {
            *m |= z;
        }
        mask.ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Only `I` and `Z` letters.
    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Letters moved from qubit `i` to qubit `f(i)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        let n = self.len();
        let mut p = PauliString::identity(n);
        for q in self.support() {
            let t = f(q);
            p.x.set(t, self.x.get(q));
            p.z.set(t, self.z.get(q));
        }
        p.neg = self.neg;
        p
    }

    pub fn widened(&self, n: usize) -> Self {
        assert!(n >= self.len());
        let mut p = PauliString::identity(n);
        for q in self.support() {
            p.x.set(q, self.x.get(q));
            p.z.set(q, self.z.get(q));
        }
        p.neg = self.neg;
        p
    }

    /// `self · other = i^e · L`, returning the unsigned letters `L` and `e`.
    pub(crate) fn product(&self, other: &PauliString) -> (PauliString, u8) {
        let mut e: i64 = 2 * (self.neg as i64 + other.neg as i64);
        let mut x = self.x.clone();
        let mut z = self.z.clone();
        for k in 0..x.words().len() {
            let (x1, z1) = (self.x.words()[k], self.z.words()[k]);
            let (x2, z2) = (other.x.words()[k], other.z.words()[k]);
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            e += (x1 & z1).count_ones() as i64 + (x2 & z2).count_ones() as i64
                + 2 * (z1 & x2).count_ones() as i64
                - (x3 & z3).count_ones() as i64;
            x.words_mut()[k] = x3;
            z.words_mut()[k] = z3;
        }
        (
            PauliString { x, z, neg: false },
            e.rem_euclid(4) as u8,
        )
    }

    /// Product of two commuting strings (the only Hermitian case).
    pub fn mul_commuting(&self, other: &PauliString) -> Option<PauliString> {
        let (mut p, e) = self.product(other);
        match e {
            0 => Some(p),
            2 => {
                p.neg = true;
                Some(p)
            }
            _ => None,
        }
    }

    pub fn to_rotation(&self, angle: Angle) -> PauliRotation {
        PauliRotation::new(self.clone(), angle)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.neg { '-' } else { '+' };
        let letters: String = (0..self.len()).map(|q| self.letter(q)).collect();
        write!(f, "{sign}{letters}")
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// `[+|-]` followed by letters from `IXYZ`, qubit 0 leftmost.
    fn from_str(s: &str) -> Result<Self> {
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::InvalidPauli(s.to_string()));
        }
        let mut p = PauliString::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            p.set_letter(q, c)
                .map_err(|_| Error::InvalidPauli(s.to_string()))?;
        }
        p.neg = neg;
        Ok(p)
    }
}

/// Conjugation `P ← g·P·g†` by Clifford gates.
pub trait CliffordConjugate {
    fn h(&mut self, q: usize);
    fn s(&mut self, q: usize);
    fn sdg(&mut self, q: usize);
    fn x(&mut self, q: usize);
    fn y(&mut self, q: usize);
    fn z(&mut self, q: usize);
    fn sx(&mut self, q: usize);
    fn sxdg(&mut self, q: usize);
    fn cx(&mut self, control: usize, target: usize);
    fn swap(&mut self, a: usize, b: usize);
    /// Rotation `R_axis(turns·π/2)`.
    fn pauli_rotation(&mut self, axis: &PauliString, turns: u8);

    fn rz_turns(&mut self, q: usize, turns: u8) {
        match turns % 4 {
            0 => {}
            1 => self.s(q),
            2 => self.z(q),
            _ => self.sdg(q),
        }
    }

    fn conjugate_gate(&mut self, g: &Gate) -> Result<()> {
        match g {
            Gate::H(q) => self.h(*q),
            Gate::X(q) => self.x(*q),
            Gate::Y(q) => self.y(*q),
            Gate::Z(q) => self.z(*q),
            Gate::S(q) => self.s(*q),
            Gate::Sdg(q) => self.sdg(*q),
            Gate::SqrtX(q) => self.sx(*q),
            Gate::SqrtXdg(q) => self.sxdg(*q),
            Gate::Cnot(c, t) => self.cx(*c, *t),
            Gate::Swap(a, b) => self.swap(*a, *b),
            Gate::Rz(q, a) => match a.quarter_turns() {
                Some(k) => self.rz_turns(*q, k),
                None => return Err(Error::NonClifford(g.to_string())),
            },
            Gate::PauliRot(r) => match r.angle().quarter_turns() {
                Some(k) => self.pauli_rotation(r.axis(), k),
                None => return Err(Error::NonClifford(g.to_string())),
            },
            Gate::T(_) | Gate::Tdg(_) => return Err(Error::NonClifford(g.to_string())),
        }
        Ok(())
    }
}

impl PauliString {
    #[inline]
    fn bits(&self, q: usize) -> (bool, bool) {
        (self.x.get(q), self.z.get(q))
    }

    #[inline]
    fn set_bits(&mut self, q: usize, x: bool, z: bool) {
        self.x.set(q, x);
        self.z.set(q, z);
    }
}

impl CliffordConjugate for PauliString {
    // X ↔ Z, Y → -Y
    fn h(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= x & z;
        self.set_bits(q, z, x);
    }

    // X → Y, Y → -X
    fn s(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= x & z;
        self.set_bits(q, x, z ^ x);
    }

    // X → -Y, Y → X
    fn sdg(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= x & !z;
        self.set_bits(q, x, z ^ x);
    }

    fn x(&mut self, q: usize) {
        self.neg ^= self.z.get(q);
    }

    fn y(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= x ^ z;
    }

    fn z(&mut self, q: usize) {
        self.neg ^= self.x.get(q);
    }

    // R_X(π/2): Z → -Y, Y → Z
    fn sx(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= z & !x;
        self.set_bits(q, x ^ z, z);
    }

    // R_X(-π/2): Z → Y, Y → -Z
    fn sxdg(&mut self, q: usize) {
        let (x, z) = self.bits(q);
        self.neg ^= x & z;
        self.set_bits(q, x ^ z, z);
    }

    fn cx(&mut self, c: usize, t: usize) {
        let (xc, zc) = self.bits(c);
        let (xt, zt) = self.bits(t);
        self.neg ^= xc & zt & !(xt ^ zc);
        self.x.set(t, xt ^ xc);
        self.z.set(c, zc ^ zt);
    }

    fn swap(&mut self, a: usize, b: usize) {
        let (xa, za) = self.bits(a);
        let (xb, zb) = self.bits(b);
        self.set_bits(a, xb, zb);
        self.set_bits(b, xa, za);
    }

    fn pauli_rotation(&mut self, axis: &PauliString, turns: u8) {
        let turns = turns % 4;
        if turns == 0 || self.commutes_with(axis) {
            return;
        }
        if turns == 2 {
            self.neg ^= true;
            return;
        }
        // R P R† = ±i·P·A for anticommuting P
        let (letters, e) = self.product(axis);
        let e = (e + if turns == 1 { 1 } else { 3 }) % 4;
        debug_assert!(e % 2 == 0);
        *self = letters;
        self.neg = e == 2;
    }
}

/// A Pauli rotation `R_P(θ) = cos(θ/2)·I − i·sin(θ/2)·P` with a `+` axis.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliRotation {
    axis: PauliString,
    angle: Angle,
}

impl PauliRotation {
    /// Folds a negative axis sign into the angle.
    pub fn new(axis: PauliString, angle: Angle) -> Self {
        if axis.is_negative() {
            PauliRotation {
                axis: axis.unsigned(),
                angle: -angle,
            }
        } else {
            PauliRotation { axis, angle }
        }
    }

    pub fn axis(&self) -> &PauliString {
        &self.axis
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn set_angle(&mut self, angle: Angle) {
        self.angle = angle;
    }

    pub fn commutes_with(&self, other: &PauliRotation) -> bool {
        self.axis.commutes_with(&other.axis)
    }
}

/// Which way to conjugate through a tableau `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `T·P·T†`
    Forward,
    /// `T†·P·T`
    Inverse,
}

/// A Clifford operator `T` given by the images `T·X_i·T†` and `T·Z_i·T†`.
///
/// The images of `T⁻¹` are maintained alongside so both conjugation
/// directions and inversion are cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    /// `fwd[i] = T X_i T†`, `fwd[n + i] = T Z_i T†`
    fwd: Vec<PauliString>,
    inv: Vec<PauliString>,
}

fn identity_rows(n: usize) -> Vec<PauliString> {
    (0..n)
        .map(|i| PauliString::x_on(n, i))
        .chain((0..n).map(|i| PauliString::z_on(n, i)))
        .collect()
}

/// `T·P·T†` for the operator whose generator images are `rows`.
fn conjugate_through(rows: &[PauliString], p: &PauliString) -> PauliString {
    let n = p.len();
    let mut acc = PauliString::identity(n);
    let mut e: u32 = 2 * p.neg as u32;
    for q in p.support() {
        let (x, z) = p.bits(q);
        if x && z {
            e += 1;
        }
        if x {
            let (next, de) = acc.product(&rows[q]);
            acc = next;
            e += de as u32;
        }
        if z {
            let (next, de) = acc.product(&rows[n + q]);
            acc = next;
            e += de as u32;
        }
    }
    debug_assert!(e.is_multiple_of(2), "conjugate of a Hermitian Pauli must be Hermitian");
    acc.neg = e % 4 == 2;
    acc
}

/// `rows ← images of T·g` given the images of `T`.
fn right_compose(rows: &mut [PauliString], n: usize, g: &Gate) -> Result<()> {
    let mut updates = Vec::new();
    for q in g.qubits() {
        for (slot, mut gen) in [(q, PauliString::x_on(n, q)), (n + q, PauliString::z_on(n, q))] {
            gen.conjugate_gate(g)?;
            updates.push((slot, conjugate_through(rows, &gen)));
        }
    }
    for (slot, p) in updates {
        rows[slot] = p;
    }
    Ok(())
}

fn left_compose(rows: &mut [PauliString], g: &Gate) -> Result<()> {
    for r in rows.iter_mut() {
        r.conjugate_gate(g)?;
    }
    Ok(())
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            n,
            fwd: identity_rows(n),
            inv: identity_rows(n),
        }
    }

    /// Tableau of a Clifford circuit given as a gate word (first gate applied first).
    pub fn from_gates<'a>(n: usize, gates: impl IntoIterator<Item = &'a Gate>) -> Result<Self> {
        let mut t = CliffordTableau::identity(n);
        for g in gates {
            t.apply_left(g)?;
        }
        Ok(t)
    }

    /// Builds a tableau from the images of `X_i` and `Z_i`, checking the
    /// symplectic conditions.
    pub fn from_images(x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n || x_images.iter().chain(&z_images).any(|p| p.len() != n) {
            return Err(Error::InvalidTableau);
        }
        let fwd: Vec<PauliString> = x_images.into_iter().chain(z_images).collect();
        if !symplectic(&fwd, n) {
            return Err(Error::InvalidTableau);
        }
        let inv = invert_rows(&fwd, n);
        Ok(CliffordTableau { n, fwd, inv })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image_x(&self, i: usize) -> &PauliString {
        &self.fwd[i]
    }

    pub fn image_z(&self, i: usize) -> &PauliString {
        &self.fwd[self.n + i]
    }

    pub fn is_identity(&self) -> bool {
        self.fwd == identity_rows(self.n)
    }

    pub fn conjugate(&self, p: &PauliString, direction: Direction) -> PauliString {
        assert_eq!(p.len(), self.n);
        match direction {
            Direction::Forward => conjugate_through(&self.fwd, p),
            Direction::Inverse => conjugate_through(&self.inv, p),
        }
    }

    /// `T ← g·T`
    pub fn apply_left(&mut self, g: &Gate) -> Result<()> {
        if !g.is_clifford() {
            return Err(Error::NonClifford(g.to_string()));
        }
        left_compose(&mut self.fwd, g)?;
        right_compose(&mut self.inv, self.n, &g.inverse())
    }

    /// `T ← T·g`
    pub fn apply_right(&mut self, g: &Gate) -> Result<()> {
        if !g.is_clifford() {
            return Err(Error::NonClifford(g.to_string()));
        }
        right_compose(&mut self.fwd, self.n, g)?;
        left_compose(&mut self.inv, &g.inverse())
    }

    /// `T ← C·T`
    pub fn compose_left(&mut self, c: &CliffordTableau) {
        assert_eq!(c.n, self.n);
        let fwd = self.fwd.iter().map(|r| conjugate_through(&c.fwd, r)).collect();
        let inv = c.inv.iter().map(|r| conjugate_through(&self.inv, r)).collect();
        self.fwd = fwd;
        self.inv = inv;
    }

    pub fn inverse(&self) -> CliffordTableau {
        CliffordTableau {
            n: self.n,
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    /// Anticommutation pattern of the images and consistency of the stored inverse.
    pub fn is_valid(&self) -> bool {
        symplectic(&self.fwd, self.n)
            && (0..2 * self.n).all(|k| {
                conjugate_through(&self.fwd, &self.inv[k]) == identity_rows(self.n)[k]
            })
    }

    /// Sign-insensitive symplectic inverse recomputed from the forward images.
    pub fn recomputed_inverse(&self) -> CliffordTableau {
        CliffordTableau {
            n: self.n,
            fwd: invert_rows(&self.fwd, self.n),
            inv: self.fwd.clone(),
        }
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("CliffordTableau");
        for i in 0..self.n {
            d.field(&format!("X{i}"), &self.fwd[i]);
            d.field(&format!("Z{i}"), &self.fwd[self.n + i]);
        }
        d.finish()
    }
}

fn symplectic(rows: &[PauliString], n: usize) -> bool {
    for a in 0..2 * n {
        if rows[a].is_identity() {
            return false;
        }
        for b in a + 1..2 * n {
            let anti = b == a + n;
            if rows[a].commutes_with(&rows[b]) == anti {
                return false;
            }
        }
    }
    true
}

/// Images of `T⁻¹` from those of `T`: unsigned parts by the symplectic
/// transpose, then signs fixed by mapping each candidate back through `T`.
fn invert_rows(fwd: &[PauliString], n: usize) -> Vec<PauliString> {
    let mut inv = Vec::with_capacity(2 * n);
    for is_z in [false, true] {
        for j in 0..n {
            let mut x = BitRow::zeros(n);
            let mut z = BitRow::zeros(n);
            for i in 0..n {
                let (img_x, img_z) = (&fwd[i], &fwd[n + i]);
                // ⟨Q, Z_i⟩ and ⟨Q, X_i⟩ equal the pairing of the generator with the images
                let (a, b) = if is_z {
                    (img_z.x.get(j), img_x.x.get(j))
                } else {
                    (img_z.z.get(j), img_x.z.get(j))
                };
                x.set(i, a);
                z.set(i, b);
            }
            let mut q = PauliString::from_bits(x, z, false);
            let back = conjugate_through(fwd, &q);
            debug_assert!(back.unsigned() == identity_rows(n)[if is_z { n + j } else { j }]);
            q.neg = back.neg;
            inv.push(q);
        }
    }
    inv
}

/// `T·P·T†` or `T†·P·T`.
pub fn conjugate_pauli(t: &CliffordTableau, p: &PauliString, direction: Direction) -> PauliString {
    t.conjugate(p, direction)
}

pub fn tableau_invert(t: &CliffordTableau) -> CliffordTableau {
    t.inverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub fn tableau_update(t: &CliffordTableau, g: &Gate, side: Side) -> Result<CliffordTableau> {
    let mut out = t.clone();
    match side {
        Side::Left => out.apply_left(g)?,
        Side::Right => out.apply_right(g)?,
    }
    Ok(out)
}

/// Local basis change making `p` diagonal: `H` on `X` letters, `√X` on `Y`
/// letters. Returns the gates and `c·p·c†`.
pub fn diagonalize_local(p: &PauliString) -> (Vec<Gate>, PauliString) {
    let mut gates = Vec::new();
    let mut out = p.clone();
    for q in p.support() {
        let g = match p.letter(q) {
            'X' => Gate::H(q),
            'Y' => Gate::SqrtX(q),
            _ => continue,
        };
        out.conjugate_gate(&g).expect("local Clifford");
        gates.push(g);
    }
    (gates, out)
}
