//! Bott-Samelson bimodules as free graded left modules over `R` with a
//! rewriting right action, dot morphisms, a graded Hom solver, the
//! `B_s B_s` splitting, quotient-category equality, and characters.
//!
//! An object `BS(s_1 ... s_k)(n)` is the tensor product of the elementary
//! bimodules `B_{s_i} = R tensor_{R^{s_i}} R (1)`, shifted by `n`. As a left
//! `R`-module it is free on the basis `c_eps` indexed by 0/1-vectors, where
//! factor `i` contributes `1 tensor 1` (bit clear) or `Delta_{s_i}` (bit
//! set). `Delta_s = alpha_s/2 tensor 1 + 1 tensor alpha_s/2` commutes with
//! the right action, so right multiplication rewrites through a single rule
//! per factor:
//!
//! ```text
//! (1 tensor 1) . f = s(f) (1 tensor 1) + demazure_s(f) Delta_s
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Scalar;
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::laurent::LaurentPoly;
use crate::linalg::Mat;
use crate::polyalg::{act_gen, demazure, monomials, Mono, Poly};
use crate::realization::Realization;

/// A shifted Bott-Samelson object `BS(word)(shift)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BSObject {
    pub word: Vec<u8>,
    pub shift: i64,
}

impl BSObject {
    pub fn unit() -> Self {
        BSObject { word: Vec::new(), shift: 0 }
    }

    pub fn r(shift: i64) -> Self {
        BSObject { word: Vec::new(), shift }
    }

    pub fn b(s: u8) -> Self {
        BSObject { word: vec![s], shift: 0 }
    }

    pub fn new(word: Vec<u8>, shift: i64) -> Self {
        BSObject { word, shift }
    }

    pub fn shifted(&self, by: i64) -> Self {
        BSObject { word: self.word.clone(), shift: self.shift + by }
    }

    pub fn tensor(&self, other: &BSObject) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        BSObject { word, shift: self.shift + other.shift }
    }

    pub fn rank(&self) -> usize {
        1 << self.word.len()
    }

    /// Degree of the basis element `c_mask`: each factor contributes `-1`
    /// (bit clear) or `+1` (bit set), minus the object's shift.
    pub fn basis_degree(&self, mask: u32) -> i64 {
        2 * i64::from(mask.count_ones()) - self.word.len() as i64 - self.shift
    }
}

impl fmt::Display for BSObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "R")?;
        } else {
            write!(f, "BS(")?;
            for &s in &self.word {
                write!(f, "{}", crate::coxeter::generator_name(s))?;
            }
            write!(f, ")")?;
        }
        if self.shift != 0 {
            write!(f, "({})", self.shift)?;
        }
        Ok(())
    }
}

/// An ordered finite direct sum of Bott-Samelson objects. Order is part of
/// the identity: it fixes block indexing in maps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DSum {
    pub summands: Vec<BSObject>,
}

impl DSum {
    pub fn of(obj: BSObject) -> Self {
        DSum { summands: vec![obj] }
    }

    pub fn new(summands: Vec<BSObject>) -> Self {
        DSum { summands }
    }

    pub fn shifted(&self, by: i64) -> Self {
        DSum { summands: self.summands.iter().map(|o| o.shifted(by)).collect() }
    }

    pub fn concat(&self, other: &DSum) -> Self {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        DSum { summands: s }
    }

    /// Flattened basis: (summand index, mask) pairs in block order.
    pub fn basis(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (i, obj) in self.summands.iter().enumerate() {
            for mask in 0..obj.rank() as u32 {
                out.push((i, mask));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(BSObject::rank).sum()
    }

    pub fn basis_degree(&self, idx: (usize, u32)) -> i64 {
        self.summands[idx.0].basis_degree(idx.1)
    }

    pub fn tensor(&self, other: &DSum) -> Self {
        let mut out = Vec::new();
        for a in &self.summands {
            for b in &other.summands {
                out.push(a.tensor(b));
            }
        }
        DSum { summands: out }
    }
}

impl fmt::Display for DSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, o) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " (+) ")?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Pushes a right factor `f` through the word from the last letter to the
/// first, starting from basis element `c_mask`. Returns the left-coefficient
/// expansion of `c_mask . f` as (new mask, coefficient) pairs.
pub fn right_mult_basis(
    real: &Realization,
    word: &[u8],
    mask: u32,
    f: &Poly,
) -> Vec<(u32, Poly)> {
    let mut branches: Vec<(u32, Poly)> = vec![(0, f.clone())];
    for i in (0..word.len()).rev() {
        let s = word[i] as usize;
        let mut next = Vec::new();
        for (m, g) in branches {
            if mask & (1 << i) != 0 {
                // Delta commutes with the right action
                next.push((m | (1 << i), g));
            } else {
                let sg = act_gen(real, s, &g);
                if !sg.is_zero() {
                    next.push((m, sg));
                }
                let dg = demazure(real, s, &g);
                if !dg.is_zero() {
                    next.push((m | (1 << i), dg));
                }
            }
        }
        branches = next;
    }
    // combine duplicate masks
    let mut acc: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, g) in branches {
        let e = acc.entry(m).or_insert_with(|| Poly::zero(real.field, real.dim));
        *e = e.add(&g);
    }
    acc.retain(|_, p| !p.is_zero());
    acc.into_iter().collect()
}

/// An element of a single Bott-Samelson object, as left coefficients on the
/// `c_eps` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodElement {
    pub obj: BSObject,
    pub coords: BTreeMap<u32, Poly>,
}

impl BimodElement {
    pub fn zero(obj: BSObject) -> Self {
        BimodElement { obj, coords: BTreeMap::new() }
    }

    pub fn basis(real: &Realization, obj: BSObject, mask: u32) -> Self {
        let mut e = BimodElement::zero(obj);
        e.insert_add(mask, Poly::one(real.field, real.dim));
        e
    }

    fn insert_add(&mut self, mask: u32, p: Poly) {
        if p.is_zero() {
            return;
        }
        let field = p.field;
        let nvars = p.nvars;
        let e = self.coords.entry(mask).or_insert_with(|| Poly::zero(field, nvars));
        *e = e.add(&p);
        if e.is_zero() {
            self.coords.remove(&mask);
        }
    }

    pub fn coeff(&self, mask: u32) -> Option<&Poly> {
        self.coords.get(&mask)
    }

    pub fn add(&self, other: &BimodElement) -> BimodElement {
        assert_eq!(self.obj, other.obj);
        let mut out = self.clone();
        for (&m, p) in &other.coords {
            out.insert_add(m, p.clone());
        }
        out
    }

    pub fn left_mul(&self, f: &Poly) -> BimodElement {
        let mut out = BimodElement::zero(self.obj.clone());
        for (&m, p) in &self.coords {
            out.insert_add(m, p.mul(f));
        }
        out
    }

    /// Right multiplication, rewritten into left-coefficient form.
    pub fn right_mul(&self, real: &Realization, f: &Poly) -> BimodElement {
        let mut out = BimodElement::zero(self.obj.clone());
        for (&m, p) in &self.coords {
            for (m2, g) in right_mult_basis(real, &self.obj.word, m, f) {
                out.insert_add(m2, p.mul(&g));
            }
        }
        out
    }
}

/// A graded bimodule map `src -> tgt(deg)`, stored as a matrix of left
/// coefficients over the flattened `c_eps` bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodMap {
    pub src: DSum,
    pub tgt: DSum,
    pub deg: i64,
    /// `entries[row][col]`: row indexes the target basis, col the source.
    pub entries: Vec<Vec<Poly>>,
}

impl BimodMap {
    pub fn zero(real: &Realization, src: DSum, tgt: DSum, deg: i64) -> Self {
        let rows = tgt.rank();
        let cols = src.rank();
        BimodMap {
            src,
            tgt,
            deg,
            entries: vec![vec![Poly::zero(real.field, real.dim); cols]; rows],
        }
    }

    pub fn identity(real: &Realization, obj: &DSum) -> Self {
        let mut m = BimodMap::zero(real, obj.clone(), obj.clone(), 0);
        for i in 0..obj.rank() {
            m.entries[i][i] = Poly::one(real.field, real.dim);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(Poly::is_zero))
    }

    fn entries_field(&self) -> crate::field::FieldSpec {
        self.entries
            .first()
            .and_then(|r| r.first())
            .map(|p| p.field)
            .expect("map with empty basis")
    }

    pub fn add(&self, other: &BimodMap) -> BimodMap {
        assert_eq!(
            (&self.src, &self.tgt, self.deg),
            (&other.src, &other.tgt, other.deg),
            "map addition shape mismatch"
        );
        let mut out = self.clone();
        for (r, row) in other.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                out.entries[r][c] = out.entries[r][c].add(p);
            }
        }
        out
    }

    pub fn sub(&self, other: &BimodMap) -> BimodMap {
        self.add(&other.scale(&other.entries_field().from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> BimodMap {
        let mut out = self.clone();
        for row in &mut out.entries {
            for p in row.iter_mut() {
                *p = p.scale(c);
            }
        }
        out
    }

    pub fn scale_poly(&self, f: &Poly) -> BimodMap {
        let mut out = self.clone();
        out.deg += f.internal_degree().unwrap_or(0);
        for row in &mut out.entries {
            for p in row.iter_mut() {
                *p = p.mul(f);
            }
        }
        out
    }

    /// Composition `self o other` (apply `other` first). Degrees add.
    pub fn compose(&self, other: &BimodMap) -> BimodMap {
        assert_eq!(self.src, other.tgt, "map composition shape mismatch");
        let rows = self.tgt.rank();
        let mids = self.src.rank();
        let cols = other.src.rank();
        let field = self.entries_field();
        let nvars = self.entries[0][0].nvars;
        let mut entries = vec![vec![Poly::zero(field, nvars); cols]; rows];
        for r in 0..rows {
            for m in 0..mids {
                if self.entries[r][m].is_zero() {
                    continue;
                }
                for c in 0..cols {
                    if other.entries[m][c].is_zero() {
                        continue;
                    }
                    entries[r][c] =
                        entries[r][c].add(&self.entries[r][m].mul(&other.entries[m][c]));
                }
            }
        }
        BimodMap {
            src: other.src.clone(),
            tgt: self.tgt.clone(),
            deg: self.deg + other.deg,
            entries,
        }
    }

    /// Shifts both source and target objects by `by`; entries unchanged.
    pub fn shifted(&self, by: i64) -> BimodMap {
        BimodMap {
            src: self.src.shifted(by),
            tgt: self.tgt.shifted(by),
            deg: self.deg,
            entries: self.entries.clone(),
        }
    }

    /// Absorbs the map degree into the target shift, producing a degree-0
    /// map onto the shifted target.
    pub fn absorb_deg(&self) -> BimodMap {
        BimodMap {
            src: self.src.clone(),
            tgt: self.tgt.shifted(self.deg),
            deg: 0,
            entries: self.entries.clone(),
        }
    }

    /// Reinterprets the map between uniformly reshifted copies of its source
    /// and target, adjusting the degree. Underlying words must agree.
    pub fn retarget(&self, src: DSum, tgt: DSum) -> BimodMap {
        let words = |d: &DSum| d.summands.iter().map(|o| o.word.clone()).collect::<Vec<_>>();
        assert_eq!(words(&self.src), words(&src), "retarget changes source words");
        assert_eq!(words(&self.tgt), words(&tgt), "retarget changes target words");
        let src_delta = src.summands[0].shift - self.src.summands[0].shift;
        let tgt_delta = tgt.summands[0].shift - self.tgt.summands[0].shift;
        for (a, b) in self.src.summands.iter().zip(&src.summands) {
            assert_eq!(b.shift - a.shift, src_delta, "nonuniform source reshift");
        }
        for (a, b) in self.tgt.summands.iter().zip(&tgt.summands) {
            assert_eq!(b.shift - a.shift, tgt_delta, "nonuniform target reshift");
        }
        // shifting the source up by k raises the degree by k; shifting the
        // target up by k lowers it
        BimodMap {
            src,
            tgt,
            deg: self.deg + src_delta - tgt_delta,
            entries: self.entries.clone(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row][col]
    }

    /// Applies the map to an element of a single-summand source.
    pub fn apply(&self, elem: &BimodElement) -> BimodElement {
        assert_eq!(self.src.summands.len(), 1, "apply expects a single-summand source");
        assert_eq!(self.src.summands[0], elem.obj);
        assert_eq!(self.tgt.summands.len(), 1, "apply expects a single-summand target");
        let src_basis = self.src.basis();
        let tgt_basis = self.tgt.basis();
        let mut out = BimodElement::zero(self.tgt.summands[0].clone());
        for (col, &(_, cmask)) in src_basis.iter().enumerate() {
            let Some(p) = elem.coeff(cmask) else { continue };
            for (row, &(_, rmask)) in tgt_basis.iter().enumerate() {
                out.insert_add(rmask, p.mul(&self.entries[row][col]));
            }
        }
        out
    }

    /// Checks homogeneity and right-linearity; returns the violated
    /// constraint on failure.
    pub fn validate(&self, real: &Realization) -> Result<(), String> {
        let sb = self.src.basis();
        let tb = self.tgt.basis();
        for (r, &ti) in tb.iter().enumerate() {
            for (c, &si) in sb.iter().enumerate() {
                let want = self.src.basis_degree(si) + self.deg - self.tgt.basis_degree(ti);
                let p = &self.entries[r][c];
                if !p.is_homogeneous_of(want) {
                    return Err(format!(
                        "entry ({r},{c}) = {p} not homogeneous of internal degree {want}"
                    ));
                }
            }
        }
        for j in 0..real.dim {
            let xj = Poly::var(real.field, real.dim, j);
            let lhs = self.compose(&right_mult_map(real, &self.src, &xj));
            let rhs = right_mult_map(real, &self.tgt, &xj).compose(self);
            if lhs.entries != rhs.entries {
                return Err(format!("does not commute with right multiplication by x{j}"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BimodMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {} ({})", self.src, self.tgt, self.deg)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [ {} ]", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Left multiplication by a homogeneous polynomial as a map `M -> M(deg f)`.
pub fn left_mult_map(real: &Realization, obj: &DSum, f: &Poly) -> BimodMap {
    let deg =
        if f.is_zero() { 0 } else { f.internal_degree().expect("left_mult_map needs homogeneous f") };
    let mut m = BimodMap::zero(real, obj.clone(), obj.clone(), deg);
    for i in 0..obj.rank() {
        m.entries[i][i] = f.clone();
    }
    m
}

/// Right multiplication by a homogeneous polynomial, rewritten to left
/// coefficients.
pub fn right_mult_map(real: &Realization, obj: &DSum, f: &Poly) -> BimodMap {
    let deg =
        if f.is_zero() { 0 } else { f.internal_degree().expect("right_mult_map needs homogeneous f") };
    let basis = obj.basis();
    let mut m = BimodMap::zero(real, obj.clone(), obj.clone(), deg);
    for (col, &(i, mask)) in basis.iter().enumerate() {
        for (m2, g) in right_mult_basis(real, &obj.summands[i].word, mask, f) {
            let row = basis.iter().position(|&(k, mk)| k == i && mk == m2).unwrap();
            m.entries[row][col] = m.entries[row][col].add(&g);
        }
    }
    m
}

/// The dot morphism `B_s -> R(1)`: multiplication, `c_0 -> 1`, `c_1 -> alpha_s`.
pub fn dot_up(real: &Realization, s: u8) -> BimodMap {
    let mut m = BimodMap::zero(real, DSum::of(BSObject::b(s)), DSum::of(BSObject::unit()), 1);
    m.entries[0][0] = Poly::one(real.field, real.dim);
    m.entries[0][1] = Poly::root(real, s as usize);
    m
}

/// The dot morphism `R(-1) -> B_s`: `1 -> Delta_s`.
pub fn dot_down(real: &Realization, s: u8) -> BimodMap {
    let mut m = BimodMap::zero(real, DSum::of(BSObject::r(-1)), DSum::of(BSObject::b(s)), 0);
    m.entries[1][0] = Poly::one(real.field, real.dim);
    m
}

/// Tensor product of maps: `(f tensor g)(x tensor y) = f(x) tensor g(y)`,
/// with `g`'s left coefficients pushed across the first factor.
pub fn map_tensor(real: &Realization, f: &BimodMap, g: &BimodMap) -> BimodMap {
    let src = f.src.tensor(&g.src);
    let tgt = f.tgt.tensor(&g.tgt);
    let mut out = BimodMap::zero(real, src.clone(), tgt.clone(), f.deg + g.deg);

    let fs = f.src.basis();
    let ft = f.tgt.basis();
    let gs = g.src.basis();
    let gt = g.tgt.basis();

    for (fc, &(fsi, fsmask)) in fs.iter().enumerate() {
        for (gc, &(gsi, gsmask)) in gs.iter().enumerate() {
            let col = tensor_basis_index(&f.src, &g.src, fsi, fsmask, gsi, gsmask);
            for (fr, &(fti, ftmask)) in ft.iter().enumerate() {
                let p = &f.entries[fr][fc];
                if p.is_zero() {
                    continue;
                }
                for (gr, &(gti, gtmask)) in gt.iter().enumerate() {
                    let q = &g.entries[gr][gc];
                    if q.is_zero() {
                        continue;
                    }
                    // push q across the first-factor target basis element
                    let word = &f.tgt.summands[fti].word;
                    for (m2, rcoef) in right_mult_basis(real, word, ftmask, q) {
                        let row = tensor_basis_index(&f.tgt, &g.tgt, fti, m2, gti, gtmask);
                        out.entries[row][col] = out.entries[row][col].add(&p.mul(&rcoef));
                    }
                }
            }
        }
    }
    out
}

fn tensor_basis_index(
    a: &DSum,
    b: &DSum,
    ai: usize,
    amask: u32,
    bi: usize,
    bmask: u32,
) -> usize {
    // summand (ai, bi) sits at position ai * |b| + bi; within it the mask is
    // amask | bmask << len(a_word)
    let pair_index = ai * b.summands.len() + bi;
    let mut offset = 0;
    for ak in 0..=ai {
        for bk in 0..b.summands.len() {
            if ak * b.summands.len() + bk >= pair_index {
                break;
            }
            offset += a.summands[ak].rank() * b.summands[bk].rank();
        }
    }
    offset + (amask | (bmask << a.summands[ai].word.len())) as usize
}

/// Basis of the space of degree-0 bimodule maps `src -> tgt(deg)`, found by
/// solving homogeneity plus commutation with right multiplication by the
/// `V*`-coordinate generators.
pub fn hom_basis(real: &Realization, src: &DSum, tgt: &DSum, deg: i64) -> Vec<BimodMap> {
    let field = real.field;
    let n = real.dim;
    let sb = src.basis();
    let tb = tgt.basis();

    // unknowns: (row, col, monomial) with the entry degree forced by
    // homogeneity
    let mut unknowns: Vec<(usize, usize, Mono)> = Vec::new();
    for (r, &ti) in tb.iter().enumerate() {
        for (c, &si) in sb.iter().enumerate() {
            let d = src.basis_degree(si) + deg - tgt.basis_degree(ti);
            if d < 0 || d % 2 != 0 {
                continue;
            }
            for m in monomials(n, (d / 2) as u32) {
                unknowns.push((r, c, m));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }

    let rho_src: Vec<BimodMap> =
        (0..n).map(|j| right_mult_map(real, src, &Poly::var(field, n, j))).collect();
    let rho_tgt: Vec<BimodMap> =
        (0..n).map(|j| right_mult_map(real, tgt, &Poly::var(field, n, j))).collect();

    // constraint coordinates: (generator j, row, col, monomial) -> eq row
    let mut eq_index: BTreeMap<(usize, usize, usize, Mono), usize> = BTreeMap::new();
    let mut cols: Vec<BTreeMap<usize, Scalar>> = Vec::with_capacity(unknowns.len());

    for &(r, c, ref mono) in &unknowns {
        let mut col_entries: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mono_poly = Poly::from_terms(field, n, vec![(mono.clone(), field.one())]);
        for j in 0..n {
            // (E_u rho_src)[r][a] = mono * rho_src[c][a]
            for a in 0..sb.len() {
                let p = mono_poly.mul(rho_src[j].entry(c, a));
                accumulate_poly(&mut eq_index, &mut col_entries, (j, r, a), &p, field.one());
            }
            // (rho_tgt E_u)[b][c] = rho_tgt[b][r] * mono, subtracted
            for b in 0..tb.len() {
                let p = rho_tgt[j].entry(b, r).mul(&mono_poly);
                accumulate_poly(&mut eq_index, &mut col_entries, (j, b, c), &p, field.from_int(-1));
            }
        }
        cols.push(col_entries);
    }

    let rows = eq_index.len();
    let mut mat = Mat::zero(field, rows, unknowns.len());
    for (u, col_entries) in cols.iter().enumerate() {
        for (&row, v) in col_entries {
            mat.set(row, u, mat.get(row, u).add(v));
        }
    }

    mat.nullspace()
        .into_iter()
        .map(|vec| {
            let mut m = BimodMap::zero(real, src.clone(), tgt.clone(), deg);
            for (u, &(r, c, ref mono)) in unknowns.iter().enumerate() {
                if !vec[u].is_zero() {
                    let p = Poly::from_terms(field, n, vec![(mono.clone(), vec[u].clone())]);
                    m.entries[r][c] = m.entries[r][c].add(&p);
                }
            }
            m
        })
        .collect()
}

fn accumulate_poly(
    eq_index: &mut BTreeMap<(usize, usize, usize, Mono), usize>,
    col: &mut BTreeMap<usize, Scalar>,
    key: (usize, usize, usize),
    p: &Poly,
    sign: Scalar,
) {
    for (m, c) in p.terms() {
        let next = eq_index.len();
        let row = *eq_index.entry((key.0, key.1, key.2, m.clone())).or_insert(next);
        let e = col.entry(row).or_insert_with(|| sign.field().zero());
        *e = e.add(&c.mul(&sign));
    }
}

/// The split idempotent data for `B_s B_s = B_s(-1) (+) B_s(1)`:
/// `(p_minus, i_minus, p_plus, i_plus)` with
/// `p- i- = id`, `p+ i+ = id`, `p- i+ = 0`, `p+ i- = 0`,
/// `i- p- + i+ p+ = id`. Verified at construction.
pub fn split_bsbs(real: &Realization, s: u8) -> (BimodMap, BimodMap, BimodMap, BimodMap) {
    let field = real.field;
    let n = real.dim;
    let bsbs = DSum::of(BSObject::new(vec![s, s], 0));
    let minus = DSum::of(BSObject::new(vec![s], -1));
    let plus = DSum::of(BSObject::new(vec![s], 1));
    let one = Poly::one(field, n);
    let alpha = Poly::root(real, s as usize);

    // basis order in B_s B_s: c00 = 0, c10 = 1, c01 = 2, c11 = 3
    let mut p_minus = BimodMap::zero(real, bsbs.clone(), minus.clone(), 0);
    p_minus.entries[0][1] = one.clone();
    p_minus.entries[0][2] = one.clone();
    p_minus.entries[1][3] = one.clone();

    let mut i_minus = BimodMap::zero(real, minus.clone(), bsbs.clone(), 0);
    i_minus.entries[1][0] = one.clone();
    i_minus.entries[3][1] = one.clone();

    let mut p_plus = BimodMap::zero(real, bsbs.clone(), plus.clone(), 0);
    p_plus.entries[0][0] = one.clone();
    p_plus.entries[0][2] = alpha.neg();
    p_plus.entries[1][2] = one.clone();

    let mut i_plus = BimodMap::zero(real, plus.clone(), bsbs.clone(), 0);
    i_plus.entries[0][0] = one.clone();
    i_plus.entries[0][1] = alpha.clone();
    i_plus.entries[1][1] = one.neg();
    i_plus.entries[2][1] = one.clone();

    debug_assert!(split_identities_hold(real, (&p_minus, &i_minus, &p_plus, &i_plus)));
    (p_minus, i_minus, p_plus, i_plus)
}

/// The five identities characterizing the splitting.
pub fn split_identities_hold(
    real: &Realization,
    maps: (&BimodMap, &BimodMap, &BimodMap, &BimodMap),
) -> bool {
    let (p_minus, i_minus, p_plus, i_plus) = maps;
    let id_minus = BimodMap::identity(real, &i_minus.src);
    let id_plus = BimodMap::identity(real, &i_plus.src);
    let id_big = BimodMap::identity(real, &p_minus.src);
    p_minus.compose(i_minus) == id_minus
        && p_plus.compose(i_plus) == id_plus
        && p_minus.compose(i_plus).is_zero()
        && p_plus.compose(i_minus).is_zero()
        && i_minus.compose(p_minus).add(&i_plus.compose(p_plus)) == id_big
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientSide {
    Left,
    Right,
}

/// Equality in the left (or right) quotient category: `f - g` must lie in
/// the span of `x_j . h` with `h` an arbitrary morphism of degree `deg - 2`,
/// where `x_j` acts by left (resp. right) multiplication on the target.
pub fn quotient_eq(real: &Realization, f: &BimodMap, g: &BimodMap, side: QuotientSide) -> bool {
    assert_eq!((&f.src, &f.tgt, f.deg), (&g.src, &g.tgt, g.deg), "quotient_eq shape mismatch");
    let diff = f.sub(g);
    if diff.is_zero() {
        return true;
    }
    let field = real.field;
    let n = real.dim;
    let h_basis = hom_basis(real, &f.src, &f.tgt, f.deg - 2);
    if h_basis.is_empty() {
        return false;
    }
    let mults: Vec<BimodMap> = (0..n)
        .map(|j| {
            let xj = Poly::var(field, n, j);
            match side {
                QuotientSide::Left => left_mult_map(real, &f.tgt, &xj),
                QuotientSide::Right => right_mult_map(real, &f.tgt, &xj),
            }
        })
        .collect();

    // solve diff = sum_{j,k} c_{jk} mult_j o h_k
    let mut eq_index: BTreeMap<(usize, usize, Mono), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let add_map = |m: &BimodMap,
                   eq_index: &mut BTreeMap<(usize, usize, Mono), usize>|
     -> BTreeMap<usize, Scalar> {
        let mut col = BTreeMap::new();
        for (r, row) in m.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for (mono, v) in p.terms() {
                    let next = eq_index.len();
                    let idx = *eq_index.entry((r, c, mono.clone())).or_insert(next);
                    let e = col.entry(idx).or_insert_with(|| field.zero());
                    *e = e.add(v);
                }
            }
        }
        col
    };
    for mult in &mults {
        for h in &h_basis {
            let comp = mult.compose(h);
            let col = add_map(&comp, &mut eq_index);
            columns.push(col);
        }
    }
    let rhs_entries = add_map(&diff, &mut eq_index);
    let rows = eq_index.len();
    let mut mat = Mat::zero(field, rows, columns.len());
    for (u, col) in columns.iter().enumerate() {
        for (&row, v) in col {
            mat.set(row, u, mat.get(row, u).add(v));
        }
    }
    let mut rhs = vec![field.zero(); rows];
    for (row, v) in rhs_entries {
        rhs[row] = v;
    }
    mat.solve(&rhs).is_some()
}

/// Character of a direct sum: `BS(s_1...s_k)(n)` contributes
/// `v^n b_{s_1} ... b_{s_k}`.
pub fn character(hecke: &HeckeAlgebra, obj: &DSum) -> HeckeElt {
    let mut out = HeckeElt::zero();
    for summand in &obj.summands {
        let mut acc = HeckeElt::unit();
        for &s in &summand.word {
            acc = hecke.mul(&acc, &hecke.kl(&hecke.system().generator(s as usize)));
        }
        out = out.add(&acc.scale(&LaurentPoly::v_pow(summand.shift)));
    }
    out
}

/// Graded rank: the sum of `v^degree` over the free left-module basis.
pub fn graded_rank(obj: &DSum) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for idx in obj.basis() {
        out = out.add(&LaurentPoly::v_pow(obj.basis_degree(idx)));
    }
    out
}
