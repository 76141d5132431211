//! The graded polynomial ring `R = Sym(V*)` (generators in degree 2), the
//! exterior algebra on the `V*`-coordinates, the W-action, Demazure
//! operators, and the Koszul complex `Lambda tensor R` with differential
//! `kappa`.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Mat;
use crate::realization::Realization;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), &self.0).cmp(&(other.total(), &other.0))
    }
}

/// All exponent vectors in `nvars` variables of total degree `deg`.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Mono> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if nvars == 1 {
            prefix.push(deg);
            out.push(Mono(prefix.clone()));
            prefix.pop();
            return;
        }
        for d in 0..=deg {
            prefix.push(d);
            rec(nvars - 1, deg - d, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![Mono(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A polynomial in the fixed `V*`-coordinates, graded with `deg(x_i) = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldSpec,
    pub nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Poly::constant(field, nvars, field.one())
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(field, nvars);
        p.insert_add(Mono::one(nvars), c);
        p
    }

    pub fn int(field: FieldSpec, nvars: usize, c: i64) -> Self {
        Poly::constant(field, nvars, field.from_int(c))
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(field, nvars);
        p.insert_add(Mono::var(nvars, i), field.one());
        p
    }

    /// The linear form with the given coordinates.
    pub fn linear(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            p.insert_add(Mono::var(n, i), c.clone());
        }
        p
    }

    /// The simple root `alpha_s` as a linear polynomial.
    pub fn root(real: &Realization, s: usize) -> Self {
        Poly::linear(real.field, real.root(s))
    }

    pub fn from_terms(field: FieldSpec, nvars: usize, terms: Vec<(Mono, Scalar)>) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            p.insert_add(m, c);
        }
        p
    }

    fn insert_add(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(|| self.field.zero());
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Mono::one(self.nvars))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, k) in &self.terms {
            out.insert_add(m.clone(), k.mul(c));
        }
        out
    }

    /// Internal degree (2 x total degree) when homogeneous; `None` for zero
    /// or inhomogeneous polynomials.
    pub fn internal_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = i64::from(m.total()) * 2;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous_of(&self, internal: i64) -> bool {
        self.is_zero() || self.internal_degree() == Some(internal)
    }

    /// Substitutes each variable by a linear form (columns of `n`).
    pub fn substitute_linear(&self, n: &Mat) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let coeffs: Vec<Scalar> = (0..self.nvars).map(|j| n.get(j, i).clone()).collect();
                Poly::linear(self.field, &coeffs)
            })
            .collect();
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(self.field, self.nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Exact division, `None` when the divisor does not divide exactly.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let (lt_m, lt_c) = g.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.field, self.nvars);
        while !rem.is_zero() {
            let (m, c) =
                rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            if !lt_m.divides(&m) {
                return None;
            }
            let qm = m.div(&lt_m);
            let qc = c.div(&lt_c);
            let mut t = Poly::zero(self.field, self.nvars);
            t.insert_add(qm, qc);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(g));
        }
        Some(quot)
    }

    /// Evaluates at a point of `V` (coordinates in the fixed basis).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x{j}") } else { format!("x{j}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", c, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Tries to rewrite a linear polynomial as a combination of the simple
/// roots, for readable rendering like `alpha_s` or `alpha_s + alpha_t`.
pub fn render_linear_in_roots(real: &Realization, p: &Poly) -> Option<String> {
    if p.is_zero() || p.internal_degree() != Some(2) {
        return None;
    }
    let n = real.dim;
    if real.rank() != n {
        return None;
    }
    // Solve  sum_s c_s alpha_s = p  for scalars c_s.
    let a = Mat::from_rows(
        real.field,
        (0..n).map(|i| (0..real.rank()).map(|s| real.root(s)[i].clone()).collect()).collect(),
    );
    let rhs: Vec<Scalar> = (0..n).map(|i| p.coeff(&Mono::var(n, i))).collect();
    let sol = a.solve(&rhs)?;
    let mut parts = Vec::new();
    for (s, c) in sol.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = format!("alpha_{}", crate::coxeter::generator_name(s as u8));
        if c.is_one() {
            parts.push(name);
        } else if c.neg().is_one() {
            parts.push(format!("-{name}"));
        } else {
            parts.push(format!("{c}*{name}"));
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join(" + "))
    }
}

/// Action of a group element on a polynomial.
pub fn act_w(real: &Realization, w: &crate::coxeter::CoxElement, f: &Poly) -> Poly {
    f.substitute_linear(&real.element_action_vdual(w))
}

/// Action of a single generator.
pub fn act_gen(real: &Realization, s: usize, f: &Poly) -> Poly {
    f.substitute_linear(real.action_vdual(s))
}

/// The Demazure operator `(f - s(f)) / alpha_s`. Exact divisibility is a
/// theorem here; failure means the inputs are inconsistent and aborts.
pub fn demazure(real: &Realization, s: usize, f: &Poly) -> Poly {
    let num = f.sub(&act_gen(real, s, f));
    num.div_exact(&Poly::root(real, s)).expect("f - s(f) must be divisible by alpha_s")
}

/// An element of the exterior algebra on the `V*`-coordinates, with scalar
/// coefficients. Subsets of the coordinate basis are stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElt {
    pub field: FieldSpec,
    pub nvars: usize,
    terms: BTreeMap<u32, Scalar>,
}

/// Sign of merging `a` and `b` as sorted index tuples: `(-1)^inversions`,
/// `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut sign = 1i64;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        let above = (a >> (i + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        bb &= bb - 1;
    }
    Some(sign)
}

impl ExtElt {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        ExtElt { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        ExtElt::basis(field, nvars, 0)
    }

    pub fn basis(field: FieldSpec, nvars: usize, mask: u32) -> Self {
        let mut e = ExtElt::zero(field, nvars);
        e.insert_add(mask, field.one());
        e
    }

    /// Degree-one element with the given covector coordinates.
    pub fn linear(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let mut e = ExtElt::zero(field, coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            e.insert_add(1 << i, c.clone());
        }
        e
    }

    fn insert_add(&mut self, mask: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(|| self.field.zero());
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ExtElt) -> ExtElt {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert_add(m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> ExtElt {
        let mut out = ExtElt::zero(self.field, self.nvars);
        for (&m, c) in &self.terms {
            out.insert_add(m, c.neg());
        }
        out
    }

    pub fn wedge(&self, other: &ExtElt) -> ExtElt {
        let mut out = ExtElt::zero(self.field, self.nvars);
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &other.terms {
                if let Some(sign) = wedge_sign(m1, m2) {
                    out.insert_add(m1 | m2, c1.mul(c2).mul(&self.field.from_int(sign)));
                }
            }
        }
        out
    }

    /// Contraction `x` cap `lambda` along the natural pairing: on a basis
    /// wedge `r_1 ^ ... ^ r_k` it is `sum_i (-1)^(i+1) (... r_i hat ...) r_i(x)`.
    pub fn cap(&self, x: &[Scalar]) -> ExtElt {
        let mut out = ExtElt::zero(self.field, self.nvars);
        for (&mask, c) in &self.terms {
            for (pos, i) in mask_indices(mask).into_iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let coeff = c.mul(&x[i as usize]).mul(&self.field.from_int(sign));
                out.insert_add(mask & !(1 << i), coeff);
            }
        }
        out
    }
}

pub fn mask_indices(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// An element of the Koszul complex `A = Lambda tensor R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElt {
    pub field: FieldSpec,
    pub nvars: usize,
    terms: BTreeMap<u32, Poly>,
}

impl KoszulElt {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        KoszulElt { field, nvars, terms: BTreeMap::new() }
    }

    pub fn term(field: FieldSpec, nvars: usize, mask: u32, p: Poly) -> Self {
        let mut e = KoszulElt::zero(field, nvars);
        e.insert_add(mask, p);
        e
    }

    fn insert_add(&mut self, mask: u32, p: Poly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(|| Poly::zero(self.field, self.nvars));
        *e = e.add(&p);
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, mask: u32) -> Poly {
        self.terms.get(&mask).cloned().unwrap_or_else(|| Poly::zero(self.field, self.nvars))
    }

    pub fn add(&self, other: &KoszulElt) -> KoszulElt {
        let mut out = self.clone();
        for (&m, p) in &other.terms {
            out.insert_add(m, p.clone());
        }
        out
    }

    /// The Koszul differential: removes one exterior generator at a time and
    /// multiplies it into the polynomial factor, with alternating signs.
    pub fn kappa(&self) -> KoszulElt {
        let mut out = KoszulElt::zero(self.field, self.nvars);
        for (&mask, p) in &self.terms {
            for (pos, i) in mask_indices(mask).into_iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let xi = Poly::var(self.field, self.nvars, i as usize);
                out.insert_add(mask & !(1 << i), p.mul(&xi).scale(&self.field.from_int(sign)));
            }
        }
        out
    }
}

/// Report from the Koszul exactness check.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    /// `(internal degree, exterior degree, defect)` triples; empty means
    /// exact in the checked range.
    pub defects: Vec<(i64, usize, usize)>,
    pub exact: bool,
}

/// Verifies by exact rank computation that `Lambda tensor R -> k` has no
/// homology in internal degrees `<= max_internal` away from the augmentation.
pub fn koszul_exactness_check(real: &Realization, max_internal: i64) -> ExactnessReport {
    let field = real.field;
    let n = real.dim;
    let mut defects = Vec::new();
    let mut internal = 2i64;
    while internal <= max_internal {
        let d = (internal / 2) as u32;
        // bases of Lambda^k tensor R_(internal - 2k)
        let basis: Vec<Vec<(u32, Mono)>> = (0..=n)
            .map(|k| {
                let mut b = Vec::new();
                if d >= k as u32 {
                    for mask in 0u32..(1 << n) {
                        if mask.count_ones() == k as u32 {
                            for m in monomials(n, d - k as u32) {
                                b.push((mask, m));
                            }
                        }
                    }
                }
                b
            })
            .collect();
        let kappa_rank = |k: usize| -> usize {
            let src = &basis[k];
            let tgt = &basis[k - 1];
            if src.is_empty() || tgt.is_empty() {
                return 0;
            }
            let mut m = Mat::zero(field, tgt.len(), src.len());
            for (j, (mask, mono)) in src.iter().enumerate() {
                let p = Poly::from_terms(field, n, vec![(mono.clone(), field.one())]);
                let img = KoszulElt::term(field, n, *mask, p).kappa();
                for (i, (tmask, tmono)) in tgt.iter().enumerate() {
                    let c = img.component(*tmask).coeff(tmono);
                    if !c.is_zero() {
                        m.set(i, j, c);
                    }
                }
            }
            m.rank()
        };
        let mut ranks = vec![0usize; n + 2];
        for (k, r) in ranks.iter_mut().enumerate().take(n + 1).skip(1) {
            *r = kappa_rank(k);
        }
        // exactness at Lambda^0 in positive degree: kappa_1 surjective
        if basis[0].len() != ranks[1] {
            defects.push((internal, 0, basis[0].len() - ranks[1]));
        }
        for k in 1..=n {
            let kernel = basis[k].len() - ranks[k];
            let image = ranks[k + 1];
            if kernel != image {
                defects.push((internal, k, kernel.abs_diff(image)));
            }
        }
        internal += 2;
    }
    let exact = defects.is_empty();
    ExactnessReport { defects, exact }
}
