//! The Hecke algebra of a Coxeter system: standard-basis arithmetic, the bar
//! involution, the Kazhdan-Lusztig basis, the involution `iota`, the t-basis,
//! and specialization at `v = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::coxeter::{CoxElement, CoxeterSystem};
use crate::laurent::LaurentPoly;

/// An element of `H(W)` in the standard basis `{delta_w}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElt {
    terms: BTreeMap<CoxElement, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        HeckeElt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn delta(w: CoxElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElt { terms }
    }

    pub fn unit() -> Self {
        HeckeElt::delta(CoxElement::identity())
    }

    pub fn from_terms(terms: Vec<(CoxElement, LaurentPoly)>) -> Self {
        let mut out = HeckeElt::zero();
        for (w, c) in terms {
            out.insert_add(w, c);
        }
        out
    }

    fn insert_add(&mut self, w: CoxElement, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &CoxElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoxElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &CoxElement> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = HeckeElt::zero();
        for (w, k) in &self.terms {
            out.insert_add(w.clone(), k.mul(c));
        }
        out
    }
}

/// An element of the group algebra `Z[W]` (the `v = 1` specialization).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgElt {
    terms: BTreeMap<CoxElement, i64>,
}

impl GroupAlgElt {
    pub fn zero() -> Self {
        GroupAlgElt::default()
    }

    pub fn basis(w: CoxElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        GroupAlgElt { terms }
    }

    pub fn from_terms(terms: Vec<(CoxElement, i64)>) -> Self {
        let mut out = GroupAlgElt::zero();
        for (w, c) in terms {
            out.insert_add(w, c);
        }
        out
    }

    fn insert_add(&mut self, w: CoxElement, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &CoxElement) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoxElement, &i64)> {
        self.terms.iter()
    }
}

/// The Hecke algebra of a fixed Coxeter system, with a memoized KL table.
pub struct HeckeAlgebra {
    sys: Arc<CoxeterSystem>,
    kl_cache: RwLock<BTreeMap<CoxElement, HeckeElt>>,
}

impl HeckeAlgebra {
    pub fn new(sys: Arc<CoxeterSystem>) -> Self {
        HeckeAlgebra { sys, kl_cache: RwLock::new(BTreeMap::new()) }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    /// Right multiplication by `delta_s`:
    /// `delta_w delta_s = delta_ws` if the length goes up, and
    /// `delta_ws + (v^-1 - v) delta_w` otherwise.
    pub fn mul_gen_right(&self, a: &HeckeElt, s: usize) -> HeckeElt {
        let quad = LaurentPoly::from_terms(&[(-1, 1), (1, -1)]);
        let gen = self.sys.generator(s);
        let mut out = HeckeElt::zero();
        for (w, c) in &a.terms {
            let ws = self.sys.mul(w, &gen);
            if ws.len() > w.len() {
                out.insert_add(ws, c.clone());
            } else {
                out.insert_add(ws, c.clone());
                out.insert_add(w.clone(), c.mul(&quad));
            }
        }
        out
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, d) in &b.terms {
            let mut acc = a.scale(d);
            for &s in x.word() {
                acc = self.mul_gen_right(&acc, s as usize);
            }
            out = out.add(&acc);
        }
        out
    }

    /// The bar involution: coefficients barred, `delta_w` to `(delta_{w^-1})^-1`.
    /// Uses `delta_s^-1 = delta_s + (v - v^-1)` factorwise.
    pub fn bar(&self, a: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in &a.terms {
            // bar(delta_w) = bar(delta_{s1}) ... bar(delta_{sk})
            //              = delta_{s1}^-1 ... delta_{sk}^-1
            let mut acc = HeckeElt::unit();
            for &s in w.word() {
                let inv = HeckeElt::from_terms(vec![
                    (self.sys.generator(s as usize), LaurentPoly::one()),
                    (CoxElement::identity(), LaurentPoly::from_terms(&[(1, 1), (-1, -1)])),
                ]);
                acc = self.mul(&acc, &inv);
            }
            out = out.add(&acc.scale(&c.bar()));
        }
        out
    }

    /// The involution `iota` (`v -> -v^-1`, `delta_s -> delta_s`): coefficients
    /// transformed, standard-basis support unchanged.
    pub fn iota(&self, a: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in &a.terms {
            out.insert_add(w.clone(), c.iota());
        }
        out
    }

    /// The Kazhdan-Lusztig basis element `b_w`: the unique bar-invariant
    /// element in `delta_w + sum_{x<w} v Z[v] delta_x`. Computed by the
    /// standard recursion: multiply `b_{w'} b_s` for `w = w' s` with
    /// `len(w') < len(w)` and strip bar-invariant corrections from below.
    pub fn kl(&self, w: &CoxElement) -> HeckeElt {
        if let Some(hit) = self.kl_cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let result = if w.is_identity() {
            HeckeElt::unit()
        } else {
            let s = *w.word().last().unwrap() as usize;
            let w1 = self.sys.normal_form(&w.word()[..w.len() - 1]);
            let bs = HeckeElt::from_terms(vec![
                (self.sys.generator(s), LaurentPoly::one()),
                (CoxElement::identity(), LaurentPoly::v_pow(1)),
            ]);
            let mut c = self.mul(&self.kl(&w1), &bs);
            // Correct from the longest offending term downwards.
            loop {
                let offender = c
                    .terms
                    .iter()
                    .filter(|(x, p)| *x != w && !p.in_v_times_poly())
                    .max_by_key(|(x, _)| x.len())
                    .map(|(x, p)| (x.clone(), p.clone()));
                let Some((x, p)) = offender else { break };
                // The bar-invariant core of p: a_0 + sum_{n<0} a_n (v^n + v^-n).
                let mut core = LaurentPoly::constant(p.coeff(0));
                for (n, a) in p.terms() {
                    if n < 0 {
                        core = core.add(&LaurentPoly::from_terms(&[(n, a), (-n, a)]));
                    }
                }
                c = c.sub(&self.kl(&x).scale(&core));
            }
            debug_assert_eq!(self.bar(&c), c, "KL element must be bar-invariant");
            debug_assert!(c.coeff(w) == LaurentPoly::one());
            c
        };
        self.kl_cache.write().unwrap().insert(w.clone(), result.clone());
        result
    }

    /// The t-basis `t_w = iota(b_w)`.
    pub fn t_elt(&self, w: &CoxElement) -> HeckeElt {
        self.iota(&self.kl(w))
    }

    /// The ring map to `Z[W]`: `delta_w -> e_w`, `v -> 1`.
    pub fn specialize_v1(&self, a: &HeckeElt) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (w, c) in &a.terms {
            out.insert_add(w.clone(), c.eval_at_one());
        }
        out
    }

    pub fn group_mul(&self, a: &GroupAlgElt, b: &GroupAlgElt) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (x, &c) in &a.terms {
            for (y, &d) in &b.terms {
                out.insert_add(self.sys.mul(x, y), c * d);
            }
        }
        out
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // longest elements first, matching the usual KL-table layout
        let mut items: Vec<_> = self.terms.iter().collect();
        items.reverse();
        for (i, (w, c)) in items.iter().enumerate() {
            let cs = c.to_string();
            // single monomials join with a signed separator; sums get parens
            let (sep, body) = if cs.contains(' ') {
                (" + ", format!("({cs})"))
            } else if let Some(stripped) = cs.strip_prefix('-') {
                (" - ", stripped.to_string())
            } else {
                (" + ", cs)
            };
            if i > 0 {
                write!(f, "{sep}")?;
            } else if sep == " - " {
                write!(f, "-")?;
            }
            if body == "1" {
                write!(f, "d[{w}]")?;
            } else {
                write!(f, "{body} d[{w}]")?;
            }
        }
        Ok(())
    }
}
