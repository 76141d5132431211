//! Realizations of a Coxeter system over an exact field: simple roots in
//! `V*`, simple coroots in `V`, the reflection action, validation, duality,
//! and the text file format.
//!
//! Coordinates are fixed once per realization: `V` carries a distinguished
//! basis (for Cartan realizations, the coroots), and `V*` its dual basis.
//! Polynomial rings downstream use these coordinates.

use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxElement, CoxeterError, CoxeterMatrix, INFINITE_ORDER};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::Mat;

#[derive(Debug, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("realization invariant violated: {0}")]
    Invalid(String),
    #[error("cannot parse realization file: {0}")]
    Parse(String),
}

/// A realization `(V, {coroots}, {roots})` of a Coxeter system.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub field: FieldSpec,
    pub cox: CoxeterMatrix,
    pub dim: usize,
    /// Coordinates of the simple coroots in the fixed basis of `V`.
    coroots: Vec<Vec<Scalar>>,
    /// Coordinates of the simple roots in the dual basis of `V*`.
    roots: Vec<Vec<Scalar>>,
    /// Generator action on `V`: `v -> v - alpha_s(v) alpha_s^vee`.
    act_v: Vec<Mat>,
    /// Generator action on `V*` (transpose of the `V` action).
    act_vdual: Vec<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    NotChecked(String),
}

/// Per-invariant validation outcome.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<(String, CheckStatus)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, s)| !matches!(s, CheckStatus::Fail(_)))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, status) in &self.checks {
            match status {
                CheckStatus::Pass => writeln!(f, "  [pass] {name}")?,
                CheckStatus::Fail(msg) => writeln!(f, "  [FAIL] {name}: {msg}")?,
                CheckStatus::NotChecked(msg) => writeln!(f, "  [----] {name}: {msg}")?,
            }
        }
        Ok(())
    }
}

impl Realization {
    /// Builds a realization from explicit root/coroot coordinate vectors.
    pub fn from_vectors(
        field: FieldSpec,
        cox: CoxeterMatrix,
        dim: usize,
        coroots: Vec<Vec<Scalar>>,
        roots: Vec<Vec<Scalar>>,
    ) -> Result<Self, RealizationError> {
        if let FieldSpec::Prime(2) = field {
            return Err(FieldError::CharacteristicTwo.into());
        }
        let rank = cox.rank();
        if coroots.len() != rank || roots.len() != rank {
            return Err(RealizationError::Invalid("need one root and coroot per generator".into()));
        }
        for v in coroots.iter().chain(roots.iter()) {
            if v.len() != dim {
                return Err(RealizationError::Invalid("vector dimension mismatch".into()));
            }
        }
        let act_v: Vec<Mat> = (0..rank)
            .map(|s| {
                // I - coroot_s (root_s)^T
                let mut m = Mat::identity(field, dim);
                for i in 0..dim {
                    for j in 0..dim {
                        let v = m.get(i, j).sub(&coroots[s][i].mul(&roots[s][j]));
                        m.set(i, j, v);
                    }
                }
                m
            })
            .collect();
        let act_vdual = act_v.iter().map(Mat::transpose).collect();
        let real = Realization { field, cox, dim, coroots, roots, act_v, act_vdual };
        let report = real.validate();
        if !report.passed() {
            let msg = report
                .checks
                .iter()
                .filter_map(|(n, s)| match s {
                    CheckStatus::Fail(m) => Some(format!("{n}: {m}")),
                    _ => None,
                })
                .collect::<Vec<_>>()
                .join("; ");
            return Err(RealizationError::Invalid(msg));
        }
        Ok(real)
    }

    /// Cartan realization in the coroot-basis ("simply connected") variant:
    /// `V` has the coroots as its basis and `alpha_t(alpha_s^vee) = a_st`.
    pub fn from_cartan(
        cox: CoxeterMatrix,
        cartan: &[Vec<i64>],
        field: FieldSpec,
    ) -> Result<Self, RealizationError> {
        let rank = cox.rank();
        if cartan.len() != rank || cartan.iter().any(|r| r.len() != rank) {
            return Err(RealizationError::Invalid("Cartan matrix has wrong shape".into()));
        }
        let coroots = (0..rank)
            .map(|s| (0..rank).map(|i| field.from_int(i64::from(i == s))).collect())
            .collect();
        // root t has coordinates (a_st)_s in the dual basis
        let roots = (0..rank)
            .map(|t| (0..rank).map(|s| field.from_int(cartan[s][t])).collect())
            .collect();
        Realization::from_vectors(field, cox, rank, coroots, roots)
    }

    pub fn rank(&self) -> usize {
        self.cox.rank()
    }

    pub fn coroot(&self, s: usize) -> &[Scalar] {
        &self.coroots[s]
    }

    pub fn root(&self, s: usize) -> &[Scalar] {
        &self.roots[s]
    }

    /// `alpha_s(x)` for a vector `x` in `V`-coordinates.
    pub fn pair_root(&self, s: usize, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.dim {
            acc = acc.add(&self.roots[s][i].mul(&x[i]));
        }
        acc
    }

    /// `f(alpha_s^vee)` for a covector `f` in `V*`-coordinates.
    pub fn pair_coroot(&self, s: usize, f: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.dim {
            acc = acc.add(&f[i].mul(&self.coroots[s][i]));
        }
        acc
    }

    pub fn action_v(&self, s: usize) -> &Mat {
        &self.act_v[s]
    }

    pub fn action_vdual(&self, s: usize) -> &Mat {
        &self.act_vdual[s]
    }

    /// Action of a group element on `V` (product over a reduced word).
    pub fn element_action_v(&self, w: &CoxElement) -> Mat {
        let mut m = Mat::identity(self.field, self.dim);
        for &s in w.word() {
            m = m.mul(&self.act_v[s as usize]);
        }
        m
    }

    /// Action of a group element on `V*`: `f -> f o M(w^-1)`.
    pub fn element_action_vdual(&self, w: &CoxElement) -> Mat {
        let mut m = Mat::identity(self.field, self.dim);
        for &s in w.word().iter().rev() {
            m = m.mul(&self.act_v[s as usize]);
        }
        m.transpose()
    }

    /// Runs every invariant check and reports the outcome of each. The
    /// "balanced" condition has no definition at this level of generality and
    /// is recorded as not checked.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let pairing_ok = (0..self.rank()).all(|s| {
            self.pair_root(s, &self.coroots[s]) == self.field.from_int(2)
        });
        checks.push((
            "pairing".to_string(),
            if pairing_ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail("alpha_s(alpha_s^vee) != 2 for some s".into())
            },
        ));

        let mut cox_ok = CheckStatus::Pass;
        'rel: for s in 0..self.rank() {
            for t in s..self.rank() {
                let m = self.cox.order(s, t);
                if m == INFINITE_ORDER {
                    continue;
                }
                let st = self.act_v[s].mul(&self.act_v[t]);
                if st.pow(u64::from(m)) != Mat::identity(self.field, self.dim) {
                    cox_ok = CheckStatus::Fail(format!(
                        "(sigma_{s} sigma_{t})^{m} != id on V"
                    ));
                    break 'rel;
                }
            }
        }
        checks.push(("coxeter_relations".to_string(), cox_ok));

        let demazure_ok = (0..self.rank()).all(|s| {
            self.roots[s].iter().any(|c| !c.is_zero())
                && self.coroots[s].iter().any(|c| !c.is_zero())
        });
        checks.push((
            "demazure_surjectivity".to_string(),
            if demazure_ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail("some root or coroot vanishes".into())
            },
        ));

        checks.push((
            "balanced".to_string(),
            CheckStatus::NotChecked("condition not defined at this generality".into()),
        ));

        ValidationReport { checks }
    }

    /// The dual realization: `V` and `V*` exchanged, roots and coroots
    /// exchanged. In coordinates this swaps the two vector families.
    pub fn dual(&self) -> Realization {
        Realization {
            field: self.field,
            cox: self.cox.clone(),
            dim: self.dim,
            coroots: self.roots.clone(),
            roots: self.coroots.clone(),
            act_v: self.act_vdual.clone(),
            act_vdual: self.act_v.clone(),
        }
    }

    /// Built-in catalog: `sl2`, `sl3`, `b2`.
    pub fn builtin(name: &str, field: FieldSpec) -> Result<Self, RealizationError> {
        match name {
            "sl2" => Realization::from_cartan(CoxeterMatrix::rank_one(), &[vec![2]], field),
            "sl3" => Realization::from_cartan(
                CoxeterMatrix::dihedral(3),
                &[vec![2, -1], vec![-1, 2]],
                field,
            ),
            "b2" => Realization::from_cartan(
                CoxeterMatrix::dihedral(4),
                &[vec![2, -1], vec![-2, 2]],
                field,
            ),
            _ => Err(RealizationError::Parse(format!("unknown builtin realization `{name}`"))),
        }
    }

    /// Parses the realization file format:
    ///
    /// ```text
    /// field Q            # or F3, F5, ...
    /// rank 2
    /// coxeter
    /// 1 3
    /// 3 1
    /// cartan             # or: dim <n>, coroots, roots with explicit rows
    /// 2 -1
    /// -1 2
    /// ```
    pub fn parse_file(text: &str) -> Result<Self, RealizationError> {
        let mut field = None;
        let mut rank = None;
        let mut dim = None;
        let mut coxeter_rows: Vec<Vec<i64>> = Vec::new();
        let mut cartan_rows: Vec<Vec<i64>> = Vec::new();
        let mut coroot_rows: Vec<Vec<i64>> = Vec::new();
        let mut root_rows: Vec<Vec<i64>> = Vec::new();
        let mut section: Option<&str> = None;

        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap();
            match head {
                "field" => {
                    let v = words.next().ok_or_else(|| parse_err("missing field value"))?;
                    field = Some(FieldSpec::parse(v)?);
                    section = None;
                }
                "rank" => {
                    let v = words.next().ok_or_else(|| parse_err("missing rank value"))?;
                    rank = Some(v.parse::<usize>().map_err(|_| parse_err("bad rank"))?);
                    section = None;
                }
                "dim" => {
                    let v = words.next().ok_or_else(|| parse_err("missing dim value"))?;
                    dim = Some(v.parse::<usize>().map_err(|_| parse_err("bad dim"))?);
                    section = None;
                }
                "coxeter" | "coxeter_matrix" => section = Some("coxeter"),
                "cartan" | "cartan_matrix" => section = Some("cartan"),
                "coroots" => section = Some("coroots"),
                "roots" => section = Some("roots"),
                _ => {
                    let row: Result<Vec<i64>, _> =
                        line.split_whitespace().map(str::parse::<i64>).collect();
                    let row = row.map_err(|_| parse_err(&format!("bad row `{line}`")))?;
                    match section {
                        Some("coxeter") => coxeter_rows.push(row),
                        Some("cartan") => cartan_rows.push(row),
                        Some("coroots") => coroot_rows.push(row),
                        Some("roots") => root_rows.push(row),
                        _ => return Err(parse_err(&format!("unexpected line `{line}`"))),
                    }
                }
            }
        }

        let field = field.ok_or_else(|| parse_err("missing `field`"))?;
        let rank = rank.ok_or_else(|| parse_err("missing `rank`"))?;
        if coxeter_rows.len() != rank {
            return Err(parse_err("coxeter matrix must have `rank` rows"));
        }
        let orders: Vec<Vec<u32>> = coxeter_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| u32::try_from(x).map_err(|_| parse_err("bad order")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let cox = CoxeterMatrix::new(orders)?;

        if !cartan_rows.is_empty() {
            Realization::from_cartan(cox, &cartan_rows, field)
        } else {
            let dim = dim.ok_or_else(|| parse_err("explicit realizations need `dim`"))?;
            let to_scalars = |rows: Vec<Vec<i64>>| -> Vec<Vec<Scalar>> {
                rows.into_iter()
                    .map(|r| r.into_iter().map(|x| field.from_int(x)).collect())
                    .collect()
            };
            Realization::from_vectors(field, cox, dim, to_scalars(coroot_rows), to_scalars(root_rows))
        }
    }

}

fn parse_err(msg: &str) -> RealizationError {
    RealizationError::Parse(msg.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn sl2_reflection() {
        let r = Realization::builtin("sl2", q()).unwrap();
        // s(alpha_s^vee) = -alpha_s^vee
        let m = r.action_v(0);
        assert_eq!(m.get(0, 0), &q().from_int(-1));
        assert!(r.validate().passed());
    }

    #[test]
    fn sl3_braid_relation_on_v() {
        let r = Realization::builtin("sl3", q()).unwrap();
        let st = r.action_v(0).mul(r.action_v(1));
        assert_eq!(st.pow(3), Mat::identity(q(), 2));
        assert_ne!(st.pow(1), Mat::identity(q(), 2));
    }

    #[test]
    fn sl2_over_f3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let r = Realization::builtin("sl2", f3).unwrap();
        assert!(r.validate().passed());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(matches!(
            Realization::from_cartan(CoxeterMatrix::rank_one(), &[vec![2]], FieldSpec::Prime(2)),
            Err(RealizationError::Field(FieldError::CharacteristicTwo))
        ));
    }

    #[test]
    fn bad_pairing_fails() {
        // alpha_s(alpha_s^vee) = 1 violates the pairing invariant
        let err = Realization::from_vectors(
            q(),
            CoxeterMatrix::rank_one(),
            1,
            vec![vec![q().one()]],
            vec![vec![q().one()]],
        );
        match err {
            Err(RealizationError::Invalid(msg)) => assert!(msg.contains("pairing")),
            other => panic!("expected pairing failure, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_cartan_fails_coxeter_relations() {
        let err = Realization::from_cartan(
            CoxeterMatrix::dihedral(3),
            &[vec![2, 0], vec![-1, 2]],
            q(),
        );
        match err {
            Err(RealizationError::Invalid(msg)) => assert!(msg.contains("coxeter_relations")),
            other => panic!("expected Coxeter relation failure, got {other:?}"),
        }
    }

    #[test]
    fn dual_is_involutive() {
        let r = Realization::builtin("sl3", q()).unwrap();
        assert_eq!(r.dual().dual(), r);
    }

    #[test]
    fn sl2_self_dual() {
        let r = Realization::builtin("sl2", q()).unwrap();
        let d = r.dual();
        // self-dual up to the canonical identification: same pairing
        assert_eq!(d.pair_root(0, d.coroot(0)), q().from_int(2));
        assert!(d.validate().passed());
    }

    #[test]
    fn dual_transposes_cartan() {
        let r = Realization::builtin("b2", q()).unwrap();
        let d = r.dual();
        for s in 0..2 {
            for t in 0..2 {
                // a^dual_st = alpha^dual_t(alpha^dual_s^vee) = a_ts
                assert_eq!(d.pair_root(t, d.coroot(s)), r.pair_root(s, r.coroot(t)));
            }
        }
    }

    #[test]
    fn builtin_catalog_validates_over_all_fields() {
        for name in ["sl2", "sl3", "b2"] {
            for field in [q(), FieldSpec::prime(3).unwrap(), FieldSpec::prime(5).unwrap()] {
                let r = Realization::builtin(name, field).unwrap();
                assert!(r.validate().passed(), "{name} over {field}");
            }
        }
    }

    #[test]
    fn parse_cartan_file() {
        let text = "field Q\nrank 2\ncoxeter\n1 3\n3 1\ncartan\n2 -1\n-1 2\n";
        let r = Realization::parse_file(text).unwrap();
        assert_eq!(r, Realization::builtin("sl3", q()).unwrap());
    }

    #[test]
    fn parse_explicit_file() {
        let text = "field F5\nrank 1\ncoxeter\n1\ndim 1\ncoroots\n1\nroots\n2\n";
        let r = Realization::parse_file(text).unwrap();
        assert_eq!(r, Realization::builtin("sl2", FieldSpec::prime(5).unwrap()).unwrap());
    }

    #[test]
    fn parse_infinite_order_encoding() {
        let text = "field Q\nrank 2\ncoxeter\n1 0\n0 1\ncartan\n2 -2\n-2 2\n";
        let r = Realization::parse_file(text).unwrap();
        assert_eq!(r.cox.order(0, 1), INFINITE_ORDER);
        assert!(r.validate().passed());
    }

    #[test]
    fn parse_long_form_keywords() {
        let text = "field Q\nrank 1\ncoxeter_matrix\n1\ncartan_matrix\n2\n";
        let r = Realization::parse_file(text).unwrap();
        assert_eq!(r, Realization::builtin("sl2", q()).unwrap());
    }
}
