//! Fixed vectors and the natural pairing for small finite groups.
//!
//! Representations are explicit lists of rational matrices, one per group
//! element. A subgroup is a list of indices into that list.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols.max(1)).map(<[Rational]>::to_vec).take(self.rows).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + &(a.clone() * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + &(self.get(i, j).clone() * &v[j])))
            .collect())
    }

    fn zip_with(&self, other: &RationalMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("entrywise operation".into()));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(row, j).clone() * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j).clone() - &(factor.clone() * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NonInvertible(format!("{self:?}")));
        }
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }
}

/// A representation given on every element of a finite group.
#[derive(Clone, Debug)]
pub struct FiniteRep {
    pub name: String,
    dimension: usize,
    elements: Vec<RationalMatrix>,
}

impl FiniteRep {
    /// Validates squareness, invertibility, the identity and closure.
    pub fn new(name: impl Into<String>, elements: Vec<RationalMatrix>) -> Result<Self> {
        let dimension = elements.first().map_or(0, RationalMatrix::rows);
        if dimension == 0 {
            return Err(Error::DimensionMismatch("empty representation".into()));
        }
        for m in &elements {
            if m.rows() != dimension || !m.is_square() {
                return Err(Error::DimensionMismatch("matrices of different sizes".into()));
            }
            m.inverse()?;
        }
        let rep = FiniteRep {
            name: name.into(),
            dimension,
            elements,
        };
        rep.check_closed(&(0..rep.elements.len()).collect::<Vec<_>>())?;
        Ok(rep)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    /// Checks that the indexed elements form a subgroup.
    pub fn check_closed(&self, subset: &[usize]) -> Result<()> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.elements.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                rank: self.elements.len(),
            });
        }
        let lookup: HashMap<&RationalMatrix, usize> = subset.iter().map(|&i| (&self.elements[i], i)).collect();
        if !lookup.contains_key(&RationalMatrix::identity(self.dimension)) {
            return Err(Error::InvalidParameter(format!("{}: identity missing", self.name)));
        }
        for &a in subset {
            for &b in subset {
                let prod = self.elements[a].mul(&self.elements[b])?;
                if !lookup.contains_key(&prod) {
                    return Err(Error::InvalidParameter(format!(
                        "{}: product of elements {a} and {b} leaves the set",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Contragredient: `g -> (rho(g)^{-1})^T`.
    pub fn dual(&self) -> FiniteRep {
        FiniteRep {
            name: format!("{} (dual)", self.name),
            dimension: self.dimension,
            elements: self
                .elements
                .iter()
                .map(|m| m.inverse().expect("validated invertible").transpose())
                .collect(),
        }
    }

    /// `(1/|K|) sum_{k in K} rho(k)`.
    pub fn averaging_operator(&self, subgroup: &[usize]) -> Result<RationalMatrix> {
        self.check_closed(subgroup)?;
        let mut sum = RationalMatrix::zeros(self.dimension, self.dimension);
        for &k in subgroup {
            sum = sum.add(&self.elements[k])?;
        }
        Ok(sum.scale(&Rational::from(subgroup.len() as i64).inverse()?))
    }
}

/// Basis of the `K`-fixed vectors: the kernel of `I - P` for the averaging
/// idempotent `P`.
pub fn fixed_space(rep: &FiniteRep, subgroup: &[usize]) -> Result<Vec<Vec<Rational>>> {
    let p = rep.averaging_operator(subgroup)?;
    Ok(RationalMatrix::identity(rep.dimension()).sub(&p)?.nullspace())
}

/// Dimension of `{A : A rho(g) = rho(g) A for all g}` over the rationals.
pub fn commutant_dimension(rep: &FiniteRep) -> Result<usize> {
    let d = rep.dimension();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in rep.elements() {
        // column (a, b) of the system is the image of the unit matrix E_ab
        let mut block = RationalMatrix::zeros(d * d, d * d);
        for a in 0..d {
            for b in 0..d {
                let mut unit = RationalMatrix::zeros(d, d);
                unit.set(a, b, Rational::one());
                let comm = unit.mul(g)?.sub(&g.mul(&unit)?)?;
                for i in 0..d {
                    for j in 0..d {
                        block.set(i * d + j, a * d + b, comm.get(i, j).clone());
                    }
                }
            }
        }
        rows.extend(block.to_rows());
        // keep only an echelon basis so the system stays at most d^2 rows
        let (reduced, pivots) = RationalMatrix::from_rows(std::mem::take(&mut rows))?.rref();
        rows = reduced.to_rows().into_iter().take(pivots.len()).collect();
    }
    Ok(d * d - rows.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct GelfandReport {
    pub representation: String,
    pub dim_fixed_v: usize,
    pub dim_fixed_vdual: usize,
    /// Present only when both fixed spaces are lines.
    pub pairing: Option<Rational>,
    pub pairing_nonzero: Option<bool>,
    /// Trivial `K`-type occurs at most once on both sides.
    pub gelfand_multiplicity_ok: bool,
    pub commutant_dimension: usize,
}

impl GelfandReport {
    /// The pairing statement holds where it applies.
    pub fn ok(&self) -> bool {
        self.gelfand_multiplicity_ok && self.pairing_nonzero != Some(false)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + &(x.clone() * y))
}

pub fn check_pairing(rep: &FiniteRep, subgroup: &[usize]) -> Result<GelfandReport> {
    let fixed = fixed_space(rep, subgroup)?;
    let fixed_dual = fixed_space(&rep.dual(), subgroup)?;
    let pairing = if fixed.len() == 1 && fixed_dual.len() == 1 {
        Some(dot(&fixed_dual[0], &fixed[0]))
    } else {
        None
    };
    Ok(GelfandReport {
        representation: rep.name.clone(),
        dim_fixed_v: fixed.len(),
        dim_fixed_vdual: fixed_dual.len(),
        pairing_nonzero: pairing.as_ref().map(|p| !p.is_zero()),
        pairing,
        gelfand_multiplicity_ok: fixed.len() <= 1 && fixed_dual.len() <= 1,
        commutant_dimension: commutant_dimension(rep)?,
    })
}

/// On-disk catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub group: String,
    pub representation: String,
    pub dimension: usize,
    pub elements: Vec<Vec<Vec<Rational>>>,
    pub subgroup_name: String,
    pub subgroup: Vec<usize>,
    pub declared_gelfand_pair: bool,
}

impl CatalogEntry {
    pub fn to_rep(&self) -> Result<FiniteRep> {
        let mats = self
            .elements
            .iter()
            .map(|rows| RationalMatrix::from_rows(rows.clone()))
            .collect::<Result<Vec<_>>>()?;
        let rep = FiniteRep::new(format!("{} {}", self.group, self.representation), mats)?;
        if rep.dimension() != self.dimension {
            return Err(Error::DimensionMismatch(format!(
                "{}: declared {} but matrices are {}",
                self.group,
                self.dimension,
                rep.dimension()
            )));
        }
        Ok(rep)
    }

    fn from_matrices(
        group: &str,
        representation: &str,
        mats: &[RationalMatrix],
        subgroup_name: &str,
        subgroup: Vec<usize>,
    ) -> Self {
        CatalogEntry {
            group: group.into(),
            representation: representation.into(),
            dimension: mats[0].rows(),
            elements: mats.iter().map(RationalMatrix::to_rows).collect(),
            subgroup_name: subgroup_name.into(),
            subgroup,
            declared_gelfand_pair: true,
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Standard representation of `S_n` on `{x in Q^n : sum x = 0}` in the basis
/// `f_i = e_i - e_n`.
fn standard_matrix(sigma: &[usize]) -> RationalMatrix {
    let n = sigma.len();
    let mut m = RationalMatrix::zeros(n - 1, n - 1);
    let last = sigma[n - 1];
    for (i, &img) in sigma.iter().enumerate().take(n - 1) {
        if img != n - 1 {
            m.set(img, i, Rational::one());
        }
        if last != n - 1 {
            let v = m.get(last, i).clone() - &Rational::one();
            m.set(last, i, v);
        }
    }
    m
}

fn sign(sigma: &[usize]) -> i64 {
    let inversions = (0..sigma.len())
        .flat_map(|i| (i + 1..sigma.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma[i] > sigma[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn point_stabilizer(perms: &[Vec<usize>]) -> Vec<usize> {
    let n = perms[0].len();
    (0..perms.len()).filter(|&i| perms[i][n - 1] == n - 1).collect()
}

/// `(S_n, S_{n-1})` with the standard `(n-1)`-dimensional representation.
pub fn symmetric_standard(n: usize) -> CatalogEntry {
    let perms = permutations(n);
    let mats: Vec<_> = perms.iter().map(|s| standard_matrix(s)).collect();
    CatalogEntry::from_matrices(
        &format!("S{n}"),
        "standard",
        &mats,
        &format!("S{}", n - 1),
        point_stabilizer(&perms),
    )
}

/// `(S_n, S_{n-1})` with the sign character.
pub fn symmetric_sign(n: usize) -> CatalogEntry {
    let perms = permutations(n);
    let mats: Vec<_> = perms
        .iter()
        .map(|s| RationalMatrix::from_integers(&[&[sign(s)]]).expect("1x1"))
        .collect();
    CatalogEntry::from_matrices(&format!("S{n}"), "sign", &mats, &format!("S{}", n - 1), point_stabilizer(&perms))
}

/// `(D_4, <reflection>)` with the 2-dimensional representation by the
/// symmetries of a square.
pub fn dihedral4_standard() -> CatalogEntry {
    let r = RationalMatrix::from_integers(&[&[0, -1], &[1, 0]]).expect("2x2");
    let s = RationalMatrix::from_integers(&[&[1, 0], &[0, -1]]).expect("2x2");
    let mut mats = vec![RationalMatrix::identity(2)];
    for _ in 1..4 {
        let next = r.mul(mats.last().expect("non-empty")).expect("2x2");
        mats.push(next);
    }
    let reflections: Vec<_> = mats.iter().map(|m| m.mul(&s).expect("2x2")).collect();
    mats.extend(reflections);
    CatalogEntry::from_matrices("D4", "standard", &mats, "C2", vec![0, 4])
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    vec![
        symmetric_standard(3),
        symmetric_sign(3),
        symmetric_standard(4),
        symmetric_standard(5),
        dihedral4_standard(),
    ]
}

/// File names used for the shipped data, aligned with [`builtin_catalog`].
pub const CATALOG_FILES: [&str; 5] = [
    "s3_standard.json",
    "s3_sign.json",
    "s4_standard.json",
    "s5_standard.json",
    "d4_standard.json",
];

const SHIPPED: [&str; 5] = [
    include_str!("../data/s3_standard.json"),
    include_str!("../data/s3_sign.json"),
    include_str!("../data/s4_standard.json"),
    include_str!("../data/s5_standard.json"),
    include_str!("../data/d4_standard.json"),
];

/// Parses the catalog data files bundled with the crate.
pub fn shipped_catalog() -> Result<Vec<CatalogEntry>> {
    SHIPPED
        .iter()
        .map(|s| serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn matrix_inverse_and_nullspace() {
        let m = RationalMatrix::from_integers(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        let singular = RationalMatrix::from_integers(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.inverse().is_err());
        let ns = singular.nullspace();
        assert_eq!(ns, vec![vec![r(-2, 1), r(1, 1)]]);
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn standard_rep_is_homomorphism() {
        let perms = permutations(4);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = b.iter().map(|&j| a[j]).collect();
                assert_eq!(
                    standard_matrix(&ab),
                    standard_matrix(a).mul(&standard_matrix(b)).unwrap()
                );
            }
        }
    }

    #[test]
    fn s3_standard_fixed_line_by_hand() {
        let entry = symmetric_standard(3);
        let rep = entry.to_rep().unwrap();
        // K = {id, (1 2)}; (1 2) swaps f_1 and f_2, so the average fixes f_1 + f_2.
        let fixed = fixed_space(&rep, &entry.subgroup).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0][0], fixed[0][1]);
        let report = check_pairing(&rep, &entry.subgroup).unwrap();
        assert_eq!((report.dim_fixed_v, report.dim_fixed_vdual), (1, 1));
        assert_eq!(report.pairing_nonzero, Some(true));
        assert_eq!(report.commutant_dimension, 1);
    }

    #[test]
    fn sign_has_no_fixed_vectors() {
        let entry = symmetric_sign(3);
        let report = check_pairing(&entry.to_rep().unwrap(), &entry.subgroup).unwrap();
        assert_eq!((report.dim_fixed_v, report.dim_fixed_vdual), (0, 0));
        assert!(report.pairing.is_none());
        assert!(report.ok());
    }

    #[test]
    fn trivial_rep_fixes_everything() {
        let id = RationalMatrix::identity(3);
        let rep = FiniteRep::new("trivial", vec![id]).unwrap();
        assert_eq!(fixed_space(&rep, &[0]).unwrap().len(), 3);
    }

    #[test]
    fn rejects_non_closed_sets() {
        let r90 = RationalMatrix::from_integers(&[&[0, -1], &[1, 0]]).unwrap();
        assert!(FiniteRep::new("bad", vec![RationalMatrix::identity(2), r90]).is_err());
        let entry = dihedral4_standard();
        let rep = entry.to_rep().unwrap();
        assert!(rep.check_closed(&[0, 1]).is_err());
        assert!(rep.check_closed(&[0, 2]).is_ok());
    }

    #[test]
    fn averaging_is_idempotent() {
        let entry = symmetric_standard(4);
        let rep = entry.to_rep().unwrap();
        let p = rep.averaging_operator(&entry.subgroup).unwrap();
        assert_eq!(p.mul(&p).unwrap(), p);
    }

    #[test]
    fn shipped_files_match_builders() {
        assert_eq!(shipped_catalog().unwrap(), builtin_catalog());
    }
}
