//! CW complexes given by integer boundary matrices, their spanning forests,
//! torsion orders, and the torsion-weighted forest sums for geometric and
//! integral mesh matrices.
//!
//! Text format:
//!
//! ```text
//! dim 2
//! boundary 1 1 1
//! 0
//! boundary 2 1 1
//! 2
//! ```
//!
//! Each `boundary k rows cols` block is followed by `rows` lines of `cols`
//! integers; a block with zero columns has no row lines.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::incidence_matrix;
use crate::error::{Error, Result};
use crate::graph::{Combinations, Multigraph};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::polynomial::RatPolynomial;
use crate::smith::{integer_kernel_basis, smith_normal_form, solve_integer};
use crate::stpoly::char_poly_rational;

/// Forest enumeration refuses complexes with more top cells than this.
pub const MAX_ENUMERATED_CELLS: usize = 20;

/// Checks shapes and `∂_{k−1}·∂_k = 0`; `boundaries[k−1]` is `∂_k`.
pub fn validate_boundaries(boundaries: &[IntMatrix]) -> bool {
    boundaries.windows(2).all(|w| w[0].cols() == w[1].rows() && (&w[0] * &w[1]).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwComplex {
    boundaries: Vec<IntMatrix>,
}

/// A set of top-dimensional cells, by 0-based index.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForestCw(BTreeSet<usize>);

impl ForestCw {
    pub fn cells(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.0.contains(&cell)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<usize> for ForestCw {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl CwComplex {
    pub fn new(boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::InvalidComplex("dimension must be at least 1".into()));
        }
        if let Some(k) = (1..boundaries.len()).find(|&k| boundaries[k - 1].cols() != boundaries[k].rows()) {
            return Err(Error::InvalidComplex(format!("boundary {} and {} have incompatible shapes", k, k + 1)));
        }
        if !validate_boundaries(&boundaries) {
            return Err(Error::InvalidComplex("boundary of a boundary is nonzero".into()));
        }
        Ok(Self { boundaries })
    }

    /// A graph as a 1-complex with its incidence matrix as `∂₁`.
    pub fn from_graph(g: &Multigraph) -> Self {
        Self { boundaries: vec![incidence_matrix(g)] }
    }

    pub fn dim(&self) -> usize {
        self.boundaries.len()
    }

    /// `∂_k` for `1 ≤ k ≤ dim`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    pub fn cell_count(&self, k: usize) -> usize {
        if k == 0 {
            self.boundaries[0].rows()
        } else {
            self.boundaries[k - 1].cols()
        }
    }

    pub fn top_cell_count(&self) -> usize {
        self.cell_count(self.dim())
    }

    fn top(&self) -> &IntMatrix {
        self.boundary(self.dim())
    }

    fn top_columns(&self, cells: &[usize]) -> Result<IntMatrix> {
        if let Some(&c) = cells.iter().find(|&&c| c >= self.top_cell_count()) {
            return Err(Error::InvalidComplex(format!("no top cell {c}")));
        }
        Ok(self.top().select_columns(cells))
    }

    pub fn top_rank(&self) -> usize {
        self.top().to_rational().rank()
    }

    /// `V` is a spanning forest iff `∂_d` restricted to `V` is injective and
    /// has the same image as `∂_d` over the rationals.
    pub fn is_spanning_forest(&self, v: &ForestCw) -> bool {
        match self.top_columns(&v.cells()) {
            Ok(cols) => v.len() == self.top_rank() && cols.to_rational().rank() == v.len(),
            Err(_) => false,
        }
    }

    /// All spanning forests in lexicographic order.
    pub fn enumerate_spanning_forests(&self) -> Result<Vec<ForestCw>> {
        self.forests_within(&(0..self.top_cell_count()).collect::<Vec<_>>())
    }

    /// Spanning forests of the subcomplex keeping only `cells` on top.
    pub fn forests_within(&self, cells: &[usize]) -> Result<Vec<ForestCw>> {
        if cells.len() > MAX_ENUMERATED_CELLS {
            return Err(Error::TooManyCells { count: cells.len(), limit: MAX_ENUMERATED_CELLS });
        }
        let sub = self.top_columns(cells)?.to_rational();
        let r = sub.rank();
        Ok(Combinations::new(cells.len(), r)
            .filter(|combo| sub.select_columns(combo).rank() == r)
            .map(|combo| combo.iter().map(|&i| cells[i]).collect())
            .collect())
    }

    /// Integral basis of `ker ∂_{d−1}` as columns (`C_{d−1}` itself when
    /// `d = 1`).
    fn cycle_basis_below(&self) -> IntMatrix {
        if self.dim() == 1 {
            IntMatrix::identity(self.cell_count(0))
        } else {
            integer_kernel_basis(self.boundary(self.dim() - 1))
        }
    }

    /// Order of the torsion of `H_{d−1}(X_V; ℤ)`, where `X_V` keeps the full
    /// `(d−1)`-skeleton and only the top cells in `cells` (all of them when
    /// `None`). The image of `∂_d` is written in an integral basis of the
    /// `(d−1)`-cycles and reduced to Smith normal form.
    pub fn torsion_order(&self, cells: Option<&[usize]>) -> Result<BigInt> {
        let all: Vec<usize>;
        let cells = match cells {
            Some(c) => c,
            None => {
                all = (0..self.top_cell_count()).collect();
                &all
            }
        };
        let image = self.top_columns(cells)?;
        let basis = self.cycle_basis_below();
        let coords = solve_integer(&basis, &image)?
            .ok_or_else(|| Error::Inconsistent("boundary image is not in the cycle lattice".into()))?;
        Ok(smith_normal_form(&coords).torsion_product())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim());
        for (k, m) in self.boundaries.iter().enumerate() {
            let _ = writeln!(s, "boundary {} {} {}", k + 1, m.rows(), m.cols());
            if m.cols() == 0 {
                continue;
            }
            for row in m.to_rows() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", cells.join(" "));
            }
        }
        s
    }
}

impl FromStr for CwComplex {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, message: String| Error::Parse { line, message };
        let (line, header) = lines.next().ok_or_else(|| err(0, "empty complex file".into()))?;
        let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["dim", d] => d.parse::<usize>().map_err(|_| err(line, format!("bad dimension {d:?}")))?,
            _ => return Err(err(line, "expected `dim <d>`".into())),
        };
        let mut boundaries = Vec::with_capacity(dim);
        for k in 1..=dim {
            let (line, header) = lines.next().ok_or_else(|| err(0, format!("missing boundary {k}")))?;
            let fields: Vec<&str> = header.split_whitespace().collect();
            let nums: Vec<usize> = match fields.as_slice() {
                ["boundary", rest @ ..] if rest.len() == 3 => rest
                    .iter()
                    .map(|f| f.parse::<usize>().map_err(|_| err(line, format!("bad integer {f:?}"))))
                    .collect::<Result<_>>()?,
                _ => return Err(err(line, "expected `boundary <k> <rows> <cols>`".into())),
            };
            if nums[0] != k {
                return Err(err(line, format!("expected boundary {k}, found {}", nums[0])));
            }
            let (rows, cols) = (nums[1], nums[2]);
            let mut data = Vec::with_capacity(rows);
            if cols > 0 {
                for _ in 0..rows {
                    let (line, row) = lines.next().ok_or_else(|| err(0, format!("boundary {k} is truncated")))?;
                    let values = row
                        .split_whitespace()
                        .map(|f| f.parse::<BigInt>().map_err(|_| err(line, format!("bad integer {f:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    if values.len() != cols {
                        return Err(err(line, format!("expected {cols} entries, found {}", values.len())));
                    }
                    data.push(values);
                }
            } else {
                data = vec![Vec::new(); rows];
            }
            boundaries.push(IntMatrix::from_rows(data, cols)?);
        }
        if let Some((line, _)) = lines.next() {
            return Err(err(line, "trailing content after the last boundary".into()));
        }
        CwComplex::new(boundaries)
    }
}

/// Memoized `t_{d−1}(X_V)` over subsets `V` of top cells.
struct TorsionTable<'a> {
    x: &'a CwComplex,
    memo: HashMap<Vec<usize>, BigInt>,
}

impl<'a> TorsionTable<'a> {
    fn new(x: &'a CwComplex) -> Self {
        Self { x, memo: HashMap::new() }
    }

    fn get(&mut self, cells: &[usize]) -> Result<BigInt> {
        if let Some(t) = self.memo.get(cells) {
            return Ok(t.clone());
        }
        let t = self.x.torsion_order(Some(cells))?;
        self.memo.insert(cells.to_vec(), t.clone());
        Ok(t)
    }

    fn full(&mut self) -> Result<BigInt> {
        let all: Vec<usize> = (0..self.x.top_cell_count()).collect();
        self.get(&all)
    }
}

fn squared_ratio(num: &BigInt, den: &BigInt) -> BigRational {
    let r = BigRational::new(num.clone(), den.clone());
    &r * &r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricMesh {
    pub forest: Vec<usize>,
    /// Top cells outside the forest, `e_1..e_N`.
    pub cotree: Vec<usize>,
    /// Column `j` holds the coefficients of `D(e_j)` on the forest cells.
    pub d_chains: RatMatrix,
    /// `⟨z(e_i), z(e_j)⟩` with `z(e) = e − D(e)`.
    pub mesh: RatMatrix,
    /// `⟨D(e_i), D(e_j)⟩`.
    pub reduced: RatMatrix,
}

impl GeometricMesh {
    /// The cycles `z(e_j)` as columns in the top-cell basis.
    pub fn cycles(&self, top_cells: usize) -> RatMatrix {
        let mut z = RatMatrix::zeros(top_cells, self.cotree.len());
        for (j, &e) in self.cotree.iter().enumerate() {
            z.set(e, j, BigRational::one());
            for (i, &f) in self.forest.iter().enumerate() {
                z.set(f, j, -self.d_chains.get(i, j).clone());
            }
        }
        z
    }
}

/// Solves `∂(e) = ∂(D(e))` with `D(e)` on the forest for every cell outside
/// it, and forms the Gram matrix of the cycles `z(e) = e − D(e)`.
pub fn geometric_mesh(x: &CwComplex, v0: &ForestCw) -> Result<GeometricMesh> {
    if !x.is_spanning_forest(v0) {
        return Err(Error::NotSpanningForest(v0.cells()));
    }
    let forest = v0.cells();
    let cotree: Vec<usize> = (0..x.top_cell_count()).filter(|c| !v0.contains(*c)).collect();
    let basis = x.top_columns(&forest)?.to_rational();
    let targets = x.top_columns(&cotree)?.to_rational();
    let d_chains = basis
        .solve_columns(&targets)?
        .ok_or_else(|| Error::Inconsistent("a boundary lies outside the forest's image".into()))?;
    let reduced = d_chains.gram();
    let mesh = &RatMatrix::identity(cotree.len()) + &reduced;
    let out = GeometricMesh { forest, cotree, d_chains, mesh, reduced };
    let z = out.cycles(x.top_cell_count());
    if !(&x.top().to_rational() * &z).is_zero() || z.gram() != out.mesh {
        return Err(Error::Inconsistent("geometric cycles are not cycles".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub mesh_det: BigRational,
    pub forest_sum: BigRational,
    pub forest_count: usize,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        self.mesh_det == self.forest_sum
    }
}

/// `det Mesh(geometric) = Σ_V (t(X_V) / t(X_{V₀}))²` over spanning forests.
pub fn verify_star(x: &CwComplex, v0: &ForestCw) -> Result<StarReport> {
    let gm = geometric_mesh(x, v0)?;
    let mut table = TorsionTable::new(x);
    let base = table.get(&v0.cells())?;
    let forests = x.enumerate_spanning_forests()?;
    let mut forest_sum = BigRational::zero();
    for v in &forests {
        forest_sum += squared_ratio(&table.get(&v.cells())?, &base);
    }
    Ok(StarReport { mesh_det: gm.mesh.det()?, forest_sum, forest_count: forests.len() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherReport {
    pub mesh_charpoly: RatPolynomial,
    pub reduced_charpoly: RatPolynomial,
    /// `det((U+1)·Id − Mesh) = det(U·Id − Mesh#)`.
    pub shift_relation_holds: bool,
    /// `σ_j` read off `det(T·Id − Mesh)`.
    pub sigma: Vec<BigRational>,
    /// `σ_j` as a sum over cotree subsets `U` of forest sums of `X_{V₀ ∪ U}`.
    pub sigma_sum: Vec<BigRational>,
    /// `c_j` read off `det(U·Id − Mesh#)`.
    pub c: Vec<BigRational>,
    /// `c_j` as a sum over forests meeting the cotree in `j` cells.
    pub c_sum: Vec<BigRational>,
}

impl HigherReport {
    pub fn holds(&self) -> bool {
        self.shift_relation_holds && self.sigma == self.sigma_sum && self.c == self.c_sum
    }
}

fn signed_coefficients(p: &RatPolynomial, n: usize) -> Vec<BigRational> {
    (0..=n)
        .map(|j| {
            let c = p.coeff(n - j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

pub fn verify_higher_identities(x: &CwComplex, v0: &ForestCw) -> Result<HigherReport> {
    let gm = geometric_mesh(x, v0)?;
    let n = gm.cotree.len();
    let mesh_charpoly = char_poly_rational(&gm.mesh)?;
    let reduced_charpoly = char_poly_rational(&gm.reduced)?;
    let shift_relation_holds = mesh_charpoly.compose_shift(&BigRational::one()) == reduced_charpoly;

    let mut table = TorsionTable::new(x);
    let base = table.get(&gm.forest)?;

    let mut sigma_sum = vec![BigRational::zero(); n + 1];
    for (j, slot) in sigma_sum.iter_mut().enumerate() {
        for pick in Combinations::new(n, j) {
            let mut cells = gm.forest.clone();
            cells.extend(pick.iter().map(|&i| gm.cotree[i]));
            cells.sort_unstable();
            for v in x.forests_within(&cells)? {
                *slot += squared_ratio(&table.get(&v.cells())?, &base);
            }
        }
    }

    let mut c_sum = vec![BigRational::zero(); n + 1];
    for v in x.enumerate_spanning_forests()? {
        let j = v.cells().iter().filter(|c| !v0.contains(**c)).count();
        c_sum[j] += squared_ratio(&table.get(&v.cells())?, &base);
    }

    Ok(HigherReport {
        sigma: signed_coefficients(&mesh_charpoly, n),
        c: signed_coefficients(&reduced_charpoly, n),
        mesh_charpoly,
        reduced_charpoly,
        shift_relation_holds,
        sigma_sum,
        c_sum,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralMeshReport {
    /// Columns form an integral basis of `Z_d(X; ℤ)`.
    pub kernel_basis: IntMatrix,
    pub integral_det: BigInt,
    pub geometric_det: BigRational,
    /// `Σ_V (t(X_V) / t(X))²`.
    pub forest_sum: BigRational,
    pub ratio: BigRational,
    /// `(t(X_{V₀}) / t(X))²`.
    pub expected_ratio: BigRational,
}

impl IntegralMeshReport {
    pub fn holds(&self) -> bool {
        BigRational::from_integer(self.integral_det.clone()) == self.forest_sum && self.ratio == self.expected_ratio
    }
}

pub fn integral_mesh_ratio(x: &CwComplex, v0: &ForestCw) -> Result<IntegralMeshReport> {
    let gm = geometric_mesh(x, v0)?;
    let kernel_basis = integer_kernel_basis(x.top());
    let integral_det = kernel_basis.gram().det_bareiss()?;
    let geometric_det = gm.mesh.det()?;
    let mut table = TorsionTable::new(x);
    let whole = table.full()?;
    let mut forest_sum = BigRational::zero();
    for v in x.enumerate_spanning_forests()? {
        forest_sum += squared_ratio(&table.get(&v.cells())?, &whole);
    }
    let ratio = BigRational::from_integer(integral_det.clone()) / geometric_det.clone();
    let expected_ratio = squared_ratio(&table.get(&gm.forest)?, &whole);
    Ok(IntegralMeshReport { kernel_basis, integral_det, geometric_det, forest_sum, ratio, expected_ratio })
}
