//! Homomorphisms between finitely presented modules and `Hom_R(M, N)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, integer_solve, smith_normal_form, IntMatrix, Lattice};
use crate::module::{sub_image, sub_preimage, FPModule, Submodule};

/// A module map given by its action on generators.
///
/// Column `k` of the matrix holds the image of generator `k`, reduced to
/// canonical coordinates in the codomain.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    dom: FPModule,
    cod: FPModule,
    matrix: IntMatrix,
}

impl Homomorphism {
    /// Checks that every domain relation is sent into the codomain relations.
    pub fn new(dom: &FPModule, cod: &FPModule, matrix: IntMatrix) -> Result<Self> {
        dom.ring().ensure_same(cod.ring())?;
        if matrix.rows() != cod.n_gens() || matrix.cols() != dom.n_gens() {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                cod.n_gens(),
                dom.n_gens()
            )));
        }
        for (column, rel) in dom.relation_lattice().basis().iter().enumerate() {
            let img = matrix.mul_vec(rel)?;
            if !cod.is_zero_vector(&img) {
                return Err(Error::NotWellDefined { column });
            }
        }
        let cols: Vec<Vec<BigInt>> = matrix.columns().map(|c| cod.reduce(&c)).collect();
        let matrix = IntMatrix::from_columns(cod.n_gens(), &cols)?;
        Ok(Homomorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix,
        })
    }

    pub fn zero(dom: &FPModule, cod: &FPModule) -> Result<Self> {
        Self::new(dom, cod, IntMatrix::zeros(cod.n_gens(), dom.n_gens()))
    }

    pub fn dom(&self) -> &FPModule {
        &self.dom
    }

    pub fn cod(&self) -> &FPModule {
        &self.cod
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(self.cod.reduce(&self.matrix.mul_vec(coords)?))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        inner.cod.ensure_same(&self.dom)?;
        Homomorphism::new(&inner.dom, &self.cod, self.matrix.checked_mul(&inner.matrix)?)
    }

    /// The same matrix read on another domain, e.g. `f ∘ π` for a projection
    /// `π: M → M/N` presented on the generators of `M`.
    pub fn with_domain(&self, dom: &FPModule) -> Result<Homomorphism> {
        Homomorphism::new(dom, &self.cod, self.matrix.clone())
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        self.dom.ensure_same(&other.dom)?;
        self.cod.ensure_same(&other.cod)?;
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += &other.matrix[(i, j)];
            }
        }
        Homomorphism::new(&self.dom, &self.cod, m)
    }

    pub fn scale(&self, c: &BigInt) -> Homomorphism {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] *= c;
            }
        }
        Homomorphism::new(&self.dom, &self.cod, m).expect("multiples of a hom are homs")
    }

    pub fn kernel(&self) -> Submodule {
        kernel_of_hom(self)
    }

    pub fn image(&self) -> Submodule {
        sub_image(self, &self.dom.whole()).expect("domain matches")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// `{x : f(x) = 0}`.
pub fn kernel_of_hom(f: &Homomorphism) -> Submodule {
    sub_preimage(f, &f.cod.zero_submodule()).expect("codomain matches")
}

/// `Hom_R(dom, cod)` as a finitely generated module.
///
/// `generators[i]` has additive order `structure[i]` (0 meaning infinite),
/// and `Hom` is the direct sum of the cyclic groups they generate.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub dom: FPModule,
    pub cod: FPModule,
    pub generators: Vec<Homomorphism>,
    pub structure: Vec<BigInt>,
}

impl HomGroup {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Σ coeffs[i] · generators[i]`.
    pub fn combination(&self, coeffs: &[BigInt]) -> Result<Homomorphism> {
        if coeffs.len() != self.generators.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.generators.len()
            )));
        }
        let mut acc = Homomorphism::zero(&self.dom, &self.cod)?;
        for (g, c) in self.generators.iter().zip(coeffs) {
            acc = acc.add(&g.scale(c))?;
        }
        Ok(acc)
    }

    /// Every element of a finite `Hom`, as reduced homomorphisms.
    pub fn all_elements(&self, cap: u64) -> Result<Vec<Homomorphism>> {
        if self.structure.iter().any(Zero::is_zero) {
            return Err(Error::InfiniteModule("hom group enumeration".into()));
        }
        let total: BigInt = self.structure.iter().product();
        if total > BigInt::from(cap) {
            return Err(Error::OracleInfeasible {
                what: "hom group".into(),
                cardinality: total.to_string(),
                cap,
            });
        }
        let k = self.structure.len();
        let mut coeffs = vec![BigInt::zero(); k];
        let mut out = Vec::new();
        loop {
            out.push(self.combination(&coeffs)?);
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < self.structure[i] {
                    break;
                }
                coeffs[i] = BigInt::zero();
            }
        }
    }
}

/// Solves `F·P = Q·G` for `(F, G)` and quotients the `F`-lattice by the
/// zero maps `{Q·H}`.
pub fn hom_group(dom: &FPModule, cod: &FPModule) -> Result<HomGroup> {
    dom.ring().ensure_same(cod.ring())?;
    let a = dom.n_gens();
    let b = cod.n_gens();
    let p_mat = dom.relation_lattice().to_matrix();
    let q_mat = cod.relation_lattice().to_matrix();
    let p = p_mat.cols();
    let q = q_mat.cols();
    let nf = b * a;

    let mut eqs = IntMatrix::zeros(b * p, nf + q * p);
    for i in 0..b {
        for j in 0..p {
            let row = i * p + j;
            for k in 0..a {
                eqs[(row, i * a + k)] = p_mat[(k, j)].clone();
            }
            for l in 0..q {
                eqs[(row, nf + l * p + j)] = -&q_mat[(i, l)];
            }
        }
    }
    let solutions = integer_kernel(&eqs);
    let valid = Lattice::from_generators(nf, solutions.basis().iter().map(|v| v[..nf].to_vec()));
    let h_mat = valid.to_matrix();
    let h = h_mat.cols();

    // Zero maps: column k of F equals column l of Q.
    let mut rel_cols = Vec::with_capacity(q * a);
    for l in 0..q {
        for k in 0..a {
            let mut z = vec![BigInt::zero(); nf];
            for i in 0..b {
                z[i * a + k] = q_mat[(i, l)].clone();
            }
            let c = integer_solve(&h_mat, &z).expect("zero maps lie in the solution lattice");
            rel_cols.push(c);
        }
    }
    let rel = IntMatrix::from_columns(h, &rel_cols)?;
    let snf = smith_normal_form(&rel);
    let diag = snf.diagonal();

    let mut generators = Vec::new();
    let mut structure = Vec::new();
    for i in 0..h {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_one() {
            continue;
        }
        let coeffs = snf.u_inv.column(i);
        let flat = h_mat.mul_vec(&coeffs)?;
        let mut f = IntMatrix::zeros(b, a);
        for r in 0..b {
            for c in 0..a {
                f[(r, c)] = flat[r * a + c].clone();
            }
        }
        generators.push(Homomorphism::new(dom, cod, f)?);
        structure.push(d);
    }
    Ok(HomGroup {
        dom: dom.clone(),
        cod: cod.clone(),
        generators,
        structure,
    })
}

/// Every homomorphism `dom → cod`, by enumerating generator images.
///
/// Assignments are visited lexicographically in the codomain's element order.
/// Fails with [`Error::OracleInfeasible`] instead of truncating.
pub fn enumerate_homs(dom: &FPModule, cod: &FPModule, cap: u64) -> Result<Vec<Homomorphism>> {
    dom.ring().ensure_same(cod.ring())?;
    let order = cod
        .order()
        .ok_or_else(|| Error::InfiniteModule("hom enumeration".into()))?;
    let a = dom.n_gens();
    let count = num_traits::pow(order, a);
    if count > BigInt::from(cap) {
        return Err(Error::OracleInfeasible {
            what: "generator-image assignments".into(),
            cardinality: count.to_string(),
            cap,
        });
    }
    let elems = cod.element_coords(cap)?;
    let rels = dom.relation_lattice().basis();
    let b = cod.n_gens();
    let mut idx = vec![0usize; a];
    let mut out = Vec::new();
    loop {
        let well_defined = rels.iter().all(|r| {
            let mut img = vec![BigInt::zero(); b];
            for (k, coeff) in r.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (x, y) in img.iter_mut().zip(&elems[idx[k]]) {
                    *x += coeff * y;
                }
            }
            cod.is_zero_vector(&img)
        });
        if well_defined {
            let cols: Vec<Vec<BigInt>> = idx.iter().map(|&i| elems[i].clone()).collect();
            out.push(Homomorphism::new(dom, cod, IntMatrix::from_columns(b, &cols)?)?);
        }
        let mut i = a;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;
    use crate::ring::RingDesc;

    fn cyclic(ring: RingDesc, d: i64) -> FPModule {
        FPModule::from_invariant_factors(ring, &big_vec(&[d])).unwrap()
    }

    fn structure(h: &HomGroup) -> Vec<i64> {
        h.structure.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn hom_z4_z6() {
        let h = hom_group(
            &cyclic(RingDesc::Integers, 4),
            &cyclic(RingDesc::Integers, 6),
        )
        .unwrap();
        assert_eq!(structure(&h), vec![2]);
        assert_eq!(h.generators[0].matrix(), &IntMatrix::from_rows(&[vec![3]]).unwrap());
    }

    #[test]
    fn hom_z_z() {
        let z = FPModule::free(RingDesc::Integers, 1);
        let h = hom_group(&z, &z).unwrap();
        assert_eq!(structure(&h), vec![0]);
        assert_eq!(h.generators[0], z.identity());
    }

    #[test]
    fn hom_over_z4() {
        let r = RingDesc::IntegersMod(4);
        let h = hom_group(&cyclic(r.clone(), 2), &FPModule::free(r, 1)).unwrap();
        assert_eq!(structure(&h), vec![2]);
        assert_eq!(h.generators[0].matrix(), &IntMatrix::from_rows(&[vec![2]]).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let z = RingDesc::Integers;
        assert_eq!(enumerate_homs(&cyclic(z.clone(), 2), &cyclic(z.clone(), 2), 100).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&cyclic(z.clone(), 4), &cyclic(z.clone(), 6), 100).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&cyclic(z.clone(), 2), &cyclic(z.clone(), 3), 100).unwrap().len(), 1);
        let err = enumerate_homs(&cyclic(z.clone(), 2), &cyclic(z, 300), 100).unwrap_err();
        assert!(matches!(err, Error::OracleInfeasible { .. }));
    }

    #[test]
    fn kernels() {
        let r = RingDesc::IntegersMod(4);
        let m = FPModule::free(r, 1);
        let double = Homomorphism::new(&m, &m, IntMatrix::from_rows(&[vec![2]]).unwrap()).unwrap();
        assert_eq!(
            kernel_of_hom(&double),
            Submodule::from_elements(&m, &[big_vec(&[2])]).unwrap()
        );
        assert!(kernel_of_hom(&Homomorphism::zero(&m, &m).unwrap()).is_whole());
        assert!(kernel_of_hom(&m.identity()).is_zero());
    }

    #[test]
    fn zero_modules_have_no_homs() {
        let z = RingDesc::Integers;
        let zero = FPModule::zero(z.clone());
        let m = cyclic(z, 5);
        assert!(hom_group(&zero, &m).unwrap().is_zero());
        assert!(hom_group(&m, &zero).unwrap().is_zero());
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        let z = RingDesc::Integers;
        // 1 ↦ 1 from Z/2 to Z/3 does not respect 2 = 0.
        let err = Homomorphism::new(
            &cyclic(z.clone(), 2),
            &cyclic(z, 3),
            IntMatrix::from_rows(&[vec![1]]).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotWellDefined { column: 0 });
    }

    #[test]
    fn ring_mismatch() {
        let a = cyclic(RingDesc::Integers, 2);
        let b = FPModule::free(RingDesc::IntegersMod(2), 1);
        assert!(matches!(hom_group(&a, &b), Err(Error::RingMismatch { .. })));
    }
}
