//! Root data: lattices, roots, coroots, Weyl group actions, centers and
//! the extended Dynkin diagram with its fundamental-group symmetries.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::{identify, CartanType};
use crate::descriptor::Ambient;
use crate::error::{Error, Result};
use crate::linalg::{
    self, dot, dot_q, integer_kernel, integral, inverse, qmat_mul, rank_q, smith, to_q, to_qv,
    IMat, QMat, Rat,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub ctype: CartanType,
    /// Indices of this component's simple roots in the datum, in Bourbaki order.
    pub simple: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    simple_roots: IMat,
    simple_coroots: IMat,
    cartan: IMat,
    sym: Vec<i64>,
    components: Vec<Component>,
    pos_coeffs: IMat,
    pos_coroot_coeffs: IMat,
    pos_roots: IMat,
    pos_coroots: IMat,
    highest: Vec<usize>,
    central_cochars: IMat,
    derived_chars: IMat,
    root_coord: QMat,
    ambient: Option<Arc<Ambient>>,
    label: String,
}

/// A finite abelian group given by invariant factors, with representatives
/// of all its elements as rational covectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    pub invariants: Vec<i64>,
    #[serde(skip)]
    pub elements: Vec<Vec<Rat>>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> i64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Center {
    pub torus_rank: usize,
    pub component_group: FiniteAbelianGroup,
}

impl Center {
    /// Order of the finite part (number of connected components).
    pub fn component_count(&self) -> i64 {
        self.component_group.order()
    }
}

/// One element of the fundamental group, as a choice of minuscule node per
/// simple component (0 meaning the identity), together with its translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaElement {
    pub nodes: Vec<usize>,
    pub translation: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineDiagram {
    pub ctype: String,
    /// Marks of nodes 0..=l; node 0 is the affine node.
    pub marks: Vec<i64>,
    pub cartan: IMat,
    /// For each minuscule node j (node 0 first), the induced permutation of
    /// affine nodes: `perms[k][i]` is the image of node i.
    pub omega_nodes: Vec<usize>,
    pub perms: Vec<Vec<usize>>,
}

impl RootDatum {
    /// Builds a datum from simple roots (in X) and simple coroots (in X^vee).
    /// Components are identified and put into Bourbaki order.
    pub fn from_simple(
        rank: usize,
        simple_roots: IMat,
        simple_coroots: IMat,
        label: impl Into<String>,
    ) -> Result<Self> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::Invalid("roots and coroots differ in number".into()));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::Length { expected: rank, got: v.len() });
            }
        }
        let c0 = cartan_of(&simple_roots, &simple_coroots);
        for i in 0..l {
            if c0[i][i] != 2 {
                return Err(Error::Invalid(format!("<alpha_{i}, alpha_{i}^vee> != 2")));
            }
            for j in 0..l {
                if i != j && (c0[i][j] > 0 || (c0[i][j] == 0) != (c0[j][i] == 0)) {
                    return Err(Error::Invalid("pairings are not a Cartan matrix".into()));
                }
            }
        }
        if rank_q(&to_q(&simple_roots)) != l || rank_q(&to_q(&simple_coroots)) != l {
            return Err(Error::Invalid("simple roots are linearly dependent".into()));
        }

        // connected components, ordered by smallest member
        let mut comp_of = vec![usize::MAX; l];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for s in 0..l {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![s];
            comp_of[s] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                for j in 0..l {
                    if c0[i][j] != 0 && comp_of[j] == usize::MAX {
                        comp_of[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            groups.push(members);
        }

        let mut order = Vec::with_capacity(l);
        let mut components = Vec::new();
        for g in &groups {
            let sub: IMat = g
                .iter()
                .map(|&i| g.iter().map(|&j| c0[i][j]).collect())
                .collect();
            let (ctype, perm) = identify(&sub)?;
            let start = order.len();
            order.extend(perm.iter().map(|&p| g[p]));
            components.push(Component {
                ctype,
                simple: (start..start + g.len()).collect(),
            });
        }
        let simple_roots: IMat = order.iter().map(|&i| simple_roots[i].clone()).collect();
        let simple_coroots: IMat = order.iter().map(|&i| simple_coroots[i].clone()).collect();
        let cartan = cartan_of(&simple_roots, &simple_coroots);

        let sym = symmetrizer(&cartan, &components);
        let pos_coeffs = positive_root_coeffs(&cartan);
        let mut pos_coroot_coeffs = Vec::with_capacity(pos_coeffs.len());
        for c in &pos_coeffs {
            let norm: i64 = (0..l)
                .flat_map(|i| (0..l).map(move |j| (i, j)))
                .map(|(i, j)| c[i] * c[j] * sym[i] * cartan[i][j])
                .sum::<i64>()
                / 2;
            let cc: Vec<i64> = (0..l).map(|i| c[i] * sym[i] / norm).collect();
            pos_coroot_coeffs.push(cc);
        }
        let combine = |coeffs: &[i64], basis: &IMat| -> Vec<i64> {
            let mut v = vec![0i64; rank];
            for (k, &a) in coeffs.iter().enumerate() {
                if a != 0 {
                    for (t, x) in v.iter_mut().enumerate() {
                        *x += a * basis[k][t];
                    }
                }
            }
            v
        };
        let pos_roots: IMat = pos_coeffs.iter().map(|c| combine(c, &simple_roots)).collect();
        let pos_coroots: IMat = pos_coroot_coeffs
            .iter()
            .map(|c| combine(c, &simple_coroots))
            .collect();

        let highest = components
            .iter()
            .map(|comp| {
                let mut best = 0usize;
                let mut best_h = -1i64;
                for (k, c) in pos_coeffs.iter().enumerate() {
                    if comp.simple.iter().any(|&i| c[i] != 0) {
                        let h: i64 = c.iter().sum();
                        if h > best_h {
                            best_h = h;
                            best = k;
                        }
                    }
                }
                best
            })
            .collect();

        let central_cochars = if l == 0 {
            linalg::identity(rank)
        } else {
            integer_kernel(&simple_roots, rank)?
        };
        let derived_chars = if central_cochars.is_empty() {
            linalg::identity(rank)
        } else {
            integer_kernel(&central_cochars, rank)?
        };

        // left inverse of the simple-root matrix: (A^T A)^{-1} A^T
        let root_coord = if l == 0 {
            Vec::new()
        } else {
            let at = to_q(&simple_roots);
            let a = linalg::transpose(&at, rank);
            let ata = qmat_mul(&at, &a, rank, l);
            let inv = inverse(&ata).ok_or(Error::Invalid("degenerate root system".into()))?;
            qmat_mul(&inv, &at, l, rank)
        };

        Ok(RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            sym,
            components,
            pos_coeffs,
            pos_coroot_coeffs,
            pos_roots,
            pos_coroots,
            highest,
            central_cochars,
            derived_chars,
            root_coord,
            ambient: None,
            label: label.into(),
        })
    }

    pub fn with_ambient(mut self, ambient: Arc<Ambient>) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn ambient(&self) -> Option<&Arc<Ambient>> {
        self.ambient.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn central_torus_rank(&self) -> usize {
        self.rank - self.semisimple_rank()
    }

    pub fn simple_roots(&self) -> &IMat {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &IMat {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// Half squared lengths of the simple roots, short roots normalised to 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &IMat {
        &self.pos_roots
    }

    pub fn positive_coroots(&self) -> &IMat {
        &self.pos_coroots
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_root_coeffs(&self) -> &IMat {
        &self.pos_coeffs
    }

    pub fn positive_coroot_coeffs(&self) -> &IMat {
        &self.pos_coroot_coeffs
    }

    pub fn num_roots(&self) -> usize {
        2 * self.pos_roots.len()
    }

    /// All roots: positive roots followed by their negatives.
    pub fn roots(&self) -> IMat {
        let mut v = self.pos_roots.clone();
        v.extend(self.pos_roots.iter().map(|r| linalg::neg(r)));
        v
    }

    pub fn coroots(&self) -> IMat {
        let mut v = self.pos_coroots.clone();
        v.extend(self.pos_coroots.iter().map(|r| linalg::neg(r)));
        v
    }

    /// Index (into the positive roots) of the highest root of component `c`.
    pub fn highest_root(&self, c: usize) -> usize {
        self.highest[c]
    }

    /// Basis of the cocharacters orthogonal to every root.
    pub fn central_cochars(&self) -> &IMat {
        &self.central_cochars
    }

    /// Basis of `X ∩ span(roots)`.
    pub fn derived_chars(&self) -> &IMat {
        &self.derived_chars
    }

    pub fn check_len(&self, v: usize) -> Result<()> {
        if v == self.rank {
            Ok(())
        } else {
            Err(Error::Length { expected: self.rank, got: v })
        }
    }

    /// Dynkin labels `<λ, α_i^vee>`.
    pub fn dynkin(&self, w: &[i64]) -> Vec<i64> {
        self.simple_coroots.iter().map(|c| dot(w, c)).collect()
    }

    /// Pairings with the central cocharacter basis.
    pub fn central_weight(&self, w: &[i64]) -> Vec<i64> {
        self.central_cochars.iter().map(|c| dot(w, c)).collect()
    }

    pub fn is_dominant(&self, w: &[i64]) -> Result<bool> {
        self.check_len(w.len())?;
        Ok(self.dynkin(w).iter().all(|&x| x >= 0))
    }

    pub fn reflect(&self, w: &[i64], i: usize) -> Vec<i64> {
        let p = dot(w, &self.simple_coroots[i]);
        w.iter()
            .zip(&self.simple_roots[i])
            .map(|(a, b)| a - p * b)
            .collect()
    }

    pub fn dominant_conjugate(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        loop {
            let Some(i) = (0..self.semisimple_rank())
                .find(|&i| dot(&v, &self.simple_coroots[i]) < 0)
            else {
                return v;
            };
            v = self.reflect(&v, i);
        }
    }

    pub fn weyl_orbit(&self, w: &[i64]) -> Result<BTreeSet<Vec<i64>>> {
        self.check_len(w.len())?;
        let start = self.dominant_conjugate(w);
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                if dot(&v, &self.simple_coroots[i]) > 0 {
                    let u = self.reflect(&v, i);
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
        }
        Ok(seen)
    }

    pub fn weyl_group_order(&self) -> BigUint {
        self.components
            .iter()
            .fold(BigUint::one(), |acc, c| acc * c.ctype.weyl_order())
    }

    /// Label such as `D6+A1` or `B3+A1+T1`: components by rank descending,
    /// then letter, followed by the central torus rank.
    pub fn type_label(&self) -> String {
        let mut parts: Vec<CartanType> = self.components.iter().map(|c| c.ctype).collect();
        parts.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
        let mut out: Vec<String> = parts.iter().map(|t| t.to_string()).collect();
        let t = self.central_torus_rank();
        if t > 0 {
            out.push(format!("T{t}"));
        }
        if out.is_empty() {
            "T0".into()
        } else {
            out.join("+")
        }
    }

    /// Simple-root coordinates of `v`, if `v` lies in the root lattice.
    pub fn root_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let l = self.semisimple_rank();
        if l == 0 {
            return linalg::is_zero_vec(v).then(Vec::new);
        }
        let q = to_qv(v);
        let c: Vec<Rat> = self.root_coord.iter().map(|r| {
            r.iter().zip(&q).fold(Rat::zero(), |a, (x, y)| a + *x * *y)
        }).collect();
        let c = integral(&c)?;
        // confirm v is actually in the span
        let mut back = vec![0i64; self.rank];
        for (k, &a) in c.iter().enumerate() {
            for (t, x) in back.iter_mut().enumerate() {
                *x += a * self.simple_roots[k][t];
            }
        }
        (back == v).then_some(c)
    }

    /// Rational fundamental weights in X ⊗ Q, orthogonal to the central cocharacters.
    pub fn fundamental_weights(&self) -> QMat {
        let l = self.semisimple_rank();
        let mut m: IMat = self.simple_coroots.clone();
        m.extend(self.central_cochars.iter().cloned());
        let inv = inverse(&to_q(&m)).expect("coroots and central cocharacters span");
        (0..l).map(|i| inv.iter().map(|row| row[i]).collect()).collect()
    }

    /// Fundamental coweights in the rational span of the coroots.
    pub fn fundamental_coweights(&self) -> QMat {
        let l = self.semisimple_rank();
        if l == 0 {
            return Vec::new();
        }
        let cinv = inverse(&to_q(&self.cartan)).expect("Cartan matrix is invertible");
        (0..l)
            .map(|i| {
                let mut v = vec![Rat::zero(); self.rank];
                for j in 0..l {
                    for (t, x) in v.iter_mut().enumerate() {
                        *x += cinv[i][j] * Rat::from_integer(self.simple_coroots[j][t]);
                    }
                }
                v
            })
            .collect()
    }

    pub fn pair_root(&self, root: &[i64], x: &[Rat]) -> Rat {
        dot_q(root, x)
    }

    /// Center of the group: torus rank and the component group `torsion(X/Q)`.
    pub fn center(&self) -> Result<Center> {
        let l = self.semisimple_rank();
        let r = self.rank;
        if l == 0 {
            return Ok(Center {
                torus_rank: r,
                component_group: FiniteAbelianGroup { invariants: vec![], elements: vec![vec![Rat::zero(); r]] },
            });
        }
        let m: IMat = (0..r).map(|k| (0..l).map(|i| self.simple_roots[i][k]).collect()).collect();
        let s = smith(&m, r, l)?;
        let mut invariants = Vec::new();
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d > 1 {
                invariants.push(d);
                gens.push(s.u[i].iter().map(|&x| Rat::new(x, d)).collect());
            }
        }
        let elements = enumerate_group(&invariants, &gens, r);
        Ok(Center {
            torus_rank: r - l,
            component_group: FiniteAbelianGroup { invariants, elements },
        })
    }

    /// `P^vee / Q^vee` of the semisimple part, with minuscule coweight representatives.
    pub fn fundamental_group(&self) -> Result<FiniteAbelianGroup> {
        let l = self.semisimple_rank();
        let elements: Vec<Vec<Rat>> = self.omega_elements().into_iter().map(|o| o.translation).collect();
        if l == 0 {
            return Ok(FiniteAbelianGroup { invariants: vec![], elements });
        }
        let s = smith(&self.cartan, l, l)?;
        let invariants = s.diag.into_iter().filter(|&d| d > 1).collect();
        Ok(FiniteAbelianGroup { invariants, elements })
    }

    /// Brings a rational cocharacter into the closed fundamental alcove of
    /// each simple component using affine reflections.
    pub fn reduce_to_alcove(&self, x: &[Rat]) -> Vec<Rat> {
        let mut x = x.to_vec();
        let l = self.semisimple_rank();
        loop {
            let mut changed = false;
            for i in 0..l {
                let p = dot_q(&self.simple_roots[i], &x);
                if p < Rat::zero() {
                    for (t, v) in x.iter_mut().enumerate() {
                        *v -= p * Rat::from_integer(self.simple_coroots[i][t]);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            for c in 0..self.components.len() {
                let h = self.highest[c];
                let p = dot_q(&self.pos_roots[h], &x);
                if p > Rat::one() {
                    let k = p - Rat::one();
                    for (t, v) in x.iter_mut().enumerate() {
                        *v -= k * Rat::from_integer(self.pos_coroots[h][t]);
                    }
                    changed = true;
                }
            }
            if !changed {
                return x;
            }
        }
    }

    /// Every element of the fundamental group of the semisimple part.
    pub fn omega_elements(&self) -> Vec<OmegaElement> {
        let cw = self.fundamental_coweights();
        let per_comp: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| {
                let marks = c.ctype.marks();
                let mut v = vec![0usize];
                v.extend((0..marks.len()).filter(|&i| marks[i] == 1).map(|i| i + 1));
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_comp.len()];
        loop {
            let nodes: Vec<usize> = idx.iter().zip(&per_comp).map(|(&k, v)| v[k]).collect();
            let mut t = vec![Rat::zero(); self.rank];
            for (c, &j) in nodes.iter().enumerate() {
                if j > 0 {
                    let g = self.components[c].simple[j - 1];
                    for (a, b) in t.iter_mut().zip(&cw[g]) {
                        *a += *b;
                    }
                }
            }
            out.push(OmegaElement { nodes, translation: t });
            // odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < per_comp[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// Fundamental-group elements whose translation is integral on the
    /// derived character lattice, i.e. those realised inside this group.
    pub fn omega_x(&self) -> Vec<OmegaElement> {
        self.omega_elements()
            .into_iter()
            .filter(|o| {
                self.derived_chars
                    .iter()
                    .all(|lam| dot_q(lam, &o.translation).is_integer())
            })
            .collect()
    }

    /// Vertices of the fundamental alcove of component `c`: node 0 is the
    /// origin, node i is `ω_i^vee / a_i`.
    pub fn alcove_vertices(&self, c: usize) -> Vec<Vec<Rat>> {
        let cw = self.fundamental_coweights();
        let comp = &self.components[c];
        let marks = comp.ctype.marks();
        let mut v = vec![vec![Rat::zero(); self.rank]];
        for (k, &g) in comp.simple.iter().enumerate() {
            v.push(cw[g].iter().map(|x| *x / Rat::from_integer(marks[k])).collect());
        }
        v
    }

    /// Affine node permutation induced by the minuscule node `j` of component `c`.
    pub fn omega_permutation(&self, c: usize, j: usize) -> Vec<usize> {
        let verts = self.alcove_vertices(c);
        if j == 0 {
            return (0..verts.len()).collect();
        }
        let t = &verts[j];
        verts
            .iter()
            .map(|v| {
                let moved: Vec<Rat> = v.iter().zip(t).map(|(a, b)| *a + *b).collect();
                let red = self.reduce_to_alcove(&moved);
                verts.iter().position(|w| *w == red).expect("alcove vertex maps to a vertex")
            })
            .collect()
    }

    pub fn extended_diagram(&self) -> Result<Vec<AffineDiagram>> {
        if self.components.is_empty() {
            return Err(Error::Invalid("extended diagram needs a nonempty semisimple part".into()));
        }
        let mut out = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            let l = comp.simple.len();
            let h = self.highest[c];
            let theta = &self.pos_roots[h];
            let theta_v = &self.pos_coroots[h];
            let mut cart = vec![vec![0i64; l + 1]; l + 1];
            cart[0][0] = 2;
            for (a, &ga) in comp.simple.iter().enumerate() {
                cart[a + 1][0] = -dot(theta, &self.simple_coroots[ga]);
                cart[0][a + 1] = -dot(&self.simple_roots[ga], theta_v);
                for (b, &gb) in comp.simple.iter().enumerate() {
                    cart[a + 1][b + 1] = self.cartan[ga][gb];
                }
            }
            let mut marks = vec![1i64];
            marks.extend(comp.ctype.marks());
            let mut nodes = vec![0usize];
            nodes.extend((1..=l).filter(|&i| marks[i] == 1));
            let perms = nodes.iter().map(|&j| self.omega_permutation(c, j)).collect();
            out.push(AffineDiagram {
                ctype: comp.ctype.to_string(),
                marks,
                cartan: cart,
                omega_nodes: nodes,
                perms,
            });
        }
        Ok(out)
    }
}

fn cartan_of(roots: &IMat, coroots: &IMat) -> IMat {
    coroots
        .iter()
        .map(|cv| roots.iter().map(|r| dot(r, cv)).collect())
        .collect()
}

fn symmetrizer(c: &IMat, comps: &[Component]) -> Vec<i64> {
    let l = c.len();
    let mut d = vec![Rat::zero(); l];
    for comp in comps {
        let first = comp.simple[0];
        d[first] = Rat::one();
        let mut stack = vec![first];
        let mut seen: HashSet<usize> = HashSet::from([first]);
        while let Some(i) = stack.pop() {
            for &j in &comp.simple {
                if c[i][j] != 0 && seen.insert(j) {
                    d[j] = d[i] * Rat::new(c[i][j], c[j][i]);
                    stack.push(j);
                }
            }
        }
        let min = comp.simple.iter().map(|&i| d[i]).min().unwrap_or(Rat::one());
        for &i in &comp.simple {
            d[i] /= min;
        }
    }
    d.into_iter().map(|x| x.to_integer()).collect()
}

/// Positive roots in simple-root coordinates, by height, via root strings.
fn positive_root_coeffs(c: &IMat) -> IMat {
    let l = c.len();
    let mut roots: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..l {
            let pairing: i64 = (0..l).map(|j| beta[j] * c[i][j]).sum();
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if set.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if set.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| {
        a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a))
    });
    roots
}

fn enumerate_group(invariants: &[i64], gens: &[Vec<Rat>], r: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::zero(); r]];
    for (g, &d) in gens.iter().zip(invariants) {
        let mut next = Vec::new();
        for e in &out {
            for k in 0..d {
                next.push(
                    e.iter()
                        .zip(g)
                        .map(|(a, b)| linalg::frac(*a + *b * Rat::from_integer(k)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

/// Map from weight to multiplicity, used by several modules.
pub type WeightMap = BTreeMap<Vec<i64>, i64>;

#[cfg(test)]
mod tests {
    use crate::descriptor::build_datum;

    #[test]
    fn e7_counts() {
        let d = build_datum("E7:sc").unwrap();
        assert_eq!(d.positive_roots().len(), 63);
        assert_eq!(d.center().unwrap().component_count(), 2);
        assert_eq!(d.fundamental_group().unwrap().order(), 2);
        assert_eq!(d.type_label(), "E7");
    }

    #[test]
    fn affine_e7_omega_swaps_ends() {
        let d = build_datum("E7:sc").unwrap();
        let ext = d.extended_diagram().unwrap();
        assert_eq!(ext[0].perms[1], vec![7, 6, 2, 5, 4, 3, 1, 0]);
    }

    #[test]
    fn symmetrizer_b3() {
        let d = build_datum("B3:sc").unwrap();
        assert_eq!(d.symmetrizer(), &[2, 2, 1]);
    }
}
