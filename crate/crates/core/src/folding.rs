//! Folding a simply-laced root system by a group of diagram automorphisms.
//!
//! The folded system lives on the invariant subspace: its roots are the
//! group averages of the source roots and its inner product is the
//! restriction of the source one. Its simple roots are the averages of the
//! source simple roots, one per node orbit.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::iso;
use crate::rational::{int, ratio, Rational};
use crate::root_system::{standard_cartan, Family, Root, RootSystem, RootSystemType};

/// A permutation of the nodes preserving the Cartan matrix; node `i` is sent
/// to `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
        }
    }

    /// Validates that `perm` is a permutation preserving `rs`'s Cartan matrix.
    pub fn new(rs: &RootSystem, perm: Vec<usize>) -> Result<Self> {
        let n = rs.rank();
        let distinct: BTreeSet<_> = perm.iter().copied().collect();
        if perm.len() != n || distinct.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::Folding(format!("{perm:?} is not a permutation of {n} nodes")));
        }
        let c = rs.cartan();
        if (0..n).any(|i| (0..n).any(|j| c[perm[i]][perm[j]] != c[i][j])) {
            return Err(Error::Folding(format!("{perm:?} does not preserve the diagram")));
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = g.compose(self);
            k += 1;
        }
        k
    }

    /// `g(sum b_i alpha_i) = sum b_i alpha_{g(i)}`.
    pub fn apply_root(&self, beta: &Root) -> Root {
        let mut out = vec![0; beta.0.len()];
        for (i, &b) in beta.0.iter().enumerate() {
            out[self.perm[i]] = b;
        }
        Root(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = x.clone();
        }
        out
    }
}

/// The full diagram automorphism group, identity first.
pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<DiagramAutomorphism> {
    iso::automorphisms(rs.cartan())
        .into_iter()
        .map(|perm| DiagramAutomorphism { perm })
        .collect()
}

/// Closure of `gens` under composition (always contains the identity).
pub fn generate_group(n: usize, gens: &[DiagramAutomorphism]) -> Vec<DiagramAutomorphism> {
    let mut group: BTreeSet<DiagramAutomorphism> = BTreeSet::new();
    group.insert(DiagramAutomorphism::identity(n));
    let mut frontier = vec![DiagramAutomorphism::identity(n)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    group.into_iter().collect()
}

/// Every nontrivial subgroup of the diagram automorphism group. The groups
/// involved have order at most 6, so subgroups generated by at most two
/// elements are all of them.
pub fn nontrivial_subgroups(rs: &RootSystem) -> Vec<Vec<DiagramAutomorphism>> {
    let n = rs.rank();
    let all = diagram_automorphisms(rs);
    let mut seen: BTreeSet<Vec<DiagramAutomorphism>> = BTreeSet::new();
    for a in &all {
        for b in &all {
            let g = generate_group(n, &[a.clone(), b.clone()]);
            if g.len() > 1 {
                seen.insert(g);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct FoldedSystem {
    source: RootSystem,
    phi: Vec<DiagramAutomorphism>,
    orbits: Vec<Vec<usize>>,
    folded: RootSystem,
}

impl FoldedSystem {
    pub fn source(&self) -> &RootSystem {
        &self.source
    }

    pub fn phi(&self) -> &[DiagramAutomorphism] {
        &self.phi
    }

    /// Node orbits; orbit `a` is the index set of folded simple root `a`.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn folded(&self) -> &RootSystem {
        &self.folded
    }

    /// Coefficients of the average of `beta` over the folded simple roots.
    pub fn project(&self, beta: &Root) -> Root {
        Root(
            self.orbits
                .iter()
                .map(|orbit| orbit.iter().map(|&i| beta.0[i]).sum())
                .collect(),
        )
    }

    /// The group average of `beta`, in source coordinates.
    pub fn average(&self, beta: &Root) -> Vec<Rational> {
        let n = self.source.rank();
        let mut acc = vec![Rational::zero(); n];
        for g in &self.phi {
            for (i, c) in g.apply_root(beta).0.iter().enumerate() {
                acc[i] += int(*c);
            }
        }
        let k = ratio(1, self.phi.len() as i64);
        acc.iter().map(|x| x * &k).collect()
    }

    /// Distinct images of `beta` under the group.
    pub fn orbit(&self, beta: &Root) -> Vec<Root> {
        let set: BTreeSet<Root> = self.phi.iter().map(|g| g.apply_root(beta)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer_order(&self, beta: &Root) -> usize {
        self.phi.iter().filter(|g| &g.apply_root(beta) == beta).count()
    }

    /// Renumbers the folded nodes: new node `a` is old node `perm[a]`.
    fn relabeled(self, perm: &[usize], rstype: RootSystemType) -> Result<FoldedSystem> {
        let folded = self.folded.permuted(perm, rstype)?;
        let orbits = perm.iter().map(|&a| self.orbits[a].clone()).collect();
        Ok(FoldedSystem {
            folded,
            orbits,
            ..self
        })
    }
}

/// Folds a simply-laced `rs` by the automorphism group `phi`.
pub fn fold(rs: &RootSystem, phi: &[DiagramAutomorphism]) -> Result<FoldedSystem> {
    if !rs.is_normalized_simply_laced() {
        return Err(Error::Folding("source must be simply laced with norm-2 roots".into()));
    }
    let n = rs.rank();
    let phi: Vec<DiagramAutomorphism> = {
        let set: BTreeSet<_> = phi.iter().cloned().collect();
        set.into_iter().collect()
    };
    for g in &phi {
        DiagramAutomorphism::new(rs, g.perm.clone())?;
    }
    if phi.len() <= 1 {
        return Err(Error::Folding("the automorphism group is trivial".into()));
    }
    if generate_group(n, &phi).len() != phi.len() {
        return Err(Error::Folding("the automorphisms are not closed under composition".into()));
    }

    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = phi.iter().map(|g| g.perm[i]).collect();
        for &j in &orbit {
            seen[j] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }

    let m = orbits.len();
    let gram: Vec<Vec<Rational>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let sum: Rational = orbits[a]
                        .iter()
                        .flat_map(|&i| orbits[b].iter().map(move |&j| (i, j)))
                        .map(|(i, j)| rs.gram()[i][j].clone())
                        .sum();
                    sum / int((orbits[a].len() * orbits[b].len()) as i64)
                })
                .collect()
        })
        .collect();

    let mut cartan = vec![vec![0i64; m]; m];
    for a in 0..m {
        for b in 0..m {
            let c = &gram[a][b] * int(2) / &gram[b][b];
            if !c.is_integer() {
                return Err(Error::Folding("averaged simple roots do not form a root basis".into()));
            }
            cartan[a][b] = crate::rational::to_i64(&c).expect("small integer");
        }
    }
    let (rstype, perm) = classify(&cartan)
        .ok_or_else(|| Error::Folding("averaged simple roots have no finite-type Cartan matrix".into()))?;

    let provisional = FoldedSystem {
        source: rs.clone(),
        phi,
        folded: RootSystem::from_gram(provisional_type(m), gram)?,
        orbits,
    };
    let fs = provisional.relabeled(&perm, rstype)?;

    let projected: BTreeSet<Root> = fs.source.positive_roots().iter().map(|b| fs.project(b)).collect();
    let folded_roots: BTreeSet<Root> = fs.folded.positive_roots().iter().cloned().collect();
    if projected != folded_roots {
        return Err(Error::Folding(
            "averaged roots do not form a reduced root system".into(),
        ));
    }
    Ok(fs)
}

// `from_gram` only checks the rank against the label, so any valid type of
// the right rank serves until the system is recognised.
fn provisional_type(rank: usize) -> RootSystemType {
    RootSystemType::new(Family::A, rank).expect("A_n exists for every rank")
}

/// Recognises a Cartan matrix, returning its type and the relabeling onto
/// Bourbaki numbering. Rank-2 double bonds are reported as `C2`.
pub fn classify(cartan: &[Vec<i64>]) -> Option<(RootSystemType, Vec<usize>)> {
    let n = cartan.len();
    for family in [
        Family::G,
        Family::F,
        Family::C,
        Family::B,
        Family::A,
        Family::D,
        Family::E,
    ] {
        let Ok(t) = RootSystemType::new(family, n) else {
            continue;
        };
        if let Some(perm) = iso::find_isomorphism(cartan, &standard_cartan(t)) {
            return Some((t, perm));
        }
    }
    None
}

/// `epsilon` of the folded system equals that of its source.
pub fn verify_epsilon_invariance(fs: &FoldedSystem) -> bool {
    fs.folded.epsilon() == fs.source.epsilon()
}

/// The sum over the orbit of `beta` equals the coroot of its average.
pub fn verify_orbit_sum_lemma(fs: &FoldedSystem, beta: &Root) -> Result<bool> {
    fs.source
        .root_index(beta)
        .ok_or_else(|| Error::NotARoot(beta.0.clone()))?;
    let n = fs.source.rank();
    let mut orbit_sum = vec![Rational::zero(); n];
    for b in fs.orbit(beta) {
        for (acc, c) in orbit_sum.iter_mut().zip(&b.0) {
            *acc += int(*c);
        }
    }
    let coroot = fs.source.coroot(&fs.average(beta))?;
    Ok(orbit_sum == coroot)
}

/// `<beta, g beta> = 0` for every `g` moving `beta`.
pub fn verify_orbit_orthogonality(fs: &FoldedSystem, beta: &Root) -> Result<bool> {
    fs.source
        .root_index(beta)
        .ok_or_else(|| Error::NotARoot(beta.0.clone()))?;
    Ok(fs
        .phi
        .iter()
        .map(|g| g.apply_root(beta))
        .filter(|image| image != beta)
        .all(|image| fs.source.pair_roots(beta, &image).is_zero()))
}

/// `<avg beta, avg beta> = 2 stab(beta) / |Phi|`, computed both in source
/// coordinates and through the folded Gram matrix.
pub fn verify_norm_formula(fs: &FoldedSystem, beta: &Root) -> Result<bool> {
    let avg = fs.average(beta);
    let direct = fs.source.pairing(&avg, &avg)?;
    let folded = fs.folded.root_norm(&fs.project(beta));
    let expected = ratio(2 * fs.stabilizer_order(beta) as i64, fs.phi.len() as i64);
    Ok(direct == expected && folded == expected)
}

/// Builds a non-simply-laced type from its standard folding:
/// `A_{2n-1} -> C_n`, `D_{n+1} -> B_n`, `E_6 -> F_4`, `D_4 -> G_2` (by `Z_3`).
/// `B_2` is `C_2` with its two nodes swapped.
pub fn build_folded_type(t: RootSystemType) -> Result<FoldedSystem> {
    let n = t.rank();
    let ade = |f: Family, r: usize| RootSystem::build_ade(RootSystemType::new(f, r)?);
    match t.family() {
        Family::C => {
            let src = ade(Family::A, 2 * n - 1)?;
            let phi = full_group(&src);
            fold(&src, &phi)
        }
        Family::B if n == 2 => {
            let c2 = build_folded_type(RootSystemType::new(Family::C, 2)?)?;
            c2.relabeled(&[1, 0], t)
        }
        Family::B => {
            let src = ade(Family::D, n + 1)?;
            // swap of the two short-arm end nodes
            let swap = diagram_automorphisms(&src)
                .into_iter()
                .find(|g| g.perm[n - 1] == n && g.perm[n] == n - 1 && g.perm[..n - 1].iter().enumerate().all(|(i, &p)| i == p))
                .ok_or_else(|| Error::Folding("missing D_{n+1} swap".into()))?;
            fold(&src, &generate_group(n + 1, &[swap]))
        }
        Family::F => {
            let src = ade(Family::E, 6)?;
            let phi = full_group(&src);
            fold(&src, &phi)
        }
        Family::G => {
            let src = ade(Family::D, 4)?;
            let rotation = diagram_automorphisms(&src)
                .into_iter()
                .find(|g| g.order() == 3)
                .ok_or_else(|| Error::Folding("missing D_4 triality".into()))?;
            fold(&src, &generate_group(4, &[rotation]))
        }
        _ => Err(Error::InvalidArgument(format!("{t} is simply laced; nothing to fold"))),
    }
}

fn full_group(rs: &RootSystem) -> Vec<DiagramAutomorphism> {
    diagram_automorphisms(rs)
}
