//! The finite quotient of the Davis complex by the kernel of a map to an
//! elementary abelian 2-group.
//!
//! Cells are pairs `(q, V0 < V1 < ... < Vm)`: a strictly increasing chain of
//! spherical subsets (the empty set allowed as `V0`) and an element `q` of
//! the image group taken modulo the image of `<V0>`. The boundary drops
//! one subset at a time with alternating signs; dropping `V0` coarsens `q`
//! to a class modulo the image of `<V1>`.

use num_rational::BigRational;
use std::collections::HashMap;

use super::{chiswell_euler, echelon, reduce, span, torsion_free_kernel_check, TwoGroupHom};
use crate::coxeter::CoxeterSystem;
use crate::homology::{DeltaComplexData, SparseMatrix};
use crate::simplicial::is_subset;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DavisQuotientCells {
    pub data: DeltaComplexData,
    /// Order of the image group, the index of the kernel.
    pub index: u64,
    /// Euler characteristic of the group, for comparison with the cells.
    pub group_euler: BigRational,
}

impl DavisQuotientCells {
    pub fn euler_characteristic(&self) -> i64 {
        self.data.euler_characteristic()
    }
}

fn chains_from(start: usize, supersets: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    chain.push(start);
    out.push(chain.clone());
    for &next in &supersets[start] {
        chains_from(next, supersets, chain, out);
    }
    chain.pop();
}

pub fn davis_quotient(sys: &CoxeterSystem, psi: &TwoGroupHom) -> Result<DavisQuotientCells> {
    if !torsion_free_kernel_check(sys, psi)? {
        return Err(Error::Precondition("the homomorphism is not injective on some spherical subgroup".into()));
    }
    let images = psi.images_for(sys.names())?;
    let subsets = sys.spherical_subsets();
    let bases: Vec<Vec<u64>> = subsets.iter().map(|s| echelon(&s.iter().map(|&g| images[g]).collect::<Vec<_>>())).collect();
    let image = span(&psi.image_basis());
    let supersets: Vec<Vec<usize>> = (0..subsets.len())
        .map(|i| {
            (0..subsets.len())
                .filter(|&j| subsets[j].len() > subsets[i].len() && is_subset(&subsets[i], &subsets[j]))
                .collect()
        })
        .collect();
    let mut chains = Vec::new();
    for start in 0..subsets.len() {
        chains_from(start, &supersets, &mut Vec::new(), &mut chains);
    }
    let top = chains.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut chains_by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for c in chains {
        chains_by_dim[c.len() - 1].push(c);
    }
    let mut index: Vec<HashMap<(u64, Vec<usize>), usize>> = Vec::with_capacity(top + 1);
    let mut cells: Vec<Vec<(u64, Vec<usize>)>> = Vec::with_capacity(top + 1);
    for by_dim in &chains_by_dim {
        let mut list = Vec::new();
        for chain in by_dim {
            let basis = &bases[chain[0]];
            let mut reps: Vec<u64> = image.iter().map(|&q| reduce(q, basis)).collect();
            reps.sort_unstable();
            reps.dedup();
            list.extend(reps.into_iter().map(|q| (q, chain.clone())));
        }
        index.push(list.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
        cells.push(list);
    }
    let mut boundaries = Vec::with_capacity(top);
    for m in 1..=top {
        let columns = cells[m]
            .iter()
            .map(|(q, chain)| {
                (0..chain.len())
                    .map(|i| {
                        let mut face: Vec<usize> = chain.clone();
                        face.remove(i);
                        let q = if i == 0 { reduce(*q, &bases[face[0]]) } else { *q };
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (index[m - 1][&(q, face)], sign)
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(cells[m - 1].len(), columns));
    }
    let data = DeltaComplexData::new(cells.iter().map(Vec::len).collect(), boundaries)?;
    Ok(DavisQuotientCells { data, index: image.len() as u64, group_euler: chiswell_euler(sys) })
}
