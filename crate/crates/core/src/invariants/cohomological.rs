//! Cup-length and the Toomer invariant of an elliptic pure algebra, from
//! its certified cohomology.

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::linalg::bareiss;
use crate::linalg::cohomology::{cohomology, euler_characteristics, CohomologySlice};
use crate::linalg::membership::{certify_membership, Membership};
use crate::linalg::slice::{DegreeSlice, SliceFilter, SliceMap};
use crate::linalg::ExactVec;
use crate::model::SullivanModel;

/// Certified cohomology `H^0 … H^{fd+1}` of an elliptic pure model, with the
/// Poincaré-duality checks that make the fundamental class well defined.
#[derive(Clone, Debug)]
pub struct FullCohomology {
    pub formal_dimension: u32,
    pub slices: Vec<CohomologySlice>,
}

impl FullCohomology {
    pub fn compute(model: &SullivanModel, caps: &Caps) -> Result<FullCohomology> {
        let fd = model.formal_dimension();
        if fd < 0 {
            return Err(Error::Unsupported(format!("formal dimension {fd} is negative")));
        }
        let fd = fd as u32;
        let slices = cohomology(model, fd + 1, caps)?;
        let top = &slices[fd as usize];
        if top.betti != 1 || slices[fd as usize + 1].betti != 0 {
            return Err(Error::Unsupported(format!(
                "H^{fd} has dimension {} (and H^{} has {}): not a Poincaré-duality instance",
                top.betti,
                fd + 1,
                slices[fd as usize + 1].betti
            )));
        }
        Ok(FullCohomology {
            formal_dimension: fd,
            slices,
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.slices[..=self.formal_dimension as usize].iter().map(|s| s.betti).collect()
    }

    pub fn poincare_duality_holds(&self) -> bool {
        let b = self.betti();
        let fd = self.formal_dimension as usize;
        (0..=fd).all(|m| b[m] == b[fd - m]) && b[0] == 1 && b[fd] == 1
    }

    pub fn euler_consistent(&self) -> bool {
        let (a, b) = euler_characteristics(&self.slices[..=self.formal_dimension as usize]);
        a == b
    }

    pub fn fundamental_class(&self) -> Polynomial {
        self.slices[self.formal_dimension as usize].representative_polys()[0].clone()
    }
}

/// A growing subspace of class-coordinate vectors, with the cocycles that
/// realise a basis of it.
struct ClassSpan {
    rows: Vec<Vec<Rational>>,
    cocycles: Vec<Polynomial>,
}

impl ClassSpan {
    fn new() -> Self {
        ClassSpan {
            rows: Vec::new(),
            cocycles: Vec::new(),
        }
    }

    fn insert(&mut self, coords: Vec<Rational>, cocycle: Polynomial) {
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        let width = coords.len();
        self.rows.push(coords);
        if bareiss::rank(&self.rows, width) < self.rows.len() {
            self.rows.pop();
        } else {
            self.cocycles.push(cocycle);
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Largest t such that some product of t positive-degree classes is
/// nonzero. `P_1 = H^+`, `P_{t+1} = H^+ · P_t`, each kept as a basis of
/// classes per degree.
pub fn cup_length(h: &FullCohomology, model: &SullivanModel) -> Result<u32> {
    let gens = model.generators();
    let fd = h.formal_dimension as usize;
    let reps: Vec<Vec<Polynomial>> = h.slices.iter().map(|s| s.representative_polys()).collect();
    let mut current: Vec<ClassSpan> = (0..=fd)
        .map(|m| {
            let mut span = ClassSpan::new();
            if m > 0 {
                for r in &reps[m] {
                    span.insert(h.slices[m].class_of(r).expect("representative lies in its slice"), r.clone());
                }
            }
            span
        })
        .collect();
    if current.iter().all(|s| s.dim() == 0) {
        return Ok(0);
    }
    let mut t = 1;
    loop {
        let mut next: Vec<ClassSpan> = (0..=fd).map(|_| ClassSpan::new()).collect();
        for a in 1..=fd {
            for r in &reps[a] {
                for (b, span) in current.iter().enumerate() {
                    if a + b > fd {
                        break;
                    }
                    for q in &span.cocycles {
                        let prod = gens.mul(r, q)?;
                        if prod.is_zero() {
                            continue;
                        }
                        let coords = h.slices[a + b].class_of(&prod)?;
                        next[a + b].insert(coords, prod);
                    }
                }
            }
        }
        if next.iter().all(|s| s.dim() == 0) {
            return Ok(t);
        }
        current = next;
        t += 1;
    }
}

/// Toomer invariant on the fundamental class: the least m for which ω is
/// not in `B^fd + Λ^{>m}`. Returns m and, for the record, the functional
/// certifying the non-membership at m.
pub fn toomer_invariant(h: &FullCohomology, model: &SullivanModel, caps: &Caps) -> Result<(u32, ExactVec)> {
    let fd = h.formal_dimension;
    if fd == 0 {
        return Ok((0, Vec::new()));
    }
    let gens = model.generators();
    let top = DegreeSlice::enumerate(gens, fd, SliceFilter::All, caps)?;
    let below = DegreeSlice::enumerate(gens, fd - 1, SliceFilter::All, caps)?;
    let d = SliceMap::differential(model, &below, &top)?;
    let omega = top.coordinates(&h.fundamental_class())?;
    let max_wl = top.basis().iter().map(|m| m.word_length()).max().unwrap_or(0);
    for m in 1..=max_wl {
        // Quotient by Λ^{>m}: keep only coordinates of word-length ≤ m.
        let keep: Vec<Option<usize>> = {
            let mut next = 0;
            top.basis()
                .iter()
                .map(|mono| {
                    (mono.word_length() <= m).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let dim = keep.iter().flatten().count();
        let project = |v: &ExactVec| -> ExactVec {
            v.iter().filter_map(|(i, c)| keep[*i].map(|j| (j, c.clone()))).collect()
        };
        let columns: Vec<ExactVec> = d.columns.iter().map(project).filter(|c| !c.is_empty()).collect();
        let target = project(&omega);
        if target.is_empty() {
            continue;
        }
        if let Membership::NonMember { functional } = certify_membership(dim, &columns, &target, caps)? {
            // Lift the functional back to the full slice (zero on Λ^{>m}).
            let back: Vec<usize> = keep.iter().enumerate().filter_map(|(i, k)| k.map(|_| i)).collect();
            let lifted = functional.into_iter().map(|(j, c)| (back[j], c)).collect();
            return Ok((m, lifted));
        }
    }
    Err(Error::Inconsistent("fundamental class is exact".into()))
}
