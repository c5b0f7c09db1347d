//! Partial assignments whose values live in a common number field, grown
//! one coordinate at a time through primitive extensions.

use crate::multipoly::MPoly;
use crate::numberfield::{embed, Adjoined, NFElement, NumberField};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Partial {
    pub field: Arc<NumberField>,
    pub coords: Vec<Option<NFElement>>,
}

impl Partial {
    pub fn empty(nvars: usize) -> Self {
        Partial {
            field: NumberField::rationals(),
            coords: vec![None; nvars],
        }
    }

    /// Assigns `var` to an adjoined root, moving every earlier value into
    /// the root's field.
    pub fn extend(&self, var: usize, adj: &Adjoined) -> Partial {
        let moved = !Arc::ptr_eq(&adj.field, &self.field);
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == var {
                    Some(adj.root.clone())
                } else if moved {
                    c.as_ref().map(|x| embed(x, &adj.theta_image))
                } else {
                    c.clone()
                }
            })
            .collect();
        Partial {
            field: adj.field.clone(),
            coords,
        }
    }

    /// Every polynomial vanishes at the assignment; all their variables
    /// must be assigned.
    pub fn satisfies<'a>(&self, polys: impl IntoIterator<Item = &'a MPoly>) -> bool {
        polys.into_iter().all(|p| {
            if p.is_zero() {
                return true;
            }
            if p.is_constant() {
                return false;
            }
            p.evaluate(&self.coords).expect("assigned").is_zero()
        })
    }

    pub fn complete(&self) -> Option<Vec<NFElement>> {
        self.coords.iter().cloned().collect()
    }
}
