//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use fincohom_core::{FiniteAbelianGroup, FiniteGroup, GModule};

/// `G` acting trivially on `Z/m`.
pub fn trivial_module(g: FiniteGroup, m: i64) -> Arc<GModule> {
    Arc::new(GModule::trivial(Arc::new(g), FiniteAbelianGroup::cyclic(m)))
}
