//! Process-wide catalog cache: a catalog is read from disk when one is
//! supplied and otherwise enumerated once.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use tk_core::enumerate::{enumerate_chain, Catalog, ParentRule, DEFAULT_ENUM_BOUND};

use crate::error::{invalid, Result};
use crate::params::Params;

type Cache = Mutex<BTreeMap<usize, Arc<Catalog>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn catalog_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("cat{n}.tkc"))
}

/// Reads and validates a `.tkc` file.
pub fn load(path: &Path) -> Result<Catalog> {
    let c = Catalog::read(path)?;
    c.validate()?;
    Ok(c)
}

/// The `n`-vertex catalog, taken from `params.catalog` or
/// `params.catalog_dir` when they provide it, else enumerated.
pub fn catalog(n: usize, params: &Params) -> Result<Arc<Catalog>> {
    if let Some(path) = &params.catalog {
        let c = load(path)?;
        if c.n() == n {
            return Ok(Arc::new(c));
        }
    }
    if let Some(dir) = &params.catalog_dir {
        let path = catalog_file(dir, n);
        if path.exists() {
            return Ok(Arc::new(load(&path)?));
        }
    }
    enumerated(n)
}

/// Enumerated catalog, shared across calls.
pub fn enumerated(n: usize) -> Result<Arc<Catalog>> {
    if n == 0 || n > DEFAULT_ENUM_BOUND {
        return Err(invalid(format!("catalogs exist for 1..={DEFAULT_ENUM_BOUND}, got {n}")));
    }
    let mut map = cache().lock().expect("catalog cache poisoned");
    if let Some(c) = map.get(&n) {
        return Ok(Arc::clone(c));
    }
    let start = map.range(..n).next_back().map(|(_, c)| Arc::clone(c));
    let mut chain = match start {
        Some(c) => vec![(*c).clone()],
        None => enumerate_chain(1, ParentRule::LastVertex, DEFAULT_ENUM_BOUND)?,
    };
    while chain.last().expect("non-empty").n() < n {
        let next = tk_core::enumerate::extend_catalog(chain.last().expect("non-empty"), ParentRule::LastVertex)?;
        chain.push(next);
    }
    for c in chain {
        map.entry(c.n()).or_insert_with(|| Arc::new(c));
    }
    Ok(Arc::clone(&map[&n]))
}
