//! Hereditarily finite sets, hash-consed.
//!
//! Every set is interned in a process-wide arena, so two handles are equal
//! exactly when the sets are extensionally equal. Element lists are kept
//! sorted by handle, which makes membership a binary search.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde_json::Value;

struct Arena {
    nodes: Vec<Arc<[u32]>>,
    index: HashMap<Arc<[u32]>, u32>,
}

fn arena() -> &'static RwLock<Arena> {
    static ARENA: OnceLock<RwLock<Arena>> = OnceLock::new();
    ARENA.get_or_init(|| {
        let empty: Arc<[u32]> = Arc::from(Vec::new());
        let mut index = HashMap::new();
        index.insert(empty.clone(), 0);
        RwLock::new(Arena { nodes: vec![empty], index })
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HfSet(u32);

impl HfSet {
    pub fn empty() -> HfSet {
        HfSet(0)
    }

    pub fn from_elements(elements: impl IntoIterator<Item = HfSet>) -> HfSet {
        let mut ids: Vec<u32> = elements.into_iter().map(|s| s.0).collect();
        ids.sort_unstable();
        ids.dedup();
        let key: Arc<[u32]> = Arc::from(ids);
        if let Some(&id) = arena().read().expect("arena lock").index.get(&key) {
            return HfSet(id);
        }
        let mut arena = arena().write().expect("arena lock");
        if let Some(&id) = arena.index.get(&key) {
            return HfSet(id);
        }
        let id = u32::try_from(arena.nodes.len()).expect("arena overflow");
        arena.nodes.push(key.clone());
        arena.index.insert(key, id);
        HfSet(id)
    }

    fn ids(&self) -> Arc<[u32]> {
        arena().read().expect("arena lock").nodes[self.0 as usize].clone()
    }

    pub fn elements(&self) -> Vec<HfSet> {
        self.ids().iter().map(|&id| HfSet(id)).collect()
    }

    pub fn len(&self) -> usize {
        self.ids().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// `element ∈ self`
    pub fn contains(&self, element: &HfSet) -> bool {
        self.ids().binary_search(&element.0).is_ok()
    }

    pub fn singleton(&self) -> HfSet {
        HfSet::from_elements([*self])
    }

    /// `x ∪ {x}`
    pub fn successor(&self) -> HfSet {
        let mut elements = self.elements();
        elements.push(*self);
        HfSet::from_elements(elements)
    }

    /// The only element of a singleton.
    pub fn sole_element(&self) -> Option<HfSet> {
        let ids = self.ids();
        (ids.len() == 1).then(|| HfSet(ids[0]))
    }

    /// Nested JSON arrays; elements ordered by their rendering so the output
    /// does not depend on interning order.
    pub fn to_json(&self) -> Value {
        let mut rendered: Vec<(String, Value)> = self
            .elements()
            .into_iter()
            .map(|e| {
                let v = e.to_json();
                (v.to_string(), v)
            })
            .collect();
        rendered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Value::Array(rendered.into_iter().map(|(_, v)| v).collect())
    }

    pub fn from_json(value: &Value) -> Option<HfSet> {
        let items = value.as_array()?;
        let elements = items.iter().map(HfSet::from_json).collect::<Option<Vec<_>>>()?;
        Some(HfSet::from_elements(elements))
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.debug_set().entries(self.elements()).finish()
    }
}

/// Cached chain `0, S(0), S(S(0)), ...` for a successor function.
pub(crate) struct Chain {
    sets: Mutex<Vec<HfSet>>,
    step: fn(&HfSet) -> HfSet,
}

impl Chain {
    pub(crate) const fn new(step: fn(&HfSet) -> HfSet) -> Chain {
        Chain { sets: Mutex::new(Vec::new()), step }
    }

    pub(crate) fn get(&self, k: usize) -> HfSet {
        let mut sets = self.sets.lock().expect("chain lock");
        if sets.is_empty() {
            sets.push(HfSet::empty());
        }
        while sets.len() <= k {
            let next = (self.step)(sets.last().expect("nonempty"));
            sets.push(next);
        }
        sets[k]
    }
}

pub(crate) static VON_NEUMANN: Chain = Chain::new(HfSet::successor);
pub(crate) static ZERMELO: Chain = Chain::new(HfSet::singleton);
