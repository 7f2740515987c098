use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

const FREE: usize = usize::MAX;

/// Injective assignment of logical qubits to physical nodes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Mapping {
    pub fn empty(logical: usize, physical: usize) -> Self {
        Mapping {
            forward: vec![FREE; logical],
            inverse: vec![FREE; physical],
        }
    }

    /// `q -> v_q` for every logical qubit.
    pub fn identity(logical: usize, physical: usize) -> Self {
        assert!(logical <= physical);
        let mut m = Self::empty(logical, physical);
        for q in 0..logical {
            m.assign(q, q);
        }
        m
    }

    pub fn from_pairs(logical: usize, physical: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = Self::empty(logical, physical);
        for &(q, v) in pairs {
            m.assign(q, v);
        }
        m
    }

    pub fn logical_count(&self) -> usize {
        self.forward.len()
    }

    pub fn physical_count(&self) -> usize {
        self.inverse.len()
    }

    /// Place `q` on `v`. Both must currently be free.
    pub fn assign(&mut self, q: usize, v: usize) {
        assert!(self.forward[q] == FREE, "logical qubit {q} already placed");
        assert!(self.inverse[v] == FREE, "physical node {v} already occupied");
        self.forward[q] = v;
        self.inverse[v] = q;
    }

    #[inline]
    pub fn physical(&self, q: usize) -> Option<usize> {
        let v = self.forward[q];
        (v != FREE).then_some(v)
    }

    #[inline]
    pub fn logical(&self, v: usize) -> Option<usize> {
        let q = self.inverse[v];
        (q != FREE).then_some(q)
    }

    /// Physical node of a qubit that is known to be placed.
    #[inline]
    pub(crate) fn phys(&self, q: usize) -> usize {
        debug_assert!(self.forward[q] != FREE);
        self.forward[q]
    }

    pub fn is_mapped(&self, q: usize) -> bool {
        self.forward[q] != FREE
    }

    pub fn is_occupied(&self, v: usize) -> bool {
        self.inverse[v] != FREE
    }

    pub fn mapped_count(&self) -> usize {
        self.forward.iter().filter(|&&v| v != FREE).count()
    }

    pub fn is_complete(&self) -> bool {
        self.forward.iter().all(|&v| v != FREE)
    }

    /// Exchange whatever sits on physical nodes `u` and `v`.
    #[inline]
    pub fn swap_physical(&mut self, u: usize, v: usize) {
        let (a, b) = (self.inverse[u], self.inverse[v]);
        self.inverse[u] = b;
        self.inverse[v] = a;
        if a != FREE {
            self.forward[a] = v;
        }
        if b != FREE {
            self.forward[b] = u;
        }
    }

    /// `(logical, physical)` pairs in ascending logical order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != FREE)
            .map(|(q, &v)| (q, v))
            .collect()
    }

    pub(crate) fn inverse_slice(&self) -> &[usize] {
        &self.inverse
    }
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (q, v) in self.pairs() {
            map.entry(&format_args!("q{q}"), &format_args!("v{v}"));
        }
        map.finish()
    }
}

/// Serialized form: `{"physical_count": 20, "layout": {"0": 3, ...}}`.
#[derive(Serialize, Deserialize)]
struct MappingRepr {
    logical_count: usize,
    physical_count: usize,
    layout: BTreeMap<usize, usize>,
}

impl Serialize for Mapping {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MappingRepr {
            logical_count: self.logical_count(),
            physical_count: self.physical_count(),
            layout: self.pairs().into_iter().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mapping {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MappingRepr::deserialize(deserializer)?;
        let mut m = Mapping::empty(repr.logical_count, repr.physical_count);
        for (q, v) in repr.layout {
            if q >= repr.logical_count || v >= repr.physical_count || m.is_occupied(v) {
                return Err(D::Error::custom(format!("invalid placement q{q} -> v{v}")));
            }
            m.assign(q, v);
        }
        Ok(m)
    }
}
