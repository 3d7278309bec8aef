//! Linear typing contexts and their disjoint merge.

use std::fmt;

use crate::error::IrError;
use crate::wire::WireType;

/// A wire variable. Variables are plain indices into a [`Context`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Slot `i` holds `Some(w)` iff variable `i` is in scope with type `w`.
///
/// Trailing absent slots carry no information, so equality ignores them.
#[derive(Debug, Clone, Default)]
pub struct Context {
    slots: Vec<Option<WireType>>,
}

impl Context {
    pub fn empty() -> Self {
        Context { slots: Vec::new() }
    }

    pub fn from_slots(slots: Vec<Option<WireType>>) -> Self {
        Context { slots }
    }

    pub fn slots(&self) -> &[Option<WireType>] {
        &self.slots
    }

    pub fn get(&self, v: VarId) -> Option<&WireType> {
        self.slots.get(v.0).and_then(Option::as_ref)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.get(v).is_some()
    }

    /// Number of variables in scope (each a single wire).
    pub fn wire_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.wire_count() == 0
    }

    /// Variables in scope, ascending. This is the wire order used by the semantics.
    pub fn vars(&self) -> impl Iterator<Item = (VarId, &WireType)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|w| (VarId(i), w)))
    }

    /// Position of `v` among the variables in scope.
    pub fn wire_index(&self, v: VarId) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some(self.slots[..v.0].iter().filter(|s| s.is_some()).count())
    }

    pub fn first_free(&self) -> VarId {
        VarId(self.slots.iter().position(Option::is_none).unwrap_or(self.slots.len()))
    }

    /// Smallest index above every slot ever present in this context.
    pub fn next_index(&self) -> usize {
        self.slots
            .iter()
            .rposition(Option::is_some)
            .map_or(0, |i| i + 1)
    }

    pub(crate) fn insert(&mut self, v: VarId, w: WireType) -> Result<(), WireType> {
        if self.slots.len() <= v.0 {
            self.slots.resize(v.0 + 1, None);
        }
        match &self.slots[v.0] {
            Some(existing) => Err(existing.clone()),
            None => {
                self.slots[v.0] = Some(w);
                Ok(())
            }
        }
    }

    pub(crate) fn remove(&mut self, v: VarId) -> Option<WireType> {
        self.slots.get_mut(v.0).and_then(Option::take)
    }

    fn trimmed(&self) -> &[Option<WireType>] {
        &self.slots[..self.next_index()]
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Context {}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match s {
                Some(w) => write!(f, "{w}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

/// A context that may have failed to merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OContext {
    Invalid,
    Valid(Context),
}

impl OContext {
    pub fn is_valid(&self) -> bool {
        matches!(self, OContext::Valid(_))
    }

    pub fn valid(self) -> Option<Context> {
        match self {
            OContext::Valid(c) => Some(c),
            OContext::Invalid => None,
        }
    }
}

impl From<Context> for OContext {
    fn from(c: Context) -> Self {
        OContext::Valid(c)
    }
}

/// Disjoint merge. `Invalid` when either side is `Invalid` or both define a slot.
pub fn merge(g1: &OContext, g2: &OContext) -> OContext {
    let (OContext::Valid(a), OContext::Valid(b)) = (g1, g2) else {
        return OContext::Invalid;
    };
    let len = a.slots.len().max(b.slots.len());
    let mut slots = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.slots.get(i).cloned().flatten();
        let y = b.slots.get(i).cloned().flatten();
        match (x, y) {
            (Some(_), Some(_)) => return OContext::Invalid,
            (s, None) | (None, s) => slots.push(s),
        }
    }
    OContext::Valid(Context { slots })
}

/// Merge of two valid contexts, `None` on overlap.
pub fn merge_ctx(a: &Context, b: &Context) -> Option<Context> {
    merge(&OContext::Valid(a.clone()), &OContext::Valid(b.clone())).valid()
}

/// Context holding exactly variable `x` of base type `w`.
pub fn singleton(x: VarId, w: WireType) -> Result<Context, IrError> {
    if !w.is_base() {
        return Err(IrError::NonBaseVariable { var: x, ty: w });
    }
    let mut slots = vec![None; x.0 + 1];
    slots[x.0] = Some(w);
    Ok(Context { slots })
}
