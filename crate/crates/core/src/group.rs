//! Finite groups used as arc labels.
//!
//! Three families are supported: cyclic groups `Z_n`, symmetric groups
//! `Sym_n` (capped at `n <= 8`) and finite direct products of these. Elements
//! carry a shared handle to their [`GroupSpec`] so that arithmetic across
//! different groups is caught at runtime.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{EpError, Result};

/// Largest symmetric group we are willing to enumerate.
pub const MAX_SYMMETRIC_DEGREE: u8 = 8;

/// Description of a finite group.
///
/// The serde representation is the one used in graph files:
/// `{"cyclic": n}`, `{"symmetric": n}` or `{"product": [spec, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u8),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(0) => Err(EpError::InvalidSpec("cyclic order must be >= 1".into())),
            GroupSpec::Cyclic(_) => Ok(()),
            GroupSpec::Symmetric(n) if *n == 0 || *n > MAX_SYMMETRIC_DEGREE => Err(EpError::InvalidSpec(
                format!("symmetric degree must be in 1..={MAX_SYMMETRIC_DEGREE}, got {n}"),
            )),
            GroupSpec::Symmetric(_) => Ok(()),
            GroupSpec::Product(parts) if parts.is_empty() => {
                Err(EpError::InvalidSpec("product of zero groups".into()))
            }
            GroupSpec::Product(parts) => parts.iter().try_for_each(GroupSpec::validate),
        }
    }

    /// Number of elements, saturating at `u64::MAX`.
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => u64::from(*n),
            GroupSpec::Symmetric(n) => (1..=u64::from(*n)).product(),
            GroupSpec::Product(parts) => parts.iter().fold(1u64, |acc, p| acc.saturating_mul(p.order())),
        }
    }

    fn identity_payload(&self) -> Payload {
        match self {
            GroupSpec::Cyclic(_) => Payload::Residue(0),
            GroupSpec::Symmetric(n) => Payload::Perm((0..*n).collect()),
            GroupSpec::Product(parts) => Payload::Tuple(parts.iter().map(GroupSpec::identity_payload).collect()),
        }
    }

    fn all_payloads(&self) -> Vec<Payload> {
        match self {
            GroupSpec::Cyclic(n) => (0..*n).map(Payload::Residue).collect(),
            GroupSpec::Symmetric(n) => permutations(*n).into_iter().map(Payload::Perm).collect(),
            GroupSpec::Product(parts) => {
                let mut acc: Vec<Vec<Payload>> = vec![Vec::new()];
                for part in parts {
                    let elems = part.all_payloads();
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut next = prefix.clone();
                                next.push(e.clone());
                                next
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(|t| Payload::Tuple(t.into_boxed_slice())).collect()
            }
        }
    }

    fn multiply_payload(&self, a: &Payload, b: &Payload) -> Payload {
        match (self, a, b) {
            (GroupSpec::Cyclic(n), Payload::Residue(x), Payload::Residue(y)) => {
                Payload::Residue(((u64::from(*x) + u64::from(*y)) % u64::from(*n)) as u32)
            }
            // Permutations act on the right: (a·b)(i) = b(a(i)).
            (GroupSpec::Symmetric(_), Payload::Perm(p), Payload::Perm(q)) => {
                Payload::Perm(p.iter().map(|&i| q[i as usize]).collect())
            }
            (GroupSpec::Product(parts), Payload::Tuple(xs), Payload::Tuple(ys)) => Payload::Tuple(
                parts
                    .iter()
                    .zip(xs.iter().zip(ys.iter()))
                    .map(|(spec, (x, y))| spec.multiply_payload(x, y))
                    .collect(),
            ),
            _ => unreachable!("payload shape does not match its spec"),
        }
    }

    fn inverse_payload(&self, a: &Payload) -> Payload {
        match (self, a) {
            (GroupSpec::Cyclic(n), Payload::Residue(x)) => Payload::Residue((*n - *x) % *n),
            (GroupSpec::Symmetric(_), Payload::Perm(p)) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &image) in p.iter().enumerate() {
                    inv[image as usize] = i as u8;
                }
                Payload::Perm(inv.into_boxed_slice())
            }
            (GroupSpec::Product(parts), Payload::Tuple(xs)) => {
                Payload::Tuple(parts.iter().zip(xs.iter()).map(|(s, x)| s.inverse_payload(x)).collect())
            }
            _ => unreachable!("payload shape does not match its spec"),
        }
    }

    fn parse_payload(&self, text: &str) -> Result<Payload> {
        let text = text.trim();
        let bad = |why: &str| EpError::Parse(format!("element {text:?} for {self}: {why}"));
        match self {
            GroupSpec::Cyclic(n) => {
                let v: i64 = text.parse().map_err(|_| bad("not an integer"))?;
                Ok(Payload::Residue(v.rem_euclid(i64::from(*n)) as u32))
            }
            GroupSpec::Symmetric(n) => {
                let images: Vec<u8> = text
                    .split(',')
                    .map(|s| s.trim().parse::<u8>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("expected comma-separated images"))?;
                check_permutation(*n, &images).map_err(|e| bad(&e))?;
                Ok(Payload::Perm(images.iter().map(|i| i - 1).collect()))
            }
            GroupSpec::Product(parts) => {
                let inner = text
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("product elements are written [a; b; ...]"))?;
                let items = split_top_level(inner);
                if items.len() != parts.len() {
                    return Err(bad(&format!("expected {} components, got {}", parts.len(), items.len())));
                }
                Ok(Payload::Tuple(
                    parts.iter().zip(items).map(|(s, t)| s.parse_payload(t)).collect::<Result<_>>()?,
                ))
            }
        }
    }

    fn fmt_payload(&self, p: &Payload, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self, p) {
            (GroupSpec::Cyclic(_), Payload::Residue(x)) => write!(f, "{x}"),
            (GroupSpec::Symmetric(_), Payload::Perm(images)) => {
                for (i, image) in images.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", image + 1)?;
                }
                Ok(())
            }
            (GroupSpec::Product(parts), Payload::Tuple(xs)) => {
                f.write_str("[")?;
                for (i, (s, x)) in parts.iter().zip(xs.iter()).enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    s.fmt_payload(x, f)?;
                }
                f.write_str("]")
            }
            _ => unreachable!("payload shape does not match its spec"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Symmetric(n) => write!(f, "Sym{n}"),
            GroupSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn check_permutation(n: u8, images: &[u8]) -> std::result::Result<(), String> {
    if images.len() != n as usize {
        return Err(format!("expected {n} images, got {}", images.len()));
    }
    let mut seen = vec![false; n as usize];
    for &i in images {
        if i == 0 || i > n || seen[(i - 1) as usize] {
            return Err("not a bijection on 1..n".into());
        }
        seen[(i - 1) as usize] = true;
    }
    Ok(())
}

/// Splits at `;` that are not nested inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn permutations(n: u8) -> Vec<Box<[u8]>> {
    // Lexicographic order via next-permutation.
    let mut cur: Vec<u8> = (0..n).collect();
    let mut out = vec![cur.clone().into_boxed_slice()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone().into_boxed_slice());
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Payload {
    Residue(u32),
    /// Zero-based one-line images.
    Perm(Box<[u8]>),
    Tuple(Box<[Payload]>),
}

/// An element of the group described by its spec.
#[derive(Clone)]
pub struct GroupElement {
    spec: Arc<GroupSpec>,
    payload: Payload,
}

impl GroupElement {
    pub fn identity(spec: &Arc<GroupSpec>) -> GroupElement {
        GroupElement { spec: Arc::clone(spec), payload: spec.identity_payload() }
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn is_identity(&self) -> bool {
        self.payload == self.spec.identity_payload()
    }

    /// Residue `value mod n` in a cyclic group.
    pub fn cyclic(spec: &Arc<GroupSpec>, value: i64) -> Result<GroupElement> {
        match **spec {
            GroupSpec::Cyclic(n) => Ok(GroupElement {
                spec: Arc::clone(spec),
                payload: Payload::Residue(value.rem_euclid(i64::from(n)) as u32),
            }),
            _ => Err(EpError::SpecMismatch(format!("{spec} is not cyclic"))),
        }
    }

    /// Permutation from one-line notation with images in `1..=n`.
    pub fn permutation(spec: &Arc<GroupSpec>, images: &[u8]) -> Result<GroupElement> {
        match **spec {
            GroupSpec::Symmetric(n) => {
                check_permutation(n, images).map_err(EpError::InvalidElement)?;
                Ok(GroupElement {
                    spec: Arc::clone(spec),
                    payload: Payload::Perm(images.iter().map(|i| i - 1).collect()),
                })
            }
            _ => Err(EpError::SpecMismatch(format!("{spec} is not symmetric"))),
        }
    }

    /// Element of a product group from its components.
    pub fn tuple(spec: &Arc<GroupSpec>, components: &[GroupElement]) -> Result<GroupElement> {
        let GroupSpec::Product(parts) = &**spec else {
            return Err(EpError::SpecMismatch(format!("{spec} is not a product")));
        };
        if parts.len() != components.len() {
            return Err(EpError::SpecMismatch(format!(
                "{spec} has {} factors, got {} components",
                parts.len(),
                components.len()
            )));
        }
        for (p, c) in parts.iter().zip(components) {
            if p != &*c.spec {
                return Err(EpError::SpecMismatch(format!("component {c} is not in {p}")));
            }
        }
        Ok(GroupElement {
            spec: Arc::clone(spec),
            payload: Payload::Tuple(components.iter().map(|c| c.payload.clone()).collect()),
        })
    }

    /// Residue of a cyclic element.
    pub fn residue(&self) -> Option<u32> {
        match self.payload {
            Payload::Residue(r) => Some(r),
            _ => None,
        }
    }

    /// One-based images of a permutation element.
    pub fn images(&self) -> Option<Vec<u8>> {
        match &self.payload {
            Payload::Perm(p) => Some(p.iter().map(|i| i + 1).collect()),
            _ => None,
        }
    }

    /// Rebuilds the element from its own encoding. Always equal to `self`.
    pub fn canonical(&self) -> GroupElement {
        GroupElement::parse(&self.spec, &self.to_string()).expect("display output parses")
    }

    pub fn parse(spec: &Arc<GroupSpec>, text: &str) -> Result<GroupElement> {
        Ok(GroupElement { spec: Arc::clone(spec), payload: spec.parse_payload(text)? })
    }

    pub fn try_multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.same_group(other) {
            return Err(EpError::SpecMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(GroupElement { spec: Arc::clone(&self.spec), payload: self.spec.multiply_payload(&self.payload, &other.payload) })
    }

    /// Group product `self · other`.
    ///
    /// Panics if the operands come from different groups; use
    /// [`GroupElement::try_multiply`] when that is not already guaranteed.
    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        self.try_multiply(other).expect("group mismatch")
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { spec: Arc::clone(&self.spec), payload: self.spec.inverse_payload(&self.payload) }
    }

    pub fn same_group(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec
    }

    /// Every element of the group, in a fixed order starting with the identity.
    pub fn enumerate(spec: &Arc<GroupSpec>) -> Result<Vec<GroupElement>> {
        spec.validate()?;
        if spec.order() > 1_000_000 {
            return Err(EpError::GuardExceeded(format!("group {spec} has more than 10^6 elements")));
        }
        Ok(spec
            .all_payloads()
            .into_iter()
            .map(|payload| GroupElement { spec: Arc::clone(spec), payload })
            .collect())
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload && self.same_group(other)
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.payload.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&*self.spec, &self.payload).cmp(&(&*other.spec, &other.payload))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt_payload(&self.payload, f)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.spec, self)
    }
}
