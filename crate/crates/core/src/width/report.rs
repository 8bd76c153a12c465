//! Width reports and their Dilworth certificates.

use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use crate::cube::is_antichain;
use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::BigCount;

/// Serialises a count as a JSON number when it fits `u64`, else as a string.
pub fn serialize_count<S: Serializer>(value: &BigCount, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(value) {
        Ok(v) => serializer.serialize_u64(v),
        Err(_) => serializer.serialize_str(&value.to_string()),
    }
}

/// A maximum antichain together with a chain cover of the same size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthReport {
    #[serde(serialize_with = "serialize_count")]
    pub width: BigCount,
    pub ratio: f64,
    #[serde(serialize_with = "serialize_count")]
    pub max_layer: BigCount,
    pub ground_set: usize,
    pub antichain: Vec<VertexSet>,
    pub chain_cover: Vec<Vec<VertexSet>>,
    pub certificate_ok: bool,
}

impl WidthReport {
    /// Checks the certificate and assembles the report; a failed check is an
    /// error, so every report handed out carries `certificate_ok = true`.
    pub(crate) fn certified(ground: &[VertexSet], mut antichain: Vec<VertexSet>, mut chains: Vec<Vec<VertexSet>>) -> Result<Self> {
        antichain.sort_unstable();
        chains.sort_unstable_by(|a, b| a.first().cmp(&b.first()));
        check_certificate(ground, &antichain, &chains)?;
        let mut layers: FxHashMap<usize, usize> = FxHashMap::default();
        for a in ground {
            *layers.entry(a.len()).or_default() += 1;
        }
        let max_layer = layers.values().copied().max().unwrap_or(0);
        let width = antichain.len();
        Ok(WidthReport {
            width: BigCount::from(width),
            ratio: if max_layer == 0 { 1.0 } else { width as f64 / max_layer as f64 },
            max_layer: BigCount::from(max_layer),
            ground_set: ground.len(),
            antichain,
            chain_cover: chains,
            certificate_ok: true,
        })
    }

    /// Re-runs the certificate check against `ground`.
    pub fn verify(&self, ground: &[VertexSet]) -> Result<()> {
        check_certificate(ground, &self.antichain, &self.chain_cover)?;
        if self.width != BigCount::from(self.antichain.len()) {
            return Err(Error::Certificate("reported width differs from the antichain".into()));
        }
        Ok(())
    }
}

/// Antichain is an antichain inside `ground`; chains are strictly increasing
/// and partition `ground`; both have the same number of parts.
pub fn check_certificate(ground: &[VertexSet], antichain: &[VertexSet], chains: &[Vec<VertexSet>]) -> Result<()> {
    let fail = |m: String| Err(Error::Certificate(m));
    let mut seen: FxHashMap<u64, bool> = ground.iter().map(|a| (a.bits(), false)).collect();
    if seen.len() != ground.len() {
        return fail("ground set has repeated members".into());
    }
    for a in antichain {
        if !seen.contains_key(&a.bits()) {
            return fail(format!("antichain member {a} is outside the ground set"));
        }
    }
    if !is_antichain(antichain) {
        return fail("antichain has a comparable pair".into());
    }
    for chain in chains {
        if chain.is_empty() {
            return fail("empty chain".into());
        }
        if let Some(w) = chain.windows(2).find(|w| !w[0].is_strict_subset(w[1])) {
            return fail(format!("chain step {} -> {} is not a proper inclusion", w[0], w[1]));
        }
        for a in chain {
            match seen.get_mut(&a.bits()) {
                None => return fail(format!("chain member {a} is outside the ground set")),
                Some(true) => return fail(format!("{a} lies on two chains")),
                Some(slot) => *slot = true,
            }
        }
    }
    if let Some((&bits, _)) = seen.iter().find(|(_, &covered)| !covered) {
        return fail(format!("{} is on no chain", VertexSet::from_bits(bits)));
    }
    if antichain.len() != chains.len() {
        return fail(format!("antichain has {} members but the cover has {} chains", antichain.len(), chains.len()));
    }
    Ok(())
}
