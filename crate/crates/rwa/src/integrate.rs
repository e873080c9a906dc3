//! Ordered time integrals and secular selection.
//!
//! For an ordering (j, k, m) the kept term is
//! (−i)^{n−1} I_j ∫(I_k ∫ I_m) with ∫e^{iωt}dt → e^{iωt}/(iω), so each
//! inner line contributes 1/(i S) with S its partial frequency sum. Amplitudes
//! are in cycles (GHz); the 2π of the angular conversion cancels between the
//! n factors of H/ħ and the n−1 denominators, so the conversion happens once
//! in [`angular_partial_sum`].

use crate::algebra::{FreqTable, FreqVec, InteractionTerm, RotatingMonomial, Word, DriveId};
use crate::RwaError;
use jjdirac_core::config::DenominatorMode;
use jjdirac_core::linalg::{C64, I, ONE};
use jjdirac_core::units::to_angular;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSettings {
    pub mode: DenominatorMode,
    pub eps_den_ghz: f64,
}

impl Default for IntegrationSettings {
    fn default() -> Self {
        Self {
            mode: DenominatorMode::Exact,
            eps_den_ghz: 0.1,
        }
    }
}

/// One expanded product after integration and bus reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    /// GHz.
    pub amplitude: C64,
    pub frequency: FreqVec,
    pub word: Word,
    pub drives: Vec<(DriveId, i8)>,
    /// Interaction indices, outermost first.
    pub ordering: Vec<usize>,
    /// Inner partial sums, innermost first.
    pub partials: Vec<FreqVec>,
    /// Sum of the hierarchy tiers of the partial sums.
    pub rank: u8,
}

/// 2π·S in rad/ns for a partial sum S in GHz: the single angular site.
pub fn angular_partial_sum(s_ghz: f64) -> f64 {
    to_angular(s_ghz)
}

/// Expand one time ordering of `terms` (indices outermost first).
pub fn ordered_integral(
    terms: &[InteractionTerm],
    ordering: &[usize],
    table: &FreqTable,
    settings: &IntegrationSettings,
) -> Result<Vec<ProductTerm>, RwaError> {
    let k = ordering.len();
    assert!((1..=3).contains(&k), "order must be 1, 2 or 3");
    let lists: Vec<&[RotatingMonomial]> = ordering.iter().map(|&i| terms[i].monomials.as_slice()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(out);
    }
    // (−i)^{k−1}
    let mut prefactor = ONE;
    for _ in 1..k {
        prefactor *= -I;
    }
    loop {
        let picked: Vec<&RotatingMonomial> = (0..k).map(|r| &lists[r][idx[r]]).collect();
        if let Some(t) = integrate_product(&picked, ordering, prefactor, table, settings)? {
            out.push(t);
        }
        // odometer, innermost fastest
        let mut r = k;
        loop {
            if r == 0 {
                return Ok(out);
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < lists[r].len() {
                break;
            }
            idx[r] = 0;
        }
    }
}

fn integrate_product(
    picked: &[&RotatingMonomial],
    ordering: &[usize],
    prefactor: C64,
    table: &FreqTable,
    settings: &IntegrationSettings,
) -> Result<Option<ProductTerm>, RwaError> {
    let mut acc = picked[0].clone();
    for m in &picked[1..] {
        match acc.mul(m) {
            Some(p) => acc = p,
            None => return Ok(None),
        }
    }
    let (vac, word) = acc.word.reduce_buses();
    if vac == 0.0 || acc.amplitude == C64::new(0.0, 0.0) {
        return Ok(None);
    }
    let k = picked.len();
    let mut partials = Vec::with_capacity(k - 1);
    let mut running = FreqVec::ZERO;
    let mut denom = ONE;
    let mut rank = 0u8;
    for r in (1..k).rev() {
        running = running.add(&picked[r].frequency);
        let exact = running.value(table);
        if exact.abs() < settings.eps_den_ghz {
            return Err(RwaError::SmallDenominator {
                partial_sum: running.to_string(),
                value_ghz: exact,
                floor_ghz: settings.eps_den_ghz,
            });
        }
        let s = match settings.mode {
            DenominatorMode::Exact => exact,
            DenominatorMode::Hierarchy => running.collapsed(table),
        };
        rank += running.tier();
        partials.push(running);
        denom *= I * angular_partial_sum(s);
    }
    // one 2π per interaction factor beyond the first, back to cycles
    let cycles = angular_partial_sum(1.0).powi(k as i32 - 1);
    Ok(Some(ProductTerm {
        amplitude: acc.amplitude * vac * prefactor * cycles / denom,
        frequency: acc.frequency,
        word,
        drives: acc.drives,
        ordering: ordering.to_vec(),
        partials,
        rank,
    }))
}

/// All permutations of 0..n in lexicographic order.
pub fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Contribution of one product to an effective coupling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    /// Interaction names, outermost first.
    pub ordering: Vec<String>,
    pub drives: Vec<String>,
    /// Inner partial sums as symbol combinations with their exact values.
    pub denominators: Vec<(String, f64)>,
    pub rank: u8,
    pub contribution_mhz: [f64; 2],
}

/// A secular word with its summed coefficient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveCoupling {
    pub word: Word,
    pub word_text: String,
    /// MHz, as (re, im).
    pub coefficient_mhz: [f64; 2],
    pub provenance: Vec<Provenance>,
}

impl EffectiveCoupling {
    pub fn coefficient(&self) -> C64 {
        C64::new(self.coefficient_mhz[0], self.coefficient_mhz[1])
    }
}

/// How many products were kept and which frequencies were discarded.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Census {
    pub kept: usize,
    pub discarded: usize,
    /// Dropped by the leading-rank rule of the hierarchy mode.
    pub subleading: usize,
    /// Discarded products per residual frequency combination.
    pub discarded_by_frequency: BTreeMap<String, usize>,
}

/// Keep |frequency| ≤ tolerance and merge identical words. With
/// `leading_only`, each word keeps only its products of minimal rank.
pub fn collect_secular(
    products: &[ProductTerm],
    names: &[String],
    table: &FreqTable,
    secular_ghz: f64,
    leading_only: bool,
) -> (Vec<EffectiveCoupling>, Census) {
    let mut census = Census::default();
    let mut groups: BTreeMap<Word, Vec<&ProductTerm>> = BTreeMap::new();
    for p in products {
        if p.frequency.value(table).abs() <= secular_ghz {
            groups.entry(p.word.clone()).or_default().push(p);
        } else {
            census.discarded += 1;
            *census
                .discarded_by_frequency
                .entry(p.frequency.to_string())
                .or_default() += 1;
        }
    }
    let mut out = Vec::new();
    for (word, mut list) in groups {
        if leading_only {
            let min = list.iter().map(|p| p.rank).min().unwrap_or(0);
            let before = list.len();
            list.retain(|p| p.rank == min);
            census.subleading += before - list.len();
        }
        census.kept += list.len();
        let total: C64 = list.iter().map(|p| p.amplitude).sum();
        let scale = list.iter().map(|p| p.amplitude.norm()).fold(0.0, f64::max);
        if total.norm() <= 1e-13 * scale {
            continue;
        }
        let provenance = list
            .iter()
            .map(|p| Provenance {
                ordering: p.ordering.iter().map(|&i| names[i].clone()).collect(),
                drives: p
                    .drives
                    .iter()
                    .map(|(d, s)| format!("{}n{}({})", if *s > 0 { "+" } else { "-" }, d.line, d.qubit))
                    .collect(),
                denominators: p.partials.iter().map(|f| (f.to_string(), f.value(table))).collect(),
                rank: p.rank,
                contribution_mhz: [p.amplitude.re * 1e3, p.amplitude.im * 1e3],
            })
            .collect();
        let c = total * 1e3;
        out.push(EffectiveCoupling {
            word_text: word.to_string(),
            word,
            coefficient_mhz: [c.re, c.im],
            provenance,
        });
    }
    (out, census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factors, Mode};

    #[test]
    fn static_pair_hits_floor() {
        let t = InteractionTerm::product("A", &[factors::scalar(1.0)]);
        let terms = vec![t.clone(), t];
        let err = ordered_integral(&terms, &[0, 1], &FreqTable::new(), &IntegrationSettings::default())
            .unwrap_err();
        assert!(matches!(err, RwaError::SmallDenominator { .. }));
        assert!(err.to_string().contains("partial sum 0"));
    }

    #[test]
    fn six_orderings() {
        let o = orderings(3);
        assert_eq!(o.len(), 6);
        assert_eq!(o[0], vec![0, 1, 2]);
        assert_eq!(o[5], vec![2, 1, 0]);
    }

    #[test]
    fn second_order_exchange() {
        // g(a e^{-iωt} + a† e^{iωt}) twice: −i·g a ∫ g a† → −g²/ω on the vacuum
        let mut table = FreqTable::new();
        table.set(crate::algebra::Sym::Mode(Mode::BX), 10.0);
        let t = InteractionTerm::product("A", &[factors::boson(Mode::BX, 0.5)]);
        let terms = vec![t.clone(), t];
        let prods = ordered_integral(&terms, &[0, 1], &table, &IntegrationSettings::default()).unwrap();
        let (eff, census) = collect_secular(&prods, &["A".into(), "A".into()], &table, 1e-3, false);
        assert_eq!(eff.len(), 1);
        assert_eq!(census.kept, 1);
        let c = eff[0].coefficient();
        assert!((c.re + 0.25 / 10.0 * 1e3).abs() < 1e-12 && c.im.abs() < 1e-15);
    }
}
