use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{decode, encode, Assignment, ScmError};
use crate::term::Iri;

/// Dense probability mass over the joint values of `variables`, indexed in
/// mixed radix (last variable fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    variables: Vec<Iri>,
    domains: Vec<Vec<String>>,
    mass: Vec<f64>,
}

impl Distribution {
    pub(crate) fn from_parts(variables: Vec<Iri>, domains: Vec<Vec<String>>, mass: Vec<f64>) -> Self {
        debug_assert_eq!(mass.len(), domains.iter().map(Vec::len).product::<usize>());
        Self { variables, domains, mass }
    }

    /// Builds from labelled entries; unlisted assignments get zero mass.
    pub fn from_entries(
        variables: Vec<Iri>,
        domains: Vec<Vec<String>>,
        entries: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) -> Self {
        let radices: Vec<usize> = domains.iter().map(Vec::len).collect();
        let mut mass = vec![0.0; radices.iter().product()];
        for (a, p) in entries {
            mass[encode(&a, &radices)] += p;
        }
        Self { variables, domains, mass }
    }

    pub fn variables(&self) -> &[Iri] {
        &self.variables
    }

    pub fn domains(&self) -> &[Vec<String>] {
        &self.domains
    }

    pub fn domain(&self, v: &Iri) -> Option<&[String]> {
        self.position(v).map(|i| self.domains[i].as_slice())
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    fn radices(&self) -> Vec<usize> {
        self.domains.iter().map(Vec::len).collect()
    }

    fn position(&self, v: &Iri) -> Option<usize> {
        self.variables.iter().position(|x| x == v)
    }

    /// Every assignment (value indices) with its mass.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let radices = self.radices();
        self.mass.iter().enumerate().map(move |(i, &p)| (decode(i, &radices), p))
    }

    /// Mass of a full assignment given as value indices.
    pub fn at(&self, values: &[usize]) -> f64 {
        self.mass[encode(values, &self.radices())]
    }

    /// Mass of a full assignment given as labels in variable order.
    pub fn get(&self, labels: &[&str]) -> Option<f64> {
        if labels.len() != self.variables.len() {
            return None;
        }
        let mut values = Vec::with_capacity(labels.len());
        for (l, d) in labels.iter().zip(&self.domains) {
            values.push(d.iter().position(|x| x == l)?);
        }
        Some(self.at(&values))
    }

    pub(crate) fn fixed_positions(&self, a: &Assignment) -> Result<Vec<(usize, usize)>, ScmError> {
        a.iter()
            .map(|(v, l)| {
                let i = self.position(v).ok_or_else(|| ScmError::UnknownVariable(v.clone()))?;
                let value = self.domains[i]
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| ScmError::UnknownValue { variable: v.clone(), value: l.clone() })?;
                Ok((i, value))
            })
            .collect()
    }

    /// Total mass of assignments that agree with `fixed` (position, value).
    pub(crate) fn mass_where(&self, fixed: &[(usize, usize)]) -> f64 {
        self.iter().filter(|(a, _)| fixed.iter().all(|&(i, v)| a[i] == v)).map(|(_, p)| p).sum()
    }

    /// Probability of a partial assignment.
    pub fn probability(&self, a: &Assignment) -> Result<f64, ScmError> {
        Ok(self.mass_where(&self.fixed_positions(a)?))
    }

    /// Marginal over `targets`, in the order given.
    pub fn marginal(&self, targets: &[Iri]) -> Result<Distribution, ScmError> {
        self.conditional_unnormalized(targets, &[]).map(|(d, _)| d)
    }

    fn conditional_unnormalized(
        &self,
        targets: &[Iri],
        fixed: &[(usize, usize)],
    ) -> Result<(Distribution, f64), ScmError> {
        let pos: Vec<usize> = targets
            .iter()
            .map(|t| self.position(t).ok_or_else(|| ScmError::UnknownVariable(t.clone())))
            .collect::<Result<_, _>>()?;
        let domains: Vec<Vec<String>> = pos.iter().map(|&i| self.domains[i].clone()).collect();
        let radices: Vec<usize> = domains.iter().map(Vec::len).collect();
        let mut mass = vec![0.0; radices.iter().product()];
        let mut total = 0.0;
        for (a, p) in self.iter() {
            if p == 0.0 || !fixed.iter().all(|&(i, v)| a[i] == v) {
                continue;
            }
            let sub: Vec<usize> = pos.iter().map(|&i| a[i]).collect();
            mass[encode(&sub, &radices)] += p;
            total += p;
        }
        Ok((Distribution { variables: targets.to_vec(), domains, mass }, total))
    }

    /// `P(targets | given)`, renormalized.
    pub fn conditional(&self, targets: &[Iri], given: &Assignment) -> Result<Distribution, ScmError> {
        let fixed = self.fixed_positions(given)?;
        let (mut d, total) = self.conditional_unnormalized(targets, &fixed)?;
        if total <= 0.0 {
            return Err(ScmError::ZeroProbabilityEvidence);
        }
        for p in &mut d.mass {
            *p /= total;
        }
        Ok(d)
    }

    /// Expected value of a single-variable distribution with numeric labels.
    pub fn expectation(&self) -> Result<f64, ScmError> {
        let mut e = 0.0;
        for (a, p) in self.iter() {
            let mut x = 0.0;
            for (i, &v) in a.iter().enumerate() {
                x += numeric(&self.domains[i][v])?;
            }
            e += x * p;
        }
        Ok(e)
    }

    /// The assignment holding all the mass, if there is one.
    pub fn point(&self) -> Option<Vec<usize>> {
        let i = self.mass.iter().position(|&p| p == 1.0)?;
        Some(decode(i, &self.radices()))
    }

    /// Largest absolute difference against a distribution over the same
    /// variables and domains.
    pub fn max_abs_diff(&self, other: &Distribution) -> Option<f64> {
        if self.variables != other.variables || self.domains != other.domains {
            return None;
        }
        Some(self.mass.iter().zip(&other.mass).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

pub(crate) fn numeric(label: &str) -> Result<f64, ScmError> {
    label.trim().parse::<f64>().map_err(|_| ScmError::NonNumericOutcome(label.into()))
}
