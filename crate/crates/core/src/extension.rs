//! A Galois number field over `Q` together with its automorphism group,
//! subgroup lattice, idempotent relations and fixed fields.

use crate::error::{Error, Result};
use crate::field::auts::{automorphism_group, automorphisms, Automorphism};
use crate::field::subfield::{fixed_field, Subfield};
use crate::field::{Elt, NumberField};
use crate::group::algebra::relations_for;
use crate::group::{subgroups, FiniteGroup, IdempotentRelation, Subgroup};

#[derive(Clone, Debug)]
pub struct GaloisExtension {
    pub field: NumberField,
    /// `auts[i]` is group element `i`.
    pub auts: Vec<Automorphism>,
    pub group: FiniteGroup,
    pub subgroups: Vec<Subgroup>,
    pub relations: Vec<IdempotentRelation>,
    /// `subfields[i]` is fixed by `subgroups[i]`.
    pub subfields: Vec<Subfield>,
}

impl GaloisExtension {
    pub fn new(field: NumberField, hints: Option<&[Elt]>) -> Result<GaloisExtension> {
        let auts = automorphisms(&field, hints)?;
        let n = field.degree();
        if auts.len() != n {
            return Err(Error::Unsupported(format!(
                "{} is not Galois over Q: {} automorphisms for degree {n}",
                field.name(),
                auts.len()
            )));
        }
        let group = automorphism_group(&format!("Gal({})", field.name()), &auts)?;
        let subs = subgroups(&group);
        let relations = relations_for(&group, &subs);
        let mut subfields = Vec::with_capacity(subs.len());
        for (i, h) in subs.iter().enumerate() {
            let name = format!("{}^H{}", field.name(), i);
            subfields.push(fixed_field(&field, &auts, h.elements(), &name)?);
        }
        Ok(GaloisExtension { field, auts, group, subgroups: subs, relations, subfields })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Index of the trivial subgroup, whose fixed field is the top field.
    pub fn trivial_index(&self) -> usize {
        0
    }

    /// Index of the whole group, whose fixed field is `Q`.
    pub fn full_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Printable subgroup, e.g. `{0,2}`.
    pub fn subgroup_label(&self, i: usize) -> String {
        let e: Vec<String> = self.subgroups[i].elements().iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", e.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::make_field;

    #[test]
    fn biquadratic_extension() {
        let l = make_field("L", &Poly::from_i64(&[1, 0, -10, 0, 1]), None, 128).unwrap();
        let ext = GaloisExtension::new(l, None).unwrap();
        assert_eq!(ext.subgroups.len(), 5);
        assert_eq!(ext.relations.len(), 1);
        assert_eq!(ext.subfields[ext.full_index()].field.degree(), 1);
        assert_eq!(ext.subfields[0].field.degree(), 4);
    }

    #[test]
    fn non_galois_is_unsupported() {
        let k = make_field("K", &Poly::from_i64(&[-2, 0, 0, 1]), None, 128);
        // the pure cubic needs a supplied basis only when the discriminant is
        // not squarefree; either way it must not pass as Galois
        if let Ok(k) = k {
            assert!(matches!(GaloisExtension::new(k, None), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn class_groups_in_q_i_sqrt_m23() {
        use crate::field::torsion::torsion_units;
        use crate::ideal::galois::{galois_action_on_classes, idempotent_trace_on_classgroup, transfer_check};
        use crate::ideal::class_group;

        let spec = crate::corpus::fixture("q_i_sqrtm23").unwrap();
        let ext = GaloisExtension::new(spec.build(128).unwrap(), None).unwrap();
        let l = &ext.field;
        let cl_l = class_group(l).unwrap();
        assert_eq!(cl_l.structure.invariants(), &[3]);
        let act = galois_action_on_classes(l, &cl_l, &ext.auts, &ext.group).unwrap();

        // each order-2 subgroup either fixes or inverts the class of order 3
        let mu_l = torsion_units(l).unwrap();
        for (i, h) in ext.subgroups.iter().enumerate() {
            let sub = &ext.subfields[i];
            if h.order() != 2 {
                continue;
            }
            let cl_k = class_group(&sub.field).unwrap();
            let tr = idempotent_trace_on_classgroup(&act, h.elements(), 3, 1).unwrap();
            assert_eq!(tr.dimension, 1);
            // Cl(K)_3 is the image of the projector
            assert_eq!(tr.rank as u64, if cl_k.order() % 3 == 0 { 1 } else { 0 }, "{}", sub.field.name());
            let mu_k = torsion_units(&sub.field).unwrap();
            let rep = transfer_check(l, sub, &ext.auts, &cl_l, &cl_k, &mu_l, &mu_k).unwrap();
            assert!(rep.pass(), "{:?}", rep.rows);
        }
        let names: Vec<&str> = ext.subfields.iter().map(|s| s.field.name()).collect();
        assert!(names.contains(&"Q(sqrt(-23))"), "{names:?}");
    }
}
