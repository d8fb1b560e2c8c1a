use crate::algebra::{complex_grassmann, StructureTable};
use crate::conditions::SliceSpec;
use crate::scalar::Rational;

/// `complex_grassmann(3)` re-based so that its odd basis satisfies (A1) with
/// slices `(1,2,3), (4,5,6), (7,8)`; the second leader is even.
pub fn even_leader_grassmann() -> (StructureTable<Rational>, SliceSpec<Rational>) {
    let t = complex_grassmann(3);
    let idx = |name: &str| t.labels().iter().position(|l| l == name).expect("label");
    let unit = t.unit();
    let i = t.basis(1);
    let eta23 = t.basis(idx("n2n3"));
    let i_eta13 = t.mul(&i, &t.basis(idx("n1n3")));
    let a = vec![unit.clone(), i.clone(), eta23, unit.clone(), i.clone(), -i_eta13, unit, i];
    let leaders = [idx("n1"), idx("n2"), idx("n3")];
    let mut basis: Vec<_> = (0..=t.p()).map(|k| t.basis(k)).collect();
    for (j, aj) in a.iter().enumerate() {
        let lead = t.basis(leaders[[0, 0, 0, 1, 1, 1, 2, 2][j]]);
        basis.push(t.mul(aj, &lead));
    }
    let t2 = t.change_basis(&basis).expect("odd products form a basis");
    let s = SliceSpec::new(&t2, vec![1, 4, 7], a).expect("valid slices");
    (t2, s)
}
