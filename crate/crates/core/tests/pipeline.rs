use modform::cusps::{representatives, Cusp};
use modform::etacusp::EtaQuotient;
use modform::projection::{project, residual, residual_constants};
use modform::qseries::eisenstein_qexp;
use modform::theta::QuadraticForm;
use modform::{CycNumber, DirichletCharacter, Error};

const E8: [[i64; 8]; 8] = [
    [4, -2, 0, 0, 0, 0, 0, 1],
    [-2, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [1, 0, 0, 0, 0, 0, 0, 2],
];

#[test]
fn e8_theta_is_e4() {
    let form = QuadraticForm::new(E8.iter().map(|r| r.to_vec()).collect()).unwrap();
    assert_eq!(form.det(), 1.into());
    let (level, chi) = form.level_character().unwrap();
    assert_eq!(level, 1);
    assert!(chi.is_trivial());
    let theta = form.theta_qexp(4);
    assert_eq!(theta.coeff(1), &CycNumber::from_int(240));
    let comb = project(4, level, &chi, &|c| form.cusp_constant(c)).unwrap();
    assert!(residual(&comb, &theta).unwrap().is_zero());
    let one = DirichletCharacter::trivial(1);
    let e4 = eisenstein_qexp(4, &one, &one, 1, 4).unwrap();
    assert_eq!(comb.to_qexp(4).unwrap(), e4);
}

#[test]
fn delta_has_no_eisenstein_part() {
    let delta = EtaQuotient::new(1, &[(1, 24)]).unwrap();
    let (k, chi) = delta.weight_character().unwrap();
    assert_eq!(k, 12);
    let comb = project(k, 1, &chi, &|c| delta.constant_term(c)).unwrap();
    assert_eq!(comb.nonzero_terms().count(), 0);
}

#[test]
fn residual_of_eta_quotient_vanishes_at_every_cusp() {
    // η(2z)^16/η(z)^8 ∈ M_4(Γ0(2)) is not cuspidal at 0.
    let f = EtaQuotient::new(2, &[(1, -8), (2, 16)]).unwrap();
    let (k, chi) = f.weight_character().unwrap();
    let oracle = |c: Cusp| f.constant_term(c);
    let comb = project(k, 2, &chi, &oracle).unwrap();
    assert!(comb.nonzero_terms().count() > 0);
    for (_, v) in residual_constants(&comb, &oracle).unwrap() {
        assert!(v.is_zero());
    }
    assert_eq!(representatives(2).len(), 2);
}

#[test]
fn oversized_exp_sum_reports_capacity() {
    let form = QuadraticForm::new(vec![
        vec![2, 1, 0, 0],
        vec![1, 2, 1, 0],
        vec![0, 1, 2, 1],
        vec![0, 0, 1, 1000],
    ])
    .unwrap()
    .with_work_cap(1000);
    let (level, chi) = form.level_character().unwrap();
    let err = project(form.weight(), level, &chi, &|c| form.cusp_constant(c)).unwrap_err();
    assert!(matches!(err, Error::Capacity(_)), "{err}");
}
