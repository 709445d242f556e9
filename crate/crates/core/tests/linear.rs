use bracelab::constructions::{order_2p_generators, s4_generators};
use bracelab::fp::{recipe_check, FpMatrix, FpSubspace, MatrixGroup};
use bracelab::io::read_matrix_file;

fn span(p: u32, vs: &[&[u8]]) -> FpSubspace {
    FpSubspace::span(p, vs[0].len(), vs.iter().map(|v| v.to_vec()).collect())
}

#[test]
fn order_2p_subspaces() {
    let gens = order_2p_generators(3).unwrap();
    let (k1, _) = gens[0].minus_identity().kernel_image();
    let (k2, _) = gens[1].minus_identity().kernel_image();
    assert_eq!(k1, span(3, &[&[1, 0, 0], &[0, 1, 0]]));
    assert_eq!(k2, span(3, &[&[1, 0, 0], &[0, 0, 1]]));

    let group = MatrixGroup::closure(&gens).unwrap();
    assert_eq!(group.order(), 6);
    for gamma in 0..3i64 {
        let a = FpMatrix::from_rows(3, &[vec![1, 0, gamma], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = FpMatrix::from_rows(3, &[vec![1, 1, gamma], vec![0, -1, 0], vec![0, 0, 1]]).unwrap();
        assert!(group.index_of(&a).is_some() && group.index_of(&b).is_some());
        let g = gamma as u8;
        assert_eq!(a.minus_identity().kernel_image().1, span(3, &[&[g, 0, 0]]));
        assert_eq!(b.minus_identity().kernel_image().1, span(3, &[&[1, 1, 0], &[g, 0, 0]]));
    }
    assert_eq!(group.fixed_space(), span(3, &[&[1, 0, 0]]));
    assert_eq!(group.fixed_space_all_elements(), span(3, &[&[1, 0, 0]]));
}

#[test]
fn s4_generator_kernels_and_recipe() {
    let gens = s4_generators();
    let kernels: Vec<FpSubspace> = gens.iter().map(|m| m.minus_identity().kernel()).collect();
    let a = span(2, &[&[1, 0, 1, 0], &[1, 0, 0, 1]]);
    assert_eq!(kernels[0], a);
    assert_eq!(kernels[1], a);
    assert_eq!(kernels[2], a);
    assert_eq!(kernels[3], span(2, &[&[1, 0, 1, 0], &[0, 0, 0, 1]]));

    let images = [gens[1].minus_identity().image(), gens[2].minus_identity().image()];
    assert!(images[0].contains(&[1, 0, 1, 0]) && images[0].contains(&[0, 0, 1, 1]));
    assert!(images[1].contains(&[0, 1, 0, 1]) && images[1].contains(&[0, 0, 0, 1]));

    let r = recipe_check(&gens).unwrap();
    assert!(r.cond1 && r.cond2);
    assert_eq!(r.fixed, span(2, &[&[1, 0, 1, 0]]));
    assert!(r.witnesses.contains(&vec![1, 0, 0, 1]));
    let v = [1u8, 0, 0, 1];
    for m in &gens {
        let d = m.minus_identity().apply(&v);
        assert!(r.fixed.contains(&d));
    }
    let group = MatrixGroup::closure(&gens).unwrap();
    assert_eq!(group.order(), 24);
    assert_eq!(group.fixed_space().dimension(), 1);
}

#[test]
fn matrix_fixtures_match_built_ins() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    assert_eq!(read_matrix_file(dir.join("prop3.mat")).unwrap(), s4_generators());
    assert_eq!(read_matrix_file(dir.join("prop2_p3.mat")).unwrap(), order_2p_generators(3).unwrap());
}
