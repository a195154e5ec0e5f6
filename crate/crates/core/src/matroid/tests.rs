use proptest::prelude::*;

use super::*;
use crate::arith::Field;

fn example_matrix() -> Matrix {
    Matrix::from_i64(Field::Rational, &[vec![1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]])
        .unwrap()
}

fn example_graph() -> Graph {
    // a=0, b=1, c=2, d=3; edges 1..5 in order.
    Graph::from_edges(&[(0, 2), (0, 1), (2, 3), (1, 2), (3, 0)])
}

fn s(label: &str, n: usize) -> Subset {
    sets::parse_label(label, n).unwrap()
}

/// Independent oracle: `Σ_{S ⊆ E} (-1)^{|S|} t^{r - rank S}`.
fn whitney_char_poly(m: &Matroid) -> ClassPoly {
    let mut c = vec![0i64; m.rank() + 1];
    for x in 0..=m.ground() {
        let sign = if sets::size(x).is_multiple_of(2) { 1 } else { -1 };
        c[m.rank() - m.rank_of(x)] += sign;
    }
    ClassPoly::new(c, 't')
}

/// Independent oracle for the rank: largest intersection with a basis.
fn rank_by_bases(m: &Matroid, x: Subset) -> usize {
    m.bases().iter().map(|&b| sets::size(b & x)).max().unwrap()
}

#[test]
fn example_matrix_bases() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    let expected: Vec<Subset> =
        sets::k_subsets(5, 3).filter(|&b| b != s("124", 5) && b != s("135", 5)).collect();
    assert_eq!(m.bases(), expected.as_slice());
}

#[test]
fn small_matrix_matroids() {
    let f = Field::Rational;
    let m = Matroid::from_matrix(&Matrix::from_i64(f, &[vec![1, 1]]).unwrap()).unwrap();
    assert_eq!(m, Matroid::uniform(1, 2).unwrap());
    let g = Matroid::from_matrix(&Matrix::from_i64(f, &[vec![1, 0, 3], vec![0, 1, 7]]).unwrap()).unwrap();
    assert_eq!(g, Matroid::uniform(2, 3).unwrap());
    let err = Matroid::from_matrix(&Matrix::identity(f, 2)).unwrap_err();
    assert_eq!(err, MatroidError::Degenerate { r: 2, n: 2 });
    let deficient = Matrix::from_i64(f, &[vec![1, 1, 0], vec![2, 2, 0]]).unwrap();
    assert!(matches!(
        Matroid::from_matrix(&deficient),
        Err(MatroidError::RankDeficient { rank: 1, rows: 2 })
    ));
}

#[test]
fn graph_matroids() {
    let fig = Matroid::from_graph(&example_graph()).unwrap();
    assert_eq!(fig, Matroid::from_matrix(&example_matrix()).unwrap());
    let triangle = Graph::from_edges(&[(0, 1), (1, 2), (2, 0)]);
    assert_eq!(Matroid::from_graph(&triangle).unwrap(), Matroid::uniform(2, 3).unwrap());
    let parallel = Graph::from_edges(&[(0, 1), (0, 1)]);
    assert_eq!(Matroid::from_graph(&parallel).unwrap(), Matroid::uniform(1, 2).unwrap());
    let split = Graph::from_edges(&[(0, 1), (2, 3)]);
    assert_eq!(Matroid::from_graph(&split).unwrap_err(), MatroidError::DisconnectedGraph);
}

#[test]
fn graph_agrees_with_pruned_incidence() {
    let g = example_graph();
    let a = g.pruned_incidence_matrix(Field::Rational);
    assert_eq!(Matroid::from_graph(&g).unwrap(), Matroid::from_matrix(&a).unwrap());
}

#[test]
fn graph_parsing() {
    let g = Graph::parse("# fig\na c\na b\nc d\nb c\nd a\n").unwrap();
    assert_eq!(g.num_vertices(), 4);
    assert_eq!(Matroid::from_graph(&g).unwrap(), Matroid::from_graph(&example_graph()).unwrap());
    assert!(matches!(Graph::parse("a b c"), Err(MatroidError::Parse(_))));
    assert!(matches!(Graph::parse(""), Err(MatroidError::Parse(_))));
}

#[test]
fn rank_and_closure_examples() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    let a = example_matrix();
    assert_eq!(m.rank_of(s("35", 5)), a.select_columns(&[2, 4]).rank());
    assert_eq!(m.rank_of(s("35", 5)), 2);
    assert_eq!(m.rank_of(0), 0);
    assert_eq!(m.rank_of(m.ground()), 3);
    assert_eq!(m.closure(s("12", 5)), s("124", 5));
    assert_eq!(m.closure(m.ground()), m.ground());
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.closure(s("1", 3)), s("1", 3));
}

#[test]
fn flats_examples() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    let lattice = m.flats();
    let mut proper: Vec<String> = lattice.proper().iter().map(|&f| m.label(f)).collect();
    proper.sort();
    let mut expected: Vec<String> = ["∅", "1", "2", "3", "4", "5", "124", "135", "23", "25", "34", "45"]
        .iter()
        .map(|x| x.to_string())
        .collect();
    expected.sort();
    assert_eq!(proper, expected);
    assert_eq!(lattice.proper().len(), 12);

    let d = m.dual();
    let mut dual_flats: Vec<String> = d.flats().proper_nonempty().iter().map(|&f| d.label(f)).collect();
    dual_flats.sort();
    assert_eq!(dual_flats, vec!["1", "24", "35"]);
    assert_eq!(d.rank(), 2);

    let u12 = Matroid::uniform(1, 2).unwrap();
    assert_eq!(u12.flats().flats(), &[0, 0b11]);
}

#[test]
fn lattice_covers_are_rank_steps() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    let l = m.flats();
    for &(i, j) in l.covers() {
        assert_eq!(l.rank(j), l.rank(i) + 1);
        assert!(sets::is_subset(l.flats()[i], l.flats()[j]));
    }
    // Every rank-1 flat is covered by at least one rank-2 flat.
    let atoms = l.of_rank(1).len();
    assert_eq!(atoms, 5);
}

#[test]
fn dual_examples() {
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.dual(), Matroid::uniform(1, 3).unwrap());
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    assert_eq!(m.dual().dual(), m);
}

#[test]
fn minors() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    let d = m.delete(s("1", 5)).unwrap();
    assert_eq!((d.n(), d.rank()), (4, 3));
    assert_eq!(m.contract(0).unwrap(), m);
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.contract(s("1", 3)).unwrap(), Matroid::uniform(1, 2).unwrap());
    assert_eq!(u23.delete(u23.ground()).unwrap_err(), MatroidError::EmptyResult);
    assert_eq!(u23.contract(u23.ground()).unwrap_err(), MatroidError::EmptyResult);
}

#[test]
fn connectivity_examples() {
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    assert!(m.is_connected());
    let u11 = Matroid::uniform(1, 1).unwrap();
    assert!(!u11.direct_sum(&u11).unwrap().is_connected());
    assert!(Matroid::uniform(2, 3).unwrap().is_connected());
}

#[test]
fn roundness_examples() {
    assert!(Matroid::uniform(2, 3).unwrap().is_round());
    let m = Matroid::from_matrix(&example_matrix()).unwrap();
    assert!(!m.is_round());
    let labels: Vec<String> = m.nonround_flats().iter().map(|&f| m.label(f)).collect();
    assert_eq!(labels, vec!["124", "135"]);
    assert!(!Matroid::uniform(3, 4).unwrap().is_round());
    assert!(Matroid::uniform(3, 5).unwrap().is_round());
}

#[test]
fn char_poly_examples() {
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.char_poly().unwrap(), whitney_char_poly(&u23));
    assert_eq!(u23.char_poly().unwrap().to_string(), "t^2-3t+2");
    assert_eq!(u23.reduced_char_poly().unwrap().to_string(), "t-2");
    let u12 = Matroid::uniform(1, 2).unwrap();
    assert_eq!(u12.char_poly().unwrap(), whitney_char_poly(&u12));
    assert_eq!(u12.char_poly().unwrap().to_string(), "t-1");
    assert_eq!(u12.reduced_char_poly().unwrap().to_string(), "1");
    assert_eq!(Matroid::uniform(1, 1).unwrap().char_poly().unwrap().to_string(), "t-1");
    let looped = Matroid::uniform(0, 1).unwrap().direct_sum(&u12).unwrap();
    assert_eq!(looped.char_poly().unwrap_err(), MatroidError::HasLoops);
}

#[test]
fn basis_list_validation() {
    assert!(Matroid::from_bases(3, &[0b011, 0b101, 0b110]).is_ok());
    // {12, 34} violates exchange.
    assert!(matches!(Matroid::from_bases(4, &[0b0011, 0b1100]), Err(MatroidError::InvalidBases(_))));
    assert!(matches!(Matroid::from_bases(3, &[0b011, 0b011]), Err(MatroidError::InvalidBases(_))));
    assert!(matches!(Matroid::from_bases(3, &[0b011, 0b100]), Err(MatroidError::InvalidBases(_))));
    let list = Matroid::uniform(2, 4).unwrap().to_basis_list();
    let json = serde_json::to_string(&list).unwrap();
    let back: BasisList = serde_json::from_str(&json).unwrap();
    assert_eq!(Matroid::from_basis_list(&back).unwrap(), Matroid::uniform(2, 4).unwrap());
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=3, 2usize..=7).prop_flat_map(|(r, n)| {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), r)
            .prop_map(|rows| Matrix::from_i64(Field::Rational, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_table_matches_basis_oracle(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        for x in 0..=m.ground() {
            prop_assert_eq!(m.rank_of(x), rank_by_bases(&m, x));
            prop_assert_eq!(m.rank_of(x), a.select_columns(&sets::elements(x)).rank());
        }
    }

    #[test]
    fn duality_rank_identity(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        let d = m.dual();
        let e = m.ground();
        for x in 0..=e {
            let c = e & !x;
            prop_assert_eq!(d.rank_of(c) + m.rank(), sets::size(c) + m.rank_of(x));
        }
    }

    #[test]
    fn closure_is_a_closure_operator(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        let flats = m.flats();
        for x in 0..=m.ground() {
            let c = m.closure(x);
            prop_assert!(sets::is_subset(x, c));
            prop_assert_eq!(m.closure(c), c);
            prop_assert_eq!(flats.contains(x), c == x);
        }
    }

    #[test]
    fn round_implies_connected(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        if m.loops() == 0 && m.is_round() {
            prop_assert!(m.is_connected());
        }
    }

    #[test]
    fn mobius_matches_whitney(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        if m.loops() == 0 {
            prop_assert_eq!(m.char_poly().unwrap(), whitney_char_poly(&m));
            prop_assert!(m.reduced_char_poly().is_ok());
        }
    }

    #[test]
    fn constructed_matroids_satisfy_exchange(a in small_matrix()) {
        let m = Matroid::column_matroid(&a).unwrap();
        prop_assert!(Matroid::from_bases(m.n(), m.bases()).is_ok());
    }
}
