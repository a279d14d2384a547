use gridgather::node::*;

#[test]
fn distance_examples() {
    assert_eq!(manhattan_distance(Node::new(0, 0), Node::new(0, 0)), 0);
    assert_eq!(manhattan_distance(Node::new(0, 0), Node::new(3, 4)), 7);
    assert_eq!(manhattan_distance(Node::new(-2, 5), Node::new(1, 1)), 7);
}

#[test]
fn isometry_inverse_round_trips() {
    let p = Node::new(3, -7);
    for lin in Isometry::linear_parts() {
        let g = Isometry { dx: 5, dy: -2, ..lin };
        assert_eq!(g.inverse().apply(g.apply(p)), p, "{g:?}");
    }
}

#[test]
fn isometries_preserve_distance() {
    let a = Node::new(1, 2);
    let b = Node::new(-4, 9);
    for lin in Isometry::linear_parts() {
        let g = Isometry { dx: -3, dy: 11, ..lin };
        assert_eq!(manhattan_distance(g.apply(a), g.apply(b)), manhattan_distance(a, b));
    }
}
