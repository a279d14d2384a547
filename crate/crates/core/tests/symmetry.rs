use std::collections::BTreeSet;

use gridgather::symmetry::*;
use gridgather::{Configuration, Node};

fn set(ps: &[(i64, i64)]) -> BTreeSet<Node> {
    ps.iter().map(|&p| p.into()).collect()
}

#[test]
fn single_point_has_all_axes() {
    let d = meeting_symmetry(&set(&[(0, 0)]));
    assert_eq!(d.kind, SymmetryKind::MultipleAxes);
    assert_eq!(d.axes.len(), 4);
    assert_eq!(d.rotation.unwrap().angle, RotationAngle::Quarter);
}

#[test]
fn two_points_on_a_row() {
    let d = meeting_symmetry(&set(&[(0, 0), (2, 0)]));
    assert_eq!(d.kind, SymmetryKind::MultipleAxes);
    assert!(d.axes.contains(&Axis {
        orientation: AxisOrientation::Vertical,
        pos2: 2
    }));
    assert!(d.axes.contains(&Axis {
        orientation: AxisOrientation::Horizontal,
        pos2: 0
    }));
    assert_eq!(d.axes.len(), 2);
    assert_eq!(d.rotation.unwrap().angle, RotationAngle::Half);
}

#[test]
fn plus_shape_rotation() {
    let d = meeting_symmetry(&set(&[(0, 0), (2, 0), (1, 1), (1, -1)]));
    assert_eq!(d.rotation.unwrap().angle, RotationAngle::Quarter);
    assert_eq!(d.rotation.unwrap().center_node(), Some(Node::new(1, 0)));
    assert_eq!(d.kind, SymmetryKind::MultipleAxes);
}

#[test]
fn pinwheel_is_pure_rotation() {
    let d = meeting_symmetry(&set(&[(0, 0), (3, 0), (3, 3), (0, 3), (1, 0), (3, 1), (2, 3), (0, 2)]));
    assert_eq!(d.kind, SymmetryKind::Rotation90);
    assert!(d.axes.is_empty());
    let d = meeting_symmetry(&set(&[(0, 0), (3, 1)]));
    assert_eq!(d.kind, SymmetryKind::Rotation180);
    assert_eq!(d.center_node(), None);
}

#[test]
fn single_axis_and_asymmetric() {
    let d = meeting_symmetry(&set(&[(0, 0), (2, 0), (1, 3)]));
    assert_eq!(d.kind, SymmetryKind::Reflection);
    assert_eq!(d.single_axis().unwrap().to_string(), "x=1");
    let d = meeting_symmetry(&set(&[(0, 0), (1, 0), (0, 1)]));
    assert_eq!(d.kind, SymmetryKind::Reflection);
    assert!(d.single_axis().unwrap().is_diagonal());
    let d = meeting_symmetry(&set(&[(0, 0), (1, 0), (3, 2)]));
    assert_eq!(d.kind, SymmetryKind::Asymmetric);
}

#[test]
fn axis_reflection_and_sides() {
    let a = Axis {
        orientation: AxisOrientation::Vertical,
        pos2: 3,
    };
    assert_eq!(a.reflect(Node::new(1, 4)), Some(Node::new(2, 4)));
    assert_eq!(a.side(Node::new(1, 0)), -1);
    assert_eq!(a.side(Node::new(2, 0)), 1);
    assert_eq!(a.to_string(), "x=1.5");
    let d = Axis {
        orientation: AxisOrientation::Diagonal,
        pos2: 2,
    };
    assert_eq!(d.reflect(Node::new(0, 0)), Some(Node::new(-1, 1)));
    assert!(d.contains(Node::new(3, 4)));
    let ad = Axis {
        orientation: AxisOrientation::AntiDiagonal,
        pos2: 4,
    };
    assert_eq!(ad.reflect(Node::new(0, 0)), Some(Node::new(2, 2)));
}

#[test]
fn configuration_symmetry_respects_counts() {
    let c = Configuration::new(
        set(&[(0, 0), (4, 0)]),
        [Node::new(1, 0), Node::new(3, 0), Node::new(2, 1)],
    )
    .unwrap();
    let d = config_symmetry(&c);
    assert_eq!(d.kind, SymmetryKind::Reflection);
    let c2 = c.with_move(Node::new(1, 0), Node::new(3, 0), 1).unwrap();
    assert_eq!(config_symmetry(&c2).kind, SymmetryKind::Asymmetric);
}
