use gridgather::frame::*;
use gridgather::{Configuration, Node};

fn cfg(m: &[(i64, i64)], r: &[(i64, i64)]) -> Configuration {
    Configuration::new(m.iter().map(|&p| p.into()), r.iter().map(|&p| p.into())).unwrap()
}

#[test]
fn asymmetric_meeting_nodes_have_one_leading_pair() {
    let c = cfg(&[(0, 0), (1, 0), (3, 2), (4, 4)], &[(2, 1), (5, 3)]);
    assert_eq!(leading_corners(&c).len(), 1);
}

#[test]
fn mirror_meeting_nodes_give_mirror_leading_pairs() {
    // Wide rectangle, vertical axis x = 3.
    let c = cfg(&[(1, 0), (5, 0), (3, 2)], &[(0, 1), (6, 1)]);
    let lead = leading_corners(&c);
    assert_eq!(lead.len(), 2);
    assert_eq!(lead[0].corner.node.x + lead[1].corner.node.x, 6);
    assert_eq!(lead[0].corner.node.y, lead[1].corner.node.y);
}

#[test]
fn quarter_turn_meeting_nodes_give_four_corners() {
    let m = [(0, 0), (3, 0), (3, 3), (0, 3), (1, 0), (3, 1), (2, 3), (0, 2)];
    let c = cfg(&m, &[(1, 1)]);
    let frame = Frame::new(&c);
    assert_eq!(frame.leading_corners().len(), 4);
}

#[test]
fn potential_weber_single_and_pair() {
    let c = cfg(&[(4, 4)], &[(0, 0)]);
    assert_eq!(potential_weber_nodes(&c), vec![Node::new(4, 4)]);

    // Mirror Weber pair, mirror leading corners: both are potential.
    let c = cfg(&[(1, 0), (3, 0)], &[(0, 0), (4, 0), (2, 1)]);
    assert_eq!(potential_weber_nodes(&c), vec![Node::new(1, 0), Node::new(3, 0)]);
}

#[test]
fn key_corner_of_two_leading_corners() {
    // Mirror meeting nodes, robots break the tie.
    let c = cfg(&[(1, 0), (5, 0), (3, 2)], &[(0, 1), (6, 1), (1, 1)]);
    let keys = key_corners(&c).unwrap();
    assert_eq!(keys.len(), 1);
    assert_eq!(keys[0].corner.node, Node::new(6, 0));
    let c = cfg(&[(0, 0), (1, 0), (3, 2), (4, 4)], &[(2, 1), (5, 3)]);
    assert!(key_corners(&c).is_err());
}
