use gridgather::{Configuration, Error, Node};

fn cfg(m: &[(i64, i64)], r: &[(i64, i64)]) -> Configuration {
    Configuration::new(m.iter().map(|&p| p.into()), r.iter().map(|&p| p.into())).unwrap()
}

#[test]
fn consistency_examples() {
    let c = cfg(&[(0, 0)], &[(0, 0); 5]);
    assert_eq!(c.consistency(Node::new(0, 0)).unwrap(), 0);

    let c = cfg(&[(1, 0), (3, 0)], &[(0, 0), (4, 0), (2, 1)]);
    assert_eq!(c.consistency(Node::new(1, 0)).unwrap(), 6);
    assert_eq!(c.consistency(Node::new(3, 0)).unwrap(), 6);
    assert_eq!(
        c.consistency(Node::new(2, 0)),
        Err(Error::NotMeetingNode(Node::new(2, 0)))
    );
}

#[test]
fn weber_examples() {
    let c = cfg(&[(5, 5)], &[(0, 0), (9, 2)]);
    assert_eq!(c.weber_nodes(), vec![Node::new(5, 5)]);

    let c = cfg(&[(1, 0), (3, 0)], &[(0, 0), (4, 0), (2, 1)]);
    assert_eq!(c.weber_nodes(), vec![Node::new(1, 0), Node::new(3, 0)]);

    let c = cfg(&[(1, 0), (3, 0)], &[(0, 0), (0, 0), (4, 0)]);
    assert_eq!(c.weber_nodes(), vec![Node::new(1, 0)]);
}

#[test]
fn rejects_bad_input() {
    assert!(Configuration::new([Node::new(0, 0), Node::new(0, 0)], [Node::new(1, 1)]).is_err());
    assert!(Configuration::new([], [Node::new(1, 1)]).is_err());
    assert!(Configuration::new([Node::new(0, 0)], []).is_err());
    let c = cfg(&[(0, 0)], &[(1, 1), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6)]);
    assert!(c.validate_initial().is_err());
    let c = cfg(&[(0, 0)], &[(1, 1), (2, 2)]);
    assert!(c.validate_initial().is_err());
}

#[test]
fn gathered_detection() {
    assert_eq!(cfg(&[(0, 0)], &[(0, 0); 3]).gathered_at(), Some(Node::new(0, 0)));
    assert_eq!(cfg(&[(0, 0)], &[(1, 0); 3]).gathered_at(), None);
    assert_eq!(cfg(&[(0, 0)], &[(0, 0), (1, 0)]).gathered_at(), None);
}
