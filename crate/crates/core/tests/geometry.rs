use geoperm::geometry::{
    check_certificate, format_rational, orient4, parse_rational, point_on_line, triangles_disjoint, GeometryError,
    Point3, Rational, Rejection, TriangleConfig,
};
use geoperm::model::TaggedPattern;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn point() -> impl Strategy<Value = Point3> {
    [rational(), rational(), rational()]
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn pt(a: &str, b: &str, c: &str) -> Point3 {
    [q(a), q(b), q(c)]
}

proptest! {
    #[test]
    fn orient4_is_alternating(p in point(), r in point(), s in point(), t in point()) {
        let o = orient4(&p, &r, &s, &t);
        prop_assert_eq!(orient4(&r, &p, &s, &t), -o);
        prop_assert_eq!(orient4(&p, &r, &t, &s), -o);
        prop_assert_eq!(orient4(&r, &s, &t, &p), -o);
        prop_assert_eq!(orient4(&p, &p, &s, &t), 0);
    }

    #[test]
    fn orient4_ignores_translation(p in point(), r in point(), s in point(), t in point(), d in point()) {
        let shift = |a: &Point3| [&a[0] + &d[0], &a[1] + &d[1], &a[2] + &d[2]];
        prop_assert_eq!(orient4(&shift(&p), &shift(&r), &shift(&s), &shift(&t)), orient4(&p, &r, &s, &t));
    }

    #[test]
    fn orient4_is_affine_in_last_point(p in point(), r in point(), s in point(), a in point(), b in point()) {
        let mid = [
            (&a[0] + &b[0]) / Rational::from_integer(2.into()),
            (&a[1] + &b[1]) / Rational::from_integer(2.into()),
            (&a[2] + &b[2]) / Rational::from_integer(2.into()),
        ];
        let (oa, ob) = (orient4(&p, &r, &s, &a), orient4(&p, &r, &s, &b));
        if oa == ob {
            prop_assert_eq!(orient4(&p, &r, &s, &mid), oa);
        }
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

#[test]
fn simplex_orientation() {
    let o = pt("0", "0", "0");
    let (e1, e2, e3) = (pt("1", "0", "0"), pt("0", "1", "0"), pt("0", "0", "1"));
    assert_eq!(orient4(&o, &e1, &e2, &e3), -1);
    assert_eq!(orient4(&e1, &o, &e2, &e3), 1);
}

#[test]
fn large_coordinates() {
    let big = "123456789012345678901234567890";
    let p = [pt("0", "0", "0"), pt(big, "0", "0"), pt("0", big, "0"), pt("0", "0", &format!("1/{big}"))];
    assert_eq!(orient4(&p[0], &p[1], &p[2], &p[3]), -1);
}

#[test]
fn disjoint_and_crossing_triangles() {
    let t1 = [pt("0", "0", "0"), pt("4", "0", "0"), pt("0", "4", "0")];
    let far = [pt("0", "0", "1"), pt("4", "0", "1"), pt("0", "4", "1")];
    let crossing = [pt("1", "1", "-1"), pt("1", "1", "1"), pt("-3", "5", "1")];
    assert_eq!(triangles_disjoint(&t1, &far), Ok(true));
    assert_eq!(triangles_disjoint(&t1, &crossing), Ok(false));
    let touching = [pt("0", "0", "0"), pt("1", "1", "1"), pt("-1", "2", "3")];
    assert_eq!(triangles_disjoint(&t1, &touching), Err(GeometryError::Degenerate));
}

#[test]
fn canonical_points() {
    let t = q("5/2");
    assert_eq!(point_on_line(0, &t), [t.clone(), Rational::one(), Rational::zero()]);
    assert_eq!(point_on_line(1, &t), [Rational::zero(), t.clone(), Rational::one()]);
    assert_eq!(point_on_line(2, &t), [Rational::one(), Rational::zero(), t]);
}

#[test]
fn certificate_rejections() {
    let p: TaggedPattern = "z o 0 1 | z o 0 1 | z o 0 1".parse().unwrap();
    let cfg = |s: &str| s.parse::<TriangleConfig>().unwrap();
    assert_eq!(
        check_certificate(&p, &cfg("x: 3 2\ny: 2 3\nz: 2 3\n")).unwrap(),
        Err(Rejection::Order { line: 0, position: 1 })
    );
    assert_eq!(check_certificate(&p, &cfg("x: 1 2\ny: 2 3\nz: 2 3\n")).unwrap(), Err(Rejection::Forbidden(0)));
    assert_eq!(check_certificate(&p, &cfg("x: 1/2 2\ny: 2 3\nz: 2 3\n")).unwrap(), Err(Rejection::Region(0)));
    assert_eq!(
        check_certificate(&p, &cfg("x: 2\ny: 3\nz: 4\n")).unwrap(),
        Err(Rejection::Size { expected: 2, found: 1 })
    );
    assert!(matches!(
        "x: 2 3\ny: 2 3\nz: 2 3 4\n".parse::<TriangleConfig>(),
        Err(GeometryError::SizeMismatch { line: 2, .. })
    ));
}

#[test]
fn config_text_round_trip() {
    let c: TriangleConfig = "x: -1/2 3\ny: 7/3 -4\nz: 1/5 9\n".parse().unwrap();
    assert_eq!(c.to_string().parse::<TriangleConfig>().unwrap(), c);
    assert_eq!(c.coordinate(3), &q("-4"));
}
