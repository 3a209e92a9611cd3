#include "sg/transform.hpp"

#include "sg/errors.hpp"

namespace sg {

Transform Transform::identity() { return Transform{1, 0, 0, 1, 0, 0}; }

Transform Transform::translation(const Rat& dx, const Rat& dy) {
    return Transform{1, 0, 0, 1, dx, dy};
}

Transform Transform::make(Rat a, Rat b, Rat c, Rat d, Rat e, Rat f) {
    Transform t{std::move(a), std::move(b), std::move(c), std::move(d), std::move(e), std::move(f)};
    if (t.det() == 0) throw InputError("transform is singular");
    return t;
}

Point Transform::operator()(const Point& p) const {
    return Point{a * p.x + b * p.y + e, c * p.x + d * p.y + f};
}

Transform Transform::inverse() const {
    Rat dt = det();
    if (dt == 0) throw InputError("transform is singular");
    Rat ia = d / dt, ib = -b / dt, ic = -c / dt, id = a / dt;
    return Transform{ia, ib, ic, id, -(ia * e + ib * f), -(ic * e + id * f)};
}

Transform Transform::then(const Transform& v) const {
    return Transform{v.a * a + v.b * c, v.a * b + v.b * d,
                     v.c * a + v.d * c, v.c * b + v.d * d,
                     v.a * e + v.b * f + v.e,
                     v.c * e + v.d * f + v.f};
}

bool operator==(const Transform& s, const Transform& t) {
    return s.a == t.a && s.b == t.b && s.c == t.c && s.d == t.d && s.e == t.e && s.f == t.f;
}

int transform_cmp(const Transform& s, const Transform& t) {
    if (int c = rat_cmp(s.a, t.a)) return c;
    if (int c = rat_cmp(s.b, t.b)) return c;
    if (int c = rat_cmp(s.c, t.c)) return c;
    if (int c = rat_cmp(s.d, t.d)) return c;
    if (int c = rat_cmp(s.e, t.e)) return c;
    return rat_cmp(s.f, t.f);
}

Shape apply(const Transform& t, const Shape& s) {
    if (s.kind() == Kind::points) {
        std::vector<LabeledPoint> pts;
        for (const auto& p : s.points()) pts.push_back(LabeledPoint{t(p.pos), p.label});
        return Shape::of_points(std::move(pts));
    }
    std::vector<Segment> segs;
    for (const auto& seg : s.segments()) segs.push_back(Segment{t(seg.a), t(seg.b)});
    return Shape::of_segments(std::move(segs));
}

} // namespace sg
