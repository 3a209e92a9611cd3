#include "sg/match.hpp"

#include "sg/errors.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace sg {

namespace {

struct Linear {
    Rat a, b, c, d; // x -> (a x + b y, c x + d y)
    Point map(const Point& p) const { return Point{a * p.x + b * p.y, c * p.x + d * p.y}; }
};

const std::array<Linear, 1>& translation_parts() {
    static const std::array<Linear, 1> parts{{{1, 0, 0, 1}}};
    return parts;
}

// The four rotations by quarter turns and the reflections across the two
// axes and the two diagonals.
const std::array<Linear, 8>& isometry_parts() {
    static const std::array<Linear, 8> parts{{
        {1, 0, 0, 1},
        {0, -1, 1, 0},
        {-1, 0, 0, -1},
        {0, 1, -1, 0},
        {1, 0, 0, -1},
        {-1, 0, 0, 1},
        {0, 1, 1, 0},
        {0, -1, -1, 0},
    }};
    return parts;
}

Transform affine(const Linear& l, const Rat& s, const Point& v) {
    return Transform{s * l.a, s * l.b, s * l.c, s * l.d, v.x, v.y};
}

bool parallel(const Rat& ux, const Rat& uy, const Rat& vx, const Rat& vy) {
    return ux * vy - uy * vx == 0;
}

// Direction vector of a carrier line.
std::pair<Rat, Rat> direction(const Carrier& c) { return {Rat(c.b), -Rat(c.a)}; }

std::vector<Carrier> carriers_of(const Shape& s) {
    std::vector<Carrier> out;
    for (const auto& [carrier, spans] : s.span_map()) out.push_back(carrier);
    return out;
}

std::optional<Point> line_crossing(const Carrier& u, const Carrier& v) {
    Rat det = Rat(u.a) * Rat(v.b) - Rat(v.a) * Rat(u.b);
    if (det == 0) return std::nullopt;
    return Point{(Rat(u.c) * Rat(v.b) - Rat(v.c) * Rat(u.b)) / det,
                 (Rat(u.a) * Rat(v.c) - Rat(v.a) * Rat(u.c)) / det};
}

// Solves mi.a * v.x + mi.b * v.y = ri for v.
std::optional<Point> solve_offset(const Carrier& m1, const Rat& r1, const Carrier& m2,
                                  const Rat& r2) {
    Rat det = Rat(m1.a) * Rat(m2.b) - Rat(m2.a) * Rat(m1.b);
    if (det == 0) return std::nullopt;
    return Point{(r1 * Rat(m2.b) - r2 * Rat(m1.b)) / det,
                 (Rat(m1.a) * r2 - Rat(m2.a) * r1) / det};
}

bool image_uses_full_elements(const Shape& image, const Shape& host) {
    if (image.kind() == Kind::points) return part_of(image, host);
    const auto& hs = host.segments();
    for (const auto& seg : image.segments()) {
        bool found = std::binary_search(
            hs.begin(), hs.end(), seg,
            [](const Segment& s, const Segment& t) { return segment_cmp(s, t) < 0; });
        if (!found) return false;
    }
    return true;
}

void collect(std::vector<Match>& out, const Transform& t, const Shape& a, const Shape& host,
             bool determinate) {
    Shape image = apply(t, a);
    if (!part_of(image, host)) return;
    if (determinate && !image_uses_full_elements(image, host)) return;
    out.push_back(Match{t, std::move(image)});
}

void finalize(std::vector<Match>& out) {
    std::sort(out.begin(), out.end(), [](const Match& x, const Match& y) {
        if (int c = transform_cmp(x.t, y.t)) return c < 0;
        return shape_cmp(x.image, y.image) < 0;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Match& x, const Match& y) {
                              return x.t == y.t && x.image == y.image;
                          }),
              out.end());
}

// Indeterminate segment matching: register two non-parallel carriers of a
// against host carriers; each registration constrains the offset linearly.
void match_segments(std::vector<Match>& out, const Shape& a, const Shape& host,
                    TransformGroup group, bool determinate) {
    std::vector<Carrier> ca = carriers_of(a);
    std::vector<Carrier> ch = carriers_of(host);
    const Carrier& l1 = ca.front();
    auto [d1x, d1y] = direction(l1);
    const Carrier* l2 = nullptr;
    for (const auto& c : ca) {
        auto [dx, dy] = direction(c);
        if (!parallel(d1x, d1y, dx, dy)) { l2 = &c; break; }
    }
    if (!l2)
        throw InputError(
            "matching is indeterminate: all carrier lines of the pattern are parallel, so "
            "translations along them embed it in a continuum of positions");
    auto [d2x, d2y] = direction(*l2);
    Point p1 = l1.point_at(0), p2 = l2->point_at(0);

    bool scaled = group == TransformGroup::similarities;
    const Linear* parts_begin;
    std::size_t parts_count;
    if (group == TransformGroup::translations) {
        parts_begin = translation_parts().data();
        parts_count = translation_parts().size();
    } else {
        parts_begin = isometry_parts().data();
        parts_count = isometry_parts().size();
    }

    const Carrier* l3 = nullptr;
    Point p3{0, 0};
    if (scaled) {
        Point q12 = *line_crossing(l1, *l2);
        for (const auto& c : ca)
            if (!c.contains(q12)) { l3 = &c; break; }
        if (!l3)
            throw InputError(
                "similarity matching is indeterminate: every carrier line of the pattern runs "
                "through one point, so scaling about it embeds it at a continuum of scales");
        p3 = l3->point_at(0);
    }

    for (std::size_t li = 0; li < parts_count; ++li) {
        const Linear& L = parts_begin[li];
        Point q1 = L.map(p1), q2 = L.map(p2);
        Point e1 = L.map(Point{d1x, d1y}), e2 = L.map(Point{d2x, d2y});
        for (const auto& m1 : ch) {
            auto [m1dx, m1dy] = direction(m1);
            if (!parallel(e1.x, e1.y, m1dx, m1dy)) continue;
            for (const auto& m2 : ch) {
                auto [m2dx, m2dy] = direction(m2);
                if (!parallel(e2.x, e2.y, m2dx, m2dy)) continue;
                if (!scaled) {
                    Rat r1 = Rat(m1.c) - (Rat(m1.a) * q1.x + Rat(m1.b) * q1.y);
                    Rat r2 = Rat(m2.c) - (Rat(m2.a) * q2.x + Rat(m2.b) * q2.y);
                    auto v = solve_offset(m1, r1, m2, r2);
                    if (!v) continue;
                    collect(out, affine(L, 1, *v), a, host, determinate);
                    continue;
                }
                // Unknowns (s, vx, vy); one row per registered line:
                //   (mi . L pi) s + mi.a vx + mi.b vy = mi.c
                Point q3 = L.map(p3);
                for (const auto& m3 : ch) {
                    auto [m3dx, m3dy] = direction(m3);
                    Point e3 = L.map(Point{direction(*l3).first, direction(*l3).second});
                    if (!parallel(e3.x, e3.y, m3dx, m3dy)) continue;
                    Rat k1 = Rat(m1.a) * q1.x + Rat(m1.b) * q1.y;
                    Rat k2 = Rat(m2.a) * q2.x + Rat(m2.b) * q2.y;
                    Rat k3 = Rat(m3.a) * q3.x + Rat(m3.b) * q3.y;
                    Rat det = k1 * (Rat(m2.a) * Rat(m3.b) - Rat(m3.a) * Rat(m2.b)) -
                              Rat(m1.a) * (k2 * Rat(m3.b) - k3 * Rat(m2.b)) +
                              Rat(m1.b) * (k2 * Rat(m3.a) - k3 * Rat(m2.a));
                    if (det == 0) continue;
                    Rat c1 = Rat(m1.c), c2 = Rat(m2.c), c3 = Rat(m3.c);
                    Rat s = (c1 * (Rat(m2.a) * Rat(m3.b) - Rat(m3.a) * Rat(m2.b)) -
                             Rat(m1.a) * (c2 * Rat(m3.b) - c3 * Rat(m2.b)) +
                             Rat(m1.b) * (c2 * Rat(m3.a) - c3 * Rat(m2.a))) /
                            det;
                    if (s <= 0) continue;
                    Rat vx = (k1 * (c2 * Rat(m3.b) - c3 * Rat(m2.b)) -
                              c1 * (k2 * Rat(m3.b) - k3 * Rat(m2.b)) +
                              Rat(m1.b) * (k2 * c3 - k3 * c2)) /
                             det;
                    Rat vy = (k1 * (Rat(m2.a) * c3 - Rat(m3.a) * c2) -
                              Rat(m1.a) * (k2 * c3 - k3 * c2) +
                              c1 * (k2 * Rat(m3.a) - k3 * Rat(m2.a))) /
                             det;
                    collect(out, affine(L, s, Point{vx, vy}), a, host, determinate);
                }
            }
        }
    }
}

// Determinate segment matching: the first element of a must land exactly on
// a full host element, endpoint to endpoint.
void match_segments_determinate(std::vector<Match>& out, const Shape& a, const Shape& host,
                                TransformGroup group) {
    const Segment& s0 = a.segments().front();
    bool scaled = group == TransformGroup::similarities;
    const Linear* parts_begin;
    std::size_t parts_count;
    if (group == TransformGroup::translations) {
        parts_begin = translation_parts().data();
        parts_count = translation_parts().size();
    } else {
        parts_begin = isometry_parts().data();
        parts_count = isometry_parts().size();
    }
    for (std::size_t li = 0; li < parts_count; ++li) {
        const Linear& L = parts_begin[li];
        Point la = L.map(s0.a), lb = L.map(s0.b);
        Rat dx = lb.x - la.x, dy = lb.y - la.y;
        for (const auto& h : host.segments()) {
            for (int orient = 0; orient < 2; ++orient) {
                Point tgt_a = orient == 0 ? h.a : h.b;
                Point tgt_b = orient == 0 ? h.b : h.a;
                Rat mx = tgt_b.x - tgt_a.x, my = tgt_b.y - tgt_a.y;
                Rat s = 1;
                if (scaled) {
                    if (!parallel(dx, dy, mx, my)) continue;
                    if (dx != 0) s = mx / dx;
                    else s = my / dy;
                    if (s <= 0) continue;
                } else if (mx != dx || my != dy) {
                    continue;
                }
                Point v{tgt_a.x - s * la.x, tgt_a.y - s * la.y};
                collect(out, affine(L, s, v), a, host, true);
            }
        }
    }
}

void match_points(std::vector<Match>& out, const Shape& a, const Shape& host,
                  TransformGroup group, bool determinate) {
    const auto& pa = a.points();
    const auto& ph = host.points();
    bool scaled = group == TransformGroup::similarities;
    if (scaled && pa.size() < 2)
        throw InputError(
            "similarity matching is indeterminate: a single point embeds at every scale");
    const Linear* parts_begin;
    std::size_t parts_count;
    if (group == TransformGroup::translations) {
        parts_begin = translation_parts().data();
        parts_count = translation_parts().size();
    } else {
        parts_begin = isometry_parts().data();
        parts_count = isometry_parts().size();
    }
    const Point& p0 = pa.front().pos;
    for (std::size_t li = 0; li < parts_count; ++li) {
        const Linear& L = parts_begin[li];
        Point q0 = L.map(p0);
        if (!scaled) {
            for (const auto& hp : ph) {
                Point v{hp.pos.x - q0.x, hp.pos.y - q0.y};
                collect(out, affine(L, 1, v), a, host, determinate);
            }
            continue;
        }
        Point q1 = L.map(pa[1].pos);
        Rat dx = q1.x - q0.x, dy = q1.y - q0.y;
        for (const auto& hp : ph) {
            for (const auto& hq : ph) {
                Rat mx = hq.pos.x - hp.pos.x, my = hq.pos.y - hp.pos.y;
                if (!parallel(dx, dy, mx, my)) continue;
                Rat s;
                if (dx != 0) s = mx / dx;
                else s = my / dy;
                if (s <= 0) continue;
                Point v{hp.pos.x - s * q0.x, hp.pos.y - s * q0.y};
                collect(out, affine(L, s, v), a, host, determinate);
            }
        }
    }
}

} // namespace

std::vector<Match> enumerate_matches(const Shape& a, const Shape& host, TransformGroup group,
                                     bool determinate) {
    if (a.kind() != host.kind()) throw InputError("pattern and host have different kinds");
    if (a.empty_shape())
        throw InputError("cannot match an empty pattern: every transform embeds it");
    std::vector<Match> out;
    if (group == TransformGroup::identity) {
        collect(out, Transform::identity(), a, host, determinate);
        return out;
    }
    if (a.kind() == Kind::points) {
        match_points(out, a, host, group, determinate);
    } else if (determinate) {
        match_segments_determinate(out, a, host, group);
    } else {
        match_segments(out, a, host, group, determinate);
    }
    finalize(out);
    return out;
}

} // namespace sg
