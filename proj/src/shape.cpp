#include "sg/shape.hpp"

#include "sg/errors.hpp"

#include <algorithm>

namespace sg {

bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }

int point_cmp(const Point& p, const Point& q) {
    if (int c = rat_cmp(p.x, q.x)) return c;
    return rat_cmp(p.y, q.y);
}

bool operator==(const Segment& s, const Segment& t) { return s.a == t.a && s.b == t.b; }

int segment_cmp(const Segment& s, const Segment& t) {
    if (int c = point_cmp(s.a, t.a)) return c;
    return point_cmp(s.b, t.b);
}

bool operator==(const LabeledPoint& p, const LabeledPoint& q) {
    return p.pos == q.pos && p.label == q.label;
}

int labeled_point_cmp(const LabeledPoint& p, const LabeledPoint& q) {
    if (int c = point_cmp(p.pos, q.pos)) return c;
    return p.label.compare(q.label);
}

Carrier Carrier::through(const Point& p, const Point& q) {
    if (p == q) throw InputError("carrier through coincident points");
    Rat ra = q.y - p.y;
    Rat rb = p.x - q.x;
    Rat rc = ra * p.x + rb * p.y;
    Int lcm_den;
    mpz_lcm(lcm_den.get_mpz_t(), ra.get_den().get_mpz_t(), rb.get_den().get_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), rc.get_den().get_mpz_t());
    Int a = ra.get_num() * (lcm_den / ra.get_den());
    Int b = rb.get_num() * (lcm_den / rb.get_den());
    Int c = rc.get_num() * (lcm_den / rc.get_den());
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0) { a /= g; b /= g; c /= g; }
    if (a < 0 || (a == 0 && b < 0)) { a = -a; b = -b; c = -c; }
    return Carrier{a, b, c};
}

Rat Carrier::param_of(const Point& p) const { return vertical() ? p.y : p.x; }

Point Carrier::point_at(const Rat& t) const {
    if (vertical()) return Point{Rat(c) / Rat(a), t};
    return Point{t, (Rat(c) - Rat(a) * t) / Rat(b)};
}

bool Carrier::contains(const Point& p) const { return Rat(a) * p.x + Rat(b) * p.y == Rat(c); }

bool operator==(const Carrier& u, const Carrier& v) {
    return u.a == v.a && u.b == v.b && u.c == v.c;
}

int carrier_cmp(const Carrier& u, const Carrier& v) {
    if (int c = cmp(u.a, v.a)) return c;
    if (int c = cmp(u.b, v.b)) return c;
    return cmp(u.c, v.c);
}

namespace {

// Sorts spans and fuses any that overlap or abut.
void normalize_spans(std::vector<Span>& spans) {
    std::sort(spans.begin(), spans.end(), [](const Span& s, const Span& t) {
        if (int c = rat_cmp(s.first, t.first)) return c < 0;
        return rat_cmp(s.second, t.second) < 0;
    });
    std::vector<Span> out;
    for (auto& s : spans) {
        if (!out.empty() && rat_cmp(s.first, out.back().second) <= 0) {
            if (rat_cmp(s.second, out.back().second) > 0) out.back().second = s.second;
        } else {
            out.push_back(s);
        }
    }
    spans = std::move(out);
}

std::vector<Span> intersect_spans(const std::vector<Span>& xs, const std::vector<Span>& ys) {
    std::vector<Span> out;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        const Rat& lo = rat_cmp(xs[i].first, ys[j].first) > 0 ? xs[i].first : ys[j].first;
        const Rat& hi = rat_cmp(xs[i].second, ys[j].second) < 0 ? xs[i].second : ys[j].second;
        if (rat_cmp(lo, hi) < 0) out.emplace_back(lo, hi); // point overlaps vanish
        if (rat_cmp(xs[i].second, ys[j].second) < 0) ++i; else ++j;
    }
    return out;
}

// Closed-span subtraction: removes shared sub-spans, keeping closed
// remainders (endpoints of removed pieces stay).
std::vector<Span> subtract_spans(const std::vector<Span>& xs, const std::vector<Span>& ys) {
    std::vector<Span> out;
    for (const auto& x : xs) {
        Rat lo = x.first;
        for (const auto& y : ys) {
            if (rat_cmp(y.second, lo) <= 0) continue;
            if (rat_cmp(y.first, x.second) >= 0) break;
            if (rat_cmp(y.first, lo) > 0) out.emplace_back(lo, y.first);
            if (rat_cmp(y.second, lo) > 0) lo = y.second;
            if (rat_cmp(lo, x.second) >= 0) break;
        }
        if (rat_cmp(lo, x.second) < 0) out.emplace_back(lo, x.second);
    }
    return out;
}

// True when [lo, hi] lies inside a single span of xs (xs disjoint,
// non-abutting, sorted).
bool spans_cover(const std::vector<Span>& xs, const Span& s) {
    for (const auto& x : xs) {
        if (rat_cmp(x.first, s.first) <= 0 && rat_cmp(s.second, x.second) <= 0) return true;
        if (rat_cmp(x.first, s.second) >= 0) return false;
    }
    return false;
}

Shape from_span_map(const SpanMap& m) {
    std::vector<Segment> segs;
    for (const auto& [carrier, spans] : m)
        for (const auto& s : spans)
            segs.push_back(Segment{carrier.point_at(s.first), carrier.point_at(s.second)});
    return Shape::of_segments(std::move(segs));
}

void require_same_kind(const Shape& x, const Shape& y) {
    if (x.kind() != y.kind())
        throw InputError("operands mix segment and point shapes");
}

std::vector<LabeledPoint> point_set(const Shape& x) { return x.points(); }

} // namespace

Shape Shape::empty(Kind k) {
    Shape s;
    s.kind_ = k;
    return s;
}

Shape Shape::of_segments(std::vector<Segment> raw) {
    SpanMap m;
    for (auto& seg : raw) {
        if (seg.a == seg.b) throw InputError("degenerate segment (coincident endpoints)");
        Segment s = seg;
        if (point_cmp(s.b, s.a) < 0) std::swap(s.a, s.b);
        Carrier c = Carrier::through(s.a, s.b);
        Rat lo = c.param_of(s.a), hi = c.param_of(s.b);
        if (rat_cmp(hi, lo) < 0) std::swap(lo, hi);
        m[c].emplace_back(lo, hi);
    }
    Shape out;
    out.kind_ = Kind::segments;
    for (auto& [carrier, spans] : m) {
        normalize_spans(spans);
        for (const auto& s : spans)
            out.segs_.push_back(Segment{carrier.point_at(s.first), carrier.point_at(s.second)});
    }
    std::sort(out.segs_.begin(), out.segs_.end(),
              [](const Segment& s, const Segment& t) { return segment_cmp(s, t) < 0; });
    return out;
}

Shape Shape::of_points(std::vector<LabeledPoint> raw) {
    std::sort(raw.begin(), raw.end(), [](const LabeledPoint& p, const LabeledPoint& q) {
        return labeled_point_cmp(p, q) < 0;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Shape out;
    out.kind_ = Kind::points;
    out.pts_ = std::move(raw);
    return out;
}

Shape Shape::segment(const Point& a, const Point& b) {
    return of_segments({Segment{a, b}});
}

SpanMap Shape::span_map() const {
    SpanMap m;
    for (const auto& seg : segs_) {
        Carrier c = Carrier::through(seg.a, seg.b);
        Rat lo = c.param_of(seg.a), hi = c.param_of(seg.b);
        if (rat_cmp(hi, lo) < 0) std::swap(lo, hi);
        m[c].emplace_back(lo, hi);
    }
    for (auto& [carrier, spans] : m) normalize_spans(spans);
    return m;
}

bool operator==(const Shape& x, const Shape& y) { return shape_cmp(x, y) == 0; }

int shape_cmp(const Shape& x, const Shape& y) {
    if (x.kind() != y.kind()) return x.kind() == Kind::segments ? -1 : 1;
    if (x.kind() == Kind::segments) {
        if (x.segments().size() != y.segments().size())
            return x.segments().size() < y.segments().size() ? -1 : 1;
        for (std::size_t i = 0; i < x.segments().size(); ++i)
            if (int c = segment_cmp(x.segments()[i], y.segments()[i])) return c;
        return 0;
    }
    if (x.points().size() != y.points().size())
        return x.points().size() < y.points().size() ? -1 : 1;
    for (std::size_t i = 0; i < x.points().size(); ++i)
        if (int c = labeled_point_cmp(x.points()[i], y.points()[i])) return c;
    return 0;
}

bool part_of(const Shape& x, const Shape& y) {
    require_same_kind(x, y);
    if (x.kind() == Kind::points) {
        const auto& xs = x.points();
        const auto& ys = y.points();
        return std::includes(ys.begin(), ys.end(), xs.begin(), xs.end(),
                             [](const LabeledPoint& p, const LabeledPoint& q) {
                                 return labeled_point_cmp(p, q) < 0;
                             });
    }
    SpanMap xm = x.span_map(), ym = y.span_map();
    for (const auto& [carrier, spans] : xm) {
        auto it = ym.find(carrier);
        if (it == ym.end()) return false;
        for (const auto& s : spans)
            if (!spans_cover(it->second, s)) return false;
    }
    return true;
}

Shape sum(const Shape& x, const Shape& y) {
    require_same_kind(x, y);
    if (x.kind() == Kind::points) {
        auto pts = point_set(x);
        auto more = point_set(y);
        pts.insert(pts.end(), more.begin(), more.end());
        return Shape::of_points(std::move(pts));
    }
    SpanMap m = x.span_map();
    for (const auto& [carrier, spans] : y.span_map()) {
        auto& dst = m[carrier];
        dst.insert(dst.end(), spans.begin(), spans.end());
        normalize_spans(dst);
    }
    return from_span_map(m);
}

Shape product(const Shape& x, const Shape& y) {
    require_same_kind(x, y);
    if (x.kind() == Kind::points) {
        std::vector<LabeledPoint> out;
        const auto& xs = x.points();
        const auto& ys = y.points();
        std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(),
                              std::back_inserter(out),
                              [](const LabeledPoint& p, const LabeledPoint& q) {
                                  return labeled_point_cmp(p, q) < 0;
                              });
        return Shape::of_points(std::move(out));
    }
    SpanMap xm = x.span_map(), ym = y.span_map(), out;
    for (const auto& [carrier, spans] : xm) {
        auto it = ym.find(carrier);
        if (it == ym.end()) continue;
        auto shared = intersect_spans(spans, it->second);
        if (!shared.empty()) out[carrier] = std::move(shared);
    }
    return from_span_map(out);
}

Shape difference(const Shape& x, const Shape& y) {
    require_same_kind(x, y);
    if (x.kind() == Kind::points) {
        std::vector<LabeledPoint> out;
        const auto& xs = x.points();
        const auto& ys = y.points();
        std::set_difference(xs.begin(), xs.end(), ys.begin(), ys.end(),
                            std::back_inserter(out),
                            [](const LabeledPoint& p, const LabeledPoint& q) {
                                return labeled_point_cmp(p, q) < 0;
                            });
        return Shape::of_points(std::move(out));
    }
    SpanMap xm = x.span_map(), ym = y.span_map(), out;
    for (const auto& [carrier, spans] : xm) {
        auto it = ym.find(carrier);
        std::vector<Span> rest = it == ym.end() ? spans : subtract_spans(spans, it->second);
        if (!rest.empty()) out[carrier] = std::move(rest);
    }
    return from_span_map(out);
}

Shape sym_difference(const Shape& x, const Shape& y) {
    return sum(difference(x, y), difference(y, x));
}

std::vector<Shape> atomize(const std::vector<Shape>& context, std::size_t max_cells) {
    if (context.empty()) return {};
    Kind kind = context.front().kind();
    for (const auto& s : context)
        if (s.kind() != kind) throw InputError("atomize context mixes shape kinds");

    if (kind == Kind::points) {
        std::vector<LabeledPoint> all;
        for (const auto& s : context)
            for (const auto& p : s.points()) all.push_back(p);
        std::sort(all.begin(), all.end(), [](const LabeledPoint& p, const LabeledPoint& q) {
            return labeled_point_cmp(p, q) < 0;
        });
        all.erase(std::unique(all.begin(), all.end()), all.end());
        if (all.size() > max_cells) throw CapacityError("atomize: cell bound exceeded");
        std::vector<Shape> cells;
        for (const auto& p : all) cells.push_back(Shape::of_points({p}));
        return cells;
    }

    // Union of all spans per carrier, plus the cut points on each carrier:
    // every span endpoint contributed by any context shape and every
    // crossing with a non-parallel context carrier.
    SpanMap all;
    std::map<Carrier, std::vector<Rat>> cuts;
    for (const auto& s : context) {
        for (const auto& [carrier, spans] : s.span_map()) {
            auto& dst = all[carrier];
            dst.insert(dst.end(), spans.begin(), spans.end());
            auto& cut = cuts[carrier];
            for (const auto& sp : spans) {
                cut.push_back(sp.first);
                cut.push_back(sp.second);
            }
        }
    }
    for (auto& [carrier, spans] : all) normalize_spans(spans);
    std::vector<Carrier> carriers;
    for (const auto& [carrier, spans] : all) carriers.push_back(carrier);
    for (std::size_t i = 0; i < carriers.size(); ++i) {
        for (std::size_t j = i + 1; j < carriers.size(); ++j) {
            const Carrier &u = carriers[i], &v = carriers[j];
            Rat det = Rat(u.a) * Rat(v.b) - Rat(v.a) * Rat(u.b);
            if (det == 0) continue;
            Rat px = (Rat(u.c) * Rat(v.b) - Rat(v.c) * Rat(u.b)) / det;
            Rat py = (Rat(u.a) * Rat(v.c) - Rat(v.a) * Rat(u.c)) / det;
            Point p{px, py};
            cuts[u].push_back(u.param_of(p));
            cuts[v].push_back(v.param_of(p));
        }
    }

    std::vector<Shape> cells;
    auto push_cell = [&](const Point& a, const Point& b) {
        if (cells.size() >= max_cells) throw CapacityError("atomize: cell bound exceeded");
        cells.push_back(Shape::segment(a, b));
    };
    for (const auto& [carrier, spans] : all) {
        auto& cut = cuts[carrier];
        std::sort(cut.begin(), cut.end(), [](const Rat& a, const Rat& b) { return a < b; });
        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
        for (const auto& sp : spans) {
            Rat lo = sp.first;
            for (const auto& t : cut) {
                if (rat_cmp(t, lo) <= 0) continue;
                if (rat_cmp(t, sp.second) >= 0) break;
                push_cell(carrier.point_at(lo), carrier.point_at(t));
                lo = t;
            }
            push_cell(carrier.point_at(lo), carrier.point_at(sp.second));
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Shape& a, const Shape& b) { return shape_cmp(a, b) < 0; });
    return cells;
}

} // namespace sg
