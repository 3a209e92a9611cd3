#pragma once

#include "sg/rat.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sg {

struct Point {
    Rat x, y;
};

bool operator==(const Point& p, const Point& q);
int point_cmp(const Point& p, const Point& q); // lexicographic: x, then y
inline bool operator<(const Point& p, const Point& q) { return point_cmp(p, q) < 0; }

// Closed line segment with endpoints in canonical order (a < b).
struct Segment {
    Point a, b;
};

bool operator==(const Segment& s, const Segment& t);
int segment_cmp(const Segment& s, const Segment& t);

struct LabeledPoint {
    Point pos;
    std::string label; // may be empty
};

bool operator==(const LabeledPoint& p, const LabeledPoint& q);
int labeled_point_cmp(const LabeledPoint& p, const LabeledPoint& q);

// Infinite line a*x + b*y = c with integer coefficients, gcd-reduced,
// sign-normalized so that a > 0, or a == 0 and b > 0. Two segments are
// collinear exactly when their carriers compare equal.
struct Carrier {
    Int a, b, c;

    static Carrier through(const Point& p, const Point& q);

    bool vertical() const { return b == 0; }
    // Position of a point along the line: its x coordinate, or y when the
    // line is vertical.
    Rat param_of(const Point& p) const;
    Point point_at(const Rat& t) const;
    bool contains(const Point& p) const;
};

bool operator==(const Carrier& u, const Carrier& v);
int carrier_cmp(const Carrier& u, const Carrier& v);
inline bool operator<(const Carrier& u, const Carrier& v) { return carrier_cmp(u, v) < 0; }

// Closed parameter interval [lo, hi] with lo < hi.
using Span = std::pair<Rat, Rat>;
// Per-carrier span lists are kept sorted, pairwise disjoint and
// non-abutting; this is the canonical form for segment shapes.
using SpanMap = std::map<Carrier, std::vector<Span>>;

enum class Kind { segments, points };

// A shape is a finite set of maximal basic elements: line segments
// (Kind::segments) or labeled points (Kind::points). Values are immutable
// and always canonical: collinear segments that overlap or abut are fused,
// duplicate points removed, elements sorted. Empty shapes of the two kinds
// are distinct values.
class Shape {
public:
    Shape() : kind_(Kind::segments) {}

    static Shape empty(Kind k);
    static Shape of_segments(std::vector<Segment> raw);
    static Shape of_points(std::vector<LabeledPoint> raw);
    // Convenience: one segment from two distinct points.
    static Shape segment(const Point& a, const Point& b);

    Kind kind() const { return kind_; }
    bool empty_shape() const { return segs_.empty() && pts_.empty(); }
    std::size_t size() const { return kind_ == Kind::segments ? segs_.size() : pts_.size(); }

    const std::vector<Segment>& segments() const { return segs_; }
    const std::vector<LabeledPoint>& points() const { return pts_; }

    SpanMap span_map() const;

private:
    Kind kind_;
    std::vector<Segment> segs_;
    std::vector<LabeledPoint> pts_;
};

bool operator==(const Shape& x, const Shape& y);
inline bool operator!=(const Shape& x, const Shape& y) { return !(x == y); }
int shape_cmp(const Shape& x, const Shape& y); // canonical total order
struct ShapeLess {
    bool operator()(const Shape& x, const Shape& y) const { return shape_cmp(x, y) < 0; }
};

// Part relation x <= y. Holds iff sum(x, y) == y iff product(x, y) == x.
bool part_of(const Shape& x, const Shape& y);

// The four algebra operations. Operands must have the same kind; results
// are canonical. product of segment shapes keeps only shared sub-segments
// (intersections at isolated points vanish); difference removes the shared
// sub-segments and keeps closed remainders.
Shape sum(const Shape& x, const Shape& y);
Shape product(const Shape& x, const Shape& y);
Shape difference(const Shape& x, const Shape& y);
Shape sym_difference(const Shape& x, const Shape& y);

// Cuts every shape in the context into the smallest sub-elements such that
// each context shape is a sum of cells and every pairwise operation on
// context shapes is a set operation on cells. Cut points are all element
// endpoints plus all crossings between carrier lines in the context.
// Returns the cells as single-element shapes in canonical order. Throws
// CapacityError when more than max_cells cells would be produced.
std::vector<Shape> atomize(const std::vector<Shape>& context, std::size_t max_cells = 4096);

} // namespace sg
