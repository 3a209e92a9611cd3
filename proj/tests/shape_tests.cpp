#include "doctest.h"
#include "sg/errors.hpp"
#include "sg/shape.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sgtest;

TEST_CASE("collinear overlap and abutment fuse into one maximal element") {
    Shape s = seg_shape({{0, 0, 2, 0}, {1, 0, 3, 0}});
    CHECK(s.size() == 1);
    CHECK(s.segments()[0].a == pt(0, 0));
    CHECK(s.segments()[0].b == pt(3, 0));

    Shape abut = seg_shape({{0, 0, 1, 0}, {1, 0, 2, 0}});
    CHECK(abut.size() == 1);

    Shape gap = seg_shape({{0, 0, 1, 0}, {2, 0, 3, 0}});
    CHECK(gap.size() == 2);

    Shape crossing = seg_shape({{0, 0, 2, 2}, {0, 2, 2, 0}});
    CHECK(crossing.size() == 2); // different carriers never fuse
}

TEST_CASE("degenerate segments are rejected") {
    CHECK_THROWS_AS(Shape::segment(pt(1, 1), pt(1, 1)), InputError);
}

TEST_CASE("empty shapes of the two kinds are distinct values") {
    Shape e1 = Shape::empty(Kind::segments);
    Shape e0 = Shape::empty(Kind::points);
    CHECK(e1.empty_shape());
    CHECK(e0.empty_shape());
    CHECK(e1 != e0);
    CHECK(e1 == Shape::of_segments({}));
}

TEST_CASE("product keeps shared sub-segments only") {
    Shape x = seg_shape({{0, 0, 2, 0}});
    Shape y = seg_shape({{1, 0, 3, 0}});
    Shape p = product(x, y);
    REQUIRE(p.size() == 1);
    CHECK(p.segments()[0].a == pt(1, 0));
    CHECK(p.segments()[0].b == pt(2, 0));

    // Crossing segments meet in a single point, which is not a segment.
    Shape cross = product(seg_shape({{0, 0, 2, 2}}), seg_shape({{0, 2, 2, 0}}));
    CHECK(cross.empty_shape());

    // Collinear but disjoint spans share nothing.
    CHECK(product(seg_shape({{0, 0, 1, 0}}), seg_shape({{2, 0, 3, 0}})).empty_shape());
}

TEST_CASE("difference keeps closed remainders") {
    Shape x = seg_shape({{0, 0, 3, 0}});
    Shape y = seg_shape({{1, 0, 2, 0}});
    Shape d = difference(x, y);
    REQUIRE(d.size() == 2);
    CHECK(d.segments()[0].b == pt(1, 0));
    CHECK(d.segments()[1].a == pt(2, 0));
    CHECK(sum(d, y) == x);

    CHECK(difference(x, x).empty_shape());
    CHECK(difference(x, seg_shape({{0, 1, 3, 1}})) == x);
}

TEST_CASE("labeled points are distinct from unlabeled ones") {
    Shape a = Shape::of_points({{pt(0, 0), "a"}});
    Shape plain = Shape::of_points({{pt(0, 0), ""}});
    CHECK(a != plain);
    CHECK(product(a, plain).empty_shape());
    CHECK(sum(a, plain).size() == 2);
}

TEST_CASE("mixed-kind operands are rejected") {
    Shape e1 = Shape::empty(Kind::segments);
    Shape e0 = Shape::empty(Kind::points);
    CHECK_THROWS_AS(sum(e1, e0), InputError);
    CHECK_THROWS_AS((void)part_of(e0, e1), InputError);
}

TEST_CASE("exact rational coordinates survive round trips") {
    Shape x = Shape::segment(pt(Rat(1, 3), Rat(0)), pt(Rat(2, 3), Rat(0)));
    Shape y = Shape::segment(pt(Rat(1, 2), Rat(0)), pt(Rat(5, 7), Rat(0)));
    Shape p = product(x, y);
    REQUIRE(p.size() == 1);
    CHECK(p.segments()[0].a == pt(Rat(1, 2), Rat(0)));
    CHECK(p.segments()[0].b == pt(Rat(2, 3), Rat(0)));
}

TEST_CASE("part relation agrees with sum and product characterizations") {
    RandomShapes gen(20240801);
    for (int i = 0; i < 300; ++i) {
        Shape x = gen.segments(), y = gen.segments();
        bool le = part_of(x, y);
        CHECK(le == (sum(x, y) == y));
        CHECK(le == (product(x, y) == x));
    }
    for (int i = 0; i < 100; ++i) {
        Shape x = gen.points(), y = gen.points();
        bool le = part_of(x, y);
        CHECK(le == (sum(x, y) == y));
        CHECK(le == (product(x, y) == x));
    }
}

TEST_CASE("algebra laws hold on random segment shapes") {
    RandomShapes gen(7);
    for (int i = 0; i < 250; ++i) {
        Shape x = gen.segments(), y = gen.segments(), z = gen.segments();
        CHECK(sum(x, y) == sum(y, x));
        CHECK(product(x, y) == product(y, x));
        CHECK(sum(sum(x, y), z) == sum(x, sum(y, z)));
        CHECK(product(product(x, y), z) == product(x, product(y, z)));
        CHECK(sum(x, x) == x);
        CHECK(product(x, x) == x);
        CHECK(sum(x, product(x, y)) == x);
        CHECK(product(x, sum(x, y)) == x);
        CHECK(sum(difference(x, y), product(x, y)) == x);
        CHECK(sym_difference(x, y) == difference(sum(x, y), product(x, y)));
        CHECK(difference(x, y) == difference(x, product(x, y)));
        CHECK(part_of(difference(x, y), x));
        CHECK(product(difference(x, y), difference(y, x)).empty_shape());
    }
}

TEST_CASE("atomization: every operation is a set operation on cells") {
    RandomShapes gen(99);
    for (int i = 0; i < 200; ++i) {
        Shape x = gen.segments(4), y = gen.segments(4);
        auto cells = atomize({x, y});
        Shape sx = Shape::empty(Kind::segments), sy = Shape::empty(Kind::segments);
        Shape both = sx, either = sx, only_x = sx, xor_ = sx;
        for (const auto& c : cells) {
            bool in_x = part_of(c, x), in_y = part_of(c, y);
            if (in_x) sx = sum(sx, c);
            if (in_y) sy = sum(sy, c);
            if (in_x && in_y) both = sum(both, c);
            if (in_x || in_y) either = sum(either, c);
            if (in_x && !in_y) only_x = sum(only_x, c);
            if (in_x != in_y) xor_ = sum(xor_, c);
        }
        CHECK(sx == x);
        CHECK(sy == y);
        CHECK(either == sum(x, y));
        CHECK(both == product(x, y));
        CHECK(only_x == difference(x, y));
        CHECK(xor_ == sym_difference(x, y));
    }
}

TEST_CASE("atomization cuts at crossings") {
    Shape x = seg_shape({{0, 0, 2, 0}});
    Shape y = seg_shape({{1, -1, 1, 1}});
    auto cells = atomize({x, y});
    CHECK(cells.size() == 4); // each segment split at the crossing (1,0)
}

TEST_CASE("atomization respects the cell bound") {
    Shape x = seg_shape({{0, 0, 2, 0}});
    Shape y = seg_shape({{1, -1, 1, 1}});
    CHECK_THROWS_AS(atomize({x, y}, 3), CapacityError);
}

TEST_CASE("point shapes atomize into single points") {
    Shape x = Shape::of_points({{pt(0, 0), "a"}, {pt(1, 1), ""}});
    Shape y = Shape::of_points({{pt(1, 1), ""}, {pt(2, 2), ""}});
    auto cells = atomize({x, y});
    CHECK(cells.size() == 3);
    for (const auto& c : cells) CHECK(c.size() == 1);
}

TEST_CASE("canonical order of shapes is a strict total order") {
    RandomShapes gen(5);
    for (int i = 0; i < 100; ++i) {
        Shape x = gen.segments(), y = gen.segments();
        int cxy = shape_cmp(x, y), cyx = shape_cmp(y, x);
        CHECK(cxy == -cyx);
        CHECK((cxy == 0) == (x == y));
    }
}
