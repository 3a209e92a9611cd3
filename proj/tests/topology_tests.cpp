#include "doctest.h"
#include "sg/errors.hpp"
#include "sg/topology.hpp"
#include "test_util.hpp"

#include <cstdlib>

using namespace sg;
using namespace sgtest;

namespace {

Shape tick(int x) { return seg_shape({{x, 0, x, 1}}); }

} // namespace

TEST_CASE("indiscrete topology has exactly the trivial opens") {
    Shape s = seg_shape({{0, 0, 2, 0}});
    Topology t = Topology::indiscrete(s);
    CHECK(t.opens().size() == 2);
    CHECK(t.is_open(Shape::empty(Kind::segments)));
    CHECK(t.is_open(s));
    CHECK(!t.is_open(seg_shape({{0, 0, 1, 0}})));
}

TEST_CASE("generate closes the subbasis under sum and product") {
    Shape s = seg_shape({{0, 0, 4, 0}});
    Shape a = seg_shape({{0, 0, 2, 0}});
    Shape b = seg_shape({{1, 0, 3, 0}});
    Topology t = Topology::generate(s, {a, b});
    CHECK(t.is_open(a));
    CHECK(t.is_open(b));
    CHECK(t.is_open(sum(a, b)));
    CHECK(t.is_open(product(a, b)));
    CHECK(t.opens().size() == 6); // 0, a, b, a+b, a.b, s
}

TEST_CASE("generate rejects parts outside the universe") {
    Shape s = seg_shape({{0, 0, 2, 0}});
    Shape outside = seg_shape({{0, 1, 2, 1}});
    CHECK_THROWS_WITH_AS(Topology::generate(s, {outside}),
                         doctest::Contains("not a part of the universe"), InputError);
}

TEST_CASE("three free parts generate the full Boolean lattice") {
    Shape s = sum(sum(tick(0), tick(1)), tick(2));
    Topology t = Topology::generate(s, {tick(0), tick(1), tick(2)});
    CHECK(t.opens().size() == 8);
    CHECK(t.is_boolean());
    auto basis = t.reduced_basis();
    REQUIRE(basis.size() == 3);
    CHECK(basis[0] == tick(0));
}

TEST_CASE("chain topologies are not boolean") {
    Shape s = sum(sum(tick(0), tick(1)), tick(2));
    Shape mid = sum(tick(0), tick(1));
    Topology t = Topology::generate(s, {tick(0), mid});
    CHECK(t.opens().size() == 4); // 0 < t0 < t0+t1 < s
    CHECK(!t.is_boolean());
    auto basis = t.reduced_basis();
    CHECK(basis.size() == 3); // every nonzero open of a chain is irreducible
}

TEST_CASE("refinement keeps every open and is idempotent at a fixpoint") {
    Shape s = sum(sum(tick(0), tick(1)), tick(2));
    Topology t = Topology::generate(s, {sum(tick(0), tick(1))});
    Topology r = t.refine({tick(1)});
    for (const auto& o : t.opens()) CHECK(r.is_open(o));
    CHECK(r.is_open(tick(1)));
    CHECK(r.refine({}) == r);
    CHECK(r.refine({tick(1)}) == r);
}

TEST_CASE("every open is the sum of the basis elements beneath it") {
    RandomShapes gen(31);
    for (int i = 0; i < 40; ++i) {
        Shape s = gen.segments(4);
        if (s.empty_shape()) continue;
        std::vector<Shape> parts = {gen.random_part(s), gen.random_part(s)};
        Topology t = Topology::generate(s, parts);
        auto basis = t.reduced_basis();
        for (const auto& o : t.opens()) {
            Shape acc = Shape::empty(s.kind());
            for (const auto& b : basis)
                if (part_of(b, o)) acc = sum(acc, b);
            CHECK(acc == o);
        }
    }
}

TEST_CASE("boolean check matches complement openness") {
    RandomShapes gen(77);
    for (int i = 0; i < 30; ++i) {
        Shape s = gen.segments(4);
        if (s.empty_shape()) continue;
        Shape p = gen.random_part(s);
        Topology t = Topology::generate(s, {p, difference(s, p)});
        CHECK(t.is_boolean()); // complemented subbasis closes to a Boolean algebra
    }
}

TEST_CASE("topology size cap raises CapacityError") {
    std::vector<Shape> singles;
    Shape s = Shape::empty(Kind::segments);
    for (int i = 0; i < 6; ++i) {
        singles.push_back(tick(i));
        s = sum(s, tick(i));
    }
    setenv("SGA_TOPOLOGY_CAP", "16", 1);
    CHECK_THROWS_AS(Topology::generate(s, singles), CapacityError);
    setenv("SGA_TOPOLOGY_CAP", "100", 1);
    CHECK(Topology::generate(s, singles).opens().size() == 64);
    unsetenv("SGA_TOPOLOGY_CAP");
    CHECK(Topology::max_opens() == 4096);
}

TEST_CASE("point-shape topologies work the same way") {
    Shape a = Shape::of_points({{pt(0, 0), "a"}});
    Shape b = Shape::of_points({{pt(1, 0), "b"}});
    Shape s = sum(a, b);
    Topology t = Topology::generate(s, {a});
    CHECK(t.opens().size() == 3);
    CHECK(!t.is_boolean());
}
