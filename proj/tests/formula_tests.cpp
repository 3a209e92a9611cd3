#include "doctest.h"
#include "sg/errors.hpp"
#include "sg/formula.hpp"
#include "sg/io.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sgtest;

namespace {

Shape hseg(int a, int b) { return seg_shape({{a, 0, b, 0}}); }

StepContext simple_ctx() {
    // S = [0,4] on the x axis, t(A) = [0,1], t(B) = [2,3], S' = [1,4].
    return StepContext{hseg(0, 4), hseg(0, 1), hseg(2, 3), hseg(1, 4)};
}

} // namespace

TEST_CASE("formula parsing and canonical printing") {
    CHECK(formula_str(parse_formula("x")) == "x");
    CHECK(formula_str(parse_formula("x - tA")) == "x - tA");
    CHECK(formula_str(parse_formula("(x - tA) + tB")) == "x - tA + tB");
    CHECK(formula_str(parse_formula("x - tA + tB")) == "x - tA + tB");
    CHECK(formula_str(parse_formula("x - (tA + tB)")) == "x - (tA + tB)");
    CHECK(formula_str(parse_formula("x . (tA ^ tB)")) == "x . (tA ^ tB)");
    CHECK(formula_str(parse_formula("x-tA.tB")) == "x - tA . tB");
    CHECK(formula_str(parse_formula("S - x")) == "S - x");

    // Round trip is stable.
    for (const auto& [id, f] : formula_catalog()) {
        std::string text = formula_str(f);
        CHECK(formula_str(parse_formula(text)) == text);
        CHECK(parse_formula(text).same_as(f));
    }
}

TEST_CASE("formula parse errors carry position and expectation") {
    CHECK_THROWS_WITH_AS(parse_formula("x - "), doctest::Contains("column 5"), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("x - "), doctest::Contains("expected atom"), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("(x - tA"), doctest::Contains("')'"), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("x tB"), doctest::Contains("operator"), InputError);
    CHECK_THROWS_AS(parse_formula("tC"), InputError);
}

TEST_CASE("the catalog lists the eleven standard forms in order") {
    const auto& cat = formula_catalog();
    REQUIRE(cat.size() == 11);
    CHECK(cat[0].first == "T1.1");
    CHECK(formula_str(cat[0].second) == "x");
    CHECK(formula_str(cat[1].second) == "x - (tA - tB)");
    CHECK(formula_str(cat[2].second) == "x . (tA + tB)");
    CHECK(formula_str(cat[3].second) == "x - tA . tB");
    CHECK(formula_str(cat[4].second) == "x - tB");
    CHECK(formula_str(cat[5].second) == "x - (tA ^ tB)");
    CHECK(formula_str(cat[6].second) == "x . tB");
    CHECK(formula_str(cat[7].second) == "x . (tA ^ tB)");
    CHECK(formula_str(cat[8].second) == "x - tA");
    CHECK(formula_str(cat[9].second) == "x - (tA + tB)");
    CHECK(formula_str(cat[10].second) == "x . (tB - tA)");
    CHECK(catalog_lookup("T1.9"));
    CHECK(catalog_lookup("T1.9")->same_as(cat[8].second));
    CHECK(!catalog_lookup("T1.12"));
    CHECK(!catalog_lookup("t1.9"));
}

TEST_CASE("evaluate computes over the step context") {
    StepContext ctx = simple_ctx();
    Formula h = parse_formula("x - tA");
    CHECK(evaluate(h, ctx.s, ctx) == hseg(1, 4));
    CHECK(evaluate(h, hseg(0, 1), ctx).empty_shape());
    CHECK(evaluate(parse_formula("x . tB"), ctx.s, ctx) == hseg(2, 3));
    CHECK(evaluate(parse_formula("S"), Shape::empty(Kind::segments), ctx) == ctx.s);
    CHECK_THROWS_WITH_AS(evaluate(h, hseg(0, 9), ctx), doctest::Contains("not a part"),
                         InputError);
}

TEST_CASE("mapping_describes checks the image against the successor") {
    StepContext ctx = simple_ctx();
    CHECK(mapping_describes(parse_formula("x - tA"), ctx));
    CHECK(!mapping_describes(parse_formula("x"), ctx)); // S itself is no part of S'
}

TEST_CASE("preimage of the empty shape under x - tA is t(A)") {
    StepContext ctx = simple_ctx();
    Formula h = parse_formula("x - tA");
    auto p = preimage(h, Shape::empty(Kind::segments), ctx);
    REQUIRE(p.value);
    CHECK(*p.value == ctx.ta);
    auto q = oracle_preimage(h, Shape::empty(Kind::segments), ctx);
    REQUIRE(q.value);
    CHECK(*q.value == ctx.ta);
}

TEST_CASE("closure equations agree with the oracle and satisfy the bound") {
    RandomShapes gen(424242);
    const char* forms[] = {"x - tA", "x - tB", "x - (tA ^ tB)"};
    int done = 0;
    while (done < 60) {
        Shape s = gen.segments(3);
        if (s.empty_shape()) continue;
        StepContext ctx{s, gen.random_part(s), gen.segments(2), s};
        Shape d = gen.random_part(s);
        for (const char* text : forms) {
            Formula h = parse_formula(text);
            auto fast = preimage(h, d, ctx);
            auto slow = oracle_preimage(h, d, ctx);
            REQUIRE(fast.value);
            REQUIRE(slow.value);
            CHECK(*fast.value == *slow.value);
            CHECK(part_of(evaluate(h, *fast.value, ctx), d));
            Shape probe = gen.random_part(s);
            if (part_of(evaluate(h, probe, ctx), d)) CHECK(part_of(probe, *fast.value));
        }
        ++done;
    }
}

TEST_CASE("preimage of the full image recovers the whole shape") {
    StepContext ctx = simple_ctx();
    for (const char* text : {"x - tA", "x - tB", "x - (tA ^ tB)"}) {
        Formula h = parse_formula(text);
        Shape image = evaluate(h, ctx.s, ctx);
        auto p = preimage(h, image, ctx);
        REQUIRE(p.value);
        CHECK(*p.value == ctx.s);
    }
}

TEST_CASE("oracle reports when nothing maps into the target") {
    // Constant mapping tB with an unreachable target.
    StepContext ctx = simple_ctx();
    Formula h = parse_formula("tB");
    auto p = oracle_preimage(h, Shape::empty(Kind::segments), ctx);
    CHECK(!p.value);
    CHECK(p.note.find("no part") != std::string::npos);
}

TEST_CASE("oracle handles non-monotone mappings by subset enumeration") {
    StepContext ctx = simple_ctx();
    Formula h = parse_formula("S - x"); // order-reversing
    auto p = oracle_preimage(h, ctx.s, ctx);
    REQUIRE(p.value); // everything maps under S - x <= S
    CHECK(*p.value == ctx.s);
    // Largest x with S - x empty is S itself.
    auto q = oracle_preimage(h, Shape::empty(Kind::segments), ctx);
    REQUIRE(q.value);
    CHECK(*q.value == ctx.s);
}

TEST_CASE("classification of the standard suitability examples") {
    StepContext ctx = simple_ctx();
    CHECK(classify(parse_formula("(x - tA) + tB"), ctx).verdict ==
          Verdict::not_continuous_nonempty_output);
    CHECK(classify(parse_formula("tB - x"), ctx).verdict == Verdict::excluded_order_reversing);
    CHECK(classify(parse_formula("tB"), ctx).verdict == Verdict::not_continuous_constant);
    CHECK(classify(parse_formula("S - x"), ctx).verdict == Verdict::excluded_order_reversing);
    for (const auto& [id, f] : formula_catalog()) {
        auto c = classify(f, ctx);
        CHECK(c.verdict == Verdict::suitable);
    }
}

TEST_CASE("constant empty mappings are suitable but vacuous") {
    StepContext ctx = simple_ctx();
    auto c = classify(parse_formula("x - S"), ctx);
    CHECK(c.verdict == Verdict::suitable);
    CHECK(c.vacuous);
    auto plain = classify(parse_formula("x - tA"), ctx);
    CHECK(plain.verdict == Verdict::suitable);
    CHECK(!plain.vacuous);
}

TEST_CASE("verdict names are stable") {
    CHECK(verdict_str(Verdict::suitable) == "Suitable");
    CHECK(verdict_str(Verdict::not_continuous_nonempty_output) == "NotContinuous_NonemptyOutput");
    CHECK(verdict_str(Verdict::not_continuous_constant) == "NotContinuous_Constant");
    CHECK(verdict_str(Verdict::excluded_order_reversing) == "Excluded_OrderReversing");
}
