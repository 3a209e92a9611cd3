#include "doctest.h"
#include "test_util.hpp"

#include "sg/errors.hpp"
#include "sg/render.hpp"

#include "json.hpp"

#include <string>
#include <vector>

using namespace sgtest;
using namespace sgtest::fixtures;

namespace {

std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("shape literals print canonically and read back") {
    CHECK(shape_literal(ticks({0, 1})) == "u1{ 0 0 0 1  1 0 1 1 }");
    CHECK(shape_literal(Shape::empty(Kind::segments)) == "u1{}");
    CHECK(shape_literal(Shape::empty(Kind::points)) == "u0{}");

    Shape pts = Shape::of_points({{pt(1, 2), "a-b_1"}, {pt(0, 0), ""}});
    CHECK(shape_literal(pts) == "u0{ 0 0  1 2:a-b_1 }");
    CHECK(parse_shape_literal(shape_literal(pts)) == pts);

    for (const char* lit : {kChevronLhs, kChevronS1, kChevronS2, kChevronS3,
                            kChevronMissing})
        CHECK(shape_literal(parse_shape_literal(lit)) == lit);

    SUBCASE("whitespace between tokens is free") {
        Shape s = parse_shape_literal("  u1{\n 0 0 0 1\n\t1 0\r\n1 1 }\n");
        CHECK(s == ticks({0, 1}));
    }
    SUBCASE("parsing canonicalizes order, orientation and fusion") {
        CHECK(shape_literal(parse_shape_literal("u1{ 1 0 2 0  2 0 0 0 }")) ==
              "u1{ 0 0 2 0 }");
        CHECK(shape_literal(parse_shape_literal("u0{ 1 1  0 0  1 1 }")) ==
              "u0{ 0 0  1 1 }");
    }
    SUBCASE("fractions survive the round trip") {
        Shape s = parse_shape_literal("u1{ -1/3 0 2/3 1/2 }");
        CHECK(shape_literal(s) == "u1{ -1/3 0 2/3 1/2 }");
    }
    SUBCASE("malformed literals fail with positions") {
        CHECK_THROWS_WITH_AS(parse_shape_literal(""),
                             doctest::Contains("found end of input"), InputError);
        CHECK_THROWS_WITH_AS(parse_shape_literal("u2{}"),
                             doctest::Contains("column 2"), InputError);
        CHECK_THROWS_WITH_AS(parse_shape_literal("u1{ 0 0 1 }"),
                             doctest::Contains("rational y1"), InputError);
        CHECK_THROWS_WITH_AS(parse_shape_literal("u1{ 0 0 1/0 1 }"),
                             doctest::Contains("'1/0'"), InputError);
        CHECK_THROWS_WITH_AS(parse_shape_literal("u0{ 0 0: }"),
                             doctest::Contains("label after ':'"), InputError);
        CHECK_THROWS_WITH_AS(parse_shape_literal("u1{ 0 0 1 0 } x"),
                             doctest::Contains("end of shape literal"), InputError);
    }
}

TEST_CASE("transform sextuples round trip") {
    Transform quarter{Rat(0), Rat(-1), Rat(1), Rat(0), Rat(2), Rat(0)};
    CHECK(transform_sextuple(quarter) == "0 -1 1 0 2 0");
    CHECK(parse_transform_sextuple("0 -1 1 0 2 0") == quarter);
    CHECK(parse_transform_sextuple(" 1 0 0 1 -1/2 3 ") ==
          Transform::translation(rat_frac(-1, 2), Rat(3)));
    CHECK_THROWS_WITH_AS(parse_transform_sextuple("1 0 0 1 5"),
                         doctest::Contains("transform entry"), InputError);
    CHECK_THROWS_WITH_AS(parse_transform_sextuple("1 0 0 1 0 0 junk"),
                         doctest::Contains("end of transform sextuple"), InputError);
    CHECK_THROWS_WITH_AS(parse_transform_sextuple("0 0 0 0 0 0"),
                         doctest::Contains("singular"), InputError);
}

TEST_CASE("trace documents round trip byte for byte") {
    TraceDocument doc = chevron_doc();
    std::string text = emit_trace(doc);
    CHECK(text.rfind("trace v1 u1\ninitial " + std::string(kChevronS1) + "\n", 0) == 0);
    CHECK(count_substr(text, "step\n") == 2);
    CHECK(count_substr(text, "mapping x - tA\n") == 2);
    CHECK(count_substr(text, "determinate 0\n") == 2);

    TraceDocument back = parse_trace(text, "chevron.trace");
    CHECK(back.kind == Kind::segments);
    CHECK(back.initial == doc.initial);
    REQUIRE(back.steps.size() == 2);
    CHECK(back.steps[0].t == Transform::identity());
    CHECK(back.steps[1].t == doc.steps[1].t);
    CHECK(back.steps[0].rule.lhs == chevron_shape());
    CHECK_FALSE(back.policy);
    CHECK_FALSE(back.has_final_topology);
    CHECK(emit_trace(back) == text);

    Trace tr = back.to_trace();
    CHECK(shape_literal(tr.shapes()[1]) == kChevronS2);
    CHECK(shape_literal(tr.shapes()[2]) == kChevronS3);
}

TEST_CASE("trace documents carry policy and final topology blocks") {
    TraceDocument doc = tick_doc();
    doc.policy = PolicyKind::ta;
    doc.has_final_topology = true;
    doc.final_opens = {ticks({5, 6}), ticks({1}), ticks({1, 2, 4}), ticks({1, 2}),
                       ticks({1})}; // unsorted, with a duplicate
    std::string text = emit_trace(doc);
    CHECK(text.find("policy ta\n") != std::string::npos);
    CHECK(text.find("final-topology\n"
                    "open u1{ 1 0 1 1 }\n"
                    "open u1{ 1 0 1 1  2 0 2 1 }\n"
                    "open u1{ 5 0 5 1  6 0 6 1 }\n"
                    "open u1{ 1 0 1 1  2 0 2 1  4 0 4 1 }\n"
                    "end\n") != std::string::npos);

    TraceDocument back = parse_trace(text);
    CHECK(back.policy == PolicyKind::ta);
    REQUIRE(back.has_final_topology);
    CHECK(back.final_opens.size() == 4);
    CHECK(emit_trace(back) == text);

    Trace tr = back.to_trace();
    CHECK(tr.shapes().size() == 9);
    CHECK(tr.shapes().back() == ticks({1, 2, 4, 5, 6}));
    auto fin = back.final_topology(tr.shapes().back());
    REQUIRE(fin.has_value());
    CHECK(fin->opens() == final_tick_topology().opens());
    CHECK_FALSE(chevron_doc().final_topology(chevron_shape()).has_value());

    doc.policy = PolicyKind::ta_and_complement;
    TraceDocument again = parse_trace(emit_trace(doc));
    CHECK(again.policy == PolicyKind::ta_and_complement);

    doc.policy = PolicyKind::explicit_parts;
    CHECK_THROWS_WITH_AS(emit_trace(doc), doctest::Contains("named policies"),
                         InputError);
}

TEST_CASE("mapping lines accept catalog ids") {
    auto trace_text = [](const std::string& mapping) {
        return "trace v1 u1\n"
               "initial u1{ 0 0 0 1 }\n"
               "step\n"
               "lhs u1{ 0 0 0 1 }\n"
               "rhs u1{ 0 0 0 1  1 0 1 1 }\n"
               "transform 1 0 0 1 0 0\n"
               "mapping " + mapping + "\n"
               "determinate 0\n"
               "end\n";
    };
    CHECK(formula_str(parse_trace(trace_text("T1.9")).steps[0].mapping) == "x - tA");
    CHECK(formula_str(parse_trace(trace_text("T1.5")).steps[0].mapping) == "x - tB");
    CHECK(formula_str(parse_trace(trace_text("T1.6")).steps[0].mapping) ==
          "x - (tA ^ tB)");
    CHECK(formula_str(parse_trace(trace_text("T1.1")).steps[0].mapping) == "x");
    // Emission always writes the formula text back out.
    CHECK(emit_trace(parse_trace(trace_text("T1.9"))) == trace_text("x - tA"));

    CHECK_THROWS_WITH_AS(parse_trace(trace_text("T1.99"), "t.trace"),
                         doctest::Contains("t.trace: line 7: unknown catalog id T1.99"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_trace(trace_text("x ++ tA")),
                         doctest::Contains("line 7: in mapping:"), InputError);
}

TEST_CASE("trace parsing rejects malformed documents") {
    CHECK_THROWS_WITH_AS(parse_trace("trace v2 u1\n"), doctest::Contains("'v1'"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_trace("trace v1 u3\n"),
                         doctest::Contains("algebra u1 or u0"), InputError);
    CHECK_THROWS_WITH_AS(parse_trace("trace v1 u0\ninitial u1{ 0 0 0 1 }\n"),
                         doctest::Contains("declared algebra"), InputError);
    CHECK_THROWS_WITH_AS(
        parse_trace("trace v1 u1\ninitial u1{ 0 0 0 1 }\nchapter\n"),
        doctest::Contains("'step', 'policy' or 'final-topology'"), InputError);
    CHECK_THROWS_WITH_AS(
        parse_trace("trace v1 u1\ninitial u1{ 0 0 0 1 }\npolicy later\n"),
        doctest::Contains("policy ta or ta+complement"), InputError);

    std::string base = "trace v1 u1\n"
                       "initial u1{ 0 0 0 1 }\n"
                       "step\n"
                       "lhs u1{ 0 0 0 1 }\n"
                       "rhs u1{ 0 0 0 1  1 0 1 1 }\n"
                       "transform 1 0 0 1 0 0\n"
                       "mapping x\n"
                       "determinate 0\n"
                       "end\n";
    CHECK_THROWS_WITH_AS(parse_trace(base + "policy ta\n" + "step\n"),
                         doctest::Contains("no step after"), InputError);

    std::string bad_flag = base;
    bad_flag.replace(bad_flag.find("determinate 0"), 13, "determinate 2");
    CHECK_THROWS_WITH_AS(parse_trace(bad_flag),
                         doctest::Contains("determinate flag 0 or 1"), InputError);

    // A document parses on syntax alone; replay validation happens later.
    std::string stray = base;
    stray.replace(stray.find("lhs u1{ 0 0 0 1 }"), 17, "lhs u1{ 5 0 5 1 }");
    TraceDocument doc = parse_trace(stray);
    CHECK_THROWS_WITH_AS(doc.to_trace(), doctest::Contains("step 1"), InputError);
}

TEST_CASE("topology files close their parts and flag the basis") {
    std::vector<Topology> ts = {final_tick_topology(),
                                Topology::indiscrete(chevron_shape())};
    std::string text = emit_topologies(ts);
    CHECK(text.rfind("topologies v1\ntopology\nuniverse ", 0) == 0);
    CHECK(count_substr(text, "topology\n") == 2);
    CHECK(count_substr(text, "\nbasis ") == 5);
    CHECK(count_substr(text, "\nopen u1{}\n") == 2);

    std::vector<Topology> back = parse_topologies(text, "t.topologies");
    REQUIRE(back.size() == 2);
    CHECK(back[0].opens() == ts[0].opens());
    CHECK(back[1].opens() == ts[1].opens());
    CHECK(emit_topologies(back) == text);

    SUBCASE("listing a subbasis is enough") {
        std::string minimal =
            "topologies v1\n"
            "topology\n"
            "universe u1{ 1 0 1 1  2 0 2 1  4 0 4 1  5 0 5 1  6 0 6 1 }\n"
            "basis u1{ 1 0 1 1 }\n"
            "basis u1{ 1 0 1 1  2 0 2 1 }\n"
            "basis u1{ 1 0 1 1  2 0 2 1  4 0 4 1 }\n"
            "open u1{ 5 0 5 1  6 0 6 1 }\n"
            "end\n";
        std::vector<Topology> got = parse_topologies(minimal);
        REQUIRE(got.size() == 1);
        CHECK(got[0].opens().size() == 8);
        CHECK(got[0].opens() == final_tick_topology().opens());
    }
    SUBCASE("malformed blocks fail") {
        CHECK_THROWS_WITH_AS(parse_topologies("topologies v1\ntopology\nopen u1{}\n"),
                             doctest::Contains("'universe'"), InputError);
        CHECK_THROWS_WITH_AS(
            parse_topologies("topologies v1\ntopology\nuniverse u1{ 0 0 0 1 }\n"
                             "part u1{}\nend\n"),
            doctest::Contains("'open', 'basis' or 'end'"), InputError);
        CHECK_THROWS_WITH_AS(
            parse_topologies("topologies v1\ntopology\nuniverse u1{ 0 0 0 1 }\n"
                             "open u1{ 5 0 5 1 }\nend\n"),
            doctest::Contains("not a part of the universe"), InputError);
    }
}

TEST_CASE("policy files round trip") {
    CHECK(emit_policy(OpennessPolicy::keep_ta()) == "policy v1 ta\n");
    CHECK(emit_policy(OpennessPolicy::keep_ta_and_complement()) ==
          "policy v1 ta+complement\n");
    CHECK(parse_policy("policy v1 ta").kind == PolicyKind::ta);
    CHECK(parse_policy("policy v1 ta+complement\n").kind ==
          PolicyKind::ta_and_complement);

    OpennessPolicy pol = OpennessPolicy::keep_explicit({{ticks({0, 2}), tick(0)}, {}});
    std::string text = emit_policy(pol);
    CHECK(text == "policy v1 explicit\n"
                  "step 1\n"
                  "part u1{ 0 0 0 1 }\n"
                  "part u1{ 0 0 0 1  2 0 2 1 }\n"
                  "end\n"
                  "step 2\n"
                  "end\n");
    OpennessPolicy back = parse_policy(text);
    CHECK(back.kind == PolicyKind::explicit_parts);
    REQUIRE(back.parts.size() == 2);
    CHECK(back.parts[0] == std::vector<Shape>{tick(0), ticks({0, 2})});
    CHECK(back.parts[1].empty());
    CHECK(emit_policy(back) == text);

    CHECK_THROWS_WITH_AS(parse_policy("policy v1 tb\n"),
                         doctest::Contains("ta, ta+complement or explicit"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_policy("policy v1 ta\nextra\n"),
                         doctest::Contains("end of policy file"), InputError);
    CHECK_THROWS_WITH_AS(parse_policy("policy v1 explicit\nstep 2\nend\n"),
                         doctest::Contains("step 1"), InputError);
}

TEST_CASE("schema files round trip byte for byte") {
    Schema s = arch_schema();
    std::string text = emit_schema(s);
    CHECK(text == "schema v1\n"
                  "fixed -2 0:a\n"
                  "fixed 2 0:b\n"
                  "term p at -1 1 axis=h range=[-2,-1/2]\n"
                  "term q at 0 2 axis=v range=[3/2,3]\n"
                  "term r at 1 1 axis=h range=[1/2,2]\n"
                  "mirror p r about q\n"
                  "link a p\n"
                  "link p q\n"
                  "link q r\n"
                  "link r b\n"
                  "link a b\n"
                  "link a q\n"
                  "link q b\n");
    Schema back = parse_schema(text, "arch.schema");
    CHECK(emit_schema(back) == text);
    REQUIRE(back.terms.size() == 3);
    CHECK_FALSE(back.terms[1].horizontal);
    CHECK(back.terms[1].lo == rat_frac(3, 2));
    CHECK(back.terms[2].hi == Rat(2));
    CHECK(back.mirrors.size() == 1);
    CHECK(back.links.size() == 7);

    SUBCASE("anchors are kept in order") {
        s.anchors = {"a", "b"};
        std::string anchored = emit_schema(s);
        CHECK(anchored.find("anchor a\nanchor b\n") != std::string::npos);
        CHECK(emit_schema(parse_schema(anchored)) == anchored);
    }
    SUBCASE("parsing validates the schema") {
        CHECK_THROWS_WITH_AS(
            parse_schema("schema v1\nterm p at 5 0 axis=h range=[0,1]\n", "bad.schema"),
            doctest::Contains("bad.schema: schema: term p declared at 5 outside"),
            InputError);
        CHECK_THROWS_WITH_AS(parse_schema("schema v1\nterm p at 0 0 axis=z range=[0,1]\n"),
                             doctest::Contains("axis h or v"), InputError);
        CHECK_THROWS_WITH_AS(parse_schema("schema v1\npoint p\n"),
                             doctest::Contains("'fixed', 'anchor', 'term'"),
                             InputError);
        CHECK_THROWS_WITH_AS(parse_schema("schema v1\nfixed 0 0 a\n"),
                             doctest::Contains("':'"), InputError);
    }
}

TEST_CASE("assignment files derive omitted terms") {
    Schema s = arch_schema();
    std::string text = "assignments v1\n"
                       "assign p=-3/2 q=7/4\n"
                       "assign q=2\n"
                       "assign\n";
    std::vector<Assignment> gs = parse_assignments(text, s, "arch.assignments");
    REQUIRE(gs.size() == 3);
    CHECK(gs[0].at("r") == rat_frac(3, 2)); // mirror partner of p
    CHECK(gs[1].at("p") == rat_frac(-3, 2)); // carried over
    CHECK(gs[1].at("r") == rat_frac(3, 2));
    CHECK(gs[2] == gs[1]);
    CHECK(emit_assignments(s, gs) == "assignments v1\n"
                                     "assign p=-3/2 q=7/4 r=3/2\n"
                                     "assign p=-3/2 q=2 r=3/2\n"
                                     "assign p=-3/2 q=2 r=3/2\n");
    CHECK(parse_assignments(emit_assignments(s, gs), s) == gs);

    std::vector<Assignment> grid = arch_grid();
    CHECK(parse_assignments(emit_assignments(s, grid), s) == grid);

    SUBCASE("errors carry the line of the assignment") {
        CHECK_THROWS_WITH_AS(
            parse_assignments("assignments v1\nassign z=1\n", s, "a.assignments"),
            doctest::Contains("a.assignments: line 2: assignment names unknown term z"),
            InputError);
        CHECK_THROWS_WITH_AS(
            parse_assignments("assignments v1\nassign p=-3/2 q=1\n", s),
            doctest::Contains("line 2: term q value 1 outside range [3/2, 3]"),
            InputError);
        CHECK_THROWS_WITH_AS(
            parse_assignments("assignments v1\nassign p=-1 r=1/2\n", s),
            doctest::Contains("not symmetric about 0"), InputError);
        CHECK_THROWS_WITH_AS(
            parse_assignments("assignments v1\nassign p=-1 p=-1\n", s),
            doctest::Contains("each term at most once"), InputError);
        CHECK_THROWS_WITH_AS(parse_assignments("assignments v1\nassign p -1\n", s),
                             doctest::Contains("'='"), InputError);
    }
}

TEST_CASE("text reports list opens with provenance and verdict lines") {
    Trace tr = chevron_trace();
    AnalysisReport rep = analyze(tr, OpennessPolicy::keep_ta());
    std::string text = report_text(tr, rep);
    CHECK(text.rfind("continuous yes\nshapes 3\nsteps 2\n", 0) == 0);
    CHECK(text.find("shape 1 " + std::string(kChevronS1) + "\n") != std::string::npos);
    CHECK(text.find("opens 4 refined yes\n") != std::string::npos);
    CHECK(text.find("opens 3 refined no\n") != std::string::npos);
    CHECK(text.find("open " + std::string(kChevronLhs) + " policy\n") !=
          std::string::npos);
    CHECK(text.find("open " + std::string(kChevronMissing) + " preimage step 1 source ") !=
          std::string::npos);
    CHECK(text.find("open u1{} boundary\n") != std::string::npos);
    CHECK(count_substr(text, "continuous yes") == 3); // header plus two steps
    CHECK(text.find("step 1 mapping x - tA continuous yes\n") != std::string::npos);

    // Byte-stable across repeated analysis.
    CHECK(report_text(tr, analyze(tr, OpennessPolicy::keep_ta())) == text);
    CHECK_THROWS_WITH_AS(report_text(tick_trace(), rep),
                         doctest::Contains("does not belong"), InputError);

    SUBCASE("violations appear with their witnesses") {
        AnalysisReport bad =
            analyze(tr, OpennessPolicy::keep_explicit({{}, {tr.context(2).ta}}));
        std::string t = report_text(tr, bad);
        CHECK(t.rfind("continuous no\n", 0) == 0);
        CHECK(t.find("step 1 mapping x - tA continuous no\n") != std::string::npos);
        CHECK(t.find("violation lhs-not-open: ") != std::string::npos);
        CHECK(t.find("violation preimage-not-open: ") != std::string::npos);
        CHECK(t.find("\nwitness ") != std::string::npos);
    }
}

TEST_CASE("json reports mirror the text reports") {
    Trace tr = chevron_trace();
    AnalysisReport rep = analyze(tr, OpennessPolicy::keep_ta());
    std::string text = report_json(tr, rep);
    CHECK(text.back() == '\n');
    CHECK(report_json(tr, analyze(tr, OpennessPolicy::keep_ta())) == text);

    nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["continuous"] == true);
    REQUIRE(j["shapes"].size() == 3);
    REQUIRE(j["steps"].size() == 2);
    CHECK(j["shapes"][0]["index"] == 1);
    CHECK(j["shapes"][0]["shape"] == kChevronS1);
    CHECK(j["shapes"][0]["refined"] == true);
    CHECK(j["shapes"][0]["opens"].size() == 4);
    bool found = false;
    for (const auto& o : j["shapes"][0]["opens"])
        if (o["part"] == kChevronMissing) {
            found = true;
            CHECK(o["origin"] == "preimage");
            CHECK(o["step"] == 1);
            CHECK(o["source"].is_string());
        }
    CHECK(found);
    CHECK(j["steps"][0]["mapping"] == "x - tA");
    CHECK(j["steps"][0]["determinate"] == false);
    CHECK(j["steps"][0]["transform"] == "1 0 0 1 0 0");
    CHECK(j["steps"][1]["transform"] == "0 -1 1 0 2 0");
    CHECK(j["steps"][0]["violations"].empty());

    AnalysisReport bad =
        analyze(tr, OpennessPolicy::keep_explicit({{}, {tr.context(2).ta}}));
    nlohmann::json jb = nlohmann::json::parse(report_json(tr, bad));
    CHECK(jb["continuous"] == false);
    REQUIRE(!jb["steps"][0]["violations"].empty());
    CHECK(jb["steps"][0]["violations"][0]["reason"] == "lhs-not-open");
    CHECK(jb["steps"][0]["violations"][0]["witnesses"].is_array());
}

TEST_CASE("svg sheets render deterministically") {
    Trace tr = chevron_trace();
    AnalysisReport rep = analyze(tr, OpennessPolicy::keep_ta());
    RenderSheet sheet = sheet_from_report(tr, rep);
    REQUIRE(sheet.rows.size() == 3);
    CHECK(sheet.rows[0].title == "S1");
    CHECK(sheet.rows[2].title == "S3");
    CHECK(sheet.rows[0].opens.size() == 4);

    std::string svg = render_svg(sheet);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
    CHECK(count_substr(svg, "<g transform=") == 4 + 3 + 2);
    CHECK(count_substr(svg, ">S2</text>") == 1);
    CHECK(render_svg(sheet_from_report(tr, rep)) == svg);
    CHECK_THROWS_WITH_AS(sheet_from_report(tick_trace(), rep),
                         doctest::Contains("does not belong"), InputError);

    SUBCASE("an empty sheet is still a document") {
        std::string empty = render_svg(RenderSheet{});
        CHECK(empty.rfind("<svg xmlns", 0) == 0);
        CHECK(empty.substr(empty.size() - 7) == "</svg>\n");
    }
}

TEST_CASE("parametric sheets draw links and labels") {
    Schema s = arch_schema();
    std::vector<Assignment> gs = {arch_grid()[0], arch_grid()[1]};
    ParametricRun run = run_parametric(s, gs);
    RenderSheet sheet = sheet_from_parametric(s, run.trace, run.report);
    REQUIRE(sheet.rows.size() == 3);
    for (const auto& row : sheet.rows) CHECK(row.annotations.size() == 7);

    std::string svg = render_svg(sheet);
    std::size_t cells = 0;
    for (const auto& row : sheet.rows) cells += row.opens.size();
    CHECK(count_substr(svg, "stroke-dasharray=\"4 3\"") == 7 * cells);
    CHECK(count_substr(svg, ">q</text>") >= 1);
    CHECK(render_svg(sheet) == svg);
}
