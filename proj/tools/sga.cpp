#include "CLI11.hpp"

#include "sg/errors.hpp"
#include "sg/io.hpp"
#include "sg/match.hpp"
#include "sg/render.hpp"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using namespace sg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f.good()) throw InputError("cannot write " + path);
}

// A policy argument is one of the named policies or a policy file.
OpennessPolicy resolve_policy(const std::string& arg) {
    if (arg == "ta") return OpennessPolicy::keep_ta();
    if (arg == "ta+complement") return OpennessPolicy::keep_ta_and_complement();
    return parse_policy(slurp(arg), arg);
}

OpennessPolicy document_policy(const TraceDocument& doc) {
    if (doc.policy == PolicyKind::ta_and_complement)
        return OpennessPolicy::keep_ta_and_complement();
    return OpennessPolicy::keep_ta();
}

// A mapping argument is formula text or a catalog id.
Formula resolve_mapping(const std::string& text) {
    if (auto f = catalog_lookup(text)) return *f;
    if (text.rfind("T1.", 0) == 0) throw InputError("unknown catalog id " + text);
    return parse_formula(text);
}

void print_step(const StepReport& rep, const Formula& h) {
    std::cout << "step " << rep.index << " mapping " << formula_str(h)
              << " continuous " << (rep.continuous ? "yes" : "no") << "\n";
    for (const auto& v : rep.violations) {
        std::cout << "violation " << v.reason << ": " << v.detail << "\n";
        for (const auto& w : v.witnesses)
            std::cout << "witness " << shape_literal(w) << "\n";
    }
}

struct AnalyzeOpts {
    std::vector<std::string> traces;
    std::string policy; // empty: the document's policy, defaulting to ta
    std::string report_out;
    std::string svg_dir;
    std::string final_topology_file;
    std::string mode = "basis";
    bool json = false;
};

struct Analyzed {
    Trace trace;
    AnalysisReport report;
};

Analyzed analyze_one(const std::string& path, const AnalyzeOpts& o) {
    TraceDocument doc = parse_trace(slurp(path), path);
    Trace trace = doc.to_trace();
    OpennessPolicy policy =
        o.policy.empty() ? document_policy(doc) : resolve_policy(o.policy);
    std::optional<Topology> fin;
    if (!o.final_topology_file.empty()) {
        std::vector<Topology> ts =
            parse_topologies(slurp(o.final_topology_file), o.final_topology_file);
        if (ts.size() != 1)
            throw InputError(o.final_topology_file +
                             ": expected exactly one topology, found " +
                             std::to_string(ts.size()));
        fin = std::move(ts.front());
    } else {
        fin = doc.final_topology(trace.shapes().back());
    }
    PreimageMode mode =
        o.mode == "all" ? PreimageMode::all_opens : PreimageMode::basis;
    AnalysisReport report = analyze(trace, policy, fin, mode);
    return {std::move(trace), std::move(report)};
}

int run_analyze(const AnalyzeOpts& o) {
    // Batch mode: traces are independent, so they fan out across threads;
    // results are gathered and printed in input order.
    std::vector<std::future<Analyzed>> futs;
    futs.reserve(o.traces.size());
    for (const std::string& path : o.traces)
        futs.push_back(std::async(std::launch::async,
                                  [&o, path] { return analyze_one(path, o); }));
    bool multi = o.traces.size() > 1;
    if (!o.report_out.empty() && multi) fs::create_directories(o.report_out);
    if (!o.svg_dir.empty()) fs::create_directories(o.svg_dir);
    bool all_ok = true;
    for (std::size_t i = 0; i < futs.size(); ++i) {
        Analyzed got = futs[i].get();
        const std::string& path = o.traces[i];
        std::string text = o.json ? report_json(got.trace, got.report)
                                  : report_text(got.trace, got.report);
        if (!o.report_out.empty()) {
            fs::path target =
                multi ? fs::path(o.report_out) / (fs::path(path).stem().string() +
                                                  (o.json ? ".json" : ".txt"))
                      : fs::path(o.report_out);
            spill(target.string(), text);
            std::cout << path << ": continuous "
                      << (got.report.continuous ? "yes" : "no") << "\n";
        } else {
            if (multi) std::cout << "== " << path << "\n";
            std::cout << text;
        }
        if (!o.svg_dir.empty())
            spill((fs::path(o.svg_dir) / (fs::path(path).stem().string() + ".svg"))
                      .string(),
                  render_svg(sheet_from_report(got.trace, got.report)));
        all_ok = all_ok && got.report.continuous;
    }
    return all_ok ? 0 : 2;
}

int run_check(const std::string& trace_path, const std::string& topo_path) {
    Trace trace = parse_trace(slurp(trace_path), trace_path).to_trace();
    std::vector<Topology> ts = parse_topologies(slurp(topo_path), topo_path);
    if (ts.size() != trace.shapes().size())
        throw InputError(topo_path + ": expected " +
                         std::to_string(trace.shapes().size()) +
                         " topologies, one per shape, found " +
                         std::to_string(ts.size()));
    bool ok = true;
    for (std::size_t i = 1; i <= trace.step_count(); ++i) {
        const Formula& h = trace.steps()[i - 1].mapping;
        StepReport rep = check_step(trace.context(i), h, ts[i - 1], ts[i], i);
        print_step(rep, h);
        ok = ok && rep.continuous;
    }
    std::cout << "continuous " << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 2;
}

int run_match(const std::string& a_path, const std::string& host_path,
              const std::string& group, bool determinate) {
    Shape a = parse_shape_literal(slurp(a_path));
    Shape host = parse_shape_literal(slurp(host_path));
    TransformGroup g = TransformGroup::isometries;
    if (group == "identity") g = TransformGroup::identity;
    else if (group == "translations") g = TransformGroup::translations;
    else if (group == "similarities") g = TransformGroup::similarities;
    std::vector<Match> ms = enumerate_matches(a, host, g, determinate);
    for (const auto& m : ms) std::cout << "match " << transform_sextuple(m.t) << "\n";
    std::cout << "matches " << ms.size() << "\n";
    return 0;
}

int run_classify(const std::string& formula_text, const std::string& trace_path,
                 std::size_t step) {
    Formula h = resolve_mapping(formula_text);
    Trace trace = parse_trace(slurp(trace_path), trace_path).to_trace();
    if (step < 1 || step > trace.step_count())
        throw InputError("step " + std::to_string(step) + " out of range: trace has " +
                         std::to_string(trace.step_count()) + " steps");
    StepContext ctx = trace.context(step);
    Classification c = classify(h, ctx);
    std::cout << "mapping " << formula_str(h) << "\n";
    std::cout << "verdict " << verdict_str(c.verdict) << (c.vacuous ? " vacuous" : "")
              << "\n";
    if (!c.detail.empty()) std::cout << "detail " << c.detail << "\n";
    std::cout << "describes " << (mapping_describes(h, ctx) ? "yes" : "no") << "\n";
    std::string alts;
    for (const auto& [id, f] : formula_catalog())
        if (mapping_describes(f, ctx)) alts += (alts.empty() ? "" : " ") + id;
    std::cout << "alternatives " << (alts.empty() ? "none" : alts) << "\n";
    return c.verdict == Verdict::suitable ? 0 : 2;
}

int run_basis(const std::string& topo_path) {
    std::vector<Topology> ts = parse_topologies(slurp(topo_path), topo_path);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::cout << "topology " << i + 1 << " universe "
                  << shape_literal(ts[i].universe()) << "\n";
        for (const Shape& b : ts[i].reduced_basis())
            std::cout << "basis " << shape_literal(b) << "\n";
    }
    return 0;
}

struct ParametricOpts {
    std::string schema_path, assignments_path;
    std::string policy = "ta";
    std::string report_out, svg_file, emit_trace_file;
    bool json = false;
};

int run_parametric_cmd(const ParametricOpts& o) {
    Schema schema = parse_schema(slurp(o.schema_path), o.schema_path);
    std::vector<Assignment> gs =
        parse_assignments(slurp(o.assignments_path), schema, o.assignments_path);
    ParametricRun run = run_parametric(schema, gs, resolve_policy(o.policy));
    if (!o.emit_trace_file.empty()) {
        TraceDocument doc;
        doc.kind = Kind::points;
        doc.initial = run.trace.initial();
        doc.steps = run.trace.steps();
        spill(o.emit_trace_file, emit_trace(doc));
    }
    std::string text = o.json ? report_json(run.trace, run.report)
                              : report_text(run.trace, run.report);
    if (!o.report_out.empty()) {
        spill(o.report_out, text);
        std::cout << o.assignments_path << ": continuous "
                  << (run.report.continuous ? "yes" : "no") << "\n";
    } else {
        std::cout << text;
    }
    if (!o.svg_file.empty())
        spill(o.svg_file, render_svg(sheet_from_parametric(schema, run.trace, run.report)));
    return run.report.continuous ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuity analysis for computations with shapes"};
    app.require_subcommand(1);
    int rc = 0;

    AnalyzeOpts ao;
    CLI::App* an = app.add_subcommand(
        "analyze", "derive topologies for a recorded computation and check "
                   "every step for continuity");
    an->add_option("trace", ao.traces, "trace document(s)")->required();
    an->add_option("--policy", ao.policy,
                   "ta, ta+complement or a policy file (default: the trace's "
                   "own policy, else ta)");
    an->add_option("--report", ao.report_out,
                   "write the report here instead of stdout (a directory when "
                   "several traces are given)");
    an->add_option("--svg", ao.svg_dir, "write one SVG sheet per trace into this directory");
    an->add_option("--final-topology", ao.final_topology_file,
                   "topologies file holding the final shape's topology");
    an->add_option("--mode", ao.mode, "take preimages of basis elements or of all opens")
        ->check(CLI::IsMember({"basis", "all"}));
    an->add_flag("--json", ao.json, "machine-readable report");
    an->callback([&] { rc = run_analyze(ao); });

    std::string check_trace, check_topos;
    CLI::App* ck = app.add_subcommand(
        "check", "verify a claimed topology assignment against a trace");
    ck->add_option("trace", check_trace, "trace document")->required();
    ck->add_option("topologies", check_topos, "topologies file, one per shape")
        ->required();
    ck->callback([&] { rc = run_check(check_trace, check_topos); });

    std::string match_a, match_host, match_group = "isometries";
    bool match_det = false;
    CLI::App* mt = app.add_subcommand(
        "match", "enumerate the embeddings of one shape in another");
    mt->add_option("shapeA", match_a, "shape literal file for the embedded shape")
        ->required();
    mt->add_option("shapeS", match_host, "shape literal file for the host shape")
        ->required();
    mt->add_option("--group", match_group, "transform group to search")
        ->check(CLI::IsMember({"identity", "translations", "isometries",
                               "similarities"}));
    mt->add_flag("--determinate", match_det,
                 "only embeddings onto full maximal elements");
    mt->callback([&] { rc = run_match(match_a, match_host, match_group, match_det); });

    std::string cls_formula, cls_trace;
    std::size_t cls_step = 1;
    CLI::App* cl = app.add_subcommand(
        "classify", "judge a mapping formula against one step of a trace");
    cl->add_option("formula", cls_formula, "formula text or catalog id")->required();
    cl->add_option("trace", cls_trace, "trace document")->required();
    cl->add_option("step", cls_step, "step index, 1-based")->required();
    cl->callback([&] { rc = run_classify(cls_formula, cls_trace, cls_step); });

    std::string basis_topos;
    CLI::App* bs = app.add_subcommand(
        "basis", "print the sum-irreducible basis of stored topologies");
    bs->add_option("topologies", basis_topos, "topologies file")->required();
    bs->callback([&] { rc = run_basis(basis_topos); });

    ParametricOpts po;
    CLI::App* pa = app.add_subcommand(
        "parametric", "instantiate a schema over assignments and analyze the run");
    pa->add_option("schema", po.schema_path, "schema file")->required();
    pa->add_option("assignments", po.assignments_path, "assignments file")->required();
    pa->add_option("--policy", po.policy, "ta, ta+complement or a policy file");
    pa->add_option("--report", po.report_out, "write the report here instead of stdout");
    pa->add_option("--svg", po.svg_file, "write the SVG sheet here");
    pa->add_option("--emit-trace", po.emit_trace_file,
                   "write the generated trace document here");
    pa->add_flag("--json", po.json, "machine-readable report");
    pa->callback([&] { rc = run_parametric_cmd(po); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
