#include "sg/io.hpp"

#include "sg/errors.hpp"
#include "sg/formula.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace sg {

namespace scan {

bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool rat_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/';
}

} // namespace scan

// Tracks line and column through a piece of text so that every parse error
// can say where it happened and what was expected.
struct Scanner {
    std::string_view src;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;
    std::string where_name; // optional source name for diagnostics

    explicit Scanner(std::string_view text, std::string name = "")
        : src(text), where_name(std::move(name)) {}

    bool done() const { return pos >= src.size(); }
    char peek() const { return done() ? '\0' : src[pos]; }

    void advance() {
        if (done()) return;
        if (src[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }

    void skip_ws() {
        while (!done() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                           src[pos] == '\n'))
            advance();
    }

    void skip_blanks() { // spaces and tabs only, not newlines
        while (!done() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r')) advance();
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream os;
        if (!where_name.empty()) os << where_name << ":";
        os << "line " << line << ", column " << col << ": expected " << expected;
        if (done()) os << ", found end of input";
        else os << ", found '" << src[pos] << "'";
        throw InputError(os.str());
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail(what);
        advance();
    }

    void expect_word(std::string_view word) {
        for (char c : word) {
            if (peek() != c) fail("'" + std::string(word) + "'");
            advance();
        }
    }

    std::string take_while(bool (*pred)(char)) {
        std::string out;
        while (!done() && pred(src[pos])) {
            out.push_back(src[pos]);
            advance();
        }
        return out;
    }

    Rat rat(const std::string& what) {
        std::string tok = take_while(scan::rat_char);
        if (tok.empty()) fail(what);
        try {
            return rat_parse(tok);
        } catch (const InputError&) {
            fail(what + " (got '" + tok + "')");
        }
    }

    std::string word(const std::string& what) {
        std::string tok = take_while(scan::label_char);
        if (tok.empty()) fail(what);
        return tok;
    }
};

namespace {

void append_rat(std::string& out, const Rat& q) { out += rat_str(q); }

Shape scan_shape_literal(Scanner& sc) {
    sc.skip_ws();
    Kind kind;
    if (sc.peek() == 'u') {
        sc.advance();
        char k = sc.peek();
        if (k == '1') kind = Kind::segments;
        else if (k == '0') kind = Kind::points;
        else sc.fail("shape literal u1{...} or u0{...}");
        sc.advance();
    } else {
        sc.fail("shape literal u1{...} or u0{...}");
    }
    sc.expect('{', "'{' after shape kind");
    if (kind == Kind::segments) {
        std::vector<Segment> segs;
        for (;;) {
            sc.skip_ws();
            if (sc.peek() == '}') { sc.advance(); break; }
            Rat x0 = sc.rat("rational x0");
            sc.skip_ws();
            Rat y0 = sc.rat("rational y0");
            sc.skip_ws();
            Rat x1 = sc.rat("rational x1");
            sc.skip_ws();
            Rat y1 = sc.rat("rational y1");
            segs.push_back(Segment{Point{x0, y0}, Point{x1, y1}});
        }
        return Shape::of_segments(std::move(segs));
    }
    std::vector<LabeledPoint> pts;
    for (;;) {
        sc.skip_ws();
        if (sc.peek() == '}') { sc.advance(); break; }
        Rat x = sc.rat("rational x");
        sc.skip_ws();
        Rat y = sc.rat("rational y");
        std::string label;
        if (sc.peek() == ':') {
            sc.advance();
            label = sc.word("label after ':'");
        }
        pts.push_back(LabeledPoint{Point{x, y}, std::move(label)});
    }
    return Shape::of_points(std::move(pts));
}

} // namespace

std::string shape_literal(const Shape& s) {
    std::string out = s.kind() == Kind::segments ? "u1{" : "u0{";
    if (s.kind() == Kind::segments) {
        for (const auto& seg : s.segments()) {
            out += ' ';
            append_rat(out, seg.a.x);
            out += ' ';
            append_rat(out, seg.a.y);
            out += ' ';
            append_rat(out, seg.b.x);
            out += ' ';
            append_rat(out, seg.b.y);
            out += ' ';
        }
    } else {
        for (const auto& p : s.points()) {
            out += ' ';
            append_rat(out, p.pos.x);
            out += ' ';
            append_rat(out, p.pos.y);
            if (!p.label.empty()) {
                out += ':';
                out += p.label;
            }
            out += ' ';
        }
    }
    out += '}';
    return out;
}

Shape parse_shape_literal(std::string_view text) {
    Scanner sc(text);
    Shape s = scan_shape_literal(sc);
    sc.skip_ws();
    if (!sc.done()) sc.fail("end of shape literal");
    return s;
}

std::string transform_sextuple(const Transform& t) {
    std::string out;
    append_rat(out, t.a);
    for (const Rat* q : {&t.b, &t.c, &t.d, &t.e, &t.f}) {
        out += ' ';
        append_rat(out, *q);
    }
    return out;
}

Transform parse_transform_sextuple(std::string_view text) {
    Scanner sc(text);
    Rat v[6];
    for (auto& q : v) {
        sc.skip_ws();
        q = sc.rat("rational transform entry");
    }
    sc.skip_ws();
    if (!sc.done()) sc.fail("end of transform sextuple");
    return Transform::make(v[0], v[1], v[2], v[3], v[4], v[5]);
}

namespace {

std::string with_name(const std::string& name, const std::string& msg) {
    return name.empty() ? msg : name + ": " + msg;
}

std::string origin_str(OpenOrigin o) {
    switch (o) {
    case OpenOrigin::boundary: return "boundary";
    case OpenOrigin::policy: return "policy";
    case OpenOrigin::given: return "given";
    case OpenOrigin::preimage: return "preimage";
    case OpenOrigin::closure: return "closure";
    }
    return "closure";
}

std::vector<Shape> sorted_unique(std::vector<Shape> xs) {
    std::sort(xs.begin(), xs.end(), ShapeLess{});
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// The rest of the current line, trimmed at both ends.
std::string rest_of_line(Scanner& sc) {
    sc.skip_blanks();
    std::string out;
    while (!sc.done() && sc.peek() != '\n') {
        out.push_back(sc.peek());
        sc.advance();
    }
    while (!out.empty() &&
           (out.back() == ' ' || out.back() == '\t' || out.back() == '\r'))
        out.pop_back();
    return out;
}

Kind scan_kind_tag(Scanner& sc) {
    if (sc.peek() == 'u') {
        sc.advance();
        char k = sc.peek();
        if (k == '1') { sc.advance(); return Kind::segments; }
        if (k == '0') { sc.advance(); return Kind::points; }
    }
    sc.fail("algebra u1 or u0");
}

// A mapping line holds either a catalog id or formula text.
Formula scan_mapping(Scanner& sc) {
    std::size_t ln = sc.line;
    std::string text = rest_of_line(sc);
    if (text.empty()) sc.fail("mapping formula");
    if (auto f = catalog_lookup(text)) return *f;
    if (text.rfind("T1.", 0) == 0)
        throw InputError(with_name(sc.where_name, "line " + std::to_string(ln) +
                                                      ": unknown catalog id " + text));
    try {
        return parse_formula(text);
    } catch (const InputError& e) {
        throw InputError(with_name(sc.where_name, "line " + std::to_string(ln) +
                                                      ": in mapping: " + e.what()));
    }
}

} // namespace

std::optional<Topology> TraceDocument::final_topology(const Shape& universe) const {
    if (!has_final_topology) return std::nullopt;
    return Topology::generate(universe, final_opens);
}

TraceDocument parse_trace(std::string_view text, const std::string& name) {
    Scanner sc(text, name);
    sc.skip_ws();
    sc.expect_word("trace");
    sc.skip_ws();
    sc.expect_word("v1");
    sc.skip_ws();
    TraceDocument doc;
    doc.kind = scan_kind_tag(sc);
    sc.skip_ws();
    sc.expect_word("initial");
    doc.initial = scan_shape_literal(sc);
    if (doc.initial.kind() != doc.kind)
        sc.fail("an initial shape of the declared algebra");
    bool after_steps = false;
    for (;;) {
        sc.skip_ws();
        if (sc.done()) break;
        std::string kw = sc.word("'step', 'policy' or 'final-topology'");
        if (kw == "step") {
            if (after_steps) sc.fail("no step after policy or final-topology");
            sc.skip_ws();
            sc.expect_word("lhs");
            Shape lhs = scan_shape_literal(sc);
            sc.skip_ws();
            sc.expect_word("rhs");
            Shape rhs = scan_shape_literal(sc);
            sc.skip_ws();
            sc.expect_word("transform");
            Rat v[6];
            for (auto& q : v) {
                sc.skip_ws();
                q = sc.rat("rational transform entry");
            }
            sc.skip_ws();
            sc.expect_word("mapping");
            Formula h = scan_mapping(sc);
            sc.skip_ws();
            sc.expect_word("determinate");
            sc.skip_ws();
            char d = sc.peek();
            if (d != '0' && d != '1') sc.fail("determinate flag 0 or 1");
            sc.advance();
            sc.skip_ws();
            sc.expect_word("end");
            doc.steps.push_back({Rule{std::move(lhs), std::move(rhs), d == '1'},
                                 Transform::make(v[0], v[1], v[2], v[3], v[4], v[5]),
                                 std::move(h)});
        } else if (kw == "policy") {
            if (after_steps) sc.fail("a single policy line");
            std::string p = rest_of_line(sc);
            if (p == "ta") doc.policy = PolicyKind::ta;
            else if (p == "ta+complement") doc.policy = PolicyKind::ta_and_complement;
            else sc.fail("policy ta or ta+complement");
            after_steps = true;
        } else if (kw == "final-topology") {
            std::vector<Shape> opens;
            for (;;) {
                sc.skip_ws();
                std::string w = sc.word("'open' or 'end'");
                if (w == "end") break;
                if (w != "open" && w != "basis") sc.fail("'open' or 'end'");
                opens.push_back(scan_shape_literal(sc));
            }
            doc.has_final_topology = true;
            doc.final_opens = sorted_unique(std::move(opens));
            sc.skip_ws();
            if (!sc.done()) sc.fail("end of trace document");
            break;
        } else {
            sc.fail("'step', 'policy' or 'final-topology'");
        }
    }
    return doc;
}

std::string emit_trace(const TraceDocument& doc) {
    std::string out = "trace v1 ";
    out += doc.kind == Kind::segments ? "u1" : "u0";
    out += "\ninitial " + shape_literal(doc.initial) + "\n";
    for (const auto& st : doc.steps) {
        out += "step\n";
        out += "lhs " + shape_literal(st.rule.lhs) + "\n";
        out += "rhs " + shape_literal(st.rule.rhs) + "\n";
        out += "transform " + transform_sextuple(st.t) + "\n";
        out += "mapping " + formula_str(st.mapping) + "\n";
        out += std::string("determinate ") + (st.rule.determinate ? "1" : "0") + "\n";
        out += "end\n";
    }
    if (doc.policy) {
        if (*doc.policy == PolicyKind::explicit_parts)
            throw InputError("trace documents carry only the named policies");
        out += std::string("policy ") +
               (*doc.policy == PolicyKind::ta ? "ta" : "ta+complement") + "\n";
    }
    if (doc.has_final_topology) {
        out += "final-topology\n";
        for (const auto& o : sorted_unique(doc.final_opens))
            out += "open " + shape_literal(o) + "\n";
        out += "end\n";
    }
    return out;
}

std::vector<Topology> parse_topologies(std::string_view text, const std::string& name) {
    Scanner sc(text, name);
    sc.skip_ws();
    sc.expect_word("topologies");
    sc.skip_ws();
    sc.expect_word("v1");
    std::vector<Topology> out;
    for (;;) {
        sc.skip_ws();
        if (sc.done()) break;
        sc.expect_word("topology");
        sc.skip_ws();
        sc.expect_word("universe");
        Shape u = scan_shape_literal(sc);
        std::vector<Shape> opens;
        for (;;) {
            sc.skip_ws();
            std::string w = sc.word("'open', 'basis' or 'end'");
            if (w == "end") break;
            if (w != "open" && w != "basis") sc.fail("'open', 'basis' or 'end'");
            opens.push_back(scan_shape_literal(sc));
        }
        out.push_back(Topology::generate(u, opens));
    }
    return out;
}

std::string emit_topologies(const std::vector<Topology>& ts) {
    std::string out = "topologies v1\n";
    for (const auto& t : ts) {
        out += "topology\nuniverse " + shape_literal(t.universe()) + "\n";
        std::vector<Shape> basis = t.reduced_basis();
        for (const auto& o : t.opens()) {
            bool irr = std::find(basis.begin(), basis.end(), o) != basis.end();
            out += std::string(irr ? "basis " : "open ") + shape_literal(o) + "\n";
        }
        out += "end\n";
    }
    return out;
}

OpennessPolicy parse_policy(std::string_view text, const std::string& name) {
    Scanner sc(text, name);
    sc.skip_ws();
    sc.expect_word("policy");
    sc.skip_ws();
    sc.expect_word("v1");
    std::string kindw = rest_of_line(sc);
    if (kindw == "ta" || kindw == "ta+complement") {
        sc.skip_ws();
        if (!sc.done()) sc.fail("end of policy file");
        return kindw == "ta" ? OpennessPolicy::keep_ta()
                             : OpennessPolicy::keep_ta_and_complement();
    }
    if (kindw != "explicit") sc.fail("policy ta, ta+complement or explicit");
    std::vector<std::vector<Shape>> parts;
    for (;;) {
        sc.skip_ws();
        if (sc.done()) break;
        sc.expect_word("step");
        sc.skip_ws();
        std::string num = sc.word("step index");
        if (num != std::to_string(parts.size() + 1))
            sc.fail("step " + std::to_string(parts.size() + 1));
        std::vector<Shape> cur;
        for (;;) {
            sc.skip_ws();
            std::string w = sc.word("'part' or 'end'");
            if (w == "end") break;
            if (w != "part") sc.fail("'part' or 'end'");
            cur.push_back(scan_shape_literal(sc));
        }
        parts.push_back(sorted_unique(std::move(cur)));
    }
    return OpennessPolicy::keep_explicit(std::move(parts));
}

std::string emit_policy(const OpennessPolicy& policy) {
    std::string out = "policy v1 ";
    if (policy.kind == PolicyKind::ta) return out + "ta\n";
    if (policy.kind == PolicyKind::ta_and_complement) return out + "ta+complement\n";
    out += "explicit\n";
    for (std::size_t i = 0; i < policy.parts.size(); ++i) {
        out += "step " + std::to_string(i + 1) + "\n";
        for (const Shape& p : sorted_unique(policy.parts[i]))
            out += "part " + shape_literal(p) + "\n";
        out += "end\n";
    }
    return out;
}

Schema parse_schema(std::string_view text, const std::string& name) {
    Scanner sc(text, name);
    sc.skip_ws();
    sc.expect_word("schema");
    sc.skip_ws();
    sc.expect_word("v1");
    Schema s;
    for (;;) {
        sc.skip_ws();
        if (sc.done()) break;
        std::string kw = sc.word("'fixed', 'anchor', 'term', 'mirror' or 'link'");
        if (kw == "fixed") {
            sc.skip_ws();
            Rat x = sc.rat("rational x");
            sc.skip_ws();
            Rat y = sc.rat("rational y");
            sc.expect(':', "':' before the fixed point's label");
            s.fixed.push_back({Point{x, y}, sc.word("label")});
        } else if (kw == "anchor") {
            sc.skip_ws();
            s.anchors.push_back(sc.word("fixed point label"));
        } else if (kw == "term") {
            SchemaTerm t;
            sc.skip_ws();
            t.name = sc.word("term name");
            sc.skip_ws();
            sc.expect_word("at");
            sc.skip_ws();
            Rat x = sc.rat("rational x");
            sc.skip_ws();
            Rat y = sc.rat("rational y");
            t.at = Point{x, y};
            sc.skip_ws();
            sc.expect_word("axis=");
            char a = sc.peek();
            if (a != 'h' && a != 'v') sc.fail("axis h or v");
            t.horizontal = a == 'h';
            sc.advance();
            sc.skip_ws();
            sc.expect_word("range=[");
            t.lo = sc.rat("range lower bound");
            sc.expect(',', "','");
            t.hi = sc.rat("range upper bound");
            sc.expect(']', "']'");
            s.terms.push_back(std::move(t));
        } else if (kw == "mirror") {
            MirrorRule m;
            sc.skip_ws();
            m.left = sc.word("term name");
            sc.skip_ws();
            m.right = sc.word("term name");
            sc.skip_ws();
            sc.expect_word("about");
            sc.skip_ws();
            m.about = sc.word("term name");
            s.mirrors.push_back(std::move(m));
        } else if (kw == "link") {
            sc.skip_ws();
            std::string a = sc.word("point name");
            sc.skip_ws();
            std::string b = sc.word("point name");
            s.links.emplace_back(std::move(a), std::move(b));
        } else {
            sc.fail("'fixed', 'anchor', 'term', 'mirror' or 'link'");
        }
    }
    try {
        s.validate();
    } catch (const InputError& e) {
        throw InputError(with_name(name, e.what()));
    }
    return s;
}

std::string emit_schema(const Schema& schema) {
    std::string out = "schema v1\n";
    for (const auto& f : schema.fixed)
        out += "fixed " + rat_str(f.pos.x) + " " + rat_str(f.pos.y) + ":" + f.label + "\n";
    for (const auto& a : schema.anchors) out += "anchor " + a + "\n";
    for (const auto& t : schema.terms)
        out += "term " + t.name + " at " + rat_str(t.at.x) + " " + rat_str(t.at.y) +
               " axis=" + (t.horizontal ? "h" : "v") + " range=[" + rat_str(t.lo) +
               "," + rat_str(t.hi) + "]\n";
    for (const auto& m : schema.mirrors)
        out += "mirror " + m.left + " " + m.right + " about " + m.about + "\n";
    for (const auto& [a, b] : schema.links) out += "link " + a + " " + b + "\n";
    return out;
}

std::vector<Assignment> parse_assignments(std::string_view text, const Schema& schema,
                                          const std::string& name) {
    schema.validate();
    Scanner sc(text, name);
    sc.skip_ws();
    sc.expect_word("assignments");
    sc.skip_ws();
    sc.expect_word("v1");
    std::vector<Assignment> out;
    Assignment prev = declared(schema);
    for (;;) {
        sc.skip_ws();
        if (sc.done()) break;
        std::size_t ln = sc.line;
        sc.expect_word("assign");
        Assignment partial;
        for (;;) {
            sc.skip_blanks();
            if (sc.done() || sc.peek() == '\n') break;
            std::string tname = sc.word("term name");
            sc.expect('=', "'=' after the term name");
            Rat v = sc.rat("rational value");
            if (!partial.emplace(tname, v).second) sc.fail("each term at most once");
        }
        try {
            Assignment full = complete_assignment(schema, partial, prev);
            validate_assignment(schema, full);
            out.push_back(full);
            prev = std::move(full);
        } catch (const InputError& e) {
            throw InputError(
                with_name(name, "line " + std::to_string(ln) + ": " + e.what()));
        }
    }
    return out;
}

std::string emit_assignments(const Schema& schema, const std::vector<Assignment>& gs) {
    std::string out = "assignments v1\n";
    for (const auto& g : gs) {
        out += "assign";
        for (const auto& t : schema.terms) {
            auto it = g.find(t.name);
            if (it == g.end()) throw InputError("assignment misses term " + t.name);
            out += " " + t.name + "=" + rat_str(it->second);
        }
        out += "\n";
    }
    return out;
}

namespace {

void require_matching(const Trace& trace, const AnalysisReport& report) {
    if (report.shapes.size() != trace.shapes().size() ||
        report.steps.size() != trace.step_count())
        throw InputError("report does not belong to the trace");
}

} // namespace

std::string report_text(const Trace& trace, const AnalysisReport& report) {
    require_matching(trace, report);
    std::ostringstream os;
    os << "continuous " << (report.continuous ? "yes" : "no") << "\n";
    os << "shapes " << report.shapes.size() << "\n";
    os << "steps " << report.steps.size() << "\n";
    for (std::size_t i = 0; i < report.shapes.size(); ++i) {
        const ShapeReport& sr = report.shapes[i];
        os << "shape " << i + 1 << " " << shape_literal(trace.shapes()[i]) << "\n";
        os << "opens " << sr.topology.opens().size() << " refined "
           << (sr.refined ? "yes" : "no") << "\n";
        for (const auto& oi : sr.opens) {
            os << "open " << shape_literal(oi.part) << " " << origin_str(oi.origin);
            if (oi.origin == OpenOrigin::preimage)
                os << " step " << oi.step << " source " << shape_literal(oi.source);
            os << "\n";
        }
    }
    for (const auto& st : report.steps) {
        os << "step " << st.index << " mapping "
           << formula_str(trace.steps()[st.index - 1].mapping) << " continuous "
           << (st.continuous ? "yes" : "no") << "\n";
        for (const auto& v : st.violations) {
            os << "violation " << v.reason << ": " << v.detail << "\n";
            for (const auto& w : v.witnesses) os << "witness " << shape_literal(w) << "\n";
        }
    }
    return os.str();
}

std::string report_json(const Trace& trace, const AnalysisReport& report) {
    require_matching(trace, report);
    nlohmann::ordered_json j;
    j["continuous"] = report.continuous;
    j["shapes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.shapes.size(); ++i) {
        const ShapeReport& sr = report.shapes[i];
        nlohmann::ordered_json js;
        js["index"] = i + 1;
        js["shape"] = shape_literal(trace.shapes()[i]);
        js["refined"] = sr.refined;
        js["opens"] = nlohmann::ordered_json::array();
        for (const auto& oi : sr.opens) {
            nlohmann::ordered_json jo;
            jo["part"] = shape_literal(oi.part);
            jo["origin"] = origin_str(oi.origin);
            if (oi.origin == OpenOrigin::preimage) {
                jo["step"] = oi.step;
                jo["source"] = shape_literal(oi.source);
            }
            js["opens"].push_back(std::move(jo));
        }
        j["shapes"].push_back(std::move(js));
    }
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& st : report.steps) {
        const TraceStep& ts = trace.steps()[st.index - 1];
        nlohmann::ordered_json je;
        je["index"] = st.index;
        je["lhs"] = shape_literal(ts.rule.lhs);
        je["rhs"] = shape_literal(ts.rule.rhs);
        je["transform"] = transform_sextuple(ts.t);
        je["mapping"] = formula_str(ts.mapping);
        je["determinate"] = ts.rule.determinate;
        je["continuous"] = st.continuous;
        je["violations"] = nlohmann::ordered_json::array();
        for (const auto& v : st.violations) {
            nlohmann::ordered_json jv;
            jv["reason"] = v.reason;
            jv["detail"] = v.detail;
            jv["witnesses"] = nlohmann::ordered_json::array();
            for (const auto& w : v.witnesses) jv["witnesses"].push_back(shape_literal(w));
            je["violations"].push_back(std::move(jv));
        }
        j["steps"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

} // namespace sg
