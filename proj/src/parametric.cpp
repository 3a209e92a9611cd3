#include "sg/parametric.hpp"

#include "sg/errors.hpp"
#include "sg/formula.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace sg {
namespace {

Rat term_value(const SchemaTerm& t) { return t.horizontal ? t.at.x : t.at.y; }

Point term_point(const SchemaTerm& t, const Rat& value) {
    return t.horizontal ? Point{value, t.at.y} : Point{t.at.x, value};
}

void require_declared(const Schema& schema, const Assignment& g) {
    for (const auto& [name, value] : g) {
        (void)value;
        if (!schema.term(name))
            throw InputError("assignment names unknown term " + name);
    }
}

} // namespace

const SchemaTerm* Schema::term(const std::string& name) const {
    for (const auto& t : terms)
        if (t.name == name) return &t;
    return nullptr;
}

void Schema::validate() const {
    std::set<std::string> names;
    for (const auto& f : fixed) {
        if (f.label.empty())
            throw InputError("schema: fixed points must carry a label");
        if (!names.insert(f.label).second)
            throw InputError("schema: duplicate name " + f.label);
    }
    for (const auto& t : terms) {
        if (t.name.empty()) throw InputError("schema: terms must carry a name");
        if (!names.insert(t.name).second)
            throw InputError("schema: duplicate name " + t.name);
        if (t.lo > t.hi)
            throw InputError("schema: term " + t.name + " range [" + rat_str(t.lo) +
                             ", " + rat_str(t.hi) + "] is empty");
        Rat v = term_value(t);
        if (v < t.lo || v > t.hi)
            throw InputError("schema: term " + t.name + " declared at " + rat_str(v) +
                             " outside its range");
    }
    for (const auto& m : mirrors) {
        const SchemaTerm* l = term(m.left);
        const SchemaTerm* r = term(m.right);
        const SchemaTerm* q = term(m.about);
        if (!l || !r || !q)
            throw InputError("schema: mirror references an undeclared term");
        if (m.left == m.right)
            throw InputError("schema: mirror pairs two copies of " + m.left);
        if (!l->horizontal || !r->horizontal)
            throw InputError("schema: mirror pair " + m.left + " " + m.right +
                             " must move horizontally");
        if (q->horizontal)
            throw InputError("schema: mirror about " + m.about +
                             " needs a vertically moving term");
        Rat lhs = l->at.x + r->at.x, rhs = q->at.x * 2;
        if (lhs != rhs)
            throw InputError("schema: declared positions break mirror " + m.left +
                             " " + m.right + " about " + m.about);
    }
    for (const auto& a : anchors) {
        bool found = std::any_of(fixed.begin(), fixed.end(),
                                 [&](const LabeledPoint& f) { return f.label == a; });
        if (!found) throw InputError("schema: anchor " + a + " names no fixed point");
    }
    for (const auto& [from, to] : links) {
        if (!names.count(from) || !names.count(to))
            throw InputError("schema: link " + from + " " + to +
                             " names an undeclared point");
        if (from == to)
            throw InputError("schema: link " + from + " " + to + " is degenerate");
    }
}

Assignment declared(const Schema& schema) {
    Assignment g;
    for (const auto& t : schema.terms) g[t.name] = term_value(t);
    return g;
}

Assignment complete_assignment(const Schema& schema, const Assignment& partial,
                               const Assignment& fallback) {
    require_declared(schema, partial);
    Assignment g = partial;
    for (const auto& m : schema.mirrors) {
        Rat axis = schema.term(m.about)->at.x;
        if (g.count(m.left) && !g.count(m.right))
            g[m.right] = Rat(axis * 2 - g[m.left]);
        else if (g.count(m.right) && !g.count(m.left))
            g[m.left] = Rat(axis * 2 - g[m.right]);
    }
    for (const auto& t : schema.terms) {
        if (g.count(t.name)) continue;
        auto it = fallback.find(t.name);
        if (it == fallback.end())
            throw InputError("assignment misses term " + t.name);
        g[t.name] = it->second;
    }
    return g;
}

void validate_assignment(const Schema& schema, const Assignment& g) {
    require_declared(schema, g);
    for (const auto& t : schema.terms) {
        auto it = g.find(t.name);
        if (it == g.end()) throw InputError("assignment misses term " + t.name);
        if (it->second < t.lo || it->second > t.hi)
            throw InputError("term " + t.name + " value " + rat_str(it->second) +
                             " outside range [" + rat_str(t.lo) + ", " + rat_str(t.hi) +
                             "]");
    }
    for (const auto& m : schema.mirrors) {
        Rat axis = schema.term(m.about)->at.x;
        Rat lhs = g.at(m.left) + g.at(m.right), rhs = axis * 2;
        if (lhs != rhs)
            throw InputError("mirror " + m.left + " " + m.right + " about " + m.about +
                             ": values " + rat_str(g.at(m.left)) + " and " +
                             rat_str(g.at(m.right)) + " are not symmetric about " +
                             rat_str(axis));
    }
}

Shape assigned_shape(const Schema& schema, const Assignment& g) {
    std::vector<LabeledPoint> pts = schema.fixed;
    for (const auto& t : schema.terms)
        pts.push_back({term_point(t, g.at(t.name)), t.name});
    return Shape::of_points(std::move(pts));
}

Shape assigned_terms(const Schema& schema, const Assignment& g) {
    std::vector<LabeledPoint> pts;
    for (const auto& a : schema.anchors)
        for (const auto& f : schema.fixed)
            if (f.label == a) pts.push_back(f);
    for (const auto& t : schema.terms)
        pts.push_back({term_point(t, g.at(t.name)), t.name});
    return Shape::of_points(std::move(pts));
}

Rule instantiate(const Schema& schema, const Assignment& g) {
    schema.validate();
    validate_assignment(schema, g);
    return {assigned_terms(schema, declared(schema)), assigned_terms(schema, g), true};
}

ParametricRun run_parametric(const Schema& schema, const std::vector<Assignment>& gs,
                             const OpennessPolicy& policy) {
    schema.validate();
    Formula h = parse_formula("x - tA");
    Assignment prev = declared(schema);
    std::vector<TraceStep> steps;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        try {
            validate_assignment(schema, gs[i]);
        } catch (const InputError& e) {
            throw InputError("assignment " + std::to_string(i + 1) + ": " + e.what());
        }
        steps.push_back({Rule{assigned_terms(schema, prev), assigned_terms(schema, gs[i]), true},
                         Transform::identity(), h});
        prev = gs[i];
    }
    Trace trace(assigned_shape(schema, declared(schema)), std::move(steps));
    AnalysisReport report = analyze(trace, policy);
    return {std::move(trace), std::move(report)};
}

} // namespace sg
