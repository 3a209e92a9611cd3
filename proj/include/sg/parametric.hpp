#pragma once

#include "sg/analyze.hpp"
#include "sg/shape.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sg {

// A movable point of a schema: it slides along one axis inside a rational
// range while the other coordinate stays at the declared position.
struct SchemaTerm {
    std::string name;
    Point at; // declared position
    bool horizontal = true;
    Rat lo, hi; // range of the moving coordinate
};

// Ties two horizontal movers symmetrically about the vertical axis through
// a third, vertically moving term.
struct MirrorRule {
    std::string left, right, about;
};

// A family of labeled point shapes: fixed points plus movable terms, with
// optional mirror symmetry and drawing-only links. Anchors name fixed
// points that every instantiated rule carries on both sides.
struct Schema {
    std::vector<LabeledPoint> fixed;
    std::vector<std::string> anchors;
    std::vector<SchemaTerm> terms;
    std::vector<MirrorRule> mirrors;
    std::vector<std::pair<std::string, std::string>> links;

    const SchemaTerm* term(const std::string& name) const;
    // Rejects duplicate or colliding names, empty ranges, declared
    // positions outside their range or breaking a mirror, and references
    // to undeclared names.
    void validate() const;
};

// One value per term, on that term's axis.
using Assignment = std::map<std::string, Rat>;

// The declared positions, as an assignment.
Assignment declared(const Schema& schema);

// Fills in omitted terms: mirror partners derive from their pair, the rest
// carry over from the fallback.
Assignment complete_assignment(const Schema& schema, const Assignment& partial,
                               const Assignment& fallback);

// Range and mirror checks; throws InputError naming the violated constraint.
void validate_assignment(const Schema& schema, const Assignment& g);

// The whole shape at an assignment: fixed points plus one point per term,
// labeled with the term's name.
Shape assigned_shape(const Schema& schema, const Assignment& g);

// Just the part a rule rewrites: the term points plus the anchors.
Shape assigned_terms(const Schema& schema, const Assignment& g);

// The rule from the declared positions to the assignment.
Rule instantiate(const Schema& schema, const Assignment& g);

struct ParametricRun {
    Trace trace;
    AnalysisReport report;
};

// Applies the assignments in order from the declared positions and analyzes
// the computation. Each step rewrites the term points in place (identity
// transform, determinate matching), so the preimage of every open lands on
// the rewritten part or the whole shape and the analysis never refines
// beyond the policy's own opens.
ParametricRun run_parametric(const Schema& schema, const std::vector<Assignment>& gs,
                             const OpennessPolicy& policy = OpennessPolicy::keep_ta());

} // namespace sg
