#pragma once

#include "sg/analyze.hpp"
#include "sg/parametric.hpp"
#include "sg/shape.hpp"
#include "sg/topology.hpp"
#include "sg/transform.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sg {

// Canonical text form of a shape:
//   u1{ x0 y0 x1 y1  x0 y0 x1 y1 }   segments, endpoint quadruples
//   u0{ x y  x y:label }             points, optional :label suffix on y
// Rationals print as n or n/d. Elements appear in canonical order and are
// separated by two spaces; the empty shapes print as u1{} and u0{}.
std::string shape_literal(const Shape& s);

// Inverse of shape_literal. Whitespace between tokens is free; structure
// is strict. Errors carry position and expected-token diagnostics.
Shape parse_shape_literal(std::string_view text);

// Transform sextuple "a b c d e f" for (x, y) -> (a x + b y + e, c x + d y + f).
std::string transform_sextuple(const Transform& t);
Transform parse_transform_sextuple(std::string_view text);

// A computation as stored on disk. Layout:
//   trace v1 u1
//   initial <shape>
//   step
//   lhs <shape>
//   rhs <shape>
//   transform <sextuple>
//   mapping <formula or catalog id>
//   determinate 0|1
//   end
//   policy ta|ta+complement            (optional)
//   final-topology ... open <shape> ... end   (optional)
// Catalog ids in mappings are resolved at parse time; emission always
// writes the formula text, and open lists are kept sorted, so a document
// reserializes byte-identically once it has passed through parse.
struct TraceDocument {
    Kind kind = Kind::segments;
    Shape initial;
    std::vector<TraceStep> steps;
    std::optional<PolicyKind> policy; // named policies only
    bool has_final_topology = false;
    std::vector<Shape> final_opens;

    // Replays and validates the steps.
    Trace to_trace() const { return Trace(initial, steps); }
    // The listed final opens as a topology on the given universe.
    std::optional<Topology> final_topology(const Shape& universe) const;
};

TraceDocument parse_trace(std::string_view text, const std::string& name = "");
std::string emit_trace(const TraceDocument& doc);

// Topologies file: `topologies v1`, then per topology a block
//   topology
//   universe <shape>
//   open|basis <shape>
//   ...
//   end
// Emission flags the sum-irreducible opens as `basis`; parsing treats both
// words alike and closes the listed parts under sum and product.
std::vector<Topology> parse_topologies(std::string_view text, const std::string& name = "");
std::string emit_topologies(const std::vector<Topology>& ts);

// Policy file: `policy v1 ta`, `policy v1 ta+complement`, or
//   policy v1 explicit
//   step 1
//   part <shape>
//   ...
//   end
//   ...
// with one block per step, in order.
OpennessPolicy parse_policy(std::string_view text, const std::string& name = "");
std::string emit_policy(const OpennessPolicy& policy);

// Schema file: `schema v1`, then
//   fixed <x> <y>:<label>
//   anchor <label>
//   term <name> at <x> <y> axis=h|v range=[<lo>,<hi>]
//   mirror <left> <right> about <term>
//   link <name> <name>
// Declaration order is preserved; the parsed schema is validated.
Schema parse_schema(std::string_view text, const std::string& name = "");
std::string emit_schema(const Schema& schema);

// Assignments file: `assignments v1`, then one `assign p=1/2 q=2 ...` line
// per step. Omitted terms are filled in: mirror partners derive from their
// pair, everything else carries over from the previous step (the declared
// positions at the start). Every completed line is validated against the
// schema. Emission lists every term.
std::vector<Assignment> parse_assignments(std::string_view text, const Schema& schema,
                                          const std::string& name = "");
std::string emit_assignments(const Schema& schema, const std::vector<Assignment>& gs);

// Human-readable analysis report: one line per open with its provenance,
// one line per step with its violations.
std::string report_text(const Trace& trace, const AnalysisReport& report);

// The same data as a JSON document with stable key order.
std::string report_json(const Trace& trace, const AnalysisReport& report);

} // namespace sg
