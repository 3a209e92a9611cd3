#pragma once

#include "sg/analyze.hpp"
#include "sg/parametric.hpp"
#include "sg/shape.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sg {

// One row per shape: the shape drawn greyed out under each of its open
// parts, one cell per open, in canonical order. Annotations are dashed
// guide lines drawn beneath every cell of their row.
struct RenderSheet {
    struct Row {
        std::string title;
        Shape shape;
        std::vector<Shape> opens;
        std::vector<std::pair<Point, Point>> annotations;
    };
    std::vector<Row> rows;
    double cell = 120;  // cell edge in pixels
    double stroke = 2;  // stroke width for open parts
};

// Rows S1..Sn+1 of an analysis: every cell pairs the shape with one open of
// its reported topology.
RenderSheet sheet_from_report(const Trace& trace, const AnalysisReport& report);

// The same rows with the schema's links as annotations; the links never
// enter the computation.
RenderSheet sheet_from_parametric(const Schema& schema, const Trace& trace,
                                  const AnalysisReport& report);

// Deterministic standalone SVG: fixed element order and fixed 4-decimal
// coordinate formatting. Decimals are display-only; computation stays
// rational throughout.
std::string render_svg(const RenderSheet& sheet);

} // namespace sg
