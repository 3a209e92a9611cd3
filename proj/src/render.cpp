#include "sg/render.hpp"

#include "sg/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sg {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000"; // stable across platforms
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct Box {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool any = false;

    void add(const Point& p) {
        double x = p.x.get_d(), y = p.y.get_d();
        if (!any) {
            minx = maxx = x;
            miny = maxy = y;
            any = true;
            return;
        }
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }

    void add(const Shape& s) {
        if (s.kind() == Kind::segments) {
            for (const auto& seg : s.segments()) {
                add(seg.a);
                add(seg.b);
            }
        } else {
            for (const auto& p : s.points()) add(p.pos);
        }
    }
};

// One uniform world-to-cell mapping shared by every cell, so equal shapes
// render identically everywhere on the sheet.
struct Mapper {
    Box box;
    double scale, xoff, yoff;

    Mapper(const Box& b, double cell) : box(b) {
        double pad = cell * 0.12;
        double usable = cell - 2 * pad;
        double w = box.any ? box.maxx - box.minx : 0;
        double h = box.any ? box.maxy - box.miny : 0;
        double extent = std::max({w, h, 1.0});
        scale = usable / extent;
        xoff = pad + (usable - w * scale) / 2;
        yoff = pad + (usable - h * scale) / 2;
    }

    double px(const Rat& x) const { return xoff + (x.get_d() - box.minx) * scale; }
    double py(const Rat& y) const { return yoff + (box.maxy - y.get_d()) * scale; }
};

void draw(std::ostringstream& os, const Shape& s, const Mapper& m, const char* color,
          double stroke, bool with_labels) {
    if (s.kind() == Kind::segments) {
        for (const auto& seg : s.segments())
            os << "<line x1=\"" << fmt(m.px(seg.a.x)) << "\" y1=\"" << fmt(m.py(seg.a.y))
               << "\" x2=\"" << fmt(m.px(seg.b.x)) << "\" y2=\"" << fmt(m.py(seg.b.y))
               << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(stroke)
               << "\" stroke-linecap=\"round\"/>\n";
        return;
    }
    for (const auto& p : s.points()) {
        os << "<circle cx=\"" << fmt(m.px(p.pos.x)) << "\" cy=\"" << fmt(m.py(p.pos.y))
           << "\" r=\"" << fmt(stroke * 1.8) << "\" fill=\"" << color << "\"/>\n";
        if (with_labels && !p.label.empty())
            os << "<text x=\"" << fmt(m.px(p.pos.x)) << "\" y=\""
               << fmt(m.py(p.pos.y) - stroke * 3)
               << "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\""
               << " fill=\"" << color << "\">" << xml_escape(p.label) << "</text>\n";
    }
}

} // namespace

RenderSheet sheet_from_report(const Trace& trace, const AnalysisReport& report) {
    if (report.shapes.size() != trace.shapes().size())
        throw InputError("report does not belong to the trace");
    RenderSheet sheet;
    for (std::size_t i = 0; i < report.shapes.size(); ++i)
        sheet.rows.push_back({"S" + std::to_string(i + 1), trace.shapes()[i],
                              report.shapes[i].topology.opens(), {}});
    return sheet;
}

RenderSheet sheet_from_parametric(const Schema& schema, const Trace& trace,
                                  const AnalysisReport& report) {
    RenderSheet sheet = sheet_from_report(trace, report);
    for (auto& row : sheet.rows) {
        for (const auto& [from, to] : schema.links) {
            const Point* a = nullptr;
            const Point* b = nullptr;
            for (const auto& p : row.shape.points()) {
                if (p.label == from) a = &p.pos;
                if (p.label == to) b = &p.pos;
            }
            if (a && b) row.annotations.push_back({*a, *b});
        }
    }
    return sheet;
}

std::string render_svg(const RenderSheet& sheet) {
    Box box;
    for (const auto& r : sheet.rows) box.add(r.shape);
    Mapper m(box, sheet.cell);
    std::size_t cols = 1;
    for (const auto& r : sheet.rows) cols = std::max(cols, r.opens.size());
    const double gap = 8, gutter = 64;
    double width = gutter + static_cast<double>(cols) * (sheet.cell + gap) + gap;
    double height = static_cast<double>(sheet.rows.size()) * (sheet.cell + gap) + gap;
    if (sheet.rows.empty()) height = 2 * gap;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
       << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " "
       << fmt(height) << "\">\n";
    os << "<rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" fill=\"#ffffff\"/>\n";
    for (std::size_t ri = 0; ri < sheet.rows.size(); ++ri) {
        const auto& row = sheet.rows[ri];
        double y0 = gap + static_cast<double>(ri) * (sheet.cell + gap);
        os << "<text x=\"8\" y=\"" << fmt(y0 + sheet.cell / 2)
           << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">"
           << xml_escape(row.title) << "</text>\n";
        for (std::size_t ci = 0; ci < row.opens.size(); ++ci) {
            double x0 = gutter + static_cast<double>(ci) * (sheet.cell + gap);
            os << "<g transform=\"translate(" << fmt(x0) << "," << fmt(y0) << ")\">\n";
            os << "<rect width=\"" << fmt(sheet.cell) << "\" height=\""
               << fmt(sheet.cell) << "\" fill=\"none\" stroke=\"#e0e0e0\"/>\n";
            for (const auto& [a, b] : row.annotations)
                os << "<line x1=\"" << fmt(m.px(a.x)) << "\" y1=\"" << fmt(m.py(a.y))
                   << "\" x2=\"" << fmt(m.px(b.x)) << "\" y2=\"" << fmt(m.py(b.y))
                   << "\" stroke=\"#bbbbbb\" stroke-width=\"1.0000\""
                   << " stroke-dasharray=\"4 3\"/>\n";
            draw(os, row.shape, m, "#c8c8c8", sheet.stroke, false);
            draw(os, row.opens[ci], m, "#1a1a1a", sheet.stroke, true);
            os << "</g>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace sg
