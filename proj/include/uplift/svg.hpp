#ifndef UPLIFT_SVG_HPP
#define UPLIFT_SVG_HPP

#include <cstdio>
#include <sstream>

#include "layout.hpp"

namespace uplift {

// Static arc diagram: spine left to right, one semicircular arc per edge
// above the spine, one stroke class per page. Output is byte-identical for
// identical inputs.
inline std::string render_arc_diagram(const Dag& g, const BookEmbedding& be) {
    for (EdgeId e = 0; e < g.m(); ++e)
        if (g.alive(e) && (e >= (int)be.page_of.size() || be.page_of[e] < 0))
            throw validation_error("render: embedding does not cover edge " +
                                   std::to_string(e));
    int n = (int)be.spine.seq.size();
    const int step = 60, margin = 50, baseline_pad = 40;
    int maxspan = 1;
    for (auto& e : g.edges)
        if (e.alive())
            maxspan = std::max(maxspan,
                               be.spine.pos[e.head] - be.spine.pos[e.tail]);
    int width = 2 * margin + step * std::max(n - 1, 0);
    int baseline = maxspan * step / 2 + baseline_pad;
    int height = baseline + 60;
    auto x_of = [&](int pos) { return margin + pos * step; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<style>\n"
        << ".spine{stroke:#444;stroke-width:1}\n"
        << ".vx{fill:#222}\n"
        << ".lbl{font:12px sans-serif;fill:#222;text-anchor:middle}\n";
    for (int p = 0; p < be.page_count(); ++p) {
        int hue = (p * 137) % 360;
        out << ".page" << p << "{stroke:hsl(" << hue
            << ",70%,40%);stroke-width:1.5;fill:none}\n";
    }
    out << "</style>\n";
    if (n > 1)
        out << "<line class=\"spine\" x1=\"" << x_of(0) << "\" y1=\""
            << baseline << "\" x2=\"" << x_of(n - 1) << "\" y2=\"" << baseline
            << "\"/>\n";
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!g.alive(e)) continue;
        int a = be.spine.pos[g.edges[e].tail], b = be.spine.pos[g.edges[e].head];
        double x1 = x_of(a), x2 = x_of(b), r = (x2 - x1) / 2.0;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "<path class=\"page%d\" d=\"M %.1f %d A %.1f %.1f 0 0 1 "
                      "%.1f %d\"/>\n",
                      be.page_of[e], x1, baseline, r, r, x2, baseline);
        out << buf;
    }
    for (int i = 0; i < n; ++i) {
        out << "<circle class=\"vx\" cx=\"" << x_of(i) << "\" cy=\"" << baseline
            << "\" r=\"3\"/>\n";
        out << "<text class=\"lbl\" x=\"" << x_of(i) << "\" y=\""
            << baseline + 20 << "\">" << g.names[be.spine.seq[i]]
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace uplift

#endif
