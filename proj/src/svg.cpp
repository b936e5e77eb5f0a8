#include "horncrit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace horncrit {

namespace {
const char* kColors[] = {"#2266cc", "#cc4422", "#22aa66", "#aa22aa", "#888822", "#22aaaa"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}
}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, bool log_x) {
    const double W = 800, Hh = 600;
    const double ml = 80, mr = 30, mt = 50, mb = 60;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            const double e = i < s.yerr.size() ? s.yerr[i] : 0.0;
            ymin = std::min(ymin, s.y[i] - e);
            ymax = std::max(ymax, s.y[i] + e);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return Hh - mb - (y - ymin) / (ymax - ymin) * (Hh - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" << title
       << "</text>\n";
    os << "<text x=\"400\" y=\"585\" text-anchor=\"middle\" font-size=\"14\">" << x_label
       << (log_x ? " (log scale)" : "") << "</text>\n";
    os << "<text x=\"20\" y=\"300\" text-anchor=\"middle\" font-size=\"14\" "
          "transform=\"rotate(-90 20 300)\">"
       << y_label << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
       << Hh - mt - mb << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double gx = xmin + (xmax - xmin) * i / 5.0;
        const double gy = ymin + (ymax - ymin) * i / 5.0;
        const double sx = ml + (W - ml - mr) * i / 5.0;
        const double sy = Hh - mb - (Hh - mt - mb) * i / 5.0;
        os << "<line x1=\"" << sx << "\" y1=\"" << Hh - mb << "\" x2=\"" << sx << "\" y2=\""
           << Hh - mb + 5 << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << sx << "\" y=\"" << Hh - mb + 20
           << "\" text-anchor=\"middle\" font-size=\"11\">"
           << fmt(log_x ? std::pow(10.0, gx) : gx) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy << "\" x2=\"" << ml << "\" y2=\"" << sy
           << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << sy + 4
           << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(gy) << "</text>\n";
    }

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kColors[ci % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
               << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            if (i < s.yerr.size() && s.yerr[i] > 0.0) {
                const double x = px(s.x[i]);
                os << "<line x1=\"" << x << "\" y1=\"" << py(s.y[i] - s.yerr[i]) << "\" x2=\"" << x
                   << "\" y2=\"" << py(s.y[i] + s.yerr[i]) << "\" stroke=\"" << color
                   << "\" stroke-width=\"1.5\"/>\n";
            }
        }
        if (!s.name.empty()) {
            os << "<text x=\"" << W - mr - 10 << "\" y=\"" << mt + 18 + 16 * ci
               << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.name
               << "</text>\n";
        }
        ++ci;
    }
    os << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << os.str();
}

}  // namespace horncrit
