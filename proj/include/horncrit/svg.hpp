#pragma once

#include <string>
#include <vector>

namespace horncrit {

struct SvgSeries {
    std::string name;
    std::vector<double> x, y, yerr;  // yerr may be empty
};

// Single-metric line chart with optional error bars, fixed 800x600 viewBox.
// log_x switches the abscissa to log10.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, bool log_x = false);

}  // namespace horncrit
