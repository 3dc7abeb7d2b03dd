#include "sklab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sklab {

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_svg_loglog(std::ostream& out, const std::vector<pb::DecayCurve>& curves, int width,
                      int height) {
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const auto& c : curves)
        for (const auto& [g, v] : c.samples) {
            if (!(g > 0) || !(v > 0)) throw std::invalid_argument("svg plot needs positive samples");
            lx0 = std::min(lx0, std::log10(g));
            lx1 = std::max(lx1, std::log10(g));
            ly0 = std::min(ly0, std::log10(v));
            ly1 = std::max(ly1, std::log10(v));
        }
    if (lx1 <= lx0) lx1 = lx0 + 1;
    if (ly1 <= ly0) ly1 = ly0 + 1;
    const int margin = 40;
    auto px = [&](double lx) { return margin + (lx - lx0) / (lx1 - lx0) * (width - 2 * margin); };
    auto py = [&](double ly) { return height - margin - (ly - ly0) / (ly1 - ly0) * (height - 2 * margin); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* colors[] = {"#1f6feb", "#d1242f", "#1a7f37", "#8250df", "#bf8700"};
    for (size_t ci = 0; ci < curves.size(); ++ci) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 5] << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [g, v] : curves[ci].samples)
            out << px(std::log10(g)) << "," << py(std::log10(v)) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << margin + 4 << "\" y=\"" << margin + 14 + 16 * (int)ci << "\" fill=\""
            << colors[ci % 5] << "\" font-size=\"12\">" << curves[ci].label << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
        << "\" font-size=\"11\" text-anchor=\"middle\">log10 g</text>\n";
    out << "</svg>\n";
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace sklab
