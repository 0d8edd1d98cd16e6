#include "lagfrac/report.hpp"
#include "lagfrac/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace lagfrac {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string VerificationReport::to_json(bool include_seconds) const {
    nlohmann::json j;
    j["config"] = config;
    j["sup_ratio"] = sup_ratio;
    j["attaining"] = attaining;
    nlohmann::json st;
    st["records"] = nlohmann::json::array();
    for (const StabilityRecord& r : stability)
        st["records"].push_back({{"what", r.what},
                                 {"before", r.before},
                                 {"after", r.after},
                                 {"drift", r.drift}});
    st["notes"] = notes;
    j["stability"] = st;
    j["pass"] = pass;
    j["seconds"] = include_seconds ? seconds : 0.0;
    return j.dump(2);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConvergenceError("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_g17(row[i]);
        out << "\n";
    }
}

namespace {

double axis_map(double v, double lo, double hi, double plo, double phi) {
    if (hi <= lo) return 0.5 * (plo + phi);
    return plo + (v - lo) / (hi - lo) * (phi - plo);
}

} // namespace

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<double>& xs,
                     const std::vector<std::vector<double>>& series,
                     const std::vector<std::string>& labels, bool log_x, bool log_y) {
    std::ofstream out(path);
    if (!out) throw ConvergenceError("write_svg_lines: cannot open " + path);
    const int W = 720, H = 440, ML = 60, MR = 20, MT = 40, MB = 40;
    const auto tx = [&](double v) { return log_x ? std::log10(std::max(v, 1e-300)) : v; };
    const auto ty = [&](double v) { return log_y ? std::log10(std::max(std::fabs(v), 1e-300)) : v; };

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (double x : xs) {
        xlo = std::min(xlo, tx(x));
        xhi = std::max(xhi, tx(x));
    }
    for (const auto& s : series)
        for (double v : s) {
            if (!std::isfinite(ty(v))) continue;
            ylo = std::min(ylo, ty(v));
            yhi = std::max(yhi, ty(v));
        }
    if (ylo > yhi) { ylo = 0.0; yhi = 1.0; }

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR
        << "\" height=\"" << H - MT - MB << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size() && i < series[s].size(); ++i) {
            const double px = axis_map(tx(xs[i]), xlo, xhi, ML, W - MR);
            const double py = axis_map(ty(series[s][i]), ylo, yhi, H - MB, MT);
            out << px << "," << py << " ";
        }
        out << "\"/>\n";
        if (s < labels.size())
            out << "<text x=\"" << ML + 8 << "\" y=\"" << MT + 16 + 16 * s
                << "\" font-size=\"12\" fill=\"" << colors[s % 6] << "\">" << labels[s]
                << "</text>\n";
    }
    // axis range annotations
    out << "<text x=\"" << ML << "\" y=\"" << H - 12 << "\" font-size=\"11\">"
        << (log_x ? "log10 x: " : "x: ") << xlo << " .. " << xhi << "</text>\n";
    out << "<text x=\"" << W - MR << "\" y=\"" << H - 12
        << "\" text-anchor=\"end\" font-size=\"11\">" << (log_y ? "log10 y: " : "y: ") << ylo
        << " .. " << yhi << "</text>\n";
    out << "</svg>\n";
}

} // namespace lagfrac
