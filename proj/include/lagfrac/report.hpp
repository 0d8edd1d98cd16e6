#ifndef LAGFRAC_REPORT_HPP
#define LAGFRAC_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace lagfrac {

// formats a double with 17 significant digits (shortest round-trip form)
std::string format_g17(double v);

struct StabilityRecord {
    std::string what; // e.g. "truncation x2", "grid x2", "quadrature x2"
    double before = 0.0;
    double after = 0.0;
    double drift = 0.0; // |after-before| / max(|before|, floor)
};

// Structured outcome of one verification experiment.  Deterministic given
// (config, seed) except for the wall-time field, which to_json can zero out
// for byte-comparison purposes.
struct VerificationReport {
    std::map<std::string, std::string> config; // includes "theorem"
    std::vector<double> ratios;                // per-sample statistics
    double sup_ratio = 0.0;
    std::string attaining;                     // sample / abscissa attaining the sup
    std::vector<StabilityRecord> stability;
    std::vector<std::string> notes;
    bool pass = false;
    double seconds = 0.0;

    std::string to_json(bool include_seconds = true) const;
};

// CSV with a header row, comma separators, 17 significant digits
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// minimal SVG line chart (one polyline per series), no plotting dependency
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::vector<double>& xs,
                     const std::vector<std::vector<double>>& series,
                     const std::vector<std::string>& labels, bool log_x = false,
                     bool log_y = false);

} // namespace lagfrac

#endif
