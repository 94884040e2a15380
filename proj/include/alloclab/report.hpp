#pragma once

#include "alloclab/rational.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace alloclab {

// One checked (or informational) quantity. Pass/fail is always decided on
// exact values before the decimal column is rendered.
struct ReportRow {
    std::string experiment;  // subcommand id
    std::string params;      // "key=value;key=value" snapshot
    std::string quantity;    // which value this row reports
    std::string exact;       // "num/den", may be empty for non-rational rows
    std::string decimal;     // 15 significant digits, display only
    std::string bound;       // bound id from the constants registry, or "informational"
    std::string status;      // "pass" | "fail" | "info"
};

class ReportWriter {
public:
    void add(ReportRow row);
    void add_check(const std::string& experiment, const std::string& params,
                   const std::string& quantity, const Rational& value, const std::string& bound,
                   bool pass);
    void add_info(const std::string& experiment, const std::string& params,
                  const std::string& quantity, const Rational& value);
    void add_flag(const std::string& experiment, const std::string& params,
                  const std::string& quantity, bool value, const std::string& bound, bool pass);

    bool all_passed() const;
    const std::vector<ReportRow>& rows() const { return rows_; }

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    // Writes report.csv and report.json into out_dir.
    void save(const std::filesystem::path& out_dir) const;

private:
    std::vector<ReportRow> rows_;
};

}  // namespace alloclab
