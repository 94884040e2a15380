#include "alloclab/report.hpp"

#include <json.hpp>

#include <fstream>

namespace alloclab {

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void ReportWriter::add(ReportRow row) { rows_.push_back(std::move(row)); }

void ReportWriter::add_check(const std::string& experiment, const std::string& params,
                             const std::string& quantity, const Rational& value,
                             const std::string& bound, bool pass) {
    rows_.push_back(ReportRow{experiment, params, quantity, fraction_string(value),
                              decimal_string(value), bound, pass ? "pass" : "fail"});
}

void ReportWriter::add_info(const std::string& experiment, const std::string& params,
                            const std::string& quantity, const Rational& value) {
    rows_.push_back(ReportRow{experiment, params, quantity, fraction_string(value),
                              decimal_string(value), "informational", "info"});
}

void ReportWriter::add_flag(const std::string& experiment, const std::string& params,
                            const std::string& quantity, bool value, const std::string& bound,
                            bool pass) {
    rows_.push_back(ReportRow{experiment, params, quantity, value ? "true" : "false", "", bound,
                              pass ? "pass" : "fail"});
}

bool ReportWriter::all_passed() const {
    for (const auto& row : rows_)
        if (row.status == "fail") return false;
    return true;
}

void ReportWriter::write_csv(std::ostream& os) const {
    os << "experiment,params,quantity,exact,decimal,bound,status\n";
    for (const auto& row : rows_) {
        os << csv_escape(row.experiment) << ',' << csv_escape(row.params) << ','
           << csv_escape(row.quantity) << ',' << csv_escape(row.exact) << ','
           << csv_escape(row.decimal) << ',' << csv_escape(row.bound) << ','
           << csv_escape(row.status) << '\n';
    }
}

void ReportWriter::write_json(std::ostream& os) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows_) {
        arr.push_back({{"experiment", row.experiment},
                       {"params", row.params},
                       {"quantity", row.quantity},
                       {"exact", row.exact},
                       {"decimal", row.decimal},
                       {"bound", row.bound},
                       {"status", row.status}});
    }
    os << arr.dump(2) << '\n';
}

void ReportWriter::save(const std::filesystem::path& out_dir) const {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir / "report.csv", std::ios::binary);
        write_csv(csv);
    }
    {
        std::ofstream json(out_dir / "report.json", std::ios::binary);
        write_json(json);
    }
}

}  // namespace alloclab
