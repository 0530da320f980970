#include "entroq/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "entroq/errors.hpp"

namespace entroq {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_g12(v).c_str(), nullptr);
}

namespace {

nlohmann::json budgets_to_json(const Budgets& b) {
    return {{"rel_tol", round12(b.rel_tol)},
            {"max_evals", b.max_evals},
            {"qmc_samples", b.qmc_samples},
            {"qmc_replicates", b.qmc_replicates}};
}

}  // namespace

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const DeficitRecord& r : report.records) {
        records.push_back({{"inequality", to_string(r.inequality)},
                           {"function_id", r.function_id},
                           {"alpha", round12(r.alpha)},
                           {"deficit", round12(r.deficit)},
                           {"error_estimate", round12(r.error_estimate)},
                           {"passed", r.passed}});
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const SkippedRecord& s : report.skipped) {
        skipped.push_back({{"inequality", to_string(s.inequality)},
                           {"function_id", s.function_id},
                           {"alpha", round12(s.alpha)},
                           {"reason", s.reason}});
    }
    nlohmann::json weights = nlohmann::json::array();
    for (double w : report.weights) weights.push_back(round12(w));
    return {{"structure",
             {{"label", report.structure_label},
              {"weights", weights},
              {"q", round12(report.q)}}},
            {"norm", {{"label", report.norm_label}}},
            {"seed", report.seed},
            {"budgets", budgets_to_json(report.budgets)},
            {"timestamp", report.timestamp},
            {"records", records},
            {"skipped", skipped}};
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "inequality,function_id,alpha,deficit,error_estimate,passed\n";
    for (const DeficitRecord& r : report.records) {
        os << to_string(r.inequality) << ',' << r.function_id << ','
           << format_g12(r.alpha) << ',' << format_g12(r.deficit) << ','
           << format_g12(r.error_estimate) << ',' << (r.passed ? "true" : "false")
           << '\n';
    }
    return os.str();
}

namespace {

void expect_keys(const nlohmann::json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional, const std::string& where,
                 std::vector<std::string>& diags) {
    for (const std::string& k : required) {
        if (!j.contains(k)) diags.push_back(where + ": missing key '" + k + "'");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const bool known =
            std::find(required.begin(), required.end(), k) != required.end() ||
            std::find(optional.begin(), optional.end(), k) != optional.end();
        if (!known) diags.push_back(where + ": unknown key '" + k + "'");
    }
}

bool is_number(const nlohmann::json& j) { return j.is_number(); }

}  // namespace

std::vector<std::string> validate_report_json(const nlohmann::json& j) {
    std::vector<std::string> diags;
    if (!j.is_object()) {
        diags.push_back("report: expected a JSON object");
        return diags;
    }
    expect_keys(j, {"structure", "norm", "seed", "budgets", "timestamp", "records"},
                {"skipped"}, "report", diags);

    if (j.contains("structure")) {
        const auto& s = j["structure"];
        if (!s.is_object()) {
            diags.push_back("structure: expected an object");
        } else {
            expect_keys(s, {"label", "weights", "q"}, {}, "structure", diags);
            if (s.contains("weights") && !s["weights"].is_array())
                diags.push_back("structure.weights: expected an array");
            if (s.contains("q") && !is_number(s["q"]))
                diags.push_back("structure.q: expected a number");
        }
    }
    if (j.contains("norm")) {
        const auto& n = j["norm"];
        if (!n.is_object()) {
            diags.push_back("norm: expected an object");
        } else {
            expect_keys(n, {"label"}, {}, "norm", diags);
        }
    }
    if (j.contains("seed") && !j["seed"].is_number_unsigned() &&
        !j["seed"].is_number_integer()) {
        diags.push_back("seed: expected an integer");
    }
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        if (!b.is_object()) {
            diags.push_back("budgets: expected an object");
        } else {
            expect_keys(b, {"rel_tol", "max_evals", "qmc_samples", "qmc_replicates"},
                        {}, "budgets", diags);
        }
    }
    if (j.contains("timestamp") && !j["timestamp"].is_string()) {
        diags.push_back("timestamp: expected a string");
    }
    if (j.contains("records")) {
        const auto& records = j["records"];
        if (!records.is_array()) {
            diags.push_back("records: expected an array");
        } else {
            int i = 0;
            for (const auto& r : records) {
                const std::string where = "records[" + std::to_string(i++) + "]";
                if (!r.is_object()) {
                    diags.push_back(where + ": expected an object");
                    continue;
                }
                expect_keys(r,
                            {"inequality", "function_id", "alpha", "deficit",
                             "error_estimate", "passed"},
                            {}, where, diags);
                if (r.contains("inequality")) {
                    try {
                        inequality_from_string(r["inequality"].get<std::string>());
                    } catch (const std::exception&) {
                        diags.push_back(where + ": bad inequality name");
                    }
                }
                for (const char* k : {"alpha", "deficit", "error_estimate"}) {
                    if (r.contains(k) && !is_number(r[k]))
                        diags.push_back(where + "." + k + ": expected a number");
                }
                if (r.contains("passed") && !r["passed"].is_boolean())
                    diags.push_back(where + ".passed: expected a boolean");
                if (r.contains("passed") && r.contains("deficit") &&
                    r.contains("error_estimate") && is_number(r["deficit"]) &&
                    is_number(r["error_estimate"])) {
                    const bool expect = r["deficit"].get<double>() >=
                                        -3.0 * r["error_estimate"].get<double>();
                    if (r["passed"].get<bool>() != expect)
                        diags.push_back(where + ".passed: inconsistent with deficit");
                }
            }
        }
    }
    if (j.contains("skipped")) {
        const auto& skipped = j["skipped"];
        if (!skipped.is_array()) {
            diags.push_back("skipped: expected an array");
        } else {
            int i = 0;
            for (const auto& s : skipped) {
                const std::string where = "skipped[" + std::to_string(i++) + "]";
                if (!s.is_object()) {
                    diags.push_back(where + ": expected an object");
                    continue;
                }
                expect_keys(s, {"inequality", "function_id", "alpha", "reason"}, {},
                            where, diags);
            }
        }
    }
    return diags;
}

VerificationReport report_from_json(const nlohmann::json& j) {
    const std::vector<std::string> diags = validate_report_json(j);
    if (!diags.empty()) {
        std::ostringstream os;
        os << "invalid report JSON:";
        for (const std::string& d : diags) os << "\n  " << d;
        throw ConfigError(os.str());
    }
    VerificationReport report;
    report.structure_label = j["structure"]["label"].get<std::string>();
    report.weights = j["structure"]["weights"].get<std::vector<double>>();
    report.q = j["structure"]["q"].get<double>();
    report.norm_label = j["norm"]["label"].get<std::string>();
    report.seed = j["seed"].get<std::uint64_t>();
    report.budgets.rel_tol = j["budgets"]["rel_tol"].get<double>();
    report.budgets.max_evals = j["budgets"]["max_evals"].get<long>();
    report.budgets.qmc_samples = j["budgets"]["qmc_samples"].get<long>();
    report.budgets.qmc_replicates = j["budgets"]["qmc_replicates"].get<int>();
    report.budgets.seed = report.seed;
    report.timestamp = j["timestamp"].get<std::string>();
    for (const auto& r : j["records"]) {
        report.records.push_back(
            {inequality_from_string(r["inequality"].get<std::string>()),
             r["function_id"].get<std::string>(), r["alpha"].get<double>(),
             r["deficit"].get<double>(), r["error_estimate"].get<double>(),
             r["passed"].get<bool>()});
    }
    if (j.contains("skipped")) {
        for (const auto& s : j["skipped"]) {
            report.skipped.push_back(
                {inequality_from_string(s["inequality"].get<std::string>()),
                 s["function_id"].get<std::string>(), s["alpha"].get<double>(),
                 s["reason"].get<std::string>()});
        }
    }
    return report;
}

}  // namespace entroq
