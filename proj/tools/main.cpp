// entroq: sharp entropy-inequality constants, sphere measures, and
// verification suites on anisotropic dilation structures.
//
// Subcommands: constants | sphere | verify | scan. Exit status: 0 on success
// (for `verify`: all records passed), 1 when verification records fail,
// 2 on configuration errors, 3 on integration budget exhaustion (a partial
// report is still written).
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entroq/constants.hpp"
#include "entroq/errors.hpp"
#include "entroq/library.hpp"
#include "entroq/report_io.hpp"
#include "entroq/verify.hpp"

namespace {

using nlohmann::json;
using namespace entroq;

constexpr int kExitFailedRecords = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct CliConfig {
    std::string preset;
    std::vector<double> weights;
    std::string norm;  // "p:<val>" | "max" | "koranyi"
    std::vector<double> alphas;
    std::vector<std::string> functions;
    std::vector<std::string> inequalities;
    long samples = 262144;
    double rel_tol = 1e-10;
    long max_evals = 1'000'000;
    int replicates = 16;
    std::uint64_t seed = 0x243f6a8885a308d3ULL;
    std::string format;  // default depends on the subcommand
    std::string out;
    std::string constant_override;
};

void load_config_file(const std::string& path, CliConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        try {
            if (k == "preset") cfg.preset = v.get<std::string>();
            else if (k == "weights") cfg.weights = v.get<std::vector<double>>();
            else if (k == "norm") cfg.norm = v.get<std::string>();
            else if (k == "alphas") cfg.alphas = v.get<std::vector<double>>();
            else if (k == "functions") cfg.functions = v.get<std::vector<std::string>>();
            else if (k == "inequalities") cfg.inequalities = v.get<std::vector<std::string>>();
            else if (k == "samples") cfg.samples = v.get<long>();
            else if (k == "rel_tol") cfg.rel_tol = v.get<double>();
            else if (k == "max_evals") cfg.max_evals = v.get<long>();
            else if (k == "replicates") cfg.replicates = v.get<int>();
            else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (k == "format") cfg.format = v.get<std::string>();
            else if (k == "out") cfg.out = v.get<std::string>();
            else throw ConfigError("config file: unknown key '" + k + "'");
        } catch (const json::exception& e) {
            throw ConfigError("config file: bad value for '" + k + "': " + e.what());
        }
    }
}

std::vector<double> parse_weight_list(const std::string& text) {
    std::vector<double> weights;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            weights.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad weight '" + item + "'");
        }
    }
    return weights;
}

// preset -> (weights, default norm spec)
std::pair<std::vector<double>, std::string> expand_preset(const std::string& preset) {
    if (preset == "heisenberg") {
        return {{1.0, 1.0, 2.0}, "koranyi"};
    }
    const auto colon = preset.find(':');
    const std::string head = preset.substr(0, colon);
    if (head == "abelian") {
        if (colon == std::string::npos) throw ConfigError("preset abelian:<N> needs N");
        int n = 0;
        try {
            n = std::stoi(preset.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad preset '" + preset + "'");
        }
        if (n < 1) throw ConfigError("preset abelian:<N> needs N >= 1");
        return {std::vector<double>(n, 1.0), "p:2"};
    }
    if (head == "anisotropic") {
        if (colon == std::string::npos) {
            throw ConfigError("preset anisotropic:<w1,w2,...> needs weights");
        }
        return {parse_weight_list(preset.substr(colon + 1)), ""};
    }
    throw ConfigError("unknown preset '" + preset + "'");
}

QuasiNorm build_norm(const CliConfig& cfg) {
    if (!cfg.preset.empty() && !cfg.weights.empty()) {
        throw ConfigError("give either --preset or --weights, not both");
    }
    std::vector<double> weights;
    std::string default_norm;
    if (!cfg.preset.empty()) {
        std::tie(weights, default_norm) = expand_preset(cfg.preset);
    } else if (!cfg.weights.empty()) {
        weights = cfg.weights;
        default_norm = "";
    } else {
        // default structure: the line with the euclidean norm
        weights = {1.0};
        default_norm = "p:2";
    }
    DilationStructure s(std::move(weights));

    const std::string spec = cfg.norm.empty() ? default_norm : cfg.norm;
    if (spec.empty()) return QuasiNorm::weighted_p(std::move(s));
    if (spec == "max") return QuasiNorm::max_norm(std::move(s));
    if (spec == "koranyi") return QuasiNorm::koranyi(std::move(s));
    if (spec.rfind("p:", 0) == 0) {
        double p = 0.0;
        try {
            size_t used = 0;
            p = std::stod(spec.substr(2), &used);
            if (used != spec.size() - 2) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad norm spec '" + spec + "'");
        }
        return QuasiNorm::weighted_p(std::move(s), p);
    }
    throw ConfigError("bad norm spec '" + spec + "' (expected p:<val>, max, koranyi)");
}

Budgets build_budgets(const CliConfig& cfg) {
    Budgets b;
    b.rel_tol = cfg.rel_tol;
    b.max_evals = cfg.max_evals;
    b.qmc_samples = cfg.samples;
    b.qmc_replicates = cfg.replicates;
    b.seed = cfg.seed;
    return b;
}

std::vector<Inequality> build_inequalities(const CliConfig& cfg) {
    if (cfg.inequalities.empty()) {
        return {Inequality::Shannon, Inequality::ShannonViaB, Inequality::KOS};
    }
    std::vector<Inequality> out;
    for (const std::string& s : cfg.inequalities) out.push_back(inequality_from_string(s));
    return out;
}

std::vector<double> default_alphas(const std::vector<Inequality>& ineqs) {
    const bool shannon_only =
        ineqs.size() == 1 && ineqs[0] == Inequality::Shannon;
    if (shannon_only) return {0.5, 1.0, 1.5, 2.0, 3.0};
    return {1.5, 2.0, 3.0};
}

ConstantOverrides parse_override(const std::string& text) {
    ConstantOverrides ov;
    if (text.empty()) return ov;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--constant-override expects NAME=VALUE, e.g. A=1.0");
    }
    const std::string name = text.substr(0, eq);
    double value = 0.0;
    try {
        size_t used = 0;
        value = std::stod(text.substr(eq + 1), &used);
        if (used != text.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("--constant-override: bad value in '" + text + "'");
    }
    if (!(value > 0.0)) throw ConfigError("--constant-override: value must be positive");
    if (name == "A") ov.a = value;
    else if (name == "C") ov.c = value;
    else if (name == "B") ov.b = value;
    else throw ConfigError("--constant-override: unknown constant '" + name + "'");
    return ov;
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + out + "'");
    f << text;
}

std::string resolve_format(const CliConfig& cfg, const std::string& fallback) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv") {
        throw ConfigError("--format must be json or csv, got '" + f + "'");
    }
    return f;
}

// ---------------------------------------------------------------------------

int cmd_constants(const CliConfig& cfg) {
    const QuasiNorm qn = build_norm(cfg);
    const std::vector<double> alphas =
        cfg.alphas.empty() ? std::vector<double>{1.5, 2.0, 3.0} : cfg.alphas;
    const SphereMeasure sphere = resolve_sphere(qn, build_budgets(cfg).qmc());
    const std::string format = resolve_format(cfg, "csv");

    struct Row {
        double q, alpha, sphere, a;
        std::optional<double> c, b, ratio;
        double ae_a_over_q;
    };
    std::vector<Row> rows;
    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw ConfigError("alphas must be positive");
        const bool has_kos = alpha > 1.0;
        const SharpConstants k = has_kos ? kos_constant(qn, alpha, sphere)
                                         : shannon_constant(qn, alpha, sphere);
        Row row{};
        row.q = k.q;
        row.alpha = alpha;
        row.sphere = sphere.value;
        row.a = k.a();
        const double log_scale = std::log(alpha) + 1.0 + k.log_a - std::log(k.q);
        row.ae_a_over_q = std::exp(log_scale);
        if (has_kos) {
            row.c = *k.c();
            row.b = *k.b();
            row.ratio = std::exp(*k.log_b - log_scale);
        }
        rows.push_back(row);
    }

    std::ostringstream os;
    if (format == "csv") {
        os << "q,alpha,sphere,a,c,b,ae_a_over_q,ratio\n";
        for (const Row& r : rows) {
            os << format_g12(r.q) << ',' << format_g12(r.alpha) << ','
               << format_g12(r.sphere) << ',' << format_g12(r.a) << ','
               << (r.c ? format_g12(*r.c) : "") << ','
               << (r.b ? format_g12(*r.b) : "") << ',' << format_g12(r.ae_a_over_q)
               << ',' << (r.ratio ? format_g12(*r.ratio) : "") << '\n';
        }
    } else {
        json arr = json::array();
        for (const Row& r : rows) {
            json jr = {{"q", round12(r.q)},
                       {"alpha", round12(r.alpha)},
                       {"sphere", round12(r.sphere)},
                       {"a", round12(r.a)},
                       {"ae_a_over_q", round12(r.ae_a_over_q)}};
            jr["c"] = r.c ? json(round12(*r.c)) : json(nullptr);
            jr["b"] = r.b ? json(round12(*r.b)) : json(nullptr);
            jr["ratio"] = r.ratio ? json(round12(*r.ratio)) : json(nullptr);
            arr.push_back(jr);
        }
        os << arr.dump(2) << '\n';
    }
    write_output(os.str(), cfg.out);
    return 0;
}

int cmd_sphere(const CliConfig& cfg) {
    const QuasiNorm qn = build_norm(cfg);
    const QmcOptions opts = build_budgets(cfg).qmc();
    const std::string format = resolve_format(cfg, "json");

    std::optional<SphereMeasure> analytic;
    if (has_analytic_sphere(qn)) {
        analytic = sphere_measure(qn, SphereMethod::Analytic);
    }
    const SphereMeasure ball = sphere_measure(qn, SphereMethod::BallVolumeMc, opts);
    const SphereMeasure gauss = sphere_measure(qn, SphereMethod::GaussWeightMc, opts);

    // agreement: every pair within 3 sigma and 1% relative
    std::vector<SphereMeasure> all{ball, gauss};
    if (analytic) all.push_back(*analytic);
    double max_rel = 0.0, max_sigma = 0.0;
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = i + 1; j < all.size(); ++j) {
            const double diff = std::abs(all[i].value - all[j].value);
            const double ref = std::max(std::abs(all[i].value), std::abs(all[j].value));
            const double sigma = std::hypot(all[i].std_error, all[j].std_error);
            max_rel = std::max(max_rel, diff / ref);
            if (sigma > 0.0) max_sigma = std::max(max_sigma, diff / sigma);
        }
    }
    const bool agree = max_rel <= 0.01 && max_sigma <= 3.0;

    std::ostringstream os;
    if (format == "json") {
        json j = {{"structure", qn.structure().describe()},
                  {"norm", qn.describe()},
                  {"q", round12(qn.structure().q())},
                  {"ball_volume_mc",
                   {{"value", round12(ball.value)},
                    {"std_error", round12(ball.std_error)}}},
                  {"gauss_weight_mc",
                   {{"value", round12(gauss.value)},
                    {"std_error", round12(gauss.std_error)}}},
                  {"agreement",
                   {{"verdict", agree ? "agree" : "disagree"},
                    {"max_rel_discrepancy", round12(max_rel)},
                    {"max_sigma_distance", round12(max_sigma)}}}};
        j["analytic"] = analytic ? json({{"value", round12(analytic->value)},
                                         {"std_error", 0.0}})
                                 : json(nullptr);
        os << j.dump(2) << '\n';
    } else {
        os << "method,value,std_error\n";
        if (analytic) os << "analytic," << format_g12(analytic->value) << ",0\n";
        os << "ball_volume_mc," << format_g12(ball.value) << ','
           << format_g12(ball.std_error) << '\n';
        os << "gauss_weight_mc," << format_g12(gauss.value) << ','
           << format_g12(gauss.std_error) << '\n';
        os << "verdict," << (agree ? "agree" : "disagree") << ",\n";
    }
    write_output(os.str(), cfg.out);
    return 0;
}

SuiteConfig build_suite(const CliConfig& cfg) {
    SuiteConfig suite{build_norm(cfg)};
    suite.structure_label = cfg.preset.empty()
                                ? suite.norm.structure().describe()
                                : cfg.preset;
    suite.inequalities = build_inequalities(cfg);
    suite.alphas = cfg.alphas.empty() ? default_alphas(suite.inequalities) : cfg.alphas;
    suite.function_ids = cfg.functions.empty() ? library_ids() : cfg.functions;
    suite.budgets = build_budgets(cfg);
    suite.overrides = parse_override(cfg.constant_override);
    return suite;
}

std::string render_report(const VerificationReport& report, const std::string& format) {
    if (format == "csv") return report_to_csv(report);
    return report_to_json(report).dump(2) + "\n";
}

int cmd_verify(const CliConfig& cfg) {
    const SuiteConfig suite = build_suite(cfg);
    const std::string format = resolve_format(cfg, "json");
    VerificationReport report;
    try {
        report = run_suite(suite);
    } catch (const SuiteBudgetError& e) {
        std::cerr << "entroq verify: " << e.what() << " (partial report written)\n";
        write_output(render_report(e.partial(), format), cfg.out);
        return kExitBudget;
    }
    write_output(render_report(report, format), cfg.out);
    if (!report.all_passed()) {
        std::cerr << "entroq verify: failed records present\n";
        return kExitFailedRecords;
    }
    return 0;
}

int cmd_scan(const CliConfig& cfg) {
    const SuiteConfig suite = build_suite(cfg);
    if (suite.alphas.empty()) throw ConfigError("scan: alpha grid must not be empty");
    const std::string format = resolve_format(cfg, "csv");
    VerificationReport report;
    try {
        report = run_suite(suite);
    } catch (const SuiteBudgetError& e) {
        std::cerr << "entroq scan: " << e.what() << '\n';
        return kExitBudget;
    }

    std::ostringstream os;
    if (format == "csv") {
        os << "function_id,alpha,inequality,deficit,error_estimate\n";
        for (const DeficitRecord& r : report.records) {
            os << r.function_id << ',' << format_g12(r.alpha) << ','
               << to_string(r.inequality) << ',' << format_g12(r.deficit) << ','
               << format_g12(r.error_estimate) << '\n';
        }
    } else {
        json arr = json::array();
        for (const DeficitRecord& r : report.records) {
            arr.push_back({{"function_id", r.function_id},
                           {"alpha", round12(r.alpha)},
                           {"inequality", to_string(r.inequality)},
                           {"deficit", round12(r.deficit)},
                           {"error_estimate", round12(r.error_estimate)}});
        }
        os << arr.dump(2) << '\n';
    }
    write_output(os.str(), cfg.out);
    return 0;
}

// Shared flag set; tracks which options were actually given so they can
// override a config file.
struct Flags {
    std::string config_path;
    CliConfig values;
    CLI::Option* preset = nullptr;
    CLI::Option* weights = nullptr;
    CLI::Option* norm = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* functions = nullptr;
    CLI::Option* inequalities = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* rel_tol = nullptr;
    CLI::Option* max_evals = nullptr;
    CLI::Option* replicates = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* constant_override = nullptr;

    void attach(CLI::App* cmd, bool with_override) {
        cmd->add_option("--config", config_path, "JSON config file; flags override it");
        preset = cmd->add_option("--preset", values.preset,
                                 "abelian:<N> | heisenberg | anisotropic:<w1,w2,...>");
        weights = cmd->add_option("--weights", values.weights,
                                  "dilation weights (repeatable or comma-separated)")
                      ->delimiter(',');
        norm = cmd->add_option("--norm", values.norm, "p:<val> | max | koranyi");
        alpha = cmd->add_option("--alpha", values.alphas, "alpha value (repeatable)")
                    ->delimiter(',');
        functions = cmd->add_option("--functions", values.functions,
                                    "test function ids (repeatable or comma-separated)")
                        ->delimiter(',');
        inequalities =
            cmd->add_option("--inequalities", values.inequalities,
                            "Shannon | ShannonViaB | KOS (repeatable)")
                ->delimiter(',');
        samples = cmd->add_option("--samples", values.samples, "QMC sample budget");
        rel_tol = cmd->add_option("--rel-tol", values.rel_tol,
                                  "radial quadrature relative tolerance");
        max_evals = cmd->add_option("--max-evals", values.max_evals,
                                    "radial quadrature evaluation budget");
        replicates = cmd->add_option("--replicates", values.replicates,
                                     "QMC randomized replicates");
        seed = cmd->add_option("--seed", values.seed, "master RNG seed");
        format = cmd->add_option("--format", values.format, "json | csv");
        out = cmd->add_option("--out", values.out, "output path (default stdout)");
        if (with_override) {
            constant_override =
                cmd->add_option("--constant-override", values.constant_override,
                                "replace a constant, e.g. A=1.0 (unstable test hook)");
        }
    }

    CliConfig resolve() const {
        CliConfig cfg;
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (preset->count()) cfg.preset = values.preset;
        if (weights->count()) cfg.weights = values.weights;
        if (norm->count()) cfg.norm = values.norm;
        if (alpha->count()) cfg.alphas = values.alphas;
        if (functions->count()) cfg.functions = values.functions;
        if (inequalities->count()) cfg.inequalities = values.inequalities;
        if (samples->count()) cfg.samples = values.samples;
        if (rel_tol->count()) cfg.rel_tol = values.rel_tol;
        if (max_evals->count()) cfg.max_evals = values.max_evals;
        if (replicates->count()) cfg.replicates = values.replicates;
        if (seed->count()) cfg.seed = values.seed;
        if (format->count()) cfg.format = values.format;
        if (out->count()) cfg.out = values.out;
        if (constant_override && constant_override->count()) {
            cfg.constant_override = values.constant_override;
        }
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp entropy-inequality constants and verification on "
                 "anisotropic dilation structures"};
    app.require_subcommand(1);

    CLI::App* constants_cmd =
        app.add_subcommand("constants", "sharp constants table (A, C, B)");
    CLI::App* sphere_cmd =
        app.add_subcommand("sphere", "quasi-sphere measure |S| by all routes");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "deficit verification suite with report");
    CLI::App* scan_cmd =
        app.add_subcommand("scan", "long-form deficit dataset for plotting");

    Flags constants_flags, sphere_flags, verify_flags, scan_flags;
    constants_flags.attach(constants_cmd, false);
    sphere_flags.attach(sphere_cmd, false);
    verify_flags.attach(verify_cmd, true);
    scan_flags.attach(scan_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;  // keep --help at 0, usage errors at 2
    }

    try {
        if (constants_cmd->parsed()) return cmd_constants(constants_flags.resolve());
        if (sphere_cmd->parsed()) return cmd_sphere(sphere_flags.resolve());
        if (verify_cmd->parsed()) return cmd_verify(verify_flags.resolve());
        if (scan_cmd->parsed()) return cmd_scan(scan_flags.resolve());
    } catch (const ConfigError& e) {
        std::cerr << "entroq: " << e.what() << '\n';
        return kExitConfig;
    } catch (const BudgetError& e) {
        std::cerr << "entroq: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "entroq: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
