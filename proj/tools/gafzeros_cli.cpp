// Command-line front end: sweeps and single evaluations over the expected
// zero count of finitely dependent Gaussian power series, emitted as CSV or
// JSON. Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gafzeros/covariance.hpp"
#include "gafzeros/errors.hpp"
#include "gafzeros/expected_zeros.hpp"
#include "gafzeros/fit.hpp"
#include "gafzeros/io.hpp"
#include "gafzeros/montecarlo.hpp"
#include "gafzeros/puiseux.hpp"
#include "gafzeros/rootfind.hpp"

namespace {

using gafzeros::cplx;
using nlohmann::json;

std::string fmt(double v) { return gafzeros::format_g17(v); }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// Table assembled in memory; rendered as CSV or a JSON array at the end so
// a failure never leaves a partial file behind.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string render_csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(columns[i]);
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += csv_escape(row[i]);
            }
            out += '\n';
        }
        return out;
    }

    std::string render_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
                obj[columns[i]] = row[i];
            }
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
};

void write_output(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw gafzeros::DomainError("cannot open output file " + path);
        out << content;
        if (!out) throw gafzeros::DomainError("cannot write output file " + path);
    }
    std::filesystem::rename(tmp, target);
}

struct CovarianceFlags {
    std::vector<double> two_dependent;
    int binomial = 0;
    std::string gamma_json;
    std::string cov_file;
};

void add_covariance_flags(CLI::App* cmd, CovarianceFlags& flags) {
    auto* td = cmd->add_option("--two-dependent", flags.two_dependent,
                               "Real 2-dependent covariance gamma(1)=A gamma(2)=B")
                   ->expected(2)
                   ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto* bn = cmd->add_option("--binomial", flags.binomial,
                               "Binomial covariance family of order N")
                   ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto* gm = cmd->add_option("--gamma", flags.gamma_json,
                               "Covariance as JSON: [1, g1, ...] or [[re,im],...]")
                   ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto* cf = cmd->add_option("--cov-file", flags.cov_file,
                               "File with covariance JSON {\"gamma\": [...]}")
                   ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    td->excludes(bn)->excludes(gm)->excludes(cf);
    bn->excludes(gm)->excludes(cf);
    gm->excludes(cf);
}

gafzeros::Covariance build_covariance(const CovarianceFlags& flags,
                                      std::string* descriptor) {
    if (!flags.two_dependent.empty()) {
        const double a = flags.two_dependent[0];
        const double b = flags.two_dependent[1];
        if (descriptor)
            *descriptor = "two-dependent(" + fmt(a) + "," + fmt(b) + ")";
        return gafzeros::Covariance::two_dependent(a, b);
    }
    if (flags.binomial > 0) {
        if (descriptor)
            *descriptor = "binomial(" + std::to_string(flags.binomial) + ")";
        return gafzeros::Covariance::binomial(flags.binomial);
    }
    std::string text;
    if (!flags.gamma_json.empty()) {
        text = "{\"gamma\":" + flags.gamma_json + "}";
    } else if (!flags.cov_file.empty()) {
        std::ifstream in(flags.cov_file);
        if (!in)
            throw gafzeros::DomainError("cannot read covariance file "
                                        + flags.cov_file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw gafzeros::DomainError(
            "no covariance given: use --two-dependent, --binomial, --gamma or "
            "--cov-file");
    }
    gafzeros::Covariance cov = gafzeros::covariance_from_json(text);
    if (descriptor) *descriptor = "gamma(n=" + std::to_string(cov.order()) + ")";
    return cov;
}

// Radius grids: "linear:0.1,0.9,17" is uniform in r; "log1m:1e-2,1e-6,9" is
// uniform in log(1 - r^2), mapping x to r = sqrt(1 - x).
std::vector<double> parse_r_grid(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw gafzeros::DomainError(
            "radius grid must look like linear:lo,hi,count or log1m:x0,x1,count");
    const std::string kind = spec.substr(0, colon);
    double v0 = 0.0, v1 = 0.0;
    long count = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str() + colon + 1, "%lf,%lf,%ld%c", &v0, &v1, &count,
                    &extra) != 3)
        throw gafzeros::DomainError("malformed radius grid " + spec);
    if (count < 1 || count > 100000)
        throw gafzeros::DomainError("radius grid count out of range");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (kind == "linear") {
        for (long i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0
                                        : static_cast<double>(i)
                                              / static_cast<double>(count - 1);
            grid.push_back(v0 + (v1 - v0) * t);
        }
    } else if (kind == "log1m") {
        if (!(v0 > 0.0) || !(v1 > 0.0))
            throw gafzeros::DomainError("log1m grid endpoints must be positive");
        const double l0 = std::log(v0), l1 = std::log(v1);
        for (long i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0
                                        : static_cast<double>(i)
                                              / static_cast<double>(count - 1);
            const double x = std::exp(l0 + (l1 - l0) * t);
            if (!(x > 0.0 && x < 1.0))
                throw gafzeros::DomainError(
                    "log1m grid leaves 1 - r^2 outside (0, 1)");
            grid.push_back(std::sqrt(1.0 - x));
        }
    } else {
        throw gafzeros::DomainError("unknown radius grid kind " + kind);
    }
    for (double r : grid)
        if (!(r > 0.0 && r < 1.0))
            throw gafzeros::DomainError("radius grid leaves (0, 1)");
    return grid;
}

// "lo:hi:count" for the region sweep axes.
std::vector<double> parse_axis(const std::string& spec) {
    double v0 = 0.0, v1 = 0.0;
    long count = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &v0, &v1, &count, &extra)
        != 3)
        throw gafzeros::DomainError("axis must look like lo:hi:count");
    if (count < 1 || count > 100000)
        throw gafzeros::DomainError("axis count out of range");
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0
                                    : static_cast<double>(i)
                                          / static_cast<double>(count - 1);
        axis.push_back(v0 + (v1 - v0) * t);
    }
    return axis;
}

struct GlobalFlags {
    std::string output;
    std::string format; // "", "csv" or "json"
    std::uint64_t seed = 20240814;
    int threads = 1;
    std::string config; // consumed before parsing; registered so CLI11 accepts it
};

std::string pick_format(const GlobalFlags& g, const char* fallback) {
    if (!g.format.empty()) return g.format;
    return fallback;
}

void emit(const Table& table, const GlobalFlags& g, const char* fallback) {
    const std::string format = pick_format(g, fallback);
    if (format == "csv") write_output(table.render_csv(), g.output);
    else write_output(table.render_json(), g.output);
}

int auto_truncation(const gafzeros::Covariance& cov, double r) {
    for (int n = 50; n <= 400; n += 10) {
        if (gafzeros::truncation_tail_bound(cov, n, r) < 1e-6) return n;
    }
    return 400;
}

// ---- subcommand drivers ----

struct ExpectedZerosArgs {
    CovarianceFlags cov;
    double r = -1.0;
    std::string r_grid;
    std::vector<std::string> methods;
    long trials = 2000;
    int truncation = 0;
    double region_tol = 1e-9;
};

int run_expected_zeros(const ExpectedZerosArgs& args, const GlobalFlags& g) {
    std::string descriptor;
    const gafzeros::Covariance cov = build_covariance(args.cov, &descriptor);
    std::vector<double> grid;
    if (!args.r_grid.empty()) grid = parse_r_grid(args.r_grid);
    if (args.r > 0.0) grid.push_back(args.r);
    if (grid.empty())
        throw gafzeros::DomainError("no radius given: use --r or --r-grid");
    std::vector<std::string> methods = args.methods;
    if (methods.empty()) methods = {"residue"};

    Table table;
    table.columns = {"cov",   "r",      "baseline", "correction",
                     "total", "method", "residual"};
    for (double r : grid) {
        for (const std::string& m : methods) {
            double baseline = gafzeros::baseline(r);
            double correction = 0.0;
            double residual = 0.0;
            if (m == "residue" || m == "contour" || m == "area") {
                gafzeros::Method method = gafzeros::Method::Residue;
                if (m == "contour") method = gafzeros::Method::ContourQuad;
                if (m == "area") method = gafzeros::Method::AreaQuad;
                const gafzeros::ZeroCountResult res =
                    gafzeros::expected_zeros(cov, r, method);
                correction = res.correction;
                residual = res.diag.imag_residual;
            } else if (m == "montecarlo") {
                gafzeros::McConfig cfg;
                cfg.truncation = args.truncation > 0 ? args.truncation
                                                     : auto_truncation(cov, r);
                cfg.trials = args.trials;
                cfg.seed = g.seed;
                cfg.r = r;
                cfg.threads = g.threads;
                const gafzeros::MonteCarloReport rep =
                    gafzeros::empirical_expected_zeros(cov, cfg);
                correction = rep.mean - baseline;
                residual = rep.stderr_mean;
            } else {
                throw gafzeros::DomainError("unknown method " + m);
            }
            table.rows.push_back({descriptor, fmt(r), fmt(baseline),
                                  fmt(correction), fmt(baseline + correction),
                                  m, fmt(residual)});
        }
    }
    emit(table, g, "csv");
    return 0;
}

struct AsymptoticsArgs {
    CovarianceFlags cov;
    std::string r_grid;
    double region_tol = 1e-9;
};

int run_asymptotics(const AsymptoticsArgs& args, const GlobalFlags& g) {
    std::string descriptor;
    const gafzeros::Covariance cov = build_covariance(args.cov, &descriptor);

    gafzeros::AsymptoticPrediction pred{};
    if (const auto td = cov.as_two_dependent()) {
        // CLI inputs are decimal approximations; classify with the wider
        // tolerance so boundary points land on their boundary case.
        pred = gafzeros::case_prediction(td->first, td->second, args.region_tol);
    } else {
        pred = gafzeros::general_exponent(cov);
    }

    Table table;
    table.columns = {"cov", "case", "alpha_num", "alpha_den", "alpha",
                     "constant"};
    std::vector<std::string> row = {
        descriptor,
        gafzeros::case_label_name(pred.label),
        std::to_string(pred.exponent.num),
        std::to_string(pred.exponent.den),
        fmt(pred.exponent.value()),
        pred.constant ? fmt(*pred.constant) : std::string("")};

    if (!args.r_grid.empty()) {
        const std::vector<double> grid = parse_r_grid(args.r_grid);
        std::vector<double> xs, ys;
        for (double r : grid) {
            const double x = 1.0 - r * r;
            const double j = gafzeros::correction_residue(cov, r, nullptr);
            if (-j > 0.0) {
                xs.push_back(x);
                ys.push_back(-j);
            }
        }
        table.columns.insert(table.columns.end(),
                             {"empirical_alpha", "empirical_constant",
                              "alpha_rel_err", "constant_rel_err"});
        if (xs.size() >= 2 && pred.exponent.num > 0) {
            const gafzeros::LineFit fit = gafzeros::loglog_fit(xs, ys);
            const double alpha_emp = -fit.slope;
            std::vector<double> scaled(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                scaled[i] = ys[i] * std::pow(xs[i], pred.exponent.value());
            const double const_emp = gafzeros::power_law_limit(
                xs, scaled, 1.0 / static_cast<double>(pred.exponent.den));
            row.push_back(fmt(alpha_emp));
            row.push_back(fmt(const_emp));
            row.push_back(fmt(std::abs(alpha_emp - pred.exponent.value())
                              / pred.exponent.value()));
            row.push_back(pred.constant && *pred.constant != 0.0
                              ? fmt(std::abs(const_emp - *pred.constant)
                                    / *pred.constant)
                              : std::string(""));
        } else if (xs.size() >= 2) {
            // bounded case: extrapolate the limit of -J directly
            const double const_emp = gafzeros::power_law_limit(xs, ys, 1.0);
            row.push_back(fmt(0.0));
            row.push_back(fmt(const_emp));
            row.push_back("");
            row.push_back(pred.constant && *pred.constant != 0.0
                              ? fmt(std::abs(const_emp - *pred.constant)
                                    / *pred.constant)
                              : std::string(""));
        } else {
            row.insert(row.end(), {"", "", "", ""});
        }
    }
    table.rows.push_back(row);
    emit(table, g, "json");
    return 0;
}

struct MonteCarloArgs {
    CovarianceFlags cov;
    double r = 0.8;
    long trials = 2000;
    int truncation = 0;
    bool diagnostics = false;
};

int run_montecarlo(const MonteCarloArgs& args, const GlobalFlags& g) {
    std::string descriptor;
    const gafzeros::Covariance cov = build_covariance(args.cov, &descriptor);
    gafzeros::McConfig cfg;
    cfg.truncation = args.truncation > 0 ? args.truncation
                                         : auto_truncation(cov, args.r);
    cfg.trials = args.trials;
    cfg.seed = g.seed;
    cfg.r = args.r;
    cfg.threads = g.threads;
    cfg.diagnostics = args.diagnostics;
    const gafzeros::MonteCarloReport rep =
        gafzeros::empirical_expected_zeros(cov, cfg);
    const gafzeros::ZeroCountResult analytic =
        gafzeros::expected_zeros(cov, args.r, gafzeros::Method::Residue);
    const double z = rep.stderr_mean > 0.0
                         ? (rep.mean - analytic.total) / rep.stderr_mean
                         : 0.0;

    Table table;
    table.columns = {"cov",    "r",       "truncation", "trials",
                     "seed",   "mean",    "stderr",     "analytic",
                     "zscore", "tail_bound", "degenerate", "resampled"};
    std::vector<std::string> row = {descriptor,
                                    fmt(rep.r),
                                    std::to_string(rep.truncation),
                                    std::to_string(rep.trials),
                                    std::to_string(rep.seed),
                                    fmt(rep.mean),
                                    fmt(rep.stderr_mean),
                                    fmt(analytic.total),
                                    fmt(z),
                                    fmt(rep.tail_bound),
                                    rep.degenerate ? "1" : "0",
                                    std::to_string(rep.resampled)};
    if (args.diagnostics) {
        table.columns.insert(table.columns.end(),
                             {"winding_checked", "winding_disagreements"});
        row.push_back(std::to_string(rep.winding_checked));
        row.push_back(std::to_string(rep.winding_disagreements));
    }
    table.rows.push_back(row);
    emit(table, g, "csv");
    return 0;
}

struct PuiseuxArgs {
    int n = 2;
    double r = -1.0;
    std::string r_grid;
};

int run_puiseux(const PuiseuxArgs& args, const GlobalFlags& g) {
    std::vector<double> grid;
    if (!args.r_grid.empty()) grid = parse_r_grid(args.r_grid);
    if (args.r > 0.0) grid.push_back(args.r);
    if (grid.empty())
        throw gafzeros::DomainError("no radius given: use --r or --r-grid");
    const gafzeros::Covariance cov = gafzeros::Covariance::binomial(args.n);

    Table table;
    table.columns = {"n",            "r",            "branch",
                     "tracked_re",   "tracked_im",   "predicted_re",
                     "predicted_im", "abs_error",    "max_error"};
    for (double r : grid) {
        const gafzeros::RootSet rs = gafzeros::theta_roots(cov, r);
        const std::size_t m = rs.roots.size();
        std::vector<cplx> predicted(m);
        for (std::size_t j = 0; j < m; ++j)
            predicted[j] =
                gafzeros::predicted_root(args.n, static_cast<int>(j), r);
        // greedy global matching of tracked roots to predicted branches
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                pairs.emplace_back(std::abs(rs.roots[i] - predicted[j]), i, j);
        std::sort(pairs.begin(), pairs.end());
        std::vector<bool> used_root(m, false), used_pred(m, false);
        std::vector<std::size_t> root_for_pred(m, m);
        for (const auto& [dist, i, j] : pairs) {
            if (used_root[i] || used_pred[j]) continue;
            used_root[i] = true;
            used_pred[j] = true;
            root_for_pred[j] = i;
        }
        double max_err = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            max_err = std::max(
                max_err, std::abs(rs.roots[root_for_pred[j]] - predicted[j]));
        for (std::size_t j = 0; j < m; ++j) {
            const cplx tracked = rs.roots[root_for_pred[j]];
            table.rows.push_back(
                {std::to_string(args.n), fmt(r), std::to_string(j),
                 fmt(tracked.real()), fmt(tracked.imag()),
                 fmt(predicted[j].real()), fmt(predicted[j].imag()),
                 fmt(std::abs(tracked - predicted[j])), fmt(max_err)});
        }
    }
    emit(table, g, "csv");
    return 0;
}

struct RegionArgs {
    std::string a_axis = "-1:1:201";
    std::string b_axis = "-0.6:0.6:121";
    double tol = 1e-9;
};

int run_region(const RegionArgs& args, const GlobalFlags& g) {
    const std::vector<double> as = parse_axis(args.a_axis);
    const std::vector<double> bs = parse_axis(args.b_axis);
    Table table;
    table.columns = {"a", "b", "member", "label", "ellipse_gap", "line_gap"};
    for (double a : as) {
        for (double b : bs) {
            const bool member = gafzeros::in_region(a, b, args.tol);
            const gafzeros::RegionLabel label =
                gafzeros::classify_region(a, b, args.tol);
            const double eg =
                a * a / 8.0 + (b - 0.25) * (b - 0.25) - 1.0 / 16.0;
            const double lg = b - (std::abs(a) - 0.5);
            table.rows.push_back({fmt(a), fmt(b), member ? "1" : "0",
                                  gafzeros::region_label_name(label), fmt(eg),
                                  fmt(lg)});
        }
    }
    emit(table, g, "csv");
    return 0;
}

// Config file: JSON object whose keys are long option names (without the
// leading dashes). Values become synthetic arguments inserted before the
// command-line ones, so explicit flags win under the take-last policy.
std::vector<std::string> config_to_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gafzeros::DomainError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw gafzeros::DomainError(std::string("invalid config JSON: ")
                                    + e.what());
    }
    if (!j.is_object())
        throw gafzeros::DomainError("config must be a JSON object");
    std::vector<std::string> args;
    for (const auto& [key, value] : j.items()) {
        args.push_back("--" + key);
        if (value.is_boolean()) {
            if (!value.get<bool>()) args.pop_back(); // "flag": false -> absent
            continue;
        }
        if (value.is_string()) {
            args.push_back(value.get<std::string>());
        } else if (value.is_number_integer()) {
            args.push_back(std::to_string(value.get<long long>()));
        } else if (value.is_number()) {
            args.push_back(fmt(value.get<double>()));
        } else if (value.is_array() && key != "gamma") {
            for (const auto& item : value) {
                if (item.is_string()) args.push_back(item.get<std::string>());
                else if (item.is_number_integer())
                    args.push_back(std::to_string(item.get<long long>()));
                else if (item.is_number()) args.push_back(fmt(item.get<double>()));
                else args.push_back(item.dump());
            }
        } else {
            args.push_back(value.dump());
        }
    }
    return args;
}

const char* const kSubcommands[] = {"expected-zeros", "asymptotics",
                                    "montecarlo", "puiseux", "region"};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected zeros of Gaussian power series with finitely "
                 "dependent coefficients"};
    app.require_subcommand(1);

    GlobalFlags global;
    app.add_option("--output", global.output, "Write output to this path")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--format", global.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--seed", global.seed, "Random seed")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--threads", global.threads, "Worker thread count")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", global.config,
                   "JSON config file; explicit flags override it")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    // Global flags may follow the subcommand.
    app.fallthrough();

    ExpectedZerosArgs ez;
    CLI::App* cmd_ez = app.add_subcommand(
        "expected-zeros", "Expected zero count over a radius sweep");
    add_covariance_flags(cmd_ez, ez.cov);
    cmd_ez->add_option("--r", ez.r, "Single radius in (0, 1)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_ez->add_option("--r-grid", ez.r_grid,
                       "linear:lo,hi,count or log1m:x0,x1,count (x = 1 - r^2)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_ez->add_option("--method", ez.methods,
                       "residue, contour, area, montecarlo (repeatable)")
        ->check(CLI::IsMember({"residue", "contour", "area", "montecarlo"}));
    cmd_ez->add_option("--trials", ez.trials, "Monte Carlo trials")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_ez->add_option("--truncation", ez.truncation,
                       "Monte Carlo truncation degree (0 = automatic)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    AsymptoticsArgs as;
    CLI::App* cmd_as = app.add_subcommand(
        "asymptotics", "Asymptotic exponent and constant of the correction");
    add_covariance_flags(cmd_as, as.cov);
    cmd_as->add_option("--r-grid", as.r_grid,
                       "Optional sweep for an empirical comparison")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_as->add_option("--region-tol", as.region_tol,
                       "Boundary classification tolerance")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    MonteCarloArgs mc;
    CLI::App* cmd_mc = app.add_subcommand(
        "montecarlo", "Empirical zero count against the analytic value");
    add_covariance_flags(cmd_mc, mc.cov);
    cmd_mc->add_option("--r", mc.r, "Counting radius in (0, 0.95]")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_mc->add_option("--trials", mc.trials, "Trial count")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_mc->add_option("--truncation", mc.truncation,
                       "Truncation degree (0 = automatic)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_mc->add_flag("--diagnostics", mc.diagnostics,
                     "Cross-check counts with winding numbers");

    PuiseuxArgs pu;
    CLI::App* cmd_pu = app.add_subcommand(
        "puiseux", "Tracked vs predicted root branches of the binomial family");
    cmd_pu->add_option("--n", pu.n, "Binomial family order")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_pu->add_option("--r", pu.r, "Single radius in (0, 1)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_pu->add_option("--r-grid", pu.r_grid, "Radius grid")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RegionArgs rg;
    CLI::App* cmd_rg = app.add_subcommand(
        "region", "Admissible region membership grid for (a, b)");
    cmd_rg->add_option("--a", rg.a_axis, "a axis as lo:hi:count")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_rg->add_option("--b", rg.b_axis, "b axis as lo:hi:count")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_rg->add_option("--region-tol", rg.tol, "Membership slack")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // Splice config-file arguments in front of the command-line ones (right
    // after the subcommand token) before the real parse.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::string config_path;
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--config") config_path = args[i + 1];
        if (!config_path.empty()) {
            const std::vector<std::string> extra = config_to_args(config_path);
            std::size_t sub_pos = args.size();
            for (std::size_t i = 0; i < args.size(); ++i) {
                for (const char* name : kSubcommands)
                    if (args[i] == name) sub_pos = std::min(sub_pos, i);
            }
            if (sub_pos == args.size())
                throw gafzeros::DomainError(
                    "--config requires a subcommand on the command line");
            args.insert(args.begin() + static_cast<long>(sub_pos) + 1,
                        extra.begin(), extra.end());
        }
    } catch (const gafzeros::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const std::string& s : args) cargs.push_back(s.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_ez->parsed()) return run_expected_zeros(ez, global);
        if (cmd_as->parsed()) return run_asymptotics(as, global);
        if (cmd_mc->parsed()) return run_montecarlo(mc, global);
        if (cmd_pu->parsed()) return run_puiseux(pu, global);
        if (cmd_rg->parsed()) return run_region(rg, global);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const gafzeros::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gafzeros::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
