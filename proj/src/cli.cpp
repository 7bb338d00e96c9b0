#include "ncx2/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncx2/density.hpp"
#include "ncx2/errors.hpp"
#include "ncx2/grid.hpp"
#include "ncx2/modes.hpp"
#include "ncx2/shape.hpp"

namespace ncx2::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, double, bool, std::int64_t, std::string>;
using Record = std::vector<std::pair<std::string, Cell>>;

enum class Format { json, csv };

constexpr double kDefaultTol = 1e-8;

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

Json cell_to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return std::strtod(format_number(v).c_str(), nullptr);
            } else {
                return v;
            }
        },
        cell);
}

std::string cell_to_csv(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        cell);
}

Cell optional_cell(const std::optional<double>& value) {
    return value ? Cell{*value} : Cell{};
}

Json record_to_json(const Record& record) {
    Json object = Json::object();
    for (const auto& [key, cell] : record) {
        object[key] = cell_to_json(cell);
    }
    return object;
}

struct Output {
    std::string command;
    Record header_fields;           // scalar payload fields (JSON only for tables)
    std::vector<Record> rows;       // table rows; empty for single-record commands
    Json tolerances = Json::object();
};

void emit(const Output& output, Format format, std::ostream& out) {
    if (format == Format::csv) {
        const auto& records = output.rows.empty() ? std::vector<Record>{output.header_fields}
                                                  : output.rows;
        for (std::size_t i = 0; i < records.front().size(); ++i) {
            out << (i ? "," : "") << records.front()[i].first;
        }
        out << '\n';
        for (const auto& record : records) {
            for (std::size_t i = 0; i < record.size(); ++i) {
                out << (i ? "," : "") << cell_to_csv(record[i].second);
            }
            out << '\n';
        }
        return;
    }
    Json payload = record_to_json(output.header_fields);
    if (!output.rows.empty()) {
        Json rows = Json::array();
        for (const auto& record : output.rows) {
            rows.push_back(record_to_json(record));
        }
        payload["rows"] = std::move(rows);
    }
    Json envelope;
    envelope["command"] = output.command;
    envelope["meta"] = {{"tool", std::string(kToolName)},
                        {"version", std::string(kVersion)},
                        {"tolerances", output.tolerances}};
    envelope["payload"] = std::move(payload);
    out << envelope.dump(2) << '\n';
}

struct EvalOptions {
    double nu = 0.0;
    double lambda = 0.0;
    std::optional<double> x;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<std::size_t> points;
    Spacing spacing = Spacing::linear;
};

Output run_eval(const EvalOptions& options) {
    const Params params{options.nu, options.lambda};
    std::vector<double> xs;
    const bool any_grid = options.x_min || options.x_max || options.points;
    if (options.x && any_grid) {
        throw DomainError("eval: give either --x or --x-min/--x-max/--points, not both");
    }
    if (options.x) {
        xs.push_back(*options.x);
    } else if (options.x_min && options.x_max && options.points) {
        xs = GridSpec{*options.x_min, *options.x_max, *options.points, options.spacing}.abscissae();
    } else {
        throw DomainError("eval: need --x or all of --x-min, --x-max, --points");
    }

    Output output{"eval", {{"nu", params.nu()}, {"lambda", params.lambda()}}, {}};
    output.tolerances["d2_form_agreement"] = kSecondDerivativeAgreement;
    for (double x : xs) {
        const auto derivs = log_density_derivatives(params, x);
        output.rows.push_back({{"x", x},
                               {"density", std::exp(derivs.l)},
                               {"log_density", derivs.l},
                               {"d1", derivs.d1},
                               {"d2", derivs.d2}});
    }
    return output;
}

Output run_classify(double nu, double lambda, double tol) {
    const auto report = classify(Params{nu, lambda}, tol);
    Output output{"classify",
                  {{"nu", nu},
                   {"lambda", lambda},
                   {"log_concave", report.log_concave},
                   {"decreasing", report.decreasing},
                   {"bimodal", report.bimodal},
                   {"convex_then_concave", report.convex_then_concave},
                   {"critical_lambda", optional_cell(report.critical_lambda)}},
                  {}};
    output.tolerances["critical_lambda"] = tol;
    return output;
}

struct TableOptions {
    std::vector<double> nus;
    std::optional<double> nu_min;
    std::optional<double> nu_max;
    std::optional<std::size_t> steps;
    double tol = kDefaultTol;
};

Output run_critical_table(const TableOptions& options) {
    std::vector<double> nus = options.nus;
    const bool any_range = options.nu_min || options.nu_max || options.steps;
    if (!nus.empty() && any_range) {
        throw DomainError("critical-table: give either --nu or a --nu-min/--nu-max/--steps range");
    }
    if (any_range) {
        if (!(options.nu_min && options.nu_max && options.steps)) {
            throw DomainError("critical-table: a range needs --nu-min, --nu-max and --steps");
        }
        const std::size_t steps = *options.steps;
        if (steps == 0) throw DomainError("critical-table: --steps must be >= 1");
        for (std::size_t i = 0; i < steps; ++i) {
            const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
            nus.push_back(*options.nu_min + t * (*options.nu_max - *options.nu_min));
        }
    }
    if (nus.empty()) {
        nus = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
    }
    for (double nu : nus) {
        if (!std::isfinite(nu) || !(nu > 0.0 && nu < 2.0)) {
            throw DomainError("critical-table: every nu must lie in (0, 2), got " + format_number(nu));
        }
    }

    Output output{"critical-table", {}, {}};
    output.tolerances["critical_lambda"] = options.tol;
    for (double nu : nus) {
        const auto solved = critical_lambda(nu, options.tol);
        output.rows.push_back({{"nu", nu},
                               {"lambda_nu", solved.lambda_nu},
                               {"iterations", static_cast<std::int64_t>(solved.iterations)}});
    }
    return output;
}

Output run_modes(double nu, double lambda) {
    const auto report = analyze_modes(Params{nu, lambda});
    Record record{{"nu", nu},
                  {"lambda", lambda},
                  {"zero_is_mode", report.zero_is_mode},
                  {"interior_mode", optional_cell(report.interior_mode)},
                  {"antimode", optional_cell(report.antimode)},
                  {"inflection_point", optional_cell(report.inflection)}};
    if (report.bounds) {
        const auto& b = *report.bounds;
        record.emplace_back("bounds_lower", b.lower);
        record.emplace_back("bounds_upper", b.upper);
        record.emplace_back("lower_strict", b.lower_strict);
        record.emplace_back("upper_strict", b.upper_strict);
        record.emplace_back("bound_source", std::string(to_string(b.source)));
    } else {
        for (const char* key :
             {"bounds_lower", "bounds_upper", "lower_strict", "upper_strict", "bound_source"}) {
            record.emplace_back(key, Cell{});
        }
    }
    Output output{"modes", std::move(record), {}};
    output.tolerances["critical_lambda"] = kDefaultCriticalTolerance;
    output.tolerances["mode_position_relative"] = 1e-10;
    return output;
}

void add_format_option(CLI::App* command, Format& format) {
    command->add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noncentral chi-squared density: evaluation, shape and modes", std::string(kToolName)};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Format format = Format::json;

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Density, log-density and its derivatives");
    eval_cmd->add_option("--nu", eval.nu, "Degrees of freedom")->required();
    eval_cmd->add_option("--lambda", eval.lambda, "Noncentrality")->required();
    eval_cmd->add_option("--x", eval.x, "Single evaluation point");
    eval_cmd->add_option("--x-min", eval.x_min, "Grid start");
    eval_cmd->add_option("--x-max", eval.x_max, "Grid end");
    eval_cmd->add_option("--points", eval.points, "Grid size");
    eval_cmd->add_option("--spacing", eval.spacing, "Grid spacing")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Spacing>{{"linear", Spacing::linear}, {"log", Spacing::log}}));
    add_format_option(eval_cmd, format);

    double nu = 0.0;
    double lambda = 0.0;
    double tol = kDefaultTol;
    auto* classify_cmd = app.add_subcommand("classify", "Shape classification");
    classify_cmd->add_option("--nu", nu, "Degrees of freedom")->required();
    classify_cmd->add_option("--lambda", lambda, "Noncentrality")->required();
    classify_cmd->add_option("--tol", tol, "Bracket width for the critical noncentrality");
    add_format_option(classify_cmd, format);

    TableOptions table;
    auto* table_cmd = app.add_subcommand("critical-table", "Critical noncentrality per nu");
    table_cmd->add_option("--nu", table.nus, "Degrees of freedom in (0, 2); repeatable");
    table_cmd->add_option("--nu-min", table.nu_min, "Range start");
    table_cmd->add_option("--nu-max", table.nu_max, "Range end");
    table_cmd->add_option("--steps", table.steps, "Number of range points");
    table_cmd->add_option("--tol", table.tol, "Bracket width");
    add_format_option(table_cmd, format);

    auto* modes_cmd = app.add_subcommand("modes", "Interior mode, antimode and bounds");
    modes_cmd->add_option("--nu", nu, "Degrees of freedom")->required();
    modes_cmd->add_option("--lambda", lambda, "Noncentrality")->required();
    add_format_option(modes_cmd, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (!(tol > 0.0) || !(table.tol > 0.0)) {
            throw DomainError("--tol must be > 0");
        }
        Output output;
        if (*eval_cmd) {
            output = run_eval(eval);
        } else if (*classify_cmd) {
            output = run_classify(nu, lambda, tol);
        } else if (*table_cmd) {
            output = run_critical_table(table);
        } else {
            output = run_modes(nu, lambda);
        }
        emit(output, format, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::overflow_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kSuccess;
}

} // namespace ncx2::cli
