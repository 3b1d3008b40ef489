#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "json_out.hpp"
#include "sentimarket/estimate.hpp"
#include "sentimarket/filter.hpp"
#include "sentimarket/io.hpp"
#include "sentimarket/simulate.hpp"
#include "sentimarket/stats.hpp"

namespace sentimarket::cli {

namespace {

void apply_config_file(RunConfig& cfg) {
    const char* path = std::getenv(kConfigEnvVar);
    if (path == nullptr || *path == '\0') return;

    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file", path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config file is not valid JSON: ") + e.what(), path);
    }
    if (!doc.is_object()) throw InputError("config file must hold a JSON object", path);

    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "lambda") cfg.params.lambda = value.get<double>();
            else if (key == "sigma0") cfg.params.sigma0 = value.get<double>();
            else if (key == "beta") cfg.params.beta = value.get<double>();
            else if (key == "alpha") cfg.params.alpha = value.get<double>();
            else if (key == "L") cfg.params.max_group_size = value.get<int>();
            else if (key == "B0") cfg.params.initial_bullishness = value.get<double>();
            else if (key == "group_weights") cfg.params.group_weights = value.get<std::vector<double>>();
            else if (key == "T") cfg.steps = value.get<std::size_t>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "starts") cfg.starts = value.get<int>();
            else if (key == "tail_fraction") cfg.tail_fraction = value.get<double>();
            else if (key == "max_lag") cfg.max_lag = value.get<int>();
            else throw InputError("unknown config key '" + key + "'", path);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("config key '" + key + "' has the wrong type: " + e.what(), path);
        }
    }
}

// `fit`, `filter` and `stats` accept either a date,price series or a numeric
// CSV that carries the returns directly (column `r`, or the only column).
std::vector<double> load_returns_any(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw InputError("cannot open file", path);
    std::string first_line;
    std::getline(probe, first_line);
    probe.close();

    if (first_line.find("price") != std::string::npos &&
        first_line.find("date") != std::string::npos) {
        return prices_to_returns(load_prices(path));
    }

    CsvTable table = load_csv_table(path);
    const std::vector<double>* col = table.column("r");
    if (col == nullptr && table.header.size() == 1) col = &table.columns.front();
    if (col == nullptr)
        throw InputError("no 'r' column found and file is not a date,price series", path, 1);
    if (col->size() < 2) throw InputError("need at least two return observations", path);
    return *col;
}

template <typename WriteFn>
void write_output(const std::string& path, std::ostream& fallback, WriteFn&& write) {
    if (path.empty()) {
        write(fallback);
        fallback.flush();
        return;
    }
    std::ofstream file(path);
    if (!file) throw InputError("cannot open output file", path);
    write(file);
    if (!file) throw InputError("write failed", path);
}

void emit_error(std::ostream& err, const nlohmann::json& j) { err << j.dump() << '\n'; }

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        apply_config_file(cfg);
    } catch (const InputError& e) {
        emit_error(err, error_json("config_error", e.what(),
                                   {{"path", e.path()}, {"variable", kConfigEnvVar}}));
        return kExitInput;
    }

    CLI::App app{"simulator and estimator for a sentiment-driven market model"};
    app.name("sentimarket");
    app.require_subcommand(1);

    auto add_model_flags = [&cfg](CLI::App* sub) {
        sub->add_option("--lambda", cfg.params.lambda,
                        "return response to relative sentiment changes")
            ->capture_default_str();
        sub->add_option("--sigma0", cfg.params.sigma0, "baseline news volatility")
            ->capture_default_str();
        sub->add_option("--beta", cfg.params.beta, "volatility response scale")
            ->capture_default_str();
        sub->add_option("--alpha", cfg.params.alpha, "transition feedback scale")
            ->capture_default_str();
    };
    auto add_structure_flags = [&cfg](CLI::App* sub) {
        sub->add_option("--L", cfg.params.max_group_size, "largest communicating group size")
            ->capture_default_str();
        sub->add_option("--B0", cfg.params.initial_bullishness, "initial bullishness")
            ->capture_default_str();
    };

    CLI::App* sim = app.add_subcommand("simulate", "generate a synthetic path as CSV");
    add_model_flags(sim);
    add_structure_flags(sim);
    sim->add_option("--T", cfg.steps, "number of steps")->capture_default_str();
    sim->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sim->add_option("--output", cfg.output, "output file (default: stdout)");

    CLI::App* fit = app.add_subcommand(
        "fit", "estimate lambda, sigma0, beta and alpha from observed data");
    add_structure_flags(fit);
    fit->add_option("--input", cfg.input, "date,price CSV or return series")->required();
    fit->add_option("--starts", cfg.starts, "number of optimizer starts")->capture_default_str();
    fit->add_option("--seed", cfg.seed, "seed for the start points")->capture_default_str();
    fit->add_option("--output", cfg.output, "output file (default: stdout)");

    CLI::App* fil = app.add_subcommand(
        "filter", "reconstruct the sentiment state implied by observed returns");
    add_model_flags(fil);
    add_structure_flags(fil);
    fil->add_option("--input", cfg.input, "date,price CSV or return series")->required();
    fil->add_option("--output", cfg.output, "output file (default: stdout)");

    CLI::App* st = app.add_subcommand("stats", "stylized-facts report for a return series");
    st->add_option("--input", cfg.input, "date,price CSV or return series")->required();
    st->add_option("--tail-fraction", cfg.tail_fraction, "fraction of points in the Hill tail")
        ->capture_default_str();
    st->add_option("--max-lag", cfg.max_lag, "largest autocorrelation lag")
        ->capture_default_str();
    st->add_option("--output", cfg.output, "output file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, error_json("usage_error", e.what(), {{"hint", "run with --help"}}));
        return kExitUsage;
    }

    try {
        if (sim->parsed()) {
            cfg.params.validate();
            SimulateOptions opts;
            opts.steps = cfg.steps;
            opts.seed = cfg.seed;
            SimulatedPath path = simulate_path(cfg.params, opts);
            write_output(cfg.output, out, [&](std::ostream& os) { write_path_csv(os, path); });
            return kExitOk;
        }
        if (fit->parsed()) {
            std::vector<double> returns = load_returns_any(cfg.input);
            FitOptions opts;
            opts.starts = cfg.starts;
            opts.seed = cfg.seed;
            FitResult result = maximize_likelihood(returns, cfg.params, opts);
            write_output(cfg.output, out,
                         [&](std::ostream& os) { os << fit_result_json(result).dump(2) << '\n'; });
            return kExitOk;
        }
        if (fil->parsed()) {
            cfg.params.validate();
            std::vector<double> returns = load_returns_any(cfg.input);
            FilterOutput filtered = filter(cfg.params, returns);
            write_output(cfg.output, out,
                         [&](std::ostream& os) { write_filter_csv(os, returns, filtered); });
            return kExitOk;
        }
        if (st->parsed()) {
            std::vector<double> returns = load_returns_any(cfg.input);
            StylizedFactsOptions opts;
            opts.max_lag = cfg.max_lag;
            opts.tail_fraction = cfg.tail_fraction;
            StylizedFactsReport report = stylized_facts(returns, opts);
            write_output(cfg.output, out, [&](std::ostream& os) {
                os << stylized_facts_json(report).dump(2) << '\n';
            });
            return kExitOk;
        }
        emit_error(err, error_json("usage_error", "no subcommand selected"));
        return kExitUsage;
    } catch (const PathCollapse& e) {
        emit_error(err, error_json("sentiment_collapse", e.what(),
                                   {{"step", e.step()},
                                    {"steps_completed", e.partial_path().size()}}));
        return kExitNumeric;
    } catch (const SentimentCollapse& e) {
        emit_error(err, error_json("sentiment_collapse", e.what(), {{"step", e.step()}}));
        return kExitNumeric;
    } catch (const InputError& e) {
        nlohmann::json context{{"path", e.path()}};
        if (e.line() != 0) context["line"] = e.line();
        emit_error(err, error_json("input_error", e.what(), context));
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        emit_error(err, error_json("invalid_parameter", e.what()));
        return kExitUsage;
    } catch (const std::domain_error& e) {
        emit_error(err, error_json("invalid_parameter", e.what()));
        return kExitUsage;
    } catch (const std::exception& e) {
        emit_error(err, error_json("internal_error", e.what()));
        return kExitInternal;
    }
}

}  // namespace sentimarket::cli
