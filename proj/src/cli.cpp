#include "prolime/cli.hpp"

#include "prolime/evaluation.hpp"
#include "prolime/explainer.hpp"
#include "prolime/plot.hpp"
#include "prolime/simulation.hpp"
#include "prolime/surrogate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

namespace prolime::cli {
namespace {

std::string normalise_key(std::string key) {
    for (auto& c : key) {
        c = c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return key;
}

std::string trim(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T result{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ConfigError("invalid value for '" + key + "': '" + value + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(result)) {
            throw ConfigError("'" + key + "' must be finite");
        }
    }
    return result;
}

std::size_t parse_count(const std::string& key, const std::string& value, std::size_t minimum) {
    auto n = parse_number<std::size_t>(key, value);
    if (n < minimum) {
        throw ConfigError("'" + key + "' must be at least " + std::to_string(minimum) + ", got " + value);
    }
    return n;
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string v = normalise_key(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("invalid boolean for '" + key + "': '" + value + "'");
}

std::vector<std::size_t> parse_sizes(const std::string& key, const std::string& value) {
    std::vector<std::size_t> sizes;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto end = value.find_first_of(",;", start);
        if (end == std::string::npos) {
            end = value.size();
        }
        sizes.push_back(parse_count(key, trim(value.substr(start, end - start)), 2));
        start = end + 1;
    }
    return sizes;
}

std::uint64_t seed_from_environment(std::uint64_t fallback) {
    const char* env = std::getenv("PROLIME_SEED");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    return parse_number<std::uint64_t>("PROLIME_SEED", env);
}

BenchmarkDistribution distribution_of(const RunConfig& config) {
    return BenchmarkDistribution{config.rho, config.density_threshold};
}

LimeHyperparameters hyper_of(const RunConfig& config) {
    LimeHyperparameters hyper = LimeHyperparameters::defaults_for(2);
    hyper.neighborhood_size = config.neighborhood_size;
    if (config.kernel_width > 0.0) {
        hyper.kernel_width = config.kernel_width;
    }
    hyper.ridge_strength = config.ridge;
    hyper.explained_class = config.explained_class;
    hyper.standardize = config.standardize;
    return hyper;
}

SamplerSpec sampler_of(const RunConfig& config) {
    const BenchmarkDistribution dist = distribution_of(config);
    if (config.sampler == SamplerChoice::ProcessAware) {
        return dist.sampler();
    }
    return StandardSampler{config.center, config.noise, {1.0, 1.0}, dist.mean()};
}

std::unique_ptr<BlackBoxModel> model_of(const RunConfig& config) {
    if (config.constant_model) {
        return std::make_unique<ConstantModel>(ClassProbabilities{{0.5, 0.5}}, 2);
    }
    return std::make_unique<OracleModel>(distribution_of(config), config.model_seed.value_or(config.seed));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    file << content;
    if (!file.flush()) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
    auto samples = generate_dataset(config.n, distribution_of(config), RngStream{config.seed, 0});
    std::size_t approved = 0;
    for (const auto& s : samples) {
        approved += static_cast<std::size_t>(s.y);
    }
    std::ostringstream csv;
    write_dataset_csv(csv, samples);
    const double fraction = static_cast<double>(approved) / static_cast<double>(samples.size());
    if (config.out.empty()) {
        out << csv.str();
    } else {
        write_file(config.out, csv.str());
        out << "wrote " << samples.size() << " samples to " << config.out << '\n';
        out << "label-1 fraction: " << format_real(fraction) << '\n';
    }
    return 0;
}

int cmd_explain(const RunConfig& config, std::ostream& out) {
    auto model = model_of(config);
    ExplainRequest request{credit_risk(config.credit, config.risk), *model, hyper_of(config), sampler_of(config),
                           RngStream{config.seed, 0}};
    Explanation explanation = explain(request);
    std::string json = to_json(explanation) + "\n";
    if (!config.out.empty()) {
        write_file(config.out, json);
    }
    out << json;
    return 0;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out) {
    ExperimentConfig experiment;
    experiment.trials = config.trials;
    experiment.sizes = config.sizes;
    experiment.master_seed = config.seed;
    experiment.model_seed = config.model_seed.value_or(config.seed);
    experiment.distribution = distribution_of(config);
    experiment.hyper = hyper_of(config);
    experiment.center = config.center;
    experiment.noise = config.noise;
    experiment.threads = config.threads;

    ExperimentReport report = run_experiment(experiment);
    if (!config.out.empty()) {
        std::ostringstream csv;
        write_report_csv(csv, report);
        write_file(config.out, csv.str());
        std::string json_path = config.json_out;
        if (json_path.empty()) {
            json_path = std::filesystem::path(config.out).replace_extension(".json").string();
        }
        write_file(json_path, report_to_json(report) + "\n");
    }
    print_summary(out, report);
    for (const auto& cell : report.cells) {
        for (const auto& failure : cell.failures) {
            out << "failure: " << sampler_kind_name(cell.sampler) << " |N|=" << cell.size << " trial "
                << failure.trial << ": " << failure.message << '\n';
        }
    }
    return report.any_cell_fully_failed() ? 1 : 0;
}

int cmd_plot(const RunConfig& config, std::ostream& out) {
    ScatterPlot plot;
    if (config.plot_kind == "data") {
        std::vector<LabeledSample> samples;
        if (config.input.empty()) {
            samples = generate_dataset(config.n, distribution_of(config), RngStream{config.seed, 0});
        } else {
            std::ifstream file(config.input);
            if (!file) {
                throw ConfigError("cannot read dataset '" + config.input + "'");
            }
            try {
                samples = read_dataset_csv(file);
            } catch (const CsvError& e) {
                throw ConfigError("malformed dataset '" + config.input + "': " + e.what());
            }
        }
        plot = dataset_plot(samples);
    } else if (config.plot_kind == "model-grid") {
        auto model = model_of(config);
        plot = model_grid_plot(*model, config.resolution);
    } else if (config.plot_kind == "neighborhood") {
        auto model = model_of(config);
        const LimeHyperparameters hyper = hyper_of(config);
        Neighborhood neighborhood = sample_neighborhood(credit_risk(config.credit, config.risk), sampler_of(config),
                                                        hyper.neighborhood_size, RngStream{config.seed, 0});
        auto weights = kernel_weights(neighborhood, KernelSpec{hyper.kernel_width, hyper.distance});
        auto targets = label_neighborhood(*model, neighborhood, hyper.explained_class);
        plot = neighborhood_plot(neighborhood, weights, targets);
    } else {
        throw ConfigError("unknown plot kind '" + config.plot_kind + "' (expected data, model-grid or neighborhood)");
    }
    std::string svg = render_svg(plot);
    if (config.out.empty()) {
        out << svg;
    } else {
        write_file(config.out, svg);
        out << "wrote " << config.out << '\n';
    }
    return 0;
}

struct Subcommand {
    CLI::App* app;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::vector<std::pair<std::string, CLI::Option*>> flags;
};

} // namespace

ConfigEntries parse_config(std::istream& in) {
    ConfigEntries entries;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        }
        auto key = normalise_key(trim(text.substr(0, eq)));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(number) + ": empty key");
        }
        entries[key] = trim(text.substr(eq + 1));
    }
    return entries;
}

void apply_config(RunConfig& config, const ConfigEntries& entries) {
    for (const auto& [raw_key, value] : entries) {
        const std::string key = normalise_key(raw_key);
        if (key == "seed") {
            config.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "model-seed") {
            config.model_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "n") {
            config.n = parse_count(key, value, 1);
        } else if (key == "trials") {
            config.trials = parse_count(key, value, 1);
        } else if (key == "sizes") {
            config.sizes = parse_sizes(key, value);
        } else if (key == "neighborhood-size") {
            config.neighborhood_size = parse_count(key, value, 2);
        } else if (key == "sampler") {
            if (value == "standard") {
                config.sampler = SamplerChoice::Standard;
            } else if (value == "process-aware") {
                config.sampler = SamplerChoice::ProcessAware;
            } else {
                throw ConfigError("sampler must be 'standard' or 'process-aware', got '" + value + "'");
            }
        } else if (key == "center") {
            if (value == "sample") {
                config.center = CenterMode::SampleCentered;
            } else if (value == "mean") {
                config.center = CenterMode::MeanCentered;
            } else {
                throw ConfigError("center must be 'sample' or 'mean', got '" + value + "'");
            }
        } else if (key == "noise") {
            if (value == "gaussian") {
                config.noise = NoiseMode::Gaussian;
            } else if (value == "lhs") {
                config.noise = NoiseMode::LatinHypercube;
            } else {
                throw ConfigError("noise must be 'gaussian' or 'lhs', got '" + value + "'");
            }
        } else if (key == "kernel-width") {
            config.kernel_width = parse_number<double>(key, value);
            if (!(config.kernel_width > 0.0)) {
                throw ConfigError("kernel-width must be positive");
            }
        } else if (key == "ridge") {
            config.ridge = parse_number<double>(key, value);
            if (!(config.ridge >= 0.0)) {
                throw ConfigError("ridge must be nonnegative");
            }
        } else if (key == "rho") {
            config.rho = parse_number<double>(key, value);
            if (!(std::abs(config.rho) < 1.0)) {
                throw ConfigError("rho must lie strictly between -1 and 1");
            }
        } else if (key == "density-threshold") {
            config.density_threshold = parse_number<double>(key, value);
            if (!(config.density_threshold > 0.0)) {
                throw ConfigError("density-threshold must be positive");
            }
        } else if (key == "explained-class") {
            config.explained_class = parse_number<std::size_t>(key, value);
            if (config.explained_class > 1) {
                throw ConfigError("explained-class must be 0 or 1");
            }
        } else if (key == "standardize") {
            config.standardize = parse_bool(key, value);
        } else if (key == "constant-model") {
            config.constant_model = parse_bool(key, value);
        } else if (key == "credit") {
            config.credit = parse_number<double>(key, value);
        } else if (key == "risk") {
            config.risk = parse_number<double>(key, value);
        } else if (key == "kind") {
            config.plot_kind = value;
        } else if (key == "input") {
            config.input = value;
        } else if (key == "resolution") {
            config.resolution = parse_count(key, value, 2);
        } else if (key == "threads") {
            config.threads = parse_count(key, value, 1);
        } else if (key == "out") {
            config.out = value;
        } else if (key == "json-out") {
            config.json_out = value;
        } else {
            throw ConfigError("unknown configuration key '" + raw_key + "'");
        }
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local surrogate explanations with pluggable neighborhood sampling"};
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::map<std::string, bool> switches;
    std::string config_path;
    std::vector<Subcommand> subcommands;

    auto add = [&](const std::string& name, const std::string& description, std::vector<std::string> keys,
                   std::vector<std::string> flag_keys) {
        Subcommand sub{app.add_subcommand(name, description), {}, {}};
        sub.app->add_option("--config", config_path, "Flat key = value file; flags take precedence");
        for (const auto& key : keys) {
            sub.options.emplace_back(key, sub.app->add_option("--" + key, values[key]));
        }
        for (const auto& key : flag_keys) {
            sub.flags.emplace_back(key, sub.app->add_flag("--" + key, switches[key]));
        }
        subcommands.push_back(sub);
    };

    add("generate", "Simulate the loan-approval dataset as CSV", {"n", "seed", "rho", "out"}, {});
    add("explain", "Explain one (credit, risk) point, printing JSON",
        {"credit", "risk", "sampler", "center", "noise", "neighborhood-size", "kernel-width", "ridge", "rho",
         "seed", "model-seed", "explained-class", "out"},
        {"standardize", "constant-model"});
    add("evaluate", "Run the coefficient-mismatch experiment",
        {"trials", "sizes", "center", "noise", "kernel-width", "ridge", "rho", "seed", "model-seed", "threads",
         "out", "json-out"},
        {"standardize"});
    add("plot", "Write an SVG scatter plot",
        {"kind", "input", "resolution", "n", "credit", "risk", "sampler", "center", "noise", "neighborhood-size",
         "kernel-width", "rho", "seed", "model-seed", "out"},
        {"constant-model"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return 2;
    }

    const Subcommand* chosen = nullptr;
    for (const auto& sub : subcommands) {
        if (sub.app->parsed()) {
            chosen = &sub;
        }
    }
    const std::string command = chosen->app->get_name();

    RunConfig config;
    try {
        ConfigEntries entries;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) {
                throw ConfigError("cannot read config file '" + config_path + "'");
            }
            entries = parse_config(file);
        }
        if (!entries.contains("seed")) {
            config.seed = seed_from_environment(config.seed);
        }
        for (const auto& [key, option] : chosen->options) {
            if (option->count() > 0) {
                entries[key] = values[key];
            }
        }
        for (const auto& [key, option] : chosen->flags) {
            if (option->count() > 0) {
                entries[key] = switches[key] ? "true" : "false";
            }
        }
        apply_config(config, entries);
        if (command == "explain" && (!entries.contains("credit") || !entries.contains("risk"))) {
            throw ConfigError("explain needs --credit and --risk");
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (command == "generate") {
            return cmd_generate(config, out);
        }
        if (command == "explain") {
            return cmd_explain(config, out);
        }
        if (command == "evaluate") {
            return cmd_evaluate(config, out);
        }
        return cmd_plot(config, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("prolime");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace prolime::cli
