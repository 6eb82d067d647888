#include "prolime/evaluation.hpp"

#include "prolime/explainer.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace prolime {
namespace {

bool iequals(const std::string& a, const std::string& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

double named_coefficient(const LocalSurrogate& surrogate, const std::string& name) {
    for (std::size_t j = 0; j < surrogate.feature_names.size(); ++j) {
        if (iequals(surrogate.feature_names[j], name)) {
            return surrogate.coefficients[j];
        }
    }
    throw std::invalid_argument("coefficient_mismatch: surrogate has no '" + name + "' feature");
}

const char* center_name(CenterMode mode) {
    return mode == CenterMode::SampleCentered ? "sample" : "mean";
}

const char* noise_name(NoiseMode mode) {
    return mode == NoiseMode::Gaussian ? "gaussian" : "lhs";
}

std::vector<std::pair<std::string, std::string>> snapshot(const ExperimentConfig& config) {
    const auto& h = config.hyper;
    std::string sizes;
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
        sizes += (i ? ";" : "") + std::to_string(config.sizes[i]);
    }
    return {
        {"master_seed", std::to_string(config.master_seed)},
        {"model_seed", std::to_string(config.model_seed)},
        {"trials", std::to_string(config.trials)},
        {"sizes", sizes},
        {"rho", format_real(config.distribution.rho)},
        {"density_threshold", format_real(config.distribution.density_threshold)},
        {"kernel_width", format_real(h.kernel_width)},
        {"distance", "euclidean"},
        {"ridge", format_real(h.ridge_strength)},
        {"explained_class", std::to_string(h.explained_class)},
        {"standardize", h.standardize ? "true" : "false"},
        {"center", center_name(config.center)},
        {"noise", noise_name(config.noise)},
    };
}

FeatureStats population_stats(const std::vector<double>& values) {
    FeatureStats stats;
    if (values.empty()) {
        stats.mean = NAN;
        stats.std = NAN;
        return stats;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    stats.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        sq += (v - stats.mean) * (v - stats.mean);
    }
    stats.std = std::sqrt(sq / static_cast<double>(values.size()));
    return stats;
}

} // namespace

MismatchResult coefficient_mismatch(const LocalSurrogate& surrogate, const GroundTruthBoundary& truth) {
    const double credit = named_coefficient(surrogate, "credit");
    const double risk = named_coefficient(surrogate, "risk");
    MismatchResult result{std::abs(credit - truth.credit_coef), std::abs(risk - truth.risk_coef), truth.quadrant};
    if (!std::isfinite(result.credit_mismatch) || !std::isfinite(result.risk_mismatch)) {
        throw std::invalid_argument("coefficient_mismatch: non-finite coefficients");
    }
    return result;
}

const char* sampler_kind_name(SamplerKind kind) {
    return kind == SamplerKind::Standard ? "standard" : "process-aware";
}

void ExperimentConfig::validate() const {
    if (trials == 0) {
        throw std::invalid_argument("experiment: at least one trial required");
    }
    if (sizes.empty() || samplers.empty()) {
        throw std::invalid_argument("experiment: need at least one neighborhood size and one sampler");
    }
    for (auto size : sizes) {
        if (size < 2) {
            throw std::invalid_argument("experiment: neighborhood sizes must be at least 2");
        }
    }
    distribution.validate();
    LimeHyperparameters probe = hyper;
    probe.neighborhood_size = sizes.front();
    probe.validate();
}

SamplerSpec make_sampler(SamplerKind kind, const ExperimentConfig& config) {
    if (kind == SamplerKind::ProcessAware) {
        return config.distribution.sampler();
    }
    // Training statistics of the benchmark: mean 0, unit variance per feature.
    return StandardSampler{config.center, config.noise, {1.0, 1.0}, config.distribution.mean()};
}

const CellReport& ExperimentReport::cell(SamplerKind sampler, std::size_t size) const {
    for (const auto& c : cells) {
        if (c.sampler == sampler && c.size == size) {
            return c;
        }
    }
    throw std::out_of_range(std::string("experiment report: no cell for ") + sampler_kind_name(sampler) +
                            " at size " + std::to_string(size));
}

bool ExperimentReport::any_cell_fully_failed() const {
    return std::any_of(cells.begin(), cells.end(), [](const CellReport& c) { return c.successful_trials == 0; });
}

FeatureVector draw_test_point(const BenchmarkDistribution& dist, RngStream rng) {
    dist.validate();
    const Matrix lower = cholesky(dist.covariance());
    Generator generator{rng};
    for (;;) {
        double z0 = generator.normal();
        double z1 = generator.normal();
        double credit = lower(0, 0) * z0;
        double risk = lower(1, 0) * z0 + lower(1, 1) * z1;
        if (gaussian_pdf(credit, risk, dist) >= dist.density_threshold) {
            return credit_risk(credit, risk);
        }
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();

    ExperimentReport report;
    report.config = config;
    for (auto sampler : config.samplers) {
        for (auto size : config.sizes) {
            report.cells.push_back(CellReport{sampler, size, {}, {}, 0, {}});
        }
    }
    std::vector<SamplerSpec> specs;
    for (const auto& cell : report.cells) {
        specs.push_back(make_sampler(cell.sampler, config));
    }

    const OracleModel model{config.distribution, config.model_seed};
    std::vector<std::vector<std::string>> errors(config.trials, std::vector<std::string>(report.cells.size()));
    report.trials.resize(config.trials);

    auto run_trial = [&](std::size_t t) {
        const RngStream trial_stream{config.master_seed, t};
        FeatureVector point = draw_test_point(config.distribution, trial_stream.child(0));
        const GroundTruthBoundary truth = ground_truth_for(point);
        TrialRecord record{point[0], point[1], truth.quadrant, {}};
        record.mismatches.resize(report.cells.size());
        for (std::size_t c = 0; c < report.cells.size(); ++c) {
            try {
                LimeHyperparameters hyper = config.hyper;
                hyper.neighborhood_size = report.cells[c].size;
                ExplainRequest request{point, model, hyper, specs[c], trial_stream.child(1 + c)};
                Explanation explanation = explain(request);
                record.mismatches[c] = coefficient_mismatch(explanation.surrogate, truth);
            } catch (const std::exception& e) {
                errors[t][c] = e.what();
            }
        }
        report.trials[t] = std::move(record);
    };

    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.trials);
    if (workers == 1) {
        for (std::size_t t = 0; t < config.trials; ++t) {
            run_trial(t);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < config.trials; t = next++) {
                    run_trial(t);
                }
            });
        }
    }

    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        std::vector<double> credit;
        std::vector<double> risk;
        auto& cell = report.cells[c];
        for (std::size_t t = 0; t < config.trials; ++t) {
            const auto& m = report.trials[t].mismatches[c];
            if (m) {
                credit.push_back(m->credit_mismatch);
                risk.push_back(m->risk_mismatch);
            } else {
                cell.failures.push_back({t, errors[t][c]});
            }
        }
        cell.successful_trials = credit.size();
        cell.credit = population_stats(credit);
        cell.risk = population_stats(risk);
    }
    return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    for (const auto& [key, value] : snapshot(report.config)) {
        out << "# " << key << '=' << value << '\n';
    }
    out << "sampler,size,feature,mean,std,trials\n";
    for (const auto& cell : report.cells) {
        for (const auto& [feature, stats] : {std::pair{"credit", cell.credit}, std::pair{"risk", cell.risk}}) {
            out << sampler_kind_name(cell.sampler) << ',' << cell.size << ',' << feature << ','
                << format_real(stats.mean) << ',' << format_real(stats.std) << ',' << cell.successful_trials
                << '\n';
        }
    }
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::ordered_json doc;
    doc["master_seed"] = report.config.master_seed;
    nlohmann::ordered_json hyper = nlohmann::ordered_json::object();
    for (const auto& [key, value] : snapshot(report.config)) {
        hyper[key] = value;
    }
    doc["config"] = std::move(hyper);
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : report.cells) {
        nlohmann::ordered_json c;
        c["sampler"] = sampler_kind_name(cell.sampler);
        c["size"] = cell.size;
        c["trials"] = cell.successful_trials;
        c["credit"] = {{"mean", cell.credit.mean}, {"std", cell.credit.std}};
        c["risk"] = {{"mean", cell.risk.mean}, {"std", cell.risk.std}};
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        for (const auto& f : cell.failures) {
            failures.push_back({{"trial", f.trial}, {"message", f.message}});
        }
        c["failures"] = std::move(failures);
        cells.push_back(std::move(c));
    }
    doc["cells"] = std::move(cells);
    nlohmann::ordered_json trials = nlohmann::ordered_json::array();
    for (const auto& trial : report.trials) {
        nlohmann::ordered_json t;
        t["credit"] = trial.credit;
        t["risk"] = trial.risk;
        t["quadrant"] = quadrant_name(trial.quadrant);
        nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
        for (const auto& m : trial.mismatches) {
            if (m) {
                mismatches.push_back({m->credit_mismatch, m->risk_mismatch});
            } else {
                mismatches.push_back(nullptr);
            }
        }
        t["mismatch"] = std::move(mismatches);
        trials.push_back(std::move(t));
    }
    doc["trials"] = std::move(trials);
    return doc.dump(2);
}

void print_summary(std::ostream& out, const ExperimentReport& report) {
    auto cell_text = [](const FeatureStats& s) {
        std::ostringstream text;
        text << std::fixed << std::setprecision(2) << s.mean << " +/- " << s.std;
        return text.str();
    };
    out << "Coefficient mismatch over " << report.config.trials << " trials (seed "
        << report.config.master_seed << ")\n";
    for (auto size : report.config.sizes) {
        out << "\n|N| = " << size << '\n';
        out << std::left << std::setw(16) << "" << std::setw(18) << "Credit" << "Risk\n";
        for (auto sampler : report.config.samplers) {
            const auto& cell = report.cell(sampler, size);
            out << std::setw(16) << sampler_kind_name(sampler) << std::setw(18) << cell_text(cell.credit)
                << cell_text(cell.risk);
            if (!cell.failures.empty()) {
                out << "  (" << cell.failures.size() << " failed)";
            }
            out << '\n';
        }
    }
    out << std::right;
}

} // namespace prolime
