#ifndef PROLIME_EVALUATION_HPP
#define PROLIME_EVALUATION_HPP

#include "prolime/core.hpp"
#include "prolime/samplers.hpp"
#include "prolime/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prolime {

struct MismatchResult {
    double credit_mismatch;
    double risk_mismatch;
    Quadrant quadrant;
};

/// Per-feature absolute difference between the surrogate's Credit/Risk
/// coefficients and the boundary's. The intercept is ignored.
MismatchResult coefficient_mismatch(const LocalSurrogate& surrogate, const GroundTruthBoundary& truth);

enum class SamplerKind { Standard, ProcessAware };

const char* sampler_kind_name(SamplerKind kind);

struct ExperimentConfig {
    std::size_t trials = 100;
    std::vector<std::size_t> sizes{1000, 5000};
    std::vector<SamplerKind> samplers{SamplerKind::Standard, SamplerKind::ProcessAware};
    std::uint64_t master_seed = 42;
    /// Seed of the oracle model's off-distribution coin flips.
    std::uint64_t model_seed = 42;
    BenchmarkDistribution distribution;
    /// neighborhood_size is overridden per cell.
    LimeHyperparameters hyper = LimeHyperparameters::defaults_for(2);
    CenterMode center = CenterMode::SampleCentered;
    NoiseMode noise = NoiseMode::Gaussian;
    std::size_t threads = 1;

    void validate() const;
};

/// The sampler a cell uses: the standard sampler takes the benchmark's
/// training statistics (zero mean, unit standard deviations).
SamplerSpec make_sampler(SamplerKind kind, const ExperimentConfig& config);

struct FeatureStats {
    double mean = 0.0;
    double std = 0.0;
};

struct CellFailure {
    std::size_t trial;
    std::string message;
};

struct CellReport {
    SamplerKind sampler;
    std::size_t size;
    FeatureStats credit;
    FeatureStats risk;
    std::size_t successful_trials = 0;
    std::vector<CellFailure> failures;
};

struct TrialRecord {
    double credit;
    double risk;
    Quadrant quadrant;
    /// One entry per cell, in ExperimentReport::cells order; empty on failure.
    std::vector<std::optional<MismatchResult>> mismatches;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CellReport> cells;
    std::vector<TrialRecord> trials;

    const CellReport& cell(SamplerKind sampler, std::size_t size) const;
    bool any_cell_fully_failed() const;
};

/// Draws a test point from the benchmark distribution, redrawing until it
/// is in distribution.
FeatureVector draw_test_point(const BenchmarkDistribution& dist, RngStream rng);

/// Each trial draws one in-distribution test point and explains it in
/// every (sampler, size) cell; cells of a trial share that point. Means
/// and population standard deviations are accumulated in trial order.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// `sampler,size,feature,mean,std,trials` preceded by `# key=value` lines
/// recording the seed and hyperparameters.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
std::string report_to_json(const ExperimentReport& report);

/// Human-readable table with one block per neighborhood size.
void print_summary(std::ostream& out, const ExperimentReport& report);

} // namespace prolime

#endif
