#ifndef PROLIME_SIMULATION_HPP
#define PROLIME_SIMULATION_HPP

#include "prolime/core.hpp"
#include "prolime/linalg.hpp"
#include "prolime/rng.hpp"
#include "prolime/samplers.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolime {

/// Names of the two loan-approval features, shared by every benchmark vector.
const FeatureNames& benchmark_feature_names();

FeatureVector credit_risk(double credit, double risk);

/// Zero-mean, unit-variance bivariate normal over (Credit, Risk) with
/// correlation rho.
struct BenchmarkDistribution {
    double rho = -0.9;
    double density_threshold = 0.01;

    void validate() const;
    std::vector<double> mean() const;
    Matrix covariance() const;
    ProcessAwareSampler sampler() const;
};

/// 1 iff |c + r| < 1 and |c - r| < 1; 0 everywhere else.
int loan_label(double credit, double risk);

std::vector<LabeledSample> generate_dataset(std::size_t n, const BenchmarkDistribution& dist, RngStream rng);

double gaussian_pdf(double credit, double risk, const BenchmarkDistribution& dist);
double gaussian_pdf(const FeatureVector& x, const BenchmarkDistribution& dist);

bool in_distribution(const FeatureVector& x, const BenchmarkDistribution& dist);

/// Accurate where the data lives and a coin flip elsewhere: one-hot of the
/// true label when pdf(x) >= threshold, otherwise one-hot of a fair
/// Bernoulli draw. The draw comes from a generator seeded by model_seed and
/// the bit pattern of x, so repeated queries at the same point agree.
class OracleModel final : public BlackBoxModel {
public:
    OracleModel(BenchmarkDistribution dist, std::uint64_t model_seed);

    ClassProbabilities predict(const FeatureVector& x) const override;
    std::size_t n_classes() const override { return 2; }
    std::size_t dimension() const override { return 2; }
    bool concurrent_safe() const override { return true; }

    const BenchmarkDistribution& distribution() const { return m_Dist; }

private:
    int coin_flip(const FeatureVector& x) const;

    BenchmarkDistribution m_Dist;
    std::uint64_t m_Seed;
};

OracleModel oracle_model(const BenchmarkDistribution& dist, std::uint64_t model_seed);

enum class Quadrant { I, II, III, IV };

const char* quadrant_name(Quadrant q);

/// intercept + credit_coef * Credit + risk_coef * Risk = 0
struct GroundTruthBoundary {
    Quadrant quadrant;
    double intercept;
    double credit_coef;
    double risk_coef;

    bool operator==(const GroundTruthBoundary&) const = default;
};

const std::array<GroundTruthBoundary, 4>& quadrant_boundaries();

/// Boundary of the Cartesian quadrant holding x; zero counts as positive.
GroundTruthBoundary ground_truth_for(double credit, double risk);
GroundTruthBoundary ground_truth_for(const FeatureVector& x);

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what);

    std::size_t line() const { return m_Line; }

private:
    std::size_t m_Line;
};

/// Header `credit,risk,label`, one row per sample.
void write_dataset_csv(std::ostream& out, const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_dataset_csv(std::istream& in);

} // namespace prolime

#endif
