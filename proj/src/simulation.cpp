#include "prolime/simulation.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

namespace prolime {

const FeatureNames& benchmark_feature_names() {
    static const FeatureNames names = make_feature_names({"Credit", "Risk"});
    return names;
}

FeatureVector credit_risk(double credit, double risk) {
    return FeatureVector{{credit, risk}, benchmark_feature_names()};
}

void BenchmarkDistribution::validate() const {
    if (!(std::abs(rho) < 1.0)) {
        throw std::invalid_argument("benchmark distribution: |rho| must be below 1");
    }
    if (!(density_threshold > 0.0)) {
        throw std::invalid_argument("benchmark distribution: density threshold must be positive");
    }
}

std::vector<double> BenchmarkDistribution::mean() const {
    return {0.0, 0.0};
}

Matrix BenchmarkDistribution::covariance() const {
    return Matrix{{1.0, rho}, {rho, 1.0}};
}

ProcessAwareSampler BenchmarkDistribution::sampler() const {
    return ProcessAwareSampler{mean(), covariance()};
}

int loan_label(double credit, double risk) {
    return std::abs(credit + risk) < 1.0 && std::abs(credit - risk) < 1.0 ? 1 : 0;
}

std::vector<LabeledSample> generate_dataset(std::size_t n, const BenchmarkDistribution& dist, RngStream rng) {
    dist.validate();
    if (n == 0) {
        throw std::invalid_argument("generate_dataset: n must be positive");
    }
    Neighborhood draws = sample_process_aware(credit_risk(0.0, 0.0), dist.sampler(), n, rng);
    std::vector<LabeledSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = draws.points.row(i);
        samples.emplace_back(credit_risk(row[0], row[1]), loan_label(row[0], row[1]));
    }
    return samples;
}

namespace {

// Quadratic form x^T Sigma^{-1} x for the unit-variance correlation matrix.
double mahalanobis_squared(double credit, double risk, double rho) {
    return (credit * credit - 2.0 * rho * credit * risk + risk * risk) / (1.0 - rho * rho);
}

double log_normalizer(double rho) {
    return -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(1.0 - rho * rho);
}

} // namespace

double gaussian_pdf(double credit, double risk, const BenchmarkDistribution& dist) {
    return std::exp(log_normalizer(dist.rho) - 0.5 * mahalanobis_squared(credit, risk, dist.rho));
}

double gaussian_pdf(const FeatureVector& x, const BenchmarkDistribution& dist) {
    if (x.size() != 2) {
        throw std::invalid_argument("gaussian_pdf: expected 2 features");
    }
    return gaussian_pdf(x[0], x[1], dist);
}

bool in_distribution(const FeatureVector& x, const BenchmarkDistribution& dist) {
    return gaussian_pdf(x, dist) >= dist.density_threshold;
}

OracleModel::OracleModel(BenchmarkDistribution dist, std::uint64_t model_seed)
    : m_Dist{dist}, m_Seed{model_seed} {
    m_Dist.validate();
}

ClassProbabilities OracleModel::predict(const FeatureVector& x) const {
    if (x.size() != 2) {
        throw std::invalid_argument("oracle model: expected 2 features, got " + std::to_string(x.size()));
    }
    if (gaussian_pdf(x[0], x[1], m_Dist) >= m_Dist.density_threshold) {
        return ClassProbabilities::one_hot(2, static_cast<std::size_t>(loan_label(x[0], x[1])));
    }
    return ClassProbabilities::one_hot(2, static_cast<std::size_t>(coin_flip(x)));
}

int OracleModel::coin_flip(const FeatureVector& x) const {
    std::uint64_t key = mix64(m_Seed);
    for (double value : x.values()) {
        // +0.0 and -0.0 are the same point.
        double canonical = value == 0.0 ? 0.0 : value;
        key = mix64(key ^ std::bit_cast<std::uint64_t>(canonical));
    }
    Generator generator{RngStream{m_Seed, key}};
    return static_cast<int>(generator.next() >> 63);
}

OracleModel oracle_model(const BenchmarkDistribution& dist, std::uint64_t model_seed) {
    return OracleModel{dist, model_seed};
}

const char* quadrant_name(Quadrant q) {
    switch (q) {
    case Quadrant::I:
        return "I";
    case Quadrant::II:
        return "II";
    case Quadrant::III:
        return "III";
    case Quadrant::IV:
        return "IV";
    }
    return "?";
}

const std::array<GroundTruthBoundary, 4>& quadrant_boundaries() {
    static const std::array<GroundTruthBoundary, 4> boundaries{{
        {Quadrant::I, 1.0, -1.0, -1.0},
        {Quadrant::II, 1.0, 1.0, -1.0},
        {Quadrant::III, 1.0, 1.0, 1.0},
        {Quadrant::IV, 1.0, -1.0, 1.0},
    }};
    return boundaries;
}

GroundTruthBoundary ground_truth_for(double credit, double risk) {
    const bool credit_positive = credit >= 0.0;
    const bool risk_positive = risk >= 0.0;
    const auto& b = quadrant_boundaries();
    if (credit_positive) {
        return risk_positive ? b[0] : b[3];
    }
    return risk_positive ? b[1] : b[2];
}

GroundTruthBoundary ground_truth_for(const FeatureVector& x) {
    if (x.size() != 2) {
        throw std::invalid_argument("ground_truth_for: expected 2 features");
    }
    return ground_truth_for(x[0], x[1]);
}

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), m_Line{line} {
}

void write_dataset_csv(std::ostream& out, const std::vector<LabeledSample>& samples) {
    out << "credit,risk,label\n";
    for (const auto& sample : samples) {
        out << format_real(sample.x[0]) << ',' << format_real(sample.x[1]) << ',' << sample.y << '\n';
    }
}

namespace {

double parse_real(std::string_view field, std::size_t line, const char* column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw CsvError(line, std::string("invalid ") + column + " value '" + std::string(field) + "'");
    }
    return value;
}

} // namespace

std::vector<LabeledSample> read_dataset_csv(std::istream& in) {
    std::string text;
    std::size_t line_number = 0;
    if (!std::getline(in, text)) {
        throw CsvError(1, "missing header");
    }
    ++line_number;
    if (!text.empty() && text.back() == '\r') {
        text.pop_back();
    }
    if (text != "credit,risk,label") {
        throw CsvError(1, "expected header 'credit,risk,label'");
    }
    std::vector<LabeledSample> samples;
    while (std::getline(in, text)) {
        ++line_number;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        if (text.empty()) {
            continue;
        }
        std::string_view row{text};
        auto first = row.find(',');
        auto second = first == std::string_view::npos ? first : row.find(',', first + 1);
        if (second == std::string_view::npos || row.find(',', second + 1) != std::string_view::npos) {
            throw CsvError(line_number, "expected 3 fields");
        }
        double credit = parse_real(row.substr(0, first), line_number, "credit");
        double risk = parse_real(row.substr(first + 1, second - first - 1), line_number, "risk");
        std::string_view label = row.substr(second + 1);
        if (label != "0" && label != "1") {
            throw CsvError(line_number, "label must be 0 or 1, got '" + std::string(label) + "'");
        }
        samples.emplace_back(credit_risk(credit, risk), label == "1" ? 1 : 0);
    }
    return samples;
}

} // namespace prolime
