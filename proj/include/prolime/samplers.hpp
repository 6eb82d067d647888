#ifndef PROLIME_SAMPLERS_HPP
#define PROLIME_SAMPLERS_HPP

#include "prolime/core.hpp"
#include "prolime/linalg.hpp"
#include "prolime/rng.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace prolime {

enum class CenterMode { SampleCentered, MeanCentered };
enum class NoiseMode { Gaussian, LatinHypercube };

/// Independent per-feature perturbation: x' = center + scale * noise.
/// training_mean and per_feature_scale are the training data statistics.
struct StandardSampler {
    CenterMode center = CenterMode::SampleCentered;
    NoiseMode noise = NoiseMode::Gaussian;
    std::vector<double> per_feature_scale;
    std::vector<double> training_mean;

    void validate(std::size_t dimension) const;
};

/// Draws straight from the declared process distribution N(mean, covariance).
struct ProcessAwareSampler {
    std::vector<double> mean;
    Matrix covariance;

    void validate() const;
};

using SamplerSpec = std::variant<StandardSampler, ProcessAwareSampler>;

std::string sampler_name(const SamplerSpec& spec);

struct Neighborhood {
    FeatureVector origin;
    /// One row per sampled point, columns follow origin's features.
    Matrix points;

    std::size_t size() const { return points.rows(); }
    FeatureVector point(std::size_t i) const;
};

/// n x d matrix of stratified uniforms: column j holds (k + u_k) / n for
/// k = 0..n-1 in an independently shuffled order.
Matrix latin_hypercube_uniforms(std::size_t n, std::size_t dimension, Generator& generator);

Neighborhood sample_standard(const FeatureVector& origin, const StandardSampler& spec, std::size_t n,
                             RngStream rng);

/// origin is carried along for the kernel stage only; it does not shift
/// the distribution.
Neighborhood sample_process_aware(const FeatureVector& origin, const ProcessAwareSampler& spec,
                                  std::size_t n, RngStream rng);

Neighborhood sample_neighborhood(const FeatureVector& origin, const SamplerSpec& spec, std::size_t n,
                                 RngStream rng);

} // namespace prolime

#endif
