#include "prolime/samplers.hpp"

#include "prolime/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prolime {

void StandardSampler::validate(std::size_t dimension) const {
    if (per_feature_scale.size() != dimension) {
        throw std::invalid_argument("standard sampler: per_feature_scale has " +
                                    std::to_string(per_feature_scale.size()) + " entries, expected " +
                                    std::to_string(dimension));
    }
    for (double scale : per_feature_scale) {
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw std::invalid_argument("standard sampler: per-feature scales must be positive and finite");
        }
    }
    if (center == CenterMode::MeanCentered && training_mean.size() != dimension) {
        throw std::invalid_argument("standard sampler: mean-centered sampling needs a training mean of length " +
                                    std::to_string(dimension));
    }
}

void ProcessAwareSampler::validate() const {
    if (covariance.rows() != covariance.cols()) {
        throw std::invalid_argument("process-aware sampler: covariance must be square");
    }
    if (mean.size() != covariance.rows()) {
        throw std::invalid_argument("process-aware sampler: mean length " + std::to_string(mean.size()) +
                                    " differs from covariance dimension " +
                                    std::to_string(covariance.rows()));
    }
    if (!covariance.is_symmetric(1e-12)) {
        throw std::invalid_argument("process-aware sampler: covariance is not symmetric within 1e-12");
    }
}

std::string sampler_name(const SamplerSpec& spec) {
    return std::holds_alternative<StandardSampler>(spec) ? "standard" : "process-aware";
}

FeatureVector Neighborhood::point(std::size_t i) const {
    auto row = points.row(i);
    return FeatureVector{std::vector<double>(row.begin(), row.end()), origin.shared_names()};
}

Matrix latin_hypercube_uniforms(std::size_t n, std::size_t dimension, Generator& generator) {
    Matrix result(n, dimension);
    std::vector<std::size_t> strata(n);
    const auto count = static_cast<double>(n);
    for (std::size_t j = 0; j < dimension; ++j) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        generator.shuffle(std::span<std::size_t>{strata});
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<double>(strata[i]);
            const double lo = k / count;
            const double hi = (k + 1.0) / count;
            // uniform_open keeps the pre-image strictly inside (0, 1) for the quantile map.
            double u = (k + generator.uniform_open()) / count;
            // Rounding of k + v can land on the upper edge.
            u = std::clamp(u, lo, std::nextafter(hi, 0.0));
            result(i, j) = u;
        }
    }
    return result;
}

Neighborhood sample_standard(const FeatureVector& origin, const StandardSampler& spec, std::size_t n,
                             RngStream rng) {
    const std::size_t d = origin.size();
    spec.validate(d);
    if (n == 0) {
        throw std::invalid_argument("standard sampler: neighborhood size must be positive");
    }
    std::span<const double> center =
        spec.center == CenterMode::SampleCentered ? origin.values() : std::span<const double>{spec.training_mean};

    Generator generator{rng};
    Matrix points(n, d);
    if (spec.noise == NoiseMode::Gaussian) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                points(i, j) = center[j] + spec.per_feature_scale[j] * generator.normal();
            }
        }
    } else {
        Matrix uniforms = latin_hypercube_uniforms(n, d, generator);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                points(i, j) = center[j] + spec.per_feature_scale[j] * inverse_normal_cdf(uniforms(i, j));
            }
        }
    }
    return Neighborhood{origin, std::move(points)};
}

Neighborhood sample_process_aware(const FeatureVector& origin, const ProcessAwareSampler& spec,
                                  std::size_t n, RngStream rng) {
    spec.validate();
    const std::size_t d = spec.mean.size();
    if (origin.size() != d) {
        throw std::invalid_argument("process-aware sampler: origin has " + std::to_string(origin.size()) +
                                    " features, distribution has " + std::to_string(d));
    }
    if (n == 0) {
        throw std::invalid_argument("process-aware sampler: neighborhood size must be positive");
    }
    const Matrix lower = cholesky(spec.covariance);

    Generator generator{rng};
    Matrix points(n, d);
    std::vector<double> z(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& value : z) {
            value = generator.normal();
        }
        for (std::size_t r = 0; r < d; ++r) {
            double value = spec.mean[r];
            for (std::size_t k = 0; k <= r; ++k) {
                value += lower(r, k) * z[k];
            }
            points(i, r) = value;
        }
    }
    return Neighborhood{origin, std::move(points)};
}

Neighborhood sample_neighborhood(const FeatureVector& origin, const SamplerSpec& spec, std::size_t n,
                                 RngStream rng) {
    return std::visit(
        [&](const auto& sampler) {
            using T = std::decay_t<decltype(sampler)>;
            if constexpr (std::is_same_v<T, StandardSampler>) {
                return sample_standard(origin, sampler, n, rng);
            } else {
                return sample_process_aware(origin, sampler, n, rng);
            }
        },
        spec);
}

} // namespace prolime
