#ifndef PROLIME_SURROGATE_HPP
#define PROLIME_SURROGATE_HPP

#include "prolime/core.hpp"
#include "prolime/linalg.hpp"
#include "prolime/samplers.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolime {

struct KernelSpec {
    double width = 1.0;
    DistanceKind distance = DistanceKind::Euclidean;

    void validate() const;
};

double distance(std::span<const double> x, std::span<const double> z, DistanceKind kind);

/// Exponential proximity kernel exp(-D(x, z)^2 / width^2).
double kernel_weight(std::span<const double> x, std::span<const double> z, const KernelSpec& spec);
double kernel_weight(const FeatureVector& x, const FeatureVector& z, const KernelSpec& spec);

/// Kernel weight of every neighborhood point relative to its origin.
std::vector<double> kernel_weights(const Neighborhood& neighborhood, const KernelSpec& spec);

/// Model failure while labelling a neighborhood; index() is the offending point.
class ModelError : public std::runtime_error {
public:
    ModelError(std::size_t index, const std::string& what);

    std::size_t index() const { return m_Index; }

private:
    std::size_t m_Index;
};

/// model.predict(point)[explained_class] for every point, in order.
std::vector<double> label_neighborhood(const BlackBoxModel& model, const Neighborhood& neighborhood,
                                       std::size_t explained_class);

struct WeightedDesign {
    Matrix features;
    std::vector<double> targets;
    std::vector<double> weights;

    void validate() const;
};

/// The normal equations were singular; only possible with ridge_strength == 0.
class SingularSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weighted ridge regression with an unpenalized intercept:
///
///   argmin_{b0, b} sum_i w_i (t_i - b0 - b.x_i)^2 + ridge_strength * |b|^2
///
/// Features and targets are centered on their weighted means, which
/// eliminates the intercept, and the remaining d x d system is solved by
/// Cholesky. The intercept is recovered as t_bar - b.x_bar.
LocalSurrogate fit_weighted_ridge(const WeightedDesign& design, double ridge_strength,
                                  std::vector<std::string> feature_names);

} // namespace prolime

#endif
