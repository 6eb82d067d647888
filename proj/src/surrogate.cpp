#include "prolime/surrogate.hpp"

#include <cmath>

namespace prolime {

void KernelSpec::validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw std::invalid_argument("kernel width must be positive and finite");
    }
}

double distance(std::span<const double> x, std::span<const double> z, DistanceKind kind) {
    if (x.size() != z.size()) {
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(z.size()) + ")");
    }
    switch (kind) {
    case DistanceKind::Euclidean: {
        double sum = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double diff = x[j] - z[j];
            sum += diff * diff;
        }
        return std::sqrt(sum);
    }
    }
    throw std::invalid_argument("distance: unknown distance kind");
}

double kernel_weight(std::span<const double> x, std::span<const double> z, const KernelSpec& spec) {
    spec.validate();
    double d = distance(x, z, spec.distance);
    return std::exp(-(d * d) / (spec.width * spec.width));
}

double kernel_weight(const FeatureVector& x, const FeatureVector& z, const KernelSpec& spec) {
    return kernel_weight(x.values(), z.values(), spec);
}

std::vector<double> kernel_weights(const Neighborhood& neighborhood, const KernelSpec& spec) {
    std::vector<double> weights(neighborhood.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = kernel_weight(neighborhood.origin.values(), neighborhood.points.row(i), spec);
    }
    return weights;
}

ModelError::ModelError(std::size_t index, const std::string& what)
    : std::runtime_error("model failed at neighborhood point " + std::to_string(index) + ": " + what),
      m_Index{index} {
}

std::vector<double> label_neighborhood(const BlackBoxModel& model, const Neighborhood& neighborhood,
                                       std::size_t explained_class) {
    if (neighborhood.size() == 0) {
        throw std::invalid_argument("label_neighborhood: empty neighborhood");
    }
    if (model.dimension() != neighborhood.origin.size()) {
        throw std::invalid_argument("label_neighborhood: model expects " + std::to_string(model.dimension()) +
                                    " features, neighborhood has " +
                                    std::to_string(neighborhood.origin.size()));
    }
    if (explained_class >= model.n_classes()) {
        throw std::invalid_argument("label_neighborhood: explained class " + std::to_string(explained_class) +
                                    " out of range for a " + std::to_string(model.n_classes()) +
                                    "-class model");
    }
    std::vector<double> targets(neighborhood.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        try {
            ClassProbabilities p = model.predict(neighborhood.point(i));
            if (p.size() != model.n_classes()) {
                throw std::runtime_error("returned " + std::to_string(p.size()) + " class probabilities");
            }
            targets[i] = p[explained_class];
        } catch (const std::exception& e) {
            throw ModelError(i, e.what());
        }
    }
    return targets;
}

void WeightedDesign::validate() const {
    const std::size_t n = features.rows();
    if (n == 0 || features.cols() == 0) {
        throw std::invalid_argument("weighted design: empty feature matrix");
    }
    if (targets.size() != n || weights.size() != n) {
        throw std::invalid_argument("weighted design: row counts disagree (features " + std::to_string(n) +
                                    ", targets " + std::to_string(targets.size()) + ", weights " +
                                    std::to_string(weights.size()) + ")");
    }
    bool any_positive = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) {
            throw std::invalid_argument("weighted design: weight " + std::to_string(i) + " outside [0, 1]");
        }
        if (!std::isfinite(targets[i])) {
            throw std::invalid_argument("weighted design: non-finite target at row " + std::to_string(i));
        }
        any_positive = any_positive || weights[i] > 0.0;
    }
    if (!any_positive) {
        throw std::invalid_argument("weighted design: every weight is zero");
    }
}

LocalSurrogate fit_weighted_ridge(const WeightedDesign& design, double ridge_strength,
                                  std::vector<std::string> feature_names) {
    design.validate();
    if (!(ridge_strength >= 0.0) || !std::isfinite(ridge_strength)) {
        throw std::invalid_argument("fit_weighted_ridge: ridge strength must be nonnegative and finite");
    }
    const std::size_t n = design.features.rows();
    const std::size_t d = design.features.cols();
    if (feature_names.size() != d) {
        throw std::invalid_argument("fit_weighted_ridge: expected " + std::to_string(d) + " feature names");
    }

    double total_weight = 0.0;
    double target_mean = 0.0;
    std::vector<double> feature_mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = design.weights[i];
        total_weight += w;
        target_mean += w * design.targets[i];
        auto row = design.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            feature_mean[j] += w * row[j];
        }
    }
    target_mean /= total_weight;
    for (auto& m : feature_mean) {
        m /= total_weight;
    }

    Matrix gram(d, d);
    std::vector<double> rhs(d, 0.0);
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = design.weights[i];
        if (w == 0.0) {
            continue;
        }
        auto row = design.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            centered[j] = row[j] - feature_mean[j];
        }
        const double t = design.targets[i] - target_mean;
        for (std::size_t a = 0; a < d; ++a) {
            const double wa = w * centered[a];
            rhs[a] += wa * t;
            for (std::size_t b = 0; b <= a; ++b) {
                gram(a, b) += wa * centered[b];
            }
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        gram(a, a) += ridge_strength;
        for (std::size_t b = 0; b < a; ++b) {
            gram(b, a) = gram(a, b);
        }
    }

    Matrix lower;
    try {
        lower = cholesky(gram);
    } catch (const NotPositiveDefinite& e) {
        throw SingularSystem(std::string("fit_weighted_ridge: normal equations are singular (") + e.what() +
                             "); use a ridge strength > 0");
    }
    // Near-singular systems factor but produce garbage; reject those too when unregularized.
    if (ridge_strength == 0.0) {
        double max_diag = 0.0;
        double min_diag = INFINITY;
        for (std::size_t a = 0; a < d; ++a) {
            max_diag = std::max(max_diag, lower(a, a));
            min_diag = std::min(min_diag, lower(a, a));
        }
        if (min_diag <= max_diag * 1e-7) {
            throw SingularSystem("fit_weighted_ridge: normal equations are numerically singular; "
                                 "use a ridge strength > 0");
        }
    }

    LocalSurrogate surrogate;
    surrogate.coefficients = cholesky_solve(lower, rhs);
    surrogate.intercept = target_mean;
    for (std::size_t j = 0; j < d; ++j) {
        surrogate.intercept -= surrogate.coefficients[j] * feature_mean[j];
    }
    surrogate.feature_names = std::move(feature_names);
    surrogate.validate();
    return surrogate;
}

} // namespace prolime
