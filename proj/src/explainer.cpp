#include "prolime/explainer.hpp"

#include "prolime/surrogate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace prolime {
namespace {

// Rescale columns to unit (unweighted) standard deviation; constant columns are left alone.
std::vector<double> standardize_columns(Matrix& features) {
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();
    std::vector<double> scale(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += features(i, j);
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double diff = features(i, j) - mean;
            var += diff * diff;
        }
        double sd = std::sqrt(var / static_cast<double>(n));
        if (sd > 0.0) {
            scale[j] = sd;
            for (std::size_t i = 0; i < n; ++i) {
                features(i, j) /= sd;
            }
        }
    }
    return scale;
}

} // namespace

const char* stage_name(Stage stage) {
    switch (stage) {
    case Stage::Validate:
        return "validate";
    case Stage::Sample:
        return "sample";
    case Stage::Predict:
        return "predict";
    case Stage::Label:
        return "label";
    case Stage::Weight:
        return "weight";
    case Stage::Fit:
        return "fit";
    }
    return "unknown";
}

ExplainError::ExplainError(Stage stage, const std::string& what)
    : std::runtime_error(std::string("[") + stage_name(stage) + "] " + what), m_Stage{stage} {
}

Explanation explain_neighborhood(const BlackBoxModel& model, const LimeHyperparameters& hyper,
                                 const Neighborhood& neighborhood) {
    try {
        hyper.validate();
        if (model.dimension() != neighborhood.origin.size()) {
            throw std::invalid_argument("model dimension " + std::to_string(model.dimension()) +
                                        " differs from sample dimension " +
                                        std::to_string(neighborhood.origin.size()));
        }
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Validate, e.what());
    }

    std::optional<ClassProbabilities> predicted;
    try {
        predicted = model.predict(neighborhood.origin);
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Predict, e.what());
    }

    WeightedDesign design;
    try {
        design.targets = label_neighborhood(model, neighborhood, hyper.explained_class);
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Label, e.what());
    }

    try {
        design.weights = kernel_weights(neighborhood, KernelSpec{hyper.kernel_width, hyper.distance});
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Weight, e.what());
    }

    try {
        design.features = neighborhood.points;
        if (hyper.standardize) {
            standardize_columns(design.features);
        }
        LocalSurrogate surrogate =
            fit_weighted_ridge(design, hyper.ridge_strength, neighborhood.origin.names());
        return make_explanation(neighborhood.origin, std::move(*predicted), std::move(surrogate));
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Fit, e.what());
    }
}

Explanation explain(const ExplainRequest& request) {
    try {
        request.hyper.validate();
    } catch (const std::exception& e) {
        throw ExplainError(Stage::Validate, e.what());
    }
    Neighborhood neighborhood = [&] {
        try {
            return sample_neighborhood(request.sample, request.sampler, request.hyper.neighborhood_size,
                                       request.rng);
        } catch (const std::exception& e) {
            throw ExplainError(Stage::Sample, e.what());
        }
    }();
    return explain_neighborhood(request.model, request.hyper, neighborhood);
}

std::vector<BatchItem> explain_batch(const std::vector<FeatureVector>& samples, const BlackBoxModel& model,
                                     const LimeHyperparameters& hyper, const SamplerSpec& sampler,
                                     std::uint64_t master_seed, std::size_t threads) {
    if (samples.empty()) {
        throw std::invalid_argument("explain_batch: no samples");
    }
    std::vector<BatchItem> results(samples.size());
    auto run_one = [&](std::size_t k) {
        try {
            ExplainRequest request{samples[k], model, hyper, sampler, RngStream{master_seed, k}};
            results[k].explanation = explain(request);
        } catch (const std::exception& e) {
            results[k].error = e.what();
        }
    };

    std::size_t workers = model.concurrent_safe() ? std::max<std::size_t>(threads, 1) : 1;
    workers = std::min(workers, samples.size());
    if (workers == 1) {
        for (std::size_t k = 0; k < samples.size(); ++k) {
            run_one(k);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < samples.size(); k = next++) {
                run_one(k);
            }
        });
    }
    pool.clear();
    return results;
}

} // namespace prolime
