#ifndef PROLIME_EXPLAINER_HPP
#define PROLIME_EXPLAINER_HPP

#include "prolime/core.hpp"
#include "prolime/rng.hpp"
#include "prolime/samplers.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolime {

struct ExplainRequest {
    FeatureVector sample;
    const BlackBoxModel& model;
    LimeHyperparameters hyper;
    SamplerSpec sampler;
    RngStream rng;
};

enum class Stage { Validate, Sample, Predict, Label, Weight, Fit };

const char* stage_name(Stage stage);

/// Error raised by explain(), tagged with the pipeline stage that failed.
class ExplainError : public std::runtime_error {
public:
    ExplainError(Stage stage, const std::string& what);

    Stage stage() const { return m_Stage; }

private:
    Stage m_Stage;
};

/// Sample a neighborhood, then hand it to explain_neighborhood().
Explanation explain(const ExplainRequest& request);

/// Everything after the sampling stage: label with the model, weight by
/// proximity to neighborhood.origin, fit the surrogate. Every sampler goes
/// through this same routine.
Explanation explain_neighborhood(const BlackBoxModel& model, const LimeHyperparameters& hyper,
                                 const Neighborhood& neighborhood);

struct BatchItem {
    std::optional<Explanation> explanation;
    std::string error;

    bool ok() const { return explanation.has_value(); }
};

/// Element k is explain() with RngStream{master_seed, k}. Failures are
/// recorded per element. Work is spread over up to `threads` threads when
/// the model declares predict() concurrency-safe; the result never
/// depends on scheduling.
std::vector<BatchItem> explain_batch(const std::vector<FeatureVector>& samples, const BlackBoxModel& model,
                                     const LimeHyperparameters& hyper, const SamplerSpec& sampler,
                                     std::uint64_t master_seed, std::size_t threads = 1);

} // namespace prolime

#endif
