#include "prolime/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prolime {

FeatureNames make_feature_names(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

FeatureVector::FeatureVector(std::vector<double> values, FeatureNames names)
    : m_Values{std::move(values)}, m_Names{std::move(names)} {
    if (m_Names == nullptr) {
        throw std::invalid_argument("FeatureVector: feature names missing");
    }
    if (m_Values.empty()) {
        throw std::invalid_argument("FeatureVector: at least one feature required");
    }
    if (m_Values.size() != m_Names->size()) {
        throw std::invalid_argument("FeatureVector: " + std::to_string(m_Values.size()) +
                                    " values but " + std::to_string(m_Names->size()) + " names");
    }
    for (std::size_t i = 0; i < m_Values.size(); ++i) {
        if (!std::isfinite(m_Values[i])) {
            throw std::invalid_argument("FeatureVector: non-finite value for feature '" +
                                        (*m_Names)[i] + "'");
        }
    }
}

FeatureVector::FeatureVector(std::vector<double> values, std::vector<std::string> names)
    : FeatureVector(std::move(values), make_feature_names(std::move(names))) {
}

bool FeatureVector::operator==(const FeatureVector& other) const {
    return m_Values == other.m_Values && *m_Names == *other.m_Names;
}

LabeledSample::LabeledSample(FeatureVector x_, int y_) : x{std::move(x_)}, y{y_} {
    if (y != 0 && y != 1) {
        throw std::invalid_argument("LabeledSample: label must be 0 or 1, got " + std::to_string(y));
    }
}

ClassProbabilities::ClassProbabilities(std::vector<double> p) : m_P{std::move(p)} {
    if (m_P.empty()) {
        throw std::invalid_argument("ClassProbabilities: no classes");
    }
    double total = 0.0;
    for (double v : m_P) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("ClassProbabilities: entry outside [0, 1]");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("ClassProbabilities: entries sum to " + format_real(total));
    }
}

ClassProbabilities ClassProbabilities::one_hot(std::size_t n_classes, std::size_t hot) {
    if (hot >= n_classes) {
        throw std::invalid_argument("ClassProbabilities::one_hot: class index out of range");
    }
    std::vector<double> p(n_classes, 0.0);
    p[hot] = 1.0;
    return ClassProbabilities{std::move(p)};
}

ConstantModel::ConstantModel(ClassProbabilities p, std::size_t dimension)
    : m_P{std::move(p)}, m_Dimension{dimension} {
    if (dimension == 0) {
        throw std::invalid_argument("ConstantModel: dimension must be positive");
    }
}

ClassProbabilities ConstantModel::predict(const FeatureVector& x) const {
    if (x.size() != m_Dimension) {
        throw std::invalid_argument("ConstantModel: expected " + std::to_string(m_Dimension) +
                                    " features, got " + std::to_string(x.size()));
    }
    return m_P;
}

LimeHyperparameters LimeHyperparameters::defaults_for(std::size_t dimension) {
    LimeHyperparameters result;
    result.kernel_width = 0.75 * std::sqrt(static_cast<double>(dimension));
    return result;
}

void LimeHyperparameters::validate() const {
    if (neighborhood_size < 2) {
        throw std::invalid_argument("neighborhood_size must be at least 2");
    }
    if (!(kernel_width > 0.0) || !std::isfinite(kernel_width)) {
        throw std::invalid_argument("kernel_width must be a positive finite number");
    }
    if (!(ridge_strength >= 0.0) || !std::isfinite(ridge_strength)) {
        throw std::invalid_argument("ridge_strength must be a nonnegative finite number");
    }
}

void LocalSurrogate::validate() const {
    if (coefficients.size() != feature_names.size()) {
        throw std::invalid_argument("LocalSurrogate: coefficient/name count mismatch");
    }
    if (!std::isfinite(intercept) ||
        !std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return std::isfinite(c); })) {
        throw std::invalid_argument("LocalSurrogate: non-finite entry");
    }
}

double LocalSurrogate::coefficient(const std::string& name) const {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) {
        throw std::out_of_range("LocalSurrogate: no feature named '" + name + "'");
    }
    return coefficients[static_cast<std::size_t>(it - feature_names.begin())];
}

std::vector<RankedFeature> rank_features(const LocalSurrogate& surrogate) {
    std::vector<std::size_t> order(surrogate.coefficients.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(surrogate.coefficients[a]) > std::abs(surrogate.coefficients[b]);
    });
    std::vector<RankedFeature> result;
    result.reserve(order.size());
    for (std::size_t i : order) {
        result.push_back({surrogate.feature_names[i], surrogate.coefficients[i]});
    }
    return result;
}

Explanation make_explanation(FeatureVector sample, ClassProbabilities predicted, LocalSurrogate surrogate) {
    surrogate.validate();
    if (surrogate.coefficients.size() != sample.size()) {
        throw std::invalid_argument("make_explanation: surrogate dimension differs from sample");
    }
    auto ranked = rank_features(surrogate);
    return Explanation{std::move(sample), std::move(predicted), std::move(surrogate), std::move(ranked)};
}

std::string to_json(const Explanation& explanation, int indent) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json sample = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < explanation.sample.size(); ++i) {
        sample[explanation.sample.names()[i]] = explanation.sample[i];
    }
    doc["sample"] = std::move(sample);
    doc["predicted"] = std::vector<double>(explanation.predicted.values().begin(),
                                           explanation.predicted.values().end());
    nlohmann::ordered_json coefficients = nlohmann::ordered_json::object();
    const auto& surrogate = explanation.surrogate;
    for (std::size_t i = 0; i < surrogate.coefficients.size(); ++i) {
        coefficients[surrogate.feature_names[i]] = surrogate.coefficients[i];
    }
    doc["coefficients"] = std::move(coefficients);
    nlohmann::ordered_json ranked = nlohmann::ordered_json::array();
    for (const auto& feature : explanation.ranked_features) {
        ranked.push_back({feature.name, feature.coefficient});
    }
    doc["ranked"] = std::move(ranked);
    doc["intercept"] = surrogate.intercept;
    return doc.dump(indent);
}

std::string format_real(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_real: conversion failed");
    }
    return std::string(buffer, end);
}

} // namespace prolime
