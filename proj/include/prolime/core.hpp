#ifndef PROLIME_CORE_HPP
#define PROLIME_CORE_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace prolime {

using FeatureNames = std::shared_ptr<const std::vector<std::string>>;

FeatureNames make_feature_names(std::vector<std::string> names);

/// Dense, named feature vector. Names are shared between copies so that
/// neighborhoods of thousands of points do not duplicate them.
class FeatureVector {
public:
    FeatureVector(std::vector<double> values, FeatureNames names);
    FeatureVector(std::vector<double> values, std::vector<std::string> names);

    std::size_t size() const { return m_Values.size(); }
    double operator[](std::size_t i) const { return m_Values[i]; }
    std::span<const double> values() const { return m_Values; }
    const std::vector<std::string>& names() const { return *m_Names; }
    const FeatureNames& shared_names() const { return m_Names; }

    bool operator==(const FeatureVector& other) const;

private:
    std::vector<double> m_Values;
    FeatureNames m_Names;
};

struct LabeledSample {
    LabeledSample(FeatureVector x_, int y_);

    FeatureVector x;
    int y;
};

class ClassProbabilities {
public:
    explicit ClassProbabilities(std::vector<double> p);

    static ClassProbabilities one_hot(std::size_t n_classes, std::size_t hot);

    std::size_t size() const { return m_P.size(); }
    double operator[](std::size_t k) const { return m_P[k]; }
    std::span<const double> values() const { return m_P; }

    bool operator==(const ClassProbabilities&) const = default;

private:
    std::vector<double> m_P;
};

/// Opaque classifier. Implementations must be deterministic for identical
/// inputs. concurrent_safe() reports whether predict may be invoked from
/// several threads at once.
class BlackBoxModel {
public:
    virtual ~BlackBoxModel() = default;

    virtual ClassProbabilities predict(const FeatureVector& x) const = 0;
    virtual std::size_t n_classes() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual bool concurrent_safe() const { return false; }
};

/// Predicts the same probabilities everywhere.
class ConstantModel final : public BlackBoxModel {
public:
    ConstantModel(ClassProbabilities p, std::size_t dimension);

    ClassProbabilities predict(const FeatureVector& x) const override;
    std::size_t n_classes() const override { return m_P.size(); }
    std::size_t dimension() const override { return m_Dimension; }
    bool concurrent_safe() const override { return true; }

private:
    ClassProbabilities m_P;
    std::size_t m_Dimension;
};

enum class DistanceKind { Euclidean };

struct LimeHyperparameters {
    std::size_t neighborhood_size = 5000;
    double kernel_width = 0.0;
    DistanceKind distance = DistanceKind::Euclidean;
    double ridge_strength = 1.0;
    std::size_t explained_class = 1;
    // Scale neighborhood columns to unit standard deviation before fitting.
    bool standardize = false;

    /// Library defaults for a d-dimensional problem: kernel width 0.75 * sqrt(d).
    static LimeHyperparameters defaults_for(std::size_t dimension);

    void validate() const;
};

struct LocalSurrogate {
    double intercept = 0.0;
    std::vector<double> coefficients;
    std::vector<std::string> feature_names;

    void validate() const;
    double coefficient(const std::string& name) const;
};

struct RankedFeature {
    std::string name;
    double coefficient;

    bool operator==(const RankedFeature&) const = default;
};

struct Explanation {
    FeatureVector sample;
    ClassProbabilities predicted;
    LocalSurrogate surrogate;
    std::vector<RankedFeature> ranked_features;
};

/// Sorted by |coefficient| descending, ties by original feature index.
std::vector<RankedFeature> rank_features(const LocalSurrogate& surrogate);

Explanation make_explanation(FeatureVector sample, ClassProbabilities predicted, LocalSurrogate surrogate);

/// {"sample": {...}, "predicted": [...], "coefficients": {...}, "ranked": [[name, value], ...]}
std::string to_json(const Explanation& explanation, int indent = 2);

/// Shortest decimal representation that round-trips to the same double.
std::string format_real(double value);

} // namespace prolime

#endif
