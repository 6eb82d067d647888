#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "prolime/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace prolime;

namespace {

struct Instance {
    std::vector<std::vector<double>> x;
    std::vector<double> t;
    std::vector<double> w;
};

Instance random_instance(std::mt19937_64& engine, std::size_t n, std::size_t d) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    Instance inst;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d);
        for (auto& v : row) {
            v = normal(engine);
        }
        inst.x.push_back(row);
        inst.t.push_back(normal(engine));
        inst.w.push_back(weight(engine));
    }
    return inst;
}

WeightedDesign design_of(const Instance& inst) {
    const std::size_t d = inst.x.front().size();
    WeightedDesign design{Matrix(inst.x.size(), d), inst.t, inst.w};
    for (std::size_t i = 0; i < inst.x.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            design.features(i, j) = inst.x[i][j];
        }
    }
    return design;
}

std::vector<std::string> names(std::size_t d) {
    std::vector<std::string> result;
    for (std::size_t j = 0; j < d; ++j) {
        result.push_back("x" + std::to_string(j));
    }
    return result;
}

void check_close(const LocalSurrogate& a, const LocalSurrogate& b, double tolerance) {
    CHECK(std::abs(a.intercept - b.intercept) <= tolerance);
    for (std::size_t j = 0; j < a.coefficients.size(); ++j) {
        CHECK(std::abs(a.coefficients[j] - b.coefficients[j]) <= tolerance);
    }
}

FeatureVector fv(std::vector<double> v) {
    std::vector<std::string> n;
    for (std::size_t j = 0; j < v.size(); ++j) {
        n.push_back("f" + std::to_string(j));
    }
    return FeatureVector(std::move(v), std::move(n));
}

} // namespace

TEST_CASE("kernel weight examples") {
    const KernelSpec unit{1.0, DistanceKind::Euclidean};
    CHECK(kernel_weight(fv({0.3, -0.2}), fv({0.3, -0.2}), unit) == 1.0);
    CHECK(std::abs(kernel_weight(fv({0.0, 0.0}), fv({1.0, 0.0}), unit) - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(kernel_weight(fv({0.0, 0.0}), fv({3.0, 4.0}), KernelSpec{5.0}) - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(kernel_weight(fv({0.0, 0.0}), fv({0.6, 0.8}), unit) - 0.36787944117144233) < 1e-12);
}

TEST_CASE("kernel weight errors") {
    CHECK_THROWS_AS(kernel_weight(fv({0.0}), fv({0.0, 1.0}), KernelSpec{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_weight(fv({0.0}), fv({0.0}), KernelSpec{0.0}), std::invalid_argument);
}

TEST_CASE("kernel weight decreases strictly with distance (property)") {
    std::mt19937_64 engine(21);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x{normal(engine), normal(engine), normal(engine)};
        std::vector<double> dir{normal(engine), normal(engine), normal(engine)};
        const KernelSpec spec{0.5 + std::abs(normal(engine))};
        double previous = 2.0;
        for (int step = 0; step < 40; ++step) {
            double r = 0.1 * step;
            std::vector<double> z(3);
            for (int j = 0; j < 3; ++j) {
                z[j] = x[j] + r * dir[j];
            }
            double w = kernel_weight(x, z, spec);
            CHECK(w > 0.0);
            CHECK(w <= 1.0);
            CHECK(w < previous);
            previous = w;
        }
    }
}

TEST_CASE("label_neighborhood") {
    Neighborhood n{fv({0.0, 0.0}), Matrix{{0.0, 0.0}, {1.0, 1.0}, {-2.0, 3.0}}};
    ConstantModel constant(ClassProbabilities({0.3, 0.7}), 2);
    CHECK(label_neighborhood(constant, n, 1) == std::vector<double>{0.7, 0.7, 0.7});
    CHECK(label_neighborhood(constant, n, 0) == std::vector<double>{0.3, 0.3, 0.3});
    CHECK_THROWS_AS(label_neighborhood(constant, n, 2), std::invalid_argument);

    Neighborhood empty{fv({0.0, 0.0}), Matrix(0, 2)};
    CHECK_THROWS_AS(label_neighborhood(constant, empty, 1), std::invalid_argument);

    ConstantModel wrong_dim(ClassProbabilities({0.3, 0.7}), 3);
    CHECK_THROWS_AS(label_neighborhood(wrong_dim, n, 1), std::invalid_argument);

    struct Failing final : BlackBoxModel {
        ClassProbabilities predict(const FeatureVector& x) const override {
            if (x[0] < -1.0) {
                throw std::runtime_error("out of range");
            }
            return ClassProbabilities({0.5, 0.5});
        }
        std::size_t n_classes() const override { return 2; }
        std::size_t dimension() const override { return 2; }
    } failing;
    try {
        (void)label_neighborhood(failing, n, 1);
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("weighted design validation") {
    WeightedDesign ok{Matrix{{1.0}, {2.0}}, {1.0, 2.0}, {0.5, 1.0}};
    CHECK_NOTHROW(ok.validate());
    WeightedDesign rows{Matrix{{1.0}, {2.0}}, {1.0}, {0.5, 1.0}};
    CHECK_THROWS_AS(rows.validate(), std::invalid_argument);
    WeightedDesign zero{Matrix{{1.0}, {2.0}}, {1.0, 2.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
    WeightedDesign big{Matrix{{1.0}, {2.0}}, {1.0, 2.0}, {0.5, 1.5}};
    CHECK_THROWS_AS(big.validate(), std::invalid_argument);
}

TEST_CASE("exact recovery of a planted plane") {
    std::mt19937_64 engine(1);
    std::normal_distribution<double> normal;
    Instance inst;
    for (int i = 0; i < 40; ++i) {
        double a = normal(engine);
        double b = normal(engine);
        inst.x.push_back({a, b});
        inst.t.push_back(2.0 * a - 3.0 * b + 1.0);
        inst.w.push_back(1.0);
    }
    auto s = fit_weighted_ridge(design_of(inst), 0.0, {"a", "b"});
    CHECK(std::abs(s.intercept - 1.0) < 1e-8);
    CHECK(std::abs(s.coefficients[0] - 2.0) < 1e-8);
    CHECK(std::abs(s.coefficients[1] + 3.0) < 1e-8);
}

TEST_CASE("huge ridge shrinks slopes to zero and the intercept to the weighted mean") {
    std::mt19937_64 engine(2);
    auto inst = random_instance(engine, 30, 3);
    auto s = fit_weighted_ridge(design_of(inst), 1e12, names(3));
    double sw = 0.0;
    double swt = 0.0;
    for (std::size_t i = 0; i < inst.t.size(); ++i) {
        sw += inst.w[i];
        swt += inst.w[i] * inst.t[i];
    }
    for (double c : s.coefficients) {
        CHECK(std::abs(c) < 1e-6);
    }
    CHECK(std::abs(s.intercept - swt / sw) <= 1e-6 * std::abs(swt / sw));
}

TEST_CASE("random 50x3 instance matches the brute-force normal equations") {
    std::mt19937_64 engine(50);
    auto inst = random_instance(engine, 50, 3);
    for (double lambda : {0.0, 0.1, 1.0, 10.0}) {
        auto s = fit_weighted_ridge(design_of(inst), lambda, names(3));
        auto expected = oracle::weighted_ridge(inst.x, inst.t, inst.w, lambda);
        CHECK(std::abs(s.intercept - expected[0]) < 1e-8);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(std::abs(s.coefficients[j] - expected[j + 1]) < 1e-8);
        }
    }
}

TEST_CASE("oracle equivalence over small instances (property)") {
    std::mt19937_64 engine(99);
    std::uniform_int_distribution<std::size_t> dims(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = dims(engine);
        std::uniform_int_distribution<std::size_t> rows(d + 2, 50);
        auto inst = random_instance(engine, rows(engine), d);
        double lambda = std::array{0.0, 0.1, 1.0, 10.0}[trial % 4];
        auto s = fit_weighted_ridge(design_of(inst), lambda, names(d));
        auto expected = oracle::weighted_ridge(inst.x, inst.t, inst.w, lambda);
        CHECK(std::abs(s.intercept - expected[0]) < 1e-8);
        for (std::size_t j = 0; j < d; ++j) {
            CHECK(std::abs(s.coefficients[j] - expected[j + 1]) < 1e-8);
        }
    }
}

TEST_CASE("weight scaling invariance") {
    std::mt19937_64 engine(4);
    auto inst = random_instance(engine, 40, 3);
    auto base0 = fit_weighted_ridge(design_of(inst), 0.0, names(3));
    auto base1 = fit_weighted_ridge(design_of(inst), 0.8, names(3));
    for (double c : {0.25, 0.0625, 0.5, 0.37}) {
        Instance scaled = inst;
        for (auto& w : scaled.w) {
            w *= c;
        }
        auto s0 = fit_weighted_ridge(design_of(scaled), 0.0, names(3));
        auto s1 = fit_weighted_ridge(design_of(scaled), 0.8 * c, names(3));
        // even powers of two scale the Cholesky factor exactly
        double tol = (c == 0.25 || c == 0.0625) ? 0.0 : 1e-12;
        check_close(s0, base0, tol);
        check_close(s1, base1, std::max(tol, 1e-12));
    }
}

TEST_CASE("row permutation invariance") {
    std::mt19937_64 engine(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = random_instance(engine, 50, 4);
        auto s = fit_weighted_ridge(design_of(inst), 0.5, names(4));
        std::vector<std::size_t> order(inst.x.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), engine);
        Instance permuted;
        for (auto i : order) {
            permuted.x.push_back(inst.x[i]);
            permuted.t.push_back(inst.t[i]);
            permuted.w.push_back(inst.w[i]);
        }
        check_close(fit_weighted_ridge(design_of(permuted), 0.5, names(4)), s, 1e-10);
    }
}

TEST_CASE("singular unregularized systems are rejected") {
    // second column duplicates the first
    WeightedDesign collinear{Matrix{{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}, {1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(fit_weighted_ridge(collinear, 0.0, {"a", "b"}), SingularSystem);
    CHECK_NOTHROW(fit_weighted_ridge(collinear, 0.1, {"a", "b"}));

    WeightedDesign single_row{Matrix{{1.0, 2.0}}, {1.0}, {1.0}};
    try {
        (void)fit_weighted_ridge(single_row, 0.0, {"a", "b"});
        FAIL("expected SingularSystem");
    } catch (const SingularSystem& e) {
        CHECK(std::string(e.what()).find("ridge strength > 0") != std::string::npos);
    }
    auto regularized = fit_weighted_ridge(single_row, 1.0, {"a", "b"});
    CHECK(regularized.coefficients == std::vector<double>{0.0, 0.0});
    CHECK(regularized.intercept == 1.0);
}

TEST_CASE("fit argument errors") {
    WeightedDesign ok{Matrix{{1.0}, {2.0}}, {1.0, 2.0}, {0.5, 1.0}};
    CHECK_THROWS_AS(fit_weighted_ridge(ok, -1.0, {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(fit_weighted_ridge(ok, 1.0, {"a", "b"}), std::invalid_argument);
}
