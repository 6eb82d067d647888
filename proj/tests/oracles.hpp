// Test-only reference computations. Nothing here calls into the library's
// numerical code paths.
#ifndef PROLIME_TESTS_ORACLES_HPP
#define PROLIME_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Gaussian elimination with partial pivoting on a dense square system.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0) {
            throw std::runtime_error("oracle::solve: singular");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            s -= a[i][c] * x[c];
        }
        x[i] = s / a[i][i];
    }
    return x;
}

/// Brute-force weighted ridge: assembles the full (d+1) x (d+1) normal
/// equations over the augmented design [1, x] with the penalty on every
/// slope but not the intercept. Returns {intercept, b_1, ..., b_d}.
inline std::vector<double> weighted_ridge(const std::vector<std::vector<double>>& x, const std::vector<double>& t,
                                          const std::vector<double>& w, double lambda) {
    const std::size_t d = x.front().size();
    std::vector<std::vector<double>> a(d + 1, std::vector<double>(d + 1, 0.0));
    std::vector<double> b(d + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> row(d + 1, 1.0);
        for (std::size_t j = 0; j < d; ++j) {
            row[j + 1] = x[i][j];
        }
        for (std::size_t p = 0; p <= d; ++p) {
            b[p] += w[i] * row[p] * t[i];
            for (std::size_t q = 0; q <= d; ++q) {
                a[p][q] += w[i] * row[p] * row[q];
            }
        }
    }
    for (std::size_t p = 1; p <= d; ++p) {
        a[p][p] += lambda;
    }
    return solve(a, b);
}

inline double normal_cdf(double z) {
    return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2));
}

/// Normal quantile by bisection on the erf-based CDF.
inline double normal_quantile(double u) {
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Bivariate normal density with unit variances and correlation rho, by the closed form.
inline double bivariate_pdf(double c, double r, double rho) {
    double det = 1.0 - rho * rho;
    double q = (c * c - 2.0 * rho * c * r + r * r) / det;
    return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

/// Monte Carlo estimate of P(|c + r| < 1 and |c - r| < 1) under the
/// unit-variance correlation-rho normal, using the standard library's
/// engine and distribution.
inline double diamond_mass(double rho, std::size_t draws, unsigned seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal;
    const double s = std::sqrt(1.0 - rho * rho);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        double z0 = normal(engine);
        double z1 = normal(engine);
        double c = z0;
        double r = rho * z0 + s * z1;
        inside += (std::abs(c + r) < 1.0 && std::abs(c - r) < 1.0) ? 1 : 0;
    }
    return static_cast<double>(inside) / static_cast<double>(draws);
}

struct Moments {
    double mean0, mean1, var0, var1, corr;
};

inline Moments moments(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    Moments m{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.mean0 += a[i];
        m.mean1 += b[i];
    }
    m.mean0 /= n;
    m.mean1 /= n;
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.var0 += (a[i] - m.mean0) * (a[i] - m.mean0);
        m.var1 += (b[i] - m.mean1) * (b[i] - m.mean1);
        cov += (a[i] - m.mean0) * (b[i] - m.mean1);
    }
    m.corr = cov / std::sqrt(m.var0 * m.var1);
    m.var0 /= n - 1.0;
    m.var1 /= n - 1.0;
    return m;
}

} // namespace oracle

#endif
