#ifndef PROLIME_LINALG_HPP
#define PROLIME_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace prolime {

/// Row-major dense matrix, sized for the handful of features a local
/// surrogate deals with.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_row_major(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return m_Rows; }
    std::size_t cols() const { return m_Cols; }

    double& operator()(std::size_t i, std::size_t j) { return m_Data[i * m_Cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return m_Data[i * m_Cols + j]; }

    std::span<double> row(std::size_t i) { return {m_Data.data() + i * m_Cols, m_Cols}; }
    std::span<const double> row(std::size_t i) const { return {m_Data.data() + i * m_Cols, m_Cols}; }

    const std::vector<double>& data() const { return m_Data; }

    Matrix transposed() const;
    bool is_symmetric(double tolerance) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t m_Rows = 0;
    std::size_t m_Cols = 0;
    std::vector<double> m_Data;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// Raised when a Cholesky factorization meets a non-positive pivot.
/// leading_minor() is the 1-based order of the first leading principal
/// minor that is not positive.
class NotPositiveDefinite : public std::runtime_error {
public:
    NotPositiveDefinite(std::size_t leading_minor, double pivot);

    std::size_t leading_minor() const { return m_LeadingMinor; }

private:
    std::size_t m_LeadingMinor;
};

/// Lower-triangular L with L * L^T == a. The input must be square and
/// symmetric within 1e-12.
Matrix cholesky(const Matrix& a);

/// Solves (L * L^T) x = b given the factor from cholesky().
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);

} // namespace prolime

#endif
