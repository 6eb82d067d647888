#include "prolime/linalg.hpp"

#include <cmath>
#include <string>

namespace prolime {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : m_Rows{rows}, m_Cols{cols}, m_Data(rows * cols, fill) {
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    m_Rows = rows.size();
    m_Cols = m_Rows == 0 ? 0 : rows.begin()->size();
    m_Data.reserve(m_Rows * m_Cols);
    for (const auto& row : rows) {
        if (row.size() != m_Cols) {
            throw std::invalid_argument("Matrix: ragged initializer");
        }
        m_Data.insert(m_Data.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix result(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        result(i, i) = 1.0;
    }
    return result;
}

Matrix Matrix::from_row_major(std::size_t rows, std::size_t cols, std::vector<double> data) {
    if (data.size() != rows * cols) {
        throw std::invalid_argument("Matrix: expected " + std::to_string(rows * cols) +
                                    " entries, got " + std::to_string(data.size()));
    }
    Matrix result;
    result.m_Rows = rows;
    result.m_Cols = cols;
    result.m_Data = std::move(data);
    return result;
}

Matrix Matrix::transposed() const {
    Matrix result(m_Cols, m_Rows);
    for (std::size_t i = 0; i < m_Rows; ++i) {
        for (std::size_t j = 0; j < m_Cols; ++j) {
            result(j, i) = (*this)(i, j);
        }
    }
    return result;
}

bool Matrix::is_symmetric(double tolerance) const {
    if (m_Rows != m_Cols) {
        return false;
    }
    for (std::size_t i = 0; i < m_Rows; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("Matrix product: inner dimensions differ");
    }
    Matrix result(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                result(i, j) += aik * b(k, j);
            }
        }
    }
    return result;
}

NotPositiveDefinite::NotPositiveDefinite(std::size_t leading_minor, double pivot)
    : std::runtime_error("matrix is not positive definite: leading principal minor of order " +
                         std::to_string(leading_minor) + " is not positive (pivot " +
                         std::to_string(pivot) + ")"),
      m_LeadingMinor{leading_minor} {
}

Matrix cholesky(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw std::invalid_argument("cholesky: matrix must be square and non-empty");
    }
    if (!a.is_symmetric(1e-12)) {
        throw std::invalid_argument("cholesky: matrix is not symmetric within 1e-12");
    }
    const std::size_t n = a.rows();
    Matrix lower(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            pivot -= lower(j, k) * lower(j, k);
        }
        // det of the order-(j+1) leading minor is the running product of pivots,
        // so the first non-positive pivot identifies the failing minor.
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            throw NotPositiveDefinite(j + 1, pivot);
        }
        double diag = std::sqrt(pivot);
        lower(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= lower(i, k) * lower(j, k);
            }
            lower(i, j) = sum / diag;
        }
    }
    return lower;
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
    const std::size_t n = lower.rows();
    if (b.size() != n) {
        throw std::invalid_argument("cholesky_solve: right-hand side has wrong length");
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) {
            sum -= lower(i, k) * y[k];
        }
        y[i] = sum / lower(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            sum -= lower(k, ii) * x[k];
        }
        x[ii] = sum / lower(ii, ii);
    }
    return x;
}

} // namespace prolime
