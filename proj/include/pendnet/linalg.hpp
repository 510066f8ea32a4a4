#ifndef PENDNET_LINALG_HPP
#define PENDNET_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pendnet {

/// Dense row-major matrix of doubles. Small, no expression templates;
/// everything in this project is at most a few hundred rows.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Mat multiply: shape mismatch");
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

inline std::vector<double> operator*(const Mat& x, const std::vector<double>& v) {
    if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("Mat-vec: shape mismatch");
    std::vector<double> w(x.rows, 0.0);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) w[i] += x(i, j) * v[j];
    return w;
}

struct SymmetricEigen {
    std::vector<double> eigenvalues;  // ascending
    Mat eigenvectors;                 // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi rotations on a symmetric matrix. Off-diagonal Frobenius
/// norm threshold 1e-12 (absolute, scaled by matrix norm), cap 100 sweeps.
inline SymmetricEigen jacobi_eigensymmetric(Mat A, double off_tol = 1e-12, int max_sweeps = 100) {
    if (A.rows != A.cols) throw std::invalid_argument("jacobi: matrix not square");
    const int n = A.rows;
    Mat V = Mat::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
        return std::sqrt(2.0 * s);
    };
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (scale == 0.0) scale = 1.0;

    int sweep = 0;
    while (off_norm() > off_tol * scale) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("jacobi: no convergence after sweep cap");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    // sort ascending, permute eigenvector columns to match
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (A(idx[j], idx[j]) < A(idx[i], idx[i])) std::swap(idx[i], idx[j]);

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = A(idx[k], idx[k]);
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = V(i, idx[k]);
    }
    return out;
}

/// Modified Gram-Schmidt in place on the columns of Y.
/// Returns the diagonal of R (column norms before normalization).
inline std::vector<double> mgs_orthonormalize(Mat& Y) {
    const int n = Y.rows, m = Y.cols;
    std::vector<double> rdiag(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) norm2 += Y(i, j) * Y(i, j);
        double norm = std::sqrt(norm2);
        if (norm < 1e-300) throw std::runtime_error("mgs: degenerate tangent frame");
        rdiag[j] = norm;
        for (int i = 0; i < n; ++i) Y(i, j) /= norm;
        for (int k = j + 1; k < m; ++k) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += Y(i, j) * Y(i, k);
            for (int i = 0; i < n; ++i) Y(i, k) -= dot * Y(i, j);
        }
    }
    return rdiag;
}

/// Determinant via LU with partial pivoting.
inline double determinant(Mat A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant: not square");
    const int n = A.rows;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(A(i, col)) > std::abs(A(piv, col))) piv = i;
        if (A(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            det = -det;
        }
        det *= A(col, col);
        for (int i = col + 1; i < n; ++i) {
            double f = A(i, col) / A(col, col);
            for (int j = col; j < n; ++j) A(i, j) -= f * A(col, j);
        }
    }
    return det;
}

/// Compensated (Kahan) accumulator for long running sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace pendnet

#endif
