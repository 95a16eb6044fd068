#include "crf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace crf {

Mat Mat::identity(int d) {
    Mat I(d, d);
    for (int i = 0; i < d; ++i) I(i, i) = 1.0;
    return I;
}

Mat Mat::diag(const Vec& d) {
    Mat D(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) D(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return D;
}

Mat& Mat::operator+=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
}
Mat& Mat::operator-=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
}
Mat& Mat::operator*=(double s) {
    for (double& x : a) x *= s;
    return *this;
}

Mat operator+(Mat x, const Mat& y) { return x += y; }
Mat operator-(Mat x, const Mat& y) { return x -= y; }
Mat operator*(double s, Mat x) { return x *= s; }

Mat operator*(const Mat& x, const Mat& y) {
    Mat z(x.n, y.m);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.m; ++k) {
            double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.m; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

Vec operator*(const Mat& x, const Vec& v) {
    Vec r(x.n, 0.0);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.m; ++j) r[i] += x(i, j) * v[j];
    return r;
}

Mat transpose(const Mat& x) {
    Mat t(x.m, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.m; ++j) t(j, i) = x(i, j);
    return t;
}

double frob_norm(const Mat& x) {
    double s = 0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

double max_abs(const Mat& x) {
    double s = 0;
    for (double v : x.a) s = std::max(s, std::fabs(v));
    return s;
}

double max_abs(const Vec& v) {
    double s = 0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
}

double dot(const Vec& x, const Vec& y) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

namespace {

// LU with partial pivoting, in place; perm holds row swaps.
void lu_factor(Mat& A, std::vector<int>& perm) {
    int n = A.n;
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
    double scale = max_abs(A);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(piv, k))) piv = i;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        if (std::fabs(A(k, k)) <= 1e-14 * std::max(scale, 1e-300))
            throw validation_error("singular matrix in linear solve");
        for (int i = k + 1; i < n; ++i) {
            A(i, k) /= A(k, k);
            for (int j = k + 1; j < n; ++j) A(i, j) -= A(i, k) * A(k, j);
        }
    }
}

Vec lu_solve(const Mat& LU, const std::vector<int>& perm, const Vec& b) {
    int n = LU.n;
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= LU(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= LU(i, j) * x[j];
        x[i] /= LU(i, i);
    }
    return x;
}

}  // namespace

Vec solve(Mat A, Vec b) {
    std::vector<int> perm;
    lu_factor(A, perm);
    return lu_solve(A, perm, b);
}

Mat inverse(const Mat& A) {
    Mat LU = A;
    std::vector<int> perm;
    lu_factor(LU, perm);
    int n = A.n;
    Mat inv(n, n);
    Vec e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        Vec col = lu_solve(LU, perm, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

Mat cholesky(const Mat& A, double sym_tol) {
    int n = A.n;
    double scale = std::max(max_abs(A), 1e-300);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (std::fabs(A(i, j) - A(j, i)) > sym_tol * scale)
                throw validation_error("matrix not symmetric");
    Mat L(n, n);
    for (int j = 0; j < n; ++j) {
        double d = A(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (d <= 0.0) throw validation_error("matrix not positive-definite");
        L(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

EigenSym sym_eigen(Mat S) {
    int n = S.n;
    // symmetrize to kill representation noise
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (S(i, j) + S(j, i));
            S(i, j) = S(j, i) = v;
        }
    Mat V = Mat::identity(n);
    double fnorm = std::max(frob_norm(S), 1e-300);
    const double target = 1e-12 * fnorm;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2 * S(i, j) * S(i, j);
        if (std::sqrt(off) <= target) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = S(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (S(q, q) - S(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double skp = S(k, p), skq = S(k, q);
                    S(k, p) = c * skp - s * skq;
                    S(k, q) = s * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    double spk = S(p, k), sqk = S(q, k);
                    S(p, k) = c * spk - s * sqk;
                    S(q, k) = s * spk + c * sqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    // stable ascending sort of eigenvalues, permuting columns along
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return S(i, i) < S(j, j); });
    EigenSym out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = S(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[j]);
    }
    return out;
}

EigenSym sym_eigen_metric(const Mat& P, const Mat& g) {
    int n = P.n;
    Mat L = cholesky(g);
    // S = L^T P L^{-T}: first X = P L^{-T} by solving X L^T = P row-wise,
    // i.e. L X^T = P^T column-wise.
    Mat Pt = transpose(P);
    Mat Xt(n, n);
    for (int j = 0; j < n; ++j) {
        // forward-substitute L y = Pt(:,j)
        Vec y(n);
        for (int i = 0; i < n; ++i) {
            double s = Pt(i, j);
            for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
            y[i] = s / L(i, i);
        }
        for (int i = 0; i < n; ++i) Xt(i, j) = y[i];
    }
    Mat S = transpose(L) * transpose(Xt);
    EigenSym es = sym_eigen(S);
    // V = L^{-T} Q, column by column (back substitution on L^T)
    Mat V(n, n);
    for (int j = 0; j < n; ++j) {
        Vec y(n);
        for (int i = n - 1; i >= 0; --i) {
            double s = es.vectors(i, j);
            for (int k = i + 1; k < n; ++k) s -= L(k, i) * y[k];
            y[i] = s / L(i, i);
        }
        for (int i = 0; i < n; ++i) V(i, j) = y[i];
    }
    es.vectors = V;
    return es;
}

namespace {

// Singular data of A from the eigendecomposition of A^T A.
struct Sing {
    Vec sigma;  // ascending
    Mat V;      // right singular vectors (columns)
};

Sing singular_right(const Mat& A) {
    Mat B = transpose(A) * A;
    EigenSym es = sym_eigen(B);
    Sing s;
    s.sigma.resize(es.values.size());
    for (size_t i = 0; i < es.values.size(); ++i)
        s.sigma[i] = std::sqrt(std::max(es.values[i], 0.0));
    s.V = es.vectors;
    return s;
}

}  // namespace

Mat nullspace(const Mat& A, double rel_tol) {
    Sing s = singular_right(A);
    int m = A.m;
    double smax = s.sigma.empty() ? 0.0 : s.sigma.back();
    double thr = rel_tol * smax;
    int k = 0;
    while (k < m && s.sigma[k] <= thr) ++k;
    Mat N(m, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) N(i, j) = s.V(i, j);
    return N;
}

Mat column_space(const Mat& A, double rel_tol) {
    // column space of A = row space of A^T = right singular vectors of A^T
    Sing s = singular_right(transpose(A));
    int n = A.n;
    double smax = s.sigma.empty() ? 0.0 : s.sigma.back();
    double thr = rel_tol * smax;
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(s.sigma.size()); ++i)
        if (smax > 0.0 && s.sigma[i] > thr) keep.push_back(i);
    Mat C(n, static_cast<int>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j)
        for (int i = 0; i < n; ++i) C(i, static_cast<int>(j)) = s.V(i, keep[j]);
    return C;
}

int rank(const Mat& A, double rel_tol) {
    Sing s = singular_right(A);
    double smax = s.sigma.empty() ? 0.0 : s.sigma.back();
    if (smax == 0.0) return 0;
    int r = 0;
    for (double v : s.sigma)
        if (v > rel_tol * smax) ++r;
    return r;
}

double cond_number(const Mat& A) {
    Sing s = singular_right(A);
    double smin = s.sigma.front(), smax = s.sigma.back();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

Mat expm(const Mat& A) {
    int n = A.n;
    double nrm = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += std::fabs(A(i, j));
        nrm = std::max(nrm, row);
    }
    int k = 0;
    while (nrm > 0.5) {
        nrm /= 2;
        ++k;
    }
    Mat B = std::ldexp(1.0, -k) * A;
    Mat term = Mat::identity(n);
    Mat sum = term;
    for (int i = 1; i <= 40; ++i) {
        term = (1.0 / i) * (term * B);
        sum += term;
        if (max_abs(term) < 1e-18 * std::max(1.0, max_abs(sum))) break;
    }
    for (int i = 0; i < k; ++i) sum = sum * sum;
    return sum;
}

Mat sqrtm_spd_like(const Mat& A, const Mat& g) {
    // A is g-self-adjoint with positive spectrum; diagonalize in the
    // g-orthonormal frame and take root eigenvalue-wise.
    EigenSym es = sym_eigen_metric(A, g);
    int n = A.n;
    for (double v : es.values)
        if (v <= 0.0) throw validation_error("matrix square root of non-positive spectrum");
    Mat Vi = inverse(es.vectors);
    Mat D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = std::sqrt(es.values[i]);
    return es.vectors * D * Vi;
}

}  // namespace crf
