#include "crf/lie.hpp"

#include <algorithm>
#include <cmath>

namespace crf {

Vec LieBracket::bracket(const Vec& x, const Vec& y) const {
    Vec r(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[j] == 0.0) continue;
            double f = x[i] * y[j];
            for (int k = 0; k < dim; ++k) r[k] += f * at(i, j, k);
        }
    }
    return r;
}

Vec LieBracket::bracket_basis(int i, int j) const {
    Vec r(dim);
    for (int k = 0; k < dim; ++k) r[k] = at(i, j, k);
    return r;
}

Subspace Subspace::span(const Mat& vectors, double rel_tol) {
    Subspace s;
    s.basis = column_space(vectors, rel_tol);
    return s;
}

ValidationReport validate_bracket(const LieBracket& b, double tol) {
    ValidationReport rep;
    int n = b.dim;
    double scale = std::max(1.0, max_abs(b.c));
    double worst_anti = 0;
    int ai = 0, aj = 0, ak = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double r = std::fabs(b.at(i, j, k) + b.at(j, i, k));
                if (r > worst_anti) {
                    worst_anti = r;
                    ai = i;
                    aj = j;
                    ak = k;
                }
            }
    if (worst_anti > tol * scale)
        rep.issues.push_back({"antisymmetry c[" + std::to_string(ai + 1) + "][" +
                                  std::to_string(aj + 1) + "][" + std::to_string(ak + 1) + "]",
                              worst_anti});
    double worst_jac = 0;
    int ji = 0, jj = 0, jk = 0, jl = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0;
                    for (int m = 0; m < n; ++m)
                        s += b.at(i, j, m) * b.at(m, k, l) + b.at(j, k, m) * b.at(m, i, l) +
                             b.at(k, i, m) * b.at(m, j, l);
                    if (std::fabs(s) > worst_jac) {
                        worst_jac = std::fabs(s);
                        ji = i;
                        jj = j;
                        jk = k;
                        jl = l;
                    }
                }
    if (worst_jac > tol * scale * scale)
        rep.issues.push_back({"jacobi (" + std::to_string(ji + 1) + "," + std::to_string(jj + 1) +
                                  "," + std::to_string(jk + 1) + ") -> e" + std::to_string(jl + 1),
                              worst_jac});
    return rep;
}

Mat ad(const LieBracket& b, const Vec& x) {
    int n = b.dim;
    Mat M(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0.0) continue;
            for (int k = 0; k < n; ++k) M(k, j) += x[i] * b.at(i, j, k);
        }
    return M;
}

Mat ad_basis(const LieBracket& b, int i) {
    int n = b.dim;
    Mat M(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) M(k, j) = b.at(i, j, k);
    return M;
}

namespace {

// max norm of the component of v orthogonal to the (orthonormal) columns of B
double residual_outside(const Mat& B, const Vec& v) {
    Vec proj(v.size(), 0.0);
    for (int j = 0; j < B.m; ++j) {
        double d = 0;
        for (int i = 0; i < B.n; ++i) d += B(i, j) * v[i];
        for (int i = 0; i < B.n; ++i) proj[i] += d * B(i, j);
    }
    double worst = 0;
    for (size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::fabs(v[i] - proj[i]));
    return worst;
}

}  // namespace

bool is_abelian_ideal(const LieBracket& b, const Subspace& s, double tol) {
    int n = b.dim;
    const Mat& B = s.basis;
    for (int p = 0; p < B.m; ++p)
        for (int q = p + 1; q < B.m; ++q) {
            Vec u(n), w(n);
            for (int i = 0; i < n; ++i) {
                u[i] = B(i, p);
                w[i] = B(i, q);
            }
            if (max_abs(b.bracket(u, w)) > tol) return false;
        }
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < B.m; ++q) {
            Vec w(n);
            for (int r = 0; r < n; ++r) w[r] = B(r, q);
            Vec e(n, 0.0);
            e[i] = 1.0;
            if (residual_outside(B, b.bracket(e, w)) > tol) return false;
        }
    return true;
}

bool is_subalgebra(const LieBracket& b, const Subspace& s, double tol) {
    int n = b.dim;
    const Mat& B = s.basis;
    for (int p = 0; p < B.m; ++p)
        for (int q = p + 1; q < B.m; ++q) {
            Vec u(n), w(n);
            for (int i = 0; i < n; ++i) {
                u[i] = B(i, p);
                w[i] = B(i, q);
            }
            if (residual_outside(B, b.bracket(u, w)) > tol) return false;
        }
    return true;
}

Subspace derived_algebra(const LieBracket& b) {
    int n = b.dim;
    Mat gen(n, n * (n - 1) / 2);
    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++col)
            for (int k = 0; k < n; ++k) gen(k, col) = b.at(i, j, k);
    return Subspace::span(gen);
}

namespace {

// image of [g, V] for a subspace V (columns)
Mat bracket_image(const LieBracket& b, const Mat& V) {
    int n = b.dim;
    Mat gen(n, n * V.m);
    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < V.m; ++q, ++col) {
            Vec w(n);
            for (int r = 0; r < n; ++r) w[r] = V(r, q);
            Vec e(n, 0.0);
            e[i] = 1.0;
            Vec img = b.bracket(e, w);
            for (int k = 0; k < n; ++k) gen(k, col) = img[k];
        }
    return column_space(gen, kRankTol);
}

}  // namespace

int nilpotency_step(const LieBracket& b) {
    Mat V = Mat::identity(b.dim);
    int step = 1;  // class convention: abelian is 1-step, Heisenberg 2-step
    int prev = b.dim + 1;
    while (true) {
        V = bracket_image(b, V);
        if (V.m == 0) return step;
        if (V.m >= prev) return -1;  // stabilized nonzero
        prev = V.m;
        ++step;
        if (step > b.dim + 1) return -1;
    }
}

bool is_nilpotent(const LieBracket& b) { return nilpotency_step(b) >= 0; }

Subspace center(const LieBracket& b) {
    int n = b.dim;
    // stacked map x -> ad(x); rows indexed by (j,k)
    Mat M(n * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) M(j * n + k, i) = b.at(i, j, k);
    Subspace s;
    s.basis = nullspace(M, kRankTol);
    return s;
}

std::vector<Mat> derivation_space(const LieBracket& b) {
    int n = b.dim;
    int pairs = n * (n - 1) / 2;
    // unknowns D_pq (row-major), equations: (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])_k = 0
    Mat A(pairs * n, n * n);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k, ++row) {
                // D[e_i,e_j]_k = sum_m D_km c_ijm
                for (int m = 0; m < n; ++m) A(row, k * n + m) += b.at(i, j, m);
                // [De_i, e_j]_k = sum_m D_mi c_mjk
                for (int m = 0; m < n; ++m) A(row, m * n + i) -= b.at(m, j, k);
                // [e_i, De_j]_k = sum_m D_mj c_imk
                for (int m = 0; m < n; ++m) A(row, m * n + j) -= b.at(i, m, k);
            }
    Mat N = nullspace(A, kRankTol);
    std::vector<Mat> basis;
    basis.reserve(N.m);
    for (int col = 0; col < N.m; ++col) {
        Mat D(n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) D(p, q) = N(p * n + q, col);
        basis.push_back(D);
    }
    return basis;
}

DerivationCheck is_derivation(const LieBracket& b, const Mat& D, double tol) {
    int n = b.dim;
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec lhs = D * b.bracket_basis(i, j);
            Vec di(n), dj(n);
            for (int r = 0; r < n; ++r) {
                di[r] = D(r, i);
                dj[r] = D(r, j);
            }
            Vec ei(n, 0.0), ej(n, 0.0);
            ei[i] = 1.0;
            ej[j] = 1.0;
            Vec rhs1 = b.bracket(di, ej);
            Vec rhs2 = b.bracket(ei, dj);
            for (int k = 0; k < n; ++k)
                worst = std::max(worst, std::fabs(lhs[k] - rhs1[k] - rhs2[k]));
        }
    double scale = std::max(1.0, max_abs(D.a) * std::max(1.0, max_abs(b.c)));
    return {worst <= tol * scale, worst};
}

LieBracket act_gl(const LieBracket& b, const Mat& h) {
    int n = b.dim;
    double cond = cond_number(h);
    if (!(cond < 1e12)) throw validation_error("non-invertible basis change (cond=" +
                                               std::to_string(cond) + ")");
    Mat hinv = inverse(h);
    LieBracket out(n);
    // mu_ijk = sum_{a,b,m} hinv_ai hinv_bj c_abm h_km
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec x(n), y(n);
            for (int r = 0; r < n; ++r) {
                x[r] = hinv(r, i);
                y[r] = hinv(r, j);
            }
            Vec img = h * b.bracket(x, y);
            for (int k = 0; k < n; ++k) out.at(i, j, k) = img[k];
        }
    return out;
}

LieBracket scale(const LieBracket& b, double s) {
    LieBracket out = b;
    for (double& v : out.c) v *= s;
    return out;
}

double bracket_distance(const LieBracket& a, const LieBracket& d) {
    double worst = 0;
    for (size_t i = 0; i < a.c.size(); ++i)
        worst = std::max(worst, std::fabs(a.c[i] - d.c[i]));
    return worst;
}

}  // namespace crf
