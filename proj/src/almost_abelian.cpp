#include "crf/almost_abelian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crf {

Mat middle_block_J(int n) {
    int m = 2 * (n - 1);
    Mat J(m, m);
    // middle basis f_a = e_{a+2} (1-based ambient); J f_a = f_{M-a}, M = 2n-3
    for (int a = 0; a <= n - 2; ++a) {
        int b = m - 1 - a;
        J(b, a) = 1.0;
        J(a, b) = -1.0;
    }
    return J;
}

Mat normal_form_J(int n) {
    int dim = 2 * n;
    Mat J(dim, dim);
    for (int i = 0; i < n; ++i) {
        int j = dim - 1 - i;
        J(j, i) = 1.0;
        J(i, j) = -1.0;
    }
    return J;
}

LieBracket almost_abelian_bracket(const AlmostAbelianSpec& spec) {
    int dim = spec.dim();
    int last = dim - 1;
    LieBracket b(dim);
    // [e_last, e_0] = c e_0 + sum_i d_i e_{i+1}
    b.set(last, 0, 0, spec.c);
    for (int i = 0; i < 2 * spec.n - 2; ++i)
        if (spec.d[i] != 0.0) {
            b.at(last, 0, i + 1) = spec.d[i];
            b.at(0, last, i + 1) = -spec.d[i];
        }
    // [e_last, e_{a+1}] = sum_b A_{ba} e_{b+1}
    for (int a = 0; a < 2 * spec.n - 2; ++a)
        for (int bb = 0; bb < 2 * spec.n - 2; ++bb)
            if (spec.A(bb, a) != 0.0) {
                b.at(last, a + 1, bb + 1) = spec.A(bb, a);
                b.at(a + 1, last, bb + 1) = -spec.A(bb, a);
            }
    return b;
}

HermitianStructure assemble(const AlmostAbelianSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("n must be at least 1");
    if (spec.c < 0) throw std::invalid_argument("c must be nonnegative");
    if (static_cast<int>(spec.d.size()) != 2 * spec.n - 2 || spec.A.n != 2 * (spec.n - 1) ||
        spec.A.m != 2 * (spec.n - 1))
        throw std::invalid_argument("A / d shape mismatch with n");
    if (spec.n > 1) {
        Mat Jm = middle_block_J(spec.n);
        double r = max_abs(spec.A * Jm - Jm * spec.A);
        if (r > kTolAlg * std::max(1.0, max_abs(spec.A)))
            throw validation_error("A must be complex-linear (residual " + std::to_string(r) +
                                   ")");
    }
    return HermitianStructure(almost_abelian_bracket(spec), normal_form_J(spec.n),
                              Mat::identity(spec.dim()));
}

ClosedFormChernData chern_data_closed_form(const AlmostAbelianSpec& spec) {
    int dim = spec.dim();
    double trA = 0;
    for (int i = 0; i < spec.A.n; ++i) trA += spec.A(i, i);
    double ev = -0.5 * spec.c * (2.0 * spec.c + trA);
    ClosedFormChernData out{Mat(dim, dim), Mat(dim, dim), ev};
    out.p(0, dim - 1) = ev;
    out.p(dim - 1, 0) = -ev;
    out.P(0, 0) = ev;
    out.P(dim - 1, dim - 1) = ev;
    return out;
}

AlmostAbelianReport predict_behavior(const AlmostAbelianSpec& spec) {
    AlmostAbelianReport rep;
    ClosedFormChernData cf = chern_data_closed_form(spec);
    rep.eigenvalue = cf.eigenvalue;
    rep.e = 2.0 * cf.eigenvalue;
    rep.p_zero = std::fabs(cf.eigenvalue) <= kTolEig;
    bool d_zero = max_abs(spec.d) <= kTolAlg;
    rep.soliton = rep.p_zero || d_zero;
    double inf = std::numeric_limits<double>::infinity();
    if (rep.e < -kTolEig) {
        rep.T_minus = 1.0 / rep.e;
        rep.T_plus = inf;
    } else if (rep.e > kTolEig) {
        rep.T_minus = -inf;
        rep.T_plus = 1.0 / rep.e;
    } else {
        rep.T_minus = -inf;
        rep.T_plus = inf;
    }
    if (!rep.p_zero) {
        rep.nu_limit_exists = true;
        rep.nu_direction = rep.e < 0 ? Direction::plus_time : Direction::minus_time;
        AlmostAbelianSpec trimmed = spec;
        std::fill(trimmed.d.begin(), trimmed.d.end(), 0.0);
        LieBracket mu0 = almost_abelian_bracket(trimmed);
        rep.nu_direction_bracket = scale(mu0, 1.0 / bracket_norm(mu0));
        rep.finite_end_heisenberg = !rep.soliton;
    }
    return rep;
}

AlmostAbelianSpec make_spec4(double a, double b, double c, double d, double e) {
    AlmostAbelianSpec s;
    s.n = 2;
    s.A = Mat(2, 2);
    s.A(0, 0) = a;
    s.A(0, 1) = -b;
    s.A(1, 0) = b;
    s.A(1, 1) = a;
    s.c = c;
    s.d = {d, e};
    return s;
}

bool is_r41_type(double a, double b, double c, double d, double e, double tol) {
    return std::fabs(a - c) <= tol && std::fabs(a) > tol && std::fabs(b) <= tol &&
           (std::fabs(d) > tol || std::fabs(e) > tol);
}

bool equal_up_to_positive_scale(const LieBracket& x, const LieBracket& y, double tol) {
    double nx = bracket_norm(x), ny = bracket_norm(y);
    if (nx == 0.0 || ny == 0.0) return nx == ny;
    double worst = 0;
    for (size_t i = 0; i < x.c.size(); ++i)
        worst = std::max(worst, std::fabs(x.c[i] / nx - y.c[i] / ny));
    return worst <= tol;
}

}  // namespace crf
