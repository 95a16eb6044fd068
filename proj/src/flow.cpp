#include "crf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_inside(const FlowSolution& f, double t) {
    if (!(t > f.T_minus && t < f.T_plus))
        throw std::domain_error("flow escaped maximal interval: t=" + std::to_string(t));
}

}  // namespace

FlowSolution make_flow(const HermitianStructure& h) {
    ChernRicciData crd = chern_ricci_operator(h);
    Mat V = crd.eigenbasis;
    Mat Vi = inverse(V);
    LieBracket beig = act_gl(h.bracket, Vi);
    Mat Jeig = Vi * h.J * V;
    return FlowSolution{h, crd, crd.T_minus, crd.T_plus, V, Vi, beig, Jeig};
}

HermitianStructure metric_at(const FlowSolution& f, double t) {
    require_inside(f, t);
    Mat gt = f.initial.g - 2.0 * t * (f.initial.g * f.crd.P);
    return HermitianStructure(f.initial.bracket, f.initial.J, gt);
}

Mat operator_at(const FlowSolution& f, double t) {
    require_inside(f, t);
    int n = f.initial.dim();
    Mat M = Mat::identity(n) - 2.0 * t * f.crd.P;
    return inverse(M) * f.crd.P;
}

double scalar_curvature_at(const FlowSolution& f, double t) {
    require_inside(f, t);
    double s = 0;
    for (double p : f.crd.eigenvalues) s += p / (1.0 - 2.0 * t * p);
    return s;
}

Mat isomorphism_at(const FlowSolution& f, double t) {
    require_inside(f, t);
    int n = f.initial.dim();
    Mat D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = std::sqrt(1.0 - 2.0 * t * f.crd.eigenvalues[i]);
    return f.basis * D * f.basis_inv;
}

LieBracket bracket_flow_at(const FlowSolution& f, double t) {
    require_inside(f, t);
    int n = f.initial.dim();
    const std::vector<double>& p = f.crd.eigenvalues;
    LieBracket mu(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double c = f.bracket_eig.at(i, j, k);
                if (c == 0.0) continue;
                double fi = 1.0 - 2.0 * t * p[i];
                double fj = 1.0 - 2.0 * t * p[j];
                double fk = 1.0 - 2.0 * t * p[k];
                mu.at(i, j, k) = std::sqrt(fk / (fi * fj)) * c;
            }
    return mu;
}

double bracket_norm(const LieBracket& b) {
    double s = 0;
    for (double v : b.c) s += v * v;
    return std::sqrt(s);
}

namespace {

// Per-index asymptotics of (1 - 2 t p_r) in the running scale s -> inf:
// (1 - 2 t p_r) ~ coeff[r] * s^{power[r]}.
struct Asymptotics {
    std::vector<double> coeff;
    std::vector<int> power;      // 0 or 1 (finite horizon carries s^{-1}: power -1)
    std::vector<bool> in_cluster;  // indices in the relevant eigenvalue cluster
    bool finite_horizon;
    double extra_coeff;  // nu prefactor ~ sqrt(extra_coeff * s^{extra_power})
    int extra_power;
};

Asymptotics classify(const FlowSolution& f, Direction dir) {
    const std::vector<double>& p = f.crd.eigenvalues;
    int n = static_cast<int>(p.size());
    Asymptotics a;
    a.coeff.resize(n);
    a.power.resize(n);
    a.in_cluster.assign(n, false);
    bool plus = dir == Direction::plus_time;
    double horizon = plus ? f.T_plus : f.T_minus;
    a.finite_horizon = std::isfinite(horizon);
    if (!a.finite_horizon) {
        // s = |t|; (1-2tp) ~ 2|p| s for eigenvalues on the shrinking side
        for (int r = 0; r < n; ++r) {
            bool active = plus ? (p[r] < -kTolEig) : (p[r] > kTolEig);
            a.in_cluster[r] = active;
            a.coeff[r] = active ? 2.0 * std::fabs(p[r]) : 1.0;
            a.power[r] = active ? 1 : 0;
        }
        a.extra_coeff = 2.0;  // |2t+1| ~ 2s
        a.extra_power = 1;
    } else {
        // s = 1/|T - t|; cluster at the extremal eigenvalue degenerates
        double pext = plus ? p.back() : p.front();
        for (int r = 0; r < n; ++r) {
            bool member = std::fabs(p[r] - pext) <= kTolEig;
            a.in_cluster[r] = member;
            a.coeff[r] = member ? 2.0 * std::fabs(pext) : (1.0 - p[r] / pext);
            a.power[r] = member ? -1 : 0;
        }
        a.extra_coeff = 1.0;  // |T - t| = 1/s
        a.extra_power = -1;
    }
    return a;
}

// Zero-eigenvalue cluster (kernel) as a coordinate subspace of the eigenbasis.
Subspace coordinate_subspace(int n, const std::vector<bool>& pick) {
    int k = 0;
    for (bool b : pick) k += b ? 1 : 0;
    Mat B(n, k);
    int col = 0;
    for (int i = 0; i < n; ++i)
        if (pick[i]) {
            B(i, col) = 1.0;
            ++col;
        }
    Subspace s;
    s.basis = B;
    return s;
}

std::vector<bool> kernel_mask(const std::vector<double>& p) {
    std::vector<bool> m(p.size());
    for (size_t i = 0; i < p.size(); ++i) m[i] = std::fabs(p[i]) <= kTolEig;
    return m;
}

}  // namespace

LimitResult limit_lambda(const FlowSolution& f, Direction dir) {
    int n = f.initial.dim();
    const std::vector<double>& p = f.crd.eigenvalues;
    Asymptotics asym = classify(f, dir);
    LimitResult out;
    out.kind = LimitResult::Kind::lambda_norm;
    out.direction = dir;
    out.converged = true;  // the normalized flow always converges
    out.predicted_P = Mat(n, n);

    // growth exponent of each coefficient in s, times 2 (kept integral)
    LieBracket survivors(n);
    int best = std::numeric_limits<int>::min();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (f.bracket_eig.at(i, j, k) == 0.0) continue;
                best = std::max(best, asym.power[k] - asym.power[i] - asym.power[j]);
            }
    if (best == std::numeric_limits<int>::min()) {
        out.degenerate = true;
        out.bracket = LieBracket(n);
        out.notes.push_back("abelian start: normalized limit undefined, zero bracket reported");
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double c = f.bracket_eig.at(i, j, k);
                if (c == 0.0) continue;
                if (asym.power[k] - asym.power[i] - asym.power[j] != best) continue;
                survivors.at(i, j, k) =
                    c * std::sqrt(asym.coeff[k] / (asym.coeff[i] * asym.coeff[j]));
            }
    double nrm = bracket_norm(survivors);
    out.bracket = scale(survivors, 1.0 / nrm);

    // predicted operator of the limit
    if (!asym.finite_horizon) {
        Subspace ker = coordinate_subspace(n, kernel_mask(p));
        if (is_abelian_ideal(f.bracket_eig, ker)) {
            double S = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double c = f.bracket_eig.at(i, j, k);
                        if (c == 0.0) continue;
                        bool ni = asym.in_cluster[i], nj = asym.in_cluster[j],
                             nk = asym.in_cluster[k];
                        if (ni && nj && nk) S += (p[k] / (p[i] * p[j])) * c * c;
                        else if (ni && !nj && !nk) S += (1.0 / p[i]) * c * c;
                        else if (!ni && nj && !nk) S += (1.0 / p[j]) * c * c;
                    }
            double cpm = 1.0 / S;
            for (int i = 0; i < n; ++i)
                if (asym.in_cluster[i]) out.predicted_P(i, i) = cpm;
        }
        // else: flat limit, predicted_P stays zero
    } else {
        Subspace ext = coordinate_subspace(n, asym.in_cluster);
        if (is_subalgebra(f.bracket_eig, ext)) {
            double pext = dir == Direction::plus_time ? p.back() : p.front();
            double S = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double c = f.bracket_eig.at(i, j, k);
                        if (c == 0.0) continue;
                        bool mi = asym.in_cluster[i], mj = asym.in_cluster[j],
                             mk = asym.in_cluster[k];
                        if (mi && mj && mk) S += c * c;
                        else if (mj && !mi && !mk)
                            S += ((pext - p[k]) / (pext - p[i])) * c * c;
                        else if (mi && !mj && !mk)
                            S += ((pext - p[k]) / (pext - p[j])) * c * c;
                    }
            double cpm = pext / S;
            for (int i = 0; i < n; ++i)
                if (asym.in_cluster[i]) out.predicted_P(i, i) = cpm;
        }
    }

    for (size_t i = 1; i < p.size(); ++i)
        if (f.crd.cluster[i] == f.crd.cluster[i - 1] && p[i] - p[i - 1] > 1e-13)
            out.notes.push_back("eigenvalue cluster " + std::to_string(f.crd.cluster[i]) +
                                " merges values spread by " + std::to_string(p[i] - p[i - 1]));
    return out;
}

LimitResult limit_nu(const FlowSolution& f, Direction dir) {
    int n = f.initial.dim();
    const std::vector<double>& p = f.crd.eigenvalues;
    Asymptotics asym = classify(f, dir);
    LimitResult out;
    out.kind = LimitResult::Kind::nu_scaled;
    out.direction = dir;
    out.predicted_P = Mat(n, n);

    // convergence hypotheses, decided algebraically
    if (!asym.finite_horizon) {
        Subspace ker = coordinate_subspace(n, kernel_mask(p));
        out.converged = is_abelian_ideal(f.bracket_eig, ker);
    } else {
        Subspace ext = coordinate_subspace(n, asym.in_cluster);
        out.converged = is_subalgebra(f.bracket_eig, ext);
    }

    // growth bookkeeping (times 2): coefficient ~ s^{(extra + k - i - j)/2}
    int worst = std::numeric_limits<int>::min();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (f.bracket_eig.at(i, j, k) == 0.0) continue;
                worst = std::max(worst,
                                 asym.extra_power + asym.power[k] - asym.power[i] - asym.power[j]);
            }
    bool growth_converged = worst <= 0 || worst == std::numeric_limits<int>::min();
    if (growth_converged != out.converged)
        out.notes.push_back("growth bookkeeping disagrees with algebraic hypothesis check");
    if (!out.converged) {
        out.bracket = LieBracket(n);
        out.notes.push_back(asym.finite_horizon
                                ? "extremal eigenspace is not a subalgebra"
                                : "kernel is not an abelian ideal");
        return out;
    }

    LieBracket nu(n);
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double c = f.bracket_eig.at(i, j, k);
                if (c == 0.0) continue;
                int growth = asym.extra_power + asym.power[k] - asym.power[i] - asym.power[j];
                if (growth != 0) continue;  // dies in the limit
                nu.at(i, j, k) = c * std::sqrt(asym.extra_coeff * asym.coeff[k] /
                                               (asym.coeff[i] * asym.coeff[j]));
                any = true;
            }
    out.bracket = nu;
    out.degenerate = !any;
    if (out.degenerate) out.notes.push_back("limit bracket is zero (abelian end state)");

    double block = 0;
    if (!asym.finite_horizon) block = dir == Direction::plus_time ? -1.0 : 1.0;
    else block = dir == Direction::plus_time ? 0.5 : -0.5;
    for (int i = 0; i < n; ++i)
        if (asym.in_cluster[i]) out.predicted_P(i, i) = block;
    return out;
}

HermitianStructure limit_structure(const FlowSolution& f, const LimitResult& lim) {
    if (!lim.converged) throw std::domain_error("limit did not converge");
    int n = f.initial.dim();
    return HermitianStructure(lim.bracket, f.J_eig, Mat::identity(n));
}

namespace {

Mat crf_rhs(const LieBracket& b, const Mat& J) {
    // d g/dt = -2 p(., J.) = -2 p J in matrix form
    Mat p = chern_ricci_form(b, J);
    return -2.0 * (p * J);
}

LieBracket bf_rhs(const LieBracket& mu, const Mat& J, const Mat& omega0_inv) {
    int n = mu.dim;
    Mat p = chern_ricci_form(mu, J);
    Mat P = omega0_inv * p;
    LieBracket d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int m = 0; m < n; ++m)
                    s += P(m, i) * mu.at(m, j, k) + P(m, j) * mu.at(i, m, k) -
                         P(k, m) * mu.at(i, j, m);
                d.at(i, j, k) = s;
            }
    return d;
}

}  // namespace

HermitianStructure integrate_crf_numeric(const HermitianStructure& h, double t_end, int steps) {
    if (steps <= 0) throw std::invalid_argument("steps must be positive");
    Mat g = h.g;
    double dt = t_end / steps;
    // The right-hand side is recomputed from scratch at every stage; that it
    // comes out metric-independent is exactly what this oracle cross-checks.
    auto rhs = [&](const Mat& /*g_state*/) { return crf_rhs(h.bracket, h.J); };
    for (int s = 0; s < steps; ++s) {
        Mat k1 = rhs(g);
        Mat k2 = rhs(g + (dt / 2) * k1);
        Mat k3 = rhs(g + (dt / 2) * k2);
        Mat k4 = rhs(g + dt * k3);
        g += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        try {
            cholesky(g);
        } catch (const validation_error&) {
            throw std::domain_error("numeric flow left the metric cone at t=" +
                                    std::to_string((s + 1) * dt));
        }
    }
    return HermitianStructure(h.bracket, h.J, g);
}

LieBracket integrate_bracket_flow_numeric(const HermitianStructure& h, double t_end, int steps) {
    if (steps <= 0) throw std::invalid_argument("steps must be positive");
    Mat omega0_inv = inverse(omega_matrix(h));
    LieBracket mu = h.bracket;
    double dt = t_end / steps;
    auto axpy = [](const LieBracket& x, double a, const LieBracket& y) {
        LieBracket r = x;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += a * y.c[i];
        return r;
    };
    for (int s = 0; s < steps; ++s) {
        LieBracket k1 = bf_rhs(mu, h.J, omega0_inv);
        LieBracket k2 = bf_rhs(axpy(mu, dt / 2, k1), h.J, omega0_inv);
        LieBracket k3 = bf_rhs(axpy(mu, dt / 2, k2), h.J, omega0_inv);
        LieBracket k4 = bf_rhs(axpy(mu, dt, k3), h.J, omega0_inv);
        for (size_t i = 0; i < mu.c.size(); ++i)
            mu.c[i] += (dt / 6.0) * (k1.c[i] + 2 * k2.c[i] + 2 * k3.c[i] + k4.c[i]);
    }
    return mu;
}

}  // namespace crf
