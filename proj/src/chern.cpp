#include "crf/chern.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace crf {

Mat chern_ricci_form(const LieBracket& b, const Mat& J) {
    int n = b.dim;
    // f(z) = -1/2 tr(J ad_z) + 1/2 tr(ad_{Jz}), linear in z
    Vec f(n, 0.0);
    for (int i = 0; i < n; ++i) {
        Mat adi = ad_basis(b, i);
        double tr_J_ad = 0;
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) tr_J_ad += J(r, k) * adi(k, r);
        double tr_ad_J = 0;  // tr ad_{J e_i} = sum_r J_ri tr ad_{e_r}
        for (int r = 0; r < n; ++r) {
            if (J(r, i) == 0.0) continue;
            double tr = 0;
            for (int k = 0; k < n; ++k) tr += b.at(r, k, k);
            tr_ad_J += J(r, i) * tr;
        }
        f[i] = -0.5 * tr_J_ad + 0.5 * tr_ad_J;
    }
    Mat p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0;
            for (int k = 0; k < n; ++k) v += b.at(i, j, k) * f[k];
            p(i, j) = v;
            p(j, i) = -v;
        }
    return p;
}

Mat chern_ricci_form(const HermitianStructure& h) { return chern_ricci_form(h.bracket, h.J); }

std::pair<double, double> singular_times(const std::vector<double>& eigenvalues, double tol) {
    double inf = std::numeric_limits<double>::infinity();
    double pmax = eigenvalues.back();
    double pmin = eigenvalues.front();
    double Tp = (pmax <= tol) ? inf : 1.0 / (2.0 * pmax);
    double Tm = (pmin >= -tol) ? -inf : 1.0 / (2.0 * pmin);
    return {Tm, Tp};
}

std::pair<double, double> singular_times(const ChernRicciData& d) {
    return {d.T_minus, d.T_plus};
}

ChernRicciData chern_ricci_operator(const HermitianStructure& h) {
    int n = h.dim();
    ChernRicciData out;
    out.p = chern_ricci_form(h);
    Mat omega = omega_matrix(h);
    // p = omega(P., .) reads P = omega^{-1} p in matrix form
    out.P = inverse(omega) * out.p;

    EigenSym es = sym_eigen_metric(out.P, h.g);
    out.eigenvalues = es.values;
    out.eigenbasis = es.vectors;

    out.cluster.resize(n);
    int cl = 0;
    for (int i = 0; i < n; ++i) {
        if (i > 0 && out.eigenvalues[i] - out.eigenvalues[i - 1] > kTolEig) ++cl;
        out.cluster[i] = cl;
    }
    auto [tm, tp] = singular_times(out.eigenvalues);
    out.T_minus = tm;
    out.T_plus = tp;
    return out;
}

Subspace eigenspace(const ChernRicciData& d, double value, double tol) {
    int n = static_cast<int>(d.eigenvalues.size());
    int hit = -1;
    for (int i = 0; i < n; ++i)
        if (std::fabs(d.eigenvalues[i] - value) <= tol) {
            hit = d.cluster[i];
            break;
        }
    if (hit < 0)
        throw std::invalid_argument("no eigenvalue within tolerance of " + std::to_string(value));
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
        if (d.cluster[i] == hit) idx.push_back(i);
    Mat cols(n, static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j)
        for (int i = 0; i < n; ++i) cols(i, static_cast<int>(j)) = d.eigenbasis(i, idx[j]);
    // columns are g-orthonormal already; re-orthonormalize w.r.t. the standard
    // product so Subspace conventions hold
    return Subspace::span(cols);
}

}  // namespace crf
