#include "crf/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crf {

namespace {

Subspace eigen_subspace_or_empty(const ChernRicciData& d, double value) {
    int n = static_cast<int>(d.eigenvalues.size());
    bool found = false;
    for (double ev : d.eigenvalues)
        if (std::fabs(ev - value) <= kTolEig) found = true;
    if (!found) {
        Subspace s;
        s.basis = Mat(n, 0);
        return s;
    }
    return eigenspace(d, value);
}

}  // namespace

SolitonCertificate certify(const HermitianStructure& h) {
    SolitonCertificate cert;
    ChernRicciData crd = chern_ricci_operator(h);
    int n = h.dim();
    cert.D = Mat(n, n);

    double pmax_abs = 0;
    for (double ev : crd.eigenvalues) pmax_abs = std::max(pmax_abs, std::fabs(ev));
    if (pmax_abs <= kTolEig) {
        // Chern-Ricci flat: fixed point, steady soliton with c = 0, D = 0
        cert.is_soliton = true;
        cert.c = 0;
        cert.checks = {true, pmax_abs, true, true, true, 0.0, true, 0.0};
        return cert;
    }

    // spectrum must split into {0, c} for a single nonzero c
    std::vector<double> values;
    for (size_t i = 0; i < crd.eigenvalues.size(); ++i)
        if (i == 0 || crd.cluster[i] != crd.cluster[i - 1]) values.push_back(crd.eigenvalues[i]);
    double c = 0;
    bool spectrum_ok = false;
    if (values.size() == 1) {
        c = values[0];
        spectrum_ok = true;
    } else if (values.size() == 2) {
        bool z0 = std::fabs(values[0]) <= kTolEig;
        bool z1 = std::fabs(values[1]) <= kTolEig;
        if (z0 != z1) {
            c = z0 ? values[1] : values[0];
            spectrum_ok = true;
        }
    }
    cert.checks.spectrum_two_clusters = spectrum_ok;
    if (!spectrum_ok) {
        cert.witness = "spectrum is not contained in {0, c} for a single c";
        return cert;
    }
    double worst = 0;
    for (double ev : crd.eigenvalues)
        worst = std::max(worst, std::min(std::fabs(ev), std::fabs(ev - c)));
    cert.checks.spectrum_residual = worst;
    cert.c = c;
    cert.D = crd.P - c * Mat::identity(n);

    Subspace kernel = eigen_subspace_or_empty(crd, 0.0);
    cert.checks.kernel_abelian_ideal = is_abelian_ideal(h.bracket, kernel);
    Subspace ceig = eigenspace(crd, c);
    cert.checks.c_eigenspace_subalgebra = is_subalgebra(h.bracket, ceig);

    DerivationCheck dc = is_derivation(h.bracket, cert.D);
    cert.checks.derivation_ok = dc.ok;
    cert.checks.derivation_residual = dc.residual;

    double djr = max_abs(cert.D * h.J - h.J * cert.D);
    cert.checks.DJ_residual = djr;
    cert.checks.commutes_with_J =
        djr <= kTolAlg * std::max(1.0, max_abs(cert.D)) * std::max(1.0, max_abs(h.J));

    if (!cert.checks.derivation_ok)
        cert.witness = "D = P - cI is not a derivation (residual " +
                       std::to_string(dc.residual) + ")";
    else if (!cert.checks.commutes_with_J)
        cert.witness = "D does not commute with J (residual " + std::to_string(djr) + ")";
    else if (!cert.checks.kernel_abelian_ideal)
        cert.witness = "Ker P is not an abelian ideal";
    else if (!cert.checks.c_eigenspace_subalgebra)
        cert.witness = "c-eigenspace is not a subalgebra";

    cert.is_soliton = cert.checks.derivation_ok && cert.checks.commutes_with_J &&
                      cert.checks.kernel_abelian_ideal && cert.checks.c_eigenspace_subalgebra;
    return cert;
}

EvolutionCheck soliton_evolution_check(const HermitianStructure& h, const SolitonCertificate& cert,
                                       double t, double tol) {
    if (!cert.is_soliton) throw std::invalid_argument("certificate is not positive");
    FlowSolution f = make_flow(h);
    Mat gt = metric_at(f, t).g;
    double c = cert.c;
    double factor = -2.0 * c * t + 1.0;
    double s = (c == 0.0) ? t : std::log(factor) / (-2.0 * c);
    Mat A = expm(-s * cert.D);
    Mat rhs = factor * (transpose(A) * h.g * A);
    double res = max_abs(gt - rhs) / std::max(1.0, max_abs(gt));
    return {res <= tol, res};
}

SemidirectResult build_semidirect(const HermitianStructure& h1, int dim2, const Mat& J2,
                                  const Mat& omega2, const std::vector<Mat>& theta) {
    int n1 = h1.dim();
    if (dim2 == 0) {
        SolitonCertificate cert = certify(h1);
        return {h1, cert, cert.c, is_kahler(h1)};
    }
    if (dim2 < 0 || dim2 % 2 != 0)
        throw std::invalid_argument("abelian factor dimension must be even and nonnegative");
    if (static_cast<int>(theta.size()) != n1)
        throw std::invalid_argument("theta must list one matrix per basis vector");
    ComplexStructure j2(J2);  // validates J2^2 = -I

    // g2 from omega2 via g2(X,Y) = omega2(X, J2 Y); must be symmetric positive
    Mat g2 = omega2 * J2;
    cholesky(g2);

    double scale = 1.0;
    for (const Mat& th : theta) scale = std::max(scale, max_abs(th));

    // representation: theta([X,Y]) = [theta X, theta Y]
    auto theta_of = [&](const Vec& x) {
        Mat m(dim2, dim2);
        for (int i = 0; i < n1; ++i)
            if (x[i] != 0.0) m += x[i] * theta[i];
        return m;
    };
    double rep_res = 0;
    for (int i = 0; i < n1; ++i)
        for (int j = i + 1; j < n1; ++j) {
            Mat lhs = theta_of(h1.bracket.bracket_basis(i, j));
            Mat rhs = theta[i] * theta[j] - theta[j] * theta[i];
            rep_res = std::max(rep_res, max_abs(lhs - rhs));
        }
    if (rep_res > kTolAlg * std::max(1.0, scale * scale))
        throw validation_error("theta is not a representation (residual " +
                               std::to_string(rep_res) + ")");

    // compatibility: [theta(J1 X), J2] = J2 [theta(X), J2]
    double comp_res = 0;
    for (int i = 0; i < n1; ++i) {
        Vec j1x(n1);
        for (int r = 0; r < n1; ++r) j1x[r] = h1.J(r, i);
        Mat lhs = theta_of(j1x) * J2 - J2 * theta_of(j1x);
        Mat inner = theta[i] * J2 - J2 * theta[i];
        Mat rhs = J2 * inner;
        comp_res = std::max(comp_res, max_abs(lhs - rhs));
    }
    if (comp_res > kTolAlg * std::max(1.0, scale))
        throw validation_error("theta violates the J-compatibility condition (residual " +
                               std::to_string(comp_res) + ")");

    // P_theta from omega1(P_theta X, Y) = -1/2 tr(J2 theta([X,Y])) + 1/2 tr(theta(J1 [X,Y]))
    Mat omega1 = omega_matrix(h1);
    Mat Q(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            Vec br = h1.bracket.bracket_basis(i, j);
            Mat th_br = theta_of(br);
            Mat j2th = J2 * th_br;
            double tr1 = 0;
            for (int r = 0; r < dim2; ++r) tr1 += j2th(r, r);
            Vec jbr = h1.J * br;
            Mat th_jbr = theta_of(jbr);
            double tr2 = 0;
            for (int r = 0; r < dim2; ++r) tr2 += th_jbr(r, r);
            Q(i, j) = -0.5 * tr1 + 0.5 * tr2;
        }
    Mat P_theta = inverse(omega1) * Q;

    Mat P1 = chern_ricci_operator(h1).P;
    Mat M = P1 + P_theta;
    double c = 0;
    for (int i = 0; i < n1; ++i) c += M(i, i);
    c /= n1;
    double scal_res = max_abs(M - c * Mat::identity(n1));
    if (scal_res > kTolAlg * std::max(1.0, max_abs(M)))
        throw validation_error("P1 + P_theta is not a multiple of the identity (residual " +
                               std::to_string(scal_res) + ")");

    // assemble the semidirect product
    int n = n1 + dim2;
    LieBracket b(n);
    for (int i = 0; i < n1; ++i)
        for (int j = i + 1; j < n1; ++j)
            for (int k = 0; k < n1; ++k) b.set(i, j, k, h1.bracket.at(i, j, k));
    for (int i = 0; i < n1; ++i)
        for (int a = 0; a < dim2; ++a)
            for (int bb = 0; bb < dim2; ++bb)
                if (theta[i](bb, a) != 0.0) b.set(i, n1 + a, n1 + bb, theta[i](bb, a));
    Mat J(n, n), g(n, n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            J(i, j) = h1.J(i, j);
            g(i, j) = h1.g(i, j);
        }
    for (int i = 0; i < dim2; ++i)
        for (int j = 0; j < dim2; ++j) {
            J(n1 + i, n1 + j) = J2(i, j);
            g(n1 + i, n1 + j) = g2(i, j);
        }
    HermitianStructure result(b, J, g);
    SolitonCertificate cert = certify(result);
    return {result, cert, c, is_kahler(result)};
}

}  // namespace crf
