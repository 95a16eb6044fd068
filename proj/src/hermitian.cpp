#include "crf/hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace crf {

namespace {

void require_square(const Mat& M, const char* what) {
    if (M.n != M.m || M.n == 0) throw validation_error(std::string(what) + " must be square");
}

double j_square_residual(const Mat& J) {
    Mat JJ = J * J;
    Mat I = Mat::identity(J.n);
    return max_abs(JJ + I);
}

}  // namespace

ComplexStructure::ComplexStructure(Mat j) : J(std::move(j)) {
    require_square(J, "J");
    if (J.n % 2 != 0) throw validation_error("complex structure needs even dimension");
    double r = j_square_residual(J);
    if (r > kTolAlg * std::max(1.0, max_abs(J) * max_abs(J)))
        throw validation_error("J^2 != -I (residual " + std::to_string(r) + ")");
}

IntegrabilityCheck check_integrability(const LieBracket& b, const Mat& J, double tol) {
    int n = b.dim;
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec ji(n), jj(n);
            for (int r = 0; r < n; ++r) {
                ji[r] = J(r, i);
                jj[r] = J(r, j);
            }
            Vec ei(n, 0.0), ej(n, 0.0);
            ei[i] = 1.0;
            ej[j] = 1.0;
            Vec lhs = b.bracket(ji, jj);
            Vec t1 = b.bracket_basis(i, j);
            Vec t2 = J * b.bracket(ji, ej);
            Vec t3 = J * b.bracket(ei, jj);
            for (int k = 0; k < n; ++k)
                worst = std::max(worst, std::fabs(lhs[k] - t1[k] - t2[k] - t3[k]));
        }
    double scale = std::max(1.0, max_abs(b.c)) * std::max(1.0, max_abs(J) * max_abs(J));
    return {worst <= tol * scale, worst};
}

HermitianStructure::HermitianStructure(LieBracket b, Mat j, Mat metric)
    : bracket(std::move(b)), J(std::move(j)), g(std::move(metric)) {
    require_square(J, "J");
    require_square(g, "metric");
    if (J.n != bracket.dim || g.n != bracket.dim)
        throw validation_error("dimension mismatch between bracket, J and metric");
    ValidationReport rep = validate_bracket(bracket);
    if (!rep.ok())
        throw validation_error("bracket identity violated: " + rep.issues.front().identity +
                               " (residual " + std::to_string(rep.issues.front().magnitude) + ")");
    double jr = j_square_residual(J);
    if (jr > kTolAlg * std::max(1.0, max_abs(J) * max_abs(J)))
        throw validation_error("J^2 != -I (residual " + std::to_string(jr) + ")");
    cholesky(g);  // throws unless symmetric positive-definite
    Mat gJ = transpose(J) * g * J;
    double cr = max_abs(gJ - g);
    if (cr > kTolAlg * std::max(1.0, max_abs(g)) * std::max(1.0, max_abs(J) * max_abs(J)))
        throw validation_error("metric not J-compatible (residual " + std::to_string(cr) + ")");
    IntegrabilityCheck ic = check_integrability(bracket, J);
    if (!ic.ok)
        throw validation_error("complex structure not integrable (residual " +
                               std::to_string(ic.residual) + ")");
}

Mat omega_matrix(const Mat& J, const Mat& g) { return transpose(J) * g; }

Mat omega_matrix(const HermitianStructure& h) { return omega_matrix(h.J, h.g); }

double Form3::max_entry() const {
    double s = 0;
    for (double v : t) s = std::max(s, std::fabs(v));
    return s;
}

Form3 d_two_form(const LieBracket& b, const Mat& omega) {
    int n = b.dim;
    Form3 d(n);
    auto om = [&](const Vec& x, int k) {
        double s = 0;
        for (int r = 0; r < n; ++r) s += x[r] * omega(r, k);
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double v = -om(b.bracket_basis(i, j), k) + om(b.bracket_basis(i, k), j) -
                           om(b.bracket_basis(j, k), i);
                // antisymmetric completion over all index orders
                d.at(i, j, k) = v;
                d.at(j, k, i) = v;
                d.at(k, i, j) = v;
                d.at(j, i, k) = -v;
                d.at(i, k, j) = -v;
                d.at(k, j, i) = -v;
            }
    return d;
}

Form3 d_omega(const HermitianStructure& h) { return d_two_form(h.bracket, omega_matrix(h)); }

bool is_kahler(const HermitianStructure& h, double tol) {
    double scale = std::max(1.0, max_abs(h.g)) * std::max(1.0, max_abs(h.bracket.c));
    return d_omega(h).max_entry() <= tol * scale;
}

Mat compatible_metric_from(const Mat& J, const Mat& g0) {
    Mat sym = transpose(J) * g0 * J;
    Mat g = 0.5 * (g0 + sym);
    return g;
}

Mat canonical_compatible_metric(const Mat& J) {
    return compatible_metric_from(J, Mat::identity(J.n));
}

}  // namespace crf
