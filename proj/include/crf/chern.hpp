#ifndef CRF_CHERN_HPP
#define CRF_CHERN_HPP

#include <vector>

#include "crf/hermitian.hpp"
#include "crf/lie.hpp"
#include "crf/linalg.hpp"

namespace crf {

/// Threshold for eigenvalue clustering (equality and zero decisions).
inline constexpr double kTolEig = 1e-8;

/// Chern-Ricci 2-form p of (bracket, J):
/// p(X,Y) = -1/2 tr(J ad_{[X,Y]}) + 1/2 tr(ad_{J[X,Y]}).
/// Depends only on the bracket and J, not on the metric.
Mat chern_ricci_form(const LieBracket& b, const Mat& J);
Mat chern_ricci_form(const HermitianStructure& h);

/// The operator P with p = omega(P., .), its g-orthonormal eigensystem and
/// the eigenvalue clustering, plus the maximal flow interval endpoints.
struct ChernRicciData {
    Mat p;                      // the 2-form
    Mat P;                      // the operator, original basis
    std::vector<double> eigenvalues;  // ascending
    Mat eigenbasis;             // columns, g-orthonormal, P V = V diag
    std::vector<int> cluster;   // cluster index per eigenvalue (ascending order)
    double T_minus = 0, T_plus = 0;  // +-infinity when unbounded
};

ChernRicciData chern_ricci_operator(const HermitianStructure& h);

/// (T-, T+) from the extremal eigenvalues: T+ = 1/(2 p_max) when some
/// eigenvalue exceeds kTolEig, else +infinity; T- mirrored.
std::pair<double, double> singular_times(const std::vector<double>& eigenvalues,
                                         double tol = kTolEig);
std::pair<double, double> singular_times(const ChernRicciData& d);

/// Eigenspace for the cluster containing `value`; throws if no eigenvalue is
/// within tol of it.
Subspace eigenspace(const ChernRicciData& d, double value, double tol = kTolEig);

}  // namespace crf

#endif
