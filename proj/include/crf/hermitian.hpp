#ifndef CRF_HERMITIAN_HPP
#define CRF_HERMITIAN_HPP

#include <vector>

#include "crf/lie.hpp"
#include "crf/linalg.hpp"

namespace crf {

/// Almost complex structure J with J^2 = -I.
struct ComplexStructure {
    Mat J;

    explicit ComplexStructure(Mat j);  // validates square, even dim, J^2=-I
};

struct IntegrabilityCheck {
    bool ok;
    double residual;
};

/// [JX,JY] = [X,Y] + J[JX,Y] + J[X,JY] over all basis pairs.
IntegrabilityCheck check_integrability(const LieBracket& b, const Mat& J, double tol = kTolAlg);

/// Left-invariant hermitian structure (bracket, J, g). Construction validates
/// everything eagerly: bracket identities, J^2=-I, g symmetric positive,
/// J-compatibility of g, and integrability of J.
struct HermitianStructure {
    LieBracket bracket;
    Mat J;
    Mat g;

    HermitianStructure(LieBracket b, Mat j, Mat metric);

    int dim() const { return bracket.dim; }
};

/// Fundamental 2-form omega(X,Y) = g(JX,Y), as an antisymmetric matrix.
Mat omega_matrix(const HermitianStructure& h);
Mat omega_matrix(const Mat& J, const Mat& g);

/// Antisymmetric rank-3 tensor d(omega) for the left-invariant 2-form:
/// d_omega(x,y,z) = -omega([x,y],z) + omega([x,z],y) - omega([y,z],x).
struct Form3 {
    int dim = 0;
    std::vector<double> t;  // dim^3

    explicit Form3(int d) : dim(d), t(static_cast<size_t>(d) * d * d, 0.0) {}
    double at(int i, int j, int k) const {
        return t[(static_cast<size_t>(i) * dim + j) * dim + k];
    }
    double& at(int i, int j, int k) {
        return t[(static_cast<size_t>(i) * dim + j) * dim + k];
    }
    double max_entry() const;
};

Form3 d_two_form(const LieBracket& b, const Mat& omega);
Form3 d_omega(const HermitianStructure& h);

bool is_kahler(const HermitianStructure& h, double tol = kTolAlg);

/// g' = (g0 + J^T g0 J)/2 is compatible with J for any SPD g0; with g0 = I
/// this is the canonical choice (equals I whenever J is orthogonal).
Mat compatible_metric_from(const Mat& J, const Mat& g0);
Mat canonical_compatible_metric(const Mat& J);

}  // namespace crf

#endif
