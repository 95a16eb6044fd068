#ifndef CRF_SOLITON_HPP
#define CRF_SOLITON_HPP

#include <string>
#include <vector>

#include "crf/chern.hpp"
#include "crf/flow.hpp"
#include "crf/hermitian.hpp"

namespace crf {

/// Outcome of testing P = cI + D for a derivation D commuting with J.
/// Every condition that was examined is recorded, so a negative certificate
/// names its witness.
struct SolitonCertificate {
    bool is_soliton = false;
    double c = 0;
    Mat D;

    struct Checks {
        bool spectrum_two_clusters = false;  // spectrum within {0, c}
        double spectrum_residual = 0;
        bool kernel_abelian_ideal = false;
        bool c_eigenspace_subalgebra = false;
        bool derivation_ok = false;
        double derivation_residual = 0;
        bool commutes_with_J = false;
        double DJ_residual = 0;
    } checks;

    std::string witness;  // first failed condition, empty on success
};

SolitonCertificate certify(const HermitianStructure& h);

/// Self-similarity of the flow from a certified soliton:
/// omega(t) = (-2ct+1) omega(A(t)., A(t).) where A(t) = exp(-s(t) D) and
/// s(t) = log(-2ct+1)/(-2c) (s = t at c = 0). Returns the worst metric
/// residual against metric_at.
struct EvolutionCheck {
    bool ok;
    double residual;
};
EvolutionCheck soliton_evolution_check(const HermitianStructure& h, const SolitonCertificate& cert,
                                       double t, double tol = 1e-7);

/// Semidirect soliton construction from (g1, J1, omega-compatible g1 metric),
/// an abelian summand (dim2, J2, omega2) and a representation theta of g1 on
/// it. Validates the representation identity, the J-compatibility condition
/// of theta, and that P1 + P_theta is scalar; returns the assembled structure
/// with its certificate and the Kahler flag of the result.
struct SemidirectResult {
    HermitianStructure structure;
    SolitonCertificate certificate;
    double c = 0;
    bool kahler = false;
};

SemidirectResult build_semidirect(const HermitianStructure& h1, int dim2, const Mat& J2,
                                  const Mat& omega2, const std::vector<Mat>& theta);

}  // namespace crf

#endif
