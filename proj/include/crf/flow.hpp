#ifndef CRF_FLOW_HPP
#define CRF_FLOW_HPP

#include <string>
#include <vector>

#include "crf/chern.hpp"
#include "crf/hermitian.hpp"
#include "crf/lie.hpp"
#include "crf/linalg.hpp"

namespace crf {

/// Closed-form flow solution starting at a hermitian structure. All later
/// evaluations are pure; the eigenbasis is fixed once at construction and
/// every bracket-valued output is expressed in it.
struct FlowSolution {
    HermitianStructure initial;
    ChernRicciData crd;
    double T_minus, T_plus;
    Mat basis;               // V, g-orthonormal eigenvector columns of P0
    Mat basis_inv;           // V^{-1}
    LieBracket bracket_eig;  // structure constants in the eigenbasis
    Mat J_eig;               // V^{-1} J V
};

FlowSolution make_flow(const HermitianStructure& h);

/// Metric at time t: g(t) = g0 (I - 2 t P0) read through omega(t)=omega0-2t p0.
/// Throws std::domain_error outside (T-, T+).
HermitianStructure metric_at(const FlowSolution& f, double t);

/// P(t) = (I - 2 t P0)^{-1} P0, original basis.
Mat operator_at(const FlowSolution& f, double t);

/// tr P(t) = sum_i p_i / (1 - 2 t p_i).
double scalar_curvature_at(const FlowSolution& f, double t);

/// h(t) = (I - 2 t P0)^{1/2}, principal root via the eigendecomposition.
Mat isomorphism_at(const FlowSolution& f, double t);

/// Bracket flow solution mu(t) in the eigenbasis:
/// mu_ijk(t) = sqrt((1-2t p_k) / ((1-2t p_i)(1-2t p_j))) c_ijk.
LieBracket bracket_flow_at(const FlowSolution& f, double t);

/// Norm from the canonical inner product on brackets over an orthonormal
/// basis: |mu|^2 = sum over all ordered (i,j),k of (mu_ijk)^2.
double bracket_norm(const LieBracket& b);

enum class Direction { plus_time, minus_time };

/// Limit of a rescaled bracket flow, computed by exponent bookkeeping on the
/// closed-form coefficients (never by numerical extrapolation).
struct LimitResult {
    LieBracket bracket;   // in the flow eigenbasis
    bool converged = false;
    bool degenerate = false;  // abelian zero-bracket end state
    enum class Kind { lambda_norm, nu_scaled } kind = Kind::lambda_norm;
    Direction direction = Direction::plus_time;
    Mat predicted_P;      // expected Chern-Ricci operator of the limit, eigenbasis
    std::vector<std::string> notes;
};

/// mu(t)/|mu(t)| as t -> T_{+-}; always converges (nonabelian unless the
/// start is abelian, which is reported as degenerate).
LimitResult limit_lambda(const FlowSolution& f, Direction dir);

/// |2t+1|^{1/2} mu(t) (T = +-inf) or |T-t|^{1/2} mu(t) (finite T).
/// Convergence holds iff Ker P0 is an abelian ideal (infinite horizon) or the
/// extremal eigenspace is a nonzero subalgebra (finite horizon).
LimitResult limit_nu(const FlowSolution& f, Direction dir);

/// Hermitian structure carried by a limit: (limit bracket, J in eigenbasis,
/// identity metric). Throws if the limit did not converge.
HermitianStructure limit_structure(const FlowSolution& f, const LimitResult& lim);

/// Classical 4th-order fixed-step integration of d g/dt = -2 p(., J.) with p
/// recomputed from the current structure each stage. Oracle for metric_at.
HermitianStructure integrate_crf_numeric(const HermitianStructure& h, double t_end, int steps);

/// Same scheme for the bracket flow d mu/dt = delta_mu(P_mu), with P_mu
/// recomputed from (mu, J, omega0) each stage. Oracle for bracket_flow_at.
/// Input and output are in the basis of h (not the eigenbasis).
LieBracket integrate_bracket_flow_numeric(const HermitianStructure& h, double t_end, int steps);

}  // namespace crf

#endif
