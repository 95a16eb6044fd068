#ifndef CRF_ALMOST_ABELIAN_HPP
#define CRF_ALMOST_ABELIAN_HPP

#include "crf/flow.hpp"
#include "crf/hermitian.hpp"
#include "crf/lie.hpp"
#include "crf/linalg.hpp"

namespace crf {

/// Solvable algebras with a codimension-one abelian ideal n = <e_1..e_{2n-1}>,
/// parameterized by ad_{e_2n}|_n = [[c, 0], [d, A]]: c scales e_1, the column
/// d feeds e_1 into the middle block, and A is a complex-linear endomorphism
/// of the middle block. The hermitian data is the normal form
/// J e_i = e_{2n+1-i} (i <= n), g = I.
struct AlmostAbelianSpec {
    int n = 2;   // half real dimension, dim = 2n
    Mat A;       // 2(n-1) x 2(n-1), commuting with the middle-block J
    double c = 0;  // >= 0
    Vec d;       // length 2n-2

    int dim() const { return 2 * n; }
};

/// Complex structure restricted to the middle block <e_2..e_{2n-1}>.
Mat middle_block_J(int n);

/// Full normal-form J on R^{2n}.
Mat normal_form_J(int n);

/// Builds the bracket only (no hermitian validation).
LieBracket almost_abelian_bracket(const AlmostAbelianSpec& spec);

/// Assembles and validates the full hermitian structure. Throws if A is not
/// complex-linear on the middle block or c < 0.
HermitianStructure assemble(const AlmostAbelianSpec& spec);

/// Closed-form Chern-Ricci data: p = e' e^1 ^ e^{2n} and
/// P = e' diag(1, 0, ..., 0, 1) with e' = -c(2c + tr A)/2.
struct ClosedFormChernData {
    Mat p;
    Mat P;
    double eigenvalue;  // e'
};
ClosedFormChernData chern_data_closed_form(const AlmostAbelianSpec& spec);

/// Qualitative flow prediction for the family, cross-checkable against the
/// flow module on the assembled structure.
struct AlmostAbelianReport {
    double eigenvalue = 0;     // e' above
    double e = 0;              // 2 e', the interval parameter
    bool p_zero = false;
    bool soliton = false;      // p = 0, or p != 0 with every d_i = 0
    double T_minus = 0, T_plus = 0;
    bool nu_limit_exists = false;      // an infinite-time end with p != 0
    Direction nu_direction = Direction::plus_time;
    LieBracket nu_direction_bracket;   // unit-norm mu_{A,c,0}
    bool finite_end_heisenberg = false;  // non-soliton: the finite-time
                                         // normalized limit is h3 + abelian
};
AlmostAbelianReport predict_behavior(const AlmostAbelianSpec& spec);

/// Convenience accessors for the 4-dimensional family mu_{a,b,c,d,e}:
/// A = [[a, -b], [b, a]], d-column = (d, e).
AlmostAbelianSpec make_spec4(double a, double b, double c, double d, double e);

/// Whether mu_{a,b,c,d,e} is isomorphic to the algebra with ad eigenvalues
/// (1,1,1) and one nilpotent Jordan block: a = c != 0, b = 0, (d,e) != 0.
bool is_r41_type(double a, double b, double c, double d, double e, double tol = kTolAlg);

/// Decides equality of two brackets up to positive scaling by normalizing
/// both to unit norm and comparing coefficients.
bool equal_up_to_positive_scale(const LieBracket& x, const LieBracket& y, double tol = 1e-6);

}  // namespace crf

#endif
