#ifndef CRF_LIE_HPP
#define CRF_LIE_HPP

#include <string>
#include <vector>

#include "crf/linalg.hpp"

namespace crf {

/// Residual threshold for algebraic identities on inputs of unit scale.
inline constexpr double kTolAlg = 1e-9;
/// Relative singular-value threshold for rank decisions.
inline constexpr double kRankTol = 1e-8;

/// A real Lie algebra given by structure constants: [e_i, e_j] = sum_k c_ijk e_k.
/// Indices are 0-based internally; all I/O surfaces use 1-based labels.
struct LieBracket {
    int dim = 0;
    std::vector<double> c;  // dim^3, layout (i*dim + j)*dim + k

    LieBracket() = default;
    explicit LieBracket(int d) : dim(d), c(static_cast<size_t>(d) * d * d, 0.0) {}

    double at(int i, int j, int k) const {
        return c[(static_cast<size_t>(i) * dim + j) * dim + k];
    }
    double& at(int i, int j, int k) {
        return c[(static_cast<size_t>(i) * dim + j) * dim + k];
    }

    /// Sets c_ijk = v and c_jik = -v.
    void set(int i, int j, int k, double v) {
        at(i, j, k) = v;
        at(j, i, k) = -v;
    }

    /// [x, y] for coordinate vectors.
    Vec bracket(const Vec& x, const Vec& y) const;

    /// [e_i, e_j] as a coordinate vector.
    Vec bracket_basis(int i, int j) const;
};

/// Subspace carried as an orthonormal basis (columns, standard inner product).
struct Subspace {
    Mat basis;  // dim x r

    int ambient_dim() const { return basis.n; }
    int dim() const { return basis.m; }

    /// Builds from spanning vectors (columns), orthonormalizing and dropping
    /// dependent ones by the rank threshold.
    static Subspace span(const Mat& vectors, double rel_tol = kRankTol);
};

struct ValidationIssue {
    std::string identity;  // which identity failed
    double magnitude;      // worst residual
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks antisymmetry and the Jacobi identity; empty report iff both hold
/// within kTolAlg (scaled by the largest structure constant).
ValidationReport validate_bracket(const LieBracket& b, double tol = kTolAlg);

/// Adjoint map ad_x with ad_x(y) = [x, y], as a matrix acting on coordinates.
Mat ad(const LieBracket& b, const Vec& x);
Mat ad_basis(const LieBracket& b, int i);

bool is_abelian_ideal(const LieBracket& b, const Subspace& s, double tol = kTolAlg);
bool is_subalgebra(const LieBracket& b, const Subspace& s, double tol = kTolAlg);

/// Lower central series termination test.
bool is_nilpotent(const LieBracket& b);

/// Nilpotency class (1 for abelian, 2 for 2-step, ...); -1 if not nilpotent.
int nilpotency_step(const LieBracket& b);

Subspace center(const LieBracket& b);

/// Derived algebra [g, g] as a subspace.
Subspace derived_algebra(const LieBracket& b);

/// Basis of the derivation algebra Der(g): all D with
/// D[x,y] = [Dx,y] + [x,Dy]. Solved as a nullspace problem in dim^2 unknowns.
std::vector<Mat> derivation_space(const LieBracket& b);

struct DerivationCheck {
    bool ok;
    double residual;
};
DerivationCheck is_derivation(const LieBracket& b, const Mat& D, double tol = kTolAlg);

/// Basis change action h.[x,y] = h[h^{-1}x, h^{-1}y]; throws on singular h.
LieBracket act_gl(const LieBracket& b, const Mat& h);

/// Scales every structure constant.
LieBracket scale(const LieBracket& b, double s);

/// max |c_ijk - d_ijk| (same dimension assumed).
double bracket_distance(const LieBracket& a, const LieBracket& d);

}  // namespace crf

#endif
