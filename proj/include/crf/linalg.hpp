#ifndef CRF_LINALG_HPP
#define CRF_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crf {

/// Thrown when an input fails a structural invariant (shape, symmetry,
/// positivity, integrability, ...). Carries the residual that tripped it.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for Lie algebras of dimension <= ~10.
struct Mat {
    int n = 0, m = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, 0.0) {}

    static Mat identity(int d);
    static Mat diag(const Vec& d);

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }

    bool empty() const { return n == 0 || m == 0; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);
};

Mat operator+(Mat x, const Mat& y);
Mat operator-(Mat x, const Mat& y);
Mat operator*(double s, Mat x);
Mat operator*(const Mat& x, const Mat& y);
Vec operator*(const Mat& x, const Vec& v);

Mat transpose(const Mat& x);
double frob_norm(const Mat& x);
double max_abs(const Mat& x);
double max_abs(const Vec& v);
double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);

/// Solve A x = b by LU with partial pivoting. Throws validation_error on a
/// numerically singular pivot.
Vec solve(Mat A, Vec b);
Mat inverse(const Mat& A);

/// Cholesky factor L (lower) with A = L L^T. Throws if A is not symmetric
/// positive-definite.
Mat cholesky(const Mat& A, double sym_tol = 1e-9);

struct EigenSym {
    Vec values;   // ascending
    Mat vectors;  // columns, orthonormal
};

/// Cyclic Jacobi rotations with a fixed sweep order; off-diagonal residual
/// driven below 1e-12 * ||S||_F. Deterministic for identical input.
EigenSym sym_eigen(Mat S);

/// Eigendecomposition of a g-self-adjoint operator P (g P symmetric):
/// reduces via the Cholesky factor of g to a standard symmetric problem.
/// Returned vectors are g-orthonormal columns with P V = V diag(values).
EigenSym sym_eigen_metric(const Mat& P, const Mat& g);

/// Orthonormal basis (columns) of the nullspace of A, deciding rank by
/// singular values of A (via A^T A) thresholded at rel_tol * sigma_max.
Mat nullspace(const Mat& A, double rel_tol = 1e-8);

/// Orthonormal basis (columns) of the column space of A, same thresholding.
Mat column_space(const Mat& A, double rel_tol = 1e-8);

int rank(const Mat& A, double rel_tol = 1e-8);

/// Largest / smallest singular value; cond = smax/smin (inf if singular).
double cond_number(const Mat& A);

/// Matrix exponential by scaling-and-squaring with a Taylor series summed
/// to relative 1e-16 per term; accurate to ~1e-12 for the sizes used here.
Mat expm(const Mat& A);

/// Principal square root of a matrix known to be diagonalizable with real
/// positive spectrum in a g-orthonormal frame: V diag(sqrt(lambda)) V^{-1}.
Mat sqrtm_spd_like(const Mat& A, const Mat& g);

}  // namespace crf

#endif
