#ifndef CRF_TEST_FIXTURES_HPP
#define CRF_TEST_FIXTURES_HPP

// Hand-built hermitian structures used across the suites. Everything here is
// constructed directly from structure constants so the tests do not depend on
// the catalog data file.

#include <cstdint>

#include "crf/hermitian.hpp"
#include "crf/lie.hpp"
#include "crf/linalg.hpp"

namespace fix {

using crf::LieBracket;
using crf::Mat;
using crf::Vec;

inline Mat J_pairs(int dim, std::initializer_list<std::pair<int, int>> pairs) {
    // J e_a = e_b and J e_b = -e_a for every (a, b), 1-based
    Mat J(dim, dim);
    for (auto [a, b] : pairs) {
        J(b - 1, a - 1) = 1.0;
        J(a - 1, b - 1) = -1.0;
    }
    return J;
}

// [e1,e2]=e2 with J e1=e2, J e3=e4 and the flat metric
inline crf::HermitianStructure rr30() {
    LieBracket b(4);
    b.set(0, 1, 1, 1.0);
    return {b, J_pairs(4, {{1, 2}, {3, 4}}), Mat::identity(4)};
}

// [e1,e2]=e2, [e3,e4]=e4
inline crf::HermitianStructure r2r2() {
    LieBracket b(4);
    b.set(0, 1, 1, 1.0);
    b.set(2, 3, 3, 1.0);
    return {b, J_pairs(4, {{1, 2}, {3, 4}}), Mat::identity(4)};
}

inline LieBracket rp2_bracket() {
    LieBracket b(4);
    b.set(0, 2, 2, 1.0);
    b.set(0, 3, 3, 1.0);
    b.set(1, 2, 3, 1.0);
    b.set(1, 3, 2, -1.0);
    return b;
}

// the realified complex affine algebra with J e1=e3, J e2=e4
inline crf::HermitianStructure rp2_J1() {
    return {rp2_bracket(), J_pairs(4, {{1, 3}, {2, 4}}), Mat::identity(4)};
}

// same algebra with the multiplication-by-i structure (bi-invariant)
inline crf::HermitianStructure rp2_biinvariant() {
    return {rp2_bracket(), J_pairs(4, {{1, 2}, {3, 4}}), Mat::identity(4)};
}

// [e1,e2]=e3 (nilpotent) with an abelian J
inline crf::HermitianStructure rh3() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    return {b, J_pairs(4, {{1, 2}, {3, 4}}), Mat::identity(4)};
}

// [e1,e2]=e3, [e4,e1]=e1, [e4,e2]=sqrt(10) e1 + e2, [e4,e3]=2 e3
inline crf::HermitianStructure h4() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    b.set(3, 0, 0, 1.0);
    b.set(3, 1, 0, std::sqrt(10.0));
    b.set(3, 1, 1, 1.0);
    b.set(3, 2, 2, 2.0);
    return {b, J_pairs(4, {{1, 3}, {4, 2}}), Mat::identity(4)};
}

// [e1,e2]=e3, [e4,e1]=e1, [e4,e3]=e3 with J e1=e4, J e2=e3
inline crf::HermitianStructure d41() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    b.set(3, 0, 0, 1.0);
    b.set(3, 2, 2, 1.0);
    return {b, J_pairs(4, {{1, 4}, {2, 3}}), Mat::identity(4)};
}

// [e1,e2]=e3, [e4,e1]=e1, [e4,e2]=e2, [e4,e3]=2e3 with J e4=e1, J e3=e2
inline crf::HermitianStructure d412_v3() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    b.set(3, 0, 0, 1.0);
    b.set(3, 1, 1, 1.0);
    b.set(3, 2, 2, 2.0);
    return {b, J_pairs(4, {{4, 1}, {3, 2}}), Mat::identity(4)};
}

// half-scaled variant with J e1=e2, J e4=e3 (Kahler, Einstein-like)
inline crf::HermitianStructure d412_v1() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    b.set(3, 0, 0, 0.5);
    b.set(3, 1, 1, 0.5);
    b.set(3, 2, 2, 1.0);
    return {b, J_pairs(4, {{1, 2}, {4, 3}}), Mat::identity(4)};
}

// same bracket with the opposite orientation on the first pair (no soliton)
inline crf::HermitianStructure d412_v2() {
    LieBracket b(4);
    b.set(0, 1, 2, 1.0);
    b.set(3, 0, 0, 0.5);
    b.set(3, 1, 1, 0.5);
    b.set(3, 2, 2, 1.0);
    return {b, J_pairs(4, {{2, 1}, {4, 3}}), Mat::identity(4)};
}

// [e4,e1]=e1, [e4,e2]=gamma e2 - delta e3, [e4,e3]=delta e2 + gamma e3
inline crf::HermitianStructure rp4(double gamma, double delta) {
    LieBracket b(4);
    b.set(3, 0, 0, 1.0);
    b.set(3, 1, 1, gamma);
    b.set(3, 1, 2, -delta);
    b.set(3, 2, 1, delta);
    b.set(3, 2, 2, gamma);
    return {b, J_pairs(4, {{1, 4}, {2, 3}}), Mat::identity(4)};
}

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    double uniform(double a, double b) {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return a + (b - a) * static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

inline Mat random_compatible_metric(const Mat& J, Rng& rng) {
    int n = J.n;
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
    Mat g0 = crf::transpose(M) * M + 0.5 * Mat::identity(n);
    return crf::compatible_metric_from(J, g0);
}

}  // namespace fix

#endif
