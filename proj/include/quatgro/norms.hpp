#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quatgro/quatmat.hpp"

namespace quatgro {

/// Two-sided norm estimate. `lower` always comes from an explicit feasible
/// witness; `upper` is a cheap rigorous bound (entrywise L1 by default, an
/// SDP value when a caller has one).
struct NormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<Quaternion> eps;    // row scalars (empty for symmetric norms)
    std::vector<Quaternion> delta;  // column scalars
    int restarts_used = 0;
    std::uint64_t seed = 0;
};

/// Entrywise sum of moduli; a valid upper bound for the (inf,1) and theta
/// norm families since all scalars have modulus at most 1.
double entrywise_l1(const QuatMatrix& m);

double inf1_objective(const QuatMatrix& m, const std::vector<Quaternion>& eps,
                      const std::vector<Quaternion>& delta);
double theta_objective(const QuatMatrix& a, const std::vector<Quaternion>& delta);

/// Alternating sign ascent from the given starting scalars; returns the
/// reached objective value. The objective never decreases across sweeps.
double inf1_ascend(const QuatMatrix& m, std::vector<Quaternion>& eps,
                   std::vector<Quaternion>& delta, int max_sweeps = 500);

/// Coordinate ascent for the symmetric objective; `ball` allows |delta_i|<=1
/// (the Theta variant), otherwise scalars stay on the unit sphere.
double theta_ascend(const QuatMatrix& a, std::vector<Quaternion>& delta, bool ball,
                    int max_sweeps = 500);

NormEstimate inf1_lower(const QuatMatrix& m, int restarts, std::uint64_t seed, int threads = 1);
NormEstimate theta_lower(const SelfAdjointQuatMatrix& a, int restarts, std::uint64_t seed,
                         int threads = 1);
NormEstimate Theta_lower(const SelfAdjointQuatMatrix& a, int restarts, std::uint64_t seed,
                         int threads = 1);

/// 2m x 2n complex matrix built from the transposed 2x2 representations of
/// the entries; its complex (inf,1) norm sandwiches the quaternion one
/// within a factor of 2.
CMat build_tilde_M(const QuatMatrix& m);

struct ComplexNormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<Complex> eps;
    std::vector<Complex> delta;
    int restarts_used = 0;
    std::uint64_t seed = 0;
};

double cinf1_objective(const CMat& b, const std::vector<Complex>& eps,
                       const std::vector<Complex>& delta);
ComplexNormEstimate inf1_lower_complex(const CMat& b, int restarts, std::uint64_t seed);

/// Splits a diagonally dominant symmetric matrix as A = P + L with L a
/// weighted Laplacian (zero row sums, nonpositive off-diagonal) and P
/// entrywise nonnegative and diagonally dominant; the split is unique.
std::pair<RMat, RMat> dd_decompose(const RMat& a);

}  // namespace quatgro
