#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quatgro/quaternion.hpp"
#include "quatgro/quatmat.hpp"
#include "quatgro/rng.hpp"

namespace quatgro {

// Stream of quaternion vectors whose 4n real components are i.i.d. normal
// with mean 0 and variance 1/4, so the density of one quaternion entry is
// (pi/2)^{-2} exp(-2|q|^2).
class QuatGaussianSampler {
public:
    QuatGaussianSampler(std::size_t n, std::uint64_t seed);

    QuatVector next();

    std::size_t dimension() const { return n_; }
    std::uint64_t counter() const { return rng_.counter(); }

private:
    std::size_t n_;
    Rng rng_;
};

// Draws count vectors from QuatGaussianSampler(n, seed), in stream order.
std::vector<QuatVector> sample_gaussian(std::size_t n, std::size_t count,
                                        std::uint64_t seed);

// Monte-Carlo estimate of (3/(8 pi)) * integral over the unit sphere S^3 of
// sign(Re(conj(w) z)) * w, using uniform sphere samples scaled by the sphere
// area 2 pi^2.  Converges to sign_quat(z).
Quaternion mc_sign_formula(const Quaternion& z, std::size_t samples,
                           std::uint64_t seed);

// Monte-Carlo estimate of E[ sign<u,z> sign<z,v> ] for a Gaussian quaternion
// vector z.  The limit is <u,v> * f applied to |<u,v>|, with f = eval_fH.
Quaternion mc_grothendieck_identity(const QuatVector& u, const QuatVector& v,
                                    std::size_t samples, std::uint64_t seed);

// (3/2) * integral_0^{pi/2} cos^4(s) / sqrt(1 - t^2 sin^2(s)) ds for
// t in [0,1].  Absolute error at most 1e-10 for t < 1 and 1e-6 at t = 1.
// Throws std::domain_error outside [0,1].
double eval_fH(double t);

struct RoundResult {
    std::vector<Quaternion> eps;    // unit scalars for the row side
    std::vector<Quaternion> delta;  // unit scalars for the column side
    double best_value = 0.0;        // largest sampled objective
    double mean_value = 0.0;        // average sampled objective
    std::size_t samples = 0;
};

// Sign rounding of Gram vectors: per sample z, eps_i = sign<z,u_i> and
// delta_j = sign<z,v_j>; keeps the assignment with the best scalar objective
// sum Re(m_ij conj(eps_i) delta_j).  The winning assignment is a feasible
// lower-bound witness for the (inf,1) norm of m.
RoundResult gaussian_round(const std::vector<QuatVector>& us,
                           const std::vector<QuatVector>& vs,
                           const QuatMatrix& m, std::size_t samples,
                           std::uint64_t seed);

}  // namespace quatgro
