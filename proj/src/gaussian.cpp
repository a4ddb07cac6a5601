#include "quatgro/gaussian.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "quatgro/norms.hpp"
#include "quatgro/quadrature.hpp"

namespace quatgro {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kChunk = 4096;

// Deterministic pairwise reduction; the tree shape depends only on the
// number of inputs, so results are reproducible across runs and platforms.
double pairwise_sum(const std::vector<double>& xs, std::size_t lo,
                    std::size_t hi) {
    if (hi - lo == 0) return 0.0;
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

// Accumulates scalar samples in fixed-size chunks and combines the chunk
// totals pairwise.
class ChunkedMean {
public:
    void add(double x) {
        acc_ += x;
        if (++fill_ == kChunk) {
            sums_.push_back(acc_);
            acc_ = 0.0;
            fill_ = 0;
        }
        ++count_;
    }

    double mean() const {
        if (count_ == 0) return 0.0;
        std::vector<double> sums = sums_;
        sums.push_back(acc_);
        return pairwise_sum(sums, 0, sums.size()) /
               static_cast<double>(count_);
    }

private:
    std::vector<double> sums_;
    double acc_ = 0.0;
    std::size_t fill_ = 0;
    std::size_t count_ = 0;
};

struct QuatMean {
    std::array<ChunkedMean, 4> c;

    void add(const Quaternion& q) {
        c[0].add(q.a0);
        c[1].add(q.a1);
        c[2].add(q.a2);
        c[3].add(q.a3);
    }

    Quaternion mean() const {
        return Quaternion(c[0].mean(), c[1].mean(), c[2].mean(), c[3].mean());
    }
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

QuatGaussianSampler::QuatGaussianSampler(std::size_t n, std::uint64_t seed)
    : n_(n), rng_(seed) {
    if (n == 0) throw std::invalid_argument("sampler dimension must be >= 1");
}

QuatVector QuatGaussianSampler::next() {
    QuatVector v(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        v[i] = rng_.next_gaussian_quaternion(0.25);
    }
    return v;
}

std::vector<QuatVector> sample_gaussian(std::size_t n, std::size_t count,
                                        std::uint64_t seed) {
    QuatGaussianSampler sampler(n, seed);
    std::vector<QuatVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
    return out;
}

Quaternion mc_sign_formula(const Quaternion& z, std::size_t samples,
                           std::uint64_t seed) {
    Rng rng(seed);
    QuatMean mean;
    for (std::size_t i = 0; i < samples; ++i) {
        Quaternion w = rng.next_unit_quaternion();
        // Re(conj(w) z) is the Euclidean dot product of w and z.
        double dot = w.a0 * z.a0 + w.a1 * z.a1 + w.a2 * z.a2 + w.a3 * z.a3;
        int s = sign_of(dot);
        mean.add(Quaternion(s * w.a0, s * w.a1, s * w.a2, s * w.a3));
    }
    // Mean over the uniform sphere times area 2 pi^2, times 3/(8 pi).
    return mean.mean() * (0.75 * kPi);
}

Quaternion mc_grothendieck_identity(const QuatVector& u, const QuatVector& v,
                                    std::size_t samples, std::uint64_t seed) {
    if (u.size() != v.size() || u.size() == 0) {
        throw std::invalid_argument("vectors must share a positive dimension");
    }
    QuatGaussianSampler sampler(u.size(), seed);
    SignConvention zero = SignConvention::zero_maps_to_zero;
    QuatMean mean;
    for (std::size_t i = 0; i < samples; ++i) {
        QuatVector z = sampler.next();
        Quaternion a = sign_quat(inner_product(u, z), zero);
        Quaternion b = sign_quat(inner_product(z, v), zero);
        mean.add(a * b);
    }
    return mean.mean();
}

double eval_fH(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("eval_fH requires t in [0,1]");
    }
    // 1 - t^2 sin^2 s rewritten as cos^2 s + (1-t)(1+t) sin^2 s; at t = 1 the
    // integrand degenerates smoothly to cos^3 s instead of dividing 0 by 0.
    double c1 = (1.0 - t) * (1.0 + t);
    auto integrand = [c1](double s) {
        double co = std::cos(s);
        double si = std::sin(s);
        double den = std::sqrt(co * co + c1 * si * si);
        if (den == 0.0) return 0.0;
        double c2 = co * co;
        return c2 * c2 / den;
    };
    return 1.5 * integrate_adaptive(integrand, 0.0, 0.5 * kPi, 1e-12);
}

RoundResult gaussian_round(const std::vector<QuatVector>& us,
                           const std::vector<QuatVector>& vs,
                           const QuatMatrix& m, std::size_t samples,
                           std::uint64_t seed) {
    if (us.empty() || vs.empty()) {
        throw std::invalid_argument("gaussian_round needs nonempty vector sets");
    }
    if (us.size() != m.rows() || vs.size() != m.cols()) {
        throw std::invalid_argument("Gram vector counts must match the matrix");
    }
    std::size_t dim = us[0].size();
    for (const QuatVector& u : us) {
        if (u.size() != dim) throw std::invalid_argument("ragged Gram vectors");
    }
    for (const QuatVector& v : vs) {
        if (v.size() != dim) throw std::invalid_argument("ragged Gram vectors");
    }
    if (samples == 0) throw std::invalid_argument("samples must be >= 1");

    QuatGaussianSampler sampler(dim, seed);
    SignConvention one = SignConvention::zero_maps_to_one;
    RoundResult result;
    result.samples = samples;
    ChunkedMean mean;
    std::vector<Quaternion> eps(us.size()), delta(vs.size());
    bool have_best = false;
    for (std::size_t s = 0; s < samples; ++s) {
        QuatVector z = sampler.next();
        // The expectation identity pairs sign<u,z> with sign<z,v>; the
        // objective consumes eps conjugated, so eps absorbs the conjugation.
        for (std::size_t i = 0; i < us.size(); ++i) {
            eps[i] = sign_quat(inner_product(z, us[i]), one);
        }
        for (std::size_t j = 0; j < vs.size(); ++j) {
            delta[j] = sign_quat(inner_product(z, vs[j]), one);
        }
        double value = inf1_objective(m, eps, delta);
        mean.add(value);
        if (!have_best || value > result.best_value) {
            have_best = true;
            result.best_value = value;
            result.eps = eps;
            result.delta = delta;
        }
    }
    result.mean_value = mean.mean();
    return result;
}

}  // namespace quatgro
