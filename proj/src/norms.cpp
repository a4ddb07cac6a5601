#include "quatgro/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "quatgro/rng.hpp"

namespace quatgro {

namespace {

constexpr double kSweepTol = 1e-10;

void run_restarts(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int k = 0; k < count; ++k) body(k);
        return;
    }
    std::vector<std::thread> pool;
    const int nw = std::min(threads, count);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            for (int k = w; k < count; k += nw) body(k);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

double entrywise_l1(const QuatMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j).norm();
    return s;
}

double inf1_objective(const QuatMatrix& m, const std::vector<Quaternion>& eps,
                      const std::vector<Quaternion>& delta) {
    if (eps.size() != m.rows() || delta.size() != m.cols())
        throw std::invalid_argument("inf1_objective: witness size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += (m(i, j) * eps[i].conj() * delta[j]).real();
    return s;
}

double theta_objective(const QuatMatrix& a, const std::vector<Quaternion>& delta) {
    if (delta.size() != a.rows() || a.rows() != a.cols())
        throw std::invalid_argument("theta_objective: witness size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += (a(i, j) * delta[i].conj() * delta[j]).real();
    return s;
}

double inf1_ascend(const QuatMatrix& m, std::vector<Quaternion>& eps,
                   std::vector<Quaternion>& delta, int max_sweeps) {
    double value = inf1_objective(m, eps, delta);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // With eps fixed the objective is sum_j Re(c_j delta_j) where
        // c_j = sum_i M_ij conj(eps_i); the maximizer is conj(c_j)/|c_j|.
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Quaternion c;
            for (std::size_t i = 0; i < m.rows(); ++i) c += m(i, j) * eps[i].conj();
            if (c.norm() > 0.0) delta[j] = sign_quat(c.conj(), SignConvention::zero_maps_to_one);
        }
        // With delta fixed it is sum_i Re(conj(eps_i) g_i), g_i = sum_j delta_j M_ij.
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Quaternion g;
            for (std::size_t j = 0; j < m.cols(); ++j) g += delta[j] * m(i, j);
            if (g.norm() > 0.0) eps[i] = sign_quat(g, SignConvention::zero_maps_to_one);
        }
        const double next = inf1_objective(m, eps, delta);
        const bool done = next - value < kSweepTol;
        value = next;
        if (done) break;
    }
    return value;
}

double theta_ascend(const QuatMatrix& a, std::vector<Quaternion>& delta, bool ball,
                    int max_sweeps) {
    const std::size_t n = a.rows();
    double value = theta_objective(a, delta);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (std::size_t r = 0; r < n; ++r) {
            // Terms containing delta_r contribute Re(conj(delta_r) g) plus
            // a_rr |delta_r|^2, with g = 2 sum_{j != r} delta_j a_rj.
            Quaternion g;
            for (std::size_t j = 0; j < n; ++j)
                if (j != r) g += delta[j] * a(r, j);
            g *= 2.0;
            const double gn = g.norm();
            const double arr = a(r, r).real();
            if (!ball) {
                if (gn > 0.0) delta[r] = sign_quat(g, SignConvention::zero_maps_to_one);
                continue;
            }
            // Maximize t*gn + arr*t^2 over t in [0,1].
            double best_t = 0.0, best_v = 0.0;
            const double at1 = gn + arr;
            if (at1 > best_v) {
                best_v = at1;
                best_t = 1.0;
            }
            if (arr < 0.0) {
                const double ts = std::clamp(-gn / (2.0 * arr), 0.0, 1.0);
                const double vs = ts * gn + arr * ts * ts;
                if (vs > best_v) {
                    best_v = vs;
                    best_t = ts;
                }
            }
            delta[r] = sign_quat(g, SignConvention::zero_maps_to_one) * best_t;
        }
        const double next = theta_objective(a, delta);
        const bool done = next - value < kSweepTol;
        value = next;
        if (done) break;
    }
    return value;
}

namespace {

NormEstimate symmetric_lower(const SelfAdjointQuatMatrix& a, int restarts, std::uint64_t seed,
                             int threads, bool ball) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    const std::size_t n = a.size();
    const QuatMatrix& m = a.mat();
    QuatMatrix neg = m;
    neg *= -1.0;

    std::vector<double> vals(static_cast<std::size_t>(restarts));
    std::vector<std::vector<Quaternion>> wits(static_cast<std::size_t>(restarts));
    run_restarts(restarts, threads, [&](int k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        std::vector<Quaternion> d0(n);
        for (auto& q : d0) q = rng.next_unit_quaternion();
        // The norm takes an absolute value: ascend on A and on -A, keep the best.
        std::vector<Quaternion> dp = d0, dm = d0;
        const double vp = theta_ascend(m, dp, ball);
        const double vm = theta_ascend(neg, dm, ball);
        if (vp >= vm) {
            vals[static_cast<std::size_t>(k)] = vp;
            wits[static_cast<std::size_t>(k)] = std::move(dp);
        } else {
            vals[static_cast<std::size_t>(k)] = vm;
            wits[static_cast<std::size_t>(k)] = std::move(dm);
        }
    });

    NormEstimate est;
    est.seed = seed;
    est.restarts_used = restarts;
    est.upper = entrywise_l1(m);
    int best = 0;
    for (int k = 1; k < restarts; ++k)
        if (vals[static_cast<std::size_t>(k)] > vals[static_cast<std::size_t>(best)]) best = k;
    est.lower = vals[static_cast<std::size_t>(best)];
    est.delta = wits[static_cast<std::size_t>(best)];
    return est;
}

}  // namespace

NormEstimate inf1_lower(const QuatMatrix& m, int restarts, std::uint64_t seed, int threads) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    std::vector<double> vals(static_cast<std::size_t>(restarts));
    std::vector<std::pair<std::vector<Quaternion>, std::vector<Quaternion>>> wits(
        static_cast<std::size_t>(restarts));
    run_restarts(restarts, threads, [&](int k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        std::vector<Quaternion> eps(m.rows()), delta(m.cols());
        for (auto& q : eps) q = rng.next_unit_quaternion();
        for (auto& q : delta) q = rng.next_unit_quaternion();
        vals[static_cast<std::size_t>(k)] = inf1_ascend(m, eps, delta);
        wits[static_cast<std::size_t>(k)] = {std::move(eps), std::move(delta)};
    });
    NormEstimate est;
    est.seed = seed;
    est.restarts_used = restarts;
    est.upper = entrywise_l1(m);
    int best = 0;
    for (int k = 1; k < restarts; ++k)
        if (vals[static_cast<std::size_t>(k)] > vals[static_cast<std::size_t>(best)]) best = k;
    est.lower = vals[static_cast<std::size_t>(best)];
    est.eps = wits[static_cast<std::size_t>(best)].first;
    est.delta = wits[static_cast<std::size_t>(best)].second;
    return est;
}

NormEstimate theta_lower(const SelfAdjointQuatMatrix& a, int restarts, std::uint64_t seed,
                         int threads) {
    return symmetric_lower(a, restarts, seed, threads, false);
}

NormEstimate Theta_lower(const SelfAdjointQuatMatrix& a, int restarts, std::uint64_t seed,
                         int threads) {
    return symmetric_lower(a, restarts, seed, threads, true);
}

CMat build_tilde_M(const QuatMatrix& m) {
    CMat t = CMat::Zero(2 * m.rows(), 2 * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto [z, w] = m(i, j).complex_pair();
            // Transposed 2x2 representation [[z, -conj(w)], [w, conj(z)]].
            t(2 * i, 2 * j) = z;
            t(2 * i, 2 * j + 1) = -std::conj(w);
            t(2 * i + 1, 2 * j) = w;
            t(2 * i + 1, 2 * j + 1) = std::conj(z);
        }
    return t;
}

double cinf1_objective(const CMat& b, const std::vector<Complex>& eps,
                       const std::vector<Complex>& delta) {
    if (static_cast<Eigen::Index>(eps.size()) != b.rows() ||
        static_cast<Eigen::Index>(delta.size()) != b.cols())
        throw std::invalid_argument("cinf1_objective: witness size mismatch");
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            s += b(i, j) * std::conj(eps[static_cast<std::size_t>(i)]) *
                 delta[static_cast<std::size_t>(j)];
    return s.real();
}

ComplexNormEstimate inf1_lower_complex(const CMat& b, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    ComplexNormEstimate est;
    est.seed = seed;
    est.restarts_used = restarts;
    est.upper = b.cwiseAbs().sum();
    est.lower = -1.0;
    for (int k = 0; k < restarts; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        std::vector<Complex> eps(static_cast<std::size_t>(b.rows()));
        std::vector<Complex> delta(static_cast<std::size_t>(b.cols()));
        constexpr double kTau = 6.283185307179586476925286766559;
        for (auto& z : eps) z = std::polar(1.0, kTau * rng.next_double());
        for (auto& z : delta) z = std::polar(1.0, kTau * rng.next_double());
        double value = cinf1_objective(b, eps, delta);
        for (int sweep = 0; sweep < 500; ++sweep) {
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                Complex c = 0.0;
                for (Eigen::Index i = 0; i < b.rows(); ++i)
                    c += b(i, j) * std::conj(eps[static_cast<std::size_t>(i)]);
                if (std::abs(c) > 0.0) delta[static_cast<std::size_t>(j)] = std::conj(c) / std::abs(c);
            }
            for (Eigen::Index i = 0; i < b.rows(); ++i) {
                Complex d = 0.0;
                for (Eigen::Index j = 0; j < b.cols(); ++j)
                    d += b(i, j) * delta[static_cast<std::size_t>(j)];
                if (std::abs(d) > 0.0) eps[static_cast<std::size_t>(i)] = d / std::abs(d);
            }
            const double next = cinf1_objective(b, eps, delta);
            const bool done = next - value < kSweepTol;
            value = next;
            if (done) break;
        }
        if (value > est.lower) {
            est.lower = value;
            est.eps = eps;
            est.delta = delta;
        }
    }
    return est;
}

std::pair<RMat, RMat> dd_decompose(const RMat& a) {
    if (a.rows() != a.cols()) throw std::domain_error("dd_decompose: square matrix required");
    const Eigen::Index n = a.rows();
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
        throw std::domain_error("dd_decompose: matrix is not symmetric");
    for (Eigen::Index i = 0; i < n; ++i) {
        double off = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) off += std::abs(a(i, j));
        if (a(i, i) < off - 1e-12 * (1.0 + std::abs(a(i, i))))
            throw std::domain_error("dd_decompose: matrix is not diagonally dominant");
    }
    RMat l = RMat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i && a(i, j) < 0.0) {
                l(i, j) = a(i, j);
                rowsum += -a(i, j);
            }
        l(i, i) = rowsum;
    }
    RMat p = a - l;
    return {p, l};
}

}  // namespace quatgro
