#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quatgro/certify.hpp"
#include "quatgro/gaussian.hpp"
#include "quatgro/jsonio.hpp"
#include "quatgro/norms.hpp"
#include "quatgro/sdp.hpp"
#include "quatgro/series.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using quatgro::Json;

struct Common {
    std::string format = "json";
    int threads = 0;  // 0 means: take QUATGRO_THREADS, else 1
};

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QUATGRO_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::string join_invocation(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) s += ' ';
        s += argv[i];
    }
    return s;
}

void print_flat(const Json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            print_flat(value, prefix.empty() ? key : prefix + "." + key);
        }
    } else if (j.is_array()) {
        std::cout << prefix << ": " << j.dump() << "\n";
    } else {
        std::cout << prefix << ": " << j.dump() << "\n";
    }
}

// Every command emits one report with the same envelope so runs can be
// replayed from the log alone.
void emit_report(const Common& common, const std::string& command,
                 const Json& parameters, const Json& results,
                 double seconds, const std::string& invocation) {
    Json report{{"command", command},
                {"parameters", parameters},
                {"version", kVersion},
                {"results", results},
                {"timings", Json{{"seconds", seconds}}},
                {"invocation", invocation}};
    if (common.format == "table") {
        print_flat(report, "");
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

quatgro::Quaternion parse_quaternion_arg(const std::string& text) {
    std::istringstream in(text);
    double c[4];
    char sep = ',';
    for (int t = 0; t < 4; ++t) {
        if (t > 0 && (!(in >> sep) || sep != ',')) {
            throw std::invalid_argument("quaternion argument needs 4 "
                                        "comma-separated numbers");
        }
        if (!(in >> c[t])) {
            throw std::invalid_argument("quaternion argument needs 4 "
                                        "comma-separated numbers");
        }
    }
    return {c[0], c[1], c[2], c[3]};
}

// Per-sample terms have fixed modulus term_mag (
// or zero), so this bounds the standard error of the averaged estimate.
double mc_stderr(double term_mag, double mean_norm, std::size_t samples) {
    const double var =
        std::max(0.0, term_mag * term_mag - mean_norm * mean_norm);
    return std::sqrt(var / static_cast<double>(samples));
}

struct CliSettings {
    Common common;

    std::string norm_input;
    std::string norm_which = "inf1";
    int restarts = 64;
    std::uint64_t seed = 1;
    double tol = 1e-9;

    int coeff_ell = 3;
    long coeff_count = 20;
    bool coeff_exact = false;
    bool coeff_float = false;

    double cont_x = 2.0;
    std::string cont_which = "omega";
    std::string cont_grid;
    bool cont_landmarks = false;

    std::string certify_prop = "all";
    int certify_m = 0;

    std::string mc_op = "sign-formula";
    std::size_t mc_samples = 100000;
    std::uint64_t mc_seed_value = 0;
    std::optional<std::uint64_t> mc_seed;
    std::string mc_z = "1,0,0,0";
    double mc_inner = 0.5;
    double mc_t = 0.5;

    std::string round_input;
    std::size_t round_samples = 1000;
    std::uint64_t round_seed = 1;
};

int run_norm(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    const quatgro::QuatMatrix m = quatgro::load_matrix(s.norm_input);
    const int threads = resolve_threads(s.common.threads);
    Json results;

    if (s.norm_which == "inf1") {
        quatgro::NormEstimate est =
            quatgro::inf1_lower(m, s.restarts, s.seed, threads);
        est.upper = quatgro::entrywise_l1(m);
        results = quatgro::norm_estimate_to_json(est);
    } else if (s.norm_which == "grothendieck") {
        const auto sdp = quatgro::grothendieck_sdp_full(m, s.tol);
        quatgro::NormEstimate est =
            quatgro::inf1_lower(m, s.restarts, s.seed, threads);
        est.upper = sdp.value;
        results = quatgro::norm_estimate_to_json(est);
        results["sdp_gap"] = sdp.gap;
        results["sdp_iterations"] = sdp.iterations;
        results["ratio"] = (est.lower > 0) ? sdp.value / est.lower : 0.0;
    } else {
        const quatgro::SelfAdjointQuatMatrix a(m);
        if (s.norm_which == "theta" || s.norm_which == "Theta") {
            quatgro::NormEstimate est =
                (s.norm_which == "theta")
                    ? quatgro::theta_lower(a, s.restarts, s.seed, threads)
                    : quatgro::Theta_lower(a, s.restarts, s.seed, threads);
            est.upper = quatgro::entrywise_l1(m);
            results = quatgro::norm_estimate_to_json(est);
        } else if (s.norm_which == "gamma" || s.norm_which == "Gamma") {
            const double sdp_value = (s.norm_which == "gamma")
                                         ? quatgro::gamma_sdp(a, s.tol)
                                         : quatgro::Gamma_sdp(a, s.tol);
            quatgro::NormEstimate est =
                (s.norm_which == "gamma")
                    ? quatgro::theta_lower(a, s.restarts, s.seed, threads)
                    : quatgro::Theta_lower(a, s.restarts, s.seed, threads);
            est.upper = sdp_value;
            results = quatgro::norm_estimate_to_json(est);
            results["sdp_gap"] = sdp_value - est.lower;
            results["ratio"] = (est.lower > 0) ? sdp_value / est.lower : 0.0;
        } else {
            throw std::invalid_argument("unknown norm: " + s.norm_which);
        }
    }

    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "norm",
                Json{{"input", s.norm_input},
                     {"which", s.norm_which},
                     {"restarts", s.restarts},
                     {"seed", s.seed},
                     {"threads", threads},
                     {"tol", s.tol}},
                results, dt, invocation);
    return 0;
}

int run_constants(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    const quatgro::Constants c = quatgro::solve_constants();
    const Json results{{"x0", c.x0},
                       {"c0", c.c0},
                       {"K_GH_bound", c.K_GH_bound},
                       {"K_gamma_bound", c.K_gamma_bound},
                       {"nesterov", c.nesterov},
                       {"alpha_gw", c.alpha_gw},
                       {"inv_alpha_gw", 1.0 / c.alpha_gw},
                       {"dd_constant", c.dd_constant}};
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "constants", Json::object(), results, dt,
                invocation);
    return 0;
}

int run_coefficients(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    if (s.coeff_count < 1 || s.coeff_count > 200) {
        throw std::invalid_argument("--count must be in [1, 200]");
    }
    if (s.coeff_ell < 1) {
        throw std::invalid_argument("--ell must be at least 1");
    }
    const bool show_exact = s.coeff_exact || !s.coeff_float;
    const bool show_float = s.coeff_float || !s.coeff_exact;

    const std::size_t count = static_cast<std::size_t>(s.coeff_count);
    const quatgro::ExactOddSeries fwd =
        (s.coeff_ell == 3) ? quatgro::p_coeffs(count)
                           : quatgro::p_ell_coeffs(s.coeff_ell, count);
    const quatgro::ExactOddSeries inv = quatgro::revert_series(fwd, count);

    Json rows = Json::array();
    for (std::size_t k = 0; k < inv.terms(); ++k) {
        Json row{{"power", 2 * k + 1}, {"sign", inv.coeff_sign(k)}};
        if (show_float) row["value"] = inv.coeff(k);
        if (show_exact) {
            row["rational"] = inv.rational[k].get_str();
            row["sigma_power"] =
                inv.scale0 + inv.scale_step * static_cast<long>(k);
        }
        rows.push_back(std::move(row));
    }
    Json results{{"ell", s.coeff_ell}, {"coefficients", std::move(rows)}};
    if (s.coeff_ell == 3) {
        results["sigma"] = 32.0 / (9.0 * M_PI);
        results["note"] =
            "coefficient of x^(2k+1) equals rational * sigma^sigma_power";
    }
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "coefficients",
                Json{{"ell", s.coeff_ell}, {"count", s.coeff_count}}, results,
                dt, invocation);
    return 0;
}

quatgro::ContinuedWhich parse_which(const std::string& name) {
    using W = quatgro::ContinuedWhich;
    if (name == "psi1") return W::psi1;
    if (name == "psi2") return W::psi2;
    if (name == "theta") return W::theta;
    if (name == "abs_p_plus") return W::abs_p_plus;
    if (name == "omega") return W::omega;
    if (name == "mu") return W::mu;
    throw std::invalid_argument("unknown --which: " + name);
}

int run_continued(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!s.cont_grid.empty()) {
        std::istringstream in(s.cont_grid);
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ',' || c2 != ',') {
            throw std::invalid_argument("--grid needs \"start,stop,step\"");
        }
        if (step <= 0 || hi < lo || lo < 1.0) {
            throw std::invalid_argument("--grid needs 1 <= start <= stop and "
                                        "a positive step");
        }
        if ((hi - lo) / step > 1e6) {
            throw std::invalid_argument("--grid would emit too many rows");
        }
        std::cout << "x,psi1,psi2,theta,abs_p_plus,omega,mu\n";
        using W = quatgro::ContinuedWhich;
        for (double x = lo; x <= hi + 0.5 * step; x += step) {
            const double xv = std::min(x, hi);
            std::cout << xv;
            for (W w : {W::psi1, W::psi2, W::theta, W::abs_p_plus, W::omega,
                        W::mu}) {
                std::cout << ',' << quatgro::eval_continued(xv, w);
            }
            std::cout << '\n';
            if (xv >= hi) break;
        }
        return 0;
    }

    Json results;
    Json params;
    if (s.cont_landmarks) {
        const quatgro::Landmarks lm = quatgro::continued_landmarks();
        results = Json{{"tau", lm.tau},
                       {"omega_tau", lm.omega_tau},
                       {"theta5", lm.theta5},
                       {"q", lm.q},
                       {"c", lm.c}};
        params = Json{{"landmarks", true}};
    } else {
        results = Json{{"x", s.cont_x},
                       {"which", s.cont_which},
                       {"value", quatgro::eval_continued(
                                     s.cont_x, parse_which(s.cont_which))}};
        params = Json{{"x", s.cont_x}, {"which", s.cont_which}};
    }
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "continued", params, results, dt, invocation);
    return 0;
}

int run_certify(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<quatgro::Certificate> certs;
    const bool all = (s.certify_prop == "all");
    if (all || s.certify_prop == "omega-tau") {
        certs.push_back(
            quatgro::certify_omega_tau(s.certify_m > 0 ? s.certify_m : 50));
    }
    if (all || s.certify_prop == "omega-p7") {
        certs.push_back(
            quatgro::certify_omega_p7(s.certify_m > 0 ? s.certify_m : 50));
    }
    if (all || s.certify_prop == "mu") {
        certs.push_back(
            quatgro::certify_mu(s.certify_m > 0 ? s.certify_m : 40));
    }
    if (certs.empty()) {
        throw std::invalid_argument("unknown --prop: " + s.certify_prop);
    }

    bool ok = true;
    Json arr = Json::array();
    for (const auto& cert : certs) {
        ok = ok && cert.verdict;
        Json cj = quatgro::certificate_to_json(cert);
        cj["proof_log"] = quatgro::render_proof_log(cert);
        arr.push_back(std::move(cj));
        if (s.common.format == "table") {
            std::cout << quatgro::render_proof_log(cert) << "\n";
        }
    }
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    if (s.common.format != "table") {
        emit_report(s.common, "certify",
                    Json{{"prop", s.certify_prop}, {"m", s.certify_m}},
                    Json{{"certificates", std::move(arr)},
                         {"all_verdicts_true", ok}},
                    dt, invocation);
    }
    return ok ? 0 : 4;
}

int run_mc(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    Json results;
    Json params{{"op", s.mc_op}};

    if (s.mc_op == "fh") {
        results = Json{{"t", s.mc_t}, {"value", quatgro::eval_fH(s.mc_t)}};
        params["t"] = s.mc_t;
    } else {
        if (!s.mc_seed.has_value()) {
            throw std::invalid_argument(
                "--seed is required for Monte-Carlo operations");
        }
        if (s.mc_samples == 0) {
            throw std::invalid_argument("--samples must be positive");
        }
        params["samples"] = s.mc_samples;
        params["seed"] = *s.mc_seed;
        if (s.mc_op == "sign-formula") {
            const quatgro::Quaternion z = parse_quaternion_arg(s.mc_z);
            const quatgro::Quaternion est =
                quatgro::mc_sign_formula(z, s.mc_samples, *s.mc_seed);
            const quatgro::Quaternion ref = quatgro::sign_quat(
                z, quatgro::SignConvention::zero_maps_to_zero);
            results = Json{{"z", quatgro::quaternion_to_json(z)},
                           {"estimate", quatgro::quaternion_to_json(est)},
                           {"reference", quatgro::quaternion_to_json(ref)},
                           {"abs_error", (est - ref).norm()},
                           {"stderr", mc_stderr(0.75 * M_PI, est.norm(),
                                                s.mc_samples)}};
            params["z"] = s.mc_z;
        } else if (s.mc_op == "identity") {
            const double t = s.mc_inner;
            if (!(t >= -1.0 && t <= 1.0)) {
                throw std::invalid_argument("--inner must lie in [-1, 1]");
            }
            quatgro::QuatVector u(2), v(2);
            u[0] = 1.0;
            v[0] = t;
            v[1] = std::sqrt(std::max(0.0, 1.0 - t * t));
            const quatgro::Quaternion est = quatgro::mc_grothendieck_identity(
                u, v, s.mc_samples, *s.mc_seed);
            const double ref = t * quatgro::eval_fH(std::abs(t));
            results = Json{{"inner", t},
                           {"estimate", quatgro::quaternion_to_json(est)},
                           {"reference", ref},
                           {"abs_error",
                            (est - quatgro::Quaternion(ref)).norm()},
                           {"stderr",
                            mc_stderr(1.0, est.norm(), s.mc_samples)}};
            params["inner"] = t;
        } else {
            throw std::invalid_argument("unknown --op: " + s.mc_op);
        }
    }
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "mc", params, results, dt, invocation);
    return 0;
}

int run_round(const CliSettings& s, const std::string& invocation) {
    const auto t0 = std::chrono::steady_clock::now();
    if (s.round_samples == 0) {
        throw std::invalid_argument("--samples must be positive");
    }
    const quatgro::QuatMatrix m = quatgro::load_matrix(s.round_input);
    const auto sdp = quatgro::grothendieck_sdp_full(m, s.tol);
    const quatgro::SelfAdjointQuatMatrix gram(sdp.gram, 1e-6);
    const std::vector<quatgro::QuatVector> vecs = quatgro::gram_vectors(gram);
    const auto split = vecs.begin() + static_cast<std::ptrdiff_t>(m.rows());
    std::vector<quatgro::QuatVector> us(vecs.begin(), split);
    std::vector<quatgro::QuatVector> vs(split, vecs.end());
    const quatgro::RoundResult rr =
        quatgro::gaussian_round(us, vs, m, s.round_samples, s.round_seed);

    Json results = quatgro::round_result_to_json(rr);
    results["sdp_value"] = sdp.value;
    results["ratio"] =
        (rr.best_value > 0) ? sdp.value / rr.best_value : 0.0;
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    emit_report(s.common, "round",
                Json{{"input", s.round_input},
                     {"samples", s.round_samples},
                     {"seed", s.round_seed},
                     {"tol", s.tol}},
                results, dt, invocation);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternion Grothendieck bound toolkit"};
    app.require_subcommand(1);

    CliSettings s;
    const std::string invocation = join_invocation(argc, argv);

    app.add_option("--threads", s.common.threads,
                   "worker threads (default: QUATGRO_THREADS or 1)");
    app.add_option("--format", s.common.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    CLI::App* norm = app.add_subcommand("norm", "norm bounds for a matrix");
    norm->add_option("--input", s.norm_input, "matrix JSON file")->required();
    norm->add_option("--which", s.norm_which, "norm to estimate")
        ->required()
        ->check(CLI::IsMember(
            {"inf1", "grothendieck", "theta", "Theta", "gamma", "Gamma"}));
    norm->add_option("--restarts", s.restarts, "ascent restarts");
    norm->add_option("--seed", s.seed, "ascent seed");
    norm->add_option("--tol", s.tol, "SDP tolerance");

    app.add_subcommand("constants", "derived numeric constants");

    CLI::App* coeff =
        app.add_subcommand("coefficients", "inverse series coefficients");
    coeff->add_option("--ell", s.coeff_ell, "hypergeometric family index");
    coeff->add_option("--count", s.coeff_count, "number of coefficients");
    coeff->add_flag("--exact", s.coeff_exact, "show exact rationals");
    coeff->add_flag("--float", s.coeff_float, "show floating values");

    CLI::App* cont =
        app.add_subcommand("continued", "analytic continuation values");
    cont->add_option("--x", s.cont_x, "evaluation point, x >= 1");
    cont->add_option("--which", s.cont_which,
                     "psi1|psi2|theta|abs_p_plus|omega|mu");
    cont->add_option("--grid", s.cont_grid,
                     "emit CSV over start,stop,step instead");
    cont->add_flag("--landmarks", s.cont_landmarks,
                   "report the oscillation landmarks");

    CLI::App* cert = app.add_subcommand("certify", "exact sign certificates");
    cert->add_option("--prop", s.certify_prop, "omega-tau|omega-p7|mu|all");
    cert->add_option("--m", s.certify_m, "truncation order override");

    CLI::App* mc = app.add_subcommand("mc", "Monte-Carlo identities");
    mc->add_option("--op", s.mc_op, "sign-formula|identity|fh");
    mc->add_option("--samples", s.mc_samples, "sample count");
    CLI::Option* mc_seed_opt =
        mc->add_option("--seed", s.mc_seed_value,
                       "RNG seed (required for MC ops)");
    mc->add_option("--z", s.mc_z, "quaternion a0,a1,a2,a3 for sign-formula");
    mc->add_option("--inner", s.mc_inner, "target inner product for identity");
    mc->add_option("--t", s.mc_t, "argument for --op fh");

    CLI::App* round = app.add_subcommand("round", "SDP + sign rounding");
    round->add_option("--input", s.round_input, "matrix JSON file")
        ->required();
    round->add_option("--samples", s.round_samples, "rounding samples");
    round->add_option("--seed", s.round_seed, "rounding seed")->required();
    round->add_option("--tol", s.tol, "SDP tolerance");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (mc_seed_opt->count() > 0) s.mc_seed = s.mc_seed_value;

    try {
        if (norm->parsed()) return run_norm(s, invocation);
        if (app.get_subcommand("constants")->parsed()) {
            return run_constants(s, invocation);
        }
        if (coeff->parsed()) return run_coefficients(s, invocation);
        if (cont->parsed()) return run_continued(s, invocation);
        if (cert->parsed()) return run_certify(s, invocation);
        if (mc->parsed()) return run_mc(s, invocation);
        if (round->parsed()) return run_round(s, invocation);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const quatgro::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
