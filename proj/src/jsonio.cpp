#include "quatgro/jsonio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quatgro {

namespace {

Quaternion quaternion_from_json(const Json& cell, std::size_t i,
                                std::size_t j) {
    if (!cell.is_array() || cell.size() != 4) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j
            << ") must be an array of 4 numbers";
        throw std::invalid_argument(msg.str());
    }
    double c[4];
    for (std::size_t t = 0; t < 4; ++t) {
        if (!cell[t].is_number()) {
            std::ostringstream msg;
            msg << "entry (" << i << "," << j << ") component " << t
                << " is not a number";
            throw std::invalid_argument(msg.str());
        }
        c[t] = cell[t].get<double>();
    }
    return Quaternion(c[0], c[1], c[2], c[3]);
}

}  // namespace

QuatMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("matrix JSON must be an object");
    }
    for (const char* key : {"m", "n", "entries"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("matrix JSON misses \"") +
                                        key + "\"");
        }
    }
    if (!j["m"].is_number_integer() || !j["n"].is_number_integer()) {
        throw std::invalid_argument("matrix dimensions must be integers");
    }
    const long m = j["m"].get<long>();
    const long n = j["n"].get<long>();
    if (m <= 0 || n <= 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
    const Json& rows = j["entries"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("entries must hold exactly m rows");
    }
    QuatMatrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            std::ostringstream msg;
            msg << "row " << i << " must hold exactly n entries";
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
            out(i, k) = quaternion_from_json(row[k], i, k);
        }
    }
    return out;
}

Json matrix_to_json(const QuatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(quaternion_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"m", m.rows()}, {"n", m.cols()}, {"entries", std::move(rows)}};
}

QuatMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open matrix file: " + path);
    }
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("matrix JSON parse error: ") +
                                    e.what());
    }
    return matrix_from_json(j);
}

Json quaternion_to_json(const Quaternion& q) {
    return Json::array({q.a0, q.a1, q.a2, q.a3});
}

Json norm_estimate_to_json(const NormEstimate& e) {
    Json eps = Json::array();
    for (const auto& q : e.eps) eps.push_back(quaternion_to_json(q));
    Json delta = Json::array();
    for (const auto& q : e.delta) delta.push_back(quaternion_to_json(q));
    return Json{{"lower", e.lower},
                {"upper", e.upper},
                {"witness", Json{{"eps", std::move(eps)},
                                 {"delta", std::move(delta)}}},
                {"restarts_used", e.restarts_used},
                {"seed", e.seed}};
}

Json round_result_to_json(const RoundResult& r) {
    Json eps = Json::array();
    for (const auto& q : r.eps) eps.push_back(quaternion_to_json(q));
    Json delta = Json::array();
    for (const auto& q : r.delta) delta.push_back(quaternion_to_json(q));
    return Json{{"best_value", r.best_value},
                {"mean_value", r.mean_value},
                {"samples", r.samples},
                {"witness", Json{{"eps", std::move(eps)},
                                 {"delta", std::move(delta)}}}};
}

Json certificate_to_json(const Certificate& cert) {
    Json checks = Json::array();
    for (const auto& c : cert.checks) {
        checks.push_back(Json{{"label", c.label},
                              {"lo", c.lo.get_str()},
                              {"hi", c.hi.get_str()},
                              {"root_count", c.root_count},
                              {"sample_sign", c.sample_sign},
                              {"required_sign", c.required_sign},
                              {"informational", c.informational},
                              {"passed", c.passed}});
    }
    return Json{{"proposition", cert.proposition},
                {"lo", cert.lo.get_str()},
                {"hi", cert.hi.get_str()},
                {"m", cert.m},
                {"checks", std::move(checks)},
                {"notes", cert.notes},
                {"verdict", cert.verdict},
                {"wall_seconds", cert.wall_seconds}};
}

}  // namespace quatgro
