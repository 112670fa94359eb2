// State file format: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]},
// row-major with the A-major joint index convention.
#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qcorr/density.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
    nlohmann::json j;
    j["dims"] = {rho.d_a, rho.d_b};
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < rho.dim(); ++c)
            row.push_back({std::real(rho.mat(r, c)), std::imag(rho.mat(r, c))});
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

inline DensityMatrix state_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j.contains("matrix"))
        throw Error(ErrorCode::ParseError, "state file needs \"dims\" and \"matrix\"");
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2)
        throw Error(ErrorCode::ParseError, "\"dims\" must be [d_A, d_B]");
    const int d_a = dims[0].get<int>(), d_b = dims[1].get<int>();
    const int n = d_a * d_b;
    const auto& rows = j["matrix"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw Error(ErrorCode::ParseError, "\"matrix\" must have d_A*d_B rows");
    CMatrix m(n);
    for (int r = 0; r < n; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::ParseError, "matrix row " + std::to_string(r) + " has wrong length");
        for (int c = 0; c < n; ++c) {
            const auto& entry = row[c];
            if (!entry.is_array() || entry.size() != 2)
                throw Error(ErrorCode::ParseError, "matrix entries must be [re, im] pairs");
            m(r, c) = cplx(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return validate_density_matrix(m, d_a, d_b);
}

inline DensityMatrix load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open state file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("state file is not valid JSON: ") + e.what());
    }
    return state_from_json(j);
}

inline void save_state_file(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write state file: " + path);
    out << state_to_json(rho).dump(2) << '\n';
}

}  // namespace qcorr
