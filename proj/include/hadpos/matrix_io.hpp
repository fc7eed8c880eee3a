#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/matrix.hpp"
#include "hadpos/strata.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace hadpos {

using json = nlohmann::json;

// Matrix interchange format:
//   {"n": N, "entries": [[[re, im], ...], ...], "rho": optional number}
// Numbers round-trip bit-exactly (shortest representation that parses
// back to the same double).
inline json matrix_to_json(const HermMatrix& A) {
    json j;
    j["n"] = A.dim();
    json rows = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < A.dim(); ++k)
            row.push_back(json::array({A.a(i, k).real(), A.a(i, k).imag()}));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    if (A.rho) j["rho"] = *A.rho;
    return j;
}

inline HermMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw ParseError("matrix: expected object with \"n\" and \"entries\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw ParseError("matrix: \"n\" must be a positive integer");
    const int n = j["n"].get<int>();
    const json& e = j["entries"];
    if (!e.is_array() || static_cast<int>(e.size()) != n)
        throw ParseError("matrix: \"entries\" must contain " + std::to_string(n) +
                         " rows");
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = e[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix: row " + std::to_string(i + 1) + " must have " +
                             std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) {
            const json& cell = row[static_cast<std::size_t>(k)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw ParseError("matrix: entry at row " + std::to_string(i + 1) +
                                 ", column " + std::to_string(k + 1) +
                                 " must be [re, im]");
            a(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    std::optional<double> rho;
    if (j.contains("rho")) {
        if (!j["rho"].is_number()) throw ParseError("matrix: \"rho\" must be a number");
        rho = j["rho"].get<double>();
    }
    try {
        return HermMatrix(std::move(a), rho);
    } catch (const Error& err) {
        throw ParseError(std::string("matrix: ") + err.what());
    }
}

// CSV convenience form, real matrices only: N rows of N comma-separated
// reals.
inline HermMatrix matrix_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size()) throw std::invalid_argument("trailing");
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("csv: row " + std::to_string(lineno) + ", column " +
                                 std::to_string(row.size() + 1) + ": not a real number");
            }
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw ParseError("csv: empty input");
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw ParseError("csv: row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(n));
        for (std::size_t k = 0; k < n; ++k) a(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
    }
    try {
        return HermMatrix(std::move(a));
    } catch (const Error& err) {
        throw ParseError(std::string("csv: ") + err.what());
    }
}

inline HermMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return matrix_from_csv(in);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return matrix_from_json(j);
}

inline const char* group_name(GroupTag g) {
    switch (g) {
        case GroupTag::Trivial: return "trivial";
        case GroupTag::Modulus: return "modulus";
        case GroupTag::Full: return "full";
    }
    return "trivial";
}

inline GroupTag group_from_name(const std::string& s) {
    if (s == "trivial") return GroupTag::Trivial;
    if (s == "modulus") return GroupTag::Modulus;
    if (s == "full") return GroupTag::Full;
    throw ParseError("unknown group: " + s + " (expected trivial|modulus|full)");
}

// {"partition": [[...], ...], "factors": [[[re,im], ...], ...],
//  "compressed": matrix-JSON, "group": "trivial|modulus|full"}
inline json decomposition_to_json(const BlockDecomposition& d) {
    json j;
    j["partition"] = d.partition.blocks;
    json fs = json::array();
    for (const auto& u : d.factors) {
        json f = json::array();
        for (int i = 0; i < u.size(); ++i)
            f.push_back(json::array({u(i).real(), u(i).imag()}));
        fs.push_back(std::move(f));
    }
    j["factors"] = std::move(fs);
    j["compressed"] = matrix_to_json(d.compressed);
    j["group"] = group_name(d.group);
    return j;
}

inline json kernel_to_json(const KernelBasis& kb) {
    json j;
    j["dim_ambient"] = kb.dim_ambient;
    j["dim"] = kb.dim();
    json vs = json::array();
    for (const auto& v : kb.vectors) {
        json f = json::array();
        for (int i = 0; i < v.size(); ++i)
            f.push_back(json::array({v(i).real(), v(i).imag()}));
        vs.push_back(std::move(f));
    }
    j["vectors"] = std::move(vs);
    return j;
}

} // namespace hadpos
