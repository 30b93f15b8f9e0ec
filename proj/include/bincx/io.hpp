#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bincx/binary.hpp"
#include "bincx/field.hpp"

namespace bincx {

// Malformed input (I/O, JSON, shape or scalar syntax). The CLI maps this to
// exit code 2; mathematical failures (invalid complexes, false identities)
// map to exit code 1.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

using json = nlohmann::json;

inline json field_to_json(const FieldSpec& f) {
    if (f.kind == FieldSpec::Kind::Rationals) return json{{"kind", "rationals"}};
    return json{{"kind", "prime"}, {"p", f.p}};
}

inline FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("field: expected {\"kind\": ...}");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime") {
        if (!j.contains("p") || !j["p"].is_number_unsigned())
            throw ParseError("field: prime field needs an unsigned \"p\"");
        try {
            return FieldSpec::prime(j["p"].get<std::uint64_t>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("field: ") + e.what());
        }
    }
    throw ParseError("field: unknown kind \"" + kind + "\"");
}

// Matrices are arrays of rows; entries are scalar strings in the canonical
// text encoding (integers "n", rationals "a/b" with b > 0 and gcd 1, prime
// field residues as decimals in [0, p)). Shapes come from the dims array.
template <class F>
json matrix_to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
Matrix<F> matrix_from_json(typename F::Desc fld, const json& j, std::size_t rows,
                           std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    Matrix<F> m(fld, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(where + ": expected " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_string()) throw ParseError(where + ": entries must be strings");
            auto v = F::parse(fld, row[c].get<std::string>());
            if (!v) throw ParseError(where + ": bad scalar \"" + row[c].get<std::string>() + "\"");
            m.at(i, c) = std::move(*v);
        }
    }
    return m;
}

// Binary complex file: top[i] and bot[i] hold d_{i+1} of shape
// dims[i] x dims[i+1] (rows index the target, columns the source).
template <class F>
json complex_to_json(const BinaryComplex<F>& b) {
    json j;
    j["field"] = field_to_json(spec_of(b.field()));
    j["dims"] = b.dims();
    json top = json::array(), bot = json::array();
    for (std::size_t n = 1; n <= b.top_degree(); ++n) {
        top.push_back(matrix_to_json(b.top_diff(n)));
        bot.push_back(matrix_to_json(b.bot_diff(n)));
    }
    j["top"] = std::move(top);
    j["bot"] = std::move(bot);
    return j;
}

template <class F>
BinaryComplex<F> complex_from_json(typename F::Desc fld, const json& j) {
    if (!j.is_object()) throw ParseError("complex: expected an object");
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ParseError("complex: missing dims");
    std::vector<std::size_t> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_unsigned()) throw ParseError("complex: dims must be unsigned");
        dims.push_back(d.get<std::size_t>());
    }
    auto read_side = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != dims.size() - 1)
            throw ParseError(std::string("complex: ") + key + " must hold " +
                             std::to_string(dims.size() - 1) + " matrices");
        std::vector<Matrix<F>> diffs;
        for (std::size_t n = 1; n < dims.size(); ++n)
            diffs.push_back(matrix_from_json<F>(fld, j[key][n - 1], dims[n - 1], dims[n],
                                                std::string(key) + "[" + std::to_string(n - 1) + "]"));
        return ChainComplex<F>(fld, dims, std::move(diffs));
    };
    return BinaryComplex<F>(read_side("top"), read_side("bot"));
}

// Double complex file: dims[k][l]; dh[k-1][l] holds the horizontal
// differential out of (k,l), dv[k][l-1] the vertical one, and dph/dpv the
// bottom-structure counterparts.
template <class F>
json double_to_json(const BinaryDoubleComplex<F>& d) {
    json j;
    j["field"] = field_to_json(spec_of(d.field()));
    json dims = json::array();
    for (std::size_t k = 0; k <= d.max_k(); ++k) {
        json col = json::array();
        for (std::size_t l = 0; l <= d.max_l(); ++l) col.push_back(d.dim(k, l));
        dims.push_back(std::move(col));
    }
    j["dims"] = std::move(dims);
    auto emit_h = [&](const char* key, bool primed) {
        json g = json::array();
        for (std::size_t k = 1; k <= d.max_k(); ++k) {
            json row = json::array();
            for (std::size_t l = 0; l <= d.max_l(); ++l)
                row.push_back(matrix_to_json(primed ? d.dph(k, l) : d.dh(k, l)));
            g.push_back(std::move(row));
        }
        j[key] = std::move(g);
    };
    auto emit_v = [&](const char* key, bool primed) {
        json g = json::array();
        for (std::size_t k = 0; k <= d.max_k(); ++k) {
            json col = json::array();
            for (std::size_t l = 1; l <= d.max_l(); ++l)
                col.push_back(matrix_to_json(primed ? d.dpv(k, l) : d.dv(k, l)));
            g.push_back(std::move(col));
        }
        j[key] = std::move(g);
    };
    emit_h("dh", false);
    emit_v("dv", false);
    emit_h("dph", true);
    emit_v("dpv", true);
    return j;
}

template <class F>
BinaryDoubleComplex<F> double_from_json(typename F::Desc fld, const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ParseError("double complex: missing dims");
    std::vector<std::vector<std::size_t>> dims;
    for (const auto& col : j["dims"]) {
        if (!col.is_array() || col.empty()) throw ParseError("double complex: ragged dims");
        std::vector<std::size_t> c;
        for (const auto& d : col) {
            if (!d.is_number_unsigned()) throw ParseError("double complex: dims must be unsigned");
            c.push_back(d.get<std::size_t>());
        }
        dims.push_back(std::move(c));
    }
    const std::size_t K = dims.size() - 1, L = dims[0].size() - 1;
    for (const auto& c : dims)
        if (c.size() != L + 1) throw ParseError("double complex: ragged dims");
    auto read_h = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != K)
            throw ParseError(std::string("double complex: bad ") + key);
        std::vector<std::vector<Matrix<F>>> g;
        for (std::size_t k = 1; k <= K; ++k) {
            const json& row = j[key][k - 1];
            if (!row.is_array() || row.size() != L + 1)
                throw ParseError(std::string("double complex: bad ") + key);
            std::vector<Matrix<F>> r;
            for (std::size_t l = 0; l <= L; ++l)
                r.push_back(matrix_from_json<F>(fld, row[l], dims[k - 1][l], dims[k][l],
                                                std::string(key)));
            g.push_back(std::move(r));
        }
        return g;
    };
    auto read_v = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != K + 1)
            throw ParseError(std::string("double complex: bad ") + key);
        std::vector<std::vector<Matrix<F>>> g;
        for (std::size_t k = 0; k <= K; ++k) {
            const json& col = j[key][k];
            if (!col.is_array() || col.size() != L)
                throw ParseError(std::string("double complex: bad ") + key);
            std::vector<Matrix<F>> c;
            for (std::size_t l = 1; l <= L; ++l)
                c.push_back(matrix_from_json<F>(fld, col[l - 1], dims[k][l - 1], dims[k][l],
                                                std::string(key)));
            g.push_back(std::move(c));
        }
        return g;
    };
    return BinaryDoubleComplex<F>(fld, dims, read_h("dh"), read_v("dv"), read_h("dph"),
                                  read_v("dpv"));
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + path);
    return j;
}

// Write-then-rename so that readers never observe partial files.
inline void save_json_atomic(const std::string& path, const json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ParseError("cannot write " + tmp);
        out << j.dump(1) << '\n';
        if (!out) throw ParseError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParseError("cannot rename " + tmp + " to " + path);
}

inline FieldSpec file_field(const json& j) {
    if (!j.is_object() || !j.contains("field")) throw ParseError("missing field");
    return field_from_json(j["field"]);
}

} // namespace bincx
