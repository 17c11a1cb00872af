#pragma once

// Internal helpers shared by the JSON readers/writers in this library.
// Big integers serialize as decimal strings when they overflow a JSON
// number; small ones stay plain integers for readability. The ctx string
// prefixes every diagnostic so callers keep their own error namespaces.

#include <string>

#include <json.hpp>

#include "adl/arith.hpp"
#include "adl/mat.hpp"

namespace adl::jsondetail {

using nlohmann::json;

inline const json& field(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    require(it != obj.end(), ctx + ": missing field '" + key + "'");
    return *it;
}

inline Int int_from_json(const json& v, const std::string& ctx) {
    if (v.is_string()) return Int(v.get<std::string>());
    require(v.is_number_integer(), ctx + ": expected an integer");
    return Int(long(v.get<long long>()));
}

inline json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

inline IMat int_matrix_from_json(const json& v, const std::string& ctx) {
    require(v.is_array(), ctx + ": matrix must be an array of rows");
    const int rows = int(v.size());
    int cols = rows ? int(v.at(0).size()) : 0;
    IMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = v.at(size_t(i));
        require(row.is_array() && int(row.size()) == cols, ctx + ": ragged matrix");
        for (int j = 0; j < cols; ++j) m(i, j) = int_from_json(row.at(size_t(j)), ctx);
    }
    return m;
}

inline json int_matrix_to_json(const IMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Rational matrices travel as separate numerator/denominator integer
// matrices under the given key prefix ("<key>_num" / "<key>_den").
inline QMat rat_matrix_from_json(const json& obj, const std::string& key,
                                 const std::string& ctx) {
    const IMat num = int_matrix_from_json(field(obj, (key + "_num").c_str(), ctx), ctx);
    const IMat den = int_matrix_from_json(field(obj, (key + "_den").c_str(), ctx), ctx);
    require(num.rows() == den.rows() && num.cols() == den.cols(),
            ctx + ": numerator and denominator shapes differ for '" + key + "'");
    QMat m(num.rows(), num.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            require(den(i, j) != 0, ctx + ": zero denominator in '" + key + "'");
            m(i, j) = make_rat(num(i, j), den(i, j));
        }
    return m;
}

inline void rat_matrix_to_json(json& obj, const std::string& key, const QMat& m) {
    IMat num(m.rows(), m.cols());
    IMat den(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            num(i, j) = m(i, j).get_num();
            den(i, j) = m(i, j).get_den();
        }
    obj[key + "_num"] = int_matrix_to_json(num);
    obj[key + "_den"] = int_matrix_to_json(den);
}

}  // namespace adl::jsondetail
