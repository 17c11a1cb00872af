#include <json.hpp>

#include "adl/surface.hpp"
#include "json_util.hpp"

namespace adl {

namespace {

using nlohmann::json;

const std::string kCtx = "surface JSON";

const json& field(const json& obj, const char* key) { return jsondetail::field(obj, key, kCtx); }

Int int_from_json(const json& v) { return jsondetail::int_from_json(v, kCtx); }

json int_to_json(const Int& x) { return jsondetail::int_to_json(x); }

IMat int_matrix_from_json(const json& v) { return jsondetail::int_matrix_from_json(v, kCtx); }

json int_matrix_to_json(const IMat& m) { return jsondetail::int_matrix_to_json(m); }

SurfaceModel parse_surface_document(const json& doc) {
    require(doc.is_object(), "surface JSON: top level must be an object");

    SurfaceModel m;
    require(field(doc, "name").is_string(), "surface JSON: 'name' must be a string");
    m.name = field(doc, "name").get<std::string>();
    require(field(doc, "dim").is_number_integer(), "surface JSON: 'dim' must be an integer");
    m.dim = field(doc, "dim").get<int>();
    require(m.dim >= 0, "surface JSON: 'dim' must be non-negative");
    require(field(doc, "orientation").is_number_integer(),
            "surface JSON: 'orientation' must be +1 or -1");
    m.orientation_sign = field(doc, "orientation").get<int>();

    const json& coh = field(doc, "cohomology");
    require(coh.is_array(), "surface JSON: 'cohomology' must be an array");
    m.cohomology.assign(size_t(m.dim) + 1, FgAbGroup());
    std::vector<bool> seen(size_t(m.dim) + 1, false);
    for (const json& entry : coh) {
        const int degree = field(entry, "degree").get<int>();
        require(degree >= 0 && degree <= m.dim, "surface JSON: cohomology degree out of range");
        require(!seen[size_t(degree)], "surface JSON: duplicate cohomology degree");
        seen[size_t(degree)] = true;
        std::vector<Int> factors;
        for (const json& f : field(entry, "invariant_factors")) factors.push_back(int_from_json(f));
        const int free_rank = field(entry, "free_rank").get<int>();
        m.cohomology[size_t(degree)] =
            FgAbGroup::from_invariant_factors(std::move(factors), free_rank);
    }
    for (int d = 0; d <= m.dim; ++d)
        require(seen[size_t(d)], "surface JSON: cohomology degree " + std::to_string(d) +
                                     " missing (trivial degrees still need an entry)");

    require(field(doc, "cup").is_array(), "surface JSON: 'cup' must be an array");
    for (const json& entry : field(doc, "cup")) {
        const int p = field(entry, "p").get<int>();
        const int q = field(entry, "q").get<int>();
        IMat mat = int_matrix_from_json(field(entry, "matrix"));
        if (mat.rows() == 0 || mat.cols() == 0) continue;
        require(m.cup.emplace(std::make_pair(p, q), std::move(mat)).second,
                "surface JSON: duplicate cup tensor");
    }

    require(field(doc, "link").is_array(), "surface JSON: 'link' must be an array");
    for (const json& entry : field(doc, "link")) {
        const int p = field(entry, "p").get<int>();
        IMat num = int_matrix_from_json(field(entry, "matrix_num"));
        IMat den = int_matrix_from_json(field(entry, "matrix_den"));
        require(num.rows() == den.rows() && num.cols() == den.cols(),
                "surface JSON: linking numerator and denominator shapes differ");
        if (num.rows() == 0 || num.cols() == 0) continue;
        QMat l(num.rows(), num.cols());
        for (int i = 0; i < num.rows(); ++i)
            for (int j = 0; j < num.cols(); ++j) {
                require(den(i, j) != 0, "surface JSON: zero linking denominator");
                l(i, j) = rat_mod1(make_rat(num(i, j), den(i, j)));
            }
        require(m.link.emplace(p, std::move(l)).second, "surface JSON: duplicate linking block");
    }

    return m;
}

}  // namespace

SurfaceModel load_surface(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("surface JSON: parse error: ") + e.what());
    }
    SurfaceModel m;
    try {
        m = parse_surface_document(doc);
    } catch (const json::exception& e) {
        fail(std::string("surface JSON: malformed document: ") + e.what());
    }
    validate_surface(m);
    return m;
}

std::string surface_to_json(const SurfaceModel& model) {
    json doc;
    doc["name"] = model.name;
    doc["dim"] = model.dim;
    doc["orientation"] = model.orientation_sign;

    json coh = json::array();
    for (int d = 0; d <= model.dim; ++d) {
        const FgAbGroup& g = model.cohomology[size_t(d)];
        json factors = json::array();
        for (const Int& f : g.invariant_factors()) factors.push_back(int_to_json(f));
        coh.push_back({{"degree", d}, {"invariant_factors", std::move(factors)},
                       {"free_rank", g.free_rank()}});
    }
    doc["cohomology"] = std::move(coh);

    json cup = json::array();
    for (const auto& [key, mat] : model.cup)
        cup.push_back(
            {{"p", key.first}, {"q", key.second}, {"matrix", int_matrix_to_json(mat)}});
    doc["cup"] = std::move(cup);

    json link = json::array();
    for (const auto& [p, l] : model.link) {
        json num = json::array();
        json den = json::array();
        for (int i = 0; i < l.rows(); ++i) {
            json num_row = json::array();
            json den_row = json::array();
            for (int j = 0; j < l.cols(); ++j) {
                num_row.push_back(int_to_json(l(i, j).get_num()));
                den_row.push_back(int_to_json(l(i, j).get_den()));
            }
            num.push_back(std::move(num_row));
            den.push_back(std::move(den_row));
        }
        link.push_back({{"p", p}, {"matrix_num", std::move(num)}, {"matrix_den", std::move(den)}});
    }
    doc["link"] = std::move(link);

    return doc.dump(2);
}

}  // namespace adl
