#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cluster.hpp"
#include "dimvector.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "quiver.hpp"
#include "representation.hpp"

namespace vsi {

using json = nlohmann::json;

/// Comma-separated integers, e.g. "1,2,-3".
inline DimVector parse_vector(const std::string& text)
{
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
                throw ParseError("bad integer '" + item + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad integer '" + item + "' in '" + text + "'");
        }
    }
    if (v.empty())
        throw ParseError("empty vector");
    return DimVector(std::move(v));
}

inline json vector_json(const DimVector& v) { return json(v.values()); }

inline DimVector vector_from_json(const json& j)
{
    if (!j.is_array())
        throw ParseError("expected an integer array");
    std::vector<std::int64_t> v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw ParseError("expected an integer");
        v.push_back(x.get<std::int64_t>());
    }
    return DimVector(std::move(v));
}

inline json int_matrix_json(const IntMatrix& m)
{
    json j = json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        j.push_back(vector_json(m.row(i)));
    return j;
}

template <class F>
json matrix_json(const F& f, const FMatrix<F>& m)
{
    json j = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(f.to_string(m(i, k)));
        j.push_back(std::move(row));
    }
    return j;
}

template <class F>
FMatrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols)
{
    auto m = zeros(f, rows, cols);
    if (!j.is_array() || j.size() != rows)
        throw ParseError("matrix must have " + std::to_string(rows) + " rows");
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = f.parse(j[i][k].is_string() ? j[i][k].get<std::string>() : j[i][k].dump());
    }
    return m;
}

template <class F>
json representation_json(const Representation<F>& m)
{
    json j;
    j["dim"] = vector_json(m.dim);
    j["mats"] = json::object();
    for (std::size_t a = 0; a < m.mats.size(); ++a)
        j["mats"][std::to_string(a)] = matrix_json(m.field, m.mats[a]);
    return j;
}

template <class F>
Representation<F> representation_from_json(QuiverPtr q, const F& f, const json& j)
{
    auto dim = vector_from_json(j.at("dim"));
    q->check_length(dim);
    if (!dim.is_nonneg())
        throw NegativeDimension(dim.to_string());
    std::vector<FMatrix<F>> mats;
    for (std::size_t a = 0; a < q->arrows().size(); ++a) {
        const auto ar = q->arrows()[a];
        const auto key = std::to_string(a);
        const auto rows = static_cast<std::size_t>(dim[ar.head]), cols = static_cast<std::size_t>(dim[ar.tail]);
        if (j.contains("mats") && j["mats"].contains(key))
            mats.push_back(matrix_from_json(f, j["mats"][key], rows, cols));
        else
            mats.push_back(zeros(f, rows, cols));
    }
    return Representation<F>(q, f, dim, std::move(mats));
}

template <class F>
json presentation_json(const Presentation<F>& phi)
{
    json j;
    j["gamma0"] = vector_json(phi.target);
    j["gamma1"] = vector_json(phi.source);
    j["blocks"] = json::object();
    const auto& q = *phi.quiver;
    for (std::size_t id = 0; id < phi.blocks.size(); ++id) {
        const auto& p = q.path(id);
        if (phi.blocks[id].empty())
            continue;
        const auto key = "(" + q.vertex_name(p.source) + "," + q.vertex_name(p.target) + "," +
                         std::to_string(q.local_index(id)) + ")";
        j["blocks"][key] = matrix_json(phi.field, phi.blocks[id]);
    }
    return j;
}

template <class F>
Presentation<F> presentation_from_json(QuiverPtr q, const F& f, const json& j)
{
    auto phi = zero_map(q, f, vector_from_json(j.at("gamma1")), vector_from_json(j.at("gamma0")));
    for (std::size_t id = 0; id < phi.blocks.size(); ++id) {
        const auto& p = q->path(id);
        const auto key = "(" + q->vertex_name(p.source) + "," + q->vertex_name(p.target) + "," +
                         std::to_string(q->local_index(id)) + ")";
        if (j.contains("blocks") && j["blocks"].contains(key))
            phi.blocks[id] = matrix_from_json(f, j["blocks"][key], phi.blocks[id].rows(), phi.blocks[id].cols());
    }
    return phi;
}

inline json vertex_json(const Quiver& q, const RootVertex& v)
{
    json j;
    j["kind"] = v.kind == RootVertex::Kind::Root ? "root" : "shifted";
    j["vector"] = vector_json(v.vector);
    if (v.kind == RootVertex::Kind::Shifted)
        j["vertex"] = q.vertex_name(v.vertex);
    return j;
}

inline json complex_json(const TiltingComplex& c, const std::vector<Wall>* walls = nullptr)
{
    const auto& q = *c.quiver;
    json j;
    j["schema"] = 1;
    j["quiver"] = quiver_to_json(q);
    j["vertices"] = json::array();
    for (const auto& v : c.vertices)
        j["vertices"].push_back(vertex_json(q, v));
    j["facets"] = c.facets;
    if (walls) {
        j["walls"] = json::array();
        for (const auto& w : *walls) {
            json wj;
            wj["ridge"] = w.ridge;
            wj["labels"] = json::array();
            for (const auto& l : w.labels)
                wj["labels"].push_back(vector_json(l));
            j["walls"].push_back(std::move(wj));
        }
    }
    return j;
}

/// Rebuild a complex from its JSON export; compatibility is recovered from
/// the facets.
inline TiltingComplex complex_from_json(QuiverPtr q, const json& j)
{
    TiltingComplex c{q, {}, {}, {}, false};
    for (const auto& vj : j.at("vertices")) {
        RootVertex v;
        const auto kind = vj.at("kind").get<std::string>();
        v.vector = vector_from_json(vj.at("vector"));
        q->check_length(v.vector);
        if (kind == "root") {
            v.kind = RootVertex::Kind::Root;
        } else if (kind == "shifted") {
            v.kind = RootVertex::Kind::Shifted;
            v.vertex = q->vertex_index(vj.at("vertex").get<std::string>());
        } else {
            throw ParseError("unknown vertex kind '" + kind + "'");
        }
        c.vertices.push_back(std::move(v));
    }
    const auto nv = c.vertices.size();
    c.compat.assign(nv, std::vector<bool>(nv, false));
    for (const auto& fj : j.at("facets")) {
        auto f = fj.get<std::vector<std::size_t>>();
        std::sort(f.begin(), f.end());
        for (auto a : f) {
            if (a >= nv)
                throw ParseError("facet refers to vertex " + std::to_string(a));
            for (auto b : f)
                if (a != b)
                    c.compat[a][b] = true;
        }
        c.facets.push_back(std::move(f));
    }
    std::sort(c.facets.begin(), c.facets.end());
    return c;
}

namespace detail {

inline std::string fmt_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

} // namespace detail

/// OBJ with the unit lambda vectors of the vertices: line segments for n = 2,
/// triangles for n = 3.
inline std::string complex_obj(const TiltingComplex& c)
{
    const auto n = c.dimension();
    if (n != 2 && n != 3)
        throw UnsupportedDimension("OBJ export needs n = 2 or n = 3, got " + std::to_string(n));
    std::ostringstream out;
    for (const auto& v : c.vertices) {
        std::vector<Rational> ray;
        for (auto x : v.lambda_vector())
            ray.emplace_back(x);
        auto u = normalized(ray);
        out << "v " << detail::fmt_double(u[0]) << ' ' << detail::fmt_double(u[1]) << ' '
            << detail::fmt_double(n == 3 ? u[2] : 0.0) << '\n';
    }
    for (const auto& f : c.facets) {
        out << (n == 3 ? "f" : "l");
        for (auto i : f)
            out << ' ' << i + 1;
        out << '\n';
    }
    return out.str();
}

/// SVG drawing of the circle triangulation for n = 2.
inline std::string complex_svg(const TiltingComplex& c)
{
    if (c.dimension() != 2)
        throw UnsupportedDimension("SVG export needs n = 2, got " + std::to_string(c.dimension()));
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : c.vertices) {
        auto u = normalized({Rational(v.lambda_vector()[0]), Rational(v.lambda_vector()[1])});
        pts.emplace_back(150 + 120 * u[0], 150 - 120 * u[1]);
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"300\" height=\"300\" viewBox=\"0 0 300 300\">\n";
    out << "<circle cx=\"150\" cy=\"150\" r=\"120\" fill=\"none\" stroke=\"#ccc\"/>\n";
    for (const auto& f : c.facets)
        out << "<line x1=\"" << detail::fmt_double(pts[f[0]].first) << "\" y1=\"" << detail::fmt_double(pts[f[0]].second)
            << "\" x2=\"" << detail::fmt_double(pts[f[1]].first) << "\" y2=\"" << detail::fmt_double(pts[f[1]].second)
            << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        out << "<circle cx=\"" << detail::fmt_double(pts[i].first) << "\" cy=\"" << detail::fmt_double(pts[i].second)
            << "\" r=\"4\"><title>" << (c.vertices[i].kind == RootVertex::Kind::Root ? "" : "-")
            << c.vertices[i].vector.to_string() << "</title></circle>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace vsi
