#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dimvector.hpp"
#include "errors.hpp"

namespace vsi {

/// Arrow between canonical vertex indices.
struct Arrow {
    std::size_t tail;
    std::size_t head;
};

/// A directed path, stored as its arrow sequence. The constant path at a
/// vertex has no arrows and source == target.
struct Path {
    std::size_t source;
    std::size_t target;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
};

/// Euler matrix and the two inverses that carry the projective and
/// injective dimension vectors.
struct EulerData {
    IntMatrix E;       // upper unitriangular, E(u,v) = -#arrows u->v
    IntMatrix E_inv;   // column v = dim I(v)
    IntMatrix Et_inv;  // column v = dim P(v)
};

/// Finite acyclic quiver with vertices in a fixed topological order.
///
/// Vertex indices everywhere in the library refer to this canonical order:
/// a topological sort in which ties are broken by the order vertices were
/// given in the input. Arrows keep their input order. The path table is
/// built once at construction and is immutable afterwards.
class Quiver {
public:
    Quiver(const std::vector<std::string>& vertex_names,
           const std::vector<std::pair<std::string, std::string>>& arrow_names)
    {
        std::map<std::string, std::size_t> input_index;
        for (std::size_t i = 0; i < vertex_names.size(); ++i) {
            if (!input_index.emplace(vertex_names[i], i).second)
                throw ParseError("duplicate vertex '" + vertex_names[i] + "'");
        }
        const std::size_t n = vertex_names.size();
        std::vector<std::pair<std::size_t, std::size_t>> raw;
        for (const auto& [t, h] : arrow_names) {
            auto ti = input_index.find(t);
            auto hi = input_index.find(h);
            if (ti == input_index.end())
                throw UnknownVertex("arrow tail '" + t + "'");
            if (hi == input_index.end())
                throw UnknownVertex("arrow head '" + h + "'");
            raw.emplace_back(ti->second, hi->second);
        }

        // Kahn's algorithm, always taking the earliest-listed ready vertex.
        std::vector<std::size_t> indeg(n, 0);
        for (auto [t, h] : raw)
            ++indeg[h];
        std::vector<bool> done(n, false);
        std::vector<std::size_t> order;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pick = n;
            for (std::size_t v = 0; v < n; ++v)
                if (!done[v] && indeg[v] == 0) {
                    pick = v;
                    break;
                }
            if (pick == n)
                throw OrientedCycleError("the quiver has an oriented cycle");
            done[pick] = true;
            order.push_back(pick);
            for (auto [t, h] : raw)
                if (t == pick)
                    --indeg[h];
        }
        std::vector<std::size_t> position(n);
        for (std::size_t i = 0; i < n; ++i) {
            position[order[i]] = i;
            names_.push_back(vertex_names[order[i]]);
        }
        for (auto [t, h] : raw)
            arrows_.push_back({position[t], position[h]});

        build_euler();
        build_paths();
    }

    std::size_t n() const { return names_.size(); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& vertex_name(std::size_t v) const
    {
        check_vertex(v);
        return names_[v];
    }
    std::size_t vertex_index(const std::string& name) const
    {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
            throw UnknownVertex("'" + name + "'");
        return static_cast<std::size_t>(it - names_.begin());
    }
    void check_vertex(std::size_t v) const
    {
        if (v >= n())
            throw UnknownVertex("index " + std::to_string(v));
    }

    const std::vector<Arrow>& arrows() const { return arrows_; }

    const EulerData& euler() const { return euler_; }

    /// <a, b> = a^t E b.
    std::int64_t euler_form(const DimVector& a, const DimVector& b) const
    {
        check_length(a);
        check_length(b);
        return dot(a, euler_.E * b);
    }

    /// Tits form <a, a>.
    std::int64_t tits_form(const DimVector& a) const { return euler_form(a, a); }

    DimVector proj_vector(std::size_t v) const
    {
        check_vertex(v);
        return euler_.Et_inv.column(v);
    }
    DimVector inj_vector(std::size_t v) const
    {
        check_vertex(v);
        return euler_.E_inv.column(v);
    }

    /// E^t a: coordinates of a in the basis of projective dimension vectors.
    DimVector Et_times(const DimVector& a) const
    {
        check_length(a);
        return Et_ * a;
    }
    /// (E^t)^{-1} g = dim P(g) for g >= 0.
    DimVector Et_inv_times(const DimVector& g) const
    {
        check_length(g);
        return euler_.Et_inv * g;
    }

    /// Coxeter transformation -E^{-1} E^t on dimension vectors.
    DimVector tau(const DimVector& a) const
    {
        check_length(a);
        return -(euler_.E_inv * (Et_ * a));
    }
    /// Inverse Coxeter transformation -(E^t)^{-1} E.
    DimVector tau_inverse(const DimVector& a) const
    {
        check_length(a);
        return -(euler_.Et_inv * (euler_.E * a));
    }

    const std::vector<Path>& all_paths() const { return paths_; }
    const Path& path(std::size_t id) const { return paths_.at(id); }

    /// Ids of all directed paths u -> v (the constant path when u == v).
    const std::vector<std::size_t>& paths_between(std::size_t u, std::size_t v) const
    {
        check_vertex(u);
        check_vertex(v);
        return between_[u * n() + v];
    }

    /// Position of a path within paths_between(source, target).
    std::size_t local_index(std::size_t id) const { return local_index_.at(id); }

    std::size_t constant_path(std::size_t v) const
    {
        check_vertex(v);
        return between_[v * n() + v].front();
    }

    /// Id of the path "first p then q" (p ends where q starts), or nullopt.
    std::optional<std::size_t> concat(std::size_t p, std::size_t q) const
    {
        auto r = concat_[p * paths_.size() + q];
        if (r < 0)
            return std::nullopt;
        return static_cast<std::size_t>(r);
    }

    /// Id of the length-one path along arrow a.
    std::size_t arrow_path(std::size_t a) const { return arrow_path_.at(a); }

    void check_length(const DimVector& a) const
    {
        if (a.size() != n())
            throw DimensionMismatch("vector of length " + std::to_string(a.size()) +
                                    " for a quiver with " + std::to_string(n()) + " vertices");
    }

private:
    void build_euler()
    {
        const std::size_t n = this->n();
        IntMatrix E = IntMatrix::identity(n);
        for (auto a : arrows_)
            E(a.tail, a.head) -= 1;
        // E X = I by back substitution; E is unitriangular so no division.
        IntMatrix X(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t ii = n; ii-- > 0;) {
                std::int64_t s = ii == j ? 1 : 0;
                for (std::size_t k = ii + 1; k < n; ++k)
                    s = checked_add(s, -checked_mul(E(ii, k), X(k, j)));
                X(ii, j) = s;
            }
        if (!(E * X == IntMatrix::identity(n)))
            throw InternalError("Euler matrix inverse check failed");
        euler_ = {E, X, X.transposed()};
        Et_ = E.transposed();
    }

    void build_paths()
    {
        const std::size_t n = this->n();
        between_.assign(n * n, {});
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> lookup;
        // Enumerate from each source in depth-first order, arrows in input order.
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<Path> stack{{s, s, {}}};
            std::vector<Path> found;
            while (!stack.empty()) {
                Path p = std::move(stack.back());
                stack.pop_back();
                found.push_back(p);
                for (std::size_t a = arrows_.size(); a-- > 0;)
                    if (arrows_[a].tail == p.target) {
                        Path q = p;
                        q.target = arrows_[a].head;
                        q.arrows.push_back(a);
                        stack.push_back(std::move(q));
                    }
            }
            std::stable_sort(found.begin(), found.end(), [](const Path& x, const Path& y) {
                if (x.target != y.target)
                    return x.target < y.target;
                if (x.length() != y.length())
                    return x.length() < y.length();
                return x.arrows < y.arrows;
            });
            for (auto& p : found) {
                const std::size_t id = paths_.size();
                lookup[{p.source, p.arrows}] = id;
                local_index_.push_back(between_[p.source * n + p.target].size());
                between_[p.source * n + p.target].push_back(id);
                paths_.push_back(std::move(p));
            }
        }
        const std::size_t P = paths_.size();
        concat_.assign(P * P, -1);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t q = 0; q < P; ++q) {
                if (paths_[p].target != paths_[q].source)
                    continue;
                auto seq = paths_[p].arrows;
                seq.insert(seq.end(), paths_[q].arrows.begin(), paths_[q].arrows.end());
                concat_[p * P + q] = static_cast<long>(lookup.at({paths_[p].source, seq}));
            }
        arrow_path_.resize(arrows_.size());
        for (std::size_t a = 0; a < arrows_.size(); ++a)
            arrow_path_[a] = lookup.at({arrows_[a].tail, {a}});
    }

    std::vector<std::string> names_;
    std::vector<Arrow> arrows_;
    EulerData euler_;
    IntMatrix Et_;
    std::vector<Path> paths_;
    std::vector<std::vector<std::size_t>> between_;
    std::vector<std::size_t> local_index_;
    std::vector<long> concat_;
    std::vector<std::size_t> arrow_path_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

namespace detail {

inline std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

} // namespace detail

/// Parse a quiver from either the JSON form
///   {"vertices": ["1","2","3"], "arrows": [["1","2"],["2","3"],["2","3"]]}
/// or the line form with one `tail -> head` per line. In the line form
/// vertices are implicit (order of first appearance); a line holding a
/// single name declares an isolated vertex and `#` starts a comment.
inline Quiver load_quiver(const std::string& text)
{
    const auto body = detail::trim(text);
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> arrows;
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid quiver JSON: ") + e.what());
        }
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw ParseError("quiver JSON needs a \"vertices\" array");
        auto as_name = [](const nlohmann::json& x) {
            if (x.is_string())
                return x.get<std::string>();
            if (x.is_number_integer())
                return std::to_string(x.get<long long>());
            throw ParseError("vertex identifiers must be strings or integers");
        };
        for (const auto& v : j["vertices"])
            vertices.push_back(as_name(v));
        if (j.contains("arrows")) {
            if (!j["arrows"].is_array())
                throw ParseError("\"arrows\" must be an array");
            for (const auto& a : j["arrows"]) {
                if (!a.is_array() || a.size() != 2)
                    throw ParseError("each arrow must be a [tail, head] pair");
                arrows.emplace_back(as_name(a[0]), as_name(a[1]));
            }
        }
    } else {
        auto note = [&](const std::string& v) {
            if (std::find(vertices.begin(), vertices.end(), v) == vertices.end())
                vertices.push_back(v);
        };
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.resize(hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            auto arrow = line.find("->");
            if (arrow == std::string::npos) {
                if (line.find_first_of(" \t") != std::string::npos)
                    throw ParseError("line " + std::to_string(lineno) + ": expected 'u -> v'");
                note(line);
                continue;
            }
            auto t = detail::trim(line.substr(0, arrow));
            auto h = detail::trim(line.substr(arrow + 2));
            if (t.empty() || h.empty() || h.find("->") != std::string::npos)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'u -> v'");
            note(t);
            note(h);
            arrows.emplace_back(t, h);
        }
    }
    if (vertices.empty())
        throw ParseError("quiver has no vertices");
    return Quiver(vertices, arrows);
}

inline nlohmann::json quiver_to_json(const Quiver& q)
{
    nlohmann::json j;
    j["vertices"] = q.vertex_names();
    j["arrows"] = nlohmann::json::array();
    for (auto a : q.arrows())
        j["arrows"].push_back({q.vertex_name(a.tail), q.vertex_name(a.head)});
    return j;
}

} // namespace vsi
