#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vsi/vsi.hpp"

using namespace vsi;

namespace {

constexpr int kDomainError = 1;
constexpr int kVerifyFailed = 2;

struct RunConfig {
    std::string quiver_path;
    std::string field = "fp:32003";
    std::uint64_t seed = 0;
    int trials = 3;
    std::string output = "text";
};

struct Args {
    std::string alpha, beta;
    int cv_trials = 5;
    bool halfspaces = false;
    std::string format = "json";
    std::int64_t depth = 3;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QuiverPtr open_quiver(const RunConfig& cfg)
{
    if (cfg.quiver_path.empty())
        throw ParseError("--quiver is required for this command");
    return std::make_shared<const Quiver>(load_quiver(read_file(cfg.quiver_path)));
}

json envelope(const std::string& command)
{
    json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

void print_matrix(std::ostream& out, const std::string& title, const IntMatrix& m)
{
    out << title << ":\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << " ";
        for (std::size_t k = 0; k < m.size(); ++k)
            out << ' ' << std::setw(3) << m(i, k);
        out << '\n';
    }
}

std::string parts_text(const std::vector<DimVector>& parts)
{
    std::string s;
    for (const auto& p : parts)
        s += (s.empty() ? "" : " + ") + p.to_string();
    return s.empty() ? "0" : s;
}

int cmd_euler(const RunConfig& cfg)
{
    auto q = open_quiver(cfg);
    const auto& e = q->euler();
    if (cfg.output == "json") {
        auto j = envelope("euler");
        j["order"] = q->vertex_names();
        j["E"] = int_matrix_json(e.E);
        j["E_inv"] = int_matrix_json(e.E_inv);
        j["Et_inv"] = int_matrix_json(e.Et_inv);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "order:";
        for (const auto& v : q->vertex_names())
            std::cout << ' ' << v;
        std::cout << '\n';
        print_matrix(std::cout, "E", e.E);
        print_matrix(std::cout, "E^-1", e.E_inv);
        print_matrix(std::cout, "(E^t)^-1", e.Et_inv);
    }
    return 0;
}

int cmd_roots(const RunConfig& cfg)
{
    auto q = open_quiver(cfg);
    auto roots = positive_roots(*q);
    if (cfg.output == "json") {
        auto j = envelope("roots");
        j["roots"] = json::array();
        for (const auto& r : roots)
            j["roots"].push_back(vector_json(r));
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << roots.size() << " positive roots\n";
        for (const auto& r : roots)
            std::cout << "  " << r.to_string() << '\n';
    }
    return 0;
}

template <class F>
int cmd_decompose(const RunConfig& cfg, const F& f, const Args& args)
{
    auto q = open_quiver(cfg);
    auto a = parse_vector(args.alpha);
    q->check_length(a);
    auto gd = generic_decomposition(q, a, f, cfg.seed, {10, cfg.trials});
    if (cfg.output == "json") {
        auto j = envelope("decompose");
        j["alpha"] = vector_json(a);
        j["parts"] = json::array();
        for (const auto& p : gd.parts)
            j["parts"].push_back(vector_json(p));
        j["gamma"] = vector_json(gd.gamma);
        j["trials"] = cfg.trials;
        j["field"] = f.name();
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << a.to_string() << " = " << parts_text(gd.parts) << " - (E^t)^-1 " << gd.gamma.to_string()
                  << "  [randomized, " << cfg.trials << " trials over " << f.name() << "]\n";
    }
    return 0;
}

int cmd_canres(const RunConfig& cfg, const Args& args)
{
    auto q = open_quiver(cfg);
    auto a = parse_vector(args.alpha);
    q->check_length(a);
    auto cd = canonical_decomp(*q, a);
    auto md = minimal_decomp(*q, a);
    if (cfg.output == "json") {
        auto j = envelope("canres");
        j["alpha"] = vector_json(a);
        j["mu"] = vector_json(cd.mu);
        j["gamma"] = vector_json(cd.gamma);
        j["R_can"] = {vector_json(cd.presentation.gamma0), vector_json(cd.presentation.gamma1)};
        j["R_min"] = {vector_json(md.gamma0), vector_json(md.gamma1)};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "mu = " << cd.mu.to_string() << ", gamma = " << cd.gamma.to_string() << '\n';
        std::cout << "R^can = (" << cd.presentation.gamma0.to_string() << "," << cd.presentation.gamma1.to_string()
                  << ")\n";
        std::cout << "R^min = (" << md.gamma0.to_string() << "," << md.gamma1.to_string() << ")\n";
    }
    return 0;
}

template <class F>
int cmd_cv(const RunConfig& cfg, const F& f, const Args& args)
{
    auto q = open_quiver(cfg);
    auto a = parse_vector(args.alpha);
    auto b = parse_vector(args.beta);
    q->check_length(a);
    q->check_length(b);
    auto phi = random_presentation(q, minimal_decomp(*q, a), f, derive_seed(cfg.seed, {1}));
    auto v = random_rep(q, b, f, derive_seed(cfg.seed, {2}));
    auto value = cv_value(phi, v);
    bool nonvanishing = b.is_zero() || supp_test_randomized(q, a, b, f, cfg.seed, args.cv_trials);
    if (cfg.output == "json") {
        auto j = envelope("cv");
        j["alpha"] = vector_json(a);
        j["beta"] = vector_json(b);
        j["value"] = f.to_string(value);
        j["nonvanishing"] = nonvanishing;
        j["trials"] = args.cv_trials;
        j["weight"] = vector_json(cv_weight(v));
        j["field"] = f.name();
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "C_V(phi) = " << f.to_string(value) << " over " << f.name() << '\n';
        std::cout << "nonvanishing on R^min(alpha): " << (nonvanishing ? "yes" : "no") << "  [" << args.cv_trials
                  << " trials]\n";
        std::cout << "weight = " << cv_weight(v).to_string() << '\n';
    }
    return 0;
}

template <class F>
int cmd_support(const RunConfig& cfg, const F& f, const Args& args)
{
    auto q = open_quiver(cfg);
    auto a = parse_vector(args.alpha);
    auto b = parse_vector(args.beta);
    q->check_length(a);
    auto h = d_beta_halfspaces(q, b, f, cfg.seed, cfg.trials);
    const bool member = h.contains(a);
    if (cfg.output == "json") {
        auto j = envelope("support");
        j["member"] = member;
        j["equality"] = vector_json(h.equality);
        j["inequalities"] = json::array();
        for (const auto& v : h.inequalities)
            j["inequalities"].push_back(vector_json(v));
        if (args.halfspaces) {
            j["subdimensions"] = json::array();
            for (const auto& v : h.subdims)
                j["subdimensions"].push_back(vector_json(v));
        }
        j["trials"] = cfg.trials;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << a.to_string() << (member ? " is" : " is not") << " in D(" << b.to_string() << ")  ["
                  << cfg.trials << " trials per subrepresentation test]\n";
        if (args.halfspaces) {
            std::cout << "  <alpha, " << h.equality.to_string() << "> = 0\n";
            for (std::size_t i = 0; i < h.inequalities.size(); ++i)
                std::cout << "  <alpha, " << h.inequalities[i].to_string() << "> <= 0   (sub " << h.subdims[i].to_string()
                          << ")\n";
        }
    }
    return 0;
}

template <class F>
int cmd_complex(const RunConfig& cfg, const F& f, const std::string& action, const Args& args)
{
    auto q = open_quiver(cfg);
    if (action == "truncate") {
        auto c = truncated_complex(q, f, cfg.seed, args.depth, cfg.trials);
        auto j = complex_json(c);
        j["truncated_depth"] = args.depth;
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    auto c = build_complex(q, f, cfg.seed, false, cfg.trials);
    if (action == "build") {
        if (cfg.output == "json") {
            std::cout << complex_json(c).dump(2) << '\n';
        } else {
            std::cout << c.vertices.size() << " vertices, " << c.ridges().size() << " ridges, " << c.facets.size()
                      << " facets\n";
        }
        return 0;
    }
    if (action == "verify") {
        auto rep = verify_sphere(c, f, cfg.seed);
        if (!rep.ok() && !c.exact_ext) {
            c = build_complex(q, f, derive_seed(cfg.seed, {0x7632}), true, cfg.trials);
            rep = verify_sphere(c, f, cfg.seed);
        }
        if (cfg.output == "json") {
            auto j = envelope("complex verify");
            j["ok"] = rep.ok();
            j["pure"] = rep.pure;
            j["ridge_regular"] = rep.ridge_regular;
            j["connected"] = rep.connected;
            j["euler_characteristic"] = rep.euler_characteristic;
            j["expected_euler"] = rep.expected_euler;
            j["lambda_injective"] = rep.lambda_injective;
            j["covering"] = rep.covering;
            j["covering_points"] = rep.covering_points;
            j["face_counts"] = rep.face_counts;
            j["exact_ext"] = c.exact_ext;
            j["messages"] = rep.messages;
            std::cout << j.dump(2) << '\n';
        } else {
            auto yn = [](bool b) { return b ? "ok" : "FAILED"; };
            std::cout << "pure:              " << yn(rep.pure) << '\n'
                      << "ridges in 2 facets: " << yn(rep.ridge_regular) << '\n'
                      << "connected:         " << yn(rep.connected) << '\n'
                      << "Euler char:        " << yn(rep.euler_ok) << " (" << rep.euler_characteristic << ")\n"
                      << "lambda injective:  " << yn(rep.lambda_injective) << '\n'
                      << "covering:          " << yn(rep.covering) << " (" << rep.covering_points << " points)\n";
            for (const auto& m : rep.messages)
                std::cout << "  " << m << '\n';
        }
        return rep.ok() ? 0 : kVerifyFailed;
    }
    if (action == "walls") {
        auto walls = wall_labels(c);
        if (cfg.output == "json") {
            std::cout << complex_json(c, &walls).dump(2) << '\n';
        } else {
            for (const auto& w : walls) {
                std::cout << "{";
                for (std::size_t i = 0; i < w.ridge.size(); ++i) {
                    const auto& v = c.vertices[w.ridge[i]];
                    std::cout << (i ? ", " : "")
                              << (v.kind == RootVertex::Kind::Root ? v.vector.to_string()
                                                                   : "p(" + q->vertex_name(v.vertex) + ")[1]");
                }
                std::cout << "} -> " << parts_text(w.labels) << '\n';
            }
        }
        return 0;
    }
    if (action == "export") {
        if (args.format == "json") {
            auto walls = wall_labels(c);
            std::cout << complex_json(c, &walls).dump(2) << '\n';
        } else if (args.format == "obj") {
            std::cout << complex_obj(c);
        } else if (args.format == "svg") {
            std::cout << complex_svg(c);
        } else {
            throw ParseError("unknown format '" + args.format + "'");
        }
        return 0;
    }
    throw ParseError("unknown complex action '" + action + "'");
}

int cmd_selftest()
{
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
        if (!ok)
            ++failures;
    };
    PrimeField f;
    auto q = std::make_shared<const Quiver>(load_quiver("1 -> 2\n2 -> 3\n2 -> 3\n"));
    const auto& e = q->euler();
    check(e.E == IntMatrix{{1, -1, 0}, {0, 1, -2}, {0, 0, 1}}, "Euler matrix of 1->2=>3");
    check(e.E_inv == IntMatrix{{1, 1, 2}, {0, 1, 2}, {0, 0, 1}}, "inverse Euler matrix");
    check(e.Et_inv == IntMatrix{{1, 0, 0}, {1, 1, 0}, {2, 2, 1}}, "projective dimension vectors");

    auto cd = canonical_decomp(*q, {1, 2, -3});
    auto md = minimal_decomp(*q, {1, 2, -3});
    check(cd.mu == DimVector{1, 2, 0} && cd.gamma == DimVector{0, 0, 3}, "canonical decomposition of (1,2,-3)");
    check(cd.presentation.gamma0 == DimVector{1, 2, 0} && cd.presentation.gamma1 == DimVector{0, 1, 7},
          "R^can of (1,2,-3)");
    check(md.gamma0 == DimVector{1, 1, 0} && md.gamma1 == DimVector{0, 0, 7}, "R^min of (1,2,-3)");

    auto h = d_beta_halfspaces(q, {0, 1, 2}, f, 0);
    bool grid = true;
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b)
            for (int c = -5; c <= 5; ++c)
                grid = grid && (h.contains({a, b, c}) == (2 * c == 3 * b + a && b >= a));
    check(grid, "D((0,1,2)) on the grid [-5,5]^3");
    check(h.contains({-1, -1, -2}) && h.contains({-2, 0, -1}), "members of D((0,1,2))");

    auto a2 = std::make_shared<const Quiver>(load_quiver("1 -> 2\n"));
    auto a3 = std::make_shared<const Quiver>(load_quiver("1 -> 2\n2 -> 3\n"));
    auto c2 = build_complex(a2, f, 0);
    auto c3 = build_complex(a3, f, 0);
    check(c2.vertices.size() == 5 && c2.facets.size() == 5, "A2 complex: 5 vertices, 5 facets");
    check(c3.vertices.size() == 9 && c3.ridges().size() == 21 && c3.facets.size() == 14,
          "A3 complex: 9 vertices, 21 ridges, 14 facets");
    check(verify_sphere(c3, f, 0).ok(), "A3 complex is a 2-sphere");
    return failures == 0 ? 0 : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semi-invariants, generic decompositions and cluster complexes of quivers"};
    app.require_subcommand(1);
    RunConfig cfg;
    Args args;
    if (const char* env = std::getenv("VSI_SEED"))
        cfg.seed = std::strtoull(env, nullptr, 10);
    app.add_option("-q,--quiver", cfg.quiver_path, "Quiver file (JSON or 'u -> v' lines)");
    app.add_option("--field", cfg.field, "Field: q or fp:P")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed (default from VSI_SEED, else 0)");
    app.add_option("--trials", cfg.trials, "Samples per randomized oracle")->capture_default_str()->check(
        CLI::PositiveNumber);
    app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    auto* euler = app.add_subcommand("euler", "Euler matrix and its inverses");
    auto* roots = app.add_subcommand("roots", "Positive roots of a Dynkin quiver");
    auto* decompose = app.add_subcommand("decompose", "Generic decomposition of a virtual dimension vector");
    decompose->add_option("alpha", args.alpha, "Comma-separated integers")->required()->allow_extra_args(false);
    auto* canres = app.add_subcommand("canres", "Canonical and minimal projective decompositions");
    canres->add_option("alpha", args.alpha, "Comma-separated integers")->required();
    auto* cv = app.add_subcommand("cv", "Sample the determinantal semi-invariant C_V");
    cv->add_option("--alpha", args.alpha)->required();
    cv->add_option("--beta", args.beta)->required();
    cv->add_option("--trials", args.cv_trials, "Samples for the nonvanishing verdict")->capture_default_str();
    auto* support = app.add_subcommand("support", "Membership in D(beta)");
    support->add_option("--alpha", args.alpha)->required();
    support->add_option("--beta", args.beta)->required();
    support->add_flag("--halfspaces", args.halfspaces, "Print the half-space system");
    auto* complex = app.add_subcommand("complex", "Cluster tilting complex of a Dynkin quiver");
    std::string action;
    complex->add_option("action", action, "build | verify | walls | export | truncate")
        ->required()
        ->check(CLI::IsMember({"build", "verify", "walls", "export", "truncate"}));
    complex->add_option("--format", args.format, "Export format")
        ->check(CLI::IsMember({"json", "obj", "svg"}))
        ->capture_default_str();
    complex->add_option("--depth", args.depth, "Entry bound for truncate")->capture_default_str();
    auto* selftest = app.add_subcommand("selftest", "Run the built-in golden checks");

    // Global options may follow the subcommand.
    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();
    // Vectors such as -1,0,-2 must not be read as flags.
    app.allow_extras(false);
    for (auto* sub : {decompose, canres})
        sub->positionals_at_end(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kDomainError;
    }

    try {
        auto field = make_field(FieldSpec::parse(cfg.field));
        if (selftest->parsed())
            return cmd_selftest();
        if (euler->parsed())
            return cmd_euler(cfg);
        if (roots->parsed())
            return cmd_roots(cfg);
        if (canres->parsed())
            return cmd_canres(cfg, args);
        return std::visit(
            [&](const auto& f) -> int {
                if (decompose->parsed())
                    return cmd_decompose(cfg, f, args);
                if (cv->parsed())
                    return cmd_cv(cfg, f, args);
                if (support->parsed())
                    return cmd_support(cfg, f, args);
                if (complex->parsed())
                    return cmd_complex(cfg, f, action, args);
                return kDomainError;
            },
            field);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainError;
    }
}
