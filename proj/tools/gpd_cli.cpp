#include "gpd/gpd.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace gpd;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitRank = 3;

struct Options {
    std::string input;
    std::string output;
    int degree = 0;
    std::string method = "birth-death";
    std::string direction = "auto";
    double tol = kDefaultTol;
    unsigned threads = 0;
    int max_dim = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

bool is_csv(const std::string& path) { return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"; }

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + o.output);
    out << text;
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

/// Filtration JSON, or a distance-matrix CSV read as a Vietoris-Rips
/// filtration up to dimension degree + 1.
Filtration load_filtration(const std::string& path, int degree) {
    if (is_csv(path)) {
        std::istringstream in(read_file(path));
        auto nm = read_named_csv(in);
        try {
            return vietoris_rips(nm.m, degree + 1, nm.names);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return filtration_from_json(read_json(path));
}

int cmd_gpd(const Options& o) {
    const Filtration f = load_filtration(o.input, o.degree);
    const SegmentDiagram g = o.method == "laplacian" ? gpd_laplacian(f, o.degree, o.tol, o.threads)
                                                     : gpd_birth_death(f, o.degree, o.tol, o.threads);
    json out = to_json(g, chain_labels(f.complex(), o.degree));
    out["degree"] = o.degree;
    out["method"] = o.method;
    emit(o, out);
    return 0;
}

int cmd_pd(const Options& o) {
    const Filtration f = load_filtration(o.input, o.degree);
    const auto betti = classical_pd(f, o.degree, PdMethod::betti, o.tol, o.threads);
    const auto by_dims = classical_pd(f, o.degree, PdMethod::dims, o.tol, o.threads);
    bool agree = true;
    for (const auto& s : segments(f.n(), OrderTag::reverse_inclusion))
        agree = agree && value_at(betti, s) == value_at(by_dims, s);
    emit(o, json{{"degree", o.degree},
                 {"values", f.poset().values()},
                 {"betti", to_json(betti, f.n())},
                 {"dims", to_json(by_dims, f.n())},
                 {"agree", agree}});
    return 0;
}

int cmd_vr(const Options& o) {
    std::istringstream in(read_file(o.input));
    const auto nm = read_named_csv(in);
    Filtration f;
    try {
        f = vietoris_rips(nm.m, o.max_dim, nm.names);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    emit(o, to_json(f));
    return 0;
}

std::vector<std::string> vertex_names_of(const json& j, Index ambient) {
    if (j.contains("labels")) return j.at("labels").get<std::vector<std::string>>();
    std::vector<std::string> out;
    for (Index v = 0; v < ambient; ++v) out.push_back(std::to_string(v));
    return out;
}

int cmd_treegram(const Options& o) {
    std::string dir = o.direction;
    json j;
    if (!is_csv(o.input)) j = read_json(o.input);
    if (dir == "auto") {
        if (is_csv(o.input) || j.contains("simplices"))
            dir = "from-filtration";
        else if (j.contains("entries"))
            dir = "from-gpd";
        else if (j.contains("events"))
            dir = "to-gpd";
        else
            throw ParseError("cannot tell whether the input is a filtration, a diagram or a treegram");
    }
    try {
        if (dir == "from-filtration") {
            emit(o, to_json(treegram_of_filtration(is_csv(o.input) ? load_filtration(o.input, 0) : filtration_from_json(j))));
        } else if (dir == "from-gpd") {
            const SegmentDiagram g = diagram_from_json(j, o.tol);
            emit(o, to_json(gpd_to_treegram(g, vertex_names_of(j, g.ambient()))));
        } else if (dir == "to-gpd") {
            const Treegram t = treegram_from_json(j);
            emit(o, to_json(treegram_to_gpd(t, o.tol), t.vertices));
        } else if (dir == "to-ultrametric") {
            const auto u = ultrametric_from_treegram(treegram_from_json(j));
            if (!u.dendrogram)
                std::cerr << "warning: not every point is born at the first event; the matrix records merge times only\n";
            std::ostringstream out;
            write_named_csv(out, u.names, u.u);
            emit(o, out.str());
        } else {
            throw ParseError("unknown direction " + dir);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return 0;
}

int cmd_harmonic(const Options& o) {
    const Filtration f = load_filtration(o.input, o.degree);
    const SegmentDiagram g = gpd_birth_death(f, o.degree, o.tol, o.threads);
    const HarmonicBarcode hb(f, o.degree, o.tol);
    json entries = json::array();
    for (const auto& [s, cell] : hb.cells()) {
        if (cell.calP.is_zero() && g.dim(s) == 0) continue;
        json e = to_json(cell.calP);
        entries.push_back({{"b", s.b},
                           {"d", segment_end_to_json(s.d, f.n())},
                           {"dim", cell.calP.rank()},
                           {"basis", e["basis"]},
                           {"isomorphism_verified", check_projection_isomorphism(g.at(s), cell)}});
    }
    emit(o, json{{"order", "reverse_inclusion"},
                 {"ambient", f.complex().count(o.degree)},
                 {"values", f.poset().values()},
                 {"labels", chain_labels(f.complex(), o.degree)},
                 {"degree", o.degree},
                 {"entries", std::move(entries)}});
    return 0;
}

class Report {
public:
    void check(const std::string& name, std::optional<std::string> failure) {
        if (failure) {
            lines_.push_back("FAIL " + name + ": " + *failure);
            ok_ = false;
        } else {
            lines_.push_back("PASS " + name);
        }
    }
    bool ok() const { return ok_; }
    std::string text() const {
        std::string out;
        for (const auto& l : lines_) out += l + "\n";
        return out;
    }

private:
    std::vector<std::string> lines_;
    bool ok_ = true;
};

std::optional<std::string> first_nontransverse(const SegmentDiagram& g) {
    if (is_transverse(g.family())) return std::nullopt;
    std::vector<Subspace> seen;
    for (const auto& [s, v] : g.entries()) {
        seen.push_back(v);
        if (!is_transverse(seen)) return "family stops being transverse at segment " + s.str(g.n());
    }
    return "family is not transverse";
}

std::optional<std::string> first_comparable_overlap(const SegmentDiagram& g, double check_tol) {
    for (const auto& [a, va] : g.entries())
        for (const auto& [b, vb] : g.entries())
            if (a != b && leq(g.order(), a, b) && va.max_inner(vb) > check_tol)
                return "entries at " + a.str(g.n()) + " and " + b.str(g.n()) + " are not orthogonal";
    return std::nullopt;
}

std::optional<std::string> first_mismatch(const SegmentDiagram& a, const SegmentDiagram& b, bool off_diagonal_only,
                                          double check_tol) {
    for (const auto& s : segments(a.n(), OrderTag::product)) {
        if (off_diagonal_only && s.is_diagonal()) continue;
        if (residual(a.at(s), b.at(s)) > check_tol) return "segment " + s.str(a.n());
    }
    return std::nullopt;
}

void verify_diagram(const json& j, const Options& o, Report& r) {
    const SegmentDiagram g = diagram_from_json(j, o.tol);
    r.check("transversity", first_nontransverse(g));
    if (g.order() != OrderTag::product) return;
    r.check("comparable-orthogonality", first_comparable_overlap(g, kCheckTol));
    const SegmentDiagram zb = downset_sums(g);
    r.check("intersection-monotone", intersection_monotone_violation(zb));
    if (check_intersection_monotone(zb))
        r.check("orthogonal-inverse", first_mismatch(prhi(zb, false, false), g, false, kCheckTol));
    const auto labels = vertex_names_of(j, g.ambient());
    if (g.ambient() > 0 && g.at({1, g.n() + 1}).rank() > 0 && j.value("degree", 0) == 0) {
        std::optional<std::string> failure;
        try {
            gpd_to_treegram(g, labels);
        } catch (const std::invalid_argument& e) {
            failure = e.what();
        }
        r.check("treegram-reconstruction", failure);
    }
}

void verify_filtration(const Filtration& f, const Options& o, Report& r) {
    const int q = o.degree, n = f.n();
    const SegmentDiagram zb = zb_diagram(f, q, o.tol, o.threads);
    r.check("intersection-monotone", intersection_monotone_violation(zb));
    const SegmentDiagram g = prhi(zb, false, false, o.threads);
    {
        std::optional<std::string> failure;
        const SegmentDiagram acc = downset_sums(g);
        for (const auto& s : zb.domain())
            if (!equal(acc.at(s), zb.at(s), kCheckTol)) {
                failure = "segment " + s.str(n);
                break;
            }
        r.check("monoidal-inverse", failure);
    }
    r.check("transversity", first_nontransverse(g));
    r.check("comparable-orthogonality", first_comparable_overlap(g, kCheckTol));
    r.check("literal-form", first_mismatch(g, prhi(zb, true, false, o.threads), false, kCheckTol));
    {
        std::optional<std::string> failure;
        try {
            failure = first_mismatch(g, gpd_laplacian(f, q, o.tol, o.threads, true), true, kCheckTol);
        } catch (const std::runtime_error& e) {
            failure = e.what();
        }
        r.check("laplacian-route", failure);
    }
    {
        std::optional<std::string> failure;
        const auto betti = classical_pd(f, q, PdMethod::betti, o.tol, o.threads);
        for (const auto& s : segments(n, OrderTag::reverse_inclusion))
            if (value_at(betti, s) != g.dim(s)) {
                failure = "segment " + s.str(n);
                break;
            }
        r.check("classical-pd", failure);
    }
    {
        std::optional<std::string> failure;
        for (const auto& [s, v] : g.entries()) {
            for (Index k = 0; k < v.rank() && !failure; ++k)
                if (!lifetime_check(v.vector(k), f, q, s, o.tol)) failure = "segment " + s.str(n);
            if (failure) break;
        }
        r.check("lifetime", failure);
    }
    {
        std::optional<std::string> failure;
        const HarmonicBarcode hb(f, q, o.tol);
        for (const auto& [s, cell] : hb.cells())
            if (!check_projection_isomorphism(g.at(s), cell)) {
                failure = "segment " + s.str(n);
                break;
            }
        r.check("projection-isomorphism", failure);
    }
    if (q == 0) {
        std::optional<std::string> failure;
        try {
            const Treegram t = treegram_of_filtration(f);
            if (max_residual(treegram_to_gpd(t, o.tol), g) > kCheckTol)
                failure = "treegram reconstruction differs from the diagram";
            else if (!(gpd_to_treegram(g, f.complex().vertex_names()) == t))
                failure = "treegram recovered from the diagram differs";
        } catch (const std::invalid_argument& e) {
            failure = e.what();
        }
        if (failure && failure->find("disconnected") != std::string::npos)
            r.check("treegram (skipped: final complex is disconnected)", std::nullopt);
        else
            r.check("treegram", failure);
    }
}

int cmd_verify(const Options& o) {
    Report r;
    if (is_csv(o.input)) {
        verify_filtration(load_filtration(o.input, o.degree), o, r);
    } else {
        const json j = read_json(o.input);
        if (j.contains("entries"))
            verify_diagram(j, o, r);
        else
            verify_filtration(filtration_from_json(j), o, r);
    }
    emit(o, r.text());
    return r.ok() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grassmannian persistence diagrams of simplicial filtrations"};
    app.require_subcommand(1);
    Options o;
    o.threads = std::max(1u, std::thread::hardware_concurrency());

    auto common = [&](CLI::App* sub, bool degree) {
        sub->add_option("input", o.input, "Input file")->required();
        sub->add_option("-o,--output", o.output, "Output file (default: stdout)");
        sub->add_option("--tol", o.tol, "Rank tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "Worker threads over segments")->check(CLI::PositiveNumber);
        if (degree) sub->add_option("-q,--degree", o.degree, "Homology degree")->check(CLI::NonNegativeNumber);
    };
    auto* gpd_cmd = app.add_subcommand("gpd", "Grassmannian persistence diagram of a filtration");
    common(gpd_cmd, true);
    gpd_cmd->add_option("--method", o.method, "birth-death or laplacian")
        ->check(CLI::IsMember({"birth-death", "laplacian"}));
    auto* pd_cmd = app.add_subcommand("pd", "Classical persistence diagram by both methods");
    common(pd_cmd, true);
    auto* tg_cmd = app.add_subcommand("treegram", "Treegram conversions");
    common(tg_cmd, false);
    tg_cmd->add_option("--direction", o.direction, "from-filtration, from-gpd, to-gpd or to-ultrametric")
        ->check(CLI::IsMember({"auto", "from-filtration", "from-gpd", "to-gpd", "to-ultrametric"}));
    auto* vr_cmd = app.add_subcommand("vr", "Vietoris-Rips filtration of a distance matrix");
    common(vr_cmd, false);
    vr_cmd->add_option("--max-dim", o.max_dim, "Largest simplex dimension")->check(CLI::NonNegativeNumber);
    auto* verify_cmd = app.add_subcommand("verify", "Check invariants of a filtration or a diagram");
    common(verify_cmd, true);
    auto* harmonic_cmd = app.add_subcommand("harmonic", "Harmonic barcode with projection checks");
    common(harmonic_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*gpd_cmd) return cmd_gpd(o);
        if (*pd_cmd) return cmd_pd(o);
        if (*tg_cmd) return cmd_treegram(o);
        if (*vr_cmd) return cmd_vr(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*harmonic_cmd) return cmd_harmonic(o);
    } catch (const NumericalRankError& e) {
        std::cerr << "error: numerical rank failure: " << e.what() << "\n";
        return kExitRank;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
