#pragma once

#include "gpd/filtration.hpp"
#include "gpd/segment_diagram.hpp"
#include "gpd/treegram.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

using json = nlohmann::json;

/// Malformed input file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("not a number: \"" + s + "\"");
    }
    if (used != s.size()) throw ParseError("not a number: \"" + s + "\"");
    return v;
}

}  // namespace detail

// Subspaces: {"ambient": d, "basis": [[...], ...]}, one array per basis column.

inline json to_json(const Subspace& s) {
    json basis = json::array();
    for (Index c = 0; c < s.rank(); ++c) {
        json col = json::array();
        for (Index r = 0; r < s.ambient(); ++r) col.push_back(s.basis()(r, c));
        basis.push_back(std::move(col));
    }
    return {{"ambient", s.ambient()}, {"basis", std::move(basis)}};
}

inline Mat basis_matrix(const json& basis, Index ambient) {
    if (!basis.is_array()) throw ParseError("basis must be an array of columns");
    Mat m(ambient, static_cast<Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& col = basis[c];
        if (!col.is_array() || static_cast<Index>(col.size()) != ambient)
            throw ParseError("basis column has the wrong length");
        for (Index r = 0; r < ambient; ++r) {
            if (!col[static_cast<std::size_t>(r)].is_number()) throw ParseError("basis entry is not a number");
            m(r, static_cast<Index>(c)) = col[static_cast<std::size_t>(r)].get<double>();
        }
    }
    return m;
}

inline Subspace subspace_from_json(const json& j, double tol = kDefaultTol) {
    const auto& a = detail::field(j, "ambient");
    if (!a.is_number_integer() || a.get<long long>() < 0) throw ParseError("ambient must be a nonnegative integer");
    const Index ambient = a.get<Index>();
    return span(basis_matrix(detail::field(j, "basis"), ambient), tol);
}

// Segment diagrams.

inline json segment_end_to_json(int d, int n) { return d == n + 1 ? json("inf") : json(d); }

/// `labels` names the ambient coordinates (simplex labels); omitted when empty.
inline json to_json(const SegmentDiagram& d, const std::vector<std::string>& labels = {}) {
    json entries = json::array();
    for (const auto& [s, v] : d.entries()) {
        json e = to_json(v);
        entries.push_back({{"b", s.b}, {"d", segment_end_to_json(s.d, d.n())}, {"dim", v.rank()}, {"basis", e["basis"]}});
    }
    json out = {{"order", to_string(d.order())}, {"ambient", d.ambient()}, {"values", d.poset().values()},
                {"entries", std::move(entries)}};
    if (!labels.empty()) out["labels"] = labels;
    return out;
}

inline OrderTag order_from_string(const std::string& s) {
    if (s == "product") return OrderTag::product;
    if (s == "reverse_inclusion") return OrderTag::reverse_inclusion;
    throw ParseError("unknown order \"" + s + "\"");
}

/// Reads a diagram. The poset comes from "values", else from "n" (values
/// 1..n). Segment basis vectors are re-orthonormalized on ingestion.
inline SegmentDiagram diagram_from_json(const json& j, double tol = kDefaultTol) {
    const OrderTag order = order_from_string(detail::field(j, "order").get<std::string>());
    const auto& a = detail::field(j, "ambient");
    if (!a.is_number_integer() || a.get<long long>() < 0) throw ParseError("ambient must be a nonnegative integer");
    const Index ambient = a.get<Index>();
    std::vector<double> values;
    if (j.contains("values")) {
        values = j.at("values").get<std::vector<double>>();
    } else if (j.contains("n")) {
        const int n = j.at("n").get<int>();
        for (int i = 1; i <= n; ++i) values.push_back(i);
    } else {
        throw ParseError("diagram needs \"values\" or \"n\"");
    }
    SegmentDiagram out(LinearMetricPoset(values), order, ambient, tol);
    const int n = out.n();
    for (const auto& e : detail::field(j, "entries")) {
        const auto& b = detail::field(e, "b");
        const auto& dd = detail::field(e, "d");
        if (!b.is_number_integer()) throw ParseError("segment birth must be an integer index");
        int d = 0;
        if (dd.is_string() && dd.get<std::string>() == "inf")
            d = n + 1;
        else if (dd.is_number_integer())
            d = dd.get<int>();
        else
            throw ParseError("segment death must be an integer index or \"inf\"");
        const Segment s{b.get<int>(), d};
        if (!is_valid_segment(s, n, order)) throw ParseError("segment " + s.str(n) + " outside the domain");
        if (out.entries().count(s)) throw ParseError("segment " + s.str(n) + " listed twice");
        Subspace v = span(basis_matrix(detail::field(e, "basis"), ambient), tol);
        if (e.contains("dim") && e.at("dim").get<long long>() != v.rank())
            throw ParseError("segment " + s.str(n) + " declares dim " + e.at("dim").dump() + " but its basis has rank " +
                             std::to_string(v.rank()));
        out.set(s, std::move(v));
    }
    return out;
}

inline json to_json(const SegmentFunction& m, int n) {
    json entries = json::array();
    for (const auto& [s, v] : m) entries.push_back({{"b", s.b}, {"d", segment_end_to_json(s.d, n)}, {"mult", v}});
    return entries;
}

// Filtrations.

/// Simplices as vertex names, plus their entry index into "values".
inline json to_json(const Filtration& f) {
    const auto& k = f.complex();
    json simplices = json::array();
    for (int q = 0; q <= k.dim(); ++q)
        for (int c = 0; c < k.count(q); ++c) {
            json verts = json::array();
            for (int v : k.simplices(q)[c]) verts.push_back(k.vertex_names()[v]);
            simplices.push_back({{"t", f.entry(q, c)}, {"verts", std::move(verts)}});
        }
    return {{"time", "index"}, {"values", f.poset().values()}, {"vertices", k.vertex_names()},
            {"simplices", std::move(simplices)}};
}

/// {"values": [...], "simplices": [{"t": ..., "verts": [...]}, ...]}. An
/// integer "t" is a 1-based index into "values" and a floating-point "t" is a
/// value, unless "time" is "index" or "value". "verts" may also be one
/// whitespace-separated string. Vertex order is "vertices" if given, else
/// order of first appearance. Every face of a listed simplex must be listed.
inline Filtration filtration_from_json(const json& j) {
    const auto& vals = detail::field(j, "values");
    if (!vals.is_array() || vals.empty()) throw ParseError("\"values\" must be a nonempty array");
    std::vector<double> values;
    for (const auto& v : vals) {
        if (!v.is_number()) throw ParseError("\"values\" must hold numbers");
        values.push_back(v.get<double>());
    }
    LinearMetricPoset poset = [&] {
        try {
            return LinearMetricPoset(values);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }();
    std::string mode = "auto";
    if (j.contains("time")) {
        mode = j.at("time").get<std::string>();
        if (mode != "index" && mode != "value") throw ParseError("\"time\" must be \"index\" or \"value\"");
    }

    std::vector<std::string> names;
    std::map<std::string, int> id;
    bool fixed = false;
    if (j.contains("vertices")) {
        fixed = true;
        for (const auto& v : j.at("vertices")) {
            const auto name = v.get<std::string>();
            if (!id.emplace(name, static_cast<int>(names.size())).second) throw ParseError("duplicate vertex " + name);
            names.push_back(name);
        }
    }
    std::vector<std::pair<Simplex, int>> simplices;
    for (const auto& e : detail::field(j, "simplices")) {
        const auto& vs = detail::field(e, "verts");
        std::vector<std::string> verts;
        if (vs.is_string())
            verts = detail::split_ws(vs.get<std::string>());
        else if (vs.is_array())
            for (const auto& v : vs) verts.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        else
            throw ParseError("\"verts\" must be an array or a string");
        if (verts.empty()) throw ParseError("empty simplex");
        Simplex s;
        for (const auto& name : verts) {
            auto it = id.find(name);
            if (it == id.end()) {
                if (fixed) throw ParseError("unknown vertex " + name);
                it = id.emplace(name, static_cast<int>(names.size())).first;
                names.push_back(name);
            }
            s.push_back(it->second);
        }
        const auto& t = detail::field(e, "t");
        if (!t.is_number()) throw ParseError("\"t\" must be a number");
        const bool as_index = mode == "index" || (mode == "auto" && t.is_number_integer());
        int idx = 0;
        if (as_index) {
            const double raw = t.get<double>();
            idx = static_cast<int>(raw);
            if (idx != raw || idx < 1 || idx > poset.size())
                throw ParseError("index " + t.dump() + " outside 1.." + std::to_string(poset.size()));
        } else {
            idx = poset.index_of(t.get<double>());
            if (idx == 0) throw ParseError("time " + t.dump() + " is not among \"values\"");
        }
        simplices.emplace_back(std::move(s), idx);
    }
    if (simplices.empty()) throw ParseError("filtration has no simplices");
    try {
        return Filtration::from_simplices(std::move(poset), std::move(names), simplices);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// One simplex per line, whitespace-separated vertex names; '#' starts a comment.
inline std::vector<std::vector<std::string>> read_complex_text(std::istream& in) {
    std::vector<std::vector<std::string>> out;
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto words = detail::split_ws(line);
        if (!words.empty()) out.push_back(std::move(words));
    }
    return out;
}

inline SimplicialComplex complex_from_text(std::istream& in) {
    std::vector<std::string> names;
    std::map<std::string, int> id;
    std::vector<Simplex> simplices;
    for (const auto& words : read_complex_text(in)) {
        Simplex s;
        for (const auto& w : words) {
            auto it = id.emplace(w, static_cast<int>(names.size())).first;
            if (it->second == static_cast<int>(names.size())) names.push_back(w);
            s.push_back(it->second);
        }
        simplices.push_back(std::move(s));
    }
    try {
        return SimplicialComplex(std::move(names), simplices);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// Matrices as CSV with a header row of point names. Rows may carry a
// leading name column.

struct NamedMatrix {
    std::vector<std::string> names;
    Mat m;
};

inline NamedMatrix read_named_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        if (detail::trim(line).empty()) continue;
        rows.push_back(detail::split_csv(line));
    }
    if (rows.empty()) throw ParseError("empty CSV");
    NamedMatrix out;
    out.names = rows.front();
    if (!out.names.empty() && out.names.front().empty()) out.names.erase(out.names.begin());
    const Index n = static_cast<Index>(out.names.size());
    if (static_cast<Index>(rows.size()) - 1 != n)
        throw ParseError("CSV has " + std::to_string(rows.size() - 1) + " data rows for " + std::to_string(n) +
                         " names");
    out.m.resize(n, n);
    for (Index r = 0; r < n; ++r) {
        auto row = rows[static_cast<std::size_t>(r) + 1];
        if (static_cast<Index>(row.size()) == n + 1) row.erase(row.begin());
        if (static_cast<Index>(row.size()) != n) throw ParseError("CSV row " + std::to_string(r + 1) + " has the wrong length");
        for (Index c = 0; c < n; ++c) out.m(r, c) = detail::parse_double(row[static_cast<std::size_t>(c)]);
    }
    return out;
}

inline std::string format_double(double v) { return json(v).dump(); }

inline void write_named_csv(std::ostream& out, const std::vector<std::string>& names, const Mat& m) {
    for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << names[k];
    out << '\n';
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
        out << '\n';
    }
}

// Treegrams, with vertices referred to by name.

inline json to_json(const Treegram& t) {
    json events = json::array();
    for (const auto& e : t.events) {
        json alive = json::array(), blocks = json::array();
        for (int v : e.alive) alive.push_back(t.vertices[v]);
        for (const auto& b : e.blocks) {
            json block = json::array();
            for (int v : b) block.push_back(t.vertices[v]);
            blocks.push_back(std::move(block));
        }
        events.push_back({{"t", e.t}, {"alive", std::move(alive)}, {"blocks", std::move(blocks)}});
    }
    return {{"vertices", t.vertices}, {"events", std::move(events)}};
}

inline Treegram treegram_from_json(const json& j) {
    Treegram t;
    std::map<std::string, int> id;
    for (const auto& v : detail::field(j, "vertices")) {
        const auto name = v.get<std::string>();
        if (!id.emplace(name, static_cast<int>(t.vertices.size())).second) throw ParseError("duplicate vertex " + name);
        t.vertices.push_back(name);
    }
    auto lookup = [&](const json& v) {
        auto it = id.find(v.get<std::string>());
        if (it == id.end()) throw ParseError("unknown vertex " + v.dump());
        return it->second;
    };
    for (const auto& e : detail::field(j, "events")) {
        TreegramEvent ev;
        ev.t = detail::field(e, "t").get<double>();
        for (const auto& v : detail::field(e, "alive")) ev.alive.push_back(lookup(v));
        for (const auto& b : detail::field(e, "blocks")) {
            std::vector<int> block;
            for (const auto& v : b) block.push_back(lookup(v));
            ev.blocks.push_back(std::move(block));
        }
        normalize(ev);
        t.events.push_back(std::move(ev));
    }
    try {
        validate(t);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return t;
}

/// Labels of the q-simplices of K, in ambient coordinate order.
inline std::vector<std::string> chain_labels(const SimplicialComplex& k, int q) {
    std::vector<std::string> out;
    for (const auto& s : k.simplices(q)) out.push_back(k.label(s));
    return out;
}

}  // namespace gpd
