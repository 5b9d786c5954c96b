#pragma once

#include "gpd/poset.hpp"
#include "gpd/subspace.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace gpd {

/// Map from segments to subspaces of a common ambient space. Only nonzero
/// entries are stored; an absent segment means {0}.
class SegmentDiagram {
public:
    SegmentDiagram() = default;
    SegmentDiagram(LinearMetricPoset poset, OrderTag order, Index ambient, double tol = kDefaultTol)
        : poset_(std::move(poset)), order_(order), ambient_(ambient), tol_(tol) {}

    const LinearMetricPoset& poset() const { return poset_; }
    int n() const { return poset_.size(); }
    OrderTag order() const { return order_; }
    Index ambient() const { return ambient_; }
    double tol() const { return tol_; }
    const std::map<Segment, Subspace>& entries() const { return entries_; }
    std::vector<Segment> domain() const { return segments(n(), order_); }

    Segment inf(int b) const { return {b, n() + 1}; }

    Subspace at(const Segment& s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? Subspace::zero(ambient_, tol_) : it->second;
    }

    Index dim(const Segment& s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? 0 : it->second.rank();
    }

    void set(const Segment& s, Subspace v) {
        if (!is_valid_segment(s, n(), order_)) throw std::invalid_argument("segment " + s.str(n()) + " outside domain");
        if (v.ambient() != ambient_) throw std::invalid_argument("entry ambient dimension mismatch");
        if (v.is_zero())
            entries_.erase(s);
        else
            entries_[s] = std::move(v);
    }

    std::vector<Subspace> family() const {
        std::vector<Subspace> out;
        for (const auto& [s, v] : entries_) out.push_back(v);
        return out;
    }

private:
    LinearMetricPoset poset_;
    OrderTag order_ = OrderTag::product;
    Index ambient_ = 0;
    double tol_ = kDefaultTol;
    std::map<Segment, Subspace> entries_;
};

/// Integer-valued segment function; absent means 0.
using SegmentFunction = std::map<Segment, long long>;

inline long long value_at(const SegmentFunction& m, const Segment& s) {
    auto it = m.find(s);
    return it == m.end() ? 0 : it->second;
}

inline SegmentFunction dims(const SegmentDiagram& d) {
    SegmentFunction out;
    for (const auto& [s, v] : d.entries()) out[s] = v.rank();
    return out;
}

/// Pushforward along the segment map induced by f (product order).
inline SegmentDiagram pushforward(const PosetMap& f, const SegmentDiagram& m) {
    if (!(m.poset() == f.from)) throw std::invalid_argument("pushforward: domain mismatch");
    if (!is_monotone(f)) throw std::invalid_argument("pushforward: map is not monotone");
    SegmentDiagram out(f.to, OrderTag::product, m.ambient(), m.tol());
    for (const auto& [s, v] : m.entries()) {
        const Segment t = segment_image(f, s);
        out.set(t, sum(out.at(t), v));
    }
    return out;
}

inline SegmentFunction pushforward(const PosetMap& f, const SegmentFunction& m) {
    SegmentFunction out;
    for (const auto& [s, v] : m) {
        if (!is_valid_segment(s, f.from.size(), OrderTag::product))
            throw std::invalid_argument("pushforward: domain mismatch");
        out[segment_image(f, s)] += v;
    }
    return out;
}

/// h ∘ ḡ where g maps into the poset of h.
inline SegmentDiagram pullback(const PosetMap& g, const SegmentDiagram& h) {
    if (!(h.poset() == g.to)) throw std::invalid_argument("pullback: domain mismatch");
    if (!is_monotone(g)) throw std::invalid_argument("pullback: map is not monotone");
    SegmentDiagram out(g.from, OrderTag::product, h.ambient(), h.tol());
    for (const auto& s : segments(g.from.size(), OrderTag::product)) out.set(s, h.at(segment_image(g, s)));
    return out;
}

inline SegmentFunction pullback(const PosetMap& g, const SegmentFunction& h) {
    SegmentFunction out;
    for (const auto& s : segments(g.from.size(), OrderTag::product)) {
        const long long v = value_at(h, segment_image(g, s));
        if (v != 0) out[s] = v;
    }
    return out;
}

}  // namespace gpd
