#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

/// ℓ_1 < ... < ℓ_n with metric |ℓ_i - ℓ_j|. Indices are 1-based.
class LinearMetricPoset {
public:
    LinearMetricPoset() = default;
    explicit LinearMetricPoset(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("poset must have at least one element");
        for (std::size_t k = 1; k < values_.size(); ++k)
            if (!(values_[k - 1] < values_[k])) throw std::invalid_argument("poset values must be strictly increasing");
    }

    int size() const { return static_cast<int>(values_.size()); }
    double value(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
    double distance(int i, int j) const { return std::abs(value(i) - value(j)); }
    const std::vector<double>& values() const { return values_; }

    /// 1-based index of a value, or 0 when absent.
    int index_of(double v) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), v);
        if (it == values_.end() || *it != v) return 0;
        return static_cast<int>(it - values_.begin()) + 1;
    }

    bool operator==(const LinearMetricPoset&) const = default;

private:
    std::vector<double> values_;
};

enum class OrderTag { product, reverse_inclusion };

inline const char* to_string(OrderTag t) { return t == OrderTag::product ? "product" : "reverse_inclusion"; }

/// Segment (ℓ_b, ℓ_d); a death of n+1 stands for ∞.
struct Segment {
    int b = 1;
    int d = 1;

    bool is_diagonal() const { return b == d; }
    bool is_infinite(int n) const { return d == n + 1; }
    auto operator<=>(const Segment&) const = default;

    std::string str(int n) const {
        return "(" + std::to_string(b) + "," + (is_infinite(n) ? std::string("inf") : std::to_string(d)) + ")";
    }
};

inline bool leq_product(const Segment& x, const Segment& y) { return x.b <= y.b && x.d <= y.d; }

/// (b1,d1) ≤⊇ (b2,d2) iff b1 ≤ b2 and d1 ≥ d2; defined off the diagonal.
inline bool leq_reverse_inclusion(const Segment& x, const Segment& y) { return x.b <= y.b && x.d >= y.d; }

inline bool leq(OrderTag t, const Segment& x, const Segment& y) {
    return t == OrderTag::product ? leq_product(x, y) : leq_reverse_inclusion(x, y);
}

inline bool is_valid_segment(const Segment& s, int n, OrderTag t) {
    if (s.b < 1 || s.b > n || s.d < s.b || s.d > n + 1) return false;
    return t == OrderTag::product || !s.is_diagonal();
}

/// Seg(P) (product) or Seg(P) minus the diagonal (reverse inclusion), sorted by (b, d).
inline std::vector<Segment> segments(int n, OrderTag t) {
    std::vector<Segment> out;
    for (int b = 1; b <= n; ++b)
        for (int d = (t == OrderTag::product ? b : b + 1); d <= n + 1; ++d) out.push_back({b, d});
    return out;
}

/// Finite poset given by its order relation.
class FinitePoset {
public:
    FinitePoset() = default;
    explicit FinitePoset(std::vector<std::vector<char>> le) : le_(std::move(le)) {}

    static FinitePoset chain(int n) {
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) le[a][b] = 1;
        return FinitePoset(std::move(le));
    }

    static FinitePoset antichain(int n) {
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int a = 0; a < n; ++a) le[a][a] = 1;
        return FinitePoset(std::move(le));
    }

    static FinitePoset of_segments(const std::vector<Segment>& segs, OrderTag t) {
        const int n = static_cast<int>(segs.size());
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) le[a][b] = leq(t, segs[a], segs[b]) ? 1 : 0;
        return FinitePoset(std::move(le));
    }

    int size() const { return static_cast<int>(le_.size()); }
    bool le(int a, int b) const { return le_[a][b] != 0; }
    bool lt(int a, int b) const { return a != b && le(a, b); }

    /// Elements sorted so that every element follows everything below it.
    std::vector<int> linear_extension() const {
        std::vector<int> below(size(), 0), order(size());
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b) below[a] += le(b, a);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return below[x] < below[y]; });
        return order;
    }

private:
    std::vector<std::vector<char>> le_;
};

/// Map between linear metric posets; image uses 0-based positions.
struct PosetMap {
    LinearMetricPoset from;
    LinearMetricPoset to;
    std::vector<int> image;

    int operator()(int p) const { return image.at(static_cast<std::size_t>(p)); }
};

inline void validate_shape(const PosetMap& f) {
    if (static_cast<int>(f.image.size()) != f.from.size()) throw std::invalid_argument("map size does not match domain");
    for (int q : f.image)
        if (q < 0 || q >= f.to.size()) throw std::invalid_argument("map image out of range");
}

inline bool is_monotone(const PosetMap& f) {
    validate_shape(f);
    for (std::size_t p = 1; p < f.image.size(); ++p)
        if (f.image[p - 1] > f.image[p]) return false;
    return true;
}

/// max over pairs |d_P(p1,p2) - d_Q(f p1, f p2)|.
inline double distortion(const PosetMap& f) {
    if (!is_monotone(f)) throw std::invalid_argument("distortion: map is not monotone");
    double out = 0.0;
    for (int a = 1; a <= f.from.size(); ++a)
        for (int b = a + 1; b <= f.from.size(); ++b)
            out = std::max(out, std::abs(f.from.distance(a, b) - f.to.distance(f(a - 1) + 1, f(b - 1) + 1)));
    return out;
}

struct GaloisConnection {
    PosetMap left;
    PosetMap right;
};

/// left(p) ≤ q ⇔ p ≤ right(q), checked over all pairs.
inline bool check_galois(const GaloisConnection& c) {
    if (!(c.left.from == c.right.to && c.left.to == c.right.from)) return false;
    if (!is_monotone(c.left) || !is_monotone(c.right)) return false;
    for (int p = 0; p < c.left.from.size(); ++p)
        for (int q = 0; q < c.left.to.size(); ++q)
            if ((c.left(p) <= q) != (p <= c.right(q))) return false;
    return true;
}

/// Cost of a morphism: distortion of its left adjoint.
inline double cost(const GaloisConnection& c) {
    if (!check_galois(c)) throw std::invalid_argument("not a Galois connection");
    return distortion(c.left);
}

inline double path_cost(const std::vector<GaloisConnection>& path) {
    double total = 0.0;
    for (const auto& step : path) total += cost(step);
    return total;
}

inline GaloisConnection identity_connection(const LinearMetricPoset& p) {
    PosetMap id{p, p, {}};
    for (int k = 0; k < p.size(); ++k) id.image.push_back(k);
    return {id, id};
}

/// The induced map on segments: (b,d) -> (f b, f d), ∞ -> ∞.
inline Segment segment_image(const PosetMap& f, const Segment& s) {
    const int n1 = f.from.size(), n2 = f.to.size();
    const int b = f(s.b - 1) + 1;
    const int d = s.is_infinite(n1) ? n2 + 1 : f(s.d - 1) + 1;
    return {b, d};
}

/// Position map of the induced segment map between segments(n, product) lists.
inline std::vector<int> segment_index_map(const PosetMap& f) {
    const auto src = segments(f.from.size(), OrderTag::product);
    const auto dst = segments(f.to.size(), OrderTag::product);
    std::vector<int> out;
    for (const auto& s : src) {
        const Segment t = segment_image(f, s);
        out.push_back(static_cast<int>(std::lower_bound(dst.begin(), dst.end(), t) - dst.begin()));
    }
    return out;
}

/// Sum of m over the fibers of f.
template <class T>
std::vector<T> pushforward(const std::vector<int>& f, const std::vector<T>& m, int target_size, T zero = T{}) {
    if (f.size() != m.size()) throw std::invalid_argument("pushforward: domain mismatch");
    std::vector<T> out(static_cast<std::size_t>(target_size), zero);
    for (std::size_t p = 0; p < f.size(); ++p) out.at(static_cast<std::size_t>(f[p])) += m[p];
    return out;
}

/// h ∘ f
template <class T>
std::vector<T> pullback(const std::vector<int>& f, const std::vector<T>& h) {
    std::vector<T> out;
    out.reserve(f.size());
    for (int p : f) out.push_back(h.at(static_cast<std::size_t>(p)));
    return out;
}

}  // namespace gpd
