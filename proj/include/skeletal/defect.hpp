#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "skeletal/hypergraph.hpp"
#include "skeletal/rational.hpp"

namespace skeletal {

// Extended non-negative exact rational: a finite value or Infinite, with
// Infinite absorbing under + and *. Finite nonzero values of omega_theta
// always exceed 1 (theta/x > 1 for 0 < x < theta).
class Defect {
public:
    Defect() : infinite_(false), value_(0) {}
    explicit Defect(Rational v) : infinite_(false), value_(std::move(v))
    {
        if (value_ < 0)
            throw ArgumentError("defect: negative value");
    }

    static Defect infinity()
    {
        Defect d;
        d.infinite_ = true;
        return d;
    }

    static Defect zero() { return Defect(); }

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && value_ == 0; }

    const Rational& value() const
    {
        if (infinite_)
            throw ArgumentError("defect: infinite value has no rational form");
        return value_;
    }

    Defect pow(unsigned t) const
    {
        if (t == 0)
            return Defect(Rational(1));
        if (infinite_)
            return infinity();
        return Defect(rat_pow(value_, t));
    }

    Defect operator+(const Defect& o) const
    {
        if (infinite_ || o.infinite_)
            return infinity();
        return Defect(value_ + o.value_);
    }

    Defect& operator+=(const Defect& o)
    {
        *this = *this + o;
        return *this;
    }

    Defect operator*(const Defect& o) const
    {
        if (infinite_ || o.infinite_)
            return infinity();
        return Defect(value_ * o.value_);
    }

    // division by a positive finite quantity (for averages)
    Defect divided_by(const Rational& q) const
    {
        if (q <= 0)
            throw ArgumentError("defect: division by non-positive value");
        if (infinite_)
            return infinity();
        return Defect(value_ / q);
    }

    bool operator==(const Defect& o) const
    {
        if (infinite_ != o.infinite_)
            return false;
        return infinite_ || value_ == o.value_;
    }
    bool operator!=(const Defect& o) const { return !(*this == o); }
    bool operator<(const Defect& o) const
    {
        if (infinite_)
            return false;
        if (o.infinite_)
            return true;
        return value_ < o.value_;
    }
    bool operator<=(const Defect& o) const { return *this < o || *this == o; }
    bool operator>(const Defect& o) const { return o < *this; }
    bool operator>=(const Defect& o) const { return o <= *this; }

    std::string str() const { return infinite_ ? "inf" : rational_to_string(value_); }

    double to_double() const
    {
        if (infinite_)
            return std::numeric_limits<double>::infinity();
        return value_.convert_to<double>();
    }

private:
    bool infinite_;
    Rational value_;
};

// omega_theta(x): +inf at x = 0, theta/x on (0, theta), 0 from theta on.
inline Defect omega_theta(long long x, const Rational& theta)
{
    if (theta <= 0)
        throw ArgumentError("omega_theta: theta must be positive");
    if (x < 0)
        throw ArgumentError("omega_theta: negative argument");
    if (x == 0)
        return Defect::infinity();
    if (Rational(x) < theta)
        return Defect(theta / Rational(x));
    return Defect::zero();
}

namespace detail {

// |N(PE_Q(G); G) cap Vi| computed against a prebuilt E*(G) index. Members of
// PE_Q of full size k admit no extension, so any such member forces an
// empty neighborhood, and an edgeless host extends nothing at all.
inline long long common_neighborhood_size_in(const Hypergraph& g, const PartialEdgeSet& pe,
                                             const VertexSet& q, const std::vector<int>& vi)
{
    if (g.edge_count() == 0)
        return 0;
    std::vector<int> qs(q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    auto family = pe_restricted_members(pe, qs, g.uniformity());
    for (const auto& s : family)
        if (static_cast<int>(s.size()) == g.uniformity())
            return 0;
    return static_cast<long long>(common_extensions(g, pe, family, vi).size());
}

} // namespace detail

// omega_theta(Q, V_i; G): defect of the common neighborhood of Q inside a
// part. The part is given by index into G's layout.
inline Defect set_defect(const Hypergraph& g, const VertexSet& q, int part, const Rational& theta)
{
    if (!g.layout())
        throw LayoutError("set_defect: hypergraph has no layout");
    for (int v : q)
        if (g.layout()->part_of(v) == part)
            throw ArgumentError("set_defect: Q intersects the target part");
    PartialEdgeSet pe = PartialEdgeSet::of(g);
    long long x = detail::common_neighborhood_size_in(g, pe, q, g.layout()->part(part));
    return omega_theta(x, theta);
}

// set-based overload for callers working with explicit vertex sets
inline Defect set_defect_in(const Hypergraph& g, const PartialEdgeSet& pe, const VertexSet& q,
                            const std::vector<int>& vi, const Rational& theta)
{
    long long x = detail::common_neighborhood_size_in(g, pe, q, vi);
    return omega_theta(x, theta);
}

// mu_{theta,t}: (1/|Qs|) * sum over the family of omega^t, Infinite
// absorbing.
inline Defect average_defect(const Hypergraph& g, const std::vector<VertexSet>& qs, int part,
                             const Rational& theta, unsigned t)
{
    if (qs.empty())
        throw ArgumentError("average_defect: empty tuple family");
    if (!g.layout())
        throw LayoutError("average_defect: hypergraph has no layout");
    PartialEdgeSet pe = PartialEdgeSet::of(g);
    const auto& vi = g.layout()->part(part);
    Defect sum = Defect::zero();
    for (const auto& q : qs) {
        sum += set_defect_in(g, pe, q, vi, theta).pow(t);
        if (sum.is_infinite())
            break;
    }
    return sum.divided_by(Rational(static_cast<long long>(qs.size())));
}

// Every tuple's neighborhood meets the lower bound implied by the average
// defect: |N| >= theta / (|Q| mu)^{1/t} when mu is finite positive, |N| >=
// theta when mu = 0, trivially true when mu is Infinite. Exact arithmetic
// via |N|^t * |Q| * mu >= theta^t.
inline bool defect_lower_bound_check(const Hypergraph& g, const std::vector<VertexSet>& qs, int part,
                                     const Rational& theta, unsigned t)
{
    if (qs.empty())
        throw ArgumentError("defect_lower_bound_check: empty tuple family");
    if (!g.layout())
        throw LayoutError("defect_lower_bound_check: hypergraph has no layout");
    PartialEdgeSet pe = PartialEdgeSet::of(g);
    const auto& vi = g.layout()->part(part);
    Defect mu = average_defect(g, qs, part, theta, t);
    if (mu.is_infinite())
        return true;
    for (const auto& q : qs) {
        long long x = detail::common_neighborhood_size_in(g, pe, q, vi);
        if (mu.is_zero()) {
            if (Rational(x) < theta)
                return false;
        } else {
            Rational lhs = rat_pow(Rational(x), t) * Rational(static_cast<long long>(qs.size())) * mu.value();
            if (lhs < rat_pow(theta, t))
                return false;
        }
    }
    return true;
}

// Exact sum of omega_theta(Q, V_i; G)^t over all d-tuples Q in (V_{-i})^d
// (tuples, so coordinates may repeat). Enumeration is capped.
inline Defect defect_moment_sum(const Hypergraph& g, int part, int d, const Rational& theta,
                                unsigned t, std::uint64_t cap = 2'000'000)
{
    if (!g.layout())
        throw LayoutError("defect_moment_sum: hypergraph has no layout");
    if (d < 1)
        throw ArgumentError("defect_moment_sum: d must be >= 1");
    std::vector<int> pool = g.layout()->co_part(part);
    const auto& vi = g.layout()->part(part);
    const std::size_t m = pool.size();
    double total = std::pow(static_cast<double>(m), d);
    if (total > static_cast<double>(cap))
        throw BudgetExceeded("defect_moment_sum: |V_-i|^d exceeds the enumeration cap");
    if (m == 0)
        return Defect::zero();
    PartialEdgeSet pe = PartialEdgeSet::of(g);

    // memoize per support set; many tuples share coordinates
    std::unordered_map<std::vector<int>, Defect, VecHash> memo;
    Defect sum = Defect::zero();
    std::vector<std::size_t> odo(static_cast<std::size_t>(d), 0);
    std::vector<int> q;
    while (true) {
        q.clear();
        for (std::size_t i = 0; i < odo.size(); ++i)
            q.push_back(pool[odo[i]]);
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        auto it = memo.find(q);
        if (it == memo.end()) {
            Defect w = set_defect_in(g, pe, q, vi, theta).pow(t);
            it = memo.emplace(q, w).first;
        }
        sum += it->second;
        if (sum.is_infinite())
            return sum;
        std::size_t i = 0;
        while (i < odo.size() && ++odo[i] == m) {
            odo[i] = 0;
            ++i;
        }
        if (i == odo.size())
            break;
    }
    return sum;
}

} // namespace skeletal
