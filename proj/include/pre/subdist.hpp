// subdist.hpp -- finitely supported subprobability distributions
#ifndef PRE_SUBDIST_HPP
#define PRE_SUBDIST_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "pre/rational.hpp"

namespace pre {

/// Finitely supported map T -> (0,1]; zero entries are never stored and
/// the total mass never exceeds one for distributions produced by the
/// operations in this library.
template <class T, class Hash = std::hash<T>, class Eq = std::equal_to<T>>
class SubDist {
public:
    using Map = std::unordered_map<T, Rational, Hash, Eq>;

    SubDist() = default;

    static SubDist dirac(T x) {
        SubDist d;
        d.entries_.emplace(std::move(x), Rational(1));
        return d;
    }

    /// Pointwise p*a + (1-p)*b with zero entries pruned.
    static SubDist convex_combine(const Prob& p, const SubDist& a, const SubDist& b) {
        SubDist out;
        for (const auto& [x, m] : a.entries_) out.add(x, p * m);
        const Rational q = complement(p);
        for (const auto& [x, m] : b.entries_) out.add(x, q * m);
        return out;
    }

    /// Accumulates mass on x; adding zero is a no-op.
    void add(const T& x, const Rational& mass) {
        if (mass == 0) return;
        if (mass < 0) throw std::invalid_argument("negative mass");
        entries_[x] += mass;
    }

    Rational at(const T& x) const {
        auto it = entries_.find(x);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    Rational mass() const {
        Rational total = 0;
        for (const auto& [x, m] : entries_) total += m;
        return total;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const SubDist& other) const { return entries_ == other.entries_; }

private:
    Map entries_;
};

}  // namespace pre

#endif  // PRE_SUBDIST_HPP
