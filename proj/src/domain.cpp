#include "fdt/domain.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fdt {

FiniteDomain FiniteDomain::range(std::int64_t lo, std::int64_t hi) {
    FiniteDomain d;
    if (lo <= hi) d.ivs_.push_back({lo, hi});
    return d;
}

FiniteDomain FiniteDomain::singleton(std::int64_t v) { return range(v, v); }

FiniteDomain FiniteDomain::from_intervals(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
    std::vector<Interval> in;
    in.reserve(pairs.size());
    for (auto [lo, hi] : pairs)
        if (lo <= hi) in.push_back({lo, hi});
    std::sort(in.begin(), in.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    FiniteDomain d;
    for (const Interval& iv : in) {
        if (!d.ivs_.empty() && iv.lo <= d.ivs_.back().hi + 1)
            d.ivs_.back().hi = std::max(d.ivs_.back().hi, iv.hi);
        else
            d.ivs_.push_back(iv);
    }
    return d;
}

bool FiniteDomain::contains(std::int64_t v) const {
    for (const Interval& iv : ivs_) {
        if (v < iv.lo) return false;
        if (v <= iv.hi) return true;
    }
    return false;
}

std::int64_t FiniteDomain::min() const {
    assert(!ivs_.empty());
    return ivs_.front().lo;
}

std::int64_t FiniteDomain::max() const {
    assert(!ivs_.empty());
    return ivs_.back().hi;
}

std::int64_t FiniteDomain::size() const {
    std::int64_t n = 0;
    for (const Interval& iv : ivs_) n += iv.hi - iv.lo + 1;
    return n;
}

std::pair<FiniteDomain, bool> FiniteDomain::remove_set(const FiniteDomain& s) const {
    FiniteDomain out;
    std::size_t j = 0;
    for (Interval iv : ivs_) {
        std::int64_t lo = iv.lo;
        while (j < s.ivs_.size() && s.ivs_[j].hi < lo) ++j;
        std::size_t k = j;
        while (k < s.ivs_.size() && s.ivs_[k].lo <= iv.hi) {
            if (s.ivs_[k].lo > lo) out.ivs_.push_back({lo, s.ivs_[k].lo - 1});
            lo = s.ivs_[k].hi + 1;
            if (lo > iv.hi) break;
            ++k;
        }
        if (lo <= iv.hi) out.ivs_.push_back({lo, iv.hi});
    }
    bool changed = !(out == *this);
    return {std::move(out), changed};
}

std::pair<FiniteDomain, bool> FiniteDomain::intersect(const FiniteDomain& s) const {
    FiniteDomain out;
    std::size_t i = 0, j = 0;
    while (i < ivs_.size() && j < s.ivs_.size()) {
        std::int64_t lo = std::max(ivs_[i].lo, s.ivs_[j].lo);
        std::int64_t hi = std::min(ivs_[i].hi, s.ivs_[j].hi);
        if (lo <= hi) out.ivs_.push_back({lo, hi});
        if (ivs_[i].hi < s.ivs_[j].hi)
            ++i;
        else
            ++j;
    }
    bool changed = !(out == *this);
    return {std::move(out), changed};
}

FiniteDomain FiniteDomain::unite(const FiniteDomain& s) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    pairs.reserve(ivs_.size() + s.ivs_.size());
    for (const Interval& iv : ivs_) pairs.emplace_back(iv.lo, iv.hi);
    for (const Interval& iv : s.ivs_) pairs.emplace_back(iv.lo, iv.hi);
    return from_intervals(pairs);
}

bool FiniteDomain::subset_of(const FiniteDomain& s) const {
    return intersect(s).first == *this;
}

bool FiniteDomain::disjoint_with(const FiniteDomain& s) const {
    return intersect(s).first.empty();
}

std::vector<std::int64_t> FiniteDomain::values() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const Interval& iv : ivs_)
        for (std::int64_t v = iv.lo; v <= iv.hi; ++v) out.push_back(v);
    return out;
}

std::string FiniteDomain::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < ivs_.size(); ++i) {
        if (i) os << ',';
        os << '[' << ivs_[i].lo << '|' << ivs_[i].hi << ']';
    }
    os << ']';
    return os.str();
}

} // namespace fdt
