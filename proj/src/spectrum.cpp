#include "femto/spectrum.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace femto {

BandSet::BandSet(Band b) {
    if (!b.empty()) bands_.push_back(b);
}

BandSet::BandSet(std::initializer_list<Band> bands) : bands_(bands) { normalize(); }

BandSet::BandSet(std::vector<Band> bands) : bands_(std::move(bands)) { normalize(); }

void BandSet::normalize() {
    std::erase_if(bands_, [](const Band& b) { return b.empty(); });
    std::sort(bands_.begin(), bands_.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    std::vector<Band> merged;
    merged.reserve(bands_.size());
    for (const Band& b : bands_) {
        // touching intervals merge too
        if (!merged.empty() && b.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, b.hi);
        } else {
            merged.push_back(b);
        }
    }
    bands_ = std::move(merged);
}

Khz BandSet::width() const noexcept {
    Khz w = 0;
    for (const Band& b : bands_) w += b.width();
    return w;
}

bool BandSet::contains(Khz f) const noexcept {
    return std::any_of(bands_.begin(), bands_.end(), [f](const Band& b) { return b.contains(f); });
}

Band BandSet::hull() const noexcept {
    if (bands_.empty()) return {};
    return {bands_.front().lo, bands_.back().hi};
}

BandSet intersect(const BandSet& a, const BandSet& b) {
    std::vector<Band> out;
    auto ia = a.bands().begin();
    auto ib = b.bands().begin();
    while (ia != a.bands().end() && ib != b.bands().end()) {
        const Khz lo = std::max(ia->lo, ib->lo);
        const Khz hi = std::min(ia->hi, ib->hi);
        if (lo < hi) out.push_back({lo, hi});
        if (ia->hi < ib->hi) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return BandSet(std::move(out));
}

BandSet unite(const BandSet& a, const BandSet& b) {
    std::vector<Band> all = a.bands();
    all.insert(all.end(), b.bands().begin(), b.bands().end());
    return BandSet(std::move(all));
}

BandSet subtract(const BandSet& a, const BandSet& b) {
    std::vector<Band> out;
    auto ib = b.bands().begin();
    for (Band cur : a.bands()) {
        while (ib != b.bands().end() && ib->hi <= cur.lo) ++ib;
        for (auto it = ib; it != b.bands().end() && it->lo < cur.hi; ++it) {
            if (it->lo > cur.lo) out.push_back({cur.lo, it->lo});
            cur.lo = std::max(cur.lo, it->hi);
            if (cur.empty()) break;
        }
        if (!cur.empty()) out.push_back(cur);
    }
    return BandSet(std::move(out));
}

bool overlaps(const BandSet& a, const BandSet& b) {
    auto ia = a.bands().begin();
    auto ib = b.bands().begin();
    while (ia != a.bands().end() && ib != b.bands().end()) {
        if (std::max(ia->lo, ib->lo) < std::min(ia->hi, ib->hi)) return true;
        if (ia->hi < ib->hi) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return false;
}

bool is_subset(const BandSet& inner, const BandSet& outer) { return subtract(inner, outer).empty(); }

std::vector<Band> partition_equal(Band b, int n) {
    if (n <= 0) throw std::invalid_argument("partition_equal: sub-band count must be at least 1");
    if (b.empty()) throw std::invalid_argument("partition_equal: cannot partition an empty band");
    const Khz step = b.width() / n;
    std::vector<Band> parts;
    parts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Khz lo = b.lo + step * i;
        const Khz hi = (i == n - 1) ? b.hi : lo + step;
        parts.push_back({lo, hi});
    }
    return parts;
}

std::string to_string(Band b) {
    std::ostringstream os;
    os << b;
    return os.str();
}

std::string to_string(const BandSet& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, Band b) {
    if (b.empty()) return os << "[]";
    return os << '[' << b.lo << ',' << b.hi << ')';
}

std::ostream& operator<<(std::ostream& os, const BandSet& s) {
    if (s.empty()) return os << "{}";
    os << '{';
    for (std::size_t i = 0; i < s.bands().size(); ++i) {
        if (i) os << ';';
        os << s.bands()[i];
    }
    return os << '}';
}

}  // namespace femto
