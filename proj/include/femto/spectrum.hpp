#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace femto {

/// Frequencies are integer kilohertz so that band algebra is exact.
using Khz = std::int64_t;

constexpr Khz khz_from_mhz(double mhz) noexcept {
    return static_cast<Khz>(mhz * 1000.0 + (mhz >= 0 ? 0.5 : -0.5));
}
constexpr double mhz_from_khz(Khz khz) noexcept { return static_cast<double>(khz) / 1000.0; }

/// Measure-theoretic interval [lo, hi). Any band with hi <= lo is the empty band.
struct Band {
    Khz lo = 0;
    Khz hi = 0;

    constexpr bool empty() const noexcept { return hi <= lo; }
    constexpr Khz width() const noexcept { return empty() ? 0 : hi - lo; }
    constexpr bool contains(Khz f) const noexcept { return lo <= f && f < hi; }

    friend constexpr bool operator==(const Band& a, const Band& b) noexcept {
        return (a.empty() && b.empty()) || (a.lo == b.lo && a.hi == b.hi);
    }
};

/// Sorted list of pairwise disjoint, non-touching, nonempty bands.
class BandSet {
public:
    BandSet() = default;
    BandSet(Band b);  // NOLINT(google-explicit-constructor)
    BandSet(std::initializer_list<Band> bands);
    explicit BandSet(std::vector<Band> bands);

    const std::vector<Band>& bands() const noexcept { return bands_; }
    bool empty() const noexcept { return bands_.empty(); }
    Khz width() const noexcept;
    bool contains(Khz f) const noexcept;
    /// Smallest band enclosing every member (empty for the empty set).
    Band hull() const noexcept;

    friend bool operator==(const BandSet&, const BandSet&) = default;

private:
    void normalize();
    std::vector<Band> bands_;
};

BandSet intersect(const BandSet& a, const BandSet& b);
BandSet unite(const BandSet& a, const BandSet& b);
/// Members of `a` not in `b`.
BandSet subtract(const BandSet& a, const BandSet& b);
bool overlaps(const BandSet& a, const BandSet& b);
/// True when every frequency of `inner` lies in `outer`.
bool is_subset(const BandSet& inner, const BandSet& outer);

/// Splits `b` into `n` contiguous sub-bands of width(b)/n kHz; the last one
/// absorbs the integer remainder. Throws std::invalid_argument for n == 0 or
/// an empty band.
std::vector<Band> partition_equal(Band b, int n);

std::string to_string(Band b);
std::string to_string(const BandSet& s);
std::ostream& operator<<(std::ostream& os, Band b);
std::ostream& operator<<(std::ostream& os, const BandSet& s);

}  // namespace femto
