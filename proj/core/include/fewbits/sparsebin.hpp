#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fewbits {

/// s(n) for machine-width n: the number of ones in the binary expansion.
int popcount_machine(std::uint64_t value) noexcept;

class ExponentMultiset;

/// An exact nonnegative integer stored as the strictly increasing list of its
/// nonzero bit positions: the value is sum(2^e for e in exponents()).
///
/// The empty list denotes 0. The integer is odd exactly when position 0 is
/// set. Exponents are 64-bit, so values far beyond machine width stay exact
/// as long as they have few nonzero digits.
class SparseBin {
public:
    SparseBin() = default;

    /// Build from a list of distinct bit positions (any order).
    /// Throws std::invalid_argument on duplicates; a repeated position is a
    /// multiset, use ExponentMultiset::normalize for those.
    static SparseBin from_exponents(std::vector<std::uint64_t> exponents);

    static SparseBin from_machine(std::uint64_t value);
    static SparseBin power_of_two(std::uint64_t exponent);

    /// Parse a base-10 integer string.
    static SparseBin parse_decimal(std::string_view text);
    /// Parse the "0,2,3" encoding; the empty string is 0.
    static SparseBin parse_exponent_list(std::string_view text);

    const std::vector<std::uint64_t>& exponents() const noexcept { return exps_; }
    bool is_zero() const noexcept { return exps_.empty(); }
    bool is_odd() const noexcept { return !exps_.empty() && exps_.front() == 0; }
    std::size_t popcount() const noexcept { return exps_.size(); }

    /// Position of the highest set bit. Throws std::invalid_argument on 0.
    std::uint64_t top_exponent() const;

    /// Throws std::overflow_error when the value does not fit in 64 bits.
    std::uint64_t to_machine() const;

    std::string to_decimal() const;
    /// Comma-separated ascending positions, "" for 0.
    std::string to_exponent_string() const;

    friend bool operator==(const SparseBin&, const SparseBin&) = default;
    /// Numeric order.
    std::strong_ordering operator<=>(const SparseBin& other) const noexcept;

private:
    explicit SparseBin(std::vector<std::uint64_t>&& sorted) : exps_(std::move(sorted)) {}

    friend class ExponentMultiset;
    friend SparseBin add(const SparseBin&, const SparseBin&);
    friend SparseBin mul(const SparseBin&, const SparseBin&);
    friend SparseBin shift(const SparseBin&, std::uint64_t);
    friend std::optional<SparseBin> try_exact_divide(const SparseBin&, const SparseBin&);

    std::vector<std::uint64_t> exps_;  // strictly increasing
};

/// Exact sum; carries are resolved on the merged position multiset.
SparseBin add(const SparseBin& x, const SparseBin& y);

/// Exact product: all pairwise position sums are formed and the resulting
/// multiset is carry-resolved. No width limit applies.
SparseBin mul(const SparseBin& x, const SparseBin& y);

/// Multiply by 2^distance (adds distance to every position).
SparseBin shift(const SparseBin& x, std::uint64_t distance);

/// value / divisor when the division is exact, std::nullopt otherwise.
/// Throws std::invalid_argument on a zero divisor.
std::optional<SparseBin> try_exact_divide(const SparseBin& value, const SparseBin& divisor);

/// An unnormalized multiset of bit positions: the value
/// sum(multiplicity * 2^exponent) with repetitions allowed.
///
/// This is the raw object that carry resolution acts on; normalize() runs
/// the carry chain from the lowest position upward, replacing two copies of
/// position e by one copy of e+1 until all multiplicities are one.
class ExponentMultiset {
public:
    struct Entry {
        std::uint64_t exponent;
        std::uint64_t multiplicity;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    ExponentMultiset() = default;

    /// Entries may repeat exponents; multiplicities merge. Zero
    /// multiplicities are rejected.
    static ExponentMultiset from_entries(const std::vector<Entry>& entries);
    /// One multiset element per listed position, repetitions allowed.
    static ExponentMultiset from_draws(const std::vector<std::uint64_t>& positions);

    void push(std::uint64_t exponent, std::uint64_t multiplicity = 1);

    bool empty() const noexcept { return entries_.empty(); }
    /// Number of distinct exponents.
    std::size_t distinct_size() const noexcept { return entries_.size(); }
    /// Total element count, multiplicities included.
    std::uint64_t cardinality() const;
    std::uint64_t min_exponent() const;
    std::uint64_t max_exponent() const;
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// Carry-resolve into a canonical SparseBin of the same value.
    SparseBin normalize() const;

private:
    std::vector<Entry> entries_;  // sorted by exponent, exponents distinct
};

}  // namespace fewbits
