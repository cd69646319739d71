#include "fewbits/sparsebin.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace fewbits {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

[[noreturn]] void throw_exponent_overflow() {
    throw std::overflow_error("bit position overflows 64 bits");
}

u64 checked_exp_add(u64 a, u64 b) {
    u64 s = 0;
    if (__builtin_add_overflow(a, b, &s)) throw_exponent_overflow();
    return s;
}

// Carry chain over (exponent, count) entries sorted ascending with distinct
// exponents: two copies of position e become one copy of e+1, lowest first.
std::vector<u64> resolve_carries(const std::vector<ExponentMultiset::Entry>& entries) {
    std::vector<u64> out;
    out.reserve(entries.size());
    u64 carry = 0;
    u64 cur = 0;
    std::size_t i = 0;
    while (i < entries.size() || carry != 0) {
        u128 count;
        if (carry == 0) {
            cur = entries[i].exponent;
            count = entries[i].multiplicity;
            ++i;
        } else if (i < entries.size() && entries[i].exponent == cur) {
            count = u128(carry) + entries[i].multiplicity;
            ++i;
        } else {
            count = carry;
        }
        if (count & 1) out.push_back(cur);
        carry = static_cast<u64>(count >> 1);
        if (carry != 0 && cur == std::numeric_limits<u64>::max()) throw_exponent_overflow();
        ++cur;
    }
    return out;
}

// Same carry chain for a sorted list of positions with repetitions.
std::vector<u64> resolve_sorted_positions(const std::vector<u64>& sorted) {
    std::vector<ExponentMultiset::Entry> entries;
    entries.reserve(sorted.size());
    for (u64 e : sorted) {
        if (!entries.empty() && entries.back().exponent == e) {
            ++entries.back().multiplicity;
        } else {
            entries.push_back({e, 1});
        }
    }
    return resolve_carries(entries);
}

// Dense fast path for small positions: counting array plus one sweep.
constexpr u64 kDenseLimit = 512;

bool resolve_dense(const std::vector<u64>& positions, u64 max_pos, std::vector<u64>& out) {
    if (max_pos >= kDenseLimit - 64) return false;
    std::array<u64, kDenseLimit> counts{};
    for (u64 e : positions) counts[e]++;
    out.clear();
    u64 carry = 0;
    for (u64 e = 0; e < kDenseLimit; ++e) {
        u64 c = counts[e] + carry;
        if (c & 1) out.push_back(e);
        carry = c >> 1;
        if (e > max_pos && carry == 0) break;
    }
    return true;
}

struct MpzGuard {
    mpz_t z;
    MpzGuard() { mpz_init(z); }
    ~MpzGuard() { mpz_clear(z); }
    MpzGuard(const MpzGuard&) = delete;
    MpzGuard& operator=(const MpzGuard&) = delete;
};

void to_mpz(mpz_t out, const SparseBin& v) {
    mpz_set_ui(out, 0);
    for (u64 e : v.exponents()) mpz_setbit(out, e);
}

std::vector<u64> bits_of_mpz(const mpz_t z) {
    std::vector<u64> exps;
    mp_bitcnt_t pos = mpz_scan1(z, 0);
    while (pos != ~static_cast<mp_bitcnt_t>(0)) {
        exps.push_back(pos);
        pos = mpz_scan1(z, pos + 1);
    }
    return exps;
}

}  // namespace

int popcount_machine(std::uint64_t value) noexcept {
    return std::popcount(value);
}

SparseBin SparseBin::from_exponents(std::vector<std::uint64_t> exponents) {
    std::sort(exponents.begin(), exponents.end());
    if (std::adjacent_find(exponents.begin(), exponents.end()) != exponents.end()) {
        throw std::invalid_argument(
            "duplicate bit position; use ExponentMultiset::normalize for multisets");
    }
    return SparseBin(std::move(exponents));
}

SparseBin SparseBin::from_machine(std::uint64_t value) {
    std::vector<std::uint64_t> exps;
    exps.reserve(static_cast<std::size_t>(std::popcount(value)));
    while (value != 0) {
        const int e = std::countr_zero(value);
        exps.push_back(static_cast<std::uint64_t>(e));
        value &= value - 1;
    }
    return SparseBin(std::move(exps));
}

SparseBin SparseBin::power_of_two(std::uint64_t exponent) {
    return SparseBin({exponent});
}

SparseBin SparseBin::parse_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty decimal string");
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed decimal string: \"" + std::string(text) + "\"");
        }
    }
    MpzGuard z;
    if (mpz_set_str(z.z, std::string(text).c_str(), 10) != 0) {
        throw std::invalid_argument("malformed decimal string: \"" + std::string(text) + "\"");
    }
    return SparseBin(bits_of_mpz(z.z));
}

SparseBin SparseBin::parse_exponent_list(std::string_view text) {
    std::vector<std::uint64_t> exps;
    if (text.empty()) return SparseBin{};
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view tok = text.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start);
        if (tok.empty()) throw std::invalid_argument("malformed exponent list");
        u64 v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw std::invalid_argument("malformed exponent list");
            u64 next = 0;
            if (__builtin_mul_overflow(v, u64{10}, &next) ||
                __builtin_add_overflow(next, u64(c - '0'), &next)) {
                throw_exponent_overflow();
            }
            v = next;
        }
        exps.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return from_exponents(std::move(exps));
}

std::uint64_t SparseBin::top_exponent() const {
    if (exps_.empty()) throw std::invalid_argument("zero has no top bit");
    return exps_.back();
}

std::uint64_t SparseBin::to_machine() const {
    std::uint64_t v = 0;
    for (u64 e : exps_) {
        if (e >= 64) throw std::overflow_error("value exceeds 64 bits");
        v |= (u64{1} << e);
    }
    return v;
}

std::string SparseBin::to_decimal() const {
    MpzGuard z;
    to_mpz(z.z, *this);
    const std::size_t len = mpz_sizeinbase(z.z, 10) + 2;
    std::string buf(len, '\0');
    mpz_get_str(buf.data(), 10, z.z);
    buf.resize(buf.find('\0'));
    return buf;
}

std::string SparseBin::to_exponent_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(exps_[i]);
    }
    return out;
}

std::strong_ordering SparseBin::operator<=>(const SparseBin& other) const noexcept {
    // Numeric order: walk both lists from the highest position down.
    std::size_t i = exps_.size();
    std::size_t j = other.exps_.size();
    while (i > 0 && j > 0) {
        const u64 a = exps_[i - 1];
        const u64 b = other.exps_[j - 1];
        if (a != b) return a <=> b;
        --i;
        --j;
    }
    // Shared high bits exhausted: whoever still has bits is larger.
    return i <=> j;
}

SparseBin add(const SparseBin& x, const SparseBin& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    std::vector<u64> merged;
    merged.reserve(x.exps_.size() + y.exps_.size());
    std::merge(x.exps_.begin(), x.exps_.end(), y.exps_.begin(), y.exps_.end(),
               std::back_inserter(merged));
    return SparseBin(resolve_sorted_positions(merged));
}

SparseBin mul(const SparseBin& x, const SparseBin& y) {
    if (x.is_zero() || y.is_zero()) return SparseBin{};
    std::vector<u64> sums;
    sums.reserve(x.exps_.size() * y.exps_.size());
    u64 max_sum = 0;
    for (u64 ex : x.exps_) {
        for (u64 ey : y.exps_) {
            const u64 s = checked_exp_add(ex, ey);
            max_sum = std::max(max_sum, s);
            sums.push_back(s);
        }
    }
    std::vector<u64> out;
    if (resolve_dense(sums, max_sum, out)) {
        return SparseBin(std::move(out));
    }
    std::sort(sums.begin(), sums.end());
    return SparseBin(resolve_sorted_positions(sums));
}

SparseBin shift(const SparseBin& x, std::uint64_t distance) {
    std::vector<u64> exps;
    exps.reserve(x.exps_.size());
    for (u64 e : x.exps_) exps.push_back(checked_exp_add(e, distance));
    return SparseBin(std::move(exps));
}

std::optional<SparseBin> try_exact_divide(const SparseBin& value, const SparseBin& divisor) {
    if (divisor.is_zero()) throw std::invalid_argument("division by zero");
    MpzGuard num, den, quot;
    to_mpz(num.z, value);
    to_mpz(den.z, divisor);
    if (!mpz_divisible_p(num.z, den.z)) return std::nullopt;
    mpz_divexact(quot.z, num.z, den.z);
    return SparseBin(bits_of_mpz(quot.z));
}

ExponentMultiset ExponentMultiset::from_entries(const std::vector<Entry>& entries) {
    ExponentMultiset ms;
    for (const Entry& e : entries) ms.push(e.exponent, e.multiplicity);
    return ms;
}

ExponentMultiset ExponentMultiset::from_draws(const std::vector<std::uint64_t>& positions) {
    ExponentMultiset ms;
    for (u64 p : positions) ms.push(p);
    return ms;
}

void ExponentMultiset::push(std::uint64_t exponent, std::uint64_t multiplicity) {
    if (multiplicity == 0) throw std::invalid_argument("multiplicity must be positive");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), exponent,
                               [](const Entry& e, u64 v) { return e.exponent < v; });
    if (it != entries_.end() && it->exponent == exponent) {
        u64 merged = 0;
        if (__builtin_add_overflow(it->multiplicity, multiplicity, &merged)) {
            throw std::overflow_error("multiplicity overflows 64 bits");
        }
        it->multiplicity = merged;
    } else {
        entries_.insert(it, Entry{exponent, multiplicity});
    }
}

std::uint64_t ExponentMultiset::cardinality() const {
    u64 total = 0;
    for (const Entry& e : entries_) {
        if (__builtin_add_overflow(total, e.multiplicity, &total)) {
            throw std::overflow_error("cardinality overflows 64 bits");
        }
    }
    return total;
}

std::uint64_t ExponentMultiset::min_exponent() const {
    if (entries_.empty()) throw std::invalid_argument("empty multiset");
    return entries_.front().exponent;
}

std::uint64_t ExponentMultiset::max_exponent() const {
    if (entries_.empty()) throw std::invalid_argument("empty multiset");
    return entries_.back().exponent;
}

SparseBin ExponentMultiset::normalize() const {
    return SparseBin(resolve_carries(entries_));
}

}  // namespace fewbits
