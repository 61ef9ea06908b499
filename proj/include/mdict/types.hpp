#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdict {

using Key = std::int64_t;
using Weight = std::uint64_t;
using Count = std::uint64_t;
using SetId = std::uint64_t;

// Keys live in [-kKeyBound, kKeyBound]. Within that range every gap fits in
// 62 bits, so a set's total leaf weight (2 * (max - min) + 2) and the sum of
// two such weights during a merge both fit in a Weight.
inline constexpr Key kKeyBound = Key{1} << 60;

enum class ErrorCode {
    UnknownSet,
    SameSet,
    Overflow,
    KeyOutOfRange,
    KeyNotFound,
    KeyOverlap,
};

const char* to_string(ErrorCode code);

class DictionaryError : public std::runtime_error {
public:
    DictionaryError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Tally of primitive structural steps: node visits, allocations,
/// destructions and child-link mutations. Only ever grows.
class WorkCounter {
public:
    void tick(std::uint64_t n = 1) noexcept { steps_ += n; }
    std::uint64_t steps() const noexcept { return steps_; }

private:
    std::uint64_t steps_ = 0;
};

inline bool key_in_range(Key k) noexcept { return k >= -kKeyBound && k <= kKeyBound; }

}  // namespace mdict
