#pragma once

#include <cstdint>

namespace twl {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

// Upper bound for range endpoints and single-word moduli. Keeping moduli
// below 2^62 leaves headroom for the Montgomery reduction in machine words.
inline constexpr u64 kCapacity = u64{1} << 62;

}  // namespace twl
