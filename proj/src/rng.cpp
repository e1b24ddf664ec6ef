#include "rsl/rng.hpp"

#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0)
        throw BoundsError("uniform_index: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

}  // namespace rsl
