#pragma once

#include <cstdint>

namespace horncrit {

// Philox4x32-10 counter-based generator. Streams are addressed by
// (seed, stream_id); draws within a stream are addressed by a 64-bit
// counter. Parallel and serial runs over the same ids are identical.
struct Philox4x32 {
    static void block(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                      std::uint32_t out[4]);
};

// Stream of standard normals backed by Philox + Box-Muller.
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    double next();
    // uniform in (0,1)
    double next_uniform();

  private:
    std::uint64_t seed_, stream_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace horncrit
