#include "pdolab/experiments.hpp"

namespace pdolab {

std::mt19937_64 case_stream(std::uint64_t seed, std::uint64_t case_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(case_id), static_cast<std::uint32_t>(case_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace pdolab
