#ifndef BH_GEN_HPP
#define BH_GEN_HPP

#include <cstdint>

#include "bh/instance.hpp"

namespace bh {

// Rejection-sampled random instance: nf random faults, a random linear
// forest of nl edges in BH_n - F, and a random compatible even/odd pair.
// Deterministic per seed. Throws after a bounded retry count when the
// requested split is degenerate.
Instance gen_instance(int n, int nf, int nl, std::uint64_t seed);

} // namespace bh

#endif
