#pragma once
#include <cstdint>
#include <optional>

#include "mdl/core.hpp"

namespace mdl {

// Seeded family of desk-scale instances: random bit-matrix hypotheses,
// random sparse distributions, optionally labeled by a planted hypothesis
// with independent label noise (which bounds the minimax loss by roughly
// the noise rate).
struct GenSpec {
    uint64_t seed = 0;
    int domain_size = 12;
    int num_hypotheses = 32;
    int k = 3;
    int atoms_per_distribution = 8;
    // Labels follow hypothesis 0 flipped with this probability; nullopt
    // labels uniformly at random.
    std::optional<double> planted_noise = 0.15;
};

Instance generate_instance(const GenSpec& spec);

} // namespace mdl
