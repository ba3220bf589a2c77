#include "mdl/gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mdl/rng.hpp"

namespace mdl {

Instance generate_instance(const GenSpec& spec) {
    if (spec.domain_size < 1 || spec.domain_size > 62) {
        throw std::invalid_argument("domain_size out of range");
    }
    if (spec.num_hypotheses < 1) {
        throw std::invalid_argument("num_hypotheses must be >= 1");
    }
    if (std::log2(static_cast<double>(spec.num_hypotheses)) >
        static_cast<double>(spec.domain_size)) {
        throw std::invalid_argument("too many distinct hypotheses for the domain");
    }
    if (spec.k < 1) throw std::invalid_argument("k must be >= 1");
    if (spec.atoms_per_distribution < 1 ||
        spec.atoms_per_distribution > 2 * spec.domain_size) {
        throw std::invalid_argument("atoms_per_distribution out of range");
    }
    if (spec.planted_noise &&
        !(*spec.planted_noise >= 0.0 && *spec.planted_noise <= 1.0)) {
        throw std::invalid_argument("planted_noise must be in [0, 1]");
    }

    RngStream rng(spec.seed, 0x67656E); // "gen"

    std::vector<std::vector<uint8_t>> hypotheses;
    std::set<std::vector<uint8_t>> seen;
    hypotheses.reserve(spec.num_hypotheses);
    int attempts = 0;
    while (static_cast<int>(hypotheses.size()) < spec.num_hypotheses) {
        if (++attempts > 1000 * spec.num_hypotheses) {
            throw std::runtime_error("could not generate distinct hypotheses");
        }
        std::vector<uint8_t> row(spec.domain_size);
        for (auto& v : row) v = static_cast<uint8_t>(rng.next_u64() & 1);
        if (seen.insert(row).second) hypotheses.push_back(std::move(row));
    }
    const std::vector<uint8_t> planted = hypotheses.front();

    std::vector<DiscreteDistribution> dists;
    dists.reserve(spec.k);
    for (int i = 0; i < spec.k; ++i) {
        // Distinct domain points via partial Fisher-Yates.
        std::vector<int> points(spec.domain_size);
        for (int x = 0; x < spec.domain_size; ++x) points[x] = x;
        const int n_atoms = std::min(spec.atoms_per_distribution, spec.domain_size);
        for (int j = 0; j < n_atoms; ++j) {
            const int swap =
                j + static_cast<int>(rng.next_below(spec.domain_size - j));
            std::swap(points[j], points[swap]);
        }
        std::vector<Atom> atoms;
        atoms.reserve(n_atoms);
        double total = 0.0;
        for (int j = 0; j < n_atoms; ++j) {
            Atom a;
            a.x = points[j];
            if (spec.planted_noise) {
                const bool flip = rng.next_double() < *spec.planted_noise;
                a.y = planted[a.x] ^ static_cast<uint8_t>(flip);
            } else {
                a.y = static_cast<int>(rng.next_u64() & 1);
            }
            a.p = -std::log(1.0 - rng.next_double()); // Exp(1)
            total += a.p;
            atoms.push_back(a);
        }
        for (Atom& a : atoms) a.p /= total;
        dists.emplace_back(std::move(atoms));
    }
    return Instance(spec.domain_size, std::move(hypotheses), std::move(dists));
}

} // namespace mdl
