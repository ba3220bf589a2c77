#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdl {

constexpr double kProbTolerance = 1e-12;

// One weighted labeled point of a finite-support distribution.
struct Atom {
    int x = 0;      // domain index
    int y = 0;      // label, 0 or 1
    double p = 0.0; // probability mass
};

// Finite-support distribution over (domain index, label) pairs. Atoms are
// kept sorted by (x, y); this canonical order is what the inverse-CDF
// sampler walks, so it is part of the reproducibility contract.
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;
    // Validates, sorts canonically and builds the CDF. Throws
    // std::invalid_argument with a descriptive message on bad input.
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<double>& cdf() const { return cdf_; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
};

// Probability vector over the k distributions (the MWU strategy p_t).
struct MixtureStrategy {
    std::vector<double> p;

    static MixtureStrategy uniform(int k);
    static MixtureStrategy point_mass(int k, int i);
    void validate() const; // entries >= 0, sum 1 within tolerance
    int k() const { return static_cast<int>(p.size()); }
};

// Finite-support mixture over hypotheses; Pr[f(x)=1] = sum_j w_j * h_j(x).
struct MixtureComponent {
    double weight = 0.0;
    int hypothesis = 0;
};

class MixtureClassifier {
public:
    MixtureClassifier() = default;
    // Merges duplicate hypothesis indices, sorts by index and renormalizes
    // the (validated) weights so they sum to 1 exactly up to rounding.
    explicit MixtureClassifier(std::vector<MixtureComponent> components);

    static MixtureClassifier point_mass(int hypothesis);

    const std::vector<MixtureComponent>& components() const { return components_; }
    bool is_point_mass() const { return components_.size() == 1; }

private:
    std::vector<MixtureComponent> components_;
};

// Per-distribution losses in [0,1].
struct LossVector {
    std::vector<double> values;
    void validate() const;
};

// A learning problem: finite domain, explicit binary hypothesis class, and
// k finite-support labeled distributions. Immutable after construction.
class Instance {
public:
    Instance(int domain_size,
             std::vector<std::vector<uint8_t>> hypotheses,
             std::vector<DiscreteDistribution> distributions);

    int domain_size() const { return domain_size_; }
    int num_hypotheses() const { return static_cast<int>(hypotheses_.size()); }
    int k() const { return static_cast<int>(distributions_.size()); }

    const std::vector<std::vector<uint8_t>>& hypotheses() const { return hypotheses_; }
    const std::vector<uint8_t>& hypothesis(int h) const { return hypotheses_.at(h); }
    const DiscreteDistribution& distribution(int i) const { return distributions_.at(i); }
    const std::vector<DiscreteDistribution>& distributions() const { return distributions_; }

    // Exact loss of pure hypothesis h on distribution i, precomputed.
    double hypothesis_loss(int h, int i) const { return loss_table_[h][i]; }

private:
    int domain_size_;
    std::vector<std::vector<uint8_t>> hypotheses_;
    std::vector<DiscreteDistribution> distributions_;
    std::vector<std::vector<double>> loss_table_; // [h][i]
};

// Pr[f(x)=1] for every domain point; the per-round hot paths index this
// instead of re-walking the mixture components.
std::vector<double> predict_one_probabilities(const Instance& inst,
                                              const MixtureClassifier& f);

// Exact population loss Pr_{(x,y)~D_i}[f(x) != y], linear in the mixture
// components. Stable (Neumaier) summation; result clamped to [0,1].
double population_loss(const Instance& inst, int dist_index,
                       const MixtureClassifier& f);

// The p-weighted mixture of the instance distributions, materialized.
// Zero-probability atoms are dropped and the result is renormalized.
DiscreteDistribution mixture_distribution(const Instance& inst,
                                          const MixtureStrategy& p);

// Mass of {x : h1(x) != h2(x)} under the p-mixture.
double disagreement_mass(const Instance& inst, const MixtureStrategy& p,
                         int h1, int h2);

} // namespace mdl
