#include "mdl/core.hpp"

#include <algorithm>
#include <cmath>

namespace mdl {

namespace {

// Neumaier compensated summation.
class StableSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

} // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw std::invalid_argument("distribution has no atoms");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    StableSum total;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
        const Atom& a = atoms_[j];
        if (a.y != 0 && a.y != 1) {
            throw std::invalid_argument("atom label must be 0 or 1");
        }
        if (a.x < 0) {
            throw std::invalid_argument("atom domain index must be nonnegative");
        }
        if (!(a.p >= 0.0)) {
            throw std::invalid_argument("atom probability must be >= 0");
        }
        if (j > 0 && atoms_[j - 1].x == a.x && atoms_[j - 1].y == a.y) {
            throw std::invalid_argument("duplicate (x, y) atom");
        }
        total.add(a.p);
    }
    if (std::abs(total.value() - 1.0) > kProbTolerance) {
        throw std::invalid_argument("atom probabilities must sum to 1");
    }
    cdf_.resize(atoms_.size());
    double running = 0.0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
        running += atoms_[j].p;
        cdf_[j] = running;
    }
    cdf_.back() = 1.0;
}

MixtureStrategy MixtureStrategy::uniform(int k) {
    MixtureStrategy s;
    s.p.assign(static_cast<std::size_t>(k), 1.0 / k);
    return s;
}

MixtureStrategy MixtureStrategy::point_mass(int k, int i) {
    MixtureStrategy s;
    s.p.assign(static_cast<std::size_t>(k), 0.0);
    s.p.at(i) = 1.0;
    return s;
}

void MixtureStrategy::validate() const {
    if (p.empty()) throw std::invalid_argument("empty strategy");
    StableSum total;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument("strategy entry < 0");
        total.add(v);
    }
    if (std::abs(total.value() - 1.0) > kProbTolerance) {
        throw std::invalid_argument("strategy does not sum to 1");
    }
}

MixtureClassifier::MixtureClassifier(std::vector<MixtureComponent> components) {
    if (components.empty()) {
        throw std::invalid_argument("mixture classifier has no components");
    }
    std::sort(components.begin(), components.end(),
              [](const MixtureComponent& a, const MixtureComponent& b) {
                  return a.hypothesis < b.hypothesis;
              });
    StableSum total;
    for (const MixtureComponent& c : components) {
        if (!(c.weight >= 0.0)) {
            throw std::invalid_argument("mixture weight < 0");
        }
        if (c.hypothesis < 0) {
            throw std::invalid_argument("negative hypothesis index");
        }
        total.add(c.weight);
    }
    if (std::abs(total.value() - 1.0) > kProbTolerance) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
    const double norm = total.value();
    for (const MixtureComponent& c : components) {
        if (!components_.empty() && components_.back().hypothesis == c.hypothesis) {
            components_.back().weight += c.weight / norm;
        } else if (c.weight > 0.0) {
            components_.push_back({c.weight / norm, c.hypothesis});
        }
    }
    if (components_.empty()) {
        // All weights zero is unreachable (sum == 1), but keep the invariant.
        throw std::invalid_argument("mixture classifier has no support");
    }
}

MixtureClassifier MixtureClassifier::point_mass(int hypothesis) {
    return MixtureClassifier({{1.0, hypothesis}});
}

void LossVector::validate() const {
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("loss outside [0,1]");
        }
    }
}

Instance::Instance(int domain_size,
                   std::vector<std::vector<uint8_t>> hypotheses,
                   std::vector<DiscreteDistribution> distributions)
    : domain_size_(domain_size),
      hypotheses_(std::move(hypotheses)),
      distributions_(std::move(distributions)) {
    if (domain_size_ < 1) throw std::invalid_argument("domain_size must be >= 1");
    if (hypotheses_.empty()) throw std::invalid_argument("need at least one hypothesis");
    if (distributions_.empty()) throw std::invalid_argument("need at least one distribution");
    for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
        const auto& row = hypotheses_[h];
        if (static_cast<int>(row.size()) != domain_size_) {
            throw std::invalid_argument("hypothesis row " + std::to_string(h) +
                                        " has wrong length");
        }
        for (uint8_t v : row) {
            if (v != 0 && v != 1) {
                throw std::invalid_argument("hypothesis entries must be 0 or 1");
            }
        }
    }
    // Duplicate behaviors are rejected so |H| is unambiguous.
    std::vector<const std::vector<uint8_t>*> sorted;
    sorted.reserve(hypotheses_.size());
    for (const auto& row : hypotheses_) sorted.push_back(&row);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return *a < *b; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (*sorted[i - 1] == *sorted[i]) {
            throw std::invalid_argument("duplicate hypothesis rows");
        }
    }
    for (const DiscreteDistribution& d : distributions_) {
        for (const Atom& a : d.atoms()) {
            if (a.x >= domain_size_) {
                throw std::invalid_argument("atom domain index out of range");
            }
        }
    }
    loss_table_.assign(hypotheses_.size(),
                       std::vector<double>(distributions_.size(), 0.0));
    for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
        for (std::size_t i = 0; i < distributions_.size(); ++i) {
            StableSum s;
            for (const Atom& a : distributions_[i].atoms()) {
                if (hypotheses_[h][a.x] != a.y) s.add(a.p);
            }
            loss_table_[h][i] = clamp01(s.value());
        }
    }
}

std::vector<double> predict_one_probabilities(const Instance& inst,
                                              const MixtureClassifier& f) {
    std::vector<double> q(static_cast<std::size_t>(inst.domain_size()), 0.0);
    for (const MixtureComponent& c : f.components()) {
        const auto& row = inst.hypothesis(c.hypothesis);
        for (int x = 0; x < inst.domain_size(); ++x) {
            if (row[x]) q[x] += c.weight;
        }
    }
    for (double& v : q) v = std::min(1.0, v);
    return q;
}

double population_loss(const Instance& inst, int dist_index,
                       const MixtureClassifier& f) {
    if (dist_index < 0 || dist_index >= inst.k()) {
        throw std::out_of_range("distribution index out of range");
    }
    for (const MixtureComponent& c : f.components()) {
        if (c.hypothesis >= inst.num_hypotheses()) {
            throw std::out_of_range("hypothesis index out of range");
        }
    }
    const std::vector<double> q = predict_one_probabilities(inst, f);
    StableSum s;
    for (const Atom& a : inst.distribution(dist_index).atoms()) {
        s.add(a.p * (a.y == 1 ? 1.0 - q[a.x] : q[a.x]));
    }
    return clamp01(s.value());
}

DiscreteDistribution mixture_distribution(const Instance& inst,
                                          const MixtureStrategy& p) {
    p.validate();
    if (p.k() != inst.k()) throw std::invalid_argument("strategy length != k");
    // mass[(x,y)] = sum_i p(i) * D_i(x,y)
    std::vector<std::vector<double>> mass(
        static_cast<std::size_t>(inst.domain_size()), std::vector<double>(2, 0.0));
    for (int i = 0; i < inst.k(); ++i) {
        if (p.p[i] == 0.0) continue;
        for (const Atom& a : inst.distribution(i).atoms()) {
            mass[a.x][a.y] += p.p[i] * a.p;
        }
    }
    std::vector<Atom> atoms;
    StableSum total;
    for (int x = 0; x < inst.domain_size(); ++x) {
        for (int y = 0; y < 2; ++y) {
            if (mass[x][y] > 0.0) {
                atoms.push_back({x, y, mass[x][y]});
                total.add(mass[x][y]);
            }
        }
    }
    const double norm = total.value();
    for (Atom& a : atoms) a.p /= norm;
    return DiscreteDistribution(std::move(atoms));
}

double disagreement_mass(const Instance& inst, const MixtureStrategy& p,
                         int h1, int h2) {
    if (h1 < 0 || h1 >= inst.num_hypotheses() || h2 < 0 ||
        h2 >= inst.num_hypotheses()) {
        throw std::out_of_range("hypothesis index out of range");
    }
    p.validate();
    const auto& r1 = inst.hypothesis(h1);
    const auto& r2 = inst.hypothesis(h2);
    StableSum s;
    for (int i = 0; i < inst.k(); ++i) {
        if (p.p[i] == 0.0) continue;
        for (const Atom& a : inst.distribution(i).atoms()) {
            if (r1[a.x] != r2[a.x]) s.add(p.p[i] * a.p);
        }
    }
    return clamp01(s.value());
}

} // namespace mdl
