#include "mdl/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace mdl {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw SchemaError(name, "missing required field");
    }
    return *it;
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw SchemaError(path, "expected an integer");
    }
    return j.get<int>();
}

int require_bit(const json& j, const std::string& path) {
    int v = require_int(j, path);
    if (v != 0 && v != 1) throw SchemaError(path, "expected 0 or 1");
    return v;
}

const json& require_field_at(const json& j, const char* name,
                             const std::string& parent) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw SchemaError(parent + "." + name, "missing required field");
    }
    return *it;
}

} // namespace

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("", "instance must be a JSON object");
    const int domain_size = require_int(require_field(j, "domain_size"), "domain_size");
    if (domain_size < 1) throw SchemaError("domain_size", "must be >= 1");

    const json& jh = require_field(j, "hypotheses");
    if (!jh.is_array() || jh.empty()) {
        throw SchemaError("hypotheses", "expected a nonempty array");
    }
    std::vector<std::vector<uint8_t>> hypotheses;
    std::set<std::vector<uint8_t>> seen;
    hypotheses.reserve(jh.size());
    for (std::size_t h = 0; h < jh.size(); ++h) {
        const std::string hp = "hypotheses[" + std::to_string(h) + "]";
        const json& row = jh[h];
        if (!row.is_array()) throw SchemaError(hp, "expected an array");
        if (static_cast<int>(row.size()) != domain_size) {
            throw SchemaError(hp, "row length " + std::to_string(row.size()) +
                                      " != domain_size " + std::to_string(domain_size));
        }
        std::vector<uint8_t> bits(row.size());
        for (std::size_t x = 0; x < row.size(); ++x) {
            bits[x] = static_cast<uint8_t>(
                require_bit(row[x], hp + "[" + std::to_string(x) + "]"));
        }
        if (!seen.insert(bits).second) {
            throw SchemaError(hp, "duplicate hypothesis row");
        }
        hypotheses.push_back(std::move(bits));
    }

    const json& jd = require_field(j, "distributions");
    if (!jd.is_array() || jd.empty()) {
        throw SchemaError("distributions", "expected a nonempty array");
    }
    std::vector<DiscreteDistribution> dists;
    dists.reserve(jd.size());
    for (std::size_t i = 0; i < jd.size(); ++i) {
        const std::string dp = "distributions[" + std::to_string(i) + "]";
        const json& jatoms = jd[i];
        if (!jatoms.is_array() || jatoms.empty()) {
            throw SchemaError(dp, "expected a nonempty array of atoms");
        }
        std::vector<Atom> atoms;
        std::set<std::pair<int, int>> pairs;
        double total = 0.0;
        atoms.reserve(jatoms.size());
        for (std::size_t a = 0; a < jatoms.size(); ++a) {
            const std::string ap = dp + "[" + std::to_string(a) + "]";
            const json& ja = jatoms[a];
            if (!ja.is_object()) throw SchemaError(ap, "expected an object");
            Atom atom;
            atom.x = require_int(require_field_at(ja, "x", ap), ap + ".x");
            if (atom.x < 0 || atom.x >= domain_size) {
                throw SchemaError(ap + ".x", "domain index out of range");
            }
            atom.y = require_bit(require_field_at(ja, "y", ap), ap + ".y");
            const json& jprob = require_field_at(ja, "p", ap);
            if (!jprob.is_number()) throw SchemaError(ap + ".p", "expected a number");
            atom.p = jprob.get<double>();
            if (!(atom.p >= 0.0)) throw SchemaError(ap + ".p", "must be >= 0");
            if (!pairs.insert({atom.x, atom.y}).second) {
                throw SchemaError(ap, "duplicate (x, y) atom");
            }
            total += atom.p;
            atoms.push_back(atom);
        }
        if (std::abs(total - 1.0) > kProbTolerance) {
            throw SchemaError(dp, "probabilities sum to " + std::to_string(total) +
                                      ", expected 1");
        }
        dists.emplace_back(std::move(atoms));
    }

    return Instance(domain_size, std::move(hypotheses), std::move(dists));
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("JSON parse error: ") + e.what());
    }
    return instance_from_json(j);
}

nlohmann::json instance_to_json(const Instance& inst) {
    json j;
    j["domain_size"] = inst.domain_size();
    json jh = json::array();
    for (const auto& row : inst.hypotheses()) {
        json r = json::array();
        for (uint8_t v : row) r.push_back(static_cast<int>(v));
        jh.push_back(std::move(r));
    }
    j["hypotheses"] = std::move(jh);
    json jd = json::array();
    for (const DiscreteDistribution& d : inst.distributions()) {
        json atoms = json::array();
        for (const Atom& a : d.atoms()) {
            atoms.push_back({{"x", a.x}, {"y", a.y}, {"p", a.p}});
        }
        jd.push_back(std::move(atoms));
    }
    j["distributions"] = std::move(jd);
    return j;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

} // namespace mdl
