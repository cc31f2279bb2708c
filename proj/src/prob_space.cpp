#include "kolmo/prob_space.hpp"

#include <cmath>
#include <sstream>

namespace kolmo {

namespace {

std::string describe_sum(double sum) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum;
    return os.str();
}

void require_probability_vector(std::span<const double> q, const char* what) {
    double sum = 0.0;
    for (double w : q) {
        if (!(w >= 0.0)) throw NegativeWeight(std::string(what) + " has a negative or NaN entry");
        sum += w;
    }
    if (!(std::abs(sum - 1.0) <= kNormalizationTol))
        throw NotNormalized(std::string(what) + ": " + describe_sum(sum));
}

}  // namespace

Event Event::all(const ProbabilitySpace& space) {
    return Event(std::set<std::string>(space.atoms().begin(), space.atoms().end()));
}

ProbabilitySpace::ProbabilitySpace(std::vector<std::string> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    index_.reserve(atoms_.size());
    for (std::size_t k = 0; k < atoms_.size(); ++k) index_.emplace(atoms_[k], k);
}

std::optional<std::size_t> ProbabilitySpace::index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double ProbabilitySpace::weight(std::string_view label) const {
    auto k = index_of(label);
    if (!k) throw DomainMismatch("atom '" + std::string(label) + "' is not in the space");
    return weights_[*k];
}

double ProbabilitySpace::probability(const Event& e) const {
    for (const auto& m : e.members())
        if (!index_of(m)) throw DomainMismatch("event member '" + m + "' is not an atom of the space");
    double p = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k)
        if (e.contains(atoms_[k])) p += weights_[k];
    return p;
}

ProbabilitySpace make_space(std::vector<std::string> atoms, std::vector<double> weights) {
    if (atoms.empty()) throw LengthMismatch("a space needs at least one atom");
    if (atoms.size() != weights.size())
        throw LengthMismatch(std::to_string(atoms.size()) + " atoms but " +
                             std::to_string(weights.size()) + " weights");
    std::set<std::string> seen;
    for (const auto& a : atoms)
        if (!seen.insert(a).second) throw DuplicateAtom("'" + a + "'");

    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw NegativeWeight("weight " + std::to_string(w));
        sum += w;
    }
    if (!(std::abs(sum - 1.0) <= kNormalizationTol)) throw NotNormalized(describe_sum(sum));
    if (sum != 1.0)
        for (double& w : weights) w /= sum;
    return ProbabilitySpace(std::move(atoms), std::move(weights));
}

RandomVariable RandomVariable::on(const ProbabilitySpace& space, std::span<const double> values) {
    if (values.size() != space.size())
        throw LengthMismatch(std::to_string(values.size()) + " values for " +
                             std::to_string(space.size()) + " atoms");
    std::map<std::string, double> m;
    for (std::size_t k = 0; k < values.size(); ++k) m.emplace(space.atoms()[k], values[k]);
    return RandomVariable(std::move(m));
}

RandomVariable RandomVariable::constant(const ProbabilitySpace& space, double value) {
    std::map<std::string, double> m;
    for (const auto& a : space.atoms()) m.emplace(a, value);
    return RandomVariable(std::move(m));
}

RandomVariable RandomVariable::indicator(const ProbabilitySpace& space, const Event& e) {
    std::map<std::string, double> m;
    for (const auto& a : space.atoms()) m.emplace(a, e.contains(a) ? 1.0 : 0.0);
    return RandomVariable(std::move(m));
}

bool RandomVariable::defined_at(std::string_view label) const {
    return values_.find(std::string(label)) != values_.end();
}

double RandomVariable::at(std::string_view label) const {
    auto it = values_.find(std::string(label));
    if (it == values_.end())
        throw DomainMismatch("random variable is undefined at atom '" + std::string(label) + "'");
    return it->second;
}

RandomVariable RandomVariable::operator*(const RandomVariable& other) const {
    std::map<std::string, double> m;
    for (const auto& [label, v] : values_) {
        auto it = other.values_.find(label);
        if (it != other.values_.end()) m.emplace(label, v * it->second);
    }
    return RandomVariable(std::move(m));
}

RandomVariable RandomVariable::operator+(const RandomVariable& other) const {
    std::map<std::string, double> m;
    for (const auto& [label, v] : values_) {
        auto it = other.values_.find(label);
        if (it != other.values_.end()) m.emplace(label, v + it->second);
    }
    return RandomVariable(std::move(m));
}

RandomVariable RandomVariable::scaled(double factor) const {
    std::map<std::string, double> m;
    for (const auto& [label, v] : values_) m.emplace(label, factor * v);
    return RandomVariable(std::move(m));
}

double expectation(const ProbabilitySpace& space, const RandomVariable& x) {
    double e = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) e += x.at(space.atoms()[k]) * space.weights()[k];
    return e;
}

double correlation(const ProbabilitySpace& space, const RandomVariable& a, const RandomVariable& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) {
        const auto& label = space.atoms()[k];
        e += a.at(label) * b.at(label) * space.weights()[k];
    }
    return e;
}

ProbabilitySpace condition(const ProbabilitySpace& space, const Event& c) {
    const double pc = space.probability(c);
    if (pc == 0.0) throw ZeroProbabilityCondition("conditioning event has probability 0");

    std::vector<std::string> atoms;
    std::vector<double> weights;
    for (std::size_t k = 0; k < space.size(); ++k) {
        if (!c.contains(space.atoms()[k])) continue;
        atoms.push_back(space.atoms()[k]);
        weights.push_back(space.weights()[k] / pc);
    }
    return make_space(std::move(atoms), std::move(weights));
}

double conditional_expectation(const ProbabilitySpace& space, const RandomVariable& x,
                               const Event& c) {
    return expectation(condition(space, c), x);
}

std::string context_label(std::size_t context, std::string_view label) {
    return std::to_string(context) + ":" + std::string(label);
}

ProbabilitySpace mixture(std::span<const ProbabilitySpace> spaces, std::span<const double> q) {
    if (spaces.empty()) throw LengthMismatch("mixture of zero spaces");
    if (spaces.size() != q.size())
        throw LengthMismatch(std::to_string(spaces.size()) + " spaces but " +
                             std::to_string(q.size()) + " mixing weights");
    require_probability_vector(q, "mixing weights");

    std::vector<std::string> atoms;
    std::vector<double> weights;
    for (std::size_t j = 0; j < spaces.size(); ++j) {
        for (std::size_t k = 0; k < spaces[j].size(); ++k) {
            atoms.push_back(context_label(j + 1, spaces[j].atoms()[k]));
            weights.push_back(q[j] * spaces[j].weights()[k]);
        }
    }
    return make_space(std::move(atoms), std::move(weights));
}

double chsh_S(const ProbabilitySpace& space, const RandomVariable& a1, const RandomVariable& a2,
              const RandomVariable& b1, const RandomVariable& b2) {
    const RandomVariable* vars[] = {&a1, &a2, &b1, &b2};
    const char* names[] = {"A1", "A2", "B1", "B2"};
    for (int v = 0; v < 4; ++v) {
        for (const auto& label : space.atoms()) {
            const double x = vars[v]->at(label);
            if (!(std::abs(x) <= 1.0 + kRangeTol))
                throw RangeViolation(std::string(names[v]) + "(" + label + ") = " + std::to_string(x) +
                                     " lies outside [-1, 1]");
        }
    }
    return correlation(space, a1, b1) + correlation(space, a1, b2) + correlation(space, a2, b1) -
           correlation(space, a2, b2);
}

}  // namespace kolmo
