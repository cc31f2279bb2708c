// prob_space.hpp - finite Kolmogorov probability spaces.
//
// A space is an ordered list of opaque atom labels with one weight per atom;
// the event algebra is the full power set. Random variables are real-valued
// maps keyed by atom label. All values are immutable after construction.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kolmo/errors.hpp"

namespace kolmo {

/// Absolute tolerance on the total mass of a probability vector.
inline constexpr double kNormalizationTol = 1e-12;

/// Slack allowed when checking that a variable is valued in [-1, 1].
inline constexpr double kRangeTol = 1e-12;

class ProbabilitySpace;

/// A set of atom labels. Membership is checked against a space on use.
class Event {
public:
    Event() = default;
    explicit Event(std::set<std::string> members) : members_(std::move(members)) {}

    /// The sure event of `space`.
    static Event all(const ProbabilitySpace& space);

    const std::set<std::string>& members() const { return members_; }
    bool contains(std::string_view label) const {
        return members_.find(std::string(label)) != members_.end();
    }

private:
    std::set<std::string> members_;
};

class ProbabilitySpace {
public:
    const std::vector<std::string>& atoms() const { return atoms_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return atoms_.size(); }

    std::optional<std::size_t> index_of(std::string_view label) const;
    double weight(std::string_view label) const;

    /// P(e), summed in atom order. Throws DomainMismatch if `e` names an
    /// unknown atom.
    double probability(const Event& e) const;

private:
    friend ProbabilitySpace make_space(std::vector<std::string>, std::vector<double>);

    ProbabilitySpace(std::vector<std::string> atoms, std::vector<double> weights);

    std::vector<std::string> atoms_;
    std::vector<double> weights_;
    std::unordered_map<std::string, std::size_t> index_;
};

class RandomVariable {
public:
    RandomVariable() = default;
    explicit RandomVariable(std::map<std::string, double> values) : values_(std::move(values)) {}

    /// Values listed in the atom order of `space`.
    static RandomVariable on(const ProbabilitySpace& space, std::span<const double> values);
    static RandomVariable constant(const ProbabilitySpace& space, double value);
    static RandomVariable indicator(const ProbabilitySpace& space, const Event& e);

    const std::map<std::string, double>& values() const { return values_; }
    bool defined_at(std::string_view label) const;

    /// Throws DomainMismatch when the label is outside the domain.
    double at(std::string_view label) const;

    /// Pointwise operations on the common domain.
    RandomVariable operator*(const RandomVariable& other) const;
    RandomVariable operator+(const RandomVariable& other) const;
    RandomVariable scaled(double factor) const;

private:
    std::map<std::string, double> values_;
};

/// Validates and builds a space. Weights whose total is within
/// kNormalizationTol of 1 are divided by their sum; anything further off is
/// rejected with NotNormalized.
ProbabilitySpace make_space(std::vector<std::string> atoms, std::vector<double> weights);

/// Sum over atoms of x(w) p(w).
double expectation(const ProbabilitySpace& space, const RandomVariable& x);

/// <a, b> = E(ab).
double correlation(const ProbabilitySpace& space, const RandomVariable& a, const RandomVariable& b);

/// Bayes conditioning: the space restricted to `c` with weights p(w)/P(c).
/// P(c) must be strictly positive (compared exactly against zero).
ProbabilitySpace condition(const ProbabilitySpace& space, const Event& c);

/// E(x | c), computed on condition(space, c).
double conditional_expectation(const ProbabilitySpace& space, const RandomVariable& x,
                               const Event& c);

/// Randomized mixture of context spaces. Atom w of context j (1-based) is
/// relabelled "j:w" and receives weight q_j p_j(w).
ProbabilitySpace mixture(std::span<const ProbabilitySpace> spaces, std::span<const double> q);

/// Label given to atom `label` of context `context` (1-based) by mixture().
std::string context_label(std::size_t context, std::string_view label);

/// S = <A1,B1> + <A1,B2> + <A2,B1> - <A2,B2>. Every variable must be valued
/// in [-1, 1] on every atom (RangeViolation otherwise).
double chsh_S(const ProbabilitySpace& space, const RandomVariable& a1, const RandomVariable& a2,
              const RandomVariable& b1, const RandomVariable& b2);

}  // namespace kolmo
