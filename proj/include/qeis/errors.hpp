#pragma once

#include <stdexcept>
#include <string>

namespace qeis {

// Exact result would leave the half-integral quaternion lattice (or a
// sublattice the caller demanded, e.g. O or Her_2^tau).
struct lattice_error : std::domain_error {
    explicit lattice_error(const std::string& what) : std::domain_error(what) {}
};

// Requested computation is outside the desk-scale feasibility envelope
// (Bernoulli index too large, weight ladder too deep, ...).
struct infeasible_error : std::domain_error {
    explicit infeasible_error(const std::string& what) : std::domain_error(what) {}
};

// A quantity that the library guarantees to be integral (or otherwise
// structurally constrained) came out wrong. Signals a falsified invariant,
// not a user error.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// Working precision was exhausted before the requested quantity could be
// resolved (e.g. the valuation of a difference that is zero to precision).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qeis
