#pragma once

#include <stdexcept>

namespace meb {

/// A search would exceed its dimension or node budget.
class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent decision routes disagree.
class Discrepancy : public std::logic_error {
    using std::logic_error::logic_error;
};

/// No second-side permutation makes the equivalence operator bilocal.
class NoBilocalWitness : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace meb
