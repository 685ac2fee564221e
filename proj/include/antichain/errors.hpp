#pragma once

#include <stdexcept>
#include <string>

namespace antichain {

// Malformed or out-of-contract input (bad JSON, elements outside the ground
// set, non-monotone growth function where monotonicity is required).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A brute-force guard was exceeded (e.g. enumeration over 2^[2n] with 2n > 28).
struct resource_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cycle lemma hypotheses (q != 0, 0 < mu <= (p-q)/(p+q)) are violated.
struct hypothesis_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Interval evaluation could not certify a floor: the value lies within the
// safety margin of an integer.
struct floor_ambiguity_error : std::range_error {
  using std::range_error::range_error;
};

// A float-vs-exact comparison landed inside the relative guard band.
struct guard_band_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace antichain
