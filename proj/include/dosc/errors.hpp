#pragma once

#include <stdexcept>

namespace dosc {

/// Invalid quantum numbers or arguments outside a function's domain.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Spherical-harmonic order outside the stretched pair {l, l-1}.
struct unsupported_order_error : domain_error {
  using domain_error::domain_error;
};

/// A partial-wave expansion or basis could not hold the requested state.
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation called on a state it does not accept (wrong representation,
/// non-initial state, wrong spin polarization).
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dosc
