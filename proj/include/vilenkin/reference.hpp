#pragma once

#include "vilenkin/rational.hpp"
#include "vilenkin/scalar.hpp"
#include "vilenkin/signal.hpp"

#include <string>
#include <vector>

// Published values for the four p = 2 test signals
//   f1 = 1[0, 1/4),  g1 = 1[3/4, 1),  f2 = 1[0, 3/8),  g2 = 1[3/4, 9/8)
// and for f1 = 1[0, 1/4) over p = 2^k.

namespace vilenkin::reference {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass;
};

struct NamedSignal {
  std::string name;
  Rational lo;
  Rational hi;
};

/// f1, g1, f2, g2.
std::vector<NamedSignal> example_signals();

/// Closed forms for f1 at p = 2^k.
Rational closed_form_time(int k);
Rational closed_form_freq(int k);

/// Every tabulated value, recomputed. With corrupt = true one expected value is
/// deliberately altered so the harness can be seen to fail.
std::vector<Check> run_checks(bool corrupt = false);

}  // namespace vilenkin::reference
