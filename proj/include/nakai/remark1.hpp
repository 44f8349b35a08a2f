#pragma once

#include <string>
#include <vector>

#include "nakai/weyl.hpp"

namespace nakai {

// Derivation facts for A = Q[x,y]/(4x^3 + y^2, xy) and E = y d_y + (2/3) x d_x.
struct Remark1Report {
  std::size_t algebra_dimension = 0;
  std::size_t der1_dimension = 0;
  // The five listed first-order derivations lie in Der^1 and span it.
  bool der1_listed_ok = false;
  std::size_t der2_small_dimension = 0;  // der^2 = Der^1 + Der^1 Der^1, as an A-module
  std::size_t der2_dimension = 0;        // Der^2
  // Der^1 plus the four listed second-order generators (one repeated).
  std::size_t listed_generators_dimension = 0;
  std::size_t listed_extras_distinct = 0;
  bool listed_span_matches = false;
  std::string pe;  // 9E^4 - 36E^3 + 41E^2 - 14E in divided powers
  bool identity_first_order = false;   // equals -4(y^2 d_y + (1/3) x^2 d_x)
  bool identity_second_order = false;  // equals -4(y^2 d_y^2 + (1/3) x^2 d_x^2)
  bool pe_in_Der2 = false;
  bool pe_in_der2 = false;
};

Remark1Report run_remark1();
std::string diff_operator_to_string(const DiffOperator& d);

}  // namespace nakai
