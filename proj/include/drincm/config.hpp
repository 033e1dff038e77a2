#pragma once

#include <cstdint>
#include <string>

#include "drincm/field.hpp"

namespace dcm {

struct Config {
  int p = 3, n = 1;
  std::string modulus_q;   // empty when n = 1
  std::string modulus_q2;  // in y over F_q
  std::int64_t prec = 40;
  int d_cap = 64;
  int threads = 1;
  std::uint64_t seed = 1;

  int q() const;
};

// Shipped configurations for q in {3, 5, 7, 9}. Throws PreconditionViolated.
Config default_config(int q);

// Throws the field construction errors for an invalid modulus.
FieldRef make_field(const Config& c);

}  // namespace dcm
