#include "drincm/config.hpp"

#include "drincm/errors.hpp"

namespace dcm {

int Config::q() const {
  int q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  return q;
}

Config default_config(int q) {
  Config c;
  switch (q) {
    case 3: c.p = 3, c.modulus_q2 = "y^2+1"; break;
    case 5: c.p = 5, c.modulus_q2 = "y^2+2"; break;
    case 7: c.p = 7, c.modulus_q2 = "y^2+1"; break;
    case 9: c.p = 3, c.n = 2, c.modulus_q = "x^2+1", c.modulus_q2 = "y^2-(x+1)"; break;
    default: throw PreconditionViolated("no shipped configuration for q = " + std::to_string(q));
  }
  return c;
}

FieldRef make_field(const Config& c) { return Field::make(c.p, c.n, c.modulus_q, c.modulus_q2); }

}  // namespace dcm
