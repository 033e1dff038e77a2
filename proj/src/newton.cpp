#include "drincm/newton.hpp"

#include <algorithm>

#include "drincm/errors.hpp"

namespace dcm {

std::vector<NewtonSlope> newton_polygon_from_degrees(const std::vector<int>& degs) {
  struct Pt {
    long long x, y;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < degs.size(); ++i)
    if (degs[i] >= 0) pts.push_back({static_cast<long long>(i), -static_cast<long long>(degs[i])});
  if (pts.size() < 1 || pts.back().x == 0) throw ZeroPolynomial("Newton polygon needs deg_X H >= 1");

  // Monotone chain, lower hull only.
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // drop b unless it lies strictly below the segment a-p
      if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<NewtonSlope> out;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const long long dx = hull[k].x - hull[k - 1].x, dy = hull[k].y - hull[k - 1].y;
    Rational s(dy, dx);
    if (!out.empty() && out.back().slope == s) out.back().multiplicity += static_cast<int>(dx);
    else out.push_back({s, static_cast<int>(dx)});
  }
  return out;
}

std::vector<NewtonSlope> newton_polygon(const std::vector<PolyA>& H) {
  std::vector<int> degs;
  degs.reserve(H.size());
  for (const PolyA& c : H) degs.push_back(c.deg());
  return newton_polygon_from_degrees(degs);
}

std::vector<Rational> slope_multiset(const std::vector<NewtonSlope>& polygon) {
  std::vector<Rational> out;
  for (const auto& s : polygon) out.insert(out.end(), s.multiplicity, s.slope);
  return out;
}

}  // namespace dcm
