// Builds a small index over three 1D curves and answers two queries.
#include <iostream>

#include "curveann/curveann.hpp"

using namespace curveann;

int main() {
  // Coordinates are fixed-point integers; here one unit is 1/4.
  const std::vector<Curve> inputs{
      Curve::line({0, 16}),
      Curve::line({0, 40, 8, 48}),
      Curve::line({-20, -4, -12, 0}),
  };
  const IndexParams params{Coord(4), Ratio(1, 2), 3, Variant::one_plus_eps};
  const AnnIndex index = AnnIndex::build(inputs, params);
  std::cout << "keys: " << index.key_count() << "\n";

  for (const Curve& q : {Curve::line({1, 15}), Curve::line({100, 140})}) {
    const QueryOutcome out = index.query(q);
    std::cout << q << " -> ";
    if (out.is_match()) {
      std::cout << "input " << *out.match << " (within " << params.factor_delta() << ")\n";
    } else {
      std::cout << "no input within " << params.delta << "\n";
    }
  }
}
