// The symmetric group on three letters with one arrow per transposition and
// trivial modules: prints a product of two arrows with its summands per
// thin-split mask, the coproduct of a 2-path and its antipode.

#include <iostream>

#include "hopfquiver/hopfquiver.hpp"

using namespace hopfquiver;

int main() {
  const Group g = Group::symmetric(3);
  const Field f = Field::rational();
  const Ramification r = parse_ramification(g, "transpositions:1");
  std::vector<ModuleFamilyEntry> family;
  for (const auto& [u, mult] : r.coefficients()) family.push_back({u, RightModule::trivial(g.centralizer(u), mult, f)});
  const HopfAlgebra h(HopfBimodule::build(g, family, f));

  const GroupElement e = g.identity();
  const Arrow a = h.quiver().arrows_from(e)[0];
  const Arrow b = h.quiver().arrows_from(e)[1];
  const Path pa = h.path({a}), pb = h.path({b});
  std::cout << "a = " << h.path_name(pa) << "\nb = " << h.path_name(pb) << "\n";
  for (const ThinSplitMask& d : thin_splits(1, 2))
    std::cout << "  mask " << d.to_string() << ": " << h.to_string(h.product_summand(pa, pb, d)) << "\n";
  std::cout << "a.b = " << h.to_string(h.multiply(pa, pb)) << "\n";

  const Arrow c = h.quiver().arrows_from(h.quiver().target(a))[0];
  const Path ca = h.path({a, c});
  std::cout << "Delta(" << h.path_name(ca) << ") = " << h.to_string(h.comultiply(ca)) << "\n";
  std::cout << "S(" << h.path_name(ca) << ") = " << h.to_string(h.antipode(ca)) << "\n";
}
