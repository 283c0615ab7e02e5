// Multiplies E^n_0 by E^m_1 in the cyclic group of order 5 with q a
// primitive fifth root of unity and prints both the thin-split product and
// the closed form q^{jn} (n+m atop n)_q E^{n+m}_{i+j}.

#include <iostream>

#include "hopfquiver/hopfquiver.hpp"

using namespace hopfquiver;

int main() {
  const Group g = Group::cyclic(5);
  const Field f = Field::cyclotomic(5);
  const Ramification r = parse_ramification(g, "K:1");
  std::vector<ModuleFamilyEntry> family{{GroupElement{1}, RightModule::character(g.centralizer({1}), {1}, f.generator())}};
  const HopfAlgebra h(HopfBimodule::build(g, family, f));

  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      GradedVector product = h.multiply(cyclic_path(h, n, 0), cyclic_path(h, m, 1));
      CyclicProduct closed = cyclic_closed_form(n, 0, m, 1, f.generator(), g.order());
      std::cout << "E" << n << "_0 * E" << m << "_1 = " << h.to_string(product) << "    closed form: ("
                << closed.coefficient.to_string() << ") E" << closed.length << "_" << closed.start << "\n";
    }
}
