#include <doctest.h>

#include "grpeq/equations.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace grpeq;

TEST_CASE("normal form minimum agrees with the block oracle") {
  fixtures::SplitFree sf;
  int checked = 0, mismatched = 0;
  for (int len = 1; len <= 6; ++len)
    for (const auto& w : oracle::reduced_words(3, len)) {
      long long sigma = 0;
      for (int l : w)
        if (std::abs(l) == 3)
          sigma += l > 0 ? 1 : -1;
      if (std::llabs(sigma) != 1)
        continue;
      Equation e = sf.equation(w);
      std::set<int> h_and_t{0, 2};
      if (is_conjugate_to_constant(e.word(), h_and_t))
        continue;
      NormalForm nf = normal_form_6(e, {0});
      long long m = 0, n = 0;
      if (!nf.length_one()) {
        const Form6& f = std::get<Form6>(nf.form);
        m = f.m;
        n = f.n;
        CHECK(f.property1);
        CHECK(f.property2);
      }
      CHECK(nf.expansion_verified);
      oracle::Word target = sigma == 1 ? w : oracle::inverse(w);
      auto best = oracle::normal_form_minimum(target);
      REQUIRE(best);
      ++checked;
      if (!(best->m == m && best->n == n)) {
        ++mismatched;
        if (mismatched < 10) {
          std::string s;
          for (int l : w) s += std::to_string(l) + " ";
          MESSAGE("word " << s << " impl (" << m << "," << n << ") oracle (" << best->m << ","
                          << best->n << ")");
        }
      }
    }
  MESSAGE("checked " << checked);
  CHECK(mismatched == 0);
}
