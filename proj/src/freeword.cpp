#include "grpeq/freeword.hpp"

#include <algorithm>
#include <cstdlib>

namespace grpeq {

Word reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w)
    push_reduced(out, l);
  return out;
}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out)
    l = -l;
  return out;
}

Word multiply(std::span<const Letter> u, std::span<const Letter> v) {
  Word out(u.begin(), u.end());
  for (Letter l : v)
    push_reduced(out, l);
  return out;
}

Word power(std::span<const Letter> w, long long k) {
  Word base = k >= 0 ? Word(w.begin(), w.end()) : inverse(w);
  Word out;
  for (long long i = 0; i < std::llabs(k); ++i)
    for (Letter l : base)
      push_reduced(out, l);
  return out;
}

bool is_reduced(std::span<const Letter> w) {
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0)
      return false;
    if (i + 1 < w.size() && w[i] == -w[i + 1])
      return false;
  }
  return true;
}

CyclicSplit cyclic_split(std::span<const Letter> w) {
  Word r = reduce(w);
  size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicSplit s;
  s.conjugator.assign(r.begin(), r.begin() + lo);
  s.core.assign(r.begin() + lo, r.begin() + hi);
  return s;
}

int letter_rank(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

bool shortlex_less(std::span<const Letter> u, std::span<const Letter> v) {
  if (u.size() != v.size())
    return u.size() < v.size();
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i])
      return letter_rank(u[i]) < letter_rank(v[i]);
  return false;
}

std::vector<long long> exponent_sums(std::span<const Letter> w, int rank) {
  std::vector<long long> out(rank, 0);
  for (Letter l : w) {
    int g = std::abs(l) - 1;
    if (g >= rank)
      out.resize(g + 1, 0);
    out[g] += l > 0 ? 1 : -1;
  }
  return out;
}

std::string format_word(std::span<const Letter> w,
                        const std::vector<std::string>& names) {
  if (w.empty())
    return "1";
  std::string s;
  size_t i = 0;
  while (i < w.size()) {
    int g = std::abs(w[i]);
    long long e = 0;
    size_t j = i;
    // group maximal runs of one generator into a power
    while (j < w.size() && std::abs(w[j]) == g && (w[j] > 0) == (w[i] > 0)) {
      e += w[j] > 0 ? 1 : -1;
      ++j;
    }
    if (!s.empty())
      s += ' ';
    s += (g - 1) < static_cast<int>(names.size()) ? names[g - 1]
                                                   : "x" + std::to_string(g);
    if (e != 1)
      s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

} // namespace grpeq
