// Reduced words over a free basis. A letter is a nonzero int: +k is the
// k-th generator (1-based), -k its inverse.

#ifndef GRPEQ_FREEWORD_HPP_
#define GRPEQ_FREEWORD_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace grpeq {

using Letter = int;
using Word = std::vector<Letter>;

// Appends `l` to a reduced word, cancelling when it meets its inverse.
inline void push_reduced(Word& w, Letter l) {
  if (!w.empty() && w.back() == -l)
    w.pop_back();
  else
    w.push_back(l);
}

Word reduce(std::span<const Letter> w);
Word inverse(std::span<const Letter> w);
Word multiply(std::span<const Letter> u, std::span<const Letter> v);
Word power(std::span<const Letter> w, long long k);
bool is_reduced(std::span<const Letter> w);

struct CyclicSplit {
  Word conjugator;  // p
  Word core;        // c, cyclically reduced; w = p c p^-1
};
CyclicSplit cyclic_split(std::span<const Letter> w);

// Total order: shorter first, then lexicographic with
// 1 < -1 < 2 < -2 < ...
bool shortlex_less(std::span<const Letter> u, std::span<const Letter> v);
int letter_rank(Letter l);

// Signed exponent count per generator; `rank` fixes the vector length.
std::vector<long long> exponent_sums(std::span<const Letter> w, int rank);

// "a b^-1 a^2" style, with generator names; identity prints as "1".
std::string format_word(std::span<const Letter> w,
                        const std::vector<std::string>& names);

} // namespace grpeq

#endif
