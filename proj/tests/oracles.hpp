// Independent brute-force oracles shared by the unit and acceptance tests.
// They work on plain letter words and never call the algorithms they check.

#ifndef GRPEQ_TESTS_ORACLES_HPP_
#define GRPEQ_TESTS_ORACLES_HPP_

#include <cstdlib>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::vector<int>;

inline Word reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts)
    out.insert(out.end(), p.begin(), p.end());
  return reduce(out);
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out)
    l = -l;
  return out;
}

inline Word tpow(int t, long long k) {
  return Word(static_cast<size_t>(std::llabs(k)), k >= 0 ? t : -t);
}

// All reduced words of length exactly n over `rank` generators.
inline std::vector<Word> reduced_words(int rank, int n) {
  std::vector<Word> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int g = 1; g <= rank; ++g)
        for (int s : {1, -1}) {
          int l = s * g;
          if (!w.empty() && w.back() == -l)
            continue;
          Word v = w;
          v.push_back(l);
          next.push_back(v);
        }
    out = std::move(next);
  }
  return out;
}

// NORMAL FORM ORACLE
//
// Letters: the H generator is 1, the K generator is 2, t is 3. A block of
// letters with t-exponent sum 0 is an element of the kernel of the t-count,
// and each constant letter in it sits at level = t-sum of the letters to its
// right inside the block.
struct BlockInfo {
  bool ok = false;
  long long kmin = 0, kmax = 0;
  bool has_k = false;
};

inline BlockInfo block_info(const Word& w, size_t from, size_t to, int t, int k) {
  BlockInfo b;
  long long sum = 0;
  for (size_t i = from; i < to; ++i)
    if (std::abs(w[i]) == t)
      sum += w[i] > 0 ? 1 : -1;
  if (sum != 0)
    return b;
  b.ok = true;
  long long suffix = 0;
  for (size_t i = to; i-- > from;) {
    if (std::abs(w[i]) == t) {
      suffix += w[i] > 0 ? 1 : -1;
    } else if (std::abs(w[i]) == k) {
      if (!b.has_k)
        b.kmin = b.kmax = suffix;
      b.kmin = std::min(b.kmin, suffix);
      b.kmax = std::max(b.kmax, suffix);
      b.has_k = true;
    }
  }
  return b;
}

// Splits x (the word after the leading t) into blocks P0 .. P_{2n}; even
// blocks are conjugates by t of elements of G^(m) (K levels in [1, m+1]),
// odd blocks are elements of G^(m) (K levels in [0, m]).
inline bool split_blocks(const Word& x, size_t at, int block, int nblocks, long long m, int t,
                         int k, std::vector<size_t>& cuts) {
  if (block == nblocks)
    return at == x.size();
  size_t first_end = block + 1 == nblocks ? x.size() : at;
  for (size_t end = first_end; end <= x.size(); ++end) {
    BlockInfo b = block_info(x, at, end, t, k);
    if (!b.ok)
      continue;
    long long lo = block % 2 == 0 ? 1 : 0;
    if (b.has_k && (b.kmin < lo || b.kmax > lo + m))
      continue;
    cuts.push_back(end);
    if (split_blocks(x, end, block + 1, nblocks, m, t, k, cuts))
      return true;
    cuts.pop_back();
  }
  return false;
}

// Rebuilds c t prod b_i t^-1 a_i t from the blocks and compares.
inline bool expansion_matches(const Word& v, const Word& x, const std::vector<size_t>& cuts,
                              int t) {
  std::vector<Word> blocks;
  size_t at = 0;
  for (size_t c : cuts) {
    blocks.emplace_back(x.begin() + at, x.begin() + c);
    at = c;
  }
  Word T{t}, Ti{-t};
  Word out = concat({T, blocks[0], Ti, T});  // c = t P0 t^-1
  for (size_t i = 1; i + 1 < blocks.size(); i += 2) {
    Word a = concat({T, blocks[i + 1], Ti});
    out = concat({out, blocks[i], Ti, a, T});
  }
  return out == reduce(v);
}

struct MN {
  long long m, n;
  bool operator==(const MN&) const = default;
};

// Lexicographic minimum (m, n) with m <= max_m, n <= max_n over all letter
// rotations of the cyclic core and conjugations by powers of t.
inline std::optional<MN> normal_form_minimum(const Word& w, int max_m = 3, int max_n = 4,
                                             int t = 3, int k = 2) {
  Word r = reduce(w);
  size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  Word core(r.begin() + lo, r.begin() + hi);
  std::vector<Word> conjugates;
  for (size_t j = 0; j < core.size(); ++j) {
    Word rot(core.begin() + j, core.end());
    rot.insert(rot.end(), core.begin(), core.begin() + j);
    for (int J = -8; J <= 8; ++J)
      conjugates.push_back(concat({tpow(t, -J), rot, tpow(t, J)}));
  }
  for (long long m = 0; m <= max_m; ++m)
    for (long long n = 0; n <= max_n; ++n)
      for (const Word& v : conjugates) {
        Word x = concat({Word{-t}, v});
        std::vector<size_t> cuts;
        if (split_blocks(x, 0, 0, static_cast<int>(2 * n + 1), m, t, k, cuts) &&
            expansion_matches(v, x, cuts, t))
          return MN{m, n};
      }
  return std::nullopt;
}

// PROPER POWERS
//
// Maps every reduced word of length <= maxlen over `rank` generators that is
// a proper power to its largest exponent, by raising every shorter word.
inline std::map<Word, int> proper_power_table(int rank, int maxlen) {
  std::map<Word, int> best;
  for (int len = 1; len < maxlen; ++len)
    for (const Word& u : reduced_words(rank, len)) {
      Word acc = u;
      for (int k = 2; k <= maxlen; ++k) {
        acc = concat({acc, u});
        if (static_cast<int>(acc.size()) > maxlen)
          break;
        if (acc.empty())
          break;
        auto& b = best[acc];
        b = std::max(b, k);
      }
    }
  return best;
}

} // namespace oracle

#endif
