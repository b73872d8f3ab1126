#include "grpeq/up.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

namespace grpeq {

ElementSet normalized_set(const ElementSet& s, const char* what) {
  if (s.empty())
    throw PreconditionError(std::string("empty ") + what);
  for (const auto& x : s)
    if (!same_group(x.group(), s[0].group()))
      throw GroupMismatch(std::string(what) + " mixes elements of different groups");
  ElementSet out = s;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet inverse_set(const ElementSet& s) {
  ElementSet out;
  for (const auto& x : s)
    out.push_back(inv(x));
  std::sort(out.begin(), out.end());
  return out;
}

static void require_same(const ElementSet& a, const ElementSet& b) {
  if (!same_group(a[0].group(), b[0].group()))
    throw GroupMismatch("subsets live in different groups");
}

// CENSUS

std::size_t UPReport::multiplicity_total() const {
  std::size_t n = 0;
  for (const auto& [p, f] : products)
    n += f.size();
  return n;
}

UPReport up_check(const ElementSet& x0, const ElementSet& y0) {
  ElementSet x = normalized_set(x0, "X");
  ElementSet y = normalized_set(y0, "Y");
  require_same(x, y);
  UPReport r;
  r.pair_count = x.size() * y.size();
  for (const auto& a : x)
    for (const auto& b : y)
      r.products[a * b].emplace_back(a, b);
  std::set<GroupElement> ys;
  for (const auto& [p, f] : r.products)
    if (f.size() == 1) {
      r.unique_elements.push_back(p);
      ys.insert(f[0].second);
    }
  r.distinct_y_count = ys.size();
  return r;
}

StrongUP strong_up_check(const ElementSet& x, const ElementSet& y) {
  if (normalized_set(y, "Y").size() < 2)
    throw PreconditionError("strong unique product needs |Y| >= 2");
  StrongUP s;
  s.report = up_check(x, y);
  for (const auto& u : s.report.unique_elements) {
    const auto& f = s.report.products.at(u)[0];
    if (s.witness.empty()) {
      s.witness.push_back(f);
    } else if (f.second != s.witness[0].second) {
      s.witness.push_back(f);
      s.holds = true;
      break;
    }
  }
  if (!s.holds)
    s.witness.clear();
  return s;
}

UP4 up4_check(const ElementSet& a0, const ElementSet& b0, const ElementSet& c0,
              const ElementSet& d0) {
  ElementSet a = normalized_set(a0, "A"), b = normalized_set(b0, "B");
  ElementSet c = normalized_set(c0, "C"), d = normalized_set(d0, "D");
  require_same(a, b);
  require_same(a, c);
  require_same(a, d);
  struct Entry {
    std::uint64_t count = 0;
    std::array<GroupElement, 4> first;
  };
  std::map<GroupElement, Entry> census;
  UP4 r;
  for (const auto& p : a)
    for (const auto& q : b) {
      GroupElement pq = p * q;
      for (const auto& s : c) {
        GroupElement pqs = pq * s;
        for (const auto& t : d) {
          Entry& e = census[pqs * t];
          if (e.count++ == 0)
            e.first = {p, q, s, t};
          ++r.quadruples;
        }
      }
    }
  r.distinct_products = census.size();
  for (const auto& [prod, e] : census)
    if (e.count == 1) {
      ++r.unique_count;
      if (!r.holds) {
        r.holds = true;
        r.product = prod;
        r.witness = e.first;
      }
    }
  return r;
}

std::string_view implication_name(ImplicationStatus s) {
  switch (s) {
    case ImplicationStatus::not_applicable: return "not-applicable";
    case ImplicationStatus::confirmed: return "confirmed";
    case ImplicationStatus::contradicted: return "contradicted";
  }
  return "?";
}

UP4ImpliesStrong verify_up4_implies_strong(const ElementSet& x, const ElementSet& y) {
  UP4ImpliesStrong r;
  r.strong = strong_up_check(x, y);
  if (r.strong.holds)
    return r;
  r.up4 = up4_check(x, y, inverse_set(y), inverse_set(x));
  r.status = r.up4->holds ? ImplicationStatus::contradicted : ImplicationStatus::confirmed;
  return r;
}

StrojnowskiCheck strojnowski_check(const ElementSet& x0, const ElementSet& y0) {
  ElementSet x = normalized_set(x0, "X");
  ElementSet y = normalized_set(y0, "Y");
  if (x.size() < 2 || y.size() < 2)
    throw PreconditionError("Strojnowski bound needs |X| >= 2 and |Y| >= 2");
  StrojnowskiCheck r;
  const Group& g = x[0].group();
  if (!g.certified_orderable()) {
    r.reason = "no certified order on " + g.description() + "; check skipped";
    return r;
  }
  r.checked = true;
  r.unique_count = up_check(x, y).unique_elements.size();
  r.bound_holds = r.unique_count >= 2;
  r.reason = "order certified on " + g.description();
  return r;
}

// SEARCH

std::string_view search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget: return "budget";
  }
  return "?";
}

namespace {

class WitnessSearch {
public:
  WitnessSearch(std::vector<GroupElement> ball, int max_size, std::int64_t budget_ms)
      : ball_(std::move(ball)), n_(static_cast<int>(ball_.size())), max_size_(max_size),
        deadline_(std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms)) {
    std::map<GroupElement, int> ids;
    for (int i = 0; i < n_; ++i)
      ids.emplace(ball_[i], i);
    int next = n_;
    prod_.resize(static_cast<size_t>(n_) * n_);
    left_.resize(n_);
    right_.resize(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        auto [it, fresh] = ids.emplace(ball_[i] * ball_[j], next);
        if (fresh)
          ++next;
        int p = it->second;
        prod_[static_cast<size_t>(i) * n_ + j] = p;
        left_[i][p] = j;   // ball_i * z = p
        right_[j][p] = i;  // z * ball_j = p
      }
    counts_.assign(next, 0);
    in_set_.assign(n_, false);
  }

  SearchStatus run(std::uint64_t& nodes, std::vector<int>& witness) {
    for (seed_ = 0; seed_ < n_; ++seed_) {
      add(seed_);
      bool found = dfs();
      if (found) {
        witness = set_;
        nodes = nodes_;
        return SearchStatus::found;
      }
      remove(seed_);
      if (out_of_time_)
        break;
    }
    nodes = nodes_;
    return out_of_time_ ? SearchStatus::budget : SearchStatus::exhausted;
  }

private:
  int product(int i, int j) const { return prod_[static_cast<size_t>(i) * n_ + j]; }

  void add(int z) {
    for (int s : set_) {
      ++counts_[product(s, z)];
      ++counts_[product(z, s)];
    }
    ++counts_[product(z, z)];
    set_.push_back(z);
    in_set_[z] = true;
  }
  void remove(int z) {
    set_.pop_back();
    in_set_[z] = false;
    --counts_[product(z, z)];
    for (int s : set_) {
      --counts_[product(s, z)];
      --counts_[product(z, s)];
    }
  }

  bool usable(int z) const { return z > seed_ && !in_set_[z]; }

  // Ways to give p a second factorization: one new element next to the
  // current set, or two new elements whose product is p.
  std::set<std::vector<int>> covers(int p) const {
    std::set<std::vector<int>> out;
    for (int s : set_) {
      auto it = left_[s].find(p);
      if (it != left_[s].end() && usable(it->second))
        out.insert({it->second});
      it = right_[s].find(p);
      if (it != right_[s].end() && usable(it->second))
        out.insert({it->second});
    }
    for (int z = seed_ + 1; z < n_; ++z) {
      if (in_set_[z])
        continue;
      auto it = left_[z].find(p);
      if (it == left_[z].end())
        continue;
      int y = it->second;
      if (y == z || in_set_[y])
        out.insert({z});
      else if (usable(y))
        out.insert({std::min(y, z), std::max(y, z)});
    }
    return out;
  }

  bool dfs() {
    ++nodes_;
    if ((nodes_ & 63) == 0 && std::chrono::steady_clock::now() > deadline_)
      out_of_time_ = true;
    if (out_of_time_)
      return false;
    std::vector<int> unique;
    std::set<int> seen;
    for (size_t i = 0; i < set_.size(); ++i)
      for (size_t j = 0; j < set_.size(); ++j) {
        int p = product(set_[i], set_[j]);
        if (counts_[p] == 1 && seen.insert(p).second)
          unique.push_back(p);
      }
    if (unique.empty())
      return true;
    if (static_cast<int>(set_.size()) >= max_size_)
      return false;
    std::set<std::vector<int>> best;
    bool have = false;
    for (int p : unique) {
      auto c = covers(p);
      if (!have || c.size() < best.size()) {
        best = std::move(c);
        have = true;
      }
      if (best.empty())
        return false;
    }
    for (const auto& zs : best) {
      if (set_.size() + zs.size() > static_cast<size_t>(max_size_))
        continue;
      for (int z : zs) add(z);
      if (dfs())
        return true;
      for (auto it = zs.rbegin(); it != zs.rend(); ++it) remove(*it);
      if (out_of_time_)
        return false;
    }
    return false;
  }

  std::vector<GroupElement> ball_;
  int n_;
  int max_size_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<int> prod_;
  std::vector<std::unordered_map<int, int>> left_, right_;
  std::vector<int> counts_;
  std::vector<bool> in_set_;
  std::vector<int> set_;
  int seed_ = 0;
  std::uint64_t nodes_ = 0;
  bool out_of_time_ = false;
};

} // namespace

NonUPSearch search_nonup_witness(const GroupId& g, int radius, int max_size,
                                 std::int64_t budget_ms) {
  require(radius >= 0, "search radius must be nonnegative");
  require(max_size >= 1, "search size must be positive");
  require(budget_ms > 0, "search budget must be positive");
  auto gens = g->generators();
  NonUPSearch r;
  r.radius = radius;
  r.max_size = max_size;
  std::vector<GroupElement> b = ball(g, radius, gens);
  r.ball_size = b.size();
  if (b.size() > 4096)
    throw CapExceeded("search ball has " + std::to_string(b.size()) + " elements (cap 4096)");
  WitnessSearch search(b, max_size, budget_ms);
  std::vector<int> w;
  r.status = search.run(r.nodes, w);
  for (int i : w)
    r.witness.push_back(b[i]);
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

} // namespace grpeq
