#include "grpeq/finite_solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace grpeq {

Permutation compose(const Permutation& x, const Permutation& y) {
  if (x.images.size() != y.images.size())
    throw PreconditionError("composing permutations of different degrees");
  Permutation r;
  r.images.resize(x.images.size());
  for (size_t i = 0; i < y.images.size(); ++i)
    r.images[i] = x.images[y.images[i]];
  return r;
}

Permutation perm_inverse(const Permutation& x) {
  Permutation r;
  r.images.resize(x.images.size());
  for (size_t i = 0; i < x.images.size(); ++i)
    r.images[x.images[i]] = static_cast<int>(i);
  return r;
}

std::string format_cycles(const Permutation& p) {
  std::string s;
  std::vector<bool> seen(p.images.size(), false);
  for (size_t i = 0; i < p.images.size(); ++i) {
    if (seen[i] || p.images[i] == static_cast<int>(i))
      continue;
    s += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first)
        s += " ";
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<size_t>(p.images[j]);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

namespace {

Permutation identity_perm(int d) {
  Permutation p;
  p.images.resize(d);
  for (int i = 0; i < d; ++i)
    p.images[i] = i;
  return p;
}

bool is_permutation(const Permutation& p, size_t d) {
  if (p.images.size() != d)
    return false;
  std::vector<bool> hit(d, false);
  for (int x : p.images) {
    if (x < 0 || static_cast<size_t>(x) >= d || hit[x])
      return false;
    hit[x] = true;
  }
  return true;
}

// Op: a constant permutation (index into constants) or a step along t (+1)
// or t^-1 (-1). Ops are applied right to left of the word.
struct Op {
  int perm = -1;
  int step = 0;
};

class TraceSearch {
public:
  TraceSearch(int degree, int regular, std::vector<Permutation> constants, std::vector<Op> ops,
              std::chrono::steady_clock::time_point deadline, std::uint64_t& nodes)
      : d_(degree), regular_(regular), constants_(std::move(constants)), ops_(std::move(ops)),
        deadline_(deadline), nodes_(nodes), fwd_(degree, -1), bwd_(degree, -1) {}

  std::optional<Permutation> run() {
    if (search()) {
      Permutation p;
      p.images = fwd_;
      return p;
    }
    return std::nullopt;
  }
  bool out_of_time() const { return out_of_time_; }

private:
  struct Need {
    int point;
    int dir;  // +1: fwd_[point] unknown, -1: bwd_[point] unknown
  };

  // Follows the trace of p; returns a pending step or whether it closes.
  std::optional<Need> trace(int p, bool& closes) const {
    int x = p;
    for (const Op& op : ops_) {
      if (op.perm >= 0) {
        x = constants_[op.perm].images[x];
      } else if (op.step > 0) {
        if (fwd_[x] < 0)
          return Need{x, 1};
        x = fwd_[x];
      } else {
        if (bwd_[x] < 0)
          return Need{x, -1};
        x = bwd_[x];
      }
    }
    closes = x == p;
    return std::nullopt;
  }

  bool untouched(int r) const { return r >= regular_ && fwd_[r] < 0 && bwd_[r] < 0; }

  bool search() {
    if ((++nodes_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_)
      out_of_time_ = true;
    if (out_of_time_)
      return false;
    std::optional<Need> need;
    for (int p = 0; p < d_; ++p) {
      bool closes = false;
      auto n = trace(p, closes);
      if (!n) {
        if (!closes)
          return false;
      } else if (!need) {
        need = n;
      }
    }
    if (!need) {
      complete();
      return true;
    }
    bool fresh_tried = false;
    for (int r = 0; r < d_; ++r) {
      int from = need->dir > 0 ? need->point : r;
      int to = need->dir > 0 ? r : need->point;
      if (fwd_[from] >= 0 || bwd_[to] >= 0)
        continue;
      int other = need->dir > 0 ? to : from;
      if (untouched(other) && other != need->point) {
        if (fresh_tried)
          continue;
        fresh_tried = true;
      }
      fwd_[from] = to;
      bwd_[to] = from;
      if (search())
        return true;
      fwd_[from] = -1;
      bwd_[to] = -1;
      if (out_of_time_)
        return false;
    }
    return false;
  }

  // Points no trace constrains map to the remaining images in sorted order.
  void complete() {
    std::vector<int> free_images;
    for (int r = 0; r < d_; ++r)
      if (bwd_[r] < 0)
        free_images.push_back(r);
    size_t k = 0;
    for (int p = 0; p < d_; ++p)
      if (fwd_[p] < 0) {
        fwd_[p] = free_images[k];
        bwd_[free_images[k]] = p;
        ++k;
      }
  }

  int d_, regular_;
  std::vector<Permutation> constants_;
  std::vector<Op> ops_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t& nodes_;
  std::vector<int> fwd_, bwd_;
  bool out_of_time_ = false;
};

std::vector<Permutation> regular_representation(const std::vector<GroupElement>& els, int degree) {
  std::map<GroupElement, int> index;
  for (size_t i = 0; i < els.size(); ++i)
    index.emplace(els[i], static_cast<int>(i));
  std::vector<Permutation> out;
  for (const auto& g : els) {
    Permutation p = identity_perm(degree);
    for (size_t h = 0; h < els.size(); ++h)
      p.images[h] = index.at(g * els[h]);
    out.push_back(std::move(p));
  }
  return out;
}

Permutation evaluate_word(const Equation& e, const std::map<GroupElement, int>& index,
                          const std::vector<Permutation>& embedding, const Permutation& t) {
  Permutation w = identity_perm(static_cast<int>(t.images.size()));
  Permutation ti = perm_inverse(t);
  for (const Term& term : e.terms()) {
    w = compose(w, embedding.at(index.at(term.coefficient)));
    for (long long k = 0; k < std::llabs(term.exponent); ++k)
      w = compose(w, term.exponent > 0 ? t : ti);
  }
  return w;
}

} // namespace

FiniteSolve solve_over_finite(const Equation& e, int max_degree, std::int64_t budget_ms) {
  const GroupId& g = e.group();
  auto size = g->size();
  if (!size)
    throw PreconditionError("finite solver needs a finite group, got " + g->description());
  if (*size > static_cast<std::uint64_t>(finite_solver_order_cap))
    throw CapExceeded("group order " + std::to_string(*size) + " exceeds the solver cap " +
                      std::to_string(finite_solver_order_cap));
  if (max_degree > finite_solver_degree_cap)
    throw CapExceeded("degree " + std::to_string(max_degree) + " exceeds the solver cap " +
                      std::to_string(finite_solver_degree_cap));
  for (const Term& t : e.terms())
    if (std::llabs(t.exponent) > max_literal_exponent)
      throw CapExceeded("exponent beyond " + std::to_string(max_literal_exponent));
  FiniteSolve r;
  r.group_order = static_cast<int>(*size);
  r.max_degree = max_degree;
  std::vector<GroupElement> els = g->elements();
  std::sort(els.begin(), els.end());
  std::map<GroupElement, int> index;
  for (size_t i = 0; i < els.size(); ++i)
    index.emplace(els[i], static_cast<int>(i));
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);

  for (int d = r.group_order; d <= max_degree; ++d) {
    std::vector<Permutation> emb = regular_representation(els, d);
    std::vector<Permutation> constants;
    std::vector<Op> ops;
    const auto& terms = e.terms();
    for (size_t i = terms.size(); i-- > 0;) {
      for (long long k = 0; k < std::llabs(terms[i].exponent); ++k)
        ops.push_back({-1, terms[i].exponent > 0 ? 1 : -1});
      if (!terms[i].coefficient.is_identity()) {
        constants.push_back(emb[index.at(terms[i].coefficient)]);
        ops.push_back({static_cast<int>(constants.size()) - 1, 0});
      }
    }
    TraceSearch search(d, r.group_order, constants, ops, deadline, r.nodes);
    auto t = search.run();
    if (t) {
      SolutionCertificate c;
      c.degree = d;
      c.elements = els;
      c.embedding = emb;
      c.solution = *t;
      c.residual = evaluate_word(e, index, emb, *t);
      if (!verify_certificate(c, e))
        fail("finite solver produced a certificate that does not verify");
      r.certificate = std::move(c);
      return r;
    }
    if (search.out_of_time()) {
      r.budget_hit = true;
      return r;
    }
    r.degrees_exhausted.push_back(d);
  }
  return r;
}

bool verify_certificate(const SolutionCertificate& cert, const Equation& e) {
  const GroupId& g = e.group();
  auto size = g->size();
  if (!size)
    throw PreconditionError("certificate over an infinite group");
  size_t n = static_cast<size_t>(*size);
  if (cert.elements.size() != n || cert.embedding.size() != n)
    throw PreconditionError("certificate does not list every element of the group");
  if (cert.degree < 1 || !is_permutation(cert.solution, cert.degree))
    throw PreconditionError("certificate solution is not a permutation of its degree");
  std::map<GroupElement, int> index;
  for (size_t i = 0; i < n; ++i) {
    if (!same_group(cert.elements[i].group(), *g))
      throw GroupMismatch("certificate element outside " + g->description());
    if (!index.emplace(cert.elements[i], static_cast<int>(i)).second)
      throw PreconditionError("certificate lists an element twice");
    if (!is_permutation(cert.embedding[i], cert.degree))
      throw PreconditionError("embedding image is not a permutation of the degree");
  }
  // injective homomorphism, checked on the full multiplication table
  std::map<Permutation, int> images;
  for (size_t i = 0; i < n; ++i)
    if (!images.emplace(cert.embedding[i], static_cast<int>(i)).second)
      return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int k = index.at(cert.elements[i] * cert.elements[j]);
      if (compose(cert.embedding[i], cert.embedding[j]) != cert.embedding[k])
        return false;
    }
  Permutation w = evaluate_word(e, index, cert.embedding, cert.solution);
  return w == identity_perm(cert.degree);
}

} // namespace grpeq
