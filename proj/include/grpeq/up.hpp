// Unique-product censuses for finite subsets, and a search for subsets S
// whose square S*S has no uniquely factorizable element.

#ifndef GRPEQ_UP_HPP_
#define GRPEQ_UP_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "grpeq/group.hpp"

namespace grpeq {

using ElementSet = std::vector<GroupElement>;

// Sorted, deduplicated copy; throws on an empty set or mixed groups.
ElementSet normalized_set(const ElementSet& s, const char* what = "set");
ElementSet inverse_set(const ElementSet& s);

struct UPReport {
  std::map<GroupElement, std::vector<std::pair<GroupElement, GroupElement>>> products;
  std::vector<GroupElement> unique_elements;  // sorted
  std::size_t distinct_y_count = 0;
  std::size_t pair_count = 0;                 // |X| |Y|

  bool holds() const { return !unique_elements.empty(); }
  std::size_t multiplicity_total() const;
};

UPReport up_check(const ElementSet& x, const ElementSet& y);

struct StrongUP {
  bool holds = false;
  // Two unique factorizations (x1, y1), (x2, y2) with y1 != y2.
  std::vector<std::pair<GroupElement, GroupElement>> witness;
  UPReport report;
};

StrongUP strong_up_check(const ElementSet& x, const ElementSet& y);

struct UP4 {
  bool holds = false;
  std::optional<GroupElement> product;
  std::optional<std::array<GroupElement, 4>> witness;
  std::uint64_t quadruples = 0;
  std::size_t distinct_products = 0;
  std::size_t unique_count = 0;
};

UP4 up4_check(const ElementSet& a, const ElementSet& b, const ElementSet& c, const ElementSet& d);

enum class ImplicationStatus { not_applicable, confirmed, contradicted };
std::string_view implication_name(ImplicationStatus s);

struct UP4ImpliesStrong {
  ImplicationStatus status = ImplicationStatus::not_applicable;
  StrongUP strong;
  std::optional<UP4> up4;  // census of X Y Y^-1 X^-1 when strong UP fails
};

UP4ImpliesStrong verify_up4_implies_strong(const ElementSet& x, const ElementSet& y);

struct StrojnowskiCheck {
  bool checked = false;      // false when the backend has no certified order
  std::string reason;
  std::size_t unique_count = 0;
  bool bound_holds = false;  // at least two unique elements
};

StrojnowskiCheck strojnowski_check(const ElementSet& x, const ElementSet& y);

// WITNESS SEARCH

enum class SearchStatus { found, exhausted, budget };
std::string_view search_status_name(SearchStatus s);

struct NonUPSearch {
  SearchStatus status = SearchStatus::exhausted;
  ElementSet witness;        // sorted
  std::size_t ball_size = 0;
  std::uint64_t nodes = 0;
  int radius = 0;
  int max_size = 0;
};

// Searches S inside the ball of the given radius (over the backend's
// generators) with |S| <= max_size and no unique element in S*S. The search
// is exhaustive unless the millisecond budget runs out.
NonUPSearch search_nonup_witness(const GroupId& g, int radius, int max_size,
                                 std::int64_t budget_ms);

} // namespace grpeq

#endif
