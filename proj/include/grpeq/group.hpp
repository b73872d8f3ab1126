// Concrete groups with decidable equality.
//
// Every element is stored in a canonical normal form, so equality of
// payloads is equality in the group. Groups are immutable and shared;
// elements are plain values that keep their group alive.

#ifndef GRPEQ_GROUP_HPP_
#define GRPEQ_GROUP_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grpeq/error.hpp"
#include "grpeq/freeword.hpp"

namespace grpeq {

enum class GroupKind {
  finite_table,
  permutation,
  free,
  free_abelian,
  fours,
  free_product,
  direct_product,
};

std::string_view kind_name(GroupKind k);

class Group;
class GroupElement;
using GroupId = std::shared_ptr<const Group>;

// PAYLOADS

struct TableIndex {
  int index;
  auto operator<=>(const TableIndex&) const = default;
};

// images[i] is the image of point i (0-based).
struct Permutation {
  std::vector<int> images;
  auto operator<=>(const Permutation&) const = default;
};

struct FreeWord {
  Word letters;
  auto operator<=>(const FreeWord&) const = default;
};

struct IntVector {
  std::vector<long long> coords;
  auto operator<=>(const IntVector&) const = default;
};

// x -> D x + v with D = diag(sign) and v = twice_shift / 2.
struct AffinePair {
  std::array<int, 3> sign;
  std::array<long long, 3> twice_shift;
  auto operator<=>(const AffinePair&) const = default;
};

struct Syllable;
// Free-product normal form: adjacent syllables come from distinct factors
// and none is the identity.
struct SyllableSeq {
  std::vector<Syllable> syllables;
};

struct Components {
  std::vector<GroupElement> parts;
};

using Payload = std::variant<TableIndex, Permutation, FreeWord, IntVector,
                             AffinePair, SyllableSeq, Components>;

int compare_payload(const Payload& x, const Payload& y);
std::size_t hash_payload(const Payload& p);

// ORDER

struct Order {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::unknown;
  std::uint64_t value = 0;

  static Order finite(std::uint64_t n) { return {Kind::finite, n}; }
  static Order infinite() { return {Kind::infinite, 0}; }
  static Order unknown() { return {Kind::unknown, 0}; }
  bool is_infinite() const { return kind == Kind::infinite; }
  bool is_finite() const { return kind == Kind::finite; }
  std::string to_string() const;
  bool operator==(const Order&) const = default;
};

// ELEMENT

class GroupElement {
public:
  GroupElement() = default;
  GroupElement(GroupId group, Payload payload)
      : group_(std::move(group)), payload_(std::move(payload)) {}

  const Group& group() const { return *group_; }
  const GroupId& group_id() const { return group_; }
  const Payload& payload() const { return payload_; }
  template <class T> const T& as() const { return std::get<T>(payload_); }
  bool valid() const { return group_ != nullptr; }

  bool is_identity() const;
  std::string to_string() const;

  // Ordering is by group description, then payload. Within one group it is
  // a total order on canonical forms; output sorting relies on it.
  int compare(const GroupElement& o) const;
  bool operator==(const GroupElement& o) const { return compare(o) == 0; }
  bool operator<(const GroupElement& o) const { return compare(o) < 0; }

private:
  GroupId group_;
  Payload payload_;
};

struct Syllable {
  int factor;          // index into the flattened factor list
  GroupElement value;  // element of that factor, never the identity
};

struct ElementHash {
  std::size_t operator()(const GroupElement& x) const {
    return hash_payload(x.payload());
  }
};

// Generators plus relators as words in those generators. The generator
// order matches Group::generators().
struct BackendPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

// GROUP

class Group : public std::enable_shared_from_this<Group> {
public:
  virtual ~Group() = default;

  GroupKind kind() const { return kind_; }
  // Canonical text; two groups with equal descriptions are the same group.
  const std::string& description() const { return description_; }

  virtual Payload identity_payload() const = 0;
  virtual Payload mul(const Payload& x, const Payload& y) const = 0;
  virtual Payload inv(const Payload& x) const = 0;
  virtual Order order(const Payload& x) const = 0;
  virtual std::string format(const Payload& x) const = 0;
  // Parses one element literal in this backend's syntax.
  virtual GroupElement parse(std::string_view literal) const = 0;
  virtual std::vector<GroupElement> generators() const = 0;

  // Number of elements for finite groups.
  virtual std::optional<std::uint64_t> size() const { return std::nullopt; }
  // All elements, for finite groups only.
  virtual std::vector<GroupElement> elements() const;
  virtual bool torsion_free() const { return false; }
  // True when a bi-invariant order is known by construction.
  virtual bool certified_orderable() const { return false; }

  virtual std::optional<BackendPresentation> presentation() const {
    return std::nullopt;
  }
  // Word in the presentation generators representing x.
  virtual Word word_of(const Payload& x) const;

  GroupElement identity() const;
  GroupElement element(Payload p) const;
  GroupElement evaluate(std::span<const Letter> w) const;

protected:
  Group(GroupKind kind, std::string description)
      : kind_(kind), description_(std::move(description)) {}
  GroupId self() const { return shared_from_this(); }

private:
  GroupKind kind_;
  std::string description_;
};

bool same_group(const Group& a, const Group& b);
bool same_group(const GroupId& a, const GroupId& b);

// OPERATIONS

GroupElement identity(const GroupId& g);
GroupElement mul(const GroupElement& x, const GroupElement& y);
GroupElement inv(const GroupElement& x);
GroupElement pow(const GroupElement& x, long long k);
// x^y = y^-1 x y
GroupElement conj(const GroupElement& x, const GroupElement& y);
GroupElement commutator(const GroupElement& x, const GroupElement& y);
Order element_order(const GroupElement& x);

inline GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  return mul(x, y);
}

inline constexpr int default_radius_cap = 8;

// All products of at most `radius` factors from gens and their inverses,
// sorted by canonical order.
std::vector<GroupElement> ball(const GroupId& g, int radius,
                               std::span<const GroupElement> gens,
                               int radius_cap = default_radius_cap);

// BACKEND CONSTRUCTORS

// table[i][j] = index of x_i x_j. Validated: closure, identity, inverses
// and associativity. Names must be distinct; defaults are "#0", "#1", ...
GroupId finite_table(std::vector<std::vector<int>> table,
                     std::vector<std::string> names = {});
GroupId cyclic_group(int n);
GroupId klein_four();
GroupId dihedral_group(int n);  // order 2n

// Subgroup of S_degree generated by gens. Literals are 1-based cycles.
GroupId perm_group(int degree, std::vector<Permutation> gens);
GroupId free_group(std::vector<std::string> names);
GroupId free_abelian(int rank);
// <a, b | a^-1 b^2 a = b^-2, b^-1 a^2 b = a^-2>, realized by affine maps.
GroupId fours_group();
// Nested free products are flattened; use inject() with operand indices.
GroupId free_product(std::vector<GroupId> factors);
GroupId direct_product(std::vector<GroupId> factors);

// ELEMENT CONSTRUCTORS (validate membership)

GroupElement table_element(const GroupId& g, int index);
GroupElement make_permutation(const GroupId& g, std::vector<int> images);
GroupElement make_free(const GroupId& g, std::span<const Letter> w);
GroupElement make_vector(const GroupId& g, std::vector<long long> coords);
GroupElement make_affine(const GroupId& g, std::array<int, 3> sign,
                         std::array<long long, 3> twice_shift);
GroupElement make_components(const GroupId& g,
                             std::vector<GroupElement> parts);

// FREE PRODUCTS

class FreeProductGroup;
const FreeProductGroup& as_free_product(const Group& g);

class FreeProductGroup final : public Group {
public:
  FreeProductGroup(std::vector<GroupId> operands);

  const std::vector<GroupId>& factors() const { return factors_; }
  std::size_t operand_count() const { return ranges_.size(); }
  // Flattened factor indices [first, second) covered by an operand.
  std::pair<int, int> operand_range(std::size_t operand) const {
    return ranges_.at(operand);
  }
  // Embeds an element of operand `operand` (which may itself be a free
  // product) into this group.
  GroupElement inject(std::size_t operand, const GroupElement& x) const;
  // Embeds an element of flattened factor `factor`.
  GroupElement embed(int factor, const GroupElement& x) const;
  GroupElement from_syllables(std::vector<Syllable> s) const;
  int factor_of_name(std::string_view generator) const;

  Payload identity_payload() const override;
  Payload mul(const Payload& x, const Payload& y) const override;
  Payload inv(const Payload& x) const override;
  Order order(const Payload& x) const override;
  std::string format(const Payload& x) const override;
  GroupElement parse(std::string_view literal) const override;
  std::vector<GroupElement> generators() const override;
  bool torsion_free() const override;
  std::optional<BackendPresentation> presentation() const override;
  Word word_of(const Payload& x) const override;

private:
  std::vector<GroupId> factors_;
  std::vector<std::pair<int, int>> ranges_;
};

const std::vector<Syllable>& syllables(const GroupElement& fp);

// LITERAL TOKENS

// Splits a literal into tokens on whitespace, keeping (...), [...] and
// {...} groups intact together with a trailing ^k.
std::vector<std::string> literal_tokens(std::string_view s);
// Splits "name^k" into ("name", k); k is 1 when absent.
std::pair<std::string, long long> split_power(std::string_view token);

inline constexpr long long max_literal_exponent = 1000;

} // namespace grpeq

#endif
