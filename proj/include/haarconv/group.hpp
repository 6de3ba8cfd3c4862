#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "haarconv/rotation.hpp"

namespace haarconv {

/// Index of an element of a finite group.
using Element = std::size_t;

/// A finite group given by its multiplication table.
///
/// The table is validated on construction: it must be a Latin square with a
/// two-sided identity, and for orders up to 64 associativity is checked on
/// every triple.
class FiniteGroup {
 public:
  static constexpr std::size_t kMaxCheckedOrder = 64;

  FiniteGroup(std::string name, std::vector<std::vector<Element>> table,
              std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }

  Element multiply(Element g, Element h) const { return table_[g * order_ + h]; }
  Element inverse(Element g) const { return inverses_[g]; }
  Element conjugate(Element g, Element x) const { return multiply(multiply(g, x), inverse(g)); }

  /// Row-major order x order table.
  std::span<const Element> table() const { return table_; }
  std::span<const Element> inverses() const { return inverses_; }

  const std::string& label(Element g) const { return labels_[g]; }
  /// Looks an element up by label; "e" always names the identity.
  std::optional<Element> find(std::string_view label) const;
  bool is_abelian() const;

 private:
  std::string name_;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
  std::vector<std::string> labels_;
  Element identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Sorted member list of a subgroup of a finite group.
class Subgroup {
 public:
  /// Throws StructureError unless members form a subgroup.
  Subgroup(GroupPtr parent, std::vector<Element> members);

  const FiniteGroup& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  std::span<const Element> members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(Element g) const { return mask_[g]; }
  /// "{e,(12)}" style listing of the member labels.
  std::string label() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<Element> members_;
  std::vector<bool> mask_;
};

Subgroup generated_subgroup(const GroupPtr& group, std::span<const Element> generators);
Subgroup trivial_subgroup(const GroupPtr& group);
Subgroup whole_group(const GroupPtr& group);

/// Every subgroup of a group of order <= 64, sorted by (order, members).
/// Starts from the subgroups generated by pairs of elements and closes under
/// joins, so subgroups needing more generators are found too.
std::vector<Subgroup> subgroups(const GroupPtr& group);

/// Z_m with elements 0..m-1 under addition mod m (1 <= m <= 64).
GroupPtr cyclic_group(std::size_t m);
/// Symmetry group of the square: e, r, r2, r3, s, sr, sr2, sr3.
GroupPtr dihedral_d4();
/// S_n for n in {3, 4}; permutations in lexicographic one-line order,
/// labelled in cycle notation, composed right to left.
GroupPtr symmetric_group(int n);
/// "Z<m>", "D4", "S3", "S4".
GroupPtr builtin_group(std::string_view name);

/// Opaque element of a registered group: an index into a finite group or a rotation.
class GroupElement {
 public:
  GroupElement(GroupPtr group, Element index);
  explicit GroupElement(Rotation r) : value_(r) {}

  bool is_rotation() const { return std::holds_alternative<Rotation>(value_); }
  const Rotation& rotation() const;
  Element index() const;
  const GroupPtr& group() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);

 private:
  struct Finite {
    GroupPtr group;
    Element index;
  };
  std::variant<Finite, Rotation> value_;
};

/// Throws DomainError when the operands belong to different groups.
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement conjugate(const GroupElement& g, const GroupElement& x);
GroupElement identity_of(const GroupPtr& group);

}  // namespace haarconv
