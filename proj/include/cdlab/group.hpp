#ifndef CDLAB_GROUP_HPP
#define CDLAB_GROUP_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdlab/types.hpp"

namespace cdlab {

/// Largest order accepted by FiniteGroup (room for S5). Keeps the exhaustive
/// associativity check at O(order^3) and every operator dense.
inline constexpr int kMaxGroupOrder = 120;

/// A finite group stored as a Cayley table over dense element indices
/// 0..order-1. Immutable; the table is validated on construction.
class FiniteGroup {
public:
  /// Validates the table (closure, identity, inverses, associativity) and
  /// throws ConstructionError naming the first violation.
  explicit FiniteGroup(std::vector<std::vector<int>> cayley,
                       std::vector<std::string> labels = {});

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int x, int y) const { return table_[static_cast<size_t>(x * order_ + y)]; }
  int inv(int x) const { return inverses_[static_cast<size_t>(x)]; }
  bool is_abelian() const;

  const std::string& label(int x) const { return labels_[static_cast<size_t>(x)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(const std::string& label) const;
  /// Like find() but throws ConstructionError for unknown labels.
  int element(const std::string& label) const;

  std::vector<std::vector<int>> cayley() const;
  bool operator==(const FiniteGroup& other) const { return table_ == other.table_; }

private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverses_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr cyclic_group(int n);
/// Dihedral group of order 2n; element r^i s^j has index i + n*j.
GroupPtr dihedral_group(int n);
/// Symmetric group on n <= 5 points, permutations in lexicographic order of
/// their one-line notation. Product sigma*tau applies tau first. Labels use
/// cycle notation on 1..n, with "e" for the identity.
GroupPtr symmetric_group(int n);
/// Direct product; (a, b) has index a * order(H) + b.
GroupPtr product_group(const FiniteGroup& g, const FiniteGroup& h);
GroupPtr group_from_table(std::vector<std::vector<int>> cayley,
                          std::vector<std::string> labels = {});

/// A subgroup of a FiniteGroup, members sorted ascending.
class Subgroup {
public:
  Subgroup(GroupPtr parent, std::vector<int> members);

  const FiniteGroup& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(int x) const { return mask_[static_cast<size_t>(x)]; }

private:
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<bool> mask_;
};

/// Smallest subgroup containing `support`.
Subgroup generated_subgroup(const GroupPtr& group, std::span<const int> support);

/// Partition of a group into left cosets gH. Blocks are sorted and listed
/// in order of their smallest element.
struct CosetPartition {
  std::vector<std::vector<int>> blocks;
  /// block_of[x] is the index of the block containing x.
  std::vector<int> block_of;
};

CosetPartition left_cosets(const Subgroup& h);

}  // namespace cdlab

#endif  // CDLAB_GROUP_HPP
