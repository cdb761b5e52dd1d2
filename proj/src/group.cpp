#include "cdlab/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include "cdlab/coverage.hpp"

namespace cdlab {

namespace {

std::string cycle_label(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (int start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == start) continue;
    out += '(';
    for (int i = start; !seen[i]; i = perm[i]) {
      seen[i] = true;
      out += std::to_string(i + 1);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley,
                         std::vector<std::string> labels) {
  const auto n = cayley.size();
  if (n == 0) throw ConstructionError("group table is empty");
  if (n > static_cast<size_t>(kMaxGroupOrder))
    throw CapacityError("group order " + std::to_string(n) + " exceeds limit " +
                        std::to_string(kMaxGroupOrder));
  order_ = static_cast<int>(n);
  table_.reserve(n * n);
  for (size_t x = 0; x < n; ++x) {
    if (cayley[x].size() != n)
      throw ConstructionError("cayley row " + std::to_string(x) + " has length " +
                              std::to_string(cayley[x].size()) + ", expected " +
                              std::to_string(n));
    for (size_t y = 0; y < n; ++y) {
      const int v = cayley[x][y];
      if (v < 0 || v >= order_)
        throw ConstructionError("cayley[" + std::to_string(x) + "][" + std::to_string(y) +
                                "] = " + std::to_string(v) + " is out of range");
      table_.push_back(v);
    }
  }

  std::optional<int> identity;
  for (int e = 0; e < order_ && !identity; ++e) {
    bool ok = true;
    for (int x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) throw ConstructionError("group table has no identity element");
  identity_ = *identity;

  inverses_.assign(n, -1);
  for (int x = 0; x < order_; ++x) {
    for (int y = 0; y < order_; ++y) {
      if (mul(x, y) == identity_ && mul(y, x) == identity_) {
        inverses_[static_cast<size_t>(x)] = y;
        break;
      }
    }
    if (inverses_[static_cast<size_t>(x)] < 0)
      throw ConstructionError("element " + std::to_string(x) + " has no inverse");
  }

  for (int x = 0; x < order_; ++x)
    for (int y = 0; y < order_; ++y)
      for (int z = 0; z < order_; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
          std::ostringstream os;
          os << "table is not associative at (x, y, z) = (" << x << ", " << y << ", " << z
             << "): (xy)z = " << mul(mul(x, y), z) << " but x(yz) = " << mul(x, mul(y, z));
          throw ConstructionError(os.str());
        }

  if (labels.empty()) {
    labels.reserve(n);
    for (int x = 0; x < order_; ++x) labels.push_back(std::to_string(x));
  } else if (labels.size() != n) {
    throw ConstructionError("expected " + std::to_string(n) + " labels, got " +
                            std::to_string(labels.size()));
  }
  labels_ = std::move(labels);
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order_; ++x)
    for (int y = x + 1; y < order_; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

std::optional<int> FiniteGroup::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int FiniteGroup::element(const std::string& label) const {
  if (auto x = find(label)) return *x;
  throw ConstructionError("unknown group element label '" + label + "'");
}

std::vector<std::vector<int>> FiniteGroup::cayley() const {
  std::vector<std::vector<int>> rows(static_cast<size_t>(order_));
  for (int x = 0; x < order_; ++x)
    rows[static_cast<size_t>(x)].assign(table_.begin() + x * order_,
                                        table_.begin() + (x + 1) * order_);
  return rows;
}

GroupPtr cyclic_group(int n) {
  CDLAB_OP("build_group");
  if (n < 1) throw ConstructionError("cyclic group needs n >= 1");
  if (n > kMaxGroupOrder) throw CapacityError("cyclic group order too large");
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return std::make_shared<const FiniteGroup>(std::move(t));
}

GroupPtr dihedral_group(int n) {
  CDLAB_OP("build_group");
  if (n < 1) throw ConstructionError("dihedral group needs n >= 1");
  if (2 * n > kMaxGroupOrder) throw CapacityError("dihedral group order too large");
  const int order = 2 * n;
  std::vector<std::vector<int>> t(static_cast<size_t>(order), std::vector<int>(static_cast<size_t>(order)));
  std::vector<std::string> labels;
  for (int x = 0; x < order; ++x) {
    const int i = x % n, a = x / n;
    for (int y = 0; y < order; ++y) {
      const int j = y % n, b = y / n;
      // r^i s^a r^j s^b = r^(i + (-1)^a j) s^(a+b)
      const int rot = ((i + (a ? -j : j)) % n + n) % n;
      t[x][y] = rot + n * ((a + b) % 2);
    }
    std::string l = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
    if (a) l += "s";
    labels.push_back(l.empty() ? "e" : l);
  }
  return std::make_shared<const FiniteGroup>(std::move(t), std::move(labels));
}

GroupPtr symmetric_group(int n) {
  CDLAB_OP("build_group");
  if (n < 1 || n > 5) throw ConstructionError("symmetric group supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const auto m = perms.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<int> prod(static_cast<size_t>(n));
  for (size_t x = 0; x < m; ++x)
    for (size_t y = 0; y < m; ++y) {
      for (int i = 0; i < n; ++i) prod[i] = perms[x][perms[y][i]];
      t[x][y] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), prod) - perms.begin());
    }
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(cycle_label(q));
  return std::make_shared<const FiniteGroup>(std::move(t), std::move(labels));
}

GroupPtr product_group(const FiniteGroup& g, const FiniteGroup& h) {
  CDLAB_OP("build_group");
  const int n = g.order(), m = h.order();
  if (n * m > kMaxGroupOrder) throw CapacityError("product group order too large");
  std::vector<std::vector<int>> t(static_cast<size_t>(n * m), std::vector<int>(static_cast<size_t>(n * m)));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < m; ++d) t[a * m + b][c * m + d] = g.mul(a, c) * m + h.mul(b, d);
      labels.push_back("(" + g.label(a) + "," + h.label(b) + ")");
    }
  return std::make_shared<const FiniteGroup>(std::move(t), std::move(labels));
}

GroupPtr group_from_table(std::vector<std::vector<int>> cayley, std::vector<std::string> labels) {
  CDLAB_OP("build_group");
  return std::make_shared<const FiniteGroup>(std::move(cayley), std::move(labels));
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  const auto& g = *parent_;
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  mask_.assign(static_cast<size_t>(g.order()), false);
  for (int x : members_) {
    if (x < 0 || x >= g.order()) throw ConstructionError("subgroup member out of range");
    mask_[static_cast<size_t>(x)] = true;
  }
  if (!contains(g.identity())) throw ConstructionError("subgroup does not contain the identity");
  for (int x : members_) {
    if (!contains(g.inv(x)))
      throw ConstructionError("subgroup not closed under inverse of " + std::to_string(x));
    for (int y : members_)
      if (!contains(g.mul(x, y)))
        throw ConstructionError("subgroup not closed: " + std::to_string(x) + "*" +
                                std::to_string(y));
  }
}

Subgroup generated_subgroup(const GroupPtr& group, std::span<const int> support) {
  CDLAB_OP("generated_subgroup");
  const auto& g = *group;
  std::vector<bool> in(static_cast<size_t>(g.order()), false);
  std::vector<int> members{g.identity()};
  in[static_cast<size_t>(g.identity())] = true;
  for (int s : support)
    if (s < 0 || s >= g.order()) throw ConstructionError("support index out of range");
  // Breadth-first closure under right multiplication by the generators; in a
  // finite group this also yields inverses.
  for (size_t i = 0; i < members.size(); ++i)
    for (int s : support) {
      const int y = g.mul(members[i], s);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = true;
        members.push_back(y);
      }
    }
  return Subgroup(group, std::move(members));
}

CosetPartition left_cosets(const Subgroup& h) {
  CDLAB_OP("left_cosets");
  const auto& g = h.parent();
  CosetPartition out;
  out.block_of.assign(static_cast<size_t>(g.order()), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (out.block_of[static_cast<size_t>(x)] >= 0) continue;
    std::vector<int> block;
    for (int m : h.members()) block.push_back(g.mul(x, m));
    std::sort(block.begin(), block.end());
    for (int y : block) out.block_of[static_cast<size_t>(y)] = static_cast<int>(out.blocks.size());
    out.blocks.push_back(std::move(block));
  }
  return out;
}

}  // namespace cdlab
