#include "cdlab/markov.hpp"

namespace cdlab {

GSpaceAction::GSpaceAction(GroupPtr group, std::vector<std::vector<int>> table)
    : group_(std::move(group)), table_(std::move(table)) {
  const auto& g = *group_;
  if (table_.size() != static_cast<size_t>(g.order()))
    throw ConstructionError("action table needs one row per group element");
  points_ = static_cast<int>(table_.front().size());
  if (points_ == 0) throw ConstructionError("action needs at least one point");
  for (const auto& row : table_) {
    if (row.size() != static_cast<size_t>(points_))
      throw ConstructionError("action table rows have different lengths");
    for (int y : row)
      if (y < 0 || y >= points_) throw ConstructionError("action table entry out of range");
  }
  for (int x = 0; x < points_; ++x)
    if (act(g.identity(), x) != x)
      throw ConstructionError("identity moves point " + std::to_string(x));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int x = 0; x < points_; ++x)
        if (act(g.mul(a, b), x) != act(a, act(b, x)))
          throw ConstructionError("action is not compatible at (g, h, x) = (" + std::to_string(a) +
                                  ", " + std::to_string(b) + ", " + std::to_string(x) + ")");
}

GSpaceAction coset_action(const Subgroup& h) {
  const auto& g = h.parent();
  const auto cosets = left_cosets(h);
  std::vector<std::vector<int>> table(static_cast<size_t>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (const auto& block : cosets.blocks)
      table[static_cast<size_t>(a)].push_back(cosets.block_of[static_cast<size_t>(g.mul(a, block.front()))]);
  return GSpaceAction(h.parent_ptr(), std::move(table));
}

GSpaceAction translation_action(const GroupPtr& g) {
  std::vector<std::vector<int>> table(static_cast<size_t>(g->order()));
  for (int a = 0; a < g->order(); ++a)
    for (int x = 0; x < g->order(); ++x) table[static_cast<size_t>(a)].push_back(g->mul(a, x));
  return GSpaceAction(g, std::move(table));
}

GSpaceAction trivial_action(const GroupPtr& g, int points) {
  std::vector<int> row(static_cast<size_t>(points));
  for (int x = 0; x < points; ++x) row[static_cast<size_t>(x)] = x;
  return GSpaceAction(g, std::vector<std::vector<int>>(static_cast<size_t>(g->order()), row));
}

Matrix<double> gspace_markov_matrix(const GSpaceAction& action, const Measure<double>& mu) {
  CDLAB_OP("gspace_markov_matrix");
  if (!(mu.group() == action.group())) throw ConstructionError("measure and action use different groups");
  const int m = action.points();
  MatrixXr p = MatrixXr::Zero(m, m);
  for (int a = 0; a < action.group().order(); ++a) {
    if (mu[a] == 0.0) continue;
    for (int x = 0; x < m; ++x) p(x, action.act(a, x)) += mu[a];
  }
  return p;
}

}  // namespace cdlab
