#include "internal.hpp"

#include "dysphonia/errors.hpp"

#include <algorithm>
#include <numeric>

namespace dysphonia::detail {
namespace {

double gini(const std::array<double, 3>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double g = 1.0;
  for (double c : counts) {
    const double p = c / total;
    g -= p * p;
  }
  return g;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child impurity
};

class TreeBuilder {
 public:
  TreeBuilder(Rows z, std::span<const int> labels, int max_depth, int min_leaf)
      : z_(z), labels_(labels), max_depth_(max_depth), min_leaf_(static_cast<std::size_t>(min_leaf)) {}

  TreeModel build() {
    std::vector<std::size_t> all(z_.size());
    std::iota(all.begin(), all.end(), 0);
    grow(all, 0);
    return std::move(model_);
  }

 private:
  int grow(const std::vector<std::size_t>& idx, int depth) {
    const int id = static_cast<int>(model_.nodes.size());
    model_.nodes.emplace_back();
    std::array<double, 3> counts{};
    for (std::size_t i : idx) counts[static_cast<std::size_t>(labels_[i])] += 1.0;
    model_.nodes[id].counts = counts;

    const double n = static_cast<double>(idx.size());
    const double parent = gini(counts, n);
    if (depth >= max_depth_ || parent <= 0.0 || idx.size() < 2 * min_leaf_) return id;

    const Split split = best_split(idx, parent);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t i : idx) {
      (z_[i][static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right).push_back(i);
    }
    model_.nodes[id].feature = split.feature;
    model_.nodes[id].threshold = split.threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    model_.nodes[id].left = l;
    model_.nodes[id].right = r;
    return id;
  }

  Split best_split(const std::vector<std::size_t>& idx, double parent) const {
    Split best;
    best.impurity = parent;
    const double n = static_cast<double>(idx.size());
    const std::size_t dims = z_[idx.front()].size();
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < dims; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = z_[a][f];
        const double vb = z_[b][f];
        return va != vb ? va < vb : a < b;
      });
      std::array<double, 3> left{};
      std::array<double, 3> total{};
      for (std::size_t i : order) total[static_cast<std::size_t>(labels_[i])] += 1.0;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        left[static_cast<std::size_t>(labels_[order[pos]])] += 1.0;
        const double a = z_[order[pos]][f];
        const double b = z_[order[pos + 1]][f];
        if (!(a < b)) continue;
        const std::size_t n_left = pos + 1;
        const std::size_t n_right = order.size() - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) continue;
        std::array<double, 3> right{};
        for (int c = 0; c < 3; ++c) right[c] = total[c] - left[c];
        const double nl = static_cast<double>(n_left);
        const double nr = static_cast<double>(n_right);
        const double impurity = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
        if (impurity < best.impurity - 1e-12) {
          double threshold = a + 0.5 * (b - a);
          if (!(threshold < b)) threshold = a;
          best = Split{static_cast<int>(f), threshold, impurity};
        }
      }
    }
    return best;
  }

  Rows z_;
  std::span<const int> labels_;
  int max_depth_;
  std::size_t min_leaf_;
  TreeModel model_;
};

}  // namespace

TreeModel train_tree(Rows z, std::span<const int> labels, int max_depth, int min_leaf) {
  if (max_depth < 0) throw InvalidArgument("tree: max depth must be >= 0");
  if (min_leaf < 1) throw InvalidArgument("tree: min leaf must be >= 1");
  return TreeBuilder(z, labels, max_depth, min_leaf).build();
}

Prediction predict_tree(const TreeModel& m, std::span<const double> z, const std::array<bool, 3>& seen) {
  int node = 0;
  while (m.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& t = m.nodes[static_cast<std::size_t>(node)];
    node = z[static_cast<std::size_t>(t.feature)] <= t.threshold ? t.left : t.right;
  }
  const auto& counts = m.nodes[static_cast<std::size_t>(node)].counts;
  const double total = counts[0] + counts[1] + counts[2];
  Prediction p;
  for (int c = 0; c < 3; ++c) p.scores[c] = total > 0.0 ? counts[c] / total : 0.0;
  p.label = argmax_seen(p.scores, seen);
  return p;
}

}  // namespace dysphonia::detail
